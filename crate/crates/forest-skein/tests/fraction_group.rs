use forest_skein::context::Context;
use forest_skein::fraction::{
    check_cgp, equals, generator_element, is_identity, multiply, normal_form, parse_expression, right_vine,
    GroupElement,
};
use forest_skein::group_presentation::Gen;
use forest_skein::{corpus, Colour, Outcome, Tri};
use proptest::prelude::*;

fn ctx(name: &str) -> Context {
    Context::new(&corpus::get(name).unwrap())
}

fn expr(c: &Context, text: &str) -> GroupElement {
    parse_expression(c, text, Colour(0), 14).unwrap().found().unwrap()
}

const WORDS: &[&str] = &["a1", "b1", "a2^-1", "b2", "~b1", "a1 b2^-1", "b3 a1", "~b2^-1 a2"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(i in 0..WORDS.len(), j in 0..WORDS.len(), k in 0..WORDS.len()) {
        let c = ctx("cleary");
        let (x, y, z) = (expr(&c, WORDS[i]), expr(&c, WORDS[j]), expr(&c, WORDS[k]));
        let m = |g: &GroupElement, h: &GroupElement| multiply(&c, g, h, 14).found().unwrap();
        prop_assert_eq!(equals(&c, &m(&m(&x, &y), &z), &m(&x, &m(&y, &z)), 14), Tri::Yes);
        prop_assert_eq!(is_identity(&c, &m(&x, &x.invert())), Tri::Yes);
        prop_assert_eq!(equals(&c, &m(&x, &GroupElement::identity()), &x, 14), Tri::Yes);
    }

    #[test]
    fn normal_form_is_equal(i in 0..WORDS.len(), j in 0..WORDS.len()) {
        let c = ctx("ternary");
        let g = multiply(&c, &expr(&c, WORDS[i]), &expr(&c, WORDS[j]), 14).found().unwrap();
        let nf = normal_form(&c, &g).element;
        prop_assert_eq!(equals(&c, &nf, &g, 14), Tri::Yes);
        prop_assert!(nf.carets() <= g.carets());
    }
}

#[test]
fn skein_relation_holds_in_the_group() {
    let c = ctx("cleary");
    assert_eq!(equals(&c, &expr(&c, "a1 a1"), &expr(&c, "b1 b2"), 14), Tri::Yes);
    assert_eq!(equals(&c, &expr(&c, "a1"), &expr(&c, "b1"), 14), Tri::No);
}

#[test]
fn commutation_relations() {
    let c = ctx("cleary");
    for (q, j) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let lhs = expr(&c, &format!("b{q} a{j}"));
        let rhs = expr(&c, &format!("a{j} b{}", q + 1));
        assert_eq!(equals(&c, &lhs, &rhs, 14), Tri::Yes, "q={q} j={j}");
    }
}

#[test]
fn generators_are_vine_fractions() {
    let g = generator_element(Gen::new(Colour(0), 1, false), Colour(0));
    assert_eq!(g.denominator, right_vine(Colour(0), 3));
    assert_eq!(g.numerator.leaves(), 3);
}

#[test]
fn fraction_text_round_trip() {
    let c = ctx("cleary");
    let g = GroupElement::parse("[a(a(I,I),I) ; b(I,b(I,I))]", &c.p.palette).unwrap();
    assert_eq!(GroupElement::parse(&g.render(&c.p.palette), &c.p.palette).unwrap(), g);
    assert!(GroupElement::parse("[a(I,I) ; I]", &c.p.palette).is_err());
}

#[test]
fn hatted_generators_reduce_at_second_colour() {
    for name in ["cleary", "ternary", "gn2"] {
        let c = ctx(name);
        let report = check_cgp(&c, Colour(1), 4, 14);
        assert_eq!(report.verdict, Tri::Yes, "{name}: {:?}", report.missing);
        for (gen, word) in &report.witnesses {
            let g = generator_element(*gen, Colour(1));
            let w = forest_skein::fraction::word_to_element(&c, word, Colour(1), 14);
            let Outcome::Found(w) = w else { panic!("{name}: unresolved witness") };
            assert_eq!(equals(&c, &g, &w, 14), Tri::Yes, "{name}");
        }
    }
}

#[test]
fn free_example_has_no_hat_reduction() {
    let c = ctx("free2");
    assert_ne!(check_cgp(&c, Colour(0), 3, 14).verdict, Tri::Yes);
}
