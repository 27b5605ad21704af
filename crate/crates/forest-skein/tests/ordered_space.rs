use forest_skein::context::Context;
use forest_skein::ordered::{
    act, compare, first_leaf, flavour_check, multiply, normalize_point, transitivity_witness, verify_maps, Flavour,
    OrderedPoint, PermutationElement, Stabilizer,
};
use forest_skein::{corpus, Colour, Forest, Outcome, Tree, Tri};
use std::cmp::Ordering;

fn ctx(name: &str) -> Context {
    Context::new(&corpus::get(name).unwrap())
}

fn pt(c: &Context, text: &str) -> OrderedPoint {
    let x = OrderedPoint::parse(text, &c.p.palette).unwrap();
    normalize_point(c, &x.tree, x.leaf).unwrap()
}

fn el(c: &Context, text: &str) -> PermutationElement {
    PermutationElement::parse(text, &c.p.palette).unwrap()
}

#[test]
fn growing_a_point_keeps_it() {
    let c = ctx("cleary");
    // [Y_a, 2] = [a(I,a(I,I)), 2]: the second leaf is the first of its block
    assert_eq!(pt(&c, "a(I,I):2"), pt(&c, "a(I,a(I,I)):2"));
    assert_eq!(compare(&c, &pt(&c, "a(I,I):1"), &pt(&c, "a(a(I,I),I):1"), 16), Some(Ordering::Equal));
}

#[test]
fn first_leaf_of_blocks() {
    let f = Forest::new(vec![Tree::caret(Colour(0)), Tree::leaf(), Tree::caret(Colour(1))]).unwrap();
    assert_eq!((1..=3).map(|j| first_leaf(&f, j)).collect::<Vec<_>>(), vec![1, 3, 4]);
}

#[test]
fn dyadic_points_compare_by_position() {
    let c = ctx("free1");
    let quarter = pt(&c, "a(a(I,I),I):2");
    let half = pt(&c, "a(I,I):2");
    let three_quarters = pt(&c, "a(I,a(I,I)):3");
    assert_eq!(compare(&c, &quarter, &half, 16), Some(Ordering::Less));
    assert_eq!(compare(&c, &three_quarters, &half, 16), Some(Ordering::Greater));
    assert_eq!(compare(&c, &pt(&c, "I:1"), &pt(&c, "a(I,I):1"), 16), Some(Ordering::Equal));
}

#[test]
fn identity_and_inverse_act_trivially() {
    let c = ctx("cleary");
    let g = el(&c, "[a(a(I,I),I) ; b(I,b(I,I))]");
    for text in ["a(I,I):1", "a(I,I):2", "b(b(I,I),I):3", "a(a(I,I),b(I,I)):3"] {
        let x = pt(&c, text);
        assert_eq!(act(&c, &PermutationElement::identity(), &x, 16), Outcome::Found(x.clone()));
        let gx = act(&c, &g, &x, 16).found().unwrap();
        let back = act(&c, &g.invert(), &gx, 16).found().unwrap();
        assert_eq!(compare(&c, &back, &x, 16), Some(Ordering::Equal), "{text}");
    }
}

#[test]
fn action_is_compatible_with_multiplication() {
    let c = ctx("cleary");
    let g = el(&c, "[a(a(I,I),I) ; b(I,b(I,I))]");
    let h = el(&c, "[a(I,I) ; cyc2 ; b(I,I)]");
    let gh = multiply(&c, &g, &h, 16).found().unwrap();
    for text in ["a(I,I):1", "a(I,I):2", "a(a(I,I),I):2", "b(I,b(I,I)):3"] {
        let x = pt(&c, text);
        let direct = act(&c, &gh, &x, 16).found().unwrap();
        let hx = act(&c, &h, &x, 16).found().unwrap();
        let stepwise = act(&c, &g, &hx, 16).found().unwrap();
        assert_eq!(compare(&c, &direct, &stepwise, 16), Some(Ordering::Equal), "{text}");
    }
}

#[test]
fn rotation_is_cyclic_not_monotone() {
    let c = ctx("free1");
    let r = PermutationElement::rotation(&Tree::parse("a(a(I,I),I)", &c.p.palette).unwrap());
    assert_eq!(r.flavour(), Flavour::T);
    let ev = flavour_check(&c, &r, 2, 16);
    assert!(ev.consistent, "{ev:?}");
    let plain = el(&c, "[a(a(I,I),I) ; a(I,a(I,I))]");
    assert_eq!(plain.flavour(), Flavour::F);
    assert!(flavour_check(&c, &plain, 2, 16).consistent);
}

#[test]
fn transitivity_on_small_sets() {
    let c = ctx("cleary");
    let a = vec![pt(&c, "a(I,I):1"), pt(&c, "a(I,I):2")];
    let b = vec![pt(&c, "b(a(I,I),I):2"), pt(&c, "b(a(I,I),I):3")];
    let w = transitivity_witness(&c, &a, &b, 16).unwrap().found().unwrap();
    assert_eq!(w.verified, Tri::Yes);
    assert_eq!(verify_maps(&c, &w.element, &a, &b, 16), Tri::Yes);
}

#[test]
fn stabilizer_fixes_its_points() {
    let c = ctx("cleary");
    let t = Tree::parse("a(b(I,I),I)", &c.p.palette).unwrap();
    let st = Stabilizer::new(&t);
    let pal = &c.p.palette;
    let f = Forest::parse("[a(I,I), I, b(I,I)]", pal).unwrap();
    let h = Forest::parse("[b(I,b(I,I)), I, I]", pal).unwrap();
    assert!(st.fixer(&f, &h).is_err());
    let h = Forest::parse("[b(I,I), I, a(I,I)]", pal).unwrap();
    let g = st.fixer(&f, &h).unwrap();
    let pts = st.points();
    assert_eq!(verify_maps(&c, &g, &pts, &pts, 16), Tri::Yes);
    let shifted: Vec<_> = pts.iter().cycle().skip(1).take(pts.len()).cloned().collect();
    assert_eq!(verify_maps(&c, &st.rotation, &pts, &shifted, 16), Tri::Yes);
}

#[test]
fn parse_render_round_trip() {
    let c = ctx("cleary");
    for text in ["[a(I,I) ; cyc2 ; b(I,I)]", "[a(I,a(I,I)) ; b(b(I,I),I)]", "[I ; I]"] {
        let g = el(&c, text);
        assert_eq!(el(&c, &g.render(&c.p.palette)), g);
    }
    assert!(OrderedPoint::parse("a(I,I):3", &c.p.palette).is_err());
}
