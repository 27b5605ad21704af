use forest_skein::context::Context;
use forest_skein::ore_spine::{
    build_f_tau, decide_lc, decide_ore, f_infinity_certificate, recognise_f_tau, spine, DEFAULT_COFINAL_BOUND,
    DEFAULT_LC_BOUND,
};
use forest_skein::{corpus, Confidence, Palette, Tree, Tri};

fn run(name: &str) -> (Context, forest_skein::ore_spine::SpineReport) {
    let c = Context::new(&corpus::get(name).unwrap());
    let sp = spine(&c, 16, 8);
    (c, sp)
}

#[test]
fn spine_sizes() {
    for (name, size) in [("free1", 1), ("cleary", 3), ("ternary", 3)] {
        let (_, sp) = run(name);
        assert!(sp.stabilized, "{name}");
        assert_eq!(sp.spine.len(), size, "{name}");
    }
}

#[test]
fn unstable_spine_halts_with_reason() {
    let (_, sp) = run("rebel");
    assert!(!sp.stabilized);
    assert!(sp.halted.is_some());
}

#[test]
fn ore_and_lc_on_examples() {
    for name in ["cleary", "ternary", "gn3", "hn2"] {
        let c = Context::new(&corpus::get(name).unwrap());
        assert_eq!(decide_lc(&c, DEFAULT_LC_BOUND).verdict, Tri::Yes, "{name}");
        let ore = decide_ore(&c, DEFAULT_COFINAL_BOUND);
        assert_eq!(ore.verdict, Confidence::Proved, "{name}");
        assert!(ore.certificate.unwrap().verify(&c), "{name}");
    }
}

#[test]
fn free_two_colours_is_not_ore() {
    let c = Context::new(&corpus::get("free2").unwrap());
    let ore = decide_ore(&c, DEFAULT_COFINAL_BOUND);
    assert_eq!(ore.verdict, Confidence::Refuted);
    assert!(ore.refutation.is_some());
}

#[test]
fn f_infinity_needs_all_three() {
    let c = Context::new(&corpus::get("cleary").unwrap());
    let lc = decide_lc(&c, DEFAULT_LC_BOUND);
    let ore = decide_ore(&c, DEFAULT_COFINAL_BOUND);
    assert!(f_infinity_certificate(&ore, &lc, &spine(&c, 16, 8)).is_some());
    let short = spine(&c, 16, 1);
    assert!(f_infinity_certificate(&ore, &lc, &short).is_none());
}

#[test]
fn one_tree_per_colour() {
    let pal = Palette::alphabetic(1);
    let t = |s: &str| Tree::parse(s, &pal).unwrap();
    let tau = vec![("a".to_string(), t("a(a(I,I),I)")), ("b".to_string(), t("a(I,a(I,I))")), ("c".to_string(), t("a(a(I,I),I)"))];
    let built = build_f_tau(&tau).unwrap();
    assert_eq!(built.expected_spine, 4);
    assert!(built.replayed);
    assert!(recognise_f_tau(&built.presentation).is_some());
    assert!(build_f_tau(&[("a".to_string(), t("a(I,I)")), ("b".to_string(), t("a(a(I,I),I)"))]).is_err());
}
