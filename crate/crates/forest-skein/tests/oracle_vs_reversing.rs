use forest_skein::congruence::Oracle;
use forest_skein::forest::{all_trees, word_from_tree};
use forest_skein::reversing::{is_complete, Reverser};
use forest_skein::{corpus, Tri};

/// Reversing and the saturated oracle agree on every pair with at most
/// `max` carets.
fn agree(name: &str, max: usize) {
    let p = corpus::get(name).unwrap();
    let rev = Reverser::new(&p);
    let table = Oracle::new(&p).saturate(max);
    for n in 0..=max {
        let trees = all_trees(n, p.colours());
        for s in &trees {
            for t in &trees {
                let by_oracle = table.class_id(s) == table.class_id(t);
                let by_reversing = rev.words_equal(&word_from_tree(s), &word_from_tree(t));
                assert_eq!(by_reversing, Tri::from_bool(by_oracle), "{name}: {s:?} {t:?}");
            }
        }
    }
}

#[test]
fn complete_examples_agree() {
    for name in ["cleary", "ternary", "gn2", "gn3", "hn2", "dv2"] {
        let p = corpus::get(name).unwrap();
        assert_eq!(is_complete(&p, &Reverser::new(&p)).verdict, Tri::Yes, "{name}");
        agree(name, 4);
    }
}

#[test]
fn class_sizes_are_stable_under_budgets() {
    let p = corpus::get("cleary").unwrap();
    let small = Oracle::new(&p).saturate(4);
    let big = Oracle::new(&p).saturate(5);
    for t in all_trees(4, 2) {
        assert_eq!(small.class(small.class_id(&t).unwrap()).len(), big.class(big.class_id(&t).unwrap()).len());
    }
}

#[test]
fn non_complemented_example_is_refuted_by_oracle() {
    let p = corpus::get("notlc").unwrap();
    let ce = Oracle::new(&p).refute_left_cancellative(3).found().expect("counterexample");
    let oracle = Oracle::new(&p);
    let fg = forest_skein::Forest::from(ce.f.clone()).compose(&ce.g).unwrap();
    let fh = forest_skein::Forest::from(ce.f.clone()).compose(&ce.h).unwrap();
    assert_eq!(oracle.equivalent(&fg, &fh), Tri::Yes);
    assert_eq!(oracle.equivalent(&ce.g, &ce.h), Tri::No);
}
