use forest_skein::{corpus, SkeinPresentation};

#[test]
fn every_example_round_trips_through_text() {
    for name in corpus::names() {
        let p = corpus::get(name).unwrap();
        let again = SkeinPresentation::parse(&p.render()).unwrap();
        assert_eq!(again.render(), p.render(), "{name}");
        assert_eq!(again.hash_hex(), p.hash_hex(), "{name}");
    }
}

#[test]
fn complemented_examples() {
    for name in ["cleary", "ternary", "gn2", "gn5", "hn3", "dv2", "free1", "free2"] {
        assert!(corpus::get(name).unwrap().is_complemented(), "{name}");
    }
    for name in ["notlc", "rebel"] {
        assert!(!corpus::get(name).unwrap().is_complemented(), "{name}");
    }
}

#[test]
fn rejects_unequal_leaf_counts() {
    assert!(SkeinPresentation::parse("name: bad\ncolors: a, b\nrel: a1 a1 = b1\n").is_err());
}

#[test]
fn rejects_unknown_colours() {
    assert!(SkeinPresentation::parse("name: bad\ncolors: a, b\nrel: a1 = c1\n").is_err());
}

#[test]
fn monoid_relations_shift_indices() {
    let p = corpus::get("cleary").unwrap();
    // four commutation relations x_2 y_1 = y_1 x_3, then a1 a1 = b1 b2 at j = 1, 2
    let rels = p.monoid_relations(2);
    assert_eq!(rels.len(), 6);
    let last = &rels[5];
    assert_eq!(forest_skein::forest::render_word(&last.lhs, &p.palette), "a2 a2");
    assert_eq!(forest_skein::forest::render_word(&last.rhs, &p.palette), "b2 b3");
}

#[test]
fn json_lists_relations() {
    let v = corpus::get("cleary").unwrap().to_json();
    assert_eq!(v["name"], "cleary");
    assert!(v.to_string().contains("a1 a1"));
}
