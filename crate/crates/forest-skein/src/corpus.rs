//! Built-in example presentations.

use crate::presentation::SkeinPresentation;

/// `(name, DSL source)` for every built-in example.
pub fn sources() -> Vec<(&'static str, String)> {
    let mut out: Vec<(&'static str, String)> = vec![
        ("free1", "name: free1\ncolors: a\n".into()),
        ("free2", "name: free2\ncolors: a, b\n".into()),
        ("cleary", "name: cleary\ncolors: a, b\nrel: a1 a1 = b1 b2\n".into()),
        ("ternary", "name: ternary\ncolors: a, b\nrel: a1 b2 = b1 a1\n".into()),
    ];
    for (n, name) in [(2, "gn2"), (3, "gn3"), (4, "gn4"), (5, "gn5")] {
        let lhs = vec!["a1"; n].join(" ");
        let rhs = (1..=n).map(|i| format!("b{i}")).collect::<Vec<_>>().join(" ");
        out.push((name, format!("name: {name}\ncolors: a, b\nrel: {lhs} = {rhs}\n")));
    }
    for (n, name) in [(2, "hn2"), (3, "hn3"), (4, "hn4")] {
        let lhs = vec!["a1"; n].join(" ");
        let rhs = vec!["b1"; n].join(" ");
        out.push((name, format!("name: {name}\ncolors: a, b\nrel: {lhs} = {rhs}\n")));
    }
    out.push(("dv2", "name: dv2\ncolors: a, b\nrel: a1 b1 b3 = b1 a1 a3\n".into()));
    out.push(("nocgp1", "name: nocgp1\ncolors: a, b\nrel: b1 a1 b3 = a1 a2 a3\n".into()));
    // complete trees with four leaves
    out.push(("nocgp2", "name: nocgp2\ncolors: a, b\nrel: a1 a1 a3 = b1 b1 b3\n".into()));
    out.push(("notlc", "name: notlc\ncolors: a, b\nrel: a1 b1 = b1 a1\nrel: a1 a2 = b1 b2\n".into()));
    out.push(("rebel", "name: rebel\ncolors: a, b\nrel: a1 b1 = b1 a1\nrel: a1 a1 = b1 b1\n".into()));
    out
}

pub fn names() -> Vec<&'static str> {
    sources().into_iter().map(|(n, _)| n).collect()
}

pub fn source(name: &str) -> Option<String> {
    sources().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

pub fn get(name: &str) -> Option<SkeinPresentation> {
    source(name).map(|s| SkeinPresentation::parse(&s).expect("corpus entries parse"))
}

#[cfg(test)]
mod tests {
    #[test]
    fn every_entry_parses() {
        for n in super::names() {
            assert!(super::get(n).is_some(), "{n}");
        }
    }
}
