//! Skein presentations and their text format.
//!
//! ```text
//! # comments start with a hash
//! name: cleary
//! colors: a, b
//! rel: a1 a1 = b1 b2
//! rel: a(I,b(I,I)) = b(a(I,I),I)
//! ```

use crate::error::{syntax, FskError, Result};
use crate::forest::{render_word, tree_from_word, word_from_tree, parse_word, Colour, Letter, Palette, Tree, Word};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Tree,
    pub rhs: Tree,
}

impl Relation {
    pub fn leaves(&self) -> usize {
        self.lhs.leaves()
    }

    pub fn root_colours(&self) -> (Option<Colour>, Option<Colour>) {
        (self.lhs.root_colour(), self.rhs.root_colour())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkeinPresentation {
    pub name: Option<String>,
    pub palette: Palette,
    pub relations: Vec<Relation>,
}

/// A homogeneous relation of the monoid presentation on letters `c_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonoidRelation {
    pub lhs: Word,
    pub rhs: Word,
}

impl SkeinPresentation {
    /// Validating constructor.
    pub fn new(name: Option<String>, palette: Palette, relations: Vec<Relation>) -> Result<Self> {
        if palette.is_empty() {
            return Err(FskError::Invalid("a presentation needs at least one colour".into()));
        }
        let mut seen = HashSet::new();
        for r in &relations {
            if r.lhs.leaves() != r.rhs.leaves() {
                return Err(FskError::LeafMismatch { lhs: r.lhs.leaves(), rhs: r.rhs.leaves() });
            }
            for t in [&r.lhs, &r.rhs] {
                if let Some(&b) = t.code().iter().find(|&&b| b != crate::forest::LEAF && b as usize >= palette.len()) {
                    return Err(FskError::UnknownColour(format!("#{b}")));
                }
            }
            if r.lhs == r.rhs {
                return Err(FskError::Invalid(format!("trivial relation {}", r.lhs.render(&palette))));
            }
            let key = if r.lhs <= r.rhs { (r.lhs.clone(), r.rhs.clone()) } else { (r.rhs.clone(), r.lhs.clone()) };
            if !seen.insert(key) {
                return Err(FskError::DuplicateRelation(format!(
                    "{} = {}",
                    r.lhs.render(&palette),
                    r.rhs.render(&palette)
                )));
            }
        }
        Ok(SkeinPresentation { name, palette, relations })
    }

    pub fn colours(&self) -> usize {
        self.palette.len()
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }

    /// At most one relation per unordered pair of distinct root colours and
    /// none with equal root colours.
    pub fn is_complemented(&self) -> bool {
        let mut pairs = HashSet::new();
        for r in &self.relations {
            match r.root_colours() {
                (Some(a), Some(b)) if a != b => {
                    if !pairs.insert((a.min(b), a.max(b))) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// The relation between root colours `x` and `y` of a complemented
    /// presentation, oriented so that the x-side comes first.
    pub fn relation_between(&self, x: Colour, y: Colour) -> Option<(&Tree, &Tree)> {
        self.relations.iter().find_map(|r| match r.root_colours() {
            (Some(a), Some(b)) if a == x && b == y => Some((&r.lhs, &r.rhs)),
            (Some(a), Some(b)) if a == y && b == x => Some((&r.rhs, &r.lhs)),
            _ => None,
        })
    }

    /// Thompson-like relations `x_q y_j = y_j x_{q+1}` for `1 ≤ j < q ≤ max_index`
    /// followed by the shifted skein relations `R(u,u',j)` for `j ≤ max_index`.
    pub fn monoid_relations(&self, max_index: usize) -> Vec<MonoidRelation> {
        let mut out = Vec::new();
        for q in 1..=max_index {
            for j in 1..q {
                for x in self.palette.colours() {
                    for y in self.palette.colours() {
                        out.push(MonoidRelation {
                            lhs: vec![Letter::new(x, q), Letter::new(y, j)],
                            rhs: vec![Letter::new(y, j), Letter::new(x, q + 1)],
                        });
                    }
                }
            }
        }
        for r in &self.relations {
            let (u, v) = (word_from_tree(&r.lhs), word_from_tree(&r.rhs));
            for j in 1..=max_index {
                out.push(MonoidRelation { lhs: shift_word(&u, j - 1), rhs: shift_word(&v, j - 1) });
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut palette: Option<Palette> = None;
        let mut rels: Vec<(usize, Relation)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let indent = line.len() - line.trim_start().len();
            let Some((key, value)) = line.split_once(':') else {
                return Err(syntax(line_no, indent + 1, "expected `key: value`"));
            };
            let vcol = key.len() + 2;
            match key.trim() {
                "name" => name = Some(value.trim().to_string()),
                "colors" | "colours" => {
                    if palette.is_some() {
                        return Err(syntax(line_no, indent + 1, "colours declared twice"));
                    }
                    let names: Vec<&str> = value.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                    palette = Some(Palette::new(&names).map_err(|e| syntax(line_no, vcol, e.to_string()))?);
                }
                "rel" => {
                    let Some(pal) = &palette else {
                        return Err(syntax(line_no, indent + 1, "`rel` before `colors`"));
                    };
                    let Some((l, r)) = value.split_once('=') else {
                        return Err(syntax(line_no, vcol, "expected `lhs = rhs`"));
                    };
                    let lhs = parse_side(l, pal).map_err(|e| relocate(e, line_no, vcol))?;
                    let rhs = parse_side(r, pal).map_err(|e| relocate(e, line_no, vcol + l.len() + 1))?;
                    if lhs.leaves() != rhs.leaves() {
                        return Err(FskError::LeafMismatch { lhs: lhs.leaves(), rhs: rhs.leaves() });
                    }
                    rels.push((line_no, Relation { lhs, rhs }));
                }
                other => return Err(syntax(line_no, indent + 1, format!("unknown key `{other}`"))),
            }
        }
        let palette = palette.ok_or_else(|| syntax(1, 1, "missing `colors:` line"))?;
        SkeinPresentation::new(name, palette, rels.into_iter().map(|(_, r)| r).collect())
    }

    /// DSL text; `parse(render(p)) == p`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("name: {n}\n"));
        }
        out.push_str(&format!("colors: {}\n", self.palette.names().join(", ")));
        for r in &self.relations {
            out.push_str(&format!(
                "rel: {} = {}\n",
                render_side(&r.lhs, &self.palette),
                render_side(&r.rhs, &self.palette)
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "colors": self.palette.names(),
            "relations": self.relations.iter().map(|r| serde_json::json!({
                "lhs_word": render_word(&word_from_tree(&r.lhs), &self.palette),
                "rhs_word": render_word(&word_from_tree(&r.rhs), &self.palette),
                "leaves": r.leaves(),
            })).collect::<Vec<_>>(),
        })
    }

    /// FNV-1a hash of the rendered text, for reports.
    pub fn hash_hex(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.render().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

pub fn shift_word(w: &[Letter], by: usize) -> Word {
    w.iter().map(|l| l.shifted(by)).collect()
}

fn relocate(e: FskError, line: usize, col: usize) -> FskError {
    match e {
        FskError::Syntax { col: c, msg, .. } => FskError::Syntax { line, col: col + c - 1, msg },
        FskError::UnknownColour(_) | FskError::WordIndex { .. } | FskError::Invalid(_) => {
            FskError::Syntax { line, col, msg: e.to_string() }
        }
        other => other,
    }
}

fn parse_side(text: &str, palette: &Palette) -> Result<Tree> {
    let t = text.trim();
    if t.contains('(') || t == "I" {
        Tree::parse(t, palette)
    } else {
        tree_from_word(&parse_word(t, palette)?)
    }
}

fn render_side(t: &Tree, palette: &Palette) -> String {
    if t.is_leaf() {
        "I".into()
    } else {
        render_word(&word_from_tree(t), palette)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reports_position() {
        let e = SkeinPresentation::parse("colors: a, b\nrel: a1 a1 = b1 zz(I,I)").unwrap_err();
        assert!(matches!(e, FskError::Syntax { line: 2, .. }), "{e:?}");
        let e = SkeinPresentation::parse("colors: a, b\nrel: a1 = b1 b2").unwrap_err();
        assert_eq!(e, FskError::LeafMismatch { lhs: 2, rhs: 3 });
    }

    #[test]
    fn duplicates_rejected() {
        let e = SkeinPresentation::parse("colors: a, b\nrel: a1 a1 = b1 b2\nrel: b1 b2 = a1 a1").unwrap_err();
        assert!(matches!(e, FskError::DuplicateRelation(_)));
    }
}
