//! Fraction arithmetic: elements `[t, s] = t∘s⁻¹` of the fraction group.

use crate::context::Context;
use crate::error::{FskError, Result};
use crate::forest::{Colour, Palette, Tree};
use crate::group_presentation::{parse_group_word, pos, neg, Gen, GLetter, GroupWord};
use crate::{Outcome, Tri};
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub numerator: Tree,
    pub denominator: Tree,
}

impl GroupElement {
    pub fn new(numerator: Tree, denominator: Tree) -> Result<Self> {
        if numerator.leaves() != denominator.leaves() {
            return Err(FskError::LeafMismatch { lhs: numerator.leaves(), rhs: denominator.leaves() });
        }
        Ok(GroupElement { numerator, denominator })
    }

    pub fn identity() -> Self {
        GroupElement { numerator: Tree::leaf(), denominator: Tree::leaf() }
    }

    pub fn invert(&self) -> Self {
        GroupElement { numerator: self.denominator.clone(), denominator: self.numerator.clone() }
    }

    pub fn carets(&self) -> usize {
        self.numerator.carets()
    }

    pub fn render(&self, palette: &Palette) -> String {
        format!("[{} ; {}]", self.numerator.render(palette), self.denominator.render(palette))
    }

    /// `[tree ; tree]`.
    pub fn parse(text: &str, palette: &Palette) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| crate::error::syntax(1, 1, "fraction literal must look like [tree ; tree]"))?;
        let (a, b) = inner
            .split_once(';')
            .ok_or_else(|| crate::error::syntax(1, 1, "fraction literal needs `;`"))?;
        GroupElement::new(Tree::parse(a.trim(), palette)?, Tree::parse(b.trim(), palette)?)
    }

    /// Remove carets exposed at the same leaves with the same colour in both trees.
    pub fn raw_reduce(&self) -> Self {
        let (mut t, mut s) = (self.numerator.clone(), self.denominator.clone());
        'outer: loop {
            let es = s.exposed_carets();
            for (pt, it) in t.exposed_carets() {
                let ct = t.code()[pt];
                if let Some(&(ps, _)) = es.iter().find(|&&(ps, is)| is == it && s.code()[ps] == ct) {
                    t = t.collapse(pt);
                    s = s.collapse(ps);
                    continue 'outer;
                }
            }
            break;
        }
        GroupElement { numerator: t, denominator: s }
    }
}

/// `g·h`; `bound` caps the oracle search for common multiples.
pub fn multiply(ctx: &Context, g: &GroupElement, h: &GroupElement, bound: usize) -> Outcome<GroupElement> {
    if g.numerator.is_leaf() && g.denominator.is_leaf() {
        return Outcome::Found(h.clone());
    }
    if h.numerator.is_leaf() && h.denominator.is_leaf() {
        return Outcome::Found(g.clone());
    }
    ctx.common_multiple_bounded(&g.denominator, &h.numerator, bound).map(|(p, q)| {
        GroupElement { numerator: g.numerator.graft(p.trees()), denominator: h.denominator.graft(q.trees()) }
            .raw_reduce()
    })
}

/// Fraction equality: grow both denominators to a common tree and compare
/// the numerators.
pub fn equals(ctx: &Context, g: &GroupElement, h: &GroupElement, bound: usize) -> Tri {
    if g == h {
        return Tri::Yes;
    }
    match ctx.common_multiple_bounded(&g.denominator, &h.denominator, bound) {
        Outcome::Found((p, q)) => ctx.trees_equal(&g.numerator.graft(p.trees()), &h.numerator.graft(q.trees())),
        _ => Tri::Unknown,
    }
}

pub fn is_identity(ctx: &Context, g: &GroupElement) -> Tri {
    ctx.trees_equal(&g.numerator, &g.denominator)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalForm {
    pub element: GroupElement,
    /// False when a class was too large to explore.
    pub reduced: bool,
}

/// Cancel common carets, searching the classes of both trees for matching
/// exposed carets, then replace each tree by its canonical class member.
pub fn normal_form(ctx: &Context, g: &GroupElement) -> NormalForm {
    let mut cur = g.raw_reduce();
    loop {
        let (Some(cn), Some(cd)) = (ctx.nf_oracle.class_of(&cur.numerator), ctx.nf_oracle.class_of(&cur.denominator))
        else {
            return NormalForm { element: cur, reduced: false };
        };
        // first member of the numerator class exposing each (leaf, colour)
        let mut exposed: HashMap<(usize, u8), (&Tree, usize)> = HashMap::new();
        for m in &cn.members {
            for (p, i) in m.exposed_carets() {
                exposed.entry((i, m.code()[p])).or_insert((m, p));
            }
        }
        let mut step = None;
        'search: for d in &cd.members {
            for (p, i) in d.exposed_carets() {
                if let Some(&(m, pm)) = exposed.get(&(i, d.code()[p])) {
                    step = Some((m.collapse(pm), d.collapse(p)));
                    break 'search;
                }
            }
        }
        match step {
            Some((n, d)) => cur = GroupElement { numerator: n, denominator: d }.raw_reduce(),
            None => {
                let element = GroupElement { numerator: cn.rep().clone(), denominator: cd.rep().clone() };
                return NormalForm { element, reduced: true };
            }
        }
    }
}

/// Right vine of colour `a` with `n` leaves.
pub fn right_vine(a: Colour, n: usize) -> Tree {
    let mut t = Tree::leaf();
    for k in 1..n {
        t = t.attach(a, k).expect("last leaf");
    }
    t
}

/// `b_j ↦ [t_{j+1}∘b_{j,j+1}, t_{j+2}]`, `b̂_j ↦ [t_j∘b_{j,j}, t_{j+1}]`.
pub fn generator_element(gen: Gen, base: Colour) -> GroupElement {
    let j = gen.index;
    let n = if gen.hat { j } else { j + 1 };
    let num = right_vine(base, n).attach(gen.colour, j).expect("j ≤ n");
    GroupElement { numerator: num, denominator: right_vine(base, n + 1) }
}

pub fn letter_element(l: GLetter, base: Colour) -> GroupElement {
    let g = generator_element(l.gen, base);
    if l.inverse {
        g.invert()
    } else {
        g
    }
}

/// Evaluate a signed word in the generators, left to right.
pub fn word_to_element(ctx: &Context, w: &[GLetter], base: Colour, bound: usize) -> Outcome<GroupElement> {
    let mut acc = GroupElement::identity();
    for &l in w {
        match multiply(ctx, &acc, &letter_element(l, base), bound) {
            Outcome::Found(x) => acc = x,
            other => return other,
        }
    }
    Outcome::Found(acc)
}

/// Parse `a1 b2^-1 ~b1` or `[tree ; tree]`.
pub fn parse_expression(ctx: &Context, text: &str, base: Colour, bound: usize) -> Result<Outcome<GroupElement>> {
    if text.trim_start().starts_with('[') {
        return Ok(Outcome::Found(GroupElement::parse(text, &ctx.p.palette)?));
    }
    let w = parse_group_word(text, &ctx.p.palette)?;
    Ok(word_to_element(ctx, &w, base, bound))
}

#[derive(Debug, Clone, Serialize)]
pub struct CgpReport {
    pub verdict: Tri,
    /// Hatted generator and a word in non-hatted generators equal to it.
    pub witnesses: Vec<(Gen, GroupWord)>,
    pub missing: Vec<Gen>,
    /// Carets of the common growth searched.
    pub growth_bound: usize,
}

/// Length of the right spine of `t` when every caret on it has colour `a`.
fn a_spine(t: &Tree, a: Colour) -> Option<usize> {
    let mut cur = t.clone();
    let mut n = 0;
    while let Some((_, r)) = cur.children() {
        if cur.root_colour() != Some(a) {
            return None;
        }
        n += 1;
        cur = r;
    }
    Some(n)
}

/// Non-hatted word of the forest hanging off the right spine of `t`:
/// `t = t_n ∘ (f_1, …, f_{n-1}, I)` gives the letters of `f_{n-1}`, …, `f_1`.
fn spine_forest_word(t: &Tree) -> GroupWord {
    let mut hanging = Vec::new();
    let mut cur = t.clone();
    while let Some((l, r)) = cur.children() {
        hanging.push(l);
        cur = r;
    }
    let mut out = Vec::new();
    for (i, f) in hanging.iter().enumerate().rev() {
        for l in crate::forest::word_from_tree(f) {
            out.push(pos(Gen::new(l.colour, l.index + i, false)));
        }
    }
    out
}

/// Express every hatted generator `b̂_1, b̂_2` (`b ≠ a`) through non-hatted
/// ones: grow the fraction by forests of at most `growth_bound` carets until
/// both trees have class members whose right spines are coloured `a`.
/// A miss is `Unknown`; the negative direction is not decided.
pub fn check_cgp(ctx: &Context, base: Colour, growth_bound: usize, bound: usize) -> CgpReport {
    let targets: Vec<Gen> = ctx
        .p
        .palette
        .colours()
        .filter(|&c| c != base)
        .flat_map(|c| [Gen::new(c, 1, true), Gen::new(c, 2, true)])
        .collect();
    let mut report = CgpReport { verdict: Tri::Yes, witnesses: vec![], missing: vec![], growth_bound };
    for target in targets {
        let goal = generator_element(target, base);
        let verified = |w: &GroupWord| {
            word_to_element(ctx, w, base, bound).found().is_some_and(|g| equals(ctx, &g, &goal, bound) == Tri::Yes)
        };
        match cgp_witness(ctx, &goal, base, growth_bound) {
            Some(w) if verified(&w) => report.witnesses.push((target, w)),
            _ => {
                report.missing.push(target);
                report.verdict = Tri::Unknown;
            }
        }
    }
    report
}

fn cgp_witness(ctx: &Context, g: &GroupElement, base: Colour, growth_bound: usize) -> Option<GroupWord> {
    let spined = |t: &Tree| -> Option<Tree> {
        let class = ctx.nf_oracle.class_of(t)?;
        class.members.iter().find(|m| a_spine(m, base).is_some()).cloned()
    };
    for extra in 0..=growth_bound {
        for h in crate::congruence::all_forests(g.numerator.leaves(), extra, ctx.p.colours()) {
            let Some(x) = spined(&g.numerator.graft(h.trees())) else { continue };
            let Some(y) = spined(&g.denominator.graft(h.trees())) else { continue };
            let mut w = spine_forest_word(&x);
            w.extend(crate::group_presentation::inverse_word(&spine_forest_word(&y)));
            return Some(w);
        }
    }
    None
}

#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub position: usize,
    pub commute: Tri,
}

#[derive(Debug, Clone, Serialize)]
pub struct GoodListReport {
    /// `(colour block, word)` per list entry.
    pub words: Vec<String>,
    pub elements: Vec<GroupElement>,
    pub pairs: Vec<PairCheck>,
    pub failures: usize,
    pub unresolved: usize,
}

/// `L_x = (x_3x_4⁻¹, x_1x_2⁻¹, x_4x_5⁻¹, x_2x_3⁻¹, x_5)`.
pub fn colour_block(x: Colour) -> Vec<GroupWord> {
    let g = |k| Gen::new(x, k, false);
    vec![
        vec![pos(g(3)), neg(g(4))],
        vec![pos(g(1)), neg(g(2))],
        vec![pos(g(4)), neg(g(5))],
        vec![pos(g(2)), neg(g(3))],
        vec![pos(g(5))],
    ]
}

/// Commutation of consecutive entries of a list.
pub fn verify_commuting_chain(ctx: &Context, list: &[GroupElement], bound: usize) -> Result<Vec<PairCheck>> {
    if list.len() < 2 {
        return Err(FskError::Invalid("a list needs at least two entries".into()));
    }
    Ok(list
        .windows(2)
        .enumerate()
        .map(|(position, w)| {
            let gh = multiply(ctx, &w[0], &w[1], bound);
            let hg = multiply(ctx, &w[1], &w[0], bound);
            let commute = match (gh, hg) {
                (Outcome::Found(a), Outcome::Found(b)) => equals(ctx, &a, &b, bound),
                _ => Tri::Unknown,
            };
            PairCheck { position, commute }
        })
        .collect())
}

/// Concatenated blocks `L_a, L_b, …` in the given colour order.
pub fn good_generator_list(ctx: &Context, order: &[Colour], base: Colour, bound: usize) -> Result<GoodListReport> {
    let mut words = Vec::new();
    let mut elements = Vec::new();
    for &x in order {
        for w in colour_block(x) {
            let e = word_to_element(ctx, &w, base, bound)
                .found()
                .ok_or_else(|| FskError::Invalid("list entry could not be evaluated".into()))?;
            words.push(crate::group_presentation::render_group_word(&w, &ctx.p.palette));
            elements.push(e);
        }
    }
    let pairs = verify_commuting_chain(ctx, &elements, bound)?;
    let failures = pairs.iter().filter(|p| p.commute == Tri::No).count();
    let unresolved = pairs.iter().filter(|p| p.commute == Tri::Unknown).count();
    Ok(GoodListReport { words, elements, pairs, failures, unresolved })
}
