//! Relation-aware tree arithmetic for one presentation.
//!
//! Picks the equality strategy once: reversing when the monoid presentation
//! is complemented and complete, branch reversing when it is complete but not
//! complemented, and the bounded oracle otherwise. Presentations recognised as
//! built from monochromatic trees are handed to reversing on the presentation
//! with every pair of colours related, which defines the same category.

use crate::congruence::Oracle;
use crate::forest::{word_from_tree, Forest, Tree};
use crate::ore_spine::recognise_f_tau;
use crate::presentation::{Relation, SkeinPresentation};
use crate::reversing::{apply_word, is_complete, quotient_word, CompletenessReport, Reverser, ReversalStatus};
use crate::{Outcome, Tri};
use serde::Serialize;

/// Largest class explored when reducing fractions.
pub const NF_CLASS_BUDGET: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Reversing,
    BranchReversing,
    Oracle,
}

pub struct Context {
    pub p: SkeinPresentation,
    pub rev: Reverser,
    pub oracle: Oracle,
    /// Oracle with a small class budget, for normal forms.
    pub nf_oracle: Oracle,
    pub completeness: CompletenessReport,
    pub strategy: Strategy,
    /// Reverser for the all-pairs presentation, when that one is the engine.
    engine: Option<Reverser>,
    /// Caret budget of oracle fallbacks.
    pub search_bound: usize,
}

impl Context {
    pub fn new(p: &SkeinPresentation) -> Self {
        let rev = Reverser::new(p);
        let completeness = is_complete(p, &rev);
        let oracle = Oracle::new(p);
        let mut engine = None;
        let strategy = match (completeness.verdict, p.is_complemented()) {
            (Tri::Yes, true) => Strategy::Reversing,
            (Tri::Yes, false) => Strategy::BranchReversing,
            _ => match all_pairs_engine(p) {
                Some(r) => {
                    engine = Some(r);
                    Strategy::Reversing
                }
                None => Strategy::Oracle,
            },
        };
        let nf_oracle = Oracle::with_budgets(p, crate::congruence::DEFAULT_CARET_BUDGET, NF_CLASS_BUDGET);
        Context { p: p.clone(), rev, oracle, nf_oracle, completeness, strategy, engine, search_bound: 8 }
    }

    fn engine(&self) -> &Reverser {
        self.engine.as_ref().unwrap_or(&self.rev)
    }

    pub fn trees_equal(&self, s: &Tree, t: &Tree) -> Tri {
        if s == t {
            return Tri::Yes;
        }
        if s.carets() != t.carets() {
            return Tri::No;
        }
        match self.strategy {
            Strategy::Reversing | Strategy::BranchReversing => self.engine().trees_equal(s, t),
            Strategy::Oracle => self.oracle.equivalent_trees(s, t),
        }
    }

    pub fn forests_equal(&self, f: &Forest, g: &Forest) -> Tri {
        if f.roots() != g.roots() || f.leaves() != g.leaves() {
            return Tri::No;
        }
        let mut out = Tri::Yes;
        for (s, t) in f.trees().iter().zip(g.trees()) {
            match self.trees_equal(s, t) {
                Tri::No => return Tri::No,
                Tri::Unknown => out = Tri::Unknown,
                Tri::Yes => {}
            }
        }
        out
    }

    /// `h` with `s∘h ≡ t`.
    pub fn tree_leq(&self, s: &Tree, t: &Tree) -> Outcome<Forest> {
        if s.carets() > t.carets() {
            return Outcome::Absent;
        }
        if let Some(h) = s.divide(t) {
            return Outcome::Found(h);
        }
        let (ws, wt) = (word_from_tree(s), word_from_tree(t));
        match self.strategy {
            Strategy::Reversing => {
                let mut steps = 0;
                match self.engine().comp_words(&ws, &wt, &mut steps) {
                    Ok(Some((st, ts))) if ts.is_empty() => {
                        let z = apply_word(s, &st);
                        Outcome::Found(s.divide(&z).expect("grown from s"))
                    }
                    Ok(_) => Outcome::Absent,
                    Err(_) => Outcome::Exhausted,
                }
            }
            Strategy::BranchReversing => {
                let out = self.rev.reverse_branching(&quotient_word(&ws, &wt), usize::MAX);
                if out.status == ReversalStatus::BudgetExhausted {
                    return Outcome::Exhausted;
                }
                match out.branches.iter().find(|(_, u)| u.is_empty()) {
                    Some((v, _)) => {
                        let z = apply_word(s, v);
                        Outcome::Found(s.divide(&z).expect("grown from s"))
                    }
                    None => Outcome::Absent,
                }
            }
            Strategy::Oracle => self.oracle.tree_leq(s, t),
        }
    }

    /// Forests `p`, `q` with `s∘p ≡ t∘q`.
    pub fn common_multiple(&self, s: &Tree, t: &Tree) -> Outcome<(Forest, Forest)> {
        self.common_multiple_bounded(s, t, self.search_bound)
    }

    /// As [`Context::common_multiple`]; `bound` caps the oracle search in carets.
    pub fn common_multiple_bounded(&self, s: &Tree, t: &Tree, bound: usize) -> Outcome<(Forest, Forest)> {
        if s == t {
            return Outcome::Found((Forest::trivial(s.leaves()), Forest::trivial(t.leaves())));
        }
        match self.strategy {
            Strategy::Reversing | Strategy::BranchReversing => self.engine().common_multiple(s, t).map(|(z1, z2)| {
                (s.divide(&z1).expect("grown from s"), t.divide(&z2).expect("grown from t"))
            }),
            Strategy::Oracle => self.oracle_common_multiple(s, t, bound),
        }
    }

    /// Grow `s` by forests of increasing size until `t` lies below.
    fn oracle_common_multiple(&self, s: &Tree, t: &Tree, bound: usize) -> Outcome<(Forest, Forest)> {
        let (s, t, swapped) = if s.carets() >= t.carets() { (s, t, false) } else { (t, s, true) };
        let k = self.p.colours();
        for extra in 0..=bound.saturating_sub(s.carets()) {
            for p in crate::congruence::all_forests(s.leaves(), extra, k) {
                let z = s.graft(p.trees());
                match self.oracle.tree_leq(t, &z) {
                    Outcome::Found(q) => return Outcome::Found(if swapped { (q, p) } else { (p, q) }),
                    _ => {}
                }
            }
        }
        // a bounded search never proves absence
        Outcome::Exhausted
    }

    /// Canonical representative of the class of `t`, if the class is small enough.
    pub fn canonical(&self, t: &Tree) -> Option<Tree> {
        self.oracle.canonical(t)
    }
}

/// For a presentation of monochromatic trees, the presentation relating every
/// pair of colours, if its reversing is complete.
fn all_pairs_engine(p: &SkeinPresentation) -> Option<Reverser> {
    let tau = recognise_f_tau(p)?;
    let mut rels = Vec::new();
    for x in 0..tau.len() {
        for y in x + 1..tau.len() {
            rels.push(Relation { lhs: tau[x].clone(), rhs: tau[y].clone() });
        }
    }
    let q = SkeinPresentation::new(p.name.clone(), p.palette.clone(), rels).ok()?;
    let rev = Reverser::new(&q);
    (is_complete(&q, &rev).verdict == Tri::Yes).then_some(rev)
}
