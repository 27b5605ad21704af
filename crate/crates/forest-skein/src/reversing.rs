//! Right reversing on the monoid presentation of a skein presentation.
//!
//! Letters are `c_j` (a caret of colour `c` at root `j`). Besides the skein
//! relations shifted to every index, the monoid carries the Thompson-like
//! relations `x_q y_j = y_j x_{q+1}` for `j < q`; these are generated on the
//! fly, so the letter complements are:
//!
//! * `x_i \ y_j = y_{j+1}`, `y_j \ x_i = x_i` when `i < j`;
//! * `x_i \ y_j = y_j`, `y_j \ x_i = x_{i+1}` when `i > j`;
//! * `x_i \ x_i = e`;
//! * `x_i \ y_i`, `x ≠ y`, from a skein relation `x_1 U = y_1 V` shifted by `i − 1`.

use crate::congruence::{LcCounterexample, Oracle};
use crate::forest::{render_word, tree_from_word, word_from_tree, Colour, Letter, Palette, Tree, Word};
use crate::presentation::{shift_word, SkeinPresentation};
use crate::{Outcome, Tri};
use serde::Serialize;
use std::collections::HashSet;

pub const DEFAULT_STEP_BUDGET: usize = 10_000;
pub const DEFAULT_INDEX_CEILING: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SignedLetter {
    pub letter: Letter,
    pub inverse: bool,
}

pub type SignedWord = Vec<SignedLetter>;

/// `u⁻¹ v`.
pub fn quotient_word(u: &[Letter], v: &[Letter]) -> SignedWord {
    let mut w: SignedWord = u.iter().rev().map(|&letter| SignedLetter { letter, inverse: true }).collect();
    w.extend(v.iter().map(|&letter| SignedLetter { letter, inverse: false }));
    w
}

pub fn render_signed(w: &[SignedLetter], palette: &Palette) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|s| {
            let base = s.letter.render(palette);
            if s.inverse {
                format!("{base}^-1")
            } else {
                base
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_signed(text: &str, palette: &Palette) -> crate::Result<SignedWord> {
    text.split_whitespace()
        .filter(|t| *t != "e")
        .map(|tok| {
            let (base, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let base = base.trim_start_matches('(').trim_end_matches(')');
            Ok(SignedLetter { letter: crate::forest::parse_letter(base, palette)?, inverse })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Deletion,
    Thompson,
    /// Index into the presentation's relation list.
    Relation(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: Rule,
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReversalStatus {
    Terminated,
    Empty,
    Blocked,
    BudgetExhausted,
    Branching,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReversalOutcome {
    pub status: ReversalStatus,
    /// `(v', u')` with `w ↷ v'·u'⁻¹`.
    pub result: Option<(Word, Word)>,
    /// Every distinct terminal result, in discovery order.
    pub branches: Vec<(Word, Word)>,
    pub trace: Vec<TraceStep>,
    pub steps: usize,
}

/// One way to reverse a `x⁻¹y` pattern: replace it by `v'·u'⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Alternative {
    v: Word,
    u: Word,
    rule: Rule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

/// Reversing engine for one presentation.
#[derive(Debug, Clone)]
pub struct Reverser {
    palette: Palette,
    complemented: bool,
    /// `pairs[x][y]`: alternatives for `x_1⁻¹ y_1` from skein relations.
    pairs: Vec<Vec<Vec<(Word, Word, usize)>>>,
    pub step_budget: usize,
    pub index_ceiling: usize,
}

impl Reverser {
    pub fn new(p: &SkeinPresentation) -> Self {
        let k = p.colours();
        let mut pairs = vec![vec![Vec::new(); k]; k];
        for (id, r) in p.relations.iter().enumerate() {
            let (wl, wr) = (word_from_tree(&r.lhs), word_from_tree(&r.rhs));
            let (Some(&xl), Some(&yl)) = (wl.first(), wr.first()) else { continue };
            let (x, y) = (xl.colour.index(), yl.colour.index());
            pairs[x][y].push((wl[1..].to_vec(), wr[1..].to_vec(), id));
            pairs[y][x].push((wr[1..].to_vec(), wl[1..].to_vec(), id));
        }
        Reverser {
            palette: p.palette.clone(),
            complemented: p.is_complemented(),
            pairs,
            step_budget: DEFAULT_STEP_BUDGET,
            index_ceiling: DEFAULT_INDEX_CEILING,
        }
    }

    pub fn is_complemented(&self) -> bool {
        self.complemented
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    fn alternatives(&self, x: Letter, y: Letter) -> Vec<Alternative> {
        use std::cmp::Ordering::*;
        match x.index.cmp(&y.index) {
            Less => vec![Alternative { v: vec![y.shifted(1)], u: vec![x], rule: Rule::Thompson }],
            Greater => vec![Alternative { v: vec![y], u: vec![x.shifted(1)], rule: Rule::Thompson }],
            Equal => {
                let mut out = Vec::new();
                if x.colour == y.colour {
                    out.push(Alternative { v: Vec::new(), u: Vec::new(), rule: Rule::Deletion });
                }
                let by = x.index - 1;
                for (v, u, id) in &self.pairs[x.colour.index()][y.colour.index()] {
                    let alt = Alternative { v: shift_word(v, by), u: shift_word(u, by), rule: Rule::Relation(*id) };
                    if !out.contains(&alt) {
                        out.push(alt);
                    }
                }
                out
            }
        }
    }

    fn over_ceiling(&self, w: &[Letter]) -> bool {
        w.iter().any(|l| l.index > self.index_ceiling)
    }

    /// Letter complement `(x\y, y\x)` for complemented presentations.
    #[inline]
    fn letter_comp(&self, x: Letter, y: Letter) -> Option<(Word, Word)> {
        use std::cmp::Ordering::*;
        match x.index.cmp(&y.index) {
            Less => Some((vec![y.shifted(1)], vec![x])),
            Greater => Some((vec![y], vec![x.shifted(1)])),
            Equal if x.colour == y.colour => Some((Vec::new(), Vec::new())),
            Equal => {
                let (v, u, _) = self.pairs[x.colour.index()][y.colour.index()].first()?;
                let by = x.index - 1;
                Some((shift_word(v, by), shift_word(u, by)))
            }
        }
    }

    /// `(u\v, v\u)` by recursion on the reversing grid; complemented only.
    /// `Ok(None)` means blocked.
    pub fn comp_words(&self, u: &[Letter], v: &[Letter], steps: &mut usize) -> Result<Option<(Word, Word)>, Exhausted> {
        if v.is_empty() {
            return Ok(Some((Vec::new(), u.to_vec())));
        }
        if u.is_empty() {
            return Ok(Some((v.to_vec(), Vec::new())));
        }
        if u.len() == 1 {
            let x = u[0];
            let mut acc_v: Word = Vec::new();
            let mut cur: Word = vec![x];
            // walk x across v letter by letter, carrying x's complement
            for (k, &y) in v.iter().enumerate() {
                if cur.len() == 1 {
                    *steps += 1;
                    if *steps > self.step_budget {
                        return Err(Exhausted);
                    }
                    let Some((a, b)) = self.letter_comp(cur[0], y) else { return Ok(None) };
                    if self.over_ceiling(&a) || self.over_ceiling(&b) {
                        return Err(Exhausted);
                    }
                    acc_v.extend(a);
                    cur = b;
                } else {
                    let Some((c, d)) = self.comp_words(&cur, &v[k..k + 1], steps)? else { return Ok(None) };
                    acc_v.extend(c);
                    cur = d;
                }
                if cur.is_empty() {
                    acc_v.extend_from_slice(&v[k + 1..]);
                    return Ok(Some((acc_v, cur)));
                }
            }
            return Ok(Some((acc_v, cur)));
        }
        // u = x·u2: reverse x⁻¹v first, then u2⁻¹(x\v)
        let Some((p, q)) = self.comp_words(&u[..1], v, steps)? else { return Ok(None) };
        let Some((r, s)) = self.comp_words(&u[1..], &p, steps)? else { return Ok(None) };
        let mut vu = q;
        vu.extend(s);
        Ok(Some((r, vu)))
    }

    /// `(u\v, v\u)` with the default budget.
    pub fn complement(&self, u: &[Letter], v: &[Letter]) -> crate::Result<Outcome<(Word, Word)>> {
        if !self.complemented {
            return Err(crate::FskError::NotComplemented);
        }
        let mut steps = 0;
        Ok(match self.comp_words(u, v, &mut steps) {
            Ok(Some(r)) => Outcome::Found(r),
            Ok(None) => Outcome::Absent,
            Err(Exhausted) => Outcome::Exhausted,
        })
    }

    /// Whether `u⁻¹v ↷ e`; complemented presentations only.
    pub fn words_equal(&self, u: &[Letter], v: &[Letter]) -> Tri {
        let mut steps = 0;
        match self.comp_words(u, v, &mut steps) {
            Ok(Some((a, b))) => Tri::from_bool(a.is_empty() && b.is_empty()),
            Ok(None) => Tri::No,
            Err(Exhausted) => Tri::Unknown,
        }
    }

    /// Reverse an arbitrary signed word. Complemented presentations follow the
    /// unique leftmost path; otherwise every branch is explored.
    pub fn reverse(&self, w: &[SignedLetter]) -> ReversalOutcome {
        if self.complemented {
            self.reverse_deterministic(w)
        } else {
            self.reverse_branching(w, usize::MAX)
        }
    }

    fn reverse_deterministic(&self, w: &[SignedLetter]) -> ReversalOutcome {
        let mut word = w.to_vec();
        let mut trace = Vec::new();
        let mut steps = 0;
        loop {
            let Some(k) = leftmost_pattern(&word) else {
                let res = split_terminal(&word);
                let status = if word.is_empty() { ReversalStatus::Empty } else { ReversalStatus::Terminated };
                return ReversalOutcome { status, result: Some(res.clone()), branches: vec![res], trace, steps };
            };
            if steps >= self.step_budget {
                return exhausted(trace, steps);
            }
            let alts = self.alternatives(word[k].letter, word[k + 1].letter);
            let Some(alt) = alts.into_iter().next() else {
                return ReversalOutcome { status: ReversalStatus::Blocked, result: None, branches: vec![], trace, steps };
            };
            if self.over_ceiling(&alt.v) || self.over_ceiling(&alt.u) {
                return exhausted(trace, steps);
            }
            steps += 1;
            trace.push(TraceStep { rule: alt.rule, position: k });
            word.splice(k..k + 2, replacement(&alt));
        }
    }

    /// Depth-first over all branches, leftmost pattern first and relations in
    /// declaration order. Stops after `max_results` distinct terminal results.
    pub fn reverse_branching(&self, w: &[SignedLetter], max_results: usize) -> ReversalOutcome {
        let mut seen: HashSet<SignedWord> = HashSet::new();
        let mut stack: Vec<(SignedWord, Vec<TraceStep>)> = vec![(w.to_vec(), Vec::new())];
        let mut branches: Vec<(Word, Word)> = Vec::new();
        let mut first_trace = None;
        let mut steps = 0;
        let mut blocked = false;
        while let Some((word, trace)) = stack.pop() {
            if !seen.insert(word.clone()) {
                continue;
            }
            let Some(k) = leftmost_pattern(&word) else {
                let res = split_terminal(&word);
                if !branches.contains(&res) {
                    branches.push(res);
                    first_trace.get_or_insert(trace);
                    if branches.len() >= max_results {
                        break;
                    }
                }
                continue;
            };
            let alts = self.alternatives(word[k].letter, word[k + 1].letter);
            if alts.is_empty() {
                blocked = true;
                continue;
            }
            // push in reverse so the first alternative is explored first
            for alt in alts.iter().rev() {
                steps += 1;
                if steps > self.step_budget || self.over_ceiling(&alt.v) || self.over_ceiling(&alt.u) {
                    return ReversalOutcome {
                        status: ReversalStatus::BudgetExhausted,
                        result: branches.first().cloned(),
                        branches,
                        trace: first_trace.unwrap_or_default(),
                        steps,
                    };
                }
                let mut next = word.clone();
                next.splice(k..k + 2, replacement(alt));
                let mut t = trace.clone();
                t.push(TraceStep { rule: alt.rule, position: k });
                stack.push((next, t));
            }
        }
        let status = match branches.len() {
            0 if blocked => ReversalStatus::Blocked,
            0 => ReversalStatus::BudgetExhausted,
            1 if branches[0].0.is_empty() && branches[0].1.is_empty() => ReversalStatus::Empty,
            1 => ReversalStatus::Terminated,
            _ => ReversalStatus::Branching,
        };
        ReversalOutcome { status, result: branches.first().cloned(), branches, trace: first_trace.unwrap_or_default(), steps }
    }

    /// Whether some branch of `w` reverses to the empty word.
    pub fn reverses_to_empty(&self, w: &[SignedLetter]) -> Tri {
        if self.complemented {
            let out = self.reverse_deterministic(w);
            return match out.status {
                ReversalStatus::Empty => Tri::Yes,
                ReversalStatus::BudgetExhausted => Tri::Unknown,
                _ => Tri::No,
            };
        }
        let mut seen: HashSet<SignedWord> = HashSet::new();
        let mut stack = vec![w.to_vec()];
        let mut steps = 0;
        while let Some(word) = stack.pop() {
            if word.is_empty() {
                return Tri::Yes;
            }
            if !seen.insert(word.clone()) {
                continue;
            }
            let Some(k) = leftmost_pattern(&word) else { continue };
            for alt in self.alternatives(word[k].letter, word[k + 1].letter).iter().rev() {
                steps += 1;
                if steps > self.step_budget || self.over_ceiling(&alt.v) || self.over_ceiling(&alt.u) {
                    return Tri::Unknown;
                }
                let mut next = word.clone();
                next.splice(k..k + 2, replacement(alt));
                stack.push(next);
            }
        }
        Tri::No
    }

    /// Strong cube condition at `(u, v, w)`: whenever `u⁻¹w w⁻¹v ↷ v'u'⁻¹`,
    /// `(uv')⁻¹(vu')` must reverse to `e`.
    pub fn scc_at(&self, u: &[Letter], v: &[Letter], w: &[Letter]) -> Tri {
        let mut word = quotient_word(u, w);
        word.extend(quotient_word(w, v));
        let out = self.reverse_branching(&word, usize::MAX);
        if out.status == ReversalStatus::BudgetExhausted {
            return Tri::Unknown;
        }
        let mut verdict = Tri::Yes;
        for (vp, up) in &out.branches {
            let mut l = u.to_vec();
            l.extend_from_slice(vp);
            let mut r = v.to_vec();
            r.extend_from_slice(up);
            match self.reverses_to_empty(&quotient_word(&l, &r)) {
                Tri::No => return Tri::No,
                Tri::Unknown => verdict = Tri::Unknown,
                Tri::Yes => {}
            }
        }
        verdict
    }

    /// Tree equality by reversing `word(s)⁻¹ word(t)`; only meaningful when
    /// the presentation is complete.
    pub fn trees_equal(&self, s: &Tree, t: &Tree) -> Tri {
        if s == t {
            return Tri::Yes;
        }
        if s.carets() != t.carets() {
            return Tri::No;
        }
        let (ws, wt) = (word_from_tree(s), word_from_tree(t));
        if self.complemented {
            self.words_equal(&ws, &wt)
        } else {
            self.reverses_to_empty(&quotient_word(&ws, &wt))
        }
    }

    /// Common multiple of two trees from the complement of their words:
    /// returns `(z1, z2)` with `s ≤ z1`, `t ≤ z2` raw and `z1 ≡ z2`.
    pub fn common_multiple(&self, s: &Tree, t: &Tree) -> Outcome<(Tree, Tree)> {
        let (ws, wt) = (word_from_tree(s), word_from_tree(t));
        let res = if self.complemented {
            let mut steps = 0;
            match self.comp_words(&ws, &wt, &mut steps) {
                Ok(Some(r)) => Outcome::Found(r),
                Ok(None) => Outcome::Absent,
                Err(Exhausted) => Outcome::Exhausted,
            }
        } else {
            let out = self.reverse_branching(&quotient_word(&ws, &wt), 1);
            match out.result {
                Some(r) => Outcome::Found(r),
                None if out.status == ReversalStatus::Blocked => Outcome::Absent,
                None => Outcome::Exhausted,
            }
        };
        res.map(|(vp, up)| (apply_word(s, &vp), apply_word(t, &up)))
    }

    /// Every terminal result of reversing `word(s)⁻¹ word(t)`, as tree pairs.
    pub fn all_common_multiples(&self, s: &Tree, t: &Tree) -> Outcome<Vec<(Tree, Tree)>> {
        let (ws, wt) = (word_from_tree(s), word_from_tree(t));
        let out = self.reverse_branching(&quotient_word(&ws, &wt), usize::MAX);
        match out.status {
            ReversalStatus::BudgetExhausted => Outcome::Exhausted,
            ReversalStatus::Blocked => Outcome::Found(Vec::new()),
            _ => Outcome::Found(out.branches.iter().map(|(vp, up)| (apply_word(s, vp), apply_word(t, up))).collect()),
        }
    }

    pub fn render(&self, w: &[Letter]) -> String {
        render_word(w, &self.palette)
    }
}

/// Apply the letters of `w` to the first tree of `t ⊗ I ⊗ I ⊗ …`, dropping
/// those that land on the trivial trees to the right.
pub fn apply_word(t: &Tree, w: &[Letter]) -> Tree {
    let mut out = t.clone();
    for l in w {
        if l.index <= out.leaves() {
            out = out.attach(l.colour, l.index).expect("index checked");
        }
    }
    out
}

fn exhausted(trace: Vec<TraceStep>, steps: usize) -> ReversalOutcome {
    ReversalOutcome { status: ReversalStatus::BudgetExhausted, result: None, branches: vec![], trace, steps }
}

fn leftmost_pattern(w: &[SignedLetter]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&k| w[k].inverse && !w[k + 1].inverse)
}

fn replacement(alt: &Alternative) -> Vec<SignedLetter> {
    let mut out: Vec<SignedLetter> = alt.v.iter().map(|&letter| SignedLetter { letter, inverse: false }).collect();
    out.extend(alt.u.iter().rev().map(|&letter| SignedLetter { letter, inverse: true }));
    out
}

/// Split a word without `−+` patterns as `v'·u'⁻¹`.
fn split_terminal(w: &[SignedLetter]) -> (Word, Word) {
    let k = w.iter().position(|s| s.inverse).unwrap_or(w.len());
    let v = w[..k].iter().map(|s| s.letter).collect();
    let u = w[k..].iter().rev().map(|s| s.letter).collect();
    (v, u)
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleCheck {
    pub triple: (String, String, String),
    /// The cube expression when both halves are defined.
    pub e: Option<String>,
    pub satisfied: Tri,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletenessReport {
    pub verdict: Tri,
    pub method: &'static str,
    pub triples: Vec<TripleCheck>,
}

/// Completeness of the monoid presentation.
///
/// Complemented presentations with at most two colours are complete outright.
/// With three or more colours the strong cube condition is checked at
/// `(x_1, y_1, z_1)` for ordered triples of distinct colours; the cube
/// expression `[(x\y)\(x\z)]\[(y\x)\(y\z)]` is recorded alongside. When only
/// one half of it is defined the condition fails (a common multiple exists
/// that reversing cannot see). Presentations whose relations all start with
/// distinct letters are checked at triples with `z ∉ {x, y}`.
pub fn is_complete(p: &SkeinPresentation, rev: &Reverser) -> CompletenessReport {
    let k = p.colours();
    let pal = &p.palette;
    let name = |c: usize| pal.name(Colour(c as u8)).to_string();
    let l1 = |c: usize| vec![Letter::new(Colour(c as u8), 1)];
    if p.is_complemented() {
        if k <= 2 {
            return CompletenessReport { verdict: Tri::Yes, method: "complemented_two_colours", triples: vec![] };
        }
        let mut triples = Vec::new();
        let mut verdict = Tri::Yes;
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    if x == y || y == z || x == z {
                        continue;
                    }
                    let e = cube_expression(rev, &l1(x), &l1(y), &l1(z)).map(|w| rev.render(&w));
                    let sat = rev.scc_at(&l1(x), &l1(y), &l1(z));
                    match sat {
                        Tri::No => verdict = Tri::No,
                        Tri::Unknown if verdict == Tri::Yes => verdict = Tri::Unknown,
                        _ => {}
                    }
                    triples.push(TripleCheck { triple: (name(x), name(y), name(z)), e, satisfied: sat });
                }
            }
        }
        return CompletenessReport { verdict, method: "complemented_cube", triples };
    }
    let distinct_starts = p.relations.iter().all(|r| {
        matches!(r.root_colours(), (Some(a), Some(b)) if a != b)
    });
    if !distinct_starts {
        return CompletenessReport { verdict: Tri::Unknown, method: "unsupported_shape", triples: vec![] };
    }
    let mut triples = Vec::new();
    let mut verdict = Tri::Yes;
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                if z == x || z == y {
                    continue;
                }
                let sat = rev.scc_at(&l1(x), &l1(y), &l1(z));
                match sat {
                    Tri::No => verdict = Tri::No,
                    Tri::Unknown if verdict == Tri::Yes => verdict = Tri::Unknown,
                    _ => {}
                }
                triples.push(TripleCheck { triple: (name(x), name(y), name(z)), e: None, satisfied: sat });
            }
        }
    }
    CompletenessReport { verdict, method: "distinct_start_scc", triples }
}

/// `[(x\y)\(x\z)] \ [(y\x)\(y\z)]` when every piece is defined.
pub fn cube_expression(rev: &Reverser, x: &[Letter], y: &[Letter], z: &[Letter]) -> Option<Word> {
    let mut s = 0;
    let (xy, yx) = rev.comp_words(x, y, &mut s).ok()??;
    let (xz, _) = rev.comp_words(x, z, &mut s).ok()??;
    let (yz, _) = rev.comp_words(y, z, &mut s).ok()??;
    let (l, _) = rev.comp_words(&xy, &xz, &mut s).ok()??;
    let (r, _) = rev.comp_words(&yx, &yz, &mut s).ok()??;
    let (e, _) = rev.comp_words(&l, &r, &mut s).ok()??;
    Some(e)
}

#[derive(Debug, Clone)]
pub struct LcReport {
    pub verdict: Tri,
    /// Which rule decided: `complete_distinct_starts`, `complete_same_letter_checked`,
    /// `oracle_counterexample` or `undecided`.
    pub branch: &'static str,
    pub counterexample: Option<LcCounterexample>,
    pub oracle_bound: usize,
}

/// Left-cancellativity: proved from completeness, refuted by the oracle.
pub fn decide_left_cancellative(
    p: &SkeinPresentation,
    rev: &Reverser,
    completeness: &CompletenessReport,
    oracle: &Oracle,
    oracle_bound: usize,
) -> LcReport {
    if completeness.verdict == Tri::Yes {
        let same: Vec<_> = p.relations.iter().filter(|r| r.lhs.root_colour() == r.rhs.root_colour()).collect();
        let all_ok = same.iter().all(|r| {
            let (wl, wr) = (word_from_tree(&r.lhs), word_from_tree(&r.rhs));
            rev.reverses_to_empty(&quotient_word(&wl[1..], &wr[1..])) == Tri::Yes
        });
        if all_ok {
            let branch = if same.is_empty() { "complete_distinct_starts" } else { "complete_same_letter_checked" };
            return LcReport { verdict: Tri::Yes, branch, counterexample: None, oracle_bound };
        }
    }
    match oracle.refute_left_cancellative(oracle_bound) {
        Outcome::Found(c) => {
            LcReport { verdict: Tri::No, branch: "oracle_counterexample", counterexample: Some(c), oracle_bound }
        }
        _ => LcReport { verdict: Tri::Unknown, branch: "undecided", counterexample: None, oracle_bound },
    }
}

/// Every colour pair has exactly one relation, with both sides of length two.
pub fn ore_via_closed_family(p: &SkeinPresentation) -> Tri {
    if !p.is_complemented() {
        return Tri::Unknown;
    }
    let k = p.colours();
    for x in 0..k {
        for y in x + 1..k {
            match p.relation_between(Colour(x as u8), Colour(y as u8)) {
                Some((u, v)) if u.carets() == 2 && v.carets() == 2 => {}
                _ => return Tri::Unknown,
            }
        }
    }
    Tri::Yes
}

/// Tree built from a word, for tests and examples.
pub fn tree(w: &[Letter]) -> Tree {
    tree_from_word(w).expect("valid word")
}
