//! Bounded ground truth for the congruence generated by a skein presentation.
//!
//! Relations preserve caret counts and act inside one tree, so forest
//! equivalence is treewise and every class is finite. Classes are found by
//! breadth-first rewriting, and whole strata of trees can be saturated into a
//! [`CongruenceTable`]. Negative answers are only claims about the bound used.

use crate::forest::{all_trees, canonical_key, colourings, shapes, subtree_end, Forest, Tree, LEAF};
use crate::presentation::SkeinPresentation;
use crate::{Outcome, Tri};
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

pub const DEFAULT_CARET_BUDGET: usize = 12;
pub const DEFAULT_CLASS_BUDGET: usize = 1_000_000;

/// An equivalence class of trees, members sorted in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub members: Vec<Tree>,
}

impl Class {
    pub fn rep(&self) -> &Tree {
        &self.members[0]
    }

    pub fn contains(&self, t: &Tree) -> bool {
        self.members.binary_search_by(|m| canonical_key(m).cmp(&canonical_key(t))).is_ok()
    }
}

/// Every tree with at most `caret_bound` carets, partitioned into classes.
#[derive(Debug, Clone)]
pub struct CongruenceTable {
    pub caret_bound: usize,
    pub usable: bool,
    ids: HashMap<Tree, u32>,
    classes: Vec<Vec<Tree>>,
}

impl CongruenceTable {
    pub fn class_id(&self, t: &Tree) -> Option<u32> {
        self.ids.get(t).copied()
    }

    /// Class ids of the trees of `f`, if all are in the table.
    pub fn forest_class(&self, f: &Forest) -> Option<Vec<u32>> {
        f.trees().iter().map(|t| self.class_id(t)).collect()
    }

    pub fn class(&self, id: u32) -> &[Tree] {
        &self.classes[id as usize]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn tree_count(&self) -> usize {
        self.ids.len()
    }

    /// Class ids whose members have exactly `n` carets, in canonical order.
    pub fn classes_with_carets(&self, n: usize) -> impl Iterator<Item = u32> + '_ {
        (0..self.classes.len() as u32).filter(move |&i| self.classes[i as usize][0].carets() == n)
    }
}

/// Witness that left cancellation fails: `f∘g ≡ f∘h` with `g ≢ h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcCounterexample {
    pub f: Tree,
    pub g: Forest,
    pub h: Forest,
}

#[derive(Debug, Clone, Serialize)]
pub struct OreReport {
    pub pair_bound: usize,
    pub search_bound: usize,
    pub pairs_checked: usize,
    pub failures: Vec<(Tree, Tree)>,
    pub usable: bool,
}

/// The oracle owns the presentation's rewrite rules and memoizes classes and
/// tables; queries through `&self` are safe to share between threads.
pub struct Oracle {
    p: SkeinPresentation,
    /// `rules[c]` lists `(u, v)` with root colour of `u` equal to `c`, both directions.
    rules: Vec<Vec<(Tree, Tree)>>,
    pub class_budget: usize,
    pub caret_budget: usize,
    classes: Mutex<HashMap<Tree, Arc<Class>>>,
    tables: Mutex<HashMap<usize, Arc<CongruenceTable>>>,
}

impl Oracle {
    pub fn new(p: &SkeinPresentation) -> Self {
        let mut rules = vec![Vec::new(); p.colours()];
        for r in &p.relations {
            for (u, v) in [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)] {
                if let Some(c) = u.root_colour() {
                    rules[c.index()].push((u.clone(), v.clone()));
                }
            }
        }
        Oracle {
            p: p.clone(),
            rules,
            class_budget: DEFAULT_CLASS_BUDGET,
            caret_budget: DEFAULT_CARET_BUDGET,
            classes: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_budgets(p: &SkeinPresentation, caret_budget: usize, class_budget: usize) -> Self {
        let mut o = Oracle::new(p);
        o.caret_budget = caret_budget;
        o.class_budget = class_budget;
        o
    }

    pub fn presentation(&self) -> &SkeinPresentation {
        &self.p
    }

    /// Call `f` on every tree one rewrite step away from `t`.
    pub fn neighbours(&self, t: &Tree, mut f: impl FnMut(Tree)) {
        let code = t.code();
        let mut hang = Vec::new();
        for pos in 0..code.len() {
            let b = code[pos];
            if b == LEAF {
                continue;
            }
            for (u, v) in &self.rules[b as usize] {
                hang.clear();
                if t.match_at(pos, u, &mut hang) {
                    f(t.splice(pos, &hang, v));
                }
            }
        }
    }

    /// Breadth-first class of `t`; `None` when the class budget is exceeded.
    pub fn class_of(&self, t: &Tree) -> Option<Arc<Class>> {
        if let Some(c) = self.classes.lock().unwrap().get(t) {
            return Some(c.clone());
        }
        let mut seen: HashSet<Tree> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(t.clone());
        queue.push_back(t.clone());
        while let Some(x) = queue.pop_front() {
            let mut over = false;
            self.neighbours(&x, |y| {
                if !seen.contains(&y) {
                    if seen.len() >= self.class_budget {
                        over = true;
                        return;
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            });
            if over {
                return None;
            }
        }
        let mut members: Vec<(_, Tree)> = seen.into_iter().map(|m| (canonical_key(&m), m)).collect();
        members.sort();
        let class = Arc::new(Class { members: members.into_iter().map(|(_, m)| m).collect() });
        let mut cache = self.classes.lock().unwrap();
        if cache.len() > 4 * self.class_budget {
            cache.clear();
        }
        if class.members.len() <= 100_000 {
            for m in &class.members {
                cache.insert(m.clone(), class.clone());
            }
        }
        Some(class)
    }

    /// Canonical representative of the class of `t`.
    pub fn canonical(&self, t: &Tree) -> Option<Tree> {
        self.class_of(t).map(|c| c.rep().clone())
    }

    pub fn equivalent_trees(&self, s: &Tree, t: &Tree) -> Tri {
        if s == t {
            return Tri::Yes;
        }
        if s.carets() != t.carets() {
            return Tri::No;
        }
        if let Some(table) = self.cached_table(s.carets()) {
            if let (Some(a), Some(b)) = (table.class_id(s), table.class_id(t)) {
                return Tri::from_bool(a == b);
            }
        }
        match self.class_of(s) {
            Some(c) => Tri::from_bool(c.contains(t)),
            None => Tri::Unknown,
        }
    }

    /// Treewise equivalence of forests.
    pub fn equivalent(&self, f: &Forest, g: &Forest) -> Tri {
        if f.roots() != g.roots() || f.leaves() != g.leaves() {
            return Tri::No;
        }
        let mut out = Tri::Yes;
        for (s, t) in f.trees().iter().zip(g.trees()) {
            match self.equivalent_trees(s, t) {
                Tri::No => return Tri::No,
                Tri::Unknown => out = Tri::Unknown,
                Tri::Yes => {}
            }
        }
        out
    }

    /// `h` with `s∘h ≡ t`, searching over both classes.
    pub fn tree_leq(&self, s: &Tree, t: &Tree) -> Outcome<Forest> {
        if s.carets() > t.carets() {
            return Outcome::Absent;
        }
        if let Some(h) = s.divide(t) {
            return Outcome::Found(h);
        }
        let (Some(cs), Some(ct)) = (self.class_of(s), self.class_of(t)) else {
            return Outcome::Exhausted;
        };
        for m in &ct.members {
            for s2 in &cs.members {
                if let Some(h) = s2.divide(m) {
                    return Outcome::Found(h);
                }
            }
        }
        Outcome::Absent
    }

    /// `h` with `f∘h ≡ g`, treewise.
    pub fn class_leq(&self, f: &Forest, g: &Forest) -> Outcome<Forest> {
        if f.roots() != g.roots() {
            return Outcome::Absent;
        }
        let mut trees = Vec::new();
        for (s, t) in f.trees().iter().zip(g.trees()) {
            match self.tree_leq(s, t) {
                Outcome::Found(h) => trees.extend(h.into_trees()),
                other => return other,
            }
        }
        Outcome::Found(Forest::new(trees).expect("nonempty"))
    }

    /// Number of trees with at most `n` carets.
    pub fn stratum_size(&self, n: usize) -> u128 {
        let k = self.p.colours() as u128;
        (0..=n).map(|m| catalan(m) * k.pow(m as u32)).sum()
    }

    fn cached_table(&self, carets: usize) -> Option<Arc<CongruenceTable>> {
        let tables = self.tables.lock().unwrap();
        tables.iter().filter(|(&b, t)| b >= carets && t.usable).map(|(_, t)| t.clone()).next()
    }

    /// Saturate all trees with at most `carets` carets. Forest classes with
    /// several roots are tuples of tree classes (see [`CongruenceTable::forest_class`]).
    pub fn saturate(&self, carets: usize) -> Arc<CongruenceTable> {
        if let Some(t) = self.tables.lock().unwrap().get(&carets) {
            return t.clone();
        }
        if let Some(t) = self.cached_table(carets) {
            // a larger table answers every query of a smaller one
            if t.caret_bound >= carets {
                return t;
            }
        }
        let table = Arc::new(self.build_table(carets));
        self.tables.lock().unwrap().insert(carets, table.clone());
        table
    }

    fn build_table(&self, carets: usize) -> CongruenceTable {
        if carets > self.caret_budget || self.stratum_size(carets) > self.class_budget as u128 {
            return CongruenceTable { caret_bound: carets, usable: false, ids: HashMap::new(), classes: Vec::new() };
        }
        let k = self.p.colours();
        let mut ids = HashMap::new();
        let mut classes = Vec::new();
        for n in 0..=carets {
            let trees = all_trees(n, k);
            let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut uf = UnionFind::new(trees.len());
            for (i, t) in trees.iter().enumerate() {
                self.neighbours(t, |y| uf.union(i, index[&y]));
            }
            let mut groups: HashMap<usize, Vec<Tree>> = HashMap::new();
            for (i, t) in trees.iter().enumerate() {
                groups.entry(uf.find(i)).or_default().push(t.clone());
            }
            let mut level: Vec<Vec<Tree>> = groups
                .into_values()
                .map(|mut g| {
                    g.sort_by_cached_key(canonical_key);
                    g
                })
                .collect();
            level.sort_by_cached_key(|g| canonical_key(&g[0]));
            for g in level {
                let id = classes.len() as u32;
                for t in &g {
                    ids.insert(t.clone(), id);
                }
                classes.push(g);
            }
        }
        CongruenceTable { caret_bound: carets, usable: true, ids, classes }
    }

    /// Exhaustive search for a failure of left cancellation among trees with
    /// at most `caret_bound` carets, smallest first.
    pub fn refute_left_cancellative(&self, caret_bound: usize) -> Outcome<LcCounterexample> {
        let table = self.saturate(caret_bound);
        if !table.usable {
            return Outcome::Exhausted;
        }
        for n in 1..=caret_bound {
            for id in table.classes_with_carets(n) {
                // f-class -> (g classes, exact f, g)
                let mut seen: HashMap<u32, Vec<(Vec<u32>, Tree, Forest)>> = HashMap::new();
                for m in table.class(id) {
                    for (f, g) in root_prefixes(m) {
                        if f.is_leaf() || g.is_trivial() {
                            continue;
                        }
                        let fc = table.class_id(&f).expect("prefix in table");
                        let gc = table.forest_class(&g).expect("hanging forest in table");
                        let entry = seen.entry(fc).or_default();
                        if let Some((_, f0, g0)) = entry.iter().find(|(c, _, _)| *c != gc) {
                            // f0∘g0 ≡ m = f∘g and f ≡ f0, so f0∘g0 ≡ f0∘g
                            let _ = f;
                            return Outcome::Found(LcCounterexample { f: f0.clone(), g: g0.clone(), h: g });
                        }
                        if entry.is_empty() {
                            entry.push((gc, f, g));
                        }
                    }
                }
            }
        }
        Outcome::Absent
    }

    /// Classes of `x∘h` over all forests `h` making `n` carets in total.
    pub fn up_set(&self, table: &CongruenceTable, x: &Tree, n: usize) -> HashSet<u32> {
        let mut out = HashSet::new();
        if n < x.carets() {
            return out;
        }
        for h in all_forests(x.leaves(), n - x.carets(), self.p.colours()) {
            let z = x.graft(h.trees());
            if let Some(id) = table.class_id(&z) {
                out.insert(id);
            }
        }
        out
    }

    /// For every pair of classes of trees with ≤ `pair_bound` carets, look
    /// for a common upper bound with ≤ `search_bound` carets.
    pub fn check_ore_bounded(&self, pair_bound: usize, search_bound: usize) -> OreReport {
        let table = self.saturate(search_bound);
        let mut report = OreReport {
            pair_bound,
            search_bound,
            pairs_checked: 0,
            failures: Vec::new(),
            usable: table.usable,
        };
        if !table.usable {
            return report;
        }
        let reps: Vec<Tree> = (0..=pair_bound)
            .flat_map(|n| table.classes_with_carets(n).map(|id| table.class(id)[0].clone()).collect::<Vec<_>>())
            .collect();
        let ups: Vec<HashSet<u32>> = reps.iter().map(|x| self.up_set(&table, x, search_bound)).collect();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                report.pairs_checked += 1;
                if ups[i].is_disjoint(&ups[j]) {
                    report.failures.push((reps[i].clone(), reps[j].clone()));
                }
            }
        }
        report
    }

    /// Minimal common upper bounds of `x` and `y` with at most `bound` carets.
    pub fn mcm_bounded(&self, x: &Tree, y: &Tree, bound: usize) -> Outcome<Vec<Tree>> {
        let table = self.saturate(bound);
        if !table.usable {
            return Outcome::Exhausted;
        }
        let mut found: Vec<Tree> = Vec::new();
        let start = x.carets().max(y.carets());
        for n in start..=bound {
            let ux = self.up_set(&table, x, n);
            let uy = self.up_set(&table, y, n);
            let mut common: Vec<u32> = ux.intersection(&uy).copied().collect();
            common.sort();
            for id in common {
                let z = &table.class(id)[0];
                let dominated = found.iter().any(|m| self.up_set(&table, m, n).contains(&id));
                if !dominated {
                    found.push(z.clone());
                }
            }
        }
        Outcome::Found(found)
    }
}

/// All ways to write `t = f∘g` with `f` a tree containing the root.
pub fn root_prefixes(t: &Tree) -> Vec<(Tree, Forest)> {
    fn go(code: &[u8], pos: usize) -> Vec<(Vec<u8>, Vec<(usize, usize)>)> {
        let end = subtree_end(code, pos);
        let mut out = vec![(vec![LEAF], vec![(pos, end)])];
        if code[pos] != LEAF {
            let mid = subtree_end(code, pos + 1);
            let left = go(code, pos + 1);
            let right = go(code, mid);
            for (lc, lh) in &left {
                for (rc, rh) in &right {
                    let mut c = vec![code[pos]];
                    c.extend_from_slice(lc);
                    c.extend_from_slice(rc);
                    let mut h = lh.clone();
                    h.extend_from_slice(rh);
                    out.push((c, h));
                }
            }
        }
        out
    }
    let code = t.code();
    go(code, 0)
        .into_iter()
        .map(|(c, h)| {
            let f = Tree::from_code_unchecked(c);
            let g = Forest::new(h.iter().map(|&(s, e)| Tree::from_code_unchecked(code[s..e].to_vec())).collect())
                .expect("nonempty");
            (f, g)
        })
        .collect()
}

/// All forests with `roots` roots and exactly `carets` carets over `k` colours.
pub fn all_forests(roots: usize, carets: usize, k: usize) -> Vec<Forest> {
    let mut per_size: Vec<Vec<Tree>> = Vec::new();
    for n in 0..=carets {
        per_size.push(shapes(n).iter().flat_map(|s| colourings(s, k)).collect());
    }
    let mut out = Vec::new();
    let mut current: Vec<Tree> = Vec::with_capacity(roots);
    fn rec(
        per_size: &[Vec<Tree>],
        roots: usize,
        left: usize,
        current: &mut Vec<Tree>,
        out: &mut Vec<Forest>,
    ) {
        if current.len() == roots {
            if left == 0 {
                out.push(Forest::new(current.clone()).expect("nonempty"));
            }
            return;
        }
        let last = current.len() + 1 == roots;
        for n in 0..=left {
            if last && n != left {
                continue;
            }
            for t in &per_size[n] {
                current.push(t.clone());
                rec(per_size, roots, left - n, current, out);
                current.pop();
            }
        }
    }
    rec(&per_size, roots, carets, &mut current, &mut out);
    out
}

pub fn catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_numbers() {
        assert_eq!((0..7).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn prefixes_of_a_caret() {
        let t = Tree::caret(crate::Colour(0));
        assert_eq!(root_prefixes(&t).len(), 2);
    }

    #[test]
    fn forest_enumeration_counts() {
        // two roots, two carets, one colour: (2,0),(1,1),(0,2) -> 2 + 1 + 2
        assert_eq!(all_forests(2, 2, 1).len(), 5);
    }
}
