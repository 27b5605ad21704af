//! The totally ordered set of points `[t, j]` (a tree with a distinguished
//! leaf, up to growth) and its action by fractions decorated with leaf
//! permutations.
//!
//! A point `[t, j]` equals `[t∘f, j^f]` where `j^f` is the first leaf above
//! leaf `j`. Two points are compared on a common growth of their trees.
//! A decorated element `(s, π, t)` stands for `s∘π∘t⁻¹`; `π` sends leaf `j`
//! of the denominator to leaf `π(j)` of the numerator.

use crate::context::Context;
use crate::error::{syntax, FskError, Result};
use crate::forest::{Colour, Forest, Palette, Tree};
use crate::{Outcome, Tri};
use rand::Rng;
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderedPoint {
    pub tree: Tree,
    /// 1-based.
    pub leaf: usize,
}

impl OrderedPoint {
    pub fn render(&self, palette: &Palette) -> String {
        format!("{}:{}", self.tree.render(palette), self.leaf)
    }

    /// `tree:leaf`, not normalised.
    pub fn parse(text: &str, palette: &Palette) -> Result<Self> {
        let (t, j) = text.trim().rsplit_once(':').ok_or_else(|| syntax(1, 1, "point literal must look like tree:leaf"))?;
        let tree = Tree::parse(t.trim(), palette)?;
        let leaf: usize = j.trim().parse().map_err(|_| syntax(1, t.len() + 2, "leaf index must be a number"))?;
        if leaf == 0 || leaf > tree.leaves() {
            return Err(FskError::IndexOutOfRange { index: leaf, bound: tree.leaves() });
        }
        Ok(OrderedPoint { tree, leaf })
    }
}

/// Index of the first leaf of block `j` (1-based) of `f`.
pub fn first_leaf(f: &Forest, j: usize) -> usize {
    f.trees()[..j - 1].iter().map(Tree::leaves).sum::<usize>() + 1
}

/// Whether the exposed caret with left leaf `i` may be removed from a tree
/// carrying the distinguished leaf `j`: everything except the right child.
fn collapsible(i: usize, j: usize) -> bool {
    j != i + 1
}

fn shift_after_collapse(i: usize, j: usize) -> usize {
    if j > i + 1 {
        j - 1
    } else {
        j
    }
}

/// Smallest representative of the class of `(t, j)`: remove exposed carets
/// not carrying the distinguished leaf on their right, searching the tree
/// class, then take the canonical class member.
pub fn normalize_point(ctx: &Context, t: &Tree, j: usize) -> Result<OrderedPoint> {
    if j == 0 || j > t.leaves() {
        return Err(FskError::IndexOutOfRange { index: j, bound: t.leaves() });
    }
    let (mut t, mut j) = (t.clone(), j);
    loop {
        let step = match ctx.nf_oracle.class_of(&t) {
            Some(class) => class.members.iter().find_map(|m| collapse_site(m, j).map(|(p, i)| (m.collapse(p), i))),
            None => collapse_site(&t, j).map(|(p, i)| (t.collapse(p), i)),
        };
        match step {
            Some((smaller, i)) => {
                j = shift_after_collapse(i, j);
                t = smaller;
            }
            None => {
                let tree = ctx.nf_oracle.canonical(&t).unwrap_or(t);
                return Ok(OrderedPoint { tree, leaf: j });
            }
        }
    }
}

fn collapse_site(t: &Tree, j: usize) -> Option<(usize, usize)> {
    t.exposed_carets().into_iter().find(|&(_, i)| collapsible(i, j))
}

/// Order of two points, read on a common growth of their trees.
pub fn compare(ctx: &Context, x: &OrderedPoint, y: &OrderedPoint, bound: usize) -> Option<Ordering> {
    if x == y {
        return Some(Ordering::Equal);
    }
    match ctx.common_multiple_bounded(&x.tree, &y.tree, bound) {
        Outcome::Found((p, q)) => Some(first_leaf(&p, x.leaf).cmp(&first_leaf(&q, y.leaf))),
        _ => None,
    }
}

/// Flavour of a decorated element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Flavour {
    /// Trivial permutation.
    F,
    /// Cyclic rotation.
    T,
    /// Any permutation.
    V,
}

/// Rotation amount when `perm` is `j ↦ j + r mod n`.
fn rotation(perm: &[usize]) -> Option<usize> {
    let n = perm.len();
    let r = (perm.first()? + n - 1) % n;
    perm.iter().enumerate().all(|(i, &p)| p == (i + r) % n + 1).then_some(r)
}

fn invert_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p - 1] = i + 1;
    }
    inv
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(FskError::Arity { left: perm.len(), right: n });
    }
    for &p in perm {
        if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
            return Err(FskError::Invalid(format!("{perm:?} is not a permutation of 1..={n}")));
        }
    }
    Ok(())
}

/// Push a permutation through a forest.
///
/// `tau[i]` names the root of `f` that lands at position `i`; the result is
/// `(f^τ, τ^f)` with `f^τ_i = f_{τ(i)}` and `τ^f[k]` the leaf of `f` that
/// sits under leaf `k` of `f^τ`, so that `τ∘f = f^τ∘τ^f`.
pub fn zappa_szep(tau: &[usize], f: &Forest) -> Result<(Forest, Vec<usize>)> {
    check_perm(tau, f.roots())?;
    let starts: Vec<usize> = (1..=f.roots()).map(|j| first_leaf(f, j)).collect();
    let mut trees = Vec::with_capacity(f.roots());
    let mut leaves = Vec::with_capacity(f.leaves());
    for &src in tau {
        let t = &f.trees()[src - 1];
        trees.push(t.clone());
        leaves.extend((0..t.leaves()).map(|r| starts[src - 1] + r));
    }
    Ok((Forest::new(trees)?, leaves))
}

/// Decorated fraction `s∘π∘t⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PermutationElement {
    pub numerator: Tree,
    /// `perm[j-1]` is the numerator leaf matched with denominator leaf `j`.
    pub perm: Vec<usize>,
    pub denominator: Tree,
}

impl PermutationElement {
    pub fn new(numerator: Tree, perm: Vec<usize>, denominator: Tree) -> Result<Self> {
        if numerator.leaves() != denominator.leaves() {
            return Err(FskError::LeafMismatch { lhs: numerator.leaves(), rhs: denominator.leaves() });
        }
        check_perm(&perm, numerator.leaves())?;
        Ok(PermutationElement { numerator, perm, denominator })
    }

    pub fn plain(numerator: Tree, denominator: Tree) -> Result<Self> {
        let n = denominator.leaves();
        Self::new(numerator, (1..=n).collect(), denominator)
    }

    pub fn identity() -> Self {
        PermutationElement { numerator: Tree::leaf(), perm: vec![1], denominator: Tree::leaf() }
    }

    /// `t∘ρ∘t⁻¹` with `ρ: p ↦ p + 1 mod n`.
    pub fn rotation(t: &Tree) -> Self {
        let n = t.leaves();
        PermutationElement { numerator: t.clone(), perm: (1..=n).map(|p| p % n + 1).collect(), denominator: t.clone() }
    }

    pub fn invert(&self) -> Self {
        PermutationElement {
            numerator: self.denominator.clone(),
            perm: invert_perm(&self.perm),
            denominator: self.numerator.clone(),
        }
    }

    /// Remove matched exposed carets.
    pub fn reduce(&self) -> Self {
        let mut g = self.clone();
        'outer: loop {
            let ns = g.numerator.exposed_carets();
            for (pd, i) in g.denominator.exposed_carets() {
                let m = g.perm[i - 1];
                if g.perm[i] != m + 1 {
                    continue;
                }
                let colour = g.denominator.code()[pd];
                if let Some(&(pn, _)) = ns.iter().find(|&&(pn, k)| k == m && g.numerator.code()[pn] == colour) {
                    let mut perm = g.perm.clone();
                    perm.remove(i);
                    for p in perm.iter_mut() {
                        if *p > m {
                            *p -= 1;
                        }
                    }
                    g = PermutationElement {
                        numerator: g.numerator.collapse(pn),
                        perm,
                        denominator: g.denominator.collapse(pd),
                    };
                    continue 'outer;
                }
            }
            return g;
        }
    }

    /// Flavour of the reduced representative.
    pub fn flavour(&self) -> Flavour {
        let g = self.reduce();
        match rotation(&g.perm) {
            Some(0) => Flavour::F,
            Some(_) => Flavour::T,
            None => Flavour::V,
        }
    }

    /// The same element with denominator `t∘p`.
    pub fn grow_denominator(&self, p: &Forest) -> Self {
        let (moved, leaves) = zappa_szep(&invert_perm(&self.perm), p).expect("roots match leaves");
        PermutationElement {
            numerator: self.numerator.graft(moved.trees()),
            perm: invert_perm(&leaves),
            denominator: self.denominator.graft(p.trees()),
        }
    }

    /// The same element with numerator `s∘q`.
    pub fn grow_numerator(&self, q: &Forest) -> Self {
        self.invert().grow_denominator(q).invert()
    }

    pub fn render(&self, palette: &Palette) -> String {
        let perm = match rotation(&self.perm) {
            Some(0) => "id".to_string(),
            Some(1) => format!("cyc{}", self.perm.len()),
            _ => format!("({})", self.perm.iter().map(usize::to_string).collect::<Vec<_>>().join(",")),
        };
        format!("[{} ; {} ; {}]", self.numerator.render(palette), perm, self.denominator.render(palette))
    }

    /// `[tree ; perm ; tree]` or `[tree ; tree]`; `perm` is `id`, `cycN`
    /// (`p ↦ p + 1`) or a list `(2,3,1)` of numerator leaves.
    pub fn parse(text: &str, palette: &Palette) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| syntax(1, 1, "element literal must look like [tree ; perm ; tree]"))?;
        let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
        match parts.as_slice() {
            [s, t] => Self::plain(Tree::parse(s, palette)?, Tree::parse(t, palette)?),
            [s, perm, t] => {
                let (s, t) = (Tree::parse(s, palette)?, Tree::parse(t, palette)?);
                let n = t.leaves();
                let perm = if *perm == "id" {
                    (1..=n).collect()
                } else if let Some(k) = perm.strip_prefix("cyc") {
                    if k.parse::<usize>().ok() != Some(n) {
                        return Err(syntax(1, 1, format!("`{perm}` does not match {n} leaves")));
                    }
                    (1..=n).map(|p| p % n + 1).collect()
                } else {
                    perm.trim_start_matches('(')
                        .trim_end_matches(')')
                        .split(',')
                        .map(|x| x.trim().parse::<usize>().map_err(|_| syntax(1, 1, format!("bad permutation `{perm}`"))))
                        .collect::<Result<Vec<_>>>()?
                };
                Self::new(s, perm, t)
            }
            _ => Err(syntax(1, 1, "element literal needs two or three `;`-separated parts")),
        }
    }
}

/// `g·h` for decorated elements.
pub fn multiply(ctx: &Context, g: &PermutationElement, h: &PermutationElement, bound: usize) -> Outcome<PermutationElement> {
    ctx.common_multiple_bounded(&g.denominator, &h.numerator, bound).map(|(p, q)| {
        let g = g.grow_denominator(&p);
        let h = h.grow_numerator(&q);
        let perm = h.perm.iter().map(|&m| g.perm[m - 1]).collect();
        PermutationElement { numerator: g.numerator, perm, denominator: h.denominator }.reduce()
    })
}

/// `g·[t, j]`: grow the denominator of `g` and `t` to a common tree, then read
/// the image leaf in the grown numerator.
pub fn act(ctx: &Context, g: &PermutationElement, x: &OrderedPoint, bound: usize) -> Outcome<OrderedPoint> {
    match ctx.common_multiple_bounded(&g.denominator, &x.tree, bound) {
        Outcome::Found((pg, px)) => {
            let grown = g.grow_denominator(&pg);
            let j = first_leaf(&px, x.leaf);
            Outcome::Found(normalize_point(ctx, &grown.numerator, grown.perm[j - 1]).expect("leaf in range"))
        }
        Outcome::Absent => Outcome::Absent,
        Outcome::Exhausted => Outcome::Exhausted,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FlavourEvidence {
    pub flavour: Flavour,
    pub chains: usize,
    /// Chains whose image is not increasing.
    pub order_violations: usize,
    /// Chains whose image is not a rotation of an increasing sequence.
    pub cyclic_violations: usize,
    pub unresolved: usize,
    /// No violation contradicts the exact flavour.
    pub consistent: bool,
}

/// Exact flavour plus sampled chains: the leaves of the denominator grown by
/// every forest of at most `sample_bound` carets.
pub fn flavour_check(ctx: &Context, g: &PermutationElement, sample_bound: usize, bound: usize) -> FlavourEvidence {
    let flavour = g.flavour();
    let mut ev = FlavourEvidence { flavour, chains: 0, order_violations: 0, cyclic_violations: 0, unresolved: 0, consistent: true };
    let n = g.denominator.leaves();
    for extra in 0..=sample_bound {
        for f in crate::congruence::all_forests(n, extra, ctx.p.colours()) {
            let t = g.denominator.graft(f.trees());
            let chain: Vec<OrderedPoint> =
                (1..=t.leaves()).map(|j| normalize_point(ctx, &t, j).expect("leaf in range")).collect();
            let Some(images) = chain.iter().map(|x| act(ctx, g, x, bound).found()).collect::<Option<Vec<_>>>() else {
                ev.unresolved += 1;
                continue;
            };
            ev.chains += 1;
            match chain_shape(ctx, &images, bound) {
                None => ev.unresolved += 1,
                Some((increasing, cyclic)) => {
                    ev.order_violations += usize::from(!increasing);
                    ev.cyclic_violations += usize::from(!cyclic);
                }
            }
        }
    }
    ev.consistent = match flavour {
        Flavour::F => ev.order_violations == 0,
        Flavour::T => ev.cyclic_violations == 0,
        Flavour::V => true,
    };
    ev
}

/// Whether `xs` is increasing, and whether some rotation of it is.
fn chain_shape(ctx: &Context, xs: &[OrderedPoint], bound: usize) -> Option<(bool, bool)> {
    let n = xs.len();
    let mut descents = 0;
    for i in 0..n {
        let next = &xs[(i + 1) % n];
        match compare(ctx, &xs[i], next, bound)? {
            Ordering::Less => {}
            Ordering::Equal => return Some((false, false)),
            Ordering::Greater => descents += 1,
        }
    }
    // cyclically increasing sequences descend exactly once (at the wrap)
    let last_wraps = n < 2 || compare(ctx, &xs[n - 1], &xs[0], bound)? == Ordering::Greater;
    Some((descents <= 1 && last_wraps, descents <= 1))
}

/// Grow the points of a set to one tree; returns the tree and the sorted
/// leaf indices.
pub fn co_represent(ctx: &Context, points: &[OrderedPoint], bound: usize) -> Outcome<(Tree, Vec<usize>)> {
    let Some(first) = points.first() else { return Outcome::Absent };
    let mut tree = first.tree.clone();
    let mut leaves = vec![first.leaf];
    for x in &points[1..] {
        match ctx.common_multiple_bounded(&tree, &x.tree, bound) {
            Outcome::Found((p, q)) => {
                for j in leaves.iter_mut() {
                    *j = first_leaf(&p, *j);
                }
                leaves.push(first_leaf(&q, x.leaf));
                tree = tree.graft(p.trees());
            }
            Outcome::Absent => return Outcome::Absent,
            Outcome::Exhausted => return Outcome::Exhausted,
        }
    }
    leaves.sort_unstable();
    leaves.dedup();
    Outcome::Found((tree, leaves))
}

/// Cyclic gaps between consecutive marked leaves; the last gap wraps around.
fn gaps(n: usize, marks: &[usize]) -> Vec<usize> {
    let k = marks.len();
    (0..k).map(|i| if i + 1 < k { marks[i + 1] - marks[i] } else { n - marks[i] + marks[0] }).collect()
}

/// Attach carets of colour `c` at each mark until the gaps reach `target`.
fn pad(tree: &Tree, marks: &[usize], target: &[usize], c: Colour) -> (Tree, Vec<usize>) {
    let (mut t, mut marks) = (tree.clone(), marks.to_vec());
    let k = marks.len();
    for i in 0..k {
        let mut have = gaps(t.leaves(), &marks)[i];
        while have < target[i] {
            // the caret goes on the mark itself, which stays its first leaf
            t = t.attach(c, marks[i]).expect("mark is a leaf");
            for m in marks.iter_mut().skip(i + 1) {
                *m += 1;
            }
            have += 1;
        }
    }
    (t, marks)
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitivityWitness {
    pub element: PermutationElement,
    pub verified: Tri,
}

/// A cyclic element mapping the k-set `a` onto `b`: co-represent each set,
/// pad the cyclic gaps to equal sizes, and rotate the first mark of `a` onto
/// the first mark of `b`. Verified by `act`.
pub fn transitivity_witness(
    ctx: &Context,
    a: &[OrderedPoint],
    b: &[OrderedPoint],
    bound: usize,
) -> Result<Outcome<TransitivityWitness>> {
    if a.is_empty() || a.len() != b.len() {
        return Err(FskError::Invalid(format!("sets of sizes {} and {}", a.len(), b.len())));
    }
    let (Outcome::Found((ta, ma)), Outcome::Found((tb, mb))) =
        (co_represent(ctx, a, bound), co_represent(ctx, b, bound))
    else {
        return Ok(Outcome::Exhausted);
    };
    if ma.len() != a.len() || mb.len() != b.len() {
        return Err(FskError::Invalid("sets contain repeated points".into()));
    }
    let target: Vec<usize> =
        gaps(ta.leaves(), &ma).into_iter().zip(gaps(tb.leaves(), &mb)).map(|(x, y)| x.max(y)).collect();
    let c = Colour(0);
    let (t, ma) = pad(&ta, &ma, &target, c);
    let (s, mb) = pad(&tb, &mb, &target, c);
    let n = t.leaves();
    let perm = (1..=n).map(|j| (j + n - ma[0] + mb[0] - 1) % n + 1).collect();
    let element = PermutationElement::new(s, perm, t)?;
    let verified = verify_maps(ctx, &element, a, b, bound);
    Ok(Outcome::Found(TransitivityWitness { element, verified }))
}

/// Whether `g` maps the set `a` onto the set `b`.
pub fn verify_maps(ctx: &Context, g: &PermutationElement, a: &[OrderedPoint], b: &[OrderedPoint], bound: usize) -> Tri {
    let mut targets: Vec<OrderedPoint> = Vec::new();
    for y in b {
        match normalize_point(ctx, &y.tree, y.leaf) {
            Ok(p) => targets.push(p),
            Err(_) => return Tri::No,
        }
    }
    let mut out = Tri::Yes;
    for x in a {
        let Some(img) = act(ctx, g, x, bound).found() else {
            out = Tri::Unknown;
            continue;
        };
        if targets.contains(&img) {
            continue;
        }
        let mut hit = Tri::No;
        for y in &targets {
            match compare(ctx, &img, y, bound) {
                Some(Ordering::Equal) => {
                    hit = Tri::Yes;
                    break;
                }
                None => hit = Tri::Unknown,
                _ => {}
            }
        }
        match hit {
            Tri::No => return Tri::No,
            Tri::Unknown => out = Tri::Unknown,
            Tri::Yes => {}
        }
    }
    out
}

/// Stabiliser of the k-set `{[t, p] : 1 ≤ p ≤ k}` on a k-leaf tree `t`: the
/// fixers `(t∘f)(t∘h)⁻¹` with `f_j`, `h_j` of equal leaf counts, and the
/// rotation `t∘ρ∘t⁻¹`.
#[derive(Debug, Clone, Serialize)]
pub struct Stabilizer {
    pub tree: Tree,
    pub rotation: PermutationElement,
}

impl Stabilizer {
    pub fn new(t: &Tree) -> Self {
        Stabilizer { tree: t.clone(), rotation: PermutationElement::rotation(t) }
    }

    pub fn points(&self) -> Vec<OrderedPoint> {
        (1..=self.tree.leaves()).map(|p| OrderedPoint { tree: self.tree.clone(), leaf: p }).collect()
    }

    /// The fixer `(t∘f)(t∘h)⁻¹`; rejects unequal leaf profiles.
    pub fn fixer(&self, f: &Forest, h: &Forest) -> Result<PermutationElement> {
        let k = self.tree.leaves();
        if f.roots() != k || h.roots() != k {
            return Err(FskError::Arity { left: k, right: f.roots().max(h.roots()) });
        }
        if f.trees().iter().zip(h.trees()).any(|(x, y)| x.leaves() != y.leaves()) {
            return Err(FskError::Invalid("fixer forests need equal leaf counts on every tree".into()));
        }
        PermutationElement::plain(self.tree.graft(f.trees()), self.tree.graft(h.trees()))
    }

    /// Random fixer with trees of at most `max_carets` carets each.
    pub fn sample_fixer<R: Rng>(&self, rng: &mut R, max_carets: usize, colours: usize) -> PermutationElement {
        let k = self.tree.leaves();
        let mut fs = Vec::with_capacity(k);
        let mut hs = Vec::with_capacity(k);
        for _ in 0..k {
            let n = rng.gen_range(0..=max_carets);
            fs.push(random_tree(rng, n, colours));
            hs.push(random_tree(rng, n, colours));
        }
        self.fixer(&Forest::new(fs).expect("k roots"), &Forest::new(hs).expect("k roots")).expect("equal profiles")
    }
}

/// Tree with `carets` carets, built by attaching at uniformly chosen leaves.
pub fn random_tree<R: Rng>(rng: &mut R, carets: usize, colours: usize) -> Tree {
    let mut t = Tree::leaf();
    for _ in 0..carets {
        let c = Colour(rng.gen_range(0..colours) as u8);
        let i = rng.gen_range(1..=t.leaves());
        t = t.attach(c, i).expect("leaf in range");
    }
    t
}

/// Random point on a tree of at most `max_carets` carets.
pub fn random_point<R: Rng>(rng: &mut R, max_carets: usize, colours: usize) -> OrderedPoint {
    let carets = rng.gen_range(0..=max_carets);
    let t = random_tree(rng, carets, colours);
    let leaf = rng.gen_range(1..=t.leaves());
    OrderedPoint { tree: t, leaf }
}
