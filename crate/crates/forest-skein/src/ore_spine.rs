//! Ore certificates, spines, finiteness certificates and the constructor of
//! presentations from one monochromatic tree per colour.

use crate::congruence::OreReport;
use crate::context::{Context, Strategy};
use crate::error::{FskError, Result};
use crate::forest::{all_trees, Colour, Palette, Tree};
use crate::presentation::{Relation, SkeinPresentation};
use crate::reversing::{decide_left_cancellative, ore_via_closed_family, LcReport};
use crate::{Confidence, Outcome, Tri};
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub const DEFAULT_ITERATE_DEPTH: usize = 3;
pub const DEFAULT_STAGE_BOUND: usize = 8;
pub const DEFAULT_CARET_BOUND: usize = 16;
pub const DEFAULT_COFINAL_BOUND: usize = 3;
pub const DEFAULT_LC_BOUND: usize = 3;
/// Largest stratum the oracle saturates for bounded mcm.
const ORACLE_STRATUM_LIMIT: u128 = 60_000;

/// Uniform JSON shape of every certificate.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub property: String,
    pub verdict: Tri,
    pub kind: String,
    pub confidence: Confidence,
    pub witness: Value,
    pub bounds: BTreeMap<String, usize>,
    pub theorem_citation: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OreKind {
    ClosedFamily,
    CofinalMonochromatic,
    BoundedEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OreStrategy {
    Auto,
    ClosedFamily,
    Absorption,
    Evidence,
}

/// A certificate that the Ore property holds.
#[derive(Debug, Clone)]
pub struct OreCertificate {
    pub kind: OreKind,
    pub confidence: Confidence,
    /// Base tree whose iterates are cofinal.
    pub base: Option<Tree>,
    pub depth: usize,
    pub bound: usize,
    /// Trees checked during the bounded replay.
    pub checked: usize,
    pub unresolved: usize,
    pub evidence: Option<OreReport>,
}

impl OreCertificate {
    /// Re-run the witnessing computation.
    pub fn verify(&self, ctx: &Context) -> bool {
        match self.kind {
            OreKind::ClosedFamily => ore_via_closed_family(&ctx.p) == Tri::Yes,
            OreKind::CofinalMonochromatic => match &self.base {
                Some(t) => verify_absorption(ctx, t, self.depth, self.bound).failures.is_empty(),
                None => false,
            },
            OreKind::BoundedEvidence => {
                let r = ctx.oracle.check_ore_bounded(self.bound.min(2), self.bound);
                r.usable && r.failures.is_empty()
            }
        }
    }

    pub fn to_certificate(&self, palette: &Palette) -> Certificate {
        let mut bounds = BTreeMap::new();
        let witness = match self.kind {
            OreKind::ClosedFamily => json!({"family": "trees of length-two relations"}),
            OreKind::CofinalMonochromatic => {
                bounds.insert("iterate_depth".into(), self.depth);
                bounds.insert("replay_carets".into(), self.bound);
                json!({
                    "base_tree": self.base.as_ref().map(|t| t.render(palette)),
                    "checked": self.checked,
                    "unresolved": self.unresolved,
                })
            }
            OreKind::BoundedEvidence => {
                let r = self.evidence.as_ref();
                bounds.insert("pair_carets".into(), r.map_or(0, |r| r.pair_bound));
                bounds.insert("search_carets".into(), self.bound);
                json!({"pairs_checked": r.map_or(0, |r| r.pairs_checked)})
            }
        };
        let citation = match (self.kind, self.confidence) {
            (OreKind::ClosedFamily, _) => Some("closed family of trees implies Ore".into()),
            (OreKind::CofinalMonochromatic, Confidence::Proved) => {
                Some("iterates of a monochromatic tree are cofinal".into())
            }
            _ => None,
        };
        Certificate {
            property: "ore".into(),
            verdict: Tri::Yes,
            kind: serde_json::to_value(self.kind).unwrap().as_str().unwrap().to_string(),
            confidence: self.confidence,
            witness,
            bounds,
            theorem_citation: citation,
        }
    }
}

/// A pair of trees without common multiple.
#[derive(Debug, Clone)]
pub struct OreRefutation {
    pub pair: (Tree, Tree),
    pub method: &'static str,
    pub confidence: Confidence,
}

/// Outcome of the Ore pipeline.
#[derive(Debug, Clone)]
pub struct OreDecision {
    pub verdict: Confidence,
    pub certificate: Option<OreCertificate>,
    pub refutation: Option<OreRefutation>,
}

impl OreDecision {
    pub fn to_certificate(&self, palette: &Palette) -> Certificate {
        if let Some(c) = &self.certificate {
            let mut out = c.to_certificate(palette);
            if self.verdict == Confidence::Evidence {
                out.confidence = Confidence::Evidence;
            }
            return out;
        }
        let mut bounds = BTreeMap::new();
        let (verdict, kind, witness) = match &self.refutation {
            Some(r) => (
                Tri::No,
                r.method.to_string(),
                json!({"pair": [r.pair.0.render(palette), r.pair.1.render(palette)]}),
            ),
            None => (Tri::Unknown, "none".to_string(), Value::Null),
        };
        if matches!(&self.refutation, Some(r) if r.method == "bounded_search") {
            bounds.insert("search_carets".into(), DEFAULT_COFINAL_BOUND + 3);
        }
        let citation = matches!(&self.refutation, Some(r) if r.method == "blocked_reversal")
            .then(|| "complete presentations: blocked reversing means no common multiple".to_string());
        Certificate {
            property: "ore".into(),
            verdict,
            kind,
            confidence: self.verdict,
            witness,
            bounds,
            theorem_citation: citation,
        }
    }
}

/// The monochromatic tree of each colour, when every relation equates two
/// monochromatic trees of distinct colours, each colour always uses the same
/// tree, and the relations connect all colours.
pub fn recognise_f_tau(p: &SkeinPresentation) -> Option<Vec<Tree>> {
    let k = p.colours();
    if p.relations.is_empty() {
        return None;
    }
    let mut tau: Vec<Option<Tree>> = vec![None; k];
    let mut uf: Vec<usize> = (0..k).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        uf[x] = r;
        r
    }
    for r in &p.relations {
        let (x, y) = (r.lhs.root_colour()?, r.rhs.root_colour()?);
        if x == y || !r.lhs.is_monochromatic(x) || !r.rhs.is_monochromatic(y) {
            return None;
        }
        for (c, t) in [(x, &r.lhs), (y, &r.rhs)] {
            match &tau[c.index()] {
                Some(old) if old != t => return None,
                Some(_) => {}
                None => tau[c.index()] = Some(t.clone()),
            }
        }
        let (a, b) = (find(&mut uf, x.index()), find(&mut uf, y.index()));
        uf[a] = b;
    }
    let root = find(&mut uf, 0);
    if (0..k).any(|c| find(&mut uf, c) != root) {
        return None;
    }
    tau.into_iter().collect()
}

/// `t` grafted onto every leaf of itself, `depth − 1` times.
pub fn iterate(t: &Tree, depth: usize) -> Tree {
    let mut out = t.clone();
    for _ in 1..depth {
        let tops = vec![t.clone(); out.leaves()];
        out = out.graft(&tops);
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct AbsorptionReplay {
    pub checked: usize,
    pub unresolved: usize,
    pub failures: Vec<Tree>,
}

/// Check that every tree with at most `bound` carets lies below some iterate
/// of `t` of depth at most `depth`.
pub fn verify_absorption(ctx: &Context, t: &Tree, depth: usize, bound: usize) -> AbsorptionReplay {
    let mut iterates: Vec<Tree> = (1..=depth).map(|d| iterate(t, d)).collect();
    if ctx.strategy == Strategy::Oracle {
        // class enumeration of large iterates is out of reach
        iterates.retain(|z| z.carets() <= ctx.oracle.caret_budget);
    }
    let mut out = AbsorptionReplay::default();
    for n in 0..=bound {
        for s in all_trees(n, ctx.p.colours()) {
            out.checked += 1;
            let mut unresolved = false;
            let mut found = false;
            for z in &iterates {
                match ctx.tree_leq(&s, z) {
                    Outcome::Found(_) => {
                        found = true;
                        break;
                    }
                    Outcome::Exhausted => unresolved = true,
                    Outcome::Absent => {}
                }
            }
            if !found {
                if unresolved {
                    out.unresolved += 1;
                } else {
                    out.failures.push(s);
                }
            }
        }
    }
    out
}

/// Certify Ore by the requested strategy; `Auto` tries closed families, then
/// monochromatic absorption, then bounded evidence.
pub fn cofinal_search(ctx: &Context, strategy: OreStrategy, bound: usize) -> Option<OreCertificate> {
    let closed = || {
        (ore_via_closed_family(&ctx.p) == Tri::Yes).then_some(OreCertificate {
            kind: OreKind::ClosedFamily,
            confidence: Confidence::Proved,
            base: None,
            depth: 0,
            bound: 0,
            checked: 0,
            unresolved: 0,
            evidence: None,
        })
    };
    let evidence = || {
        let search = bound + 3;
        let r = ctx.oracle.check_ore_bounded(bound.min(2), search);
        (r.usable && r.failures.is_empty()).then(|| OreCertificate {
            kind: OreKind::BoundedEvidence,
            confidence: Confidence::Evidence,
            base: None,
            depth: 0,
            bound: search,
            checked: r.pairs_checked,
            unresolved: 0,
            evidence: Some(r),
        })
    };
    match strategy {
        OreStrategy::ClosedFamily => closed(),
        OreStrategy::Absorption => absorption(ctx, bound),
        OreStrategy::Evidence => evidence(),
        OreStrategy::Auto => closed().or_else(|| absorption(ctx, bound)).or_else(evidence),
    }
}

fn absorption(ctx: &Context, bound: usize) -> Option<OreCertificate> {
    let depth = DEFAULT_ITERATE_DEPTH;
    let (candidates, proved) = match recognise_f_tau(&ctx.p) {
        Some(tau) => (vec![tau[0].clone()], true),
        None => {
            let mut c: Vec<Tree> = Vec::new();
            for r in &ctx.p.relations {
                for t in [&r.lhs, &r.rhs] {
                    if !c.contains(t) {
                        c.push(t.clone());
                    }
                }
            }
            (c, false)
        }
    };
    for t in candidates {
        let absorbs_colours = ctx
            .p
            .palette
            .colours()
            .all(|c| matches!(ctx.tree_leq(&Tree::caret(c), &t), Outcome::Found(_)));
        if !absorbs_colours {
            continue;
        }
        let replay = verify_absorption(ctx, &t, depth, bound);
        if replay.failures.is_empty() {
            return Some(OreCertificate {
                kind: OreKind::CofinalMonochromatic,
                confidence: if proved { Confidence::Proved } else { Confidence::Evidence },
                base: Some(t),
                depth,
                bound,
                checked: replay.checked,
                unresolved: replay.unresolved,
                evidence: None,
            });
        }
    }
    None
}

/// Full Ore pipeline: certificates first, then refutation of a pair of
/// one-caret trees.
pub fn decide_ore(ctx: &Context, bound: usize) -> OreDecision {
    if let Some(c) = cofinal_search(ctx, OreStrategy::ClosedFamily, bound)
        .or_else(|| cofinal_search(ctx, OreStrategy::Absorption, bound))
    {
        return OreDecision { verdict: c.confidence, certificate: Some(c), refutation: None };
    }
    if ctx.strategy != Strategy::Oracle {
        let k = ctx.p.colours();
        for x in 0..k {
            for y in x + 1..k {
                let (tx, ty) = (Tree::caret(Colour(x as u8)), Tree::caret(Colour(y as u8)));
                if ctx.common_multiple(&tx, &ty) == Outcome::Absent {
                    return OreDecision {
                        verdict: Confidence::Refuted,
                        certificate: None,
                        refutation: Some(OreRefutation {
                            pair: (tx, ty),
                            method: "blocked_reversal",
                            confidence: Confidence::Proved,
                        }),
                    };
                }
            }
        }
    }
    let search = bound + 3;
    let r = ctx.oracle.check_ore_bounded(bound.min(2), search);
    if !r.usable {
        return OreDecision { verdict: Confidence::Unknown, certificate: None, refutation: None };
    }
    match r.failures.first() {
        Some((s, t)) => OreDecision {
            verdict: Confidence::Unknown,
            certificate: None,
            refutation: Some(OreRefutation {
                pair: (s.clone(), t.clone()),
                method: "bounded_search",
                confidence: Confidence::Evidence,
            }),
        },
        None => OreDecision {
            verdict: Confidence::Evidence,
            certificate: Some(OreCertificate {
                kind: OreKind::BoundedEvidence,
                confidence: Confidence::Evidence,
                base: None,
                depth: 0,
                bound: search,
                checked: r.pairs_checked,
                unresolved: 0,
                evidence: Some(r),
            }),
            refutation: None,
        },
    }
}

/// Left-cancellativity, adding the monochromatic-tree theorem to the
/// reversing and oracle routes.
pub fn decide_lc(ctx: &Context, oracle_bound: usize) -> LcReport {
    let r = decide_left_cancellative(&ctx.p, &ctx.rev, &ctx.completeness, &ctx.oracle, oracle_bound);
    if r.verdict != Tri::Yes && recognise_f_tau(&ctx.p).is_some() {
        return LcReport { verdict: Tri::Yes, branch: "monochromatic_trees", counterexample: None, oracle_bound };
    }
    r
}

pub fn lc_certificate(r: &LcReport, palette: &Palette) -> Certificate {
    let mut bounds = BTreeMap::new();
    bounds.insert("oracle_carets".into(), r.oracle_bound);
    let witness = match &r.counterexample {
        Some(c) => json!({"f": c.f.render(palette), "g": c.g.render(palette), "h": c.h.render(palette)}),
        None => Value::Null,
    };
    let confidence = match r.verdict {
        Tri::Yes => Confidence::Proved,
        Tri::No => Confidence::Refuted,
        Tri::Unknown => Confidence::Unknown,
    };
    let citation = match r.branch {
        "complete_distinct_starts" | "complete_same_letter_checked" => {
            Some("complete presentations: cancellativity read off the relations".into())
        }
        "monochromatic_trees" => Some("categories of one monochromatic tree per colour are left-cancellative".into()),
        _ => None,
    };
    Certificate {
        property: "left_cancellative".into(),
        verdict: r.verdict,
        kind: r.branch.into(),
        confidence,
        witness,
        bounds,
        theorem_citation: citation,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpineReport {
    /// Class representatives of each stage.
    pub stages: Vec<Vec<Tree>>,
    pub stabilized: bool,
    pub bound_used: usize,
    pub stage_bound: usize,
    /// Distinct classes over all stages.
    pub spine: Vec<Tree>,
    /// Why iteration stopped without stabilizing.
    pub halted: Option<String>,
    pub lc: Tri,
}

impl SpineReport {
    pub fn to_json(&self, palette: &Palette) -> Value {
        let r = |ts: &[Tree]| ts.iter().map(|t| t.render(palette)).collect::<Vec<_>>();
        json!({
            "stages": self.stages.iter().map(|s| r(s)).collect::<Vec<_>>(),
            "stabilized": self.stabilized,
            "spine": r(&self.spine),
            "spine_size": self.spine.len(),
            "bounds": {"carets": self.bound_used, "stages": self.stage_bound},
            "halted": self.halted,
            "lc": self.lc,
        })
    }
}

/// Minimal common multiples of `x` and `y`, as class representatives.
fn mcm(ctx: &Context, x: &Tree, y: &Tree, caret_bound: usize) -> Outcome<Vec<Tree>> {
    match ctx.strategy {
        Strategy::Reversing => match ctx.common_multiple(x, y) {
            Outcome::Found((p, _)) => Outcome::Found(vec![x.graft(p.trees())]),
            Outcome::Absent => Outcome::Found(vec![]),
            Outcome::Exhausted => Outcome::Exhausted,
        },
        Strategy::BranchReversing => {
            let all = match ctx.rev.all_common_multiples(x, y) {
                Outcome::Found(v) => v,
                Outcome::Absent => return Outcome::Found(vec![]),
                Outcome::Exhausted => return Outcome::Exhausted,
            };
            let mut distinct: Vec<Tree> = Vec::new();
            for (z, _) in all {
                if !distinct.iter().any(|d| ctx.trees_equal(d, &z) == Tri::Yes) {
                    distinct.push(z);
                }
            }
            let minimal = distinct
                .iter()
                .filter(|z| {
                    !distinct.iter().any(|w| {
                        w.carets() < z.carets() && matches!(ctx.tree_leq(w, z), Outcome::Found(_))
                    })
                })
                .cloned()
                .collect();
            Outcome::Found(minimal)
        }
        Strategy::Oracle => {
            let mut b = caret_bound;
            while b > 0 && ctx.oracle.stratum_size(b) > ORACLE_STRATUM_LIMIT {
                b -= 1;
            }
            ctx.oracle.mcm_bounded(x, y, b)
        }
    }
}

/// Iterate `Sp_{n+1} = ⋃ mcm(x, y)` over distinct pairs of `Sp_n`.
pub fn spine(ctx: &Context, caret_bound: usize, stage_bound: usize) -> SpineReport {
    let lc = decide_lc(ctx, DEFAULT_LC_BOUND).verdict;
    let mut stage: Vec<Tree> = Vec::new();
    for c in ctx.p.palette.colours() {
        let t = Tree::caret(c);
        if !stage.iter().any(|s| ctx.trees_equal(s, &t) == Tri::Yes) {
            stage.push(t);
        }
    }
    let mut report = SpineReport {
        stages: vec![stage.clone()],
        stabilized: false,
        bound_used: caret_bound,
        stage_bound,
        spine: stage.clone(),
        halted: None,
        lc,
    };
    let same_set = |a: &[Tree], b: &[Tree]| {
        a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| ctx.trees_equal(x, y) == Tri::Yes))
    };
    for _ in 0..stage_bound {
        let mut next: Vec<Tree> = Vec::new();
        for i in 0..stage.len() {
            for j in i + 1..stage.len() {
                let found = match mcm(ctx, &stage[i], &stage[j], caret_bound) {
                    Outcome::Found(v) => v,
                    _ => {
                        report.halted = Some("mcm_unresolved".into());
                        return report;
                    }
                };
                for z in found {
                    if z.carets() > caret_bound {
                        report.halted = Some("caret_bound".into());
                        return report;
                    }
                    if !next.iter().any(|s| ctx.trees_equal(s, &z) == Tri::Yes) {
                        next.push(z);
                    }
                }
            }
        }
        next.sort_by_key(crate::forest::canonical_key);
        let repeats = next.is_empty() || report.stages.iter().any(|s| same_set(s, &next));
        for z in &next {
            if !report.spine.iter().any(|s| ctx.trees_equal(s, z) == Tri::Yes) {
                report.spine.push(z.clone());
            }
        }
        report.stages.push(next.clone());
        if repeats {
            report.stabilized = true;
            return report;
        }
        stage = next;
    }
    report.halted = Some("stage_bound".into());
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct FInfinityCertificate {
    pub spine_size: usize,
    pub ore_kind: OreKind,
    pub lc_branch: String,
    /// Group versions the conclusion applies to.
    pub covers: Vec<&'static str>,
    pub theorem_citation: &'static str,
}

impl FInfinityCertificate {
    pub fn to_certificate(&self) -> Certificate {
        Certificate {
            property: "f_infinity".into(),
            verdict: Tri::Yes,
            kind: "finite_spine".into(),
            confidence: Confidence::Proved,
            witness: json!({
                "spine_size": self.spine_size,
                "ore_kind": self.ore_kind,
                "lc_branch": self.lc_branch,
                "covers": self.covers,
            }),
            bounds: BTreeMap::new(),
            theorem_citation: Some(self.theorem_citation.into()),
        }
    }
}

/// Issued when Ore is certified without bounded evidence, left cancellation
/// is proved, and the spine stabilized.
pub fn f_infinity_certificate(
    ore: &OreDecision,
    lc: &LcReport,
    spine: &SpineReport,
) -> Option<FInfinityCertificate> {
    let c = ore.certificate.as_ref()?;
    if c.kind == OreKind::BoundedEvidence || c.confidence != Confidence::Proved {
        return None;
    }
    if lc.verdict != Tri::Yes || !spine.stabilized {
        return None;
    }
    Some(FInfinityCertificate {
        spine_size: spine.spine.len(),
        ore_kind: c.kind,
        lc_branch: lc.branch.to_string(),
        covers: vec!["F", "T", "V", "BV"],
        theorem_citation: "finite spine in an Ore left-cancellative forest category implies type F-infinity",
    })
}

/// A presentation built from one tree per colour, with its certificates.
#[derive(Debug, Clone)]
pub struct FTau {
    pub presentation: SkeinPresentation,
    pub certificates: Vec<Certificate>,
    /// Expected spine size: distinct colour classes plus one, or one for
    /// two-leaf trees.
    pub expected_spine: usize,
    /// Bounded replay of the certificates succeeded.
    pub replayed: bool,
}

/// Relations `(C_a(τ_a), C_b(τ_b))` pairing the first colour with every
/// other, or every pair of colours when `all_pairs` is set.
pub fn f_tau_presentation(tau: &[(String, Tree)], all_pairs: bool) -> Result<SkeinPresentation> {
    if tau.is_empty() {
        return Err(FskError::Invalid("at least one colour is required".into()));
    }
    let names: Vec<&str> = tau.iter().map(|(n, _)| n.as_str()).collect();
    let palette = Palette::new(&names)?;
    let leaves = tau[0].1.leaves();
    for (n, t) in tau {
        if t.is_leaf() {
            return Err(FskError::Invalid(format!("tree for colour {n} is trivial")));
        }
        if t.leaves() != leaves {
            return Err(FskError::LeafMismatch { lhs: leaves, rhs: t.leaves() });
        }
    }
    let coloured: Vec<Tree> = (0..tau.len()).map(|i| tau[i].1.recolour(Colour(i as u8))).collect();
    let mut rels = Vec::new();
    for x in 0..tau.len() {
        for y in x + 1..tau.len() {
            if x == 0 || all_pairs {
                rels.push(Relation { lhs: coloured[x].clone(), rhs: coloured[y].clone() });
            }
        }
    }
    SkeinPresentation::new(Some("f_tau".into()), palette, rels)
}

/// Build the presentation and attach theorem-backed certificates, replaying
/// each at small bounds.
pub fn build_f_tau(tau: &[(String, Tree)]) -> Result<FTau> {
    let presentation = f_tau_presentation(tau, false)?;
    let ctx = Context::new(&presentation);
    let two_leaves = tau[0].1.leaves() == 2;
    let expected_spine = if two_leaves || tau.len() == 1 { 1 } else { tau.len() + 1 };
    let lc = decide_lc(&ctx, DEFAULT_LC_BOUND);
    let ore = decide_ore(&ctx, DEFAULT_COFINAL_BOUND);
    let sp = spine(&ctx, DEFAULT_CARET_BOUND, DEFAULT_STAGE_BOUND);
    let replayed = lc.verdict == Tri::Yes
        && ore.certificate.as_ref().is_some_and(|c| c.verify(&ctx))
        && sp.stabilized
        && sp.spine.len() == expected_spine;
    let mut certificates = vec![lc_certificate(&lc, &presentation.palette), ore.to_certificate(&presentation.palette)];
    certificates.push(Certificate {
        property: "spine".into(),
        verdict: Tri::from_bool(sp.stabilized),
        kind: "finite_spine".into(),
        confidence: if sp.stabilized { Confidence::Proved } else { Confidence::Unknown },
        witness: sp.to_json(&presentation.palette),
        bounds: BTreeMap::from([("carets".into(), DEFAULT_CARET_BOUND), ("stages".into(), DEFAULT_STAGE_BOUND)]),
        theorem_citation: Some("spine of one monochromatic tree per colour has one class per colour plus one".into()),
    });
    if let Some(f) = f_infinity_certificate(&ore, &lc, &sp) {
        certificates.push(f.to_certificate());
    }
    Ok(FTau { presentation, certificates, expected_spine, replayed })
}
