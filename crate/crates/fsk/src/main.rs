//! `fsk`: command line front-end for forest-skein presentations.

use clap::{Args, Parser, Subcommand, ValueEnum};
use forest_skein::context::Context;
use forest_skein::fraction::{self, GroupElement, NormalForm};
use forest_skein::group_presentation::{
    abelianization, f_tau_optimized, finite_presentation, infinite_presentation, monoid_presentation,
    GroupPresentation,
};
use forest_skein::ordered::{self, OrderedPoint, PermutationElement, Stabilizer};
use forest_skein::ore_spine::{self, Certificate};
use forest_skein::{corpus, Colour, Confidence, Outcome, SkeinPresentation, Tree, Tri};
use rand::SeedableRng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "fsk", version, about = "Forest-skein categories and their fraction groups")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 3 when a checked property is refuted.
    #[arg(long, global = true)]
    expect: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify structural properties of a presentation.
    Check(CheckArgs),
    /// Iterate minimal common multiples of the one-caret trees.
    Spine(SpineArgs),
    /// Emit a group presentation of the fraction group.
    Present(PresentArgs),
    /// Evaluate a group word or fraction literal.
    Eval(EvalArgs),
    /// Work with the ordered set of tree/leaf points.
    Qspace(QspaceArgs),
    /// The built-in example corpus.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// A `.fsk` file or the name of a built-in example.
    input: String,
    #[arg(long)]
    lc: bool,
    #[arg(long)]
    complete: bool,
    #[arg(long)]
    complemented: bool,
    #[arg(long)]
    ore: bool,
    /// Colouring generating property at every colour.
    #[arg(long)]
    cgp: bool,
    /// Caret bound of the left-cancellation counterexample search.
    #[arg(long, default_value_t = ore_spine::DEFAULT_LC_BOUND)]
    lc_bound: usize,
    /// Caret bound of the Ore searches.
    #[arg(long, default_value_t = ore_spine::DEFAULT_COFINAL_BOUND)]
    ore_bound: usize,
    /// Caret bound of fraction arithmetic.
    #[arg(long, default_value_t = 14)]
    bound: usize,
}

#[derive(Args)]
struct SpineArgs {
    input: String,
    #[arg(long, default_value_t = ore_spine::DEFAULT_CARET_BOUND)]
    max_carets: usize,
    #[arg(long, default_value_t = ore_spine::DEFAULT_STAGE_BOUND)]
    max_stages: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Cas,
}

#[derive(Args)]
struct PresentArgs {
    input: String,
    #[arg(long, group = "mode")]
    finite: bool,
    #[arg(long, group = "mode")]
    infinite: bool,
    /// Relations of the monoid only; implies `--infinite`.
    #[arg(long)]
    monoid: bool,
    /// Finite presentation specialised to one monochromatic tree per colour.
    #[arg(long, group = "mode", conflicts_with = "monoid")]
    f_tau: bool,
    #[arg(long, default_value_t = 3)]
    max_index: usize,
    /// Colour of the base vine; defaults to the first colour.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print the abelianization.
    #[arg(long)]
    abelian: bool,
}

#[derive(Args)]
struct EvalArgs {
    input: String,
    /// Group word such as `a1 b2^-1 ~b1`, or `[tree ; tree]`.
    expr: String,
    /// `eq <expr>` compares with a second expression.
    rest: Vec<String>,
    #[arg(long, default_value_t = 14)]
    bound: usize,
    #[arg(long)]
    base: Option<String>,
}

#[derive(Args)]
struct QspaceArgs {
    input: String,
    #[command(subcommand)]
    action: QspaceAction,
    #[arg(long, default_value_t = 16, global = true)]
    bound: usize,
}

#[derive(Subcommand)]
enum QspaceAction {
    /// Compare two points `tree:leaf`.
    Compare { x: String, y: String },
    /// Act by `[tree ; perm ; tree]` on a point.
    Act { element: String, point: String },
    /// Random transitivity witnesses on k-sets.
    Transitivity {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        max_carets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rotation and sampled fixers of the leaves of a tree.
    Stabilizer {
        tree: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    Emit { name: String },
    /// Presentation from one tree per colour, e.g. `a=a(a(I,I),I) b=b(I,b(I,I))`.
    FTau { trees: Vec<String> },
}

/// Error carrying the process exit status.
struct Failure(u8, String);

impl From<forest_skein::FskError> for Failure {
    fn from(e: forest_skein::FskError) -> Self {
        Failure(2, e.to_string())
    }
}

struct Report {
    command: &'static str,
    presentation: Option<Value>,
    bounds: BTreeMap<&'static str, usize>,
    verdicts: Vec<Certificate>,
    results: Value,
    text: String,
}

impl Report {
    fn new(command: &'static str, p: Option<&SkeinPresentation>) -> Self {
        Report {
            command,
            presentation: p.map(|p| json!({"name": p.label(), "hash": p.hash_hex()})),
            bounds: BTreeMap::new(),
            verdicts: vec![],
            results: Value::Null,
            text: String::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn refuted(&self) -> bool {
        self.verdicts.iter().any(|c| c.confidence == Confidence::Refuted)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(r) => {
            if cli.json {
                let out = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": r.command,
                    "presentation": r.presentation,
                    "bounds": r.bounds,
                    "verdicts": r.verdicts,
                    "results": r.results,
                    "wall_time_ms": start.elapsed().as_millis() as u64,
                });
                emit(&format!("{}\n", serde_json::to_string_pretty(&out).expect("report serializes")));
            } else {
                emit(&r.text);
            }
            if cli.expect && r.refuted() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure(code, msg)) => {
            eprintln!("fsk: {msg}");
            ExitCode::from(code)
        }
    }
}

/// Write to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Check(a) => check(a),
        Command::Spine(a) => spine(a),
        Command::Present(a) => present(a),
        Command::Eval(a) => eval(a),
        Command::Qspace(a) => qspace(a),
        Command::Examples { action } => examples(action),
    }
}

/// A file path, or a built-in example name.
fn load(input: &str) -> Result<SkeinPresentation, Failure> {
    match std::fs::read_to_string(input) {
        Ok(text) => Ok(SkeinPresentation::parse(&text)?),
        Err(e) => corpus::get(input.trim_end_matches(".fsk"))
            .ok_or_else(|| Failure(2, format!("{input}: {e}, and no built-in example has that name"))),
    }
}

fn base_colour(p: &SkeinPresentation, base: &Option<String>) -> Result<Colour, Failure> {
    match base {
        None => Ok(Colour(0)),
        Some(n) => p.palette.lookup(n).ok_or_else(|| Failure(2, format!("unknown colour `{n}`"))),
    }
}

fn tri_word(t: Tri) -> &'static str {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Unknown => "unknown",
    }
}

fn confidence_word(c: Confidence) -> &'static str {
    match c {
        Confidence::Proved => "proved",
        Confidence::Evidence => "evidence",
        Confidence::Unknown => "unknown",
        Confidence::Refuted => "refuted",
    }
}

fn simple_certificate(property: &str, verdict: Tri, kind: &str, witness: Value) -> Certificate {
    Certificate {
        property: property.into(),
        verdict,
        kind: kind.into(),
        confidence: match verdict {
            Tri::Yes => Confidence::Proved,
            Tri::No => Confidence::Refuted,
            Tri::Unknown => Confidence::Unknown,
        },
        witness,
        bounds: BTreeMap::new(),
        theorem_citation: None,
    }
}

fn check(a: &CheckArgs) -> Result<Report, Failure> {
    let p = load(&a.input)?;
    let ctx = Context::new(&p);
    let pal = &p.palette;
    let mut r = Report::new("check", Some(&p));
    let all = !(a.lc || a.complete || a.complemented || a.ore || a.cgp);
    r.line(format!("presentation: {} ({} colours, {} relations)", p.label(), p.colours(), p.relations.len()));
    r.line(format!("strategy: {:?}", ctx.strategy).to_lowercase());
    if all || a.complemented {
        let c = p.is_complemented();
        r.line(format!("complemented: {c}"));
        let mut cert = simple_certificate("complemented", Tri::from_bool(c), "syntactic", Value::Null);
        // a syntactic fact, not a refuted property
        cert.confidence = Confidence::Proved;
        r.verdicts.push(cert);
    }
    if all || a.complete {
        let c = &ctx.completeness;
        let mut cert = simple_certificate(
            "complete",
            c.verdict,
            c.method,
            serde_json::to_value(&c.triples).expect("triples serialize"),
        );
        if c.verdict == Tri::Unknown {
            cert.confidence = Confidence::Unknown;
        }
        r.line(format!("complete: {} ({})", confidence_word(cert.confidence), c.method));
        r.verdicts.push(cert);
    }
    if all || a.lc {
        r.bounds.insert("lc_carets", a.lc_bound);
        let lc = ore_spine::decide_lc(&ctx, a.lc_bound);
        let cert = ore_spine::lc_certificate(&lc, pal);
        let mut line = format!("lc: {} ({})", confidence_word(cert.confidence), cert.kind);
        if let Some(c) = &lc.counterexample {
            line.push_str(&format!(" f = {}, g = {}, h = {}", c.f.render(pal), c.g.render(pal), c.h.render(pal)));
        }
        r.line(line);
        r.verdicts.push(cert);
    }
    if all || a.ore {
        r.bounds.insert("ore_carets", a.ore_bound);
        let d = ore_spine::decide_ore(&ctx, a.ore_bound);
        let cert = d.to_certificate(pal);
        let mut line = format!("ore: {} ({})", confidence_word(cert.confidence), cert.kind);
        if let Some(rf) = &d.refutation {
            line.push_str(&format!(" pair ({}, {})", rf.pair.0.render(pal), rf.pair.1.render(pal)));
        }
        r.line(line);
        r.verdicts.push(cert);
    }
    if a.cgp {
        r.bounds.insert("arithmetic_carets", a.bound);
        for base in pal.colours() {
            let c = fraction::check_cgp(&ctx, base, 4, a.bound);
            let witnesses: Vec<Value> = c
                .witnesses
                .iter()
                .map(|(g, w)| json!({"generator": g.render(pal), "word": forest_skein::group_presentation::render_group_word(w, pal)}))
                .collect();
            r.line(format!("cgp at {}: {}", pal.name(base), tri_word(c.verdict)));
            for w in &witnesses {
                r.line(format!("  {} = {}", w["generator"].as_str().unwrap_or(""), w["word"].as_str().unwrap_or("")));
            }
            let mut cert = simple_certificate(&format!("cgp_{}", pal.name(base)), c.verdict, "hatted_generators_expressed", json!(witnesses));
            // a miss is never a refutation
            if c.verdict != Tri::Yes {
                cert.verdict = Tri::Unknown;
                cert.confidence = Confidence::Unknown;
            }
            cert.bounds.insert("growth_carets".into(), c.growth_bound);
            r.verdicts.push(cert);
        }
    }
    Ok(r)
}

fn spine(a: &SpineArgs) -> Result<Report, Failure> {
    let p = load(&a.input)?;
    let ctx = Context::new(&p);
    let pal = &p.palette;
    let mut r = Report::new("spine", Some(&p));
    r.bounds.insert("carets", a.max_carets);
    r.bounds.insert("stages", a.max_stages);
    let sp = ore_spine::spine(&ctx, a.max_carets, a.max_stages);
    for (i, s) in sp.stages.iter().enumerate() {
        r.line(format!("stage {i}: {}", s.iter().map(|t| t.render(pal)).collect::<Vec<_>>().join(", ")));
    }
    r.line(format!("stabilized: {}", sp.stabilized));
    r.line(format!("spine size: {}", sp.spine.len()));
    if let Some(h) = &sp.halted {
        r.line(format!("halted: {h}"));
    }
    let mut results = json!({"spine": sp.to_json(pal)});
    if sp.stabilized {
        let lc = ore_spine::decide_lc(&ctx, ore_spine::DEFAULT_LC_BOUND);
        let ore = ore_spine::decide_ore(&ctx, ore_spine::DEFAULT_COFINAL_BOUND);
        match ore_spine::f_infinity_certificate(&ore, &lc, &sp) {
            Some(f) => {
                r.line(format!("F-infinity: proved (covers {})", f.covers.join(", ")));
                r.verdicts.push(f.to_certificate());
            }
            None => r.line("F-infinity: no certificate"),
        }
        results["ore"] = json!(ore.to_certificate(pal));
        results["lc"] = json!(ore_spine::lc_certificate(&lc, pal));
    } else {
        r.line("F-infinity: no certificate");
    }
    r.results = results;
    Ok(r)
}

fn present(a: &PresentArgs) -> Result<Report, Failure> {
    let p = load(&a.input)?;
    let base = base_colour(&p, &a.base)?;
    let mut r = Report::new("present", Some(&p));
    let pres: GroupPresentation = if a.monoid {
        r.bounds.insert("max_index", a.max_index);
        monoid_presentation(&p, base, a.max_index)
    } else if a.infinite {
        r.bounds.insert("max_index", a.max_index);
        infinite_presentation(&p, base, a.max_index)
    } else if a.f_tau {
        f_tau_optimized(&p, base)?
    } else {
        finite_presentation(&p, base)
    };
    match a.format {
        Format::Text => r.line(pres.render_text().trim_end()),
        Format::Cas => r.line(pres.render_cas().trim_end()),
    }
    r.line(format!("generators: {}", pres.generators.len()));
    r.line(format!("relations: {}", pres.relations.len()));
    let mut results = json!({
        "kind": pres.kind,
        "generators": pres.generators.iter().map(|g| g.render(&p.palette)).collect::<Vec<_>>(),
        "relations": pres.relations.iter().map(|rel| json!({
            "lhs": forest_skein::group_presentation::render_group_word(&rel.lhs, &p.palette),
            "rhs": forest_skein::group_presentation::render_group_word(&rel.rhs, &p.palette),
            "family": rel.family,
        })).collect::<Vec<_>>(),
        "generator_count": pres.generators.len(),
        "relation_count": pres.relations.len(),
    });
    if a.abelian {
        let ab = abelianization(&pres);
        r.line(format!("abelianization: {}", ab.render()));
        results["abelianization"] = json!({"rendered": ab.render(), "free_rank": ab.free_rank, "torsion": ab.torsion});
    }
    r.results = results;
    Ok(r)
}

fn eval_expr(ctx: &Context, text: &str, base: Colour, bound: usize) -> Result<Option<GroupElement>, Failure> {
    Ok(fraction::parse_expression(ctx, text, base, bound)?.found())
}

fn eval(a: &EvalArgs) -> Result<Report, Failure> {
    let p = load(&a.input)?;
    let ctx = Context::new(&p);
    let base = base_colour(&p, &a.base)?;
    let pal = &p.palette;
    let mut r = Report::new("eval", Some(&p));
    r.bounds.insert("carets", a.bound);
    let Some(g) = eval_expr(&ctx, &a.expr, base, a.bound)? else {
        r.line(format!("unknown: arithmetic unresolved at bound {}", a.bound));
        r.results = json!({"element": null});
        return Ok(r);
    };
    let NormalForm { element, reduced } = fraction::normal_form(&ctx, &g);
    let identity = fraction::is_identity(&ctx, &g);
    r.line(format!("element: {}", g.render(pal)));
    r.line(format!("normal form: {}{}", element.render(pal), if reduced { "" } else { " (partial)" }));
    r.line(format!("identity: {}", tri_word(identity)));
    let mut results = json!({
        "element": g.render(pal),
        "normal_form": element.render(pal),
        "reduced": reduced,
        "identity": identity,
    });
    match a.rest.as_slice() {
        [] => {}
        [kw, other] if kw == "eq" => {
            let eq = match eval_expr(&ctx, other, base, a.bound)? {
                Some(h) => fraction::equals(&ctx, &g, &h, a.bound),
                None => Tri::Unknown,
            };
            r.line(format!("equal: {}", tri_word(eq)));
            results["equal"] = json!(eq);
            r.verdicts.push(simple_certificate("equal", eq, "fraction_equality", json!({"rhs": other})));
        }
        _ => return Err(Failure(2, "expected `eq <expr>` after the expression".into())),
    }
    r.results = results;
    Ok(r)
}

fn qspace(a: &QspaceArgs) -> Result<Report, Failure> {
    let p = load(&a.input)?;
    let ctx = Context::new(&p);
    let pal = &p.palette;
    let mut r = Report::new("qspace", Some(&p));
    r.bounds.insert("carets", a.bound);
    let point = |s: &str| -> Result<OrderedPoint, Failure> {
        let x = OrderedPoint::parse(s, pal)?;
        Ok(ordered::normalize_point(&ctx, &x.tree, x.leaf)?)
    };
    match &a.action {
        QspaceAction::Compare { x, y } => {
            let (x, y) = (point(x)?, point(y)?);
            let c = ordered::compare(&ctx, &x, &y, a.bound);
            let word = match c {
                Some(std::cmp::Ordering::Less) => "LT",
                Some(std::cmp::Ordering::Equal) => "EQ",
                Some(std::cmp::Ordering::Greater) => "GT",
                None => "unknown",
            };
            r.line(word);
            r.results = json!({"x": x.render(pal), "y": y.render(pal), "order": word});
        }
        QspaceAction::Act { element, point: x } => {
            let g = PermutationElement::parse(element, pal)?;
            let x = point(x)?;
            match ordered::act(&ctx, &g, &x, a.bound) {
                Outcome::Found(y) => {
                    r.line(y.render(pal));
                    r.results = json!({"flavour": g.flavour(), "image": y.render(pal)});
                }
                _ => {
                    r.line(format!("unknown: no common growth within {} carets", a.bound));
                    r.results = json!({"flavour": g.flavour(), "image": null});
                }
            }
        }
        QspaceAction::Transitivity { k, samples, max_carets, seed } => {
            if *k == 0 {
                return Err(Failure(2, "--k must be at least 1".into()));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let (mut verified, mut unresolved, mut failed) = (0, 0, 0);
            let mut witnesses = Vec::new();
            for _ in 0..*samples {
                let a_set = random_set(&ctx, &mut rng, *k, *max_carets, a.bound);
                let b_set = random_set(&ctx, &mut rng, *k, *max_carets, a.bound);
                match ordered::transitivity_witness(&ctx, &a_set, &b_set, a.bound)? {
                    Outcome::Found(w) => {
                        match w.verified {
                            Tri::Yes => verified += 1,
                            Tri::No => failed += 1,
                            Tri::Unknown => unresolved += 1,
                        }
                        witnesses.push(json!({
                            "a": a_set.iter().map(|x| x.render(pal)).collect::<Vec<_>>(),
                            "b": b_set.iter().map(|x| x.render(pal)).collect::<Vec<_>>(),
                            "element": w.element.render(pal),
                            "verified": w.verified,
                        }));
                    }
                    _ => unresolved += 1,
                }
            }
            r.line(format!("samples: {samples}, verified: {verified}, failed: {failed}, unresolved: {unresolved}"));
            r.verdicts.push(simple_certificate(
                "transitivity",
                if failed > 0 { Tri::No } else if unresolved > 0 { Tri::Unknown } else { Tri::Yes },
                "constructive_witness",
                json!({"k": k, "samples": samples}),
            ));
            r.results = json!({"experiment": "transitivity", "samples": samples, "violations": failed, "unresolved": unresolved, "witnesses": witnesses});
        }
        QspaceAction::Stabilizer { tree, samples, seed } => {
            let t = Tree::parse(tree, pal)?;
            let st = Stabilizer::new(&t);
            let pts = st.points();
            r.line(format!("rotation: {}", st.rotation.render(pal)));
            let mut images = Vec::new();
            for x in &pts {
                let img = ordered::act(&ctx, &st.rotation, x, a.bound).found();
                let shown = img.map_or("unknown".to_string(), |y| y.render(pal));
                r.line(format!("  {} -> {}", x.render(pal), shown));
                images.push(shown);
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let mut violations = 0;
            let mut fixers = Vec::new();
            for _ in 0..*samples {
                let g = st.sample_fixer(&mut rng, 3, p.colours());
                let v = ordered::verify_maps(&ctx, &g, &pts, &pts, a.bound);
                // a fixer must send each point to itself
                let pointwise = pts.iter().all(|x| {
                    ordered::act(&ctx, &g, x, a.bound).found().is_some_and(|y| {
                        ordered::compare(&ctx, &y, x, a.bound) == Some(std::cmp::Ordering::Equal)
                    })
                });
                if v != Tri::Yes || !pointwise {
                    violations += 1;
                }
                fixers.push(json!({"element": g.render(pal), "fixes": pointwise}));
            }
            r.line(format!("fixers sampled: {samples}, violations: {violations}"));
            r.results = json!({"experiment": "stabilizer", "rotation": st.rotation.render(pal), "rotation_images": images, "samples": samples, "violations": violations, "fixers": fixers});
        }
    }
    Ok(r)
}

fn random_set(ctx: &Context, rng: &mut rand_chacha::ChaCha8Rng, k: usize, max_carets: usize, bound: usize) -> Vec<OrderedPoint> {
    let mut out: Vec<OrderedPoint> = Vec::new();
    let mut tries = 0;
    while out.len() < k && tries < 1000 {
        tries += 1;
        let x = ordered::random_point(rng, max_carets, ctx.p.colours());
        let x = ordered::normalize_point(ctx, &x.tree, x.leaf).expect("leaf in range");
        if !out.iter().any(|y| ordered::compare(ctx, y, &x, bound) == Some(std::cmp::Ordering::Equal)) {
            out.push(x);
        }
    }
    out
}

fn examples(action: &ExamplesAction) -> Result<Report, Failure> {
    let mut r = Report::new("examples", None);
    match action {
        ExamplesAction::List => {
            for n in corpus::names() {
                r.line(n);
            }
            r.results = json!({"names": corpus::names()});
        }
        ExamplesAction::Emit { name } => {
            let src = corpus::source(name).ok_or_else(|| Failure(2, format!("unknown example `{name}`")))?;
            r.line(src.trim_end());
            r.results = json!({"name": name, "source": src});
        }
        ExamplesAction::FTau { trees } => {
            let mut tau = Vec::new();
            let mut names = Vec::new();
            for spec in trees {
                let (n, _) = spec.split_once('=').ok_or_else(|| Failure(2, format!("`{spec}` is not colour=tree")))?;
                names.push(n.trim().to_string());
            }
            let palette = forest_skein::Palette::new(&names)?;
            for spec in trees {
                let (n, t) = spec.split_once('=').expect("checked above");
                tau.push((n.trim().to_string(), Tree::parse(t.trim(), &palette)?));
            }
            let built = ore_spine::build_f_tau(&tau)?;
            r.line(built.presentation.render().trim_end());
            r.line(format!("expected spine: {}", built.expected_spine));
            r.line(format!("replayed: {}", built.replayed));
            r.verdicts = built.certificates.clone();
            r.results = json!({"source": built.presentation.render(), "expected_spine": built.expected_spine, "replayed": built.replayed});
        }
    }
    Ok(r)
}
