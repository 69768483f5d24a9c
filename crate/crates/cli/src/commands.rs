use std::path::Path;

use clap::{Args, ValueEnum};
use gapcert_core::bounds::{
    calculator_grid, collar_width, flattening_cost, grid_csv, ledger_solve, ConstantsLedger,
    CycleStatReport, FlatteningCost, GridRow, LedgerParams,
};
use gapcert_core::coverlab::{
    cover_connected, derive_seed, hamming, sample_rep, schreier, screen_short_geodesics,
    switch_walk, HandlebodyMap, PermRep, SampleDump, ScreenClass, ScreeningSummary, TwoCoverVector,
    FREE_GENERATORS, SURFACE_GENERATORS,
};
use gapcert_core::fuchsia::{
    bolza_systole, class_rows, elliptic_classes, enumerate_hyperbolic, rows_csv,
    short_surface_words, stability_check, ClassRow, CompletenessCertificate, StabilityReport,
};
use gapcert_core::groupkit::Word;
use gapcert_core::selberg::{
    certify_gap_with, parse_rational, CertifyOptions, ClassInput, DeckGroup, GapCertificate,
    Normalization, TestFn,
};
use serde::Serialize;
use serde_json::Value;

use crate::cache::{self, CachedClasses};
use crate::output::{csv_report, emit, json_report, TOOL_VERSION};
use crate::{CliError, Format, Globals, Outcome};

type CmdResult = Result<Outcome, CliError>;

fn config<A: Serialize>(g: &Globals, args: &A) -> Value {
    serde_json::json!({ "precision": g.precision, "seed": g.seed, "args": args })
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn write<T: Serialize>(
    command: &str,
    cfg: &Value,
    format: Format,
    result: &T,
    csv_body: impl FnOnce() -> Result<String, CliError>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let text = match format {
        Format::Json => json_report(command, cfg, result),
        Format::Csv => csv_report(command, cfg, &csv_body()?),
    };
    emit(&text, out)?;
    Ok(())
}

fn bits_string(v: &TwoCoverVector) -> String {
    v.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str) -> Result<TwoCoverVector, CliError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::Input(format!(
                "target must be a 0/1 string, got {s:?}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|bits| TwoCoverVector { bits })
}

fn parse_handlebody(s: &str) -> Result<HandlebodyMap, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a1, b1, a2, b2] = parts[..] else {
        return Err(CliError::Input(format!(
            "handlebody map needs four comma-separated words, got {s:?}"
        )));
    };
    Ok(HandlebodyMap::parse([a1, b1, a2, b2])?)
}

fn ratio_to_f64(s: &str) -> Result<f64, CliError> {
    let q = parse_rational(s)?;
    Ok(*q.numer() as f64 / *q.denom() as f64)
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizationArg {
    Standard,
    AsPrinted,
}

#[derive(Args, Debug, Serialize)]
pub struct CertifyArgs {
    /// Test function parameter `d` (rational, e.g. 3/4).
    #[arg(long, default_value = "3/4")]
    pub d: String,
    /// Eigenvalue to certify below (rational, e.g. 0.2501).
    #[arg(long, default_value = "0.2501")]
    pub lambda: String,
    /// Largest precision tried when margins are undecided.
    #[arg(long, default_value_t = 512)]
    pub max_precision: u32,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Standard)]
    pub normalization: NormalizationArg,
    /// Enumerate hyperbolic classes only up to this length (default 4d).
    /// Lists shorter than the support are refused.
    #[arg(long)]
    pub length_bound: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub max_word_length: u32,
}

#[derive(Serialize)]
struct CertifyReport {
    certificate: GapCertificate,
    completeness: Option<CompletenessCertificate>,
}

pub fn certify(
    g: &Globals,
    a: &CertifyArgs,
    format: Option<Format>,
    out: Option<&Path>,
) -> CmdResult {
    let cfg = config(g, a);
    let d = parse_rational(&a.d)?;
    let lambda = parse_rational(&a.lambda)?;
    let tf = TestFn::new(d)?;
    let l = match a.length_bound {
        Some(l) => l,
        None => ratio_to_f64(&(d * 4).to_string())?,
    };
    let classes = ClassInput::enumerate(l, a.max_word_length)?;
    let deck = DeckGroup::compute()?;
    let opts = CertifyOptions {
        normalization: match a.normalization {
            NormalizationArg::Standard => Normalization::Standard,
            NormalizationArg::AsPrinted => Normalization::AsPrinted,
        },
        precision: g.precision,
        max_precision: a.max_precision.max(g.precision),
    };
    let certificate = certify_gap_with(lambda, &tf, &deck, &classes, &opts)?;
    let certified = certificate.certified;
    let report = CertifyReport {
        certificate,
        completeness: classes.certificate.clone(),
    };
    write(
        "certify",
        &cfg,
        format.unwrap_or(Format::Json),
        &report,
        || to_csv(&report.certificate.characters),
        out,
    )?;
    Ok(if certified {
        Outcome::Success
    } else {
        Outcome::Inconclusive
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    All,
    Elliptic,
    Hyperbolic,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassesArgs {
    /// Largest translation length of hyperbolic classes.
    #[arg(long, default_value_t = 3.0)]
    pub length_bound: f64,
    #[arg(long, default_value_t = 64)]
    pub max_word_length: u32,
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    pub kind: KindArg,
    /// Cross-check against all words of length up to `b + N`.
    #[arg(long)]
    pub stability_extra: Option<u32>,
    /// Ignore `GAPCERT_CACHE_DIR`.
    #[arg(long)]
    #[serde(skip)]
    pub no_cache: bool,
}

#[derive(Serialize)]
struct ClassesReport {
    completeness: CompletenessCertificate,
    stability: Option<StabilityReport>,
    classes: Vec<ClassRow>,
}

pub fn classes(
    g: &Globals,
    a: &ClassesArgs,
    format: Option<Format>,
    out: Option<&Path>,
) -> CmdResult {
    let cfg = config(g, a);
    let cached = if a.no_cache || a.stability_extra.is_some() {
        None
    } else {
        cache::load(a.length_bound, a.max_word_length)
    };
    let (entry, stability) = match cached {
        Some(c) => (c, None),
        None => {
            let h = enumerate_hyperbolic(a.length_bound, a.max_word_length)?;
            let mut rows = class_rows(&elliptic_classes()?);
            rows.extend(class_rows(&h.classes));
            let stability = a
                .stability_extra
                .map(|e| stability_check(&h, e))
                .transpose()?;
            let entry = CachedClasses {
                version: TOOL_VERSION.to_string(),
                certificate: h.certificate,
                rows,
            };
            if !a.no_cache {
                cache::store(a.length_bound, a.max_word_length, &entry);
            }
            (entry, stability)
        }
    };
    let rows: Vec<ClassRow> = entry
        .rows
        .into_iter()
        .filter(|r| match a.kind {
            KindArg::All => true,
            KindArg::Elliptic => r.kind == "elliptic",
            KindArg::Hyperbolic => r.kind == "hyperbolic",
        })
        .collect();
    let stable = stability.as_ref().is_none_or(|s| s.identical);
    let report = ClassesReport {
        completeness: entry.certificate,
        stability,
        classes: rows,
    };
    write(
        "classes",
        &cfg,
        format.unwrap_or(Format::Csv),
        &report,
        || Ok(rows_csv(&report.classes)?),
        out,
    )?;
    Ok(if stable {
        Outcome::Success
    } else {
        Outcome::Inconclusive
    })
}

#[derive(Args, Debug, Serialize)]
pub struct ScreeningArgs {
    /// Screen surface geodesics up to this length.
    #[arg(long, default_value_t = 3.5)]
    pub length_bound: f64,
    /// Word length in `a1, b1, a2, b2` searched for short geodesics.
    #[arg(long, default_value_t = 2)]
    pub surface_word_length: usize,
    /// Images of `a1, b1, a2, b2` in `X, Y`.
    #[arg(long, default_value = "X,1,Y,1")]
    pub handlebody: String,
}

#[derive(Serialize)]
struct ScreenedClass {
    word: String,
    length: f64,
    q_image: String,
}

fn screening_classes(
    a: &ScreeningArgs,
    prec: u32,
) -> Result<(Vec<ScreenClass>, Vec<ScreenedClass>, Vec<String>), CliError> {
    let h = parse_handlebody(&a.handlebody)?;
    let short = short_surface_words(a.surface_word_length, a.length_bound, prec)?;
    let mut classes = Vec::new();
    let mut listed = Vec::new();
    let mut labels = Vec::new();
    for s in short {
        let c = ScreenClass::new(&h, s.word.clone())?;
        let label = s.word.format(&SURFACE_GENERATORS);
        listed.push(ScreenedClass {
            word: label.clone(),
            length: s.length,
            q_image: c.q_image.format(&FREE_GENERATORS),
        });
        labels.push(label);
        classes.push(c);
    }
    Ok((classes, listed, labels))
}

fn dump_rep(
    rep: &PermRep,
    a: &ScreeningArgs,
    classes: &[ScreenClass],
    labels: &[String],
) -> Result<SampleDump, CliError> {
    let k = if rep.is_transitive() {
        Some(schreier(rep)?.rank())
    } else {
        None
    };
    let report = screen_short_geodesics(rep, classes)?;
    Ok(SampleDump::new(
        rep,
        k,
        Some(ScreeningSummary::new(a.length_bound, &report, labels)),
    ))
}

#[derive(Args, Debug, Serialize)]
pub struct CoversArgs {
    /// Degree of the covers.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Number of covers sampled.
    #[arg(long, default_value_t = 1)]
    pub samples: usize,
    #[command(flatten)]
    pub screening: ScreeningArgs,
}

#[derive(Serialize)]
struct CoversReport {
    screened_classes: Vec<ScreenedClass>,
    transitive_fraction: f64,
    samples: Vec<SampleDump>,
}

#[derive(Serialize)]
struct CoverRow {
    n: usize,
    seed: u64,
    transitive: bool,
    k: Option<usize>,
    flagged: usize,
}

pub fn covers(
    g: &Globals,
    a: &CoversArgs,
    format: Option<Format>,
    out: Option<&Path>,
) -> CmdResult {
    let cfg = config(g, a);
    if a.n == 0 || a.samples == 0 {
        return Err(CliError::Input("--n and --samples must be positive".into()));
    }
    let (classes, listed, labels) = screening_classes(&a.screening, g.precision)?;
    let samples = (0..a.samples as u64)
        .map(|i| {
            dump_rep(
                &sample_rep(a.n, derive_seed(g.seed, i)),
                &a.screening,
                &classes,
                &labels,
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    let transitive = samples.iter().filter(|s| s.transitive).count();
    let report = CoversReport {
        screened_classes: listed,
        transitive_fraction: transitive as f64 / samples.len() as f64,
        samples,
    };
    write(
        "covers",
        &cfg,
        format.unwrap_or(Format::Json),
        &report,
        || {
            let rows: Vec<CoverRow> = report
                .samples
                .iter()
                .map(|s| CoverRow {
                    n: s.n,
                    seed: s.seed,
                    transitive: s.transitive,
                    k: s.k,
                    flagged: s.screening.as_ref().map_or(0, |r| r.flagged.len()),
                })
                .collect();
            to_csv(&rows)
        },
        out,
    )?;
    Ok(Outcome::Success)
}

#[derive(Args, Debug, Serialize)]
pub struct StatsArgs {
    /// Word in `X, Y`.
    #[arg(long, default_value = "X")]
    pub word: String,
    /// Cycle length counted.
    #[arg(long, default_value_t = 1)]
    pub cycle_length: usize,
    /// Permutation degree.
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    /// Number of samples.
    #[arg(long, default_value_t = 5000)]
    pub samples: usize,
}

#[derive(Serialize)]
struct PmfRow {
    count: usize,
    empirical: f64,
    poisson: f64,
}

pub fn stats(g: &Globals, a: &StatsArgs, format: Option<Format>, out: Option<&Path>) -> CmdResult {
    let cfg = config(g, a);
    let w = Word::parse(&a.word, &FREE_GENERATORS)?;
    let report: CycleStatReport =
        gapcert_core::bounds::cycle_stats(&w, a.cycle_length, a.n, a.samples, g.seed)?;
    write(
        "stats",
        &cfg,
        format.unwrap_or(Format::Json),
        &report,
        || {
            let rows: Vec<PmfRow> = report
                .empirical
                .iter()
                .zip(&report.poisson)
                .enumerate()
                .map(|(count, (&empirical, &poisson))| PmfRow {
                    count,
                    empirical,
                    poisson,
                })
                .collect();
            to_csv(&rows)
        },
        out,
    )?;
    Ok(Outcome::Success)
}

#[derive(Args, Debug, Serialize)]
pub struct LedgerArgs {
    /// Target density gap.
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    /// Collar width (default: standard collar of the Bolza systole).
    #[arg(long)]
    pub w: Option<f64>,
    /// Delocalization constant (placeholder).
    #[arg(long = "a-const", default_value_t = 1.0)]
    pub a: f64,
    /// Flattening constant (placeholder).
    #[arg(long = "b-const", default_value_t = 1.0)]
    pub b: f64,
    /// Flattening threshold (placeholder).
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
}

fn solve_ledger(a: &LedgerArgs, prec: u32) -> Result<ConstantsLedger, CliError> {
    let w = match a.w {
        Some(w) => w,
        None => collar_width(bolza_systole(3, prec)?.1.length)?,
    };
    Ok(ledger_solve(LedgerParams {
        eta: a.eta,
        w,
        a: a.a,
        b: a.b,
        eps: a.eps,
    })?)
}

#[derive(Args, Debug, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub ledger: LedgerArgs,
    #[arg(long, default_value_t = 0.5)]
    pub grid_from: f64,
    #[arg(long, default_value_t = 20.0)]
    pub grid_to: f64,
    #[arg(long, default_value_t = 40)]
    pub grid_points: usize,
}

#[derive(Serialize)]
struct BoundsReport {
    ledger: ConstantsLedger,
    grid: Vec<GridRow>,
}

pub fn bounds(
    g: &Globals,
    a: &BoundsArgs,
    format: Option<Format>,
    out: Option<&Path>,
) -> CmdResult {
    let cfg = config(g, a);
    let ledger = solve_ledger(&a.ledger, g.precision)?;
    let grid = calculator_grid(a.grid_from, a.grid_to, a.grid_points)?;
    let report = BoundsReport { ledger, grid };
    write(
        "bounds",
        &cfg,
        format.unwrap_or(Format::Json),
        &report,
        || Ok(grid_csv(&report.grid)?),
        out,
    )?;
    Ok(Outcome::Success)
}

#[derive(Args, Debug, Serialize)]
pub struct PipelineArgs {
    /// Degree of the sampled cover.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Resampling attempts when the action is not transitive.
    #[arg(long, default_value_t = 10)]
    pub retries: u32,
    /// Target two-cover as a 0/1 string of length `n + 1` (default all ones).
    #[arg(long)]
    pub target: Option<String>,
    /// `‖f‖∞²` used for the flattening cost of each switch.
    #[arg(long, default_value_t = 1e-4)]
    pub sup_norm_sq: f64,
    #[command(flatten)]
    pub screening: ScreeningArgs,
    #[command(flatten)]
    pub ledger: LedgerArgs,
}

#[derive(Serialize)]
struct SchreierSummary {
    k: usize,
    tree_edges: usize,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct WalkStep {
    step: usize,
    switched: Option<usize>,
    vector: String,
    hamming_from_start: usize,
    hamming_to_target: usize,
    connected: bool,
    flattening: FlatteningCost,
}

#[derive(Serialize)]
struct PipelineReport {
    attempts: u32,
    sample: SampleDump,
    schreier: SchreierSummary,
    screened_classes: Vec<ScreenedClass>,
    target: String,
    walk: Vec<WalkStep>,
    ledger: ConstantsLedger,
}

pub fn pipeline(
    g: &Globals,
    a: &PipelineArgs,
    format: Option<Format>,
    out: Option<&Path>,
) -> CmdResult {
    let cfg = config(g, a);
    if a.n == 0 {
        return Err(CliError::Input("--n must be positive".into()));
    }
    let mut attempt = 0;
    let rep = loop {
        let rep = sample_rep(a.n, derive_seed(g.seed, attempt as u64));
        attempt += 1;
        if rep.is_transitive() {
            break rep;
        }
        if attempt > a.retries {
            return Err(gapcert_core::error::Error::NotTransitive.into());
        }
    };
    let sd = schreier(&rep)?;
    let k = sd.rank();
    let (classes, listed, labels) = screening_classes(&a.screening, g.precision)?;
    let sample = dump_rep(&rep, &a.screening, &classes, &labels)?;
    let ledger = solve_ledger(&a.ledger, g.precision)?;
    let start = TwoCoverVector::zeros(k);
    let target = match &a.target {
        Some(t) => parse_bits(t)?,
        None => TwoCoverVector::ones(k),
    };
    let walk = switch_walk(&start, &target)?;
    let mut steps = Vec::with_capacity(walk.len());
    for (i, v) in walk.iter().enumerate() {
        let switched = if i == 0 {
            None
        } else {
            walk[i - 1]
                .bits
                .iter()
                .zip(&v.bits)
                .position(|(x, y)| x != y)
                .map(|p| p + 1)
        };
        steps.push(WalkStep {
            step: i,
            switched,
            vector: bits_string(v),
            hamming_from_start: hamming(&start, v)?,
            hamming_to_target: hamming(v, &target)?,
            connected: cover_connected(v),
            flattening: flattening_cost(
                ledger.params.b,
                a.sup_norm_sq,
                ledger.ell,
                i as u64,
                ledger.params.eps,
            ),
        });
    }
    let report = PipelineReport {
        attempts: attempt,
        sample,
        schreier: SchreierSummary {
            k,
            tree_edges: sd.tree.len(),
            generators: sd
                .generators
                .iter()
                .map(|w| w.format(&FREE_GENERATORS))
                .collect(),
        },
        screened_classes: listed,
        target: bits_string(&target),
        walk: steps,
        ledger,
    };
    write(
        "pipeline",
        &cfg,
        format.unwrap_or(Format::Json),
        &report,
        || {
            #[derive(Serialize)]
            struct Row<'a> {
                step: usize,
                switched: Option<usize>,
                vector: &'a str,
                hamming_from_start: usize,
                hamming_to_target: usize,
                connected: bool,
                admissible: bool,
                rayleigh_increment: f64,
            }
            let rows: Vec<Row> = report
                .walk
                .iter()
                .map(|s| Row {
                    step: s.step,
                    switched: s.switched,
                    vector: &s.vector,
                    hamming_from_start: s.hamming_from_start,
                    hamming_to_target: s.hamming_to_target,
                    connected: s.connected,
                    admissible: s.flattening.admissible,
                    rayleigh_increment: s.flattening.rayleigh_increment,
                })
                .collect();
            to_csv(&rows)
        },
        out,
    )?;
    Ok(Outcome::Success)
}
