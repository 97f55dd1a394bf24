//! Command-line front end. Everything except argument collection and the
//! process exit lives here so that examples and tests can drive it.
//!
//! Reports have the shape `{command, config, results[], summary, failures[]}`
//! with snake_case keys. Timings go to stderr so that identical
//! (config, seed) runs give byte-identical output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charts::{all_three_dimension_count, cone_scan, product_chart_scan, verify_table_row, LocalChartCase};
use crate::classify::{compare, enumerate_weights, Agreement, Verdict, DEFAULT_BOUND};
use crate::cohomology::{
    cech_class3, cech_class3_stable, check_against, completed_presentation_minus_two, e1_cokernel_rank_all3,
    e1_cokernel_rank_star, h1_fiber_scan, kunneth_vanishing_check, CechComplex,
};
use crate::field::{is_prime, FieldSpec};
use crate::galois::{
    base_change_split_check, ext_matrix, noncm_trials, random_extension_problem, split_expected, split_extension,
    ExtensionKind,
};
use crate::shapes::ChartClass;
use crate::weights::{SerreWeight, Side};

pub const ENV_OUT_DIR: &str = "SERRE_SING_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("resource bound: {0}")]
    Bound(String),
    #[error(transparent)]
    Lib(crate::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        use crate::Error as E;
        match e {
            E::Bound { .. } => CliError::Bound(e.to_string()),
            E::BadCharacteristic(_)
            | E::UnsupportedExtension { .. }
            | E::InvalidWeight(_)
            | E::OutOfRange(_)
            | E::IncreaseBounds(_) => CliError::Usage(e.to_string()),
            other => CliError::Lib(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Bound(_) => 3,
            CliError::Lib(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Tables,
    Cohomology,
    Koszul,
    Galois,
    Charts,
}

#[derive(Debug, Parser)]
#[command(name = "serre-sing", version, about = "Singularities of Serre-weight components, by rule and by chart")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// worker threads (0 = rayon default)
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,
    /// output file; defaults to $SERRE_SING_OUT_DIR/<command>.<ext> or stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one weight both ways.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        m: Vec<i64>,
    },
    /// Classify every n in [0, p-1]^f.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u128,
        /// keep only rows with this verdict
        #[arg(long)]
        only: Option<String>,
    },
    /// Run a verification battery.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long)]
        f: Option<usize>,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        cdeg: usize,
        #[arg(long, default_value_t = 8)]
        tdeg: usize,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        m: Vec<i64>,
    },
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Vec<Value>,
    pub summary: BTreeMap<String, Value>,
    pub failures: Vec<String>,
}

impl Report {
    fn new(command: &str, config: Value) -> Report {
        Report { command: command.into(), config, results: vec![], summary: BTreeMap::new(), failures: vec![] }
    }

    fn push<T: Serialize>(&mut self, v: &T) {
        self.results.push(serde_json::to_value(v).expect("serializable"));
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.summary.insert(format!("check_{name}"), Value::Bool(ok));
        if !ok {
            self.failures.push(name.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn prime_arg(p: u64) -> Result<u64, CliError> {
    if p <= 3 || !is_prime(p) {
        return Err(CliError::Usage(format!("p = {p} must be a prime greater than 3")));
    }
    Ok(p)
}

fn weight_arg(p: u64, f: Option<usize>, n: &[u64], m: &[i64]) -> Result<SerreWeight, CliError> {
    let f = f.unwrap_or(n.len());
    if n.len() != f {
        return Err(CliError::Usage(format!("--n has {} entries, expected f = {f}", n.len())));
    }
    let m = if m.is_empty() { vec![0; f] } else { m.to_vec() };
    if m.len() != f {
        return Err(CliError::Usage(format!("--m has {} entries, expected f = {f}", m.len())));
    }
    Ok(SerreWeight::new(p, m, n.to_vec())?)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn verdict_name(v: Option<Verdict>) -> Value {
    v.map_or(Value::Null, |v| Value::String(v.name().into()))
}

fn parse_verdict(s: &str) -> Result<Verdict, CliError> {
    [Verdict::Smooth, Verdict::NonNormal, Verdict::NormalSingular]
        .into_iter()
        .find(|v| v.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| CliError::Usage(format!("unknown verdict {s}")))
}

pub fn run_classify(p: u64, f: Option<usize>, n: &[u64], m: &[i64]) -> Result<Report, CliError> {
    let w = weight_arg(prime_arg(p)?, f, n, m)?;
    let mut rep = Report::new("classify", json!({"p": w.p, "f": w.f(), "n": w.n, "m": w.m}));
    let row = compare(&w)?;
    rep.push(&json!({
        "n": join(&row.n),
        "verdict": row.rule.verdict.name(),
        "rule": row.rule.rule,
        "nonnormal_codim": row.rule.nonnormal_codim,
        "gorenstein": row.rule.gorenstein,
        "sing_codim": row.rule.sing_codim,
        "charts_verdict": verdict_name(row.charts.as_ref().map(|c| c.verdict)),
        "agreement": row.agreement,
    }));
    rep.check("agreement", row.agreement != Agreement::Disagree);
    Ok(rep)
}

pub fn run_enumerate(p: u64, f: usize, bound: u128, only: Option<&str>) -> Result<Report, CliError> {
    let p = prime_arg(p)?;
    let filter = only.map(parse_verdict).transpose()?;
    let mut rep = Report::new("enumerate", json!({"p": p, "f": f, "bound": bound, "only": only}));
    let rows = enumerate_weights(p, f, bound, filter)?;
    let mut hist: BTreeMap<&str, usize> = BTreeMap::new();
    let mut disagreements = Vec::new();
    for r in &rows {
        *hist.entry(r.rule.verdict.name()).or_default() += 1;
        if r.agreement == Agreement::Disagree {
            disagreements.push(join(&r.n));
        }
        rep.push(&json!({
            "n": join(&r.n),
            "verdict": r.rule.verdict.name(),
            "rule": r.rule.rule,
            "nonnormal_codim": r.rule.nonnormal_codim,
            "gorenstein": r.rule.gorenstein,
            "sing_codim": r.rule.sing_codim,
            "charts_verdict": verdict_name(r.charts.as_ref().map(|c| c.verdict)),
            "agreement": r.agreement,
        }));
    }
    rep.summary.insert("rows".into(), json!(rows.len()));
    rep.summary.insert("histogram".into(), json!(hist));
    rep.summary.insert("disagreements".into(), json!(disagreements));
    rep.check("zero_disagreements", disagreements.is_empty());
    Ok(rep)
}

/// One table row per case label; k = 2 stands in for the generic k > 1 cases.
fn representative_cases() -> Vec<LocalChartCase> {
    let mut seen = std::collections::BTreeSet::new();
    let mut all = LocalChartCase::all(2);
    all.reverse();
    let mut out: Vec<_> = all.into_iter().filter(|c| seen.insert(c.number())).collect();
    out.sort_by_key(|c| c.number());
    out
}

fn verify_tables(rep: &mut Report, p: u64, trials: usize, seed: u64) -> Result<(), CliError> {
    let fields = [FieldSpec::prime(p)?, FieldSpec::new(p, 2)?];
    let jobs: Vec<_> = fields
        .iter()
        .flat_map(|&k| representative_cases().into_iter().flat_map(move |c| [Side::L, Side::R].map(|s| (k, c, s))))
        .collect();
    let rows = jobs
        .par_iter()
        .enumerate()
        .map(|(i, (k, c, s))| verify_table_row(c, *s, k, trials, seed.wrapping_add(i as u64)))
        .collect::<crate::Result<Vec<_>>>()?;
    let passed = rows.iter().filter(|r| r.passed()).count();
    rep.summary.insert("rows".into(), json!(rows.len()));
    rep.summary.insert("rows_passed".into(), json!(passed));
    rep.summary.insert("samples".into(), json!(rows.iter().map(|r| r.trials).sum::<usize>()));
    for r in &rows {
        rep.push(r);
    }
    rep.check("w_in_a_eta", rows.iter().all(|r| r.in_a_eta == r.trials));
    rep.check("shape_condition_iff_ideal", rows.iter().all(|r| r.mismatches == 0));
    rep.check("lift_independent", rows.iter().all(|r| r.lift_independent == r.trials));
    Ok(())
}

fn verify_cohomology(
    rep: &mut Report,
    p: u64,
    trials: usize,
    cdeg: usize,
    tdeg: usize,
    seed: u64,
) -> Result<(), CliError> {
    let k = FieldSpec::prime(p)?;
    let mut all_match = true;
    let mut all_stable = true;
    for sum in -2..=2 {
        let r = cech_class3(k, sum, cdeg, tdeg)?;
        let stable = cech_class3_stable(k, sum, cdeg, tdeg)?;
        all_match &= r.matches_statement();
        all_stable &= stable;
        rep.push(&json!({
            "item": "cech",
            "sum": sum,
            "certified_degree": r.certified_degree,
            "h0_generated": r.h0_generated,
            "relations_complete": r.relations_complete,
            "missing_syzygies": r.missing_syzygies,
            "h1_dim": r.h1_dim,
            "h1_annihilated": r.h1_annihilated,
            "stable": stable,
        }));
    }
    let completed = check_against(&CechComplex::new(k, -2, cdeg, tdeg)?, &completed_presentation_minus_two())?;
    rep.push(&json!({
        "item": "cech_completed",
        "sum": -2,
        "h0_generated": completed.h0_generated,
        "relations_complete": completed.relations_complete,
        "missing_syzygies": completed.missing_syzygies,
    }));
    let scan = h1_fiber_scan(FieldSpec::new(p, 2)?, 2, trials.max(50), seed)?;
    rep.push(&json!({"item": "h1_fiber", "origin_rank": scan.origin_rank,
        "off_origin_points": scan.off_origin_points, "off_origin_max_rank": scan.off_origin_max_rank}));
    let mut kunneth_ok = true;
    for class in [ChartClass::One, ChartClass::Two, ChartClass::Four, ChartClass::Five] {
        for d in 0..2u8 {
            for e in 0..2u8 {
                let v = kunneth_vanishing_check(class, d, e)?;
                kunneth_ok &= !v[1] && !v[2];
            }
        }
    }
    rep.check("stated_presentations", all_match);
    rep.check("completed_presentation", completed.h0_generated && completed.relations_complete);
    rep.check("doubled_bounds_stable", all_stable);
    rep.check(
        "h1_supported_at_origin",
        scan.origin_rank == 1 && scan.off_origin_max_rank == 0 && scan.off_origin_points >= 50,
    );
    rep.check("kunneth_higher_vanishing", kunneth_ok);
    Ok(())
}

fn verify_koszul(rep: &mut Report, p: u64, f: Option<usize>, trials: usize, seed: u64) -> Result<(), CliError> {
    let k = FieldSpec::prime(p)?;
    let fs: Vec<usize> = f.map_or((1..=4).collect(), |f| vec![f]);
    let mut ok = true;
    for &f in &fs {
        let r = e1_cokernel_rank_all3(k, f)?;
        ok &= if f == 1 { r.cokernel_rank == 3 } else { r.cokernel_rank >= 3 };
        rep.push(&json!({"item": "all3", "f": f, "domain_dim": r.domain_dim, "codomain_dim": r.codomain_dim,
            "rank": r.rank, "cokernel_rank": r.cokernel_rank}));
    }
    rep.check("all3_cokernel", ok);
    let mut star_ok = true;
    for l in 4..=6 {
        let ranks = e1_cokernel_rank_star(k, l, trials.max(100), seed.wrapping_add(l as u64))?;
        let min = ranks.iter().map(|r| r.cokernel_rank).min().unwrap_or(0);
        star_ok &= min >= 2;
        rep.push(&json!({"item": "star", "length": l, "specializations": ranks.len(), "min_cokernel_rank": min,
            "identity_cokernel_rank": ranks[0].cokernel_rank}));
    }
    rep.check("star_cokernel", star_ok);
    Ok(())
}

fn verify_galois(
    rep: &mut Report,
    p: u64,
    f: Option<usize>,
    trials: usize,
    m: &[i64],
    seed: u64,
) -> Result<(), CliError> {
    let k2 = FieldSpec::new(p, 2)?;
    let kp = FieldSpec::prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<usize> = f.map_or((2..=8).collect(), |f| vec![f]);
    let (mut det_ok, mut split_ok, mut noncm_ok, mut bc_ok) = (true, true, true, true);
    for &f in &fs {
        let pairs = trials.clamp(50, 500);
        let mut good = 0;
        for _ in 0..pairs {
            let (a, b) = (k2.random(&mut rng), k2.random(&mut rng));
            let d = ext_matrix(k2, f, a, b)?.determinant()?;
            good += (d == a - b || d == b - a) as usize;
        }
        det_ok &= good == pairs;
        let mut agree = 0;
        let mut split = 0;
        let kinds = [ExtensionKind::Generic, ExtensionKind::EqualScalars, ExtensionKind::EqualScalarsSolvable];
        for i in 0..pairs {
            let prob = random_extension_problem(k2, f, kinds[i % 3], &mut rng);
            let out = split_extension(&prob)?;
            agree += (out.is_split() == split_expected(&prob)) as usize;
            split += out.is_split() as usize;
        }
        split_ok &= agree == pairs;
        rep.push(&json!({"item": "extension", "f": f, "field": format!("F_{}^2", p), "det_trials": pairs,
            "det_identity": good, "split_trials": pairs, "split_agree": agree, "split": split}));
        if f >= 2 {
            let t = noncm_trials(kp, f, trials, &mut rng)?;
            noncm_ok &= t.reduced == t.trials;
            rep.push(&json!({"item": "noncm", "f": f, "trials": t.trials, "reduced": t.reduced, "via_extension": t.via_extension}));
        }
        let mf: Vec<i64> = if m.len() == f { m.to_vec() } else { vec![0; f] };
        let mut bc = 0;
        for _ in 0..pairs {
            bc += base_change_split_check(kp.random_nonzero(&mut rng), kp.random(&mut rng), f, &mf)? as usize;
        }
        bc_ok &= bc == pairs;
        rep.push(&json!({"item": "base_change", "f": f, "trials": pairs, "split": bc}));
    }
    rep.check("det_identity", det_ok);
    rep.check("split_iff_closed_form", split_ok);
    rep.check("noncm_top_right_zero", noncm_ok);
    rep.check("base_change_splits", bc_ok);
    Ok(())
}

fn verify_charts(rep: &mut Report, p: u64, trials: usize, seed: u64) -> Result<(), CliError> {
    let kp = FieldSpec::prime(p)?;
    let cone = cone_scan(kp)?;
    rep.push(&json!({"item": "cone", "field": cone.field, "points": cone.points, "singular": cone.singular.len(),
        "codim": cone.codim}));
    let prod = product_chart_scan(kp, trials, seed)?;
    rep.push(&json!({"item": "product_chart", "samples": prod.samples, "agreement": prod.agreement,
        "singular_hits": prod.singular_hits}));
    let mut codim_ok = true;
    for f in 1..=2 {
        let d = all_three_dimension_count(f, FieldSpec::new(p, 2)?, 20, seed)?;
        codim_ok &= d.codim == f;
        rep.push(
            &json!({"item": "all3_dimensions", "f": f, "chart_dim": d.chart_dim, "nonnormal_dim": d.nonnormal_dim,
            "codim": d.codim}),
        );
    }
    rep.check("cone_singular_locus_is_origin", cone.singular_locus_is_origin());
    rep.check("cone_codim_two", cone.codim == 2);
    rep.check("product_chart_jacobian", prod.agreement == prod.samples);
    rep.check("all3_codim_f", codim_ok);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn run_verify(
    suite: Suite,
    p: u64,
    f: Option<usize>,
    trials: usize,
    cdeg: usize,
    tdeg: usize,
    m: &[i64],
    seed: u64,
) -> Result<Report, CliError> {
    let p = prime_arg(p)?;
    let config =
        json!({"suite": suite, "p": p, "f": f, "trials": trials, "cdeg": cdeg, "tdeg": tdeg, "m": m, "seed": seed});
    let mut rep = Report::new("verify", config);
    match suite {
        Suite::Tables => verify_tables(&mut rep, p, trials, seed)?,
        Suite::Cohomology => verify_cohomology(&mut rep, p, trials, cdeg, tdeg, seed)?,
        Suite::Koszul => verify_koszul(&mut rep, p, f, trials, seed)?,
        Suite::Galois => verify_galois(&mut rep, p, f, trials, m, seed)?,
        Suite::Charts => verify_charts(&mut rep, p, trials, seed)?,
    }
    Ok(rep)
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify { p, f, n, m } => run_classify(*p, *f, n, m),
        Command::Enumerate { p, f, bound, only } => run_enumerate(*p, *f, *bound, only.as_deref()),
        Command::Verify { suite, p, f, trials, cdeg, tdeg, m } => {
            run_verify(*suite, *p, *f, *trials, *cdeg, *tdeg, m, cli.seed)
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn columns(results: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for r in results {
        if let Value::Object(o) = r {
            for k in o.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

pub fn render(rep: &Report, format: Format) -> Result<String, CliError> {
    let cols = columns(&rep.results);
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rep).expect("serializable") + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(vec![]);
            let io = |e: csv::Error| CliError::Io(e.into());
            w.write_record(&cols).map_err(io)?;
            for r in &rep.results {
                w.write_record(cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null)))).map_err(io)?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?).expect("utf8"))
        }
        Format::Markdown => {
            let mut s = format!("## {}\n\n", rep.command);
            if !cols.is_empty() {
                s += &format!("| {} |\n|{}\n", cols.join(" | "), "---|".repeat(cols.len()));
                for r in &rep.results {
                    let cells: Vec<String> = cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect();
                    s += &format!("| {} |\n", cells.join(" | "));
                }
                s += "\n";
            }
            for (k, v) in &rep.summary {
                s += &format!("- {k}: {}\n", cell(v));
            }
            if !rep.failures.is_empty() {
                s += &format!("- failures: {}\n", rep.failures.join(", "));
            }
            Ok(s)
        }
    }
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    if let Some(p) = &cli.out {
        return Some(p.clone());
    }
    let dir = std::env::var_os(ENV_OUT_DIR)?;
    let name = match &cli.command {
        Command::Classify { .. } => "classify".to_string(),
        Command::Enumerate { .. } => "enumerate".to_string(),
        Command::Verify { suite, .. } => {
            format!("verify_{}", serde_json::to_value(suite).expect("enum").as_str().unwrap_or("suite"))
        }
    };
    let ext = match cli.format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Markdown => "md",
    };
    Some(PathBuf::from(dir).join(format!("{name}.{ext}")))
}

/// Parse, run, write; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let outcome = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool.install(|| execute(&cli)),
        Err(e) => Err(CliError::Usage(e.to_string())),
    };
    let rep = match outcome {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let text = match render(&rep, cli.format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let written = match destination(&cli) {
        Some(path) => path
            .parent()
            .map_or(Ok(()), |d| if d.as_os_str().is_empty() { Ok(()) } else { std::fs::create_dir_all(d) })
            .and_then(|_| std::fs::write(&path, &text)),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    let _ = writeln!(stderr, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    if rep.passed() {
        0
    } else {
        let _ = writeln!(stderr, "failed checks: {}", rep.failures.join(", "));
        1
    }
}
