//! Command-line front end for `slnfloer`.
//!
//! [`run`] takes the argument list and two sinks and returns the process
//! exit code: `0` on success, `1` when a computation or check fails, `2`
//! on a usage error. Output is a pure function of the arguments.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use slnfloer::complex::{curvature, GradedDims};
use slnfloer::hfk::library::by_name;
use slnfloer::hfk::{hfk_n, reduced_hfk_n, staircase, validate_master, MasterComplex, Route, StaircaseSpec};
use slnfloer::kr::{
    euler_char, kr_complex, kr_homology, kr_homology_finite, top_generator_degree, BraidDiagram, Flavor, KRHomology,
    Mode,
};
use slnfloer::poly::{braid_closure, builtin, builtin_braids, homfly, sln_specialize, PDCode};
use slnfloer::ring::{rat, LaurentPoly, Rational};
use slnfloer::sscheck::{conjecture_report, ss_step, ss_step_at, ConjectureReport, SSVerdict};
use slnfloer::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "slnfloer", version, about = "Knot Floer, Khovanov-Rozansky and HOMFLY-PT computations over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// HFK_n of a master complex.
    Hfkn(HfknArgs),
    /// Khovanov-Rozansky homology of a braid closure.
    Kr(KrArgs),
    /// HOMFLY-PT polynomial and its sl(n) specializations.
    Homfly(HomflyArgs),
    /// Degree compatibility of spectral sequences.
    Sscheck(SscheckArgs),
    /// Structural checks on a complex.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
#[group(id = "master", required = true, multiple = false)]
pub struct MasterSource {
    /// Built-in knot, e.g. unknot, T2,3, T3,4, 4_1.
    #[arg(long, group = "master")]
    pub knot: Option<String>,
    /// Staircase knot from its Alexander exponents, e.g. 1,0,-1.
    #[arg(long, group = "master", value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub alexander_exponents: Option<Vec<i64>>,
    /// Master complex JSON file.
    #[arg(long, group = "master")]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HfknArgs {
    #[command(flatten)]
    pub source: MasterSource,
    /// A value or inclusive range, e.g. 3 or 2..5.
    #[arg(long, value_parser = parse_n_range)]
    pub n: NRange,
    /// Reduced theory at the first component.
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Reduced,
    Unreduced,
    Middle,
}

#[derive(Args, Debug)]
pub struct KrArgs {
    /// Braid, e.g. "strands=2 word=1,1,1 mark=1".
    #[arg(long)]
    pub braid: String,
    /// sl(n) theory; HOMFLY-PT when absent.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub sln: Option<u32>,
    #[arg(long, value_enum, default_value_t = FlavorArg::Reduced)]
    pub flavor: FlavorArg,
    /// Exact up to this first-coordinate degree. Without it the bound is
    /// raised until the homology stabilizes.
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<i64>,
}

#[derive(Args, Debug)]
#[group(id = "diagram", required = true, multiple = false)]
pub struct DiagramSource {
    /// Braid, e.g. "strands=2 word=1,1,1".
    #[arg(long, group = "diagram")]
    pub braid: Option<String>,
    /// Built-in diagram, e.g. 3_1, 4_1, hopf.
    #[arg(long, group = "diagram")]
    pub knot: Option<String>,
}

#[derive(Args, Debug)]
pub struct HomflyArgs {
    #[command(flatten)]
    pub source: DiagramSource,
    /// Divide by the unknot value.
    #[arg(long)]
    pub reduced: bool,
    /// Specialize a = q^n (n = 0 gives the Alexander polynomial in q^2).
    #[arg(long, allow_hyphen_values = true)]
    pub sln: Option<i32>,
}

#[derive(Args, Debug)]
pub struct SscheckArgs {
    /// Built-in knot for a per-n report.
    #[arg(long, conflicts_with_all = ["source", "target", "step", "shift"], requires = "n")]
    pub knot: Option<String>,
    /// Values of n for the report, e.g. 2..4
    #[arg(long, value_parser = parse_n_range)]
    pub n: Option<NRange>,
    /// Source Poincare polynomial in q.
    #[arg(long, requires_all = ["target", "step"], allow_hyphen_values = true)]
    pub source: Option<String>,
    /// Target Poincare polynomial in q.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    /// Each cancelling pair spans degrees d and d + step.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub step: Option<u32>,
    /// Pin the overall shift instead of searching.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<i32>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Built-in knot.
    #[arg(long, group = "what")]
    pub knot: Option<String>,
    /// Staircase knot from its Alexander exponents.
    #[arg(long, group = "what", value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub alexander_exponents: Option<Vec<i64>>,
    /// Master complex JSON file.
    #[arg(long, group = "what")]
    pub file: Option<PathBuf>,
    /// Plain complex JSON file.
    #[arg(long, group = "what")]
    pub complex_file: Option<PathBuf>,
    /// KR complex of a braid.
    #[arg(long, group = "what")]
    pub braid: Option<String>,
    /// With --braid: the sl(n) complex.
    #[arg(long, requires = "braid")]
    pub sln: Option<u32>,
    /// Also print the complex in JSON form.
    #[arg(long)]
    pub emit: bool,
}

/// An inclusive range of `n` values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRange(pub Vec<u32>);

fn parse_n_range(s: &str) -> std::result::Result<NRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("'{t}' is not a nonnegative integer"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo == 0 {
        return Err("n must be at least 1".to_string());
    }
    if hi < lo {
        return Err(format!("empty range {s}"));
    }
    Ok(NRange((lo..=hi).collect()))
}

/// Parses the arguments, runs the command and writes its output. Returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let (code, text) = match execute(&cli) {
        Ok(o) => (if o.ok { 0 } else { 1 }, o.text),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &text) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}

/// Rendered output and whether every check passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn json_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let json = cli.format == OutputFormat::Json;
    match &cli.command {
        Command::Hfkn(a) => cmd_hfkn(a, json),
        Command::Kr(a) => cmd_kr(a, json),
        Command::Homfly(a) => cmd_homfly(a, json),
        Command::Sscheck(a) => cmd_sscheck(a, json),
        Command::Validate(a) => cmd_validate(a, json),
    }
}

fn read_file(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_master(knot: &Option<String>, exps: &Option<Vec<i64>>, file: &Option<PathBuf>) -> Result<(String, MasterComplex)> {
    if let Some(k) = knot {
        return Ok((k.clone(), by_name(k)?));
    }
    if let Some(e) = exps {
        let label = format!("staircase {}", join(e.iter()));
        return Ok((label, staircase(&StaircaseSpec::new(e.clone())?)?));
    }
    if let Some(p) = file {
        return Ok((p.display().to_string(), format::master_from_json(&read_file(p)?)?));
    }
    Err(Error::InvalidArgument("no input given".to_string()))
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Degree/dimension pairs with degrees as `p/q` strings.
fn dims_json(d: &GradedDims) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = d
        .dims
        .iter()
        .map(|(k, v)| json!({ "degree": k.iter().map(|r| r.to_string()).collect::<Vec<_>>(), "dim": v }))
        .collect();
    json!({ "dims": entries, "total": d.total(), "cutoff": d.cutoff.as_ref().map(|c| c.to_string()) })
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::PuncturedCone => "punctured-cone",
        Route::Quotient => "quotient",
        Route::Direct => "direct",
    }
}

fn cmd_hfkn(a: &HfknArgs, json: bool) -> Result<Outcome> {
    let s = &a.source;
    let (label, m) = load_master(&s.knot, &s.alexander_exponents, &s.file)?;
    let mut text = format!("knot: {label}\nconvention: gr_n = -n*M + 2(n-1)*A\n");
    let mut rows = Vec::new();
    for &n in &a.n.0 {
        if a.reduced {
            let d = reduced_hfk_n(&m, n, 1)?;
            text += &format!("n = {n} (reduced)\n  poincare: {d}\n  total dimension: {}\n", d.total());
            rows.push(json!({ "n": n, "reduced": true, "homology": dims_json(&d) }));
        } else {
            let h = hfk_n(&m, n)?;
            let module = h.decomp.as_ref().map(|d| d.to_string());
            text += &format!("n = {n} (route {})\n", route_name(h.route));
            if let Some(md) = &module {
                text += &format!("  module: {md}\n");
            }
            text += &format!("  poincare: {}\n  total dimension: {}\n", h.dims, h.total_dim());
            rows.push(json!({
                "n": n,
                "reduced": false,
                "route": route_name(h.route),
                "module": module,
                "homology": dims_json(&h.dims),
                "max_torsion_exponent": h.max_torsion_exponent(),
            }));
        }
    }
    if json {
        let doc = json!({
            "knot": label,
            "convention": "gr_n = -n*M + 2(n-1)*A",
            "master_complex": format::MasterJson::from_master(&m),
            "results": rows,
        });
        return Ok(Outcome::ok(json_text(&doc)));
    }
    Ok(Outcome::ok(text))
}

fn flavor_of(f: FlavorArg) -> Flavor {
    match f {
        FlavorArg::Reduced => Flavor::Reduced,
        FlavorArg::Unreduced => Flavor::Unreduced,
        FlavorArg::Middle => Flavor::Middle,
    }
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Reduced => "reduced",
        Flavor::Unreduced => "unreduced",
        Flavor::Middle => "middle",
    }
}

fn kr_result(a: &KrArgs) -> Result<(KRHomology, Option<Rational>)> {
    let d = BraidDiagram::parse(&a.braid)?;
    let mode = a.sln.map_or(Mode::Homfly, Mode::Sln);
    let k = kr_complex(&d, flavor_of(a.flavor), mode)?;
    match a.cutoff {
        Some(c) => Ok((kr_homology(&k, &rat(c))?, Some(rat(c)))),
        None => {
            let top = top_generator_degree(&k);
            Ok((kr_homology_finite(&k, &(top + rat(6)), &rat(6), 6)?, None))
        }
    }
}

fn cmd_kr(a: &KrArgs, json: bool) -> Result<Outcome> {
    let (h, cutoff) = kr_result(a)?;
    let theory = match h.mode {
        Mode::Homfly => "HOMFLY-PT".to_string(),
        Mode::Sln(n) => format!("sl({n})"),
    };
    let grading = match h.mode {
        Mode::Homfly => "(q, h, v)",
        Mode::Sln(_) => "(gr_n, gr_v)",
    };
    let truncated = h.dims().is_truncated();
    let chi = if truncated { None } else { Some(euler_char(&h)?) };
    let conj = h.conjecture_grading();
    if json {
        let doc = json!({
            "braid": a.braid,
            "theory": theory,
            "flavor": flavor_name(h.flavor),
            "grading": grading,
            "cutoff": cutoff.map(|c| c.to_string()),
            "e1": dims_json(&h.pages.first),
            "e2": dims_json(&h.pages.second),
            "conjecture_grading": conj.as_ref().map(dims_json),
            "euler_characteristic": chi.as_ref().map(|c| c.to_string()),
            "truncated": truncated,
        });
        return Ok(Outcome::ok(json_text(&doc)));
    }
    let mut t = format!("braid: {}\ntheory: {theory}, {}\ngrading: {grading}\n", a.braid, flavor_name(h.flavor));
    if let Some(c) = &cutoff {
        t += &format!("cutoff: {c}\n");
    }
    t += &format!("E1: {}\nE1 total: {}\n", h.pages.first, h.pages.first.total());
    t += &format!("E2: {}\nE2 total: {}\n", h.pages.second, h.pages.second.total());
    if let Some(c) = &conj {
        t += &format!("conjecture grading: {c}\n");
    }
    match &chi {
        Some(c) => t += &format!("euler characteristic: {c}\n"),
        None => t += "euler characteristic: unavailable (truncated)\n",
    }
    t += &format!("truncated: {}\n", if truncated { "yes" } else { "no" });
    Ok(Outcome::ok(t))
}

fn diagram(src: &DiagramSource) -> Result<(String, PDCode)> {
    if let Some(b) = &src.braid {
        let d = BraidDiagram::parse(b)?;
        return Ok((b.clone(), braid_closure(d.word(), d.strands())?));
    }
    let name = src.knot.as_deref().unwrap_or_default();
    match builtin(name) {
        Ok(d) => Ok((name.to_string(), d)),
        Err(_) => {
            let known: Vec<&str> = builtin_braids().iter().map(|(n, _, _)| *n).collect();
            Err(Error::InvalidArgument(format!("unknown diagram '{name}'; built-ins: {}", known.join(", "))))
        }
    }
}

fn cmd_homfly(a: &HomflyArgs, json: bool) -> Result<Outcome> {
    let (label, d) = diagram(&a.source)?;
    let p = homfly(&d, a.reduced)?;
    let spec = a.sln.map(|n| sln_specialize(&p, n)).transpose()?;
    if json {
        let doc = json!({
            "diagram": label,
            "reduced": a.reduced,
            "homfly": p.to_string(),
            "sln": spec.as_ref().map(|s| json!({ "n": a.sln, "value": s.to_string() })),
        });
        return Ok(Outcome::ok(json_text(&doc)));
    }
    Ok(Outcome::ok(match &spec {
        Some(s) => format!("{s}\n"),
        None => format!("{p}\n"),
    }))
}

fn verdict_json(v: &SSVerdict) -> serde_json::Value {
    json!({
        "compatible": v.compatible,
        "step": v.step,
        "shift": v.shift,
        "witness": v.witness.as_ref().map(|w| w.to_string()),
        "certificate": v.certificate.as_ref().map(|c| format!("{c:?}")),
        "dim_source": v.dim_source.to_string(),
        "dim_target": v.dim_target.to_string(),
        "parity_ok": v.parity_ok,
        "q_minus_one_ok": v.q_minus_one_ok,
    })
}

fn report_json(r: &ConjectureReport) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "hfk": row.hfk.to_string(),
                "hfk_dim": row.hfk_dim,
                "source": row.source,
                "sl_poly": row.sl_poly.as_ref().map(|p| p.to_string()),
                "sl_dim": row.sl_dim,
                "verdict": row.verdict.as_ref().map(verdict_json),
                "dims_ok": row.dims_ok,
                "passes": row.passes(),
            })
        })
        .collect();
    json!({ "knot": r.knot, "rows": rows, "notes": r.notes, "all_pass": r.all_pass() })
}

fn parse_q_poly(s: &str) -> Result<LaurentPoly> {
    s.parse::<LaurentPoly>()
}

fn cmd_sscheck(a: &SscheckArgs, json: bool) -> Result<Outcome> {
    if let Some(k) = &a.knot {
        let ns = a.n.as_ref().map(|r| r.0.clone()).unwrap_or_default();
        let r = conjecture_report(k, &ns)?;
        let text = if json { json_text(&report_json(&r)) } else { r.to_string() };
        return Ok(Outcome::ok(text));
    }
    let (Some(src), Some(tgt), Some(step)) = (&a.source, &a.target, a.step) else {
        return Err(Error::InvalidArgument("give --knot and --n, or --source, --target and --step".to_string()));
    };
    let (p, q) = (parse_q_poly(src)?, parse_q_poly(tgt)?);
    let v = match a.shift {
        Some(s) => ss_step_at(&p, &q, step, s),
        None => ss_step(&p, &q, step),
    };
    let text = if json {
        json_text(&verdict_json(&v))
    } else {
        let mut t = format!("{v}\n");
        t += &format!("dimensions: {} -> {} (parity {})\n", v.dim_source, v.dim_target, if v.parity_ok { "ok" } else { "FAIL" });
        if let Some(ok) = v.q_minus_one_ok {
            t += &format!("value at q = -1: {}\n", if ok { "ok" } else { "FAIL" });
        }
        t
    };
    Ok(Outcome::ok(text))
}

fn cmd_validate(a: &ValidateArgs, json: bool) -> Result<Outcome> {
    let mut checks: Vec<(String, std::result::Result<(), String>)> = Vec::new();
    let mut emitted: Option<serde_json::Value> = None;
    let label;
    if let Some(path) = &a.complex_file {
        label = path.display().to_string();
        let c = format::complex_from_json(&read_file(path)?)?;
        checks.push(("gradings and curvature".to_string(), c.validate().map_err(|e| e.to_string())));
        emitted = Some(serde_json::to_value(format::ComplexJson::from_complex(&c)).expect("serializable"));
    } else if let Some(b) = &a.braid {
        label = b.clone();
        let d = BraidDiagram::parse(b)?;
        let mode = a.sln.map_or(Mode::Homfly, Mode::Sln);
        for flavor in [Flavor::Middle, Flavor::Reduced, Flavor::Unreduced] {
            let k = kr_complex(&d, flavor, mode)?;
            let res = k.complex.validate().and_then(|_| curvature(&k.complex).map(|_| ())).map_err(|e| e.to_string());
            checks.push((format!("{} complex squares to its potential", flavor_name(flavor)), res));
            if flavor == Flavor::Reduced {
                emitted = Some(serde_json::to_value(format::ComplexJson::from_complex(&k.complex)).expect("serializable"));
            }
        }
    } else if a.knot.is_some() || a.alexander_exponents.is_some() || a.file.is_some() {
        let (l, m) = load_master(&a.knot, &a.alexander_exponents, &a.file)?;
        label = l;
        checks.push(("master complex: gradings, matchings, curvature".to_string(), validate_master(&m).map_err(|e| e.to_string())));
        let res = curvature(&m.complex).and_then(|w| {
            if w == m.expected_curvature() {
                Ok(())
            } else {
                Err(Error::InvalidMaster(format!("d^2 = {w}, expected {}", m.expected_curvature())))
            }
        });
        checks.push(("d^2 = sum (U_a(i) - U_b(i)) V_i".to_string(), res.map_err(|e| e.to_string())));
        emitted = Some(serde_json::to_value(format::MasterJson::from_master(&m)).expect("serializable"));
    } else {
        return Err(Error::InvalidArgument(
            "give one of --knot, --alexander-exponents, --file, --complex-file, --braid".to_string(),
        ));
    }
    let ok = checks.iter().all(|(_, r)| r.is_ok());
    let text = if json {
        let list: Vec<serde_json::Value> =
            checks.iter().map(|(name, r)| json!({ "check": name, "ok": r.is_ok(), "error": r.as_ref().err() })).collect();
        let mut doc = json!({ "input": label, "valid": ok, "checks": list });
        if a.emit {
            doc["complex"] = emitted.unwrap_or(serde_json::Value::Null);
        }
        json_text(&doc)
    } else {
        let mut t = format!("input: {label}\n");
        for (name, r) in &checks {
            match r {
                Ok(()) => t += &format!("ok    {name}\n"),
                Err(e) => t += &format!("FAIL  {name}: {e}\n"),
            }
        }
        if a.emit {
            if let Some(e) = &emitted {
                t += &json_text(e);
            }
        }
        t
    };
    Ok(Outcome { text, ok })
}
