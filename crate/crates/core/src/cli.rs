//! Command-line front end: parse elements and job configs, dispatch the
//! library computations, emit machine-readable results.
//!
//! Subcommands: `trace`, `character`, `generating`, `scan-zeros`,
//! `work-stats`, `verify`.  Conventions shared by all of them:
//!
//! * complex numbers are `[re, im]` pairs everywhere — flags, config files
//!   and outputs alike; no string forms;
//! * every numeric result carries its convergence status, and a divergent
//!   status is never silently dropped;
//! * output is deterministic for a fixed config (JSON maps are sorted), and
//!   `--out` files are written atomically (temp file, then rename);
//! * `--config path` names a JSON file whose fields override the flags;
//! * `--seed` fixes the sampling of `verify`; the `IRREP_TRACE_THREADS`
//!   environment variable caps the linear-algebra thread pool.
//!
//! Exit codes: `0` success, `1` invalid configuration or input, `2` a
//! computation reported `DIVERGENT` (or otherwise produced no value) where a
//! value was required, `3` oracle disagreement beyond tolerance in `verify`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, Group, ProjectorFamily};
use crate::su11::{partition_function, scan_zeros, work_characteristic, ScanFunction, ScanGrid};
use crate::trace::{
    generating_trace, irrep_trace, su11_ladder_closed_form, su2_character, su3_character,
};
use crate::types::{ConvergenceStatus, IrrepLabel, C64};
use crate::verify::{verify_group, VerifySettings};
use crate::{Error, Result};

/// Entry point used by the `irrep-trace` binary.
pub fn run() -> ExitCode {
    apply_thread_cap();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Cmd::Trace(args) => run_trace(args),
        Cmd::Character(args) => run_character(args),
        Cmd::Generating(args) => run_generating(args),
        Cmd::ScanZeros(args) => run_scan(args),
        Cmd::WorkStats(args) => run_work(args),
        Cmd::Verify(args) => run_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// `IRREP_TRACE_THREADS` caps the BLAS/OpenMP pools unless they are already
/// pinned explicitly.  Must run before the first linear-algebra call.
fn apply_thread_cap() {
    if let Ok(v) = std::env::var("IRREP_TRACE_THREADS") {
        for key in ["OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS"] {
            if std::env::var_os(key).is_none() {
                std::env::set_var(key, &v);
            }
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_) | Error::InvalidConfig(_) | Error::Json(_) | Error::Io(_) => 1,
        _ => 2,
    }
}

#[derive(Parser)]
#[command(
    name = "irrep-trace",
    version,
    about = "Traces of exponentiated boson bilinears over irreducible subspaces",
    after_help = "Complex values are [re, im] pairs. Exit codes: 0 ok, 1 invalid \
                  config, 2 required value diverged, 3 verify disagreement."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form trace of e^{x̂} over chosen irreducible subspaces.
    Trace(TraceArgs),
    /// Characters evaluated from spectral data (ε or an eigenvalue triple).
    Character(CharacterArgs),
    /// Weighted generating trace (branch-tracked determinant formula).
    Generating(GeneratingArgs),
    /// Scan a complex-parameter rectangle for zeros/poles by phase winding.
    ScanZeros(ScanArgs),
    /// Work characteristic function of a quench, with a Jarzynski check.
    WorkStats(WorkArgs),
    /// Randomized closed-form-vs-oracle verification.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SharedIo {
    /// JSON job-config file; its fields override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (written atomically); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    io: SharedIo,
    /// Algebra: su2 | su3 | su11 (optional when the element JSON carries it).
    #[arg(long)]
    group: Option<String>,
    /// Element as inline JSON ({"group":..,"coeffs":{..}} or a bare
    /// coefficient map) or @path to a JSON file.
    #[arg(long)]
    element: Option<String>,
    /// Irrep label (repeatable): 2j=4 | p=1,q=2 | k=1.5,sign=-
    #[arg(long = "irrep")]
    irreps: Vec<String>,
}

#[derive(Args)]
struct CharacterArgs {
    #[command(flatten)]
    io: SharedIo,
    /// Algebra: su2 | su3 | su11.
    #[arg(long)]
    group: Option<String>,
    /// Designated eigenvalue [re, im] (su2 and su11).
    #[arg(long)]
    eps: Option<String>,
    /// Eigenvalue triple [[re,im],[re,im],[re,im]] (su3).
    #[arg(long)]
    eigs: Option<String>,
    /// Irrep label (repeatable).
    #[arg(long = "irrep")]
    irreps: Vec<String>,
}

#[derive(Args)]
struct GeneratingArgs {
    #[command(flatten)]
    io: SharedIo,
    /// Algebra: su2 | su3 | su11 (optional when the element JSON carries it).
    #[arg(long)]
    group: Option<String>,
    /// Element as inline JSON or @path.
    #[arg(long)]
    element: Option<String>,
    /// Projector variable [re, im]; one value (su2, su11) or two (su3).
    #[arg(long = "t")]
    t: Vec<String>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    io: SharedIo,
    /// Scanned function: partition (complex inverse temperature) or work
    /// (complex time argument).
    #[arg(long)]
    function: Option<String>,
    /// Bargmann index k > 0.
    #[arg(long)]
    k: Option<f64>,
    /// Hamiltonian element for a partition scan (inline JSON or @path).
    #[arg(long)]
    element: Option<String>,
    /// Initial Hamiltonian for a work scan.
    #[arg(long = "h-initial")]
    h_initial: Option<String>,
    /// Final Hamiltonian for a work scan.
    #[arg(long = "h-final")]
    h_final: Option<String>,
    /// Inverse temperature of the initial Gibbs state (work scan).
    #[arg(long)]
    beta: Option<f64>,
    /// Rectangle re_min,re_max,im_min,im_max.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Grid resolution: N or NX,NY.
    #[arg(long)]
    res: Option<String>,
    /// Output format: csv (default) or json summary.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct WorkArgs {
    #[command(flatten)]
    io: SharedIo,
    /// Bargmann index k > 0.
    #[arg(long)]
    k: Option<f64>,
    /// Initial Hamiltonian (inline JSON or @path).
    #[arg(long = "h-initial")]
    h_initial: Option<String>,
    /// Final Hamiltonian.
    #[arg(long = "h-final")]
    h_final: Option<String>,
    /// Inverse temperature β > 0.
    #[arg(long)]
    beta: Option<f64>,
    /// Time argument [re, im] (repeatable); χ(u) is reported per value.
    #[arg(long = "u")]
    u: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    io: SharedIo,
    /// Algebra: su2 | su3 | su11.
    #[arg(long)]
    group: Option<String>,
    /// Number of random elements (defaults: su2 50, su3 30, su11 30).
    #[arg(long)]
    samples: Option<usize>,
    /// su(1,1) oracle ladder height (default 300).
    #[arg(long = "nmax")]
    n_max: Option<usize>,
    /// Alias for the su(1,1) ladder height, kept for symmetry with the
    /// library's `m_max` naming; `--nmax` wins when both are given.
    #[arg(long = "mmax")]
    m_max: Option<usize>,
    /// Relative agreement threshold (defaults: 1e-9 for su2/su3, 1e-6 for
    /// su11).
    #[arg(long = "tol")]
    tolerance: Option<f64>,
    /// RNG seed for the sampling.
    #[arg(long)]
    seed: Option<u64>,
}

/// One job, fully described: the union of every subcommand's parameters.
/// A `--config` JSON file deserializes into this and overrides the flags.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub group: Option<String>,
    pub element: Option<Value>,
    pub h_initial: Option<Value>,
    pub h_final: Option<Value>,
    pub irreps: Vec<String>,
    pub t: Vec<[f64; 2]>,
    pub eps: Option<[f64; 2]>,
    pub eigs: Option<Vec<[f64; 2]>>,
    pub k: Option<f64>,
    pub beta: Option<f64>,
    pub u: Vec<[f64; 2]>,
    pub function: Option<String>,
    pub grid: Option<[f64; 4]>,
    pub res: Option<[usize; 2]>,
    pub samples: Option<usize>,
    pub n_max: Option<usize>,
    pub m_max: Option<usize>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

impl JobConfig {
    /// Fill every unset field of `self` (the config file) from `flags`.
    fn overlaid_on(mut self, flags: JobConfig) -> JobConfig {
        macro_rules! keep {
            ($($field:ident),*) => {
                $(if self.$field.is_none() { self.$field = flags.$field; })*
            };
        }
        keep!(
            group, element, h_initial, h_final, eps, eigs, k, beta, function, grid, res,
            samples, n_max, m_max, tolerance, seed, format, out
        );
        if self.irreps.is_empty() {
            self.irreps = flags.irreps;
        }
        if self.t.is_empty() {
            self.t = flags.t;
        }
        if self.u.is_empty() {
            self.u = flags.u;
        }
        self
    }

    fn validate(&self) -> Result<()> {
        if let Some(tol) = self.tolerance {
            if !(tol > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "tolerance must be positive, got {tol}"
                )));
            }
        }
        Ok(())
    }
}

/// Merge flag-level config with an optional `--config` file (file wins).
fn load_config(flags: JobConfig, path: &Option<PathBuf>) -> Result<JobConfig> {
    let merged = match path {
        None => flags,
        Some(p) => {
            let text = std::fs::read_to_string(p)?;
            let file: JobConfig = serde_json::from_str(&text)?;
            file.overlaid_on(flags)
        }
    };
    merged.validate()?;
    Ok(merged)
}

// ---------------------------------------------------------------------------
// parsing helpers
// ---------------------------------------------------------------------------

fn parse_group(s: &str) -> Result<Group> {
    match s.to_ascii_lowercase().as_str() {
        "su2" => Ok(Group::Su2),
        "su3" => Ok(Group::Su3),
        "su11" => Ok(Group::Su11),
        other => Err(Error::InvalidConfig(format!(
            "unknown group '{other}' (expected su2, su3 or su11)"
        ))),
    }
}

fn parse_group_opt(s: &Option<String>) -> Result<Option<Group>> {
    s.as_deref().map(parse_group).transpose()
}

fn parse_pair(s: &str) -> Result<[f64; 2]> {
    serde_json::from_str::<[f64; 2]>(s)
        .map_err(|e| Error::InvalidConfig(format!("expected a [re, im] pair, got '{s}': {e}")))
}

fn pair_to_c64(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

fn c64_to_pair(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Resolve `@path` indirection and parse the element JSON text into a value.
fn element_value(raw: &str) -> Result<Value> {
    let text = match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => raw.to_string(),
    };
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidConfig(format!("element is not valid JSON: {e}")))
}

/// Build an element from its JSON form: either the full
/// `{"group": .., "coeffs": {..}}` object or a bare coefficient map plus a
/// `--group` hint.  Coefficients are `[re, im]` pairs keyed by generator name.
fn element_from_value(value: &Value, group_hint: Option<Group>) -> Result<AlgebraElement> {
    let obj = value.as_object().ok_or_else(|| {
        Error::InvalidConfig("element must be a JSON object of coefficients".into())
    })?;
    if obj.contains_key("group") {
        let x = AlgebraElement::from_json(&value.to_string())?;
        if let Some(hint) = group_hint {
            if hint != x.group() {
                return Err(Error::InvalidConfig(format!(
                    "--group {hint} contradicts the element's group {}",
                    x.group()
                )));
            }
        }
        return Ok(x);
    }
    let group = group_hint.ok_or_else(|| {
        Error::InvalidConfig("a bare coefficient map needs --group to name the algebra".into())
    })?;
    let mut pairs: Vec<(String, C64)> = Vec::with_capacity(obj.len());
    for (name, v) in obj {
        let pair: [f64; 2] = serde_json::from_value(v.clone()).map_err(|e| {
            Error::InvalidConfig(format!("coefficient '{name}' must be [re, im]: {e}"))
        })?;
        pairs.push((name.clone(), pair_to_c64(pair)));
    }
    let borrowed: Vec<(&str, C64)> = pairs.iter().map(|(n, c)| (n.as_str(), *c)).collect();
    AlgebraElement::from_named(group, &borrowed)
}

fn required_element(
    value: &Option<Value>,
    group_hint: Option<Group>,
    what: &str,
) -> Result<AlgebraElement> {
    let v = value
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig(format!("missing required element: {what}")))?;
    element_from_value(v, group_hint)
}

/// Parse an irrep label: `2j=N` (su2), `p=P,q=Q` (su3) or `k=K[,sign=±|0]`
/// (su11; the sign defaults to 0 for k = 1/2 and + otherwise).
pub fn parse_irrep_label(text: &str) -> Result<IrrepLabel> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for part in compact.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("irrep label part '{part}' is not key=value"))
        })?;
        if fields.insert(key, value).is_some() {
            return Err(Error::InvalidInput(format!("duplicate key '{key}' in label '{text}'")));
        }
    }
    let keys: Vec<&str> = fields.keys().copied().collect();
    let parse_u32 = |key: &str| -> Result<u32> {
        fields[key]
            .parse::<u32>()
            .map_err(|_| Error::InvalidInput(format!("'{}' is not a small integer", fields[key])))
    };
    match keys.as_slice() {
        ["2j"] => Ok(IrrepLabel::Su2 { two_j: parse_u32("2j")? }),
        ["p", "q"] => Ok(IrrepLabel::Su3 { p: parse_u32("p")?, q: parse_u32("q")? }),
        ["k"] | ["k", "sign"] => {
            let k: f64 = fields["k"]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("'{}' is not a number", fields["k"])))?;
            let sign = match fields.get("sign") {
                None => {
                    if (2.0 * k - 1.0).abs() < 1e-9 {
                        0
                    } else {
                        1
                    }
                }
                Some(&"+") | Some(&"+1") | Some(&"1") => 1,
                Some(&"-") | Some(&"-1") => -1,
                Some(&"0") => 0,
                Some(other) => {
                    return Err(Error::InvalidInput(format!(
                        "sign must be one of +, -, 0; got '{other}'"
                    )))
                }
            };
            crate::algebra::su11_exponent(k, sign)?;
            Ok(IrrepLabel::Su11 { k, sign })
        }
        _ => Err(Error::InvalidInput(format!(
            "unrecognized irrep label '{text}' (expected 2j=N, p=P,q=Q, or k=K[,sign=±|0])"
        ))),
    }
}

/// Canonical, re-parseable text form of a label (used in outputs).
pub fn label_text(label: &IrrepLabel) -> String {
    match label {
        IrrepLabel::Su2 { two_j } => format!("2j={two_j}"),
        IrrepLabel::Su3 { p, q } => format!("p={p},q={q}"),
        IrrepLabel::Su11 { k, sign } => {
            let s = match sign {
                1 => "+",
                -1 => "-",
                _ => "0",
            };
            format!("k={k},sign={s}")
        }
    }
}

fn label_group(label: &IrrepLabel) -> Group {
    match label {
        IrrepLabel::Su2 { .. } => Group::Su2,
        IrrepLabel::Su3 { .. } => Group::Su3,
        IrrepLabel::Su11 { .. } => Group::Su11,
    }
}

fn parse_labels(raw: &[String], group: Group) -> Result<Vec<IrrepLabel>> {
    if raw.is_empty() {
        return Err(Error::InvalidConfig("at least one --irrep label is required".into()));
    }
    raw.iter()
        .map(|s| {
            let label = parse_irrep_label(s)?;
            if label_group(&label) != group {
                return Err(Error::InvalidConfig(format!(
                    "label '{s}' does not belong to {group}"
                )));
            }
            Ok(label)
        })
        .collect()
}

fn status_value(status: ConvergenceStatus) -> Value {
    serde_json::to_value(status).expect("status serializes")
}

fn element_echo(x: &AlgebraElement) -> Value {
    serde_json::from_str(&x.to_json()).expect("element JSON round-trips")
}

/// Print to stdout, or write atomically (`<path>.tmp`, then rename).
fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => {
            let mut tmp_name = path.clone().into_os_string();
            tmp_name.push(".tmp");
            let tmp = PathBuf::from(tmp_name);
            std::fs::write(&tmp, format!("{content}\n"))?;
            std::fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, value: &Value) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(value)?)
}

fn json_only_format(format: &Option<String>) -> Result<()> {
    match format.as_deref() {
        None | Some("json") => Ok(()),
        Some(other) => {
            Err(Error::InvalidConfig(format!("this command only emits json, not '{other}'")))
        }
    }
}

fn finish(missing_value: bool) -> ExitCode {
    if missing_value {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

fn run_trace(args: TraceArgs) -> Result<ExitCode> {
    let flags = JobConfig {
        group: args.group,
        element: args.element.as_deref().map(element_value).transpose()?,
        irreps: args.irreps,
        out: args.io.out,
        ..JobConfig::default()
    };
    let cfg = load_config(flags, &args.io.config)?;
    json_only_format(&cfg.format)?;
    let hint = parse_group_opt(&cfg.group)?;
    let x = required_element(&cfg.element, hint, "--element")?;
    let labels = parse_labels(&cfg.irreps, x.group())?;

    let mut missing = false;
    let mut results = Vec::new();
    for label in &labels {
        match irrep_trace(&x, label) {
            Ok(v) => results.push(json!({
                "irrep": label_text(label),
                "value": c64_to_pair(v),
                "status": status_value(ConvergenceStatus::Convergent),
            })),
            Err(Error::Divergent(detail)) => {
                missing = true;
                results.push(json!({
                    "irrep": label_text(label),
                    "status": status_value(ConvergenceStatus::Divergent),
                    "detail": detail,
                }));
            }
            Err(e) => return Err(e),
        }
    }
    emit_json(
        &cfg.out,
        &json!({
            "command": "trace",
            "group": x.group(),
            "element": element_echo(&x),
            "results": results,
        }),
    )?;
    Ok(finish(missing))
}

fn run_character(args: CharacterArgs) -> Result<ExitCode> {
    let flags = JobConfig {
        group: args.group,
        eps: args.eps.as_deref().map(parse_pair).transpose()?,
        eigs: args
            .eigs
            .as_deref()
            .map(|s| {
                serde_json::from_str::<Vec<[f64; 2]>>(s).map_err(|e| {
                    Error::InvalidConfig(format!("--eigs must be [[re,im],..]: {e}"))
                })
            })
            .transpose()?,
        irreps: args.irreps,
        out: args.io.out,
        ..JobConfig::default()
    };
    let cfg = load_config(flags, &args.io.config)?;
    json_only_format(&cfg.format)?;
    let group = parse_group_opt(&cfg.group)?
        .ok_or_else(|| Error::InvalidConfig("character needs --group".into()))?;
    let labels = parse_labels(&cfg.irreps, group)?;

    let need_eps = || -> Result<C64> {
        let eps = pair_to_c64(
            cfg.eps.ok_or_else(|| Error::InvalidConfig("missing --eps [re, im]".into()))?,
        );
        if !eps.is_finite() || eps.norm() == 0.0 {
            return Err(Error::InvalidInput("ε must be finite and nonzero".into()));
        }
        Ok(eps)
    };

    let mut missing = false;
    let mut results = Vec::new();
    let mut spectral = serde_json::Map::new();
    match group {
        Group::Su2 => {
            let eps = need_eps()?;
            spectral.insert("eps".into(), c64_to_pair(eps));
            for label in &labels {
                let IrrepLabel::Su2 { two_j } = label else { unreachable!() };
                let v = su2_character(eps, *two_j);
                results.push(json!({
                    "irrep": label_text(label),
                    "value": c64_to_pair(v),
                    "status": status_value(ConvergenceStatus::Convergent),
                }));
            }
        }
        Group::Su3 => {
            let pairs = cfg
                .eigs
                .clone()
                .ok_or_else(|| Error::InvalidConfig("missing --eigs [[re,im],..]".into()))?;
            if pairs.len() != 3 {
                return Err(Error::InvalidConfig(format!(
                    "su3 needs exactly three eigenvalues, got {}",
                    pairs.len()
                )));
            }
            let eigs: Vec<C64> = pairs.into_iter().map(pair_to_c64).collect();
            if eigs.iter().any(|z| !z.is_finite() || z.norm() == 0.0) {
                return Err(Error::InvalidInput("eigenvalues must be finite and nonzero".into()));
            }
            spectral.insert("eigs".into(), json!(eigs.iter().map(|z| c64_to_pair(*z)).collect::<Vec<_>>()));
            for label in &labels {
                let IrrepLabel::Su3 { p, q } = label else { unreachable!() };
                let v = su3_character(&eigs, *p, *q);
                results.push(json!({
                    "irrep": label_text(label),
                    "value": c64_to_pair(v),
                    "status": status_value(ConvergenceStatus::Convergent),
                }));
            }
        }
        Group::Su11 => {
            let eps = need_eps()?;
            spectral.insert("eps".into(), c64_to_pair(eps));
            for label in &labels {
                let IrrepLabel::Su11 { k, .. } = label else { unreachable!() };
                match su11_ladder_closed_form(eps, *k) {
                    Ok(v) => results.push(json!({
                        "irrep": label_text(label),
                        "value": c64_to_pair(v),
                        "status": status_value(ConvergenceStatus::Convergent),
                    })),
                    Err(Error::Divergent(detail)) => {
                        missing = true;
                        results.push(json!({
                            "irrep": label_text(label),
                            "status": status_value(ConvergenceStatus::Divergent),
                            "detail": detail,
                        }));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }

    let mut output = json!({
        "command": "character",
        "group": group,
        "results": results,
    });
    output.as_object_mut().expect("object").append(&mut spectral);
    emit_json(&cfg.out, &output)?;
    Ok(finish(missing))
}

fn run_generating(args: GeneratingArgs) -> Result<ExitCode> {
    let flags = JobConfig {
        group: args.group,
        element: args.element.as_deref().map(element_value).transpose()?,
        t: args.t.iter().map(|s| parse_pair(s)).collect::<Result<Vec<_>>>()?,
        out: args.io.out,
        ..JobConfig::default()
    };
    let cfg = load_config(flags, &args.io.config)?;
    json_only_format(&cfg.format)?;
    let hint = parse_group_opt(&cfg.group)?;
    let x = required_element(&cfg.element, hint, "--element")?;
    let want = ProjectorFamily::new(x.group()).num_vars();
    if cfg.t.len() != want {
        return Err(Error::InvalidConfig(format!(
            "{} takes {want} projector variable(s), got {}",
            x.group(),
            cfg.t.len()
        )));
    }
    let t: Vec<C64> = cfg.t.iter().map(|&p| pair_to_c64(p)).collect();

    let outcome = generating_trace(&x, &t)?;
    let mut body = json!({
        "command": "generating",
        "group": x.group(),
        "element": element_echo(&x),
        "t": t.iter().map(|z| c64_to_pair(*z)).collect::<Vec<_>>(),
        "status": status_value(outcome.status),
        "branch_refinements": outcome.branch_refinements,
    });
    let obj = body.as_object_mut().expect("object");
    if let Some(v) = outcome.value {
        obj.insert("value".into(), c64_to_pair(v));
    }
    if let Some(detail) = &outcome.detail {
        obj.insert("detail".into(), json!(detail));
    }
    emit_json(&cfg.out, &body)?;
    Ok(finish(!outcome.status.has_value()))
}

fn run_scan(args: ScanArgs) -> Result<ExitCode> {
    let parse_grid = |s: &str| -> Result<[f64; 4]> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidConfig(format!("--grid must be four numbers, got '{s}'")))?;
        parts.try_into().map_err(|_| {
            Error::InvalidConfig("--grid needs re_min,re_max,im_min,im_max".into())
        })
    };
    let parse_res = |s: &str| -> Result<[usize; 2]> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidConfig(format!("--res must be N or NX,NY, got '{s}'")))?;
        match parts.as_slice() {
            [n] => Ok([*n, *n]),
            [nx, ny] => Ok([*nx, *ny]),
            _ => Err(Error::InvalidConfig("--res must be N or NX,NY".into())),
        }
    };
    let flags = JobConfig {
        function: args.function,
        k: args.k,
        element: args.element.as_deref().map(element_value).transpose()?,
        h_initial: args.h_initial.as_deref().map(element_value).transpose()?,
        h_final: args.h_final.as_deref().map(element_value).transpose()?,
        beta: args.beta,
        grid: args.grid.as_deref().map(parse_grid).transpose()?,
        res: args.res.as_deref().map(parse_res).transpose()?,
        format: args.format,
        out: args.io.out,
        ..JobConfig::default()
    };
    let cfg = load_config(flags, &args.io.config)?;

    let k = cfg.k.ok_or_else(|| Error::InvalidConfig("scan-zeros needs --k".into()))?;
    let function = match cfg.function.as_deref().unwrap_or("partition") {
        "partition" => ScanFunction::Partition {
            k,
            hamiltonian: required_element(&cfg.element, Some(Group::Su11), "--element")?,
        },
        "work" => ScanFunction::WorkCharacteristic {
            k,
            h_i: required_element(&cfg.h_initial, Some(Group::Su11), "--h-initial")?,
            h_f: required_element(&cfg.h_final, Some(Group::Su11), "--h-final")?,
            beta: cfg
                .beta
                .ok_or_else(|| Error::InvalidConfig("work scan needs --beta".into()))?,
        },
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown scan function '{other}' (expected partition or work)"
            )))
        }
    };
    let [re_min, re_max, im_min, im_max] =
        cfg.grid.ok_or_else(|| Error::InvalidConfig("scan-zeros needs --grid".into()))?;
    let [nx, ny] =
        cfg.res.ok_or_else(|| Error::InvalidConfig("scan-zeros needs --res".into()))?;
    let grid = ScanGrid { re: (re_min, re_max), im: (im_min, im_max), nx, ny };

    let report = scan_zeros(function, &grid)?;
    match cfg.format.as_deref().unwrap_or("csv") {
        "csv" => emit(&cfg.out, report.to_csv().trim_end())?,
        "json" => emit(&cfg.out, &report.summary_json())?,
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown format '{other}' (expected csv or json)"
            )))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_work(args: WorkArgs) -> Result<ExitCode> {
    let flags = JobConfig {
        k: args.k,
        h_initial: args.h_initial.as_deref().map(element_value).transpose()?,
        h_final: args.h_final.as_deref().map(element_value).transpose()?,
        beta: args.beta,
        u: args.u.iter().map(|s| parse_pair(s)).collect::<Result<Vec<_>>>()?,
        out: args.io.out,
        ..JobConfig::default()
    };
    let cfg = load_config(flags, &args.io.config)?;
    json_only_format(&cfg.format)?;
    let k = cfg.k.ok_or_else(|| Error::InvalidConfig("work-stats needs --k".into()))?;
    let beta = cfg.beta.ok_or_else(|| Error::InvalidConfig("work-stats needs --beta".into()))?;
    let h_i = required_element(&cfg.h_initial, Some(Group::Su11), "--h-initial")?;
    let h_f = required_element(&cfg.h_final, Some(Group::Su11), "--h-final")?;

    // The partition functions are required values: a divergent Gibbs state is
    // a hard failure (exit 2), not a per-sample status.
    let z_i = partition_function(k, &h_i, beta)?;
    let z_f = partition_function(k, &h_f, beta)?;

    let mut missing = false;
    let mut chi_entry = |u: C64| -> Result<Value> {
        match work_characteristic(k, &h_i, &h_f, beta, u) {
            Ok(v) => Ok(json!({
                "u": c64_to_pair(u),
                "value": c64_to_pair(v),
                "status": status_value(ConvergenceStatus::Convergent),
            })),
            Err(Error::Divergent(detail)) => {
                missing = true;
                Ok(json!({
                    "u": c64_to_pair(u),
                    "status": status_value(ConvergenceStatus::Divergent),
                    "detail": detail,
                }))
            }
            Err(e) => Err(e),
        }
    };

    let mut samples = Vec::new();
    for &pair in &cfg.u {
        samples.push(chi_entry(pair_to_c64(pair))?);
    }
    // Jarzynski identity: χ at the imaginary argument iβ equals Z_f/Z_i.
    let jarzynski = {
        let u = C64::new(0.0, beta);
        let entry = chi_entry(u)?;
        let ratio = C64::new(z_f / z_i, 0.0);
        let mut obj = serde_json::Map::new();
        obj.insert("zf_over_zi".into(), c64_to_pair(ratio));
        obj.insert("chi_at_i_beta".into(), entry["value"].clone());
        obj.insert("status".into(), entry["status"].clone());
        if let Some(v) = entry.get("value").and_then(|v| v.as_array()) {
            let chi = C64::new(v[0].as_f64().unwrap_or(f64::NAN), v[1].as_f64().unwrap_or(f64::NAN));
            obj.insert("residual".into(), json!((chi - ratio).norm()));
        }
        Value::Object(obj)
    };

    emit_json(
        &cfg.out,
        &json!({
            "command": "work-stats",
            "k": k,
            "beta": beta,
            "h_initial": element_echo(&h_i),
            "h_final": element_echo(&h_f),
            "z_initial": z_i,
            "z_final": z_f,
            "samples": samples,
            "jarzynski": jarzynski,
        }),
    )?;
    Ok(finish(missing))
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode> {
    let flags = JobConfig {
        group: args.group,
        samples: args.samples,
        n_max: args.n_max,
        m_max: args.m_max,
        tolerance: args.tolerance,
        seed: args.seed,
        out: args.io.out,
        ..JobConfig::default()
    };
    let cfg = load_config(flags, &args.io.config)?;
    json_only_format(&cfg.format)?;
    let group = parse_group_opt(&cfg.group)?
        .ok_or_else(|| Error::InvalidConfig("verify needs --group".into()))?;

    let mut settings = VerifySettings::for_group(group);
    if let Some(s) = cfg.samples {
        settings.samples = s;
    }
    if let Some(n) = cfg.n_max.or(cfg.m_max) {
        settings.n_max = n;
    }
    if let Some(tol) = cfg.tolerance {
        settings.tolerance = tol;
    }
    if let Some(seed) = cfg.seed {
        settings.seed = seed;
    }

    let report = verify_group(&settings)?;
    let passed = report.passed();
    let mut body = serde_json::to_value(&report)?;
    let obj = body.as_object_mut().expect("report is an object");
    obj.insert("command".into(), json!("verify"));
    obj.insert("passed".into(), json!(passed));
    emit_json(&cfg.out, &body)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_parse_and_round_trip() {
        let cases = [
            ("2j=4", IrrepLabel::Su2 { two_j: 4 }),
            ("p=1,q=2", IrrepLabel::Su3 { p: 1, q: 2 }),
            ("k=0.5", IrrepLabel::Su11 { k: 0.5, sign: 0 }),
            ("k=1.5", IrrepLabel::Su11 { k: 1.5, sign: 1 }),
            ("k=1.5,sign=-", IrrepLabel::Su11 { k: 1.5, sign: -1 }),
            ("k=2,sign=+", IrrepLabel::Su11 { k: 2.0, sign: 1 }),
        ];
        for (text, want) in cases {
            let got = parse_irrep_label(text).unwrap();
            assert_eq!(got, want, "parsing '{text}'");
            assert_eq!(parse_irrep_label(&label_text(&got)).unwrap(), want);
        }
    }

    #[test]
    fn bad_labels_are_rejected() {
        for text in ["", "j=4", "2j=-1", "p=1", "k=0.5,sign=+", "k=1.5,sign=2", "2j=4,q=1"] {
            assert!(parse_irrep_label(text).is_err(), "'{text}' should not parse");
        }
    }

    #[test]
    fn bare_coefficient_map_needs_group() {
        let value: Value = serde_json::from_str(r#"{"J3":[0.0,0.5]}"#).unwrap();
        assert!(element_from_value(&value, None).is_err());
        let x = element_from_value(&value, Some(Group::Su2)).unwrap();
        assert_eq!(x.group(), Group::Su2);
        assert_eq!(x.coeff_by_name("J3").unwrap(), C64::new(0.0, 0.5));
    }

    #[test]
    fn full_element_json_ignores_matching_hint_and_rejects_conflicts() {
        let value: Value =
            serde_json::from_str(r#"{"group":"su11","coeffs":{"K3":[-1.0,0.0]}}"#).unwrap();
        assert!(element_from_value(&value, Some(Group::Su11)).is_ok());
        assert!(element_from_value(&value, Some(Group::Su2)).is_err());
    }

    #[test]
    fn config_file_overrides_flags() {
        let flags = JobConfig {
            samples: Some(50),
            seed: Some(1),
            ..JobConfig::default()
        };
        let file: JobConfig = serde_json::from_str(r#"{"samples": 2}"#).unwrap();
        let merged = file.overlaid_on(flags);
        assert_eq!(merged.samples, Some(2));
        assert_eq!(merged.seed, Some(1));
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        assert!(serde_json::from_str::<JobConfig>(r#"{"samplez": 2}"#).is_err());
        assert!(load_config(JobConfig { tolerance: Some(-1.0), ..Default::default() }, &None)
            .is_err());
    }
}
