//! Command-line front end: table listings, family classification, fiber
//! analysis, the dual bijections and the verification suites.
//!
//! Every command produces a JSON value (keys sorted, rationals as canonical
//! strings) and a plain-text rendering of the same data.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sl2fam_core::duals::{characterize_bijections, eta, is_tempered, CandidateMap, Characterization, DualAtlas, Report};
use sl2fam_core::families::FamilyDescriptor;
use sl2fam_core::fiber::{factor_containing_m, jantzen_quotient_formula, reducibility_points, Domain, ReducibilityPoint};
use sl2fam_core::pbw::BasisKind;
use sl2fam_core::tables::{table_json, Table};
use sl2fam_core::verify::{claim, Grid, Suite};
use sl2fam_core::{evaluate_fiber, GaussianRational as Gr, ModuleFamily, ProjectivePoint};
use thiserror::Error;

/// Environment variable naming the default grid profile.
pub const GRID_ENV: &str = "SL2FAM_GRID";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read family descriptor {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid family descriptor: {0}")]
    Descriptor(String),
    #[error("unknown grid profile or level list: {0}")]
    Grid(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "sl2fam", version, about = "Families of Harish-Chandra modules for SL(2,R) over the projective line")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the rows of table 1 (families), 2 (group dual) or 3 (motion dual).
    Tables {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Bound on |m|.
        #[arg(long = "M", default_value_t = 6)]
        max_m: i64,
        /// Comma-separated levels; adds classified parameter instances.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Group fiber used for instances of table 2.
        #[arg(long = "R", default_value = "1", allow_hyphen_values = true)]
        big_r: Gr,
    },
    /// Validate a family and report its invariants.
    Classify {
        /// Path to a JSON descriptor, or the descriptor inline.
        #[arg(long)]
        family: String,
        /// Largest wall index searched for reducibility points.
        #[arg(long, default_value_t = 12)]
        k_max: i64,
    },
    /// Composition factors and Jantzen quotients of fibers.
    Analyze {
        #[arg(long)]
        family: String,
        /// Points r (or `R=...`, `[a:b]`, `inf`), comma separated or repeated.
        #[arg(long = "point", required = true, value_delimiter = ',', allow_hyphen_values = true)]
        points: Vec<ProjectivePoint>,
    },
    /// The bijection eta^R from the motion dual to the group dual at R.
    Bijection {
        #[arg(long = "R", allow_hyphen_values = true)]
        big_r: Gr,
        #[arg(long = "M", default_value_t = 6)]
        max_m: i64,
        /// Comma-separated motion levels.
        #[arg(long, allow_hyphen_values = true, default_value = "0,1,-1,2,-2,4,-4,-9/4,3,8,15")]
        grid: String,
        /// Characterize the uniform candidate `z -> a z + b` given as `a,b`
        /// instead of eta^R itself.
        #[arg(long, allow_hyphen_values = true)]
        candidate: Option<String>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Grid profile (standard, small, wide) or a comma-separated list of
        /// dual levels replacing those of the standard profile.
        #[arg(long, env = GRID_ENV, default_value = "standard", allow_hyphen_values = true)]
        grid: String,
        /// Radii for the bijection suite.
        #[arg(long = "R", value_delimiter = ',', default_value = "1,2,1/2,3", allow_hyphen_values = true)]
        radii: Vec<Gr>,
        /// Bound on |m| for the duals.
        #[arg(long = "M")]
        max_m: Option<i64>,
        /// Largest power of the Casimir for the order and regularity suites.
        #[arg(long, default_value_t = 3)]
        n: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    /// Jantzen quotients agree with the closed formula.
    #[value(name = "conjecture2")]
    Jantzen,
    Fibers,
    Bijection,
    /// Order of the Harish-Chandra projection of Casimir powers.
    #[value(name = "appendix")]
    Order,
    Regularity,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Jantzen => vec![Suite::Jantzen],
            SuiteArg::Fibers => vec![Suite::Fibers],
            SuiteArg::Bijection => vec![Suite::Bijection],
            SuiteArg::Order => vec![Suite::OrderInequality],
            SuiteArg::Regularity => vec![Suite::Regularity],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

/// Result of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Tables {
            which,
            max_m,
            grid,
            big_r,
        } => {
            let levels = grid.as_deref().map(parse_levels).transpose()?;
            cmd_tables(*which, *max_m, levels.as_deref(), big_r)
        }
        Command::Classify { family, k_max } => Ok(cmd_classify(&load_family(family)?, *k_max)),
        Command::Analyze { family, points } => Ok(cmd_analyze(&load_family(family)?, points)),
        Command::Bijection {
            big_r,
            max_m,
            grid,
            candidate,
        } => {
            let candidate = candidate.as_deref().map(parse_candidate).transpose()?;
            cmd_bijection(big_r, *max_m, &parse_levels(grid)?, candidate)
        }
        Command::Verify {
            suite,
            grid,
            radii,
            max_m,
            n,
        } => {
            let mut g = resolve_grid(grid)?;
            if let Some(m) = max_m {
                g.dual_m_max = *m;
            }
            Ok(cmd_verify(&suite.suites(), &g, radii, *n))
        }
    }
}

/// Comma-separated scalars.
pub fn parse_levels(s: &str) -> Result<Vec<Gr>, CliError> {
    let levels: Result<Vec<Gr>, _> = s.split(',').map(|t| t.trim().parse::<Gr>()).collect();
    match levels {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(CliError::Grid(s.to_string())),
    }
}

/// A profile name, or dual levels on top of the standard profile.
pub fn resolve_grid(s: &str) -> Result<Grid, CliError> {
    if let Some(g) = Grid::profile(s.trim()) {
        return Ok(g);
    }
    let levels = parse_levels(s)?;
    Ok(Grid {
        levels,
        ..Grid::standard()
    })
}

fn parse_candidate(s: &str) -> Result<CandidateMap, CliError> {
    match parse_levels(s).ok().as_deref() {
        Some([a, b]) => Ok(CandidateMap::uniform(a.clone(), b.clone())),
        _ => Err(CliError::Usage(format!("candidate must be `a,b`, got {s:?}"))),
    }
}

/// Reads a descriptor from a path, or parses it inline when it starts
/// with `{`.
pub fn load_family(arg: &str) -> Result<ModuleFamily, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|source| CliError::Read {
            path: arg.into(),
            source,
        })?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Descriptor(e.to_string()))
}

pub fn cmd_tables(which: u8, max_m: i64, levels: Option<&[Gr]>, big_r: &Gr) -> Result<Outcome, CliError> {
    let table = Table::from_index(which).ok_or_else(|| CliError::Usage(format!("no table {which}")))?;
    if max_m < 0 {
        return Err(CliError::Usage("M must be nonnegative".into()));
    }
    let json = table_json(table, max_m, levels, big_r);
    let mut text = String::new();
    let key = if table == Table::Families { "casimir" } else { "level" };
    for row in json["rows"].as_array().into_iter().flatten() {
        let _ = write!(
            text,
            "m={:<3} {:<12} {:<14} {}={}",
            row["m"],
            plain(&row["kind"]),
            plain(&row["ktypes"]),
            key,
            plain(&row[key])
        );
        if !row["domain"].is_null() {
            let _ = write!(text, "  [{}]", plain(&row["domain"]));
        }
        text.push('\n');
    }
    for inst in json.get("instances").and_then(Value::as_array).into_iter().flatten() {
        let _ = writeln!(
            text,
            "{:<14} {:<12} {}",
            plain(&inst["param"]),
            plain(&inst["kind"]),
            plain(&inst["ktypes"])
        );
    }
    Ok(Outcome { json, text, pass: true })
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn cmd_classify(fam: &ModuleFamily, k_max: i64) -> Outcome {
    let tilde = fam.in_tilde_class();
    let compact = fam.infinitesimal_character(BasisKind::Compact);
    let split = fam.infinitesimal_character(BasisKind::Split);
    let reducibility = reducibility_points(fam, Domain::RealProjLine, k_max);
    let json = json!({
        "family": FamilyDescriptor::from(fam),
        "ktypes": fam.ktypes().notation(),
        "casimir": fam.casimir().render("r"),
        "tilde": tilde,
        "infinitesimal_character": {"compact": compact, "split": split},
        "reducibility": match &reducibility {
            Ok(r) => serde_json::to_value(r).expect("serializable"),
            Err(e) => json!({"error": e.to_string()}),
        },
    });
    let mut text = format!("{fam}\n");
    let _ = writeln!(
        text,
        "distinguished class: {}{}",
        tilde.member,
        if tilde.reasons.is_empty() {
            String::new()
        } else {
            let names: Vec<String> = tilde
                .reasons
                .iter()
                .map(|r| serde_json::to_value(r).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default())
                .collect();
            format!(" (fails: {})", names.join(", "))
        }
    );
    for ic in [&compact, &split] {
        let _ = writeln!(
            text,
            "infinitesimal character ({}): exists={} alpha0={} alpha1={}",
            ic.cartan,
            ic.exists,
            opt(&ic.alpha0),
            opt(&ic.alpha1)
        );
    }
    match &reducibility {
        Ok(r) => {
            let pts: Vec<String> = r
                .points
                .iter()
                .map(|p| match p {
                    ReducibilityPoint::Finite { r, k } => format!("r={r} (k={k})"),
                    ReducibilityPoint::Infinity => "r=inf".into(),
                })
                .collect();
            let _ = writeln!(text, "reducible at: {} (complete={})", pts.join(", "), r.complete);
        }
        Err(e) => {
            let _ = writeln!(text, "reducibility: {e}");
        }
    }
    Outcome { json, text, pass: true }
}

fn opt(x: &Option<Gr>) -> String {
    x.as_ref().map_or_else(|| "-".into(), Gr::to_string)
}

pub fn cmd_analyze(fam: &ModuleFamily, points: &[ProjectivePoint]) -> Outcome {
    let mut rows = Vec::new();
    let mut text = format!("{fam}\n");
    let mut pass = true;
    for p in points {
        let fib = evaluate_fiber(fam, p);
        let factors = fib.composition_factors();
        let containing = factor_containing_m(&fib, fam.m());
        let formula = jantzen_quotient_formula(fam, p);
        let agree = match (&containing, &formula) {
            (Ok(a), Ok(b)) => Some(a == b),
            _ => None,
        };
        pass &= agree != Some(false);
        let param_or_error = |r: &Result<sl2fam_core::DualParam, _>| match r {
            Ok(q) => json!({"param": q.to_string(), "value": q}),
            Err(e) => json!({"error": format!("{e}")}),
        };
        rows.push(json!({
            "point": p.to_string(),
            "chart": p.chart(),
            "level": fib.level().to_string(),
            "reducible": fib.is_reducible(),
            "factors": factors.params().iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "factor_segments": factors.factors,
            "truncated": factors.truncated,
            "containing_m": param_or_error(&containing),
            "formula": param_or_error(&formula),
            "agree": agree,
        }));
        let names: Vec<String> = factors.params().iter().map(|q| q.to_string()).collect();
        let _ = writeln!(
            text,
            "r={p}: {}; factors {}{}; containing m: {}; formula: {}; agree: {}",
            if fib.is_reducible() { "reducible" } else { "irreducible" },
            names.join(", "),
            if factors.truncated { ", ..." } else { "" },
            containing.as_ref().map_or_else(|e| e.to_string(), |q| q.to_string()),
            formula.as_ref().map_or_else(|e| e.to_string(), |q| q.to_string()),
            agree.map_or("n/a".to_string(), |a| a.to_string()),
        );
    }
    Outcome {
        json: json!({"family": FamilyDescriptor::from(fam), "points": rows}),
        text,
        pass,
    }
}

pub fn cmd_bijection(big_r: &Gr, max_m: i64, levels: &[Gr], candidate: Option<CandidateMap>) -> Result<Outcome, CliError> {
    let eta_coeffs = CandidateMap::of_eta(big_r).ok_or_else(|| CliError::Usage("R must be nonzero".into()))?;
    let mut map = Vec::new();
    let mut text = String::new();
    for p in DualAtlas::motion(max_m, levels.to_vec()).params() {
        let q = eta(&p, big_r).map_err(|e| CliError::Usage(e.to_string()))?;
        let _ = writeln!(text, "{p:<16} -> {q:<16} tempered={}", is_tempered(&q));
        map.push(json!({
            "from": p.to_string(),
            "to": q.to_string(),
            "tempered": is_tempered(&q),
        }));
    }
    let verdict = characterize_bijections(candidate.as_ref().unwrap_or(&eta_coeffs));
    let pass = matches!(verdict, Characterization::Matches { .. });
    let _ = writeln!(text, "characterization: {}", verdict);
    Ok(Outcome {
        json: json!({
            "R": big_r.to_string(),
            "M": max_m,
            "map": map,
            "characterization": verdict,
        }),
        text,
        pass,
    })
}

fn report_json(name: &str, rep: &Report) -> Value {
    let mut checks: std::collections::BTreeMap<&str, (usize, usize)> = Default::default();
    for e in &rep.entries {
        let c = checks.entry(e.check.as_str()).or_default();
        if e.pass {
            c.0 += 1;
        } else {
            c.1 += 1;
        }
    }
    json!({
        "suite": name,
        "pass": rep.all_pass(),
        "summary": checks
            .iter()
            .map(|(k, (p, f))| (k.to_string(), json!({"passed": p, "failed": f, "claim": claim(k)})))
            .collect::<serde_json::Map<_, _>>(),
        "entries": rep.entries.iter().map(|e| {
            let mut v = serde_json::to_value(e).expect("ok");
            if !e.pass {
                v["claim"] = json!(claim(&e.check));
            }
            v
        }).collect::<Vec<_>>(),
    })
}

pub fn cmd_verify(suites: &[Suite], grid: &Grid, radii: &[Gr], n_max: u32) -> Outcome {
    let mut results = Vec::new();
    let mut text = String::new();
    let mut pass = true;
    for &suite in suites {
        let rep = suite.run(grid, radii, n_max);
        pass &= rep.all_pass();
        let failed = rep.failures().count();
        let _ = writeln!(
            text,
            "{} {}: {} checks, {} failed",
            if rep.all_pass() { "PASS" } else { "FAIL" },
            suite.name(),
            rep.entries.len(),
            failed
        );
        for e in rep.failures() {
            let _ = writeln!(text, "  FAIL [{}] {}: {} -- {}", e.check, e.instance, e.detail, claim(&e.check));
        }
        results.push(report_json(suite.name(), &rep));
    }
    Outcome {
        json: json!({"pass": pass, "suites": results}),
        text,
        pass,
    }
}
