use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chbound_core::audit::{run_check, GridSpec, SummaryRow, CHECK_NAMES};
use chbound_core::bounds::{gstar, min_surface_genus, pi0, sharpness_status, validate_params};
use chbound_core::extremal::assemble_extremal_genus;
use chbound_core::hilbert::{first_difference, genus_sum, h_from_h1_profile, h_model};
use chbound_core::surface::{regularity_bound, surface_genus, surface_genus_range};
use chbound_core::{
    ConstructionData, H1Profile, HilbertFunction, Int, ParamSet, SurfaceProfile, Warning,
};
use clap::{ArgGroup, Args};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::envelope::{render_json, to_value, Envelope, Inputs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] chbound_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
}

type Result<T> = std::result::Result<T, CliError>;

/// What a command prints and whether it found a violation.
pub struct Output {
    pub text: String,
    pub violation: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            violation: false,
        }
    }
}

fn parse_int(s: &str) -> std::result::Result<Int, String> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| format!("not an integer: {s:?}"))
}

/// Comma- or whitespace-separated integers; the empty string is the empty list.
fn parse_list(s: &str) -> std::result::Result<IntList, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(parse_int)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(IntList)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<Int>);

#[derive(Debug, Clone, Copy, Args)]
pub struct FormatArgs {
    /// JSON envelope (default).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// CSV rows instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Dimension of the ambient projective space.
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    r: Int,
    /// Degree of the curve.
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    d: Int,
    /// Least degree of a surface containing the curve.
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    s: Int,
    /// Sectional genus bound of the degree-s surfaces.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_int)]
    pi: Int,
    /// Arithmetic genus floor; defaults to -binom(pi0-pi+1, 2).
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    p: Option<Int>,
    /// Turn range violations into warnings.
    #[arg(long)]
    relaxed: bool,
    #[command(flatten)]
    format: FormatArgs,
}

fn resolve_p(r: &Int, s: &Int, pi: &Int, p: Option<&Int>) -> Result<Int> {
    match p {
        Some(p) => Ok(p.clone()),
        None => Ok(min_surface_genus(s, r, pi)?),
    }
}

#[derive(Serialize)]
struct BoundRow {
    r: String,
    d: String,
    s: String,
    pi: String,
    p: String,
    m: String,
    epsilon: String,
    pi0: String,
    gstar: String,
    max_term: String,
    scroll_regime: bool,
    above_threshold: bool,
}

fn csv_text<R: Serialize>(rows: &[R]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn bound(a: &BoundArgs) -> Result<Output> {
    let p = resolve_p(&a.r, &a.s, &a.pi, a.p.as_ref())?;
    let ps = validate_params(&a.r, &a.d, &a.s, &a.pi, &p, !a.relaxed)?;
    let rep = gstar(&ps)?;
    if a.format.csv {
        let row = BoundRow {
            r: ps.r.to_string(),
            d: ps.d.to_string(),
            s: ps.s.to_string(),
            pi: ps.pi.to_string(),
            p: ps.p.to_string(),
            m: ps.m.to_string(),
            epsilon: ps.epsilon.to_string(),
            pi0: ps.pi0().to_string(),
            gstar: rep.value.to_string(),
            max_term: rep.regime.max_term.to_string(),
            scroll_regime: rep.regime.scroll_regime,
            above_threshold: rep.regime.above_threshold,
        };
        return Ok(Output::ok(csv_text(&[row])?));
    }
    // Sharpness is only stated inside the hypothesis ranges.
    let sharpness = sharpness_status(&ps.r, &ps.s, &ps.pi, &ps.p)
        .ok()
        .map_or(Value::Null, |s| to_value(&s));
    let result = json!({
        "gstar": rep.value.to_string(),
        "m": ps.m.to_string(),
        "epsilon": ps.epsilon.to_string(),
        "pi0": ps.pi0().to_string(),
        "p": ps.p.to_string(),
        "p_default": a.p.is_none(),
        "regime": to_value(&rep.regime),
        "sharpness": sharpness,
    });
    let inputs = Inputs::default()
        .num("r", &a.r)
        .num("d", &a.d)
        .num("s", &a.s)
        .num("pi", &a.pi)
        .opt_num("p", a.p.as_ref())
        .flag("relaxed", a.relaxed)
        .finish();
    let env = Envelope::new("bound", inputs, result).with_warnings(&ps.warnings);
    Ok(Output::ok(env.render()))
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    r: Int,
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    d: Int,
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    s: Int,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_int)]
    pi: Int,
    /// File with h1(1), h1(2), ... as a JSON array or comma-separated list.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Add the first difference column.
    #[arg(long)]
    diff: bool,
    #[arg(long)]
    relaxed: bool,
    #[command(flatten)]
    format: FormatArgs,
}

fn read_profile(path: &Path) -> Result<Vec<Int>> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let text = text.trim();
    let parse_err = |msg: String| CliError::Parse {
        path: shown.clone(),
        msg,
    };
    if text.starts_with('[') {
        let items: Vec<Value> = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
        items
            .iter()
            .map(|v| match v {
                Value::Number(n) => parse_int(&n.to_string()),
                Value::String(s) => parse_int(s),
                other => Err(format!("not an integer: {other}")),
            })
            .collect::<std::result::Result<_, _>>()
            .map_err(parse_err)
    } else {
        parse_list(text).map(|l| l.0).map_err(parse_err)
    }
}

pub fn hilbert(a: &HilbertArgs) -> Result<Output> {
    let p = min_surface_genus(&a.s, &a.r, &a.pi)?;
    let ps = validate_params(&a.r, &a.d, &a.s, &a.pi, &p, !a.relaxed)?;
    let profile = a.profile.as_deref().map(read_profile).transpose()?;
    let h: HilbertFunction = match &profile {
        Some(values) => h_from_h1_profile(&ps, &H1Profile::new(values.clone()))?,
        None => h_model(&ps),
    };
    let last = h
        .stabilization_index()
        .expect("model functions stabilize at d");
    let delta = first_difference(&h);
    let total = genus_sum(&h)?;

    if a.format.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Usage(e.to_string());
        if a.diff {
            w.write_record(["i", "h", "delta"]).map_err(io)?;
        } else {
            w.write_record(["i", "h"]).map_err(io)?;
        }
        for i in 0..=last {
            let mut rec = vec![i.to_string(), h.value(i).to_string()];
            if a.diff {
                rec.push(if i == 0 {
                    String::new()
                } else {
                    delta[i - 1].to_string()
                });
            }
            w.write_record(&rec).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(Output::ok(String::from_utf8(bytes).expect("utf-8")));
    }

    let table: Vec<Value> = (0..=last)
        .map(|i| {
            let mut row = serde_json::Map::new();
            row.insert("i".into(), json!(i.to_string()));
            row.insert("h".into(), json!(h.value(i).to_string()));
            if a.diff && i > 0 {
                row.insert("delta".into(), json!(delta[i - 1].to_string()));
            }
            Value::Object(row)
        })
        .collect();
    let result = json!({
        "origin": to_value(&h.origin()),
        "degree": h.degree().to_string(),
        "stabilization_index": last.to_string(),
        "table": table,
        "genus_sum": total.to_string(),
    });
    let inputs = Inputs::default()
        .num("r", &a.r)
        .num("d", &a.d)
        .num("s", &a.s)
        .num("pi", &a.pi)
        .list("profile", profile.as_deref())
        .flag("diff", a.diff)
        .flag("relaxed", a.relaxed)
        .finish();
    let mut warnings = ps.warnings.clone();
    warnings.extend(h.monotonicity_warnings());
    let env = Envelope::new("hilbert", inputs, result).with_warnings(&warnings);
    Ok(Output::ok(env.render()))
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    /// Degree of the surface.
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    s: Int,
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    r: Int,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_int)]
    pi: Int,
    /// h1(1), h1(2), ... of the hyperplane section, comma-separated.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    h1: IntList,
    /// Dimensions mu_i of the kernels, comma-separated.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    mu: Option<IntList>,
    /// Hilbert function h_H(1), h_H(2), ... of the point section, when the
    /// default is not wanted.
    #[arg(long = "h-h", value_parser = parse_list, allow_hyphen_values = true)]
    h_h: Option<IntList>,
}

pub fn surface(a: &SurfaceArgs) -> Result<Output> {
    let h1 = H1Profile::new(a.h1.0.clone());
    let mu = a.mu.as_ref().map(|m| m.0.clone()).unwrap_or_default();
    let mut sp = SurfaceProfile::new(
        a.s.clone(),
        a.r.clone(),
        a.pi.clone(),
        h1.clone(),
        mu.clone(),
    );
    if let Some(h_h) = &a.h_h {
        sp = sp.with_point_section(h_h.0.clone());
    }
    let g = surface_genus(&sp)?;
    let range = surface_genus_range(&a.s, &a.r, &a.pi).ok().map_or(
        Value::Null,
        |(lo, hi)| json!({"lo": lo.to_string(), "hi": hi.to_string()}),
    );
    let reg = regularity_bound(&a.s, &a.r)?;
    let result = json!({
        "h1": to_value(&h1),
        "rao_dimension": h1.rao_dimension().to_string(),
        "delta": h1.delta_sequence().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "p_a": g.value.to_string(),
        "section_term": g.section_term.to_string(),
        "delta_term": g.delta_term.to_string(),
        "mu_sum": g.mu_sum.to_string(),
        "genus_range": range,
        "regularity_bound": to_value(&reg),
    });
    let inputs = Inputs::default()
        .num("s", &a.s)
        .num("r", &a.r)
        .num("pi", &a.pi)
        .list("h1", Some(&a.h1.0))
        .list("mu", a.mu.as_ref().map(|m| m.0.as_slice()))
        .list("h_h", a.h_h.as_ref().map(|m| m.0.as_slice()))
        .finish();
    let env = Envelope::new("surface", inputs, result).with_warnings(&g.warnings);
    Ok(Output::ok(env.render()))
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    r: Int,
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    d: Int,
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    s: Int,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_int)]
    pi: Int,
    /// Degree of the tangent cone at the vertex, congruent to d mod s.
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    k: Int,
    #[arg(long)]
    relaxed: bool,
}

pub fn extremal(a: &ExtremalArgs) -> Result<Output> {
    let cd = ConstructionData::new(
        a.r.clone(),
        a.d.clone(),
        a.s.clone(),
        a.pi.clone(),
        a.k.clone(),
        !a.relaxed,
    )?;
    let rep = assemble_extremal_genus(&cd)?;
    let result = json!({
        "construction": to_value(&cd),
        "assembly": to_value(&rep),
    });
    let inputs = Inputs::default()
        .num("r", &a.r)
        .num("d", &a.d)
        .num("s", &a.s)
        .num("pi", &a.pi)
        .num("k", &a.k)
        .flag("relaxed", a.relaxed)
        .finish();
    let env = Envelope::new("extremal", inputs, result).with_warnings(&cd.params().warnings);
    Ok(Output {
        text: env.render(),
        violation: !rep.matched,
    })
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    r: Int,
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    s: Int,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_int)]
    pi: Int,
    #[arg(short, allow_negative_numbers = true, value_parser = parse_int)]
    p: Option<Int>,
    #[arg(long = "d-from", allow_negative_numbers = true, value_parser = parse_int)]
    d_from: Int,
    #[arg(long = "d-to", allow_negative_numbers = true, value_parser = parse_int)]
    d_to: Int,
    #[arg(long, default_value = "1", allow_negative_numbers = true, value_parser = parse_int)]
    step: Int,
    #[arg(long)]
    relaxed: bool,
    #[command(flatten)]
    format: FormatArgs,
}

const MAX_TABLE_ROWS: u64 = 1_000_000;

#[derive(Serialize)]
struct TableRow {
    d: String,
    m: String,
    epsilon: String,
    gstar: String,
    max_term: String,
    scroll_regime: bool,
    above_threshold: bool,
    /// Change from the previous row; empty on the first.
    delta: String,
    /// `G*(d+2s) - 2 G*(d+s) + G*(d)`.
    second_difference: String,
}

pub fn table(a: &TableArgs) -> Result<Output> {
    if a.d_from > a.d_to {
        return Err(CliError::Usage(format!(
            "empty range: d-from {} > d-to {}",
            a.d_from, a.d_to
        )));
    }
    if a.step < BigInt::from(1) {
        return Err(CliError::Usage(format!(
            "step must be positive, got {}",
            a.step
        )));
    }
    let rows_needed = (a.d_to.clone() - a.d_from.clone()) / a.step.clone() + 1;
    if rows_needed > BigInt::from(MAX_TABLE_ROWS) {
        return Err(CliError::Usage(format!(
            "range has {rows_needed} rows, more than {MAX_TABLE_ROWS}"
        )));
    }
    let p = resolve_p(&a.r, &a.s, &a.pi, a.p.as_ref())?;
    let strict = !a.relaxed;
    let at = |d: &Int| -> Result<(ParamSet, Int)> {
        let ps = validate_params(&a.r, d, &a.s, &a.pi, &p, strict)?;
        let v = gstar(&ps)?.value;
        Ok((ps, v))
    };

    let mut rows = Vec::new();
    let mut warnings: Vec<Warning> = Vec::new();
    let mut seen_threshold = false;
    let mut prev: Option<Int> = None;
    let mut d = a.d_from.clone();
    while d <= a.d_to {
        let (ps, g) = at(&d)?;
        let (_, g1) = at(&(d.clone() + a.s.clone()))?;
        let (_, g2) = at(&(d.clone() + BigInt::from(2) * a.s.clone()))?;
        let rep = gstar(&ps)?;
        for w in &ps.warnings {
            let threshold = matches!(w, Warning::BelowDegreeThreshold { .. });
            if threshold && std::mem::replace(&mut seen_threshold, true) {
                continue;
            }
            if !warnings.contains(w) {
                warnings.push(w.clone());
            }
        }
        rows.push(TableRow {
            d: d.to_string(),
            m: ps.m.to_string(),
            epsilon: ps.epsilon.to_string(),
            gstar: g.to_string(),
            max_term: rep.regime.max_term.to_string(),
            scroll_regime: rep.regime.scroll_regime,
            above_threshold: rep.regime.above_threshold,
            delta: prev
                .as_ref()
                .map_or(String::new(), |q| (g.clone() - q).to_string()),
            second_difference: (g2 - BigInt::from(2) * g1 + g.clone()).to_string(),
        });
        prev = Some(g);
        d += a.step.clone();
    }

    if a.format.csv {
        return Ok(Output::ok(csv_text(&rows)?));
    }
    let result = json!({
        "p": p.to_string(),
        "pi0": pi0(&a.s, &a.r)?.to_string(),
        "rows": to_value(&rows),
    });
    let inputs = Inputs::default()
        .num("r", &a.r)
        .num("s", &a.s)
        .num("pi", &a.pi)
        .opt_num("p", a.p.as_ref())
        .num("d_from", &a.d_from)
        .num("d_to", &a.d_to)
        .num("step", &a.step)
        .flag("relaxed", a.relaxed)
        .finish();
    let env = Envelope::new("table", inputs, result).with_warnings(&warnings);
    Ok(Output::ok(env.render()))
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["grid", "default_grid"])))]
pub struct VerifyArgs {
    /// Grid specification as JSON.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Use the built-in grid.
    #[arg(long)]
    default_grid: bool,
    /// Worker threads.
    #[arg(long, env = "CHBOUND_JOBS", default_value_t = default_jobs())]
    jobs: usize,
    /// Directory for the per-check reports and summary.csv.
    #[arg(long, env = "CHBOUND_OUT")]
    out: PathBuf,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn load_grid(path: &Path) -> Result<GridSpec> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: shown,
        msg: e.to_string(),
    })
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn verify(a: &VerifyArgs) -> Result<Output> {
    let grid = match &a.grid {
        Some(path) => load_grid(path)?,
        None => GridSpec::default(),
    };
    grid.validate()?;
    if let Some(bad) = grid
        .checks
        .iter()
        .find(|c| !CHECK_NAMES.contains(&c.as_str()))
    {
        return Err(chbound_core::Error::UnknownCheck(bad.clone()).into());
    }
    fs::create_dir_all(&a.out).map_err(|source| CliError::Io {
        path: a.out.display().to_string(),
        source,
    })?;

    let started = Instant::now();
    let mut summary = Vec::new();
    for name in &grid.checks {
        let report = run_check::<Int>(name, &grid, a.jobs)?;
        eprintln!(
            "{name}: {} examined, {} rejected, {} violations ({:.2?})",
            report.tuples_examined,
            report.rejected.len(),
            report.violations.len(),
            report.wall_time
        );
        write_file(
            &a.out.join(format!("{name}.json")),
            render_json(&report).as_bytes(),
        )?;
        summary.push(SummaryRow::from(&report));
    }
    write_file(&a.out.join("summary.csv"), csv_text(&summary)?.as_bytes())?;
    eprintln!("total {:.2?}", started.elapsed());

    let passed = summary.iter().all(|r| r.passed);
    let result = json!({
        "passed": passed,
        "checks": to_value(&summary),
    });
    let inputs = Inputs::default()
        .text("grid", a.grid.as_ref().and_then(|p| p.to_str()))
        .flag("default_grid", a.default_grid)
        .text("out", a.out.to_str())
        .finish();
    let env = Envelope::new("verify", inputs, result);
    Ok(Output {
        text: env.render(),
        violation: !passed,
    })
}
