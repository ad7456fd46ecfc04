//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check reported failure, 2 bad input, 3
//! numerical failure, 4 enumeration budget exceeded.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::bounds;
use crate::curves::{self, CurveClass, IntersectionConfig, DEFAULT_BUDGET};
use crate::deform::{self, Direction, TwistSpec};
use crate::error::Error;
use crate::riera;
use crate::surface::{build_holonomy, standard_topology, FNCoordinates, HolonomyRep, SurfaceTopology};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "adsvol", version, about = "Hyperbolic surface bounds for AdS volumes")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Surface description as JSON; `-` reads stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Surface description given inline.
    #[arg(long, global = true)]
    pub surface: Option<String>,
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub csv: bool,
    /// Word radius for enumerations.
    #[arg(long, global = true)]
    pub radius: Option<u32>,
    /// Cap on enumerated group elements.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, global = true, env = "ADSVOL_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the holonomy and check the relator and edge traces.
    Surface,
    /// Geodesic length of a curve.
    Length {
        /// A word such as `a1b1A1` or `e<k>` for decomposition edge `k`.
        curve: String,
    },
    /// Geometric intersection number of two curves.
    Intersect { first: String, second: String },
    /// Earthquake along weighted decomposition edges.
    Twist {
        /// Comma separated weights, one per edge.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<f64>,
        #[arg(long, value_enum, default_value_t = DirArg::Left)]
        direction: DirArg,
        /// Curve whose length derivative is reported.
        #[arg(long)]
        witness: Option<String>,
        /// Edge twisted for the derivative.
        #[arg(long, default_value_t = 0)]
        edge: usize,
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
        /// Length cap `L` for the growth check.
        #[arg(long)]
        big_l: Option<f64>,
    },
    /// Truncated Riera lower bound for the gradient of a length function.
    Riera {
        curve: String,
        /// Also list every retained term.
        #[arg(long)]
        terms: bool,
    },
    /// Evaluate the closed-form bounds.
    Bounds {
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long, default_value_t = 0.0)]
        lam_length: f64,
        #[arg(long, default_value_t = 0.0)]
        dth: f64,
        #[arg(long, default_value_t = 0.0)]
        dwp: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        b: f64,
        #[arg(long, default_value_t = 0.0)]
        c: f64,
        /// Level for the level-set estimates.
        #[arg(long, default_value_t = 1.0)]
        level: f64,
        /// Length scale `m` of the base point for the level distance.
        #[arg(long, default_value_t = 1.0)]
        m: f64,
    },
    /// Energy of the collar test map.
    Energy {
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long)]
        mc_length: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        core_length: f64,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
    },
    /// Reproduce an example family.
    Reproduce {
        #[command(subcommand)]
        which: Reproduce,
    },
    /// Run a parameter grid and emit CSV.
    Sweep {
        #[arg(value_enum)]
        kind: SweepKind,
        /// Grid values; defaults depend on the kind.
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        /// Sample count for `random`.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Reproduce {
    /// The pinched one-holed torus family.
    Prop52 {
        /// Single value or inclusive range `a..b`.
        #[arg(long, default_value = "1..8")]
        n: String,
        #[arg(long, default_value_t = 2.0)]
        mu: f64,
    },
    /// The constant of the genus-optimality family.
    GenusOptimality {
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long)]
        u: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        weight: f64,
    },
    /// Volume of the Fuchsian manifold.
    Fuchsian {
        #[arg(long, default_value_t = 2)]
        genus: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DirArg {
    Left,
    Right,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    /// Pinch edge 0 and track the transversal `b1`.
    Thin,
    /// Collar energy over `eps` for lengths 0.5, 1, 2.
    Energy,
    /// The pinched family over `n`.
    Prop52,
    /// `u r(u)` over `u`.
    Optimality,
    /// Random genus-2 surfaces from the seed.
    Random,
}

/// Surface description accepted on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: exit_code(&e), message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NumericalFailure(_) | Error::DegenerateLength(_) | Error::NotHyperbolic { .. } => 3,
        Error::SharedEndpoint => 3,
        Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Text,
    Json,
    Csv,
}

struct Ctx {
    global: GlobalOpts,
    format: Format,
}

impl Ctx {
    fn surface_spec(&self) -> Result<SurfaceSpec, Failure> {
        let text = match (&self.global.input, &self.global.surface) {
            (Some(_), Some(_)) => return Err(input_error("give either --input or --surface")),
            (Some(p), None) if p.as_os_str() == "-" => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).map_err(|e| input_error(e.to_string()))?;
                s
            }
            (Some(p), None) => {
                std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))?
            }
            (None, Some(s)) => s.clone(),
            (None, None) => return Err(input_error("a surface is required: --input FILE or --surface JSON")),
        };
        serde_json::from_str(&text).map_err(|e| input_error(format!("surface schema: {e}")))
    }

    fn surface(&self) -> Result<(SurfaceTopology, FNCoordinates, HolonomyRep), Failure> {
        let spec = self.surface_spec()?;
        let topo = standard_topology(spec.genus)?;
        if spec.lengths.len() != topo.edge_count() {
            return Err(Error::DimensionMismatch { expected: topo.edge_count(), got: spec.lengths.len() }.into());
        }
        let coords = FNCoordinates::new(spec.lengths, spec.twists)?;
        let rep = build_holonomy(&topo, &coords)?;
        Ok((topo, coords, rep))
    }
}

fn curve(rep: &HolonomyRep, s: &str) -> Result<CurveClass, Failure> {
    if let Some(k) = s.strip_prefix('e') {
        let k: usize = k.parse().map_err(|_| input_error(format!("bad edge reference {s}")))?;
        return rep
            .curve_words
            .get(k)
            .cloned()
            .ok_or_else(|| input_error(format!("edge {k} out of range 0..{}", rep.curve_words.len())));
    }
    Ok(s.parse::<CurveClass>()?)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// A report with its command name; `rows` holds tabular output.
struct Report {
    command: String,
    body: Value,
    rows: Option<Vec<Value>>,
    ok: bool,
}

impl Report {
    fn single(command: &str, body: Value) -> Report {
        Report { command: command.into(), body, rows: None, ok: true }
    }

    fn table(command: &str, rows: Vec<Value>) -> Report {
        Report { command: command.into(), body: Value::Null, rows: Some(rows), ok: true }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Flattens nested objects into dotted keys.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let joined = a.iter().map(scalar).collect::<Vec<_>>().join(";");
            out.push((prefix.to_string(), Value::String(joined)));
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), x, out);
            }
        }
        other => out.push((prefix.to_string(), other.clone())),
    }
}

fn write_csv(out: &mut dyn Write, rows: &[Value]) -> io::Result<()> {
    let flat: Vec<Vec<(String, Value)>> = rows
        .iter()
        .map(|r| {
            let mut f = Vec::new();
            flatten("", r, &mut f);
            f
        })
        .collect();
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = flat.first() {
        w.write_record(first.iter().map(|(k, _)| k.as_str()))?;
    }
    for r in &flat {
        w.write_record(r.iter().map(|(_, v)| scalar(v)))?;
    }
    w.flush()
}

fn emit(out: &mut dyn Write, format: Format, report: &Report) -> io::Result<()> {
    match format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("version".into(), Value::String(VERSION.into()));
            m.insert("command".into(), Value::String(report.command.clone()));
            match &report.rows {
                Some(rows) => {
                    m.insert("rows".into(), Value::Array(rows.clone()));
                }
                None => {
                    if let Value::Object(b) = &report.body {
                        m.extend(b.clone());
                    }
                }
            }
            serde_json::to_writer_pretty(&mut *out, &Value::Object(m))?;
            writeln!(out)
        }
        Format::Csv => match &report.rows {
            Some(rows) => write_csv(out, rows),
            None => write_csv(out, std::slice::from_ref(&report.body)),
        },
        Format::Text => {
            let rows = report.rows.clone().unwrap_or_else(|| vec![report.body.clone()]);
            for (i, r) in rows.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                let mut f = Vec::new();
                flatten("", r, &mut f);
                let width = f.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                for (k, v) in f {
                    writeln!(out, "{k:<width$}  {}", scalar(&v))?;
                }
            }
            Ok(())
        }
    }
}

fn parse_range(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || input_error(format!("expected N or A..B, got {s}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a == 0 || b < a {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => {
            let n: u32 = s.trim().parse().map_err(|_| bad())?;
            Ok(vec![n])
        }
    }
}

fn run_command(ctx: &Ctx, cmd: &Command) -> Result<Report, Failure> {
    let g = &ctx.global;
    if !(g.tolerance > 0.0) {
        return Err(input_error("--tolerance must be positive"));
    }
    if g.budget == 0 {
        return Err(input_error("--budget must be at least 1"));
    }
    match cmd {
        Command::Surface => {
            let (_, coords, rep) = ctx.surface()?;
            let traces = rep.trace_residuals(&coords);
            let worst = traces.iter().copied().fold(0.0, f64::max);
            let pass = rep.relator_residual <= g.tolerance && worst <= g.tolerance;
            let body = obj(vec![
                ("genus", to_value(&rep.genus)),
                ("relator_residual", to_value(&rep.relator_residual)),
                ("trace_residuals", to_value(&traces)),
                ("curve_words", to_value(&rep.curve_words)),
                ("tolerance", to_value(&g.tolerance)),
                ("pass", Value::Bool(pass)),
            ]);
            Ok(Report { ok: pass, ..Report::single("surface", body) })
        }
        Command::Length { curve: c } => {
            let (_, _, rep) = ctx.surface()?;
            let c = curve(&rep, c)?;
            let len = rep.curve_length(&c)?;
            Ok(Report::single("length", obj(vec![("curve", to_value(&c)), ("length", to_value(&len))])))
        }
        Command::Intersect { first, second } => {
            let (_, _, rep) = ctx.surface()?;
            let (c1, c2) = (curve(&rep, first)?, curve(&rep, second)?);
            let cfg = IntersectionConfig { budget: g.budget, ..IntersectionConfig::default() };
            let r = curves::intersection_number(&rep, &c1, &c2, g.radius.unwrap_or(4), &cfg)?;
            let mut body = to_value(&r);
            if let Value::Object(m) = &mut body {
                m.insert("first".into(), to_value(&c1));
                m.insert("second".into(), to_value(&c2));
            }
            Ok(Report::single("intersect", body))
        }
        Command::Twist { weights, direction, witness, edge, step, big_l } => {
            let (topo, coords, rep) = ctx.surface()?;
            let dir = match direction {
                DirArg::Left => Direction::Left,
                DirArg::Right => Direction::Right,
            };
            let spec = TwistSpec::new(weights.clone(), dir)?;
            let after = deform::earthquake(&coords, &spec)?;
            let mut pairs = vec![
                ("before", to_value(&coords)),
                ("after", to_value(&after)),
                ("lamination_length", to_value(&spec.lamination_length(&coords)?)),
            ];
            if let Some(w) = witness {
                let c = curve(&rep, w)?;
                let d = deform::twist_length_derivative(&topo, &coords, *edge, &c, *step)?;
                pairs.push(("witness", to_value(&c)));
                pairs.push(("edge", to_value(edge)));
                pairs.push(("length_derivative", to_value(&d)));
            }
            if let Some(l) = big_l {
                pairs.push(("growth", to_value(&deform::length_growth_bound_check(&topo, &coords, &spec, *l)?)));
            }
            Ok(Report::single("twist", obj(pairs)))
        }
        Command::Riera { curve: c, terms } => {
            let (_, _, rep) = ctx.surface()?;
            let c = curve(&rep, c)?;
            let radius = g.radius.unwrap_or(4);
            let r = riera::wp_grad_normsq_lower_with_budget(&rep, &c, radius, g.budget)?;
            let ratio = r.lower_bound.sqrt() * rep.euler_characteristic_abs() / r.curve_length;
            let mut body = to_value(&r);
            if let Value::Object(m) = &mut body {
                m.insert("curve".into(), to_value(&c));
                m.insert("mainestimate_ratio".into(), to_value(&ratio));
                if *terms {
                    m.insert("terms".into(), to_value(&riera::riera_terms(&rep, &c, radius, g.budget)?));
                }
            }
            Ok(Report::single("riera", body))
        }
        Command::Bounds { genus, lam_length, dth, dwp, a, b, c, level, m } => {
            let g2 = *genus;
            let bracket = bounds::volume_bracket_from_lamination(*lam_length, g2)?;
            let body = obj(vec![
                ("genus", to_value(genus)),
                ("bracket", to_value(&bracket)),
                ("fuchsian_volume", to_value(&bounds::fuchsian_volume(g2)?)),
                ("thurston_upper_bound", to_value(&bounds::thurston_upper_bound(*dth, g2)?)),
                ("closing_upper_bound", to_value(&bounds::closing_upper_bound(*dth, *a, g2)?)),
                ("wp_lower_bound", to_value(&bounds::wp_lower_bound_form(*dwp, *a, *b, *c, g2)?)),
                ("wp_pinching", to_value(&bounds::wp_pinching(*level)?)),
                ("wp_level_distance", to_value(&bounds::wp_level_distance(*m, *level, g2, *a)?)),
                ("wp_level_diameter", to_value(&bounds::wp_level_diameter(*level)?)),
            ]);
            Ok(Report::single("bounds", body))
        }
        Command::Energy { genus, mc_length, eps, core_length, resolution } => {
            let r = deform::collar_testmap_energy_with_core(*genus, *mc_length, *core_length, *eps, *resolution)?;
            Ok(Report::single("energy", to_value(&r)))
        }
        Command::Reproduce { which } => match which {
            Reproduce::Prop52 { n, mu } => {
                let rows = parse_range(n)?
                    .into_iter()
                    .map(|n| Ok(to_value(&bounds::example_prop52(n, *mu)?)))
                    .collect::<Result<Vec<_>, Failure>>()?;
                let mut rep = Report::table("reproduce prop52", rows);
                if ctx.format == Format::Json {
                    let fit = bounds::fit_prop52_constants(*mu, 64)?;
                    rep = Report::single(
                        "reproduce prop52",
                        obj(vec![("rows", Value::Array(rep.rows.take().unwrap_or_default())), ("fit", to_value(&fit))]),
                    );
                }
                Ok(rep)
            }
            Reproduce::GenusOptimality { genus, u, weight } => {
                let c0 = bounds::optimal_c0();
                let r = bounds::example_genus_optimality(*genus, u.unwrap_or(c0.argmax), *weight)?;
                Ok(Report::single("reproduce genus-optimality", to_value(&r)))
            }
            Reproduce::Fuchsian { genus } => {
                let v = bounds::fuchsian_volume(*genus)?;
                let b = bounds::volume_bracket_from_lamination(0.0, *genus)?;
                Ok(Report::single(
                    "reproduce fuchsian",
                    obj(vec![("genus", to_value(genus)), ("volume", to_value(&v)), ("bracket", to_value(&b))]),
                ))
            }
        },
        Command::Sweep { kind, values, samples } => sweep(ctx, *kind, values, *samples),
    }
}

fn sweep(ctx: &Ctx, kind: SweepKind, values: &[f64], samples: usize) -> Result<Report, Failure> {
    let g = &ctx.global;
    let pick = |d: &[f64]| if values.is_empty() { d.to_vec() } else { values.to_vec() };
    let rows: Vec<Value> = match kind {
        SweepKind::Thin => {
            let topo = standard_topology(2)?;
            let beta: CurveClass = "b1".parse()?;
            let radius = g.radius.unwrap_or(3);
            pick(&[1.0, 0.5, 0.1, 0.05])
                .into_iter()
                .map(|l1| {
                    let rep = build_holonomy(&topo, &FNCoordinates::new(vec![l1, 1.0, 1.0], vec![0.0; 3])?)?;
                    let r = riera::wp_grad_normsq_lower_with_budget(&rep, &beta, radius, g.budget)?;
                    let ratio = r.lower_bound.sqrt() * rep.euler_characteristic_abs() / r.curve_length;
                    Ok(obj(vec![
                        ("l1", to_value(&l1)),
                        ("radius", to_value(&radius)),
                        ("beta_length", to_value(&r.curve_length)),
                        ("base_term", to_value(&r.base_term)),
                        ("series_sum", to_value(&r.series_sum)),
                        ("lower_bound", to_value(&r.lower_bound)),
                        ("n_terms", to_value(&r.n_terms)),
                        ("ratio", to_value(&ratio)),
                    ]))
                })
                .collect::<Result<_, Failure>>()?
        }
        SweepKind::Energy => {
            let mut rows = Vec::new();
            for mc in [0.5, 1.0, 2.0] {
                for eps in pick(&[0.2, 0.1, 0.05]) {
                    let r = deform::collar_testmap_energy(2, mc, eps, 256)?;
                    rows.push(obj(vec![
                        ("mc_length", to_value(&mc)),
                        ("eps", to_value(&eps)),
                        ("total_energy", to_value(&r.total_energy)),
                        ("bound", to_value(&r.bound)),
                        ("quadrature_tolerance", to_value(&r.quadrature_tolerance)),
                    ]));
                }
            }
            rows
        }
        SweepKind::Prop52 => pick(&[1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0])
            .into_iter()
            .map(|n| {
                if !(n >= 1.0) || n.fract() != 0.0 {
                    return Err(input_error(format!("n must be a positive integer, got {n}")));
                }
                let r = bounds::example_prop52(n as u32, 2.0)?;
                Ok(obj(vec![
                    ("n", to_value(&r.n)),
                    ("lamination_length", to_value(&r.lamination_length)),
                    ("beta_length", to_value(&r.beta_length)),
                    ("holonomy_beta_length", to_value(&r.holonomy_beta_length)),
                    ("ratio_floor", to_value(&r.ratio_floor)),
                    ("bracket_lower", to_value(&r.bracket.lower)),
                    ("bracket_upper", to_value(&r.bracket.upper)),
                ]))
            })
            .collect::<Result<_, Failure>>()?,
        SweepKind::Optimality => pick(&[0.5, 1.0, 2.0, 2.5, 3.0, 4.0, 6.0])
            .into_iter()
            .map(|u| {
                if !(u > 0.0) {
                    return Err(input_error(format!("u must be positive, got {u}")));
                }
                let r = bounds::pants_boundary_distance(u);
                Ok(obj(vec![("u", to_value(&u)), ("r_u", to_value(&r)), ("c0_at_u", to_value(&(0.375 * u * r)))]))
            })
            .collect::<Result<_, Failure>>()?,
        SweepKind::Random => {
            let topo = standard_topology(2)?;
            let beta: CurveClass = "b1".parse()?;
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            (0..samples)
                .map(|i| {
                    let coords = FNCoordinates::sample(&mut rng, 2);
                    let rep = build_holonomy(&topo, &coords)?;
                    let worst = rep.trace_residuals(&coords).into_iter().fold(0.0, f64::max);
                    Ok(obj(vec![
                        ("sample", to_value(&i)),
                        ("lengths", to_value(&coords.lengths)),
                        ("twists", to_value(&coords.twists)),
                        ("relator_residual", to_value(&rep.relator_residual)),
                        ("trace_residual", to_value(&worst)),
                        ("beta_length", to_value(&rep.curve_length(&beta)?)),
                    ]))
                })
                .collect::<Result<_, Failure>>()?
        }
    };
    Ok(Report::table(&format!("sweep {}", sweep_name(kind)), rows))
}

fn sweep_name(kind: SweepKind) -> &'static str {
    match kind {
        SweepKind::Thin => "thin",
        SweepKind::Energy => "energy",
        SweepKind::Prop52 => "prop52",
        SweepKind::Optimality => "optimality",
        SweepKind::Random => "random",
    }
}

/// Parses `args`, runs the command and writes the report. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let format = if cli.global.json {
        Format::Json
    } else if cli.global.csv || matches!(cli.command, Command::Sweep { .. }) {
        Format::Csv
    } else {
        Format::Text
    };
    let ctx = Ctx { global: cli.global.clone(), format };
    let result = match cli.global.threads {
        Some(0) => Err(input_error("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_command(&ctx, &cli.command)),
            Err(e) => Err(Failure { code: 3, message: e.to_string() }),
        },
        None => run_command(&ctx, &cli.command),
    };
    match result {
        Ok(report) => {
            if let Err(e) = emit(out, format, &report) {
                let _ = writeln!(err, "error: {e}");
                return 3;
            }
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
