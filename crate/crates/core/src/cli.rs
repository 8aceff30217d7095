//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code. Results go to `--out` (or stdout); failures are reported on the
//! diagnostic stream as one JSON object `{"error", "message", "exit_code"}`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bcb::{
    admissibility_edges, classify_bcb_with, locate_bcb_with, rotational_bcb_audit, run_campaign,
    AuditVerdict, CampaignOptions, ParamFamily,
};
use crate::circle::{
    default_center, ordering_check, reconstruct_circle_with, sample_attractor, sample_ring,
    unstable_circle_samples, CircleOptions, OrbitSample, PencilOptions,
};
use crate::cycles::{first_component_adjugate, solve_cycle_with};
use crate::error::{Error, Result};
use crate::matrix::Vector;
use crate::pwlmap::{ExampleFamily, Param, PwlMap};
use crate::tol::{Tolerances, EPS_CLOSURE, EPS_LIN, EPS_SIGN};
use crate::tongues::{
    scan_grid, summarize, write_csv, AffinePlane, Axis, GridSpec, ScanConfig, ScanMode,
};
use crate::words::{classify_rotational, Word};

#[derive(Parser, Debug)]
#[command(
    name = "pwl-tongues",
    version,
    about = "Periodic orbits, border collisions and mode-locking tongues of two-piece piecewise-linear maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one periodic orbit and report admissibility and stability.
    Cycle(CycleArgs),
    /// Sweep a two-parameter grid for stable periodic orbits.
    Scan(ScanArgs),
    /// Locate and classify a border-collision bifurcation along one parameter.
    Bcb(BcbArgs),
    /// Reconstruct the circle map induced on an invariant circle.
    Circle(CircleArgs),
    /// Randomised audit of border collisions of rotational orbits.
    Campaign(CampaignArgs),
    /// Write a map as JSON.
    Map(MapArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    /// (x1, x2) -> (alpha x1 + x2 + 1, beta x1 - |x1|/2)
    Pws2d,
    /// Border-collision normal form, A_s = [[tau_s, 1], [-delta_s, 0]], b = (1, 0)
    Nf2d,
}

/// Where the map comes from: a built-in family or a JSON file.
///
/// Parameter values are plain numbers except in `scan`, where exactly two of
/// them are ranges `lo:hi:count`. Unset parameters default to the values of
/// the mode-locked PWS2D example and the orientation-reversing NF2D example.
#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct MapSource {
    #[arg(long, value_enum, conflicts_with = "map")]
    pub family: Option<FamilyName>,
    /// JSON map file `{"n", "A_L", "A_R", "b"}`.
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long = "tl", visible_alias = "tau-l", allow_hyphen_values = true)]
    pub tau_l: Option<String>,
    #[arg(long = "dl", visible_alias = "delta-l", allow_hyphen_values = true)]
    pub delta_l: Option<String>,
    #[arg(long = "tr", visible_alias = "tau-r", allow_hyphen_values = true)]
    pub tau_r: Option<String>,
    #[arg(long = "dr", visible_alias = "delta-r", allow_hyphen_values = true)]
    pub delta_r: Option<String>,
}

#[derive(Args, Clone, Copy, Debug, Serialize)]
pub struct TolArgs {
    /// Band for sign decisions.
    #[arg(long, default_value_t = EPS_SIGN)]
    pub eps_sign: f64,
    /// Residual tolerance for linear algebra.
    #[arg(long, default_value_t = EPS_LIN)]
    pub eps_lin: f64,
    /// Relative closure tolerance for regenerated orbits.
    #[arg(long, default_value_t = EPS_CLOSURE)]
    pub eps_closure: f64,
}

impl TolArgs {
    fn resolve(&self) -> Result<Tolerances> {
        for (name, v) in [
            ("eps-sign", self.eps_sign),
            ("eps-lin", self.eps_lin),
            ("eps-closure", self.eps_closure),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("--{name} must be a positive number")));
            }
        }
        Ok(Tolerances {
            sign: self.eps_sign,
            lin: self.eps_lin,
            closure: self.eps_closure,
        })
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CycleArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// Literal word such as LRRLR, or F[l,m,p].
    #[arg(long)]
    pub word: String,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeName {
    FirstHit,
    Exhaustive,
    SingleWord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellFormat {
    Csv,
    Json,
}

#[derive(Args, Debug, Serialize)]
pub struct ScanArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// Two-parameter affine family `{"base", "d_x", "d_y"}`, each a map document.
    #[arg(long, conflicts_with_all = ["family", "map"])]
    pub plane: Option<PathBuf>,
    /// x range for --plane.
    #[arg(long, allow_hyphen_values = true, requires = "plane")]
    pub x: Option<String>,
    /// y range for --plane.
    #[arg(long, allow_hyphen_values = true, requires = "plane")]
    pub y: Option<String>,
    #[arg(long = "pmax", default_value_t = 20)]
    pub p_max: u32,
    #[arg(long, value_enum, default_value_t = ModeName::FirstHit)]
    pub mode: ModeName,
    /// Word for --mode single-word.
    #[arg(long)]
    pub word: Option<String>,
    #[command(flatten)]
    pub tol: TolArgs,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, value_enum, default_value_t = CellFormat::Csv)]
    pub format: CellFormat,
    /// Cell output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tongue summary JSON.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct BcbArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// Parameter that plays the role of eta.
    #[arg(long)]
    pub vary: Param,
    /// `lo:hi`, bracketing the collision.
    #[arg(long, allow_hyphen_values = true)]
    pub bracket: String,
    #[arg(long)]
    pub word: String,
    /// Index of the colliding point. When absent the bracket is sampled and
    /// the first edge with a single colliding point is used.
    #[arg(long)]
    pub flip: Option<usize>,
    /// Samples used to find the edge when --flip is absent.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[command(flatten)]
    pub tol: TolArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleMethod {
    /// Short orbit segments seeded on a ring around the centre.
    Ring,
    /// One long orbit after a transient.
    Orbit,
    /// Invariant curves leaving a saddle-type source with a flip multiplier.
    Pencil,
}

#[derive(Args, Debug, Serialize)]
pub struct CircleArgs {
    #[command(flatten)]
    pub source: MapSource,
    #[arg(long, value_enum, default_value_t = CircleMethod::Ring)]
    pub method: CircleMethod,
    /// Centre of the angle parametrisation, `x1,x2`. Defaults to (0, -0.5)
    /// for PWS2D and to the sample centroid otherwise.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub center: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 2000)]
    pub seeds: usize,
    #[arg(long)]
    pub transient: Option<usize>,
    #[arg(long)]
    pub keep: Option<usize>,
    /// Initial point for --method orbit, `x1,x2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x0: Option<Vec<f64>>,
    #[arg(long, default_value_t = 10_000)]
    pub rotation_iterations: usize,
    /// Circle samples `t,g,lift,x1,x2`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Raw orbit points.
    #[arg(long)]
    pub orbit_csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CampaignArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Stop after this many non-degenerate events.
    #[arg(long, default_value_t = 200)]
    pub families: usize,
    #[arg(long, default_value_t = 4000)]
    pub max_attempts: usize,
    #[arg(long = "pmax", default_value_t = 9)]
    pub p_max: u32,
    /// Samples per family when looking for admissibility edges.
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct MapArgs {
    #[command(flatten)]
    pub source: MapSource,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let report = json!({
                "error": e.kind(),
                "message": e.to_string(),
                "exit_code": e.exit_code(),
            });
            let _ = writeln!(stderr, "{report}");
            e.exit_code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Cycle(a) => cmd_cycle(a, stdout),
        Command::Scan(a) => cmd_scan(a, stdout),
        Command::Bcb(a) => cmd_bcb(a, stdout),
        Command::Circle(a) => cmd_circle(a, stdout),
        Command::Campaign(a) => cmd_campaign(a, stdout),
        Command::Map(a) => cmd_map(a, stdout),
    }
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports always serialize") + "\n"
}

fn parse_word(text: &str) -> Result<Word> {
    text.parse()
}

fn number(name: &str, text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("--{name}: '{text}' is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Domain(format!("--{name} must be finite")));
    }
    Ok(v)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))
}

impl MapSource {
    fn values(&self) -> [(Param, &Option<String>); 6] {
        [
            (Param::Alpha, &self.alpha),
            (Param::Beta, &self.beta),
            (Param::TauL, &self.tau_l),
            (Param::DeltaL, &self.delta_l),
            (Param::TauR, &self.tau_r),
            (Param::DeltaR, &self.delta_r),
        ]
    }

    fn base_family(&self) -> Result<Option<ExampleFamily>> {
        let family = match (self.family, &self.map) {
            (Some(FamilyName::Pws2d), None) => ExampleFamily::Pws2d {
                alpha: -0.444,
                beta: -0.6,
            },
            (Some(FamilyName::Nf2d), None) => ExampleFamily::NormalForm2d {
                tau_l: 0.3,
                delta_l: -1.8,
                tau_r: -0.1,
                delta_r: -0.3,
            },
            (None, Some(_)) => {
                if let Some((p, _)) = self.values().into_iter().find(|(_, v)| v.is_some()) {
                    return Err(Error::Domain(format!("--{p} needs --family, not --map")));
                }
                return Ok(None);
            }
            (None, None) => return Err(Error::domain("give --family or --map")),
            (Some(_), Some(_)) => return Err(Error::domain("--family and --map are exclusive")),
        };
        for (param, value) in self.values() {
            if value.is_some() && family.get(param).is_err() {
                return Err(Error::Domain(format!(
                    "--{param} does not belong to the {} family",
                    family.name()
                )));
            }
        }
        Ok(Some(family))
    }

    /// The family with every given value applied; ranges are rejected.
    fn fixed_family(&self) -> Result<Option<ExampleFamily>> {
        let Some(mut family) = self.base_family()? else {
            return Ok(None);
        };
        for (param, value) in self.values() {
            if let Some(text) = value {
                family = family.with(param, number(param.name(), text)?)?;
            }
        }
        Ok(Some(family))
    }

    fn load(&self) -> Result<(PwlMap, Option<ExampleFamily>)> {
        match self.fixed_family()? {
            Some(f) => Ok((f.build(), Some(f))),
            None => {
                let path = self.map.as_ref().expect("checked by base_family");
                Ok((PwlMap::from_json(&fs::read_to_string(path)?)?, None))
            }
        }
    }
}

#[derive(Serialize)]
struct FirstComponents {
    direct: f64,
    adjugate: f64,
    difference: f64,
}

fn cmd_cycle(args: &CycleArgs, stdout: &mut dyn Write) -> Result<i32> {
    let tol = args.tol.resolve()?;
    let (map, family) = args.source.load()?;
    let word = parse_word(&args.word)?;
    let cycle = solve_cycle_with(&map, &word, &tol)?;
    let adjugate = first_component_adjugate(&map, &word)?;
    let direct = cycle.points[0][0];
    let fixed_point = (word.len() == 1).then(|| map.fixed_point_with(word[0], &tol));
    let report = json!({
        "config": {
            "source": &args.source,
            "family": family,
            "word": word.to_string(),
            "tolerances": tol,
        },
        "map": map.to_document(),
        "rotational": classify_rotational(&word),
        "cycle": &cycle,
        "max_modulus": cycle.max_modulus(),
        "first_component": FirstComponents {
            direct,
            adjugate,
            difference: (direct - adjugate).abs(),
        },
        "fixed_point": fixed_point,
    });
    emit(args.out.as_deref(), stdout, &pretty(&report))?;
    Ok(0)
}

fn scan_config(args: &ScanArgs) -> Result<ScanConfig> {
    let tol = args.tol.resolve()?;
    let grid = if let Some(path) = &args.plane {
        let plane = AffinePlane::from_json(&fs::read_to_string(path)?)?;
        let axis = |name: &str, v: &Option<String>| -> Result<Axis> {
            let text = v
                .as_deref()
                .ok_or_else(|| Error::Domain(format!("--plane needs --{name} lo:hi:count")))?;
            Axis::parse(name, text)
        };
        GridSpec::affine(plane, axis("x", &args.x)?, axis("y", &args.y)?)?
    } else {
        let Some(mut family) = args.source.base_family()? else {
            return Err(Error::domain("scan needs --family or --plane"));
        };
        let mut axes = Vec::new();
        for (param, value) in args.source.values() {
            let Some(text) = value else { continue };
            if text.contains(':') {
                axes.push(Axis::parse(param.name(), text)?);
            } else {
                family = family.with(param, number(param.name(), text)?)?;
            }
        }
        let [x, y]: [Axis; 2] = axes.try_into().map_err(|a: Vec<Axis>| {
            Error::Domain(format!(
                "scan needs exactly two ranged parameters, got {}",
                a.len()
            ))
        })?;
        GridSpec::example(family, x, y)?
    };
    let mode = match (args.mode, &args.word) {
        (ModeName::SingleWord, Some(w)) => ScanMode::SingleWord(parse_word(w)?),
        (ModeName::SingleWord, None) => {
            return Err(Error::domain("--mode single-word needs --word"))
        }
        (_, Some(_)) => return Err(Error::domain("--word only applies to --mode single-word")),
        (ModeName::FirstHit, None) => ScanMode::FirstHit,
        (ModeName::Exhaustive, None) => ScanMode::Exhaustive,
    };
    let config = ScanConfig {
        grid,
        p_max: args.p_max,
        mode,
        tolerances: tol,
    };
    config.validate()?;
    Ok(config)
}

fn cmd_scan(args: &ScanArgs, stdout: &mut dyn Write) -> Result<i32> {
    let config = scan_config(args)?;
    let pool = pool(args.threads)?;
    let cells = pool.install(|| scan_grid(&config))?;

    let mut buf = Vec::new();
    match args.format {
        CellFormat::Csv => write_csv(&config, &cells, &mut buf)?,
        CellFormat::Json => {
            serde_json::to_writer_pretty(&mut buf, &json!({ "config": &config, "cells": &cells }))
                .map_err(|e| Error::Io(e.to_string()))?;
            buf.push(b'\n');
        }
    }
    match &args.out {
        Some(path) => fs::write(path, &buf)?,
        None => stdout.write_all(&buf)?,
    }
    if let Some(path) = &args.summary {
        let summary = pool.install(|| summarize(&config, &cells));
        fs::write(path, summary.to_json() + "\n")?;
    }
    Ok(0)
}

fn parse_bracket(text: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi] = parts[..] else {
        return Err(Error::Domain(format!(
            "bracket '{text}' must look like lo:hi"
        )));
    };
    let (lo, hi) = (number("bracket", lo)?, number("bracket", hi)?);
    if lo == hi {
        return Err(Error::domain("bracket has zero width"));
    }
    Ok((lo, hi))
}

fn cmd_bcb(args: &BcbArgs, stdout: &mut dyn Write) -> Result<i32> {
    let tol = args.tol.resolve()?;
    let Some(base) = args.source.fixed_family()? else {
        return Err(Error::domain("bcb needs --family"));
    };
    let family = ParamFamily::new(base, args.vary)?;
    let word = parse_word(&args.word)?;
    let bracket = parse_bracket(&args.bracket)?;

    let (k, bracket) = match args.flip {
        Some(k) if k >= word.len() => {
            return Err(Error::Domain(format!(
                "--flip {k} is out of range for a word of length {}",
                word.len()
            )))
        }
        Some(k) => (k, bracket),
        None => admissibility_edges(&family, &word, bracket.0, bracket.1, args.samples, &tol)
            .into_iter()
            .find_map(|edge| match edge.colliding[..] {
                [k] => Some((k, edge.bracket)),
                _ => None,
            })
            .ok_or(Error::EmptyAdmissibleSet)?,
    };
    let event = locate_bcb_with(&family, &word, k, bracket, &tol)?;
    let event = classify_bcb_with(&event, &family, &tol)?;
    let audit = rotational_bcb_audit(&event);
    let flipped_rotational = classify_rotational(&event.flipped_word);
    let report = json!({
        "config": {
            "family": &family,
            "word": word.to_string(),
            "flip": k,
            "bracket": bracket,
            "tolerances": tol,
        },
        "event": &event,
        "ell_before": event.word.ell(),
        "ell_after": event.flipped_word.ell(),
        "flipped_rotational": flipped_rotational,
        "audit": &audit,
    });
    emit(args.out.as_deref(), stdout, &pretty(&report))?;
    Ok(if audit.verdict == AuditVerdict::TheoremViolation {
        4
    } else {
        0
    })
}

fn point2(name: &str, v: &[f64]) -> Result<Vector> {
    match v {
        [a, b] if a.is_finite() && b.is_finite() => Ok(Vector::from([*a, *b])),
        _ => Err(Error::Domain(format!(
            "--{name} takes two finite numbers x1,x2"
        ))),
    }
}

fn cmd_circle(args: &CircleArgs, stdout: &mut dyn Write) -> Result<i32> {
    let (map, family) = args.source.load()?;
    if map.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: map.n(),
        });
    }
    let given_center = args
        .center
        .as_deref()
        .map(|c| point2("center", c))
        .transpose()?;
    let (orbit, center): (OrbitSample, Vector) = match args.method {
        CircleMethod::Ring => {
            let center = given_center.clone().unwrap_or_else(|| {
                family_center(family.as_ref()).unwrap_or_else(|| Vector::zeros(2))
            });
            let orbit = sample_ring(
                &map,
                &center,
                args.radius,
                args.seeds,
                args.transient.unwrap_or(20),
                args.keep.unwrap_or(2),
            )?;
            (orbit, center)
        }
        CircleMethod::Orbit => {
            let x0 = match &args.x0 {
                Some(v) => point2("x0", v)?,
                None => Vector::from([0.1, -0.2]),
            };
            let orbit = sample_attractor(
                &map,
                &x0,
                args.transient.unwrap_or(1000),
                args.keep.unwrap_or(5000),
            )?;
            let center = given_center.unwrap_or_else(|| default_center(family.as_ref(), &orbit));
            (orbit, center)
        }
        CircleMethod::Pencil => {
            let circle = unstable_circle_samples(&map, &PencilOptions::default())?;
            let center = given_center.unwrap_or(circle.center);
            (circle.orbit, center)
        }
    };
    let opts = CircleOptions {
        rotation_iterations: args.rotation_iterations,
        ..CircleOptions::default()
    };
    let model = reconstruct_circle_with(&orbit, &center, &opts)?;

    // ordering of the locked orbit, when the rotation number is rational
    let ordering = model
        .rotation
        .as_ref()
        .and_then(|r| r.approximant)
        .and_then(|(_, p)| {
            let mut t = model.samples.first()?.0;
            for _ in 0..2000 {
                t = model.g(t);
            }
            let orbit: Vec<f64> = (0..p)
                .map(|_| {
                    let here = t;
                    t = model.g(t);
                    here
                })
                .collect();
            ordering_check(&orbit, model.c).ok()
        });

    if let Some(path) = &args.csv {
        model.write_csv(fs::File::create(path)?)?;
    }
    if let Some(path) = &args.orbit_csv {
        orbit.write_csv(fs::File::create(path)?)?;
    }
    let report = json!({
        "config": {
            "source": &args.source,
            "family": family,
            "method": args.method,
            "center": &center,
            "options": &opts,
        },
        "invertibility": map.invertibility(),
        "fixed_points": map.fixed_points(),
        "samples": model.samples.len(),
        "degree": model.degree,
        "rotation": &model.rotation,
        "c": model.c,
        "lift_offset": model.lift_offset,
        "boundary_crossings": model.boundary_crossings,
        "max_t_gap": model.max_t_gap,
        "monotone_defect": model.monotone_defect,
        "ordering": ordering,
    });
    emit(args.out.as_deref(), stdout, &pretty(&report))?;
    Ok(0)
}

fn family_center(family: Option<&ExampleFamily>) -> Option<Vector> {
    match family {
        Some(ExampleFamily::Pws2d { .. }) => Some(Vector::from([0.0, -0.5])),
        _ => None,
    }
}

fn cmd_campaign(args: &CampaignArgs, stdout: &mut dyn Write) -> Result<i32> {
    let opts = CampaignOptions {
        seed: args.seed,
        target_families: args.families,
        max_attempts: args.max_attempts,
        p_max: args.p_max,
        grid: args.grid,
    };
    if opts.p_max < 5 {
        return Err(Error::domain("--pmax must be at least 5"));
    }
    let report = pool(args.threads)?.install(|| run_campaign(&opts));
    let clean = report.violations.is_empty() && report.disagreements.is_empty();
    let text = pretty(&json!({ "config": &opts, "report": &report }));
    emit(args.out.as_deref(), stdout, &text)?;
    Ok(if clean { 0 } else { 4 })
}

fn cmd_map(args: &MapArgs, stdout: &mut dyn Write) -> Result<i32> {
    let (map, _) = args.source.load()?;
    emit(args.out.as_deref(), stdout, &(map.to_json() + "\n"))?;
    Ok(0)
}
