//! Two-parameter sweeps: which attractor lives at each grid point.
//!
//! Each cell is classified independently: a stable admissible fixed point if
//! there is one, otherwise the first admissible stable rotational cycle in
//! the order `p`, then `m`, then `l`. Results come back in row-major order
//! whatever the thread schedule.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bcb::{
    classify_bcb_with, locate_bcb_with, rotational_bcb_audit, AuditVerdict, BcbClass, Family,
};
use crate::cycles::{probe_admissible, solve_cycle_with};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::pwlmap::{in_boundary_band, Admissibility, ExampleFamily, MapDocument, Param, PwlMap};
use crate::tol::Tolerances;
use crate::words::{classify_rotational, gcd, make_rotational, Symbol, Word, MAX_CLASSIFY_PERIOD};

/// One grid axis, written `lo:hi:count` on the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: impl Into<String>, lo: f64, hi: f64, count: usize) -> Result<Self> {
        let axis = Axis {
            name: name.into(),
            lo,
            hi,
            count,
        };
        axis.validate()?;
        Ok(axis)
    }

    /// Parses `lo:hi:count`.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(Error::domain(format!(
                "range '{text}' for {name} must look like lo:hi:count"
            )));
        };
        let num = |s: &str| {
            f64::from_str(s.trim())
                .map_err(|_| Error::domain(format!("bad number '{s}' in range for {name}")))
        };
        let count = count
            .trim()
            .parse()
            .map_err(|_| Error::domain(format!("bad count '{count}' in range for {name}")))?;
        Axis::new(name, num(lo)?, num(hi)?, count)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count < 2 {
            return Err(Error::domain(format!(
                "axis {} needs at least 2 points",
                self.name
            )));
        }
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::domain(format!(
                "axis {} range must be finite",
                self.name
            )));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo).abs() / (self.count - 1) as f64
    }
}

/// Maps affine in two parameters: `base + x * d_x + y * d_y`, entrywise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffinePlane {
    pub base: MapDocument,
    pub d_x: MapDocument,
    pub d_y: MapDocument,
}

impl AffinePlane {
    pub fn from_json(text: &str) -> Result<Self> {
        let plane: AffinePlane = serde_json::from_str(text)
            .map_err(|e| Error::domain(format!("invalid family JSON: {e}")))?;
        for doc in [&plane.base, &plane.d_x, &plane.d_y] {
            doc.clone().into_map()?;
        }
        if plane.d_x.n != plane.base.n || plane.d_y.n != plane.base.n {
            return Err(Error::DimensionMismatch {
                expected: plane.base.n,
                got: plane.d_x.n.max(plane.d_y.n),
            });
        }
        Ok(plane)
    }

    pub fn at(&self, x: f64, y: f64) -> Result<PwlMap> {
        let combine = |a: &[Vec<f64>], b: &[Vec<f64>], c: &[Vec<f64>]| -> Vec<Vec<f64>> {
            a.iter()
                .zip(b)
                .zip(c)
                .map(|((ra, rb), rc)| {
                    ra.iter()
                        .zip(rb)
                        .zip(rc)
                        .map(|((va, vb), vc)| va + x * vb + y * vc)
                        .collect()
                })
                .collect()
        };
        let b: Vec<f64> = self
            .base
            .b
            .iter()
            .zip(&self.d_x.b)
            .zip(&self.d_y.b)
            .map(|((a, bx), by)| a + x * bx + y * by)
            .collect();
        PwlMap::new(
            Mat::from_rows(&combine(
                &self.base.a_left,
                &self.d_x.a_left,
                &self.d_y.a_left,
            ))?,
            Mat::from_rows(&combine(
                &self.base.a_right,
                &self.d_x.a_right,
                &self.d_y.a_right,
            ))?,
            b.into(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GridFamily {
    Example { family: ExampleFamily },
    Affine { plane: AffinePlane },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub family: GridFamily,
    pub x: Axis,
    pub y: Axis,
}

impl GridSpec {
    pub fn example(family: ExampleFamily, x: Axis, y: Axis) -> Result<Self> {
        let spec = GridSpec {
            family: GridFamily::Example { family },
            x,
            y,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn affine(plane: AffinePlane, x: Axis, y: Axis) -> Result<Self> {
        let spec = GridSpec {
            family: GridFamily::Affine { plane },
            x,
            y,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.x.validate()?;
        self.y.validate()?;
        if let GridFamily::Example { family } = &self.family {
            let px: Param = self.x.name.parse()?;
            let py: Param = self.y.name.parse()?;
            family.get(px)?;
            family.get(py)?;
            if px == py {
                return Err(Error::domain("grid axes must vary different parameters"));
            }
        }
        Ok(())
    }

    pub fn map_at(&self, x: f64, y: f64) -> Result<PwlMap> {
        match &self.family {
            GridFamily::Example { family } => {
                let f = family
                    .with(self.x.name.parse()?, x)?
                    .with(self.y.name.parse()?, y)?;
                Ok(f.build())
            }
            GridFamily::Affine { plane } => plane.at(x, y),
        }
    }

    pub fn cells(&self) -> usize {
        self.x.count * self.y.count
    }

    /// Row-major: `y` index outer.
    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index % self.x.count, index / self.x.count)
    }

    fn example_family(&self) -> Option<ExampleFamily> {
        match &self.family {
            GridFamily::Example { family } => Some(*family),
            GridFamily::Affine { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanMode {
    /// First hit in the fixed enumeration order.
    FirstHit,
    /// Every admissible stable rotational cycle is recorded.
    Exhaustive,
    /// Only the given word.
    SingleWord(Word),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanConfig {
    pub grid: GridSpec,
    pub p_max: u32,
    pub mode: ScanMode,
    pub tolerances: Tolerances,
}

impl ScanConfig {
    pub fn new(grid: GridSpec, p_max: u32) -> Self {
        ScanConfig {
            grid,
            p_max,
            mode: ScanMode::FirstHit,
            tolerances: Tolerances::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.p_max as usize > MAX_CLASSIFY_PERIOD {
            return Err(Error::domain(format!(
                "p_max {} exceeds {MAX_CLASSIFY_PERIOD}",
                self.p_max
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    StableFixedPoint {
        side: Symbol,
        max_modulus: f64,
    },
    ModeLocked {
        /// `None` for non-rotational words in single-word mode.
        m: Option<u32>,
        p: u32,
        ell: u32,
        word: Word,
        max_modulus: f64,
    },
    NoStablePeriodic {
        p_max: u32,
    },
    Skipped {
        reason: String,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::StableFixedPoint {
                side: Symbol::L, ..
            } => "stable_fixed_point_l",
            Verdict::StableFixedPoint {
                side: Symbol::R, ..
            } => "stable_fixed_point_r",
            Verdict::ModeLocked { .. } => "mode_locked",
            Verdict::NoStablePeriodic { .. } => "no_stable_periodic",
            Verdict::Skipped { .. } => "skipped",
        }
    }

    /// `(m, p, l)` for rotational mode-locked cells.
    pub fn tongue(&self) -> Option<(u32, u32, u32)> {
        match self {
            Verdict::ModeLocked {
                m: Some(m), p, ell, ..
            } => Some((*m, *p, *ell)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellResult {
    pub i: usize,
    pub j: usize,
    pub x: f64,
    pub y: f64,
    pub verdict: Verdict,
    /// Single-word mode: where the word's cycle sits, if it exists.
    pub word_admissibility: Option<Admissibility>,
    /// Exhaustive mode: every admissible stable `F[l,m,p]`, as `(l, m, p)`.
    pub coexisting: Vec<(u32, u32, u32)>,
    #[serde(skip)]
    pub elapsed_micros: u128,
}

/// All `F[l,m,p]` for `p = 2..=p_max`, in scan order.
pub fn enumeration(p_max: u32) -> Vec<(u32, u32, u32, Word)> {
    let mut out = Vec::new();
    for p in 2..=p_max {
        for m in (1..p).filter(|&m| gcd(m, p) == 1) {
            for ell in 1..p {
                let word = make_rotational(ell, m, p).expect("valid by construction");
                out.push((ell, m, p, word));
            }
        }
    }
    out
}

fn classify_cell(
    config: &ScanConfig,
    words: &[(u32, u32, u32, Word)],
    x: f64,
    y: f64,
) -> (Verdict, Option<Admissibility>, Vec<(u32, u32, u32)>) {
    let tol = &config.tolerances;
    let map = match config.grid.map_at(x, y) {
        Ok(m) => m,
        Err(e) => {
            return (
                Verdict::Skipped {
                    reason: e.to_string(),
                },
                None,
                Vec::new(),
            )
        }
    };

    if let ScanMode::SingleWord(word) = &config.mode {
        return match solve_cycle_with(&map, word, tol) {
            Ok(c) => {
                let verdict = if c.is_attracting() {
                    Verdict::ModeLocked {
                        m: classify_rotational(word).map(|r| r.m),
                        p: word.len() as u32,
                        ell: word.ell() as u32,
                        word: word.clone(),
                        max_modulus: c.max_modulus(),
                    }
                } else {
                    Verdict::NoStablePeriodic {
                        p_max: word.len() as u32,
                    }
                };
                (verdict, Some(c.admissibility), Vec::new())
            }
            Err(Error::NoUniqueCycle { .. }) => (
                Verdict::NoStablePeriodic {
                    p_max: word.len() as u32,
                },
                None,
                Vec::new(),
            ),
            Err(e) => (
                Verdict::Skipped {
                    reason: e.to_string(),
                },
                None,
                Vec::new(),
            ),
        };
    }

    for side in [Symbol::L, Symbol::R] {
        let report = map.fixed_point_with(side, tol);
        if report.admissibility == Some(Admissibility::Admissible) && report.is_stable() {
            let max_modulus = report.multipliers.first().copied().unwrap_or(0.0);
            return (
                Verdict::StableFixedPoint { side, max_modulus },
                None,
                Vec::new(),
            );
        }
    }

    let exhaustive = config.mode == ScanMode::Exhaustive;
    let mut first = None;
    let mut coexisting = Vec::new();
    let mut seen = BTreeSet::new();
    // |det M_X| >= 1 forces a multiplier of modulus >= 1, so the word
    // cannot carry a stable cycle
    let (det_l, det_r) = (
        map.matrix(Symbol::L).determinant().abs(),
        map.matrix(Symbol::R).determinant().abs(),
    );
    for (ell, m, p, word) in words {
        if det_l.powi(*ell as i32) * det_r.powi((p - ell) as i32) >= 1.0 {
            continue;
        }
        let cycle = match probe_admissible(&map, word, tol) {
            Ok(Some(c)) => c,
            Ok(None) => continue,
            Err(e) => {
                return (
                    Verdict::Skipped {
                        reason: e.to_string(),
                    },
                    None,
                    Vec::new(),
                )
            }
        };
        if !cycle.stable {
            continue;
        }
        if first.is_none() {
            first = Some(Verdict::ModeLocked {
                m: Some(*m),
                p: *p,
                ell: *ell,
                word: word.clone(),
                max_modulus: cycle.max_modulus(),
            });
            if !exhaustive {
                break;
            }
        }
        // the same word can arise from several (l, m); one cycle per word
        if seen.insert(word.canonical()) {
            coexisting.push((*ell, *m, *p));
        }
    }
    let verdict = first.unwrap_or(Verdict::NoStablePeriodic {
        p_max: config.p_max,
    });
    (
        verdict,
        None,
        if exhaustive { coexisting } else { Vec::new() },
    )
}

/// Classifies every cell. The output order is row-major and independent of
/// the number of worker threads.
pub fn scan_grid(config: &ScanConfig) -> Result<Vec<CellResult>> {
    config.validate()?;
    let words = match config.mode {
        ScanMode::SingleWord(_) => Vec::new(),
        _ => enumeration(config.p_max),
    };
    let grid = &config.grid;
    Ok((0..grid.cells())
        .into_par_iter()
        .map(|index| {
            let (i, j) = grid.coords(index);
            let (x, y) = (grid.x.value(i), grid.y.value(j));
            let start = Instant::now();
            let (verdict, word_admissibility, coexisting) = classify_cell(config, &words, x, y);
            CellResult {
                i,
                j,
                x,
                y,
                verdict,
                word_admissibility,
                coexisting,
                elapsed_micros: start.elapsed().as_micros(),
            }
        })
        .collect())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// One row per cell: both parameters, verdict, `m`, `p`, `l`, largest
/// multiplier modulus and the word.
pub fn write_csv<W: Write>(config: &ScanConfig, cells: &[CellResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        config.grid.x.name.as_str(),
        config.grid.y.name.as_str(),
        "verdict",
        "m",
        "p",
        "ell",
        "max_modulus",
        "word",
    ])
    .map_err(csv_err)?;
    let opt = |v: Option<u32>| v.map(|v| v.to_string()).unwrap_or_default();
    for cell in cells {
        let (m, p, ell, modulus, word) = match &cell.verdict {
            Verdict::StableFixedPoint { side, max_modulus } => (
                None,
                Some(1),
                Some(u32::from(*side == Symbol::L)),
                max_modulus.to_string(),
                side.as_char().to_string(),
            ),
            Verdict::ModeLocked {
                m,
                p,
                ell,
                word,
                max_modulus,
            } => (
                *m,
                Some(*p),
                Some(*ell),
                max_modulus.to_string(),
                word.to_string(),
            ),
            _ => (None, None, None, String::new(), String::new()),
        };
        w.write_record([
            cell.x.to_string(),
            cell.y.to_string(),
            cell.verdict.label().to_string(),
            opt(m),
            opt(p),
            opt(ell),
            modulus,
            word,
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// `(1 / 2 pi) acos(alpha / 2)`: where on `beta = -1/2` the tongue of this
/// rotation number roots.
pub fn theoretical_tongue_root(alpha: f64) -> Result<f64> {
    if !(-2.0..=2.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "tongue roots need |alpha| <= 2, got {alpha}"
        )));
    }
    Ok((alpha / 2.0).acos() / std::f64::consts::TAU)
}

/// Inverse of [`theoretical_tongue_root`] for `omega = m / p`.
pub fn tongue_root_alpha(m: u32, p: u32) -> f64 {
    2.0 * (std::f64::consts::TAU * m as f64 / p as f64).cos()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PinchCandidate {
    pub x: f64,
    pub y: f64,
    pub ells: (u32, u32),
    /// Tongue cells in this row.
    pub row_width: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TongueSummary {
    pub m: u32,
    pub p: u32,
    pub cells: usize,
    pub cells_by_ell: BTreeMap<u32, usize>,
    /// PWS2D with `(alpha, beta)` axes only.
    pub root_alpha_theory: Option<f64>,
    pub root_alpha_observed: Option<f64>,
    pub pinch_candidates: Vec<PinchCandidate>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionCheck {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub word: Word,
    pub neighbour_word: Word,
    pub outcome: String,
    pub classification: Option<BcbClass>,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub config: ScanConfig,
    pub cells: usize,
    pub fixed_point_cells: BTreeMap<String, usize>,
    pub no_stable_cells: usize,
    pub skipped_cells: usize,
    pub tongues: Vec<TongueSummary>,
    pub transitions: Vec<TransitionCheck>,
    pub violations: usize,
}

impl ScanSummary {
    pub fn tongue(&self, m: u32, p: u32) -> Option<&TongueSummary> {
        self.tongues.iter().find(|t| t.m == m && t.p == p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries always serialize")
    }
}

fn pws2d_axes(spec: &GridSpec) -> Option<bool> {
    match spec.example_family()? {
        ExampleFamily::Pws2d { .. } => match (spec.x.name.parse().ok()?, spec.y.name.parse().ok()?)
        {
            (Param::Alpha, Param::Beta) => Some(true),
            (Param::Beta, Param::Alpha) => Some(false),
            _ => None,
        },
        _ => None,
    }
}

/// Per-tongue counts, root intercepts, pinch candidates and the check that
/// no straight `l`-transition between neighbouring cells is a persistence.
pub fn summarize(config: &ScanConfig, cells: &[CellResult]) -> ScanSummary {
    let grid = &config.grid;
    let nx = grid.x.count;
    let at = |i: usize, j: usize| &cells[j * nx + i];

    let mut fixed_point_cells = BTreeMap::new();
    let mut no_stable_cells = 0;
    let mut skipped_cells = 0;
    let mut by_tongue: BTreeMap<(u32, u32), Vec<&CellResult>> = BTreeMap::new();
    for cell in cells {
        match &cell.verdict {
            Verdict::StableFixedPoint { side, .. } => {
                *fixed_point_cells
                    .entry(side.as_char().to_string())
                    .or_insert(0) += 1;
            }
            Verdict::NoStablePeriodic { .. } => no_stable_cells += 1,
            Verdict::Skipped { .. } => skipped_cells += 1,
            Verdict::ModeLocked { .. } => {}
        }
        if let Some((m, p, _)) = cell.verdict.tongue() {
            by_tongue.entry((m, p)).or_default().push(cell);
        }
    }

    let axes = pws2d_axes(grid);
    let mut tongues = Vec::new();
    for ((m, p), members) in &by_tongue {
        let mut cells_by_ell = BTreeMap::new();
        for c in members {
            let (_, _, ell) = c.verdict.tongue().unwrap();
            *cells_by_ell.entry(ell).or_insert(0) += 1;
        }
        let (root_alpha_theory, root_alpha_observed) = match axes {
            Some(alpha_is_x) => {
                let beta = |c: &CellResult| if alpha_is_x { c.y } else { c.x };
                let alpha = |c: &CellResult| if alpha_is_x { c.x } else { c.y };
                let top = members
                    .iter()
                    .map(|c| beta(c))
                    .fold(f64::NEG_INFINITY, f64::max);
                let row: Vec<f64> = members
                    .iter()
                    .filter(|c| beta(c) == top)
                    .map(|c| alpha(c))
                    .collect();
                let observed = (top <= -0.5 && !row.is_empty())
                    .then(|| row.iter().sum::<f64>() / row.len() as f64);
                (Some(tongue_root_alpha(*m, *p)), observed)
            }
            None => (None, None),
        };

        let mut row_width: BTreeMap<usize, usize> = BTreeMap::new();
        for c in members {
            *row_width.entry(c.j).or_insert(0) += 1;
        }
        let mut pinch_candidates = Vec::new();
        for c in members {
            let (_, _, ell) = c.verdict.tongue().unwrap();
            for (di, dj) in [(1usize, 0usize), (0, 1)] {
                let (ni, nj) = (c.i + di, c.j + dj);
                if ni >= nx || nj >= grid.y.count {
                    continue;
                }
                let other = at(ni, nj);
                let Some((om, op, oell)) = other.verdict.tongue() else {
                    continue;
                };
                if (om, op) != (*m, *p) || oell == ell {
                    continue;
                }
                let width = row_width[&c.j].min(row_width[&nj]);
                if width <= 2 {
                    pinch_candidates.push(PinchCandidate {
                        x: 0.5 * (c.x + other.x),
                        y: 0.5 * (c.y + other.y),
                        ells: (ell, oell),
                        row_width: width,
                    });
                }
            }
        }
        tongues.push(TongueSummary {
            m: *m,
            p: *p,
            cells: members.len(),
            cells_by_ell,
            root_alpha_theory,
            root_alpha_observed,
            pinch_candidates,
        });
    }

    let transitions = check_transitions(config, cells);
    let violations = transitions.iter().filter(|t| t.violation).count();
    ScanSummary {
        config: config.clone(),
        cells: cells.len(),
        fixed_point_cells,
        no_stable_cells,
        skipped_cells,
        tongues,
        transitions,
        violations,
    }
}

/// The segment between two grid points as a one-parameter family on `[0, 1]`.
struct Segment<'a> {
    grid: &'a GridSpec,
    from: (f64, f64),
    to: (f64, f64),
}

impl Family for Segment<'_> {
    fn at(&self, eta: f64) -> Result<PwlMap> {
        self.grid.map_at(
            self.from.0 + eta * (self.to.0 - self.from.0),
            self.from.1 + eta * (self.to.1 - self.from.1),
        )
    }

    fn describe(&self) -> String {
        format!("segment {:?} -> {:?}", self.from, self.to)
    }
}

/// Index `k` and shift `s` with `other.shifted(s)` equal to `word` flipped at `k`.
fn single_flip(word: &Word, other: &Word) -> Option<usize> {
    if word.len() != other.len() {
        return None;
    }
    (0..word.len() as i64).find_map(|s| {
        let shifted = other.shifted(s);
        let diff: Vec<usize> = (0..word.len()).filter(|&i| word[i] != shifted[i]).collect();
        (diff.len() == 1).then(|| diff[0])
    })
}

fn check_transitions(config: &ScanConfig, cells: &[CellResult]) -> Vec<TransitionCheck> {
    let grid = &config.grid;
    let nx = grid.x.count;
    let mut pairs = Vec::new();
    for c in cells {
        let Some((m, p, ell)) = c.verdict.tongue() else {
            continue;
        };
        for (di, dj) in [(1usize, 0usize), (0, 1)] {
            let (ni, nj) = (c.i + di, c.j + dj);
            if ni >= nx || nj >= grid.y.count {
                continue;
            }
            let other = &cells[nj * nx + ni];
            let Some((om, op, oell)) = other.verdict.tongue() else {
                continue;
            };
            if (om, op) == (m, p) && oell.abs_diff(ell) == 1 {
                pairs.push((c, other));
            }
        }
    }
    pairs
        .par_iter()
        .map(|(a, b)| check_pair(config, a, b))
        .collect()
}

fn check_pair(config: &ScanConfig, a: &CellResult, b: &CellResult) -> TransitionCheck {
    let word = match &a.verdict {
        Verdict::ModeLocked { word, .. } => word.clone(),
        _ => unreachable!("pairs are mode-locked"),
    };
    let neighbour_word = match &b.verdict {
        Verdict::ModeLocked { word, .. } => word.clone(),
        _ => unreachable!("pairs are mode-locked"),
    };
    let mut check = TransitionCheck {
        from: (a.x, a.y),
        to: (b.x, b.y),
        word: word.clone(),
        neighbour_word: neighbour_word.clone(),
        outcome: String::new(),
        classification: None,
        violation: false,
    };
    let Some(k) = single_flip(&word, &neighbour_word) else {
        check.outcome = "words differ in more than one symbol".into();
        return check;
    };
    let family = Segment {
        grid: &config.grid,
        from: check.from,
        to: check.to,
    };
    let tol = &config.tolerances;
    match locate_bcb_with(&family, &word, k, (0.0, 1.0), tol)
        .and_then(|e| classify_bcb_with(&e, &family, tol))
    {
        Ok(event) => {
            let audit = rotational_bcb_audit(&event);
            check.classification = event.classification;
            check.violation = audit.verdict == AuditVerdict::TheoremViolation;
            check.outcome = format!("bcb at eta = {}: {}", event.eta_star, audit.reason);
        }
        Err(e) => check.outcome = format!("no direct crossing: {e}"),
    }
    check
}

/// Boundary of the admissible interval of a word along a slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryEnd {
    /// Refined boundary value.
    pub eta: f64,
    /// Coarse bracket, admissible end first; suitable for `locate_bcb`.
    pub bracket: (f64, f64),
    /// Point indices on the wrong side of, or on, the switching manifold just
    /// past the boundary.
    pub colliding: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub word: Word,
    pub interval: (f64, f64),
    pub ends: Vec<BoundaryEnd>,
    pub stable_somewhere: bool,
    pub width: f64,
    /// Width below the sampling step: possibly a shrinking point.
    pub possible_shrinking_point: bool,
}

fn admissible_at(
    family: &dyn Family,
    word: &Word,
    eta: f64,
    tol: &Tolerances,
) -> Option<crate::cycles::Cycle> {
    let map = family.at(eta).ok()?;
    solve_cycle_with(&map, word, tol)
        .ok()
        .filter(|c| c.is_admissible())
}

/// Samples `[lo, hi]` at `samples` points, takes the first admissible run
/// containing a stable cycle (or the first run if none is stable) and
/// bisects admissibility loss at both ends.
pub fn refine_boundary(
    family: &dyn Family,
    word: &Word,
    lo: f64,
    hi: f64,
    samples: usize,
    tol: &Tolerances,
) -> Result<BoundaryReport> {
    let samples = samples.max(2);
    let etas: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    let cycles: Vec<_> = etas
        .iter()
        .map(|&e| admissible_at(family, word, e, tol))
        .collect();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < samples {
        if cycles[i].is_some() {
            let len = cycles[i..].iter().take_while(|c| c.is_some()).count();
            runs.push((i, i + len - 1));
            i += len;
        } else {
            i += 1;
        }
    }
    let stable_run = |&(a, b): &(usize, usize)| cycles[a..=b].iter().flatten().any(|c| c.stable);
    let (first, last) = runs
        .iter()
        .find(|r| stable_run(r))
        .or(runs.first())
        .copied()
        .ok_or(Error::EmptyAdmissibleSet)?;
    let stable_somewhere = stable_run(&(first, last));

    let refine = |inside: f64, outside: f64| -> BoundaryEnd {
        let (mut a, mut b) = (inside, outside);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b || (b - a).abs() <= 1e-12 {
                break;
            }
            if admissible_at(family, word, mid, tol).is_some() {
                a = mid;
            } else {
                b = mid;
            }
        }
        let colliding = family
            .at(b)
            .ok()
            .and_then(|map| solve_cycle_with(&map, word, tol).ok())
            .map(|c| {
                c.points
                    .iter()
                    .zip(word.iter())
                    .enumerate()
                    .filter(|(_, (y, s))| {
                        in_boundary_band(y, tol.sign) || (y[0] < 0.0) != (*s == Symbol::L)
                    })
                    .map(|(k, _)| k)
                    .collect()
            })
            .unwrap_or_default();
        BoundaryEnd {
            eta: 0.5 * (a + b),
            bracket: (inside, outside),
            colliding,
        }
    };

    let mut ends = Vec::new();
    let mut interval = (etas[first], etas[last]);
    if first > 0 {
        let end = refine(etas[first], etas[first - 1]);
        interval.0 = end.eta;
        ends.push(end);
    }
    if last + 1 < samples {
        let end = refine(etas[last], etas[last + 1]);
        interval.1 = end.eta;
        ends.push(end);
    }
    let width = (interval.1 - interval.0).abs();
    let step = (hi - lo).abs() / (samples - 1) as f64;
    Ok(BoundaryReport {
        word: word.clone(),
        interval,
        ends,
        stable_somewhere,
        width,
        possible_shrinking_point: width < step,
    })
}
