//! Border-collision bifurcations of periodic solutions.
//!
//! Along a one-parameter family a point of an X-cycle can hit `x_1 = 0`.
//! Past that value the cycle continues as the cycle of the word with the
//! colliding symbol flipped. The bifurcation is a persistence when the two
//! cycles are admissible on opposite sides, and a nonsmooth fold when they
//! are admissible on the same side and annihilate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cycles::{solve_cycle_with, word_matrices};
use crate::error::{Error, Result};
use crate::pwlmap::{Admissibility, ExampleFamily, Param, PwlMap};
use crate::tol::Tolerances;
use crate::words::{
    gcd, make_rotational, mult_inverse, rotational_flip_set, rotational_representations, Word,
};

/// A continuous assignment `eta -> map`. Implementations must be pure.
pub trait Family: Sync {
    fn at(&self, eta: f64) -> Result<PwlMap>;
    fn describe(&self) -> String;
}

/// Varies one parameter of a built-in family.
#[derive(Clone, Debug, Serialize)]
pub struct ParamFamily {
    pub base: ExampleFamily,
    pub param: Param,
}

impl ParamFamily {
    pub fn new(base: ExampleFamily, param: Param) -> Result<Self> {
        base.get(param)?;
        Ok(ParamFamily { base, param })
    }
}

impl Family for ParamFamily {
    fn at(&self, eta: f64) -> Result<PwlMap> {
        Ok(self.base.with(self.param, eta)?.build())
    }

    fn describe(&self) -> String {
        format!("{:?} with {} varying", self.base, self.param)
    }
}

/// Straight line `p0 + eta * dir` through normal-form parameter space,
/// ordered `(tau_l, delta_l, tau_r, delta_r)`.
#[derive(Clone, Debug, Serialize)]
pub struct NormalFormLine {
    pub origin: [f64; 4],
    pub direction: [f64; 4],
}

impl NormalFormLine {
    pub fn params_at(&self, eta: f64) -> [f64; 4] {
        std::array::from_fn(|i| self.origin[i] + eta * self.direction[i])
    }
}

impl Family for NormalFormLine {
    fn at(&self, eta: f64) -> Result<PwlMap> {
        let [tl, dl, tr, dr] = self.params_at(eta);
        Ok(crate::pwlmap::normal_form_2d(tl, dl, tr, dr))
    }

    fn describe(&self) -> String {
        format!(
            "normal form line {:?} + eta * {:?}",
            self.origin, self.direction
        )
    }
}

/// Any pure closure.
pub struct FnFamily<F> {
    f: F,
    description: String,
}

impl<F: Fn(f64) -> Result<PwlMap> + Sync> FnFamily<F> {
    pub fn new(description: impl Into<String>, f: F) -> Self {
        FnFamily {
            f,
            description: description.into(),
        }
    }
}

impl<F: Fn(f64) -> Result<PwlMap> + Sync> Family for FnFamily<F> {
    fn at(&self, eta: f64) -> Result<PwlMap> {
        (self.f)(eta)
    }

    fn describe(&self) -> String {
        self.description.clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BcbClass {
    Persistence,
    NonsmoothFold,
    Degenerate,
}

impl std::fmt::Display for BcbClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BcbClass::Persistence => "persistence",
            BcbClass::NonsmoothFold => "nonsmooth_fold",
            BcbClass::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Genericity {
    pub det_i_minus_m: f64,
    pub det_i_minus_m_flipped: f64,
    pub rho_b: f64,
    pub satisfied: bool,
}

/// Admissibility of both cycles a small step either side of the event.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SideData {
    pub epsilon: f64,
    pub below: [Option<Admissibility>; 2],
    pub above: [Option<Admissibility>; 2],
    /// `det(P)` for the word shifted so the colliding symbol comes first.
    pub det_p_below: f64,
    pub det_p_above: f64,
    /// Side verdict, if the data pin one down.
    pub verdict: Option<BcbClass>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BcbEvent {
    pub eta_star: f64,
    pub bracket: (f64, f64),
    pub word: Word,
    pub flipped_word: Word,
    pub flip_index: usize,
    /// `y^(k)_1` at `eta_star`.
    pub colliding_value: f64,
    pub genericity: Genericity,
    pub classification: Option<BcbClass>,
    pub determinant_verdict: Option<BcbClass>,
    pub side_data: Option<SideData>,
    pub iterations: usize,
}

impl BcbEvent {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("events always serialize")
    }
}

/// Bisection stops once the bracket is narrower than this.
pub const ETA_RESOLUTION: f64 = 1e-12;

const MAX_BISECTIONS: usize = 400;

fn det_and_value(
    family: &dyn Family,
    word: &Word,
    k: usize,
    eta: f64,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    let map = family.at(eta)?;
    let det = word_matrices(&map, word).det_i_minus_m;
    if det.abs() <= tol.sign {
        return Err(Error::LostUniqueness { eta });
    }
    let cycle = solve_cycle_with(&map, word, tol)?;
    Ok((det, cycle.points[k][0]))
}

pub fn locate_bcb(
    family: &dyn Family,
    word: &Word,
    k: usize,
    bracket: (f64, f64),
) -> Result<BcbEvent> {
    locate_bcb_with(family, word, k, bracket, &Tolerances::default())
}

/// Bisects on `y^(k)_1(eta)` until the bracket is below [`ETA_RESOLUTION`].
pub fn locate_bcb_with(
    family: &dyn Family,
    word: &Word,
    k: usize,
    bracket: (f64, f64),
    tol: &Tolerances,
) -> Result<BcbEvent> {
    if k >= word.len() {
        return Err(Error::domain(format!(
            "flip index {k} out of range for period {}",
            word.len()
        )));
    }
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite()) || lo == hi {
        return Err(Error::domain("bracket must be two distinct finite values"));
    }
    let (det_lo, mut f_lo) = det_and_value(family, word, k, lo, tol)?;
    let (det_hi, f_hi) = det_and_value(family, word, k, hi, tol)?;
    if det_lo.signum() != det_hi.signum() {
        return Err(Error::LostUniqueness {
            eta: 0.5 * (lo + hi),
        });
    }
    if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }

    let mut iterations = 0;
    let mut best = if f_lo.abs() <= f_hi.abs() {
        (lo, f_lo)
    } else {
        (hi, f_hi)
    };
    while (hi - lo).abs() > ETA_RESOLUTION && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        iterations += 1;
        let (det_mid, f_mid) = det_and_value(family, word, k, mid, tol)?;
        if det_mid.signum() != det_lo.signum() {
            return Err(Error::LostUniqueness { eta: mid });
        }
        if f_mid.abs() < best.1.abs() {
            best = (mid, f_mid);
        }
        if f_mid == 0.0 {
            break;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let (eta_star, colliding_value) = best;
    let map = family.at(eta_star)?;
    let flipped_word = word.flipped(k as i64);
    let det_x = word_matrices(&map, word).det_i_minus_m;
    let det_y = word_matrices(&map, &flipped_word).det_i_minus_m;
    let rho_b = map.rho_vector().rho_b;
    let satisfied = [det_x, det_y, rho_b].iter().all(|v| v.abs() > tol.sign);
    Ok(BcbEvent {
        eta_star,
        bracket,
        word: word.clone(),
        flipped_word,
        flip_index: k,
        colliding_value,
        genericity: Genericity {
            det_i_minus_m: det_x,
            det_i_minus_m_flipped: det_y,
            rho_b,
            satisfied,
        },
        classification: None,
        determinant_verdict: None,
        side_data: None,
        iterations,
    })
}

/// Sign test on `det(I - M_X)` and `det(I - M_{X^k})`.
pub fn determinant_verdict(det_x: f64, det_flipped: f64) -> BcbClass {
    if det_x.signum() == det_flipped.signum() {
        BcbClass::Persistence
    } else {
        BcbClass::NonsmoothFold
    }
}

/// Side verdict from where each cycle is admissible: `[below, above]` for
/// the word and for its flip.
pub fn side_verdict(x: [bool; 2], y: [bool; 2]) -> Option<BcbClass> {
    match (x, y) {
        ([true, false], [true, false]) | ([false, true], [false, true]) => {
            Some(BcbClass::NonsmoothFold)
        }
        ([true, false], [false, true]) | ([false, true], [true, false]) => {
            Some(BcbClass::Persistence)
        }
        _ => None,
    }
}

/// Combines both methods. Inconclusive side data gives `Degenerate`; two
/// conclusive but different answers are an error, never resolved silently.
pub fn reconcile(determinant: BcbClass, sides: Option<BcbClass>) -> Result<BcbClass> {
    match sides {
        None => Ok(BcbClass::Degenerate),
        Some(s) if s == determinant => Ok(s),
        Some(s) => Err(Error::MethodDisagreement {
            determinant: determinant.to_string(),
            sides: s.to_string(),
        }),
    }
}

fn admissibility_at(
    family: &dyn Family,
    word: &Word,
    eta: f64,
    tol: &Tolerances,
) -> Result<Option<Admissibility>> {
    let map = family.at(eta)?;
    Ok(solve_cycle_with(&map, word, tol)
        .ok()
        .map(|c| c.admissibility))
}

pub fn classify_bcb(event: &BcbEvent, family: &dyn Family) -> Result<BcbEvent> {
    classify_bcb_with(event, family, &Tolerances::default())
}

pub fn classify_bcb_with(
    event: &BcbEvent,
    family: &dyn Family,
    tol: &Tolerances,
) -> Result<BcbEvent> {
    let mut out = event.clone();
    if !event.genericity.satisfied {
        out.classification = Some(BcbClass::Degenerate);
        return Ok(out);
    }
    let k = event.flip_index as i64;
    let front = event.word.shifted(k);
    let map = family.at(event.eta_star)?;
    let det_x = word_matrices(&map, &front).det_i_minus_m;
    let det_y = word_matrices(&map, &front.flipped(0)).det_i_minus_m;
    let primary = determinant_verdict(det_x, det_y);
    out.determinant_verdict = Some(primary);

    let width = (event.bracket.1 - event.bracket.0).abs();
    let mut epsilon = (1e-4 * width).max(1e-8);
    let mut sides = None;
    for attempt in 0..4 {
        let below_eta = event.eta_star - epsilon;
        let above_eta = event.eta_star + epsilon;
        let below = [
            admissibility_at(family, &event.word, below_eta, tol)?,
            admissibility_at(family, &event.flipped_word, below_eta, tol)?,
        ];
        let above = [
            admissibility_at(family, &event.word, above_eta, tol)?,
            admissibility_at(family, &event.flipped_word, above_eta, tol)?,
        ];
        let boundary = below
            .iter()
            .chain(&above)
            .any(|a| *a == Some(Admissibility::Boundary));
        let ok = |a: Option<Admissibility>| a == Some(Admissibility::Admissible);
        let verdict = side_verdict([ok(below[0]), ok(above[0])], [ok(below[1]), ok(above[1])]);
        let det_p = |eta| -> Result<f64> { Ok(word_matrices(&family.at(eta)?, &front).det_p) };
        sides = Some(SideData {
            epsilon,
            below,
            above,
            det_p_below: det_p(below_eta)?,
            det_p_above: det_p(above_eta)?,
            verdict,
        });
        if !boundary || attempt == 3 {
            break;
        }
        epsilon *= 2.0;
    }
    let sides = sides.expect("at least one attempt");
    out.classification = Some(reconcile(primary, sides.verdict)?);
    out.side_data = Some(sides);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AuditVerdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "N/A")]
    NotApplicable,
    #[serde(rename = "THEOREM_VIOLATION")]
    TheoremViolation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepresentationCheck {
    pub ell: u32,
    pub m: u32,
    pub p: u32,
    /// `j` with `k = j d mod p`.
    pub j: u32,
    pub in_flip_set: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub verdict: AuditVerdict,
    pub reason: String,
    pub representations: Vec<RepresentationCheck>,
}

/// A rotational word whose colliding index is `j d` with `j` in
/// `{0, l-1, l, p-1}` must undergo a nonsmooth fold.
pub fn rotational_bcb_audit(event: &BcbEvent) -> AuditReport {
    let na = |reason: &str, representations| AuditReport {
        verdict: AuditVerdict::NotApplicable,
        reason: reason.to_string(),
        representations,
    };
    let reps = rotational_representations(&event.word);
    if reps.is_empty() {
        return na("word is not rotational", Vec::new());
    }
    let checks: Vec<RepresentationCheck> = reps
        .iter()
        .map(|r| {
            let j = r.j_of_word_index(event.flip_index as u32);
            let in_flip_set = rotational_flip_set(r).is_ok_and(|set| set.contains(&j));
            RepresentationCheck {
                ell: r.ell,
                m: r.m,
                p: r.p,
                j,
                in_flip_set,
            }
        })
        .collect();
    if !checks.iter().any(|c| c.in_flip_set) {
        return na("flip index is outside the j-set", checks);
    }
    if !event.genericity.satisfied {
        return na("genericity fails", checks);
    }
    match event.classification {
        None => na("event not classified", checks),
        Some(BcbClass::Degenerate) => na("degenerate event", checks),
        Some(BcbClass::NonsmoothFold) => AuditReport {
            verdict: AuditVerdict::Pass,
            reason: "rotational j-set flip is a nonsmooth fold".into(),
            representations: checks,
        },
        Some(BcbClass::Persistence) => AuditReport {
            verdict: AuditVerdict::TheoremViolation,
            reason: "rotational j-set flip classified as persistence".into(),
            representations: checks,
        },
    }
}

/// Where along a sampled slice a word stops being admissible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdmissibilityEdge {
    /// Admissible end first.
    pub bracket: (f64, f64),
    /// Indices whose side is wrong at the far end.
    pub colliding: Vec<usize>,
}

/// Scans `count` evenly spaced values on `[lo, hi]` and returns every step
/// across which the word goes from Admissible to something else, or back.
pub fn admissibility_edges(
    family: &dyn Family,
    word: &Word,
    lo: f64,
    hi: f64,
    count: usize,
    tol: &Tolerances,
) -> Vec<AdmissibilityEdge> {
    let count = count.max(2);
    let etas: Vec<f64> = (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect();
    let cycles: Vec<_> = etas
        .iter()
        .map(|&eta| {
            family
                .at(eta)
                .ok()
                .and_then(|map| solve_cycle_with(&map, word, tol).ok())
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..count - 1 {
        let (a, b) = (&cycles[i], &cycles[i + 1]);
        let adm = |c: &Option<crate::cycles::Cycle>| c.as_ref().is_some_and(|c| c.is_admissible());
        let (inside, outside, bracket) = match (adm(a), adm(b)) {
            (true, false) => (a, b, (etas[i], etas[i + 1])),
            (false, true) => (b, a, (etas[i + 1], etas[i])),
            _ => continue,
        };
        let colliding = match (inside, outside) {
            (Some(_), Some(out)) => out
                .points
                .iter()
                .zip(word.iter())
                .enumerate()
                .filter(|(_, (y, s))| (y[0] < 0.0) != (*s == crate::words::Symbol::L))
                .map(|(k, _)| k)
                .collect(),
            _ => Vec::new(),
        };
        edges.push(AdmissibilityEdge { bracket, colliding });
    }
    edges
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignOptions {
    pub seed: u64,
    /// Stop once this many families produced a classified, non-degenerate event.
    pub target_families: usize,
    pub max_attempts: usize,
    pub p_max: u32,
    pub grid: usize,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            seed: 0,
            target_families: 200,
            max_attempts: 4000,
            p_max: 9,
            grid: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignRecord {
    pub attempt: usize,
    pub family: NormalFormLine,
    pub event: BcbEvent,
    pub audit: AuditReport,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub attempts: usize,
    /// Families with an admissible rotational cycle and a bracketed j-set BCB.
    pub qualifying_families: usize,
    pub events: usize,
    pub nonsmooth_folds: usize,
    pub persistence: usize,
    pub degenerate: usize,
    pub failures: usize,
    pub violations: Vec<CampaignRecord>,
    pub disagreements: Vec<String>,
}

impl CampaignReport {
    pub fn non_degenerate(&self) -> usize {
        self.nonsmooth_folds + self.persistence
    }
}

enum AttemptOutcome {
    NoEvent,
    Failed(String),
    Event(Box<CampaignRecord>),
}

/// A random line through normal-form space passing near the root of the
/// `m/p` tongue of the PWS2D family, with all four parameters perturbed.
fn random_family(rng: &mut ChaCha8Rng, m: u32, p: u32) -> NormalFormLine {
    let alpha =
        2.0 * (std::f64::consts::TAU * m as f64 / p as f64).cos() + rng.gen_range(-0.15..0.15);
    let beta = -0.5 - rng.gen_range(0.02..0.4);
    let jitter = |rng: &mut ChaCha8Rng| rng.gen_range(-0.05..0.05);
    let origin = [
        alpha + jitter(rng),
        -beta - 0.5 + jitter(rng),
        alpha + jitter(rng),
        -beta + 0.5 + jitter(rng),
    ];
    let mut direction: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    let norm = direction
        .iter()
        .map(|d| d * d)
        .sum::<f64>()
        .sqrt()
        .max(1e-12);
    for d in direction.iter_mut() {
        *d *= 0.5 / norm;
    }
    NormalFormLine { origin, direction }
}

fn run_attempt(attempt: usize, opts: &CampaignOptions, tol: &Tolerances) -> AttemptOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(attempt as u64);
    let p = rng.gen_range(5..=opts.p_max.max(5));
    let coprime: Vec<u32> = (1..p).filter(|&m| gcd(m, p) == 1).collect();
    let m = coprime[rng.gen_range(0..coprime.len())];
    let ell = rng.gen_range(2..=p - 2);
    let family = random_family(&mut rng, m, p);
    let word = make_rotational(ell, m, p).expect("valid rotational parameters");
    let params = rotational_representations(&word)
        .into_iter()
        .find(|r| r.m == m)
        .expect("word built from (l, m, p)");
    let flip_set = match rotational_flip_set(&params) {
        Ok(s) => s,
        Err(e) => return AttemptOutcome::Failed(e.to_string()),
    };
    debug_assert_eq!(mult_inverse(m, p).ok(), Some(params.d));

    let edges = admissibility_edges(&family, &word, -1.0, 1.0, opts.grid, tol);
    for edge in edges {
        let [k] = edge.colliding[..] else { continue };
        if !flip_set.contains(&params.j_of_word_index(k as u32)) {
            continue;
        }
        let event = match locate_bcb_with(&family, &word, k, edge.bracket, tol) {
            Ok(e) => e,
            Err(Error::LostUniqueness { .. } | Error::NoSignChange { .. }) => continue,
            Err(e) => return AttemptOutcome::Failed(e.to_string()),
        };
        if !event.genericity.satisfied {
            continue;
        }
        let event = match classify_bcb_with(&event, &family, tol) {
            Ok(e) => e,
            Err(e) => return AttemptOutcome::Failed(e.to_string()),
        };
        let audit = rotational_bcb_audit(&event);
        return AttemptOutcome::Event(Box::new(CampaignRecord {
            attempt,
            family,
            event,
            audit,
        }));
    }
    AttemptOutcome::NoEvent
}

/// Randomised audit of the nonsmooth-fold property of rotational words.
/// Attempts are seeded per index, so results do not depend on thread count.
pub fn run_campaign(opts: &CampaignOptions) -> CampaignReport {
    let tol = Tolerances::default();
    let mut report = CampaignReport {
        seed: opts.seed,
        ..Default::default()
    };
    let batch = 256;
    let mut next = 0;
    while next < opts.max_attempts && report.non_degenerate() < opts.target_families {
        let end = (next + batch).min(opts.max_attempts);
        let outcomes: Vec<AttemptOutcome> = (next..end)
            .into_par_iter()
            .map(|i| run_attempt(i, opts, &tol))
            .collect();
        for outcome in outcomes {
            if report.non_degenerate() >= opts.target_families {
                break;
            }
            report.attempts += 1;
            match outcome {
                AttemptOutcome::NoEvent => {}
                AttemptOutcome::Failed(msg) => {
                    report.failures += 1;
                    if msg.contains("disagree") {
                        report.disagreements.push(msg);
                    }
                }
                AttemptOutcome::Event(record) => {
                    report.qualifying_families += 1;
                    report.events += 1;
                    match record.event.classification {
                        Some(BcbClass::NonsmoothFold) => report.nonsmooth_folds += 1,
                        Some(BcbClass::Persistence) => report.persistence += 1,
                        _ => report.degenerate += 1,
                    }
                    if record.audit.verdict == AuditVerdict::TheoremViolation {
                        report.violations.push(*record);
                    }
                }
            }
        }
        next = end;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::classify_rotational;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn locked_family() -> ParamFamily {
        ParamFamily::new(
            ExampleFamily::Pws2d {
                alpha: -0.444,
                beta: -0.6,
            },
            Param::Beta,
        )
        .unwrap()
    }

    fn period_nine_family() -> ParamFamily {
        ParamFamily::new(
            ExampleFamily::NormalForm2d {
                tau_l: 0.7,
                delta_l: 0.1,
                tau_r: -1.6,
                delta_r: 1.2,
            },
            Param::TauR,
        )
        .unwrap()
    }

    /// The lower edge (in beta) of the F[2,2,7] region on the alpha = -0.444 slice.
    fn locked_edge() -> (Word, AdmissibilityEdge) {
        let word = make_rotational(2, 2, 7).unwrap();
        let edges = admissibility_edges(
            &locked_family(),
            &word,
            -0.8,
            -0.6,
            401,
            &Tolerances::default(),
        );
        let edge = edges
            .into_iter()
            .find(|e| e.bracket.0 > e.bracket.1)
            .expect("lower edge inside the window");
        (word, edge)
    }

    #[test]
    fn linear_root_is_found_exactly() {
        // b_1 shifts every point of the period-one cycle by the same amount
        let family = FnFamily::new("shifted contraction", |eta: f64| {
            let a = crate::matrix::Mat::diagonal(&[0.5, 0.5]);
            PwlMap::new(
                a.clone(),
                a,
                crate::matrix::Vector::from([0.5 * (eta - 0.3), 0.0]),
            )
        });
        let event = locate_bcb(&family, &w("R"), 0, (-1.0, 1.0)).unwrap();
        assert!((event.eta_star - 0.3).abs() < 1e-12);
        assert!(event.colliding_value.abs() < 1e-9);
    }

    #[test]
    fn no_sign_change_is_a_domain_error() {
        let err = locate_bcb(&locked_family(), &w("F[2,2,7]"), 0, (-0.61, -0.59)).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn tongue_edge_is_a_nonsmooth_fold() {
        let (word, edge) = locked_edge();
        assert_eq!(edge.colliding.len(), 1);
        let k = edge.colliding[0];
        let family = locked_family();
        let event = locate_bcb(&family, &word, k, edge.bracket).unwrap();
        assert!(event.colliding_value.abs() < 1e-9);
        assert!(event.genericity.satisfied);
        let classified = classify_bcb(&event, &family).unwrap();
        assert_eq!(classified.classification, Some(BcbClass::NonsmoothFold));
        let sides = classified.side_data.as_ref().unwrap();
        assert!(sides.det_p_below.signum() != sides.det_p_above.signum());
        // the partner is the l = 1 cycle of the same tongue
        let partner = rotational_representations(&classified.flipped_word)
            .into_iter()
            .find(|r| r.m == 2)
            .unwrap();
        assert_eq!((partner.ell, partner.p), (1, 7));

        let audit = rotational_bcb_audit(&classified);
        assert_eq!(audit.verdict, AuditVerdict::Pass);
    }

    #[test]
    fn classification_is_shift_invariant() {
        let (word, edge) = locked_edge();
        let k = edge.colliding[0];
        let family = locked_family();
        let base = classify_bcb(
            &locate_bcb(&family, &word, k, edge.bracket).unwrap(),
            &family,
        )
        .unwrap();
        for i in 1..7 {
            let shifted = word.shifted(i);
            let k2 = (k as i64 - i).rem_euclid(7) as usize;
            let event = locate_bcb(&family, &shifted, k2, edge.bracket).unwrap();
            assert!((event.eta_star - base.eta_star).abs() < 1e-11);
            let c = classify_bcb(&event, &family).unwrap();
            assert_eq!(c.classification, base.classification);
            assert_eq!(rotational_bcb_audit(&c).verdict, AuditVerdict::Pass);
        }
    }

    #[test]
    fn period_nine_event_is_persistence() {
        let word = w("LLRRRRLRR");
        assert!(classify_rotational(&word).is_none());
        let family = period_nine_family();
        let event = locate_bcb(&family, &word, 7, (-1.63, -1.59)).unwrap();
        let classified = classify_bcb(&event, &family).unwrap();
        assert_eq!(classified.classification, Some(BcbClass::Persistence));
        assert_eq!(classified.word.ell(), 3);
        assert_eq!(classified.flipped_word.ell(), 4);
        assert_eq!(classified.flipped_word.to_string(), "LLRRRRLLR");
        let audit = rotational_bcb_audit(&classified);
        assert_eq!(audit.verdict, AuditVerdict::NotApplicable);
    }

    #[test]
    fn reconcile_reports_disagreement() {
        let err = reconcile(BcbClass::Persistence, Some(BcbClass::NonsmoothFold)).unwrap_err();
        assert!(matches!(err, Error::MethodDisagreement { .. }));
        assert_eq!(err.exit_code(), 4);
        assert_eq!(
            reconcile(BcbClass::NonsmoothFold, Some(BcbClass::NonsmoothFold)).unwrap(),
            BcbClass::NonsmoothFold
        );
        assert_eq!(
            reconcile(BcbClass::Persistence, None).unwrap(),
            BcbClass::Degenerate
        );
    }

    #[test]
    fn side_verdicts() {
        assert_eq!(
            side_verdict([true, false], [true, false]),
            Some(BcbClass::NonsmoothFold)
        );
        assert_eq!(
            side_verdict([false, true], [true, false]),
            Some(BcbClass::Persistence)
        );
        assert_eq!(side_verdict([true, true], [true, false]), None);
        assert_eq!(determinant_verdict(1.0, 2.0), BcbClass::Persistence);
        assert_eq!(determinant_verdict(-1.0, 2.0), BcbClass::NonsmoothFold);
    }

    #[test]
    fn persistence_on_rotational_word_is_flagged() {
        let (word, edge) = locked_edge();
        let family = locked_family();
        let mut event = classify_bcb(
            &locate_bcb(&family, &word, edge.colliding[0], edge.bracket).unwrap(),
            &family,
        )
        .unwrap();
        event.classification = Some(BcbClass::Persistence);
        assert_eq!(
            rotational_bcb_audit(&event).verdict,
            AuditVerdict::TheoremViolation
        );
    }

    #[test]
    fn event_json_fields() {
        let (word, edge) = locked_edge();
        let family = locked_family();
        let event = classify_bcb(
            &locate_bcb(&family, &word, edge.colliding[0], edge.bracket).unwrap(),
            &family,
        )
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&event.to_json()).unwrap();
        assert_eq!(v["classification"], "nonsmooth_fold");
        assert_eq!(v["word"], "LRRRLRR");
        assert!(v["eta_star"].is_number());
        assert!(v["genericity"]["rho_b"].is_number());
    }

    #[test]
    fn small_campaign_is_deterministic_and_clean() {
        let opts = CampaignOptions {
            seed: 7,
            target_families: 20,
            max_attempts: 600,
            ..Default::default()
        };
        let a = run_campaign(&opts);
        assert!(a.violations.is_empty(), "{:?}", a.violations);
        assert!(a.disagreements.is_empty(), "{:?}", a.disagreements);
        assert_eq!(a.non_degenerate(), 20, "{a:?}");
        assert_eq!(a.persistence, 0);
        let b = run_campaign(&opts);
        assert_eq!(a.attempts, b.attempts);
        assert_eq!(a.nonsmooth_folds, b.nonsmooth_folds);
    }

    #[test]
    fn param_family_rejects_foreign_parameter() {
        assert!(ParamFamily::new(
            ExampleFamily::Pws2d {
                alpha: 0.0,
                beta: -0.6
            },
            Param::TauL
        )
        .is_err());
    }
}
