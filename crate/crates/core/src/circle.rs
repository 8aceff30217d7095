//! Invariant circles of planar maps and the circle maps they induce.
//!
//! Points are parametrised by a normalised angle `t` about a center, measured
//! clockwise from the downward vertical, so with the center on the
//! switching manifold `t in (0, 1/2)` exactly when `x_1 < 0`.

use std::f64::consts::TAU;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Vector;
use crate::pwlmap::{ExampleFamily, PwlMap};
use crate::words::{gcd, mult_inverse, Symbol, Word};

/// Orbits whose max-norm exceeds this are treated as divergent.
pub const OVERFLOW_GUARD: f64 = 1e12;

/// Revisit distance used to declare an orbit periodic.
pub const PERIOD_TOL: f64 = 1e-7;

/// Iterates of a map, possibly from several seeds. Within a segment each
/// point is the image of the previous one.
#[derive(Clone, Debug)]
pub struct OrbitSample {
    pub segments: Vec<Vec<Vector>>,
    pub transient_discarded: usize,
    pub source_map: PwlMap,
}

impl OrbitSample {
    pub fn points(&self) -> impl Iterator<Item = &Vector> {
        self.segments.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.segments.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Consecutive `(x, f(x))` pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (&Vector, &Vector)> {
        self.segments
            .iter()
            .flat_map(|s| s.windows(2).map(|w| (&w[0], &w[1])))
    }

    pub fn centroid(&self) -> Vector {
        let n = self.source_map.n();
        let mut sum = Vector::zeros(n);
        let mut count = 0usize;
        for x in self.points() {
            sum = &sum + x;
            count += 1;
        }
        sum.scale(1.0 / count.max(1) as f64)
    }

    /// Largest `|f(x_i) - x_{i+1}|` relative to `1 + |x_{i+1}|`.
    pub fn consistency_defect(&self) -> f64 {
        self.pairs()
            .map(|(x, y)| (&self.source_map.evaluate(x) - y).max_abs() / (1.0 + y.max_abs()))
            .fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let n = self.source_map.n();
        let mut header = vec!["segment".to_string(), "index".to_string()];
        header.extend((1..=n).map(|i| format!("x{i}")));
        w.write_record(&header).map_err(csv_err)?;
        for (s, seg) in self.segments.iter().enumerate() {
            for (i, x) in seg.iter().enumerate() {
                let mut row = vec![s.to_string(), i.to_string()];
                row.extend(x.iter().map(|v| v.to_string()));
                w.write_record(&row).map_err(csv_err)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn guarded_step(map: &PwlMap, x: &Vector, iterate: usize) -> Result<Vector> {
    let y = map.evaluate(x);
    if !y.is_finite() {
        return Err(Error::NonFiniteState { iterate });
    }
    let norm = y.max_abs();
    if norm > OVERFLOW_GUARD {
        return Err(Error::Divergence { iterate, norm });
    }
    Ok(y)
}

/// Iterates `transient` times, then keeps the next `keep` points.
pub fn sample_attractor(
    map: &PwlMap,
    x0: &Vector,
    transient: usize,
    keep: usize,
) -> Result<OrbitSample> {
    if keep == 0 {
        return Err(Error::domain("keep must be positive"));
    }
    if x0.len() != map.n() {
        return Err(Error::DimensionMismatch {
            expected: map.n(),
            got: x0.len(),
        });
    }
    if !x0.is_finite() {
        return Err(Error::NonFiniteState { iterate: 0 });
    }
    let mut x = x0.clone();
    for i in 0..transient {
        x = guarded_step(map, &x, i + 1)?;
    }
    let mut points = Vec::with_capacity(keep);
    points.push(x.clone());
    for i in 1..keep {
        x = guarded_step(map, &x, transient + i)?;
        points.push(x.clone());
    }
    Ok(OrbitSample {
        segments: vec![points],
        transient_discarded: transient,
        source_map: map.clone(),
    })
}

/// Seeds `seeds` points on a circle about `center` and keeps a short orbit
/// segment from each after the transient. Useful when the invariant circle
/// itself attracts but the dynamics on it collapse onto a periodic orbit.
pub fn sample_ring(
    map: &PwlMap,
    center: &Vector,
    radius: f64,
    seeds: usize,
    transient: usize,
    keep: usize,
) -> Result<OrbitSample> {
    if map.n() != 2 || center.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: center.len().max(map.n()),
        });
    }
    if seeds == 0 {
        return Err(Error::domain("seeds must be positive"));
    }
    let mut segments = Vec::with_capacity(seeds);
    for k in 0..seeds {
        let theta = TAU * k as f64 / seeds as f64;
        let x0 = Vector::from([
            center[0] + radius * theta.cos(),
            center[1] + radius * theta.sin(),
        ]);
        let mut sample = sample_attractor(map, &x0, transient, keep)?;
        segments.push(sample.segments.pop().unwrap());
    }
    Ok(OrbitSample {
        segments,
        transient_discarded: transient,
        source_map: map.clone(),
    })
}

/// Smallest lag `p <= p_max` at which the final point revisits an earlier one.
pub fn detect_period(points: &[Vector], p_max: usize, tol: f64) -> Option<usize> {
    let last = points.last()?;
    (1..=p_max.min(points.len().saturating_sub(1)))
        .find(|&p| (last - &points[points.len() - 1 - p]).max_abs() <= tol)
}

/// Normalised angle of `x` about `center`, in `[0, 1)`.
pub fn angle_parameter(x: &Vector, center: &Vector) -> f64 {
    let dx = x[0] - center[0];
    let dy = x[1] - center[1];
    let t = ((-dx).atan2(-dy) / TAU).rem_euclid(1.0);
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

pub fn default_center(family: Option<&ExampleFamily>, orbit: &OrbitSample) -> Vector {
    match family {
        Some(ExampleFamily::Pws2d { .. }) => Vector::from([0.0, -0.5]),
        _ => orbit.centroid(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleOptions {
    pub min_samples: usize,
    /// Largest allowed angular gap between sorted samples.
    pub max_t_gap: f64,
    /// Largest allowed jump of the continued lift between neighbours.
    pub max_image_gap: f64,
    /// Largest tolerated step against the lift's orientation.
    pub monotone_slack: f64,
    pub rotation_iterations: usize,
    pub p_max: u32,
}

impl Default for CircleOptions {
    fn default() -> Self {
        CircleOptions {
            min_samples: 64,
            max_t_gap: 0.05,
            max_image_gap: 0.25,
            monotone_slack: 0.05,
            rotation_iterations: 10_000,
            p_max: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RotationEstimate {
    pub estimate: f64,
    /// `(m, p)` with `m / p` within `error_bound` of the estimate.
    pub approximant: Option<(u32, u32)>,
    pub error_bound: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CircleModel {
    pub center: Vector,
    /// `(t, g(t))`, strictly increasing in `t`.
    pub samples: Vec<(f64, f64)>,
    /// Lift values `G(t_i)` with `G(t_i) - g(t_i)` an integer.
    pub lift: Vec<f64>,
    /// Sample points in the same order as `samples`.
    #[serde(skip)]
    pub points: Vec<Vector>,
    pub c: f64,
    pub lift_offset: i64,
    pub degree: i64,
    pub rotation: Option<RotationEstimate>,
    pub boundary_crossings: usize,
    pub max_t_gap: f64,
    pub monotone_defect: f64,
}

impl CircleModel {
    /// Piecewise-linear interpolant of the lift on the whole line.
    pub fn lift_at(&self, t: f64) -> f64 {
        lift_interpolate(&self.samples, &self.lift, self.degree, t)
    }

    pub fn g(&self, t: f64) -> f64 {
        self.lift_at(t).rem_euclid(1.0)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "g", "lift", "x1", "x2"])
            .map_err(csv_err)?;
        for (((t, g), lift), x) in self.samples.iter().zip(&self.lift).zip(&self.points) {
            w.write_record([
                t.to_string(),
                g.to_string(),
                lift.to_string(),
                x[0].to_string(),
                x[1].to_string(),
            ])
            .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn lift_interpolate(samples: &[(f64, f64)], lift: &[f64], degree: i64, t: f64) -> f64 {
    let t0 = samples[0].0;
    let k = (t - t0).floor();
    let s = t - k;
    let i = samples.partition_point(|&(ti, _)| ti <= s) - 1;
    let (ta, ga) = (samples[i].0, lift[i]);
    let (tb, gb) = match samples.get(i + 1) {
        Some(&(tb, _)) => (tb, lift[i + 1]),
        None => (t0 + 1.0, lift[0] + degree as f64),
    };
    let w = if tb > ta { (s - ta) / (tb - ta) } else { 0.0 };
    ga + w * (gb - ga) + k * degree as f64
}

/// Sorts `(t, g(t))` samples and continues a lift through them. Returns the
/// sorted samples, the lift values and the degree.
type ContinuedLift = (Vec<(f64, f64)>, Vec<f64>, i64, Vec<usize>);

fn continue_lift(mut samples: Vec<(f64, f64)>, max_image_gap: f64) -> Result<ContinuedLift> {
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[a].0.total_cmp(&samples[b].0));
    let mut sorted = Vec::with_capacity(samples.len());
    let mut kept = Vec::with_capacity(samples.len());
    for &i in &order {
        if sorted
            .last()
            .is_none_or(|&(t, _): &(f64, f64)| samples[i].0 > t)
        {
            sorted.push(samples[i]);
            kept.push(i);
        }
    }
    samples = sorted;
    let mut lift = Vec::with_capacity(samples.len());
    lift.push(samples[0].1);
    for i in 1..=samples.len() {
        let g = samples[i % samples.len()].1;
        let prev = lift[i - 1];
        let next = g + (prev - g).round();
        let gap = (next - prev).abs();
        if gap > max_image_gap {
            return Err(Error::AmbiguousLift { index: i, gap });
        }
        lift.push(next);
    }
    let wrapped = lift.pop().unwrap();
    let degree = (wrapped - lift[0]).round() as i64;
    Ok((samples, lift, degree, kept))
}

/// `G(1) - G(0)` for samples `(t, g(t))` of a circle map on `[0, 1)`.
pub fn degree_of(samples: &[(f64, f64)]) -> Result<i64> {
    degree_of_with(samples, CircleOptions::default().max_image_gap)
}

pub fn degree_of_with(samples: &[(f64, f64)], max_image_gap: f64) -> Result<i64> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples {
            got: samples.len(),
            need: 2,
        });
    }
    continue_lift(samples.to_vec(), max_image_gap).map(|(_, _, d, _)| d)
}

/// Best `m / p` with `p <= p_max` and `|x - m/p| <= tol`, smallest `p` first.
pub fn rational_approximant(x: f64, tol: f64, p_max: u32) -> Option<(u32, u32)> {
    (1..=p_max).find_map(|q| {
        let a = (x * q as f64).round();
        ((x - a / q as f64).abs() <= tol).then(|| ((a as i64).rem_euclid(q as i64) as u32, q))
    })
}

/// `(G^N(t0) - t0) / N` reduced mod 1, for a lift `G` of a degree-one map.
pub fn rotation_number(
    lift: impl Fn(f64) -> f64,
    t0: f64,
    iterations: usize,
    p_max: u32,
) -> Result<RotationEstimate> {
    if iterations == 0 {
        return Err(Error::domain("rotation number needs at least one iterate"));
    }
    let mut t = t0;
    for i in 0..iterations {
        t = lift(t);
        if !t.is_finite() {
            return Err(Error::NonFiniteState { iterate: i + 1 });
        }
    }
    let raw = (t - t0) / iterations as f64;
    let mut estimate = raw.rem_euclid(1.0);
    if estimate >= 1.0 {
        estimate = 0.0;
    }
    let error_bound = 1.0 / iterations as f64;
    Ok(RotationEstimate {
        estimate,
        approximant: rational_approximant(estimate, error_bound, p_max),
        error_bound,
        iterations,
    })
}

pub fn reconstruct_circle(orbit: &OrbitSample, center: &Vector) -> Result<CircleModel> {
    reconstruct_circle_with(orbit, center, &CircleOptions::default())
}

pub fn reconstruct_circle_with(
    orbit: &OrbitSample,
    center: &Vector,
    opts: &CircleOptions,
) -> Result<CircleModel> {
    if orbit.source_map.n() != 2 || center.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: orbit.source_map.n().max(center.len()),
        });
    }
    let mut raw = Vec::new();
    let mut raw_points = Vec::new();
    for (x, y) in orbit.pairs() {
        if (y - x).max_abs() <= 1e-9 * (1.0 + x.max_abs()) {
            continue;
        }
        raw.push((angle_parameter(x, center), angle_parameter(y, center)));
        raw_points.push(x.clone());
    }
    if raw.len() < opts.min_samples.max(2) {
        return Err(Error::TooFewSamples {
            got: raw.len(),
            need: opts.min_samples.max(2),
        });
    }

    let mut sorted_t: Vec<f64> = raw.iter().map(|s| s.0).collect();
    sorted_t.sort_by(f64::total_cmp);
    let max_t_gap = sorted_t
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(
            sorted_t[0] + 1.0 - sorted_t[sorted_t.len() - 1],
        ))
        .fold(0.0, f64::max);
    if max_t_gap > opts.max_t_gap {
        return Err(Error::NotACircle(format!(
            "angular gap {max_t_gap:.4} exceeds {}; samples do not wind around the center",
            opts.max_t_gap
        )));
    }

    let (samples, mut lift, degree, kept) = continue_lift(raw, opts.max_image_gap)?;
    let points: Vec<Vector> = kept.iter().map(|&i| raw_points[i].clone()).collect();
    if degree.abs() != 1 {
        return Err(Error::NotACircle(format!(
            "induced map has degree {degree}, not a circle homeomorphism"
        )));
    }
    let orientation = degree as f64;
    let monotone_defect = lift
        .windows(2)
        .map(|w| orientation * (w[0] - w[1]))
        .chain(std::iter::once(
            orientation * (lift[lift.len() - 1] - lift[0] - orientation),
        ))
        .fold(0.0, f64::max);
    if monotone_defect > opts.monotone_slack {
        return Err(Error::NotACircle(format!(
            "induced map is not monotone (defect {monotone_defect:.4})"
        )));
    }

    let mut rotation = None;
    if degree == 1 {
        let first = rotation_number(
            |t| lift_interpolate(&samples, &lift, degree, t),
            samples[0].0,
            opts.rotation_iterations,
            opts.p_max,
        )?;
        // Normalise so the mean displacement lies in [0, 1).
        let shift = {
            let mut t = samples[0].0;
            for _ in 0..opts.rotation_iterations {
                t = lift_interpolate(&samples, &lift, degree, t);
            }
            ((t - samples[0].0) / opts.rotation_iterations as f64).floor()
        };
        for g in lift.iter_mut() {
            *g -= shift;
        }
        rotation = Some(first);
    } else {
        let shift = lift[0].floor();
        for g in lift.iter_mut() {
            *g -= shift;
        }
    }

    let c = find_c(&samples, &lift, degree);
    let lift_offset = samples
        .iter()
        .zip(&lift)
        .find(|((t, _), _)| *t < c)
        .map(|((_, g), l)| (l - g).round() as i64)
        .unwrap_or_else(|| {
            let (g, l) = (samples[0].1, lift[0]);
            (l - g).round() as i64 - degree
        });

    let boundary_crossings = count_sign_changes(&points);

    Ok(CircleModel {
        center: center.clone(),
        samples,
        lift,
        points,
        c,
        lift_offset,
        degree,
        rotation,
        boundary_crossings,
        max_t_gap,
        monotone_defect,
    })
}

/// `t` in `[0, 1)` where the lift first crosses an integer, i.e. `g(c) = 0`.
fn find_c(samples: &[(f64, f64)], lift: &[f64], degree: i64) -> f64 {
    let n = samples.len();
    for i in 0..n {
        let (ta, ga) = (samples[i].0, lift[i]);
        let (tb, gb) = if i + 1 < n {
            (samples[i + 1].0, lift[i + 1])
        } else {
            (samples[0].0 + 1.0, lift[0] + degree as f64)
        };
        if ga.floor() != gb.floor() {
            let target = if gb > ga { gb.floor() } else { ga.floor() };
            let w = if gb != ga {
                (target - ga) / (gb - ga)
            } else {
                0.0
            };
            return (ta + w * (tb - ta)).rem_euclid(1.0);
        }
    }
    samples[0].0
}

fn count_sign_changes(points: &[Vector]) -> usize {
    let signs: Vec<bool> = points
        .iter()
        .filter(|x| x[0] != 0.0)
        .map(|x| x[0] < 0.0)
        .collect();
    if signs.is_empty() {
        return 0;
    }
    (0..signs.len())
        .filter(|&i| signs[i] != signs[(i + 1) % signs.len()])
        .count()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderedOrbit {
    pub s: f64,
    pub m: u32,
    pub d: u32,
    /// Orbit positions in increasing order of `t`: `s, g^d(s), g^{2d}(s), ...`.
    pub chain: Vec<f64>,
}

/// Checks `s < g^d(s) < g^{2d}(s) < ... < g^{(p-1)d}(s)` for a periodic orbit
/// given in orbit order.
pub fn ordering_check(orbit: &[f64], c: f64) -> Result<OrderedOrbit> {
    let p = orbit.len();
    if p == 0 {
        return Err(Error::TooFewSamples { got: 0, need: 1 });
    }
    let i0 = (0..p)
        .min_by(|&a, &b| orbit[a].total_cmp(&orbit[b]))
        .unwrap();
    let s = orbit[i0];
    let m = orbit.iter().filter(|&&t| t >= c && t < 1.0).count() as u32;
    if p == 1 {
        return Ok(OrderedOrbit {
            s,
            m,
            d: 0,
            chain: vec![s],
        });
    }
    let p32 = p as u32;
    if gcd(m, p32) != 1 {
        return Err(Error::NotCoprime { m, p: p32 });
    }
    let d = mult_inverse(m, p32)?;
    let chain: Vec<f64> = (0..p).map(|k| orbit[(i0 + k * d as usize) % p]).collect();
    if let Some(position) = chain.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::OrderingViolated { position });
    }
    Ok(OrderedOrbit { s, m, d, chain })
}

/// Reads the symbolic itinerary of an orbit off the circle: `L` on `(0, 1/2)`
/// and `R` on `(1/2, 1)`.
pub fn itinerary_from_circle(model: &CircleModel, orbit: &[Vector], band: f64) -> Result<Word> {
    if model.boundary_crossings != 2 {
        return Err(Error::NotACircle(format!(
            "expected two crossings of the switching manifold, found {}",
            model.boundary_crossings
        )));
    }
    itinerary_from_angles(
        &orbit
            .iter()
            .map(|x| angle_parameter(x, &model.center))
            .collect::<Vec<_>>(),
        band,
    )
}

pub fn itinerary_from_angles(ts: &[f64], band: f64) -> Result<Word> {
    let symbols = ts
        .iter()
        .enumerate()
        .map(|(index, &t)| {
            let near = |a: f64| (t - a).abs() <= band;
            if near(0.0) || near(0.5) || near(1.0) {
                Err(Error::OnBoundary { index, t })
            } else if t < 0.5 {
                Ok(Symbol::L)
            } else {
                Ok(Symbol::R)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Word::new(symbols)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PencilOptions {
    /// Distance from the source along the flipping eigen-direction.
    pub epsilon: f64,
    pub seeds: usize,
    pub iterations: usize,
    /// Candidate curve coefficients, tried in order.
    pub kappas: Vec<f64>,
    /// Fraction of seeds that must reach the sink.
    pub min_converged: f64,
}

impl Default for PencilOptions {
    fn default() -> Self {
        PencilOptions {
            epsilon: 1e-3,
            seeds: 800,
            iterations: 200,
            kappas: vec![1.0, 3.0, 10.0, 0.5, 30.0, 100.0],
            min_converged: 0.95,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UnstableCircle {
    pub orbit: OrbitSample,
    pub center: Vector,
    pub kappa: f64,
    pub source: Symbol,
}

fn eigenvector_2x2(a: &crate::matrix::Mat, lambda: f64) -> Vector {
    let v1 = Vector::from([a[(0, 1)], lambda - a[(0, 0)]]);
    let v2 = Vector::from([lambda - a[(1, 1)], a[(1, 0)]]);
    let v = if v1.norm() >= v2.norm() { v1 } else { v2 };
    v.scale(1.0 / v.norm())
}

/// Best-effort sampling of an unstable invariant circle joining a source to a
/// sink.
///
/// Near a source with real multipliers `lambda_1 > 1` and `lambda_2 < -1` the
/// curves `u_1 = kappa |u_2|^a`, `a = ln lambda_1 / ln |lambda_2|`, are
/// invariant under the linearisation, and `f` swaps their two branches. Seeds
/// on one such curve, iterated forward, trace both branches out to the sink.
pub fn unstable_circle_samples(map: &PwlMap, opts: &PencilOptions) -> Result<UnstableCircle> {
    if map.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: map.n(),
        });
    }
    let reports = map.fixed_points();
    let sink = reports
        .iter()
        .find(|r| {
            r.admissibility == Some(crate::pwlmap::Admissibility::Admissible) && r.is_stable()
        })
        .ok_or_else(|| Error::NotACircle("no admissible stable fixed point".into()))?;
    let sink_point = sink.point.clone().unwrap();
    for source in &reports {
        if source.admissibility != Some(crate::pwlmap::Admissibility::Admissible) {
            continue;
        }
        let a = map.matrix(source.side);
        let eig = a.eigenvalues()?;
        if eig.iter().any(|&(_, im)| im != 0.0) {
            continue;
        }
        let (l1, l2) = match (eig[0].0, eig[1].0) {
            (x, y) if x > 1.0 && y < -1.0 => (x, y),
            (y, x) if x > 1.0 && y < -1.0 => (x, y),
            _ => continue,
        };
        let e1 = eigenvector_2x2(a, l1);
        let e2 = eigenvector_2x2(a, l2);
        let expo = l1.ln() / l2.abs().ln();
        let base = source.point.clone().unwrap();
        for &kappa in &opts.kappas {
            let mut segments = Vec::with_capacity(opts.seeds);
            let mut converged = 0usize;
            for k in 0..opts.seeds {
                let u2 = opts.epsilon * (l2 * l2).powf(k as f64 / opts.seeds as f64);
                let u1 = kappa * u2.abs().powf(expo);
                let x0 = &(&base + &e1.scale(u1)) + &e2.scale(u2);
                let Ok(mut sample) = sample_attractor(map, &x0, 0, opts.iterations + 1) else {
                    continue;
                };
                let seg = sample.segments.pop().unwrap();
                let end = seg.last().unwrap();
                if (end - &sink_point).max_abs() <= 1e-6 * (1.0 + sink_point.max_abs()) {
                    converged += 1;
                }
                segments.push(seg);
            }
            if (converged as f64) < opts.min_converged * opts.seeds as f64 {
                continue;
            }
            let center = (&base + &sink_point).scale(0.5);
            return Ok(UnstableCircle {
                orbit: OrbitSample {
                    segments,
                    transient_discarded: 0,
                    source_map: map.clone(),
                },
                center,
                kappa,
                source: source.side,
            });
        }
    }
    Err(Error::NotACircle(
        "no source with an orientation-reversing direction whose curves reach the sink".into(),
    ))
}
