//! Exact periodic solutions of piecewise-linear maps.
//!
//! For a word X the composition `f_X = f_{X_{p-1}} o ... o f_{X_0}` is affine,
//! `f_X(x) = M_X x + P_X b`, so an X-cycle is a single linear solve followed
//! by `p - 1` forward steps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Mat, Vector};
use crate::pwlmap::{in_boundary_band, Admissibility, PwlMap};
use crate::tol::Tolerances;
use crate::words::{Symbol, Word};

/// `M_X`, `P_X` and the two determinants the rest of the crate keeps asking for.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordMatrices {
    /// `A_{X_{p-1}} ... A_{X_1} A_{X_0}`.
    pub m: Mat,
    /// `A_{X_{p-1}} ... A_{X_1} + ... + A_{X_{p-1}} + I`; independent of `X_0`.
    pub p: Mat,
    pub det_i_minus_m: f64,
    pub det_p: f64,
}

/// Accumulates `M_X` left-multiplicatively and `P_X` by Horner's rule,
/// `Q <- A_{X_i} Q + I` for `i = 1..p-1`, in a single pass.
pub fn word_matrices(map: &PwlMap, word: &Word) -> WordMatrices {
    let n = map.n();
    let identity = Mat::identity(n);
    let mut m = map.matrix(word[0]).clone();
    let mut p = identity.clone();
    for s in word.symbols()[1..].iter() {
        let a = map.matrix(*s);
        m = a * &m;
        p = &(a * &p) + &identity;
    }
    WordMatrices {
        det_i_minus_m: (&identity - &m).determinant(),
        det_p: p.determinant(),
        m,
        p,
    }
}

/// `M_X` and `P_X b`, the latter accumulated as `c <- A_{X_i} c + b`
/// starting from `c = b`. Both solvers use this, so they agree bit for bit.
fn m_and_offset(map: &PwlMap, word: &Word) -> (Mat, Vector) {
    let mut m = map.matrix(word[0]).clone();
    let mut c = map.b().clone();
    for s in word.symbols()[1..].iter() {
        let a = map.matrix(*s);
        m = a * &m;
        c = a.affine(&c, map.b());
    }
    (m, c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cycle {
    pub word: Word,
    /// `y^(0), ..., y^(p-1)` with `f_{X_i}(y^(i)) = y^(i+1 mod p)`.
    pub points: Vec<Vector>,
    pub matrices: WordMatrices,
    pub admissibility: Admissibility,
    /// Eigenvalue moduli of `M_X`, largest first.
    pub multipliers: Vec<f64>,
    pub stable: bool,
    /// Largest multiplier within the sign band of 1.
    pub marginal: bool,
    pub closure_residual: f64,
}

impl Cycle {
    pub fn period(&self) -> usize {
        self.word.len()
    }

    pub fn max_modulus(&self) -> f64 {
        self.multipliers.first().copied().unwrap_or(0.0)
    }

    pub fn first_components(&self) -> Vec<f64> {
        self.points.iter().map(|y| y[0]).collect()
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility == Admissibility::Admissible
    }

    pub fn is_attracting(&self) -> bool {
        self.is_admissible() && self.stable
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cycles always serialize")
    }
}

pub fn solve_cycle(map: &PwlMap, word: &Word) -> Result<Cycle> {
    solve_cycle_with(map, word, &Tolerances::default())
}

/// Solves `(I - M_X) x = P_X b`, regenerates the orbit by forward iteration
/// and checks that it closes.
pub fn solve_cycle_with(map: &PwlMap, word: &Word, tol: &Tolerances) -> Result<Cycle> {
    let orbit = solve_orbit(map, word, tol)?;
    let admissibility = admissibility_of_with(&orbit.points, word, tol.sign);
    orbit.finish(word, admissibility, tol)
}

/// The cycle if it is admissible, `None` if it is not or if no unique cycle
/// exists. Stops at the first point found strictly on the wrong side and
/// skips the eigenvalue work for inadmissible words, so a virtual orbit
/// that also fails to close reads as `None` rather than an error. Whenever
/// [`solve_cycle_with`] yields an admissible cycle the two agree exactly.
pub fn probe_admissible(map: &PwlMap, word: &Word, tol: &Tolerances) -> Result<Option<Cycle>> {
    let plausible = if map.n() == 2 {
        planar_probe(map, word, tol.sign)
    } else {
        generic_probe(map, word, tol.sign)
    };
    if !plausible {
        return Ok(None);
    }
    match solve_cycle_with(map, word, tol) {
        Ok(c) if c.admissibility == Admissibility::Admissible => Ok(Some(c)),
        Ok(_) | Err(Error::NoUniqueCycle { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// False when there is no unique cycle or one of its points is strictly on
/// the wrong side.
fn generic_probe(map: &PwlMap, word: &Word, eps: f64) -> bool {
    let (m, offset) = m_and_offset(map, word);
    let Some(mut y) = fixed_point_of(&m, &offset, eps) else {
        return false;
    };
    for s in word.iter() {
        if !in_boundary_band(&y, eps) && (y[0] < 0.0) != (s == Symbol::L) {
            return false;
        }
        y = map.piece(s, &y);
    }
    true
}

/// The planar rejection pass on plain arrays. Every operation repeats the
/// arithmetic of the generic `Mat` path in the same order, so it rejects
/// exactly the words the generic pass rejects.
fn planar_probe(map: &PwlMap, word: &Word, eps: f64) -> bool {
    type M2 = [f64; 4];
    let load = |s: Symbol| -> M2 {
        let a = map.matrix(s).as_slice();
        [a[0], a[1], a[2], a[3]]
    };
    let (al, ar) = (load(Symbol::L), load(Symbol::R));
    let pick = |s: Symbol| if s == Symbol::L { &al } else { &ar };
    let b = [map.b()[0], map.b()[1]];
    let t = |x: f64, y: f64| if x == 0.0 { 0.0 } else { x * y };
    let affine = |a: &M2, x: [f64; 2]| {
        [
            b[0] + a[0] * x[0] + a[1] * x[1],
            b[1] + a[2] * x[0] + a[3] * x[1],
        ]
    };

    let symbols = word.symbols();
    let mut m = *pick(symbols[0]);
    let mut c = b;
    for s in &symbols[1..] {
        let a = pick(*s);
        m = [
            0.0 + t(a[0], m[0]) + t(a[1], m[2]),
            0.0 + t(a[0], m[1]) + t(a[1], m[3]),
            0.0 + t(a[2], m[0]) + t(a[3], m[2]),
            0.0 + t(a[2], m[1]) + t(a[3], m[3]),
        ];
        c = affine(a, c);
    }
    let k = [1.0 - m[0], 0.0 - m[1], 0.0 - m[2], 1.0 - m[3]];
    let det = crate::matrix::det2(k[0], k[1], k[2], k[3]);
    if det.abs() <= eps || !det.is_finite() || det == 0.0 {
        return false;
    }
    let mut y = [
        (k[3] * c[0] - k[1] * c[1]) / det,
        (k[0] * c[1] - k[2] * c[0]) / det,
    ];
    for s in symbols {
        let band = y[0].abs() <= eps * (1.0 + (y[0] * y[0] + y[1] * y[1]).sqrt());
        if !band && (y[0] < 0.0) != (*s == Symbol::L) {
            return false;
        }
        y = affine(pick(*s), y);
    }
    true
}

fn fixed_point_of(m: &Mat, offset: &Vector, eps: f64) -> Option<Vector> {
    let i_minus_m = &Mat::identity(m.n()) - m;
    let det = i_minus_m.determinant();
    if det.abs() <= eps || !det.is_finite() {
        return None;
    }
    i_minus_m.solve(offset)
}

struct SolvedOrbit {
    matrices: WordMatrices,
    points: Vec<Vector>,
    closure_residual: f64,
}

impl SolvedOrbit {
    fn finish(self, word: &Word, admissibility: Admissibility, tol: &Tolerances) -> Result<Cycle> {
        let multipliers = self.matrices.m.eigen_moduli()?;
        let largest = multipliers[0];
        Ok(Cycle {
            word: word.clone(),
            points: self.points,
            admissibility,
            stable: largest < 1.0 - tol.sign,
            marginal: (largest - 1.0).abs() <= tol.sign,
            multipliers,
            matrices: self.matrices,
            closure_residual: self.closure_residual,
        })
    }
}

fn solve_orbit(map: &PwlMap, word: &Word, tol: &Tolerances) -> Result<SolvedOrbit> {
    let matrices = word_matrices(map, word);
    let det = matrices.det_i_minus_m;
    if det.abs() <= tol.sign || !det.is_finite() {
        return Err(Error::NoUniqueCycle {
            word: word.to_string(),
            det,
        });
    }
    let (_, offset) = m_and_offset(map, word);
    let start = (&Mat::identity(map.n()) - &matrices.m)
        .solve(&offset)
        .ok_or_else(|| Error::NoUniqueCycle {
            word: word.to_string(),
            det,
        })?;

    let mut points = Vec::with_capacity(word.len());
    let mut y = start;
    for s in word.iter() {
        let next = map.piece(s, &y);
        points.push(y);
        y = next;
    }
    let closure_residual = (&y - &points[0]).max_abs();
    let scale = points.iter().fold(0.0f64, |acc, v| acc.max(v.max_abs()));
    let allowed = tol.closure * (1.0 + matrices.m.max_abs()) * (1.0 + scale);
    if closure_residual.is_nan() || closure_residual > allowed {
        return Err(Error::ClosureFailure {
            word: word.to_string(),
            residual: closure_residual,
            tolerance: allowed,
        });
    }
    Ok(SolvedOrbit {
        matrices,
        points,
        closure_residual,
    })
}

/// `x^X_1 = det(P_X) rho^T b / det(I - M_X)`.
pub fn first_component_adjugate(map: &PwlMap, word: &Word) -> Result<f64> {
    let matrices = word_matrices(map, word);
    let det = matrices.det_i_minus_m;
    if det.abs() <= crate::tol::EPS_SIGN {
        return Err(Error::NoUniqueCycle {
            word: word.to_string(),
            det,
        });
    }
    Ok(matrices.det_p * map.rho_vector().rho_b / det)
}

pub fn admissibility_of(points: &[Vector], word: &Word) -> Admissibility {
    admissibility_of_with(points, word, crate::tol::EPS_SIGN)
}

/// Virtual if any point is strictly on the wrong side, else Boundary if any
/// point is inside the band, else Admissible.
pub fn admissibility_of_with(points: &[Vector], word: &Word, eps: f64) -> Admissibility {
    assert_eq!(points.len(), word.len(), "one point per symbol");
    let mut boundary = false;
    for (y, s) in points.iter().zip(word.iter()) {
        if in_boundary_band(y, eps) {
            boundary = true;
            continue;
        }
        let left = y[0] < 0.0;
        if left != (s == Symbol::L) {
            return Admissibility::Virtual;
        }
    }
    if boundary {
        Admissibility::Boundary
    } else {
        Admissibility::Admissible
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwlmap::{normal_form_2d, pws2d};
    use crate::words::make_rotational;
    use approx::assert_relative_eq;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn assert_mat_close(a: &Mat, b: &Mat, eps: f64) {
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            assert!((x - y).abs() <= eps, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn word_matrices_small_words() {
        let map = normal_form_2d(0.3, -1.8, -0.1, -0.3);
        let single = word_matrices(&map, &w("L"));
        assert_eq!(single.m, *map.a_left());
        assert_eq!(single.p, Mat::identity(2));

        let pair = word_matrices(&map, &w("LR"));
        assert_mat_close(&pair.m, &(map.a_right() * map.a_left()), 0.0);
        assert_mat_close(&pair.p, &(map.a_right() + &Mat::identity(2)), 0.0);
        assert_eq!(word_matrices(&map, &w("RR")).p, pair.p);
    }

    #[test]
    fn fixed_point_as_period_one_cycle() {
        let map = pws2d(-0.444, -0.6);
        let cycle = solve_cycle(&map, &w("R")).unwrap();
        assert_eq!(cycle.admissibility, Admissibility::Admissible);
        assert!(!cycle.stable);
        assert_relative_eq!(cycle.points[0][0], 1.0 / 2.544, epsilon = 1e-15);
        assert_relative_eq!(cycle.points[0][1], -0.4324, epsilon = 1e-4);
        assert_relative_eq!(cycle.max_modulus(), 1.1f64.sqrt(), epsilon = 1e-14);
        let report = map.fixed_point(Symbol::R);
        assert_relative_eq!(
            report.point.unwrap()[1],
            cycle.points[0][1],
            epsilon = 1e-15
        );
    }

    #[test]
    fn rotational_cycles_of_stable_circle_map() {
        let map = pws2d(-0.444, -0.6);
        let stable = solve_cycle(&map, &make_rotational(2, 2, 7).unwrap()).unwrap();
        assert_eq!(stable.admissibility, Admissibility::Admissible);
        assert!(stable.stable);
        let saddle = solve_cycle(&map, &make_rotational(1, 2, 7).unwrap()).unwrap();
        assert_eq!(saddle.admissibility, Admissibility::Admissible);
        assert!(!saddle.stable);
        assert!(saddle.max_modulus() > 1.0);
        for cycle in [&stable, &saddle] {
            let via_adjugate = first_component_adjugate(&map, &cycle.word).unwrap();
            assert_relative_eq!(via_adjugate, cycle.points[0][0], epsilon = 1e-12);
        }
    }

    #[test]
    fn orbit_closes_under_the_map() {
        let map = pws2d(-0.444, -0.6);
        let cycle = solve_cycle(&map, &make_rotational(2, 2, 7).unwrap()).unwrap();
        for i in 0..7 {
            let next = map.evaluate(&cycle.points[i]);
            let target = &cycle.points[(i + 1) % 7];
            assert!((&next - target).max_abs() < 1e-12);
        }
    }

    #[test]
    fn first_component_reduces_to_fixed_point_formula() {
        let map = pws2d(-0.444, -0.6);
        assert_relative_eq!(
            first_component_adjugate(&map, &w("R")).unwrap(),
            0.3931,
            epsilon = 1e-4
        );
        let left = map.fixed_point(Symbol::L);
        assert_relative_eq!(
            first_component_adjugate(&map, &w("L")).unwrap(),
            left.first_component.unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn singular_word_has_no_unique_cycle() {
        let swap = Mat::from_row_slice(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let map = PwlMap::new(swap.clone(), swap, Vector::from([1.0, 0.0])).unwrap();
        let err = solve_cycle(&map, &w("LR")).unwrap_err();
        assert!(matches!(err, Error::NoUniqueCycle { .. }));
        assert_eq!(err.exit_code(), 2);
        assert!(first_component_adjugate(&map, &w("LR")).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let pts = |a: f64, b: f64| vec![Vector::from([a, 0.3]), Vector::from([b, -0.2])];
        assert_eq!(
            admissibility_of(&pts(-1.0, 1.0), &w("LR")),
            Admissibility::Admissible
        );
        assert_eq!(
            admissibility_of(&pts(1.0, 1.0), &w("LR")),
            Admissibility::Virtual
        );
        assert_eq!(
            admissibility_of(&pts(0.0, 1.0), &w("LR")),
            Admissibility::Boundary
        );
        assert_eq!(
            admissibility_of(&pts(0.0, -1.0), &w("LR")),
            Admissibility::Virtual
        );
    }

    #[test]
    fn cycle_json_carries_word_and_determinants() {
        let map = pws2d(-0.444, -0.6);
        let cycle = solve_cycle(&map, &w("F[2,2,7]")).unwrap();
        let value: serde_json::Value = serde_json::from_str(&cycle.to_json()).unwrap();
        assert_eq!(value["word"], "LRRRLRR");
        assert_eq!(value["admissibility"], "admissible");
        assert_eq!(value["points"].as_array().unwrap().len(), 7);
        assert!(value["matrices"]["det_i_minus_m"].is_number());
        assert_eq!(value["multipliers"].as_array().unwrap().len(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn map_and_word(n: usize) -> impl Strategy<Value = (PwlMap, Word)> {
            (
                proptest::collection::vec(-2.0f64..2.0, n * n),
                proptest::collection::vec(-2.0f64..2.0, n),
                proptest::collection::vec(-2.0f64..2.0, n),
                "[LR]{1,12}",
            )
                .prop_map(move |(entries, first_col_r, b, s)| {
                    let a_left = Mat::from_row_slice(n, &entries).unwrap();
                    let mut a_right = a_left.clone();
                    for i in 0..n {
                        a_right[(i, 0)] = first_col_r[i];
                    }
                    let map = PwlMap::new(a_left, a_right, b.into()).unwrap();
                    (map, s.parse().unwrap())
                })
        }

        proptest! {
            #[test]
            fn p_ignores_first_symbol((map, word) in map_and_word(2)) {
                let a = word_matrices(&map, &word);
                let b = word_matrices(&map, &word.flipped(0));
                prop_assert_eq!(a.p, b.p);
            }

            #[test]
            fn planar_probe_agrees_with_generic((map, word) in map_and_word(2)) {
                prop_assert_eq!(planar_probe(&map, &word, 1e-9), generic_probe(&map, &word, 1e-9));
            }

            #[test]
            fn planar_probe_agrees_on_rotational_words(
                alpha in -2.0f64..2.0,
                beta in -1.0f64..-0.5,
                (ell, m, p) in (3u32..14).prop_flat_map(|p| (1..p, 1..p, Just(p))),
            ) {
                prop_assume!(crate::words::gcd(m, p) == 1);
                let map = pws2d(alpha, beta);
                let word = make_rotational(ell, m, p).unwrap();
                prop_assert_eq!(planar_probe(&map, &word, 1e-9), generic_probe(&map, &word, 1e-9));
            }

            #[test]
            fn m_matches_direct_product((map, word) in map_and_word(3)) {
                let mut direct = Mat::identity(3);
                for s in word.iter() {
                    direct = map.matrix(s) * &direct;
                }
                let m = word_matrices(&map, &word).m;
                let scale = 1.0 + direct.max_abs();
                for (x, y) in m.as_slice().iter().zip(direct.as_slice()) {
                    prop_assert!((x - y).abs() <= 1e-12 * scale);
                }
            }

            #[test]
            fn adjugate_formula_matches_solve((map, word) in (2usize..=3).prop_flat_map(map_and_word)) {
                let matrices = word_matrices(&map, &word);
                prop_assume!(matrices.det_i_minus_m.abs() > 1e-6);
                if let Ok(cycle) = solve_cycle(&map, &word) {
                    let formula = first_component_adjugate(&map, &word).unwrap();
                    let direct = cycle.points[0][0];
                    prop_assert!((formula - direct).abs() <= 1e-9 * direct.abs().max(1.0), "formula {formula} direct {direct} det {} detp {} mmax {} word {}", matrices.det_i_minus_m, matrices.det_p, matrices.m.max_abs(), word);
                }
            }

            #[test]
            fn shifting_rotates_the_cycle((map, word) in map_and_word(2), i in 0i64..12) {
                let matrices = word_matrices(&map, &word);
                prop_assume!(matrices.det_i_minus_m.abs() > 1e-3);
                let base = solve_cycle(&map, &word);
                let shifted = solve_cycle(&map, &word.shifted(i));
                if let (Ok(base), Ok(shifted)) = (base, shifted) {
                    let p = word.len();
                    let scale = 1.0 + base.points.iter().map(Vector::max_abs).fold(0.0, f64::max);
                    let cond = 1.0 + base.matrices.m.max_abs() + 1.0 / matrices.det_i_minus_m.abs();
                    for j in 0..p {
                        let a = &base.points[(j + i as usize) % p];
                        let b = &shifted.points[j];
                        prop_assert!((a - b).max_abs() <= 1e-9 * scale * cond);
                    }
                    let det_gap = (base.matrices.det_i_minus_m - shifted.matrices.det_i_minus_m).abs();
                    prop_assert!(det_gap <= 1e-10 * (1.0 + base.matrices.m.max_abs()).powi(2));
                    let top = base.max_modulus().max(1.0);
                    prop_assert!((base.max_modulus() - shifted.max_modulus()).abs() <= 1e-7 * top);
                }
            }
        }
    }
}
