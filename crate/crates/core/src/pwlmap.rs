//! Continuous two-piece piecewise-linear maps
//!
//! ```text
//! x -> A_L x + b   if x_1 <= 0
//! x -> A_R x + b   if x_1 >= 0
//! ```
//!
//! where `A_L` and `A_R` differ only in their first column, so the two pieces
//! agree on the switching manifold `x_1 = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Mat, Vector};
use crate::tol::{Tolerances, EPS_LIN};
use crate::words::Symbol;

/// Where a point (or a whole cycle) sits relative to the symbols it claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    Admissible,
    Virtual,
    Boundary,
}

/// True when `x_1` lies inside the band `|x_1| <= eps * (1 + |x|)`.
pub fn in_boundary_band(x: &Vector, eps: f64) -> bool {
    x[0].abs() <= eps * (1.0 + x.norm())
}

/// Verdict of a single point against the symbol it should carry.
pub fn point_admissibility(x: &Vector, symbol: Symbol, eps: f64) -> Admissibility {
    if in_boundary_band(x, eps) {
        return Admissibility::Boundary;
    }
    match (symbol, x[0] < 0.0) {
        (Symbol::L, true) | (Symbol::R, false) => Admissibility::Admissible,
        _ => Admissibility::Virtual,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PwlMap {
    a_left: Mat,
    a_right: Mat,
    b: Vector,
}

impl PwlMap {
    /// Validates dimensions and that columns 2..n of both matrices agree.
    pub fn new(a_left: Mat, a_right: Mat, b: Vector) -> Result<Self> {
        let n = a_left.n();
        if a_right.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: a_right.n(),
            });
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        if !b.is_finite() {
            return Err(Error::domain("offset b must be finite"));
        }
        let scale = 1.0 + a_left.max_abs().max(a_right.max_abs());
        for j in 1..n {
            let gap = (0..n)
                .map(|i| (a_left[(i, j)] - a_right[(i, j)]).abs())
                .fold(0.0, f64::max);
            if gap > EPS_LIN * scale {
                return Err(Error::Continuity { column: j, gap });
            }
        }
        Ok(PwlMap { a_left, a_right, b })
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn a_left(&self) -> &Mat {
        &self.a_left
    }

    pub fn a_right(&self) -> &Mat {
        &self.a_right
    }

    pub fn b(&self) -> &Vector {
        &self.b
    }

    pub fn matrix(&self, side: Symbol) -> &Mat {
        match side {
            Symbol::L => &self.a_left,
            Symbol::R => &self.a_right,
        }
    }

    /// `f_side(x) = A_side x + b`, regardless of which side `x` is on.
    pub fn piece(&self, side: Symbol, x: &Vector) -> Vector {
        self.matrix(side).affine(x, &self.b)
    }

    /// The symbol whose piece applies at `x`; points on the manifold report L.
    pub fn side_of(x: &Vector) -> Symbol {
        if x[0] > 0.0 {
            Symbol::R
        } else {
            Symbol::L
        }
    }

    pub fn evaluate(&self, x: &Vector) -> Vector {
        self.piece(Self::side_of(x), x)
    }

    /// First row of `adj(I - A_L)`, shared with `adj(I - A_R)`.
    pub fn rho_vector(&self) -> RhoVector {
        let n = self.n();
        let identity = Mat::identity(n);
        let adj_left = (&identity - &self.a_left).adjugate();
        let adj_right = (&identity - &self.a_right).adjugate();
        let components = Vector::from_slice(adj_left.row(0));
        let rows_agree_to = adj_left
            .row(0)
            .iter()
            .zip(adj_right.row(0))
            .map(|(l, r)| (l - r).abs())
            .fold(0.0, f64::max);
        RhoVector {
            rho_b: components.dot(&self.b),
            components,
            rows_agree_to,
        }
    }

    pub fn fixed_point(&self, side: Symbol) -> FixedPointReport {
        self.fixed_point_with(side, &Tolerances::default())
    }

    pub fn fixed_point_with(&self, side: Symbol, tol: &Tolerances) -> FixedPointReport {
        let n = self.n();
        let a = self.matrix(side);
        let i_minus_a = &Mat::identity(n) - a;
        let det = i_minus_a.determinant();
        let multipliers = a.eigen_moduli().unwrap_or_default();
        if det.abs() <= tol.sign {
            return FixedPointReport {
                side,
                exists: false,
                point: None,
                first_component: None,
                admissibility: None,
                det_i_minus_a: det,
                multipliers,
            };
        }
        let point = i_minus_a.solve(&self.b);
        let first_component = self.rho_vector().rho_b / det;
        let admissibility = point
            .as_ref()
            .map(|x| point_admissibility(x, side, tol.sign));
        FixedPointReport {
            side,
            exists: point.is_some(),
            point,
            first_component: Some(first_component),
            admissibility,
            det_i_minus_a: det,
            multipliers,
        }
    }

    /// Reports for `x^L` and `x^R`, in that order.
    pub fn fixed_points(&self) -> [FixedPointReport; 2] {
        [self.fixed_point(Symbol::L), self.fixed_point(Symbol::R)]
    }

    pub fn determinant_product(&self) -> f64 {
        self.a_left.determinant() * self.a_right.determinant()
    }

    /// `det(A_L) det(A_R) > eps_sign`.
    pub fn is_homeomorphism(&self) -> bool {
        self.invertibility() == Invertibility::Homeomorphism
    }

    pub fn invertibility(&self) -> Invertibility {
        let product = self.determinant_product();
        if product.abs() <= crate::tol::EPS_SIGN {
            Invertibility::Indeterminate
        } else if product > 0.0 {
            Invertibility::Homeomorphism
        } else {
            Invertibility::NotInvertible
        }
    }

    /// Appends `extra` decoupled coordinates contracted by `rate`.
    pub fn embed(&self, extra: usize, rate: f64) -> PwlMap {
        let n = self.n();
        let m = n + extra;
        let grow = |a: &Mat| {
            let mut out = Mat::zeros(m);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] = a[(i, j)];
                }
            }
            for i in n..m {
                out[(i, i)] = rate;
            }
            out
        };
        let mut b = self.b.to_vec();
        b.resize(m, 0.0);
        PwlMap {
            a_left: grow(&self.a_left),
            a_right: grow(&self.a_right),
            b: b.into(),
        }
    }

    pub fn to_document(&self) -> MapDocument {
        MapDocument {
            n: self.n(),
            a_left: self.a_left.rows(),
            a_right: self.a_right.rows(),
            b: self.b.to_vec(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MapDocument =
            serde_json::from_str(text).map_err(|e| Error::domain(format!("map json: {e}")))?;
        doc.into_map()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("map documents always serialize")
    }
}

/// On-disk JSON form of a map: `{"n": 2, "A_L": [[..],..], "A_R": [[..],..], "b": [..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub n: usize,
    #[serde(rename = "A_L")]
    pub a_left: Vec<Vec<f64>>,
    #[serde(rename = "A_R")]
    pub a_right: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

impl MapDocument {
    pub fn into_map(self) -> Result<PwlMap> {
        let a_left = Mat::from_rows(&self.a_left)?;
        let a_right = Mat::from_rows(&self.a_right)?;
        if a_left.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: a_left.n(),
            });
        }
        PwlMap::new(a_left, a_right, self.b.into())
    }
}

impl Serialize for PwlMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_document().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PwlMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        MapDocument::deserialize(d)?
            .into_map()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invertibility {
    Homeomorphism,
    NotInvertible,
    Indeterminate,
}

/// `rho^T`, the first row of `adj(I - A_L)`, together with `rho^T b`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RhoVector {
    pub components: Vector,
    pub rho_b: f64,
    /// Largest entrywise gap between the first rows of both adjugates.
    pub rows_agree_to: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedPointReport {
    pub side: Symbol,
    /// False when `det(I - A_side)` is within the sign band of zero.
    pub exists: bool,
    pub point: Option<Vector>,
    /// `rho^T b / det(I - A_side)`.
    pub first_component: Option<f64>,
    pub admissibility: Option<Admissibility>,
    pub det_i_minus_a: f64,
    pub multipliers: Vec<f64>,
}

impl FixedPointReport {
    pub fn is_stable(&self) -> bool {
        self.multipliers
            .first()
            .is_some_and(|&m| m < 1.0 - crate::tol::EPS_SIGN)
    }
}

/// The two built-in example families.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ExampleFamily {
    /// `(x1, x2) -> (alpha x1 + x2 + 1, beta x1 - |x1| / 2)`.
    Pws2d { alpha: f64, beta: f64 },
    /// Border-collision normal form with `A_s = [[tau_s, 1], [-delta_s, 0]]`, `b = (1, 0)`.
    NormalForm2d {
        tau_l: f64,
        delta_l: f64,
        tau_r: f64,
        delta_r: f64,
    },
}

/// A named scalar parameter of an [`ExampleFamily`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Alpha,
    Beta,
    TauL,
    DeltaL,
    TauR,
    DeltaR,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::TauL => "tau_l",
            Param::DeltaL => "delta_l",
            Param::TauR => "tau_r",
            Param::DeltaR => "delta_r",
        }
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "alpha" => Param::Alpha,
            "beta" => Param::Beta,
            "tau_l" | "tl" => Param::TauL,
            "delta_l" | "dl" => Param::DeltaL,
            "tau_r" | "tr" => Param::TauR,
            "delta_r" | "dr" => Param::DeltaR,
            other => return Err(Error::domain(format!("unknown parameter '{other}'"))),
        })
    }
}

impl ExampleFamily {
    pub fn params(&self) -> &'static [Param] {
        match self {
            ExampleFamily::Pws2d { .. } => &[Param::Alpha, Param::Beta],
            ExampleFamily::NormalForm2d { .. } => {
                &[Param::TauL, Param::DeltaL, Param::TauR, Param::DeltaR]
            }
        }
    }

    pub fn get(&self, param: Param) -> Result<f64> {
        match (*self, param) {
            (ExampleFamily::Pws2d { alpha, .. }, Param::Alpha) => Ok(alpha),
            (ExampleFamily::Pws2d { beta, .. }, Param::Beta) => Ok(beta),
            (ExampleFamily::NormalForm2d { tau_l, .. }, Param::TauL) => Ok(tau_l),
            (ExampleFamily::NormalForm2d { delta_l, .. }, Param::DeltaL) => Ok(delta_l),
            (ExampleFamily::NormalForm2d { tau_r, .. }, Param::TauR) => Ok(tau_r),
            (ExampleFamily::NormalForm2d { delta_r, .. }, Param::DeltaR) => Ok(delta_r),
            (family, param) => Err(Error::domain(format!(
                "{} has no parameter {param}",
                family.name()
            ))),
        }
    }

    /// Copy with one parameter replaced.
    pub fn with(&self, param: Param, value: f64) -> Result<ExampleFamily> {
        self.get(param)?;
        let mut out = *self;
        match (&mut out, param) {
            (ExampleFamily::Pws2d { alpha, .. }, Param::Alpha) => *alpha = value,
            (ExampleFamily::Pws2d { beta, .. }, Param::Beta) => *beta = value,
            (ExampleFamily::NormalForm2d { tau_l, .. }, Param::TauL) => *tau_l = value,
            (ExampleFamily::NormalForm2d { delta_l, .. }, Param::DeltaL) => *delta_l = value,
            (ExampleFamily::NormalForm2d { tau_r, .. }, Param::TauR) => *tau_r = value,
            (ExampleFamily::NormalForm2d { delta_r, .. }, Param::DeltaR) => *delta_r = value,
            _ => unreachable!("checked by get"),
        }
        Ok(out)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExampleFamily::Pws2d { .. } => "pws2d",
            ExampleFamily::NormalForm2d { .. } => "nf2d",
        }
    }

    pub fn build(&self) -> PwlMap {
        build_example(*self)
    }
}

pub fn build_example(family: ExampleFamily) -> PwlMap {
    let (a_left, a_right) = match family {
        ExampleFamily::Pws2d { alpha, beta } => {
            ([alpha, 1.0, beta + 0.5, 0.0], [alpha, 1.0, beta - 0.5, 0.0])
        }
        ExampleFamily::NormalForm2d {
            tau_l,
            delta_l,
            tau_r,
            delta_r,
        } => ([tau_l, 1.0, -delta_l, 0.0], [tau_r, 1.0, -delta_r, 0.0]),
    };
    let mat = |v: [f64; 4]| Mat::from_row_slice(2, &v).expect("finite 2x2 entries");
    PwlMap {
        a_left: mat(a_left),
        a_right: mat(a_right),
        b: Vector::from([1.0, 0.0]),
    }
}

pub fn pws2d(alpha: f64, beta: f64) -> PwlMap {
    build_example(ExampleFamily::Pws2d { alpha, beta })
}

pub fn normal_form_2d(tau_l: f64, delta_l: f64, tau_r: f64, delta_r: f64) -> PwlMap {
    build_example(ExampleFamily::NormalForm2d {
        tau_l,
        delta_l,
        tau_r,
        delta_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn stable_circle_map() -> PwlMap {
        pws2d(-0.444, -0.6)
    }

    fn unstable_circle_map() -> PwlMap {
        normal_form_2d(0.3, -1.8, -0.1, -0.3)
    }

    #[test]
    fn builders_match_closed_forms() {
        let map = stable_circle_map();
        assert_eq!(map.a_left().row(0), &[-0.444, 1.0]);
        assert_relative_eq!(map.a_left()[(1, 0)], -0.1, epsilon = 1e-15);
        assert_relative_eq!(map.a_right()[(1, 0)], -1.1, epsilon = 1e-15);
        let map = normal_form_2d(0.2, 0.1, -0.4, 1.2);
        assert_eq!(map.a_left().rows(), vec![vec![0.2, 1.0], vec![-0.1, 0.0]]);
        assert_eq!(map.a_right().rows(), vec![vec![-0.4, 1.0], vec![-1.2, 0.0]]);
        assert_eq!(map.b().to_vec(), vec![1.0, 0.0]);
    }

    #[test]
    fn evaluate_examples() {
        let map = stable_circle_map();
        assert_eq!(map.evaluate(&Vector::zeros(2)), *map.b());
        let y = map.evaluate(&Vector::from([1.0, 0.0]));
        assert_relative_eq!(y[0], 0.556, epsilon = 1e-15);
        assert_relative_eq!(y[1], -1.1, epsilon = 1e-15);
        let x = Vector::from([0.0, 0.37]);
        assert_eq!(map.piece(Symbol::L, &x), map.piece(Symbol::R, &x));
    }

    #[test]
    fn continuity_is_checked_at_construction() {
        let a_left = Mat::from_row_slice(2, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        let a_right = Mat::from_row_slice(2, &[1.0, 0.5, 0.0, 0.0]).unwrap();
        let err = PwlMap::new(a_left, a_right, Vector::from([1.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::Continuity { column: 1, .. }));
    }

    #[test]
    fn rho_examples() {
        let rho = stable_circle_map().rho_vector();
        assert_relative_eq!(rho.components[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(rho.components[1], 1.0, epsilon = 1e-15);
        assert_relative_eq!(rho.rho_b, 1.0, epsilon = 1e-15);

        let zero = PwlMap::new(Mat::zeros(2), Mat::zeros(2), Vector::from([0.7, -2.0])).unwrap();
        let rho = zero.rho_vector();
        assert_eq!(rho.components.to_vec(), vec![1.0, 0.0]);
        assert_eq!(rho.rho_b, 0.7);

        for (tl, dl, tr, dr) in [(0.3, -1.8, -0.1, -0.3), (1.1, 0.4, -2.0, 3.0)] {
            let rho = normal_form_2d(tl, dl, tr, dr).rho_vector();
            assert_eq!(rho.components.to_vec(), vec![1.0, 1.0]);
            assert_eq!(rho.rho_b, 1.0);
            assert_eq!(rho.rows_agree_to, 0.0);
        }
    }

    #[test]
    fn fixed_points_of_stable_circle_map() {
        let [left, right] = stable_circle_map().fixed_points();
        let x_left = left.point.unwrap();
        assert_relative_eq!(x_left[0], 0.6477, epsilon = 1e-4);
        assert_relative_eq!(x_left[1], -0.0648, epsilon = 1e-4);
        assert_eq!(left.admissibility, Some(Admissibility::Virtual));

        let x_right = right.point.clone().unwrap();
        assert_relative_eq!(x_right[0], 1.0 / 2.544, epsilon = 1e-15);
        assert_relative_eq!(x_right[1], -0.4324, epsilon = 1e-4);
        assert_eq!(right.admissibility, Some(Admissibility::Admissible));
        assert_relative_eq!(right.multipliers[0], 1.1f64.sqrt(), epsilon = 1e-14);
        assert!(!right.is_stable());
    }

    #[test]
    fn fixed_points_with_zero_offset_sit_on_boundary() {
        let mut map = stable_circle_map();
        map.b = Vector::zeros(2);
        for report in map.fixed_points() {
            assert_eq!(report.point.unwrap().to_vec(), vec![0.0, 0.0]);
            assert_eq!(report.admissibility, Some(Admissibility::Boundary));
        }
    }

    #[test]
    fn fixed_points_of_unstable_circle_map() {
        let left = unstable_circle_map().fixed_point(Symbol::L);
        assert_relative_eq!(
            left.first_component.unwrap(),
            1.0 / (0.7 - 1.8),
            epsilon = 1e-15
        );
        assert_eq!(left.admissibility, Some(Admissibility::Admissible));
        assert_relative_eq!(left.multipliers[0], 1.5, epsilon = 1e-14);
        assert_relative_eq!(left.multipliers[1], 1.2, epsilon = 1e-14);
    }

    #[test]
    fn missing_fixed_point_is_flagged_not_fatal() {
        // det(I - A_L) = (1 - tau)(1) + delta = 0 with tau = 1.5, delta = 0.5
        let map = normal_form_2d(1.5, 0.5, 0.2, 0.3);
        let left = map.fixed_point(Symbol::L);
        assert!(!left.exists);
        assert!(left.point.is_none());
        assert!(map.fixed_point(Symbol::R).exists);
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(stable_circle_map().is_homeomorphism());
        assert!(unstable_circle_map().is_homeomorphism());
        let singular = normal_form_2d(0.5, 0.0, 0.5, 1.0);
        assert!(!singular.is_homeomorphism());
        assert_eq!(singular.invertibility(), Invertibility::Indeterminate);
        assert_eq!(
            normal_form_2d(0.5, -1.0, 0.5, 1.0).invertibility(),
            Invertibility::NotInvertible
        );
    }

    #[test]
    fn json_round_trip_is_bit_identical() {
        let map = normal_form_2d(0.1 + 0.2, -1.8, -0.1, 1.0 / 3.0);
        let back = PwlMap::from_json(&map.to_json()).unwrap();
        assert_eq!(back, map);
        for (a, b) in back
            .a_right()
            .as_slice()
            .iter()
            .zip(map.a_right().as_slice())
        {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn json_rejects_unknown_keys_and_discontinuity() {
        let bad_key = r#"{"n":1,"A_L":[[0.5]],"A_R":[[0.2]],"b":[1.0],"extra":1}"#;
        assert!(PwlMap::from_json(bad_key).is_err());
        let discontinuous = r#"{"n":2,"A_L":[[0.5,1],[0,0]],"A_R":[[0.2,2],[0,0]],"b":[1,0]}"#;
        assert!(matches!(
            PwlMap::from_json(discontinuous),
            Err(Error::Continuity { .. })
        ));
        let wrong_n = r#"{"n":3,"A_L":[[0.5,1],[0,0]],"A_R":[[0.2,1],[0,0]],"b":[1,0]}"#;
        assert!(PwlMap::from_json(wrong_n).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn random_map(n: usize) -> impl Strategy<Value = PwlMap> {
            (
                proptest::collection::vec(-2.0f64..2.0, n * n),
                proptest::collection::vec(-2.0f64..2.0, n),
                proptest::collection::vec(-2.0f64..2.0, n),
            )
                .prop_map(move |(entries, first_col_r, b)| {
                    let a_left = Mat::from_row_slice(n, &entries).unwrap();
                    let mut a_right = a_left.clone();
                    for i in 0..n {
                        a_right[(i, 0)] = first_col_r[i];
                    }
                    PwlMap::new(a_left, a_right, b.into()).unwrap()
                })
        }

        proptest! {
            #[test]
            fn pieces_agree_on_manifold(map in (2usize..=4).prop_flat_map(random_map),
                                        tail in proptest::collection::vec(-5.0f64..5.0, 4)) {
                let n = map.n();
                let mut x = vec![0.0];
                x.extend_from_slice(&tail[..n - 1]);
                let x = Vector::from(x);
                let l = map.piece(Symbol::L, &x);
                let r = map.piece(Symbol::R, &x);
                for i in 0..n {
                    prop_assert!((l[i] - r[i]).abs() <= EPS_LIN * (1.0 + x.norm()));
                }
            }

            #[test]
            fn adjugate_first_rows_agree(map in (2usize..=5).prop_flat_map(random_map)) {
                prop_assert!(map.rho_vector().rows_agree_to <= EPS_LIN * 100.0);
            }

            #[test]
            fn first_component_formula_matches_solve(map in (2usize..=4).prop_flat_map(random_map)) {
                for report in map.fixed_points() {
                    if report.det_i_minus_a.abs() < 1e-3 {
                        continue;
                    }
                    let x = report.point.unwrap();
                    let first = report.first_component.unwrap();
                    prop_assert!((x[0] - first).abs() <= 1e-9 * (1.0 + x[0].abs()));
                }
            }

            #[test]
            fn embedding_preserves_fixed_point_reports(map in random_map(2), rate in -0.9f64..0.9) {
                let big = map.embed(2, rate);
                for (small, large) in map.fixed_points().iter().zip(big.fixed_points().iter()) {
                    prop_assert_eq!(small.exists, large.exists);
                    prop_assert_eq!(small.admissibility, large.admissibility);
                    if let (Some(a), Some(b)) = (&small.point, &large.point) {
                        prop_assert!((a[0] - b[0]).abs() <= 1e-9 * (1.0 + a[0].abs()));
                        prop_assert_eq!(b[2], 0.0);
                    }
                    if let (Some(a), Some(b)) = (small.first_component, large.first_component) {
                        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
                    }
                }
            }
        }
    }
}
