//! Small dense real matrices.
//!
//! Everything here is sized for the low-dimensional maps this crate studies:
//! storage is inline up to 3x3, determinants use closed forms up to 2x2 and
//! LU beyond, and eigenvalues are only ever needed through their moduli.

// index loops read closer to the formulas in the numeric kernels
#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest dimension accepted by [`Mat::eigen_moduli`].
pub const MAX_EIGEN_DIM: usize = 12;

/// Largest dimension for which the adjugate is built from cofactors directly.
const COFACTOR_ADJUGATE_DIM: usize = 4;

const QR_ITERATIONS_PER_EIGENVALUE: usize = 30;

/// A real column vector.
#[derive(Clone, PartialEq, Default)]
pub struct Vector(SmallVec<[f64; 3]>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(SmallVec::from_elem(0.0, n))
    }

    pub fn from_slice(values: &[f64]) -> Self {
        Vector(SmallVec::from_slice(values))
    }

    /// The i-th standard basis vector of R^n.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = 1.0;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|v| v * s).collect())
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.0.to_vec()
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    fn from(v: [f64; N]) -> Self {
        Vector::from_slice(&v)
    }
}

impl Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(rhs.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Vector::from(Vec::<f64>::deserialize(d)?))
    }
}

/// `ad - bc` with the rounding error of `bc` compensated through an fma.
pub(crate) fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let bc = b * c;
    let err = b.mul_add(c, -bc);
    a.mul_add(d, -bc) - err
}

/// A square real matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct Mat {
    n: usize,
    data: SmallVec<[f64; 9]>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            data: SmallVec::from_elem(0.0, n * n),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// Builds a matrix from row-major entries; `values.len()` must equal `n * n`.
    pub fn from_row_slice(n: usize, values: &[f64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("matrix dimension must be at least 1"));
        }
        if values.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("matrix entries must be finite"));
        }
        Ok(Mat {
            n,
            data: SmallVec::from_slice(values),
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_row_slice(n, &flat)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.n).map(|i| self[(i, j)]).collect())
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat {
            n: self.n,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        let n = self.n;
        Vector(
            (0..n)
                .map(|i| self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// `self * x + b` without an intermediate allocation for small n.
    pub fn affine(&self, x: &Vector, b: &Vector) -> Vector {
        let n = self.n;
        Vector(
            (0..n)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.iter())
                        .fold(b[i], |acc, (a, v)| acc + a * v)
                })
                .collect(),
        )
    }

    /// The (n-1)x(n-1) matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Mat {
        let n = self.n;
        let mut data = SmallVec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != i) {
            for c in (0..n).filter(|&c| c != j) {
                data.push(self[(r, c)]);
            }
        }
        Mat { n: n - 1, data }
    }

    /// Closed form for n <= 3, LU with partial pivoting above.
    pub fn determinant(&self) -> f64 {
        let a = &self.data;
        match self.n {
            0 => 1.0,
            1 => a[0],
            2 => det2(a[0], a[1], a[2], a[3]),
            // cofactor expansion cancels badly on near-rank-one products
            _ => self.lu_determinant(),
        }
    }

    fn lu_determinant(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for k in 0..n {
            let (pivot_row, pivot) = (k..n)
                .map(|r| (r, a[r * n + k]))
                .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
                .expect("non-empty pivot range");
            if pivot == 0.0 {
                return 0.0;
            }
            if pivot_row != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot_row * n + c);
                }
                det = -det;
            }
            det *= pivot;
            for r in k + 1..n {
                let factor = a[r * n + k] / pivot;
                if factor != 0.0 {
                    for c in k + 1..n {
                        a[r * n + c] -= factor * a[k * n + c];
                    }
                }
            }
        }
        det
    }

    /// Transposed cofactor matrix. Defined for singular matrices too, so that
    /// its first row is available when `det` vanishes.
    pub fn adjugate(&self) -> Mat {
        let n = self.n;
        if n == 1 {
            return Mat::identity(1);
        }
        if n == 2 {
            let a = &self.data;
            return Mat {
                n,
                data: SmallVec::from_slice(&[a[3], -a[1], -a[2], a[0]]),
            };
        }
        if n > COFACTOR_ADJUGATE_DIM {
            let det = self.determinant();
            if det.abs() > f64::EPSILON * self.max_abs().powi(n as i32) {
                if let Some(inv) = self.inverse() {
                    return inv.scale(det);
                }
            }
        }
        self.cofactor_adjugate()
    }

    fn cofactor_adjugate(&self) -> Mat {
        let n = self.n;
        let mut adj = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                adj[(j, i)] = sign * self.minor(i, j).determinant();
            }
        }
        adj
    }

    /// Gauss-Jordan inverse with partial pivoting; `None` when a pivot vanishes.
    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for k in 0..n {
            let pivot_row = (k..n).max_by(|&x, &y| a[(x, k)].abs().total_cmp(&a[(y, k)].abs()))?;
            if a[(pivot_row, k)] == 0.0 {
                return None;
            }
            if pivot_row != k {
                for c in 0..n {
                    a.data.swap(k * n + c, pivot_row * n + c);
                    inv.data.swap(k * n + c, pivot_row * n + c);
                }
            }
            let pivot = a[(k, k)];
            for c in 0..n {
                a[(k, c)] /= pivot;
                inv[(k, c)] /= pivot;
            }
            for r in (0..n).filter(|&r| r != k) {
                let factor = a[(r, k)];
                if factor != 0.0 {
                    for c in 0..n {
                        a[(r, c)] -= factor * a[(k, c)];
                        inv[(r, c)] -= factor * inv[(k, c)];
                    }
                }
            }
        }
        Some(inv)
    }

    /// Solves `self * x = rhs` by Gaussian elimination with partial pivoting.
    pub fn solve(&self, rhs: &Vector) -> Option<Vector> {
        let n = self.n;
        if n == 2 {
            let det = self.determinant();
            if det == 0.0 {
                return None;
            }
            let a = &self.data;
            return Some(Vector::from([
                (a[3] * rhs[0] - a[1] * rhs[1]) / det,
                (a[0] * rhs[1] - a[2] * rhs[0]) / det,
            ]));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let pivot_row = (k..n).max_by(|&x, &y| a[(x, k)].abs().total_cmp(&a[(y, k)].abs()))?;
            if a[(pivot_row, k)] == 0.0 {
                return None;
            }
            if pivot_row != k {
                for c in 0..n {
                    a.data.swap(k * n + c, pivot_row * n + c);
                }
                b.0.swap(k, pivot_row);
            }
            for r in k + 1..n {
                let factor = a[(r, k)] / a[(k, k)];
                if factor != 0.0 {
                    for c in k..n {
                        a[(r, c)] -= factor * a[(k, c)];
                    }
                    b[r] -= factor * b[k];
                }
            }
        }
        let mut x = Vector::zeros(n);
        for r in (0..n).rev() {
            let tail: f64 = (r + 1..n).map(|c| a[(r, c)] * x[c]).sum();
            x[r] = (b[r] - tail) / a[(r, r)];
        }
        Some(x)
    }

    /// Eigenvalues as `(re, im)` pairs, unordered.
    pub fn eigenvalues(&self) -> Result<Vec<(f64, f64)>> {
        match self.n {
            1 => Ok(vec![(self.data[0], 0.0)]),
            2 => {
                let trace = self.data[0] + self.data[3];
                Ok(quadratic_roots(trace, self.determinant()).to_vec())
            }
            n if n <= MAX_EIGEN_DIM => hessenberg_qr(self),
            n => Err(Error::domain(format!(
                "eigenvalues are supported up to n = {MAX_EIGEN_DIM}, got n = {n}"
            ))),
        }
    }

    /// Eigenvalue moduli sorted in decreasing order, complex pairs included.
    pub fn eigen_moduli(&self) -> Result<Vec<f64>> {
        let mut moduli: Vec<f64> = self
            .eigenvalues()?
            .into_iter()
            .map(|(re, im)| re.hypot(im))
            .collect();
        moduli.sort_by(|a, b| b.total_cmp(a));
        Ok(moduli)
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        Ok(self.eigen_moduli()?[0])
    }
}

/// Roots of `x^2 - trace x + det`, using the cancellation-free form for real roots.
fn quadratic_roots(trace: f64, det: f64) -> [(f64, f64); 2] {
    let half = 0.5 * trace;
    let disc = half * half - det;
    if disc < 0.0 {
        let im = (-disc).sqrt();
        [(half, im), (half, -im)]
    } else {
        let big = half + half.signum() * disc.sqrt();
        let small = if big != 0.0 { det / big } else { 0.0 };
        [(big, 0.0), (small, 0.0)]
    }
}

/// Balancing, reduction to upper Hessenberg form by stabilised elimination,
/// then Francis double-shift QR. Works on a 1-based scratch copy.
fn hessenberg_qr(m: &Mat) -> Result<Vec<(f64, f64)>> {
    let n = m.n;
    let mut a = vec![vec![0.0; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            a[i + 1][j + 1] = m[(i, j)];
        }
    }
    balance(&mut a, n);
    reduce_to_hessenberg(&mut a, n);
    for i in 3..=n {
        for j in 1..i - 1 {
            a[i][j] = 0.0;
        }
    }
    francis_qr(&mut a, n)
}

fn balance(a: &mut [Vec<f64>], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 1..=n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in (1..=n).filter(|&j| j != i) {
                c += a[j][i].abs();
                r += a[i][j].abs();
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 1..=n {
                    a[i][j] *= g;
                }
                for row in a.iter_mut().take(n + 1).skip(1) {
                    row[i] *= f;
                }
            }
        }
    }
}

fn reduce_to_hessenberg(a: &mut [Vec<f64>], n: usize) {
    for m in 2..n {
        let mut x = 0.0f64;
        let mut pivot = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                pivot = j;
            }
        }
        if pivot != m {
            for j in m - 1..=n {
                let tmp = a[pivot][j];
                a[pivot][j] = a[m][j];
                a[m][j] = tmp;
            }
            for row in a.iter_mut().take(n + 1).skip(1) {
                row.swap(pivot, m);
            }
        }
        if x != 0.0 {
            for i in m + 1..=n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..=n {
                        a[i][j] -= y * a[m][j];
                    }
                    for row in a.iter_mut().take(n + 1).skip(1) {
                        row[m] += y * row[i];
                    }
                }
            }
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

#[allow(clippy::many_single_char_names)]
fn francis_qr(a: &mut [Vec<f64>], n: usize) -> Result<Vec<(f64, f64)>> {
    let mut wr = vec![0.0; n + 1];
    let mut wi = vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let max_its = QR_ITERATIONS_PER_EIGENVALUE;
    let mut nn = n;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() <= f64::EPSILON * s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[nn][nn];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                nn -= 1;
                break;
            }
            y = a[nn - 1][nn - 1];
            w = a[nn][nn - 1] * a[nn - 1][nn];
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + w;
                z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != 0.0 {
                        wr[nn] = x - w / z;
                    }
                    wi[nn - 1] = 0.0;
                    wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn -= 2;
                break;
            }
            if its == max_its {
                return Err(Error::NonConvergence { n, iterations: its });
            }
            if its == 10 || its == 20 {
                // exceptional shift
                t += x;
                for i in 1..=nn {
                    a[i][i] -= x;
                }
                let s = a[nn][nn - 1].abs() + a[nn - 1][nn - 2].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            let mut m = nn - 2;
            loop {
                z = a[m][m];
                r = x - z;
                let s0 = y - z;
                p = (r * s0 - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - r - s0;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[i][i - 2] = 0.0;
                if i != m + 2 {
                    a[i][i - 3] = 0.0;
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = 0.0;
                    if k != nn - 1 {
                        r = a[k + 2][k - 1];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[k][k - 1] = -a[k][k - 1];
                        }
                    } else {
                        a[k][k - 1] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        p = a[k][j] + q * a[k + 1][j];
                        if k != nn - 1 {
                            p += r * a[k + 2][j];
                            a[k + 2][j] -= p * z;
                        }
                        a[k + 1][j] -= p * y;
                        a[k][j] -= p * x;
                    }
                    let mmin = nn.min(k + 3);
                    for i in l..=mmin {
                        p = x * a[i][k] + y * a[i][k + 1];
                        if k != nn - 1 {
                            p += z * a[i][k + 2];
                            a[i][k + 2] -= p * r;
                        }
                        a[i][k + 1] -= p * q;
                        a[i][k] -= p;
                    }
                }
                k += 1;
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| (wr[i], wi[i])).collect())
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        let n = self.n;
        if n == 2 {
            // same sums as the loop below; skipped zero terms add +0.0 to a
            // partial sum that can never be -0.0
            let (a, b) = (&self.data, &rhs.data);
            let t = |x: f64, y: f64| if x == 0.0 { 0.0 } else { x * y };
            return Mat {
                n,
                data: SmallVec::from_buf_and_len(
                    [
                        0.0 + t(a[0], b[0]) + t(a[1], b[2]),
                        0.0 + t(a[0], b[1]) + t(a[1], b[3]),
                        0.0 + t(a[2], b[0]) + t(a[3], b[2]),
                        0.0 + t(a[2], b[1]) + t(a[3], b[3]),
                        0.0,
                        0.0,
                        0.0,
                        0.0,
                        0.0,
                    ],
                    4,
                ),
            };
        }
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Mul<&Vector> for &Mat {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        self.mul_vec(rhs)
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        Mat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(rhs.data.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.n).map(|i| self.row(i)))
            .finish()
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        Mat::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}
