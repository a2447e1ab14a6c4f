use super::scalar::{Scalar, C64};
use crate::error::{DbcError, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::ops::{Index, IndexMut};

/// Dense row-major matrix over a scalar type. Group elements, Lie-algebra
/// elements, and jet-valued matrices all use this one type; rectangular
/// shapes appear only in rank computations.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type CMat = Mat<C64>;

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self[(i, j)].clone())
    }

    /// Submatrix of rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.n() {
            t = t + self[(i, i)].clone();
        }
        t
    }

    /// Max modulus of the value parts.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.modulus()).fold(0.0, f64::max)
    }

    /// Frobenius norm of the value parts.
    pub fn fro_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.modulus().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn value_mat(&self) -> CMat {
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].val())
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|x| {
            let z = x.val();
            z.re.is_finite() && z.im.is_finite()
        })
    }

    /// Gauss–Jordan inverse with partial pivoting on the value modulus.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n();
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs().max(1.0);
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[(r, col)].modulus() > a[(piv, col)].modulus() {
                    piv = r;
                }
            }
            let pmod = a[(piv, col)].modulus();
            if pmod <= 1e-14 * scale {
                return Err(DbcError::Singular { pivot: pmod });
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                    inv.data.swap(col * n + j, piv * n + j);
                }
            }
            let d = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / d.clone();
                inv[(col, j)] = inv[(col, j)].clone() / d.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)].clone();
                if f.modulus() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Ok(inv)
    }

    /// Determinant via LU with partial pivoting on value modulus.
    pub fn det(&self) -> T {
        let n = self.n();
        let mut a = self.clone();
        let mut sign = T::one();
        let mut d = T::one();
        for col in 0..n {
            let mut piv = col;
            for r in col + 1..n {
                if a[(r, col)].modulus() > a[(piv, col)].modulus() {
                    piv = r;
                }
            }
            if a[(piv, col)].modulus() == 0.0 {
                return T::zero();
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                }
                sign = -sign;
            }
            let p = a[(col, col)].clone();
            d = d * p.clone();
            for r in col + 1..n {
                let f = a[(r, col)].clone() / p.clone();
                for j in col..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                }
            }
        }
        d * sign
    }

    /// Leading principal k-minor (determinant of the top-left k-block).
    pub fn leading_minor(&self, k: usize) -> T {
        if k == 0 {
            return T::one();
        }
        self.block(0, k, 0, k).det()
    }

    /// Solve a · x = b by partial-pivot elimination; b has any column count.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        Ok(self.inverse()?.mul(b))
    }

    pub fn is_upper_triangular(&self, tol: f64) -> bool {
        let n = self.n();
        let scale = self.max_abs().max(1.0);
        for i in 0..n {
            for j in 0..i {
                if self[(i, j)].modulus() > tol * scale {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_lower_triangular(&self, tol: f64) -> bool {
        let n = self.n();
        let scale = self.max_abs().max(1.0);
        for i in 0..n {
            for j in i + 1..n {
                if self[(i, j)].modulus() > tol * scale {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.is_upper_triangular(tol) && self.is_lower_triangular(tol)
    }
}

impl CMat {
    /// Hermitian transpose (plain complex matrices only).
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn approx_eq(&self, other: &CMat, tol: f64) -> bool {
        self.dist(other) <= tol * self.max_abs().max(other.max_abs()).max(1.0)
    }

    pub fn dist(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn diag(entries: &[C64]) -> CMat {
        let n = entries.len();
        CMat::from_fn(n, n, |i, j| {
            if i == j {
                entries[i]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.n()).map(|i| self[(i, i)]).collect()
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// LDU (Gaussian) factorization of a big-cell matrix: g = lower · diag · upper
/// with unit triangular factors. Fails with `BigCell` when a leading
/// principal minor vanishes, which is exactly the condition g ∉ N_- T N.
/// The k-th diagonal entry is the ratio of consecutive leading minors.
pub fn gaussian_decompose<T: Scalar>(g: &Mat<T>, tol_rank: f64) -> Result<(Mat<T>, Mat<T>, Mat<T>)> {
    let n = g.n();
    let scale = g.max_abs().max(1.0);
    let mut a = g.clone();
    let mut lower = Mat::<T>::identity(n);
    for k in 0..n {
        let piv = a[(k, k)].clone();
        if piv.modulus() <= tol_rank * scale {
            return Err(DbcError::BigCell {
                index: k + 1,
                pivot: piv.modulus(),
            });
        }
        for i in k + 1..n {
            let f = a[(i, k)].clone() / piv.clone();
            lower[(i, k)] = f.clone();
            for j in k..n {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
            }
        }
    }
    let mut diag = Mat::<T>::zeros(n, n);
    let mut upper = Mat::<T>::identity(n);
    for k in 0..n {
        let d = a[(k, k)].clone();
        diag[(k, k)] = d.clone();
        for j in k + 1..n {
            upper[(k, j)] = a[(k, j)].clone() / d.clone();
        }
    }
    Ok((lower, diag, upper))
}

// Matrices serialize as {"n": int, "re": [[..]], "im": [[..]]}.
impl Serialize for CMat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            re: Vec<Vec<f64>>,
            im: Vec<Vec<f64>>,
        }
        let n = self.rows;
        let re = (0..n)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].re).collect())
            .collect();
        let im = (0..n)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].im).collect())
            .collect();
        Repr { n, re, im }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CMat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            re: Vec<Vec<f64>>,
            im: Vec<Vec<f64>>,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.re.len() != r.n || r.im.len() != r.n {
            return Err(D::Error::custom("matrix row count does not match n"));
        }
        for row in r.re.iter().chain(r.im.iter()) {
            if row.len() != r.n {
                return Err(D::Error::custom("matrix column count does not match n"));
            }
        }
        Ok(CMat::from_fn(r.n, r.n, |i, j| C64::new(r.re[i][j], r.im[i][j])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::scalar::cr;

    #[test]
    fn gaussian_identity() {
        let i3 = CMat::identity(3);
        let (l, d, u) = gaussian_decompose(&i3, 1e-10).unwrap();
        assert!(l.approx_eq(&i3, 1e-12));
        assert!(d.approx_eq(&i3, 1e-12));
        assert!(u.approx_eq(&i3, 1e-12));
    }

    #[test]
    fn gaussian_2x2_known() {
        // [[2,1],[1,1]] = [[1,0],[0.5,1]] diag(2, 0.5) [[1,0.5],[0,1]]
        let g = CMat::from_fn(2, 2, |i, j| cr([[2.0, 1.0], [1.0, 1.0]][i][j]));
        let (l, d, u) = gaussian_decompose(&g, 1e-10).unwrap();
        assert!((l[(1, 0)] - cr(0.5)).norm() < 1e-12);
        assert!((d[(0, 0)] - cr(2.0)).norm() < 1e-12);
        assert!((d[(1, 1)] - cr(0.5)).norm() < 1e-12);
        assert!((u[(0, 1)] - cr(0.5)).norm() < 1e-12);
        let back = l.mul(&d).mul(&u);
        assert!(back.approx_eq(&g, 1e-12));
    }

    #[test]
    fn gaussian_rejects_off_cell() {
        // [[0,-1],[1,0]] has vanishing leading minor
        let g = CMat::from_fn(2, 2, |i, j| cr([[0.0, -1.0], [1.0, 0.0]][i][j]));
        match gaussian_decompose(&g, 1e-10) {
            Err(DbcError::BigCell { index: 1, .. }) => {}
            other => panic!("expected BigCell error, got {:?}", other),
        }
    }

    #[test]
    fn diag_entries_are_minor_ratios() {
        let g = CMat::from_fn(3, 3, |i, j| {
            cr([[2.0, 1.0, 0.5], [1.0, 3.0, 1.0], [0.5, 1.0, 4.0]][i][j])
        });
        let (_, d, _) = gaussian_decompose(&g, 1e-10).unwrap();
        let mut prev = cr(1.0);
        for k in 1..=3 {
            let mk = g.leading_minor(k);
            assert!((d[(k - 1, k - 1)] - mk / prev).norm() < 1e-10);
            prev = mk;
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let g = CMat::from_fn(2, 2, |i, j| cr([[2.0, 0.0], [0.0, 0.5]][i][j]));
        let inv = g.inverse().unwrap();
        assert!((inv[(0, 0)] - cr(0.5)).norm() < 1e-12);
        assert!((inv[(1, 1)] - cr(2.0)).norm() < 1e-12);
        let g2 = CMat::from_fn(3, 3, |i, j| {
            C64::new((i * j) as f64 + 1.0, if i == j { 0.3 } else { -0.1 })
        });
        let prod = g2.mul(&g2.inverse().unwrap());
        assert!(prod.approx_eq(&CMat::identity(3), 1e-10));
    }

    #[test]
    fn matrix_json_roundtrip() {
        let g = CMat::from_fn(2, 2, |i, j| C64::new(i as f64, j as f64 + 0.5));
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"n\":2"));
        let back: CMat = serde_json::from_str(&s).unwrap();
        assert!(back.approx_eq(&g, 1e-15));
    }
}
