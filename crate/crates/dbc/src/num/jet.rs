use super::mat::{CMat, Mat};
use super::scalar::{Scalar, C64};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Forward-mode jet over complex scalars: value, directional first
/// derivatives along a declared list of seeds, and (opt-in) the symmetric
/// matrix of second derivatives. All functions appearing here are
/// polynomial or rational, hence holomorphic, so no conjugation bookkeeping
/// is needed.
///
/// Constants are jets with an empty derivative vector; binary operations
/// broadcast them against seeded jets of any width.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub v: C64,
    pub d: Vec<C64>,
    /// Row-major k x k symmetric second-derivative matrix, when tracked.
    pub h: Option<Vec<C64>>,
}

impl Jet {
    pub fn constant(v: C64) -> Jet {
        Jet {
            v,
            d: Vec::new(),
            h: None,
        }
    }

    /// Seed jet: value `v`, first derivatives `d`, second order zeroed when
    /// `second` is set.
    pub fn seeded(v: C64, d: Vec<C64>, second: bool) -> Jet {
        let k = d.len();
        Jet {
            v,
            d,
            h: if second {
                Some(vec![C64::new(0.0, 0.0); k * k])
            } else {
                None
            },
        }
    }

    pub fn width(&self) -> usize {
        self.d.len()
    }

    /// First derivative along seed k, zero for constants.
    pub fn d_or_zero(&self, k: usize) -> C64 {
        self.d.get(k).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    fn d_at(&self, i: usize) -> C64 {
        self.d.get(i).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    fn h_at(&self, k: usize, i: usize, j: usize) -> C64 {
        match &self.h {
            Some(h) if !self.d.is_empty() => h[i * k + j],
            _ => C64::new(0.0, 0.0),
        }
    }

    fn join_width(&self, other: &Jet) -> usize {
        let (a, b) = (self.width(), other.width());
        if a != 0 && b != 0 {
            assert_eq!(a, b, "jet widths disagree");
        }
        a.max(b)
    }

    fn join_second(&self, other: &Jet) -> bool {
        self.h.is_some() || other.h.is_some()
    }

    /// First derivative along seed `i`, itself as a first-order jet: value is
    /// d_i, derivatives are the i-th row of the second-order block. This is
    /// what lets a bracket (already one derivative deep) be differentiated
    /// once more for the Jacobi identity.
    pub fn derivative_jet(&self, i: usize) -> Jet {
        let k = self.width();
        let d = (0..k).map(|j| self.h_at(k, i, j)).collect();
        Jet {
            v: self.d_at(i),
            d,
            h: None,
        }
    }

    pub fn recip(&self) -> Jet {
        let k = self.width();
        let iv = C64::new(1.0, 0.0) / self.v;
        let iv2 = iv * iv;
        let d: Vec<C64> = (0..k).map(|i| -self.d_at(i) * iv2).collect();
        let h = if self.h.is_some() {
            let iv3 = iv2 * iv;
            let mut out = vec![C64::new(0.0, 0.0); k * k];
            for i in 0..k {
                for j in 0..k {
                    out[i * k + j] = -self.h_at(k, i, j) * iv2
                        + 2.0 * self.d_at(i) * self.d_at(j) * iv3;
                }
            }
            Some(out)
        } else {
            None
        };
        Jet { v: iv, d, h }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let k = self.join_width(&rhs);
        let d = (0..k).map(|i| self.d_at(i) + rhs.d_at(i)).collect();
        let h = if self.join_second(&rhs) {
            let mut out = vec![C64::new(0.0, 0.0); k * k];
            for i in 0..k {
                for j in 0..k {
                    out[i * k + j] = self.h_at(k, i, j) + rhs.h_at(k, i, j);
                }
            }
            Some(out)
        } else {
            None
        };
        Jet {
            v: self.v + rhs.v,
            d,
            h,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            v: -self.v,
            d: self.d.iter().map(|x| -x).collect(),
            h: self.h.map(|h| h.iter().map(|x| -x).collect()),
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let k = self.join_width(&rhs);
        let d: Vec<C64> = (0..k)
            .map(|i| self.d_at(i) * rhs.v + self.v * rhs.d_at(i))
            .collect();
        let h = if self.join_second(&rhs) {
            let mut out = vec![C64::new(0.0, 0.0); k * k];
            for i in 0..k {
                for j in 0..k {
                    out[i * k + j] = self.h_at(k, i, j) * rhs.v
                        + self.v * rhs.h_at(k, i, j)
                        + self.d_at(i) * rhs.d_at(j)
                        + self.d_at(j) * rhs.d_at(i);
                }
            }
            Some(out)
        } else {
            None
        };
        Jet {
            v: self.v * rhs.v,
            d,
            h,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the reciprocal jet
    fn div(self, rhs: Jet) -> Jet {
        let r = rhs.recip();
        self * r
    }
}

impl Scalar for Jet {
    fn zero() -> Self {
        Jet::constant(C64::new(0.0, 0.0))
    }
    fn one() -> Self {
        Jet::constant(C64::new(1.0, 0.0))
    }
    fn from_c64(z: C64) -> Self {
        Jet::constant(z)
    }
    fn val(&self) -> C64 {
        self.v
    }
}

/// Matrix of jets seeded by tangent directions: entry (i,j) has value
/// g[i,j] and first derivative seeds[k][i,j] along seed k. Seeds are plain
/// matrices (right-translates x·g, chart partials, or anything else).
pub fn jet_matrix(g: &CMat, seeds: &[CMat], second: bool) -> Mat<Jet> {
    let k = seeds.len();
    Mat::from_fn(g.rows(), g.cols(), |i, j| {
        let d = (0..k).map(|s| seeds[s][(i, j)]).collect::<Vec<_>>();
        Jet::seeded(g[(i, j)], d, second)
    })
}

/// Constant (derivative-free) jet matrix.
pub fn const_matrix(g: &CMat) -> Mat<Jet> {
    Mat::from_fn(g.rows(), g.cols(), |i, j| Jet::constant(g[(i, j)]))
}

/// Evaluate an observable with first derivatives along the given tangent
/// seeds at g. Observables must be compositions of arithmetic, determinants,
/// minors, and the factorization kernels (all generic over `Scalar`).
pub fn jet_eval(
    f: impl Fn(&Mat<Jet>) -> crate::error::Result<Jet>,
    g: &CMat,
    seeds: &[CMat],
) -> crate::error::Result<Jet> {
    f(&jet_matrix(g, seeds, false))
}

/// Same, with second-order tracking.
pub fn jet_eval2(
    f: impl Fn(&Mat<Jet>) -> crate::error::Result<Jet>,
    g: &CMat,
    seeds: &[CMat],
) -> crate::error::Result<Jet> {
    f(&jet_matrix(g, seeds, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::scalar::cr;

    fn j(v: f64, d: &[f64]) -> Jet {
        Jet::seeded(cr(v), d.iter().map(|x| cr(*x)).collect(), true)
    }

    #[test]
    fn product_rule() {
        // f = x, g = x^2 at x=3 with seed dx=1: (fg)' = 3x^2 = 27, (fg)'' = 6x = 18
        let x = j(3.0, &[1.0]);
        let xx = x.clone() * x.clone();
        let fg = x.clone() * xx;
        assert!((fg.v - cr(27.0)).norm() < 1e-12);
        assert!((fg.d[0] - cr(27.0)).norm() < 1e-12);
        assert!((fg.h.as_ref().unwrap()[0] - cr(18.0)).norm() < 1e-12);
    }

    #[test]
    fn reciprocal_derivatives() {
        // f = 1/x at x=2: f' = -1/4, f'' = 2/8 = 0.25
        let x = j(2.0, &[1.0]);
        let r = x.recip();
        assert!((r.v - cr(0.5)).norm() < 1e-12);
        assert!((r.d[0] - cr(-0.25)).norm() < 1e-12);
        assert!((r.h.as_ref().unwrap()[0] - cr(0.25)).norm() < 1e-12);
    }

    #[test]
    fn constant_broadcast() {
        let x = j(2.0, &[1.0, 0.0]);
        let c = Jet::constant(cr(5.0));
        let y = x.clone() * c;
        assert_eq!(y.width(), 2);
        assert!((y.v - cr(10.0)).norm() < 1e-12);
        assert!((y.d[0] - cr(5.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_jet_extracts_hessian_row() {
        // f = x*y with seeds (dx, dy): d/dx f = y as a jet should have
        // derivative vector (0, 1)
        let x = Jet::seeded(cr(3.0), vec![cr(1.0), cr(0.0)], true);
        let y = Jet::seeded(cr(7.0), vec![cr(0.0), cr(1.0)], true);
        let f = x * y;
        let fx = f.derivative_jet(0);
        assert!((fx.v - cr(7.0)).norm() < 1e-12);
        assert!((fx.d[0]).norm() < 1e-12);
        assert!((fx.d[1] - cr(1.0)).norm() < 1e-12);
    }
}
