//! The standard quasitriangular r-matrix of sl(n) and the multiplicative
//! bivector it generates, in the right-trivialized frame.
//!
//! The invariant form is ⟨x, y⟩ = ½·tr(xy); this normalization is the one
//! that reproduces the coordinate brackets {g_11, g_12} = g_11 g_12 on
//! SL(2) and is pinned down by the golden-value suite. With it the
//! r-matrix is r = Σ_i h_i⊗h_i + 2 Σ_{i<j} e_ji⊗e_ij, where {h_i} is the
//! trace-orthonormal Cartan basis.

use crate::cells::lift;
use crate::error::Result;
use crate::num::{cr, CMat, Jet, Mat, Scalar, C64};

/// Dimension of sl(n).
pub fn sl_dim(n: usize) -> usize {
    n * n - 1
}

/// Trace-orthonormal Cartan basis element h_k (1-based k <= n-1):
/// diag(1,..,1,-k,0,..,0)/sqrt(k(k+1)).
pub fn cartan_basis(n: usize, k: usize) -> CMat {
    let s = 1.0 / ((k * (k + 1)) as f64).sqrt();
    CMat::from_fn(n, n, |i, j| {
        if i != j {
            cr(0.0)
        } else if i < k {
            cr(s)
        } else if i == k {
            cr(-(k as f64) * s)
        } else {
            cr(0.0)
        }
    })
}

fn elem(n: usize, i: usize, j: usize) -> CMat {
    CMat::from_fn(n, n, |r, c| if (r, c) == (i, j) { cr(1.0) } else { cr(0.0) })
}

/// Ordered basis of sl(n): Cartans h_1..h_{n-1}, then for each pair i<j the
/// root vectors e_ij (upper) and e_ji (lower).
pub fn sl_basis(n: usize) -> Vec<CMat> {
    let mut out = Vec::with_capacity(sl_dim(n));
    for k in 1..n {
        out.push(cartan_basis(n, k));
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(elem(n, i, j));
            out.push(elem(n, j, i));
        }
    }
    out
}

/// Index of e_ij (i != j) in `sl_basis`.
pub fn basis_index(n: usize, i: usize, j: usize) -> usize {
    assert_ne!(i, j);
    let (lo, hi) = (i.min(j), i.max(j));
    // pairs (lo, hi) in lexicographic order
    let mut pair = 0;
    for a in 0..lo {
        pair += n - a - 1;
    }
    pair += hi - lo - 1;
    (n - 1) + 2 * pair + if i < j { 0 } else { 1 }
}

/// Coefficients of a traceless matrix in `sl_basis`: off-diagonal entries
/// directly, Cartan components by the orthonormal projection tr(h_k·x).
pub fn sl_coeffs<T: Scalar>(x: &Mat<T>) -> Vec<T> {
    let n = x.n();
    let mut out = Vec::with_capacity(sl_dim(n));
    for k in 1..n {
        let h = cartan_basis(n, k);
        let mut c = T::zero();
        for i in 0..n {
            c = c + T::from_c64(h[(i, i)]) * x[(i, i)].clone();
        }
        out.push(c);
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(x[(i, j)].clone());
            out.push(x[(j, i)].clone());
        }
    }
    out
}

/// The standard r-matrix as a list of factor pairs (left ∈ b_-, right ∈ b).
/// The same list is the canonical element of the (b_-, b) dual pairing used
/// by the mixed product structure.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub n: usize,
    pub pairs: Vec<(CMat, CMat)>,
}

impl RMatrix {
    pub fn standard(n: usize) -> RMatrix {
        let mut pairs = Vec::new();
        for k in 1..n {
            let h = cartan_basis(n, k);
            pairs.push((h.clone(), h));
        }
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((elem(n, j, i).scale(cr(2.0)), elem(n, i, j)));
            }
        }
        RMatrix { n, pairs }
    }

    /// Coefficient matrix R^{ab} with r = Σ R^{ab} X_a ⊗ X_b.
    pub fn coeff_matrix(&self) -> CMat {
        let d = sl_dim(self.n);
        let mut r = CMat::zeros(d, d);
        for (l, rt) in &self.pairs {
            let la = sl_coeffs(l);
            let rb = sl_coeffs(rt);
            for a in 0..d {
                for b in 0..d {
                    r[(a, b)] += la[a] * rb[b];
                }
            }
        }
        r
    }

    /// Symmetric part ½(r + r^21) as a coefficient matrix.
    pub fn symmetric_part(&self) -> CMat {
        let r = self.coeff_matrix();
        r.add(&r.transpose()).scale(cr(0.5))
    }
}

/// Coefficient matrix of the right-trivialized bivector at g:
/// Π(g) = (Ad_g ⊗ Ad_g) r − r. Antisymmetry is automatic because the
/// symmetric part of r is Ad-invariant. Brackets evaluate as
/// {f1, f2}(g) = Σ_{ab} Π^{ab}(g) · D_a f1 · D_b f2 with D_a the derivative
/// along the right-translate X_a·g.
pub fn pist_coeffs_t<T: Scalar>(g: &Mat<T>, r: &RMatrix) -> Result<Mat<T>> {
    let d = sl_dim(r.n);
    let ginv = g.inverse()?;
    let mut pi = Mat::<T>::zeros(d, d);
    for (l, rt) in &r.pairs {
        let adl = g.mul(&lift::<T>(l)).mul(&ginv);
        let adr = g.mul(&lift::<T>(rt)).mul(&ginv);
        let la = sl_coeffs(&adl);
        let rb = sl_coeffs(&adr);
        let l0 = sl_coeffs(&lift::<T>(l));
        let r0 = sl_coeffs(&lift::<T>(rt));
        for a in 0..d {
            for b in 0..d {
                pi[(a, b)] = pi[(a, b)].clone() + la[a].clone() * rb[b].clone()
                    - l0[a].clone() * r0[b].clone();
            }
        }
    }
    Ok(pi)
}

pub fn pist_coeffs(g: &CMat, r: &RMatrix) -> Result<CMat> {
    pist_coeffs_t::<C64>(g, r)
}

pub fn pist_coeffs_jet(g: &Mat<Jet>, r: &RMatrix) -> Result<Mat<Jet>> {
    pist_coeffs_t::<Jet>(g, r)
}

/// The matrix of Ad_g in `sl_basis`: column b holds the coefficients of
/// g·X_b·g⁻¹.
pub fn adjoint_matrix(g: &CMat) -> Result<CMat> {
    let n = g.n();
    let d = sl_dim(n);
    let ginv = g.inverse()?;
    let basis = sl_basis(n);
    let mut m = CMat::zeros(d, d);
    for (b, x) in basis.iter().enumerate() {
        let ad = g.mul(x).mul(&ginv);
        for (a, c) in sl_coeffs(&ad).into_iter().enumerate() {
            m[(a, b)] = c;
        }
    }
    Ok(m)
}

/// π^#: contract a covector (components on `sl_basis`) with the bivector:
/// (π^# α)_b = Σ_a Π^{ab} α_a.
pub fn sharp(pi: &CMat, alpha: &[C64]) -> Vec<C64> {
    let d = pi.n();
    (0..d)
        .map(|b| (0..d).map(|a| pi[(a, b)] * alpha[a]).sum())
        .collect()
}

/// Covector components of tr-pairing against y: α_a = ½·tr(y·X_a)
/// (the invariant-form functional ⟨y, ·⟩).
pub fn covector_of(y: &CMat) -> Vec<C64> {
    let n = y.n();
    sl_basis(n)
        .iter()
        .map(|x| y.mul(x).trace() * cr(0.5))
        .collect()
}

/// Triangular splitting x = [x]_- + [x]_0 + [x]_+ of a matrix.
pub fn split_triangular(x: &CMat) -> (CMat, CMat, CMat) {
    let n = x.n();
    let lower = CMat::from_fn(n, n, |i, j| if i > j { x[(i, j)] } else { cr(0.0) });
    let diag = CMat::from_fn(n, n, |i, j| if i == j { x[(i, j)] } else { cr(0.0) });
    let upper = CMat::from_fn(n, n, |i, j| if i < j { x[(i, j)] } else { cr(0.0) });
    (lower, diag, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Tolerance;
    use crate::weyl::{WeylElement, WeylRep};

    #[test]
    fn basis_and_coeffs_roundtrip() {
        let n = 3;
        let basis = sl_basis(n);
        assert_eq!(basis.len(), 8);
        // coefficients of each basis element pick out a unit vector
        for (k, x) in basis.iter().enumerate() {
            let c = sl_coeffs(x);
            for (a, ca) in c.iter().enumerate() {
                let expect = if a == k { 1.0 } else { 0.0 };
                assert!((ca - cr(expect)).norm() < 1e-12, "basis {} coeff {}", k, a);
            }
        }
        // index lookup agrees
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let idx = basis_index(n, i, j);
                    assert!((basis[idx][(i, j)] - cr(1.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn pist_vanishes_at_identity() {
        for n in 2..=4 {
            let r = RMatrix::standard(n);
            let pi = pist_coeffs(&CMat::identity(n), &r).unwrap();
            assert!(pi.max_abs() < 1e-13);
        }
    }

    #[test]
    fn pist_antisymmetric_at_random_points() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let tol = Tolerance::default();
        for n in 2..=4 {
            let r = RMatrix::standard(n);
            for _ in 0..5 {
                let g = crate::cells::sample_sl(n, &mut rng, &tol);
                let pi = pist_coeffs(&g, &r).unwrap();
                let asym = pi.add(&pi.transpose());
                assert!(
                    asym.max_abs() <= 1e-9 * pi.max_abs().max(1.0),
                    "bivector not antisymmetric at n={}",
                    n
                );
            }
        }
    }

    #[test]
    fn symmetric_part_is_ad_invariant() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let tol = Tolerance::default();
        for n in 2..=4 {
            let r = RMatrix::standard(n);
            let s = r.symmetric_part();
            for _ in 0..20 {
                let g = crate::cells::sample_sl(n, &mut rng, &tol);
                let m = adjoint_matrix(&g).unwrap();
                let moved = m.mul(&s).mul(&m.transpose());
                assert!(
                    moved.dist(&s) <= 1e-9 * s.max_abs().max(1.0) * cond_like(&m),
                    "symmetric part moved under Ad at n={}",
                    n
                );
            }
        }
    }

    fn cond_like(m: &CMat) -> f64 {
        m.max_abs().powi(2).max(1.0)
    }

    #[test]
    fn pist_at_sbar_matches_root_wedge() {
        // Π(s̄) = -(E_{-α} ∧ E_α) = -2(e_21⊗e_12 - e_12⊗e_21) at n = 2
        let s = WeylElement::simple(2, 1);
        let sbar = WeylRep::canonical(&s).matrix;
        let r = RMatrix::standard(2);
        let pi = pist_coeffs(&sbar, &r).unwrap();
        let i12 = basis_index(2, 0, 1);
        let i21 = basis_index(2, 1, 0);
        let mut expect = CMat::zeros(3, 3);
        expect[(i21, i12)] = cr(-2.0);
        expect[(i12, i21)] = cr(2.0);
        assert!(pi.dist(&expect) < 1e-12, "pi(sbar) = {:?}", pi);
    }

    #[test]
    fn dressing_formula_consistency_sl2() {
        // hand-checked point: g = [[1,0],[c,1]] gives
        // pi^#(<e_12, .>-functional) = -(c/sqrt2)·h · 2 (form = tr/2)
        let c0 = 1.7;
        let g = CMat::from_fn(2, 2, |i, j| {
            cr([[1.0, 0.0], [c0, 1.0]][i][j])
        });
        let r = RMatrix::standard(2);
        let pi = pist_coeffs(&g, &r).unwrap();
        let e12 = CMat::from_fn(2, 2, |i, j| if (i, j) == (0, 1) { cr(1.0) } else { cr(0.0) });
        let alpha = covector_of(&e12);
        let w = sharp(&pi, &alpha);
        // expected: -c0/sqrt(2) on the Cartan coordinate, zero elsewhere
        assert!((w[0] - cr(-c0 / std::f64::consts::SQRT_2)).norm() < 1e-12);
        assert!(w[1].norm() < 1e-12 && w[2].norm() < 1e-12);
    }
}
