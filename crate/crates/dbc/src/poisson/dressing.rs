//! Dressing vector fields of the standard structure, computed through the
//! double g ⊕ g: for ξ in the dual, d(ξ)(g) = −l_g p(Ad_{(g⁻¹,g⁻¹)} ξ),
//! with p the projection onto the diagonal along the dual complement. The
//! dual is spanned by (η, 0) with η strictly upper, (0, η) with η strictly
//! lower, and (x, −x) with x traceless diagonal.

use super::rmatrix::{covector_of, sharp, sl_coeffs, split_triangular};
use crate::error::Result;
use crate::num::{cr, projection_residual, CMat, C64};

/// An element of the dual Lie algebra, as a pair of matrices in g ⊕ g.
#[derive(Clone, Debug)]
pub struct DualElement {
    pub left: CMat,
    pub right: CMat,
}

impl DualElement {
    pub fn upper(eta: CMat) -> Self {
        DualElement {
            right: CMat::zeros(eta.n(), eta.n()),
            left: eta,
        }
    }

    pub fn lower(eta: CMat) -> Self {
        DualElement {
            left: CMat::zeros(eta.n(), eta.n()),
            right: eta,
        }
    }

    pub fn cartan(x: CMat) -> Self {
        DualElement {
            right: x.neg(),
            left: x,
        }
    }

    /// The functional on g it pairs to: x ↦ ⟨left − right, x⟩.
    pub fn covector(&self) -> Vec<C64> {
        covector_of(&self.left.sub(&self.right))
    }
}

/// Basis of the dual: one element per positive root on each side plus the
/// Cartan directions; spans a space of dimension dim sl(n).
pub fn dual_basis(n: usize) -> Vec<DualElement> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let eij = CMat::from_fn(n, n, |r, c| if (r, c) == (i, j) { cr(1.0) } else { cr(0.0) });
            out.push(DualElement::upper(eij));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let eji = CMat::from_fn(n, n, |r, c| if (r, c) == (j, i) { cr(1.0) } else { cr(0.0) });
            out.push(DualElement::lower(eji));
        }
    }
    for k in 1..n {
        out.push(DualElement::cartan(super::rmatrix::cartan_basis(n, k)));
    }
    out
}

/// Dressing vector at g: returned both as the tangent matrix (an element of
/// T_gG realized in the ambient matrix space) and as its right-trivialized
/// coefficient vector on the sl basis.
pub fn dressing_eval(xi: &DualElement, g: &CMat) -> Result<(CMat, Vec<C64>)> {
    let ginv = g.inverse()?;
    let x = ginv.mul(&xi.left).mul(g);
    let y = ginv.mul(&xi.right).mul(g);
    let (xl, x0, _) = split_triangular(&x);
    let (_, y0, yu) = split_triangular(&y);
    // p(X, Y) = ½([X]_0 + [Y]_0) + [X]_- + [Y]_+
    let p = x0.add(&y0).scale(cr(0.5)).add(&xl).add(&yu);
    let tangent = g.mul(&p).neg();
    let coeffs = sl_coeffs(&tangent.mul(&ginv));
    Ok((tangent, coeffs))
}

/// Agreement of the dressing formula with π^#(ξ^R): the two must coincide
/// as right-trivialized coefficient vectors.
pub fn dressing_vs_sharp(xi: &DualElement, g: &CMat, pi: &CMat) -> Result<f64> {
    let (_, coeffs) = dressing_eval(xi, g)?;
    let w = sharp(pi, &xi.covector());
    let scale = coeffs
        .iter()
        .chain(w.iter())
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let dev = coeffs
        .iter()
        .zip(w.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    Ok(dev / scale)
}

/// Right-trivialized coefficient spans of the tangent spaces used in the
/// membership displays: T_g(gB_-) = Ad_g b_-, T_g(BgB) = b + Ad_g b, and
/// the analogues with the roles of the Borels exchanged.
pub struct TangentSpans {
    pub g_bminus: Vec<Vec<C64>>,
    pub g_b: Vec<Vec<C64>>,
    pub bgb: Vec<Vec<C64>>,
    pub bmgbm: Vec<Vec<C64>>,
    pub tgb: Vec<Vec<C64>>,
    pub tgbm: Vec<Vec<C64>>,
}

fn borel_basis(n: usize, lower: bool) -> Vec<CMat> {
    let mut out = Vec::new();
    for k in 1..n {
        out.push(super::rmatrix::cartan_basis(n, k));
    }
    for i in 0..n {
        for j in i + 1..n {
            let (r, c) = if lower { (j, i) } else { (i, j) };
            out.push(CMat::from_fn(n, n, |a, b| {
                if (a, b) == (r, c) {
                    cr(1.0)
                } else {
                    cr(0.0)
                }
            }));
        }
    }
    out
}

fn cartan_span(n: usize) -> Vec<CMat> {
    (1..n).map(|k| super::rmatrix::cartan_basis(n, k)).collect()
}

pub fn tangent_spans(g: &CMat) -> Result<TangentSpans> {
    let n = g.n();
    let ginv = g.inverse()?;
    let adg = |x: &CMat| sl_coeffs(&g.mul(x).mul(&ginv));
    let raw = |x: &CMat| sl_coeffs(x);
    let b = borel_basis(n, false);
    let bm = borel_basis(n, true);
    let h = cartan_span(n);
    let g_bminus: Vec<Vec<C64>> = bm.iter().map(&adg).collect();
    let g_b: Vec<Vec<C64>> = b.iter().map(&adg).collect();
    let mut bgb: Vec<Vec<C64>> = b.iter().map(&raw).collect();
    bgb.extend(b.iter().map(&adg));
    let mut bmgbm: Vec<Vec<C64>> = bm.iter().map(&raw).collect();
    bmgbm.extend(bm.iter().map(&adg));
    let mut tgb: Vec<Vec<C64>> = h.iter().map(&raw).collect();
    tgb.extend(b.iter().map(&adg));
    let mut tgbm: Vec<Vec<C64>> = h.iter().map(&raw).collect();
    tgbm.extend(bm.iter().map(&adg));
    Ok(TangentSpans {
        g_bminus,
        g_b,
        bgb,
        bmgbm,
        tgb,
        tgbm,
    })
}

/// Membership residuals of the three dressing families at g. Each dressing
/// value must lie in the intersection displayed for its family:
/// upper: T_g(gB_-) ∩ T_g(BgB); lower: T_g(gB) ∩ T_g(B_-gB_-);
/// cartan: T_g(TgB_-) ∩ T_g(TgB).
pub fn dressing_membership_dev(g: &CMat) -> Result<f64> {
    let n = g.n();
    let spans = tangent_spans(g)?;
    let mut worst: f64 = 0.0;
    let mut check = |coeffs: &[C64], span: &[Vec<C64>]| {
        let r = projection_residual(span, coeffs, 1e-12);
        worst = worst.max(r);
    };
    for xi in dual_basis(n) {
        let (_, coeffs) = dressing_eval(&xi, g)?;
        let norm = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-13 {
            continue;
        }
        let is_upper = xi.right.max_abs() == 0.0;
        let is_lower = xi.left.max_abs() == 0.0;
        if is_upper {
            check(&coeffs, &spans.g_bminus);
            check(&coeffs, &spans.bgb);
        } else if is_lower {
            check(&coeffs, &spans.g_b);
            check(&coeffs, &spans.bmgbm);
        } else {
            check(&coeffs, &spans.tgbm);
            check(&coeffs, &spans.tgb);
        }
    }
    Ok(worst)
}
