//! Golden-value checks: the explicitly worked SL(2) and SL(3) structures,
//! written as closed-form charts and compared against the general-n
//! machinery at sampled points. These pin down every sign and
//! normalization convention in the crate.

use crate::error::Result;
use crate::groupoid::{gpd_mul, GroupoidElement};
use crate::num::{cr, null_space, projection_residual, CMat, Jet, Mat, Tolerance, C64};
use crate::poisson::{bracket_eval, bracket_matrix, entry_obs, pist_coeffs, sl_basis, RMatrix};
use crate::weyl::{WeylElement, WeylRep};
use rand::Rng;

/// The (z, a, b) chart of the big double cell of SL(2):
/// g = [[az, (abz−1)/a],[a, b]].
pub fn sl2_cell_matrix<T: crate::num::Scalar>(z: T, a: T, b: T) -> Mat<T> {
    let one = T::one();
    Mat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => a.clone() * z.clone(),
        (0, 1) => (a.clone() * b.clone() * z.clone() - one.clone()) / a.clone(),
        (1, 0) => a.clone(),
        (1, 1) => b.clone(),
        _ => unreachable!(),
    })
}

/// Chart coordinates of a big-double-cell SL(2) matrix: (z, a, b) =
/// (g11/g21, g21, g22).
pub fn sl2_cell_coords<T: crate::num::Scalar>(g: &Mat<T>) -> (T, T, T) {
    (
        g[(0, 0)].clone() / g[(1, 0)].clone(),
        g[(1, 0)].clone(),
        g[(1, 1)].clone(),
    )
}

/// χ = a²(1−abz)⁻¹ on the (z, a, b) chart.
pub fn sl2_chi(z: C64, a: C64, b: C64) -> C64 {
    a * a / (cr(1.0) - a * b * z)
}

/// The leaf chart (p, q, t) ↦ [[pt, −t],[t, −qt]] with t²(1−pq) = 1.
pub fn sl2_leaf_matrix(p: C64, q: C64, t: C64) -> CMat {
    CMat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => p * t,
        (0, 1) => -t,
        (1, 0) => t,
        (1, 1) => -q * t,
        _ => unreachable!(),
    })
}

pub fn sl2_leaf_coords(g: &CMat) -> (C64, C64, C64) {
    let t = g[(1, 0)];
    (g[(0, 0)] / t, -g[(1, 1)] / t, t)
}

/// Random (p, q, t) with the leaf constraint t²(1−pq) = 1; the sign of the
/// square-root branch is drawn too.
pub fn sl2_leaf_sample(rng: &mut impl Rng) -> (C64, C64, C64) {
    loop {
        let p = crate::weyl::annulus(rng);
        let q = crate::weyl::annulus(rng);
        let w = cr(1.0) - p * q;
        if w.norm() < 0.05 {
            continue;
        }
        let mut t = (cr(1.0) / w).sqrt();
        if rng.gen_bool(0.5) {
            t = -t;
        }
        return (p, q, t);
    }
}

/// Max deviation of the six SL(2) coordinate brackets
/// {g11,g12} = g11g12, {g11,g21} = g11g21, {g12,g22} = g12g22,
/// {g21,g22} = g21g22, {g11,g22} = 2g12g21, {g12,g21} = 0
/// at the given point.
pub fn sl2_bracket_table_dev(g: &CMat, r: &RMatrix) -> Result<f64> {
    let cases: [((usize, usize), (usize, usize), C64); 6] = [
        ((0, 0), (0, 1), g[(0, 0)] * g[(0, 1)]),
        ((0, 0), (1, 0), g[(0, 0)] * g[(1, 0)]),
        ((0, 1), (1, 1), g[(0, 1)] * g[(1, 1)]),
        ((1, 0), (1, 1), g[(1, 0)] * g[(1, 1)]),
        ((0, 0), (1, 1), cr(2.0) * g[(0, 1)] * g[(1, 0)]),
        ((0, 1), (1, 0), cr(0.0)),
    ];
    let mut worst: f64 = 0.0;
    for ((i1, j1), (i2, j2), expect) in cases {
        let got = bracket_eval(entry_obs(i1, j1), entry_obs(i2, j2), g, r)?;
        worst = worst.max((got - expect).norm() / expect.norm().max(1.0));
    }
    Ok(worst)
}

/// Max deviation of the (z, a, b) cell brackets {z,a} = za,
/// {z,b} = a⁻¹(abz−2), {a,b} = ab at the given chart point.
pub fn sl2_cell_bracket_dev(z: C64, a: C64, b: C64, r: &RMatrix) -> Result<f64> {
    let g = sl2_cell_matrix(z, a, b);
    let obs_z = |m: &Mat<Jet>| Ok(m[(0, 0)].clone() / m[(1, 0)].clone());
    let obs_a = |m: &Mat<Jet>| Ok(m[(1, 0)].clone());
    let obs_b = |m: &Mat<Jet>| Ok(m[(1, 1)].clone());
    let za = bracket_eval(obs_z, obs_a, &g, r)?;
    let zb = bracket_eval(obs_z, obs_b, &g, r)?;
    let ab = bracket_eval(obs_a, obs_b, &g, r)?;
    let e1 = z * a;
    let e2 = (a * b * z - cr(2.0)) / a;
    let e3 = a * b;
    let mut worst = (za - e1).norm() / e1.norm().max(1.0);
    worst = worst.max((zb - e2).norm() / e2.norm().max(1.0));
    worst = worst.max((ab - e3).norm() / e3.norm().max(1.0));
    Ok(worst)
}

/// Max deviation of the leaf brackets {p,q} = 2(1−pq), {p,t} = pt,
/// {q,t} = −qt at a point of the SL(2) leaf chart.
pub fn sl2_leaf_bracket_dev(p: C64, q: C64, t: C64, r: &RMatrix) -> Result<f64> {
    let g = sl2_leaf_matrix(p, q, t);
    let obs_p = |m: &Mat<Jet>| Ok(m[(0, 0)].clone() / m[(1, 0)].clone());
    let obs_q = |m: &Mat<Jet>| Ok(-(m[(1, 1)].clone() / m[(1, 0)].clone()));
    let obs_t = |m: &Mat<Jet>| Ok(m[(1, 0)].clone());
    let pq = bracket_eval(obs_p, obs_q, &g, r)?;
    let pt = bracket_eval(obs_p, obs_t, &g, r)?;
    let qt = bracket_eval(obs_q, obs_t, &g, r)?;
    let e1 = cr(2.0) * (cr(1.0) - p * q);
    let e2 = p * t;
    let e3 = -q * t;
    let mut worst = (pq - e1).norm() / e1.norm().max(1.0);
    worst = worst.max((pt - e2).norm() / e2.norm().max(1.0));
    worst = worst.max((qt - e3).norm() / e3.norm().max(1.0));
    Ok(worst)
}

/// All SL(2) groupoid-chart identities at one random composable pair:
/// θ = z, τ = χz, ι = (χz, a⁻¹, −b), ε(z) = (z,1,0), and the displayed
/// multiplication, plus the leaf-groupoid (p,q,t) formulas
/// ι = (p, −qt², t⁻¹) and μ = (p1, q2 + q1t2⁻², t1t2).
pub fn sl2_groupoid_table_dev(rng: &mut impl Rng, tol: &Tolerance) -> Result<f64> {
    let s = WeylElement::simple(2, 1);
    let rep = WeylRep::canonical(&s);
    let mut worst: f64 = 0.0;
    let upd = |worst: &mut f64, d: f64| {
        if d > *worst {
            *worst = d;
        }
    };
    // (z, a, b) chart identities
    let (z, a, b) = loop {
        let z = crate::weyl::annulus(rng);
        let a = crate::weyl::annulus(rng);
        let b = crate::weyl::annulus(rng);
        if (cr(1.0) - a * b * z).norm() > 0.05 {
            break (z, a, b);
        }
    };
    let chi = sl2_chi(z, a, b);
    let g = GroupoidElement::from_matrix(sl2_cell_matrix(z, a, b), &s, &rep, tol)?;
    upd(&mut worst, (g.theta().coords[0] - z).norm() / z.norm().max(1.0));
    upd(
        &mut worst,
        (g.tau().coords[0] - chi * z).norm() / (chi * z).norm().max(1.0),
    );
    let inv = g.inverse(tol)?;
    let inv_expect = sl2_cell_matrix(chi * z, cr(1.0) / a, -b);
    upd(&mut worst, inv.pt.g.dist(&inv_expect) / inv_expect.max_abs().max(1.0));
    let idb = g.identity_at_source(tol)?;
    let idb_expect = sl2_cell_matrix(z, cr(1.0), cr(0.0));
    upd(&mut worst, idb.pt.g.dist(&idb_expect) / idb_expect.max_abs().max(1.0));
    let (a2, b2) = (crate::weyl::annulus(rng), crate::weyl::annulus(rng));
    let h = GroupoidElement::from_matrix(sl2_cell_matrix(chi * z, a2, b2), &s, &rep, tol)?;
    let m = gpd_mul(&g, &h, tol)?;
    let m_expect = sl2_cell_matrix(z, a * a2, a * b2 + b / a2);
    upd(&mut worst, m.pt.g.dist(&m_expect) / m_expect.max_abs().max(1.0));
    // leaf groupoid on (p, q, t)
    let (p, q, t) = sl2_leaf_sample(rng);
    let gl = GroupoidElement::from_matrix(sl2_leaf_matrix(p, q, t), &s, &rep, tol)?;
    upd(&mut worst, (gl.theta().coords[0] - p).norm() / p.norm().max(1.0));
    upd(&mut worst, (gl.tau().coords[0] - p).norm() / p.norm().max(1.0));
    let gli = gl.inverse(tol)?;
    let gli_expect = sl2_leaf_matrix(p, -q * t * t, cr(1.0) / t);
    upd(&mut worst, gli.pt.g.dist(&gli_expect) / gli_expect.max_abs().max(1.0));
    // composable leaf pair shares p
    let (q2, mut t2) = loop {
        let q2 = crate::weyl::annulus(rng);
        let w = cr(1.0) - p * q2;
        if w.norm() > 0.05 {
            break (q2, (cr(1.0) / w).sqrt());
        }
    };
    if rng.gen_bool(0.5) {
        t2 = -t2;
    }
    let hl = GroupoidElement::from_matrix(sl2_leaf_matrix(p, q2, t2), &s, &rep, tol)?;
    let ml = gpd_mul(&gl, &hl, tol)?;
    let ml_expect = sl2_leaf_matrix(p, q2 + q / (t2 * t2), t * t2);
    upd(&mut worst, ml.pt.g.dist(&ml_expect) / ml_expect.max_abs().max(1.0));
    Ok(worst)
}

/// The SL(3) leaf Σ_v̄ for v = s1s2 as the product of two SL(2) leaf blocks.
pub fn sl3_sigma_matrix(c: &[C64; 6]) -> CMat {
    let [p1, q1, t1, p2, q2, t2] = *c;
    let m1 = CMat::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => p1 * t1,
        (0, 1) => -t1,
        (1, 0) => t1,
        (1, 1) => -q1 * t1,
        (2, 2) => cr(1.0),
        _ => cr(0.0),
    });
    let m2 = CMat::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) => cr(1.0),
        (1, 1) => p2 * t2,
        (1, 2) => -t2,
        (2, 1) => t2,
        (2, 2) => -q2 * t2,
        _ => cr(0.0),
    });
    m1.mul(&m2)
}

pub fn sl3_sigma_coords(g: &CMat) -> [C64; 6] {
    let t2 = g[(2, 1)];
    let q2 = -g[(2, 2)] / t2;
    let t1 = g[(0, 2)] / t2;
    let p1 = g[(0, 0)] / t1;
    let q1 = g[(1, 2)] / (t1 * t2);
    let p2 = -g[(0, 1)] / (t1 * t2);
    [p1, q1, t1, p2, q2, t2]
}

pub fn sl3_sigma_sample(rng: &mut impl Rng) -> [C64; 6] {
    let (p1, q1, t1) = sl2_leaf_sample(rng);
    let (p2, q2, t2) = sl2_leaf_sample(rng);
    [p1, q1, t1, p2, q2, t2]
}

/// The printed SL(3) leaf-groupoid identities for v = s1 s2 at random
/// samples: source [p1, p2/t1], target [p1/t2, p2], the displayed inverse,
/// identity bisection, and six-variable multiplication.
pub fn sl3_groupoid_table_dev(rng: &mut impl Rng, tol: &Tolerance) -> Result<f64> {
    let v = WeylElement::from_oneline(&[2, 3, 1]);
    let rep = WeylRep::canonical(&v);
    let mut worst: f64 = 0.0;
    let upd = |worst: &mut f64, d: f64| {
        if d > *worst {
            *worst = d;
        }
    };
    let c = sl3_sigma_sample(rng);
    let [p1, q1, t1, p2, q2, t2] = c;
    let g = GroupoidElement::from_matrix(sl3_sigma_matrix(&c), &v, &rep, tol)?;
    // source and target in the (z1, z2) chart
    let th = g.theta();
    upd(&mut worst, (th.coords[0] - p1).norm() / p1.norm().max(1.0));
    upd(
        &mut worst,
        (th.coords[1] - p2 / t1).norm() / (p2 / t1).norm().max(1.0),
    );
    let ta = g.tau();
    upd(
        &mut worst,
        (ta.coords[0] - p1 / t2).norm() / (p1 / t2).norm().max(1.0),
    );
    upd(&mut worst, (ta.coords[1] - p2).norm() / p2.norm().max(1.0));
    // inverse
    let gi = g.inverse(tol)?;
    let gi_expect = sl3_sigma_matrix(&[
        p1 / t2,
        -q1 * t1 * t1 * t2,
        cr(1.0) / t1,
        p2 / t1,
        -q2 * t1 * t2 * t2,
        cr(1.0) / t2,
    ]);
    upd(&mut worst, gi.pt.g.dist(&gi_expect) / gi_expect.max_abs().max(1.0));
    // identity bisection at (z1, z2) = θ(g)
    let idb = g.identity_at_source(tol)?;
    let idb_expect = sl3_sigma_matrix(&[
        th.coords[0],
        cr(0.0),
        cr(1.0),
        th.coords[1],
        cr(0.0),
        cr(1.0),
    ]);
    upd(&mut worst, idb.pt.g.dist(&idb_expect) / idb_expect.max_abs().max(1.0));
    // composable partner: p1' = p1/t2, p2' = p2·t1', with free q'
    let (q1p, mut t1p) = loop {
        let qq = crate::weyl::annulus(rng);
        let w = cr(1.0) - (p1 / t2) * qq;
        if w.norm() > 0.05 {
            break (qq, (cr(1.0) / w).sqrt());
        }
    };
    if rng.gen_bool(0.5) {
        t1p = -t1p;
    }
    let p2p = p2 * t1p;
    let (q2p, mut t2p) = loop {
        let qq = crate::weyl::annulus(rng);
        let w = cr(1.0) - p2p * qq;
        if w.norm() > 0.05 {
            break (qq, (cr(1.0) / w).sqrt());
        }
    };
    if rng.gen_bool(0.5) {
        t2p = -t2p;
    }
    let cp = [p1 / t2, q1p, t1p, p2p, q2p, t2p];
    let h = GroupoidElement::from_matrix(sl3_sigma_matrix(&cp), &v, &rep, tol)?;
    let m = gpd_mul(&g, &h, tol)?;
    let m_expect = sl3_sigma_matrix(&[
        p1,
        q1p / t2 + q1 / (t1p * t1p),
        t1 * t1p,
        p2p,
        q2p + q2 / (t1p * t2p * t2p),
        t2 * t2p,
    ]);
    upd(&mut worst, m.pt.g.dist(&m_expect) / m_expect.max_abs().max(1.0));
    Ok(worst)
}

/// Deviation of the closed form Π(v̄) = −Σ_{α>0, v⁻¹α<0} E_{−α} ∧ E_α
/// (valid for every representative, since the r-matrix is torus-invariant).
pub fn pist_at_rep_dev(v: &WeylElement, rep: &WeylRep, r: &RMatrix) -> Result<f64> {
    let n = v.n();
    let got = pist_coeffs(&rep.matrix, r)?;
    let d = crate::poisson::sl_dim(n);
    let mut expect = CMat::zeros(d, d);
    let vinv = v.inverse();
    for i in 0..n {
        for j in i + 1..n {
            // positive root (i, j); inverted iff v⁻¹(i) > v⁻¹(j)
            if vinv.apply(i) > vinv.apply(j) {
                let lo = crate::poisson::basis_index(n, j, i);
                let hi = crate::poisson::basis_index(n, i, j);
                expect[(lo, hi)] = cr(-2.0);
                expect[(hi, lo)] = cr(2.0);
            }
        }
    }
    Ok(got.dist(&expect) / expect.max_abs().max(1.0))
}

/// Graph-coisotropy residual: given the tangent vectors of a graph inside a
/// product of three charts carrying bivectors (Π1, Π2, −Π3), every conormal
/// covector must map back into the tangent space under the sharp map.
/// Returns the worst projection residual.
pub fn graph_coisotropy_dev(tangents: &[Vec<C64>], pis: [&CMat; 3], tol: &Tolerance) -> f64 {
    let dims: [usize; 3] = [pis[0].rows(), pis[1].rows(), pis[2].rows()];
    let total: usize = dims.iter().sum();
    let rows = tangents.len();
    let a = CMat::from_fn(rows, total, |i, j| tangents[i][j]);
    let conormals = null_space(&a, tol);
    let mut worst: f64 = 0.0;
    for alpha in &conormals {
        let mut w = vec![cr(0.0); total];
        let mut off = 0;
        for (b, pi) in pis.iter().enumerate() {
            let sign = if b == 2 { -1.0 } else { 1.0 };
            let dim = dims[b];
            for x in 0..dim {
                let mut acc = cr(0.0);
                for y in 0..dim {
                    acc += pi[(y, x)] * alpha[off + y];
                }
                w[off + x] = cr(sign) * acc;
            }
            off += dim;
        }
        let wnorm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if wnorm < 1e-12 {
            continue;
        }
        worst = worst.max(projection_residual(tangents, &w, 1e-12));
    }
    worst
}

/// Bracket matrix of the (z, a, b) chart coordinates at a chart point.
pub fn sl2_cell_pi(g: &CMat, r: &RMatrix) -> Result<CMat> {
    let basis = sl_basis(2);
    let frame: Vec<CMat> = basis.iter().map(|x| x.mul(g)).collect();
    let pi = pist_coeffs(g, r)?;
    bracket_matrix(g, &frame, &pi, |jets| {
        let (z, a, b) = sl2_cell_coords(jets);
        Ok(vec![z, a, b])
    })
}

fn param_jets(params: &[C64]) -> Vec<Jet> {
    let k = params.len();
    params
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let d = (0..k).map(|s| if s == i { cr(1.0) } else { cr(0.0) }).collect();
            Jet::seeded(*v, d, false)
        })
        .collect()
}

/// Full conormal coisotropy check of the multiplication graph of the SL(2)
/// groupoid in the (z, a, b) chart: the graph of μ inside the triple
/// product with bivector π × π × (−π).
pub fn sl2_mul_graph_dev(rng: &mut impl Rng, r: &RMatrix, tol: &Tolerance) -> Result<f64> {
    // parameters: (z, a, b) of the first factor, (a2, b2) of the second
    let (z, a, b) = loop {
        let z = crate::weyl::annulus(rng);
        let a = crate::weyl::annulus(rng);
        let b = crate::weyl::annulus(rng);
        if (cr(1.0) - a * b * z).norm() > 0.05 {
            break (z, a, b);
        }
    };
    let (a2, b2) = (crate::weyl::annulus(rng), crate::weyl::annulus(rng));
    let jp = param_jets(&[z, a, b, a2, b2]);
    let one = Jet::constant(cr(1.0));
    // first factor; second factor with source forced to τ of the first
    let g1 = sl2_cell_matrix(jp[0].clone(), jp[1].clone(), jp[2].clone());
    let chi = jp[1].clone() * jp[1].clone()
        / (one.clone() - jp[1].clone() * jp[2].clone() * jp[0].clone());
    let z2 = chi * jp[0].clone();
    let g2 = sl2_cell_matrix(z2, jp[3].clone(), jp[4].clone());
    // μ = g1 · (B-factor of g2) = g1 · [[a2, b2],[0, 1/a2]]
    let bfac = Mat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => jp[3].clone(),
        (0, 1) => jp[4].clone(),
        (1, 1) => one.clone() / jp[3].clone(),
        _ => Jet::constant(cr(0.0)),
    });
    let g12 = g1.mul(&bfac);
    // chart coordinates of the triple
    let mut coords: Vec<Jet> = Vec::with_capacity(9);
    for m in [&g1, &g2, &g12] {
        let (cz, ca, cb) = sl2_cell_coords(m);
        coords.extend([cz, ca, cb]);
    }
    let tangents: Vec<Vec<C64>> = (0..5)
        .map(|k| coords.iter().map(|c| c.d_or_zero(k)).collect())
        .collect();
    let p1 = sl2_cell_pi(&g1.value_mat(), r)?;
    let p2 = sl2_cell_pi(&g2.value_mat(), r)?;
    let p3 = sl2_cell_pi(&g12.value_mat(), r)?;
    Ok(graph_coisotropy_dev(&tangents, [&p1, &p2, &p3], tol))
}

/// Same full conormal check for the graph of the left action of G^{s̄,s̄}
/// on G^{s,s}: {(γ, x, γ▷x) : τ(γ) = ϖ(x)}.
pub fn sl2_action_graph_dev(rng: &mut impl Rng, r: &RMatrix, tol: &Tolerance) -> Result<f64> {
    let (z, a, b) = loop {
        let z = crate::weyl::annulus(rng);
        let a = crate::weyl::annulus(rng);
        let b = crate::weyl::annulus(rng);
        if (cr(1.0) - a * b * z).norm() > 0.05 {
            break (z, a, b);
        }
    };
    let (a2, b2) = (crate::weyl::annulus(rng), crate::weyl::annulus(rng));
    let jp = param_jets(&[z, a, b, a2, b2]);
    let one = Jet::constant(cr(1.0));
    let gamma = sl2_cell_matrix(jp[0].clone(), jp[1].clone(), jp[2].clone());
    let w = one.clone() - jp[1].clone() * jp[2].clone() * jp[0].clone();
    let chi = jp[1].clone() * jp[1].clone() / w.clone();
    // moment matching: ϖ(x) = τ(γ)
    let zx = chi * jp[0].clone();
    let x = sl2_cell_matrix(zx, jp[3].clone(), jp[4].clone());
    // γ ▷ x = b_-(γ) · x with b_-(z,a,b) = [[(1−abz)/a, 0],[−b, a/(1−abz)]]
    let bminus = Mat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => w.clone() / jp[1].clone(),
        (1, 0) => -jp[2].clone(),
        (1, 1) => jp[1].clone() / w.clone(),
        _ => Jet::constant(cr(0.0)),
    });
    let gx = bminus.mul(&x);
    let mut coords: Vec<Jet> = Vec::with_capacity(9);
    for m in [&gamma, &x, &gx] {
        let (cz, ca, cb) = sl2_cell_coords(m);
        coords.extend([cz, ca, cb]);
    }
    let tangents: Vec<Vec<C64>> = (0..5)
        .map(|k| coords.iter().map(|c| c.d_or_zero(k)).collect())
        .collect();
    let p1 = sl2_cell_pi(&gamma.value_mat(), r)?;
    let p2 = sl2_cell_pi(&x.value_mat(), r)?;
    let p3 = sl2_cell_pi(&gx.value_mat(), r)?;
    Ok(graph_coisotropy_dev(&tangents, [&p1, &p2, &p3], tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn sigma_chart_roundtrip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(401);
        for _ in 0..10 {
            let c = sl3_sigma_sample(&mut rng);
            let m = sl3_sigma_matrix(&c);
            assert!((m.det() - cr(1.0)).norm() < 1e-10);
            let back = sl3_sigma_coords(&m);
            for (x, y) in c.iter().zip(back.iter()) {
                assert!((x - y).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn golden_tables_hold() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(403);
        let tol = Tolerance::default();
        let r2 = RMatrix::standard(2);
        for _ in 0..10 {
            assert!(sl2_groupoid_table_dev(&mut rng, &tol).unwrap() < 1e-9);
            assert!(sl3_groupoid_table_dev(&mut rng, &tol).unwrap() < 1e-8);
            let (p, q, t) = sl2_leaf_sample(&mut rng);
            assert!(sl2_leaf_bracket_dev(p, q, t, &r2).unwrap() < 1e-9);
            let (z, a, b) = (
                crate::weyl::annulus(&mut rng),
                crate::weyl::annulus(&mut rng),
                crate::weyl::annulus(&mut rng),
            );
            if (cr(1.0) - a * b * z).norm() > 0.05 {
                assert!(sl2_cell_bracket_dev(z, a, b, &r2).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn pist_rep_formula_all_small_v() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(407);
        for n in 2..=3 {
            let r = RMatrix::standard(n);
            for v in WeylElement::all(n) {
                let rep = WeylRep::canonical(&v);
                assert!(pist_at_rep_dev(&v, &rep, &r).unwrap() < 1e-10);
                // holds for torus-twisted representatives too
                let tw = crate::weyl::TorusElement::random(n, &mut rng);
                let rep2 = WeylRep::twisted(&v, &tw);
                assert!(pist_at_rep_dev(&v, &rep2, &r).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn sl2_full_graph_coisotropy() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(409);
        let tol = Tolerance::default();
        let r = RMatrix::standard(2);
        for _ in 0..10 {
            let d1 = sl2_mul_graph_dev(&mut rng, &r, &tol).unwrap();
            assert!(d1 < 1e-7, "multiplication graph not coisotropic: {}", d1);
            let d2 = sl2_action_graph_dev(&mut rng, &r, &tol).unwrap();
            assert!(d2 < 1e-7, "action graph not coisotropic: {}", d2);
        }
    }
}
