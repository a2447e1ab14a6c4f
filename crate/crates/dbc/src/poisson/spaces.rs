//! Charts and frames for the Poisson manifolds in play, and the generic
//! pointwise verifier for (anti-)Poisson maps.
//!
//! Every space provides a tangent frame at a point, the bivector matrix in
//! that frame, and its canonical coordinate observables as jet functions.
//! A map φ: X → Y is checked by comparing the bracket matrix of the target
//! coordinates pulled back through φ (computed with the source bivector)
//! against the target bivector at the image — one code path serves every
//! structural claim.

use super::rmatrix::{pist_coeffs, sl_basis, RMatrix};
use crate::cells::{
    chart_matrix_t, coset_coords_jet, flag_coords_jet, left_c_factor, peel_coords, FlagPoint,
};
use crate::error::{DbcError, Result};
use crate::num::{const_matrix, cr, jet_matrix, CMat, Jet, Mat, Tolerance, C64};
use crate::weyl::{WeylElement, WeylRep};

/// A Poisson manifold presented through a chart/frame at each point.
pub trait PoissonSpace {
    /// Tangent frame at p: matrices seeding directional derivatives.
    fn frame(&self, p: &CMat) -> Result<Vec<CMat>>;
    /// Bivector matrix in that frame at p.
    fn pi_frame(&self, p: &CMat) -> Result<CMat>;
    /// Canonical coordinate observables, evaluated on a jet-valued point.
    fn coords(&self, p: &Mat<Jet>) -> Result<Vec<Jet>>;

    /// Bracket matrix of the canonical coordinates at p.
    fn pi_coords(&self, p: &CMat) -> Result<CMat> {
        let frame = self.frame(p)?;
        let pi = self.pi_frame(p)?;
        bracket_matrix(p, &frame, &pi, |jets| self.coords(jets))
    }
}

/// Jacobian of an observable family along a frame, as a rows×|frame| matrix.
pub fn observable_jacobian(
    p: &CMat,
    frame: &[CMat],
    obs: impl Fn(&Mat<Jet>) -> Result<Vec<Jet>>,
) -> Result<CMat> {
    let jets = jet_matrix(p, frame, false);
    let vals = obs(&jets)?;
    let rows = vals.len();
    Ok(CMat::from_fn(rows, frame.len(), |i, a| {
        vals[i].d.get(a).copied().unwrap_or(cr(0.0))
    }))
}

/// Bracket matrix of an observable family: J · Π · Jᵀ with J the family's
/// Jacobian along the frame carrying Π.
pub fn bracket_matrix(
    p: &CMat,
    frame: &[CMat],
    pi: &CMat,
    obs: impl Fn(&Mat<Jet>) -> Result<Vec<Jet>>,
) -> Result<CMat> {
    let j = observable_jacobian(p, frame, obs)?;
    Ok(j.mul(pi).mul(&j.transpose()))
}

/// The group SL(n) with the right-trivialized frame X_a·g over the sl(n)
/// basis and Π(g) = (Ad_g⊗Ad_g)r − r; coordinates are the matrix entries.
pub struct GroupSpace {
    pub n: usize,
    pub r: RMatrix,
    pub tol: Tolerance,
}

impl GroupSpace {
    pub fn new(n: usize, tol: Tolerance) -> Self {
        GroupSpace {
            n,
            r: RMatrix::standard(n),
            tol,
        }
    }
}

impl PoissonSpace for GroupSpace {
    fn frame(&self, p: &CMat) -> Result<Vec<CMat>> {
        Ok(sl_basis(self.n).iter().map(|x| x.mul(p)).collect())
    }

    fn pi_frame(&self, p: &CMat) -> Result<CMat> {
        pist_coeffs(p, &self.r)
    }

    fn coords(&self, p: &Mat<Jet>) -> Result<Vec<Jet>> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(p[(i, j)].clone());
            }
        }
        Ok(out)
    }
}

/// A Bruhat cell BuB/B in its factored chart. Points are any matrices whose
/// flag lies in the cell; the frame is taken at the canonical slice
/// representative.
pub struct FlagCellSpace {
    pub cell: WeylElement,
    pub rep: WeylRep,
    pub tol: Tolerance,
}

impl FlagCellSpace {
    pub fn new(cell: WeylElement, rep: WeylRep, tol: Tolerance) -> Self {
        FlagCellSpace { cell, rep, tol }
    }

    /// Canonical representative matrix of the flag of p.
    pub fn canonical_rep(&self, p: &CMat) -> Result<CMat> {
        let (c, _) = left_c_factor(p, &self.rep, &self.tol)?;
        Ok(c)
    }

    /// Chart partial-derivative matrices at given coordinates.
    pub fn chart_partials(&self, coords: &[C64]) -> Vec<CMat> {
        let l = coords.len();
        let seeds: Vec<Vec<C64>> = (0..l)
            .map(|k| (0..l).map(|i| if i == k { cr(1.0) } else { cr(0.0) }).collect())
            .collect();
        let jets: Vec<Jet> = coords
            .iter()
            .enumerate()
            .map(|(i, z)| Jet::seeded(*z, seeds.iter().map(|s| s[i]).collect(), false))
            .collect();
        let m = chart_matrix_t(&self.cell, &self.rep, &jets);
        (0..l)
            .map(|k| CMat::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].d_or_zero(k)))
            .collect()
    }
}

impl PoissonSpace for FlagCellSpace {
    fn frame(&self, p: &CMat) -> Result<Vec<CMat>> {
        // frame only makes sense at the canonical representative
        let c = self.canonical_rep(p)?;
        let coords = peel_coords(&c, &self.cell, &self.rep)?;
        Ok(self.chart_partials(&coords))
    }

    fn pi_frame(&self, p: &CMat) -> Result<CMat> {
        // pushforward of the group bivector through the chart coordinates,
        // evaluated at the canonical representative
        let c = self.canonical_rep(p)?;
        let g = GroupSpace::new(self.cell.n(), self.tol);
        let frame = g.frame(&c)?;
        let pi = g.pi_frame(&c)?;
        bracket_matrix(&c, &frame, &pi, |jets| self.coords(jets))
    }

    fn coords(&self, p: &Mat<Jet>) -> Result<Vec<Jet>> {
        flag_coords_jet(p, &self.cell, &self.rep, &self.tol)
    }

    fn pi_coords(&self, p: &CMat) -> Result<CMat> {
        self.pi_frame(p)
    }
}

/// A coset cell B_-\B_-vB_- in the matching chart on the right slice
/// factor; π_{-1} is the pushforward of Π through the coset coordinates.
pub struct CosetCellSpace {
    pub cell: WeylElement,
    pub rep: WeylRep,
    pub tol: Tolerance,
}

impl CosetCellSpace {
    pub fn new(cell: WeylElement, rep: WeylRep, tol: Tolerance) -> Self {
        CosetCellSpace { cell, rep, tol }
    }

    fn canonical_rep(&self, p: &CMat) -> Result<CMat> {
        let (_, c) = crate::cells::right_c_factor(p, &self.rep, &self.tol)?;
        Ok(c)
    }
}

impl PoissonSpace for CosetCellSpace {
    fn frame(&self, p: &CMat) -> Result<Vec<CMat>> {
        let c = self.canonical_rep(p)?;
        let coords = peel_coords(&c, &self.cell, &self.rep)?;
        let flag = FlagCellSpace::new(self.cell.clone(), self.rep.clone(), self.tol);
        Ok(flag.chart_partials(&coords))
    }

    fn pi_frame(&self, p: &CMat) -> Result<CMat> {
        let c = self.canonical_rep(p)?;
        let g = GroupSpace::new(self.cell.n(), self.tol);
        let frame = g.frame(&c)?;
        let pi = g.pi_frame(&c)?;
        bracket_matrix(&c, &frame, &pi, |jets| self.coords(jets))
    }

    fn coords(&self, p: &Mat<Jet>) -> Result<Vec<Jet>> {
        coset_coords_jet(p, &self.cell, &self.rep, &self.tol)
    }

    fn pi_coords(&self, p: &CMat) -> Result<CMat> {
        self.pi_frame(p)
    }
}

/// B_- with the entries chart: strictly-lower entries row by row, then the
/// first n−1 diagonal entries (the last is forced by det = 1).
pub struct BMinusSpace {
    pub n: usize,
    pub r: RMatrix,
    pub tol: Tolerance,
}

impl BMinusSpace {
    pub fn new(n: usize, tol: Tolerance) -> Self {
        BMinusSpace {
            n,
            r: RMatrix::standard(n),
            tol,
        }
    }

    pub fn dim(&self) -> usize {
        self.n * (self.n - 1) / 2 + self.n - 1
    }

    fn chart_positions(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..i {
                out.push((i, j));
            }
        }
        for k in 0..n - 1 {
            out.push((k, k));
        }
        out
    }
}

impl PoissonSpace for BMinusSpace {
    fn frame(&self, p: &CMat) -> Result<Vec<CMat>> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..i {
                out.push(CMat::from_fn(n, n, |r, c| {
                    if (r, c) == (i, j) {
                        cr(1.0)
                    } else {
                        cr(0.0)
                    }
                }));
            }
        }
        for k in 0..n - 1 {
            // moving d_k adjusts d_{n-1} to keep det = 1
            let dk = p[(k, k)];
            let dn = p[(n - 1, n - 1)];
            out.push(CMat::from_fn(n, n, |r, c| {
                if (r, c) == (k, k) {
                    cr(1.0)
                } else if (r, c) == (n - 1, n - 1) {
                    -dn / dk
                } else {
                    cr(0.0)
                }
            }));
        }
        Ok(out)
    }

    fn pi_frame(&self, p: &CMat) -> Result<CMat> {
        // pushforward of Π(b) (tangent to B_-) through the entries chart
        let g = GroupSpace::new(self.n, self.tol);
        let frame = g.frame(p)?;
        let pi = g.pi_frame(p)?;
        bracket_matrix(p, &frame, &pi, |jets| self.coords(jets))
    }

    fn coords(&self, p: &Mat<Jet>) -> Result<Vec<Jet>> {
        Ok(self
            .chart_positions()
            .into_iter()
            .map(|(i, j)| p[(i, j)].clone())
            .collect())
    }

    fn pi_coords(&self, p: &CMat) -> Result<CMat> {
        self.pi_frame(p)
    }
}

/// The mixed product Poisson manifold (G/B) × B_- carrying the action
/// groupoid. Points are encoded as 2n×2n block-diagonal matrices
/// diag(flag representative, b_-); the bivector is
/// (π_1, 0) + (0, π_st) − Σ_i (σ(ξ_i), 0) ∧ (0, x_i^R)
/// over the canonical dual pair of bases of b_- and b.
pub struct ProductSpace {
    pub flag: FlagCellSpace,
    pub bminus: BMinusSpace,
}

impl ProductSpace {
    pub fn new(cell: WeylElement, rep: WeylRep, tol: Tolerance) -> Self {
        let n = cell.n();
        ProductSpace {
            flag: FlagCellSpace::new(cell, rep, tol),
            bminus: BMinusSpace::new(n, tol),
        }
    }

    pub fn n(&self) -> usize {
        self.bminus.n
    }

    /// Encode a (flag representative, b_-) pair as a block point.
    pub fn encode(&self, flag_rep: &CMat, b_minus: &CMat) -> CMat {
        let n = self.n();
        CMat::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j < n {
                flag_rep[(i, j)]
            } else if i >= n && j >= n {
                b_minus[(i - n, j - n)]
            } else {
                cr(0.0)
            }
        })
    }

    pub fn decode(&self, p: &CMat) -> (CMat, CMat) {
        let n = self.n();
        (p.block(0, n, 0, n), p.block(n, 2 * n, n, 2 * n))
    }

    fn decode_jets(&self, p: &Mat<Jet>) -> (Mat<Jet>, Mat<Jet>) {
        let n = self.n();
        (p.block(0, n, 0, n), p.block(n, 2 * n, n, 2 * n))
    }

    fn embed_upper(&self, m: &CMat) -> CMat {
        let n = self.n();
        CMat::from_fn(2 * n, 2 * n, |i, j| {
            if i < n && j < n {
                m[(i, j)]
            } else {
                cr(0.0)
            }
        })
    }

    fn embed_lower(&self, m: &CMat) -> CMat {
        let n = self.n();
        CMat::from_fn(2 * n, 2 * n, |i, j| {
            if i >= n && j >= n {
                m[(i - n, j - n)]
            } else {
                cr(0.0)
            }
        })
    }

    /// The vector field σ(ξ) on the flag cell, in chart components at the
    /// given flag point: σ(ξ)(c·B) = d/dt|_0 (exp(−tξ)·c)·B.
    pub fn sigma_components(&self, c: &CMat, xi: &CMat) -> Result<Vec<C64>> {
        let seed = xi.mul(c).neg();
        let jets = jet_matrix(c, &[seed], false);
        let coords = self.flag.coords(&jets)?;
        Ok(coords.iter().map(|z| z.d_or_zero(0)).collect())
    }

    /// Right-invariant field x^R on B_- in entry-chart components at b.
    pub fn xr_components(&self, b: &CMat, x: &CMat) -> Result<Vec<C64>> {
        let seed = x.mul(b);
        let jets = jet_matrix(b, &[seed], false);
        let coords = self.bminus.coords(&jets)?;
        Ok(coords.iter().map(|z| z.d_or_zero(0)).collect())
    }
}

impl PoissonSpace for ProductSpace {
    fn frame(&self, p: &CMat) -> Result<Vec<CMat>> {
        let (craw, b) = self.decode(p);
        // chart partials at the canonical slice representative, transported
        // to the actual representative in the block by the B-factor
        let c = self.flag.canonical_rep(&craw)?;
        let bfac = c.inverse()?.mul(&craw);
        let coords = peel_coords(&c, &self.flag.cell, &self.flag.rep)?;
        let mut out: Vec<CMat> = self
            .flag
            .chart_partials(&coords)
            .iter()
            .map(|m| self.embed_upper(&m.mul(&bfac)))
            .collect();
        out.extend(self.bminus.frame(&b)?.iter().map(|m| self.embed_lower(m)));
        Ok(out)
    }

    fn pi_frame(&self, p: &CMat) -> Result<CMat> {
        let (craw, b) = self.decode(p);
        let c = self.flag.canonical_rep(&craw)?;
        let l = self.flag.cell.length();
        let m = self.bminus.dim();
        let pi1 = self.flag.pi_frame(&c)?;
        let pib = self.bminus.pi_frame(&b)?;
        let mut pi = CMat::zeros(l + m, l + m);
        for i in 0..l {
            for j in 0..l {
                pi[(i, j)] = pi1[(i, j)];
            }
        }
        for i in 0..m {
            for j in 0..m {
                pi[(l + i, l + j)] = pib[(i, j)];
            }
        }
        // mixed term over the canonical dual pair (x_i ∈ b_-, ξ_i ∈ b)
        for (x, xi) in &self.bminus.r.pairs {
            let s = self.sigma_components(&c, xi)?;
            let w = self.xr_components(&b, x)?;
            for k in 0..l {
                for mu in 0..m {
                    pi[(k, l + mu)] -= s[k] * w[mu];
                    pi[(l + mu, k)] += s[k] * w[mu];
                }
            }
        }
        Ok(pi)
    }

    fn coords(&self, p: &Mat<Jet>) -> Result<Vec<Jet>> {
        let (c, b) = self.decode_jets(p);
        let mut out = self.flag.coords(&c)?;
        out.extend(self.bminus.coords(&b)?);
        Ok(out)
    }

    fn pi_coords(&self, p: &CMat) -> Result<CMat> {
        // the frame is dual to the chart coordinates, so the bracket matrix
        // of the coordinates is the frame bivector itself
        self.pi_frame(p)
    }
}

impl ProductSpace {
    /// Target-map coordinates τ(y, b_-) = (b_-⁻¹·y)·B in the flag chart of
    /// the same cell, as jet observables on block points.
    pub fn tau_coords(&self, p: &Mat<Jet>) -> Result<Vec<Jet>> {
        let (c, b) = self.decode_jets(p);
        let moved = b.inverse()?.mul(&c);
        self.flag.coords(&moved)
    }
}

/// Outcome of a pointwise Poisson-map verification.
#[derive(Clone, Debug)]
pub struct MapCheck {
    pub samples: usize,
    pub max_dev: f64,
}

/// Verify that φ pushes the source bivector to `sign` times the target
/// bivector, comparing bracket matrices of the target coordinates at each
/// sample. `sign` is +1 for Poisson maps and −1 for anti-Poisson maps.
pub fn poisson_map_check(
    src: &dyn PoissonSpace,
    dst: &dyn PoissonSpace,
    phi: impl Fn(&Mat<Jet>) -> Result<Mat<Jet>>,
    pts: &[CMat],
    sign: f64,
) -> Result<MapCheck> {
    let mut max_dev: f64 = 0.0;
    for p in pts {
        let frame = src.frame(p)?;
        let pi_src = src.pi_frame(p)?;
        let jets = jet_matrix(p, &frame, false);
        let image_jets = phi(&jets)?;
        let j = {
            let vals = dst.coords(&image_jets)?;
            CMat::from_fn(vals.len(), frame.len(), |i, a| vals[i].d_or_zero(a))
        };
        let lhs = j.mul(&pi_src).mul(&j.transpose());
        let image = phi(&const_matrix(p))?.value_mat();
        let rhs = dst.pi_coords(&image)?.scale(cr(sign));
        let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
        max_dev = max_dev.max(lhs.dist(&rhs) / scale);
    }
    Ok(MapCheck {
        samples: pts.len(),
        max_dev,
    })
}

/// Identity observables sanity check: deviation of {coords, coords} under
/// the identity map is exactly zero.
pub fn identity_map_check(space: &dyn PoissonSpace, pts: &[CMat]) -> Result<MapCheck> {
    poisson_map_check(space, space, |jets| Ok(jets.clone()), pts, 1.0)
}

/// Antisymmetry deviation ‖Π + Πᵀ‖ / max(‖Π‖, floor) of a bivector matrix.
pub fn antisymmetry_dev(pi: &CMat) -> f64 {
    pi.add(&pi.transpose()).max_abs() / pi.max_abs().max(1e-30)
}

/// Convenience: evaluate π_1 on a flag cell at a flag point through the
/// independent route −σ(r): π_1 = −Σ_k σ(L_k) ⊗ σ(R_k).
pub fn pi1_via_sigma(space: &ProductSpace, fp: &FlagPoint) -> Result<CMat> {
    let c = fp.matrix();
    let l = fp.coords.len();
    let mut pi = CMat::zeros(l, l);
    for (lm, rm) in &space.bminus.r.pairs {
        let sl = space.sigma_components(&c, lm)?;
        let sr = space.sigma_components(&c, rm)?;
        for i in 0..l {
            for j in 0..l {
                pi[(i, j)] -= sl[i] * sr[j];
            }
        }
    }
    Ok(pi)
}

/// π_1 on a flag cell through the pushforward route, at a flag point.
pub fn pi1_via_pushforward(flag: &FlagCellSpace, fp: &FlagPoint) -> Result<CMat> {
    flag.pi_frame(&fp.matrix())
}

/// Bracket of two scalar observables at g, via the coefficient matrix of
/// the right-trivialized bivector.
pub fn bracket_eval(
    f1: impl Fn(&Mat<Jet>) -> Result<Jet>,
    f2: impl Fn(&Mat<Jet>) -> Result<Jet>,
    g: &CMat,
    r: &RMatrix,
) -> Result<C64> {
    let basis = sl_basis(r.n);
    let frame: Vec<CMat> = basis.iter().map(|x| x.mul(g)).collect();
    let jets = jet_matrix(g, &frame, false);
    let a = f1(&jets)?;
    let b = f2(&jets)?;
    let pi = pist_coeffs(g, r)?;
    let d = basis.len();
    let mut out = cr(0.0);
    for i in 0..d {
        for j in 0..d {
            out += pi[(i, j)] * a.d_or_zero(i) * b.d_or_zero(j);
        }
    }
    Ok(out)
}

/// Independent route for the same bracket: direct contraction of the left-
/// and right-invariant derivative pairs,
/// {f1,f2} = Σ_k [L_k^L f1 · R_k^L f2 − L_k^R f1 · R_k^R f2].
pub fn bracket_eval_direct(
    f1: impl Fn(&Mat<Jet>) -> Result<Jet>,
    f2: impl Fn(&Mat<Jet>) -> Result<Jet>,
    g: &CMat,
    r: &RMatrix,
) -> Result<C64> {
    let mut seeds = Vec::with_capacity(2 * r.pairs.len());
    for (l, rt) in &r.pairs {
        seeds.push(g.mul(l)); // left-invariant: g·x
        seeds.push(g.mul(rt));
    }
    for (l, rt) in &r.pairs {
        seeds.push(l.mul(g)); // right-invariant: x·g
        seeds.push(rt.mul(g));
    }
    let jets = jet_matrix(g, &seeds, false);
    let a = f1(&jets)?;
    let b = f2(&jets)?;
    let k = r.pairs.len();
    let mut out = cr(0.0);
    for i in 0..k {
        out += a.d_or_zero(2 * i) * b.d_or_zero(2 * i + 1);
        out -= a.d_or_zero(2 * k + 2 * i) * b.d_or_zero(2 * k + 2 * i + 1);
    }
    Ok(out)
}

/// Entry observable g ↦ g[i,j] (0-based).
pub fn entry_obs(i: usize, j: usize) -> impl Fn(&Mat<Jet>) -> Result<Jet> {
    move |m: &Mat<Jet>| Ok(m[(i, j)].clone())
}

/// Leading principal k-minor observable.
pub fn minor_obs(k: usize) -> impl Fn(&Mat<Jet>) -> Result<Jet> {
    move |m: &Mat<Jet>| Ok(m.leading_minor(k))
}

/// Reject observables outside the matrix dimension early.
pub fn check_entry_bounds(n: usize, i: usize, j: usize) -> Result<()> {
    if i >= n || j >= n {
        return Err(DbcError::Schema(format!(
            "entry ({}, {}) out of bounds for n = {}",
            i + 1,
            j + 1,
            n
        )));
    }
    Ok(())
}
