//! Bruhat cell detection and the unique factorizations through the slices
//! C_v̄ = Nv̄ ∩ v̄N_-: every element of a double Bruhat cell G^{u,v} writes
//! uniquely as g = c·b (c ∈ C_ū, b ∈ B) and g = b_-·c′ (b_- ∈ B_-,
//! c′ ∈ C_v̄). Cell labels are read off submatrix rank patterns; flag-cell
//! charts use the factored form c = x_{k1}(z1)s̃_{k1} ··· x_{kl}(zl)s̃_{kl}.

use crate::error::{DbcError, Result};
use crate::num::{
    cond, cr, gaussian_decompose, rank_tol_scaled, CMat, Jet, Mat, Scalar, Tolerance, C64,
};
use crate::weyl::{annulus, simple_rep_matrix, TorusElement, WeylElement, WeylRep};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Lift a plain complex matrix into any scalar type (used to mix constant
/// representative matrices into jet computations).
pub fn lift<T: Scalar>(m: &CMat) -> Mat<T> {
    Mat::from_fn(m.rows(), m.cols(), |i, j| T::from_c64(m[(i, j)]))
}

fn elementary<T: Scalar>(n: usize, row: usize, col: usize, z: T) -> Mat<T> {
    let mut m = Mat::<T>::identity(n);
    m[(row, col)] = z;
    m
}

/// A point of a double Bruhat cell with its labels, the representatives in
/// force, and both cached factorizations.
#[derive(Clone, Debug)]
pub struct CellPoint {
    pub g: CMat,
    pub u: WeylElement,
    pub v: WeylElement,
    pub urep: WeylRep,
    pub vrep: WeylRep,
    /// g = c · b with c ∈ C_ū, b upper triangular.
    pub c: CMat,
    pub b: CMat,
    /// g = b_- · c′ with b_- lower triangular, c′ ∈ C_v̄.
    pub b_minus: CMat,
    pub c_prime: CMat,
}

/// A point of a Bruhat cell BuB/B in the flag variety, in the coordinates of
/// its cell chart: c(z) = t · x_{k1}(z1)s̃_{k1} ··· x_{kl}(zl)s̃_{kl} · B,
/// where (k1..kl) is the cell's reduced word, x_k(z) = I + z·e_{k,k+1}, and
/// t is the torus twist of the representative in force.
#[derive(Clone, Debug)]
pub struct FlagPoint {
    pub cell: WeylElement,
    pub rep: WeylRep,
    pub coords: Vec<C64>,
}

impl FlagPoint {
    pub fn approx_eq(&self, other: &FlagPoint, tol: f64) -> bool {
        if self.cell != other.cell {
            return false;
        }
        self.dist(other) <= tol * self.scale(other)
    }

    pub fn dist(&self, other: &FlagPoint) -> f64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn scale(&self, other: &FlagPoint) -> f64 {
        self.coords
            .iter()
            .chain(other.coords.iter())
            .map(|z| z.norm())
            .fold(1.0, f64::max)
    }

    /// The canonical C_v̄ representative matrix of this flag point.
    pub fn matrix(&self) -> CMat {
        let coords: Vec<C64> = self.coords.clone();
        chart_matrix_t(&self.cell, &self.rep, &coords)
    }
}

/// Chart parametrization: coords -> canonical representative in C_rep.
pub fn chart_matrix_t<T: Scalar>(cell: &WeylElement, rep: &WeylRep, coords: &[T]) -> Mat<T> {
    let n = cell.n();
    let word = cell.reduced_word();
    assert_eq!(word.len(), coords.len(), "coordinate count != cell length");
    let mut m = lift::<T>(&rep.torus_twist.matrix());
    for (k, z) in word.iter().zip(coords.iter()) {
        let x = elementary(n, k - 1, *k, z.clone());
        m = m.mul(&x).mul(&lift::<T>(&simple_rep_matrix(n, *k)));
    }
    m
}

/// Inverse of the chart: peel the factored form off a canonical slice
/// element. `c` must lie in C_rep for the given cell (up to tolerance);
/// works on jets, so chart coordinates are differentiable observables.
pub fn peel_coords<T: Scalar>(c: &Mat<T>, cell: &WeylElement, rep: &WeylRep) -> Result<Vec<T>> {
    let n = cell.n();
    // strip the torus twist so the peel runs against canonical generators
    let tinv = lift::<T>(&rep.torus_twist.inverse().matrix());
    let mut cur = tinv.mul(c);
    let mut w = cell.clone();
    let mut coords = Vec::with_capacity(cell.length());
    for k in cell.reduced_word() {
        let winv = w.inverse();
        let a = winv.apply(k - 1); // position of value k (0-based)
        let b = winv.apply(k); // position of value k+1
        let wrep = WeylRep::canonical(&w);
        let m = lift::<T>(&wrep.inv).mul(&cur);
        // direction matrix for the coefficient of z along e_{k-1,k}
        let ek_c = {
            let mut ekc = Mat::<T>::zeros(n, n);
            for j in 0..n {
                ekc[(k - 1, j)] = cur[(k, j)].clone();
            }
            lift::<T>(&wrep.inv).mul(&ekc)
        };
        let denom = ek_c[(a, b)].clone();
        if denom.modulus() < 1e-13 {
            return Err(DbcError::Factorization(format!(
                "degenerate peel denominator at letter {}",
                k
            )));
        }
        let z = m[(a, b)].clone() / denom;
        // remove the leading factor x_k(z)·s̃_k
        let strip = elementary(n, k - 1, k, -z.clone());
        let sk_inv = lift::<T>(&simple_rep_matrix(n, k).inverse().expect("unit"));
        cur = sk_inv.mul(&strip).mul(&cur);
        w = WeylElement::simple(n, k).compose(&w);
        coords.push(z);
    }
    Ok(coords)
}

/// Left factorization g = c·b through C_ū: c = ū·[ū⁻¹g]_-,
/// b = [ū⁻¹g]_0 [ū⁻¹g]_+. Fails with `BigCell` when g ∉ BuB (up to the
/// big-cell criterion).
pub fn left_c_factor<T: Scalar>(
    g: &Mat<T>,
    urep: &WeylRep,
    tol: &Tolerance,
) -> Result<(Mat<T>, Mat<T>)> {
    let m = lift::<T>(&urep.inv).mul(g);
    let (lower, diag, upper) = gaussian_decompose(&m, tol.tol_rank)?;
    let c = lift::<T>(&urep.matrix).mul(&lower);
    let b = diag.mul(&upper);
    Ok((c, b))
}

/// Right factorization g = b_-·c′ through C_v̄: b_- = [gv̄⁻¹]_-[gv̄⁻¹]_0,
/// c′ = [gv̄⁻¹]_+·v̄.
pub fn right_c_factor<T: Scalar>(
    g: &Mat<T>,
    vrep: &WeylRep,
    tol: &Tolerance,
) -> Result<(Mat<T>, Mat<T>)> {
    let m = g.mul(&lift::<T>(&vrep.inv));
    let (lower, diag, upper) = gaussian_decompose(&m, tol.tol_rank)?;
    let b_minus = lower.mul(&diag);
    let c = upper.mul(&lift::<T>(&vrep.matrix));
    Ok((b_minus, c))
}

/// Torus part [g]_0 of a big-cell element, as a torus element.
pub fn torus_part(g: &CMat, tol: &Tolerance) -> Result<TorusElement> {
    let (_, d, _) = gaussian_decompose(g, tol.tol_rank)?;
    Ok(TorusElement { diag: d.diagonal() })
}

fn rank_table(g: &CMat, tol: &Tolerance) -> Vec<Vec<usize>> {
    let n = g.n();
    let scale = g.max_abs().max(1e-300);
    // r[i][j] = rank of rows i.. , cols ..=j (0-based i, j), with the
    // convention r[n][_] meaning the empty block; rank cutoffs are floored
    // by the scale of the whole matrix
    let mut r = vec![vec![0usize; n]; n + 1];
    for i in 0..n {
        for j in 0..n {
            r[i][j] = rank_tol_scaled(&g.block(i, n, 0, j + 1), tol, scale);
        }
    }
    r
}

fn perm_from_rank_table(r: &[Vec<usize>], n: usize) -> Option<WeylElement> {
    let at = |i: usize, j: isize| -> isize {
        if i >= n || j < 0 {
            0
        } else {
            r[i][j as usize] as isize
        }
    };
    let mut oneline = vec![0usize; n];
    let mut seen = vec![false; n];
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            let d = at(i, j as isize) - at(i + 1, j as isize) - at(i, j as isize - 1)
                + at(i + 1, j as isize - 1);
            if d == 1 {
                if hit.is_some() {
                    return None;
                }
                hit = Some(i);
            } else if d != 0 {
                return None;
            }
        }
        let i = hit?;
        if seen[i] {
            return None;
        }
        seen[i] = true;
        oneline[j] = i + 1;
    }
    Some(WeylElement::from_oneline(&oneline))
}

fn detect_left_label(g: &CMat, tol: &Tolerance) -> Result<WeylElement> {
    let n = g.n();
    let r = rank_table(g, tol);
    let u = perm_from_rank_table(&r, n).ok_or(DbcError::RankAmbiguity { n })?;
    // validate the full table against the permutation's pattern
    for i in 1..=n {
        for j in 1..=n {
            let ru = (0..j).filter(|&k| u.apply(k) + 1 >= i).count();
            if r[i - 1][j - 1] != ru {
                return Err(DbcError::RankAmbiguity { n });
            }
        }
    }
    Ok(u)
}

/// Cell membership from rank patterns: u is the label of BuB (ranks of
/// lower-left submatrices), v the label of B_-vB_- (obtained by conjugating
/// with the longest element, which swaps the Borel pair, and reusing the
/// first criterion).
pub fn bruhat_cell_of(g: &CMat, tol: &Tolerance) -> Result<(WeylElement, WeylElement)> {
    let n = g.n();
    let u = detect_left_label(g, tol)?;
    let w0 = WeylElement::longest(n);
    let p0 = w0.perm_matrix();
    let gp = p0.mul(g).mul(&p0);
    let uprime = detect_left_label(&gp, tol)?;
    let v = w0.compose(&uprime).compose(&w0);
    Ok((u, v))
}

/// Positions (row, col), 0-based, of the free entries of ū⁻¹·c for c ∈ C_ū:
/// strictly lower pairs that are inversions of u.
pub fn lower_support(u: &WeylElement) -> Vec<(usize, usize)> {
    let n = u.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if u.apply(j) < u.apply(i) {
                out.push((j, i));
            }
        }
    }
    out
}

impl CellPoint {
    /// Build from a matrix and cell data, verifying determinant, the two
    /// factorizations, and the support pattern of the slice factor.
    pub fn with_reps(
        g: CMat,
        u: WeylElement,
        v: WeylElement,
        urep: WeylRep,
        vrep: WeylRep,
        tol: &Tolerance,
    ) -> Result<CellPoint> {
        let det = g.det();
        if (det - cr(1.0)).norm() > tol.tol_det * 100.0 {
            return Err(DbcError::Factorization(format!(
                "determinant {} is not 1",
                det
            )));
        }
        if !g.all_finite() {
            return Err(DbcError::Factorization("non-finite entries".into()));
        }
        let (c, b) = left_c_factor(&g, &urep, tol)?;
        let (b_minus, c_prime) = right_c_factor(&g, &vrep, tol)?;
        // structural support check: ū⁻¹c unit lower with support exactly on
        // inversion positions of u
        let m = urep.inv.mul(&c);
        let allowed = lower_support(&u);
        let scale = m.max_abs().max(1.0);
        for i in 0..g.n() {
            for j in 0..i {
                if !allowed.contains(&(i, j)) && m[(i, j)].norm() > 1e3 * tol.tol_eq * scale {
                    return Err(DbcError::Factorization(format!(
                        "slice factor has support outside the inversion pattern at ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(CellPoint {
            g,
            u,
            v,
            urep,
            vrep,
            c,
            b,
            b_minus,
            c_prime,
        })
    }

    /// Detect the cell of g and attach canonical representatives.
    pub fn detect(g: CMat, tol: &Tolerance) -> Result<CellPoint> {
        let (u, v) = bruhat_cell_of(&g, tol)?;
        let urep = WeylRep::canonical(&u);
        let vrep = WeylRep::canonical(&v);
        CellPoint::with_reps(g, u, v, urep, vrep, tol)
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// Flag of the left slice factor (the moment map ϖ to BuB/B).
    pub fn flag_left(&self) -> Result<FlagPoint> {
        let coords = peel_coords(&self.c, &self.u, &self.urep)?;
        Ok(FlagPoint {
            cell: self.u.clone(),
            rep: self.urep.clone(),
            coords,
        })
    }

    /// Flag of the right slice factor (the map ϖ^{u,v}_v̄ to BvB/B).
    pub fn flag_right(&self) -> Result<FlagPoint> {
        let coords = peel_coords(&self.c_prime, &self.v, &self.vrep)?;
        Ok(FlagPoint {
            cell: self.v.clone(),
            rep: self.vrep.clone(),
            coords,
        })
    }
}

/// Canonical flag point of g·B: detect the cell, factor, extract chart
/// coordinates.
pub fn flag_canonical(g: &CMat, tol: &Tolerance) -> Result<FlagPoint> {
    let u = detect_left_label(g, tol)?;
    let rep = WeylRep::canonical(&u);
    flag_in_cell(g, &u, &rep, tol)
}

/// Flag point of g·B when the cell label is already known.
pub fn flag_in_cell(
    g: &CMat,
    u: &WeylElement,
    rep: &WeylRep,
    tol: &Tolerance,
) -> Result<FlagPoint> {
    let (c, _) = left_c_factor(g, rep, tol)?;
    let coords = peel_coords(&c, u, rep)?;
    Ok(FlagPoint {
        cell: u.clone(),
        rep: rep.clone(),
        coords,
    })
}

/// Jet-valued flag coordinates of g·B within a known cell: the AD-safe
/// observable used for all pushforward Jacobians.
pub fn flag_coords_jet(
    g: &Mat<Jet>,
    u: &WeylElement,
    rep: &WeylRep,
    tol: &Tolerance,
) -> Result<Vec<Jet>> {
    let (c, _) = left_c_factor(g, rep, tol)?;
    peel_coords(&c, u, rep)
}

const SAMPLE_RETRIES: usize = 20;
const MAX_CONDITION: f64 = 1e4;

/// Seeded sample of G^{u,v}: a random torus element times lower elementary
/// factors for the letters of u and upper elementary factors for the letters
/// of v, with parameters from the annulus 0.3 <= |t| <= 3. Every sample is
/// validated by the rank-pattern criterion and re-drawn on failure.
pub fn sample_double_cell(
    u: &WeylElement,
    v: &WeylElement,
    rng_seed: u64,
    tol: &Tolerance,
) -> Result<CellPoint> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    sample_double_cell_rng(u, v, &mut rng, tol)
}

pub fn sample_double_cell_rng(
    u: &WeylElement,
    v: &WeylElement,
    rng: &mut impl Rng,
    tol: &Tolerance,
) -> Result<CellPoint> {
    let n = u.n();
    assert_eq!(n, v.n());
    for _ in 0..SAMPLE_RETRIES {
        let t = TorusElement::random(n, rng);
        let mut g = t.matrix();
        for k in u.reduced_word() {
            g = g.mul(&elementary(n, k, k - 1, annulus(rng)));
        }
        for k in v.reduced_word() {
            g = g.mul(&elementary(n, k - 1, k, annulus(rng)));
        }
        if !g.all_finite() || cond(&g) > MAX_CONDITION {
            continue;
        }
        match bruhat_cell_of(&g, tol) {
            Ok((du, dv)) if &du == u && &dv == v => {}
            _ => continue,
        }
        let urep = WeylRep::canonical(u);
        let vrep = WeylRep::canonical(v);
        if let Ok(p) = CellPoint::with_reps(g, u.clone(), v.clone(), urep, vrep, tol) {
            return Ok(p);
        }
    }
    Err(DbcError::SamplingExhausted {
        what: format!("G^{{{:?},{:?}}}", u.oneline(), v.oneline()),
        retries: SAMPLE_RETRIES,
    })
}

/// Generic SL(n) sample (the open double cell).
pub fn sample_sl(n: usize, rng: &mut impl Rng, tol: &Tolerance) -> CMat {
    let w0 = WeylElement::longest(n);
    for _ in 0..SAMPLE_RETRIES {
        if let Ok(p) = sample_double_cell_rng(&w0, &w0, rng, tol) {
            return p.g;
        }
    }
    panic!("could not sample a generic SL({}) point", n);
}

/// Sample the source fiber of the groupoid G^{v̄,v̄} over the flag c·B:
/// elements h = c·t·n with prescribed slice factor c and target slice c₂
/// drawn at random; the unipotent part n is the unique solution of the
/// linear system making h·c₂⁻¹ lower triangular. Returns h ∈ G^{v,v} with
/// θ(h) = c·B.
pub fn sample_theta_fiber(
    c: &CMat,
    v: &WeylElement,
    vrep: &WeylRep,
    rng: &mut impl Rng,
    tol: &Tolerance,
) -> Result<CellPoint> {
    let n = v.n();
    let l = n * (n - 1) / 2;
    let idx: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    for _ in 0..SAMPLE_RETRIES {
        let t = TorusElement::random(n, rng);
        let coords: Vec<C64> = (0..v.length()).map(|_| annulus(rng)).collect();
        let c2 = chart_matrix_t(v, vrep, &coords);
        let a = c.mul(&t.matrix());
        let Ok(c2inv) = c2.inverse() else { continue };
        let ab = a.mul(&c2inv);
        // strict-upper entries of a·(I+X)·c2inv vanish: linear in X
        let mut sys = CMat::zeros(l, l);
        let mut rhs = CMat::zeros(l, 1);
        for (row, &(p, q)) in idx.iter().enumerate() {
            for (col, &(i, j)) in idx.iter().enumerate() {
                sys[(row, col)] = a[(p, i)] * c2inv[(j, q)];
            }
            rhs[(row, 0)] = -ab[(p, q)];
        }
        let Ok(x) = sys.solve(&rhs) else { continue };
        let mut nmat = CMat::identity(n);
        for (col, &(i, j)) in idx.iter().enumerate() {
            nmat[(i, j)] = x[(col, 0)];
        }
        let h = a.mul(&nmat);
        if !h.all_finite() || cond(&h) > MAX_CONDITION {
            continue;
        }
        let bm = h.mul(&c2inv);
        if !bm.is_lower_triangular(1e-8) {
            continue;
        }
        if let Ok(p) = CellPoint::with_reps(
            h,
            v.clone(),
            v.clone(),
            vrep.clone(),
            vrep.clone(),
            tol,
        ) {
            return Ok(p);
        }
    }
    Err(DbcError::SamplingExhausted {
        what: format!("theta-fiber in G^{{{:?},{:?}}}", v.oneline(), v.oneline()),
        retries: SAMPLE_RETRIES,
    })
}

/// Right-quotient coordinates of B_-·g inside its cell: the chart
/// coordinates of the right slice factor. AD-safe.
pub fn coset_coords_jet(
    g: &Mat<Jet>,
    v: &WeylElement,
    rep: &WeylRep,
    tol: &Tolerance,
) -> Result<Vec<Jet>> {
    let (_, c) = right_c_factor(g, rep, tol)?;
    peel_coords(&c, v, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::jet_matrix;
    use rand::SeedableRng;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn cell_of_identity_and_sbar() {
        let (u, v) = bruhat_cell_of(&CMat::identity(2), &tol()).unwrap();
        assert!(u.is_identity() && v.is_identity());
        let s = WeylElement::simple(2, 1);
        let sbar = WeylRep::canonical(&s).matrix;
        let (u, v) = bruhat_cell_of(&sbar, &tol()).unwrap();
        assert_eq!(u, s);
        assert_eq!(v, s);
    }

    #[test]
    fn sample_roundtrip_small() {
        let mut seed = 100;
        for n in 2..=4 {
            let all = WeylElement::all(n);
            for u in &all {
                for v in &all {
                    seed += 1;
                    let p = sample_double_cell(u, v, seed, &tol()).unwrap();
                    let (du, dv) = bruhat_cell_of(&p.g, &tol()).unwrap();
                    assert_eq!(&du, u);
                    assert_eq!(&dv, v);
                    // reassembly of both factorizations
                    assert!(p.c.mul(&p.b).approx_eq(&p.g, 1e-9));
                    assert!(p.b_minus.mul(&p.c_prime).approx_eq(&p.g, 1e-9));
                    assert!(p.b.is_upper_triangular(1e-9));
                    assert!(p.b_minus.is_lower_triangular(1e-9));
                }
            }
        }
    }

    #[test]
    fn left_factor_sl2_golden() {
        // g = [[az, (abz-1)/a],[a, b]] factors with c = [[z,-1],[1,0]],
        // b = [[a, b],[0, 1/a]]
        let (z, a, b) = (cr(1.7), cr(0.8), cr(-2.1));
        let g = CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => a * z,
            (0, 1) => (a * b * z - cr(1.0)) / a,
            (1, 0) => a,
            (1, 1) => b,
            _ => unreachable!(),
        });
        let s = WeylElement::simple(2, 1);
        let rep = WeylRep::canonical(&s);
        let (c, bb) = left_c_factor(&g, &rep, &tol()).unwrap();
        assert!((c[(0, 0)] - z).norm() < 1e-12);
        assert!((c[(0, 1)] + cr(1.0)).norm() < 1e-12);
        assert!((c[(1, 0)] - cr(1.0)).norm() < 1e-12);
        assert!((c[(1, 1)]).norm() < 1e-12);
        assert!((bb[(0, 0)] - a).norm() < 1e-12);
        assert!((bb[(0, 1)] - b).norm() < 1e-12);
        assert!((bb[(1, 1)] - cr(1.0) / a).norm() < 1e-12);
        assert!(c.mul(&bb).approx_eq(&g, 1e-12));
    }

    #[test]
    fn trivial_factors_at_representative() {
        for n in 2..=4 {
            for w in WeylElement::all(n) {
                let rep = WeylRep::canonical(&w);
                let (c, b) = left_c_factor(&rep.matrix, &rep, &tol()).unwrap();
                assert!(c.approx_eq(&rep.matrix, 1e-12));
                assert!(b.approx_eq(&CMat::identity(n), 1e-12));
                let (bm, cp) = right_c_factor(&rep.matrix, &rep, &tol()).unwrap();
                assert!(bm.approx_eq(&CMat::identity(n), 1e-12));
                assert!(cp.approx_eq(&rep.matrix, 1e-12));
            }
        }
    }

    #[test]
    fn chart_and_peel_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            for w in WeylElement::all(n) {
                let rep = WeylRep::canonical(&w);
                for _ in 0..5 {
                    let coords: Vec<C64> = (0..w.length()).map(|_| annulus(&mut rng)).collect();
                    let c = chart_matrix_t(&w, &rep, &coords);
                    let back = peel_coords(&c, &w, &rep).unwrap();
                    for (a, b) in coords.iter().zip(back.iter()) {
                        assert!((a - b).norm() < 1e-10, "peel mismatch n={} w={:?}", n, w.oneline());
                    }
                }
            }
        }
    }

    #[test]
    fn flag_invariant_under_right_b() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 3;
        let t = tol();
        for _ in 0..50 {
            let g = sample_sl(n, &mut rng, &t);
            let fp = flag_canonical(&g, &t).unwrap();
            // right-multiply by a random upper triangular det-1 matrix
            let tt = TorusElement::random(n, &mut rng);
            let mut b = tt.matrix();
            for k in 1..n {
                b = b.mul(&elementary(n, k - 1, k, annulus(&mut rng)));
            }
            let fp2 = flag_canonical(&g.mul(&b), &t).unwrap();
            assert!(fp.approx_eq(&fp2, 1e-7), "flag moved under right B action");
        }
    }

    #[test]
    fn flag_of_b_is_point_cell() {
        let t = tol();
        let b = CMat::from_fn(2, 2, |i, j| cr([[2.0, 1.0], [0.0, 0.5]][i][j]));
        let fp = flag_canonical(&b, &t).unwrap();
        assert!(fp.cell.is_identity());
        assert!(fp.coords.is_empty());
    }

    #[test]
    fn sl2_chart_coordinate_is_z() {
        // g = [[z,-1],[1,0]]·b has flag coordinate z
        let t = tol();
        let z = cr(2.3);
        let c = CMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => z,
            (0, 1) => cr(-1.0),
            (1, 0) => cr(1.0),
            _ => cr(0.0),
        });
        let b = CMat::from_fn(2, 2, |i, j| cr([[3.0, 1.0], [0.0, 1.0 / 3.0]][i][j]));
        let fp = flag_canonical(&c.mul(&b), &t).unwrap();
        assert_eq!(fp.coords.len(), 1);
        assert!((fp.coords[0] - z).norm() < 1e-10);
    }

    #[test]
    fn wrong_label_is_rejected() {
        // a point of the open SL(2) double cell does not factor through the
        // identity slice: the support check flags the label mismatch
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let t = tol();
        let s = WeylElement::simple(2, 1);
        let p = sample_double_cell_rng(&s, &s, &mut rng, &t).unwrap();
        let e = WeylElement::identity(2);
        let erep = WeylRep::canonical(&e);
        let err = CellPoint::with_reps(p.g.clone(), e.clone(), e, erep.clone(), erep, &t);
        assert!(err.is_err(), "mislabelled point must be rejected");
    }

    #[test]
    fn theta_fiber_has_prescribed_source() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let t = tol();
        for n in 2..=3 {
            for v in WeylElement::all(n) {
                let vrep = WeylRep::canonical(&v);
                let base = sample_double_cell_rng(&v, &v, &mut rng, &t).unwrap();
                for _ in 0..5 {
                    let h = sample_theta_fiber(&base.c_prime, &v, &vrep, &mut rng, &t).unwrap();
                    let flag_h = h.flag_left().unwrap();
                    let coords_target = peel_coords(&lift::<C64>(&base.c_prime), &v, &vrep).unwrap();
                    for (a, b) in flag_h.coords.iter().zip(coords_target.iter()) {
                        assert!((a - b).norm() < 1e-7, "fiber sample has wrong source flag");
                    }
                }
            }
        }
    }

    #[test]
    fn jet_flag_coords_match_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let t = tol();
        let n = 3;
        let w = WeylElement::from_oneline(&[2, 3, 1]);
        let rep = WeylRep::canonical(&w);
        let p = sample_double_cell_rng(&w, &w, &mut rng, &t).unwrap();
        let seeds = vec![CMat::identity(n)];
        let jets = jet_matrix(&p.g, &seeds, false);
        let coords = flag_coords_jet(&jets, &w, &rep, &t).unwrap();
        let straight = p.flag_left().unwrap();
        for (a, b) in coords.iter().zip(straight.coords.iter()) {
            assert!((a.v - b).norm() < 1e-10);
        }
    }
}
