use super::mat::CMat;
use super::scalar::C64;
use super::tol::Tolerance;

/// Singular values (descending) and right singular vectors of a complex
/// rectangular matrix, by one-sided Jacobi: columns are repeatedly rotated
/// in pairs until mutually orthogonal; the rotations are accumulated into V,
/// so A·V has orthogonal columns whose norms are the singular values.
pub fn svd_values(a: &CMat) -> (Vec<f64>, CMat) {
    let m = a.rows();
    let nc = a.cols();
    let mut w = a.clone();
    let mut v = CMat::identity(nc);
    let eps = 1e-14;
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut off = 0.0f64;
        for p in 0..nc {
            for q in p + 1..nc {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = C64::new(0.0, 0.0);
                for r in 0..m {
                    app += w[(r, p)].norm_sqr();
                    aqq += w[(r, q)].norm_sqr();
                    apq += w[(r, p)].conj() * w[(r, q)];
                }
                let denom = (app * aqq).sqrt();
                if denom == 0.0 || apq.norm() <= eps * denom {
                    continue;
                }
                off = off.max(apq.norm() / denom);
                // diagonalize the 2x2 Hermitian Gram block [[app, apq],[conj, aqq]]
                let phi = apq / apq.norm();
                let zeta = (aqq - app) / (2.0 * apq.norm());
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = cth * t;
                for r in 0..m {
                    let xp = w[(r, p)];
                    let xq = w[(r, q)];
                    w[(r, p)] = xp * cth - xq * phi.conj() * sth;
                    w[(r, q)] = xp * phi * sth + xq * cth;
                }
                for r in 0..nc {
                    let xp = v[(r, p)];
                    let xq = v[(r, q)];
                    v[(r, p)] = xp * cth - xq * phi.conj() * sth;
                    v[(r, q)] = xp * phi * sth + xq * cth;
                }
            }
        }
        if off <= eps {
            break;
        }
    }
    let mut sig: Vec<(f64, usize)> = (0..nc)
        .map(|j| {
            let s = (0..m).map(|r| w[(r, j)].norm_sqr()).sum::<f64>().sqrt();
            (s, j)
        })
        .collect();
    sig.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let perm: Vec<usize> = sig.iter().map(|(_, j)| *j).collect();
    let vs = CMat::from_fn(nc, nc, |i, j| v[(i, perm[j])]);
    (sig.into_iter().map(|(s, _)| s).collect(), vs)
}

/// Numerical rank: number of singular values above tol_rank times the
/// largest one. The zero matrix has rank 0.
pub fn rank_tol(a: &CMat, tol: &Tolerance) -> usize {
    rank_tol_scaled(a, tol, 0.0)
}

/// Rank with an absolute scale floor: the cutoff is
/// tol_rank · max(σ_max, scale_floor). Submatrices of a larger matrix must
/// use the parent's scale as the floor, otherwise a numerically-zero block
/// (entries at rounding level) is declared rank one against its own tiny
/// σ_max.
pub fn rank_tol_scaled(a: &CMat, tol: &Tolerance, scale_floor: f64) -> usize {
    if a.rows() == 0 || a.cols() == 0 {
        return 0;
    }
    let (sig, _) = svd_values(a);
    let smax = sig[0].max(scale_floor);
    if smax <= 1e-300 {
        return 0;
    }
    sig.iter().filter(|s| **s > tol.tol_rank * smax).count()
}

/// Basis of the (complex-linear) right null space {x : a·x ≈ 0}: columns of
/// V whose singular value is below tol_rank relative to the largest.
pub fn null_space(a: &CMat, tol: &Tolerance) -> Vec<Vec<C64>> {
    let (sig, v) = svd_values(a);
    let smax = sig.first().copied().unwrap_or(0.0);
    let mut out = Vec::new();
    for (j, s) in sig.iter().enumerate() {
        if smax <= 1e-300 || *s <= tol.tol_rank * smax {
            out.push((0..a.cols()).map(|i| v[(i, j)]).collect());
        }
    }
    out
}

/// Condition number σ_max / σ_min of a square matrix.
pub fn cond(a: &CMat) -> f64 {
    let (sig, _) = svd_values(a);
    let smin = sig.last().copied().unwrap_or(0.0);
    if smin == 0.0 {
        f64::INFINITY
    } else {
        sig[0] / smin
    }
}

/// Orthonormal basis (modified Gram–Schmidt with column pivoting by norm)
/// of the span of the given vectors.
pub fn orthonormal_basis(span: &[Vec<C64>], tol: f64) -> Vec<Vec<C64>> {
    let mut qs: Vec<Vec<C64>> = Vec::new();
    let scale = span
        .iter()
        .flat_map(|v| v.iter().map(|z| z.norm()))
        .fold(0.0f64, f64::max)
        .max(1e-300);
    for v in span {
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &qs {
                let c: C64 = q.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
                for (wi, qi) in w.iter_mut().zip(q.iter()) {
                    *wi -= c * qi;
                }
            }
        }
        let nrm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > tol * scale {
            for wi in w.iter_mut() {
                *wi /= nrm;
            }
            qs.push(w);
        }
    }
    qs
}

/// Residual of projecting `vec` onto the span: ‖v − Q Qᴴ v‖ / max(‖v‖, 1).
pub fn projection_residual(span: &[Vec<C64>], vec: &[C64], tol: f64) -> f64 {
    let qs = orthonormal_basis(span, tol);
    let mut w = vec.to_vec();
    for q in &qs {
        let c: C64 = q.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
        for (wi, qi) in w.iter_mut().zip(q.iter()) {
            *wi -= c * qi;
        }
    }
    let vn = vec.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let rn = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    rn / vn.max(1.0)
}
