//! Structure-level verifications of the standard bivector: multiplicativity,
//! the Jacobi identity through second-order jets, coisotropy of the slices
//! C_v̄, the weak Poisson pair formed by the two quotient projections, and
//! tangency to the double Bruhat cells.

use super::rmatrix::{
    adjoint_matrix, basis_index, pist_coeffs, pist_coeffs_t, sharp, sl_basis, sl_dim, RMatrix,
};
use super::spaces::{bracket_matrix, CosetCellSpace, FlagCellSpace, GroupSpace, PoissonSpace};
use crate::cells::{chart_matrix_t, CellPoint};
use crate::error::Result;
use crate::num::{
    cr, jet_matrix, null_space, projection_residual, rank_tol, CMat, Jet, Mat, Tolerance, C64,
};
use crate::weyl::{WeylElement, WeylRep};

/// Deviation of the multiplicative identity
/// Π(gh) = Ad-transport of Π(h) by g + Π(g), in the right-trivialized frame.
pub fn multiplicativity_dev(g: &CMat, h: &CMat, r: &RMatrix) -> Result<f64> {
    let gh = g.mul(h);
    let lhs = pist_coeffs(&gh, r)?;
    let m = adjoint_matrix(g)?;
    let rhs = m.mul(&pist_coeffs(h, r)?).mul(&m.transpose()).add(&pist_coeffs(g, r)?);
    let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
    Ok(lhs.dist(&rhs) / scale)
}

/// Cyclic Jacobi sum {{f1,f2},f3} + {{f2,f3},f1} + {{f3,f1},f2} at g, for
/// observables given as jet functions.
///
/// The bracket is F = Σ Π^{ab} D_a f · D_b f′ with D_a the derivative along
/// the right-translate X_a·g. Differentiating a frame derivative picks up a
/// correction from the frame's non-commutativity:
/// D_c(D_a f) = Hess_f[a][c] + Df((X_a X_c)·g),
/// so second-order jets are combined with a first-order pass over the
/// product seeds X_a X_c · g.
pub fn jacobi_dev(
    fs: [&dyn Fn(&Mat<Jet>) -> Result<Jet>; 3],
    g: &CMat,
    r: &RMatrix,
) -> Result<f64> {
    let d = sl_dim(r.n);
    let basis = sl_basis(r.n);
    let frame: Vec<CMat> = basis.iter().map(|x| x.mul(g)).collect();
    let prod_seeds: Vec<CMat> = (0..d * d)
        .map(|idx| basis[idx / d].mul(&basis[idx % d]).mul(g))
        .collect();
    let jets2 = jet_matrix(g, &frame, true);
    let jets1 = jet_matrix(g, &frame, false);
    let jets_prod = jet_matrix(g, &prod_seeds, false);
    let pi_jet = pist_coeffs_t::<Jet>(&jets1, r)?;
    let pi = pist_coeffs(g, r)?;
    // per observable: value/first/second along the frame, plus first
    // derivatives along the product seeds
    struct FData {
        first: Vec<C64>,
        dd: Vec<C64>, // dd[a*d + c] = D_c(D_a f)
    }
    let mut data = Vec::with_capacity(3);
    for f in fs.iter() {
        let j2 = f(&jets2)?;
        let jp = f(&jets_prod)?;
        let first: Vec<C64> = (0..d).map(|a| j2.d_or_zero(a)).collect();
        let mut dd = vec![cr(0.0); d * d];
        for a in 0..d {
            for c in 0..d {
                let hess = j2
                    .h
                    .as_ref()
                    .map(|h| h[a * d + c])
                    .unwrap_or(cr(0.0));
                dd[a * d + c] = hess + jp.d_or_zero(a * d + c);
            }
        }
        data.push(FData { first, dd });
    }
    let mut total = cr(0.0);
    for cyc in 0..3 {
        let fa = &data[cyc];
        let fb = &data[(cyc + 1) % 3];
        let fc = &data[(cyc + 2) % 3];
        // D_c{fa, fb} over the frame
        let mut dinner = vec![cr(0.0); d];
        for c in 0..d {
            let mut acc = cr(0.0);
            for a in 0..d {
                for b in 0..d {
                    acc += pi_jet[(a, b)].d_or_zero(c) * fa.first[a] * fb.first[b];
                    acc += pi[(a, b)] * fa.dd[a * d + c] * fb.first[b];
                    acc += pi[(a, b)] * fa.first[a] * fb.dd[b * d + c];
                }
            }
            dinner[c] = acc;
        }
        // outer bracket {inner, fc}(g)
        for c in 0..d {
            for b in 0..d {
                total += pi[(c, b)] * dinner[c] * fc.first[b];
            }
        }
    }
    Ok(total.norm())
}

/// Coisotropy deviation of the slice C_v̄ at one of its points: for every
/// conormal covector α, π^#(α) must be tangent to C_v̄, whose tangent space
/// in the right-trivialized frame is spanned by the root vectors e_ij with
/// i < j and v⁻¹(i) > v⁻¹(j).
pub fn slice_coisotropy_dev(c: &CMat, v: &WeylElement, r: &RMatrix) -> Result<f64> {
    let n = v.n();
    let pi = pist_coeffs(c, r)?;
    let vinv = v.inverse();
    let mut tangent_idx = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if vinv.apply(i) > vinv.apply(j) {
                tangent_idx.push(basis_index(n, i, j));
            }
        }
    }
    // conormal basis: functionals pairing against the Cartans and every
    // root vector whose trace-dual is not tangent
    let mut conormals: Vec<Vec<C64>> = Vec::new();
    let basis = sl_basis(n);
    for k in 1..n {
        conormals.push(super::rmatrix::covector_of(&super::rmatrix::cartan_basis(n, k)));
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // covector ⟨e_ij, ·⟩ annihilates e_kl unless (k,l) = (j,i)
            if tangent_idx.contains(&basis_index(n, j, i)) {
                continue;
            }
            conormals.push(super::rmatrix::covector_of(&basis[basis_index(n, i, j)]));
        }
    }
    let mut worst: f64 = 0.0;
    for alpha in &conormals {
        let w = sharp(&pi, alpha);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-13 {
            continue;
        }
        let off: f64 = w
            .iter()
            .enumerate()
            .filter(|(b, _)| !tangent_idx.contains(b))
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(off / norm.max(1.0));
    }
    Ok(worst)
}

/// Weak-pair deviation at a cell point: the joint map (ϖ, ϖ_-) into the
/// product of the flag and coset cells must be Poisson for π_1 × π_{-1};
/// concretely the bracket matrix of the stacked chart coordinates must be
/// block diagonal with the two pushforward bivectors as blocks.
pub fn weak_pair_dev(p: &CellPoint, tol: &Tolerance) -> Result<f64> {
    let n = p.n();
    let g = GroupSpace::new(n, *tol);
    let flag = FlagCellSpace::new(p.u.clone(), p.urep.clone(), *tol);
    let coset = CosetCellSpace::new(p.v.clone(), p.vrep.clone(), *tol);
    let frame = g.frame(&p.g)?;
    let pi = g.pi_frame(&p.g)?;
    let joint = bracket_matrix(&p.g, &frame, &pi, |jets| {
        let mut out = flag.coords(jets)?;
        out.extend(coset.coords(jets)?);
        Ok(out)
    })?;
    let lu = p.u.length();
    let lv = p.v.length();
    // target blocks evaluated at the canonical representatives (different
    // preimages than g itself, so agreement is a real check)
    let pi1 = flag.pi_coords(&p.c)?;
    let pim1 = coset.pi_coords(&p.c_prime)?;
    let mut rhs = CMat::zeros(lu + lv, lu + lv);
    for i in 0..lu {
        for j in 0..lu {
            rhs[(i, j)] = pi1[(i, j)];
        }
    }
    for i in 0..lv {
        for j in 0..lv {
            rhs[(lu + i, lu + j)] = pim1[(i, j)];
        }
    }
    let scale = joint.max_abs().max(rhs.max_abs()).max(1.0);
    Ok(joint.dist(&rhs) / scale)
}

/// Submersion check: ranks of the differentials of ϖ and ϖ_- restricted to
/// the symplectic leaf through p equal l(u) and l(v). The leaf tangent is
/// the image of π^#.
pub fn moment_submersion_ranks(p: &CellPoint, tol: &Tolerance) -> Result<(usize, usize)> {
    let n = p.n();
    let g = GroupSpace::new(n, *tol);
    let flag = FlagCellSpace::new(p.u.clone(), p.urep.clone(), *tol);
    let coset = CosetCellSpace::new(p.v.clone(), p.vrep.clone(), *tol);
    let frame = g.frame(&p.g)?;
    let pi = g.pi_frame(&p.g)?;
    // columns of Π span the leaf tangent in the frame; push through the
    // chart Jacobians
    let ju = super::spaces::observable_jacobian(&p.g, &frame, |jets| flag.coords(jets))?;
    let jv = super::spaces::observable_jacobian(&p.g, &frame, |jets| coset.coords(jets))?;
    let ru = rank_tol(&ju.mul(&pi), tol);
    let rv = rank_tol(&jv.mul(&pi), tol);
    Ok((ru, rv))
}

/// Tangency of π_st to the double Bruhat cell at p: Hamiltonian vectors of
/// the local defining minors stay inside
/// T_g(BgB ∩ B_-gB_-) = (b + Ad_g b) ∩ (b_- + Ad_g b_-).
pub fn cell_tangency_dev(p: &CellPoint, r: &RMatrix, tol: &Tolerance) -> Result<f64> {
    let n = p.n();
    let spans = super::dressing::tangent_spans(&p.g)?;
    // numeric intersection of the two spans via the null-space trick
    let k1 = spans.bgb.len();
    let k2 = spans.bmgbm.len();
    let d = sl_dim(n);
    let stacked = CMat::from_fn(d, k1 + k2, |i, j| {
        if j < k1 {
            spans.bgb[j][i]
        } else {
            -spans.bmgbm[j - k1][i]
        }
    });
    let ns = null_space(&stacked, tol);
    let mut cell_tangent: Vec<Vec<C64>> = Vec::new();
    for x in ns {
        let vsum: Vec<C64> = (0..d)
            .map(|i| (0..k1).map(|j| spans.bgb[j][i] * x[j]).sum())
            .collect();
        cell_tangent.push(vsum);
    }
    let pi = pist_coeffs(&p.g, r)?;
    let basis = sl_basis(n);
    let frame: Vec<CMat> = basis.iter().map(|x| x.mul(&p.g)).collect();
    let jets = jet_matrix(&p.g, &frame, false);
    let mut worst: f64 = 0.0;
    // defining functions: for each rank-deficient lower-left block, one
    // minor of size rank+1 (top-left corner of the block); same on the
    // conjugated side for the B_- pattern
    let w0 = WeylElement::longest(n);
    let p0 = w0.perm_matrix();
    for side in 0..2 {
        let (label, jets_side) = if side == 0 {
            (p.u.clone(), jets.clone())
        } else {
            let gp = p0.mul(&p.g).mul(&p0);
            let frame_p: Vec<CMat> = frame.iter().map(|s| p0.mul(s).mul(&p0)).collect();
            (
                w0.compose(&p.v).compose(&w0),
                jet_matrix(&gp, &frame_p, false),
            )
        };
        for i in 1..=n {
            for j in 1..=n {
                let rk = (0..j).filter(|&k| label.apply(k) + 1 >= i).count();
                let rows = n - (i - 1);
                let cols = j;
                if rk >= rows.min(cols) {
                    continue;
                }
                // minor of size rk+1 at the corner of the block
                let sz = rk + 1;
                let sub = Mat::from_fn(sz, sz, |a, b| jets_side[(i - 1 + a, b)].clone());
                let f = sub.det();
                if f.v.norm() > 1e-6 {
                    continue; // not a local defining function here
                }
                let alpha: Vec<C64> = (0..d).map(|a| f.d_or_zero(a)).collect();
                let anorm = alpha.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if anorm < 1e-12 {
                    continue;
                }
                let wv = sharp(&pi, &alpha);
                let wnorm = wv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if wnorm < 1e-12 {
                    continue;
                }
                worst = worst.max(projection_residual(&cell_tangent, &wv, 1e-12));
            }
        }
    }
    Ok(worst)
}

/// Sample points on the slice C_v̄ via its chart.
pub fn slice_sample(
    v: &WeylElement,
    rep: &WeylRep,
    rng: &mut impl rand::Rng,
) -> CMat {
    let coords: Vec<C64> = (0..v.length()).map(|_| crate::weyl::annulus(rng)).collect();
    chart_matrix_t(v, rep, &coords)
}

/// Left-invariance of the fields X_α = π^#(τ*α) on the action groupoid
/// (G/B) × B_- with the mixed bivector, restricted to the subgroupoid over
/// the cell of v: the source component of X_α vanishes, and for a
/// composable pair (P1, P2) the fiber component satisfies
/// X_α(P1·P2) = l_{b_1} X_α(P2) with the same covector α at the shared
/// target flag. This is the checkable core of multiplicativity of the
/// mixed structure.
pub fn xalpha_invariance_dev(
    v: &WeylElement,
    rep: &WeylRep,
    rng: &mut impl rand::Rng,
    tol: &Tolerance,
) -> Result<f64> {
    use super::spaces::ProductSpace;
    use crate::groupoid::{embed_iv, sample_composable, GroupoidElement};

    let prod = ProductSpace::new(v.clone(), rep.clone(), *tol);
    let p = crate::cells::sample_double_cell_rng(v, v, rng, tol)?;
    let p = CellPoint::with_reps(p.g, v.clone(), v.clone(), rep.clone(), rep.clone(), tol)?;
    let g1 = GroupoidElement::new(p)?;
    let g2 = sample_composable(&g1, rng, tol)?;
    let a1 = embed_iv(&g1.pt, tol)?;
    let a2 = embed_iv(&g2.pt, tol)?;
    let b1 = a1.b_minus.clone();
    let p2 = prod.encode(&a2.flag.matrix(), &a2.b_minus);
    let p12 = prod.encode(&a1.flag.matrix(), &b1.mul(&a2.b_minus));
    let l = v.length();
    let m = prod.bminus.dim();

    // X_α components at a block point, for all unit covectors α at the
    // target flag: rows of J_τ pushed through the bivector
    let xfields = |pt: &CMat| -> Result<Vec<Vec<C64>>> {
        let frame = prod.frame(pt)?;
        let pi = prod.pi_frame(pt)?;
        let jt = super::spaces::observable_jacobian(pt, &frame, |jets| prod.tau_coords(jets))?;
        let mut out = Vec::with_capacity(l);
        for k in 0..l {
            let alpha: Vec<C64> = (0..frame.len()).map(|a| jt[(k, a)]).collect();
            out.push(sharp(&pi, &alpha));
        }
        Ok(out)
    };
    let x2 = xfields(&p2)?;
    let x12 = xfields(&p12)?;
    let mut worst: f64 = 0.0;
    // reconstruct the fiber tangent matrix from entry-chart components
    let frame2 = prod.bminus.frame(&a2.b_minus)?;
    for k in 0..l {
        let scale = x2[k]
            .iter()
            .chain(x12[k].iter())
            .map(|z| z.norm())
            .fold(1.0, f64::max);
        // source components vanish
        for i in 0..l {
            worst = worst.max(x2[k][i].norm() / scale);
            worst = worst.max(x12[k][i].norm() / scale);
        }
        // left translation of the fiber component
        let mut w2 = CMat::zeros(v.n(), v.n());
        for mu in 0..m {
            w2 = w2.add(&frame2[mu].scale(x2[k][l + mu]));
        }
        let moved = b1.mul(&w2);
        let positions = {
            let n = v.n();
            let mut ps = Vec::new();
            for i in 0..n {
                for j in 0..i {
                    ps.push((i, j));
                }
            }
            for d in 0..n - 1 {
                ps.push((d, d));
            }
            ps
        };
        for (mu, &(i, j)) in positions.iter().enumerate() {
            worst = worst.max((x12[k][l + mu] - moved[(i, j)]).norm() / scale);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{sample_double_cell_rng, sample_sl};
    use crate::poisson::spaces::entry_obs;
    use rand::SeedableRng;

    #[test]
    fn multiplicativity_holds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let tol = Tolerance::default();
        for n in 2..=3 {
            let r = RMatrix::standard(n);
            for _ in 0..20 {
                let g = sample_sl(n, &mut rng, &tol);
                let h = sample_sl(n, &mut rng, &tol);
                assert!(multiplicativity_dev(&g, &h, &r).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn jacobi_on_sl2_coordinates() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let tol = Tolerance::default();
        let r = RMatrix::standard(2);
        let f11 = entry_obs(0, 0);
        let f12 = entry_obs(0, 1);
        let f21 = entry_obs(1, 0);
        for _ in 0..10 {
            let g = sample_sl(2, &mut rng, &tol);
            let dev = jacobi_dev([&f11, &f12, &f21], &g, &r).unwrap();
            assert!(dev < 1e-8, "jacobi deviation {}", dev);
        }
    }

    #[test]
    fn slice_is_coisotropic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for n in 2..=3 {
            let r = RMatrix::standard(n);
            for v in WeylElement::all(n) {
                let rep = WeylRep::canonical(&v);
                for _ in 0..5 {
                    let c = slice_sample(&v, &rep, &mut rng);
                    let dev = slice_coisotropy_dev(&c, &v, &r).unwrap();
                    assert!(dev < 1e-9, "coisotropy dev {} at v={:?}", dev, v.oneline());
                }
            }
        }
    }

    #[test]
    fn weak_pair_on_small_cells() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let tol = Tolerance::default();
        for n in 2..=3 {
            for u in WeylElement::all(n) {
                for v in WeylElement::all(n) {
                    let p = sample_double_cell_rng(&u, &v, &mut rng, &tol).unwrap();
                    let dev = weak_pair_dev(&p, &tol).unwrap();
                    assert!(
                        dev < 1e-8,
                        "weak pair dev {} at ({:?},{:?})",
                        dev,
                        u.oneline(),
                        v.oneline()
                    );
                }
            }
        }
    }

    #[test]
    fn moment_ranks_are_cell_lengths() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        let tol = Tolerance::default();
        for n in 2..=3 {
            for u in WeylElement::all(n) {
                for v in WeylElement::all(n) {
                    let p = sample_double_cell_rng(&u, &v, &mut rng, &tol).unwrap();
                    let (ru, rv) = moment_submersion_ranks(&p, &tol).unwrap();
                    assert_eq!(ru, u.length(), "flag moment rank at ({:?},{:?})", u.oneline(), v.oneline());
                    assert_eq!(rv, v.length(), "coset moment rank");
                }
            }
        }
    }

    #[test]
    fn xalpha_fields_left_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        let tol = Tolerance::default();
        for n in 2..=3 {
            for v in WeylElement::all(n) {
                if v.length() == 0 {
                    continue; // point base: no covectors to test
                }
                let rep = WeylRep::canonical(&v);
                for _ in 0..3 {
                    let dev = xalpha_invariance_dev(&v, &rep, &mut rng, &tol).unwrap();
                    assert!(dev < 1e-7, "X_alpha invariance dev {} at v={:?}", dev, v.oneline());
                }
            }
        }
    }

    #[test]
    fn cells_are_poisson_submanifolds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        let tol = Tolerance::default();
        let n = 3;
        let r = RMatrix::standard(n);
        let all = WeylElement::all(n);
        for u in &all {
            for v in &all {
                let p = sample_double_cell_rng(u, v, &mut rng, &tol).unwrap();
                let dev = cell_tangency_dev(&p, &r, &tol).unwrap();
                assert!(
                    dev < 1e-7,
                    "cell tangency dev {} at ({:?},{:?})",
                    dev,
                    u.oneline(),
                    v.oneline()
                );
            }
        }
    }
}
