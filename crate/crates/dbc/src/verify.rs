//! The verification engine: every structural claim in the crate, run at
//! sampled points with pinned tolerances and assembled into a
//! deterministic JSON report. The acceptance suite and the `verify` CLI
//! verb are both thin wrappers around [`run_verification`].

use crate::cells::{right_c_factor, sample_double_cell_rng, CellPoint, FlagPoint};
use crate::error::Result;
use crate::golden;
use crate::groupoid::{
    act_left, act_right, action_gpd_mul, embed_iv, gpd_mul, identity_bisection, sample_composable,
    sample_with_source, sample_with_target, GroupoidElement,
};
use crate::leaves::{
    casimir_chi_dev, casimir_minor_dev, chi_rep, dressing_flow, leaf_dim_formula,
    leaf_groupoid_check, leaf_rank, move_to_leaf_of, same_leaf, square_identity_dev,
    translate_right, LeafCensus,
};
use crate::num::{cr, rank_tol_scaled, CMat, Jet, Mat, Tolerance, C64};
use crate::poisson::{
    antisymmetry_dev, basis_index, bracket_eval, bracket_eval_direct, cell_tangency_dev,
    dressing_membership_dev, dressing_vs_sharp, dual_basis, entry_obs, jacobi_dev,
    moment_submersion_ranks, multiplicativity_dev, pi1_via_pushforward, pi1_via_sigma,
    pist_coeffs, poisson_map_check, slice_coisotropy_dev, slice_sample, weak_pair_dev,
    xalpha_invariance_dev, BMinusSpace, CosetCellSpace, FlagCellSpace, GroupSpace, ProductSpace,
    RMatrix,
};
use crate::weyl::{torus_conjugate, TorusElement, WeylElement, WeylRep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Factorize,
    Poisson,
    Groupoid,
    Leaves,
    Golden,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        vec![
            Suite::Factorize,
            Suite::Poisson,
            Suite::Groupoid,
            Suite::Leaves,
            Suite::Golden,
        ]
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        match s {
            "all" => Some(Suite::all()),
            "factorize" => Some(vec![Suite::Factorize]),
            "poisson" => Some(vec![Suite::Poisson]),
            "groupoid" => Some(vec![Suite::Groupoid]),
            "leaves" => Some(vec![Suite::Leaves]),
            "golden" => Some(vec![Suite::Golden]),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Factorize => "factorize",
            Suite::Poisson => "poisson",
            Suite::Groupoid => "groupoid",
            Suite::Leaves => "leaves",
            Suite::Golden => "golden",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub tol: Tolerance,
    pub suites: Vec<Suite>,
}

impl RunConfig {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.n < 2 || self.n > 6 {
            return Err(format!("n = {} out of supported range 2..=6", self.n));
        }
        if self.samples == 0 {
            return Err("samples must be at least 1".into());
        }
        if self.suites.is_empty() {
            return Err("no suites selected".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub suite: String,
    pub reference: String,
    pub n: usize,
    pub samples: usize,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub timestamp: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Report body with the timestamp zeroed, for byte-level comparisons.
    pub fn canonical_json(&self) -> String {
        let mut c = self.clone();
        c.timestamp = 0;
        c.to_json()
    }
}

fn fnv1a(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325 ^ seed.wrapping_mul(0x9e3779b97f4a7c15);
    for b in id.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

struct Ctx {
    n: usize,
    seed: u64,
    samples: usize,
    tol: Tolerance,
    r: RMatrix,
}

impl Ctx {
    fn rng(&self, id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(fnv1a(self.seed, id))
    }

    /// Weyl pairs exercised per check: all of them for n <= 3, a seeded
    /// sample of ten for larger n.
    fn pairs(&self, id: &str) -> Vec<(WeylElement, WeylElement)> {
        let all = WeylElement::all(self.n);
        if self.n <= 3 {
            let mut out = Vec::new();
            for u in &all {
                for v in &all {
                    out.push((u.clone(), v.clone()));
                }
            }
            out
        } else {
            let mut rng = self.rng(&format!("pairs/{}", id));
            (0..10)
                .map(|_| {
                    (
                        all[rng.gen_range(0..all.len())].clone(),
                        all[rng.gen_range(0..all.len())].clone(),
                    )
                })
                .collect()
        }
    }

    fn elements(&self) -> Vec<WeylElement> {
        WeylElement::all(self.n)
    }
}

struct CheckSet {
    suite: &'static str,
    out: Vec<CheckResult>,
    n: usize,
}

impl CheckSet {
    fn run(
        &mut self,
        id: &str,
        reference: &str,
        tol: f64,
        samples: usize,
        body: impl FnOnce() -> Result<f64>,
    ) {
        let (max_dev, pass, note) = match body() {
            Ok(dev) => (dev, dev <= tol, None),
            Err(e) => (f64::INFINITY, false, Some(e.to_string())),
        };
        self.out.push(CheckResult {
            id: id.to_string(),
            suite: self.suite.to_string(),
            reference: reference.to_string(),
            n: self.n,
            samples,
            max_dev,
            tol,
            pass,
            note,
        });
    }
}

fn pair_tag(u: &WeylElement, v: &WeylElement) -> String {
    let fmt = |w: &WeylElement| {
        w.oneline()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join("")
    };
    format!("{}-{}", fmt(u), fmt(v))
}

fn elem_tag(v: &WeylElement) -> String {
    v.oneline()
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("")
}

// ---------------------------------------------------------------------
// factorize suite
// ---------------------------------------------------------------------

fn factorize_suite(ctx: &Ctx) -> Vec<CheckResult> {
    let mut cs = CheckSet {
        suite: "factorize",
        out: Vec::new(),
        n: ctx.n,
    };
    let tol = ctx.tol;
    for (u, v) in ctx.pairs("factorize") {
        let tag = pair_tag(&u, &v);
        let id = format!("factorize/roundtrip/{}", tag);
        let mut rng = ctx.rng(&id);
        cs.run(&id, "cell-detection-roundtrip", 1e-9, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let p = sample_double_cell_rng(&u, &v, &mut rng, &tol)?;
                let (du, dv) = crate::cells::bruhat_cell_of(&p.g, &tol)?;
                if du != u || dv != v {
                    worst = f64::INFINITY;
                }
                let scale = p.g.max_abs().max(1.0);
                worst = worst.max(p.c.mul(&p.b).dist(&p.g) / scale);
                worst = worst.max(p.b_minus.mul(&p.c_prime).dist(&p.g) / scale);
            }
            Ok(worst)
        });
    }
    // uniqueness / stability under permuted computation orders
    let id = "factorize/uniqueness-stability".to_string();
    let mut rng = ctx.rng(&id);
    let n = ctx.n;
    cs.run(&id, "factorization-uniqueness", 1e-8, ctx.samples, || {
        let mut worst: f64 = 0.0;
        let w0 = WeylElement::longest(n);
        for _ in 0..ctx.samples {
            let p = sample_double_cell_rng(&w0, &w0, &mut rng, &tol)?;
            let t = TorusElement::random(n, &mut rng);
            // recompute the factors of (g·t)·t⁻¹ and compare
            let g2 = p.g.mul(&t.matrix()).mul(&t.inverse().matrix());
            let p2 = CellPoint::with_reps(
                g2,
                p.u.clone(),
                p.v.clone(),
                p.urep.clone(),
                p.vrep.clone(),
                &tol,
            )?;
            let scale = p.c.max_abs().max(1.0);
            worst = worst.max(p.c.dist(&p2.c) / scale);
            worst = worst.max(p.b_minus.dist(&p2.b_minus) / scale);
        }
        Ok(worst)
    });
    // flag invariance under the right B-action
    let id = "factorize/flag-right-invariance".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "flag-chart-invariance", 1e-7, ctx.samples, || {
        let mut worst: f64 = 0.0;
        for _ in 0..ctx.samples {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            let fp = crate::cells::flag_canonical(&g, &tol)?;
            let t = TorusElement::random(n, &mut rng);
            let mut b = t.matrix();
            for k in 1..n {
                let mut e = CMat::identity(n);
                e[(k - 1, k)] = crate::weyl::annulus(&mut rng);
                b = b.mul(&e);
            }
            let fp2 = crate::cells::flag_canonical(&g.mul(&b), &tol)?;
            if fp.cell != fp2.cell {
                worst = f64::INFINITY;
            } else {
                worst = worst.max(fp.dist(&fp2));
            }
        }
        Ok(worst)
    });
    cs.out
}

// ---------------------------------------------------------------------
// poisson suite
// ---------------------------------------------------------------------

fn block_encode_jets(n: usize, a: &Mat<Jet>, b: &Mat<Jet>) -> Mat<Jet> {
    Mat::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j < n {
            a[(i, j)].clone()
        } else if i >= n && j >= n {
            b[(i - n, j - n)].clone()
        } else {
            Jet::constant(cr(0.0))
        }
    })
}

fn poisson_suite(ctx: &Ctx) -> Vec<CheckResult> {
    let mut cs = CheckSet {
        suite: "poisson",
        out: Vec::new(),
        n: ctx.n,
    };
    let tol = ctx.tol;
    let n = ctx.n;
    let r = ctx.r.clone();
    let w0 = WeylElement::longest(n);

    // bivector antisymmetry and Ad-invariance of the symmetric part
    let id = "poisson/antisymmetry".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "bivector-antisymmetry", 1e-9, ctx.samples, || {
        let mut worst: f64 = 0.0;
        for _ in 0..ctx.samples {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            worst = worst.max(antisymmetry_dev(&pist_coeffs(&g, &r)?));
        }
        Ok(worst)
    });
    let id = "poisson/ad-invariant-symmetric-part".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "r-matrix-symmetric-part", 1e-10, 20, || {
        let s = r.symmetric_part();
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let g = loop {
                let g = crate::cells::sample_sl(n, &mut rng, &tol);
                if crate::num::cond(&g) < 100.0 {
                    break g;
                }
            };
            let m = crate::poisson::adjoint_matrix(&g)?;
            let moved = m.mul(&s).mul(&m.transpose());
            worst = worst.max(moved.dist(&s) / s.max_abs().max(moved.max_abs()).max(1.0));
        }
        Ok(worst)
    });
    // two bracket routes agree on entry observables
    let id = "poisson/bracket-two-routes".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "bracket-dual-route", 1e-9, ctx.samples, || {
        let mut worst: f64 = 0.0;
        for _ in 0..ctx.samples {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            for _ in 0..3 {
                let (i1, j1) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let (i2, j2) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let b1 = bracket_eval(entry_obs(i1, j1), entry_obs(i2, j2), &g, &r)?;
                let b2 = bracket_eval_direct(entry_obs(i1, j1), entry_obs(i2, j2), &g, &r)?;
                worst = worst.max((b1 - b2).norm() / b1.norm().max(1.0));
            }
        }
        Ok(worst)
    });
    // multiplicativity
    let id = "poisson/multiplicativity".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "bivector-multiplicative", 1e-9, 100, || {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            let h = crate::cells::sample_sl(n, &mut rng, &tol);
            worst = worst.max(multiplicativity_dev(&g, &h, &r)?);
        }
        Ok(worst)
    });
    // Jacobi identity on coordinate triples
    let id = "poisson/jacobi".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "jacobi-identity", 1e-7, ctx.samples.min(10), || {
        let mut worst: f64 = 0.0;
        for _ in 0..ctx.samples.min(10) {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            let picks: Vec<(usize, usize)> = (0..3)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            let f0 = entry_obs(picks[0].0, picks[0].1);
            let f1 = entry_obs(picks[1].0, picks[1].1);
            let f2 = entry_obs(picks[2].0, picks[2].1);
            worst = worst.max(jacobi_dev([&f0, &f1, &f2], &g, &r)?);
        }
        Ok(worst)
    });
    // dressing fields: sharp agreement, memberships, leaf span
    let id = "poisson/dressing-sharp".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "dressing-equals-sharp", 1e-8, ctx.samples, || {
        let mut worst: f64 = 0.0;
        for _ in 0..ctx.samples {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            let pi = pist_coeffs(&g, &r)?;
            for xi in dual_basis(n) {
                worst = worst.max(dressing_vs_sharp(&xi, &g, &pi)?);
            }
        }
        Ok(worst)
    });
    let id = "poisson/dressing-membership".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "dressing-tangent-displays", 1e-8, ctx.samples, || {
        let mut worst: f64 = 0.0;
        for _ in 0..ctx.samples {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            worst = worst.max(dressing_membership_dev(&g)?);
        }
        Ok(worst)
    });
    let id = "poisson/dressing-span".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "dressing-spans-leaf", 0.5, ctx.samples, || {
        // integer comparison: deviation 0 or 1
        for _ in 0..ctx.samples {
            let g = crate::cells::sample_sl(n, &mut rng, &tol);
            let pi = pist_coeffs(&g, &r)?;
            let rank_pi = rank_tol_scaled(&pi, &tol, pi.max_abs().max(1.0));
            let d = crate::poisson::sl_dim(n);
            let mut mat = CMat::zeros(d, d);
            for (k, xi) in dual_basis(n).into_iter().enumerate() {
                let (_, coeffs) = crate::poisson::dressing_eval(&xi, &g)?;
                for (i, c) in coeffs.into_iter().enumerate() {
                    mat[(i, k)] = c;
                }
            }
            let rank_d = rank_tol_scaled(&mat, &tol, mat.max_abs().max(1.0));
            if rank_pi != rank_d {
                return Ok(1.0);
            }
        }
        Ok(0.0)
    });
    // B_- is a Poisson subgroup: the bivector is tangent to it
    let id = "poisson/bminus-tangency".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "borel-poisson-subgroup", 1e-9, ctx.samples, || {
        let mut worst: f64 = 0.0;
        for _ in 0..ctx.samples {
            let t = TorusElement::random(n, &mut rng);
            let mut b = t.matrix();
            for i in 0..n {
                for j in 0..i {
                    let mut e = CMat::identity(n);
                    e[(i, j)] = crate::weyl::annulus(&mut rng);
                    b = b.mul(&e);
                }
            }
            let pi = pist_coeffs(&b, &r)?;
            // components touching strictly-upper basis directions vanish
            let scale = pi.max_abs().max(1.0);
            let d = crate::poisson::sl_dim(n);
            for i in 0..n {
                for j in i + 1..n {
                    let idx = basis_index(n, i, j);
                    for a in 0..d {
                        worst = worst.max(pi[(idx, a)].norm() / scale);
                        worst = worst.max(pi[(a, idx)].norm() / scale);
                    }
                }
            }
        }
        Ok(worst)
    });
    // π_1 two routes per cell
    for v in ctx.elements() {
        if v.length() == 0 {
            continue;
        }
        let id = format!("poisson/pi1-two-routes/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let rep = WeylRep::canonical(&v);
        let vv = v.clone();
        cs.run(&id, "quotient-bivector-routes", 1e-8, ctx.samples, || {
            let flagspace = FlagCellSpace::new(vv.clone(), rep.clone(), tol);
            let prodspace = ProductSpace::new(vv.clone(), rep.clone(), tol);
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let coords: Vec<C64> =
                    (0..vv.length()).map(|_| crate::weyl::annulus(&mut rng)).collect();
                let fp = FlagPoint {
                    cell: vv.clone(),
                    rep: rep.clone(),
                    coords,
                };
                let a = pi1_via_pushforward(&flagspace, &fp)?;
                let b = pi1_via_sigma(&prodspace, &fp)?;
                worst = worst.max(a.dist(&b) / a.max_abs().max(b.max_abs()).max(1.0));
            }
            Ok(worst)
        });
    }
    // coisotropy of the slices
    for v in ctx.elements() {
        let id = format!("poisson/slice-coisotropy/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let rep = WeylRep::canonical(&v);
        let vv = v.clone();
        cs.run(&id, "slice-coisotropic", 1e-8, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let c = slice_sample(&vv, &rep, &mut rng);
                worst = worst.max(slice_coisotropy_dev(&c, &vv, &r)?);
            }
            Ok(worst)
        });
    }
    // weak pair + moment ranks + cell tangency per pair
    for (u, v) in ctx.pairs("poisson-pairs") {
        let tag = pair_tag(&u, &v);
        let id = format!("poisson/weak-pair/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "weak-poisson-pair", 1e-8, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let p = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                worst = worst.max(weak_pair_dev(&p, &tol)?);
            }
            Ok(worst)
        });
        let id = format!("poisson/moment-ranks/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "moment-submersions", 0.5, ctx.samples.min(5), || {
            for _ in 0..ctx.samples.min(5) {
                let p = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                let (ru, rv) = moment_submersion_ranks(&p, &tol)?;
                if ru != uu.length() || rv != vv.length() {
                    return Ok(1.0);
                }
            }
            Ok(0.0)
        });
        let id = format!("poisson/cell-tangency/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "cells-poisson-submanifolds", 1e-7, ctx.samples.min(5), || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples.min(5) {
                let p = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                worst = worst.max(cell_tangency_dev(&p, &r, &tol)?);
            }
            Ok(worst)
        });
    }
    // Poisson-map battery
    for (u, v) in ctx.pairs("poisson-maps") {
        let tag = pair_tag(&u, &v);
        let urep = WeylRep::canonical(&u);
        let vrep = WeylRep::canonical(&v);
        let group = GroupSpace::new(n, tol);

        // the embedding (g ↦ (g·B, b_-)) into the mixed product is Poisson
        let id = format!("poisson/embedding-poisson/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        let (ur, vr) = (urep.clone(), vrep.clone());
        cs.run(&id, "embedding-poisson", 1e-8, ctx.samples, || {
            let prod = ProductSpace::new(uu.clone(), ur.clone(), tol);
            let pts: Vec<CMat> = (0..ctx.samples)
                .map(|_| sample_double_cell_rng(&uu, &vv, &mut rng, &tol).map(|p| p.g))
                .collect::<Result<_>>()?;
            let vr2 = vr.clone();
            let phi = |jets: &Mat<Jet>| -> Result<Mat<Jet>> {
                let (bm, _) = right_c_factor(jets, &vr2, &tol)?;
                Ok(block_encode_jets(n, jets, &bm))
            };
            let chk = poisson_map_check(&group, &prod, phi, &pts, 1.0)?;
            Ok(chk.max_dev)
        });

        // the projection b_-c ↦ b_- is Poisson onto B_-
        let id = format!("poisson/projection-poisson/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        let vr = vrep.clone();
        cs.run(&id, "left-factor-projection-poisson", 1e-8, ctx.samples, || {
            let bspace = BMinusSpace::new(n, tol);
            let pts: Vec<CMat> = (0..ctx.samples)
                .map(|_| sample_double_cell_rng(&uu, &vv, &mut rng, &tol).map(|p| p.g))
                .collect::<Result<_>>()?;
            let vr2 = vr.clone();
            let phi = |jets: &Mat<Jet>| -> Result<Mat<Jet>> {
                let (bm, _) = right_c_factor(jets, &vr2, &tol)?;
                Ok(bm)
            };
            let chk = poisson_map_check(&group, &bspace, phi, &pts, 1.0)?;
            Ok(chk.max_dev)
        });

        // moment maps: ϖ Poisson to the flag cell, ϖ^{u,v}_v̄ anti-Poisson
        let id = format!("poisson/source-moment-poisson/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        let ur = urep.clone();
        cs.run(&id, "source-pushforward", 1e-8, ctx.samples, || {
            let flag = FlagCellSpace::new(uu.clone(), ur.clone(), tol);
            let pts: Vec<CMat> = (0..ctx.samples)
                .map(|_| sample_double_cell_rng(&uu, &vv, &mut rng, &tol).map(|p| p.g))
                .collect::<Result<_>>()?;
            let chk = poisson_map_check(&group, &flag, |jets| Ok(jets.clone()), &pts, 1.0)?;
            Ok(chk.max_dev)
        });
        let id = format!("poisson/target-moment-anti/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        let vr = vrep.clone();
        cs.run(&id, "target-pushforward-anti", 1e-8, ctx.samples, || {
            let flag = FlagCellSpace::new(vv.clone(), vr.clone(), tol);
            let pts: Vec<CMat> = (0..ctx.samples)
                .map(|_| sample_double_cell_rng(&uu, &vv, &mut rng, &tol).map(|p| p.g))
                .collect::<Result<_>>()?;
            let vr2 = vr.clone();
            let phi = |jets: &Mat<Jet>| -> Result<Mat<Jet>> {
                let (_, c) = right_c_factor(jets, &vr2, &tol)?;
                Ok(c)
            };
            let chk = poisson_map_check(&group, &flag, phi, &pts, -1.0)?;
            Ok(chk.max_dev)
        });

        // the twist is anti-Poisson
        let id = format!("poisson/twist-anti/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        let (ur, vr) = (urep.clone(), vrep.clone());
        cs.run(&id, "twist-anti-poisson", 1e-8, ctx.samples, || {
            let pts: Vec<CMat> = (0..ctx.samples)
                .map(|_| sample_double_cell_rng(&uu, &vv, &mut rng, &tol).map(|p| p.g))
                .collect::<Result<_>>()?;
            let (ur2, vr2) = (ur.clone(), vr.clone());
            let phi = move |jets: &Mat<Jet>| -> Result<Mat<Jet>> {
                let (c, _) = crate::cells::left_c_factor(jets, &ur2, &tol)?;
                let (bm, _) = right_c_factor(jets, &vr2, &tol)?;
                Ok(bm.inverse()?.mul(&c))
            };
            let chk = poisson_map_check(&group, &group, phi, &pts, -1.0)?;
            Ok(chk.max_dev)
        });
    }
    // Φ_v̄ anti-Poisson between the one-sided quotients
    for v in ctx.elements() {
        if v.length() == 0 {
            continue;
        }
        let id = format!("poisson/coset-flag-anti/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let rep = WeylRep::canonical(&v);
        let vv = v.clone();
        cs.run(&id, "coset-to-flag-anti-poisson", 1e-8, ctx.samples, || {
            let coset = CosetCellSpace::new(vv.clone(), rep.clone(), tol);
            let flag = FlagCellSpace::new(vv.clone(), rep.clone(), tol);
            let pts: Vec<CMat> = (0..ctx.samples)
                .map(|_| slice_sample(&vv, &rep, &mut rng))
                .collect();
            let chk = poisson_map_check(&coset, &flag, |jets| Ok(jets.clone()), &pts, -1.0)?;
            Ok(chk.max_dev)
        });
    }
    // X_α left invariance (mixed-structure multiplicativity surrogate)
    for v in ctx.elements() {
        if v.length() == 0 {
            continue;
        }
        let id = format!("poisson/xalpha-invariance/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let rep = WeylRep::canonical(&v);
        let vv = v.clone();
        cs.run(&id, "mixed-multiplicativity-core", 1e-7, ctx.samples.min(5), || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples.min(5) {
                worst = worst.max(xalpha_invariance_dev(&vv, &rep, &mut rng, &tol)?);
            }
            Ok(worst)
        });
    }
    // the n = 2 full conormal certificates
    if n == 2 {
        let id = "poisson/graph-coisotropy-mul".to_string();
        let mut rng = ctx.rng(&id);
        cs.run(&id, "multiplication-graph-coisotropic", 1e-7, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                worst = worst.max(golden::sl2_mul_graph_dev(&mut rng, &r, &tol)?);
            }
            Ok(worst)
        });
        let id = "poisson/graph-coisotropy-action".to_string();
        let mut rng = ctx.rng(&id);
        cs.run(&id, "action-graph-coisotropic", 1e-7, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                worst = worst.max(golden::sl2_action_graph_dev(&mut rng, &r, &tol)?);
            }
            Ok(worst)
        });
    }
    let _ = w0;
    cs.out
}

// ---------------------------------------------------------------------
// groupoid suite
// ---------------------------------------------------------------------

fn groupoid_suite(ctx: &Ctx) -> Vec<CheckResult> {
    let mut cs = CheckSet {
        suite: "groupoid",
        out: Vec::new(),
        n: ctx.n,
    };
    let tol = ctx.tol;
    let n = ctx.n;
    for v in ctx.elements() {
        let rep = WeylRep::canonical(&v);
        let id = format!("groupoid/axioms/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let vv = v.clone();
        let rp = rep.clone();
        cs.run(&id, "groupoid-axioms", 1e-8, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let p = sample_double_cell_rng(&vv, &vv, &mut rng, &tol)?;
                let p = CellPoint::with_reps(
                    p.g,
                    vv.clone(),
                    vv.clone(),
                    rp.clone(),
                    rp.clone(),
                    &tol,
                )?;
                let g = GroupoidElement::new(p)?;
                let h = sample_composable(&g, &mut rng, &tol)?;
                let k = sample_composable(&h, &mut rng, &tol)?;
                let scale = g.pt.g.max_abs().max(1.0);
                let left = gpd_mul(&gpd_mul(&g, &h, &tol)?, &k, &tol)?;
                let right = gpd_mul(&g, &gpd_mul(&h, &k, &tol)?, &tol)?;
                worst = worst.max(left.pt.g.dist(&right.pt.g) / scale);
                let eps_t = identity_bisection(g.tau(), &tol)?;
                worst = worst.max(gpd_mul(&g, &eps_t, &tol)?.pt.g.dist(&g.pt.g) / scale);
                let eps_s = identity_bisection(g.theta(), &tol)?;
                worst = worst.max(gpd_mul(&eps_s, &g, &tol)?.pt.g.dist(&g.pt.g) / scale);
                let gi = g.inverse(&tol)?;
                worst = worst.max(gpd_mul(&g, &gi, &tol)?.pt.g.dist(&eps_s.pt.g) / scale);
                worst = worst.max(gi.inverse(&tol)?.pt.g.dist(&g.pt.g) / scale);
                let m = gpd_mul(&g, &h, &tol)?;
                worst = worst.max(m.theta().dist(g.theta()));
                worst = worst.max(m.tau().dist(h.tau()));
            }
            Ok(worst)
        });
        // embedding intertwines the structure maps
        let id = format!("groupoid/embedding-intertwines/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let vv = v.clone();
        let rp = rep.clone();
        cs.run(&id, "embedding-subgroupoid", 1e-7, ctx.samples.min(8), || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples.min(8) {
                let p = sample_double_cell_rng(&vv, &vv, &mut rng, &tol)?;
                let p = CellPoint::with_reps(
                    p.g,
                    vv.clone(),
                    vv.clone(),
                    rp.clone(),
                    rp.clone(),
                    &tol,
                )?;
                let g = GroupoidElement::new(p.clone())?;
                let ig = embed_iv(&p, &tol)?;
                worst = worst.max(ig.theta().dist(g.theta()));
                worst = worst.max(ig.tau_in_cell(&vv, &rp, &tol)?.dist(g.tau()));
                let h = sample_composable(&g, &mut rng, &tol)?;
                let ih = embed_iv(&h.pt, &tol)?;
                let prod_amb = action_gpd_mul(&ig, &ih, &tol)?;
                let prod = gpd_mul(&g, &h, &tol)?;
                let iprod = embed_iv(&prod.pt, &tol)?;
                worst = worst
                    .max(prod_amb.b_minus.dist(&iprod.b_minus) / iprod.b_minus.max_abs().max(1.0));
                worst = worst.max(prod_amb.flag.dist(&iprod.flag));
            }
            Ok(worst)
        });
        // representative independence
        let id = format!("groupoid/rep-independence/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let vv = v.clone();
        let rp = rep.clone();
        cs.run(&id, "representative-independence", 1e-7, ctx.samples.min(5), || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples.min(5) {
                let tw = TorusElement::random(n, &mut rng);
                let rep2 = WeylRep::twisted(&vv, &tw);
                let p = sample_double_cell_rng(&vv, &vv, &mut rng, &tol)?;
                let g1 = GroupoidElement::from_matrix(p.g.clone(), &vv, &rp, &tol)?;
                let h1 = sample_composable(&g1, &mut rng, &tol)?;
                let m1 = gpd_mul(&g1, &h1, &tol)?;
                let lt = tw.matrix();
                let g2 = GroupoidElement::from_matrix(lt.mul(&g1.pt.g), &vv, &rep2, &tol)?;
                let h2 = GroupoidElement::from_matrix(lt.mul(&h1.pt.g), &vv, &rep2, &tol)?;
                let m2 = gpd_mul(&g2, &h2, &tol)?;
                let expect = lt.mul(&m1.pt.g);
                worst = worst.max(m2.pt.g.dist(&expect) / expect.max_abs().max(1.0));
            }
            Ok(worst)
        });
    }
    // ambient action groupoid axioms
    let id = "groupoid/action-axioms".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "action-groupoid-axioms", 1e-8, ctx.samples, || {
        let mut worst: f64 = 0.0;
        let mut done = 0;
        let mut guard = 0;
        while done < ctx.samples && guard < ctx.samples * 20 {
            guard += 1;
            let g0 = crate::cells::sample_sl(n, &mut rng, &tol);
            let flag = crate::cells::flag_canonical(&g0, &tol)?;
            let mk = |rng: &mut ChaCha8Rng| {
                let t = TorusElement::random(n, rng);
                let mut m = t.matrix();
                for i in 0..n {
                    for j in 0..i {
                        let mut e = CMat::identity(n);
                        e[(i, j)] = crate::weyl::annulus(rng);
                        m = m.mul(&e);
                    }
                }
                m
            };
            let a = crate::groupoid::ActionGroupoidElement::new(flag, mk(&mut rng), &tol)?;
            let Ok(tb) = a.tau(&tol) else { continue };
            let b = crate::groupoid::ActionGroupoidElement::new(tb, mk(&mut rng), &tol)?;
            let Ok(tc) = b.tau(&tol) else { continue };
            let c = crate::groupoid::ActionGroupoidElement::new(tc, mk(&mut rng), &tol)?;
            let (Ok(ab), Ok(bc)) = (action_gpd_mul(&a, &b, &tol), action_gpd_mul(&b, &c, &tol))
            else {
                continue;
            };
            let l = action_gpd_mul(&ab, &c, &tol)?;
            let r2 = action_gpd_mul(&a, &bc, &tol)?;
            worst = worst.max(l.b_minus.dist(&r2.b_minus) / l.b_minus.max_abs().max(1.0));
            worst = worst.max(l.flag.dist(&r2.flag));
            let ai = a.inverse(&tol)?;
            let aai = action_gpd_mul(&a, &ai, &tol)?;
            worst = worst.max(aai.b_minus.dist(&CMat::identity(n)));
            done += 1;
        }
        Ok(worst)
    });
    // commuting actions per pair
    for (u, v) in ctx.pairs("groupoid-actions") {
        let tag = pair_tag(&u, &v);
        let id = format!("groupoid/commuting-actions/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "left-right-actions-commute", 1e-7, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let x = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                let g = sample_with_target(&x.flag_left()?, &mut rng, &tol)?;
                let h = sample_with_source(&x.flag_right()?, &mut rng, &tol)?;
                let gx = act_left(&g, &x, &tol)?;
                let xh = act_right(&x, &h, &tol)?;
                let lhs = act_right(&gx, &h, &tol)?;
                let rhs = act_left(&g, &xh, &tol)?;
                worst = worst.max(lhs.g.dist(&rhs.g) / lhs.g.max_abs().max(1.0));
                // identity acts trivially from the left
                let eps = identity_bisection(&x.flag_left()?, &tol)?;
                worst = worst.max(act_left(&eps, &x, &tol)?.g.dist(&x.g) / x.g.max_abs().max(1.0));
            }
            Ok(worst)
        });
        // twist: involution and cell swap
        let id = format!("groupoid/twist-involution/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "twist-involution", 1e-7, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let p = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                let q = crate::groupoid::twist(&p, &tol)?;
                if ctx.n <= 3 {
                    let (qu, qv) = crate::cells::bruhat_cell_of(&q.g, &tol)?;
                    if qu != vv || qv != uu {
                        return Ok(f64::INFINITY);
                    }
                }
                let back = crate::groupoid::twist(&q, &tol)?;
                worst = worst.max(back.g.dist(&p.g) / p.g.max_abs().max(1.0));
            }
            Ok(worst)
        });
    }
    cs.out
}

// ---------------------------------------------------------------------
// leaves suite
// ---------------------------------------------------------------------

fn leaves_suite(ctx: &Ctx) -> Vec<CheckResult> {
    let mut cs = CheckSet {
        suite: "leaves",
        out: Vec::new(),
        n: ctx.n,
    };
    let tol = ctx.tol;
    let n = ctx.n;
    let r = ctx.r.clone();
    for (u, v) in ctx.pairs("leaves") {
        let tag = pair_tag(&u, &v);
        // χ translation identity and T^{u,v} membership oracle
        let id = format!("leaves/chi-quotient/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "chi-translation-and-membership", 1e-7, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let p = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                let a = TorusElement::random(n, &mut rng);
                let pa = translate_right(&p, &a, &tol)?;
                let ratio = chi_rep(&pa, &tol)?
                    .mul(&chi_rep(&p, &tol)?.inverse())
                    .mul(&a.mul(&a).inverse());
                worst = worst.max(crate::leaves::tuv_member_dev(&ratio, &uu, &vv));
                // definitional membership oracle
                let t = TorusElement::random(n, &mut rng);
                let elem = torus_conjugate(&t, &uu).inverse().mul(&torus_conjugate(&t, &vv));
                worst = worst.max(crate::leaves::tuv_member_dev(&elem, &uu, &vv));
            }
            Ok(worst)
        });
        // census cross-check (exact integer identity)
        let id = format!("leaves/census/{}", tag);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "leaf-count-power-of-two", 0.5, 1, || {
            let census = LeafCensus::new(&uu, &vv);
            Ok(if census.order2_crosscheck(&tol) { 0.0 } else { 1.0 })
        });
        // square identity + casimirs + rank formula
        let id = format!("leaves/invariants/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        let rr = r.clone();
        cs.run(&id, "leaf-invariants", 1e-8, ctx.samples, || {
            let mut worst: f64 = 0.0;
            for _ in 0..ctx.samples {
                let p = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                worst = worst.max(square_identity_dev(&p, &tol)?);
                worst = worst.max(casimir_minor_dev(&p, &rr)?);
                worst = worst.max(casimir_chi_dev(&p, &rr, &tol)?);
                if leaf_rank(&p, &rr, &tol)? != leaf_dim_formula(&uu, &vv) {
                    return Ok(f64::INFINITY);
                }
            }
            Ok(worst)
        });
        // leaf invariance under both groupoid actions
        let id = format!("leaves/action-invariance/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "actions-preserve-leaves", 0.5, ctx.samples.min(5), || {
            let urep = WeylRep::canonical(&uu);
            let vrep = WeylRep::canonical(&vv);
            let base_u = CellPoint::with_reps(
                urep.matrix.clone(),
                uu.clone(),
                uu.clone(),
                urep.clone(),
                urep.clone(),
                &tol,
            )?;
            let base_v = CellPoint::with_reps(
                vrep.matrix.clone(),
                vv.clone(),
                vv.clone(),
                vrep.clone(),
                vrep.clone(),
                &tol,
            )?;
            for _ in 0..ctx.samples.min(5) {
                let x = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                // left action by an element of Σ^ū (left torus translation
                // to the leaf keeps the target flag, hence composability)
                let g0 = sample_with_target(&x.flag_left()?, &mut rng, &tol)?;
                let g_leaf = crate::leaves::move_to_leaf_of_left(&g0.pt, &base_u, &tol)?;
                if same_leaf(&g_leaf, &base_u, &tol)? {
                    let g = GroupoidElement::new(g_leaf)?;
                    let gx = act_left(&g, &x, &tol)?;
                    if !same_leaf(&gx, &x, &tol)? {
                        return Ok(1.0);
                    }
                }
                // right action by an element of Σ^v̄
                let h0 = sample_with_source(&x.flag_right()?, &mut rng, &tol)?;
                let h_leaf = move_to_leaf_of(&h0.pt, &base_v, &tol)?;
                if same_leaf(&h_leaf, &base_v, &tol)? {
                    let h = GroupoidElement::new(h_leaf)?;
                    let xh = act_right(&x, &h, &tol)?;
                    if !same_leaf(&xh, &x, &tol)? {
                        return Ok(1.0);
                    }
                }
            }
            Ok(0.0)
        });
        // twist maps leaves to leaves (same-leaf pairs stay same-leaf,
        // different-leaf pairs stay different)
        let id = format!("leaves/twist-maps-leaves/{}", tag);
        let mut rng = ctx.rng(&id);
        let (uu, vv) = (u.clone(), v.clone());
        cs.run(&id, "twist-respects-leaves", 0.5, ctx.samples.min(5), || {
            for _ in 0..ctx.samples.min(5) {
                let x1 = sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?;
                let x2 = move_to_leaf_of(&sample_double_cell_rng(&uu, &vv, &mut rng, &tol)?, &x1, &tol)?;
                if !same_leaf(&x1, &x2, &tol)? {
                    continue;
                }
                let t1 = crate::groupoid::twist(&x1, &tol)?;
                let t2 = crate::groupoid::twist(&x2, &tol)?;
                if !same_leaf(&t1, &t2, &tol)? {
                    return Ok(1.0);
                }
                // off-leaf control: a generic torus translate leaves the leaf
                let a = TorusElement::random(n, &mut rng);
                let y = translate_right(&x1, &a, &tol)?;
                if !same_leaf(&x1, &y, &tol)? {
                    let ty = crate::groupoid::twist(&y, &tol)?;
                    if same_leaf(&t1, &ty, &tol)? {
                        return Ok(1.0);
                    }
                }
            }
            Ok(0.0)
        });
    }
    // Σ^v̄ leaf groupoid closure and nondegeneracy
    for v in ctx.elements() {
        let id = format!("leaves/sigma-groupoid/{}", elem_tag(&v));
        let mut rng = ctx.rng(&id);
        let rep = WeylRep::canonical(&v);
        let vv = v.clone();
        let rr = r.clone();
        cs.run(&id, "leaf-symplectic-groupoid", 0.5, ctx.samples.min(5), || {
            Ok(
                if leaf_groupoid_check(&vv, &rep, &mut rng, ctx.samples.min(5), &rr, &tol)? {
                    0.0
                } else {
                    1.0
                },
            )
        });
    }
    // dressing flow stays on the leaf; rank constant along the flow
    let id = "leaves/dressing-flow".to_string();
    let mut rng = ctx.rng(&id);
    let rr = r.clone();
    cs.run(&id, "leaf-invariant-under-dressing-flow", 0.5, 3, || {
        let w0 = WeylElement::longest(n);
        let mut done = 0;
        let mut attempts = 0;
        while done < 3 && attempts < 60 {
            attempts += 1;
            let p = sample_double_cell_rng(&w0, &w0, &mut rng, &tol)?;
            let xi = &dual_basis(n)[attempts % dual_basis(n).len()];
            // flows can blow up in finite time: redraw on overflow; require
            // step-doubling agreement so only resolved trajectories certify
            let Ok(mut flowed) = dressing_flow(&p.g, xi, 100, 1e-2) else {
                continue;
            };
            let Ok(fine) = dressing_flow(&p.g, xi, 200, 5e-3) else {
                continue;
            };
            if flowed.dist(&fine) > 1e-7 * flowed.max_abs().max(1.0) {
                continue;
            }
            // remove the integrator's determinant drift
            let det = flowed.det();
            let fix = cr(1.0) / det.powf(1.0 / n as f64);
            flowed = flowed.scale(fix);
            let Ok(q) = CellPoint::with_reps(
                flowed,
                p.u.clone(),
                p.v.clone(),
                p.urep.clone(),
                p.vrep.clone(),
                &tol,
            ) else {
                continue;
            };
            let relaxed = Tolerance::new(1e-5, tol.tol_rank, 1e-5);
            if !same_leaf(&p, &q, &relaxed)? {
                return Ok(1.0);
            }
            if leaf_rank(&p, &rr, &tol)? != leaf_rank(&q, &rr, &tol)? {
                return Ok(1.0);
            }
            done += 1;
        }
        Ok(if done == 3 { 0.0 } else { 1.0 })
    });
    cs.out
}

// ---------------------------------------------------------------------
// golden suite (n-independent; runs the worked low-rank examples)
// ---------------------------------------------------------------------

fn golden_suite(ctx: &Ctx) -> Vec<CheckResult> {
    let mut cs = CheckSet {
        suite: "golden",
        out: Vec::new(),
        n: ctx.n,
    };
    let tol = ctx.tol;
    let r2 = RMatrix::standard(2);

    let id = "golden/sl2-bracket-table".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "sl2-coordinate-brackets", 1e-9, 20, || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let g = crate::cells::sample_sl(2, &mut rng, &tol);
            worst = worst.max(golden::sl2_bracket_table_dev(&g, &r2)?);
        }
        Ok(worst)
    });
    let id = "golden/sl2-cell-brackets".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "sl2-cell-chart-brackets", 1e-9, 20, || {
        let mut worst: f64 = 0.0;
        let mut done = 0;
        while done < 20 {
            let z = crate::weyl::annulus(&mut rng);
            let a = crate::weyl::annulus(&mut rng);
            let b = crate::weyl::annulus(&mut rng);
            if (cr(1.0) - a * b * z).norm() < 0.05 {
                continue;
            }
            worst = worst.max(golden::sl2_cell_bracket_dev(z, a, b, &r2)?);
            done += 1;
        }
        Ok(worst)
    });
    let id = "golden/sl2-groupoid-tables".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "sl2-groupoid-chart-formulas", 1e-9, 20, || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            worst = worst.max(golden::sl2_groupoid_table_dev(&mut rng, &tol)?);
        }
        Ok(worst)
    });
    let id = "golden/sl2-leaf-brackets".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "sl2-leaf-chart-brackets", 1e-9, 20, || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let (p, q, t) = golden::sl2_leaf_sample(&mut rng);
            worst = worst.max(golden::sl2_leaf_bracket_dev(p, q, t, &r2)?);
        }
        Ok(worst)
    });
    let id = "golden/sl3-pi1".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "sl3-quotient-bracket", 1e-8, 20, || {
        let v = WeylElement::from_oneline(&[2, 3, 1]);
        let rep = WeylRep::canonical(&v);
        let flag = FlagCellSpace::new(v.clone(), rep.clone(), tol);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let coords: Vec<C64> = (0..2).map(|_| crate::weyl::annulus(&mut rng)).collect();
            let fp = FlagPoint {
                cell: v.clone(),
                rep: rep.clone(),
                coords: coords.clone(),
            };
            let pi = pi1_via_pushforward(&flag, &fp)?;
            let expect = -coords[0] * coords[1];
            worst = worst.max((pi[(0, 1)] - expect).norm() / expect.norm().max(1.0));
        }
        Ok(worst)
    });
    let id = "golden/sl3-groupoid-tables".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "sl3-leaf-groupoid-formulas", 1e-8, 20, || {
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            worst = worst.max(golden::sl3_groupoid_table_dev(&mut rng, &tol)?);
        }
        Ok(worst)
    });
    let id = "golden/sl2-inverse-embedding".to_string();
    let mut rng = ctx.rng(&id);
    cs.run(&id, "sl2-inverse-embedding-formula", 1e-9, 20, || {
        // J_s̄([[a,b],[c,d]]) = ([a, −b], [[−1/b, 0],[d, −b]])
        let s = WeylElement::simple(2, 1);
        let rep = WeylRep::canonical(&s);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let a = crate::weyl::annulus(&mut rng);
            let b = crate::weyl::annulus(&mut rng);
            let c = crate::weyl::annulus(&mut rng);
            let d = (cr(1.0) + b * c) / a;
            let g = CMat::from_fn(2, 2, |i, j| match (i, j) {
                (0, 0) => a,
                (0, 1) => b,
                (1, 0) => c,
                (1, 1) => d,
                _ => unreachable!(),
            });
            let Ok((u, v)) = crate::cells::bruhat_cell_of(&g, &tol) else {
                continue;
            };
            if v != s {
                continue;
            }
            let p = CellPoint::with_reps(g, u.clone(), v, WeylRep::canonical(&u), rep.clone(), &tol)?;
            let j = crate::groupoid::embed_jv(&p, &tol)?;
            worst = worst.max((j.flag.coords[0] - a / (-b)).norm() / (a / b).norm().max(1.0));
            let expect = CMat::from_fn(2, 2, |i, jj| match (i, jj) {
                (0, 0) => -cr(1.0) / b,
                (1, 0) => d,
                (1, 1) => -b,
                _ => cr(0.0),
            });
            worst = worst.max(j.b_minus.dist(&expect) / expect.max_abs().max(1.0));
        }
        Ok(worst)
    });
    // closed form of the bivector at representatives, at the configured n
    for v in ctx.elements() {
        let id = format!("golden/pist-at-rep/{}", elem_tag(&v));
        let rep = WeylRep::canonical(&v);
        let vv = v.clone();
        let rn = ctx.r.clone();
        cs.run(&id, "bivector-at-representative", 1e-9, 1, || {
            golden::pist_at_rep_dev(&vv, &rep, &rn)
        });
    }
    cs.out
}

/// Run the selected suites and assemble the report; deterministic given
/// (n, seed, samples): every check derives its own stream from the master
/// seed and its id, so execution order cannot perturb the numbers.
pub fn run_verification(cfg: &RunConfig) -> Report {
    let ctx = Ctx {
        n: cfg.n,
        seed: cfg.seed,
        samples: cfg.samples,
        tol: cfg.tol,
        r: RMatrix::standard(cfg.n),
    };
    let mut checks = Vec::new();
    for suite in &cfg.suites {
        let mut batch = match suite {
            Suite::Factorize => factorize_suite(&ctx),
            Suite::Poisson => poisson_suite(&ctx),
            Suite::Groupoid => groupoid_suite(&ctx),
            Suite::Leaves => leaves_suite(&ctx),
            Suite::Golden => golden_suite(&ctx),
        };
        checks.append(&mut batch);
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let pass = checks.iter().all(|c| c.pass);
    Report {
        schema: "dbc-report/1".to_string(),
        n: cfg.n,
        seed: cfg.seed,
        samples: cfg.samples,
        timestamp: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        pass,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_suite_passes_quickly() {
        let cfg = RunConfig {
            n: 2,
            seed: 42,
            samples: 5,
            tol: Tolerance::default(),
            suites: vec![Suite::Golden],
        };
        let report = run_verification(&cfg);
        for c in &report.checks {
            assert!(c.pass, "check {} failed: dev {} note {:?}", c.id, c.max_dev, c.note);
        }
        assert!(report.pass);
    }

    #[test]
    fn determinism_modulo_timestamp() {
        let cfg = RunConfig {
            n: 2,
            seed: 7,
            samples: 3,
            tol: Tolerance::default(),
            suites: vec![Suite::Factorize, Suite::Golden],
        };
        let r1 = run_verification(&cfg);
        let r2 = run_verification(&cfg);
        assert_eq!(r1.canonical_json(), r2.canonical_json());
    }
}
