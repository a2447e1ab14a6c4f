//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its worst deviation. Tolerances and sample counts are pinned here,
//! not configurable. Wall-clock budgets are asserted in optimized builds
//! only; debug builds still run the full mathematics.

use dbc::cells::{sample_double_cell_rng, CellPoint};
use dbc::golden;
use dbc::groupoid::{
    act_left, act_right, action_gpd_mul, gpd_mul, identity_bisection, sample_composable,
    sample_with_source, sample_with_target, GroupoidElement,
};
use dbc::leaves::{
    casimir_chi_dev, casimir_minor_dev, leaf_rank, move_to_leaf_of, move_to_leaf_of_left,
    same_leaf, sample_sigma_point, square_identity_dev, LeafCensus,
};
use dbc::num::{cond, Tolerance};
use dbc::poisson::{
    dressing_membership_dev, dressing_vs_sharp, dual_basis, entry_obs, jacobi_dev,
    multiplicativity_dev, pist_coeffs, slice_coisotropy_dev, slice_sample, weak_pair_dev, RMatrix,
};
use dbc::verify::{run_verification, RunConfig, Suite};
use dbc::weyl::{TorusElement, WeylElement, WeylRep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn assert_budget(what: &str, start: Instant, secs: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    if cfg!(debug_assertions) {
        println!("          ({} took {:.1}s; budget {:.0}s applies to optimized builds)", what, elapsed, secs);
    } else {
        assert!(
            elapsed < secs,
            "{} took {:.1}s, over the {:.0}s budget",
            what,
            elapsed,
            secs
        );
    }
}

#[test]
fn criterion_1_sl2_golden_brackets() {
    let start = Instant::now();
    let tol = Tolerance::default();
    let r = RMatrix::standard(2);
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let g = dbc::cells::sample_sl(2, &mut rng, &tol);
        worst = worst.max(golden::sl2_bracket_table_dev(&g, &r).unwrap());
    }
    assert!(worst <= 1e-9, "criterion 1 FAIL: dev {}", worst);
    assert_budget("criterion 1", start, 1.0);
    println!("criterion 1 PASS: twenty SL(2) points, six brackets each, worst dev {:.2e}", worst);
}

#[test]
fn criterion_2_sl2_groupoid_tables() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        worst = worst.max(golden::sl2_groupoid_table_dev(&mut rng, &tol).unwrap());
    }
    assert!(worst <= 1e-9, "criterion 2 FAIL: dev {}", worst);
    println!(
        "criterion 2 PASS: source/target/inverse/identity/multiplication and the leaf-chart tables, worst dev {:.2e}",
        worst
    );
}

#[test]
fn criterion_3_sl3_golden() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut worst: f64 = 0.0;
    // {z1, z2} = -z1 z2 on the cell of s1 s2
    let v = WeylElement::from_oneline(&[2, 3, 1]);
    let rep = WeylRep::canonical(&v);
    let flag = dbc::poisson::FlagCellSpace::new(v.clone(), rep.clone(), tol);
    for _ in 0..20 {
        let coords = vec![dbc::weyl::annulus(&mut rng), dbc::weyl::annulus(&mut rng)];
        let fp = dbc::cells::FlagPoint {
            cell: v.clone(),
            rep: rep.clone(),
            coords: coords.clone(),
        };
        let pi = dbc::poisson::pi1_via_pushforward(&flag, &fp).unwrap();
        let expect = -coords[0] * coords[1];
        worst = worst.max((pi[(0, 1)] - expect).norm() / expect.norm().max(1.0));
    }
    // the six-variable leaf-groupoid tables
    for _ in 0..20 {
        worst = worst.max(golden::sl3_groupoid_table_dev(&mut rng, &tol).unwrap());
    }
    assert!(worst <= 1e-8, "criterion 3 FAIL: dev {}", worst);
    println!("criterion 3 PASS: SL(3) quotient bracket and six-variable groupoid tables, worst dev {:.2e}", worst);
}

#[test]
fn criterion_4_poisson_map_suite() {
    let start = Instant::now();
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;
    let mut matched = 0usize;
    for n in [2usize, 3] {
        let cfg = RunConfig {
            n,
            seed: 1004,
            samples: 20,
            tol,
            suites: vec![Suite::Poisson],
        };
        let report = run_verification(&cfg);
        for c in &report.checks {
            let relevant = c.id.contains("embedding-poisson")
                || c.id.contains("projection-poisson")
                || c.id.contains("coset-flag-anti")
                || c.id.contains("twist-anti")
                || c.id.contains("source-moment-poisson")
                || c.id.contains("target-moment-anti");
            if relevant {
                assert!(
                    c.pass && c.max_dev <= 1e-8,
                    "criterion 4 FAIL at {}: dev {}",
                    c.id,
                    c.max_dev
                );
                matched += 1;
                worst = worst.max(c.max_dev);
            }
        }
    }
    // every v at both ranks contributes its battery of map checks
    assert!(matched >= 4 * 4 + 4 * 36 + 1 + 5, "criterion 4 FAIL: only {} map checks ran", matched);
    assert_budget("criterion 4", start, 30.0);
    println!(
        "criterion 4 PASS: embedding, projection, coset-flag, twist, and moment pushforwards at n = 2, 3, worst dev {:.2e}",
        worst
    );
}

#[test]
fn criterion_5_groupoid_axioms() {
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;
    for n in [2usize, 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(1005 + n as u64);
        for v in WeylElement::all(n) {
            let rep = WeylRep::canonical(&v);
            for _ in 0..50 {
                let p = sample_double_cell_rng(&v, &v, &mut rng, &tol).unwrap();
                let p = CellPoint::with_reps(
                    p.g,
                    v.clone(),
                    v.clone(),
                    rep.clone(),
                    rep.clone(),
                    &tol,
                )
                .unwrap();
                let g = GroupoidElement::new(p).unwrap();
                let h = sample_composable(&g, &mut rng, &tol).unwrap();
                let k = sample_composable(&h, &mut rng, &tol).unwrap();
                let scale = g.pt.g.max_abs().max(1.0);
                let left = gpd_mul(&gpd_mul(&g, &h, &tol).unwrap(), &k, &tol).unwrap();
                let right = gpd_mul(&g, &gpd_mul(&h, &k, &tol).unwrap(), &tol).unwrap();
                worst = worst.max(left.pt.g.dist(&right.pt.g) / scale);
                let eps_s = identity_bisection(g.theta(), &tol).unwrap();
                let eps_t = identity_bisection(g.tau(), &tol).unwrap();
                worst = worst.max(gpd_mul(&eps_s, &g, &tol).unwrap().pt.g.dist(&g.pt.g) / scale);
                worst = worst.max(gpd_mul(&g, &eps_t, &tol).unwrap().pt.g.dist(&g.pt.g) / scale);
                let gi = g.inverse(&tol).unwrap();
                worst = worst.max(gpd_mul(&g, &gi, &tol).unwrap().pt.g.dist(&eps_s.pt.g) / scale);
            }
        }
        // ambient action groupoid: associativity and inverses over >= 50
        // random composable triples
        let mut done = 0;
        while done < 50 {
            let g0 = dbc::cells::sample_sl(n, &mut rng, &tol);
            let flag = dbc::cells::flag_canonical(&g0, &tol).unwrap();
            let mk = |rng: &mut ChaCha8Rng| {
                let t = TorusElement::random(n, rng);
                let mut m = t.matrix();
                for i in 0..n {
                    for j in 0..i {
                        let mut e = dbc::num::CMat::identity(n);
                        e[(i, j)] = dbc::weyl::annulus(rng);
                        m = m.mul(&e);
                    }
                }
                m
            };
            let a = dbc::groupoid::ActionGroupoidElement::new(flag, mk(&mut rng), &tol).unwrap();
            let Ok(tb) = a.tau(&tol) else { continue };
            let b = dbc::groupoid::ActionGroupoidElement::new(tb, mk(&mut rng), &tol).unwrap();
            let Ok(tc) = b.tau(&tol) else { continue };
            let c = dbc::groupoid::ActionGroupoidElement::new(tc, mk(&mut rng), &tol).unwrap();
            let (Ok(ab), Ok(bc)) = (action_gpd_mul(&a, &b, &tol), action_gpd_mul(&b, &c, &tol)) else {
                continue;
            };
            let l = action_gpd_mul(&ab, &c, &tol).unwrap();
            let r = action_gpd_mul(&a, &bc, &tol).unwrap();
            worst = worst.max(l.b_minus.dist(&r.b_minus) / l.b_minus.max_abs().max(1.0));
            worst = worst.max(l.flag.dist(&r.flag));
            let ai = a.inverse(&tol).unwrap();
            let aai = action_gpd_mul(&a, &ai, &tol).unwrap();
            worst = worst.max(aai.b_minus.dist(&dbc::num::CMat::identity(n)));
            done += 1;
        }
        // commuting actions over all pairs (>= 50 triples per rank)
        let all = WeylElement::all(n);
        for u in &all {
            for v in &all {
                for _ in 0..(if n == 3 { 6 } else { 13 }) {
                    let x = sample_double_cell_rng(u, v, &mut rng, &tol).unwrap();
                    let g = sample_with_target(&x.flag_left().unwrap(), &mut rng, &tol).unwrap();
                    let h = sample_with_source(&x.flag_right().unwrap(), &mut rng, &tol).unwrap();
                    let gx = act_left(&g, &x, &tol).unwrap();
                    let xh = act_right(&x, &h, &tol).unwrap();
                    let lhs = act_right(&gx, &h, &tol).unwrap();
                    let rhs = act_left(&g, &xh, &tol).unwrap();
                    worst = worst.max(lhs.g.dist(&rhs.g) / lhs.g.max_abs().max(1.0));
                    // ambient action groupoid: embed and multiply
                    let ig = dbc::groupoid::embed_iv(&g.pt, &tol).unwrap();
                    let hg = sample_composable(&g, &mut rng, &tol).unwrap();
                    let ih = dbc::groupoid::embed_iv(&hg.pt, &tol).unwrap();
                    let amb = action_gpd_mul(&ig, &ih, &tol).unwrap();
                    let dir = dbc::groupoid::embed_iv(&gpd_mul(&g, &hg, &tol).unwrap().pt, &tol)
                        .unwrap();
                    worst = worst
                        .max(amb.b_minus.dist(&dir.b_minus) / dir.b_minus.max_abs().max(1.0));
                }
            }
        }
    }
    assert!(worst <= 1e-9, "criterion 5 FAIL: dev {}", worst);
    println!("criterion 5 PASS: associativity, identities, inverses, commuting actions at n = 2, 3, worst dev {:.2e}", worst);
}

#[test]
fn criterion_5b_n4_smoke() {
    let start = Instant::now();
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1045);
    let mut worst: f64 = 0.0;
    // five samples per case on a seeded subset of diagonal cells
    let all = WeylElement::all(4);
    for v in all.iter().step_by(5) {
        let rep = WeylRep::canonical(v);
        for _ in 0..5 {
            let Ok(p) = sample_double_cell_rng(v, v, &mut rng, &tol) else {
                continue;
            };
            let p = CellPoint::with_reps(p.g, v.clone(), v.clone(), rep.clone(), rep.clone(), &tol)
                .unwrap();
            let g = GroupoidElement::new(p).unwrap();
            let h = sample_composable(&g, &mut rng, &tol).unwrap();
            let k = sample_composable(&h, &mut rng, &tol).unwrap();
            let scale = g.pt.g.max_abs().max(1.0);
            let left = gpd_mul(&gpd_mul(&g, &h, &tol).unwrap(), &k, &tol).unwrap();
            let right = gpd_mul(&g, &gpd_mul(&h, &k, &tol).unwrap(), &tol).unwrap();
            worst = worst.max(left.pt.g.dist(&right.pt.g) / scale);
            let gi = g.inverse(&tol).unwrap();
            worst = worst.max(gi.inverse(&tol).unwrap().pt.g.dist(&g.pt.g) / scale);
        }
    }
    assert!(worst <= 1e-8, "criterion 5 smoke FAIL: dev {}", worst);
    assert_budget("criterion 5 n=4 smoke", start, 120.0);
    println!("criterion 5 PASS (n = 4 smoke): five samples per case, worst dev {:.2e}", worst);
}

#[test]
fn criterion_6_leaf_suite() {
    let tol = Tolerance::default();
    let mut worst: f64 = 0.0;
    for n in [2usize, 3, 4] {
        let r = RMatrix::standard(n);
        let mut rng = ChaCha8Rng::seed_from_u64(1006 + n as u64);
        let all = WeylElement::all(n);
        let pairs: Vec<(WeylElement, WeylElement)> = if n <= 3 {
            all.iter()
                .flat_map(|u| all.iter().map(move |v| (u.clone(), v.clone())))
                .collect()
        } else {
            use rand::Rng;
            (0..10)
                .map(|_| {
                    (
                        all[rng.gen_range(0..all.len())].clone(),
                        all[rng.gen_range(0..all.len())].clone(),
                    )
                })
                .collect()
        };
        for (u, v) in &pairs {
            let census = LeafCensus::new(u, v);
            assert!(
                census.order2_crosscheck(&tol),
                "criterion 6 FAIL: census at ({:?},{:?})",
                u.oneline(),
                v.oneline()
            );
            let samples = if n <= 3 { 4 } else { 2 };
            for _ in 0..samples {
                let p = sample_double_cell_rng(u, v, &mut rng, &tol).unwrap();
                worst = worst.max(casimir_minor_dev(&p, &r).unwrap());
                worst = worst.max(casimir_chi_dev(&p, &r, &tol).unwrap());
                worst = worst.max(square_identity_dev(&p, &tol).unwrap());
            }
        }
        // nondegeneracy on the leaf through each representative
        if n <= 3 {
            for v in &all {
                let rep = WeylRep::canonical(v);
                let pt = sample_sigma_point(v, &rep, &mut rng, &tol).unwrap();
                assert_eq!(
                    leaf_rank(&pt, &r, &tol).unwrap(),
                    2 * v.length(),
                    "criterion 6 FAIL: leaf rank at v = {:?}",
                    v.oneline()
                );
            }
            // invariance under both actions
            for (u, v) in pairs.iter().take(12) {
                let urep = WeylRep::canonical(u);
                let vrep = WeylRep::canonical(v);
                let base_u = CellPoint::with_reps(
                    urep.matrix.clone(),
                    u.clone(),
                    u.clone(),
                    urep.clone(),
                    urep.clone(),
                    &tol,
                )
                .unwrap();
                let base_v = CellPoint::with_reps(
                    vrep.matrix.clone(),
                    v.clone(),
                    v.clone(),
                    vrep.clone(),
                    vrep.clone(),
                    &tol,
                )
                .unwrap();
                let x = sample_double_cell_rng(u, v, &mut rng, &tol).unwrap();
                let g0 = sample_with_target(&x.flag_left().unwrap(), &mut rng, &tol).unwrap();
                let g_leaf = move_to_leaf_of_left(&g0.pt, &base_u, &tol).unwrap();
                if same_leaf(&g_leaf, &base_u, &tol).unwrap() {
                    let g = GroupoidElement::new(g_leaf).unwrap();
                    let gx = act_left(&g, &x, &tol).unwrap();
                    assert!(
                        same_leaf(&gx, &x, &tol).unwrap(),
                        "criterion 6 FAIL: left action moved the leaf at ({:?},{:?})",
                        u.oneline(),
                        v.oneline()
                    );
                }
                let h0 = sample_with_source(&x.flag_right().unwrap(), &mut rng, &tol).unwrap();
                let h_leaf = move_to_leaf_of(&h0.pt, &base_v, &tol).unwrap();
                if same_leaf(&h_leaf, &base_v, &tol).unwrap() {
                    let h = GroupoidElement::new(h_leaf).unwrap();
                    let xh = act_right(&x, &h, &tol).unwrap();
                    assert!(
                        same_leaf(&xh, &x, &tol).unwrap(),
                        "criterion 6 FAIL: right action moved the leaf"
                    );
                }
            }
        }
    }
    assert!(worst <= 1e-8, "criterion 6 FAIL: dev {}", worst);
    println!("criterion 6 PASS: Casimirs, square identity, leaf ranks, action invariance, census; worst dev {:.2e}", worst);
}

#[test]
fn criterion_7_structural_suite() {
    let tol = Tolerance::default();
    let mut worst_mult: f64 = 0.0;
    let mut worst_jac: f64 = 0.0;
    let mut worst_ad: f64 = 0.0;
    let mut worst_rest: f64 = 0.0;
    for n in [2usize, 3] {
        let r = RMatrix::standard(n);
        let mut rng = ChaCha8Rng::seed_from_u64(1007 + n as u64);
        for _ in 0..100 {
            let g = dbc::cells::sample_sl(n, &mut rng, &tol);
            let h = dbc::cells::sample_sl(n, &mut rng, &tol);
            worst_mult = worst_mult.max(multiplicativity_dev(&g, &h, &r).unwrap());
        }
        for _ in 0..10 {
            use rand::Rng;
            let g = dbc::cells::sample_sl(n, &mut rng, &tol);
            let picks: Vec<(usize, usize)> = (0..3)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            let f0 = entry_obs(picks[0].0, picks[0].1);
            let f1 = entry_obs(picks[1].0, picks[1].1);
            let f2 = entry_obs(picks[2].0, picks[2].1);
            worst_jac = worst_jac.max(jacobi_dev([&f0, &f1, &f2], &g, &r).unwrap());
        }
        let s = r.symmetric_part();
        for _ in 0..20 {
            let g = loop {
                let g = dbc::cells::sample_sl(n, &mut rng, &tol);
                if cond(&g) < 100.0 {
                    break g;
                }
            };
            let m = dbc::poisson::adjoint_matrix(&g).unwrap();
            let moved = m.mul(&s).mul(&m.transpose());
            worst_ad = worst_ad.max(moved.dist(&s) / s.max_abs().max(moved.max_abs()).max(1.0));
        }
        // coisotropy of the slices
        for v in WeylElement::all(n) {
            let rep = WeylRep::canonical(&v);
            for _ in 0..5 {
                let c = slice_sample(&v, &rep, &mut rng);
                worst_rest = worst_rest.max(slice_coisotropy_dev(&c, &v, &r).unwrap());
            }
        }
        // weak pair and dressing memberships
        let all = WeylElement::all(n);
        for u in &all {
            for v in &all {
                let p = sample_double_cell_rng(u, v, &mut rng, &tol).unwrap();
                worst_rest = worst_rest.max(weak_pair_dev(&p, &tol).unwrap());
            }
        }
        for _ in 0..20 {
            let g = dbc::cells::sample_sl(n, &mut rng, &tol);
            worst_rest = worst_rest.max(dressing_membership_dev(&g).unwrap());
            let pi = pist_coeffs(&g, &r).unwrap();
            for xi in dual_basis(n) {
                worst_rest = worst_rest.max(dressing_vs_sharp(&xi, &g, &pi).unwrap());
            }
        }
    }
    assert!(worst_mult <= 1e-9, "criterion 7 FAIL: multiplicativity {}", worst_mult);
    assert!(worst_jac <= 1e-7, "criterion 7 FAIL: jacobi {}", worst_jac);
    assert!(worst_ad <= 1e-10, "criterion 7 FAIL: ad-invariance {}", worst_ad);
    assert!(worst_rest <= 1e-8, "criterion 7 FAIL: coisotropy/weak-pair/dressing {}", worst_rest);
    println!(
        "criterion 7 PASS: multiplicativity {:.2e}, jacobi {:.2e}, ad-invariance {:.2e}, slices/pairs/dressing {:.2e}",
        worst_mult, worst_jac, worst_ad, worst_rest
    );
}

#[test]
fn criterion_8_determinism() {
    // two runs of the binary with the same configuration produce identical
    // reports modulo the timestamp
    let exe = env!("CARGO_BIN_EXE_dbc");
    let run = |path: &str| {
        let out = std::process::Command::new(exe)
            .args([
                "verify", "--suite", "all", "--n", "3", "--seed", "42", "--samples", "4", "--out",
                path,
            ])
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "verify run failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v["timestamp"] = serde_json::json!(0);
        serde_json::to_string_pretty(&v).unwrap()
    };
    let dir = std::env::temp_dir();
    let p1 = dir.join("dbc-report-a.json");
    let p2 = dir.join("dbc-report-b.json");
    let r1 = run(p1.to_str().unwrap());
    let r2 = run(p2.to_str().unwrap());
    assert_eq!(r1, r2, "criterion 8 FAIL: reports differ beyond the timestamp");
    println!("criterion 8 PASS: byte-identical reports modulo timestamp");
}

#[test]
fn samples_zero_is_rejected() {
    let exe = env!("CARGO_BIN_EXE_dbc");
    let out = std::process::Command::new(exe)
        .args(["verify", "--n", "2", "--samples", "0"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2), "samples=0 must exit 2");
    println!("schema guard PASS: samples = 0 rejected with exit code 2");
}

#[test]
fn torus_element_sanity() {
    // direct witness that the order-2 enumeration squares to e
    let tol = Tolerance::default();
    for t in dbc::weyl::enumerate_order2(4) {
        assert!(t.mul(&t).is_identity(tol.tol_eq));
    }
}
