//! The symplectic leaf through a Weyl representative as a symplectic
//! groupoid: closure under the structure maps, nondegeneracy, and the
//! explicit (p, q, t) chart at SL(2).

use dbc::cells::CellPoint;
use dbc::golden::{sl2_leaf_matrix, sl2_leaf_sample};
use dbc::groupoid::{gpd_mul, GroupoidElement};
use dbc::leaves::{leaf_groupoid_check, leaf_rank, sample_sigma_point, same_leaf};
use dbc::num::{cr, Tolerance};
use dbc::poisson::RMatrix;
use dbc::weyl::{WeylElement, WeylRep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(314);

    // SL(2): the leaf through s̄ in the (p, q, t) chart, t²(1-pq) = 1
    let s = WeylElement::simple(2, 1);
    let rep = WeylRep::canonical(&s);
    let (p, q, t) = sl2_leaf_sample(&mut rng);
    let g = GroupoidElement::from_matrix(sl2_leaf_matrix(p, q, t), &s, &rep, &tol).unwrap();
    println!("leaf point (p, q, t) = ({:.4}, {:.4}, {:.4})", p, q, t);
    println!("  θ = τ = p: ({:.4}, {:.4})", g.theta().coords[0], g.tau().coords[0]);
    let gi = g.inverse(&tol).unwrap();
    let expect = sl2_leaf_matrix(p, -q * t * t, cr(1.0) / t);
    println!(
        "  ι(p,q,t) = (p, -q t², 1/t): residual {:.2e}",
        gi.pt.g.dist(&expect)
    );
    // composable partner shares p; the product multiplies the t's
    let (q2, t2) = loop {
        let (pp, qq, tt) = sl2_leaf_sample(&mut rng);
        let _ = pp;
        let w = cr(1.0) - p * qq;
        if w.norm() > 0.05 {
            let tt2 = (cr(1.0) / w).sqrt();
            let _ = tt;
            break (qq, tt2);
        }
    };
    let h = GroupoidElement::from_matrix(sl2_leaf_matrix(p, q2, t2), &s, &rep, &tol).unwrap();
    let m = gpd_mul(&g, &h, &tol).unwrap();
    let m_expect = sl2_leaf_matrix(p, q2 + q / (t2 * t2), t * t2);
    println!("  μ formula residual: {:.2e}", m.pt.g.dist(&m_expect));

    // SL(3): closure and nondegeneracy of the leaf groupoid for each v
    println!("\nSL(3) leaf groupoids:");
    let n = 3;
    let r = RMatrix::standard(n);
    for v in WeylElement::all(n) {
        let rep = WeylRep::canonical(&v);
        let ok = leaf_groupoid_check(&v, &rep, &mut rng, 4, &r, &tol).unwrap();
        let pt = sample_sigma_point(&v, &rep, &mut rng, &tol).unwrap();
        let base = CellPoint::with_reps(
            rep.matrix.clone(),
            v.clone(),
            v.clone(),
            rep.clone(),
            rep.clone(),
            &tol,
        )
        .unwrap();
        println!(
            "  v = {:?}: closed under μ and ι: {}, rank on leaf = {} (= 2·l(v) = {}), sample on leaf: {}",
            v.oneline(),
            ok,
            leaf_rank(&pt, &r, &tol).unwrap(),
            2 * v.length(),
            same_leaf(&pt, &base, &tol).unwrap()
        );
    }
}
