//! The groupoid structure of G^{v,v} over the Bruhat cell BvB/B: source,
//! target, identity bisection, inverse, and multiplication, shown on the
//! explicit (z, a, b) chart of SL(2) and at a random SL(3) cell.

use dbc::cells::sample_double_cell;
use dbc::golden::{sl2_cell_matrix, sl2_chi};
use dbc::groupoid::{gpd_mul, identity_bisection, sample_composable, GroupoidElement};
use dbc::num::{cr, Tolerance};
use dbc::weyl::{WeylElement, WeylRep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();

    // SL(2): the (z, a, b) chart of G^{s,s}
    let s = WeylElement::simple(2, 1);
    let rep = WeylRep::canonical(&s);
    let (z, a, b) = (cr(0.8), cr(1.4), cr(-0.5));
    let g = GroupoidElement::from_matrix(sl2_cell_matrix(z, a, b), &s, &rep, &tol).unwrap();
    let chi = sl2_chi(z, a, b);
    println!("SL(2) groupoid element at (z, a, b) = ({}, {}, {}):", z, a, b);
    println!("  source  θ(g) = {:.6}   (= z)", g.theta().coords[0]);
    println!("  target  τ(g) = {:.6}   (= χ z with χ = {:.6})", g.tau().coords[0], chi);
    let inv = g.inverse(&tol).unwrap();
    println!("  inverse ι(g) lands at (z, a, b) = ({:.4}, {:.4}, {:.4})",
        inv.pt.g[(0, 0)] / inv.pt.g[(1, 0)], inv.pt.g[(1, 0)], inv.pt.g[(1, 1)]);
    let eps = identity_bisection(g.theta(), &tol).unwrap();
    println!("  identity bisection ε(θ(g)) = {:?}", eps.pt.g);
    let h = GroupoidElement::from_matrix(sl2_cell_matrix(chi * z, cr(2.0), cr(0.3)), &s, &rep, &tol)
        .unwrap();
    let m = gpd_mul(&g, &h, &tol).unwrap();
    println!("  product with a composable partner: θ = {:.6}, τ = {:.6}", m.theta().coords[0], m.tau().coords[0]);

    // SL(3): a random diagonal cell, exercising the axioms numerically
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let v = WeylElement::from_oneline(&[3, 1, 2]);
    let p = sample_double_cell(&v, &v, 11, &tol).unwrap();
    let g3 = GroupoidElement::new(p).unwrap();
    let h3 = sample_composable(&g3, &mut rng, &tol).unwrap();
    let k3 = sample_composable(&h3, &mut rng, &tol).unwrap();
    let left = gpd_mul(&gpd_mul(&g3, &h3, &tol).unwrap(), &k3, &tol).unwrap();
    let right = gpd_mul(&g3, &gpd_mul(&h3, &k3, &tol).unwrap(), &tol).unwrap();
    println!("\nSL(3), v = {:?}:", v.oneline());
    println!("  associativity residual over a random composable triple: {:.2e}",
        left.pt.g.dist(&right.pt.g));
    let gi = g3.inverse(&tol).unwrap();
    let prod = gpd_mul(&g3, &gi, &tol).unwrap();
    let eps3 = identity_bisection(g3.theta(), &tol).unwrap();
    println!("  g · ι(g) = ε(θ(g)) residual: {:.2e}", prod.pt.g.dist(&eps3.pt.g));
}
