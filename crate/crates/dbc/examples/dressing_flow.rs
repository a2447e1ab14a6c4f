//! Flow a cell point along dressing vector fields: the trajectory stays on
//! its symplectic leaf, and the bivector rank is constant along it.

use dbc::cells::{sample_double_cell, CellPoint};
use dbc::leaves::{dressing_flow, leaf_rank, same_leaf};
use dbc::num::{cr, Tolerance};
use dbc::poisson::{dual_basis, RMatrix};
use dbc::weyl::WeylElement;

fn main() {
    let tol = Tolerance::default();
    let n = 3;
    let r = RMatrix::standard(n);
    let w0 = WeylElement::longest(n);
    let p = sample_double_cell(&w0, &w0, 31, &tol).unwrap();
    println!("starting point in the big double cell of SL(3)");
    for (k, xi) in dual_basis(n).iter().enumerate().take(4) {
        let Ok(flowed) = dressing_flow(&p.g, xi, 100, 1e-2) else {
            println!("  field {}: trajectory left the well-conditioned region; skipped", k);
            continue;
        };
        // remove integrator determinant drift before re-factorizing
        let det = flowed.det();
        let fixed = flowed.scale(cr(1.0) / det.powf(1.0 / n as f64));
        let q = CellPoint::with_reps(
            fixed,
            p.u.clone(),
            p.v.clone(),
            p.urep.clone(),
            p.vrep.clone(),
            &tol,
        )
        .unwrap();
        let relaxed = Tolerance::new(1e-5, tol.tol_rank, 1e-5);
        println!(
            "  field {}: endpoint displacement {:.3}, same leaf: {}, rank {} -> {}",
            k,
            q.g.dist(&p.g),
            same_leaf(&p, &q, &relaxed).unwrap(),
            leaf_rank(&p, &r, &tol).unwrap(),
            leaf_rank(&q, &r, &tol).unwrap()
        );
    }
}
