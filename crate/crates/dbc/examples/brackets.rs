//! Evaluate the standard Poisson brackets of matrix coordinates: the full
//! SL(2) table, an SL(3) entry bracket through two independent routes, and
//! the quotient bracket {z1, z2} = -z1 z2 on the cell of s1 s2.

use dbc::cells::{sample_sl, FlagPoint};
use dbc::num::{cr, Tolerance, C64};
use dbc::poisson::{
    bracket_eval, bracket_eval_direct, entry_obs, pi1_via_pushforward, FlagCellSpace, RMatrix,
};
use dbc::weyl::{WeylElement, WeylRep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let r2 = RMatrix::standard(2);
    let g = sample_sl(2, &mut rng, &tol);
    println!("SL(2) point g = {:?}", g);
    let table = [
        ((0, 0), (0, 1), g[(0, 0)] * g[(0, 1)], "g11 g12"),
        ((0, 0), (1, 0), g[(0, 0)] * g[(1, 0)], "g11 g21"),
        ((0, 1), (1, 1), g[(0, 1)] * g[(1, 1)], "g12 g22"),
        ((1, 0), (1, 1), g[(1, 0)] * g[(1, 1)], "g21 g22"),
        ((0, 0), (1, 1), cr(2.0) * g[(0, 1)] * g[(1, 0)], "2 g12 g21"),
        ((0, 1), (1, 0), cr(0.0), "0"),
    ];
    for ((i1, j1), (i2, j2), expect, label) in table {
        let got = bracket_eval(entry_obs(i1, j1), entry_obs(i2, j2), &g, &r2).unwrap();
        println!(
            "  {{g{}{}, g{}{}}} = {:.6}  (= {}: residual {:.1e})",
            i1 + 1,
            j1 + 1,
            i2 + 1,
            j2 + 1,
            got,
            label,
            (got - expect).norm()
        );
    }

    let r3 = RMatrix::standard(3);
    let g3 = sample_sl(3, &mut rng, &tol);
    let a = bracket_eval(entry_obs(0, 0), entry_obs(0, 1), &g3, &r3).unwrap();
    let b = bracket_eval_direct(entry_obs(0, 0), entry_obs(0, 1), &g3, &r3).unwrap();
    println!("\nSL(3): {{g11, g12}} via coefficients = {:.6}", a);
    println!("       via left/right contraction    = {:.6}", b);
    println!("       expected g11 g12              = {:.6}", g3[(0, 0)] * g3[(0, 1)]);

    // quotient structure on the flag cell of v = s1 s2
    let v = WeylElement::from_oneline(&[2, 3, 1]);
    let rep = WeylRep::canonical(&v);
    let flag = FlagCellSpace::new(v.clone(), rep.clone(), tol);
    let coords: Vec<C64> = vec![cr(1.3), cr(-0.7)];
    let fp = FlagPoint {
        cell: v,
        rep,
        coords: coords.clone(),
    };
    let pi1 = pi1_via_pushforward(&flag, &fp).unwrap();
    println!(
        "\nflag cell of s1 s2 at (z1, z2) = ({}, {}): {{z1, z2}} = {:.6} (expect -z1 z2 = {:.6})",
        coords[0],
        coords[1],
        pi1[(0, 1)],
        -coords[0] * coords[1]
    );
}
