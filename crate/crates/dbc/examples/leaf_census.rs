//! Symplectic-leaf classification data for every double Bruhat cell of
//! SL(3): the χ invariant, the fixed minors, leaf dimensions, and the
//! power-of-two component counts.

use dbc::cells::sample_double_cell;
use dbc::leaves::{
    chi_rep, fixed_simples_pair, leaf_dim_formula, leaf_rank, move_to_leaf_of, same_leaf,
    tuv_dim, LeafCensus,
};
use dbc::num::Tolerance;
use dbc::poisson::RMatrix;
use dbc::weyl::WeylElement;

fn main() {
    let tol = Tolerance::default();
    let n = 3;
    let r = RMatrix::standard(n);
    println!("cell (u; v)            I(u,v)   dim T^{{u,v}}  leaf dim  leaves/level");
    let mut seed = 500;
    for u in WeylElement::all(n) {
        for v in WeylElement::all(n) {
            seed += 1;
            let census = LeafCensus::new(&u, &v);
            let p = sample_double_cell(&u, &v, seed, &tol).unwrap();
            let rank = leaf_rank(&p, &r, &tol).unwrap();
            assert_eq!(rank, leaf_dim_formula(&u, &v));
            println!(
                "({:?}; {:?})   {:?}        {}          {}         {}",
                u.oneline(),
                v.oneline(),
                fixed_simples_pair(&u, &v),
                tuv_dim(&u, &v),
                rank,
                census.count_per_level
            );
        }
    }

    // leaf membership: translate one sample onto the leaf of another
    let u = WeylElement::from_oneline(&[2, 3, 1]);
    let v = WeylElement::from_oneline(&[2, 1, 3]);
    let p1 = sample_double_cell(&u, &v, 901, &tol).unwrap();
    let p2 = sample_double_cell(&u, &v, 902, &tol).unwrap();
    println!(
        "\ntwo samples of G^{{u,v}} share a leaf: {}",
        same_leaf(&p1, &p2, &tol).unwrap()
    );
    let moved = move_to_leaf_of(&p2, &p1, &tol).unwrap();
    println!(
        "after a torus translation solving χ and the minor signs: {}",
        same_leaf(&p1, &moved, &tol).unwrap()
    );
    let chi = chi_rep(&p1, &tol).unwrap();
    println!("χ representative of the first sample: {:?}", chi.diag);
}
