//! Sample points of double Bruhat cells, detect their labels from rank
//! patterns, and factor them through the slices C_ū and C_v̄.

use dbc::cells::{bruhat_cell_of, sample_double_cell};
use dbc::num::Tolerance;
use dbc::weyl::WeylElement;

fn main() {
    let tol = Tolerance::default();
    let n = 3;
    println!("double Bruhat cells of SL({}):", n);
    let mut seed = 1;
    for u in WeylElement::all(n) {
        for v in WeylElement::all(n) {
            seed += 1;
            let p = sample_double_cell(&u, &v, seed, &tol).expect("sampling");
            let (du, dv) = bruhat_cell_of(&p.g, &tol).expect("detection");
            let left = p.c.mul(&p.b).dist(&p.g);
            let right = p.b_minus.mul(&p.c_prime).dist(&p.g);
            println!(
                "  u = {:?} (word {:?}), v = {:?} (word {:?}): detected ({:?}, {:?}), \
                 residuals {:.1e} / {:.1e}",
                u.oneline(),
                u.reduced_word(),
                v.oneline(),
                v.reduced_word(),
                du.oneline(),
                dv.oneline(),
                left,
                right
            );
        }
    }
    // one factorization in full
    let u = WeylElement::from_oneline(&[2, 3, 1]);
    let v = WeylElement::from_oneline(&[3, 1, 2]);
    let p = sample_double_cell(&u, &v, 99, &tol).unwrap();
    println!("\na point of G^{{u,v}} with u = {:?}, v = {:?}:", u.oneline(), v.oneline());
    println!("g        = {:?}", p.g);
    println!("c factor = {:?}", p.c);
    println!("b factor = {:?}", p.b);
    println!("b_-      = {:?}", p.b_minus);
    println!("c'       = {:?}", p.c_prime);
}
