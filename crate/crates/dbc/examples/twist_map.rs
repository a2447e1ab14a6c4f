//! The twist map G^{u,v} -> G^{v,u}: an anti-Poisson involution induced by
//! the inverse of the ambient action groupoid.

use dbc::cells::{bruhat_cell_of, right_c_factor, sample_double_cell};
use dbc::groupoid::twist;
use dbc::num::{Jet, Mat, Tolerance};
use dbc::poisson::{poisson_map_check, GroupSpace};
use dbc::weyl::WeylElement;

fn main() {
    let tol = Tolerance::default();
    let n = 3;
    let u = WeylElement::from_oneline(&[2, 3, 1]);
    let v = WeylElement::from_oneline(&[1, 3, 2]);
    let p = sample_double_cell(&u, &v, 7, &tol).unwrap();
    println!("point of G^{{u,v}} with u = {:?}, v = {:?}", u.oneline(), v.oneline());
    let q = twist(&p, &tol).unwrap();
    let (qu, qv) = bruhat_cell_of(&q.g, &tol).unwrap();
    println!("twist lands in G^{{u,v}} with u = {:?}, v = {:?}", qu.oneline(), qv.oneline());
    let back = twist(&q, &tol).unwrap();
    println!("involution residual: {:.2e}", back.g.dist(&p.g));

    // anti-Poisson property at sampled points
    let group = GroupSpace::new(n, tol);
    let pts: Vec<_> = (0..10)
        .map(|k| sample_double_cell(&u, &v, 100 + k, &tol).unwrap().g)
        .collect();
    let urep = p.urep.clone();
    let vrep = p.vrep.clone();
    let phi = move |jets: &Mat<Jet>| -> dbc::Result<Mat<Jet>> {
        let (c, _) = dbc::cells::left_c_factor(jets, &urep, &tol)?;
        let (bm, _) = right_c_factor(jets, &vrep, &tol)?;
        Ok(bm.inverse()?.mul(&c))
    };
    let chk = poisson_map_check(&group, &group, phi, &pts, -1.0).unwrap();
    println!(
        "anti-Poisson deviation over {} samples: {:.2e}",
        chk.samples, chk.max_dev
    );
}
