//! Type-A root data: the Weyl group as the symmetric group, Bruhat order,
//! signed-permutation representatives in the normalizer of the torus, torus
//! elements and characters, and integer-lattice kernels via the Smith
//! normal form.

use crate::num::{cr, CMat, C64};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Weyl group element of type A_{n-1}, stored in one-line notation
/// (0-based internally; the JSON surface is 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (0..n).collect(),
        }
    }

    /// From 1-based one-line notation.
    pub fn from_oneline(oneline: &[usize]) -> Self {
        let n = oneline.len();
        let perm: Vec<usize> = oneline.iter().map(|x| x - 1).collect();
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        WeylElement { perm }
    }

    pub fn oneline(&self) -> Vec<usize> {
        self.perm.iter().map(|x| x + 1).collect()
    }

    /// Simple reflection s_k (1-based k, swaps k and k+1).
    pub fn simple(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k < n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(k - 1, k);
        WeylElement { perm }
    }

    /// Longest element w0.
    pub fn longest(n: usize) -> Self {
        WeylElement {
            perm: (0..n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Image of i (0-based).
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Composition (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.n(), other.n());
        WeylElement {
            perm: (0..self.n()).map(|i| self.perm[other.perm[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = vec![0; self.n()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        WeylElement { perm }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut l = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.perm[i] > self.perm[j] {
                    l += 1;
                }
            }
        }
        l
    }

    /// Canonical reduced word (1-based letters): repeatedly strip the
    /// smallest right descent. The product s_{k1}···s_{kl} recovers the
    /// element.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.perm.clone();
        let mut rev = Vec::new();
        loop {
            let mut descent = None;
            for i in 0..w.len() - 1 {
                if w[i] > w[i + 1] {
                    descent = Some(i);
                    break;
                }
            }
            match descent {
                None => break,
                Some(i) => {
                    w.swap(i, i + 1);
                    rev.push(i + 1);
                }
            }
        }
        rev.reverse();
        rev
    }

    /// Product of simple reflections over a 1-based word.
    pub fn from_word(n: usize, word: &[usize]) -> WeylElement {
        let mut w = WeylElement::identity(n);
        for &k in word {
            w = w.compose(&WeylElement::simple(n, k));
        }
        w
    }

    /// Honest 0/1 permutation matrix, entry (w(k), k) = 1.
    pub fn perm_matrix(&self) -> CMat {
        let n = self.n();
        CMat::from_fn(n, n, |i, j| {
            if self.perm[j] == i {
                cr(1.0)
            } else {
                cr(0.0)
            }
        })
    }

    /// All elements of S_n (for exhaustive small-n sweeps).
    pub fn all(n: usize) -> Vec<WeylElement> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut out);
        out
    }

    /// Rank table r(i,j) = #{k <= j : w(k) >= i}, 1-based semantics.
    fn rank_table(&self, i: usize, j: usize) -> usize {
        (0..j).filter(|&k| self.perm[k] + 1 >= i).count()
    }
}

fn permute(perm: &mut Vec<usize>, k: usize, out: &mut Vec<WeylElement>) {
    let n = perm.len();
    if k == n {
        out.push(WeylElement { perm: perm.clone() });
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(perm, k + 1, out);
        perm.swap(k, i);
    }
}

/// Bruhat order by the rank-matrix criterion: w1 <= w2 iff
/// r_{w1}(i,j) <= r_{w2}(i,j) for all i, j, where r_w counts k <= j with
/// w(k) >= i. (The identity minimizes every count, the longest element
/// maximizes them; the orientation is pinned by the subword oracle in the
/// tests.)
pub fn bruhat_leq(w1: &WeylElement, w2: &WeylElement) -> bool {
    assert_eq!(w1.n(), w2.n());
    let n = w1.n();
    for i in 1..=n {
        for j in 1..=n {
            if w1.rank_table(i, j) > w2.rank_table(i, j) {
                return false;
            }
        }
    }
    true
}

/// Simple indices k with u({1..k}) = {1..k}; equivalently the simple roots
/// whose fundamental weight u fixes. Returned 1-based.
pub fn fixed_simples(u: &WeylElement) -> Vec<usize> {
    let n = u.n();
    let mut out = Vec::new();
    let mut maxseen = 0;
    for k in 1..n {
        maxseen = maxseen.max(u.perm[k - 1] + 1);
        if maxseen == k {
            out.push(k);
        }
    }
    out
}

/// Diagonal torus element of SL(n): nonzero entries with product 1.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement {
    pub diag: Vec<C64>,
}

impl TorusElement {
    pub fn identity(n: usize) -> Self {
        TorusElement {
            diag: vec![cr(1.0); n],
        }
    }

    /// Product of entries must be 1 within `tol`.
    pub fn new(diag: Vec<C64>, tol: f64) -> Self {
        let p: C64 = diag.iter().product();
        assert!(
            (p - cr(1.0)).norm() <= tol * 10.0_f64.max(1.0),
            "torus element determinant {} != 1",
            p
        );
        TorusElement { diag }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn matrix(&self) -> CMat {
        CMat::diag(&self.diag)
    }

    pub fn inverse(&self) -> TorusElement {
        TorusElement {
            diag: self.diag.iter().map(|z| cr(1.0) / z).collect(),
        }
    }

    pub fn mul(&self, other: &TorusElement) -> TorusElement {
        TorusElement {
            diag: self
                .diag
                .iter()
                .zip(other.diag.iter())
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Random torus element with entries in the annulus 0.3 <= |t| <= 3.
    pub fn random(n: usize, rng: &mut impl Rng) -> TorusElement {
        loop {
            let mut diag: Vec<C64> = (0..n - 1).map(|_| annulus(rng)).collect();
            let prod: C64 = diag.iter().product();
            let last = cr(1.0) / prod;
            let m = last.norm();
            if (0.1..=10.0).contains(&m) {
                diag.push(last);
                return TorusElement { diag };
            }
        }
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.diag.iter().all(|z| (z - cr(1.0)).norm() <= tol)
    }
}

/// Random point of the annulus 0.3 <= |z| <= 3 (log-uniform modulus).
pub fn annulus(rng: &mut impl Rng) -> C64 {
    let logr = rng.gen_range(0.3f64.ln()..3.0f64.ln());
    let th = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(logr.exp(), th)
}

/// Entry i of the conjugate v̄⁻¹ t v̄ is t_{w(i)}; independent of the choice
/// of representative.
pub fn torus_conjugate(t: &TorusElement, w: &WeylElement) -> TorusElement {
    TorusElement {
        diag: (0..t.n()).map(|i| t.diag[w.apply(i)]).collect(),
    }
}

/// Representative of a Weyl element in the normalizer of the torus: a
/// det-1 signed permutation matrix, together with the torus twist relating
/// it to the canonical one.
#[derive(Clone, Debug)]
pub struct WeylRep {
    pub weyl: WeylElement,
    pub matrix: CMat,
    pub inv: CMat,
    pub torus_twist: TorusElement,
}

/// The canonical generator lift: identity except for the 2x2 block
/// [[0,-1],[1,0]] in rows/columns (k-1, k) (k the 1-based letter).
pub fn simple_rep_matrix(n: usize, k: usize) -> CMat {
    let mut m = CMat::identity(n);
    m[(k - 1, k - 1)] = cr(0.0);
    m[(k, k)] = cr(0.0);
    m[(k - 1, k)] = cr(-1.0);
    m[(k, k - 1)] = cr(1.0);
    m
}

impl WeylRep {
    /// Canonical representative: the product of generator lifts over a
    /// reduced word (independent of the word by the braid relations).
    pub fn canonical(w: &WeylElement) -> WeylRep {
        let n = w.n();
        let mut m = CMat::identity(n);
        for k in w.reduced_word() {
            m = m.mul(&simple_rep_matrix(n, k));
        }
        WeylRep {
            weyl: w.clone(),
            inv: m.inverse().expect("signed permutation invertible"),
            matrix: m,
            torus_twist: TorusElement::identity(n),
        }
    }

    /// seed = 0 gives the canonical representative; other seeds multiply it
    /// on the left by a seeded random torus element.
    pub fn with_seed(w: &WeylElement, seed: u64) -> WeylRep {
        if seed == 0 {
            return Self::canonical(w);
        }
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let t = TorusElement::random(w.n(), &mut rng);
        Self::twisted(w, &t)
    }

    /// The representative t · w̃ with w̃ canonical.
    pub fn twisted(w: &WeylElement, t: &TorusElement) -> WeylRep {
        let base = Self::canonical(w);
        let m = t.matrix().mul(&base.matrix);
        WeylRep {
            weyl: w.clone(),
            inv: m.inverse().expect("invertible"),
            matrix: m,
            torus_twist: t.clone(),
        }
    }
}

/// Integer character of the torus, a length-n exponent vector taken modulo
/// the all-ones vector (the product-one constraint makes evaluation well
/// defined).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterVector {
    pub exps: Vec<i64>,
}

impl CharacterVector {
    pub fn eval(&self, t: &TorusElement) -> C64 {
        self.exps
            .iter()
            .zip(t.diag.iter())
            .map(|(&e, z)| z.powi(e as i32))
            .product()
    }

    /// Fundamental weight ω_k: product of the first k entries.
    pub fn fundamental(n: usize, k: usize) -> CharacterVector {
        CharacterVector {
            exps: (0..n).map(|i| if i < k { 1 } else { 0 }).collect(),
        }
    }
}

/// Diagonalization of an integer matrix by unimodular row and column
/// operations (Smith-style, without enforcing divisibility). Returns the
/// diagonal and the accumulated column operations: `v[j]` is the j-th column
/// of V with m·V diagonal, so kernel vectors are the columns at zero
/// diagonal positions.
fn smith_normal_form(m: &[Vec<i64>]) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    let k = rows.min(cols);
    let mut t = 0;
    while t < k {
        // find a nonzero pivot in the remaining block
        let mut piv: Option<(usize, usize)> = None;
        let mut best = i64::MAX;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && a[i][j].abs() < best {
                    best = a[i][j].abs();
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            v.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t] != 0 {
                let q = a[i][t].div_euclid(a[t][t]);
                for j in 0..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[t][j] != 0 {
                let q = a[t][j].div_euclid(a[t][t]);
                for row in a.iter_mut() {
                    row[j] -= q * row[t];
                }
                for vrow in 0..cols {
                    let delta = q * v[t][vrow];
                    v[j][vrow] -= delta;
                }
                clean = false;
            }
        }
        if clean {
            t += 1;
        }
    }
    let diag: Vec<i64> = (0..k).map(|i| a[i][i]).collect();
    (diag, v)
}

/// ℤ-basis of {x : m·x = 0}. Entries of m are small (|entry| <= 2 in all
/// uses here); exact i64 arithmetic throughout.
pub fn lattice_kernel(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let (diag, v) = smith_normal_form(m);
    let rank = diag.iter().filter(|d| **d != 0).count();
    let mut out = Vec::new();
    for j in 0..cols {
        let in_zero_diag = j < diag.len() && diag[j] == 0;
        if j >= diag.len() || in_zero_diag {
            let col = v[j].clone();
            // verify exactly
            let ok = m
                .iter()
                .all(|row| row.iter().zip(col.iter()).map(|(a, b)| a * b).sum::<i64>() == 0);
            assert!(ok, "smith normal form produced a non-kernel column");
            out.push(col);
        }
    }
    debug_assert_eq!(out.len(), cols - rank);
    out
}

/// All 2^{n-1} diagonal ±1 matrices with determinant 1.
pub fn enumerate_order2(n: usize) -> Vec<TorusElement> {
    assert!(n <= 8);
    let mut out = Vec::new();
    for mask in 0u32..(1 << (n - 1)) {
        let mut diag: Vec<C64> = (0..n - 1)
            .map(|i| {
                if mask & (1 << i) != 0 {
                    cr(-1.0)
                } else {
                    cr(1.0)
                }
            })
            .collect();
        let prod: C64 = diag.iter().product();
        diag.push(cr(1.0) / prod);
        out.push(TorusElement { diag });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Subword oracle: w1 <= w2 iff some reduced word of w2 contains a
    /// subword multiplying to w1.
    fn bruhat_leq_brute(w1: &WeylElement, w2: &WeylElement) -> bool {
        let n = w1.n();
        let word = w2.reduced_word();
        let m = word.len();
        for mask in 0u32..(1 << m) {
            let sub: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| word[i]).collect();
            if &WeylElement::from_word(n, &sub) == w1 {
                return true;
            }
        }
        false
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for n in 2..=4 {
            let all = WeylElement::all(n);
            for a in &all {
                for b in &all {
                    assert_eq!(
                        bruhat_leq(a, b),
                        bruhat_leq_brute(a, b),
                        "mismatch at {:?} vs {:?}",
                        a.oneline(),
                        b.oneline()
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_s3_examples() {
        let s1 = WeylElement::simple(3, 1);
        let s2 = WeylElement::simple(3, 2);
        let s1s2 = s1.compose(&s2);
        let s2s1 = s2.compose(&s1);
        let e = WeylElement::identity(3);
        for w in WeylElement::all(3) {
            assert!(bruhat_leq(&e, &w));
            assert!(bruhat_leq(&w, &w));
        }
        assert!(bruhat_leq(&s1, &s1s2));
        assert!(!bruhat_leq(&s1s2, &s2s1));
    }

    #[test]
    fn word_and_length_agree() {
        for n in 2..=5 {
            for w in WeylElement::all(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(WeylElement::from_word(n, &word), w);
                assert_eq!(w.length(), w.inverse().length());
            }
        }
    }

    #[test]
    fn fixed_simples_examples() {
        let e = WeylElement::identity(3);
        assert_eq!(fixed_simples(&e), vec![1, 2]);
        let w0 = WeylElement::longest(3);
        assert!(fixed_simples(&w0).is_empty());
        let s1 = WeylElement::simple(3, 1);
        assert_eq!(fixed_simples(&s1), vec![2]);
        // disjoint from the letters of any reduced word
        for n in 2..=5 {
            for w in WeylElement::all(n) {
                let fixed = fixed_simples(&w);
                let word = w.reduced_word();
                for k in &fixed {
                    assert!(!word.contains(k));
                }
            }
        }
    }

    #[test]
    fn canonical_rep_examples() {
        let s = WeylElement::simple(2, 1);
        let rep = WeylRep::canonical(&s);
        assert!((rep.matrix[(0, 1)] - cr(-1.0)).norm() < 1e-15);
        assert!((rep.matrix[(1, 0)] - cr(1.0)).norm() < 1e-15);
        // braid invariance at n = 3: both reduced words of w0 give one matrix
        let w0 = WeylElement::longest(3);
        let m121 = simple_rep_matrix(3, 1)
            .mul(&simple_rep_matrix(3, 2))
            .mul(&simple_rep_matrix(3, 1));
        let m212 = simple_rep_matrix(3, 2)
            .mul(&simple_rep_matrix(3, 1))
            .mul(&simple_rep_matrix(3, 2));
        assert!(m121.approx_eq(&m212, 1e-14));
        assert!(WeylRep::canonical(&w0).matrix.approx_eq(&m121, 1e-14));
    }

    #[test]
    fn rep_normalizes_torus_and_det_one() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 2..=4 {
            for w in WeylElement::all(n) {
                let rep = WeylRep::with_seed(&w, 3);
                assert!((rep.matrix.det() - cr(1.0)).norm() < 1e-10);
                let t = TorusElement::random(n, &mut rng);
                let conj = rep.inv.mul(&t.matrix()).mul(&rep.matrix);
                assert!(conj.is_diagonal(1e-12));
                // matches the combinatorial action
                let tc = torus_conjugate(&t, &w);
                assert!(conj.approx_eq(&tc.matrix(), 1e-10));
            }
        }
    }

    #[test]
    fn rep_products_differ_by_torus() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 4;
        let all = WeylElement::all(n);
        for _ in 0..50 {
            let a = &all[rng.gen_range(0..all.len())];
            let b = &all[rng.gen_range(0..all.len())];
            let ra = WeylRep::canonical(a).matrix;
            let rb = WeylRep::canonical(b).matrix;
            let rab = WeylRep::canonical(&a.compose(b)).matrix;
            let quot = rab.inverse().unwrap().mul(&ra.mul(&rb));
            assert!(quot.is_diagonal(1e-10), "product differs by more than torus");
        }
    }

    #[test]
    fn lattice_kernel_examples() {
        assert_eq!(lattice_kernel(&[vec![0]]), vec![vec![1]]);
        assert!(lattice_kernel(&[vec![1, 0], vec![0, 1]]).is_empty());
        let k = lattice_kernel(&[vec![1, -1], vec![-1, 1]]);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(v[0], v[1]);
        assert_eq!(v[0].abs(), 1);
    }

    #[test]
    fn order2_enumeration() {
        let t2 = enumerate_order2(2);
        assert_eq!(t2.len(), 2);
        let t3 = enumerate_order2(3);
        assert_eq!(t3.len(), 4);
        for t in &t3 {
            let negs = t.diag.iter().filter(|z| (*z + cr(1.0)).norm() < 1e-12).count();
            assert_eq!(negs % 2, 0);
            let sq = t.mul(t);
            assert!(sq.is_identity(1e-12));
        }
    }

    #[test]
    fn torus_conjugate_examples() {
        let t = TorusElement::new(vec![cr(2.0), cr(0.5)], 1e-12);
        let s = WeylElement::simple(2, 1);
        let tc = torus_conjugate(&t, &s);
        assert!((tc.diag[0] - cr(0.5)).norm() < 1e-12);
        assert!((tc.diag[1] - cr(2.0)).norm() < 1e-12);
        let e = WeylElement::identity(2);
        assert_eq!(torus_conjugate(&t, &e), t);
    }
}
