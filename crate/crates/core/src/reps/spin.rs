//! Half-spin modules on the exterior algebra of a maximal isotropic `E` inside
//! `W = E + F`, with `E` acting by wedge and `F` by contraction (`<e_i, f_j> = delta_ij`).
//! Spinors are dense vectors over `Lambda E` indexed by bitmask.

use super::ambient::{below, SubsetIndex};
use super::lie::LieElement;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

fn parity_sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One half-spin module: the even or odd part of `Lambda E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinModule {
    pub n: usize,
    pub even: bool,
    /// Basis masks ordered by size, then lexicographically.
    pub basis: Vec<u32>,
    index: Vec<u32>,
}

impl SpinModule {
    pub fn new(n: usize, even: bool) -> Self {
        let mut basis = Vec::new();
        for k in (0..=n).filter(|k| (k % 2 == 0) == even) {
            basis.extend_from_slice(SubsetIndex::get(n, k).subsets());
        }
        let mut index = vec![u32::MAX; 1 << n];
        for (i, &m) in basis.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        Self { n, even, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, mask: u32) -> Option<usize> {
        let i = self.index[mask as usize];
        (i != u32::MAX).then_some(i as usize)
    }

    /// Embed module coordinates into `Lambda E`.
    pub fn embed<F: Field>(&self, f: &F, coords: &[F::Elem]) -> Vec<F::Elem> {
        let mut s = vec![f.zero(); 1 << self.n];
        for (c, &m) in coords.iter().zip(&self.basis) {
            s[m as usize] = c.clone();
        }
        s
    }

    /// Module coordinates of a spinor; other-parity components must vanish.
    pub fn coords<F: Field>(&self, f: &F, s: &[F::Elem]) -> Option<Vec<F::Elem>> {
        for (m, x) in s.iter().enumerate() {
            if self.index[m] == u32::MAX && !f.is_zero(x) {
                return None;
            }
        }
        Some(self.basis.iter().map(|&m| s[m as usize].clone()).collect())
    }

    /// Label like `{}` or `{1,3}` with 1-based indices.
    pub fn label(&self, i: usize) -> String {
        let els: Vec<String> = (0..self.n)
            .filter(|b| self.basis[i] >> b & 1 == 1)
            .map(|b| (b + 1).to_string())
            .collect();
        format!("{{{}}}", els.join(","))
    }
}

/// `Delta_+` and `Delta_-` for `Spin(2n)`.
pub fn spin_space(n: usize) -> Result<(SpinModule, SpinModule)> {
    if n < 2 {
        return Err(Error::Shape("spin modules need n >= 2".into()));
    }
    if n > 16 {
        return Err(Error::Shape("n too large for dense spinors".into()));
    }
    Ok((SpinModule::new(n, true), SpinModule::new(n, false)))
}

/// `e_j ^ s`
pub fn wedge_e<F: Field>(f: &F, n: usize, j: usize, s: &[F::Elem], coeff: &F::Elem, out: &mut [F::Elem]) {
    for m in 0..1u32 << n {
        let x = &s[m as usize];
        if m >> j & 1 == 1 || f.is_zero(x) {
            continue;
        }
        let c = f.mul(coeff, x);
        let t = &mut out[(m | 1 << j) as usize];
        if below(m, j).is_multiple_of(2) {
            *t = f.add(t, &c);
        } else {
            *t = f.sub(t, &c);
        }
    }
}

/// `f_j` contracted into `s` from the left.
pub fn contract_f<F: Field>(f: &F, n: usize, j: usize, s: &[F::Elem], coeff: &F::Elem, out: &mut [F::Elem]) {
    for m in 0..1u32 << n {
        let x = &s[m as usize];
        if m >> j & 1 == 0 || f.is_zero(x) {
            continue;
        }
        let c = f.mul(coeff, x);
        let t = &mut out[(m ^ 1 << j) as usize];
        if below(m, j).is_multiple_of(2) {
            *t = f.add(t, &c);
        } else {
            *t = f.sub(t, &c);
        }
    }
}

/// Clifford action of `w = sum w_j b_j` (`b` = `e_1..e_n, f_1..f_n`) on a spinor.
pub fn clifford_action<F: Field>(f: &F, n: usize, w: &[F::Elem], s: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(w.len(), 2 * n);
    let mut out = vec![f.zero(); 1 << n];
    for (j, c) in w.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        if j < n {
            wedge_e(f, n, j, s, c, &mut out);
        } else {
            contract_f(f, n, j - n, s, c, &mut out);
        }
    }
    out
}

/// Action of a single basis vector of `W`.
pub fn basis_action<F: Field>(f: &F, n: usize, j: usize, s: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); 1 << n];
    let one = f.one();
    if j < n {
        wedge_e(f, n, j, s, &one, &mut out);
    } else {
        contract_f(f, n, j - n, s, &one, &mut out);
    }
    out
}

/// The symmetric pairing on `W`: `<e_i, f_j> = delta_ij`, `E` and `F` isotropic.
pub fn w_pairing<F: Field>(f: &F, n: usize, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for i in 0..n {
        f.add_mul_assign(&mut acc, &a[i], &b[n + i]);
        f.add_mul_assign(&mut acc, &a[n + i], &b[i]);
    }
    acc
}

/// `s ^ t` in `Lambda E`.
pub fn wedge<F: Field>(f: &F, n: usize, s: &[F::Elem], t: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); 1 << n];
    for m1 in 0..1u32 << n {
        if f.is_zero(&s[m1 as usize]) {
            continue;
        }
        for m2 in 0..1u32 << n {
            if m1 & m2 != 0 || f.is_zero(&t[m2 as usize]) {
                continue;
            }
            // transpositions needed to merge m1 followed by m2
            let swaps: u32 = (0..n).filter(|b| m2 >> b & 1 == 1).map(|b| (m1 >> (b + 1)).count_ones()).sum();
            let c = f.mul(&s[m1 as usize], &t[m2 as usize]);
            let o = &mut out[(m1 | m2) as usize];
            *o = if swaps.is_multiple_of(2) { f.add(o, &c) } else { f.sub(o, &c) };
        }
    }
    out
}

/// Reversal antiautomorphism: `e_I` picks up `(-1)^(k(k-1)/2)`.
pub fn reverse<F: Field>(f: &F, t: &[F::Elem]) -> Vec<F::Elem> {
    t.iter()
        .enumerate()
        .map(|(m, x)| {
            let k = (m as u32).count_ones();
            if (k * k.saturating_sub(1) / 2).is_multiple_of(2) {
                x.clone()
            } else {
                f.neg(x)
            }
        })
        .collect()
}

/// `beta(s, t)`: the top-degree coefficient of `s ^ rev(t)`.
pub fn beta<F: Field>(f: &F, n: usize, s: &[F::Elem], t: &[F::Elem]) -> F::Elem {
    let top = (1usize << n) - 1;
    let rt = reverse(f, t);
    let mut acc = f.zero();
    for m1 in 0..1usize << n {
        if f.is_zero(&s[m1]) {
            continue;
        }
        let m2 = top ^ m1;
        if f.is_zero(&rt[m2]) {
            continue;
        }
        let swaps: u32 = (0..n)
            .filter(|b| m2 >> b & 1 == 1)
            .map(|b| ((m1 as u32) >> (b + 1)).count_ones())
            .sum();
        let c = f.mul(&s[m1], &rt[m2]);
        acc = if swaps.is_multiple_of(2) { f.add(&acc, &c) } else { f.sub(&acc, &c) };
    }
    acc
}

/// Coefficients `beta(x_J s, t)` for the `k`-subsets `J` of the basis of `W` in
/// lexicographic order, where `x_J = w_{j_1} ... w_{j_k}` acts on `s`.
pub fn gamma_pairing<F: Field>(f: &F, n: usize, k: usize, s: &[F::Elem], t: &[F::Elem]) -> Vec<F::Elem> {
    let idx = SubsetIndex::get(2 * n, k);
    idx.subsets()
        .iter()
        .map(|&mask| {
            let mut cur = s.to_vec();
            for j in (0..2 * n).rev().filter(|j| mask >> j & 1 == 1) {
                cur = basis_action(f, n, j, &cur);
            }
            beta(f, n, &cur, t)
        })
        .collect()
}

/// `a(delta)` as a vector of `W`: the functional `w -> beta(w delta, delta)`
/// transported through the pairing, so the `e_i` and `f_i` halves swap.
pub fn spinor_a<F: Field>(f: &F, n: usize, delta: &[F::Elem]) -> Vec<F::Elem> {
    let g = gamma_pairing(f, n, 1, delta, delta);
    let mut out = g[n..].to_vec();
    out.extend_from_slice(&g[..n]);
    out
}

/// Component of a spinor in `Lambda^k E`.
pub fn degree_part<F: Field>(f: &F, s: &[F::Elem], k: u32) -> Vec<F::Elem> {
    s.iter()
        .enumerate()
        .map(|(m, x)| if (m as u32).count_ones() == k { x.clone() } else { f.zero() })
        .collect()
}

/// `Lambda^{n-1} E = E^v (x) det E = F (x) det E`: `e_i ^ x = x^#_i e_top`.
pub fn sharp<F: Field>(f: &F, n: usize, x: &[F::Elem]) -> Vec<F::Elem> {
    let top = (1usize << n) - 1;
    (0..n)
        .map(|i| {
            let v = &x[top ^ (1 << i)];
            if i % 2 == 0 {
                v.clone()
            } else {
                f.neg(v)
            }
        })
        .collect()
}

/// Right contraction `s _| phi` by `phi in F`: for homogeneous `s` of degree `k` it is
/// `(-1)^(k-1)` times the left contraction.
pub fn contract_right<F: Field>(f: &F, n: usize, s: &[F::Elem], phi: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); 1 << n];
    for (j, c) in phi.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        contract_f(f, n, j, s, c, &mut out);
    }
    // fix signs degree by degree: result degree k-1 came from degree k
    for (m, x) in out.iter_mut().enumerate() {
        let k = (m as u32).count_ones() + 1;
        if parity_sign(k - 1) < 0 {
            *x = f.neg(x);
        }
    }
    out
}

/// The kernel vector `delta_2 _| delta_4^* + (delta_0 delta_4 - delta_2^2/2)^#` of
/// `psi_delta` at `n = 5`, in the basis `e_1..e_5, f_1..f_5`.
pub fn spin_kernel_vector<F: Field>(f: &F, delta: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let n = 5;
    if delta.len() != 1 << n {
        return Err(Error::Dimension(format!("spinor of length {} for n = 5", delta.len())));
    }
    let d0 = delta[0].clone();
    let d2 = degree_part(f, delta, 2);
    let d4 = degree_part(f, delta, 4);
    let sq = wedge(f, n, &d2, &d2);
    let half = f.inv(&f.from_i64(2)).expect("odd characteristic");
    let x: Vec<F::Elem> = d4
        .iter()
        .zip(&sq)
        .map(|(a, b)| f.sub(&f.mul(&d0, a), &f.mul(&half, b)))
        .collect();
    let e_part = contract_right(f, n, &d2, &sharp(f, n, &d4));
    let mut out: Vec<F::Elem> = (0..n).map(|i| e_part[1 << i].clone()).collect();
    out.extend(sharp(f, n, &x));
    Ok(out)
}

/// `exp(B) . 1 = sum B^k / k!` for `B in Lambda^2 E`: a pure spinor.
pub fn pure_spinor<F: Field>(f: &F, n: usize, b2: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); 1 << n];
    out[0] = f.one();
    let mut term = out.clone();
    for k in 1..=n / 2 {
        term = wedge(f, n, &term, b2);
        let kinv = f.inv(&f.from_i64(k as i64)).expect("small factorial invertible");
        term = term.iter().map(|x| f.mul(x, &kinv)).collect();
        for (o, t) in out.iter_mut().zip(&term) {
            *o = f.add(o, t);
        }
    }
    out
}

/// Action of a spin Lie element on a spinor: `w_a w_b - w_b w_a` per term.
pub fn spin_act<F: Field>(f: &F, n: usize, x: &LieElement, s: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let LieElement::Bivector(terms) = x else {
        return Err(Error::NotInLieAlgebra("spinors need a bivector element".into()));
    };
    let mut out = vec![f.zero(); 1 << n];
    for &(a, b, c) in terms {
        if a >= 2 * n || b >= 2 * n || a == b {
            return Err(Error::NotInLieAlgebra(format!("bad bivector index ({a},{b})")));
        }
        let ab = basis_action(f, n, a, &basis_action(f, n, b, s));
        let ba = basis_action(f, n, b, &basis_action(f, n, a, s));
        let c = f.from_i64(c);
        for i in 0..out.len() {
            let d = f.sub(&ab[i], &ba[i]);
            f.add_mul_assign(&mut out[i], &c, &d);
        }
    }
    Ok(out)
}

/// Action of a spin Lie element on `W`: `[w_a w_b - w_b w_a, w] = 2(<w_b,w> w_a - <w_a,w> w_b)`.
pub fn spin_act_w<F: Field>(f: &F, n: usize, x: &LieElement, w: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let LieElement::Bivector(terms) = x else {
        return Err(Error::NotInLieAlgebra("W needs a bivector element".into()));
    };
    let mut out = vec![f.zero(); 2 * n];
    let unit = |j: usize| {
        let mut u = vec![f.zero(); 2 * n];
        u[j] = f.one();
        u
    };
    for &(a, b, c) in terms {
        let c2 = f.from_i64(2 * c);
        let pb = w_pairing(f, n, &unit(b), w);
        let pa = w_pairing(f, n, &unit(a), w);
        f.add_mul_assign(&mut out[a], &c2, &pb);
        f.sub_mul_assign(&mut out[b], &c2, &pa);
    }
    Ok(out)
}

/// Matrix of a spin element on a half-spin module (row `r` = coordinates of `X b_r`).
pub fn spin_lie_matrix<F: Field>(f: &F, module: &SpinModule, x: &LieElement) -> Result<Matrix<F>> {
    let mut rows = Vec::with_capacity(module.dim());
    for r in 0..module.dim() {
        let mut unit = vec![f.zero(); module.dim()];
        unit[r] = f.one();
        let s = module.embed(f, &unit);
        let img = spin_act(f, module.n, x, &s)?;
        rows.push(module.coords(f, &img).ok_or_else(|| Error::Construction("parity not preserved".into()))?);
    }
    Ok(Matrix::from_rows(f, module.dim(), rows))
}

/// Matrix of a spin element on `W` (row `r` = coordinates of `X b_r`).
pub fn spin_w_matrix<F: Field>(f: &F, n: usize, x: &LieElement) -> Result<Matrix<F>> {
    let mut rows = Vec::with_capacity(2 * n);
    for r in 0..2 * n {
        let mut unit = vec![f.zero(); 2 * n];
        unit[r] = f.one();
        rows.push(spin_act_w(f, n, x, &unit)?);
    }
    Ok(Matrix::from_rows(f, 2 * n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, PrimeField, Rationals};
    use rand::SeedableRng;

    #[test]
    fn dimensions() {
        for (n, d) in [(2, 2), (5, 16), (6, 32)] {
            let (p, m) = spin_space(n).unwrap();
            assert_eq!((p.dim(), m.dim()), (d, d));
        }
        let (p, _) = spin_space(5).unwrap();
        assert_eq!(p.label(0), "{}");
        assert_eq!(p.label(1), "{1,2}");
    }

    #[test]
    fn clifford_basics() {
        let q = Rationals;
        let n = 3;
        let mut one = vec![q.zero(); 8];
        one[0] = q.one();
        let e1 = basis_action(&q, n, 0, &one);
        assert_eq!(e1[1], q.one());
        let back = basis_action(&q, n, n, &e1);
        assert_eq!(back, one);
    }

    #[test]
    fn clifford_relation_on_basis() {
        let q = Rationals;
        for n in 2..=5 {
            for a in 0..2 * n {
                for b in 0..2 * n {
                    for m in 0..1usize << n {
                        let mut s = vec![q.zero(); 1 << n];
                        s[m] = q.one();
                        let ab = basis_action(&q, n, a, &basis_action(&q, n, b, &s));
                        let ba = basis_action(&q, n, b, &basis_action(&q, n, a, &s));
                        let expect = if a + n == b || b + n == a { q.one() } else { q.zero() };
                        for i in 0..s.len() {
                            assert_eq!(&ab[i] + &ba[i], &expect * &s[i]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn a_vanishes_on_pure_spinors_and_is_bilinear() {
        let f = PrimeField::default_prime();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let n = 5;
        for _ in 0..5 {
            let b2: Vec<u64> = (0..32u32)
                .map(|m| if m.count_ones() == 2 { f.random(&mut rng) } else { 0 })
                .collect();
            let p = pure_spinor(&f, n, &b2);
            assert!(spinor_a(&f, n, &p).iter().all(|x| *x == 0));
        }
        let mut one = vec![0u64; 32];
        one[0] = 1;
        assert!(spinor_a(&f, n, &one).iter().all(|x| *x == 0));
        let rnd = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<u64> {
            (0..32u32).map(|m| if m.count_ones() % 2 == 0 { f.random(rng) } else { 0 }).collect()
        };
        let (s, t, u) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
        let tu: Vec<u64> = t.iter().zip(&u).map(|(a, b)| f.add(a, b)).collect();
        let lhs = gamma_pairing(&f, n, 1, &s, &tu);
        let r1 = gamma_pairing(&f, n, 1, &s, &t);
        let r2 = gamma_pairing(&f, n, 1, &s, &u);
        let rhs: Vec<u64> = r1.iter().zip(&r2).map(|(a, b)| f.add(a, b)).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kernel_vector_is_killed() {
        let f = PrimeField::default_prime();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let n = 5;
        for _ in 0..5 {
            let d: Vec<u64> = (0..32u32).map(|m| if m.count_ones() % 2 == 0 { f.random(&mut rng) } else { 0 }).collect();
            let k = spin_kernel_vector(&f, &d).unwrap();
            assert!(k.iter().any(|x| *x != 0));
            assert!(clifford_action(&f, n, &k, &d).iter().all(|x| *x == 0));
            let a = spinor_a(&f, n, &d);
            assert!(clifford_action(&f, n, &a, &d).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn spin_action_commutes_with_clifford() {
        // X(w.s) = [X,w].s + w.(X s)
        let f = PrimeField::default_prime();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 3;
        let s: Vec<u64> = (0..8).map(|_| f.random(&mut rng)).collect();
        let w: Vec<u64> = (0..6).map(|_| f.random(&mut rng)).collect();
        for a in 0..6 {
            for b in a + 1..6 {
                let x = LieElement::Bivector(vec![(a, b, 1)]);
                let lhs = spin_act(&f, n, &x, &clifford_action(&f, n, &w, &s)).unwrap();
                let xw = spin_act_w(&f, n, &x, &w).unwrap();
                let r1 = clifford_action(&f, n, &xw, &s);
                let r2 = clifford_action(&f, n, &w, &spin_act(&f, n, &x, &s).unwrap());
                let rhs: Vec<u64> = r1.iter().zip(&r2).map(|(p, q)| f.add(p, q)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
