//! Evaluation points over `F_p`, including the orbits where rank strata live.

use rand::Rng;

use crate::field::{Field, PrimeField};
use crate::reps::spin::pure_spinor;
use crate::reps::SpinModule;

pub fn random_point<R: Rng + ?Sized>(f: &PrimeField, n: usize, rng: &mut R) -> Vec<u64> {
    loop {
        let x: Vec<u64> = (0..n).map(|_| f.random(rng)).collect();
        if x.iter().any(|&v| v != 0) {
            return x;
        }
    }
}

/// Small signed integers reduced mod `p`: points that are also rational points.
pub fn integer_point<R: Rng + ?Sized>(f: &PrimeField, n: usize, bound: i64, rng: &mut R) -> Vec<u64> {
    loop {
        let x: Vec<u64> = (0..n).map(|_| f.from_i64(rng.gen_range(-bound..=bound))).collect();
        if x.iter().any(|&v| v != 0) {
            return x;
        }
    }
}

pub fn coordinate_points(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| {
            let mut x = vec![0; n];
            x[i] = 1;
            x
        })
        .collect()
}

/// `sum x_i^2`
pub fn quadratic_form(f: &PrimeField, x: &[u64]) -> u64 {
    x.iter().fold(0, |acc, v| f.add(&acc, &f.mul(v, v)))
}

/// A random nonzero `x` with `sum x_i^2 = 0`, built from a square root of `-1`.
/// `None` when `p = 3 mod 4` or `m < 2`.
pub fn isotropic_point<R: Rng + ?Sized>(f: &PrimeField, m: usize, rng: &mut R) -> Option<Vec<u64>> {
    let i = f.sqrt_minus_one()?;
    if m < 2 {
        return None;
    }
    let inv2 = f.inv(&2).expect("odd prime");
    let inv2i = f.inv(&f.mul(&2, &i)).expect("nonzero");
    loop {
        let mut x: Vec<u64> = (0..m - 2).map(|_| f.random(rng)).collect();
        let s = quadratic_form(f, &x);
        // (a + i b)(a - i b) = -s with u = a + i b, w = a - i b
        let u = loop {
            let u = f.random(rng);
            if u != 0 {
                break u;
            }
        };
        let w = f.neg(&f.div(&s, &u).expect("nonzero"));
        x.push(f.mul(&f.add(&u, &w), &inv2));
        x.push(f.mul(&f.sub(&u, &w), &inv2i));
        if x.iter().any(|&v| v != 0) {
            debug_assert_eq!(quadratic_form(f, &x), 0);
            return Some(x);
        }
    }
}

/// `exp(B) . 1` for a random `B in Lambda^2 E`, in half-spin coordinates.
pub fn pure_spinor_point<R: Rng + ?Sized>(f: &PrimeField, plus: &SpinModule, rng: &mut R) -> Vec<u64> {
    let n = plus.n;
    let b2: Vec<u64> = (0..1u32 << n)
        .map(|m| if m.count_ones() == 2 { f.random(rng) } else { 0 })
        .collect();
    plus.coords(f, &pure_spinor(f, n, &b2)).expect("even spinor")
}

/// The `index`-th point of `P^{n-1}(F_p)` in the normalized enumeration where the
/// first nonzero coordinate is 1.
pub fn projective_point(p: u64, n: usize, mut index: u128) -> Option<Vec<u64>> {
    let p128 = p as u128;
    for lead in 0..n {
        let free = (n - lead - 1) as u32;
        let block = p128.checked_pow(free)?;
        if index < block {
            let mut x = vec![0u64; n];
            x[lead] = 1;
            for slot in (lead + 1..n).rev() {
                x[slot] = (index % p128) as u64;
                index /= p128;
            }
            return Some(x);
        }
        index -= block;
    }
    None
}

/// `(p^n - 1) / (p - 1)`, or `None` on overflow.
pub fn projective_count(p: u64, n: usize) -> Option<u128> {
    let p128 = p as u128;
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..n {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(p128)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn projective_enumeration_is_a_bijection() {
        let (p, n) = (3, 3);
        let count = projective_count(p, n).unwrap();
        assert_eq!(count, 13);
        let pts: std::collections::HashSet<Vec<u64>> = (0..count).map(|i| projective_point(p, n, i).unwrap()).collect();
        assert_eq!(pts.len(), 13);
        assert!(projective_point(p, n, count).is_none());
        assert_eq!(projective_count(5, 3), Some(31));
    }

    #[test]
    fn isotropic_points_are_isotropic() {
        let f = PrimeField::new(13).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for m in 2..7 {
            let x = isotropic_point(&f, m, &mut rng).unwrap();
            assert_eq!(quadratic_form(&f, &x), 0);
            assert!(x.iter().any(|&v| v != 0));
        }
        assert!(isotropic_point(&PrimeField::new(7).unwrap(), 3, &mut rng).is_none());
    }
}
