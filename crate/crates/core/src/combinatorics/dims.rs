use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::partition::{Family, GroupSpec, Partition};
use crate::error::{Error, Result};

/// Dimension of the GL(n) module with highest weight `lam` (hook-content formula).
/// Weights with negative entries are shifted by a power of the determinant first.
pub fn gl_dim(lam: &Partition, n: usize) -> BigInt {
    let Some(w) = lam.as_weight(n) else {
        return BigInt::zero();
    };
    if n == 0 {
        return BigInt::one();
    }
    let shift = w.iter().copied().min().unwrap_or(0).min(0);
    let rows: Vec<usize> = w.iter().map(|&x| (x - shift) as usize).collect();
    let cols: Vec<usize> = (0..rows.first().copied().unwrap_or(0))
        .map(|j| rows.iter().filter(|&&r| r > j).count())
        .collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..r {
            let content = n as i64 + j as i64 - i as i64;
            if content == 0 {
                return BigInt::zero();
            }
            num *= content;
            den *= (r - j) + (cols[j] - i) - 1;
        }
    }
    num / den
}

/// Dominant weight in doubled coordinates, so that spin weights stay integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    doubled: Vec<i64>,
}

impl Weight {
    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Self { doubled }
    }

    pub fn from_partition(p: &Partition) -> Self {
        Self {
            doubled: p.parts().iter().map(|x| 2 * x).collect(),
        }
    }

    /// Fundamental spin weights of D_r: `(1/2,...,1/2,+-1/2)`.
    pub fn half_spin(r: usize, positive: bool) -> Self {
        let mut doubled = vec![1; r];
        if !positive && r > 0 {
            doubled[r - 1] = -1;
        }
        Self { doubled }
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn is_half_integral(&self) -> bool {
        !self.doubled.is_empty() && self.doubled.iter().all(|x| x.rem_euclid(2) == 1)
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|x| x % 2 == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        let n = self.doubled.len().max(other.doubled.len());
        let get = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
        Weight {
            doubled: (0..n).map(|i| get(&self.doubled, i) + get(&other.doubled, i)).collect(),
        }
    }
}

fn padded(w: &Weight, r: usize) -> Result<Vec<i64>> {
    let mut v = w.doubled.clone();
    while v.len() > r && v.last() == Some(&0) {
        v.pop();
    }
    if v.len() > r {
        return Err(Error::NotDominant(format!("{:?}", w.doubled), format!("rank {r}")));
    }
    v.resize(r, 0);
    Ok(v)
}

fn ratio(num: BigInt, den: BigInt) -> BigInt {
    let q = BigRational::new(num, den);
    assert!(q.is_integer(), "Weyl dimension formula produced a non-integer");
    q.to_integer()
}

/// Weyl dimension formula for GL, Sp (type C), SO (type B or D) and Spin (type D).
pub fn weyl_dim(group: &GroupSpec, weight: &Weight) -> Result<BigInt> {
    let bad = || Error::NotDominant(format!("{:?}", weight.doubled), group.to_string());
    let r = group.rank();
    let l = padded(weight, r)?;
    let integral = weight.is_integral();
    if !integral && !(group.family == Family::Spin && weight.is_half_integral()) {
        return Err(bad());
    }
    if group.family == Family::GL {
        if l.windows(2).any(|w| w[0] < w[1]) {
            return Err(bad());
        }
        // type A, independent of the hook-content route
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..r {
            for j in i + 1..r {
                num *= (l[i] - l[j]) / 2 + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
        return Ok(ratio(num, den));
    }
    let odd = group.family == Family::SO && group.natural_dim % 2 == 1;
    let ctype = group.family == Family::Sp;
    // doubled rho
    let rho: Vec<i64> = (0..r)
        .map(|i| {
            let k = (r - i) as i64;
            if ctype {
                2 * k
            } else if odd {
                2 * k - 1
            } else {
                2 * (k - 1)
            }
        })
        .collect();
    let dtype = !ctype && !odd;
    for i in 0..r {
        let next = if i + 1 < r { l[i + 1] } else { 0 };
        let ok = if dtype && i + 1 == r - 1 {
            l[i] >= next.abs()
        } else if dtype && i == r - 1 {
            true
        } else {
            l[i] >= next
        };
        if !ok || (!dtype && l[i] < 0) {
            return Err(bad());
        }
    }
    let lr: Vec<i64> = l.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        for j in i + 1..r {
            num *= BigInt::from(lr[i] - lr[j]) * (lr[i] + lr[j]);
            den *= BigInt::from(rho[i] - rho[j]) * (rho[i] + rho[j]);
        }
        if !dtype {
            num *= lr[i];
            den *= rho[i];
        }
    }
    if r == 0 {
        return Ok(BigInt::one());
    }
    if dtype && r == 1 {
        return Ok(BigInt::one());
    }
    Ok(ratio(num, den))
}

pub fn weyl_dim_partition(group: &GroupSpec, lam: &Partition) -> Result<BigInt> {
    weyl_dim(group, &Weight::from_partition(lam))
}

/// Dimension of the traceless O(m) module indexed by `lam`. Zero unless the first two
/// columns have total length at most `m`.
pub fn orthogonal_traceless_dim(lam: &Partition, m: usize) -> BigInt {
    let cols = lam.conjugate();
    let c1 = cols.part(0) as usize;
    let c2 = cols.part(1) as usize;
    if c1 + c2 > m {
        return BigInt::zero();
    }
    let mut lam = lam.clone();
    if 2 * c1 > m {
        // associate diagram: first column replaced by m - c1
        let mut cs: Vec<i64> = cols.parts().to_vec();
        cs[0] = (m - c1) as i64;
        cs.sort_unstable_by(|a, b| b.cmp(a));
        lam = Partition::new(cs).expect("sorted").conjugate();
    }
    let r = m / 2;
    let group = GroupSpec::so(m);
    let d = weyl_dim_partition(&group, &lam).expect("length at most m/2 is dominant");
    if m.is_multiple_of(2) && r > 0 && lam.length() == r {
        d * 2
    } else {
        d
    }
}

pub fn to_u64(x: &BigInt) -> u64 {
    x.to_u64().expect("dimension fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::lr::partitions_of;
    use crate::part;

    #[test]
    fn gl_examples() {
        assert_eq!(gl_dim(&part![2, 1], 3), 8.into());
        assert_eq!(gl_dim(&part![2], 3), 6.into());
        assert_eq!(gl_dim(&part![1, 1, 1, 1], 3), 0.into());
        assert_eq!(gl_dim(&Partition::rectangle(2, 5), 10), 19404.into());
        assert_eq!(gl_dim(&part![2, 2, 2, 2, 2, 1, 1], 10), 20790.into());
        assert_eq!(gl_dim(&part![1, 0, -1], 3), 8.into());
        assert_eq!(gl_dim(&part![2, -1], 3), gl_dim(&part![3, 1], 3));
    }

    #[test]
    fn type_a_weyl_matches_hook_content() {
        for n in 1..=5 {
            for k in 0..=6 {
                for lam in partitions_of(k) {
                    if lam.length() > n {
                        continue;
                    }
                    assert_eq!(
                        weyl_dim_partition(&GroupSpec::gl(n), &lam).unwrap(),
                        gl_dim(&lam, n),
                        "{lam} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn classical_examples() {
        assert_eq!(weyl_dim_partition(&GroupSpec::sp(10), &Partition::rectangle(2, 5)).unwrap(), 4719.into());
        assert_eq!(weyl_dim(&GroupSpec::spin(12), &Weight::half_spin(6, true)).unwrap(), 32.into());
        let w = Weight::from_doubled(vec![3, 1, 1, 1, 1, 1]);
        assert_eq!(weyl_dim(&GroupSpec::spin(12), &w).unwrap(), 352.into());
        let w = Weight::from_partition(&part![1, 1]).add(&Weight::half_spin(7, true));
        assert_eq!(weyl_dim(&GroupSpec::spin(14), &w).unwrap(), 4928.into());
        assert_eq!(weyl_dim_partition(&GroupSpec::so(5), &part![3, 1]).unwrap(), 81.into());
        assert_eq!(weyl_dim_partition(&GroupSpec::so(5), &part![3, 2]).unwrap(), 105.into());
        assert_eq!(weyl_dim_partition(&GroupSpec::sp(4), &part![1]).unwrap(), 4.into());
        assert!(weyl_dim(&GroupSpec::so(5), &Weight::half_spin(2, true)).is_err());
    }

    #[test]
    fn traceless_orthogonal() {
        assert_eq!(orthogonal_traceless_dim(&part![2, 1], 3), 5.into());
        assert_eq!(orthogonal_traceless_dim(&part![2], 3), 5.into());
        assert_eq!(orthogonal_traceless_dim(&part![1, 1, 1], 3), 1.into());
        assert_eq!(orthogonal_traceless_dim(&part![3, 1, 1], 6), 252.into());
        assert_eq!(orthogonal_traceless_dim(&part![3, 2, 1], 6), 512.into());
        assert_eq!(orthogonal_traceless_dim(&part![2, 2, 1], 4), 0.into());
        for m in 3..=7usize {
            // traceless symmetric square and exterior powers
            assert_eq!(orthogonal_traceless_dim(&part![2], m), (m * (m + 1) / 2 - 1).into());
            for k in 1..=m {
                let lam = Partition::rectangle(1, k);
                let binom = (0..k).fold(1usize, |acc, i| acc * (m - i) / (i + 1));
                assert_eq!(orthogonal_traceless_dim(&lam, m), binom.into(), "m={m} k={k}");
            }
        }
    }
}
