use num::{BigInt, BigRational, Integer, Zero};
use serde::{Deserialize, Serialize};

use super::dims::{gl_dim, orthogonal_traceless_dim};
use super::partition::{BoxPosition, Partition};
use super::strips::{added_box, all_horizontal_strips};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    Kernel,
    Image,
    Cokernel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub alpha: Partition,
    pub k: usize,
    pub dim: u64,
    pub part: Part,
}

/// Dimensions of kernel, image and cokernel of `phi_v` at a point `v`, read off from
/// the branching of source and target to the stabilizer of the line through `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedDecomposition {
    pub kernel_dim: u64,
    pub image_dim: u64,
    pub cokernel_dim: u64,
    pub terms: Vec<Term>,
}

impl PredictedDecomposition {
    pub fn source_dim(&self) -> u64 {
        self.kernel_dim + self.image_dim
    }
    pub fn target_dim(&self) -> u64 {
        self.image_dim + self.cokernel_dim
    }
}

/// Splits the strips of `mu` by whether the box `c` north of `b` survives, and the
/// strips of `nu` by whether `b` survives. `dim` gives the dimension of the piece
/// indexed by a strip.
pub fn one_box_decomposition(
    mu: &Partition,
    nu: &Partition,
    dim: impl Fn(&Partition) -> BigInt,
) -> Result<PredictedDecomposition> {
    let b = added_box(mu, nu)
        .ok_or_else(|| Error::Shape(format!("{nu} is not {mu} plus one box")))?;
    let to_u64 = |x: BigInt| -> u64 { x.try_into().expect("dimension fits in u64") };
    let mut out = PredictedDecomposition {
        kernel_dim: 0,
        image_dim: 0,
        cokernel_dim: 0,
        terms: Vec::new(),
    };
    let has = |a: &Partition, bx: BoxPosition| a.part(bx.row - 1) >= bx.col as i64;
    for (k, alpha) in all_horizontal_strips(mu) {
        let d = to_u64(dim(&alpha));
        if d == 0 {
            continue;
        }
        let in_image = b.row > 1 && has(&alpha, BoxPosition::new(b.row - 1, b.col));
        let part = if in_image { Part::Image } else { Part::Kernel };
        if in_image {
            out.image_dim += d;
        } else {
            out.kernel_dim += d;
        }
        out.terms.push(Term { alpha, k, dim: d, part });
    }
    if b.row == 1 {
        // first-row box: everything is image
        out.image_dim += out.kernel_dim;
        out.kernel_dim = 0;
        for t in &mut out.terms {
            t.part = Part::Image;
        }
    }
    for (k, beta) in all_horizontal_strips(nu) {
        let d = to_u64(dim(&beta));
        if d == 0 || !has(&beta, b) {
            continue;
        }
        out.cokernel_dim += d;
        out.terms.push(Term { alpha: beta, k, dim: d, part: Part::Cokernel });
    }
    Ok(out)
}

/// GL(v) prediction: pieces are GL(v-1)-modules.
pub fn gl_one_box(mu: &Partition, nu: &Partition, v: usize) -> Result<PredictedDecomposition> {
    if nu.length() > v {
        return Err(Error::Shape(format!("{nu} has more than {v} rows")));
    }
    one_box_decomposition(mu, nu, |a| gl_dim(a, v - 1))
}

/// O(m) prediction at a non-isotropic point: pieces are O(m-1)-modules.
pub fn so_one_box(mu: &Partition, nu: &Partition, m: usize) -> Result<PredictedDecomposition> {
    let c = nu.conjugate();
    if (c.part(0) + c.part(1)) as usize > m {
        return Err(Error::Shape(format!("{nu} does not index an O({m})-module")));
    }
    one_box_decomposition(mu, nu, |a| orthogonal_traceless_dim(a, m - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    /// `(2) -> (2,1)` for GL(n+1)
    Gl2To21,
    /// `(2,2) -> (2,2,1)` for GL(n+1)
    Gl22To221,
    /// `(2^a,1^b) -> (2^a,1^(b+1))` for GL(n+1)
    GlHook { a: usize, b: usize },
    /// `(2) -> (2,1)` for SO(m)
    So2To21,
    /// `(3,1,1) -> (3,2,1)` for SO(m)
    So311To321,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySizes {
    pub source_dim: BigInt,
    pub target_dim: BigInt,
    pub rank: BigInt,
    pub corank: BigInt,
}

impl FamilySizes {
    pub fn triple(&self) -> (u64, u64, u64) {
        let u = |x: &BigInt| -> u64 { x.try_into().expect("fits") };
        (u(&self.source_dim), u(&self.target_dim), u(&self.rank))
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k || n < 0 {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn exact_div(num: BigInt, den: i64) -> BigInt {
    let (q, r) = num.div_rem(&BigInt::from(den));
    assert!(r.is_zero(), "closed form is not integral");
    q
}

impl FamilyId {
    pub fn shapes(&self) -> (Partition, Partition) {
        let p = |v: Vec<i64>| Partition::new(v).expect("valid");
        match *self {
            FamilyId::Gl2To21 | FamilyId::So2To21 => (p(vec![2]), p(vec![2, 1])),
            FamilyId::Gl22To221 => (p(vec![2, 2]), p(vec![2, 2, 1])),
            FamilyId::GlHook { a, b } => {
                let mut mu = vec![2; a];
                mu.extend(std::iter::repeat_n(1, b));
                let mut nu = mu.clone();
                nu.push(1);
                (p(mu), p(nu))
            }
            FamilyId::So311To321 => (p(vec![3, 1, 1]), p(vec![3, 2, 1])),
        }
    }

    /// Smallest admissible parameter (`n` for GL families, `m` for SO families).
    pub fn min_param(&self) -> usize {
        match *self {
            FamilyId::Gl2To21 => 1,
            FamilyId::Gl22To221 => 2,
            FamilyId::GlHook { a, b } => a + b,
            FamilyId::So2To21 => 3,
            FamilyId::So311To321 => 5,
        }
    }
}

/// Closed-form sizes of the one-box families. GL families take `n` (so `v = n+1`),
/// SO families take `m`.
pub fn family_sizes(id: FamilyId, param: usize) -> Result<FamilySizes> {
    if param < id.min_param() {
        return Err(Error::Shape(format!("{id:?} needs parameter at least {}", id.min_param())));
    }
    if let FamilyId::GlHook { a, .. } = id {
        if a == 0 {
            return Err(Error::Shape("hook family needs a >= 1".into()));
        }
    }
    let n = param as i64;
    let big = BigInt::from;
    let (source, target, rank) = match id {
        FamilyId::Gl2To21 => (
            exact_div(big((n + 2) * (n + 1)), 2),
            exact_div(big(n * (n + 1) * (n + 2)), 3),
            exact_div(big(n * n + 3 * n), 2),
        ),
        FamilyId::Gl22To221 => (
            exact_div(big(n * (n + 1) * (n + 1) * (n + 2)), 12),
            exact_div(big((n + 2) * (n + 1) * (n + 1) * n * (n - 1)), 24),
            exact_div(big(n * (n * n - 1) * (n + 4)), 12),
        ),
        FamilyId::GlHook { .. } => {
            let (mu, nu) = id.shapes();
            let pred = gl_one_box(&mu, &nu, param + 1)?;
            (gl_dim(&mu, param + 1), gl_dim(&nu, param + 1), big(pred.image_dim as i64))
        }
        FamilyId::So2To21 => (
            exact_div(big(n * n + n - 2), 2),
            exact_div(big(n * n * n - 4 * n), 3),
            exact_div(big(n * n + n - 4), 2),
        ),
        FamilyId::So311To321 => {
            let (mu, nu) = id.shapes();
            let s = orthogonal_traceless_dim(&mu, param);
            let corank = binom(n - 1, 3) + binom(n - 1, 2);
            (s.clone(), orthogonal_traceless_dim(&nu, param), s - corank)
        }
    };
    let corank = &source - &rank;
    Ok(FamilySizes { source_dim: source, target_dim: target, rank, corank })
}

/// Rank of the `a = 1` hook family in closed form: `C(n,b+1) + (b+1) C(n+1,b+2)`.
pub fn hook_rank_closed(n: usize, b: usize) -> BigInt {
    let (n, b) = (n as i64, b as i64);
    binom(n, b + 1) + binom(n + 1, b + 2) * (b + 1)
}

/// The rank expression `C(n,b+2) + C(n,b)(n-b)(n-1)/(b+2)` as printed for the hook
/// family; returned as a rational since it need not be integral.
pub fn hook_rank_printed(n: usize, b: usize) -> BigRational {
    let (n, b) = (n as i64, b as i64);
    BigRational::from_integer(binom(n, b + 2))
        + BigRational::new(binom(n, b) * (n - b) * (n - 1), BigInt::from(b + 2))
}

/// Bounded-rank test for `Lambda^2 A -> Hom(S_lam A, S_mu A)` with `dim A = 2p+1`.
/// The kernel at a general point has dimension at least `s_lam(2p) - s_mu(2p)`; rank is
/// bounded when that exceeds the expected kernel `s_lam(2p+1) - s_mu(2p+1)`, both read
/// as zero when negative. Returns the verdict and the guaranteed kernel dimension.
pub fn hyperplane_bound_criterion(lam: &Partition, mu: &Partition, p: usize) -> Result<(bool, BigInt)> {
    let ok_shape = mu.contains(lam)
        && mu.size() == lam.size() + 2
        && (0..mu.rows().len()).all(|i| mu.part(i) - lam.part(i) <= 1);
    if !ok_shape {
        return Err(Error::Shape(format!("{mu} is not {lam} plus two boxes in different rows")));
    }
    let even = gl_dim(lam, 2 * p) - gl_dim(mu, 2 * p);
    let odd = gl_dim(lam, 2 * p + 1) - gl_dim(mu, 2 * p + 1);
    // kernel dimensions are bounded below by zero on both sides
    let bound = even.max(BigInt::zero());
    let holds = bound > odd.max(BigInt::zero());
    Ok((holds, bound))
}
