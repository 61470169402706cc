//! Rank measurement and certification over prime fields.

pub mod points;
mod rnd;

use std::collections::BTreeMap;

use num::{BigInt, BigRational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{gl_one_box, so_one_box, Family, Partition, PredictedDecomposition};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::pencil::{build_gl_pencil, Certificate, Pencil, PencilKind};
use crate::reps::ambient::SubsetIndex;
use crate::reps::spin_space;

pub use rnd::{rnd, RndReport, RndRound, RndVerdict};

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_BUDGET: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    Generic,
    Coordinate,
    Isotropic,
    NonIsotropic,
    PureSpinor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub rank: usize,
    pub class: PointClass,
    /// Number of evaluated points of this class with this rank.
    pub count: u64,
    /// The first such point, as residues mod the prime.
    pub witness: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// One rank at every nonzero point, certified.
    Constant,
    /// Largest observed rank below `min(source, target)`.
    Bounded,
    /// Full generic rank with a drop somewhere.
    NonConstant,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Method {
    Exhaustive { prime: u64, points: u64 },
    Sampled { trials: usize, prime: u64, seed: u64 },
    TransitivityCertificate { prime: u64, certificate: Certificate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub generic_rank: usize,
    pub strata: Vec<Stratum>,
    pub verdict: Verdict,
    pub method: Method,
    pub predicted: Option<PredictedDecomposition>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive { prime: u64, budget: u128 },
    Sampled { prime: u64, trials: usize, seed: u64 },
    Transitivity { prime: u64 },
}

fn field_for(p: &Pencil, prime: u64) -> Result<PrimeField> {
    let f = PrimeField::new(prime)?;
    p.check_field(&f)?;
    Ok(f)
}

pub fn rank_at(p: &Pencil, f: &PrimeField, x: &[u64]) -> Result<usize> {
    Ok(p.evaluate(f, x)?.rank())
}

/// Largest rank over `trials` uniformly random points of `F_prime^s`.
pub fn generic_rank(p: &Pencil, prime: u64, trials: usize, seed: u64) -> Result<usize> {
    let f = field_for(p, prime)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<u64>> = (0..trials.max(1)).map(|_| points::random_point(&f, p.nvars, &mut rng)).collect();
    let ranks: Result<Vec<usize>> = pts.par_iter().map(|x| rank_at(p, &f, x)).collect();
    Ok(ranks?.into_iter().max().unwrap_or(0))
}

fn strata_from(results: Vec<(PointClass, usize, Vec<u64>)>) -> Vec<Stratum> {
    let mut map: BTreeMap<(std::cmp::Reverse<usize>, PointClass), Stratum> = BTreeMap::new();
    for (class, rank, x) in results {
        map.entry((std::cmp::Reverse(rank), class))
            .and_modify(|s| s.count += 1)
            .or_insert(Stratum { rank, class, count: 1, witness: x });
    }
    map.into_values().collect()
}

fn verdict_for(p: &Pencil, strata: &[Stratum], certified: bool) -> (usize, Verdict) {
    let generic = strata.iter().map(|s| s.rank).max().unwrap_or(0);
    let single = strata.iter().all(|s| s.rank == generic);
    let verdict = if certified && single {
        Verdict::Constant
    } else if generic < p.source_dim.min(p.target_dim) {
        Verdict::Bounded
    } else if !single {
        Verdict::NonConstant
    } else {
        Verdict::Inconclusive
    };
    (generic, verdict)
}

/// Structured points for the pencil's group: isotropic and non-isotropic vectors for
/// orthogonal pencils, pure spinors for the spin pencil, coordinate points otherwise.
fn structured_points(p: &Pencil, f: &PrimeField, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(PointClass, Vec<u64>)>> {
    let mut out = Vec::new();
    match &p.kind {
        PencilKind::OneBox { group, .. } if group.family == Family::SO => {
            for x in points::coordinate_points(p.nvars) {
                out.push((PointClass::NonIsotropic, x));
            }
            for _ in 0..count {
                if let Some(x) = points::isotropic_point(f, p.nvars, rng) {
                    out.push((PointClass::Isotropic, x));
                }
            }
        }
        PencilKind::Spin { n } => {
            let (plus, _) = spin_space(*n)?;
            for x in points::coordinate_points(p.nvars) {
                out.push((PointClass::PureSpinor, x));
            }
            for _ in 0..count {
                out.push((PointClass::PureSpinor, points::pure_spinor_point(f, &plus, rng)));
            }
        }
        _ => {
            for x in points::coordinate_points(p.nvars) {
                out.push((PointClass::Coordinate, x));
            }
        }
    }
    Ok(out)
}

fn transitivity_allowed(p: &Pencil) -> Result<&Certificate> {
    let cert = p
        .certificate
        .as_ref()
        .ok_or_else(|| Error::NoTransitivity("the pencil carries no equivariance certificate".into()))?;
    match &p.kind {
        PencilKind::OneBox { group, .. } if matches!(group.family, Family::GL | Family::Sp) => Ok(cert),
        PencilKind::Koszul { .. } => Ok(cert),
        PencilKind::OneBox { group, .. } => Err(Error::NoTransitivity(format!(
            "{group} does not act transitively on the projective base"
        ))),
        PencilKind::Spin { .. } => Err(Error::NoTransitivity("Spin does not act transitively on P(Delta_+)".into())),
        _ => Err(Error::NoTransitivity("not a GL or Sp pencil on the natural module".into())),
    }
}

/// Rank stratification and verdict. Only exhaustive enumeration and the transitivity
/// certificate can return `Constant`.
pub fn constant_rank_verdict(p: &Pencil, mode: Mode) -> Result<RankReport> {
    let (strata, method, certified) = match mode {
        Mode::Exhaustive { prime, budget } => {
            let f = field_for(p, prime)?;
            let count = points::projective_count(prime, p.nvars).unwrap_or(u128::MAX);
            if count > budget {
                return Err(Error::Budget { needed: count, budget });
            }
            let results: Result<Vec<(PointClass, usize, Vec<u64>)>> = (0..count as u64)
                .into_par_iter()
                .map(|i| {
                    let x = points::projective_point(prime, p.nvars, i as u128).expect("in range");
                    let r = rank_at(p, &f, &x)?;
                    Ok((PointClass::Generic, r, x))
                })
                .collect();
            let method = Method::Exhaustive { prime, points: count as u64 };
            (strata_from(results?), method, true)
        }
        Mode::Sampled { prime, trials, seed } => {
            let f = field_for(p, prime)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pts: Vec<(PointClass, Vec<u64>)> = (0..trials)
                .map(|_| (PointClass::Generic, points::random_point(&f, p.nvars, &mut rng)))
                .collect();
            pts.extend(structured_points(p, &f, (trials / 2).max(1), &mut rng)?);
            let results: Result<Vec<(PointClass, usize, Vec<u64>)>> = pts
                .into_par_iter()
                .map(|(c, x)| Ok((c, rank_at(p, &f, &x)?, x)))
                .collect();
            (strata_from(results?), Method::Sampled { trials, prime, seed }, false)
        }
        Mode::Transitivity { prime } => {
            let cert = transitivity_allowed(p)?.clone();
            let f = field_for(p, prime)?;
            let x = points::coordinate_points(p.nvars).remove(0);
            let r = rank_at(p, &f, &x)?;
            let strata = vec![Stratum { rank: r, class: PointClass::Coordinate, count: 1, witness: x }];
            (strata, Method::TransitivityCertificate { prime, certificate: cert }, true)
        }
    };
    let (generic_rank, verdict) = verdict_for(p, &strata, certified);
    Ok(RankReport {
        source_dim: p.source_dim,
        target_dim: p.target_dim,
        generic_rank,
        strata,
        verdict,
        method,
        predicted: predicted_for(p)?,
    })
}

/// Branching prediction for one-box GL and SO pencils.
pub fn predicted_for(p: &Pencil) -> Result<Option<PredictedDecomposition>> {
    let PencilKind::OneBox { group, mu, nu } = &p.kind else {
        return Ok(None);
    };
    let (mu, nu): (Partition, Partition) = (mu.parse()?, nu.parse()?);
    match group.family {
        Family::GL => Ok(Some(predict_gl_decomposition(&mu, &nu, group.natural_dim)?)),
        Family::SO => Ok(Some(predict_so_nonisotropic(&mu, &nu, group.natural_dim)?)),
        _ => Ok(None),
    }
}

/// Kernel, image and cokernel of `phi_v` for `GL(V)`, `dim V = v`.
pub fn predict_gl_decomposition(mu: &Partition, nu: &Partition, v: usize) -> Result<PredictedDecomposition> {
    gl_one_box(mu, nu, v)
}

/// The same decomposition at a non-isotropic point for `SO(m)`.
pub fn predict_so_nonisotropic(mu: &Partition, nu: &Partition, m: usize) -> Result<PredictedDecomposition> {
    so_one_box(mu, nu, m)
}

/// The map `V^v (x) B -> Lambda^2 V^v (x) C`, `x_j (x) u -> sum_i (x_j ^ x_i) (x) A_i u`,
/// for the tensor of a pencil. Rows are indexed by `(pair, t)`, columns by `(j, s)`.
pub fn koszul_flattening<F: Field>(f: &F, p: &Pencil) -> Result<Matrix<F>> {
    let (v, b, c) = (p.nvars, p.source_dim, p.target_dim);
    let pairs = SubsetIndex::get(v, 2);
    let mut m = Matrix::zeros(f, pairs.len() * c, v * b);
    for j in 0..v {
        for (i, entries) in p.coeffs.iter().enumerate() {
            if i == j {
                continue;
            }
            let pr = pairs.rank((1 << i) | (1 << j)).expect("pair");
            let sign = if j < i { f.one() } else { f.neg(&f.one()) };
            for (t, s, x) in entries {
                m.add_at(pr * c + t, j * b + s, &f.mul(&sign, &f.from_bigint(x)));
            }
        }
    }
    Ok(m)
}

/// Exact rank of the Koszul flattening of the `GL(v)` pencil `V -> Hom(S_mu V, S_nu V)`.
pub fn koszul_flattening_rank(mu: &Partition, nu: &Partition, v: usize) -> Result<usize> {
    let p = build_gl_pencil(mu, nu, v)?;
    Ok(koszul_flattening(&Rationals, &p)?.rank())
}

/// Border rank lower bound `ceil(rank / (v - 1))` from a flattening rank.
pub fn border_rank_bound(flattening_rank: usize, v: usize) -> usize {
    flattening_rank.div_ceil(v.saturating_sub(1).max(1))
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::from(0);
    }
    let mut acc = BigRational::from_integer(1.into());
    for i in 0..k {
        acc *= BigRational::new((n - i).into(), (i + 1).into());
    }
    acc.to_integer()
}

/// `abr - a C(r+1, 2) - b C(r, 2) + 2 C(r+1, 3)`: the rank of
/// `Theta_X : S^2 A (x) B -> A (x) Lambda^2 B` at `X` of rank `r`.
pub fn theta_rank_formula(a: usize, b: usize, r: usize) -> Result<BigInt> {
    if r > a.min(b) {
        return Err(Error::Shape(format!("rank {r} exceeds min({a}, {b})")));
    }
    let (a, b, r) = (a as i64, b as i64, r as i64);
    Ok(BigInt::from(a * b * r) - BigInt::from(a) * binom(r + 1, 2) - BigInt::from(b) * binom(r, 2)
        + BigInt::from(2) * binom(r + 1, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::{build_koszul_pencil, build_so_pencil, build_spin_pencil};
    use crate::part;

    #[test]
    fn generic_ranks() {
        let k = build_koszul_pencil(1, 4).unwrap();
        assert_eq!(generic_rank(&k, crate::field::DEFAULT_PRIME, 20, 0).unwrap(), 3);
        assert!(generic_rank(&k, 4, 20, 0).is_err());
    }

    #[test]
    fn exhaustive_gl_is_constant() {
        let p = build_gl_pencil(&part![2], &part![2, 1], 3).unwrap();
        let r = constant_rank_verdict(&p, Mode::Exhaustive { prime: 5, budget: 100 }).unwrap();
        assert_eq!(r.verdict, Verdict::Constant);
        assert_eq!(r.generic_rank, 5);
        assert_eq!(r.method, Method::Exhaustive { prime: 5, points: 31 });
        assert_eq!(r.predicted.as_ref().unwrap().image_dim, 5);
        assert!(matches!(
            constant_rank_verdict(&p, Mode::Exhaustive { prime: 5, budget: 10 }),
            Err(Error::Budget { .. })
        ));
        let t = constant_rank_verdict(&p, Mode::Transitivity { prime: 5 }).unwrap();
        assert_eq!((t.verdict, t.generic_rank), (Verdict::Constant, 5));
    }

    #[test]
    fn transitivity_is_refused_for_so_and_spin() {
        let so = build_so_pencil(&part![2], &part![2, 1], 3).unwrap();
        assert!(matches!(constant_rank_verdict(&so, Mode::Transitivity { prime: 13 }), Err(Error::NoTransitivity(_))));
        let spin = build_spin_pencil(5).unwrap();
        assert!(constant_rank_verdict(&spin, Mode::Transitivity { prime: 13 }).is_err());
        let r = constant_rank_verdict(&spin, Mode::Sampled { prime: crate::field::DEFAULT_PRIME, trials: 20, seed: 1 }).unwrap();
        assert_eq!(r.verdict, Verdict::Bounded);
        assert_eq!(r.generic_rank, 9);
        assert!(r.strata.iter().any(|s| s.rank == 5 && s.class == PointClass::PureSpinor));
    }

    #[test]
    fn so_m3_over_f13_exhaustive() {
        let so = build_so_pencil(&part![2], &part![2, 1], 3).unwrap();
        let r = constant_rank_verdict(&so, Mode::Exhaustive { prime: 13, budget: 1000 }).unwrap();
        assert_eq!((r.verdict, r.generic_rank), (Verdict::Constant, 4));
    }

    #[test]
    fn theta_formula_values() {
        assert_eq!(theta_rank_formula(3, 3, 0).unwrap(), 0.into());
        assert_eq!(theta_rank_formula(1, 1, 1).unwrap(), 0.into());
        assert_eq!(theta_rank_formula(2, 2, 2).unwrap(), 2.into());
        assert!(theta_rank_formula(2, 3, 3).is_err());
    }

    #[test]
    fn flattening() {
        assert_eq!(koszul_flattening_rank(&part![2], &part![2, 1], 3).unwrap(), 18);
        assert_eq!(border_rank_bound(18, 3), 9);
    }
}
