use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::points::integer_point;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::matrix::{Matrix, Subspace};
use crate::pencil::Pencil;

/// Sample coordinates are integers in `[-BOUND, BOUND]`, so every sample is a rational
/// point of the pencil as well as an `F_p` point.
const BOUND: i64 = 1 << 20;
const MAX_ROUNDS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RndVerdict {
    RankCriticalCertified,
    StrictlyLarger,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RndRound {
    pub samples: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RndReport {
    pub verdict: RndVerdict,
    /// Dimension of the intersection of the sampled constraint spaces.
    pub dim: usize,
    /// Dimension of the span of the coefficient matrices.
    pub pencil_dim: usize,
    pub generic_rank: usize,
    pub prime: u64,
    pub seed: u64,
    pub rounds: Vec<RndRound>,
    /// The intersection, as vectorized `target x source` matrices (index `row * source + col`).
    #[serde(skip)]
    pub space: Option<Subspace<PrimeField>>,
}

fn vectorize(m: &Matrix<PrimeField>) -> Vec<u64> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// Rank neutral directions: the `B` with `B(Ker A) in Im A` for every sampled
/// maximal-rank `A` of the pencil, intersected over samples.
///
/// Every sample is an integer point whose rank mod `p` equals the generic rank, so each
/// constraint space mod `p` is the reduction of the rational one; the intersection mod
/// `p` is therefore at least as large as over the rationals, and equality with the span
/// of the pencil certifies rank-criticality.
pub fn rnd(p: &Pencil, prime: u64, samples: Option<usize>, seed: u64) -> Result<RndReport> {
    let f = PrimeField::new(prime)?;
    p.check_field(&f)?;
    let (b, c) = (p.source_dim, p.target_dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats = p.coefficient_matrices(&f)?;
    let span = Subspace::from_rows(&f, b * c, mats.iter().map(vectorize).collect());
    let pencil_dim = span.dim();

    let probe: Vec<Vec<u64>> = (0..2 * (p.nvars + 2)).map(|_| integer_point(&f, p.nvars, BOUND, &mut rng)).collect();
    let generic_rank = probe
        .iter()
        .map(|x| p.evaluate(&f, x).map(|m| m.rank()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    if generic_rank == 0 {
        return Err(Error::Degenerate);
    }

    let mut constraints: Vec<Vec<u64>> = Vec::new();
    let mut used = 0usize;
    let mut target = samples.unwrap_or(p.nvars + 2).max(1);
    let mut rounds: Vec<RndRound> = Vec::new();
    let mut tries = 0usize;
    let (verdict, space) = loop {
        while used < target {
            tries += 1;
            if tries > 50 * target + 100 {
                return Err(Error::Degenerate);
            }
            let x = integer_point(&f, p.nvars, BOUND, &mut rng);
            let a = p.evaluate(&f, &x)?;
            if a.rank() != generic_rank {
                continue;
            }
            used += 1;
            let ker = a.kernel();
            let coker = a.left_kernel();
            for yi in 0..coker.dim() {
                let y = coker.basis().row(yi);
                for ki in 0..ker.dim() {
                    let k = ker.basis().row(ki);
                    let mut row = vec![0u64; b * c];
                    for (t, yt) in y.iter().enumerate() {
                        if *yt == 0 {
                            continue;
                        }
                        for (s, ks) in k.iter().enumerate() {
                            row[t * b + s] = f.mul(yt, ks);
                        }
                    }
                    constraints.push(row);
                }
            }
            // keep the constraint system reduced
            if constraints.len() > 2 * b * c {
                let m = Matrix::from_rows(&f, b * c, std::mem::take(&mut constraints));
                let r = m.row_space();
                constraints = (0..r.dim()).map(|i| r.basis().row(i).to_vec()).collect();
            }
        }
        let cons = Matrix::from_rows(&f, b * c, constraints.clone());
        let space = cons.kernel();
        let dim = space.dim();
        rounds.push(RndRound { samples: used, dim });
        if dim == pencil_dim {
            break (RndVerdict::RankCriticalCertified, space);
        }
        let n = rounds.len();
        if n >= 2 && rounds[n - 2].dim == dim {
            break (RndVerdict::StrictlyLarger, space);
        }
        if n >= MAX_ROUNDS {
            break (RndVerdict::Inconclusive, space);
        }
        target *= 2;
    };
    if !span_inside(&space, &span)? {
        return Err(Error::Construction("pencil span escaped its rank neutral directions".into()));
    }
    Ok(RndReport {
        verdict,
        dim: space.dim(),
        pencil_dim,
        generic_rank,
        prime,
        seed,
        rounds,
        space: Some(space),
    })
}

fn span_inside(space: &Subspace<PrimeField>, span: &Subspace<PrimeField>) -> Result<bool> {
    space.contains_subspace(span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use crate::pencil::{build_gl_pencil, build_koszul_pencil};
    use crate::part;

    #[test]
    fn koszul_is_rank_critical() {
        let p = build_koszul_pencil(1, 3).unwrap();
        let r = rnd(&p, DEFAULT_PRIME, None, 0).unwrap();
        assert_eq!(r.verdict, RndVerdict::RankCriticalCertified);
        assert_eq!(r.dim, 3);
    }

    #[test]
    fn gl_two_is_not() {
        let p = build_gl_pencil(&part![2], &part![2, 1], 3).unwrap();
        let r = rnd(&p, DEFAULT_PRIME, None, 0).unwrap();
        assert_eq!(r.verdict, RndVerdict::StrictlyLarger);
        assert_eq!(r.dim, 18);
    }
}
