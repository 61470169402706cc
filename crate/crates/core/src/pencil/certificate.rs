use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertMethod {
    /// The identity is checked on every source basis vector.
    Exact,
    /// The identity is checked on this many random source vectors per generator.
    Randomized { vectors: usize, seed: u64 },
}

/// Record of a verified infinitesimal equivariance identity
/// `rho_T(X) A_i - A_i rho_S(X) = sum_j X_ji A_j` for every listed generator `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: String,
    pub generators: usize,
    pub method: CertMethod,
    /// `None` when checked over the rationals.
    pub modulus: Option<u64>,
}

type Action<'a, F> = Box<dyn Fn(&[<F as Field>::Elem]) -> Result<Vec<<F as Field>::Elem>> + Send + Sync + 'a>;

/// One Lie algebra generator acting on the three spaces of a pencil.
pub struct Generator<'a, F: Field> {
    /// Column convention: `X e_i = sum_j param[j][i] e_j` on the parameter space.
    pub param: Matrix<F>,
    /// Action on source coordinates.
    pub source: Action<'a, F>,
    /// Action on target coordinates.
    pub target: Action<'a, F>,
}

fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut u = vec![f.zero(); n];
    u[i] = f.one();
    u
}

/// Check the equivariance identity; fails with the first offending generator.
pub fn certify<F: Field>(
    f: &F,
    group: impl Into<String>,
    mats: &[Matrix<F>],
    gens: &[Generator<'_, F>],
    method: CertMethod,
) -> Result<Certificate> {
    let b = mats.first().map_or(0, |m| m.cols());
    let tests: Vec<Vec<F::Elem>> = match method {
        CertMethod::Exact => (0..b).map(|i| unit(f, b, i)).collect(),
        CertMethod::Randomized { vectors, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..vectors).map(|_| (0..b).map(|_| f.random(&mut rng)).collect()).collect()
        }
    };
    gens.par_iter().enumerate().try_for_each(|(g, gen)| -> Result<()> {
        for r in &tests {
            let ar: Vec<Vec<F::Elem>> = mats.iter().map(|a| a.mul_vec(r)).collect();
            let xr = (gen.source)(r)?;
            for (i, a) in mats.iter().enumerate() {
                let mut lhs = (gen.target)(&ar[i])?;
                let axr = a.mul_vec(&xr);
                for (l, x) in lhs.iter_mut().zip(&axr) {
                    *l = f.sub(l, x);
                }
                for (j, arj) in ar.iter().enumerate() {
                    let c = gen.param.get(j, i);
                    if f.is_zero(c) {
                        continue;
                    }
                    for (l, x) in lhs.iter_mut().zip(arj) {
                        f.sub_mul_assign(l, c, x);
                    }
                }
                if lhs.iter().any(|x| !f.is_zero(x)) {
                    return Err(Error::Construction(format!(
                        "equivariance fails for generator {g} on variable {i}"
                    )));
                }
            }
        }
        Ok(())
    })?;
    Ok(Certificate {
        group: group.into(),
        generators: gens.len(),
        method,
        modulus: f.modulus(),
    })
}
