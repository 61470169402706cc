//! Field-tagged scalars and matrices for callers that pick the field at runtime.

use num::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl Scalar {
    /// Reduce a rational into F_p; fails when p divides the denominator.
    pub fn reduce(&self, field: &PrimeField) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => field
                .from_rational(q)
                .map(|value| Scalar::Modular { value, p: field.p() })
                .ok_or(Error::BadPrime(field.p())),
            Scalar::Modular { p, .. } if *p == field.p() => Ok(self.clone()),
            Scalar::Modular { p, .. } => Err(Error::Dimension(format!(
                "cannot mix F_{p} with F_{}",
                field.p()
            ))),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                let f = PrimeField::new(*p)?;
                Ok(Scalar::Modular { value: f.add(a, b), p: *p })
            }
            _ => Err(Error::Dimension("mixed-field scalar arithmetic".into())),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Modular { value: a, p }, Scalar::Modular { value: b, p: q }) if p == q => {
                let f = PrimeField::new(*p)?;
                Ok(Scalar::Modular { value: f.mul(a, b), p: *p })
            }
            _ => Err(Error::Dimension("mixed-field scalar arithmetic".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExactMatrix {
    Rational(Matrix<Rationals>),
    Modular(Matrix<PrimeField>),
}

impl ExactMatrix {
    pub fn rows(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.rows(),
            ExactMatrix::Modular(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.cols(),
            ExactMatrix::Modular(m) => m.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ExactMatrix::Rational(m) => m.rank(),
            ExactMatrix::Modular(m) => m.rank(),
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols() - self.rank()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self {
            ExactMatrix::Rational(m) => Scalar::Rational(m.get(i, j).clone()),
            ExactMatrix::Modular(m) => Scalar::Modular {
                value: *m.get(i, j),
                p: m.field().p(),
            },
        }
    }

    pub fn reduce(&self, field: &PrimeField) -> Result<Matrix<PrimeField>> {
        match self {
            ExactMatrix::Rational(m) => {
                let mut bad = false;
                let out = m.map_field(field, |x| {
                    field.from_rational(x).unwrap_or_else(|| {
                        bad = true;
                        0
                    })
                });
                if bad {
                    Err(Error::BadPrime(field.p()))
                } else {
                    Ok(out)
                }
            }
            ExactMatrix::Modular(m) if m.field().p() == field.p() => Ok(m.clone()),
            ExactMatrix::Modular(m) => Err(Error::Dimension(format!(
                "matrix over F_{} requested over F_{}",
                m.field().p(),
                field.p()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_silent_mixing() {
        let a = Scalar::Rational(BigRational::from_integer(3.into()));
        let b = Scalar::Modular { value: 3, p: 7 };
        assert!(a.add(&b).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(a.reduce(&f).unwrap().add(&b).unwrap(), Scalar::Modular { value: 6, p: 7 });
    }

    #[test]
    fn reduction_needs_invertible_denominators() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(&Rationals, 1, vec![vec![BigRational::new(1.into(), 3.into())]]);
        assert!(ExactMatrix::Rational(m).reduce(&f).is_err());
    }
}
