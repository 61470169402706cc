//! Pencils `x -> sum x_i A_i` of `target x source` matrices and their builders.

mod certificate;
mod classical;
mod onebox;
mod spinor;
mod theta;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::GroupSpec;
use crate::error::{Error, Result};
use crate::field::{denominator_lcm, numerator_gcd, Field, PrimeField};
use crate::matrix::Matrix;

pub use certificate::{certify, CertMethod, Certificate, Generator};
pub use classical::{build_adjoint_pencil, build_koszul_pencil, koszul_sign};
pub use onebox::{
    build_gl_pencil, build_gl_pencil_over, build_so_pencil, build_so_pencil_over, build_sp_pencil,
    build_sp_pencil_over, so_kernel_vector_coords, OneBoxBuild,
};
pub use spinor::build_spin_pencil;
pub use theta::theta_map;

/// Where a pencil came from. Only group-built pencils carry a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PencilKind {
    /// `V -> Hom(S_mu V, S_nu V)` for `GL(V)`, `Sp(V)` or `SO(V)`.
    OneBox { group: GroupSpec, mu: String, nu: String },
    /// Wedge with a vector, `V -> Hom(Lambda^k V, Lambda^{k+1} V)`.
    Koszul { v: usize, k: usize },
    /// Clifford multiplication `Delta_+ -> Hom(W, Delta_-)`.
    Spin { n: usize },
    /// `Lambda^3 A -> Hom(sl(A), Lambda^3 A)` by the adjoint action.
    Adjoint { a: usize },
    /// Anything else: fixtures and files.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    pub nvars: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Sparse coefficient matrices: `coeffs[i]` lists `(row, col, value)` of `A_i`,
    /// sorted by `(row, col)`, rows indexing the target.
    pub coeffs: Vec<Vec<(usize, usize, BigInt)>>,
    /// `None`: integer coefficients standing for rationals. `Some(p)`: residues mod `p`.
    pub modulus: Option<u64>,
    pub source_label: String,
    pub target_label: String,
    pub var_labels: Vec<String>,
    pub kind: PencilKind,
    pub certificate: Option<Certificate>,
}

impl Pencil {
    /// Assemble from matrices over any field. Rational pencils are rescaled to
    /// coprime integers; prime-field pencils keep residues.
    pub fn from_matrices<F: Field>(
        f: &F,
        mats: &[Matrix<F>],
        source_label: impl Into<String>,
        target_label: impl Into<String>,
        var_labels: Vec<String>,
        kind: PencilKind,
    ) -> Result<Self> {
        let first = mats.first().ok_or_else(|| Error::Shape("a pencil needs at least one variable".into()))?;
        let (c, b) = (first.rows(), first.cols());
        if mats.iter().any(|m| m.rows() != c || m.cols() != b) {
            return Err(Error::Dimension("coefficient matrices differ in shape".into()));
        }
        if var_labels.len() != mats.len() {
            return Err(Error::Dimension("one label per variable".into()));
        }
        let mut rat: Vec<Vec<(usize, usize, BigRational)>> = Vec::with_capacity(mats.len());
        for m in mats {
            let mut e = Vec::new();
            for i in 0..c {
                for j in 0..b {
                    let x = m.get(i, j);
                    if !f.is_zero(x) {
                        e.push((i, j, f.to_rational(x)));
                    }
                }
            }
            rat.push(e);
        }
        let coeffs = match f.modulus() {
            Some(_) => rat
                .into_iter()
                .map(|e| e.into_iter().map(|(i, j, x)| (i, j, x.to_integer())).collect())
                .collect(),
            None => clear_denominators(rat),
        };
        Ok(Self {
            nvars: mats.len(),
            source_dim: b,
            target_dim: c,
            coeffs,
            modulus: f.modulus(),
            source_label: source_label.into(),
            target_label: target_label.into(),
            var_labels,
            kind,
            certificate: None,
        })
    }

    /// A pencil with integer entries over the rationals.
    pub fn from_integer_entries(
        nvars: usize,
        target_dim: usize,
        source_dim: usize,
        mut coeffs: Vec<Vec<(usize, usize, BigInt)>>,
        var_labels: Vec<String>,
    ) -> Result<Self> {
        if coeffs.len() != nvars || var_labels.len() != nvars {
            return Err(Error::Dimension("one coefficient matrix and label per variable".into()));
        }
        for e in coeffs.iter_mut() {
            e.retain(|t| !t.2.is_zero());
            e.sort_by_key(|t| (t.0, t.1));
            if e.iter().any(|t| t.0 >= target_dim || t.1 >= source_dim) {
                return Err(Error::Dimension("entry outside the matrix".into()));
            }
            if e.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
                return Err(Error::Dimension("repeated entry".into()));
            }
        }
        Ok(Self {
            nvars,
            source_dim,
            target_dim,
            coeffs,
            modulus: None,
            source_label: format!("F^{source_dim}"),
            target_label: format!("F^{target_dim}"),
            var_labels,
            kind: PencilKind::Plain,
            certificate: None,
        })
    }

    /// Whether the pencil can be evaluated over `f`.
    pub fn check_field<F: Field>(&self, f: &F) -> Result<()> {
        match (self.modulus, f.modulus()) {
            (Some(p), Some(q)) if p == q => Ok(()),
            (Some(p), _) => Err(Error::BadPrime(p)),
            _ => Ok(()),
        }
    }

    pub fn coefficient_matrix<F: Field>(&self, f: &F, i: usize) -> Result<Matrix<F>> {
        self.check_field(f)?;
        let mut m = Matrix::zeros(f, self.target_dim, self.source_dim);
        for (r, c, x) in &self.coeffs[i] {
            m.set(*r, *c, f.from_bigint(x));
        }
        Ok(m)
    }

    pub fn coefficient_matrices<F: Field>(&self, f: &F) -> Result<Vec<Matrix<F>>> {
        (0..self.nvars).map(|i| self.coefficient_matrix(f, i)).collect()
    }

    /// `sum x_i A_i`.
    pub fn evaluate<F: Field>(&self, f: &F, x: &[F::Elem]) -> Result<Matrix<F>> {
        self.check_field(f)?;
        if x.len() != self.nvars {
            return Err(Error::Dimension(format!("{} values for {} variables", x.len(), self.nvars)));
        }
        let mut m = Matrix::zeros(f, self.target_dim, self.source_dim);
        for (xi, entries) in x.iter().zip(&self.coeffs) {
            if f.is_zero(xi) {
                continue;
            }
            for (r, c, v) in entries {
                m.add_at(*r, *c, &f.mul(xi, &f.from_bigint(v)));
            }
        }
        Ok(m)
    }

    /// Evaluate over `F_p` at a point given by residues.
    pub fn evaluate_mod(&self, f: &PrimeField, x: &[u64]) -> Result<Matrix<PrimeField>> {
        self.evaluate(f, x)
    }

    /// The pencil with the roles of source and target exchanged.
    pub fn transposed(&self) -> Self {
        let mut p = self.clone();
        std::mem::swap(&mut p.source_dim, &mut p.target_dim);
        std::mem::swap(&mut p.source_label, &mut p.target_label);
        for e in p.coeffs.iter_mut() {
            for t in e.iter_mut() {
                std::mem::swap(&mut t.0, &mut t.1);
            }
            e.sort_by_key(|t| (t.0, t.1));
        }
        p.kind = PencilKind::Plain;
        p.certificate = None;
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|e| e.is_empty())
    }

    pub fn group(&self) -> Option<&GroupSpec> {
        match &self.kind {
            PencilKind::OneBox { group, .. } => Some(group),
            _ => None,
        }
    }
}

fn clear_denominators(rat: Vec<Vec<(usize, usize, BigRational)>>) -> Vec<Vec<(usize, usize, BigInt)>> {
    let lcm = denominator_lcm(rat.iter().flatten().map(|t| &t.2));
    let ints: Vec<Vec<(usize, usize, BigInt)>> = rat
        .into_iter()
        .map(|e| {
            e.into_iter()
                .map(|(i, j, x)| (i, j, (x * BigRational::from_integer(lcm.clone())).to_integer()))
                .collect()
        })
        .collect();
    let g = numerator_gcd(ints.iter().flatten().map(|t| &t.2));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    let g = g.abs();
    ints.into_iter()
        .map(|e| e.into_iter().map(|(i, j, x)| (i, j, x / &g)).collect())
        .collect()
}

pub(crate) fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn rational_pencils_are_cleared_to_coprime_integers() {
        let q = Rationals;
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(2.into(), 3.into());
        let m = Matrix::from_rows(&q, 2, vec![vec![half, BigRational::zero()], vec![BigRational::zero(), third]]);
        let p = Pencil::from_matrices(&q, &[m], "a", "b", vec!["x".into()], PencilKind::Plain).unwrap();
        assert_eq!(p.coeffs[0], vec![(0, 0, BigInt::from(3)), (1, 1, BigInt::from(4))]);
        assert_eq!(p.modulus, None);
    }

    #[test]
    fn evaluation_is_linear() {
        let coeffs = vec![
            vec![(0, 0, BigInt::from(1))],
            vec![(0, 1, BigInt::from(2)), (1, 0, BigInt::from(-1))],
        ];
        let p = Pencil::from_integer_entries(2, 2, 2, coeffs, var_names("x", 2)).unwrap();
        let f = PrimeField::new(7).unwrap();
        let m = p.evaluate(&f, &[3, 1]).unwrap();
        assert_eq!(m.row(0), &[3, 2]);
        assert_eq!(m.row(1), &[6, 0]);
        assert_eq!(p.transposed().evaluate(&f, &[3, 1]).unwrap(), m.transpose());
    }

    #[test]
    fn modular_pencils_refuse_other_fields() {
        let f = PrimeField::new(13).unwrap();
        let m = Matrix::from_i64(&f, &[vec![1, 2]]);
        let p = Pencil::from_matrices(&f, &[m], "a", "b", vec!["x".into()], PencilKind::Plain).unwrap();
        assert!(p.evaluate(&Rationals, &[BigRational::one()]).is_err());
        assert!(p.evaluate(&PrimeField::new(11).unwrap(), &[1]).is_err());
        assert_eq!(p.evaluate(&f, &[2]).unwrap().row(0), &[2, 4]);
    }
}
