use std::collections::HashMap;

use rayon::prelude::*;

use super::ambient::{add_into, elements, ColumnWedge, IntVec};
use super::forms::{BilinearFormSpec, FormKind};
use super::lie::{check_in_algebra, LieElement};
use crate::combinatorics::{gl_dim, orthogonal_traceless_dim, ssyt, weyl_dim_partition, GroupSpec, Partition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};

/// A module realized as a subspace of a column-wedge ambient.
#[derive(Clone, Debug)]
pub struct RealizedModule<F: Field> {
    pub group: GroupSpec,
    pub weight: Partition,
    pub ambient: ColumnWedge,
    pub space: Subspace<F>,
    /// Semistandard tableaux whose symmetrized words span the underlying GL module.
    pub labels: Vec<Vec<usize>>,
}

pub(crate) fn to_dense<F: Field>(f: &F, n: usize, v: &IntVec) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (&i, &c) in v {
        out[i] = f.from_i64(c);
    }
    out
}

/// Span of the symmetrized tableau words of shape `lam` over `0..v`.
pub fn schur_module<F: Field>(field: &F, lam: &Partition, v: usize) -> Result<RealizedModule<F>> {
    if !lam.is_partition() {
        return Err(Error::Shape(format!("{lam} has negative parts")));
    }
    if lam.length() > v {
        return Err(Error::Shape(format!("{lam} has more than {v} rows")));
    }
    let ambient = ColumnWedge::new(lam, v);
    let labels = ssyt(lam, v);
    let rows: Vec<Vec<F::Elem>> = labels
        .par_iter()
        .map(|t| {
            let w: Vec<u8> = t.iter().map(|&x| x as u8).collect();
            let mut acc = IntVec::new();
            ambient.pi_a(&w, 1, &mut acc);
            to_dense(field, ambient.dim(), &acc)
        })
        .collect();
    let space = Subspace::from_rows(field, ambient.dim(), rows);
    let expected = gl_dim(lam, v);
    if num::BigInt::from(space.dim()) != expected {
        return Err(Error::Construction(format!(
            "S_{lam}(C^{v}) came out of dimension {} instead of {expected}",
            space.dim()
        )));
    }
    Ok(RealizedModule {
        group: GroupSpec::gl(v),
        weight: lam.clone(),
        ambient,
        space,
        labels,
    })
}

/// One contraction by the form, between the top slots of columns `j1 <= j2`.
fn contract(
    form: &BilinearFormSpec,
    amb: &ColumnWedge,
    out: &ColumnWedge,
    j1: usize,
    j2: usize,
    idx: usize,
    acc: &mut IntVec,
    coeff: i64,
) {
    let masks = amb.decode(idx);
    let pos_sign = |m: u32, s: usize| if super::ambient::below(m, s).is_multiple_of(2) { 1 } else { -1 };
    if j1 == j2 {
        let m = masks[j1];
        let el = elements(m);
        for (p, &s) in el.iter().enumerate() {
            for (q, &t) in el.iter().enumerate().skip(p + 1) {
                let b = form.pair(s, t);
                if b == 0 {
                    continue;
                }
                let sign = if (p + q + 1) % 2 == 0 { 1 } else { -1 };
                let mut nm = masks.clone();
                nm[j1] = m & !(1 << s) & !(1 << t);
                let nidx = out.encode(&shrink(&nm)).expect("contracted shape");
                add_into(acc, nidx, coeff * sign * b);
            }
        }
        return;
    }
    let (m1, m2) = (masks[j1], masks[j2]);
    for s in elements(m1) {
        for t in elements(m2) {
            let b = form.pair(s, t);
            if b == 0 {
                continue;
            }
            let mut nm = masks.clone();
            nm[j1] = m1 & !(1 << s);
            nm[j2] = m2 & !(1 << t);
            let nidx = out.encode(&shrink(&nm)).expect("contracted shape");
            add_into(acc, nidx, coeff * pos_sign(m1, s) * pos_sign(m2, t) * b);
        }
    }
}

/// Drop empty columns and reorder by decreasing length so the masks index a shape.
fn shrink(masks: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = masks.iter().copied().filter(|&m| m != 0).collect();
    v.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    v
}

fn contracted_shape(cols: &[usize], j1: usize, j2: usize) -> Option<Partition> {
    let mut c: Vec<i64> = cols.iter().map(|&x| x as i64).collect();
    c[j1] -= 1;
    c[j2] -= 1;
    if c.iter().any(|&x| x < 0) {
        return None;
    }
    c.sort_unstable_by(|a, b| b.cmp(a));
    let p = Partition::new(c).ok()?;
    Some(p.conjugate())
}

/// Common kernel inside `S_lam` of all contractions by the form.
fn traceless<F: Field>(
    field: &F,
    lam: &Partition,
    form: &BilinearFormSpec,
    group: GroupSpec,
    expected: num::BigInt,
) -> Result<RealizedModule<F>> {
    let full = schur_module(field, lam, form.dim())?;
    let amb = full.ambient.clone();
    let cols = amb.col_lengths().to_vec();
    let mut pairs = Vec::new();
    for j1 in 0..cols.len() {
        for j2 in j1..cols.len() {
            if j1 == j2 && (form.kind == FormKind::Orthogonal || cols[j1] < 2) {
                continue;
            }
            if let Some(shape) = contracted_shape(&cols, j1, j2) {
                pairs.push((j1, j2, ColumnWedge::new(&shape, form.dim())));
            }
        }
    }
    let k = full.space.dim();
    let basis = full.space.basis();
    // rows of the constraint matrix: one block per contraction, columns: basis vectors
    let blocks: Vec<Vec<HashMap<usize, F::Elem>>> = pairs
        .iter()
        .map(|(j1, j2, out)| {
            (0..k)
                .into_par_iter()
                .map(|r| {
                    let mut acc: HashMap<usize, F::Elem> = HashMap::new();
                    for (a, c) in basis.row(r).iter().enumerate() {
                        if field.is_zero(c) {
                            continue;
                        }
                        let mut img = IntVec::new();
                        contract(form, &amb, out, *j1, *j2, a, &mut img, 1);
                        for (i, x) in img {
                            let e = acc.entry(i).or_insert_with(|| field.zero());
                            field.add_mul_assign(e, c, &field.from_i64(x));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut nrows = 0;
    let mut offsets = Vec::new();
    for (_, _, out) in &pairs {
        offsets.push(nrows);
        nrows += out.dim();
    }
    let mut cons = Matrix::zeros(field, nrows, k);
    for (b, block) in blocks.iter().enumerate() {
        for (r, col) in block.iter().enumerate() {
            for (i, x) in col {
                cons.set(offsets[b] + i, r, x.clone());
            }
        }
    }
    let ker = cons.kernel();
    let coeffs = ker.basis();
    let rows: Vec<Vec<F::Elem>> = (0..coeffs.rows())
        .into_par_iter()
        .map(|i| basis.vec_mul(coeffs.row(i)))
        .collect();
    let space = Subspace::from_rows(field, amb.dim(), rows);
    if num::BigInt::from(space.dim()) != expected {
        return Err(Error::Construction(format!(
            "traceless {lam} for {group} came out of dimension {} instead of {expected}",
            space.dim()
        )));
    }
    Ok(RealizedModule {
        group,
        weight: lam.clone(),
        ambient: amb,
        space,
        labels: full.labels,
    })
}

/// `S_<lam> W`: the part of `S_lam W` killed by every contraction with the standard
/// symplectic form.
pub fn symplectic_module<F: Field>(field: &F, lam: &Partition, two_n: usize) -> Result<RealizedModule<F>> {
    let group = GroupSpec::new(crate::combinatorics::Family::Sp, two_n)?;
    if lam.length() > two_n / 2 {
        return Err(Error::Shape(format!("{lam} has more than {} rows", two_n / 2)));
    }
    let expected = weyl_dim_partition(&group, lam)?;
    traceless(field, lam, &BilinearFormSpec::symplectic(two_n)?, group, expected)
}

/// `S_[lam] W`: the part of `S_lam W` killed by every contraction with the identity form.
pub fn orthogonal_module<F: Field>(field: &F, lam: &Partition, m: usize) -> Result<RealizedModule<F>> {
    let group = GroupSpec::so(m);
    let expected = orthogonal_traceless_dim(lam, m);
    if expected == num::BigInt::from(0) {
        return Err(Error::Shape(format!("{lam} indexes no O({m})-module")));
    }
    traceless(field, lam, &BilinearFormSpec::orthogonal(m), group, expected)
}

impl<F: Field> RealizedModule<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> &F {
        self.space.field()
    }

    /// Derivation action on an ambient vector.
    pub fn act_ambient(&self, x: &[Vec<i64>], u: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.ambient.dim()];
        for (a, c) in u.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let mut img = IntVec::new();
            self.ambient.derivation(x, a, 1, &mut img);
            for (i, v) in img {
                f.add_mul_assign(&mut out[i], c, &f.from_i64(v));
            }
        }
        out
    }

    /// Matrix of `X` on the module basis: row `r` holds the coordinates of `X u_r`,
    /// so it acts on coordinate row vectors from the right. Fails if `X` is outside the
    /// Lie algebra or the result leaves the module.
    pub fn lie_matrix(&self, x: &LieElement) -> Result<Matrix<F>> {
        check_in_algebra(&self.group, x)?;
        let m = x.matrix().expect("matrix element");
        let rows: Vec<Result<Vec<F::Elem>>> = (0..self.dim())
            .into_par_iter()
            .map(|r| {
                let img = self.act_ambient(m, self.space.basis().row(r));
                self.space
                    .coordinates(&img)?
                    .ok_or_else(|| Error::Construction("module is not stable under the action".into()))
            })
            .collect();
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(self.field(), self.dim(), rows))
    }
}

/// Apply `X` to `u` (ambient coordinates) and check that the result stays in the module.
pub fn lie_action<F: Field>(
    group: &GroupSpec,
    x: &LieElement,
    module: &RealizedModule<F>,
    u: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    check_in_algebra(group, x)?;
    let m = x.matrix().ok_or_else(|| Error::NotInLieAlgebra("spin elements act on spinors".into()))?;
    let out = module.act_ambient(m, u);
    if !module.space.contains(&out)? {
        return Err(Error::Construction("action left the module".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::part;
    use crate::reps::lie::lie_basis;

    #[test]
    fn schur_dimensions() {
        let q = Rationals;
        assert_eq!(schur_module(&q, &part![1], 3).unwrap().dim(), 3);
        assert_eq!(schur_module(&q, &part![2], 3).unwrap().dim(), 6);
        assert_eq!(schur_module(&q, &part![2, 1], 3).unwrap().dim(), 8);
        assert!(schur_module(&q, &part![1, 1, 1, 1], 3).is_err());
    }

    #[test]
    fn classical_dimensions() {
        let q = Rationals;
        assert_eq!(symplectic_module(&q, &part![1, 1], 6).unwrap().dim(), 14);
        assert_eq!(symplectic_module(&q, &part![1, 1, 1], 6).unwrap().dim(), 14);
        assert_eq!(symplectic_module(&q, &part![1], 4).unwrap().dim(), 4);
        assert_eq!(orthogonal_module(&q, &part![2], 3).unwrap().dim(), 5);
        assert_eq!(orthogonal_module(&q, &part![2, 1], 3).unwrap().dim(), 5);
        let f = PrimeField::default_prime();
        assert_eq!(orthogonal_module(&f, &part![3, 1, 1], 5).unwrap().dim(), 81);
    }

    #[test]
    fn identity_acts_by_degree() {
        let q = Rationals;
        let m = schur_module(&q, &part![2, 1], 3).unwrap();
        let id: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
        let u = m.space.basis().row(2).to_vec();
        let out = lie_action(&GroupSpec::gl(3), &LieElement::Matrix(id), &m, &u).unwrap();
        let three = num::BigRational::from_integer(3.into());
        assert_eq!(out, u.iter().map(|x| x * &three).collect::<Vec<_>>());
    }

    #[test]
    fn symplectic_module_is_stable() {
        let q = Rationals;
        let m = symplectic_module(&q, &part![1, 1], 6).unwrap();
        for x in lie_basis(&m.group) {
            m.lie_matrix(&x).unwrap();
        }
        let mut bad = vec![vec![0; 6]; 6];
        bad[0][1] = 1;
        assert!(m.lie_matrix(&LieElement::Matrix(bad)).is_err());
    }
}
