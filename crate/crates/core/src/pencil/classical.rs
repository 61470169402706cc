use num::BigInt;

use super::certificate::{certify, CertMethod, Generator};
use super::{var_names, Pencil, PencilKind};
use crate::combinatorics::{GroupSpec, Partition};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::reps::ambient::{below, elements, ColumnWedge, IntVec, SubsetIndex};
use crate::reps::{lie_basis, sl_basis, LieElement};

/// Sign of `e_i ^ e_I` against the sorted basis element `e_{I+i}`.
pub fn koszul_sign(mask: u32, i: usize) -> i64 {
    if below(mask, i).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn column(k: usize) -> Partition {
    Partition::new(vec![1; k]).expect("valid")
}

fn derivation_coords<F: Field>(f: &F, amb: &ColumnWedge, x: &[Vec<i64>], c: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); amb.dim()];
    for (a, ca) in c.iter().enumerate() {
        if f.is_zero(ca) {
            continue;
        }
        let mut img = IntVec::new();
        amb.derivation(x, a, 1, &mut img);
        for (t, v) in img {
            f.add_mul_assign(&mut out[t], ca, &f.from_i64(v));
        }
    }
    out
}

fn derivation_matrix<F: Field>(f: &F, amb: &ColumnWedge, x: &[Vec<i64>]) -> Matrix<F> {
    let mut m = Matrix::zeros(f, amb.dim(), amb.dim());
    for a in 0..amb.dim() {
        let mut img = IntVec::new();
        amb.derivation(x, a, 1, &mut img);
        for (t, v) in img {
            m.set(t, a, f.from_i64(v));
        }
    }
    m
}

/// `V -> Hom(Lambda^k V, Lambda^{k+1} V)`, `v -> (w -> v ^ w)`, in the lexicographic
/// `e_I` bases.
pub fn build_koszul_pencil(k: usize, v: usize) -> Result<Pencil> {
    if k >= v {
        return Err(Error::Shape(format!("need 0 <= k < v, got k = {k}, v = {v}")));
    }
    let src = SubsetIndex::get(v, k);
    let tgt = SubsetIndex::get(v, k + 1);
    let coeffs: Vec<Vec<(usize, usize, BigInt)>> = (0..v)
        .map(|i| {
            let mut e: Vec<(usize, usize, BigInt)> = src
                .subsets()
                .iter()
                .enumerate()
                .filter(|(_, &m)| m >> i & 1 == 0)
                .map(|(c, &m)| (tgt.rank(m | 1 << i).expect("size k+1"), c, BigInt::from(koszul_sign(m, i))))
                .collect();
            e.sort_by_key(|t| (t.0, t.1));
            e
        })
        .collect();
    let mut p = Pencil::from_integer_entries(v, tgt.len(), src.len(), coeffs, var_names("e", v))?;
    p.source_label = format!("L{k}C^{v}");
    p.target_label = format!("L{}C^{v}", k + 1);
    p.kind = PencilKind::Koszul { v, k };

    let q = Rationals;
    let mats = p.coefficient_matrices(&q)?;
    let (sa, ta) = (ColumnWedge::new(&column(k), v), ColumnWedge::new(&column(k + 1), v));
    let group = GroupSpec::gl(v);
    let gens: Vec<Generator<'_, Rationals>> = lie_basis(&group)
        .into_iter()
        .map(|x| {
            let LieElement::Matrix(m) = x else { unreachable!() };
            let (ms, mt) = (m.clone(), m.clone());
            let (sa, ta) = (&sa, &ta);
            Generator {
                param: Matrix::from_i64(&q, &m),
                source: Box::new(move |c: &[num::BigRational]| Ok(derivation_coords(&q, sa, &ms, c))),
                target: Box::new(move |c: &[num::BigRational]| Ok(derivation_coords(&q, ta, &mt, c))),
            }
        })
        .collect();
    let cert = certify(&q, group.to_string(), &mats, &gens, CertMethod::Exact)?;
    drop(gens);
    p.certificate = Some(cert);
    Ok(p)
}

/// Coordinates of `[X, Y]` in the `sl_basis` order, `Y` given by coordinates.
fn ad_coords<F: Field>(f: &F, a: usize, basis: &[Vec<Vec<i64>>], x: &[Vec<i64>], c: &[F::Elem]) -> Vec<F::Elem> {
    let mut y = vec![vec![f.zero(); a]; a];
    for (b, cb) in basis.iter().zip(c) {
        if f.is_zero(cb) {
            continue;
        }
        for i in 0..a {
            for j in 0..a {
                if b[i][j] != 0 {
                    f.add_mul_assign(&mut y[i][j], cb, &f.from_i64(b[i][j]));
                }
            }
        }
    }
    let mut z = vec![vec![f.zero(); a]; a];
    for i in 0..a {
        for j in 0..a {
            for k in 0..a {
                if x[i][k] != 0 {
                    f.add_mul_assign(&mut z[i][j], &f.from_i64(x[i][k]), &y[k][j]);
                }
                if x[k][j] != 0 {
                    f.sub_mul_assign(&mut z[i][j], &y[i][k], &f.from_i64(x[k][j]));
                }
            }
        }
    }
    let mut out = Vec::with_capacity(a * a - 1);
    for i in 0..a {
        for j in 0..a {
            if i != j {
                out.push(z[i][j].clone());
            }
        }
    }
    let mut run = f.zero();
    for i in 0..a - 1 {
        run = f.add(&run, &z[i][i]);
        out.push(run.clone());
    }
    out
}

/// `Lambda^3 A -> Hom(sl(A), Lambda^3 A)`, `omega -> (X -> X . omega)`.
pub fn build_adjoint_pencil(a: usize) -> Result<Pencil> {
    if a < 3 {
        return Err(Error::Shape("Lambda^3 A needs dim A >= 3".into()));
    }
    let amb = ColumnWedge::new(&column(3), a);
    let basis = sl_basis(a);
    let n = amb.dim();
    let coeffs: Vec<Vec<(usize, usize, BigInt)>> = (0..n)
        .map(|w| {
            let mut e = Vec::new();
            for (col, y) in basis.iter().enumerate() {
                let mut img = IntVec::new();
                amb.derivation(y, w, 1, &mut img);
                e.extend(img.into_iter().map(|(r, c)| (r, col, BigInt::from(c))));
            }
            e
        })
        .collect();
    let labels = SubsetIndex::get(a, 3)
        .subsets()
        .iter()
        .map(|&m| format!("w{}", elements(m).iter().map(|i| (i + 1).to_string()).collect::<String>()))
        .collect();
    let mut p = Pencil::from_integer_entries(n, n, basis.len(), coeffs, labels)?;
    p.source_label = format!("sl{a}");
    p.target_label = format!("L3C^{a}");
    p.kind = PencilKind::Adjoint { a };

    let f = PrimeField::default_prime();
    let mats = p.coefficient_matrices(&f)?;
    let gens: Vec<Generator<'_, PrimeField>> = basis
        .iter()
        .map(|x| {
            let (xs, xt) = (x.clone(), x.clone());
            let (amb, basis, f) = (&amb, &basis, &f);
            Generator {
                param: derivation_matrix(f, amb, x),
                source: Box::new(move |c: &[u64]| Ok(ad_coords(f, a, basis, &xs, c))),
                target: Box::new(move |c: &[u64]| Ok(derivation_coords(f, amb, &xt, c))),
            }
        })
        .collect();
    let method = if a <= 5 {
        CertMethod::Exact
    } else {
        CertMethod::Randomized { vectors: 3, seed: 0 }
    };
    let cert = certify(&f, format!("SL({a})"), &mats, &gens, method)?;
    drop(gens);
    p.certificate = Some(cert);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_shapes_and_ranks() {
        let f = PrimeField::new(101).unwrap();
        let p = build_koszul_pencil(1, 4).unwrap();
        assert_eq!((p.nvars, p.target_dim, p.source_dim), (4, 6, 4));
        assert_eq!(p.evaluate(&f, &[1, 2, 3, 4]).unwrap().rank(), 3);
        let p0 = build_koszul_pencil(0, 3).unwrap();
        assert_eq!(p0.evaluate(&f, &[0, 5, 0]).unwrap().rank(), 1);
        assert!(build_koszul_pencil(3, 3).is_err());
    }

    #[test]
    fn adjoint_shapes() {
        let p = build_adjoint_pencil(4).unwrap();
        assert_eq!((p.nvars, p.target_dim, p.source_dim), (4, 4, 15));
        assert!(p.certificate.is_some());
    }
}
