use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::certificate::{certify, CertMethod, Generator};
use super::{var_names, Pencil, PencilKind};
use crate::combinatorics::{added_box, BoxPosition, GroupSpec, Partition};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::reps::ambient::{ColumnWedge, IntVec};
use crate::reps::{group_form, lie_basis, orthogonal_module, schur_module, symplectic_module, BilinearFormSpec, LieElement, RealizedModule};

/// Ambient dimension above which the equivariance certificate is checked on random
/// vectors instead of every basis vector.
const EXACT_CERT_LIMIT: usize = 600;
/// Target ambient dimension above which SO pencils are built over `F_p`.
const SO_RATIONAL_LIMIT: usize = 400;

/// A one-box pencil together with the modules it was built from.
#[derive(Clone, Debug)]
pub struct OneBoxBuild<F: Field> {
    pub pencil: Pencil,
    pub source: RealizedModule<F>,
    pub target: RealizedModule<F>,
    /// `A_i` over the build field, before integer normalization.
    pub matrices: Vec<Matrix<F>>,
}

/// `N x k` matrix sending an ambient vector to the module coordinates of its
/// form-orthogonal projection: `c = y G U^T (U G U^T)^-1`.
pub fn form_projection<F: Field>(f: &F, module: &RealizedModule<F>, form: &BilinearFormSpec) -> Result<Matrix<F>> {
    let amb = &module.ambient;
    let u = module.space.basis();
    let k = module.dim();
    let partners: Vec<(usize, i64)> = (0..amb.dim()).map(|t| form.ambient_partner(amb, t)).collect();
    let rows: Vec<Vec<F::Elem>> = partners
        .par_iter()
        .map(|&(p, s)| {
            let s = f.from_i64(s);
            (0..k).map(|r| f.mul(&s, u.get(r, p))).collect()
        })
        .collect();
    let h = Matrix::from_rows(f, k, rows);
    let m = par_mul(u, &h)?;
    let minv = m
        .inverse()
        .ok_or_else(|| Error::Construction("the form is degenerate on the module".into()))?;
    par_mul(&h, &minv)
}

/// Row-parallel product.
pub(crate) fn par_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    if a.cols() != b.rows() {
        return Err(Error::Dimension(format!("{}x{} times {}x{}", a.rows(), a.cols(), b.rows(), b.cols())));
    }
    let f = a.field();
    let rows: Vec<Vec<F::Elem>> = (0..a.rows()).into_par_iter().map(|i| b.vec_mul(a.row(i))).collect();
    Ok(Matrix::from_rows(f, b.cols(), rows))
}

/// Images of `e_val` placed at the new box, for each ambient basis element of `mu`:
/// `phi[val][a]` is a sparse vector in the ambient of `nu`.
fn multiplication_maps(src: &ColumnWedge, tgt: &ColumnWedge, bx: BoxPosition, support: &[usize]) -> Vec<Vec<IntVec>> {
    let v = src.v();
    let mu_rows = src.row_lengths().to_vec();
    let bcell = tgt.cell(bx.row - 1, bx.col - 1);
    let per_a: Vec<Vec<IntVec>> = support
        .par_iter()
        .map(|&a| {
            let mut acc = vec![IntVec::new(); v];
            for (fill, s) in src.iota(a) {
                let mut g = vec![0u8; tgt.degree()];
                for (i, &len) in mu_rows.iter().enumerate() {
                    for j in 0..len {
                        g[tgt.cell(i, j)] = fill[src.cell(i, j)];
                    }
                }
                for (val, out) in acc.iter_mut().enumerate() {
                    g[bcell] = val as u8;
                    tgt.pi_a(&g, s, out);
                }
            }
            acc
        })
        .collect();
    (0..v).map(|val| per_a.iter().map(|acc| acc[val].clone()).collect()).collect()
}

fn nonzero_columns<F: Field>(m: &Matrix<F>) -> Vec<usize> {
    let f = m.field();
    (0..m.cols()).filter(|&j| (0..m.rows()).any(|i| !f.is_zero(m.get(i, j)))).collect()
}

/// Module coordinates of `X` applied to the vector with coordinates `c`.
fn act_coords<F: Field>(module: &RealizedModule<F>, x: &[Vec<i64>], c: &[F::Elem], exact: bool) -> Result<Vec<F::Elem>> {
    let u = module.space.basis().vec_mul(c);
    let img = module.act_ambient(x, &u);
    if exact {
        module
            .space
            .coordinates(&img)?
            .ok_or_else(|| Error::Construction("module is not stable".into()))
    } else {
        Ok(module.space.pivot_coordinates(&img))
    }
}

fn one_box<F: Field>(
    f: &F,
    group: GroupSpec,
    src: RealizedModule<F>,
    tgt: RealizedModule<F>,
    bx: BoxPosition,
    form: Option<&BilinearFormSpec>,
) -> Result<OneBoxBuild<F>> {
    let v = group.natural_dim;
    let (ks, kt) = (src.dim(), tgt.dim());
    let us = src.space.basis();
    let support = nonzero_columns(us);
    let phi = multiplication_maps(&src.ambient, &tgt.ambient, bx, &support);
    let proj = match form {
        Some(form) => Some(form_projection(f, &tgt, form)?),
        None => None,
    };
    let pivot_pos: HashMap<usize, usize> = tgt.space.pivots().iter().enumerate().map(|(r, &p)| (p, r)).collect();
    let us_supp = us.select_columns(&support);
    let mut mats = Vec::with_capacity(v);
    for phi_i in &phi {
        let q_rows: Vec<Vec<F::Elem>> = phi_i
            .par_iter()
            .map(|img| {
                let mut row = vec![f.zero(); kt];
                for (&t, &c) in img {
                    let c = f.from_i64(c);
                    match &proj {
                        Some(p) => {
                            for (d, x) in row.iter_mut().zip(p.row(t)) {
                                f.add_mul_assign(d, &c, x);
                            }
                        }
                        None => {
                            if let Some(&r) = pivot_pos.get(&t) {
                                row[r] = f.add(&row[r], &c);
                            }
                        }
                    }
                }
                row
            })
            .collect();
        let q = Matrix::from_rows(f, kt, q_rows);
        mats.push(par_mul(&us_supp, &q)?.transpose());
    }
    if mats.iter().all(|m| m.is_zero()) {
        return Err(Error::Construction("the multiplication map vanishes on the source".into()));
    }
    if form.is_none() {
        check_gl_membership(f, &src, &tgt, &phi, &support, &mats)?;
    }
    let exact = src.ambient.dim().max(tgt.ambient.dim()) <= EXACT_CERT_LIMIT;
    let gens: Vec<Generator<'_, F>> = lie_basis(&group)
        .into_iter()
        .map(|x| {
            let LieElement::Matrix(m) = x else { unreachable!("matrix groups") };
            let param = Matrix::from_i64(f, &m);
            let (ms, mt) = (m.clone(), m);
            let (s, t) = (&src, &tgt);
            Generator {
                param,
                source: Box::new(move |c: &[F::Elem]| act_coords(s, &ms, c, exact)),
                target: Box::new(move |c: &[F::Elem]| act_coords(t, &mt, c, exact)),
            }
        })
        .collect();
    let method = if exact {
        CertMethod::Exact
    } else {
        CertMethod::Randomized { vectors: 3, seed: 0 }
    };
    let cert = certify(f, group.to_string(), &mats, &gens, method)?;
    drop(gens);
    let kind = PencilKind::OneBox {
        group,
        mu: src.weight.to_string(),
        nu: tgt.weight.to_string(),
    };
    let name = |m: &RealizedModule<F>| match group.family {
        crate::combinatorics::Family::Sp => format!("S<{}>C^{v}", m.weight),
        crate::combinatorics::Family::SO => format!("S[{}]C^{v}", m.weight),
        _ => format!("S{}C^{v}", m.weight),
    };
    let mut pencil = Pencil::from_matrices(f, &mats, name(&src), name(&tgt), var_names("e", v), kind)?;
    pencil.certificate = Some(cert);
    debug_assert_eq!((pencil.source_dim, pencil.target_dim), (ks, kt));
    Ok(OneBoxBuild { pencil, source: src, target: tgt, matrices: mats })
}

/// The products `u * e_i` must land in the target Schur module: checked on every basis
/// vector for small builds and on a random combination otherwise.
fn check_gl_membership<F: Field>(
    f: &F,
    src: &RealizedModule<F>,
    tgt: &RealizedModule<F>,
    phi: &[Vec<IntVec>],
    support: &[usize],
    mats: &[Matrix<F>],
) -> Result<()> {
    let us = src.space.basis();
    let ut = tgt.space.basis();
    let small = src.dim() * tgt.dim() * tgt.ambient.dim() <= 20_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let tests: Vec<Vec<F::Elem>> = if small {
        (0..src.dim())
            .map(|r| (0..src.dim()).map(|s| if r == s { f.one() } else { f.zero() }).collect())
            .collect()
    } else {
        vec![(0..src.dim()).map(|_| f.random(&mut rng)).collect()]
    };
    for (phi_i, a) in phi.iter().zip(mats) {
        for r in &tests {
            let u = us.vec_mul(r);
            let mut y = vec![f.zero(); tgt.ambient.dim()];
            for (k, &col) in support.iter().enumerate() {
                if f.is_zero(&u[col]) {
                    continue;
                }
                for (&t, &c) in &phi_i[k] {
                    f.add_mul_assign(&mut y[t], &u[col], &f.from_i64(c));
                }
            }
            let coords = a.mul_vec(r);
            if ut.vec_mul(&coords) != y {
                return Err(Error::Construction("product left the target Schur module".into()));
            }
        }
    }
    Ok(())
}

fn box_for(mu: &Partition, nu: &Partition) -> Result<BoxPosition> {
    added_box(mu, nu).ok_or_else(|| Error::Shape(format!("{nu} is not {mu} plus one box")))
}

/// `V -> Hom(S_mu V, S_nu V)` for `GL(V)`, over a chosen field.
pub fn build_gl_pencil_over<F: Field>(f: &F, mu: &Partition, nu: &Partition, v: usize) -> Result<OneBoxBuild<F>> {
    let bx = box_for(mu, nu)?;
    let src = schur_module(f, mu, v)?;
    let tgt = schur_module(f, nu, v)?;
    one_box(f, GroupSpec::gl(v), src, tgt, bx, None)
}

/// `V -> Hom(S_mu V, S_nu V)` with integer coefficients.
pub fn build_gl_pencil(mu: &Partition, nu: &Partition, v: usize) -> Result<Pencil> {
    Ok(build_gl_pencil_over(&Rationals, mu, nu, v)?.pencil)
}

pub fn build_sp_pencil_over<F: Field>(f: &F, mu: &Partition, nu: &Partition, two_n: usize) -> Result<OneBoxBuild<F>> {
    let bx = box_for(mu, nu)?;
    let group = GroupSpec::new(crate::combinatorics::Family::Sp, two_n)?;
    let src = symplectic_module(f, mu, two_n)?;
    let tgt = symplectic_module(f, nu, two_n)?;
    let form = group_form(&group).expect("symplectic form");
    one_box(f, group, src, tgt, bx, Some(&form))
}

/// `W -> Hom(S<mu> W, S<nu> W)` for `Sp(W)`, with integer coefficients.
pub fn build_sp_pencil(mu: &Partition, nu: &Partition, two_n: usize) -> Result<Pencil> {
    Ok(build_sp_pencil_over(&Rationals, mu, nu, two_n)?.pencil)
}

pub fn build_so_pencil_over<F: Field>(f: &F, mu: &Partition, nu: &Partition, m: usize) -> Result<OneBoxBuild<F>> {
    let bx = box_for(mu, nu)?;
    let group = GroupSpec::so(m);
    let src = orthogonal_module(f, mu, m)?;
    let tgt = orthogonal_module(f, nu, m)?;
    let form = group_form(&group).expect("quadratic form");
    one_box(f, group, src, tgt, bx, Some(&form))
}

/// `W -> Hom(S[mu] W, S[nu] W)` for `SO(W)`. Small builds are exact over the rationals;
/// large ones are carried out over `F_p` for the default prime.
pub fn build_so_pencil(mu: &Partition, nu: &Partition, m: usize) -> Result<Pencil> {
    box_for(mu, nu)?;
    if nu.length() > m {
        return Err(Error::Shape(format!("{nu} has more than {m} rows")));
    }
    if ColumnWedge::new(nu, m).dim() <= SO_RATIONAL_LIMIT {
        Ok(build_so_pencil_over(&Rationals, mu, nu, m)?.pencil)
    } else {
        Ok(build_so_pencil_over(&PrimeField::default_prime(), mu, nu, m)?.pencil)
    }
}

/// Source coordinates of the projection of `v^2 - q(v) q^` to `S[2] W`, where `q^` is the
/// dual of the quadratic form. The projection along `q^` is `v^2 - q(v) q^ / m`.
pub fn so_kernel_vector_coords<F: Field>(f: &F, build: &OneBoxBuild<F>, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let src = &build.source;
    let m = src.group.natural_dim;
    if src.weight != Partition::new(vec![2]).expect("valid") || v.len() != m {
        return Err(Error::Shape("needs the S[2] source and a vector of W".into()));
    }
    let q: F::Elem = v.iter().fold(f.zero(), |acc, x| f.add(&acc, &f.mul(x, x)));
    let mut y = vec![f.zero(); m * m];
    for a in 0..m {
        for b in 0..m {
            y[a * m + b] = f.mul(&v[a], &v[b]);
        }
        y[a * m + a] = f.sub(&y[a * m + a], &q);
    }
    let p = form_projection(f, src, &BilinearFormSpec::orthogonal(m))?;
    Ok(p.vec_mul(&y))
}
