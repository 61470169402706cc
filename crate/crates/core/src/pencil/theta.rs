use crate::combinatorics::{added_box, BoxPosition, Partition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::reps::ambient::IntVec;
use crate::reps::{schur_module, RealizedModule};

/// For every ambient basis element of `big`, the coordinates in `small` of the
/// symmetrized fillings obtained by reading (or writing) the letter at box `bx`:
/// `out[alpha][letter]`.
fn box_maps<F: Field>(
    f: &F,
    big: &RealizedModule<F>,
    small: &RealizedModule<F>,
    bx: BoxPosition,
    remove: bool,
    letters: usize,
) -> Vec<Vec<Vec<F::Elem>>> {
    let (from, to) = if remove { (big, small) } else { (small, big) };
    let fa = &from.ambient;
    let ta = &to.ambient;
    let rows = ta.row_lengths().to_vec();
    let from_rows = fa.row_lengths().to_vec();
    let (bi, bj) = (bx.row - 1, bx.col - 1);
    (0..fa.dim())
        .map(|alpha| {
            let mut acc = vec![IntVec::new(); letters];
            for (fill, s) in fa.iota(alpha) {
                let mut g = vec![0u8; ta.degree()];
                if remove {
                    for (i, &len) in rows.iter().enumerate() {
                        for j in 0..len {
                            g[ta.cell(i, j)] = fill[fa.cell(i, j)];
                        }
                    }
                    let letter = fill[fa.cell(bi, bj)] as usize;
                    ta.pi_a(&g, s, &mut acc[letter]);
                } else {
                    for (i, &len) in from_rows.iter().enumerate() {
                        for j in 0..len {
                            g[ta.cell(i, j)] = fill[fa.cell(i, j)];
                        }
                    }
                    for (letter, out) in acc.iter_mut().enumerate() {
                        g[ta.cell(bi, bj)] = letter as u8;
                        ta.pi_a(&g, s, out);
                    }
                }
            }
            acc.into_iter()
                .map(|v| {
                    let mut dense = vec![f.zero(); ta.dim()];
                    for (t, c) in v {
                        dense[t] = f.from_i64(c);
                    }
                    to.space.pivot_coordinates(&dense)
                })
                .collect()
        })
        .collect()
}

fn combine<F: Field>(f: &F, u: &[F::Elem], maps: &[Vec<Vec<F::Elem>>], letters: usize, dim: usize) -> Vec<Vec<F::Elem>> {
    let mut out = vec![vec![f.zero(); dim]; letters];
    for (alpha, c) in u.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        for (o, m) in out.iter_mut().zip(&maps[alpha]) {
            for (d, x) in o.iter_mut().zip(m) {
                f.add_mul_assign(d, c, x);
            }
        }
    }
    out
}

/// `Theta_X : S_lam A (x) S_mu B -> S_lam' A (x) S_mu' B` for `lam' = lam - box` and
/// `mu' = mu + box`: a letter of `A` is taken out of `S_lam A`, sent through `X` and put
/// into `S_mu B`. `X` is `a x b`, row `i` holding the image of `e_i` in `B`. Bases are
/// products of the Schur module bases, source index `r * dim S_mu B + s`.
pub fn theta_map<F: Field>(
    f: &F,
    x: &Matrix<F>,
    lam: &Partition,
    lam_p: &Partition,
    mu: &Partition,
    mu_p: &Partition,
) -> Result<Matrix<F>> {
    let (a, b) = (x.rows(), x.cols());
    let rb = added_box(lam_p, lam).ok_or_else(|| Error::Shape(format!("{lam_p} is not {lam} minus one box")))?;
    let ab = added_box(mu, mu_p).ok_or_else(|| Error::Shape(format!("{mu_p} is not {mu} plus one box")))?;
    let sl = schur_module(f, lam, a)?;
    let sm = schur_module(f, mu, b)?;
    let (ds, dm) = (sl.dim(), sm.dim());
    if lam_p.length() > a || mu_p.length() > b {
        return Ok(Matrix::zeros(f, 0, ds * dm));
    }
    let slp = schur_module(f, lam_p, a)?;
    let smp = schur_module(f, mu_p, b)?;
    let (dlp, dmp) = (slp.dim(), smp.dim());
    let kl = box_maps(f, &sl, &slp, rb, true, a);
    let km = box_maps(f, &smp, &sm, ab, false, b);
    let ku: Vec<Vec<Vec<F::Elem>>> = (0..ds).map(|r| combine(f, sl.space.basis().row(r), &kl, a, dlp)).collect();
    let kw: Vec<Vec<Vec<F::Elem>>> = (0..dm).map(|s| combine(f, sm.space.basis().row(s), &km, b, dmp)).collect();
    let mut out = Matrix::zeros(f, dlp * dmp, ds * dm);
    for r in 0..ds {
        for s in 0..dm {
            let col = r * dm + s;
            for i in 0..a {
                for t in 0..b {
                    let xit = x.get(i, t);
                    if f.is_zero(xit) {
                        continue;
                    }
                    for (p, up) in ku[r][i].iter().enumerate() {
                        if f.is_zero(up) {
                            continue;
                        }
                        let c = f.mul(xit, up);
                        for (q, wq) in kw[s][t].iter().enumerate() {
                            if !f.is_zero(wq) {
                                out.add_at(p * dmp + q, col, &f.mul(&c, wq));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::part;

    #[test]
    fn eagon_northcott_two_by_two() {
        let q = Rationals;
        let x = Matrix::from_i64(&q, &[vec![1, 0], vec![0, 1]]);
        let t = theta_map(&q, &x, &part![2], &part![1], &part![1], &part![1, 1]).unwrap();
        assert_eq!((t.rows(), t.cols()), (2, 6));
        assert_eq!(t.rank(), 2);
        let z = Matrix::zeros(&q, 2, 2);
        assert!(theta_map(&q, &z, &part![2], &part![1], &part![1], &part![1, 1]).unwrap().is_zero());
        let one = Matrix::from_i64(&q, &[vec![1]]);
        assert_eq!(theta_map(&q, &one, &part![2], &part![1], &part![1], &part![1, 1]).unwrap().rows(), 0);
    }
}
