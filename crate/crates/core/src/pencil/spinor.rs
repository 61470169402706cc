use num::BigInt;

use super::certificate::{certify, CertMethod, Generator};
use super::{Pencil, PencilKind};
use crate::combinatorics::GroupSpec;
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::reps::spin::{basis_action, spin_act, spin_act_w, spin_lie_matrix};
use crate::reps::{lie_basis, spin_space};

/// `Delta_+ -> Hom(W, Delta_-)`, `delta -> (w -> w . delta)`. Columns are
/// `e_1..e_n, f_1..f_n`; rows and variables follow the half-spin bases.
pub fn build_spin_pencil(n: usize) -> Result<Pencil> {
    let (plus, minus) = spin_space(n)?;
    let q = Rationals;
    let coeffs: Vec<Vec<(usize, usize, BigInt)>> = plus
        .basis
        .iter()
        .map(|&m| {
            let mut s = vec![q.zero(); 1 << n];
            s[m as usize] = q.one();
            let mut e = Vec::new();
            for j in 0..2 * n {
                let img = basis_action(&q, n, j, &s);
                for (t, x) in img.iter().enumerate() {
                    if !q.is_zero(x) {
                        let row = minus.position(t as u32).expect("odd part");
                        e.push((row, j, x.to_integer()));
                    }
                }
            }
            e
        })
        .collect();
    let labels = (0..plus.dim()).map(|i| format!("d{}", plus.label(i))).collect();
    let mut p = Pencil::from_integer_entries(plus.dim(), minus.dim(), 2 * n, coeffs, labels)?;
    p.source_label = format!("C^{}", 2 * n);
    p.target_label = format!("D-({})", 2 * n);
    p.kind = PencilKind::Spin { n };

    let mats = p.coefficient_matrices(&q)?;
    let group = GroupSpec::spin(2 * n);
    let basis = lie_basis(&group);
    let mut gens = Vec::with_capacity(basis.len());
    for x in &basis {
        let param = spin_lie_matrix(&q, &plus, x)?.transpose();
        let (minus, q) = (&minus, &q);
        gens.push(Generator {
            param,
            source: Box::new(move |w: &[num::BigRational]| spin_act_w(q, n, x, w)),
            target: Box::new(move |c: &[num::BigRational]| {
                let s = spin_act(q, n, x, &minus.embed(q, c))?;
                minus
                    .coords(q, &s)
                    .ok_or_else(|| Error::Construction("parity not preserved".into()))
            }),
        });
    }
    let cert = certify(&q, group.to_string(), &mats, &gens, CertMethod::Exact)?;
    drop(gens);
    p.certificate = Some(cert);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn spin_pencil_shape_and_pure_spinor_rank() {
        let p = build_spin_pencil(5).unwrap();
        assert_eq!((p.nvars, p.target_dim, p.source_dim), (16, 16, 10));
        let f = PrimeField::default_prime();
        let mut x = vec![0u64; 16];
        x[0] = 1;
        assert_eq!(p.evaluate(&f, &x).unwrap().rank(), 5);
        let y: Vec<u64> = (0..16).map(|i| (i * i + 3) as u64).collect();
        assert_eq!(p.evaluate(&f, &y).unwrap().rank(), 9);
    }
}
