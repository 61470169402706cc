use serde::{Deserialize, Serialize};

use super::forms::BilinearFormSpec;
use crate::combinatorics::{Family, GroupSpec};
use crate::error::{Error, Result};

/// An element of a classical Lie algebra. Matrix Lie algebras act on column vectors;
/// spin elements are sums of `w_a w_b - w_b w_a` in the Clifford algebra, listed as
/// `(a, b, coeff)` with `a, b` indices into the basis `e_1..e_n, f_1..f_n` of `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LieElement {
    Matrix(Vec<Vec<i64>>),
    Bivector(Vec<(usize, usize, i64)>),
}

impl LieElement {
    pub fn matrix(&self) -> Option<&Vec<Vec<i64>>> {
        match self {
            LieElement::Matrix(m) => Some(m),
            LieElement::Bivector(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LieElement::Matrix(m) => m.iter().flatten().all(|&x| x == 0),
            LieElement::Bivector(b) => b.iter().all(|t| t.2 == 0),
        }
    }
}

fn unit(v: usize, i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; v]; v];
    m[i][j] = 1;
    m
}

/// The form preserved by the group, if any.
pub fn group_form(group: &GroupSpec) -> Option<BilinearFormSpec> {
    match group.family {
        Family::Sp => Some(BilinearFormSpec::symplectic(group.natural_dim).expect("even")),
        Family::SO => Some(BilinearFormSpec::orthogonal(group.natural_dim)),
        _ => None,
    }
}

/// A basis of the Lie algebra of `group`.
pub fn lie_basis(group: &GroupSpec) -> Vec<LieElement> {
    let v = group.natural_dim;
    match group.family {
        Family::GL => (0..v)
            .flat_map(|i| (0..v).map(move |j| LieElement::Matrix(unit(v, i, j))))
            .collect(),
        Family::SO => {
            let mut out = Vec::new();
            for i in 0..v {
                for j in i + 1..v {
                    let mut m = unit(v, i, j);
                    m[j][i] = -1;
                    out.push(LieElement::Matrix(m));
                }
            }
            out
        }
        Family::Sp => {
            let n = v / 2;
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let mut m = unit(v, i, j);
                    m[n + j][n + i] -= 1;
                    out.push(LieElement::Matrix(m));
                }
            }
            for i in 0..n {
                for j in i..n {
                    let mut b = unit(v, i, n + j);
                    b[j][n + i] = 1;
                    out.push(LieElement::Matrix(b));
                    let mut c = unit(v, n + i, j);
                    c[n + j][i] = 1;
                    out.push(LieElement::Matrix(c));
                }
            }
            out
        }
        Family::Spin => {
            let mut out = Vec::new();
            for a in 0..v {
                for b in a + 1..v {
                    out.push(LieElement::Bivector(vec![(a, b, 1)]));
                }
            }
            out
        }
    }
}

/// Traceless basis of `sl_a`: off-diagonal units and `E_ii - E_{i+1,i+1}`.
pub fn sl_basis(a: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for i in 0..a {
        for j in 0..a {
            if i != j {
                out.push(unit(a, i, j));
            }
        }
    }
    for i in 0..a.saturating_sub(1) {
        let mut m = unit(a, i, i);
        m[i + 1][i + 1] = -1;
        out.push(m);
    }
    out
}

/// Reject elements outside the Lie algebra of `group`.
pub fn check_in_algebra(group: &GroupSpec, x: &LieElement) -> Result<()> {
    let v = group.natural_dim;
    match (group.family, x) {
        (Family::Spin, LieElement::Bivector(b)) => {
            if b.iter().all(|&(a, c, _)| a < v && c < v && a != c) {
                Ok(())
            } else {
                Err(Error::NotInLieAlgebra("bivector index out of range".into()))
            }
        }
        (Family::Spin, _) | (_, LieElement::Bivector(_)) => {
            Err(Error::NotInLieAlgebra(format!("wrong kind of element for {group}")))
        }
        (_, LieElement::Matrix(m)) => {
            if m.len() != v || m.iter().any(|r| r.len() != v) {
                return Err(Error::NotInLieAlgebra(format!("not a {v}x{v} matrix")));
            }
            match group_form(group) {
                Some(form) if !form.preserves(m) => {
                    Err(Error::NotInLieAlgebra(format!("matrix does not preserve the {group} form")))
                }
                _ => Ok(()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bases_have_the_right_dimension_and_lie_in_the_algebra() {
        for (g, d) in [
            (GroupSpec::gl(3), 9),
            (GroupSpec::sp(6), 21),
            (GroupSpec::so(5), 10),
            (GroupSpec::spin(10), 45),
        ] {
            let b = lie_basis(&g);
            assert_eq!(b.len(), d);
            for x in &b {
                check_in_algebra(&g, x).unwrap();
            }
        }
        assert_eq!(sl_basis(7).len(), 48);
        assert!(check_in_algebra(&GroupSpec::so(3), &LieElement::Matrix(unit(3, 0, 1))).is_err());
    }
}
