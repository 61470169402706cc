use serde::{Deserialize, Serialize};

use super::ambient::{elements, ColumnWedge};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Symplectic,
    Orthogonal,
}

/// An invariant form on the natural module with exactly one nonzero entry per row:
/// `omega = sum e_i ^ e_{n+i}` or the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearFormSpec {
    pub kind: FormKind,
    pub matrix: Vec<Vec<i64>>,
}

impl BilinearFormSpec {
    pub fn symplectic(two_n: usize) -> Result<Self> {
        if two_n % 2 == 1 {
            return Err(Error::Shape("symplectic form needs even dimension".into()));
        }
        let n = two_n / 2;
        let mut m = vec![vec![0; two_n]; two_n];
        for i in 0..n {
            m[i][n + i] = 1;
            m[n + i][i] = -1;
        }
        Ok(Self { kind: FormKind::Symplectic, matrix: m })
    }

    pub fn orthogonal(m: usize) -> Self {
        let matrix = (0..m).map(|i| (0..m).map(|j| i64::from(i == j)).collect()).collect();
        Self { kind: FormKind::Orthogonal, matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn pair(&self, s: usize, t: usize) -> i64 {
        self.matrix[s][t]
    }

    /// The unique `t` with `B(s, t) != 0`, and that value.
    pub fn partner(&self, s: usize) -> (usize, i64) {
        let row = &self.matrix[s];
        let t = row.iter().position(|&x| x != 0).expect("nondegenerate form");
        (t, row[t])
    }

    /// `B(x, y) = x^T M y`.
    pub fn eval(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * self.matrix[i][j] * yj;
            }
        }
        acc
    }

    /// Whether `X^T M + M X = 0`.
    pub fn preserves(&self, x: &[Vec<i64>]) -> bool {
        let n = self.dim();
        if x.len() != n {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a: i64 = (0..n).map(|k| x[k][i] * self.matrix[k][j]).sum();
                let b: i64 = (0..n).map(|k| self.matrix[i][k] * x[k][j]).sum();
                a + b == 0
            })
        })
    }

    /// The induced form on the ambient, as a signed permutation:
    /// `G(idx, partner) = sign` and zero elsewhere.
    pub fn ambient_partner(&self, amb: &ColumnWedge, idx: usize) -> (usize, i64) {
        let masks = amb.decode(idx);
        let mut sign = 1;
        let mut out = Vec::with_capacity(masks.len());
        for m in masks {
            let mut word = Vec::new();
            for s in elements(m) {
                let (t, c) = self.partner(s);
                sign *= c;
                word.push(t as u8);
            }
            let (mask, s) = super::ambient::sort_sign(&word).expect("partner map is injective");
            sign *= s;
            out.push(mask);
        }
        (amb.encode(&out).expect("same column lengths"), sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn forms_and_skewness() {
        let w = BilinearFormSpec::symplectic(6).unwrap();
        assert_eq!(w.pair(0, 3), 1);
        assert_eq!(w.pair(3, 0), -1);
        let mut x = vec![vec![0; 6]; 6];
        x[0][1] = 1;
        x[4][3] = -1;
        assert!(w.preserves(&x));
        x[4][3] = 1;
        assert!(!w.preserves(&x));
        let q = BilinearFormSpec::orthogonal(3);
        assert_eq!(q.eval(&[1, 2, 2], &[1, 2, 2]), 9);
    }

    #[test]
    fn ambient_form_is_an_involution_up_to_sign() {
        let w = BilinearFormSpec::symplectic(4).unwrap();
        let a = ColumnWedge::new(&part![2, 1], 4);
        for idx in 0..a.dim() {
            let (p, s) = w.ambient_partner(&a, idx);
            let (q, t) = w.ambient_partner(&a, p);
            assert_eq!(q, idx);
            // G(x,y) = G(y,x) for Lambda^2 (x) Lambda^1 under a skew form: (+1)(-1)
            assert_eq!(s * t, -1);
        }
    }
}
