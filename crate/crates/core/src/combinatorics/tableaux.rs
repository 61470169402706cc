use super::partition::Partition;

/// Semistandard tableaux of shape `lam` with entries in `0..n`, as row-major fillings,
/// in lexicographic order of the reading word.
pub fn ssyt(lam: &Partition, n: usize) -> Vec<Vec<usize>> {
    let rows = lam.rows();
    let cells = lam.cells();
    let mut offset = vec![0; rows.len()];
    for i in 1..rows.len() {
        offset[i] = offset[i - 1] + rows[i - 1];
    }
    let mut out = Vec::new();
    let mut fill = vec![0usize; cells.len()];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        offset: &[usize],
        n: usize,
        fill: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == cells.len() {
            out.push(fill.clone());
            return;
        }
        let (i, j) = cells[idx];
        let mut lo = 0;
        if j > 0 {
            lo = fill[idx - 1];
        }
        if i > 0 {
            lo = lo.max(fill[offset[i - 1] + j] + 1);
        }
        for v in lo..n {
            fill[idx] = v;
            rec(idx + 1, cells, offset, n, fill, out);
        }
    }
    rec(0, &cells, &offset, n, &mut fill, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::dims::gl_dim;
    use crate::combinatorics::lr::partitions_of;
    use crate::part;

    #[test]
    fn counts_match_hook_content() {
        assert_eq!(ssyt(&part![2, 1], 2), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        for n in 1..=4 {
            for k in 0..=5 {
                for lam in partitions_of(k) {
                    assert_eq!(num::BigInt::from(ssyt(&lam, n).len()), gl_dim(&lam, n));
                }
            }
        }
    }
}
