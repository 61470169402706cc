use super::partition::Partition;

/// Littlewood-Richardson coefficient `c^lam_{zeta,eta}` by counting LR tableaux of
/// shape `lam / zeta` and content `eta`.
pub fn lr_coefficient(zeta: &Partition, eta: &Partition, lam: &Partition) -> u64 {
    if !zeta.is_partition() || !eta.is_partition() || !lam.is_partition() {
        return 0;
    }
    if !lam.contains(zeta) || zeta.size() + eta.size() != lam.size() {
        return 0;
    }
    let lr = lam.rows();
    let zr: Vec<usize> = (0..lr.len()).map(|i| zeta.part(i) as usize).collect();
    let content = eta.rows();
    // reading order: rows top to bottom, right to left
    let mut cells = Vec::new();
    for i in 0..lr.len() {
        for j in (zr[i]..lr[i]).rev() {
            cells.push((i, j));
        }
    }
    let mut fill = vec![vec![0usize; lr.first().copied().unwrap_or(0)]; lr.len()];
    let mut count = vec![0usize; content.len() + 1];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        lr: &[usize],
        zr: &[usize],
        content: &[usize],
        fill: &mut Vec<Vec<usize>>,
        count: &mut Vec<usize>,
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (i, j) = cells[idx];
        let mut total = 0;
        for v in 1..=content.len() {
            if count[v] >= content[v - 1] {
                continue;
            }
            if v > 1 && count[v] + 1 > count[v - 1] {
                continue;
            }
            if j + 1 < lr[i] && fill[i][j + 1] < v {
                continue;
            }
            if i > 0 && j >= zr[i - 1] && j < lr[i - 1] && fill[i - 1][j] >= v {
                continue;
            }
            fill[i][j] = v;
            count[v] += 1;
            total += rec(idx + 1, cells, lr, zr, content, fill, count);
            count[v] -= 1;
            fill[i][j] = 0;
        }
        total
    }
    rec(0, &cells, &lr, &zr, &content, &mut fill, &mut count)
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(cur.clone()).expect("decreasing"));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k as i64);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut vec![], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn small_examples() {
        assert_eq!(lr_coefficient(&part![1], &part![1], &part![2]), 1);
        assert_eq!(lr_coefficient(&part![1], &part![1], &part![1, 1]), 1);
        assert_eq!(lr_coefficient(&part![2, 1], &part![2, 1], &part![3, 2, 1]), 2);
        assert_eq!(lr_coefficient(&part![2], &part![1], &part![1, 1, 1]), 0);
    }

    #[test]
    fn symmetric_up_to_six_boxes() {
        for n in 0..=6 {
            for lam in partitions_of(n) {
                for k in 0..=n {
                    for zeta in partitions_of(k) {
                        for eta in partitions_of(n - k) {
                            assert_eq!(
                                lr_coefficient(&zeta, &eta, &lam),
                                lr_coefficient(&eta, &zeta, &lam),
                                "{zeta} {eta} {lam}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pieri_is_a_special_case() {
        // c^lam_{mu,(1)} is 1 exactly for one-box enlargements
        for n in 1..=5 {
            for lam in partitions_of(n) {
                for mu in partitions_of(n - 1) {
                    let expect = u64::from(lam.contains(&mu));
                    assert_eq!(lr_coefficient(&mu, &part![1], &lam), expect);
                }
            }
        }
    }
}
