use super::partition::{BoxPosition, Partition};

/// All one-box enlargements of `mu` with at most `max_rows` rows, with the added box.
pub fn pieri_add(mu: &Partition, max_rows: usize) -> Vec<(Partition, BoxPosition)> {
    let rows = mu.rows();
    let mut out = Vec::new();
    for k in 0..=rows.len() {
        if k >= max_rows {
            break;
        }
        let cur = rows.get(k).copied().unwrap_or(0);
        if k == 0 || rows[k - 1] > cur {
            let nu = mu.with_part(k, cur as i64 + 1);
            out.push((nu, BoxPosition::new(k + 1, cur + 1)));
        }
    }
    out
}

/// The box of `nu / mu` when `nu` is `mu` plus exactly one box.
pub fn added_box(mu: &Partition, nu: &Partition) -> Option<BoxPosition> {
    if !mu.is_partition() || !nu.is_partition() || nu.size() != mu.size() + 1 || !nu.contains(mu) {
        return None;
    }
    let n = nu.rows().len();
    (0..n)
        .find(|&i| nu.part(i) != mu.part(i))
        .map(|i| BoxPosition::new(i + 1, nu.part(i) as usize))
}

/// All `alpha` with `mu ->k alpha`: `k` boxes removed, at most one per column.
pub fn horizontal_strips(mu: &Partition, k: usize) -> Vec<Partition> {
    let rows = mu.rows();
    let mut out = Vec::new();
    let mut cur = vec![0i64; rows.len()];
    fn rec(rows: &[usize], i: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if i == rows.len() {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let hi = rows[i];
        let lo = rows.get(i + 1).copied().unwrap_or(0);
        for a in (lo..=hi).rev() {
            let removed = hi - a;
            if removed > left {
                break;
            }
            cur[i] = a as i64;
            rec(rows, i + 1, left - removed, cur, out);
        }
    }
    rec(&rows, 0, k, &mut cur, &mut out);
    out
}

/// All horizontal strips of every size, paired with the number of removed boxes.
pub fn all_horizontal_strips(mu: &Partition) -> Vec<(usize, Partition)> {
    let total = mu.size().max(0) as usize;
    (0..=total)
        .flat_map(|k| horizontal_strips(mu, k).into_iter().map(move |a| (k, a)))
        .collect()
}
