use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::combinatorics::Partition;

/// The `k`-subsets of `0..v` in lexicographic order, as bitmasks.
#[derive(Debug)]
pub struct SubsetIndex {
    pub v: usize,
    pub k: usize,
    subsets: Vec<u32>,
    rank: Vec<u32>,
}

impl SubsetIndex {
    fn build(v: usize, k: usize) -> Self {
        assert!(v <= 24, "natural dimension too large for subset tables");
        let mut subsets = Vec::new();
        fn rec(v: usize, k: usize, start: usize, mask: u32, out: &mut Vec<u32>) {
            if k == 0 {
                out.push(mask);
                return;
            }
            for i in start..v {
                if v - i < k {
                    break;
                }
                rec(v, k - 1, i + 1, mask | 1 << i, out);
            }
        }
        rec(v, k, 0, 0, &mut subsets);
        let mut rank = vec![u32::MAX; 1 << v];
        for (i, &m) in subsets.iter().enumerate() {
            rank[m as usize] = i as u32;
        }
        Self { v, k, subsets, rank }
    }

    /// Shared table for `(v, k)`.
    pub fn get(v: usize, k: usize) -> Arc<SubsetIndex> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<SubsetIndex>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("subset cache").get(&(v, k)) {
            return t.clone();
        }
        let t = Arc::new(Self::build(v, k));
        cache.lock().expect("subset cache").insert((v, k), t.clone());
        t
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, i: usize) -> u32 {
        self.subsets[i]
    }

    pub fn subsets(&self) -> &[u32] {
        &self.subsets
    }

    pub fn rank(&self, mask: u32) -> Option<usize> {
        let r = self.rank[mask as usize];
        (r != u32::MAX).then_some(r as usize)
    }
}

/// Elements of a mask in increasing order.
pub fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// Number of elements of `mask` strictly below `i`.
#[inline]
pub fn below(mask: u32, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

/// Sign of the permutation sorting `word`, or `None` on a repeated letter.
pub fn sort_sign(word: &[u8]) -> Option<(u32, i64)> {
    let mut mask = 0u32;
    let mut inv = 0;
    for (i, &a) in word.iter().enumerate() {
        if mask >> a & 1 == 1 {
            return None;
        }
        mask |= 1 << a;
        inv += word[..i].iter().filter(|&&b| b > a).count();
    }
    Some((mask, if inv % 2 == 0 { 1 } else { -1 }))
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Arc<Vec<(Vec<usize>, i64)>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(Vec<usize>, i64)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("perm cache").get(&n) {
        return p.clone();
    }
    let mut out = Vec::new();
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if cur.len() == n {
            out.push((cur.clone(), sign));
            return;
        }
        for i in 0..n {
            if used[i] {
                continue;
            }
            // inversions created by placing i after the already placed larger values
            let inv = cur.iter().filter(|&&c| c > i).count();
            used[i] = true;
            cur.push(i);
            rec(cur, used, if inv % 2 == 0 { sign } else { -sign }, out);
            cur.pop();
            used[i] = false;
        }
    }
    rec(&mut vec![], &mut vec![false; n], 1, &mut out);
    let out = Arc::new(out);
    cache.lock().expect("perm cache").insert(n, out.clone());
    out
}

/// Sparse integer vector.
pub type IntVec = HashMap<usize, i64>;

pub fn add_into(acc: &mut IntVec, idx: usize, c: i64) {
    if c == 0 {
        return;
    }
    let e = acc.entry(idx).or_insert(0);
    *e += c;
    if *e == 0 {
        acc.remove(&idx);
    }
}

/// `Lambda^{c_1} V (x) ... (x) Lambda^{c_w} V` for the column lengths `c_j` of a shape.
/// A tensor filling of the shape (row-major, entries in `0..v`) maps here by wedging
/// each column top to bottom.
#[derive(Clone, Debug)]
pub struct ColumnWedge {
    v: usize,
    shape: Partition,
    rows: Vec<usize>,
    cols: Vec<usize>,
    tables: Vec<Arc<SubsetIndex>>,
    strides: Vec<usize>,
    dim: usize,
    /// position in the row-major filling of cell `(i, j)`
    offsets: Vec<usize>,
}

impl ColumnWedge {
    pub fn new(shape: &Partition, v: usize) -> Self {
        let rows = shape.rows();
        let cols: Vec<usize> = shape.conjugate().rows();
        let tables: Vec<Arc<SubsetIndex>> = cols.iter().map(|&c| SubsetIndex::get(v, c)).collect();
        let mut strides = vec![0; cols.len()];
        let mut dim = 1usize;
        for j in (0..cols.len()).rev() {
            strides[j] = dim;
            dim *= tables[j].len();
        }
        let mut offsets = vec![0; rows.len()];
        for i in 1..rows.len() {
            offsets[i] = offsets[i - 1] + rows[i - 1];
        }
        Self {
            v,
            shape: shape.clone(),
            rows,
            cols,
            tables,
            strides,
            dim,
            offsets,
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn shape(&self) -> &Partition {
        &self.shape
    }
    pub fn row_lengths(&self) -> &[usize] {
        &self.rows
    }
    pub fn col_lengths(&self) -> &[usize] {
        &self.cols
    }
    pub fn degree(&self) -> usize {
        self.rows.iter().sum()
    }
    pub fn cell(&self, i: usize, j: usize) -> usize {
        self.offsets[i] + j
    }

    pub fn encode(&self, masks: &[u32]) -> Option<usize> {
        let mut idx = 0;
        for (j, &m) in masks.iter().enumerate() {
            idx += self.tables[j].rank(m)? * self.strides[j];
        }
        Some(idx)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.cols.len()];
        for j in 0..self.cols.len() {
            let r = idx / self.strides[j];
            idx %= self.strides[j];
            out[j] = self.tables[j].subset(r);
        }
        out
    }

    /// Wedge each column of a filling: `None` if some column repeats a letter.
    pub fn pi(&self, filling: &[u8]) -> Option<(usize, i64)> {
        let mut sign = 1;
        let mut idx = 0;
        let mut col = Vec::with_capacity(self.rows.len());
        for (j, &c) in self.cols.iter().enumerate() {
            col.clear();
            col.extend((0..c).map(|i| filling[self.offsets[i] + j]));
            let (mask, s) = sort_sign(&col)?;
            sign *= s;
            idx += self.tables[j].rank(mask).expect("column length matches") * self.strides[j];
        }
        Some((idx, sign))
    }

    /// `pi` composed with the row symmetrizer: sum over all row permutations.
    pub fn pi_a(&self, filling: &[u8], coeff: i64, acc: &mut IntVec) {
        let perms: Vec<Arc<Vec<(Vec<usize>, i64)>>> = self.rows.iter().map(|&r| permutations(r)).collect();
        let mut cur = filling.to_vec();
        self.pi_a_rec(0, filling, &perms, &mut cur, coeff, acc);
    }

    fn pi_a_rec(
        &self,
        row: usize,
        filling: &[u8],
        perms: &[Arc<Vec<(Vec<usize>, i64)>>],
        cur: &mut Vec<u8>,
        coeff: i64,
        acc: &mut IntVec,
    ) {
        if row == self.rows.len() {
            if let Some((idx, s)) = self.pi(cur) {
                add_into(acc, idx, s * coeff);
            }
            return;
        }
        let off = self.offsets[row];
        let len = self.rows[row];
        let row_vals = &filling[off..off + len];
        // skip permutations that give the same row word twice
        let mut seen: Vec<Vec<u8>> = Vec::new();
        for (p, _) in perms[row].iter() {
            let word: Vec<u8> = p.iter().map(|&k| row_vals[k]).collect();
            if seen.contains(&word) {
                continue;
            }
            let mult = perms[row]
                .iter()
                .filter(|(q, _)| q.iter().map(|&k| row_vals[k]).eq(word.iter().copied()))
                .count() as i64;
            seen.push(word.clone());
            cur[off..off + len].copy_from_slice(&word);
            self.pi_a_rec(row + 1, filling, perms, cur, coeff * mult, acc);
        }
        cur[off..off + len].copy_from_slice(row_vals);
    }

    /// Expand a basis element into column-antisymmetric fillings with signs.
    pub fn iota(&self, idx: usize) -> Vec<(Vec<u8>, i64)> {
        let masks = self.decode(idx);
        let mut out = vec![(vec![0u8; self.degree()], 1i64)];
        for (j, &c) in self.cols.iter().enumerate() {
            let elems = elements(masks[j]);
            let perms = permutations(c);
            let mut next = Vec::with_capacity(out.len() * perms.len());
            for (f, s) in &out {
                for (p, ps) in perms.iter() {
                    let mut g = f.clone();
                    for i in 0..c {
                        g[self.offsets[i] + j] = elems[p[i]] as u8;
                    }
                    next.push((g, s * ps));
                }
            }
            out = next;
        }
        out
    }

    /// Derivation action of a `v x v` matrix (acting on column vectors) on basis
    /// element `idx`.
    pub fn derivation(&self, x: &[Vec<i64>], idx: usize, coeff: i64, acc: &mut IntVec) {
        let masks = self.decode(idx);
        for j in 0..self.cols.len() {
            let m = masks[j];
            for s in elements(m) {
                for (t, row) in x.iter().enumerate() {
                    let c = row[s];
                    if c == 0 {
                        continue;
                    }
                    if t == s {
                        add_into(acc, idx, c * coeff);
                        continue;
                    }
                    if m >> t & 1 == 1 {
                        continue;
                    }
                    let rest = m & !(1 << s);
                    let (lo, hi) = if s < t { (s, t) } else { (t, s) };
                    let between = below(rest, hi) - below(rest, lo + 1);
                    let sign = if between.is_multiple_of(2) { 1 } else { -1 };
                    let nm = rest | 1 << t;
                    let nidx = idx - self.tables[j].rank(m).unwrap() * self.strides[j]
                        + self.tables[j].rank(nm).unwrap() * self.strides[j];
                    add_into(acc, nidx, sign * c * coeff);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn subsets_in_lex_order() {
        let t = SubsetIndex::get(4, 2);
        let got: Vec<Vec<usize>> = t.subsets().iter().map(|&m| elements(m)).collect();
        assert_eq!(got, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(t.rank(0b1010), Some(4));
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.1).sum::<i64>(), 0);
        for (perm, s) in p.iter() {
            let w: Vec<u8> = perm.iter().map(|&x| x as u8).collect();
            assert_eq!(sort_sign(&w).unwrap().1, *s);
        }
    }

    #[test]
    fn iota_then_pi_is_a_multiple() {
        let a = ColumnWedge::new(&part![2, 1], 3);
        assert_eq!(a.dim(), 9);
        for idx in 0..a.dim() {
            let mut acc = IntVec::new();
            for (f, s) in a.iota(idx) {
                let (j, t) = a.pi(&f).unwrap();
                add_into(&mut acc, j, s * t);
            }
            assert_eq!(acc.len(), 1);
            assert_eq!(acc[&idx], 2);
        }
    }

    #[test]
    fn identity_derivation_is_degree() {
        let a = ColumnWedge::new(&part![2, 2, 1], 4);
        let id: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect();
        for idx in 0..a.dim() {
            let mut acc = IntVec::new();
            a.derivation(&id, idx, 1, &mut acc);
            assert_eq!(acc, IntVec::from([(idx, 5)]));
        }
    }
}
