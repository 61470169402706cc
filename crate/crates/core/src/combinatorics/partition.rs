use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing integer sequence. Negative entries are allowed so that GL
/// weights such as `(2,0,-1)` fit; equality ignores trailing zeros.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Shape(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: vec![] }
    }

    /// `(k^m)`
    pub fn rectangle(k: i64, m: usize) -> Self {
        Self { parts: vec![k; m] }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    fn trimmed(&self) -> &[i64] {
        let mut end = self.parts.len();
        while end > 0 && self.parts[end - 1] == 0 {
            end -= 1;
        }
        &self.parts[..end]
    }

    /// Entry `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> i64 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().filter(|&&p| p != 0).count()
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.parts.iter().all(|&p| p >= 0)
    }

    /// Nonzero parts as unsigned row lengths; panics on negative entries.
    pub fn rows(&self) -> Vec<usize> {
        assert!(self.is_partition(), "negative entries in {self}");
        self.trimmed().iter().map(|&p| p as usize).collect()
    }

    /// Conjugate partition (column lengths).
    pub fn conjugate(&self) -> Partition {
        let rows = self.rows();
        let w = rows.first().copied().unwrap_or(0);
        let parts = (0..w)
            .map(|j| rows.iter().filter(|&&r| r > j).count() as i64)
            .collect();
        Partition { parts }
    }

    /// Diagram containment.
    pub fn contains(&self, other: &Partition) -> bool {
        let n = self.parts.len().max(other.parts.len());
        (0..n).all(|i| other.part(i) <= self.part(i))
    }

    /// Cells `(row, col)`, 0-based, in row-major order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.rows()
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
            .collect()
    }

    pub fn with_part(&self, i: usize, value: i64) -> Partition {
        let mut parts = self.parts.clone();
        if parts.len() <= i {
            parts.resize(i + 1, 0);
        }
        parts[i] = value;
        Partition { parts }
    }

    /// Pad or truncate to `n` entries. Zeros are inserted before the first negative
    /// entry so that `(2,-1)` at `n = 3` reads as `(2,0,-1)`.
    pub fn as_weight(&self, n: usize) -> Option<Vec<i64>> {
        let t = self.trimmed();
        if t.len() > n {
            return None;
        }
        let neg = t.iter().position(|&p| p < 0).unwrap_or(t.len());
        let mut w = t[..neg].to_vec();
        w.resize(n - (t.len() - neg), 0);
        w.extend_from_slice(&t[neg..]);
        Some(w)
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.trimmed().cmp(other.trimmed())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.trimmed();
        write!(f, "(")?;
        for (i, p) in t.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)`, `2 1`, or the empty string / `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Shape(format!("bad partition entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Build a partition from a literal list; panics if not weakly decreasing.
#[macro_export]
macro_rules! part {
    () => { $crate::combinatorics::Partition::empty() };
    ($($x:expr),+ $(,)?) => {
        $crate::combinatorics::Partition::new(vec![$($x as i64),+]).expect("valid partition literal")
    };
}

/// A cell of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxPosition {
    pub row: usize,
    pub col: usize,
}

impl BoxPosition {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    Sp,
    SO,
    Spin,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::GL => "GL",
            Family::Sp => "Sp",
            Family::SO => "SO",
            Family::Spin => "Spin",
        };
        f.write_str(s)
    }
}

/// A classical group together with the dimension of its natural representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    pub natural_dim: usize,
}

impl GroupSpec {
    pub fn new(family: Family, natural_dim: usize) -> Result<Self> {
        if natural_dim == 0 {
            return Err(Error::Shape("natural dimension must be positive".into()));
        }
        if matches!(family, Family::Sp | Family::Spin) && natural_dim % 2 == 1 {
            return Err(Error::Shape(format!("{family} needs an even natural dimension")));
        }
        Ok(Self { family, natural_dim })
    }

    pub fn gl(v: usize) -> Self {
        Self::new(Family::GL, v).expect("valid")
    }
    pub fn sp(two_n: usize) -> Self {
        Self::new(Family::Sp, two_n).expect("even dimension")
    }
    pub fn so(m: usize) -> Self {
        Self::new(Family::SO, m).expect("valid")
    }
    pub fn spin(two_n: usize) -> Self {
        Self::new(Family::Spin, two_n).expect("even dimension")
    }

    /// Rank of the root system.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::GL => self.natural_dim,
            _ => self.natural_dim / 2,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.natural_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_ignored() {
        assert_eq!(part![2, 1, 0], part![2, 1]);
        assert_ne!(part![2, 1], part![2, 1, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn conjugate_and_parse() {
        assert_eq!(part![3, 1, 1].conjugate(), part![3, 1, 1]);
        assert_eq!(part![2, 2, 1].conjugate(), part![3, 2]);
        assert_eq!("(2,2,1)".parse::<Partition>().unwrap(), part![2, 2, 1]);
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(part![2, 1].to_string(), "(2,1)");
    }

    #[test]
    fn weights_pad_before_negatives() {
        assert_eq!(part![2, -1].as_weight(3).unwrap(), vec![2, 0, -1]);
        assert_eq!(part![2].as_weight(3).unwrap(), vec![2, 0, 0]);
        assert!(part![1, 1, 1].as_weight(2).is_none());
    }

    #[test]
    fn group_spec_parity() {
        assert!(GroupSpec::new(Family::Sp, 5).is_err());
        assert!(GroupSpec::new(Family::SO, 5).is_ok());
    }
}
