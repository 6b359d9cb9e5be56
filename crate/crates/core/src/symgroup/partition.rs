use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Young frame: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    /// The partition of 0.
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row frame `(k)`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Self { parts: vec![k] }
        }
    }

    /// The one-column frame `(1, …, 1)`.
    pub fn column(k: usize) -> Self {
        Self { parts: vec![1; k] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    pub fn is_row(&self) -> bool {
        self.parts.len() <= 1
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// `(row, col)` of every box, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        let cols = self.conjugate();
        self.cells()
            .map(|(i, j)| (self.parts[i] - j - 1) + (cols.parts[j] - i - 1) + 1)
            .collect()
    }

    /// Frames obtained by deleting one corner box, top corner first.
    pub fn removals(&self) -> Vec<Partition> {
        let n = self.parts.len();
        (0..n)
            .filter(|&i| i + 1 == n || self.parts[i] > self.parts[i + 1])
            .map(|i| {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                Partition { parts }
            })
            .collect()
    }

    /// Frames obtained by adding one box, top row first.
    pub fn additions(&self) -> Vec<Partition> {
        let n = self.parts.len();
        (0..=n)
            .filter(|&i| i == 0 || i == n || self.parts[i - 1] > self.parts[i])
            .map(|i| {
                let mut parts = self.parts.clone();
                if i == n {
                    parts.push(1);
                } else {
                    parts[i] += 1;
                }
                Partition { parts }
            })
            .collect()
    }

    /// Whether `self` arises from `mu` by deleting one box.
    pub fn is_box_removal_of(&self, mu: &Partition) -> bool {
        mu.removals().contains(self)
    }

    /// Number of standard Young tableaux `d_μ` (hook-length formula).
    pub fn dim_standard(&self) -> u128 {
        let k = self.size();
        let mut num = PrimePowers::default();
        for x in 2..=k {
            num.mul(x);
        }
        for h in self.hook_lengths() {
            num.div(h);
        }
        num.value()
    }

    /// Number of semistandard tableaux with entries in `1..=d`
    /// (hook-content formula); zero when the frame has more than `d` rows.
    pub fn mult_semistandard(&self, d: usize) -> u128 {
        if self.height() > d {
            return 0;
        }
        let mut num = PrimePowers::default();
        for (i, j) in self.cells() {
            num.mul(d + j - i);
        }
        for h in self.hook_lengths() {
            num.div(h);
        }
        num.value()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `k`, lexicographically decreasing; `partitions(0)` is `[()]`.
pub fn partitions(k: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Exact rational products of small integers kept as prime exponents.
#[derive(Default)]
struct PrimePowers {
    exponents: Vec<i64>,
}

impl PrimePowers {
    fn add(&mut self, mut x: usize, sign: i64) {
        assert!(x > 0, "factor must be positive");
        let mut p = 2;
        while x > 1 {
            while x.is_multiple_of(p) {
                if self.exponents.len() <= p {
                    self.exponents.resize(p + 1, 0);
                }
                self.exponents[p] += sign;
                x /= p;
            }
            p += 1;
        }
    }

    fn mul(&mut self, x: usize) {
        self.add(x, 1);
    }

    fn div(&mut self, x: usize) {
        self.add(x, -1);
    }

    /// Panics if the product is not an integer or overflows `u128`.
    fn value(&self) -> u128 {
        let mut acc: u128 = 1;
        for (p, &e) in self.exponents.iter().enumerate() {
            assert!(e >= 0, "tableau count is not an integer");
            for _ in 0..e {
                acc = acc
                    .checked_mul(p as u128)
                    .expect("tableau count overflows u128");
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(partitions(1), vec![p(&[1])]);
        assert_eq!(
            partitions(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn rejects_invalid() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn hook_formulas() {
        assert_eq!(p(&[2, 1]).dim_standard(), 2);
        assert_eq!(p(&[3, 2]).dim_standard(), 5);
        assert_eq!(Partition::column(5).dim_standard(), 1);
        assert_eq!(Partition::row(3).mult_semistandard(2), 4);
        assert_eq!(p(&[2, 1]).mult_semistandard(2), 2);
        assert_eq!(Partition::column(3).mult_semistandard(2), 0);
        assert_eq!(Partition::empty().mult_semistandard(3), 1);
        assert_eq!(Partition::empty().dim_standard(), 1);
    }

    #[test]
    fn box_relations() {
        let mu = p(&[3, 1]);
        assert_eq!(mu.removals(), vec![p(&[2, 1]), p(&[3])]);
        assert_eq!(mu.additions(), vec![p(&[4, 1]), p(&[3, 2]), p(&[3, 1, 1])]);
        assert!(p(&[3]).is_box_removal_of(&mu));
        assert!(!p(&[2, 2]).is_box_removal_of(&mu));
        assert_eq!(Partition::row(1).removals(), vec![Partition::empty()]);
    }

    #[test]
    fn conjugate_is_involution() {
        for k in 0..7 {
            for mu in partitions(k) {
                assert_eq!(mu.conjugate().conjugate(), mu);
                assert_eq!(mu.conjugate().dim_standard(), mu.dim_standard());
            }
        }
    }
}
