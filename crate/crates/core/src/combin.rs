//! Partitions, the reversed dominance order, and tableau counts.
//!
//! Partitions label the Specht-type constituents of restricted modules. The
//! order used throughout is the reverse of the usual dominance order:
//! `(n)` is the smallest partition of `n` and `(1,…,1)` the largest.

use std::fmt;
use std::str::FromStr;

use crate::error::{usage, HeckeError, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(usage!("partition parts must be positive: {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(usage!("partition parts must be weakly decreasing: {parts:?}"));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    fn partial_sums(&self, len: usize) -> Vec<u32> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.0.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = HeckeError;

    /// Parses the bracketed form used in output tables, e.g. `[2,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| usage!("partition must be bracketed: {s:?}"))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| usage!("bad partition part in {s:?}")))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Label of a Specht-type constituent. Under the fixed dictionary the
/// minimal label `(n)` is the sign-type (Steinberg) module and the maximal
/// label `(1^n)` the trivial-type module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KTypeLabel(pub Partition);

impl fmt::Display for KTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `a ≤ b` in the reversed dominance order: every partial sum of `a` is at
/// least the corresponding partial sum of `b`.
pub fn dominance_leq(a: &Partition, b: &Partition) -> Result<bool> {
    if a.size() != b.size() {
        return Err(usage!("cannot compare partitions of {} and {}", a.size(), b.size()));
    }
    let len = a.len().max(b.len());
    Ok(a.partial_sums(len).iter().zip(b.partial_sums(len)).all(|(x, y)| *x >= y))
}

pub fn min_label(n: u32) -> Result<KTypeLabel> {
    if n == 0 {
        return Err(usage!("labels need n >= 1"));
    }
    Ok(KTypeLabel(Partition(vec![n])))
}

pub fn max_label(n: u32) -> Result<KTypeLabel> {
    if n == 0 {
        return Err(usage!("labels need n >= 1"));
    }
    Ok(KTypeLabel(Partition(vec![1; n as usize])))
}

/// All partitions of `n` in descending lexicographic order, starting at `(n)`.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A standard Young tableau, stored row by row with entries `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().map(|r| r.len() as u32).sum()
    }

    /// (row, column) of entry `k`, both 0-based.
    pub fn position(&self, k: u32) -> (usize, usize) {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some(c) = row.iter().position(|&x| x == k) {
                return (r, c);
            }
        }
        panic!("entry {k} not in tableau");
    }

    /// Content (column minus row) of entry `k`.
    pub fn content(&self, k: u32) -> i64 {
        let (r, c) = self.position(k);
        c as i64 - r as i64
    }

    /// The tableau with `k` and `k + 1` exchanged; may fail to be standard.
    pub fn swap_entries(&self, k: u32) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| match x {
                        x if x == k => k + 1,
                        x if x == k + 1 => k,
                        x => x,
                    })
                    .collect()
            })
            .collect();
        Tableau { rows }
    }

    pub fn is_standard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|pair| pair[1].iter().enumerate().all(|(c, &x)| pair[0].get(c).is_some_and(|&above| above < x)));
        rows_ok && cols_ok
    }
}

/// Every standard tableau of shape `p`, by backtracking: entries are placed
/// in increasing order into addable cells, trying rows top to bottom. The
/// first tableau is the row-reading one.
pub fn enumerate_syt(p: &Partition) -> Vec<Tableau> {
    fn rec(shape: &[u32], next: u32, n: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len() as u32;
            let fits = len < shape[r] && (r == 0 || (rows[r - 1].len() as u32) > len);
            if fits {
                rows[r].push(next);
                rec(shape, next + 1, n, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); p.len()];
    rec(p.parts(), 1, p.size(), &mut rows, &mut out);
    out
}

/// Hook-length formula `n! / Π hooks`.
pub fn hook_length_count(p: &Partition) -> u128 {
    let conj = p.conjugate();
    let mut num: u128 = (1..=p.size() as u128).product();
    let mut hooks: u128 = 1;
    for (r, &len) in p.parts().iter().enumerate() {
        for c in 0..len as usize {
            let arm = len as usize - c - 1;
            let leg = conj.parts()[c] as usize - r - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    debug_assert_eq!(num % hooks, 0);
    num /= hooks;
    num
}

/// Number of standard Young tableaux of shape `p`. Computed by the hook
/// length formula; for small shapes the backtracking enumeration is run as
/// well and the two must agree.
pub fn count_syt(p: &Partition) -> u64 {
    let hook = hook_length_count(p) as u64;
    if p.size() <= 8 {
        let enumerated = enumerate_syt(p).len() as u64;
        assert_eq!(hook, enumerated, "hook-length and enumeration disagree for {p}");
    }
    hook
}

/// Kostka number: semistandard tableaux of shape `shape` whose content is
/// the composition `content` (entry `i` occurs `content[i]` times).
pub fn kostka(shape: &Partition, content: &[u32]) -> u64 {
    fn rec(shape: &[u32], content: &[u32]) -> u64 {
        let Some((&last, rest)) = content.split_last() else {
            return u64::from(shape.iter().all(|&x| x == 0));
        };
        // Remove a horizontal strip of size `last` from `shape`: the inner
        // shape nu interlaces, shape[i+1] <= nu[i] <= shape[i].
        let mut total = 0;
        let mut inner = vec![0u32; shape.len()];
        fn strips(shape: &[u32], i: usize, left: u32, inner: &mut Vec<u32>, rest: &[u32], total: &mut u64) {
            if i == shape.len() {
                if left == 0 {
                    *total += rec(inner, rest);
                }
                return;
            }
            let lower = shape.get(i + 1).copied().unwrap_or(0);
            for nu in lower..=shape[i] {
                let removed = shape[i] - nu;
                if removed > left {
                    continue;
                }
                inner[i] = nu;
                strips(shape, i + 1, left - removed, inner, rest, total);
            }
        }
        strips(shape, 0, last, &mut inner, rest, &mut total);
        total
    }
    if shape.size() != content.iter().sum::<u32>() {
        return 0;
    }
    rec(shape.parts(), content)
}
