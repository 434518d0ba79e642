//! Segments and multisegments: linking, precedence, Langlands order and
//! enumeration.
//!
//! A segment `[a,b]` on line `k` stands for the twists `a, a+1, …, b` of a
//! fixed cuspidal datum; segments on different lines never interact. Text
//! syntax: `[0,1]`, `[2,2]@1`, and multisegments separated by `;`.

use std::cmp::Reverse;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{usage, HeckeError, Result};
use crate::scalar::{rat, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Segment {
    pub line: u32,
    pub start: i64,
    pub len: u32,
}

impl Segment {
    pub fn new(line: u32, start: i64, len: u32) -> Result<Self> {
        if len == 0 {
            return Err(usage!("segments have length at least 1"));
        }
        Ok(Segment { line, start, len })
    }

    /// The segment `[start, end]` on line 0.
    pub fn interval(start: i64, end: i64) -> Result<Self> {
        if end < start {
            return Err(usage!("segment [{start},{end}] is empty"));
        }
        Self::new(0, start, (end - start + 1) as u32)
    }

    pub fn end(&self) -> i64 {
        self.start + self.len as i64 - 1
    }

    pub fn contains(&self, other: &Segment) -> bool {
        self.start <= other.start && other.end() <= self.end()
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end())?;
        if self.line != 0 {
            write!(f, "@{}", self.line)?;
        }
        Ok(())
    }
}

impl FromStr for Segment {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, line) = match s.split_once('@') {
            Some((body, line)) => {
                let line = line.trim().parse::<u32>().map_err(|_| usage!("bad line id in segment {s:?}"))?;
                (body.trim(), line)
            }
            None => (s, 0),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| usage!("segment must look like [a,b]: {s:?}"))?;
        let bounds: Vec<&str> = inner.split(',').collect();
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| usage!("bad segment endpoint in {s:?}"));
        let (a, b) = match bounds.as_slice() {
            [a] => (parse(a)?, parse(a)?),
            [a, b] => (parse(a)?, parse(b)?),
            _ => return Err(usage!("segment must look like [a,b]: {s:?}")),
        };
        if b < a {
            return Err(usage!("segment {s:?} has end before start"));
        }
        Segment::new(line, a, (b - a + 1) as u32)
    }
}

/// Same line, the union is a segment, and neither contains the other.
pub fn linked(d1: &Segment, d2: &Segment) -> bool {
    d1.line == d2.line && d1.start <= d2.end() + 1 && d2.start <= d1.end() + 1 && !d1.contains(d2) && !d2.contains(d1)
}

/// `d1` precedes `d2`: linked, and `d1` starts first.
pub fn precedes(d1: &Segment, d2: &Segment) -> bool {
    linked(d1, d2) && d1.start < d2.start
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Multisegment {
    segments: Vec<Segment>,
}

impl Multisegment {
    pub fn new(segments: Vec<Segment>) -> Self {
        Multisegment { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Total length.
    pub fn n(&self) -> usize {
        self.segments.iter().map(|s| s.len as usize).sum()
    }

    pub fn lines(&self) -> Vec<u32> {
        let mut lines: Vec<u32> = self.segments.iter().map(|s| s.line).collect();
        lines.sort_unstable();
        lines.dedup();
        lines
    }

    /// The segments lying on one line.
    pub fn restrict_to_line(&self, line: u32) -> Multisegment {
        Multisegment::new(self.segments.iter().copied().filter(|s| s.line == line).collect())
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.segments.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Multisegment {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self> {
        let segments =
            s.split(';').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<Vec<Segment>>>()?;
        if segments.is_empty() {
            return Err(usage!("empty multisegment"));
        }
        Ok(Multisegment::new(segments))
    }
}

/// Reorders so that no segment precedes a later one: descending start,
/// then descending length, then ascending line.
pub fn langlands_sort(m: &Multisegment) -> Multisegment {
    let mut segments = m.segments.clone();
    segments.sort_by_key(|s| (Reverse(s.start), Reverse(s.len), s.line));
    Multisegment::new(segments)
}

pub fn is_langlands_ordered(m: &Multisegment) -> bool {
    let s = &m.segments;
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !precedes(&s[i], &s[j])))
}

/// No two segments are linked.
pub fn is_generic(m: &Multisegment) -> bool {
    let s = &m.segments;
    (0..s.len()).all(|i| (i + 1..s.len()).all(|j| !linked(&s[i], &s[j])))
}

fn multisets(n: usize, pool: &[Segment]) -> Vec<Multisegment> {
    fn rec(left: usize, from: usize, pool: &[Segment], cur: &mut Vec<Segment>, out: &mut Vec<Multisegment>) {
        if left == 0 {
            out.push(langlands_sort(&Multisegment::new(cur.clone())));
            return;
        }
        for k in from..pool.len() {
            if pool[k].len as usize <= left {
                cur.push(pool[k]);
                rec(left - pool[k].len as usize, k, pool, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 0, pool, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Every multiset of line-0 segments of total length `n` whose endpoints
/// both lie in `window`, in canonical (Langlands-sorted) form.
pub fn enumerate_multisegments(n: usize, window: RangeInclusive<i64>) -> Vec<Multisegment> {
    let (lo, hi) = (*window.start(), *window.end());
    let pool: Vec<Segment> = (lo..=hi)
        .flat_map(|a| (a..=hi).map(move |b| (a, b)))
        .filter(|(a, b)| (b - a + 1) as usize <= n)
        .map(|(a, b)| Segment::interval(a, b).expect("nonempty"))
        .collect();
    multisets(n, &pool)
}

/// Every multiset of line-0 segments of total length `n` whose starts lie
/// in `starts` (ends are free). This is the certification sweep family.
pub fn enumerate_by_starts(n: usize, starts: RangeInclusive<i64>) -> Vec<Multisegment> {
    let pool: Vec<Segment> =
        starts.flat_map(|a| (1..=n as u32).map(move |e| Segment { line: 0, start: a, len: e })).collect();
    multisets(n, &pool)
}

const LINE_MULTIPLIERS: [(i64, i64); 8] = [(1, 1), (5, 7), (11, 13), (17, 19), (29, 31), (41, 43), (59, 61), (71, 73)];

/// Scalar attached to a line: values of a segment on line `k` are those of
/// line 0 times this multiplier.
pub fn line_multiplier(line: u32) -> Result<Rational> {
    LINE_MULTIPLIERS
        .get(line as usize)
        .map(|&(a, b)| rat(a, b))
        .ok_or_else(|| usage!("line ids above {} are not supported", LINE_MULTIPLIERS.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(a: i64, b: i64) -> Segment {
        Segment::interval(a, b).unwrap()
    }

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    #[test]
    fn linking_examples() {
        assert!(linked(&seg(0, 1), &seg(2, 3)));
        assert!(!linked(&seg(0, 2), &seg(1, 1)));
        assert!(!linked(&seg(0, 1), &seg(3, 4)));
        assert!(linked(&seg(0, 0), &seg(1, 1)));
        assert!(!linked(&seg(0, 0), &seg(0, 0)));
        let other = Segment::new(1, 1, 1).unwrap();
        assert!(!linked(&seg(0, 0), &other));
    }

    #[test]
    fn precedence_examples() {
        assert!(precedes(&seg(0, 1), &seg(1, 2)));
        assert!(!precedes(&seg(1, 2), &seg(0, 1)));
        assert!(!precedes(&seg(0, 1), &seg(0, 1)));
        assert!(!precedes(&seg(0, 0), &seg(5, 5)));
    }

    #[test]
    fn sorting() {
        assert_eq!(langlands_sort(&ms("[0,0];[1,1]")), ms("[1,1];[0,0]"));
        assert_eq!(langlands_sort(&ms("[1,1];[0,0]")), ms("[1,1];[0,0]"));
        assert!(!is_langlands_ordered(&ms("[0,0];[1,1]")));
        assert!(is_langlands_ordered(&ms("[0,1];[0,0]")));
    }

    #[test]
    fn genericity() {
        assert!(is_generic(&ms("[0,3]")));
        assert!(!is_generic(&ms("[0,0];[1,1]")));
        assert!(is_generic(&ms("[0,0];[0,0]")));
        assert!(is_generic(&ms("[0,0];[2,2];[4,4]")));
        assert!(is_generic(&ms("[0,0];[1,1]@1")));
    }

    #[test]
    fn parsing() {
        let m = ms(" [0,1]@1 ; [2]; [3,3] ");
        assert_eq!(m.segments()[0], Segment::new(1, 0, 2).unwrap());
        assert_eq!(m.segments()[1], seg(2, 2));
        assert_eq!(m.to_string(), "[0,1]@1;[2,2];[3,3]");
        assert_eq!(m.n(), 4);
        assert!("[1,0]".parse::<Segment>().is_err());
        assert!("(0,1)".parse::<Segment>().is_err());
        assert!("[0,1]@x".parse::<Segment>().is_err());
        assert!("".parse::<Multisegment>().is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_multisegments(1, 0..=0), vec![ms("[0,0]")]);
        let two = enumerate_multisegments(2, 0..=1);
        assert_eq!(two.len(), 4);
        for m in ["[0,1]", "[1,1];[0,0]", "[0,0];[0,0]", "[1,1];[1,1]"] {
            assert!(two.contains(&ms(m)), "{m} missing");
        }
        let counts: Vec<usize> = (0..4).map(|w| enumerate_multisegments(3, 0..=w).len()).collect();
        assert!(counts.windows(2).all(|c| c[0] < c[1]));
        assert_eq!(enumerate_by_starts(2, 0..=2).len(), 9);
    }

    #[test]
    fn multipliers() {
        assert_eq!(line_multiplier(0).unwrap(), Rational::one());
        assert_eq!(line_multiplier(1).unwrap(), rat(5, 7));
        assert!(line_multiplier(99).is_err());
    }
}
