//! Round curve systems on the punctured disc and the piecewise-linear action
//! of braids on integral lamination coordinates.
//!
//! Punctures sit on the real axis. A multicurve is encoded by `2n - 4`
//! integers `(a_1, b_1, …, a_{n-2}, b_{n-2})`: `a_i` is half the difference of
//! intersection numbers with the arcs below and above puncture `i + 1`, and
//! `b_i` half the difference of intersection numbers with the vertical lines
//! on either side of puncture `i + 1`. The encoding is injective on isotopy
//! classes of multicurves.

use std::fmt;
use std::str::FromStr;

use crate::error::{BraidError, Result};
use crate::word::{BraidWord, Letter};

/// A family of pairwise disjoint round circles, each enclosing a block of
/// consecutive punctures `[a..b]` (1-based, inclusive).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveSystem {
    punctures: usize,
    circles: Vec<(usize, usize)>,
}

pub type LaminationCoords = Vec<i64>;

impl CurveSystem {
    pub fn new(punctures: usize, intervals: &[(usize, usize)]) -> Result<Self> {
        if punctures < 2 {
            return Err(BraidError::TooFewStrands(punctures));
        }
        let mut circles = intervals.to_vec();
        circles.sort_unstable();
        for &(a, b) in &circles {
            if a < 1 || b > punctures {
                return Err(BraidError::InvalidCurves(format!(
                    "[{a}-{b}] out of range for {punctures} punctures"
                )));
            }
            if a >= b {
                return Err(BraidError::InvalidCurves(format!(
                    "[{a}-{b}] encloses fewer than two punctures"
                )));
            }
            if b - a + 1 >= punctures {
                return Err(BraidError::InvalidCurves(format!(
                    "[{a}-{b}] encloses every puncture"
                )));
            }
        }
        for pair in circles.windows(2) {
            if pair[1].0 <= pair[0].1 {
                return Err(BraidError::InvalidCurves(format!(
                    "[{}-{}] and [{}-{}] overlap",
                    pair[0].0, pair[0].1, pair[1].0, pair[1].1
                )));
            }
        }
        Ok(Self { punctures, circles })
    }

    pub fn empty(punctures: usize) -> Self {
        Self {
            punctures,
            circles: Vec::new(),
        }
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    /// Circles in increasing order.
    pub fn circles(&self) -> &[(usize, usize)] {
        &self.circles
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Block layout: the sizes of the tubular strands from left to right,
    /// with `Some(circle index)` for circles and `None` for free punctures.
    pub fn blocks(&self) -> Vec<(usize, Option<usize>)> {
        let mut out = Vec::new();
        let mut p = 1;
        let mut ci = 0;
        while p <= self.punctures {
            if ci < self.circles.len() && self.circles[ci].0 == p {
                let (a, b) = self.circles[ci];
                out.push((b - a + 1, Some(ci)));
                p = b + 1;
                ci += 1;
            } else {
                out.push((1, None));
                p += 1;
            }
        }
        out
    }

    pub fn coords(&self) -> LaminationCoords {
        lamination_coords(self)
    }

    /// Inverse of [`lamination_coords`] on round systems; `None` when the
    /// vector does not encode a round curve system.
    pub fn decode(punctures: usize, coords: &[i64]) -> Option<Self> {
        if punctures < 3 || coords.len() != 2 * punctures - 4 {
            return (coords.is_empty() && punctures >= 2).then(|| Self::empty(punctures));
        }
        let mut circles = Vec::new();
        let mut open: Option<usize> = None;
        for i in 1..=punctures - 2 {
            let (a, b) = (coords[2 * (i - 1)], coords[2 * (i - 1) + 1]);
            if a != 0 {
                return None;
            }
            let p = i + 1;
            match b {
                0 => {}
                1 => {
                    let start = open.take().unwrap_or(1);
                    if !circles.is_empty() && start == 1 {
                        return None;
                    }
                    circles.push((start, p));
                }
                -1 => {
                    if open.is_some() {
                        return None;
                    }
                    open = Some(p);
                }
                _ => return None,
            }
        }
        if let Some(start) = open {
            circles.push((start, punctures));
        }
        let c = Self::new(punctures, &circles).ok()?;
        (c.coords() == coords).then_some(c)
    }
}

impl fmt::Display for CurveSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .circles
            .iter()
            .map(|(a, b)| format!("[{a}-{b}]"))
            .collect();
        write!(f, "n={}; {}", self.punctures, parts.join(","))
    }
}

/// Parses `n=<int>; [a-b],[c-d],…`.
impl FromStr for CurveSystem {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || BraidError::Parse(format!("bad curve system {s:?}"));
        let (head, rest) = s.split_once(';').unwrap_or((s, ""));
        let n: usize = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(bad)?;
        let intervals = parse_intervals(rest)?;
        Self::new(n, &intervals)
    }
}

pub(crate) fn parse_intervals(text: &str) -> Result<Vec<(usize, usize)>> {
    let bad = || BraidError::Parse(format!("bad interval list {text:?}"));
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let inner = item
            .strip_prefix('[')
            .and_then(|v| v.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(['-', '.']).ok_or_else(bad)?;
        let b = b.trim_start_matches('.');
        out.push((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ));
    }
    Ok(out)
}

pub fn lamination_coords(c: &CurveSystem) -> LaminationCoords {
    let n = c.punctures;
    if n < 3 {
        return Vec::new();
    }
    let mut v = vec![0i64; 2 * n - 4];
    for &(a, b) in &c.circles {
        // b_i counts circles closing at puncture i+1 minus those opening there
        if (2..=n - 1).contains(&b) {
            v[2 * (b - 2) + 1] += 1;
        }
        if (2..=n - 1).contains(&a) {
            v[2 * (a - 2) + 1] -= 1;
        }
    }
    v
}

#[inline]
fn pos(x: i64) -> i64 {
    x.max(0)
}

#[inline]
fn neg(x: i64) -> i64 {
    x.min(0)
}

/// Extends `2n - 4` coordinates to `2n` by adding two fixed punctures beyond
/// the ends, so every generator acts through the same local formula.
fn lift(v: &[i64], n: usize) -> Vec<i64> {
    let m = n - 2;
    let mut prefix = 0i64;
    let mut top = i64::MIN;
    for k in 0..m {
        top = top.max(v[2 * k].abs() + pos(v[2 * k + 1]) + prefix);
        prefix += v[2 * k + 1];
    }
    // half the intersection numbers with the vertical lines beside
    // punctures 1 and n
    let first = top;
    let last = top - prefix;
    let mut out = Vec::with_capacity(2 * n);
    out.extend([0, -first]);
    out.extend_from_slice(v);
    out.extend([0, last]);
    out
}

/// Generator `i` acts on the pairs of punctures `i` and `i + 1`.
fn apply_letter(u: &mut [i64], l: Letter) {
    let k = 2 * (l.index() - 1);
    let (a0, b0, a1, b1) = (u[k], u[k + 1], u[k + 2], u[k + 3]);
    let r = if l.is_positive() {
        let c = a0 - neg(b0) - a1 + pos(b1);
        [
            a0 + pos(b0) + pos(pos(b1) - c),
            b1 - pos(c),
            a1 + neg(b1) + neg(neg(b0) + c),
            b0 + pos(c),
        ]
    } else {
        let d = a0 + neg(b0) - a1 - pos(b1);
        [
            a0 - pos(b0) - pos(pos(b1) + d),
            b1 + neg(d),
            a1 - neg(b1) - neg(neg(b0) - d),
            b0 - neg(d),
        ]
    };
    u[k..k + 4].copy_from_slice(&r);
}

/// Action of `w` on coordinates, letters applied in word order, so that
/// `apply(ab, x) = apply(b, apply(a, x))`.
pub fn apply_braid(w: &BraidWord, coords: &[i64]) -> Result<LaminationCoords> {
    let n = w.strands();
    let expected = if n < 3 { 0 } else { 2 * n - 4 };
    if coords.len() != expected {
        return Err(BraidError::DimensionMismatch {
            got: coords.len(),
            expected,
        });
    }
    if n < 3 {
        return Ok(Vec::new());
    }
    let mut u = lift(coords, n);
    for &l in w.letters() {
        apply_letter(&mut u, l);
    }
    Ok(u[2..2 * n - 2].to_vec())
}

/// Whether `w` maps the multicurve of `c` to itself up to isotopy.
pub fn preserves(w: &BraidWord, c: &CurveSystem) -> Result<bool> {
    if w.strands() != c.punctures {
        return Err(BraidError::DimensionMismatch {
            got: c.punctures,
            expected: w.strands(),
        });
    }
    let x = c.coords();
    Ok(apply_braid(w, &x)? == x)
}
