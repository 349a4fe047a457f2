//! Reducible braids as a tubular braid on fat strands plus the braids carried
//! inside each tube, with the cabling map back into `B_n`.
//!
//! Blocks are the circles of the curve system and the punctures outside all
//! circles, ordered left to right; the tubular braid acts on block positions
//! `1..=m`. The interior braid of a circle is indexed by the position the
//! tube starts from.

use std::fmt;
use std::str::FromStr;

use crate::curves::{parse_intervals, CurveSystem};
use crate::error::{BraidError, Result};
use crate::word::{BraidWord, Letter};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TubularDecomposition {
    curves: CurveSystem,
    tubular: BraidWord,
    /// One word per circle, in the order of `curves.circles()`.
    interiors: Vec<BraidWord>,
}

/// Cycles of the tubular permutation on circle positions (1-based block
/// positions). Each orbit starts at its smallest position and lists
/// `u, dest(u), dest(dest(u)), …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStructure {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitStructure {
    pub fn lengths(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Index of the orbit containing block position `p`.
    pub fn orbit_of(&self, p: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.contains(&p))
    }
}

/// Block sizes in left-to-right order.
fn block_sizes(c: &CurveSystem) -> Vec<usize> {
    c.blocks().into_iter().map(|(s, _)| s).collect()
}

/// Positive word crossing a block of `p` strands over the adjacent block of
/// `q` strands to its right, both starting after `offset` strands.
fn positive_cable(offset: usize, p: usize, q: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(p * q);
    for a in 0..p {
        let start = offset + p - a;
        out.extend((start..start + q).map(|i| Letter::new(i, true)));
    }
    out
}

/// The cable of a single tubular letter acting on blocks `j`, `j + 1` of
/// sizes `p`, `q`.
fn cable(offset: usize, p: usize, q: usize, positive: bool) -> Vec<Letter> {
    if positive {
        positive_cable(offset, p, q)
    } else {
        positive_cable(offset, q, p)
            .into_iter()
            .rev()
            .map(Letter::inverse)
            .collect()
    }
}

impl TubularDecomposition {
    pub fn new(curves: CurveSystem, tubular: BraidWord, interiors: Vec<BraidWord>) -> Result<Self> {
        let blocks = curves.blocks();
        let m = blocks.len();
        if tubular.strands() != m {
            return Err(BraidError::InvalidDecomposition(format!(
                "tubular braid has {} strands, expected {m}",
                tubular.strands()
            )));
        }
        let dest = tubular.strand_destinations();
        for (p, &d) in dest.iter().enumerate() {
            if blocks[p].0 != blocks[d].0 || blocks[p].1.is_some() != blocks[d].1.is_some() {
                return Err(BraidError::InvalidDecomposition(format!(
                    "tubular braid sends block {} (size {}) to block {} (size {})",
                    p + 1,
                    blocks[p].0,
                    d + 1,
                    blocks[d].0
                )));
            }
        }
        let circles = curves.circles();
        if interiors.len() != circles.len() {
            return Err(BraidError::InvalidDecomposition(format!(
                "{} interior braids for {} circles",
                interiors.len(),
                circles.len()
            )));
        }
        for (k, (w, &(a, b))) in interiors.iter().zip(circles).enumerate() {
            if w.strands() != b - a + 1 {
                return Err(BraidError::InvalidDecomposition(format!(
                    "interior {} has {} strands, circle [{a}-{b}] encloses {}",
                    k + 1,
                    w.strands(),
                    b - a + 1
                )));
            }
        }
        Ok(Self {
            curves,
            tubular,
            interiors,
        })
    }

    /// The identity of `B_C`.
    pub fn identity(curves: CurveSystem) -> Self {
        let m = curves.blocks().len();
        let interiors = curves
            .circles()
            .iter()
            .map(|&(a, b)| BraidWord::identity(b - a + 1))
            .collect();
        Self {
            curves,
            tubular: BraidWord::identity(m),
            interiors,
        }
    }

    /// Pure interior element: trivial tubular part.
    pub fn from_interiors(curves: CurveSystem, interiors: Vec<BraidWord>) -> Result<Self> {
        let m = curves.blocks().len();
        Self::new(curves, BraidWord::identity(m), interiors)
    }

    pub fn strands(&self) -> usize {
        self.curves.punctures()
    }

    pub fn curves(&self) -> &CurveSystem {
        &self.curves
    }

    pub fn tubular(&self) -> &BraidWord {
        &self.tubular
    }

    /// Number of tubular strands.
    pub fn tubular_strands(&self) -> usize {
        self.tubular.strands()
    }

    /// Interiors in circle order.
    pub fn interiors(&self) -> &[BraidWord] {
        &self.interiors
    }

    /// Block positions (1-based) occupied by circles, in circle order.
    pub fn circle_positions(&self) -> Vec<usize> {
        self.curves
            .blocks()
            .iter()
            .enumerate()
            .filter_map(|(p, (_, c))| c.map(|_| p + 1))
            .collect()
    }

    /// Circle index of block position `p` (1-based), if `p` is a circle.
    pub fn circle_at(&self, p: usize) -> Option<usize> {
        self.curves.blocks().get(p.checked_sub(1)?)?.1
    }

    /// Number of punctures inside the circle at block position `p`.
    pub fn size_at(&self, p: usize) -> usize {
        self.curves.blocks()[p - 1].0
    }

    /// Interior carried by the tube starting at block position `p`.
    pub fn interior_at(&self, p: usize) -> Option<&BraidWord> {
        self.circle_at(p).map(|c| &self.interiors[c])
    }

    pub fn with_interior_at(&self, p: usize, w: BraidWord) -> Result<Self> {
        let c = self.circle_at(p).ok_or_else(|| {
            BraidError::InvalidDecomposition(format!("block {p} is not a circle"))
        })?;
        let mut interiors = self.interiors.clone();
        interiors[c] = w;
        Self::new(self.curves.clone(), self.tubular.clone(), interiors)
    }

    /// 1-based destination block of the tube starting at block `p`.
    pub fn dest(&self, p: usize) -> usize {
        self.tubular.strand_destinations()[p - 1] + 1
    }

    pub fn orbits(&self) -> OrbitStructure {
        let dest = self.tubular.strand_destinations();
        let is_circle: Vec<bool> = self.curves.blocks().iter().map(|b| b.1.is_some()).collect();
        let mut seen = vec![false; dest.len()];
        let mut orbits = Vec::new();
        for start in 0..dest.len() {
            if seen[start] || !is_circle[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                orbit.push(p + 1);
                p = dest[p];
            }
            orbits.push(orbit);
        }
        OrbitStructure { orbits }
    }

    /// The braid in `B_n`: interiors applied at the start, then the cabled
    /// tubular braid.
    pub fn embed(&self) -> BraidWord {
        let n = self.strands();
        let mut letters = Vec::new();
        for (w, &(a, _)) in self.interiors.iter().zip(self.curves.circles()) {
            letters.extend(
                w.letters()
                    .iter()
                    .map(|l| Letter::new(l.index() + a - 1, l.is_positive())),
            );
        }
        let mut sizes = block_sizes(&self.curves);
        for &l in self.tubular.letters() {
            let j = l.index() - 1;
            let offset: usize = sizes[..j].iter().sum();
            letters.extend(cable(offset, sizes[j], sizes[j + 1], l.is_positive()));
            sizes.swap(j, j + 1);
        }
        BraidWord::new(n, letters).expect("cabled letters stay in range")
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.curves != other.curves {
            return Err(BraidError::CurveMismatch);
        }
        Ok(())
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let dest = self.tubular.strand_destinations();
        let blocks = self.curves.blocks();
        let mut interiors = self.interiors.clone();
        for (p, b) in blocks.iter().enumerate() {
            if let Some(c) = b.1 {
                let c2 = blocks[dest[p]].1.expect("circles map to circles");
                interiors[c] = self.interiors[c].multiply(&other.interiors[c2])?;
            }
        }
        Ok(Self {
            curves: self.curves.clone(),
            tubular: self.tubular.multiply(&other.tubular)?,
            interiors,
        })
    }

    pub fn inverse(&self) -> Self {
        let dest = self.tubular.strand_destinations();
        let blocks = self.curves.blocks();
        let mut interiors = self.interiors.clone();
        for (p, b) in blocks.iter().enumerate() {
            if let Some(c) = b.1 {
                let c2 = blocks[dest[p]].1.expect("circles map to circles");
                interiors[c2] = self.interiors[c].inverse();
            }
        }
        Self {
            curves: self.curves.clone(),
            tubular: self.tubular.inverse(),
            interiors,
        }
    }

    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.curves.clone());
        for _ in 0..k.unsigned_abs() {
            acc = acc.product(&base).expect("same curves");
        }
        acc
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Self) -> Result<Self> {
        c.inverse().product(self)?.product(c)
    }

    /// Recovers the decomposition of a tube-respecting word. Crossings of
    /// whole blocks must appear as the contiguous cable words that
    /// [`Self::embed`] produces.
    pub fn extract(w: &BraidWord, curves: &CurveSystem) -> Result<Self> {
        if w.strands() != curves.punctures() {
            return Err(BraidError::StrandMismatch {
                left: w.strands(),
                right: curves.punctures(),
            });
        }
        let blocks = curves.blocks();
        let m = blocks.len();
        // layout[k] = original block index now at position k
        let mut layout: Vec<usize> = (0..m).collect();
        let size = |b: usize| blocks[b].0;
        let mut interiors: Vec<Vec<Letter>> = vec![Vec::new(); curves.circles().len()];
        let mut tubular = Vec::new();
        let letters = w.letters();
        let mut idx = 0;
        while idx < letters.len() {
            let l = letters[idx];
            // locate the block containing strand position l.index()
            let mut offset = 0;
            let mut j = 0;
            while offset + size(layout[j]) < l.index() {
                offset += size(layout[j]);
                j += 1;
            }
            let inside = l.index() < offset + size(layout[j]);
            if inside {
                let c = blocks[layout[j]].1.expect("free punctures have one strand");
                interiors[c].push(Letter::new(l.index() - offset, l.is_positive()));
                idx += 1;
                continue;
            }
            let (p, q) = (size(layout[j]), size(layout[j + 1]));
            let expected = cable(offset, p, q, l.is_positive());
            let run = letters.get(idx..idx + expected.len());
            if run != Some(&expected[..]) {
                let bad = letters[idx..]
                    .iter()
                    .zip(&expected)
                    .position(|(a, b)| a != b)
                    .map_or(idx, |k| idx + k);
                let reason = if bad == idx {
                    format!(
                        "starts a crossing of blocks {} and {} that is not completed",
                        j + 1,
                        j + 2
                    )
                } else {
                    format!(
                        "breaks the crossing of blocks {} and {} begun at letter {}",
                        j + 1,
                        j + 2,
                        idx + 1
                    )
                };
                return Err(BraidError::NotTubeRespecting {
                    index: bad + 1,
                    reason,
                });
            }
            tubular.push(Letter::new(j + 1, l.is_positive()));
            layout.swap(j, j + 1);
            idx += expected.len();
        }
        for (k, &b) in layout.iter().enumerate() {
            if blocks[b].0 != blocks[k].0 || blocks[b].1.is_some() != blocks[k].1.is_some() {
                return Err(BraidError::DoesNotPreserve);
            }
        }
        let interiors = interiors
            .into_iter()
            .zip(curves.circles())
            .map(|(ls, &(a, b))| BraidWord::new(b - a + 1, ls))
            .collect::<Result<Vec<_>>>()?;
        Self::new(curves.clone(), BraidWord::new(m, tubular)?, interiors)
    }
}

impl fmt::Display for TubularDecomposition {
    /// Multi-line text form: header, tubular word, one line per circle.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let circles: Vec<String> = self
            .curves
            .circles()
            .iter()
            .map(|(a, b)| format!("[{a}-{b}]"))
            .collect();
        writeln!(f, "n={}; C={};", self.strands(), circles.join(","))?;
        write!(f, "tubular: {}", self.tubular.format())?;
        for (p, w) in self.circle_positions().into_iter().zip(&self.interiors) {
            write!(f, "\ninterior[{p}]: {}", w.format())?;
        }
        Ok(())
    }
}

impl FromStr for TubularDecomposition {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| BraidError::Parse(format!("decomposition: {what}"));
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| bad("empty input"))?;
        let mut parts = header.split(';').map(str::trim);
        let n: usize = parts
            .next()
            .and_then(|p| p.strip_prefix("n="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad("header must start with n=<int>"))?;
        let circles = parts
            .next()
            .and_then(|p| p.strip_prefix("C="))
            .ok_or_else(|| bad("header needs C=<intervals>"))?;
        let curves = CurveSystem::new(n, &parse_intervals(circles)?)?;
        let m = curves.blocks().len();
        let mut tubular = None;
        let positions: Vec<usize> = curves
            .blocks()
            .iter()
            .enumerate()
            .filter_map(|(p, b)| b.1.map(|_| p + 1))
            .collect();
        let mut interiors: Vec<Option<BraidWord>> = vec![None; positions.len()];
        for line in lines {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| bad("expected key: value"))?;
            let key = key.trim();
            if key == "tubular" {
                tubular = Some(if m >= 2 {
                    BraidWord::parse(value, m)?
                } else {
                    BraidWord::identity(m)
                });
            } else if let Some(p) = key
                .strip_prefix("interior[")
                .and_then(|k| k.strip_suffix(']'))
            {
                let p: usize = p.parse().map_err(|_| bad("bad interior index"))?;
                let c = positions
                    .iter()
                    .position(|&q| q == p)
                    .ok_or_else(|| bad("interior index is not a circle position"))?;
                let (a, b) = curves.circles()[c];
                interiors[c] = Some(BraidWord::parse(value, b - a + 1)?);
            } else {
                return Err(bad(&format!("unknown key {key:?}")));
            }
        }
        let interiors = interiors
            .into_iter()
            .zip(curves.circles())
            .map(|(w, &(a, b))| w.unwrap_or_else(|| BraidWord::identity(b - a + 1)))
            .collect();
        let tubular = tubular.unwrap_or_else(|| BraidWord::identity(m));
        Self::new(curves, tubular, interiors)
    }
}

pub fn make_decomposition(
    curves: CurveSystem,
    tubular: BraidWord,
    interiors: Vec<BraidWord>,
) -> Result<TubularDecomposition> {
    TubularDecomposition::new(curves, tubular, interiors)
}

pub fn embed(d: &TubularDecomposition) -> BraidWord {
    d.embed()
}

pub fn dec_product(
    a: &TubularDecomposition,
    b: &TubularDecomposition,
) -> Result<TubularDecomposition> {
    a.product(b)
}

pub fn dec_inverse(d: &TubularDecomposition) -> TubularDecomposition {
    d.inverse()
}

pub fn dec_power(d: &TubularDecomposition, k: i64) -> TubularDecomposition {
    d.power(k)
}

pub fn orbits(d: &TubularDecomposition) -> OrbitStructure {
    d.orbits()
}

pub fn extract(w: &BraidWord, curves: &CurveSystem) -> Result<TubularDecomposition> {
    TubularDecomposition::extract(w, curves)
}


/// A random element of `B_C`: a random tubular word corrected by block swaps
/// so that circles land on circles of equal size, and random interiors.
pub fn random_decomposition<R: rand::Rng + ?Sized>(
    rng: &mut R,
    curves: &CurveSystem,
    tubular_len: usize,
    interior_len: usize,
) -> TubularDecomposition {
    let blocks = curves.blocks();
    let m = blocks.len();
    let kind = |b: usize| (blocks[b].0, blocks[b].1.is_some());
    let mut tubular = BraidWord::random(rng, m, tubular_len).letters().to_vec();
    let mut layout: Vec<usize> = (0..m).collect();
    for l in &tubular {
        layout.swap(l.index() - 1, l.index());
    }
    // target[k]: the block that must end at position k; blocks of one kind
    // keep their current relative order
    let mut rank = vec![0; m];
    let mut seen = std::collections::HashMap::new();
    for &b in &layout {
        let r = seen.entry(kind(b)).or_insert(0);
        rank[b] = *r;
        *r += 1;
    }
    let mut key: Vec<(usize, usize)> = vec![(0, 0); m];
    let mut count = std::collections::HashMap::new();
    for k in 0..m {
        let r = count.entry(kind(k)).or_insert(0);
        key[k] = (k, *r);
        *r += 1;
    }
    // desired final position of each block
    let goal = |b: usize| {
        (0..m)
            .find(|&k| kind(k) == kind(b) && key[k].1 == rank[b])
            .expect("kinds match in number")
    };
    // bubble sort the layout by goal position with random crossing signs
    for _ in 0..m {
        for k in 0..m.saturating_sub(1) {
            if goal(layout[k]) > goal(layout[k + 1]) {
                tubular.push(Letter::new(k + 1, rng.gen_bool(0.5)));
                layout.swap(k, k + 1);
            }
        }
    }
    let interiors = curves
        .circles()
        .iter()
        .map(|&(a, b)| BraidWord::random(rng, b - a + 1, interior_len))
        .collect();
    let tubular = BraidWord::new(m, tubular).expect("valid letters");
    TubularDecomposition::new(curves.clone(), tubular, interiors).expect("sizes respected")
}

/// A random round curve system with at least one circle, or `None` when
/// `n < 3`.
pub fn random_curves<R: rand::Rng + ?Sized>(rng: &mut R, n: usize) -> Option<CurveSystem> {
    if n < 3 {
        return None;
    }
    loop {
        let mut circles = Vec::new();
        let mut p = 1;
        while p < n {
            let max = n - p + 1;
            if rng.gen_bool(0.6) && max >= 2 {
                let size = rng.gen_range(2..=max.min(n - 1));
                circles.push((p, p + size - 1));
                p += size;
            } else {
                p += 1;
            }
        }
        if let Ok(c) = CurveSystem::new(n, &circles) {
            if !c.is_empty() {
                return Some(c);
            }
        }
    }
}
