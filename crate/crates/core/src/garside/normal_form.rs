use std::cmp::Ordering;
use std::fmt;

use crate::error::{BraidError, Result};
use crate::garside::simple::{SimpleBraid, MAX_STRANDS};
use crate::word::{BraidWord, Letter};

/// Left normal form `Δ^inf · x_1 ⋯ x_r` with each `x_i` a proper simple braid
/// (neither trivial nor `Δ`) and each pair `(x_i, x_{i+1})` left-weighted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: usize,
    inf: i64,
    factors: Vec<SimpleBraid>,
}

pub(crate) fn check_strands(n: usize) -> Result<()> {
    if n < 2 {
        return Err(BraidError::TooFewStrands(n));
    }
    if n > MAX_STRANDS {
        return Err(BraidError::TooManyStrands {
            got: n,
            max: MAX_STRANDS,
        });
    }
    Ok(())
}

/// Makes `(a, b)` left-weighted in place. Returns true if anything moved.
fn left_weight(a: &mut SimpleBraid, b: &mut SimpleBraid) -> bool {
    let n = a.strands();
    let mut changed = false;
    loop {
        let movable = b.starting_set() & !a.finishing_set();
        if movable == 0 {
            return changed;
        }
        let i = movable.trailing_zeros() as usize;
        let g = SimpleBraid::generator(n, i);
        *a = a.then(&g);
        *b = g.then(b);
        changed = true;
    }
}

impl NormalForm {
    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            inf: 0,
            factors: Vec::new(),
        }
    }

    pub fn delta_power(strands: usize, p: i64) -> Self {
        Self {
            strands,
            inf: p,
            factors: Vec::new(),
        }
    }

    pub fn of_word(w: &BraidWord) -> Result<Self> {
        let n = w.strands();
        check_strands(n)?;
        // σ_i⁻¹ = Δ⁻¹ · (Δσ_i⁻¹), and X·Δ⁻¹ = Δ⁻¹·τ(X): each factor is flipped
        // once per negative letter to its right.
        let letters = w.letters();
        let mut negatives_after = letters.iter().filter(|l| !l.is_positive()).count() as i64;
        let mut nf = Self::delta_power(n, -negatives_after);
        for &l in letters {
            let g = SimpleBraid::generator(n, l.index() - 1);
            let s = if l.is_positive() {
                g
            } else {
                negatives_after -= 1;
                g.left_complement()
            };
            nf.push_simple(s.flip_pow(negatives_after));
        }
        Ok(nf)
    }

    /// Appends a simple factor on the right, restoring normality.
    pub(crate) fn push_simple(&mut self, s: SimpleBraid) {
        if s.is_identity() {
            return;
        }
        if s.is_delta() {
            // Δ commutes past everything up to τ
            for f in self.factors.iter_mut() {
                *f = f.flip();
            }
            self.inf += 1;
            return;
        }
        self.factors.push(s);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (left, right) = self.factors.split_at_mut(j);
            if !left_weight(&mut left[j - 1], &mut right[0]) {
                break;
            }
            j -= 1;
        }
        self.cleanup();
    }

    fn cleanup(&mut self) {
        while self.factors.last().is_some_and(|f| f.is_identity()) {
            self.factors.pop();
        }
        let lead = self.factors.iter().take_while(|f| f.is_delta()).count();
        if lead > 0 {
            self.factors.drain(..lead);
            self.inf += lead as i64;
        }
        debug_assert!(self
            .factors
            .iter()
            .all(|f| !f.is_identity() && !f.is_delta()));
    }

    /// Builds `Δ^inf · s_1 ⋯ s_k` from arbitrary simple factors.
    pub(crate) fn from_parts(strands: usize, inf: i64, parts: &[SimpleBraid]) -> Self {
        let mut nf = Self::delta_power(strands, inf);
        for &p in parts {
            nf.push_simple(p);
        }
        nf
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn inf(&self) -> i64 {
        self.inf
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[SimpleBraid] {
        &self.factors
    }

    pub fn is_delta_power(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta = SimpleBraid::delta(n).letters();
        let mut letters: Vec<Letter> = Vec::new();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                letters.extend_from_slice(&delta);
            }
        } else {
            let inv: Vec<Letter> = delta.iter().rev().map(|l| l.inverse()).collect();
            for _ in 0..-self.inf {
                letters.extend_from_slice(&inv);
            }
        }
        for f in &self.factors {
            letters.extend(f.letters());
        }
        BraidWord::new(n, letters).expect("normal form letters are in range")
    }

    pub fn multiply(&self, other: &Self) -> Self {
        // Δ^a X Δ^b Y = Δ^{a+b} τ^b(X) Y
        let mut nf = Self::delta_power(self.strands, self.inf + other.inf);
        for f in &self.factors {
            nf.push_simple(f.flip_pow(other.inf));
        }
        for f in &other.factors {
            nf.push_simple(*f);
        }
        nf
    }

    pub fn inverse(&self) -> Self {
        // (Δ^p x_1⋯x_r)⁻¹ = x_r⁻¹⋯x_1⁻¹ Δ^{-p}, and x⁻¹ = (x*)·Δ⁻¹ with x* the
        // right complement.
        let r = self.factors.len() as i64;
        let mut nf = Self::delta_power(self.strands, -self.inf - r);
        // x_r⁻¹ ⋯ x_1⁻¹ = Δ^{-r} · τ^{?}(…); rebuild via flips
        for (idx, f) in self.factors.iter().enumerate().rev() {
            // factor x_{idx}⁻¹ = ∂x · Δ⁻¹ where ∂x·Δ⁻¹… moving all Δ⁻¹ left:
            // complement of x_{idx} gets flipped once per Δ⁻¹ to its right,
            // i.e. idx+1 times (its own and those of earlier factors) plus p.
            let c = f.right_complement();
            nf.push_simple(c.flip_pow(idx as i64 + 1 + self.inf));
        }
        nf
    }

    /// Serialized as `D^<p> | <perm> | <perm> | …`, each `<perm>` the
    /// one-line image sequence of the factor's permutation.
    pub fn format(&self) -> String {
        let mut s = format!("D^{}", self.inf);
        for f in &self.factors {
            s.push_str(" | ");
            let imgs: Vec<String> = f.images().iter().map(ToString::to_string).collect();
            s.push_str(&imgs.join(" "));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split('|');
        let head = parts.next().unwrap_or("").trim();
        let inf: i64 = head
            .strip_prefix("D^")
            .and_then(|p| p.trim().parse().ok())
            .ok_or_else(|| BraidError::Parse(format!("bad normal form head {head:?}")))?;
        let mut factors = Vec::new();
        let mut strands = None;
        for part in parts {
            let imgs: Vec<usize> = part
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| BraidError::Parse(format!("bad image {t:?}")))
                })
                .collect::<Result<_>>()?;
            let p = crate::perm::Permutation::from_images(&imgs)?;
            if *strands.get_or_insert(p.size()) != p.size() {
                return Err(BraidError::Parse("factor sizes differ".into()));
            }
            factors.push(SimpleBraid::from_permutation(&p));
        }
        let n = strands.ok_or_else(|| {
            BraidError::Parse("strand count cannot be inferred from a pure Δ-power".into())
        })?;
        check_strands(n)?;
        Ok(Self::from_parts(n, inf, &factors))
    }
}

impl PartialOrd for NormalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: `(inf, canonical length, factor permutations lexicographically)`.
impl Ord for NormalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.strands
            .cmp(&other.strands)
            .then(self.inf.cmp(&other.inf))
            .then(self.factors.len().cmp(&other.factors.len()))
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NF{}[{}]", self.strands, self.format())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}
