//! Braid words over the Artin generators `σ_1, …, σ_{n-1}`.
//!
//! Products are read left to right: in `ab` the braid `a` happens first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{BraidError, Result};
use crate::perm::Permutation;

/// A signed Artin generator. `Letter(i)` is `σ_i` for `i > 0` and
/// `σ_{-i}⁻¹` for `i < 0`; zero never occurs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: usize, positive: bool) -> Self {
        let i = index as i32;
        Letter(if positive { i } else { -i })
    }

    pub fn from_signed(value: i32) -> Self {
        assert!(value != 0, "letter index must be nonzero");
        Letter(value)
    }

    /// 1-based generator index.
    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

/// A freely reduced word in the Artin generators of `B_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

/// The three distinguished braids used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardKind {
    /// Garside's half twist `Δ`.
    HalfTwist,
    /// `δ = σ_1σ_2⋯σ_{n-1}`.
    Delta,
    /// `γ = σ_1²σ_2⋯σ_{n-1}`.
    Gamma,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    /// Builds a word from letters, checking ranges and freely reducing.
    pub fn new(strands: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        let mut w = Self::identity(strands);
        for l in letters {
            if l.index() >= strands {
                return Err(BraidError::GeneratorOutOfRange {
                    index: l.signed() as i64,
                    strands,
                });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Convenience constructor from signed indices, e.g. `[1, -2]` for `σ_1σ_2⁻¹`.
    pub fn from_signed(strands: usize, letters: &[i32]) -> Result<Self> {
        if let Some(&z) = letters.iter().find(|&&l| l == 0) {
            return Err(BraidError::GeneratorOutOfRange {
                index: z as i64,
                strands,
            });
        }
        Self::new(strands, letters.iter().map(|&l| Letter::from_signed(l)))
    }

    /// Single generator `σ_i^{±1}`.
    pub fn generator(strands: usize, index: usize, positive: bool) -> Result<Self> {
        Self::new(strands, [Letter::new(index, positive)])
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        Ok(out)
    }

    /// `self⁻¹ · other · self`-style helpers are common enough to have a name:
    /// returns `conj⁻¹ · self · conj`.
    pub fn conjugate_by(&self, conj: &Self) -> Result<Self> {
        conj.inverse().multiply(self)?.multiply(conj)
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.strands);
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                out.push(l);
            }
        }
        out
    }

    /// A freely reduced word of exactly `len` uniformly chosen letters, each
    /// different from the inverse of its predecessor.
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, strands: usize, len: usize) -> Self {
        let mut out = Self::identity(strands);
        if strands < 2 {
            return out;
        }
        while out.letters.len() < len {
            let l = Letter::new(rng.gen_range(1..strands), rng.gen_bool(0.5));
            if out.letters.last() != Some(&l.inverse()) {
                out.letters.push(l);
            }
        }
        out
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// The permutation induced on strand positions, as the product of the
    /// transpositions `(i i+1)` in word order. For `δ` in `B_4` this is the
    /// 4-cycle `(1 2 3 4)`, i.e. images `[2, 3, 4, 1]`.
    pub fn underlying_permutation(&self) -> Permutation {
        // product t_{i1} ∘ t_{i2} ∘ ⋯ : apply the last letter first
        let mut images: Vec<usize> = (0..self.strands).collect();
        for l in self.letters.iter().rev() {
            let i = l.index() - 1;
            for v in images.iter_mut() {
                if *v == i {
                    *v = i + 1;
                } else if *v == i + 1 {
                    *v = i;
                }
            }
        }
        Permutation::from_zero_based(images)
    }

    /// Where each strand ends: entry `i` (0-based) is the final position of
    /// the strand starting at position `i`. This is the inverse of
    /// [`Self::underlying_permutation`].
    pub fn strand_destinations(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = strand
        for l in &self.letters {
            at.swap(l.index() - 1, l.index());
        }
        let mut dest = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            dest[strand] = pos;
        }
        dest
    }

    pub fn standard(kind: StandardKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(BraidError::TooFewStrands(n));
        }
        let mut letters = Vec::new();
        match kind {
            StandardKind::HalfTwist => {
                for j in 1..n {
                    for i in (1..=j).rev() {
                        letters.push(i as i32);
                    }
                }
            }
            StandardKind::Delta => letters.extend(1..n as i32),
            StandardKind::Gamma => {
                letters.push(1);
                letters.extend(1..n as i32);
            }
        }
        Self::from_signed(n, &letters)
    }

    /// Shifts every generator index by `offset`, viewing the word inside a
    /// larger braid group on `strands` strands.
    pub fn shifted(&self, offset: usize, strands: usize) -> Result<Self> {
        Self::new(
            strands,
            self.letters
                .iter()
                .map(|l| Letter::new(l.index() + offset, l.is_positive())),
        )
    }

    /// Parses the word grammar: whitespace-separated tokens
    /// `['s'] INT ['^' INT]`, e.g. `"1 -2"`, `"s1 s2^-1"`, `"s1^3"`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let syntax = |reason: &str| BraidError::Syntax {
                token: token.to_string(),
                reason: reason.to_string(),
            };
            let body = token.strip_prefix('s').unwrap_or(token);
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, Some(e)),
                None => (body, None),
            };
            let gen: i64 = gen.parse().map_err(|_| syntax("bad generator index"))?;
            let exp: i64 = match exp {
                Some(e) => e.parse().map_err(|_| syntax("bad exponent"))?,
                None => 1,
            };
            if gen == 0 || gen.unsigned_abs() as usize >= strands {
                return Err(BraidError::GeneratorOutOfRange {
                    index: gen,
                    strands,
                });
            }
            let signed = gen * exp.signum();
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::from_signed(signed as i32));
            }
        }
        Self::new(strands, letters)
    }

    /// Formats as `s<i>^<e>` tokens, merging runs of equal letters.
    /// The identity formats as the empty string.
    pub fn format(&self) -> String {
        let mut parts = Vec::new();
        let mut iter = self.letters.iter().peekable();
        while let Some(&l) = iter.next() {
            let mut count: i64 = 1;
            while iter.peek() == Some(&&l) {
                iter.next();
                count += 1;
            }
            parts.push(format!("s{}^{}", l.index(), count * l.sign()));
        }
        parts.join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.strands, self.format())
    }
}

/// A word together with its strand count, parsed as `"<n>:<word>"`.
impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let (n, w) = s
            .split_once(':')
            .ok_or_else(|| BraidError::Parse(format!("expected <n>:<word>, got {s:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| BraidError::Parse(format!("bad strand count in {s:?}")))?;
        Self::parse(w, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::from_signed(n, l).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(BraidWord::parse("1 2", 3).unwrap(), w(3, &[1, 2]));
        assert!(BraidWord::parse("1 -1", 3).unwrap().is_empty());
        assert_eq!(
            BraidWord::parse("s1 s2^-1 s1", 4).unwrap(),
            w(4, &[1, -2, 1])
        );
        assert_eq!(BraidWord::parse("s1^3", 3).unwrap(), w(3, &[1, 1, 1]));
        assert_eq!(BraidWord::parse("s-2^2", 3).unwrap(), w(3, &[-2, -2]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            BraidWord::parse("3", 3),
            Err(BraidError::GeneratorOutOfRange { .. })
        ));
        assert!(matches!(
            BraidWord::parse("0", 3),
            Err(BraidError::GeneratorOutOfRange { .. })
        ));
        assert!(matches!(
            BraidWord::parse("x1", 3),
            Err(BraidError::Syntax { .. })
        ));
        assert!(matches!(
            BraidWord::parse("s1^", 3),
            Err(BraidError::Syntax { .. })
        ));
        assert!(matches!(
            BraidWord::parse("", 1),
            Err(BraidError::TooFewStrands(1))
        ));
    }

    #[test]
    fn format_round_trip() {
        let x = w(4, &[1, 1, -2, 3, -1]);
        assert_eq!(x.format(), "s1^2 s2^-1 s3^1 s1^-1");
        assert_eq!(BraidWord::parse(&x.format(), 4).unwrap(), x);
        assert_eq!(BraidWord::identity(3).format(), "");
    }

    #[test]
    fn multiply_examples() {
        assert!(w(3, &[1]).multiply(&w(3, &[-1])).unwrap().is_empty());
        assert_eq!(w(3, &[1, 2]).multiply(&w(3, &[-2])).unwrap(), w(3, &[1]));
        assert_eq!(w(3, &[1]).multiply(&w(3, &[2])).unwrap(), w(3, &[1, 2]));
        assert!(matches!(
            w(3, &[1]).multiply(&w(4, &[1])),
            Err(BraidError::StrandMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(w(3, &[1, 2]).inverse(), w(3, &[-2, -1]));
        assert!(BraidWord::identity(3).inverse().is_empty());
        assert_eq!(w(3, &[-1, 2]).inverse(), w(3, &[-2, 1]));
    }

    #[test]
    fn power_examples() {
        assert_eq!(w(3, &[1]).power(3), w(3, &[1, 1, 1]));
        assert!(w(3, &[1, 2]).power(0).is_empty());
        assert_eq!(w(3, &[1]).power(-2), w(3, &[-1, -1]));
    }

    #[test]
    fn exponent_sums_of_standard_elements() {
        let d = BraidWord::standard(StandardKind::Delta, 4).unwrap();
        let g = BraidWord::standard(StandardKind::Gamma, 4).unwrap();
        assert_eq!(d.exponent_sum(), 3);
        assert_eq!(g.exponent_sum(), 4);
        assert_eq!(w(3, &[1, -2]).exponent_sum(), 0);
    }

    #[test]
    fn permutations() {
        assert_eq!(w(3, &[1]).underlying_permutation().images(), vec![2, 1, 3]);
        let d = BraidWord::standard(StandardKind::Delta, 4).unwrap();
        let p = d.underlying_permutation();
        assert_eq!(p.images(), vec![2, 3, 4, 1]);
        assert_eq!(p.cycles(), vec![vec![1, 2, 3, 4]]);
        let g = BraidWord::standard(StandardKind::Gamma, 3).unwrap();
        assert_eq!(g.underlying_permutation().images(), vec![1, 3, 2]);
        // destinations are the inverse map
        let dest = d.strand_destinations();
        assert_eq!(dest, vec![3, 0, 1, 2]);
    }

    #[test]
    fn standard_words() {
        assert_eq!(
            BraidWord::standard(StandardKind::HalfTwist, 3).unwrap(),
            w(3, &[1, 2, 1])
        );
        assert_eq!(
            BraidWord::standard(StandardKind::Delta, 4).unwrap(),
            w(4, &[1, 2, 3])
        );
        assert_eq!(
            BraidWord::standard(StandardKind::Gamma, 3).unwrap(),
            w(3, &[1, 1, 2])
        );
        assert!(BraidWord::standard(StandardKind::Delta, 1).is_err());
        assert_eq!(
            BraidWord::standard(StandardKind::HalfTwist, 4)
                .unwrap()
                .len(),
            6
        );
    }
}
