//! Permutation braids: positive braids in which each pair of strands
//! crosses at most once. They are determined by their permutation, and the
//! prefix order, joins and complements are computed combinatorially.

use std::cmp::Ordering;
use std::fmt;

use crate::perm::Permutation;
use crate::word::{BraidWord, Letter};

/// Largest strand count supported by the Garside engine.
pub const MAX_STRANDS: usize = 32;

/// A permutation braid on `n ≤ MAX_STRANDS` strands.
///
/// Stored as strand destinations: `dest[i]` is the final position of the
/// strand that starts at position `i` (0-based). Strands `i < j` cross iff
/// `dest[i] > dest[j]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleBraid {
    n: u8,
    dest: [u8; MAX_STRANDS],
}

impl SimpleBraid {
    pub fn identity(n: usize) -> Self {
        debug_assert!(n <= MAX_STRANDS);
        let mut dest = [0u8; MAX_STRANDS];
        for (i, d) in dest.iter_mut().enumerate().take(n) {
            *d = i as u8;
        }
        Self { n: n as u8, dest }
    }

    /// The half twist `Δ`.
    pub fn delta(n: usize) -> Self {
        let mut s = Self::identity(n);
        for i in 0..n {
            s.dest[i] = (n - 1 - i) as u8;
        }
        s
    }

    /// `σ_{i+1}` for 0-based `i`.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut s = Self::identity(n);
        s.dest.swap(i, i + 1);
        s
    }

    pub(crate) fn from_dest(dest: &[usize]) -> Self {
        let mut s = Self::identity(dest.len());
        for (i, &d) in dest.iter().enumerate() {
            s.dest[i] = d as u8;
        }
        s
    }

    pub fn strands(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub(crate) fn dest(&self, i: usize) -> usize {
        self.dest[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        (0..self.strands()).all(|i| self.dest(i) == i)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.strands();
        (0..n).all(|i| self.dest(i) == n - 1 - i)
    }

    fn inverse_map(&self) -> [u8; MAX_STRANDS] {
        let mut inv = [0u8; MAX_STRANDS];
        for i in 0..self.strands() {
            inv[self.dest(i)] = i as u8;
        }
        inv
    }

    /// Number of crossings (word length of the positive word).
    pub fn length(&self) -> usize {
        let n = self.strands();
        let mut c = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.dest[i] > self.dest[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Bitmask of 0-based `i` such that `σ_{i+1}` is a prefix.
    pub fn starting_set(&self) -> u32 {
        let mut m = 0;
        for i in 0..self.strands().saturating_sub(1) {
            if self.dest[i] > self.dest[i + 1] {
                m |= 1 << i;
            }
        }
        m
    }

    /// Bitmask of 0-based `i` such that `σ_{i+1}` is a suffix.
    pub fn finishing_set(&self) -> u32 {
        let inv = self.inverse_map();
        let mut m = 0;
        for i in 0..self.strands().saturating_sub(1) {
            if inv[i] > inv[i + 1] {
                m |= 1 << i;
            }
        }
        m
    }

    /// Product `self · other` as permutations. Only a permutation braid when
    /// no pair of strands crosses twice; callers guarantee that.
    pub(crate) fn then(&self, other: &Self) -> Self {
        let mut s = *self;
        for i in 0..self.strands() {
            s.dest[i] = other.dest[self.dest(i)];
        }
        s
    }

    /// Permutation inverse; as braids this is `a⁻¹` only up to the positive
    /// lift, used for solving `a · x = b`.
    pub(crate) fn perm_inverse(&self) -> Self {
        let inv = self.inverse_map();
        let mut s = *self;
        s.dest = inv;
        s
    }

    /// `τ(a) = Δ⁻¹ a Δ`, conjugation by the half twist.
    pub fn flip(&self) -> Self {
        let n = self.strands();
        let mut s = *self;
        for i in 0..n {
            s.dest[i] = (n - 1 - self.dest(n - 1 - i)) as u8;
        }
        s
    }

    pub fn flip_pow(&self, k: i64) -> Self {
        if k.rem_euclid(2) == 1 {
            self.flip()
        } else {
            *self
        }
    }

    /// The simple `b` with `self · b = Δ`.
    pub fn right_complement(&self) -> Self {
        let n = self.strands();
        let inv = self.inverse_map();
        let mut s = *self;
        for y in 0..n {
            s.dest[y] = (n - 1 - inv[y] as usize) as u8;
        }
        s
    }

    /// The simple `b` with `b · self = Δ`.
    pub fn left_complement(&self) -> Self {
        let n = self.strands();
        let inv = self.inverse_map();
        let mut s = *self;
        for x in 0..n {
            s.dest[x] = inv[n - 1 - x];
        }
        s
    }

    /// Rows of the crossing relation: bit `j` of row `i` is set when strand
    /// `i` ends to the right of strand `j` (`i < j`).
    fn crossing_rows(&self) -> [u32; MAX_STRANDS] {
        let n = self.strands();
        let mut rows = [0u32; MAX_STRANDS];
        for i in 0..n {
            for j in i + 1..n {
                if self.dest[i] > self.dest[j] {
                    rows[i] |= 1 << j;
                }
            }
        }
        rows
    }

    fn from_crossing_rows(n: usize, rows: &[u32; MAX_STRANDS]) -> Self {
        let mut s = Self::identity(n);
        for x in 0..n {
            let mut left = 0;
            for y in 0..n {
                // y ends left of x: x crosses over it, or y never crosses x
                if (y > x && rows[x] & (1 << y) != 0) || (y < x && rows[y] & (1 << x) == 0) {
                    left += 1;
                }
            }
            s.dest[x] = left as u8;
        }
        s
    }

    /// Prefix order: `self ≼ other` iff `other = self · x` for a positive `x`.
    pub fn is_prefix_of(&self, other: &Self) -> bool {
        let a = self.crossing_rows();
        let b = other.crossing_rows();
        (0..self.strands()).all(|i| a[i] & !b[i] == 0)
    }

    /// Least common multiple in the prefix order.
    pub fn join(&self, other: &Self) -> Self {
        let n = self.strands();
        let a = self.crossing_rows();
        let b = other.crossing_rows();
        let mut rows = [0u32; MAX_STRANDS];
        for i in 0..n {
            rows[i] = a[i] | b[i];
        }
        // transitive closure; rows only point to larger indices, so a
        // right-to-left sweep closes in one pass
        for i in (0..n).rev() {
            let mut acc = rows[i];
            let mut bits = rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                acc |= rows[j];
            }
            rows[i] = acc;
        }
        Self::from_crossing_rows(n, &rows)
    }

    /// Greatest common prefix.
    pub fn meet(&self, other: &Self) -> Self {
        let n = self.strands();
        let mut m = Self::identity(n);
        'grow: loop {
            let fin = m.finishing_set();
            for i in 0..n - 1 {
                if fin & (1 << i) != 0 {
                    continue;
                }
                let c = m.then(&Self::generator(n, i));
                if c.is_prefix_of(self) && c.is_prefix_of(other) {
                    m = c;
                    continue 'grow;
                }
            }
            return m;
        }
    }

    /// `self \ other`: the simple `x` with `self · x = self ∨ other`.
    pub fn right_residual(&self, other: &Self) -> Self {
        let j = self.join(other);
        self.perm_inverse().then(&j)
    }

    /// A positive word for this simple braid, as 1-based signed letters.
    pub fn letters(&self) -> Vec<Letter> {
        let mut cur = *self;
        let mut out = Vec::with_capacity(cur.length());
        loop {
            let s = cur.starting_set();
            if s == 0 {
                break;
            }
            let i = s.trailing_zeros() as usize;
            out.push(Letter::new(i + 1, true));
            // cur = σ_i · cur'
            cur = Self::generator(cur.strands(), i).then(&cur);
        }
        out
    }

    pub fn to_word(&self) -> BraidWord {
        BraidWord::new(self.strands(), self.letters()).expect("valid letters")
    }

    /// The permutation in the convention of
    /// [`BraidWord::underlying_permutation`].
    pub fn permutation(&self) -> Permutation {
        let inv = self.inverse_map();
        Permutation::from_zero_based((0..self.strands()).map(|i| inv[i] as usize).collect())
    }

    pub fn from_permutation(p: &Permutation) -> Self {
        let inv = p.inverse();
        Self::from_dest(&(0..p.size()).map(|i| inv.image0(i)).collect::<Vec<_>>())
    }

    /// One-line images of [`Self::permutation`], used for ordering and output.
    pub fn images(&self) -> Vec<u8> {
        let inv = self.inverse_map();
        inv[..self.strands()].iter().map(|&v| v + 1).collect()
    }
}

impl PartialOrd for SimpleBraid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimpleBraid {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.images().cmp(&other.images()))
    }
}

impl fmt::Debug for SimpleBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Simple{:?}", self.images())
    }
}
