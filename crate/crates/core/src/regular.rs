//! Regular forms of reducible braids and the conjugacy criterion between
//! them.
//!
//! A decomposition is in regular form when, in every orbit of circles, all
//! interior braids are trivial except the one in the last tube, and the last
//! tubes of different orbits carry braids that are equal or non-conjugate.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{BraidError, Result};
use crate::garside::{
    canonical_representative, centralizer_generators, conjugacy_test, equals, is_identity,
    ConjugacyCertificate, ConjugacyOutcome, NormalForm,
};
use crate::periodic::{classify_periodic, is_periodic, standardize_periodic, PeriodicBase};
use crate::tubular::TubularDecomposition;
use crate::word::{BraidWord, StandardKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularFormResult {
    pub regular: TubularDecomposition,
    /// `conjugator⁻¹ · embed(original) · conjugator = embed(regular)`.
    pub conjugator: BraidWord,
    /// One canonical representative per orbit, in orbit order.
    pub kappa: Vec<BraidWord>,
}

fn budget_err<T>(budget: usize) -> Result<T> {
    Err(BraidError::BudgetExceeded(budget))
}

/// `α_{i,1} ⋯ α_{i,r}` along one orbit listing.
pub fn orbit_product(d: &TubularDecomposition, orbit: &[usize]) -> BraidWord {
    let mut acc = BraidWord::identity(d.size_at(orbit[0]));
    for &u in orbit {
        acc = acc
            .multiply(d.interior_at(u).expect("orbits list circles"))
            .expect("tubes of one orbit have equal size");
    }
    acc
}

/// Trivial tubular part, interior `α_{i,u} ⋯ α_{i,r}` at position `u`.
/// Conjugating `d` by it moves each orbit product into the last tube.
pub fn mu(d: &TubularDecomposition) -> TubularDecomposition {
    let mut out = TubularDecomposition::identity(d.curves().clone());
    for orbit in d.orbits().orbits {
        let mut suffix = BraidWord::identity(d.size_at(orbit[0]));
        for &u in orbit.iter().rev() {
            suffix = d
                .interior_at(u)
                .expect("circle")
                .multiply(&suffix)
                .expect("same size");
            out = out.with_interior_at(u, suffix.clone()).expect("circle");
        }
    }
    out
}

/// For a decomposition whose orbits carry their braid in the last tube:
/// the conjugating element with `ν_i` in every tube of orbit `i`, and the
/// canonical representatives `κ_i`.
pub fn nu(
    d: &TubularDecomposition,
    budget: usize,
) -> Result<(TubularDecomposition, Vec<BraidWord>)> {
    let mut out = TubularDecomposition::identity(d.curves().clone());
    let mut kappa = Vec::new();
    for orbit in d.orbits().orbits {
        let last = *orbit.last().expect("orbits are nonempty");
        let x = d.interior_at(last).expect("circle");
        let (rep, c) = canonical_representative(x, budget)?;
        kappa.push(rep.to_word());
        for &u in &orbit {
            out = out.with_interior_at(u, c.clone())?;
        }
    }
    Ok((out, kappa))
}

pub fn to_regular_form(d: &TubularDecomposition, budget: usize) -> Result<RegularFormResult> {
    let m = mu(d);
    let d1 = d.conjugate_by(&m)?;
    let (n, kappa) = nu(&d1, budget)?;
    let mut regular = d1.conjugate_by(&n)?;
    // store the representatives verbatim so equal classes give equal words
    for (orbit, k) in regular.orbits().orbits.into_iter().zip(&kappa) {
        let last = *orbit.last().expect("nonempty");
        regular = regular.with_interior_at(last, k.clone())?;
    }
    Ok(RegularFormResult {
        regular,
        conjugator: m.product(&n)?.embed(),
        kappa,
    })
}

pub fn is_regular_form(d: &TubularDecomposition, budget: usize) -> Result<bool> {
    let orbits = d.orbits().orbits;
    for orbit in &orbits {
        for &u in &orbit[..orbit.len() - 1] {
            if !is_identity(d.interior_at(u).expect("circle"))? {
                return Ok(false);
            }
        }
    }
    let lasts: Vec<&BraidWord> = orbits
        .iter()
        .map(|o| d.interior_at(*o.last().expect("nonempty")).expect("circle"))
        .collect();
    for i in 0..lasts.len() {
        for j in i + 1..lasts.len() {
            let (x, y) = (lasts[i], lasts[j]);
            if x.strands() != y.strands() || equals(x, y)? {
                continue;
            }
            match conjugacy_test(x, y, budget)? {
                ConjugacyOutcome::NotConjugate => {}
                ConjugacyOutcome::Conjugate(_) => return Ok(false),
                ConjugacyOutcome::Unknown => return budget_err(budget),
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SwapKind {
    Delta,
    Gamma,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of orbits of `δ^s` (or of `γ^s` off the fixed point) and their
/// common length.
fn orbit_shape(kind: SwapKind, s: i64, m: usize) -> (usize, usize) {
    let points = match kind {
        SwapKind::Delta => m,
        SwapKind::Gamma => m - 1,
    };
    let t = gcd(s.unsigned_abs(), points as u64) as usize;
    (t, points / t)
}

/// 0-based orbit of the 0-based point `q` under `δ^s` or `γ^s`. For `γ^s`
/// orbit 0 is the fixed point.
fn orbit_index(kind: SwapKind, s: i64, m: usize, q: usize) -> usize {
    let (t, _) = orbit_shape(kind, s, m);
    match kind {
        SwapKind::Delta => q % t,
        SwapKind::Gamma if q == 0 => 0,
        SwapKind::Gamma => (q - 1) % t + 1,
    }
}

/// `S_i = (σ_i δ^s)^r` or `T_i = (σ_i γ^s)^r`: commutes with the standard
/// power and exchanges orbits `i` and `i + 1`. Orbit `i` of `δ^s` is the set
/// of points congruent to `i` modulo the number of orbits; for `γ^s`, orbit 1
/// is the fixed point and orbit `i ≥ 2` contains point `i`.
pub fn orbit_swap_element(
    kind: SwapKind,
    s: i64,
    r: usize,
    i: usize,
    m: usize,
) -> Result<BraidWord> {
    let invalid = |why: String| Err(BraidError::InvalidSwap(why));
    if m < 2 || (kind == SwapKind::Gamma && m < 3) {
        return invalid(format!("{m} strands is too few"));
    }
    let (t, len) = orbit_shape(kind, s, m);
    if r != len {
        return invalid(format!("orbits have length {len}, not {r}"));
    }
    let total = match kind {
        SwapKind::Delta => t,
        SwapKind::Gamma => t + 1,
    };
    let lo = match kind {
        SwapKind::Delta => 1,
        SwapKind::Gamma => 2,
    };
    if i < lo || i + 1 > total {
        return invalid(format!("index {i} out of range {lo}..{total}"));
    }
    let base = match kind {
        SwapKind::Delta => BraidWord::standard(StandardKind::Delta, m)?,
        SwapKind::Gamma => BraidWord::standard(StandardKind::Gamma, m)?,
    };
    Ok(BraidWord::generator(m, i, true)?
        .multiply(&base.power(s))?
        .power(r as i64))
}

/// Orbit label of each block: its size and, for circles, the canonical
/// class of the orbit product.
type Label = (usize, Option<NormalForm>);

fn block_labels(d: &TubularDecomposition, budget: usize) -> Result<Vec<Label>> {
    let mut labels: Vec<Label> = (1..=d.tubular_strands())
        .map(|p| (d.size_at(p), None))
        .collect();
    for orbit in d.orbits().orbits {
        let (rep, _) = canonical_representative(&orbit_product(d, &orbit), budget)?;
        for &u in &orbit {
            labels[u - 1].1 = Some(rep.clone());
        }
    }
    Ok(labels)
}

fn labels_match(la: &[Label], lb: &[Label], dest: &[usize]) -> bool {
    la.iter().enumerate().all(|(p, l)| *l == lb[dest[p]])
}

enum Search {
    Found(BraidWord),
    Refuted,
    Unknown,
}

/// A tubular conjugator through the centraliser of a standard periodic
/// braid, realising the orbit matching with products of swap elements.
fn periodic_search(
    a: &BraidWord,
    b: &BraidWord,
    la: &[Label],
    lb: &[Label],
    budget: usize,
) -> Result<Search> {
    let m = a.strands();
    let (ca, cb) = match (
        standardize_periodic(a, budget),
        standardize_periodic(b, budget),
    ) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(BraidError::BudgetExceeded(_)), _) | (_, Err(BraidError::BudgetExceeded(_))) => {
            return Ok(Search::Unknown)
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let class = classify_periodic(a)?;
    if class != classify_periodic(b)? {
        return Ok(Search::Refuted);
    }
    let (kind, s) = match class.base {
        PeriodicBase::Delta => (SwapKind::Delta, class.t),
        PeriodicBase::Gamma => (SwapKind::Gamma, class.t),
        PeriodicBase::Central => (SwapKind::Delta, m as i64 * class.t),
    };
    let (t, r) = orbit_shape(kind, s, m);
    let total = if kind == SwapKind::Gamma { t + 1 } else { t };
    let place = |c: &ConjugacyCertificate, labels: &[Label]| -> Vec<Label> {
        let dest = c.witness.strand_destinations();
        let mut out = vec![None; total];
        for (p, l) in labels.iter().enumerate() {
            out[orbit_index(kind, s, m, dest[p])] = Some(l.clone());
        }
        out.into_iter()
            .map(|l| l.expect("every orbit is hit"))
            .collect()
    };
    let mut arr = place(&ca, la);
    let target = place(&cb, lb);
    let lo = if kind == SwapKind::Gamma {
        if arr[0] != target[0] {
            return Ok(Search::Refuted);
        }
        1
    } else {
        0
    };
    let mut z = BraidWord::identity(m);
    for j in lo..total {
        let Some(k) = (j..total).find(|&k| arr[k] == target[j]) else {
            return Ok(Search::Refuted);
        };
        for x in (j..k).rev() {
            arr.swap(x, x + 1);
            z = z.multiply(&orbit_swap_element(kind, s, r, x + 1, m)?)?;
        }
    }
    Ok(Search::Found(
        ca.witness.multiply(&z)?.multiply(&cb.witness.inverse())?,
    ))
}

/// A tubular conjugator `η₀ z` with `z` in the centraliser of `b`, found by
/// breadth-first search over the permutations the centraliser induces.
fn centralizer_search(
    a: &BraidWord,
    b: &BraidWord,
    la: &[Label],
    lb: &[Label],
    budget: usize,
) -> Result<Search> {
    let eta0 = match conjugacy_test(a, b, budget)? {
        ConjugacyOutcome::Conjugate(c) => c.witness,
        ConjugacyOutcome::NotConjugate => return Ok(Search::Refuted),
        ConjugacyOutcome::Unknown => return Ok(Search::Unknown),
    };
    let d0 = eta0.strand_destinations();
    if labels_match(la, lb, &d0) {
        return Ok(Search::Found(eta0));
    }
    let Some(gens) = centralizer_generators(b, budget)? else {
        return Ok(Search::Unknown);
    };
    let gens: Vec<(BraidWord, Vec<usize>)> = gens
        .into_iter()
        .flat_map(|g| [g.inverse(), g])
        .map(|g| {
            let d = g.strand_destinations();
            (g, d)
        })
        .filter(|(_, d)| d.iter().enumerate().any(|(i, &j)| i != j))
        .collect();
    let mut seen: HashMap<Vec<usize>, BraidWord> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(d0.clone(), eta0.clone());
    queue.push_back(d0);
    while let Some(perm) = queue.pop_front() {
        let word = seen[&perm].clone();
        for (g, dg) in &gens {
            let next: Vec<usize> = perm.iter().map(|&q| dg[q]).collect();
            if seen.contains_key(&next) {
                continue;
            }
            let w = word.multiply(g)?;
            if labels_match(la, lb, &next) {
                return Ok(Search::Found(w));
            }
            if seen.len() >= budget {
                return Ok(Search::Unknown);
            }
            seen.insert(next.clone(), w);
            queue.push_back(next);
        }
    }
    Ok(Search::Refuted)
}

/// Builds the ambient certificate from a tubular conjugator that respects
/// orbit labels: lift it with trivial interiors, move the interiors to the
/// last tubes, then correct them inside each tube.
fn certify(
    a: &TubularDecomposition,
    b: &TubularDecomposition,
    eta: BraidWord,
    budget: usize,
) -> Result<ConjugacyOutcome> {
    let xi = TubularDecomposition::new(
        a.curves().clone(),
        eta,
        a.curves()
            .circles()
            .iter()
            .map(|&(p, q)| BraidWord::identity(q - p + 1))
            .collect(),
    )?;
    let a1 = a.conjugate_by(&xi)?;
    let m1 = mu(&a1);
    let a2 = a1.conjugate_by(&m1)?;
    let mb = mu(b);
    let b2 = b.conjugate_by(&mb)?;
    let mut fix = TubularDecomposition::identity(a.curves().clone());
    for orbit in a2.orbits().orbits {
        let last = *orbit.last().expect("nonempty");
        let (x, y) = (
            a2.interior_at(last).expect("circle"),
            b2.interior_at(last).expect("circle"),
        );
        let nu_j = if equals(x, y)? {
            BraidWord::identity(x.strands())
        } else {
            match conjugacy_test(x, y, budget)? {
                ConjugacyOutcome::Conjugate(c) => c.witness,
                ConjugacyOutcome::NotConjugate => return Ok(ConjugacyOutcome::NotConjugate),
                ConjugacyOutcome::Unknown => return Ok(ConjugacyOutcome::Unknown),
            }
        };
        for &u in &orbit {
            fix = fix.with_interior_at(u, nu_j.clone())?;
        }
    }
    let witness = xi
        .product(&m1)?
        .product(&fix)?
        .product(&mb.inverse())?
        .embed();
    let cert = ConjugacyCertificate::new(a.embed(), b.embed(), witness)?;
    debug_assert!(cert.verified, "regular-form certificate failed to verify");
    Ok(if cert.verified {
        ConjugacyOutcome::Conjugate(cert)
    } else {
        ConjugacyOutcome::Unknown
    })
}

/// Decides conjugacy of two regular forms over one curve system. The
/// certificate relates `embed(a.regular)` to `embed(b.regular)`.
pub fn regular_conjugacy_test(
    a: &RegularFormResult,
    b: &RegularFormResult,
    budget: usize,
) -> Result<ConjugacyOutcome> {
    let (da, db) = (&a.regular, &b.regular);
    if da.curves() != db.curves() {
        return Err(BraidError::CurveMismatch);
    }
    if da == db {
        let cert =
            ConjugacyCertificate::new(da.embed(), db.embed(), BraidWord::identity(da.strands()))?;
        return Ok(ConjugacyOutcome::Conjugate(cert));
    }
    let (la, lb) = match (block_labels(da, budget), block_labels(db, budget)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(BraidError::BudgetExceeded(_)), _) | (_, Err(BraidError::BudgetExceeded(_))) => {
            return Ok(ConjugacyOutcome::Unknown)
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let mut sa = la.clone();
    let mut sb = lb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(ConjugacyOutcome::NotConjugate);
    }
    let (ta, tb) = (da.tubular(), db.tubular());
    let search = match (is_periodic(ta)?, is_periodic(tb)?) {
        (true, true) => periodic_search(ta, tb, &la, &lb, budget)?,
        (false, false) => centralizer_search(ta, tb, &la, &lb, budget)?,
        _ => Search::Refuted,
    };
    match search {
        Search::Found(eta) => certify(da, db, eta, budget),
        Search::Refuted => Ok(ConjugacyOutcome::NotConjugate),
        Search::Unknown => Ok(ConjugacyOutcome::Unknown),
    }
}

impl fmt::Display for RegularFormResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.regular)?;
        for (i, k) in self.kappa.iter().enumerate() {
            write!(f, "\nkappa[{}]: {}", i + 1, k.format())?;
        }
        write!(f, "\nconjugator: {}", self.conjugator.format())
    }
}

impl FromStr for RegularFormResult {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let mut body = Vec::new();
        let mut kappa_text = Vec::new();
        let mut conj_text = None;
        for line in s.lines() {
            let t = line.trim();
            if let Some(rest) = t.strip_prefix("kappa[") {
                let (_, w) = rest
                    .split_once(':')
                    .ok_or_else(|| BraidError::Parse(format!("bad kappa line {t:?}")))?;
                kappa_text.push(w.to_string());
            } else if let Some(w) = t.strip_prefix("conjugator:") {
                conj_text = Some(w.to_string());
            } else {
                body.push(t);
            }
        }
        let regular: TubularDecomposition = body.join("\n").parse()?;
        let orbits = regular.orbits().orbits;
        if kappa_text.len() != orbits.len() {
            return Err(BraidError::Parse(format!(
                "{} kappa lines for {} orbits",
                kappa_text.len(),
                orbits.len()
            )));
        }
        let kappa = kappa_text
            .iter()
            .zip(&orbits)
            .map(|(w, o)| BraidWord::parse(w, regular.size_at(o[0])))
            .collect::<Result<Vec<_>>>()?;
        let conjugator = BraidWord::parse(conj_text.as_deref().unwrap_or(""), regular.strands())?;
        Ok(Self {
            regular,
            conjugator,
            kappa,
        })
    }
}
