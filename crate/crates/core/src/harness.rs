//! Executable form of the root theorem: if `α^k = β^k` then `α` and `β` are
//! conjugate. Generates instances with equal powers, certifies conjugacy
//! through the same case split as the proof, and reports trials.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::CurveSystem;
use crate::error::{BraidError, Result};
use crate::garside::{conjugacy_test, equals, normal_form, ConjugacyCertificate, ConjugacyOutcome};
use crate::oracle::all_words;
use crate::periodic::{classify_periodic, is_periodic, standardize_periodic};
use crate::regular::{
    mu, orbit_product, orbit_swap_element, regular_conjugacy_test, to_regular_form, SwapKind,
};
use crate::tubular::{random_decomposition, TubularDecomposition};
use crate::word::{BraidWord, StandardKind};

pub const MAX_STRANDS: usize = 10;
pub const MAX_POWER: i64 = 6;
pub const MAX_CONJUGATOR: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootOutcome {
    Equal,
    CertifiedConjugate(ConjugacyCertificate),
    Unknown,
    /// `α^k ≠ β^k`; carries both normal forms.
    PreconditionFailed {
        alpha_k: String,
        beta_k: String,
    },
}

impl RootOutcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Equal => "Equal",
            Self::CertifiedConjugate(_) => "CertifiedConjugate",
            Self::Unknown => "Unknown",
            Self::PreconditionFailed { .. } => "PreconditionFailed",
        }
    }

    pub fn certificate(&self) -> Option<&ConjugacyCertificate> {
        match self {
            Self::CertifiedConjugate(c) => Some(c),
            _ => None,
        }
    }
}

/// Decompositions of `α` and `β` over one curve system.
pub type Hints = (TubularDecomposition, TubularDecomposition);

fn certified(
    alpha: &BraidWord,
    beta: &BraidWord,
    witness: BraidWord,
) -> Result<Option<RootOutcome>> {
    let cert = ConjugacyCertificate::new(alpha.clone(), beta.clone(), witness)?;
    Ok(cert
        .verified
        .then_some(RootOutcome::CertifiedConjugate(cert)))
}

/// Certifies that `α` and `β` are conjugate given `α^k = β^k`. Never
/// reports non-conjugacy: a refutation contradicts the theorem and is
/// returned as an error.
pub fn conjugacy_via_powers(
    alpha: &BraidWord,
    beta: &BraidWord,
    k: i64,
    hints: Option<&Hints>,
    budget: usize,
) -> Result<RootOutcome> {
    if k == 0 {
        return Err(BraidError::InvalidParams("k must be nonzero".into()));
    }
    let (ak, bk) = (alpha.power(k), beta.power(k));
    if !equals(&ak, &bk)? {
        return Ok(RootOutcome::PreconditionFailed {
            alpha_k: normal_form(&ak)?.format(),
            beta_k: normal_form(&bk)?.format(),
        });
    }
    if equals(alpha, beta)? {
        return Ok(RootOutcome::Equal);
    }
    if is_periodic(alpha)? && is_periodic(beta)? {
        if let Some(out) = periodic_case(alpha, beta, budget)? {
            return Ok(out);
        }
    } else if let Some(h) = hints {
        if let Some(out) = reducible_case(alpha, beta, k, h, budget)? {
            return Ok(out);
        }
    }
    match conjugacy_test(alpha, beta, budget)? {
        ConjugacyOutcome::Conjugate(cert) => Ok(RootOutcome::CertifiedConjugate(cert)),
        ConjugacyOutcome::Unknown => Ok(RootOutcome::Unknown),
        ConjugacyOutcome::NotConjugate => Err(BraidError::Contradiction(format!(
            "{alpha:?} and {beta:?} have equal {k}-th powers but are not conjugate"
        ))),
    }
}

/// Both conjugate to the same power of `δ` or `γ`.
fn periodic_case(
    alpha: &BraidWord,
    beta: &BraidWord,
    budget: usize,
) -> Result<Option<RootOutcome>> {
    let (ca, cb) = match (
        standardize_periodic(alpha, budget),
        standardize_periodic(beta, budget),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(BraidError::BudgetExceeded(_)), _) | (_, Err(BraidError::BudgetExceeded(_))) => {
            return Ok(None)
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    if classify_periodic(alpha)? != classify_periodic(beta)? {
        return Err(BraidError::Contradiction(format!(
            "periodic braids {alpha:?} and {beta:?} with equal powers fall in different classes"
        )));
    }
    certified(alpha, beta, ca.witness.multiply(&cb.witness.inverse())?)
}

fn reducible_case(
    alpha: &BraidWord,
    beta: &BraidWord,
    k: i64,
    (da, db): &Hints,
    budget: usize,
) -> Result<Option<RootOutcome>> {
    if da.curves() != db.curves() || !equals(&da.embed(), alpha)? || !equals(&db.embed(), beta)? {
        return Err(BraidError::InvalidParams(
            "hints do not decompose the given braids".into(),
        ));
    }
    if equals(da.tubular(), db.tubular())? {
        if let Some(out) = orbitwise(alpha, beta, k, da, db, budget)? {
            return Ok(Some(out));
        }
    }
    let (ra, rb) = match (to_regular_form(da, budget), to_regular_form(db, budget)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(BraidError::BudgetExceeded(_)), _) | (_, Err(BraidError::BudgetExceeded(_))) => {
            return Ok(None)
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    match regular_conjugacy_test(&ra, &rb, budget)? {
        ConjugacyOutcome::Conjugate(cert) => {
            let w = ra
                .conjugator
                .multiply(&cert.witness)?
                .multiply(&rb.conjugator.inverse())?;
            certified(alpha, beta, w)
        }
        // a refutation inside B_C leaves conjugators outside it to the
        // ambient search
        ConjugacyOutcome::NotConjugate | ConjugacyOutcome::Unknown => Ok(None),
    }
}

/// Equal tubular braids: every orbit's interior products have equal
/// `k/r`-th powers, so the interiors are handled by recursion on fewer
/// strands, then reassembled in the last tubes.
fn orbitwise(
    alpha: &BraidWord,
    beta: &BraidWord,
    k: i64,
    da: &TubularDecomposition,
    db: &TubularDecomposition,
    budget: usize,
) -> Result<Option<RootOutcome>> {
    let orbits = da.orbits().orbits;
    if orbits.iter().any(|o| k % o.len() as i64 != 0) {
        return Ok(None);
    }
    let (ma, mb) = (mu(da), mu(db));
    let mut fix = TubularDecomposition::identity(da.curves().clone());
    for orbit in &orbits {
        let p = k / orbit.len() as i64;
        let (xa, xb) = (orbit_product(da, orbit), orbit_product(db, orbit));
        let nu = match conjugacy_via_powers(&xa, &xb, p, None, budget)? {
            RootOutcome::Equal => BraidWord::identity(xa.strands()),
            RootOutcome::CertifiedConjugate(c) => c.witness,
            RootOutcome::Unknown => return Ok(None),
            RootOutcome::PreconditionFailed { .. } => {
                return Err(BraidError::Contradiction(format!(
                    "interior products {xa:?}, {xb:?} of braids with equal powers have unequal {p}-th powers"
                )))
            }
        };
        for &u in orbit {
            fix = fix.with_interior_at(u, nu.clone())?;
        }
    }
    let w = ma.product(&fix)?.product(&mb.inverse())?.embed();
    certified(alpha, beta, w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "F1-periodic-central")]
    PeriodicCentral,
    #[serde(rename = "F2-equal")]
    Equal,
    #[serde(rename = "F3-reducible-orbit-swap")]
    ReducibleOrbitSwap,
    #[serde(rename = "F4-negative")]
    Negative,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::PeriodicCentral,
        Family::Equal,
        Family::ReducibleOrbitSwap,
        Family::Negative,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::PeriodicCentral => "F1-periodic-central",
            Family::Equal => "F2-equal",
            Family::ReducibleOrbitSwap => "F3-reducible-orbit-swap",
            Family::Negative => "F4-negative",
        }
    }

    /// Whether `outcome` is what the theorem predicts for this family.
    pub fn expects(self, outcome: &RootOutcome) -> bool {
        match self {
            Family::Negative => matches!(outcome, RootOutcome::PreconditionFailed { .. }),
            _ => match outcome {
                RootOutcome::Equal => true,
                RootOutcome::CertifiedConjugate(c) => c.verified,
                _ => false,
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase();
        Family::ALL
            .into_iter()
            .find(|f| {
                let tag = f.tag().to_ascii_uppercase();
                key == tag || key == tag[..2]
            })
            .ok_or_else(|| BraidError::Parse(format!("unknown family {s:?}")))
    }
}

/// Size bounds for generated instances. Unset fields are drawn at random.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub n: Option<usize>,
    pub k: Option<i64>,
    /// Exponent of `δ`/`γ` for the periodic family.
    pub t: Option<i64>,
    pub max_n: usize,
    pub conjugator_len: usize,
    pub word_len: usize,
}

impl Default for InstanceParams {
    fn default() -> Self {
        Self {
            n: None,
            k: None,
            t: None,
            max_n: 7,
            conjugator_len: 12,
            word_len: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub alpha: BraidWord,
    pub beta: BraidWord,
    pub k: i64,
    pub hints: Option<Hints>,
}

fn check_params(p: &InstanceParams) -> Result<()> {
    let bad = |why: String| Err(BraidError::InvalidParams(why));
    if p.max_n > MAX_STRANDS || p.n.is_some_and(|n| !(2..=MAX_STRANDS).contains(&n)) {
        return bad(format!("strand counts are limited to 2..={MAX_STRANDS}"));
    }
    if p.k.is_some_and(|k| k == 0 || k.abs() > MAX_POWER) {
        return bad(format!("k must be nonzero with |k| ≤ {MAX_POWER}"));
    }
    if p.conjugator_len > MAX_CONJUGATOR {
        return bad(format!(
            "conjugators are limited to {MAX_CONJUGATOR} letters"
        ));
    }
    Ok(())
}

fn random_k(rng: &mut ChaCha8Rng) -> i64 {
    let k = rng.gen_range(1..=MAX_POWER);
    if rng.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn generate_instance(family: Family, params: &InstanceParams, seed: u64) -> Result<Instance> {
    check_params(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params
        .n
        .unwrap_or_else(|| rng.gen_range(3..=params.max_n.max(3)));
    match family {
        Family::PeriodicCentral => periodic_instance(&mut rng, params, n),
        Family::Equal => {
            let w = BraidWord::random(&mut rng, n, params.word_len);
            let k = params.k.unwrap_or_else(|| random_k(&mut rng));
            Ok(Instance {
                alpha: w.clone(),
                beta: w,
                k,
                hints: None,
            })
        }
        Family::ReducibleOrbitSwap => orbit_swap_instance(&mut rng, params),
        Family::Negative => negative_instance(&mut rng, params, n),
    }
}

/// Conjugates of `δ^t` or `γ^t` whose `k`-th power is central.
fn periodic_instance(rng: &mut ChaCha8Rng, p: &InstanceParams, n: usize) -> Result<Instance> {
    let feasible = |kind: StandardKind, t: i64, k: i64| {
        let period = if kind == StandardKind::Delta {
            n as i64
        } else {
            n as i64 - 1
        };
        (t * k) % period == 0
    };
    let (kind, t, k) = match (p.t, p.k) {
        (Some(t), Some(k)) => {
            let kind = if feasible(StandardKind::Delta, t, k) {
                StandardKind::Delta
            } else if feasible(StandardKind::Gamma, t, k) {
                StandardKind::Gamma
            } else {
                return Err(BraidError::InvalidParams(format!(
                    "neither δ^{t} nor γ^{t} has a central {k}-th power in B_{n}"
                )));
            };
            (kind, t, k)
        }
        _ => loop {
            let kind = if rng.gen_bool(0.5) {
                StandardKind::Delta
            } else {
                StandardKind::Gamma
            };
            let t = p.t.unwrap_or_else(|| {
                let t = rng.gen_range(1..=6);
                if rng.gen_bool(0.5) {
                    t
                } else {
                    -t
                }
            });
            let period = if kind == StandardKind::Delta {
                n as i64
            } else {
                n as i64 - 1
            };
            let step = period / gcd(period, t);
            let k = match p.k {
                Some(k) => k,
                None if step <= MAX_POWER => {
                    let k = step * rng.gen_range(1..=MAX_POWER / step);
                    if rng.gen_bool(0.5) {
                        k
                    } else {
                        -k
                    }
                }
                None => continue,
            };
            if feasible(kind, t, k) {
                break (kind, t, k);
            }
        },
    };
    let x = BraidWord::standard(kind, n)?.power(t);
    let eta = BraidWord::random(rng, n, p.conjugator_len);
    let xi = BraidWord::random(rng, n, p.conjugator_len);
    Ok(Instance {
        alpha: x.conjugate_by(&eta)?,
        beta: x.conjugate_by(&xi)?,
        k,
        hints: None,
    })
}

/// Shapes `(kind, m, s, block size)` whose standard power has two orbits
/// that a swap element can exchange, with `m · size ≤ 10`.
const SWAP_SHAPES: &[(SwapKind, usize, i64, usize)] = &[
    (SwapKind::Delta, 4, 2, 2),
    (SwapKind::Delta, 4, -2, 2),
    (SwapKind::Delta, 4, 6, 2),
    (SwapKind::Delta, 2, 2, 3),
    (SwapKind::Delta, 3, 3, 3),
    (SwapKind::Delta, 2, 2, 5),
    (SwapKind::Gamma, 5, 2, 2),
    (SwapKind::Gamma, 5, -2, 2),
    (SwapKind::Gamma, 5, 6, 2),
    (SwapKind::Gamma, 3, 2, 3),
];

/// Orbit length and the step `k` must be a multiple of. Singleton orbits
/// carry periodic interiors, so `k` must also kill their period.
fn swap_shape_step(kind: SwapKind, m: usize, s: i64, size: usize) -> (usize, usize, i64) {
    let points = if kind == SwapKind::Delta { m } else { m - 1 };
    let t = gcd(s, points as i64) as usize;
    let r = points / t;
    (t, r, if r == 1 { size as i64 } else { r as i64 })
}

/// `α` with tubular `δ^s` (or `γ^s`) and one nontrivial interior per orbit;
/// `β = x⁻¹αx` for the lift `x` of a swap element. The two swapped orbits
/// carry interiors with equal `k`-th powers: the same word at independent
/// positions for long orbits, conjugate periodic words for singletons.
/// Both braids are then conjugated by a random element of `B_C`.
fn orbit_swap_instance(rng: &mut ChaCha8Rng, p: &InstanceParams) -> Result<Instance> {
    let shapes: Vec<_> = SWAP_SHAPES
        .iter()
        .filter(|s| match p.n {
            Some(n) => s.1 * s.3 == n,
            None => s.1 * s.3 <= p.max_n.max(4),
        })
        .filter(|s| {
            let step = swap_shape_step(s.0, s.1, s.2, s.3).2;
            p.k.map_or(step <= MAX_POWER, |k| k % step == 0)
        })
        .copied()
        .collect();
    if shapes.is_empty() {
        return Err(BraidError::InvalidParams(
            "no orbit-swap shape fits the strand count and power".into(),
        ));
    }
    let word_len = p.word_len.clamp(1, 6);
    for _ in 0..64 {
        let (kind, m, s, size) = shapes[rng.gen_range(0..shapes.len())];
        let (t, r, step) = swap_shape_step(kind, m, s, size);
        let n = m * size;
        let intervals: Vec<(usize, usize)> =
            (0..m).map(|b| (b * size + 1, b * size + size)).collect();
        let curves = CurveSystem::new(n, &intervals)?;
        let base = match kind {
            SwapKind::Delta => BraidWord::standard(StandardKind::Delta, m)?,
            SwapKind::Gamma => BraidWord::standard(StandardKind::Gamma, m)?,
        }
        .power(s);
        let lo = if kind == SwapKind::Delta { 1 } else { 2 };
        let total = if kind == SwapKind::Delta { t } else { t + 1 };
        let i = rng.gen_range(lo..total);
        let swap = orbit_swap_element(kind, s, r, i, m)?;
        let k = p.k.unwrap_or_else(|| {
            let q = rng.gen_range(1..=MAX_POWER / step) * step;
            if rng.gen_bool(0.5) {
                q
            } else {
                -q
            }
        });
        let mut d =
            TubularDecomposition::new(curves.clone(), base, vec![BraidWord::identity(size); m])?;
        let orbits = d.orbits().orbits;
        // orbit labels follow the swap element numbering, shifted to 0-based
        let label = |q: usize| match kind {
            SwapKind::Delta => (q - 1) % t,
            SwapKind::Gamma if q == 1 => 0,
            SwapKind::Gamma => (q - 2) % t + 1,
        };
        let shared = if r == 1 {
            BraidWord::standard(StandardKind::Delta, size)?
        } else {
            BraidWord::random(rng, size, word_len)
        };
        for orbit in &orbits {
            let which = label(orbit[0]);
            let y = if which == i - 1 {
                shared.clone()
            } else if which == i && r == 1 {
                shared.conjugate_by(&BraidWord::random(rng, size, word_len))?
            } else if which == i {
                shared.clone()
            } else {
                BraidWord::random(rng, size, word_len)
            };
            let u = orbit[rng.gen_range(0..orbit.len())];
            d = d.with_interior_at(u, y)?;
        }
        let x =
            TubularDecomposition::new(curves.clone(), swap, vec![BraidWord::identity(size); m])?;
        let e = d.conjugate_by(&x)?;
        let z = random_decomposition(rng, &curves, p.conjugator_len.min(4), 2);
        let (da, db) = (d.conjugate_by(&z)?, e.conjugate_by(&z)?);
        let (alpha, beta) = (da.embed(), db.embed());
        if equals(&alpha, &beta)? || !equals(&alpha.power(k), &beta.power(k))? {
            continue;
        }
        return Ok(Instance {
            alpha,
            beta,
            k,
            hints: Some((da, db)),
        });
    }
    Err(BraidError::InvalidParams(
        "could not build a nontrivial orbit-swap instance".into(),
    ))
}

/// Pairs whose `k`-th powers differ: either the exponent sums differ, or the
/// braids are certified non-conjugate.
fn negative_instance(rng: &mut ChaCha8Rng, p: &InstanceParams, n: usize) -> Result<Instance> {
    let k = p.k.unwrap_or_else(|| random_k(rng));
    let alpha = BraidWord::random(rng, n, p.word_len.max(1));
    if rng.gen_bool(0.5) {
        for _ in 0..16 {
            let beta = BraidWord::random(rng, n, p.word_len.max(1));
            if beta.exponent_sum() == alpha.exponent_sum()
                && conjugacy_test(&alpha, &beta, 10_000)? == ConjugacyOutcome::NotConjugate
            {
                return Ok(Instance {
                    alpha,
                    beta,
                    k,
                    hints: None,
                });
            }
        }
    }
    let g = BraidWord::generator(n, rng.gen_range(1..n), rng.gen_bool(0.5))?;
    let beta = alpha.multiply(&g)?;
    Ok(Instance {
        alpha,
        beta,
        k,
        hints: None,
    })
}

/// All words with at most `max_letters` letters whose `k`-th power is `ρ`,
/// one per element.
pub fn brute_force_root(rho: &BraidWord, k: i64, max_letters: usize) -> Result<Vec<BraidWord>> {
    if k == 0 {
        return Err(BraidError::InvalidParams("k must be nonzero".into()));
    }
    let target = normal_form(rho)?;
    let s = rho.exponent_sum();
    if s % k != 0 {
        return Ok(Vec::new());
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for w in all_words(rho.strands(), max_letters) {
        if w.exponent_sum() * k != s {
            continue;
        }
        let nf = normal_form(&w)?;
        if seen.contains(&nf) {
            continue;
        }
        if normal_form(&w.power(k))? == target {
            seen.insert(nf);
            out.push(w);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub families: Vec<Family>,
    pub trials: usize,
    pub seed: u64,
    pub budget: usize,
    pub params: InstanceParams,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            families: vec![
                Family::PeriodicCentral,
                Family::Equal,
                Family::ReducibleOrbitSwap,
            ],
            trials: 30,
            seed: 42,
            budget: 10_000,
            params: InstanceParams::default(),
        }
    }
}

/// One line of the trial report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub family: Family,
    pub seed: String,
    pub n: usize,
    pub k: i64,
    pub alpha: String,
    pub beta: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub millis: u64,
    /// Whether the outcome is the one predicted for the family.
    pub expected: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub equal: usize,
    pub certified_conjugate: usize,
    pub unknown: usize,
    pub precondition_failed: usize,
    pub errors: usize,
    pub unexpected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRun {
    pub reports: Vec<TrialReport>,
    pub summary: TrialSummary,
}

impl TrialRun {
    /// JSON lines followed by a summary footer object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("serializable"));
            out.push('\n');
        }
        let footer = serde_json::json!({ "summary": self.summary });
        out.push_str(&footer.to_string());
        out.push('\n');
        out
    }
}

/// Seed for trial `i`, derived from the master seed.
pub fn trial_seed(master: u64, i: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(i as u64);
    rng.gen()
}

pub fn run_trial(i: usize, family: Family, seed: u64, config: &TrialConfig) -> TrialReport {
    let start = Instant::now();
    let mut report = TrialReport {
        trial: i,
        family,
        seed: format!("{seed:#018x}"),
        n: 0,
        k: 0,
        alpha: String::new(),
        beta: String::new(),
        outcome: "Error".into(),
        witness: None,
        error: None,
        millis: 0,
        expected: false,
    };
    let result = generate_instance(family, &config.params, seed).and_then(|inst| {
        report.n = inst.alpha.strands();
        report.k = inst.k;
        report.alpha = inst.alpha.format();
        report.beta = inst.beta.format();
        conjugacy_via_powers(
            &inst.alpha,
            &inst.beta,
            inst.k,
            inst.hints.as_ref(),
            config.budget,
        )
    });
    match result {
        Ok(outcome) => {
            report.outcome = outcome.tag().into();
            report.witness = outcome.certificate().map(|c| c.witness.format());
            report.expected = family.expects(&outcome);
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report.millis = start.elapsed().as_millis() as u64;
    report
}

/// Runs `config.trials` trials, cycling through the families, in parallel;
/// the result is independent of scheduling.
pub fn run_trials(config: &TrialConfig) -> Result<TrialRun> {
    if config.families.is_empty() {
        return Err(BraidError::InvalidParams("no families selected".into()));
    }
    check_params(&config.params)?;
    let mut reports: Vec<TrialReport> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let family = config.families[i % config.families.len()];
            run_trial(i, family, trial_seed(config.seed, i), config)
        })
        .collect();
    reports.sort_by_key(|r| r.trial);
    let mut summary = TrialSummary {
        trials: reports.len(),
        ..Default::default()
    };
    for r in &reports {
        match r.outcome.as_str() {
            "Equal" => summary.equal += 1,
            "CertifiedConjugate" => summary.certified_conjugate += 1,
            "Unknown" => summary.unknown += 1,
            "PreconditionFailed" => summary.precondition_failed += 1,
            _ => summary.errors += 1,
        }
        if !r.expected {
            summary.unexpected += 1;
        }
    }
    Ok(TrialRun { reports, summary })
}

#[cfg(test)]
mod tests;
