//! Periodic braids: roots of powers of `Δ²`. Every such braid is conjugate
//! to a power of `δ` or of `γ`, and the exponent sum tells which.

use serde::{Deserialize, Serialize};

use crate::error::{BraidError, Result};
use crate::garside::{conjugacy_test, full_twist_power, ConjugacyCertificate, ConjugacyOutcome};
use crate::word::{BraidWord, StandardKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodicBase {
    Delta,
    Gamma,
    /// `Δ^{2t}`, equal to both `δ^{nt}` and `γ^{(n-1)t}`.
    Central,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicClass {
    pub base: PeriodicBase,
    pub t: i64,
    pub n: usize,
}

impl PeriodicClass {
    /// The standard representative: `δ^t`, `γ^t` or `Δ^{2t}`.
    pub fn representative(&self) -> Result<BraidWord> {
        Ok(match self.base {
            PeriodicBase::Delta => BraidWord::standard(StandardKind::Delta, self.n)?.power(self.t),
            PeriodicBase::Gamma => BraidWord::standard(StandardKind::Gamma, self.n)?.power(self.t),
            PeriodicBase::Central => {
                BraidWord::standard(StandardKind::HalfTwist, self.n)?.power(2 * self.t)
            }
        })
    }
}

pub fn is_periodic(w: &BraidWord) -> Result<bool> {
    let n = w.strands() as i64;
    Ok(full_twist_power(&w.power(n))?.is_some() || full_twist_power(&w.power(n - 1))?.is_some())
}

pub fn classify_periodic(w: &BraidWord) -> Result<PeriodicClass> {
    if !is_periodic(w)? {
        return Err(BraidError::NotPeriodic);
    }
    let n = w.strands();
    let s = w.exponent_sum();
    let (ni, ni1) = (n as i64, n as i64 - 1);
    let (base, t) = if s % (ni * ni1) == 0 {
        (PeriodicBase::Central, s / (ni * ni1))
    } else if s % ni1 == 0 {
        (PeriodicBase::Delta, s / ni1)
    } else if s % ni == 0 {
        (PeriodicBase::Gamma, s / ni)
    } else {
        // a periodic braid always falls in one of the cases above
        return Err(BraidError::NotPeriodic);
    };
    Ok(PeriodicClass { base, t, n })
}

/// A verified certificate conjugating `w` onto its standard representative.
pub fn standardize_periodic(w: &BraidWord, budget: usize) -> Result<ConjugacyCertificate> {
    let class = classify_periodic(w)?;
    let target = class.representative()?;
    if class.base == PeriodicBase::Central {
        return ConjugacyCertificate::new(w.clone(), target, BraidWord::identity(w.strands()));
    }
    match conjugacy_test(w, &target, budget)? {
        ConjugacyOutcome::Conjugate(cert) => Ok(cert),
        ConjugacyOutcome::Unknown => Err(BraidError::BudgetExceeded(budget)),
        // contradicts the classification of periodic braids
        ConjugacyOutcome::NotConjugate => {
            unreachable!("periodic braid {w:?} not conjugate to {target:?}")
        }
    }
}
