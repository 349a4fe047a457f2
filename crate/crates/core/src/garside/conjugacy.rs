use serde::{Deserialize, Serialize};

use crate::error::{BraidError, Result};
use crate::garside::equals;
use crate::garside::normal_form::NormalForm;
use crate::garside::summit::{sliding_summit, Summit, SummitSet, Visit};
use crate::word::BraidWord;

/// A witness `ξ` for the claim `ξ⁻¹ α ξ = β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyCertificate {
    pub alpha: BraidWord,
    pub beta: BraidWord,
    pub witness: BraidWord,
    pub verified: bool,
}

/// JSON shape of a certificate; words use the `s<i>^<e>` grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: usize,
    pub alpha: String,
    pub beta: String,
    pub witness: String,
    pub verified: bool,
}

impl ConjugacyCertificate {
    /// Builds a certificate and checks it with the word problem solution.
    pub fn new(alpha: BraidWord, beta: BraidWord, witness: BraidWord) -> Result<Self> {
        let verified = check(&alpha, &beta, &witness)?;
        Ok(Self {
            alpha,
            beta,
            witness,
            verified,
        })
    }

    /// Re-runs the check from scratch.
    pub fn verify(&self) -> Result<bool> {
        check(&self.alpha, &self.beta, &self.witness)
    }

    /// `ξ⁻¹αξ = β` and `ζ⁻¹βζ = γ` give `(ξζ)⁻¹αξζ = γ`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        Self::new(
            self.alpha.clone(),
            next.beta.clone(),
            self.witness.multiply(&next.witness)?,
        )
    }

    /// The certificate for `β ~ α`.
    pub fn reversed(&self) -> Result<Self> {
        Self::new(
            self.beta.clone(),
            self.alpha.clone(),
            self.witness.inverse(),
        )
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            n: self.alpha.strands(),
            alpha: self.alpha.format(),
            beta: self.beta.format(),
            witness: self.witness.format(),
            verified: self.verified,
        }
    }

    pub fn from_json(j: &CertificateJson) -> Result<Self> {
        Self::new(
            BraidWord::parse(&j.alpha, j.n)?,
            BraidWord::parse(&j.beta, j.n)?,
            BraidWord::parse(&j.witness, j.n)?,
        )
    }
}

fn check(alpha: &BraidWord, beta: &BraidWord, witness: &BraidWord) -> Result<bool> {
    equals(&alpha.conjugate_by(witness)?, beta)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyOutcome {
    Conjugate(ConjugacyCertificate),
    NotConjugate,
    Unknown,
}

impl ConjugacyOutcome {
    pub fn certificate(&self) -> Option<&ConjugacyCertificate> {
        match self {
            ConjugacyOutcome::Conjugate(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_conjugate(&self) -> bool {
        matches!(self, ConjugacyOutcome::Conjugate(_))
    }
}

/// Decides conjugacy by comparing sets of sliding circuits. `budget` caps the number
/// of summit elements explored; exceeding it yields `Unknown`.
pub fn conjugacy_test(a: &BraidWord, b: &BraidWord, budget: usize) -> Result<ConjugacyOutcome> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch {
            left: a.strands(),
            right: b.strands(),
        });
    }
    if a.exponent_sum() != b.exponent_sum() {
        return Ok(ConjugacyOutcome::NotConjugate);
    }
    let (sa, ca) = sliding_summit(&NormalForm::of_word(a)?);
    let (sb, cb) = sliding_summit(&NormalForm::of_word(b)?);
    if sa.inf() != sb.inf() || sa.sup() != sb.sup() {
        return Ok(ConjugacyOutcome::NotConjugate);
    }
    let mut hit = None;
    let explored = SummitSet::explore(sa, Summit::Sliding, budget, false, |i, x| {
        if *x == sb {
            hit = Some(i);
            Visit::Stop
        } else {
            Visit::Continue
        }
    });
    let set = match explored {
        Ok(set) => set,
        Err(BraidError::BudgetExceeded(_)) => return Ok(ConjugacyOutcome::Unknown),
        Err(e) => return Err(e),
    };
    match hit {
        Some(i) => {
            let witness = ca.multiply(&set.path_to(i))?.multiply(&cb.inverse())?;
            let cert = ConjugacyCertificate::new(a.clone(), b.clone(), witness)?;
            debug_assert!(cert.verified);
            Ok(ConjugacyOutcome::Conjugate(cert))
        }
        None => Ok(ConjugacyOutcome::NotConjugate),
    }
}

/// The least element of the set of sliding circuits of `w` in the normal-form order,
/// with a conjugator `c` such that `c⁻¹ w c` equals it. Two braids are
/// conjugate iff their representatives coincide.
pub fn canonical_representative(w: &BraidWord, budget: usize) -> Result<(NormalForm, BraidWord)> {
    let (root, c0) = sliding_summit(&NormalForm::of_word(w)?);
    let set = SummitSet::explore(root, Summit::Sliding, budget, false, |_, _| Visit::Continue)?;
    let (best, _) = set
        .elements()
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .expect("summit set is nonempty");
    let conj = c0.multiply(&set.path_to(best))?;
    Ok((set.elements()[best].clone(), conj))
}
