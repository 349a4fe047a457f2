//! Garside theory for `B_n`: left normal forms, the word problem, and
//! conjugacy via summit sets and sliding circuits.

mod conjugacy;
mod normal_form;
mod simple;
mod summit;

pub use conjugacy::{
    canonical_representative, conjugacy_test, CertificateJson, ConjugacyCertificate,
    ConjugacyOutcome,
};
pub use normal_form::NormalForm;
pub use simple::{SimpleBraid, MAX_STRANDS};
pub use summit::{
    centralizer_generators, cycle, decycle, slide, sliding_circuits, sliding_summit, summit,
    super_summit_set, ultra_summit, ultra_summit_set, SummitSet,
};

use crate::error::{BraidError, Result};
use crate::word::BraidWord;

pub fn normal_form(w: &BraidWord) -> Result<NormalForm> {
    NormalForm::of_word(w)
}

/// Word problem: do `a` and `b` represent the same element?
pub fn equals(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    if a.strands() != b.strands() {
        return Err(BraidError::StrandMismatch {
            left: a.strands(),
            right: b.strands(),
        });
    }
    if a == b {
        return Ok(true);
    }
    if a.exponent_sum() != b.exponent_sum() {
        return Ok(false);
    }
    Ok(NormalForm::of_word(a)? == NormalForm::of_word(b)?)
}

pub fn is_identity(w: &BraidWord) -> Result<bool> {
    Ok(w.is_empty() || NormalForm::of_word(w)? == NormalForm::identity(w.strands()))
}

/// `Some(m)` iff `w = Δ^{2m}`.
pub fn full_twist_power(w: &BraidWord) -> Result<Option<i64>> {
    let nf = NormalForm::of_word(w)?;
    Ok((nf.is_delta_power() && nf.inf() % 2 == 0).then(|| nf.inf() / 2))
}

/// Summit form with conjugator: `c⁻¹ w c` is the returned normal form.
pub fn summit_form(w: &BraidWord) -> Result<(NormalForm, BraidWord)> {
    Ok(summit(&NormalForm::of_word(w)?))
}

#[cfg(test)]
mod tests;
