//! Braid group algorithms on Artin words.
//!
//! The crate covers the word problem and conjugacy problem through Garside
//! normal forms and sliding circuits, classification of periodic braids,
//! curve systems with their lamination coordinates, tubular decompositions
//! of reducible braids together with their regular forms, and a harness
//! that checks that braids with equal `k`-th powers are conjugate.

pub mod curves;
pub mod error;
pub mod garside;
pub mod harness;
pub mod oracle;
pub mod periodic;
pub mod perm;
pub mod regular;
pub mod tubular;
pub mod word;

pub use curves::{CurveSystem, LaminationCoords};
pub use error::{BraidError, Result};
pub use garside::{
    conjugacy_test, equals, full_twist_power, normal_form, summit_form, ConjugacyCertificate,
    ConjugacyOutcome, NormalForm,
};
pub use harness::{
    brute_force_root, conjugacy_via_powers, generate_instance, run_trials, Family, RootOutcome,
    TrialConfig, TrialReport,
};
pub use periodic::{
    classify_periodic, is_periodic, standardize_periodic, PeriodicBase, PeriodicClass,
};
pub use perm::Permutation;
pub use regular::{RegularFormResult, SwapKind};
pub use tubular::{OrbitStructure, TubularDecomposition};
pub use word::{BraidWord, Letter, StandardKind};
