//! Exact calculators for the RO(C2)-graded coefficients of Real K-theory and
//! the homotopy groups of spaces of commuting unitary and orthogonal
//! matrices, together with a numerical joint-eigenspace decomposition of
//! commuting unitary tuples.

pub mod algebra;
pub mod bcom;
pub mod error;
pub mod expr;
pub mod fi;
pub mod grading;
pub mod homotopy;
pub mod hz;
pub mod kr;
pub mod spectral;

pub use algebra::{Basis, Element};
pub use bcom::{BcomElement, BcomMonomial, KuElement, KuMonomial};
pub use error::{CalcError, GradingError, RingError, SpectralError};
pub use fi::{fi_decomposition, is_rep_stable, FIDecomposition, StabilityVerdict, Summand};
pub use grading::{direct_sum, shift, with_multiplicity, FinAbGroup, GradedAbGroup, RODegree};
pub use hz::{HZElement, HZMonomial};
pub use kr::{KRElement, KRMonomial};
pub use homotopy::{ak_formula, ak_oracle, pi, pi_via_coefficients, table, AkModule, SpaceFamily, TableFormat};
pub use spectral::{check_commuting, component_invariant, decompose, real_form, realize, random_commuting, CommutingTuple, LabeledConfig, Tolerances};
