//! Exact computations for finite quotients `A/G` of products of elliptic curves.
//!
//! Everything is rational or integral; no floating point is used. The lattice
//! of `A` is `ℤ^{2n}` and points of `A` are vectors in `ℝ^{2n}/ℤ^{2n}`.

pub mod classify;
pub mod cyclotomic;
pub mod decompose;
pub mod error;
pub mod gallery;
pub mod group;
pub mod linalg;
pub mod variety;

pub use classify::{
    classification_report, irregularity, is_quasietale, kappa_anticanonical, ramification_data,
    reid_tai, ClassificationReport, DerivedFlag, RamificationData, ReidTaiWitness, TriState,
};
pub use cyclotomic::{eigen_multiplicity, CycloField, CycloMatrix, CycloNumber};
pub use decompose::{
    decompose, decompose_action, invariant_fixed_torus, quasietale_outside, ramification_subgroup,
    split_action, DecompositionResult, SplitAction, StageCertificate, SublatticeAction,
};
pub use error::{Error, Result};
pub use group::{
    age, close_group, descend_multiplication, fixed_locus, normalize_translations,
    pointwise_stabilizer, AffineAutomorphism, AffineMap, FiniteGroupAction, FixedLocus,
    LatticeGroup, DEFAULT_GROUP_CAP,
};
pub use linalg::{
    intersect_lattices, saturate, snf, solve_affine_mod_lattice, AffineSolutionSet, IntMatrix,
    Lattice, RatMatrix, Snf, TorsionPoint,
};
pub use variety::{
    analytic_rep, connected_intersection, is_abelian_subvariety, kappa_divisor,
    poincare_complement, q_linear_equivalent, rational_rep, AbelianVarietyModel, EllipticFactor,
    EndoBlockMatrix, SubtorusTranslate, TorusModel,
};
