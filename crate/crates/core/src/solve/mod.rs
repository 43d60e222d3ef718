//! Functional equations attached to the rules, and the bounded-degree prover.

pub mod linear;
pub mod linsolve;
pub mod mult;
pub mod prove;
pub mod quad;

pub use linear::{fe_linear_recover, fe_linear_solution, fe_linear_verify};
pub use linsolve::{linsolve_exact, rank, LinearSolution, Matrix};
pub use mult::{
    cyclotomic, mult_family, mult_rule_apply, mult_verify, MultFamilySpec, MultOperand,
};
pub use prove::{
    prove_bounded, EquationLabel, Index, ProofOutcome, ProofReport, RuleForm, SequencePair,
};
pub use quad::{quad_closed_form, quad_rule_apply, quad_sequence, QuadraticRule};
