//! Exact symbolic computation with linear quantum addition rules.
//!
//! Polynomials in `q` over ℤ, ℚ or 𝔽_p (optionally nested once or twice),
//! rational functions over a field, the rules `[m+n]_q = u·[m]_q + v·[n]_q`
//! and their zero identities, the functional equations they induce, and a
//! prover that settles bounded-degree instances by exact linear algebra.

pub mod cli;
pub mod error;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod rules;
pub mod solve;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{q_derivative, quantum_integer, Degree, Poly};
pub use ratfunc::RatFunc;
pub use ring::{Elem, RingCtx, Scalar};
pub use rules::{
    rule_add_zero, rule_affine, rule_canonical, rule_classify, rule_expand, rule_sides,
    rule_verify, zero_identity, zero_verify, LinearRule, TabulatedRule, ZeroIdentity,
};
pub use verify::{Counterexample, VerifyReport};
