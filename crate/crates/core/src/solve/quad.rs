//! Two quadratic addition rules satisfied by the quantum integers,
//!
//! ```text
//! subtractive: f_m ⊕ f_n = f_m + f_n − (1−q) f_m f_n
//! weighted:    f_m ⊕ f_n = q^n f_m + q^m f_n + (1−q) f_m f_n
//! ```
//!
//! and the closed forms of the sequences they generate from `f_1`:
//!
//! ```text
//! subtractive: f_n = (1 − (1 + (q−1) f_1)^n) / (1 − q)
//! weighted:    f_n = ((q + (1−q) f_1)^n − q^n) / (1 − q)
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::RingCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadraticRule {
    /// Variant 1: `f_m + f_n − (1−q) f_m f_n`.
    Subtractive,
    /// Variant 2: `q^n f_m + q^m f_n + (1−q) f_m f_n`.
    Weighted,
}

impl QuadraticRule {
    pub fn from_id(id: u8) -> Result<QuadraticRule> {
        match id {
            1 => Ok(QuadraticRule::Subtractive),
            2 => Ok(QuadraticRule::Weighted),
            _ => Err(Error::InvalidArgument(format!(
                "quadratic rule variant must be 1 or 2, got {id}"
            ))),
        }
    }

    pub fn id(self) -> u8 {
        match self {
            QuadraticRule::Subtractive => 1,
            QuadraticRule::Weighted => 2,
        }
    }
}

impl FromStr for QuadraticRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let id = s
            .trim()
            .parse::<u8>()
            .map_err(|_| Error::InvalidArgument(format!("unknown variant '{s}'")))?;
        QuadraticRule::from_id(id)
    }
}

impl fmt::Display for QuadraticRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadraticRule::Subtractive => write!(f, "f_m + f_n - (1 - q)*f_m*f_n"),
            QuadraticRule::Weighted => write!(f, "q^n*f_m + q^m*f_n + (1 - q)*f_m*f_n"),
        }
    }
}

fn one_minus_q(ctx: &RingCtx) -> Poly {
    Poly::from_i64s(ctx, &[1, -1])
}

pub fn quad_rule_apply(
    rule: QuadraticRule,
    fm: &Poly,
    fn_: &Poly,
    m: usize,
    n: usize,
) -> Result<Poly> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let ctx = fm.ctx();
    let product = one_minus_q(ctx).checked_mul(&fm.checked_mul(fn_)?)?;
    Ok(match rule {
        QuadraticRule::Subtractive => &(fm + fn_) - &product,
        QuadraticRule::Weighted => &(&fm.shift(n) + &fn_.shift(m)) + &product,
    })
}

/// `Σ_{k=0}^{n} C(n,k) a^k b^{n−k}`, expanded term by term.
fn binomial_expansion(a: &Poly, b: &Poly, n: usize) -> Poly {
    let ctx = a.ctx();
    let mut binom = BigInt::from(1);
    let mut a_pow = Poly::one(ctx);
    let b_pows: Vec<Poly> = std::iter::successors(Some(Poly::one(ctx)), |p| Some(p * b))
        .take(n + 1)
        .collect();
    let mut acc = Poly::zero(ctx);
    for k in 0..=n {
        let term = (&a_pow * &b_pows[n - k]).scale_elem(&ctx.from_bigint(&binom));
        acc = &acc + &term;
        a_pow = &a_pow * a;
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    acc
}

/// The closed form of `f_n`, divided by `1 − q` with the remainder checked
/// to be zero.
pub fn quad_closed_form(rule: QuadraticRule, f1: &Poly, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let ctx = f1.ctx();
    let numerator = match rule {
        QuadraticRule::Subtractive => {
            // 1 − (1 + (q−1) f_1)^n
            let a = &(-one_minus_q(ctx)) * f1;
            &Poly::one(ctx) - &binomial_expansion(&a, &Poly::one(ctx), n)
        }
        QuadraticRule::Weighted => {
            // (q + (1−q) f_1)^n − q^n
            let a = &one_minus_q(ctx) * f1;
            &binomial_expansion(&a, &Poly::q_pow(ctx, 1), n) - &Poly::q_pow(ctx, n)
        }
    };
    numerator.div_exact(&one_minus_q(ctx))
}

/// `f_1, ..., f_N` generated by the rule from `f_1` via `f_{n+1} = f_n ⊕ f_1`.
pub fn quad_sequence(rule: QuadraticRule, f1: &Poly, count: usize) -> Result<Vec<Poly>> {
    let mut seq = vec![f1.clone()];
    for n in 1..count {
        let next = quad_rule_apply(rule, &seq[n - 1], f1, n, 1)?;
        seq.push(next);
    }
    Ok(seq)
}
