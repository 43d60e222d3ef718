//! Canonical text form of polynomials and rational functions.
//!
//! Terms are printed in ascending powers, `c0 + c1*q + c2*q^2 + ...`, with
//! zero terms dropped and unit coefficients elided in front of the
//! variable. Over 𝔽_p coefficients print as residues in `[0, p)`.

use num_traits::{One, Signed};

use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::ring::{Elem, RingCtx};

const VARIABLES: [&str; 3] = ["q", "x", "y"];

/// Name of the variable of a polynomial over `ctx`: `q` over a base ring,
/// `x` over `R[q]`, `y` over `R[q][x]`.
pub fn variable_name(ctx: &RingCtx) -> &'static str {
    VARIABLES[ctx.nesting().min(VARIABLES.len() - 1)]
}

struct CoeffText {
    negative: bool,
    magnitude: String,
    unit: bool,
}

fn coeff_text(c: &Elem) -> CoeffText {
    match c {
        Elem::Int(v) => CoeffText {
            negative: v.is_negative(),
            magnitude: v.abs().to_string(),
            unit: v.abs().is_one(),
        },
        Elem::Rat(v) => CoeffText {
            negative: v.is_negative(),
            magnitude: v.abs().to_string(),
            unit: v.abs().is_one(),
        },
        Elem::Mod(v) => CoeffText {
            negative: false,
            magnitude: v.to_string(),
            unit: *v == 1,
        },
        Elem::Poly(p) => {
            if p.is_constant() && !p.is_zero() {
                coeff_text(&p.coeffs()[0])
            } else {
                CoeffText {
                    negative: false,
                    magnitude: format!("({})", format_poly(p)),
                    unit: false,
                }
            }
        }
    }
}

pub fn format_poly(f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let ctx = f.ctx();
    let var = variable_name(ctx);
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if ctx.is_zero(c) {
            continue;
        }
        let text = coeff_text(c);
        let monomial = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            text.magnitude
        } else if text.unit {
            monomial
        } else {
            format!("{}*{monomial}", text.magnitude)
        };
        match (out.is_empty(), text.negative) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&term);
    }
    out
}

/// `num` when the denominator is 1, otherwise `(num)/(den)`.
pub fn format_ratfunc(a: &RatFunc) -> String {
    if a.den().is_one() {
        format_poly(a.num())
    } else {
        format!("({})/({})", format_poly(a.num()), format_poly(a.den()))
    }
}
