//! Solutions of the linear functional equation
//! `f_{m+n} = u_n f_m + v_m f_n` attached to a quantum addition rule.
//! They are exactly the sequences `f_n = h·[n]_q`.

use crate::error::{Error, Result};
use crate::poly::{quantum_integer, Poly};
use crate::rules::{rule_expand, LinearRule};
use crate::verify::{check_grid, VerifyReport};

/// `h·[n]_q`.
pub fn fe_linear_solution(h: &Poly, n: usize) -> Result<Poly> {
    Ok(h * &quantum_integer(n, h.ctx())?)
}

/// Builds `f_1, ..., f_N` from `f_1` alone via
/// `f_{n+1} = u_1 f_n + v_n f_1`.
pub fn fe_linear_recover(rule: &LinearRule, f1: &Poly, count: usize) -> Result<Vec<Poly>> {
    if count == 0 {
        return Err(Error::InvalidIndex(0));
    }
    if f1.ctx() != rule.ctx() {
        return Err(Error::MixedContexts);
    }
    let mut seq = Vec::with_capacity(count);
    seq.push(f1.clone());
    for n in 1..count {
        // f_n ⊕ f_1 with the first operand at index n, the second at 1
        let (u1, vn) = rule_expand(rule, n, 1)?;
        let next = &(&u1 * &seq[n - 1]) + &(&vn * f1);
        seq.push(next);
    }
    Ok(seq)
}

/// Checks `f_{m+n} = u·f_m + v·f_n` on the grid. `fseq[i]` is `f_{i+1}` and
/// must reach index `M + N`.
pub fn fe_linear_verify(
    rule: &LinearRule,
    fseq: &[Poly],
    max_m: usize,
    max_n: usize,
) -> Result<VerifyReport<Poly>> {
    if fseq.len() < max_m + max_n {
        return Err(Error::IndexOutOfBound {
            m: max_m,
            n: max_n,
            bound: fseq.len(),
        });
    }
    if fseq.iter().any(|f| f.ctx() != rule.ctx()) {
        return Err(Error::MixedContexts);
    }
    check_grid(max_m, max_n, |m, n| {
        let (u, v) = rule_expand(rule, m, n)?;
        let lhs = fseq[m + n - 1].clone();
        let rhs = &(&u * &fseq[m - 1]) + &(&v * &fseq[n - 1]);
        Ok((lhs, rhs))
    })
}
