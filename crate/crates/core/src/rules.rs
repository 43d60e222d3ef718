//! Linear quantum addition rules and linear zero identities.
//!
//! A linear quantum addition rule is a pair of coefficient sequences with
//! `[m+n]_q = u·[m]_q + v·[n]_q` for all positive `m, n`. When `u` depends
//! only on `n` and `v` only on `m`, the rule is determined by one
//! polynomial `z`:
//!
//! ```text
//! u_n = 1 + z·[n]_q,    v_m = q^m − z·[m]_q,    z = u_1 − 1 = q − v_1.
//! ```
//!
//! `z = 0` is the fundamental rule `[m+n]_q = [m]_q + q^m [n]_q`. Zero
//! identities `s_n·[m]_q + t_m·[n]_q = 0` are likewise `s_n = z·[n]_q`,
//! `t_m = −z·[m]_q`. Adding a zero identity to a rule, or taking an affine
//! combination of rules, acts on `z` linearly.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{quantum_integer, Poly};
use crate::ring::{RingCtx, Scalar};
use crate::verify::{check_grid, VerifyReport};

/// A rule tabulated entry by entry: `u_{m,n}` and `v_{m,n}` for
/// `1 ≤ m, n ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedRule {
    ctx: RingCtx,
    bound: usize,
    u: BTreeMap<(usize, usize), Poly>,
    v: BTreeMap<(usize, usize), Poly>,
}

impl TabulatedRule {
    /// Every `(m, n)` with `1 ≤ m, n ≤ bound` must be present in both maps.
    pub fn new(
        ctx: &RingCtx,
        bound: usize,
        u: BTreeMap<(usize, usize), Poly>,
        v: BTreeMap<(usize, usize), Poly>,
    ) -> Result<TabulatedRule> {
        for table in [&u, &v] {
            for (&(m, n), p) in table {
                if m == 0 || n == 0 {
                    return Err(Error::InvalidIndex(0));
                }
                if m > bound || n > bound {
                    return Err(Error::IndexOutOfBound { m, n, bound });
                }
                if p.ctx() != ctx {
                    return Err(Error::MixedContexts);
                }
            }
            if table.len() != bound * bound {
                let missing = (1..=bound)
                    .flat_map(|m| (1..=bound).map(move |n| (m, n)))
                    .find(|k| !table.contains_key(k))
                    .expect("a missing entry");
                return Err(Error::InvalidArgument(format!(
                    "table has no entry for (m, n) = ({}, {})",
                    missing.0, missing.1
                )));
            }
        }
        Ok(TabulatedRule {
            ctx: ctx.clone(),
            bound,
            u,
            v,
        })
    }

    /// Tabulates `entry(m, n) = (u_{m,n}, v_{m,n})`.
    pub fn from_fn(
        ctx: &RingCtx,
        bound: usize,
        mut entry: impl FnMut(usize, usize) -> (Poly, Poly),
    ) -> Result<TabulatedRule> {
        let mut u = BTreeMap::new();
        let mut v = BTreeMap::new();
        for m in 1..=bound {
            for n in 1..=bound {
                let (a, b) = entry(m, n);
                u.insert((m, n), a);
                v.insert((m, n), b);
            }
        }
        TabulatedRule::new(ctx, bound, u, v)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearRule {
    /// `u_n = 1 + z[n]_q`, `v_m = q^m − z[m]_q`.
    Canonical {
        z: Poly,
    },
    Tabulated(TabulatedRule),
}

impl LinearRule {
    pub fn ctx(&self) -> &RingCtx {
        match self {
            LinearRule::Canonical { z } => z.ctx(),
            LinearRule::Tabulated(t) => &t.ctx,
        }
    }

    pub fn z(&self) -> Option<&Poly> {
        match self {
            LinearRule::Canonical { z } => Some(z),
            LinearRule::Tabulated(_) => None,
        }
    }

    /// The `z` of a canonical rule. A tabulated rule is accepted when its
    /// whole table agrees with the canonical expansion of the `z` read off
    /// its `(1, 1)` entry; otherwise it is rejected.
    pub fn canonical_z(&self) -> Result<Poly> {
        match self {
            LinearRule::Canonical { z } => Ok(z.clone()),
            LinearRule::Tabulated(t) => {
                let (u1, v1) = rule_expand(self, 1, 1)?;
                let z = rule_classify(&u1, &v1)?;
                let canon = rule_canonical(z.clone());
                for m in 1..=t.bound {
                    for n in 1..=t.bound {
                        if rule_expand(self, m, n)? != rule_expand(&canon, m, n)? {
                            return Err(Error::NotCanonical(format!(
                                "entry ({m}, {n}) differs from the rule with z = {z}"
                            )));
                        }
                    }
                }
                Ok(z)
            }
        }
    }
}

pub fn rule_canonical(z: Poly) -> LinearRule {
    LinearRule::Canonical { z }
}

/// The coefficients `(u, v)` applied to `([m]_q, [n]_q)`.
pub fn rule_expand(rule: &LinearRule, m: usize, n: usize) -> Result<(Poly, Poly)> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    match rule {
        LinearRule::Canonical { z } => {
            let ctx = z.ctx();
            let u = &Poly::one(ctx) + &(z * &quantum_integer(n, ctx)?);
            let v = &Poly::q_pow(ctx, m) - &(z * &quantum_integer(m, ctx)?);
            Ok((u, v))
        }
        LinearRule::Tabulated(t) => {
            if m > t.bound || n > t.bound {
                return Err(Error::IndexOutOfBound {
                    m,
                    n,
                    bound: t.bound,
                });
            }
            Ok((t.u[&(m, n)].clone(), t.v[&(m, n)].clone()))
        }
    }
}

/// Recovers `z` from the first coefficients of a rule, checking that
/// `u_1 − 1 = q − v_1`.
pub fn rule_classify(u1: &Poly, v1: &Poly) -> Result<Poly> {
    let ctx = u1.ctx();
    let u_side = u1.checked_sub(&Poly::one(ctx))?;
    let v_side = Poly::q_pow(ctx, 1).checked_sub(v1)?;
    if u_side != v_side {
        return Err(Error::InconsistentRule { u_side, v_side });
    }
    Ok(u_side)
}

/// Both sides of the rule identity at `(m, n)`: `([m+n]_q, u·[m]_q + v·[n]_q)`.
pub fn rule_sides(rule: &LinearRule, m: usize, n: usize) -> Result<(Poly, Poly)> {
    let ctx = rule.ctx();
    let (u, v) = rule_expand(rule, m, n)?;
    let lhs = quantum_integer(m + n, ctx)?;
    let rhs = &(&u * &quantum_integer(m, ctx)?) + &(&v * &quantum_integer(n, ctx)?);
    Ok((lhs, rhs))
}

/// Checks `[m+n]_q = u·[m]_q + v·[n]_q` exactly on `1 ≤ m ≤ M, 1 ≤ n ≤ N`.
pub fn rule_verify(rule: &LinearRule, max_m: usize, max_n: usize) -> Result<VerifyReport<Poly>> {
    if let LinearRule::Tabulated(t) = rule {
        if max_m > t.bound || max_n > t.bound {
            return Err(Error::IndexOutOfBound {
                m: max_m,
                n: max_n,
                bound: t.bound,
            });
        }
    }
    check_grid(max_m, max_n, |m, n| rule_sides(rule, m, n))
}

/// The zero identity `s_n = z[n]_q`, `t_m = −z[m]_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroIdentity {
    pub z: Poly,
}

impl ZeroIdentity {
    /// `(s_n, t_m)`.
    pub fn expand(&self, m: usize, n: usize) -> Result<(Poly, Poly)> {
        let ctx = self.z.ctx();
        let s = &self.z * &quantum_integer(n, ctx)?;
        let t = -(&self.z * &quantum_integer(m, ctx)?);
        Ok((s, t))
    }
}

pub fn zero_identity(z: Poly) -> ZeroIdentity {
    ZeroIdentity { z }
}

/// Checks `s_n·[m]_q + t_m·[n]_q = 0` on the grid; the counterexample, if
/// any, carries the nonzero left side and a zero right side.
pub fn zero_verify(zid: &ZeroIdentity, max_m: usize, max_n: usize) -> Result<VerifyReport<Poly>> {
    let ctx = zid.z.ctx();
    check_grid(max_m, max_n, |m, n| {
        let (s, t) = zid.expand(m, n)?;
        let lhs = &(&s * &quantum_integer(m, ctx)?) + &(&t * &quantum_integer(n, ctx)?);
        Ok((lhs, Poly::zero(ctx)))
    })
}

/// Affine combination `Σ α_i · rule_i` with `Σ α_i = 1`; the result is the
/// canonical rule with `z = Σ α_i z_i`.
pub fn rule_affine(rules: &[LinearRule], alphas: &[Scalar]) -> Result<LinearRule> {
    if rules.len() != alphas.len() {
        return Err(Error::LengthMismatch {
            expected: rules.len(),
            got: alphas.len(),
        });
    }
    let Some(first) = rules.first() else {
        return Err(Error::InvalidArgument("no rules to combine".into()));
    };
    let ctx = first.ctx();
    let mut sum = Scalar::zero(ctx);
    let mut z = Poly::zero(ctx);
    for (rule, alpha) in rules.iter().zip(alphas) {
        let zi = match rule {
            LinearRule::Canonical { z } => z.clone(),
            LinearRule::Tabulated(_) => {
                return Err(Error::NotCanonical(
                    "classify tabulated rules before combining them".into(),
                ))
            }
        };
        sum = sum.add(alpha)?;
        z = z.checked_add(&zi.scale(alpha)?)?;
    }
    if !sum.is_one() {
        return Err(Error::AffineSumNotOne {
            sum: sum.to_string(),
        });
    }
    Ok(rule_canonical(z))
}

/// Adds a zero identity to a canonical rule: `(u + s, v + t)`, i.e.
/// `z ↦ z + z_zid`.
pub fn rule_add_zero(rule: &LinearRule, zid: &ZeroIdentity) -> Result<LinearRule> {
    match rule {
        LinearRule::Canonical { z } => Ok(rule_canonical(z.checked_add(&zid.z)?)),
        LinearRule::Tabulated(_) => Err(Error::NotCanonical(
            "classify tabulated rules before adding a zero identity".into(),
        )),
    }
}
