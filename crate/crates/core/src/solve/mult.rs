//! The multiplicative rule `f_m ∗ f_n = f_m(q)·f_n(q^m)` and the family
//! `f_n = λ(n) q^{t0(n−1)} ∏_{r∈R} [n]_{q^r}^{t_r}` of solutions of
//! `f_m ∗ f_n = f_{mn}`.

use std::collections::BTreeMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{quantum_integer, Poly};
use crate::ratfunc::RatFunc;
use crate::ring::{is_prime, RingCtx, Scalar};
use crate::verify::{check_grid_by, VerifyReport};

/// Values the multiplicative rule can act on.
pub trait MultOperand: Clone + PartialEq + Send + Sync {
    fn ctx(&self) -> &RingCtx;
    fn checked_mul(&self, other: &Self) -> Result<Self>;
    fn subst_power(&self, m: usize) -> Result<Self>;

    /// Whether `fm ∗ fn_ = fmn` for the operator with index `m`.
    fn rule_holds(fm: &Self, fn_: &Self, fmn: &Self, m: usize) -> Result<bool> {
        Ok(mult_rule_apply(fm, fn_, m)? == *fmn)
    }
}

impl MultOperand for Poly {
    fn ctx(&self) -> &RingCtx {
        Poly::ctx(self)
    }
    fn checked_mul(&self, other: &Self) -> Result<Self> {
        Poly::checked_mul(self, other)
    }
    fn subst_power(&self, m: usize) -> Result<Self> {
        Poly::subst_power(self, m)
    }
}

impl MultOperand for RatFunc {
    fn ctx(&self) -> &RingCtx {
        RatFunc::ctx(self)
    }
    fn checked_mul(&self, other: &Self) -> Result<Self> {
        RatFunc::checked_mul(self, other)
    }
    fn subst_power(&self, m: usize) -> Result<Self> {
        RatFunc::subst_power(self, m)
    }

    /// Cross-multiplied, so no gcd is needed.
    fn rule_holds(fm: &Self, fn_: &Self, fmn: &Self, m: usize) -> Result<bool> {
        if fm.ctx() != fn_.ctx() || fm.ctx() != fmn.ctx() {
            return Err(Error::MixedContexts);
        }
        let lhs = &(fm.num() * &fn_.num().subst_power(m)?) * fmn.den();
        let rhs = &(fm.den() * &fn_.den().subst_power(m)?) * fmn.num();
        Ok(lhs == rhs)
    }
}

/// `f_m(q)·f_n(q^m)`.
pub fn mult_rule_apply<T: MultOperand>(fm: &T, fn_: &T, m: usize) -> Result<T> {
    if fm.ctx() != fn_.ctx() {
        return Err(Error::MixedContexts);
    }
    fm.checked_mul(&fn_.subst_power(m)?)
}

/// Checks `f_m ∗ f_n = f_{mn}` on the grid; `generator(k)` yields `f_k` and
/// is called once for every `k ≤ M·N`.
pub fn mult_verify<T, G>(generator: G, max_m: usize, max_n: usize) -> Result<VerifyReport<T>>
where
    T: MultOperand,
    G: Fn(usize) -> Result<T> + Sync,
{
    let table = (1..=max_m * max_n)
        .into_par_iter()
        .map(&generator)
        .collect::<Result<Vec<T>>>()?;
    check_grid_by(
        max_m,
        max_n,
        |m, n| T::rule_holds(&table[m - 1], &table[n - 1], &table[m * n - 1], m),
        |m, n| {
            let lhs = mult_rule_apply(&table[m - 1], &table[n - 1], m)?;
            Ok((lhs, table[m * n - 1].clone()))
        },
    )
}

/// Parameters of one member of the multiplicative family. `λ` is given on
/// primes (every value nonzero) and extended completely multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultFamilySpec {
    ctx: RingCtx,
    lambda: BTreeMap<u64, Scalar>,
    /// λ on primes missing from `lambda`; `None` makes them an error.
    lambda_default: Option<Scalar>,
    t0: i64,
    exponents: BTreeMap<usize, i64>,
}

impl MultFamilySpec {
    pub fn new(
        ctx: &RingCtx,
        lambda: BTreeMap<u64, Scalar>,
        lambda_default: Option<Scalar>,
        t0: i64,
        exponents: BTreeMap<usize, i64>,
    ) -> Result<MultFamilySpec> {
        if !ctx.is_field() {
            return Err(Error::RequiresField);
        }
        for (&p, value) in &lambda {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!(
                    "lambda is given on primes, {p} is not prime"
                )));
            }
            if value.ctx() != ctx {
                return Err(Error::MixedContexts);
            }
            if value.is_zero() {
                return Err(Error::ZeroLambda(p));
            }
        }
        if let Some(d) = &lambda_default {
            if d.ctx() != ctx {
                return Err(Error::MixedContexts);
            }
            if d.is_zero() {
                return Err(Error::ZeroLambda(0));
            }
        }
        if exponents.contains_key(&0) {
            return Err(Error::InvalidIndex(0));
        }
        Ok(MultFamilySpec {
            ctx: ctx.clone(),
            lambda,
            lambda_default,
            t0,
            exponents,
        })
    }

    /// `λ ≡ 1`.
    pub fn unit_lambda(
        ctx: &RingCtx,
        t0: i64,
        exponents: BTreeMap<usize, i64>,
    ) -> Result<MultFamilySpec> {
        MultFamilySpec::new(ctx, BTreeMap::new(), Some(Scalar::one(ctx)), t0, exponents)
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn t0(&self) -> i64 {
        self.t0
    }

    pub fn exponents(&self) -> &BTreeMap<usize, i64> {
        &self.exponents
    }

    /// `λ(n)`, with `λ(1) = 1`.
    pub fn lambda(&self, n: usize) -> Result<Scalar> {
        if n == 0 {
            return Err(Error::InvalidIndex(0));
        }
        let mut acc = Scalar::one(&self.ctx);
        for p in prime_factors(n as u64) {
            let value = match self.lambda.get(&p) {
                Some(v) => v,
                None => self
                    .lambda_default
                    .as_ref()
                    .ok_or(Error::MissingPrimeValue(p))?,
            };
            acc = acc.mul(value)?;
        }
        Ok(acc)
    }
}

/// Prime factors with multiplicity, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The family member `f_n`, in lowest terms.
///
/// In characteristic 0 the quantum integers factor into cyclotomic
/// polynomials, `[n]_{q^r} = ∏_{d | nr, d ∤ r} Φ_d(q)`, so `f_n` is assembled
/// from a signed exponent vector and needs no gcd. In characteristic p the
/// `Φ_d` are no longer coprime and the fraction is reduced by gcd instead.
pub fn mult_family(spec: &MultFamilySpec, n: usize) -> Result<RatFunc> {
    let ctx = &spec.ctx;
    let lambda = spec.lambda(n)?;
    let q_exp = spec
        .t0
        .checked_mul(n as i64 - 1)
        .ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))?;
    let (mut num, mut den) = (Poly::constant(&lambda), Poly::one(ctx));
    if q_exp >= 0 {
        num = num.shift(q_exp as usize);
    } else {
        den = den.shift(q_exp.unsigned_abs() as usize);
    }

    if ctx.characteristic() == 0 {
        let mut multiplicity: BTreeMap<usize, i64> = BTreeMap::new();
        for (&r, &t) in &spec.exponents {
            for d in divisors(n * r) {
                if r % d != 0 {
                    *multiplicity.entry(d).or_default() += t;
                }
            }
        }
        for (d, e) in multiplicity {
            if e == 0 {
                continue;
            }
            let phi = cyclotomic(d, ctx)?.pow(e.unsigned_abs() as u32);
            if e > 0 {
                num = &num * &phi;
            } else {
                den = &den * &phi;
            }
        }
        return Ok(RatFunc::from_coprime(num, den));
    }

    for (&r, &t) in &spec.exponents {
        let factor = quantum_integer(n, ctx)?
            .subst_power(r)?
            .pow(t.unsigned_abs() as u32);
        if t > 0 {
            num = &num * &factor;
        } else {
            den = &den * &factor;
        }
    }
    RatFunc::new(num, den)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

static CYCLOTOMIC_CACHE: Mutex<BTreeMap<usize, Poly>> = Mutex::new(BTreeMap::new());

/// The cyclotomic polynomial `Φ_d` over a ring of characteristic 0, via
/// `q^d − 1 = ∏_{e | d} Φ_e`.
pub fn cyclotomic(d: usize, ctx: &RingCtx) -> Result<Poly> {
    if d == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let zz = RingCtx::integers();
    if let Some(p) = CYCLOTOMIC_CACHE.lock().expect("cache lock").get(&d) {
        return p.map_into(ctx);
    }
    let mut acc = &Poly::q_pow(&zz, d) - &Poly::one(&zz);
    for e in divisors(d) {
        if e < d {
            acc = acc.div_exact(&cyclotomic(e, &zz)?)?;
        }
    }
    CYCLOTOMIC_CACHE
        .lock()
        .expect("cache lock")
        .insert(d, acc.clone());
    acc.map_into(ctx)
}
