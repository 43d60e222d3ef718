//! Dense univariate polynomials over a [`RingCtx`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Elem, RingCtx, Scalar};

/// Degree of a polynomial; the zero polynomial has degree `NegInf`, which
/// compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn as_usize(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial `coeffs[0] + coeffs[1] q + ...`. The coefficient vector never
/// ends in a zero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: RingCtx,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub(crate) fn from_elems(ctx: &RingCtx, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn new(ctx: &RingCtx, coeffs: Vec<Scalar>) -> Result<Poly> {
        let elems = coeffs
            .into_iter()
            .map(|s| {
                if s.ctx() == ctx {
                    Ok(s.into_value())
                } else {
                    Err(Error::MixedContexts)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_elems(ctx, elems))
    }

    pub fn from_i64s(ctx: &RingCtx, coeffs: &[i64]) -> Poly {
        Poly::from_elems(ctx, coeffs.iter().map(|&c| ctx.from_i64(c)).collect())
    }

    pub fn zero(ctx: &RingCtx) -> Poly {
        Poly::from_elems(ctx, Vec::new())
    }

    pub fn one(ctx: &RingCtx) -> Poly {
        Poly::from_elems(ctx, vec![ctx.one()])
    }

    pub(crate) fn constant_elem(ctx: &RingCtx, c: Elem) -> Poly {
        Poly::from_elems(ctx, vec![c])
    }

    pub fn constant(c: &Scalar) -> Poly {
        Poly::constant_elem(c.ctx(), c.value().clone())
    }

    /// `c q^k`.
    pub(crate) fn monomial_elem(ctx: &RingCtx, c: Elem, k: usize) -> Poly {
        let mut coeffs = vec![ctx.zero(); k];
        coeffs.push(c);
        Poly::from_elems(ctx, coeffs)
    }

    /// `q^k`.
    pub fn q_pow(ctx: &RingCtx, k: usize) -> Poly {
        Poly::monomial_elem(ctx, ctx.one(), k)
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn coeff_scalar(&self, i: usize) -> Scalar {
        Scalar::from_parts(&self.ctx, self.coeff(i))
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.ctx.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.ctx.is_one(c))
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        Ok(add_coeffs(&self.ctx, &self.coeffs, &other.coeffs))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        Ok(add_coeffs(&self.ctx, &self.coeffs, &(-other).coeffs))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        Ok(mul_coeffs(&self.ctx, &self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: &Scalar) -> Result<Poly> {
        if c.ctx() != &self.ctx {
            return Err(Error::MixedContexts);
        }
        Ok(self.scale_elem(c.value()))
    }

    pub(crate) fn scale_elem(&self, c: &Elem) -> Poly {
        Poly::from_elems(
            &self.ctx,
            self.coeffs.iter().map(|a| self.ctx.mul(a, c)).collect(),
        )
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ctx.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::from_elems(&self.ctx, coeffs)
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `f(q^m)`.
    pub fn subst_power(&self, m: usize) -> Result<Poly> {
        if m == 0 {
            return Err(Error::InvalidIndex(0));
        }
        if m == 1 || self.is_constant() {
            return Ok(self.clone());
        }
        let mut coeffs = vec![self.ctx.zero(); m * (self.coeffs.len() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[m * i] = c.clone();
        }
        Ok(Poly::from_elems(&self.ctx, coeffs))
    }

    /// Horner evaluation at `a`.
    pub fn eval(&self, a: &Scalar) -> Result<Scalar> {
        if a.ctx() != &self.ctx {
            return Err(Error::MixedContexts);
        }
        let acc = self.coeffs.iter().rev().fold(self.ctx.zero(), |acc, c| {
            self.ctx.add(&self.ctx.mul(&acc, a.value()), c)
        });
        Ok(Scalar::from_parts(&self.ctx, acc))
    }

    /// Quotient and remainder. The leading coefficient of `g` must be a unit.
    pub fn div_rem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check_ctx(g)?;
        let lc = g.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = self.ctx.inv(lc).map_err(|_| Error::RequiresField)?;
        let (quot, rem) = self.long_division(g, |c| Some(self.ctx.mul(c, &lc_inv)));
        Ok((quot, rem))
    }

    /// `f / g` when `g` divides `f`; otherwise reports the remainder.
    ///
    /// Over non-fields the leading coefficient of `g` need not be a unit as
    /// long as every step of the long division divides exactly.
    pub fn div_exact(&self, g: &Poly) -> Result<Poly> {
        self.check_ctx(g)?;
        let lc = g.leading().ok_or(Error::DivisionByZero)?.clone();
        let (quot, rem) = self.long_division(g, |c| self.ctx.div_exact(c, &lc));
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::InexactDivision { remainder: rem })
        }
    }

    /// Long division; `step` divides a coefficient by the leading
    /// coefficient of `g`, returning `None` to stop early.
    fn long_division(&self, g: &Poly, step: impl Fn(&Elem) -> Option<Elem>) -> (Poly, Poly) {
        let ctx = &self.ctx;
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return (Poly::zero(ctx), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ctx.zero(); self.coeffs.len() - dg];
        for i in (dg..rem.len()).rev() {
            if ctx.is_zero(&rem[i]) {
                continue;
            }
            let Some(c) = step(&rem[i]) else {
                break;
            };
            let shift = i - dg;
            for (j, gj) in g.coeffs.iter().enumerate() {
                if !ctx.is_zero(gj) {
                    rem[shift + j] = ctx.sub(&rem[shift + j], &ctx.mul(&c, gj));
                }
            }
            quot[shift] = c;
        }
        (Poly::from_elems(ctx, quot), Poly::from_elems(ctx, rem))
    }

    /// Scales a nonzero polynomial over a field so its leading coefficient is 1.
    pub fn monic(&self) -> Result<Poly> {
        if !self.ctx.is_field() {
            return Err(Error::RequiresField);
        }
        match self.leading() {
            None => Ok(self.clone()),
            Some(lc) => Ok(self.scale_elem(&self.ctx.inv(lc)?)),
        }
    }

    /// Monic greatest common divisor over a field (Euclid).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        if !self.ctx.is_field() {
            return Err(Error::RequiresField);
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.monic()?, other.monic()?);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic()?;
        }
        Ok(a)
    }

    /// Maps the coefficients into another ring along the canonical map
    /// (e.g. ℤ → ℚ, ℤ → 𝔽_p).
    pub fn map_into(&self, target: &RingCtx) -> Result<Poly> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| self.ctx.map_elem(c, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_elems(target, coeffs))
    }
}

fn add_coeffs(ctx: &RingCtx, a: &[Elem], b: &[Elem]) -> Poly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = ctx.add(o, s);
    }
    Poly::from_elems(ctx, out)
}

/// Below this length products use the schoolbook loop.
const KRONECKER_THRESHOLD: usize = 24;

/// Product of integer coefficient vectors.
fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) >= KRONECKER_THRESHOLD {
        return kronecker_mul(a, b);
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Kronecker substitution: evaluates both factors at `2^k` for a slot width
/// `k` wider than any product coefficient, multiplies the two integers and
/// reads the coefficients back as balanced base-`2^k` digits.
fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let max_bits = |v: &[BigInt]| v.iter().map(BigInt::bits).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    let needed = max_bits(a) + max_bits(b) + (64 - terms.leading_zeros() as u64) + 1;
    let slot = needed.div_ceil(32) as usize;
    let product = kronecker_pack(a, slot) * kronecker_pack(b, slot);
    kronecker_unpack(&product, slot, a.len() + b.len() - 1)
}

fn kronecker_pack(v: &[BigInt], slot: usize) -> BigInt {
    let mut pos = vec![0u32; v.len() * slot];
    let mut neg = vec![0u32; v.len() * slot];
    for (i, c) in v.iter().enumerate() {
        let target = if c.sign() == Sign::Minus {
            &mut neg
        } else {
            &mut pos
        };
        for (j, d) in c.magnitude().to_u32_digits().into_iter().enumerate() {
            target[i * slot + j] = d;
        }
    }
    BigInt::from(BigUint::new(pos)) - BigInt::from(BigUint::new(neg))
}

fn kronecker_unpack(x: &BigInt, slot: usize, len: usize) -> Vec<BigInt> {
    let digits = x.magnitude().to_u32_digits();
    let modulus = BigInt::one() << (32 * slot);
    let half = BigInt::one() << (32 * slot - 1);
    let mut carry = BigInt::zero();
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let lo = (i * slot).min(digits.len());
        let hi = ((i + 1) * slot).min(digits.len());
        let mut r = BigInt::from(BigUint::from_slice(&digits[lo..hi])) + &carry;
        if r >= half {
            r -= &modulus;
            carry = BigInt::one();
        } else {
            carry = BigInt::zero();
        }
        out.push(if x.sign() == Sign::Minus { -r } else { r });
    }
    out
}

/// Integer numerators over a common denominator.
fn clear_denominators(a: &[Elem]) -> (Vec<BigInt>, BigInt) {
    let rat = |e: &Elem| match e {
        Elem::Rat(r) => r.clone(),
        other => unreachable!("rational coefficient expected, got {other:?}"),
    };
    let den = a.iter().fold(BigInt::one(), |l, e| l.lcm(rat(e).denom()));
    let nums = a
        .iter()
        .map(|e| {
            let r = rat(e);
            r.numer() * (&den / r.denom())
        })
        .collect();
    (nums, den)
}

fn mul_coeffs(ctx: &RingCtx, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Poly::zero(ctx);
    }
    match ctx {
        RingCtx::Integers => {
            let ints = |v: &[Elem]| -> Vec<BigInt> {
                v.iter()
                    .map(|e| match e {
                        Elem::Int(i) => i.clone(),
                        other => unreachable!("integer coefficient expected, got {other:?}"),
                    })
                    .collect()
            };
            let out = convolve(&ints(a), &ints(b));
            return Poly::from_elems(ctx, out.into_iter().map(Elem::Int).collect());
        }
        RingCtx::Rationals => {
            // one gcd per output coefficient instead of one per term
            let (na, da) = clear_denominators(a);
            let (nb, db) = clear_denominators(b);
            let den = da * db;
            let out = convolve(&na, &nb)
                .into_iter()
                .map(|c| Elem::Rat(BigRational::new(c, den.clone())))
                .collect();
            return Poly::from_elems(ctx, out);
        }
        _ => {}
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ctx.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if ctx.is_zero(bj) {
                continue;
            }
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(ai, bj));
        }
    }
    Poly::from_elems(ctx, out)
}

/// The quantum integer `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn quantum_integer(n: usize, ctx: &RingCtx) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    Ok(Poly::from_elems(ctx, vec![ctx.one(); n]))
}

/// The q-derivative `(f(qx) - f(x)) / (qx - x)`, i.e. the linear map
/// `x^n ↦ [n]_q x^(n-1)`. The input is a polynomial in `x`; the result has
/// coefficients in `base[q]`.
pub fn q_derivative(f: &Poly) -> Result<Poly> {
    let base = f.ctx();
    let out_ctx = RingCtx::poly_extension(base.clone(), "q")?;
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, a)| {
            let qn = quantum_integer(n, base)?;
            Ok(Elem::Poly(qn.scale_elem(a)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::from_elems(&out_ctx, coeffs))
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics if the operands live in different rings; use the
            /// `checked_*` methods to get an error instead.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs)
                    .expect("polynomials over different rings")
            }
        }

        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }

        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| self.ctx.neg(c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::format::format_poly(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {})", self.ctx)
    }
}
