//! Coefficient rings selected at runtime.
//!
//! A [`RingCtx`] names the ring; an [`Elem`] is a bare element whose
//! interpretation depends on the context it is used with; a [`Scalar`]
//! pairs the two. Every supported ring is an integral domain: the
//! integers, the rationals, a prime field, or a polynomial ring over one
//! of those (nested at most twice).

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;

const MAX_NESTING: usize = 2;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum RingCtx {
    Integers,
    Rationals,
    PrimeField(u64),
    /// Polynomials in `var` with coefficients in `base`.
    PolyExtension {
        base: Arc<RingCtx>,
        var: Arc<str>,
    },
}

/// An element of some ring, without its context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Poly(Poly),
}

impl RingCtx {
    pub fn integers() -> Self {
        RingCtx::Integers
    }

    pub fn rationals() -> Self {
        RingCtx::Rationals
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RingCtx::PrimeField(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub fn poly_extension(base: RingCtx, var: &str) -> Result<Self> {
        if base.nesting() + 1 > MAX_NESTING {
            return Err(Error::UnsupportedNesting);
        }
        Ok(RingCtx::PolyExtension {
            base: Arc::new(base),
            var: Arc::from(var),
        })
    }

    pub fn nesting(&self) -> usize {
        match self {
            RingCtx::PolyExtension { base, .. } => base.nesting() + 1,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, RingCtx::Rationals | RingCtx::PrimeField(_))
    }

    /// Characteristic of the ring (0 for characteristic zero).
    pub fn characteristic(&self) -> u64 {
        match self {
            RingCtx::Integers | RingCtx::Rationals => 0,
            RingCtx::PrimeField(p) => *p,
            RingCtx::PolyExtension { base, .. } => base.characteristic(),
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            RingCtx::Integers => Elem::Int(BigInt::zero()),
            RingCtx::Rationals => Elem::Rat(BigRational::zero()),
            RingCtx::PrimeField(_) => Elem::Mod(0),
            RingCtx::PolyExtension { base, .. } => Elem::Poly(Poly::zero(base)),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self {
            RingCtx::Integers => Elem::Int(v.clone()),
            RingCtx::Rationals => Elem::Rat(BigRational::from_integer(v.clone())),
            RingCtx::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Elem::Mod(r.to_u64().expect("residue fits in u64"))
            }
            RingCtx::PolyExtension { base, .. } => {
                Elem::Poly(Poly::constant_elem(base, base.from_bigint(v)))
            }
        }
    }

    /// Image of `num/den`. Fails over rings where `den` is not a unit.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        let d_inv = self.inv(&d)?;
        Ok(self.mul(&n, &d_inv))
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (RingCtx::Integers, Elem::Int(_)) => true,
            (RingCtx::Rationals, Elem::Rat(_)) => true,
            (RingCtx::PrimeField(p), Elem::Mod(v)) => v < p,
            (RingCtx::PolyExtension { base, .. }, Elem::Poly(f)) => f.ctx() == base.as_ref(),
            _ => false,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Int(v) => v.is_zero(),
            Elem::Rat(v) => v.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Poly(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        match e {
            Elem::Int(v) => v.is_one(),
            Elem::Rat(v) => v.is_one(),
            Elem::Mod(v) => *v == 1,
            Elem::Poly(f) => f.is_one(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (RingCtx::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (RingCtx::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (RingCtx::PrimeField(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (RingCtx::PolyExtension { .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x + y),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (RingCtx::Integers, Elem::Int(x)) => Elem::Int(-x),
            (RingCtx::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (RingCtx::PrimeField(p), Elem::Mod(x)) => Elem::Mod(if *x == 0 { 0 } else { p - x }),
            (RingCtx::PolyExtension { .. }, Elem::Poly(x)) => Elem::Poly(-x),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (RingCtx::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (RingCtx::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (RingCtx::PrimeField(p), Elem::Mod(x), Elem::Mod(y)) => {
                Elem::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (RingCtx::PolyExtension { .. }, Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x * y),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        let not_invertible = || Error::NotInvertible {
            ring: self.to_string(),
        };
        match (self, a) {
            (RingCtx::Integers, Elem::Int(x)) => {
                if x.abs().is_one() {
                    Ok(Elem::Int(x.clone()))
                } else {
                    Err(not_invertible())
                }
            }
            (RingCtx::Rationals, Elem::Rat(x)) => {
                if x.is_zero() {
                    Err(not_invertible())
                } else {
                    Ok(Elem::Rat(x.recip()))
                }
            }
            (RingCtx::PrimeField(p), Elem::Mod(x)) => {
                if *x == 0 {
                    Err(not_invertible())
                } else {
                    Ok(Elem::Mod(pow_mod(*x, p - 2, *p)))
                }
            }
            (RingCtx::PolyExtension { base, .. }, Elem::Poly(f)) => {
                // units of a polynomial ring over a domain are the constant units
                if f.degree().as_usize() == Some(0) {
                    let c = base.inv(&f.coeffs()[0]).map_err(|_| not_invertible())?;
                    Ok(Elem::Poly(Poly::constant_elem(base, c)))
                } else {
                    Err(not_invertible())
                }
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    /// `a / b` when `b` divides `a` exactly in this ring.
    pub fn div_exact(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        if self.is_zero(b) {
            return None;
        }
        match (self, a, b) {
            (RingCtx::Integers, Elem::Int(x), Elem::Int(y)) => {
                let (q, r) = x.div_rem(y);
                r.is_zero().then_some(Elem::Int(q))
            }
            (RingCtx::PolyExtension { .. }, Elem::Poly(x), Elem::Poly(y)) => {
                x.div_exact(y).ok().map(Elem::Poly)
            }
            _ => self.inv(b).ok().map(|bi| self.mul(a, &bi)),
        }
    }

    pub fn pow(&self, a: &Elem, mut k: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Converts an element of `self` into `target`, where a canonical map
    /// exists (ℤ → anything, ℚ → 𝔽_p when the denominator is a unit).
    pub fn map_elem(&self, e: &Elem, target: &RingCtx) -> Result<Elem> {
        if self == target {
            return Ok(e.clone());
        }
        match (self, e, target) {
            (RingCtx::Integers, Elem::Int(v), _) => Ok(target.from_bigint(v)),
            (RingCtx::Rationals, Elem::Rat(v), _) => target.from_ratio(v.numer(), v.denom()),
            (RingCtx::PolyExtension { .. }, Elem::Poly(f), RingCtx::PolyExtension { base, .. }) => {
                Ok(Elem::Poly(f.map_into(base)?))
            }
            _ => Err(Error::MixedContexts),
        }
    }
}

impl fmt::Display for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingCtx::Integers => write!(f, "ZZ"),
            RingCtx::Rationals => write!(f, "QQ"),
            RingCtx::PrimeField(p) => write!(f, "Fp:{p}"),
            RingCtx::PolyExtension { base, var } => write!(f, "{base}[{var}]"),
        }
    }
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RingCtx {
    type Err = Error;

    /// Accepts `ZZ`, `QQ` and `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ZZ" => Ok(RingCtx::Integers),
            "QQ" => Ok(RingCtx::Rationals),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "unknown ring '{other}', expected ZZ, QQ or Fp:<p>"
                        ))
                    })?;
                RingCtx::prime_field(p)
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(v) => write!(f, "{v}"),
            Elem::Rat(v) => write!(f, "{v}"),
            Elem::Mod(v) => write!(f, "{v}"),
            Elem::Poly(p) => write!(f, "({p})"),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A ring element together with the ring it lives in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    ctx: RingCtx,
    value: Elem,
}

impl Scalar {
    pub fn new(ctx: &RingCtx, value: Elem) -> Result<Self> {
        if !ctx.contains(&value) {
            return Err(Error::MixedContexts);
        }
        Ok(Scalar {
            ctx: ctx.clone(),
            value,
        })
    }

    pub(crate) fn from_parts(ctx: &RingCtx, value: Elem) -> Self {
        debug_assert!(ctx.contains(&value));
        Scalar {
            ctx: ctx.clone(),
            value,
        }
    }

    pub fn from_i64(ctx: &RingCtx, v: i64) -> Self {
        Scalar::from_parts(ctx, ctx.from_i64(v))
    }

    pub fn ratio(ctx: &RingCtx, num: i64, den: i64) -> Result<Self> {
        let e = ctx.from_ratio(&BigInt::from(num), &BigInt::from(den))?;
        Ok(Scalar::from_parts(ctx, e))
    }

    pub fn zero(ctx: &RingCtx) -> Self {
        Scalar::from_parts(ctx, ctx.zero())
    }

    pub fn one(ctx: &RingCtx) -> Self {
        Scalar::from_parts(ctx, ctx.one())
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.ctx.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ctx.is_one(&self.value)
    }

    fn same_ctx(&self, other: &Scalar) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ctx(other)?;
        Ok(Scalar::from_parts(
            &self.ctx,
            self.ctx.add(&self.value, &other.value),
        ))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ctx(other)?;
        Ok(Scalar::from_parts(
            &self.ctx,
            self.ctx.sub(&self.value, &other.value),
        ))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ctx(other)?;
        Ok(Scalar::from_parts(
            &self.ctx,
            self.ctx.mul(&self.value, &other.value),
        ))
    }

    pub fn neg(&self) -> Scalar {
        Scalar::from_parts(&self.ctx, self.ctx.neg(&self.value))
    }

    /// Multiplicative inverse; over ℤ only ±1 are invertible.
    pub fn inv(&self) -> Result<Scalar> {
        Ok(Scalar::from_parts(&self.ctx, self.ctx.inv(&self.value)?))
    }

    pub fn map_into(&self, target: &RingCtx) -> Result<Scalar> {
        Ok(Scalar::from_parts(
            target,
            self.ctx.map_elem(&self.value, target)?,
        ))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Elem::Poly(p) => write!(f, "{p}"),
            v => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ctx)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
