//! Rational functions over a field, kept in lowest terms with a monic
//! denominator so that equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::RingCtx;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if num.ctx() != den.ctx() {
            return Err(Error::MixedContexts);
        }
        if !den.ctx().is_field() {
            return Err(Error::RequiresField);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(den.ctx()));
        }
        let g = num.gcd(&den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        Ok(RatFunc::normalize_sign(num, den))
    }

    /// Builds a fraction whose parts are already known to be coprime,
    /// scaling the denominator monic.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> RatFunc {
        RatFunc::normalize_sign(num, den)
    }

    /// Assumes `num` and `den` are already coprime.
    fn normalize_sign(num: Poly, den: Poly) -> RatFunc {
        let ctx = den.ctx().clone();
        let lc = den.leading().expect("nonzero denominator").clone();
        if ctx.is_one(&lc) {
            return RatFunc { num, den };
        }
        let inv = ctx.inv(&lc).expect("field element is invertible");
        RatFunc {
            num: num.scale_elem(&inv),
            den: den.scale_elem(&inv),
        }
    }

    pub fn from_poly(p: Poly) -> Result<RatFunc> {
        let one = Poly::one(p.ctx());
        RatFunc::new(p, one)
    }

    pub fn zero(ctx: &RingCtx) -> RatFunc {
        RatFunc {
            num: Poly::zero(ctx),
            den: Poly::one(ctx),
        }
    }

    pub fn one(ctx: &RingCtx) -> RatFunc {
        RatFunc {
            num: Poly::one(ctx),
            den: Poly::one(ctx),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn ctx(&self) -> &RingCtx {
        self.den.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    fn check_ctx(&self, other: &RatFunc) -> Result<()> {
        if self.ctx() == other.ctx() {
            Ok(())
        } else {
            Err(Error::MixedContexts)
        }
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check_ctx(other)?;
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_add(&-other)
    }

    /// Product, cancelling across the two fractions so that only the
    /// smaller cross gcds are computed.
    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::zero(self.ctx()));
        }
        let g1 = self.num.gcd(&other.den)?;
        let g2 = other.num.gcd(&self.den)?;
        let num = &self.num.div_exact(&g1)? * &other.num.div_exact(&g2)?;
        let den = &self.den.div_exact(&g2)? * &other.den.div_exact(&g1)?;
        Ok(RatFunc::normalize_sign(num, den))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::normalize_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs())
            .map_err(|_| Error::InvalidArgument(format!("exponent {k} too large")))?;
        // coprime num/den stay coprime under powers
        Ok(RatFunc::normalize_sign(base.num.pow(e), base.den.pow(e)))
    }

    /// `a(q^m)`. The substitution is an injective ring map, so coprime
    /// numerator and denominator stay coprime and monic stays monic.
    pub fn subst_power(&self, m: usize) -> Result<RatFunc> {
        Ok(RatFunc::normalize_sign(
            self.num.subst_power(m)?,
            self.den.subst_power(m)?,
        ))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            /// Panics on mixed rings or division by zero; the `checked_*`
            /// methods return errors instead.
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs).expect("rational function arithmetic")
            }
        }

        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::cli::format::format_ratfunc(self))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self} over {})", self.ctx())
    }
}
