//! Algebraic invariants checked on random inputs.

use proptest::prelude::*;

use qrules::cli::format::format_poly;
use qrules::cli::parse::parse_poly;
use qrules::{q_derivative, quantum_integer, Degree, Elem, Poly, RatFunc, RingCtx, Scalar};

fn ring_strategy() -> impl Strategy<Value = RingCtx> {
    prop_oneof![
        Just(RingCtx::integers()),
        Just(RingCtx::rationals()),
        Just(RingCtx::prime_field(5).unwrap()),
        Just(RingCtx::prime_field(101).unwrap()),
    ]
}

fn field_strategy() -> impl Strategy<Value = RingCtx> {
    prop_oneof![
        Just(RingCtx::rationals()),
        Just(RingCtx::prime_field(7).unwrap()),
    ]
}

fn scalar(ctx: RingCtx) -> impl Strategy<Value = Scalar> {
    let rational = ctx.is_field() && ctx.characteristic() == 0;
    (-50i64..=50, 1i64..=12).prop_map(move |(a, b)| {
        if rational {
            Scalar::ratio(&ctx, a, b).unwrap()
        } else {
            Scalar::from_i64(&ctx, a)
        }
    })
}

fn poly_in(ctx: RingCtx, max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(scalar(ctx.clone()), 0..=max_deg + 1)
        .prop_map(move |coeffs| Poly::new(&ctx, coeffs).unwrap())
}

fn ring_and_polys(n: usize, max_deg: usize) -> impl Strategy<Value = (RingCtx, Vec<Poly>)> {
    ring_strategy().prop_flat_map(move |ctx| {
        (
            Just(ctx.clone()),
            prop::collection::vec(poly_in(ctx, max_deg), n),
        )
    })
}

fn field_and_polys(n: usize, max_deg: usize) -> impl Strategy<Value = (RingCtx, Vec<Poly>)> {
    field_strategy().prop_flat_map(move |ctx| {
        (
            Just(ctx.clone()),
            prop::collection::vec(poly_in(ctx, max_deg), n),
        )
    })
}

fn ring_and_scalars(n: usize) -> impl Strategy<Value = (RingCtx, Vec<Scalar>)> {
    ring_strategy()
        .prop_flat_map(move |ctx| (Just(ctx.clone()), prop::collection::vec(scalar(ctx), n)))
}

fn ratfunc(num: &Poly, den: &Poly) -> Option<RatFunc> {
    if den.is_zero() {
        None
    } else {
        Some(RatFunc::new(num.clone(), den.clone()).unwrap())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn scalar_ring_axioms((ctx, s) in ring_and_scalars(3)) {
        let (a, b, c) = (&s[0], &s[1], &s[2]);
        prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
        prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        prop_assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(c).unwrap()).unwrap(),
            a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        prop_assert_eq!(a.sub(b).unwrap(), a.add(&b.neg()).unwrap());
        if ctx.is_field() && !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rationals_stay_reduced(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let ctx = RingCtx::rationals();
        let x = Scalar::ratio(&ctx, a, b).unwrap().mul(&Scalar::ratio(&ctx, c, d).unwrap()).unwrap();
        if let qrules::Elem::Rat(r) = x.value() {
            prop_assert!(r.denom() > &BigInt::from(0));
            prop_assert!(r.numer().gcd(r.denom()) == BigInt::from(1) || r.numer() == &BigInt::from(0));
            // value check against cross multiplication of the inputs
            prop_assert_eq!(r.numer() * b * d, r.denom() * (a * c));
        } else {
            prop_assert!(false, "rational element expected");
        }
    }

    #[test]
    fn poly_ring_axioms((_ctx, f) in ring_and_polys(3, 6)) {
        let (a, b, c) = (&f[0], &f[1], &f[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a - a).is_zero());
        // normalization: no trailing zero coefficient is ever stored
        for p in [a + b, a * b, a - b] {
            prop_assert!(p.coeffs().last().is_none_or(|l| !p.ctx().is_zero(l)));
        }
    }

    #[test]
    fn degree_is_additive_over_domains((_ctx, f) in ring_and_polys(2, 8)) {
        prop_assert_eq!((&f[0] * &f[1]).degree(), f[0].degree() + f[1].degree());
    }

    #[test]
    fn product_evaluates_pointwise((ctx, f) in ring_and_polys(2, 30), x in -6i64..=6) {
        let pt = Scalar::from_i64(&ctx, x);
        let prod = (&f[0] * &f[1]).eval(&pt).unwrap();
        prop_assert_eq!(prod, f[0].eval(&pt).unwrap().mul(&f[1].eval(&pt).unwrap()).unwrap());
    }

    #[test]
    fn division_identity((_ctx, f) in field_and_polys(2, 8)) {
        prop_assume!(!f[1].is_zero());
        let (q, r) = f[0].div_rem(&f[1]).unwrap();
        prop_assert_eq!(&(&q * &f[1]) + &r, f[0].clone());
        prop_assert!(r.degree() < f[1].degree());
        prop_assert_eq!((&f[0] * &f[1]).div_exact(&f[1]).unwrap(), f[0].clone());
    }

    #[test]
    fn gcd_divides_and_is_monic((_ctx, f) in field_and_polys(3, 5)) {
        prop_assume!(!f[0].is_zero() || !f[1].is_zero());
        let a = &f[0] * &f[2];
        let b = &f[1] * &f[2];
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(a.div_rem(&g).unwrap().1.is_zero());
        prop_assert!(b.div_rem(&g).unwrap().1.is_zero());
        if !f[2].is_zero() {
            // the common factor survives
            prop_assert!(g.div_rem(&f[2].monic().unwrap()).unwrap().1.is_zero());
        }
    }

    #[test]
    fn print_parse_round_trip((ctx, f) in ring_and_polys(1, 12)) {
        let text = format_poly(&f[0]);
        prop_assert_eq!(parse_poly(&text, &ctx).unwrap(), f[0].clone(), "printed as {}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn substitution_is_a_ring_map((_ctx, f) in ring_and_polys(2, 6), m in 1usize..=6) {
        let s = |p: &Poly| p.subst_power(m).unwrap();
        prop_assert_eq!(s(&(&f[0] * &f[1])), &s(&f[0]) * &s(&f[1]));
        prop_assert_eq!(s(&(&f[0] + &f[1])), &s(&f[0]) + &s(&f[1]));
        prop_assert_eq!(s(&f[0]).degree(), match f[0].degree() {
            Degree::Finite(d) => Degree::Finite(d * m),
            Degree::NegInf => Degree::NegInf,
        });
    }

    #[test]
    fn ratfunc_field_axioms((ctx, f) in field_and_polys(6, 5)) {
        let (Some(a), Some(b), Some(c)) = (
            ratfunc(&f[0], &f[1]),
            ratfunc(&f[2], &f[3]),
            ratfunc(&f[4], &f[5]),
        ) else {
            return Ok(());
        };
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one(&ctx));
        }
        // canonical form: monic denominator, coprime parts
        for x in [&a * &b, &a + &c] {
            prop_assert!(x.den().is_monic());
            prop_assert!(x.is_zero() || x.num().gcd(x.den()).unwrap().is_one());
        }
        prop_assert_eq!(RatFunc::new(a.num().clone(), a.den().clone()).unwrap(), a.clone());
        // value is preserved: a = f0/f1 cross-multiplies
        prop_assert_eq!(a.num() * &f[1], a.den() * &f[0]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ratfunc_substitution_commutes((_ctx, f) in field_and_polys(2, 4), m in 1usize..=4) {
        let Some(a) = ratfunc(&f[0], &f[1]) else { return Ok(()) };
        let s = a.subst_power(m).unwrap();
        let direct = RatFunc::new(f[0].subst_power(m).unwrap(), f[1].subst_power(m).unwrap()).unwrap();
        prop_assert_eq!(s, direct);
    }
}

#[test]
fn quantum_integer_identities() {
    for ctx in [RingCtx::integers(), RingCtx::prime_field(5).unwrap()] {
        let qint = |n| quantum_integer(n, &ctx).unwrap();
        for m in 1..=16 {
            for n in 1..=16 {
                assert_eq!(
                    &qint(m) * &qint(n).subst_power(m).unwrap(),
                    qint(m * n),
                    "m = {m}, n = {n}"
                );
            }
        }
        for n in 1..=64 {
            assert_eq!(qint(n + 1), &qint(n) + &Poly::q_pow(&ctx, n));
        }
    }
}

#[test]
fn q_derivative_specializes_to_the_ordinary_derivative() {
    let ctx = RingCtx::integers();
    let one = Scalar::from_i64(&ctx, 1);
    for n in 1..=20 {
        let d = q_derivative(&Poly::q_pow(&ctx, n)).unwrap();
        assert_eq!(d.degree(), Degree::Finite(n - 1));
        let Elem::Poly(c) = d.coeff(n - 1) else {
            panic!("coefficient in ZZ[q] expected")
        };
        assert_eq!(c.eval(&one).unwrap(), Scalar::from_i64(&ctx, n as i64));
    }
}
