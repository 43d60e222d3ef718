//! Invariants of rules, functional equations, the linear solver and the
//! bounded prover, on seeded random inputs and small parameter sweeps.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qrules::solve::{
    fe_linear_recover, fe_linear_solution, fe_linear_verify, linsolve_exact, mult_family,
    mult_verify, prove_bounded, quad_closed_form, quad_rule_apply, rank, LinearSolution, Matrix,
    MultFamilySpec, ProofOutcome, QuadraticRule, RuleForm,
};
use qrules::{
    quantum_integer, rule_add_zero, rule_affine, rule_canonical, rule_classify, rule_expand,
    rule_sides, rule_verify, zero_identity, zero_verify, Error, LinearRule, Poly, RatFunc, RingCtx,
    Scalar, TabulatedRule,
};

fn rings() -> [RingCtx; 3] {
    [
        RingCtx::integers(),
        RingCtx::rationals(),
        RingCtx::prime_field(5).unwrap(),
    ]
}

fn random_scalar(rng: &mut ChaCha8Rng, ctx: &RingCtx) -> Scalar {
    if *ctx == RingCtx::rationals() {
        Scalar::ratio(ctx, rng.gen_range(-9..=9), rng.gen_range(1..=4)).unwrap()
    } else {
        Scalar::from_i64(ctx, rng.gen_range(-20..=20))
    }
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &RingCtx, max_deg: usize) -> Poly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| random_scalar(rng, ctx)).collect();
    Poly::new(ctx, coeffs).unwrap()
}

#[test]
fn canonical_rules_verify_and_classify() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for ctx in rings() {
        for _ in 0..50 {
            let z = random_poly(&mut rng, &ctx, 8);
            let rule = rule_canonical(z.clone());
            assert!(
                rule_verify(&rule, 32, 32).unwrap().verified,
                "z = {z} over {ctx}"
            );
            let (u1, v1) = rule_expand(&rule, 1, 1).unwrap();
            assert_eq!(rule_classify(&u1, &v1).unwrap(), z);
        }
    }
}

#[test]
fn zero_identities_verify_over_every_ring() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for ctx in rings() {
        for _ in 0..10 {
            let z = random_poly(&mut rng, &ctx, 8);
            assert!(zero_verify(&zero_identity(z), 32, 32).unwrap().verified);
        }
    }
}

#[test]
fn combinations_are_linear_in_z() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let ctx = RingCtx::rationals();
    for _ in 0..40 {
        let k = rng.gen_range(1..=4);
        let zs: Vec<Poly> = (0..k).map(|_| random_poly(&mut rng, &ctx, 6)).collect();
        let mut alphas: Vec<Scalar> = (0..k - 1).map(|_| random_scalar(&mut rng, &ctx)).collect();
        let rest = alphas
            .iter()
            .fold(Scalar::one(&ctx), |acc, a| acc.sub(a).unwrap());
        alphas.push(rest);
        let rules: Vec<LinearRule> = zs.iter().cloned().map(rule_canonical).collect();
        let combined = rule_affine(&rules, &alphas).unwrap();
        let expected = zs
            .iter()
            .zip(&alphas)
            .fold(Poly::zero(&ctx), |acc, (z, a)| &acc + &z.scale(a).unwrap());
        assert_eq!(combined.z(), Some(&expected));
        assert!(rule_verify(&combined, 8, 8).unwrap().verified);

        let w = random_poly(&mut rng, &ctx, 6);
        let shifted = rule_add_zero(&rules[0], &zero_identity(w.clone())).unwrap();
        assert_eq!(shifted.z(), Some(&(&zs[0] + &w)));
    }
    // weights must sum to one
    let rules = [rule_canonical(Poly::zero(&ctx))];
    assert!(matches!(
        rule_affine(&rules, &[Scalar::from_i64(&ctx, 2)]),
        Err(Error::AffineSumNotOne { .. })
    ));
}

#[test]
fn counterexamples_are_self_certifying() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let ctx = RingCtx::integers();
    for _ in 0..25 {
        let z = random_poly(&mut rng, &ctx, 4);
        let canon = rule_canonical(z.clone());
        let bad = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let bump = Poly::q_pow(&ctx, rng.gen_range(0..4));
        let tab = TabulatedRule::from_fn(&ctx, 6, |m, n| {
            let (u, v) = rule_expand(&canon, m, n).unwrap();
            if (m, n) == bad {
                (&u + &bump, v)
            } else {
                (u, v)
            }
        })
        .unwrap();
        let rule = LinearRule::Tabulated(tab);
        let report = rule_verify(&rule, 6, 6).unwrap();
        let c = report.counterexample.expect("perturbed table must fail");
        assert_eq!((c.m, c.n), bad);
        let (lhs, rhs) = rule_sides(&rule, c.m, c.n).unwrap();
        assert_eq!((lhs, rhs), (c.lhs.clone(), c.rhs.clone()));
        assert_ne!(c.lhs, c.rhs);
        assert!(rule.canonical_z().is_err());
    }
}

#[test]
fn linear_equation_converse_spot_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let ctx = RingCtx::rationals();
    for _ in 0..30 {
        let rule = rule_canonical(random_poly(&mut rng, &ctx, 8));
        let h = random_poly(&mut rng, &ctx, 4);
        let mut seq: Vec<Poly> = (1..=8)
            .map(|n| fe_linear_solution(&h, n).unwrap())
            .collect();
        assert!(fe_linear_verify(&rule, &seq, 4, 4).unwrap().verified);
        assert_eq!(fe_linear_recover(&rule, &h, 8).unwrap(), seq);
        seq[2] = &seq[2] + &Poly::one(&ctx);
        assert!(!fe_linear_verify(&rule, &seq, 4, 4).unwrap().verified);
    }
}

#[test]
fn random_multiplicative_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let ctx = RingCtx::rationals();
    for _ in 0..10 {
        let lambda: BTreeMap<u64, Scalar> = [2u64, 3, 5, 7]
            .into_iter()
            .map(|p| {
                let num = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
                (p, Scalar::ratio(&ctx, num, rng.gen_range(1..=3)).unwrap())
            })
            .collect();
        let mut exponents = BTreeMap::new();
        for r in 1..=3usize {
            if rng.gen_bool(0.6) {
                exponents.insert(r, rng.gen_range(-2i64..=2));
            }
        }
        let t0 = rng.gen_range(-2..=2);
        let spec =
            MultFamilySpec::new(&ctx, lambda, Some(Scalar::one(&ctx)), t0, exponents).unwrap();
        let report = mult_verify(|k| mult_family(&spec, k), 12, 12).unwrap();
        assert!(report.verified, "{spec:?}");
    }
}

#[test]
fn family_members_match_direct_construction() {
    // λ(n)·q^{t0(n−1)}·∏[n]_{q^r}^{t_r} built and reduced without factoring
    let ctx = RingCtx::rationals();
    let lambda: BTreeMap<u64, Scalar> = [
        (2, Scalar::from_i64(&ctx, -1)),
        (3, Scalar::ratio(&ctx, 1, 2).unwrap()),
    ]
    .into_iter()
    .collect();
    let exponents: BTreeMap<usize, i64> = [(1, 1), (2, -2), (4, 1)].into_iter().collect();
    let spec =
        MultFamilySpec::new(&ctx, lambda, Some(Scalar::one(&ctx)), -1, exponents.clone()).unwrap();
    for n in 1..=12 {
        let mut num = Poly::constant(&spec.lambda(n).unwrap());
        let mut den = Poly::q_pow(&ctx, n - 1);
        for (&r, &t) in &exponents {
            let f = quantum_integer(n, &ctx)
                .unwrap()
                .subst_power(r)
                .unwrap()
                .pow(t.unsigned_abs() as u32);
            if t > 0 {
                num = &num * &f;
            } else {
                den = &den * &f;
            }
        }
        assert_eq!(
            mult_family(&spec, n).unwrap(),
            RatFunc::new(num, den).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn quadratic_closed_forms_over_a_prime_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let ctx = RingCtx::prime_field(101).unwrap();
    for rule in [QuadraticRule::Subtractive, QuadraticRule::Weighted] {
        for _ in 0..10 {
            let f1 = random_poly(&mut rng, &ctx, 4);
            let seq: Vec<Poly> = (1..=12)
                .map(|n| quad_closed_form(rule, &f1, n).unwrap())
                .collect();
            for m in 1..12 {
                for n in 1..=12 - m {
                    assert_eq!(
                        quad_rule_apply(rule, &seq[m - 1], &seq[n - 1], m, n).unwrap(),
                        seq[m + n - 1]
                    );
                }
            }
        }
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, ctx: &RingCtx, rows: usize, cols: usize) -> Matrix {
    // low rank now and then, so every outcome shows up
    let rank_cap = rng.gen_range(1..=rows.min(cols));
    let basis: Vec<Vec<Scalar>> = (0..rank_cap)
        .map(|_| (0..cols).map(|_| random_scalar(rng, ctx)).collect())
        .collect();
    let data = (0..rows)
        .map(|_| {
            let w: Vec<Scalar> = (0..rank_cap).map(|_| random_scalar(rng, ctx)).collect();
            (0..cols)
                .map(|j| {
                    basis
                        .iter()
                        .zip(&w)
                        .fold(Scalar::zero(ctx), |acc, (row, c)| {
                            acc.add(&row[j].mul(c).unwrap()).unwrap()
                        })
                })
                .collect()
        })
        .collect();
    Matrix::from_scalars(ctx, data).unwrap()
}

#[test]
fn linear_solver_results_satisfy_the_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    let mut seen = [0usize; 3];
    for ctx in [RingCtx::rationals(), RingCtx::prime_field(7).unwrap()] {
        for _ in 0..150 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let a = random_matrix(&mut rng, &ctx, rows, cols);
            let b: Vec<Scalar> = (0..rows).map(|_| random_scalar(&mut rng, &ctx)).collect();
            let r = rank(&a).unwrap();
            match linsolve_exact(&a, &b).unwrap() {
                LinearSolution::UniqueSolution(x) => {
                    seen[0] += 1;
                    assert_eq!(a.mul_vec(&x).unwrap(), b);
                    assert_eq!(r, cols);
                }
                LinearSolution::AffineSpace {
                    particular,
                    nullspace,
                } => {
                    seen[1] += 1;
                    assert_eq!(a.mul_vec(&particular).unwrap(), b);
                    assert_eq!(nullspace.len(), cols - r);
                    for v in &nullspace {
                        assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
                    }
                }
                LinearSolution::Inconsistent { certificate } => {
                    seen[2] += 1;
                    assert!(a
                        .transpose()
                        .mul_vec(&certificate)
                        .unwrap()
                        .iter()
                        .all(Scalar::is_zero));
                    let ctb = certificate
                        .iter()
                        .zip(&b)
                        .fold(Scalar::zero(&ctx), |acc, (c, y)| {
                            acc.add(&c.mul(y).unwrap()).unwrap()
                        });
                    assert!(!ctb.is_zero());
                }
            }
        }
    }
    assert!(seen.iter().all(|&k| k > 0), "outcome counts {seen:?}");
}

/// Σ_{d=2}^{k} φ(d), the degree of lcm([2]_q, ..., [k]_q).
fn totient_sum(k: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (2..=k)
        .map(|d| (1..=d).filter(|&j| gcd(j, d) == 1).count())
        .sum()
}

#[test]
fn prover_outcomes_follow_the_degree_bound() {
    let qq = RingCtx::rationals();
    for mm in 2..=4 {
        for nn in 2..=4 {
            let k = mm.max(nn);
            for d in 0..=7 {
                let zero_nm = prove_bounded(RuleForm::ZeroNM, d, mm, nn, &qq).unwrap();
                assert_eq!(
                    zero_nm.dimension(),
                    Some((d + 2).saturating_sub(k)),
                    "zero_nm D={d} M={mm} N={nn}"
                );

                let zero_mn = prove_bounded(RuleForm::ZeroMN, d, mm, nn, &qq).unwrap();
                assert_eq!(
                    zero_mn.dimension(),
                    Some((d + 1).saturating_sub(totient_sum(k))),
                    "zero_mn D={d} M={mm} N={nn}"
                );

                let zero_mm = prove_bounded(RuleForm::ZeroMM, d, mm, nn, &qq).unwrap();
                assert!(zero_mm.is_zero_only());

                let add_mn = prove_bounded(RuleForm::AddMN, d, mm, nn, &qq).unwrap();
                assert!(matches!(add_mn.outcome, ProofOutcome::Infeasible { .. }));

                let add_mm = prove_bounded(RuleForm::AddMM, d, mm, nn, &qq).unwrap();
                if d >= mm {
                    let ProofOutcome::Unique { witness } = &add_mm.outcome else {
                        panic!("add_mm D={d} M={mm} N={nn}: {:?}", add_mm.outcome);
                    };
                    for m in 1..=mm {
                        assert!(witness.first[m - 1].is_one());
                        assert_eq!(witness.second[m - 1], Poly::q_pow(&qq, m));
                    }
                } else {
                    assert!(matches!(add_mm.outcome, ProofOutcome::Infeasible { .. }));
                }

                for r in [&zero_nm, &zero_mn, &zero_mm, &add_mn, &add_mm] {
                    assert!(r.recheck(&qq).unwrap(), "{:?} D={d} M={mm} N={nn}", r.form);
                }
            }
        }
    }
}

#[test]
fn add_nm_solutions_are_canonical_rules() {
    let qq = RingCtx::rationals();
    let report = prove_bounded(RuleForm::AddNM, 7, 3, 4, &qq).unwrap();
    let ProofOutcome::SolutionSpace {
        particular, basis, ..
    } = &report.outcome
    else {
        panic!("expected a solution space");
    };
    let mut candidates = vec![particular.clone()];
    for b in basis {
        let mut s = particular.clone();
        for (x, y) in s
            .first
            .iter_mut()
            .zip(&b.first)
            .chain(s.second.iter_mut().zip(&b.second))
        {
            *x = &*x + y;
        }
        candidates.push(s);
    }
    for s in candidates {
        let z = &s.first[0] - &Poly::one(&qq);
        let rule = rule_canonical(z);
        for n in 1..=4 {
            assert_eq!(rule_expand(&rule, 1, n).unwrap().0, s.first[n - 1]);
        }
        for m in 1..=3 {
            assert_eq!(rule_expand(&rule, m, 1).unwrap().1, s.second[m - 1]);
        }
        assert!(rule_verify(&rule, 3, 4).unwrap().verified);
    }
    assert!(report.recheck(&qq).unwrap());
}

#[test]
fn prover_over_a_prime_field_and_integers() {
    let f7 = RingCtx::prime_field(7).unwrap();
    let r = prove_bounded(RuleForm::AddMM, 6, 3, 3, &f7).unwrap();
    assert!(matches!(r.outcome, ProofOutcome::Unique { .. }));
    assert!(r.recheck(&f7).unwrap());
    let r = prove_bounded(RuleForm::AddMN, 6, 3, 3, &f7).unwrap();
    assert!(r.recheck(&f7).unwrap());
    // integers are lifted to the rationals
    let r = prove_bounded(RuleForm::ZeroNM, 5, 3, 3, &RingCtx::integers()).unwrap();
    assert_eq!(r.dimension(), Some(4));
    assert!(matches!(
        prove_bounded(RuleForm::AddMM, 5, 1, 3, &RingCtx::rationals()),
        Err(Error::RangeTooSmall { m: 1, n: 3 })
    ));
}
