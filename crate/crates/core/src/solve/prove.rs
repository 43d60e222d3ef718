//! Bounded-degree prover for the index patterns of linear rules and zero
//! identities.
//!
//! Every form reads `A_i·[m]_q + B_j·[n]_q = target` for all `1 ≤ m ≤ M`,
//! `1 ≤ n ≤ N`, where each of `A` and `B` is indexed by either `m` or `n`
//! and the target is `[m+n]_q` (addition rules) or `0` (zero identities).
//! Taking every unknown polynomial to have degree at most `D`, the
//! coefficients of each power of `q` give a linear system over the field;
//! its exact solution is reported as a unique witness, an affine solution
//! space, or an infeasibility certificate. All conclusions hold for the
//! stated degree bound and index range only.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{quantum_integer, Degree, Poly};
use crate::ring::{Elem, RingCtx, Scalar};
use crate::solve::linsolve::{linsolve_exact, rref_rows, LinearSolution, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Index {
    M,
    N,
}

impl Index {
    fn pick(self, m: usize, n: usize) -> usize {
        match self {
            Index::M => m,
            Index::N => n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleForm {
    /// `[m+n] = u_m[m] + v_m[n]`
    AddMM,
    /// `[m+n] = u_m[m] + v_n[n]`
    AddMN,
    /// `[m+n] = u_n[m] + v_m[n]`
    AddNM,
    /// `s_n[m] + t_m[n] = 0`
    ZeroNM,
    /// `s_m[m] + t_m[n] = 0`
    ZeroMM,
    /// `s_m[m] + t_n[n] = 0`
    ZeroMN,
}

impl RuleForm {
    pub const ALL: [RuleForm; 6] = [
        RuleForm::AddMM,
        RuleForm::AddMN,
        RuleForm::AddNM,
        RuleForm::ZeroNM,
        RuleForm::ZeroMM,
        RuleForm::ZeroMN,
    ];

    /// Which index each of the two coefficient sequences follows.
    pub fn pattern(self) -> (Index, Index) {
        match self {
            RuleForm::AddMM | RuleForm::ZeroMM => (Index::M, Index::M),
            RuleForm::AddMN | RuleForm::ZeroMN => (Index::M, Index::N),
            RuleForm::AddNM | RuleForm::ZeroNM => (Index::N, Index::M),
        }
    }

    pub fn is_zero_identity(self) -> bool {
        matches!(self, RuleForm::ZeroNM | RuleForm::ZeroMM | RuleForm::ZeroMN)
    }

    pub fn names(self) -> (&'static str, &'static str) {
        if self.is_zero_identity() {
            ("s", "t")
        } else {
            ("u", "v")
        }
    }

    pub fn identity_text(self) -> String {
        let (a, b) = self.names();
        let idx = |i: Index| match i {
            Index::M => "m",
            Index::N => "n",
        };
        let (i, j) = self.pattern();
        let lhs = format!("{a}_{}*[m]_q + {b}_{}*[n]_q", idx(i), idx(j));
        if self.is_zero_identity() {
            format!("{lhs} = 0")
        } else {
            format!("[m+n]_q = {lhs}")
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleForm::AddMM => "add_mm",
            RuleForm::AddMN => "add_mn",
            RuleForm::AddNM => "add_nm",
            RuleForm::ZeroNM => "zero_nm",
            RuleForm::ZeroMM => "zero_mm",
            RuleForm::ZeroMN => "zero_mn",
        }
    }
}

impl fmt::Display for RuleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RuleForm::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown form '{s}'")))
    }
}

/// One scalar equation of the system: the coefficient of `q^k` in the
/// identity at `(m, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EquationLabel {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

/// The unknown sequences of one solution: `first[i]` and `second[i]` are
/// the coefficients with index `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequencePair {
    pub first: Vec<Poly>,
    pub second: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofOutcome {
    /// Exactly one solution within the degree bound.
    Unique { witness: SequencePair },
    /// `particular + span(basis)`. For the forms parameterized by one
    /// polynomial `z` (`add_nm`, `zero_nm`), `z_basis` spans the directions
    /// of `z`, in reduced echelon form.
    SolutionSpace {
        dimension: usize,
        particular: SequencePair,
        basis: Vec<SequencePair>,
        z_basis: Option<Vec<Poly>>,
    },
    /// A combination of equations reducing to `0 = value` with `value ≠ 0`.
    Infeasible {
        certificate: Vec<(EquationLabel, Scalar)>,
        value: Scalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReport {
    pub form: RuleForm,
    pub degree_bound: usize,
    pub range: (usize, usize),
    pub unknowns: usize,
    pub equations: usize,
    pub outcome: ProofOutcome,
}

impl ProofReport {
    /// Whether the only solution is the zero one (zero-identity forms).
    pub fn is_zero_only(&self) -> bool {
        match &self.outcome {
            ProofOutcome::Unique { witness } => witness
                .first
                .iter()
                .chain(&witness.second)
                .all(Poly::is_zero),
            _ => false,
        }
    }

    pub fn dimension(&self) -> Option<usize> {
        match &self.outcome {
            ProofOutcome::Unique { .. } => Some(0),
            ProofOutcome::SolutionSpace { dimension, .. } => Some(*dimension),
            ProofOutcome::Infeasible { .. } => None,
        }
    }

    /// Re-derives the conclusion independently of the elimination:
    /// witnesses and basis directions are substituted into the polynomial
    /// identity over the whole range; certificates are applied to a freshly
    /// built system.
    pub fn recheck(&self, ctx: &RingCtx) -> Result<bool> {
        let (mm, nn) = self.range;
        let within_bound = |s: &SequencePair| {
            s.first
                .iter()
                .chain(&s.second)
                .all(|p| p.degree() <= Degree::Finite(self.degree_bound))
        };
        let satisfies = |s: &SequencePair, homogeneous: bool| -> Result<bool> {
            for m in 1..=mm {
                for n in 1..=nn {
                    let (lhs, rhs) = form_sides(self.form, s, m, n, homogeneous, ctx)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        };
        match &self.outcome {
            ProofOutcome::Unique { witness } => {
                Ok(within_bound(witness) && satisfies(witness, false)?)
            }
            ProofOutcome::SolutionSpace {
                particular, basis, ..
            } => {
                if !within_bound(particular) || !satisfies(particular, false)? {
                    return Ok(false);
                }
                for b in basis {
                    if !within_bound(b) || !satisfies(b, true)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            ProofOutcome::Infeasible { certificate, value } => {
                let system = build_system(self.form, self.degree_bound, mm, nn, ctx)?;
                let mut c = vec![Scalar::zero(ctx); system.labels.len()];
                for (label, coeff) in certificate {
                    let Some(i) = system.labels.iter().position(|l| l == label) else {
                        return Ok(false);
                    };
                    c[i] = coeff.clone();
                }
                let cta = system.matrix.transpose().mul_vec(&c)?;
                let ctb = dot(&c, &system.rhs)?;
                Ok(cta.iter().all(Scalar::is_zero) && !ctb.is_zero() && &ctb == value)
            }
        }
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Result<Scalar> {
    let ctx = a
        .first()
        .map_or_else(RingCtx::rationals, |s| s.ctx().clone());
    a.iter()
        .zip(b)
        .try_fold(Scalar::zero(&ctx), |acc, (x, y)| acc.add(&x.mul(y)?))
}

/// Both sides of the form's identity at `(m, n)` for the given sequences.
fn form_sides(
    form: RuleForm,
    s: &SequencePair,
    m: usize,
    n: usize,
    homogeneous: bool,
    ctx: &RingCtx,
) -> Result<(Poly, Poly)> {
    let (i, j) = form.pattern();
    let a = &s.first[i.pick(m, n) - 1];
    let b = &s.second[j.pick(m, n) - 1];
    let lhs =
        a.checked_mul(&quantum_integer(m, ctx)?)? + b.checked_mul(&quantum_integer(n, ctx)?)?;
    let rhs = if form.is_zero_identity() || homogeneous {
        Poly::zero(ctx)
    } else {
        quantum_integer(m + n, ctx)?
    };
    Ok((lhs, rhs))
}

struct System {
    matrix: Matrix,
    rhs: Vec<Scalar>,
    labels: Vec<EquationLabel>,
    first_len: usize,
    second_len: usize,
}

fn build_system(
    form: RuleForm,
    degree: usize,
    mm: usize,
    nn: usize,
    ctx: &RingCtx,
) -> Result<System> {
    let (i, j) = form.pattern();
    let first_len = i.pick(mm, nn);
    let second_len = j.pick(mm, nn);
    let width = degree + 1;
    let unknowns = (first_len + second_len) * width;
    let first_var = |idx: usize, c: usize| (idx - 1) * width + c;
    let second_var = |idx: usize, c: usize| (first_len + idx - 1) * width + c;

    let mut labels = Vec::new();
    let mut entries: Vec<Vec<usize>> = Vec::new();
    let mut rhs = Vec::new();
    for m in 1..=mm {
        for n in 1..=nn {
            let top = (m + n - 1).max(degree + m.max(n) - 1);
            for k in 0..=top {
                let mut row = Vec::new();
                // coefficient of q^k in A·[m]_q: sum of a_c with k - m < c <= k
                for c in (k + 1).saturating_sub(m)..=k.min(degree) {
                    row.push(first_var(i.pick(m, n), c));
                }
                for c in (k + 1).saturating_sub(n)..=k.min(degree) {
                    row.push(second_var(j.pick(m, n), c));
                }
                let target = !form.is_zero_identity() && k < m + n;
                labels.push(EquationLabel { m, n, k });
                entries.push(row);
                rhs.push(if target {
                    Scalar::one(ctx)
                } else {
                    Scalar::zero(ctx)
                });
            }
        }
    }
    let mut matrix = Matrix::zeros(ctx, labels.len(), unknowns);
    for (r, row) in entries.iter().enumerate() {
        for &c in row {
            let v = ctx.add(matrix.elem(r, c), &ctx.one());
            matrix.set_elem(r, c, v);
        }
    }
    Ok(System {
        matrix,
        rhs,
        labels,
        first_len,
        second_len,
    })
}

fn split(sol: &[Scalar], sys: &System, degree: usize, ctx: &RingCtx) -> SequencePair {
    let width = degree + 1;
    let poly_at = |block: usize| {
        let coeffs = sol[block * width..(block + 1) * width].to_vec();
        Poly::new(ctx, coeffs).expect("solution lies in the field")
    };
    SequencePair {
        first: (0..sys.first_len).map(poly_at).collect(),
        second: (sys.first_len..sys.first_len + sys.second_len)
            .map(poly_at)
            .collect(),
    }
}

/// Reduced echelon basis of the span of `polys`, ordered by degree.
fn echelon_span(polys: &[Poly], ctx: &RingCtx) -> Vec<Poly> {
    let width = polys
        .iter()
        .filter_map(|p| p.degree().as_usize())
        .max()
        .map_or(0, |d| d + 1);
    // columns in descending degree so pivots sit on leading terms
    let rows: Vec<Vec<Elem>> = polys
        .iter()
        .map(|p| (0..width).rev().map(|k| p.coeff(k)).collect())
        .collect();
    let (reduced, pivots) = rref_rows(ctx, rows, width);
    let mut out: Vec<Poly> = reduced
        .into_iter()
        .take(pivots.len())
        .map(|row| {
            let coeffs: Vec<Scalar> = row
                .into_iter()
                .rev()
                .map(|e| Scalar::new(ctx, e).expect("field element"))
                .collect();
            Poly::new(ctx, coeffs).expect("field element")
        })
        .collect();
    out.sort_by_key(Poly::degree);
    out
}

/// Solves the form's coefficient system with unknown degrees `≤ degree` on
/// `1 ≤ m ≤ M`, `1 ≤ n ≤ N`, over the field `ctx` (ℤ is lifted to ℚ).
pub fn prove_bounded(
    form: RuleForm,
    degree: usize,
    max_m: usize,
    max_n: usize,
    ctx: &RingCtx,
) -> Result<ProofReport> {
    if max_m < 2 || max_n < 2 {
        return Err(Error::RangeTooSmall { m: max_m, n: max_n });
    }
    let ctx = match ctx {
        RingCtx::Integers => RingCtx::Rationals,
        c if c.is_field() => c.clone(),
        _ => return Err(Error::RequiresField),
    };
    let sys = build_system(form, degree, max_m, max_n, &ctx)?;
    let outcome = match linsolve_exact(&sys.matrix, &sys.rhs)? {
        LinearSolution::UniqueSolution(x) => ProofOutcome::Unique {
            witness: split(&x, &sys, degree, &ctx),
        },
        LinearSolution::AffineSpace {
            particular,
            nullspace,
        } => {
            let particular = split(&particular, &sys, degree, &ctx);
            let basis: Vec<SequencePair> = nullspace
                .iter()
                .map(|v| split(v, &sys, degree, &ctx))
                .collect();
            let z_basis = match form {
                RuleForm::AddNM | RuleForm::ZeroNM => {
                    // z = u_1 - 1 (resp. s_1); along a homogeneous direction it is u_1 (s_1)
                    let zs: Vec<Poly> = basis.iter().map(|b| b.first[0].clone()).collect();
                    Some(echelon_span(&zs, &ctx))
                }
                _ => None,
            };
            ProofOutcome::SolutionSpace {
                dimension: basis.len(),
                particular,
                basis,
                z_basis,
            }
        }
        LinearSolution::Inconsistent { certificate } => {
            let value = dot(&certificate, &sys.rhs)?;
            ProofOutcome::Infeasible {
                certificate: sys
                    .labels
                    .iter()
                    .zip(certificate)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| (*l, c))
                    .collect(),
                value,
            }
        }
    };
    Ok(ProofReport {
        form,
        degree_bound: degree,
        range: (max_m, max_n),
        unknowns: sys.matrix.cols(),
        equations: sys.matrix.rows(),
        outcome,
    })
}
