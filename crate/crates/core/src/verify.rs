//! Grid verification of identities indexed by `(m, n)`.

use rayon::prelude::*;

use crate::error::Result;

/// The first failing index pair, with both sides of the identity there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample<T> {
    pub m: usize,
    pub n: usize,
    pub lhs: T,
    pub rhs: T,
}

/// Outcome of checking an identity on `1 ≤ m ≤ M`, `1 ≤ n ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport<T> {
    pub verified: bool,
    pub counterexample: Option<Counterexample<T>>,
    pub range: (usize, usize),
}

impl<T> VerifyReport<T> {
    pub fn range_text(&self) -> String {
        format!("1 <= m <= {}, 1 <= n <= {}", self.range.0, self.range.1)
    }
}

/// Evaluates `check(m, n)` on the whole grid in parallel and reports the
/// lexicographically smallest `(m, n)` where the two returned sides differ.
/// Errors from `check` are propagated.
pub fn check_grid<T, F>(max_m: usize, max_n: usize, check: F) -> Result<VerifyReport<T>>
where
    T: PartialEq + Send,
    F: Fn(usize, usize) -> Result<(T, T)> + Sync,
{
    let first = first_failure(max_m, max_n, |m, n| {
        let (lhs, rhs) = check(m, n)?;
        Ok((lhs != rhs).then(|| Counterexample { m, n, lhs, rhs }))
    })?;
    Ok(report(first, max_m, max_n))
}

/// Like [`check_grid`], but decides each cell with `holds` and builds the two
/// sides with `sides` only for the reported counterexample. Useful when
/// equality can be tested more cheaply than the sides can be normalized.
pub fn check_grid_by<T, H, S>(
    max_m: usize,
    max_n: usize,
    holds: H,
    sides: S,
) -> Result<VerifyReport<T>>
where
    T: Send,
    H: Fn(usize, usize) -> Result<bool> + Sync,
    S: Fn(usize, usize) -> Result<(T, T)>,
{
    let first = first_failure(max_m, max_n, |m, n| Ok((!holds(m, n)?).then_some((m, n))))?;
    let counterexample = match first {
        Some((m, n)) => {
            let (lhs, rhs) = sides(m, n)?;
            Some(Counterexample { m, n, lhs, rhs })
        }
        None => None,
    };
    Ok(report(counterexample, max_m, max_n))
}

fn report<T>(
    counterexample: Option<Counterexample<T>>,
    max_m: usize,
    max_n: usize,
) -> VerifyReport<T> {
    VerifyReport {
        verified: counterexample.is_none(),
        counterexample,
        range: (max_m, max_n),
    }
}

/// The first `Some` in row-major order; every cell is evaluated.
fn first_failure<R, F>(max_m: usize, max_n: usize, cell: F) -> Result<Option<R>>
where
    R: Send,
    F: Fn(usize, usize) -> Result<Option<R>> + Sync,
{
    let results: Vec<Result<Option<R>>> = (0..max_m * max_n)
        .into_par_iter()
        .map(|i| cell(i / max_n + 1, i % max_n + 1))
        .collect();
    for r in results {
        if let Some(found) = r? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}
