//! Exact Gaussian elimination over a field.

use crate::error::{Error, Result};
use crate::ring::{Elem, RingCtx, Scalar};

/// A dense matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ctx: RingCtx,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Elem>>,
}

impl Matrix {
    pub fn zeros(ctx: &RingCtx, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![vec![ctx.zero(); cols]; rows],
        }
    }

    pub fn from_scalars(ctx: &RingCtx, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .into_iter()
            .map(|row| {
                if row.len() != cols {
                    return Err(Error::DimensionMismatch("ragged matrix rows".into()));
                }
                row.into_iter()
                    .map(|s| {
                        if s.ctx() == ctx {
                            Ok(s.into_value())
                        } else {
                            Err(Error::MixedContexts)
                        }
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<Elem>>>>()?;
        Ok(Matrix {
            ctx: ctx.clone(),
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_i64s(ctx: &RingCtx, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_scalars(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_i64(ctx, v)).collect())
                .collect(),
        )
    }

    pub fn identity(ctx: &RingCtx, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m.data[i][i] = ctx.one();
        }
        m
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        Scalar::from_parts(&self.ctx, self.data[r][c].clone())
    }

    pub(crate) fn set_elem(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r][c] = v;
    }

    pub(crate) fn elem(&self, r: usize, c: usize) -> &Elem {
        &self.data[r][c]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ctx, self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                t.data[c][r] = v.clone();
            }
        }
        t
    }

    /// `A·x`.
    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        if x.iter().any(|s| s.ctx() != &self.ctx) {
            return Err(Error::MixedContexts);
        }
        let ctx = &self.ctx;
        Ok(self
            .data
            .iter()
            .map(|row| {
                let acc = row.iter().zip(x).fold(ctx.zero(), |acc, (a, b)| {
                    if ctx.is_zero(a) {
                        acc
                    } else {
                        ctx.add(&acc, &ctx.mul(a, b.value()))
                    }
                });
                Scalar::from_parts(ctx, acc)
            })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    UniqueSolution(Vec<Scalar>),
    /// `particular + span(nullspace)`.
    AffineSpace {
        particular: Vec<Scalar>,
        nullspace: Vec<Vec<Scalar>>,
    },
    /// A row combination `c` with `cᵀA = 0` and `cᵀb ≠ 0`.
    Inconsistent {
        certificate: Vec<Scalar>,
    },
}

/// Reduced row echelon form of `[A | b]`. Returns the reduced rows and
/// the pivot column of each nonzero row.
pub(crate) fn rref_rows(
    ctx: &RingCtx,
    mut rows: Vec<Vec<Elem>>,
    cols: usize,
) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !ctx.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ctx.inv(&rows[r][c]).expect("field pivot");
        let support: Vec<usize> = (c..rows[r].len())
            .filter(|&j| !ctx.is_zero(&rows[r][j]))
            .collect();
        for &j in &support {
            rows[r][j] = ctx.mul(&rows[r][j], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || ctx.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = ctx.sub(&row[j], &ctx.mul(&factor, &pivot_row[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Solves `A·x = b` exactly.
pub fn linsolve_exact(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution> {
    let ctx = a.ctx();
    if !ctx.is_field() {
        return Err(Error::RequiresField);
    }
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    if b.iter().any(|s| s.ctx() != ctx) {
        return Err(Error::MixedContexts);
    }
    let n = a.cols;
    let augmented: Vec<Vec<Elem>> = a
        .data
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.value().clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref_rows(ctx, augmented, n + 1);

    if pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent {
            certificate: certificate(a, b)?,
        });
    }

    let scalar = |e: &Elem| Scalar::from_parts(ctx, e.clone());
    let mut particular = vec![Scalar::zero(ctx); n];
    for (row, &pc) in reduced.iter().zip(&pivots) {
        particular[pc] = scalar(&row[n]);
    }
    if pivots.len() == n {
        return Ok(LinearSolution::UniqueSolution(particular));
    }
    let mut is_pivot = vec![false; n];
    for &pc in &pivots {
        is_pivot[pc] = true;
    }
    let nullspace = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![Scalar::zero(ctx); n];
            v[free] = Scalar::one(ctx);
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = scalar(&ctx.neg(&row[free]));
            }
            v
        })
        .collect();
    Ok(LinearSolution::AffineSpace {
        particular,
        nullspace,
    })
}

/// A vector `c` with `Aᵀc = 0` and `bᵀc = 1`, found by solving that
/// (consistent) system in turn.
fn certificate(a: &Matrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    let ctx = a.ctx();
    let mut rows = a.transpose().data;
    rows.push(b.iter().map(|s| s.value().clone()).collect());
    let system = Matrix {
        ctx: ctx.clone(),
        rows: rows.len(),
        cols: a.rows,
        data: rows,
    };
    let mut rhs = vec![Scalar::zero(ctx); a.cols];
    rhs.push(Scalar::one(ctx));
    match linsolve_exact(&system, &rhs)? {
        LinearSolution::UniqueSolution(c) => Ok(c),
        LinearSolution::AffineSpace { particular, .. } => Ok(particular),
        LinearSolution::Inconsistent { .. } => {
            unreachable!("an inconsistent system always has a certificate")
        }
    }
}

/// Rank of `A` (number of pivots in its echelon form).
pub fn rank(a: &Matrix) -> Result<usize> {
    if !a.ctx.is_field() {
        return Err(Error::RequiresField);
    }
    Ok(rref_rows(&a.ctx, a.data.clone(), a.cols).1.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> RingCtx {
        RingCtx::rationals()
    }

    fn vec_i64(ctx: &RingCtx, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_i64(ctx, x)).collect()
    }

    #[test]
    fn identity_gives_b() {
        let a = Matrix::identity(&qq(), 3);
        let b = vec_i64(&qq(), &[4, -1, 7]);
        assert_eq!(
            linsolve_exact(&a, &b).unwrap(),
            LinearSolution::UniqueSolution(b)
        );
    }

    #[test]
    fn zero_matrix_full_nullspace() {
        let a = Matrix::zeros(&qq(), 2, 3);
        let b = vec_i64(&qq(), &[0, 0]);
        match linsolve_exact(&a, &b).unwrap() {
            LinearSolution::AffineSpace {
                particular,
                nullspace,
            } => {
                assert!(particular.iter().all(Scalar::is_zero));
                assert_eq!(nullspace.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistent_with_certificate() {
        let a = Matrix::from_i64s(&qq(), &[&[1, 1], &[2, 2]]).unwrap();
        let b = vec_i64(&qq(), &[1, 3]);
        let LinearSolution::Inconsistent { certificate } = linsolve_exact(&a, &b).unwrap() else {
            panic!("expected inconsistency");
        };
        let cta = a.transpose().mul_vec(&certificate).unwrap();
        assert!(cta.iter().all(Scalar::is_zero));
        let ctb = b
            .iter()
            .zip(&certificate)
            .fold(Scalar::zero(&qq()), |acc, (x, y)| {
                acc.add(&x.mul(y).unwrap()).unwrap()
            });
        assert!(!ctb.is_zero());
    }

    #[test]
    fn affine_solution_over_prime_field() {
        let f7 = RingCtx::prime_field(7).unwrap();
        let a = Matrix::from_i64s(&f7, &[&[1, 2, 3], &[2, 4, 1]]).unwrap();
        let b = vec_i64(&f7, &[1, 5]);
        let LinearSolution::AffineSpace {
            particular,
            nullspace,
        } = linsolve_exact(&a, &b).unwrap()
        else {
            panic!("expected a solution space");
        };
        assert_eq!(a.mul_vec(&particular).unwrap(), b);
        assert_eq!(nullspace.len(), 1);
        assert!(a
            .mul_vec(&nullspace[0])
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
    }

    #[test]
    fn errors() {
        let zz = RingCtx::integers();
        let a = Matrix::identity(&zz, 2);
        assert_eq!(
            linsolve_exact(&a, &vec_i64(&zz, &[1, 1])),
            Err(Error::RequiresField)
        );
        let a = Matrix::identity(&qq(), 2);
        assert!(matches!(
            linsolve_exact(&a, &vec_i64(&qq(), &[1])),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            Matrix::from_i64s(&qq(), &[&[1, 2], &[3]]),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
