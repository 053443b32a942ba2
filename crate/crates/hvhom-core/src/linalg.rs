//! Sparse exact Gaussian elimination over the Gaussian rationals.
//!
//! Rows arrive incrementally and are reduced against the pivots collected so
//! far, so heavily redundant systems (the identity grids produce many
//! duplicate rows) stay small. Everything is exact; there is no pivoting
//! heuristic beyond "smallest column first".

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("inconsistent linear system{}", .context.as_deref().map(|c| format!(" ({c})")).unwrap_or_default())]
    Inconsistent { context: Option<String> },
    #[error("underdetermined linear system: rank {rank} of {cols} unknowns")]
    Underdetermined { rank: usize, cols: usize },
}

/// One row `Σ coeffs[c]·x_c = rhs` with only nonzero coefficients stored.
#[derive(Clone, Debug, Default)]
pub struct Row {
    pub coeffs: BTreeMap<usize, Scalar>,
    pub rhs: Scalar,
}

impl Row {
    pub fn new() -> Self {
        Row {
            coeffs: BTreeMap::new(),
            rhs: Scalar::zero(),
        }
    }

    pub fn set(&mut self, col: usize, value: Scalar) {
        if value.is_zero() {
            self.coeffs.remove(&col);
        } else {
            self.coeffs.insert(col, value);
        }
    }

    pub fn add_to(&mut self, col: usize, value: &Scalar) {
        let cur = self
            .coeffs
            .remove(&col)
            .unwrap_or_else(Scalar::zero)
            .add(value);
        if !cur.is_zero() {
            self.coeffs.insert(col, cur);
        }
    }

    fn axpy(&mut self, factor: &Scalar, other: &Row) {
        for (c, v) in &other.coeffs {
            self.add_to(*c, &factor.mul(v));
        }
        self.rhs = self.rhs.add(&factor.mul(&other.rhs));
    }

    fn scale(&mut self, factor: &Scalar) {
        for v in self.coeffs.values_mut() {
            *v = v.mul(factor);
        }
        self.rhs = self.rhs.mul(factor);
    }
}

/// Incremental row-echelon reducer keyed by pivot column.
pub struct RowReducer {
    ncols: usize,
    pivots: BTreeMap<usize, Row>,
}

impl RowReducer {
    pub fn new(ncols: usize) -> Self {
        RowReducer {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the current pivots; install it as a new pivot if
    /// something survives. An empty row with nonzero rhs is inconsistent;
    /// `context` labels the offending row in the error.
    pub fn add_row(&mut self, mut row: Row, context: Option<&str>) -> Result<(), SolveError> {
        loop {
            let Some((&lead, _)) = row.coeffs.first_key_value() else {
                if row.rhs.is_zero() {
                    return Ok(());
                }
                return Err(SolveError::Inconsistent {
                    context: context.map(str::to_owned),
                });
            };
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let factor = row.coeffs[&lead].neg();
                    row.axpy(&factor, pivot);
                }
                None => {
                    let inv = row.coeffs[&lead]
                        .inv()
                        .expect("leading coefficient is nonzero");
                    row.scale(&inv);
                    self.pivots.insert(lead, row);
                    return Ok(());
                }
            }
        }
    }

    /// Eliminate pivot columns from all other pivot rows (reduced echelon form).
    fn back_eliminate(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &col in cols.iter().rev() {
            let pivot_row = self.pivots[&col].clone();
            for (&other, row) in self.pivots.iter_mut() {
                if other == col {
                    continue;
                }
                if let Some(v) = row.coeffs.get(&col).cloned() {
                    row.axpy(&v.neg(), &pivot_row);
                }
            }
        }
    }

    /// Unique solution of the accumulated system; errors if rank-deficient.
    pub fn solve_unique(mut self) -> Result<Vec<Scalar>, SolveError> {
        if self.pivots.len() < self.ncols {
            return Err(SolveError::Underdetermined {
                rank: self.pivots.len(),
                cols: self.ncols,
            });
        }
        self.back_eliminate();
        let mut out = vec![Scalar::zero(); self.ncols];
        for (&col, row) in &self.pivots {
            out[col] = row.rhs.clone();
        }
        Ok(out)
    }

    /// The accumulated rows as a reduced row-echelon basis of their span,
    /// in ascending pivot-column order. Right-hand sides are discarded;
    /// intended for homogeneous row-space reductions.
    pub fn into_row_basis(mut self) -> Vec<BTreeMap<usize, Scalar>> {
        self.back_eliminate();
        self.pivots.into_values().map(|row| row.coeffs).collect()
    }

    /// Basis of the nullspace of the accumulated homogeneous system, one
    /// vector per free column, in ascending free-column order.
    pub fn nullspace(mut self) -> Vec<Vec<Scalar>> {
        self.back_eliminate();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.ncols];
            v[free] = Scalar::one();
            for (&col, row) in &self.pivots {
                if let Some(c) = row.coeffs.get(&free) {
                    v[col] = c.neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}
