//! Sparse matrix of the ring Hamiltonian
//!
//!   H(J) = sum_j [ sigma_j . sigma_{j+1} + J sigma_j . sigma_{j+2} ],
//!
//! with periodic indices (site L is site 0) and Pauli matrices throughout,
//! restricted to one fixed-magnetization sector.
//!
//! In the z basis each bond contributes +-1 to the diagonal and, on an
//! antiparallel pair, an off-diagonal amplitude of 2 (nearest) or 2J
//! (next-nearest) to the pair-flipped configuration. The bond sum runs over
//! all L values of j unconditionally; for L = 4 the next-nearest bonds cover
//! the two diagonals twice, and the duplicate entries are kept as stored.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::basis::BasisSector;
use crate::error::{Error, Result};

/// Row-compressed sector Hamiltonian. Immutable after build; `apply` is pure
/// and may run concurrently on a shared instance.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    l: usize,
    j: f64,
    sector: Arc<BasisSector>,
    diag: Vec<f64>,
    row_start: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

/// Build H(J) in the given sector.
pub fn build(l: usize, j: f64, sector: Arc<BasisSector>) -> Result<SparseHamiltonian> {
    if sector.l() != l {
        return Err(Error::Parameter(format!(
            "sector was enumerated for L={}, not L={l}",
            sector.l()
        )));
    }
    if !j.is_finite() {
        return Err(Error::Parameter("coupling J must be finite".into()));
    }

    let dim = sector.dim();
    let mut diag = vec![0.0; dim];
    let mut row_start = Vec::with_capacity(dim + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();

    for (row, &s) in sector.states().iter().enumerate() {
        row_start.push(cols.len());
        let mut d = 0.0;
        for b in 0..l {
            for (step, amp) in [(1usize, 2.0), (2usize, 2.0 * j)] {
                let partner = (b + step) % l;
                let zz = s.sz(b) * s.sz(partner);
                d += if step == 1 { zz } else { j * zz };
                if zz < 0.0 && amp != 0.0 {
                    let flipped = s.flip_pair(b, partner);
                    let col = sector
                        .index_of(flipped)
                        .expect("pair flip stays inside the sector");
                    cols.push(col as u32);
                    vals.push(amp);
                }
            }
        }
        diag[row] = d;
    }
    row_start.push(cols.len());

    Ok(SparseHamiltonian {
        l,
        j,
        sector,
        diag,
        row_start,
        cols,
        vals,
    })
}

impl SparseHamiltonian {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn sector(&self) -> &Arc<BasisSector> {
        &self.sector
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    /// H v, exact and deterministic for a fixed storage order.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::Parameter(format!(
                "vector length {} does not match sector dimension {}",
                v.len(),
                self.dim()
            )));
        }
        let mut out = vec![0.0; v.len()];
        self.apply_into(v, &mut out);
        Ok(out)
    }

    /// Hot-path matvec; lengths are the caller's responsibility.
    pub(crate) fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        debug_assert_eq!(v.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        for row in 0..self.dim() {
            let mut acc = self.diag[row] * v[row];
            for k in self.row_start[row]..self.row_start[row + 1] {
                acc += self.vals[k] * v[self.cols[k] as usize];
            }
            out[row] = acc;
        }
    }

    /// Dense copy, used by the small-sector eigensolver and by tests.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for row in 0..n {
            m[(row, row)] = self.diag[row];
            for k in self.row_start[row]..self.row_start[row + 1] {
                m[(row, self.cols[k] as usize)] += self.vals[k];
            }
        }
        m
    }
}
