//! Lanczos iteration for the lowest eigenpair of a sector Hamiltonian.
//!
//! Full reorthogonalization against every stored Krylov vector: sector
//! dimensions here never exceed ~1000, so the quadratic cost is negligible
//! and ghost eigenvalues (which would corrupt degeneracy detection
//! downstream) cannot appear. Degenerate ground spaces are resolved by the
//! caller through repeated deflated runs.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hamiltonian::SparseHamiltonian;

#[derive(Debug, Clone)]
pub struct LanczosOptions {
    /// Accept when ||H x - rho x|| <= residual_tol * max(1, |rho|).
    pub residual_tol: f64,
    /// Hard cap on Krylov dimension (also capped by the sector dimension).
    pub max_iter: usize,
    /// Seed for the deterministic pseudo-random start vector.
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            residual_tol: 1e-10,
            max_iter: 600,
            seed: 0x5EED_1234_ABCD_0001,
        }
    }
}

/// Deterministic generator for start vectors.
pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [-0.5, 0.5).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    }
}

fn seeded_vector(dim: usize, seed: u64) -> DVector<f64> {
    let mut rng = SplitMix64(seed);
    DVector::from_fn(dim, |_, _| rng.next_f64())
}

fn project_out(v: &mut DVector<f64>, basis: &[DVector<f64>]) {
    for b in basis {
        let c = v.dot(b);
        v.axpy(-c, b, 1.0);
    }
}

/// Lowest eigenvalue of the symmetric tridiagonal matrix spelled by
/// `alphas`/`betas`, plus the matching Ritz coordinates.
fn tridiag_lowest(alphas: &[f64], betas: &[f64]) -> (f64, DVector<f64>) {
    let k = alphas.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alphas[i];
        if i + 1 < k {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let se = t.symmetric_eigen();
    let mut best = 0;
    for i in 1..k {
        if se.eigenvalues[i] < se.eigenvalues[best] {
            best = i;
        }
    }
    (se.eigenvalues[best], se.eigenvectors.column(best).into())
}

/// Lowest eigenpair of `h` restricted to the orthogonal complement of
/// `deflate`. With an empty deflation set this is the plain ground pair.
pub fn lowest_eigenpair(
    h: &SparseHamiltonian,
    deflate: &[DVector<f64>],
    opts: &LanczosOptions,
) -> Result<(f64, DVector<f64>)> {
    let dim = h.dim();
    if deflate.len() >= dim {
        return Err(Error::Parameter(
            "deflation set spans the whole sector".into(),
        ));
    }
    let max_k = (dim - deflate.len()).min(opts.max_iter.max(2));

    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(max_k);
    let mut alphas: Vec<f64> = Vec::with_capacity(max_k);
    let mut betas: Vec<f64> = Vec::with_capacity(max_k);

    // Start vector: deterministic noise, projected into the complement.
    // The deflation depth is mixed into the seed: a Krylov space sees only
    // one direction of a degenerate eigenspace (the projection of its start
    // vector), so reusing the first run's start vector would leave the
    // deflated run with no overlap on the partner state.
    let seed = opts
        .seed
        .wrapping_add((deflate.len() as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut v0 = seeded_vector(dim, seed);
    project_out(&mut v0, deflate);
    let mut attempt = 1;
    while v0.norm() < 1e-8 && attempt < 8 {
        v0 = seeded_vector(dim, seed.wrapping_add(attempt));
        project_out(&mut v0, deflate);
        attempt += 1;
    }
    let n0 = v0.norm();
    if n0 < 1e-8 {
        return Err(Error::Consistency(
            "could not build a start vector orthogonal to the deflation set".into(),
        ));
    }
    basis.push(v0 / n0);

    let mut w = DVector::zeros(dim);
    let mut last_residual = f64::INFINITY;

    for k in 0..max_k {
        h.apply_into(basis[k].as_slice(), w.as_mut_slice());
        project_out(&mut w, deflate);
        let alpha = w.dot(&basis[k]);
        alphas.push(alpha);

        // Two reorthogonalization passes subtract the alpha/beta terms and
        // everything rounding has let back in.
        project_out(&mut w, &basis);
        project_out(&mut w, &basis);
        let beta = w.norm();

        // A vanishing beta means the Krylov space closed on an invariant
        // subspace; its lowest Ritz pair is then exact and must be taken.
        let exhausted = k + 1 == max_k;
        let breakdown = beta < 1e-11;
        if exhausted || breakdown || (k + 1) % 8 == 0 {
            let (theta, s) = tridiag_lowest(&alphas, &betas);
            let est = if breakdown { 0.0 } else { beta * s[k].abs() };
            if est <= opts.residual_tol * theta.abs().max(1.0) || exhausted || breakdown {
                let mut x = DVector::zeros(dim);
                for (i, b) in basis.iter().enumerate() {
                    x.axpy(s[i], b, 1.0);
                }
                project_out(&mut x, deflate);
                let nx = x.norm();
                if nx > 1e-12 {
                    x /= nx;
                    h.apply_into(x.as_slice(), w.as_mut_slice());
                    let rho = x.dot(&w);
                    w.axpy(-rho, &x, 1.0);
                    let residual = w.norm();
                    last_residual = residual;
                    if residual <= opts.residual_tol * rho.abs().max(1.0) {
                        return Ok((rho, x));
                    }
                }
                if breakdown || exhausted {
                    return Err(Error::Convergence {
                        iterations: k + 1,
                        residual: last_residual,
                    });
                }
                // Ritz estimate lied; rebuild the recurrence vector and
                // keep iterating.
                h.apply_into(basis[k].as_slice(), w.as_mut_slice());
                project_out(&mut w, deflate);
                project_out(&mut w, &basis);
                project_out(&mut w, &basis);
            }
        }

        if k + 1 < max_k {
            let beta = w.norm();
            betas.push(beta);
            basis.push(&w / beta);
        }
    }

    Err(Error::Convergence {
        iterations: max_k,
        residual: last_residual,
    })
}
