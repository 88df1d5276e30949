//! Brute-force reference implementations for tests and the validation
//! command: the dense 2^L x 2^L Hamiltonian assembled by tensor-product
//! embedding, exact ensemble density matrices, and a literal partial trace.
//!
//! Nothing here is used by the production scan paths; the point is an
//! independent route to the same numbers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::observables::{EnsembleKind, PairDensityMatrix};

/// Dense oracles stop here; a 1024-dimensional eigendecomposition is still
/// cheap and the tests need no more.
pub const ORACLE_MAX_SITES: usize = 10;

/// The two-site Pauli exchange sigma.sigma in the basis |00>, |01>, |10>,
/// |11> (0 = down): diagonal (+1, -1, -1, +1), off-diagonal 2 between the
/// antiparallel states. Written out once and embedded literally, so this
/// path shares no matrix-element code with the sector build.
const EXCHANGE: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 2.0, 0.0],
    [0.0, 2.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
];

/// Full-space Hamiltonian and its complete eigendecomposition.
#[derive(Debug, Clone)]
pub struct DenseSystem {
    pub l: usize,
    pub j: f64,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    vectors: DMatrix<f64>,
}

/// Assemble H(J) over the full 2^L space by embedding the 4x4 exchange
/// block on every bond.
pub fn dense_hamiltonian(l: usize, j: f64) -> Result<DMatrix<f64>> {
    if !(4..=ORACLE_MAX_SITES).contains(&l) {
        return Err(Error::Resource(format!(
            "dense oracle covers L in 4..={ORACLE_MAX_SITES}, got {l}"
        )));
    }
    let dim = 1usize << l;
    let mut h = DMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..l {
            for (step, coupling) in [(1usize, 1.0), (2usize, j)] {
                let site_i = b;
                let site_j = (b + step) % l;
                let bi = (a >> site_i) & 1;
                let bj = (a >> site_j) & 1;
                let p = 2 * bi + bj;
                for q in 0..4usize {
                    let amp = EXCHANGE[p][q];
                    if amp == 0.0 || coupling == 0.0 {
                        continue;
                    }
                    let mut col = a;
                    col &= !(1 << site_i);
                    col &= !(1 << site_j);
                    col |= (q >> 1) << site_i;
                    col |= (q & 1) << site_j;
                    h[(a, col)] += coupling * amp;
                }
            }
        }
    }
    Ok(h)
}

/// Build and eigendecompose the full Hamiltonian.
pub fn dense_build(l: usize, j: f64) -> Result<DenseSystem> {
    let h = dense_hamiltonian(l, j)?;
    let se = h.symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    Ok(DenseSystem {
        l,
        j,
        eigenvalues,
        vectors,
    })
}

impl DenseSystem {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Exact full-space density matrix of the requested ensemble.
    pub fn density_matrix(&self, kind: EnsembleKind, degeneracy_tol: f64) -> Result<DMatrix<f64>> {
        let dim = self.eigenvalues.len();
        let weights: Vec<f64> = match kind {
            EnsembleKind::Ground => {
                let e0 = self.eigenvalues[0];
                let deg = self
                    .eigenvalues
                    .iter()
                    .take_while(|&&e| e <= e0 + degeneracy_tol)
                    .count();
                let mut w = vec![0.0; dim];
                for x in w.iter_mut().take(deg) {
                    *x = 1.0 / deg as f64;
                }
                w
            }
            EnsembleKind::Thermal { temperature } => {
                if !(temperature.is_finite() && temperature > 0.0) {
                    return Err(Error::Parameter("temperature must be positive".into()));
                }
                let e0 = self.eigenvalues[0];
                let raw: Vec<f64> = self
                    .eigenvalues
                    .iter()
                    .map(|&e| (-(e - e0) / temperature).exp())
                    .collect();
                let z: f64 = raw.iter().sum();
                raw.into_iter().map(|w| w / z).collect()
            }
        };

        let mut rho = DMatrix::zeros(dim, dim);
        for (k, &w) in weights.iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            let v = self.vectors.column(k);
            rho.ger(w, &v, &v, 1.0);
        }
        Ok(rho)
    }

    /// Literal partial trace of the full ensemble density matrix onto the
    /// pair (i, j), with a check that the magnetization-forbidden entries
    /// really vanished.
    pub fn pair_rdm(
        &self,
        kind: EnsembleKind,
        i: usize,
        j: usize,
        degeneracy_tol: f64,
    ) -> Result<PairDensityMatrix> {
        if i >= self.l || j >= self.l || i == j {
            return Err(Error::Parameter(format!(
                "pair sites ({i}, {j}) invalid on {} sites",
                self.l
            )));
        }
        let rho = self.density_matrix(kind, degeneracy_tol)?;
        let dim = rho.nrows();

        let mut acc = [[0.0f64; 4]; 4];
        for a in 0..dim {
            let bi = (a >> i) & 1;
            let bj = (a >> j) & 1;
            let p = 2 * bi + bj;
            for q in 0..4usize {
                let mut b = a;
                b &= !(1 << i);
                b &= !(1 << j);
                b |= (q >> 1) << i;
                b |= (q & 1) << j;
                acc[p][q] += rho[(a, b)];
            }
        }

        // Everything outside the diagonal and the (01|10) coherence is
        // forbidden by S^z conservation.
        let mut forbidden: f64 = 0.0;
        for p in 0..4 {
            for q in 0..4 {
                if p == q || (p == 1 && q == 2) || (p == 2 && q == 1) {
                    continue;
                }
                forbidden = forbidden.max(acc[p][q].abs());
            }
        }
        if forbidden > 1e-10 {
            return Err(Error::Consistency(format!(
                "pair density matrix breaks the magnetization zero pattern by {forbidden:.3e}"
            )));
        }
        if (acc[1][2] - acc[2][1]).abs() > 1e-10 {
            return Err(Error::Consistency(
                "pair density matrix is not symmetric".into(),
            ));
        }

        Ok(PairDensityMatrix {
            u_plus: acc[0][0],
            u_minus: acc[3][3],
            w1: acc[1][1],
            w2: acc[2][2],
            z: Complex64::new(acc[1][2], 0.0),
        })
    }
}
