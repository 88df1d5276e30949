//! Exact diagonalization of the spin-1/2 Heisenberg ring with a
//! next-nearest-neighbor coupling J, and the pairwise concurrence it
//! produces at distance 1 and 2, in the ground state and at finite
//! temperature.
//!
//! The Hamiltonian, in Pauli matrices with periodic boundaries, is
//!
//!   H(J) = sum_{j=0}^{L-1} [ sigma_j . sigma_{j+1} + J sigma_j . sigma_{j+2} ].
//!
//! Layers, bottom up:
//!   * [`basis`] -- bit-encoded configurations in fixed-S^z sectors
//!   * [`hamiltonian`] -- sparse sector matrices and matvec
//!   * [`lanczos`] / [`eigen`] -- ground spaces and full spectra
//!   * [`observables`] -- correlators, pair density matrices, derivative routes
//!   * [`entanglement`] -- concurrence kernels
//!   * [`mg`] -- exact dimer ground states at J = 1/2
//!   * [`scan`] -- J-sweeps, thermal grids, threshold curves
//!   * [`oracle`] / [`validate`] -- brute-force cross-checks

pub mod basis;
pub mod eigen;
pub mod entanglement;
pub mod error;
pub mod hamiltonian;
pub mod lanczos;
pub mod mg;
pub mod observables;
pub mod oracle;
pub mod scan;
pub mod validate;

pub use basis::{enumerate_sector, exchange_action, BasisSector, SpinConfig};
pub use eigen::{
    full_spectrum, global_ground, global_ground_energy, ground_space, GlobalGround,
    GroundSolution, SectorEigen, Spectrum, DEFAULT_DEGENERACY_TOL,
};
pub use entanglement::{
    concurrence_su2, concurrence_wootters, concurrence_x, mg_concurrence, Concurrence,
};
pub use error::{Error, Result};
pub use hamiltonian::{build, SparseHamiltonian};
pub use observables::{
    correlation_zz, correlations, g1_from_energy, g2_from_partition, g2_ground_hellmann,
    reduce_pair, CorrelationSet, Distance, Ensemble, EnsembleKind, EnsembleSpec, GroundG2,
    PairDensityMatrix, ThermalTable,
};
pub use scan::{
    ground_scan, linspace, thermal_grid, threshold_curve, threshold_temperature, GroundScan,
    GroundScanPoint, ThermalGrid, ThresholdCurve, ThresholdOptions,
};
pub use validate::{run_validation, CheckResult};
