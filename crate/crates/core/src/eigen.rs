//! Eigensolvers: per-sector ground spaces (iterative with dense fallback)
//! and dense full spectra for thermal traces.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::basis::{enumerate_sector, BasisSector};
use crate::error::{Error, Result};
use crate::hamiltonian::{build, SparseHamiltonian};
use crate::lanczos::{lowest_eigenpair, LanczosOptions};

/// Sectors at or below this dimension are diagonalized densely; the
/// iterative path is reserved for the few larger ones.
pub const DENSE_FALLBACK_DIM: usize = 512;

/// Default window for treating eigenvalues as one degenerate multiplet.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

/// Full spectra (and their eigenvector blocks) are capped here.
pub const FULL_SPECTRUM_MAX_SITES: usize = 14;

/// Upper bound on ground-space degeneracy the deflation loop will chase
/// before declaring something wrong.
const MAX_MULTIPLET: usize = 24;

/// Lowest eigenvalue of one sector together with an orthonormal basis of
/// every eigenvector within `degeneracy_tol` of it.
#[derive(Debug, Clone)]
pub struct GroundSolution {
    pub energy: f64,
    pub vectors: Vec<DVector<f64>>,
    pub degeneracy_tol: f64,
}

impl GroundSolution {
    pub fn degeneracy(&self) -> usize {
        self.vectors.len()
    }
}

/// Eigenvalues in ascending order paired with their eigenvector columns.
fn sorted_symmetric_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let se = m.symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &se.eigenvectors.column(src));
    }
    (eigenvalues, vectors)
}

fn verify_ground(h: &SparseHamiltonian, sol: &GroundSolution) -> Result<()> {
    let bound = 1e-9 * sol.energy.abs().max(1.0);
    for (i, v) in sol.vectors.iter().enumerate() {
        let hv = h.apply(v.as_slice())?;
        let r: f64 = hv
            .iter()
            .zip(v.iter())
            .map(|(a, b)| (a - sol.energy * b).powi(2))
            .sum::<f64>()
            .sqrt();
        if r > bound {
            return Err(Error::Consistency(format!(
                "ground vector {i} residual {r:.3e} exceeds {bound:.3e}"
            )));
        }
        for w in &sol.vectors[..i] {
            if v.dot(w).abs() > 1e-10 {
                return Err(Error::Consistency(
                    "ground vectors are not orthonormal".into(),
                ));
            }
        }
        if (v.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Consistency("ground vector is not normalized".into()));
        }
    }
    Ok(())
}

/// All eigenvectors of the sector whose eigenvalue lies within
/// `degeneracy_tol` of the lowest one.
///
/// Level crossings make degenerate ground spaces a routine occurrence, and a
/// single iterative vector there would be an arbitrary mixture, so the full
/// multiplet is always returned.
pub fn ground_space(h: &SparseHamiltonian, degeneracy_tol: f64) -> Result<GroundSolution> {
    if !(degeneracy_tol.is_finite() && degeneracy_tol > 0.0) {
        return Err(Error::Parameter("degeneracy_tol must be positive".into()));
    }

    let sol = if h.dim() <= DENSE_FALLBACK_DIM {
        let (eigenvalues, vectors) = sorted_symmetric_eigen(h.to_dense());
        let e0 = eigenvalues[0];
        let kept: Vec<DVector<f64>> = eigenvalues
            .iter()
            .take_while(|&&e| e <= e0 + degeneracy_tol)
            .enumerate()
            .map(|(k, _)| vectors.column(k).into())
            .collect();
        GroundSolution {
            energy: e0,
            vectors: kept,
            degeneracy_tol,
        }
    } else {
        let opts = LanczosOptions::default();
        let (e0, v0) = lowest_eigenpair(h, &[], &opts)?;
        let mut vectors = vec![v0];
        loop {
            if vectors.len() >= MAX_MULTIPLET || vectors.len() == h.dim() {
                break;
            }
            let (e, v) = lowest_eigenpair(h, &vectors, &opts)?;
            if e <= e0 + degeneracy_tol {
                vectors.push(v);
            } else {
                break;
            }
        }
        GroundSolution {
            energy: e0,
            vectors,
            degeneracy_tol,
        }
    };

    verify_ground(h, &sol)?;
    Ok(sol)
}

/// One sector's eigendecomposition inside a [`Spectrum`].
#[derive(Debug, Clone)]
pub struct SectorEigen {
    pub sector: Arc<BasisSector>,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column k is the eigenvector of `eigenvalues[k]` (when requested).
    pub vectors: Option<DMatrix<f64>>,
}

impl SectorEigen {
    pub fn n_up(&self) -> usize {
        self.sector.n_up()
    }
}

/// Complete eigendecomposition of H(J) over all magnetization sectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    l: usize,
    j: f64,
    /// Globally sorted, all 2^L of them.
    eigenvalues: Vec<f64>,
    sectors: Vec<SectorEigen>,
}

impl Spectrum {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn sectors(&self) -> &[SectorEigen] {
        &self.sectors
    }

    pub fn min_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn has_vectors(&self) -> bool {
        self.sectors.iter().all(|s| s.vectors.is_some())
    }

    /// ln Z(T) = ln sum_k exp(-E_k / T), evaluated against the shifted
    /// spectrum so low temperatures cannot overflow.
    pub fn ln_partition(&self, temperature: f64) -> Result<f64> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::Parameter("temperature must be positive".into()));
        }
        let e0 = self.min_energy();
        let s: f64 = self
            .eigenvalues
            .iter()
            .map(|&e| (-(e - e0) / temperature).exp())
            .sum();
        Ok(s.ln() - e0 / temperature)
    }
}

/// Mirror a sector decomposition through the global spin flip.
///
/// Complementing all L bits maps the sector with n up spins onto the one
/// with L - n, reverses the canonical basis order, and commutes with H, so
/// the mirrored eigenvectors are the originals with components reversed.
fn mirror_sector(src: &SectorEigen, mirror_basis: Arc<BasisSector>) -> SectorEigen {
    let dim = src.sector.dim();
    debug_assert_eq!(mirror_basis.dim(), dim);
    let vectors = src.vectors.as_ref().map(|m| {
        let mut out = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            for row in 0..dim {
                out[(dim - 1 - row, col)] = m[(row, col)];
            }
        }
        out
    });
    SectorEigen {
        sector: mirror_basis,
        eigenvalues: src.eigenvalues.clone(),
        vectors,
    }
}

/// Dense eigendecomposition of every sector, concatenated.
///
/// Sectors above half filling are obtained from their spin-flip mirrors
/// rather than decomposed again.
pub fn full_spectrum(l: usize, j: f64, want_vectors: bool) -> Result<Spectrum> {
    if l > FULL_SPECTRUM_MAX_SITES {
        return Err(Error::Resource(format!(
            "full spectrum capped at L={FULL_SPECTRUM_MAX_SITES}, got L={l}"
        )));
    }

    let mut sectors: Vec<Option<SectorEigen>> = vec![None; l + 1];
    for n_up in 0..=l / 2 {
        let basis = Arc::new(enumerate_sector(l, n_up)?);
        let h = build(l, j, basis.clone())?;
        let (eigenvalues, vectors) = if want_vectors {
            let (e, v) = sorted_symmetric_eigen(h.to_dense());
            (e, Some(v))
        } else {
            let mut e: Vec<f64> = h.to_dense().symmetric_eigenvalues().iter().cloned().collect();
            e.sort_by(f64::total_cmp);
            (e, None)
        };
        let se = SectorEigen {
            sector: basis,
            eigenvalues,
            vectors,
        };
        if n_up != l - n_up {
            let mirror_basis = Arc::new(enumerate_sector(l, l - n_up)?);
            sectors[l - n_up] = Some(mirror_sector(&se, mirror_basis));
        }
        sectors[n_up] = Some(se);
    }

    let sectors: Vec<SectorEigen> = sectors.into_iter().map(|s| s.unwrap()).collect();
    let mut eigenvalues: Vec<f64> = sectors
        .iter()
        .flat_map(|s| s.eigenvalues.iter().cloned())
        .collect();
    eigenvalues.sort_by(f64::total_cmp);
    debug_assert_eq!(eigenvalues.len(), 1 << l);

    Ok(Spectrum {
        l,
        j,
        eigenvalues,
        sectors,
    })
}

/// The global ground multiplet of H(J): every eigenvector, across all
/// sectors, whose eigenvalue lies within `degeneracy_tol` of the overall
/// minimum.
#[derive(Debug, Clone)]
pub struct GlobalGround {
    pub l: usize,
    pub j: f64,
    pub energy: f64,
    pub degeneracy_tol: f64,
    pub members: Vec<GroundMember>,
}

#[derive(Debug, Clone)]
pub struct GroundMember {
    pub sector: Arc<BasisSector>,
    pub vectors: Vec<DVector<f64>>,
}

impl GlobalGround {
    pub fn degeneracy(&self) -> usize {
        self.members.iter().map(|m| m.vectors.len()).sum()
    }
}

fn mirror_vectors(vectors: &[DVector<f64>]) -> Vec<DVector<f64>> {
    vectors
        .iter()
        .map(|v| {
            let dim = v.len();
            DVector::from_fn(dim, |i, _| v[dim - 1 - i])
        })
        .collect()
}

/// Solve every sector's ground space and keep the global multiplet.
pub fn global_ground(l: usize, j: f64, degeneracy_tol: f64) -> Result<GlobalGround> {
    let mut per_sector: Vec<(Arc<BasisSector>, GroundSolution)> = Vec::new();
    for n_up in 0..=l / 2 {
        let basis = Arc::new(enumerate_sector(l, n_up)?);
        let h = build(l, j, basis.clone())?;
        let sol = ground_space(&h, degeneracy_tol)?;
        if n_up != l - n_up {
            let mirror_basis = Arc::new(enumerate_sector(l, l - n_up)?);
            let mirrored = GroundSolution {
                energy: sol.energy,
                vectors: mirror_vectors(&sol.vectors),
                degeneracy_tol,
            };
            per_sector.push((mirror_basis, mirrored));
        }
        per_sector.push((basis, sol));
    }

    let energy = per_sector
        .iter()
        .map(|(_, s)| s.energy)
        .fold(f64::INFINITY, f64::min);
    let members: Vec<GroundMember> = per_sector
        .into_iter()
        .filter(|(_, s)| s.energy <= energy + degeneracy_tol)
        .map(|(sector, s)| GroundMember {
            sector,
            vectors: s.vectors,
        })
        .collect();

    Ok(GlobalGround {
        l,
        j,
        energy,
        degeneracy_tol,
        members,
    })
}

/// Lowest eigenvalue of H(J) across all sectors, without eigenvectors.
pub fn global_ground_energy(l: usize, j: f64) -> Result<f64> {
    let mut e_min = f64::INFINITY;
    for n_up in 0..=l / 2 {
        let basis = Arc::new(enumerate_sector(l, n_up)?);
        let h = build(l, j, basis)?;
        let e = if h.dim() <= DENSE_FALLBACK_DIM {
            h.to_dense()
                .symmetric_eigenvalues()
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min)
        } else {
            lowest_eigenpair(&h, &[], &LanczosOptions::default())?.0
        };
        e_min = e_min.min(e);
    }
    Ok(e_min)
}
