//! Correlation functions, internal energy, partition-function derivatives,
//! and two-site reduced density matrices, for ground and thermal ensembles.
//!
//! Conventions: Pauli matrices (eigenvalues +-1), Boltzmann constant 1, so
//! temperatures are measured in units of the nearest-neighbor exchange.
//! G1 and G2 denote the bond-averaged <sigma^z_j sigma^z_{j+d}> at distances
//! d = 1 and 2, so both are bounded by [-1, 1] and the internal energy obeys
//! E = 3 L G1 + 3 J L G2 for SU(2)-symmetric states.

use num_complex::Complex64;

use nalgebra::{DVector, Matrix4};

use crate::basis::BasisSector;
use crate::eigen::{full_spectrum, global_ground_energy, GlobalGround, Spectrum};
use crate::entanglement::{concurrence_x, Concurrence};
use crate::error::{Error, Result};

fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// Pair separation along the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Nearest,
    NextNearest,
}

impl Distance {
    pub fn step(self) -> usize {
        match self {
            Distance::Nearest => 1,
            Distance::NextNearest => 2,
        }
    }

    pub fn from_step(step: usize) -> Result<Self> {
        match step {
            1 => Ok(Distance::Nearest),
            2 => Ok(Distance::NextNearest),
            _ => Err(Error::Parameter(format!(
                "distance must be 1 or 2, got {step}"
            ))),
        }
    }
}

/// Which statistical ensemble an observable refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleKind {
    /// T -> 0 limit: equal mixture over the global ground multiplet.
    Ground,
    /// Canonical ensemble at temperature T > 0.
    Thermal { temperature: f64 },
}

#[derive(Debug, Clone, Copy)]
pub struct EnsembleSpec {
    pub l: usize,
    pub j: f64,
    pub kind: EnsembleKind,
}

struct Term<'a> {
    weight: f64,
    energy: f64,
    sector: &'a BasisSector,
    vector: &'a [f64],
}

/// A density matrix resolved into weighted pure sector eigenstates.
pub struct Ensemble<'a> {
    spec: EnsembleSpec,
    ln_z: Option<f64>,
    terms: Vec<Term<'a>>,
}

impl<'a> Ensemble<'a> {
    /// Equal-weight mixture over the global ground multiplet; this is the
    /// T -> 0 limit of the thermal ensemble and keeps the SU(2) and
    /// translation symmetries that a single member of a degenerate
    /// multiplet would break.
    pub fn ground(g: &'a GlobalGround) -> Ensemble<'a> {
        let deg: usize = g.degeneracy();
        let w = 1.0 / deg as f64;
        let mut terms = Vec::with_capacity(deg);
        for member in &g.members {
            for v in &member.vectors {
                terms.push(Term {
                    weight: w,
                    energy: g.energy,
                    sector: &member.sector,
                    vector: v.as_slice(),
                });
            }
        }
        Ensemble {
            spec: EnsembleSpec {
                l: g.l,
                j: g.j,
                kind: EnsembleKind::Ground,
            },
            ln_z: None,
            terms,
        }
    }

    /// Boltzmann mixture exp(-E_k/T)/Z over a full spectrum with vectors.
    pub fn thermal(spectrum: &'a Spectrum, temperature: f64) -> Result<Ensemble<'a>> {
        if !positive_finite(temperature) {
            return Err(Error::Parameter("temperature must be positive".into()));
        }
        if !spectrum.has_vectors() {
            return Err(Error::MissingVectors(
                "thermal ensemble needs a spectrum built with want_vectors".into(),
            ));
        }
        let e0 = spectrum.min_energy();
        let mut norm = 0.0;
        for se in spectrum.sectors() {
            for &e in &se.eigenvalues {
                norm += (-(e - e0) / temperature).exp();
            }
        }

        let mut terms = Vec::new();
        for se in spectrum.sectors() {
            let vectors = se.vectors.as_ref().unwrap();
            let dim = se.sector.dim();
            let storage = vectors.as_slice();
            for (k, &e) in se.eigenvalues.iter().enumerate() {
                let w = (-(e - e0) / temperature).exp() / norm;
                if w == 0.0 {
                    continue;
                }
                terms.push(Term {
                    weight: w,
                    energy: e,
                    sector: &se.sector,
                    vector: &storage[k * dim..(k + 1) * dim],
                });
            }
        }

        Ok(Ensemble {
            spec: EnsembleSpec {
                l: spectrum.l(),
                j: spectrum.j(),
                kind: EnsembleKind::Thermal { temperature },
            },
            ln_z: Some(norm.ln() - e0 / temperature),
            terms,
        })
    }

    /// A single normalized sector state, treated as a pure ensemble.
    /// `energy` is bookkeeping for callers that know <H>; pass NAN if not.
    pub fn pure(
        sector: &'a BasisSector,
        state: &'a DVector<f64>,
        j: f64,
        energy: f64,
    ) -> Result<Ensemble<'a>> {
        if state.len() != sector.dim() {
            return Err(Error::Parameter(
                "state length does not match sector dimension".into(),
            ));
        }
        if (state.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Parameter("pure state must be normalized".into()));
        }
        Ok(Ensemble {
            spec: EnsembleSpec {
                l: sector.l(),
                j,
                kind: EnsembleKind::Ground,
            },
            ln_z: None,
            terms: vec![Term {
                weight: 1.0,
                energy,
                sector,
                vector: state.as_slice(),
            }],
        })
    }

    pub fn spec(&self) -> EnsembleSpec {
        self.spec
    }

    /// ln of the partition function (thermal ensembles only).
    pub fn ln_partition(&self) -> Option<f64> {
        self.ln_z
    }
}

/// Two-site reduced density matrix in the basis |00>, |01>, |10>, |11>
/// (first label = site i, second = site j, 0 = down, 1 = up).
///
/// S^z conservation forces every entry outside the diagonal and the central
/// (01|10) coherence to vanish, which is exactly the zero pattern assumed by
/// the X-state concurrence formula.
#[derive(Debug, Clone, Copy)]
pub struct PairDensityMatrix {
    pub u_plus: f64,
    pub u_minus: f64,
    pub w1: f64,
    pub w2: f64,
    pub z: Complex64,
}

impl PairDensityMatrix {
    pub fn trace(&self) -> f64 {
        self.u_plus + self.u_minus + self.w1 + self.w2
    }

    /// <sigma^z_i sigma^z_j> of this pair.
    pub fn gzz(&self) -> f64 {
        self.u_plus + self.u_minus - self.w1 - self.w2
    }

    pub fn to_matrix(&self) -> Matrix4<Complex64> {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = Complex64::new(self.u_plus, 0.0);
        m[(1, 1)] = Complex64::new(self.w1, 0.0);
        m[(2, 2)] = Complex64::new(self.w2, 0.0);
        m[(3, 3)] = Complex64::new(self.u_minus, 0.0);
        m[(1, 2)] = self.z;
        m[(2, 1)] = self.z.conj();
        m
    }

    pub fn concurrence(&self) -> Result<Concurrence> {
        concurrence_x(self.u_plus, self.u_minus, self.z)
    }
}

/// Trace out all sites except {i, j} from the ensemble density matrix.
pub fn reduce_pair(ens: &Ensemble, i: usize, j: usize) -> Result<PairDensityMatrix> {
    let l = ens.spec.l;
    if i >= l || j >= l || i == j {
        return Err(Error::Parameter(format!(
            "pair sites ({i}, {j}) invalid on {l} sites"
        )));
    }

    let (mut u_plus, mut u_minus, mut w1, mut w2, mut z) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for term in &ens.terms {
        let sector = term.sector;
        let w = term.weight;
        let v = term.vector;
        for (a, &s) in sector.states().iter().enumerate() {
            let p = v[a] * v[a];
            match (s.is_up(i), s.is_up(j)) {
                (false, false) => u_plus += w * p,
                (true, true) => u_minus += w * p,
                (false, true) => {
                    w1 += w * p;
                    let partner = sector
                        .index_of(s.flip_pair(i, j))
                        .expect("pair flip stays inside the sector");
                    z += w * v[a] * v[partner];
                }
                (true, false) => w2 += w * p,
            }
        }
    }

    let rho = PairDensityMatrix {
        u_plus,
        u_minus,
        w1,
        w2,
        z: Complex64::new(z, 0.0),
    };
    if (rho.trace() - 1.0).abs() > 1e-12 {
        return Err(Error::Consistency(format!(
            "pair density matrix trace {} deviates from 1",
            rho.trace()
        )));
    }
    if u_plus < -1e-12 || u_minus < -1e-12 || w1 < -1e-12 || w2 < -1e-12 {
        return Err(Error::Consistency("negative pair population".into()));
    }
    if w1 * w2 - z * z < -1e-10 {
        return Err(Error::Consistency(
            "pair density matrix is not positive semidefinite".into(),
        ));
    }
    Ok(rho)
}

/// Per-basis-state value of (1/L) sum_b sigma^z_b sigma^z_{b+d}.
pub fn sector_zz_diagonal(sector: &BasisSector, distance: Distance) -> Vec<f64> {
    let l = sector.l();
    let d = distance.step();
    sector
        .states()
        .iter()
        .map(|s| {
            let mut acc = 0.0;
            for b in 0..l {
                acc += s.sz(b) * s.sz((b + d) % l);
            }
            acc / l as f64
        })
        .collect()
}

/// Bond-averaged <sigma^z_j sigma^z_{j+d}> over all L bonds of the ring.
/// Translation invariance makes the average a consistency device rather
/// than an approximation.
pub fn correlation_zz(ens: &Ensemble, distance: Distance) -> Result<f64> {
    let mut g = 0.0;
    let mut cached: Option<(*const BasisSector, Vec<f64>)> = None;
    for term in &ens.terms {
        let key = term.sector as *const BasisSector;
        if !matches!(&cached, Some((cached_key, _)) if *cached_key == key) {
            cached = Some((key, sector_zz_diagonal(term.sector, distance)));
        }
        let diag = &cached.as_ref().unwrap().1;
        let mut acc = 0.0;
        for (a, &d) in diag.iter().enumerate() {
            acc += term.vector[a] * term.vector[a] * d;
        }
        g += term.weight * acc;
    }
    Ok(g)
}

/// Bond-averaged correlators, internal energy, and (for thermal ensembles)
/// the log partition function.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationSet {
    pub g1: f64,
    pub g2: f64,
    pub e: f64,
    pub ln_z: Option<f64>,
}

pub fn correlations(ens: &Ensemble) -> Result<CorrelationSet> {
    let g1 = correlation_zz(ens, Distance::Nearest)?;
    let g2 = correlation_zz(ens, Distance::NextNearest)?;
    let e = ens
        .terms
        .iter()
        .map(|t| t.weight * t.energy)
        .sum::<f64>();
    Ok(CorrelationSet {
        g1,
        g2,
        e,
        ln_z: ens.ln_z,
    })
}

/// Default centered-difference step for both derivative routes.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Default kink threshold (in per-bond G2 units) for crossing detection.
pub const DEFAULT_KINK_TOL: f64 = 1e-3;

/// Thermal G2 from the coupling derivative of the partition function,
///
///   G2(T) = -(T / 3L) d ln Z / dJ,
///
/// by centered finite difference over two spectra at J +- dJ. The 1/L makes
/// this the per-bond correlator, matching the direct expectation route.
pub fn g2_from_partition(l: usize, j: f64, temperature: f64, dj: f64) -> Result<f64> {
    if !positive_finite(temperature) {
        return Err(Error::Parameter("temperature must be positive".into()));
    }
    if !positive_finite(dj) {
        return Err(Error::Parameter("finite-difference step must be positive".into()));
    }
    let plus = full_spectrum(l, j + dj, false)?.ln_partition(temperature)?;
    let minus = full_spectrum(l, j - dj, false)?.ln_partition(temperature)?;
    Ok(-(temperature / (3.0 * l as f64)) * (plus - minus) / (2.0 * dj))
}

/// Ground-state G2 from dE/dJ (Hellmann-Feynman), or both one-sided values
/// when the derivative is discontinuous at a level crossing.
#[derive(Debug, Clone, Copy)]
pub enum GroundG2 {
    Smooth(f64),
    Crossing { left: f64, right: f64 },
}

pub fn g2_ground_hellmann(l: usize, j: f64, dj: f64, kink_tol: f64) -> Result<GroundG2> {
    if !positive_finite(dj) || !positive_finite(kink_tol) {
        return Err(Error::Parameter(
            "finite-difference step and kink tolerance must be positive".into(),
        ));
    }
    let norm = 3.0 * l as f64;
    let e_minus = global_ground_energy(l, j - dj)?;
    let e_mid = global_ground_energy(l, j)?;
    let e_plus = global_ground_energy(l, j + dj)?;
    let left = (e_mid - e_minus) / dj / norm;
    let right = (e_plus - e_mid) / dj / norm;
    if (left - right).abs() > 10.0 * kink_tol {
        Ok(GroundG2::Crossing { left, right })
    } else {
        Ok(GroundG2::Smooth((e_plus - e_minus) / (2.0 * dj) / norm))
    }
}

/// G1 from the internal energy: G1 = E/(3L) - J G2.
pub fn g1_from_energy(e: f64, l: usize, j: f64, g2: f64) -> f64 {
    e / (3.0 * l as f64) - j * g2
}

/// Per-eigenstate diagonal expectations cached for fast temperature sweeps:
/// evaluating G1(T) or G2(T) afterwards costs one pass over 2^L weights.
#[derive(Debug, Clone)]
pub struct ThermalTable {
    l: usize,
    j: f64,
    e_min: f64,
    energies: Vec<f64>,
    m1: Vec<f64>,
    m2: Vec<f64>,
}

impl ThermalTable {
    pub fn new(spectrum: &Spectrum) -> Result<ThermalTable> {
        if !spectrum.has_vectors() {
            return Err(Error::MissingVectors(
                "thermal table needs a spectrum built with want_vectors".into(),
            ));
        }
        let mut energies = Vec::with_capacity(1 << spectrum.l());
        let mut m1 = Vec::with_capacity(energies.capacity());
        let mut m2 = Vec::with_capacity(energies.capacity());
        for se in spectrum.sectors() {
            let dim = se.sector.dim();
            let d1 = sector_zz_diagonal(&se.sector, Distance::Nearest);
            let d2 = sector_zz_diagonal(&se.sector, Distance::NextNearest);
            let storage = se.vectors.as_ref().unwrap().as_slice();
            for (k, &e) in se.eigenvalues.iter().enumerate() {
                let col = &storage[k * dim..(k + 1) * dim];
                let mut s1 = 0.0;
                let mut s2 = 0.0;
                for a in 0..dim {
                    let p = col[a] * col[a];
                    s1 += p * d1[a];
                    s2 += p * d2[a];
                }
                energies.push(e);
                m1.push(s1);
                m2.push(s2);
            }
        }
        Ok(ThermalTable {
            l: spectrum.l(),
            j: spectrum.j(),
            e_min: spectrum.min_energy(),
            energies,
            m1,
            m2,
        })
    }

    /// Build the spectrum internally and consume it.
    pub fn build(l: usize, j: f64) -> Result<ThermalTable> {
        ThermalTable::new(&full_spectrum(l, j, true)?)
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn gzz(&self, temperature: f64, distance: Distance) -> Result<f64> {
        if !positive_finite(temperature) {
            return Err(Error::Parameter("temperature must be positive".into()));
        }
        let m = match distance {
            Distance::Nearest => &self.m1,
            Distance::NextNearest => &self.m2,
        };
        let mut norm = 0.0;
        let mut acc = 0.0;
        for (k, &e) in self.energies.iter().enumerate() {
            let w = (-(e - self.e_min) / temperature).exp();
            norm += w;
            acc += w * m[k];
        }
        Ok(acc / norm)
    }

    pub fn internal_energy(&self, temperature: f64) -> Result<f64> {
        if !positive_finite(temperature) {
            return Err(Error::Parameter("temperature must be positive".into()));
        }
        let mut norm = 0.0;
        let mut acc = 0.0;
        for &e in &self.energies {
            let w = (-(e - self.e_min) / temperature).exp();
            norm += w;
            acc += w * e;
        }
        Ok(acc / norm)
    }
}
