//! Two-qubit concurrence kernels.
//!
//! Three layered routes compute the same quantity:
//!   * `concurrence_wootters` -- the general spin-flip construction, valid
//!     for any two-qubit density matrix; the oracle the fast paths are
//!     checked against.
//!   * `concurrence_x` -- closed form for matrices with the S^z-conserving
//!     zero pattern (diagonal plus central coherence).
//!   * `concurrence_su2` -- one-argument shortcut when SU(2) symmetry ties
//!     every entry to the single correlator G^zz.
//!
//! Plus the closed-form value for the symmetric dimer superposition at the
//! Majumdar-Ghosh point, as a function of ring size.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pairwise concurrence; 0 is separable, 1 maximally entangled.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub fn value(self) -> f64 {
        self.0
    }

    fn clamped(raw: f64) -> Concurrence {
        Concurrence(raw.clamp(0.0, 1.0))
    }
}

const PHYSICALITY_TOL: f64 = 1e-10;

/// General Wootters concurrence: eigenvalues of rho (sigma_y x sigma_y)
/// rho* (sigma_y x sigma_y), square-rooted and sorted descending, give
/// C = max(0, l1 - l2 - l3 - l4).
pub fn concurrence_wootters(rho: &Matrix4<Complex64>) -> Result<Concurrence> {
    // Preconditions: Hermitian, unit trace, positive semidefinite.
    let mut herm_dev: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            herm_dev = herm_dev.max((rho[(i, j)] - rho[(j, i)].conj()).norm());
        }
    }
    if herm_dev > PHYSICALITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "not Hermitian (max deviation {herm_dev:.3e})"
        )));
    }
    let trace = (rho[(0, 0)] + rho[(1, 1)] + rho[(2, 2)] + rho[(3, 3)]).re;
    if (trace - 1.0).abs() > PHYSICALITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "trace {trace} deviates from 1"
        )));
    }
    let eig = (*rho).symmetric_eigen();
    let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -PHYSICALITY_TOL {
        return Err(Error::InvalidDensityMatrix(format!(
            "negative eigenvalue {min_eig:.3e}"
        )));
    }

    // sqrt(rho) from the eigendecomposition just computed.
    let mut sqrt_rho = Matrix4::<Complex64>::zeros();
    for k in 0..4 {
        let lam = eig.eigenvalues[k].max(0.0).sqrt();
        let col = eig.eigenvectors.column(k);
        for i in 0..4 {
            for j in 0..4 {
                sqrt_rho[(i, j)] += Complex64::new(lam, 0.0) * col[i] * col[j].conj();
            }
        }
    }

    // Spin-flipped state: (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
    let yy = Matrix4::<Complex64>::from_row_slice(&[
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ]);
    let rho_conj = rho.map(|c| c.conj());
    let rho_tilde = yy * rho_conj * yy;

    let m = sqrt_rho * rho_tilde * sqrt_rho;
    let m_herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = m_herm
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&mu| mu.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));

    Ok(Concurrence::clamped(
        lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3],
    ))
}

/// Concurrence of a state with the S^z-conserving zero pattern:
/// C = 2 max(0, |z| - sqrt(u+ u-)).
pub fn concurrence_x(u_plus: f64, u_minus: f64, z: Complex64) -> Result<Concurrence> {
    if u_plus < -1e-12 || u_minus < -1e-12 {
        return Err(Error::InvalidDensityMatrix(format!(
            "negative population (u+ = {u_plus}, u- = {u_minus})"
        )));
    }
    let prod = (u_plus.max(0.0) * u_minus.max(0.0)).sqrt();
    Ok(Concurrence::clamped(2.0 * (z.norm() - prod)))
}

/// SU(2)-symmetric concurrence from the single correlator G^zz:
/// C = (1/2) max(0, 2|G| - G - 1).
pub fn concurrence_su2(gzz: f64) -> Result<Concurrence> {
    if !(-1.0 - 1e-9..=1.0 + 1e-9).contains(&gzz) {
        return Err(Error::Parameter(format!(
            "correlator {gzz} outside [-1, 1]"
        )));
    }
    let g = gzz.clamp(-1.0, 1.0);
    Ok(Concurrence::clamped(0.5 * (2.0 * g.abs() - g - 1.0)))
}

/// Closed-form nearest-neighbor concurrence assigned to the symmetric dimer
/// superposition at J = 1/2:
///
///   C(L) = (1/2 + 2^(-L/2)) / (2 + (-1)^(L/2) 2^(-(L/2 - 2))),
///
/// which tends to 1/4 as L grows.
pub fn mg_concurrence(l: usize) -> Result<Concurrence> {
    if l < 4 || l % 2 != 0 {
        return Err(Error::Parameter(format!(
            "dimer coverings need an even ring of at least 4 sites, got L={l}"
        )));
    }
    let half = (l / 2) as i32;
    let sign = if half % 2 == 0 { 1.0 } else { -1.0 };
    let numerator = 0.5 + 2f64.powi(-half);
    let denominator = 2.0 + sign * 2f64.powi(-(half - 2));
    Ok(Concurrence::clamped(numerator / denominator))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn singlet_projector() -> Matrix4<Complex64> {
        // (|01> - |10>)/sqrt(2)
        let mut rho = Matrix4::zeros();
        rho[(1, 1)] = Complex64::new(0.5, 0.0);
        rho[(2, 2)] = Complex64::new(0.5, 0.0);
        rho[(1, 2)] = Complex64::new(-0.5, 0.0);
        rho[(2, 1)] = Complex64::new(-0.5, 0.0);
        rho
    }

    fn x_state(u_plus: f64, u_minus: f64, w1: f64, w2: f64, z: Complex64) -> Matrix4<Complex64> {
        let mut rho = Matrix4::zeros();
        rho[(0, 0)] = Complex64::new(u_plus, 0.0);
        rho[(1, 1)] = Complex64::new(w1, 0.0);
        rho[(2, 2)] = Complex64::new(w2, 0.0);
        rho[(3, 3)] = Complex64::new(u_minus, 0.0);
        rho[(1, 2)] = z;
        rho[(2, 1)] = z.conj();
        rho
    }

    #[test]
    fn singlet_is_maximally_entangled() {
        let c = concurrence_wootters(&singlet_projector()).unwrap();
        assert_abs_diff_eq!(c.value(), 1.0, epsilon = 1e-10);
        let cx = concurrence_x(0.0, 0.0, Complex64::new(-0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(cx.value(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(concurrence_su2(-1.0).unwrap().value(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let rho = Matrix4::identity() * Complex64::new(0.25, 0.0);
        assert_abs_diff_eq!(
            concurrence_wootters(&rho).unwrap().value(),
            0.0,
            epsilon = 1e-12
        );
        let cx = concurrence_x(0.25, 0.25, Complex64::new(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(cx.value(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn heisenberg_chain_reference_value() {
        // SU(2) entries u = (1+g)/4, w = (1-g)/4, z = g/2 at the infinite
        // antiferromagnetic chain's g = -0.5908 give the published 0.386.
        let g = -0.5908;
        let rho = x_state(
            (1.0 + g) / 4.0,
            (1.0 + g) / 4.0,
            (1.0 - g) / 4.0,
            (1.0 - g) / 4.0,
            Complex64::new(g / 2.0, 0.0),
        );
        let cw = concurrence_wootters(&rho).unwrap().value();
        let cx = concurrence_x((1.0 + g) / 4.0, (1.0 + g) / 4.0, Complex64::new(g / 2.0, 0.0))
            .unwrap()
            .value();
        let cs = concurrence_su2(g).unwrap().value();
        for c in [cw, cx, cs] {
            assert_abs_diff_eq!(c, 0.386, epsilon = 5e-4);
        }
        assert_abs_diff_eq!(cw, cx, epsilon = 1e-10);
        assert_abs_diff_eq!(cw, cs, epsilon = 1e-10);
    }

    #[test]
    fn su2_never_entangles_nonnegative_correlators() {
        for g in [0.0, 0.3, 1.0] {
            assert_eq!(concurrence_su2(g).unwrap().value(), 0.0);
        }
        assert!(concurrence_su2(1.5).is_err());
        assert!(concurrence_su2(-1.5).is_err());
    }

    #[test]
    fn wootters_rejects_unphysical_input() {
        let mut rho = singlet_projector();
        rho[(1, 2)] = Complex64::new(0.9, 0.0); // breaks positivity
        rho[(2, 1)] = Complex64::new(0.9, 0.0);
        assert!(matches!(
            concurrence_wootters(&rho),
            Err(Error::InvalidDensityMatrix(_))
        ));

        let mut rho = singlet_projector();
        rho[(0, 0)] = Complex64::new(0.3, 0.0); // breaks trace
        assert!(concurrence_wootters(&rho).is_err());

        let mut rho = singlet_projector();
        rho[(0, 1)] = Complex64::new(0.0, 0.2); // breaks hermiticity
        assert!(concurrence_wootters(&rho).is_err());

        assert!(concurrence_x(-0.1, 0.2, Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn x_formula_matches_wootters_on_random_states() {
        // Deterministic sweep over valid X-states with complex coherence.
        let mut rng = crate::lanczos::SplitMix64(0xC0FFEE);
        for _ in 0..1000 {
            let mut raw = [0.0f64; 4];
            for r in raw.iter_mut() {
                *r = rng.next_f64() + 0.5 + 1e-3;
            }
            let total: f64 = raw.iter().sum();
            let [u_plus, u_minus, w1, w2] = raw.map(|r| r / total);
            let zmax = (w1 * w2).sqrt();
            let phase = (rng.next_f64() + 0.5) * std::f64::consts::TAU;
            let z = Complex64::from_polar((rng.next_f64() + 0.5) * zmax, phase);
            let rho = x_state(u_plus, u_minus, w1, w2, z);
            let cw = concurrence_wootters(&rho).unwrap().value();
            let cx = concurrence_x(u_plus, u_minus, z).unwrap().value();
            assert_abs_diff_eq!(cw, cx, epsilon = 1e-10);
        }
    }

    #[test]
    fn mg_formula_values() {
        assert_abs_diff_eq!(mg_concurrence(4).unwrap().value(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(
            mg_concurrence(6).unwrap().value(),
            5.0 / 12.0,
            epsilon = 1e-15
        );
        assert!(mg_concurrence(5).is_err());
        assert!(mg_concurrence(2).is_err());
    }

    #[test]
    fn mg_formula_tends_to_quarter() {
        for l in (4..=24).step_by(2) {
            let c = mg_concurrence(l).unwrap().value();
            let bound = 2f64.powi(-(l as i32) / 2 + 2);
            assert!(
                (c - 0.25).abs() < bound,
                "L={l}: |{c} - 1/4| >= {bound}"
            );
        }
    }
}
