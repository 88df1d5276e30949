//! Valence-bond (dimer) product states on an even ring.
//!
//! A dimer [i, j] is the two-site singlet (|0_i 1_j> - |1_i 0_j>)/sqrt(2).
//! The two nearest-neighbor coverings
//!
//!   psi_even = [0,1][2,3]...[L-2,L-1]
//!   psi_odd  = [L-1,0][1,2]...[L-3,L-2]
//!
//! are exact, degenerate ground states of H(J) at J = 1/2 with total energy
//! -(3/2) L, and their overlap is (-1)^(L/2) 2^(1 - L/2). Both carry
//! n_up = L/2, so they live in the half-filled sector.

use nalgebra::DVector;

use crate::basis::BasisSector;
use crate::error::{Error, Result};

/// Which of the two nearest-neighbor dimer coverings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimerCover {
    /// Bonds (0,1), (2,3), ..., (L-2, L-1).
    Even,
    /// Bonds (L-1, 0), (1,2), ..., (L-3, L-2).
    Odd,
}

/// Ground-state energy of H(1/2) on an even ring, in Pauli units.
pub fn mg_energy(l: usize) -> f64 {
    -1.5 * l as f64
}

fn covering_bonds(l: usize, cover: DimerCover) -> Vec<(usize, usize)> {
    match cover {
        DimerCover::Even => (0..l / 2).map(|k| (2 * k, 2 * k + 1)).collect(),
        DimerCover::Odd => {
            let mut bonds = vec![(l - 1, 0)];
            bonds.extend((0..l / 2 - 1).map(|k| (2 * k + 1, 2 * k + 2)));
            bonds
        }
    }
}

/// Expand a dimer covering into a normalized sector vector.
pub fn dimer_state(sector: &BasisSector, cover: DimerCover) -> Result<DVector<f64>> {
    let l = sector.l();
    if l % 2 != 0 {
        return Err(Error::Parameter(format!(
            "dimer coverings need an even ring, got L={l}"
        )));
    }
    if sector.n_up() != l / 2 {
        return Err(Error::Parameter(format!(
            "dimer states carry n_up = L/2 = {}, but the sector has n_up = {}",
            l / 2,
            sector.n_up()
        )));
    }

    let bonds = covering_bonds(l, cover);
    let pairs = bonds.len();
    let amp = 2f64.powi(-(pairs as i32) / 2)
        * if pairs % 2 == 1 {
            std::f64::consts::FRAC_1_SQRT_2
        } else {
            1.0
        };

    let mut v = DVector::zeros(sector.dim());
    // Each dimer contributes |0_i 1_j> with + or |1_i 0_j> with -; walk all
    // 2^(L/2) choices.
    for choice in 0u32..(1u32 << pairs) {
        let mut bits = 0u32;
        let mut sign = 1.0;
        for (k, &(i, j)) in bonds.iter().enumerate() {
            if (choice >> k) & 1 == 1 {
                bits |= 1 << i;
                sign = -sign;
            } else {
                bits |= 1 << j;
            }
        }
        let idx = sector
            .index_of(crate::basis::SpinConfig(bits))
            .expect("dimer component has n_up = L/2");
        v[idx] += sign * amp;
    }
    Ok(v)
}

/// The normalized equal-weight superposition of the two coverings.
pub fn mg_superposition(sector: &BasisSector) -> Result<DVector<f64>> {
    let even = dimer_state(sector, DimerCover::Even)?;
    let odd = dimer_state(sector, DimerCover::Odd)?;
    let mut sum = even + odd;
    let norm = sum.norm();
    if norm < 1e-12 {
        return Err(Error::Consistency(
            "dimer coverings cancelled; superposition is null".into(),
        ));
    }
    sum /= norm;
    Ok(sum)
}

/// Overlap <psi_even | psi_odd> in closed form.
pub fn covering_overlap(l: usize) -> f64 {
    let half = (l / 2) as i32;
    let sign = if half % 2 == 0 { 1.0 } else { -1.0 };
    sign * 2f64.powi(1 - half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::enumerate_sector;
    use crate::hamiltonian::build;
    use approx::assert_abs_diff_eq;
    use std::sync::Arc;

    #[test]
    fn coverings_are_exact_eigenstates_at_half() {
        for l in [4usize, 6, 8, 10] {
            let sector = Arc::new(enumerate_sector(l, l / 2).unwrap());
            let h = build(l, 0.5, sector.clone()).unwrap();
            for cover in [DimerCover::Even, DimerCover::Odd] {
                let psi = dimer_state(&sector, cover).unwrap();
                assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-12);
                let hpsi = h.apply(psi.as_slice()).unwrap();
                let e = mg_energy(l);
                let r: f64 = hpsi
                    .iter()
                    .zip(psi.iter())
                    .map(|(a, b)| (a - e * b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(r < 1e-10, "L={l}: residual {r}");
            }
        }
    }

    #[test]
    fn covering_overlap_matches_closed_form() {
        for l in [4usize, 6, 8, 10, 12] {
            let sector = enumerate_sector(l, l / 2).unwrap();
            let even = dimer_state(&sector, DimerCover::Even).unwrap();
            let odd = dimer_state(&sector, DimerCover::Odd).unwrap();
            assert_abs_diff_eq!(even.dot(&odd), covering_overlap(l), epsilon = 1e-12);
        }
    }

    #[test]
    fn superposition_is_normalized_ground_state() {
        let l = 8;
        let sector = Arc::new(enumerate_sector(l, 4).unwrap());
        let psi = mg_superposition(&sector).unwrap();
        assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-12);
        let h = build(l, 0.5, sector.clone()).unwrap();
        let hpsi = h.apply(psi.as_slice()).unwrap();
        for (a, b) in hpsi.iter().zip(psi.iter()) {
            assert_abs_diff_eq!(*a, mg_energy(l) * b, epsilon = 1e-10);
        }
    }

    #[test]
    fn rejects_wrong_sector() {
        let sector = enumerate_sector(6, 2).unwrap();
        assert!(dimer_state(&sector, DimerCover::Even).is_err());
    }
}
