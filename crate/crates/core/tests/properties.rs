//! Property tests for the structural invariants.

use std::sync::Arc;

use proptest::prelude::*;

use num_complex::Complex64;
use spinring::basis::{binomial, enumerate_sector, exchange_action, SpinConfig};
use spinring::entanglement::{concurrence_su2, concurrence_wootters, concurrence_x};
use spinring::hamiltonian::build;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sector_sizes_partition_the_space(l in 4usize..=12) {
        let total: usize = (0..=l).map(|n| enumerate_sector(l, n).unwrap().dim()).sum();
        prop_assert_eq!(total, 1usize << l);
    }

    #[test]
    fn index_of_inverts_states(l in 4usize..=10, n_up in 0usize..=10) {
        prop_assume!(n_up <= l);
        let sector = enumerate_sector(l, n_up).unwrap();
        prop_assert_eq!(sector.dim(), binomial(l, n_up));
        for (k, &s) in sector.states().iter().enumerate() {
            prop_assert_eq!(sector.index_of(s), Some(k));
        }
    }

    #[test]
    fn exchange_flip_is_an_involution(bits in 0u32..64, i in 0usize..6, j in 0usize..6) {
        prop_assume!(i != j);
        let s = SpinConfig(bits);
        let (diag, flipped) = exchange_action(6, s, i, j).unwrap();
        match flipped {
            None => prop_assert_eq!(diag, 1.0),
            Some(f) => {
                prop_assert_eq!(diag, -1.0);
                let (_, back) = exchange_action(6, f, i, j).unwrap();
                prop_assert_eq!(back, Some(s));
            }
        }
    }

    #[test]
    fn hamiltonian_is_symmetric_under_inner_products(
        l in 4usize..=8,
        j in -1.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let n_up = l / 2;
        let h = build(l, j, Arc::new(enumerate_sector(l, n_up).unwrap())).unwrap();
        let mut state = seed | 1;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let u: Vec<f64> = (0..h.dim()).map(|_| next()).collect();
        let v: Vec<f64> = (0..h.dim()).map(|_| next()).collect();
        let hu = h.apply(&u).unwrap();
        let hv = h.apply(&v).unwrap();
        let uhv: f64 = u.iter().zip(hv.iter()).map(|(a, b)| a * b).sum();
        let huv: f64 = hu.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        prop_assert!((uhv - huv).abs() <= 1e-12 * uhv.abs().max(1.0));
    }

    #[test]
    fn hamiltonian_is_affine_in_j(l in 4usize..=7, j in -2.0f64..=2.0) {
        let n_up = (l / 2).max(1);
        let sector = Arc::new(enumerate_sector(l, n_up).unwrap());
        let h0 = build(l, 0.0, sector.clone()).unwrap().to_dense();
        let h1 = build(l, 1.0, sector.clone()).unwrap().to_dense();
        let hj = build(l, j, sector).unwrap().to_dense();
        let dev = (&h0 + (&h1 - &h0) * j - &hj).abs().max();
        prop_assert!(dev < 1e-10, "affinity violated by {dev}");
    }

    #[test]
    fn su2_concurrence_monotone_on_entangled_range(a in -1.0f64..=-1.0/3.0, b in -1.0f64..=-1.0/3.0) {
        prop_assume!(a < b);
        let ca = concurrence_su2(a).unwrap().value();
        let cb = concurrence_su2(b).unwrap().value();
        prop_assert!(ca > cb, "C({a}) = {ca} should exceed C({b}) = {cb}");
    }

    #[test]
    fn su2_concurrence_zero_on_separable_range(g in -1.0f64/3.0..=1.0) {
        prop_assert_eq!(concurrence_su2(g).unwrap().value(), 0.0);
    }

    #[test]
    fn x_formula_agrees_with_wootters(
        raw in prop::array::uniform4(1e-3f64..1.0),
        zfrac in 0.0f64..1.0,
        phase in 0.0f64..std::f64::consts::TAU,
    ) {
        let total: f64 = raw.iter().sum();
        let [u_plus, u_minus, w1, w2] = raw.map(|r| r / total);
        let z = Complex64::from_polar(zfrac * (w1 * w2).sqrt(), phase);
        let mut m = nalgebra::Matrix4::<Complex64>::zeros();
        m[(0, 0)] = Complex64::new(u_plus, 0.0);
        m[(1, 1)] = Complex64::new(w1, 0.0);
        m[(2, 2)] = Complex64::new(w2, 0.0);
        m[(3, 3)] = Complex64::new(u_minus, 0.0);
        m[(1, 2)] = z;
        m[(2, 1)] = z.conj();
        let cw = concurrence_wootters(&m).unwrap().value();
        let cx = concurrence_x(u_plus, u_minus, z).unwrap().value();
        prop_assert!((cw - cx).abs() < 1e-10);
        prop_assert!((0.0..=1.0).contains(&cw));
    }
}
