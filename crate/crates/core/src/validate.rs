//! The cross-check battery behind the `validate` CLI command: every layered
//! pair of routes to the same number is run against its tolerance, and the
//! outcome is reported as a pass/fail table.

use std::sync::Arc;

use num_complex::Complex64;

use crate::basis::enumerate_sector;
use crate::eigen::{full_spectrum, global_ground, ground_space, DEFAULT_DEGENERACY_TOL};
use crate::entanglement::{concurrence_su2, concurrence_wootters, mg_concurrence};
use crate::error::{Error, Result};
use crate::hamiltonian::build;
use crate::lanczos::SplitMix64;
use crate::mg::{dimer_state, mg_energy, mg_superposition, DimerCover};
use crate::observables::{
    correlation_zz, correlations, g2_from_partition, g2_ground_hellmann, reduce_pair, Distance,
    Ensemble, GroundG2, DEFAULT_FD_STEP, DEFAULT_KINK_TOL,
};
use crate::oracle::{dense_build, ORACLE_MAX_SITES};
use crate::scan::{threshold_from_table, ThresholdOptions};
use crate::observables::ThermalTable;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, detail: String) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: false,
            detail,
        }
    }

    fn from_worst(name: &str, worst: f64, tol: f64) -> CheckResult {
        if worst <= tol {
            CheckResult::pass(name, format!("max deviation {worst:.3e} <= {tol:.1e}"))
        } else {
            CheckResult::fail(name, format!("max deviation {worst:.3e} > {tol:.1e}"))
        }
    }
}

fn check_sector_dimension() -> Result<CheckResult> {
    let dim = enumerate_sector(10, 5)?.dim();
    Ok(if dim == 252 {
        CheckResult::pass("sector-dimension", "dim(L=10, n_up=5) = 252".into())
    } else {
        CheckResult::fail("sector-dimension", format!("got {dim}, expected 252"))
    })
}

fn check_hermiticity() -> Result<CheckResult> {
    let l = 8;
    let sector = Arc::new(enumerate_sector(l, 4)?);
    let h = build(l, 0.37, sector)?;
    let mut rng = SplitMix64(0xAB);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let u: Vec<f64> = (0..h.dim()).map(|_| rng.next_f64()).collect();
        let v: Vec<f64> = (0..h.dim()).map(|_| rng.next_f64()).collect();
        let hu = h.apply(&u)?;
        let hv = h.apply(&v)?;
        let uhv: f64 = u.iter().zip(hv.iter()).map(|(a, b)| a * b).sum();
        let huv: f64 = hu.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        worst = worst.max((uhv - huv).abs() / uhv.abs().max(1.0));
    }
    Ok(CheckResult::from_worst(
        "hermiticity(L=8, J=0.37, 100 vectors)",
        worst,
        1e-12,
    ))
}

fn check_sector_vs_dense(max_l: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for l in 4..=max_l.min(8) {
        for j in [-1.0, -0.3, 0.0, 0.24, 0.5, 1.0] {
            let spec = full_spectrum(l, j, false)?;
            let dense = dense_build(l, j)?;
            for (a, b) in spec.eigenvalues().iter().zip(dense.eigenvalues.iter()) {
                worst = worst.max((a - b).abs());
            }
        }
    }
    Ok(CheckResult::from_worst(
        "sector-spectra-vs-dense(L<=8)",
        worst,
        1e-8,
    ))
}

fn check_concurrence_routes(max_l: usize) -> Result<CheckResult> {
    // Wootters on the assembled 4x4 matrix vs the closed X form vs the
    // SU(2) one-argument form, on matrices this code actually produces.
    let mut worst: f64 = 0.0;
    for l in [4usize, 6] {
        if l > max_l {
            continue;
        }
        for j in [0.0, 0.3] {
            let gg = global_ground(l, j, DEFAULT_DEGENERACY_TOL)?;
            let spec = full_spectrum(l, j, true)?;
            let ens_ground = Ensemble::ground(&gg);
            let ens_t1 = Ensemble::thermal(&spec, 0.5)?;
            let ens_t2 = Ensemble::thermal(&spec, 2.0)?;
            for ens in [&ens_ground, &ens_t1, &ens_t2] {
                for (i, jj) in [(0usize, 1usize), (0, 2)] {
                    let rho = reduce_pair(ens, i, jj)?;
                    let cw = concurrence_wootters(&rho.to_matrix())?.value();
                    let cx = rho.concurrence()?.value();
                    let cs = concurrence_su2(rho.gzz())?.value();
                    worst = worst.max((cw - cx).abs()).max((cw - cs).abs());
                }
            }
        }
    }
    Ok(CheckResult::from_worst(
        "wootters-vs-x-vs-su2",
        worst,
        1e-9,
    ))
}

fn check_x_formula_random() -> Result<CheckResult> {
    let mut rng = SplitMix64(0xF00D);
    let mut worst: f64 = 0.0;
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

        let mut m = nalgebra::Matrix4::<Complex64>::zeros();
        m[(0, 0)] = Complex64::new(u_plus, 0.0);
        m[(1, 1)] = Complex64::new(w1, 0.0);
        m[(2, 2)] = Complex64::new(w2, 0.0);
        m[(3, 3)] = Complex64::new(u_minus, 0.0);
        m[(1, 2)] = z;
        m[(2, 1)] = z.conj();
        let cw = concurrence_wootters(&m)?.value();
        let cx = crate::entanglement::concurrence_x(u_plus, u_minus, z)?.value();
        worst = worst.max((cw - cx).abs());
    }
    Ok(CheckResult::from_worst(
        "wootters-vs-x(1000 random states)",
        worst,
        1e-10,
    ))
}

fn check_thermal_g2_routes(max_l: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for l in (4..=max_l.min(8)).step_by(2) {
        for j in [0.0, 0.3] {
            let spec = full_spectrum(l, j, true)?;
            for t in [0.5, 1.0, 2.0, 5.0] {
                let ens = Ensemble::thermal(&spec, t)?;
                let direct = correlation_zz(&ens, Distance::NextNearest)?;
                let fd = g2_from_partition(l, j, t, DEFAULT_FD_STEP)?;
                worst = worst.max((direct - fd).abs());
            }
        }
    }
    Ok(CheckResult::from_worst(
        "thermal-g2: dlnZ/dJ vs direct",
        worst,
        1e-5,
    ))
}

fn check_ground_g2_routes(max_l: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for l in 4..=max_l.min(8) {
        for j in [-1.0, -0.3, 0.0, 0.24] {
            let out = g2_ground_hellmann(l, j, DEFAULT_FD_STEP, DEFAULT_KINK_TOL)?;
            let GroundG2::Smooth(fd) = out else {
                return Ok(CheckResult::fail(
                    "ground-g2: dE/dJ vs direct",
                    format!("unexpected crossing flag at L={l}, J={j}"),
                ));
            };
            let gg = global_ground(l, j, DEFAULT_DEGENERACY_TOL)?;
            let direct = correlation_zz(&Ensemble::ground(&gg), Distance::NextNearest)?;
            worst = worst.max((direct - fd).abs());
        }
    }
    Ok(CheckResult::from_worst(
        "ground-g2: dE/dJ vs direct",
        worst,
        1e-5,
    ))
}

fn check_energy_identity(max_l: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for l in 4..=max_l.min(8) {
        for j in [-0.5, 0.0, 0.4] {
            let gg = global_ground(l, j, DEFAULT_DEGENERACY_TOL)?;
            let cs = correlations(&Ensemble::ground(&gg))?;
            let rhs = 3.0 * l as f64 * cs.g1 + 3.0 * j * l as f64 * cs.g2;
            worst = worst.max((cs.e - rhs).abs() / cs.e.abs().max(1.0));

            let spec = full_spectrum(l, j, true)?;
            for t in [0.7, 3.0] {
                let cs = correlations(&Ensemble::thermal(&spec, t)?)?;
                let rhs = 3.0 * l as f64 * cs.g1 + 3.0 * j * l as f64 * cs.g2;
                worst = worst.max((cs.e - rhs).abs() / cs.e.abs().max(1.0));
            }
        }
    }
    Ok(CheckResult::from_worst(
        "energy-identity E = 3L G1 + 3JL G2",
        worst,
        1e-8,
    ))
}

fn check_mg_construction(max_l: usize) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    // The dimer coverings must be exact eigenstates at J = 1/2 with the
    // known energy, and that energy must be the sector minimum.
    let mut worst: f64 = 0.0;
    for l in (4..=max_l.min(10)).step_by(2) {
        let sector = Arc::new(enumerate_sector(l, l / 2)?);
        let h = build(l, 0.5, sector.clone())?;
        for cover in [DimerCover::Even, DimerCover::Odd] {
            let psi = dimer_state(&sector, cover)?;
            let hpsi = h.apply(psi.as_slice())?;
            let e = mg_energy(l);
            let r: f64 = hpsi
                .iter()
                .zip(psi.iter())
                .map(|(a, b)| (a - e * b).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(r);
        }
        let sol = ground_space(&h, DEFAULT_DEGENERACY_TOL)?;
        worst = worst.max((sol.energy - mg_energy(l)).abs());
    }
    out.push(CheckResult::from_worst(
        "mg-dimer-states are ground states at J=1/2",
        worst,
        1e-9,
    ));

    // Pinned values of the closed-form expression.
    let v4 = mg_concurrence(4)?.value();
    let v6 = mg_concurrence(6)?.value();
    let formula_ok = (v4 - 0.25).abs() < 1e-12 && (v6 - 5.0 / 12.0).abs() < 1e-12;
    out.push(if formula_ok {
        CheckResult::pass(
            "mg-formula pinned values",
            format!("C(4) = {v4} = 1/4, C(6) = {v6} = 5/12"),
        )
    } else {
        CheckResult::fail(
            "mg-formula pinned values",
            format!("C(4) = {v4}, C(6) = {v6}"),
        )
    });

    // Both the formula and the measured superposition concurrence approach
    // 1/4; the finite-size values themselves are known to disagree (see the
    // informational line), so only the limit is gated here.
    let mut info = String::from("ED vs formula per L:");
    let mut limit_worst: f64 = 0.0;
    for l in (4..=max_l.min(10)).step_by(2) {
        let sector = enumerate_sector(l, l / 2)?;
        let psi = mg_superposition(&sector)?;
        let ens = Ensemble::pure(&sector, &psi, 0.5, mg_energy(l))?;
        let rho = reduce_pair(&ens, 0, 1)?;
        let c_ed = rho.concurrence()?.value();
        let c_formula = mg_concurrence(l)?.value();
        info.push_str(&format!(" L={l}: {c_ed:.6}/{c_formula:.6}"));
        let envelope = 2f64.powi(-(l as i32) / 2 + 2);
        limit_worst = limit_worst.max((c_ed - 0.25).abs() - envelope);
        limit_worst = limit_worst.max((c_formula - 0.25).abs() - envelope);
    }
    out.push(if limit_worst <= 0.0 {
        CheckResult::pass(
            "mg-superposition and formula tend to 1/4",
            format!("both inside the 2^(2-L/2) envelope; {info}"),
        )
    } else {
        CheckResult::fail(
            "mg-superposition and formula tend to 1/4",
            format!("envelope exceeded by {limit_worst:.3e}; {info}"),
        )
    });

    Ok(out)
}

fn check_pair_rdm_vs_oracle(max_l: usize) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for l in (4..=max_l.min(8)).step_by(2) {
        for j in [0.0, 0.4] {
            let dense = dense_build(l, j)?;
            let gg = global_ground(l, j, DEFAULT_DEGENERACY_TOL)?;
            let spec = full_spectrum(l, j, true)?;
            let ens_ground = Ensemble::ground(&gg);
            let ens_thermal = Ensemble::thermal(&spec, 1.3)?;
            for (ens, kind) in [
                (&ens_ground, crate::observables::EnsembleKind::Ground),
                (
                    &ens_thermal,
                    crate::observables::EnsembleKind::Thermal { temperature: 1.3 },
                ),
            ] {
                for (i, jj) in [(0usize, 1usize), (1, 3)] {
                    let fast = reduce_pair(ens, i, jj)?;
                    let slow = dense.pair_rdm(kind, i, jj, DEFAULT_DEGENERACY_TOL)?;
                    worst = worst
                        .max((fast.u_plus - slow.u_plus).abs())
                        .max((fast.u_minus - slow.u_minus).abs())
                        .max((fast.w1 - slow.w1).abs())
                        .max((fast.w2 - slow.w2).abs())
                        .max((fast.z - slow.z).norm());
                }
            }
        }
    }
    Ok(CheckResult::from_worst(
        "pair-rdm: sector route vs dense partial trace",
        worst,
        1e-9,
    ))
}

fn check_threshold_bracketing() -> Result<CheckResult> {
    let opts = ThresholdOptions::default();
    let table = ThermalTable::build(5, -0.5)?;
    let t_th = threshold_from_table(&table, Distance::Nearest, &opts)?;
    let below = concurrence_su2(table.gzz(t_th - 10.0 * opts.tol, Distance::Nearest)?)?.value();
    let above = concurrence_su2(table.gzz(t_th + 10.0 * opts.tol, Distance::Nearest)?)?.value();
    Ok(if below > opts.eps && above <= opts.eps {
        CheckResult::pass(
            "threshold-bracketing(L=5, J=-0.5)",
            format!("T_th = {t_th:.4}; C straddles eps across it"),
        )
    } else {
        CheckResult::fail(
            "threshold-bracketing(L=5, J=-0.5)",
            format!("T_th = {t_th:.4}, C(-10 tol) = {below:.3e}, C(+10 tol) = {above:.3e}"),
        )
    })
}

/// Run the whole battery. `max_l` bounds the heaviest comparisons.
pub fn run_validation(max_l: usize) -> Result<Vec<CheckResult>> {
    if max_l > ORACLE_MAX_SITES {
        return Err(Error::Parameter(format!(
            "validation is capped at L={ORACLE_MAX_SITES}"
        )));
    }
    if max_l < 4 {
        return Err(Error::Parameter("validation needs max_l >= 4".into()));
    }
    let mut results = vec![
        check_sector_dimension()?,
        check_hermiticity()?,
        check_sector_vs_dense(max_l)?,
        check_concurrence_routes(max_l)?,
        check_x_formula_random()?,
        check_thermal_g2_routes(max_l)?,
        check_ground_g2_routes(max_l)?,
        check_energy_identity(max_l)?,
        check_pair_rdm_vs_oracle(max_l)?,
        check_threshold_bracketing()?,
    ];
    results.extend(check_mg_construction(max_l)?);
    Ok(results)
}
