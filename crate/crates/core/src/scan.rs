//! Parameter sweeps: ground-state J-scans, thermal (T, J) concurrence
//! grids, and threshold-temperature curves.
//!
//! Grid points are independent work items dispatched through rayon; results
//! are keyed by grid index, so output ordering does not depend on the
//! worker count.

use rayon::prelude::*;

use crate::eigen::{global_ground, FULL_SPECTRUM_MAX_SITES};
use crate::entanglement::concurrence_su2;
use crate::error::{Error, Result};
use crate::observables::{
    correlations, g2_ground_hellmann, Distance, Ensemble, GroundG2, ThermalTable,
    DEFAULT_FD_STEP, DEFAULT_KINK_TOL,
};

pub use crate::eigen::DEFAULT_DEGENERACY_TOL;

/// Evenly spaced grid including both endpoints.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![min];
    }
    let h = (max - min) / (steps - 1) as f64;
    (0..steps).map(|k| min + h * k as f64).collect()
}

#[derive(Debug, Clone, Copy)]
pub struct GroundScanPoint {
    pub j: f64,
    pub e0: f64,
    pub g1: f64,
    pub g2: f64,
    pub c1: f64,
    pub c2: f64,
    /// Set where the one-sided dE/dJ derivatives disagree (level crossing).
    pub crossing: bool,
}

#[derive(Debug, Clone)]
pub struct GroundScan {
    pub l: usize,
    pub points: Vec<GroundScanPoint>,
}

impl GroundScan {
    pub fn j_grid(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.j).collect()
    }
}

fn ground_point(l: usize, j: f64) -> Result<GroundScanPoint> {
    let gg = global_ground(l, j, DEFAULT_DEGENERACY_TOL)?;
    let ens = Ensemble::ground(&gg);
    let cs = correlations(&ens)?;
    let crossing = matches!(
        g2_ground_hellmann(l, j, DEFAULT_FD_STEP, DEFAULT_KINK_TOL)?,
        GroundG2::Crossing { .. }
    );
    Ok(GroundScanPoint {
        j,
        e0: gg.energy,
        g1: cs.g1,
        g2: cs.g2,
        c1: concurrence_su2(cs.g1)?.value(),
        c2: concurrence_su2(cs.g2)?.value(),
        crossing,
    })
}

/// Sweep the ground ensemble over an even J grid, recording correlators,
/// concurrences, and level-crossing flags.
pub fn ground_scan(l: usize, j_min: f64, j_max: f64, steps: usize) -> Result<GroundScan> {
    if !j_min.is_finite() || !j_max.is_finite() || j_min >= j_max {
        return Err(Error::Parameter(format!(
            "need j_min < j_max, got [{j_min}, {j_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Parameter("a scan needs at least 2 steps".into()));
    }
    let grid = linspace(j_min, j_max, steps);
    let points: Vec<GroundScanPoint> = grid
        .par_iter()
        .map(|&j| ground_point(l, j).map_err(|e| e.annotate(format!("J={j}"))))
        .collect::<Result<_>>()?;
    Ok(GroundScan { l, points })
}

/// Thermal concurrence surfaces C1(T, J) and C2(T, J).
#[derive(Debug, Clone)]
pub struct ThermalGrid {
    pub l: usize,
    pub j_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    /// Row index = temperature, column index = coupling.
    pub c1: Vec<Vec<f64>>,
    pub c2: Vec<Vec<f64>>,
}

impl ThermalGrid {
    pub fn concurrence(&self, distance: Distance) -> &[Vec<f64>] {
        match distance {
            Distance::Nearest => &self.c1,
            Distance::NextNearest => &self.c2,
        }
    }
}

fn validate_ascending(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Parameter(format!("{name} grid is empty")));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(format!(
            "{name} grid must be strictly ascending"
        )));
    }
    Ok(())
}

/// One full spectrum per J column, reused across the whole temperature
/// column.
pub fn thermal_grid(l: usize, j_grid: &[f64], t_grid: &[f64]) -> Result<ThermalGrid> {
    if l > FULL_SPECTRUM_MAX_SITES {
        return Err(Error::Resource(format!(
            "thermal grids are capped at L={FULL_SPECTRUM_MAX_SITES}, got L={l}"
        )));
    }
    validate_ascending("J", j_grid)?;
    validate_ascending("T", t_grid)?;
    if t_grid[0] <= 0.0 {
        return Err(Error::Parameter("temperatures must be positive".into()));
    }

    // columns[ji] = (c1 column, c2 column) over the T grid
    let columns: Vec<(Vec<f64>, Vec<f64>)> = j_grid
        .par_iter()
        .map(|&j| -> Result<(Vec<f64>, Vec<f64>)> {
            let table = ThermalTable::build(l, j).map_err(|e| e.annotate(format!("J={j}")))?;
            let mut c1 = Vec::with_capacity(t_grid.len());
            let mut c2 = Vec::with_capacity(t_grid.len());
            for &t in t_grid {
                c1.push(concurrence_su2(table.gzz(t, Distance::Nearest)?)?.value());
                c2.push(concurrence_su2(table.gzz(t, Distance::NextNearest)?)?.value());
            }
            Ok((c1, c2))
        })
        .collect::<Result<_>>()?;

    let mut c1 = vec![vec![0.0; j_grid.len()]; t_grid.len()];
    let mut c2 = vec![vec![0.0; j_grid.len()]; t_grid.len()];
    for (ji, (col1, col2)) in columns.into_iter().enumerate() {
        for ti in 0..t_grid.len() {
            c1[ti][ji] = col1[ti];
            c2[ti][ji] = col2[ti];
        }
    }

    Ok(ThermalGrid {
        l,
        j_grid: j_grid.to_vec(),
        t_grid: t_grid.to_vec(),
        c1,
        c2,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ThresholdOptions {
    /// Upper end of the search window.
    pub t_max: f64,
    /// Positivity cutoff: concurrence at or below this counts as zero.
    pub eps: f64,
    /// Bisection width at which the search stops.
    pub tol: f64,
    /// Points of the descending geometric bracketing grid.
    pub coarse_points: usize,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        ThresholdOptions {
            t_max: 20.0,
            eps: 1e-8,
            tol: 1e-4,
            coarse_points: 64,
        }
    }
}

/// Threshold temperature for one precomputed (L, J) table.
///
/// T_th is the supremum of temperatures with positive concurrence; because
/// thermal fluctuations can enhance the concurrence before killing it, the
/// search scans DOWN from t_max for the highest sign change and only then
/// bisects. Returns 0 when the concurrence is nonpositive everywhere.
pub fn threshold_from_table(
    table: &ThermalTable,
    distance: Distance,
    opts: &ThresholdOptions,
) -> Result<f64> {
    let good = |x: f64| x.is_finite() && x > 0.0;
    if !good(opts.t_max) || !good(opts.tol) || !good(opts.eps) || opts.coarse_points < 2 {
        return Err(Error::Parameter("bad threshold options".into()));
    }
    let c_of = |t: f64| -> Result<f64> {
        Ok(concurrence_su2(table.gzz(t, distance)?)?.value())
    };

    if c_of(opts.t_max)? > opts.eps {
        return Err(Error::Parameter(format!(
            "concurrence still positive at t_max = {}; enlarge the window",
            opts.t_max
        )));
    }

    // Descending geometric grid from t_max to tol.
    let n = opts.coarse_points;
    let ratio = (opts.tol / opts.t_max).powf(1.0 / (n - 1) as f64);
    let mut hi = opts.t_max;
    let mut lo = None;
    for k in 1..n {
        let t = opts.t_max * ratio.powi(k as i32);
        if c_of(t)? > opts.eps {
            lo = Some(t);
            break;
        }
        hi = t;
    }
    let Some(mut lo) = lo else {
        return Ok(0.0);
    };

    while hi - lo > opts.tol {
        let mid = 0.5 * (lo + hi);
        if c_of(mid)? > opts.eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Threshold temperature at a single (L, J), building the spectrum here.
pub fn threshold_temperature(
    l: usize,
    j: f64,
    distance: Distance,
    opts: &ThresholdOptions,
) -> Result<f64> {
    let table = ThermalTable::build(l, j)?;
    threshold_from_table(&table, distance, opts)
}

#[derive(Debug, Clone)]
pub struct ThresholdCurve {
    pub l: usize,
    pub distance: Distance,
    pub j_grid: Vec<f64>,
    pub t_th: Vec<f64>,
    /// Bisection width the values were resolved to.
    pub resolution: f64,
}

/// Threshold curves T_th(J) for several ring sizes.
pub fn threshold_curve(
    l_list: &[usize],
    j_grid: &[f64],
    distance: Distance,
    opts: &ThresholdOptions,
) -> Result<Vec<ThresholdCurve>> {
    validate_ascending("J", j_grid)?;
    for &l in l_list {
        if !(4..=12).contains(&l) {
            return Err(Error::Parameter(format!(
                "threshold curves cover L in 4..=12, got {l}"
            )));
        }
    }
    l_list
        .iter()
        .map(|&l| {
            let t_th: Vec<f64> = j_grid
                .par_iter()
                .map(|&j| {
                    threshold_temperature(l, j, distance, opts)
                        .map_err(|e| e.annotate(format!("L={l}, J={j}")))
                })
                .collect::<Result<_>>()?;
            Ok(ThresholdCurve {
                l,
                distance,
                j_grid: j_grid.to_vec(),
                t_th,
                resolution: opts.tol,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-1.0, 1.0, 5);
        assert_eq!(g.len(), 5);
        assert_abs_diff_eq!(g[0], -1.0);
        assert_abs_diff_eq!(g[4], 1.0);
        assert_abs_diff_eq!(g[2], 0.0);
    }

    #[test]
    fn ground_scan_l4_reference_point() {
        let scan = ground_scan(4, -0.1, 0.1, 3).unwrap();
        let mid = &scan.points[1];
        assert_abs_diff_eq!(mid.j, 0.0);
        assert_abs_diff_eq!(mid.e0, -8.0, epsilon = 1e-9);
        assert_abs_diff_eq!(mid.g1, -2.0 / 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(mid.c1, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(mid.c2, 0.0, epsilon = 1e-12);
        assert!(!mid.crossing);
    }

    #[test]
    fn stored_concurrences_recompute_from_stored_correlators() {
        let scan = ground_scan(6, -0.4, 0.8, 7).unwrap();
        for p in &scan.points {
            assert_eq!(p.c1, concurrence_su2(p.g1).unwrap().value());
            assert_eq!(p.c2, concurrence_su2(p.g2).unwrap().value());
            assert!((0.0..=1.0).contains(&p.c1));
            assert!((0.0..=1.0).contains(&p.c2));
        }
    }

    #[test]
    fn crossing_flag_raised_near_half() {
        let scan = ground_scan(6, 0.4, 0.6, 5).unwrap();
        let flagged: Vec<f64> = scan
            .points
            .iter()
            .filter(|p| p.crossing)
            .map(|p| p.j)
            .collect();
        assert!(
            flagged.iter().any(|&j| (j - 0.5).abs() < 0.06),
            "no crossing flag near J = 1/2: {flagged:?}"
        );
    }

    #[test]
    fn thermal_grid_shape_and_range() {
        let j_grid = linspace(-1.0, 1.0, 5);
        let t_grid = linspace(0.5, 30.0, 4);
        let grid = thermal_grid(4, &j_grid, &t_grid).unwrap();
        assert_eq!(grid.c1.len(), 4);
        assert_eq!(grid.c1[0].len(), 5);
        for row in grid.c1.iter().chain(grid.c2.iter()) {
            for &c in row {
                assert!((0.0..=1.0).contains(&c));
            }
        }
        // every column dead at the hot end of the grid
        for ji in 0..j_grid.len() {
            assert_eq!(grid.c1[3][ji], 0.0);
            assert_eq!(grid.c2[3][ji], 0.0);
        }
    }

    #[test]
    fn threshold_bracketing_is_consistent() {
        let opts = ThresholdOptions::default();
        let table = ThermalTable::build(5, -0.5).unwrap();
        let t_th = threshold_from_table(&table, Distance::Nearest, &opts).unwrap();
        assert!(t_th > 0.0);
        let below = concurrence_su2(
            table.gzz(t_th - 10.0 * opts.tol, Distance::Nearest).unwrap(),
        )
        .unwrap()
        .value();
        let above = concurrence_su2(
            table.gzz(t_th + 10.0 * opts.tol, Distance::Nearest).unwrap(),
        )
        .unwrap()
        .value();
        assert!(below > opts.eps, "C just below T_th = {below}");
        assert!(above <= opts.eps, "C just above T_th = {above}");
    }

    #[test]
    fn threshold_zero_when_never_entangled() {
        // Next-nearest pairs of the 6-ring never entangle.
        let t = threshold_temperature(
            6,
            0.3,
            Distance::NextNearest,
            &ThresholdOptions::default(),
        )
        .unwrap();
        assert_eq!(t, 0.0);
    }

    #[test]
    fn threshold_demands_wide_enough_window() {
        let opts = ThresholdOptions {
            t_max: 0.5,
            ..ThresholdOptions::default()
        };
        // At J = 0 the 4-ring stays entangled well past T = 0.5.
        assert!(threshold_temperature(4, 0.0, Distance::Nearest, &opts).is_err());
    }

    #[test]
    fn thermal_matches_ground_at_low_temperature() {
        for l in [4usize, 6, 8] {
            for j in [-0.5, 0.0, 0.3] {
                let scan = ground_scan(l, j - 0.01, j + 0.01, 3).unwrap();
                let ground_c1 = scan.points[1].c1;
                let table = ThermalTable::build(l, j).unwrap();
                let c1 = concurrence_su2(table.gzz(0.01, Distance::Nearest).unwrap())
                    .unwrap()
                    .value();
                assert!(
                    (c1 - ground_c1).abs() < 0.01,
                    "L={l}, J={j}: thermal {c1} vs ground {ground_c1}"
                );
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(ground_scan(4, 1.0, -1.0, 5).is_err());
        assert!(ground_scan(4, -1.0, 1.0, 1).is_err());
        assert!(thermal_grid(16, &[0.0, 1.0], &[1.0, 2.0]).is_err());
        assert!(thermal_grid(4, &[0.0], &[0.0, 1.0]).is_err());
        assert!(thermal_grid(4, &[1.0, 0.0], &[1.0]).is_err());
        assert!(threshold_curve(&[3], &[0.0, 1.0], Distance::Nearest, &ThresholdOptions::default()).is_err());
    }
}
