//! Bit-encoded spin-1/2 configurations of an L-site ring, partitioned into
//! fixed-magnetization sectors.
//!
//! A configuration is stored as an unsigned integer whose bit j gives the
//! z-projection of the spin at site j: bit set means up (sigma^z = +1),
//! bit clear means down (sigma^z = -1). Total S^z is conserved by the
//! Hamiltonian, so all heavy linear algebra happens inside one sector of
//! fixed up-spin count.

use crate::error::{Error, Result};

/// Smallest ring handled: below 4 sites the next-nearest bond degenerates
/// into a self-coupling or a doubly counted nearest bond.
pub const MIN_SITES: usize = 4;
/// Largest ring accepted by the basis layer.
pub const MAX_SITES: usize = 24;

/// One spin configuration; bit j = 1 means spin up at site j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinConfig(pub u32);

impl SpinConfig {
    /// Number of up spins.
    pub fn n_up(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_up(self, site: usize) -> bool {
        (self.0 >> site) & 1 == 1
    }

    /// sigma^z eigenvalue (+1 or -1) at `site`.
    pub fn sz(self, site: usize) -> f64 {
        if self.is_up(site) {
            1.0
        } else {
            -1.0
        }
    }

    /// Configuration with the bits at sites `i` and `j` swapped. Only
    /// meaningful when they differ; then the swap is a flip of both.
    pub fn flip_pair(self, i: usize, j: usize) -> SpinConfig {
        SpinConfig(self.0 ^ (1 << i) ^ (1 << j))
    }
}

/// All configurations of an L-site ring with a fixed number of up spins,
/// in canonical (strictly increasing) integer order.
#[derive(Debug, Clone)]
pub struct BasisSector {
    l: usize,
    n_up: usize,
    states: Vec<SpinConfig>,
}

impl BasisSector {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_up(&self) -> usize {
        self.n_up
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[SpinConfig] {
        &self.states
    }

    pub fn state(&self, k: usize) -> SpinConfig {
        self.states[k]
    }

    /// Position of a configuration in the canonical order.
    pub fn index_of(&self, s: SpinConfig) -> Option<usize> {
        self.states.binary_search(&s).ok()
    }
}

/// binomial(n, k) without overflow for n <= 62.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Enumerate the sector with `n_up` up spins on `l` sites.
///
/// States come out strictly increasing (Gosper's hack walks bit patterns of
/// fixed popcount in ascending order), so `index_of` is a binary search.
pub fn enumerate_sector(l: usize, n_up: usize) -> Result<BasisSector> {
    if !(MIN_SITES..=MAX_SITES).contains(&l) {
        return Err(Error::Parameter(format!(
            "site count L={l} outside supported range {MIN_SITES}..={MAX_SITES}"
        )));
    }
    if n_up > l {
        return Err(Error::Parameter(format!(
            "up-spin count {n_up} exceeds site count {l}"
        )));
    }

    let mut states = Vec::with_capacity(binomial(l, n_up));
    if n_up == 0 {
        states.push(SpinConfig(0));
    } else {
        let limit = 1u32 << l;
        let mut s = (1u32 << n_up) - 1;
        loop {
            states.push(SpinConfig(s));
            // Gosper's hack: next integer with the same popcount.
            let c = s & s.wrapping_neg();
            let r = s + c;
            if r >= limit {
                break;
            }
            s = r | (((s ^ r) >> 2) / c);
        }
    }

    debug_assert_eq!(states.len(), binomial(l, n_up));
    Ok(BasisSector { l, n_up, states })
}

/// Action of the Pauli exchange sigma_i . sigma_j on a basis configuration.
///
/// Returns `(diag, flipped)`: the diagonal matrix element (+1 for parallel
/// spins, -1 for antiparallel) and, when the spins differ, the configuration
/// reached by the spin-flip part, whose off-diagonal amplitude is +2.
pub fn exchange_action(
    l: usize,
    s: SpinConfig,
    i: usize,
    j: usize,
) -> Result<(f64, Option<SpinConfig>)> {
    if i >= l || j >= l {
        return Err(Error::Parameter(format!(
            "site index out of range: ({i}, {j}) on {l} sites"
        )));
    }
    if i == j {
        return Err(Error::Parameter("exchange needs two distinct sites".into()));
    }
    if l < MAX_SITES && s.0 >> l != 0 {
        return Err(Error::Parameter(format!(
            "configuration {:#b} has bits above site {l}",
            s.0
        )));
    }
    if s.is_up(i) == s.is_up(j) {
        Ok((1.0, None))
    } else {
        Ok((-1.0, Some(s.flip_pair(i, j))))
    }
}
