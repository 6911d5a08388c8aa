//! Schmidt spectra and entanglement entropies of dense states.

use alloc::vec::Vec;

use faer::{Mat, Side};
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::state::{DenseState, DENSE_LIMIT};
use crate::error::{Error, Result};

/// Squared Schmidt coefficients below this are treated as zero.
pub const LAMBDA_FLOOR: f64 = 1e-14;

/// Squared Schmidt coefficients across a bipartition, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    /// Qubits on side A, ascending.
    pub region: Vec<usize>,
    pub lambdas: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Spectrum from raw weights: sorted descending and normalised.
    pub fn from_weights(region: Vec<usize>, mut lambdas: Vec<f64>) -> Self {
        lambdas.iter_mut().for_each(|l| *l = l.max(0.0));
        lambdas.sort_by(|a, b| b.total_cmp(a));
        let total: f64 = lambdas.iter().sum();
        if total > 0.0 {
            lambdas.iter_mut().for_each(|l| *l /= total);
        }
        SchmidtSpectrum { region, lambdas }
    }

    pub fn entropy(&self) -> f64 {
        entanglement_entropy(&self.lambdas)
    }

    /// Number of coefficients above the numerical floor.
    pub fn rank(&self) -> usize {
        self.lambdas.iter().filter(|&&l| l >= LAMBDA_FLOOR).count()
    }

    /// `Σ √λ_k`.
    pub fn root_sum(&self) -> f64 {
        root_sum(&self.lambdas)
    }
}

/// `−Σ λ log₂ λ` with `0·log 0 = 0` and λ below the floor ignored.
pub fn entanglement_entropy(lambdas: &[f64]) -> f64 {
    let s: f64 = lambdas
        .iter()
        .filter(|&&l| l >= LAMBDA_FLOOR)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// `Σ √λ_k`. By concavity this is at least `2^{S/2}`, with equality on flat spectra.
pub fn root_sum(lambdas: &[f64]) -> f64 {
    lambdas.iter().filter(|&&l| l >= LAMBDA_FLOOR).map(|l| l.sqrt()).sum()
}

fn normalise_region(n: usize, region: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut inside = alloc::vec![false; n];
    for &q in region {
        if q >= n {
            return Err(Error::QubitOutOfRange { qubit: q, n });
        }
        inside[q] = true;
    }
    let a: Vec<usize> = (0..n).filter(|&q| inside[q]).collect();
    let b: Vec<usize> = (0..n).filter(|&q| !inside[q]).collect();
    if a.is_empty() {
        return Err(Error::InvalidCut("region is empty"));
    }
    if b.is_empty() {
        return Err(Error::InvalidCut("region covers every qubit"));
    }
    Ok((a, b))
}

/// Schmidt spectrum of `state` across `region | complement`.
pub fn schmidt_spectrum(state: &DenseState, region: &[usize]) -> Result<SchmidtSpectrum> {
    let n = state.n();
    let (a, b) = normalise_region(n, region)?;
    let rows = 1usize << a.len();
    let cols = 1usize << b.len();
    let spread = |bits: usize, qubits: &[usize]| -> usize {
        qubits
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .fold(0, |acc, (_, &q)| acc | 1 << q)
    };
    let row_idx: Vec<usize> = (0..rows).map(|i| spread(i, &a)).collect();
    let col_idx: Vec<usize> = (0..cols).map(|j| spread(j, &b)).collect();
    let amps = state.amplitudes();
    let m = Mat::<Complex64>::from_fn(rows, cols, |i, j| amps[row_idx[i] | col_idx[j]]);
    let gram = if rows <= cols { &m * m.adjoint() } else { m.adjoint() * &m };
    let sv = gram
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::NoConvergence("eigendecomposition"))?
        .into_iter()
        .map(|x| x.max(0.0))
        .collect();
    Ok(SchmidtSpectrum::from_weights(a, sv))
}

/// Entropy in bits across `region`.
pub fn region_entropy(state: &DenseState, region: &[usize]) -> Result<f64> {
    Ok(schmidt_spectrum(state, region)?.entropy())
}

/// Which bipartitions [`max_entropy`] scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutMode {
    /// The `n − 1` chain cuts `{0..k} | {k..n}`.
    #[default]
    Contiguous,
    /// Every subset of size `⌊n/2⌋`.
    AllBalanced,
}

/// Entropy at each contiguous cut; entry `k` is the cut after qubit `k`.
pub fn contiguous_entropies(state: &DenseState) -> Result<Vec<f64>> {
    let n = state.n();
    (1..n)
        .map(|k| region_entropy(state, &(0..k).collect::<Vec<_>>()))
        .collect()
}

/// `S_max` over the cuts selected by `mode`.
pub fn max_entropy(state: &DenseState, mode: CutMode) -> Result<f64> {
    let n = state.n();
    if n < 2 {
        return Ok(0.0);
    }
    match mode {
        CutMode::Contiguous => Ok(contiguous_entropies(state)?.into_iter().fold(0.0, f64::max)),
        CutMode::AllBalanced => {
            if n > DENSE_LIMIT {
                return Err(Error::BalancedScanLimit { n, limit: DENSE_LIMIT });
            }
            let k = n / 2;
            let mut best = 0.0f64;
            for mask in 0usize..1 << n {
                // fixing qubit n−1 outside A halves the scan when sides are equal
                if mask.count_ones() as usize != k || (2 * k == n && mask >> (n - 1) & 1 == 1) {
                    continue;
                }
                let region: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
                best = best.max(region_entropy(state, &region)?);
            }
            Ok(best)
        }
    }
}
