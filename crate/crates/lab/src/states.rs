//! Initial states for the experiments.

use entrotter_core::bounds::commutator_entropy_raw;
use entrotter_core::dense::{
    commutator_expectation, exact_evolve, schmidt_spectrum, DenseState, ProductPattern, SchmidtSpectrum,
};
use entrotter_core::hamiltonian::HamiltonianModel;
use entrotter_core::mps::MpsState;
use entrotter_core::pauli::{Pauli, PauliTerm};
use entrotter_core::trotter::{build_plan, execute, Ordering};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Uniform};

use crate::config::ReferenceSpec;
use crate::error::LabResult;

/// `e^{−iHt}|pattern⟩` by exact evolution.
pub fn quench_dense(model: &HamiltonianModel, pattern: &ProductPattern, t: f64) -> LabResult<DenseState> {
    let psi = DenseState::from_product(model.n(), pattern)?;
    if t == 0.0 {
        return Ok(psi);
    }
    Ok(exact_evolve(&psi, model, t)?)
}

/// `e^{−iHt}|pattern⟩` approximated by the reference formula on an MPS.
pub fn quench_mps(
    model: &HamiltonianModel,
    pattern: &ProductPattern,
    t: f64,
    reference: ReferenceSpec,
    chi_max: usize,
    cutoff: f64,
) -> LabResult<MpsState> {
    let psi = MpsState::from_product(model.n(), pattern, chi_max)?.with_cutoff(cutoff);
    if t == 0.0 {
        return Ok(psi);
    }
    let plan = build_plan(model, reference.p, t, reference.r, Ordering::EvenOdd)?;
    Ok(execute(&plan, model, &psi)?)
}

/// `‖a − b‖` for two MPS on the same chain.
pub fn mps_distance(a: &MpsState, b: &MpsState) -> LabResult<f64> {
    let na = a.norm();
    let nb = b.norm();
    let cross = a.overlap(b)?.re;
    Ok((na * na + nb * nb - 2.0 * cross).max(0.0).sqrt())
}

/// Random state whose entanglement across `cut` (qubits `0..cut` against the
/// rest) is at most `depth` bits.
///
/// Every qubit gets a random rotation, then each pair `(cut−1−j, cut+j)`
/// with `j < depth` gets a random two-qubit unitary.
pub fn controlled_entropy_state(n: usize, cut: usize, depth: usize, seed: u64) -> LabResult<DenseState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angle = Uniform::new(-std::f64::consts::PI, std::f64::consts::PI).expect("valid range");
    let mut psi = DenseState::from_product(n, &ProductPattern::Zeros)?;
    for q in 0..n {
        for p in [Pauli::Z, Pauli::Y, Pauli::Z] {
            psi.apply_term_exponential_mut(&PauliTerm::single(q, p), angle.sample(&mut rng))?;
        }
    }
    let pairs = depth.min(cut).min(n - cut);
    for j in 0..pairs {
        let (a, b) = (cut - 1 - j, cut + j);
        for _ in 0..3 {
            for pa in Pauli::ALL {
                for pb in Pauli::ALL {
                    let term = PauliTerm::real(1.0, [(a, pa), (b, pb)]);
                    psi.apply_term_exponential_mut(&term, angle.sample(&mut rng))?;
                }
            }
            let q = if rng.next_u32() & 1 == 0 { a } else { b };
            psi.apply_term_exponential_mut(&PauliTerm::single(q, Pauli::Y), angle.sample(&mut rng))?;
        }
    }
    Ok(psi)
}

/// Pauli strings of weight one and two on `window`.
fn window_strings(window: &[usize]) -> Vec<PauliTerm> {
    let mut out = Vec::new();
    for (i, &q) in window.iter().enumerate() {
        for p in Pauli::ALL {
            out.push(PauliTerm::single(q, p));
        }
        for &q2 in &window[i + 1..] {
            for p in Pauli::ALL {
                for p2 in Pauli::ALL {
                    out.push(PauliTerm::real(1.0, [(q, p), (q2, p2)]));
                }
            }
        }
    }
    out
}

/// Term pairs `(a, b)` for a scan across `cut`: `a` ranges over strings on
/// the four qubits around the cut that touch both sides, `b` over every
/// string on those qubits that anticommutes with `a`.
pub fn straddling_pairs(n: usize, cut: usize) -> Vec<(PauliTerm, PauliTerm)> {
    let lo = cut.saturating_sub(2);
    let hi = (cut + 2).min(n);
    let window: Vec<usize> = (lo..hi).collect();
    let strings = window_strings(&window);
    let straddles = |t: &PauliTerm| t.support().any(|q| q < cut) && t.support().any(|q| q >= cut);
    let mut pairs = Vec::new();
    for a in strings.iter().filter(|t| straddles(t)) {
        for b in &strings {
            if !a.commutes_with(b) {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    pairs
}

/// Outcome of scanning one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorScan {
    pub spectrum: SchmidtSpectrum,
    pub entropy: f64,
    pub pairs: usize,
    /// `max |⟨[a, b]⟩|` over the scanned pairs.
    pub max_commutator: f64,
    /// Largest `|⟨[a, b]⟩| / (2·2^S‖a‖‖b‖)`.
    pub max_ratio: f64,
    /// Pairs with `|⟨[a, b]⟩| > 2·2^S‖a‖‖b‖`.
    pub violations: usize,
}

pub fn scan_commutators(psi: &DenseState, cut: usize) -> LabResult<CommutatorScan> {
    let region: Vec<usize> = (0..cut).collect();
    let spectrum = schmidt_spectrum(psi, &region)?;
    let entropy = spectrum.entropy();
    let pairs = straddling_pairs(psi.n(), cut);
    let mut max_commutator = 0.0f64;
    let mut max_ratio = 0.0f64;
    let mut violations = 0;
    for (a, b) in &pairs {
        let v = commutator_expectation(psi, std::slice::from_ref(a), std::slice::from_ref(b))?.norm();
        let bound = commutator_entropy_raw(entropy, a.norm(), b.norm(), None);
        max_commutator = max_commutator.max(v);
        max_ratio = max_ratio.max(v / bound);
        if v > bound * (1.0 + 1e-12) {
            violations += 1;
        }
    }
    Ok(CommutatorScan {
        spectrum,
        entropy,
        pairs: pairs.len(),
        max_commutator,
        max_ratio,
        violations,
    })
}
