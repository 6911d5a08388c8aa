use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianModel;
use crate::pauli::PauliTerm;

/// Largest register the dense backend will evolve (16384 amplitudes).
pub const DENSE_LIMIT: usize = 14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Product-state patterns shared by both backends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductPattern {
    /// `|0…0⟩`
    Zeros,
    /// `|+⟩^⊗n`
    Plus,
    /// Computational basis state; entry `k` is the value of qubit `k`.
    Bits(Vec<u8>),
}

impl ProductPattern {
    /// Parses a bit string whose `k`-th character is qubit `k`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(Error::InvalidParameter(alloc::format!("bad bit '{c}' in pattern"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ProductPattern::Bits)
    }

    /// Single-qubit amplitudes `(⟨0|q⟩, ⟨1|q⟩)` for qubit `k`.
    pub fn local_amplitudes(&self, k: usize) -> [Complex64; 2] {
        match self {
            ProductPattern::Zeros => [Complex64::new(1.0, 0.0), ZERO],
            ProductPattern::Plus => {
                let a = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
                [a, a]
            }
            ProductPattern::Bits(bits) => {
                if bits.get(k).copied().unwrap_or(0) == 0 {
                    [Complex64::new(1.0, 0.0), ZERO]
                } else {
                    [ZERO, Complex64::new(1.0, 0.0)]
                }
            }
        }
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        match self {
            ProductPattern::Bits(b) if b.len() != n => Err(Error::SizeMismatch {
                left: b.len(),
                right: n,
            }),
            _ => Ok(()),
        }
    }
}

/// Full `2^n` amplitude vector. Qubit 0 is the least-significant bit of the
/// basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

pub(crate) fn check_dense_limit(n: usize) -> Result<()> {
    if n > DENSE_LIMIT {
        Err(Error::DenseLimit { n, limit: DENSE_LIMIT })
    } else {
        Ok(())
    }
}

impl DenseState {
    pub fn from_product(n: usize, pattern: &ProductPattern) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewQubits { min: 1, got: 0 });
        }
        check_dense_limit(n)?;
        pattern.check_len(n)?;
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for k in 0..n {
            let [a0, a1] = pattern.local_amplitudes(k);
            let mut next = Vec::with_capacity(amps.len() * 2);
            next.extend(amps.iter().map(|&a| a * a0));
            next.extend(amps.iter().map(|&a| a * a1));
            amps = next;
        }
        Ok(DenseState { n, amps })
    }

    /// Wraps an amplitude vector, normalising it.
    pub fn from_amplitudes(n: usize, mut amps: Vec<Complex64>) -> Result<Self> {
        check_dense_limit(n)?;
        if amps.len() != 1usize << n {
            return Err(Error::SizeMismatch {
                left: amps.len(),
                right: 1usize << n,
            });
        }
        let norm = l2_norm(&amps);
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(DenseState { n, amps })
    }

    pub(crate) fn from_raw(n: usize, amps: Vec<Complex64>) -> Self {
        DenseState { n, amps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &DenseState) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    fn check_same(&self, other: &DenseState) -> Result<()> {
        if self.n != other.n {
            Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_support(&self, term: &PauliTerm) -> Result<()> {
        match term.max_qubit() {
            Some(q) if q >= self.n => Err(Error::QubitOutOfRange { qubit: q, n: self.n }),
            _ => Ok(()),
        }
    }

    /// `exp(−iθ·P)` for the Pauli string of `term`, with its real coefficient
    /// folded into the angle: `cos(θc)·I − i·sin(θc)·P`.
    pub fn apply_term_exponential(&self, term: &PauliTerm, theta: f64) -> Result<DenseState> {
        let mut out = self.clone();
        out.apply_term_exponential_mut(term, theta)?;
        Ok(out)
    }

    /// In-place variant of [`DenseState::apply_term_exponential`].
    pub fn apply_term_exponential_mut(&mut self, term: &PauliTerm, theta: f64) -> Result<()> {
        self.check_support(term)?;
        if term.coeff.im != 0.0 {
            return Err(Error::NonHermitianTerm {
                re: term.coeff.re,
                im: term.coeff.im,
            });
        }
        let angle = theta * term.coeff.re;
        let (c, s) = (angle.cos(), angle.sin());
        let (xm, zm, ny) = term.masks();
        let phase = i_pow(ny);
        // −i·sin·phase multiplies the Pauli image
        let k = Complex64::new(0.0, -s) * phase;
        let cc = Complex64::new(c, 0.0);
        if xm == 0 {
            for (x, a) in self.amps.iter_mut().enumerate() {
                *a *= cc + k * sign(x as u64 & zm);
            }
            return Ok(());
        }
        let xm = xm as usize;
        for x in 0..self.amps.len() {
            let y = x ^ xm;
            if x < y {
                let a = self.amps[x];
                let b = self.amps[y];
                self.amps[x] = cc * a + k * sign(y as u64 & zm) * b;
                self.amps[y] = cc * b + k * sign(x as u64 & zm) * a;
            }
        }
        Ok(())
    }

    /// Applies a 2×2 matrix to one qubit.
    pub fn apply_single_qubit_gate_mut(&mut self, q: usize, gate: &[[Complex64; 2]; 2]) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
        }
        let bit = 1usize << q;
        for x in 0..self.amps.len() {
            if x & bit == 0 {
                let a0 = self.amps[x];
                let a1 = self.amps[x | bit];
                self.amps[x] = gate[0][0] * a0 + gate[0][1] * a1;
                self.amps[x | bit] = gate[1][0] * a0 + gate[1][1] * a1;
            }
        }
        Ok(())
    }

    /// Applies a 4×4 matrix to qubits `(q0, q1)`; the local basis index is
    /// `2·b(q0) + b(q1)`.
    pub fn apply_two_qubit_gate_mut(&mut self, q0: usize, q1: usize, gate: &[[Complex64; 4]; 4]) -> Result<()> {
        for q in [q0, q1] {
            if q >= self.n {
                return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
            }
        }
        if q0 == q1 {
            return Err(Error::InvalidParameter("two-qubit gate on a single qubit".into()));
        }
        let (b0, b1) = (1usize << q0, 1usize << q1);
        for x in 0..self.amps.len() {
            if x & (b0 | b1) == 0 {
                let idx = [x, x | b1, x | b0, x | b0 | b1];
                let v = idx.map(|i| self.amps[i]);
                for (r, &i) in idx.iter().enumerate() {
                    self.amps[i] = (0..4).map(|c| gate[r][c] * v[c]).sum();
                }
            }
        }
        Ok(())
    }

    /// `Σ_k term_k |ψ⟩` (not normalised).
    pub fn apply_terms(&self, terms: &[PauliTerm]) -> Result<Vec<Complex64>> {
        for t in terms {
            self.check_support(t)?;
        }
        let mut out = vec![ZERO; self.amps.len()];
        for t in terms {
            add_pauli_image(&self.amps, t, &mut out);
        }
        Ok(out)
    }

    /// `⟨ψ|Σ terms|ψ⟩`
    pub fn expectation(&self, terms: &[PauliTerm]) -> Result<Complex64> {
        let image = self.apply_terms(terms)?;
        Ok(self.amps.iter().zip(&image).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn energy(&self, model: &HamiltonianModel) -> Result<f64> {
        Ok(self.expectation(model.terms())?.re)
    }
}

/// `i^k`
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[inline]
pub(crate) fn sign(bits: u64) -> f64 {
    if bits.count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `out += term·amps`
pub(crate) fn add_pauli_image(amps: &[Complex64], term: &PauliTerm, out: &mut [Complex64]) {
    let (xm, zm, ny) = term.masks();
    let phase = term.coeff * i_pow(ny);
    let xm = xm as usize;
    for (x, &a) in amps.iter().enumerate() {
        out[x ^ xm] += phase * sign(x as u64 & zm) * a;
    }
}

pub(crate) fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// ℓ2 norm of the amplitude difference. Global phase is not quotiented out.
pub fn state_distance(a: &DenseState, b: &DenseState) -> Result<f64> {
    a.check_same(b)?;
    Ok(a.amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// `⟨ψ|[A, B]|ψ⟩` for Hermitian term lists, from one application of each
/// operator: `⟨Aψ|Bψ⟩ − ⟨Bψ|Aψ⟩`.
pub fn commutator_expectation(state: &DenseState, a: &[PauliTerm], b: &[PauliTerm]) -> Result<Complex64> {
    let a_psi = state.apply_terms(a)?;
    let b_psi = state.apply_terms(b)?;
    let ab: Complex64 = a_psi.iter().zip(&b_psi).map(|(x, y)| x.conj() * y).sum();
    Ok(ab - ab.conj())
}

/// `(AB − BA)|ψ⟩` by explicit operator applications.
pub fn commutator_action(state: &DenseState, a: &[PauliTerm], b: &[PauliTerm]) -> Result<Vec<Complex64>> {
    let b_psi = DenseState::from_raw(state.n, state.apply_terms(b)?);
    let a_psi = DenseState::from_raw(state.n, state.apply_terms(a)?);
    let ab = b_psi.apply_terms(a)?;
    let ba = a_psi.apply_terms(b)?;
    Ok(ab.iter().zip(&ba).map(|(x, y)| x - y).collect())
}
