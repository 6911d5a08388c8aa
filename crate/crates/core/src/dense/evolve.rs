//! Exact `e^{−iHt}|ψ⟩` for the dense backend.
//!
//! Registers up to [`SPECTRAL_LIMIT`] qubits use a full Hermitian
//! eigendecomposition (real symmetric when every matrix element is real);
//! larger registers up to the dense limit use a Lanczos exponential action
//! with adaptive sub-stepping.

use alloc::vec;
use alloc::vec::Vec;

use faer::{Col, Mat, Side};
use num_complex::Complex64;

use super::state::{add_pauli_image, check_dense_limit, i_pow, l2_norm, sign, DenseState};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianModel;

/// Largest register evolved by eigendecomposition.
pub const SPECTRAL_LIMIT: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense `2^n × 2^n` matrix of a model.
pub fn dense_matrix(model: &HamiltonianModel) -> Result<Mat<Complex64>> {
    check_dense_limit(model.n())?;
    let dim = 1usize << model.n();
    let mut m = Mat::<Complex64>::zeros(dim, dim);
    for t in model.terms() {
        let (xm, zm, ny) = t.masks();
        let phase = t.coeff * i_pow(ny);
        let xm = xm as usize;
        for x in 0..dim {
            m[(x ^ xm, x)] += phase * sign(x as u64 & zm);
        }
    }
    Ok(m)
}

enum Basis {
    Real(Mat<f64>),
    Complex(Mat<Complex64>),
}

/// Eigendecomposition of `H`, reusable across evolution times.
pub struct SpectralPropagator {
    n: usize,
    energies: Vec<f64>,
    basis: Basis,
}

impl SpectralPropagator {
    pub fn new(model: &HamiltonianModel) -> Result<Self> {
        let m = dense_matrix(model)?;
        let dim = m.nrows();
        let real = (0..dim).all(|j| (0..dim).all(|i| m[(i, j)].im == 0.0));
        let (energies, basis) = if real {
            let re = Mat::<f64>::from_fn(dim, dim, |i, j| m[(i, j)].re);
            let eig = re.self_adjoint_eigen(Side::Lower).map_err(|_| Error::NoConvergence("eigendecomposition"))?;
            let e = eig.S().column_vector().iter().copied().collect();
            (e, Basis::Real(eig.U().to_owned()))
        } else {
            let eig = m.self_adjoint_eigen(Side::Lower).map_err(|_| Error::NoConvergence("eigendecomposition"))?;
            let e = eig.S().column_vector().iter().map(|z| z.re).collect();
            (e, Basis::Complex(eig.U().to_owned()))
        };
        Ok(SpectralPropagator {
            n: model.n(),
            energies,
            basis,
        })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Coefficients of `ψ` in the eigenbasis.
    pub fn project(&self, state: &DenseState) -> Result<Vec<Complex64>> {
        if state.n() != self.n {
            return Err(Error::SizeMismatch {
                left: state.n(),
                right: self.n,
            });
        }
        let psi = state.amplitudes();
        Ok(match &self.basis {
            Basis::Real(v) => {
                let re = Col::<f64>::from_fn(psi.len(), |i| psi[i].re);
                let im = Col::<f64>::from_fn(psi.len(), |i| psi[i].im);
                let cr = v.transpose() * &re;
                let ci = v.transpose() * &im;
                cr.iter().zip(ci.iter()).map(|(&r, &i)| Complex64::new(r, i)).collect()
            }
            Basis::Complex(v) => {
                let p = Col::<Complex64>::from_fn(psi.len(), |i| psi[i]);
                (v.adjoint() * &p).iter().copied().collect()
            }
        })
    }

    /// State with eigenbasis coefficients `coeffs` evolved to time `t`.
    pub fn evolve_projected(&self, coeffs: &[Complex64], t: f64) -> DenseState {
        let phased: Vec<Complex64> = coeffs
            .iter()
            .zip(self.energies.iter())
            .map(|(c, &e)| c * Complex64::new(0.0, -e * t).exp())
            .collect();
        let amps = match &self.basis {
            Basis::Real(v) => {
                let re = Col::<f64>::from_fn(phased.len(), |i| phased[i].re);
                let im = Col::<f64>::from_fn(phased.len(), |i| phased[i].im);
                let ar = v * &re;
                let ai = v * &im;
                ar.iter().zip(ai.iter()).map(|(&r, &i)| Complex64::new(r, i)).collect()
            }
            Basis::Complex(v) => {
                let p = Col::<Complex64>::from_fn(phased.len(), |i| phased[i]);
                (v * &p).iter().copied().collect()
            }
        };
        DenseState::from_raw(self.n, amps)
    }

    pub fn evolve(&self, state: &DenseState, t: f64) -> Result<DenseState> {
        let c = self.project(state)?;
        Ok(self.evolve_projected(&c, t))
    }
}

/// Matrix-free Lanczos propagator.
pub struct KrylovPropagator<'a> {
    model: &'a HamiltonianModel,
    /// Krylov subspace dimension per sub-step.
    pub subspace: usize,
    /// Error tolerance per sub-step.
    pub tolerance: f64,
}

impl<'a> KrylovPropagator<'a> {
    pub fn new(model: &'a HamiltonianModel) -> Self {
        KrylovPropagator {
            model,
            subspace: 30,
            tolerance: 1e-14,
        }
    }

    fn apply_h(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|x| *x = ZERO);
        for t in self.model.terms() {
            add_pauli_image(v, t, out);
        }
    }

    pub fn evolve(&self, state: &DenseState, t: f64) -> Result<DenseState> {
        if state.n() != self.model.n() {
            return Err(Error::SizeMismatch {
                left: state.n(),
                right: self.model.n(),
            });
        }
        let mut psi: Vec<Complex64> = state.amplitudes().to_vec();
        let mut done = 0.0;
        let total = t.abs();
        let dir = if t < 0.0 { -1.0 } else { 1.0 };
        let mut dt = total;
        while done < total {
            dt = dt.min(total - done);
            let (next, err, exact) = self.step(&psi, dir * dt);
            if exact || err <= self.tolerance || dt < total * 1e-12 {
                psi = next;
                done += dt;
                if err < self.tolerance * 1e-3 {
                    dt *= 2.0;
                }
            } else {
                dt *= 0.5;
            }
        }
        Ok(DenseState::from_raw(state.n(), psi))
    }

    /// One Lanczos step: (result, error estimate, invariant subspace found).
    fn step(&self, psi: &[Complex64], dt: f64) -> (Vec<Complex64>, f64, bool) {
        let dim = psi.len();
        let beta0 = l2_norm(psi);
        let m_max = self.subspace.min(dim);
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m_max + 1);
        basis.push(psi.iter().map(|a| a / beta0).collect());
        let mut alpha = Vec::with_capacity(m_max);
        let mut beta: Vec<f64> = Vec::with_capacity(m_max);
        let mut w = vec![ZERO; dim];
        let mut exact = false;
        for j in 0..m_max {
            self.apply_h(&basis[j], &mut w);
            let a: f64 = basis[j].iter().zip(&w).map(|(v, x)| (v.conj() * x).re).sum();
            alpha.push(a);
            // full reorthogonalisation
            for _ in 0..2 {
                for v in &basis {
                    let proj: Complex64 = v.iter().zip(&w).map(|(p, x)| p.conj() * x).sum();
                    w.iter_mut().zip(v).for_each(|(x, p)| *x -= proj * p);
                }
            }
            let b = l2_norm(&w);
            beta.push(b);
            if b < 1e-13 * beta0.max(1.0) {
                exact = true;
                break;
            }
            basis.push(w.iter().map(|x| x / b).collect());
        }
        let m = alpha.len();
        let mut tri = Mat::<f64>::zeros(m, m);
        for i in 0..m {
            tri[(i, i)] = alpha[i];
            if i + 1 < m {
                tri[(i, i + 1)] = beta[i];
                tri[(i + 1, i)] = beta[i];
            }
        }
        let eig = tri.self_adjoint_eigen(Side::Lower).expect("tridiagonal eigendecomposition");
        let (vecs, vals) = (eig.U(), eig.S().column_vector());
        // y = exp(−i dt T) e1
        let y: Vec<Complex64> = (0..m)
            .map(|r| {
                (0..m)
                    .map(|k| {
                        let v = vecs[(r, k)] * vecs[(0, k)];
                        Complex64::new(0.0, -dt * vals[k]).exp() * v
                    })
                    .sum()
            })
            .collect();
        let err = if exact { 0.0 } else { beta0 * beta[m - 1] * y[m - 1].norm() };
        let mut out = vec![ZERO; dim];
        for (k, coeff) in y.iter().enumerate() {
            let c = coeff * beta0;
            out.iter_mut().zip(&basis[k]).for_each(|(o, v)| *o += c * v);
        }
        (out, err, exact)
    }
}

/// `e^{−iHt}|ψ⟩` to near machine precision.
pub fn exact_evolve(state: &DenseState, model: &HamiltonianModel, t: f64) -> Result<DenseState> {
    check_dense_limit(model.n())?;
    if state.n() != model.n() {
        return Err(Error::SizeMismatch {
            left: state.n(),
            right: model.n(),
        });
    }
    if t == 0.0 {
        return Ok(state.clone());
    }
    if model.n() <= SPECTRAL_LIMIT {
        SpectralPropagator::new(model)?.evolve(state, t)
    } else {
        KrylovPropagator::new(model).evolve(state, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{state_distance, ProductPattern};
    use crate::hamiltonian::{build_heisenberg, build_tfim, Geometry};
    use crate::pauli::{Pauli, PauliTerm};

    #[test]
    fn heisenberg_pair_ground_energy() {
        let h = build_heisenberg(2, 1.0).unwrap();
        let p = SpectralPropagator::new(&h).unwrap();
        let e0 = p.energies().iter().cloned().fold(f64::INFINITY, f64::min);
        assert!((e0 + 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_term_matches_closed_form() {
        let t = PauliTerm::real(0.7, [(0, Pauli::Y), (1, Pauli::X)]);
        let h = HamiltonianModel::new(3, Geometry::Custom, vec![t.clone()]).unwrap();
        let s = DenseState::from_product(3, &ProductPattern::Plus).unwrap();
        let s = s.apply_term_exponential(&PauliTerm::real(1.0, [(2, Pauli::X), (0, Pauli::Z)]), 0.3).unwrap();
        let a = exact_evolve(&s, &h, 1.3).unwrap();
        let b = s.apply_term_exponential(&t, 1.3).unwrap();
        assert!(state_distance(&a, &b).unwrap() < 1e-12);
    }

    #[test]
    fn energy_conserved_tfim() {
        let h = build_tfim(4, 1.0, 2.5).unwrap();
        let s = DenseState::from_product(4, &ProductPattern::Zeros).unwrap();
        let e = exact_evolve(&s, &h, 1.0).unwrap();
        assert!((s.energy(&h).unwrap() - e.energy(&h).unwrap()).abs() < 1e-9);
        assert!((e.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn krylov_agrees_with_spectral() {
        let h = build_tfim(8, 1.0, 2.5).unwrap();
        let s = DenseState::from_product(8, &ProductPattern::Zeros).unwrap();
        let a = SpectralPropagator::new(&h).unwrap().evolve(&s, 1.7).unwrap();
        let b = KrylovPropagator::new(&h).evolve(&s, 1.7).unwrap();
        assert!(state_distance(&a, &b).unwrap() < 1e-11);
        let back = KrylovPropagator::new(&h).evolve(&b, -1.7).unwrap();
        assert!(state_distance(&s, &back).unwrap() < 1e-11);
    }

    #[test]
    fn complex_matrix_path() {
        // a lone Y term gives imaginary matrix elements
        let h = HamiltonianModel::new(2, Geometry::Custom, vec![PauliTerm::real(0.5, [(0, Pauli::Y)])]).unwrap();
        let s = DenseState::from_product(2, &ProductPattern::Zeros).unwrap();
        let a = exact_evolve(&s, &h, 0.9).unwrap();
        let b = s.apply_term_exponential(&h.terms()[0], 0.9).unwrap();
        assert!(state_distance(&a, &b).unwrap() < 1e-12);
    }

    #[test]
    fn zero_time_identity() {
        let h = build_tfim(3, 1.0, 1.0).unwrap();
        let s = DenseState::from_product(3, &ProductPattern::Plus).unwrap();
        assert_eq!(exact_evolve(&s, &h, 0.0).unwrap(), s);
    }
}
