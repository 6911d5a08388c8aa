//! Lie-Trotter and Suzuki product formulas on both backends.
//!
//! Orders 2, 4 and 6 are built from the symmetric second-order formula
//! `S₂(τ) = S₁(τ/2)·S₁ᴿ(τ/2)` by the recursion
//! `S_{2k+2}(τ) = S_{2k}(sτ)² S_{2k}((1−4s)τ) S_{2k}(sτ)²`,
//! `s = 1/(4 − 4^{1/(2k+1)})`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::dense::{max_entropy, CutMode, DenseState, SpectralPropagator};
use crate::error::{Error, Result};
use crate::hamiltonian::{Geometry, HamiltonianModel};
use crate::mps::MpsState;
use crate::pauli::PauliTerm;
use crate::stats::{log_log_fit, LinearFit};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `s = 1/(4 − 4^{1/(2k+1)})` for the step from order `2k` to `2k+2`.
pub fn suzuki_parameter(k: u32) -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / (2 * k + 1) as f64))
}

fn check_order(p: u32) -> Result<()> {
    if matches!(p, 1 | 2 | 4 | 6) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(p))
    }
}

/// Time fractions of the sweeps making up one step of `S_p`.
///
/// Sweep `i` runs over the terms forwards for even `i` and backwards for
/// odd `i`; the fractions sum to 1.
pub fn suzuki_stage_multipliers(p: u32) -> Result<Vec<f64>> {
    check_order(p)?;
    if p == 1 {
        return Ok(vec![1.0]);
    }
    let mut seq = vec![0.5, 0.5];
    let mut order = 2;
    while order < p {
        let s = suzuki_parameter(order / 2);
        let mut next = Vec::with_capacity(seq.len() * 5);
        for f in [s, s, 1.0 - 4.0 * s, s, s] {
            next.extend(seq.iter().map(|x| x * f));
        }
        seq = next;
        order += 2;
    }
    Ok(seq)
}

/// Term order within a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ordering {
    /// Stored model order.
    #[default]
    Forward,
    /// Even bonds (each followed by the single-site terms it touches first),
    /// then odd bonds, then everything else.
    EvenOdd,
}

/// One exponential `e^{−i·H_term·τ·multiplier}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    pub term: usize,
    pub multiplier: f64,
}

/// A product formula for `e^{−iHt}` as `r` repetitions of one step.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterPlan {
    pub order: u32,
    pub steps: u64,
    pub time: f64,
    pub ordering: Ordering,
    /// Stages of a single step, applied left to right.
    pub stages: Vec<Stage>,
    n: usize,
}

impl TrotterPlan {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `τ = t/r`
    pub fn tau(&self) -> f64 {
        self.time / self.steps as f64
    }

    pub fn exponentials_per_step(&self) -> usize {
        self.stages.len()
    }

    /// Total multiplier each term receives in one step.
    pub fn term_weights(&self, terms: usize) -> Vec<f64> {
        let mut w = vec![0.0; terms];
        for s in &self.stages {
            w[s.term] += s.multiplier;
        }
        w
    }

    /// `(term, angle)` for every exponential of the whole evolution.
    pub fn angles(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let tau = self.tau();
        (0..self.steps).flat_map(move |_| self.stages.iter().map(move |s| (s.term, s.multiplier * tau)))
    }
}

fn sweep_order(model: &HamiltonianModel, ordering: Ordering) -> Vec<usize> {
    match ordering {
        Ordering::Forward => (0..model.len()).collect(),
        Ordering::EvenOdd => even_odd_order(model),
    }
}

/// Adjacent-pair bond of a two-site term.
fn bond_of(t: &PauliTerm) -> Option<usize> {
    let s: Vec<usize> = t.support().collect();
    match s.as_slice() {
        [a, b] if b == &(a + 1) => Some(*a),
        _ => None,
    }
}

fn even_odd_order(model: &HamiltonianModel) -> Vec<usize> {
    let terms = model.terms();
    let mut used = vec![false; terms.len()];
    let mut out = Vec::with_capacity(terms.len());
    for parity in [0, 1] {
        for (i, t) in terms.iter().enumerate() {
            let Some(b) = bond_of(t) else { continue };
            if b % 2 != parity || used[i] {
                continue;
            }
            used[i] = true;
            out.push(i);
            for (k, u) in terms.iter().enumerate() {
                if !used[k] && u.weight() == 1 && u.support().all(|q| q == b || q == b + 1) {
                    used[k] = true;
                    out.push(k);
                }
            }
        }
    }
    out.extend((0..terms.len()).filter(|&i| !used[i]));
    out
}

/// Plan for `S_p(t/r)^r`. Adjacent stages on the same term are merged.
pub fn build_plan(model: &HamiltonianModel, p: u32, t: f64, r: u64, ordering: Ordering) -> Result<TrotterPlan> {
    if r == 0 {
        return Err(Error::ZeroSteps);
    }
    let fractions = suzuki_stage_multipliers(p)?;
    let order = sweep_order(model, ordering);
    let mut stages: Vec<Stage> = Vec::new();
    for (i, f) in fractions.iter().enumerate() {
        let sweep: Vec<usize> = if i % 2 == 0 {
            order.clone()
        } else {
            order.iter().rev().copied().collect()
        };
        for term in sweep {
            match stages.last_mut() {
                Some(last) if last.term == term => last.multiplier += f,
                _ => stages.push(Stage { term, multiplier: *f }),
            }
        }
    }
    Ok(TrotterPlan {
        order: p,
        steps: r,
        time: t,
        ordering,
        stages,
        n: model.n(),
    })
}

/// A state type a plan can be run on.
pub trait Evolve: Sized {
    fn run_plan(&mut self, plan: &TrotterPlan, model: &HamiltonianModel) -> Result<()>;
}

fn check_plan(plan: &TrotterPlan, model: &HamiltonianModel, n: usize) -> Result<()> {
    if plan.n != model.n() || n != model.n() {
        return Err(Error::SizeMismatch {
            left: n,
            right: model.n(),
        });
    }
    if let Some(s) = plan.stages.iter().find(|s| s.term >= model.len()) {
        return Err(Error::TermOutOfRange {
            index: s.term,
            len: model.len(),
        });
    }
    Ok(())
}

impl Evolve for DenseState {
    fn run_plan(&mut self, plan: &TrotterPlan, model: &HamiltonianModel) -> Result<()> {
        check_plan(plan, model, self.n())?;
        let terms = model.terms();
        for (term, angle) in plan.angles() {
            self.apply_term_exponential_mut(&terms[term], angle)?;
        }
        Ok(())
    }
}

/// Local gate produced by fusing consecutive stages.
#[derive(Debug, Clone)]
pub enum LocalGate {
    Single(usize, [[Complex64; 2]; 2]),
    Pair(usize, [[Complex64; 4]; 4]),
}

type M4 = [[Complex64; 4]; 4];

fn mul4(a: &M4, b: &M4) -> M4 {
    let mut c = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// `exp(−iθ·c·P)` as a 4×4 matrix on sites `(bond, bond+1)`, local index
/// `2·s_bond + s_{bond+1}`.
fn pair_exponential(term: &PauliTerm, bond: usize, theta: f64) -> M4 {
    let a = theta * term.coeff.re;
    let (c, s) = (a.cos(), a.sin());
    let id = [[ONE, ZERO], [ZERO, ONE]];
    let left = term.paulis.get(&bond).map_or(id, |p| p.matrix());
    let right = term.paulis.get(&(bond + 1)).map_or(id, |p| p.matrix());
    let mut g = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let p = left[i / 2][j / 2] * right[i % 2][j % 2];
            g[i][j] = Complex64::new(0.0, -s) * p + if i == j { Complex64::new(c, 0.0) } else { ZERO };
        }
    }
    g
}

fn single_exponential(term: &PauliTerm, site: usize, theta: f64) -> [[Complex64; 2]; 2] {
    let a = theta * term.coeff.re;
    let (c, s) = (a.cos(), a.sin());
    let p = term.paulis[&site].matrix();
    let mut g = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            g[i][j] = Complex64::new(0.0, -s) * p[i][j] + if i == j { Complex64::new(c, 0.0) } else { ZERO };
        }
    }
    g
}

/// Gate list for one step on a chain: runs of stages acting inside one
/// adjacent pair are multiplied into a single two-site gate.
pub fn compile_local_gates(plan: &TrotterPlan, model: &HamiltonianModel) -> Result<Vec<LocalGate>> {
    check_plan(plan, model, model.n())?;
    let tau = plan.tau();
    let terms = model.terms();
    for s in &plan.stages {
        let t = &terms[s.term];
        if !(t.weight() == 1 || bond_of(t).is_some()) {
            return Err(Error::NonLocalTerm(s.term));
        }
        if t.coeff.im != 0.0 {
            return Err(Error::NonHermitianTerm {
                re: t.coeff.re,
                im: t.coeff.im,
            });
        }
    }
    let mut out = Vec::new();
    let mut cur: Option<(usize, M4)> = None;
    for s in &plan.stages {
        let t = &terms[s.term];
        let theta = s.multiplier * tau;
        if let Some(b) = bond_of(t) {
            let g = pair_exponential(t, b, theta);
            cur = match cur.take() {
                Some((cb, cg)) if cb == b => Some((b, mul4(&g, &cg))),
                other => {
                    if let Some((cb, cg)) = other {
                        out.push(LocalGate::Pair(cb, cg));
                    }
                    Some((b, g))
                }
            };
        } else {
            let q = t.max_qubit().expect("weight-one term");
            match cur.as_mut() {
                Some((cb, cg)) if q == *cb || q == *cb + 1 => {
                    let g = pair_exponential(t, *cb, theta);
                    *cg = mul4(&g, cg);
                }
                _ => {
                    if let Some((cb, cg)) = cur.take() {
                        out.push(LocalGate::Pair(cb, cg));
                    }
                    out.push(LocalGate::Single(q, single_exponential(t, q, theta)));
                }
            }
        }
    }
    if let Some((cb, cg)) = cur {
        out.push(LocalGate::Pair(cb, cg));
    }
    Ok(out)
}

impl Evolve for MpsState {
    fn run_plan(&mut self, plan: &TrotterPlan, model: &HamiltonianModel) -> Result<()> {
        check_plan(plan, model, self.n())?;
        let gates = compile_local_gates(plan, model)?;
        for _ in 0..plan.steps {
            for g in &gates {
                match g {
                    LocalGate::Single(q, m) => self.apply_single_site_gate_mut(*q, m)?,
                    LocalGate::Pair(b, m) => {
                        self.apply_two_site_gate_mut(*b, m)?;
                    }
                }
            }
        }
        let c = self.center();
        self.canonicalize_mut(c)
    }
}

/// Runs `plan` on a copy of `state`.
pub fn execute<S: Evolve + Clone>(plan: &TrotterPlan, model: &HamiltonianModel, state: &S) -> Result<S> {
    let mut out = state.clone();
    out.run_plan(plan, model)?;
    Ok(out)
}

/// Which simulator produced a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Dense,
    Mps,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Dense => "dense",
            Backend::Mps => "mps",
        }
    }
}

/// One measured `‖(S_p(t/r)^r − e^{−iHt})|ψ₀⟩‖`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSample {
    pub n: usize,
    pub p: u32,
    pub r: u64,
    pub t: f64,
    pub backend: Backend,
    pub error: f64,
    /// Wall-clock seconds (zero without the `std` feature).
    pub runtime: f64,
    pub s_max_initial: f64,
    pub s_max_final: f64,
}

#[cfg(feature = "std")]
fn now() -> Option<std::time::Instant> {
    Some(std::time::Instant::now())
}

#[cfg(not(feature = "std"))]
fn now() -> Option<()> {
    None
}

#[cfg(feature = "std")]
fn elapsed(start: Option<std::time::Instant>) -> f64 {
    start.map_or(0.0, |s| s.elapsed().as_secs_f64())
}

#[cfg(not(feature = "std"))]
fn elapsed(_: Option<()>) -> f64 {
    0.0
}

/// Error of the product formula against exact evolution (dense backend).
pub fn measure_error(
    model: &HamiltonianModel,
    psi0: &DenseState,
    p: u32,
    t: f64,
    r: u64,
    ordering: Ordering,
) -> Result<ErrorSample> {
    let exact = crate::dense::exact_evolve(psi0, model, t)?;
    measure_error_against(model, psi0, &exact, p, t, r, ordering)
}

/// As [`measure_error`] with a precomputed `e^{−iHt}|ψ₀⟩`.
pub fn measure_error_against(
    model: &HamiltonianModel,
    psi0: &DenseState,
    exact: &DenseState,
    p: u32,
    t: f64,
    r: u64,
    ordering: Ordering,
) -> Result<ErrorSample> {
    let start = now();
    let plan = build_plan(model, p, t, r, ordering)?;
    let approx = execute(&plan, model, psi0)?;
    let error = crate::dense::state_distance(&approx, exact)?;
    let runtime = elapsed(start);
    Ok(ErrorSample {
        n: model.n(),
        p,
        r,
        t,
        backend: Backend::Dense,
        error,
        runtime,
        s_max_initial: max_entropy(psi0, CutMode::Contiguous)?,
        s_max_final: max_entropy(&approx, CutMode::Contiguous)?,
    })
}

/// Errors below this are treated as round-off and left out of order fits.
pub const ERROR_FLOOR: f64 = 1e-13;

/// Single-step errors over a range of `τ` and the fitted exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderFit {
    pub p: u32,
    pub taus: Vec<f64>,
    pub errors: Vec<f64>,
    /// `None` when fewer than four errors clear [`ERROR_FLOOR`].
    pub fit: Option<LinearFit>,
}

impl OrderFit {
    pub fn degenerate(&self) -> bool {
        self.fit.is_none()
    }

    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }
}

/// Least-squares slope of `log(error)` against `log(τ)` for one step of `S_p(τ)`.
pub fn order_scaling_fit(
    model: &HamiltonianModel,
    psi0: &DenseState,
    p: u32,
    taus: &[f64],
    ordering: Ordering,
) -> Result<OrderFit> {
    if taus.len() < 4 {
        return Err(Error::TooFewSamples { need: 4, got: taus.len() });
    }
    let prop = SpectralPropagator::new(model)?;
    let coeffs = prop.project(psi0)?;
    let mut errors = Vec::with_capacity(taus.len());
    for &tau in taus {
        let plan = build_plan(model, p, tau, 1, ordering)?;
        let approx = execute(&plan, model, psi0)?;
        let exact = prop.evolve_projected(&coeffs, tau);
        errors.push(crate::dense::state_distance(&approx, &exact)?);
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = taus
        .iter()
        .zip(&errors)
        .filter(|(_, e)| **e >= ERROR_FLOOR)
        .map(|(t, e)| (*t, *e))
        .unzip();
    let fit = if xs.len() >= 4 { Some(log_log_fit(&xs, &ys)?) } else { None };
    Ok(OrderFit {
        p,
        taus: taus.to_vec(),
        errors,
        fit,
    })
}

/// `(τ²/2)·‖Σ_{j<k}[H_j, H_k]|ψ⟩‖`, the leading single-step error of `S₁`
/// in stored term order.
pub fn first_order_leading_error(model: &HamiltonianModel, psi: &DenseState, tau: f64) -> Result<f64> {
    let terms = model.terms();
    let mut acc = vec![ZERO; psi.amplitudes().len()];
    for k in 1..terms.len() {
        let v = crate::dense::commutator_action(psi, &terms[..k], core::slice::from_ref(&terms[k]))?;
        acc.iter_mut().zip(&v).for_each(|(a, b)| *a += b);
    }
    let nrm = acc.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(tau * tau / 2.0 * nrm)
}

/// Whether every term acts on one site or an adjacent pair of a chain.
pub fn is_chain_local(model: &HamiltonianModel) -> bool {
    matches!(model.geometry(), Geometry::Chain { .. } | Geometry::Custom)
        && model.terms().iter().all(|t| t.weight() == 1 || bond_of(t).is_some())
}
