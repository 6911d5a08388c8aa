//! Closed-form Trotter error bounds and their inversions to step counts.
//!
//! Logs inside bounds (`log²n`, `log^{p+1}n`) are base 2; the light-cone
//! radius uses a natural log. Exponential-in-entropy factors are formed in
//! log space.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::hamiltonian::Geometry;

/// `4·log₂e`
pub const C_GROWTH: f64 = 4.0 * core::f64::consts::LOG2_E;

/// Orders with a product-formula implementation.
pub const SUPPORTED_ORDERS: [u32; 4] = [1, 2, 4, 6];

/// Every tunable constant, with defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundConstants {
    /// `C₁` of the first-order entanglement bound.
    pub c1: f64,
    /// `C_p` override; `None` means `(4p)^p`.
    pub cp: Option<f64>,
    pub c_growth: f64,
    /// `(p, c_p)` prefactors of the worst-case bound.
    pub standard: Vec<(u32, f64)>,
    /// `c'` in `v_LR = c'·d·J`.
    pub lr_prefactor: f64,
    /// Light-cone length; `None` means `1/ln(max(d, 2))`.
    pub xi: Option<f64>,
    pub threshold_c: f64,
    pub lower_bound_c: f64,
    /// Prefactor of the geometry entropy presets.
    pub geometry_c: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants {
            c1: 8.0,
            cp: None,
            c_growth: C_GROWTH,
            standard: vec![(1, 0.5), (2, 0.1)],
            lr_prefactor: 1.0,
            xi: None,
            threshold_c: 1.0,
            lower_bound_c: 1.0,
            geometry_c: 1.0,
        }
    }
}

impl BoundConstants {
    pub fn standard_prefactor(&self, p: u32) -> Result<f64> {
        self.standard
            .iter()
            .find(|(q, _)| *q == p)
            .map(|(_, c)| *c)
            .ok_or(Error::MissingConstant(p))
    }

    pub fn cp_for(&self, p: u32) -> f64 {
        self.cp.unwrap_or_else(|| default_cp(p))
    }

    pub fn xi_for(&self, d: usize) -> f64 {
        self.xi.unwrap_or_else(|| default_xi(d))
    }
}

/// `(4p)^p`
pub fn default_cp(p: u32) -> f64 {
    Float::powi(4.0 * p as f64, p as i32)
}

/// `1/ln(max(d, 2))`
pub fn default_xi(d: usize) -> f64 {
    1.0 / (d.max(2) as f64).ln()
}

/// `v_LR = c'·d·J`
pub fn lr_velocity(prefactor: f64, d: usize, j: f64) -> f64 {
    prefactor * d as f64 * j
}

fn log2n(n: usize) -> f64 {
    (n as f64).log2()
}

/// `c_p·(2LJt)^{p+1}/r^p`
pub fn standard_bound(l: usize, j: f64, t: f64, r: u64, p: u32, constants: &BoundConstants) -> Result<f64> {
    if r == 0 {
        return Err(Error::ZeroSteps);
    }
    let c = constants.standard_prefactor(p)?;
    let base = 2.0 * l as f64 * j * t.abs();
    Ok(c * Float::powi(base, p as i32 + 1) / Float::powi(r as f64, p as i32))
}

/// `S* = S_max + c_growth·d·J·t`
pub fn effective_entanglement(s_max: f64, d: usize, j: f64, t: f64, c_growth: f64) -> f64 {
    s_max + c_growth * d as f64 * j * t.abs()
}

/// `C₁·t²J²d·S*·log₂²n/r`
pub fn ent_bound_first(t: f64, j: f64, d: usize, s_star: f64, n: usize, r: u64, c1: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::ZeroSteps);
    }
    check_n(n)?;
    let l = log2n(n);
    Ok(c1 * t * t * j * j * d as f64 * s_star * l * l / r as f64)
}

/// `C_p·(tJd)^{p+1}·2^{pS*/2}·log₂^{p+1}n/r^p`, evaluated through its logarithm.
#[allow(clippy::too_many_arguments)]
pub fn ent_bound_p(t: f64, j: f64, d: usize, s_star: f64, n: usize, r: u64, p: u32, cp: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::UnsupportedOrder(p));
    }
    if r == 0 {
        return Err(Error::ZeroSteps);
    }
    check_n(n)?;
    let pf = p as f64;
    let base = t.abs() * j * d as f64;
    if base == 0.0 || cp == 0.0 {
        return Ok(0.0);
    }
    let ln2 = core::f64::consts::LN_2;
    let ln = cp.ln() + (pf + 1.0) * base.ln() + pf * s_star / 2.0 * ln2 + (pf + 1.0) * log2n(n).ln()
        - pf * (r as f64).ln();
    Ok(ln.exp())
}

/// `S_A(0) + c_growth·|∂A|·J·|t|`
pub fn growth_bound(s0: f64, boundary: usize, j: f64, t: f64, c_growth: f64) -> f64 {
    s0 + c_growth * boundary as f64 * j * t.abs()
}

/// `2·min(2^S, rank)·‖a‖‖b‖`, the bound on `|⟨[a, b]⟩|` across a cut of entropy `S`.
pub fn commutator_entropy_raw(s: f64, norm_a: f64, norm_b: f64, rank: Option<usize>) -> f64 {
    2.0 * entropy_factor(s, rank) * norm_a * norm_b
}

/// `4τ²·‖a‖‖b‖·min(2^S, rank)`
pub fn commutator_entropy_bound(s: f64, norm_a: f64, norm_b: f64, tau: f64, rank: Option<usize>) -> f64 {
    4.0 * tau * tau * norm_a * norm_b * entropy_factor(s, rank)
}

fn entropy_factor(s: f64, rank: Option<usize>) -> f64 {
    let e = s.exp2();
    rank.map_or(e, |k| e.min(k as f64))
}

/// `ℓ(τ) = v_LR·τ + ξ·ln L`
pub fn light_cone_radius(tau: f64, lr_velocity: f64, xi: f64, l: usize) -> f64 {
    lr_velocity * tau + xi * (l.max(1) as f64).ln()
}

/// `c·t²·h·n/ε` for the all-to-all construction.
pub fn lower_bound_steps(t: f64, n: usize, epsilon: f64, h: f64, c: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon <= 0.25) {
        return Err(Error::LowerBoundEpsilon(epsilon));
    }
    Ok(c * t * t * h * n as f64 / epsilon)
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::TooFewQubits { min: 2, got: n })
    } else {
        Ok(())
    }
}

/// One parameter point for bound evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundParams {
    pub n: usize,
    /// Term count `L`.
    pub l: usize,
    /// Largest term norm `J`.
    pub j: f64,
    /// Interaction-graph degree `d`.
    pub d: usize,
    /// Field strength used by the lower-bound estimate.
    pub h: f64,
    pub t: f64,
    pub r: u64,
    pub p: u32,
    /// Initial `S_max` in bits; the chain preset uses it as `S₀`.
    pub s_max: f64,
    pub geometry: Geometry,
    /// Target error for the step-count inversions.
    pub epsilon: f64,
    pub constants: BoundConstants,
}

impl BoundParams {
    /// Parameters for a model with metadata `(L, J, d)` at order 1, one step,
    /// `t = 1`, `ε = 0.01`.
    pub fn new(n: usize, l: usize, j: f64, d: usize, geometry: Geometry) -> Self {
        BoundParams {
            n,
            l,
            j,
            d,
            h: j,
            t: 1.0,
            r: 1,
            p: 1,
            s_max: 0.0,
            geometry,
            epsilon: 0.01,
            constants: BoundConstants::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.n)?;
        if self.r == 0 {
            return Err(Error::ZeroSteps);
        }
        if !SUPPORTED_ORDERS.contains(&self.p) {
            return Err(Error::UnsupportedOrder(self.p));
        }
        let positive = [("J", self.j), ("t", self.t), ("epsilon", self.epsilon)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(alloc::format!("{name} must be positive, got {v}")));
            }
        }
        if !(0.0..=self.n as f64 / 2.0).contains(&self.s_max) {
            return Err(Error::InvalidParameter(alloc::format!(
                "S_max = {} outside [0, n/2]",
                self.s_max
            )));
        }
        Ok(())
    }

    pub fn s_star(&self) -> f64 {
        effective_entanglement(self.s_max, self.d, self.j, self.t, self.constants.c_growth)
    }
}

/// Entropy preset for a geometry: chain and custom use `s0`; 2D `c√n`;
/// 3D `c·n^{2/3}`; tree `c·ω`; all-to-all the volume-law value `n/2`.
pub fn geometry_entropy(geometry: Geometry, n: usize, s0: f64, c: f64) -> f64 {
    let nf = n as f64;
    match geometry {
        Geometry::Chain { .. } | Geometry::Custom => s0,
        Geometry::Grid2d { .. } => c * nf.sqrt(),
        Geometry::Grid3d { .. } => c * nf.cbrt() * nf.cbrt(),
        Geometry::Tree { treewidth } => c * treewidth as f64,
        Geometry::AllToAll => nf / 2.0,
    }
}

/// Which bound to invert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Standard,
    Entanglement,
}

/// Smallest `r` (as a ceiling) with bound `≤ ε`.
pub fn required_steps(params: &BoundParams, epsilon: f64, which: BoundKind) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("epsilon must be positive, got {epsilon}")));
    }
    let p = params.p;
    let pf = p as f64;
    // every bound has the shape numerator / r^p
    let numerator = match which {
        BoundKind::Standard => standard_bound(params.l, params.j, params.t, 1, p, &params.constants)?,
        BoundKind::Entanglement => {
            let s_geom = geometry_entropy(params.geometry, params.n, params.s_max, params.constants.geometry_c);
            let s_star = effective_entanglement(s_geom, params.d, params.j, params.t, params.constants.c_growth);
            if p == 1 {
                ent_bound_first(params.t, params.j, params.d, s_star, params.n, 1, params.constants.c1)?
            } else {
                ent_bound_p(params.t, params.j, params.d, s_star, params.n, 1, p, params.constants.cp_for(p))?
            }
        }
    };
    Ok((numerator / epsilon).powf(1.0 / pf).ceil().max(1.0))
}

/// Outcome of the threshold test `S*·log₂²n < C·n²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub s_star: f64,
    pub satisfied: bool,
    /// `n²/(S*·log₂²n)`
    pub improvement: f64,
}

pub fn threshold_check(s_max: f64, n: usize, d: usize, j: f64, t: f64, constants: &BoundConstants) -> Result<Threshold> {
    if n < 4 {
        return Err(Error::TooFewQubits { min: 4, got: n });
    }
    let s_star = effective_entanglement(s_max, d, j, t, constants.c_growth);
    Ok(threshold_from_s_star(s_star, n, constants.threshold_c))
}

pub fn threshold_from_s_star(s_star: f64, n: usize, c: f64) -> Threshold {
    let l = log2n(n);
    let lhs = s_star * l * l;
    let n2 = (n * n) as f64;
    Threshold {
        s_star,
        satisfied: lhs < c * n2,
        improvement: if lhs > 0.0 { n2 / lhs } else { f64::INFINITY },
    }
}

/// Largest supported order with `S* ≤ (2/p)·log₂n`; 1 if none.
pub fn order_recommendation(s_star: f64, n: usize) -> u32 {
    let l = log2n(n.max(2));
    SUPPORTED_ORDERS
        .iter()
        .copied()
        .filter(|&p| s_star <= 2.0 / p as f64 * l)
        .max()
        .unwrap_or(1)
}

/// `n/(J²·log₂²n)`
pub fn separation_ratio(n: usize, j: f64) -> f64 {
    let l = log2n(n);
    n as f64 / (j * j * l * l)
}

/// All bound evaluations for one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub params: BoundParams,
    pub s_star: f64,
    pub standard_bound: Option<f64>,
    pub ent_bound_first: f64,
    pub ent_bound_p: Option<f64>,
    /// `None` when ε lies outside the lower-bound hypothesis.
    pub lower_bound_steps: Option<f64>,
    pub required_steps_standard: Option<f64>,
    pub required_steps_ent: f64,
    pub threshold: Option<Threshold>,
    pub improvement_factor: Option<f64>,
    pub recommended_order: u32,
}

impl BoundReport {
    pub fn evaluate(params: &BoundParams) -> Result<Self> {
        params.validate()?;
        let c = &params.constants;
        let s_star = params.s_star();
        let standard = match standard_bound(params.l, params.j, params.t, params.r, params.p, c) {
            Ok(v) => Some(v),
            Err(Error::MissingConstant(_)) => None,
            Err(e) => return Err(e),
        };
        let first = ent_bound_first(params.t, params.j, params.d, s_star, params.n, params.r, c.c1)?;
        let higher = if params.p >= 2 {
            Some(ent_bound_p(params.t, params.j, params.d, s_star, params.n, params.r, params.p, c.cp_for(params.p))?)
        } else {
            None
        };
        let lower = lower_bound_steps(params.t, params.n, params.epsilon, params.h, c.lower_bound_c).ok();
        let req_std = if standard.is_some() {
            Some(required_steps(params, params.epsilon, BoundKind::Standard)?)
        } else {
            None
        };
        let req_ent = required_steps(params, params.epsilon, BoundKind::Entanglement)?;
        let threshold = if params.n >= 4 {
            Some(threshold_from_s_star(s_star, params.n, c.threshold_c))
        } else {
            None
        };
        let improvement = req_std.filter(|_| req_ent.is_finite()).map(|s| s / req_ent);
        Ok(BoundReport {
            params: params.clone(),
            s_star,
            standard_bound: standard,
            ent_bound_first: first,
            ent_bound_p: higher,
            lower_bound_steps: lower,
            required_steps_standard: req_std,
            required_steps_ent: req_ent,
            threshold,
            improvement_factor: improvement,
            recommended_order: order_recommendation(s_star, params.n),
        })
    }
}

/// One row of the resource comparison table, in units of `t²J²/ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceRow {
    pub geometry: Geometry,
    pub n: usize,
    /// `n²`
    pub worst_case: f64,
    /// `S_geom·log₂²n`
    pub entanglement: f64,
    pub improvement: f64,
    /// Factor quoted for this row in the published table.
    pub published: f64,
}

/// The six table rows under the `worst = n²`, `ours = S_geom·log₂²n`
/// normalisation, with `S₀ = 1` for chains and treewidth 1 for trees.
pub fn resource_rows(c: f64) -> Vec<ResourceRow> {
    let rows = [
        (Geometry::Chain { len: 100 }, 200.0),
        (Geometry::Chain { len: 1000 }, 1e4),
        (Geometry::Grid2d { rows: 10, cols: 10 }, 20.0),
        (Geometry::Grid2d { rows: 32, cols: 32 }, 300.0),
        (Geometry::Tree { treewidth: 1 }, 200.0),
        (Geometry::Grid3d { nx: 5, ny: 5, nz: 5 }, 30.0),
    ];
    rows.iter()
        .map(|&(geometry, published)| {
            let n = geometry.qubit_count().unwrap_or(100);
            resource_row(geometry, n, 1.0, c, published)
        })
        .collect()
}

pub fn resource_row(geometry: Geometry, n: usize, s0: f64, c: f64, published: f64) -> ResourceRow {
    let l = log2n(n);
    let worst = (n * n) as f64;
    let ours = geometry_entropy(geometry, n, s0, c) * l * l;
    ResourceRow {
        geometry,
        n,
        worst_case: worst,
        entanglement: ours,
        improvement: worst / ours,
        published,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn standard_bound_values() {
        let c = BoundConstants::default();
        assert!(close(standard_bound(3, 1.0, 1.0, 10, 1, &c).unwrap(), 1.8, 1e-12));
        assert!(close(standard_bound(2, 1.0, 1.0, 10, 2, &c).unwrap(), 0.064, 1e-12));
        assert_eq!(standard_bound(2, 1.0, 1.0, 10, 4, &c), Err(Error::MissingConstant(4)));
        assert!(standard_bound(3, 1.0, 1.0, 1 << 40, 1, &c).unwrap() < 1e-10);
    }

    #[test]
    fn s_star_values() {
        assert_eq!(effective_entanglement(1.5, 2, 1.0, 0.0, C_GROWTH), 1.5);
        assert!(close(effective_entanglement(0.0, 2, 1.0, 0.5, C_GROWTH), 5.7708, 1e-4));
        assert!(close(effective_entanglement(2.0, 2, 1.0, 0.5, C_GROWTH), 7.7708, 1e-4));
    }

    #[test]
    fn first_order_entanglement_bound() {
        assert!(close(ent_bound_first(1.0, 1.0, 2, 1.0, 16, 100, 8.0).unwrap(), 2.56, 1e-12));
        let a = ent_bound_first(1.0, 1.0, 2, 3.0, 16, 50, 8.0).unwrap();
        let b = ent_bound_first(1.0, 1.0, 2, 3.0, 16, 100, 8.0).unwrap();
        assert!(close(a, 2.0 * b, 1e-14));
        assert_eq!(ent_bound_first(1.0, 1.0, 2, 0.0, 16, 100, 8.0).unwrap(), 0.0);
    }

    #[test]
    fn higher_order_entanglement_bound() {
        for s in [0.0, 1.0, 3.5] {
            let v = ent_bound_p(1.0, 1.0, 1, s, 2, 1, 2, default_cp(2)).unwrap();
            assert!(close(v, 64.0 * s.exp2(), 1e-12));
        }
        let n = 64;
        let p = 4;
        let s = 2.0 * (n as f64).log2() / p as f64;
        // with S* on the rule-of-thumb boundary the entropy factor is exactly n
        let with = ent_bound_p(1.0, 1.0, 1, s, n, 1, p, 1.0).unwrap();
        let without = ent_bound_p(1.0, 1.0, 1, 0.0, n, 1, p, 1.0).unwrap();
        assert!(close(with / without, n as f64, 1e-12));
        // at p = 2 the entropy factor is 2^{S*}
        let base = ent_bound_p(1.0, 1.0, 2, 3.0, 8, 3, 2, 64.0).unwrap();
        let up1 = ent_bound_p(1.0, 1.0, 2, 4.0, 8, 3, 2, 64.0).unwrap();
        let up2 = ent_bound_p(1.0, 1.0, 2, 5.0, 8, 3, 2, 64.0).unwrap();
        assert!(close(up1, 2.0 * base, 1e-12));
        assert!(close(up2, 4.0 * base, 1e-12));
        assert!(ent_bound_p(1.0, 1.0, 2, 1e4, 8, 3, 2, 64.0).unwrap().is_infinite());
        assert_eq!(ent_bound_p(1.0, 1.0, 2, 1.0, 8, 3, 1, 1.0), Err(Error::UnsupportedOrder(1)));
    }

    #[test]
    fn growth_and_commutator_forms() {
        assert_eq!(growth_bound(0.7, 2, 1.0, 0.0, C_GROWTH), 0.7);
        assert!(close(growth_bound(0.0, 1, 1.0, 1.0, C_GROWTH), 5.7708, 1e-4));
        assert_eq!(commutator_entropy_raw(0.0, 1.5, 2.0, None), 6.0);
        assert_eq!(commutator_entropy_raw(1.0, 1.0, 1.0, None), 4.0);
        assert_eq!(commutator_entropy_raw(5.0, 1.0, 1.0, Some(4)), 8.0);
        assert!(close(commutator_entropy_bound(1.0, 1.0, 1.0, 0.1, None), 0.08, 1e-12));
    }

    #[test]
    fn light_cone_radius_values() {
        assert_eq!(light_cone_radius(0.3, 2.0, 0.0, 50), 0.6);
        assert!(close(light_cone_radius(0.05, 2.0, 1.0, 100), 4.705, 1e-3));
        assert!(light_cone_radius(0.1, 2.0, 1.0, 100) < light_cone_radius(0.2, 2.0, 1.0, 100));
        assert!(light_cone_radius(0.1, 2.0, 1.0, 100) < light_cone_radius(0.1, 2.0, 1.0, 200));
    }

    #[test]
    fn lower_bound_values() {
        assert!(close(lower_bound_steps(1.0, 100, 0.1, 1.0, 1.0).unwrap(), 1000.0, 1e-12));
        let a = lower_bound_steps(1.0, 50, 0.1, 1.0, 1.0).unwrap();
        assert!(close(2.0 * a, 1000.0, 1e-12));
        assert_eq!(lower_bound_steps(1.0, 100, 0.3, 1.0, 1.0), Err(Error::LowerBoundEpsilon(0.3)));
        assert!(lower_bound_steps(1.0, 100, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn required_steps_inverts_first_order() {
        let mut p = BoundParams::new(100, 199, 1.0, 2, Geometry::Chain { len: 100 });
        p.s_max = 1.0;
        let a = required_steps(&p, 0.01, BoundKind::Entanglement).unwrap();
        let b = required_steps(&p, 0.005, BoundKind::Entanglement).unwrap();
        assert!((b - 2.0 * a).abs() <= 1.0);
        let s = required_steps(&p, 0.01, BoundKind::Standard).unwrap();
        assert!(s > a);
        // plugging the answer back satisfies the bound
        let std = standard_bound(199, 1.0, 1.0, s as u64, 1, &p.constants).unwrap();
        assert!(std <= 0.01);
        assert!(standard_bound(199, 1.0, 1.0, s as u64 - 1, 1, &p.constants).unwrap() > 0.01);
    }

    #[test]
    fn threshold_values() {
        let c = BoundConstants::default();
        let th = threshold_from_s_star(2.0, 4, 2.0);
        assert!(th.satisfied);
        assert!(threshold_check(2.0, 4, 2, 1.0, 0.0, &c).unwrap().satisfied);
        let th = threshold_from_s_star(1.0, 100, 1.0);
        assert!(close(th.improvement, 226.0, 0.01));
        assert!(threshold_from_s_star(2.0, 100, 1.0).improvement < th.improvement);
        assert!(threshold_check(1.0, 3, 2, 1.0, 1.0, &c).is_err());
    }

    #[test]
    fn order_rule_of_thumb() {
        assert_eq!(order_recommendation(2.0 * 10.0, 1024), 1);
        assert_eq!(order_recommendation(1.0, 1024), 6);
        assert_eq!(order_recommendation(0.0, 8), 6);
        // log₂16 = 4: p=2 allows 4, p=4 allows 2
        assert_eq!(order_recommendation(3.0, 16), 2);
    }

    #[test]
    fn separation_values() {
        assert!(close(separation_ratio(100, 1.0), 2.27, 0.01));
        assert!(close(separation_ratio(1000, 1.0), 10.1, 0.01));
        let mut prev = separation_ratio(8, 1.0);
        for n in 9..200 {
            let v = separation_ratio(n, 1.0);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn resource_table_normalisation() {
        let rows = resource_rows(1.0);
        assert_eq!(rows.len(), 6);
        assert!(close(rows[0].improvement, 226.0, 0.01));
        assert!(close(rows[2].improvement, 22.7, 0.01));
        assert!(close(rows[3].improvement, 327.7, 0.01));
    }

    #[test]
    fn report_consistency() {
        let mut p = BoundParams::new(16, 31, 2.5, 2, Geometry::Chain { len: 16 });
        p.r = 20;
        p.s_max = 0.5;
        let rep = BoundReport::evaluate(&p).unwrap();
        let ratio = rep.required_steps_standard.unwrap() / rep.required_steps_ent;
        assert!(close(rep.improvement_factor.unwrap(), ratio, 1e-12));
        assert!(rep.lower_bound_steps.is_some());
        p.p = 4;
        let rep = BoundReport::evaluate(&p).unwrap();
        assert!(rep.standard_bound.is_none() && rep.ent_bound_p.is_some());
        p.s_max = 9.0;
        assert!(BoundReport::evaluate(&p).is_err());
    }
}
