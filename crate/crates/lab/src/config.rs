//! Experiment configuration.
//!
//! A config file is a JSON object whose keys override the defaults of the
//! chosen experiment, so `{"n": [8, 10]}` is a complete config.

use std::path::{Path, PathBuf};

use entrotter_core::bounds::{BoundConstants, SUPPORTED_ORDERS};
use entrotter_core::dense::{CutMode, ProductPattern, DENSE_LIMIT};
use entrotter_core::hamiltonian::{
    build_all_to_all_ising, build_heisenberg, build_syk4, build_tfim, HamiltonianModel,
};
use entrotter_core::trotter::Ordering;
use serde::{Deserialize, Serialize};

use crate::error::{io_err, LabError, LabResult};
use crate::model_io::load_model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Validate,
    Separation,
    Orders,
    Resources,
    Sweep,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Validate => "validate",
            ExperimentKind::Separation => "separation",
            ExperimentKind::Orders => "orders",
            ExperimentKind::Resources => "resources",
            ExperimentKind::Sweep => "sweep",
        }
    }

    /// Experiments that only run on the dense backend.
    pub fn dense_only(self) -> bool {
        matches!(self, ExperimentKind::Separation | ExperimentKind::Orders)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFamily {
    Tfim,
    Heisenberg,
    AllToAll,
    Syk4,
    /// Hamiltonian JSON read from `ModelSpec::path`.
    File,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelSpec {
    pub family: ModelFamily,
    pub coupling: f64,
    pub field: f64,
    /// SYK-4 disorder seed; the top-level seed is used when absent.
    pub seed: Option<u64>,
    pub path: Option<PathBuf>,
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec {
            family: ModelFamily::Tfim,
            coupling: 1.0,
            field: 2.5,
            seed: None,
            path: None,
        }
    }
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self.family {
            ModelFamily::Tfim => "tfim",
            ModelFamily::Heisenberg => "heisenberg",
            ModelFamily::AllToAll => "all_to_all",
            ModelFamily::Syk4 => "syk4",
            ModelFamily::File => "file",
        }
    }

    pub fn build(&self, n: usize, seed: u64) -> LabResult<HamiltonianModel> {
        let m = match self.family {
            ModelFamily::Tfim => build_tfim(n, self.coupling, self.field)?,
            ModelFamily::Heisenberg => build_heisenberg(n, self.coupling)?,
            ModelFamily::AllToAll => build_all_to_all_ising(n, self.field)?,
            ModelFamily::Syk4 => build_syk4(n, self.coupling, self.seed.unwrap_or(seed))?,
            ModelFamily::File => {
                let path = self
                    .path
                    .as_deref()
                    .ok_or_else(|| LabError::Config("model.family \"file\" needs model.path".into()))?;
                let m = load_model(path)?;
                if m.n() != n {
                    return Err(LabError::Config(format!(
                        "{} holds {} qubits but n = {n} was requested",
                        path.display(),
                        m.n()
                    )));
                }
                m
            }
        };
        Ok(m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingSpec {
    Forward,
    EvenOdd,
}

impl From<OrderingSpec> for Ordering {
    fn from(o: OrderingSpec) -> Self {
        match o {
            OrderingSpec::Forward => Ordering::Forward,
            OrderingSpec::EvenOdd => Ordering::EvenOdd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutSpec {
    Contiguous,
    AllBalanced,
}

impl From<CutSpec> for CutMode {
    fn from(c: CutSpec) -> Self {
        match c {
            CutSpec::Contiguous => CutMode::Contiguous,
            CutSpec::AllBalanced => CutMode::AllBalanced,
        }
    }
}

/// Serializable mirror of [`BoundConstants`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConstantsSpec {
    pub c1: f64,
    pub cp: Option<f64>,
    pub c_growth: f64,
    pub standard: Vec<(u32, f64)>,
    pub lr_prefactor: f64,
    pub xi: Option<f64>,
    pub threshold_c: f64,
    pub lower_bound_c: f64,
    pub geometry_c: f64,
}

impl Default for ConstantsSpec {
    fn default() -> Self {
        BoundConstants::default().into()
    }
}

impl From<BoundConstants> for ConstantsSpec {
    fn from(c: BoundConstants) -> Self {
        ConstantsSpec {
            c1: c.c1,
            cp: c.cp,
            c_growth: c.c_growth,
            standard: c.standard,
            lr_prefactor: c.lr_prefactor,
            xi: c.xi,
            threshold_c: c.threshold_c,
            lower_bound_c: c.lower_bound_c,
            geometry_c: c.geometry_c,
        }
    }
}

impl From<&ConstantsSpec> for BoundConstants {
    fn from(c: &ConstantsSpec) -> Self {
        BoundConstants {
            c1: c.c1,
            cp: c.cp,
            c_growth: c.c_growth,
            standard: c.standard.clone(),
            lr_prefactor: c.lr_prefactor,
            xi: c.xi,
            threshold_c: c.threshold_c,
            lower_bound_c: c.lower_bound_c,
            geometry_c: c.geometry_c,
        }
    }
}

/// Reference product formula for errors above the dense limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSpec {
    pub p: u32,
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub model: ModelSpec,
    pub n: Vec<usize>,
    pub t: f64,
    pub r: Vec<u64>,
    pub p: Vec<u32>,
    pub ordering: OrderingSpec,
    pub chi_max: usize,
    pub cutoff: f64,
    pub cut_mode: CutSpec,
    pub seed: u64,
    /// `"zeros"`, `"plus"` or a bit string.
    pub initial_state: String,
    /// Quench time under the model that turns the product state into the
    /// area-law initial state of the validation runs.
    pub prep_time: f64,
    pub reference: ReferenceSpec,
    /// Validation panels to produce, from `a`–`d`.
    pub panels: Vec<String>,
    /// Qubits and state count of the controlled-entropy scan.
    pub controlled_n: usize,
    pub controlled_states: usize,
    /// Single-step sizes of the order sweep.
    pub taus: Vec<f64>,
    pub epsilon: f64,
    /// Volume-law side of the separation experiment.
    pub contrast_model: ModelSpec,
    pub contrast_state: String,
    pub constants: ConstantsSpec,
}

impl ExperimentConfig {
    /// Defaults of each experiment.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let mut c = ExperimentConfig {
            experiment: kind,
            model: ModelSpec::default(),
            n: vec![8, 16, 32, 64, 128],
            t: 1.0,
            r: vec![20],
            p: vec![1],
            ordering: OrderingSpec::EvenOdd,
            chi_max: 16,
            cutoff: 1e-12,
            cut_mode: CutSpec::Contiguous,
            seed: 0,
            initial_state: "zeros".into(),
            prep_time: 1.0,
            reference: ReferenceSpec { p: 4, r: 100 },
            panels: ["a", "b", "c", "d"].map(String::from).to_vec(),
            controlled_n: 8,
            controlled_states: 200,
            taus: (4..=10).map(|k| 2f64.powi(-k)).collect(),
            epsilon: 0.01,
            contrast_model: ModelSpec {
                family: ModelFamily::AllToAll,
                field: 1.0,
                ..ModelSpec::default()
            },
            contrast_state: "plus".into(),
            constants: ConstantsSpec::default(),
        };
        match kind {
            ExperimentKind::Validate | ExperimentKind::Resources => {}
            ExperimentKind::Separation => {
                c.n = vec![6, 8, 10, 12];
                c.r = vec![32];
            }
            ExperimentKind::Orders => {
                c.n = vec![6];
                c.p = vec![1, 2, 4];
                c.ordering = OrderingSpec::Forward;
            }
            ExperimentKind::Sweep => {
                c.n = vec![4, 6, 8];
                c.r = vec![4, 8, 16, 32];
                c.p = vec![1, 2];
            }
        }
        c
    }

    /// Applies the keys of a JSON object on top of `defaults(kind)`.
    pub fn from_json(kind: ExperimentKind, text: &str) -> LabResult<Self> {
        let overlay: serde_json::Value = serde_json::from_str(text)?;
        Self::from_value(kind, overlay)
    }

    pub fn from_value(kind: ExperimentKind, overlay: serde_json::Value) -> LabResult<Self> {
        let serde_json::Value::Object(obj) = overlay else {
            return Err(LabError::Config("config must be a JSON object".into()));
        };
        if let Some(e) = obj.get("experiment") {
            if e.as_str() != Some(kind.name()) {
                return Err(LabError::Config(format!("file is for experiment {e}, not {}", kind.name())));
            }
        }
        let mut base = serde_json::to_value(Self::defaults(kind))?;
        merge(&mut base, serde_json::Value::Object(obj));
        let cfg: Self = serde_json::from_value(base)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(kind: ExperimentKind, path: &Path) -> LabResult<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let overlay: serde_json::Value = serde_json::from_str(&text).map_err(|source| LabError::Json {
            path: path.into(),
            source,
        })?;
        Self::from_value(kind, overlay)
    }

    pub fn bound_constants(&self) -> BoundConstants {
        (&self.constants).into()
    }

    pub fn pattern(&self, n: usize) -> LabResult<ProductPattern> {
        parse_pattern(&self.initial_state, n)
    }

    pub fn contrast_pattern(&self, n: usize) -> LabResult<ProductPattern> {
        parse_pattern(&self.contrast_state, n)
    }

    /// Rejects configs that cannot run, with a one-line reason.
    pub fn validate(&self) -> LabResult<()> {
        let bad = |msg: String| Err(LabError::Config(msg));
        let kind = self.experiment;
        if kind != ExperimentKind::Resources && self.n.is_empty() {
            return bad("n is empty".into());
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < 2) {
            return bad(format!("n = {n} is below 2"));
        }
        if kind.dense_only() {
            if let Some(&n) = self.n.iter().find(|&&n| n > DENSE_LIMIT) {
                return bad(format!("n = {n} exceeds the dense limit {DENSE_LIMIT} for {}", kind.name()));
            }
        }
        if self.cut_mode == CutSpec::AllBalanced {
            if let Some(&n) = self.n.iter().find(|&&n| n > DENSE_LIMIT) {
                return bad(format!("all_balanced cuts need n <= {DENSE_LIMIT}, got {n}"));
            }
        }
        if self.chi_max < 1 {
            return bad("chi_max must be at least 1".into());
        }
        if !(0.0..1.0).contains(&self.cutoff) {
            return bad(format!("cutoff {} outside [0, 1)", self.cutoff));
        }
        if !(self.t > 0.0 && self.t.is_finite()) {
            return bad(format!("t = {} must be positive", self.t));
        }
        if !(self.prep_time >= 0.0 && self.prep_time.is_finite()) {
            return bad(format!("prep_time = {} must be non-negative", self.prep_time));
        }
        if self.r.is_empty() || self.r.contains(&0) {
            return bad("r needs at least one value and no zeros".into());
        }
        if self.p.is_empty() {
            return bad("p is empty".into());
        }
        for &p in self.p.iter().chain([&self.reference.p]) {
            if !SUPPORTED_ORDERS.contains(&p) {
                return bad(format!("order {p} not in {SUPPORTED_ORDERS:?}"));
            }
        }
        if self.reference.r == 0 {
            return bad("reference.r must be positive".into());
        }
        for panel in &self.panels {
            if !["a", "b", "c", "d"].contains(&panel.as_str()) {
                return bad(format!("unknown panel {panel:?}"));
            }
        }
        if !(2..=10).contains(&self.controlled_n) {
            return bad(format!("controlled_n = {} outside 2..=10", self.controlled_n));
        }
        if kind == ExperimentKind::Orders && self.taus.len() < 4 {
            return bad(format!("order fits need at least 4 taus, got {}", self.taus.len()));
        }
        if self.taus.iter().any(|t| !(*t > 0.0)) {
            return bad("taus must be positive".into());
        }
        if !(self.epsilon > 0.0) {
            return bad(format!("epsilon = {} must be positive", self.epsilon));
        }
        if self.model.family == ModelFamily::File && self.model.path.is_none() {
            return bad("model.family \"file\" needs model.path".into());
        }
        for &n in &self.n {
            self.pattern(n)?;
            self.contrast_pattern(n)?;
        }
        Ok(())
    }
}

fn parse_pattern(spec: &str, n: usize) -> LabResult<ProductPattern> {
    match spec {
        "zeros" => Ok(ProductPattern::Zeros),
        "plus" => Ok(ProductPattern::Plus),
        bits => match ProductPattern::from_bitstring(bits) {
            // a short pattern is tiled across the register
            Ok(ProductPattern::Bits(v)) if !v.is_empty() => {
                Ok(ProductPattern::Bits(v.iter().copied().cycle().take(n).collect()))
            }
            _ => Err(LabError::Config(format!("state {bits:?} is not zeros, plus or a bit string"))),
        },
    }
}

fn merge(base: &mut serde_json::Value, overlay: serde_json::Value) {
    match (base, overlay) {
        (serde_json::Value::Object(b), serde_json::Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) if slot.is_object() && v.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (b, o) => *b = o,
    }
}
