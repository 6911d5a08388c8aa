//! MPS checkpoints as JSON.
//!
//! ```text
//! {
//!   "format": "entrotter-mps",
//!   "version": 1,
//!   "n": 4, "chi_max": 16, "cutoff": 1e-12, "cum_discarded": 0.0,
//!   "tensors": [{"left": 1, "right": 2, "data": [[re, im], ...]}, ...]
//! }
//! ```
//!
//! `data` is the row-major `(left, 2, right)` block of each site.

use std::path::Path;

use entrotter_core::mps::{MpsState, SiteTensor};
use entrotter_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{io_err, LabError, LabResult};

pub const FORMAT: &str = "entrotter-mps";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorDoc {
    pub left: usize,
    pub right: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub chi_max: usize,
    pub cutoff: f64,
    pub cum_discarded: f64,
    pub tensors: Vec<TensorDoc>,
}

impl Checkpoint {
    pub fn from_state(mps: &MpsState) -> Self {
        Checkpoint {
            format: FORMAT.into(),
            version: VERSION,
            n: mps.n(),
            chi_max: mps.chi_max(),
            cutoff: mps.cutoff(),
            cum_discarded: mps.cum_discarded(),
            tensors: mps
                .tensors()
                .iter()
                .map(|t| TensorDoc {
                    left: t.left(),
                    right: t.right(),
                    data: t.data().iter().map(|z| [z.re, z.im]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_state(&self) -> LabResult<MpsState> {
        if self.format != FORMAT {
            return Err(LabError::Document(format!("unknown format {:?}", self.format)));
        }
        if self.version != VERSION {
            return Err(LabError::Document(format!("unsupported checkpoint version {}", self.version)));
        }
        if self.tensors.len() != self.n {
            return Err(LabError::Document(format!("{} tensors for n = {}", self.tensors.len(), self.n)));
        }
        let tensors = self
            .tensors
            .iter()
            .map(|t| {
                let data = t.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
                SiteTensor::new(t.left, t.right, data)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MpsState::from_tensors(tensors, self.chi_max, self.cutoff, self.cum_discarded)?)
    }
}

pub fn save_checkpoint(mps: &MpsState, path: &Path) -> LabResult<()> {
    let text = serde_json::to_string(&Checkpoint::from_state(mps))?;
    std::fs::write(path, text).map_err(io_err(path))
}

pub fn load_checkpoint(path: &Path) -> LabResult<MpsState> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let doc: Checkpoint = serde_json::from_str(&text).map_err(|source| LabError::Json {
        path: path.into(),
        source,
    })?;
    doc.to_state()
}
