//! File formats, experiment drivers and output writers around
//! `entrotter-core`.

pub mod checkpoint;
pub mod config;
pub mod error;
pub mod experiments;
pub mod model_io;
pub mod output;
pub mod plot;
pub mod record;
pub mod states;

pub use config::{ExperimentConfig, ExperimentKind};
pub use error::{LabError, LabResult};
pub use experiments::{run, ExperimentResult, RunOptions};
pub use record::Record;
