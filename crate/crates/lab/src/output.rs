//! Writes experiment results to a directory.

use std::path::{Path, PathBuf};

use serde_json::json;

use crate::config::ExperimentConfig;
use crate::error::{io_err, LabError, LabResult};
use crate::experiments::ExperimentResult;
use crate::record::{to_csv_string, COLUMNS};

pub const MANIFEST: &str = "manifest.json";
pub const SUMMARY: &str = "summary.json";

/// Writes `<name>.csv` per output, `<name>.svg` when `plots` is set, the
/// summary and a manifest. Everything is rendered before the first write, so
/// an empty result leaves the directory untouched.
pub fn write_result(
    result: &ExperimentResult,
    cfg: &ExperimentConfig,
    dir: &Path,
    plots: bool,
    timings: bool,
) -> LabResult<Vec<PathBuf>> {
    if result.outputs.is_empty() {
        return Err(LabError::Empty(format!("{} produced no outputs", result.kind.name())));
    }
    if let Some(o) = result.outputs.iter().find(|o| o.records.is_empty()) {
        return Err(LabError::Empty(format!("{} has no rows", o.name)));
    }
    let mut files: Vec<(String, String)> = Vec::new();
    for o in &result.outputs {
        files.push((format!("{}.csv", o.name), to_csv_string(&o.records)?));
        if plots {
            if let Some(chart) = &o.chart {
                files.push((format!("{}.svg", o.name), chart.to_svg()));
            }
        }
    }
    files.push((SUMMARY.into(), serde_json::to_string_pretty(&result.summary)? + "\n"));
    let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
    let manifest = json!({
        "tool": "entrotter",
        "versions": {
            "entrotter-lab": env!("CARGO_PKG_VERSION"),
        },
        "experiment": result.kind.name(),
        "config": cfg,
        "constants": cfg.constants,
        "columns": COLUMNS,
        "runtime_column": if timings { "wall-clock milliseconds" } else { "empty" },
        "files": names,
    });
    let manifest = serde_json::to_string_pretty(&manifest)? + "\n";
    files.push((MANIFEST.into(), manifest));

    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::with_capacity(files.len());
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentKind;
    use crate::experiments::{run_resource_table, ExperimentResult};

    #[test]
    fn empty_result_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("out");
        let cfg = ExperimentConfig::defaults(ExperimentKind::Resources);
        let mut res: ExperimentResult = run_resource_table(&cfg).unwrap();
        res.outputs[0].records.clear();
        assert!(matches!(write_result(&res, &cfg, &out, true, false), Err(LabError::Empty(_))));
        assert!(!out.exists());
    }

    #[test]
    fn io_errors_name_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        std::fs::write(&blocker, "x").unwrap();
        let cfg = ExperimentConfig::defaults(ExperimentKind::Resources);
        let res = run_resource_table(&cfg).unwrap();
        let err = write_result(&res, &cfg, &blocker.join("sub"), false, false).unwrap_err();
        assert!(err.to_string().contains("file"), "{err}");
    }

    #[test]
    fn writes_csv_svg_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ExperimentConfig::defaults(ExperimentKind::Resources);
        let res = run_resource_table(&cfg).unwrap();
        let files = write_result(&res, &cfg, dir.path(), true, false).unwrap();
        let names: Vec<_> = files.iter().map(|p| p.file_name().unwrap().to_str().unwrap().to_string()).collect();
        assert_eq!(names, ["resources.csv", "resources.svg", SUMMARY, MANIFEST]);
        let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(MANIFEST)).unwrap()).unwrap();
        assert_eq!(m["experiment"], "resources");
        assert_eq!(m["constants"]["c1"], 8.0);
    }
}
