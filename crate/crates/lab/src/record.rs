//! One CSV row per measured point or bound evaluation.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{io_err, LabResult};

/// Column order of every CSV file.
pub const COLUMNS: [&str; 25] = [
    "experiment",
    "model",
    "geometry",
    "n",
    "L",
    "J",
    "h",
    "d",
    "t",
    "p",
    "r",
    "chi_max",
    "cutoff",
    "seed",
    "backend",
    "curve_provenance",
    "S_max_initial",
    "S_star",
    "error",
    "bound_standard",
    "bound_ent_first",
    "bound_ent_p",
    "discarded_weight",
    "improvement",
    "runtime_ms",
];

/// Field order matches [`COLUMNS`]; empty cells are `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub experiment: String,
    pub model: String,
    pub geometry: String,
    pub n: usize,
    #[serde(rename = "L")]
    pub l: Option<usize>,
    #[serde(rename = "J")]
    pub j: Option<f64>,
    pub h: Option<f64>,
    pub d: Option<usize>,
    pub t: Option<f64>,
    pub p: Option<u32>,
    pub r: Option<u64>,
    pub chi_max: Option<usize>,
    pub cutoff: Option<f64>,
    pub seed: Option<u64>,
    pub backend: String,
    pub curve_provenance: String,
    #[serde(rename = "S_max_initial")]
    pub s_max_initial: Option<f64>,
    #[serde(rename = "S_star")]
    pub s_star: Option<f64>,
    pub error: Option<f64>,
    pub bound_standard: Option<f64>,
    pub bound_ent_first: Option<f64>,
    pub bound_ent_p: Option<f64>,
    pub discarded_weight: Option<f64>,
    pub improvement: Option<f64>,
    pub runtime_ms: Option<f64>,
}

fn key(r: &Record) -> impl Ord + '_ {
    let f = |v: Option<f64>| v.map(f64::to_bits);
    (
        (&r.experiment, &r.model, &r.geometry, r.n),
        (r.p, r.r, f(r.t), r.chi_max),
        (&r.curve_provenance, &r.backend, f(r.s_max_initial), f(r.error)),
    )
}

/// Sorts by experiment, model, geometry, n, p, r, t, χ, provenance, backend.
pub fn sort_records(records: &mut [Record]) {
    // all sorted floats are non-negative, where bit order is numeric order
    records.sort_by(|a, b| key(a).cmp(&key(b)));
}

pub fn write_csv<W: Write>(records: &[Record], w: W) -> LabResult<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(COLUMNS)?;
    for r in records {
        out.serialize(r)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> LabResult<Vec<Record>> {
    let mut rdr = csv::Reader::from_reader(r);
    Ok(rdr.deserialize().collect::<Result<Vec<Record>, _>>()?)
}

pub fn to_csv_string(records: &[Record]) -> LabResult<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn save_csv(records: &[Record], path: &Path) -> LabResult<()> {
    let text = to_csv_string(records)?;
    std::fs::write(path, text).map_err(io_err(path))
}

pub fn load_csv(path: &Path) -> LabResult<Vec<Record>> {
    let f = std::fs::File::open(path).map_err(io_err(path))?;
    read_csv(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Record {
        Record {
            experiment: "sweep".into(),
            model: "tfim".into(),
            geometry: "chain".into(),
            n: 6,
            l: Some(11),
            j: Some(2.5),
            t: Some(0.1 + 0.2),
            p: Some(2),
            r: Some(8),
            backend: "dense".into(),
            curve_provenance: "measured".into(),
            error: Some(1.234_567_890_123_456_7e-9),
            bound_ent_p: Some(f64::INFINITY),
            ..Record::default()
        }
    }

    #[test]
    fn header_matches_columns() {
        let s = to_csv_string(&[sample()]).unwrap();
        assert_eq!(s.lines().next().unwrap(), COLUMNS.join(","));
        assert_eq!(s.lines().nth(1).unwrap().split(',').count(), COLUMNS.len());
    }

    #[test]
    fn round_trip_is_exact() {
        let recs = vec![sample(), Record { n: 4, ..sample() }];
        let back = read_csv(to_csv_string(&recs).unwrap().as_bytes()).unwrap();
        assert_eq!(back, recs);
    }

    #[test]
    fn sort_is_by_key_columns() {
        let mut v = vec![
            Record { n: 8, ..sample() },
            Record { n: 6, r: Some(16), ..sample() },
            Record { n: 6, r: Some(4), ..sample() },
        ];
        sort_records(&mut v);
        let order: Vec<_> = v.iter().map(|r| (r.n, r.r)).collect();
        assert_eq!(order, [(6, Some(4)), (6, Some(16)), (8, Some(8))]);
    }
}
