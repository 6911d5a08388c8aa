//! JSON form of a Hamiltonian:
//! `{n, geometry, terms: [{coeff_re, coeff_im, paulis: {"0": "Z", "1": "Z"}}]}`.

use std::collections::BTreeMap;
use std::path::Path;

use entrotter_core::hamiltonian::{Geometry, HamiltonianModel};
use entrotter_core::pauli::{Pauli, PauliTerm};
use entrotter_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{io_err, LabError, LabResult};

/// Geometry tag with its lattice dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeometryDoc {
    Chain { len: usize },
    Grid2d { rows: usize, cols: usize },
    Grid3d { nx: usize, ny: usize, nz: usize },
    Tree { treewidth: usize },
    AllToAll,
    Custom,
}

impl From<Geometry> for GeometryDoc {
    fn from(g: Geometry) -> Self {
        match g {
            Geometry::Chain { len } => GeometryDoc::Chain { len },
            Geometry::Grid2d { rows, cols } => GeometryDoc::Grid2d { rows, cols },
            Geometry::Grid3d { nx, ny, nz } => GeometryDoc::Grid3d { nx, ny, nz },
            Geometry::Tree { treewidth } => GeometryDoc::Tree { treewidth },
            Geometry::AllToAll => GeometryDoc::AllToAll,
            Geometry::Custom => GeometryDoc::Custom,
        }
    }
}

impl From<GeometryDoc> for Geometry {
    fn from(g: GeometryDoc) -> Self {
        match g {
            GeometryDoc::Chain { len } => Geometry::Chain { len },
            GeometryDoc::Grid2d { rows, cols } => Geometry::Grid2d { rows, cols },
            GeometryDoc::Grid3d { nx, ny, nz } => Geometry::Grid3d { nx, ny, nz },
            GeometryDoc::Tree { treewidth } => Geometry::Tree { treewidth },
            GeometryDoc::AllToAll => Geometry::AllToAll,
            GeometryDoc::Custom => Geometry::Custom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff_re: f64,
    pub coeff_im: f64,
    pub paulis: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianDoc {
    pub n: usize,
    pub geometry: GeometryDoc,
    pub terms: Vec<TermDoc>,
}

impl HamiltonianDoc {
    pub fn from_model(model: &HamiltonianModel) -> Self {
        let terms = model
            .terms()
            .iter()
            .map(|t| TermDoc {
                coeff_re: t.coeff.re,
                coeff_im: t.coeff.im,
                paulis: t
                    .paulis
                    .iter()
                    .map(|(q, p)| (q.to_string(), p.symbol().to_string()))
                    .collect(),
            })
            .collect();
        HamiltonianDoc {
            n: model.n(),
            geometry: model.geometry().into(),
            terms,
        }
    }

    pub fn to_model(&self) -> LabResult<HamiltonianModel> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            let mut letters = Vec::with_capacity(t.paulis.len());
            for (q, p) in &t.paulis {
                let q: usize = q
                    .parse()
                    .map_err(|_| LabError::Document(format!("term {i}: qubit key {q:?} is not an index")))?;
                let mut chars = p.chars();
                let letter = match (chars.next().and_then(Pauli::from_symbol), chars.next()) {
                    (Some(l), None) => l,
                    _ => return Err(LabError::Document(format!("term {i}: {p:?} is not one of X, Y, Z"))),
                };
                letters.push((q, letter));
            }
            terms.push(PauliTerm::new(Complex64::new(t.coeff_re, t.coeff_im), letters));
        }
        Ok(HamiltonianModel::new(self.n, self.geometry.into(), terms)?)
    }
}

pub fn model_to_json(model: &HamiltonianModel) -> LabResult<String> {
    Ok(serde_json::to_string_pretty(&HamiltonianDoc::from_model(model))?)
}

pub fn model_from_json(text: &str) -> LabResult<HamiltonianModel> {
    serde_json::from_str::<HamiltonianDoc>(text)?.to_model()
}

pub fn load_model(path: &Path) -> LabResult<HamiltonianModel> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    let doc: HamiltonianDoc = serde_json::from_str(&text).map_err(|source| LabError::Json {
        path: path.into(),
        source,
    })?;
    doc.to_model()
}

pub fn save_model(model: &HamiltonianModel, path: &Path) -> LabResult<()> {
    std::fs::write(path, model_to_json(model)?).map_err(io_err(path))
}
