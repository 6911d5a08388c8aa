//! Local Hamiltonians as ordered lists of weighted Pauli strings.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::Float;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::bounds::light_cone_radius;
use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliTerm};

/// Geometry tag carried by a model, with lattice dimensions where they apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Chain { len: usize },
    Grid2d { rows: usize, cols: usize },
    Grid3d { nx: usize, ny: usize, nz: usize },
    Tree { treewidth: usize },
    AllToAll,
    Custom,
}

impl Geometry {
    pub fn name(&self) -> &'static str {
        match self {
            Geometry::Chain { .. } => "chain",
            Geometry::Grid2d { .. } => "grid2d",
            Geometry::Grid3d { .. } => "grid3d",
            Geometry::Tree { .. } => "tree",
            Geometry::AllToAll => "all-to-all",
            Geometry::Custom => "custom",
        }
    }

    /// Spatial dimension of a lattice geometry.
    pub fn lattice_dimension(&self) -> Option<usize> {
        match self {
            Geometry::Chain { .. } => Some(1),
            Geometry::Grid2d { .. } => Some(2),
            Geometry::Grid3d { .. } => Some(3),
            _ => None,
        }
    }

    pub fn qubit_count(&self) -> Option<usize> {
        match *self {
            Geometry::Chain { len } => Some(len),
            Geometry::Grid2d { rows, cols } => Some(rows * cols),
            Geometry::Grid3d { nx, ny, nz } => Some(nx * ny * nz),
            _ => None,
        }
    }
}

/// A named contiguous range of terms, e.g. the `zz` and `x` partitions of
/// the Ising builders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermBlock {
    pub label: String,
    pub range: Range<usize>,
}

/// `(L, J, d)`: term count, largest term norm, interaction-graph degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionMetadata {
    pub term_count: usize,
    pub max_norm: f64,
    pub max_degree: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianModel {
    n: usize,
    geometry: Geometry,
    terms: Vec<PauliTerm>,
    blocks: Vec<TermBlock>,
}

impl HamiltonianModel {
    /// Builds a model, dropping zero-coefficient terms and checking supports.
    pub fn new(n: usize, geometry: Geometry, terms: Vec<PauliTerm>) -> Result<Self> {
        Self::with_blocks(n, geometry, vec![(String::from("all"), terms)])
    }

    /// Builds a model from labelled groups of terms, kept in the given order.
    pub fn with_blocks(n: usize, geometry: Geometry, groups: Vec<(String, Vec<PauliTerm>)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewQubits { min: 1, got: 0 });
        }
        let mut terms = Vec::new();
        let mut blocks = Vec::new();
        for (label, group) in groups {
            let start = terms.len();
            for t in group {
                if t.coeff.norm() == 0.0 {
                    continue;
                }
                if let Some(q) = t.max_qubit() {
                    if q >= n {
                        return Err(Error::QubitOutOfRange { qubit: q, n });
                    }
                }
                terms.push(t);
            }
            blocks.push(TermBlock {
                label,
                range: start..terms.len(),
            });
        }
        Ok(HamiltonianModel {
            n,
            geometry,
            terms,
            blocks,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn term(&self, index: usize) -> Result<&PauliTerm> {
        self.terms.get(index).ok_or(Error::TermOutOfRange {
            index,
            len: self.terms.len(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn blocks(&self) -> &[TermBlock] {
        &self.blocks
    }

    /// Terms of the block with the given label (empty if absent).
    pub fn block(&self, label: &str) -> &[PauliTerm] {
        self.blocks
            .iter()
            .find(|b| b.label == label)
            .map(|b| &self.terms[b.range.clone()])
            .unwrap_or(&[])
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.im == 0.0)
    }

    pub fn metadata(&self) -> InteractionMetadata {
        interaction_metadata(self)
    }

    /// Adjacency lists of the interaction graph: an edge joins any two
    /// qubits that share a term.
    pub fn interaction_graph(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.n];
        for t in &self.terms {
            let s: Vec<usize> = t.support().collect();
            for (i, &a) in s.iter().enumerate() {
                for &b in &s[i + 1..] {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Number of interaction-graph edges crossing the bipartition `(A, Ā)`.
    pub fn cut_boundary(&self, region: &[usize]) -> usize {
        let inside: BTreeSet<usize> = region.iter().copied().collect();
        let adj = self.interaction_graph();
        let mut count = 0;
        for &a in &inside {
            if a < self.n {
                count += adj[a].iter().filter(|b| !inside.contains(b)).count();
            }
        }
        count
    }
}

fn require_qubits(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::TooFewQubits { min, got: n })
    } else {
        Ok(())
    }
}

/// `J·Σ Z_iZ_{i+1} + h·Σ X_i` on an open chain; blocks `zz` then `x`.
pub fn build_tfim(n: usize, coupling: f64, field: f64) -> Result<HamiltonianModel> {
    require_qubits(n, 2)?;
    let zz = (0..n - 1)
        .map(|i| PauliTerm::real(coupling, [(i, Pauli::Z), (i + 1, Pauli::Z)]))
        .collect();
    let x = (0..n).map(|i| PauliTerm::real(field, [(i, Pauli::X)])).collect();
    HamiltonianModel::with_blocks(
        n,
        Geometry::Chain { len: n },
        vec![(String::from("zz"), zz), (String::from("x"), x)],
    )
}

/// Nearest-neighbour XXX chain, `J·Σ (XX + YY + ZZ)`, grouped per bond.
pub fn build_heisenberg(n: usize, coupling: f64) -> Result<HamiltonianModel> {
    require_qubits(n, 2)?;
    let mut terms = Vec::with_capacity(3 * (n - 1));
    for i in 0..n - 1 {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            terms.push(PauliTerm::real(coupling, [(i, p), (i + 1, p)]));
        }
    }
    HamiltonianModel::new(n, Geometry::Chain { len: n }, terms)
}

/// `(1/√n)·Σ_{i<j} Z_iZ_j + h·Σ X_i`, tagged as the two partitions `zz` and `x`.
pub fn build_all_to_all_ising(n: usize, field: f64) -> Result<HamiltonianModel> {
    require_qubits(n, 2)?;
    let scale = 1.0 / (n as f64).sqrt();
    let mut zz = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            zz.push(PauliTerm::real(scale, [(i, Pauli::Z), (j, Pauli::Z)]));
        }
    }
    let x = (0..n).map(|i| PauliTerm::real(field, [(i, Pauli::X)])).collect();
    HamiltonianModel::with_blocks(
        n,
        Geometry::AllToAll,
        vec![(String::from("zz"), zz), (String::from("x"), x)],
    )
}

/// Random 4-local `Σ_{i<j<k<l} J_ijkl X_iX_jX_kX_l`.
///
/// Couplings are i.i.d. Gaussian with mean 0 and variance `J²/n³`, drawn
/// from ChaCha8 seeded with `seed` in lexicographic `(i, j, k, l)` order, so
/// a seed fixes the model on every platform.
pub fn build_syk4(n: usize, scale: f64, seed: u64) -> Result<HamiltonianModel> {
    require_qubits(n, 4)?;
    let sigma = scale.abs() / (n as f64).powf(1.5);
    let normal = Normal::new(0.0, sigma).map_err(|_| Error::InvalidParameter("SYK coupling scale".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let c = normal.sample(&mut rng);
                    terms.push(PauliTerm::real(
                        c,
                        [(i, Pauli::X), (j, Pauli::X), (k, Pauli::X), (l, Pauli::X)],
                    ));
                }
            }
        }
    }
    HamiltonianModel::new(n, Geometry::AllToAll, terms)
}

/// `(L, J, d)` for a model. `L` counts only nonzero terms.
pub fn interaction_metadata(model: &HamiltonianModel) -> InteractionMetadata {
    let term_count = model.terms.iter().filter(|t| t.coeff.norm() > 0.0).count();
    let max_norm = model.terms.iter().map(PauliTerm::norm).fold(0.0, f64::max);
    let max_degree = model.interaction_graph().iter().map(Vec::len).max().unwrap_or(0);
    InteractionMetadata {
        term_count,
        max_norm,
        max_degree,
    }
}

/// Hop distances from a set of source qubits over the interaction graph.
/// Unreachable qubits get `usize::MAX`.
pub fn graph_distances(adj: &[Vec<usize>], sources: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Result of a light-cone count around one term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightConeCount {
    pub radius: f64,
    pub count: usize,
    /// `d·(d·ℓ)^D`
    pub cap: f64,
}

impl LightConeCount {
    pub fn within_cap(&self) -> bool {
        (self.count as f64) <= self.cap
    }
}

/// Counts terms whose support lies within graph distance `ℓ(τ) = v_LR·τ + ξ·ln L`
/// of `supp(H_j)` (min over vertex pairs), alongside the volume cap.
pub fn light_cone_neighbor_count(
    model: &HamiltonianModel,
    term: usize,
    tau: f64,
    lr_velocity: f64,
    xi: f64,
) -> Result<LightConeCount> {
    let dim = match model.geometry.lattice_dimension() {
        Some(d) => d,
        None => return Err(Error::NoLightCone(model.geometry.name())),
    };
    if tau <= 0.0 {
        return Err(Error::InvalidParameter("light-cone step must be positive".into()));
    }
    let radius = light_cone_radius(tau, lr_velocity, xi, model.len());
    count_within_radius(model, term, radius, dim)
}

/// Light-cone count for an explicit radius.
pub fn count_within_radius(model: &HamiltonianModel, term: usize, radius: f64, dim: usize) -> Result<LightConeCount> {
    let source = model.term(term)?;
    let adj = model.interaction_graph();
    let dist = graph_distances(&adj, source.support());
    let count = model
        .terms
        .iter()
        .filter(|t| {
            t.support()
                .map(|q| dist[q])
                .min()
                .map_or(false, |d| d != usize::MAX && (d as f64) <= radius)
        })
        .count();
    let d = interaction_metadata(model).max_degree as f64;
    let cap = d * Float::powi(d * radius, dim as i32);
    Ok(LightConeCount { radius, count, cap })
}
