//! Open-boundary matrix product states with SVD truncation.
//!
//! Site tensors are stored as `(left, 2, right)` row-major blocks. The state
//! tracks a single orthogonality center: sites left of it are
//! left-orthonormal and sites right of it right-orthonormal.

use alloc::vec;
use alloc::vec::Vec;

use faer::Mat;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::dense::{check_dense_limit, entanglement_entropy, DenseState, ProductPattern};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default relative cutoff on squared singular values.
pub const DEFAULT_CUTOFF: f64 = 1e-12;

/// Allowed deviation of `G†G` from the identity.
pub const UNITARITY_TOL: f64 = 1e-10;

/// One site tensor `A[l, s, r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteTensor {
    left: usize,
    right: usize,
    data: Vec<Complex64>,
}

impl SiteTensor {
    pub fn new(left: usize, right: usize, data: Vec<Complex64>) -> Result<Self> {
        if left == 0 || right == 0 || data.len() != left * 2 * right {
            return Err(Error::SizeMismatch {
                left: data.len(),
                right: left * 2 * right,
            });
        }
        Ok(SiteTensor { left, right, data })
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    /// Row-major `(left, 2, right)` data.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    fn at(&self, l: usize, s: usize, r: usize) -> Complex64 {
        self.data[(l * 2 + s) * self.right + r]
    }

    /// `(left·2) × right` matrix view.
    fn as_left_matrix(&self) -> Mat<Complex64> {
        let cols = self.right;
        Mat::from_fn(self.left * 2, cols, |i, j| self.data[i * cols + j])
    }

    /// `left × (2·right)` matrix view.
    fn as_right_matrix(&self) -> Mat<Complex64> {
        let cols = 2 * self.right;
        Mat::from_fn(self.left, cols, |i, j| self.data[i * cols + j])
    }

    fn from_matrix(left: usize, right: usize, m: &Mat<Complex64>) -> Self {
        let (rows, cols) = (m.nrows(), m.ncols());
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(m[(i, j)]);
            }
        }
        SiteTensor { left, right, data }
    }
}

/// Truncated matrix product state.
#[derive(Debug, Clone, PartialEq)]
pub struct MpsState {
    n: usize,
    tensors: Vec<SiteTensor>,
    chi_max: usize,
    cutoff: f64,
    cum_discarded: f64,
    center: usize,
}

fn check_chi(chi_max: usize) -> Result<()> {
    if chi_max == 0 {
        Err(Error::InvalidParameter("chi_max must be at least 1".into()))
    } else {
        Ok(())
    }
}


/// Largest `|G†G − I|` entry.
pub fn unitarity_defect(gate: &[[Complex64; 4]; 4]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let mut s = ZERO;
            for k in 0..4 {
                s += gate[k][i].conj() * gate[k][j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}

/// Thin SVD `m = U·diag(s)·Vt` with `s` descending.
fn sorted_svd(m: &Mat<Complex64>) -> (Mat<Complex64>, Vec<f64>, Mat<Complex64>) {
    let t = m.thin_svd().expect("SVD of a finite matrix");
    let s = t.S().column_vector().iter().map(|z| z.re).collect();
    (t.U().to_owned(), s, t.V().adjoint().to_owned())
}

impl MpsState {
    pub fn from_product(n: usize, pattern: &ProductPattern, chi_max: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewQubits { min: 2, got: n });
        }
        check_chi(chi_max)?;
        pattern.check_len(n)?;
        let tensors = (0..n)
            .map(|k| {
                let a = pattern.local_amplitudes(k);
                SiteTensor {
                    left: 1,
                    right: 1,
                    data: vec![a[0], a[1]],
                }
            })
            .collect();
        Ok(MpsState {
            n,
            tensors,
            chi_max,
            cutoff: DEFAULT_CUTOFF,
            cum_discarded: 0.0,
            center: 0,
        })
    }

    /// Rebuilds a state from stored tensors, then brings it to canonical form
    /// with unit norm (center at site 0).
    pub fn from_tensors(tensors: Vec<SiteTensor>, chi_max: usize, cutoff: f64, cum_discarded: f64) -> Result<Self> {
        let n = tensors.len();
        if n < 2 {
            return Err(Error::TooFewQubits { min: 2, got: n });
        }
        check_chi(chi_max)?;
        if tensors[0].left != 1 || tensors[n - 1].right != 1 {
            return Err(Error::InvalidParameter("boundary bonds must have dimension 1".into()));
        }
        for w in tensors.windows(2) {
            if w[0].right != w[1].left {
                return Err(Error::SizeMismatch {
                    left: w[0].right,
                    right: w[1].left,
                });
            }
        }
        let mut mps = MpsState {
            n,
            tensors,
            chi_max,
            cutoff,
            cum_discarded,
            center: n - 1,
        };
        // left sweep leaves every site but the last left-orthonormal
        for site in 0..n - 1 {
            mps.shift_right(site);
        }
        mps.move_center(0);
        mps.normalize_center()?;
        Ok(mps)
    }

    pub fn with_cutoff(mut self, cutoff: f64) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chi_max(&self) -> usize {
        self.chi_max
    }

    pub fn set_chi_max(&mut self, chi_max: usize) -> Result<()> {
        check_chi(chi_max)?;
        self.chi_max = chi_max;
        Ok(())
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Sum of squared singular values dropped by every truncation so far.
    pub fn cum_discarded(&self) -> f64 {
        self.cum_discarded
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn tensors(&self) -> &[SiteTensor] {
        &self.tensors
    }

    /// Dimension of every internal bond, left to right.
    pub fn bond_dims(&self) -> Vec<usize> {
        self.tensors[..self.n - 1].iter().map(|t| t.right).collect()
    }

    pub fn max_bond_dim(&self) -> usize {
        self.bond_dims().into_iter().max().unwrap_or(1)
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n {
            Err(Error::SiteOutOfRange { site, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_bond(&self, bond: usize) -> Result<()> {
        if bond + 1 >= self.n {
            Err(Error::BondOutOfRange { bond, n: self.n })
        } else {
            Ok(())
        }
    }

    /// QR step moving the center from `site` to `site + 1`.
    fn shift_right(&mut self, site: usize) {
        let t = &self.tensors[site];
        let l = t.left;
        let qr = t.as_left_matrix().qr();
        let q = qr.compute_thin_Q();
        let rm = qr.thin_R().to_owned();
        let k = q.ncols();
        self.tensors[site] = SiteTensor::from_matrix(l, k, &q);
        let next = &self.tensors[site + 1];
        let nr = next.right;
        let m = rm * next.as_right_matrix();
        self.tensors[site + 1] = SiteTensor::from_matrix(k, nr, &m);
        self.center = site + 1;
    }

    /// LQ step moving the center from `site` to `site − 1`.
    fn shift_left(&mut self, site: usize) {
        let t = &self.tensors[site];
        let r = t.right;
        let qr = t.as_right_matrix().adjoint().qr();
        let q = qr.compute_thin_Q().adjoint().to_owned();
        let rm = qr.thin_R().adjoint().to_owned();
        let k = q.nrows();
        self.tensors[site] = SiteTensor::from_matrix(k, r, &q);
        let prev = &self.tensors[site - 1];
        let pl = prev.left;
        let m = prev.as_left_matrix() * rm;
        self.tensors[site - 1] = SiteTensor::from_matrix(pl, k, &m);
        self.center = site - 1;
    }

    fn move_center(&mut self, site: usize) {
        while self.center < site {
            self.shift_right(self.center);
        }
        while self.center > site {
            self.shift_left(self.center);
        }
    }

    fn normalize_center(&mut self) -> Result<()> {
        let t = &mut self.tensors[self.center];
        let nrm = t.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 || !nrm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        t.data.iter_mut().for_each(|z| *z /= nrm);
        Ok(())
    }

    /// Mixed-canonical copy with the orthogonality center on `site`, unit norm.
    pub fn canonicalize(&self, site: usize) -> Result<MpsState> {
        let mut out = self.clone();
        out.canonicalize_mut(site)?;
        Ok(out)
    }

    pub fn canonicalize_mut(&mut self, site: usize) -> Result<()> {
        self.check_site(site)?;
        self.move_center(site);
        self.normalize_center()
    }

    /// Applies a 2×2 gate to one site. Does not move the center or truncate.
    pub fn apply_single_site_gate_mut(&mut self, site: usize, gate: &[[Complex64; 2]; 2]) -> Result<()> {
        self.check_site(site)?;
        let t = &mut self.tensors[site];
        let r = t.right;
        for l in 0..t.left {
            for b in 0..r {
                let i0 = (l * 2) * r + b;
                let i1 = (l * 2 + 1) * r + b;
                let (a0, a1) = (t.data[i0], t.data[i1]);
                t.data[i0] = gate[0][0] * a0 + gate[0][1] * a1;
                t.data[i1] = gate[1][0] * a0 + gate[1][1] * a1;
            }
        }
        Ok(())
    }

    /// Pure form of [`apply_two_site_gate_mut`](Self::apply_two_site_gate_mut).
    pub fn apply_two_site_gate(&self, site: usize, gate: &[[Complex64; 4]; 4]) -> Result<(MpsState, f64)> {
        let mut out = self.clone();
        let w = out.apply_two_site_gate_mut(site, gate)?;
        Ok((out, w))
    }

    /// Applies a 4×4 unitary on sites `(site, site + 1)`; the local basis
    /// index is `2·s_site + s_{site+1}`. Returns the discarded weight of the
    /// truncation and leaves the center on `site + 1`.
    pub fn apply_two_site_gate_mut(&mut self, site: usize, gate: &[[Complex64; 4]; 4]) -> Result<f64> {
        self.check_bond(site)?;
        let defect = unitarity_defect(gate);
        if defect > UNITARITY_TOL {
            return Err(Error::NonUnitaryGate(defect));
        }
        self.move_center(site);
        let a = &self.tensors[site];
        let b = &self.tensors[site + 1];
        let (l, m, r) = (a.left, a.right, b.right);
        // θ[a, s1, s2, c]
        let mut theta = vec![ZERO; l * 4 * r];
        for x in 0..l {
            for s1 in 0..2 {
                for k in 0..m {
                    let av = a.at(x, s1, k);
                    if av == ZERO {
                        continue;
                    }
                    for s2 in 0..2 {
                        for c in 0..r {
                            theta[((x * 2 + s1) * 2 + s2) * r + c] += av * b.at(k, s2, c);
                        }
                    }
                }
            }
        }
        let mut mat = Mat::<Complex64>::zeros(l * 2, 2 * r);
        for x in 0..l {
            for out in 0..4 {
                for c in 0..r {
                    let mut acc = ZERO;
                    for inp in 0..4 {
                        acc += gate[out][inp] * theta[(x * 4 + inp) * r + c];
                    }
                    mat[(x * 2 + out / 2, (out % 2) * r + c)] = acc;
                }
            }
        }
        let (u, s, vt) = sorted_svd(&mat);
        let total: f64 = s.iter().map(|v| v * v).sum();
        if total == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let weights: Vec<f64> = s.iter().map(|v| v * v / total).collect();
        let above = weights.iter().filter(|&&w| w >= self.cutoff).count();
        let keep = above.min(self.chi_max).max(1);
        let discarded: f64 = weights[keep..].iter().sum();
        let kept_norm = weights[..keep].iter().sum::<f64>().sqrt() * total.sqrt();
        let left = Mat::from_fn(l * 2, keep, |i, k| u[(i, k)]);
        let right = Mat::from_fn(keep, 2 * r, |k, j| vt[(k, j)] * (s[k] / kept_norm));
        self.tensors[site] = SiteTensor::from_matrix(l, keep, &left);
        self.tensors[site + 1] = SiteTensor::from_matrix(keep, r, &right);
        self.center = site + 1;
        self.cum_discarded += discarded;
        debug_assert!({
            let kept: f64 = weights[..keep].iter().sum();
            let w: Vec<f64> = weights[..keep].iter().map(|x| x / kept).collect();
            entanglement_entropy(&w) <= (keep as f64).log2() + 1e-9
        });
        Ok(discarded)
    }

    /// Normalised Schmidt weights at every internal bond.
    pub fn bond_spectra(&self) -> Vec<Vec<f64>> {
        let mut work = self.clone();
        work.move_center(0);
        let mut out = Vec::with_capacity(self.n - 1);
        for bond in 0..self.n - 1 {
            let t = &work.tensors[bond];
            let l = t.left;
            let (u, s, vt) = sorted_svd(&t.as_left_matrix());
            let total: f64 = s.iter().map(|v| v * v).sum();
            out.push(s.iter().map(|v| v * v / total).collect());
            let k = s.len();
            work.tensors[bond] = SiteTensor::from_matrix(l, k, &u);
            let sv = Mat::from_fn(k, vt.ncols(), |i, j| vt[(i, j)] * s[i]);
            let next = &work.tensors[bond + 1];
            let nr = next.right;
            let m = sv * next.as_right_matrix();
            work.tensors[bond + 1] = SiteTensor::from_matrix(k, nr, &m);
            work.center = bond + 1;
        }
        out
    }

    /// Normalised Schmidt weights across bond `bond` (between sites `bond` and `bond + 1`).
    pub fn bond_spectrum(&self, bond: usize) -> Result<Vec<f64>> {
        self.check_bond(bond)?;
        let mut work = self.clone();
        work.move_center(bond);
        let (_, s, _) = sorted_svd(&work.tensors[bond].as_left_matrix());
        let total: f64 = s.iter().map(|v| v * v).sum();
        Ok(s.iter().map(|v| v * v / total).collect())
    }

    /// Entanglement entropy in bits across `bond`; never above `log₂` of its dimension.
    pub fn entropy_at_bond(&self, bond: usize) -> Result<f64> {
        let spec = self.bond_spectrum(bond)?;
        let s = entanglement_entropy(&spec);
        debug_assert!(s <= (self.tensors[bond].right as f64).log2() + 1e-9);
        Ok(s)
    }

    /// Entropy at every bond.
    pub fn bond_entropies(&self) -> Vec<f64> {
        self.bond_spectra().iter().map(|l| entanglement_entropy(l)).collect()
    }

    pub fn max_bond_entropy(&self) -> f64 {
        self.bond_entropies().into_iter().fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.overlap(self).map(|z| z.re.max(0.0).sqrt()).unwrap_or(0.0)
    }

    /// `⟨self|other⟩` by transfer-matrix contraction.
    pub fn overlap(&self, other: &MpsState) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut env = vec![Complex64::new(1.0, 0.0)];
        let (mut la, mut lb) = (1usize, 1usize);
        for (a, b) in self.tensors.iter().zip(&other.tensors) {
            let (ra, rb) = (a.right, b.right);
            // tmp[α, s, β'] = Σ_β env[α, β] B[β, s, β']
            let mut tmp = vec![ZERO; la * 2 * rb];
            for x in 0..la {
                for y in 0..lb {
                    let e = env[x * lb + y];
                    if e == ZERO {
                        continue;
                    }
                    for s in 0..2 {
                        for c in 0..rb {
                            tmp[(x * 2 + s) * rb + c] += e * b.at(y, s, c);
                        }
                    }
                }
            }
            let mut next = vec![ZERO; ra * rb];
            for x in 0..la {
                for s in 0..2 {
                    for xa in 0..ra {
                        let av = a.at(x, s, xa).conj();
                        for c in 0..rb {
                            next[xa * rb + c] += av * tmp[(x * 2 + s) * rb + c];
                        }
                    }
                }
            }
            env = next;
            la = ra;
            lb = rb;
        }
        Ok(env[0])
    }

    /// Full amplitude vector (qubit `k` = site `k` = bit `k`).
    pub fn to_dense(&self) -> Result<DenseState> {
        check_dense_limit(self.n)?;
        // v[idx, bond]
        let mut v = vec![Complex64::new(1.0, 0.0)];
        let mut dim = 1usize;
        let mut bond = 1usize;
        for (k, t) in self.tensors.iter().enumerate() {
            let r = t.right;
            let mut next = vec![ZERO; dim * 2 * r];
            for idx in 0..dim {
                for m in 0..bond {
                    let x = v[idx * bond + m];
                    if x == ZERO {
                        continue;
                    }
                    for s in 0..2 {
                        let out = idx | s << k;
                        for c in 0..r {
                            next[out * r + c] += x * t.at(m, s, c);
                        }
                    }
                }
            }
            v = next;
            dim *= 2;
            bond = r;
        }
        DenseState::from_amplitudes(self.n, v)
    }
}

/// Frobenius norm of a tensor, used by tests and checkpoints.
pub fn tensor_norm(t: &SiteTensor) -> f64 {
    t.as_left_matrix().norm_l2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{schmidt_spectrum, state_distance};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn identity4() -> [[Complex64; 4]; 4] {
        let mut g = [[ZERO; 4]; 4];
        (0..4).for_each(|i| g[i][i] = c(1.0));
        g
    }

    fn cz() -> [[Complex64; 4]; 4] {
        let mut g = identity4();
        g[3][3] = c(-1.0);
        g
    }

    fn hadamard() -> [[Complex64; 2]; 2] {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        [[c(h), c(h)], [c(h), c(-h)]]
    }

    /// A generic dense unitary from a Hermitian generator.
    fn random_gate(seed: u64) -> [[Complex64; 4]; 4] {
        use rand_chacha::rand_core::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = Mat::<Complex64>::from_fn(4, 4, |_, _| {
            Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng))
        });
        let q = m.qr().compute_thin_Q();
        let mut g = [[ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] = q[(i, j)];
            }
        }
        g
    }

    #[test]
    fn svd_reconstructs_graded_matrices() {
        use rand_chacha::rand_core::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (rows, cols) in [(4, 16), (16, 4), (8, 8), (2, 32)] {
            for _ in 0..20 {
                let mut g = |_, _| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng));
                let a = Mat::<Complex64>::from_fn(rows, rows, &mut g).qr().compute_thin_Q();
                let b = Mat::<Complex64>::from_fn(cols, cols, &mut g).qr().compute_thin_Q();
                let k = rows.min(cols);
                let d = Mat::from_fn(rows, cols, |i, j| if i == j && i < k { c(10f64.powi(-3 * i as i32)) } else { ZERO });
                let m = a * d * b;
                let (u, s, vt) = sorted_svd(&m);
                let sd = Mat::from_fn(s.len(), s.len(), |i, j| if i == j { c(s[i]) } else { ZERO });
                assert!((u * sd * vt - &m).norm_l2() < 1e-12);
                assert!(s.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn svd_of_nearly_antidiagonal_matrix() {
        let z = |re, im| Complex64::new(re, im);
        let m = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => z(1.56e-16, -5.9e-17),
            (0, 1) => z(0.654, -0.745),
            (1, 0) => z(0.098, 0.086),
            _ => z(1.2e-33, 4.6e-33),
        });
        let (u, s, vt) = sorted_svd(&m);
        let sd = Mat::from_fn(2, 2, |i, j| if i == j { c(s[i]) } else { ZERO });
        assert!((u * sd * vt - &m).norm_l2() < 1e-14);
    }

    #[test]
    fn plus_product_tensors() {
        let m = MpsState::from_product(4, &ProductPattern::Plus, 4).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        for t in m.tensors() {
            assert_eq!((t.left(), t.right()), (1, 1));
            assert!((t.data()[0].re - h).abs() < 1e-15 && (t.data()[1].re - h).abs() < 1e-15);
        }
        assert!(m.bond_entropies().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn product_round_trip() {
        let p = ProductPattern::from_bitstring("101").unwrap();
        let m = MpsState::from_product(3, &p, 2).unwrap();
        let d = DenseState::from_product(3, &p).unwrap();
        assert!(state_distance(&m.to_dense().unwrap(), &d).unwrap() < 1e-15);
        let z = MpsState::from_product(3, &ProductPattern::Zeros, 2).unwrap();
        assert!(state_distance(&z.to_dense().unwrap(), &DenseState::from_product(3, &ProductPattern::Zeros).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn identity_gate_discards_nothing() {
        let mut m = MpsState::from_product(3, &ProductPattern::Plus, 4).unwrap();
        let w = m.apply_two_site_gate_mut(1, &identity4()).unwrap();
        assert!(w < 1e-30);
        assert_eq!(m.bond_dims(), vec![1, 1]);
    }

    #[test]
    fn cz_entangles_plus_pair() {
        let m = MpsState::from_product(2, &ProductPattern::Plus, 2).unwrap();
        let (m, w) = m.apply_two_site_gate(0, &cz()).unwrap();
        assert_eq!(w, 0.0);
        assert_eq!(m.bond_dims(), vec![2]);
        assert!((m.entropy_at_bond(0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_one_truncates_to_product() {
        let m = MpsState::from_product(2, &ProductPattern::Plus, 1).unwrap();
        let (m, w) = m.apply_two_site_gate(0, &cz()).unwrap();
        assert!((w - 0.5).abs() < 1e-12);
        assert_eq!(m.bond_dims(), vec![1]);
        assert!((m.norm() - 1.0).abs() < 1e-12);
        assert_eq!(m.entropy_at_bond(0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut m = MpsState::from_product(3, &ProductPattern::Zeros, 4).unwrap();
        let mut g = identity4();
        g[0][0] = c(2.0);
        assert!(matches!(m.apply_two_site_gate_mut(0, &g), Err(Error::NonUnitaryGate(_))));
        assert!(matches!(m.apply_two_site_gate_mut(2, &identity4()), Err(Error::BondOutOfRange { .. })));
        assert!(matches!(m.entropy_at_bond(2), Err(Error::BondOutOfRange { .. })));
        assert!(MpsState::from_product(1, &ProductPattern::Zeros, 4).is_err());
        assert!(MpsState::from_product(3, &ProductPattern::Zeros, 0).is_err());
    }

    #[test]
    fn untruncated_matches_dense() {
        let n = 6;
        let mut m = MpsState::from_product(n, &ProductPattern::Zeros, 1 << (n / 2)).unwrap();
        let mut d = DenseState::from_product(n, &ProductPattern::Zeros).unwrap();
        for q in 0..n {
            m.apply_single_site_gate_mut(q, &hadamard()).unwrap();
            d.apply_single_qubit_gate_mut(q, &hadamard()).unwrap();
        }
        for (k, site) in [0, 2, 4, 1, 3, 0, 2, 4, 1, 3].iter().enumerate() {
            let g = random_gate(k as u64);
            m.apply_two_site_gate_mut(*site, &g).unwrap();
            d.apply_two_qubit_gate_mut(*site, site + 1, &g).unwrap();
        }
        assert!(state_distance(&m.to_dense().unwrap(), &d).unwrap() < 1e-10);
        assert!(m.cum_discarded() < 1e-10);
        let ov = m.overlap(&m).unwrap();
        assert!((ov.re - 1.0).abs() < 1e-10);
        // bond spectra agree with dense Schmidt data
        for (bond, spec) in m.bond_spectra().iter().enumerate() {
            let region: Vec<usize> = (0..=bond).collect();
            let exact = schmidt_spectrum(&d, &region).unwrap();
            for (a, b) in spec.iter().zip(&exact.lambdas) {
                assert!((a - b).abs() < 1e-10);
            }
            assert!(entanglement_entropy(spec) <= (m.bond_dims()[bond] as f64).log2() + 1e-9);
        }
    }

    #[test]
    fn canonicalize_is_gauge_idempotent() {
        let mut m = MpsState::from_product(5, &ProductPattern::Plus, 8).unwrap();
        for (k, s) in [0, 1, 2, 3, 1].iter().enumerate() {
            m.apply_two_site_gate_mut(*s, &random_gate(10 + k as u64)).unwrap();
        }
        let a = m.canonicalize(2).unwrap();
        let b = a.canonicalize(4).unwrap().canonicalize(2).unwrap();
        assert!((a.norm() - 1.0).abs() < 1e-12);
        for (x, y) in a.bond_spectra().iter().zip(b.bond_spectra()) {
            for (p, q) in x.iter().zip(&y) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn overlap_of_orthogonal_products() {
        let a = MpsState::from_product(3, &ProductPattern::from_bitstring("010").unwrap(), 2).unwrap();
        let b = MpsState::from_product(3, &ProductPattern::from_bitstring("011").unwrap(), 2).unwrap();
        assert_eq!(a.overlap(&b).unwrap(), ZERO);
        let d = MpsState::from_product(4, &ProductPattern::Zeros, 2).unwrap();
        assert!(a.overlap(&d).is_err());
    }

    #[test]
    fn from_tensors_restores_state() {
        let mut m = MpsState::from_product(4, &ProductPattern::Plus, 4).unwrap();
        m.apply_two_site_gate_mut(1, &random_gate(3)).unwrap();
        let r = MpsState::from_tensors(m.tensors().to_vec(), 4, m.cutoff(), m.cum_discarded()).unwrap();
        assert!((r.overlap(&m).unwrap().norm() - 1.0).abs() < 1e-12);
        assert!((tensor_norm(&r.tensors()[0]) - 1.0).abs() < 1e-12);
    }
}
