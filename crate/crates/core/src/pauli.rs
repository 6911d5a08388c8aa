//! Weighted Pauli strings and their algebra.
//!
//! A [`PauliTerm`] stores only the qubits it acts on non-trivially, so
//! products and commutators of k-local terms cost O(k).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Single-qubit Pauli letter. Identity is implied by absence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    /// Product `self · other` as a phase and a remaining letter (`None` = identity).
    pub fn mul(self, other: Pauli) -> (Complex64, Option<Pauli>) {
        use Pauli::*;
        match (self, other) {
            (X, X) | (Y, Y) | (Z, Z) => (ONE, None),
            (X, Y) => (I, Some(Z)),
            (Y, Z) => (I, Some(X)),
            (Z, X) => (I, Some(Y)),
            (Y, X) => (-I, Some(Z)),
            (Z, Y) => (-I, Some(X)),
            (X, Z) => (-I, Some(Y)),
        }
    }

    /// 2×2 matrix in the computational basis, row-major.
    pub fn matrix(self) -> [[Complex64; 2]; 2] {
        match self {
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, -I], [I, ZERO]],
            Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Pauli> {
        match c {
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A complex coefficient times a tensor product of Pauli letters.
///
/// For a Hermitian Hamiltonian term the coefficient is real and its
/// magnitude is the spectral norm of the term.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coeff: Complex64,
    pub paulis: BTreeMap<usize, Pauli>,
}

impl PauliTerm {
    pub fn new<I>(coeff: Complex64, letters: I) -> Self
    where
        I: IntoIterator<Item = (usize, Pauli)>,
    {
        let mut term = PauliTerm::identity(ONE);
        for (q, p) in letters {
            term = term.product(&PauliTerm::single(q, p));
        }
        term.coeff *= coeff;
        term
    }

    /// Real-coefficient term. Repeated qubits are multiplied together.
    pub fn real<I>(coeff: f64, letters: I) -> Self
    where
        I: IntoIterator<Item = (usize, Pauli)>,
    {
        PauliTerm::new(Complex64::new(coeff, 0.0), letters)
    }

    pub fn identity(coeff: Complex64) -> Self {
        PauliTerm {
            coeff,
            paulis: BTreeMap::new(),
        }
    }

    pub fn single(qubit: usize, pauli: Pauli) -> Self {
        let mut paulis = BTreeMap::new();
        paulis.insert(qubit, pauli);
        PauliTerm { coeff: ONE, paulis }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.paulis.keys().copied()
    }

    pub fn weight(&self) -> usize {
        self.paulis.len()
    }

    pub fn is_identity(&self) -> bool {
        self.paulis.is_empty()
    }

    /// Spectral norm: Pauli strings are unitary, so this is `|coeff|`.
    pub fn norm(&self) -> f64 {
        self.coeff.norm()
    }

    pub fn max_qubit(&self) -> Option<usize> {
        self.paulis.keys().next_back().copied()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        PauliTerm {
            coeff: self.coeff * factor,
            paulis: self.paulis.clone(),
        }
    }

    /// Whether the Pauli strings (ignoring coefficients) commute.
    pub fn commutes_with(&self, other: &PauliTerm) -> bool {
        let anti = self
            .paulis
            .iter()
            .filter(|(q, p)| matches!(other.paulis.get(q), Some(o) if o != *p))
            .count();
        anti % 2 == 0
    }

    pub fn same_string(&self, other: &PauliTerm) -> bool {
        self.paulis == other.paulis
    }

    /// Operator product `self · other`, with the accumulated phase folded
    /// into the coefficient.
    pub fn product(&self, other: &PauliTerm) -> PauliTerm {
        let mut coeff = self.coeff * other.coeff;
        let mut paulis = self.paulis.clone();
        for (&q, &p) in &other.paulis {
            match paulis.get(&q).copied() {
                None => {
                    paulis.insert(q, p);
                }
                Some(mine) => {
                    let (phase, rest) = mine.mul(p);
                    coeff *= phase;
                    match rest {
                        Some(r) => {
                            paulis.insert(q, r);
                        }
                        None => {
                            paulis.remove(&q);
                        }
                    }
                }
            }
        }
        PauliTerm { coeff, paulis }
    }

    /// Bit masks used by the statevector kernels: X-part, Z-part and the
    /// number of Y letters (each Y = i·X·Z).
    pub fn masks(&self) -> (u64, u64, u32) {
        let mut x = 0u64;
        let mut z = 0u64;
        let mut ny = 0u32;
        for (&q, &p) in &self.paulis {
            let bit = 1u64 << q;
            match p {
                Pauli::X => x |= bit,
                Pauli::Z => z |= bit,
                Pauli::Y => {
                    x |= bit;
                    z |= bit;
                    ny += 1;
                }
            }
        }
        (x, z, ny)
    }

    /// Compact label such as `Z0 Z1` (identity prints as `I`).
    pub fn label(&self) -> alloc::string::String {
        use core::fmt::Write;
        let mut s = alloc::string::String::new();
        for (i, (q, p)) in self.paulis.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{}{}", p.symbol(), q);
        }
        if s.is_empty() {
            s.push('I');
        }
        s
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)·{}", self.coeff.re, self.coeff.im, self.label())
    }
}

/// `a · b` as a single Pauli term.
pub fn pauli_product(a: &PauliTerm, b: &PauliTerm) -> PauliTerm {
    a.product(b)
}

/// Pauli-basis expansion of a commutator `[A, B]`.
///
/// Empty exactly when the inputs commute. For Hermitian inputs every
/// coefficient is purely imaginary.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CommutatorExpansion {
    pub terms: Vec<PauliTerm>,
}

impl CommutatorExpansion {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// `[Σ a_i, Σ b_j]` with like Pauli strings merged and cancelled terms dropped.
    pub fn between(a: &[PauliTerm], b: &[PauliTerm]) -> Self {
        let mut merged: BTreeMap<Vec<(usize, Pauli)>, Complex64> = BTreeMap::new();
        for x in a {
            for y in b {
                for t in term_commutator(x, y).terms {
                    let key: Vec<(usize, Pauli)> = t.paulis.iter().map(|(q, p)| (*q, *p)).collect();
                    *merged.entry(key).or_insert(ZERO) += t.coeff;
                }
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() > 1e-14)
            .map(|(k, c)| PauliTerm {
                coeff: c,
                paulis: k.into_iter().collect(),
            })
            .collect();
        CommutatorExpansion { terms }
    }

    /// Sum of coefficient magnitudes, an upper bound on the operator norm.
    pub fn norm_upper_bound(&self) -> f64 {
        self.terms.iter().map(PauliTerm::norm).sum()
    }
}

/// `[a, b] = ab − ba`. Anticommuting strings give `2ab`, commuting ones give zero.
pub fn term_commutator(a: &PauliTerm, b: &PauliTerm) -> CommutatorExpansion {
    if a.commutes_with(b) || a.coeff == ZERO || b.coeff == ZERO {
        return CommutatorExpansion::default();
    }
    let prod = a.product(b);
    CommutatorExpansion {
        terms: alloc::vec![prod.scaled(Complex64::new(2.0, 0.0))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn x_squared_is_identity() {
        let x = PauliTerm::single(0, Pauli::X);
        let p = pauli_product(&x, &x);
        assert!(p.is_identity());
        assert_eq!(p.coeff, c(1.0, 0.0));
    }

    #[test]
    fn zx_is_i_y() {
        let p = pauli_product(&PauliTerm::single(0, Pauli::Z), &PauliTerm::single(0, Pauli::X));
        assert_eq!(p.paulis.get(&0), Some(&Pauli::Y));
        assert_eq!(p.coeff, c(0.0, 1.0));
    }

    #[test]
    fn disjoint_product_concatenates() {
        let p = pauli_product(&PauliTerm::single(0, Pauli::Z), &PauliTerm::single(1, Pauli::X));
        assert_eq!(p.label(), "Z0 X1");
        assert_eq!(p.coeff, c(1.0, 0.0));
    }

    #[test]
    fn zz_x_commutator() {
        let zz = PauliTerm::real(1.0, [(0, Pauli::Z), (1, Pauli::Z)]);
        let x = PauliTerm::single(0, Pauli::X);
        let e = term_commutator(&zz, &x);
        assert_eq!(e.len(), 1);
        assert_eq!(e.terms[0].label(), "Y0 Z1");
        assert_eq!(e.terms[0].coeff, c(0.0, 2.0));
        assert_eq!(e.terms[0].norm(), 2.0);
    }

    #[test]
    fn disjoint_z_commute() {
        let e = term_commutator(&PauliTerm::single(0, Pauli::Z), &PauliTerm::single(1, Pauli::Z));
        assert!(e.is_empty());
    }

    #[test]
    fn repeated_letters_in_constructor_multiply() {
        let t = PauliTerm::real(2.0, [(0, Pauli::Z), (0, Pauli::X)]);
        assert_eq!(t.label(), "Y0");
        assert_eq!(t.coeff, c(0.0, 2.0));
    }

    #[test]
    fn masks_encode_letters() {
        let t = PauliTerm::real(1.0, [(0, Pauli::X), (1, Pauli::Y), (3, Pauli::Z)]);
        assert_eq!(t.masks(), (0b0011, 0b1010, 1));
    }
}
