//! Exact Lie algebra weight systems.
//!
//! Generators use the normalization `tr(T_a T_b) = δ_ab / 2` and the bracket
//! convention `[T_a, T_b] = i f^{abc} T_c`. The orthonormal diagonal
//! generators of `su(N)` involve `1/sqrt(l(l+1)/2)`, so entries live in the
//! surd field of [`Scalar`] rather than in the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::BigRational;
use thiserror::Error;

use crate::chords::{four_term_relations, ChordDiagram, DiagramCombination};
use crate::poly::{int, rat};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("su(N) needs N >= 2, got {0}")]
    BadRank(usize),
    #[error("generator {index} is {rows}x{cols}, expected {dim}x{dim}")]
    Shape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("generator {0} is not traceless")]
    NotTraceless(usize),
    #[error("generator {0} is not Hermitian")]
    NotHermitian(usize),
    #[error("tr(T_{a} T_{b}) = {value}, expected {expected}")]
    Normalization { a: usize, b: usize, value: String, expected: String },
    #[error("commutator [T_{a}, T_{b}] is not i f^(abc) T_c")]
    Bracket { a: usize, b: usize },
    #[error("structure constants are not totally antisymmetric at ({0}, {1}, {2})")]
    NotAntisymmetric(usize, usize, usize),
}

/// Dense square matrix over [`Scalar`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Scalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Scalar::one(); n])
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Matrix with a single entry `value` at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize, value: Scalar) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, value);
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.n + j] = value;
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(Scalar::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Matrix { n: self.n, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// `Some(q)` when the matrix is `q` times the identity with `q` rational.
    pub fn as_rational_multiple_of_identity(&self) -> Option<BigRational> {
        let q = self.get(0, 0).as_rational()?;
        (*self == Matrix::identity(self.n).scale(&Scalar::from_rational(q.clone()))).then_some(q)
    }

    /// Nonzero entries of each row.
    fn sparse_rows(&self) -> Vec<Vec<(usize, Scalar)>> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| !self.get(i, j).is_zero()).map(|j| (j, self.get(i, j).clone())).collect())
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = row.iter().map(Scalar::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A representation of a Lie algebra by explicit generator matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraRep {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<Matrix>,
}

impl LieAlgebraRep {
    /// Wrap generators without checking the conventions; see [`Self::validate`].
    pub fn new(name: impl Into<String>, dim: usize, generators: Vec<Matrix>) -> Self {
        LieAlgebraRep { name: name.into(), dim, generators }
    }

    /// `count` zero matrices of size `dim`; every weight vanishes.
    pub fn zero(dim: usize, count: usize) -> Self {
        Self::new("zero", dim, vec![Matrix::zeros(dim); count])
    }

    pub fn algebra_dim(&self) -> usize {
        self.generators.len()
    }

    /// Check shape, tracelessness, Hermiticity and `tr(T_a T_b) = δ_ab / 2`.
    pub fn validate(&self) -> Result<(), LieError> {
        for (index, g) in self.generators.iter().enumerate() {
            if g.dim() != self.dim {
                return Err(LieError::Shape { index, rows: g.dim(), cols: g.dim(), dim: self.dim });
            }
            if !g.trace().is_zero() {
                return Err(LieError::NotTraceless(index));
            }
            if g.adjoint() != *g {
                return Err(LieError::NotHermitian(index));
            }
        }
        let half = Scalar::from_rational(rat(1, 2));
        for a in 0..self.algebra_dim() {
            for b in 0..self.algebra_dim() {
                let value = (&self.generators[a] * &self.generators[b]).trace();
                let expected = if a == b { half.clone() } else { Scalar::zero() };
                if value != expected {
                    return Err(LieError::Normalization {
                        a,
                        b,
                        value: value.to_string(),
                        expected: expected.to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The fundamental representation of `su(2)`: half the Pauli matrices.
pub fn su2_fundamental() -> LieAlgebraRep {
    let mut rep = sun_fundamental(2).expect("N = 2 is valid");
    rep.name = "su2".to_string();
    rep
}

/// The fundamental representation of `su(N)`: half the generalized
/// Gell-Mann matrices.
///
/// For each `k = 2..=N` the off-diagonal pairs `(j, k)` with `j < k` give a
/// symmetric and an antisymmetric generator, followed by the diagonal
/// generator `H_{k-1}`. For `N = 2` this is the Pauli order and for `N = 3`
/// the usual `λ_1 .. λ_8`.
pub fn sun_fundamental(n: usize) -> Result<LieAlgebraRep, LieError> {
    if n < 2 {
        return Err(LieError::BadRank(n));
    }
    let half = Scalar::from_rational(rat(1, 2));
    let half_i = Scalar::i().scale(&rat(1, 2));
    let mut gens = Vec::with_capacity(n * n - 1);
    for k in 1..n {
        for j in 0..k {
            gens.push(&Matrix::unit(n, j, k, half.clone()) + &Matrix::unit(n, k, j, half.clone()));
            gens.push(&Matrix::unit(n, j, k, -&half_i) + &Matrix::unit(n, k, j, half_i.clone()));
        }
        // H_l = sqrt(2 / (l (l + 1))) diag(1, .., 1, -l, 0, ..) with l = k
        let l = k as i64;
        let norm = Scalar::sqrt_rational(&rat(2, l * (l + 1))).scale(&rat(1, 2));
        let diag: Vec<Scalar> = (0..n)
            .map(|i| match i.cmp(&k) {
                std::cmp::Ordering::Less => norm.clone(),
                std::cmp::Ordering::Equal => norm.scale(&int(-l)),
                std::cmp::Ordering::Greater => Scalar::zero(),
            })
            .collect();
        gens.push(Matrix::diagonal(&diag));
    }
    Ok(LieAlgebraRep::new(format!("su{n}"), n, gens))
}

/// `f^{abc}`, stored densely. The entries are real but may be irrational
/// (for `su(3)`, `f^{458} = sqrt(3)/2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    m: usize,
    f: Vec<Scalar>,
}

impl StructureConstants {
    pub fn algebra_dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.f[(a * self.m + b) * self.m + c]
    }

    /// Nonzero entries with `a < b < c`.
    pub fn nonzero_ordered(&self) -> Vec<((usize, usize, usize), Scalar)> {
        let m = self.m;
        let mut out = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    let v = self.get(a, b, c);
                    if !v.is_zero() {
                        out.push(((a, b, c), v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_totally_antisymmetric(&self) -> Result<(), LieError> {
        let m = self.m;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let v = self.get(a, b, c);
                    let swaps = [self.get(b, a, c), self.get(a, c, b), self.get(c, b, a)];
                    if swaps.iter().any(|s| **s != -v) {
                        return Err(LieError::NotAntisymmetric(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// `[T_a, T_b] = i f^{abc} T_c` for every pair.
    pub fn reproduces_brackets(&self, rep: &LieAlgebraRep) -> Result<(), LieError> {
        for a in 0..self.m {
            for b in 0..self.m {
                let lhs = rep.generators[a].commutator(&rep.generators[b]);
                let rhs = (0..self.m).fold(Matrix::zeros(rep.dim), |acc, c| {
                    let k = self.get(a, b, c).mul_i();
                    if k.is_zero() {
                        acc
                    } else {
                        &acc + &rep.generators[c].scale(&k)
                    }
                });
                if lhs != rhs {
                    return Err(LieError::Bracket { a, b });
                }
            }
        }
        Ok(())
    }
}

/// `f^{abc} = -2i tr([T_a, T_b] T_c)`, after checking the rep's normalization.
pub fn structure_constants(rep: &LieAlgebraRep) -> Result<StructureConstants, LieError> {
    rep.validate()?;
    let m = rep.algebra_dim();
    let minus_two_i = Scalar::i().scale(&int(-2));
    let mut f = Vec::with_capacity(m * m * m);
    for a in 0..m {
        for b in 0..m {
            let comm = rep.generators[a].commutator(&rep.generators[b]);
            for c in 0..m {
                f.push(&(&comm * &rep.generators[c]).trace() * &minus_two_i);
            }
        }
    }
    let sc = StructureConstants { m, f };
    sc.is_totally_antisymmetric()?;
    Ok(sc)
}

/// `Σ_a T_a T_a`.
pub fn casimir_insertion(rep: &LieAlgebraRep) -> Matrix {
    rep.generators.iter().fold(Matrix::zeros(rep.dim), |acc, g| &acc + &(g * g))
}

/// Weight of a chord diagram: insert `T_a` at both ends of each chord, sum
/// over the labels and take the trace around the circle.
///
/// Evaluated as a sum over index paths through the sparse generators: a
/// path picks a matrix entry at every circle position, with the label of a
/// chord chosen at its first end and reused at its second.
pub fn weight(d: &ChordDiagram, rep: &LieAlgebraRep) -> Scalar {
    let word = d.label_sequence();
    if word.is_empty() {
        return Scalar::from_int(rep.dim as i64);
    }
    let sparse: Vec<Vec<Vec<(usize, Scalar)>>> = rep.generators.iter().map(Matrix::sparse_rows).collect();
    let mut walk = PathWalk { word: &word, sparse: &sparse, labels: vec![None; d.order()], total: Scalar::zero() };
    for start in 0..rep.dim {
        walk.step(0, start, start, Scalar::one());
    }
    walk.total
}

struct PathWalk<'a> {
    word: &'a [usize],
    sparse: &'a [Vec<Vec<(usize, Scalar)>>],
    labels: Vec<Option<usize>>,
    total: Scalar,
}

impl PathWalk<'_> {
    fn step(&mut self, pos: usize, start: usize, row: usize, coeff: Scalar) {
        if pos == self.word.len() {
            if row == start {
                self.total += &coeff;
            }
            return;
        }
        let chord = self.word[pos];
        match self.labels[chord] {
            Some(a) => self.follow(a, pos, start, row, &coeff),
            None => {
                for a in 0..self.sparse.len() {
                    self.labels[chord] = Some(a);
                    self.follow(a, pos, start, row, &coeff);
                }
                self.labels[chord] = None;
            }
        }
    }

    fn follow(&mut self, a: usize, pos: usize, start: usize, row: usize, coeff: &Scalar) {
        let sparse = self.sparse;
        for (col, entry) in &sparse[a][row] {
            self.step(pos + 1, start, *col, coeff * entry);
        }
    }
}

/// Outcome of evaluating every four-term relation of one order.
#[derive(Clone, Debug)]
pub struct FourTermReport {
    pub order: usize,
    pub relations: usize,
    pub violations: Vec<(DiagramCombination, Scalar)>,
}

impl FourTermReport {
    pub fn all_vanish(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluate a combination with `weight`, caching per-diagram values.
pub fn evaluate_combination(
    combo: &DiagramCombination,
    rep: &LieAlgebraRep,
    cache: &mut BTreeMap<ChordDiagram, Scalar>,
) -> Scalar {
    combo.terms().iter().fold(Scalar::zero(), |acc, (d, c)| {
        let w = cache.entry(d.clone()).or_insert_with(|| weight(d, rep));
        &acc + &w.scale(c)
    })
}

pub fn check_four_term(rep: &LieAlgebraRep, m: usize) -> FourTermReport {
    let relations = four_term_relations(m);
    let mut cache = BTreeMap::new();
    let violations = relations
        .iter()
        .filter_map(|r| {
            let v = evaluate_combination(r, rep, &mut cache);
            (!v.is_zero()).then(|| (r.clone(), v))
        })
        .collect();
    FourTermReport { order: m, relations: relations.len(), violations }
}

/// `(N^2 - 1) / (2N)`, the Casimir eigenvalue of the fundamental of `su(N)`.
pub fn fundamental_casimir(n: usize) -> BigRational {
    let n = n as i64;
    rat(n * n - 1, 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chords::enumerate_diagrams;

    #[test]
    fn pauli_conventions() {
        let su2 = su2_fundamental();
        su2.validate().unwrap();
        let t = &su2.generators;
        assert_eq!((&t[0] * &t[0]).trace(), Scalar::from_rational(rat(1, 2)));
        assert_eq!((&t[0] * &t[1]).trace(), Scalar::zero());
        let f = structure_constants(&su2).unwrap();
        assert_eq!(*f.get(0, 1, 2), Scalar::one());
        assert_eq!(*f.get(0, 0, 1), Scalar::zero());
        f.reproduces_brackets(&su2).unwrap();
    }

    #[test]
    fn su3_gell_mann_constants() {
        let su3 = sun_fundamental(3).unwrap();
        assert_eq!(su3.algebra_dim(), 8);
        let f = structure_constants(&su3).unwrap();
        assert_eq!(*f.get(0, 1, 2), Scalar::one());
        assert_eq!(*f.get(0, 3, 6), Scalar::from_rational(rat(1, 2)));
        assert_eq!(*f.get(3, 4, 7), Scalar::sqrt_rational(&rat(3, 4)));
        f.reproduces_brackets(&su3).unwrap();
    }

    #[test]
    fn known_weights() {
        let su2 = su2_fundamental();
        let one: ChordDiagram = "1: (0,1)".parse().unwrap();
        assert_eq!(weight(&one, &su2), Scalar::from_rational(rat(3, 2)));
        assert_eq!(weight(&ChordDiagram::nested2(), &su2), Scalar::from_rational(rat(9, 8)));
        assert_eq!(weight(&ChordDiagram::crossed2(), &su2), Scalar::from_rational(rat(-3, 8)));
        assert_eq!(weight(&one, &sun_fundamental(3).unwrap()), Scalar::from_int(4));
        assert_eq!(weight(&ChordDiagram::empty(), &su2), Scalar::from_int(2));
    }

    #[test]
    fn casimir_is_scalar() {
        for n in 2..=5 {
            let c = casimir_insertion(&sun_fundamental(n).unwrap());
            assert_eq!(c.as_rational_multiple_of_identity(), Some(fundamental_casimir(n)));
        }
    }

    #[test]
    fn zero_rep_has_zero_weights() {
        let z = LieAlgebraRep::zero(2, 3);
        for d in enumerate_diagrams(2) {
            assert!(weight(&d, &z).is_zero());
        }
        assert!(z.validate().is_err());
    }

    #[test]
    fn bad_normalization_rejected() {
        let mut rep = su2_fundamental();
        rep.generators[0] = rep.generators[0].scale(&Scalar::from_int(2));
        assert!(matches!(structure_constants(&rep), Err(LieError::Normalization { a: 0, b: 0, .. })));
        assert_eq!(sun_fundamental(1).unwrap_err(), LieError::BadRank(1));
    }
}
