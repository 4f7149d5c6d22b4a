//! Exact integer lattice arithmetic: bilinear forms, signatures, discriminant
//! groups, and enumeration of roots and isotropic vectors.

pub mod enumerate;
pub mod ratmat;
pub mod snf;

use std::fmt;

use num::{BigInt, Integer, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type Int = BigInt;

/// Serializes a big integer as a JSON number when it fits in i64 and as a
/// decimal string otherwise.
pub fn serialize_int<S: serde::Serializer>(
    v: &Int,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(small) => serializer.serialize_i64(small),
        None => serializer.serialize_str(&v.to_string()),
    }
}

pub fn serialize_int_vec<S: serde::Serializer>(
    v: &[Int],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(v.len()))?;
    for item in v {
        match item.to_i64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&item.to_string())?,
        }
    }
    seq.end()
}

pub use enumerate::{definite_root_rank, enumerate_isotropic, enumerate_roots};

/// Vector of lattice coordinates in the fixed basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<Int>);

impl LatticeVector {
    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&v| Int::from(v)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![Int::zero(); dim])
    }

    /// Standard basis vector e_i (zero-indexed).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![Int::zero(); dim];
        v[i] = Int::one();
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    pub fn neg(&self) -> Self {
        LatticeVector(self.0.iter().map(|v| -v.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Int) -> Self {
        LatticeVector(self.0.iter().map(|v| v * k).collect())
    }

    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::zero(), |acc, v| acc.gcd(v))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The vector divided by the gcd of its coordinates.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|v| v / &g).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0
            .iter()
            .map(|v| v.to_f64().expect("coordinate fits in f64"))
            .collect()
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for v in &self.0 {
            match v.to_i64() {
                Some(small) => seq.serialize_element(&small)?,
                None => seq.serialize_element(&v.to_string())?,
            }
        }
        seq.end()
    }
}

/// Integer symmetric bilinear form on Z^dim.
#[derive(Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: Vec<Vec<Int>>,
}

impl fmt::Debug for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GramLattice({:?})", self.gram)
    }
}

impl GramLattice {
    /// Builds a lattice from a symmetric, non-degenerate integer matrix.
    /// The empty matrix is the rank-zero lattice.
    pub fn new(gram: Vec<Vec<Int>>) -> Result<Self> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare);
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        let lattice = GramLattice { gram };
        if n > 0 && lattice.det().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(lattice)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
    }

    /// Rejects lattices that cannot be the Picard lattice of a K3 surface:
    /// the form must be even and of signature (1, dim-1).
    pub fn validate_k3(&self) -> Result<()> {
        for i in 0..self.dim() {
            if self.gram[i][i].is_odd() {
                return Err(Error::OddDiagonal { index: i });
            }
        }
        let (pos, neg) = self.signature()?;
        if pos != 1 || neg != self.dim() - 1 {
            return Err(Error::WrongSignature {
                expected_neg: self.dim().saturating_sub(1),
                pos,
                neg,
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Vec<Vec<Int>> {
        &self.gram
    }

    pub fn gram_rational(&self) -> ratmat::RMat {
        ratmat::int_matrix_to_rational(&self.gram)
    }

    /// The pairing x^T gram y, exact.
    pub fn inner(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Int> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        if y.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: y.dim(),
            });
        }
        Ok(self.inner_unchecked(x, y))
    }

    pub(crate) fn inner_unchecked(&self, x: &LatticeVector, y: &LatticeVector) -> Int {
        let mut acc = Int::zero();
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = Int::zero();
            for (j, yj) in y.0.iter().enumerate() {
                if !yj.is_zero() {
                    row += &self.gram[i][j] * yj;
                }
            }
            acc += xi * row;
        }
        acc
    }

    pub fn norm(&self, x: &LatticeVector) -> Result<Int> {
        self.inner(x, x)
    }

    /// Coordinates of the functional `<., x>` in the dual basis, i.e. gram * x.
    pub fn functional(&self, x: &LatticeVector) -> Vec<Int> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(&x.0).map(|(g, v)| g * v).sum())
            .collect()
    }

    /// Exact signature (positive count, negative count) via rational
    /// congruence reduction. No floating point is involved.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let (pos, neg, zero) = ratmat::inertia(&self.gram_rational());
        if zero != 0 {
            return Err(Error::Degenerate);
        }
        Ok((pos, neg))
    }

    pub fn is_negative_definite(&self) -> bool {
        match self.signature() {
            Ok((0, neg)) => neg == self.dim(),
            _ => self.dim() == 0,
        }
    }

    /// Checks signature (1, dim-1), the hyperbolic case.
    pub fn is_hyperbolic(&self) -> Result<()> {
        let (pos, neg) = self.signature()?;
        if pos != 1 || neg + 1 != self.dim() {
            return Err(Error::WrongSignature {
                expected_neg: self.dim().saturating_sub(1),
                pos,
                neg,
            });
        }
        Ok(())
    }

    pub fn det(&self) -> Int {
        let d = ratmat::determinant(&self.gram_rational());
        debug_assert!(d.denom().is_one());
        d.to_integer()
    }

    /// Invariant factors of the finite group `L^* / L`.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        if self.dim() > 0 && self.det().is_zero() {
            return Err(Error::Degenerate);
        }
        let snf = snf::smith_normal_form(&self.gram);
        let mut factors: Vec<Int> = (0..self.dim())
            .map(|i| snf.d[i][i].clone())
            .filter(|d| !d.is_one())
            .collect();
        factors.sort();
        Ok(DiscriminantGroup {
            invariant_factors: factors,
        })
    }

    /// Gram matrix of the sublattice spanned by the given vectors.
    pub fn restrict(&self, basis: &[LatticeVector]) -> Vec<Vec<Int>> {
        basis
            .iter()
            .map(|u| basis.iter().map(|v| self.inner_unchecked(u, v)).collect())
            .collect()
    }

    /// Integral basis of the orthogonal complement of x.
    pub fn orthogonal_complement(&self, x: &LatticeVector) -> Vec<LatticeVector> {
        let functional = vec![self.functional(x)];
        snf::kernel_basis(&functional)
            .into_iter()
            .map(LatticeVector)
            .collect()
    }
}

/// Invariant factors (> 1, each dividing the next) of the discriminant group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantGroup {
    #[serde(serialize_with = "serialize_int_vec")]
    pub invariant_factors: Vec<Int>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> Int {
        self.invariant_factors
            .iter()
            .fold(Int::one(), |acc, f| acc * f)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Primitive vector with self-pairing 0, oriented positively against the
/// chosen interior class; carries its height for deterministic ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IsotropicClass {
    #[serde(serialize_with = "serialize_int")]
    pub height: Int,
    pub vec: LatticeVector,
}
