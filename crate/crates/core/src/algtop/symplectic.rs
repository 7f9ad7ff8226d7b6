//! The intersection pairing on `H1(Σg; Z)` in the interleaved basis
//! `a1, b1, a2, b2, …` with `⟨a_i, b_i⟩ = +1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// An integer vector of length `2g`: exponent sums in the basis
/// `a1, b1, …, ag, bg`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HomologyVector(Vec<BigInt>);

impl HomologyVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero(genus: usize) -> Self {
        Self(vec![BigInt::zero(); 2 * genus])
    }

    /// The basis vector `a_h` (1-based handle `h`).
    pub fn a(genus: usize, h: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[2 * (h - 1)] = BigInt::one();
        v
    }

    /// The basis vector `b_h` (1-based handle `h`).
    pub fn b(genus: usize, h: usize) -> Self {
        let mut v = Self::zero(genus);
        v.0[2 * (h - 1) + 1] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }

    /// 1-based handles on which the vector has a non-zero coordinate.
    pub fn support_handles(&self) -> Vec<usize> {
        (0..self.0.len() / 2)
            .filter(|h| !(self.0[2 * h].is_zero() && self.0[2 * h + 1].is_zero()))
            .map(|h| h + 1)
            .collect()
    }

    pub(crate) fn check_genus(&self, genus: usize) -> Result<()> {
        if self.0.len() != 2 * genus {
            return Err(Error::dim(format!("homology vector of length {} on a genus-{genus} surface", self.0.len())));
        }
        Ok(())
    }
}

impl From<Vec<BigInt>> for HomologyVector {
    fn from(v: Vec<BigInt>) -> Self {
        Self(v)
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The standard symplectic form `J` for genus `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    genus: usize,
    matrix: IntMatrix,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::dim("symplectic form needs genus at least 1"));
        }
        let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
        for i in 0..genus {
            j[(2 * i, 2 * i + 1)] = BigInt::one();
            j[(2 * i + 1, 2 * i)] = -BigInt::one();
        }
        Ok(Self { genus, matrix: j })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// `xᵀ J y`.
pub fn pairing(x: &HomologyVector, y: &HomologyVector, genus: usize) -> Result<BigInt> {
    x.check_genus(genus)?;
    y.check_genus(genus)?;
    Ok(pairing_unchecked(x.coords(), y.coords()))
}

fn pairing_unchecked(x: &[BigInt], y: &[BigInt]) -> BigInt {
    x.chunks(2).zip(y.chunks(2)).map(|(p, q)| &p[0] * &q[1] - &p[1] * &q[0]).sum()
}

/// `Mᵀ J M = J`. Genus 0 accepts nothing: there is no `0×0` matrix.
pub fn is_symplectic(m: &IntMatrix, genus: usize) -> Result<bool> {
    if m.rows() != 2 * genus || m.cols() != 2 * genus {
        return Err(Error::dim(format!(
            "expected a {0}x{0} matrix for genus {genus}, got {1}x{2}",
            2 * genus,
            m.rows(),
            m.cols()
        )));
    }
    let j = SymplecticForm::new(genus)?;
    Ok(&(&m.transpose() * j.matrix()) * m == *j.matrix())
}
