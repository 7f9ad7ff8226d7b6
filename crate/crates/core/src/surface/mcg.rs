//! Mapping classes through their action on `H1(Σg; Z)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algtop::{is_symplectic, HomologyVector, IntMatrix, SymplecticForm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistSign {
    Positive,
    Negative,
}

impl TwistSign {
    pub fn from_i64(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Self::Positive),
            -1 => Ok(Self::Negative),
            _ => Err(Error::invalid(format!("twist sign must be ±1, got {s}"))),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Self::Positive => 1,
            Self::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTwist {
    pub curve: HomologyVector,
    pub sign: TwistSign,
}

impl SignedTwist {
    pub fn new(curve: HomologyVector, sign: TwistSign) -> Self {
        Self { curve, sign }
    }

    pub fn positive(curve: HomologyVector) -> Self {
        Self::new(curve, TwistSign::Positive)
    }
}

/// A symplectic `2g×2g` matrix together with the twists that produced it
/// (empty when the matrix was supplied directly).
///
/// Genus 0 has trivial homology; its only mapping class is represented with
/// no matrix at all.
#[derive(Clone, PartialEq, Eq)]
pub struct MappingClassRep {
    genus: usize,
    matrix: Option<IntMatrix>,
    provenance: Vec<SignedTwist>,
}

impl MappingClassRep {
    pub fn identity(genus: usize) -> Self {
        Self { genus, matrix: (genus > 0).then(|| IntMatrix::identity(2 * genus)), provenance: Vec::new() }
    }

    pub fn from_matrix(matrix: IntMatrix, genus: usize) -> Result<Self> {
        if !is_symplectic(&matrix, genus)? {
            return Err(Error::invalid(format!("matrix {matrix} is not symplectic")));
        }
        Ok(Self { genus, matrix: Some(matrix), provenance: Vec::new() })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `None` only in genus 0.
    pub fn matrix(&self) -> Option<&IntMatrix> {
        self.matrix.as_ref()
    }

    pub fn provenance(&self) -> &[SignedTwist] {
        &self.provenance
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.as_ref().is_none_or(IntMatrix::is_identity)
    }

    pub fn apply(&self, v: &HomologyVector) -> Result<HomologyVector> {
        v.check_genus(self.genus)?;
        match &self.matrix {
            Some(m) => Ok(HomologyVector::new(m.apply(v.coords())?)),
            None => Ok(v.clone()),
        }
    }

    /// Matrix product `self · other`; provenance concatenates in the same
    /// order.
    pub fn then(&self, other: &MappingClassRep) -> Result<MappingClassRep> {
        if self.genus != other.genus {
            return Err(Error::dim(format!("cannot compose genus {} with genus {}", self.genus, other.genus)));
        }
        let matrix = match (&self.matrix, &other.matrix) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
        let mut provenance = self.provenance.clone();
        provenance.extend(other.provenance.iter().cloned());
        Ok(Self { genus: self.genus, matrix, provenance })
    }

    /// Block sum over a disjoint union of fibers, `self` first.
    pub fn direct_sum(&self, other: &MappingClassRep) -> MappingClassRep {
        let matrix = match (&self.matrix, &other.matrix) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        };
        Self { genus: self.genus + other.genus, matrix, provenance: Vec::new() }
    }

    /// Induced action after surgering away handle `h` (1-based): drops the
    /// rows and columns of `a_h`, `b_h`. Meaningful when the removed curve
    /// lies in that handle and is preserved up to sign.
    pub fn remove_handle(&self, h: usize) -> Result<MappingClassRep> {
        if h == 0 || h > self.genus {
            return Err(Error::dim(format!("no handle {h} in genus {}", self.genus)));
        }
        let genus = self.genus - 1;
        if genus == 0 {
            return Ok(Self::identity(0));
        }
        let m = self.matrix.as_ref().expect("positive genus has a matrix");
        let keep: Vec<usize> = (0..2 * self.genus).filter(|&i| i / 2 != h - 1).collect();
        let mut out = IntMatrix::zeros(2 * genus, 2 * genus);
        for (i, &si) in keep.iter().enumerate() {
            for (j, &sj) in keep.iter().enumerate() {
                out[(i, j)] = m[(si, sj)].clone();
            }
        }
        Ok(Self { genus, matrix: Some(out), provenance: Vec::new() })
    }

    /// Extends by the identity on a new handle inserted at position `h`.
    pub fn insert_handle(&self, h: usize) -> Result<MappingClassRep> {
        if h == 0 || h > self.genus + 1 {
            return Err(Error::dim(format!("cannot insert handle {h} into genus {}", self.genus)));
        }
        let genus = self.genus + 1;
        let mut out = IntMatrix::identity(2 * genus);
        if let Some(m) = &self.matrix {
            let old: Vec<usize> = (0..2 * genus).filter(|&i| i / 2 != h - 1).collect();
            for (i, &ti) in old.iter().enumerate() {
                for (j, &tj) in old.iter().enumerate() {
                    out[(ti, tj)] = m[(i, j)].clone();
                }
            }
        }
        Ok(Self { genus, matrix: Some(out), provenance: Vec::new() })
    }
}

impl fmt::Debug for MappingClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.matrix {
            Some(m) => write!(f, "MappingClassRep(g={}, {m})", self.genus),
            None => write!(f, "MappingClassRep(g=0)"),
        }
    }
}

/// The transvection `x ↦ x + ⟨x, γ⟩ γ`.
pub fn dehn_twist_action(gamma: &HomologyVector, genus: usize) -> Result<MappingClassRep> {
    signed_twist(gamma, TwistSign::Positive, genus)
}

fn signed_twist(gamma: &HomologyVector, sign: TwistSign, genus: usize) -> Result<MappingClassRep> {
    gamma.check_genus(genus)?;
    if genus == 0 {
        return Ok(MappingClassRep::identity(0));
    }
    let j = SymplecticForm::new(genus)?;
    let j_gamma = j.matrix().apply(gamma.coords())?;
    let s = BigInt::from(sign.as_i64());
    let mut m = IntMatrix::identity(2 * genus);
    for (i, gi) in gamma.coords().iter().enumerate() {
        if gi.is_zero() {
            continue;
        }
        for (k, jk) in j_gamma.iter().enumerate() {
            // ⟨x, γ⟩ = xᵀ J γ, so the k-th column picks up γ · (Jγ)_k.
            m[(i, k)] += &s * gi * jk;
        }
    }
    Ok(MappingClassRep { genus, matrix: Some(m), provenance: vec![SignedTwist::new(gamma.clone(), sign)] })
}

/// The product of the signed transvections, multiplied left to right in list
/// order. With this reading the Matsumoto word `(β1 β2 β3 β4)²` is trivial.
pub fn compose_monodromy(twists: &[SignedTwist], genus: usize) -> Result<MappingClassRep> {
    twists.iter().try_fold(MappingClassRep::identity(genus), |acc, t| acc.then(&signed_twist(&t.curve, t.sign, genus)?))
}

/// How a monodromy acts on the attaching class of a round 2-handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Untwisted,
    Twisted,
    NotPreserved,
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Untwisted => "Untwisted",
            Self::Twisted => "Twisted",
            Self::NotPreserved => "NotPreserved",
        })
    }
}

pub fn classify_round_parity(mu: &MappingClassRep, gamma: &HomologyVector) -> Result<ParityClass> {
    gamma.check_genus(mu.genus())?;
    if gamma.is_zero() {
        return Err(Error::invalid("the zero class is not the class of a round-handle curve"));
    }
    let image = mu.apply(gamma)?;
    Ok(if image == *gamma {
        ParityClass::Untwisted
    } else if image == gamma.neg() {
        ParityClass::Twisted
    } else {
        ParityClass::NotPreserved
    })
}

/// Standard inclusion `Σ_from ⊂ Σ_to` on the first handles: pads with zeros.
pub fn stabilize_curve(v: &HomologyVector, g_from: usize, g_to: usize) -> Result<HomologyVector> {
    if g_to < g_from {
        return Err(Error::invalid(format!("cannot stabilize from genus {g_from} down to {g_to}")));
    }
    v.check_genus(g_from)?;
    let mut coords = v.coords().to_vec();
    coords.resize(2 * g_to, BigInt::zero());
    Ok(HomologyVector::new(coords))
}

/// Inserts a zero handle at position `h` (1-based).
pub fn insert_handle_coords(v: &HomologyVector, h: usize) -> HomologyVector {
    let mut coords = v.coords().to_vec();
    let at = 2 * (h - 1);
    coords.splice(at..at, [BigInt::zero(), BigInt::zero()]);
    HomologyVector::new(coords)
}
