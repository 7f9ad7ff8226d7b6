//! Broken Lefschetz fibrations as chains of Lefschetz pieces joined by round
//! cobordisms.
//!
//! A fibration over the sphere is stored as
//! `levels[0] - rounds[0] - levels[1] - ... - levels[n]`. The two end levels lie over disks, every level in between
//! over an annulus; with no round cobordisms the single level covers the whole
//! sphere. Each round cobordism joins the two levels beside it, and its
//! higher side is the neighbour with the larger genus (for a separating
//! handle, the one with fewer components).
//!
//! Words on every level use one global handle numbering for that level's
//! fiber. Crossing a non-separating round cobordism whose curve lies in handle
//! `k` of the higher side deletes handle `k` on the lower side; handles after
//! it shift down by one. Crossing a separating one keeps the numbering.

mod handles;
mod validate;

pub use handles::{round_handle_decomposition, HandlePairDescriptor};
pub use validate::{higher_side_monodromy, round_parities, validate, RoundParityStatus, ValidationReport, Violation};

use std::fmt;

use crate::algtop::{HomologyVector, IntMatrix};
use crate::error::{Error, Result};
use crate::surface::{
    compose_monodromy, CurveWord, MappingClassRep, ParityClass, SignedTwist, SurfaceModel, TwistSign,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Sphere,
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    Positive,
    /// An achiral (orientation-reversing) critical point.
    Negative,
}

impl Chirality {
    pub fn twist_sign(self) -> TwistSign {
        match self {
            Self::Positive => TwistSign::Positive,
            Self::Negative => TwistSign::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub word: CurveWord,
    pub chirality: Chirality,
}

impl Cycle {
    pub fn positive(word: CurveWord) -> Self {
        Self { word, chirality: Chirality::Positive }
    }

    pub fn negative(word: CurveWord) -> Self {
        Self { word, chirality: Chirality::Negative }
    }
}

/// A Lefschetz fibration over a disk or annulus.
///
/// `monodromy` overrides the product of the cycles' twists when the matrix is
/// known but no factorization into named twists is recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzPiece {
    pub fiber: SurfaceModel,
    pub cycles: Vec<Cycle>,
    pub monodromy: Option<IntMatrix>,
}

impl LefschetzPiece {
    pub fn trivial(genus: usize) -> Self {
        Self { fiber: SurfaceModel::connected(genus), cycles: Vec::new(), monodromy: None }
    }

    pub fn with_cycles(genus: usize, cycles: Vec<Cycle>) -> Self {
        Self { fiber: SurfaceModel::connected(genus), cycles, monodromy: None }
    }

    pub fn genus(&self) -> usize {
        self.fiber.genus()
    }

    pub fn cycle_class(&self, i: usize) -> Result<HomologyVector> {
        self.cycles[i].word.abelianize(self.genus())
    }
}

/// Product of the piece's twists in cycle order (chirality as sign), or the
/// declared matrix when there is one.
pub fn global_monodromy(piece: &LefschetzPiece) -> Result<MappingClassRep> {
    let genus = piece.genus();
    if let Some(m) = &piece.monodromy {
        return MappingClassRep::from_matrix(m.clone(), genus);
    }
    let twists = piece
        .cycles
        .iter()
        .map(|c| {
            piece.fiber.check_word(&c.word)?;
            Ok(SignedTwist::new(c.word.abelianize(genus)?, c.chirality.twist_sign()))
        })
        .collect::<Result<Vec<_>>>()?;
    compose_monodromy(&twists, genus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Untwisted,
    Twisted,
}

impl From<Parity> for ParityClass {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Untwisted => ParityClass::Untwisted,
            Parity::Twisted => ParityClass::Twisted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeclaredParity {
    Untwisted,
    Twisted,
    /// Determined from the monodromy on the higher side.
    Auto,
}

impl DeclaredParity {
    pub fn fixed(self) -> Option<Parity> {
        match self {
            Self::Untwisted => Some(Parity::Untwisted),
            Self::Twisted => Some(Parity::Twisted),
            Self::Auto => None,
        }
    }
}

impl From<Parity> for DeclaredParity {
    fn from(p: Parity) -> Self {
        match p {
            Parity::Untwisted => Self::Untwisted,
            Parity::Twisted => Self::Twisted,
        }
    }
}

/// An elementary round cobordism between two adjacent levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundCobordism {
    /// Attaching curve on the higher-side fiber.
    pub gamma: CurveWord,
    pub parity: DeclaredParity,
    /// Stored as given; no convention is imposed on it.
    pub framing: i64,
    pub separating: bool,
    /// Opaque gluing tag.
    pub gluing: Option<i64>,
}

impl RoundCobordism {
    pub fn new(gamma: CurveWord, parity: DeclaredParity) -> Self {
        Self { gamma, parity, framing: 0, separating: false, gluing: None }
    }

    pub fn with_framing(mut self, framing: i64) -> Self {
        self.framing = framing;
        self
    }

    pub fn separating(gamma: CurveWord) -> Self {
        Self { gamma, parity: DeclaredParity::Untwisted, framing: 0, separating: true, gluing: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormParity {
    Even,
    Odd,
}

impl fmt::Display for FormParity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Even => "even",
            Self::Odd => "odd",
        })
    }
}

/// Data asserted about the total space rather than computed from the chain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declared {
    pub sigma: Option<i64>,
    pub b_plus: Option<i64>,
    pub label: Option<String>,
    pub form: Option<FormParity>,
}

/// Which neighbour of a round cobordism carries its curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundSides {
    pub higher: usize,
    pub lower: usize,
}

impl RoundSides {
    /// True when the higher side is the level further up the chain.
    pub fn points_up(&self) -> bool {
        self.higher > self.lower
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrokenFibration {
    base: Base,
    levels: Vec<LefschetzPiece>,
    rounds: Vec<RoundCobordism>,
    sections: Vec<i64>,
    /// Net blow-ups relative to the declared signature: `σ = σ_declared − blowups`.
    blowups: i64,
    /// Blown-down sections, i.e. base points of a pencil: `e` drops by one each.
    base_points: u32,
    declared: Declared,
}

impl BrokenFibration {
    pub fn new(base: Base, levels: Vec<LefschetzPiece>, rounds: Vec<RoundCobordism>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::invalid("a fibration needs at least one level"));
        }
        if levels.len() != rounds.len() + 1 {
            return Err(Error::invalid(format!(
                "{} levels cannot be joined by {} round cobordisms",
                levels.len(),
                rounds.len()
            )));
        }
        Ok(Self {
            base,
            levels,
            rounds,
            sections: Vec::new(),
            blowups: 0,
            base_points: 0,
            declared: Declared::default(),
        })
    }

    /// A Lefschetz fibration over the sphere with no round singularities.
    pub fn lefschetz(piece: LefschetzPiece) -> Self {
        Self::new(Base::Sphere, vec![piece], Vec::new()).expect("one level, no rounds")
    }

    pub fn with_sections(mut self, sections: Vec<i64>) -> Self {
        self.sections = sections;
        self
    }

    pub fn with_declared(mut self, declared: Declared) -> Self {
        self.declared = declared;
        self
    }

    pub fn with_blowups(mut self, blowups: i64, base_points: u32) -> Self {
        self.blowups = blowups;
        self.base_points = base_points;
        self
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn levels(&self) -> &[LefschetzPiece] {
        &self.levels
    }

    pub fn rounds(&self) -> &[RoundCobordism] {
        &self.rounds
    }

    pub fn lower(&self) -> &LefschetzPiece {
        &self.levels[0]
    }

    pub fn higher(&self) -> &LefschetzPiece {
        self.levels.last().expect("non-empty chain")
    }

    pub fn sections(&self) -> &[i64] {
        &self.sections
    }

    pub fn blowups(&self) -> i64 {
        self.blowups
    }

    pub fn base_points(&self) -> u32 {
        self.base_points
    }

    pub fn declared(&self) -> &Declared {
        &self.declared
    }

    pub fn declared_mut(&mut self) -> &mut Declared {
        &mut self.declared
    }

    pub fn cycle_count(&self) -> usize {
        self.levels.iter().map(|l| l.cycles.len()).sum()
    }

    /// Signature: declared value corrected by blow-ups.
    pub fn signature(&self) -> Option<i64> {
        self.declared.sigma.map(|s| s - self.blowups)
    }

    /// Declared parity of the intersection form, or odd when some section has
    /// odd square.
    pub fn form_parity(&self) -> Option<FormParity> {
        self.declared.form.or_else(|| self.sections.iter().any(|s| s % 2 != 0).then_some(FormParity::Odd))
    }

    /// Near-symplectic when the fibration has a section.
    pub fn admits_near_symplectic(&self) -> bool {
        !self.sections.is_empty()
    }

    pub fn round_sides(&self, j: usize) -> Option<RoundSides> {
        let (lo, hi) = (&self.levels[j].fiber, &self.levels[j + 1].fiber);
        let up = RoundSides { higher: j + 1, lower: j };
        let down = RoundSides { higher: j, lower: j + 1 };
        if self.rounds[j].separating {
            match hi.component_count().cmp(&lo.component_count()) {
                std::cmp::Ordering::Less => Some(up),
                std::cmp::Ordering::Greater => Some(down),
                std::cmp::Ordering::Equal => None,
            }
        } else {
            match hi.genus().cmp(&lo.genus()) {
                std::cmp::Ordering::Greater => Some(up),
                std::cmp::Ordering::Less => Some(down),
                std::cmp::Ordering::Equal => None,
            }
        }
    }

    /// Every round cobordism has its higher side further up the chain.
    pub fn is_directed(&self) -> bool {
        (0..self.rounds.len()).all(|j| self.round_sides(j).is_some_and(|s| s.points_up()))
    }

    pub fn has_connected_fibers(&self) -> bool {
        self.levels.iter().all(|l| l.fiber.is_connected())
    }

    /// Class of round `j`'s curve on its higher-side fiber.
    pub fn round_class(&self, j: usize) -> Result<HomologyVector> {
        let sides = self.round_sides(j).ok_or_else(|| Error::invalid(format!("round[{j}] has no higher side")))?;
        let fiber = &self.levels[sides.higher].fiber;
        fiber.check_word(&self.rounds[j].gamma)?;
        self.rounds[j].gamma.abelianize(fiber.genus())
    }

    pub(crate) fn into_parts(self) -> Parts {
        Parts {
            base: self.base,
            levels: self.levels,
            rounds: self.rounds,
            sections: self.sections,
            blowups: self.blowups,
            base_points: self.base_points,
            declared: self.declared,
        }
    }

    pub(crate) fn from_parts(p: Parts) -> Result<Self> {
        Ok(Self::new(p.base, p.levels, p.rounds)?
            .with_sections(p.sections)
            .with_blowups(p.blowups, p.base_points)
            .with_declared(p.declared))
    }
}

/// Unpacked fields, for the surgery operations.
#[derive(Debug, Clone)]
pub(crate) struct Parts {
    pub base: Base,
    pub levels: Vec<LefschetzPiece>,
    pub rounds: Vec<RoundCobordism>,
    pub sections: Vec<i64>,
    pub blowups: i64,
    pub base_points: u32,
    pub declared: Declared,
}

/// A fibration over the sphere with one round cobordism and every Lefschetz
/// critical point on the higher side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifiedBLF(BrokenFibration);

impl SimplifiedBLF {
    pub fn fibration(&self) -> &BrokenFibration {
        &self.0
    }

    pub fn into_inner(self) -> BrokenFibration {
        self.0
    }

    /// The monodromy and attaching class on the higher side.
    pub fn monodromy_data(&self) -> Result<(MappingClassRep, HomologyVector)> {
        let sides = self.0.round_sides(0).expect("checked on construction");
        Ok((global_monodromy(&self.0.levels[sides.higher])?, self.0.round_class(0)?))
    }
}

impl TryFrom<BrokenFibration> for SimplifiedBLF {
    type Error = Error;

    fn try_from(f: BrokenFibration) -> Result<Self> {
        if f.base != Base::Sphere {
            return Err(Error::invalid("a simplified fibration lives over the sphere"));
        }
        if f.rounds.len() != 1 {
            return Err(Error::invalid(format!(
                "a simplified fibration has exactly one round cobordism, found {}",
                f.rounds.len()
            )));
        }
        let sides = f.round_sides(0).ok_or_else(|| Error::invalid("round cobordism does not change the fiber"))?;
        if !f.levels[sides.lower].cycles.is_empty() {
            return Err(Error::invalid("critical points on the lower side"));
        }
        Ok(Self(f))
    }
}

impl From<SimplifiedBLF> for BrokenFibration {
    fn from(s: SimplifiedBLF) -> Self {
        s.0
    }
}
