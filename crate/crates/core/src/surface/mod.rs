//! Curves on closed surfaces and the homological action of mapping classes.

mod mcg;
mod word;

pub use crate::algtop::HomologyVector;
pub use mcg::{
    classify_round_parity, compose_monodromy, dehn_twist_action, stabilize_curve, MappingClassRep, ParityClass,
    SignedTwist, TwistSign,
};
pub use word::{abelianize_word, CurveWord, Gen, Letter, WordSyntaxError};

pub use mcg::insert_handle_coords;

use crate::error::{Error, Result};

/// A closed, possibly disconnected, surface given by the genera of its
/// components. Handles are numbered consecutively across components, so the
/// first component owns handles `1..=g_0`, the next the following `g_1`, and
/// so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    components: Vec<usize>,
}

impl SurfaceModel {
    pub fn connected(genus: usize) -> Self {
        Self { components: vec![genus] }
    }

    pub fn new(components: Vec<usize>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("a surface needs at least one component"));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn genus(&self) -> usize {
        self.components.iter().sum()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// `χ = Σ (2 − 2g_i)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.components.iter().map(|&g| 2 - 2 * g as i64).sum()
    }

    /// Component owning the 1-based handle `h`.
    pub fn component_of_handle(&self, h: usize) -> Option<usize> {
        let mut end = 0;
        for (i, &g) in self.components.iter().enumerate() {
            end += g;
            if h <= end {
                return Some(i);
            }
        }
        None
    }

    /// Disjoint union, `self`'s components first.
    pub fn disjoint_union(&self, other: &SurfaceModel) -> SurfaceModel {
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        Self { components }
    }

    /// Checks that a word is a curve on this surface: every generator exists
    /// and all of them lie on a single component.
    pub fn check_word(&self, w: &CurveWord) -> Result<()> {
        w.check_genus(self.genus())?;
        let mut comps = w.letters().iter().filter_map(|l| self.component_of_handle(l.handle));
        if let Some(first) = comps.next() {
            if comps.any(|c| c != first) {
                return Err(Error::invalid(format!("curve {w} crosses between fiber components")));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|g| format!("Sigma_{g}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
