//! Seiberg-Witten bookkeeping on declared class data: wall-crossing,
//! adjunction, simple type, the `±β` symmetry, and the section constraint.
//! Nothing here solves the equations; values are inputs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Declared data of a class `β`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SWClassRecord {
    pub square: i64,
    /// Pairings with named surfaces.
    pub pairings: BTreeMap<String, i64>,
    /// Dimension of the moduli space.
    pub d: i64,
    pub value: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(x: i64) -> Result<Self> {
        match x.signum() {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::invalid("a class on a wall has no chamber sign")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Signs of `A·H` and `A·H′` for the two chambers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChamberData {
    pub h: Sign,
    pub h_prime: Sign,
}

impl ChamberData {
    pub fn new(h: Sign, h_prime: Sign) -> Self {
        Self { h, h_prime }
    }

    /// The same wall crossed back.
    pub fn reversed(self) -> Self {
        Self { h: self.h_prime, h_prime: self.h }
    }
}

fn minus_one_pow(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `SW` in the chamber of `H′` from its value in the chamber of `H`.
pub fn wall_crossing(sw_h: i64, d: i64, c: ChamberData) -> Result<i64> {
    if d < 0 || d % 2 != 0 {
        return Err(Error::invalid(format!("wall-crossing needs an even non-negative dimension, got {d}")));
    }
    Ok(match (c.h, c.h_prime) {
        (Sign::Plus, Sign::Minus) => sw_h + minus_one_pow(d / 2),
        (Sign::Minus, Sign::Plus) => sw_h + minus_one_pow(1 + d / 2),
        _ => sw_h,
    })
}

/// `2g − 2 ≥ Σ² + |β·Σ|` for an embedded surface of genus `g > 0` and
/// non-negative square.
pub fn adjunction_check(genus: i64, square: i64, pairing: i64) -> Result<bool> {
    if genus <= 0 {
        return Err(Error::invalid("adjunction inequality applies to surfaces of positive genus"));
    }
    if square < 0 {
        return Err(Error::invalid("adjunction inequality applies to surfaces of non-negative square"));
    }
    Ok(2 * genus - 2 >= square + pairing.abs())
}

/// `β² = 2e + 3σ`.
pub fn simple_type_check(square: i64, e: i64, sigma: i64) -> bool {
    square == 2 * e + 3 * sigma
}

/// `SW(−β) = (−1)^((e+σ)/4) SW(β)`.
pub fn sw_symmetry(value: i64, e: i64, sigma: i64) -> Result<i64> {
    if (e + sigma) % 4 != 0 {
        return Err(Error::invalid(format!("e + sigma = {} is not divisible by 4", e + sigma)));
    }
    Ok(value * minus_one_pow((e + sigma) / 4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionVerdict {
    Admissible,
    Forbidden,
}

impl fmt::Display for SectionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectionVerdict::Admissible => "Admissible",
            SectionVerdict::Forbidden => "Forbidden",
        })
    }
}

/// With `b⁺ > 1` and non-trivial SW, every section has negative square.
pub fn section_constraint(b_plus: i64, sw_nontrivial: bool, k: i64) -> SectionVerdict {
    if b_plus > 1 && sw_nontrivial && k >= 0 {
        SectionVerdict::Forbidden
    } else {
        SectionVerdict::Admissible
    }
}

/// An embedded surface by genus and square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceClass {
    pub genus: i64,
    pub square: i64,
}

/// Steps of the vanishing argument for an essential sphere `S` of square 0
/// meeting a torus `T` once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingTrace {
    pub steps: Vec<String>,
    /// The torus of the last step.
    pub torus: SurfaceClass,
    pub adjunction_holds: bool,
    /// `b⁺ > 1` and adjunction fails: every SW invariant vanishes.
    pub sw_vanishes: bool,
}

impl fmt::Display for VanishingTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        if self.sw_vanishes {
            writeln!(f, "SW ≡ 0")?;
        }
        Ok(())
    }
}

/// Blow up at `S ∩ T`, blow down the proper transform of `S`, and check
/// adjunction on the image of `T` plus the exceptional class.
///
/// Intersection data is tracked on the lattice spanned by `S`, `T` and `E`.
pub fn vanishing_pipeline(torus_square: i64, b_plus: i64) -> Result<VanishingTrace> {
    let mut steps = Vec::new();
    // Gram matrix on (S, T, E) in the blow-up; S̃ = S − E, T̃ = T − E.
    let (s2, t2, st) = (0i64, torus_square, 1i64);
    steps.push(format!("sphere S: S^2={s2}, torus T: T^2={t2}, S.T={st}"));
    let st_sq = s2 - 1;
    let tt_sq = t2 - 1;
    let st_tt = st - 1;
    let (st_e, tt_e) = (1, 1);
    steps.push(format!("blow up S∩T: S~^2={st_sq}, T~^2={tt_sq}, E^2=-1, S~.T~={st_tt}, S~.E={st_e}, T~.E={tt_e}"));
    if st_sq != -1 {
        return Err(Error::invalid("proper transform of the sphere is not exceptional"));
    }
    // Blowing down S̃ sends E to E' = E + S̃.
    let e_prime_sq = -1 + 2 * st_e + st_sq;
    let tt_e_prime = tt_e + st_tt;
    steps.push(format!("blow down S~: E'=E+S~, E'^2={e_prime_sq}, T~.E'={tt_e_prime}"));
    // T′ = T̃ + E′ smoothed at their intersection points: genus is
    // g(T̃) + g(E′) + #points − 1, square by bilinearity.
    let (g_torus, g_sphere) = (1, 0);
    let genus = g_torus + g_sphere + tt_e_prime - 1;
    let square = tt_sq + 2 * tt_e_prime + e_prime_sq;
    steps.push(format!("torus T'=T~+E': genus {genus}, T'^2={square}"));
    let torus = SurfaceClass { genus, square };
    let holds = adjunction_check(genus, square, 0)?;
    steps.push(format!(
        "adjunction 2g-2 >= T'^2 + |beta.T'| with beta.T'=0: {}",
        if holds { "holds" } else { "violated" }
    ));
    let sw_vanishes = !holds && b_plus > 1;
    Ok(VanishingTrace { steps, torus, adjunction_holds: holds, sw_vanishes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::*;

    #[test]
    fn wall_crossing_table() {
        assert_eq!(wall_crossing(5, 0, ChamberData::new(Plus, Plus)).unwrap(), 5);
        assert_eq!(wall_crossing(5, 0, ChamberData::new(Minus, Minus)).unwrap(), 5);
        assert_eq!(wall_crossing(0, 2, ChamberData::new(Plus, Minus)).unwrap(), -1);
        assert_eq!(wall_crossing(0, 0, ChamberData::new(Minus, Plus)).unwrap(), -1);
        assert!(wall_crossing(0, 1, ChamberData::new(Plus, Minus)).is_err());
        assert!(wall_crossing(0, -2, ChamberData::new(Plus, Minus)).is_err());
    }

    #[test]
    fn adjunction_examples() {
        assert!(!adjunction_check(1, 1, 0).unwrap());
        assert!(adjunction_check(2, 0, 2).unwrap());
        assert!(adjunction_check(1, 0, 0).unwrap());
        assert!(adjunction_check(0, 0, 0).is_err());
        assert!(adjunction_check(1, -1, 0).is_err());
    }

    #[test]
    fn simple_type_and_symmetry() {
        assert!(simple_type_check(0, 24, -16));
        assert!(!simple_type_check(0, 4, 0));
        assert_eq!(sw_symmetry(1, 24, -16).unwrap(), 1);
        assert_eq!(sw_symmetry(3, 8, -4).unwrap(), -3);
        assert_eq!(sw_symmetry(0, 8, -4).unwrap(), 0);
        assert!(sw_symmetry(1, 3, 0).is_err());
    }

    #[test]
    fn sections() {
        for k in -3..4 {
            assert_eq!(section_constraint(1, true, k), SectionVerdict::Admissible);
        }
        assert_eq!(section_constraint(2, true, 0), SectionVerdict::Forbidden);
        assert_eq!(section_constraint(2, false, 3), SectionVerdict::Admissible);
        assert_eq!(section_constraint(2, true, -1), SectionVerdict::Admissible);
    }

    #[test]
    fn pipeline_flags_vanishing() {
        let t = vanishing_pipeline(0, 2).unwrap();
        assert_eq!(t.torus, SurfaceClass { genus: 1, square: 1 });
        assert!(!t.adjunction_holds);
        assert!(t.sw_vanishes);
        assert!(t.to_string().ends_with("SW ≡ 0\n"));
        assert!(!vanishing_pipeline(0, 1).unwrap().sw_vanishes);
    }
}
