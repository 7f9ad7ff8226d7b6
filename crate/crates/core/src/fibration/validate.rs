use std::fmt;

use super::{global_monodromy, Base, BrokenFibration, DeclaredParity, FormParity, Parity};
use crate::algtop::is_symplectic;
use crate::error::Result;
use crate::surface::{classify_round_parity, MappingClassRep, ParityClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    InvalidCycle { level: usize, index: usize, reason: String },
    InvalidMonodromy { level: usize, reason: String },
    GenusBookkeeping { round: usize, reason: String },
    InvalidGamma { round: usize, reason: String },
    SeparatingMismatch { round: usize, declared: bool },
    ParityNotPreserved { round: usize },
    ParityMismatch { round: usize, declared: Parity, computed: Parity },
    ParityUndetermined { round: usize },
    FormParityConflict { section: usize, square: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidCycle { level, index, reason } => {
                write!(f, "level[{level}] cycle[{index}]: {reason}")
            }
            Self::InvalidMonodromy { level, reason } => write!(f, "level[{level}] monodromy: {reason}"),
            Self::GenusBookkeeping { round, reason } => write!(f, "round[{round}]: genus bookkeeping: {reason}"),
            Self::InvalidGamma { round, reason } => write!(f, "round[{round}]: gamma: {reason}"),
            Self::SeparatingMismatch { round, declared } => {
                if *declared {
                    write!(f, "round[{round}]: declared separating but gamma has nonzero homology class")
                } else {
                    write!(f, "round[{round}]: gamma is null-homologous but not declared separating")
                }
            }
            Self::ParityNotPreserved { round } => {
                write!(f, "round[{round}]: higher-side monodromy does not preserve gamma up to sign")
            }
            Self::ParityMismatch { round, declared, computed } => {
                write!(f, "round[{round}]: parity mismatch: declared {declared:?}, computed {computed:?}")
            }
            Self::ParityUndetermined { round } => {
                write!(f, "round[{round}]: parity is auto but cannot be determined from the chain")
            }
            Self::FormParityConflict { section, square } => {
                write!(f, "sections[{section}]: square {square} is odd but the intersection form is declared even")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoundParityStatus {
    Separating,
    Computed(ParityClass),
    Undetermined,
}

impl fmt::Display for RoundParityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Separating => f.write_str("separating"),
            Self::Computed(p) => write!(f, "{p}"),
            Self::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// Monodromy around round `j`, seen from its higher side: the product over
/// the whole region beyond it, with deeper levels transported across the
/// round cobordisms they sit behind. `None` when the chain does not determine
/// it (torus base, or a transport that would need data the model lacks).
pub fn higher_side_monodromy(f: &BrokenFibration, j: usize) -> Result<Option<MappingClassRep>> {
    if f.base() == Base::Torus {
        return Ok(None);
    }
    let Some(sides) = f.round_sides(j) else {
        return Ok(None);
    };
    region_monodromy(f, sides.higher, sides.points_up())
}

fn region_monodromy(f: &BrokenFibration, level: usize, up: bool) -> Result<Option<MappingClassRep>> {
    let own = global_monodromy(&f.levels()[level])?;
    let next_round = if up { (level < f.rounds().len()).then_some(level) } else { level.checked_sub(1) };
    let Some(r) = next_round else {
        return Ok(Some(own));
    };
    let far = if up { level + 1 } else { level - 1 };
    let Some(beyond) = region_monodromy(f, far, up)? else {
        return Ok(None);
    };
    let transported = if f.rounds()[r].separating {
        if beyond.genus() != own.genus() {
            return Ok(None);
        }
        beyond
    } else {
        let Some(sides) = f.round_sides(r) else {
            return Ok(None);
        };
        if sides.higher != far {
            // Going from the lower to the higher side would need the twisting
            // data of that round handle.
            return Ok(None);
        }
        let gamma = f.round_class(r)?;
        if gamma.is_zero() || classify_round_parity(&beyond, &gamma)? == ParityClass::NotPreserved {
            return Ok(None);
        }
        match gamma.support_handles().as_slice() {
            [k] => beyond.remove_handle(*k)?,
            _ => return Ok(None),
        }
    };
    let combined = if up { own.then(&transported)? } else { transported.then(&own)? };
    Ok(Some(combined))
}

pub fn round_parities(f: &BrokenFibration) -> Result<Vec<RoundParityStatus>> {
    (0..f.rounds().len())
        .map(|j| {
            if f.rounds()[j].separating {
                return Ok(RoundParityStatus::Separating);
            }
            let gamma = f.round_class(j)?;
            if gamma.is_zero() {
                return Ok(RoundParityStatus::Undetermined);
            }
            Ok(match higher_side_monodromy(f, j)? {
                Some(mu) => RoundParityStatus::Computed(classify_round_parity(&mu, &gamma)?),
                None => RoundParityStatus::Undetermined,
            })
        })
        .collect()
}

/// Structural and homological checks; never fails, every problem becomes a
/// report entry.
pub fn validate(f: &BrokenFibration) -> ValidationReport {
    let mut report = ValidationReport::default();
    let v = &mut report.violations;

    for (li, level) in f.levels().iter().enumerate() {
        for (ci, cycle) in level.cycles.iter().enumerate() {
            if let Err(e) = level.fiber.check_word(&cycle.word) {
                v.push(Violation::InvalidCycle { level: li, index: ci, reason: e.to_string() });
            }
        }
        if let Some(m) = &level.monodromy {
            match is_symplectic(m, level.genus()) {
                Ok(true) => {}
                Ok(false) => v.push(Violation::InvalidMonodromy { level: li, reason: "not symplectic".into() }),
                Err(e) => v.push(Violation::InvalidMonodromy { level: li, reason: e.to_string() }),
            }
        }
    }

    for (j, round) in f.rounds().iter().enumerate() {
        let (lo, hi) = (&f.levels()[j].fiber, &f.levels()[j + 1].fiber);
        let dg = hi.genus() as i64 - lo.genus() as i64;
        let dc = hi.component_count() as i64 - lo.component_count() as i64;
        let ok = if round.separating { dg == 0 && dc.abs() == 1 } else { dg.abs() == 1 && dc == 0 };
        if !ok {
            let expected = if round.separating {
                "a separating handle keeps the genus and changes the component count by one"
            } else {
                "a non-separating handle changes the genus by one and keeps the components"
            };
            v.push(Violation::GenusBookkeeping {
                round: j,
                reason: format!(
                    "{expected}; found genus {} -> {} and {} -> {} components",
                    lo.genus(),
                    hi.genus(),
                    lo.component_count(),
                    hi.component_count()
                ),
            });
            continue;
        }
        match f.round_class(j) {
            Err(e) => v.push(Violation::InvalidGamma { round: j, reason: e.to_string() }),
            Ok(class) => {
                if class.is_zero() != round.separating {
                    v.push(Violation::SeparatingMismatch { round: j, declared: round.separating });
                }
            }
        }
        if round.gluing.is_some() {
            let sides = f.round_sides(j).expect("bookkeeping passed");
            if f.levels()[sides.lower].genus() <= 1 {
                report.warnings.push(format!(
                    "round[{j}]: gluing tag recorded across a genus <= 1 fiber, where gluings are not unique; not interpreted"
                ));
            }
        }
    }

    if let Some(FormParity::Even) = f.declared().form {
        for (i, &s) in f.sections().iter().enumerate() {
            if s % 2 != 0 {
                v.push(Violation::FormParityConflict { section: i, square: s });
            }
        }
    }

    if !v.is_empty() {
        return report;
    }

    // Parity checks need a structurally sound chain.
    let statuses = match round_parities(f) {
        Ok(s) => s,
        Err(e) => {
            v.push(Violation::InvalidGamma { round: 0, reason: e.to_string() });
            return report;
        }
    };
    for (j, status) in statuses.into_iter().enumerate() {
        let declared = f.rounds()[j].parity;
        match status {
            RoundParityStatus::Separating => {}
            RoundParityStatus::Undetermined => {
                if declared == DeclaredParity::Auto {
                    v.push(Violation::ParityUndetermined { round: j });
                }
            }
            RoundParityStatus::Computed(ParityClass::NotPreserved) => {
                v.push(Violation::ParityNotPreserved { round: j })
            }
            RoundParityStatus::Computed(class) => {
                let computed = if class == ParityClass::Twisted { Parity::Twisted } else { Parity::Untwisted };
                if let Some(d) = declared.fixed() {
                    if d != computed {
                        v.push(Violation::ParityMismatch { round: j, declared: d, computed });
                    }
                }
            }
        }
    }
    report
}
