//! Euler characteristic, signature bookkeeping, fundamental group and first
//! homology of fibration data, and a homeomorphism-type report for simply
//! connected totals.

mod presentation;

pub use presentation::{homology_from_presentation, tietze_simplify, AbelianGroup, GroupPresentation};

use std::fmt::{self, Write};

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::fibration::{Base, BrokenFibration, FormParity};
use crate::surface::CurveWord;

/// Over the sphere: `χ(bottom fiber) + χ(top fiber) + #cycles`, a single piece
/// counting its fiber twice. Over the torus only the critical points count.
/// Each base point of a pencil removes one.
pub fn euler_characteristic(f: &BrokenFibration) -> Result<i64> {
    let n = f.cycle_count() as i64;
    let bp = i64::from(f.base_points());
    Ok(match f.base() {
        Base::Sphere => f.lower().fiber.euler_characteristic() + f.higher().fiber.euler_characteristic() + n - bp,
        Base::Torus => n - bp,
    })
}

/// Totals of a broken fiber sum from the summands:
/// `e = e1 + e2 + 2(g1 + g2) − 4`, `σ = σ1 + σ2`, `χ_h = (e + σ)/4`.
///
/// Both fibers must have positive genus unless `allow_genus_zero` is set.
pub fn broken_sum_invariants(
    (e1, s1, g1): (i64, i64, i64),
    (e2, s2, g2): (i64, i64, i64),
    allow_genus_zero: bool,
) -> Result<(i64, i64, Rational64)> {
    if g1 < 0 || g2 < 0 {
        return Err(Error::invalid("fiber genus must be non-negative"));
    }
    if !allow_genus_zero && (g1 == 0 || g2 == 0) {
        return Err(Error::invalid("broken fiber sums are taken along fibers of positive genus"));
    }
    let e = e1 + e2 + 2 * (g1 + g2) - 4;
    let sigma = s1 + s2;
    Ok((e, sigma, Rational64::new(e + sigma, 4)))
}

/// Whether a broken sum along genera `g1, g2` passes the almost-complex
/// criterion `k ≡ g1 + g2 ≡ 0 (mod 2)` with `k = g1 − g2`.
pub fn almost_complex_parity(g1: i64, g2: i64) -> bool {
    (g1 - g2) % 2 == 0 && (g1 + g2) % 2 == 0
}

/// `π1` of the total space as a quotient of the top fiber's surface group by
/// the vanishing cycles, the round cobordism curves and `extra` relators.
/// Words from lower levels are carried up to the top fiber.
///
/// The recipe needs a section to kill the base; without one it refuses
/// unless `assume_section` is set.
pub fn pi1_presentation(f: &BrokenFibration, extra: &[CurveWord], assume_section: bool) -> Result<GroupPresentation> {
    if f.base() != Base::Sphere {
        return Err(Error::unsupported("fundamental group recipe is implemented over the sphere"));
    }
    if f.sections().is_empty() && !assume_section {
        return Err(Error::unsupported("no section: the fundamental group is not determined by the fibers"));
    }
    if !f.is_directed() || !f.has_connected_fibers() {
        return Err(Error::unsupported("fundamental group recipe needs a directed fibration with connected fibers"));
    }
    let top = f.levels().len() - 1;
    let g = f.higher().genus();
    // Handle inserted when crossing round j upwards.
    let mut inserts = Vec::with_capacity(top);
    for j in 0..top {
        let class = f.round_class(j)?;
        match class.support_handles().as_slice() {
            [k] => inserts.push(*k),
            _ => {
                return Err(Error::unsupported(format!(
                    "round[{j}] curve {} does not lie in a single handle",
                    f.rounds()[j].gamma
                )))
            }
        }
    }
    let lift = |w: &CurveWord, level: usize| inserts[level..].iter().fold(w.clone(), |w, &k| w.insert_handle(k));

    let mut words: Vec<CurveWord> = Vec::new();
    let mut push = |w: CurveWord| {
        if !words.contains(&w) {
            words.push(w);
        }
    };
    for (i, level) in f.levels().iter().enumerate() {
        for c in &level.cycles {
            push(lift(&c.word, i));
        }
    }
    for (j, r) in f.rounds().iter().enumerate() {
        push(lift(&r.gamma, j + 1));
    }
    for w in extra {
        push(w.clone());
    }
    if g > 0 {
        push(CurveWord::surface_relator(g));
    }
    GroupPresentation::from_surface_words(g, &words)
}

/// Summary of the invariants of a fibration's total space. Fields that
/// cannot be determined from the data are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub e: i64,
    pub sigma: Option<i64>,
    pub b_plus: Option<i64>,
    /// Simplified presentation of `π1`.
    pub pi1: Option<GroupPresentation>,
    pub h1: Option<AbelianGroup>,
    pub label: Option<String>,
    pub form: Option<FormParity>,
    pub near_symplectic: bool,
}

impl InvariantRecord {
    /// `(e + σ)/4`.
    pub fn chi_h(&self) -> Option<Rational64> {
        self.sigma.map(|s| Rational64::new(self.e + s, 4))
    }

    pub fn pi1_trivial(&self) -> bool {
        self.pi1.as_ref().is_some_and(GroupPresentation::is_trivial)
    }

    /// Stable `key=value` lines.
    pub fn to_key_value(&self) -> String {
        fn opt<T: fmt::Display>(x: &Option<T>) -> String {
            x.as_ref().map_or_else(|| "unknown".to_string(), ToString::to_string)
        }
        let pi1 = match &self.pi1 {
            Some(p) if p.is_trivial() => "trivial".to_string(),
            Some(p) => p.to_string(),
            None => "unknown".to_string(),
        };
        let mut s = String::new();
        let _ = writeln!(s, "e={}", self.e);
        let _ = writeln!(s, "sigma={}", opt(&self.sigma));
        let _ = writeln!(s, "chi_h={}", opt(&self.chi_h()));
        let _ = writeln!(s, "b_plus={}", opt(&self.b_plus));
        let _ = writeln!(s, "pi1={pi1}");
        let _ = writeln!(s, "h1={}", opt(&self.h1));
        let _ = writeln!(s, "form={}", opt(&self.form));
        let _ = writeln!(s, "label={}", opt(&self.label));
        let _ = writeln!(s, "near_symplectic={}", self.near_symplectic);
        s
    }
}

/// Computes the record. `π1` and `H1` are left unknown when the recipe does
/// not apply. `b⁺` is taken from the declared data, otherwise derived from
/// `e`, `σ` and `b1` by Poincaré duality.
pub fn compute_invariants(f: &BrokenFibration) -> Result<InvariantRecord> {
    let e = euler_characteristic(f)?;
    let sigma = f.signature();
    let pi1 = pi1_presentation(f, &[], false).ok().map(|p| tietze_simplify(&p));
    let h1 = pi1.as_ref().map(homology_from_presentation);
    let b_plus = f.declared().b_plus.or_else(|| {
        let b1 = h1.as_ref()?.betti as i64;
        let twice = e - 2 + 2 * b1 + sigma?;
        (twice % 2 == 0).then_some(twice / 2)
    });
    Ok(InvariantRecord {
        e,
        sigma,
        b_plus,
        pi1,
        h1,
        label: f.declared().label.clone(),
        form: f.form_parity(),
        near_symplectic: f.admits_near_symplectic(),
    })
}

fn multiple(n: i64, name: &str) -> String {
    if n == 1 {
        name.to_string()
    } else {
        format!("{n} {name}")
    }
}

/// Homeomorphism type of a simply connected total space from `e`, `σ` and
/// the parity of the intersection form. Odd indefinite forms name the
/// connected sum of `CP^2`s and `-CP^2`s; even forms with `σ = 0` name
/// `S2xS2` sums as a candidate; anything else gets the numeric data only.
pub fn homeo_report(r: &InvariantRecord) -> String {
    if !r.pi1_trivial() {
        return "inconclusive: fundamental group not shown to be trivial\n".to_string();
    }
    let Some(sigma) = r.sigma else {
        return "inconclusive: signature unknown\n".to_string();
    };
    let b2 = r.e - 2;
    if b2 < 0 || (b2 + sigma) % 2 != 0 || sigma.abs() > b2 {
        return format!("inconclusive: e={} and sigma={sigma} are inconsistent\n", r.e);
    }
    let (bp, bm) = ((b2 + sigma) / 2, (b2 - sigma) / 2);
    let mut s = format!("b2={b2}\nb_plus={bp}\nb_minus={bm}\n");
    let form = r.form.map_or_else(|| "unknown".to_string(), |f| f.to_string());
    let _ = writeln!(s, "form={form}");
    match r.form {
        Some(FormParity::Odd) if bp > 0 && bm > 0 => {
            let _ = writeln!(s, "homeomorphic to {} # {}", multiple(bp, "CP^2"), multiple(bm, "-CP^2"));
        }
        Some(FormParity::Even) if sigma == 0 && bp > 0 => {
            let _ = writeln!(s, "candidate {}", multiple(bp, "S2xS2"));
        }
        _ => {}
    }
    s
}
