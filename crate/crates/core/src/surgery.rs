//! Constructions on fibrations: moving critical points to the higher side,
//! broken fiber sums, connected-sum models, trading negative nodes for round
//! singularities, blow-downs and the standard example families.

use crate::algtop::{HomologyVector, IntMatrix};
use crate::error::{Error, Result};
use crate::fibration::{
    global_monodromy, Base, BrokenFibration, Chirality, Cycle, Declared, DeclaredParity, FormParity, LefschetzPiece,
    Parts, RoundCobordism, SimplifiedBLF,
};
use crate::surface::{CurveWord, Letter, MappingClassRep, SurfaceModel};

/// Moves every Lefschetz critical point of a directed fibration onto the
/// higher piece. Each cycle keeps its word, renumbered into the top fiber by
/// the inclusion that skips the handle each round cobordism adds; cycles from
/// lower levels come first, in their original order.
pub fn push_to_higher_side(f: &BrokenFibration) -> Result<BrokenFibration> {
    if f.base() != Base::Sphere {
        return Err(Error::unsupported("pushing critical points needs a fibration over the sphere"));
    }
    if !f.is_directed() || !f.has_connected_fibers() {
        return Err(Error::unsupported("pushing critical points needs a directed fibration with connected fibers"));
    }
    let mut p = f.clone().into_parts();
    let any_override = p.levels.iter().any(|l| l.monodromy.is_some());
    let mut carried: Vec<Cycle> = Vec::new();
    let mut carried_mono = MappingClassRep::identity(p.levels[0].genus());
    let top = p.levels.len() - 1;

    for i in 0..=top {
        let level = &mut p.levels[i];
        if any_override {
            carried_mono = carried_mono.then(&global_monodromy(level)?)?;
        }
        carried.append(&mut level.cycles);
        level.monodromy = None;
        if i == top {
            break;
        }
        let gamma = p.rounds[i].gamma.abelianize(p.levels[i + 1].genus())?;
        let k = single_handle(&gamma).ok_or_else(|| {
            Error::unsupported(format!(
                "round[{i}] curve {} does not lie in a single handle; cannot renumber cycles across it",
                p.rounds[i].gamma
            ))
        })?;
        for c in &mut carried {
            c.word = c.word.insert_handle(k);
        }
        if any_override {
            carried_mono = carried_mono.insert_handle(k)?;
        }
    }

    let top_level = &mut p.levels[top];
    top_level.cycles = carried;
    if any_override {
        top_level.monodromy = carried_mono.matrix().cloned();
    }
    BrokenFibration::from_parts(p)
}

/// [`push_to_higher_side`] for a single round cobordism, returning the
/// simplified form.
pub fn simplify(f: &BrokenFibration) -> Result<SimplifiedBLF> {
    SimplifiedBLF::try_from(push_to_higher_side(f)?)
}

fn single_handle(v: &HomologyVector) -> Option<usize> {
    match v.support_handles().as_slice() {
        [k] => Some(*k),
        _ => None,
    }
}

/// Inputs of a broken fiber sum along fibers of genus `g1 ≥ g2` (the sides are
/// swapped if given the other way round).
#[derive(Debug, Clone)]
pub struct BrokenFiberSumSpec {
    pub left: BrokenFibration,
    pub g1: usize,
    pub right: BrokenFibration,
    pub g2: usize,
    /// One attaching curve per elementary round cobordism, on the genus
    /// `max(g1, g2)` fiber. Unordered.
    pub gammas: Vec<CurveWord>,
    pub gluing: (Option<i64>, Option<i64>),
}

impl BrokenFiberSumSpec {
    pub fn new(left: BrokenFibration, g1: usize, right: BrokenFibration, g2: usize, gammas: Vec<CurveWord>) -> Self {
        Self { left, g1, right, g2, gammas, gluing: (None, None) }
    }
}

/// Cuts both fibrations at the chosen fibers and joins them through
/// `g1 − g2` elementary round cobordisms, one per curve.
///
/// The resulting chain reads, from the bottom: the right fibration ending at
/// its cut level, the intermediate trivial levels of the cobordism, then the
/// left fibration starting at its cut level. The chosen fibers must sit on end
/// levels of their chains. The curves are attached highest handle first, and
/// each one renumbers the handles below it.
pub fn broken_fiber_sum(spec: &BrokenFiberSumSpec) -> Result<BrokenFibration> {
    let (left, g1, right, g2, gluing) = if spec.g1 >= spec.g2 {
        (&spec.left, spec.g1, &spec.right, spec.g2, spec.gluing)
    } else {
        (&spec.right, spec.g2, &spec.left, spec.g1, (spec.gluing.1, spec.gluing.0))
    };
    if left.base() != Base::Sphere || right.base() != Base::Sphere {
        return Err(Error::unsupported("broken fiber sums are implemented over the sphere"));
    }
    let k = g1 - g2;
    if spec.gammas.len() != k {
        return Err(Error::invalid(format!(
            "summing genus {g1} with genus {g2} needs {k} attaching curves, got {}",
            spec.gammas.len()
        )));
    }
    for gamma in &spec.gammas {
        if gamma.abelianize(g1)?.is_zero() {
            return Err(Error::invalid(format!("attaching curve {gamma} is separating")));
        }
    }

    let left = orient(left, g1, End::Bottom)?;
    let right = orient(right, g2, End::Top)?;
    let rounds_w = elementary_rounds(&spec.gammas, g1)?;

    let mut l = left.clone().into_parts();
    let mut r = right.clone().into_parts();

    let mut levels = std::mem::take(&mut r.levels);
    let mut rounds = std::mem::take(&mut r.rounds);
    if k == 0 {
        let cut_r = levels.pop().expect("non-empty chain");
        let cut_l = l.levels.remove(0);
        levels.push(merge_levels(cut_r, cut_l)?);
    } else {
        for genus in g2 + 1..g1 {
            levels.push(LefschetzPiece::trivial(genus));
        }
        // `rounds_w` runs from the top of the cobordism down.
        let mut w: Vec<RoundCobordism> = rounds_w.into_iter().rev().collect();
        w[0].gluing = gluing.1;
        w[k - 1].gluing = gluing.0;
        rounds.extend(w);
    }
    levels.append(&mut l.levels);
    rounds.append(&mut l.rounds);

    let declared =
        Declared { sigma: left.signature().zip(right.signature()).map(|(a, b)| a + b), ..Declared::default() };
    BrokenFibration::from_parts(Parts {
        base: Base::Sphere,
        levels,
        rounds,
        sections: combine_sections(left.sections(), right.sections()),
        blowups: 0,
        base_points: l.base_points + r.base_points,
        declared,
    })
}

/// Orders the curves so that each is attached on a fiber where it is
/// expressible, and rewrites it in that fiber's numbering. Returned top first.
fn elementary_rounds(gammas: &[CurveWord], g1: usize) -> Result<Vec<RoundCobordism>> {
    let mut order: Vec<&CurveWord> = gammas.iter().collect();
    order.sort_by_key(|w| std::cmp::Reverse(w.max_handle()));
    // Original handle number of each handle of the current fiber.
    let mut alive: Vec<usize> = (1..=g1).collect();
    let mut out = Vec::with_capacity(order.len());
    for (i, gamma) in order.iter().enumerate() {
        let renumbered = renumber_onto(gamma, &alive).ok_or_else(|| {
            Error::unsupported(format!("attaching curve {gamma} meets a handle already surgered away"))
        })?;
        let class = renumbered.abelianize(alive.len())?;
        match single_handle(&class) {
            Some(h) => {
                alive.remove(h - 1);
            }
            None if i + 1 == order.len() => {}
            None => return Err(Error::unsupported(format!("attaching curve {gamma} does not lie in a single handle"))),
        }
        out.push(RoundCobordism::new(renumbered, DeclaredParity::Auto));
    }
    Ok(out)
}

fn renumber_onto(w: &CurveWord, alive: &[usize]) -> Option<CurveWord> {
    let letters = w
        .letters()
        .iter()
        .map(|l| alive.iter().position(|&h| h == l.handle).map(|p| Letter { handle: p + 1, ..*l }))
        .collect::<Option<Vec<_>>>()?;
    Some(CurveWord::new(letters))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum End {
    Bottom,
    Top,
}

/// Reverses the chain if needed so that a connected genus-`g` end level sits
/// at the requested end.
fn orient(f: &BrokenFibration, genus: usize, want: End) -> Result<BrokenFibration> {
    let fits = |l: &LefschetzPiece| l.fiber.is_connected() && l.genus() == genus;
    let (first, last) = (fits(f.lower()), fits(f.higher()));
    let keep = match want {
        End::Bottom => first,
        End::Top => last,
    };
    if keep {
        return Ok(f.clone());
    }
    if first || last {
        let mut p = f.clone().into_parts();
        p.levels.reverse();
        p.rounds.reverse();
        return BrokenFibration::from_parts(p);
    }
    Err(Error::unsupported(format!("no connected genus-{genus} fiber on an end level of the chain")))
}

fn merge_levels(below: LefschetzPiece, above: LefschetzPiece) -> Result<LefschetzPiece> {
    let monodromy = if below.monodromy.is_some() || above.monodromy.is_some() {
        global_monodromy(&below)?.then(&global_monodromy(&above)?)?.matrix().cloned()
    } else {
        None
    };
    let mut cycles = below.cycles;
    cycles.extend(above.cycles);
    Ok(LefschetzPiece { fiber: below.fiber, cycles, monodromy })
}

/// Sections glue by internal connected sum. A square-0 section on one side
/// supplies parallel copies for every section of the other; otherwise sections
/// pair off in order.
fn combine_sections(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if b.contains(&0) {
        return a.to_vec();
    }
    if a.contains(&0) {
        return b.to_vec();
    }
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Fibration on the connected sum: the two fibrations are stacked over the
/// same sphere with disconnected fibers, and a separating round cobordism
/// joins the two higher fibers over a disk at the top.
pub fn connected_sum_model(f1: &BrokenFibration, f2: &BrokenFibration) -> Result<BrokenFibration> {
    if f1.base() != Base::Sphere || f2.base() != Base::Sphere {
        return Err(Error::invalid("connected-sum model needs both fibrations over the sphere"));
    }
    if !f1.higher().fiber.is_connected() || !f2.higher().fiber.is_connected() {
        return Err(Error::unsupported("connected-sum model needs connected higher fibers"));
    }
    let (l, r) = (f1.clone().into_parts(), f2.clone().into_parts());
    let (m, n) = (l.levels.len() - 1, r.levels.len() - 1);
    let lm = &l.levels[m];
    let r0 = &r.levels[0];
    let rn = &r.levels[n];
    let g_lm = lm.genus();

    let mut levels = Vec::new();
    let mut rounds = Vec::new();
    // f1's chain, with f2's bottom fiber alongside.
    for (i, li) in l.levels.iter().enumerate().take(m) {
        levels.push(side_by_side(li, r0, true)?);
        rounds.push(l.rounds[i].clone());
    }
    // f2's chain inside f1's top region.
    for (j, rj) in r.levels.iter().enumerate().take(n) {
        let mut level = side_by_side(lm, rj, false)?;
        level.cycles = rj.cycles.iter().map(|c| shifted(c, g_lm)).collect();
        if rj.monodromy.is_some() {
            level.monodromy = MappingClassRep::identity(g_lm).direct_sum(&global_monodromy(rj)?).matrix().cloned();
        }
        levels.push(level);
        let mut round = r.rounds[j].clone();
        round.gamma = round.gamma.shift_handles(g_lm);
        rounds.push(round);
    }
    // Both tops side by side; their cycles move to the joining disk.
    levels.push(side_by_side(lm, rn, false)?);

    let mut top_cycles = lm.cycles.clone();
    top_cycles.extend(rn.cycles.iter().map(|c| shifted(c, g_lm)));
    let top_mono = if lm.monodromy.is_some() || rn.monodromy.is_some() {
        global_monodromy(lm)?.direct_sum(&global_monodromy(rn)?).matrix().cloned()
    } else {
        None
    };
    let top =
        LefschetzPiece { fiber: SurfaceModel::connected(g_lm + rn.genus()), cycles: top_cycles, monodromy: top_mono };
    rounds.push(RoundCobordism::separating(CurveWord::commutator_product(1..=g_lm)));
    levels.push(top);

    let declared = Declared {
        sigma: f1.signature().zip(f2.signature()).map(|(a, b)| a + b),
        b_plus: l.declared.b_plus.zip(r.declared.b_plus).map(|(a, b)| a + b),
        label: l.declared.label.as_ref().zip(r.declared.label.as_ref()).map(|(a, b)| format!("{a} # {b}")),
        form: match (f1.form_parity(), f2.form_parity()) {
            (Some(FormParity::Odd), _) | (_, Some(FormParity::Odd)) => Some(FormParity::Odd),
            (Some(FormParity::Even), Some(FormParity::Even)) => Some(FormParity::Even),
            _ => None,
        },
    };
    let mut sections = l.sections.clone();
    sections.extend_from_slice(&r.sections);
    BrokenFibration::from_parts(Parts {
        base: Base::Sphere,
        levels,
        rounds,
        sections,
        blowups: 0,
        base_points: l.base_points + r.base_points,
        declared,
    })
}

/// `a ⊔ b` as a level. With `keep_a_cycles` the level carries `a`'s cycles
/// (and monodromy, extended by the identity on `b`).
fn side_by_side(a: &LefschetzPiece, b: &LefschetzPiece, keep_a_cycles: bool) -> Result<LefschetzPiece> {
    let fiber = a.fiber.disjoint_union(&b.fiber);
    if !keep_a_cycles {
        return Ok(LefschetzPiece { fiber, cycles: Vec::new(), monodromy: None });
    }
    let monodromy = match &a.monodromy {
        Some(_) => global_monodromy(a)?.direct_sum(&MappingClassRep::identity(b.genus())).matrix().cloned(),
        None => None,
    };
    Ok(LefschetzPiece { fiber, cycles: a.cycles.clone(), monodromy })
}

fn shifted(c: &Cycle, offset: usize) -> Cycle {
    Cycle { word: c.word.shift_handles(offset), chirality: c.chirality }
}

/// Flattened cycle index (bottom level first) to `(level, index)`.
pub fn locate_cycle(f: &BrokenFibration, flat: usize) -> Option<(usize, usize)> {
    let mut rest = flat;
    for (li, level) in f.levels().iter().enumerate() {
        if rest < level.cycles.len() {
            return Some((li, rest));
        }
        rest -= level.cycles.len();
    }
    None
}

/// Replaces a negative node on an end level by a round cobordism with framing
/// −1 to a trivial piece of one less genus, on the blow-up. The node's
/// neighbourhood becomes the new end disk.
pub fn trade_negative_node(f: &BrokenFibration, flat_index: usize) -> Result<BrokenFibration> {
    if f.base() != Base::Sphere {
        return Err(Error::unsupported("trading nodes is implemented over the sphere"));
    }
    let (level, idx) =
        locate_cycle(f, flat_index).ok_or_else(|| Error::invalid(format!("no cycle with index {flat_index}")))?;
    let piece = &f.levels()[level];
    let cycle = &piece.cycles[idx];
    if cycle.chirality != Chirality::Negative {
        return Err(Error::invalid(format!("cycle {flat_index} is a positive critical point")));
    }
    piece.fiber.check_word(&cycle.word)?;
    let class = cycle.word.abelianize(piece.genus())?;
    if class.is_zero() {
        return Err(Error::unsupported("trading a negative node with a separating vanishing cycle"));
    }
    if piece.monodromy.is_some() {
        return Err(Error::unsupported("trading a node out of a piece with a declared monodromy matrix"));
    }
    let last = f.levels().len() - 1;
    let at_bottom = level == 0;
    if !at_bottom && level != last {
        return Err(Error::unsupported("the negative node must sit on an end level of the chain"));
    }

    let handle = cycle.word.letters()[0].handle;
    let comp = piece.fiber.component_of_handle(handle).expect("word checked");
    let mut comps = piece.fiber.components().to_vec();
    comps[comp] -= 1;
    let new_level = LefschetzPiece { fiber: SurfaceModel::new(comps)?, cycles: Vec::new(), monodromy: None };
    let round = RoundCobordism::new(cycle.word.clone(), DeclaredParity::Untwisted).with_framing(-1);

    let mut p = f.clone().into_parts();
    p.levels[level].cycles.remove(idx);
    if at_bottom {
        p.levels.insert(0, new_level);
        p.rounds.insert(0, round);
    } else {
        p.levels.push(new_level);
        p.rounds.push(round);
    }
    p.blowups += 1;
    p.declared.label = adjust_blowup_label(p.declared.label.as_deref(), 1);
    BrokenFibration::from_parts(p)
}

/// Blows down a section of square −1; the fibration becomes a pencil with one
/// more base point.
pub fn blow_down(f: &BrokenFibration, section: usize) -> Result<BrokenFibration> {
    let square =
        *f.sections().get(section).ok_or_else(|| Error::invalid(format!("no section with index {section}")))?;
    if square != -1 {
        return Err(Error::invalid(format!(
            "only a section of square -1 can be blown down, section {section} has square {square}"
        )));
    }
    let mut p = f.clone().into_parts();
    p.sections.remove(section);
    p.base_points += 1;
    p.blowups -= 1;
    p.declared.label = adjust_blowup_label(p.declared.label.as_deref(), -1);
    BrokenFibration::from_parts(p)
}

/// Blows up a base point, turning it back into a section of square −1.
pub fn blow_up_base_point(f: &BrokenFibration) -> Result<BrokenFibration> {
    if f.base_points() == 0 {
        return Err(Error::invalid("no base point to blow up"));
    }
    let mut p = f.clone().into_parts();
    p.sections.push(-1);
    p.base_points -= 1;
    p.blowups += 1;
    p.declared.label = adjust_blowup_label(p.declared.label.as_deref(), 1);
    BrokenFibration::from_parts(p)
}

/// Adds `delta` to the trailing `# n -CP^2` count of a label.
fn adjust_blowup_label(label: Option<&str>, delta: i64) -> Option<String> {
    let label = label?;
    let (base, count) = if let Some(base) = label.strip_suffix(" # -CP^2") {
        (base, 1)
    } else if let Some((base, tail)) = label.rsplit_once(" # ") {
        match tail.strip_suffix(" -CP^2").and_then(|n| n.parse::<i64>().ok()) {
            Some(n) => (base, n),
            None => (label, 0),
        }
    } else {
        (label, 0)
    };
    match count + delta {
        n if n < 0 => None,
        0 => Some(base.to_string()),
        1 => Some(format!("{base} # -CP^2")),
        n => Some(format!("{base} # {n} -CP^2")),
    }
}

/// Trivial genus-`g` lower piece, trivial genus-`(g+1)` higher piece, one
/// untwisted round cobordism along `a_{g+1}`, and a section of square `k`.
pub fn step_fibration(g: usize, k: i64) -> BrokenFibration {
    let round = RoundCobordism::new(CurveWord::new(vec![Letter::a(g + 1)]), DeclaredParity::Untwisted);
    let f = BrokenFibration::new(
        Base::Sphere,
        vec![LefschetzPiece::trivial(g), LefschetzPiece::trivial(g + 1)],
        vec![round],
    )
    .expect("two levels, one round");
    let even = k % 2 == 0;
    let (label, form) = if g == 0 {
        let bundle = if even { "S2xS2" } else { "S2x~S2" };
        (Some(format!("{bundle} # S1xS3")), Some(if even { FormParity::Even } else { FormParity::Odd }))
    } else if k == 0 {
        (Some(format!("S2xSigma_{g} # S1xS3")), Some(FormParity::Even))
    } else {
        (None, None)
    };
    f.with_sections(vec![k]).with_declared(Declared { sigma: Some(0), b_plus: Some(1), label, form })
}

/// Genus-1 higher piece with two critical points and monodromy
/// `[[-1, 2], [0, -1]]`, trivial sphere fibration below, a twisted round
/// cobordism along `a1`, and a section of square `k`.
pub fn example42_family(k: i64) -> BrokenFibration {
    let w = |s: &str| CurveWord::parse(s).expect("static word");
    let higher = LefschetzPiece {
        fiber: SurfaceModel::connected(1),
        cycles: vec![Cycle::positive(w("a1 b1")), Cycle::positive(w("a1 B1"))],
        monodromy: Some(IntMatrix::from_rows(&[vec![-1i64, 2], vec![0, -1]]).expect("static matrix")),
    };
    let round = RoundCobordism::new(w("a1"), DeclaredParity::Twisted);
    let f = BrokenFibration::new(Base::Sphere, vec![LefschetzPiece::trivial(0), higher], vec![round])
        .expect("two levels, one round");
    let even = k % 2 == 0;
    f.with_sections(vec![k]).with_declared(Declared {
        sigma: Some(0),
        b_plus: Some(1),
        label: Some(if even { "S2xS2" } else { "CP^2 # -CP^2" }.to_string()),
        form: Some(if even { FormParity::Even } else { FormParity::Odd }),
    })
}
