use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algtop::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::surface::{CurveWord, Gen};

/// A finitely presented group. Relators are words in signed 1-based
/// generator indices: `k` is the `k`-th generator, `-k` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(names: Vec<String>, relators: Vec<Vec<i64>>) -> Result<Self> {
        let n = names.len() as i64;
        for r in &relators {
            if let Some(bad) = r.iter().find(|&&x| x == 0 || x.abs() > n) {
                return Err(Error::invalid(format!("relator letter {bad} out of range for {n} generators")));
            }
        }
        Ok(Self { names, relators })
    }

    /// Generators `a1, b1, …, ag`, with curve words as relators.
    pub fn from_surface_words(genus: usize, words: &[CurveWord]) -> Result<Self> {
        let names = (1..=genus).flat_map(|h| [format!("a{h}"), format!("b{h}")]).collect();
        let mut relators = Vec::with_capacity(words.len());
        for w in words {
            w.check_genus(genus)?;
            relators.push(
                w.letters()
                    .iter()
                    .map(|l| {
                        let k = 2 * l.handle as i64 - i64::from(l.gen == Gen::A);
                        if l.inverse {
                            -k
                        } else {
                            k
                        }
                    })
                    .collect(),
            );
        }
        Self::new(names, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }

    /// No generators: the trivial group.
    pub fn is_trivial(&self) -> bool {
        self.names.is_empty()
    }

    fn letter(&self, x: i64) -> String {
        let name = &self.names[(x.unsigned_abs() - 1) as usize];
        if x > 0 {
            name.clone()
        } else {
            format!("{name}^-1")
        }
    }
}

impl fmt::Display for GroupPresentation {
    /// `<a1, b1 | a1 b1 a1^-1 b1^-1>`; the empty relator prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.names.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            write!(f, "{}", if i == 0 { " " } else { ", " })?;
            if r.is_empty() {
                write!(f, "1")?;
            } else {
                let letters: Vec<String> = r.iter().map(|&x| self.letter(x)).collect();
                write!(f, "{}", letters.join(" "))?;
            }
        }
        write!(f, ">")
    }
}

fn free_reduce(w: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(w: &[i64]) -> Vec<i64> {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn invert(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|x| -x).collect()
}

/// Least rotation of `w` or its inverse; equal keys mean the relators are
/// conjugate up to inversion.
fn cyclic_key(w: &[i64]) -> Vec<i64> {
    let inv = invert(w);
    (0..w.len())
        .flat_map(|i| {
            [
                w[i..].iter().chain(&w[..i]).copied().collect::<Vec<_>>(),
                inv[i..].iter().chain(&inv[..i]).copied().collect(),
            ]
        })
        .min()
        .unwrap_or_default()
}

/// Deterministic Tietze simplification. Each round cyclically reduces the
/// relators, drops empty ones and those repeating an earlier relator up to
/// rotation and inversion, then looks for the lowest-index generator
/// occurring exactly once in some relator (the first such relator), solves
/// for it and substitutes it everywhere. Stops when no generator qualifies.
pub fn tietze_simplify(p: &GroupPresentation) -> GroupPresentation {
    let mut names = p.names.clone();
    let mut rels: Vec<Vec<i64>> = p.relators.clone();
    loop {
        let mut seen = std::collections::HashSet::new();
        rels = rels.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty() && seen.insert(cyclic_key(r))).collect();

        let found = (1..=names.len() as i64)
            .find_map(|g| rels.iter().position(|r| r.iter().filter(|x| x.abs() == g).count() == 1).map(|ri| (g, ri)));
        let Some((g, ri)) = found else { break };

        let r = rels.remove(ri);
        let pos = r.iter().position(|x| x.abs() == g).expect("occurs once");
        // Rotate so the generator leads: x^e · w = 1.
        let rotated: Vec<i64> = r[pos..].iter().chain(&r[..pos]).copied().collect();
        let rest = &rotated[1..];
        let value = if rotated[0] > 0 { invert(rest) } else { rest.to_vec() };
        let value_inv = invert(&value);

        let renumber = |x: i64| if x.abs() > g { x - x.signum() } else { x };
        rels = rels
            .iter()
            .map(|w| {
                let mut out = Vec::with_capacity(w.len());
                for &x in w {
                    if x == g {
                        out.extend(value.iter().map(|&y| renumber(y)));
                    } else if x == -g {
                        out.extend(value_inv.iter().map(|&y| renumber(y)));
                    } else {
                        out.push(renumber(x));
                    }
                }
                out
            })
            .collect();
        names.remove((g - 1) as usize);
    }
    GroupPresentation { names, relators: rels }
}

/// A finitely generated abelian group `Z^betti ⊕ ⊕ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub betti: usize,
    /// Invariant factors greater than 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    /// `Z^2 + Z/2`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianization: the cokernel of the relator exponent-sum matrix.
pub fn homology_from_presentation(p: &GroupPresentation) -> AbelianGroup {
    let n = p.generator_count();
    if n == 0 {
        return AbelianGroup { betti: 0, torsion: Vec::new() };
    }
    if p.relators.is_empty() {
        return AbelianGroup { betti: n, torsion: Vec::new() };
    }
    let mut m = IntMatrix::zeros(p.relators.len(), n);
    for (i, r) in p.relators.iter().enumerate() {
        for &x in r {
            let j = (x.unsigned_abs() - 1) as usize;
            m[(i, j)] += if x > 0 { BigInt::one() } else { -BigInt::one() };
        }
    }
    let snf = smith_normal_form(&m);
    let factors = snf.invariant_factors();
    AbelianGroup {
        betti: n - factors.len(),
        torsion: factors.into_iter().filter(|t| !t.is_one() && !t.is_zero()).collect(),
    }
}
