use std::fmt;

use num_bigint::BigInt;

use crate::algtop::HomologyVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

/// One signed generator `a_h`, `b_h` or an inverse (`A_h`, `B_h` in text).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub handle: usize,
    pub gen: Gen,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Gen, handle: usize, inverse: bool) -> Self {
        assert!(handle >= 1, "handles are numbered from 1");
        Self { handle, gen, inverse }
    }

    pub fn a(handle: usize) -> Self {
        Self::new(Gen::A, handle, false)
    }

    pub fn b(handle: usize) -> Self {
        Self::new(Gen::B, handle, false)
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }

    /// 0-based coordinate in the interleaved basis `a1, b1, a2, …`.
    pub fn coordinate(self) -> usize {
        2 * (self.handle - 1) + usize::from(self.gen == Gen::B)
    }

    pub fn from_coordinate(coord: usize, inverse: bool) -> Self {
        let gen = if coord.is_multiple_of(2) { Gen::A } else { Gen::B };
        Self::new(gen, coord / 2 + 1, inverse)
    }

    fn cancels(self, other: Letter) -> bool {
        self.handle == other.handle && self.gen == other.gen && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match (self.gen, self.inverse) {
            (Gen::A, false) => 'a',
            (Gen::A, true) => 'A',
            (Gen::B, false) => 'b',
            (Gen::B, true) => 'B',
        };
        write!(f, "{c}{}", self.handle)
    }
}

/// Syntax error inside a word, located by byte offset into the word text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSyntaxError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for WordSyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

/// A closed curve on a surface, written as a cyclically reduced word in the
/// standard generators of `π1(Σg)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CurveWord {
    letters: Vec<Letter>,
}

impl CurveWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters: cyclically_reduce(free_reduce(letters)) }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Parses `a1 b1 A1 B1`; uppercase is the inverse. Whitespace between
    /// tokens is optional.
    pub fn parse(text: &str) -> std::result::Result<Self, WordSyntaxError> {
        let bytes = text.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let (gen, inverse) = match c {
                b'a' => (Gen::A, false),
                b'A' => (Gen::A, true),
                b'b' => (Gen::B, false),
                b'B' => (Gen::B, true),
                _ => {
                    return Err(WordSyntaxError {
                        offset: i,
                        message: format!(
                            "expected a generator (a, b, A, B), found {:?}",
                            text[i..].chars().next().unwrap_or(' ')
                        ),
                    })
                }
            };
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let handle: usize = text[start..end].parse().map_err(|_| WordSyntaxError {
                offset: start,
                message: "expected a handle index after the generator letter".into(),
            })?;
            if handle == 0 {
                return Err(WordSyntaxError { offset: start, message: "handles are numbered from 1".into() });
            }
            letters.push(Letter::new(gen, handle, inverse));
            i = end;
        }
        Ok(Self::new(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_handle(&self) -> usize {
        self.letters.iter().map(|l| l.handle).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `u · self · u⁻¹`, reduced.
    pub fn conjugate(&self, u: &CurveWord) -> Self {
        let mut letters = u.letters.clone();
        letters.extend_from_slice(&self.letters);
        letters.extend(u.letters.iter().rev().map(|l| l.inv()));
        Self::new(letters)
    }

    /// Renumbers handles: every handle `h ≥ at` becomes `h + 1`.
    pub fn insert_handle(&self, at: usize) -> Self {
        self.map_handles(|h| if h >= at { h + 1 } else { h })
    }

    pub fn shift_handles(&self, offset: usize) -> Self {
        self.map_handles(|h| h + offset)
    }

    pub(crate) fn map_handles(&self, f: impl Fn(usize) -> usize) -> Self {
        Self { letters: self.letters.iter().map(|l| Letter { handle: f(l.handle), ..*l }).collect() }
    }

    pub fn check_genus(&self, genus: usize) -> Result<()> {
        match self.letters.iter().find(|l| l.handle > genus) {
            Some(l) => Err(Error::invalid(format!("generator {l} is out of range on a genus-{genus} surface"))),
            None => Ok(()),
        }
    }

    /// Exponent-sum vector of length `2g`.
    pub fn abelianize(&self, genus: usize) -> Result<HomologyVector> {
        self.check_genus(genus)?;
        let mut v = vec![BigInt::from(0); 2 * genus];
        for l in &self.letters {
            v[l.coordinate()] += if l.inverse { -1 } else { 1 };
        }
        Ok(HomologyVector::new(v))
    }

    /// `[a1,b1]·…·[ag,bg]`.
    pub fn surface_relator(genus: usize) -> Self {
        Self::commutator_product(1..=genus)
    }

    pub(crate) fn commutator_product(handles: impl IntoIterator<Item = usize>) -> Self {
        let mut letters = Vec::new();
        for h in handles {
            letters.extend([Letter::a(h), Letter::b(h), Letter::a(h).inv(), Letter::b(h).inv()]);
        }
        Self::new(letters)
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Exponent sums of a curve; see [`CurveWord::abelianize`].
pub fn abelianize_word(w: &CurveWord, genus: usize) -> Result<HomologyVector> {
    w.abelianize(genus)
}

fn free_reduce(letters: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last().is_some_and(|&p| p.cancels(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclically_reduce(mut letters: Vec<Letter>) -> Vec<Letter> {
    let mut start = 0;
    while letters.len() - start >= 2 && letters[start].cancels(letters[letters.len() - 1]) {
        start += 1;
        letters.pop();
    }
    letters.drain(..start);
    letters
}
