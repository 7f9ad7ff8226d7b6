//! The `.blf` text format.
//!
//! A document is a sequence of `name { key = value … }` blocks. Statements end
//! at `;` or a line break, and `#` starts a comment. The chain is written from
//! the bottom up as `lower`, then alternating `round` and `middle` blocks, then
//! `round` and `higher`; a fibration without round singularities has only a
//! `higher` block. `blf`, `sections` and `declared` may appear anywhere.
//!
//! ```text
//! blf { base = sphere }
//! lower { genus = 0 }
//! round { gamma = "a1"; parity = twisted }
//! higher {
//!   genus = 1
//!   cycles = ["a1 b1", "a1 B1"]      # -"b1" marks a negative node
//!   monodromy = [[-1, 2], [0, -1]]
//! }
//! sections { squares = [0] }
//! declared { sigma = 0; b_plus = 1; label = "S2xS2"; form = even }
//! ```
//!
//! Word ranges and the other semantic checks are left to
//! [`validate`](crate::fibration::validate). Manifold names are written in
//! ASCII: `CP^2`, `-CP^2` for the reversed orientation, `S2xS2`, `S2x~S2` for
//! the twisted bundle, `S1xS3`, `Sigma_g`.

mod lexer;
mod write;

pub use write::serialize;

use num_bigint::BigInt;

use crate::algtop::IntMatrix;
use crate::error::ParseError;
use crate::fibration::{
    Base, BrokenFibration, Chirality, Cycle, Declared, DeclaredParity, FormParity, LefschetzPiece, RoundCobordism,
};
use crate::surface::{CurveWord, SurfaceModel};
use lexer::{lex, Pos, Tok};

#[derive(Debug, Clone)]
enum Value {
    Int(BigInt),
    Str { text: String, negative: bool },
    Ident(String),
    List(Vec<(Value, Pos)>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "an integer",
            Value::Str { .. } => "a string",
            Value::Ident(_) => "a name",
            Value::List(_) => "a list",
        }
    }
}

struct Block {
    name: String,
    pos: Pos,
    fields: Vec<(String, Pos, Value, Pos)>,
    end: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.pos().error(format!("expected {expected}, found {}", self.peek().describe()))
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Tok::Newline | Tok::Semi) {
            self.next();
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Tok::Newline) {
            self.next();
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        if *self.peek() == tok {
            Ok(self.next().1)
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn blocks(&mut self) -> Result<Vec<Block>, ParseError> {
        let mut out = Vec::new();
        self.skip_separators();
        while *self.peek() != Tok::Eof {
            out.push(self.block()?);
            self.skip_separators();
        }
        Ok(out)
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        let pos = self.pos();
        let name = match self.peek() {
            Tok::Ident(n) if BLOCKS.contains(&n.as_str()) => n.clone(),
            Tok::Ident(n) => {
                return Err(pos.error(format!("unknown block `{n}`, expected one of {}", BLOCKS.join(", "))))
            }
            _ => return Err(self.unexpected("a block name")),
        };
        self.next();
        self.skip_newlines();
        self.expect(Tok::LBrace)?;
        let mut fields: Vec<(String, Pos, Value, Pos)> = Vec::new();
        loop {
            self.skip_separators();
            if *self.peek() == Tok::RBrace {
                let end = self.next().1;
                return Ok(Block { name, pos, fields, end });
            }
            let kpos = self.pos();
            let key = match self.peek() {
                Tok::Ident(k) => k.clone(),
                _ => return Err(self.unexpected("a key or `}`")),
            };
            if fields.iter().any(|(k, ..)| *k == key) {
                return Err(kpos.error(format!("duplicate key `{key}`")));
            }
            self.next();
            self.expect(Tok::Eq)?;
            let vpos = self.pos();
            let value = self.value()?;
            if !matches!(self.peek(), Tok::Newline | Tok::Semi | Tok::RBrace) {
                return Err(self.unexpected("`;`, a line break or `}`"));
            }
            fields.push((key, kpos, value, vpos));
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Int(s) => Ok(Value::Int(s.parse().expect("digits"))),
            Tok::Str(text) => Ok(Value::Str { text, negative: false }),
            Tok::Ident(s) => Ok(Value::Ident(s)),
            Tok::Minus | Tok::Plus => {
                let negative = tok == Tok::Minus;
                match self.next() {
                    (Tok::Int(s), _) => {
                        let n: BigInt = s.parse().expect("digits");
                        Ok(Value::Int(if negative { -n } else { n }))
                    }
                    (Tok::Str(text), _) => Ok(Value::Str { text, negative }),
                    (t, p) => Err(p.error(format!("expected a number or string after sign, found {}", t.describe()))),
                }
            }
            Tok::LBracket => {
                let mut items = Vec::new();
                self.skip_newlines();
                if *self.peek() == Tok::RBracket {
                    self.next();
                    return Ok(Value::List(items));
                }
                loop {
                    self.skip_newlines();
                    let p = self.pos();
                    items.push((self.value()?, p));
                    self.skip_newlines();
                    match self.next() {
                        (Tok::Comma, _) => {
                            self.skip_newlines();
                            if *self.peek() == Tok::RBracket {
                                self.next();
                                return Ok(Value::List(items));
                            }
                        }
                        (Tok::RBracket, _) => return Ok(Value::List(items)),
                        (t, p) => return Err(p.error(format!("expected `,` or `]`, found {}", t.describe()))),
                    }
                }
            }
            t => Err(pos.error(format!("expected a value, found {}", t.describe()))),
        }
    }
}

const BLOCKS: [&str; 7] = ["blf", "lower", "middle", "round", "higher", "sections", "declared"];

fn int(v: &Value, p: Pos) -> Result<i64, ParseError> {
    match v {
        Value::Int(n) => i64::try_from(n).map_err(|_| p.error("integer out of range")),
        other => Err(p.error(format!("expected an integer, found {}", other.kind()))),
    }
}

fn nonneg(v: &Value, p: Pos) -> Result<usize, ParseError> {
    let n = int(v, p)?;
    usize::try_from(n).map_err(|_| p.error("expected a non-negative integer"))
}

fn string(v: &Value, p: Pos) -> Result<String, ParseError> {
    match v {
        Value::Str { text, negative: false } => Ok(text.clone()),
        other => Err(p.error(format!("expected a string, found {}", other.kind()))),
    }
}

fn ident<'a>(v: &'a Value, p: Pos, allowed: &[&str]) -> Result<&'a str, ParseError> {
    match v {
        Value::Ident(s) if allowed.contains(&s.as_str()) => Ok(s),
        _ => Err(p.error(format!("expected one of {}", allowed.join(", ")))),
    }
}

fn list(v: &Value, p: Pos) -> Result<&[(Value, Pos)], ParseError> {
    match v {
        Value::List(items) => Ok(items),
        other => Err(p.error(format!("expected a list, found {}", other.kind()))),
    }
}

fn word(text: &str, p: Pos) -> Result<CurveWord, ParseError> {
    CurveWord::parse(text)
        .map_err(|e| Pos { line: p.line, col: p.col + 1 + e.offset }.error(format!("bad curve word: {}", e.message)))
}

fn unknown_key(block: &str, key: &str, p: Pos) -> ParseError {
    p.error(format!("unknown key `{key}` in `{block}` block"))
}

fn level(b: &Block) -> Result<LefschetzPiece, ParseError> {
    let mut fiber = None;
    let mut cycles = Vec::new();
    let mut monodromy = None;
    for (key, kp, v, vp) in &b.fields {
        match key.as_str() {
            "genus" => {
                if fiber.is_some() {
                    return Err(kp.error("give either `genus` or `components`"));
                }
                fiber = Some(SurfaceModel::connected(nonneg(v, *vp)?));
            }
            "components" => {
                if fiber.is_some() {
                    return Err(kp.error("give either `genus` or `components`"));
                }
                let gs = list(v, *vp)?.iter().map(|(x, p)| nonneg(x, *p)).collect::<Result<Vec<_>, _>>()?;
                fiber = Some(SurfaceModel::new(gs).map_err(|_| vp.error("a fiber needs at least one component"))?);
            }
            "cycles" => {
                for (x, p) in list(v, *vp)? {
                    match x {
                        Value::Str { text, negative } => cycles.push(Cycle {
                            word: word(text, *p)?,
                            chirality: if *negative { Chirality::Negative } else { Chirality::Positive },
                        }),
                        other => return Err(p.error(format!("expected a curve word, found {}", other.kind()))),
                    }
                }
            }
            "monodromy" => {
                let mut rows = Vec::new();
                for (row, rp) in list(v, *vp)? {
                    let mut r = Vec::new();
                    for (x, xp) in list(row, *rp)? {
                        match x {
                            Value::Int(n) => r.push(n.clone()),
                            other => return Err(xp.error(format!("expected an integer, found {}", other.kind()))),
                        }
                    }
                    rows.push(r);
                }
                monodromy = Some(IntMatrix::from_rows(&rows).map_err(|e| vp.error(e.to_string()))?);
            }
            _ => return Err(unknown_key(&b.name, key, *kp)),
        }
    }
    let fiber = fiber.ok_or_else(|| b.end.error(format!("`{}` block needs `genus` or `components`", b.name)))?;
    Ok(LefschetzPiece { fiber, cycles, monodromy })
}

fn round(b: &Block) -> Result<RoundCobordism, ParseError> {
    let mut gamma = None;
    let mut r = RoundCobordism::new(CurveWord::empty(), DeclaredParity::Auto);
    for (key, kp, v, vp) in &b.fields {
        match key.as_str() {
            "gamma" => gamma = Some(word(&string(v, *vp)?, *vp)?),
            "parity" => {
                r.parity = match ident(v, *vp, &["auto", "twisted", "untwisted"])? {
                    "auto" => DeclaredParity::Auto,
                    "twisted" => DeclaredParity::Twisted,
                    _ => DeclaredParity::Untwisted,
                }
            }
            "framing" => r.framing = int(v, *vp)?,
            "separating" => r.separating = ident(v, *vp, &["true", "false"])? == "true",
            "gluing" => r.gluing = Some(int(v, *vp)?),
            _ => return Err(unknown_key("round", key, *kp)),
        }
    }
    r.gamma = gamma.ok_or_else(|| b.end.error("`round` block needs `gamma`"))?;
    Ok(r)
}

/// Parses a `.blf` document.
pub fn parse(text: &str) -> Result<BrokenFibration, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let blocks = p.blocks()?;
    if blocks.is_empty() {
        return Err(Pos { line: 1, col: 1 }.error("empty document: expected a `higher` block"));
    }

    let mut base = Base::Sphere;
    let (mut blowups, mut base_points) = (0i64, 0u32);
    let mut sections = Vec::new();
    let mut declared = Declared::default();
    let mut levels = Vec::new();
    let mut rounds = Vec::new();
    // Chain blocks must alternate level, round, level, … starting at `lower`.
    let mut seen_singletons: Vec<&str> = Vec::new();
    let mut last_chain: Option<&Block> = None;

    for b in &blocks {
        let name = b.name.as_str();
        if matches!(name, "blf" | "sections" | "declared" | "lower" | "higher") {
            if seen_singletons.contains(&name) {
                return Err(b.pos.error(format!("duplicate `{name}` block")));
            }
            seen_singletons.push(name);
        }
        match name {
            "blf" => {
                for (key, kp, v, vp) in &b.fields {
                    match key.as_str() {
                        "base" => {
                            base = match ident(v, *vp, &["sphere", "torus"])? {
                                "sphere" => Base::Sphere,
                                _ => Base::Torus,
                            }
                        }
                        "blowups" => blowups = int(v, *vp)?,
                        "base_points" => {
                            base_points = u32::try_from(int(v, *vp)?).map_err(|_| vp.error("expected a count"))?
                        }
                        _ => return Err(unknown_key("blf", key, *kp)),
                    }
                }
            }
            "sections" => {
                for (key, kp, v, vp) in &b.fields {
                    match key.as_str() {
                        "squares" => {
                            sections = list(v, *vp)?.iter().map(|(x, p)| int(x, *p)).collect::<Result<_, _>>()?
                        }
                        _ => return Err(unknown_key("sections", key, *kp)),
                    }
                }
            }
            "declared" => {
                for (key, kp, v, vp) in &b.fields {
                    match key.as_str() {
                        "sigma" => declared.sigma = Some(int(v, *vp)?),
                        "b_plus" => declared.b_plus = Some(int(v, *vp)?),
                        "label" => declared.label = Some(string(v, *vp)?),
                        "form" => {
                            declared.form = Some(match ident(v, *vp, &["even", "odd"])? {
                                "even" => FormParity::Even,
                                _ => FormParity::Odd,
                            })
                        }
                        _ => return Err(unknown_key("declared", key, *kp)),
                    }
                }
            }
            "round" => {
                match last_chain.map(|l| l.name.as_str()) {
                    Some("lower" | "middle") => {}
                    Some("round") => return Err(b.pos.error("expected a `middle` or `higher` block between rounds")),
                    Some(_) => return Err(b.pos.error("`round` after `higher`")),
                    None => return Err(b.pos.error("expected a `lower` block before the first `round`")),
                }
                rounds.push(round(b)?);
                last_chain = Some(b);
            }
            _ => {
                let ok = matches!(
                    (name, last_chain.map(|l| l.name.as_str())),
                    ("lower" | "higher", None) | ("middle" | "higher", Some("round"))
                );
                if !ok {
                    let msg = match last_chain.map(|l| l.name.as_str()) {
                        Some("lower" | "middle") => format!("expected a `round` block before `{name}`"),
                        Some("higher") => format!("`{name}` after `higher`"),
                        None => format!("`{name}` cannot start the chain"),
                        Some(_) => format!("`{name}` cannot follow a round"),
                    };
                    return Err(b.pos.error(msg));
                }
                levels.push(level(b)?);
                last_chain = Some(b);
            }
        }
    }
    match last_chain {
        Some(b) if b.name == "higher" => {}
        Some(b) => return Err(b.end.error("the chain must end with a `higher` block")),
        None => return Err(blocks[blocks.len() - 1].end.error("missing `higher` block")),
    }
    let f = BrokenFibration::new(base, levels, rounds).expect("chain shape checked");
    Ok(f.with_sections(sections).with_declared(declared).with_blowups(blowups, base_points))
}
