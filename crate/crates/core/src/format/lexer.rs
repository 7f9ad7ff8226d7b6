use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Eq,
    Semi,
    Newline,
    Minus,
    Plus,
    Eof,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("integer {s}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Minus => "`-`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub(super) fn error(self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, msg)
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next();
        if c == Some('\n') {
            self.pos.line += 1;
            self.pos.col = 1;
        } else if c.is_some() {
            self.pos.col += 1;
        }
        c
    }
}

/// Splits the text into tokens. `#` starts a comment outside strings.
pub(super) fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut cur = Cursor { chars: text.chars().peekable(), pos: Pos { line: 1, col: 1 } };
    while let Some(c) = cur.peek() {
        let pos = cur.pos;
        match c {
            '\n' => {
                cur.bump();
                out.push((Tok::Newline, pos));
            }
            c if c.is_whitespace() => {
                cur.bump();
            }
            '#' => {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
            }
            '{' | '}' | '[' | ']' | ',' | '=' | ';' | '-' | '+' => {
                cur.bump();
                let tok = match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    ';' => Tok::Semi,
                    '-' => Tok::Minus,
                    _ => Tok::Plus,
                };
                out.push((tok, pos));
            }
            '"' => {
                cur.bump();
                let mut s = String::new();
                loop {
                    let here = cur.pos;
                    match cur.bump() {
                        None | Some('\n') => return Err(pos.error("unterminated string")),
                        Some('"') => break,
                        Some('\\') => match cur.bump() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(here.error("unknown escape in string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                out.push((Tok::Str(s), pos));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while cur.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.extend(cur.bump());
                }
                out.push((Tok::Int(s), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while cur.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    s.extend(cur.bump());
                }
                out.push((Tok::Ident(s), pos));
            }
            other => return Err(pos.error(format!("unexpected character {other:?}"))),
        }
    }
    out.push((Tok::Eof, cur.pos));
    Ok(out)
}
