//! Reader for the presentation file format.
//!
//! ```text
//! # the dihedral group of order 8
//! gens r0 r1
//! rel r0^2, r1^2
//! rel (r0 r1)^4
//! ```
//!
//! Statements are separated by newlines or `;`. A `rel` statement holds one
//! or more comma-separated words. Words are whitespace-separated generator
//! names with `(w)^k` grouping (`k` may be negative) and the commutator
//! shorthand `[a,b] = a⁻¹b⁻¹ab`; `[a,b,c]` means `[[a,b],c]`.

use super::presentation::Presentation;
use super::word::{Letter, Word};
use super::PresentationError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Caret,
    Minus,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Syntax { line, column, message: message.into() }
}

fn tokenize(src: &str, line: usize, col0: usize) -> Result<Vec<Spanned>, PresentationError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = col0 + i;
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '^' => Some(Tok::Caret),
            '-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse().map_err(|_| syntax(line, column, "integer too large"))?;
            out.push(Spanned { tok: Tok::Int(value), line, column });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Spanned { tok: Tok::Name(chars[start..i].iter().collect()), line, column });
        } else {
            return Err(syntax(line, column, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct WordParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    names: &'a [String],
    end: (usize, usize),
}

impl WordParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.column))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), PresentationError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            let (l, c) = self.here();
            Err(syntax(l, c, format!("expected {what}")))
        }
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut w = Word::empty();
        while let Some(t) = self.peek() {
            match t {
                Tok::RParen | Tok::RBracket | Tok::Comma => break,
                _ => w = w.concat(&self.factor()?),
            }
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        let atom = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(atom);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let (l, c) = self.here();
        match self.peek() {
            Some(Tok::Int(k)) => {
                let k = *k;
                self.pos += 1;
                Ok(atom.pow(if negative { -k } else { k }))
            }
            _ => Err(syntax(l, c, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Word, PresentationError> {
        let (line, column) = self.here();
        match self.peek().cloned() {
            Some(Tok::Name(name)) => {
                self.pos += 1;
                match self.names.iter().position(|n| *n == name) {
                    Some(g) => Ok(Word::from_letters(vec![Letter::new(g)])),
                    None => Err(PresentationError::UnknownGenerator { name, line, column }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(w)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let mut acc = self.word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                loop {
                    let next = self.word()?;
                    acc = Word::commutator(&acc, &next);
                    if self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBracket, "`]`")?;
                Ok(acc)
            }
            Some(_) => Err(syntax(line, column, "expected a generator, `(` or `[`")),
            None => Err(syntax(line, column, "unexpected end of statement")),
        }
    }
}

/// Parses the presentation file format.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut names: Option<Vec<String>> = None;
    // (raw word, line, column) for each relator
    let mut relators: Vec<(Word, usize, usize)> = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in content.split(';') {
            let col0 = offset + 1;
            offset += stmt.chars().count() + 1;
            let lead = stmt.chars().take_while(|c| c.is_whitespace()).count();
            let body: String = stmt.chars().skip(lead).collect();
            if body.trim().is_empty() {
                continue;
            }
            let keyword: String = body.chars().take_while(|c| !c.is_whitespace()).collect();
            let kw_len = keyword.chars().count();
            let rest: String = body.chars().skip(kw_len).collect();
            let rest_col = col0 + lead + kw_len;
            match keyword.as_str() {
                "gens" => {
                    if names.is_some() {
                        return Err(syntax(line, col0 + lead, "duplicate `gens` statement"));
                    }
                    let toks = tokenize(&rest, line, rest_col)?;
                    let mut list = Vec::new();
                    for t in toks {
                        match t.tok {
                            Tok::Name(n) if !list.contains(&n) => list.push(n),
                            Tok::Name(n) => {
                                return Err(syntax(t.line, t.column, format!("generator `{n}` declared twice")))
                            }
                            _ => return Err(syntax(t.line, t.column, "expected a generator name")),
                        }
                    }
                    if list.is_empty() {
                        return Err(PresentationError::NoGenerators);
                    }
                    names = Some(list);
                }
                "rel" => {
                    let Some(gen_names) = names.as_ref() else {
                        return Err(syntax(line, col0 + lead, "`rel` before `gens`"));
                    };
                    let toks = tokenize(&rest, line, rest_col)?;
                    let end = (line, col0 + lead + body.chars().count());
                    let mut p = WordParser { toks: &toks, pos: 0, names: gen_names, end };
                    loop {
                        let (l, c) = p.here();
                        let w = p.word()?;
                        if w.is_empty() {
                            return Err(syntax(l, c, "empty relator"));
                        }
                        relators.push((w, l, c));
                        match p.peek() {
                            None => break,
                            Some(Tok::Comma) => p.pos += 1,
                            Some(_) => {
                                let (l, c) = p.here();
                                return Err(syntax(l, c, "unbalanced `)` or `]`"));
                            }
                        }
                    }
                }
                other => {
                    return Err(syntax(line, col0 + lead, format!("unknown statement `{other}`")));
                }
            }
        }
    }

    let names = names.ok_or(PresentationError::NoGenerators)?;
    let positions: Vec<(usize, usize)> = relators.iter().map(|&(_, l, c)| (l, c)).collect();
    Presentation::new(names, relators.into_iter().map(|(w, _, _)| w).collect()).map_err(|e| match e {
        PresentationError::EmptyRelator { index } => {
            let (line, column) = positions[index];
            syntax(line, column, "relator is trivial after free reduction")
        }
        e => e,
    })
}
