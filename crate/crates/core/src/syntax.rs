//! Shared lexer for the ASCII formula grammars.
//!
//! Atoms are `[a-z][a-z0-9_]*`; `!` `&` `|` `->` are the connectives, `T` and
//! `F` the constants, and `X`, `^`, digits serve the next-time fragment.

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Atom(String),
    Not,
    And,
    Or,
    Arrow,
    Top,
    Bottom,
    LParen,
    RParen,
    Next,
    Caret,
    Num(u32),
    End,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Atom(a) => format!("atom `{a}`"),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Top => "`T`".into(),
            Tok::Bottom => "`F`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Next => "`X`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Num(n) => format!("number {n}"),
            Tok::End => "end of input".into(),
        }
    }
}

/// Token plus its 1-based starting column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub tok: Tok,
    pub col: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'T' => Tok::Top,
            'F' => Tok::Bottom,
            'X' => Tok::Next,
            '^' => Tok::Caret,
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    return Err(ParseError::new("expected `->`", col));
                }
            }
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                let n = digits.parse().map_err(|_| ParseError::new("number too large", col))?;
                Tok::Num(n)
            }
            'a'..='z' => {
                let start = i;
                while i + 1 < chars.len() && matches!(chars[i + 1], 'a'..='z' | '0'..='9' | '_') {
                    i += 1;
                }
                Tok::Atom(chars[start..=i].iter().collect())
            }
            other => return Err(ParseError::new(format!("unexpected character `{other}`"), col)),
        };
        out.push(Spanned { tok, col });
        i += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        col: chars.len() + 1,
    });
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Cursor {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<Spanned, ParseError> {
        let t = self.next();
        if &t.tok == tok {
            Ok(t)
        } else {
            Err(unexpected(&t, &tok.describe()))
        }
    }

    pub fn finish(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::End {
            Ok(())
        } else {
            Err(unexpected(&t, "end of input"))
        }
    }
}

pub fn unexpected(t: &Spanned, wanted: &str) -> ParseError {
    ParseError::new(format!("expected {wanted}, found {}", t.tok.describe()), t.col)
}

/// Parse a comma-separated atom list such as `p,q,r`.
pub fn parse_atom_list(text: &str) -> Result<Vec<String>, ParseError> {
    let mut out: Vec<String> = Vec::new();
    for (i, raw) in text.split(',').enumerate() {
        let name = raw.trim();
        let ok = name.chars().next().is_some_and(|c| c.is_ascii_lowercase())
            && name
                .chars()
                .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if !ok {
            return Err(ParseError::new(format!("invalid atom name `{name}`"), i + 1));
        }
        if out.iter().any(|a| a == name) {
            return Err(ParseError::new(format!("duplicate atom `{name}`"), i + 1));
        }
        out.push(name.to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_columns() {
        let toks = tokenize("p1 & !q -> X^2 r").unwrap();
        let kinds: Vec<Tok> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Atom("p1".into()),
                Tok::And,
                Tok::Not,
                Tok::Atom("q".into()),
                Tok::Arrow,
                Tok::Next,
                Tok::Caret,
                Tok::Num(2),
                Tok::Atom("r".into()),
                Tok::End
            ]
        );
        assert_eq!(toks[4].col, 9);
        assert_eq!(toks.last().unwrap().col, 17);
    }

    #[test]
    fn bad_characters() {
        assert_eq!(tokenize("p - q").unwrap_err().column, 3);
        assert_eq!(tokenize("p $").unwrap_err().column, 3);
    }

    #[test]
    fn atom_lists() {
        assert_eq!(parse_atom_list("p, q").unwrap(), vec!["p", "q"]);
        assert!(parse_atom_list("p,p").is_err());
        assert!(parse_atom_list("P").is_err());
    }
}
