use thiserror::Error;

use super::{LoopProgram, Stmt, Var, MAX_ARITY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: arity declaration `{text}` is not a natural number up to {MAX_ARITY}")]
    Arity { line: usize, col: usize, text: String },
}

impl ParseError {
    fn at(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError::Syntax { line: pos.line, col: pos.col, msg: msg.into() }
    }

    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. } | ParseError::Arity { line, col, .. } => (*line, *col),
        }
    }
}

/// A parsed program header and body, before dialect checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub arity: usize,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Eq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Eq => "`=`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Num(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Word(chars[start..i].iter().collect()), pos));
            continue;
        }
        return Err(ParseError::at(pos, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    allow_while: bool,
}

const KEYWORDS: [&str; 5] = ["fn", "clear", "inc", "loop", "while"];

impl Parser {
    fn peek(&self) -> Option<&(Tok, Pos)> {
        self.toks.get(self.at)
    }

    fn pos(&self) -> Pos {
        self.peek().map(|t| t.1).unwrap_or(self.end)
    }

    fn next(&mut self, what: &str) -> Result<(Tok, Pos), ParseError> {
        match self.toks.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::at(self.end, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Pos, ParseError> {
        let want = tok.describe();
        let (got, pos) = self.next(&want)?;
        if got == tok {
            Ok(pos)
        } else {
            Err(ParseError::at(pos, format!("expected {want}, found {}", got.describe())))
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        let (tok, pos) = self.next("a variable")?;
        match tok {
            Tok::Word(w) => parse_var(&w).ok_or_else(|| {
                ParseError::at(pos, format!("expected a variable `xN`, found `{w}`"))
            }),
            other => Err(ParseError::at(pos, format!("expected a variable, found {}", other.describe()))),
        }
    }

    fn program(&mut self) -> Result<Source, ParseError> {
        let (tok, pos) = self.next("`fn`")?;
        if tok != Tok::Word("fn".into()) {
            return Err(ParseError::at(pos, format!("expected `fn`, found {}", tok.describe())));
        }
        let (tok, pos) = self.next("a program name")?;
        let name = match tok {
            Tok::Word(w) if !KEYWORDS.contains(&w.as_str()) => w,
            other => {
                return Err(ParseError::at(pos, format!("expected a program name, found {}", other.describe())))
            }
        };
        self.expect(Tok::LParen)?;
        let (tok, pos) = self.next("the arity")?;
        let arity = match tok {
            Tok::Num(n) => match n.parse::<usize>() {
                Ok(k) if k <= MAX_ARITY => k,
                _ => return Err(ParseError::Arity { line: pos.line, col: pos.col, text: n }),
            },
            Tok::Word(w) => return Err(ParseError::Arity { line: pos.line, col: pos.col, text: w }),
            other => {
                return Err(ParseError::at(pos, format!("expected the arity, found {}", other.describe())))
            }
        };
        self.expect(Tok::RParen)?;
        let body = self.block()?;
        if let Some((tok, pos)) = self.peek() {
            return Err(ParseError::at(*pos, format!("trailing input starting at {}", tok.describe())));
        }
        Ok(Source { name, arity, body })
    }

    fn block(&mut self) -> Result<Vec<Stmt>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut body = Vec::new();
        loop {
            match self.peek() {
                Some((Tok::RBrace, _)) => {
                    self.at += 1;
                    return Ok(body);
                }
                None => return Err(ParseError::at(self.end, "unexpected end of input, expected `}`")),
                _ => body.push(self.stmt()?),
            }
        }
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let pos = self.pos();
        let (tok, _) = self.next("a statement")?;
        let word = match tok {
            Tok::Word(w) => w,
            other => return Err(ParseError::at(pos, format!("expected a statement, found {}", other.describe()))),
        };
        match word.as_str() {
            "clear" => Ok(Stmt::Clear(self.var()?)),
            "inc" => Ok(Stmt::Inc(self.var()?)),
            "loop" => {
                let v = self.var()?;
                Ok(Stmt::Loop(v, self.block()?))
            }
            "while" => {
                if !self.allow_while {
                    return Err(ParseError::at(pos, "`while` is not part of the Loop language"));
                }
                let v = self.var()?;
                Ok(Stmt::While(v, self.block()?))
            }
            _ => {
                let dst = parse_var(&word).ok_or_else(|| {
                    ParseError::at(pos, format!("expected a statement, found `{word}`"))
                })?;
                self.expect(Tok::Eq)?;
                let src = self.var()?;
                Ok(Stmt::Copy(dst, src))
            }
        }
    }
}

fn parse_var(w: &str) -> Option<Var> {
    let digits = w.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<u32>().ok().map(Var)
}

/// Parses program text. With `allow_while` false, the `while` form is a
/// syntax error.
pub fn parse_source(text: &str, allow_while: bool) -> Result<Source, ParseError> {
    let toks = lex(text)?;
    let end = match text.rsplit_once('\n') {
        Some((before, after)) => Pos { line: before.matches('\n').count() + 2, col: after.chars().count() + 1 },
        None => Pos { line: 1, col: text.chars().count() + 1 },
    };
    Parser { toks, at: 0, end, allow_while }.program()
}

pub fn parse_loop(text: &str) -> Result<LoopProgram, ParseError> {
    let src = parse_source(text, false)?;
    LoopProgram::new(src.name, src.arity, src.body)
        .map_err(|e| ParseError::Syntax { line: 1, col: 1, msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_programs() {
        let p = parse_loop("fn zero(1){ clear x0 }").unwrap();
        assert_eq!(p.arity(), 1);
        assert_eq!(p.body(), &[Stmt::Clear(Var(0))]);
        let p = parse_loop("fn id(1){ x0 = x1 }").unwrap();
        assert_eq!(p.body(), &[Stmt::Copy(Var(0), Var(1))]);
    }

    #[test]
    fn nested_loops_and_comments() {
        let p = parse_loop("fn f(2) {\n  // twice\n  loop x1 { loop x2 { inc x0 } }\n}").unwrap();
        assert_eq!(
            p.body(),
            &[Stmt::Loop(Var(1), vec![Stmt::Loop(Var(2), vec![Stmt::Inc(Var(0))])])]
        );
    }

    #[test]
    fn error_positions() {
        let err = parse_loop("fn f(1) {\n  inc y1\n}").unwrap_err();
        assert_eq!(err.position(), (2, 7));
        let err = parse_loop("fn f(1) {\n  clear x0\n").unwrap_err();
        assert!(err.to_string().contains("expected `}`"), "{err}");
        let err = parse_loop("fn f(1) { while x1 { } }").unwrap_err();
        assert_eq!(err.position(), (1, 11));
    }

    #[test]
    fn arity_declaration_errors() {
        assert!(matches!(parse_loop("fn f(k) { }"), Err(ParseError::Arity { .. })));
        assert!(matches!(parse_loop("fn f(99999) { }"), Err(ParseError::Arity { .. })));
    }

    #[test]
    fn while_allowed_in_extended_dialect() {
        let src = parse_source("fn bot(1){ inc x2  while x2 { inc x2 } }", true).unwrap();
        assert_eq!(src.body.len(), 2);
    }

    #[test]
    fn keyword_not_a_name() {
        assert!(parse_loop("fn loop(1) { }").is_err());
        assert!(parse_loop("fn f(1) { x0 = 3 }").is_err());
        assert!(parse_loop("fn f(1) { } extra").is_err());
    }
}
