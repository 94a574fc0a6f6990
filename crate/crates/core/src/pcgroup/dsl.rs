//! Text format for presentations.
//!
//! ```text
//! # Heisenberg group mod 5
//! group heis5 {
//!   gens x, y, z;
//!   order x = 5; order y = 5; order z = 5;
//!   comm [y,x] = z;
//! }
//! ```
//!
//! Omitted `pow` right-hand sides are `1`; omitted `comm` relations are
//! trivial. Commutator keys are `[later, earlier]`.

use thiserror::Error;

use super::{PcError, PcPresentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: ordering violation: {msg}")]
    Ordering {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: duplicate generator `{name}`")]
    DuplicateGenerator {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: relative order of `{name}` is {order}; must be at least 2")]
    BadOrder {
        line: usize,
        col: usize,
        name: String,
        order: u64,
    },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("generator `{0}` has no `order` statement")]
    MissingOrder(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (lno, col) = (li + 1, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: lno,
                    col,
                });
            } else if c.is_ascii_digit()
                || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
            {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<i64>().map_err(|_| ParseError::Syntax {
                    line: lno,
                    col,
                    msg: format!("integer `{text}` out of range"),
                })?;
                out.push(Token {
                    tok: Tok::Int(v),
                    line: lno,
                    col,
                });
            } else if "{};,=^*[]".contains(c) {
                out.push(Token {
                    tok: Tok::Sym(c),
                    line: lno,
                    col,
                });
                i += 1;
            } else {
                return Err(ParseError::Syntax {
                    line: lno,
                    col,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: Vec<(String, usize, usize)>,
    end: (usize, usize),
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(Token {
                tok: Tok::Sym(s), ..
            }) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let found = format!("{:?}", t.tok);
                self.err(format!("expected `{c}`, found {found}"))
            }
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ParseError> {
        match self.next() {
            Some(Token {
                tok: Tok::Ident(s),
                line,
                col,
            }) => Ok((s, line, col)),
            _ => {
                self.pos -= 1;
                self.err("expected identifier")
            }
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.next() {
            Some(Token {
                tok: Tok::Int(v), ..
            }) => Ok(v),
            _ => {
                self.pos -= 1;
                self.err("expected integer")
            }
        }
    }

    fn is_sym(&self, c: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(s), .. }) if *s == c)
    }

    fn gen_index(&self, name: &str, line: usize, col: usize) -> Result<usize, ParseError> {
        self.names
            .iter()
            .position(|(n, _, _)| n == name)
            .ok_or_else(|| ParseError::UnknownGenerator {
                line,
                col,
                name: name.to_string(),
            })
    }

    /// word := "1" | term ("*" term)* ; term := IDENT ("^" SINT)?
    /// Returns the word with the position of each syllable.
    fn word(&mut self) -> Result<Vec<(usize, i64, usize, usize)>, ParseError> {
        if let Some(Token {
            tok: Tok::Int(1), ..
        }) = self.peek()
        {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            let (name, line, col) = self.ident()?;
            let g = self.gen_index(&name, line, col)?;
            let mut e = 1;
            if self.is_sym('^') {
                self.pos += 1;
                e = self.int()?;
            }
            out.push((g, e, line, col));
            if self.is_sym('*') {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }
}

/// Parses a presentation. Ordering, duplicate and order constraints are
/// enforced; consistency is not checked here.
pub fn parse_pc(text: &str) -> Result<PcPresentation, ParseError> {
    let toks = lex(text)?;
    let end = (text.lines().count().max(1), 1);
    let mut p = Parser {
        toks,
        pos: 0,
        names: Vec::new(),
        end,
        _src: text,
    };
    match p.next() {
        Some(Token {
            tok: Tok::Ident(k), ..
        }) if k == "group" => {}
        _ => {
            p.pos = 0;
            return p.err("expected `group`");
        }
    }
    let (gname, _, _) = p.ident()?;
    p.expect_sym('{')?;

    enum Stmt {
        Order(usize, i64, usize, usize),
        Pow(usize, i64, Vec<(usize, i64, usize, usize)>, usize, usize),
        Comm(usize, usize, Vec<(usize, i64, usize, usize)>, usize, usize),
    }
    let mut stmts = Vec::new();
    loop {
        if p.is_sym('}') {
            p.pos += 1;
            break;
        }
        let (kw, line, col) = p.ident()?;
        match kw.as_str() {
            "gens" => loop {
                let (name, l, c) = p.ident()?;
                if p.names.iter().any(|(n, _, _)| *n == name) {
                    return Err(ParseError::DuplicateGenerator {
                        line: l,
                        col: c,
                        name,
                    });
                }
                p.names.push((name, l, c));
                if p.is_sym(',') {
                    p.pos += 1;
                } else {
                    break;
                }
            },
            "order" => {
                let (name, l, c) = p.ident()?;
                let g = p.gen_index(&name, l, c)?;
                p.expect_sym('=')?;
                let m = p.int()?;
                stmts.push(Stmt::Order(g, m, l, c));
            }
            "pow" => {
                let (name, l, c) = p.ident()?;
                let g = p.gen_index(&name, l, c)?;
                p.expect_sym('^')?;
                let m = p.int()?;
                p.expect_sym('=')?;
                let w = p.word()?;
                stmts.push(Stmt::Pow(g, m, w, line, col));
            }
            "comm" => {
                p.expect_sym('[')?;
                let (a, la, ca) = p.ident()?;
                let ga = p.gen_index(&a, la, ca)?;
                p.expect_sym(',')?;
                let (b, lb, cb) = p.ident()?;
                let gb = p.gen_index(&b, lb, cb)?;
                p.expect_sym(']')?;
                p.expect_sym('=')?;
                let w = p.word()?;
                stmts.push(Stmt::Comm(ga, gb, w, line, col));
            }
            other => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    msg: format!("unknown statement `{other}`"),
                });
            }
        }
        p.expect_sym(';')?;
    }
    if p.pos < p.toks.len() {
        return p.err("trailing input after group body");
    }

    let names: Vec<String> = p.names.iter().map(|(n, _, _)| n.clone()).collect();
    let mut orders = vec![0u64; names.len()];
    for s in &stmts {
        if let Stmt::Order(g, m, l, c) = *s {
            if m < 2 {
                return Err(ParseError::BadOrder {
                    line: l,
                    col: c,
                    name: names[g].clone(),
                    order: m.max(0) as u64,
                });
            }
            orders[g] = m as u64;
        }
    }
    if let Some(i) = orders.iter().position(|&m| m == 0) {
        return Err(ParseError::MissingOrder(names[i].clone()));
    }
    let mut pres =
        PcPresentation::new(&gname, names.clone(), orders.clone()).expect("orders validated");
    let strip = |w: &[(usize, i64, usize, usize)]| -> Word {
        w.iter().map(|&(g, e, _, _)| (g, e)).collect()
    };
    for s in stmts {
        match s {
            Stmt::Order(..) => {}
            Stmt::Pow(g, m, w, line, col) => {
                if m as u64 != orders[g] {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        msg: format!("power of `{}` must be its order {}", names[g], orders[g]),
                    });
                }
                if let Some(&(h, _, l, c)) = w.iter().find(|&&(h, _, _, _)| h <= g) {
                    return Err(ParseError::Ordering {
                        line: l,
                        col: c,
                        msg: format!(
                            "right-hand side of {}^{} mentions `{}`",
                            names[g], m, names[h]
                        ),
                    });
                }
                pres.set_power(g, strip(&w))
                    .map_err(|e| to_parse(e, line, col))?;
            }
            Stmt::Comm(a, b, w, line, col) => {
                if a <= b {
                    return Err(ParseError::Ordering {
                        line,
                        col,
                        msg: format!(
                            "commutator keys must be [later, earlier], got [{},{}]",
                            names[a], names[b]
                        ),
                    });
                }
                if let Some(&(h, _, l, c)) = w.iter().find(|&&(h, _, _, _)| h <= b) {
                    return Err(ParseError::Ordering {
                        line: l,
                        col: c,
                        msg: format!(
                            "right-hand side of [{},{}] mentions `{}`",
                            names[a], names[b], names[h]
                        ),
                    });
                }
                pres.set_comm(a, b, strip(&w))
                    .map_err(|e| to_parse(e, line, col))?;
            }
        }
    }
    Ok(pres)
}

fn to_parse(e: PcError, line: usize, col: usize) -> ParseError {
    ParseError::Ordering {
        line,
        col,
        msg: e.to_string(),
    }
}

/// Parses a standalone word over the given generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names: names.iter().map(|n| (n.clone(), 0, 0)).collect(),
        end: (1, text.len() + 1),
        _src: text,
    };
    let w = p.word()?;
    if p.pos < p.toks.len() {
        return p.err("trailing input after word");
    }
    Ok(w.into_iter().map(|(g, e, _, _)| (g, e)).collect())
}
