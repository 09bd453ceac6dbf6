use petri_game::PetriNetGame;
use thiserror::Error;

use crate::ast::{CmpOp, Expr, Formula};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(u64),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Cmp(CmpOp),
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: u32,
    column: u32,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut column = 1u32;
    let mut chars = text.chars().peekable();
    loop {
        let (l, c) = (line, column);
        let Some(&ch) = chars.peek() else {
            out.push(Spanned { tok: Tok::Eof, line, column });
            return Ok(out);
        };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next().unwrap();
            if ch == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            ch
        };
        if ch.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match ch {
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            '+' => {
                bump(&mut chars);
                Tok::Plus
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '*' => {
                bump(&mut chars);
                Tok::Star
            }
            '<' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    Tok::Cmp(CmpOp::Le)
                } else {
                    Tok::Cmp(CmpOp::Lt)
                }
            }
            '>' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    Tok::Cmp(CmpOp::Ge)
                } else {
                    Tok::Cmp(CmpOp::Gt)
                }
            }
            '=' => {
                bump(&mut chars);
                Tok::Cmp(CmpOp::Eq)
            }
            '!' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    Tok::Cmp(CmpOp::Ne)
                } else {
                    return Err(ParseError {
                        line: l,
                        column: c,
                        message: "expected '=' after '!'".into(),
                    });
                }
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(d as u64))
                        .ok_or_else(|| ParseError {
                            line: l,
                            column: c,
                            message: "number literal too large".into(),
                        })?;
                    bump(&mut chars);
                }
                Tok::Number(n)
            }
            c2 if c2.is_alphabetic() || c2 == '_' => {
                let mut name = String::new();
                while let Some(&c2) = chars.peek() {
                    if c2.is_alphanumeric() || c2 == '_' {
                        name.push(c2);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            other => {
                return Err(ParseError {
                    line: l,
                    column: c,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Spanned { tok, line: l, column: c });
    }
}

struct Parser<'a> {
    net: &'a PetriNetGame,
    toks: Vec<Spanned>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: at.line, column: at.column, message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(())
        } else {
            self.err(&t, format!("expected {what}"))
        }
    }

    // formula := and_formula ('or' and_formula)*
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_formula()?;
        while matches!(&self.peek().tok, Tok::Ident(w) if w == "or") {
            self.next();
            let rhs = self.and_formula()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    // and_formula := unary_formula ('and' unary_formula)*
    fn and_formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary_formula()?;
        while matches!(&self.peek().tok, Tok::Ident(w) if w == "and") {
            self.next();
            let rhs = self.unary_formula()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    // unary_formula := 'not' unary_formula | atom_formula
    fn unary_formula(&mut self) -> Result<Formula, ParseError> {
        if matches!(&self.peek().tok, Tok::Ident(w) if w == "not") {
            self.next();
            let inner = self.unary_formula()?;
            return Ok(Formula::Not(Box::new(inner)));
        }
        self.atom_formula()
    }

    // atom_formula := 'true' | 'false' | 'deadlock' | 'en' '(' ident ')'
    //               | expr cmp expr | '(' formula ')'
    fn atom_formula(&mut self) -> Result<Formula, ParseError> {
        let at = self.peek().clone();
        match &at.tok {
            Tok::Ident(w) if w == "true" => {
                self.next();
                Ok(Formula::True)
            }
            Tok::Ident(w) if w == "false" => {
                self.next();
                Ok(Formula::False)
            }
            Tok::Ident(w) if w == "deadlock" => {
                self.next();
                Ok(Formula::Deadlock)
            }
            Tok::Ident(w) if w == "en" => {
                self.next();
                self.expect(Tok::LParen, "'(' after 'en'")?;
                let name = self.next();
                let Tok::Ident(tname) = &name.tok else {
                    return self.err(&name, "expected transition name");
                };
                let t = self
                    .net
                    .find_transition(tname)
                    .ok_or_else(|| ParseError {
                        line: name.line,
                        column: name.column,
                        message: format!("unknown transition '{tname}'"),
                    })?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Formula::Trans(t))
            }
            Tok::LParen => {
                // Could open a parenthesized formula or the left
                // operand of a comparison; try the comparison first
                // and rewind on failure.
                let save = self.pos;
                if let Ok(f) = self.comparison() {
                    return Ok(f);
                }
                self.pos = save;
                self.next();
                let inner = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Number(_) | Tok::Ident(_) => self.comparison(),
            _ => self.err(&at, "expected a formula"),
        }
    }

    fn comparison(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.expr()?;
        let opt = self.next();
        let Tok::Cmp(op) = opt.tok else {
            return self.err(&opt, "expected a comparison operator");
        };
        let rhs = self.expr()?;
        Ok(Formula::Cmp(lhs, op, rhs))
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    // factor := number | place | '(' expr ')'
    fn factor(&mut self) -> Result<Expr, ParseError> {
        let at = self.next();
        match &at.tok {
            Tok::Number(n) => Ok(Expr::Const(*n)),
            Tok::Ident(name) => {
                let p = self.net.find_place(name).ok_or_else(|| ParseError {
                    line: at.line,
                    column: at.column,
                    message: format!("unknown place '{name}'"),
                })?;
                Ok(Expr::Place(p))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => self.err(&at, "expected a marking expression"),
        }
    }
}

/// Parses the query text syntax against a net's place and transition
/// names. Operator precedence, loosest first: `or`, `and`, `not`,
/// comparisons, `+`/`-`, `*`.
pub fn parse_query(net: &PetriNetGame, text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { net, toks, pos: 0 };
    let f = p.formula()?;
    let end = p.next();
    if end.tok != Tok::Eof {
        return Err(ParseError {
            line: end.line,
            column: end.column,
            message: "trailing input after formula".into(),
        });
    }
    Ok(f)
}
