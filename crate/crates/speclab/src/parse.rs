//! S-expression reader for the formula grammar.
//!
//! One formula per call: atoms `(= T T)` and `(P k)`, terms built from
//! variables `[a-z][a-z0-9]*`, declared constants, and unary function
//! applications `(t T)`, connectives `and`/`or`/`not`. The reader checks
//! every symbol against the signature in effect and reports positions in
//! bytes. Printing (the `Display` impls in [`crate::logic`]) emits the
//! same grammar in canonical form, so print then parse is the identity.

use crate::error::{Error, Result};
use crate::logic::{Cube, Literal, QFFormula, Signature, Term};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '(' => {
                toks.push((i, Tok::Open));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::Close));
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !"() \t\r\n".contains(bytes[i] as char) {
                    i += 1;
                }
                toks.push((start, Tok::Word(text[start..i].to_string())));
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    sig: &'a Signature,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse(self.end, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next()? {
            (_, Tok::Close) => Ok(()),
            (at, t) => Err(Error::parse(at, format!("expected ')', found {}", describe(&t)))),
        }
    }

    fn formula(&mut self) -> Result<QFFormula> {
        match self.next()? {
            // Every atom in the grammar is parenthesized, so a bare word
            // in formula position can only be a mistake.
            (at, Tok::Word(w)) => Err(Error::parse(at, format!("expected a formula, found '{w}'"))),
            (at, Tok::Close) => Err(Error::parse(at, "unexpected ')'")),
            (at, Tok::Open) => {
                let (head_at, head) = self.next()?;
                let head = match head {
                    Tok::Word(w) => w,
                    t => {
                        return Err(Error::parse(
                            head_at,
                            format!("expected an operator, found {}", describe(&t)),
                        ))
                    }
                };
                match head.as_str() {
                    "and" | "or" => {
                        let mut parts = Vec::new();
                        while !matches!(self.peek(), Some((_, Tok::Close)) | None) {
                            parts.push(self.formula()?);
                        }
                        self.expect_close()?;
                        if head == "and" {
                            Ok(QFFormula::And(parts))
                        } else {
                            Ok(QFFormula::Or(parts))
                        }
                    }
                    "not" => {
                        let inner = self.formula()?;
                        self.expect_close()?;
                        Ok(QFFormula::Not(Box::new(inner)))
                    }
                    "=" => {
                        let l = self.term()?;
                        let r = self.term()?;
                        self.expect_close()?;
                        Ok(QFFormula::Lit(Literal::eq(l, r)))
                    }
                    w if is_family(self.sig, w) => {
                        let idx = self.pred_index(at)?;
                        self.expect_close()?;
                        Ok(QFFormula::Lit(Literal::pred(idx)))
                    }
                    w if self.sig.has_function(w) => {
                        // An application in formula position: rewind and
                        // report rather than guessing what was meant.
                        Err(Error::parse(
                            head_at,
                            format!("term ({w} ...) found where a formula was expected"),
                        ))
                    }
                    w => Err(Error::parse(head_at, format!("unknown operator '{w}'"))),
                }
            }
        }
    }

    fn pred_index(&mut self, open_at: usize) -> Result<u32> {
        match self.next()? {
            (at, Tok::Word(w)) => {
                let idx: u32 = w.parse().map_err(|_| {
                    Error::parse(at, format!("predicate index must be an integer, got '{w}'"))
                })?;
                if idx == 0 {
                    return Err(Error::parse(at, "predicate index must be at least 1"));
                }
                Ok(idx)
            }
            (_, Tok::Close) => Err(Error::parse(open_at, "predicate atom needs an index")),
            (at, t) => Err(Error::parse(at, format!("expected an index, found {}", describe(&t)))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.next()? {
            (at, Tok::Word(w)) => self.base_term_from_word(at, w),
            (at, Tok::Close) => Err(Error::parse(at, "unexpected ')'")),
            (_, Tok::Open) => {
                let (head_at, head) = self.next()?;
                let f = match head {
                    Tok::Word(w) => w,
                    t => {
                        return Err(Error::parse(
                            head_at,
                            format!("expected a function symbol, found {}", describe(&t)),
                        ))
                    }
                };
                if !self.sig.has_function(&f) {
                    return Err(Error::parse(head_at, format!("unknown function symbol '{f}'")));
                }
                let arg = self.term()?;
                self.expect_close()?;
                Ok(Term::app(f, arg))
            }
        }
    }

    fn base_term_from_word(&self, at: usize, w: String) -> Result<Term> {
        if self.sig.has_constant(&w) {
            return Ok(Term::constant(w));
        }
        if self.sig.has_function(&w) {
            return Err(Error::parse(
                at,
                format!("function symbol '{w}' needs an argument"),
            ));
        }
        if w.starts_with('_') {
            return Err(Error::parse(
                at,
                "variable names may not begin with an underscore (reserved for generated names)",
            ));
        }
        if matches!(w.as_str(), "and" | "or" | "not") {
            return Err(Error::parse(at, format!("'{w}' is a reserved word")));
        }
        let mut chars = w.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
        let tail_ok = chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit());
        if !(head_ok && tail_ok) {
            return Err(Error::parse(at, format!("invalid variable name '{w}'")));
        }
        Ok(Term::Var(w))
    }

}

fn is_family(sig: &Signature, w: &str) -> bool {
    match &sig.predicate_family {
        Some(fam) => w == fam || w.to_ascii_uppercase() == *fam,
        None => false,
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::Word(w) => format!("'{w}'"),
    }
}

/// Parses one quantifier-free formula.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<QFFormula> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, sig, end: text.len() };
    let f = p.formula()?;
    if let Some((at, t)) = p.peek() {
        return Err(Error::parse(*at, format!("trailing input starting at {}", describe(t))));
    }
    Ok(f)
}

/// Parses one cube: a literal or a conjunction of literals.
pub fn parse_cube(text: &str, sig: &Signature) -> Result<Cube> {
    let f = parse_formula(text, sig)?;
    f.as_cube().ok_or_else(|| {
        Error::Domain("expected a conjunction of literals, found a disjunctive formula".into())
    })
}
