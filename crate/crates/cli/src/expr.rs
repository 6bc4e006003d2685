//! Expressions: rational combinations of names, brackets `[a,b]`, groups
//! `(…)` and tensors `a⊗ξ` (ASCII `a@ξ`).

use kappa_core::freelie::{self, Lie, LieElement};
use kappa_core::mapmodel::{Model, TensorElement};
use kappa_core::qlinalg::{add_into, GradedVectorSpace};
use kappa_core::{SparseVec, Q};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub col: usize,
    pub message: String,
}

fn err<T>(col: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { col, message: message.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Slash,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Tensor,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Name(s) | Tok::Num(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Tensor => "`⊗`".into(),
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str, base_col: usize) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = base_col + i;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '⊗' | '@' => Some(Tok::Tensor),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && is_name_char(chars[i]) {
                return err(base_col + i, "names must not start with a digit");
            }
            out.push((col, Tok::Num(chars[start..i].iter().collect())));
        } else if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            out.push((col, Tok::Name(chars[start..i].iter().collect())));
        } else {
            return err(col, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

/// A parsed sum of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coef: Q,
    pub atom: Atom,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// a bare scalar
    Scalar,
    Name(String, usize),
    Bracket(Box<Expr>, Box<Expr>),
    Group(Box<Expr>),
    Tensor(String, usize, Box<Atom>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ExprError> {
        match self.next() {
            Some((_, t)) if t == want => Ok(()),
            Some((c, t)) => err(c, format!("expected {}, found {}", describe(&want), describe(&t))),
            None => err(self.end_col, format!("expected {}, found end of line", describe(&want))),
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut terms = Vec::new();
        let mut negative = false;
        if self.peek() == Some(&Tok::Minus) {
            self.next();
            negative = true;
        } else if self.peek() == Some(&Tok::Plus) {
            self.next();
        }
        loop {
            let mut t = self.term()?;
            if negative {
                t.coef = -t.coef;
            }
            terms.push(t);
            match self.peek() {
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                _ => break,
            }
            self.next();
        }
        Ok(Expr { terms })
    }

    fn rational(&mut self, first: String) -> Result<Q, ExprError> {
        let p: Q = first.parse().expect("digits");
        if self.peek() == Some(&Tok::Slash) {
            self.next();
            match self.next() {
                Some((c, Tok::Num(d))) => {
                    let d: Q = d.parse().expect("digits");
                    if d.is_zero() {
                        return err(c, "zero denominator");
                    }
                    return Ok(p / d);
                }
                Some((c, t)) => return err(c, format!("expected a denominator, found {}", describe(&t))),
                None => return err(self.end_col, "expected a denominator"),
            }
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<Term, ExprError> {
        let col = self.col();
        if let Some(Tok::Num(_)) = self.peek() {
            let (num_col, tok) = self.next().unwrap();
            let Tok::Num(digits) = tok else { unreachable!() };
            if self.peek() == Some(&Tok::Tensor) {
                // a numeric label such as the unit `1`
                self.next();
                let inner = self.atom()?;
                return Ok(Term { coef: Q::one(), atom: Atom::Tensor(digits, num_col, Box::new(inner)), col });
            }
            let c = self.rational(digits)?;
            if self.peek() == Some(&Tok::Star) {
                self.next();
                let atom = self.atom()?;
                return Ok(Term { coef: c, atom, col });
            }
            return Ok(Term { coef: c, atom: Atom::Scalar, col });
        }
        let atom = self.atom()?;
        Ok(Term { coef: Q::one(), atom, col })
    }

    fn atom(&mut self) -> Result<Atom, ExprError> {
        match self.next() {
            Some((c, Tok::Name(n))) | Some((c, Tok::Num(n))) => {
                if self.peek() == Some(&Tok::Tensor) {
                    self.next();
                    let inner = self.atom()?;
                    Ok(Atom::Tensor(n, c, Box::new(inner)))
                } else {
                    Ok(Atom::Name(n, c))
                }
            }
            Some((_, Tok::LBracket)) => {
                let a = self.sum()?;
                self.expect(Tok::Comma)?;
                let b = self.sum()?;
                self.expect(Tok::RBracket)?;
                Ok(Atom::Bracket(Box::new(a), Box::new(b)))
            }
            Some((_, Tok::LParen)) => {
                let a = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(Atom::Group(Box::new(a)))
            }
            Some((c, t)) => err(c, format!("unexpected {}", describe(&t))),
            None => err(self.end_col, "unexpected end of expression"),
        }
    }
}

/// Parses `text`, whose first character sits at column `base_col`.
pub fn parse(text: &str, base_col: usize) -> Result<Expr, ExprError> {
    let toks = lex(text, base_col)?;
    let end_col = base_col + text.chars().count();
    if toks.is_empty() {
        return err(base_col, "empty expression");
    }
    let mut p = Parser { toks, pos: 0, end_col };
    let e = p.sum()?;
    if let Some((c, t)) = p.next() {
        return err(c, format!("unexpected {} after expression", describe(&t)));
    }
    Ok(e)
}

fn scalar_only(coef: &Q, col: usize, what: &str) -> Result<(), ExprError> {
    if coef.is_zero() {
        Ok(())
    } else {
        err(col, format!("a nonzero scalar is not {what}"))
    }
}

/// Evaluates in a free Lie algebra.
pub fn eval_lie(e: &Expr, lie: &Lie) -> Result<LieElement, ExprError> {
    let mut acc = freelie::zero(lie);
    for t in &e.terms {
        let v = match &t.atom {
            Atom::Scalar => {
                scalar_only(&t.coef, t.col, "a Lie element")?;
                continue;
            }
            a => atom_lie(a, lie)?,
        };
        acc = acc.add(&v.scale(&t.coef)).map_err(|x| ExprError { col: t.col, message: x.to_string() })?;
    }
    Ok(acc)
}

fn atom_lie(a: &Atom, lie: &Lie) -> Result<LieElement, ExprError> {
    match a {
        Atom::Scalar => unreachable!(),
        Atom::Name(n, c) => freelie::generator(lie, n).map_err(|_| ExprError { col: *c, message: format!("unknown generator `{n}`") }),
        Atom::Group(inner) => eval_lie(inner, lie),
        Atom::Bracket(x, y) => {
            let col = x.terms.first().map(|t| t.col).unwrap_or(0);
            eval_lie(x, lie)?
                .bracket(&eval_lie(y, lie)?)
                .map_err(|e| ExprError { col, message: e.to_string() })
        }
        Atom::Tensor(_, c, _) => err(*c, "a tensor is not a Lie element"),
    }
}

/// Evaluates as a combination of the labels of `space`.
pub fn eval_vec(e: &Expr, space: &GradedVectorSpace) -> Result<SparseVec, ExprError> {
    let mut out = SparseVec::new();
    for t in &e.terms {
        match &t.atom {
            Atom::Scalar => {
                // a lone numeral may be a label such as the unit `1`
                let label = t.coef.to_string();
                match space.index_of(&label) {
                    Some(i) if t.coef.is_integer() && !t.coef.is_zero() => add_into(&mut out, i, &Q::one()),
                    _ => scalar_only(&t.coef, t.col, "a vector")?,
                }
            }
            Atom::Name(n, c) => {
                let i = space.index_of(n).ok_or_else(|| ExprError { col: *c, message: format!("unknown basis element `{n}`") })?;
                add_into(&mut out, i, &t.coef);
            }
            Atom::Group(inner) => {
                for (i, x) in eval_vec(inner, space)? {
                    add_into(&mut out, i, &(x * &t.coef));
                }
            }
            Atom::Bracket(..) => return err(t.col, "brackets are not allowed here"),
            Atom::Tensor(_, c, _) => return err(*c, "tensors are not allowed here"),
        }
    }
    Ok(out)
}

/// Evaluates in a tensor model `A ⊗ L`.
pub fn eval_tensor(e: &Expr, model: &Model) -> Result<TensorElement, ExprError> {
    let mut acc = TensorElement::zero(model);
    for t in &e.terms {
        let v = match &t.atom {
            Atom::Scalar => {
                scalar_only(&t.coef, t.col, "a tensor")?;
                continue;
            }
            Atom::Tensor(label, c, inner) => {
                let xi = match inner.as_ref() {
                    Atom::Scalar => unreachable!(),
                    a => atom_lie(a, model.lie())?,
                };
                TensorElement::pure_labeled(model, label, &xi)
                    .map_err(|_| ExprError { col: *c, message: format!("unknown basis element `{label}`") })?
            }
            Atom::Group(inner) => eval_tensor(inner, model)?,
            Atom::Name(_, c) => return err(*c, "expected a tensor `a⊗ξ`"),
            Atom::Bracket(..) => return err(t.col, "expected a tensor `a⊗ξ`"),
        };
        acc = acc.add(&v.scale(&t.coef)).map_err(|x| ExprError { col: t.col, message: x.to_string() })?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kappa_core::FreeGradedLie;

    #[test]
    fn parses_rationals_and_brackets() {
        let l = FreeGradedLie::new(&[("u", 2), ("v", 3)], 3).unwrap();
        let e = parse("2*[u,v] - 1/2*v + 0", 1).unwrap();
        let x = eval_lie(&e, &l).unwrap();
        assert_eq!(x.to_string(), "-1/2*v + 2*[u,v]");
    }

    #[test]
    fn reports_columns() {
        let e = parse("u + [u,", 5).unwrap_err();
        assert_eq!(e.col, 12);
        let l = FreeGradedLie::new(&[("u", 2)], 3).unwrap();
        let bad = eval_lie(&parse("u + w", 10).unwrap(), &l).unwrap_err();
        assert_eq!((bad.col, bad.message.as_str()), (14, "unknown generator `w`"));
    }

    #[test]
    fn numeric_labels() {
        let s = GradedVectorSpace::new(vec![("1", 0), ("x", 2)]).unwrap();
        let v = eval_vec(&parse("1 - 3*x", 1).unwrap(), &s).unwrap();
        assert_eq!(s.format_vector(&v), "1 - 3*x");
        assert!(eval_vec(&parse("2", 1).unwrap(), &s).is_err());
        assert!(eval_vec(&parse("0", 1).unwrap(), &s).unwrap().is_empty());
    }
}
