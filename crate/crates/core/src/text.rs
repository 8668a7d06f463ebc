//! Plain-text documents for operators, recurrences, factored polynomials
//! and initial values.
//!
//! A document starts with two header lines and continues with a body:
//!
//! ```text
//! # comment
//! kind: operator
//! vars: q, x
//! (x - 1)*D - q*x + 1
//! ```
//!
//! * `kind: operator` with `vars: q, x`: a polynomial in `q`, `x` and `D`
//!   (products are taken in the q-Weyl algebra, so `D*x = q*x*D`).
//! * `kind: recurrence` with `vars: q, n`: a linear expression in
//!   `f(n)`, `f(n+1)`, ... with coefficients in `q` and `q^n`, written
//!   `q^n`, `q^(2*n+3)` and so on, optionally followed by `= rhs`.
//! * `kind: factored-poly` with `vars: q, x`: a product of factors
//!   `(...)^e`; factors free of `x` are collected into the unit.
//! * `kind: values` with `vars: q`: statements `f(k) = expr` separated by `;`.
//!
//! Integer literals, `+ - * / ^` and parentheses are available everywhere;
//! division is only by expressions free of `x`, `n` and `D`. A trailing `;`
//! after the body is allowed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::arith::{BiPoly, PolyQ, PolyX, RatFuncQ};
use crate::bimonic::InhomRec;
use crate::dispersion::FactoredPoly;
use crate::error::{Error, Result};
use crate::qweyl::QWeylOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Operator,
    Recurrence,
    FactoredPoly,
    Values,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Operator => "operator",
            Kind::Recurrence => "recurrence",
            Kind::FactoredPoly => "factored-poly",
            Kind::Values => "values",
        }
    }

    fn vars(self) -> &'static str {
        match self {
            Kind::Operator | Kind::FactoredPoly => "q, x",
            Kind::Recurrence => "q, n",
            Kind::Values => "q",
        }
    }
}

/// A parsed document. Recurrences use `y = q^n` as their second variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Doc {
    Operator(QWeylOp),
    Recurrence(InhomRec),
    Factored(FactoredPoly),
    Values(BTreeMap<i64, RatFuncQ>),
}

impl Doc {
    pub fn kind(&self) -> Kind {
        match self {
            Doc::Operator(_) => Kind::Operator,
            Doc::Recurrence(_) => Kind::Recurrence,
            Doc::Factored(_) => Kind::FactoredPoly,
            Doc::Values(_) => Kind::Values,
        }
    }
}

type Pos = (usize, usize);

fn perr(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.0,
        col: pos.1,
        msg: msg.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(char),
    Sym(char),
    Eof,
}

struct Lexer {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Lexer {
    fn new(src: &str, start: Pos) -> Result<Self> {
        let mut toks = Vec::new();
        let (mut line, mut col) = start;
        let mut chars = src.chars().peekable();
        while let Some(&ch) = chars.peek() {
            let pos = (line, col);
            if ch == '\n' {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            if ch.is_whitespace() {
                chars.next();
                col += 1;
                continue;
            }
            if ch == '#' {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
                continue;
            }
            if ch.is_ascii_digit() {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|c| c.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                    col += 1;
                }
                toks.push((Tok::Int(s.parse().expect("digits")), pos));
                continue;
            }
            chars.next();
            col += 1;
            match ch {
                'q' | 'x' | 'n' | 'D' | 'f' => toks.push((Tok::Ident(ch), pos)),
                '+' | '-' | '*' | '/' | '^' | '(' | ')' | '=' | ';' => toks.push((Tok::Sym(ch), pos)),
                _ => return Err(perr(pos, format!("unknown symbol `{ch}`"))),
            }
        }
        toks.push((Tok::Eof, (line, col)));
        Ok(Lexer { toks, at: 0 })
    }

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

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(self.pos(), format!("expected `{c}`")))
        }
    }
}

#[derive(Clone, Debug)]
enum Node {
    Num(BigInt),
    Q,
    X,
    D,
    /// `q^(a n + b)`
    QPow(i64, i64),
    F(i64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug)]
struct Expr {
    node: Node,
    pos: Pos,
}

struct Parser {
    lex: Lexer,
    kind: Kind,
}

impl Parser {
    fn expr(&mut self) -> Result<Expr> {
        let pos = self.lex.pos();
        let mut lhs = if self.lex.eat('-') {
            let t = self.term()?;
            Expr {
                node: Node::Neg(Box::new(t)),
                pos,
            }
        } else {
            self.lex.eat('+');
            self.term()?
        };
        loop {
            let pos = self.lex.pos();
            if self.lex.eat('+') {
                let r = self.term()?;
                lhs = Expr {
                    node: Node::Add(Box::new(lhs), Box::new(r)),
                    pos,
                };
            } else if self.lex.eat('-') {
                let r = self.term()?;
                lhs = Expr {
                    node: Node::Sub(Box::new(lhs), Box::new(r)),
                    pos,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            let pos = self.lex.pos();
            if self.lex.eat('*') {
                let r = self.power()?;
                lhs = Expr {
                    node: Node::Mul(Box::new(lhs), Box::new(r)),
                    pos,
                };
            } else if self.lex.eat('/') {
                let r = self.power()?;
                lhs = Expr {
                    node: Node::Div(Box::new(lhs), Box::new(r)),
                    pos,
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let pos = self.lex.pos();
        if !self.lex.eat('^') {
            return Ok(base);
        }
        let is_q = matches!(base.node, Node::Q);
        let (a, b) = self.exponent(is_q && self.kind == Kind::Recurrence)?;
        if a != 0 {
            return Ok(Expr {
                node: Node::QPow(a, b),
                pos: base.pos,
            });
        }
        Ok(Expr {
            node: Node::Pow(Box::new(base), b),
            pos,
        })
    }

    /// An integer exponent, or `a*n + b` when `allow_n`.
    fn exponent(&mut self, allow_n: bool) -> Result<(i64, i64)> {
        let pos = self.lex.pos();
        if self.lex.eat('(') {
            let mut acc = (0i64, 0i64);
            let mut first = true;
            loop {
                let sign = if self.lex.eat('-') {
                    -1
                } else if self.lex.eat('+') || first {
                    1
                } else {
                    break;
                };
                first = false;
                let (a, b) = self.linear_term(allow_n)?;
                acc = (acc.0 + sign * a, acc.1 + sign * b);
            }
            self.lex.expect(')')?;
            return Ok(acc);
        }
        if self.lex.eat('-') {
            return Ok((0, -self.small_int()?));
        }
        match self.lex.peek() {
            Tok::Int(_) => Ok((0, self.small_int()?)),
            Tok::Ident('n') if allow_n => {
                self.lex.next();
                Ok((1, 0))
            }
            _ => Err(perr(pos, "expected an exponent")),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        match self.lex.next() {
            (Tok::Int(v), pos) => v.to_i64().ok_or_else(|| perr(pos, "integer too large")),
            (_, pos) => Err(perr(pos, "expected an integer")),
        }
    }

    /// `k`, `n`, or `k*n`.
    fn linear_term(&mut self, allow_n: bool) -> Result<(i64, i64)> {
        let pos = self.lex.pos();
        if *self.lex.peek() == Tok::Ident('n') {
            if !allow_n {
                return Err(perr(pos, "`n` is not allowed here"));
            }
            self.lex.next();
            return Ok((1, 0));
        }
        let k = self.small_int()?;
        if self.lex.eat('*') {
            let pos = self.lex.pos();
            if !allow_n || self.lex.next().0 != Tok::Ident('n') {
                return Err(perr(pos, "expected `n`"));
            }
            return Ok((k, 0));
        }
        Ok((0, k))
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, pos) = self.lex.next();
        let node = match tok {
            Tok::Int(v) => Node::Num(v),
            Tok::Ident('q') => Node::Q,
            Tok::Ident('x') if matches!(self.kind, Kind::Operator | Kind::FactoredPoly) => Node::X,
            Tok::Ident('D') if self.kind == Kind::Operator => Node::D,
            Tok::Ident('f') if matches!(self.kind, Kind::Recurrence | Kind::Values) => {
                self.lex.expect('(')?;
                let (a, b) = self.exponent_inner()?;
                if a != 1 && self.kind == Kind::Recurrence {
                    return Err(perr(pos, "expected f(n + k)"));
                }
                if a != 0 && self.kind == Kind::Values {
                    return Err(perr(pos, "expected f(k) with an integer k"));
                }
                self.lex.expect(')')?;
                Node::F(b)
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.lex.expect(')')?;
                return Ok(e);
            }
            Tok::Ident(c) => {
                return Err(perr(
                    pos,
                    format!("symbol `{c}` is not declared for kind {}", self.kind.name()),
                ))
            }
            Tok::Eof => return Err(perr(pos, "unexpected end of input")),
            Tok::Sym(c) => return Err(perr(pos, format!("unexpected `{c}`"))),
        };
        Ok(Expr { node, pos })
    }

    /// The argument of `f(...)`: `n + k`, `n - k`, `n` or an integer.
    fn exponent_inner(&mut self) -> Result<(i64, i64)> {
        let mut acc = (0i64, 0i64);
        let mut first = true;
        loop {
            let sign = if self.lex.eat('-') {
                -1
            } else if self.lex.eat('+') || first {
                1
            } else {
                break;
            };
            first = false;
            let (a, b) = self.linear_term(self.kind == Kind::Recurrence)?;
            acc = (acc.0 + sign * a, acc.1 + sign * b);
        }
        Ok(acc)
    }
}

// ---- evaluation ----

fn q_pow(e: i64) -> RatFuncQ {
    RatFuncQ::q_pow(e)
}

fn scalar(e: &Expr) -> Result<RatFuncQ> {
    let r = match &e.node {
        Node::Num(v) => RatFuncQ::from_rational(BigRational::from_integer(v.clone())),
        Node::Q => RatFuncQ::q(),
        Node::QPow(0, b) => q_pow(*b),
        Node::Add(a, b) => &scalar(a)? + &scalar(b)?,
        Node::Sub(a, b) => &scalar(a)? - &scalar(b)?,
        Node::Neg(a) => -scalar(a)?,
        Node::Mul(a, b) => &scalar(a)? * &scalar(b)?,
        Node::Div(a, b) => {
            let d = scalar(b)?;
            if d.is_zero() {
                return Err(perr(b.pos, "division by zero"));
            }
            &scalar(a)? / &d
        }
        Node::Pow(a, k) => {
            let base = scalar(a)?;
            base.pow(*k).map_err(|_| perr(e.pos, "zero to a negative power"))?
        }
        _ => return Err(perr(e.pos, "expected an expression in q only")),
    };
    Ok(r)
}

fn eval_op(e: &Expr) -> Result<QWeylOp> {
    let r = match &e.node {
        Node::X => QWeylOp::from_poly(PolyX::x()),
        Node::D => QWeylOp::d(),
        Node::Num(_) | Node::Q | Node::QPow(..) => QWeylOp::from_poly(PolyX::constant(scalar(e)?)),
        Node::Add(a, b) => eval_op(a)?.add(&eval_op(b)?),
        Node::Sub(a, b) => eval_op(a)?.sub(&eval_op(b)?),
        Node::Neg(a) => eval_op(a)?.neg(),
        Node::Mul(a, b) => eval_op(a)?.mul(&eval_op(b)?),
        Node::Div(a, b) => {
            let d = scalar(b).map_err(|_| perr(b.pos, "division by an expression involving x or D"))?;
            if d.is_zero() {
                return Err(perr(b.pos, "division by zero"));
            }
            eval_op(a)?.scale(&d.inv().expect("nonzero"))
        }
        Node::Pow(a, k) => {
            if *k < 0 {
                let s = scalar(a).map_err(|_| perr(e.pos, "negative power of an expression involving x or D"))?;
                return Ok(QWeylOp::from_poly(PolyX::constant(
                    s.pow(*k).map_err(|_| perr(e.pos, "zero to a negative power"))?,
                )));
            }
            let base = eval_op(a)?;
            let mut acc = QWeylOp::one();
            for _ in 0..*k {
                acc = acc.mul(&base);
            }
            acc
        }
        Node::F(_) => unreachable!("rejected by the parser"),
    };
    Ok(r)
}

/// Linear form: slot `-1` is the constant term, slot `i` multiplies `f(n+i)`.
type Lin = BTreeMap<i64, PolyX>;

fn lin_const(p: PolyX) -> Lin {
    let mut m = Lin::new();
    if !p.is_zero() {
        m.insert(-1, p);
    }
    m
}

fn lin_add(mut a: Lin, b: Lin, sign: i64) -> Lin {
    for (k, v) in b {
        let v = if sign < 0 { -v } else { v };
        let s = match a.remove(&k) {
            Some(u) => &u + &v,
            None => v,
        };
        if !s.is_zero() {
            a.insert(k, s);
        }
    }
    a
}

fn lin_scale(a: &Lin, c: &PolyX) -> Lin {
    a.iter().map(|(k, v)| (*k, v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

fn as_const(a: &Lin) -> Option<PolyX> {
    match a.len() {
        0 => Some(PolyX::zero()),
        1 => a.get(&-1).cloned(),
        _ => None,
    }
}

fn eval_lin(e: &Expr) -> Result<Lin> {
    let r = match &e.node {
        Node::Num(_) | Node::Q => lin_const(PolyX::constant(scalar(e)?)),
        Node::QPow(a, b) => {
            if *a < 0 {
                return Err(perr(e.pos, "negative power of q^n"));
            }
            lin_const(PolyX::monomial(q_pow(*b), *a as usize))
        }
        Node::F(i) => Lin::from([(*i, PolyX::one())]),
        Node::Add(a, b) => lin_add(eval_lin(a)?, eval_lin(b)?, 1),
        Node::Sub(a, b) => lin_add(eval_lin(a)?, eval_lin(b)?, -1),
        Node::Neg(a) => lin_add(Lin::new(), eval_lin(a)?, -1),
        Node::Mul(a, b) => {
            let (x, y) = (eval_lin(a)?, eval_lin(b)?);
            match (as_const(&x), as_const(&y)) {
                (Some(c), _) => lin_scale(&y, &c),
                (_, Some(c)) => lin_scale(&x, &c),
                _ => return Err(perr(e.pos, "product of two terms involving f")),
            }
        }
        Node::Div(a, b) => {
            let d = scalar(b).map_err(|_| perr(b.pos, "division by an expression involving n or f"))?;
            if d.is_zero() {
                return Err(perr(b.pos, "division by zero"));
            }
            lin_scale(&eval_lin(a)?, &PolyX::constant(d.inv().expect("nonzero")))
        }
        Node::Pow(a, k) => {
            let base = eval_lin(a)?;
            let c = as_const(&base).ok_or_else(|| perr(e.pos, "power of a term involving f"))?;
            if *k < 0 {
                let s = scalar(a).map_err(|_| perr(e.pos, "negative power of an expression involving n"))?;
                lin_const(PolyX::constant(s.pow(*k).map_err(|_| perr(e.pos, "zero to a negative power"))?))
            } else {
                lin_const(c.pow(*k as u32))
            }
        }
        Node::X | Node::D => unreachable!("rejected by the parser"),
    };
    Ok(r)
}

fn eval_poly(e: &Expr) -> Result<PolyX> {
    let op = eval_op(e)?;
    if op.order() > 0 {
        return Err(perr(e.pos, "unexpected D"));
    }
    Ok(op.coeff(0))
}

/// Multiply by the least common multiple of all `q`-denominators.
fn clear_denominators(ps: &[PolyX]) -> Vec<BiPoly> {
    let mut den = PolyQ::one();
    for p in ps {
        for c in p.coeffs() {
            den = den.lcm(c.den());
        }
    }
    let d = PolyX::constant(RatFuncQ::from_poly(den));
    ps.iter()
        .map(|p| BiPoly::try_from_polyx(&(p * &d)).expect("denominators cleared"))
        .collect()
}

fn split_header(text: &str) -> Result<(Kind, usize, usize)> {
    let mut kind = None;
    let mut vars = None;
    let mut offset = 0;
    let mut line_no = 0;
    for line in text.split_inclusive('\n') {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            line_no += 1;
            offset += line.len();
            continue;
        }
        if let Some(v) = t.strip_prefix("kind:") {
            let k = match v.trim() {
                "operator" => Kind::Operator,
                "recurrence" => Kind::Recurrence,
                "factored-poly" | "factored" => Kind::FactoredPoly,
                "values" => Kind::Values,
                other => {
                    let col = line.find(other).map_or(1, |i| line[..i].chars().count() + 1);
                    return Err(perr(
                        (line_no + 1, col),
                        format!("unknown kind `{other}`, expected operator, recurrence, factored-poly or values"),
                    ));
                }
            };
            kind = Some(k);
        } else if let Some(v) = t.strip_prefix("vars:") {
            let names: Vec<String> = v.split(',').map(|s| s.trim().to_string()).collect();
            vars = Some((names, line_no + 1));
        } else {
            break;
        }
        line_no += 1;
        offset += line.len();
    }
    let kind = kind.ok_or_else(|| perr((1, 1), "missing `kind:` header"))?;
    let (names, vline) = vars.ok_or_else(|| perr((1, 1), "missing `vars:` header"))?;
    let expected: Vec<&str> = kind.vars().split(", ").collect();
    if names != expected {
        return Err(perr(
            (vline, 1),
            format!("kind {} declares variables `{}`, found `{}`", kind.name(), kind.vars(), names.join(", ")),
        ));
    }
    Ok((kind, offset, line_no + 1))
}

/// Parse a document.
pub fn parse(text: &str) -> Result<Doc> {
    let (kind, offset, line) = split_header(text)?;
    let lex = Lexer::new(&text[offset..], (line, 1))?;
    let mut p = Parser { lex, kind };
    let doc = match kind {
        Kind::Operator => {
            let e = p.expr()?;
            let op = eval_op(&e)?;
            let cleared = clear_denominators(op.coeffs());
            Doc::Operator(QWeylOp::from_bipolys(&cleared))
        }
        Kind::Recurrence => {
            let e = p.expr()?;
            let mut lin = eval_lin(&e)?;
            if p.lex.eat('=') {
                let rhs = p.expr()?;
                lin = lin_add(lin, eval_lin(&rhs)?, -1);
            }
            let min = lin.keys().copied().filter(|&k| k != -1).min();
            let Some(min) = min else {
                return Err(perr(e.pos, "recurrence without any f term"));
            };
            // re-index so that the lowest shift is f(n): n -> n - min
            let max = *lin.keys().next_back().expect("nonempty");
            let reindex = |p: &PolyX| p.sigma_pow(-min);
            let mut ps = vec![lin.get(&-1).map(reindex).unwrap_or_else(PolyX::zero)];
            for i in min..=max {
                ps.push(lin.get(&i).map(reindex).unwrap_or_else(PolyX::zero));
            }
            let mut cs = clear_denominators(&ps);
            let inhom = cs.remove(0);
            Doc::Recurrence(InhomRec::new(inhom, cs)?)
        }
        Kind::FactoredPoly => {
            let e = p.expr()?;
            let mut factors: Vec<(Expr, i64)> = Vec::new();
            flatten_product(&e, &mut factors);
            let mut unit = RatFuncQ::one();
            let mut out = Vec::new();
            for (f, k) in factors {
                let poly = eval_poly(&f)?;
                if poly.is_zero() {
                    return Err(perr(f.pos, "zero factor"));
                }
                if poly.degree() == Some(0) {
                    unit = &unit * &poly.coeff(0).pow(k).map_err(|_| perr(f.pos, "zero to a negative power"))?;
                    continue;
                }
                if k < 0 {
                    return Err(perr(f.pos, "negative power of a factor involving x"));
                }
                let b = clear_denominators(std::slice::from_ref(&poly)).remove(0);
                let scale = &poly.lc() / &b.to_polyx().lc();
                unit = &unit * &scale.pow(k).expect("nonzero");
                out.push((b, k as u32));
            }
            Doc::Factored(FactoredPoly::new(unit, out)?)
        }
        Kind::Values => {
            let mut vals = BTreeMap::new();
            while *p.lex.peek() != Tok::Eof {
                let pos = p.lex.pos();
                let lhs = p.atom()?;
                let Node::F(k) = lhs.node else {
                    return Err(perr(pos, "expected f(k)"));
                };
                p.lex.expect('=')?;
                let v = scalar(&p.expr()?)?;
                if vals.insert(k, v).is_some() {
                    return Err(perr(pos, format!("duplicate value for f({k})")));
                }
                if !p.lex.eat(';') && *p.lex.peek() != Tok::Eof {
                    return Err(perr(p.lex.pos(), "expected `;`"));
                }
            }
            return Ok(Doc::Values(vals));
        }
    };
    p.lex.eat(';');
    if *p.lex.peek() != Tok::Eof {
        return Err(perr(p.lex.pos(), "unexpected trailing input"));
    }
    Ok(doc)
}

fn flatten_product(e: &Expr, out: &mut Vec<(Expr, i64)>) {
    match &e.node {
        Node::Mul(a, b) => {
            flatten_product(a, out);
            flatten_product(b, out);
        }
        Node::Pow(a, k) => out.push(((**a).clone(), *k)),
        _ => out.push((e.clone(), 1)),
    }
}

// ---- printing ----

fn rat_str(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `q^(a*n + b)` for `y^a q^b`.
fn qn_power(a: u32, b: u32) -> String {
    match (a, b) {
        (0, 0) => String::new(),
        (0, 1) => "q".into(),
        (0, b) => format!("q^{b}"),
        (1, 0) => "q^n".into(),
        (a, 0) => format!("q^({a}*n)"),
        (1, b) => format!("q^(n+{b})"),
        (a, b) => format!("q^({a}*n+{b})"),
    }
}

/// A bivariate polynomial with `x` read as `q^n`.
pub fn bipoly_in_n(p: &BiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = qn_power(m.x, m.q);
        match (mono.is_empty(), a.is_one()) {
            (true, _) => s.push_str(&rat_str(&a)),
            (false, true) => s.push_str(&mono),
            (false, false) => {
                let _ = write!(s, "{}*{mono}", rat_str(&a));
            }
        }
    }
    s
}

fn f_term(i: usize) -> String {
    if i == 0 {
        "f(n)".into()
    } else {
        format!("f(n+{i})")
    }
}

fn coeff_times(c: &str, single: bool, rest: &str) -> String {
    if single {
        match c {
            "1" => rest.to_string(),
            "-1" => format!("-{rest}"),
            _ => format!("{c}*{rest}"),
        }
    } else {
        format!("({c})*{rest}")
    }
}

fn join(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            s.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(&t);
        }
    }
    s
}

/// `p_r*f(n+r) + … + p_0*f(n) + p_{-1}`, with `q^n` for the second variable.
pub fn recurrence_body(rec: &InhomRec) -> String {
    let mut terms = Vec::new();
    for i in (0..=rec.order()).rev() {
        let c = rec.coeff(i);
        if c.is_zero() {
            continue;
        }
        terms.push(coeff_times(&bipoly_in_n(c), c.num_terms() == 1, &f_term(i)));
    }
    if !rec.inhom().is_zero() {
        terms.push(bipoly_in_n(rec.inhom()));
    }
    join(terms)
}

pub fn factored_body(f: &FactoredPoly) -> String {
    let mut parts = Vec::new();
    if !f.unit.is_one() || f.factors.is_empty() {
        parts.push(format!("({})", f.unit));
    }
    for (b, e) in &f.factors {
        if *e == 1 {
            parts.push(format!("({b})"));
        } else {
            parts.push(format!("({b})^{e}"));
        }
    }
    parts.join("*")
}

/// Print a document in canonical form; `parse(print(d)) == d`.
pub fn print(doc: &Doc) -> String {
    let k = doc.kind();
    let body = match doc {
        Doc::Operator(op) => op.display_with("x"),
        Doc::Recurrence(rec) => recurrence_body(rec),
        Doc::Factored(f) => factored_body(f),
        Doc::Values(v) => v.iter().map(|(n, x)| format!("f({n}) = {x};")).collect::<Vec<_>>().join("\n"),
    };
    format!("kind: {}\nvars: {}\n{body}\n", k.name(), k.vars())
}

pub fn parse_operator(text: &str) -> Result<QWeylOp> {
    match parse(text)? {
        Doc::Operator(op) => Ok(op),
        d => Err(Error::Precondition(format!("expected an operator, found kind {}", d.kind().name()))),
    }
}

pub fn parse_recurrence(text: &str) -> Result<InhomRec> {
    match parse(text)? {
        Doc::Recurrence(r) => Ok(r),
        Doc::Operator(op) => InhomRec::from_operator(&op),
        d => Err(Error::Precondition(format!("expected a recurrence, found kind {}", d.kind().name()))),
    }
}

pub fn parse_factored(text: &str) -> Result<FactoredPoly> {
    match parse(text)? {
        Doc::Factored(f) => Ok(f),
        d => Err(Error::Precondition(format!("expected a factored polynomial, found kind {}", d.kind().name()))),
    }
}

pub fn parse_values(text: &str) -> Result<BTreeMap<i64, RatFuncQ>> {
    match parse(text)? {
        Doc::Values(v) => Ok(v),
        d => Err(Error::Precondition(format!("expected values, found kind {}", d.kind().name()))),
    }
}

/// Parse a bare expression in `q` and `x` (no header), e.g. `y-1` style
/// multipliers given on the command line; `y` and `q^n` are accepted as
/// names for the second variable.
pub fn parse_poly_expr(src: &str) -> Result<BiPoly> {
    let norm = src.replace("q^n", "x").replace('y', "x");
    let lex = Lexer::new(&norm, (1, 1))?;
    let mut p = Parser {
        lex,
        kind: Kind::FactoredPoly,
    };
    let e = p.expr()?;
    if *p.lex.peek() != Tok::Eof {
        return Err(perr(p.lex.pos(), "unexpected trailing input"));
    }
    let poly = eval_poly(&e)?;
    BiPoly::try_from_polyx(&poly).ok_or(Error::NotPolynomial)
}
