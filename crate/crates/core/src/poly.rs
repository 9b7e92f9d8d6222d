//! Multivariate polynomials over a [`Field`] with dense exponent vectors.
//!
//! Terms are kept strictly descending in the polynomial's monomial order with
//! no zero coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with nonzero exponent.
    pub fn support(&self) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in descending
/// lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(nvars, 0, degree, &mut vec![0; nvars], &mut out);
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    field: Field,
    order: MonomialOrder,
    terms: Vec<(Monomial, Scalar)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => f.try_add(g),
        PolyOp::Sub => f.try_sub(g),
        PolyOp::Mul => f.try_mul(g),
    }
}

impl Polynomial {
    pub fn zero(nvars: usize, field: Field, order: MonomialOrder) -> Self {
        Polynomial {
            nvars,
            field,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, field: Field, order: MonomialOrder, c: Scalar) -> Self {
        Self::term(nvars, field, order, Monomial::one(nvars), c)
    }

    pub fn term(nvars: usize, field: Field, order: MonomialOrder, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(nvars, field, order);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    pub fn var(nvars: usize, field: Field, order: MonomialOrder, i: usize) -> Self {
        Self::term(nvars, field, order, Monomial::var(nvars, i), field.one())
    }

    /// Builds a canonical polynomial from arbitrary terms: sorts, merges like
    /// monomials and drops zeros.
    pub fn from_terms(
        nvars: usize,
        field: Field,
        order: MonomialOrder,
        mut terms: Vec<(Monomial, Scalar)>,
    ) -> Result<Self> {
        for (m, c) in &terms {
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch);
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial {
            nvars,
            field,
            order,
            terms: merged,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest total degree of a term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// m-adic order: least total degree of a term.
    pub fn ord(&self) -> Result<u32> {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Homogeneous component of least degree.
    pub fn lowest_form(&self) -> Result<Polynomial> {
        let d = self.ord()?;
        Ok(self.homogeneous_component(d))
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() == degree)
    }

    /// Drops all terms of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() <= max_degree)
    }

    fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect(),
            ..Self::zero(self.nvars, self.field, self.order)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Variables occurring in some term, as a bitmask.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars, self.field, self.order);
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
            ..self.clone_shell()
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars, self.field, self.order);
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
            ..self.clone_shell()
        }
    }

    /// Re-sorts the terms under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(self.nvars, self.field, order, self.terms.clone()).expect("same arity and field")
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Trusted constructor for terms already strictly descending and nonzero.
    pub(crate) fn with_sorted_terms(&self, terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| self.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            terms,
            ..self.clone_shell()
        }
    }

    fn clone_shell(&self) -> Polynomial {
        Self::zero(self.nvars, self.field, self.order)
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars || self.order != other.order {
            return Err(Error::ArityMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `self + c * m * g` in a single merge pass.
    pub(crate) fn add_scaled(&self, c: &Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return self.clone();
        }
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(t, x)| (t.mul(m), x * c)).peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => order.cmp(ma, mb),
            };
            match step {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (ma, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let s = ca + &cb;
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                }
            }
        }
        Polynomial {
            terms: out,
            ..self.clone_shell()
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        Ok(self.add_scaled(&self.field.one(), &Monomial::one(self.nvars), other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        Ok(self.add_scaled(&-self.field.one(), &Monomial::one(self.nvars), other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(self.nvars, self.field, self.order, prods)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, self.field, self.order, self.field.one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-self.field.one())
    }
}

/// Variable names, field and order: everything needed to parse and print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>) -> Result<Self> {
        Self::with_order(field, vars, MonomialOrder::Grevlex)
    }

    pub fn with_order(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: vars.len(),
                max: MAX_VARS,
            });
        }
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidPresentation(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidPresentation(format!("duplicate variable {v:?}")));
            }
        }
        Ok(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars(), self.field, self.order)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self.nvars(), self.field, self.order, self.field.one())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), self.field, self.order, i)
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(self.nvars(), self.field, self.order, c)
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial::term(self.nvars(), self.field, self.order, m, self.field.one())
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            ring: self,
        }
        .poly()
    }

    /// Canonical text form. Factors are juxtaposed when every variable name
    /// is a single character and joined with `*` otherwise, so the output
    /// always re-parses to the same polynomial.
    pub fn format(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let sep = if self.vars.iter().all(|v| v.len() == 1) {
            ""
        } else {
            "*"
        };
        let mut out = String::new();
        for (k, (m, c)) in p.terms().iter().enumerate() {
            let (neg, mag) = c.sign_and_magnitude();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if m.is_one() || mag != "1" {
                out.push_str(&mag);
                if !factors.is_empty() && sep == "*" {
                    out.push('*');
                }
            }
            out.push_str(&factors.join(sep));
        }
        out
    }

    pub fn display<'a>(&'a self, p: &'a Polynomial) -> impl fmt::Display + 'a {
        struct D<'a>(&'a PolyRing, &'a Polynomial);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, p)
    }

    /// Splits an identifier into known variable names. Exact names win;
    /// otherwise the first segmentation found (longest names tried first).
    fn segment(&self, ident: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.vars.iter().position(|v| v == ident) {
            return Some(vec![i]);
        }
        let mut order: Vec<usize> = (0..self.vars.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.vars[i].len()));
        fn rec(ring: &PolyRing, order: &[usize], rest: &str, acc: &mut Vec<usize>) -> bool {
            if rest.is_empty() {
                return true;
            }
            for &i in order {
                if let Some(tail) = rest.strip_prefix(ring.vars[i].as_str()) {
                    acc.push(i);
                    if rec(ring, order, tail, acc) {
                        return true;
                    }
                    acc.pop();
                }
            }
            false
        }
        let mut acc = Vec::new();
        rec(self, &order, ident, &mut acc).then_some(acc)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a PolyRing,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let ring = self.ring;
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(b'-') {
            negate = true;
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(ch) => return self.err(format!("unexpected character {:?}", ch as char)),
            }
            self.pos += 1;
        }
        Polynomial::from_terms(ring.nvars(), ring.field, ring.order, terms)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let field = self.ring.field;
        let mut coeff = field.one();
        let mut have_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.uint()?;
            let mut den = BigInt::from(1);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                let at = self.pos;
                den = self.uint()?;
                if den == BigInt::from(0) {
                    self.pos = at;
                    return self.err("zero denominator");
                }
            }
            coeff = field.from_ratio(&num, &den).map_err(|_| Error::Syntax {
                position: self.pos,
                message: "denominator vanishes in this field".into(),
            })?;
            have_coeff = true;
        }
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut nfactors = 0;
        loop {
            match self.peek() {
                Some(b'*') if have_coeff || nfactors > 0 => {
                    self.pos += 1;
                    if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                        return self.err("expected a variable after '*'");
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {}
                _ => break,
            }
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let vars = self
                .ring
                .segment(ident)
                .ok_or_else(|| Error::UnknownVariable(ident.to_string()))?;
            let mut power = 1u32;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let at = self.pos;
                let e = self.uint()?;
                power = match u32::try_from(e) {
                    Ok(p) if p <= 1 << 16 => p,
                    _ => {
                        self.pos = at;
                        return self.err("exponent too large");
                    }
                };
            }
            let (last, rest) = vars.split_last().expect("nonempty segmentation");
            for &v in rest {
                exps[v] += 1;
            }
            exps[*last] += power;
            nfactors += 1;
        }
        if !have_coeff && nfactors == 0 {
            return self.err("expected a term");
        }
        Ok((Monomial::new(exps), coeff))
    }
}
