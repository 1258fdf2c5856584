//! Expression and field-spec parsing.
//!
//! Grammar (no implicit multiplication, `^` binds tightest):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::{find_irreducible_with_symbol, Elem, Field};
use crate::poly::BinaryForm;

/// Degree cap for parsed polynomials.
pub const MAX_DEGREE: u64 = 200_000;

/// Sparse bivariate polynomial, keyed by exponent pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sparse {
    field: Field,
    terms: BTreeMap<(u64, u64), Elem>,
}

impl Sparse {
    pub fn constant(field: &Field, c: Elem) -> Sparse {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((0, 0), c);
        }
        Sparse {
            field: field.clone(),
            terms,
        }
    }

    pub fn monomial(field: &Field, i: u64, j: u64, c: Elem) -> Sparse {
        let mut s = Sparse::constant(field, 0);
        if c != 0 {
            s.terms.insert((i, j), c);
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u64, u64), Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn total_degree(&self) -> u64 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Sparse) -> Sparse {
        let k = &self.field;
        let mut terms = self.terms.clone();
        for (&m, &c) in &other.terms {
            let v = k.add(terms.get(&m).copied().unwrap_or(0), c);
            if v == 0 {
                terms.remove(&m);
            } else {
                terms.insert(m, v);
            }
        }
        Sparse {
            field: k.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Sparse {
        let k = &self.field;
        Sparse {
            field: k.clone(),
            terms: self.terms.iter().map(|(&m, &c)| (m, k.neg(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Sparse) -> Sparse {
        let k = &self.field;
        let mut terms: BTreeMap<(u64, u64), Elem> = BTreeMap::new();
        for (&(a, b), &c) in &self.terms {
            for (&(i, j), &d) in &other.terms {
                let e = terms.entry((a + i, b + j)).or_insert(0);
                *e = k.add(*e, k.mul(c, d));
            }
        }
        terms.retain(|_, c| *c != 0);
        Sparse {
            field: k.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut n: u64) -> Result<Sparse> {
        if self.total_degree().saturating_mul(n) > MAX_DEGREE {
            return Err(Error::Resource(format!(
                "degree exceeds the cap of {MAX_DEGREE}"
            )));
        }
        let mut acc = Sparse::constant(&self.field, 1);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Weighted degree under `deg x = u`, `deg y = v`; errors on the first two
    /// distinct weighted degrees found (largest and smallest).
    pub fn weighted_degree(&self, u: u64, v: u64) -> Result<u64> {
        let degs: Vec<u64> = self.terms.keys().map(|(i, j)| u * i + v * j).collect();
        let hi = degs.iter().copied().max().ok_or_else(|| Error::domain("zero polynomial"))?;
        let lo = degs.iter().copied().min().unwrap();
        if hi != lo {
            return Err(Error::Inhomogeneous(hi, lo));
        }
        Ok(hi)
    }

    pub fn to_form(&self) -> Result<BinaryForm> {
        let d = self.weighted_degree(1, 1)? as usize;
        let mut coeffs = vec![0; d + 1];
        for (&(_, j), &c) in &self.terms {
            coeffs[j as usize] = c;
        }
        Ok(BinaryForm::new(&self.field, coeffs))
    }

    /// Substitutes `x ↦ x^u`, `y ↦ y^v`.
    pub fn substitute_powers(&self, u: u64, v: u64) -> Sparse {
        Sparse {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&(i, j), &c)| ((i * u, j * v), c)).collect(),
        }
    }

    pub fn from_form(f: &BinaryForm) -> Sparse {
        let d = f.degree() as u64;
        Sparse {
            field: f.field().clone(),
            terms: f
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| ((d - j as u64, j as u64), c))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigUint),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax(format!("unexpected character {c:?} at {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a Field,
    vars: (&'a str, &'a str),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |t| t.0)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(d)) if *d == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("expected {c:?}"))),
        }
    }

    fn err(&self, msg: &str) -> Error {
        match self.toks.get(self.pos) {
            Some((at, t)) => Error::Syntax(format!("{msg} at offset {at}, found {t:?}")),
            None => Error::Syntax(format!("{msg} at end of input")),
        }
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if acc.total_degree() + rhs.total_degree() > MAX_DEGREE {
                return Err(Error::Resource(format!("degree exceeds the cap of {MAX_DEGREE}")));
            }
            acc = acc.mul(&rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Sym('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let n: u64 = n.try_into().map_err(|_| {
                        Error::Resource("exponent too large".into())
                    })?;
                    return base.pow(n);
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Sparse::constant(self.field, self.field.from_biguint(&n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == self.vars.0 {
                    Ok(Sparse::monomial(self.field, 1, 0, 1))
                } else if name == self.vars.1 {
                    Ok(Sparse::monomial(self.field, 0, 1, 1))
                } else if self.field.degree() > 1 && name == self.field.symbol() {
                    Ok(Sparse::constant(self.field, self.field.generator()))
                } else {
                    Err(Error::Syntax(format!("unknown identifier {name:?} at offset {at}")))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// Parses a polynomial in the two named variables.
pub fn parse_sparse(text: &str, field: &Field, vars: (&str, &str)) -> Result<Sparse> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        vars,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a homogeneous polynomial in the two named variables.
pub fn parse_form(text: &str, field: &Field, vars: (&str, &str)) -> Result<BinaryForm> {
    let s = parse_sparse(text, field, vars)?;
    if s.is_zero() {
        return Err(Error::domain("the zero polynomial is not allowed"));
    }
    s.to_form()
}

/// `p=5`, `q=25`, `p=5;deg=2`, `p=5;deg=3;mod=a^3+a+1`, optionally `sym=b`.
/// Entries may also be separated by commas.
pub fn parse_field_spec(spec: &str) -> Result<Field> {
    let mut p = None;
    let mut q = None;
    let mut deg = None;
    let mut modulus = None;
    let mut sym = "a".to_string();
    for part in spec.split([';', ',']).map(str::trim).filter(|s| !s.is_empty()) {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| Error::Syntax(format!("field spec entry {part:?} lacks '='")))?;
        let num = || {
            val.trim()
                .parse::<u64>()
                .map_err(|_| Error::Syntax(format!("bad number {val:?} in field spec")))
        };
        match key.trim() {
            "p" => p = Some(num()?),
            "q" => q = Some(num()?),
            "deg" | "k" => deg = Some(num()? as usize),
            "mod" => modulus = Some(val.trim().to_string()),
            "sym" => sym = val.trim().to_string(),
            other => return Err(Error::Syntax(format!("unknown field spec key {other:?}"))),
        }
    }
    if let Some(q) = q {
        let (pp, kk) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        if p.is_some_and(|p| p != pp) || deg.is_some_and(|d| d != kk) {
            return Err(Error::domain("inconsistent field spec"));
        }
        p = Some(pp);
        deg = Some(kk);
    }
    let p = p.ok_or_else(|| Error::Syntax("field spec needs p".into()))?;
    let prime = Field::prime(p)?;
    match modulus {
        Some(m) => {
            let poly = parse_sparse(&m, &prime, (&sym, "\u{0}"))?;
            let top = poly.terms().keys().map(|k| k.0).max().unwrap_or(0) as usize;
            let mut coeffs = vec![0u64; top + 1];
            for (&(i, _), &c) in poly.terms() {
                coeffs[i as usize] = c;
            }
            if deg.is_some_and(|d| d != top) {
                return Err(Error::domain(format!(
                    "modulus has degree {top}, spec says {}",
                    deg.unwrap()
                )));
            }
            Field::new(p, coeffs, &sym)
        }
        None => find_irreducible_with_symbol(p, deg.unwrap_or(1), &sym),
    }
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Comma-separated list of forms, e.g. `x,y,x+2*y`.
pub fn parse_form_list(text: &str, field: &Field, vars: (&str, &str)) -> Result<Vec<BinaryForm>> {
    text.split(',').map(|s| parse_form(s, field, vars)).collect()
}
