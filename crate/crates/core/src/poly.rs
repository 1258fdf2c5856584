//! Binary forms over a finite field and their factorization into linear forms.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{find_irreducible, Elem, Embedding, Field};
use crate::upoly;

/// Default seed for randomized equal-degree splitting.
pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// Homogeneous polynomial in `x, y`; `coeffs[i]` is the coefficient of
/// `x^{d-i} y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Elem>,
}

impl BinaryForm {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field, degree: usize) -> BinaryForm {
        BinaryForm::new(field, vec![0; degree + 1])
    }

    pub fn constant(field: &Field, c: Elem) -> BinaryForm {
        BinaryForm::new(field, vec![c])
    }

    pub fn one(field: &Field) -> BinaryForm {
        BinaryForm::constant(field, 1)
    }

    /// `c·x^i y^j`.
    pub fn monomial(field: &Field, i: usize, j: usize, c: Elem) -> BinaryForm {
        let mut coeffs = vec![0; i + j + 1];
        coeffs[j] = c;
        BinaryForm::new(field, coeffs)
    }

    pub fn x(field: &Field) -> BinaryForm {
        BinaryForm::new(field, vec![1, 0])
    }

    pub fn y(field: &Field) -> BinaryForm {
        BinaryForm::new(field, vec![0, 1])
    }

    /// `αx + βy`.
    pub fn linear(field: &Field, alpha: Elem, beta: Elem) -> BinaryForm {
        BinaryForm::new(field, vec![alpha, beta])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    /// Single nonzero term, returned as `(i, j)` for `x^i y^j`.
    pub fn as_monomial(&self) -> Option<(usize, usize)> {
        let mut it = self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0);
        let (j, _) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((self.degree() - j, j))
    }

    fn check_field(&self, other: &BinaryForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field.spec_string(),
                other.field.spec_string()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        debug_assert!(self.field == other.field);
        let k = &self.field;
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    out[i + j] = k.add(out[i + j], k.mul(a, b));
                }
            }
        }
        BinaryForm::new(k, out)
    }

    pub fn checked_mul(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.check_field(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.check_field(other)?;
        if self.degree() != other.degree() && !self.is_zero() && !other.is_zero() {
            return Err(Error::Inhomogeneous(
                self.degree() as u64,
                other.degree() as u64,
            ));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let k = &self.field;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| k.add(a, b))
            .collect();
        Ok(BinaryForm::new(k, c))
    }

    pub fn neg(&self) -> BinaryForm {
        let k = &self.field;
        BinaryForm::new(k, self.coeffs.iter().map(|&a| k.neg(a)).collect())
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> BinaryForm {
        let k = &self.field;
        BinaryForm::new(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn pow(&self, mut n: u64) -> BinaryForm {
        let mut acc = BinaryForm::one(&self.field);
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
        acc
    }

    /// `self^{p^e}`, computed by spreading coefficients.
    pub fn frobenius_power(&self, e: u32) -> BinaryForm {
        let k = &self.field;
        let q = (k.p() as usize).pow(e);
        let mut out = vec![0; self.degree() * q + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let mut v = c;
                for _ in 0..e {
                    v = k.frob(v);
                }
                out[i * q] = v;
            }
        }
        BinaryForm::new(k, out)
    }

    pub fn evaluate(&self, x: Elem, y: Elem) -> Elem {
        let k = &self.field;
        let d = self.degree() as u64;
        let mut acc = 0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let t = k.mul(c, k.mul(k.pow(x, d - i as u64), k.pow(y, i as u64)));
                acc = k.add(acc, t);
            }
        }
        acc
    }

    pub fn embed(&self, e: &Embedding) -> Result<BinaryForm> {
        if *e.source() != self.field {
            return Err(Error::FieldMismatch("embedding source differs".into()));
        }
        Ok(BinaryForm::new(
            e.target(),
            self.coeffs.iter().map(|&c| e.apply(c)).collect(),
        ))
    }

    /// Largest `m` with `y^m | F`.
    pub fn y_multiplicity(&self) -> usize {
        self.coeffs.iter().position(|&c| c != 0).unwrap_or(self.degree())
    }

    /// Largest `m` with `x^m | F`.
    pub fn x_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .rev()
            .position(|&c| c != 0)
            .unwrap_or(self.degree())
    }

    /// `F(x, 1)` as a univariate polynomial in `x`, low degree first.
    pub fn dehomogenize(&self) -> upoly::UPoly {
        upoly::trim(self.coeffs.iter().rev().copied().collect())
    }

    /// `y^{d - deg f} f(x/y)` for univariate `f`.
    pub fn homogenize(field: &Field, f: &[Elem], degree: usize) -> BinaryForm {
        let mut coeffs = vec![0; degree + 1];
        for (j, &c) in f.iter().enumerate() {
            coeffs[degree - j] = c;
        }
        BinaryForm::new(field, coeffs)
    }

    /// Scales so the first nonzero coefficient (highest power of `x`) is 1.
    pub fn normalized(&self) -> BinaryForm {
        match self.coeffs.iter().find(|&&c| c != 0) {
            None => self.clone(),
            Some(&c) => self.scale(self.field.inv(c).unwrap()),
        }
    }

    /// Normalized greatest common divisor.
    pub fn gcd(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.check_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Err(Error::domain("gcd of the zero form"));
        }
        let k = &self.field;
        let my = self.y_multiplicity().min(other.y_multiplicity());
        let mx = self.x_multiplicity().min(other.x_multiplicity());
        let g = upoly::gcd(k, &self.strip().dehomogenize(), &other.strip().dehomogenize());
        let dg = upoly::degree(&g).unwrap_or(0);
        let core = BinaryForm::homogenize(k, &g, dg);
        Ok(BinaryForm::monomial(k, mx, my, 1).mul(&core).normalized())
    }

    /// Removes all factors of `x` and `y`.
    fn strip(&self) -> BinaryForm {
        let my = self.y_multiplicity();
        let mx = self.x_multiplicity();
        if mx + my > self.degree() {
            return BinaryForm::one(&self.field);
        }
        BinaryForm::new(&self.field, self.coeffs[my..=self.degree() - mx].to_vec())
    }

    /// Exact division; errors if `other` does not divide `self`.
    pub fn div_exact(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.check_field(other)?;
        let k = &self.field;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if other.degree() > self.degree() {
            return Err(Error::domain("divisor has larger degree"));
        }
        // long division on coefficient vectors indexed by powers of y
        let mut r = self.coeffs.clone();
        let lead = other.y_multiplicity();
        let inv = k.inv(other.coeffs[lead]).unwrap();
        let qd = self.degree() - other.degree();
        let mut q = vec![0; qd + 1];
        for j in 0..=qd {
            let c = k.mul(r[j + lead], inv);
            if c == 0 {
                continue;
            }
            q[j] = c;
            for (i, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    r[i + j] = k.sub(r[i + j], k.mul(c, b));
                }
            }
        }
        if r.iter().any(|&c| c != 0) {
            return Err(Error::domain("form is not divisible"));
        }
        Ok(BinaryForm::new(k, q))
    }

    pub fn format_with(&self, vars: (&str, &str)) -> String {
        let k = &self.field;
        let d = self.degree();
        let mut terms = Vec::new();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let i = d - j;
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push(vars.0.to_string()),
                _ => mono.push(format!("{}^{i}", vars.0)),
            }
            match j {
                0 => {}
                1 => mono.push(vars.1.to_string()),
                _ => mono.push(format!("{}^{j}", vars.1)),
            }
            let cs = k.format(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            if mono.is_empty() {
                terms.push(cs);
            } else if c == 1 {
                terms.push(mono.join("*"));
            } else {
                terms.push(format!("{cs}*{}", mono.join("*")));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(("x", "y")))
    }
}

/// `αx + βy`, normalized so that `α = 1`, or `α = 0` and `β = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    field: Field,
    alpha: Elem,
    beta: Elem,
}

impl LinearForm {
    pub fn new(field: &Field, alpha: Elem, beta: Elem) -> Result<LinearForm> {
        if alpha == 0 && beta == 0 {
            return Err(Error::domain("zero linear form"));
        }
        let (a, b) = if alpha != 0 {
            (1, field.mul(beta, field.inv(alpha)?))
        } else {
            (0, 1)
        };
        Ok(LinearForm {
            field: field.clone(),
            alpha: a,
            beta: b,
        })
    }

    pub fn x(field: &Field) -> LinearForm {
        LinearForm::new(field, 1, 0).unwrap()
    }

    pub fn y(field: &Field) -> LinearForm {
        LinearForm::new(field, 0, 1).unwrap()
    }

    pub fn from_form(f: &BinaryForm) -> Result<LinearForm> {
        if f.degree() != 1 {
            return Err(Error::domain(format!("{f} is not linear")));
        }
        LinearForm::new(f.field(), f.coeffs()[0], f.coeffs()[1])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    pub fn to_form(&self) -> BinaryForm {
        BinaryForm::linear(&self.field, self.alpha, self.beta)
    }

    /// `αβ' − βα' ≠ 0`.
    pub fn is_prime_to(&self, other: &LinearForm) -> bool {
        let k = &self.field;
        k.sub(k.mul(self.alpha, other.beta), k.mul(self.beta, other.alpha)) != 0
    }

    pub fn embed(&self, e: &Embedding) -> LinearForm {
        LinearForm {
            field: e.target().clone(),
            alpha: e.apply(self.alpha),
            beta: e.apply(self.beta),
        }
    }

    fn rank(&self) -> u8 {
        match (self.alpha, self.beta) {
            (1, 0) => 0,
            (0, _) => 1,
            _ => 2,
        }
    }

    /// Canonical order: `x`, then `y`, then `x + βy` by the coefficient
    /// vector of `β`.
    pub fn canonical_cmp(&self, other: &LinearForm) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.field.cmp_coeffs(self.beta, other.beta))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_form())
    }
}

/// `unit · Π ℓ_i^{a_i}` over a splitting field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    pub field: Field,
    pub unit: Elem,
    pub factors: Vec<(LinearForm, u64)>,
}

impl LinearFactorization {
    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        self.factors.iter().map(|f| f.0.clone()).collect()
    }

    pub fn multiplicities(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.1).collect()
    }

    pub fn expand(&self) -> BinaryForm {
        let mut acc = BinaryForm::constant(&self.field, self.unit);
        for (l, m) in &self.factors {
            acc = acc.mul(&l.to_form().pow(*m));
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let k = &self.field;
        json!({
            "unit": k.format(self.unit),
            "factors": self.factors.iter().map(|(l, m)| json!({
                "alpha": k.format(l.alpha),
                "beta": k.format(l.beta),
                "form": l.to_string(),
                "mult": m,
            })).collect::<Vec<_>>(),
            "field": field_json(k),
        })
    }
}

pub fn field_json(k: &Field) -> Value {
    let prime = Field::prime(k.p()).unwrap();
    json!({
        "p": k.p(),
        "deg": k.degree(),
        "mod": upoly::display(&prime, k.modulus(), k.symbol()),
    })
}

/// Splits `G` completely into linear forms over the smallest extension of
/// its field containing all roots.
pub fn factor_linear(g: &BinaryForm) -> Result<LinearFactorization> {
    factor_linear_seeded(g, DEFAULT_SEED)
}

pub fn factor_linear_seeded(g: &BinaryForm, seed: u64) -> Result<LinearFactorization> {
    if g.is_zero() {
        return Err(Error::domain("cannot factor the zero form"));
    }
    if g.is_constant() {
        return Err(Error::domain("cannot factor a constant"));
    }
    let k = g.field();
    let my = g.y_multiplicity();
    let mx = g.x_multiplicity();
    let core = g.strip();
    let f = core.dehomogenize();
    let unit = *f.last().unwrap();
    let irr = upoly::factor(k, &f, seed)?;
    let l = irr
        .iter()
        .map(|(h, _)| (upoly::degree(h).unwrap()) as u64)
        .fold(1u64, |acc, d| acc.lcm(&d));
    let (target, emb) = if l == 1 {
        (k.clone(), None)
    } else {
        let t = find_irreducible(k.p(), k.degree() * l as usize)?;
        let e = Embedding::new(k, &t)?;
        (t, Some(e))
    };
    let lift = |c: Elem| emb.as_ref().map_or(c, |e| e.apply(c));
    let mut factors: Vec<(LinearForm, u64)> = Vec::new();
    if mx > 0 {
        factors.push((LinearForm::x(&target), mx as u64));
    }
    if my > 0 {
        factors.push((LinearForm::y(&target), my as u64));
    }
    for (h, m) in &irr {
        let hl: Vec<Elem> = h.iter().map(|&c| lift(c)).collect();
        let rs = upoly::roots(&target, &hl, seed)?;
        debug_assert_eq!(rs.len(), hl.len() - 1);
        for r in rs {
            factors.push((LinearForm::new(&target, 1, target.neg(r))?, *m as u64));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(LinearFactorization {
        field: target.clone(),
        unit: lift(unit),
        factors,
    })
}
