//! Arithmetic in `𝔽_p` and one explicit extension `𝔽_{p^k} = 𝔽_p[a]/(m(a))`.
//!
//! Elements are packed as integers `Σ c_i p^i` (coefficient of `a^i` in base-p
//! digit `i`), so the field size must fit in a `u64`. Fields with at most
//! 2^16 elements use log/antilog tables for multiplication.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::upoly;

/// Packed field element; only meaningful together with its [`Field`].
pub type Elem = u64;

const TABLE_LIMIT: u64 = 1 << 16;

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub struct FieldDescriptor {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    symbol: String,
    size: u64,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("symbol", &self.symbol)
            .finish()
    }
}

/// Shared handle to an immutable field descriptor.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// The prime field `𝔽_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        if p >= 1 << 62 {
            return Err(Error::Resource(format!("prime {p} too large")));
        }
        Ok(Field(Arc::new(FieldDescriptor {
            p,
            k: 1,
            modulus: vec![0, 1],
            symbol: "a".into(),
            size: p,
            tables: None,
        })))
    }

    /// `𝔽_p[sym]/(modulus)`; `modulus` is low-degree-first and must be monic
    /// and irreducible.
    pub fn new(p: u64, modulus: Vec<u64>, symbol: &str) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        let k = modulus.len().saturating_sub(1);
        if k == 0 {
            return Err(Error::domain("modulus must have degree at least 1"));
        }
        if modulus[k] != 1 {
            return Err(Error::domain("modulus must be monic"));
        }
        if k == 1 {
            // any monic linear modulus gives 𝔽_p itself; normalize to `t`
            let mut f = Field::prime(p)?;
            Arc::get_mut(&mut f.0).unwrap().symbol = symbol.to_string();
            return Ok(f);
        }
        let size = (p as u128)
            .checked_pow(k as u32)
            .filter(|&s| s < (1u128 << 63))
            .ok_or_else(|| Error::Resource(format!("field of size {p}^{k} too large")))?
            as u64;
        let prime = Field::prime(p)?;
        if !upoly::is_irreducible(&prime, &modulus) {
            return Err(Error::domain(format!(
                "modulus {} is reducible over F_{p}",
                upoly::display(&prime, &modulus, symbol)
            )));
        }
        let mut desc = FieldDescriptor {
            p,
            k,
            modulus,
            symbol: symbol.to_string(),
            size,
            tables: None,
        };
        if size <= TABLE_LIMIT {
            desc.tables = Some(build_tables(&desc));
        }
        Ok(Field(Arc::new(desc)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn size(&self) -> u64 {
        self.0.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn symbol(&self) -> &str {
        &self.0.symbol
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// The generator `a` (equal to a residue when `k = 1`).
    pub fn generator(&self) -> Elem {
        if self.0.k == 1 {
            // root of the normalized modulus `t`
            0
        } else {
            self.0.p
        }
    }

    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.0.p as i128;
        ((n as i128).rem_euclid(p)) as u64
    }

    pub fn from_biguint(&self, n: &BigUint) -> Elem {
        (n % BigUint::from(self.0.p)).to_u64().unwrap()
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        let p = self.0.p;
        let mut out = Vec::with_capacity(self.0.k);
        let mut v = x;
        for _ in 0..self.0.k {
            out.push(v % p);
            v /= p;
        }
        out
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Elem {
        let p = self.0.p;
        let mut v = 0u64;
        for &d in c.iter().rev() {
            v = v * p + d % p;
        }
        v
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            let mut d = a % p + b % p;
            if d >= p {
                d -= p;
            }
            out += d * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.k == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 {
            let d = a % p;
            if d != 0 {
                out += (p - d) * place;
            }
            place = place.wrapping_mul(p);
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.0.k == 1 {
            let p = self.0.p;
            return if a >= b { a - b } else { a + p - b };
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        if d.k == 1 {
            return ((a as u128 * b as u128) % d.p as u128) as u64;
        }
        if let Some(t) = &d.tables {
            let i = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[i] as u64;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        let p = d.p as u128;
        let k = d.k;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for top in (k..2 * k - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                let m = d.modulus[i] as u128;
                if m != 0 {
                    let idx = top - k + i;
                    prod[idx] = (prod[idx] + (p - c) * m) % p;
                }
            }
        }
        let low: Vec<u64> = prod[..k].iter().map(|&c| c as u64).collect();
        self.from_coeffs(&low)
    }

    pub fn pow(&self, a: Elem, mut n: u64) -> Elem {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.0.tables {
            let ord = self.0.size - 1;
            let l = (t.log[a as usize] as u128 * (n % ord) as u128 % ord as u128) as usize;
            return t.exp[l] as u64;
        }
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: Elem, n: &BigUint) -> Elem {
        if n.is_zero() {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        // reduce the exponent modulo the group order
        let ord = BigUint::from(self.0.size - 1);
        let r = (n % &ord).to_u64().unwrap();
        self.pow(a, r)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let ord = (self.0.size - 1) as usize;
            let l = t.log[a as usize] as usize;
            return Ok(t.exp[(ord - l) % ord] as u64);
        }
        Ok(self.pow(a, self.0.size - 2))
    }

    /// `x ↦ x^p`.
    pub fn frob(&self, a: Elem) -> Elem {
        if self.0.k == 1 {
            return a;
        }
        self.pow(a, self.0.p)
    }

    /// The unique `y` with `y^p = x`, namely `x^{p^{k-1}}`.
    pub fn pth_root(&self, a: Elem) -> Elem {
        let mut y = a;
        for _ in 1..self.0.k {
            y = self.frob(y);
        }
        y
    }

    pub fn is_zero(&self, a: Elem) -> bool {
        a == 0
    }

    pub fn element(&self, value: Elem) -> FieldElement {
        debug_assert!(value < self.0.size);
        FieldElement {
            field: self.clone(),
            value,
        }
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.size
    }

    /// Renders an element as a polynomial in the generator symbol.
    pub fn format(&self, a: Elem) -> String {
        if self.0.k == 1 {
            return a.to_string();
        }
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let s = &self.0.symbol;
            let t = match (i, ci) {
                (0, _) => ci.to_string(),
                (1, 1) => s.clone(),
                (1, _) => format!("{ci}*{s}"),
                (_, 1) => format!("{s}^{i}"),
                _ => format!("{ci}*{s}^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Compact description such as `p=5;deg=3;mod=a^3+a+1`.
    pub fn spec_string(&self) -> String {
        if self.0.k == 1 {
            format!("p={}", self.0.p)
        } else {
            let prime = Field::prime(self.0.p).unwrap();
            format!(
                "p={};deg={};mod={}",
                self.0.p,
                self.0.k,
                upoly::display(&prime, &self.0.modulus, &self.0.symbol)
            )
        }
    }

    /// Compares two elements by coefficient vectors, low degree first.
    pub fn cmp_coeffs(&self, a: Elem, b: Elem) -> std::cmp::Ordering {
        self.coeffs(a).cmp(&self.coeffs(b))
    }
}

fn build_tables(desc: &FieldDescriptor) -> Tables {
    // temporary field without tables to run the slow multiplication
    let bare = Field(Arc::new(FieldDescriptor {
        p: desc.p,
        k: desc.k,
        modulus: desc.modulus.clone(),
        symbol: desc.symbol.clone(),
        size: desc.size,
        tables: None,
    }));
    let ord = desc.size - 1;
    let factors = prime_factors(ord);
    let gen = (2..desc.size)
        .find(|&g| factors.iter().all(|&r| bare.pow(g, ord / r) != 1))
        .unwrap_or(1);
    let mut exp = vec![0u32; 2 * ord as usize];
    let mut log = vec![0u32; desc.size as usize];
    let mut x = 1u64;
    for i in 0..ord as usize {
        exp[i] = x as u32;
        log[x as usize] = i as u32;
        x = bare.mul(x, gen);
    }
    for i in ord as usize..2 * ord as usize {
        exp[i] = exp[i - ord as usize];
    }
    Tables { exp, log }
}

/// The lexicographically smallest monic irreducible polynomial of degree `k`
/// over `𝔽_p`, coefficients compared low-degree-first.
pub fn find_irreducible(p: u64, k: usize) -> Result<Field> {
    find_irreducible_with_symbol(p, k, "a")
}

pub fn find_irreducible_with_symbol(p: u64, k: usize, symbol: &str) -> Result<Field> {
    if k == 0 {
        return Err(Error::domain("extension degree must be at least 1"));
    }
    let prime = Field::prime(p)?;
    if k == 1 {
        let mut f = prime;
        Arc::get_mut(&mut f.0).unwrap().symbol = symbol.to_string();
        return Ok(f);
    }
    let count = (p as u128).checked_pow(k as u32).filter(|&s| s < (1u128 << 63)).ok_or_else(
        || Error::Resource(format!("field of size {p}^{k} too large")),
    )? as u64;
    // index = c_0 p^{k-1} + c_1 p^{k-2} + … so ascending order is
    // lexicographic with c_0 most significant
    for idx in 0..count {
        let mut coeffs = vec![0u64; k + 1];
        let mut v = idx;
        for i in (0..k).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        coeffs[k] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if upoly::is_irreducible(&prime, &coeffs) {
            return Field::new(p, coeffs, symbol);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Field element with its field attached, for the public API.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.value)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field.spec_string(),
                other.field.spec_string()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.element(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.element(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.field.element(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.element(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> FieldElement {
        self.field.element(self.field.pow(self.value, n))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.field.element(self.field.frob(self.value))
    }

    pub fn pth_root(&self) -> FieldElement {
        self.field.element(self.field.pth_root(self.value))
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.value))
    }
}

/// Ring embedding of a subfield into a larger field, fixed by the image of
/// the source generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    powers: Vec<Elem>,
}

impl Embedding {
    /// Uses the root of the source modulus in `target` whose coefficient
    /// vector is lexicographically smallest.
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if source.p() != target.p() {
            return Err(Error::domain("fields of different characteristic"));
        }
        if target.degree() % source.degree() != 0 {
            return Err(Error::domain(format!(
                "degree {} does not divide degree {}",
                source.degree(),
                target.degree()
            )));
        }
        let k = source.degree();
        let image = if source == target {
            source.generator()
        } else if k == 1 {
            0
        } else {
            let modulus: Vec<Elem> = source.modulus().to_vec();
            let roots = upoly::roots(target, &modulus, 0x5eed)?;
            roots
                .into_iter()
                .min_by(|a, b| target.cmp_coeffs(*a, *b))
                .ok_or_else(|| Error::domain("source modulus has no root in target"))?
        };
        let mut powers = Vec::with_capacity(k);
        let mut x = target.one();
        for _ in 0..k {
            powers.push(x);
            x = target.mul(x, image);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        if self.source.degree() == 1 {
            return x;
        }
        let t = &self.target;
        let mut acc = t.zero();
        for (c, &pw) in self.source.coeffs(x).iter().zip(&self.powers) {
            if *c != 0 {
                acc = t.add(acc, t.mul(t.from_int(*c as i64), pw));
            }
        }
        acc
    }
}

pub fn embed(x: &FieldElement, target: &Field) -> Result<FieldElement> {
    let e = Embedding::new(x.field(), target)?;
    Ok(target.element(e.apply(x.value())))
}
