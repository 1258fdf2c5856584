//! The syzygy gap fractal `Δ`, the colength function `Φ`, the upper region
//! `𝒰`, critical points, and grid sweeps.
//!
//! Membership `a/q ∈ 𝒰` means `ℓ^a ∈ b^[q]`. The default route never expands
//! `ℓ^a`: writing `a = D·q + Σ d_s p^{e-s}` with digit vectors `d_s`, the
//! colon ideal `(b^[q] : ℓ^a)` is `J_e` where `J_0 = (b : ℓ^D)` and
//! `J_s = (J_{s-1}^[p] : ℓ^{d_s})`.

use std::collections::HashMap;
use std::io::{self, Write};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{format_rational, pow_biguint, split_unit, DigitStream, Rational};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::{BinaryForm, LinearForm};
use crate::syzygy::{colength, syzygy_gap, Colon, IdealKey, TwoGenIdeal};

/// Default cap on grid evaluations.
pub const DEFAULT_CELL_CAP: usize = 200_000;

/// Degree cap for routes that expand `ℓ^a` directly.
pub const DIRECT_DEGREE_CAP: u64 = 6_000;

/// Ordered tuple of pairwise prime linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    field: Field,
    forms: Vec<LinearForm>,
}

impl LinearSystem {
    pub fn new(forms: Vec<LinearForm>) -> Result<LinearSystem> {
        let field = forms
            .first()
            .ok_or_else(|| Error::domain("empty linear system"))?
            .field()
            .clone();
        for (i, l) in forms.iter().enumerate() {
            if *l.field() != field {
                return Err(Error::FieldMismatch("linear forms over different fields".into()));
            }
            for m in &forms[..i] {
                if !l.is_prime_to(m) {
                    return Err(Error::domain(format!("{m} and {l} are proportional")));
                }
            }
        }
        Ok(LinearSystem { field, forms })
    }

    pub fn from_forms(forms: &[BinaryForm]) -> Result<LinearSystem> {
        LinearSystem::new(forms.iter().map(LinearForm::from_form).collect::<Result<_>>()?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Keeps the forms at the given indices.
    pub fn select(&self, idx: &[usize]) -> LinearSystem {
        LinearSystem {
            field: self.field.clone(),
            forms: idx.iter().map(|&i| self.forms[i].clone()).collect(),
        }
    }

    /// `ℓ^a = Π ℓ_i^{a_i}`.
    pub fn power(&self, a: &[u64]) -> BinaryForm {
        assert_eq!(a.len(), self.forms.len());
        let mut acc = BinaryForm::one(&self.field);
        for (l, &e) in self.forms.iter().zip(a) {
            if e > 0 {
                acc = acc.mul(&l.to_form().pow(e));
            }
        }
        acc
    }
}

/// Point `a/q` with `q = p^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridPoint {
    p: u64,
    e: u32,
    a: Vec<BigUint>,
}

impl GridPoint {
    pub fn new(p: u64, e: u32, a: Vec<BigUint>) -> GridPoint {
        GridPoint { p, e, a }
    }

    pub fn from_ints(p: u64, e: u32, a: &[u64]) -> GridPoint {
        GridPoint::new(p, e, a.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> BigUint {
        pow_biguint(self.p, self.e)
    }

    pub fn numerators(&self) -> &[BigUint] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn coordinate(&self, i: usize) -> Rational {
        Rational::new(BigInt::from(self.a[i].clone()), BigInt::from(self.q()))
    }

    pub fn coordinates(&self) -> Vec<Rational> {
        (0..self.a.len()).map(|i| self.coordinate(i)).collect()
    }

    /// Taxicab norm.
    pub fn norm(&self) -> Rational {
        let s: BigUint = self.a.iter().sum();
        Rational::new(BigInt::from(s), BigInt::from(self.q()))
    }

    /// Same point with the smallest possible exponent.
    pub fn reduced(&self) -> GridPoint {
        let mut g = self.clone();
        let p = BigUint::from(self.p);
        while g.e > 0 && g.a.iter().all(|x| (x % &p).is_zero()) {
            g.a = g.a.iter().map(|x| x / &p).collect();
            g.e -= 1;
        }
        g
    }

    /// Same point at exponent `e' ≥ e`.
    pub fn at_exponent(&self, e: u32) -> GridPoint {
        assert!(e >= self.e);
        let f = pow_biguint(self.p, e - self.e);
        GridPoint::new(self.p, e, self.a.iter().map(|x| x * &f).collect())
    }

    fn minus(&self, i: usize, k: &BigUint) -> GridPoint {
        let mut g = self.clone();
        g.a[i] -= k;
        g
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "q": self.q().to_string(),
        })
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({})/{}", a.join(","), self.q())
    }
}

/// Critical point `c` with `Δ(c) = deg UV − ‖c‖`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub point: GridPoint,
    pub delta_value: Rational,
}

fn digits_of(x: &BigUint, p: u64, e: u32) -> (BigUint, Vec<u64>) {
    // returns (x div p^e, base-p digits of x mod p^e, most significant first)
    let pb = BigUint::from(p);
    let mut digits = vec![0u64; e as usize];
    let mut v = x.clone();
    for s in (0..e as usize).rev() {
        let (q, r) = v.div_rem(&pb);
        digits[s] = r.to_u64().unwrap();
        v = q;
    }
    (v, digits)
}

/// Emits a warning when a colon generated during an iteration has degree sum
/// beyond the expected bound.
fn check_degree_bound(j: &Colon, n: usize) {
    if let Colon::Ideal(i) = j {
        let (d1, d2) = i.degrees();
        if d1 + d2 > n {
            log::warn!("colon generators of degrees {d1} + {d2} exceed n = {n}");
        }
    }
}

/// `(b : ℓ^D)` with the trivial-region shortcut.
fn initial_colon(ell: &LinearSystem, b: &TwoGenIdeal, d: &[u64]) -> Result<Colon> {
    let total: u64 = d.iter().sum();
    if total + 1 >= b.deg_uv() {
        return Ok(Colon::Unit);
    }
    b.colon(&ell.power(d))
}

fn step(ell: &LinearSystem, j: &Colon, digits: &[u64]) -> Result<Colon> {
    match j {
        Colon::Unit => Ok(Colon::Unit),
        Colon::Ideal(i) => {
            let next = i.frobenius_power(1).colon(&ell.power(digits))?;
            check_degree_bound(&next, ell.len());
            Ok(next)
        }
    }
}

/// `(b^[q] : ℓ^a)` by the digit chain.
pub fn colon_at(ell: &LinearSystem, b: &TwoGenIdeal, t: &GridPoint) -> Result<Colon> {
    if t.len() != ell.len() {
        return Err(Error::domain("point and linear system differ in length"));
    }
    let q = t.q();
    let total: BigUint = t.a.iter().sum();
    if &total + 1u32 >= &q * b.deg_uv() {
        return Ok(Colon::Unit);
    }
    let split: Vec<(BigUint, Vec<u64>)> = t.a.iter().map(|x| digits_of(x, t.p, t.e)).collect();
    let d0: Vec<u64> = split.iter().map(|s| s.0.to_u64().unwrap()).collect();
    let mut j = initial_colon(ell, b, &d0)?;
    for s in 0..t.e as usize {
        if j == Colon::Unit {
            break;
        }
        let d: Vec<u64> = split.iter().map(|x| x.1[s]).collect();
        j = step(ell, &j, &d)?;
    }
    Ok(j)
}

/// `a/q ∈ 𝒰`, by the digit chain.
pub fn in_upper(ell: &LinearSystem, b: &TwoGenIdeal, t: &GridPoint) -> Result<bool> {
    Ok(colon_at(ell, b, t)? == Colon::Unit)
}

fn small_numerators(t: &GridPoint, b: &TwoGenIdeal) -> Result<(u64, Vec<u64>)> {
    let q = t.q().to_u64().filter(|q| q.saturating_mul(b.deg_uv()) <= DIRECT_DEGREE_CAP);
    let a: Option<Vec<u64>> = t.a.iter().map(|x| x.to_u64()).collect();
    match (q, a) {
        (Some(q), Some(a)) if a.iter().sum::<u64>() <= DIRECT_DEGREE_CAP => Ok((q, a)),
        _ => Err(Error::Resource(format!(
            "direct evaluation at {t} exceeds degree {DIRECT_DEGREE_CAP}"
        ))),
    }
}

/// `a/q ∈ 𝒰` by expanding `ℓ^a` and solving in degree `‖a‖`.
pub fn in_upper_direct(ell: &LinearSystem, b: &TwoGenIdeal, t: &GridPoint) -> Result<bool> {
    let (_, a) = small_numerators(t, b)?;
    Ok(b.frobenius_power(t.e).member(&ell.power(&a)))
}

/// `Δ(a/q) = δ(U^q, V^q, ℓ^a)/q`, from the generator degrees of the colon.
pub fn delta_at(ell: &LinearSystem, b: &TwoGenIdeal, t: &GridPoint) -> Result<Rational> {
    let q = BigInt::from(t.q());
    let norm: BigUint = t.a.iter().sum();
    let num = match colon_at(ell, b, t)? {
        Colon::Unit => (&q * BigInt::from(b.deg_uv()) - BigInt::from(norm)).abs(),
        Colon::Ideal(j) => {
            let (d1, d2) = j.degrees();
            BigInt::from((d1 as i64 - d2 as i64).abs())
        }
    };
    Ok(Rational::new(num, q))
}

/// `Δ` via an explicit syzygy computation on `(U^q, V^q, ℓ^a)`.
pub fn delta_direct(ell: &LinearSystem, b: &TwoGenIdeal, t: &GridPoint) -> Result<Rational> {
    let (q, a) = small_numerators(t, b)?;
    let bq = b.frobenius_power(t.e);
    let g = syzygy_gap(bq.u(), bq.v(), &ell.power(&a))?;
    Ok(Rational::new(BigInt::from(g), BigInt::from(q)))
}

/// `Φ(a/q) = deg⟨U^q, V^q, ℓ^a⟩/q²`, as `deg b − d₁d₂/q²` from the colon.
pub fn phi_at(ell: &LinearSystem, b: &TwoGenIdeal, t: &GridPoint) -> Result<Rational> {
    let q = BigInt::from(t.q());
    let q2 = &q * &q;
    let deg_b = BigInt::from(b.deg_b());
    Ok(match colon_at(ell, b, t)? {
        Colon::Unit => Rational::from_integer(deg_b),
        Colon::Ideal(j) => {
            let (d1, d2) = j.degrees();
            Rational::new(deg_b * &q2 - BigInt::from(d1 * d2), q2)
        }
    })
}

/// `Φ` via an explicit colength computation.
pub fn phi_direct(ell: &LinearSystem, b: &TwoGenIdeal, t: &GridPoint) -> Result<Rational> {
    let (q, a) = small_numerators(t, b)?;
    let bq = b.frobenius_power(t.e);
    let c = colength(&[bq.u().clone(), bq.v().clone(), ell.power(&a)])?;
    Ok(Rational::new(BigInt::from(c), BigInt::from(q * q)))
}

/// `c ∈ 𝒰` and `c − e_i/q ∉ 𝒰` whenever `c_i > 0`.
pub fn is_critical(ell: &LinearSystem, b: &TwoGenIdeal, c: &GridPoint) -> Result<bool> {
    if !in_upper(ell, b, c)? {
        return Ok(false);
    }
    let one = BigUint::one();
    for i in 0..c.len() {
        if !c.a[i].is_zero() && in_upper(ell, b, &c.minus(i, &one))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy descent from `u ∈ 𝒰` in steps of `1/q`, coordinates in ascending
/// order. A single pass suffices because `𝒰` is an upper set.
pub fn find_critical_below(
    ell: &LinearSystem,
    b: &TwoGenIdeal,
    u: &GridPoint,
) -> Result<Option<CriticalPoint>> {
    if !in_upper(ell, b, u)? {
        return Ok(None);
    }
    let mut cur = u.clone();
    for i in 0..cur.len() {
        let max = cur.a[i].clone();
        if max.is_zero() {
            continue;
        }
        let fits = |k: &BigUint, cur: &GridPoint| in_upper(ell, b, &cur.minus(i, k));
        let mut good = BigUint::zero();
        let mut k = BigUint::one();
        // gallop
        while k <= max && fits(&k, &cur)? {
            good = k.clone();
            k <<= 1;
        }
        if good.is_zero() {
            continue;
        }
        // largest fitting step lies in [good, min(k, max + 1))
        let mut hi = if k > max { &max + 1u32 } else { k };
        let mut lo = good;
        while &hi - &lo > BigUint::one() {
            let mid: BigUint = (&lo + &hi) >> 1;
            if fits(&mid, &cur)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        cur = cur.minus(i, &lo);
    }
    let c = cur.reduced();
    let delta_value = Rational::from_integer(BigInt::from(b.deg_uv())) - c.norm();
    Ok(Some(CriticalPoint {
        point: c,
        delta_value,
    }))
}

/// Why no truncation lies in `𝒰`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NeverReason {
    /// The (digit remainders, colon ideal) state repeated.
    Periodic { first: u32, repeat: u32 },
    /// All truncations up to the multiplicative order were checked.
    MultOrder(u64),
}

/// Outcome of scanning the truncations `⟨u⟩_e`, `e = 0, 1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TruncationSearch {
    Upper { e: u32, point: GridPoint },
    Never { e_checked: u32, reason: NeverReason },
    Exhausted { e_max: u32 },
}

/// Scans truncations of a positive vector `u` for membership in `𝒰`.
///
/// `mult_order_bound`, when given, stops the scan after that many digits and
/// reports [`NeverReason::MultOrder`]; callers pass it only where that
/// conclusion is justified.
pub fn search_truncations(
    ell: &LinearSystem,
    b: &TwoGenIdeal,
    u: &[Rational],
    e_max: u32,
    mult_order_bound: Option<u64>,
) -> Result<TruncationSearch> {
    search_truncations_traced(ell, b, u, e_max, mult_order_bound, &mut Vec::new())
}

/// Like [`search_truncations`], also recording each truncation tested.
pub fn search_truncations_traced(
    ell: &LinearSystem,
    b: &TwoGenIdeal,
    u: &[Rational],
    e_max: u32,
    mult_order_bound: Option<u64>,
    trace: &mut Vec<(GridPoint, bool)>,
) -> Result<TruncationSearch> {
    if u.len() != ell.len() {
        return Err(Error::domain("vector and linear system differ in length"));
    }
    let p = ell.field().p();
    let mut nums: Vec<BigUint> = Vec::with_capacity(u.len());
    let mut streams: Vec<DigitStream> = Vec::with_capacity(u.len());
    for x in u {
        let (n0, beta) = split_unit(x)?;
        nums.push(n0.to_biguint().expect("positive"));
        streams.push(DigitStream::new(&beta, p)?);
    }
    let d0: Vec<u64> = nums
        .iter()
        .map(|x| x.to_u64().unwrap_or(u64::MAX / 4))
        .collect();
    let mut j = initial_colon(ell, b, &d0)?;
    trace.push((GridPoint::new(p, 0, nums.clone()), j == Colon::Unit));
    if j == Colon::Unit {
        return Ok(TruncationSearch::Upper {
            e: 0,
            point: GridPoint::new(p, 0, nums),
        });
    }
    let mut seen: HashMap<(Vec<BigInt>, IdealKey), u32> = HashMap::new();
    let state = |streams: &[DigitStream], j: &Colon| match j {
        Colon::Ideal(i) => Some((streams.iter().map(|s| s.state().clone()).collect::<Vec<_>>(), i.key())),
        Colon::Unit => None,
    };
    seen.insert(state(&streams, &j).unwrap(), 0);
    let pb = BigUint::from(p);
    for e in 1..=e_max {
        if let Some(mu) = mult_order_bound {
            if e as u64 > mu {
                return Ok(TruncationSearch::Never {
                    e_checked: e - 1,
                    reason: NeverReason::MultOrder(mu),
                });
            }
        }
        let digits: Vec<u64> = streams.iter_mut().map(|s| s.next().unwrap()).collect();
        for (n, &d) in nums.iter_mut().zip(&digits) {
            *n = &*n * &pb + d;
        }
        j = step(ell, &j, &digits)?;
        trace.push((GridPoint::new(p, e, nums.clone()), j == Colon::Unit));
        match state(&streams, &j) {
            None => {
                return Ok(TruncationSearch::Upper {
                    e,
                    point: GridPoint::new(p, e, nums),
                })
            }
            Some(key) => {
                if let Some(&first) = seen.get(&key) {
                    return Ok(TruncationSearch::Never {
                        e_checked: e,
                        reason: NeverReason::Periodic { first, repeat: e },
                    });
                }
                seen.insert(key, e);
            }
        }
    }
    Ok(TruncationSearch::Exhausted { e_max })
}

/// One evaluated grid cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub a: Vec<u64>,
    pub delta: Rational,
    pub upper: bool,
}

/// Axis-aligned box of numerators at denominator `p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridBox {
    pub lo: Vec<u64>,
    pub hi: Vec<u64>,
    pub e: u32,
}

impl GridBox {
    pub fn cell_count(&self) -> u128 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h.saturating_sub(*l) + 1) as u128)
            .product()
    }

    fn points(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for (l, h) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (*l..=*h).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// Evaluates `Δ` and the region at every point of the box, in parallel.
/// Cells are returned in row-major order (last coordinate fastest).
pub fn grid_sweep(
    ell: &LinearSystem,
    b: &TwoGenIdeal,
    gb: &GridBox,
    cell_cap: usize,
) -> Result<Vec<Cell>> {
    if gb.lo.len() != ell.len() || gb.hi.len() != ell.len() {
        return Err(Error::domain("box dimension differs from the number of forms"));
    }
    if gb.lo.iter().zip(&gb.hi).any(|(l, h)| l > h) {
        return Err(Error::domain("empty box"));
    }
    if gb.cell_count() > cell_cap as u128 {
        return Err(Error::Resource(format!(
            "{} cells exceed the cap of {cell_cap}",
            gb.cell_count()
        )));
    }
    let p = ell.field().p();
    gb.points()
        .into_par_iter()
        .map(|a| {
            let t = GridPoint::from_ints(p, gb.e, &a);
            let j = colon_at(ell, b, &t)?;
            let upper = j == Colon::Unit;
            let delta = delta_at(ell, b, &t)?;
            Ok(Cell { a, delta, upper })
        })
        .collect()
}

/// Cell on the slice `‖a/q‖ = deg UV` of a three-form system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCell {
    pub a: [u64; 3],
    pub boundary: bool,
}

/// Classifies every point `a/q` with `‖a‖ = q·deg UV` and `a_i ≤ hi` as on
/// the boundary of `𝒰` (no truncation in `𝒰`) or not.
pub fn staircase_slice(
    ell: &LinearSystem,
    b: &TwoGenIdeal,
    e: u32,
    hi: u64,
    e_max: u32,
    cell_cap: usize,
) -> Result<Vec<SliceCell>> {
    if ell.len() != 3 {
        return Err(Error::domain("the staircase slice needs exactly three forms"));
    }
    let p = ell.field().p();
    let q = p.checked_pow(e).ok_or_else(|| Error::Resource("q too large".into()))?;
    let total = q * b.deg_uv();
    let mut pts = Vec::new();
    for a1 in 0..=hi {
        for a2 in 0..=hi {
            if a1 + a2 <= total && total - a1 - a2 <= hi {
                pts.push([a1, a2, total - a1 - a2]);
            }
        }
    }
    if pts.len() > cell_cap {
        return Err(Error::Resource(format!(
            "{} cells exceed the cap of {cell_cap}",
            pts.len()
        )));
    }
    pts.into_par_iter()
        .map(|a| {
            let idx: Vec<usize> = (0..3).filter(|&i| a[i] > 0).collect();
            let sub = ell.select(&idx);
            let u: Vec<Rational> = idx
                .iter()
                .map(|&i| Rational::new(BigInt::from(a[i]), BigInt::from(q)))
                .collect();
            let boundary = match search_truncations(&sub, b, &u, e_max, None)? {
                TruncationSearch::Upper { .. } => false,
                TruncationSearch::Never { .. } => true,
                TruncationSearch::Exhausted { e_max } => {
                    return Err(Error::Resource(format!(
                        "no decision within {e_max} digits at {a:?}"
                    )))
                }
            };
            Ok(SliceCell { a, boundary })
        })
        .collect()
}

/// CSV with header `a1,…,an,q,delta_num,delta_den,region`.
pub fn write_csv<W: Write + ?Sized>(out: &mut W, cells: &[Cell], q: &BigUint) -> io::Result<()> {
    let n = cells.first().map_or(0, |c| c.a.len());
    let head: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    writeln!(out, "{},q,delta_num,delta_den,region", head.join(","))?;
    for c in cells {
        let a: Vec<String> = c.a.iter().map(|x| x.to_string()).collect();
        writeln!(
            out,
            "{},{},{},{},{}",
            a.join(","),
            q,
            c.delta.numer(),
            c.delta.denom(),
            if c.upper { "U" } else { "L" }
        )?;
    }
    Ok(())
}

/// 8-bit grayscale image, row-major, origin in the first pixel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl Image {
    pub fn write_pgm<W: Write + ?Sized>(&self, out: &mut W, binary: bool) -> io::Result<()> {
        if binary {
            write!(out, "P5\n{} {}\n255\n", self.width, self.height)?;
            out.write_all(&self.pixels)
        } else {
            writeln!(out, "P2\n{} {}\n255", self.width, self.height)?;
            for row in self.pixels.chunks(self.width.max(1)) {
                let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
            Ok(())
        }
    }
}

fn plane_dims(cells: &[Cell]) -> Result<(u64, u64, usize, usize)> {
    if cells.iter().any(|c| c.a.len() != 2) {
        return Err(Error::domain("images need a two-dimensional sweep"));
    }
    let lo0 = cells.iter().map(|c| c.a[0]).min().unwrap_or(0);
    let lo1 = cells.iter().map(|c| c.a[1]).min().unwrap_or(0);
    let w = cells.iter().map(|c| c.a[0]).max().unwrap_or(0) - lo0 + 1;
    let h = cells.iter().map(|c| c.a[1]).max().unwrap_or(0) - lo1 + 1;
    Ok((lo0, lo1, w as usize, h as usize))
}

/// `𝒰` white, `𝓛` black; columns follow `a1`, rows follow `a2`.
pub fn region_image(cells: &[Cell]) -> Result<Image> {
    let (lo0, lo1, w, h) = plane_dims(cells)?;
    let mut pixels = vec![0u8; w * h];
    for c in cells {
        let idx = (c.a[1] - lo1) as usize * w + (c.a[0] - lo0) as usize;
        pixels[idx] = if c.upper { 255 } else { 0 };
    }
    Ok(Image {
        width: w,
        height: h,
        pixels,
    })
}

/// `Δ` scaled so the largest value in the sweep is white.
pub fn delta_image(cells: &[Cell]) -> Result<Image> {
    let (lo0, lo1, w, h) = plane_dims(cells)?;
    let max = cells
        .iter()
        .map(|c| c.delta.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let mut pixels = vec![0u8; w * h];
    for c in cells {
        let v = if max.is_zero() {
            0
        } else {
            let r = &c.delta * Rational::from_integer(BigInt::from(255)) / &max;
            r.round().to_integer().to_u8().unwrap_or(255)
        };
        pixels[(c.a[1] - lo1) as usize * w + (c.a[0] - lo0) as usize] = v;
    }
    Ok(Image {
        width: w,
        height: h,
        pixels,
    })
}

/// Slice picture: columns `a1`, rows `a2`; boundary black, other slice
/// points white, points off the slice mid gray.
pub fn staircase_image(cells: &[SliceCell], hi: u64) -> Image {
    let w = hi as usize + 1;
    let mut pixels = vec![128u8; w * w];
    for c in cells {
        pixels[c.a[1] as usize * w + c.a[0] as usize] = if c.boundary { 0 } else { 255 };
    }
    Image {
        width: w,
        height: w,
        pixels,
    }
}

/// Renders `a/q` as `num/den` strings.
pub fn format_point(t: &GridPoint) -> Vec<String> {
    t.coordinates().iter().map(format_rational).collect()
}
