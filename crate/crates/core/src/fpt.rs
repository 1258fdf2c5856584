//! F-thresholds `ft^b(ℓ^a)` and F-pure thresholds of homogeneous and
//! quasi-homogeneous binary polynomials.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{format_rational, mult_order, split_p_power, truncate, DigitStream, Rational};
use crate::error::{Error, Result};
use crate::fractal::{
    find_critical_below, is_critical, search_truncations_traced, CriticalPoint, GridPoint,
    LinearSystem, NeverReason, TruncationSearch, DIRECT_DEGREE_CAP,
};
use crate::parse::Sparse;
use crate::poly::{factor_linear_seeded, BinaryForm, DEFAULT_SEED};
use crate::syzygy::TwoGenIdeal;

pub const DEFAULT_E_MAX: u32 = 40;

/// Largest `p·deg G` for the debug ν cross-check.
const ORACLE_CHECK_DEGREE: u64 = 600;

/// Denominators above this skip the multiplicative-order bound.
const MULT_ORDER_LIMIT: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FtConfig {
    pub e_max: u32,
    pub seed: u64,
    /// Run the ν cross-check in release builds too.
    pub debug_oracle: bool,
    /// Keep the list of truncations tested.
    pub trace: bool,
}

impl Default for FtConfig {
    fn default() -> Self {
        FtConfig {
            e_max: DEFAULT_E_MAX,
            seed: DEFAULT_SEED,
            debug_oracle: false,
            trace: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FptValue {
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum N3Case {
    /// `⌊u⌋ ∈ 𝒰`: an integer critical point.
    One,
    /// The digit sums are `2p − 2` in every spot.
    TwoA,
    /// First deviating digit sum is `2p − 3`.
    TwoBi,
    /// First deviating digit sum is `2p − 1`.
    TwoBii,
}

impl N3Case {
    pub fn label(self) -> &'static str {
        match self {
            N3Case::One => "1",
            N3Case::TwoA => "2a",
            N3Case::TwoBi => "2b-i",
            N3Case::TwoBii => "2b-ii",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// A factor of multiplicity above half the degree; `index` is 1-based.
    Degenerate { index: usize, multiplicity: u64 },
    CriticalPoint { point: CriticalPoint, e: u32 },
    TrivialRegion(NeverReason),
    ClosedFormN3 {
        case: N3Case,
        point: Option<GridPoint>,
    },
    CertifiedOnly { e_max: u32 },
}

/// Minimal denominator written as `k·p^m` with `p ∤ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorAnalysis {
    pub k: BigInt,
    pub p_power: u32,
}

impl DenominatorAnalysis {
    pub fn of(value: &Rational, p: u64) -> DenominatorAnalysis {
        let (p_power, k) = split_p_power(value.denom(), p);
        DenominatorAnalysis { k, p_power }
    }

    /// `k` divides one of the given integers.
    pub fn k_divides_any(&self, candidates: &[u64]) -> bool {
        candidates
            .iter()
            .any(|&c| c > 0 && (BigInt::from(c) % &self.k).is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub e: u32,
    pub truncation: GridPoint,
    pub upper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptResult {
    pub value: FptValue,
    pub provenance: Provenance,
    pub lambda: Rational,
    pub p: u64,
    pub e_used: u32,
    pub diagnostics: Vec<Diagnostic>,
}

impl FptResult {
    fn exact(value: Rational, provenance: Provenance, lambda: Rational, p: u64, e_used: u32) -> Self {
        FptResult {
            value: FptValue::Exact(value),
            provenance,
            lambda,
            p,
            e_used,
            diagnostics: Vec::new(),
        }
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        match &self.value {
            FptValue::Exact(v) => Some(v),
            FptValue::Interval { .. } => None,
        }
    }

    pub fn critical_point(&self) -> Option<&GridPoint> {
        match &self.provenance {
            Provenance::CriticalPoint { point, .. } => Some(&point.point),
            Provenance::ClosedFormN3 { point, .. } => point.as_ref(),
            _ => None,
        }
    }

    pub fn denominator_analysis(&self) -> Option<DenominatorAnalysis> {
        self.exact_value().map(|v| DenominatorAnalysis::of(v, self.p))
    }

    pub fn to_json(&self) -> Value {
        let value = match &self.value {
            FptValue::Exact(v) => json!(format_rational(v)),
            FptValue::Interval { lo, hi } => {
                json!({"lo": format_rational(lo), "hi": format_rational(hi)})
            }
        };
        let provenance = match &self.provenance {
            Provenance::Degenerate { index, multiplicity } => {
                json!({"kind": "Degenerate", "index": index, "multiplicity": multiplicity})
            }
            Provenance::CriticalPoint { e, .. } => json!({"kind": "CriticalPoint", "e": e}),
            Provenance::TrivialRegion(NeverReason::Periodic { first, repeat }) => json!({
                "kind": "TrivialRegion", "proof": "periodic", "first": first, "repeat": repeat,
            }),
            Provenance::TrivialRegion(NeverReason::MultOrder(mu)) => json!({
                "kind": "TrivialRegion", "proof": "mult_order", "mu": mu,
            }),
            Provenance::ClosedFormN3 { case, .. } => {
                json!({"kind": "ClosedFormN3", "case": case.label()})
            }
            Provenance::CertifiedOnly { e_max } => json!({"kind": "CertifiedOnly", "e_max": e_max}),
        };
        let mut out = json!({
            "value": value,
            "provenance": provenance,
            "lambda": format_rational(&self.lambda),
            "e_used": self.e_used,
            "critical_point": self.critical_point().map_or(Value::Null, |c| c.to_json()),
            "denominator_analysis": self.denominator_analysis().map_or(Value::Null, |d| json!({
                "k": d.k.to_string(),
                "p_power": d.p_power,
            })),
        });
        if !self.diagnostics.is_empty() {
            out["diagnostics"] = self
                .diagnostics
                .iter()
                .map(|d| json!({"e": d.e, "truncation": d.truncation.to_json(), "upper": d.upper}))
                .collect();
        }
        out
    }
}

fn ratio(a: u64, b: u64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn is_maximal(b: &TwoGenIdeal) -> bool {
    b.degrees() == (1, 1)
}

/// `ft^b(ℓ^a)`. Zero entries of `a` are dropped.
pub fn ft_general(
    ell: &LinearSystem,
    a: &[u64],
    b: &TwoGenIdeal,
    cfg: &FtConfig,
) -> Result<FptResult> {
    ft_core(ell, a, b, cfg, is_maximal(b))
}

/// `polynomial_threshold` marks calls whose value is the F-pure threshold of
/// a polynomial, which is what licenses the multiplicative-order bound.
fn ft_core(
    ell: &LinearSystem,
    a: &[u64],
    b: &TwoGenIdeal,
    cfg: &FtConfig,
    polynomial_threshold: bool,
) -> Result<FptResult> {
    if ell.field() != b.field() {
        return Err(Error::FieldMismatch("forms and ideal over different fields".into()));
    }
    if a.len() != ell.len() {
        return Err(Error::domain("multiplicity vector and forms differ in length"));
    }
    let idx: Vec<usize> = (0..a.len()).filter(|&i| a[i] > 0).collect();
    if idx.is_empty() {
        return Err(Error::domain("all multiplicities are zero"));
    }
    let sub = ell.select(&idx);
    let av: Vec<u64> = idx.iter().map(|&i| a[i]).collect();
    let p = ell.field().p();
    let norm: u64 = av.iter().sum();
    let lambda = ratio(b.deg_uv(), norm);
    let u: Vec<Rational> = av.iter().map(|&x| &lambda * rat_u(x)).collect();

    // Multiplicative-order bound. Let λ = deg UV/‖a‖ with p ∤ den(λ) and
    // μ = ord(p mod den(λ)). If ft < λ, ft is determined by a critical point
    // c, so ft·a ≥ c and ft·a ∈ 𝒰. An F-pure threshold of a polynomial never
    // lies in (⟨λ⟩_μ, λ), so ft ≤ ⟨λ⟩_μ, and ⟨λ⟩_μ·a is a point of denominator
    // p^μ strictly below λa, hence ⟨λ⟩_μ·a ≤ ⟨λa⟩_μ. So the μ-th truncation
    // lies in 𝒰. If none of the first μ truncations is in 𝒰, ft = λ.
    // Without that licence μ still serves as the iteration bound; exactness
    // then rests on the periodicity check alone.
    let den = lambda.denom().to_u64();
    let mu = match den {
        Some(d) if d % p != 0 && d <= MULT_ORDER_LIMIT => Some(mult_order(p, d)?),
        _ => None,
    };
    let (e_bound, proof_bound) = match mu {
        Some(mu) if polynomial_threshold => (u32::try_from(mu).unwrap_or(u32::MAX), Some(mu)),
        Some(mu) => (u32::try_from(mu).unwrap_or(u32::MAX).max(cfg.e_max), None),
        None => (cfg.e_max, None),
    };
    let mut trace = Vec::new();
    let search = search_truncations_traced(&sub, b, &u, e_bound, proof_bound, &mut trace)?;
    let diagnostics = if cfg.trace {
        trace
            .into_iter()
            .map(|(t, upper)| Diagnostic {
                e: t.e(),
                truncation: expand(&t, &idx, a.len()),
                upper,
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut result = match search {
        TruncationSearch::Upper { e, point } => {
            let crit = find_critical_below(&sub, b, &point)?
                .ok_or_else(|| Error::domain("truncation left the upper region"))?;
            let value = crit
                .point
                .coordinates()
                .iter()
                .zip(&av)
                .map(|(c, &ai)| c / rat_u(ai))
                .max()
                .unwrap();
            let full = CriticalPoint {
                point: expand(&crit.point, &idx, a.len()),
                delta_value: crit.delta_value,
            };
            FptResult::exact(value, Provenance::CriticalPoint { point: full, e }, lambda, p, e)
        }
        TruncationSearch::Never { e_checked, reason } => {
            if matches!(reason, NeverReason::MultOrder(_)) {
                oracle_check(&sub, &av, b, &lambda, cfg)?;
            }
            FptResult::exact(lambda.clone(), Provenance::TrivialRegion(reason), lambda, p, e_checked)
        }
        TruncationSearch::Exhausted { e_max } => {
            let n = av.len() as u64;
            let width = Rational::new(
                BigInt::from(n.saturating_sub(2)),
                crate::arith::pow_big(p, e_max) * BigInt::from(norm),
            );
            FptResult {
                value: FptValue::Interval {
                    lo: &lambda - width,
                    hi: lambda.clone(),
                },
                provenance: Provenance::CertifiedOnly { e_max },
                lambda,
                p,
                e_used: e_max,
                diagnostics: Vec::new(),
            }
        }
    };
    result.diagnostics = diagnostics;
    Ok(result)
}

fn rat_u(x: u64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn expand(t: &GridPoint, idx: &[usize], n: usize) -> GridPoint {
    let mut a = vec![num_bigint::BigUint::zero(); n];
    for (k, &i) in idx.iter().enumerate() {
        a[i] = t.numerators()[k].clone();
    }
    GridPoint::new(t.p(), t.e(), a)
}

/// ν(p) must equal `⌈p·λ⌉ − 1` when the value is `λ`.
fn oracle_check(
    ell: &LinearSystem,
    a: &[u64],
    b: &TwoGenIdeal,
    lambda: &Rational,
    cfg: &FtConfig,
) -> Result<()> {
    if !(cfg!(debug_assertions) || cfg.debug_oracle) {
        return Ok(());
    }
    let p = ell.field().p();
    let deg: u64 = a.iter().sum();
    if p * b.deg_uv() > ORACLE_CHECK_DEGREE || deg > ORACLE_CHECK_DEGREE {
        return Ok(());
    }
    let g = ell.power(a);
    let nu = nu_oracle(&g, b, 1)?;
    let pl = lambda * rat_u(p);
    let expected = pl.ceil().to_integer() - 1;
    assert_eq!(BigInt::from(nu), expected, "ν(p) disagrees with the trivial-region value");
    Ok(())
}

/// `fpt(G)` for a nonzero homogeneous `G` of positive degree.
pub fn fpt_homogeneous(g: &BinaryForm, cfg: &FtConfig) -> Result<FptResult> {
    if g.is_zero() || g.is_constant() {
        return Err(Error::domain("fpt needs a form of positive degree"));
    }
    let fac = factor_linear_seeded(g, cfg.seed)?;
    let mults = fac.multiplicities();
    let d = fac.degree();
    let p = g.field().p();
    let lambda = ratio(2, d);
    if let Some(i) = mults.iter().position(|&m| 2 * m > d) {
        return Ok(FptResult::exact(
            ratio(1, mults[i]),
            Provenance::Degenerate {
                index: i + 1,
                multiplicity: mults[i],
            },
            lambda,
            p,
            0,
        ));
    }
    let ell = LinearSystem::new(fac.forms())?;
    let b = TwoGenIdeal::maximal(&fac.field);
    let r = ft_core(&ell, &mults, &b, cfg, true)?;
    if let (Provenance::CriticalPoint { e, .. }, Some(v)) = (&r.provenance, r.exact_value()) {
        let q = crate::arith::pow_big(p, *e);
        if mults.iter().all(|&m| m == 1) && (v * Rational::from_integer(q)).is_integer() {
            assert_eq!(*v, truncate(&r.lambda, p, *e)?, "square-free threshold is not a truncation");
        }
    }
    Ok(r)
}

/// Closed form of `ft^b(ℓ^t)` for three forms.
pub fn fpt_n3_closed_form(
    ell: &LinearSystem,
    b: &TwoGenIdeal,
    t: &[Rational],
) -> Result<FptResult> {
    if t.len() != 3 || ell.len() != 3 {
        return Err(Error::domain("the closed form needs exactly three forms"));
    }
    if t.iter().any(|x| !x.is_positive()) {
        return Err(Error::domain("entries of t must be positive"));
    }
    let p = ell.field().p();
    let norm: Rational = t.iter().sum();
    let deg_uv = rat_u(b.deg_uv());
    let lambda = &deg_uv / &norm;
    let u: Vec<Rational> = t.iter().map(|x| x * &lambda).collect();
    let floors: Vec<u64> = u.iter().map(|x| x.floor().to_integer().to_u64().unwrap()).collect();

    if is_maximal(b) {
        if let Some(i) = (0..3).find(|&i| floors[i] >= 1) {
            let mut c = [0u64; 3];
            c[i] = 1;
            return Ok(FptResult::exact(
                t[i].recip(),
                Provenance::ClosedFormN3 {
                    case: N3Case::One,
                    point: Some(GridPoint::from_ints(p, 0, &c)),
                },
                lambda,
                p,
                0,
            ));
        }
    } else if crate::fractal::in_upper(ell, b, &GridPoint::from_ints(p, 0, &floors))? {
        // least max c_i/t_i over integer critical points below ⌊u⌋
        let mut best: Option<(Rational, [u64; 3])> = None;
        for c0 in 0..=floors[0] {
            for c1 in 0..=floors[1] {
                for c2 in 0..=floors[2] {
                    let c = [c0, c1, c2];
                    if !is_critical(ell, b, &GridPoint::from_ints(p, 0, &c))? {
                        continue;
                    }
                    let v = (0..3).map(|i| rat_u(c[i]) / &t[i]).max().unwrap();
                    if best.as_ref().map_or(true, |(w, _)| v < *w) {
                        best = Some((v, c));
                    }
                }
            }
        }
        let (v, c) = best.ok_or_else(|| Error::domain("no integer critical point below ⌊u⌋"))?;
        return Ok(FptResult::exact(
            v,
            Provenance::ClosedFormN3 {
                case: N3Case::One,
                point: Some(GridPoint::from_ints(p, 0, &c)),
            },
            lambda,
            p,
            0,
        ));
    }

    let mut streams = Vec::with_capacity(3);
    for (x, f) in u.iter().zip(&floors) {
        let fr = x - rat_u(*f);
        if fr.is_zero() {
            return Err(Error::domain("integral coordinate below the upper region"));
        }
        streams.push(DigitStream::new(&fr, p)?);
    }
    let mut nums: Vec<BigInt> = floors.iter().map(|&f| BigInt::from(f)).collect();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut s = 0u32;
    loop {
        let state: Vec<BigInt> = streams.iter().map(|d| d.state().clone()).collect();
        if !seen.insert(state) {
            return Ok(FptResult::exact(
                lambda.clone(),
                Provenance::ClosedFormN3 {
                    case: N3Case::TwoA,
                    point: None,
                },
                lambda,
                p,
                s,
            ));
        }
        s += 1;
        let digits: Vec<u64> = streams.iter_mut().map(|d| d.next().unwrap()).collect();
        for (n, &d) in nums.iter_mut().zip(&digits) {
            *n = &*n * BigInt::from(p) + d;
        }
        let sum: u64 = digits.iter().sum();
        if sum == 2 * p - 2 {
            continue;
        }
        if sum + 3 == 2 * p {
            return Ok(FptResult::exact(
                lambda.clone(),
                Provenance::ClosedFormN3 {
                    case: N3Case::TwoBi,
                    point: None,
                },
                lambda,
                p,
                s,
            ));
        }
        if sum + 1 == 2 * p {
            let c = GridPoint::new(p, s, nums.iter().map(|n| n.to_biguint().unwrap()).collect());
            let q = Rational::from_integer(crate::arith::pow_big(p, s));
            let v = nums
                .iter()
                .zip(t)
                .map(|(n, ti)| Rational::from_integer(n.clone()) / &q / ti)
                .max()
                .unwrap();
            return Ok(FptResult::exact(
                v,
                Provenance::ClosedFormN3 {
                    case: N3Case::TwoBii,
                    point: Some(c),
                },
                lambda,
                p,
                s,
            ));
        }
        return Err(Error::domain(format!(
            "digit sum {sum} at spot {s}; ‖u‖ differs from deg UV or ⌊u⌋ is too small"
        )));
    }
}

/// Largest `a` with `G^a ∉ b^[p^e]`.
pub fn nu_oracle(g: &BinaryForm, b: &TwoGenIdeal, e: u32) -> Result<u64> {
    if g.field() != b.field() {
        return Err(Error::FieldMismatch("form and ideal over different fields".into()));
    }
    if g.is_zero() || g.is_constant() {
        return Err(Error::domain("the oracle needs a form of positive degree"));
    }
    let p = g.field().p();
    let top = p
        .checked_pow(e)
        .and_then(|q| q.checked_mul(b.deg_uv()))
        .filter(|&t| t <= DIRECT_DEGREE_CAP)
        .ok_or_else(|| {
            Error::Resource(format!("ν oracle at e = {e} exceeds degree {DIRECT_DEGREE_CAP}"))
        })?;
    let d = g.degree() as u64;
    let bq = b.frobenius_power(e);
    // forms of degree ≥ top − 1 lie in b^[q]
    let mut hi = (top - 1).div_ceil(d).max(1);
    let mut lo = 0u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bq.member(&g.pow(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

/// Expected log canonical threshold from the factorization shape: `1/m`
/// when a multiplicity `m` exceeds `deg/(u+v)`, else `min{1, (u+v)/deg}`.
pub fn lct_expected(multiplicities: &[u64], degree: u64, u: u64, v: u64) -> Result<Rational> {
    if degree == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    if let Some(&m) = multiplicities.iter().find(|&&m| m * (u + v) > degree) {
        return Ok(ratio(1, m));
    }
    Ok(ratio(u + v, degree).min(Rational::one()))
}

/// A polynomial in `X, Y` that is homogeneous for `deg X = u`, `deg Y = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiHomogeneousInput {
    pub g: Sparse,
    pub u: u64,
    pub v: u64,
}

/// `g = ξ·X^{j1}·Y^{j2}·H(X^v, Y^u)` with `H` a binary form prime to `ST`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QhDecomposition {
    pub u: u64,
    pub v: u64,
    pub degree: u64,
    pub j1: u64,
    pub j2: u64,
    pub h: Option<BinaryForm>,
    pub k: Vec<u64>,
}

impl QhDecomposition {
    pub fn lambda(&self) -> Rational {
        ratio(self.u + self.v, self.degree)
    }

    /// Integers the prime-to-p part of the denominator must divide.
    pub fn denominator_candidates(&self) -> Vec<u64> {
        let mut c = vec![self.u * self.j1, self.v * self.j2];
        c.extend(&self.k);
        c
    }
}

pub fn decompose_quasi_homogeneous(input: &QuasiHomogeneousInput, seed: u64) -> Result<QhDecomposition> {
    if input.u == 0 || input.v == 0 {
        return Err(Error::domain("weights must be positive"));
    }
    let gcd = input.u.gcd(&input.v);
    let (u, v) = (input.u / gcd, input.v / gcd);
    let g = &input.g;
    let degree = g.weighted_degree(u, v).map_err(|e| match e {
        Error::Inhomogeneous(hi, lo) => Error::domain(format!(
            "not quasi-homogeneous for weights ({u},{v}): degrees {hi} and {lo}"
        )),
        e => e,
    })?;
    if degree == 0 {
        return Err(Error::domain("fpt needs a non-constant polynomial"));
    }
    let j1 = g.terms().keys().map(|k| k.0).min().unwrap();
    let j2 = g.terms().keys().map(|k| k.1).min().unwrap();
    if g.terms().len() == 1 {
        return Ok(QhDecomposition { u, v, degree, j1, j2, h: None, k: Vec::new() });
    }
    let hdeg = (degree - u * j1 - v * j2) / (u * v);
    let mut coeffs = vec![0; hdeg as usize + 1];
    for (&(i, j), &c) in g.terms() {
        let (i, j) = (i - j1, j - j2);
        if i % v != 0 || j % u != 0 {
            return Err(Error::domain("residual is not a form in X^v and Y^u"));
        }
        coeffs[(j / u) as usize] = c;
    }
    let h = BinaryForm::new(g.field(), coeffs);
    let k = factor_linear_seeded(&h, seed)?.multiplicities();
    Ok(QhDecomposition { u, v, degree, j1, j2, h: Some(h), k })
}

/// `fpt(g)` for quasi-homogeneous `g`, via `fpt(g) = ft^b(g(x^u, y^v))` with
/// `b = ⟨x^u, y^v⟩`.
pub fn fpt_quasi_homogeneous(input: &QuasiHomogeneousInput, cfg: &FtConfig) -> Result<FptResult> {
    let dec = decompose_quasi_homogeneous(input, cfg.seed)?;
    let (u, v) = (dec.u, dec.v);
    let field = input.g.field();
    let p = field.p();
    if u == v {
        return fpt_homogeneous(&input.g.to_form()?, cfg);
    }
    let lambda = dec.lambda();
    if dec.h.is_none() {
        // monomial: min{1/j1, 1/j2}
        let (index, m) = if dec.j1 >= dec.j2 { (1, dec.j1) } else { (2, dec.j2) };
        return Ok(FptResult::exact(
            ratio(1, m),
            Provenance::Degenerate { index, multiplicity: m },
            lambda,
            p,
            0,
        ));
    }
    let degenerate = |m: u64| rat_u(m) * &lambda > Rational::one();
    if let Some(i) = dec.k.iter().position(|&m| degenerate(m)) {
        return Ok(FptResult::exact(
            ratio(1, dec.k[i]),
            Provenance::Degenerate { index: i + 3, multiplicity: dec.k[i] },
            lambda,
            p,
            0,
        ));
    }
    for (index, j) in [(1, dec.j1), (2, dec.j2)] {
        if j > 0 && degenerate(j) {
            return Ok(FptResult::exact(
                ratio(1, j),
                Provenance::Degenerate { index, multiplicity: j },
                lambda,
                p,
                0,
            ));
        }
    }
    let big = input.g.substitute_powers(u, v).to_form()?;
    let fac = factor_linear_seeded(&big, cfg.seed)?;
    let ell = LinearSystem::new(fac.forms())?;
    let k = &fac.field;
    let b = TwoGenIdeal::new(BinaryForm::monomial(k, u as usize, 0, 1), BinaryForm::monomial(k, 0, v as usize, 1))?;
    ft_core(&ell, &fac.multiplicities(), &b, cfg, true)
}
