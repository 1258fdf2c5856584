//! Graded linear algebra over `k[x,y]`: kernels of evaluation maps,
//! colengths, syzygy gaps, two-generator colon ideals and membership.
//!
//! Vectors in `R_s` are coefficient lists indexed by `i` for `x^{s-i} y^i`.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::BinaryForm;

/// Total degree up to which the colength identity is rechecked at runtime.
pub const CROSS_CHECK_DEGREE: usize = 60;

/// Dense matrix in reduced row echelon form after [`rref`].
#[derive(Clone, Debug)]
struct Matrix {
    cols: usize,
    rows: Vec<Vec<Elem>>,
}

/// Reduces in place; returns the pivot column of each nonzero row.
fn rref(k: &Field, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    let nrows = m.rows.len();
    for c in 0..m.cols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| m.rows[i][c] != 0) else {
            continue;
        };
        m.rows.swap(r, pr);
        let inv = k.inv(m.rows[r][c]).unwrap();
        if inv != 1 {
            for v in m.rows[r][c..].iter_mut() {
                *v = k.mul(*v, inv);
            }
        }
        let pivot_row = m.rows[r].clone();
        for (i, row) in m.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..m.cols {
                if pivot_row[j] != 0 {
                    row[j] = k.sub(row[j], k.mul(f, pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.rows.truncate(r);
    pivots
}

/// Nullspace basis: one vector per free column, ascending.
fn nullspace(k: &Field, mut m: Matrix) -> Vec<Vec<Elem>> {
    let pivots = rref(k, &mut m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for f in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[f] = 1;
        for (row, &pc) in m.rows.iter().zip(&pivots) {
            v[pc] = k.neg(row[f]);
        }
        out.push(v);
    }
    out
}

/// Shifted copies `x^{s-d-j} y^j F` as vectors in `R_s`, one per `j`.
fn shifts(f: &BinaryForm, s: usize) -> Vec<Vec<Elem>> {
    let d = f.degree();
    if s < d {
        return Vec::new();
    }
    (0..=s - d)
        .map(|j| {
            let mut v = vec![0; s + 1];
            v[j..j + d + 1].copy_from_slice(f.coeffs());
            v
        })
        .collect()
}

/// Matrix of the evaluation map `⊕ R_{s - deg F_i} → R_s`.
fn evaluation_matrix(forms: &[&BinaryForm], s: usize) -> Matrix {
    let columns: Vec<Vec<Elem>> = forms.iter().flat_map(|f| shifts(f, s)).collect();
    let mut rows = vec![vec![0; columns.len()]; s + 1];
    for (c, col) in columns.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            rows[r][c] = v;
        }
    }
    Matrix {
        cols: columns.len(),
        rows,
    }
}

fn field_of(forms: &[&BinaryForm]) -> Field {
    forms[0].field().clone()
}

/// Dimension of the kernel of `(A_i) ↦ Σ A_i F_i` in degree `s`.
pub fn graded_kernel_dim(forms: &[BinaryForm], s: usize) -> usize {
    let refs: Vec<&BinaryForm> = forms.iter().collect();
    kernel_dim(&refs, s)
}

fn kernel_dim(forms: &[&BinaryForm], s: usize) -> usize {
    let k = field_of(forms);
    let mut m = evaluation_matrix(forms, s);
    let rank = rref(&k, &mut m).len();
    m.cols - rank
}

/// Row-reduced basis of the degree-`d` part of the ideal.
fn degree_part(forms: &[&BinaryForm], d: usize) -> Vec<Vec<Elem>> {
    let k = field_of(forms);
    let rows: Vec<Vec<Elem>> = forms.iter().flat_map(|f| shifts(f, d)).collect();
    let mut m = Matrix { cols: d + 1, rows };
    rref(&k, &mut m);
    m.rows
}

/// `dim k[x,y]/I` for a homogeneous ideal with no common factor among the
/// generators.
pub fn colength(forms: &[BinaryForm]) -> Result<u64> {
    let refs: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if refs.is_empty() {
        return Err(Error::InfiniteColength);
    }
    if refs.iter().any(|f| f.is_constant()) {
        return Ok(0);
    }
    let bound: usize = refs.iter().map(|f| f.degree()).sum();
    let mut total = 0u64;
    for d in 0..=bound {
        let rank = degree_part(&refs, d).len();
        if rank == d + 1 {
            return Ok(total);
        }
        total += (d + 1 - rank) as u64;
    }
    Err(Error::InfiniteColength)
}

/// Splits a kernel vector of the evaluation map in degree `s` into its
/// components, one form per generator (zero form when the block is empty).
fn components(forms: &[&BinaryForm], s: usize, v: &[Elem]) -> Vec<BinaryForm> {
    let k = field_of(forms);
    let mut out = Vec::new();
    let mut at = 0;
    for f in forms {
        if s < f.degree() {
            out.push(BinaryForm::zero(&k, 0));
            continue;
        }
        let len = s - f.degree() + 1;
        out.push(BinaryForm::new(&k, v[at..at + len].to_vec()));
        at += len;
    }
    out
}

/// Minimal generators of the (free, rank 2) syzygy module of three forms
/// without a common factor.
#[derive(Clone, Debug)]
pub struct SyzygyBasis {
    pub m: usize,
    pub n: usize,
    pub first: Vec<BinaryForm>,
    pub second: Vec<BinaryForm>,
}

fn check_no_common_factor(forms: &[&BinaryForm]) -> Result<()> {
    if forms.iter().any(|f| f.is_zero()) {
        return Err(Error::domain("zero form among the generators"));
    }
    let mut g = forms[0].clone();
    for f in &forms[1..] {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch("generators over different fields".into()));
        }
        g = g.gcd(f)?;
    }
    if !g.is_constant() {
        return Err(Error::domain(format!("generators share the common factor {g}")));
    }
    Ok(())
}

/// Degree `m` of the first minimal syzygy, from kernel dimensions
/// `k(s) = max(0, s-m+1) + max(0, s-n+1)` with `m + n = T`.
fn first_syzygy_degree(forms: &[&BinaryForm]) -> usize {
    let t: usize = forms.iter().map(|f| f.degree()).sum();
    let s = t / 2;
    let k = kernel_dim(forms, s);
    assert!(k >= 1, "syzygy module has a generator in degree at most T/2");
    if k == 2 && t % 2 == 0 && s > 0 {
        if kernel_dim(forms, s - 1) == 0 {
            return s;
        }
        return s - 1;
    }
    s + 1 - k
}

pub fn minimal_syzygies(f: &BinaryForm, g: &BinaryForm, h: &BinaryForm) -> Result<SyzygyBasis> {
    let forms = [f, g, h];
    check_no_common_factor(&forms)?;
    Ok(minimal_syzygies_unchecked(&forms))
}

fn minimal_syzygies_unchecked(forms: &[&BinaryForm]) -> SyzygyBasis {
    let k = field_of(forms);
    let t: usize = forms.iter().map(|f| f.degree()).sum();
    let m = first_syzygy_degree(forms);
    let n = t - m;
    let km = nullspace(&k, evaluation_matrix(forms, m));
    let first_vec = km[0].clone();
    let first = components(forms, m, &first_vec);
    let second = if m == n {
        debug_assert_eq!(km.len(), 2);
        components(forms, m, &km[1])
    } else {
        // a kernel vector in degree n outside R_{n-m}·σ₁
        let kn = nullspace(&k, evaluation_matrix(forms, n));
        let multiples: Vec<Vec<Elem>> = (0..=n - m)
            .map(|j| {
                let mono = BinaryForm::monomial(&k, n - m - j, j, 1);
                flatten(forms, n, &first.iter().map(|c| shift_component(c, &mono)).collect::<Vec<_>>())
            })
            .collect();
        let base_rank = multiples.len();
        let pick = kn
            .iter()
            .find(|v| {
                let mut rows = multiples.clone();
                rows.push((*v).clone());
                let cols = rows[0].len();
                let mut mat = Matrix { cols, rows };
                rref(&k, &mut mat).len() > base_rank
            })
            .expect("second syzygy exists in degree n");
        components(forms, n, pick)
    };
    SyzygyBasis {
        m,
        n,
        first,
        second,
    }
}

fn shift_component(c: &BinaryForm, mono: &BinaryForm) -> BinaryForm {
    if c.is_zero() {
        BinaryForm::zero(c.field(), 0)
    } else {
        c.mul(mono)
    }
}

fn flatten(forms: &[&BinaryForm], s: usize, comps: &[BinaryForm]) -> Vec<Elem> {
    let mut v = Vec::new();
    for (f, c) in forms.iter().zip(comps) {
        if s < f.degree() {
            continue;
        }
        let len = s - f.degree() + 1;
        if c.is_zero() {
            v.extend(std::iter::repeat(0).take(len));
        } else {
            debug_assert_eq!(c.coeffs().len(), len);
            v.extend_from_slice(c.coeffs());
        }
    }
    v
}

fn q_form(a: i64, b: i64, c: i64) -> i64 {
    2 * a * b + 2 * a * c + 2 * b * c - a * a - b * b - c * c
}

/// `δ(F,G,H) = n − m` for the minimal syzygy degrees `m ≤ n`.
pub fn syzygy_gap(f: &BinaryForm, g: &BinaryForm, h: &BinaryForm) -> Result<u64> {
    let forms = [f, g, h];
    check_no_common_factor(&forms)?;
    let t: usize = forms.iter().map(|f| f.degree()).sum();
    let m = first_syzygy_degree(&forms);
    let delta = (t - 2 * m) as u64;
    if t <= CROSS_CHECK_DEGREE {
        let col = colength(&[f.clone(), g.clone(), h.clone()])?;
        let q = q_form(f.degree() as i64, g.degree() as i64, h.degree() as i64);
        assert_eq!(
            4 * col as i64,
            q + (delta * delta) as i64,
            "colength identity violated for ({f}, {g}, {h})"
        );
    }
    Ok(delta)
}

/// `⟨U, V⟩` with `U, V` coprime non-constant forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGenIdeal {
    u: BinaryForm,
    v: BinaryForm,
}

/// Canonical description of a two-generated homogeneous ideal: generator
/// degrees and reduced bases of the ideal in those degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealKey {
    degrees: (usize, usize),
    low: Vec<Vec<Elem>>,
    high: Vec<Vec<Elem>>,
}

/// Result of a colon computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Colon {
    Unit,
    Ideal(TwoGenIdeal),
}

impl TwoGenIdeal {
    pub fn new(u: BinaryForm, v: BinaryForm) -> Result<TwoGenIdeal> {
        if u.field() != v.field() {
            return Err(Error::FieldMismatch("generators over different fields".into()));
        }
        if u.is_zero() || v.is_zero() || u.is_constant() || v.is_constant() {
            return Err(Error::domain("generators must be nonzero non-constant forms"));
        }
        let g = u.gcd(&v)?;
        if !g.is_constant() {
            return Err(Error::domain(format!("generators share the common factor {g}")));
        }
        let ideal = TwoGenIdeal { u, v };
        if ideal.deg_uv() <= 24 {
            let col = colength(&[ideal.u.clone(), ideal.v.clone()])?;
            assert_eq!(col, ideal.deg_b(), "colength of a complete intersection");
        }
        Ok(ideal)
    }

    pub(crate) fn new_unchecked(u: BinaryForm, v: BinaryForm) -> TwoGenIdeal {
        TwoGenIdeal { u, v }
    }

    /// `⟨x, y⟩`.
    pub fn maximal(field: &Field) -> TwoGenIdeal {
        TwoGenIdeal::new_unchecked(BinaryForm::x(field), BinaryForm::y(field))
    }

    pub fn u(&self) -> &BinaryForm {
        &self.u
    }

    pub fn v(&self) -> &BinaryForm {
        &self.v
    }

    pub fn field(&self) -> &Field {
        self.u.field()
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.u.degree(), self.v.degree())
    }

    /// `deg b = deg U · deg V`.
    pub fn deg_b(&self) -> u64 {
        (self.u.degree() * self.v.degree()) as u64
    }

    /// `deg UV`.
    pub fn deg_uv(&self) -> u64 {
        (self.u.degree() + self.v.degree()) as u64
    }

    pub fn frobenius_power(&self, e: u32) -> TwoGenIdeal {
        TwoGenIdeal::new_unchecked(self.u.frobenius_power(e), self.v.frobenius_power(e))
    }

    pub fn colength(&self) -> Result<u64> {
        colength(&[self.u.clone(), self.v.clone()])
    }

    /// Membership of a form, by a graded linear solve in degree `deg f`.
    pub fn member(&self, f: &BinaryForm) -> bool {
        if f.is_zero() {
            return true;
        }
        let d = f.degree();
        let (du, dv) = self.degrees();
        if d + 1 >= du + dv {
            // ⟨x,y⟩^{du+dv-1} ⊆ ⟨U,V⟩
            return true;
        }
        if let (Some(a), Some(b)) = (self.u.as_monomial(), self.v.as_monomial()) {
            let (ex, ey) = if a.1 == 0 { (a.0, b.1) } else { (b.0, a.1) };
            return f
                .coeffs()
                .iter()
                .enumerate()
                .all(|(j, &c)| c == 0 || d - j >= ex || j >= ey);
        }
        let forms = [&self.u, &self.v];
        let k = self.field();
        let mut m = evaluation_matrix(&forms, d);
        for (row, &c) in m.rows.iter_mut().zip(f.coeffs()) {
            row.push(c);
        }
        m.cols += 1;
        let last = m.cols - 1;
        !rref(k, &mut m).contains(&last)
    }

    /// `(I : f)`, from the `f`-components of the two minimal syzygies of
    /// `(U, V, f)`.
    pub fn colon(&self, f: &BinaryForm) -> Result<Colon> {
        if f.is_zero() {
            return Ok(Colon::Unit);
        }
        if f.field() != self.field() {
            return Err(Error::FieldMismatch("colon by a form over another field".into()));
        }
        if f.is_constant() {
            return Ok(Colon::Ideal(self.clone()));
        }
        if f.degree() as u64 + 1 >= self.deg_uv() {
            return Ok(Colon::Unit);
        }
        let forms = [&self.u, &self.v, f];
        let syz = minimal_syzygies_unchecked(&forms);
        let c1 = syz.first[2].clone();
        let c2 = syz.second[2].clone();
        let mut gens: Vec<BinaryForm> = [c1, c2].into_iter().filter(|c| !c.is_zero()).collect();
        if gens.iter().any(|c| c.is_constant()) {
            return Ok(Colon::Unit);
        }
        if gens.len() != 2 {
            return Err(Error::domain("colon ideal is not two-generated"));
        }
        gens.sort_by_key(|g| g.degree());
        let (a, b) = (gens[0].normalized(), gens[1].normalized());
        debug_assert!(a.gcd(&b).map(|g| g.is_constant()).unwrap_or(false));
        Ok(Colon::Ideal(TwoGenIdeal::new_unchecked(a, b)))
    }

    /// Canonical key, equal for equal ideals.
    pub fn key(&self) -> IdealKey {
        let (mut d1, mut d2) = self.degrees();
        if d1 > d2 {
            std::mem::swap(&mut d1, &mut d2);
        }
        let forms = [&self.u, &self.v];
        IdealKey {
            degrees: (d1, d2),
            low: degree_part(&forms, d1),
            high: degree_part(&forms, d2),
        }
    }

    pub fn to_json(&self) -> Value {
        json!([self.u.to_string(), self.v.to_string()])
    }
}

impl fmt::Display for TwoGenIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.u, self.v)
    }
}

/// `⟨F, G, H⟩` without a common factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleIdeal {
    forms: [BinaryForm; 3],
}

impl TripleIdeal {
    pub fn new(f: BinaryForm, g: BinaryForm, h: BinaryForm) -> Result<TripleIdeal> {
        check_no_common_factor(&[&f, &g, &h])?;
        Ok(TripleIdeal { forms: [f, g, h] })
    }

    pub fn forms(&self) -> &[BinaryForm; 3] {
        &self.forms
    }

    pub fn colength(&self) -> Result<u64> {
        colength(&self.forms)
    }

    pub fn syzygy_gap(&self) -> Result<u64> {
        let [f, g, h] = &self.forms;
        syzygy_gap(f, g, h)
    }

    pub fn syzygies(&self) -> SyzygyBasis {
        let [f, g, h] = &self.forms;
        minimal_syzygies_unchecked(&[f, g, h])
    }
}

/// Membership in the ideal generated by arbitrary forms.
pub fn member(forms: &[BinaryForm], f: &BinaryForm) -> bool {
    if f.is_zero() {
        return true;
    }
    let refs: Vec<&BinaryForm> = forms.iter().filter(|g| !g.is_zero()).collect();
    if refs.is_empty() {
        return false;
    }
    let k = f.field().clone();
    let mut m = evaluation_matrix(&refs, f.degree());
    for (row, &c) in m.rows.iter_mut().zip(f.coeffs()) {
        row.push(c);
    }
    m.cols += 1;
    let last = m.cols - 1;
    !rref(&k, &mut m).contains(&last)
}
