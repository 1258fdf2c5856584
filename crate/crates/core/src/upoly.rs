//! Dense univariate polynomials over a [`Field`], stored low degree first with
//! no trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

pub type UPoly = Vec<Elem>;

pub fn trim(mut f: UPoly) -> UPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Degree, or `None` for zero.
pub fn degree(f: &[Elem]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn is_one(f: &[Elem]) -> bool {
    f.len() == 1 && f[0] == 1
}

pub fn add(k: &Field, f: &[Elem], g: &[Elem]) -> UPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out.push(k.add(a, b));
    }
    trim(out)
}

pub fn sub(k: &Field, f: &[Elem], g: &[Elem]) -> UPoly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out.push(k.sub(a, b));
    }
    trim(out)
}

pub fn scale(k: &Field, f: &[Elem], c: Elem) -> UPoly {
    trim(f.iter().map(|&a| k.mul(a, c)).collect())
}

pub fn mul(k: &Field, f: &[Elem], g: &[Elem]) -> UPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            if b != 0 {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
    }
    trim(out)
}

pub fn monic(k: &Field, f: &[Elem]) -> UPoly {
    match f.last() {
        None => Vec::new(),
        Some(&lc) => scale(k, f, k.inv(lc).expect("trimmed polynomial")),
    }
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(k: &Field, f: &[Elem], g: &[Elem]) -> (UPoly, UPoly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let mut r: UPoly = trim(f.to_vec());
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let inv_lc = k.inv(g[dg]).unwrap();
    let mut q = vec![0; r.len() - dg];
    while r.len() > dg {
        let top = r.len() - 1;
        let c = k.mul(r[top], inv_lc);
        let shift = top - dg;
        q[shift] = c;
        for (i, &b) in g.iter().enumerate() {
            if b != 0 {
                r[shift + i] = k.sub(r[shift + i], k.mul(c, b));
            }
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(k: &Field, f: &[Elem], g: &[Elem]) -> UPoly {
    divrem(k, f, g).1
}

/// Exact division; panics if the remainder is nonzero.
pub fn div_exact(k: &Field, f: &[Elem], g: &[Elem]) -> UPoly {
    let (q, r) = divrem(k, f, g);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(k: &Field, f: &[Elem], g: &[Elem]) -> UPoly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

pub fn derivative(k: &Field, f: &[Elem]) -> UPoly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| k.mul(k.from_int((i as u64 % k.p()) as i64), c))
            .collect(),
    )
}

pub fn eval(k: &Field, f: &[Elem], x: Elem) -> Elem {
    f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

pub fn mulmod(k: &Field, f: &[Elem], g: &[Elem], m: &[Elem]) -> UPoly {
    rem(k, &mul(k, f, g), m)
}

pub fn powmod(k: &Field, base: &[Elem], exp: &BigUint, m: &[Elem]) -> UPoly {
    let mut acc: UPoly = rem(k, &[1], m);
    let b = rem(k, base, m);
    for i in (0..exp.bits()).rev() {
        acc = mulmod(k, &acc, &acc, m);
        if exp.bit(i) {
            acc = mulmod(k, &acc, &b, m);
        }
    }
    acc
}

/// `base^{Q}` mod `m` where `Q` is the field size: Frobenius on `k[t]/(m)`.
fn frob_mod(k: &Field, base: &[Elem], m: &[Elem]) -> UPoly {
    powmod(k, base, &BigUint::from(k.size()), m)
}

/// Ben-Or irreducibility test.
pub fn is_irreducible(k: &Field, f: &[Elem]) -> bool {
    let f = trim(f.to_vec());
    let d = match degree(&f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let f = monic(k, &f);
    let x: UPoly = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = frob_mod(k, &h, &f);
        let g = gcd(k, &f, &sub(k, &h, &x));
        if !is_one(&g) {
            return false;
        }
    }
    true
}

/// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
/// `f = Π g^m`, each `g` square-free and pairwise coprime.
pub fn squarefree(k: &Field, f: &[Elem]) -> Vec<(UPoly, usize)> {
    let f = monic(k, f);
    let mut out = Vec::new();
    if degree(&f).unwrap_or(0) == 0 {
        return out;
    }
    let df = derivative(k, &f);
    let mut c = gcd(k, &f, &df);
    let mut w = div_exact(k, &f, &c);
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(k, &w, &c);
        let z = div_exact(k, &w, &y);
        if !is_one(&z) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = div_exact(k, &c, &w);
    }
    if !is_one(&c) {
        // c is a polynomial in t^p
        let p = k.p() as usize;
        let root: UPoly = trim(c.iter().step_by(p).map(|&a| k.pth_root(a)).collect());
        for (g, m) in squarefree(k, &root) {
            out.push((g, m * p));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_poly(k, &a.0, &b.0)));
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(k: &Field, f: &[Elem]) -> Vec<(UPoly, usize)> {
    let mut f = monic(k, f);
    let mut out = Vec::new();
    let x: UPoly = vec![0, 1];
    let mut h = rem(k, &x, &f);
    let mut d = 1;
    while degree(&f).unwrap_or(0) >= 2 * d {
        h = frob_mod(k, &h, &f);
        let g = gcd(k, &f, &sub(k, &h, &x));
        if !is_one(&g) {
            f = div_exact(k, &f, &g);
            h = rem(k, &h, &f);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(df) = degree(&f) {
        if df > 0 {
            out.push((f, df));
        }
    }
    out
}

/// Splits a monic square-free `f` whose irreducible factors all have degree
/// `d` (Cantor–Zassenhaus).
pub fn equal_degree(k: &Field, f: &[Elem], d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly> {
    let n = degree(f).unwrap_or(0);
    if n <= d {
        return vec![monic(k, f)];
    }
    let size = k.size();
    let qd = BigUint::from(size).pow(d as u32);
    let odd_exp = (&qd - BigUint::one()) >> 1;
    loop {
        let r: UPoly = trim((0..n).map(|_| rng.gen_range(0..size)).collect());
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let s = if k.p() == 2 {
            // absolute trace t + t^2 + … + t^{2^{kd-1}}
            let mut acc = Vec::new();
            let mut t = rem(k, &r, f);
            for _ in 0..k.degree() * d {
                acc = add(k, &acc, &t);
                t = mulmod(k, &t, &t, f);
            }
            acc
        } else {
            sub(k, &powmod(k, &r, &odd_exp, f), &[1])
        };
        let g = gcd(k, f, &s);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = div_exact(k, f, &g);
            let mut out = equal_degree(k, &g, d, rng);
            out.extend(equal_degree(k, &h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// canonically ordered. The leading coefficient is dropped.
pub fn factor(k: &Field, f: &[Elem], seed: u64) -> Result<Vec<(UPoly, usize)>> {
    if degree(f).is_none() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in squarefree(k, f) {
        for (h, d) in distinct_degree(k, &g) {
            for irr in equal_degree(k, &h, d, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.len()
            .cmp(&b.0.len())
            .then_with(|| cmp_poly(k, &a.0, &b.0))
            .then(a.1.cmp(&b.1))
    });
    Ok(out)
}

/// Distinct roots of `f` in `k`, in canonical order.
pub fn roots(k: &Field, f: &[Elem], seed: u64) -> Result<Vec<Elem>> {
    let f = trim(f.to_vec());
    if f.is_empty() {
        return Err(Error::domain("zero polynomial has every element as a root"));
    }
    if degree(&f) == Some(0) {
        return Ok(Vec::new());
    }
    let f = monic(k, &f);
    let x: UPoly = vec![0, 1];
    let xq = frob_mod(k, &x, &f);
    let g = gcd(k, &f, &sub(k, &xq, &x));
    if degree(&g).unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Elem> = equal_degree(k, &g, 1, &mut rng)
        .into_iter()
        .map(|l| k.neg(l[0]))
        .collect();
    out.sort_by(|a, b| k.cmp_coeffs(*a, *b));
    Ok(out)
}

pub fn cmp_poly(k: &Field, f: &[Elem], g: &[Elem]) -> std::cmp::Ordering {
    f.len().cmp(&g.len()).then_with(|| {
        for (a, b) in f.iter().zip(g) {
            let o = k.cmp_coeffs(*a, *b);
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

pub fn display(k: &Field, f: &[Elem], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let cs = k.format(c);
        let cs = if cs.contains('+') { format!("({cs})") } else { cs };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (i, c == 1) {
            (0, _) => cs,
            (_, true) => mono,
            _ => format!("{cs}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn is_zero(f: &[Elem]) -> bool {
    f.iter().all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::find_irreducible;

    fn expand(k: &Field, fs: &[(UPoly, usize)]) -> UPoly {
        let mut acc = vec![1];
        for (g, m) in fs {
            for _ in 0..*m {
                acc = mul(k, &acc, g);
            }
        }
        acc
    }

    #[test]
    fn divrem_reconstructs() {
        let k = Field::prime(7).unwrap();
        let f = vec![3, 0, 5, 1, 6];
        let g = vec![2, 1, 1];
        let (q, r) = divrem(&k, &f, &g);
        assert_eq!(add(&k, &mul(&k, &q, &g), &r), f);
        assert!(degree(&r).map_or(true, |d| d < 2));
    }

    #[test]
    fn squarefree_in_char_p() {
        let k = Field::prime(3).unwrap();
        // (t+1)^3 (t+2)^2 t = t^6 + …; built by multiplication
        let f = expand(&k, &[(vec![1, 1], 3), (vec![2, 1], 2), (vec![0, 1], 1)]);
        let sf = squarefree(&k, &f);
        assert_eq!(expand(&k, &sf), f);
        let mults: Vec<usize> = sf.iter().map(|x| x.1).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn squarefree_pth_power_over_extension() {
        let k = find_irreducible(2, 3).unwrap();
        let a = k.generator();
        // (t + a)^4 (t^2 + t + 1)
        let f = expand(&k, &[(vec![a, 1], 4), (vec![1, 1, 1], 1)]);
        let sf = squarefree(&k, &f);
        assert_eq!(expand(&k, &sf), f);
        assert!(sf.iter().any(|(g, m)| *m == 4 && g == &vec![a, 1]));
    }

    #[test]
    fn factor_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [Field::prime(2).unwrap(), Field::prime(5).unwrap(), find_irreducible(3, 2).unwrap()] {
            for _ in 0..30 {
                let n = rng.gen_range(1..12);
                let mut f: UPoly = (0..n).map(|_| rng.gen_range(0..k.size())).collect();
                f.push(1);
                let fs = factor(&k, &f, 1).unwrap();
                assert_eq!(expand(&k, &fs), f);
                for (g, _) in &fs {
                    assert!(is_irreducible(&k, g));
                }
            }
        }
    }

    #[test]
    fn roots_of_split_polynomial() {
        let k = Field::prime(11).unwrap();
        let f = expand(&k, &[(vec![9, 1], 1), (vec![4, 1], 2), (vec![0, 1], 1), (vec![1, 0, 1], 1)]);
        assert_eq!(roots(&k, &f, 0).unwrap(), vec![0, 2, 7]);
    }
}
