mod common;

use common::*;
use fpt_core::arith::{mult_order, truncate, Rational};
use fpt_core::fpt::{
    decompose_quasi_homogeneous, fpt_homogeneous, fpt_n3_closed_form, fpt_quasi_homogeneous,
    ft_general, lct_expected, nu_oracle, FptResult, FptValue, FtConfig, N3Case, Provenance,
    QuasiHomogeneousInput,
};
use fpt_core::fractal::{GridPoint, LinearSystem};
use fpt_core::gf::Field;
use fpt_core::parse::parse_sparse;
use fpt_core::poly::{factor_linear, BinaryForm, LinearForm};
use fpt_core::syzygy::TwoGenIdeal;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::Rng;

fn cfg() -> FtConfig {
    FtConfig::default()
}

fn value(r: &FptResult) -> Rational {
    r.exact_value().cloned().expect("exact value")
}

fn q_rat(p: u64, e: u32) -> Rational {
    Rational::from_integer(BigInt::from(p.pow(e)))
}

#[test]
fn product_xy_is_one() {
    for p in [2u64, 3, 7] {
        let k = Field::prime(p).unwrap();
        let ell = LinearSystem::new(vec![LinearForm::x(&k), LinearForm::y(&k)]).unwrap();
        let r = ft_general(&ell, &[1, 1], &TwoGenIdeal::maximal(&k), &cfg()).unwrap();
        assert_eq!(value(&r), Rational::one());
        assert!(matches!(r.provenance, Provenance::TrivialRegion(_)));
    }
}

#[test]
fn scaling() {
    let k = Field::prime(5).unwrap();
    let ell = LinearSystem::from_forms(&[form(&k, "x"), form(&k, "y"), form(&k, "x+y"), form(&k, "x+2*y")])
        .unwrap();
    let b = TwoGenIdeal::new(form(&k, "x"), form(&k, "y^2")).unwrap();
    let a = [7u64, 10, 13, 16];
    let base = value(&ft_general(&ell, &a, &b, &cfg()).unwrap());
    for s in [2u64, 3] {
        let sa: Vec<u64> = a.iter().map(|x| x * s).collect();
        let v = value(&ft_general(&ell, &sa, &b, &cfg()).unwrap());
        assert_eq!(v * r(s as i64, 1), base);
    }
}

#[test]
fn zero_multiplicities_are_dropped() {
    let k = Field::prime(3).unwrap();
    let ell = xyz(&k);
    let m = TwoGenIdeal::maximal(&k);
    let a = value(&ft_general(&ell, &[2, 0, 3], &m, &cfg()).unwrap());
    let two = LinearSystem::new(vec![LinearForm::x(&k), LinearForm::new(&k, 1, 1).unwrap()]).unwrap();
    assert_eq!(a, value(&ft_general(&two, &[2, 3], &m, &cfg()).unwrap()));
    assert!(ft_general(&ell, &[0, 0, 0], &m, &cfg()).is_err());
}

#[test]
fn oracle_examples() {
    let k = Field::prime(5).unwrap();
    let m = TwoGenIdeal::maximal(&k);
    for e in 1..=2 {
        assert_eq!(nu_oracle(&BinaryForm::x(&k), &m, e).unwrap(), 5u64.pow(e) - 1);
    }
    assert!(nu_oracle(&BinaryForm::x(&k), &m, 12).is_err());
}

fn random_product(k: &Field, g: &mut rand_chacha::ChaCha8Rng, max_deg: usize) -> BinaryForm {
    let forms = all_linear(k);
    loop {
        let mut prod = BinaryForm::one(k);
        for l in &forms {
            if g.gen_bool(0.5) {
                prod = prod.mul(&l.to_form().pow(g.gen_range(1..=5)));
            }
        }
        if (1..=max_deg).contains(&prod.degree()) {
            return prod;
        }
    }
}

#[test]
fn homogeneous_invariants() {
    let mut g = rng(201);
    for i in 0..150 {
        let p = [2u64, 3, 5, 7][i % 4];
        let k = Field::prime(p).unwrap();
        let gf = random_product(&k, &mut g, 16);
        let res = fpt_homogeneous(&gf, &cfg()).unwrap();
        let v = value(&res);
        let d = gf.degree() as i64;
        let lambda = r(2, d);
        assert_eq!(res.lambda, lambda);
        assert!(v > r(0, 1) && v <= r(1, 1));
        if !matches!(res.provenance, Provenance::Degenerate { .. }) {
            assert!(v <= lambda);
        }
        // truncation law
        let m = TwoGenIdeal::maximal(&k);
        for e in 1..=2u32 {
            if p.pow(e) * 2 > 100 || (&v * q_rat(p, e)).is_integer() {
                continue;
            }
            let nu = nu_oracle(&gf, &m, e).unwrap();
            assert_eq!(r(nu as i64, p.pow(e) as i64), truncate(&v, p, e).unwrap(), "{gf}");
        }
        // forbidden interval
        let den = lambda.denom().to_u64().unwrap();
        if den % p != 0 {
            let mu = mult_order(p, den).unwrap() as u32;
            let lo = truncate(&lambda, p, mu).unwrap();
            assert!(!(v > lo && v < lambda), "{gf}: {v} in ({lo}, {lambda})");
        }
        if let Provenance::CriticalPoint { point, .. } = &res.provenance {
            let c = &point.point;
            assert!(v < lambda);
            // case-(B) bound
            let n = c.len() as i64;
            let prime_to_p = c.numerators().iter().any(|a| a % p != num_bigint::BigUint::from(0u32));
            if c.e() >= 1 && prime_to_p {
                let q = p.pow(c.e()) as i64;
                assert!(&lambda - &v <= r(n - 2, q * d), "{gf}: λ − fpt = {}", &lambda - &v);
            }
            let mults = factor_linear(&gf).unwrap().multiplicities();
            let da = res.denominator_analysis().unwrap();
            assert!(da.p_power >= 1 && da.k_divides_any(&mults), "{gf}: {v}");
        }
    }
}

#[test]
fn n3_closed_form_examples() {
    for p in [7u64, 13, 19] {
        let k = Field::prime(p).unwrap();
        let r3 = fpt_n3_closed_form(&xyz(&k), &TwoGenIdeal::maximal(&k), &[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
        assert_eq!(value(&r3), r(2, 3));
        assert!(matches!(r3.provenance, Provenance::ClosedFormN3 { case: N3Case::TwoA, .. }));
    }
    let k = Field::prime(2).unwrap();
    let r3 = fpt_n3_closed_form(&xyz(&k), &TwoGenIdeal::maximal(&k), &[r(1, 1), r(1, 1), r(1, 1)]).unwrap();
    assert_eq!(value(&r3), r(1, 2));
    assert_eq!(r3.critical_point(), Some(&GridPoint::from_ints(2, 1, &[1, 1, 1])));
    let r3 = fpt_n3_closed_form(&xyz(&k), &TwoGenIdeal::maximal(&k), &[r(1, 3), r(1, 1), r(1, 1)]);
    assert!(r3.is_ok());
    assert!(fpt_n3_closed_form(&xyz(&k), &TwoGenIdeal::maximal(&k), &[r(1, 1), r(1, 1)]).is_err());
}

#[test]
fn n3_general_ideal_agrees() {
    let mut g = rng(202);
    for i in 0..40 {
        let p = [2u64, 3, 5][i % 3];
        let k = Field::prime(p).unwrap();
        let b = loop {
            let u = random_form(&k, g.gen_range(1..=3), &mut g);
            let v = random_form(&k, g.gen_range(1..=3), &mut g);
            if let Ok(b) = TwoGenIdeal::new(u, v) {
                break b;
            }
        };
        let t: Vec<u64> = (0..3).map(|_| g.gen_range(1..=12)).collect();
        let tr: Vec<Rational> = t.iter().map(|&x| r(x as i64, 1)).collect();
        let ell = xyz(&k);
        let closed = fpt_n3_closed_form(&ell, &b, &tr).unwrap();
        let general = ft_general(&ell, &t, &b, &cfg()).unwrap();
        if let FptValue::Exact(gv) = &general.value {
            assert_eq!(&value(&closed), gv, "t = {t:?}, b = {b}");
        }
    }
}

#[test]
fn lct_values() {
    let k = Field::prime(7).unwrap();
    let f = factor_linear(&form(&k, "x*(x+y)*(x+6*y)")).unwrap();
    assert_eq!(lct_expected(&f.multiplicities(), f.degree(), 1, 1).unwrap(), r(2, 3));
    assert_eq!(lct_expected(&[5, 1, 1, 1], 8, 1, 1).unwrap(), r(1, 5));
    assert_eq!(lct_expected(&[1, 1], 2, 1, 1).unwrap(), r(1, 1));
    assert_eq!(lct_expected(&[1, 1], 6, 3, 2).unwrap(), r(5, 6));
}

fn qh(k: &Field, s: &str, u: u64, v: u64) -> FptResult {
    let g = parse_sparse(s, k, ("x", "y")).unwrap();
    fpt_quasi_homogeneous(&QuasiHomogeneousInput { g, u, v }, &cfg()).unwrap()
}

#[test]
fn cusp_in_every_characteristic() {
    // fpt(x² + y³): 1/2, 2/3, then 5/6 or 5/6 − 1/(6p) by p mod 6
    for (p, want) in [(2, r(1, 2)), (3, r(2, 3)), (5, r(4, 5)), (7, r(5, 6)), (11, r(9, 11)), (13, r(5, 6))] {
        let k = Field::prime(p).unwrap();
        assert_eq!(value(&qh(&k, "x^2+y^3", 3, 2)), want, "p = {p}");
    }
}

#[test]
fn quasi_homogeneous_fast_paths() {
    let k = Field::prime(5).unwrap();
    assert_eq!(value(&qh(&k, "x^2*y^3", 3, 2)), r(1, 3));
    // weights (1,2): (x^2 - y)^3·x has λ = 3/7 and λ·3 > 1
    let res = qh(&k, "(x^2-y)^3*x", 1, 2);
    assert_eq!(value(&res), r(1, 3));
    assert!(matches!(res.provenance, Provenance::Degenerate { multiplicity: 3, .. }));
    let res = qh(&k, "x^7*(x^2+y)", 1, 2);
    assert_eq!(value(&res), r(1, 7));
    // homogeneous weights delegate
    assert_eq!(value(&qh(&k, "x*(x+y)^2", 2, 2)), r(1, 2));
    let g = parse_sparse("x^2+y^2", &k, ("x", "y")).unwrap();
    assert!(fpt_quasi_homogeneous(&QuasiHomogeneousInput { g, u: 3, v: 2 }, &cfg()).is_err());
}

fn random_qh(k: &Field, u: u64, v: u64, g: &mut rand_chacha::ChaCha8Rng, square_free: bool) -> String {
    loop {
        let mut parts = Vec::new();
        let j1 = if square_free { g.gen_range(0..=1) } else { g.gen_range(0..=3) };
        let j2 = if square_free { g.gen_range(0..=1) } else { g.gen_range(0..=3) };
        if j1 > 0 {
            parts.push(format!("x^{j1}"));
        }
        if j2 > 0 {
            parts.push(format!("y^{j2}"));
        }
        let mut used = Vec::new();
        for _ in 0..g.gen_range(1..=2) {
            let mu = g.gen_range(1..k.p());
            if used.contains(&mu) {
                continue;
            }
            used.push(mu);
            let kk = if square_free { 1 } else { g.gen_range(1..=2) };
            parts.push(format!("(x^{v}+{mu}*y^{u})^{kk}"));
        }
        let s = parts.join("*");
        let sp = parse_sparse(&s, k, ("x", "y")).unwrap();
        let dec = decompose_quasi_homogeneous(&QuasiHomogeneousInput { g: sp.clone(), u, v }, 1).unwrap();
        let sqf = dec.k.iter().all(|&m| m == 1) && dec.j1 <= 1 && dec.j2 <= 1;
        if !square_free || sqf {
            return s;
        }
    }
}

#[test]
fn square_free_quasi_homogeneous() {
    let mut g = rng(203);
    for (p, u, v) in [(5u64, 2u64, 3u64), (7, 3, 2), (3, 2, 1), (5, 1, 3), (7, 2, 5)] {
        let k = Field::prime(p).unwrap();
        for _ in 0..4 {
            let s = random_qh(&k, u, v, &mut g, true);
            let res = qh(&k, &s, u, v);
            let val = value(&res);
            let lambda = res.lambda.clone();
            if val == lambda.clone().min(Rational::one()) {
                continue;
            }
            let e = res.denominator_analysis().unwrap().p_power;
            assert_eq!(val, truncate(&lambda, p, e).unwrap(), "{s} over F_{p}");
        }
    }
}

#[test]
fn psi_consistency_with_oracle() {
    let mut g = rng(204);
    for (p, u, v) in [(3u64, 2u64, 1u64), (5, 2, 3), (2, 3, 2), (3, 1, 3), (2, 1, 2), (5, 1, 2)] {
        let k = Field::prime(p).unwrap();
        for _ in 0..4 {
            let s = random_qh(&k, u, v, &mut g, false);
            let sp = parse_sparse(&s, &k, ("x", "y")).unwrap();
            let res = qh(&k, &s, u, v);
            let val = value(&res);
            let big = sp.substitute_powers(u, v).to_form().unwrap();
            let b = TwoGenIdeal::new(BinaryForm::monomial(&k, u as usize, 0, 1), BinaryForm::monomial(&k, 0, v as usize, 1))
                .unwrap();
            for e in 1..=2u32 {
                if p.pow(e) * (u + v) > 60 || (&val * q_rat(p, e)).is_integer() {
                    continue;
                }
                let nu = nu_oracle(&big, &b, e).unwrap();
                assert_eq!(r(nu as i64, p.pow(e) as i64), truncate(&val, p, e).unwrap(), "{s} over F_{p}, e = {e}");
            }
            if res.exact_value().is_some() && !matches!(res.provenance, Provenance::TrivialRegion(_)) {
                let dec = decompose_quasi_homogeneous(&QuasiHomogeneousInput { g: sp, u, v }, 1).unwrap();
                let da = res.denominator_analysis().unwrap();
                if val != res.lambda.clone().min(Rational::one()) {
                    assert!(da.k_divides_any(&dec.denominator_candidates()), "{s}: {val}");
                }
            }
        }
    }
}

#[test]
fn json_shape() {
    let k = field("q=25");
    let res = fpt_homogeneous(&form(&k, "x^2*y^2*(x^2+2*x*y+3*y^2)^7"), &cfg()).unwrap();
    let j = res.to_json();
    assert_eq!(j["value"], "97/875");
    assert_eq!(j["lambda"], "1/9");
    assert_eq!(j["provenance"]["kind"], "CriticalPoint");
    assert_eq!(j["e_used"], 3);
    assert_eq!(j["critical_point"]["q"], "125");
    assert_eq!(j["denominator_analysis"]["k"], "7");
    assert_eq!(j["denominator_analysis"]["p_power"], 3);
    let res = fpt_homogeneous(&form(&k, "x*(x+y)^2"), &cfg()).unwrap();
    assert!(res.to_json()["critical_point"].is_null());
}

#[test]
fn certified_interval_when_digits_run_out() {
    // a general ideal where the exponent bound is hit before any decision
    let k = Field::prime(2).unwrap();
    let ell = xyz(&k);
    let m = TwoGenIdeal::maximal(&k);
    let cfg = FtConfig { e_max: 1, ..FtConfig::default() };
    let res = ft_general(&ell, &[3, 3, 2], &m, &cfg).unwrap();
    match &res.value {
        FptValue::Exact(v) => assert!(*v <= res.lambda),
        FptValue::Interval { lo, hi } => {
            assert_eq!(*hi, res.lambda);
            assert_eq!(hi - lo, r(1, 2 * 8));
        }
    }
}
