mod common;

use common::*;
use fpt_core::arith::Rational;
use fpt_core::fractal::{
    delta_at, delta_direct, find_critical_below, grid_sweep, in_upper, in_upper_direct,
    is_critical, phi_at, phi_direct, write_csv, GridBox, GridPoint, LinearSystem,
};
use fpt_core::gf::Field;
use fpt_core::poly::LinearForm;
use fpt_core::syzygy::TwoGenIdeal;
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Setup {
    ell: LinearSystem,
    b: TwoGenIdeal,
    p: u64,
}

fn random_setup(g: &mut ChaCha8Rng) -> Setup {
    let p = *[2u64, 3, 5].choose(g).unwrap();
    let k = Field::prime(p).unwrap();
    let b = loop {
        let u = random_form(&k, g.gen_range(1..=3), g);
        let v = random_form(&k, g.gen_range(1..=3), g);
        if let Ok(b) = TwoGenIdeal::new(u, v) {
            break b;
        }
    };
    let mut forms = all_linear(&k);
    forms.shuffle(g);
    forms.truncate(g.gen_range(2..=forms.len().min(4)));
    Setup { ell: LinearSystem::new(forms).unwrap(), b, p }
}

fn random_point(s: &Setup, g: &mut ChaCha8Rng) -> GridPoint {
    let e = g.gen_range(0..=1);
    let q = s.p.pow(e);
    let top = q * s.b.deg_uv() + 1;
    let a: Vec<u64> = (0..s.ell.len()).map(|_| g.gen_range(0..=top)).collect();
    GridPoint::from_ints(s.p, e, &a)
}

fn dist(t: &GridPoint, u: &GridPoint) -> Rational {
    t.coordinates()
        .iter()
        .zip(u.coordinates())
        .map(|(a, b)| (a - b).abs())
        .sum()
}

fn deg_uv(s: &Setup) -> Rational {
    Rational::from_integer(BigInt::from(s.b.deg_uv()))
}

#[test]
fn chain_agrees_with_direct_membership() {
    let mut g = rng(101);
    for _ in 0..150 {
        let s = random_setup(&mut g);
        let t = random_point(&s, &mut g);
        assert_eq!(
            in_upper(&s.ell, &s.b, &t).unwrap(),
            in_upper_direct(&s.ell, &s.b, &t).unwrap(),
            "{t} for {}",
            s.b
        );
        assert_eq!(delta_at(&s.ell, &s.b, &t).unwrap(), delta_direct(&s.ell, &s.b, &t).unwrap());
    }
}

#[test]
fn delta_phi_identity() {
    // Δ² = 4(Φ − deg b) + (‖t‖ − deg UV)², Φ by explicit colength
    let mut g = rng(102);
    for _ in 0..100 {
        let s = random_setup(&mut g);
        let t = random_point(&s, &mut g);
        let d = delta_at(&s.ell, &s.b, &t).unwrap();
        let phi = phi_direct(&s.ell, &s.b, &t).unwrap();
        assert_eq!(phi, phi_at(&s.ell, &s.b, &t).unwrap());
        let deg_b = Rational::from_integer(BigInt::from(s.b.deg_b()));
        let n = t.norm() - deg_uv(&s);
        let four = Rational::from_integer(4.into());
        assert_eq!(&d * &d, four * (phi - deg_b) + &n * &n, "{t}");
    }
}

#[test]
fn phi_for_the_maximal_ideal() {
    let k = Field::prime(3).unwrap();
    let ell = LinearSystem::new(vec![LinearForm::x(&k), LinearForm::y(&k)]).unwrap();
    let m = TwoGenIdeal::maximal(&k);
    for a1 in 0..9u64 {
        for a2 in 0..9u64 {
            let t = GridPoint::from_ints(3, 2, &[a1, a2]);
            let want = r(a1 as i64, 9) + r(a2 as i64, 9) - r((a1 * a2) as i64, 81);
            assert_eq!(phi_at(&ell, &m, &t).unwrap(), want);
        }
    }
}

#[test]
fn trivial_region_values() {
    let mut g = rng(103);
    for _ in 0..40 {
        let s = random_setup(&mut g);
        let q = s.p;
        let mut a: Vec<u64> = (0..s.ell.len()).map(|_| g.gen_range(0..=q)).collect();
        a[0] += q * s.b.deg_uv();
        let t = GridPoint::from_ints(s.p, 1, &a);
        assert!(in_upper(&s.ell, &s.b, &t).unwrap());
        assert_eq!(delta_at(&s.ell, &s.b, &t).unwrap(), t.norm() - deg_uv(&s));
        let deg_b = Rational::from_integer(BigInt::from(s.b.deg_b()));
        assert_eq!(phi_at(&s.ell, &s.b, &t).unwrap(), deg_b);
    }
}

#[test]
fn delta_is_well_defined() {
    let mut g = rng(104);
    for _ in 0..40 {
        let s = random_setup(&mut g);
        let a: Vec<u64> = (0..s.ell.len()).map(|_| g.gen_range(0..=2 * s.b.deg_uv())).collect();
        let t = GridPoint::from_ints(s.p, 0, &a);
        assert_eq!(
            delta_at(&s.ell, &s.b, &t).unwrap(),
            delta_at(&s.ell, &s.b, &t.at_exponent(1)).unwrap()
        );
        assert_eq!(
            delta_direct(&s.ell, &s.b, &t).unwrap(),
            delta_direct(&s.ell, &s.b, &t.at_exponent(1)).unwrap()
        );
    }
}

#[test]
fn lipschitz_and_monotone() {
    let mut g = rng(105);
    for _ in 0..80 {
        let s = random_setup(&mut g);
        let t = random_point(&s, &mut g).at_exponent(1);
        let u = random_point(&s, &mut g).at_exponent(1);
        let dt = delta_at(&s.ell, &s.b, &t).unwrap();
        let du = delta_at(&s.ell, &s.b, &u).unwrap();
        assert!((dt - du).abs() <= dist(&t, &u));
        let lo: Vec<BigUint> = t
            .numerators()
            .iter()
            .zip(u.numerators())
            .map(|(a, b)| a.min(b).clone())
            .collect();
        let lo = GridPoint::new(s.p, 1, lo);
        let (pl, pt) = (phi_at(&s.ell, &s.b, &lo).unwrap(), phi_at(&s.ell, &s.b, &t).unwrap());
        assert!(pl <= pt);
        assert!(pl >= Rational::from_integer(0.into()));
        assert!(pt <= Rational::from_integer(BigInt::from(s.b.deg_b())));
    }
}

#[test]
fn critical_point_neighbourhoods() {
    let mut g = rng(106);
    let mut seen = 0;
    for _ in 0..60 {
        let s = random_setup(&mut g);
        let start = random_point(&s, &mut g).at_exponent(1);
        let Some(c) = find_critical_below(&s.ell, &s.b, &start).unwrap() else {
            continue;
        };
        seen += 1;
        assert!(is_critical(&s.ell, &s.b, &c.point).unwrap());
        let c1 = c.point.at_exponent(1);
        let dc = delta_at(&s.ell, &s.b, &c1).unwrap();
        assert_eq!(dc, c.delta_value);
        let n = s.ell.len() as i64;
        let q = s.p.pow(c.point.e());
        let prime_to_p = c.point.numerators().iter().any(|a| a % s.p != BigUint::from(0u32));
        if c.point.e() >= 1 && prime_to_p {
            assert!(dc <= r(n - 2, q as i64), "Δ({}) = {dc}", c.point);
        }
        // upper set and linear decay
        for _ in 0..10 {
            let a: Vec<u64> = c1
                .numerators()
                .iter()
                .map(|x| {
                    let x: u64 = x.try_into().unwrap();
                    (x as i64 + g.gen_range(-2..=2)).max(0) as u64
                })
                .collect();
            let t = GridPoint::from_ints(s.p, 1, &a);
            let d = dist(&t, &c1);
            let above = t.numerators().iter().zip(c1.numerators()).all(|(x, y)| x >= y);
            if above {
                assert!(in_upper(&s.ell, &s.b, &t).unwrap());
            }
            if d <= dc {
                assert_eq!(delta_at(&s.ell, &s.b, &t).unwrap(), &dc - &d, "{t} near {c1}");
            }
        }
    }
    assert!(seen > 20);
}

#[test]
fn maximal_ideal_integer_critical_points() {
    for p in [2u64, 3, 5] {
        let k = Field::prime(p).unwrap();
        let ell = xyz(&k);
        let m = TwoGenIdeal::maximal(&k);
        for a1 in 0..=2u64 {
            for a2 in 0..=2u64 {
                for a3 in 0..=2u64 {
                    let a = [a1, a2, a3];
                    let unit = a.iter().sum::<u64>() == 1;
                    let crit = is_critical(&ell, &m, &GridPoint::from_ints(p, 0, &a)).unwrap();
                    assert_eq!(crit, unit, "{a:?} over F_{p}");
                }
            }
        }
    }
}

#[test]
fn truncation_is_its_own_critical_point() {
    let k = field("q=25");
    let f = fpt_core::poly::factor_linear(&form(&k, "x*y*(x^2+2*x*y+3*y^2)")).unwrap();
    let ell = LinearSystem::new(f.forms()).unwrap();
    let m = TwoGenIdeal::maximal(&f.field);
    let u = GridPoint::from_ints(5, 3, &[27, 27, 97, 97]);
    let c = find_critical_below(&ell, &m, &u).unwrap().unwrap();
    assert_eq!(c.point, u);
}

#[test]
fn sweep_of_the_unit_square() {
    let k = Field::prime(2).unwrap();
    let ell = LinearSystem::new(vec![LinearForm::x(&k), LinearForm::y(&k)]).unwrap();
    let m = TwoGenIdeal::maximal(&k);
    let gb = GridBox { lo: vec![0, 0], hi: vec![8, 8], e: 2 };
    let cells = grid_sweep(&ell, &m, &gb, 100).unwrap();
    assert_eq!(cells.len(), 81);
    for c in &cells {
        assert_eq!(!c.upper, c.a[0] < 4 && c.a[1] < 4);
    }
    assert!(grid_sweep(&ell, &m, &gb, 80).is_err());
    let one = GridBox { lo: vec![3, 5], hi: vec![3, 5], e: 2 };
    let cells = grid_sweep(&ell, &m, &one, 1).unwrap();
    let t = GridPoint::from_ints(2, 2, &[3, 5]);
    assert_eq!(cells[0].delta, delta_at(&ell, &m, &t).unwrap());
    let mut out = Vec::new();
    write_csv(&mut out, &cells, &BigUint::from(4u32)).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "a1,a2,q,delta_num,delta_den,region\n3,5,4,0,1,U\n");
}
