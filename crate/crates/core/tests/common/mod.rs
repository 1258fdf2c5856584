#![allow(dead_code)]

use fpt_core::arith::Rational;
use fpt_core::fractal::LinearSystem;
use fpt_core::gf::Field;
use fpt_core::parse::{parse_field_spec, parse_form};
use fpt_core::poly::{BinaryForm, LinearForm};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn field(spec: &str) -> Field {
    parse_field_spec(spec).unwrap()
}

pub fn form(k: &Field, s: &str) -> BinaryForm {
    parse_form(s, k, ("x", "y")).unwrap()
}

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Random form of the given degree, possibly with a zero leading coefficient.
pub fn random_form(k: &Field, d: usize, g: &mut ChaCha8Rng) -> BinaryForm {
    loop {
        let c: Vec<u64> = (0..=d).map(|_| g.gen_range(0..k.size())).collect();
        let f = BinaryForm::new(k, c);
        if !f.is_zero() {
            return f;
        }
    }
}

/// `x`, `y`, `x + c·y` for `c = 1..p−1`: every linear form over a prime field up to scaling.
pub fn all_linear(k: &Field) -> Vec<LinearForm> {
    let mut v = vec![LinearForm::x(k), LinearForm::y(k)];
    for c in 1..k.p() {
        v.push(LinearForm::new(k, 1, c).unwrap());
    }
    v
}

/// `(x, y, x + y)`.
pub fn xyz(k: &Field) -> LinearSystem {
    LinearSystem::new(vec![LinearForm::x(k), LinearForm::y(k), LinearForm::new(k, 1, 1).unwrap()])
        .unwrap()
}

pub fn coprime_triple(k: &Field, max_deg: usize, g: &mut ChaCha8Rng) -> [BinaryForm; 3] {
    loop {
        let t = [0, 1, 2].map(|_| {
            let d = g.gen_range(1..=max_deg);
            random_form(k, d, g)
        });
        let c = t[0].gcd(&t[1]).unwrap().gcd(&t[2]).unwrap();
        if c.is_constant() {
            return t;
        }
    }
}
