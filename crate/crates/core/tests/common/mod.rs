#![allow(dead_code)]

use folaut::exactalg::monomials_of_degree;
use folaut::{rat, ratio, Form, Map, Poly, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn homogeneous(rng: &mut ChaCha8Rng, nvars: usize, degree: u32, density: f64) -> Poly {
    let mut terms = Vec::new();
    for m in monomials_of_degree(nvars, degree) {
        if rng.gen_bool(density) {
            terms.push((m.exponents().to_vec(), small_rational(rng)));
        }
    }
    Poly::from_terms(nvars, terms).unwrap()
}

/// `Σ_{i<j} P_ij (x_i dx_j - x_j dx_i)` with random `P_ij` of degree `deg`:
/// the Euler contraction vanishes by construction.
pub fn raw_foliation(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> Form {
    let n1 = n + 1;
    let mut coeffs = Vec::new();
    for i in 0..n1 {
        for j in i + 1..n1 {
            let p = homogeneous(rng, n1, deg, 0.6);
            let xi = Poly::var(n1, i);
            let xj = Poly::var(n1, j);
            let mut ej = vec![0; n1];
            ej[j] = 1;
            let mut ei = vec![0; n1];
            ei[i] = 1;
            coeffs.push((ej, &p * &xi));
            coeffs.push((ei, -(&p * &xj)));
        }
    }
    Form::raw(n, 1, coeffs).unwrap()
}

/// A valid foliation on `P^n` of degree `d`.
pub fn foliation(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Form {
    loop {
        let w = raw_foliation(rng, n, d);
        if w.is_valid() {
            return w;
        }
    }
}

/// A valid `k`-web on `P^n` as a product of foliations of the given degrees.
pub fn web(rng: &mut ChaCha8Rng, n: usize, degrees: &[u32]) -> Form {
    loop {
        let mut w = foliation(rng, n, degrees[0]);
        for &d in &degrees[1..] {
            w = w.sym_mul(&foliation(rng, n, d)).unwrap();
        }
        if w.is_valid() {
            return w;
        }
    }
}

/// Fifty valid forms on the plane and on 3-space, mixing foliations and 2-webs.
pub fn corpus(seed: u64) -> Vec<Form> {
    let mut rng = rng(seed);
    (0..50)
        .map(|i| match i % 5 {
            0 => foliation(&mut rng, 2, 0),
            1 => foliation(&mut rng, 2, 1),
            2 => foliation(&mut rng, 2, 2),
            3 => web(&mut rng, 2, &[0, 1]),
            _ => foliation(&mut rng, 3, 1),
        })
        .collect()
}

pub fn invertible(rng: &mut ChaCha8Rng, dim: usize) -> Map {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| rat(rng.gen_range(-2..=2))).collect())
            .collect();
        if let Ok(m) = Map::new(rows) {
            return m;
        }
    }
}

pub fn point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| small_rational(rng)).collect()
}
