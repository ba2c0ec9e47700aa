mod common;

use folaut::autgrp::pullback;
use folaut::symforms::{default_sample_points, VectorField};
use folaut::{rat, Form, Poly, Rational};

/// `ω` pulled back along `x = s p + t q` by direct substitution, in `(s, t, ds, dt)`.
fn pulled_to_line(w: &Form, p: &[Rational], q: &[Rational]) -> Poly {
    let (s, t, ds, dt) = (Poly::var(4, 0), Poly::var(4, 1), Poly::var(4, 2), Poly::var(4, 3));
    let along = |a: &Poly, b: &Poly, i: usize| {
        &(a * &Poly::constant(4, p[i].clone())) + &(b * &Poly::constant(4, q[i].clone()))
    };
    let n1 = p.len();
    let mut images: Vec<Poly> = (0..n1).map(|i| along(&s, &t, i)).collect();
    images.extend((0..n1).map(|i| along(&ds, &dt, i)));
    w.to_bigraded().substitute(&images).unwrap()
}

#[test]
fn corpus_is_valid() {
    for w in common::corpus(7) {
        w.validate().unwrap();
    }
}

#[test]
fn radial_field_scales_by_weight() {
    for w in common::corpus(7) {
        let deg = w.web_degree().unwrap();
        let r = VectorField::euler(w.n() + 1);
        let lie = w.lie_derivative(&r).unwrap();
        assert_eq!(lie, w.scale(&rat((deg.d + 2 * deg.k) as i64)), "{w}");
        assert_eq!(w.flow_preserves(&r).unwrap(), Some(w.radial_weight().unwrap()));
    }
}

#[test]
fn restriction_divides_and_has_web_degree() {
    let mut rng = common::rng(11);
    let mut checked = 0;
    for w in common::corpus(7) {
        let n1 = w.n() + 1;
        for _ in 0..3 {
            let p = common::point(&mut rng, n1);
            let q = common::point(&mut rng, n1);
            match w.restrict_to_line(&p, &q) {
                Ok(b) => {
                    assert_eq!(b.degree, w.web_degree().unwrap().d);
                    assert_eq!(b.coefficients.len(), b.degree as usize + 1);
                    assert!(b.coefficients.iter().any(|c| *c != rat(0)));
                    let wedge = &(&Poly::var(4, 0) * &Poly::var(4, 3)) - &(&Poly::var(4, 1) * &Poly::var(4, 2));
                    let quotient = b.to_polynomial().remap(4, &[0, 1]);
                    assert_eq!(pulled_to_line(&w, &p, &q), &quotient * &wedge.pow(w.k()));
                    checked += 1;
                }
                Err(e) => assert!(["non_generic_line", "degenerate_line"].contains(&e.name()), "{e}"),
            }
        }
    }
    assert!(checked >= 120, "only {checked} generic lines");
}

#[test]
fn contraction_commutes_with_pullback() {
    let mut rng = common::rng(13);
    for w in common::corpus(7).into_iter().take(20) {
        let t = common::invertible(&mut rng, w.n() + 1);
        let pulled = pullback(&t, &w).unwrap();
        assert!(pulled.euler_contract().is_zero());
        assert_eq!(pulled.web_degree().unwrap(), w.web_degree().unwrap());
    }
}

#[test]
fn plane_foliations_are_integrable() {
    for w in common::corpus(7).into_iter().filter(|w| w.n() == 2 && w.k() == 1) {
        assert!(w.is_integrable().unwrap());
    }
}

#[test]
fn pencils_are_integrable_in_three_space() {
    let mut rng = common::rng(17);
    for _ in 0..10 {
        let f = common::homogeneous(&mut rng, 4, 2, 0.5);
        let g = common::homogeneous(&mut rng, 4, 2, 0.5);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let mut coeffs = Vec::new();
        for j in 0..4 {
            let mut e = vec![0; 4];
            e[j] = 1;
            coeffs.push((e, &(&f * &g.partial(j).unwrap()) - &(&g * &f.partial(j).unwrap())));
        }
        let w = Form::raw(3, 1, coeffs).unwrap();
        if !w.is_zero() {
            assert!(w.is_integrable().unwrap());
        }
    }
}

#[test]
fn squarefree_at_sample_points() {
    let mut rng = common::rng(19);
    for w in common::corpus(7).into_iter().filter(|w| w.k() == 1) {
        for x in default_sample_points(&w, 3) {
            assert!(w.squarefree_at(&x).unwrap());
        }
    }
    let w = common::web(&mut rng, 2, &[1, 1]);
    let square = w.sym_mul(&w).unwrap();
    for x in default_sample_points(&w, 3) {
        assert!(!square.squarefree_at(&x).unwrap());
    }
}

#[test]
fn json_round_trip_on_corpus() {
    for w in common::corpus(7) {
        let text = serde_json::to_string(&w).unwrap();
        let back: Form = serde_json::from_str(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert_eq!(Form::parse(w.n(), &w.to_string()).unwrap(), w);
    }
}

#[test]
fn validation_rejects_each_violation() {
    let name = |text: &str| Form::parse(2, text).unwrap().validate().unwrap_err().name();
    assert_eq!(name("x*dx"), "euler_contraction_nonzero");
    assert_eq!(name("x^2*dx + y*dy"), "coefficient_degree_mismatch");
    assert_eq!(name("z*(x*dy - y*dx)"), "common_factor");
    assert_eq!(name("(x + y^2)*dz"), "coefficient_not_homogeneous");
}
