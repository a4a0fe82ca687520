mod common;

use common::{rat_in, seeded, small_rat};
use hankel::bernstein::{
    bernstein_patch, bernstein_range, certify_upper_bound, corner_certificate, to_bernstein, BivariatePoly,
    CertifyOptions, NodeStatus, Rectangle, Strategy as Split,
};
use hankel::pipelines::h3_surfaces;
use hankel::scalar::{rat, Rat};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(m: usize, n: usize) -> impl Strategy<Value = BivariatePoly> {
    prop::collection::vec(small_rat(), (m + 1) * (n + 1)).prop_map(move |c| {
        BivariatePoly::from_terms(m, n, c.into_iter().enumerate().map(|(k, v)| (k / (n + 1), k % (n + 1), v)))
    })
}

fn rectangle() -> impl Strategy<Value = Rectangle> {
    (rat_in(-2, 2, 8), rat_in(-2, 2, 8), 1i64..=16, 1i64..=16)
        .prop_map(|(a, c, w, h)| Rectangle::new(a.clone(), a + rat(w, 8), c.clone(), c + rat(h, 8)).unwrap())
}

/// Rational point of `rect` at fractions `(t, u)` of its sides.
fn point(rect: &Rectangle, t: &Rat, u: &Rat) -> (Rat, Rat) {
    (&rect.a + t * rect.width(), &rect.c + u * rect.height())
}

proptest! {
    #![proptest_config(seeded(64))]

    #[test]
    fn enclosure(f in poly(3, 3), rect in rectangle(),
                 pts in prop::collection::vec((rat_in(0, 1, 97), rat_in(0, 1, 89)), 100)) {
        let (lo, hi) = bernstein_range(&bernstein_patch(&f, &rect, 3, 3).unwrap());
        for (t, u) in &pts {
            let (p, x) = point(&rect, t, u);
            let v = f.eval(&p, &x);
            prop_assert!(lo <= v && v <= hi, "{} outside [{}, {}]", v, lo, hi);
        }
    }

    #[test]
    fn corners_interpolate(f in poly(4, 2)) {
        let patch = to_bernstein(&f, 4, 2).unwrap();
        let (z, o) = (Rat::zero(), Rat::one());
        prop_assert_eq!(&patch.coeffs[0][0], &f.eval(&z, &z));
        prop_assert_eq!(&patch.coeffs[4][0], &f.eval(&o, &z));
        prop_assert_eq!(&patch.coeffs[0][2], &f.eval(&z, &o));
        prop_assert_eq!(&patch.coeffs[4][2], &f.eval(&o, &o));
    }

    #[test]
    fn elevation_never_widens(f in poly(3, 2), dm in 0usize..3, dn in 0usize..3) {
        let (lo, hi) = bernstein_range(&to_bernstein(&f, 3, 2).unwrap());
        let (lo2, hi2) = bernstein_range(&to_bernstein(&f, 3 + dm, 2 + dn).unwrap());
        prop_assert!(lo2 >= lo && hi2 <= hi);
    }

    #[test]
    fn proof_tree_is_well_formed(f in poly(2, 2), bound in small_rat(), depth in 0usize..4) {
        for strategy in [Split::PaperQuadrants, Split::BisectLongest, Split::Auto] {
            let opts = CertifyOptions { max_depth: depth, strategy, corner_fallback: false };
            let report = certify_upper_bound(&f, &Rectangle::unit(), &bound, &opts);
            let leaves = report.root.leaves();
            prop_assert!(leaves.iter().all(|n| n.status != NodeStatus::Subdivided));
            prop_assert_eq!(report.certified, leaves.iter().all(|n| n.certified()));
            if report.certified {
                // Certified bounds must hold at the corners of the square.
                for (p, x) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    prop_assert!(f.eval(&rat(p, 1), &rat(x, 1)) <= bound);
                }
            }
        }
    }
}

#[test]
fn subdivision_reaches_a_bound_above_the_maximum() {
    // p(1 − p) + x(1 − x) peaks at 1/2 in the centre of the square.
    let p = BivariatePoly::p();
    let x = BivariatePoly::x();
    let one = BivariatePoly::from_int(1);
    let f = p.mul(&one.sub(&p)).add(&x.mul(&one.sub(&x)));
    for strategy in [Split::PaperQuadrants, Split::BisectLongest] {
        let opts = CertifyOptions { max_depth: 12, strategy, corner_fallback: false };
        let ok = certify_upper_bound(&f, &Rectangle::unit(), &rat(51, 100), &opts);
        assert!(ok.certified, "{strategy:?}");
        let too_low = certify_upper_bound(&f, &Rectangle::unit(), &rat(49, 100), &opts);
        assert!(!too_low.certified);
    }
}

fn corner_sound(f: &BivariatePoly, s: &Rat, steps: i64) {
    let cert = corner_certificate(f, s).unwrap();
    assert!(cert.certifies(), "margin {}", cert.margin);
    for i in 0..=steps {
        for j in 0..=steps {
            let (p, x) = (s * rat(i, steps), s * rat(j, steps));
            let floor = &cert.margin * (&p * &p + &x * &x);
            assert!(f.eval(&p, &x) >= floor, "F < μ(p² + x²) at ({p}, {x})");
        }
    }
}

#[test]
fn corner_certificate_is_sound_on_the_g1_gap() {
    let s = h3_surfaces().unwrap();
    corner_sound(&s.f, &rat(1, 4), 99);
}

#[test]
fn corner_certificate_is_sound_on_fixtures() {
    let p = BivariatePoly::p();
    let x = BivariatePoly::x();
    // 3p² + px + 2x² − 5p³ + 4x²p − x⁴
    let f = BivariatePoly::from_int(3).mul(&p.pow(2))
        .add(&p.mul(&x))
        .add(&BivariatePoly::from_int(2).mul(&x.pow(2)))
        .sub(&BivariatePoly::from_int(5).mul(&p.pow(3)))
        .add(&BivariatePoly::from_int(4).mul(&x.pow(2)).mul(&p))
        .sub(&x.pow(4));
    corner_sound(&f, &rat(1, 10), 99);
    // A certificate must not be issued once the tail dominates.
    let big = corner_certificate(&f, &rat(1, 1)).map(|c| c.certifies()).unwrap_or(false);
    assert!(!big);
}
