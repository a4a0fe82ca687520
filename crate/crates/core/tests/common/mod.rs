#![allow(dead_code)]

use hankel::scalar::{gauss, rat, GaussRat, Rat};
use hankel::series::TruncatedSeries;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// Fixed-seed configuration so every run explores the same cases.
pub fn seeded(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x68616e6b656c),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

/// Rational in `[lo, hi]` on the grid `1/den`.
pub fn rat_in(lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Rat> {
    (lo * den..=hi * den).prop_map(move |n| rat(n, den))
}

pub fn small_gauss() -> impl Strategy<Value = GaussRat> {
    (small_rat(), small_rat()).prop_map(|(a, b)| gauss(a, b))
}

/// Gaussian rational with `|z| ≤ r`.
pub fn gauss_in_disk(r: i64) -> impl Strategy<Value = GaussRat> {
    (rat_in(-r, r, 64), rat_in(-r, r, 64))
        .prop_filter("inside the disk", move |(a, b)| a * a + b * b <= rat(r * r, 1))
        .prop_map(|(a, b)| gauss(a, b))
}

pub fn rat_series(order: usize) -> impl Strategy<Value = TruncatedSeries<Rat>> {
    prop::collection::vec(small_rat(), order + 1)
        .prop_map(move |c| TruncatedSeries::from_coeffs(order, c).unwrap())
}

pub fn gauss_series(order: usize) -> impl Strategy<Value = TruncatedSeries<GaussRat>> {
    prop::collection::vec(small_gauss(), order + 1)
        .prop_map(move |c| TruncatedSeries::from_coeffs(order, c).unwrap())
}
