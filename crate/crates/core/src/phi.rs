//! The target function `φ(z) = (1 + z/2)²`, grid checks of its Ma–Minda
//! properties, and the construction of `f` with `1 + z f''/f' = φ(ω)`.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::error::SeriesError;
use crate::scalar::{Scalar, C64};
use crate::series::TruncatedSeries;

/// `φ(z) = 1 + z + z²/4`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PhiFunction;

impl PhiFunction {
    /// Power-series coefficients `(1, 1, 1/4)`.
    pub fn coeffs<T: Scalar>() -> [T; 3] {
        [T::one(), T::one(), T::from_ratio(1, 4)]
    }

    /// φ as a series of the given order. φ is a polynomial, so the zero
    /// padding above degree 2 is exact.
    pub fn series<T: Scalar>(order: usize) -> TruncatedSeries<T> {
        TruncatedSeries::padded(order, Self::coeffs::<T>())
    }

    /// Exact or floating evaluation, depending on `T`.
    pub fn eval<T: Scalar>(z: &T) -> T {
        let w = T::one() + z.clone() / T::from_i64(2);
        w.clone() * w
    }

    pub fn eval_c64(z: C64) -> C64 {
        let w = 1.0 + z * 0.5;
        w * w
    }

    /// `z φ'(z) / (φ(z) - 1)` in its reduced form `(1 + z/2)/(1 + z/4)`.
    pub fn starlike_quotient(z: C64) -> C64 {
        (1.0 + z * 0.5) / (1.0 + z * 0.25)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("grid needs at least 2 radial and 2 angular steps")]
pub struct GridTooCoarse;

#[derive(Clone, Debug, Serialize)]
pub struct GridPoint {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for GridPoint {
    fn from(z: C64) -> Self {
        GridPoint { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiPropertyReport {
    pub radial_steps: usize,
    pub angular_steps: usize,
    /// Minimum of `Re φ` over grid points with `r < 1`.
    pub min_re_phi_interior: f64,
    pub min_re_phi_at: GridPoint,
    /// Extremes of `|φ|` over the closed grid.
    pub min_abs_phi: f64,
    pub min_abs_phi_at: GridPoint,
    pub max_abs_phi: f64,
    pub max_abs_phi_at: GridPoint,
    /// Minimum of `Re((1+z/2)/(1+z/4))` over grid points with `r < 1`.
    pub min_re_starlike_quotient: f64,
    /// Pairs of distinct grid points with equal φ (up to 1e-12).
    pub univalence_collisions: usize,
    /// Largest `|z1 + z2|` among the collisions; any collision with this
    /// below 2 contradicts the `z1 + z2 = -4` argument.
    pub max_collision_sum_modulus: Option<f64>,
    pub checks: Vec<PropertyCheck>,
    pub all_passed: bool,
}

/// Tolerance for the closed-disk modulus bounds, which are attained.
const MODULUS_SLACK: f64 = 1e-12;
const COLLISION_TOL: f64 = 1e-12;

/// Evaluates φ on the polar grid `r = k/(radial-1)`, `θ = 2πj/angular`.
pub fn check_phi_properties(
    radial_steps: usize,
    angular_steps: usize,
) -> Result<PhiPropertyReport, GridTooCoarse> {
    if radial_steps < 2 || angular_steps < 2 {
        return Err(GridTooCoarse);
    }
    let unit: Vec<C64> = (0..angular_steps)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / angular_steps as f64))
        .collect();

    // The centre is one point, not `angular_steps` copies of it.
    let mut points = vec![(C64::new(0.0, 0.0), true)];
    for k in 1..radial_steps {
        let r = k as f64 / (radial_steps - 1) as f64;
        let interior = k + 1 < radial_steps;
        points.extend(unit.iter().map(|u| (u * r, interior)));
    }

    let mut min_re = (f64::INFINITY, C64::new(0.0, 0.0));
    let mut min_abs = (f64::INFINITY, C64::new(0.0, 0.0));
    let mut max_abs = (f64::NEG_INFINITY, C64::new(0.0, 0.0));
    let mut min_quot = f64::INFINITY;
    let mut values = Vec::with_capacity(points.len());
    for &(z, interior) in &points {
        let w = PhiFunction::eval_c64(z);
        let m = w.norm();
        if m < min_abs.0 {
            min_abs = (m, z);
        }
        if m > max_abs.0 {
            max_abs = (m, z);
        }
        if interior {
            if w.re < min_re.0 {
                min_re = (w.re, z);
            }
            min_quot = min_quot.min(PhiFunction::starlike_quotient(z).re);
        }
        values.push(w);
    }

    let (collisions, max_sum) = find_collisions(&points, &values);

    let modulus_ok = min_abs.0 >= 0.25 - MODULUS_SLACK && max_abs.0 <= 2.25 + MODULUS_SLACK;
    let re_ok = min_re.0 > 0.25;
    let star_ok = min_quot > 0.0;
    let univalent_ok = collisions == 0;
    let checks = vec![
        PropertyCheck {
            name: "modulus_bounds",
            passed: modulus_ok,
            detail: format!("1/4 <= |phi| <= 9/4: min {:.15}, max {:.15}", min_abs.0, max_abs.0),
        },
        PropertyCheck {
            name: "re_phi_above_quarter",
            passed: re_ok,
            detail: format!("min Re phi over r < 1: {:.15}", min_re.0),
        },
        PropertyCheck {
            name: "starlike_wrt_one",
            passed: star_ok,
            detail: format!("min Re (1+z/2)/(1+z/4) over r < 1: {min_quot:.15}"),
        },
        PropertyCheck {
            name: "univalent",
            passed: univalent_ok,
            detail: format!("{collisions} colliding pairs"),
        },
    ];
    Ok(PhiPropertyReport {
        radial_steps,
        angular_steps,
        min_re_phi_interior: min_re.0,
        min_re_phi_at: min_re.1.into(),
        min_abs_phi: min_abs.0,
        min_abs_phi_at: min_abs.1.into(),
        max_abs_phi: max_abs.0,
        max_abs_phi_at: max_abs.1.into(),
        min_re_starlike_quotient: min_quot,
        univalence_collisions: collisions,
        max_collision_sum_modulus: max_sum,
        all_passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Sweep over φ-values sorted by real part; only pairs within the tolerance
/// band in `Re φ` are compared.
fn find_collisions(points: &[(C64, bool)], values: &[C64]) -> (usize, Option<f64>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].re.total_cmp(&values[b].re));
    let mut count = 0;
    let mut max_sum: Option<f64> = None;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if values[j].re - values[i].re > COLLISION_TOL {
                break;
            }
            if (values[j] - values[i]).norm() <= COLLISION_TOL
                && (points[i].0 - points[j].0).norm() > COLLISION_TOL
            {
                count += 1;
                let s = (points[i].0 + points[j].0).norm();
                max_sum = Some(max_sum.map_or(s, |m: f64| m.max(s)));
            }
        }
    }
    (count, max_sum)
}

/// The normalized `f` with `1 + z f''/f' = φ(ω)`, computed as
/// `f = ∫ exp(∫ (φ∘ω − 1)/z)`. The result has order `target_order`, which
/// needs `ω` known through `z^(target_order − 1)`.
pub fn build_f_from_schwarz<T: Scalar>(
    omega: &TruncatedSeries<T>,
    target_order: usize,
) -> Result<TruncatedSeries<T>, SeriesError> {
    if !omega.coeffs()[0].is_zero() {
        return Err(SeriesError::NonZeroConstantTerm("Schwarz function"));
    }
    if target_order < 1 || omega.order() + 1 < target_order {
        return Err(SeriesError::InsufficientOrder {
            have: omega.order(),
            need: target_order.max(1) - 1,
        });
    }
    let omega = omega.truncate(target_order - 1);
    let n = omega.order();
    let composed = TruncatedSeries::compose(&PhiFunction::series::<T>(n), &omega)?;
    let log_fprime = composed
        .sub(&TruncatedSeries::constant(T::one(), n))
        .divide_by_z()
        .map(|s| s.integrate_from_zero())
        .unwrap_or_else(|_| TruncatedSeries::zero(0));
    let fprime = log_fprime.exp()?;
    Ok(fprime.integrate_from_zero().truncate(target_order))
}

/// Recovers `1 + z f''/f'` from `f`; the order drops by one.
pub fn convexity_expression<T: Scalar>(
    f: &TruncatedSeries<T>,
) -> Result<TruncatedSeries<T>, SeriesError> {
    let fp = f.derivative();
    let fpp = fp.derivative().multiply_by_z();
    let ratio = fpp.divide(&fp)?;
    Ok(ratio.add(&TruncatedSeries::constant(T::one(), ratio.order())))
}

/// The extremal Schwarz function `ω(z) = z^k` at the given order.
pub fn power_schwarz<T: Scalar>(k: usize, order: usize) -> TruncatedSeries<T> {
    TruncatedSeries::monomial(T::one(), k, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, GaussRat, Rat};
    use crate::series::RatSeries;

    #[test]
    fn phi_values() {
        assert_eq!(PhiFunction::eval(&rat(0, 1)), rat(1, 1));
        assert_eq!(PhiFunction::eval(&rat(1, 1)), rat(9, 4));
        assert_eq!(PhiFunction::eval(&rat(-1, 1)), rat(1, 4));
        let i = GaussRat::new(rat(0, 1), rat(1, 1));
        // (1 + i/2)^2 = 3/4 + i
        assert_eq!(PhiFunction::eval(&i), GaussRat::new(rat(3, 4), rat(1, 1)));
    }

    #[test]
    fn coarse_grid_rejected() {
        assert!(check_phi_properties(1, 10).is_err());
        assert!(check_phi_properties(10, 1).is_err());
    }

    #[test]
    fn small_grid_passes() {
        let rep = check_phi_properties(8, 16).unwrap();
        assert!(rep.all_passed, "{rep:?}");
        // z = -1 lies on the grid when the angular count is even.
        assert!((rep.min_abs_phi - 0.25).abs() < 1e-15);
        assert!((rep.max_abs_phi - 2.25).abs() < 1e-15);
    }

    #[test]
    fn extremal_series() {
        let f = build_f_from_schwarz(&power_schwarz::<Rat>(2, 8), 9).unwrap();
        let expect = RatSeries::padded(
            9,
            [
                rat(0, 1),
                rat(1, 1),
                rat(0, 1),
                rat(1, 6),
                rat(0, 1),
                rat(3, 80),
                rat(0, 1),
                rat(5, 672),
                rat(0, 1),
                rat(19, 13824),
            ],
        );
        assert_eq!(f, expect);
        let f = build_f_from_schwarz(&power_schwarz::<Rat>(3, 6), 7).unwrap();
        let mut c = vec![rat(0, 1); 8];
        c[1] = rat(1, 1);
        c[4] = rat(1, 12);
        c[7] = rat(1, 72);
        assert_eq!(f, RatSeries::padded(7, c));
    }

    #[test]
    fn identity_schwarz_function() {
        let f = build_f_from_schwarz(&RatSeries::identity(4), 5).unwrap();
        let expect = RatSeries::padded(
            5,
            [rat(0, 1), rat(1, 1), rat(1, 2), rat(5, 24), rat(7, 96), rat(43, 1920)],
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn build_f_errors() {
        let bad = RatSeries::padded(4, [rat(1, 2), rat(1, 1)]);
        assert!(build_f_from_schwarz(&bad, 5).is_err());
        assert!(build_f_from_schwarz(&RatSeries::identity(2), 5).is_err());
    }

    #[test]
    fn order_one_is_just_z() {
        let f = build_f_from_schwarz(&RatSeries::zero(0), 1).unwrap();
        assert_eq!(f, RatSeries::identity(1));
    }
}
