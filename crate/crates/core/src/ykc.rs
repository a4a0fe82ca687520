//! `Y(A,B,C) = max_{|z|≤1} (|A + Bz + Cz²| + 1 − |z|²)` for real `A, B, C`:
//! the piecewise closed form and a brute-force disk maximizer.

use std::f64::consts::PI;
use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::scalar::{rat_to_f64, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum YkcBranch {
    /// `AC ≥ 0`, `|B| ≥ 2(1−|C|)`.
    ILargeB,
    /// `AC ≥ 0`, `|B| < 2(1−|C|)`.
    ISmallB,
    IiFirst,
    IiSecond,
    R1,
    R2,
    R3,
}

impl YkcBranch {
    pub fn label(self) -> &'static str {
        match self {
            YkcBranch::ILargeB => "i-large-B",
            YkcBranch::ISmallB => "i-small-B",
            YkcBranch::IiFirst => "ii-first",
            YkcBranch::IiSecond => "ii-second",
            YkcBranch::R1 => "R-1",
            YkcBranch::R2 => "R-2",
            YkcBranch::R3 => "R-3",
        }
    }
}

impl fmt::Display for YkcBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum YkcValue {
    Exact(Rat),
    Approx(f64),
}

impl YkcValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            YkcValue::Exact(r) => rat_to_f64(r),
            YkcValue::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            YkcValue::Exact(r) => Some(r),
            YkcValue::Approx(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct YkcResult {
    pub value: YkcValue,
    /// Fired branch of the closed form; `None` for the oracle.
    pub branch: Option<YkcBranch>,
    /// Location of the maximum found by the oracle.
    pub argmax_hint: Option<(f64, f64)>,
}

/// Closed-form value before the final square root of branch R-3.
enum Closed<T> {
    Value(T),
    /// `factor · sqrt(radicand)`
    Sqrt { factor: T, radicand: T },
}

trait Real: Clone + PartialOrd + Signed {
    fn int(n: i64) -> Self;
}

impl Real for Rat {
    fn int(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
}

impl Real for f64 {
    fn int(n: i64) -> Self {
        n as f64
    }
}

fn min<T: Real>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// Branch selection in the stated top-down order; at ties the first
/// matching branch wins.
fn classify<T: Real>(a: &T, b: &T, c: &T) -> (YkcBranch, Closed<T>) {
    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());
    let one = T::one();
    let two = T::int(2);
    let four = T::int(4);
    let b2 = b.clone() * b.clone();
    let ac_prod = a.clone() * c.clone();

    if ac_prod >= T::zero() {
        return if ab >= two * (one.clone() - ac.clone()) {
            (YkcBranch::ILargeB, Closed::Value(aa + ab + ac))
        } else {
            let v = one.clone() + aa + b2 / (four * (one - ac));
            (YkcBranch::ISmallB, Closed::Value(v))
        };
    }

    // AC < 0, so C ≠ 0.
    let threshold = -(four.clone() * ac_prod.clone()) * (one.clone() / (c.clone() * c.clone()) - one.clone());
    if threshold <= b2 && ab < two.clone() * (one.clone() - ac.clone()) {
        let v = one.clone() - aa + b2 / (four * (one - ac));
        return (YkcBranch::IiFirst, Closed::Value(v));
    }
    let cap = four.clone() * (one.clone() + ac.clone()) * (one.clone() + ac.clone());
    if b2 < min(cap, threshold) {
        let v = one.clone() + aa + b2 / (four * (one + ac));
        return (YkcBranch::IiSecond, Closed::Value(v));
    }
    let abs_ab = aa.clone() * ab.clone();
    if ac.clone() * (ab.clone() + four.clone() * aa.clone()) <= abs_ab {
        return (YkcBranch::R1, Closed::Value(aa + ab - ac));
    }
    if abs_ab <= ac.clone() * (ab.clone() - four.clone() * aa.clone()) {
        return (YkcBranch::R2, Closed::Value(-aa + ab + ac));
    }
    let radicand = one - b2 / (four * ac_prod);
    (
        YkcBranch::R3,
        Closed::Sqrt {
            factor: aa + ac,
            radicand,
        },
    )
}

fn rat_sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rat::new(sn, sd))
}

/// Closed form over exact rationals. Every branch except R-3 is rational;
/// R-3 stays exact when its radicand is a rational square and otherwise
/// falls back to `f64` (relative error around 1e-16).
pub fn ykc_closed_form(a: &Rat, b: &Rat, c: &Rat) -> YkcResult {
    let (branch, closed) = classify(a, b, c);
    let value = match closed {
        Closed::Value(v) => YkcValue::Exact(v),
        Closed::Sqrt { factor, radicand } => match rat_sqrt_exact(&radicand) {
            Some(s) => YkcValue::Exact(factor * s),
            None => YkcValue::Approx(rat_to_f64(&factor) * rat_to_f64(&radicand).sqrt()),
        },
    };
    YkcResult {
        value,
        branch: Some(branch),
        argmax_hint: None,
    }
}

/// Closed form in double precision.
pub fn ykc_closed_form_f64(a: f64, b: f64, c: f64) -> YkcResult {
    let (branch, closed) = classify(&a, &b, &c);
    let v = match closed {
        Closed::Value(v) => v,
        Closed::Sqrt { factor, radicand } => factor * radicand.sqrt(),
    };
    YkcResult {
        value: YkcValue::Approx(v),
        branch: Some(branch),
        argmax_hint: None,
    }
}

fn objective(a: f64, b: f64, c: f64, r: f64, theta: f64) -> f64 {
    let (s1, c1) = theta.sin_cos();
    let (s2, c2) = (2.0 * theta).sin_cos();
    let re = a + b * r * c1 + c * r * r * c2;
    let im = b * r * s1 + c * r * r * s2;
    re.hypot(im) + 1.0 - r * r
}

/// Grid candidates kept for local refinement.
const CANDIDATES: usize = 6;

/// Maximizes over the polar grid `r = k/(radial−1)`, `θ = 2πj/angular`, then
/// polishes the best few well-separated grid points by a compass search in
/// `(r, θ)` with `r` clamped to `[0, 1]`.
pub fn ykc_brute_force(a: f64, b: f64, c: f64, radial: usize, angular: usize) -> YkcResult {
    let radial = radial.max(8);
    let angular = angular.max(8);
    let dr = 1.0 / (radial - 1) as f64;
    let dt = 2.0 * PI / angular as f64;

    let mut best: Vec<(f64, usize, usize)> = Vec::with_capacity(CANDIDATES + 1);
    let mut consider = |v: f64, i: usize, j: usize| {
        if best.len() == CANDIDATES && v <= best[CANDIDATES - 1].0 {
            return;
        }
        let near = |&(_, bi, bj): &(f64, usize, usize)| {
            let dj = (bj as isize - j as isize).rem_euclid(angular as isize);
            let dj = dj.min(angular as isize - dj);
            (bi as isize - i as isize).abs() <= 3 && dj <= 3
        };
        if let Some(pos) = best.iter().position(near) {
            if v > best[pos].0 {
                best[pos] = (v, i, j);
                best.sort_by(|x, y| y.0.total_cmp(&x.0));
            }
            return;
        }
        best.push((v, i, j));
        best.sort_by(|x, y| y.0.total_cmp(&x.0));
        best.truncate(CANDIDATES);
    };

    consider(a.abs() + 1.0, 0, 0);
    let radii: Vec<(f64, f64)> = (1..radial).map(|i| {
        let r = i as f64 * dr;
        (r, r * r)
    }).collect();
    for j in 0..angular {
        let t = j as f64 * dt;
        let (s1, c1) = t.sin_cos();
        let (s2, c2) = (2.0 * t).sin_cos();
        let (bc, bs, cc, cs) = (b * c1, b * s1, c * c2, c * s2);
        let mut row_best = (f64::NEG_INFINITY, 0);
        for (i, &(r, r2)) in radii.iter().enumerate() {
            let re = a + bc * r + cc * r2;
            let im = bs * r + cs * r2;
            let v = (re * re + im * im).sqrt() + 1.0 - r2;
            if v > row_best.0 {
                row_best = (v, i + 1);
            }
        }
        consider(row_best.0, row_best.1, j);
    }

    let mut top = (f64::NEG_INFINITY, 0.0, 0.0);
    for &(_, i, j) in &best {
        let (v, r, t) = refine(a, b, c, i as f64 * dr, j as f64 * dt, dr, dt);
        if v > top.0 {
            top = (v, r, t);
        }
    }
    let (v, r, t) = top;
    YkcResult {
        value: YkcValue::Approx(v),
        branch: None,
        argmax_hint: Some((r * t.cos(), r * t.sin())),
    }
}

fn refine(a: f64, b: f64, c: f64, r0: f64, t0: f64, dr: f64, dt: f64) -> (f64, f64, f64) {
    let f = |r: f64, t: f64| objective(a, b, c, r.clamp(0.0, 1.0), t);
    let (mut r, mut t) = (r0, t0);
    let mut v = f(r, t);
    let (mut sr, mut st) = (dr, dt);
    for _ in 0..400 {
        if sr < 1e-13 && st < 1e-13 {
            break;
        }
        let moves = [(sr, 0.0), (-sr, 0.0), (0.0, st), (0.0, -st)];
        let mut improved = false;
        for (mr, mt) in moves {
            let nr = (r + mr).clamp(0.0, 1.0);
            let nv = f(nr, t + mt);
            if nv > v {
                v = nv;
                r = nr;
                t += mt;
                improved = true;
                break;
            }
        }
        if !improved {
            sr *= 0.5;
            st *= 0.5;
        }
    }
    (v, r, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn closed_form_examples() {
        let z = rat(0, 1);
        let r = ykc_closed_form(&z, &z, &z);
        assert_eq!(r.value, YkcValue::Exact(rat(1, 1)));
        let r = ykc_closed_form(&rat(1, 1), &rat(3, 1), &z);
        assert_eq!(r.value, YkcValue::Exact(rat(4, 1)));
        assert_eq!(r.branch, Some(YkcBranch::ILargeB));
        let r = ykc_closed_form(&rat(-1, 36), &rat(1, 6), &rat(-3, 2));
        assert_eq!(r.value, YkcValue::Exact(rat(61, 36)));
        assert_eq!(r.branch, Some(YkcBranch::ILargeB));
    }

    #[test]
    fn oracle_examples() {
        assert!((ykc_brute_force(0.0, 0.0, 0.0, 16, 32).value.to_f64() - 1.0).abs() < 1e-12);
        let r = ykc_brute_force(1.0, 0.0, 0.0, 16, 32);
        assert!((r.value.to_f64() - 2.0).abs() < 1e-12);
        let (x, y) = r.argmax_hint.unwrap();
        assert!(x.hypot(y) < 1e-9);
        assert!((ykc_brute_force(0.0, 0.0, 1.0, 16, 32).value.to_f64() - 1.0).abs() < 1e-12);
        let r = ykc_brute_force(1.0, 3.0, 0.0, 64, 128);
        assert!((r.value.to_f64() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn every_branch_is_reachable() {
        let cases = [
            (1.0, 3.0, 0.5, YkcBranch::ILargeB),
            (0.2, 0.1, 0.1, YkcBranch::ISmallB),
            (-0.1, -1.5, 0.2, YkcBranch::IiFirst),
            (2.0, 0.1, -0.5, YkcBranch::IiSecond),
            (-0.5, -2.5, 0.25, YkcBranch::R1),
            (-0.25, -1.5, 0.75, YkcBranch::R2),
            (2.0, 2.0, -3.0, YkcBranch::R3),
        ];
        for (a, b, c, want) in cases {
            let closed = ykc_closed_form_f64(a, b, c);
            assert_eq!(closed.branch, Some(want), "({a},{b},{c})");
            let oracle = ykc_brute_force(a, b, c, 128, 256).value.to_f64();
            assert!(
                (closed.value.to_f64() - oracle).abs() < 1e-7,
                "({a},{b},{c}) {want}: closed {} oracle {oracle}",
                closed.value.to_f64()
            );
        }
    }

    #[test]
    fn exact_square_root_branch() {
        // 1 − B²/(4AC) = 1 + (9/25)/(16/25) = 25/16.
        let r = ykc_closed_form(&rat(1, 5), &rat(3, 5), &rat(-4, 5));
        assert_eq!(r.branch, Some(YkcBranch::R3));
        assert_eq!(r.value, YkcValue::Exact(rat(5, 4)));
        let r = ykc_closed_form(&rat(2, 1), &rat(2, 1), &rat(-3, 1));
        assert!(matches!(r.value, YkcValue::Approx(_)));
    }

    #[test]
    fn exact_and_float_closed_forms_agree() {
        let r = ykc_closed_form(&rat(2, 1), &rat(2, 1), &rat(-3, 1));
        let f = ykc_closed_form_f64(2.0, 2.0, -3.0);
        assert_eq!(r.branch, f.branch);
        assert!((r.value.to_f64() - f.value.to_f64()).abs() < 1e-12);
    }
}
