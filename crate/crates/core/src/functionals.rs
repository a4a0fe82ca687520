//! Closed-form coefficient maps and the Hankel determinant functionals.
//!
//! Every formula is generic over [`Scalar`], so the same code runs exactly
//! over (Gaussian) rationals and approximately over `C64` in the searches.

use crate::error::{FunctionalError, SeriesError};
use crate::phi::build_f_from_schwarz;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;

/// `a2..a5` of `f(z) = z + a2 z² + a3 z³ + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector<T> {
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a5: T,
}

/// `p1..p4` of a Carathéodory function `p(z) = 1 + p1 z + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct CaratheodoryCoeffs<T> {
    pub p1: T,
    pub p2: T,
    pub p3: T,
    pub p4: T,
}

/// `c1..c4` of a Schwarz function `ω(z) = c1 z + c2 z² + ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzCoeffs<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
    pub c4: T,
}

fn c<T: Scalar>(n: i64) -> T {
    T::from_i64(n)
}

impl<T: Scalar> CoefficientVector<T> {
    pub fn to_vec(&self) -> Vec<T> {
        vec![self.a2.clone(), self.a3.clone(), self.a4.clone(), self.a5.clone()]
    }

    /// Reads `a2..a5` off a series of order at least 5.
    pub fn from_series(f: &TruncatedSeries<T>) -> Result<Self, SeriesError> {
        if f.order() < 5 {
            return Err(SeriesError::InsufficientOrder {
                have: f.order(),
                need: 5,
            });
        }
        let a = f.coeffs();
        Ok(Self {
            a2: a[2].clone(),
            a3: a[3].clone(),
            a4: a[4].clone(),
            a5: a[5].clone(),
        })
    }
}

impl<T: Scalar> CaratheodoryCoeffs<T> {
    pub fn new(p1: T, p2: T, p3: T, p4: T) -> Self {
        Self { p1, p2, p3, p4 }
    }

    /// Whether every `|pn| ≤ 2`.
    pub fn within_bounds(&self) -> bool {
        let four = c::<T>(4).re();
        [&self.p1, &self.p2, &self.p3, &self.p4]
            .iter()
            .all(|p| p.norm_sqr() <= four)
    }

    /// `p(z) = 1 + p1 z + ... + p4 z⁴` at order 4.
    pub fn series(&self) -> TruncatedSeries<T> {
        TruncatedSeries::padded(
            4,
            [
                T::one(),
                self.p1.clone(),
                self.p2.clone(),
                self.p3.clone(),
                self.p4.clone(),
            ],
        )
    }
}

impl<T: Scalar> SchwarzCoeffs<T> {
    pub fn new(c1: T, c2: T, c3: T, c4: T) -> Self {
        Self { c1, c2, c3, c4 }
    }

    /// Whether every `|cn| ≤ 1`.
    pub fn within_bounds(&self) -> bool {
        [&self.c1, &self.c2, &self.c3, &self.c4]
            .iter()
            .all(|x| x.norm_sqr() <= T::one().re())
    }

    /// `ω(z) = c1 z + ... + c4 z⁴` at order 4.
    pub fn series(&self) -> TruncatedSeries<T> {
        TruncatedSeries::padded(
            4,
            [
                T::zero(),
                self.c1.clone(),
                self.c2.clone(),
                self.c3.clone(),
                self.c4.clone(),
            ],
        )
    }

    /// Multiplies `cn` by `εⁿ`.
    pub fn rotate(&self, eps: &T) -> Self {
        let e2 = eps.clone() * eps.clone();
        let e3 = e2.clone() * eps.clone();
        let e4 = e3.clone() * eps.clone();
        Self {
            c1: eps.clone() * self.c1.clone(),
            c2: e2 * self.c2.clone(),
            c3: e3 * self.c3.clone(),
            c4: e4 * self.c4.clone(),
        }
    }
}

/// `a2..a5` in terms of the Carathéodory coefficients.
pub fn coeffs_from_caratheodory<T: Scalar>(p: &CaratheodoryCoeffs<T>) -> CoefficientVector<T> {
    let (p1, p2, p3, p4) = (&p.p1, &p.p2, &p.p3, &p.p4);
    let p1_2 = p1.clone() * p1.clone();
    let p1_3 = p1_2.clone() * p1.clone();
    let p1_4 = p1_3.clone() * p1.clone();
    CoefficientVector {
        a2: p1.clone() / c(4),
        a3: (p1_2.clone() + c::<T>(8) * p2.clone()) / c(96),
        a4: (-p1_3 + c::<T>(32) * p3.clone()) / c(768),
        a5: (c::<T>(11) * p1_4 - c::<T>(48) * p1_2 * p2.clone()
            - c::<T>(64) * p1.clone() * p3.clone()
            - c::<T>(96) * p2.clone() * p2.clone()
            + c::<T>(768) * p4.clone())
            / c(30720),
    }
}

/// `a2..a5` in terms of the Schwarz coefficients.
pub fn coeffs_from_schwarz<T: Scalar>(w: &SchwarzCoeffs<T>) -> CoefficientVector<T> {
    let (c1, c2, c3, c4) = (&w.c1, &w.c2, &w.c3, &w.c4);
    let c1_2 = c1.clone() * c1.clone();
    let c1_3 = c1_2.clone() * c1.clone();
    let c1_4 = c1_3.clone() * c1.clone();
    let inner = c::<T>(5) * c1_2.clone() + c::<T>(4) * c2.clone();
    CoefficientVector {
        a2: c1.clone() / c(2),
        a3: inner.clone() / c(24),
        a4: (c::<T>(-2) * c1_3 + c1.clone() * c2.clone()
            + T::from_ratio(3, 4) * c1.clone() * inner
            + c::<T>(2) * c3.clone())
            / c(24),
        a5: (c::<T>(43) * c1_4
            + c::<T>(184) * c1_2 * c2.clone()
            + c::<T>(72) * c2.clone() * c2.clone()
            + c::<T>(176) * c1.clone() * c3.clone()
            + c::<T>(96) * c4.clone())
            / c(1920),
    }
}

/// Coefficients of `ω = (p − 1)/(p + 1)` through `z⁴`.
pub fn caratheodory_to_schwarz<T: Scalar>(p: &CaratheodoryCoeffs<T>) -> SchwarzCoeffs<T> {
    let s = p.series();
    let one = TruncatedSeries::constant(T::one(), 4);
    let w = s
        .sub(&one)
        .divide(&s.add(&one))
        .expect("p + 1 has constant term 2");
    let k = w.coeffs();
    SchwarzCoeffs::new(k[1].clone(), k[2].clone(), k[3].clone(), k[4].clone())
}

/// Coefficients of `f` obtained by running the series pipeline on the
/// degree-4 Schwarz polynomial.
pub fn coeffs_via_series<T: Scalar>(w: &SchwarzCoeffs<T>) -> CoefficientVector<T> {
    let f = build_f_from_schwarz(&w.series(), 5).expect("ω(0) = 0 and order 4");
    CoefficientVector::from_series(&f).expect("order 5")
}

/// `H₂(2) = a2 a4 − a3²`.
pub fn hankel_h2<T: Scalar>(a: &CoefficientVector<T>) -> T {
    a.a2.clone() * a.a4.clone() - a.a3.clone() * a.a3.clone()
}

/// `H₃(1)` by its cofactor expansion
/// `a3(a2 a4 − a3²) − a4(a4 − a2 a3) + a5(a3 − a2²)`.
pub fn hankel_h3<T: Scalar>(a: &CoefficientVector<T>) -> T {
    let (a2, a3, a4, a5) = (&a.a2, &a.a3, &a.a4, &a.a5);
    a3.clone() * (a2.clone() * a4.clone() - a3.clone() * a3.clone())
        - a4.clone() * (a4.clone() - a2.clone() * a3.clone())
        + a5.clone() * (a3.clone() - a2.clone() * a2.clone())
}

/// `H_q(n)`: determinant of the `q×q` Hankel matrix `(a_{n+i+j})`.
/// `coeffs[k]` holds `a_{k+1}`, so `coeffs[0]` is `a1 = 1`.
pub fn hankel_generic<T: Scalar>(coeffs: &[T], q: usize, n: usize) -> Result<T, FunctionalError> {
    if q == 0 || n == 0 {
        return Err(FunctionalError::BadIndex);
    }
    let need = n + 2 * q - 2;
    if coeffs.len() < need {
        return Err(FunctionalError::InsufficientCoefficients {
            q,
            n,
            need,
            have: coeffs.len(),
        });
    }
    let m: Vec<Vec<T>> = (0..q)
        .map(|i| (0..q).map(|j| coeffs[n - 1 + i + j].clone()).collect())
        .collect();
    Ok(determinant(m))
}

/// Determinant by fraction-exact Gaussian elimination with first-nonzero
/// pivoting.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return T::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            for k in col..n {
                let v = m[col][k].clone();
                m[r][k] = m[r][k].clone() - factor.clone() * v;
            }
        }
    }
    det
}

/// `2304·H₂(2) = −p1⁴ − 4p1²p2 − 16p2² + 24p1p3`.
pub fn h2_normalized_from_p<T: Scalar>(p1: &T, p2: &T, p3: &T) -> T {
    let p1_2 = p1.clone() * p1.clone();
    -(p1_2.clone() * p1_2.clone()) - c::<T>(4) * p1_2 * p2.clone()
        - c::<T>(16) * p2.clone() * p2.clone()
        + c::<T>(24) * p1.clone() * p3.clone()
}

/// `69120·H₃(1)` as a sextic in the Schwarz coefficients.
pub fn h3_normalized_from_c<T: Scalar>(w: &SchwarzCoeffs<T>) -> T {
    let (c1, c2, c3, c4) = (&w.c1, &w.c2, &w.c3, &w.c4);
    let c1_2 = c1.clone() * c1.clone();
    let c1_3 = c1_2.clone() * c1.clone();
    let c1_4 = c1_3.clone() * c1.clone();
    let c1_6 = c1_4.clone() * c1_2.clone();
    let c2_2 = c2.clone() * c2.clone();
    c::<T>(-7) * c1_6 + c::<T>(42) * c1_4 * c2.clone()
        + c::<T>(96) * c1_3 * c3.clone()
        + c::<T>(96) * c1.clone() * c2.clone() * c3.clone()
        - c::<T>(12) * c1_2 * (c::<T>(17) * c2_2.clone() + c::<T>(12) * c4.clone())
        + c::<T>(16)
            * (c::<T>(7) * c2_2.clone() * c2.clone() - c::<T>(30) * c3.clone() * c3.clone()
                + c::<T>(36) * c2.clone() * c4.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn r(n: i64, d: i64) -> Rat {
        rat(n, d)
    }

    fn cv(v: [(i64, i64); 4]) -> CoefficientVector<Rat> {
        CoefficientVector {
            a2: r(v[0].0, v[0].1),
            a3: r(v[1].0, v[1].1),
            a4: r(v[2].0, v[2].1),
            a5: r(v[3].0, v[3].1),
        }
    }

    fn pi(a: i64, b: i64, c_: i64, d: i64) -> CaratheodoryCoeffs<Rat> {
        CaratheodoryCoeffs::new(r(a, 1), r(b, 1), r(c_, 1), r(d, 1))
    }

    fn ci(a: i64, b: i64, c_: i64, d: i64) -> SchwarzCoeffs<Rat> {
        SchwarzCoeffs::new(r(a, 1), r(b, 1), r(c_, 1), r(d, 1))
    }

    #[test]
    fn caratheodory_map_examples() {
        assert_eq!(
            coeffs_from_caratheodory(&pi(2, 2, 2, 2)),
            cv([(1, 2), (5, 24), (7, 96), (43, 1920)])
        );
        assert_eq!(coeffs_from_caratheodory(&pi(0, 0, 0, 0)), cv([(0, 1); 4]));
        assert_eq!(
            coeffs_from_caratheodory(&pi(0, 2, 0, 2)),
            cv([(0, 1), (1, 6), (0, 1), (3, 80)])
        );
    }

    #[test]
    fn schwarz_map_examples() {
        assert_eq!(
            coeffs_from_schwarz(&ci(1, 0, 0, 0)),
            cv([(1, 2), (5, 24), (7, 96), (43, 1920)])
        );
        assert_eq!(
            coeffs_from_schwarz(&ci(0, 1, 0, 0)),
            cv([(0, 1), (1, 6), (0, 1), (3, 80)])
        );
        assert_eq!(
            coeffs_from_schwarz(&ci(0, 0, 1, 0)),
            cv([(0, 1), (0, 1), (1, 12), (0, 1)])
        );
    }

    #[test]
    fn caratheodory_to_schwarz_examples() {
        assert_eq!(caratheodory_to_schwarz(&pi(2, 2, 2, 2)), ci(1, 0, 0, 0));
        assert_eq!(caratheodory_to_schwarz(&pi(0, 0, 0, 0)), ci(0, 0, 0, 0));
        assert_eq!(caratheodory_to_schwarz(&pi(0, 2, 0, 2)), ci(0, 1, 0, 0));
    }

    #[test]
    fn h2_examples() {
        assert_eq!(hankel_h2(&cv([(0, 1), (1, 6), (0, 1), (0, 1)])), r(-1, 36));
        assert_eq!(
            hankel_h2(&cv([(1, 2), (5, 24), (7, 96), (0, 1)])),
            r(-1, 144)
        );
        assert_eq!(hankel_h2(&cv([(0, 1); 4])), r(0, 1));
    }

    #[test]
    fn h3_examples() {
        assert_eq!(
            hankel_h3(&cv([(0, 1), (0, 1), (1, 12), (0, 1)])),
            r(-1, 144)
        );
        assert_eq!(
            hankel_h3(&cv([(1, 2), (5, 24), (7, 96), (43, 1920)])),
            r(-7, 69120)
        );
        assert_eq!(hankel_h3(&cv([(0, 1); 4])), r(0, 1));
    }

    #[test]
    fn generic_hankel_examples() {
        let one = r(1, 1);
        assert_eq!(hankel_generic(std::slice::from_ref(&one), 1, 1).unwrap(), one);
        let a = vec![one.clone(), r(1, 2), r(5, 24), r(7, 96), r(43, 1920)];
        assert_eq!(hankel_generic(&a, 2, 2).unwrap(), r(-1, 144));
        let b = vec![one.clone(), r(0, 1), r(0, 1), r(1, 12), r(0, 1)];
        assert_eq!(hankel_generic(&b, 3, 1).unwrap(), r(-1, 144));
        assert!(matches!(
            hankel_generic(&b[..4], 3, 1),
            Err(FunctionalError::InsufficientCoefficients { need: 5, have: 4, .. })
        ));
        assert_eq!(hankel_generic(&b, 0, 1), Err(FunctionalError::BadIndex));
    }

    #[test]
    fn normalized_polynomial_examples() {
        assert_eq!(h2_normalized_from_p(&r(2, 1), &r(2, 1), &r(2, 1)), r(-16, 1));
        assert_eq!(h2_normalized_from_p(&r(0, 1), &r(2, 1), &r(5, 1)), r(-64, 1));
        assert_eq!(h2_normalized_from_p(&r(0, 1), &r(0, 1), &r(0, 1)), r(0, 1));
        assert_eq!(h3_normalized_from_c(&ci(0, 0, 1, 0)), r(-480, 1));
        assert_eq!(h3_normalized_from_c(&ci(1, 0, 0, 0)), r(-7, 1));
        assert_eq!(h3_normalized_from_c(&ci(0, 0, 0, 0)), r(0, 1));
        assert_eq!(r(480, 69120), r(1, 144));
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]];
        assert_eq!(determinant(m), r(-1, 1));
        let singular = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert_eq!(determinant(singular), r(0, 1));
    }
}
