//! Truncated formal power series with exact coefficients.
//!
//! A series of order `N` knows the coefficients of `z^0..=z^N` and nothing
//! beyond. Binary operations keep the smaller order so that no result ever
//! claims a coefficient its inputs did not determine.

use std::fmt;

use num_traits::Zero;

use crate::error::SeriesError;
use crate::scalar::{fmt_gauss, GaussRat, Rat, Scalar};

/// Working order used by the pipelines unless a caller asks for more.
pub const DEFAULT_ORDER: usize = 9;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

pub type RatSeries = TruncatedSeries<Rat>;
pub type GaussSeries = TruncatedSeries<GaussRat>;

impl<T: Scalar> TruncatedSeries<T> {
    pub fn from_coeffs(order: usize, coeffs: Vec<T>) -> Result<Self, SeriesError> {
        if coeffs.len() != order + 1 {
            return Err(SeriesError::LengthMismatch {
                len: coeffs.len(),
                expected: order + 1,
            });
        }
        Ok(Self { coeffs })
    }

    /// Builds a series of the given order from leading coefficients,
    /// padding the rest with zeros. Extra coefficients are dropped.
    pub fn padded(order: usize, leading: impl IntoIterator<Item = T>) -> Self {
        let mut coeffs: Vec<T> = leading.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, T::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::padded(order, [])
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::padded(order, [c])
    }

    /// `z` at the given order (`order >= 1` for the coefficient to be kept).
    pub fn identity(order: usize) -> Self {
        Self::monomial(T::one(), 1, order)
    }

    pub fn monomial(c: T, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Lowest power with a nonzero coefficient, `None` if all known
    /// coefficients vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, a: &T) -> Self {
        self.map(|c| a.clone() * c.clone())
    }

    /// `a·s + b·t`, truncated at the smaller order.
    pub fn linear_combine(a: &T, s: &Self, b: &T, t: &Self) -> Self {
        let n = s.order().min(t.order());
        let coeffs = (0..=n)
            .map(|k| a.clone() * s.coeffs[k].clone() + b.clone() * t.coeffs[k].clone())
            .collect();
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::linear_combine(&T::one(), self, &T::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::linear_combine(&T::one(), self, &-T::one(), other)
    }

    /// Cauchy product truncated at the smaller order.
    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs }
    }

    /// `outer ∘ inner` by Horner's rule.
    ///
    /// With `v` the valuation of `inner` and `N` the order of `outer`, the
    /// first unknown term of `outer` contributes at `z^((N+1)v)`, so the
    /// result order is `min(order(inner), (N+1)v - 1)`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionConstantTerm);
        }
        let v = inner.valuation().unwrap_or(inner.order() + 1);
        let order = inner.order().min((outer.order() + 1) * v - 1);
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in outer.coeffs.iter().rev() {
            acc = acc.multiply(&inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// `exp(s)` for `s(0) = 0`, from `(exp s)' = s'·exp s`, i.e.
    /// `n·e_n = Σ_{k=1..n} k·s_k·e_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstantTerm("series exponential"));
        }
        let n = self.order();
        let mut e = vec![T::zero(); n + 1];
        e[0] = T::one();
        for m in 1..=n {
            let mut acc = T::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc + T::from_i64(k as i64) * self.coeffs[k].clone() * e[m - k].clone();
            }
            e[m] = acc / T::from_i64(m as i64);
        }
        Ok(Self { coeffs: e })
    }

    /// Antiderivative vanishing at zero; the order grows by one.
    pub fn integrate_from_zero(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_i64(k as i64 + 1));
        }
        Self { coeffs }
    }

    /// Formal derivative; the order drops by one (order 0 gives the zero
    /// series of order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| T::from_i64(k as i64) * c.clone())
            .collect();
        Self { coeffs }
    }

    /// Quotient `q` with `q·t = s`, truncated at the smaller order.
    pub fn divide(&self, t: &Self) -> Result<Self, SeriesError> {
        if t.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let n = self.order().min(t.order());
        let inv0 = T::one() / t.coeffs[0].clone();
        let mut q: Vec<T> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                if t.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc - t.coeffs[k].clone() * q[m - k].clone();
            }
            q.push(acc * inv0.clone());
        }
        Ok(Self { coeffs: q })
    }

    /// `s(z)/z` for `s(0) = 0`; the order drops by one.
    pub fn divide_by_z(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonZeroConstantTerm("division by z"));
        }
        if self.order() == 0 {
            return Err(SeriesError::InsufficientOrder { have: 0, need: 1 });
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `z·s(z)`; the order grows by one.
    pub fn multiply_by_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }
}

impl fmt::Display for GaussSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(fmt_gauss), self.order())
    }
}

impl fmt::Display for RatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(crate::scalar::fmt_rat), self.order())
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl Iterator<Item = String>,
    order: usize,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.enumerate() {
        if c == "0" {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        let c = if c.contains(' ') { format!("({c})") } else { c };
        match k {
            0 => write!(f, "{c}")?,
            1 if c == "1" => f.write_str("z")?,
            1 => write!(f, "{c}·z")?,
            _ if c == "1" => write!(f, "z^{k}")?,
            _ => write!(f, "{c}·z^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    write!(f, " + O(z^{})", order + 1)
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn s(order: usize, c: &[(i64, i64)]) -> RatSeries {
        RatSeries::padded(order, c.iter().map(|&(n, d)| rat(n, d)))
    }

    #[test]
    fn linear_combine_examples() {
        let one = rat(1, 1);
        let z = s(2, &[(0, 1), (1, 1)]);
        let z2 = s(2, &[(0, 1), (0, 1), (1, 1)]);
        assert_eq!(
            RatSeries::linear_combine(&one, &z, &one, &z2),
            s(2, &[(0, 1), (1, 1), (1, 1)])
        );
        let a = s(2, &[(1, 1), (1, 1)]);
        let b = s(2, &[(1, 1)]);
        assert_eq!(
            RatSeries::linear_combine(&rat(2, 1), &a, &rat(-2, 1), &b),
            s(2, &[(0, 1), (2, 1)])
        );
        let phi = s(4, &[(1, 1), (1, 1), (1, 4)]);
        assert_eq!(
            RatSeries::linear_combine(&one, &phi, &-one.clone(), &s(4, &[(1, 1)])),
            s(4, &[(0, 1), (1, 1), (1, 4)])
        );
    }

    #[test]
    fn order_is_min_of_operands() {
        let a = RatSeries::identity(5);
        let b = RatSeries::identity(3);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.multiply(&b).order(), 3);
        assert_eq!(a.divide(&s(2, &[(1, 1)])).unwrap().order(), 2);
    }

    #[test]
    fn multiply_examples() {
        let half = s(2, &[(1, 1), (1, 2)]);
        assert_eq!(half.multiply(&half), s(2, &[(1, 1), (1, 1), (1, 4)]));
        let x = s(4, &[(3, 1), (0, 1), (-2, 7)]);
        assert_eq!(x.multiply(&RatSeries::constant(rat(1, 1), 4)), x);
        let p = s(2, &[(1, 1), (1, 1)]);
        let m = s(2, &[(1, 1), (-1, 1)]);
        assert_eq!(p.multiply(&m), s(2, &[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn compose_examples() {
        let phi = s(8, &[(1, 1), (1, 1), (1, 4)]);
        let z2 = RatSeries::monomial(rat(1, 1), 2, 8);
        assert_eq!(
            RatSeries::compose(&phi, &z2).unwrap(),
            s(8, &[(1, 1), (0, 1), (1, 1), (0, 1), (1, 4)])
        );
        let z3 = RatSeries::monomial(rat(1, 1), 3, 8);
        assert_eq!(
            RatSeries::compose(&phi, &z3).unwrap(),
            s(8, &[(1, 1), (0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (1, 4)])
        );
        let outer = s(5, &[(2, 1), (-1, 3), (0, 1), (5, 7)]);
        assert_eq!(
            RatSeries::compose(&outer, &RatSeries::identity(5)).unwrap(),
            outer
        );
        assert_eq!(
            RatSeries::compose(&outer, &s(5, &[(1, 1), (1, 1)])),
            Err(SeriesError::CompositionConstantTerm)
        );
    }

    #[test]
    fn compose_never_claims_unknown_terms() {
        // outer known through u^2, inner = z: z^3 of the result is unknown.
        let outer = s(2, &[(1, 1), (1, 1), (1, 1)]);
        let r = RatSeries::compose(&outer, &RatSeries::identity(6)).unwrap();
        assert_eq!(r.order(), 2);
        // inner = z^2: the u^3 term starts at z^6.
        let r = RatSeries::compose(&outer, &RatSeries::monomial(rat(1, 1), 2, 9)).unwrap();
        assert_eq!(r.order(), 5);
    }

    #[test]
    fn exp_examples() {
        let z = RatSeries::identity(3);
        assert_eq!(z.exp().unwrap(), s(3, &[(1, 1), (1, 1), (1, 2), (1, 6)]));
        let u = s(4, &[(0, 1), (1, 1), (1, 8)]);
        assert_eq!(
            u.exp().unwrap(),
            s(4, &[(1, 1), (1, 1), (5, 8), (7, 24), (43, 384)])
        );
        assert!(RatSeries::zero(5).exp().unwrap().is_one());
        assert!(s(2, &[(1, 1)]).exp().is_err());
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(s(0, &[(1, 1)]).integrate_from_zero(), s(1, &[(0, 1), (1, 1)]));
        assert_eq!(
            s(2, &[(0, 1), (1, 1), (1, 4)]).integrate_from_zero(),
            s(3, &[(0, 1), (0, 1), (1, 2), (1, 12)])
        );
        assert_eq!(
            s(4, &[(0, 1), (0, 1), (1, 2), (0, 1), (1, 16)]).integrate_from_zero(),
            s(5, &[(0, 1), (0, 1), (0, 1), (1, 6), (0, 1), (1, 80)])
        );
    }

    #[test]
    fn divide_examples() {
        let num = s(2, &[(0, 1), (2, 1)]);
        let den = s(2, &[(2, 1), (2, 1)]);
        assert_eq!(num.divide(&den).unwrap(), s(2, &[(0, 1), (1, 1), (-1, 1)]));
        let x = s(3, &[(1, 3), (4, 1)]);
        assert_eq!(x.divide(&RatSeries::constant(rat(1, 1), 3)).unwrap(), x);
        let p = s(3, &[(1, 1), (2, 1), (2, 1), (2, 1)]);
        let one = RatSeries::constant(rat(1, 1), 3);
        let w = p.sub(&one).divide(&p.add(&one)).unwrap();
        assert_eq!(w, RatSeries::identity(3));
        assert_eq!(
            num.divide(&RatSeries::identity(2)),
            Err(SeriesError::DivisionByNonUnit)
        );
    }

    #[test]
    fn divide_by_z_examples() {
        assert_eq!(RatSeries::identity(1).divide_by_z().unwrap(), s(0, &[(1, 1)]));
        assert_eq!(
            s(4, &[(0, 1), (0, 1), (1, 1), (0, 1), (1, 4)]).divide_by_z().unwrap(),
            s(3, &[(0, 1), (1, 1), (0, 1), (1, 4)])
        );
        assert_eq!(
            s(3, &[(0, 1), (0, 1), (0, 1), (1, 3)]).divide_by_z().unwrap(),
            s(2, &[(0, 1), (0, 1), (1, 3)])
        );
        assert!(s(3, &[(1, 1)]).divide_by_z().is_err());
    }

    #[test]
    fn display() {
        let x = s(3, &[(0, 1), (1, 1), (0, 1), (-1, 6)]);
        assert_eq!(x.to_string(), "z + -1/6·z^3 + O(z^4)");
        assert_eq!(RatSeries::zero(2).to_string(), "0 + O(z^3)");
    }

    #[test]
    fn length_must_match_order() {
        assert!(RatSeries::from_coeffs(2, vec![rat(1, 1)]).is_err());
        assert!(RatSeries::from_coeffs(0, vec![rat(1, 1)]).is_ok());
    }
}
