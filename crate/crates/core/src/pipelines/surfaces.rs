//! The majorants `H`, `H₁` of `69120·|H₃(1)|` over the cuboid and their
//! faces `G₁ = H₁(·,·,1)`, `G₂ = H₁(·,·,0)`, built from their closed
//! forms and cross-checked against independent expansions.

use serde_json::{json, Value};

use crate::bernstein::BivariatePoly;
use crate::error::PipelineError;
use crate::scalar::Rat;

/// `y0(p, x) + y1(p, x)·y + y2(p, x)·y²`.
#[derive(Clone, Debug, PartialEq)]
pub struct YQuadratic {
    pub y0: BivariatePoly,
    pub y1: BivariatePoly,
    pub y2: BivariatePoly,
}

impl YQuadratic {
    pub fn eval(&self, p: &Rat, x: &Rat, y: &Rat) -> Rat {
        self.y0.eval(p, x) + (self.y1.eval(p, x) + self.y2.eval(p, x) * y) * y
    }

    pub fn at_y(&self, y: &Rat) -> BivariatePoly {
        self.y0
            .add(&self.y1.scale(y))
            .add(&self.y2.scale(&(y * y)))
            .trimmed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "y0": self.y0.to_json(),
            "y1": self.y1.to_json(),
            "y2": self.y2.to_json(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct H3Surfaces {
    /// Triangle-inequality majorant `H(p1, x, y)` with `x = |γ|`, `y = |η|`.
    pub h: YQuadratic,
    /// `H` with its linear-in-`y` term frozen at `y = 1`.
    pub h1: YQuadratic,
    pub g1: BivariatePoly,
    pub g2: BivariatePoly,
    /// `480 − G₁`.
    pub f: BivariatePoly,
}

fn k(c: i64) -> BivariatePoly {
    BivariatePoly::from_int(c)
}

/// Builds a polynomial from columns: `cols[j][i]` is the coefficient of
/// `p^i x^j`.
fn from_x_columns(cols: &[[i64; 7]]) -> BivariatePoly {
    BivariatePoly::from_terms(
        6,
        cols.len() - 1,
        cols.iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().enumerate().map(move |(i, &c)| (i, j, crate::scalar::rat(c, 1)))),
    )
}

/// The reference power-basis expansion of `G₂`.
fn reference_g2() -> BivariatePoly {
    from_x_columns(&[
        [0, 0, 144, 96, -144, -96, 7],
        [576, 96, -1152, 96, 618, -192, -42],
        [0, 192, 60, -480, -168, 288, 108],
        [-464, -96, 1360, -96, -832, 192, -64],
        [0, -192, 96, 384, -192, -192, 96],
    ])
}

/// The reference power-basis expansion of `F = 480 − G₁`.
fn reference_f() -> BivariatePoly {
    from_x_columns(&[
        [0, 0, 960, -96, -480, 96, -7],
        [0, -96, -144, -96, 102, 192, 42],
        [384, -192, -972, 480, 696, -288, -108],
        [-112, 96, -64, 96, 112, -192, 64],
        [96, 192, -288, -384, 288, 192, -96],
    ])
}

/// The factored form of `G₁`, term by term.
fn reference_g1() -> BivariatePoly {
    let p = BivariatePoly::p();
    let x = BivariatePoly::x();
    let p2 = p.pow(2);
    let q = k(1).sub(&p2);
    let one_x2 = k(1).sub(&x.pow(2));
    let t1 = k(7).mul(&p.pow(6));
    let t2 = k(42).mul(&p.pow(4)).mul(&q).mul(&x);
    let t3 = k(12)
        .mul(&p2)
        .mul(&k(17).sub(&k(26).mul(&p2)).add(&k(9).mul(&p.pow(4))))
        .mul(&x.pow(2));
    let t4 = k(16)
        .mul(&k(7).mul(&q).add(&k(20).mul(&p2).mul(&q)).add(&k(4).mul(&p.pow(4)).mul(&q)))
        .mul(&x.pow(3));
    let t5 = k(96).mul(&p2).mul(&p2.sub(&k(1)).pow(2)).mul(&x.pow(4));
    let t6 = k(96).mul(&p).mul(&q).mul(&one_x2).mul(
        &p2.add(&x)
            .add(&k(2).mul(&p2).mul(&x))
            .add(&k(2).mul(&q).mul(&x.pow(2))),
    );
    let t7 = k(48).mul(&q).mul(&one_x2).mul(
        &k(3)
            .mul(&x)
            .mul(&p2.add(&k(4).mul(&q).mul(&x)))
            .add(&k(10).mul(&q).mul(&one_x2)),
    );
    [t2, t3, t4, t5, t6, t7].iter().fold(t1, |acc, t| acc.add(t)).trimmed()
}

/// Assembles `H` and `H₁` from the quadratic-in-`y` form and
/// checks the reference `G₁`, `G₂` and `F` against them.
pub fn h3_surfaces() -> Result<H3Surfaces, PipelineError> {
    let p = BivariatePoly::p();
    let x = BivariatePoly::x();
    let p2 = p.pow(2);
    let q = k(1).sub(&p2);
    let one_x2 = k(1).sub(&x.pow(2));

    let base = k(7)
        .mul(&p.pow(6))
        .add(&x.mul(&k(42).mul(&p.pow(4)).mul(&q)))
        .add(&x.pow(2).mul(&k(12).mul(&p2).mul(&k(17).sub(&k(26).mul(&p2)).add(&k(9).mul(&p.pow(4))))))
        .add(&x.pow(3).mul(&k(16).mul(
            &k(7).mul(&q).add(&k(20).mul(&p2).mul(&q)).add(&k(4).mul(&p.pow(4)).mul(&q)),
        )))
        .add(&x.pow(4).mul(&k(96).mul(&p2).mul(&k(-1).add(&p2).pow(2))));
    let linear_y = k(96).mul(&one_x2).mul(&p).mul(&q).mul(
        &x.add(&p2)
            .add(&k(2).mul(&x).mul(&p2))
            .add(&k(2).mul(&x.pow(2)).mul(&q)),
    );
    let quadratic_y = k(48).mul(&one_x2).mul(&q).mul(
        &k(10)
            .mul(&one_x2)
            .mul(&q)
            .add(&k(3).mul(&p2.add(&k(4).mul(&x).mul(&q))).mul(&x)),
    );
    // 144(1−x²)(1−y²)(1−p²)(p² + 4x(1−p²)), split over y⁰ and y².
    let rho_term = k(144).mul(&one_x2).mul(&q).mul(&p2.add(&k(4).mul(&x).mul(&q)));

    let h = YQuadratic {
        y0: base.add(&rho_term).trimmed(),
        y1: linear_y.trimmed(),
        y2: quadratic_y.sub(&rho_term).trimmed(),
    };
    let h1 = YQuadratic {
        y0: base.add(&linear_y).add(&rho_term).trimmed(),
        y1: BivariatePoly::zero(0, 0),
        y2: h.y2.clone(),
    };
    let g1 = h1.at_y(&Rat::from_integer(1.into()));
    let g2 = h1.at_y(&Rat::from_integer(0.into()));
    let f = k(480).sub(&g1).trimmed();

    let mismatch = |what: &str| Err(PipelineError::Inconsistent(format!("{what} does not match its reference form")));
    if reference_g1() != g1 {
        return mismatch("H₁(·,·,1)");
    }
    if reference_g2() != g2 {
        return mismatch("H₁(·,·,0)");
    }
    if reference_f() != f {
        return mismatch("480 − G₁");
    }
    Ok(H3Surfaces { h, h1, g1, g2, f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn surfaces_are_consistent() {
        let s = h3_surfaces().unwrap();
        assert_eq!(s.h.eval(&rat(0, 1), &rat(0, 1), &rat(0, 1)), rat(0, 1));
        assert_eq!(s.g1.eval(&rat(0, 1), &rat(0, 1)), rat(480, 1));
        // Constant-in-x row of G₂: 7p⁶ − 96p⁵ − 144p⁴ + 96p³ + 144p².
        for (i, c) in [(2, 144), (3, 96), (4, -144), (5, -96), (6, 7)] {
            assert_eq!(s.g2.coeff(i, 0), rat(c, 1));
        }
        assert_eq!(s.f.coeff(2, 0), rat(960, 1));
        assert_eq!(s.f.coeff(1, 1), rat(-96, 1));
        assert_eq!(s.f.coeff(0, 2), rat(384, 1));
        assert_eq!(s.g1.degree(), (6, 4));
        assert_eq!(s.g2.degree(), (6, 4));
    }

    #[test]
    fn h1_dominates_h_where_linear_coefficient_is_nonnegative() {
        let s = h3_surfaces().unwrap();
        for (p, x, y) in [(1, 3, 2), (5, 1, 9), (7, 7, 0), (2, 9, 5)] {
            let (p, x, y) = (rat(p, 10), rat(x, 10), rat(y, 10));
            assert!(s.h.eval(&p, &x, &y) <= s.h1.eval(&p, &x, &y));
        }
    }
}
