use std::time::Instant;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::surfaces::{h3_surfaces, H3Surfaces};
use super::{run_search, search_subcheck, SubCheck, TheoremReport, Witness};
use crate::bernstein::{
    bernstein_patch, bernstein_range, certify_upper_bound, corner_certificate, CertifyOptions,
    Rectangle, Strategy,
};
use crate::functionals::{coeffs_from_schwarz, h3_normalized_from_c, hankel_h3, CoefficientVector};
use crate::json::rat_to_json;
use crate::params::{ps_expand, ps_expand_unchecked, sample_at, AnglePolicy, CuboidSample, PSParams, SampleMode};
use crate::phi::{build_f_from_schwarz, power_schwarz};
use crate::scalar::{fmt_rat, rat, GaussRat, Rat, Scalar, C64};

/// Largest Bernstein coefficients of `G₁` on the quadrants of `[0,1]²`, in
/// the order lower-left, upper-left, lower-right, upper-right.
pub const G1_LEVEL1_MAX: [(i64, i64); 4] = [(481, 1), (398, 1), (75535, 256), (18463, 64)];
/// The same on the quadrants of `[0,1/2]²`.
pub const G1_LEVEL2_MAX: [(i64, i64); 4] =
    [(1921, 4), (14681, 32), (13939571, 32768), (13594541, 32768)];
/// Largest Bernstein coefficient of `G₂` on `[0,1]²`.
pub const G2_MAX: (i64, i64) = (1022, 3);
/// Absolute coefficient sums of `480 − G₁` by total degree 3..=10.
pub const CORNER_DEGREE_SUMS: [i64; 8] = [544, 1740, 934, 1279, 826, 588, 256, 96];
pub const CORNER_TAIL: (i64, i64) = (543349, 2048);
pub const CORNER_MARGIN: (i64, i64) = (144779, 2048);

#[derive(Clone, Debug, PartialEq)]
pub struct H3Config {
    pub seed: u64,
    pub exact_samples: usize,
    pub search_samples: usize,
    /// Grid steps `(p1, x, y)` for the `H ≤ H₁` check.
    pub cuboid_grid: (usize, usize, usize),
    /// Steps per side of the grid for the linear-in-`y` coefficient.
    pub y_coefficient_grid: usize,
    pub strategy: Strategy,
    pub max_depth: usize,
}

impl Default for H3Config {
    fn default() -> Self {
        Self {
            seed: 0,
            exact_samples: 500,
            search_samples: 100_000,
            cuboid_grid: (101, 101, 11),
            y_coefficient_grid: 201,
            strategy: Strategy::PaperQuadrants,
            max_depth: 12,
        }
    }
}

/// `69120·H₃(1) = A₁ + B₁η + C₁η² + D₁ρ`.
#[derive(Clone, Debug, PartialEq)]
pub struct H3Decomposition {
    pub a1: GaussRat,
    pub b1: GaussRat,
    pub c1: GaussRat,
    pub d1: GaussRat,
}

/// The four coefficients in closed form, for real `c1`.
pub fn decomposition(params: &PSParams<GaussRat>) -> H3Decomposition {
    let n = |v: i64| GaussRat::from_i64(v);
    let c = &params.c1;
    let g = &params.gamma;
    let gbar = g.conj();
    let c2 = c * c;
    let c4 = &c2 * &c2;
    let c6 = &c4 * &c2;
    let g2 = g * g;
    let g3 = &g2 * g;
    let g4 = &g2 * &g2;
    let m = &c2 - n(1); // −1 + c1²
    let gabs = GaussRat::from_real(g.norm_sqr());
    let eabs = GaussRat::from_real(params.eta.norm_sqr());
    let a1 = -(n(7) * &c6) - n(42) * g * &c4 * &m + n(96) * &g4 * &c2 * &m * &m
        - n(12) * &g2 * &c2 * (n(17) - n(26) * &c2 + n(9) * &c4)
        - n(16) * &g3 * (n(-7) + n(27) * &c2 - n(24) * &c4 + n(4) * &c6);
    let b1 = n(96) * (&gabs - n(1)) * c * &m * (g + &c2 + n(2) * g * &c2 + n(2) * &g2 * &m);
    let c1 = n(-48)
        * (&gabs - n(1))
        * &m
        * (n(-10) * &m + n(10) * &gabs * &m - n(3) * (&c2 + n(4) * g * &m) * &gbar);
    let d1 = n(144) * (&gabs - n(1)) * (&eabs - n(1)) * &m * (&c2 + n(4) * g * &m);
    H3Decomposition { a1, b1, c1, d1 }
}

pub fn decomposition_value(params: &PSParams<GaussRat>) -> GaussRat {
    let d = decomposition(params);
    let eta = &params.eta;
    d.a1 + d.b1 * eta + d.c1 * eta * eta + d.d1 * &params.rho
}

fn grid_points(steps: usize) -> Vec<Rat> {
    let den = steps.max(2) as i64 - 1;
    (0..=den).map(|k| rat(k, den)).collect()
}

/// Sub-checks (a) and (b) share their samples.
fn check_samples(cfg: &H3Config, surfaces: &H3Surfaces) -> (SubCheck, SubCheck) {
    let scale = GaussRat::from_i64(69120);
    let mut identity_fail = Vec::new();
    let mut dominance_fail = Vec::new();
    let mut tightest: Option<Rat> = None;
    for index in 0..cfg.exact_samples {
        let s = sample_at(cfg.seed, index, SampleMode::Ps, AnglePolicy::Exact);
        let params = s.ps_exact().expect("exact angle policy");
        let w = ps_expand(&params).expect("sampler stays in range");
        let sextic = h3_normalized_from_c(&w);
        let via_det = hankel_h3(&coeffs_from_schwarz(&w)) * scale.clone();
        let decomposed = decomposition_value(&params);
        if sextic != decomposed || via_det != decomposed {
            identity_fail.push(s.to_json());
        }
        // Phases come from a table of unit Gaussian rationals, so |γ| and
        // |η| are the stored rational moduli.
        let [lead, x, y, _] = s.moduli();
        let h = surfaces.h.eval(&lead, &x, &y);
        let lhs = sextic.norm_sqr();
        let ok = !h.is_negative() && lhs <= &h * &h;
        if !ok {
            dominance_fail.push(s.to_json());
        }
        if h.is_positive() {
            let ratio = &lhs / (&h * &h);
            if tightest.as_ref().is_none_or(|t| &ratio > t) {
                tightest = Some(ratio);
            }
        }
    }
    let n = cfg.exact_samples;
    (
        SubCheck {
            id: "a",
            name: "69120·H₃ = A₁ + B₁η + C₁η² + D₁ρ on exact samples",
            passed: identity_fail.is_empty() && n > 0,
            detail: json!({
                "samples": n,
                "mismatches": identity_fail.len(),
                "first_mismatches": identity_fail.into_iter().take(5).collect::<Vec<_>>(),
            }),
        },
        SubCheck {
            id: "b",
            name: "69120·|H₃| ≤ H(c1, |γ|, |η|) on the same samples",
            passed: dominance_fail.is_empty() && n > 0,
            detail: json!({
                "samples": n,
                "violations": dominance_fail.len(),
                "first_violations": dominance_fail.into_iter().take(5).collect::<Vec<_>>(),
                "max_ratio_squared": tightest.as_ref().map(fmt_rat),
            }),
        },
    )
}

fn check_y_coefficient(cfg: &H3Config, surfaces: &H3Surfaces) -> SubCheck {
    let pts = grid_points(cfg.y_coefficient_grid);
    let mut negative = Vec::new();
    let mut min: Option<Rat> = None;
    for p in &pts {
        for x in &pts {
            let v = surfaces.h.y1.eval(p, x);
            if v.is_negative() {
                negative.push(json!([fmt_rat(p), fmt_rat(x), fmt_rat(&v)]));
            }
            if min.as_ref().is_none_or(|m| &v < m) {
                min = Some(v);
            }
        }
    }
    SubCheck {
        id: "c",
        name: "coefficient of y in H is non-negative on the grid",
        passed: negative.is_empty(),
        detail: json!({
            "grid": [pts.len(), pts.len()],
            "negative_points": negative.len(),
            "first_negative": negative.into_iter().take(5).collect::<Vec<_>>(),
            "min_value": min.as_ref().map(fmt_rat),
        }),
    }
}

fn check_h_below_h1(cfg: &H3Config, surfaces: &H3Surfaces) -> SubCheck {
    let (np, nx, ny) = cfg.cuboid_grid;
    let (ps, xs, ys) = (grid_points(np), grid_points(nx), grid_points(ny));
    let mut violations = Vec::new();
    let mut max_h1: Option<Rat> = None;
    for p in &ps {
        for x in &xs {
            let h = [&surfaces.h.y0, &surfaces.h.y1, &surfaces.h.y2].map(|q| q.eval(p, x));
            let h1 = [&surfaces.h1.y0, &surfaces.h1.y1, &surfaces.h1.y2].map(|q| q.eval(p, x));
            for y in &ys {
                let hv = &h[0] + (&h[1] + &h[2] * y) * y;
                let h1v = &h1[0] + (&h1[1] + &h1[2] * y) * y;
                if hv > h1v {
                    violations.push(json!([fmt_rat(p), fmt_rat(x), fmt_rat(y)]));
                }
                if max_h1.as_ref().is_none_or(|m| &h1v > m) {
                    max_h1 = Some(h1v);
                }
            }
        }
    }
    SubCheck {
        id: "d",
        name: "H ≤ H₁ on the cuboid grid",
        passed: violations.is_empty(),
        detail: json!({
            "grid": [ps.len(), xs.len(), ys.len()],
            "violations": violations.len(),
            "first_violations": violations.into_iter().take(5).collect::<Vec<_>>(),
            "max_h1_on_grid": max_h1.as_ref().map(fmt_rat),
        }),
    }
}

fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn quadrant_maxima(surfaces: &H3Surfaces, rect: &Rectangle) -> Vec<Rat> {
    let (m, n) = surfaces.g1.degree();
    rect.quadrants()
        .iter()
        .map(|q| bernstein_range(&bernstein_patch(&surfaces.g1, q, m, n).expect("degree")).1)
        .collect()
}

fn check_g1(cfg: &H3Config, surfaces: &H3Surfaces) -> SubCheck {
    let bound = rat(480, 1);
    let options = CertifyOptions {
        max_depth: cfg.max_depth,
        strategy: cfg.strategy,
        corner_fallback: true,
    };
    let report = certify_upper_bound(&surfaces.g1, &Rectangle::unit(), &bound, &options);

    let level1 = quadrant_maxima(surfaces, &Rectangle::unit());
    let half = Rectangle::corner(rat(1, 2));
    let level2 = quadrant_maxima(surfaces, &half);
    let corner = corner_certificate(&surfaces.f, &rat(1, 4));
    let sums: Vec<Rat> = corner
        .as_ref()
        .map(|c| c.tail.degree_sums.values().cloned().collect())
        .unwrap_or_default();
    let expected_sums: Vec<Rat> = CORNER_DEGREE_SUMS.iter().map(|&s| rat(s, 1)).collect();
    let reproduces = level1 == rats(&G1_LEVEL1_MAX)
        && level2 == rats(&G1_LEVEL2_MAX)
        && sums == expected_sums
        && corner.as_ref().is_ok_and(|c| {
            c.tail.constant == rat(CORNER_TAIL.0, CORNER_TAIL.1)
                && c.margin == rat(CORNER_MARGIN.0, CORNER_MARGIN.1)
        });
    let list = |v: &[Rat]| v.iter().map(fmt_rat).collect::<Vec<_>>();
    SubCheck {
        id: "e",
        name: "G₁ ≤ 480 on [0,1]² by Bernstein subdivision",
        passed: report.certified && reproduces,
        detail: json!({
            "certified": report.certified,
            "reproduces_reference_rationals": reproduces,
            "level1_quadrant_max": list(&level1),
            "level2_quadrant_max": list(&level2),
            "corner_certificate": corner.as_ref().map(|c| c.to_json()).unwrap_or_else(|e| json!(e.to_string())),
            "proof_tree": report.to_json(),
        }),
    }
}

fn check_g2(surfaces: &H3Surfaces) -> (SubCheck, Rat) {
    let patch = bernstein_patch(&surfaces.g2, &Rectangle::unit(), 6, 4).expect("degree (6,4)");
    let (lo, hi) = bernstein_range(&patch);
    let matrix: Vec<Vec<String>> = patch
        .coeffs
        .iter()
        .map(|row| row.iter().map(fmt_rat).collect())
        .collect();
    (
        SubCheck {
            id: "f",
            name: "Bernstein range of G₂ lies below 480",
            passed: hi <= rat(480, 1) && hi == rat(G2_MAX.0, G2_MAX.1),
            detail: json!({
                "bernstein_min": rat_to_json(&lo),
                "bernstein_max": rat_to_json(&hi),
                "matrix": matrix,
            }),
        },
        hi,
    )
}

fn h3_witness() -> Witness {
    let f = build_f_from_schwarz(&power_schwarz::<Rat>(3, 4), 5).expect("order 5 from order 4");
    let a = CoefficientVector::from_series(&f).expect("order 5");
    Witness {
        omega: "z^3",
        c_vector: [Rat::zero(), Rat::zero(), Rat::one(), Rat::zero()],
        value: hankel_h3(&a),
    }
}

fn h3_exact(s: &CuboidSample) -> GaussRat {
    let w = ps_expand_unchecked(&s.ps_exact().expect("lattice samples are exact"));
    hankel_h3(&coeffs_from_schwarz(&w))
}

fn h3_abs_f64(s: &CuboidSample) -> f64 {
    let w = ps_expand_unchecked(&s.ps_c64());
    (h3_normalized_from_c::<C64>(&w) / 69120.0).norm()
}

/// Runs every sub-check of the `|H₃(1)| ≤ 1/144` proof.
pub fn verify_h3(cfg: &H3Config) -> TheoremReport {
    let started = Instant::now();
    let bound = rat(1, 144);
    let witness = h3_witness();
    let surfaces = match h3_surfaces() {
        Ok(s) => s,
        Err(e) => {
            let check = SubCheck {
                id: "surfaces",
                name: "majorant surfaces match their reference forms",
                passed: false,
                detail: json!(e.to_string()),
            };
            return TheoremReport::assemble(
                "h3",
                "|H₃(1)| ≤ 1/144, sharp",
                bound,
                witness,
                vec![check],
                false,
                started,
            );
        }
    };

    let (identity, dominance) = check_samples(cfg, &surfaces);
    let mut checks = vec![
        identity,
        dominance,
        check_y_coefficient(cfg, &surfaces),
        check_h_below_h1(cfg, &surfaces),
        check_g1(cfg, &surfaces),
    ];
    let (g2, g2_max) = check_g2(&surfaces);
    checks.push(g2);

    let sup = rat(480, 1);
    let derived = &sup / rat(69120, 1);
    checks.push(SubCheck {
        id: "g",
        name: "max(G₁, G₂) ≤ 480 gives 480/69120 = 1/144",
        passed: derived == bound && g2_max <= sup,
        detail: json!({ "supremum": fmt_rat(&sup), "bound": fmt_rat(&derived) }),
    });
    checks.push(SubCheck {
        id: "h",
        name: "ω = z³ attains H₃ = −1/144",
        passed: witness.value == -bound.clone(),
        detail: witness.to_json(),
    });

    let search = run_search(cfg.seed, cfg.search_samples, SampleMode::Ps, &bound, h3_exact, h3_abs_f64);
    let inconsistency = search.exceeded_count > 0;
    checks.push(search_subcheck("i", "randomized search stays below 1/144", &search, &bound));

    TheoremReport::assemble(
        "h3",
        "|H₃(1)| ≤ 1/144, sharp",
        bound,
        witness,
        checks,
        inconsistency,
        started,
    )
}

/// JSON form of a [`H3Decomposition`].
pub fn decomposition_json(d: &H3Decomposition) -> Value {
    use crate::json::gauss_to_json;
    json!({
        "A1": gauss_to_json(&d.a1),
        "B1": gauss_to_json(&d.b1),
        "C1": gauss_to_json(&d.c1),
        "D1": gauss_to_json(&d.d1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::gauss;

    #[test]
    fn witness_is_extremal() {
        assert_eq!(h3_witness().value, rat(-1, 144));
    }

    #[test]
    fn decomposition_matches_sextic_at_a_point() {
        let params = PSParams::new(
            GaussRat::from_real(rat(1, 3)),
            gauss(rat(3, 10), rat(-2, 5)),
            gauss(rat(-1, 2), rat(1, 7)),
            gauss(rat(0, 1), rat(9, 10)),
        );
        let w = ps_expand(&params).unwrap();
        assert_eq!(h3_normalized_from_c(&w), decomposition_value(&params));
        assert!(decomposition_json(&decomposition(&params)).get("D1").is_some());
    }

    #[test]
    fn g1_and_g2_checks_reproduce_reference_values() {
        let s = h3_surfaces().unwrap();
        let cfg = H3Config::default();
        let g1 = check_g1(&cfg, &s);
        assert!(g1.passed, "{}", g1.detail);
        let (g2, max) = check_g2(&s);
        assert!(g2.passed);
        assert_eq!(max, rat(1022, 3));
    }
}
