use std::time::Instant;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{run_search, search_subcheck, SubCheck, TheoremReport, Witness};
use crate::error::PipelineError;
use crate::functionals::{coeffs_from_caratheodory, hankel_h2, h2_normalized_from_p, CoefficientVector};
use crate::json::rat_to_json;
use crate::params::{lz_expand, lz_expand_unchecked, sample_at, AnglePolicy, SampleMode};
use crate::phi::{build_f_from_schwarz, power_schwarz};
use crate::scalar::{fmt_rat, rat, GaussRat, Rat, Scalar, C64};
use crate::ykc::{ykc_closed_form, YkcValue};

#[derive(Clone, Debug, PartialEq)]
pub struct H2Config {
    pub seed: u64,
    /// Interior grid `p1 = 2k/(grid+1)`, `k = 1..=grid`.
    pub grid: usize,
    pub exact_samples: usize,
    pub search_samples: usize,
}

impl Default for H2Config {
    fn default() -> Self {
        Self {
            seed: 0,
            grid: 199,
            exact_samples: 500,
            search_samples: 100_000,
        }
    }
}

/// `2304·H₂(2) = A + Bγ + Cγ² + η D₀ (1 − |γ|²)` at fixed `p1`.
#[derive(Clone, Debug, PartialEq)]
pub struct H2ProofObject {
    pub p1: Rat,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d0: Rat,
    /// `(A, B, C) / D₀`, present for `0 < p1 < 2`.
    pub tilde: Option<(Rat, Rat, Rat)>,
}

impl H2ProofObject {
    /// `A + Bγ + Cγ² + η D₀ (1 − |γ|²)`.
    pub fn phi(&self, gamma: &GaussRat, eta: &GaussRat) -> GaussRat {
        let g = |r: &Rat| GaussRat::from_real(r.clone());
        g(&self.a)
            + g(&self.b) * gamma
            + g(&self.c) * gamma * gamma
            + eta * g(&(&self.d0 * (Rat::one() - gamma.norm_sqr())))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p1": rat_to_json(&self.p1),
            "A": rat_to_json(&self.a),
            "B": rat_to_json(&self.b),
            "C": rat_to_json(&self.c),
            "D0": rat_to_json(&self.d0),
            "tilde": self.tilde.as_ref().map(|(a, b, c)| json!({
                "A": rat_to_json(a), "B": rat_to_json(b), "C": rat_to_json(c),
            })),
        })
    }
}

pub fn h2_proof_object(p1: &Rat) -> Result<H2ProofObject, PipelineError> {
    let two = rat(2, 1);
    if p1.is_negative() || p1 > &two {
        return Err(PipelineError::LeadOutOfRange(format!(
            "p1 = {} is outside [0, 2]",
            fmt_rat(p1)
        )));
    }
    let p2 = p1 * p1;
    let p4 = &p2 * &p2;
    let four_minus = rat(4, 1) - &p2;
    let a = -p4.clone();
    let b = &two * &p2 * &four_minus;
    let c = &two * (rat(-32, 1) + rat(4, 1) * &p2 + &p4);
    let d0 = rat(12, 1) * p1 * &four_minus;
    let tilde = (!d0.is_zero()).then(|| (&a / &d0, &b / &d0, &c / &d0));
    Ok(H2ProofObject {
        p1: p1.clone(),
        a,
        b,
        c,
        d0,
        tilde,
    })
}

/// `2304·H₂(2)` by substituting the Carathéodory parametrization into the
/// quartic in `p1, p2, p3`; the route the proof object must agree with.
pub fn phi_normalized(p1: &GaussRat, gamma: &GaussRat, eta: &GaussRat) -> GaussRat {
    let p = lz_expand_unchecked(&crate::params::LZParams::new(
        p1.clone(),
        gamma.clone(),
        eta.clone(),
        GaussRat::zero(),
    ));
    h2_normalized_from_p(&p.p1, &p.p2, &p.p3)
}

fn check_identity(cfg: &H2Config) -> SubCheck {
    let scale = GaussRat::from_i64(2304);
    let mut mismatches = Vec::new();
    for index in 0..cfg.exact_samples {
        let s = sample_at(cfg.seed, index, SampleMode::Lz, AnglePolicy::Exact);
        let params = s.lz_exact().expect("exact angle policy");
        let p = lz_expand(&params).expect("sampler stays in range");
        let quartic = h2_normalized_from_p(&p.p1, &p.p2, &p.p3);
        let via_coeffs = hankel_h2(&coeffs_from_caratheodory(&p)) * scale.clone();
        let obj = h2_proof_object(&s.lead).expect("lead in range");
        let phi = obj.phi(&params.gamma, &params.eta);
        if quartic != phi || via_coeffs != phi {
            mismatches.push(s.to_json());
        }
    }
    SubCheck {
        id: "a",
        name: "2304·H₂ = Φ(p1, γ, η) on exact samples",
        passed: mismatches.is_empty() && cfg.exact_samples > 0,
        detail: json!({
            "samples": cfg.exact_samples,
            "mismatches": mismatches.len(),
            "first_mismatches": mismatches.into_iter().take(5).collect::<Vec<_>>(),
        }),
    }
}

struct GridOutcome {
    check: SubCheck,
    max_value: Option<Rat>,
}

fn check_grid(cfg: &H2Config) -> GridOutcome {
    let mut failures = Vec::new();
    let mut max_value: Option<Rat> = None;
    let mut at_one = None;
    let denom = (cfg.grid + 1) as i64;
    for k in 1..=cfg.grid as i64 {
        let p1 = rat(2 * k, denom);
        let obj = h2_proof_object(&p1).expect("interior point");
        let (ta, tb, tc) = obj.tilde.clone().expect("D₀ > 0 inside");
        let expected = rat(64, 1) - rat(3, 1) * num_traits::pow(p1.clone(), 4);
        let y = ykc_closed_form(&ta, &tb, &tc);
        let product = match &y.value {
            YkcValue::Exact(v) => Some(v * &obj.d0),
            YkcValue::Approx(_) => None,
        };
        let sign_ok = !(&ta * &tc).is_negative();
        let c_ok = tc.abs() > Rat::one();
        let b_ok = tb.abs() >= rat(2, 1) * (Rat::one() - tc.abs());
        let value_ok = product.as_ref() == Some(&expected);
        if p1 == Rat::one() {
            at_one = product.clone();
        }
        if let Some(v) = &product {
            if max_value.as_ref().is_none_or(|m| v > m) {
                max_value = Some(v.clone());
            }
        }
        if !(sign_ok && c_ok && b_ok && value_ok) {
            failures.push(json!({
                "p1": fmt_rat(&p1),
                "AC_nonnegative": sign_ok,
                "abs_C_above_one": c_ok,
                "B_condition": b_ok,
                "D0_Y": product.as_ref().map(fmt_rat),
                "expected": fmt_rat(&expected),
                "branch": y.branch.map(|b| b.label()),
            }));
        }
    }
    GridOutcome {
        check: SubCheck {
            id: "b",
            name: "D₀·Y(Ã, B̃, C̃) = 64 − 3p1⁴ on the p1 grid",
            passed: failures.is_empty() && cfg.grid > 0,
            detail: json!({
                "grid_points": cfg.grid,
                "failures": failures.len(),
                "first_failures": failures.into_iter().take(5).collect::<Vec<_>>(),
                "value_at_p1_1": at_one.as_ref().map(fmt_rat),
                "max_interior_value": max_value.as_ref().map(fmt_rat),
            }),
        },
        max_value,
    }
}

/// At `p1 = 0` the form is `−64γ²`, at `p1 = 2` the constant `−16`.
fn check_endpoints() -> (SubCheck, Rat) {
    let zero = h2_proof_object(&Rat::zero()).expect("in range");
    let two = h2_proof_object(&rat(2, 1)).expect("in range");
    let zero_ok = zero.a.is_zero() && zero.b.is_zero() && zero.d0.is_zero() && zero.c == rat(-64, 1);
    let two_ok = two.b.is_zero() && two.c.is_zero() && two.d0.is_zero() && two.a == rat(-16, 1);
    // With only the γ² term (resp. a constant) left, the maxima over |γ| ≤ 1
    // are |C| and |A|.
    let at_zero = zero.c.abs();
    let at_two = two.a.abs();
    let ok = zero_ok && two_ok && at_zero == rat(64, 1) && at_two == rat(16, 1);
    (
        SubCheck {
            id: "c",
            name: "endpoint maxima 64 (p1 = 0) and 16 (p1 = 2)",
            passed: ok,
            detail: json!({
                "p1_0": zero.to_json(),
                "p1_2": two.to_json(),
                "max_at_0": fmt_rat(&at_zero),
                "max_at_2": fmt_rat(&at_two),
            }),
        },
        at_zero.max(at_two),
    )
}

fn h2_witness() -> Witness {
    let f = build_f_from_schwarz(&power_schwarz::<Rat>(2, 4), 5).expect("order 5 from order 4");
    let a = CoefficientVector::from_series(&f).expect("order 5");
    Witness {
        omega: "z^2",
        c_vector: [Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()],
        value: hankel_h2(&a),
    }
}

fn h2_abs_f64(s: &crate::params::CuboidSample) -> f64 {
    let p = lz_expand_unchecked(&s.lz_c64());
    (h2_normalized_from_p::<C64>(&p.p1, &p.p2, &p.p3) / 2304.0).norm()
}

fn h2_exact(s: &crate::params::CuboidSample) -> GaussRat {
    let p = lz_expand_unchecked(&s.lz_exact().expect("lattice samples are exact"));
    hankel_h2(&coeffs_from_caratheodory(&p))
}

/// Runs every sub-check of the `|H₂(2)| ≤ 1/36` proof.
pub fn verify_h2(cfg: &H2Config) -> TheoremReport {
    let started = Instant::now();
    let bound = rat(1, 36);
    let mut checks = vec![check_identity(cfg)];
    let grid = check_grid(cfg);
    let grid_max = grid.max_value.clone();
    checks.push(grid.check);
    let (endpoints, endpoint_max) = check_endpoints();
    checks.push(endpoints);

    let sup = grid_max.map_or(endpoint_max.clone(), |g| g.max(endpoint_max.clone()));
    let derived = &sup / rat(2304, 1);
    checks.push(SubCheck {
        id: "d",
        name: "supremum 64 gives 64/2304 = 1/36",
        passed: sup == rat(64, 1) && derived == bound,
        detail: json!({ "supremum": fmt_rat(&sup), "bound": fmt_rat(&derived) }),
    });

    let witness = h2_witness();
    checks.push(SubCheck {
        id: "e",
        name: "ω = z² attains H₂ = −1/36",
        passed: witness.value == -bound.clone(),
        detail: witness.to_json(),
    });

    let search = run_search(cfg.seed, cfg.search_samples, SampleMode::Lz, &bound, h2_exact, h2_abs_f64);
    let inconsistency = search.exceeded_count > 0;
    checks.push(search_subcheck("f", "randomized search stays below 1/36", &search, &bound));

    TheoremReport::assemble(
        "h2",
        "|H₂(2)| ≤ 1/36, sharp",
        bound,
        witness,
        checks,
        inconsistency,
        started,
    )
}
