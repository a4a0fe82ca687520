use hankel::functionals::{h2_normalized_from_p, h3_normalized_from_c};
use hankel::params::{lz_expand, ps_expand, sample_at, AnglePolicy, SampleMode};
use hankel::pipelines::{
    decomposition_value, h2_proof_object, h3_surfaces, phi_normalized, verify_h2, verify_h3, H2Config, H3Config,
};
use hankel::scalar::{rat, GaussRat, Rat, Scalar};
use num_traits::Signed;

#[test]
fn two_routes_to_the_h2_quartic_agree() {
    for index in 0..300 {
        let s = sample_at(11, index, SampleMode::Lz, AnglePolicy::Exact);
        let params = s.lz_exact().unwrap();
        let p = lz_expand(&params).unwrap();
        let quartic = h2_normalized_from_p(&p.p1, &p.p2, &p.p3);
        assert_eq!(quartic, phi_normalized(&params.p1, &params.gamma, &params.eta), "{}", s.describe());
        let obj = h2_proof_object(&s.lead).unwrap();
        assert_eq!(quartic, obj.phi(&params.gamma, &params.eta));
    }
}

#[test]
fn decomposition_matches_the_sextic() {
    for index in 0..300 {
        let s = sample_at(12, index, SampleMode::Ps, AnglePolicy::Exact);
        let params = s.ps_exact().unwrap();
        let w = ps_expand(&params).unwrap();
        assert_eq!(decomposition_value(&params), h3_normalized_from_c(&w), "{}", s.describe());
    }
}

#[test]
fn monotone_chain_up_to_480() {
    let surf = h3_surfaces().unwrap();
    let cap = rat(480, 1);
    for index in 0..400 {
        let s = sample_at(13, index, SampleMode::Ps, AnglePolicy::Exact);
        let w = ps_expand(&s.ps_exact().unwrap()).unwrap();
        let [c1, x, y, _] = s.moduli();
        let h = surf.h.eval(&c1, &x, &y);
        let h1 = surf.h1.eval(&c1, &x, &y);
        let g = surf.g1.eval(&c1, &x).max(surf.g2.eval(&c1, &x));
        let sextic: GaussRat = h3_normalized_from_c(&w);
        assert!(!h.is_negative() && sextic.norm_sqr() <= &h * &h, "{}", s.describe());
        assert!(h <= h1, "H > H₁ at {}", s.describe());
        assert!(h1 <= g, "H₁ above its y-endpoints at {}", s.describe());
        assert!(g <= cap, "{}", s.describe());
    }
}

#[test]
fn surfaces_meet_at_the_extremal_corner() {
    let surf = h3_surfaces().unwrap();
    let zero = Rat::from_i64(0);
    assert_eq!(surf.g1.eval(&zero, &zero), rat(480, 1));
    assert_eq!(surf.f.eval(&zero, &zero), zero);
}

#[test]
fn reports_are_deterministic() {
    let cfg = H2Config { search_samples: 5_000, exact_samples: 100, grid: 49, ..H2Config::default() };
    assert_eq!(verify_h2(&cfg).to_json(false), verify_h2(&cfg).to_json(false));
    let cfg = H3Config {
        search_samples: 5_000,
        exact_samples: 60,
        cuboid_grid: (21, 21, 5),
        y_coefficient_grid: 41,
        ..H3Config::default()
    };
    let a = verify_h3(&cfg);
    assert!(a.certified);
    assert_eq!(a.to_json(false), verify_h3(&cfg).to_json(false));
}

#[test]
fn witnesses_are_exact() {
    let cfg = H2Config { search_samples: 100, exact_samples: 10, grid: 9, ..H2Config::default() };
    let r = verify_h2(&cfg);
    assert_eq!(r.witness.value, rat(-1, 36));
    assert_eq!(r.bound, rat(1, 36));
}
