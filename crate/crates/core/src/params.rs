//! Libera–Złotkiewicz and Prokhorov–Szynal parametrizations of the
//! Carathéodory and Schwarz coefficients, and a seeded sampler over the
//! parameter cuboid.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::ParamError;
use crate::functionals::{CaratheodoryCoeffs, SchwarzCoeffs};
use crate::json::{gauss_to_json, rat_to_json_plain};
use crate::scalar::{fmt_rat, gauss, rat, rat_to_f64, GaussRat, Rat, Scalar, C64};

/// `(p1, γ, η, ρ)` with `0 ≤ p1 ≤ 2` and `|γ|, |η|, |ρ| ≤ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LZParams<T> {
    pub p1: T,
    pub gamma: T,
    pub eta: T,
    pub rho: T,
}

/// `(c1, γ, η, ρ)` with `0 ≤ c1 ≤ 1` and `|γ|, |η|, |ρ| ≤ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PSParams<T> {
    pub c1: T,
    pub gamma: T,
    pub eta: T,
    pub rho: T,
}

fn check_lead<T: Scalar>(name: &'static str, v: &T, hi: i64) -> Result<(), ParamError> {
    if !v.is_real() {
        return Err(ParamError::LeadNotReal {
            name,
            im: format!("{:?}", v.im()),
        });
    }
    let re = v.re();
    if re < T::zero().re() || re > T::from_i64(hi).re() {
        return Err(ParamError::LeadOutOfRange {
            name,
            value: format!("{re:?}"),
            lo: "0".into(),
            hi: hi.to_string(),
        });
    }
    Ok(())
}

fn check_unit<T: Scalar>(name: &'static str, v: &T) -> Result<(), ParamError> {
    if v.norm_sqr() > T::one().re() {
        return Err(ParamError::ModulusTooLarge { name });
    }
    Ok(())
}

impl<T: Scalar> LZParams<T> {
    pub fn new(p1: T, gamma: T, eta: T, rho: T) -> Self {
        Self { p1, gamma, eta, rho }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check_lead("p1", &self.p1, 2)?;
        check_unit("gamma", &self.gamma)?;
        check_unit("eta", &self.eta)?;
        check_unit("rho", &self.rho)
    }
}

impl<T: Scalar> PSParams<T> {
    pub fn new(c1: T, gamma: T, eta: T, rho: T) -> Self {
        Self { c1, gamma, eta, rho }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check_lead("c1", &self.c1, 1)?;
        check_unit("gamma", &self.gamma)?;
        check_unit("eta", &self.eta)?;
        check_unit("rho", &self.rho)
    }
}

fn k<T: Scalar>(n: i64) -> T {
    T::from_i64(n)
}

fn modsq<T: Scalar>(v: &T) -> T {
    T::from_real(v.norm_sqr())
}

/// `(p1, p2, p3, p4)` from the Libera–Złotkiewicz formulas for `2p2`,
/// `4p3` and `8p4`.
pub fn lz_expand<T: Scalar>(params: &LZParams<T>) -> Result<CaratheodoryCoeffs<T>, ParamError> {
    params.validate()?;
    Ok(lz_expand_unchecked(params))
}

/// [`lz_expand`] without the range check, for floating searches where the
/// moduli may exceed 1 by rounding.
pub fn lz_expand_unchecked<T: Scalar>(params: &LZParams<T>) -> CaratheodoryCoeffs<T> {
    let LZParams { p1, gamma: g, eta: e, rho: r } = params;
    let p1_2 = p1.clone() * p1.clone();
    let q = k::<T>(4) - p1_2.clone();
    let one_g = T::one() - modsq(g);
    let one_e = T::one() - modsq(e);
    let g2 = g.clone() * g.clone();

    let p2 = (p1_2.clone() + g.clone() * q.clone()) / k(2);
    let p3 = (p1_2.clone() * p1.clone()
        + k::<T>(2) * q.clone() * p1.clone() * g.clone()
        - q.clone() * p1.clone() * g2.clone()
        + k::<T>(2) * q.clone() * one_g.clone() * e.clone())
        / k(4);
    let inner = p1_2.clone() * (g2.clone() - k::<T>(3) * g.clone() + k(3)) + k::<T>(4) * g.clone();
    let tail = p1.clone() * (g.clone() - T::one()) * e.clone()
        + g.conj() * e.clone() * e.clone()
        - one_e * r.clone();
    let p4 = (p1_2.clone() * p1_2 + q.clone() * g.clone() * inner
        - k::<T>(4) * q * one_g * tail)
        / k(8);
    CaratheodoryCoeffs::new(p1.clone(), p2, p3, p4)
}

/// `(c1, c2, c3, c4)` from the Prokhorov–Szynal formulas.
pub fn ps_expand<T: Scalar>(params: &PSParams<T>) -> Result<SchwarzCoeffs<T>, ParamError> {
    params.validate()?;
    Ok(ps_expand_unchecked(params))
}

pub fn ps_expand_unchecked<T: Scalar>(params: &PSParams<T>) -> SchwarzCoeffs<T> {
    let PSParams { c1, gamma: g, eta: e, rho: r } = params;
    let c1_2 = c1.clone() * c1.clone();
    let d = T::one() - c1_2.clone();
    let one_g = T::one() - modsq(g);
    let one_e = T::one() - modsq(e);
    let g2 = g.clone() * g.clone();

    let c2 = d.clone() * g.clone();
    let c3 = d.clone() * (e.clone() * one_g.clone() - c1.clone() * g2.clone());
    let c4 = d
        * (c1_2 * g2 * g.clone()
            - one_g.clone()
                * (k::<T>(2) * c1.clone() * g.clone() * e.clone() + g.conj() * e.clone() * e.clone())
            + one_g * one_e * r.clone());
    SchwarzCoeffs::new(c1.clone(), c2, c3, c4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleMode {
    Lz,
    Ps,
}

impl SampleMode {
    /// Upper end of the lead parameter range: 2 for `p1`, 1 for `c1`.
    pub fn lead_max(self) -> i64 {
        match self {
            SampleMode::Lz => 2,
            SampleMode::Ps => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SampleMode::Lz => "lz",
            SampleMode::Ps => "ps",
        }
    }
}

/// How the phases of `γ, η, ρ` are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnglePolicy {
    /// Unimodular Gaussian rationals from a fixed table; keeps every
    /// sample exactly representable.
    Exact,
    /// Uniform angles in `[0, 2π)`; samples are only available in `f64`.
    Dense,
    /// Alternate the two by sample index.
    Mixed,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    Unit(GaussRat),
    Radians(f64),
}

/// A complex parameter stored as rational modulus times phase.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarParam {
    pub modulus: Rat,
    pub angle: Angle,
}

impl PolarParam {
    pub fn real(modulus: Rat) -> Self {
        PolarParam {
            modulus,
            angle: Angle::Unit(GaussRat::one()),
        }
    }

    pub fn exact(&self) -> Option<GaussRat> {
        match &self.angle {
            Angle::Unit(u) => Some(u * self.modulus.clone()),
            Angle::Radians(_) => None,
        }
    }

    pub fn to_c64(&self) -> C64 {
        match &self.angle {
            Angle::Unit(u) => u.to_c64() * rat_to_f64(&self.modulus),
            Angle::Radians(t) => C64::from_polar(rat_to_f64(&self.modulus), *t),
        }
    }

    fn to_json(&self) -> Value {
        let angle = match &self.angle {
            Angle::Unit(u) => json!({ "unit": gauss_to_json(u) }),
            Angle::Radians(t) => json!({ "radians": t }),
        };
        json!({ "modulus": rat_to_json_plain(&self.modulus), "angle": angle })
    }
}

/// One point of the parameter cuboid.
#[derive(Clone, Debug, PartialEq)]
pub struct CuboidSample {
    pub index: usize,
    pub mode: SampleMode,
    pub lead: Rat,
    pub gamma: PolarParam,
    pub eta: PolarParam,
    pub rho: PolarParam,
}

impl CuboidSample {
    pub fn is_exact(&self) -> bool {
        [&self.gamma, &self.eta, &self.rho]
            .iter()
            .all(|p| matches!(p.angle, Angle::Unit(_)))
    }

    fn exact_params(&self) -> Option<[GaussRat; 4]> {
        Some([
            GaussRat::from_real(self.lead.clone()),
            self.gamma.exact()?,
            self.eta.exact()?,
            self.rho.exact()?,
        ])
    }

    fn c64_params(&self) -> [C64; 4] {
        [
            C64::new(rat_to_f64(&self.lead), 0.0),
            self.gamma.to_c64(),
            self.eta.to_c64(),
            self.rho.to_c64(),
        ]
    }

    pub fn lz_exact(&self) -> Option<LZParams<GaussRat>> {
        let [a, b, c, d] = self.exact_params()?;
        Some(LZParams::new(a, b, c, d))
    }

    pub fn ps_exact(&self) -> Option<PSParams<GaussRat>> {
        let [a, b, c, d] = self.exact_params()?;
        Some(PSParams::new(a, b, c, d))
    }

    pub fn lz_c64(&self) -> LZParams<C64> {
        let [a, b, c, d] = self.c64_params();
        LZParams::new(a, b, c, d)
    }

    pub fn ps_c64(&self) -> PSParams<C64> {
        let [a, b, c, d] = self.c64_params();
        PSParams::new(a, b, c, d)
    }

    /// Moduli `(lead, |γ|, |η|, |ρ|)`, exact.
    pub fn moduli(&self) -> [Rat; 4] {
        [
            self.lead.clone(),
            self.gamma.modulus.clone(),
            self.eta.modulus.clone(),
            self.rho.modulus.clone(),
        ]
    }

    pub fn to_json(&self) -> Value {
        let lead_name = match self.mode {
            SampleMode::Lz => "p1",
            SampleMode::Ps => "c1",
        };
        json!({
            "index": self.index,
            "mode": self.mode.name(),
            lead_name: rat_to_json_plain(&self.lead),
            "gamma": self.gamma.to_json(),
            "eta": self.eta.to_json(),
            "rho": self.rho.to_json(),
        })
    }

    pub fn describe(&self) -> String {
        format!(
            "#{} lead={} |γ|={} |η|={} |ρ|={}",
            self.index,
            fmt_rat(&self.lead),
            fmt_rat(&self.gamma.modulus),
            fmt_rat(&self.eta.modulus),
            fmt_rat(&self.rho.modulus)
        )
    }
}

/// Number of leading samples reserved for the corner/midpoint lattice.
pub const CORNER_COUNT: usize = 81;
/// Denominator of the random rational moduli and leads.
const GRID_DEN: i64 = 1024;

/// Unimodular Gaussian rationals `((m²−n²) + 2mn·i)/(m²+n²)` for small
/// coprime `m > n ≥ 0`, with all their quarter turns and conjugates.
pub fn unimodular_table() -> &'static [GaussRat] {
    static TABLE: OnceLock<Vec<GaussRat>> = OnceLock::new();
    TABLE.get_or_init(build_unimodular_table)
}

fn build_unimodular_table() -> Vec<GaussRat> {
    let mut base = vec![GaussRat::one()];
    for m in 1i64..=7 {
        for n in 1..m {
            if num_integer::gcd(m, n) != 1 || (m - n) % 2 == 0 {
                continue;
            }
            let h = m * m + n * n;
            base.push(gauss(rat(m * m - n * n, h), rat(2 * m * n, h)));
        }
    }
    let i = gauss(Rat::zero(), Rat::one());
    let mut out = Vec::new();
    for b in base {
        for u in [b.clone(), b.conj()] {
            let mut v = u;
            for _ in 0..4 {
                if !out.contains(&v) {
                    out.push(v.clone());
                }
                v = &v * &i;
            }
        }
    }
    out
}

fn corner_sample(index: usize, mode: SampleMode) -> CuboidSample {
    let third = |d: usize| rat(d as i64, 2);
    let (a, b, c, d) = (index / 27, (index / 9) % 3, (index / 3) % 3, index % 3);
    CuboidSample {
        index,
        mode,
        lead: third(a) * rat(mode.lead_max(), 1),
        gamma: PolarParam::real(third(b)),
        eta: PolarParam::real(third(c)),
        rho: PolarParam::real(third(d)),
    }
}

/// The `index`-th sample for `seed`. Indices below [`CORNER_COUNT`] walk the
/// lattice `{0, 1/2, 1}⁴` (scaled to the lead range, phases 1); later ones
/// are drawn from a ChaCha stream keyed by the index, so any index can be
/// produced independently.
pub fn sample_at(seed: u64, index: usize, mode: SampleMode, policy: AnglePolicy) -> CuboidSample {
    if index < CORNER_COUNT {
        return corner_sample(index, mode);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let table = unimodular_table();
    let dense = match policy {
        AnglePolicy::Exact => false,
        AnglePolicy::Dense => true,
        AnglePolicy::Mixed => index % 2 == 1,
    };
    let draw = |rng: &mut ChaCha8Rng| {
        // Pin a quarter of the moduli to the boundary circle.
        let modulus = if rng.gen_bool(0.25) {
            Rat::one()
        } else {
            rat(rng.gen_range(0..=GRID_DEN), GRID_DEN)
        };
        let angle = if dense {
            Angle::Radians(rng.gen_range(0.0..2.0 * PI))
        } else {
            Angle::Unit(table[rng.gen_range(0..table.len())].clone())
        };
        PolarParam { modulus, angle }
    };
    let lead = rat(rng.gen_range(0..=GRID_DEN) * mode.lead_max(), GRID_DEN);
    let gamma = draw(&mut rng);
    let eta = draw(&mut rng);
    let rho = draw(&mut rng);
    CuboidSample {
        index,
        mode,
        lead,
        gamma,
        eta,
        rho,
    }
}

/// `count` deterministic samples starting at index 0.
pub fn sample_cuboid(
    seed: u64,
    count: usize,
    mode: SampleMode,
    policy: AnglePolicy,
) -> Vec<CuboidSample> {
    (0..count).map(|i| sample_at(seed, i, mode, policy)).collect()
}
