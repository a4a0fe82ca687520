//! WebAssembly entry points for the browser demo. Each returns a JSON string
//! so the page only needs `JSON.parse`; the `*_json` twins are plain Rust and
//! are what the native tests exercise.

use hankel::bernstein::{certify_upper_bound, CertifyOptions, Rectangle, Strategy};
use hankel::phi::PhiFunction;
use hankel::pipelines::h3_surfaces;
use hankel::scalar::{parse_rat, rat, rat_to_f64, C64};
use hankel::ykc::{ykc_brute_force, ykc_closed_form};
use serde_json::{json, Value};
use std::f64::consts::PI;
use wasm_bindgen::prelude::*;

/// Closed form against the grid oracle for one triple, plus the objective
/// `|A + Bz + Cz²| + 1 − |z|²` sampled on a `pixels × pixels` grid over
/// `[-1, 1]²` (`null` outside the disk) for a heat map.
pub fn ykc_json(a: &str, b: &str, c: &str, pixels: usize) -> Result<Value, String> {
    let [a, b, c] = [a, b, c].map(|s| parse_rat(s.trim()).map_err(|e| e.to_string()));
    let (a, b, c) = (a?, b?, c?);
    let closed = ykc_closed_form(&a, &b, &c);
    let (fa, fb, fc) = (rat_to_f64(&a), rat_to_f64(&b), rat_to_f64(&c));
    let oracle = ykc_brute_force(fa, fb, fc, 512, 1024);

    let n = pixels.clamp(8, 400);
    let mut field = Vec::with_capacity(n * n);
    for i in 0..n {
        let y = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
        for j in 0..n {
            let x = -1.0 + 2.0 * (j as f64 + 0.5) / n as f64;
            let z = C64::new(x, y);
            let r2 = z.norm_sqr();
            field.push((r2 <= 1.0).then(|| (fa + fb * z + fc * z * z).norm() + 1.0 - r2));
        }
    }

    Ok(json!({
        "closed": closed.value.to_f64(),
        "exact": closed.value.exact().map(|r| r.to_string()),
        "branch": closed.branch.map(|b| b.label()),
        "oracle": oracle.value.to_f64(),
        "argmax": oracle.argmax_hint.map(|(x, y)| [x, y]),
        "deviation": (closed.value.to_f64() - oracle.value.to_f64()).abs(),
        "pixels": n,
        "field": field,
    }))
}

/// Subdivision tree certifying `G₁ ≤ 480` on the unit square.
pub fn g1_json(strategy: &str, depth: usize, corner: bool) -> Result<Value, String> {
    let strategy = Strategy::parse(strategy).ok_or_else(|| format!("unknown strategy {strategy:?}"))?;
    let surfaces = h3_surfaces().map_err(|e| e.to_string())?;
    let options = CertifyOptions {
        max_depth: depth.min(8),
        strategy,
        corner_fallback: corner,
    };
    Ok(certify_upper_bound(&surfaces.g1, &Rectangle::unit(), &rat(480, 1), &options).to_json())
}

/// Images under `φ` of `rings` concentric circles and `spokes` radii of the
/// unit disk, each traced with `steps` points.
pub fn phi_json(rings: usize, spokes: usize, steps: usize) -> Value {
    let (rings, spokes, steps) = (rings.clamp(1, 64), spokes.clamp(1, 128), steps.clamp(16, 2048));
    let point = |z: C64| {
        let w = PhiFunction::eval_c64(z);
        [w.re, w.im]
    };
    let circles: Vec<Vec<[f64; 2]>> = (1..=rings)
        .map(|k| {
            let r = k as f64 / rings as f64;
            (0..=steps)
                .map(|j| point(C64::from_polar(r, 2.0 * PI * j as f64 / steps as f64)))
                .collect()
        })
        .collect();
    let rays: Vec<Vec<[f64; 2]>> = (0..spokes)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / spokes as f64;
            (0..=steps / 4)
                .map(|j| point(C64::from_polar(j as f64 / (steps / 4) as f64, t)))
                .collect()
        })
        .collect();
    json!({ "circles": circles, "rays": rays })
}

#[wasm_bindgen]
pub fn ykc_explore(a: &str, b: &str, c: &str, pixels: usize) -> Result<String, String> {
    ykc_json(a, b, c, pixels).map(|v| v.to_string())
}

#[wasm_bindgen]
pub fn g1_subdivision(strategy: &str, depth: usize, corner: bool) -> Result<String, String> {
    g1_json(strategy, depth, corner).map(|v| v.to_string())
}

#[wasm_bindgen]
pub fn phi_image(rings: usize, spokes: usize, steps: usize) -> String {
    phi_json(rings, spokes, steps).to_string()
}
