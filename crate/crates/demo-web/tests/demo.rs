use hankel_demo_web::{g1_json, phi_json, ykc_json};

#[test]
fn ykc_matches_oracle() {
    let v = ykc_json("-1/36", "1/6", "-3/2", 32).unwrap();
    assert_eq!(v["exact"], "61/36");
    assert_eq!(v["branch"], "i-large-B");
    assert!(v["deviation"].as_f64().unwrap() < 5e-6);
    assert_eq!(v["field"].as_array().unwrap().len(), 32 * 32);
}

#[test]
fn ykc_rejects_garbage() {
    assert!(ykc_json("x", "0", "0", 16).is_err());
}

#[test]
fn g1_tree_certifies_with_corner() {
    let v = g1_json("paper-quadrants", 4, true).unwrap();
    assert_eq!(v["verdict"], "certified", "{v}");
    let v = g1_json("paper-quadrants", 4, false).unwrap();
    assert_ne!(v["verdict"], "certified");
    assert!(g1_json("spiral", 4, true).is_err());
}

#[test]
fn phi_image_stays_in_annulus() {
    let v = phi_json(4, 8, 64);
    for curve in v["circles"].as_array().unwrap().iter().chain(v["rays"].as_array().unwrap()) {
        for p in curve.as_array().unwrap() {
            let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
            let m = x.hypot(y);
            assert!((0.25 - 1e-12..=2.25 + 1e-12).contains(&m));
        }
    }
}
