use blochlab_web::{density_grid_impl, distance_impl, mobius_image_impl, seminorm_impl};

#[test]
fn disc_grid_of_identity_is_one_minus_r2() {
    let g = density_grid_impl("nat", "linf:1", "x1", "", 5).unwrap();
    assert_eq!(g.len(), 25);
    // centre cell is the origin
    assert_eq!(g[12], 1.0);
    // corners lie outside the disc
    assert!(g[0].is_nan());
    // (0.5, 0) sits at row 2, col 3
    assert!((g[13] - 0.75).abs() < 1e-15);
}

#[test]
fn bidisc_slice() {
    let g = density_grid_impl("inv", "linf:2", "countex1", "0.2i", 9).unwrap();
    assert_eq!(g.len(), 81);
    assert!(g.iter().filter(|v| v.is_finite()).all(|&v| v > 0.0));
    assert!(density_grid_impl("inv", "linf:2", "countex1", "", 9).is_err());
    assert!(density_grid_impl("inv", "linf:2", "countex1", "0.2", 1).is_err());
}

#[test]
fn distances() {
    let d = distance_impl("linf:1", "0.5", "-0.5").unwrap();
    assert!((d[0] - 0.8).abs() < 1e-15);
    assert!((d[1] - 0.8f64.atanh()).abs() < 1e-15);
    assert!(distance_impl("lp:3:2", "0.1,0.1", "0.2,0").is_err());
    assert!(distance_impl("linf:1", "2", "0").is_err());
}

#[test]
fn mobius_swaps_zero_and_a() {
    let w = mobius_image_impl("0.3+0.4i", 0.0, &[0.0, 0.0, 0.3, 0.4]).unwrap();
    assert!((w[0] - 0.3).abs() < 1e-15 && (w[1] - 0.4).abs() < 1e-15);
    assert!(w[2].abs() < 1e-15 && w[3].abs() < 1e-15);
    assert!(mobius_image_impl("1.2", 0.0, &[]).is_err());
}

#[test]
fn seminorm_json() {
    let s = seminorm_impl("inv", "lp:3:2", "reciprocal", 500, 1).unwrap();
    assert!(s.starts_with("{\"value\":1,"), "{s}");
    let s = seminorm_impl("inv", "linf:2", "countex1", 4000, 1).unwrap();
    assert!(s.contains("\"divergent\":true"), "{s}");
    assert!(seminorm_impl("nat", "linf:1", "x1*x2", 10, 1).is_err());
}
