mod support;

use qotto::{dawson, erf, erfi};
use support::oracle::{rel_err, to_f64, Oracle};

#[test]
fn oracle_reproduces_known_digits() {
    let mut o = Oracle::new();
    assert_eq!(to_f64(&o.erf(1.0)), 0.8427007929497149);
    assert_eq!(to_f64(&o.erfi(1.0)), 1.6504257587975429);
    // F(1) = 0.538079506912768419...
    assert_eq!(to_f64(&o.dawson(1.0)), 0.5380795069127684);
}

#[test]
fn small_arguments_follow_the_leading_term() {
    let mut o = Oracle::new();
    for x in [1e-300, 1e-30, 1e-8] {
        assert!(rel_err(erf(x), &o.erf(x)) < 1e-15);
        assert!(rel_err(dawson(x), &o.dawson(x)) < 1e-15);
        assert!(rel_err(erfi(x).unwrap(), &o.erfi(x)) < 1e-15);
    }
}

#[test]
fn dawson_matches_oracle_across_the_seam() {
    let mut o = Oracle::new();
    for i in 0..=40 {
        let x = 6.0 + 0.025 * i as f64;
        assert!(rel_err(dawson(x), &o.dawson(x)) < 1e-14, "x = {x}");
    }
}
