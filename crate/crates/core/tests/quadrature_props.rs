use nongauss::poly::PolyReal;
use nongauss::quadrature::{
    integrate_finite_singular, integrate_renormalized, integrate_renormalized_window,
    integrate_renormalized_with, RenormSpec,
};
use nongauss::special::beta;

fn cubic(c: [f64; 4]) -> RenormSpec {
    RenormSpec::cubic(PolyReal::new(c.to_vec()).unwrap())
}

fn samples() -> Vec<RenormSpec> {
    vec![
        cubic([1.0, 0.0, 1.0, 0.0]),
        cubic([1.0, 0.0, -1.0, 0.0]),
        cubic([0.7, -1.3, 0.2, 1.9]),
        cubic([-1.5, 0.4, 1.1, -0.3]),
        RenormSpec::quartic(PolyReal::new(vec![1.0, 0.3, 1.0, -0.2, 1.5]).unwrap()),
        RenormSpec::quartic(PolyReal::new(vec![1.0, 0.0, -3.0, 0.0, 1.0]).unwrap()),
    ]
}

#[test]
fn extra_breakpoints_do_not_change_the_value() {
    let tol = 1e-10;
    for spec in samples() {
        let base = integrate_renormalized(&spec, tol).unwrap();
        for extra in [-7.3, -0.41, 0.05, 2.2, 13.0] {
            let split = integrate_renormalized_with(&spec, tol, &[extra]).unwrap();
            assert!(
                (split.value - base.value).abs() <= 2.0 * tol * base.value.abs().max(1.0),
                "{} at {extra}: {} vs {}",
                spec.p,
                split.value,
                base.value
            );
        }
    }
}

#[test]
fn tails_match_extrapolated_truncation() {
    // |x³ + x|^(−2/3) is even with tail 2(1/R − (2/9)/R³ + …); eliminate both terms
    let tol = 1e-10;
    let spec = cubic([1.0, 0.0, 1.0, 0.0]);
    let full = integrate_renormalized(&spec, tol).unwrap().value;
    let window = |r: f64| {
        integrate_renormalized_window(&spec, -r, r, tol)
            .unwrap()
            .value
    };
    let r = 250.0;
    let (i1, i2, i4) = (window(r), window(2.0 * r), window(4.0 * r));
    // I(R) = I − c₁/R − c₃/R³
    let a = 2.0 * i2 - i1;
    let b = 2.0 * i4 - i2;
    let extrapolated = (8.0 * b - a) / 7.0;
    assert!(
        (extrapolated - full).abs() <= 5.0 * tol * full,
        "tail {full} vs truncation {extrapolated}"
    );
}

#[test]
fn cubic_scaling_law() {
    for spec in samples().into_iter().filter(|s| s.p.degree() == 3) {
        let base = integrate_renormalized(&spec, 1e-11).unwrap().value;
        for lambda in [2.0, 10.0] {
            let scaled = RenormSpec::cubic(spec.p.scaled(lambda).unwrap());
            let v = integrate_renormalized(&scaled, 1e-11).unwrap().value;
            let want = lambda.powf(-2.0 / 3.0) * base;
            assert!(((v - want) / want).abs() <= 1e-7, "{} λ={lambda}", spec.p);
        }
    }
}

#[test]
fn tightening_tolerance_stays_within_loose_estimate() {
    for spec in samples() {
        for tol in [1e-4, 1e-6, 1e-8, 1e-10] {
            let loose = integrate_renormalized(&spec, tol).unwrap();
            let tight = integrate_renormalized(&spec, tol / 10.0).unwrap();
            assert!(
                (tight.value - loose.value).abs()
                    <= loose
                        .abs_error_estimate
                        .max(4.0 * f64::EPSILON * loose.value.abs()),
                "{} tol={tol}: {} vs {} (est {})",
                spec.p,
                loose.value,
                tight.value,
                loose.abs_error_estimate
            );
        }
    }
}

#[test]
fn beta_matches_its_defining_integral() {
    for (p, q) in [(0.5, 1.0 / 6.0), (1.0 / 3.0, 1.0 / 3.0), (0.5, 0.5)] {
        let r = integrate_finite_singular(
            |a| a.from_lo.powf(p - 1.0) * a.from_hi.powf(q - 1.0),
            0.0,
            1.0,
            1e-12,
        )
        .unwrap();
        let b = beta(p, q).unwrap();
        assert!(r.converged);
        assert!(
            (r.value - b).abs() <= 1e-8,
            "B({p},{q}): {} vs {b}",
            r.value
        );
    }
}
