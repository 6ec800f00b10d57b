use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use nongauss::poly::{self, PolyExactQ, PolyReal};
use nongauss::special::{beta, gamma};
use nongauss::symbolic::{self, Branch, IdentitySpec, MultiPolyQ};

fn rational() -> impl Strategy<Value = BigRational> {
    (-99i64..=99, 1i64..=99).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn exact_poly(degree: usize) -> impl Strategy<Value = PolyExactQ> {
    (
        nonzero_rational(),
        prop::collection::vec(rational(), degree),
    )
        .prop_map(|(lead, mut rest)| {
            rest.insert(0, lead);
            PolyExactQ::new(rest).unwrap()
        })
}

fn real_poly(degree: usize) -> impl Strategy<Value = PolyReal> {
    (
        prop_oneof![-2.0..-0.1f64, 0.1..2.0f64],
        prop::collection::vec(-2.0..2.0f64, degree),
    )
        .prop_map(|(lead, mut rest)| {
            rest.insert(0, lead);
            PolyReal::new(rest).unwrap()
        })
}

/// Coefficients of `p(x + t)`, highest degree first, by exact binomial expansion.
fn shift_exact(c: &[BigRational], t: &BigRational) -> Vec<BigRational> {
    let n = c.len() - 1;
    let mut out = vec![BigRational::zero(); n + 1];
    for (i, ci) in c.iter().enumerate() {
        // ci · (x + t)^(n − i)
        let k = n - i;
        let mut binom = BigRational::one();
        let mut tpow = BigRational::one();
        for j in 0..=k {
            // x^(k−j) t^j
            out[n - (k - j)] += ci * &binom * &tpow;
            binom = binom * BigRational::from_integer((k - j).into())
                / BigRational::from_integer((j + 1).into());
            tpow *= t;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn resultant_route_matches_explicit_cubic(p in exact_poly(3)) {
        prop_assert_eq!(
            poly::discriminant_resultant(&p).unwrap(),
            poly::discriminant_explicit_exact(&p).unwrap()
        );
    }

    #[test]
    fn resultant_route_matches_explicit_quartic(p in exact_poly(4)) {
        prop_assert_eq!(
            poly::discriminant_resultant(&p).unwrap(),
            poly::discriminant_explicit_exact(&p).unwrap()
        );
    }

    #[test]
    fn gamma_recurrence(x in 0.1f64..20.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(((lhs - rhs) / lhs).abs() <= 1e-12, "x={x} {lhs} {rhs}");
    }
}

proptest! {
    #[test]
    fn discriminant_homogeneity(p in real_poly(3), q in real_poly(4), lambda in 0.25f64..4.0) {
        let d3 = poly::discriminant_cubic(&p).unwrap();
        let d3l = poly::discriminant_cubic(&p.scaled(lambda).unwrap()).unwrap();
        let mass3 = 30.0 * p.scale().powi(4) * lambda.powi(4);
        prop_assert!((d3l - lambda.powi(4) * d3).abs() <= 1e-13 * mass3);
        let d4 = poly::discriminant_quartic(&q).unwrap();
        let d4l = poly::discriminant_quartic(&q.scaled(lambda).unwrap()).unwrap();
        let mass4 = 1000.0 * q.scale().powi(6) * lambda.powi(6);
        prop_assert!((d4l - lambda.powi(6) * d4).abs() <= 1e-13 * mass4);
    }

    #[test]
    fn e_is_shift_invariant(p in exact_poly(4), t in rational()) {
        let shifted = PolyExactQ::new(shift_exact(p.coeffs(), &t)).unwrap();
        prop_assert_eq!(
            poly::invariant_E_exact(&shifted).unwrap(),
            poly::invariant_E_exact(&p).unwrap()
        );
    }

    #[test]
    fn roots_are_roots_and_match_sign_changes(p in real_poly(4), deg in 1usize..=4) {
        let c = &p.coeffs()[..=deg];
        prop_assume!(c[0].abs() >= 0.1);
        let p = PolyReal::new(c.to_vec()).unwrap();
        let Ok(rs) = poly::real_roots(&p, 1e-13) else { return Ok(()) };
        for &r in &rs.real_roots {
            let local = p.coeffs().iter().fold(0.0, |s, &a| s * r.abs() + a.abs());
            prop_assert!(p.eval(r).abs() <= 1e-12 * local, "p({r}) = {}", p.eval(r));
        }
        let b = p.cauchy_bound();
        let n = 40_000;
        let grid: Vec<f64> = (0..=n).map(|i| -b + 2.0 * b * i as f64 / n as f64).collect();
        let changes = grid
            .windows(2)
            .filter(|w| p.eval(w[0]).signum() * p.eval(w[1]).signum() < 0.0)
            .count();
        let spacing = 2.0 * b / n as f64;
        let min_gap = rs
            .real_roots
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        let odd = rs.multiplicities.iter().filter(|&&m| m % 2 == 1).count();
        if min_gap > 4.0 * spacing {
            prop_assert_eq!(changes, odd);
        } else {
            prop_assert!(changes <= odd);
        }
    }

    #[test]
    fn beta_symmetry(p in 0.01f64..10.0, q in 0.01f64..10.0) {
        prop_assert_eq!(beta(p, q).unwrap(), beta(q, p).unwrap());
    }
}

fn random_point(rng: &mut impl rand::Rng) -> [BigRational; 5] {
    [(); 5].map(|_| {
        BigRational::new(
            BigInt::from(rng.gen_range(-99i64..=99)),
            BigInt::from(rng.gen_range(1i64..=99)),
        )
    })
}

fn all_zero_at_random_points(w: &MultiPolyQ, seed: u64) -> bool {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..20).all(|_| w.eval(&random_point(&mut rng)).is_zero())
}

#[test]
fn witnesses_agree_with_point_evaluation() {
    let mut seed = 0;
    for spec in IdentitySpec::all_cubic_annihilations() {
        let check = symbolic::check_annihilation(&spec).unwrap();
        seed += 1;
        assert_eq!(check.holds, all_zero_at_random_points(&check.witness, seed));
        assert!(check.holds);
    }
    for spec in IdentitySpec::all_quartic_residuals() {
        let check = symbolic::check_residual_identity(&spec).unwrap();
        seed += 1;
        assert_eq!(check.holds, all_zero_at_random_points(&check.witness, seed));
        assert!(check.holds);
    }
}

#[test]
fn broken_claims_have_nonzero_witness_values() {
    let half = BigRational::new((-1).into(), 2.into());
    for op in symbolic::CUBIC_OPERATORS {
        let spec = IdentitySpec::cubic_annihilation(op, Branch::Negative, half.clone());
        let check = symbolic::check_annihilation(&spec).unwrap();
        assert!(!check.holds);
        assert!(!all_zero_at_random_points(&check.witness, 99));
    }
    let mut spec = IdentitySpec::quartic_residual(2, Branch::Positive);
    spec.rhs_constant = -spec.rhs_constant.clone();
    let check = symbolic::check_residual_identity(&spec).unwrap();
    assert!(!check.holds);
    assert!(!all_zero_at_random_points(&check.witness, 7));
}

/// Reference values from a 40-digit independent evaluation.
const GAMMA_FIXTURE: [(f64, &str); 7] = [
    (1.0 / 6.0, "5.5663160017802352042500968952077261"),
    (1.0 / 3.0, "2.6789385347077476336556929409746776"),
    (2.0 / 3.0, "1.3541179394264004169452880281545138"),
    (0.5, "1.7724538509055160272981674833411452"),
    (2.5, "1.3293403881791370204736256125058589"),
    (7.3, "1271.4236336639092730579936266784583"),
    (29.5, "1634812519827426644437880780686.8222"),
];

#[test]
fn gamma_matches_fixture() {
    for (x, text) in GAMMA_FIXTURE {
        let want: f64 = text.parse().unwrap();
        let got = gamma(x).unwrap();
        assert!(
            ((got - want) / want).abs() <= 1e-13,
            "gamma({x}) = {got}, want {text}"
        );
    }
}

#[test]
fn beta_matches_fixture() {
    for (p, q, text) in [
        (0.5, 1.0 / 6.0, "7.2859519436627448354598250693427937"),
        (1.0 / 3.0, 1.0 / 3.0, "5.2999162508563498719410684989453161"),
    ] {
        let want: f64 = text.parse().unwrap();
        let got = beta(p, q).unwrap();
        assert!(
            ((got - want) / want).abs() <= 1e-13,
            "beta({p},{q}) = {got}"
        );
    }
}
