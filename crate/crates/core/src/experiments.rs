//! Verification and refutation studies built on the numeric and symbolic
//! engines. Every study returns [`ExperimentRecord`]s that the CLI
//! serializes unchanged.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{self, disc3_expr, e_expr, PolyReal};
use crate::quadrature::{
    integrate_box_2d, integrate_quadratic_rational, integrate_renormalized, BoxSpec, RenormSpec,
};
use crate::special::constants;
use crate::symbolic::{OpPair, CUBIC_OPERATORS, QUARTIC_OPERATORS};

/// Verdict threshold: the ratio spread must exceed this many error budgets.
pub const REFUTATION_FACTOR: f64 = 10.0;
/// `verify_cubic_formula` rejects `|D| < MIN_CUBIC_DISC · scale⁴`.
pub const MIN_CUBIC_DISC: f64 = 1e-6;
/// FD noise may not exceed this fraction of the second-derivative scale.
pub const FD_NOISE_LIMIT: f64 = 1e-4;
/// Safety factor applied to the Richardson truncation estimate.
const TRUNCATION_SAFETY: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<f64>,
}

impl Residual {
    fn new(name: impl Into<String>, value: f64, budget: Option<f64>) -> Self {
        Self {
            name: name.into(),
            value,
            budget,
        }
    }

    pub fn passes(&self) -> bool {
        self.budget.is_none_or(|b| self.value.abs() <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub inputs: Vec<f64>,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_integral: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_deviation: Option<f64>,
    pub residuals: Vec<Residual>,
    pub notes: Vec<String>,
}

impl ExperimentRecord {
    fn new(inputs: &[f64], d: f64) -> Self {
        Self {
            inputs: inputs.to_vec(),
            d,
            e: None,
            numeric_integral: None,
            abs_error: None,
            predicted: None,
            rel_deviation: None,
            residuals: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn with_prediction(mut self, numeric: f64, abs_error: f64, predicted: f64) -> Self {
        self.numeric_integral = Some(numeric);
        self.abs_error = Some(abs_error);
        self.predicted = Some(predicted);
        self.rel_deviation = Some(((numeric - predicted) / predicted).abs());
        self
    }

    pub fn all_residuals_pass(&self) -> bool {
        self.residuals.iter().all(Residual::passes)
    }
}

fn require_degree(p: &PolyReal, n: usize) -> Result<()> {
    if p.degree() == n {
        Ok(())
    } else {
        Err(Error::degree(n.to_string(), p.degree()))
    }
}

// --- cubic -------------------------------------------------------------------

/// Numeric renormalized integral against `C₋/(−D)^(1/6)` or `C₊/D^(1/6)`.
pub fn verify_cubic_formula(p: &PolyReal, tol: f64) -> Result<ExperimentRecord> {
    require_degree(p, 3)?;
    let d = poly::discriminant_cubic(p)?;
    let floor = MIN_CUBIC_DISC * p.scale().powi(4);
    if d.abs() < floor {
        return Err(Error::Domain(format!(
            "|D| = {:e} is below {floor:e}; the closed form needs D bounded away from 0",
            d.abs()
        )));
    }
    let r = integrate_renormalized(&RenormSpec::cubic(p.clone()), tol)?;
    let predicted = constants()
        .cubic_prediction(d)
        .expect("nonzero discriminant");
    let mut rec = ExperimentRecord::new(p.coeffs(), d).with_prediction(
        r.value,
        r.abs_error_estimate,
        predicted,
    );
    rec.notes.push(if d < 0.0 {
        "branch D<0: C_minus/(-D)^(1/6)".into()
    } else {
        "branch D>0: C_plus/D^(1/6)".into()
    });
    Ok(rec)
}

/// A cubic with coefficients uniform in `[−2, 2]`, resampled until
/// `|D| ∈ [0.1, 100]`.
pub fn random_admissible_cubic<R: Rng>(rng: &mut R) -> PolyReal {
    loop {
        let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..=2.0)).collect();
        let d = disc3_expr(&c[0], &c[1], &c[2], &c[3]);
        if c[0] != 0.0 && (0.1..=100.0).contains(&d.abs()) {
            return PolyReal::new(c).expect("nonzero leading coefficient");
        }
    }
}

pub fn sample_cubics(n: usize, seed: u64) -> Vec<PolyReal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_admissible_cubic(&mut rng)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubicSampleSummary {
    pub records: Vec<ExperimentRecord>,
    pub max_rel_deviation: f64,
    /// Largest deviation of `numeric · |D|^(1/6)` from `C₋` (`D < 0`) or `C₊` (`D > 0`).
    pub max_constant_deviation: f64,
}

pub fn verify_cubic_sample(n: usize, seed: u64, tol: f64) -> Result<CubicSampleSummary> {
    let records = sample_cubics(n, seed)
        .par_iter()
        .map(|p| verify_cubic_formula(p, tol))
        .collect::<Result<Vec<_>>>()?;
    let k = constants();
    let mut max_rel = 0.0_f64;
    let mut max_const = 0.0_f64;
    for r in &records {
        max_rel = max_rel.max(r.rel_deviation.unwrap_or(f64::INFINITY));
        let numeric = r.numeric_integral.unwrap_or(f64::NAN);
        let target = if r.d < 0.0 { k.c_minus } else { k.c_plus };
        max_const = max_const.max((numeric * r.d.abs().powf(1.0 / 6.0) / target - 1.0).abs());
    }
    Ok(CubicSampleSummary {
        records,
        max_rel_deviation: max_rel,
        max_constant_deviation: max_const,
    })
}

// --- quadratic -----------------------------------------------------------------

/// `∫ℝ dx/(ax² + bx + c)` against `2π/√(−D)`, `D = b² − 4ac`.
pub fn verify_gaussian(a: f64, b: f64, c: f64, tol: f64) -> Result<ExperimentRecord> {
    let d = b * b - 4.0 * a * c;
    let r = integrate_quadratic_rational(a, b, c, tol)?;
    let predicted = constants().gaussian_constant / (-d).sqrt();
    let mut rec = ExperimentRecord::new(&[a, b, c], d).with_prediction(
        r.value,
        r.abs_error_estimate,
        predicted,
    );
    rec.residuals
        .push(Residual::new("abs_deviation", r.value - predicted, None));
    Ok(rec)
}

/// Random `(a, b, c)` with `a ∈ (0.1, 2]`, `b, c ∈ [−2, 2]` and `b² − 4ac < −0.1`.
pub fn sample_quadratics(n: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a = rng.gen_range(0.1..=2.0);
        let b = rng.gen_range(-2.0..=2.0);
        let c = rng.gen_range(-2.0..=2.0);
        if b * b - 4.0 * a * c < -0.1 {
            out.push([a, b, c]);
        }
    }
    out
}

// --- quartic sweep -------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Refuted,
    NotRefuted,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Refuted => "REFUTED",
            Verdict::NotRefuted => "NOT_REFUTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub records: Vec<ExperimentRecord>,
    pub ratios: Vec<f64>,
    /// `(max ratio − min ratio) / mean ratio`.
    pub spread: f64,
    /// Sum of the members' relative quadrature error bounds.
    pub error_budget: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Admit quartics with real roots, integrating through them.
    pub extended: bool,
}

/// Whether `p` has positive leading coefficient and no real roots.
pub fn is_positive_definite(p: &PolyReal) -> bool {
    p.leading() > 0.0
        && poly::odd_multiplicity_roots(p.coeffs(), 0.0).is_empty()
        && poly::multiple_real_root(p).is_none()
}

/// Tests `𝓕 = C / |D|^(1/12)` across a family: with `ratio = 𝓕 · |D|^(1/12)`
/// the verdict is REFUTED iff `spread > 10 × Σ relative error bounds`.
///
/// A member's relative error bound is its reported error estimate, floored
/// at the requested tolerance.
pub fn quartic_sweep(family: &[PolyReal], tol: f64, opts: SweepOptions) -> Result<SweepReport> {
    if family.is_empty() {
        return Err(Error::Domain("empty quartic family".into()));
    }
    for p in family {
        require_degree(p, 4)?;
        let d = poly::discriminant_quartic(p)?;
        if poly::is_degenerate(p, d) {
            return Err(Error::Domain(format!(
                "member {p} has D = {d:e} (numerically zero)"
            )));
        }
        if !opts.extended && !is_positive_definite(p) {
            return Err(Error::Domain(format!(
                "member {p} is not positive definite; pass the extended option to include it"
            )));
        }
    }
    let rows = family
        .par_iter()
        .map(|p| -> Result<(ExperimentRecord, f64, f64)> {
            let d = poly::discriminant_quartic(p)?;
            let r = integrate_renormalized(&RenormSpec::quartic(p.clone()), tol)?;
            let ratio = r.value * d.abs().powf(1.0 / 12.0);
            let rel_bound = r.abs_error_estimate.max(tol * r.value.abs().max(1.0)) / r.value.abs();
            let mut rec = ExperimentRecord::new(p.coeffs(), d);
            rec.e = Some(poly::invariant_E(p)?);
            rec.numeric_integral = Some(r.value);
            rec.abs_error = Some(r.abs_error_estimate);
            rec.residuals.push(Residual::new("ratio", ratio, None));
            if !is_positive_definite(p) {
                rec.notes.push("extended_definition: true".into());
            }
            Ok((rec, ratio, rel_bound))
        })
        .collect::<Result<Vec<_>>>()?;

    let ratios: Vec<f64> = rows.iter().map(|r| r.1).collect();
    // sorted sums keep the aggregate independent of member order
    let sorted = |mut v: Vec<f64>| {
        v.sort_by(f64::total_cmp);
        v
    };
    let error_budget: f64 = sorted(rows.iter().map(|r| r.2).collect()).iter().sum();
    let by_size = sorted(ratios.clone());
    let (min, max) = (by_size[0], by_size[by_size.len() - 1]);
    let mean = by_size.iter().sum::<f64>() / by_size.len() as f64;
    let spread = (max - min) / mean;
    let verdict = if spread > REFUTATION_FACTOR * error_budget {
        Verdict::Refuted
    } else {
        Verdict::NotRefuted
    };
    Ok(SweepReport {
        records: rows.into_iter().map(|r| r.0).collect(),
        ratios,
        spread,
        error_budget,
        verdict,
    })
}

/// `x⁴ + c x² + 1` for each `c`.
pub fn c_family(cs: &[f64]) -> Vec<PolyReal> {
    cs.iter()
        .map(|&c| PolyReal::new(vec![1.0, 0.0, c, 0.0, 1.0]).expect("monic"))
        .collect()
}

/// `λ (x⁴ + 1)` for each `λ`.
pub fn scaling_orbit(lambdas: &[f64]) -> Vec<PolyReal> {
    lambdas
        .iter()
        .map(|&l| PolyReal::new(vec![l, 0.0, 0.0, 0.0, l]).expect("nonzero lambda"))
        .collect()
}

// --- finite differences --------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FdOrder {
    Central2,
    Richardson4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdScheme {
    pub h: f64,
    pub order: FdOrder,
}

impl FdScheme {
    pub fn new(h: f64, order: FdOrder) -> Self {
        Self { h, order }
    }

    fn multipliers(&self) -> &'static [i32] {
        match self.order {
            FdOrder::Central2 => &[1, 2],
            FdOrder::Richardson4 => &[1, 2, 4],
        }
    }

    fn validate(&self) -> Result<()> {
        if self.h > 0.0 && self.h.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "FD step must be positive, got {}",
                self.h
            )))
        }
    }
}

impl FdScheme {
    /// Fourth-order scheme with a step suited to forms of degree `degree`.
    pub fn for_degree(degree: usize) -> Self {
        let h = if degree == 3 { 1e-3 } else { 2e-2 };
        Self::new(h, FdOrder::Richardson4)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdResidual {
    pub op: OpPair,
    pub value: f64,
    pub truncation: f64,
    pub noise: f64,
    pub budget: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdReport {
    pub record: ExperimentRecord,
    pub residuals: Vec<FdResidual>,
    /// Largest magnitude among the individual second derivatives involved.
    pub second_derivative_scale: f64,
}

type Offset = Vec<i32>;

/// Stencil `Σ w · f(base + h · offset)` for `∂ᵢ∂ⱼ` at step `m · h`.
fn second_derivative_stencil(dim: usize, i: usize, j: usize, m: i32, h: f64) -> Vec<(Offset, f64)> {
    let unit = |pairs: &[(usize, i32)]| {
        let mut o = vec![0; dim];
        for &(k, v) in pairs {
            o[k] += v;
        }
        o
    };
    let step = m as f64 * h;
    if i == j {
        let w = 1.0 / (step * step);
        vec![
            (unit(&[(i, m)]), w),
            (unit(&[]), -2.0 * w),
            (unit(&[(i, -m)]), w),
        ]
    } else {
        let w = 1.0 / (4.0 * step * step);
        vec![
            (unit(&[(i, m), (j, m)]), w),
            (unit(&[(i, m), (j, -m)]), -w),
            (unit(&[(i, -m), (j, m)]), -w),
            (unit(&[(i, -m), (j, -m)]), w),
        ]
    }
}

/// One evaluation: value and an absolute error bound.
type Eval = (f64, f64);

struct Evaluated {
    values: BTreeMap<Offset, Eval>,
}

impl Evaluated {
    fn apply(&self, stencil: &[(Offset, f64)]) -> (f64, f64) {
        stencil.iter().fold((0.0, 0.0), |(v, n), (o, w)| {
            let (fv, fe) = self.values[o];
            (v + w * fv, n + w.abs() * fe)
        })
    }
}

/// FD estimates of `(∂ᵢ∂ⱼ − ∂ₖ∂ₗ) f` at `base` with truncation and noise
/// budgets. All stencil points are evaluated concurrently.
fn fd_operator_residuals<F>(
    f: F,
    base: &[f64],
    scheme: &FdScheme,
    ops: &[OpPair],
) -> Result<(Vec<FdResidual>, f64)>
where
    F: Fn(&[f64]) -> Result<Eval> + Sync,
{
    scheme.validate()?;
    let dim = base.len();
    let h = scheme.h;
    let stencil = |(i, j): (crate::symbolic::Symbol, crate::symbolic::Symbol), m: i32| {
        second_derivative_stencil(dim, i.index(), j.index(), m, h)
    };
    let mut offsets: BTreeSet<Offset> = BTreeSet::new();
    for op in ops {
        if op.symbols().iter().any(|s| s.index() >= dim) {
            return Err(Error::Domain(format!(
                "operator {op} needs more than {dim} coefficients"
            )));
        }
        for &m in scheme.multipliers() {
            for term in [op.plus, op.minus] {
                offsets.extend(stencil(term, m).into_iter().map(|(o, _)| o));
            }
        }
    }
    let offsets: Vec<Offset> = offsets.into_iter().collect();
    let evaluated = offsets
        .par_iter()
        .map(|o| {
            let point: Vec<f64> = base.iter().zip(o).map(|(b, k)| b + *k as f64 * h).collect();
            f(&point).map(|e| (o.clone(), e))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let ev = Evaluated { values: evaluated };

    let mut scale = 0.0_f64;
    let mut out = Vec::with_capacity(ops.len());
    for op in ops {
        // D_m = ∂ᵢ∂ⱼ − ∂ₖ∂ₗ at step m·h, with its noise bound
        let mut d = BTreeMap::new();
        for &m in scheme.multipliers() {
            let (p, pn) = ev.apply(&stencil(op.plus, m));
            let (q, qn) = ev.apply(&stencil(op.minus, m));
            if m == 1 {
                scale = scale.max(p.abs()).max(q.abs());
            }
            d.insert(m, (p - q, pn + qn));
        }
        let (value, truncation, noise) = match scheme.order {
            FdOrder::Central2 => {
                let (d1, n1) = d[&1];
                let (d2, _) = d[&2];
                (d1, (d1 - d2).abs() / 3.0, n1)
            }
            FdOrder::Richardson4 => {
                let (d1, n1) = d[&1];
                let (d2, n2) = d[&2];
                let (d4, _) = d[&4];
                let r1 = (4.0 * d1 - d2) / 3.0;
                let r2 = (4.0 * d2 - d4) / 3.0;
                (r1, (r1 - r2).abs() / 15.0, (4.0 * n1 + n2) / 3.0)
            }
        };
        out.push(FdResidual {
            op: *op,
            value,
            truncation,
            noise,
            budget: TRUNCATION_SAFETY * truncation + noise,
        });
    }
    let worst_noise = out.iter().map(|r| r.noise).fold(0.0, f64::max);
    if worst_noise > FD_NOISE_LIMIT * scale {
        return Err(Error::StepTooSmall {
            noise: worst_noise,
            bound: FD_NOISE_LIMIT * scale,
        });
    }
    Ok((out, scale))
}

fn fd_record(base: &[f64], d: f64, residuals: &[FdResidual]) -> ExperimentRecord {
    let mut rec = ExperimentRecord::new(base, d);
    rec.residuals = residuals
        .iter()
        .map(|r| Residual::new(r.op.to_string(), r.value, Some(r.budget)))
        .collect();
    rec
}

/// FD residuals of the six quartic operators on `𝓕 = √π/2 ∫ℝ |p|^(−1/2)`.
pub fn fd_residuals_quartic(base: &PolyReal, scheme: &FdScheme, tol: f64) -> Result<FdReport> {
    fd_residuals_quartic_ops(base, scheme, tol, &QUARTIC_OPERATORS)
}

pub fn fd_residuals_quartic_ops(
    base: &PolyReal,
    scheme: &FdScheme,
    tol: f64,
    ops: &[OpPair],
) -> Result<FdReport> {
    require_degree(base, 4)?;
    if !is_positive_definite(base) {
        return Err(Error::Domain(format!(
            "base {base} is not positive definite"
        )));
    }
    let eval = |c: &[f64]| -> Result<Eval> {
        let p = PolyReal::new(c.to_vec())?;
        if !is_positive_definite(&p) {
            return Err(Error::Domain(format!(
                "FD perturbation {p} left the positive-definite region"
            )));
        }
        let r = integrate_renormalized(&RenormSpec::quartic(p), tol)?;
        Ok((
            r.value,
            r.abs_error_estimate.max(tol * r.value.abs().max(1.0)),
        ))
    };
    let (residuals, scale) = fd_operator_residuals(eval, base.coeffs(), scheme, ops)?;
    let mut record = fd_record(base.coeffs(), poly::discriminant_quartic(base)?, &residuals);
    record.e = Some(poly::invariant_E(base)?);
    Ok(FdReport {
        record,
        residuals,
        second_derivative_scale: scale,
    })
}

/// FD residuals of the three cubic operators on the closed form
/// `C± · |D|^s` (`s = −1/6` for the true formula).
pub fn fd_residuals_cubic_closed_form(
    base: &PolyReal,
    scheme: &FdScheme,
    exponent: f64,
) -> Result<FdReport> {
    require_degree(base, 3)?;
    let d0 = poly::discriminant_cubic(base)?;
    let floor = MIN_CUBIC_DISC * base.scale().powi(4);
    if d0.abs() < floor {
        return Err(Error::Domain(format!(
            "|D| = {:e} too small at the base point",
            d0.abs()
        )));
    }
    let k = constants();
    let constant = if d0 < 0.0 { k.c_minus } else { k.c_plus };
    let eval = |c: &[f64]| -> Result<Eval> {
        let d = disc3_expr(&c[0], &c[1], &c[2], &c[3]);
        if d.signum() != d0.signum() || d.abs() < floor {
            return Err(Error::Domain(format!(
                "FD perturbation crossed D = 0 (D = {d:e})"
            )));
        }
        let abs = c.iter().map(|v| v.abs()).collect::<Vec<_>>();
        let term_mass = disc3_expr(&abs[0], &abs[1], &abs[2], &abs[3])
            .abs()
            .max(d.abs());
        let v = constant * d.abs().powf(exponent);
        let rel = 8.0 * f64::EPSILON * (exponent.abs() * term_mass / d.abs() + 1.0);
        Ok((v, v.abs() * rel))
    };
    let (residuals, scale) = fd_operator_residuals(eval, base.coeffs(), scheme, &CUBIC_OPERATORS)?;
    let mut record = fd_record(base.coeffs(), d0, &residuals);
    record.notes.push(format!("closed form C*|D|^({exponent})"));
    Ok(FdReport {
        record,
        residuals,
        second_derivative_scale: scale,
    })
}

// --- Z2 symmetry ------------------------------------------------------------

/// `|F(a,b,c,d) − F(−a,−b,−c,−d)|` against `2 × (sum of error estimates)`.
pub fn z2_symmetry_check(spec: &BoxSpec) -> Result<ExperimentRecord> {
    let f = integrate_box_2d(spec)?;
    let g = integrate_box_2d(&spec.negated())?;
    let mut inputs = spec.coeffs.to_vec();
    inputs.push(spec.r);
    let [a, b, c, d] = spec.coeffs;
    let mut rec = ExperimentRecord::new(&inputs, disc3_expr(&a, &b, &c, &d));
    rec.numeric_integral = Some(f.value);
    rec.abs_error = Some(f.abs_error_estimate);
    rec.residuals
        .push(Residual::new("F(-coeffs)", g.value, None));
    rec.residuals.push(Residual::new(
        "z2_defect",
        f.value - g.value,
        Some(2.0 * (f.abs_error_estimate + g.abs_error_estimate)),
    ));
    Ok(rec)
}

/// Boxes with coefficients uniform in `[−2, 2]` and `R ∈ [0.5, 2]`.
pub fn sample_boxes(n: usize, seed: u64, tol: f64) -> Vec<BoxSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let coeffs = [(); 4].map(|_| rng.gen_range(-2.0..=2.0));
            BoxSpec::new(coeffs, rng.gen_range(0.5..=2.0), tol)
        })
        .collect()
}

// --- E probes -----------------------------------------------------------------

/// Reports how `E = c² − 3bd + 12ae` behaves under shifts `x → x + t`,
/// coefficient reversal, and the weighted scaling `(a, λb, λ²c, λ³d, λ⁴e)`.
/// Each residual is a difference that vanishes when `E` is invariant
/// (scalings are divided by `λ⁴` first).
#[allow(non_snake_case)]
pub fn probe_E(p: &PolyReal, shifts: &[f64], scales: &[f64]) -> Result<ExperimentRecord> {
    require_degree(p, 4)?;
    let e0 = poly::invariant_E(p)?;
    let e_of = |c: &[f64]| e_expr(&c[0], &c[1], &c[2], &c[3], &c[4]);
    let mut rec = ExperimentRecord::new(p.coeffs(), poly::discriminant_quartic(p)?);
    rec.e = Some(e0);
    for &t in shifts {
        let shifted = p.shifted(t);
        rec.residuals.push(Residual::new(
            format!("E(p(x + ({t}))) - E"),
            e_of(shifted.coeffs()) - e0,
            None,
        ));
    }
    let reversed: Vec<f64> = p.coeffs().iter().rev().copied().collect();
    rec.residuals
        .push(Residual::new("E(reversed) - E", e_of(&reversed) - e0, None));
    for &l in scales {
        let c = p.coeffs();
        let weighted = [
            c[0],
            l * c[1],
            l * l * c[2],
            l.powi(3) * c[3],
            l.powi(4) * c[4],
        ];
        rec.residuals.push(Residual::new(
            format!("E(weighted {l})/{l}^4 - E"),
            e_of(&weighted) / l.powi(4) - e0,
            None,
        ));
    }
    rec.notes.push(
        "artifact observation: invariance of E is measured numerically here, not proven".into(),
    );
    Ok(rec)
}
