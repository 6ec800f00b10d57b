//! Univariate polynomials with their discriminants and real roots.
//!
//! Coefficients are stored highest degree first, so a cubic `ax³+bx²+cx+d`
//! is `[a, b, c, d]` and a quartic is `[a, b, c, d, e]`.
//!
//! Discriminants are available through two independent routes: the explicit
//! expansions (degree 2, 3 and 4) and the Sylvester resultant
//! `disc(p) = (-1)^(n(n-1)/2) / a_n * Res(p, p')`, evaluated exactly over the
//! rationals with fraction-free (Bareiss) elimination.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative threshold below which a discriminant counts as zero:
/// `|D| < DEGENERACY_THRESHOLD * scale^(2n-2)` with `scale = max |coeff|`.
pub const DEGENERACY_THRESHOLD: f64 = 1e-10;

/// Dense real polynomial, highest degree first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolyReal {
    coeffs: Vec<f64>,
}

impl PolyReal {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidCoefficients);
        }
        if coeffs[0] == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Cauchy bound `1 + max |c_i / c_n|`; every root satisfies `|r| < bound`.
    pub fn cauchy_bound(&self) -> f64 {
        let lead = self.leading().abs();
        1.0 + self.coeffs[1..]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs() / lead))
    }

    /// `λ · p(x)`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c * lambda).collect())
    }

    /// Coefficients of `p(x + t)`.
    pub fn shifted(&self, t: f64) -> Self {
        Self {
            coeffs: taylor_shift(&self.coeffs, t),
        }
    }

    /// Coefficients in reverse order, i.e. `x^n p(1/x)`. Fails when the
    /// constant term is zero.
    pub fn reversed(&self) -> Result<Self> {
        Self::new(self.coeffs.iter().rev().copied().collect())
    }

    pub fn to_exact(&self) -> Result<PolyExactQ> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| BigRational::from_f64(c).ok_or(Error::InvalidCoefficients))
            .collect::<Result<Vec<_>>>()?;
        PolyExactQ::new(coeffs)
    }
}

impl fmt::Display for PolyReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let k = n - i;
            if !first {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            } else if c < 0.0 {
                f.write_str("-")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}x", c.abs())?,
                _ => write!(f, "{}x^{}", c.abs(), k)?,
            }
        }
        Ok(())
    }
}

/// Exact mirror of [`PolyReal`] over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExactQ {
    coeffs: Vec<BigRational>,
}

impl PolyExactQ {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidCoefficients);
        }
        if coeffs[0].is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn derivative(&self) -> Vec<BigRational> {
        let n = self.degree();
        self.coeffs[..n]
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(n - i)))
            .collect()
    }

    pub fn to_real(&self) -> Result<PolyReal> {
        PolyReal::new(
            self.coeffs
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect(),
        )
    }
}

// --- explicit expansions -------------------------------------------------

/// Commutative ring with integer constants: enough to evaluate the explicit
/// expansions in `f64`, exactly over the rationals, or symbolically.
pub trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn from_int(n: i64) -> Self;
}

impl Ring for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
}

impl Ring for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

fn k<T: Ring>(n: i64) -> T {
    T::from_int(n)
}

/// `b² − 4ac`.
pub fn disc2_expr<T: Ring>(a: &T, b: &T, c: &T) -> T {
    b.clone() * b.clone() - k::<T>(4) * a.clone() * c.clone()
}

/// `b²c² + 18abcd − 4ac³ − 4b³d − 27a²d²`.
pub fn disc3_expr<T: Ring>(a: &T, b: &T, c: &T, d: &T) -> T {
    let (a, b, c, d) = (a.clone(), b.clone(), c.clone(), d.clone());
    let b2 = b.clone() * b.clone();
    let c2 = c.clone() * c.clone();
    b2.clone() * c2.clone() + k::<T>(18) * a.clone() * b.clone() * c.clone() * d.clone()
        - k::<T>(4) * a.clone() * c2 * c
        - k::<T>(4) * b2 * b * d.clone()
        - k::<T>(27) * a.clone() * a * d.clone() * d
}

/// The sixteen-term quartic discriminant.
pub fn disc4_expr<T: Ring>(a: &T, b: &T, c: &T, d: &T, e: &T) -> T {
    let m = |parts: &[(&T, u32)], coef: i64| -> T {
        let mut acc = k::<T>(coef);
        for (v, p) in parts {
            for _ in 0..*p {
                acc = acc * (*v).clone();
            }
        }
        acc
    };
    m(&[(a, 3), (e, 3)], 256)
        + m(&[(b, 3), (d, 3)], -4)
        + m(&[(a, 2), (d, 4)], -27)
        + m(&[(b, 4), (e, 2)], -27)
        + m(&[(a, 2), (c, 2), (e, 2)], -128)
        + m(&[(b, 2), (c, 2), (d, 2)], 1)
        + m(&[(a, 1), (c, 4), (e, 1)], 16)
        + m(&[(a, 1), (c, 3), (d, 2)], -4)
        + m(&[(b, 2), (c, 3), (e, 1)], -4)
        + m(&[(a, 2), (c, 1), (d, 2), (e, 1)], 144)
        + m(&[(a, 1), (b, 2), (d, 2), (e, 1)], -6)
        + m(&[(a, 1), (b, 2), (c, 1), (e, 2)], 144)
        + m(&[(a, 2), (b, 1), (d, 1), (e, 2)], -192)
        + m(&[(a, 1), (b, 1), (c, 1), (d, 3)], 18)
        + m(&[(b, 3), (c, 1), (d, 1), (e, 1)], 18)
        + m(&[(a, 1), (b, 1), (c, 2), (d, 1), (e, 1)], -80)
}

/// `c² − 3bd + 12ae`.
pub fn e_expr<T: Ring>(a: &T, b: &T, c: &T, d: &T, e: &T) -> T {
    c.clone() * c.clone() - k::<T>(3) * b.clone() * d.clone() + k::<T>(12) * a.clone() * e.clone()
}

fn explicit_by_degree<T: Ring>(c: &[T]) -> Result<T> {
    match c.len() - 1 {
        2 => Ok(disc2_expr(&c[0], &c[1], &c[2])),
        3 => Ok(disc3_expr(&c[0], &c[1], &c[2], &c[3])),
        4 => Ok(disc4_expr(&c[0], &c[1], &c[2], &c[3], &c[4])),
        n => Err(Error::degree("2, 3 or 4", n)),
    }
}

pub fn discriminant_cubic(p: &PolyReal) -> Result<f64> {
    if p.degree() != 3 {
        return Err(Error::degree("3", p.degree()));
    }
    let c = p.coeffs();
    Ok(disc3_expr(&c[0], &c[1], &c[2], &c[3]))
}

pub fn discriminant_quartic(p: &PolyReal) -> Result<f64> {
    if p.degree() != 4 {
        return Err(Error::degree("4", p.degree()));
    }
    let c = p.coeffs();
    Ok(disc4_expr(&c[0], &c[1], &c[2], &c[3], &c[4]))
}

/// Explicit-expansion discriminant for degrees 2, 3 and 4.
pub fn discriminant(p: &PolyReal) -> Result<f64> {
    explicit_by_degree(p.coeffs())
}

/// Explicit expansions evaluated exactly.
pub fn discriminant_explicit_exact(p: &PolyExactQ) -> Result<BigRational> {
    explicit_by_degree(p.coeffs())
}

#[allow(non_snake_case)]
pub fn invariant_E(p: &PolyReal) -> Result<f64> {
    if p.degree() != 4 {
        return Err(Error::degree("4", p.degree()));
    }
    let c = p.coeffs();
    Ok(e_expr(&c[0], &c[1], &c[2], &c[3], &c[4]))
}

#[allow(non_snake_case)]
pub fn invariant_E_exact(p: &PolyExactQ) -> Result<BigRational> {
    if p.degree() != 4 {
        return Err(Error::degree("4", p.degree()));
    }
    let c = p.coeffs();
    Ok(e_expr(&c[0], &c[1], &c[2], &c[3], &c[4]))
}

// --- resultant route -----------------------------------------------------

/// Sylvester matrix of `p` (degree m) and `q` (degree n), size (m+n)².
pub fn sylvester_matrix<T: Clone + Zero>(p: &[T], q: &[T]) -> Vec<Vec<T>> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![T::zero(); size];
        row[shift..shift + m + 1].clone_from_slice(p);
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![T::zero(); size];
        row[shift..shift + n + 1].clone_from_slice(q);
        rows.push(row);
    }
    rows
}

/// Determinant by Bareiss fraction-free elimination. Every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut sign = BigRational::one();
    let mut prev = BigRational::one();
    for kk in 0..n - 1 {
        if m[kk][kk].is_zero() {
            match (kk + 1..n).find(|&r| !m[r][kk].is_zero()) {
                Some(r) => {
                    m.swap(kk, r);
                    sign = -sign;
                }
                None => return BigRational::zero(),
            }
        }
        for i in kk + 1..n {
            for j in kk + 1..n {
                let v = (&m[i][j] * &m[kk][kk] - &m[i][kk] * &m[kk][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[kk][kk].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// `(-1)^(n(n-1)/2) / a_n · Res(p, p')`, exactly.
pub fn discriminant_resultant(p: &PolyExactQ) -> Result<BigRational> {
    let n = p.degree();
    if !(2..=4).contains(&n) {
        return Err(Error::degree("2, 3 or 4", n));
    }
    let res = bareiss_determinant(sylvester_matrix(p.coeffs(), &p.derivative()));
    let signed = if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    };
    Ok(signed / &p.coeffs()[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ExplicitFormula,
    Resultant,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminantReport {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(skip)]
    pub d_exact: Option<BigRational>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub e: Option<f64>,
    pub route: Route,
}

impl DiscriminantReport {
    pub fn from_real(p: &PolyReal) -> Result<Self> {
        let exact = p.to_exact()?;
        let d_exact = discriminant_explicit_exact(&exact)?;
        Ok(Self {
            d: discriminant(p)?,
            d_exact: Some(d_exact),
            e: (p.degree() == 4).then(|| invariant_E(p)).transpose()?,
            route: Route::ExplicitFormula,
        })
    }

    pub fn from_exact(p: &PolyExactQ, route: Route) -> Result<Self> {
        let d = match route {
            Route::ExplicitFormula => discriminant_explicit_exact(p)?,
            Route::Resultant => discriminant_resultant(p)?,
        };
        let e = if p.degree() == 4 {
            invariant_E_exact(p)?.to_f64()
        } else {
            None
        };
        Ok(Self {
            d: d.to_f64().unwrap_or(f64::NAN),
            d_exact: Some(d),
            e,
            route,
        })
    }
}

/// Whether `d` is numerically zero relative to the coefficient scale of `p`.
pub fn is_degenerate(p: &PolyReal, d: f64) -> bool {
    d.abs() < degeneracy_threshold(p)
}

pub fn degeneracy_threshold(p: &PolyReal) -> f64 {
    DEGENERACY_THRESHOLD * p.scale().powi(2 * p.degree() as i32 - 2)
}

// --- real roots ----------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    pub real_roots: Vec<f64>,
    pub multiplicities: Vec<u32>,
    pub certified_simple: bool,
}

/// Locate every real root of `p` to absolute accuracy `tol`.
///
/// Roots are bracketed on monotone pieces: the grid is the Cauchy bound
/// `±B` together with the critical points of `p` (found recursively from
/// `p'`), so each piece holds at most one root. Brackets are bisected to
/// `tol` and polished with Newton steps that stay inside the bracket.
///
/// Requires `|D|` above the degeneracy threshold so that every root is
/// simple; otherwise [`Error::IllConditioned`].
pub fn real_roots(p: &PolyReal, tol: f64) -> Result<RootSet> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "root tolerance must be positive, got {tol}"
        )));
    }
    let n = p.degree();
    if n == 0 || n > 4 {
        return Err(Error::degree("1..=4", n));
    }
    if n >= 2 {
        let d = discriminant(p)?;
        let threshold = degeneracy_threshold(p);
        if d.abs() < threshold {
            return Err(Error::IllConditioned { disc: d, threshold });
        }
    }
    let roots = odd_multiplicity_roots(p.coeffs(), tol);
    Ok(RootSet {
        multiplicities: vec![1; roots.len()],
        real_roots: roots,
        certified_simple: true,
    })
}

/// Roots where `p` changes sign (odd multiplicity), sorted, uncertified.
pub(crate) fn odd_multiplicity_roots(coeffs: &[f64], tol: f64) -> Vec<f64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-coeffs[1] / coeffs[0]];
    }
    let lead = coeffs[0].abs();
    let bound = 1.0
        + coeffs[1..]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs() / lead));
    let dcoeffs = derivative(coeffs);
    let mut grid = vec![-bound];
    grid.extend(
        odd_multiplicity_roots(&dcoeffs, tol)
            .into_iter()
            .filter(|c| c.abs() < bound),
    );
    grid.push(bound);

    let mut roots: Vec<f64> = Vec::new();
    for w in grid.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (flo, fhi) = (horner(coeffs, lo), horner(coeffs, hi));
        let found = if flo == 0.0 {
            Some(lo)
        } else if fhi == 0.0 {
            Some(hi)
        } else if flo.signum() != fhi.signum() {
            Some(bisect_polish(coeffs, &dcoeffs, lo, hi, flo, tol))
        } else {
            None
        };
        if let Some(r) = found {
            if roots.last().is_none_or(|&last| r > last) {
                roots.push(r);
            }
        }
    }
    roots
}

fn bisect_polish(c: &[f64], dc: &[f64], mut lo: f64, mut hi: f64, flo: f64, tol: f64) -> f64 {
    let neg_lo = flo < 0.0;
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            break;
        }
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let fx = horner(c, x);
        let dfx = horner(dc, x);
        if fx == 0.0 || dfx == 0.0 {
            break;
        }
        let next = x - fx / dfx;
        if !(next >= lo && next <= hi) || next == x {
            break;
        }
        x = next;
    }
    x
}

/// Location of a real root shared by `p` and `p'` (within tolerance), if any.
///
/// A real root of multiplicity `m ≥ 2` is a sign-changing root of
/// `p^(m-1)`, so the sign-change roots of `p, p', p'', …` cover every
/// candidate.
pub fn multiple_real_root(p: &PolyReal) -> Option<f64> {
    let c = p.coeffs();
    let dc = derivative(c);
    let mut layer = c.to_vec();
    let mut candidates = Vec::new();
    while layer.len() > 1 {
        candidates.extend(odd_multiplicity_roots(&layer, 0.0));
        layer = derivative(&layer);
    }
    candidates.into_iter().find(|&x| {
        let sp = running_scale(c, x);
        let sdp = running_scale(&dc, x);
        horner(c, x).abs() <= 1e-8 * sp && horner(&dc, x).abs() <= 1e-4 * sdp
    })
}

/// `Σ |c_i| |x|^i`: the magnitude scale of a polynomial evaluation at `x`.
fn running_scale(c: &[f64], x: f64) -> f64 {
    horner(&c.iter().map(|v| v.abs()).collect::<Vec<_>>(), x.abs())
}

pub(crate) fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().fold(0.0, |acc, &v| acc * x + v)
}

pub(crate) fn derivative(c: &[f64]) -> Vec<f64> {
    let n = c.len() - 1;
    c[..n]
        .iter()
        .enumerate()
        .map(|(i, v)| v * (n - i) as f64)
        .collect()
}

/// Coefficients of `p(x + t)` by repeated synthetic division.
pub(crate) fn taylor_shift(c: &[f64], t: f64) -> Vec<f64> {
    let mut out = c.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in 1..n - i {
            out[j] += t * out[j - 1];
        }
    }
    out
}

/// Divide out the given real roots; returns the quotient and drops remainders.
pub(crate) fn deflate(c: &[f64], roots: &[f64]) -> Vec<f64> {
    let mut q = c.to_vec();
    for &r in roots {
        let mut next = Vec::with_capacity(q.len() - 1);
        let mut acc = 0.0;
        for &v in &q[..q.len() - 1] {
            acc = acc * r + v;
            next.push(acc);
        }
        q = next;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> PolyReal {
        PolyReal::new(c.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cubic_examples() {
        assert_eq!(discriminant_cubic(&p(&[1.0, 0.0, 1.0, 0.0])).unwrap(), -4.0);
        assert_eq!(discriminant_cubic(&p(&[1.0, 0.0, -1.0, 0.0])).unwrap(), 4.0);
        assert_eq!(
            discriminant_cubic(&p(&[1.0, -3.0, 3.0, -1.0])).unwrap(),
            0.0
        );
    }

    #[test]
    fn cubic_degree_errors() {
        assert!(matches!(
            discriminant_cubic(&p(&[1.0, 0.0, 0.0, 0.0, 1.0])),
            Err(Error::DegreeMismatch { .. })
        ));
        assert_eq!(
            PolyReal::new(vec![0.0, 1.0, 1.0, 1.0]),
            Err(Error::ZeroLeadingCoefficient)
        );
    }

    #[test]
    fn quartic_examples() {
        assert_eq!(
            discriminant_quartic(&p(&[1.0, 0.0, 0.0, 0.0, 1.0])).unwrap(),
            256.0
        );
        for c in [-3.0, -1.0, 0.5, 1.0, 2.0, 3.0] {
            let d = discriminant_quartic(&p(&[1.0, 0.0, c, 0.0, 1.0])).unwrap();
            let expected = 16.0 * (c * c - 4.0_f64).powi(2);
            assert!((d - expected).abs() <= 1e-12 * expected.max(1.0), "c={c}");
        }
        let degenerate = PolyExactQ::from_ints(&[1, 0, 2, 0, 1]).unwrap();
        assert!(discriminant_resultant(&degenerate).unwrap().is_zero());
        assert!(discriminant_explicit_exact(&degenerate).unwrap().is_zero());
    }

    #[test]
    fn resultant_examples() {
        let cases: [(&[i64], i64); 4] = [
            (&[1, 0, 1, 0], -4),
            (&[1, 0, 0, 0, 1], 256),
            (&[1, 0, 1], -4),
            (&[1, -3, 3, -1], 0),
        ];
        for (c, d) in cases {
            let poly = PolyExactQ::from_ints(c).unwrap();
            assert_eq!(discriminant_resultant(&poly).unwrap(), q(d, 1), "{c:?}");
        }
        let linear = PolyExactQ::from_ints(&[1, 2]).unwrap();
        assert!(matches!(
            discriminant_resultant(&linear),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn resultant_with_rational_coefficients() {
        let poly = PolyExactQ::new(vec![q(1, 2), q(-1, 3), q(2, 7), q(5, 11), q(-1, 1)]).unwrap();
        assert_eq!(
            discriminant_resultant(&poly).unwrap(),
            discriminant_explicit_exact(&poly).unwrap()
        );
    }

    #[test]
    fn e_examples() {
        assert_eq!(invariant_E(&p(&[1.0, 0.0, 0.0, 0.0, 1.0])).unwrap(), 12.0);
        assert_eq!(invariant_E(&p(&[1.0, 0.0, 3.0, 0.0, 1.0])).unwrap(), 21.0);
        assert_eq!(invariant_E(&p(&[1.0; 5])).unwrap(), 10.0);
        assert!(invariant_E(&p(&[1.0, 0.0, 1.0, 0.0])).is_err());
    }

    #[test]
    fn homogeneity() {
        let cubic = p(&[0.7, -1.3, 0.4, 2.1]);
        let quartic = p(&[0.7, -1.3, 0.4, 2.1, -0.6]);
        for lambda in [0.5, 2.0, 3.0] {
            let d3 = discriminant(&cubic.scaled(lambda).unwrap()).unwrap();
            let d4 = discriminant(&quartic.scaled(lambda).unwrap()).unwrap();
            let r3 = discriminant(&cubic).unwrap() * lambda.powi(4);
            let r4 = discriminant(&quartic).unwrap() * lambda.powi(6);
            assert!((d3 - r3).abs() <= 1e-12 * r3.abs());
            assert!((d4 - r4).abs() <= 1e-12 * r4.abs());
        }
    }

    #[test]
    fn e_is_shift_invariant_exactly() {
        // Integer shifts of integer coefficients stay exact in f64.
        let quartic = p(&[2.0, -1.0, 3.0, 5.0, -4.0]);
        let e = invariant_E(&quartic).unwrap();
        for t in [-3.0, -1.0, 1.0, 2.0, 7.0] {
            assert_eq!(invariant_E(&quartic.shifted(t)).unwrap(), e, "t={t}");
        }
        assert_eq!(
            p(&[1.0, 0.0, 0.0, 0.0, 1.0]).shifted(1.0).coeffs(),
            &[1.0, 4.0, 6.0, 4.0, 2.0]
        );
    }

    #[test]
    fn root_examples() {
        let r = real_roots(&p(&[1.0, 0.0, 1.0, 0.0]), 1e-14).unwrap();
        assert_eq!(r.real_roots, vec![0.0]);
        assert!(r.certified_simple);

        let r = real_roots(&p(&[1.0, 0.0, -1.0, 0.0]), 1e-14).unwrap();
        assert_eq!(r.real_roots.len(), 3);
        for (got, want) in r.real_roots.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() <= 1e-14);
        }
        assert_eq!(r.multiplicities, vec![1, 1, 1]);

        let r = real_roots(&p(&[1.0, 0.0, 1.0, 0.0, 1.0]), 1e-14).unwrap();
        assert!(r.real_roots.is_empty());
    }

    #[test]
    fn roots_reject_degenerate_input() {
        assert!(matches!(
            real_roots(&p(&[1.0, -3.0, 3.0, -1.0]), 1e-12),
            Err(Error::IllConditioned { .. })
        ));
        assert!(real_roots(&p(&[1.0, 0.0]), 0.0).is_err());
    }

    #[test]
    fn close_simple_roots_are_separated() {
        // (x - 1)(x - 1.001)(x + 2): the pair lands inside one coarse grid cell.
        let c = [1.0, 0.0 - 1.0 - 1.001 + 2.0, 1.001 - 2.0 - 2.002, 2.002];
        let r = real_roots(&p(&c), 1e-15).unwrap();
        assert_eq!(r.real_roots.len(), 3);
        assert!((r.real_roots[1] - 1.0).abs() < 1e-12);
        assert!((r.real_roots[2] - 1.001).abs() < 1e-12);
    }

    #[test]
    fn multiple_root_detection() {
        assert!(multiple_real_root(&p(&[1.0, -3.0, 3.0, -1.0])).is_some());
        assert!(multiple_real_root(&p(&[1.0, 0.0, -2.0, 0.0, 1.0])).is_some());
        // (x² + 1)² has only complex double roots.
        assert!(multiple_real_root(&p(&[1.0, 0.0, 2.0, 0.0, 1.0])).is_none());
        assert!(multiple_real_root(&p(&[1.0, 0.0, -1.0, 0.0])).is_none());
    }

    #[test]
    fn deflation_and_shift_helpers() {
        // x³ − x = x (x − 1)(x + 1)
        let q = deflate(&[1.0, 0.0, -1.0, 0.0], &[1.0, -1.0]);
        assert_eq!(q, vec![1.0, 0.0]);
        assert_eq!(taylor_shift(&[1.0, 0.0, 0.0], 2.0), vec![1.0, 4.0, 4.0]);
        assert_eq!(
            p(&[1.0, 2.0, 3.0, 4.0, 5.0]).reversed().unwrap().coeffs(),
            &[5.0, 4.0, 3.0, 2.0, 1.0]
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1.0, 0.0, -1.0, 0.0]).to_string(), "1x^3 - 1x");
        assert_eq!(p(&[-2.0, 0.5]).to_string(), "-2x + 0.5");
    }
}
