//! Exact polynomial arithmetic in the five coefficient symbols `a, b, c, d, e`
//! over the rationals, and the checker for second-order operator identities.
//!
//! # Cleared-power reduction
//!
//! The identities to verify act on fractional powers `u^s` of a polynomial
//! `u` (here `u = ±D`). For any second-order operator
//! `L = ∂ᵢ∂ⱼ − ∂ₖ∂ₗ` the chain rule gives
//!
//! ```text
//! L(u^s) = s · u^(s-2) · [ (s-1)(uᵢuⱼ − uₖuₗ) + u (uᵢⱼ − uₖₗ) ]
//! ```
//!
//! so a claim `L(u^s) = κ · E · R · u^(s-1)` holds on the open set `u > 0`
//! exactly when the polynomial
//!
//! ```text
//! s · [ (s-1)(uᵢuⱼ − uₖuₗ) + u (uᵢⱼ − uₖₗ) ] − κ · E · R · u
//! ```
//!
//! vanishes identically. The checker builds that polynomial with exact
//! rational coefficients and tests it against zero; no fractional power is
//! ever manipulated. Annihilation claims (`R = 0`) reduce to the bracket
//! alone, since `s ≠ 0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{disc3_expr, disc4_expr, e_expr, Ring};

/// One of the five coefficient symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A,
    B,
    C,
    D,
    E,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::A, Symbol::B, Symbol::C, Symbol::D, Symbol::E];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> char {
        ['a', 'b', 'c', 'd', 'e'][self.index()]
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a' => Some(Symbol::A),
            'b' => Some(Symbol::B),
            'c' => Some(Symbol::C),
            'd' => Some(Symbol::D),
            'e' => Some(Symbol::E),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// The operator `∂ᵢ∂ⱼ − ∂ₖ∂ₗ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpPair {
    pub plus: (Symbol, Symbol),
    pub minus: (Symbol, Symbol),
}

impl OpPair {
    pub const fn new(plus: (Symbol, Symbol), minus: (Symbol, Symbol)) -> Self {
        Self { plus, minus }
    }

    pub fn symbols(&self) -> [Symbol; 4] {
        [self.plus.0, self.plus.1, self.minus.0, self.minus.1]
    }

    /// Parses `"(a,c)-(b,b)"` or the short form `"ac-bb"`.
    pub fn parse(text: &str) -> Result<Self> {
        let letters: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| c.is_ascii_alphabetic())
            .collect();
        if letters.len() != 4 {
            return Err(Error::Parse {
                position: 0,
                message: format!("operator '{text}' must name four symbols"),
            });
        }
        let mut syms = [Symbol::A; 4];
        for (slot, &(pos, ch)) in syms.iter_mut().zip(&letters) {
            *slot = Symbol::from_char(ch).ok_or_else(|| Error::Parse {
                position: pos,
                message: format!("unknown symbol '{ch}'"),
            })?;
        }
        Ok(Self::new((syms[0], syms[1]), (syms[2], syms[3])))
    }
}

impl fmt::Display for OpPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})-({},{})",
            self.plus.0, self.plus.1, self.minus.0, self.minus.1
        )
    }
}

impl Serialize for OpPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Exponent vector over `(a, b, c, d, e)`, ordered graded-lexicographically
/// with `a > b > c > d > e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 5]);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0;
        for (o, x) in out.iter_mut().zip(other.0) {
            *o += x;
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse multivariate polynomial in `a..e` with exact rational coefficients.
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPolyQ {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPolyQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::default(), c);
        p
    }

    pub fn var(sym: Symbol) -> Self {
        let mut e = [0; 5];
        e[sym.index()] = 1;
        let mut p = Self::zero();
        p.add_term(Monomial(e), BigRational::one());
        p
    }

    /// Builds from `(coefficient, [i, j, k, l, m])` pairs with integer coefficients.
    pub fn from_int_terms(terms: &[(i64, [u32; 5])]) -> Self {
        let mut p = Self::zero();
        for &(c, e) in terms {
            p.add_term(Monomial(e), int(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Formal partial derivative.
    pub fn partial(&self, sym: Symbol) -> Self {
        let i = sym.index();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let p = m.0[i];
            if p == 0 {
                continue;
            }
            let mut e = m.0;
            e[i] -= 1;
            out.add_term(Monomial(e), c * int(p as i64));
        }
        out
    }

    /// Exact division by one symbol; `None` when some term is not divisible.
    pub fn div_by_symbol(&self, sym: Symbol) -> Option<Self> {
        let i = sym.index();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                return None;
            }
            let mut e = m.0;
            e[i] -= 1;
            terms.insert(Monomial(e), c.clone());
        }
        Some(Self { terms })
    }

    pub fn eval(&self, point: &[BigRational; 5]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &p) in point.iter().zip(&m.0) {
                for _ in 0..p {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64; 5]) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (x, &p) in point.iter().zip(&m.0) {
                    t *= x.powi(p as i32);
                }
                t
            })
            .sum()
    }

    /// The common weighted degree of every term under `weights`, if isobaric.
    pub fn isobaric_weight(&self, weights: [u32; 5]) -> Option<u32> {
        let mut it = self
            .terms
            .keys()
            .map(|m| m.0.iter().zip(weights).map(|(e, w)| e * w).sum::<u32>());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// GCD of the numerators when every coefficient is an integer.
    pub fn integer_content(&self) -> Option<BigInt> {
        use num_integer::Integer;
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            if !c.is_integer() {
                return None;
            }
            g = g.gcd(c.numer());
        }
        Some(g)
    }

    /// Replace every symbol by a polynomial in `a..e` and one auxiliary
    /// variable `t`.
    pub fn substitute(&self, images: &[AuxPoly; 5]) -> AuxPoly {
        let mut out = AuxPoly::zero();
        for (m, c) in &self.terms {
            let mut t = AuxPoly::constant(MultiPolyQ::constant(c.clone()));
            for (img, &p) in images.iter().zip(&m.0) {
                for _ in 0..p {
                    t = t.mul(img);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for MultiPolyQ {
    /// Canonical text form, e.g. `256 * a^3 e^3 - 4 * b^3 d^3 + 1/2 * c`.
    ///
    /// Terms appear in descending graded-lex order; exponents of one are
    /// written without `^1`; a constant term is its coefficient alone.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{mag}")?;
            let mut first = true;
            for (sym, &p) in Symbol::ALL.iter().zip(&m.0) {
                if p == 0 {
                    continue;
                }
                f.write_str(if first { " * " } else { " " })?;
                first = false;
                if p == 1 {
                    write!(f, "{sym}")?;
                } else {
                    write!(f, "{sym}^{p}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for MultiPolyQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &MultiPolyQ {
    type Output = MultiPolyQ;
    fn add(self, rhs: &MultiPolyQ) -> MultiPolyQ {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPolyQ {
    type Output = MultiPolyQ;
    fn sub(self, rhs: &MultiPolyQ) -> MultiPolyQ {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &MultiPolyQ {
    type Output = MultiPolyQ;
    fn mul(self, rhs: &MultiPolyQ) -> MultiPolyQ {
        let mut out = MultiPolyQ::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPolyQ {
    type Output = MultiPolyQ;
    fn neg(self) -> MultiPolyQ {
        self.scale(&-BigRational::one())
    }
}

impl Add for MultiPolyQ {
    type Output = MultiPolyQ;
    fn add(self, rhs: MultiPolyQ) -> MultiPolyQ {
        &self + &rhs
    }
}

impl Sub for MultiPolyQ {
    type Output = MultiPolyQ;
    fn sub(self, rhs: MultiPolyQ) -> MultiPolyQ {
        &self - &rhs
    }
}

impl Mul for MultiPolyQ {
    type Output = MultiPolyQ;
    fn mul(self, rhs: MultiPolyQ) -> MultiPolyQ {
        &self * &rhs
    }
}

impl Ring for MultiPolyQ {
    fn from_int(n: i64) -> Self {
        MultiPolyQ::constant(int(n))
    }
}

/// Polynomial in one auxiliary variable `t` with [`MultiPolyQ`] coefficients,
/// ascending powers of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuxPoly {
    coeffs: Vec<MultiPolyQ>,
}

impl AuxPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: MultiPolyQ) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c · t^power`.
    pub fn monomial(c: MultiPolyQ, power: usize) -> Self {
        let mut coeffs = vec![MultiPolyQ::zero(); power];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<MultiPolyQ>) -> Self {
        while coeffs.last().is_some_and(MultiPolyQ::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[MultiPolyQ] {
        &self.coeffs
    }

    pub fn add(&self, other: &AuxPoly) -> AuxPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = MultiPolyQ::zero();
        Self::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &AuxPoly) -> AuxPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![MultiPolyQ::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        Self::from_coeffs(out)
    }
}

// --- discriminants ---------------------------------------------------------

fn vars() -> [MultiPolyQ; 5] {
    Symbol::ALL.map(MultiPolyQ::var)
}

/// Symbolic discriminant: 5 terms for degree 3, 16 terms for degree 4.
pub fn build_discriminant(degree: u32) -> Result<MultiPolyQ> {
    let [a, b, c, d, e] = vars();
    match degree {
        3 => Ok(disc3_expr(&a, &b, &c, &d)),
        4 => Ok(disc4_expr(&a, &b, &c, &d, &e)),
        n => Err(Error::degree("3 or 4", n as usize)),
    }
}

/// `E = c² − 3bd + 12ae`.
#[allow(non_snake_case)]
pub fn build_E() -> MultiPolyQ {
    let [a, b, c, d, e] = vars();
    e_expr(&a, &b, &c, &d, &e)
}

/// Symbolic discriminant through the Sylvester determinant of `p` and `p'`,
/// expanded by cofactors (no division inside the determinant).
pub fn discriminant_via_resultant(degree: u32) -> Result<MultiPolyQ> {
    let n = degree as usize;
    if !(2..=4).contains(&n) {
        return Err(Error::degree("2, 3 or 4", n));
    }
    let p: Vec<MultiPolyQ> = Symbol::ALL[..=n]
        .iter()
        .map(|&s| MultiPolyQ::var(s))
        .collect();
    let dp: Vec<MultiPolyQ> = p[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c.scale(&int((n - i) as i64)))
        .collect();
    let m = crate::poly::sylvester_matrix(&p, &dp);
    let res = cofactor_determinant(&m);
    let signed = if (n * (n - 1) / 2) % 2 == 1 {
        -&res
    } else {
        res
    };
    signed
        .div_by_symbol(Symbol::A)
        .ok_or_else(|| Error::Domain("resultant not divisible by the leading coefficient".into()))
}

impl Zero for MultiPolyQ {
    fn zero() -> Self {
        MultiPolyQ::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn cofactor_determinant(m: &[Vec<MultiPolyQ>]) -> MultiPolyQ {
    let cols: Vec<usize> = (0..m.len()).collect();
    minor(m, 0, &cols)
}

fn minor(m: &[Vec<MultiPolyQ>], row: usize, cols: &[usize]) -> MultiPolyQ {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = MultiPolyQ::zero();
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &m[row][c] * &minor(m, row + 1, &rest);
        acc = if k % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

// --- identities -------------------------------------------------------------

/// Sign of the discriminant branch: `u = -D` (`D < 0`) or `u = +D` (`D > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Negative,
    Positive,
}

impl Branch {
    pub fn u(self, d: &MultiPolyQ) -> MultiPolyQ {
        match self {
            Branch::Negative => -d,
            Branch::Positive => d.clone(),
        }
    }
}

/// One claim `(∂ᵢ∂ⱼ − ∂ₖ∂ₗ)(u^s) = κ · E · R · u^(s−1)`, with `E ≡ 1` for
/// cubic specs and `R = 0` for annihilation claims.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentitySpec {
    pub degree: u32,
    pub op: OpPair,
    #[serde(serialize_with = "ser_display")]
    pub s: BigRational,
    pub branch: Branch,
    #[serde(skip)]
    pub u: MultiPolyQ,
    #[serde(serialize_with = "ser_display")]
    pub rhs_constant: BigRational,
    pub rhs_factor: MultiPolyQ,
}

fn ser_display<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

const fn op(i: Symbol, j: Symbol, k: Symbol, l: Symbol) -> OpPair {
    OpPair::new((i, j), (k, l))
}

use Symbol::{A, B, C, D, E};

/// The three operators annihilating the cubic closed form.
pub const CUBIC_OPERATORS: [OpPair; 3] = [op(A, D, B, C), op(B, B, A, C), op(C, C, B, D)];

/// The six quartic operators, in the order the residual factors are listed.
pub const QUARTIC_OPERATORS: [OpPair; 6] = [
    op(A, C, B, B),
    op(A, D, B, C),
    op(A, E, C, C),
    op(B, D, C, C),
    op(B, E, C, D),
    op(C, E, D, D),
];

/// `(κ numerator, κ denominator, R terms)` for `u = −D`, matching
/// [`QUARTIC_OPERATORS`] entry by entry.
#[allow(clippy::type_complexity)]
const QUARTIC_RESIDUALS: [(i64, i64, &[(i64, [u32; 5])]); 6] = [
    (-1, 36, &[(3, [0, 0, 0, 2, 0]), (-8, [0, 0, 1, 0, 1])]),
    (1, 18, &[(1, [0, 0, 1, 1, 0]), (-6, [0, 1, 0, 0, 1])]),
    (
        -1,
        9,
        &[
            (1, [0, 0, 2, 0, 0]),
            (-2, [0, 1, 0, 1, 0]),
            (-4, [1, 0, 0, 0, 1]),
        ],
    ),
    (1, 36, &[(16, [1, 0, 0, 0, 1]), (-1, [0, 1, 0, 1, 0])]),
    (-1, 18, &[(6, [1, 0, 0, 1, 0]), (-1, [0, 1, 1, 0, 0])]),
    (-1, 36, &[(3, [0, 2, 0, 0, 0]), (-8, [1, 0, 1, 0, 0])]),
];

impl IdentitySpec {
    /// Annihilation claim for the cubic closed form `C / (±D)^(−s)`.
    pub fn cubic_annihilation(op: OpPair, branch: Branch, s: BigRational) -> Self {
        let d = build_discriminant(3).expect("degree 3");
        Self {
            degree: 3,
            op,
            s,
            branch,
            u: branch.u(&d),
            rhs_constant: BigRational::zero(),
            rhs_factor: MultiPolyQ::zero(),
        }
    }

    /// The `index`-th quartic residual claim on branch `branch` with exponent
    /// `−1/12`; the `D > 0` branch flips the sign of κ.
    pub fn quartic_residual(index: usize, branch: Branch) -> Self {
        let (num, den, r) = QUARTIC_RESIDUALS[index];
        let kappa = BigRational::new(BigInt::from(num), BigInt::from(den));
        let d = build_discriminant(4).expect("degree 4");
        Self {
            degree: 4,
            op: QUARTIC_OPERATORS[index],
            s: BigRational::new((-1).into(), 12.into()),
            branch,
            u: branch.u(&d),
            rhs_constant: match branch {
                Branch::Negative => kappa,
                Branch::Positive => -kappa,
            },
            rhs_factor: MultiPolyQ::from_int_terms(r),
        }
    }

    /// All twelve quartic claims: six on `u = −D`, then six on `u = +D`.
    pub fn all_quartic_residuals() -> Vec<Self> {
        [Branch::Negative, Branch::Positive]
            .into_iter()
            .flat_map(|b| (0..6).map(move |i| Self::quartic_residual(i, b)))
            .collect()
    }

    /// The three cubic annihilation claims on both branches with `s = −1/6`.
    pub fn all_cubic_annihilations() -> Vec<Self> {
        let s = BigRational::new((-1).into(), 6.into());
        [Branch::Negative, Branch::Positive]
            .into_iter()
            .flat_map(|b| {
                let s = s.clone();
                CUBIC_OPERATORS
                    .into_iter()
                    .map(move |op| Self::cubic_annihilation(op, b, s.clone()))
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let allowed = match self.degree {
            3 => 4,
            4 => 5,
            n => return Err(Error::degree("3 or 4", n as usize)),
        };
        if self.op.symbols().iter().any(|s| s.index() >= allowed) {
            return Err(Error::Domain(format!(
                "operator {} uses a symbol outside the degree-{} coefficients",
                self.op, self.degree
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub witness: MultiPolyQ,
}

/// `(s−1)(uᵢuⱼ − uₖuₗ) + u(uᵢⱼ − uₖₗ)`: the operator applied to `u^s`,
/// divided by `s · u^(s−2)`.
pub fn cleared_operator(u: &MultiPolyQ, op: OpPair, s: &BigRational) -> MultiPolyQ {
    let first = |x: Symbol| u.partial(x);
    let (i, j) = op.plus;
    let (k, l) = op.minus;
    let gradient_part = &(&first(i) * &first(j)) - &(&first(k) * &first(l));
    let hessian_part = &u.partial(i).partial(j) - &u.partial(k).partial(l);
    &gradient_part.scale(&(s - BigRational::one())) + &(u * &hessian_part)
}

pub fn check_annihilation(spec: &IdentitySpec) -> Result<IdentityCheck> {
    spec.validate()?;
    if !spec.rhs_factor.is_zero() || !spec.rhs_constant.is_zero() {
        return Err(Error::Domain(
            "annihilation check needs a zero right-hand side".into(),
        ));
    }
    let witness = cleared_operator(&spec.u, spec.op, &spec.s);
    Ok(IdentityCheck {
        holds: witness.is_zero(),
        witness,
    })
}

pub fn check_residual_identity(spec: &IdentitySpec) -> Result<IdentityCheck> {
    spec.validate()?;
    if spec.degree != 4 {
        return Err(Error::degree("4", spec.degree as usize));
    }
    let lhs = cleared_operator(&spec.u, spec.op, &spec.s).scale(&spec.s);
    let rhs = (&(&build_E() * &spec.rhs_factor) * &spec.u).scale(&spec.rhs_constant);
    let witness = &lhs - &rhs;
    Ok(IdentityCheck {
        holds: witness.is_zero(),
        witness,
    })
}

/// Images of `a..e` under `p(x) → p(x + t)` for a quartic, as polynomials in `t`.
pub fn quartic_shift_images() -> [AuxPoly; 5] {
    // coefficient of x^(4-i) in p(x+t) = Σ_{j ≤ i} c_j · C(4-j, i-j) · t^(i-j)
    let v = vars();
    std::array::from_fn(|i| {
        let mut acc = AuxPoly::zero();
        for (j, vj) in v.iter().enumerate().take(i + 1) {
            let binom = binomial(4 - j as u64, (i - j) as u64);
            acc = acc.add(&AuxPoly::monomial(vj.scale(&int(binom as i64)), i - j));
        }
        acc
    })
}

/// Images `(a, t b, t² c, t³ d, t⁴ e)`.
pub fn weighted_scaling_images() -> [AuxPoly; 5] {
    let v = vars();
    std::array::from_fn(|i| AuxPoly::monomial(v[i].clone(), i))
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ring_examples() {
        let a = MultiPolyQ::var(A);
        let b = MultiPolyQ::var(B);
        let e = MultiPolyQ::var(E);
        let sum = &a + &b;
        assert!((&sum + &(-&sum)).is_zero());
        assert_eq!(&a * &e, &e * &a);
        let d4 = build_discriminant(4).unwrap();
        let pt = [int(1), int(0), int(0), int(0), int(1)];
        assert_eq!(d4.eval(&pt), int(256));
        assert_eq!(MultiPolyQ::zero().to_string(), "0");
    }

    #[test]
    fn partial_examples() {
        let t = MultiPolyQ::from_int_terms(&[(256, [3, 0, 0, 0, 3])]);
        assert_eq!(
            t.partial(A),
            MultiPolyQ::from_int_terms(&[(768, [2, 0, 0, 0, 3])])
        );
        let d3 = build_discriminant(3).unwrap();
        let expected = MultiPolyQ::from_int_terms(&[
            (18, [1, 1, 1, 0, 0]),
            (-4, [0, 3, 0, 0, 0]),
            (-54, [2, 0, 0, 1, 0]),
        ]);
        assert_eq!(d3.partial(D), expected);
        assert!(MultiPolyQ::constant(int(7)).partial(A).is_zero());
    }

    #[test]
    fn discriminant_term_counts() {
        assert_eq!(build_discriminant(3).unwrap().num_terms(), 5);
        assert_eq!(build_discriminant(4).unwrap().num_terms(), 16);
        assert!(build_discriminant(5).is_err());
    }

    #[test]
    fn discriminants_match_resultant_route() {
        for n in [3, 4] {
            let diff = &build_discriminant(n).unwrap() - &discriminant_via_resultant(n).unwrap();
            assert!(diff.is_zero(), "degree {n}: {diff}");
        }
        let [a, b, c, ..] = vars();
        assert_eq!(
            discriminant_via_resultant(2).unwrap(),
            crate::poly::disc2_expr(&a, &b, &c)
        );
    }

    #[test]
    fn canonical_text() {
        let d3 = build_discriminant(3).unwrap();
        assert_eq!(
            d3.to_string(),
            "-27 * a^2 d^2 + 18 * a b c d - 4 * a c^3 - 4 * b^3 d + 1 * b^2 c^2"
        );
        let p = MultiPolyQ::from_int_terms(&[(1, [0, 0, 0, 0, 0])]).scale(&q(-1, 2));
        assert_eq!(p.to_string(), "-1/2");
    }

    #[test]
    fn cubic_annihilations_hold() {
        for spec in IdentitySpec::all_cubic_annihilations() {
            let r = check_annihilation(&spec).unwrap();
            assert!(r.holds, "{} {:?}: {}", spec.op, spec.branch, r.witness);
        }
    }

    #[test]
    fn wrong_exponent_is_rejected() {
        let spec = IdentitySpec::cubic_annihilation(CUBIC_OPERATORS[0], Branch::Negative, q(-1, 2));
        let r = check_annihilation(&spec).unwrap();
        assert!(!r.holds);
        // Confirm by evaluation that the witness is not merely formally nonzero.
        let pt = [q(3, 7), q(-2, 5), q(1, 3), q(5, 2), int(0)];
        assert!(!r.witness.eval(&pt).is_zero());
    }

    #[test]
    fn quartic_residuals_hold_on_both_branches() {
        for spec in IdentitySpec::all_quartic_residuals() {
            let r = check_residual_identity(&spec).unwrap();
            assert!(r.holds, "{} {:?}: {}", spec.op, spec.branch, r.witness);
        }
    }

    #[test]
    fn perturbed_kappa_is_rejected() {
        let mut spec = IdentitySpec::quartic_residual(0, Branch::Negative);
        spec.rhs_constant = q(-1, 35);
        assert!(!check_residual_identity(&spec).unwrap().holds);
        let mut spec = IdentitySpec::quartic_residual(5, Branch::Positive);
        spec.rhs_constant = -spec.rhs_constant.clone();
        assert!(!check_residual_identity(&spec).unwrap().holds);
    }

    #[test]
    fn quartic_operators_do_not_annihilate() {
        // The quartic closed-form candidate is not annihilated by any of the six.
        let d = build_discriminant(4).unwrap();
        for op in QUARTIC_OPERATORS {
            let w = cleared_operator(&-&d, op, &q(-1, 12));
            assert!(!w.is_zero(), "{op}");
        }
    }

    #[test]
    fn invalid_specs() {
        let spec = IdentitySpec::cubic_annihilation(
            OpPair::new((A, E), (B, C)),
            Branch::Negative,
            q(-1, 6),
        );
        assert!(check_annihilation(&spec).is_err());
        let spec = IdentitySpec::quartic_residual(0, Branch::Negative);
        assert!(check_annihilation(&spec).is_err());
    }

    #[test]
    fn discriminant_content_and_weight() {
        let d4 = build_discriminant(4).unwrap();
        assert_eq!(d4.integer_content(), Some(BigInt::from(1)));
        assert_eq!(d4.isobaric_weight([0, 1, 2, 3, 4]), Some(12));
        assert_eq!(d4.isobaric_weight([1, 1, 1, 1, 1]), Some(6));
    }

    #[test]
    fn weighted_scaling_by_expansion() {
        let d4 = build_discriminant(4).unwrap();
        let scaled = d4.substitute(&weighted_scaling_images());
        for (power, c) in scaled.coeffs().iter().enumerate() {
            if power == 12 {
                assert_eq!(c, &d4);
            } else {
                assert!(c.is_zero(), "t^{power}");
            }
        }
    }

    #[test]
    fn e_is_shift_invariant() {
        let e = build_E();
        let shifted = e.substitute(&quartic_shift_images());
        assert_eq!(shifted.coeffs(), &[e]);
    }

    #[test]
    fn discriminant_is_shift_invariant() {
        let d4 = build_discriminant(4).unwrap();
        let shifted = d4.substitute(&quartic_shift_images());
        assert_eq!(shifted.coeffs(), &[d4]);
    }

    #[test]
    fn op_pair_parsing() {
        assert_eq!(OpPair::parse("(a,c)-(b,b)").unwrap(), QUARTIC_OPERATORS[0]);
        assert_eq!(OpPair::parse("ce-dd").unwrap(), QUARTIC_OPERATORS[5]);
        assert!(OpPair::parse("(a,x)-(b,b)").is_err());
        assert_eq!(QUARTIC_OPERATORS[1].to_string(), "(a,d)-(b,c)");
    }
}
