//! Exact intrinsic calculus on the unit round sphere `S^n`.
//!
//! Functions are kept in canonical form as finite sums of restrictions of
//! harmonic homogeneous polynomials of pairwise distinct degrees; such
//! restrictions are linearly independent, so the representation (and hence
//! equality) is exact. The Laplace-Beltrami operator acts diagonally with
//! eigenvalue `-d(d+n-1)` on the degree-`d` component, which turns every
//! operator built from shifted Laplacians into exact rational arithmetic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::coeff::{multinomial, CoeffTable, LinearCoeffTable};
use crate::poly::Polynomial;
use crate::rational::{
    double_factorial, format_rational, parse_rational, rat, Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SphereError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial of degree {degree} is not harmonic")]
    NotHarmonic { degree: usize },
    #[error("expected {expected} variables, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("malformed sphere-function JSON: {0}")]
    Json(String),
}

/// A harmonic homogeneous polynomial on `R^{n+1}`, the Cartesian carrier of
/// one spherical-harmonic component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicPolynomial {
    n: u32,
    degree: usize,
    poly: Polynomial,
}

impl HarmonicPolynomial {
    pub fn new(n: u32, poly: Polynomial) -> Result<Self, SphereError> {
        let expected = n as usize + 1;
        if poly.nvars() != expected {
            return Err(SphereError::VariableCount {
                expected,
                got: poly.nvars(),
            });
        }
        let degree = poly
            .homogeneous_degree()
            .ok_or(SphereError::NotHomogeneous)?;
        if !poly.laplacian().is_zero() {
            return Err(SphereError::NotHarmonic { degree });
        }
        Ok(HarmonicPolynomial { n, degree, poly })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }
}

/// A function on `S^n` in canonical form: one harmonic polynomial per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereFunction {
    n: u32,
    components: BTreeMap<usize, Polynomial>,
}

impl SphereFunction {
    pub fn zero(n: u32) -> Self {
        SphereFunction {
            n,
            components: BTreeMap::new(),
        }
    }

    pub fn constant(n: u32, c: Rational) -> Self {
        let mut out = Self::zero(n);
        if !c.is_zero() {
            out.components
                .insert(0, Polynomial::constant(n as usize + 1, c));
        }
        out
    }

    pub fn one(n: u32) -> Self {
        Self::constant(n, Rational::one())
    }

    /// Restriction of an arbitrary polynomial: decompose each homogeneous
    /// part into harmonics, drop the `|x|^2` factors (which are 1 on the
    /// sphere), and merge per degree.
    pub fn from_polynomial(n: u32, p: &Polynomial) -> Self {
        assert_eq!(p.nvars(), n as usize + 1);
        let mut components: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (_, part) in p.homogeneous_components() {
            for h in harmonic_decompose(&part, n).expect("homogeneous part decomposes") {
                let entry = components
                    .entry(h.degree)
                    .or_insert_with(|| Polynomial::zero(n as usize + 1));
                *entry = entry.add(&h.poly);
            }
        }
        components.retain(|_, p| !p.is_zero());
        SphereFunction { n, components }
    }

    pub fn from_harmonic(h: HarmonicPolynomial) -> Self {
        let mut components = BTreeMap::new();
        if !h.poly.is_zero() {
            components.insert(h.degree, h.poly);
        }
        SphereFunction {
            n: h.n,
            components,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n as usize + 1
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.components.iter().map(|(&d, p)| (d, p))
    }

    pub fn component(&self, degree: usize) -> Option<&Polynomial> {
        self.components.get(&degree)
    }

    pub fn max_degree(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (d, p) in rhs.components() {
            let entry = out
                .components
                .entry(d)
                .or_insert_with(|| Polynomial::zero(self.nvars()));
            *entry = entry.add(p);
        }
        out.components.retain(|_, p| !p.is_zero());
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SphereFunction {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|(&d, p)| (d, p.scale(c)))
                .collect(),
        }
    }

    /// Maps the degree-`d` component to `eigenvalue(d)` times itself.
    pub fn spectral_map(&self, eigenvalue: impl Fn(usize) -> Rational) -> Self {
        let mut components = BTreeMap::new();
        for (&d, p) in &self.components {
            let ev = eigenvalue(d);
            if !ev.is_zero() {
                components.insert(d, p.scale(&ev));
            }
        }
        SphereFunction {
            n: self.n,
            components,
        }
    }

    /// Polynomial representative: the plain sum of the harmonic carriers.
    pub fn representative(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.nvars());
        for p in self.components.values() {
            acc = acc.add(p);
        }
        acc
    }

    /// Deterministic nonzero scalar for witness reporting: the coefficient of
    /// the lexicographically smallest monomial in the lowest-degree component.
    pub fn distinguished_coefficient(&self) -> Option<Rational> {
        self.components
            .values()
            .next()
            .and_then(|p| p.leading_coefficient())
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(&d, p)| {
                json!({
                    "degree": d,
                    "poly": poly_to_json(p),
                })
            })
            .collect();
        json!({ "n": self.n, "components": comps })
    }

    pub fn from_json(value: &Value) -> Result<Self, SphereError> {
        let obj = value
            .as_object()
            .ok_or_else(|| SphereError::Json("expected object".into()))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| SphereError::Json("missing integer field `n`".into()))?
            as u32;
        let comps = obj
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| SphereError::Json("missing array field `components`".into()))?;
        let mut acc = Polynomial::zero(n as usize + 1);
        for c in comps {
            let poly = c
                .get("poly")
                .ok_or_else(|| SphereError::Json("component missing `poly`".into()))?;
            acc = acc.add(&poly_from_json(poly, n as usize + 1)?);
        }
        // Canonicalize whatever arrived, harmonic or not.
        Ok(Self::from_polynomial(n, &acc))
    }
}

/// Serializes a polynomial as `{"e0,e1,...": "p/q", ...}`.
pub fn poly_to_json(p: &Polynomial) -> Value {
    let mut map = serde_json::Map::new();
    for (m, c) in p.terms() {
        let key = m
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        map.insert(key, Value::String(format_rational(c)));
    }
    Value::Object(map)
}

pub fn poly_from_json(value: &Value, nvars: usize) -> Result<Polynomial, SphereError> {
    let obj = value
        .as_object()
        .ok_or_else(|| SphereError::Json("expected polynomial object".into()))?;
    let mut p = Polynomial::zero(nvars);
    for (key, val) in obj {
        let exps: Vec<u32> = key
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| SphereError::Json(format!("bad exponent key `{key}`")))
            })
            .collect::<Result<_, _>>()?;
        if exps.len() != nvars {
            return Err(SphereError::VariableCount {
                expected: nvars,
                got: exps.len(),
            });
        }
        let c = val
            .as_str()
            .ok_or_else(|| SphereError::Json("coefficient must be a string".into()))
            .and_then(|s| {
                parse_rational(s).map_err(|e| SphereError::Json(format!("{e}")))
            })?;
        p.insert_term(exps, c);
    }
    Ok(p)
}

/// Splits a homogeneous polynomial `p` of degree `d` as
/// `p = sum_j |x|^(2j) h_(d-2j)` with every `h` harmonic.
///
/// Recursive scheme: decompose the flat Laplacian of `p` first; the identity
/// `Lap(|x|^(2j) h_m) = 2j(2j + 2m + N - 2) |x|^(2j-2) h_m` (in `N = n+1`
/// variables) then recovers every `h_(d-2j)`, `j >= 1`, and `h_d` is the
/// remainder. The multipliers are positive, so no division can fail.
pub fn harmonic_decompose(
    p: &Polynomial,
    n: u32,
) -> Result<Vec<HarmonicPolynomial>, SphereError> {
    let nvars = n as usize + 1;
    if p.nvars() != nvars {
        return Err(SphereError::VariableCount {
            expected: nvars,
            got: p.nvars(),
        });
    }
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let d = p.homogeneous_degree().ok_or(SphereError::NotHomogeneous)?;
    let lap = p.laplacian();
    if lap.is_zero() {
        return Ok(vec![HarmonicPolynomial {
            n,
            degree: d,
            poly: p.clone(),
        }]);
    }
    let inner = harmonic_decompose(&lap, n)?;
    let r2 = Polynomial::r_squared(nvars);
    let mut parts: Vec<HarmonicPolynomial> = Vec::new();
    let mut remainder = p.clone();
    for h in inner {
        // h carries degree d - 2j; recover j and divide by the multiplier.
        let j = (d - 2 - h.degree) / 2 + 1;
        let mult = rat(2 * j as i64)
            * rat(2 * d as i64 - 2 * j as i64 + nvars as i64 - 2);
        let piece = h.poly.scale(&(Rational::one() / mult));
        let mut weighted = piece.clone();
        for _ in 0..j {
            weighted = weighted.mul(&r2);
        }
        remainder = remainder.sub(&weighted);
        if !piece.is_zero() {
            parts.push(HarmonicPolynomial {
                n,
                degree: h.degree,
                poly: piece,
            });
        }
    }
    debug_assert!(remainder.laplacian().is_zero());
    if !remainder.is_zero() {
        parts.insert(
            0,
            HarmonicPolynomial {
                n,
                degree: d,
                poly: remainder,
            },
        );
    }
    Ok(parts)
}

/// Product in canonical form: multiply representatives and re-decompose.
pub fn sphere_multiply(u: &SphereFunction, v: &SphereFunction) -> SphereFunction {
    assert_eq!(u.n(), v.n(), "mismatched sphere dimensions");
    SphereFunction::from_polynomial(u.n(), &u.representative().mul(&v.representative()))
}

/// Laplace-Beltrami eigenvalue `-d(d+n-1)` on degree-`d` harmonics.
pub fn beltrami_eigenvalue(n: u32, d: usize) -> Rational {
    let d = d as i64;
    rat(-(d * (d + i64::from(n) - 1)))
}

pub fn laplace_beltrami(u: &SphereFunction) -> SphereFunction {
    let n = u.n();
    u.spectral_map(|d| beltrami_eigenvalue(n, d))
}

/// Eigenvalue of the shifted-Laplacian product
/// `L_(r;w) = prod_(j=0..r-1) (Lap + (w-2j)(n+w-2j-1))` on degree-`d`
/// harmonics of the unit sphere (Einstein constant fixed at `lambda = 1/2`).
pub fn shifted_eigenvalue(n: u32, d: usize, r: u32, w: &Rational) -> Rational {
    let mut acc = Rational::one();
    for j in 0..r {
        let wj = w.clone() - rat(2 * i64::from(j));
        let factor =
            beltrami_eigenvalue(n, d) + wj.clone() * (rat(i64::from(n)) + wj - Rational::one());
        acc *= factor;
    }
    acc
}

/// Applies `L_(r;w)`; `r = 0` is the identity.
pub fn shifted_laplacian(r: u32, w: &Rational, u: &SphereFunction) -> SphereFunction {
    let n = u.n();
    u.spectral_map(|d| shifted_eigenvalue(n, d, r, w))
}

/// Evaluates a basis operator intrinsically:
/// `sum_(s,t) multinom(k;s,t) a[s,t] L_(k-s-t; w1+w2-2s-2t)(L_(s;w1) u * L_(t;w2) v)`.
pub fn evaluate_or_operator(
    table: &CoeffTable,
    u: &SphereFunction,
    v: &SphereFunction,
) -> SphereFunction {
    let config = &table.config;
    assert_eq!(config.n, u.n(), "operator and input dimensions differ");
    assert_eq!(config.n, v.n(), "operator and input dimensions differ");
    let k = config.k;
    let lu = shifted_tower(u, k, &config.w1);
    let lv = shifted_tower(v, k, &config.w2);
    let mut acc = SphereFunction::zero(config.n);
    for (&(s, t), a) in &table.entries {
        let prod = sphere_multiply(&lu[s as usize], &lv[t as usize]);
        let outer_w =
            config.w1.clone() + config.w2.clone() - rat(2 * i64::from(s) + 2 * i64::from(t));
        let outer = shifted_laplacian(k - s - t, &outer_w, &prod);
        let weight = multinomial(k, s, t) * a.clone();
        acc = acc.add(&outer.scale(&weight));
    }
    acc
}

/// `[u, L_(1;w) u, L_(2;w) u, ...]` up to `L_(k;w)`, built incrementally.
fn shifted_tower(u: &SphereFunction, k: u32, w: &Rational) -> Vec<SphereFunction> {
    let n = u.n();
    let mut tower = Vec::with_capacity(k as usize + 1);
    tower.push(u.clone());
    for s in 1..=k {
        let j = s - 1;
        let wj = w.clone() - rat(2 * i64::from(j));
        let prev = tower.last().unwrap();
        let next = prev.spectral_map(|d| {
            beltrami_eigenvalue(n, d)
                + wj.clone() * (rat(i64::from(n)) + wj.clone() - Rational::one())
        });
        tower.push(next);
    }
    tower
}

/// Evaluates the linear operator `D_f u = sum_s b_s L_(k-s; w-2l-2s)(f L_(s;w) u)`
/// with `w = -(n-2k-2l)/2`, the intrinsic form of
/// `sum_s b_s Lap^(k-s)(f Lap^s u)` on the cone.
pub fn evaluate_linear_operator(
    coeffs: &LinearCoeffTable,
    n: u32,
    f: &SphereFunction,
    u: &SphereFunction,
) -> SphereFunction {
    assert_eq!(n, f.n());
    assert_eq!(n, u.n());
    let k = coeffs.k;
    let w = -(rat(i64::from(n)) - rat(2 * i64::from(k)) - rat(2) * coeffs.ell.clone()) / rat(2);
    let tower = shifted_tower(u, k, &w);
    let mut acc = SphereFunction::zero(n);
    for (s, b) in coeffs.entries.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let s = s as u32;
        let inner = sphere_multiply(f, &tower[s as usize]);
        let outer_w = w.clone() - rat(2) * coeffs.ell.clone() - rat(2 * i64::from(s));
        let outer = shifted_laplacian(k - s, &outer_w, &inner);
        acc = acc.add(&outer.scale(b));
    }
    acc
}

/// Normalized integral over the sphere: the harmonic component of degree 0.
/// All higher components integrate to zero.
pub fn integrate(u: &SphereFunction) -> Rational {
    u.component(0)
        .map(|p| p.coefficient(&vec![0; u.nvars()]))
        .unwrap_or_else(Rational::zero)
}

/// Closed-form normalized integral of a monomial `x^alpha` over `S^n`:
/// zero unless all exponents are even, in which case
/// `prod_i (alpha_i - 1)!! / prod_(m=0..|alpha|/2-1) (n + 1 + 2m)`.
pub fn monomial_integral(n: u32, exps: &[u32]) -> Rational {
    assert_eq!(exps.len(), n as usize + 1);
    if exps.iter().any(|e| e % 2 == 1) {
        return Rational::zero();
    }
    let total: u32 = exps.iter().sum();
    let mut numer = Rational::one();
    for &e in exps {
        if e >= 2 {
            numer *= Rational::from_integer(double_factorial(e - 1));
        }
    }
    let mut denom = Rational::one();
    for m in 0..(total / 2) {
        denom *= rat(i64::from(n) + 1 + 2 * i64::from(m));
    }
    numer / denom
}

/// Normalized integral of a polynomial restriction via the monomial formula.
/// Independent of the harmonic-decomposition route used by [`integrate`].
pub fn polynomial_sphere_integral(n: u32, p: &Polynomial) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        acc += c.clone() * monomial_integral(n, m);
    }
    acc
}

/// Normalized integral of a product of two canonical functions, computed on
/// polynomial representatives. Agrees with
/// `integrate(&sphere_multiply(u, v))` but skips the re-decomposition.
pub fn product_integral(u: &SphereFunction, v: &SphereFunction) -> Rational {
    assert_eq!(u.n(), v.n());
    polynomial_sphere_integral(u.n(), &u.representative().mul(&v.representative()))
}
