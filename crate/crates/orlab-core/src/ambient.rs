//! Exact symbolic calculus on the flat ambient space of the round sphere.
//!
//! The ambient space is Minkowski `R^(n+1,1)` with coordinates
//! `x^0, ..., x^n, tau` and metric `-d tau^2 + dx^2`; the sphere sits as the
//! section `{tau = 1, |x| = 1}` of the null cone `{|x|^2 = tau^2}`. Elements
//! here are finite sums of terms `tau^a * p(x)` with `a` rational and `p`
//! homogeneous, closed under everything we need:
//!
//! * the ambient Laplacian acts by
//!   `Lap~(tau^a p) = tau^a Lap_x p - a(a-1) tau^(a-2) p`;
//! * the Euler (dilation) operator acts by `a + deg p` per term;
//! * the defining function of the cone is `Q = |x|^2 - tau^2`.
//!
//! This engine is the ground-truth evaluation path: an operator evaluated
//! here and restricted to the section must agree with the intrinsic spectral
//! path for every tangential coefficient table.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::coeff::{multinomial, CoeffTable};
use crate::poly::Polynomial;
use crate::rational::{format_rational, rat, Rational};
use crate::sphere::{poly_to_json, SphereFunction};

/// A finite sum of terms `tau^a * p(x)`, grouped by `(a, deg p)` so the
/// normal form is unique and homogeneity per term is manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientElement {
    n: u32,
    terms: BTreeMap<(Rational, usize), Polynomial>,
}

impl AmbientElement {
    pub fn zero(n: u32) -> Self {
        AmbientElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_term(n, Rational::zero(), Polynomial::one(n as usize + 1))
    }

    /// `tau^a * p`, splitting `p` into homogeneous parts.
    pub fn from_term(n: u32, tau_exp: Rational, p: Polynomial) -> Self {
        assert_eq!(p.nvars(), n as usize + 1);
        let mut out = Self::zero(n);
        for (d, part) in p.homogeneous_components() {
            out.insert(tau_exp.clone(), d, part);
        }
        out
    }

    fn insert(&mut self, tau_exp: Rational, degree: usize, p: Polynomial) {
        if p.is_zero() {
            return;
        }
        let key = (tau_exp, degree);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&p);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.n as usize + 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rational, usize), &Polynomial)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for ((a, d), p) in rhs.terms() {
            out.insert(a.clone(), *d, p.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        AmbientElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (k.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// Termwise product.
    pub fn multiply(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n);
        for ((a1, d1), p1) in self.terms() {
            for ((a2, d2), p2) in rhs.terms() {
                out.insert(a1.clone() + a2.clone(), d1 + d2, p1.mul(p2));
            }
        }
        out
    }

    /// The ambient Laplacian of the Minkowski metric.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, d), p) in self.terms() {
            let lap = p.laplacian();
            if !lap.is_zero() {
                out.insert(a.clone(), d - 2, lap);
            }
            // -d^2/dtau^2 of tau^a.
            let factor = -(a.clone() * (a.clone() - Rational::one()));
            if !factor.is_zero() {
                out.insert(a.clone() - rat(2), *d, p.scale(&factor));
            }
        }
        out
    }

    pub fn laplacian_power(&self, m: u32) -> Self {
        let mut acc = self.clone();
        for _ in 0..m {
            acc = acc.laplacian();
        }
        acc
    }

    /// Homogeneity degree under dilations when the element has one:
    /// every term must satisfy `a + deg p = w`. Zero has no defined weight.
    pub fn euler_weight(&self) -> Option<Rational> {
        let mut weights = self
            .terms
            .keys()
            .map(|(a, d)| a.clone() + rat(*d as i64));
        let first = weights.next()?;
        if weights.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    /// The Euler operator `X = tau d/dtau + sum x^i d/dx^i`; each term is an
    /// eigenvector with eigenvalue `a + deg p`.
    pub fn euler_apply(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((a, d), p) in self.terms() {
            let weight = a.clone() + rat(*d as i64);
            out.insert(a.clone(), *d, p.scale(&weight));
        }
        out
    }

    /// Multiplication by the cone defining function `Q = |x|^2 - tau^2`.
    pub fn q_multiply(&self) -> Self {
        let r2 = Polynomial::r_squared(self.nvars());
        let mut out = Self::zero(self.n);
        for ((a, d), p) in self.terms() {
            out.insert(a.clone(), d + 2, p.mul(&r2));
            out.insert(a.clone() + rat(2), *d, p.scale(&-Rational::one()));
        }
        out
    }

    /// Restriction to the section `{tau = 1, |x| = 1}` in canonical form.
    pub fn cone_restrict(&self) -> SphereFunction {
        let mut acc = Polynomial::zero(self.nvars());
        for (_, p) in self.terms() {
            acc = acc.add(p);
        }
        SphereFunction::from_polynomial(self.n, &acc)
    }

    /// Debug dump: `[{"tau_exp": "p/q", "poly": {...}}, ...]`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|((a, _), p)| {
                json!({
                    "tau_exp": format_rational(a),
                    "poly": poly_to_json(p),
                })
            })
            .collect();
        Value::Array(terms)
    }
}

/// `Q` itself, as an element.
pub fn q_element(n: u32) -> AmbientElement {
    AmbientElement::one(n).q_multiply()
}

/// Canonical extension of a sphere function at weight `w`: the degree-`d`
/// harmonic component maps to `tau^(w-d) h_d(x)`, which keeps every term
/// killed by the Euclidean Laplacian.
pub fn harmonic_extend(u: &SphereFunction, w: &Rational) -> AmbientElement {
    let mut out = AmbientElement::zero(u.n());
    for (d, p) in u.components() {
        out.insert(w.clone() - rat(d as i64), d, p.clone());
    }
    out
}

/// The bidifferential sum
/// `sum_(s,t) multinom(k;s,t) a[s,t] Lap~^(k-s-t)((Lap~^s eu)(Lap~^t ev))`
/// on already-extended ambient arguments, before restriction. Used directly
/// by the tangentiality tests, which feed it perturbed extensions.
pub fn bidifferential_ambient(
    table: &CoeffTable,
    eu: &AmbientElement,
    ev: &AmbientElement,
) -> AmbientElement {
    let config = &table.config;
    assert_eq!(config.n, eu.n());
    assert_eq!(config.n, ev.n());
    let k = config.k;
    let mut powers_u = Vec::with_capacity(k as usize + 1);
    powers_u.push(eu.clone());
    for _ in 0..k {
        powers_u.push(powers_u.last().unwrap().laplacian());
    }
    let mut powers_v = Vec::with_capacity(k as usize + 1);
    powers_v.push(ev.clone());
    for _ in 0..k {
        powers_v.push(powers_v.last().unwrap().laplacian());
    }
    let mut acc = AmbientElement::zero(config.n);
    for (&(s, t), a) in &table.entries {
        let prod = powers_u[s as usize].multiply(&powers_v[t as usize]);
        let outer = prod.laplacian_power(k - s - t);
        let weight = multinomial(k, s, t) * a.clone();
        acc = acc.add(&outer.scale(&weight));
    }
    acc
}

/// Ground-truth evaluation of a basis operator: harmonic extensions at the
/// configured weights, the ambient bidifferential sum, then restriction.
pub fn apply_bidifferential_ambient(
    table: &CoeffTable,
    u: &SphereFunction,
    v: &SphereFunction,
) -> SphereFunction {
    let eu = harmonic_extend(u, &table.config.w1);
    let ev = harmonic_extend(v, &table.config.w2);
    bidifferential_ambient(table, &eu, &ev).cone_restrict()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::basis_tables;
    use crate::coeff::WeightConfig;
    use crate::rational::ratio;

    fn xpoly(n: u32, i: usize) -> Polynomial {
        Polynomial::variable(n as usize + 1, i)
    }

    #[test]
    fn laplacian_on_harmonic_extension() {
        // Lap~(tau^a h) = -a(a-1) tau^(a-2) h for harmonic h.
        let n = 4u32;
        let a = ratio(5, 3);
        let e = AmbientElement::from_term(n, a.clone(), xpoly(n, 0));
        let expected = AmbientElement::from_term(n, a.clone() - rat(2), xpoly(n, 0))
            .scale(&-(a.clone() * (a - rat(1))));
        assert_eq!(e.laplacian(), expected);
    }

    #[test]
    fn laplacian_of_r_squared_and_q() {
        let n = 4u32;
        let r2 = AmbientElement::from_term(
            n,
            Rational::zero(),
            Polynomial::r_squared(n as usize + 1),
        );
        assert_eq!(
            r2.laplacian(),
            AmbientElement::one(n).scale(&rat(2 * (i64::from(n) + 1)))
        );
        // Lap~ Q = 2n + 4.
        assert_eq!(
            q_element(n).laplacian(),
            AmbientElement::one(n).scale(&rat(2 * i64::from(n) + 4))
        );
    }

    #[test]
    fn multiplication_examples() {
        let n = 3u32;
        let e = AmbientElement::from_term(n, rat(1), xpoly(n, 0));
        assert_eq!(e.multiply(&AmbientElement::one(n)), e);
        let sq = e.multiply(&e);
        let expected =
            AmbientElement::from_term(n, rat(2), xpoly(n, 0).mul(&xpoly(n, 0)));
        assert_eq!(sq, expected);
        // q_multiply agrees with multiplying by the Q element.
        assert_eq!(e.q_multiply(), q_element(n).multiply(&e));
    }

    #[test]
    fn euler_weight_bookkeeping() {
        let n = 3u32;
        let w = ratio(-7, 2);
        let e = harmonic_extend(
            &SphereFunction::from_polynomial(n, &xpoly(n, 0)),
            &w,
        );
        assert_eq!(e.euler_weight(), Some(w.clone()));
        assert_eq!(e.laplacian().euler_weight(), Some(w.clone() - rat(2)));
        assert_eq!(e.q_multiply().euler_weight(), Some(w + rat(2)));

        let mixed = e.add(&AmbientElement::one(n));
        assert_eq!(mixed.euler_weight(), None);
    }

    #[test]
    fn restriction_kills_q() {
        let n = 4u32;
        let e = AmbientElement::from_term(n, ratio(1, 2), xpoly(n, 1))
            .add(&AmbientElement::one(n).scale(&rat(3)));
        assert!(e.q_multiply().cone_restrict().is_zero());
        // tau^2 - |x|^2 also dies.
        let t2 = AmbientElement::from_term(n, rat(2), Polynomial::one(n as usize + 1));
        let r2 = AmbientElement::from_term(
            n,
            Rational::zero(),
            Polynomial::r_squared(n as usize + 1),
        );
        assert!(t2.sub(&r2).cone_restrict().is_zero());
    }

    #[test]
    fn extension_restricts_back() {
        let n = 3u32;
        let u = SphereFunction::from_polynomial(
            n,
            &xpoly(n, 0).mul(&xpoly(n, 1)).add(&Polynomial::one(4)),
        );
        let e = harmonic_extend(&u, &ratio(-5, 3));
        assert_eq!(e.cone_restrict(), u);
        // Extension of the constant at weight zero is annihilated.
        let one = harmonic_extend(&SphereFunction::one(n), &Rational::zero());
        assert!(one.laplacian().is_zero());
    }

    /// `[Lap~^l, Q] = 2l Lap~^(l-1) (2X + n + 4 - 2l)` as an operator
    /// identity, checked on a generating family of inhomogeneous elements.
    #[test]
    fn laplacian_q_commutator_identity() {
        let n = 3u32;
        let nvars = n as usize + 1;
        let mut elements = vec![
            AmbientElement::one(n),
            AmbientElement::from_term(n, ratio(1, 2), xpoly(n, 0)),
            AmbientElement::from_term(n, rat(-2), xpoly(n, 1).mul(&xpoly(n, 1))),
            AmbientElement::from_term(n, rat(1), Polynomial::r_squared(nvars)),
        ];
        let mix = elements[1].add(&elements[2]);
        elements.push(mix);
        for l in 1u32..=3 {
            for e in &elements {
                let lhs = e.q_multiply().laplacian_power(l).sub(
                    &e.laplacian_power(l).q_multiply(),
                );
                let inner = e
                    .euler_apply()
                    .scale(&rat(2))
                    .add(&e.scale(&rat(i64::from(n) + 4 - 2 * i64::from(l))));
                let rhs = inner.laplacian_power(l - 1).scale(&rat(2 * i64::from(l)));
                assert_eq!(lhs, rhs, "commutator identity failed at l={l}");
            }
        }
    }

    #[test]
    fn bidifferential_k0_is_product() {
        let n = 4u32;
        let config = WeightConfig::new(n, 0, rat(-1), rat(2));
        let table = &basis_tables(&config).unwrap()[0];
        let u = SphereFunction::from_polynomial(n, &xpoly(n, 0));
        let v = SphereFunction::from_polynomial(n, &xpoly(n, 1));
        let got = apply_bidifferential_ambient(table, &u, &v);
        assert_eq!(got, crate::sphere::sphere_multiply(&u, &v));
    }

    #[test]
    fn bidifferential_matches_hand_value() {
        // Order two at n = 5, w1 = w2 = -1, on constants: the table entries
        // are all 1/4 and the three terms contribute -6, -2, -2 before the
        // 1/4 scale, so the result is the constant -5/2.
        let config = WeightConfig::new(5, 1, rat(-1), rat(-1));
        let table = &basis_tables(&config).unwrap()[0];
        let one = SphereFunction::one(5);
        let got = apply_bidifferential_ambient(table, &one, &one);
        assert_eq!(got, SphereFunction::constant(5, ratio(-5, 2)));
    }

    #[test]
    fn triple_exception_second_basis_shape() {
        // The basis element with single entry at (0, k) acts as
        // u * restrict(Lap~^k v~).
        let config = WeightConfig::new(4, 2, rat(0), rat(0));
        let tables = basis_tables(&config).unwrap();
        let table = &tables[1];
        assert_eq!(
            table.entries.keys().collect::<Vec<_>>(),
            vec![&(0u32, 2u32)]
        );
        let u = SphereFunction::from_polynomial(4, &xpoly(4, 0));
        let v = SphereFunction::from_polynomial(4, &xpoly(4, 1).mul(&xpoly(4, 2)));
        let got = apply_bidifferential_ambient(table, &u, &v);
        let ev_k = harmonic_extend(&v, &rat(0)).laplacian_power(2);
        let expected = crate::sphere::sphere_multiply(&u, &ev_k.cone_restrict());
        assert_eq!(got, expected);
    }

    #[test]
    fn restriction_is_multiplicative() {
        let n = 3u32;
        let e1 = AmbientElement::from_term(n, ratio(-3, 2), xpoly(n, 0))
            .add(&AmbientElement::one(n).scale(&rat(2)));
        let e2 = AmbientElement::from_term(n, rat(4), xpoly(n, 1).mul(&xpoly(n, 1)));
        let lhs = e1.multiply(&e2).cone_restrict();
        let rhs = crate::sphere::sphere_multiply(&e1.cone_restrict(), &e2.cone_restrict());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn debug_dump_shape() {
        let n = 2u32;
        let e = AmbientElement::from_term(n, ratio(1, 2), xpoly(n, 0));
        let dump = e.to_json();
        assert_eq!(dump[0]["tau_exp"], "1/2");
        assert_eq!(dump[0]["poly"]["1,0,0"], "1");
    }

    #[test]
    fn euler_weight_of_bidifferential_output() {
        let config = WeightConfig::new(5, 2, ratio(-1, 3), ratio(-1, 3));
        let table = &basis_tables(&config).unwrap()[0];
        let u = SphereFunction::from_polynomial(5, &xpoly(5, 0));
        let eu = harmonic_extend(&u, &table.config.w1);
        let ev = harmonic_extend(&u, &table.config.w2);
        let out = bidifferential_ambient(table, &eu, &ev);
        let expected = ratio(-2, 3) - rat(4);
        assert_eq!(out.euler_weight(), Some(expected));
    }
}
