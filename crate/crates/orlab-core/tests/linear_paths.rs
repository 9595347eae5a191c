//! Cross-path oracle for the linear operators.
//!
//! The intrinsic evaluation realizes the ambient sum
//! `sum_s b_s Lap~^(k-s)(f~ Lap~^s u~)` for the *radial* extensions
//! `f~ = r^(-2l-d) h_d` and `u~ = r^(w-d) h_d` (`r` the Euclidean radius of
//! the ambient factor): on the sphere cone the weight coordinate of the
//! Einstein model is `r` itself. The operator is tangential in `u` but not
//! in `f`, so the `f`-slot extension is part of the operator's definition;
//! a harmonic `f`-extension produces a genuinely different (also
//! tangential-in-`u`) operator.
//!
//! The oracle below is an independent test-side engine for elements
//! `sum r^c h(x)` with `h` harmonic: such elements are killed by
//! `d^2/dtau^2`, and the ambient Laplacian acts by
//! `Lap~(r^c h) = c (c + (n+1) - 2 + 2 deg h) r^(c-2) h`.

use std::collections::BTreeMap;

use num_traits::Zero;
use orlab_core::verify::{random_sphere_function, DeterministicRng};
use orlab_core::{
    evaluate_linear_operator, harmonic_decompose, linear_operator_coeffs, rat, ratio, Polynomial,
    Rational, SphereFunction,
};

/// Test-side radial elements: `(c, d) -> h` with `h` harmonic of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Radial {
    n: u32,
    terms: BTreeMap<(Rational, usize), Polynomial>,
}

impl Radial {
    fn zero(n: u32) -> Self {
        Radial {
            n,
            terms: BTreeMap::new(),
        }
    }

    fn insert(&mut self, c: Rational, d: usize, h: Polynomial) {
        if h.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((c, d))
            .or_insert_with(|| Polynomial::zero(self.n as usize + 1));
        *entry = entry.add(&h);
        if entry.is_zero() {
            self.terms.retain(|_, p| !p.is_zero());
        }
    }

    /// Extension of a canonical sphere function at homogeneity `w`.
    fn extend(u: &SphereFunction, w: &Rational) -> Self {
        let mut out = Radial::zero(u.n());
        for (d, h) in u.components() {
            out.insert(w.clone() - rat(d as i64), d, h.clone());
        }
        out
    }

    fn scale(&self, s: &Rational) -> Self {
        let mut out = Radial::zero(self.n);
        for ((c, d), h) in &self.terms {
            out.insert(c.clone(), *d, h.scale(s));
        }
        out
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for ((c, d), h) in &rhs.terms {
            out.insert(c.clone(), *d, h.clone());
        }
        out
    }

    fn multiply(&self, rhs: &Self) -> Self {
        let mut out = Radial::zero(self.n);
        for ((c1, d1), h1) in &self.terms {
            for ((c2, d2), h2) in &rhs.terms {
                let product = h1.mul(h2);
                let total = d1 + d2;
                for part in harmonic_decompose(&product, self.n).unwrap() {
                    // product = sum_j r^(2j) h_(total-2j)
                    let j = (total - part.degree()) / 2;
                    out.insert(
                        c1.clone() + c2.clone() + rat(2 * j as i64),
                        part.degree(),
                        part.poly().clone(),
                    );
                }
            }
        }
        out
    }

    /// Ambient Laplacian; the time derivative vanishes on radial elements.
    fn laplacian(&self) -> Self {
        let n_vars = rat(i64::from(self.n) + 1);
        let mut out = Radial::zero(self.n);
        for ((c, d), h) in &self.terms {
            let factor = c.clone() * (c.clone() + n_vars.clone() - rat(2) + rat(2 * *d as i64));
            if !factor.is_zero() {
                out.insert(c.clone() - rat(2), *d, h.scale(&factor));
            }
        }
        out
    }

    /// Restriction to the section: set `r = 1` and collect harmonics.
    fn restrict(&self) -> SphereFunction {
        let mut acc = Polynomial::zero(self.n as usize + 1);
        for h in self.terms.values() {
            acc = acc.add(h);
        }
        SphereFunction::from_polynomial(self.n, &acc)
    }
}

/// Ambient route with radial extensions.
fn ambient_linear(
    k: u32,
    ell: &Rational,
    n: u32,
    f: &SphereFunction,
    u: &SphereFunction,
) -> SphereFunction {
    let coeffs = linear_operator_coeffs(k, ell);
    let w = -(rat(i64::from(n)) - rat(2 * i64::from(k)) - rat(2) * ell.clone()) / rat(2);
    let ef = Radial::extend(f, &(rat(-2) * ell.clone()));
    let mut power = Radial::extend(u, &w);
    let mut acc = Radial::zero(n);
    for (s, b) in coeffs.entries.iter().enumerate() {
        if s > 0 {
            power = power.laplacian();
        }
        if b.is_zero() {
            continue;
        }
        let mut term = ef.multiply(&power);
        for _ in 0..(k - s as u32) {
            term = term.laplacian();
        }
        acc = acc.add(&term.scale(b));
    }
    acc.restrict()
}

#[test]
fn linear_operator_paths_agree() {
    let mut rng = DeterministicRng::new(3);
    for (k, ell, n) in [
        (1u32, rat(1), 4u32),
        (2, rat(1), 5),
        (3, rat(1), 7),
        (2, rat(-1), 5),
        (2, rat(2), 6),
        (3, ratio(1, 2), 6),
    ] {
        for _ in 0..3 {
            let f = random_sphere_function(n, 2, &mut rng);
            let u = random_sphere_function(n, 2, &mut rng);
            let coeffs = linear_operator_coeffs(k, &ell);
            let intrinsic = evaluate_linear_operator(&coeffs, n, &f, &u);
            let ambient = ambient_linear(k, &ell, n, &f, &u);
            assert_eq!(
                intrinsic, ambient,
                "linear paths disagree at k={k} ell={ell} n={n}"
            );
        }
    }
}

#[test]
fn hand_checked_second_order_case() {
    // n = 4, k = 1, l = 1, f = x0, u = 1: the s = 1 term dies on the
    // constant, and Lap~(r^(-3) x0) = -6 r^(-5) x0, so D_f u = -6 x0.
    let n = 4u32;
    let nvars = 5usize;
    let f = SphereFunction::from_polynomial(n, &Polynomial::variable(nvars, 0));
    let u = SphereFunction::one(n);
    let coeffs = linear_operator_coeffs(1, &rat(1));
    let expected = f.scale(&rat(-6));
    assert_eq!(evaluate_linear_operator(&coeffs, n, &f, &u), expected);
    assert_eq!(ambient_linear(1, &rat(1), n, &f, &u), expected);
}

#[test]
fn collapsed_fourth_order_shape() {
    // At (k, l) = (2, -1) only the middle coefficient survives, so the
    // operator is 2 L_(1; w)(f L_(1; w) u) with w = -(n-2)/2; with f = 1
    // this is a pure spectral square.
    let n = 5u32;
    let coeffs = linear_operator_coeffs(2, &rat(-1));
    let one = SphereFunction::one(n);
    let mut rng = DeterministicRng::new(9);
    let u = random_sphere_function(n, 3, &mut rng);
    let w = ratio(-(i64::from(n) - 2 * 2 + 2), 2);
    let expected = orlab_core::shifted_laplacian(
        1,
        &w,
        &orlab_core::shifted_laplacian(1, &w, &u),
    )
    .scale(&rat(2));
    assert_eq!(evaluate_linear_operator(&coeffs, n, &one, &u), expected);
}

#[test]
fn constant_scalar_gives_symmetric_operator() {
    // With f = 1 the operator is a polynomial in the Laplacian, hence
    // symmetric for the integral pairing without any coefficient magic.
    let n = 5u32;
    let coeffs = linear_operator_coeffs(2, &ratio(3, 2));
    let one = SphereFunction::one(n);
    let mut rng = DeterministicRng::new(17);
    for _ in 0..4 {
        let u = random_sphere_function(n, 3, &mut rng);
        let v = random_sphere_function(n, 3, &mut rng);
        let lhs = orlab_core::product_integral(&u, &evaluate_linear_operator(&coeffs, n, &one, &v));
        let rhs = orlab_core::product_integral(&v, &evaluate_linear_operator(&coeffs, n, &one, &u));
        assert_eq!(lhs, rhs);
    }
}
