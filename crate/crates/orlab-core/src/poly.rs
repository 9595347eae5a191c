//! Multivariate polynomials over the exact rationals.
//!
//! Polynomials live in the Cartesian coordinates `x^0, ..., x^n` of the
//! ambient Euclidean factor; the cone coordinate `tau` is tracked separately
//! by the ambient module. Terms are kept in a sorted map keyed by exponent
//! vectors, so equality, iteration order, and printed form are canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::rational::{format_rational, Rational};

/// Exponent vector; its length always equals the ambient variable count.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.insert_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::from_integer(1.into()))
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} vars");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, Rational::from_integer(1.into()))
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.insert_term(exps, c);
        p
    }

    /// `|x|^2 = sum_i (x^i)^2`.
    pub fn r_squared(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for i in 0..nvars {
            let mut exps = vec![0; nvars];
            exps[i] = 2;
            p.insert_term(exps, Rational::from_integer(1.into()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * x^exps`, dropping the term if the sum cancels.
    pub fn insert_term(&mut self, exps: Monomial, c: Rational) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in self.terms() {
            out.insert_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (m, v) in self.terms() {
            out.insert_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                let exps: Monomial = ma.iter().zip(mb.iter()).map(|(a, b)| a + b).collect();
                out.insert_term(exps, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Flat Laplacian `sum_i d^2/d(x^i)^2` in the Euclidean variables.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in self.terms() {
            for i in 0..self.nvars {
                let e = m[i];
                if e >= 2 {
                    let mut exps = m.clone();
                    exps[i] = e - 2;
                    let factor = Rational::from_integer((e as i64 * (e as i64 - 1)).into());
                    out.insert_term(exps, c.clone() * factor);
                }
            }
        }
        out
    }

    /// Total degree of the largest term, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum())
            .max()
    }

    /// `Some(d)` when every term has total degree `d`. Zero counts as
    /// homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self
            .terms
            .keys()
            .map(|m| m.iter().map(|&e| e as usize).sum::<usize>());
        match degs.next() {
            None => Some(0),
            Some(d) => {
                if degs.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (m, c) in self.terms() {
            let d: usize = m.iter().map(|&e| e as usize).sum();
            out.entry(d)
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .insert_term(m.clone(), c.clone());
        }
        out
    }

    /// The coefficient of the lexicographically smallest monomial; `None`
    /// for zero. Used to extract deterministic scalar witnesses.
    pub fn leading_coefficient(&self) -> Option<Rational> {
        self.terms.values().next().cloned()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rational(c))?;
            for (i, &e) in m.iter().enumerate() {
                if e == 1 {
                    write!(f, "*x{i}")?;
                } else if e > 1 {
                    write!(f, "*x{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
