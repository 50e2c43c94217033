//! Sparse multivariate polynomials over exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{format_terms, rat, Coeff, Monomial, Var};

/// A polynomial in (x, p, q, u, v, s, t) with no truncation semantics.
///
/// Stored coefficients are never zero, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(rat(1))
    }

    pub fn constant(c: Coeff) -> Poly {
        Poly::term(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(rat(n))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Monomial::var(v, 1), rat(1))
    }

    pub fn term(mono: Monomial, coeff: Coeff) -> Poly {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &Monomial) -> Coeff {
        self.terms.get(mono).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// The constant value if the polynomial has no variable part.
    pub fn as_scalar(&self) -> Option<Coeff> {
        if self.terms.is_empty() {
            return Some(Coeff::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::ONE) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Set each listed variable to 1, merging collapsed monomials.
    pub fn specialize(&self, vars: &[Var]) -> Poly {
        let mut terms: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.without(vars);
            let entry = terms.entry(key).or_insert_with(Coeff::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { terms }
    }

    /// Exchange two variables throughout.
    pub fn swap_vars(&self, a: Var, b: Var) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.swap(a, b), c.clone())).collect(),
        }
    }

    pub fn max_x_degree(&self) -> usize {
        self.terms.keys().map(|m| m.x_degree()).max().unwrap_or(0)
    }

    /// The coefficient of x^d as a polynomial in the remaining variables.
    pub fn x_slice(&self, d: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.x_degree() == d {
                terms.insert(m.without(&[Var::X]), c.clone());
            }
        }
        Poly { terms }
    }

    pub(crate) fn add_assign_term(&mut self, mono: Monomial, coeff: &Coeff) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Coeff::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(*m, c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(*m, &(-c.clone()));
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_assign_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

// Owned-value operator forms so polynomial formulas read like the algebra
// they transcribe.
macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms.iter()))
    }
}

/// Single-letter constructors used when transcribing explicit formulas.
pub mod build {
    use super::super::Var;
    use super::Poly;

    pub fn x() -> Poly {
        Poly::var(Var::X)
    }
    pub fn p() -> Poly {
        Poly::var(Var::P)
    }
    pub fn q() -> Poly {
        Poly::var(Var::Q)
    }
    pub fn u() -> Poly {
        Poly::var(Var::U)
    }
    pub fn v() -> Poly {
        Poly::var(Var::V)
    }
    pub fn s() -> Poly {
        Poly::var(Var::S)
    }
    pub fn t() -> Poly {
        Poly::var(Var::T)
    }
    pub fn n(k: i64) -> Poly {
        Poly::int(k)
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    #[test]
    fn basic_ring_identities() {
        let a = n(1) + x();
        let b = n(1) - x();
        assert_eq!(a.clone() * b, n(1) - x().pow(2));
        assert_eq!(a.clone() - a, Poly::zero());
        assert_eq!(Poly::zero() * x(), Poly::zero());
    }

    #[test]
    fn specialize_merges_terms() {
        // u*v + v specialized at u=1 collapses to 2v
        let poly = u() * v() + v();
        let spec = poly.specialize(&[Var::U]);
        assert_eq!(spec, v().scale(&rat(2)));
    }

    #[test]
    fn x_slices() {
        let poly = n(3) + p() * x() + q() * x() + v() * x().pow(2);
        assert_eq!(poly.max_x_degree(), 2);
        assert_eq!(poly.x_slice(1), p() + q());
        assert_eq!(poly.x_slice(2), v());
        assert_eq!(poly.x_slice(0).as_scalar(), Some(rat(3)));
        assert_eq!(poly.x_slice(1).as_scalar(), None);
    }

    #[test]
    fn display_canonical() {
        let poly = n(1) - q() * v() * x() + u() * v() * s() * t() * x();
        // graded order: degree 0, then q*v*x (degree 3), then u*v*s*t*x (degree 5)
        assert_eq!(poly.to_string(), "1 - q*v*x + u*v*s*t*x");
    }
}
