//! Rational generating functions: numerator/denominator polynomial pairs.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};

use super::{Monomial, Poly, TruncSeries, Var};

/// A generating function given in closed form as `num/den`.
///
/// The denominator must have a nonzero constant term so that the series
/// expansion to any order is well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalGF {
    num: Poly,
    den: Poly,
}

impl RationalGF {
    pub fn new(num: Poly, den: Poly) -> Result<RationalGF> {
        if den.coeff(&Monomial::ONE).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(RationalGF { num, den })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Expand to the unique series T with den*T = num (mod x^{order+1}).
    pub fn expand(&self, order: usize) -> Result<TruncSeries> {
        let num = TruncSeries::from_poly(&self.num, order);
        let den = TruncSeries::from_poly(&self.den, order);
        num.div(&den)
    }

    /// Set the listed variables to 1 in both numerator and denominator.
    pub fn specialize(&self, vars: &[Var]) -> RationalGF {
        RationalGF {
            num: self.num.specialize(vars),
            den: self.den.specialize(vars),
        }
    }

    pub fn swap_vars(&self, a: Var, b: Var) -> RationalGF {
        RationalGF {
            num: self.num.swap_vars(a, b),
            den: self.den.swap_vars(a, b),
        }
    }

    /// Equality as rational functions, by cross-multiplication. The stored
    /// num/den pairs are not normalized, so structural equality is too strict.
    pub fn equivalent(&self, other: &RationalGF) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
