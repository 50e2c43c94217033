//! Exact sparse arithmetic in the variables (x, p, q, u, v, s, t).
//!
//! Three representations share one monomial type:
//!
//! - [`Poly`]: a multivariate polynomial over exact rationals (no truncation),
//! - [`TruncSeries`]: a power series truncated at a fixed x-degree,
//! - [`RationalGF`]: a numerator/denominator pair expandable to any order.
//!
//! [`AffineSeries`] represents an expression `a + b*F` in one unknown series
//! `F`; [`AffineSeries::solve`] resolves the fixed point `F = a + b*F`.
//!
//! Truncation order is fixed at construction. Binary operations on series of
//! different orders are programming errors and panic; explicit
//! [`TruncSeries::truncated`] is the only way to lower an order. Coefficients
//! are `BigRational` throughout, so intermediate divisions (series square
//! roots, division by scalars) stay exact.

mod affine;
mod poly;
mod ratfun;
mod trunc;

pub use affine::{solve_affine, AffineSeries};
pub use poly::{build, Poly};
pub use ratfun::RationalGF;
pub use trunc::TruncSeries;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient.
pub type Coeff = BigRational;

/// Shorthand for an integer coefficient.
pub fn rat(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction n/d.
pub fn rat_frac(n: i64, d: i64) -> Coeff {
    Coeff::new(BigInt::from(n), BigInt::from(d))
}

pub const NUM_VARS: usize = 7;

/// The seven tracking variables, in canonical exponent-tuple order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    P = 1,
    Q = 2,
    U = 3,
    V = 4,
    S = 5,
    T = 6,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [Var::X, Var::P, Var::Q, Var::U, Var::V, Var::S, Var::T];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::P => "p",
            Var::Q => "q",
            Var::U => "u",
            Var::V => "v",
            Var::S => "s",
            Var::T => "t",
        }
    }
}

/// Exponent vector (e_x, e_p, e_q, e_u, e_v, e_s, e_t).
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// comparison of the exponent tuple. Every map keyed by `Monomial` therefore
/// iterates in one canonical order, which makes serialized output and
/// equality diffs deterministic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NUM_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_VARS]);

    pub fn var(v: Var, e: u16) -> Monomial {
        let mut m = [0; NUM_VARS];
        m[v as usize] = e;
        Monomial(m)
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    pub fn x_degree(&self) -> usize {
        self.0[Var::X as usize] as usize
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = [0; NUM_VARS];
        for (out, (a, b)) in m.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *out = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(m)
    }

    /// Set the exponents of the listed variables to zero (value 1).
    pub fn without(&self, vars: &[Var]) -> Monomial {
        let mut m = self.0;
        for &v in vars {
            m[v as usize] = 0;
        }
        Monomial(m)
    }

    /// Exchange the exponents of two variables.
    pub fn swap(&self, a: Var, b: Var) -> Monomial {
        let mut m = self.0;
        m.swap(a as usize, b as usize);
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Render one term in canonical form: coefficient, then variables in the
/// order p, q, u, v, s, t, x (matching the conventional way these
/// distribution monomials are written).
pub(crate) fn format_term(mono: &Monomial, coeff: &Coeff) -> String {
    use num_traits::One;
    const PRINT_ORDER: [Var; NUM_VARS] = [Var::P, Var::Q, Var::U, Var::V, Var::S, Var::T, Var::X];
    let mut parts: Vec<String> = Vec::new();
    if *mono == Monomial::ONE || !coeff.is_one() {
        parts.push(format_coeff(coeff));
    }
    for v in PRINT_ORDER {
        let e = mono.exponent(v);
        if e == 1 {
            parts.push(v.name().to_string());
        } else if e > 1 {
            parts.push(format!("{}^{}", v.name(), e));
        }
    }
    parts.join("*")
}

pub(crate) fn format_coeff(c: &Coeff) -> String {
    use num_traits::One;
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Join (monomial, coefficient) pairs into a signed sum; pairs must arrive in
/// canonical order with nonzero coefficients.
pub(crate) fn format_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = (&'a Monomial, &'a Coeff)>,
{
    use num_traits::Signed;
    let mut out = String::new();
    for (mono, coeff) in terms {
        let negative = coeff.is_negative();
        let abs = if negative { -coeff.clone() } else { coeff.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&format_term(mono, &abs));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order_is_graded_then_lex() {
        let x2 = Monomial::var(Var::X, 2);
        let xp = Monomial::var(Var::X, 1).mul(&Monomial::var(Var::P, 1));
        let t1 = Monomial::var(Var::T, 1);
        assert!(Monomial::ONE < t1);
        assert!(t1 < x2);
        // same total degree: lex on (e_x, e_p, ...) decides
        assert!(xp < x2);
    }

    #[test]
    fn swap_and_without() {
        let m = Monomial([1, 2, 0, 3, 0, 0, 4]);
        assert_eq!(m.swap(Var::X, Var::T), Monomial([4, 2, 0, 3, 0, 0, 1]));
        assert_eq!(m.without(&[Var::P, Var::T]), Monomial([1, 0, 0, 3, 0, 0, 0]));
    }

    #[test]
    fn term_formatting() {
        let m = Monomial([2, 1, 0, 2, 0, 0, 0]);
        assert_eq!(format_term(&m, &rat(1)), "p*u^2*x^2");
        assert_eq!(format_term(&m, &rat(3)), "3*p*u^2*x^2");
        assert_eq!(format_term(&Monomial::ONE, &rat_frac(1, 2)), "1/2");
    }
}
