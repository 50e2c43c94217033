//! Truncated multivariate power series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{format_coeff, format_terms, Coeff, Monomial, Poly, Var};

/// A power series in x with polynomial coefficients in (p, q, u, v, s, t),
/// truncated at x-degree `order` (inclusive).
///
/// The truncation order is fixed at construction. Binary operations panic on
/// an order mismatch rather than silently re-truncating; use
/// [`TruncSeries::truncated`] to lower the order explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    order: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> TruncSeries {
        TruncSeries { order, terms: BTreeMap::new() }
    }

    pub fn one(order: usize) -> TruncSeries {
        TruncSeries::constant(order, super::rat(1))
    }

    pub fn constant(order: usize, c: Coeff) -> TruncSeries {
        let mut s = TruncSeries::zero(order);
        s.add_assign_term(Monomial::ONE, &c);
        s
    }

    /// Embed a polynomial, dropping terms beyond the truncation order.
    pub fn from_poly(poly: &Poly, order: usize) -> TruncSeries {
        let mut s = TruncSeries::zero(order);
        for (m, c) in poly.iter() {
            if m.x_degree() <= order {
                s.add_assign_term(*m, c);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
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

    /// The coefficient of x^n, as a polynomial in the other six variables.
    pub fn x_coefficient(&self, n: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.x_degree() == n {
                out.add_assign_term(m.without(&[Var::X]), c);
            }
        }
        out
    }

    /// Smallest x-degree with a nonzero term; `None` for the zero series.
    pub fn x_valuation(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.x_degree()).min()
    }

    fn add_assign_term(&mut self, mono: Monomial, coeff: &Coeff) {
        if coeff.is_zero() || mono.x_degree() > self.order {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Coeff::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    fn assert_same_order(&self, other: &TruncSeries, op: &str) {
        assert_eq!(
            self.order, other.order,
            "truncation order mismatch in {op}: {} vs {}",
            self.order, other.order
        );
    }

    pub fn scale(&self, c: &Coeff) -> TruncSeries {
        if c.is_zero() {
            return TruncSeries::zero(self.order);
        }
        TruncSeries {
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_poly(&self, poly: &Poly) -> TruncSeries {
        self * &TruncSeries::from_poly(poly, self.order)
    }

    /// Set each listed variable to 1.
    pub fn specialize(&self, vars: &[Var]) -> TruncSeries {
        let mut out = TruncSeries::zero(self.order);
        for (m, c) in &self.terms {
            out.add_assign_term(m.without(vars), c);
        }
        out
    }

    /// Exchange two variables throughout. Swapping with `x` changes which
    /// variable the truncation order refers to; callers only do this on
    /// series that are polynomial in the incoming variable.
    pub fn swap_vars(&self, a: Var, b: Var) -> TruncSeries {
        let mut out = TruncSeries::zero(self.order);
        for (m, c) in &self.terms {
            out.add_assign_term(m.swap(a, b), c);
        }
        out
    }

    /// Explicitly lower the truncation order.
    pub fn truncated(&self, new_order: usize) -> TruncSeries {
        assert!(
            new_order <= self.order,
            "cannot raise truncation order from {} to {}",
            self.order,
            new_order
        );
        let mut out = TruncSeries::zero(new_order);
        for (m, c) in &self.terms {
            out.add_assign_term(*m, c);
        }
        out
    }

    /// Divide by x^k, lowering the order by k. Errors if any term has
    /// x-degree below k.
    pub fn shift_down(&self, k: usize) -> Result<TruncSeries> {
        if k == 0 {
            return Ok(self.clone());
        }
        if let Some(val) = self.x_valuation() {
            if val < k {
                return Err(Error::DivisionValuation { num: val, den: k });
            }
        }
        assert!(k <= self.order, "shift_down past truncation order");
        let mut out = TruncSeries::zero(self.order - k);
        for (m, c) in &self.terms {
            let mut e = m.0;
            e[Var::X as usize] -= k as u16;
            out.add_assign_term(Monomial(e), c);
        }
        Ok(out)
    }

    /// Coefficients of x^0..x^order with the x factor removed.
    pub fn x_slices(&self) -> Vec<Poly> {
        let mut slices = vec![Poly::zero(); self.order + 1];
        for (m, c) in &self.terms {
            slices[m.x_degree()].add_assign_term(m.without(&[Var::X]), c);
        }
        slices
    }

    fn from_x_slices(slices: Vec<Poly>, order: usize) -> TruncSeries {
        let mut out = TruncSeries::zero(order);
        for (d, slice) in slices.into_iter().enumerate() {
            if d > order {
                break;
            }
            let xd = Monomial::var(Var::X, d as u16);
            for (m, c) in slice.iter() {
                out.add_assign_term(m.mul(&xd), c);
            }
        }
        out
    }

    /// Multiplicative inverse. The x^0 coefficient must be a nonzero scalar.
    pub fn invert(&self) -> Result<TruncSeries> {
        let slices = self.x_slices();
        let c0 = slices[0]
            .as_scalar()
            .ok_or_else(|| Error::NonScalarLeading(slices[0].to_string()))?;
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv_c0 = Coeff::one() / c0;
        let mut inv = vec![Poly::zero(); self.order + 1];
        inv[0] = Poly::constant(inv_c0.clone());
        for d in 1..=self.order {
            let mut acc = Poly::zero();
            for j in 1..=d {
                acc = acc + &slices[j] * &inv[d - j];
            }
            inv[d] = (-acc).scale(&inv_c0);
        }
        Ok(TruncSeries::from_x_slices(inv, self.order))
    }

    /// Division with x-valuation cancellation: both sides are shifted down by
    /// the denominator's valuation, which must not exceed the numerator's.
    /// The result order drops by that valuation.
    pub fn div(&self, den: &TruncSeries) -> Result<TruncSeries> {
        self.assert_same_order(den, "div");
        let dval = den.x_valuation().ok_or(Error::ZeroConstantTerm)?;
        let num = self.shift_down(dval)?;
        let den = den.shift_down(dval).expect("valuation bound");
        Ok(&num * &den.invert()?)
    }

    /// Series square root (positive branch). The x^0 coefficient must be a
    /// nonzero scalar that is the square of a rational.
    pub fn sqrt(&self) -> Result<TruncSeries> {
        let slices = self.x_slices();
        let c0 = slices[0]
            .as_scalar()
            .ok_or_else(|| Error::NonScalarLeading(slices[0].to_string()))?;
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let r0 = rational_sqrt(&c0).ok_or_else(|| Error::NotARationalSquare(format_coeff(&c0)))?;
        let inv_2r0 = Coeff::one() / (&r0 + &r0);
        let mut root = vec![Poly::zero(); self.order + 1];
        root[0] = Poly::constant(r0);
        for d in 1..=self.order {
            // r_d = (s_d - sum_{j=1}^{d-1} r_j r_{d-j}) / (2 r_0)
            let mut acc = slices[d].clone();
            for j in 1..d {
                acc = acc - &root[j] * &root[d - j];
            }
            root[d] = acc.scale(&inv_2r0);
        }
        Ok(TruncSeries::from_x_slices(root, self.order))
    }

    /// First monomial where the two series differ, with both coefficients.
    pub fn first_difference(&self, other: &TruncSeries) -> Option<(Monomial, Coeff, Coeff)> {
        let keys: std::collections::BTreeSet<&Monomial> =
            self.terms.keys().chain(other.terms.keys()).collect();
        for m in keys {
            let a = self.coeff(m);
            let b = other.coeff(m);
            if a != b {
                return Some((*m, a, b));
            }
        }
        None
    }

    /// True when every coefficient is an integer.
    pub fn all_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// True when every coefficient is a non-negative integer.
    pub fn all_nonnegative_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one() && !c.is_negative())
    }

    /// Canonical JSON: a list of {"exps": [...], "num": "...", "den": "..."}.
    pub fn to_json_terms(&self) -> serde_json::Value {
        let list: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                serde_json::json!({
                    "exps": m.0.iter().map(|&e| e as u64).collect::<Vec<u64>>(),
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(list)
    }
}

/// Exact square root of a non-negative rational, if it exists.
fn rational_sqrt(c: &Coeff) -> Option<Coeff> {
    if c.is_negative() {
        return None;
    }
    let num = c.numer();
    let den = c.denom();
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        Some(Coeff::new(rn, rd))
    } else {
        None
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.assert_same_order(rhs, "add");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(*m, c);
        }
        out
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.assert_same_order(rhs, "sub");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(*m, &(-c.clone()));
        }
        out
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.assert_same_order(rhs, "mul");
        let mut out = TruncSeries::zero(self.order);
        for (ma, ca) in &self.terms {
            let xa = ma.x_degree();
            for (mb, cb) in &rhs.terms {
                if xa + mb.x_degree() > self.order {
                    continue;
                }
                out.add_assign_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_terms(self.terms.iter()))
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::build::*;
    use super::super::rat;
    use super::*;

    fn ts(poly: Poly, order: usize) -> TruncSeries {
        TruncSeries::from_poly(&poly, order)
    }

    #[test]
    fn product_truncates() {
        let a = ts(n(1) + x(), 2);
        let b = ts(n(1) - x(), 2);
        assert_eq!(&a * &b, ts(n(1) - x().pow(2), 2));
        let zero = TruncSeries::zero(2);
        assert_eq!(&a * &zero, zero);
    }

    #[test]
    fn monomial_square() {
        let m = ts(u() * v() * s() * t() * x(), 2);
        let sq = &m * &m;
        assert_eq!(
            sq,
            ts(u().pow(2) * v().pow(2) * s().pow(2) * t().pow(2) * x().pow(2), 2)
        );
    }

    #[test]
    #[should_panic(expected = "truncation order mismatch")]
    fn order_mismatch_panics() {
        let a = TruncSeries::one(3);
        let b = TruncSeries::one(4);
        let _ = &a + &b;
    }

    #[test]
    fn specialize_to_one() {
        let a = ts(u() * v() * s() * t() * x(), 3);
        assert_eq!(a.specialize(&[Var::U]), ts(v() * s() * t() * x(), 3));
        let one = TruncSeries::one(3);
        assert_eq!(one.specialize(&[Var::P, Var::T]), one);
    }

    #[test]
    fn invert_geometric() {
        // 1/(1-x) = 1 + x + x^2 + ...
        let g = ts(n(1) - x(), 4).invert().unwrap();
        let expect = ts(n(1) + x() + x().pow(2) + x().pow(3) + x().pow(4), 4);
        assert_eq!(g, expect);
    }

    #[test]
    fn invert_needs_scalar_constant() {
        let bad = ts(n(1) - q() * v() + x(), 3);
        assert!(matches!(bad.invert(), Err(Error::NonScalarLeading(_))));
        let zero_const = ts(x(), 3);
        assert!(matches!(zero_const.invert(), Err(Error::ZeroConstantTerm)));
    }

    #[test]
    fn sqrt_known_expansion() {
        // sqrt(1 - 6x + x^2) = 1 - 3x - 4x^2 - 12x^3 - ...
        let s = ts(n(1) - n(6) * x() + x().pow(2), 3);
        let r = s.sqrt().unwrap();
        let expect = ts(n(1) - n(3) * x() - n(4) * x().pow(2) - n(12) * x().pow(3), 3);
        assert_eq!(r, expect);
        assert_eq!(&r * &r, s);
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let a = ts((n(1) + x()).pow(2), 5);
        assert_eq!(a.sqrt().unwrap(), ts(n(1) + x(), 5));
        assert_eq!(TruncSeries::one(4).sqrt().unwrap(), TruncSeries::one(4));
    }

    #[test]
    fn sqrt_rejects_bad_constants() {
        assert!(matches!(ts(x(), 3).sqrt(), Err(Error::ZeroConstantTerm)));
        assert!(matches!(
            ts(n(2) + x(), 3).sqrt(),
            Err(Error::NotARationalSquare(_))
        ));
        // 9/4 is a rational square
        let c = TruncSeries::constant(2, rat(9) / rat(4));
        assert_eq!(c.sqrt().unwrap(), TruncSeries::constant(2, rat(3) / rat(2)));
    }

    #[test]
    fn div_cancels_valuation() {
        // (x + x^2) / (x - x^2) = (1+x)/(1-x) = 1 + 2x + 2x^2 + ... at order-1
        let num = ts(x() + x().pow(2), 4);
        let den = ts(x() - x().pow(2), 4);
        let q = num.div(&den).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q, ts(n(1) + n(2) * x() + n(2) * x().pow(2) + n(2) * x().pow(3), 3));
    }

    #[test]
    fn div_rejects_lower_valuation() {
        let num = ts(n(1) + x(), 4);
        let den = ts(x(), 4);
        assert!(matches!(num.div(&den), Err(Error::DivisionValuation { .. })));
    }

    #[test]
    fn shift_and_slices_roundtrip() {
        let a = ts(v() * x() + p() * q() * x().pow(2) + n(7), 3);
        let slices = a.x_slices();
        assert_eq!(slices.len(), 4);
        assert_eq!(slices[0], n(7));
        assert_eq!(slices[1], v());
        assert_eq!(TruncSeries::from_x_slices(slices, 3), a);
    }

    #[test]
    fn json_terms_are_canonical() {
        let a = ts(n(2) * x() + u(), 2);
        let json = a.to_json_terms();
        let arr = json.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        assert_eq!(arr[0]["exps"][3], 1); // u term first (degree 1, lex)
        assert_eq!(arr[1]["num"], "2");
    }
}
