//! Explicit closed forms for the distribution series: the rational
//! generating functions for k = 2, 3, 4, their single-statistic
//! specializations, the lrmax series on unrestricted separable permutations,
//! and the cubic-equation series for the ascent/descent distribution.

use crate::error::{Error, Result};
use crate::series::build::{n, p, q, s, t, u, v, x};
use crate::series::{Poly, RationalGF, TruncSeries, Var};

/// Identifiers for every closed form the crate can materialize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormId {
    F2,
    F3,
    F4,
    F3Counting,
    F4Counting,
    F3Xv,
    F3Xu,
    F3Xt,
    F4Xu,
    F4Xt,
    LmaxSeparable,
    STpq,
}

impl ClosedFormId {
    pub const ALL: [ClosedFormId; 12] = [
        ClosedFormId::F2,
        ClosedFormId::F3,
        ClosedFormId::F4,
        ClosedFormId::F3Counting,
        ClosedFormId::F4Counting,
        ClosedFormId::F3Xv,
        ClosedFormId::F3Xu,
        ClosedFormId::F3Xt,
        ClosedFormId::F4Xu,
        ClosedFormId::F4Xt,
        ClosedFormId::LmaxSeparable,
        ClosedFormId::STpq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormId::F2 => "F2",
            ClosedFormId::F3 => "F3",
            ClosedFormId::F4 => "F4",
            ClosedFormId::F3Counting => "F3_counting",
            ClosedFormId::F4Counting => "F4_counting",
            ClosedFormId::F3Xv => "F3_xv",
            ClosedFormId::F3Xu => "F3_xu",
            ClosedFormId::F3Xt => "F3_xt",
            ClosedFormId::F4Xu => "F4_xu",
            ClosedFormId::F4Xt => "F4_xt",
            ClosedFormId::LmaxSeparable => "Lmax_separable",
            ClosedFormId::STpq => "S_tpq",
        }
    }

    pub fn parse(text: &str) -> Result<ClosedFormId> {
        ClosedFormId::ALL
            .into_iter()
            .find(|id| id.name() == text)
            .ok_or_else(|| Error::UnknownClosedForm(text.to_string()))
    }
}

/// k = 2: only the decreasing permutation survives, so
/// F2 = 1 + uvstx / (1 - qvsx).
pub fn f2_gf() -> RationalGF {
    let den = n(1) - q() * v() * s() * x();
    let num = &den + u() * v() * s() * t() * x();
    RationalGF::new(num, den).expect("constant term 1")
}

/// k = 3: the full six-variable rational form.
pub fn f3_gf() -> RationalGF {
    let num = n(1)
        + q().pow(2) * v().pow(2) * s() * x().pow(2)
        + v() * t() * u() * s() * x() * (n(1) + p() * t() * u() * x())
        - q() * v()
            * x()
            * (n(1)
                + p() * u() * s().pow(2) * x().pow(2) * v() * t() * (n(-1) + t()) * (n(-1) + u())
                + s() * (n(1) + p() * x() + v() * t() * u() * x()));
    let den = n(1) + q().pow(2) * v().pow(2) * s() * x().pow(2)
        - q() * v() * x() * (n(1) + s() + p() * s() * x());
    RationalGF::new(num, den).expect("constant term 1")
}

/// Numerator of F4; expands to exactly 100 monomials.
pub fn f4_numerator() -> Poly {
    n(1)
        + q().pow(4) * s() * v().pow(3) * x().pow(4)
            * (v() - p() * s() * x()
                + p() * s().pow(2) * t() * u() * (n(-1) + t() + u() - t() * u()) * v() * x().pow(2))
        + s() * t() * u() * v() * x()
            * (n(1) + p() * t() * u() * x() + p().pow(2) * t().pow(2) * u().pow(2) * x().pow(2))
        + q().pow(2) * v() * x().pow(2)
            * (-(p() * s().pow(2) * x())
                + s() * t() * u() * v().pow(2) * x()
                    * (n(3)
                        + p() * (n(1) + n(2) * s() * (n(-1) + t()) * (n(-1) + u()) + t() * u()) * x()
                        + p().pow(2)
                            * (n(-1) + t())
                            * (n(-1) + u())
                            * (t() * u() + s() * (n(1) + t() + u() + n(2) * t() * u()))
                            * x().pow(2)
                        + p().pow(3) * s() * (n(-1) + t()) * t() * (n(-1) + u()) * u() * x().pow(3))
                + v() * (n(3) + p() * x()
                    - p() * s().pow(2) * t().pow(2) * u().pow(2) * x().pow(2) * (n(2) + p() * x())
                    + s() * (n(3) + n(3) * p() * x() + p().pow(2) * x().pow(2))
                    - p() * s().pow(3) * (n(-1) + t()) * t() * (n(-1) + u()) * u() * x().pow(2)
                        * (n(1) + p().pow(2) * t() * u() * x().pow(2))))
        - q().pow(3) * v().pow(2) * x().pow(3)
            * (-(p() * s().pow(2) * x() * (n(2) + p() * x()))
                + s() * t() * u() * v().pow(2) * x()
                    * (n(1)
                        + p() * s() * (n(-1) + t()) * (n(-1) + u()) * x()
                        + p().pow(2) * s() * (n(-1) + t()) * t() * (n(-1) + u()) * u() * x().pow(2))
                + v() * (n(1) - p() * s().pow(2) * t().pow(2) * u().pow(2) * x().pow(2)
                    + s() * (n(3) + n(2) * p() * x())
                    - p() * s().pow(3) * (n(-1) + t()) * t() * (n(-1) + u()) * u() * x().pow(2)
                        * (n(2) + p() * x() + p().pow(2) * t() * u() * x().pow(2))))
        - q() * v() * x()
            * (n(3) + p() * x()
                + s() * (n(1) + n(3) * t() * u() * v() * x()
                    + p() * x() * (n(1) + t() * u() * v() * x() + n(2) * t().pow(2) * u().pow(2) * v() * x())
                    + p().pow(2) * x().pow(2)
                        * (n(1) - t().pow(2) * (n(-1) + u()) * u().pow(2) * v() * x()
                            + t().pow(3) * u().pow(2) * (n(-1) + n(2) * u()) * v() * x()))
                + p() * s().pow(2) * t() * u() * x().pow(2)
                    * (p() * t().pow(2) * (n(-1) + u()) * v() * x() * (n(1) + u() + p() * u() * x())
                        - (n(-1) + u()) * v() * (n(1) + p() * (n(1) + u()) * x())
                        - t() * (v() + p().pow(2) * u().pow(2) * v() * x().pow(2)
                            - u() * (n(-1) + v() + p().pow(2) * v() * x().pow(2)))))
}

/// Denominator of F4; expands to exactly 19 monomials.
pub fn f4_denominator() -> Poly {
    n(1)
        + q().pow(4) * s() * v().pow(3) * x().pow(4) * (v() - p() * s() * x())
        - q() * v() * x()
            * (n(3) + s() + p() * x() + p() * s() * x() + p().pow(2) * s() * x().pow(2))
        - q().pow(3) * v().pow(2) * x().pow(3)
            * (v() - p() * s().pow(2) * x() * (n(2) + p() * x()) + s() * v() * (n(3) + n(2) * p() * x()))
        + q().pow(2) * v() * x().pow(2)
            * (-(p() * s().pow(2) * x())
                + v() * (n(3) + p() * x() + s() * (n(3) + n(3) * p() * x() + p().pow(2) * x().pow(2))))
}

/// k = 4: the full six-variable rational form.
pub fn f4_gf() -> RationalGF {
    RationalGF::new(f4_numerator(), f4_denominator()).expect("constant term 1")
}

/// The displayed single-variable specializations, transcribed independently
/// of the full forms they specialize.
pub fn named_specialization(id: ClosedFormId) -> Result<RationalGF> {
    let gf = match id {
        ClosedFormId::F3Counting => RationalGF::new(n(1) - x(), n(1) - n(2) * x()),
        ClosedFormId::F4Counting => RationalGF::new(
            n(1) - n(3) * x() + n(2) * x().pow(2),
            n(1) - n(4) * x() + n(4) * x().pow(2) - n(2) * x().pow(3) + n(2) * x().pow(4),
        ),
        ClosedFormId::F3Xv => RationalGF::new(
            n(1) - v() * x(),
            n(1) - n(2) * v() * x() - v() * x().pow(2) + v().pow(2) * x().pow(2),
        ),
        ClosedFormId::F3Xu => RationalGF::new(
            n(1) - n(2) * x() + u() * x() - u() * x().pow(2) + u().pow(2) * x().pow(2),
            n(1) - n(2) * x(),
        ),
        ClosedFormId::F3Xt => RationalGF::new(
            n(1) - n(2) * x() + t() * x() - t() * x().pow(2) + t().pow(2) * x().pow(2),
            n(1) - n(2) * x(),
        ),
        ClosedFormId::F4Xu => RationalGF::new(
            n(1)
                + (n(-4) + u()) * x()
                + (n(4) - n(3) * u() + u().pow(2)) * x().pow(2)
                + (n(-2) + n(2) * u() - u().pow(2) + u().pow(3)) * x().pow(3)
                - (n(-2) + u().pow(2) + u().pow(3)) * x().pow(4),
            n(1) - n(4) * x() + n(4) * x().pow(2) - n(2) * x().pow(3) + n(2) * x().pow(4),
        ),
        ClosedFormId::F4Xt => RationalGF::new(
            n(1)
                + (n(-4) + t()) * x()
                + (n(4) - n(3) * t() + t().pow(2)) * x().pow(2)
                + (n(-2) + n(2) * t() - t().pow(2) + t().pow(3)) * x().pow(3)
                - (n(-2) + t().pow(2) + t().pow(3)) * x().pow(4),
            n(1) - n(4) * x() + n(4) * x().pow(2) - n(2) * x().pow(3) + n(2) * x().pow(4),
        ),
        other => return Err(Error::UnknownClosedForm(other.name().to_string())),
    };
    Ok(gf.expect("constant term 1"))
}

/// Any of the ten rational-function ids.
pub fn rational_gf(id: ClosedFormId) -> Result<RationalGF> {
    match id {
        ClosedFormId::F2 => Ok(f2_gf()),
        ClosedFormId::F3 => Ok(f3_gf()),
        ClosedFormId::F4 => Ok(f4_gf()),
        ClosedFormId::LmaxSeparable | ClosedFormId::STpq => {
            Err(Error::UnknownClosedForm(format!("{} has no rational form", id.name())))
        }
        other => named_specialization(other),
    }
}

/// Expansion of any closed-form id to the given order, including the two
/// series-only forms.
pub fn expand(id: ClosedFormId, order: usize) -> Result<TruncSeries> {
    match id {
        ClosedFormId::LmaxSeparable => lmax_separable_series(order),
        ClosedFormId::STpq => Ok(s_tpq_series(order)),
        other => rational_gf(other)?.expand(order),
    }
}

/// The series sum_{n>=1} x^n sum_{separable σ of length n} u^{lrmax(σ)},
/// expanded from its nested-square-root closed form (zero constant term).
///
/// Intermediate coefficients involve quarters; the quarters cancel in the
/// final quotient, which is asserted to have non-negative integer
/// coefficients.
pub fn lmax_separable_series(order: usize) -> Result<TruncSeries> {
    // work one order higher: numerator and denominator share a factor of x
    let work = order + 1;
    let quarter = crate::series::rat_frac(1, 4);
    let radicand = TruncSeries::from_poly(&(x().pow(2) - n(6) * x() + n(1)), work);
    let root = radicand.sqrt()?;
    // w = -r/4 - x u + x/4 + 5/4
    let w = &root.scale(&-quarter.clone())
        + &TruncSeries::from_poly(
            &(-(x() * u()) + Poly::constant(quarter.clone()) * x()
                + Poly::constant(crate::series::rat_frac(5, 4))),
            work,
        );
    let shifted = &(&(&w * &w) + &root) - &TruncSeries::from_poly(&(x() + n(1)), work);
    let inner_root = shifted.sqrt()?;
    let numerator = &(&inner_root.scale(&crate::series::rat(4)) - &root)
        + &TruncSeries::from_poly(&(n(4) * x() * u() + x() - n(3)), work);
    let denominator =
        (&root - &TruncSeries::from_poly(&(x() + n(1)), work)).scale(&crate::series::rat(2));
    let series = numerator.div(&denominator)?;
    assert_eq!(series.order(), order);
    assert!(
        series.all_nonnegative_integer_coefficients(),
        "lrmax distribution must have non-negative integer coefficients"
    );
    Ok(series)
}

/// The unique series S(t, p, q) with zero constant term satisfying
/// pq S^3 + pq S^2 t + S((p+q)t - 1) + t = 0, computed by the t-adic
/// fixed-point iteration S <- t + (p+q) t S + pq t S^2 + pq S^3.
///
/// Coefficient of t^n is the ascent/descent polynomial over separable
/// permutations of length n.
pub fn s_tpq_series(order: usize) -> TruncSeries {
    // iterate with x standing in for t, then swap the exponents at the end
    let t_lin = TruncSeries::from_poly(&x(), order);
    let pq_sum = TruncSeries::from_poly(&((p() + q()) * x()), order);
    let pq_prod_t = TruncSeries::from_poly(&(p() * q() * x()), order);
    let pq_prod = TruncSeries::from_poly(&(p() * q()), order);
    let mut series = TruncSeries::zero(order);
    loop {
        let sq = &series * &series;
        let cube = &sq * &series;
        let next = &(&(&t_lin + &(&pq_sum * &series)) + &(&pq_prod_t * &sq)) + &(&pq_prod * &cube);
        if next == series {
            break;
        }
        series = next;
    }
    // residual of the cubic must vanish identically at the fixed point
    let residual = {
        let sq = &series * &series;
        let cube = &sq * &series;
        let linear = &pq_sum - &TruncSeries::one(order);
        &(&(&(&pq_prod * &cube) + &(&pq_prod_t * &sq)) + &(&linear * &series)) + &t_lin
    };
    assert!(residual.is_zero(), "cubic residual must vanish at the fixed point");
    series.swap_vars(Var::X, Var::T)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, AffineSeries, Monomial};

    fn xpow(e: u16) -> Monomial {
        Monomial::var(Var::X, e)
    }

    fn counting_sequence(series: &TruncSeries) -> Vec<String> {
        (0..=series.order())
            .map(|d| {
                let c = series.coeff(&xpow(d as u16));
                assert!(c.denom() == &num_bigint::BigInt::from(1));
                c.numer().to_string()
            })
            .collect()
    }

    #[test]
    fn f2_expansion() {
        let series = f2_gf().expand(3).unwrap();
        assert_eq!(series.x_coefficient(0), Poly::one());
        assert_eq!(series.x_coefficient(1), Poly::term(Monomial([0, 0, 0, 1, 1, 1, 1]), rat(1)));
        // x^3 coefficient is the single monomial q^2 u v^3 s^3 t
        assert_eq!(series.x_coefficient(3), Poly::term(Monomial([0, 0, 2, 1, 3, 3, 1]), rat(1)));
    }

    #[test]
    fn f2_one_monomial_per_degree() {
        let series = f2_gf().expand(8).unwrap();
        for deg in 1..=8u16 {
            let expect = Poly::term(Monomial([0, 0, deg - 1, 1, deg, deg, 1]), rat(1));
            assert_eq!(series.x_coefficient(deg as usize), expect, "x^{deg}");
        }
        let ones = f2_gf().specialize(&Var::ALL[1..]).expand(4).unwrap();
        assert_eq!(counting_sequence(&ones), ["1", "1", "1", "1", "1"]);
    }

    #[test]
    fn f3_initial_terms() {
        let series = f3_gf().expand(3).unwrap();
        assert_eq!(series.x_coefficient(0), Poly::one());
        assert_eq!(series.x_coefficient(1), Poly::term(Monomial([0, 0, 0, 1, 1, 1, 1]), rat(1)));
        let x2 = Poly::term(Monomial([0, 1, 0, 2, 1, 1, 2]), rat(1))
            + Poly::term(Monomial([0, 0, 1, 1, 2, 2, 1]), rat(1));
        assert_eq!(series.x_coefficient(2), x2);
        let x3 = Poly::term(Monomial([0, 1, 1, 2, 2, 1, 2]), rat(1))
            + Poly::term(Monomial([0, 1, 1, 2, 2, 2, 1]), rat(1))
            + Poly::term(Monomial([0, 1, 1, 1, 2, 2, 2]), rat(1))
            + Poly::term(Monomial([0, 0, 2, 1, 3, 3, 1]), rat(1));
        assert_eq!(series.x_coefficient(3), x3);
    }

    #[test]
    fn f3_counting_powers_of_two() {
        let ones = f3_gf().specialize(&Var::ALL[1..]).expand(10).unwrap();
        assert_eq!(
            counting_sequence(&ones),
            ["1", "1", "2", "4", "8", "16", "32", "64", "128", "256", "512"]
        );
        let named = named_specialization(ClosedFormId::F3Counting).unwrap().expand(10).unwrap();
        assert_eq!(ones, named);
    }

    #[test]
    fn f4_monomial_checksums() {
        assert_eq!(f4_numerator().num_terms(), 100);
        assert_eq!(f4_denominator().num_terms(), 19);
    }

    #[test]
    fn f4_counting_sequence() {
        let ones = f4_gf().specialize(&Var::ALL[1..]).expand(10).unwrap();
        assert_eq!(
            counting_sequence(&ones),
            ["1", "1", "2", "6", "16", "42", "112", "300", "804", "2156", "5784"]
        );
        let named = named_specialization(ClosedFormId::F4Counting).unwrap().expand(10).unwrap();
        assert_eq!(ones, named);
    }

    #[test]
    fn named_specialization_series() {
        let f3_xu = named_specialization(ClosedFormId::F3Xu).unwrap().expand(3).unwrap();
        assert_eq!(f3_xu.x_coefficient(0), Poly::one());
        assert_eq!(f3_xu.x_coefficient(1), u());
        assert_eq!(f3_xu.x_coefficient(2), u() + u().pow(2));
        assert_eq!(f3_xu.x_coefficient(3), n(2) * u() + n(2) * u().pow(2));

        let f3_xv = named_specialization(ClosedFormId::F3Xv).unwrap().expand(2).unwrap();
        assert_eq!(f3_xv.x_coefficient(1), v());
        assert_eq!(f3_xv.x_coefficient(2), v() + v().pow(2));
    }

    #[test]
    fn specializations_match_full_forms() {
        // marginalizing the six-variable forms reproduces the one-variable ones
        let tail = [Var::P, Var::Q, Var::V, Var::S, Var::T];
        let lhs = f3_gf().specialize(&tail).expand(10).unwrap();
        let rhs = named_specialization(ClosedFormId::F3Xu).unwrap().expand(10).unwrap();
        assert_eq!(lhs, rhs);

        let lhs = f4_gf().specialize(&tail).expand(10).unwrap();
        let rhs = named_specialization(ClosedFormId::F4Xu).unwrap().expand(10).unwrap();
        assert_eq!(lhs, rhs);

        let tail_v = [Var::P, Var::Q, Var::U, Var::S, Var::T];
        let lhs = f3_gf().specialize(&tail_v).expand(10).unwrap();
        let rhs = named_specialization(ClosedFormId::F3Xv).unwrap().expand(10).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn u_t_renaming_identity() {
        let xu = named_specialization(ClosedFormId::F3Xu).unwrap();
        let xt = named_specialization(ClosedFormId::F3Xt).unwrap();
        assert!(xu.swap_vars(Var::U, Var::T).equivalent(&xt));
        let xu = named_specialization(ClosedFormId::F4Xu).unwrap();
        let xt = named_specialization(ClosedFormId::F4Xt).unwrap();
        assert!(xu.swap_vars(Var::U, Var::T).equivalent(&xt));
        assert_eq!(
            xu.swap_vars(Var::U, Var::T).expand(10).unwrap(),
            xt.expand(10).unwrap()
        );
    }

    #[test]
    fn unknown_specialization_rejected() {
        assert!(named_specialization(ClosedFormId::F2).is_err());
        assert!(rational_gf(ClosedFormId::STpq).is_err());
        assert!(ClosedFormId::parse("F9").is_err());
        assert_eq!(ClosedFormId::parse("F4_xu").unwrap(), ClosedFormId::F4Xu);
    }

    #[test]
    fn lmax_series_low_terms() {
        let series = lmax_separable_series(5).unwrap();
        assert_eq!(series.x_coefficient(0), Poly::zero());
        assert_eq!(series.x_coefficient(1), u());
        assert_eq!(series.x_coefficient(2), u() + u().pow(2));
        // row sums are the class sizes 1, 2, 6, 22, 90
        let ones = series.specialize(&[Var::U]);
        assert_eq!(ones.coeff(&xpow(5)), rat(90));
        assert_eq!(ones.coeff(&xpow(4)), rat(22));
        assert!(series.all_nonnegative_integer_coefficients());
    }

    #[test]
    fn s_tpq_low_terms() {
        let series = s_tpq_series(5);
        let t1 = Monomial::var(Var::T, 1);
        assert_eq!(series.coeff(&t1), rat(1));
        // t^3 coefficient: p^2 + 4pq + q^2
        let t3 = series
            .iter()
            .filter(|(m, _)| m.exponent(Var::T) == 3)
            .map(|(m, c)| (m.without(&[Var::T]), c.clone()))
            .collect::<Vec<_>>();
        let expect = vec![
            (Monomial::var(Var::Q, 2), rat(1)),
            (Monomial::var(Var::P, 1).mul(&Monomial::var(Var::Q, 1)), rat(4)),
            (Monomial::var(Var::P, 2), rat(1)),
        ];
        assert_eq!(t3, expect);
        // p = q = 1 leaves the class sizes
        let ones = series.specialize(&[Var::P, Var::Q]);
        let sizes: Vec<String> = (1..=5u16)
            .map(|d| ones.coeff(&Monomial::var(Var::T, d)).numer().to_string())
            .collect();
        assert_eq!(sizes, ["1", "2", "6", "22", "90"]);
    }

    #[test]
    fn affine_fixed_point_reproduces_f3() {
        // the u = 1 specialization satisfies F = a + b F with
        // a = 1 + vstx - qvsx + pvst^2 x^2 - pqvsx^2
        //       + pqv^2 st^2 x^3/(1-qvx) - pq^2 v^2 s x^3/(1-qvx)
        // b = qvsx + pqvsx^2 + pq^2 v^2 s x^3/(1-qvx)
        let order = 8;
        let geom = TruncSeries::from_poly(&(n(1) - q() * v() * x()), order)
            .invert()
            .unwrap();
        let a = &TruncSeries::from_poly(
            &(n(1) + v() * s() * t() * x() - q() * v() * s() * x()
                + p() * v() * s() * t().pow(2) * x().pow(2)
                - p() * q() * v() * s() * x().pow(2)),
            order,
        ) + &geom.mul_poly(
            &(p() * q() * v().pow(2) * s() * t().pow(2) * x().pow(3)
                - p() * q().pow(2) * v().pow(2) * s() * x().pow(3)),
        );
        let b = &TruncSeries::from_poly(
            &(q() * v() * s() * x() + p() * q() * v() * s() * x().pow(2)),
            order,
        ) + &geom.mul_poly(&(p() * q().pow(2) * v().pow(2) * s() * x().pow(3)));
        let solved = AffineSeries { a, b }.solve().unwrap();
        let expect = f3_gf().specialize(&[Var::U]).expand(order).unwrap();
        assert_eq!(solved, expect);
    }
}
