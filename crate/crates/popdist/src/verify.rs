//! Cross-validation suites: every generating-function route is compared
//! against the brute-force oracle and against the others, coefficient by
//! coefficient. The CLI `verify` subcommand and the acceptance tests both
//! run these.

use num_traits::One;

use crate::closed_forms::{self, ClosedFormId};
use crate::error::Result;
use crate::oracle;
use crate::perm::{for_each_permutation, PopPattern};
use crate::separable::{generate_separable, schroder, stankova_decompose};
use crate::series::build::{n, u, v, x};
use crate::series::{format_term, Coeff, Monomial, RationalGF, TruncSeries, Var};
use crate::solver;
use crate::stats::{stat_vector, StatVector};

/// Outcome of one comparison.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: true, detail: detail.into() }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed: false, detail: detail.into() }
    }
}

/// Compare two series exactly, reporting the first differing monomial.
pub fn series_eq(name: impl Into<String>, lhs: &TruncSeries, rhs: &TruncSeries) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::pass(name, format!("{} monomials agree", lhs.num_terms())),
        Some((mono, a, b)) => Check::fail(
            name,
            format!(
                "first differing monomial {}: {} vs {}",
                format_term(&mono, &Coeff::one()),
                crate::series::format_coeff(&a),
                crate::series::format_coeff(&b)
            ),
        ),
    }
}

fn bool_check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    if passed {
        Check::pass(name, detail)
    } else {
        Check::fail(name, detail)
    }
}

/// Marginal variable sets: everything except x and the listed survivors.
fn drop_all_but(keep: &[Var]) -> Vec<Var> {
    Var::ALL[1..].iter().copied().filter(|v| !keep.contains(v)).collect()
}

/// Closed forms against the oracle.
pub fn suite_closed_vs_oracle(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (k, gf) in [
        (2, closed_forms::f2_gf()),
        (3, closed_forms::f3_gf()),
        (4, closed_forms::f4_gf()),
    ] {
        let oracle_series = oracle::oracle_series(k, max_n)?;
        checks.push(series_eq(
            format!("F{k} closed form vs oracle (n <= {max_n})"),
            &gf.expand(max_n)?,
            &oracle_series,
        ));
    }
    let marginals: [(ClosedFormId, usize, &[Var]); 7] = [
        (ClosedFormId::F3Counting, 3, &[]),
        (ClosedFormId::F4Counting, 4, &[]),
        (ClosedFormId::F3Xu, 3, &[Var::U]),
        (ClosedFormId::F3Xt, 3, &[Var::T]),
        (ClosedFormId::F3Xv, 3, &[Var::V]),
        (ClosedFormId::F4Xu, 4, &[Var::U]),
        (ClosedFormId::F4Xt, 4, &[Var::T]),
    ];
    for (id, k, keep) in marginals {
        let lhs = closed_forms::named_specialization(id)?.expand(max_n)?;
        let rhs = oracle::oracle_series(k, max_n)?.specialize(&drop_all_but(keep));
        checks.push(series_eq(
            format!("{} vs oracle marginal (n <= {max_n})", id.name()),
            &lhs,
            &rhs,
        ));
    }
    checks.extend(check_lmax_series(max_n)?);
    checks.extend(check_s_tpq(max_n)?);
    Ok(checks)
}

/// The nested-square-root lrmax series against the oracle distribution on
/// unrestricted separable permutations.
pub fn check_lmax_series(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let series = closed_forms::lmax_separable_series(max_n)?;
    let with_unit = &series + &TruncSeries::one(max_n);
    let oracle_lmax =
        oracle::distribution_series(None, max_n)?.specialize(&drop_all_but(&[Var::U]));
    checks.push(series_eq(
        format!("lrmax square-root series vs oracle (n <= {max_n})"),
        &with_unit,
        &oracle_lmax,
    ));
    checks.push(bool_check(
        "lrmax series has non-negative integer coefficients",
        series.all_nonnegative_integer_coefficients(),
        "checked every stored coefficient",
    ));
    let row_sums = series.specialize(&[Var::U]);
    let mut sums_ok = true;
    for deg in 1..=max_n {
        if row_sums.coeff(&Monomial::var(Var::X, deg as u16))
            != Coeff::from_integer(schroder(deg - 1))
        {
            sums_ok = false;
        }
    }
    checks.push(bool_check(
        format!("lrmax row sums are Schröder numbers (n <= {max_n})"),
        sums_ok,
        "u = 1 specialization",
    ));
    Ok(checks)
}

/// The cubic-equation series for the ascent/descent distribution: zero
/// residual, oracle agreement, Schröder counts at p = q = 1.
pub fn check_s_tpq(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let series_t = closed_forms::s_tpq_series(max_n);
    let series_x = series_t.swap_vars(Var::X, Var::T);
    // residual of pq S^3 + pq S^2 t + S((p+q)t - 1) + t, with t in the x slot
    let sq = &series_x * &series_x;
    let cube = &sq * &series_x;
    let pq = TruncSeries::from_poly(
        &(crate::series::build::p() * crate::series::build::q()),
        max_n,
    );
    let pq_t = pq.mul_poly(&x());
    let lin = TruncSeries::from_poly(
        &((crate::series::build::p() + crate::series::build::q()) * x() - n(1)),
        max_n,
    );
    let residual = &(&(&(&pq * &cube) + &(&pq_t * &sq)) + &(&lin * &series_x))
        + &TruncSeries::from_poly(&x(), max_n);
    checks.push(bool_check(
        format!("cubic residual vanishes mod t^{}", max_n + 1),
        residual.is_zero(),
        format!("{} residual terms", residual.num_terms()),
    ));
    let with_unit = &series_x + &TruncSeries::one(max_n);
    let oracle_pq =
        oracle::distribution_series(None, max_n)?.specialize(&drop_all_but(&[Var::P, Var::Q]));
    checks.push(series_eq(
        format!("asc/des cubic series vs oracle (n <= {max_n})"),
        &with_unit,
        &oracle_pq,
    ));
    let ones = series_x.specialize(&[Var::P, Var::Q]);
    let mut counts_ok = true;
    for deg in 1..=max_n {
        if ones.coeff(&Monomial::var(Var::X, deg as u16))
            != Coeff::from_integer(schroder(deg - 1))
        {
            counts_ok = false;
        }
    }
    checks.push(bool_check(
        format!("cubic series counts are Schröder numbers (n <= {max_n})"),
        counts_ok,
        "p = q = 1 specialization",
    ));
    Ok(checks)
}

/// Solver output against the oracle for k = 2..6, in all three modes.
pub fn suite_thm4_vs_oracle(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in 2..=6 {
        let oracle_series = oracle::oracle_series(k, max_n)?;
        let result = solver::solve_fk(k, max_n)?;
        checks.push(series_eq(
            format!("solver F{k} vs oracle (n <= {max_n})"),
            &result.full,
            &oracle_series,
        ));
        checks.push(series_eq(
            format!("solver counting k={k} vs oracle counts"),
            &solver::solve_fk_counting(k, max_n)?,
            &oracle_series.specialize(&Var::ALL[1..]),
        ));
        checks.push(series_eq(
            format!("solver (x,u,v) k={k} vs oracle marginal"),
            &solver::solve_fk_uv(k, max_n)?,
            &oracle_series.specialize(&drop_all_but(&[Var::U, Var::V])),
        ));
    }
    Ok(checks)
}

/// Solver output against the explicit closed forms.
pub fn suite_thm4_vs_closed(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    checks.push(series_eq(
        format!("solver F2 vs closed form (n <= {max_n})"),
        &solver::solve_fk(2, max_n)?.full,
        &closed_forms::f2_gf().expand(max_n)?,
    ));
    checks.push(series_eq(
        format!("solver F3 vs closed form (n <= {max_n})"),
        &solver::solve_fk(3, max_n)?.full,
        &closed_forms::f3_gf().expand(max_n)?,
    ));
    checks.push(series_eq(
        format!("solver F4 vs closed form (n <= {max_n})"),
        &solver::solve_fk(4, max_n)?.full,
        &closed_forms::f4_gf().expand(max_n)?,
    ));
    for (k, id) in [(3, ClosedFormId::F3Counting), (4, ClosedFormId::F4Counting)] {
        checks.push(series_eq(
            format!("solver counting k={k} vs {}", id.name()),
            &solver::solve_fk_counting(k, 10)?,
            &closed_forms::named_specialization(id)?.expand(10)?,
        ));
    }
    // the (x,u,v) closed form for k = 3
    let den = n(1) - n(2) * v() * x() - v() * x().pow(2) + v().pow(2) * x().pow(2);
    let num = &den
        + (u() * v() * x() + u().pow(2) * v() * x().pow(2) - u() * v().pow(2) * x().pow(2));
    let f3_uv = RationalGF::new(num, den).expect("constant term 1").expand(10)?;
    checks.push(series_eq(
        "solver (x,u,v) k=3 vs closed form (n <= 10)",
        &solver::solve_fk_uv(3, 10)?,
        &f3_uv,
    ));
    checks.extend(check_uv_consistency(max_n)?);
    Ok(checks)
}

/// The simplified system against the (p,q,s,t) -> 1 marginal of the full
/// solver, and counting against the all-ones marginal.
pub fn check_uv_consistency(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in 2..=6 {
        let full = solver::solve_fk(k, max_n)?.full;
        checks.push(series_eq(
            format!("solver (x,u,v) k={k} vs full marginal (n <= {max_n})"),
            &solver::solve_fk_uv(k, max_n)?,
            &full.specialize(&[Var::P, Var::Q, Var::S, Var::T]),
        ));
        checks.push(series_eq(
            format!("solver counting k={k} vs full marginal (n <= {max_n})"),
            &solver::solve_fk_counting(k, max_n)?,
            &full.specialize(&Var::ALL[1..]),
        ));
    }
    Ok(checks)
}

/// u <-> t exchange symmetry and the inverse-closure of the classes.
pub fn suite_symmetry(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in 3..=5 {
        let xut = solver::solve_fk(k, max_n)?
            .full
            .specialize(&[Var::P, Var::Q, Var::V, Var::S]);
        checks.push(series_eq(
            format!("F{k}(x,u,t) invariant under u <-> t (n <= {max_n})"),
            &xut.swap_vars(Var::U, Var::T),
            &xut,
        ));
    }
    for (a, b) in [
        (ClosedFormId::F3Xu, ClosedFormId::F3Xt),
        (ClosedFormId::F4Xu, ClosedFormId::F4Xt),
    ] {
        let gf_a = closed_forms::named_specialization(a)?;
        let gf_b = closed_forms::named_specialization(b)?;
        checks.push(bool_check(
            format!("{} equals {} as rational functions after renaming", a.name(), b.name()),
            gf_a.swap_vars(Var::U, Var::T).equivalent(&gf_b),
            "cross-multiplied numerators and denominators",
        ));
        checks.push(series_eq(
            format!("{} equals {} as series after renaming (n <= 10)", a.name(), b.name()),
            &gf_a.expand(10)?.swap_vars(Var::U, Var::T),
            &gf_b.expand(10)?,
        ));
    }
    for k in 2..=6 {
        let pop = PopPattern::flat(k).expect("k >= 1");
        let mut closed = true;
        for len in 0..=max_n {
            let class = oracle::enumerate_class(len, Some(&pop))?;
            let set: std::collections::BTreeSet<_> = class.iter().cloned().collect();
            if !class.iter().all(|p| set.contains(&p.inverse())) {
                closed = false;
            }
        }
        checks.push(bool_check(
            format!("class k={k} closed under inverse (n <= {max_n})"),
            closed,
            "element-wise membership of inverses",
        ));
    }
    Ok(checks)
}

/// Structural facts: position of the maximum, block decomposition
/// round-trip, statistic transformation laws.
pub fn suite_structure(max_n: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in 2..=6 {
        let mut confined = true;
        for len in 1..=max_n {
            for (pos, count) in oracle::position_of_max_histogram(len, k)? {
                if count > 0 && pos > k - 1 {
                    confined = false;
                }
            }
        }
        checks.push(bool_check(
            format!("maximum sits in the first {} positions (k={k}, n <= {max_n})", k - 1),
            confined,
            "histogram support",
        ));
    }

    let decompose_to = (max_n + 1).min(crate::config::generate_bound());
    let mut round_trip = true;
    for len in 1..=decompose_to {
        for p in generate_separable(len)? {
            let d = stankova_decompose(&p)?;
            if d.recompose() != p {
                round_trip = false;
            }
        }
    }
    checks.push(bool_check(
        format!("block decomposition round-trips (n <= {decompose_to})"),
        round_trip,
        "recomposition equality on every separable permutation",
    ));

    let mut laws = true;
    for len in 0..=max_n {
        for_each_permutation(len, |p| {
            let sv = stat_vector(p);
            let rv = stat_vector(&p.reverse());
            let cv = stat_vector(&p.complement());
            let iv = stat_vector(&p.inverse());
            let reverse_ok = rv
                == StatVector {
                    asc: sv.des,
                    des: sv.asc,
                    lrmax: sv.rlmax,
                    rlmax: sv.lrmax,
                    lrmin: sv.rlmin,
                    rlmin: sv.lrmin,
                };
            let complement_ok = cv
                == StatVector {
                    asc: sv.des,
                    des: sv.asc,
                    lrmax: sv.lrmin,
                    rlmax: sv.rlmin,
                    lrmin: sv.lrmax,
                    rlmin: sv.rlmax,
                };
            let inverse_ok = iv.lrmax == sv.rlmin && iv.rlmin == sv.lrmax;
            if !(reverse_ok && complement_ok && inverse_ok) {
                laws = false;
            }
        });
    }
    checks.push(bool_check(
        format!("statistic transformation laws (n <= {max_n})"),
        laws,
        "reverse, complement, inverse on all permutations",
    ));
    Ok(checks)
}

pub const SUITES: [&str; 6] = [
    "closed-vs-oracle",
    "thm4-vs-oracle",
    "thm4-vs-closed",
    "symmetry",
    "structure",
    "all",
];

/// Run a named suite.
pub fn run_suite(name: &str, max_n: usize) -> Result<Vec<Check>> {
    match name {
        "closed-vs-oracle" => suite_closed_vs_oracle(max_n),
        "thm4-vs-oracle" => suite_thm4_vs_oracle(max_n),
        "thm4-vs-closed" => suite_thm4_vs_closed(max_n),
        "symmetry" => suite_symmetry(max_n),
        "structure" => suite_structure(max_n),
        "all" => {
            let mut checks = suite_closed_vs_oracle(max_n)?;
            checks.extend(suite_thm4_vs_oracle(max_n)?);
            checks.extend(suite_thm4_vs_closed(max_n)?);
            checks.extend(suite_symmetry(max_n)?);
            checks.extend(suite_structure(max_n)?);
            Ok(checks)
        }
        other => Err(crate::error::Error::UnknownClosedForm(format!("suite {other}"))),
    }
}
