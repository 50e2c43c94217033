//! Brute-force ground truth: enumerate restricted permutation classes
//! directly and build distribution series with no generating-function
//! machinery.
//!
//! This module filters by direct occurrence search only. It deliberately
//! shares nothing with the functional-equation solver beyond the permutation
//! primitives, so coefficient-exact agreement between the two routes is a
//! meaningful check.

use std::collections::BTreeMap;

use crate::config;
use crate::error::{Error, Result};
use crate::perm::{avoids_pop, Permutation, PopPattern};
use crate::separable::generate_separable;
use crate::series::{rat, Monomial, TruncSeries, Var};
use crate::stats;

/// All permutations of length n avoiding 2413, 3142 and (optionally) the
/// given POP, in lexicographic order.
pub fn enumerate_class(n: usize, pop: Option<&PopPattern>) -> Result<Vec<Permutation>> {
    let max = config::enumeration_bound();
    if n > max {
        return Err(Error::EnumerationLimit { n, max });
    }
    let mut out = generate_separable(n)?;
    if let Some(pat) = pop {
        out.retain(|p| avoids_pop(p, pat));
    }
    Ok(out)
}

/// Joint distribution series of the class: sum over n <= order of
/// x^n * (statistic monomials of every class member of length n).
pub fn distribution_series(pop: Option<&PopPattern>, order: usize) -> Result<TruncSeries> {
    let max = config::enumeration_bound();
    if order > max {
        return Err(Error::EnumerationLimit { n: order, max });
    }
    let mut counts: BTreeMap<Monomial, u64> = BTreeMap::new();
    for n in 0..=order {
        let xn = Monomial::var(Var::X, n as u16);
        for p in enumerate_class(n, pop)? {
            *counts.entry(xn.mul(&stats::monomial(&p))).or_insert(0) += 1;
        }
    }
    let mut poly = crate::series::Poly::zero();
    for (mono, count) in counts {
        poly.add_assign_term(mono, &rat(count as i64));
    }
    Ok(TruncSeries::from_poly(&poly, order))
}

/// Distribution series for the class avoiding the flat POP of length k.
pub fn oracle_series(k: usize, order: usize) -> Result<TruncSeries> {
    let pop = PopPattern::flat(k).map_err(|_| Error::KTooSmall(k))?;
    distribution_series(Some(&pop), order)
}

/// Per-length table of statistic multiplicities for one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub n: usize,
    /// The optional POP restriction on top of {2413, 3142}.
    pub pop: Option<PopPattern>,
    /// (e_p, e_q, e_u, e_v, e_s, e_t) -> number of class members.
    pub rows: BTreeMap<Monomial, u64>,
}

impl DistributionTable {
    pub fn total(&self) -> u64 {
        self.rows.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|(m, count)| {
                let stats: Vec<u64> = m.0[1..].iter().map(|&e| e as u64).collect();
                serde_json::json!({ "exps": stats, "count": count })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "class": {
                "chains": ["2413", "3142"],
                "pop": self.pop.as_ref().map(|p| p.to_json()),
            },
            "rows": rows,
        })
    }

    /// Plain-text table in canonical exponent order.
    pub fn to_text(&self) -> String {
        let mut out = String::from("asc des lrmax rlmax lrmin rlmin count\n");
        for (m, count) in &self.rows {
            let e = &m.0;
            out.push_str(&format!(
                "{:>3} {:>3} {:>5} {:>5} {:>5} {:>5} {count}\n",
                e[1], e[2], e[3], e[4], e[5], e[6]
            ));
        }
        out
    }
}

/// Tabulate statistic multiplicities over the class of length n.
pub fn distribution_table(n: usize, pop: Option<&PopPattern>) -> Result<DistributionTable> {
    let mut rows = BTreeMap::new();
    for p in enumerate_class(n, pop)? {
        *rows.entry(stats::monomial(&p)).or_insert(0) += 1;
    }
    Ok(DistributionTable { n, pop: pop.cloned(), rows })
}

/// Histogram of the (1-indexed) position of the maximum value n over the
/// class avoiding the flat POP of length k.
pub fn position_of_max_histogram(n: usize, k: usize) -> Result<BTreeMap<usize, u64>> {
    if n == 0 {
        return Err(Error::InvalidPermutation("histogram needs n >= 1".into()));
    }
    let pop = PopPattern::flat(k).map_err(|_| Error::KTooSmall(k))?;
    let mut hist = BTreeMap::new();
    for p in enumerate_class(n, Some(&pop))? {
        let pos = p.position_of_max().expect("non-empty");
        *hist.entry(pos).or_insert(0) += 1;
    }
    Ok(hist)
}
