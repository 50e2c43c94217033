//! The six classical statistics and their transformation laws.

use serde::Serialize;

use crate::perm::Permutation;
use crate::series::Monomial;

/// Counts of ascents, descents, left-to-right maxima, right-to-left maxima,
/// left-to-right minima and right-to-left minima.
///
/// For n >= 1, asc + des = n - 1 and each of the four extremum statistics
/// lies in 1..=n (the last element is always a right-to-left maximum and a
/// right-to-left minimum). For ε all six are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StatVector {
    pub asc: usize,
    pub des: usize,
    pub lrmax: usize,
    pub rlmax: usize,
    pub lrmin: usize,
    pub rlmin: usize,
}

impl StatVector {
    pub const ZERO: StatVector =
        StatVector { asc: 0, des: 0, lrmax: 0, rlmax: 0, lrmin: 0, rlmin: 0 };

    /// Exponent vector (e_p, e_q, e_u, e_v, e_s, e_t) =
    /// (asc, des, lrmax, rlmax, lrmin, rlmin).
    pub fn exponents(&self) -> [u16; 6] {
        [
            self.asc as u16,
            self.des as u16,
            self.lrmax as u16,
            self.rlmax as u16,
            self.lrmin as u16,
            self.rlmin as u16,
        ]
    }

    /// The statistic monomial p^asc q^des u^lrmax v^rlmax s^lrmin t^rlmin
    /// (x-exponent zero).
    pub fn monomial(&self) -> Monomial {
        let e = self.exponents();
        Monomial([0, e[0], e[1], e[2], e[3], e[4], e[5]])
    }
}

/// Compute all six statistics in one pass over the permutation.
pub fn stat_vector(p: &Permutation) -> StatVector {
    let v = p.values();
    let n = v.len();
    if n == 0 {
        return StatVector::ZERO;
    }
    let mut sv = StatVector::ZERO;
    let mut max_so_far = 0u8;
    let mut min_so_far = u8::MAX;
    for i in 0..n {
        if i + 1 < n {
            if v[i] < v[i + 1] {
                sv.asc += 1;
            } else {
                sv.des += 1;
            }
        }
        if v[i] > max_so_far {
            max_so_far = v[i];
            sv.lrmax += 1;
        }
        if v[i] < min_so_far {
            min_so_far = v[i];
            sv.lrmin += 1;
        }
    }
    let mut max_from_right = 0u8;
    let mut min_from_right = u8::MAX;
    for i in (0..n).rev() {
        if v[i] > max_from_right {
            max_from_right = v[i];
            sv.rlmax += 1;
        }
        if v[i] < min_from_right {
            min_from_right = v[i];
            sv.rlmin += 1;
        }
    }
    sv
}

/// The statistic monomial of a permutation; `monomial(ε)` is the unit
/// monomial, matching the constant term 1 of every distribution series.
pub fn monomial(p: &Permutation) -> Monomial {
    stat_vector(p).monomial()
}

/// JSON record for one permutation: perm text plus the six statistics.
pub fn to_json(p: &Permutation) -> serde_json::Value {
    let sv = stat_vector(p);
    serde_json::json!({
        "perm": p.to_string(),
        "asc": sv.asc,
        "des": sv.des,
        "lrmax": sv.lrmax,
        "rlmax": sv.rlmax,
        "lrmin": sv.lrmin,
        "rlmin": sv.rlmin,
    })
}
