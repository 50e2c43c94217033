//! Expressions that are affine in one unknown series.

use crate::error::{Error, Result};

use super::TruncSeries;

/// The expression `a + b*F` for a single not-yet-known series `F`.
///
/// The functional-equation solvers build each side of an identity as an
/// `AffineSeries` in the unknown distribution series; products with known
/// series preserve affinity, so the final identity `F = a + b*F` is solved in
/// closed form by [`AffineSeries::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSeries {
    pub a: TruncSeries,
    pub b: TruncSeries,
}

impl AffineSeries {
    pub fn zero(order: usize) -> AffineSeries {
        AffineSeries { a: TruncSeries::zero(order), b: TruncSeries::zero(order) }
    }

    /// A known series, with no unknown part.
    pub fn known(series: TruncSeries) -> AffineSeries {
        let b = TruncSeries::zero(series.order());
        AffineSeries { a: series, b }
    }

    /// The bare unknown: 0 + 1*F.
    pub fn unknown(order: usize) -> AffineSeries {
        AffineSeries { a: TruncSeries::zero(order), b: TruncSeries::one(order) }
    }

    pub fn order(&self) -> usize {
        debug_assert_eq!(self.a.order(), self.b.order());
        self.a.order()
    }

    pub fn add(&self, other: &AffineSeries) -> AffineSeries {
        AffineSeries { a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn add_known(&self, series: &TruncSeries) -> AffineSeries {
        AffineSeries { a: &self.a + series, b: self.b.clone() }
    }

    pub fn mul_known(&self, series: &TruncSeries) -> AffineSeries {
        AffineSeries { a: &self.a * series, b: &self.b * series }
    }

    /// Solve `F = a + b*F` for `F`, i.e. `F = a * (1 - b)^{-1}`.
    ///
    /// `b` must have x-valuation at least 1 so that the identity determines F
    /// degree by degree.
    pub fn solve(&self) -> Result<TruncSeries> {
        if self.b.x_slices()[0].is_zero() {
            let one = TruncSeries::one(self.order());
            let denom = &one - &self.b;
            Ok(&self.a * &denom.invert().expect("1 - b has constant term 1"))
        } else {
            Err(Error::NonContractive)
        }
    }
}

/// Free-function form of [`AffineSeries::solve`].
pub fn solve_affine(aff: &AffineSeries) -> Result<TruncSeries> {
    aff.solve()
}
