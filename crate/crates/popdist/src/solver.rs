//! Functional-equation solver for the joint distribution series F_k of the
//! six statistics over separable permutations avoiding the flat POP of
//! length k, for any k >= 2.
//!
//! The system expresses F_k through per-shape components f_{k,i} and g_{k,i}
//! (i elements to the left of the maximum; the second-largest element to the
//! right resp. left of the maximum):
//!
//!   F_k = 1 + sum_{i=0}^{k-2} (f_{k,i} + g_{k,i})
//!
//! with recurrences whose coefficients involve the statistic polynomials X_n
//! of the unrestricted separable class and the already-known F_j for j < k.
//! Every right-hand side is affine in the one unknown specialization
//! F_k(x,p,q,1,v,s,t), so each level is solved in two stages:
//!
//! - stage 1 works at u = 1, propagates [`AffineSeries`] values through the
//!   recurrences, and resolves the affine fixed point;
//! - stage 2 re-evaluates the recurrences with general u, now with every
//!   F_k reference known, and assembles the full series.
//!
//! Lower indices F_j are produced by the same procedure and memoized in a
//! per-call context.

use std::collections::BTreeMap;

use crate::config;
use crate::error::{Error, Result};
use crate::oracle;
use crate::separable::schroder;
use crate::series::build::{n, p, q, s, t, u, v, x};
use crate::series::{AffineSeries, Coeff, Poly, TruncSeries, Var};

/// Statistic polynomials X_n(p,q,u,v,s,t) of the unrestricted separable
/// class, computed by brute-force enumeration. X_0 = 1.
#[derive(Clone, Debug)]
pub struct XnTable {
    entries: Vec<Poly>,
}

impl XnTable {
    pub fn max_n(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, n: usize) -> &Poly {
        &self.entries[n]
    }
}

/// Build the table for 0 <= n <= max_n.
pub fn xn_table(max_n: usize) -> Result<XnTable> {
    let bound = config::enumeration_bound();
    if max_n > bound {
        return Err(Error::EnumerationLimit { n: max_n, max: bound });
    }
    let mut entries = Vec::with_capacity(max_n + 1);
    for len in 0..=max_n {
        let series = oracle::distribution_series(None, len)?;
        entries.push(series.x_coefficient(len));
    }
    Ok(XnTable { entries })
}

/// One f/g component pair of the solved system, kept for introspection.
#[derive(Clone, Debug)]
pub struct FgPair {
    pub f: TruncSeries,
    pub g: TruncSeries,
}

/// Result of [`solve_fk`].
#[derive(Clone, Debug)]
pub struct FkResult {
    pub k: usize,
    pub order: usize,
    /// F_k(x,p,q,u,v,s,t) truncated at x^order.
    pub full: TruncSeries,
    /// The u = 1 specialization produced by stage 1 of the solve.
    pub u1: TruncSeries,
    /// Per-i components f_{k,i}, g_{k,i} with general u (retained for
    /// k <= 6).
    pub fg_trace: Option<Vec<FgPair>>,
}

/// Values the recurrences operate on: concrete series in stage 2, series
/// affine in the unknown F_k specialization in stage 1.
trait SystemValue: Clone {
    fn zero_value(order: usize) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn plus_series(&self, series: &TruncSeries) -> Self;
    fn times_series(&self, series: &TruncSeries) -> Self;
}

impl SystemValue for TruncSeries {
    fn zero_value(order: usize) -> Self {
        TruncSeries::zero(order)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn plus_series(&self, series: &TruncSeries) -> Self {
        self + series
    }
    fn times_series(&self, series: &TruncSeries) -> Self {
        self * series
    }
}

impl SystemValue for AffineSeries {
    fn zero_value(order: usize) -> Self {
        AffineSeries::zero(order)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn plus_series(&self, series: &TruncSeries) -> Self {
        self.add_known(series)
    }
    fn times_series(&self, series: &TruncSeries) -> Self {
        self.mul_known(series)
    }
}

/// Shared inputs for one level k of the full system at a fixed u-mode.
struct LevelInputs {
    order: usize,
    k: usize,
    /// X_i(p,q,u*,1,s,t), X_i(p,q,u*,1,s,1), X_i(p,q,u*,1,1,1) for
    /// 1 <= i <= k-2 (u* is u or 1 depending on the stage).
    x_ust: Vec<TruncSeries>,
    x_us: Vec<TruncSeries>,
    x_u: Vec<TruncSeries>,
    /// F_j(x,p,q,1,v,1,t) - 1 and F_j(x,p,q,1,v,1,1) - 1, indexed by j
    /// (entries below j = 2 are unused placeholders).
    lower_vt: Vec<TruncSeries>,
    lower_v: Vec<TruncSeries>,
    /// Monomial prefactors, with u replaced by 1 in stage 1.
    uvst_x: TruncSeries,
    quvs_x: TruncSeries,
    pquv: Poly,
    pq2uv: Poly,
    puvt: Poly,
    p2quv: Poly,
    pq: Poly,
}

impl LevelInputs {
    fn lower_vt(&self, j: usize) -> &TruncSeries {
        assert!(j >= 2 && j < self.k, "lower index {j} out of range for k = {}", self.k);
        &self.lower_vt[j]
    }

    fn lower_v(&self, j: usize) -> &TruncSeries {
        assert!(j >= 2 && j < self.k, "lower index {j} out of range for k = {}", self.k);
        &self.lower_v[j]
    }

    fn series(&self, poly: &Poly) -> TruncSeries {
        TruncSeries::from_poly(poly, self.order)
    }
}

/// Evaluate the f/g recurrences for level k. `fk_minus_1` stands for
/// F_k(x,p,q,1,v,s,t) - 1 in whichever value domain the stage uses.
fn fg_components<V: SystemValue>(inputs: &LevelInputs, fk_minus_1: &V) -> (Vec<V>, Vec<V>) {
    let order = inputs.order;
    let i_max = inputs.k - 2;
    let mut f: Vec<V> = Vec::with_capacity(i_max + 1);
    let mut g: Vec<V> = Vec::with_capacity(i_max + 1);

    // i = 0: f_{k,0} = uvstx + quvsx (F_k(x,p,q,1,v,s,t) - 1), g_{k,0} = 0
    f.push(fk_minus_1.times_series(&inputs.quvs_x).plus_series(&inputs.uvst_x));
    g.push(V::zero_value(order));

    for i in 1..=i_max {
        // every term of f_{k,i} and g_{k,i} carries x^{i+1}
        if i + 1 > order {
            f.push(V::zero_value(order));
            g.push(V::zero_value(order));
            continue;
        }
        let xi1 = x().pow((i + 1) as u32);

        // f_{k,i} = pquv x^{i+1} X_i(..s,t) (F_{k-i}(..v,1,t) - 1)
        //         + pq^2 uv x^{i+1} X_i(..s,1) (F_{k-i}(..v,1,1) - 1)
        //               (F_k(..v,s,t) - 1)
        //         + pq (F_{k-i}(..v,1,1) - 1)
        //               sum_{j=1}^{i-1} X_j(..1,1) x^j f_{k,i-j}
        let term1 = &inputs.series(&(&inputs.pquv * &xi1)) * &inputs.x_ust[i];
        let mut fi = V::zero_value(order)
            .plus_series(&(&term1 * inputs.lower_vt(inputs.k - i)));
        let coeff2 = &(&inputs.series(&(&inputs.pq2uv * &xi1)) * &inputs.x_us[i])
            * inputs.lower_v(inputs.k - i);
        fi = fi.plus(&fk_minus_1.times_series(&coeff2));
        for j in 1..i {
            let coeff3 = &(&inputs.series(&(&inputs.pq * &x().pow(j as u32)))
                * &inputs.x_u[j])
                * inputs.lower_v(inputs.k - i);
            fi = fi.plus(&f[i - j].times_series(&coeff3));
        }
        f.push(fi);

        // g_{k,i} = puvt x^{i+1} X_i(..s,t)
        //         + pquv x^{i+1} X_i(..s,1) (F_k(..v,s,t) - 1)
        //         + p^2 quv x^{i+1} sum_{j=1}^{i-1}
        //               X_j(..1,1) X_{i-j}(..s,t) (F_{k-i+j}(..v,1,t) - 1)
        //         + pq sum_{j=1}^{i-1} X_j(..1,1) x^j (F_{k-i+j}(..v,1,1) - 1)
        //               (g_{k,i-j} - puvt x^{i-j+1} X_{i-j}(..s,t))
        let mut gi = V::zero_value(order)
            .plus_series(&(&inputs.series(&(&inputs.puvt * &xi1)) * &inputs.x_ust[i]));
        gi = gi.plus(
            &fk_minus_1
                .times_series(&(&inputs.series(&(&inputs.pquv * &xi1)) * &inputs.x_us[i])),
        );
        let mut term3 = TruncSeries::zero(order);
        for j in 1..i {
            term3 = &term3
                + &(&(&inputs.x_u[j] * &inputs.x_ust[i - j])
                    * inputs.lower_vt(inputs.k - i + j));
        }
        gi = gi.plus_series(&(&inputs.series(&(&inputs.p2quv * &xi1)) * &term3));
        for j in 1..i {
            let sub = &inputs.series(&(&inputs.puvt * &x().pow((i - j + 1) as u32)))
                * &inputs.x_ust[i - j];
            let coeff4 = &(&inputs.series(&(&inputs.pq * &x().pow(j as u32)))
                * &inputs.x_u[j])
                * inputs.lower_v(inputs.k - i + j);
            gi = gi.plus(&g[i - j].plus_series(&-&sub).times_series(&coeff4));
        }
        g.push(gi);
    }
    (f, g)
}

/// Per-call context: the X_n table plus memoized lower solutions.
struct SolveContext {
    order: usize,
    xn: XnTable,
    memo: BTreeMap<usize, TruncSeries>,
}

impl SolveContext {
    fn new(order: usize, xn: XnTable) -> SolveContext {
        SolveContext { order, xn, memo: BTreeMap::new() }
    }

    fn level_inputs(&self, k: usize, general_u: bool) -> LevelInputs {
        let order = self.order;
        let i_max = k - 2;
        let u_mark = if general_u { u() } else { Poly::one() };
        let drop_u: &[Var] = if general_u { &[Var::V] } else { &[Var::U, Var::V] };
        let mut x_ust = vec![TruncSeries::zero(order)];
        let mut x_us = vec![TruncSeries::zero(order)];
        let mut x_u = vec![TruncSeries::zero(order)];
        for i in 1..=i_max.min(self.xn.max_n()) {
            let xi = self.xn.entry(i);
            x_ust.push(TruncSeries::from_poly(&xi.specialize(drop_u), order));
            x_us.push(TruncSeries::from_poly(
                &xi.specialize(&[drop_u, &[Var::T]].concat()),
                order,
            ));
            x_u.push(TruncSeries::from_poly(
                &xi.specialize(&[drop_u, &[Var::S, Var::T]].concat()),
                order,
            ));
        }
        // deeper levels only occur where x^{i+1} truncates to zero
        while x_ust.len() <= i_max {
            x_ust.push(TruncSeries::zero(order));
            x_us.push(TruncSeries::zero(order));
            x_u.push(TruncSeries::zero(order));
        }
        let one = TruncSeries::one(order);
        let mut lower_vt = vec![TruncSeries::zero(order); k];
        let mut lower_v = vec![TruncSeries::zero(order); k];
        for j in 2..k {
            let full = &self.memo[&j];
            lower_vt[j] = &full.specialize(&[Var::U, Var::S]) - &one;
            lower_v[j] = &full.specialize(&[Var::U, Var::S, Var::T]) - &one;
        }
        LevelInputs {
            order,
            k,
            x_ust,
            x_us,
            x_u,
            lower_vt,
            lower_v,
            uvst_x: TruncSeries::from_poly(&(&u_mark * v() * s() * t() * x()), order),
            quvs_x: TruncSeries::from_poly(&(q() * &u_mark * v() * s() * x()), order),
            pquv: p() * q() * &u_mark * v(),
            pq2uv: p() * q().pow(2) * &u_mark * v(),
            puvt: p() * &u_mark * v() * t(),
            p2quv: p().pow(2) * q() * &u_mark * v(),
            pq: p() * q(),
        }
    }

    /// Solve level k, memoizing the full series. Returns the stage-1
    /// specialization and the stage-2 components.
    fn solve_level(&mut self, k: usize) -> (TruncSeries, Vec<FgPair>) {
        let order = self.order;
        if k == 2 {
            // f_{2,0} = uvstx / (1 - qvsx), g_{2,0} = 0
            let geom = TruncSeries::from_poly(&(n(1) - q() * v() * s() * x()), order)
                .invert()
                .expect("constant term 1");
            let f20 = geom.mul_poly(&(u() * v() * s() * t() * x()));
            let full = &TruncSeries::one(order) + &f20;
            let u1 = full.specialize(&[Var::U]);
            self.memo.insert(2, full);
            return (u1, vec![FgPair { f: f20, g: TruncSeries::zero(order) }]);
        }

        // stage 1: solve the u = 1 system for G = F_k(x,p,q,1,v,s,t)
        let inputs = self.level_inputs(k, false);
        let minus_one = -&TruncSeries::one(order);
        let unknown_minus_1 = AffineSeries { a: minus_one, b: TruncSeries::one(order) };
        let (f_aff, g_aff) = fg_components(&inputs, &unknown_minus_1);
        let mut total = AffineSeries::known(TruncSeries::one(order));
        for value in f_aff.iter().chain(g_aff.iter()) {
            total = total.plus(value);
        }
        let u1 = total.solve().expect("component factors carry x");

        // stage 2: general u with the unknown resolved
        let inputs = self.level_inputs(k, true);
        let known_minus_1 = &u1 - &TruncSeries::one(order);
        let (f_ser, g_ser) = fg_components(&inputs, &known_minus_1);
        let mut full = TruncSeries::one(order);
        for value in f_ser.iter().chain(g_ser.iter()) {
            full = &full + value;
        }
        assert_eq!(
            full.specialize(&[Var::U]),
            u1,
            "stage-2 series must specialize back to the stage-1 solution"
        );
        self.memo.insert(k, full);
        let trace = f_ser.into_iter().zip(g_ser).map(|(f, g)| FgPair { f, g }).collect();
        (u1, trace)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    Ok(())
}

/// Table depth needed at truncation order `order`: components with i
/// elements left of the maximum start at x^{i+1}.
fn required_table_depth(k: usize, order: usize) -> usize {
    (k - 2).min(order.saturating_sub(1))
}

/// Compute F_k(x,p,q,u,v,s,t) to the given truncation order.
pub fn solve_fk(k: usize, order: usize) -> Result<FkResult> {
    check_k(k)?;
    let xn = xn_table(required_table_depth(k, order))?;
    let mut ctx = SolveContext::new(order, xn);
    let mut last = None;
    for level in 2..=k {
        last = Some(ctx.solve_level(level));
    }
    let (u1, trace) = last.expect("k >= 2");
    let full = ctx.memo.remove(&k).expect("memoized");
    Ok(FkResult { k, order, full, u1, fg_trace: (k <= 6).then_some(trace) })
}

/// The simplified (x, u, v) system for the joint lrmax/rlmax distribution:
///
///   F_k(x,u,v) = 1 + sum_{i=0}^{k-2} (f_{k,i} + g_{k,i})
///   f_{k,i} = (F_{k-i}(x,1,v) - 1) sum_{j=1}^{i} X_j(u) x^j f_{k,i-j}
///   g_{k,i} = uv x^{i+1} X_i(u) F_k(x,1,v)
///           + sum_{j=1}^{i-1} X_j(u) x^j (F_{k-i+j}(x,1,v) - 1) g_{k,i-j}
///
/// with f_{k,0} = uvx F_k(x,1,v), g_{k,0} = 0, f_{2,0} = uvx/(1-vx).
pub fn solve_fk_uv(k: usize, order: usize) -> Result<TruncSeries> {
    check_k(k)?;
    let xn = xn_table(required_table_depth(k, order))?;
    let mut memo: BTreeMap<usize, TruncSeries> = BTreeMap::new();
    for level in 2..=k {
        let full = solve_uv_level(level, order, &xn, &memo);
        memo.insert(level, full);
    }
    Ok(memo.remove(&k).expect("k >= 2"))
}

fn solve_uv_level(
    k: usize,
    order: usize,
    xn: &XnTable,
    memo: &BTreeMap<usize, TruncSeries>,
) -> TruncSeries {
    if k == 2 {
        let geom = TruncSeries::from_poly(&(n(1) - v() * x()), order)
            .invert()
            .expect("constant term 1");
        return &TruncSeries::one(order) + &geom.mul_poly(&(u() * v() * x()));
    }
    let i_max = k - 2;
    // lmax polynomials X_i(u) over the unrestricted separable class
    let mut x_of_u = vec![Poly::one()];
    for i in 1..=i_max.min(xn.max_n()) {
        x_of_u.push(xn.entry(i).specialize(&[Var::P, Var::Q, Var::V, Var::S, Var::T]));
    }
    while x_of_u.len() <= i_max {
        x_of_u.push(Poly::zero());
    }
    let one = TruncSeries::one(order);
    let lower_v: Vec<TruncSeries> = (0..k)
        .map(|j| {
            if j < 2 {
                TruncSeries::zero(order)
            } else {
                &memo[&j].specialize(&[Var::U]) - &one
            }
        })
        .collect();

    // stage 1 (u = 1): affine in G = F_k(x,1,v)
    let unknown = AffineSeries::unknown(order);
    let (f1, g1) = uv_components(k, order, &x_of_u, &lower_v, true, &unknown);
    let mut total = AffineSeries::known(TruncSeries::one(order));
    for value in f1.iter().chain(g1.iter()) {
        total = total.plus(value);
    }
    let solved = total.solve().expect("component factors carry x");

    // stage 2: general u
    let (f2, g2) = uv_components(k, order, &x_of_u, &lower_v, false, &solved);
    let mut full = TruncSeries::one(order);
    for value in f2.iter().chain(g2.iter()) {
        full = &full + value;
    }
    assert_eq!(full.specialize(&[Var::U]), solved);
    full
}

fn uv_components<V: SystemValue>(
    k: usize,
    order: usize,
    x_of_u: &[Poly],
    lower_v: &[TruncSeries],
    u_is_one: bool,
    fk: &V,
) -> (Vec<V>, Vec<V>) {
    let i_max = k - 2;
    let u_mark = if u_is_one { Poly::one() } else { u() };
    let spec: &[Var] = if u_is_one { &[Var::U] } else { &[] };
    let xj = |j: usize| TruncSeries::from_poly(&x_of_u[j].specialize(spec), order);
    let lower = |j: usize| -> &TruncSeries {
        assert!(j >= 2 && j < k, "lower index {j} out of range for k = {k}");
        &lower_v[j]
    };
    let mut f: Vec<V> = Vec::with_capacity(i_max + 1);
    let mut g: Vec<V> = Vec::with_capacity(i_max + 1);
    // f_{k,0} = uvx F_k(x,1,v), g_{k,0} = 0
    f.push(fk.times_series(&TruncSeries::from_poly(&(&u_mark * v() * x()), order)));
    g.push(V::zero_value(order));
    for i in 1..=i_max {
        if i + 1 > order {
            f.push(V::zero_value(order));
            g.push(V::zero_value(order));
            continue;
        }
        let mut fi = V::zero_value(order);
        for j in 1..=i {
            let coeff =
                &(&xj(j) * &TruncSeries::from_poly(&x().pow(j as u32), order)) * lower(k - i);
            fi = fi.plus(&f[i - j].times_series(&coeff));
        }
        f.push(fi);

        let head = TruncSeries::from_poly(
            &(&u_mark * v() * x().pow((i + 1) as u32) * x_of_u[i].specialize(spec)),
            order,
        );
        let mut gi = fk.times_series(&head);
        for j in 1..i {
            let coeff = &(&xj(j) * &TruncSeries::from_poly(&x().pow(j as u32), order))
                * lower(k - i + j);
            gi = gi.plus(&g[i - j].times_series(&coeff));
        }
        g.push(gi);
    }
    (f, g)
}

/// The one-variable counting system with Schröder-number weights:
///
///   F_k(x) = 1 + sum_{i=0}^{k-2} (f_{k,i} + g_{k,i})
///   f_{k,i} = s_{i-1} x^{i+1} (F_{k-i}(x) - 1) F_k(x)
///           + (F_{k-i}(x) - 1) sum_{j=1}^{i-1} s_{j-1} x^j f_{k,i-j}
///   g_{k,i} = s_{i-1} x^{i+1} F_k(x)
///           + sum_{j=1}^{i-1} s_{j-1} x^j (F_{k-i+j}(x) - 1) g_{k,i-j}
///
/// with f_{k,0} = x F_k(x), g_{k,0} = 0, f_{2,0} = x/(1-x). The weights come
/// from the Schröder recurrence rather than enumeration, so agreement with
/// the all-ones specialization of [`solve_fk`] is a genuine cross-check.
pub fn solve_fk_counting(k: usize, order: usize) -> Result<TruncSeries> {
    check_k(k)?;
    let mut memo: BTreeMap<usize, TruncSeries> = BTreeMap::new();
    for level in 2..=k {
        let full = counting_level(level, order, &memo);
        memo.insert(level, full);
    }
    Ok(memo.remove(&k).expect("k >= 2"))
}

fn counting_level(k: usize, order: usize, memo: &BTreeMap<usize, TruncSeries>) -> TruncSeries {
    if k == 2 {
        let geom = TruncSeries::from_poly(&(n(1) - x()), order).invert().expect("constant 1");
        return &TruncSeries::one(order) + &geom.mul_poly(&x());
    }
    let i_max = k - 2;
    let weight = |i: usize| -> Coeff { Coeff::from_integer(schroder(i)) };
    let lower = |j: usize| -> TruncSeries {
        assert!(j >= 2 && j < k, "lower index {j} out of range for k = {k}");
        &memo[&j] - &TruncSeries::one(order)
    };
    let unknown = AffineSeries::unknown(order);
    let mut f: Vec<AffineSeries> = Vec::with_capacity(i_max + 1);
    let mut g: Vec<AffineSeries> = Vec::with_capacity(i_max + 1);
    f.push(unknown.times_series(&TruncSeries::from_poly(&x(), order)));
    g.push(AffineSeries::zero(order));
    for i in 1..=i_max {
        if i + 1 > order {
            f.push(AffineSeries::zero(order));
            g.push(AffineSeries::zero(order));
            continue;
        }
        let head =
            TruncSeries::from_poly(&x().pow((i + 1) as u32), order).scale(&weight(i - 1));
        let mut fi = unknown.times_series(&(&head * &lower(k - i)));
        for j in 1..i {
            let coeff =
                TruncSeries::from_poly(&x().pow(j as u32), order).scale(&weight(j - 1));
            fi = fi.plus(&f[i - j].times_series(&(&coeff * &lower(k - i))));
        }
        f.push(fi);

        let mut gi = unknown.times_series(&head);
        for j in 1..i {
            let coeff =
                TruncSeries::from_poly(&x().pow(j as u32), order).scale(&weight(j - 1));
            gi = gi.plus(&g[i - j].times_series(&(&coeff * &lower(k - i + j))));
        }
        g.push(gi);
    }
    let mut total = AffineSeries::known(TruncSeries::one(order));
    for value in f.iter().chain(g.iter()) {
        total = total.plus(value);
    }
    total.solve().expect("component factors carry x")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms;
    use crate::series::{rat, Monomial};

    #[test]
    fn xn_table_entries() {
        let table = xn_table(4).unwrap();
        assert_eq!(table.entry(0), &Poly::one());
        assert_eq!(table.entry(1), &Poly::term(Monomial([0, 0, 0, 1, 1, 1, 1]), rat(1)));
        let x2 = Poly::term(Monomial([0, 1, 0, 2, 1, 1, 2]), rat(1))
            + Poly::term(Monomial([0, 0, 1, 1, 2, 2, 1]), rat(1));
        assert_eq!(table.entry(2), &x2);
        assert_eq!(table.entry(4).specialize(&Var::ALL).as_scalar(), Some(rat(22)));
    }

    #[test]
    fn xn_table_respects_bound() {
        assert!(matches!(
            xn_table(config::enumeration_bound() + 1),
            Err(Error::EnumerationLimit { .. })
        ));
    }

    #[test]
    fn k2_matches_closed_form() {
        let result = solve_fk(2, 4).unwrap();
        assert_eq!(result.full, closed_forms::f2_gf().expand(4).unwrap());
        assert_eq!(result.u1, result.full.specialize(&[Var::U]));
        let trace = result.fg_trace.unwrap();
        assert_eq!(trace.len(), 1);
        assert!(trace[0].g.is_zero());
    }

    #[test]
    fn k3_matches_closed_form() {
        let result = solve_fk(3, 7).unwrap();
        assert_eq!(result.full, closed_forms::f3_gf().expand(7).unwrap());
    }

    #[test]
    fn k4_matches_closed_form() {
        let result = solve_fk(4, 7).unwrap();
        assert_eq!(result.full, closed_forms::f4_gf().expand(7).unwrap());
    }

    #[test]
    fn k5_matches_oracle() {
        let result = solve_fk(5, 6).unwrap();
        assert_eq!(result.full, oracle::oracle_series(5, 6).unwrap());
    }

    #[test]
    fn component_sum_reassembles_series() {
        let result = solve_fk(4, 6).unwrap();
        let mut sum = TruncSeries::one(6);
        for pair in result.fg_trace.as_ref().unwrap() {
            sum = &(&sum + &pair.f) + &pair.g;
        }
        assert_eq!(sum, result.full);
    }

    #[test]
    fn degenerate_orders() {
        let result = solve_fk(4, 0).unwrap();
        assert_eq!(result.full, TruncSeries::one(0));
        // order below k-1: the restriction is invisible at these lengths
        let result = solve_fk(6, 3).unwrap();
        assert_eq!(result.full, oracle::oracle_series(6, 3).unwrap());
    }

    #[test]
    fn saturation_below_pattern_length() {
        // a flat POP of length k needs k elements, so for n <= k-1 the class
        // is all separable permutations
        let result = solve_fk(9, 8).unwrap();
        let table = xn_table(8).unwrap();
        for deg in 0..=8 {
            assert_eq!(result.full.x_coefficient(deg), *table.entry(deg), "x^{deg}");
        }
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(solve_fk(1, 4), Err(Error::KTooSmall(1))));
        assert!(matches!(solve_fk(0, 4), Err(Error::KTooSmall(0))));
        assert!(matches!(solve_fk_uv(1, 4), Err(Error::KTooSmall(1))));
        assert!(matches!(solve_fk_counting(1, 4), Err(Error::KTooSmall(1))));
        // table depth beyond the enumeration bound
        let k = config::enumeration_bound() + 3;
        assert!(matches!(solve_fk(k, k), Err(Error::EnumerationLimit { .. })));
    }

    #[test]
    fn counting_sequences() {
        let f3 = solve_fk_counting(3, 10).unwrap();
        let seq: Vec<String> = (0..=10u16)
            .map(|d| f3.coeff(&Monomial::var(Var::X, d)).numer().to_string())
            .collect();
        assert_eq!(seq, ["1", "1", "2", "4", "8", "16", "32", "64", "128", "256", "512"]);

        let f4 = solve_fk_counting(4, 10).unwrap();
        let seq: Vec<String> = (0..=10u16)
            .map(|d| f4.coeff(&Monomial::var(Var::X, d)).numer().to_string())
            .collect();
        assert_eq!(
            seq,
            ["1", "1", "2", "6", "16", "42", "112", "300", "804", "2156", "5784"]
        );
    }

    #[test]
    fn counting_matches_oracle_for_k6() {
        let f6 = solve_fk_counting(6, 7).unwrap();
        let pop = crate::perm::PopPattern::flat(6).unwrap();
        for len in 0..=7 {
            let count = oracle::enumerate_class(len, Some(&pop)).unwrap().len();
            assert_eq!(
                f6.coeff(&Monomial::var(Var::X, len as u16)),
                rat(count as i64),
                "n = {len}"
            );
        }
    }

    #[test]
    fn uv_k2_closed_form() {
        let series = solve_fk_uv(2, 6).unwrap();
        let geom = TruncSeries::from_poly(&(n(1) - v() * x()), 6).invert().unwrap();
        let expect = &TruncSeries::one(6) + &geom.mul_poly(&(u() * v() * x()));
        assert_eq!(series, expect);
    }

    #[test]
    fn uv_k3_closed_form() {
        // 1 + (uvx + u^2 v x^2 - u v^2 x^2) / (1 - 2vx - vx^2 + v^2 x^2)
        let series = solve_fk_uv(3, 8).unwrap();
        let den = n(1) - n(2) * v() * x() - v() * x().pow(2) + v().pow(2) * x().pow(2);
        let num = &den
            + (u() * v() * x() + u().pow(2) * v() * x().pow(2)
                - u() * v().pow(2) * x().pow(2));
        let expect = crate::series::RationalGF::new(num, den).unwrap().expand(8).unwrap();
        assert_eq!(series, expect);
    }

    #[test]
    fn uv_matches_full_specialization() {
        for k in 2..=5 {
            let uv = solve_fk_uv(k, 6).unwrap();
            let full = solve_fk(k, 6).unwrap().full;
            assert_eq!(uv, full.specialize(&[Var::P, Var::Q, Var::S, Var::T]), "k = {k}");
        }
    }

    #[test]
    fn counting_matches_full_specialization() {
        for k in 2..=5 {
            let counting = solve_fk_counting(k, 6).unwrap();
            let full = solve_fk(k, 6).unwrap().full;
            assert_eq!(counting, full.specialize(&Var::ALL[1..]), "k = {k}");
        }
    }

    #[test]
    fn solved_series_has_distribution_shape() {
        let full = solve_fk(5, 7).unwrap().full;
        assert!(full.all_nonnegative_integer_coefficients());
        for (mono, _) in full.iter() {
            let [x, p, q, u, v, s, t] = mono.0;
            if x == 0 {
                continue;
            }
            assert_eq!((p + q) as usize, x as usize - 1, "{mono:?}");
            for stat in [u, v, s, t] {
                assert!(stat >= 1 && stat <= x, "{mono:?}");
            }
        }
    }

    #[test]
    fn u_t_symmetry_of_full_series() {
        for k in 3..=6 {
            let full = solve_fk(k, 8).unwrap().full;
            let xut = full.specialize(&[Var::P, Var::Q, Var::V, Var::S]);
            assert_eq!(xut.swap_vars(Var::U, Var::T), xut, "k = {k}");
        }
    }
}
