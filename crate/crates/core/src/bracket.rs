//! Kauffman bracket by state sum, extreme powers, and the extreme-power
//! predictions for twisted adequate diagrams.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{Diagram, DEFAULT_MAX_STATE_SUM};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Environment variable overriding the state-sum crossing limit.
pub const MAX_N_ENV: &str = "TANGLETWIST_MAX_N";

/// Crossing limit for exhaustive state sums.
pub fn max_state_sum() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_STATE_SUM)
}

/// Number of states handled by one parallel work unit.
const CHUNK_BITS: u32 = 14;

/// `counts[b][k]`: states with `b` B-smoothings and `k` circles.
fn state_counts(d: &Diagram) -> Vec<Vec<u64>> {
    let n = d.crossing_count();
    let width = d.arc_count() + d.free_loops() + 1;
    let total: u64 = 1 << n;
    let chunk: u64 = 1 << CHUNK_BITS.min(n as u32);
    let tally = |lo: u64, hi: u64| {
        let mut t = vec![vec![0u64; width]; n + 1];
        for mask in lo..hi {
            t[mask.count_ones() as usize][d.circles_for_mask(mask)] += 1;
        }
        t
    };
    let merge = |mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                *x += y;
            }
        }
        a
    };
    (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|i| tally(i * chunk, ((i + 1) * chunk).min(total)))
        .reduce(|| vec![vec![0u64; width]; n + 1], merge)
}

/// Kauffman bracket with the default crossing limit.
pub fn bracket(d: &Diagram) -> Result<LaurentPoly> {
    bracket_with_limit(d, max_state_sum())
}

/// Sum over all states of `A^sigma(s) * delta^(|sD| - 1)`.
pub fn bracket_with_limit(d: &Diagram, limit: usize) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > limit || n > 63 {
        return Err(Error::ResourceLimit { crossings: n, limit });
    }
    let counts = state_counts(d);
    let max_circles = counts.iter().flat_map(|r| r.iter().enumerate()).filter(|(_, &c)| c > 0).map(|(k, _)| k).max().unwrap_or(1);
    let mut delta_pow = vec![LaurentPoly::one()];
    for k in 1..max_circles {
        delta_pow.push(&delta_pow[k - 1] * &LaurentPoly::delta());
    }
    let mut out = LaurentPoly::zero();
    for (b, row) in counts.iter().enumerate() {
        let sigma = n as i64 - 2 * b as i64;
        for (k, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let shifted = &delta_pow[k - 1] * &LaurentPoly::monomial(BigInt::from(count), sigma);
            out = &out + &shifted;
        }
    }
    Ok(out)
}

/// `(max, min)` exponents of a nonzero polynomial.
pub fn extreme_powers(p: &LaurentPoly) -> Result<(i64, i64)> {
    p.extreme_powers()
}

/// Extremes of an adequate diagram from its two extreme states.
pub fn adequate_extremes(d: &Diagram) -> Result<(i64, i64)> {
    if !d.is_adequate() {
        return Err(Error::NotAdequate);
    }
    let n = d.crossing_count() as i64;
    let sa = d.resolve(&d.all_a())?.circle_count as i64;
    let sb = d.resolve(&d.all_b())?.circle_count as i64;
    Ok((n + 2 * (sa - 1), -n - 2 * (sb - 1)))
}

/// Whether a two-level block is a product of sums or a sum of products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeMode {
    ProductOfSums,
    SumOfProducts,
}

/// Parameters of a two-level block: `l` outer factors, the `i`-th made of
/// `k[i]` rational tangles with denominators `cf[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockShape {
    pub mode: ShapeMode,
    pub l: usize,
    pub k: Vec<usize>,
    pub cf: Vec<Vec<Vec<i64>>>,
}

impl BlockShape {
    pub fn new(mode: ShapeMode, cf: Vec<Vec<Vec<i64>>>) -> Result<BlockShape> {
        let bad = |m: &str| Error::InvalidArgument(format!("block shape: {m}"));
        if cf.is_empty() || cf.iter().any(|row| row.is_empty()) {
            return Err(bad("every factor needs at least one tangle"));
        }
        if cf.iter().flatten().any(|a| a.is_empty() || a.iter().any(|&x| x < 1)) {
            return Err(bad("denominators must be positive"));
        }
        Ok(BlockShape { mode, l: cf.len(), k: cf.iter().map(Vec::len).collect(), cf })
    }

    pub fn single(cf: Vec<i64>) -> Result<BlockShape> {
        BlockShape::new(ShapeMode::ProductOfSums, vec![vec![cf]])
    }

    fn leaves(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.cf.iter().flatten()
    }

    pub fn total_denominators(&self) -> i64 {
        self.leaves().flatten().sum()
    }
}

/// Sum of odd-indexed denominators, less one when the count is odd.
pub fn t_plus(a: &[i64]) -> i64 {
    let odd: i64 = a.iter().step_by(2).sum();
    odd - (a.len() % 2) as i64
}

/// Sum of even-indexed denominators, less one when the count is even.
pub fn t_minus(a: &[i64]) -> i64 {
    let even: i64 = a.iter().skip(1).step_by(2).sum();
    even - (1 - a.len() % 2) as i64
}

fn shape_terms(b: &BlockShape) -> (i64, i64, i64, i64) {
    let tp: i64 = b.leaves().map(|a| t_plus(a)).sum();
    let tm: i64 = b.leaves().map(|a| t_minus(a)).sum();
    let inner: i64 = b.k.iter().map(|&k| k as i64 - 1).sum();
    let outer = b.l as i64 - 1;
    (tp, tm, inner, outer)
}

/// Predicted `(|s_A D*| - |s_A D|, |s_B D*| - |s_B D|)` for a block replacing
/// a positive crossing.
pub fn predict_state_circle_deltas(b: &BlockShape) -> (i64, i64) {
    let (tp, tm, inner, outer) = shape_terms(b);
    match b.mode {
        ShapeMode::ProductOfSums => (tp + inner, tm + outer),
        ShapeMode::SumOfProducts => (tp + outer, tm + inner),
    }
}

/// Predicted extremes of `D*` from the extremes `(M, m)` of an adequate `D`
/// whose replaced crossing is positive.
pub fn predict_twisted_extremes(max: i64, min: i64, b: &BlockShape) -> (i64, i64) {
    let (tp, tm, inner, outer) = shape_terms(b);
    let total = b.total_denominators();
    let (top_tail, bottom_tail) = match b.mode {
        ShapeMode::ProductOfSums => (2 * inner - 1, -2 * (outer + 1) + 3),
        ShapeMode::SumOfProducts => (2 * (outer + 1) - 3, -(2 * inner - 1)),
    };
    (max + total + 2 * tp + top_tail, min - total - 2 * tm + bottom_tail)
}

/// As [`predict_twisted_extremes`], for a crossing of either sign; a negative
/// crossing is handled through the mirror image.
pub fn predict_twisted_extremes_signed(max: i64, min: i64, b: &BlockShape, sign: i8) -> (i64, i64) {
    if sign > 0 {
        predict_twisted_extremes(max, min, b)
    } else {
        let (mx, mn) = predict_twisted_extremes(-min, -max, b);
        (-mn, -mx)
    }
}

/// Largest accepted distance to the nearest integer when `|<D>|` is evaluated in floating point.
pub const DET_ROUNDING_TOLERANCE: f64 = 1e-6;

/// `a0 + a1 A + a2 A^2 + a3 A^3` representing `p` modulo `A^4 + 1`.
pub fn reduce_mod_cyclotomic8(p: &LaurentPoly) -> [BigInt; 4] {
    let mut r: [BigInt; 4] = Default::default();
    for (e, c) in p.terms() {
        let k = e.rem_euclid(8);
        if k < 4 {
            r[k as usize] += c;
        } else {
            r[(k - 4) as usize] -= c;
        }
    }
    r
}

/// `|<D>|` at a primitive 8th root of unity, which is the determinant.
pub fn det_via_bracket(d: &Diagram) -> Result<u64> {
    let p = bracket(d)?;
    det_from_bracket(&p)
}

/// Determinant from an already computed bracket.
pub fn det_from_bracket(p: &LaurentPoly) -> Result<u64> {
    let [a0, a1, a2, a3] = reduce_mod_cyclotomic8(p);
    // |z|^2 = P + Q sqrt(2) for z = a0 + a1 w + a2 w^2 + a3 w^3, w = e^{i pi / 4}
    let p2 = &a0 * &a0 + &a1 * &a1 + &a2 * &a2 + &a3 * &a3;
    let q = &a0 * &a1 - &a0 * &a3 + &a2 * &a1 + &a2 * &a3;
    if q.is_zero() {
        let root = p2.sqrt();
        if &root * &root == p2 {
            return root.to_u64().ok_or_else(|| Error::RoundingTolerance("overflow".into()));
        }
    }
    let modulus = (p2.to_f64().unwrap_or(f64::INFINITY) + q.to_f64().unwrap_or(f64::INFINITY) * std::f64::consts::SQRT_2)
        .max(0.0)
        .sqrt();
    let rounded = modulus.round();
    let err = (modulus - rounded).abs();
    if !err.is_finite() || err >= DET_ROUNDING_TOLERANCE {
        return Err(Error::RoundingTolerance(format!("{err:e}")));
    }
    Ok(rounded as u64)
}
