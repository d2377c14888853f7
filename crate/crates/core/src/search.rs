//! All solutions with a fixed span `c - a = N`.
//!
//! Fixing `N` and the split `ell = b - a` turns `P_a + P_c = 2 P_b` into a
//! quadratic in `b` (the cubic terms cancel), so each split contributes at
//! most two solutions and each `N` at most `2(N - 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::socs::{integer_sqrt, SolutionTriple};

/// Spans at or below this bound use 128-bit arithmetic. The discriminant is
/// bounded by roughly `12 N^4`, which stays far below `2^127` here.
const NATIVE_SPAN_LIMIT: i128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLengthQuery {
    n: BigInt,
    ell: BigInt,
}

impl FixedLengthQuery {
    pub fn new(n: BigInt, ell: BigInt) -> Result<Self> {
        if !ell.is_positive() || ell >= n {
            return Err(Error::SplitOutOfRange {
                n: n.to_string(),
                ell: ell.to_string(),
            });
        }
        Ok(FixedLengthQuery { n, ell })
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn ell(&self) -> &BigInt {
        &self.ell
    }
}

/// Coefficients of `lead b^2 + 2 half_linear b + constant = 0`, scaled so the
/// roots are `(-half_linear ± sqrt(disc)) / lead` with `lead = 6(N - 2 ell)`.
struct SplitQuadratic<T> {
    lead: T,
    neg_half_linear: T,
    disc: T,
}

fn split_quadratic_big(n: &BigInt, ell: &BigInt) -> SplitQuadratic<BigInt> {
    let (n2, l2) = (n * n, ell * ell);
    let x = &n2 + &l2 * 2u32 - n * ell * 2u32 + n - ell * 2u32;
    let quartic = -(&n2 * &n2) + &n2 * n * ell * 8u32 - &n2 * &l2 * 12u32 + n * &l2 * ell * 8u32
        - &l2 * &l2 * 4u32
        + &n2
        - n * ell * 4u32
        + &l2 * 4u32;
    SplitQuadratic {
        lead: (n - ell * 2u32) * 6u32,
        neg_half_linear: -x * 3u32,
        disc: quartic * 3u32,
    }
}

/// Every solution with `b - a = ell` and `c - b = N - ell`.
pub fn solve_split(q: &FixedLengthQuery) -> Vec<SolutionTriple> {
    let (n, ell) = (&q.n, &q.ell);
    if let (Some(n), Some(ell)) = (n.to_i128(), ell.to_i128()) {
        if n <= NATIVE_SPAN_LIMIT {
            let mut out = Vec::new();
            solve_split_native(n, ell, &mut out);
            return out.into_iter().map(native_to_triple).collect();
        }
    }
    solve_split_big(n, ell)
}

fn solve_split_big(n: &BigInt, ell: &BigInt) -> Vec<SolutionTriple> {
    let quad = split_quadratic_big(n, ell);
    // N = 2 ell leaves 12 ell^2 b + 6 ell^2 = 0, i.e. b = -1/2.
    if quad.lead.is_zero() || quad.disc.is_negative() {
        return Vec::new();
    }
    let root = integer_sqrt(&quad.disc).expect("non-negative");
    if &root * &root != quad.disc {
        return Vec::new();
    }
    let mut numerators = vec![&quad.neg_half_linear + &root];
    if !root.is_zero() {
        numerators.push(&quad.neg_half_linear - &root);
    }
    let mut out = Vec::new();
    for num in numerators {
        let (b, rem) = num.div_rem(&quad.lead);
        if !rem.is_zero() {
            continue;
        }
        let a = &b - ell;
        let c = &b + n - ell;
        if let Ok(t) = SolutionTriple::new(a, b, c) {
            out.push(t);
        }
    }
    out
}

fn solve_split_native(n: i128, ell: i128, out: &mut Vec<(i128, i128, i128)>) {
    let lead = 6 * (n - 2 * ell);
    if lead == 0 {
        return;
    }
    let (n2, l2) = (n * n, ell * ell);
    let x = n2 + 2 * l2 - 2 * n * ell + n - 2 * ell;
    let disc = 3
        * (-n2 * n2 + 8 * n2 * n * ell - 12 * n2 * l2 + 8 * n * l2 * ell - 4 * l2 * l2 + n2
            - 4 * n * ell
            + 4 * l2);
    if disc < 0 {
        return;
    }
    let root = (disc as u128).isqrt() as i128;
    if root * root != disc {
        return;
    }
    let neg_half_linear = -3 * x;
    let plus = neg_half_linear + root;
    let minus = neg_half_linear - root;
    for num in [Some(plus), (root != 0).then_some(minus)]
        .into_iter()
        .flatten()
    {
        if num % lead != 0 {
            continue;
        }
        let b = num / lead;
        let (a, c) = (b - ell, b + n - ell);
        if 0 < a + 1 && a + 1 < b && b < c {
            out.push((a, b, c));
        }
    }
}

fn native_to_triple((a, b, c): (i128, i128, i128)) -> SolutionTriple {
    SolutionTriple::new(a.into(), b.into(), c.into())
        .expect("root of the split quadratic must satisfy the pyramidal identity")
}

/// Which splits `ell` to try for a span `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitRange {
    /// Only `ell > N/2`: a solution always has `b - a > c - b`.
    #[default]
    Balanced,
    /// Every `0 < ell < N`. Used to confirm the skipped half is empty.
    Full,
}

pub fn solve_fixed_length(n: &BigInt) -> Vec<SolutionTriple> {
    solve_fixed_length_with(n, SplitRange::Balanced)
}

pub fn solve_fixed_length_with(n: &BigInt, range: SplitRange) -> Vec<SolutionTriple> {
    let two = BigInt::from(2);
    if n < &two {
        return Vec::new();
    }
    let first = match range {
        SplitRange::Balanced => n / 2u32 + 1u32,
        SplitRange::Full => BigInt::one(),
    };
    let mut out = match n.to_i128() {
        Some(small) if small <= NATIVE_SPAN_LIMIT => {
            let first = first.to_i128().expect("below span limit");
            let mut raw = Vec::new();
            for ell in first..small {
                solve_split_native(small, ell, &mut raw);
            }
            raw.into_iter().map(native_to_triple).collect()
        }
        _ => {
            let mut all = Vec::new();
            let mut ell = first;
            while &ell < n {
                all.extend(solve_split_big(n, &ell));
                ell += 1u32;
            }
            all
        }
    };
    out.sort();
    out.dedup();
    out
}

/// All solutions with `c - a <= bound`, ordered by `(c - a, a)`.
pub fn enumerate_up_to(bound: &BigInt) -> Vec<SolutionTriple> {
    let Some(limit) = bound.to_u64() else {
        panic!("enumeration bound {bound} is beyond desk scale");
    };
    let mut out: Vec<SolutionTriple> = (2..=limit)
        .into_par_iter()
        .flat_map_iter(|n| solve_fixed_length(&BigInt::from(n)))
        .collect();
    out.sort();
    out
}
