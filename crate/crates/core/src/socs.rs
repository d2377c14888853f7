//! Square pyramidal numbers and solution triples of `P_a + P_c = 2 P_b`.
//!
//! Everything here is exact. A [`SolutionTriple`] can only be built from
//! values that pass [`is_socs_solution`], so code downstream never has to
//! re-check ordering or the identity.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result, TripleCheck};

/// `P_n = n(n+1)(2n+1)/6` for `n >= 0`.
pub fn pyramidal(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Negative {
            what: "pyramidal index",
            value: n.to_string(),
        });
    }
    Ok(pyramidal_poly(n))
}

/// The cubic `n(n+1)(2n+1)/6` evaluated at any integer. The product of three
/// consecutive-ish factors is always divisible by 6, also for negative `n`.
pub(crate) fn pyramidal_poly(n: &BigInt) -> BigInt {
    let product = n * (n + 1u32) * (n * 2u32 + 1u32);
    product / 6u32
}

/// `6 P_n`, i.e. `n(n+1)(2n+1)`, without the division.
pub(crate) fn six_pyramidal(n: &BigInt) -> BigInt {
    n * (n + 1u32) * (n * 2u32 + 1u32)
}

fn ordering_holds(a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    let a1 = a + 1u32;
    a1.is_positive() && &a1 < b && b < c
}

fn check_triple(a: &BigInt, b: &BigInt, c: &BigInt) -> std::result::Result<(), TripleCheck> {
    if !ordering_holds(a, b, c) {
        return Err(TripleCheck::Ordering);
    }
    if six_pyramidal(a) + six_pyramidal(c) != six_pyramidal(b) * 2u32 {
        return Err(TripleCheck::PyramidalIdentity);
    }
    Ok(())
}

/// True iff `0 < a+1 < b < c` and `P_a + P_c = 2 P_b`.
pub fn is_socs_solution(a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    check_triple(a, b, c).is_ok()
}

/// A verified solution `(a, b, c)`.
///
/// Ordered by `(c - a, a)`, which is the order every listing in this crate uses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionTriple {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl SolutionTriple {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        match check_triple(&a, &b, &c) {
            Ok(()) => Ok(SolutionTriple { a, b, c }),
            Err(check) => Err(Error::NotASolution {
                a: a.to_string(),
                b: b.to_string(),
                c: c.to_string(),
                check,
            }),
        }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// `c - a`, the number of sides of every polygon built from this triple.
    pub fn span(&self) -> BigInt {
        &self.c - &self.a
    }

    pub fn gaps(&self) -> GapPair {
        GapPair {
            ell: &self.b - &self.a,
            m: &self.c - &self.b,
        }
    }

    pub fn is_parameterized(&self) -> bool {
        classify_parameterized(self).is_some()
    }
}

impl fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl Ord for SolutionTriple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.span()
            .cmp(&other.span())
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for SolutionTriple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `ell = b - a`, `m = c - b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPair {
    pub ell: BigInt,
    pub m: BigInt,
}

impl GapPair {
    pub fn new(ell: BigInt, m: BigInt) -> Result<Self> {
        for (what, v) in [("ell", &ell), ("m", &m)] {
            if !v.is_positive() {
                return Err(Error::NonPositive {
                    what,
                    value: v.to_string(),
                });
            }
        }
        Ok(GapPair { ell, m })
    }

    /// `12 ell^2 m^2 > (ell - m)^4`, the sign condition for the Pell coefficient.
    pub fn quartic_positive(&self) -> bool {
        let prod = &self.ell * &self.m;
        let diff = &self.ell - &self.m;
        let d2 = &diff * &diff;
        prod.clone() * prod * 12u32 > &d2 * &d2
    }

    /// Exact test of `1 < ell/m < 1 + 2^(1/3) + 2^(2/3)`.
    ///
    /// With `t = ell/m - 1`, the upper bound is the real root `x ~ 2.847` of
    /// `x^3 - 6x - 6`, which is increasing past `sqrt 2`. So `t < x` holds
    /// trivially for `t <= sqrt 2` and otherwise iff `t^3 - 6t - 6 < 0`.
    pub fn is_balanced(&self) -> bool {
        if self.ell <= self.m {
            return false;
        }
        let m = &self.m;
        let d = &self.ell - m;
        let m2 = m * m;
        if &d * &d <= &m2 * 2u32 {
            return true;
        }
        // (d/m)^3 - 6(d/m) - 6 < 0, scaled by m^3.
        &d * &d * &d < (&d * &m2 + &m2 * m) * 6u32
    }

    /// Coarse rational cap `ell/m < 3.8474`, slightly above the true bound.
    pub fn below_rational_cap(&self) -> bool {
        &self.ell * 10_000u32 < &self.m * 38_474u32
    }
}

/// `(2k^2 + k - 1, 2k^2 + 2k, 2k^2 + 3k)` for `k >= 1`.
pub fn parameterized_solution(k: &BigInt) -> Result<SolutionTriple> {
    if !k.is_positive() {
        return Err(Error::NonPositive {
            what: "k",
            value: k.to_string(),
        });
    }
    let t = parameterized_parts(k);
    SolutionTriple::new(t.0, t.1, t.2)
        .map_err(|e| Error::Invariant(format!("parameterized family at k = {k}: {e}")))
}

fn parameterized_parts(k: &BigInt) -> (BigInt, BigInt, BigInt) {
    let two_k2 = k * k * 2u32;
    (&two_k2 + k - 1u32, &two_k2 + k * 2u32, &two_k2 + k * 3u32)
}

/// Returns `k` when `t` is the parameterized solution for `k = c - b`.
pub fn classify_parameterized(t: &SolutionTriple) -> Option<BigInt> {
    let k = t.c() - t.b();
    if !k.is_positive() {
        return None;
    }
    let (a, b, c) = parameterized_parts(&k);
    (&a == t.a() && &b == t.b() && &c == t.c()).then_some(k)
}

/// `floor(sqrt n)`.
pub fn integer_sqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Negative {
            what: "square root argument",
            value: n.to_string(),
        });
    }
    Ok(n.sqrt())
}

pub fn is_perfect_square(n: &BigInt) -> Result<bool> {
    let r = integer_sqrt(n)?;
    Ok(&r * &r == *n)
}

/// `A = 3 m^2 (12 ell^2 m^2 - (m - ell)^4)`, the coefficient of the Pell
/// equation `u^2 - A v^2 = B` attached to a solution.
pub fn coefficient_a(g: &GapPair) -> Result<BigInt> {
    if g.ell == g.m {
        return Err(Error::EqualGaps(g.m.to_string()));
    }
    let (ell, m) = (&g.ell, &g.m);
    let d = m - ell;
    let d2 = &d * &d;
    let inner = ell * ell * m * m * 12u32 - &d2 * &d2;
    Ok(m * m * inner * 3u32)
}

/// `B = 4 m^2 (m - ell)(m^3 - ell^3)`.
pub fn coefficient_b(g: &GapPair) -> Result<BigInt> {
    if g.ell == g.m {
        return Err(Error::EqualGaps(g.m.to_string()));
    }
    let (ell, m) = (&g.ell, &g.m);
    Ok(m * m * (m - ell) * (m * m * m - ell * ell * ell) * 4u32)
}

/// `(b - a)/(c - b)` as an exact rational.
pub fn balance_ratio(t: &SolutionTriple) -> BigRational {
    let g = t.gaps();
    BigRational::new(g.ell, g.m)
}

/// Per-solution facts that must hold for every valid triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleInvariants {
    pub balanced: bool,
    pub below_rational_cap: bool,
    pub quartic_positive: bool,
    pub a_positive: bool,
    pub a_square: bool,
}

impl TripleInvariants {
    pub fn all_hold(&self) -> bool {
        self.balanced
            && self.below_rational_cap
            && self.quartic_positive
            && self.a_positive
            && !self.a_square
    }
}

pub fn triple_invariants(t: &SolutionTriple) -> TripleInvariants {
    let g = t.gaps();
    let a = coefficient_a(&g).unwrap_or_else(|_| BigInt::zero());
    let a_positive = a.is_positive();
    TripleInvariants {
        balanced: g.is_balanced(),
        below_rational_cap: g.below_rational_cap(),
        quartic_positive: g.quartic_positive(),
        a_positive,
        a_square: a_positive && is_perfect_square(&a).unwrap_or(false),
    }
}

/// Lower bound of the balance interval is exactly one.
pub fn ratio_above_one(r: &BigRational) -> bool {
    r > &BigRational::one()
}
