//! Continued fractions of `sqrt D`, Pell units, and the solution families
//! generated from a base triple.
//!
//! A base solution `(a, b, c)` fixes a plane through itself and the line
//! `x = y = z`. Solutions on that plane correspond to solutions of
//! `u^2 - A v^2 = B` with `v = 2y + 1`, so the orbit of `(u0, v0)` under powers
//! of the fundamental unit of `p^2 - A q^2 = 1` yields infinitely many
//! coplanar triples.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::socs::{
    coefficient_a, coefficient_b, integer_sqrt, six_pyramidal, GapPair, SolutionTriple,
};

/// `sqrt D = [a0; period...]` with the period repeating forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFractionExpansion {
    pub radicand: BigInt,
    pub a0: BigInt,
    pub period: Vec<BigInt>,
}

impl ContinuedFractionExpansion {
    /// Partial quotients `a0, a1, a2, ...` repeating the period indefinitely.
    pub fn quotients(&self) -> impl Iterator<Item = &BigInt> + '_ {
        std::iter::once(&self.a0).chain(self.period.iter().cycle())
    }

    /// Convergents `p_i / q_i` in order, starting with `a0 / 1`.
    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            quotients: Box::new(self.quotients()),
            prev: (BigInt::one(), BigInt::zero()),
            cur: None,
        }
    }
}

pub struct Convergents<'a> {
    quotients: Box<dyn Iterator<Item = &'a BigInt> + 'a>,
    prev: (BigInt, BigInt),
    cur: Option<(BigInt, BigInt)>,
}

impl Iterator for Convergents<'_> {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let a = self.quotients.next()?;
        let next = match &self.cur {
            None => (a.clone(), BigInt::one()),
            Some((p, q)) => (a * p + &self.prev.0, a * q + &self.prev.1),
        };
        if let Some(cur) = self.cur.replace(next.clone()) {
            self.prev = cur;
        }
        Some(next)
    }
}

/// PQa expansion of `sqrt D`, stopping when the `(m, d)` state repeats.
pub fn cf_sqrt(radicand: &BigInt) -> Result<ContinuedFractionExpansion> {
    if !radicand.is_positive() {
        return Err(Error::NonPositive {
            what: "radicand",
            value: radicand.to_string(),
        });
    }
    let a0 = integer_sqrt(radicand)?;
    if &a0 * &a0 == *radicand {
        return Err(Error::PerfectSquare(radicand.to_string()));
    }

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let (mut m, mut d, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let mut quotients = Vec::new();
    loop {
        m = &d * &a - &m;
        d = (radicand - &m * &m) / &d;
        a = (&a0 + &m) / &d;
        if let Some(&start) = seen.get(&(m.clone(), d.clone())) {
            // For sqrt D the expansion is purely periodic after a0.
            if start != 0 {
                return Err(Error::Invariant(format!(
                    "PQa state for {radicand} re-entered at {start}, not at the period start"
                )));
            }
            break;
        }
        seen.insert((m.clone(), d.clone()), quotients.len());
        quotients.push(a.clone());
    }

    let expansion = ContinuedFractionExpansion {
        radicand: radicand.clone(),
        a0,
        period: quotients,
    };
    if expansion.period.last() != Some(&(&expansion.a0 * 2u32)) {
        return Err(Error::Invariant(format!(
            "period of sqrt {radicand} does not end in 2 a0"
        )));
    }
    Ok(expansion)
}

/// A solution of `p^2 - D q^2 = 1` with `p, q >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellUnit {
    p: BigInt,
    q: BigInt,
    radicand: BigInt,
}

impl PellUnit {
    pub fn new(p: BigInt, q: BigInt, radicand: BigInt) -> Result<Self> {
        if !p.is_positive() || !q.is_positive() {
            return Err(Error::Invariant(format!("unit ({p}, {q}) not positive")));
        }
        if &p * &p - &radicand * &q * &q != BigInt::one() {
            return Err(Error::Invariant(format!(
                "({p}, {q}) does not solve p^2 - {radicand} q^2 = 1"
            )));
        }
        Ok(PellUnit { p, q, radicand })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    /// Successive powers `(p_n, q_n)` for `n = start, start + 1, ...`.
    pub fn powers_from(&self, start: i64) -> UnitPowers<'_> {
        let (p, q) = unit_power(self, start);
        UnitPowers { unit: self, p, q }
    }
}

pub struct UnitPowers<'a> {
    unit: &'a PellUnit,
    p: BigInt,
    q: BigInt,
}

impl Iterator for UnitPowers<'_> {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        let (up, uq, d) = (&self.unit.p, &self.unit.q, &self.unit.radicand);
        let next_p = &self.p * up + d * &self.q * uq;
        let next_q = &self.p * uq + &self.q * up;
        let p = std::mem::replace(&mut self.p, next_p);
        let q = std::mem::replace(&mut self.q, next_q);
        Some((p, q))
    }
}

/// Minimal `(p, q)` with `p^2 - D q^2 = 1`.
pub fn fundamental_unit(radicand: &BigInt) -> Result<PellUnit> {
    let cf = cf_sqrt(radicand)?;
    fundamental_unit_from(&cf)
}

pub fn fundamental_unit_from(cf: &ContinuedFractionExpansion) -> Result<PellUnit> {
    let len = cf.period.len();
    let (p, q) = cf
        .convergents()
        .nth(len - 1)
        .expect("convergents are infinite");
    if len.is_multiple_of(2) {
        PellUnit::new(p, q, cf.radicand.clone())
    } else {
        // (p, q) solves the negative equation; its square solves the positive one.
        let d = &cf.radicand;
        PellUnit::new(&p * &p + d * &q * &q, &p * &q * 2u32, d.clone())
    }
}

/// `p_n + q_n sqrt D = (p + q sqrt D)^n`, with negative `n` using `(p, -q)`.
pub fn unit_power(unit: &PellUnit, n: i64) -> (BigInt, BigInt) {
    let d = &unit.radicand;
    let mul = |x: &(BigInt, BigInt), y: &(BigInt, BigInt)| {
        (&x.0 * &y.0 + d * &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
    };
    let mut base = if n < 0 {
        (unit.p.clone(), -unit.q.clone())
    } else {
        (unit.p.clone(), unit.q.clone())
    };
    let mut acc = (BigInt::one(), BigInt::zero());
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// Pell data attached to one base solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellContext {
    pub base: SolutionTriple,
    /// `A` in `u^2 - A v^2 = B`.
    pub a_coeff: BigInt,
    /// `B` in `u^2 - A v^2 = B`.
    pub b_coeff: BigInt,
    pub u0: BigInt,
    pub v0: BigInt,
    pub expansion: ContinuedFractionExpansion,
    pub unit: PellUnit,
}

pub fn pell_context(base: &SolutionTriple) -> Result<PellContext> {
    let gaps = base.gaps();
    let a_coeff = coefficient_a(&gaps)?;
    let b_coeff = coefficient_b(&gaps)?;
    let (a, b, c) = (base.a(), base.b(), base.c());
    let u0 = (c - b)
        * (a * a * a * 4u32 + a * a * 3u32 - a * a * b * 6u32 - a * b * 6u32
            + b * b * b * 4u32
            + b * b * 6u32
            - b * c * c * 6u32
            - b * c * 6u32
            + c * c * c * 4u32
            + c * c * 3u32);
    let v0 = b * 2u32 + 1u32;
    if &u0 * &u0 - &a_coeff * &v0 * &v0 != b_coeff {
        return Err(Error::Invariant(format!("base {base}: u0^2 - A v0^2 != B")));
    }
    let u = linear_u(&gaps, b, c);
    if u != u0 {
        return Err(Error::Invariant(format!(
            "base {base}: u0 = {u0} but the linear form gives {u}"
        )));
    }
    let expansion = cf_sqrt(&a_coeff)?;
    let unit = fundamental_unit_from(&expansion)?;
    Ok(PellContext {
        base: base.clone(),
        a_coeff,
        b_coeff,
        u0,
        v0,
        expansion,
        unit,
    })
}

/// `u = 4(m^3 - ell^3) z + (4 ell^3 + 6 ell^2 m + 2 m^3) y + 3 ell^2 m + 3 m^3`.
fn linear_u(g: &GapPair, y: &BigInt, z: &BigInt) -> BigInt {
    let (l, m) = (&g.ell, &g.m);
    let (l3, m3) = (l * l * l, m * m * m);
    (&m3 - &l3) * z * 4u32
        + (&l3 * 4u32 + l * l * m * 6u32 + &m3 * 2u32) * y
        + l * l * m * 3u32
        + &m3 * 3u32
}

/// One member of a generated family. Components may be nonpositive or
/// out of order for negative `n`; `valid` records whether they form a
/// solution triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedSolution {
    pub n: i64,
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub p_n: BigInt,
    pub q_n: BigInt,
    pub valid: bool,
}

impl GeneratedSolution {
    pub fn triple(&self) -> Option<SolutionTriple> {
        if !self.valid {
            return None;
        }
        SolutionTriple::new(self.a.clone(), self.b.clone(), self.c.clone()).ok()
    }

    /// True when `c - a` is odd.
    pub fn odd_span(&self) -> bool {
        (&self.c - &self.a).is_odd()
    }
}

/// Coefficients of `2 x_n = -1 + (1 + 2x) p_n + (b - c) K_x q_n` for each
/// component `x` of the base.
struct FamilyCoefficients {
    q_terms: [BigInt; 3],
    p_terms: [BigInt; 3],
}

fn family_coefficients(base: &SolutionTriple) -> FamilyCoefficients {
    let (a, b, c) = (base.a(), base.b(), base.c());
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let (a3, b3, c3) = (&a2 * a, &b2 * b, &c2 * c);
    let ka = &a3 * 2u32 + &a2 * 3u32 - a * &b2 * 12u32 - a * b * 12u32
        + a * &c2 * 6u32
        + a * c * 6u32
        + &b3 * 8u32
        + &b2 * 6u32
        - &c3 * 4u32
        - &c2 * 3u32;
    let kb = -(&a3 * 4u32) + &a2 * b * 6u32 - &a2 * 3u32 + a * b * 6u32 - &b3 * 4u32 - &b2 * 6u32
        + b * &c2 * 6u32
        + b * c * 6u32
        - &c3 * 4u32
        - &c2 * 3u32;
    let kc = -(&a3 * 4u32) + &a2 * c * 6u32 - &a2 * 3u32 + a * c * 6u32 + &b3 * 8u32
        - &b2 * c * 12u32
        + &b2 * 6u32
        - b * c * 12u32
        + &c3 * 2u32
        + &c2 * 3u32;
    let bc = b - c;
    FamilyCoefficients {
        q_terms: [&bc * ka, &bc * kb, &bc * kc],
        p_terms: [a * 2u32 + 1u32, b * 2u32 + 1u32, c * 2u32 + 1u32],
    }
}

/// Coefficients `(alpha, beta)` with `x_n = -1/2 + alpha p_n + beta q_n` for
/// each component, as exact halves: returns `(2 alpha, 2 beta)`.
pub fn family_coefficients_doubled(base: &SolutionTriple) -> [(BigInt, BigInt); 3] {
    let fc = family_coefficients(base);
    let [pa, pb, pc] = fc.p_terms;
    let [qa, qb, qc] = fc.q_terms;
    [(pa, qa), (pb, qb), (pc, qc)]
}

/// Members `n_from..=n_to` of the family generated by `base`.
pub fn generate(base: &SolutionTriple, n_from: i64, n_to: i64) -> Result<Vec<GeneratedSolution>> {
    let ctx = pell_context(base)?;
    generate_with(&ctx, n_from, n_to)
}

pub fn generate_with(ctx: &PellContext, n_from: i64, n_to: i64) -> Result<Vec<GeneratedSolution>> {
    if n_from > n_to {
        return Ok(Vec::new());
    }
    let base = &ctx.base;
    let fc = family_coefficients(base);
    let plane = solution_plane(base);
    let base_span_odd = base.span().is_odd();
    let gaps = base.gaps();

    let mut out = Vec::with_capacity((n_to - n_from + 1) as usize);
    for (n, (p_n, q_n)) in (n_from..=n_to).zip(ctx.unit.powers_from(n_from)) {
        let mut comps: [BigInt; 3] = Default::default();
        for (i, comp) in comps.iter_mut().enumerate() {
            let twice = &fc.p_terms[i] * &p_n + &fc.q_terms[i] * &q_n - 1u32;
            let (half, rem) = twice.div_rem(&BigInt::from(2));
            if !rem.is_zero() {
                return Err(Error::Invariant(format!(
                    "member n = {n} of the family of {base} is not integral"
                )));
            }
            *comp = half;
        }
        let [a, b, c] = comps;

        if six_pyramidal(&a) + six_pyramidal(&c) != six_pyramidal(&b) * 2u32 {
            return Err(Error::Invariant(format!(
                "member n = {n} of {base} fails the pyramidal identity"
            )));
        }
        if &plane.0 * &a + &plane.1 * &b + &plane.2 * &c != BigInt::zero() {
            return Err(Error::Invariant(format!(
                "member n = {n} of {base} is off the base plane"
            )));
        }
        if (&c - &a).is_odd() != base_span_odd {
            return Err(Error::Invariant(format!(
                "member n = {n} of {base} changed span parity"
            )));
        }
        // (u_n, v_n) = (u0 + v0 sqrt A)(p_n + q_n sqrt A) must match the
        // linear change of variables evaluated at (b_n, c_n).
        let u_n = &ctx.u0 * &p_n + &ctx.a_coeff * &ctx.v0 * &q_n;
        let v_n = &ctx.u0 * &q_n + &ctx.v0 * &p_n;
        if v_n != &b * 2u32 + 1u32 || linear_u(&gaps, &b, &c) != u_n {
            return Err(Error::Invariant(format!(
                "member n = {n} of {base} disagrees with the Pell orbit"
            )));
        }

        let a1 = &a + 1u32;
        let valid = a1.is_positive() && a1 < b && b < c;
        out.push(GeneratedSolution {
            n,
            a,
            b,
            c,
            p_n,
            q_n,
            valid,
        });
    }
    Ok(out)
}

/// Normalized coefficients of `(b - c)x + (c - a)y + (a - b)z = 0`: divided by
/// their gcd, with the `y` coefficient negative.
pub fn solution_plane(t: &SolutionTriple) -> (BigInt, BigInt, BigInt) {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let (mut x, mut y, mut z) = (b - c, c - a, a - b);
    let g = x.gcd(&y).gcd(&z);
    if !g.is_zero() && !g.is_one() {
        x /= &g;
        y /= &g;
        z /= &g;
    }
    if y.is_positive() {
        (x, y, z) = (-x, -y, -z);
    }
    (x, y, z)
}
