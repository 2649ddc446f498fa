//! Admissible exponents for splitting `sigma**` values.
//!
//! For an odd prime `p` and `q = p^2` the half-exponents `k` for which
//! `sigma**(x^2k)` splits over F_q form `Omega = Omega1 ∪ Omega2 ∪ Omega3 ∪ Omega4`:
//!
//! ```text
//! Omega1 = { N : N | q-1 and 2N+2 | q-1 }
//! Omega2 = { pN : N | q-1 and 2pN+2 | q-1 }            = { p }
//! Omega3 = { N : N | q-1, 2N+2 = M p, M | q-1 }        = { p-1 }
//! Omega4 = { N : N | q-1, 2N+2 = M p^2, M | q-1 }      = { q-1 }
//! ```
//!
//! `Omega2` is stored by its elements `pN` (so `p` itself), the same scale as
//! the other three sets: an element `k` always means exponent `2k`.
//!
//! Root profiles are computed from the binomial factorisations
//! `y^L - 1` and `y^L + 1`: writing `L = L' p^m` with `p ∤ L'`, the roots are
//! the `L'`-th roots of `±1`, each with multiplicity `p^m`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::divfun::SplittingPoly;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, FieldElem};

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaSets {
    pub p: u64,
    pub omega1: Vec<u64>,
    pub omega2: Vec<u64>,
    pub omega3: Vec<u64>,
    pub omega4: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaKind {
    /// `N` with `N` and `2N+2` dividing `q-1`
    One(u64),
    /// `p`
    Two,
    /// `p-1`
    Three,
    /// `q-1`
    Four,
}

impl OmegaSets {
    /// Sorted union.
    pub fn union(&self) -> Vec<u64> {
        let mut all: Vec<u64> = [&self.omega1, &self.omega2, &self.omega3, &self.omega4]
            .into_iter()
            .flatten()
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    pub fn contains(&self, k: u64) -> bool {
        self.kind(k).is_some()
    }

    pub fn kind(&self, k: u64) -> Option<OmegaKind> {
        if self.omega1.contains(&k) {
            Some(OmegaKind::One(k))
        } else if self.omega2.contains(&k) {
            Some(OmegaKind::Two)
        } else if self.omega3.contains(&k) {
            Some(OmegaKind::Three)
        } else if self.omega4.contains(&k) {
            Some(OmegaKind::Four)
        } else {
            None
        }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    Ok(())
}

pub fn raw_omega1(p: u64) -> Vec<u64> {
    let q1 = p * p - 1;
    divisors(q1)
        .into_iter()
        .filter(|&n| q1.is_multiple_of(2 * n + 2))
        .collect()
}

pub fn raw_omega2(p: u64) -> Vec<u64> {
    let q1 = p * p - 1;
    divisors(q1)
        .into_iter()
        .filter(|&n| q1.is_multiple_of(2 * p * n + 2))
        .map(|n| p * n)
        .collect()
}

fn raw_omega_with_power(p: u64, pk: u64) -> Vec<u64> {
    let q1 = p * p - 1;
    divisors(q1)
        .into_iter()
        .filter(|&n| {
            let lhs = 2 * n + 2;
            lhs % pk == 0 && q1.is_multiple_of(lhs / pk)
        })
        .collect()
}

pub fn raw_omega3(p: u64) -> Vec<u64> {
    raw_omega_with_power(p, p)
}

pub fn raw_omega4(p: u64) -> Vec<u64> {
    raw_omega_with_power(p, p * p)
}

/// The four sets for an odd prime, with `Omega2..Omega4` re-derived from
/// their definitions and checked against `{p}`, `{p-1}`, `{p^2-1}`.
pub fn omega_sets(p: u64) -> Result<OmegaSets> {
    check_odd_prime(p)?;
    let sets = OmegaSets {
        p,
        omega1: raw_omega1(p),
        omega2: vec![p],
        omega3: vec![p - 1],
        omega4: vec![p * p - 1],
    };
    let raw = [raw_omega2(p), raw_omega3(p), raw_omega4(p)];
    let closed = [&sets.omega2, &sets.omega3, &sets.omega4];
    for (k, (r, c)) in raw.iter().zip(closed).enumerate() {
        if r != c {
            return Err(Error::Consistency(format!(
                "Omega{} for p = {p}: enumerated {r:?}, expected {c:?}",
                k + 2
            )));
        }
    }
    Ok(sets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitClass {
    Splits,
    NonSplit,
}

impl SplitClass {
    fn of(b: bool) -> Self {
        if b {
            SplitClass::Splits
        } else {
            SplitClass::NonSplit
        }
    }

    pub fn splits(self) -> bool {
        self == SplitClass::Splits
    }
}

/// Whether `n = N * base^k` for some `k >= 0` and some `N` accepted by `ok`.
fn is_scaled_power(mut n: u64, base: u64, ok: impl Fn(u64) -> bool) -> bool {
    loop {
        if ok(n) {
            return true;
        }
        if !n.is_multiple_of(base) {
            return false;
        }
        n /= base;
    }
}

/// Whether `sigma**(x^e)` splits over F_4.
pub fn split_class_f4(e: u32) -> SplitClass {
    let e = e as u64;
    if e % 2 == 1 {
        SplitClass::of(is_scaled_power(e + 1, 2, |n| n == 1 || n == 3))
    } else {
        SplitClass::of(matches!(e, 0 | 2 | 4 | 6))
    }
}

/// Whether `sigma**(x^e)` splits over F_{p^2}, `p` odd.
pub fn split_class_gen(e: u32, omega: &OmegaSets) -> SplitClass {
    let e = e as u64;
    let p = omega.p;
    if e == 0 {
        SplitClass::Splits
    } else if e % 2 == 1 {
        let q1 = p * p - 1;
        SplitClass::of(is_scaled_power(e + 1, p, |n| q1.is_multiple_of(n)))
    } else {
        SplitClass::of(omega.contains(e / 2))
    }
}

/// Split class in any supported field: the F_4 and F_{p^2} criteria where
/// they apply, the closed-form root count on prime fields.
pub fn split_class(ctx: FieldCtx, e: u32) -> Result<SplitClass> {
    match (ctx.is_quadratic(), ctx.p()) {
        (true, 2) => Ok(split_class_f4(e)),
        (true, p) => Ok(split_class_gen(e, &omega_sets(p as u64)?)),
        (false, _) => Ok(SplitClass::of(star2_root_profile(ctx, e).is_some())),
    }
}

/// All `rho` with `rho^n = target`, by exhaustive search.
fn solve_power(ctx: FieldCtx, n: u64, target: FieldElem) -> Vec<FieldElem> {
    ctx.enumerate()
        .into_iter()
        .filter(|r| r.pow(n) == target)
        .collect()
}

/// Roots of `y^l - c` (`c = ±1`) with multiplicity.
fn binomial_roots(ctx: FieldCtx, l: u64, c: FieldElem) -> BTreeMap<FieldElem, u32> {
    let p = ctx.p() as u64;
    let (mut core, mut mult) = (l, 1u32);
    while core % p == 0 {
        core /= p;
        mult *= p as u32;
    }
    solve_power(ctx, core, c)
        .into_iter()
        .map(|r| (r, mult))
        .collect()
}

fn total(m: &BTreeMap<FieldElem, u32>) -> u64 {
    m.values().map(|&v| v as u64).sum()
}

/// Roots of `sigma(y^e) = (y^(e+1) - 1)/(y - 1)`; `None` when it does not split.
pub fn sigma_root_profile(ctx: FieldCtx, e: u32) -> Option<BTreeMap<FieldElem, u32>> {
    let mut m = binomial_roots(ctx, e as u64 + 1, ctx.one());
    let one = ctx.one();
    match m.get_mut(&one) {
        Some(v) if *v > 1 => *v -= 1,
        Some(_) => {
            m.remove(&one);
        }
        None => unreachable!("1 is always a root of y^L - 1"),
    }
    (total(&m) == e as u64).then_some(m)
}

/// Roots of `sigma**(y^e)`; `None` when it does not split.
pub fn star2_root_profile(ctx: FieldCtx, e: u32) -> Option<BTreeMap<FieldElem, u32>> {
    if e == 0 {
        return Some(BTreeMap::new());
    }
    if e % 2 == 1 {
        return sigma_root_profile(ctx, e);
    }
    let k = e / 2;
    let mut m = binomial_roots(ctx, k as u64 + 1, -ctx.one());
    if total(&m) != k as u64 + 1 {
        return None;
    }
    for (r, v) in sigma_root_profile(ctx, k - 1)? {
        *m.entry(r).or_insert(0) += v;
    }
    Some(m)
}

fn shift(ctx: FieldCtx, profile: &BTreeMap<FieldElem, u32>, gamma: FieldElem) -> SplittingPoly {
    SplittingPoly::from_exponents(ctx, profile.iter().map(|(&r, &v)| (gamma + r, v)))
        .expect("roots share the context")
}

/// Root multiplicities of `sigma**((x - gamma)^e)`.
pub fn sigma_star2_roots(ctx: FieldCtx, gamma: FieldElem, e: u32) -> Result<SplittingPoly> {
    if !split_class(ctx, e)?.splits() {
        return Err(Error::NonSplitExponent(e));
    }
    let profile = star2_root_profile(ctx, e).ok_or_else(|| {
        Error::Consistency(format!(
            "split class says {e} splits over {ctx}, roots disagree"
        ))
    })?;
    let out = shift(ctx, &profile, gamma);
    debug_assert_eq!(out.degree(), e as usize);
    Ok(out)
}

/// Root multiplicities of `sigma((x - gamma)^e)`, or `None` if it does not split.
pub fn sigma_roots(ctx: FieldCtx, gamma: FieldElem, e: u32) -> Option<SplittingPoly> {
    sigma_root_profile(ctx, e).map(|m| shift(ctx, &m, gamma))
}

/// The `zeta` and `beta` root sets for a given `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSets {
    pub n: u64,
    /// `N`-th roots of 1 other than 1
    pub zetas: Vec<FieldElem>,
    /// `(N+1)`-th roots of -1; empty unless `2N+2 | q-1`
    pub betas: Vec<FieldElem>,
}

/// `N`-th roots of 1 other than 1; requires `N | q-1`.
pub fn zetas(ctx: FieldCtx, n: u64) -> Result<Vec<FieldElem>> {
    let q1 = ctx.order() - 1;
    if n == 0 || !q1.is_multiple_of(n) {
        return Err(Error::Invalid(format!(
            "{n} does not divide |{ctx}*| = {q1}"
        )));
    }
    let zetas: Vec<FieldElem> = solve_power(ctx, n, ctx.one())
        .into_iter()
        .filter(|z| !z.is_one())
        .collect();
    if zetas.len() as u64 != n - 1 {
        return Err(Error::Consistency(format!(
            "expected {} nontrivial {n}-th roots of unity in {ctx}",
            n - 1
        )));
    }
    Ok(zetas)
}

/// `(N+1)`-th roots of -1; requires odd characteristic and `2N+2 | q-1`.
pub fn betas(ctx: FieldCtx, n: u64) -> Result<Vec<FieldElem>> {
    let q1 = ctx.order() - 1;
    if ctx.p() == 2 || !q1.is_multiple_of(2 * n + 2) {
        return Err(Error::Invalid(format!(
            "{} does not divide |{ctx}*| = {q1}",
            2 * n + 2
        )));
    }
    let betas = solve_power(ctx, n + 1, -ctx.one());
    // x^(N+1) + 1 is squarefree here, so the count is exact
    if betas.len() as u64 != n + 1 {
        return Err(Error::Consistency(format!(
            "expected {} distinct roots of x^{} + 1 in {ctx}",
            n + 1,
            n + 1
        )));
    }
    Ok(betas)
}

impl RootSets {
    pub fn new(ctx: FieldCtx, n: u64) -> Result<Self> {
        let zetas = zetas(ctx, n)?;
        let betas = betas(ctx, n).unwrap_or_default();
        Ok(RootSets { n, zetas, betas })
    }
}

/// Every `delta` (with multiplicity) such that `x - gamma` divides
/// `sigma**((x - delta)^e)`, for even split `e`.
///
/// Over F_{p^2} with `p` odd the list is assembled from the tuples
/// `Lambda` (shifts by `zeta`s or by 1), followed by `Delta` (shifts by
/// `beta`s) or `Gamma` (repeated `gamma + 1`), according to which of the
/// four sets contains `e/2`. Elsewhere it is read off the root profile.
pub fn contributing_shifts(ctx: FieldCtx, gamma: FieldElem, e: u32) -> Result<Vec<FieldElem>> {
    if e % 2 == 1 {
        return Err(Error::Invalid(format!("exponent {e} is odd")));
    }
    if !split_class(ctx, e)?.splits() {
        return Err(Error::NonSplitExponent(e));
    }
    if e == 0 {
        return Ok(Vec::new());
    }
    let k = (e / 2) as u64;
    let one = ctx.one();
    if ctx.is_quadratic() && ctx.p() > 2 {
        let p = ctx.p() as u64;
        let omega = omega_sets(p)?;
        let minus = |set: &[FieldElem]| set.iter().map(|&z| gamma - z).collect::<Vec<_>>();
        let repeat = |d: FieldElem, n: u64| std::iter::repeat_n(d, n as usize);
        let out: Vec<FieldElem> = match omega.kind(k) {
            Some(OmegaKind::One(n)) => {
                let rs = RootSets::new(ctx, n)?;
                minus(&rs.zetas)
                    .into_iter()
                    .chain(minus(&rs.betas))
                    .collect()
            }
            Some(OmegaKind::Two) => repeat(gamma - one, p - 1)
                .chain(minus(&betas(ctx, p)?))
                .collect(),
            Some(OmegaKind::Three) => minus(&zetas(ctx, p - 1)?)
                .into_iter()
                .chain(repeat(gamma + one, p))
                .collect(),
            Some(OmegaKind::Four) => minus(&zetas(ctx, p * p - 1)?)
                .into_iter()
                .chain(repeat(gamma + one, p * p))
                .collect(),
            None => return Err(Error::NonSplitExponent(e)),
        };
        if out.len() != e as usize {
            return Err(Error::Consistency(format!(
                "{} shifts for exponent {e}",
                out.len()
            )));
        }
        return Ok(out);
    }
    let profile = star2_root_profile(ctx, e).ok_or(Error::NonSplitExponent(e))?;
    Ok(profile
        .iter()
        .flat_map(|(&r, &v)| std::iter::repeat_n(gamma - r, v as usize))
        .collect())
}
