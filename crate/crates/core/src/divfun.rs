//! Divisor-sum functions on polynomials.
//!
//! All divisors are monic. For a monic irreducible `T`:
//!
//! * `sigma(T^a)   = 1 + T + ... + T^a`
//! * `sigma*(T^a)  = 1 + T^a` (the unitary divisors of `T^a` are `1` and `T^a`)
//! * `sigma**(T^2n)   = (1 + T^(n+1)) * sigma(T^(n-1))`
//! * `sigma**(T^(2n+1)) = sigma(T^(2n+1))`
//!
//! and each function is multiplicative over coprime factors. The brute-force
//! [`brute_sigma_star2`] enumerates bi-unitary divisors straight from the
//! definition and serves as an oracle for the closed forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

/// Default cap on the total degree accepted by [`brute_sigma_star2`].
pub const DEFAULT_ORACLE_CAP: usize = 64;

/// `prod (x - root)^exp` over a finite support; zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingPoly {
    ctx: FieldCtx,
    exps: BTreeMap<FieldElem, u32>,
}

impl SplittingPoly {
    pub fn new(ctx: FieldCtx) -> Self {
        SplittingPoly {
            ctx,
            exps: BTreeMap::new(),
        }
    }

    pub fn from_exponents(
        ctx: FieldCtx,
        pairs: impl IntoIterator<Item = (FieldElem, u32)>,
    ) -> Result<Self> {
        let mut out = SplittingPoly::new(ctx);
        for (root, e) in pairs {
            if root.ctx() != ctx {
                return Err(Error::CtxMismatch {
                    left: ctx.to_string(),
                    right: root.ctx().to_string(),
                });
            }
            out.add_exponent(root, e);
        }
        Ok(out)
    }

    /// Exponents listed in [`FieldCtx::enumerate`] order.
    pub fn from_dense(ctx: FieldCtx, exps: &[u32]) -> Result<Self> {
        if exps.len() != ctx.order() as usize {
            return Err(Error::Invalid(format!(
                "{} exponents given for the {} elements of {ctx}",
                exps.len(),
                ctx.order()
            )));
        }
        Self::from_exponents(ctx, ctx.enumerate().into_iter().zip(exps.iter().copied()))
    }

    /// `x^q - x` to the power `e`, i.e. every element with exponent `e`.
    pub fn full_power(ctx: FieldCtx, e: u32) -> Self {
        let mut out = SplittingPoly::new(ctx);
        for g in ctx.enumerate() {
            out.add_exponent(g, e);
        }
        out
    }

    pub fn add_exponent(&mut self, root: FieldElem, e: u32) {
        assert_eq!(root.ctx(), self.ctx, "root from a different field");
        if e > 0 {
            *self.exps.entry(root).or_insert(0) += e;
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn exponent(&self, root: FieldElem) -> u32 {
        self.exps.get(&root).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<FieldElem, u32> {
        &self.exps
    }

    /// Exponents in [`FieldCtx::enumerate`] order.
    pub fn dense(&self) -> Vec<u32> {
        self.ctx
            .enumerate()
            .into_iter()
            .map(|g| self.exponent(g))
            .collect()
    }

    /// Number of distinct roots.
    pub fn omega(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.values().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_coprime_to(&self, other: &SplittingPoly) -> bool {
        self.exps.keys().all(|r| !other.exps.contains_key(r))
    }

    pub fn product(&self, other: &SplittingPoly) -> Result<SplittingPoly> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        let mut out = self.clone();
        for (&r, &e) in &other.exps {
            out.add_exponent(r, e);
        }
        Ok(out)
    }

    /// Restriction to a subset of the roots.
    pub fn restrict(&self, keep: impl Fn(FieldElem) -> bool) -> SplittingPoly {
        SplittingPoly {
            ctx: self.ctx,
            exps: self
                .exps
                .iter()
                .filter(|(&r, _)| keep(r))
                .map(|(&r, &e)| (r, e))
                .collect(),
        }
    }

    pub fn expand(&self) -> Poly {
        self.exps.iter().fold(Poly::one(self.ctx), |acc, (&r, &e)| {
            &acc * &Poly::linear(r).pow(e)
        })
    }

    pub fn to_factored(&self) -> FactoredPoly {
        FactoredPoly {
            ctx: self.ctx,
            factors: self
                .exps
                .iter()
                .map(|(&r, &e)| (Poly::linear(r), e))
                .collect(),
        }
    }
}

impl fmt::Display for SplittingPoly {
    /// `(x+c)^e` factors in root order, with `x^e` for the root zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, (&r, &e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if r.is_zero() {
                write!(f, "x^{e}")?;
            } else {
                write!(f, "(x+{})^{e}", -r)?;
            }
        }
        Ok(())
    }
}

/// A product of powers of pairwise distinct monic irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    ctx: FieldCtx,
    factors: Vec<(Poly, u32)>,
}

impl FactoredPoly {
    /// Validates that every base is monic and irreducible; repeated bases
    /// are merged and zero exponents dropped.
    pub fn new(ctx: FieldCtx, factors: Vec<(Poly, u32)>) -> Result<Self> {
        let mut merged: Vec<(Poly, u32)> = Vec::new();
        for (base, e) in factors {
            if base.ctx() != ctx {
                return Err(Error::CtxMismatch {
                    left: ctx.to_string(),
                    right: base.ctx().to_string(),
                });
            }
            if !base.is_monic() || !base.is_irreducible() {
                return Err(Error::Invalid(format!(
                    "{base} is not a monic irreducible polynomial"
                )));
            }
            if e == 0 {
                continue;
            }
            match merged.iter_mut().find(|(b, _)| *b == base) {
                Some((_, acc)) => *acc += e,
                None => merged.push((base, e)),
            }
        }
        Ok(FactoredPoly {
            ctx,
            factors: merged,
        })
    }

    pub fn one(ctx: FieldCtx) -> Self {
        FactoredPoly {
            ctx,
            factors: Vec::new(),
        }
    }

    /// Factors a monic polynomial whose non-linear part is irreducible.
    pub fn factor(poly: &Poly) -> Result<Self> {
        let ctx = poly.ctx();
        if !poly.is_monic() {
            return Err(Error::Invalid(format!("{poly} is not monic")));
        }
        let (roots, rest) = poly.split_roots()?;
        let mut factors: Vec<(Poly, u32)> = roots
            .into_iter()
            .map(|(r, e)| (Poly::linear(r), e))
            .collect();
        if rest.degree().unwrap_or(0) > 0 {
            let rest = rest.monic();
            if !rest.is_irreducible() {
                return Err(Error::Unfactorable(format!(
                    "the root-free part {rest} is reducible"
                )));
            }
            factors.push((rest, 1));
        }
        Self::new(ctx, factors)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(b, e)| b.degree().unwrap_or(0) * *e as usize)
            .sum()
    }

    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::one(self.ctx), |acc, (b, e)| &acc * &b.pow(*e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisorSum {
    /// sum of all divisors
    Sigma,
    /// sum of unitary divisors
    Unitary,
    /// sum of bi-unitary divisors
    BiUnitary,
}

/// `1 + t + ... + t^a`
pub fn sigma_pp(t: &Poly, a: u32) -> Poly {
    let one = Poly::one(t.ctx());
    (0..a).fold(one.clone(), |acc, _| &(&acc * t) + &one)
}

/// `1 + t^a`, or `1` when `a = 0`.
pub fn sigma_star_pp(t: &Poly, a: u32) -> Poly {
    if a == 0 {
        return Poly::one(t.ctx());
    }
    &Poly::one(t.ctx()) + &t.pow(a)
}

pub fn sigma_star2_pp(t: &Poly, a: u32) -> Poly {
    match a {
        0 => Poly::one(t.ctx()),
        a if a % 2 == 1 => sigma_pp(t, a),
        a => {
            let n = a / 2;
            let head = &Poly::one(t.ctx()) + &t.pow(n + 1);
            &head * &sigma_pp(t, n - 1)
        }
    }
}

pub fn sigma_map(a: &FactoredPoly, which: DivisorSum) -> Poly {
    a.factors.iter().fold(Poly::one(a.ctx), |acc, (base, e)| {
        let part = match which {
            DivisorSum::Sigma => sigma_pp(base, *e),
            DivisorSum::Unitary => sigma_star_pp(base, *e),
            DivisorSum::BiUnitary => sigma_star2_pp(base, *e),
        };
        &acc * &part
    })
}

/// Greatest common unitary divisor: the common bases carrying equal exponents.
pub fn gcd_u(s: &FactoredPoly, t: &FactoredPoly) -> Result<FactoredPoly> {
    if s.ctx != t.ctx {
        return Err(Error::CtxMismatch {
            left: s.ctx.to_string(),
            right: t.ctx.to_string(),
        });
    }
    let factors = s
        .factors
        .iter()
        .filter(|(b, e)| t.factors.iter().any(|(b2, e2)| b2 == b && e2 == e))
        .cloned()
        .collect();
    Ok(FactoredPoly {
        ctx: s.ctx,
        factors,
    })
}

/// Exponents `k` with `gcd(base^k, base^(m-k)) = 1`, found by computing the gcds.
fn unitary_exponents(base: &Poly, m: u32) -> Vec<u32> {
    (0..=m)
        .filter(|&k| {
            Poly::gcd(&base.pow(k), &base.pow(m - k))
                .expect("nonzero arguments")
                .is_one()
        })
        .collect()
}

/// Sum of the bi-unitary divisors of `s`, by enumerating every divisor
/// exponent tuple and testing `gcd_u(D, S/D) = 1` from the definition.
pub fn brute_sigma_star2(s: &FactoredPoly, cap: usize) -> Result<Poly> {
    let degree = s.degree();
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap });
    }
    let ctx = s.ctx;
    let mut unitary: HashMap<(usize, u32), Vec<u32>> = HashMap::new();
    let mut unitary_of = |i: usize, m: u32| -> Vec<u32> {
        unitary
            .entry((i, m))
            .or_insert_with(|| unitary_exponents(&s.factors[i].0, m))
            .clone()
    };
    // For each factor, the divisor exponents d with gcd_u(P^d, P^(e-d)) = 1:
    // no common unitary divisor other than 1.
    let mut admissible: Vec<Vec<u32>> = Vec::with_capacity(s.factors.len());
    for (i, (_, e)) in s.factors.iter().enumerate() {
        let ok = (0..=*e)
            .filter(|&d| {
                let left = unitary_of(i, d);
                let right = unitary_of(i, e - d);
                left.iter().all(|k| *k == 0 || !right.contains(k))
            })
            .collect();
        admissible.push(ok);
    }
    let powers: Vec<Vec<Poly>> = s
        .factors
        .iter()
        .map(|(b, e)| {
            let mut row = vec![Poly::one(ctx)];
            for k in 1..=*e as usize {
                row.push(&row[k - 1] * b);
            }
            row
        })
        .collect();

    // Walk the tuple space depth-first, carrying the partial divisor.
    let mut total = Poly::zero(ctx);
    let mut stack: Vec<(usize, Poly)> = vec![(0, Poly::one(ctx))];
    while let Some((depth, partial)) = stack.pop() {
        if depth == s.factors.len() {
            total = &total + &partial;
            continue;
        }
        for &d in &admissible[depth] {
            stack.push((depth + 1, &partial * &powers[depth][d as usize]));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_poly, parse_splitting};
    use proptest::prelude::*;

    fn f4() -> FieldCtx {
        FieldCtx::f4()
    }

    fn f9() -> FieldCtx {
        FieldCtx::quadratic(3).unwrap()
    }

    fn p(ctx: FieldCtx, s: &str) -> Poly {
        parse_poly(ctx, s).unwrap()
    }

    fn sp(ctx: FieldCtx, s: &str) -> SplittingPoly {
        parse_splitting(ctx, s).unwrap()
    }

    #[test]
    fn sigma_prime_powers() {
        let x4 = Poly::x(f4());
        assert!(sigma_pp(&x4, 0).is_one());
        assert_eq!(sigma_pp(&x4, 3), p(f4(), "(x+1)^3"));
        assert_eq!(sigma_pp(&Poly::x(f9()), 1), p(f9(), "x+1"));
    }

    #[test]
    fn sigma_star2_prime_powers() {
        let x4 = Poly::x(f4());
        assert_eq!(sigma_star2_pp(&x4, 2), p(f4(), "(x+1)^2"));
        assert_eq!(sigma_star2_pp(&x4, 4), p(f4(), "(x+1)^2*(x+a)*(x+a+1)"));
        assert_eq!(sigma_star2_pp(&x4, 6), p(f4(), "(x+1)^4*(x+a)*(x+a+1)"));
        assert_eq!(sigma_star2_pp(&Poly::x(f9()), 4), p(f9(), "(x+1)^4"));
        assert!(sigma_star2_pp(&x4, 0).is_one());
    }

    #[test]
    fn sigma_map_examples() {
        let f4 = f4();
        let a = sp(f4, "x^2*(x-1)^2").to_factored();
        assert_eq!(sigma_map(&a, DivisorSum::BiUnitary), p(f4, "x^2*(x+1)^2"));
        let a = sp(f4, "x*(x-1)").to_factored();
        assert_eq!(sigma_map(&a, DivisorSum::Sigma), p(f4, "(x+1)*x"));
        let a = sp(f4, "x^3").to_factored();
        assert_eq!(sigma_map(&a, DivisorSum::Unitary), p(f4, "1+x^3"));
        assert!(sigma_map(&FactoredPoly::one(f4), DivisorSum::BiUnitary).is_one());
    }

    #[test]
    fn gcd_u_examples() {
        let f4 = f4();
        let fp = |s: &str| sp(f4, s).to_factored();
        assert_eq!(
            gcd_u(&fp("x^3"), &fp("x^5")).unwrap(),
            FactoredPoly::one(f4)
        );
        assert_eq!(gcd_u(&fp("x^3"), &fp("x^3")).unwrap(), fp("x^3"));
        assert_eq!(
            gcd_u(&fp("x^3*(x-1)^2"), &fp("x^3*(x-1)^5")).unwrap(),
            fp("x^3")
        );
        // a common unitary divisor of both arguments
        let s = fp("x^3*(x-1)^2*(x-a)");
        let t = fp("x^3*(x-1)^4*(x-a)");
        let g = gcd_u(&s, &t).unwrap();
        for m in [&s, &t] {
            let (quot, rem) = m.expand().div_rem(&g.expand()).unwrap();
            assert!(rem.is_zero());
            assert!(Poly::gcd(&g.expand(), &quot).unwrap().is_one());
        }
    }

    #[test]
    fn oracle_examples() {
        let f4 = f4();
        let x2 = sp(f4, "x^2").to_factored();
        assert_eq!(brute_sigma_star2(&x2, 64).unwrap(), p(f4, "(x+1)^2"));
        let x3 = sp(f4, "x^3").to_factored();
        assert_eq!(brute_sigma_star2(&x3, 64).unwrap(), p(f4, "1+x+x^2+x^3"));
        // an irreducible quadratic over F_3, exponent 1
        let f3 = FieldCtx::prime(3).unwrap();
        let q = p(f3, "x^2+1");
        let fq = FactoredPoly::new(f3, vec![(q.clone(), 1)]).unwrap();
        assert_eq!(brute_sigma_star2(&fq, 64).unwrap(), &Poly::one(f3) + &q);
    }

    #[test]
    fn oracle_degree_cap() {
        let a = sp(f4(), "x^40*(x-1)^30").to_factored();
        assert_eq!(
            brute_sigma_star2(&a, DEFAULT_ORACLE_CAP),
            Err(Error::DegreeCap {
                degree: 70,
                cap: 64
            })
        );
    }

    #[test]
    fn oracle_matches_closed_form_on_prime_powers() {
        for ctx in [f4(), f9()] {
            for g in ctx.enumerate() {
                let t = Poly::linear(g);
                for a in 0..=10 {
                    let fp = FactoredPoly::new(ctx, vec![(t.clone(), a)]).unwrap();
                    assert_eq!(
                        brute_sigma_star2(&fp, 64).unwrap(),
                        sigma_star2_pp(&t, a),
                        "{ctx} root {g} exponent {a}"
                    );
                }
            }
        }
    }

    #[test]
    fn t_never_divides_its_sigma_star2() {
        for ctx in [f4(), f9(), FieldCtx::quadratic(5).unwrap()] {
            let t = Poly::x(ctx);
            for a in 0..=30 {
                assert!(!t.divides(&sigma_star2_pp(&t, a)).unwrap(), "{ctx} a={a}");
            }
        }
    }

    #[test]
    fn factor_general_input() {
        let f3 = FieldCtx::prime(3).unwrap();
        let f = FactoredPoly::factor(&p(f3, "x^2*(x+1)*(x^2+1)")).unwrap();
        assert_eq!(f.factors().len(), 3);
        assert_eq!(f.expand(), p(f3, "x^2*(x+1)*(x^2+1)"));
        assert!(matches!(
            FactoredPoly::factor(&p(f3, "(x^2+1)^2")),
            Err(Error::Unfactorable(_))
        ));
        assert!(FactoredPoly::new(f3, vec![(p(f3, "x^2+2"), 1)]).is_err());
    }

    fn coprime_pair() -> impl Strategy<Value = (SplittingPoly, SplittingPoly)> {
        prop_oneof![Just(f4()), Just(f9())].prop_flat_map(|ctx| {
            let q = ctx.order() as usize;
            (
                prop::collection::vec(0u32..7, q),
                prop::collection::vec(any::<bool>(), q),
            )
                .prop_map(move |(exps, side)| {
                    let mut left = SplittingPoly::new(ctx);
                    let mut right = SplittingPoly::new(ctx);
                    for (k, g) in ctx.enumerate().into_iter().enumerate() {
                        if side[k] {
                            left.add_exponent(g, exps[k]);
                        } else {
                            right.add_exponent(g, exps[k]);
                        }
                    }
                    (left, right)
                })
        })
    }

    proptest! {
        #[test]
        fn sigma_star2_is_multiplicative((s, t) in coprime_pair()) {
            let st = s.product(&t).unwrap();
            let whole = sigma_map(&st.to_factored(), DivisorSum::BiUnitary);
            let parts = &sigma_map(&s.to_factored(), DivisorSum::BiUnitary)
                * &sigma_map(&t.to_factored(), DivisorSum::BiUnitary);
            prop_assert_eq!(whole, parts);
        }

        #[test]
        fn splitting_display_round_trips((s, _t) in coprime_pair()) {
            prop_assert_eq!(parse_splitting(s.ctx(), &s.to_string()).unwrap(), s);
        }
    }
}
