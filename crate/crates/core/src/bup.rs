//! Perfection predicates for splitting polynomials.
//!
//! `A` is bi-unitary perfect (b.u.p.) when `sigma**(A) = A`. For a splitting
//! `A` this is decided root by root: every `(x - gamma)^e` factor contributes
//! the root profile of `sigma**((x - gamma)^e)`, and `A` is b.u.p. iff every
//! such profile splits and the summed multiplicities equal the exponents of
//! `A`. A non-splitting exponent rules `A` out immediately.

use serde::Serialize;

use crate::divfun::{sigma_map, DivisorSum, SplittingPoly};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::omega::{sigma_roots, sigma_star2_roots, split_class};
use crate::poly::Poly;

/// Largest support the decomposition search will enumerate bipartitions of.
pub const MAX_DECOMPOSITION_SUPPORT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BupKind {
    NotBup,
    TrivialBup,
    IndecomposableBup,
}

impl BupKind {
    pub fn label(self) -> &'static str {
        match self {
            BupKind::NotBup => "not-bup",
            BupKind::TrivialBup => "trivial-bup",
            BupKind::IndecomposableBup => "indecomposable-bup",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BupClass {
    pub kind: BupKind,
    /// Pairwise coprime b.u.p. parts, present iff `kind` is trivial.
    pub decomposition: Option<Vec<SplittingPoly>>,
}

fn require_nonconstant(a: &SplittingPoly) -> Result<()> {
    if a.is_one() {
        return Err(Error::Invalid("expected a nonconstant polynomial".into()));
    }
    Ok(())
}

/// `sigma**(A)` as root multiplicities, or `None` if some factor's image
/// does not split.
pub fn sigma_star2_splitting(a: &SplittingPoly) -> Result<Option<SplittingPoly>> {
    let ctx = a.ctx();
    let mut out = SplittingPoly::new(ctx);
    for (&g, &e) in a.exponents() {
        if !split_class(ctx, e)?.splits() {
            return Ok(None);
        }
        out = out.product(&sigma_star2_roots(ctx, g, e)?)?;
    }
    Ok(Some(out))
}

/// `sigma**(A)` by polynomial arithmetic on the expanded factors.
pub fn sigma_star2_expanded(a: &SplittingPoly) -> Poly {
    sigma_map(&a.to_factored(), DivisorSum::BiUnitary)
}

/// `sigma(A) = A`, computed root by root.
pub fn is_perfect(a: &SplittingPoly) -> Result<bool> {
    require_nonconstant(a)?;
    let ctx = a.ctx();
    let mut image = SplittingPoly::new(ctx);
    for (&g, &e) in a.exponents() {
        match sigma_roots(ctx, g, e) {
            Some(part) => image = image.product(&part)?,
            None => return Ok(false),
        }
    }
    Ok(image == *a)
}

/// `sigma(expand(A)) = expand(A)` by polynomial arithmetic.
pub fn is_perfect_expanded(a: &SplittingPoly) -> Result<bool> {
    require_nonconstant(a)?;
    Ok(sigma_map(&a.to_factored(), DivisorSum::Sigma) == a.expand())
}

/// `sigma**(A) = A`: for every root the multiplicity in `sigma**(A)` must
/// equal its exponent in `A`, and `sigma**(A)` must have no other factors.
pub fn is_bup(a: &SplittingPoly) -> Result<bool> {
    require_nonconstant(a)?;
    let Some(image) = sigma_star2_splitting(a)? else {
        return Ok(false);
    };
    let same_roots = a.exponents().iter().all(|(&g, &e)| image.exponent(g) == e);
    Ok(same_roots && image.degree() == a.degree())
}

/// `sigma**(expand(A)) = expand(A)` by polynomial arithmetic.
pub fn is_bup_expanded(a: &SplittingPoly) -> Result<bool> {
    require_nonconstant(a)?;
    Ok(sigma_star2_expanded(a) == a.expand())
}

fn split_support(
    a: &SplittingPoly,
    is_bup: &impl Fn(&SplittingPoly) -> Result<bool>,
) -> Result<Option<(SplittingPoly, SplittingPoly)>> {
    let roots: Vec<FieldElem> = a.exponents().keys().copied().collect();
    let n = roots.len();
    if n < 2 {
        return Ok(None);
    }
    if n > MAX_DECOMPOSITION_SUPPORT {
        return Err(Error::Invalid(format!(
            "{n} distinct roots is too many to search for a decomposition"
        )));
    }
    // the first root always lands on the left, so each bipartition is seen once
    for mask in 0..(1u32 << (n - 1)) - 1 {
        let left_set = |r: FieldElem| {
            let k = roots.iter().position(|&x| x == r).unwrap();
            k == 0 || (mask >> (k - 1)) & 1 == 1
        };
        let left = a.restrict(left_set);
        let right = a.restrict(|r| !left_set(r));
        if is_bup(&left)? && is_bup(&right)? {
            return Ok(Some((left, right)));
        }
    }
    Ok(None)
}

fn refine(
    a: SplittingPoly,
    is_bup: &impl Fn(&SplittingPoly) -> Result<bool>,
    out: &mut Vec<SplittingPoly>,
) -> Result<()> {
    match split_support(&a, is_bup)? {
        None => out.push(a),
        Some((l, r)) => {
            refine(l, is_bup, out)?;
            refine(r, is_bup, out)?;
        }
    }
    Ok(())
}

/// Not b.u.p., trivially b.u.p. (a coprime product of at least two b.u.p.
/// parts, returned fully refined), or indecomposable.
pub fn classify_bup(a: &SplittingPoly) -> Result<BupClass> {
    classify_with(a, &is_bup)
}

/// [`classify_bup`] with a caller-supplied b.u.p. predicate (for example a
/// precomputed table).
pub fn classify_with(
    a: &SplittingPoly,
    is_bup: &impl Fn(&SplittingPoly) -> Result<bool>,
) -> Result<BupClass> {
    if !is_bup(a)? {
        return Ok(BupClass {
            kind: BupKind::NotBup,
            decomposition: None,
        });
    }
    // Two parts suffice: sigma** is multiplicative over coprime factors.
    if split_support(a, is_bup)?.is_none() {
        return Ok(BupClass {
            kind: BupKind::IndecomposableBup,
            decomposition: None,
        });
    }
    let mut parts = Vec::new();
    refine(a.clone(), is_bup, &mut parts)?;
    parts.sort();
    Ok(BupClass {
        kind: BupKind::TrivialBup,
        decomposition: Some(parts),
    })
}

/// `A(x + t)`: the exponent of `gamma` moves to `gamma - t`.
pub fn translate(a: &SplittingPoly, t: FieldElem) -> Result<SplittingPoly> {
    if t.ctx() != a.ctx() {
        return Err(Error::CtxMismatch {
            left: a.ctx().to_string(),
            right: t.ctx().to_string(),
        });
    }
    SplittingPoly::from_exponents(a.ctx(), a.exponents().iter().map(|(&g, &e)| (g - t, e)))
}

/// Exponents `r` with `r = 2` or `r = 2^n - 1`, `n >= 1`.
pub fn in_t_set(r: u32) -> bool {
    r == 2 || (r >= 1 && (r + 1).is_power_of_two())
}

/// Membership in the F_4 catalogue `{(x^2+x)^r, (x^2+x+1)^r : r = 2 or 2^n - 1}`.
pub fn is_sigma_member(a: &SplittingPoly) -> bool {
    let ctx = a.ctx();
    if ctx != crate::field::FieldCtx::f4() || a.omega() != 2 {
        return false;
    }
    let alpha = ctx.alpha().unwrap();
    let one = ctx.one();
    let pairs = [(ctx.zero(), one), (alpha, alpha + one)];
    pairs.iter().any(|&(u, v)| {
        let r = a.exponent(u);
        r > 0 && a.exponent(v) == r && in_t_set(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::syntax::parse_splitting;

    fn f4(s: &str) -> SplittingPoly {
        parse_splitting(FieldCtx::f4(), s).unwrap()
    }

    #[test]
    fn perfect_examples() {
        assert!(is_perfect(&f4("x*(x-1)")).unwrap());
        // third family at r = 0: h = l = 2, k = t = 1
        let a = f4("x^2*(x-1)*(x-a)^2*(x-1+a)");
        assert!(is_perfect(&a).unwrap());
        assert!(is_perfect_expanded(&a).unwrap());
        assert!(!is_perfect(&f4("x^3*(x-1)*(x-a)^3*(x-1+a)")).unwrap());
        assert!(!is_perfect(&f4("x^2")).unwrap());
        assert!(is_perfect(&f4("1")).is_err());
    }

    #[test]
    fn bup_examples() {
        assert!(is_bup(&f4("x^2*(x-1)^2")).unwrap());
        assert!(is_bup(&f4("x^4*(x-1)^4*(x-a)^3*(x-1+a)^5")).unwrap());
        assert!(!is_bup(&f4("x^2*(x-1)")).unwrap());
        assert!(!is_bup_expanded(&f4("x^2*(x-1)")).unwrap());
        // a non-split exponent short-circuits
        assert!(!is_bup(&f4("x^8*(x-1)^8")).unwrap());
    }

    #[test]
    fn classify_examples() {
        let c = classify_bup(&f4("x^2*(x-1)^2*(x-a)^2*(x-1+a)^2")).unwrap();
        assert_eq!(c.kind, BupKind::TrivialBup);
        assert_eq!(
            c.decomposition.unwrap(),
            vec![f4("x^2*(x-1)^2"), f4("(x-a)^2*(x-1+a)^2")]
        );
        let c = classify_bup(&f4("x^6*(x-1)^6*(x-a)^4*(x-1+a)^4")).unwrap();
        assert_eq!(c.kind, BupKind::IndecomposableBup);
        assert_eq!(c.decomposition, None);
        let c = classify_bup(&f4("x*(x-1)^2")).unwrap();
        assert_eq!(c.kind, BupKind::NotBup);
    }

    #[test]
    fn refinement_is_maximal() {
        let a = f4("x*(x-1)*(x-a)^3*(x-1+a)^3");
        let c = classify_bup(&a).unwrap();
        let parts = c.decomposition.unwrap();
        assert_eq!(parts.len(), 2);
        let mut prod = SplittingPoly::new(FieldCtx::f4());
        for p in &parts {
            assert!(is_bup(p).unwrap());
            assert!(prod.is_coprime_to(p));
            prod = prod.product(p).unwrap();
        }
        assert_eq!(prod, a);
    }

    #[test]
    fn translate_examples() {
        let ctx = FieldCtx::f4();
        let a = f4("x^2*(x-1)^2");
        assert_eq!(translate(&a, ctx.one()).unwrap(), a);
        assert_eq!(translate(&a, ctx.zero()).unwrap(), a);
        let b = f4("x^4*(x-1)^3");
        assert_eq!(
            translate(&b, ctx.alpha().unwrap()).unwrap(),
            f4("(x-a)^4*(x-1+a)^3")
        );
        let f9 = FieldCtx::quadratic(3).unwrap();
        assert!(translate(&a, f9.one()).is_err());
    }

    #[test]
    fn sigma_catalogue() {
        assert!(is_sigma_member(&f4("x^2*(x-1)^2")));
        assert!(is_sigma_member(&f4("(x-a)^7*(x-1+a)^7")));
        assert!(!is_sigma_member(&f4("x^4*(x-1)^4")));
        assert!(!is_sigma_member(&f4("x*(x-a)")));
        assert!(in_t_set(1) && in_t_set(2) && in_t_set(3) && in_t_set(15));
        assert!(!in_t_set(0) && !in_t_set(4) && !in_t_set(5));
    }
}
