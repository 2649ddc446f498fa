//! Dense univariate polynomials over a [`FieldCtx`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

/// Coefficients lowest degree first, never with a trailing zero. The zero
/// polynomial has no coefficients and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElem>,
}

fn same_ctx(a: FieldCtx, b: FieldCtx) -> Result<()> {
    if a != b {
        return Err(Error::CtxMismatch {
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    Ok(())
}

impl Poly {
    pub fn from_coeffs(ctx: FieldCtx, coeffs: Vec<FieldElem>) -> Result<Self> {
        for c in &coeffs {
            same_ctx(ctx, c.ctx())?;
        }
        let mut p = Poly { ctx, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(ctx: FieldCtx) -> Self {
        Poly {
            ctx,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::constant(ctx.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        let mut p = Poly {
            ctx: c.ctx(),
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    pub fn x(ctx: FieldCtx) -> Self {
        Self::monomial(ctx.one(), 1)
    }

    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c;
        let mut p = Poly { ctx, coeffs };
        p.trim();
        p
    }

    /// `x - root`
    pub fn linear(root: FieldElem) -> Self {
        Poly {
            ctx: root.ctx(),
            coeffs: vec![-root, root.ctx().one()],
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> FieldElem {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| self.ctx.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(inv)
            }
        }
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let mut p = Poly {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        };
        p.trim();
        p
    }

    pub fn eval(&self, at: FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ctx.zero(), |acc, &c| acc * at + c)
    }

    pub fn try_add(&self, rhs: &Poly) -> Result<Poly> {
        same_ctx(self.ctx, rhs.ctx)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        let mut p = Poly {
            ctx: self.ctx,
            coeffs,
        };
        p.trim();
        Ok(p)
    }

    pub fn try_sub(&self, rhs: &Poly) -> Result<Poly> {
        same_ctx(self.ctx, rhs.ctx)?;
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Poly) -> Result<Poly> {
        same_ctx(self.ctx, rhs.ctx)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(self.ctx));
        }
        let mut coeffs = vec![self.ctx.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        let mut p = Poly {
            ctx: self.ctx,
            coeffs,
        };
        p.trim();
        Ok(p)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        same_ctx(self.ctx, divisor.ctx)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.ctx), self.clone()));
        }
        let mut quot = vec![self.ctx.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * lc_inv;
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (t, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + t] = rem[k + t] - c * d;
            }
        }
        rem.truncate(dd);
        let mut q = Poly {
            ctx: self.ctx,
            coeffs: quot,
        };
        let mut r = Poly {
            ctx: self.ctx,
            coeffs: rem,
        };
        q.trim();
        r.trim();
        Ok((q, r))
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Monic gcd; `gcd(0, 0)` is rejected.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        same_ctx(a.ctx, b.ctx)?;
        if a.is_zero() && b.is_zero() {
            return Err(Error::Invalid("gcd(0, 0) is undefined".into()));
        }
        let (mut u, mut v) = (a.clone(), b.clone());
        while !v.is_zero() {
            let r = u.div_rem(&v)?.1;
            u = v;
            v = r;
        }
        Ok(u.monic())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn rem(&self, modulus: &Poly) -> Poly {
        self.div_rem(modulus).expect("nonzero modulus").1
    }

    /// `x^(q^times) mod self`
    fn frobenius_x(&self, times: usize) -> Poly {
        let q = self.ctx.order();
        let mut acc = Poly::x(self.ctx).rem(self);
        for _ in 0..times {
            let mut base = acc.clone();
            let mut e = q;
            let mut out = Poly::one(self.ctx);
            while e > 0 {
                if e & 1 == 1 {
                    out = (&out * &base).rem(self);
                }
                base = (&base * &base).rem(self);
                e >>= 1;
            }
            acc = out;
        }
        acc
    }

    /// Rabin's irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = self.monic();
        let x = Poly::x(self.ctx);
        if !(&f.frobenius_x(d) - &x).rem(&f).is_zero() {
            return false;
        }
        let mut n = d;
        let mut r = 2;
        while n > 1 {
            if n % r == 0 {
                while n % r == 0 {
                    n /= r;
                }
                let h = &f.frobenius_x(d / r) - &x;
                if !Poly::gcd(&h, &f).expect("f is nonzero").is_one() {
                    return false;
                }
            }
            r += 1;
        }
        true
    }

    /// Divides by `x - root` assuming it divides exactly (synthetic division).
    fn div_linear(&self, root: FieldElem) -> Option<Poly> {
        let n = self.coeffs.len();
        if n < 2 {
            return None;
        }
        let mut quot = vec![self.ctx.zero(); n - 1];
        let mut carry = self.coeffs[n - 1];
        for k in (0..n - 1).rev() {
            quot[k] = carry;
            carry = self.coeffs[k] + carry * root;
        }
        carry.is_zero().then_some(Poly {
            ctx: self.ctx,
            coeffs: quot,
        })
    }

    /// Roots in the base field with multiplicities, plus the root-free cofactor.
    pub fn split_roots(&self) -> Result<(BTreeMap<FieldElem, u32>, Poly)> {
        if self.is_zero() {
            return Err(Error::Invalid("the zero polynomial has every root".into()));
        }
        let mut rest = self.clone();
        let mut roots = BTreeMap::new();
        for g in self.ctx.enumerate() {
            while let Some(q) = rest.div_linear(g) {
                rest = q;
                *roots.entry(g).or_insert(0) += 1;
            }
        }
        Ok((roots, rest))
    }

    pub fn roots(&self) -> Result<BTreeMap<FieldElem, u32>> {
        Ok(self.split_roots()?.0)
    }

    /// True iff the polynomial is a product of linear factors over its field.
    pub fn splits(&self) -> Result<bool> {
        let (roots, _) = self.split_roots()?;
        let total: u32 = roots.values().sum();
        Ok(total as usize == self.degree().unwrap())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs)
            .expect("polynomial addition across fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs)
            .expect("polynomial subtraction across fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs)
            .expect("polynomial multiplication across fields")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Dense syntax, highest degree first: `x^2+(1+a)*x+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = c.to_string();
            let simple = !cs.contains(['+', '*']);
            match k {
                0 => write!(f, "{cs}")?,
                _ => {
                    if !c.is_one() {
                        if simple {
                            write!(f, "{cs}*")?;
                        } else {
                            write!(f, "({cs})*")?;
                        }
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
