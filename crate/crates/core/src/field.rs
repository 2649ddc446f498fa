//! The prime fields F_p and the quadratic extensions F_{p^2}.
//!
//! An element of F_{p^2} is stored as `i + j*a` with `i, j` residues mod `p`,
//! where `a` is a fixed generator of the extension:
//!
//! * for odd `p`, `a^2 = c` with `c` the smallest quadratic non-residue mod `p`;
//! * for `p = 2`, `a^2 = a + 1` (so F_4 = {0, 1, a, 1+a}).
//!
//! Prime-field elements always carry `j = 0`. Every element remembers the
//! context it was built in and mixing contexts panics in the arithmetic
//! operators; the fallible polynomial API reports it as [`Error::CtxMismatch`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext {
    Prime,
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldCtx {
    p: u32,
    ext: Ext,
    /// Value of `a^2` for odd `p` (unused for `p = 2` and for prime fields).
    c: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds F_p or F_{p^2}. Deterministic: the non-residue is always the
    /// smallest one in `2..p`.
    pub fn new(p: u32, ext: Ext) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p > 1 << 20 {
            return Err(Error::Invalid(format!("prime {p} is too large")));
        }
        let c = match ext {
            Ext::Quadratic if p > 2 => smallest_non_residue(p),
            _ => 0,
        };
        Ok(FieldCtx { p, ext, c })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, Ext::Prime)
    }

    pub fn quadratic(p: u32) -> Result<Self> {
        Self::new(p, Ext::Quadratic)
    }

    /// F_4 with `a^2 = a + 1`.
    pub fn f4() -> Self {
        FieldCtx {
            p: 2,
            ext: Ext::Quadratic,
            c: 0,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ext(&self) -> Ext {
        self.ext
    }

    pub fn is_quadratic(&self) -> bool {
        self.ext == Ext::Quadratic
    }

    /// The non-residue `c = a^2`, for odd-characteristic quadratic fields.
    pub fn non_residue(&self) -> Option<u32> {
        (self.is_quadratic() && self.p > 2).then_some(self.c)
    }

    pub fn order(&self) -> u64 {
        match self.ext {
            Ext::Prime => self.p as u64,
            Ext::Quadratic => (self.p as u64) * (self.p as u64),
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            i: 0,
            j: 0,
            ctx: *self,
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem {
            i: n.rem_euclid(self.p as i64) as u32,
            j: 0,
            ctx: *self,
        }
    }

    /// The extension generator `a`; `None` on a prime field.
    pub fn alpha(&self) -> Option<FieldElem> {
        self.is_quadratic().then_some(FieldElem {
            i: 0,
            j: 1,
            ctx: *self,
        })
    }

    pub fn elem(&self, i: u32, j: u32) -> Result<FieldElem> {
        if i >= self.p || j >= self.p {
            return Err(Error::Invalid(format!(
                "({i}, {j}) is not a pair of residues mod {}",
                self.p
            )));
        }
        if j != 0 && !self.is_quadratic() {
            return Err(Error::Invalid(format!(
                "{self} has no element with an a-part"
            )));
        }
        Ok(FieldElem { i, j, ctx: *self })
    }

    /// All elements, ordered lexicographically by `(i, j)`.
    pub fn enumerate(&self) -> Vec<FieldElem> {
        (0..self.order() as usize)
            .map(|k| self.from_index(k))
            .collect()
    }

    /// Position of `e` in [`FieldCtx::enumerate`].
    pub fn index_of(&self, e: FieldElem) -> usize {
        debug_assert_eq!(e.ctx, *self);
        match self.ext {
            Ext::Prime => e.i as usize,
            Ext::Quadratic => e.i as usize * self.p as usize + e.j as usize,
        }
    }

    pub fn from_index(&self, k: usize) -> FieldElem {
        let p = self.p as usize;
        match self.ext {
            Ext::Prime => FieldElem {
                i: k as u32,
                j: 0,
                ctx: *self,
            },
            Ext::Quadratic => FieldElem {
                i: (k / p) as u32,
                j: (k % p) as u32,
                ctx: *self,
            },
        }
    }

    /// Parses the element syntax `i`, `a`, `j*a`, `i+a` or `i+j*a`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse(0, "empty element"));
        }
        let (int_part, a_part) = match compact.find('a') {
            None => (compact.as_str(), None),
            Some(pos) => {
                if pos + 1 != compact.len() {
                    return Err(Error::parse(pos + 1, "trailing input after 'a'"));
                }
                let head = &compact[..pos];
                // head is "", "j*", "i+", or "i+j*"
                let (head, coef) = match head.strip_suffix('*') {
                    Some(h) => {
                        let start = h.rfind('+').map_or(0, |k| k + 1);
                        (&h[..start], Some(&h[start..]))
                    }
                    None => (head, None),
                };
                let int_part = if head.is_empty() {
                    ""
                } else {
                    head.strip_suffix('+')
                        .ok_or_else(|| Error::parse(0, format!("malformed element {s:?}")))?
                };
                (int_part, Some(coef.unwrap_or("1")))
            }
        };
        let residue = |txt: &str| -> Result<u32> {
            let v: u64 = txt
                .parse()
                .map_err(|_| Error::parse(0, format!("bad residue {txt:?} in {s:?}")))?;
            if v >= self.p as u64 {
                return Err(Error::parse(
                    0,
                    format!("{v} is not a residue mod {}", self.p),
                ));
            }
            Ok(v as u32)
        };
        let i = if int_part.is_empty() {
            if a_part.is_none() {
                return Err(Error::parse(0, "empty element"));
            }
            0
        } else {
            residue(int_part)?
        };
        let j = match a_part {
            None => 0,
            Some(t) => {
                if !self.is_quadratic() {
                    return Err(Error::parse(0, format!("'a' is undefined in {self}")));
                }
                let j = residue(t)?;
                if j == 0 {
                    return Err(Error::parse(0, "zero coefficient on 'a'"));
                }
                if int_part == "0" {
                    return Err(Error::parse(0, "non-canonical leading zero"));
                }
                j
            }
        };
        Ok(FieldElem { i, j, ctx: *self })
    }
}

fn smallest_non_residue(p: u32) -> u32 {
    let p64 = p as u64;
    let squares: Vec<bool> = {
        let mut sq = vec![false; p as usize];
        for z in 0..p64 {
            sq[(z * z % p64) as usize] = true;
        }
        sq
    };
    (2..p)
        .find(|&c| !squares[c as usize])
        .expect("an odd prime always has a non-residue")
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    i: u32,
    j: u32,
    ctx: FieldCtx,
}

impl FieldElem {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    /// Coordinates `(i, j)` of `i + j*a`.
    pub fn coords(&self) -> (u32, u32) {
        (self.i, self.j)
    }

    pub fn is_zero(&self) -> bool {
        self.i == 0 && self.j == 0
    }

    pub fn is_one(&self) -> bool {
        self.i == 1 && self.j == 0
    }

    pub fn pow(self, mut e: u64) -> FieldElem {
        let mut base = self;
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(self.ctx.order() - 2))
    }

    fn check(&self, other: &FieldElem) {
        assert_eq!(
            self.ctx, other.ctx,
            "mixing elements of {} and {}",
            self.ctx, other.ctx
        );
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        self.check(&rhs);
        let p = self.ctx.p;
        FieldElem {
            i: (self.i + rhs.i) % p,
            j: (self.j + rhs.j) % p,
            ctx: self.ctx,
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.ctx.p;
        FieldElem {
            i: (p - self.i) % p,
            j: (p - self.j) % p,
            ctx: self.ctx,
        }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self + (-rhs)
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        self.check(&rhs);
        let p = self.ctx.p as u64;
        let (a, b) = (self.i as u64, self.j as u64);
        let (c, d) = (rhs.i as u64, rhs.j as u64);
        let bd = b * d % p;
        let (i, j) = if p == 2 {
            // a^2 = a + 1
            ((a * c + bd) % p, (a * d + b * c + bd) % p)
        } else {
            ((a * c + bd * self.ctx.c as u64) % p, (a * d + b * c) % p)
        };
        FieldElem {
            i: i as u32,
            j: j as u32,
            ctx: self.ctx,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i, self.j) {
            (i, 0) => write!(f, "{i}"),
            (0, 1) => write!(f, "a"),
            (0, j) => write!(f, "{j}*a"),
            (i, 1) => write!(f, "{i}+a"),
            (i, j) => write!(f, "{i}+{j}*a"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f9() -> FieldCtx {
        FieldCtx::quadratic(3).unwrap()
    }

    #[test]
    fn build_field_choices() {
        let f4 = FieldCtx::quadratic(2).unwrap();
        assert_eq!(f4, FieldCtx::f4());
        let a = f4.alpha().unwrap();
        // a^2 + a + 1 = 0
        assert!((a * a + a + f4.one()).is_zero());

        assert_eq!(f9().non_residue(), Some(2));
        assert_eq!(FieldCtx::quadratic(5).unwrap().non_residue(), Some(2));
        assert_eq!(FieldCtx::quadratic(7).unwrap().non_residue(), Some(3));
        assert_eq!(FieldCtx::prime(3).unwrap().non_residue(), None);
    }

    #[test]
    fn rejects_non_primes() {
        for n in [0, 1, 4, 9, 15] {
            assert_eq!(FieldCtx::quadratic(n), Err(Error::NotPrime(n as u64)));
        }
    }

    #[test]
    fn inverses() {
        let f4 = FieldCtx::f4();
        assert_eq!(f4.one().inv().unwrap(), f4.one());
        let a = f4.alpha().unwrap();
        assert_eq!(a.inv().unwrap(), a + f4.one());
        let f9 = f9();
        let a = f9.alpha().unwrap();
        assert_eq!(a.inv().unwrap(), f9.elem(0, 2).unwrap());
        assert_eq!(f9.zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn enumeration_order() {
        let f2 = FieldCtx::prime(2).unwrap();
        let names: Vec<String> = f2.enumerate().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["0", "1"]);

        let names: Vec<String> = FieldCtx::f4()
            .enumerate()
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(names, ["0", "a", "1", "1+a"]);

        let names: Vec<String> = f9().enumerate().iter().map(|e| e.to_string()).collect();
        assert_eq!(&names[..5], ["0", "a", "2*a", "1", "1+a"]);
        assert_eq!(names.len(), 9);
        for (k, e) in f9().enumerate().into_iter().enumerate() {
            assert_eq!(f9().index_of(e), k);
        }
    }

    #[test]
    fn element_syntax() {
        let f9 = f9();
        for e in f9.enumerate() {
            assert_eq!(f9.parse_elem(&e.to_string()).unwrap(), e);
        }
        assert_eq!(f9.parse_elem("1 + 2*a").unwrap(), f9.elem(1, 2).unwrap());
        assert!(f9.parse_elem("3").is_err());
        assert!(f9.parse_elem("1+").is_err());
        assert!(f9.parse_elem("a+1").is_err());
        assert!(f9.parse_elem("0*a").is_err());
        assert!(FieldCtx::prime(5).unwrap().parse_elem("a").is_err());
    }

    #[test]
    fn chosen_c_is_a_non_residue() {
        for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 97] {
            let ctx = FieldCtx::quadratic(p).unwrap();
            let c = ctx.non_residue().unwrap() as u64;
            assert!((0..p as u64).all(|z| z * z % p as u64 != c));
        }
    }

    #[test]
    fn fermat_little_theorem() {
        for ctx in [
            FieldCtx::f4(),
            f9(),
            FieldCtx::quadratic(5).unwrap(),
            FieldCtx::quadratic(7).unwrap(),
            FieldCtx::prime(7).unwrap(),
        ] {
            for e in ctx.enumerate().into_iter().filter(|e| !e.is_zero()) {
                assert!(e.pow(ctx.order() - 1).is_one(), "{e} in {ctx}");
            }
        }
    }

    fn ctx_strategy() -> impl Strategy<Value = FieldCtx> {
        prop_oneof![Just(2u32), Just(3), Just(5), Just(7), Just(11)].prop_flat_map(|p| {
            prop_oneof![Just(Ext::Prime), Just(Ext::Quadratic)]
                .prop_map(move |ext| FieldCtx::new(p, ext).unwrap())
        })
    }

    fn triple() -> impl Strategy<Value = (FieldElem, FieldElem, FieldElem)> {
        ctx_strategy().prop_flat_map(|ctx| {
            let q = ctx.order() as usize;
            (0..q, 0..q, 0..q).prop_map(move |(x, y, z)| {
                (ctx.from_index(x), ctx.from_index(y), ctx.from_index(z))
            })
        })
    }

    proptest! {
        #[test]
        fn field_axioms((x, y, z) in triple()) {
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x - x, x.ctx().zero());
            if !x.is_zero() {
                prop_assert!((x * x.inv().unwrap()).is_one());
            }
        }
    }
}
