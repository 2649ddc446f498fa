//! Exhaustive searches over exponent tuples.
//!
//! Over F_4 a tuple `(a, b, c, d)` stands for
//! `x^a (x+1)^b (x+a)^c (x+a+1)^d`, i.e. the roots `0, 1, a, 1+a` in that
//! order (this is not the field enumeration order).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bup::{classify_bup, is_bup, is_bup_expanded, BupKind};
use crate::divfun::{brute_sigma_star2, SplittingPoly};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::omega::{omega_sets, sigma_roots, sigma_star2_roots};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_F4_BOUND: u32 = 23;

pub type Tuple = [u32; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    /// Indecomposable hits with at least three roots (two-root hits are the
    /// `Sigma` building blocks).
    IbupOnly,
    /// `a` even: the normalization where `x` carries an even exponent.
    NotAllOdd,
    /// At least one exponent even.
    AnyEven,
    AllOdd,
}

impl Filter {
    pub fn parse_list(s: &str) -> Result<Vec<Filter>> {
        let mut out = BTreeSet::new();
        let mut offset = 0;
        for item in s.split(',') {
            match item.trim() {
                "all" | "" => {}
                "ibup-only" => {
                    out.insert(Filter::IbupOnly);
                }
                "not-all-odd" => {
                    out.insert(Filter::NotAllOdd);
                }
                "any-even" => {
                    out.insert(Filter::AnyEven);
                }
                "all-odd" => {
                    out.insert(Filter::AllOdd);
                }
                other => {
                    return Err(Error::parse(
                        offset,
                        format!(
                            "unknown filter {other:?} (expected all, ibup-only, not-all-odd, any-even, all-odd)"
                        ),
                    ))
                }
            }
            offset += item.len() + 1;
        }
        Ok(out.into_iter().collect())
    }

    pub fn label(self) -> &'static str {
        match self {
            Filter::IbupOnly => "ibup-only",
            Filter::NotAllOdd => "not-all-odd",
            Filter::AnyEven => "any-even",
            Filter::AllOdd => "all-odd",
        }
    }

    fn keeps_exps(self, t: &Tuple) -> bool {
        match self {
            Filter::IbupOnly => true,
            Filter::NotAllOdd => t[0].is_multiple_of(2),
            Filter::AnyEven => t.iter().any(|e| e % 2 == 0),
            Filter::AllOdd => t.iter().all(|e| e % 2 == 1),
        }
    }
}

/// Roots of the tuple positions over F_4.
pub fn f4_roots() -> [FieldElem; 4] {
    let ctx = FieldCtx::f4();
    let a = ctx.alpha().unwrap();
    [ctx.zero(), ctx.one(), a, a + ctx.one()]
}

pub fn tuple_to_poly(t: &Tuple) -> SplittingPoly {
    let roots = f4_roots();
    SplittingPoly::from_exponents(FieldCtx::f4(), roots.iter().copied().zip(t.iter().copied()))
        .expect("F_4 roots")
}

pub fn poly_to_tuple(a: &SplittingPoly) -> Option<Tuple> {
    if a.ctx() != FieldCtx::f4() {
        return None;
    }
    let roots = f4_roots();
    Some(std::array::from_fn(|k| a.exponent(roots[k])))
}

fn position(r: FieldElem) -> usize {
    f4_roots().iter().position(|&x| x == r).unwrap()
}

/// Image of a tuple under `x -> x + t`.
pub fn translate_tuple(t: &Tuple, shift: FieldElem) -> Tuple {
    let roots = f4_roots();
    let mut out = [0; 4];
    for k in 0..4 {
        out[position(roots[k] - shift)] = t[k];
    }
    out
}

/// Translation orbit of a tuple, sorted and deduplicated.
pub fn translation_orbit(t: &Tuple) -> Vec<Tuple> {
    let set: BTreeSet<Tuple> = f4_roots().iter().map(|&s| translate_tuple(t, s)).collect();
    set.into_iter().collect()
}

/// Per exponent and tuple position, the shifted root-multiplicity vector of
/// `sigma**` (or `sigma`) of that factor; `None` where it does not split.
struct ProfileTable {
    rows: Vec<[Option<Tuple>; 4]>,
}

impl ProfileTable {
    fn build(bound: u32, image: impl Fn(FieldElem, u32) -> Option<SplittingPoly>) -> Self {
        let roots = f4_roots();
        let rows = (0..=bound)
            .map(|e| {
                std::array::from_fn(|k| image(roots[k], e).map(|s| poly_to_tuple(&s).unwrap()))
            })
            .collect();
        ProfileTable { rows }
    }

    fn star2(bound: u32) -> Self {
        Self::build(bound, |g, e| sigma_star2_roots(FieldCtx::f4(), g, e).ok())
    }

    fn sigma(bound: u32) -> Self {
        Self::build(bound, |g, e| sigma_roots(FieldCtx::f4(), g, e))
    }

    fn is_fixed(&self, t: &Tuple) -> bool {
        let mut sum = [0u32; 4];
        for (k, &e) in t.iter().enumerate() {
            let Some(v) = self.rows[e as usize][k] else {
                return false;
            };
            for (acc, x) in sum.iter_mut().zip(v) {
                *acc += x;
            }
        }
        sum == *t
    }
}

fn scan(table: &ProfileTable, bound: u32) -> Vec<Tuple> {
    let mut hits: Vec<Tuple> = (0..=bound)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in 0..=bound {
                for c in 0..=bound {
                    for d in 0..=bound {
                        let t = [a, b, c, d];
                        if t != [0; 4] && table.is_fixed(&t) {
                            local.push(t);
                        }
                    }
                }
            }
            local
        })
        .collect();
    hits.sort_unstable();
    hits
}

fn run_with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Invalid("--jobs must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::Invalid(e.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub exps: Tuple,
    pub class: BupKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub representative: Tuple,
    pub members: Vec<Tuple>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub schema: u32,
    pub field: String,
    pub bounds: Bounds,
    pub filters: Vec<Filter>,
    pub hits: Vec<Hit>,
    pub counts: BTreeMap<String, usize>,
    /// Hits grouped under `x -> x + t`; members outside the filter are listed
    /// too.
    pub orbits: Vec<Orbit>,
    pub elapsed_ms: u128,
}

impl SearchReport {
    pub fn tuples(&self) -> Vec<Tuple> {
        self.hits.iter().map(|h| h.exps).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// Rows `a`..`d`, one column per hit.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "field {} bound {} filters [{}] hits {}",
            self.field,
            self.bounds.max_exponent,
            self.filters
                .iter()
                .map(|f| f.label())
                .collect::<Vec<_>>()
                .join(","),
            self.hits.len()
        );
        if self.hits.is_empty() {
            return out;
        }
        let width = self
            .hits
            .iter()
            .flat_map(|h| h.exps)
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        for (row, name) in ["a", "b", "c", "d"].iter().enumerate() {
            let cells: Vec<String> = self
                .hits
                .iter()
                .map(|h| format!("{:>width$}", h.exps[row]))
                .collect();
            let _ = writeln!(out, "{name}|{}|", cells.join("|"));
        }
        let classes: Vec<&str> = self
            .hits
            .iter()
            .map(|h| match h.class {
                BupKind::TrivialBup => "T",
                BupKind::IndecomposableBup => "I",
                BupKind::NotBup => "-",
            })
            .collect();
        let _ = writeln!(
            out,
            " |{}|",
            classes
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("|")
        );
        for (k, v) in &self.counts {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

/// All b.u.p. `x^a (x+1)^b (x+a)^c (x+a+1)^d` over F_4 with exponents in
/// `[0, bound]`, classified and filtered.
pub fn search_f4(bound: u32, filters: &[Filter], jobs: Option<usize>) -> Result<SearchReport> {
    if bound < 1 {
        return Err(Error::Invalid("bound must be at least 1".into()));
    }
    let start = Instant::now();
    let raw = run_with_jobs(jobs, || scan(&ProfileTable::star2(bound), bound))?;

    let mut hits = Vec::new();
    for t in &raw {
        if !filters.iter().all(|f| f.keeps_exps(t)) {
            continue;
        }
        let a = tuple_to_poly(t);
        let class = classify_bup(&a)?;
        if filters.contains(&Filter::IbupOnly)
            && (class.kind != BupKind::IndecomposableBup || a.omega() < 3)
        {
            continue;
        }
        hits.push(Hit {
            exps: *t,
            class: class.kind,
            decomposition: class
                .decomposition
                .map(|parts| parts.iter().map(|p| p.to_string()).collect()),
        });
    }

    let mut counts = BTreeMap::new();
    counts.insert("total".to_string(), hits.len());
    counts.insert("raw-bup".to_string(), raw.len());
    for h in &hits {
        *counts.entry(h.class.label().to_string()).or_insert(0) += 1;
    }

    let mut orbits: BTreeMap<Tuple, Vec<Tuple>> = BTreeMap::new();
    for h in &hits {
        let members = translation_orbit(&h.exps);
        orbits.entry(members[0]).or_insert(members);
    }

    Ok(SearchReport {
        schema: SCHEMA_VERSION,
        field: FieldCtx::f4().to_string(),
        bounds: Bounds {
            max_exponent: bound,
        },
        filters: filters.to_vec(),
        hits,
        counts,
        orbits: orbits
            .into_iter()
            .map(|(representative, members)| Orbit {
                representative,
                members,
            })
            .collect(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Tuples with exponents in `[0, bound]` whose polynomial is perfect over F_4.
pub fn search_f4_perfect(bound: u32, jobs: Option<usize>) -> Result<Vec<Tuple>> {
    run_with_jobs(jobs, || scan(&ProfileTable::sigma(bound), bound))
}

/// The three perfect families over F_4, read literally with `n, m, r >= 0`
/// and `(h, k, l, t) = (a, b, c, d)`, restricted to exponents `<= bound` and
/// excluding the constant.
pub fn perfect_families_f4(bound: u32) -> Vec<Tuple> {
    let mut set = BTreeSet::new();
    let mersenne: Vec<u32> = (0..32)
        .map(|n| (1u64 << n) - 1)
        .take_while(|&v| v <= bound as u64)
        .map(|v| v as u32)
        .collect();
    for &u in &mersenne {
        for &v in &mersenne {
            set.insert([u, u, v, v]);
        }
    }
    for n in 0..32u32 {
        for big_n in [1u64, 3] {
            let v = big_n * (1u64 << n) - 1;
            if v <= bound as u64 {
                set.insert([v as u32; 4]);
            }
        }
    }
    for r in 0..32u32 {
        let h = 3 * (1u64 << r) - 1;
        let k = 2 * (1u64 << r) - 1;
        if h <= bound as u64 {
            set.insert([h as u32, k as u32, h as u32, k as u32]);
        }
    }
    set.remove(&[0; 4]);
    set.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitBupRow {
    pub r: u32,
    pub bup: bool,
    pub in_omega: bool,
    /// `sigma**` of the expanded factors compared with the expansion.
    pub expanded_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitBupReport {
    pub schema: u32,
    pub field: String,
    pub r_max: u32,
    pub omega: Vec<u64>,
    pub bup_r: Vec<u32>,
    pub rows: Vec<SplitBupRow>,
    pub counterexamples: Vec<u32>,
}

/// `(x^q - x)^(2r)` over F_{p^2} for `r` in `[1, r_max]`: b.u.p. by root
/// multiplicities versus `r` in Omega, plus an expanded-polynomial check.
pub fn verify_splitbup(p: u32, r_max: u32) -> Result<SplitBupReport> {
    let ctx = FieldCtx::quadratic(p)?;
    let omega = omega_sets(p as u64)?;
    let mut rows = Vec::new();
    for r in 1..=r_max {
        let a = SplittingPoly::full_power(ctx, 2 * r);
        let bup = is_bup(&a)?;
        rows.push(SplitBupRow {
            r,
            bup,
            in_omega: omega.contains(r as u64),
            expanded_agrees: is_bup_expanded(&a)? == bup,
        });
    }
    Ok(SplitBupReport {
        schema: SCHEMA_VERSION,
        field: ctx.to_string(),
        r_max,
        omega: omega.union(),
        bup_r: rows.iter().filter(|r| r.bup).map(|r| r.r).collect(),
        counterexamples: rows
            .iter()
            .filter(|r| r.bup != r.in_omega || !r.expanded_agrees)
            .map(|r| r.r)
            .collect(),
        rows,
    })
}

/// Which of the four necessary conditions for `(x^p - x)^r` to be b.u.p.
/// over F_p hold, as labels `i`..`iv`.
pub fn fp_bup_conditions(p: u64, r: u64) -> Vec<&'static str> {
    let mut out = Vec::new();
    let pm1 = p - 1;
    let divs = crate::omega::divisors(pm1);
    // i: r = N p^n - 1 odd with N | p-1
    if r % 2 == 1 {
        let hit = divs.iter().any(|&n| {
            let mut v = n;
            while v <= r + 1 {
                if v == r + 1 {
                    return true;
                }
                v *= p;
            }
            false
        });
        if hit {
            out.push("i");
        }
    }
    if r == 2 * pm1 {
        out.push("ii");
    }
    if r.is_multiple_of(2) && r > 0 {
        let n = r / 2;
        if n.is_multiple_of(2) && pm1.is_multiple_of(n * (n + 1)) {
            out.push("iii");
        }
        if p % 4 == 1 && n % 2 == 1 && pm1.is_multiple_of(2 * n * (n + 1)) {
            out.push("iv");
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpBupRow {
    pub r: u32,
    pub bup: bool,
    pub conditions: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FpBupReport {
    pub schema: u32,
    pub field: String,
    pub r_max: u32,
    pub bup_r: Vec<u32>,
    pub condition_r: Vec<u32>,
    pub rows: Vec<FpBupRow>,
    /// b.u.p. exponents meeting none of the conditions.
    pub counterexamples: Vec<u32>,
}

/// `(x^p - x)^r` over the prime field F_p for `r` in `[1, r_max]`, decided
/// by brute-force bi-unitary divisor enumeration.
pub fn verify_beard_fp(p: u32, r_max: u32, cap: usize) -> Result<FpBupReport> {
    let ctx = FieldCtx::prime(p)?;
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    let rows: Vec<FpBupRow> = (1..=r_max)
        .into_par_iter()
        .map(|r| {
            let a = SplittingPoly::full_power(ctx, r);
            let image = brute_sigma_star2(&a.to_factored(), cap)?;
            Ok(FpBupRow {
                r,
                bup: image == a.expand(),
                conditions: fp_bup_conditions(p as u64, r as u64),
            })
        })
        .collect::<Result<_>>()?;
    Ok(FpBupReport {
        schema: SCHEMA_VERSION,
        field: ctx.to_string(),
        r_max,
        bup_r: rows.iter().filter(|r| r.bup).map(|r| r.r).collect(),
        condition_r: rows
            .iter()
            .filter(|r| !r.conditions.is_empty())
            .map(|r| r.r)
            .collect(),
        counterexamples: rows
            .iter()
            .filter(|r| r.bup && r.conditions.is_empty())
            .map(|r| r.r)
            .collect(),
        rows,
    })
}
