//! Command-line front end. [`dispatch`] does all the work and returns the
//! would-be process output so it can be tested in-process.

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bup::{classify_bup, is_perfect, is_sigma_member, BupKind};
use crate::divfun::{
    brute_sigma_star2, sigma_map, DivisorSum, FactoredPoly, SplittingPoly, DEFAULT_ORACLE_CAP,
};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::omega::omega_sets;
use crate::poly::Poly;
use crate::search::{
    perfect_families_f4, search_f4, search_f4_perfect, verify_beard_fp, verify_splitbup, Filter,
    DEFAULT_F4_BOUND, SCHEMA_VERSION,
};
use crate::syntax::{parse_field, parse_poly, parse_splitting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// sum of all monic divisors
    S,
    /// unitary divisors
    S1,
    /// bi-unitary divisors
    S2,
}

#[derive(Debug, Parser)]
#[command(
    name = "bupoly",
    version,
    about = "Divisor sums and bi-unitary perfect polynomials over F_p and F_p^2"
)]
pub struct Cli {
    /// Output format (default: json for `omega`, text otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// sigma, sigma* or sigma** of a polynomial
    Sigma {
        #[arg(long, value_enum, default_value = "s")]
        which: Which,
        /// `p` or `p,ext`
        #[arg(long, default_value = "2,ext")]
        field: String,
        /// factored `(x-<elem>)^e*...` or a dense expression
        poly: String,
    },
    /// The sets Omega_1..Omega_4 for an odd prime
    Omega {
        #[arg(long)]
        p: u64,
    },
    /// Classify a splitting polynomial
    Check {
        #[arg(long, default_value = "2,ext")]
        field: String,
        poly: String,
    },
    /// Exhaustive b.u.p. search over F_4
    SearchF4 {
        #[arg(long, default_value_t = DEFAULT_F4_BOUND)]
        bound: u32,
        /// comma list of all, ibup-only, not-all-odd, any-even, all-odd
        #[arg(long, default_value = "all")]
        filter: String,
        #[arg(long)]
        jobs: Option<usize>,
        /// search perfect (sigma-fixed) tuples instead
        #[arg(long)]
        perfect: bool,
    },
    /// (x^q - x)^(2r) over F_p^2 versus membership in Omega
    VerifySplitbup {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        rmax: u32,
    },
    /// (x^p - x)^r over F_p by brute force versus the four necessary conditions
    VerifyBeard {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        rmax: u32,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Brute-force sigma** by bi-unitary divisor enumeration
    Oracle {
        #[arg(long, default_value = "2,ext")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
        poly: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::DegreeCap { .. } => 2,
        _ => 1,
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn dispatch<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("bupoly".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match run(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

/// Splitting syntax first, then a dense expression factored into linear
/// factors and at most one irreducible cofactor.
fn parse_factored(ctx: FieldCtx, s: &str) -> Result<FactoredPoly> {
    match parse_splitting(ctx, s) {
        Ok(sp) => Ok(sp.to_factored()),
        Err(first) => {
            let dense = parse_poly(ctx, s).map_err(|_| first)?;
            if dense.is_zero() {
                return Err(Error::Invalid("the zero polynomial has no divisors".into()));
            }
            FactoredPoly::factor(&dense.monic())
        }
    }
}

/// Roots in factored syntax, then the root-free part in parentheses.
fn show_factored(p: &Poly) -> Result<String> {
    let (roots, rest) = p.split_roots()?;
    let split = SplittingPoly::from_exponents(p.ctx(), roots)?;
    if rest.degree().unwrap_or(0) == 0 {
        return Ok(split.to_string());
    }
    let rest = format!("({})", rest.monic());
    Ok(if split.is_one() {
        rest
    } else {
        format!("{split}*{rest}")
    })
}

fn run(cli: &Cli) -> Result<String> {
    let json = |default: Format| cli.format.unwrap_or(default) == Format::Json;
    match &cli.command {
        Command::Sigma { which, field, poly } => {
            let ctx = parse_field(field)?;
            let input = parse_factored(ctx, poly)?;
            let kind = match which {
                Which::S => DivisorSum::Sigma,
                Which::S1 => DivisorSum::Unitary,
                Which::S2 => DivisorSum::BiUnitary,
            };
            let image = sigma_map(&input, kind);
            let factored = show_factored(&image)?;
            if json(Format::Text) {
                Ok(pretty(&json!({
                    "schema": SCHEMA_VERSION,
                    "field": ctx.to_string(),
                    "which": format!("{which:?}").to_lowercase(),
                    "input": input.expand().to_string(),
                    "result": image.to_string(),
                    "factored": factored,
                })))
            } else {
                Ok(format!("{factored}\n"))
            }
        }
        Command::Omega { p } => {
            let sets = omega_sets(*p)?;
            if json(Format::Json) {
                let mut v = serde_json::to_value(&sets).expect("omega sets");
                v["schema"] = json!(SCHEMA_VERSION);
                v["omega"] = json!(sets.union());
                Ok(pretty(&v))
            } else {
                let show = |v: &[u64]| {
                    v.iter()
                        .map(|n| n.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                Ok(format!(
                    "p: {}\nomega1: {}\nomega2: {}\nomega3: {}\nomega4: {}\nomega: {}\n",
                    sets.p,
                    show(&sets.omega1),
                    show(&sets.omega2),
                    show(&sets.omega3),
                    show(&sets.omega4),
                    show(&sets.union())
                ))
            }
        }
        Command::Check { field, poly } => {
            let ctx = parse_field(field)?;
            let a = parse_splitting(ctx, poly)?;
            let class = classify_bup(&a)?;
            let bup = class.kind != BupKind::NotBup;
            let label = if bup && is_sigma_member(&a) {
                "member-of-Sigma"
            } else {
                class.kind.label()
            };
            let perfect = is_perfect(&a)?;
            let parts: Option<Vec<String>> = class
                .decomposition
                .as_ref()
                .map(|ps| ps.iter().map(|p| p.to_string()).collect());
            if json(Format::Text) {
                let mut v = json!({
                    "schema": SCHEMA_VERSION,
                    "field": ctx.to_string(),
                    "poly": a.to_string(),
                    "bup": bup,
                    "perfect": perfect,
                    "class": label,
                });
                if let Some(parts) = parts {
                    v["decomposition"] = json!(parts);
                }
                Ok(pretty(&v))
            } else {
                let mut out =
                    format!("poly: {a}\nbup: {bup}\nclass: {label}\nperfect: {perfect}\n");
                if let Some(parts) = parts {
                    out.push_str(&format!("decomposition: {}\n", parts.join(" | ")));
                }
                Ok(out)
            }
        }
        Command::SearchF4 {
            bound,
            filter,
            jobs,
            perfect,
        } => {
            if *perfect {
                let hits = search_f4_perfect(*bound, *jobs)?;
                let families = perfect_families_f4(*bound);
                let missing: Vec<_> = families.iter().filter(|t| !hits.contains(t)).collect();
                let extra: Vec<_> = hits.iter().filter(|t| !families.contains(t)).collect();
                if json(Format::Text) {
                    return Ok(pretty(&json!({
                        "schema": SCHEMA_VERSION,
                        "field": FieldCtx::f4().to_string(),
                        "bounds": {"max_exponent": bound},
                        "perfect": hits,
                        "families": families,
                        "missing": missing,
                        "extra": extra,
                    })));
                }
                let row = |ts: &[&[u32; 4]]| {
                    ts.iter()
                        .map(|t| format!("({},{},{},{})", t[0], t[1], t[2], t[3]))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let all: Vec<&[u32; 4]> = hits.iter().collect();
                return Ok(format!(
                    "perfect: {}\ncount: {}\nfamilies: {}\nnot found: {}\nnot in families: {}\n",
                    row(&all),
                    hits.len(),
                    families.len(),
                    row(&missing),
                    row(&extra)
                ));
            }
            let filters = Filter::parse_list(filter)?;
            let report = search_f4(*bound, &filters, *jobs)?;
            if json(Format::Text) {
                let mut s = report.to_json();
                s.push('\n');
                Ok(s)
            } else {
                Ok(report.to_table())
            }
        }
        Command::VerifySplitbup { p, rmax } => {
            let rep = verify_splitbup(*p, *rmax)?;
            if json(Format::Text) {
                Ok(pretty(&serde_json::to_value(&rep).expect("report")))
            } else {
                Ok(format!(
                    "field: {}\nomega: {:?}\nbup r: {:?}\ncounterexamples: {:?}\n",
                    rep.field, rep.omega, rep.bup_r, rep.counterexamples
                ))
            }
        }
        Command::VerifyBeard { p, rmax, cap } => {
            let rep = verify_beard_fp(*p, *rmax, *cap)?;
            if json(Format::Text) {
                Ok(pretty(&serde_json::to_value(&rep).expect("report")))
            } else {
                Ok(format!(
                    "field: {}\nbup r: {:?}\nconditions hold for r: {:?}\ncounterexamples: {:?}\n",
                    rep.field, rep.bup_r, rep.condition_r, rep.counterexamples
                ))
            }
        }
        Command::Oracle { field, cap, poly } => {
            let ctx = parse_field(field)?;
            let input = parse_factored(ctx, poly)?;
            let image = brute_sigma_star2(&input, *cap)?;
            let factored = show_factored(&image)?;
            if json(Format::Text) {
                Ok(pretty(&json!({
                    "schema": SCHEMA_VERSION,
                    "field": ctx.to_string(),
                    "input": input.expand().to_string(),
                    "result": image.to_string(),
                    "factored": factored,
                    "cap": cap,
                })))
            } else {
                Ok(format!("{factored}\n"))
            }
        }
    }
}
