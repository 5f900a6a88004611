use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use lambda2::cache::{resolve_path, ResultCache};
use lambda2::classifier::{classify, search_thm11, thm11_hypotheses, Thm11Hypotheses};
use lambda2::error::{Error, Result};
use lambda2::field::{eps_image_mod8_auto, fundamental_unit, splits_at_2};
use lambda2::forms::{narrow_class_group, wide_class_group};
use lambda2::hilbert::{
    dyadic_symbol_by_search, hilbert_q1, hilbert_q_local_symbols, q1_local_symbols_off_dyadic, Q1Element, Q1Place,
};
use lambda2::redei::{generalized_redei_f1, r4_narrow_via_redei, redei_matrix, F2Matrix};
use lambda2::report::{emit, Format};
use lambda2::suites::run_suite;
use lambda2::symbols::{kronecker, quartic_mod_p, quartic_over_2, scholz_symbol};

#[derive(Parser)]
#[command(name = "lambda2", version, about = "Criteria for the 2-adic lambda invariant of real quadratic fields")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for sweeps and searches.
    #[arg(long, global = true, default_value_t = default_workers())]
    workers: usize,
    /// Result cache file (JSON lines); LAMBDA2_CACHE takes precedence.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a squarefree radicand.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
    },
    /// Enumerate prime pairs meeting every hypothesis of the (1, 9 mod 16) theorem.
    Search {
        #[arg(long)]
        bound: u64,
        /// Also write the pairs as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        bound: Option<u64>,
        /// Write the report as CSV instead of text or JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Residue symbols for a prime pair, or Hilbert symbols.
    Symbols(SymbolsArgs),
    /// Narrow or wide class group of a fundamental discriminant.
    Classgroup {
        #[arg(long)]
        disc: i64,
        #[arg(long, conflicts_with = "wide")]
        narrow: bool,
        #[arg(long)]
        wide: bool,
    },
    /// Fundamental unit, its norm, and its class mod 8 in Q_2 when 2 splits.
    Unit {
        #[arg(long)]
        d: i64,
    },
    /// Classical Redei matrix of D, or the generalized matrices of F_1 for (p, q).
    Redei {
        #[arg(long, required_unless_present = "f1")]
        d: Option<i64>,
        #[arg(long, num_args = 2, value_names = ["P", "Q"], conflicts_with = "d")]
        f1: Option<Vec<u64>>,
    },
}

#[derive(Args)]
struct SymbolsArgs {
    #[arg(long, required_unless_present = "hilbert", requires = "q")]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    /// Two rationals `a/b`, or with `--base q1` two elements `x,y` meaning `x + y*sqrt(2)`.
    #[arg(long, num_args = 2, value_names = ["R", "S"], conflicts_with = "p", allow_hyphen_values = true)]
    hilbert: Option<Vec<String>>,
    #[arg(long, default_value = "q", value_parser = ["q", "q1"])]
    base: String,
}

enum Failure {
    Usage(Error),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_value(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn sym(r: Result<i8>) -> Value {
    r.map(Value::from).unwrap_or(Value::Null)
}

fn matrix_json(m: &F2Matrix) -> Value {
    json!(m.entries)
}

fn run(cli: &Cli) -> std::result::Result<(), Failure> {
    let cache = match resolve_path(cli.cache.clone()) {
        Some(path) => Some(ResultCache::open(path)?),
        None => None,
    };
    let cached = |op: &str, input: String, f: &dyn Fn() -> Result<String>| -> Result<String> {
        match &cache {
            Some(c) => c.get_or_compute(op, &input, f),
            None => f(),
        }
    };
    match &cli.cmd {
        Cmd::Classify { d } => {
            let d = *d;
            let out = cached("classify", d.to_string(), &|| {
                serde_json::to_string(&classify(d)?).map_err(|e| Error::InvalidInput(e.to_string()))
            })?;
            if cli.json {
                let v: Value = serde_json::from_str(&out).map_err(|e| Error::Cache(e.to_string()))?;
                print_value(&v);
            } else {
                let v: lambda2::classifier::Verdict =
                    serde_json::from_str(&out).map_err(|e| Error::Cache(e.to_string()))?;
                println!("{v}");
                if let Some(t) = v.status.theorem() {
                    println!("  citation: {}", t.citation());
                }
            }
        }
        Cmd::Search { bound, csv } => {
            let pairs = search_thm11(*bound, cli.workers);
            if let Some(path) = csv {
                write_search_csv(path, &pairs)?;
            }
            if cli.json {
                print_value(&json!(pairs));
            } else {
                for h in &pairs {
                    println!("{} {} {}", h.p, h.q, h.p * h.q);
                }
                println!("{} pairs below {bound}", pairs.len());
            }
        }
        Cmd::Verify { suite, bound, csv } => {
            let report = run_suite(suite, *bound, cli.workers)?;
            let fmt = if *csv {
                Format::Csv
            } else if cli.json {
                Format::Json
            } else {
                Format::Text
            };
            std::io::stdout().write_all(&emit(&report, fmt)?).map_err(|e| Error::InvalidInput(e.to_string()))?;
            if !report.passed() {
                return Err(Failure::Suite);
            }
        }
        Cmd::Symbols(args) => symbols(args)?,
        Cmd::Classgroup { disc, narrow: _, wide } => {
            let disc = *disc;
            let out = cached("classgroup", format!("{disc}:{}", if *wide { "wide" } else { "narrow" }), &|| {
                let g = narrow_class_group(disc)?;
                let v = if *wide {
                    let w = wide_class_group(disc)?;
                    json!({"discriminant": disc, "kind": "wide", "class_number": g.wide_class_number(),
                           "two_part": w.divisors, "r2": w.two_rank(), "r4": w.four_rank(), "r8": w.eight_rank()})
                } else {
                    json!({"discriminant": disc, "kind": "narrow", "class_number": g.class_number(),
                           "structure": g.elementary_divisors, "two_part": g.two_part.divisors,
                           "r2": g.two_part.two_rank(), "r4": g.two_part.four_rank(), "r8": g.two_part.eight_rank(),
                           "forms": g.representatives.iter().map(|f| [f.a, f.b, f.c]).collect::<Vec<_>>()})
                };
                Ok(v.to_string())
            })?;
            let v: Value = serde_json::from_str(&out).map_err(|e| Error::Cache(e.to_string()))?;
            if cli.json {
                print_value(&v);
            } else {
                println!(
                    "{} class group of discriminant {disc}: order {}, 2-part {}, r2 = {}, r4 = {}, r8 = {}",
                    v["kind"], v["class_number"], v["two_part"], v["r2"], v["r4"], v["r8"]
                );
            }
        }
        Cmd::Unit { d } => {
            let d = *d;
            let out = cached("unit", d.to_string(), &|| {
                let u = fundamental_unit(d)?;
                let image = if splits_at_2(d) { Some(eps_image_mod8_auto(d)?) } else { None };
                Ok(json!({"d": d, "unit": u.to_string(), "x": u.x.to_string(), "y": u.y.to_string(),
                          "halved": u.halved, "norm": u.norm, "mod8_in_Q2": image})
                .to_string())
            })?;
            let v: Value = serde_json::from_str(&out).map_err(|e| Error::Cache(e.to_string()))?;
            if cli.json {
                print_value(&v);
            } else {
                println!("eps_{d} = {}", v["unit"].as_str().unwrap_or_default());
                println!("norm = {}", v["norm"]);
                if !v["mod8_in_Q2"].is_null() {
                    println!("image in Q_2 (sqrt D = 1 mod 4) = {} mod 8", v["mod8_in_Q2"]);
                }
            }
        }
        Cmd::Redei { d, f1 } => {
            if let Some(d) = d {
                let m = redei_matrix(*d)?;
                let r4 = r4_narrow_via_redei(*d)?;
                if cli.json {
                    print_value(&json!({"d": d, "matrix": matrix_json(&m), "rank": m.rank(), "r4": r4}));
                } else {
                    println!("{m}\nrank = {}, r4(Cl+) = {r4}", m.rank());
                }
            } else if let Some(pq) = f1 {
                let g = generalized_redei_f1(pq[0], pq[1])?;
                if cli.json {
                    print_value(&json!({
                        "p": g.p, "q": g.q,
                        "places": g.places.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "generators": g.generators,
                        "m": matrix_json(&g.m), "r": matrix_json(&g.r), "r2": g.r2, "r4": g.r4,
                    }));
                } else {
                    let places: Vec<String> = g.places.iter().map(|p| p.to_string()).collect();
                    println!("places: {}", places.join(", "));
                    println!("M (columns -1, eps_2):\n{}", g.m);
                    println!("R (columns {:?}):\n{}", g.generators, g.r);
                    println!("r2(A+(F1)) = {}, r4(A+(F1)) = {}", g.r2, g.r4);
                }
            }
        }
    }
    Ok(())
}

fn write_search_csv(path: &PathBuf, pairs: &[Thm11Hypotheses]) -> Result<()> {
    let err = |e: csv::Error| Error::InvalidInput(e.to_string());
    let mut w = csv::Writer::from_path(path).map_err(err)?;
    w.write_record(["p", "q", "pq", "p_1_mod_8", "q_9_mod_16", "p_over_q", "quartic_product", "quartic_or", "status"])
        .map_err(err)?;
    for h in pairs {
        let status = classify((h.p * h.q) as i64)?.status.to_string();
        let mut row = vec![h.p.to_string(), h.q.to_string(), (h.p * h.q).to_string()];
        row.extend(h.bits().iter().map(|&b| u8::from(b).to_string()));
        row.push(status);
        w.write_record(&row).map_err(err)?;
    }
    w.flush().map_err(|e| Error::InvalidInput(e.to_string()))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let r = BigRational::from_str(s.trim()).map_err(|_| Error::InvalidInput(format!("not a rational: {s}")))?;
    if r == BigRational::from_integer(0.into()) {
        return Err(Error::ZeroArgument);
    }
    Ok(r)
}

fn parse_q1(s: &str) -> Result<Q1Element> {
    let (x, y) = s.split_once(',').ok_or_else(|| Error::InvalidInput(format!("expected x,y: {s}")))?;
    let parse = |t: &str| BigRational::from_str(t.trim()).map_err(|_| Error::InvalidInput(format!("not a rational: {t}")));
    let e = Q1Element::from_rationals(parse(x)?, parse(y)?);
    if e.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(e)
}

fn symbols(args: &SymbolsArgs) -> Result<()> {
    if let Some(h) = &args.hilbert {
        if args.base == "q1" {
            let (a, b) = (parse_q1(&h[0])?, parse_q1(&h[1])?);
            let mut places: Vec<Value> = q1_local_symbols_off_dyadic(&a, &b)?
                .into_iter()
                .map(|(v, s)| json!({"place": v.to_string(), "symbol": s}))
                .collect();
            places.push(json!({"place": Q1Place::Ramified.to_string(), "symbol": hilbert_q1(&a, &b, Q1Place::Ramified)?}));
            print_value(&json!({
                "alpha": a.to_string(), "beta": b.to_string(), "places": places,
                "dyadic_by_search": dyadic_symbol_by_search(&a, &b)?,
            }));
        } else {
            let (r, s) = (parse_rational(&h[0])?, parse_rational(&h[1])?);
            let places: Vec<Value> = hilbert_q_local_symbols(&r, &s)?
                .into_iter()
                .map(|(p, v)| json!({"place": if p == 0 { "inf".to_string() } else { p.to_string() }, "symbol": v}))
                .collect();
            let product: i64 = places.iter().map(|v| v["symbol"].as_i64().unwrap_or(1)).product();
            print_value(&json!({"r": r.to_string(), "s": s.to_string(), "places": places, "product": product}));
        }
        return Ok(());
    }
    let (p, q) = (args.p.expect("clap requires p"), args.q.expect("clap requires q"));
    let (pi, qi) = (p as i64, q as i64);
    let pq = pi.checked_mul(qi).ok_or_else(|| Error::TooLarge(format!("{p} * {q}")))?;
    let h = thm11_hypotheses(p, q);
    let hyps: serde_json::Map<String, Value> =
        Thm11Hypotheses::NAMES.iter().zip(h.bits()).map(|(n, b)| (n.to_string(), Value::from(b))).collect();
    print_value(&json!({
        "p": p, "q": q,
        "(p/q)": kronecker(pi, qi), "(q/p)": kronecker(qi, pi),
        "(2/p)_4": sym(quartic_mod_p(2, p)), "(2/q)_4": sym(quartic_mod_p(2, q)),
        "(p/2)_4": sym(quartic_over_2(pi)), "(q/2)_4": sym(quartic_over_2(qi)), "(pq/2)_4": sym(quartic_over_2(pq)),
        "(p/q)_4": sym(quartic_mod_p(pi, q)), "(q/p)_4": sym(quartic_mod_p(qi, p)),
        "((1+sqrt2)/p)": sym(scholz_symbol(p)), "((1+sqrt2)/q)": sym(scholz_symbol(q)),
        "hypotheses": hyps, "all_hypotheses": h.all(),
    }));
    Ok(())
}
