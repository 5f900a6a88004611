//! Verification sweeps. Each suite enumerates its instances in a fixed order,
//! shards them by index modulo the worker count, and merges failures back in
//! index order, so a report never depends on the number of workers.

use std::thread;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, is_squarefree, omega};
use crate::classifier::{classify, search_thm11, thm11_hypotheses};
use crate::error::{Error, Result};
use crate::field::{eps2d_decompose, eps_image_mod8_auto, unit_norm};
use crate::forms::{is_fundamental_discriminant, narrow_class_group, wide_class_group};
use crate::hilbert::{dyadic_symbol_by_search, hilbert_q_product_check, q1_local_symbols_off_dyadic, Q1Element};
use crate::redei::{generalized_redei_f1, has_theorem_pattern, pattern_matrix, r4_narrow_via_redei};
use crate::report::{Failure, SweepReport};
use crate::symbols::{kronecker, quartic_mod_p, quartic_over_2, scholz_symbol};

pub const SUITES: [&str; 11] = [
    "genus",
    "scholz-units",
    "redei-oracle",
    "scholz-reciprocity",
    "hilbert-product",
    "lemma72-bridge",
    "prop74",
    "lemma75",
    "thm76-det",
    "classifier-golden",
    "normalize-invariance",
];

/// Default bound of a suite; `None` for suites with a fixed instance set.
pub fn default_bound(name: &str) -> Result<Option<u64>> {
    Ok(match name {
        "genus" | "scholz-units" | "redei-oracle" => Some(50_000),
        "scholz-reciprocity" | "lemma72-bridge" | "prop74" | "thm76-det" => Some(100_000),
        "hilbert-product" => Some(1_000),
        "lemma75" => Some(20_000),
        "normalize-invariance" => Some(10_000),
        "classifier-golden" => None,
        _ => return Err(Error::UnknownSuite(name.to_string())),
    })
}

/// Qualifying pairs for `thm76-det` must include at least this many
/// pairs that meet every hypothesis of the vanishing theorem.
pub const THM76_MIN_QUALIFYING: usize = 25;

/// Golden verdict table `d,status,theorem,case` for squarefree `2 <= d <= 6000`.
pub const CLASSIFIER_GOLDEN: &str = include_str!("../golden/classify.csv");

/// Runs a suite. `bound` overrides the default; `workers` is clamped to at least one.
pub fn run_suite(name: &str, bound: Option<u64>, workers: usize) -> Result<SweepReport> {
    let bound = bound.or(default_bound(name)?);
    let b = bound.unwrap_or(0);
    let start = Instant::now();
    let (instances, failures) = match name {
        "genus" => genus(b, workers),
        "scholz-units" => scholz_units(b, workers),
        "redei-oracle" => redei_oracle(b, workers),
        "scholz-reciprocity" => scholz_reciprocity(b, workers),
        "hilbert-product" => hilbert_product(b, workers),
        "lemma72-bridge" => lemma72_bridge(b, workers),
        "prop74" => prop74(b, workers),
        "lemma75" => lemma75(b, workers),
        "thm76-det" => thm76_det(b, workers),
        "classifier-golden" => classifier_golden(bound, workers),
        "normalize-invariance" => normalize_invariance(b, workers),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SweepReport { suite: name.to_string(), bound, instances, failures, wall_time: start.elapsed() })
}

/// Applies `check` to every item, sharded over `workers` threads.
fn sweep<T, F>(items: &[T], workers: usize, check: F) -> (u64, Vec<Failure>)
where
    T: Sync,
    F: Fn(&T) -> Vec<Failure> + Sync,
{
    let workers = workers.clamp(1, items.len().max(1));
    let check = &check;
    let mut tagged: Vec<(usize, Vec<Failure>)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w..items.len())
                        .step_by(workers)
                        .map(|i| (i, check(&items[i])))
                        .filter(|(_, f)| !f.is_empty())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite worker panicked")).collect()
    });
    tagged.sort_by_key(|(i, _)| *i);
    (items.len() as u64, tagged.into_iter().flat_map(|(_, f)| f).collect())
}

fn fail_on_err<T>(input: impl ToString, r: Result<T>) -> std::result::Result<T, Vec<Failure>> {
    r.map_err(|e| vec![Failure::new(input, "no error", e)])
}

/// Squarefree radicands `D > 1` whose discriminant is below `bound`.
fn radicands_below_disc(bound: u64) -> Vec<i64> {
    (2..bound as i64)
        .filter(|&d| is_squarefree(d as u64))
        .filter(|&d| (if d % 4 == 1 { d } else { 4 * d }) < bound as i64)
        .collect()
}

fn disc_of(d: i64) -> i64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

/// Ordered prime pairs `p < q` with `pq < bound` and both primes satisfying `pred`.
fn prime_pairs(bound: u64, pred: impl Fn(u64) -> bool) -> Vec<(u64, u64)> {
    let primes: Vec<u64> = (3..bound / 3 + 1).filter(|&n| pred(n) && is_prime(n)).collect();
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if p * q >= bound {
                break;
            }
            out.push((p, q));
        }
    }
    out
}

fn genus(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let discs: Vec<i64> = (5..bound as i64).filter(|&d| is_fundamental_discriminant(d)).collect();
    sweep(&discs, workers, |&disc| {
        let g = match fail_on_err(disc, narrow_class_group(disc)) {
            Ok(g) => g,
            Err(f) => return f,
        };
        let want = omega(disc as u64) - 1;
        let got = g.two_part.two_rank();
        if got == want {
            vec![]
        } else {
            vec![Failure::new(format!("disc={disc}"), format!("r2={want}"), format!("r2={got}"))]
        }
    })
}

/// The `(h+ mod 8, h mod 8, N(eps_D))` constraints for `D = pq`, `p = q = 1 mod 4`.
struct ScholzBranch {
    name: &'static str,
    narrow_mod8: &'static [u64],
    wide_mod8: &'static [u64],
    norm: Option<i8>,
}

fn scholz_branch(p: u64, q: u64) -> ScholzBranch {
    if kronecker(p as i64, q as i64) == -1 {
        return ScholzBranch { name: "(p/q) = -1", narrow_mod8: &[2, 6], wide_mod8: &[2, 6], norm: Some(-1) };
    }
    let a = quartic_mod_p(p as i64, q).expect("(p/q) = 1");
    let b = quartic_mod_p(q as i64, p).expect("(q/p) = 1");
    match (a, b) {
        (-1, -1) => ScholzBranch { name: "quartic -1,-1", narrow_mod8: &[4], wide_mod8: &[4], norm: Some(-1) },
        (1, 1) => ScholzBranch { name: "quartic 1,1", narrow_mod8: &[0], wide_mod8: &[0, 1, 2, 3, 4, 5, 6, 7], norm: None },
        _ => ScholzBranch { name: "quartic differ", narrow_mod8: &[4], wide_mod8: &[2, 6], norm: Some(1) },
    }
}

fn scholz_units(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let pairs = prime_pairs(bound, |n| n % 4 == 1);
    sweep(&pairs, workers, |&(p, q)| {
        let d = (p * q) as i64;
        let (g, n) = match (narrow_class_group(d), unit_norm(d)) {
            (Ok(g), Ok(n)) => (g, n),
            (Err(e), _) | (_, Err(e)) => return vec![Failure::new(d, "no error", e)],
        };
        let (hp, h) = (g.class_number() as u64, g.wide_class_number() as u64);
        let branch = scholz_branch(p, q);
        let mut out = Vec::new();
        let ok = branch.narrow_mod8.contains(&(hp % 8))
            && branch.wide_mod8.contains(&(h % 8))
            && branch.norm.is_none_or(|want| want == n);
        if !ok {
            out.push(Failure::new(
                format!("D={d} [{}]", branch.name),
                format!("h+ mod 8 in {:?}, h mod 8 in {:?}, N = {:?}", branch.narrow_mod8, branch.wide_mod8, branch.norm),
                format!("h+ = {hp}, h = {h}, N = {n}"),
            ));
        }
        // The narrow/wide index is 2 exactly when the fundamental unit has norm +1.
        let index = hp / h;
        if (index == 1) != (n == -1) {
            out.push(Failure::new(format!("D={d} index"), format!("N = {n}"), format!("h+/h = {index}")));
        }
        out
    })
}

fn redei_oracle(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let ds: Vec<i64> = radicands_below_disc(bound)
        .into_iter()
        .filter(|&d| matches!(omega(disc_of(d) as u64), 2 | 3))
        .collect();
    sweep(&ds, workers, |&d| {
        let disc = disc_of(d);
        let (r4, g) = match (r4_narrow_via_redei(d), narrow_class_group(disc)) {
            (Ok(r), Ok(g)) => (r, g),
            (Err(e), _) | (_, Err(e)) => return vec![Failure::new(d, "no error", e)],
        };
        let brute = g.two_part.four_rank();
        if r4 == brute {
            vec![]
        } else {
            vec![Failure::new(format!("D={d}"), format!("r4={brute}"), format!("redei r4={r4}"))]
        }
    })
}

fn scholz_reciprocity(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let primes: Vec<u64> = (17..bound).filter(|&p| p % 8 == 1 && is_prime(p)).collect();
    sweep(&primes, workers, |&p| {
        let lhs = scholz_symbol(p);
        let rhs = quartic_mod_p(2, p).and_then(|a| Ok(a * quartic_over_2(p as i64)?));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => vec![],
            (l, r) => vec![Failure::new(format!("p={p}"), format!("{r:?}"), format!("{l:?}"))],
        }
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut n: i64 = 0;
    while n == 0 {
        n = rng.random_range(-5000..=5000);
    }
    BigRational::new(BigInt::from(n), BigInt::from(rng.random_range(1..=500i64)))
}

fn random_q1(rng: &mut ChaCha8Rng) -> Q1Element {
    loop {
        let (x, y) = (rng.random_range(-50..=50i64), rng.random_range(-50..=50i64));
        if (x, y) != (0, 0) {
            return Q1Element::new(x, y);
        }
    }
}

/// Product formula over `Q` and over `Q(sqrt 2)`. For `Q(sqrt 2)` the dyadic
/// factor is found by the independent solvability search, not by the product
/// formula itself.
fn hilbert_product(pairs: u64, workers: usize) -> (u64, Vec<Failure>) {
    let idx: Vec<u64> = (0..2 * pairs).collect();
    sweep(&idx, workers, |&i| {
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        if i < pairs {
            let (r, s) = (random_rational(&mut rng), random_rational(&mut rng));
            match hilbert_q_product_check(&r, &s) {
                Ok(true) => vec![],
                other => vec![Failure::new(format!("Q: ({r}, {s})"), "product 1", format!("{other:?}"))],
            }
        } else {
            let (a, b) = (random_q1(&mut rng), random_q1(&mut rng));
            let input = format!("Q(sqrt2): ({a}, {b})");
            let off = match fail_on_err(&input, q1_local_symbols_off_dyadic(&a, &b)) {
                Ok(v) => v,
                Err(f) => return f,
            };
            let dyadic = match fail_on_err(&input, dyadic_symbol_by_search(&a, &b)) {
                Ok(v) => v,
                Err(f) => return f,
            };
            let product: i8 = off.iter().map(|&(_, v)| v).product::<i8>() * dyadic;
            if product == 1 {
                vec![]
            } else {
                vec![Failure::new(input, "product 1", format!("product {product} (dyadic {dyadic})"))]
            }
        }
    })
}

fn lemma72_bridge(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let pairs: Vec<(u64, u64)> = prime_pairs(bound, |n| n % 8 == 1)
        .into_iter()
        .filter(|&(p, q)| kronecker(p as i64, q as i64) == -1)
        .collect();
    sweep(&pairs, workers, |&(p, q)| {
        let d = (p * q) as i64;
        let u = match fail_on_err(d, eps_image_mod8_auto(d)) {
            Ok(u) => u,
            Err(f) => return f,
        };
        let symbol = quartic_mod_p(2, p).unwrap() * quartic_mod_p(2, q).unwrap() * quartic_over_2(d).unwrap();
        if matches!(u, 3 | 5) == (symbol == -1) {
            vec![]
        } else {
            vec![Failure::new(format!("D={d}"), format!("symbol product {symbol}"), format!("eps mod 8 = {u}"))]
        }
    })
}

/// Theorem-qualifying pairs `(p, q)` with `pq < limit`.
fn qualifying_pairs(limit: u64, workers: usize) -> Vec<(u64, u64)> {
    search_thm11(limit / 17 + 1, workers).into_iter().filter(|h| h.p * h.q < limit).map(|h| (h.p, h.q)).collect()
}

fn prop74(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let pairs = qualifying_pairs(bound / 2, workers);
    sweep(&pairs, workers, |&(p, q)| {
        let d2 = 2 * (p * q) as i64;
        let (wide, n) = match (wide_class_group(4 * d2), unit_norm(d2)) {
            (Ok(w), Ok(n)) => (w, n),
            (Err(e), _) | (_, Err(e)) => return vec![Failure::new(d2, "no error", e)],
        };
        if wide.divisors == [2, 2] && n == 1 {
            vec![]
        } else {
            vec![Failure::new(format!("(p,q)=({p},{q})"), "wide [2, 2], N(eps_2pq) = 1", format!("wide {:?}, N = {n}", wide.divisors))]
        }
    })
}

fn lemma75(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let pairs = qualifying_pairs(bound, workers);
    sweep(&pairs, workers, |&(p, q)| {
        let d = (p * q) as i64;
        match eps2d_decompose(d) {
            Ok(x) if x.d1 == 1 && x.d2 == d && x.sqrt_two_eps_holds() => vec![],
            Ok(x) => vec![Failure::new(format!("D={d}"), "d1 = 1, d2 = D", format!("d1 = {}, d2 = {}", x.d1, x.d2))],
            Err(e) => vec![Failure::new(format!("D={d}"), "decomposition", e)],
        }
    })
}

/// The 2^7 pattern matrices, then the generalized matrices of every pair
/// `p = 1 mod 8`, `q = 9 mod 16`, `(p/q) = -1`, `pq < bound`.
fn thm76_det(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let mut failures = Vec::new();
    let mut instances = 0;
    for bits in 0u8..128 {
        let v: Vec<u8> = (0..7).map(|i| (bits >> i) & 1).collect();
        if v[2] == v[3] || v[4] == v[5] {
            continue;
        }
        instances += 1;
        let m = pattern_matrix(v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
        if m.rank() != 4 || m.det() != Ok(1) {
            failures.push(Failure::new(format!("pattern {v:?}"), "rank 4", format!("rank {}", m.rank())));
        }
    }
    let primes: Vec<u64> = (17..bound / 17 + 1).filter(|&n| n % 8 == 1 && is_prime(n)).collect();
    let mut pairs = Vec::new();
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q % 16 == 9 && q != p && p * q < bound) {
            if kronecker(p as i64, q as i64) == -1 {
                pairs.push((p, q));
            }
        }
    }
    pairs.sort_by_key(|&(p, q)| (p * q, p));
    let qualifying = pairs.iter().filter(|&&(p, q)| thm11_hypotheses(p, q).all()).count();
    if qualifying < THM76_MIN_QUALIFYING {
        failures.push(Failure::new(
            format!("pairs below {bound}"),
            format!(">= {THM76_MIN_QUALIFYING} qualifying"),
            qualifying,
        ));
    }
    let (n, f) = sweep(&pairs, workers, |&(p, q)| {
        let g = match fail_on_err(format!("({p},{q})"), generalized_redei_f1(p, q)) {
            Ok(g) => g,
            Err(f) => return f,
        };
        let mut out = Vec::new();
        let input = format!("(p,q)=({p},{q})");
        if g.r.rank() != 4 || g.r4 != 0 || !has_theorem_pattern(&g.r) {
            out.push(Failure::new(&input, "R rank 4 with the symmetry pattern", format!("\n{}", g.r)));
        }
        let alpha = scholz_symbol(p).unwrap() == -1 || scholz_symbol(q).unwrap() == -1;
        if alpha && g.r2 != 3 {
            out.push(Failure::new(&input, "r2 = 3", format!("r2 = {}", g.r2)));
        }
        if (0..5).any(|i| g.m.get(i, 0) != 0) || !g.m.column_sums_zero() {
            out.push(Failure::new(&input, "M: zero (-1)-column, zero column sums", format!("\n{}", g.m)));
        }
        out
    });
    failures.extend(f);
    (instances + n, failures)
}

/// Parses the golden table into `(d, status, theorem, case)` rows.
pub fn golden_rows() -> Vec<(i64, String, String, String)> {
    let mut rdr = csv::Reader::from_reader(CLASSIFIER_GOLDEN.as_bytes());
    rdr.records()
        .map(|r| {
            let r = r.expect("golden table is well formed");
            (r[0].parse().expect("golden d"), r[1].to_string(), r[2].to_string(), r[3].to_string())
        })
        .collect()
}

fn classifier_golden(bound: Option<u64>, workers: usize) -> (u64, Vec<Failure>) {
    let rows: Vec<_> = golden_rows().into_iter().filter(|r| bound.is_none_or(|b| r.0 as u64 <= b)).collect();
    sweep(&rows, workers, |(d, status, theorem, case)| {
        let v = match fail_on_err(d, classify(*d)) {
            Ok(v) => v,
            Err(f) => return f,
        };
        let got = (
            v.status.kind().to_string(),
            v.status.theorem().map(|t| t.to_string()).unwrap_or_default(),
            v.status.case().unwrap_or_default().to_string(),
        );
        if (&got.0, &got.1, &got.2) == (status, theorem, case) {
            vec![]
        } else {
            vec![Failure::new(format!("D={d}"), format!("{status},{theorem},{case}"), format!("{},{},{}", got.0, got.1, got.2))]
        }
    })
}

fn normalize_invariance(bound: u64, workers: usize) -> (u64, Vec<Failure>) {
    let ds: Vec<i64> = (3..bound as i64).step_by(2).filter(|&d| is_squarefree(d as u64)).collect();
    sweep(&ds, workers, |&d| match (classify(d), classify(2 * d)) {
        (Ok(a), Ok(b)) if a.status == b.status && b.normalized_from == Some(2 * d) => vec![],
        (a, b) => vec![Failure::new(
            format!("D'={d}"),
            a.map(|v| v.status.to_string()).unwrap_or_else(|e| e.to_string()),
            b.map(|v| v.status.to_string()).unwrap_or_else(|e| e.to_string()),
        )],
    })
}
