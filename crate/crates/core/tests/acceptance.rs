//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the console.

use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lambda2::classifier::{classify, search_thm11, Status, TheoremTag};
use lambda2::hilbert::{q1_local_symbols_off_dyadic, Q1Element};
use lambda2::report::SweepReport;
use lambda2::suites::run_suite;

/// Square classes of `Q_2(sqrt 2)` in the basis `-1, 5, sqrt 2, 1 + sqrt 2`,
/// and their pairwise symbols. Rational pairs give `(a, N b)_2 = (a, b^2)_2 = 1`;
/// `(a, y) = (a, N y)_2` with `N sqrt2 = -2`, `N(1 + sqrt2) = -1`;
/// `(x, x) = (x, -1)`; `(sqrt2, 1 - sqrt2) = 1` gives `(sqrt2, 1 + sqrt2) = (sqrt2, -1)`.
mod dyadic_oracle {
    use super::*;

    const TABLE: [[i8; 4]; 4] = [
        // -1   5   sqrt2  1+sqrt2
        [1, 1, -1, -1],
        [1, 1, -1, 1],
        [-1, -1, -1, -1],
        [-1, 1, -1, -1],
    ];

    type Z = (BigInt, BigInt);

    fn mul(u: &Z, v: &Z) -> Z {
        (&u.0 * &v.0 + BigInt::from(2) * &u.1 * &v.1, &u.0 * &v.1 + &u.1 * &v.0)
    }

    /// Unit `u` of `Z_2[sqrt 2]` is a square iff it is a square mod 8.
    fn unit_is_square(u: &Z) -> bool {
        let r = |n: &BigInt| n.mod_floor(&BigInt::from(8)).to_i64().unwrap();
        let (a, b) = (r(&u.0), r(&u.1));
        (0..8i64).any(|x| (0..8i64).any(|y| ((x * x + 2 * y * y) - a) % 8 == 0 && (2 * x * y - b) % 8 == 0))
    }

    /// Coordinates of a nonzero `x + y sqrt 2` in the basis above.
    fn coordinates(e: &Q1Element) -> [u8; 4] {
        let den = e.x.denom().lcm(e.y.denom());
        // scale by den^2: same square class, integral coordinates
        let scale = |c: &BigRational| (c * BigRational::from_integer(&den * &den)).to_integer();
        let mut z: Z = (scale(&e.x), scale(&e.y));
        let mut v = 0u32;
        loop {
            if z.0.is_even() && z.1.is_even() {
                z = (&z.0 / 2, &z.1 / 2);
                v += 2;
            } else if z.0.is_even() {
                // divide by sqrt 2: (a + b sqrt2)/sqrt2 = b + (a/2) sqrt2
                z = (z.1.clone(), &z.0 / 2);
                v += 1;
            } else {
                break;
            }
        }
        let g: [Z; 3] = [
            (BigInt::from(-1), BigInt::zero()),
            (BigInt::from(5), BigInt::zero()),
            (BigInt::from(1), BigInt::from(1)),
        ];
        for bits in 0u8..8 {
            let mut w = z.clone();
            for (i, gi) in g.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    w = mul(&w, gi);
                }
            }
            if unit_is_square(&w) {
                return [bits & 1, bits >> 1 & 1, (v % 2) as u8, bits >> 2 & 1];
            }
        }
        unreachable!("-1, 5, 1 + sqrt 2 span the unit square classes")
    }

    pub fn symbol(a: &Q1Element, b: &Q1Element) -> i8 {
        let (ca, cb) = (coordinates(a), coordinates(b));
        let mut s = 1;
        for i in 0..4 {
            for j in 0..4 {
                if ca[i] == 1 && cb[j] == 1 {
                    s *= TABLE[i][j];
                }
            }
        }
        s
    }
}

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn from_suite(id: u32, title: &'static str, r: SweepReport) -> Outcome {
    let detail = match r.failures.first() {
        None => format!("{} instances", r.instances),
        Some(f) => format!("{} failures, first {}: expected {}, got {}", r.failures.len(), f.input, f.expected, f.got),
    };
    Outcome { id, title, pass: r.passed(), detail }
}

fn suite(id: u32, title: &'static str, name: &str, workers: usize) -> Outcome {
    match run_suite(name, None, workers) {
        Ok(r) => from_suite(id, title, r),
        Err(e) => Outcome { id, title, pass: false, detail: e.to_string() },
    }
}

fn hilbert_q1_product(workers: usize) -> Outcome {
    let q = run_suite("hilbert-product", Some(1000), workers);
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let (x, y): (i64, i64) = (rng.random_range(-50..=50), rng.random_range(-50..=50));
        if (x, y) != (0, 0) {
            let d = if rng.random_bool(0.2) { rng.random_range(2..=9) } else { 1 };
            return Q1Element::from_rationals(
                BigRational::new(x.into(), d.into()),
                BigRational::new(y.into(), BigInt::from(1)),
            );
        }
    };
    let mut nontrivial = 0;
    for _ in 0..1000 {
        let (a, b) = (draw(&mut rng), draw(&mut rng));
        let off: i8 = q1_local_symbols_off_dyadic(&a, &b).unwrap().iter().map(|&(_, v)| v).product();
        let dyadic = dyadic_oracle::symbol(&a, &b);
        nontrivial += usize::from(dyadic == -1);
        if off * dyadic != 1 {
            failures.push(format!("({a}, {b})"));
        }
    }
    // a sample where the dyadic symbol is almost always 1 would prove nothing
    if nontrivial < 200 {
        failures.push(format!("only {nontrivial} pairs with dyadic symbol -1"));
    }
    let title = "Hilbert product formula over Q and Q(sqrt 2)";
    match q {
        Ok(r) if r.passed() && failures.is_empty() => Outcome {
            id: 5,
            title,
            pass: true,
            detail: format!(
                "{} suite instances; 1000 pairs vs square-class oracle, {nontrivial} with dyadic -1",
                r.instances
            ),
        },
        Ok(r) => Outcome {
            id: 5,
            title,
            pass: false,
            detail: format!("suite failures {}, oracle failures {:?}", r.failures.len(), &failures[..failures.len().min(3)]),
        },
        Err(e) => Outcome { id: 5, title, pass: false, detail: e.to_string() },
    }
}

fn classifier_goldens() -> Outcome {
    let mut bad = Vec::new();
    let expect = |d: i64, want: Status, bad: &mut Vec<String>| match classify(d) {
        Ok(v) if v.status == want => {}
        other => bad.push(format!("D={d}: {:?}", other.map(|v| v.status))),
    };
    for d in [2, 5, 7, 21] {
        expect(d, Status::TrivialZero, &mut bad);
    }
    expect(15, Status::ProvenZero(TheoremTag::OzakiTaya3), &mut bad);
    expect(17, Status::ProvenZero(TheoremTag::OzakiTaya1), &mut bad);
    expect(34, Status::ProvenZero(TheoremTag::OzakiTaya1), &mut bad);
    expect(697, Status::ProvenZero(TheoremTag::MainTheorem11), &mut bad);
    expect(3977, Status::ProvenZero(TheoremTag::MainTheorem11), &mut bad);
    let pairs: Vec<(u64, u64)> = search_thm11(100, 2).iter().map(|h| (h.p, h.q)).collect();
    if pairs != [(17, 41), (41, 89), (97, 41)] {
        bad.push(format!("search_thm11(100) = {pairs:?}"));
    }
    Outcome {
        id: 10,
        title: "Classifier goldens",
        pass: bad.is_empty(),
        detail: if bad.is_empty() { "9 radicands, search below 100".into() } else { bad.join("; ") },
    }
}

fn main() -> ExitCode {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let outcomes = vec![
        suite(1, "Genus theory: r2(Cl+) = omega(disc) - 1, disc < 50000", "genus", workers),
        suite(2, "Scholz congruences and unit norms, pq < 50000", "scholz-units", workers),
        suite(3, "Redei 4-rank equals class-group 4-rank, disc < 50000", "redei-oracle", workers),
        suite(4, "Scholz reciprocity for p = 1 mod 8 below 100000", "scholz-reciprocity", workers),
        hilbert_q1_product(workers),
        suite(6, "eps_D mod 8 in {3,5} iff quartic product -1, pq < 100000", "lemma72-bridge", workers),
        suite(7, "Wide 2-class group [2,2] and N(eps_2pq) = 1, 2pq < 100000", "prop74", workers),
        suite(8, "eps_2D decomposition with d1 = 1, pq < 20000", "lemma75", workers),
        suite(9, "Pattern determinant and generalized Redei ranks for F_1", "thm76-det", workers),
        classifier_goldens(),
        suite(11, "classify(2D') = classify(D') for odd D' < 10000", "normalize-invariance", workers),
    ];
    let mut all = true;
    for o in &outcomes {
        println!("{} criterion {:>2}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.id, o.title, o.detail);
        all &= o.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
