//! Decision tree for the vanishing of the 2-adic lambda invariant of `Q(sqrt D)`.
//!
//! [`classify`] walks the known criteria for radicands with at most two odd
//! prime factors and records every predicate it evaluated, so a verdict can be
//! re-derived from its evidence alone. `Q(sqrt D)` and `Q(sqrt 2D)` share
//! their cyclotomic Z_2-extension, so even radicands are first halved.

use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::arith::{check_radicand, is_prime, prime_divisors};
use crate::error::{Error, Result};
use crate::field::{eps_image_mod8_auto, unit_norm};
use crate::symbols::{kronecker, quartic_mod_p, quartic_over_2};

/// A theorem (or known result) that certifies `lambda_2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremTag {
    Trivial,
    OzakiTaya1,
    OzakiTaya2,
    OzakiTaya3,
    OzakiTaya4,
    OzakiTaya5,
    FukudaKomatsu6,
    Kumakawa7,
    Cor32_1,
    Cor32_2,
    Cor32_3,
    Cor32_4,
    Prop61_1,
    Prop61_2,
    MainTheorem11,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 15] = [
        TheoremTag::Trivial,
        TheoremTag::OzakiTaya1,
        TheoremTag::OzakiTaya2,
        TheoremTag::OzakiTaya3,
        TheoremTag::OzakiTaya4,
        TheoremTag::OzakiTaya5,
        TheoremTag::FukudaKomatsu6,
        TheoremTag::Kumakawa7,
        TheoremTag::Cor32_1,
        TheoremTag::Cor32_2,
        TheoremTag::Cor32_3,
        TheoremTag::Cor32_4,
        TheoremTag::Prop61_1,
        TheoremTag::Prop61_2,
        TheoremTag::MainTheorem11,
    ];

    /// Where the result comes from, with its hypotheses in short form.
    pub fn citation(self) -> &'static str {
        match self {
            TheoremTag::Trivial => "Iwasawa: 2 does not split and h(K) is odd",
            TheoremTag::OzakiTaya1 => "Ozaki-Taya, MR1484637: D = p = 1 mod 8, (2/p)_4 (p/2)_4 = -1; nu_2 = 0",
            TheoremTag::OzakiTaya2 => "Ozaki-Taya, MR1484637: (p,q) = (3,3) mod 8; nu_2 = 0",
            TheoremTag::OzakiTaya3 => "Ozaki-Taya, MR1484637: (p,q) = (3,5) mod 8; nu_2 > 0",
            TheoremTag::OzakiTaya4 => "Ozaki-Taya, MR1484637: (p,q) = (5,7) mod 8; nu_2 > 0",
            TheoremTag::OzakiTaya5 => "Ozaki-Taya, MR1484637: (p,q) = (5,5) mod 8; nu_2 > 0",
            TheoremTag::FukudaKomatsu6 => {
                "Fukuda-Komatsu, MR2149635: (p,q) = (3,1) mod 8, (q/p) = -1, (2/q)_4 = -1"
            }
            TheoremTag::Kumakawa7 => {
                "Kumakawa, MR4262274: (p,q) = (3,1) mod 8, (q/p) = -1, q = 9 mod 16, (2/q)_4 = 1, rk_4(A_2) = 1"
            }
            TheoremTag::Cor32_1 => "MR4879114, Cor. 3.3.3(1): (p,q) = (5,1) mod 8, (p/q) = -1",
            TheoremTag::Cor32_2 => {
                "MR4879114, Cor. 3.3.3(2): (p,q) = (5,1) mod 8, (p/q) = 1, (p/q)_4 = (q/p)_4 = -1"
            }
            TheoremTag::Cor32_3 => {
                "MR4879114, Cor. 3.3.3(3): (p,q) = (5,1) mod 8, (p/q)_4 = (q/p)_4 = 1, N(eps_D) = -1"
            }
            TheoremTag::Cor32_4 => {
                "MR4879114, Cor. 3.3.3(4): (p,q) = (5,1) mod 8, (p/q)_4 = -(q/p)_4, q = 1 mod 16, N(eps_2D) = -1"
            }
            TheoremTag::Prop61_1 => {
                "(p,q) = (5,1) mod 8, (p/q) = -1: eps_D is not a norm of a unit of K_1, so |B_1'| = 1"
            }
            TheoremTag::Prop61_2 => {
                "(p,q) = (5,1) mod 8, (p/q)_4 = -(q/p)_4, N(eps_2D) = -1: eps_D is not a norm of a unit of K_1"
            }
            TheoremTag::MainTheorem11 => {
                "p = 1 mod 8, q = 9 mod 16, (p/q) = -1, (2/p)_4 (2/q)_4 (pq/2)_4 = -1, (2/p)_4 = -1 or (2/q)_4 = -1: \
                 the ramified primes capitulate in K_2 since q(K_2) <= 2"
            }
        }
    }

    /// The wire name, identical to the serde representation.
    pub fn name(self) -> &'static str {
        match self {
            TheoremTag::Trivial => "Trivial",
            TheoremTag::OzakiTaya1 => "OzakiTaya1",
            TheoremTag::OzakiTaya2 => "OzakiTaya2",
            TheoremTag::OzakiTaya3 => "OzakiTaya3",
            TheoremTag::OzakiTaya4 => "OzakiTaya4",
            TheoremTag::OzakiTaya5 => "OzakiTaya5",
            TheoremTag::FukudaKomatsu6 => "FukudaKomatsu6",
            TheoremTag::Kumakawa7 => "Kumakawa7",
            TheoremTag::Cor32_1 => "Cor32_1",
            TheoremTag::Cor32_2 => "Cor32_2",
            TheoremTag::Cor32_3 => "Cor32_3",
            TheoremTag::Cor32_4 => "Cor32_4",
            TheoremTag::Prop61_1 => "Prop61_1",
            TheoremTag::Prop61_2 => "Prop61_2",
            TheoremTag::MainTheorem11 => "MainTheorem11",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        TheoremTag::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Open-case labels. `case-1` .. `case-7` are the known remaining two-prime
/// cases; the others mark parameter regions no listed result touches.
pub mod open_case {
    pub const CASE_1: &str = "case-1";
    pub const CASE_2: &str = "case-2";
    pub const CASE_3: &str = "case-3";
    pub const CASE_4: &str = "case-4";
    pub const CASE_5: &str = "case-5";
    pub const CASE_6: &str = "case-6";
    pub const CASE_7: &str = "case-7";
    /// `D = p = 1 mod 8` with `(2/p)_4 (p/2)_4 = +1`.
    pub const PRIME_1_MOD_8: &str = "prime-1-mod-8";
    /// `(p,q) = (7,1) mod 8`.
    pub const PAIR_7_1: &str = "pair-7-1";
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    TrivialZero,
    ProvenZero(TheoremTag),
    /// Proven under a hypothesis this crate cannot check.
    Conditional { theorem: TheoremTag, hypothesis: String },
    Open(String),
    OutOfScope,
}

impl Status {
    pub fn kind(&self) -> &'static str {
        match self {
            Status::TrivialZero => "TrivialZero",
            Status::ProvenZero(_) => "ProvenZero",
            Status::Conditional { .. } => "Conditional",
            Status::Open(_) => "Open",
            Status::OutOfScope => "OutOfScope",
        }
    }

    pub fn theorem(&self) -> Option<TheoremTag> {
        match self {
            Status::TrivialZero => Some(TheoremTag::Trivial),
            Status::ProvenZero(t) | Status::Conditional { theorem: t, .. } => Some(*t),
            _ => None,
        }
    }

    /// Open-case tag, or the unchecked hypothesis of a conditional verdict.
    pub fn case(&self) -> Option<&str> {
        match self {
            Status::Open(c) => Some(c),
            Status::Conditional { hypothesis, .. } => Some(hypothesis),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Status::TrivialZero | Status::ProvenZero(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::TrivialZero => write!(f, "TrivialZero"),
            Status::ProvenZero(t) => write!(f, "ProvenZero({t})"),
            Status::Conditional { theorem, hypothesis } => write!(f, "Conditional({theorem}, {hypothesis})"),
            Status::Open(c) => write!(f, "Open({c})"),
            Status::OutOfScope => write!(f, "OutOfScope"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub name: String,
    pub value: String,
}

fn ev(name: impl Into<String>, value: impl fmt::Display) -> Evidence {
    Evidence { name: name.into(), value: value.to_string() }
}

/// A classification outcome. `d` is the radicand after normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "VerdictRecord", try_from = "VerdictRecord")]
pub struct Verdict {
    pub d: i64,
    pub normalized_from: Option<i64>,
    pub status: Status,
    pub evidence: Vec<Evidence>,
}

impl Verdict {
    pub fn evidence_value(&self, name: &str) -> Option<&str> {
        self.evidence.iter().find(|e| e.name == name).map(|e| e.value.as_str())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normalized_from {
            Some(orig) => write!(f, "D = {orig} (normalized to {}): {}", self.d, self.status)?,
            None => write!(f, "D = {}: {}", self.d, self.status)?,
        }
        for e in &self.evidence {
            write!(f, "\n  {} = {}", e.name, e.value)?;
        }
        Ok(())
    }
}

/// Flat wire form: `{d, normalized_from, status, theorem, case, evidence}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub d: i64,
    pub normalized_from: Option<i64>,
    pub status: String,
    pub theorem: Option<String>,
    pub case: Option<String>,
    pub evidence: Vec<Evidence>,
}

impl From<Verdict> for VerdictRecord {
    fn from(v: Verdict) -> Self {
        VerdictRecord {
            d: v.d,
            normalized_from: v.normalized_from,
            status: v.status.kind().to_string(),
            theorem: v.status.theorem().map(|t| t.name().to_string()),
            case: v.status.case().map(str::to_string),
            evidence: v.evidence,
        }
    }
}

impl TryFrom<VerdictRecord> for Verdict {
    type Error = String;

    fn try_from(r: VerdictRecord) -> std::result::Result<Self, String> {
        let tag = || -> std::result::Result<TheoremTag, String> {
            let name = r.theorem.as_deref().ok_or("missing theorem")?;
            TheoremTag::from_name(name).ok_or_else(|| format!("unknown theorem {name}"))
        };
        let case = || r.case.clone().ok_or_else(|| "missing case".to_string());
        let status = match r.status.as_str() {
            "TrivialZero" => Status::TrivialZero,
            "ProvenZero" => Status::ProvenZero(tag()?),
            "Conditional" => Status::Conditional { theorem: tag()?, hypothesis: case()? },
            "Open" => Status::Open(case()?),
            "OutOfScope" => Status::OutOfScope,
            other => return Err(format!("unknown status {other}")),
        };
        Ok(Verdict { d: r.d, normalized_from: r.normalized_from, status, evidence: r.evidence })
    }
}

/// Halves an even radicand. `2` maps to `1`, which stands for `Q(sqrt 2)`.
pub fn normalize(d: i64) -> Result<(i64, bool)> {
    check_radicand(d)?;
    Ok(if d % 2 == 0 { (d / 2, true) } else { (d, false) })
}

/// The five hypotheses of the `(1, 9 mod 16)` vanishing theorem for an ordered pair.
/// A quartic symbol that is undefined makes its predicate false.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm11Hypotheses {
    pub p: u64,
    pub q: u64,
    pub p_1_mod_8: bool,
    pub q_9_mod_16: bool,
    pub p_over_q_is_minus_one: bool,
    pub quartic_product_is_minus_one: bool,
    pub some_quartic_is_minus_one: bool,
}

impl Thm11Hypotheses {
    pub fn all(&self) -> bool {
        self.bits().iter().all(|&b| b)
    }

    pub fn bits(&self) -> [bool; 5] {
        [
            self.p_1_mod_8,
            self.q_9_mod_16,
            self.p_over_q_is_minus_one,
            self.quartic_product_is_minus_one,
            self.some_quartic_is_minus_one,
        ]
    }

    pub const NAMES: [&'static str; 5] =
        ["p = 1 mod 8", "q = 9 mod 16", "(p/q) = -1", "(2/p)_4 (2/q)_4 (pq/2)_4 = -1", "(2/p)_4 = -1 or (2/q)_4 = -1"];

    pub fn evidence(&self) -> Vec<Evidence> {
        let mut out = vec![ev("p", self.p), ev("q", self.q)];
        out.extend(Self::NAMES.iter().zip(self.bits()).map(|(n, b)| ev(*n, b)));
        out
    }
}

/// Evaluates the hypotheses for the ordered pair `(p, q)`.
pub fn thm11_hypotheses(p: u64, q: u64) -> Thm11Hypotheses {
    let q2 = |l: u64| quartic_mod_p(2, l).ok();
    let (s_p, s_q) = (q2(p), q2(q));
    let pq = (p as i128 * q as i128) as i64;
    let product = match (s_p, s_q, quartic_over_2(pq).ok()) {
        (Some(a), Some(b), Some(c)) => a * b * c == -1,
        _ => false,
    };
    Thm11Hypotheses {
        p,
        q,
        p_1_mod_8: p % 8 == 1,
        q_9_mod_16: q % 16 == 9,
        p_over_q_is_minus_one: kronecker(p as i64, q as i64) == -1,
        quartic_product_is_minus_one: product,
        some_quartic_is_minus_one: s_p == Some(-1) || s_q == Some(-1),
    }
}

/// The ordering of `{a, b}` under which all hypotheses hold, preferring `(min, max)`.
pub fn thm11_ordering(a: u64, b: u64) -> Option<Thm11Hypotheses> {
    let (lo, hi) = (a.min(b), a.max(b));
    [thm11_hypotheses(lo, hi), thm11_hypotheses(hi, lo)].into_iter().find(|h| h.all())
}

/// All unordered pairs of primes below `bound` satisfying the hypotheses, sorted by `pq`.
pub fn search_thm11(bound: u64, workers: usize) -> Vec<Thm11Hypotheses> {
    let primes: Vec<u64> = (17..bound).filter(|&n| n % 8 == 1 && is_prime(n)).collect();
    let workers = workers.max(1);
    let primes = &primes;
    let mut found: Vec<Thm11Hypotheses> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for i in (w..primes.len()).step_by(workers) {
                        for &b in &primes[i + 1..] {
                            out.extend(thm11_ordering(primes[i], b));
                        }
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("search worker panicked")).collect()
    });
    found.sort_by_key(|h| (h.p * h.q, h.p.min(h.q)));
    found
}

/// The unit-square criterion for `F_1 = Q(sqrt 2, sqrt pq)` inside `K_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct F1SquareCriterion {
    /// `E(F_1) cap K_2^2 = E(F_1)^2`, i.e. `(2/p)_4 = -1` or `(2/q)_4 = -1`.
    pub holds: bool,
    /// `sqrt 2` is a norm from `F_1` to `Q(sqrt 2)`.
    pub sqrt2_is_norm: bool,
    /// `alpha` is a norm from `F_1` to `Q(sqrt 2)`.
    pub alpha_is_norm: bool,
}

pub fn f1_square_criterion(p: u64, q: u64) -> Result<F1SquareCriterion> {
    let h = thm11_hypotheses(p, q);
    if !(h.p_1_mod_8 && h.q_9_mod_16 && h.p_over_q_is_minus_one) || !is_prime(p) || !is_prime(q) {
        return Err(Error::PreconditionViolation(format!(
            "({p}, {q}) needs primes p = 1 mod 8, q = 9 mod 16, (p/q) = -1"
        )));
    }
    let (sp, sq) = (quartic_mod_p(2, p)?, quartic_mod_p(2, q)?);
    let (tp, tq) = (quartic_over_2(p as i64)?, quartic_over_2(q as i64)?);
    Ok(F1SquareCriterion {
        holds: sp == -1 || sq == -1,
        sqrt2_is_norm: sp == 1 && sq == 1,
        alpha_is_norm: tp == 1 && tq == 1,
    })
}

/// Classifies a squarefree radicand `D > 1`.
pub fn classify(d: i64) -> Result<Verdict> {
    let (dn, flagged) = normalize(d)?;
    let mut evidence = Vec::new();
    if flagged {
        evidence.push(ev("normalized", format!("{d} = 2 * {dn}")));
    }
    let status = if dn == 1 {
        evidence.push(ev("D = 2", true));
        Status::TrivialZero
    } else {
        let primes = prime_divisors(dn as u64);
        evidence.push(ev(
            "prime factors",
            primes.iter().map(|p| format!("{p} = {} mod 8", p % 8)).collect::<Vec<_>>().join(", "),
        ));
        match primes[..] {
            [p] => single_prime(p, &mut evidence)?,
            [a, b] => two_primes(a, b, &mut evidence)?,
            _ => Status::OutOfScope,
        }
    };
    Ok(Verdict { d: dn, normalized_from: flagged.then_some(d), status, evidence })
}

fn single_prime(p: u64, evidence: &mut Vec<Evidence>) -> Result<Status> {
    Ok(match p % 8 {
        5 => {
            evidence.push(ev("p = 5 mod 8", true));
            Status::TrivialZero
        }
        3 | 7 => {
            evidence.push(ev("p = 3 mod 4", true));
            Status::TrivialZero
        }
        _ => {
            let (a, b) = (quartic_mod_p(2, p)?, quartic_over_2(p as i64)?);
            evidence.push(ev("(2/p)_4", a));
            evidence.push(ev("(p/2)_4", b));
            if a * b == -1 {
                Status::ProvenZero(TheoremTag::OzakiTaya1)
            } else {
                Status::Open(open_case::PRIME_1_MOD_8.into())
            }
        }
    })
}

fn two_primes(a: u64, b: u64, evidence: &mut Vec<Evidence>) -> Result<Status> {
    // Order by residue mod 8 so each branch sees its roles in a fixed position.
    let (x, y) = if (a % 8, a) <= (b % 8, b) { (a, b) } else { (b, a) };
    Ok(match (x % 8, y % 8) {
        (3, 7) => {
            evidence.push(ev("(p,q) = (3,7) mod 8", true));
            Status::TrivialZero
        }
        (3, 3) => {
            evidence.push(ev("nu_2", "0"));
            Status::ProvenZero(TheoremTag::OzakiTaya2)
        }
        (3, 5) => {
            evidence.push(ev("nu_2", "> 0"));
            Status::ProvenZero(TheoremTag::OzakiTaya3)
        }
        (5, 7) => {
            evidence.push(ev("nu_2", "> 0"));
            Status::ProvenZero(TheoremTag::OzakiTaya4)
        }
        (5, 5) => {
            evidence.push(ev("nu_2", "> 0"));
            Status::ProvenZero(TheoremTag::OzakiTaya5)
        }
        (7, 7) => Status::Open(open_case::CASE_2.into()),
        (1, 7) => Status::Open(open_case::PAIR_7_1.into()),
        (1, 1) => pair_1_1(x, y, evidence),
        (1, 3) => pair_3_1(y, x, evidence)?,
        (1, 5) => pair_5_1(y, x, evidence)?,
        _ => unreachable!("odd primes"),
    })
}

fn pair_1_1(a: u64, b: u64, evidence: &mut Vec<Evidence>) -> Status {
    if let Some(h) = thm11_ordering(a, b) {
        evidence.extend(h.evidence());
        let crit = f1_square_criterion(h.p, h.q).expect("hypotheses imply the preconditions");
        evidence.push(ev("E(F_1) cap K_2^2 = E(F_1)^2", crit.holds));
        evidence.push(ev("q(K2) <= 2", true));
        if let Ok(u) = eps_image_mod8_auto((h.p * h.q) as i64) {
            evidence.push(ev("eps_D mod 8 in Q_2", u));
        }
        return Status::ProvenZero(TheoremTag::MainTheorem11);
    }
    for (p, q) in [(a, b), (b, a)] {
        let h = thm11_hypotheses(p, q);
        for (n, bit) in Thm11Hypotheses::NAMES.iter().zip(h.bits()) {
            evidence.push(ev(format!("[p={p}, q={q}] {n}"), bit));
        }
    }
    Status::Open(open_case::CASE_3.into())
}

fn pair_3_1(p: u64, q: u64, evidence: &mut Vec<Evidence>) -> Result<Status> {
    let qp = kronecker(q as i64, p as i64);
    let s = quartic_mod_p(2, q)?;
    evidence.push(ev("p", p));
    evidence.push(ev("q", q));
    evidence.push(ev("(q/p)", qp));
    evidence.push(ev("(2/q)_4", s));
    evidence.push(ev("q mod 16", q % 16));
    if qp == -1 && s == -1 {
        return Ok(Status::ProvenZero(TheoremTag::FukudaKomatsu6));
    }
    if qp == -1 && q % 16 == 9 && s == 1 {
        return Ok(Status::Conditional { theorem: TheoremTag::Kumakawa7, hypothesis: "rk_4(A_2) = 1".into() });
    }
    // Either (q/p) = 1, or (q/p) = -1 with (2/q)_4 = 1 and q = 1 mod 16.
    let disjunct = match (qp == 1, s == 1) {
        (true, true) => "(q/p) = 1 and 2^((q-1)/4) = 1 mod q",
        (true, false) => "(q/p) = 1",
        _ => "2^((q-1)/4) = 1 mod q with q = 1 mod 16",
    };
    evidence.push(ev("open disjunct", disjunct));
    Ok(Status::Open(open_case::CASE_1.into()))
}

fn pair_5_1(p: u64, q: u64, evidence: &mut Vec<Evidence>) -> Result<Status> {
    let (pi, qi) = (p as i64, q as i64);
    let pq = pi * qi;
    evidence.push(ev("p", p));
    evidence.push(ev("q", q));
    let leg = kronecker(pi, qi);
    evidence.push(ev("(p/q)", leg));
    if leg == -1 {
        let n = unit_norm(pq)?;
        evidence.push(ev("N(eps_D)", n));
        evidence.push(ev("also proven by", TheoremTag::Prop61_1));
        return Ok(Status::ProvenZero(TheoremTag::Cor32_1));
    }
    let (pq4, qp4) = (quartic_mod_p(pi, q)?, quartic_mod_p(qi, p)?);
    evidence.push(ev("(p/q)_4", pq4));
    evidence.push(ev("(q/p)_4", qp4));
    if pq4 == -1 && qp4 == -1 {
        return Ok(Status::ProvenZero(TheoremTag::Cor32_2));
    }
    let (two_q, q_two) = (quartic_mod_p(2, q)?, quartic_over_2(qi)?);
    evidence.push(ev("(2/q)_4", two_q));
    evidence.push(ev("(q/2)_4", q_two));
    if pq4 == 1 && qp4 == 1 {
        let n = unit_norm(pq)?;
        evidence.push(ev("N(eps_D)", n));
        if n == -1 {
            return Ok(Status::ProvenZero(TheoremTag::Cor32_3));
        }
        return Ok(Status::Open(if two_q == q_two { open_case::CASE_4 } else { open_case::CASE_5 }.into()));
    }
    // (p/q)_4 = -(q/p)_4 from here on.
    let n2 = unit_norm(2 * pq)?;
    evidence.push(ev("q mod 16", q % 16));
    evidence.push(ev("N(eps_2D)", n2));
    if n2 == -1 {
        return Ok(Status::ProvenZero(if q % 16 == 1 { TheoremTag::Cor32_4 } else { TheoremTag::Prop61_2 }));
    }
    Ok(Status::Open(
        if two_q == q_two {
            open_case::CASE_4
        } else if q % 16 == 1 {
            open_case::CASE_6
        } else {
            open_case::CASE_7
        }
        .into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_squarefree;

    fn status(d: i64) -> Status {
        classify(d).unwrap().status
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(34).unwrap(), (17, true));
        assert_eq!(normalize(697).unwrap(), (697, false));
        assert_eq!(normalize(2).unwrap(), (1, true));
        assert!(matches!(normalize(12), Err(Error::NotSquarefree(12))));
    }

    #[test]
    fn classify_examples() {
        for d in [2, 5, 7, 21] {
            assert_eq!(status(d), Status::TrivialZero, "{d}");
        }
        let v = classify(15).unwrap();
        assert_eq!(v.status, Status::ProvenZero(TheoremTag::OzakiTaya3));
        assert_eq!(v.evidence_value("nu_2"), Some("> 0"));
        assert_eq!(status(17), Status::ProvenZero(TheoremTag::OzakiTaya1));
        let v = classify(34).unwrap();
        assert_eq!((v.d, v.normalized_from), (17, Some(34)));
        assert_eq!(v.status, Status::ProvenZero(TheoremTag::OzakiTaya1));
        let v = classify(697).unwrap();
        assert_eq!(v.status, Status::ProvenZero(TheoremTag::MainTheorem11));
        assert_eq!(v.evidence_value("q(K2) <= 2"), Some("true"));
        assert_eq!(status(3977), Status::ProvenZero(TheoremTag::MainTheorem11));
        // (2/73)_4 (73/2)_4 = -1 but (2/113)_4 (113/2)_4 = 1
        assert_eq!(status(73), Status::ProvenZero(TheoremTag::OzakiTaya1));
        assert_eq!(status(113), Status::Open(open_case::PRIME_1_MOD_8.into()));
        assert_eq!(status(3 * 5 * 7), Status::OutOfScope);
        assert_eq!(status(7 * 23), Status::Open(open_case::CASE_2.into()));
    }

    #[test]
    fn pair_branches() {
        // (3,1): (17/3) = -1, (2/17)_4 = -1
        assert_eq!(status(51), Status::ProvenZero(TheoremTag::FukudaKomatsu6));
        // (3,1): (73/3) = 1
        assert_eq!(status(3 * 73), Status::Open(open_case::CASE_1.into()));
        // (5,1): (5/17) = -1
        assert_eq!(status(85), Status::ProvenZero(TheoremTag::Cor32_1));
        assert_eq!(classify(85).unwrap().evidence_value("also proven by"), Some("Prop61_1"));
        // (1,7)
        assert_eq!(status(17 * 7), Status::Open(open_case::PAIR_7_1.into()));
        // (1,1) with (17/89) = 1
        assert_eq!(status(17 * 89), Status::Open(open_case::CASE_3.into()));
    }

    #[test]
    fn thm11_examples() {
        assert!(thm11_hypotheses(17, 41).all());
        assert!(thm11_hypotheses(97, 41).all());
        let h = thm11_hypotheses(73, 41);
        // (73/41) = (2/41)^5 = 1; 73 * 41 = 1 mod 16
        assert_eq!(h.bits(), [true, true, false, true, true]);
        assert!(!thm11_hypotheses(41, 17).all());
        assert_eq!(thm11_ordering(41, 17), Some(thm11_hypotheses(17, 41)));
    }

    #[test]
    fn search_examples() {
        assert!(search_thm11(41, 2).is_empty());
        let pairs: Vec<(u64, u64)> = search_thm11(100, 3).iter().map(|h| (h.p, h.q)).collect();
        assert_eq!(pairs, vec![(17, 41), (41, 89), (97, 41)]);
        assert_eq!(search_thm11(600, 1), search_thm11(600, 7));
    }

    #[test]
    fn f1_criterion_examples() {
        let c = f1_square_criterion(17, 41).unwrap();
        assert_eq!(c, F1SquareCriterion { holds: true, sqrt2_is_norm: false, alpha_is_norm: false });
        assert!(matches!(f1_square_criterion(17, 89), Err(Error::PreconditionViolation(_))));
        // (2/73)_4 = 1; 73 is 9 mod 16 so it can sit in the q slot.
        let partner = (3..2000u64)
            .filter(|&p| p % 8 == 1 && is_prime(p) && kronecker(p as i64, 73) == -1 && quartic_mod_p(2, p) == Ok(1))
            .next()
            .unwrap();
        assert!(!f1_square_criterion(partner, 73).unwrap().holds);
        assert!(f1_square_criterion(partner, 73).unwrap().sqrt2_is_norm);
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify(34).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["d"], 17);
        assert_eq!(j["normalized_from"], 34);
        assert_eq!(j["status"], "ProvenZero");
        assert_eq!(j["theorem"], "OzakiTaya1");
        assert!(j["case"].is_null());
        let back: Verdict = serde_json::from_value(j).unwrap();
        assert_eq!(back, v);
        let k = serde_json::to_value(classify(3 * 11 * 13 * 2).unwrap()).unwrap();
        assert_eq!(k["status"], "OutOfScope");
    }

    #[test]
    fn two_prime_radicands_are_in_scope() {
        for d in (3..10_000i64).filter(|&d| is_squarefree(d as u64) && prime_divisors(d as u64).len() == 2) {
            let s = status(d);
            assert_ne!(s, Status::OutOfScope, "{d}");
        }
    }

    #[test]
    fn cor32_unit_conditions_match_scholz() {
        for d in (3..20_000i64).filter(|&d| is_squarefree(d as u64)) {
            let v = classify(d).unwrap();
            match v.status {
                Status::ProvenZero(TheoremTag::Cor32_1) | Status::ProvenZero(TheoremTag::Cor32_3) => {
                    assert_eq!(v.evidence_value("N(eps_D)"), Some("-1"), "{d}");
                    assert_eq!(unit_norm(v.d).unwrap(), -1);
                }
                Status::ProvenZero(TheoremTag::Cor32_4) => {
                    assert_eq!(unit_norm(2 * v.d).unwrap(), -1, "{d}");
                    assert_eq!(v.evidence_value("q mod 16"), Some("1"));
                }
                Status::ProvenZero(TheoremTag::Cor32_2) => {
                    assert_eq!(v.evidence_value("(p/q)_4"), Some("-1"));
                    assert_eq!(unit_norm(v.d).unwrap(), -1, "{d}");
                }
                _ => {}
            }
        }
    }
}
