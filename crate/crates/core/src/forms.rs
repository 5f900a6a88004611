//! Narrow class groups of real quadratic fields as cycles of reduced
//! indefinite binary quadratic forms under Gauss composition.
//!
//! A class is a cycle of reduced forms under the rho operator. The group
//! law composes two representatives, reduces, and looks up the cycle.
//! Structure comes from element orders, which is plenty below the class
//! number cap.

use std::collections::HashMap;
use std::fmt;

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, is_squarefree};
use crate::error::{Error, Result};

/// Largest narrow class number [`narrow_class_group`] will build.
pub const DEFAULT_CLASS_CAP: usize = 1 << 14;

/// `a x^2 + b xy + c y^2`, discriminant `b^2 - 4ac`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndefiniteForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for IndefiniteForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl IndefiniteForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `|sqrt(disc) - 2|a|| < b < sqrt(disc)`, decided with `r = isqrt(disc)`.
    pub fn is_reduced(&self) -> bool {
        let r = isqrt(self.discriminant());
        let two_a = 2 * self.a.abs();
        self.b > 0 && self.b <= r && two_a - self.b <= r && self.b + two_a > r
    }

    /// `(a, b, c) -> (c, b', a')` with `b' = -b (mod 2c)` normalized against
    /// `|c|`; a reduced form maps to the next form of its cycle.
    pub fn rho(&self) -> Self {
        let disc = self.discriminant();
        let r = isqrt(disc);
        let c = self.c;
        let two_c = 2 * c.abs();
        let b_next = if c.abs() <= r {
            // largest b' = -b (mod 2|c|) with b' < sqrt(disc)
            r - (r + self.b).rem_euclid(two_c)
        } else {
            // b' in (-|c|, |c|]
            let t = (-self.b).rem_euclid(two_c);
            if t > c.abs() { t - two_c } else { t }
        };
        let a_next = (b_next * b_next - disc) / (4 * c);
        Self { a: c, b: b_next, c: a_next }
    }

    /// Applies [`rho`](Self::rho) until the form is reduced.
    pub fn reduce(&self) -> Self {
        let mut f = *self;
        while !f.is_reduced() {
            f = f.rho();
        }
        f
    }

    /// A properly equivalent form with positive leading coefficient.
    fn with_positive_a(&self) -> Self {
        if self.a > 0 {
            *self
        } else {
            debug_assert!(self.c > 0);
            Self { a: self.c, b: -self.b, c: self.a }
        }
    }
}

fn isqrt(n: i64) -> i64 {
    (n as u64).sqrt() as i64
}

/// `a, b, c` with `a*x + b*y + c*z = gcd(x, y, z)`.
fn bezout3(x: i128, y: i128, z: i128) -> (i128, i128, i128, i128) {
    let e1 = x.extended_gcd(&y);
    let e2 = e1.gcd.extended_gcd(&z);
    (e2.gcd, e2.x * e1.x, e2.x * e1.y, e2.y)
}

/// Gauss composition of two forms of the same discriminant (the result is
/// not reduced).
pub fn compose(f: &IndefiniteForm, g: &IndefiniteForm) -> IndefiniteForm {
    let disc = f.discriminant() as i128;
    debug_assert_eq!(f.discriminant(), g.discriminant());
    let f = f.with_positive_a();
    let g = g.with_positive_a();
    let (a1, b1) = (f.a as i128, f.b as i128);
    let (a2, b2, c2) = (g.a as i128, g.b as i128, g.c as i128);
    let s = (b1 + b2) / 2;
    let n = s - b2;
    let (d, _u, v, w) = bezout3(a1, a2, s);
    let a3 = a1 * a2 / (d * d);
    let b3 = (b2 + 2 * (a2 / d) * (v * n - w * c2)).rem_euclid(2 * a3);
    debug_assert_eq!((b3 * b3 - disc).rem_euclid(4 * a3), 0);
    let c3 = (b3 * b3 - disc) / (4 * a3);
    IndefiniteForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }
}

/// Positive fundamental discriminant check.
pub fn is_fundamental_discriminant(disc: i64) -> bool {
    if disc <= 1 {
        return false;
    }
    match disc.rem_euclid(4) {
        1 => is_squarefree(disc as u64),
        0 => {
            let m = disc / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m as u64)
        }
        _ => false,
    }
}

/// Elementary divisors of a finite abelian 2-group, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup2Part {
    pub divisors: Vec<u64>,
    pub order: u64,
}

impl AbelianGroup2Part {
    pub fn new(mut divisors: Vec<u64>) -> Self {
        divisors.retain(|&d| d > 1);
        divisors.sort_unstable_by(|a, b| b.cmp(a));
        let order = divisors.iter().product();
        Self { divisors, order }
    }

    pub fn two_rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn four_rank(&self) -> usize {
        self.divisors.iter().filter(|&&d| d >= 4).count()
    }

    pub fn eight_rank(&self) -> usize {
        self.divisors.iter().filter(|&&d| d >= 8).count()
    }
}

impl fmt::Display for AbelianGroup2Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.divisors)
    }
}

pub fn two_rank(g: &AbelianGroup2Part) -> usize {
    g.two_rank()
}

pub fn four_rank(g: &AbelianGroup2Part) -> usize {
    g.four_rank()
}

pub fn eight_rank(g: &AbelianGroup2Part) -> usize {
    g.eight_rank()
}

/// The narrow class group of a positive fundamental discriminant.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    pub discriminant: i64,
    /// One reduced form per class; index 0 is the principal class.
    pub representatives: Vec<IndefiniteForm>,
    /// Elementary divisors of the whole group, each a prime power,
    /// largest first.
    pub elementary_divisors: Vec<u64>,
    pub two_part: AbelianGroup2Part,
    cycle_of: HashMap<IndefiniteForm, usize>,
    orders: Vec<u64>,
}

impl FormClassGroup {
    pub fn class_number(&self) -> usize {
        self.representatives.len()
    }

    /// Class of any form of this discriminant.
    pub fn class_of(&self, f: &IndefiniteForm) -> usize {
        self.cycle_of[&f.reduce()]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.class_of(&compose(&self.representatives[x], &self.representatives[y]))
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (x, 0usize);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self, x: usize) -> u64 {
        self.orders[x]
    }

    /// The class of forms representing `-1`; trivial iff the fundamental
    /// unit has norm `-1`.
    pub fn minus_one_class(&self) -> usize {
        let b0 = self.discriminant.rem_euclid(2);
        self.class_of(&IndefiniteForm::new(-1, b0, (self.discriminant - b0 * b0) / 4))
    }

    /// Class of a form `(p, b, c)` for a prime `p` with `(disc/p) != -1`.
    pub fn class_of_prime(&self, p: u64) -> Option<usize> {
        let disc = self.discriminant as i128;
        let four_p = 4 * p as i128;
        (0..2 * p as i128)
            .find(|&b| (b * b - disc).rem_euclid(four_p) == 0)
            .map(|b| {
                let c = (b * b - disc) / four_p;
                self.class_of(&IndefiniteForm::new(p as i64, b as i64, c as i64))
            })
    }

    /// 2-part of the quotient by the class of forms representing `-1`:
    /// the wide (ordinary) class group.
    pub fn wide_two_part(&self) -> AbelianGroup2Part {
        let j = self.minus_one_class();
        let subgroup: Vec<usize> = if j == 0 { vec![0] } else { vec![0, j] };
        let quotient_order = (self.class_number() / subgroup.len()) as u64;
        let mut seen = vec![false; self.class_number()];
        let mut orders = Vec::new();
        for x in 0..self.class_number() {
            if seen[x] {
                continue;
            }
            for &h in &subgroup {
                seen[self.mul(x, h)] = true;
            }
            let in_h = |y: usize| subgroup.contains(&y);
            let mut n = quotient_order;
            for (l, _) in factor(quotient_order.max(1)) {
                while n % l == 0 && in_h(self.pow(x, n / l)) {
                    n /= l;
                }
            }
            orders.push(n);
        }
        AbelianGroup2Part::new(prime_part_divisors(&orders, 2))
    }

    /// Wide class number.
    pub fn wide_class_number(&self) -> usize {
        if self.minus_one_class() == 0 {
            self.class_number()
        } else {
            self.class_number() / 2
        }
    }
}

/// Elementary divisors of the `l`-part of a finite abelian group, given the
/// order of every element (each element listed once).
fn prime_part_divisors(orders: &[u64], l: u64) -> Vec<u64> {
    // count[k] = #{x : x^(l^k) = 1}, which is l^(sum_i min(k, e_i))
    let mut exps_by_k = Vec::new();
    let mut k = 0u32;
    loop {
        let lk = l.pow(k);
        let count = orders.iter().filter(|&&o| lk % o == 0).count() as u64;
        let mut e = 0u32;
        let mut c = count;
        while c > 1 {
            c /= l;
            e += 1;
        }
        if exps_by_k.last() == Some(&e) {
            break;
        }
        exps_by_k.push(e);
        k += 1;
    }
    // number of cyclic factors with exponent >= k is exps[k] - exps[k-1]
    let mut out = Vec::new();
    for k in 1..exps_by_k.len() {
        let at_least_k = exps_by_k[k] - exps_by_k[k - 1];
        let at_least_next = exps_by_k.get(k + 1).map_or(0, |&n| n - exps_by_k[k]);
        for _ in 0..(at_least_k - at_least_next) {
            out.push(l.pow(k as u32));
        }
    }
    out
}

/// Every reduced primitive form of discriminant `disc`.
pub fn reduced_forms(disc: i64) -> Vec<IndefiniteForm> {
    let r = isqrt(disc);
    let mut out = Vec::new();
    let mut b = if disc % 2 == 0 { 2 } else { 1 };
    while b <= r {
        let m = (disc - b * b) / 4;
        let mut a = 1;
        while a * a <= m {
            if m % a == 0 {
                for aa in [a, m / a] {
                    for sa in [aa, -aa] {
                        let f = IndefiniteForm::new(sa, b, -m / sa);
                        if f.is_reduced() && f.is_primitive() {
                            out.push(f);
                        }
                    }
                    if a == m / a {
                        break;
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    out
}

pub fn narrow_class_group(disc: i64) -> Result<FormClassGroup> {
    narrow_class_group_with_cap(disc, DEFAULT_CLASS_CAP)
}

pub fn narrow_class_group_with_cap(disc: i64, cap: usize) -> Result<FormClassGroup> {
    if !is_fundamental_discriminant(disc) {
        return Err(Error::NonFundamentalDiscriminant(disc));
    }
    let b0 = disc % 2;
    let principal = IndefiniteForm::new(1, b0, (b0 - disc) / 4).reduce();

    let mut cycle_of = HashMap::new();
    let mut representatives = Vec::new();
    let mut forms = reduced_forms(disc);
    // walk the principal cycle first so it gets index 0
    let start = forms.iter().position(|f| *f == principal).expect("principal form is reduced");
    forms.swap(0, start);
    for f in forms {
        if cycle_of.contains_key(&f) {
            continue;
        }
        let idx = representatives.len();
        if idx >= cap {
            return Err(Error::TooLarge(format!("narrow class number of {disc} exceeds {cap}")));
        }
        representatives.push(f);
        let mut g = f;
        loop {
            cycle_of.insert(g, idx);
            g = g.rho();
            if g == f {
                break;
            }
        }
    }

    let mut group = FormClassGroup {
        discriminant: disc,
        representatives,
        elementary_divisors: Vec::new(),
        two_part: AbelianGroup2Part::new(Vec::new()),
        cycle_of,
        orders: Vec::new(),
    };
    let h = group.class_number() as u64;
    let primes: Vec<u64> = factor(h).into_iter().map(|(l, _)| l).collect();
    group.orders = (0..group.class_number())
        .map(|x| {
            let mut n = h;
            for &l in &primes {
                while n % l == 0 && group.pow(x, n / l) == 0 {
                    n /= l;
                }
            }
            n
        })
        .collect();
    let mut elementary = Vec::new();
    for &l in &primes {
        elementary.extend(prime_part_divisors(&group.orders, l));
    }
    elementary.sort_unstable_by(|a, b| b.cmp(a));
    group.two_part = AbelianGroup2Part::new(prime_part_divisors(&group.orders, 2));
    group.elementary_divisors = elementary;
    Ok(group)
}

/// 2-part of the wide class group.
pub fn wide_class_group(disc: i64) -> Result<AbelianGroup2Part> {
    Ok(narrow_class_group(disc)?.wide_two_part())
}
