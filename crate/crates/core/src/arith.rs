//! Integer arithmetic underneath everything else: primality, factoring,
//! modular and 2-adic square roots, and periodic continued fractions of
//! real quadratic irrationals.
//!
//! Small quantities (primes, radicands, discriminants) live in machine
//! words with `u128` intermediates; anything that grows without bound
//! (unit coefficients, 2-adic expansions) is a `BigInt`.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Witnesses that make Miller-Rabin exact on every `u64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Rounds used for inputs that do not fit in a machine word.
pub const PROBABLE_PRIME_ROUNDS: usize = 40;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed value into `0..m`.
#[inline]
pub fn rem_euclid_u(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

fn strong_probable_prime(n: u64, a: u64) -> bool {
    let a = a % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    MR_WITNESSES.iter().all(|&a| strong_probable_prime(n, a))
}

/// Primality for arbitrary-size inputs. Exact below 2^64; beyond that a
/// strong-probable-prime test with [`PROBABLE_PRIME_ROUNDS`] witnesses
/// drawn from a generator seeded by `n`, so the answer is reproducible.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let seed = n.iter_u64_digits().fold(0u64, |h, w| h.rotate_left(7) ^ w);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two = BigUint::from(2u32);
    'witness: for _ in 0..PROBABLE_PRIME_ROUNDS {
        let a = BigUint::from(rng.random_range(2u64..u64::MAX)) % &n_minus_1;
        if a < two {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, m) = (2u64, 1u64, 1u64, 128u64);
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = (1..)
        .find_map(|c| pollard_brent(n, c))
        .expect("Pollard rho always finds a factor of a composite");
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
/// `factor(1)` is empty; `factor(0)` is not defined and panics.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor(0)");
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    split_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> usize {
    factor(n).len()
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factor(n).iter().all(|&(_, e)| e == 1)
}

/// Validates a radicand `D > 1` squarefree.
pub fn check_radicand(d: i64) -> Result<u64> {
    if d > 1 && is_squarefree(d as u64) {
        Ok(d as u64)
    } else {
        Err(Error::NotSquarefree(d))
    }
}

pub fn is_square_u64(n: u64) -> bool {
    let r = n.sqrt();
    r * r == n
}

pub fn is_square_big(n: &BigInt) -> bool {
    if n.sign() == num_bigint::Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Legendre symbol by Euler's criterion; `p` an odd prime.
pub fn legendre(a: i64, p: u64) -> i8 {
    match pow_mod(rem_euclid_u(a, p), (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// The smaller square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod_p(a: i64, p: u64) -> Result<u64> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if legendre(a, p) != 1 {
        return Err(Error::NotAResidue { a, p });
    }
    let a = rem_euclid_u(a, p);
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let z = (2..p).find(|&z| legendre(z as i64, p) == -1).expect("p is an odd prime");
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    };
    Ok(root.min(p - root))
}

/// Lifts a simple root `r` of `x^2 = a (mod p)` to a root modulo `p^k`
/// (Newton iteration; `p` odd, `a` prime to `p`).
pub fn hensel_sqrt_mod_prime_power(a: &BigInt, r: u64, p: u64, k: u32) -> BigInt {
    let modulus = BigInt::from(p).pow(k);
    let mut s = BigInt::from(r);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = BigInt::from(p).pow(prec);
        let two_s = (&s * 2u32).mod_floor(&m);
        let inv = mod_inverse(&two_s, &m).expect("2s is a unit modulo p^k");
        s = (&s - (&s * &s - a) * inv).mod_floor(&m);
    }
    s.mod_floor(&modulus)
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// The 2-adic square root of `a` that is `= 1 (mod 4)`, truncated modulo `2^k`.
///
/// Requires `a = 1 (mod 8)`. The result is the reduction of the true root in
/// the 2-adic integers, so the answers for different `k` agree on common bits.
pub fn hensel_sqrt_2adic(a: &BigInt, k: u32) -> Result<BigInt> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("2-adic precision {k} < 3")));
    }
    if a.mod_floor(&BigInt::from(8)) != BigInt::one() {
        return Err(Error::NoTwoAdicRoot(a.to_string()));
    }
    // s^2 = a mod 2^m with s = 1 mod 4 pins the true root mod 2^(m-1);
    // lift to m = k + 1.
    let mut s = BigInt::one();
    for m in 3..=k {
        let modulus = BigInt::one() << (m + 1);
        if !(&s * &s - a).mod_floor(&modulus).is_zero() {
            s += BigInt::one() << (m - 1);
        }
    }
    Ok(s.mod_floor(&(BigInt::one() << k)))
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(n: &BigInt) -> u32 {
    n.trailing_zeros().map(|t| t as u32).unwrap_or(u32::MAX)
}

/// p-adic valuation of a nonzero integer.
pub fn vp(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Periodic continued fraction of `sqrt(D)` or `(1 + sqrt(D)) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub radicand: u64,
    pub half: bool,
    pub initial: i64,
    pub period: Vec<i64>,
}

impl CfExpansion {
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Checks the shape every such expansion has: the period ends in
    /// `2*a0` (or `2*a0 - 1` for the half-integral generator) and the
    /// terms before it read the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let Some((&last, body)) = self.period.split_last() else {
            return false;
        };
        let expected_last = if self.half { 2 * self.initial - 1 } else { 2 * self.initial };
        last == expected_last && body.iter().eq(body.iter().rev())
    }

    /// Partial quotients `a0, a1, ..., a_l` through one full period.
    pub fn terms(&self) -> impl Iterator<Item = i64> + '_ {
        std::iter::once(self.initial).chain(self.period.iter().copied())
    }
}

/// Continued-fraction expansion of a real quadratic generator.
///
/// `use_half` selects `(1 + sqrt(D)) / 2` and is only allowed for
/// `D = 1 (mod 4)`. The state `(P, Q)` of `(P + sqrt(D)) / Q` is tracked
/// exactly and the period closes when the state after the first step recurs.
pub fn cf_quadratic(d: i64, use_half: bool) -> Result<CfExpansion> {
    let radicand = check_radicand(d)?;
    if use_half && d % 4 != 1 {
        return Err(Error::InvalidInput(format!("(1+sqrt({d}))/2 requires D = 1 mod 4")));
    }
    let dd = d as i128;
    let root = (radicand as u128).sqrt() as i128;
    let (mut p, mut q): (i128, i128) = if use_half { (1, 2) } else { (0, 1) };
    let floor = |p: i128, q: i128| (p + root).div_euclid(q);

    let initial = floor(p, q);
    let step = |p: i128, q: i128, a: i128| {
        let p_next = a * q - p;
        let q_next = (dd - p_next * p_next) / q;
        (p_next, q_next)
    };
    (p, q) = step(p, q, initial);
    let start = (p, q);
    let mut period = Vec::new();
    loop {
        debug_assert!(q > 0);
        let a = floor(p, q);
        period.push(a as i64);
        (p, q) = step(p, q, a);
        if (p, q) == start {
            break;
        }
    }
    Ok(CfExpansion { radicand, half: use_half, initial: initial as i64, period })
}
