//! Quadratic and quartic residue symbols.
//!
//! Every symbol is returned as an `i8` in `{-1, 0, 1}`; `0` only appears
//! when the arguments share a factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{factor, is_prime, legendre, pow_mod, rem_euclid_u, sqrt_mod_p};
use crate::error::{Error, Result};

/// The Kronecker symbol `(a/n)` for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i8 {
    kronecker_i128(a as i128, n as i128)
}

fn kronecker_i128(mut a: i128, mut n: i128) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut k: i8 = 1;
    let v = n.trailing_zeros();
    n >>= v;
    if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
        k = -k;
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n is now odd and positive: the Jacobi symbol loop.
    a = a.rem_euclid(n);
    while a != 0 {
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 && matches!(n % 8, 3 | 5) {
            k = -k;
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Kronecker symbol on arbitrary-precision arguments.
pub fn kronecker_big(a: &BigInt, n: &BigInt) -> i8 {
    if let (Some(a), Some(n)) = (a.to_i128(), n.to_i128()) {
        if a.unsigned_abs() < (1 << 100) && n.unsigned_abs() < (1 << 100) {
            return kronecker_i128(a, n);
        }
    }
    if n.is_zero() {
        return if a.abs() == BigInt::from(1) { 1 } else { 0 };
    }
    if a.is_even() && n.is_even() {
        return 0;
    }
    let mut k: i8 = 1;
    let v = n.trailing_zeros().unwrap_or(0);
    let mut n: BigInt = n >> v;
    let a8 = a.mod_floor(&BigInt::from(8)).to_u8().unwrap();
    if v % 2 == 1 && matches!(a8, 3 | 5) {
        k = -k;
    }
    if n.is_negative() {
        n = -n;
        if a.is_negative() {
            k = -k;
        }
    }
    let mut a = a.mod_floor(&n);
    while !a.is_zero() {
        let v = a.trailing_zeros().unwrap_or(0);
        a >>= v;
        let n8 = (&n % 8u32).to_u8().unwrap();
        if v % 2 == 1 && matches!(n8, 3 | 5) {
            k = -k;
        }
        if (&a % 4u32).to_u8() == Some(3) && n8 % 4 == 3 {
            k = -k;
        }
        let r = &n % &a;
        n = std::mem::replace(&mut a, r);
    }
    if n == BigInt::from(1) {
        k
    } else {
        0
    }
}

/// `(a/p)_4` for a prime `p = 1 (mod 4)` and `a` a nonzero square mod `p`.
pub fn quartic_mod_p(a: i64, p: u64) -> Result<i8> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(Error::UndefinedSymbol(format!("({a}/{p})_4: {p} is not a prime = 1 mod 4")));
    }
    if legendre(a, p) != 1 {
        return Err(Error::UndefinedSymbol(format!("({a}/{p})_4: {a} is not a nonzero square mod {p}")));
    }
    Ok(if pow_mod(rem_euclid_u(a, p), (p - 1) / 4, p) == 1 { 1 } else { -1 })
}

/// `(D/2)_4` for `D = 1 (mod 8)`: `+1` when `D = 1 (mod 16)`, `-1` when `D = 9 (mod 16)`.
pub fn quartic_over_2(d: i64) -> Result<i8> {
    match d.rem_euclid(16) {
        1 => Ok(1),
        9 => Ok(-1),
        _ => Err(Error::UndefinedSymbol(format!("({d}/2)_4 needs {d} = 1 mod 8"))),
    }
}

/// `(a/D)_4` extended multiplicatively over the prime factors of `D > 0`:
/// each odd prime `l` contributes `(a/l)_4` and a factor 2 contributes `(a/2)_4`.
pub fn quartic_multiplicative(a: i64, d: i64) -> Result<i8> {
    if d <= 0 {
        return Err(Error::UndefinedSymbol(format!("({a}/{d})_4: denominator must be positive")));
    }
    let mut acc = 1;
    for (l, e) in factor(d as u64) {
        let sym = if l == 2 { quartic_over_2(a)? } else { quartic_mod_p(a, l)? };
        if e % 2 == 1 {
            acc *= sym;
        }
    }
    Ok(acc)
}

/// `l(D) = (2/D)_4 (D/2)_4` for `D = 1 (mod 8)` whose prime factors are all `1 (mod 8)`.
pub fn l_symbol(d: i64) -> Result<i8> {
    Ok(quartic_multiplicative(2, d)? * quartic_over_2(d)?)
}

/// `((1 + sqrt 2)/p)` for a prime `p = 1 (mod 8)`, evaluated as the Legendre
/// symbol of `1 + s` where `s^2 = 2 (mod p)`.
pub fn scholz_symbol(p: u64) -> Result<i8> {
    if p % 8 != 1 || !is_prime(p) {
        return Err(Error::UndefinedSymbol(format!("((1+sqrt2)/{p}) needs a prime = 1 mod 8")));
    }
    let s = sqrt_mod_p(2, p)?;
    Ok(legendre(1 + s as i64, p))
}

/// Same symbol evaluated with the other square root `p - s`.
pub fn scholz_symbol_conjugate(p: u64) -> Result<i8> {
    scholz_symbol(p)?;
    let s = sqrt_mod_p(2, p)?;
    Ok(legendre(1 + (p - s) as i64, p))
}
