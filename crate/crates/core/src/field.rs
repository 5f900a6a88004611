//! Real quadratic fields `Q(sqrt D)`: discriminant, fundamental unit,
//! its norm, and the two unit computations that feed the classifier
//! (the decomposition of the unit of `Q(sqrt 2D)` and the residue class
//! mod 8 of the unit under a 2-adic embedding).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{cf_quadratic, check_radicand, factor, hensel_sqrt_2adic, is_square_big, v2};
use crate::error::{Error, Result};

/// Default working precision, in bits, for 2-adic evaluation.
pub const DEFAULT_2ADIC_BITS: u32 = 64;
const MAX_2ADIC_BITS: u32 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticField {
    pub d: i64,
    pub discriminant: i64,
    pub ramified: Vec<u64>,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self> {
        check_radicand(d)?;
        let discriminant = if d % 4 == 1 { d } else { 4 * d };
        let ramified = factor(discriminant as u64).into_iter().map(|(p, _)| p).collect();
        Ok(Self { d, discriminant, ramified })
    }

    /// Number of primes dividing the discriminant.
    pub fn omega(&self) -> usize {
        self.ramified.len()
    }
}

/// `(x + y sqrt D) / 2` when `halved`, otherwise `x + y sqrt D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalUnit {
    pub d: i64,
    #[serde(with = "crate::decimal")]
    pub x: BigInt,
    #[serde(with = "crate::decimal")]
    pub y: BigInt,
    pub halved: bool,
    pub norm: i8,
}

impl FundamentalUnit {
    fn denominator(&self) -> BigInt {
        BigInt::from(if self.halved { 2 } else { 1 })
    }

    /// Norm evaluated from the coordinates.
    pub fn norm_from_coordinates(&self) -> BigInt {
        let den = self.denominator();
        (&self.x * &self.x - BigInt::from(self.d) * &self.y * &self.y) / (&den * &den)
    }
}

impl std::fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.halved {
            write!(f, "({} + {}*sqrt({}))/2", self.x, self.y, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
        }
    }
}

/// The fundamental unit of the maximal order, from one period of the continued
/// fraction of `sqrt D` (or of `(1 + sqrt D)/2` when `D = 1 (mod 4)`).
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit> {
    check_radicand(d)?;
    let half = d % 4 == 1;
    let cf = cf_quadratic(d, half)?;
    // convergents p_k/q_k of the generator through index l-1
    let (mut p0, mut p1) = (BigInt::one(), BigInt::from(cf.initial));
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    for &a in &cf.period[..cf.period_len() - 1] {
        let a = BigInt::from(a);
        (p0, p1) = (p1.clone(), &a * &p1 + &p0);
        (q0, q1) = (q1.clone(), &a * &q1 + &q0);
    }
    let (mut x, mut y, mut halved) = if half {
        // p - q * (1 - sqrt D)/2
        (BigInt::from(2) * &p1 - &q1, q1, true)
    } else {
        (p1, q1, false)
    };
    if halved && x.is_even() && y.is_even() {
        x /= 2;
        y /= 2;
        halved = false;
    }
    let expected = if cf.period_len() % 2 == 0 { 1 } else { -1 };
    let mut unit = FundamentalUnit { d, x, y, halved, norm: expected };
    let n = unit.norm_from_coordinates();
    assert_eq!(n, BigInt::from(expected), "unit of Q(sqrt {d}) has norm {n}, period parity says {expected}");
    unit.norm = expected;
    Ok(unit)
}

pub fn unit_norm(d: i64) -> Result<i8> {
    Ok(fundamental_unit(d)?.norm)
}

/// 2 splits in `Q(sqrt D)` exactly when `D = 1 (mod 8)`.
pub fn splits_at_2(d: i64) -> bool {
    d.rem_euclid(8) == 1
}

/// `eps_{2D} = r + s sqrt(2D)` with `r + sign = d1 s1^2` and `r - sign = 2 d2 s2^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epsilon2DDecomposition {
    pub d: i64,
    #[serde(with = "crate::decimal")]
    pub r: BigInt,
    #[serde(with = "crate::decimal")]
    pub s: BigInt,
    pub sign: i8,
    pub d1: i64,
    #[serde(with = "crate::decimal")]
    pub s1: BigInt,
    pub d2: i64,
    #[serde(with = "crate::decimal")]
    pub s2: BigInt,
}

impl Epsilon2DDecomposition {
    /// When `d1 = 1`, `z = s1 + s2 sqrt(2D)` squares to `2 eps_{2D}`; returns
    /// whether that holds.
    pub fn sqrt_two_eps_holds(&self) -> bool {
        let two_d = BigInt::from(2 * self.d);
        let z_x = &self.s1 * &self.s1 + &two_d * &self.s2 * &self.s2;
        let z_y = BigInt::from(2) * &self.s1 * &self.s2;
        z_x == BigInt::from(2) * &self.r && z_y == BigInt::from(2) * &self.s
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

fn exact_square_root(n: &BigInt) -> Option<BigInt> {
    is_square_big(n).then(|| n.sqrt())
}

/// Splits `r +- 1` for the unit `r + s sqrt(2D)` of `Q(sqrt 2D)`, `D` odd.
///
/// Both sign choices and every positive divisor `d1 | D` are tried; the
/// first match in the order (d1 ascending, sign `+` before `-`) is returned.
pub fn eps2d_decompose(d: i64) -> Result<Epsilon2DDecomposition> {
    check_radicand(d)?;
    if d % 2 == 0 {
        return Err(Error::NotSquarefree(2 * d));
    }
    let unit = fundamental_unit(2 * d)?;
    if unit.norm == -1 {
        return Err(Error::NormMinusOne(2 * d));
    }
    debug_assert!(!unit.halved);
    let (r, s) = (unit.x.abs(), unit.y.abs());
    for d1 in divisors(d as u64) {
        let d1 = d1 as i64;
        let d2 = d / d1;
        for sign in [1i8, -1] {
            let plus = &r + BigInt::from(sign);
            let minus = &r - BigInt::from(sign);
            let (q1, r1) = plus.div_rem(&BigInt::from(d1));
            let (q2, r2) = minus.div_rem(&BigInt::from(2 * d2));
            if !r1.is_zero() || !r2.is_zero() {
                continue;
            }
            if let (Some(s1), Some(s2)) = (exact_square_root(&q1), exact_square_root(&q2)) {
                if &s1 * &s2 == s {
                    return Ok(Epsilon2DDecomposition { d, r, s, sign, d1, s1, d2, s2 });
                }
            }
        }
    }
    Err(Error::DecompositionFailure {
        d,
        detail: format!("r = {r}, s = {s}: no d1 | {d} with r +- 1 = d1*s1^2, r -+ 1 = 2*(D/d1)*s2^2"),
    })
}

/// Residue mod 8 of the image of `eps_D` in `Z_2` under `sqrt D -> t`,
/// `t` the 2-adic root `= 1 (mod 4)` computed to `bits` bits.
pub fn eps_image_mod8(d: i64, bits: u32) -> Result<u8> {
    check_radicand(d)?;
    if !splits_at_2(d) {
        return Err(Error::InvalidInput(format!("{d} is not 1 mod 8")));
    }
    if bits < 6 {
        return Err(Error::InvalidInput(format!("2-adic precision {bits} < 6")));
    }
    let unit = fundamental_unit(d)?;
    let modulus = BigInt::one() << bits;
    let t = hensel_sqrt_2adic(&BigInt::from(d), bits)?;
    let num = (&unit.x + &unit.y * t).mod_floor(&modulus);
    if num.is_zero() {
        return Err(Error::PrecisionLoss { bits });
    }
    let v = v2(&num);
    let expected = if unit.halved { 1 } else { 0 };
    if v > bits - 3 {
        return Err(Error::PrecisionLoss { bits });
    }
    if v != expected {
        return Err(Error::InvalidInput(format!(
            "image of eps_{d} has 2-adic valuation {v}, expected {expected}"
        )));
    }
    let u = (num >> v).mod_floor(&BigInt::from(8));
    Ok(u.try_into().expect("residue mod 8"))
}

/// [`eps_image_mod8`] starting at [`DEFAULT_2ADIC_BITS`] and doubling the
/// precision on [`Error::PrecisionLoss`].
pub fn eps_image_mod8_auto(d: i64) -> Result<u8> {
    let mut bits = DEFAULT_2ADIC_BITS;
    loop {
        match eps_image_mod8(d, bits) {
            Err(Error::PrecisionLoss { .. }) if bits < MAX_2ADIC_BITS => bits *= 2,
            other => return other,
        }
    }
}
