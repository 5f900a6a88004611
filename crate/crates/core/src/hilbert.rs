//! Hilbert symbols over the completions of `Q` and of `Q(sqrt 2)`.
//!
//! Over `Q(sqrt 2)` a finite odd place is either a split place `(p, s)`,
//! the prime above `p` containing `sqrt 2 - s`, or an inert place `p`.
//! The dyadic place `(sqrt 2)` is evaluated through the product formula;
//! [`dyadic_symbol_by_search`] computes the same symbol directly, by
//! looking for a solution of `a x^2 + b y^2 = z^2`, and serves as the
//! independent check.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor, hensel_sqrt_mod_prime_power, is_prime, legendre, sqrt_mod_p, vp};
use crate::error::{Error, Result};

/// `(-1)^(a b (N-1)/2) (u/p)^b (v/p)^a` for `r = p^a u`, `s = p^b v`,
/// with the unit characters already evaluated.
fn tame(a: i64, chi_u: i8, b: i64, chi_v: i8, n_minus_1_over_2: u64) -> i8 {
    let mut sign = if (a * b).rem_euclid(2) == 1 && n_minus_1_over_2 % 2 == 1 { -1 } else { 1 };
    if b.rem_euclid(2) == 1 {
        sign *= chi_u;
    }
    if a.rem_euclid(2) == 1 {
        sign *= chi_v;
    }
    sign
}

fn legendre_big(n: &BigInt, p: u64) -> i8 {
    let r = n.mod_floor(&BigInt::from(p)).to_i64().expect("residue fits");
    legendre(r, p)
}

/// `p`-adic valuation and unit character of a nonzero rational.
fn rational_local(r: &BigRational, p: u64) -> (i64, i8) {
    let (num, den) = (r.numer(), r.denom());
    let (vn, vd) = (vp(num, p), vp(den, p));
    let pb = BigInt::from(p);
    let un = num / pb.pow(vn);
    let ud = den / pb.pow(vd);
    (vn as i64 - vd as i64, legendre_big(&un, p) * legendre_big(&ud, p))
}

/// `(r, s)_p` for an odd prime `p`.
pub fn hilbert_qp(r: &BigRational, s: &BigRational, p: u64) -> Result<i8> {
    if r.is_zero() || s.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    let (a, chi_u) = rational_local(r, p);
    let (b, chi_v) = rational_local(s, p);
    Ok(tame(a, chi_u, b, chi_v, (p - 1) / 2))
}

/// Odd part of a nonzero rational reduced mod 8, and its 2-adic valuation.
fn dyadic_parts(r: &BigRational) -> (i64, u8) {
    let (num, den) = (r.numer(), r.denom());
    let vn = num.trailing_zeros().unwrap_or(0) as i64;
    let vd = den.trailing_zeros().unwrap_or(0) as i64;
    let un: BigInt = num >> vn;
    let ud: BigInt = den >> vd;
    // an odd m satisfies m^2 = 1 mod 8, so n/m = n*m mod 8
    let u = (un * ud).mod_floor(&BigInt::from(8)).to_u8().unwrap();
    (vn - vd, u)
}

/// `(r, s)_2`.
pub fn hilbert_q2(r: &BigRational, s: &BigRational) -> Result<i8> {
    if r.is_zero() || s.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let (a, u) = dyadic_parts(r);
    let (b, v) = dyadic_parts(s);
    let eps = |x: u8| ((x as u32 - 1) / 2) % 2;
    let omega = |x: u8| ((x as u32 * x as u32 - 1) / 8) % 2;
    let e = eps(u) * eps(v) + (a.rem_euclid(2) as u32) * omega(v) + (b.rem_euclid(2) as u32) * omega(u);
    Ok(if e % 2 == 0 { 1 } else { -1 })
}

/// `(r, s)_infinity`.
pub fn hilbert_real(r: &BigRational, s: &BigRational) -> Result<i8> {
    if r.is_zero() || s.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(if r.is_negative() && s.is_negative() { -1 } else { 1 })
}

fn odd_primes_of_rational(r: &BigRational, out: &mut BTreeSet<u64>) -> Result<()> {
    for n in [r.numer(), r.denom()] {
        let n = n.abs().to_u64().ok_or_else(|| Error::TooLarge(format!("cannot factor {n}")))?;
        out.extend(factor(n).into_iter().map(|(p, _)| p).filter(|&p| p != 2));
    }
    Ok(())
}

/// Symbols of `(r, s)` at every place where they can be nontrivial:
/// `(place, value)` with place `0` standing for the real place.
pub fn hilbert_q_local_symbols(r: &BigRational, s: &BigRational) -> Result<Vec<(u64, i8)>> {
    let mut primes = BTreeSet::new();
    odd_primes_of_rational(r, &mut primes)?;
    odd_primes_of_rational(s, &mut primes)?;
    let mut out = vec![(0, hilbert_real(r, s)?), (2, hilbert_q2(r, s)?)];
    for p in primes {
        out.push((p, hilbert_qp(r, s, p)?));
    }
    Ok(out)
}

/// Whether the local symbols of `(r, s)` over all places of `Q` multiply to 1.
pub fn hilbert_q_product_check(r: &BigRational, s: &BigRational) -> Result<bool> {
    Ok(hilbert_q_local_symbols(r, s)?.iter().map(|&(_, v)| v).product::<i8>() == 1)
}

/// `x + y sqrt 2` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Q1Element {
    pub x: BigRational,
    pub y: BigRational,
}

impl Q1Element {
    pub fn new(x: i64, y: i64) -> Self {
        Self { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    pub fn from_rationals(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        Self { x: self.x.clone(), y: -self.y.clone() }
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - BigRational::from_integer(2.into()) * &self.y * &self.y
    }

    pub fn mul(&self, other: &Self) -> Self {
        let two = BigRational::from_integer(2.into());
        Self {
            x: &self.x * &other.x + two * &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        Self { x: &self.x * &k, y: &self.y * &k }
    }

    /// `(X, Y, d)` with `self = (X + Y sqrt 2) / d`, `d > 0` minimal.
    fn integral(&self) -> (BigInt, BigInt, BigInt) {
        let d = self.x.denom().lcm(self.y.denom());
        let x = self.x.numer() * (&d / self.x.denom());
        let y = self.y.numer() * (&d / self.y.denom());
        (x, y, d)
    }

    /// Sign of `x + sign * y sqrt 2`.
    fn embedding_sign(&self, sign: i8) -> i8 {
        let y = if sign > 0 { self.y.clone() } else { -self.y.clone() };
        let (sx, sy) = (self.x.signum(), y.signum());
        if sy.is_zero() || sx == sy {
            return if sx.is_negative() || (sx.is_zero() && sy.is_negative()) { -1 } else { 1 };
        }
        if sx.is_zero() {
            return if sy.is_negative() { -1 } else { 1 };
        }
        // opposite signs: compare x^2 with 2 y^2
        let x_dominates = &self.x * &self.x > BigRational::from_integer(2.into()) * &y * &y;
        let dominant_negative = if x_dominates { sx.is_negative() } else { sy.is_negative() };
        if dominant_negative { -1 } else { 1 }
    }
}

impl fmt::Display for Q1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt(2)", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Q1Place {
    /// The prime above `p = +-1 (mod 8)` containing `sqrt 2 - s`.
    Split { p: u64, s: u64 },
    Inert { p: u64 },
    /// The prime `(sqrt 2)` above 2.
    Ramified,
    /// `sqrt 2 -> +1.414...`
    RealPlus,
    /// `sqrt 2 -> -1.414...`
    RealMinus,
}

impl fmt::Display for Q1Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q1Place::Split { p, s } => write!(f, "({p}, sqrt2-{s})"),
            Q1Place::Inert { p } => write!(f, "({p})"),
            Q1Place::Ramified => write!(f, "(sqrt2)"),
            Q1Place::RealPlus => write!(f, "real+"),
            Q1Place::RealMinus => write!(f, "real-"),
        }
    }
}

/// The places of `Q(sqrt 2)` above a rational prime, split pairs ordered
/// with the smaller square root of 2 first.
pub fn q1_places_above(p: u64) -> Result<Vec<Q1Place>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    Ok(match p % 8 {
        _ if p == 2 => vec![Q1Place::Ramified],
        1 | 7 => {
            let s = sqrt_mod_p(2, p)?;
            vec![Q1Place::Split { p, s }, Q1Place::Split { p, s: p - s }]
        }
        _ => vec![Q1Place::Inert { p }],
    })
}

/// Valuation and unit character of `alpha` at an odd finite place.
fn q1_odd_local(alpha: &Q1Element, place: Q1Place) -> (i64, i8) {
    let (x, y, d) = alpha.integral();
    let (vd, dchi) = rational_local(&BigRational::from_integer(d), place_prime(place));
    match place {
        Q1Place::Split { p, s } => {
            let norm = &x * &x - BigInt::from(2) * &y * &y;
            let k = vp(&norm, p) + 1;
            let pk = BigInt::from(p).pow(k);
            let lifted = hensel_sqrt_mod_prime_power(&BigInt::from(2), s, p, k);
            let t = (&x + &y * lifted).mod_floor(&pk);
            let v = vp(&t, p);
            debug_assert!(v < k);
            let unit = t / BigInt::from(p).pow(v);
            (v as i64 - vd, legendre_big(&unit, p) * dchi)
        }
        Q1Place::Inert { p } => {
            let v = vp(&x, p).min(vp(&y, p));
            let pv = BigInt::from(p).pow(v);
            let (ux, uy) = (&x / &pv, &y / &pv);
            // F_p* lies in the squares of F_{p^2}, so d contributes nothing
            let unit_norm = &ux * &ux - BigInt::from(2) * &uy * &uy;
            (v as i64 - vd, legendre_big(&unit_norm, p))
        }
        _ => unreachable!("not an odd finite place"),
    }
}

fn place_prime(place: Q1Place) -> u64 {
    match place {
        Q1Place::Split { p, .. } | Q1Place::Inert { p } => p,
        _ => 2,
    }
}

/// Odd primes below every place where a symbol of `(alpha, beta)` can be
/// nontrivial apart from the dyadic one.
fn q1_support(alpha: &Q1Element, beta: &Q1Element) -> Result<BTreeSet<u64>> {
    let mut primes = BTreeSet::new();
    for e in [alpha, beta] {
        let (x, y, d) = e.integral();
        let norm = &x * &x - BigInt::from(2) * &y * &y;
        for n in [norm, d] {
            let n = n.abs().to_u64().ok_or_else(|| Error::TooLarge(format!("cannot factor {n}")))?;
            primes.extend(factor(n).into_iter().map(|(p, _)| p).filter(|&p| p != 2));
        }
    }
    Ok(primes)
}

/// `(alpha, beta)_v` over `Q(sqrt 2)`.
pub fn hilbert_q1(alpha: &Q1Element, beta: &Q1Element, place: Q1Place) -> Result<i8> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroArgument);
    }
    match place {
        Q1Place::RealPlus | Q1Place::RealMinus => {
            let sign = if place == Q1Place::RealPlus { 1 } else { -1 };
            Ok(if alpha.embedding_sign(sign) < 0 && beta.embedding_sign(sign) < 0 { -1 } else { 1 })
        }
        Q1Place::Split { p, s } => {
            if (s * s) % p != 2 % p {
                return Err(Error::InvalidInput(format!("{s}^2 != 2 mod {p}")));
            }
            let (a, chi_u) = q1_odd_local(alpha, place);
            let (b, chi_v) = q1_odd_local(beta, place);
            Ok(tame(a, chi_u, b, chi_v, (p - 1) / 2))
        }
        Q1Place::Inert { p } => {
            let (a, chi_u) = q1_odd_local(alpha, place);
            let (b, chi_v) = q1_odd_local(beta, place);
            Ok(tame(a, chi_u, b, chi_v, (p * p - 1) / 2))
        }
        Q1Place::Ramified => {
            let mut acc = 1;
            for (_, v) in q1_local_symbols_off_dyadic(alpha, beta)? {
                acc *= v;
            }
            Ok(acc)
        }
    }
}

/// Symbols at the real places and at every odd place where they may be
/// nontrivial.
pub fn q1_local_symbols_off_dyadic(alpha: &Q1Element, beta: &Q1Element) -> Result<Vec<(Q1Place, i8)>> {
    let mut out = Vec::new();
    for place in [Q1Place::RealPlus, Q1Place::RealMinus] {
        out.push((place, hilbert_q1(alpha, beta, place)?));
    }
    for p in q1_support(alpha, beta)? {
        for place in q1_places_above(p)? {
            out.push((place, hilbert_q1(alpha, beta, place)?));
        }
    }
    Ok(out)
}

/// `a + b sqrt 2` with integer coordinates, for the dyadic search.
type Zs2 = (i128, i128);

fn zs2_mul(u: Zs2, v: Zs2) -> Zs2 {
    (u.0 * v.0 + 2 * u.1 * v.1, u.0 * v.1 + u.1 * v.0)
}

/// `sqrt 2`-adic valuation of a nonzero element.
fn zs2_val(u: Zs2) -> u32 {
    let va = if u.0 == 0 { u32::MAX } else { 2 * u.0.trailing_zeros() };
    let vb = if u.1 == 0 { u32::MAX } else { 2 * u.1.trailing_zeros() + 1 };
    va.min(vb)
}

/// Divides out the largest even power of `sqrt 2`, leaving valuation 0 or 1.
fn zs2_strip_squares(mut u: Zs2) -> Zs2 {
    while u.0 % 2 == 0 && u.1 % 2 == 0 {
        u = (u.0 / 2, u.1 / 2);
    }
    u
}

/// Unit squares of `Z_2[sqrt 2]` reduced mod `4 sqrt 2` as `(a mod 8, b mod 4)`.
fn unit_square_classes() -> BTreeSet<(i128, i128)> {
    let mut out = BTreeSet::new();
    for x in (1..8).step_by(2) {
        for y in 0..4 {
            let (a, b) = zs2_mul((x, y), (x, y));
            out.insert((a.rem_euclid(8), b.rem_euclid(4)));
        }
    }
    out
}

fn zs2_is_square(u: Zs2, squares: &BTreeSet<(i128, i128)>) -> bool {
    if u == (0, 0) {
        return false;
    }
    let t = zs2_val(u);
    if t % 2 == 1 {
        return false;
    }
    // 2 = sqrt2^2, so dividing by 2 preserves the square class
    let mut u = u;
    for _ in 0..t / 2 {
        u = (u.0 / 2, u.1 / 2);
    }
    squares.contains(&(u.0.rem_euclid(8), u.1.rem_euclid(4)))
}

/// Residues of the search grid, `sqrt 2`-adic precision `2 * SEARCH_BITS`.
const SEARCH_BITS: u32 = 7;

/// `(alpha, beta)` at the dyadic place by searching for `x, y` with
/// `alpha x^2 + beta y^2` a nonzero square in `Q_2(sqrt 2)`.
///
/// Any witness found is an exact solution; a `-1` answer relies on the
/// grid being fine enough, which holds once both arguments are reduced to
/// valuation 0 or 1.
pub fn dyadic_symbol_by_search(alpha: &Q1Element, beta: &Q1Element) -> Result<i8> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let to_zs2 = |e: &Q1Element| -> Result<Zs2> {
        let (x, y, d) = e.integral();
        // multiplying by d^2 keeps the square class
        let (x, y) = (x * &d, y * &d);
        match (x.to_i128(), y.to_i128()) {
            (Some(x), Some(y)) if x.abs() < 1 << 40 && y.abs() < 1 << 40 => Ok((x, y)),
            _ => Err(Error::TooLarge(format!("{e} is too large for the dyadic search"))),
        }
    };
    let a = zs2_strip_squares(to_zs2(alpha)?);
    let b = zs2_strip_squares(to_zs2(beta)?);
    let squares = unit_square_classes();
    let minus_ab = zs2_mul(a, b);
    if zs2_is_square((-minus_ab.0, -minus_ab.1), &squares) {
        return Ok(1);
    }
    let n = 1i128 << SEARCH_BITS;
    for u in 0..n {
        for v in 0..n {
            let t = (u, v);
            let t2 = zs2_mul(t, t);
            // x = 1, y = t
            let w = zs2_mul(b, t2);
            if zs2_is_square((a.0 + w.0, a.1 + w.1), &squares) {
                return Ok(1);
            }
            // y = 1, x = t with t in the maximal ideal
            if u % 2 == 0 {
                let w = zs2_mul(a, t2);
                if zs2_is_square((b.0 + w.0, b.1 + w.1), &squares) {
                    return Ok(1);
                }
            }
        }
    }
    Ok(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn odd_prime_examples() {
        assert_eq!(hilbert_qp(&q(3), &q(2), 3), Ok(-1));
        assert_eq!(hilbert_qp(&q(5), &q(7), 3), Ok(1));
        assert_eq!(hilbert_qp(&q(3), &q(3), 3), Ok(-1));
        assert_eq!(hilbert_qp(&q(0), &q(3), 3), Err(Error::ZeroArgument));
    }

    #[test]
    fn dyadic_examples() {
        assert_eq!(hilbert_q2(&q(-1), &q(-1)), Ok(-1));
        assert_eq!(hilbert_q2(&q(2), &q(2)), Ok(1));
        assert_eq!(hilbert_q2(&q(5), &q(2)), Ok(-1));
        assert_eq!(hilbert_q2(&q(2), &q(-1)), Ok(1));
        assert_eq!(hilbert_q2(&q(3), &q(2)), Ok(-1));
        assert_eq!(hilbert_q2(&q(7), &q(2)), Ok(1));
        assert_eq!(hilbert_q2(&qr(3, 5), &qr(1, 2)), hilbert_q2(&q(15), &q(2)));
    }

    /// Whether `val` (known mod `m = p^k`) is certainly a nonzero square in `Z_p`.
    fn certainly_square(val: i64, p: i64, m: i64) -> bool {
        if val == 0 {
            return false;
        }
        let (mut u, mut room, mut v) = (val, m, 0);
        while u % p == 0 {
            u /= p;
            room /= p;
            v += 1;
        }
        if v % 2 == 1 {
            return false;
        }
        if p == 2 {
            room >= 8 && u.rem_euclid(8) == 1
        } else {
            room >= p && legendre(u, p as u64) == 1
        }
    }

    /// `(r, s)_p = 1` iff `r x^2 + s y^2` is a nonzero square for some
    /// `x, y`; searched directly over residues mod `p^k`.
    fn solvable_mod(r: i64, s: i64, p: i64) -> i8 {
        let m = if p == 2 { 64 } else { p * p * p };
        for x in 0..m {
            for y in 0..m {
                if certainly_square((r * x * x + s * y * y).rem_euclid(m), p, m) {
                    return 1;
                }
            }
        }
        -1
    }

    #[test]
    fn formula_matches_solvability_search() {
        for p in [3i64, 5, 7] {
            for r in [1i64, -1, 2, 3, 5, 6, 7, 10, -3, 15] {
                for s in [1i64, -1, 2, 3, 5, 7, 14, -5] {
                    let want = solvable_mod(r, s, p);
                    assert_eq!(hilbert_qp(&q(r), &q(s), p as u64).unwrap(), want, "({r},{s})_{p}");
                }
            }
        }
        for r in [1i64, -1, 3, 5, 7, -3, 11, 13] {
            for s in [1i64, -1, 3, 5, 7, -5] {
                assert_eq!(hilbert_q2(&q(r), &q(s)).unwrap(), solvable_mod(r, s, 2), "({r},{s})_2");
            }
        }
    }

    #[test]
    fn product_formula_examples() {
        assert!(hilbert_q_product_check(&q(-1), &q(-1)).unwrap());
        assert!(hilbert_q_product_check(&q(17), &q(41)).unwrap());
        assert!(hilbert_q_product_check(&qr(-3, 10), &qr(7, -22)).unwrap());
    }

    #[test]
    fn places_above_small_primes() {
        assert_eq!(
            q1_places_above(17).unwrap(),
            vec![Q1Place::Split { p: 17, s: 6 }, Q1Place::Split { p: 17, s: 11 }]
        );
        assert_eq!(q1_places_above(3).unwrap(), vec![Q1Place::Inert { p: 3 }]);
        assert_eq!(
            q1_places_above(41).unwrap(),
            vec![Q1Place::Split { p: 41, s: 17 }, Q1Place::Split { p: 41, s: 24 }]
        );
        assert_eq!(q1_places_above(2).unwrap(), vec![Q1Place::Ramified]);
        assert!(q1_places_above(15).is_err());
    }

    #[test]
    fn real_embeddings() {
        let e = Q1Element::new(1, 1);
        assert_eq!(e.embedding_sign(1), 1);
        assert_eq!(e.embedding_sign(-1), -1);
        let e = Q1Element::new(-3, 2);
        assert_eq!((e.embedding_sign(1), e.embedding_sign(-1)), (-1, -1));
        let e = Q1Element::new(0, -1);
        assert_eq!((e.embedding_sign(1), e.embedding_sign(-1)), (-1, 1));
    }

    #[test]
    fn theorem_entries_for_17_41() {
        let delta = Q1Element::new(2, 1).scale(17 * 41);
        let minus_one = Q1Element::new(-1, 0);
        let eps2 = Q1Element::new(1, 1);
        for p in [17u64, 41] {
            for place in q1_places_above(p).unwrap() {
                assert_eq!(hilbert_q1(&minus_one, &delta, place), Ok(1));
                let want = crate::symbols::scholz_symbol(p).unwrap();
                assert_eq!(hilbert_q1(&eps2, &delta, place), Ok(want));
            }
        }
        assert_eq!(hilbert_q1(&minus_one, &delta, Q1Place::Ramified), Ok(1));
        assert_eq!(hilbert_q1(&eps2, &delta, Q1Place::Ramified), Ok(1));
    }

    #[test]
    fn dyadic_search_agrees_on_small_elements() {
        let mut checked = 0;
        for ax in -6i64..=6 {
            for ay in -3i64..=3 {
                for (bx, by) in [(1, 1), (-1, 0), (2, 1), (3, -2), (5, 0), (-7, 3), (0, 1)] {
                    let a = Q1Element::new(ax, ay);
                    let b = Q1Element::new(bx, by);
                    if a.is_zero() {
                        continue;
                    }
                    let via_product = hilbert_q1(&a, &b, Q1Place::Ramified).unwrap();
                    assert_eq!(dyadic_symbol_by_search(&a, &b).unwrap(), via_product, "({a}, {b})");
                    checked += 1;
                }
            }
        }
        assert!(checked > 500);
    }

    fn q1_elem() -> impl Strategy<Value = Q1Element> {
        (-50i64..=50, -50i64..=50)
            .prop_filter("nonzero", |&(x, y)| x != 0 || y != 0)
            .prop_map(|(x, y)| Q1Element::new(x, y))
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-100_000i64..100_000, 1i64..1000)
            .prop_filter("nonzero", |&(n, _)| n != 0)
            .prop_map(|(n, d)| qr(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn q_symbols_are_symmetric_and_bilinear(r in rational(), r2 in rational(), s in rational()) {
            for (p, v) in hilbert_q_local_symbols(&r, &s).unwrap() {
                let swapped = match p {
                    0 => hilbert_real(&s, &r).unwrap(),
                    2 => hilbert_q2(&s, &r).unwrap(),
                    _ => hilbert_qp(&s, &r, p).unwrap(),
                };
                prop_assert_eq!(v, swapped);
            }
            let rr = &r * &r2;
            for p in [2u64, 3, 5, 7, 11] {
                let (f, g, h): (i8, i8, i8) = if p == 2 {
                    (hilbert_q2(&rr, &s).unwrap(), hilbert_q2(&r, &s).unwrap(), hilbert_q2(&r2, &s).unwrap())
                } else {
                    (hilbert_qp(&rr, &s, p).unwrap(), hilbert_qp(&r, &s, p).unwrap(), hilbert_qp(&r2, &s, p).unwrap())
                };
                prop_assert_eq!(f, g * h);
            }
            prop_assert!(hilbert_q_product_check(&r, &s).unwrap());
        }

        #[test]
        fn q1_symbols_are_symmetric_and_bilinear(a in q1_elem(), a2 in q1_elem(), b in q1_elem()) {
            let aa = a.mul(&a2);
            let mut places: Vec<Q1Place> = q1_local_symbols_off_dyadic(&aa, &b).unwrap().into_iter().map(|(v, _)| v).collect();
            places.push(Q1Place::Ramified);
            for place in places {
                let f = hilbert_q1(&aa, &b, place).unwrap();
                let g = hilbert_q1(&a, &b, place).unwrap();
                let h = hilbert_q1(&a2, &b, place).unwrap();
                prop_assert_eq!(f, g * h, "at {}", place);
                prop_assert_eq!(hilbert_q1(&b, &a, place).unwrap(), g);
            }
        }

        #[test]
        fn galois_equivariance(a in q1_elem(), b in q1_elem()) {
            for (place, v) in q1_local_symbols_off_dyadic(&a, &b).unwrap() {
                let conj_place = match place {
                    Q1Place::Split { p, s } => Q1Place::Split { p, s: p - s },
                    Q1Place::RealPlus => Q1Place::RealMinus,
                    Q1Place::RealMinus => Q1Place::RealPlus,
                    other => other,
                };
                prop_assert_eq!(hilbert_q1(&a.conjugate(), &b.conjugate(), conj_place).unwrap(), v);
            }
        }
    }
}
