//! Rédei matrices over the two-element field.
//!
//! A sign `+1` is stored as bit `0` and `-1` as bit `1`. The classical
//! matrix gives the 4-rank of the narrow class group of `Q(sqrt D)`; the
//! generalized one is built for `F1 = Q(sqrt 2)(sqrt delta)`,
//! `delta = (2 + sqrt 2) p q`, over the five places ramified in `F1`.

use std::fmt;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, sqrt_mod_p};
use crate::error::{Error, Result};
use crate::field::QuadraticField;
use crate::hilbert::{hilbert_q1, Q1Element, Q1Place};
use crate::symbols::{kronecker, quartic_over_2};

pub fn sign_to_bit(s: i8) -> u8 {
    debug_assert!(s == 1 || s == -1, "sign {s}");
    u8::from(s < 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u8>>,
}

impl F2Matrix {
    pub fn from_bits(entries: Vec<Vec<u8>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        assert!(entries.iter().all(|r| r.len() == cols), "ragged matrix");
        let entries = entries.into_iter().map(|r| r.into_iter().map(|b| b & 1).collect()).collect();
        Self { rows, cols, entries }
    }

    pub fn from_signs(signs: &[Vec<i8>]) -> Self {
        Self::from_bits(signs.iter().map(|r| r.iter().map(|&s| sign_to_bit(s)).collect()).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![vec![0; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i][j]
    }

    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| m[r][col] == 1) else {
                continue;
            };
            m.swap(rank, pivot);
            for r in 0..self.rows {
                if r != rank && m[r][col] == 1 {
                    for c in col..self.cols {
                        m[r][c] ^= m[rank][c];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<u8> {
        if self.rows != self.cols {
            return Err(Error::PreconditionViolation(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(u8::from(self.rank() == self.rows))
    }

    pub fn row_sums_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().fold(0, |acc, &b| acc ^ b) == 0)
    }

    pub fn column_sums_zero(&self) -> bool {
        (0..self.cols).all(|c| self.entries.iter().fold(0, |acc, r| acc ^ r[c]) == 0)
    }
}

impl fmt::Display for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn f2_rank(m: &F2Matrix) -> usize {
    m.rank()
}

pub fn f2_det(m: &F2Matrix) -> Result<u8> {
    m.det()
}

/// `l* = (-1)^((l-1)/2) l` for odd `l`; for `l = 2` the prime discriminant
/// `-4`, `8` or `-8` dividing the field discriminant.
fn prime_discriminant(l: u64, d: i64) -> i64 {
    if l == 2 {
        match d.rem_euclid(8) {
            3 | 7 => -4,
            2 => 8,
            6 => -8,
            _ => unreachable!("2 does not ramify in Q(sqrt {d})"),
        }
    } else if l % 4 == 1 {
        l as i64
    } else {
        -(l as i64)
    }
}

/// The classical Rédei matrix of `Q(sqrt D)`: row `i`, column `j != i`
/// holds `(l_j* / l_i)`, and each diagonal entry makes its row sum zero.
pub fn redei_matrix(d: i64) -> Result<F2Matrix> {
    let field = QuadraticField::new(d)?;
    let primes = &field.ramified;
    let stars: Vec<i64> = primes.iter().map(|&l| prime_discriminant(l, d)).collect();
    let r = primes.len();
    let mut m = F2Matrix::zero(r, r);
    for i in 0..r {
        let mut sum = 0;
        for j in (0..r).filter(|&j| j != i) {
            let bit = sign_to_bit(kronecker(stars[j], primes[i] as i64));
            m.entries[i][j] = bit;
            sum ^= bit;
        }
        m.entries[i][i] = sum;
    }
    Ok(m)
}

/// 4-rank of the narrow class group: `r - 1 - rank(R)`.
pub fn r4_narrow_via_redei(d: i64) -> Result<usize> {
    let m = redei_matrix(d)?;
    Ok(m.rows - 1 - m.rank())
}

/// The 4x4 matrix `(a b c d / b a d c / e f g g / f e g g)`.
pub fn pattern_matrix(a: u8, b: u8, c: u8, d: u8, e: u8, f: u8, g: u8) -> F2Matrix {
    F2Matrix::from_bits(vec![vec![a, b, c, d], vec![b, a, d, c], vec![e, f, g, g], vec![f, e, g, g]])
}

/// Whether `m` has the shape of [`pattern_matrix`] with `c != d` and `e != f`.
pub fn has_theorem_pattern(m: &F2Matrix) -> bool {
    if m.rows != 4 || m.cols != 4 {
        return false;
    }
    let e = &m.entries;
    let (a, b, c, d) = (e[0][0], e[0][1], e[0][2], e[0][3]);
    let (ee, f, g) = (e[2][0], e[2][1], e[2][2]);
    *m == pattern_matrix(a, b, c, d, ee, f, g) && c != d && ee != f
}

/// `x + y sqrt 2` of norm `+-p` lying in the prime `(p, sqrt 2 - s)`.
pub fn q1_prime_generator(p: u64, s: u64) -> Result<(i64, i64)> {
    if p % 8 != 1 && p % 8 != 7 {
        return Err(Error::PreconditionViolation(format!("{p} does not split in Q(sqrt 2)")));
    }
    let p_i = p as i64;
    for y in 0..=(p as u64).sqrt() as i64 + 1 {
        for target in [2 * y * y + p_i, 2 * y * y - p_i] {
            if target < 0 {
                continue;
            }
            let x = (target as u64).sqrt() as i64;
            if x * x == target {
                for (xx, yy) in [(x, y), (x, -y)] {
                    if (xx as i128 + yy as i128 * s as i128).rem_euclid(p as i128) == 0 {
                        return Ok((xx, yy));
                    }
                }
            }
        }
    }
    Err(Error::PreconditionViolation(format!("no generator found for the prime above {p}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedRedei {
    pub p: u64,
    pub q: u64,
    /// Ramified places of `F1`: dyadic, the two above `p`, the two above `q`.
    pub places: Vec<Q1Place>,
    /// Generators `pi, conj(pi), lambda, conj(lambda)` as `(x, y)`.
    pub generators: Vec<(i64, i64)>,
    /// Columns `(-1, delta)_v` and `(eps_2, delta)_v`, rows in `places` order.
    pub m: F2Matrix,
    /// Rows: odd places; columns: the four generators.
    pub r: F2Matrix,
    /// `r_2` of the narrow 2-class group of `F1`.
    pub r2: usize,
    /// `r_4` of the narrow 2-class group of `F1`.
    pub r4: usize,
}

/// Rédei matrices of `F1 / Q(sqrt 2)` for `p = 1 (mod 8)`, `q = 9 (mod 16)`,
/// `(p/q) = -1`.
pub fn generalized_redei_f1(p: u64, q: u64) -> Result<GeneralizedRedei> {
    let ok = is_prime(p)
        && is_prime(q)
        && p % 8 == 1
        && quartic_over_2(q as i64) == Ok(-1)
        && kronecker(p as i64, q as i64) == -1;
    if !ok {
        return Err(Error::PreconditionViolation(format!(
            "({p}, {q}) needs primes p = 1 mod 8, q = 9 mod 16, (p/q) = -1"
        )));
    }
    let (sp, sq) = (sqrt_mod_p(2, p)?, sqrt_mod_p(2, q)?);
    let places = vec![
        Q1Place::Ramified,
        Q1Place::Split { p, s: sp },
        Q1Place::Split { p, s: p - sp },
        Q1Place::Split { p: q, s: sq },
        Q1Place::Split { p: q, s: q - sq },
    ];
    let (px, py) = q1_prime_generator(p, sp)?;
    let (qx, qy) = q1_prime_generator(q, sq)?;
    let generators = vec![(px, py), (px, -py), (qx, qy), (qx, -qy)];

    let delta = Q1Element::new(2, 1).scale((p * q) as i64);
    let units = [Q1Element::new(-1, 0), Q1Element::new(1, 1)];
    let mut m_signs = Vec::new();
    for &place in &places {
        let row: Result<Vec<i8>> = units.iter().map(|u| hilbert_q1(u, &delta, place)).collect();
        m_signs.push(row?);
    }
    let mut r_signs = Vec::new();
    for &place in &places[1..] {
        let row: Result<Vec<i8>> = generators
            .iter()
            .map(|&(x, y)| hilbert_q1(&Q1Element::new(x, y), &delta, place))
            .collect();
        r_signs.push(row?);
    }
    let m = F2Matrix::from_signs(&m_signs);
    let r = F2Matrix::from_signs(&r_signs);
    let ramified = places.len();
    let r2 = ramified - 1 - m.rank();
    let r4 = ramified - 1 - r.rank();
    Ok(GeneralizedRedei { p, q, places, generators, m, r, r2, r4 })
}
