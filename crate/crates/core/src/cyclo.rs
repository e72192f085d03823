//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are stored in the power basis `1, z, .., z^(phi(n)-1)` of
//! `Q(zeta_n)`, reduced modulo the `n`-th cyclotomic polynomial, so equality
//! is coordinate equality once conductors agree. Operands with different
//! conductors are embedded into the least common multiple first; results
//! are not reduced back to a minimal conductor.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd, is_prime, lcm, legendre};

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d of n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = poly_div_exact(&num, &cyclotomic_polynomial(d));
    }
    let poly = Arc::new(num);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert!(lead == 1);
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// An element of `Q(zeta_n)` in canonical power-basis form.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CyclotomicNumber {
    conductor: u64,
    coords: Vec<BigRational>,
}

fn phi_degree(n: u64) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

impl CyclotomicNumber {
    pub fn zero(conductor: u64) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        CyclotomicNumber {
            conductor,
            coords: vec![BigRational::zero(); phi_degree(conductor)],
        }
    }

    pub fn rational(conductor: u64, value: BigRational) -> Self {
        let mut z = Self::zero(conductor);
        z.coords[0] = value;
        z
    }

    pub fn from_integer(conductor: u64, value: i64) -> Self {
        Self::rational(conductor, BigRational::from_integer(BigInt::from(value)))
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_integer(conductor, 1)
    }

    /// `zeta_n^k`; `k` may be negative.
    pub fn zeta_power(conductor: u64, k: i64) -> Self {
        let mut dense = vec![BigRational::zero(); conductor as usize];
        dense[k.rem_euclid(conductor as i64) as usize] = BigRational::one();
        Self::from_exponent_coefficients(conductor, dense)
    }

    /// `zeta_n^k + zeta_n^-k`.
    pub fn zeta_trace(conductor: u64, k: i64) -> Self {
        &Self::zeta_power(conductor, k) + &Self::zeta_power(conductor, -k)
    }

    /// Reduces `sum_i c_i zeta_n^i` for arbitrary exponents `i`.
    pub fn from_exponent_coefficients(conductor: u64, coeffs: Vec<BigRational>) -> Self {
        let n = conductor as usize;
        let mut folded = vec![BigRational::zero(); n.max(1)];
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % n.max(1)] += c;
            }
        }
        CyclotomicNumber {
            conductor,
            coords: reduce(folded, &cyclotomic_polynomial(conductor)),
        }
    }

    pub fn from_coordinates(conductor: u64, coords: Vec<BigRational>) -> Self {
        Self::from_exponent_coefficients(conductor, coords)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    /// The same element viewed in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn embed(&self, conductor: u64) -> Result<Self> {
        if conductor % self.conductor != 0 {
            return Err(Error::param(format!(
                "cannot embed conductor {} into {conductor}",
                self.conductor
            )));
        }
        if conductor == self.conductor {
            return Ok(self.clone());
        }
        let step = (conductor / self.conductor) as usize;
        let mut dense = vec![BigRational::zero(); conductor as usize];
        for (i, c) in self.coords.iter().enumerate() {
            dense[i * step] = c.clone();
        }
        Ok(Self::from_exponent_coefficients(conductor, dense))
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.conductor, b.conductor);
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        CyclotomicNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    /// `sigma_r`, the automorphism sending `zeta_n` to `zeta_n^r`.
    pub fn galois(&self, r: i64) -> Result<Self> {
        GaloisAction::new(self.conductor, r)?.apply(self)
    }

    fn galois_unchecked(&self, r: i64) -> Self {
        let n = self.conductor as i64;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                dense[(i as i64 * r).rem_euclid(n) as usize] += c.clone();
            }
        }
        Self::from_exponent_coefficients(self.conductor, dense)
    }

    /// Complex conjugate, i.e. `sigma_-1`.
    pub fn conjugate(&self) -> Self {
        self.galois_unchecked(-1)
    }

    /// Number of distinct images under `Gal(Q(zeta_n)/Q)`; equals `[Q(a):Q]`.
    pub fn galois_orbit_size(&self) -> usize {
        let n = self.conductor;
        let mut images: Vec<Vec<BigRational>> = Vec::new();
        for r in 1..=n {
            if gcd(r, n) != 1 {
                continue;
            }
            let img = self.galois_unchecked(r as i64).coords;
            if !images.contains(&img) {
                images.push(img);
            }
        }
        images.len()
    }

    /// Numerical value with `zeta_n = exp(2 pi i / n)`, as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coords.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

fn reduce(mut dense: Vec<BigRational>, phi: &[i64]) -> Vec<BigRational> {
    let d = phi.len() - 1;
    if dense.len() <= d {
        dense.resize(d, BigRational::zero());
        return dense;
    }
    for i in (d..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut dense[i]);
        for (j, &pj) in phi.iter().enumerate().take(d) {
            if pj != 0 {
                dense[i - d + j] -= &c * BigRational::from_integer(BigInt::from(pj));
            }
        }
    }
    dense.truncate(d);
    dense
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.coords == b.coords
    }
}

impl Eq for CyclotomicNumber {}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::aligned(self, rhs);
        CyclotomicNumber {
            conductor: a.conductor,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::aligned(self, rhs);
        CyclotomicNumber {
            conductor: a.conductor,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::aligned(self, rhs);
        let d = a.coords.len();
        let mut dense = vec![BigRational::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    dense[i + j] += x * y;
                }
            }
        }
        CyclotomicNumber {
            conductor: a.conductor,
            coords: reduce(dense, &cyclotomic_polynomial(a.conductor)),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $m(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// `sigma_r : zeta_n -> zeta_n^r` with `gcd(r, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaloisAction {
    conductor: u64,
    exponent: u64,
}

impl GaloisAction {
    pub fn new(conductor: u64, exponent: i64) -> Result<Self> {
        let e = exponent.rem_euclid(conductor as i64) as u64;
        if gcd(e, conductor) != 1 && conductor != 1 {
            return Err(Error::param(format!(
                "exponent {exponent} is not coprime to the conductor {conductor}"
            )));
        }
        Ok(GaloisAction {
            conductor,
            exponent: e,
        })
    }

    pub fn identity(conductor: u64) -> Self {
        GaloisAction {
            conductor,
            exponent: 1 % conductor.max(2),
        }
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `self` after `other`: `sigma_r . sigma_s = sigma_rs`.
    pub fn compose(&self, other: &GaloisAction) -> Result<Self> {
        if self.conductor != other.conductor {
            return Err(Error::param("Galois actions on different fields"));
        }
        Ok(GaloisAction {
            conductor: self.conductor,
            exponent: self.exponent * other.exponent % self.conductor,
        })
    }

    pub fn apply(&self, a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if self.conductor % a.conductor == 0 {
            let lifted = a.embed(self.conductor)?;
            return Ok(lifted.galois_unchecked(self.exponent as i64));
        }
        if a.conductor % self.conductor == 0 {
            // Any lift of the exponent coprime to the larger conductor acts the same on Q(zeta_n).
            let mut e = self.exponent;
            while gcd(e, a.conductor) != 1 {
                e += self.conductor;
            }
            return Ok(a.galois_unchecked(e as i64));
        }
        Err(Error::param(format!(
            "automorphism of Q(zeta_{}) cannot act on Q(zeta_{})",
            self.conductor, a.conductor
        )))
    }
}

/// `[Q_p : Q(a)]`, the size of the stabilizer of `a` in `Gal(Q(zeta_p)/Q)`.
pub fn subfield_codegree(a: &CyclotomicNumber) -> Result<u64> {
    let p = a.conductor();
    if !is_prime(p) {
        return Err(Error::param(format!(
            "codegree is only supported for prime conductor, got {p}"
        )));
    }
    Ok((1..p)
        .filter(|&r| a.galois_unchecked(r as i64) == *a)
        .count() as u64)
}

/// Whether the values are linearly independent over `Q`, by exact rank of
/// their coordinate matrix in a common cyclotomic field.
pub fn rational_independence(values: &[CyclotomicNumber]) -> bool {
    if values.is_empty() {
        return true;
    }
    let m = values.iter().fold(1, |acc, v| lcm(acc, v.conductor()));
    let rows: Vec<Vec<BigRational>> = values.iter().map(|v| v.embed(m).unwrap().coords).collect();
    rational_rank(rows) == values.len()
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        let pivot_row: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// The quadratic Gauss sum `sum_t (t/r) zeta_r^t` for a prime `r = 3 mod 4`,
/// whose square is `-r`.
pub fn gauss_sum(r: u64) -> Result<CyclotomicNumber> {
    if !is_prime(r) || r % 4 != 3 {
        return Err(Error::param(format!(
            "Gauss sum is provided for primes r = 3 mod 4 only, got {r}"
        )));
    }
    let mut dense = vec![BigRational::zero(); r as usize];
    for (t, slot) in dense.iter_mut().enumerate().skip(1) {
        *slot = BigRational::from_integer(BigInt::from(legendre(t as i64, r)));
    }
    let g = CyclotomicNumber::from_exponent_coefficients(r, dense);
    if &g * &g != CyclotomicNumber::from_integer(r, -(r as i64)) {
        return Err(Error::internal(format!(
            "Gauss sum for {r} does not square to -{r}"
        )));
    }
    Ok(g)
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => fmt_rational(&c.abs()),
                1 => format!("{}*z", fmt_rational(&c.abs())),
                _ => format!("{}*z^{i}", fmt_rational(&c.abs())),
            };
            terms.push((c.is_negative(), body));
        }
        f.write_str("(")?;
        if terms.is_empty() {
            f.write_str("0")?;
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        write!(f, ")@{}", self.conductor)
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CyclotomicNumber {
    type Err = Error;

    /// Parses `(<polynomial in z>)@n`, e.g. `(1/2 - 1/2*z^3)@7`. Exponents may
    /// exceed `phi(n)`; the result is reduced.
    fn from_str(s: &str) -> Result<Self> {
        let perr = |position: usize, token: &str, message: &str| Error::Parse {
            position,
            token: token.to_string(),
            message: message.to_string(),
        };
        let s_trim = s.trim();
        let at = s_trim
            .rfind('@')
            .ok_or_else(|| perr(s_trim.len(), "", "missing `@conductor` suffix"))?;
        let cond_txt = s_trim[at + 1..].trim();
        let conductor: u64 = cond_txt
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| perr(at + 1, cond_txt, "conductor must be a positive integer"))?;
        let body = s_trim[..at].trim();
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| perr(0, body, "expected a parenthesized polynomial"))?;
        let mut dense = vec![BigRational::zero(); conductor as usize];
        let mut pos = 0usize;
        let bytes = inner.as_bytes();
        let mut sign = 1i64;
        let mut expect_term = true;
        while pos < bytes.len() {
            let ch = bytes[pos] as char;
            if ch.is_whitespace() {
                pos += 1;
                continue;
            }
            if ch == '+' || ch == '-' {
                if !expect_term {
                    expect_term = true;
                    sign = 1;
                }
                if ch == '-' {
                    sign = -sign;
                }
                pos += 1;
                continue;
            }
            if !expect_term {
                return Err(perr(pos + 1, &inner[pos..pos + 1], "expected `+` or `-`"));
            }
            let end = inner[pos..]
                .find(|c: char| c == '+' || c == '-' || c.is_whitespace())
                .map_or(inner.len(), |e| pos + e);
            let term = &inner[pos..end];
            let (coef_txt, exp) = parse_term(term).map_err(|m| perr(pos + 1, term, &m))?;
            let coef: BigRational = match coef_txt {
                None => BigRational::one(),
                Some(t) => parse_rational(t).map_err(|m| perr(pos + 1, t, &m))?,
            };
            let coef = if sign < 0 { -coef } else { coef };
            dense[(exp % conductor) as usize] += coef;
            pos = end;
            sign = 1;
            expect_term = false;
        }
        if expect_term && inner.trim() != "" {
            return Err(perr(inner.len(), "", "dangling sign"));
        }
        Ok(CyclotomicNumber::from_exponent_coefficients(
            conductor, dense,
        ))
    }
}

fn parse_term(term: &str) -> std::result::Result<(Option<&str>, u64), String> {
    let (coef, zpart) = match term.find('z') {
        None => return Ok((Some(term), 0)),
        Some(i) => (&term[..i], &term[i..]),
    };
    let coef = match coef.strip_suffix('*') {
        Some(c) => Some(c),
        None if coef.is_empty() => None,
        None => return Err("expected `*` between coefficient and `z`".into()),
    };
    let exp = match zpart.strip_prefix("z^") {
        Some(e) => e.parse::<u64>().map_err(|_| "bad exponent".to_string())?,
        None if zpart == "z" => 1,
        None => return Err("expected `z` or `z^k`".into()),
    };
    Ok((coef, exp))
}

fn parse_rational(t: &str) -> std::result::Result<BigRational, String> {
    let bad = || format!("`{t}` is not a rational number");
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl TryFrom<String> for CyclotomicNumber {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CyclotomicNumber> for String {
    fn from(c: CyclotomicNumber) -> String {
        c.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_power(n, k)
    }

    fn int(n: u64, v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(n, v)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(7).len(), 7);
    }

    #[test]
    fn arithmetic_examples() {
        let s = &(&z(5, 1) + &z(5, 2)) + &(&z(5, 3) + &z(5, 4));
        assert_eq!(s, int(5, -1));
        assert_eq!(&z(7, 1) * &z(7, 6), int(7, 1));
        let t = CyclotomicNumber::zeta_trace(7, 1);
        assert_eq!(&t * &t, &CyclotomicNumber::zeta_trace(7, 2) + &int(7, 2));
        assert_eq!(z(7, 7), int(7, 1));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(z(7, 1).galois(2).unwrap(), z(7, 2));
        assert_eq!(
            CyclotomicNumber::zeta_trace(7, 1).galois(2).unwrap(),
            CyclotomicNumber::zeta_trace(7, 2)
        );
        assert_eq!(int(7, 5).galois(3).unwrap(), int(7, 5));
        assert!(z(7, 1).galois(7).is_err());
        assert!(z(12, 1).galois(2).is_err());
    }

    #[test]
    fn codegree_examples() {
        assert_eq!(
            subfield_codegree(&CyclotomicNumber::zeta_trace(7, 1)).unwrap(),
            2
        );
        assert_eq!(subfield_codegree(&z(7, 1)).unwrap(), 1);
        assert_eq!(subfield_codegree(&int(7, 5)).unwrap(), 6);
        assert!(subfield_codegree(&z(12, 1)).is_err());
    }

    #[test]
    fn independence_examples() {
        let basis: Vec<_> = (1..=5)
            .map(|k| CyclotomicNumber::zeta_trace(11, k))
            .collect();
        assert!(rational_independence(&basis));
        let s = &(&z(5, 1) + &z(5, 2)) + &(&z(5, 3) + &z(5, 4));
        assert!(!rational_independence(&[int(5, 1), s]));
        assert!(rational_independence(&[]));
    }

    #[test]
    fn gauss_sums_square_to_minus_r() {
        for r in [3u64, 7, 11, 19, 23] {
            let g = gauss_sum(r).unwrap();
            assert_eq!(&g * &g, int(r, -(r as i64)));
        }
        assert_eq!(gauss_sum(3).unwrap(), &z(3, 1) - &z(3, 2));
        assert!(gauss_sum(5).is_err());
        assert!(gauss_sum(9).is_err());
    }

    #[test]
    fn mixed_conductors_embed_into_lcm() {
        let a = z(3, 1);
        let b = z(4, 1);
        let prod = &a * &b;
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, z(12, 7));
        assert_eq!(int(3, 2), int(5, 2));
    }

    #[test]
    fn text_round_trip() {
        let x: CyclotomicNumber = "(1/2 - 1/2*z^3)@7".parse().unwrap();
        assert_eq!(x.to_string(), "(1/2 - 1/2*z^3)@7");
        assert_eq!(x.to_string().parse::<CyclotomicNumber>().unwrap(), x);
        let y: CyclotomicNumber = "(-z + z^6)@7".parse().unwrap();
        assert_eq!(y, &z(7, 6) - &z(7, 1));
        let reduced: CyclotomicNumber = "(z^6)@7".parse().unwrap();
        assert_eq!(
            reduced.to_string(),
            "(-1 - 1*z - 1*z^2 - 1*z^3 - 1*z^4 - 1*z^5)@7"
        );
        assert_eq!(CyclotomicNumber::zero(5).to_string(), "(0)@5");
        assert!("(1 + )@7".parse::<CyclotomicNumber>().is_err());
        assert!("1 + z".parse::<CyclotomicNumber>().is_err());
        assert!("(1 + q)@7".parse::<CyclotomicNumber>().is_err());
    }
}
