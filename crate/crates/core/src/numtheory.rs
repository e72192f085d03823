//! Small integer helpers shared across modules.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut part = 1;
    while n > 0 && n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

/// If `n = r^f` for a prime `r`, returns `(r, f)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n as u128).as_slice() {
        [(r, f)] => Some((*r, *f)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n as u128)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `m`, or `None` when `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let a = a % m;
    if a.gcd(&m) != 1 {
        return None;
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// Legendre symbol `(a / p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Smallest positive integer whose multiplicative order modulo `p` is exactly `order`.
pub fn smallest_with_order(order: u64, p: u64) -> Option<u64> {
    (1..p).find(|&r| multiplicative_order(r, p) == Some(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_parts() {
        assert_eq!(factorize(15309), vec![(3, 7), (7, 1)]);
        assert_eq!(p_part(168, 2), 8);
        assert_eq!(p_part(168, 5), 1);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn orders_and_symbols() {
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 7), Some(6));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(smallest_with_order(3, 7), Some(2));
        assert_eq!(smallest_with_order(4, 5), Some(2));
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(legendre(-1, 7), -1);
        assert_eq!(legendre(-1, 13), 1);
    }
}
