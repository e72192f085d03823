use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_power};

/// The finite field `GF(r^f)` for `f <= 3`, elements encoded as integers
/// `0..q` whose base-`r` digits are polynomial coefficients (lowest first).
#[derive(Debug, Clone)]
pub struct GaloisField {
    r: u64,
    f: u32,
    q: u64,
    mul: Vec<u32>,
    primitive: u64,
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let (r, f) =
            prime_power(q).ok_or_else(|| Error::param(format!("{q} is not a prime power")))?;
        if f > 3 {
            return Err(Error::param(format!(
                "field of order {q} needs degree {f} > 3, which is not supported"
            )));
        }
        debug_assert!(is_prime(r));
        let modulus = find_irreducible(r, f);
        let qs = q as usize;
        let mut mul = vec![0u32; qs * qs];
        for a in 0..q {
            for b in 0..q {
                mul[(a * q + b) as usize] = poly_mul(a, b, r, f, &modulus) as u32;
            }
        }
        let mut field = GaloisField {
            r,
            f,
            q,
            mul,
            primitive: 0,
        };
        field.primitive = (1..q)
            .find(|&x| field.multiplicative_order(x) == q - 1)
            .ok_or_else(|| Error::internal(format!("no primitive element in GF({q})")))?;
        Ok(field)
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.r
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    /// Smallest element (in the integer encoding) generating the multiplicative group.
    pub fn primitive(&self) -> u64 {
        self.primitive
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((a % self.r + b % self.r) % self.r) * place;
            a /= self.r;
            b /= self.r;
            place *= self.r;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.f {
            out += ((self.r - a % self.r) % self.r) * place;
            a /= self.r;
            place *= self.r;
        }
        out
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize] as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        (1..self.q)
            .find(|&b| self.mul(a, b) == 1)
            .ok_or_else(|| Error::param("zero has no inverse"))
    }

    fn multiplicative_order(&self, a: u64) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }
}

fn digits(mut a: u64, r: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = a % r;
            a /= r;
            d
        })
        .collect()
}

/// Product of two encoded polynomials reduced by the monic `modulus`
/// (given by its `f` lower coefficients).
fn poly_mul(a: u64, b: u64, r: u64, f: u32, modulus: &[u64]) -> u64 {
    let f = f as usize;
    let da = digits(a, r, f);
    let db = digits(b, r, f);
    let mut prod = vec![0u64; 2 * f];
    for i in 0..f {
        for j in 0..f {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % r;
        }
    }
    for i in (f..2 * f).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate() {
            prod[i - f + j] = (prod[i - f + j] + r * r - c * m % r) % r;
        }
    }
    prod[..f].iter().rev().fold(0, |acc, &d| acc * r + d)
}

/// Lexicographically smallest monic irreducible polynomial of degree `f <= 3`
/// over `GF(r)`; irreducible iff it has no root at these degrees.
fn find_irreducible(r: u64, f: u32) -> Vec<u64> {
    if f == 1 {
        return vec![0];
    }
    let count = r.pow(f);
    for code in 0..count {
        let low = digits(code, r, f as usize);
        let has_root = (0..r).any(|x| {
            let mut val = 1u64;
            for c in low.iter().rev() {
                val = (val * x + c) % r;
            }
            val == 0
        });
        if !has_root {
            return low;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 25, 27] {
            let k = GaloisField::new(q).unwrap();
            for a in 0..q {
                assert_eq!(k.add(a, k.neg(a)), 0);
                assert_eq!(k.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in [0, 1, q - 1] {
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
            assert_eq!(k.pow(k.primitive(), q - 1), 1);
        }
        assert!(GaloisField::new(6).is_err());
        assert!(GaloisField::new(16).is_err());
    }
}
