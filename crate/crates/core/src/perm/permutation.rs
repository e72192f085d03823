use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}` stored by its image list.
///
/// Products are read left to right: `a * b` applies `a` first and then `b`,
/// so `i^(a*b) = (i^a)^b`. Conjugation follows the same convention,
/// `x^g = g^-1 * x * g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidPermutation(format!("image {i} repeated")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (idx, &pt) in cycle.iter().enumerate() {
                let pt_us = pt as usize;
                if pt_us >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} out of range for degree {degree}"
                    )));
                }
                if touched[pt_us] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {pt} appears in more than one cycle"
                    )));
                }
                touched[pt_us] = true;
                images[pt_us] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    ///
    /// Points may be separated by spaces or commas. When `degree` is `None`
    /// the smallest degree containing every point is used.
    pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let needed = cycles
            .iter()
            .flatten()
            .map(|&p| p as usize + 1)
            .max()
            .unwrap_or(0);
        let degree = match degree {
            Some(d) if d < needed => {
                return Err(Error::InvalidPermutation(format!(
                    "cycle point {} exceeds degree {d}",
                    needed - 1
                )))
            }
            Some(d) => d,
            None => needed,
        };
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Self {
        // i^(g^-1 x g): send i^g to (i^x)^g
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[g.images[i] as usize] = g.images[x as usize];
        }
        Permutation { images }
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, other: &Permutation) -> Self {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    /// Nontrivial cycles in order of their smallest point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u32..degree as u32);
        Permutation { images }
    }

    /// Acts on `{offset, .., offset + n - 1}` inside a permutation of degree `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u32;
        }
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<u32>>> {
    let mut cycles = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let err = |pos: usize, token: &str, message: &str| Error::Parse {
        position: pos,
        token: token.to_string(),
        message: message.to_string(),
    };
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if c != b'(' {
            return Err(err(pos, &text[pos..pos + 1], "expected `(`"));
        }
        let close = text[pos..]
            .find(')')
            .map(|i| pos + i)
            .ok_or_else(|| err(pos, &text[pos..], "unclosed cycle"))?;
        let inner = &text[pos + 1..close];
        let mut cycle = Vec::new();
        let mut offset = pos + 1;
        for tok in inner.split(|ch: char| ch == ',' || ch.is_whitespace()) {
            if !tok.is_empty() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| err(offset, tok, "expected a non-negative point label"))?;
                cycle.push(v);
            }
            offset += tok.len() + 1;
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        pos = close + 1;
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_left_to_right() {
        let a = Permutation::parse_cycles("(0 1)", Some(3)).unwrap();
        let b = Permutation::parse_cycles("(1 2)", Some(3)).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).image(0), 2);
        assert_eq!((&a * &b).to_string(), "(0 2 1)");
    }

    #[test]
    fn conjugation_matches_definition() {
        let x = Permutation::parse_cycles("(0 1 2 3 4)", None).unwrap();
        let g = Permutation::parse_cycles("(0 1)(2 4)", Some(5)).unwrap();
        let direct = g.inverse().then(&x).then(&g);
        assert_eq!(x.conjugate_by(&g), direct);
    }

    #[test]
    fn cycle_text_round_trip_and_errors() {
        let p = Permutation::parse_cycles("(0 1 2 3 4)(5 6)", None).unwrap();
        assert_eq!(p.degree(), 7);
        assert_eq!(p.order(), 10);
        assert_eq!(p.to_string(), "(0 1 2 3 4)(5 6)");
        assert!(Permutation::parse_cycles("()", Some(3))
            .unwrap()
            .is_identity());
        assert!(Permutation::parse_cycles("(0 1)(1 2)", None).is_err());
        assert!(matches!(
            Permutation::parse_cycles("(0 x)", None),
            Err(Error::Parse { token, .. }) if token == "x"
        ));
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn powers_and_inverse() {
        let p = Permutation::parse_cycles("(0 1 2 3 4 5)", None).unwrap();
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(4), p.pow(-2));
        assert!(p.then(&p.inverse()).is_identity());
    }
}
