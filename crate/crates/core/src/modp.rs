//! Dense matrices over a prime field `GF(p)`, entries stored reduced in `0..p`.

pub type Matrix = Vec<Vec<u64>>;

pub fn identity(d: usize) -> Matrix {
    (0..d)
        .map(|i| (0..d).map(|j| u64::from(i == j)).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let inner = b.len();
    let mut out = vec![vec![0u64; m]; n];
    for i in 0..n {
        for k in 0..inner {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + aik * b[k][j]) % p;
            }
        }
    }
    out
}

pub fn pow(a: &Matrix, mut e: u64, p: u64) -> Matrix {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base, p);
        }
        base = mul(&base, &base, p);
        e >>= 1;
    }
    acc
}

pub fn sub(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x + p - y) % p).collect())
        .collect()
}

/// `A v` for a column vector `v`.
pub fn apply(a: &Matrix, v: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y % p).sum::<u64>() % p)
        .collect()
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    crate::numtheory::pow_mod(a % p, p - 2, p)
}

pub fn rank(a: &Matrix, p: u64) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j]) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Inverse of an invertible matrix, `None` if singular.
pub fn inverse(a: &Matrix, p: u64) -> Option<Matrix> {
    let d = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(identity(d))
        .map(|(row, id)| row.iter().copied().chain(id).collect())
        .collect();
    for c in 0..d {
        let piv = (c..d).find(|&i| m[i][c] != 0)?;
        m.swap(c, piv);
        let inv = inv_mod(m[c][c], p);
        for x in m[c].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..d {
            if i != c && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..2 * d {
                    m[i][j] = (m[i][j] + p * p - f * m[c][j]) % p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d..].to_vec()).collect())
}

/// Multiplicative order of an invertible matrix, `None` if singular.
pub fn order(a: &Matrix, p: u64) -> Option<u64> {
    if rank(a, p) < a.len() {
        return None;
    }
    let id = identity(a.len());
    let mut x = a.clone();
    let mut k = 1u64;
    while x != id {
        x = mul(&x, a, p);
        k += 1;
    }
    Some(k)
}

/// Point index of a vector, little-endian base `p`.
pub fn encode(v: &[u64], p: u64) -> u32 {
    v.iter().rev().fold(0u64, |acc, &x| acc * p + x) as u32
}

pub fn decode(mut index: u64, d: usize, p: u64) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let x = index % p;
            index /= p;
            x
        })
        .collect()
}
