//! Arithmetic modulo the Mersenne prime 2^61 - 1.
//!
//! Used only for one-sided rank certificates: a rank observed modulo `P`
//! is a lower bound for the rank over the rationals.

pub const P: u64 = (1u64 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    pow(a, p - 2, p)
}

pub fn from_i64(x: i64, p: u64) -> u64 {
    (x as i128).rem_euclid(p as i128) as u64
}

/// Rank of a dense matrix over F_p; consumes its argument.
pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv_p = inv(rows[rank][col], p);
        for c in col..ncols {
            rows[rank][c] = mul(rows[rank][c], inv_p, p);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for c in col..ncols {
                if pivot_row[c] != 0 {
                    row[c] = sub(row[c], mul(f, pivot_row[c], p), p);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
