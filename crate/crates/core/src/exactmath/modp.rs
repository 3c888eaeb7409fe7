//! Word-sized prime field arithmetic for the multi-modular determinant.

use alloc::vec::Vec;

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

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

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below 2^62.
pub fn primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Determinant of a square matrix over 𝔽_p; the matrix is consumed.
pub fn det(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut d = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            d = sub(0, d, p);
        }
        let pv = a[col][col];
        d = mul(d, pv, p);
        let pinv = inv(pv, p);
        for r in col + 1..n {
            if a[r][col] == 0 {
                continue;
            }
            let f = mul(a[r][col], pinv, p);
            let (top, bottom) = a.split_at_mut(r);
            let prow = &top[col];
            let row = &mut bottom[0];
            for c in col + 1..n {
                if prow[c] != 0 {
                    row[c] = sub(row[c], mul(f, prow[c], p), p);
                }
            }
            row[col] = 0;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(97) && is_prime((1u64 << 61) - 1));
        assert!(!is_prime(1) && !is_prime(561) && !is_prime(3215031751));
        let ps = primes(3);
        assert!(ps.iter().all(|p| *p < (1 << 62) && is_prime(*p)));
        assert!(ps[0] > ps[1] && ps[1] > ps[2]);
    }

    #[test]
    fn small_det() {
        let p = 1_000_000_007;
        assert_eq!(det(vec![vec![2, 3], vec![4, 5]], p), p - 2);
        assert_eq!(det(vec![vec![0, 1], vec![1, 0]], p), p - 1);
        assert_eq!(det(vec![vec![1, 2], vec![2, 4]], p), 0);
    }
}
