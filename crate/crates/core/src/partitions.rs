//! Graded dimensions of Verma modules: ordinary partitions (Virasoro),
//! Neveu–Schwarz partitions (half-integer grades, stored doubled) and the
//! Kostant partition function of affine sl2.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const VIR_CUTOFF: u32 = 64;
/// Doubled: grades up to 32.
pub const NS_CUTOFF_X2: u32 = 64;
/// Largest `a + b` for `aα + bδ`.
pub const AFFINE_CUTOFF: i64 = 12;

/// A dimension table together with the cutoff it was computed to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDims<K: Ord> {
    pub table: BTreeMap<K, u64>,
    pub cutoff: i64,
}

impl<K: Ord> GradedDims<K> {
    pub fn get(&self, k: &K) -> Option<u64> {
        self.table.get(k).copied()
    }
}

/// Coefficients of ∏_{j≥1} (1 − q^j)^{-1} up to `q^n`.
fn euler_series(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for j in 1..=n {
        for m in j..=n {
            p[m] += p[m - j];
        }
    }
    p
}

pub fn vir_table(up_to: u32) -> Result<GradedDims<u32>> {
    if up_to > VIR_CUTOFF {
        return Err(Error::Cutoff { what: "virasoro partition table".into(), limit: VIR_CUTOFF as i64 });
    }
    let s = euler_series(up_to as usize);
    Ok(GradedDims { table: (0..=up_to).zip(s).collect(), cutoff: up_to as i64 })
}

/// Number of partitions of `n`.
pub fn vir_partition(n: u32) -> Result<u64> {
    Ok(vir_table(n)?.table[&n])
}

/// Coefficients of ∏_{j≥1} (1 − q^j)^{-1}(1 + q^{j−1/2}) in the variable `q^{1/2}`, up to exponent `n2`.
fn ns_series(n2: usize) -> Vec<u64> {
    let mut p = vec![0u64; n2 + 1];
    p[0] = 1;
    // odd generators: factors (1 + x^{2j-1})
    let mut j = 1;
    while 2 * j - 1 <= n2 {
        let w = 2 * j - 1;
        for m in (w..=n2).rev() {
            p[m] += p[m - w];
        }
        j += 1;
    }
    // even generators: factors (1 − x^{2j})^{-1}
    let mut j = 1;
    while 2 * j <= n2 {
        let w = 2 * j;
        for m in w..=n2 {
            p[m] += p[m - w];
        }
        j += 1;
    }
    p
}

/// Table keyed by doubled grade.
pub fn ns_table(up_to_x2: u32) -> Result<GradedDims<u32>> {
    if up_to_x2 > NS_CUTOFF_X2 {
        return Err(Error::Cutoff { what: "neveu-schwarz partition table (doubled grade)".into(), limit: NS_CUTOFF_X2 as i64 });
    }
    let s = ns_series(up_to_x2 as usize);
    Ok(GradedDims { table: (0..=up_to_x2).zip(s).collect(), cutoff: up_to_x2 as i64 })
}

/// Coefficient of `q^{n2/2}` in the NS generating product.
pub fn ns_partition(n2: u32) -> Result<u64> {
    Ok(ns_table(n2)?.table[&n2])
}

/// Positive roots of affine sl2 with α-coefficient and δ-coefficient, δ-degree at most `b`.
fn sl2_hat_positive_roots(b: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0)];
    for n in 1..=b {
        out.push((1, n));
        out.push((-1, n));
        out.push((0, n));
    }
    out
}

/// Kostant partition function of affine sl2 for all `aα + bδ` with `0 ≤ b ≤ up_to`, `a + b ≤ up_to`.
///
/// Only weights in the positive root cone (`a ≥ −b`) have nonzero entries;
/// entries outside the cone are omitted from the table.
pub fn affine_sl2_table(up_to: i64) -> Result<GradedDims<(i64, i64)>> {
    if !(0..=AFFINE_CUTOFF).contains(&up_to) {
        return Err(Error::Cutoff { what: "affine sl2 partition table (a+b)".into(), limit: AFFINE_CUTOFF });
    }
    // Box of all partial sums: δ-degree ≤ C, α-coefficient in [−C, 2C].
    let c = up_to;
    let (xmin, xmax) = (-c, 2 * c);
    let w = (xmax - xmin + 1) as usize;
    let idx = |x: i64, y: i64| (y as usize) * w + (x - xmin) as usize;
    let mut dp = vec![0u64; w * (c as usize + 1)];
    dp[idx(0, 0)] = 1;
    for (rx, ry) in sl2_hat_positive_roots(c) {
        for y in 0..=c {
            let range: Vec<i64> = if rx >= 0 { (xmin..=xmax).collect() } else { (xmin..=xmax).rev().collect() };
            for x in range {
                let (px, py) = (x - rx, y - ry);
                if py < 0 || px < xmin || px > xmax {
                    continue;
                }
                let v = dp[idx(px, py)];
                dp[idx(x, y)] += v;
            }
        }
    }
    let mut table = BTreeMap::new();
    for b in 0..=c {
        for a in -b..=(c - b) {
            table.insert((a, b), dp[idx(a, b)]);
        }
    }
    Ok(GradedDims { table, cutoff: up_to })
}

/// Number of ways to write `aα + bδ` as a sum of positive roots of affine sl2
/// (imaginary roots with multiplicity one).
pub fn affine_sl2_partition(a: i64, b: i64) -> Result<u64> {
    if b < 0 || a < -b {
        return Ok(0);
    }
    let c = (a + b).max(b);
    if c > AFFINE_CUTOFF {
        return Err(Error::Cutoff { what: "affine sl2 partition (a+b)".into(), limit: AFFINE_CUTOFF });
    }
    Ok(affine_sl2_table(c)?.table[&(a, b)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virasoro_values() {
        assert_eq!(vir_partition(0).unwrap(), 1);
        assert_eq!(vir_partition(4).unwrap(), 5);
        assert_eq!(vir_partition(12).unwrap(), 77);
        assert_eq!(vir_partition(64).unwrap(), 1_741_630);
        assert!(matches!(vir_partition(65), Err(Error::Cutoff { .. })));
    }

    #[test]
    fn pentagonal_recurrence_agrees() {
        // Euler: p(n) = Σ_{k≠0} (−1)^{k+1} p(n − k(3k−1)/2)
        let t = vir_table(64).unwrap();
        let mut p = vec![0i64; 65];
        p[0] = 1;
        for n in 1..=64i64 {
            let mut s = 0i64;
            for k in 1.. {
                let g1 = k * (3 * k - 1) / 2;
                if g1 > n {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                s += sign * p[(n - g1) as usize];
                let g2 = k * (3 * k + 1) / 2;
                if g2 <= n {
                    s += sign * p[(n - g2) as usize];
                }
            }
            p[n as usize] = s;
        }
        for n in 0..=64u32 {
            assert_eq!(t.table[&n] as i64, p[n as usize]);
        }
    }

    #[test]
    fn neveu_schwarz_values() {
        assert_eq!(ns_partition(0).unwrap(), 1);
        assert_eq!(ns_partition(3).unwrap(), 2);
        // L_{-2}, L_{-1}^2, G_{-3/2}G_{-1/2}
        assert_eq!(ns_partition(4).unwrap(), 3);
        assert_eq!(ns_partition(1).unwrap(), 1);
        assert_eq!(ns_partition(2).unwrap(), 1);
        assert!(ns_partition(65).is_err());
    }

    #[test]
    fn affine_values() {
        assert_eq!(affine_sl2_partition(1, 0).unwrap(), 1);
        assert_eq!(affine_sl2_partition(0, 1).unwrap(), 2);
        assert_eq!(affine_sl2_partition(1, 1).unwrap(), 3);
        assert_eq!(affine_sl2_partition(-1, 1).unwrap(), 1);
        assert_eq!(affine_sl2_partition(0, 0).unwrap(), 1);
        assert_eq!(affine_sl2_partition(-2, 1).unwrap(), 0);
        assert!(affine_sl2_partition(7, 6).is_err());
        let row: Vec<u64> = (0..=5).map(|b| affine_sl2_partition(0, b).unwrap()).collect();
        assert_eq!(row, vec![1, 2, 6, 14, 32, 66]);
        let row: Vec<u64> = (0..=5).map(|b| affine_sl2_partition(1, b).unwrap()).collect();
        assert_eq!(row, vec![1, 3, 8, 19, 42, 87]);
    }

    #[test]
    fn tables_record_cutoff() {
        let t = ns_table(10).unwrap();
        assert_eq!(t.cutoff, 10);
        assert_eq!(t.get(&0), Some(1));
        let a = affine_sl2_table(3).unwrap();
        assert_eq!(a.get(&(0, 0)), Some(1));
        assert_eq!(a.cutoff, 3);
    }
}
