use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::rational::Rational;
use super::tpoly::{TPoly, TValuation};

/// Valuations of the elementary divisors of a square matrix over ℚ[t], localized at t.
///
/// Elimination runs on power series truncated at `t^N`, pivoting on an entry of
/// minimal valuation (ties: lowest degree, then column, then row). When the
/// remaining block vanishes modulo `t^N` the precision is doubled, until `N`
/// exceeds the degree bound Σ_i max_j deg M_ij: no finite valuation can be
/// larger, so whatever is left is reported as `Infinite`.
///
/// Panics if `m` is not square.
pub fn smith_t_valuations(m: &[Vec<TPoly>]) -> Vec<TValuation> {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "smith_t_valuations needs a square matrix");
    }
    if n == 0 {
        return Vec::new();
    }
    let bound: usize = m.iter().map(|r| r.iter().filter_map(|e| e.degree()).max().unwrap_or(0)).sum();
    let mut prec = 8usize.min(bound + 1);
    loop {
        if let Some(v) = eliminate(m, prec, bound) {
            return v;
        }
        prec = (prec * 2).min(bound + 1);
    }
}

fn val(s: &[Rational]) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

fn last_nonzero(s: &[Rational]) -> usize {
    s.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

/// Power-series quotient `a / b` modulo `t^n`, where `b[0] != 0`.
fn series_div(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut q = vec![Rational::zero(); n];
    let inv = Rational::from_integer(1.into()) / &b[0];
    for k in 0..n {
        let mut acc = a.get(k).cloned().unwrap_or_else(Rational::zero);
        for j in 1..=k.min(b.len().saturating_sub(1)) {
            if !b[j].is_zero() && !q[k - j].is_zero() {
                acc -= &b[j] * &q[k - j];
            }
        }
        q[k] = acc * &inv;
    }
    q
}

/// One elimination pass at precision `prec`. `None` asks for more precision.
fn eliminate(m: &[Vec<TPoly>], prec: usize, bound: usize) -> Option<Vec<TValuation>> {
    let n = m.len();
    let mut a: Vec<Vec<Vec<Rational>>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| (0..prec).map(|i| e.coeff(i)).collect::<Vec<_>>())
                .collect()
        })
        .collect();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    while !rows.is_empty() {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for &c in &cols {
            for &r in &rows {
                if let Some(v) = val(&a[r][c]) {
                    let key = (v, last_nonzero(&a[r][c]), c, r);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((v, _, pc, pr)) = best else {
            if prec > bound {
                out.extend(core::iter::repeat_n(TValuation::Infinite, rows.len()));
                out.sort();
                return Some(out);
            }
            return None;
        };
        let unit: Vec<Rational> = a[pr][pc][v..].to_vec();
        for &r in &rows {
            if r == pr {
                continue;
            }
            let Some(_) = val(&a[r][pc]) else { continue };
            let shifted: Vec<Rational> = a[r][pc][v..].to_vec();
            let q = series_div(&shifted, &unit, prec - v);
            for &c in &cols {
                let prow = &a[pr][c];
                if val(prow).is_none() {
                    continue;
                }
                let mut upd = a[r][c].clone();
                for (i, qi) in q.iter().enumerate() {
                    if qi.is_zero() {
                        continue;
                    }
                    for j in 0..prec - i {
                        if !prow[j].is_zero() {
                            upd[i + j] -= qi * &prow[j];
                        }
                    }
                }
                a[r][c] = upd;
            }
        }
        out.push(TValuation::Finite(v as u32));
        rows.retain(|&r| r != pr);
        cols.retain(|&c| c != pc);
    }
    out.sort();
    Some(out)
}

/// Corank of the matrix modulo `t^r` for `r = 1, 2, …` up to the largest finite
/// valuation. Infinite valuations count towards every entry.
pub fn coranks_from_valuations(vals: &[TValuation]) -> Vec<usize> {
    let top = vals.iter().filter_map(|v| v.finite()).max().unwrap_or(0);
    (1..=top)
        .map(|r| vals.iter().filter(|v| v.finite().is_none_or(|x| x >= r)).count())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    fn tp(c: &[i64]) -> TPoly {
        TPoly::new(c.iter().map(|x| int(*x)).collect())
    }

    #[test]
    fn diagonal() {
        let m = vec![vec![tp(&[0, 1]), tp(&[])], vec![tp(&[]), tp(&[1])]];
        assert_eq!(smith_t_valuations(&m), vec![TValuation::Finite(0), TValuation::Finite(1)]);
    }

    #[test]
    fn zero_entry() {
        assert_eq!(smith_t_valuations(&[vec![tp(&[])]]), vec![TValuation::Infinite]);
    }

    #[test]
    fn hand_reduced() {
        let m = vec![vec![tp(&[0, 1]), tp(&[0, 1])], vec![tp(&[0, 1]), tp(&[0, 1, 1])]];
        assert_eq!(smith_t_valuations(&m), vec![TValuation::Finite(1), TValuation::Finite(2)]);
    }

    #[test]
    fn high_valuation_needs_more_precision() {
        let m = vec![vec![TPoly::t_pow(20), tp(&[])], vec![tp(&[]), TPoly::t_pow(3)]];
        assert_eq!(smith_t_valuations(&m), vec![TValuation::Finite(3), TValuation::Finite(20)]);
    }

    #[test]
    fn corank_sequence() {
        let v = [TValuation::Finite(0), TValuation::Finite(1), TValuation::Finite(3)];
        assert_eq!(coranks_from_valuations(&v), vec![2, 1, 1]);
        assert_eq!(coranks_from_valuations(&[TValuation::Finite(0)]), Vec::<usize>::new());
    }
}
