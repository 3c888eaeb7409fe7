//! Integral points on the lines `x·u − y = ±b(h)` attached to a highest weight
//! `h` of the Virasoro (`u = k+2`, `κ = 4`) or Neveu–Schwarz (`u = 2k+3`,
//! `κ = 8`) algebra, where `b² = κ·u·h + (u−1)²`.
//!
//! A point `(m, n)` lies on one of the two lines iff `h = h_{m,n}`, with
//! `h_{m,n} = ((m·u − n)² − (u−1)²)/(κ·u)`.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::{ceil_i64, floor_i64, rational_sqrt, to_i64};
use crate::exactmath::{int, Rational};

/// Longest run of lattice steps scanned when locating sign changes of `m·n`.
pub const MAX_SCAN: i64 = 1_000_000;

/// The slope `u`: either a nonzero rational or a transcendental number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Rational(Rational),
    Generic,
}

/// A highest weight `h`, either as a number or symbolically as `h_{m,n}`.
///
/// At a transcendental slope the only rational values of the form `h_{m,n}`
/// are `h_{±1,±1} = 0` and `h_{±1,∓1} = 4/κ`; every other Kac value must be
/// given symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Height {
    Value(Rational),
    Kac(i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Any,
    /// Only points with `m ≡ n (mod 2)` count.
    Nice,
}

pub fn kac_value(u: &Rational, kappa: i64, m: i64, n: i64) -> Rational {
    let line = u * int(m) - int(n);
    let shift = u - int(1);
    (&line * &line - &shift * &shift) / (int(kappa) * u)
}

#[derive(Clone, Debug)]
pub struct KacLine {
    pub slope: Slope,
    /// `b²`, when rational.
    pub b_square: Option<Rational>,
    parity: Parity,
    /// A point of the `+b` line; the `−b` line is its negative.
    base: Option<(i64, i64)>,
    /// Primitive direction `(Q, P)` for `u = P/Q`; zero at a generic slope.
    step: (i64, i64),
}

impl KacLine {
    pub fn new(slope: Slope, kappa: i64, h: &Height, parity: Parity) -> Result<Self> {
        match &slope {
            Slope::Generic => {
                let base = match h {
                    Height::Kac(m, n) => Some((*m, *n)),
                    Height::Value(v) if v.is_zero() => Some((1, 1)),
                    Height::Value(v) if *v == Rational::new(4.into(), kappa.into()) => Some((1, -1)),
                    Height::Value(_) => None,
                };
                let b_square = match h {
                    Height::Kac(0, n) => Some(int(n * n)),
                    _ => None,
                };
                Ok(KacLine { slope, b_square, parity, base, step: (0, 0) })
            }
            Slope::Rational(u) => {
                if u.is_zero() {
                    return Err(Error::Domain("slope u = 0".into()));
                }
                let v = match h {
                    Height::Value(v) => v.clone(),
                    Height::Kac(m, n) => kac_value(u, kappa, *m, *n),
                };
                let shift = u - int(1);
                let b_square = int(kappa) * u * &v + &shift * &shift;
                let big = |x: &num_bigint::BigInt| {
                    to_i64(&Rational::from_integer(x.clone()))
                        .ok_or_else(|| Error::Input(format!("slope {u} too large")))
                };
                let (p, q) = (big(u.numer())?, big(u.denom())?);
                let base = match rational_sqrt(&b_square) {
                    Some(b) => match to_i64(&(int(q) * b)) {
                        // p·x − q·y = q·b
                        Some(target) => {
                            let e = p.extended_gcd(&q);
                            let sign = e.gcd.signum();
                            let (x, y) = (e.x * sign * target, -e.y * sign * target);
                            let x0 = x.rem_euclid(q);
                            let j = (x - x0) / q;
                            Some((x0, y - p * j))
                        }
                        None => None,
                    },
                    None => None,
                };
                Ok(KacLine { slope, b_square: Some(b_square), parity, base, step: (q, p) })
            }
        }
    }

    fn counts(&self, pt: (i64, i64)) -> bool {
        self.parity == Parity::Any || (pt.0 - pt.1) % 2 == 0
    }

    fn at(&self, j: i64) -> (i64, i64) {
        let (x, y) = self.base.expect("line has points");
        (x + self.step.0 * j, y + self.step.1 * j)
    }

    /// True when either line carries an admissible (nice, if required) point.
    pub fn has_points(&self) -> bool {
        match self.base {
            None => false,
            Some(b) => self.counts(b) || (self.step != (0, 0) && self.counts(self.at(1))),
        }
    }

    /// Range of `j` outside which `m·n` has the sign of `P`, padded by 3.
    fn window(&self) -> Result<(i64, i64)> {
        let (x0, y0) = self.base.expect("line has points");
        let (q, p) = self.step;
        let r1 = Rational::new((-x0).into(), q.into());
        let r2 = Rational::new((-y0).into(), p.into());
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        let (lo, hi) = (floor_i64(&lo) - 3, ceil_i64(&hi) + 3);
        if hi - lo > MAX_SCAN {
            return Err(Error::Cutoff { what: "lattice points on a Kac line".into(), limit: MAX_SCAN });
        }
        Ok((lo, hi))
    }

    /// Points of the `+b` line where `m·n` may take either sign.
    fn central_points(&self) -> Result<Vec<(i64, i64)>> {
        let Some(b) = self.base else { return Ok(Vec::new()) };
        if self.step == (0, 0) {
            return Ok(if self.counts(b) { alloc::vec![b] } else { Vec::new() });
        }
        let (lo, hi) = self.window()?;
        Ok((lo..=hi).map(|j| self.at(j)).filter(|pt| self.counts(*pt)).collect())
    }

    /// Whether some counted point has `m·n > 0` (`positive`) or `m·n < 0`.
    pub fn exists_product(&self, positive: bool) -> Result<bool> {
        if !self.has_points() {
            return Ok(false);
        }
        let hit = |pt: &(i64, i64)| {
            let s = pt.0.signum() * pt.1.signum();
            if positive {
                s > 0
            } else {
                s < 0
            }
        };
        if self.central_points()?.iter().any(hit) {
            return Ok(true);
        }
        // Far along the line sign(m·n) = sign(P).
        Ok(self.step != (0, 0) && (self.step.1 > 0) == positive)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(!self.exists_product(true)?)
    }

    pub fn is_weakly_admissible(&self) -> Result<bool> {
        Ok(!self.exists_product(false)?)
    }

    /// Counted points of both lines with `|m|, |n| ≤ bound`, sorted.
    pub fn points_within(&self, bound: i64) -> Result<Vec<(i64, i64)>> {
        let Some(b) = self.base else { return Ok(Vec::new()) };
        let mut out = Vec::new();
        if self.step == (0, 0) {
            out.push(b);
        } else {
            let q = self.step.0;
            let lo = floor_i64(&Rational::new((-bound - b.0).into(), q.into()));
            let hi = ceil_i64(&Rational::new((bound - b.0).into(), q.into()));
            if hi - lo > MAX_SCAN {
                return Err(Error::Cutoff { what: "lattice points on a Kac line".into(), limit: MAX_SCAN });
            }
            out.extend((lo..=hi).map(|j| self.at(j)));
        }
        let neg: Vec<_> = out.iter().map(|p| (-p.0, -p.1)).collect();
        out.extend(neg);
        out.retain(|p| p.0.abs() <= bound && p.1.abs() <= bound && self.counts(*p));
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Points with `m·n > 0` minimal among the positive products on one line.
    ///
    /// Of the two lines `±b`, the one whose minimal set contains the smallest
    /// point with `m, n > 0` is reported.
    pub fn minimal_points(&self) -> Result<Vec<(i64, i64)>> {
        let pts: Vec<_> = self.central_points()?.into_iter().filter(|p| p.0 * p.1 > 0).collect();
        let Some(best) = pts.iter().map(|p| p.0 * p.1).min() else { return Ok(Vec::new()) };
        let mut plus: Vec<_> = pts.into_iter().filter(|p| p.0 * p.1 == best).collect();
        plus.sort();
        if self.b_square.as_ref().is_some_and(|b| b.is_zero()) {
            return Ok(plus);
        }
        let mut minus: Vec<_> = plus.iter().map(|p| (-p.0, -p.1)).collect();
        minus.sort();
        let key = |s: &[(i64, i64)]| s.iter().filter(|p| p.0 > 0).min().copied();
        Ok(match (key(&plus), key(&minus)) {
            (Some(a), Some(b)) if b < a => minus,
            (None, Some(_)) => minus,
            _ => plus,
        })
    }

    /// The criterion for a vanishing self-extension: exactly one minimal
    /// point, or exactly two of the form `(m,n), (−m,−n)`.
    pub fn has_unique_minimal_point(&self) -> Result<bool> {
        let m = self.minimal_points()?;
        Ok(match m.as_slice() {
            [_] => true,
            [a, b] => a.0 == -b.0 && a.1 == -b.1,
            _ => false,
        })
    }

    /// Slope numerator sign, for rational slopes.
    pub fn slope_positive(&self) -> Option<bool> {
        match &self.slope {
            Slope::Rational(u) => Some(u.is_positive()),
            Slope::Generic => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::frac;

    fn vir(u: Rational, m: i64, n: i64) -> KacLine {
        KacLine::new(Slope::Rational(u), 4, &Height::Kac(m, n), Parity::Any).unwrap()
    }

    #[test]
    fn kac_points_lie_on_line() {
        let u = frac(4, 3);
        for (m, n) in [(1, 1), (2, 3), (0, 4), (3, 0), (-2, 5)] {
            let l = vir(u.clone(), m, n);
            let pts = l.points_within(20).unwrap();
            assert!(pts.contains(&(m, n)) || pts.contains(&(-m, -n)), "{m},{n}");
            for p in pts {
                assert_eq!(kac_value(&u, 4, p.0, p.1), kac_value(&u, 4, m, n));
            }
        }
    }

    #[test]
    fn minimal_point_examples() {
        let l = vir(frac(4, 3), 1, 1);
        assert_eq!(l.minimal_points().unwrap(), alloc::vec![(1, 1)]);
        let l = vir(frac(4, 3), 0, 0);
        assert_eq!(l.minimal_points().unwrap(), alloc::vec![(-3, -4), (3, 4)]);
        let l = vir(frac(4, 3), 0, 4);
        assert_eq!(l.minimal_points().unwrap(), alloc::vec![(-6, -4), (3, 8)]);
        assert!(!l.has_unique_minimal_point().unwrap());
    }

    #[test]
    fn negative_slope_tails() {
        let l = vir(frac(-1, 2), 1, 1);
        assert!(!l.is_weakly_admissible().unwrap());
        assert!(!l.is_irreducible().unwrap());
        let l = vir(frac(-1, 2), 3, -1);
        assert!(!l.is_weakly_admissible().unwrap());
    }

    #[test]
    fn irrational_values() {
        let l = KacLine::new(Slope::Generic, 4, &Height::Value(int(0)), Parity::Any).unwrap();
        assert!(!l.is_irreducible().unwrap() && l.is_weakly_admissible().unwrap());
        let l = KacLine::new(Slope::Generic, 4, &Height::Value(int(1)), Parity::Any).unwrap();
        assert!(l.is_irreducible().unwrap() && !l.is_weakly_admissible().unwrap());
        let l = KacLine::new(Slope::Generic, 8, &Height::Value(frac(1, 2)), Parity::Nice).unwrap();
        assert!(!l.is_weakly_admissible().unwrap());
        let l = KacLine::new(Slope::Generic, 4, &Height::Value(frac(1, 3)), Parity::Any).unwrap();
        assert!(!l.has_points());
    }

    #[test]
    fn nice_filter_with_even_slope() {
        // u = 2 = 4/2 in the NS convention: nice points step by (2, 4)
        let l = KacLine::new(Slope::Rational(int(2)), 8, &Height::Kac(1, 1), Parity::Nice).unwrap();
        let pts = l.points_within(6).unwrap();
        assert!(pts.iter().all(|p| (p.0 - p.1) % 2 == 0));
        assert!(pts.contains(&(3, 5)));
        assert!(!pts.contains(&(2, 3)));
    }
}
