//! Neveu–Schwarz highest weights: the Virasoro classification with the
//! parity condition `m ≡ n (mod 2)` on Kac points.
//!
//! Central charge is `c(k) = 3/2 − 12(k+1)²/(2k+3)`. For rational `k` the
//! level is recorded as `2k + 3 = p/q` with `q > 0`, `p ≡ q (mod 2)` and
//! `gcd((p−q)/2, p) = 1`; `p` and `q` are both even exactly when `2k+3`
//! in lowest terms has numerator and denominator of different parity.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::rational::to_i64;
use crate::exactmath::{frac, int, Rational};
use crate::kacline::{kac_value, Height, KacLine, Parity, Slope};

const KAPPA: i64 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NSLevel {
    Rational { k: Rational, p: i64, q: i64 },
    Irrational,
}

/// A Kac point with `m ≡ n (mod 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NicePoint {
    pub m: i64,
    pub n: i64,
}

impl NicePoint {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if (m - n) % 2 != 0 {
            return Err(Error::Input(format!("({m}, {n}) has m and n of different parity")));
        }
        Ok(NicePoint { m, n })
    }
}

impl NSLevel {
    pub fn rational(k: Rational) -> Result<Self> {
        let u = int(2) * &k + int(3);
        if u.is_zero() {
            return Err(Error::Domain("k = -3/2".into()));
        }
        let big = |x: &num_bigint::BigInt| {
            to_i64(&Rational::from_integer(x.clone())).ok_or_else(|| Error::Input(format!("level {k} too large")))
        };
        let (a, b) = (big(u.numer())?, big(u.denom())?);
        let (p, q) = if (a - b) % 2 == 0 { (a, b) } else { (2 * a, 2 * b) };
        Ok(NSLevel::Rational { k, p, q })
    }

    /// The level with `2k + 3 = p/q`; `(p, q)` must satisfy the normalization.
    pub fn from_pq(p: i64, q: i64) -> Result<Self> {
        check_pq(p, q)?;
        NSLevel::rational((frac(p, q) - int(3)) / int(2))
    }

    pub fn k(&self) -> Option<&Rational> {
        match self {
            NSLevel::Rational { k, .. } => Some(k),
            NSLevel::Irrational => None,
        }
    }

    pub fn c(&self) -> Option<Rational> {
        self.k().map(|k| ns_c_of_k(k).expect("k != -3/2"))
    }

    fn slope(&self) -> Slope {
        match self {
            NSLevel::Rational { k, .. } => Slope::Rational(int(2) * k + int(3)),
            NSLevel::Irrational => Slope::Generic,
        }
    }
}

pub fn check_pq(p: i64, q: i64) -> Result<()> {
    if q <= 0 || p == 0 {
        return Err(Error::Input(format!("need q > 0 and p != 0, got ({p}, {q})")));
    }
    if (p - q) % 2 != 0 {
        return Err(Error::Input(format!("p = {p} and q = {q} differ in parity")));
    }
    if ((p - q) / 2).gcd(&p) != 1 {
        return Err(Error::Input(format!("gcd((p - q)/2, p) != 1 for ({p}, {q})")));
    }
    Ok(())
}

fn check_level(k: &Rational) -> Result<()> {
    if *k == frac(-3, 2) {
        Err(Error::Domain("k = -3/2".into()))
    } else {
        Ok(())
    }
}

pub fn ns_c_of_k(k: &Rational) -> Result<Rational> {
    check_level(k)?;
    let k1 = k + int(1);
    Ok(frac(3, 2) - int(12) * &k1 * &k1 / (int(2) * k + int(3)))
}

/// `c^{(p,q)} = 3/2 · (1 − 2(p−q)²/(pq))`.
pub fn ns_c_pq(p: i64, q: i64) -> Result<Rational> {
    if p == 0 || q == 0 {
        return Err(Error::Domain("pq = 0".into()));
    }
    Ok(frac(3, 2) * (int(1) - frac(2 * (p - q) * (p - q), p * q)))
}

/// `h_{m,n}(k) = ((m(k+3/2) − n/2)² − (k+1)²) / (2(2k+3))`.
pub fn ns_h_mn(m: i64, n: i64, k: &Rational) -> Result<Rational> {
    check_level(k)?;
    Ok(kac_value(&(int(2) * k + int(3)), KAPPA, m, n))
}

/// `h^{(p,q)}_{r,s} = ((pr − qs)² − (p − q)²) / (8pq)`.
pub fn ns_h_pq(r: i64, s: i64, p: i64, q: i64) -> Result<Rational> {
    if p == 0 || q == 0 {
        return Err(Error::Domain("pq = 0".into()));
    }
    let a = p * r - q * s;
    Ok(Rational::new((a * a - (p - q) * (p - q)).into(), (8 * p * q).into()))
}

pub fn kac_line(h: &Height, level: &NSLevel) -> Result<KacLine> {
    KacLine::new(level.slope(), KAPPA, h, Parity::Nice)
}

pub fn ns_is_verma_irreducible(h: &Height, level: &NSLevel) -> Result<bool> {
    kac_line(h, level)?.is_irreducible()
}

pub fn ns_is_weakly_admissible(h: &Height, level: &NSLevel) -> Result<bool> {
    kac_line(h, level)?.is_weakly_admissible()
}

pub fn ns_minimal_points(h: &Height, level: &NSLevel) -> Result<Vec<(i64, i64)>> {
    kac_line(h, level)?.minimal_points()
}

pub fn unique_minimal_point_certifies(h: &Height, level: &NSLevel) -> Result<bool> {
    let line = kac_line(h, level)?;
    Ok(!line.is_irreducible()? && line.is_weakly_admissible()? && line.has_unique_minimal_point()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NsVerdict {
    Admissible,
    NotAdmissible,
    /// The corner `h_{q,0} = h_{0,p}` for even `p, q`, left open in the literature.
    UnknownPerPaper,
}

impl NsVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            NsVerdict::Admissible => "admissible",
            NsVerdict::NotAdmissible => "not-admissible",
            NsVerdict::UnknownPerPaper => "unknown-per-paper",
        }
    }
}

pub fn ns_is_c_admissible(h: &Height, level: &NSLevel) -> Result<NsVerdict> {
    let yes = |b: bool| if b { NsVerdict::Admissible } else { NsVerdict::NotAdmissible };
    match level {
        NSLevel::Irrational => Ok(yes(kac_line(h, level)?.exists_product(true)?)),
        NSLevel::Rational { k, p, q } => {
            if *p < 0 {
                return Ok(NsVerdict::NotAdmissible);
            }
            let v = match h {
                Height::Value(v) => v.clone(),
                Height::Kac(m, n) => ns_h_mn(*m, *n, k)?,
            };
            if v == ns_h_pq(0, *p, *p, *q)? {
                return Ok(if p % 2 == 0 { NsVerdict::UnknownPerPaper } else { NsVerdict::NotAdmissible });
            }
            for r in 0..=*q {
                for s in (0..=*p).filter(|s| (r - s) % 2 == 0) {
                    if ns_h_pq(r, s, *p, *q)? == v {
                        return Ok(NsVerdict::Admissible);
                    }
                }
            }
            Ok(NsVerdict::NotAdmissible)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsGridPoint {
    pub r: i64,
    pub s: i64,
    pub h: Rational,
}

fn dedupe(points: impl Iterator<Item = (i64, i64)>, p: i64, q: i64) -> Result<Vec<NsGridPoint>> {
    let mut out = Vec::new();
    for (r, s) in points {
        if (r - s) % 2 == 0 && (r, s) <= (q - r, p - s) {
            out.push(NsGridPoint { r, s, h: ns_h_pq(r, s, p, q)? });
        }
    }
    Ok(out)
}

/// Nice points of the rectangle other than the corners, one per value of `h`.
pub fn ns_admissible_grid(p: i64, q: i64) -> Result<Vec<NsGridPoint>> {
    check_pq(p, q)?;
    if p < 0 {
        return Err(Error::Input("grid needs p > 0".into()));
    }
    let pts = (0..=q).flat_map(|r| (0..=p).map(move |s| (r, s))).filter(|&rs| rs != (0, p) && rs != (q, 0));
    dedupe(pts, p, q)
}

/// Minimal-series weights: inner nice points `0 < r < q`, `0 < s < p`.
pub fn ns_minimal_models(p: i64, q: i64) -> Result<Vec<NsGridPoint>> {
    check_pq(p, q)?;
    if p < 2 || q < 2 {
        return Err(Error::Input(format!("need p, q >= 2, got ({p}, {q})")));
    }
    let pts = (1..q).flat_map(|r| (1..p).map(move |s| (r, s)));
    dedupe(pts, p, q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsGridRow {
    pub r: i64,
    pub s: i64,
    pub h: Rational,
    pub weakly_admissible: bool,
    pub c_admissible: NsVerdict,
    pub minimal_model: bool,
}

/// Every nice point of the rectangle `0 ≤ r ≤ q`, `0 ≤ s ≤ p` with its verdicts.
pub fn ns_classify_grid(p: i64, q: i64) -> Result<Vec<NsGridRow>> {
    check_pq(p, q)?;
    if p < 0 {
        return Err(Error::Input("grid needs p > 0".into()));
    }
    let level = NSLevel::from_pq(p, q)?;
    let mut out = Vec::new();
    for r in 0..=q {
        for s in (0..=p).filter(|s| (r - s) % 2 == 0) {
            let h = ns_h_pq(r, s, p, q)?;
            let hh = Height::Value(h.clone());
            out.push(NsGridRow {
                r,
                s,
                h,
                weakly_admissible: ns_is_weakly_admissible(&hh, &level)?,
                c_admissible: ns_is_c_admissible(&hh, &level)?,
                minimal_model: 0 < r && r < q && 0 < s && s < p,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn values() {
        for k in [frac(1, 3), frac(-7, 2), int(5)] {
            assert_eq!(ns_h_mn(1, 1, &k).unwrap(), int(0));
            assert_eq!(ns_h_mn(3, 5, &k).unwrap(), ns_h_mn(-3, -5, &k).unwrap());
        }
        assert_eq!(ns_c_pq(3, 1).unwrap(), frac(-5, 2));
        let lvl = NSLevel::from_pq(3, 1).unwrap();
        assert_eq!(lvl.c().unwrap(), frac(-5, 2));
        assert_eq!(ns_h_pq(1, 3, 5, 3).unwrap(), ns_h_mn(1, 3, &((frac(5, 3) - int(3)) / int(2))).unwrap());
        assert!(ns_h_mn(1, 1, &frac(-3, 2)).is_err());
    }

    #[test]
    fn level_normalization() {
        // 2k + 3 = 2 = 4/2
        match NSLevel::rational(frac(-1, 2)).unwrap() {
            NSLevel::Rational { p, q, .. } => assert_eq!((p, q), (4, 2)),
            _ => unreachable!(),
        }
        match NSLevel::rational(int(1)).unwrap() {
            NSLevel::Rational { p, q, .. } => assert_eq!((p, q), (5, 1)),
            _ => unreachable!(),
        }
        assert!(NSLevel::from_pq(4, 1).is_err());
        assert!(NSLevel::from_pq(6, 2).is_err());
        assert!(NicePoint::new(1, 2).is_err());
    }

    #[test]
    fn line_criteria() {
        let zero = Height::Value(int(0));
        assert!(ns_is_weakly_admissible(&Height::Kac(3, 1), &NSLevel::Irrational).unwrap());
        assert!(!ns_is_verma_irreducible(&Height::Kac(3, 1), &NSLevel::Irrational).unwrap());
        let neg = NSLevel::from_pq(-1, 3).unwrap();
        assert!(!ns_is_weakly_admissible(&Height::Kac(1, 1), &neg).unwrap());
        assert!(ns_is_weakly_admissible(&zero, &NSLevel::from_pq(5, 3).unwrap()).unwrap());
    }

    #[test]
    fn admissibility_examples() {
        let lvl = NSLevel::from_pq(5, 3).unwrap();
        assert_eq!(ns_is_c_admissible(&Height::Kac(1, 1), &lvl).unwrap(), NsVerdict::Admissible);
        let even = NSLevel::from_pq(4, 2).unwrap();
        let corner = Height::Value(ns_h_pq(2, 0, 4, 2).unwrap());
        assert_eq!(ns_is_c_admissible(&corner, &even).unwrap(), NsVerdict::UnknownPerPaper);
        // h_{4,0} itself sits on a line through (2, −4)
        let far = Height::Value(ns_h_pq(4, 0, 4, 2).unwrap());
        assert!(!ns_is_weakly_admissible(&far, &even).unwrap());
        assert_eq!(ns_is_c_admissible(&far, &even).unwrap(), NsVerdict::NotAdmissible);
        let neg = NSLevel::from_pq(-1, 3).unwrap();
        assert_eq!(ns_is_c_admissible(&Height::Kac(1, 1), &neg).unwrap(), NsVerdict::NotAdmissible);
    }

    #[test]
    fn minimal_models_grid() {
        let mm = ns_minimal_models(4, 2).unwrap();
        assert_eq!(mm.iter().map(|g| (g.r, g.s)).collect::<Vec<_>>(), vec![(1, 1)]);
        assert_eq!(ns_h_pq(1, 3, 4, 2).unwrap(), mm[0].h);
        for (p, q) in [(5, 3), (4, 2), (8, 2), (7, 5)] {
            let lvl = NSLevel::from_pq(p, q).unwrap();
            for g in ns_minimal_models(p, q).unwrap() {
                let v = ns_is_c_admissible(&Height::Value(g.h), &lvl).unwrap();
                assert_eq!(v, NsVerdict::Admissible);
            }
        }
        assert!(ns_minimal_models(5, 1).is_err());
    }
}
