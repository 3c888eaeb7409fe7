//! Virasoro highest weights: Kac values, reducibility and weak admissibility
//! of Verma modules, minimal points, c-admissible weights, minimal models and
//! the dimension of `Ext¹(L, L)` at fixed central charge.
//!
//! Central charge is parametrized as `c(k) = 1 − 6(k+1)²/(k+2)`; every
//! classification function takes the level `k` rather than `c`.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::rational::{is_integer, rational_sqrt};
use crate::exactmath::{frac, int, Rational};
use crate::kacline::{kac_value, Height, KacLine, Parity, Slope};

pub use crate::kacline::Height as VirHeight;

const KAPPA: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirWeight {
    pub h: Rational,
    pub c: Rational,
}

/// The level `k`, with `k + 2 = p/q` in lowest terms when rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VirLevel {
    Rational { k: Rational, p: i64, q: i64 },
    /// A transcendental level.
    Irrational,
}

impl VirLevel {
    pub fn rational(k: Rational) -> Result<Self> {
        let u = &k + int(2);
        if u.is_zero() {
            return Err(Error::Domain("k = -2".into()));
        }
        let p = crate::exactmath::rational::to_i64(&Rational::from_integer(u.numer().clone()))
            .ok_or_else(|| Error::Input(format!("level {k} too large")))?;
        let q = crate::exactmath::rational::to_i64(&Rational::from_integer(u.denom().clone()))
            .ok_or_else(|| Error::Input(format!("level {k} too large")))?;
        Ok(VirLevel::Rational { k, p, q })
    }

    /// The level with `k + 2 = p/q`.
    pub fn from_pq(p: i64, q: i64) -> Result<Self> {
        if q == 0 || p == 0 {
            return Err(Error::Domain("k + 2 must be a nonzero finite number".into()));
        }
        VirLevel::rational(frac(p, q) - int(2))
    }

    pub fn k(&self) -> Option<&Rational> {
        match self {
            VirLevel::Rational { k, .. } => Some(k),
            VirLevel::Irrational => None,
        }
    }

    pub fn c(&self) -> Option<Rational> {
        self.k().map(|k| c_of_k(k).expect("k != -2"))
    }

    fn slope(&self) -> Slope {
        match self {
            VirLevel::Rational { k, .. } => Slope::Rational(k + int(2)),
            VirLevel::Irrational => Slope::Generic,
        }
    }
}

fn check_level(k: &Rational) -> Result<()> {
    if *k == int(-2) {
        Err(Error::Domain("k = -2".into()))
    } else {
        Ok(())
    }
}

pub fn c_of_k(k: &Rational) -> Result<Rational> {
    check_level(k)?;
    let k1 = k + int(1);
    Ok(int(1) - int(6) * &k1 * &k1 / (k + int(2)))
}

/// `h_{m,n}(k) = ((m(k+2) − n)² − (k+1)²) / (4(k+2))`.
pub fn h_mn(m: i64, n: i64, k: &Rational) -> Result<Rational> {
    check_level(k)?;
    Ok(kac_value(&(k + int(2)), KAPPA, m, n))
}

/// `h^{p,q}_{r,s} = ((pr − qs)² − (p − q)²) / (4pq)`.
pub fn h_pq(r: i64, s: i64, p: i64, q: i64) -> Result<Rational> {
    if p == 0 || q == 0 {
        return Err(Error::Domain("pq = 0".into()));
    }
    let a = p * r - q * s;
    Ok(Rational::new((a * a - (p - q) * (p - q)).into(), (4 * p * q).into()))
}

/// The rational levels `k` with `c(k) = c` (zero, one or two of them).
pub fn k_of_c(c: &Rational) -> Result<Vec<Rational>> {
    // With u = k+2: 6u² − (13 − c)u + 6 = 0.
    let b = int(13) - c;
    let disc = &b * &b - int(144);
    let root = rational_sqrt(&disc).ok_or_else(|| Error::Unsupported(format!("c = {c} gives an irrational level")))?;
    let mut out: Vec<Rational> = [&b + &root, &b - &root].into_iter().map(|u| u / int(12) - int(2)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn kac_line(h: &Height, level: &VirLevel) -> Result<KacLine> {
    KacLine::new(level.slope(), KAPPA, h, Parity::Any)
}

pub fn is_verma_irreducible(h: &Height, level: &VirLevel) -> Result<bool> {
    kac_line(h, level)?.is_irreducible()
}

pub fn is_weakly_admissible(h: &Height, level: &VirLevel) -> Result<bool> {
    kac_line(h, level)?.is_weakly_admissible()
}

pub fn minimal_points(h: &Height, level: &VirLevel) -> Result<Vec<(i64, i64)>> {
    kac_line(h, level)?.minimal_points()
}

fn value_at(h: &Height, level: &VirLevel) -> Option<Rational> {
    match (h, level) {
        (Height::Value(v), _) => Some(v.clone()),
        (Height::Kac(m, n), VirLevel::Rational { k, .. }) => Some(kac_value(&(k + int(2)), KAPPA, *m, *n)),
        (Height::Kac(..), VirLevel::Irrational) => None,
    }
}

/// Whether `(h, c(k))` is c-admissible.
///
/// Irrational `k`: `h = h_{m,n}(k)` with `m, n > 0`. Rational `k + 2 = p/q > 0`:
/// `h = h_{r,s}` for `0 ≤ r ≤ q`, `0 ≤ s ≤ p` other than the corners `(0,p), (q,0)`.
/// Rational `k + 2 < 0`: never.
pub fn is_c_admissible(h: &Height, level: &VirLevel) -> Result<bool> {
    match level {
        VirLevel::Irrational => kac_line(h, level)?.exists_product(true),
        VirLevel::Rational { p, q, .. } => {
            if *p < 0 {
                return Ok(false);
            }
            let v = value_at(h, level).expect("rational level");
            let corner = h_pq(0, *p, *p, *q)?;
            if v == corner {
                return Ok(false);
            }
            for r in 0..=*q {
                for s in 0..=*p {
                    if h_pq(r, s, *p, *q)? == v {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
    }
}

/// Reducible, weakly admissible and with a unique minimal point up to sign:
/// the sufficient condition for `Ext¹(L, L) = 0` at fixed central charge.
pub fn unique_minimal_point_certifies(h: &Height, level: &VirLevel) -> Result<bool> {
    let line = kac_line(h, level)?;
    Ok(!line.is_irreducible()? && line.is_weakly_admissible()? && line.has_unique_minimal_point()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub r: i64,
    pub s: i64,
    pub h: Rational,
}

fn check_coprime(p: i64, q: i64, min: i64) -> Result<()> {
    if p < min || q < min {
        return Err(Error::Input(format!("need p, q >= {min}, got ({p}, {q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Input(format!("p = {p} and q = {q} are not coprime")));
    }
    Ok(())
}

/// Keeps one representative of each orbit of `(r,s) ↦ (q−r, p−s)`.
fn dedupe(points: impl Iterator<Item = (i64, i64)>, p: i64, q: i64) -> Result<Vec<GridPoint>> {
    let mut out = Vec::new();
    for (r, s) in points {
        if (r, s) <= (q - r, p - s) {
            out.push(GridPoint { r, s, h: h_pq(r, s, p, q)? });
        }
    }
    Ok(out)
}

/// c-admissible weights at `k + 2 = p/q`, one grid point per value of `h`.
pub fn admissible_grid(p: i64, q: i64) -> Result<Vec<GridPoint>> {
    check_coprime(p, q, 1)?;
    let pts = (0..=q).flat_map(|r| (0..=p).map(move |s| (r, s))).filter(|&rs| rs != (0, p) && rs != (q, 0));
    dedupe(pts, p, q)
}

/// Minimal-model weights `h^{p,q}_{r,s}`, `0 < r < q`, `0 < s < p`.
pub fn minimal_models(p: i64, q: i64) -> Result<Vec<GridPoint>> {
    check_coprime(p, q, 2)?;
    let pts = (1..q).flat_map(|r| (1..p).map(move |s| (r, s)));
    dedupe(pts, p, q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRow {
    pub r: i64,
    pub s: i64,
    pub h: Rational,
    pub weakly_admissible: bool,
    pub c_admissible: bool,
    pub minimal_model: bool,
}

/// Every point of the rectangle `0 ≤ r ≤ q`, `0 ≤ s ≤ p` with its verdicts.
pub fn classify_grid(p: i64, q: i64) -> Result<Vec<GridRow>> {
    check_coprime(p, q, 1)?;
    let level = VirLevel::from_pq(p, q)?;
    let mut out = Vec::new();
    for r in 0..=q {
        for s in 0..=p {
            let h = Height::Value(h_pq(r, s, p, q)?);
            out.push(GridRow {
                r,
                s,
                h: h_pq(r, s, p, q)?,
                weakly_admissible: is_weakly_admissible(&h, &level)?,
                c_admissible: is_c_admissible(&h, &level)?,
                minimal_model: 0 < r && r < q && 0 < s && s < p,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelfExtCase {
    Irreducible,
    Integral,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfExt {
    pub dim: u8,
    pub case: Option<SelfExtCase>,
    pub note: Option<&'static str>,
}

/// `dim Ext¹(L(h,c), L(h,c))` at fixed central charge `c = c(k)`.
///
/// It is 1 when the Verma module is irreducible, when `b` and `b/(k+2)` are
/// nonzero integers with `k + 2 ≠ ±1`, or when `c ∈ {1, 25}` and `h ≠ 0`, and 0
/// otherwise.
pub fn selfext_dim_vir(h: &Height, level: &VirLevel) -> Result<SelfExt> {
    let line = kac_line(h, level)?;
    if line.is_irreducible()? {
        return Ok(SelfExt { dim: 1, case: Some(SelfExtCase::Irreducible), note: None });
    }
    let VirLevel::Rational { k, .. } = level else {
        return Ok(SelfExt { dim: 0, case: None, note: Some("b irrational") });
    };
    let u = k + int(2);
    let v = value_at(h, level).expect("rational level");
    let b = line.b_square.as_ref().and_then(rational_sqrt);
    let mut note = None;
    match &b {
        Some(b) => {
            let unit = u.abs().is_one();
            if !b.is_zero() && !unit && is_integer(b) && is_integer(&(b / &u)) {
                return Ok(SelfExt { dim: 1, case: Some(SelfExtCase::Integral), note: None });
            }
        }
        None => note = Some("b irrational"),
    }
    let c = c_of_k(k)?;
    if (c == int(1) || c == int(25)) && !v.is_zero() {
        return Ok(SelfExt { dim: 1, case: Some(SelfExtCase::Boundary), note });
    }
    Ok(SelfExt { dim: 0, case: None, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn val(x: Rational) -> Height {
        Height::Value(x)
    }

    #[test]
    fn values() {
        for k in [frac(1, 3), frac(-7, 2), int(5)] {
            assert_eq!(h_mn(1, 1, &k).unwrap(), int(0));
        }
        assert_eq!(c_of_k(&(frac(4, 3) - int(2))).unwrap(), frac(1, 2));
        assert_eq!(h_pq(2, 2, 4, 3).unwrap(), frac(1, 16));
        assert!(c_of_k(&int(-2)).is_err());
        assert!(h_mn(1, 2, &int(-2)).is_err());
        // h^{p,q}_{r,s} is h_{r,s} at k + 2 = p/q
        assert_eq!(h_pq(1, 2, 4, 3).unwrap(), h_mn(1, 2, &(frac(4, 3) - int(2))).unwrap());
    }

    #[test]
    fn k_of_c_roots() {
        let ks = k_of_c(&frac(1, 2)).unwrap();
        assert!(ks.contains(&(frac(4, 3) - int(2))) && ks.contains(&(frac(3, 4) - int(2))));
        assert_eq!(k_of_c(&int(1)).unwrap(), vec![int(-1)]);
        assert_eq!(k_of_c(&int(25)).unwrap(), vec![int(-3)]);
        assert!(k_of_c(&int(2)).is_err());
    }

    #[test]
    fn line_criteria() {
        let lvl = VirLevel::from_pq(4, 3).unwrap();
        // 4x − 3y = 3b has no solution for b = 1/2 (b² = 16h/3 + 1/9)
        let h = val(frac(7, 192));
        assert!(is_verma_irreducible(&h, &lvl).unwrap() && is_weakly_admissible(&h, &lvl).unwrap());
        assert!(is_weakly_admissible(&val(int(0)), &lvl).unwrap());
        assert!(!is_verma_irreducible(&val(int(0)), &lvl).unwrap());
        let neg = VirLevel::from_pq(-1, 2).unwrap();
        assert!(!is_weakly_admissible(&Height::Kac(1, 1), &neg).unwrap());
    }

    #[test]
    fn minimal_point_examples() {
        let lvl = VirLevel::from_pq(4, 3).unwrap();
        assert_eq!(minimal_points(&val(int(0)), &lvl).unwrap(), vec![(1, 1)]);
        assert_eq!(minimal_points(&Height::Kac(0, 0), &lvl).unwrap(), vec![(-3, -4), (3, 4)]);
        assert_eq!(minimal_points(&Height::Kac(2, 1), &VirLevel::Irrational).unwrap(), vec![(2, 1)]);
        assert_eq!(minimal_points(&Height::Kac(-2, -1), &VirLevel::Irrational).unwrap(), vec![(2, 1)]);
    }

    #[test]
    fn c_admissible_examples() {
        let lvl = VirLevel::from_pq(4, 3).unwrap();
        assert!(is_c_admissible(&val(int(0)), &lvl).unwrap());
        assert!(!is_c_admissible(&val(h_pq(3, 0, 4, 3).unwrap()), &lvl).unwrap());
        let neg = VirLevel::from_pq(-1, 2).unwrap();
        assert!(!is_c_admissible(&Height::Kac(1, 1), &neg).unwrap());
        assert!(is_c_admissible(&Height::Kac(2, 3), &VirLevel::Irrational).unwrap());
        assert!(!is_c_admissible(&Height::Kac(2, -3), &VirLevel::Irrational).unwrap());
    }

    #[test]
    fn grids() {
        let mm: Vec<_> = minimal_models(4, 3).unwrap().into_iter().map(|g| g.h).collect();
        assert_eq!(mm.len(), 3);
        for h in [int(0), frac(1, 2), frac(1, 16)] {
            assert!(mm.contains(&h));
        }
        let g = admissible_grid(2, 1).unwrap();
        let rs: Vec<_> = g.iter().map(|x| (x.r, x.s)).collect();
        assert_eq!(rs, vec![(0, 0), (0, 1)]);
        for p in 1..8 {
            assert_eq!(admissible_grid(p, 1).unwrap().len() as i64, p);
        }
        assert!(admissible_grid(4, 2).is_err());
        assert!(minimal_models(3, 1).is_err());
    }

    #[test]
    fn selfext_examples() {
        let lvl = VirLevel::from_pq(4, 3).unwrap();
        let generic = selfext_dim_vir(&val(frac(7, 192)), &lvl).unwrap();
        assert_eq!((generic.dim, generic.case), (1, Some(SelfExtCase::Irreducible)));
        let c1 = VirLevel::rational(int(-1)).unwrap();
        assert_eq!(selfext_dim_vir(&val(frac(1, 4)), &c1).unwrap().dim, 1);
        for g in minimal_models(4, 3).unwrap() {
            assert_eq!(selfext_dim_vir(&val(g.h), &lvl).unwrap().dim, 0);
        }
        // k + 2 = 2, h = h_{2,0}: b = 4 and b/(k+2) = 2
        let two = VirLevel::from_pq(2, 1).unwrap();
        let s = selfext_dim_vir(&Height::Kac(2, 0), &two).unwrap();
        assert_eq!((s.dim, s.case), (1, Some(SelfExtCase::Integral)));
    }
}
