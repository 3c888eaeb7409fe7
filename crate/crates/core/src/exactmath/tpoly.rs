use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Polynomial in the deformation variable `t`; `coeffs[i]` multiplies `t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly {
    coeffs: Vec<Rational>,
}

/// t-adic valuation of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TValuation {
    Finite(u32),
    Infinite,
}

impl TValuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            TValuation::Finite(v) => Some(v),
            TValuation::Infinite => None,
        }
    }
}

impl fmt::Display for TValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TValuation::Finite(v) => write!(f, "{v}"),
            TValuation::Infinite => write!(f, "inf"),
        }
    }
}

impl TPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `t^k`.
    pub fn t_pow(k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = int(1);
        TPoly { coeffs: v }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Truncate to the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Smallest power of `t` with a nonzero coefficient.
pub fn t_valuation(q: &TPoly) -> TValuation {
    match q.coeffs.iter().position(|c| !c.is_zero()) {
        Some(i) => TValuation::Finite(i as u32),
        None => TValuation::Infinite,
    }
}

fn check_dims(p: &MultiPoly, pts: [&[Rational]; 3]) -> Result<()> {
    for v in pts {
        if v.len() != p.nvars() {
            return Err(Error::Input("deformation data does not match the polynomial's variables".into()));
        }
    }
    Ok(())
}

/// Substitute `x ↦ λ_x + t μ_x + t² μ′_x` for every variable of `p`.
///
/// The three points are coordinate vectors in `p`'s variable order.
pub fn deform(p: &MultiPoly, lambda: &[Rational], mu: &[Rational], mu2: &[Rational]) -> Result<TPoly> {
    let n = p.degree().unwrap_or(0) as usize * 2 + 1;
    deform_truncated(p, lambda, mu, mu2, n)
}

/// As [`deform`] but only the coefficients of `t^0 … t^{n-1}`.
pub fn deform_truncated(
    p: &MultiPoly,
    lambda: &[Rational],
    mu: &[Rational],
    mu2: &[Rational],
    n: usize,
) -> Result<TPoly> {
    check_dims(p, [lambda, mu, mu2])?;
    if n == 0 {
        return Ok(TPoly::zero());
    }
    let nv = p.nvars();
    // powers[i][e] = (λ_i + t μ_i + t² μ′_i)^e mod t^n
    let mut powers: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(nv);
    for i in 0..nv {
        let base = {
            let mut b = vec![Rational::zero(); n];
            b[0] = lambda[i].clone();
            if n > 1 {
                b[1] = mu[i].clone();
            }
            if n > 2 {
                b[2] = mu2[i].clone();
            }
            b
        };
        let d = p.degree_in(i) as usize;
        let mut list = Vec::with_capacity(d + 1);
        let mut one = vec![Rational::zero(); n];
        one[0] = int(1);
        list.push(one);
        for e in 1..=d {
            let prev: &Vec<Rational> = &list[e - 1];
            list.push(mul_trunc(prev, &base, n));
        }
        powers.push(list);
    }
    let mut acc = vec![Rational::zero(); n];
    for (m, c) in p.terms() {
        let mut term = vec![Rational::zero(); n];
        term[0] = c.clone();
        for (i, e) in m.0.iter().enumerate() {
            if *e > 0 {
                term = mul_trunc(&term, &powers[i][*e as usize], n);
            }
        }
        for (a, t) in acc.iter_mut().zip(term) {
            *a += t;
        }
    }
    Ok(TPoly::new(acc))
}

pub(crate) fn mul_trunc(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn mul_trunc_int(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `D · p(λ + tμ + t²μ′) mod tⁿ` for a nonzero integer `D` chosen to clear all
/// denominators, so the series has integer coefficients and the same valuation.
fn cleared_series(p: &MultiPoly, lambda: &[Rational], mu: &[Rational], mu2: &[Rational], n: usize) -> Vec<BigInt> {
    let nv = p.nvars();
    let cden = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut powers: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(nv);
    let mut dpowers: Vec<Vec<BigInt>> = Vec::with_capacity(nv);
    for i in 0..nv {
        let d = [&lambda[i], &mu[i], &mu2[i]].iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled = |x: &Rational| (x * Rational::from_integer(d.clone())).to_integer();
        let mut base = vec![BigInt::zero(); n];
        for (k, x) in [&lambda[i], &mu[i], &mu2[i]].into_iter().enumerate().take(n) {
            base[k] = scaled(x);
        }
        let deg = p.degree_in(i) as usize;
        let mut one = vec![BigInt::zero(); n];
        one[0] = BigInt::one();
        let mut list = vec![one];
        let mut dl = vec![BigInt::one()];
        for e in 1..=deg {
            list.push(mul_trunc_int(&list[e - 1], &base, n));
            dl.push(&dl[e - 1] * &d);
        }
        powers.push(list);
        dpowers.push(dl);
    }
    let degs: Vec<usize> = (0..nv).map(|i| p.degree_in(i) as usize).collect();
    let mut acc = vec![BigInt::zero(); n];
    for (m, c) in p.terms() {
        let mut scale = (c * Rational::from_integer(cden.clone())).to_integer();
        let mut term: Option<Vec<BigInt>> = None;
        for (i, e) in m.0.iter().enumerate() {
            let e = *e as usize;
            scale *= &dpowers[i][degs[i] - e];
            if e > 0 {
                term = Some(match term {
                    None => powers[i][e].clone(),
                    Some(t) => mul_trunc_int(&t, &powers[i][e], n),
                });
            }
        }
        match term {
            None => acc[0] += scale,
            Some(t) => {
                for (a, x) in acc.iter_mut().zip(t) {
                    if !x.is_zero() {
                        *a += x * &scale;
                    }
                }
            }
        }
    }
    acc
}

/// t-adic valuation of `p(λ + tμ + t²μ′)` without expanding the full polynomial.
///
/// Precision is doubled until a nonzero coefficient appears or the total degree
/// bound `2·deg p` is passed, in which case the composite is identically zero.
pub fn deformed_valuation(p: &MultiPoly, lambda: &[Rational], mu: &[Rational], mu2: &[Rational]) -> Result<TValuation> {
    check_dims(p, [lambda, mu, mu2])?;
    let bound = p.degree().unwrap_or(0) as usize * 2 + 1;
    let mut n = 4usize.min(bound);
    loop {
        let q = cleared_series(p, lambda, mu, mu2, n);
        if let Some(v) = q.iter().position(|c| !c.is_zero()) {
            return Ok(TValuation::Finite(v as u32));
        }
        if n >= bound {
            return Ok(TValuation::Infinite);
        }
        n = (n * 2).min(bound);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::frac;

    #[test]
    fn valuations() {
        assert_eq!(t_valuation(&TPoly::new(vec![int(0), int(0), int(1), int(2)])), TValuation::Finite(2));
        assert_eq!(t_valuation(&TPoly::constant(int(5))), TValuation::Finite(0));
        assert_eq!(t_valuation(&TPoly::zero()), TValuation::Infinite);
        assert_eq!(t_valuation(&TPoly::new(vec![int(0)])), TValuation::Infinite);
    }

    #[test]
    fn deform_examples() {
        let h = MultiPoly::var(&["h"], "h").unwrap();
        let l = [int(3)];
        let m = [int(1)];
        let z = [int(0)];
        assert_eq!(deform(&h, &l, &m, &z).unwrap(), TPoly::new(vec![int(3), int(1)]));
        assert_eq!(deform(&h.pow(2), &l, &m, &z).unwrap(), TPoly::new(vec![int(9), int(6), int(1)]));
    }

    #[test]
    fn deform_shifted_linear_form_is_t() {
        // h - h0 at h = h0 along μ = (h:1, c:0)
        let vars = ["h", "c"];
        let h0 = frac(-3, 7);
        let p = MultiPoly::var(&vars, "h").unwrap().sub(&MultiPoly::constant(&vars, h0.clone()));
        let q = deform(&p, &[h0, frac(5, 2)], &[int(1), int(0)], &[int(0), int(0)]).unwrap();
        assert_eq!(q, TPoly::t_pow(1));
    }

    #[test]
    fn truncated_valuation_matches_full() {
        let vars = ["h", "c"];
        let h = MultiPoly::var(&vars, "h").unwrap();
        let c = MultiPoly::var(&vars, "c").unwrap();
        let p = h.sub(&c).pow(5).mul(&h.add(&c));
        let l = [int(2), int(2)];
        let mu = [int(1), int(3)];
        let mu2 = [int(0), int(1)];
        let full = deform(&p, &l, &mu, &mu2).unwrap();
        assert_eq!(deformed_valuation(&p, &l, &mu, &mu2).unwrap(), t_valuation(&full));
        assert_eq!(t_valuation(&full), TValuation::Finite(5));
    }
}
