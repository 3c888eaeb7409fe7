use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Exponent vector ordered graded-lexicographically on the declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&o.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Mono(out))
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Polynomial over ℚ in an ordered list of named variables.
///
/// Terms live in a map keyed by exponent vector, so iteration runs from the
/// smallest to the largest monomial in grlex order; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Mono::one(vars.len()), c);
        p
    }

    pub fn constant_like(&self, c: Rational) -> Self {
        let mut p = self.zero_like();
        p.add_term(Mono::one(self.nvars()), c);
        p
    }

    /// The variable `name` as a polynomial.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::Input(alloc::format!("unknown variable {name}")))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Mono(e), int(1));
        Ok(p)
    }

    /// Build from `(exponents, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Input("exponent length does not match variables".into()));
            }
            p.add_term(Mono(e), c);
        }
        Ok(p)
    }

    /// Affine-linear form `c_0 x_0 + … + c_{n-1} x_{n-1} + c_n`.
    pub fn linear(vars: &[&str], coeffs: &[Rational]) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate().take(n) {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Mono(e), c.clone());
        }
        if let Some(c) = coeffs.get(n) {
            p.add_term(Mono::one(n), c.clone());
        }
        p
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.degree() == 0 {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    fn check_vars(&self, o: &Self) {
        assert_eq!(self.vars, o.vars, "polynomials over different variable lists");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&int(-1))
    }

    pub fn add_assign_scaled(&mut self, o: &Self, s: &Rational) {
        self.check_vars(o);
        if s.is_zero() {
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return self.zero_like();
        }
        MultiPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_vars(o);
        let mut r = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.constant_like(int(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / d`; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check_vars(d);
        let (lm, lc) = d.leading().ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut q = self.zero_like();
        while let Some((m, c)) = rem.leading() {
            let qm = m.div(&lm).ok_or_else(|| Error::Domain("polynomial division is not exact".into()))?;
            let qc = c / &lc;
            for (dm, dc) in &d.terms {
                rem.add_term(qm.mul(dm), -(dc * &qc));
            }
            q.add_term(qm, qc);
        }
        Ok(q)
    }

    /// Evaluate at a point given in declared variable order.
    pub fn eval_slice(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::Input("point dimension does not match variables".into()));
        }
        let mut pows: Vec<Vec<Rational>> = Vec::with_capacity(point.len());
        for (i, x) in point.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(int(1));
            for k in 1..=d {
                let nxt = &v[k - 1] * x;
                v.push(nxt);
            }
            pows.push(v);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    t *= &pows[i][*e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluate with a name-keyed assignment covering every variable.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut pt = Vec::with_capacity(self.nvars());
        for v in &self.vars {
            match assignment.get(v) {
                Some(x) => pt.push(x.clone()),
                None => return Err(Error::Input(alloc::format!("assignment misses variable {v}"))),
            }
        }
        self.eval_slice(&pt)
    }

    /// Substitute a polynomial (over `target_vars`) for each variable.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() || images.is_empty() && self.nvars() > 0 {
            return Err(Error::Input("one image per variable required".into()));
        }
        let zero = match images.first() {
            Some(p) => p.zero_like(),
            None => return Ok(self.clone()),
        };
        let mut powcache: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![p.constant_like(int(1))]).collect();
        let mut out = zero;
        for (m, c) in &self.terms {
            let mut t = out.constant_like(c.clone());
            for (i, e) in m.0.iter().enumerate() {
                let e = *e as usize;
                while powcache[i].len() <= e {
                    let nxt = powcache[i].last().unwrap().mul(&images[i]);
                    powcache[i].push(nxt);
                }
                if e > 0 {
                    t = t.mul(&powcache[i][e]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Re-express over a larger or permuted variable list containing every current variable.
    pub fn embed(&self, vars: &[&str]) -> Result<MultiPoly> {
        let mut idx = Vec::with_capacity(self.nvars());
        for v in &self.vars {
            idx.push(
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Input(alloc::format!("variable {v} missing from target")))?,
            );
        }
        let mut out = MultiPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (k, x) in m.0.iter().enumerate() {
                e[idx[k]] = *x;
            }
            out.add_term(Mono(e), c.clone());
        }
        Ok(out)
    }

    /// Content as a positive rational: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rational {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in self.terms.values() {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            return Rational::zero();
        }
        Rational::new(g, l)
    }

    /// Primitive part with positive leading coefficient; zero maps to zero.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&(int(1) / c))
    }

    /// The nonzero rational `s` with `self = s · other`, if one exists.
    pub fn scalar_ratio(&self, other: &Self) -> Option<Rational> {
        if self.is_zero() || other.is_zero() || self.vars != other.vars || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m1, c1) = self.leading().unwrap();
        let (m2, c2) = other.leading().unwrap();
        if m1 != m2 {
            return None;
        }
        let s = c1 / c2;
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            if ma != mb || ca != &(cb * &s) {
                return None;
            }
        }
        Some(s)
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                out.add_term(m2, c * int(e as i64));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.vars[i])?,
                    _ => write!(f, "*{}^{}", self.vars[i], e)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::frac;

    const HC: [&str; 2] = ["h", "c"];

    fn h() -> MultiPoly {
        MultiPoly::var(&HC, "h").unwrap()
    }
    fn c() -> MultiPoly {
        MultiPoly::var(&HC, "c").unwrap()
    }

    #[test]
    fn eval_product() {
        let p = h().mul(&c());
        let mut a = BTreeMap::new();
        a.insert("h".to_string(), int(2));
        a.insert("c".to_string(), int(3));
        assert_eq!(p.eval(&a).unwrap(), int(6));
        assert_eq!(p.zero_like().eval(&a).unwrap(), int(0));
        a.remove("c");
        assert!(p.eval(&a).is_err());
    }

    #[test]
    fn eval_b_squared() {
        // 4(k+2)h + (k+1)^2 at k = -1, h = 5
        let v = ["k", "h"];
        let k = MultiPoly::var(&v, "k").unwrap();
        let hh = MultiPoly::var(&v, "h").unwrap();
        let one = MultiPoly::constant(&v, int(1));
        let two = MultiPoly::constant(&v, int(2));
        let p = k.add(&two).mul(&hh).scale(&int(4)).add(&k.add(&one).pow(2));
        assert_eq!(p.eval_slice(&[int(-1), int(5)]).unwrap(), int(20));
    }

    #[test]
    fn exact_division() {
        let a = h().add(&c()).pow(3);
        let b = h().add(&c());
        assert_eq!(a.div_exact(&b).unwrap(), b.pow(2));
        assert!(h().pow(2).add(&c()).div_exact(&h()).is_err());
    }

    #[test]
    fn ratio_and_primitive() {
        let a = h().scale(&frac(2, 3)).add(&c().scale(&frac(4, 3)));
        let b = h().add(&c().scale(&int(2)));
        assert_eq!(a.scalar_ratio(&b), Some(frac(2, 3)));
        assert_eq!(a.primitive(), b);
        assert_eq!(a.scalar_ratio(&h()), None);
    }

    #[test]
    fn compose_shift() {
        // h^2 with h -> h + 1
        let p = h().pow(2);
        let one = MultiPoly::constant(&HC, int(1));
        let q = p.compose(&[h().add(&one), c()]).unwrap();
        assert_eq!(q, h().pow(2).add(&h().scale(&int(2))).add(&one));
    }

    #[test]
    fn grlex_leading_term() {
        let p = h().add(&c().pow(2));
        assert_eq!(p.leading().unwrap().0, &Mono(vec![0, 2]));
        assert_eq!(p.degree(), Some(2));
    }
}
