//! Action on the Verma module `U(n₋) ⊗ S(𝔥)` with symbolic highest weight.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::engine::{AlgebraEngine, Element, Gen, Grade};
use crate::exactmath::{frac, int, MultiPoly, Rational};

/// Sorted product of negative generators.
pub type Monomial = Vec<Gen>;

/// Vector of the Verma module: PBW monomial ↦ coefficient in S(𝔥).
pub type VermaVec = BTreeMap<Monomial, MultiPoly>;

/// Memoized normal ordering for one engine. Each computation owns its instance.
pub struct Verma {
    pub engine: AlgebraEngine,
    vars: &'static [&'static str],
    lmul_memo: BTreeMap<(Gen, Monomial), Vec<(Monomial, Rational)>>,
    act_memo: BTreeMap<(Gen, Monomial), Vec<(Monomial, MultiPoly)>>,
}

impl Verma {
    pub fn new(engine: AlgebraEngine) -> Self {
        Verma { engine, vars: engine.vars(), lmul_memo: BTreeMap::new(), act_memo: BTreeMap::new() }
    }

    pub fn depth_of(&self, m: &[Gen]) -> Grade {
        m.iter().fold((0, 0), |acc, g| {
            let d = self.engine.depth(*g);
            (acc.0 + d.0, acc.1 + d.1)
        })
    }

    fn sign(&self, a: Gen, b: Gen) -> Rational {
        if self.engine.is_odd(a) && self.engine.is_odd(b) {
            int(-1)
        } else {
            int(1)
        }
    }

    /// Linear form of a Cartan generator (or the central element) evaluated on
    /// the weight space of a vector at depth `nu`.
    fn cartan_value(&self, form: &[Rational], nu: Grade) -> MultiPoly {
        let shift = self.engine.shift(nu);
        let mut coeffs = form.to_vec();
        let mut constant = coeffs.pop().unwrap_or_else(Rational::zero);
        for (c, s) in coeffs.iter().zip(&shift) {
            constant += c * s;
        }
        coeffs.push(constant);
        MultiPoly::linear(self.vars, &coeffs)
    }

    /// Split a bracket result into root-vector part and Cartan part at depth `nu`.
    fn split(&self, el: &Element, nu: Grade) -> (Vec<(Gen, Rational)>, MultiPoly) {
        let mut gens = Vec::new();
        let mut cartan = MultiPoly::zero(self.vars);
        for (g, c) in &el.gens {
            match self.engine.cartan_form(*g) {
                Some(f) => cartan = cartan.add(&self.cartan_value(&f, nu).scale(c)),
                None => gens.push((*g, c.clone())),
            }
        }
        if !el.central.is_zero() {
            cartan = cartan.add(&self.cartan_value(&self.engine.central_form(), nu).scale(&el.central));
        }
        (gens, cartan)
    }

    /// `y · m` inside U(n₋), rewritten in the PBW basis.
    pub fn lmul(&mut self, y: Gen, m: &[Gen]) -> Vec<(Monomial, Rational)> {
        let odd = self.engine.is_odd(y);
        if m.is_empty() || y < m[0] || (y == m[0] && !odd) {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(y);
            v.extend_from_slice(m);
            return vec![(v, int(1))];
        }
        let key = (y, m.to_vec());
        if let Some(r) = self.lmul_memo.get(&key) {
            return r.clone();
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let z = m[0];
        let rest = &m[1..];
        if y == z {
            // odd y: y² = ½[y, y]
            let br = self.engine.bracket(y, y);
            for (g, c) in br.gens {
                for (mm, cc) in self.lmul(g, rest) {
                    *acc.entry(mm).or_insert_with(Rational::zero) += &c * &cc * frac(1, 2);
                }
            }
        } else {
            // y z r = ± z (y r) + [y, z] r
            let s = self.sign(y, z);
            for (mm, c) in self.lmul(y, rest) {
                for (m2, c2) in self.lmul(z, &mm) {
                    *acc.entry(m2).or_insert_with(Rational::zero) += &s * &c * c2;
                }
            }
            let br = self.engine.bracket(y, z);
            for (g, c) in br.gens {
                for (mm, cc) in self.lmul(g, rest) {
                    *acc.entry(mm).or_insert_with(Rational::zero) += &c * cc;
                }
            }
        }
        let out: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.lmul_memo.insert(key, out.clone());
        out
    }

    /// `x · (m v_λ)` for any generator `x`.
    pub fn act(&mut self, x: Gen, m: &[Gen]) -> Vec<(Monomial, MultiPoly)> {
        if let Some(f) = self.engine.cartan_form(x) {
            let nu = self.depth_of(m);
            return vec![(m.to_vec(), self.cartan_value(&f, nu))];
        }
        if self.engine.is_negative(x) {
            let one = MultiPoly::constant(self.vars, int(1));
            return self.lmul(x, m).into_iter().map(|(mm, c)| (mm, one.scale(&c))).collect();
        }
        if m.is_empty() {
            return Vec::new();
        }
        let key = (x, m.to_vec());
        if let Some(r) = self.act_memo.get(&key) {
            return r.clone();
        }
        let y = m[0];
        let rest = &m[1..];
        let mut acc = VermaVec::new();
        // x y r v = [x, y] r v ± y (x r v)
        let nu_rest = self.depth_of(rest);
        let (gens, cartan) = self.split(&self.engine.bracket(x, y), nu_rest);
        if !cartan.is_zero() {
            add_into(&mut acc, rest.to_vec(), &cartan);
        }
        for (g, c) in gens {
            for (mm, p) in self.act(g, rest) {
                add_into(&mut acc, mm, &p.scale(&c));
            }
        }
        let s = self.sign(x, y);
        for (mm, p) in self.act(x, rest) {
            for (m2, c2) in self.lmul(y, &mm) {
                add_into(&mut acc, m2, &p.scale(&(&s * &c2)));
            }
        }
        let out: Vec<(Monomial, MultiPoly)> = acc.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        self.act_memo.insert(key, out.clone());
        out
    }

    /// `x · w` for a Verma vector `w`.
    pub fn apply(&mut self, x: Gen, w: &VermaVec) -> VermaVec {
        let mut acc = VermaVec::new();
        for (m, p) in w {
            for (mm, q) in self.act(x, m) {
                add_into(&mut acc, mm, &q.mul(p));
            }
        }
        acc.retain(|_, p| !p.is_zero());
        acc
    }

    /// Harish-Chandra projection of a word `x_1 ⋯ x_n`: the scalar by which it acts on `v_λ`.
    pub fn hc(&mut self, word: &[Gen]) -> MultiPoly {
        let mut w = VermaVec::new();
        w.insert(Vec::new(), MultiPoly::constant(self.vars, int(1)));
        for &x in word.iter().rev() {
            w = self.apply(x, &w);
        }
        w.remove(&Vec::new()).unwrap_or_else(|| MultiPoly::zero(self.vars))
    }

    /// `HC(σ(u) · v)` for PBW monomials `u, v` of U(n₋).
    pub fn pairing(&mut self, u: &[Gen], v: &[Gen]) -> MultiPoly {
        let mut w = VermaVec::new();
        w.insert(v.to_vec(), MultiPoly::constant(self.vars, int(1)));
        // σ(y_1 ⋯ y_k) = σ(y_k) ⋯ σ(y_1): σ(y_1) acts first
        for &y in u {
            w = self.apply(self.engine.sigma(y), &w);
            if w.is_empty() {
                break;
            }
        }
        w.remove(&Vec::new()).unwrap_or_else(|| MultiPoly::zero(self.vars))
    }
}

fn add_into(acc: &mut VermaVec, m: Monomial, p: &MultiPoly) {
    match acc.get_mut(&m) {
        Some(q) => *q = q.add(p),
        None => {
            acc.insert(m, p.clone());
        }
    }
}
