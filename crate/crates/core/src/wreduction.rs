//! Highest weights under the quantum Hamiltonian reduction to the minimal
//! W-algebra `W^k(g, e_{−θ})`.
//!
//! A weight of `W` is a pair `(λ|_{𝔥^f}, L₀-eigenvalue)`, where
//! `𝔥^f = θ^⊥ ⊂ 𝔥̇` and `x = θ∨/2`. An affine weight `λ` of level `k` maps to
//! `λ|_{𝔥^f}` and `(λ+2ρ̂, λ)/(2(k+h∨)) − ⟨λ, x+D⟩`. Only rational weights are
//! handled here.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::affine_adm::sl2_xk;
use crate::error::{Error, Result};
use crate::exactmath::{frac, int, nullspace, rank, ExtRational, Rational};
use crate::kacline::Height;
use crate::rootsystem::{classify, integral_subsystem, CartanData, Root, SimpleType, Weight};
use crate::virasoro;

#[derive(Clone, Debug)]
pub struct MinimalWData {
    pub ty: SimpleType,
    pub data: CartanData,
    /// Basis of `𝔥^f`, as finite weights in the simple-root basis.
    pub hf_basis: Vec<Vec<Rational>>,
    theta: Weight,
    alpha0: Root,
}

/// A highest weight of the W-algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WWeight {
    pub hf: Vec<Rational>,
    pub l0: Rational,
}

impl MinimalWData {
    pub fn new(ty: SimpleType) -> Result<Self> {
        let data = CartanData::affine(ty);
        let n = ty.rank();
        let th: Vec<Rational> = data.theta()?.iter().map(|x| int(*x)).collect();
        let form = data.finite_form()?;
        // (b, θ) = 0 in the finite part
        let row: Vec<Rational> = (0..n).map(|j| (0..n).map(|i| &th[i] * &form[i][j]).sum()).collect();
        let hf_basis = nullspace(&[row], n);
        let mut coords = th;
        coords.push(Rational::zero());
        coords.push(Rational::zero());
        let mut a0 = vec![0; n + 1];
        a0[0] = 1;
        Ok(MinimalWData { ty, data, hf_basis, theta: Weight::rational(coords), alpha0: Root::real(a0) })
    }

    pub fn sl2() -> Self {
        Self::new(SimpleType::A(1)).expect("built-in type")
    }

    pub fn alpha0(&self) -> &Root {
        &self.alpha0
    }

    fn hf_weight(&self, i: usize) -> Weight {
        let mut c = self.hf_basis[i].clone();
        c.push(Rational::zero());
        c.push(Rational::zero());
        Weight::rational(c)
    }

    fn rat(x: ExtRational) -> Result<Rational> {
        x.as_rational().cloned().ok_or_else(|| Error::Unsupported("weights at irrational level".into()))
    }

    fn shifted_level(&self, w: &Weight) -> Result<Rational> {
        let k = Self::rat(self.data.level(w)?)?;
        let u = k + int(self.data.dual_coxeter_number()?);
        if u.is_zero() {
            return Err(Error::Domain("critical level".into()));
        }
        Ok(u)
    }

    /// `⟨w, x + D⟩ = (w, θ)/2 + d`.
    fn x_plus_d(&self, w: &Weight) -> Result<Rational> {
        let xt = Self::rat(self.data.form(w, &self.theta)?)?;
        Ok(xt / int(2) + Self::rat(self.data.d_coordinate(w)?)?)
    }

    fn restrict(&self, w: &Weight) -> Result<Vec<Rational>> {
        (0..self.hf_basis.len()).map(|i| Self::rat(self.data.form(w, &self.hf_weight(i))?)).collect()
    }

    /// `(λ + ρ̂, α₀)`.
    pub fn alpha0_pairing(&self, lambda: &Weight) -> Result<ExtRational> {
        self.data.coroot_pairing(&lambda.add(&self.data.rho()?), &self.alpha0)
    }

    /// `s₀.λ`.
    pub fn s0_dot(&self, lambda: &Weight) -> Result<Weight> {
        self.data.dot_reflect(lambda, &self.alpha0)
    }
}

pub fn reduce_weight(w: &MinimalWData, lambda: &Weight) -> Result<WWeight> {
    let u = w.shifted_level(lambda)?;
    let rho = w.data.rho()?;
    let two_rho = rho.scale(&int(2));
    let q = MinimalWData::rat(w.data.form(&lambda.add(&two_rho), lambda)?)?;
    let l0 = q / (int(2) * u) - w.x_plus_d(lambda)?;
    Ok(WWeight { hf: w.restrict(lambda)?, l0 })
}

/// `φ_λ(μ)` for `μ` of level 0.
pub fn phi_map(w: &MinimalWData, lambda: &Weight, mu: &Weight) -> Result<WWeight> {
    if !w.data.level(mu)?.is_zero() {
        return Err(Error::Input("φ_λ is defined on weights of level 0".into()));
    }
    let u = w.shifted_level(lambda)?;
    let lr = lambda.add(&w.data.rho()?);
    let l0 = MinimalWData::rat(w.data.form(mu, &lr)?)? / u - w.x_plus_d(mu)?;
    Ok(WWeight { hf: w.restrict(mu)?, l0 })
}

/// Rank of `φ_λ` on the level-zero weights `(λ̇, 0, d)`.
pub fn phi_rank(w: &MinimalWData, lambda: &Weight) -> Result<usize> {
    let n = w.ty.rank();
    let mut rows = Vec::new();
    for i in 0..=n {
        let mut c = vec![Rational::zero(); n + 2];
        c[if i < n { i } else { n + 1 }] = int(1);
        let img = phi_map(w, lambda, &Weight::rational(c))?;
        let mut row = img.hf;
        row.push(img.l0);
        rows.push(row);
    }
    Ok(rank(&rows))
}

/// `dim ker φ_λ`: 1 when `(λ + ρ̂, α₀) ≠ 0`, 2 otherwise.
pub fn phi_kernel_dim(w: &MinimalWData, lambda: &Weight) -> Result<usize> {
    w.shifted_level(lambda)?;
    Ok(if w.alpha0_pairing(lambda)?.is_zero() { 2 } else { 1 })
}

/// Members of `search` reducing to `nu`.
pub fn fiber(w: &MinimalWData, nu: &WWeight, search: &[Weight]) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for l in search {
        if &reduce_weight(w, l)? == nu {
            out.push(l.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WVerdict {
    AdmissibleW,
    NotAdmissibleW,
    /// Admissible by the sufficient criterion on `Π(λ) ∖ {α₀}`.
    SufficientByExtW0,
    Undetermined,
}

impl WVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            WVerdict::AdmissibleW => "admissibleW",
            WVerdict::NotAdmissibleW => "notAdmissibleW",
            WVerdict::SufficientByExtW0 => "sufficientByExtW0",
            WVerdict::Undetermined => "undetermined",
        }
    }

    pub fn is_admissible(&self) -> Option<bool> {
        match self {
            WVerdict::AdmissibleW | WVerdict::SufficientByExtW0 => Some(true),
            WVerdict::NotAdmissibleW => Some(false),
            WVerdict::Undetermined => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    pub verdict: WVerdict,
    pub rule: &'static str,
}

fn positive_off_alpha0(w: &MinimalWData, lambda: &Weight, h: i64) -> Result<bool> {
    let sub = integral_subsystem(&w.data, lambda, h)?;
    Ok(sub.simple_system.iter().all(|(r, m)| r.vector == w.alpha0.vector || *m > 0))
}

/// Admissibility of `λ_W` as far as it follows from that of `λ` and `s₀.λ`.
pub fn wadm_transfer(w: &MinimalWData, lambda: &Weight, h: i64) -> Result<Transfer> {
    let u = w.shifted_level(lambda)?;
    let t = |verdict, rule| Ok(Transfer { verdict, rule });
    if !u.is_positive() {
        return t(WVerdict::NotAdmissibleW, "no admissible weights when k + h∨ ≤ 0");
    }
    let m0 = w.alpha0_pairing(lambda)?;
    if !m0.is_integer() {
        let rep = classify(&w.data, lambda, h)?;
        let k_adm = rep.weakly_admissible.holds && rep.rational.holds;
        return if k_adm {
            t(WVerdict::AdmissibleW, "(λ, α₀) ∉ ℤ and λ is k-admissible")
        } else {
            t(WVerdict::NotAdmissibleW, "(λ, α₀) ∉ ℤ and λ is not k-admissible")
        };
    }
    let candidates = [lambda.clone(), w.s0_dot(lambda)?];
    let mut any_weak = false;
    for c in &candidates {
        let rep = classify(&w.data, c, h)?;
        if !(rep.weakly_admissible.holds && rep.rational.holds) {
            continue;
        }
        any_weak = true;
        if positive_off_alpha0(w, c, h)? {
            return t(WVerdict::SufficientByExtW0, "rational weakly admissible, positive on Π(λ) ∖ {α₀}");
        }
    }
    if !any_weak {
        return t(WVerdict::NotAdmissibleW, "neither λ nor s₀.λ is rational and weakly admissible");
    }
    t(WVerdict::Undetermined, "no criterion applies")
}

/// Central charge `k·dim g/(k+h∨) − 6k + h∨ − 4` of `W^k(g, e_{−θ})`.
pub fn central_charge(ty: SimpleType, k: &Rational) -> Result<Rational> {
    let hd = int(ty.data().hdual);
    let u = k + &hd;
    if u.is_zero() {
        return Err(Error::Domain("critical level".into()));
    }
    let data = CartanData::finite(ty);
    let dim = int((ty.rank() + 2 * data.finite_positive_roots()?.len()) as i64);
    Ok(k * dim / u - int(6) * k + hd - int(4))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryRow {
    pub r: i64,
    pub s: i64,
    pub l0: Rational,
    pub h_pq: Rational,
    pub verdict: WVerdict,
    pub vir_admissible: bool,
}

impl RecoveryRow {
    pub fn h_matches(&self) -> bool {
        self.l0 == self.h_pq
    }

    pub fn verdict_agrees(&self) -> bool {
        self.verdict.is_admissible().is_none_or(|a| a == self.vir_admissible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryReport {
    pub p: i64,
    pub q: i64,
    pub rows: Vec<RecoveryRow>,
    pub central_charge: Rational,
    pub c_matches: bool,
    /// Undetermined rows are exactly those with `h = h_{0,p} = h_{q,0}`.
    pub undetermined_at_corners_only: bool,
}

impl RecoveryReport {
    pub fn passed(&self) -> bool {
        self.c_matches
            && self.undetermined_at_corners_only
            && self.rows.iter().all(|r| r.h_matches() && r.verdict_agrees())
    }
}

/// Reduces every `λ_{r,s}` of affine `sl₂` at `k + 2 = p/q` and compares with
/// the Virasoro classification at the same level.
pub fn vir_recovery_check(p: i64, q: i64, h: i64) -> Result<RecoveryReport> {
    let w = MinimalWData::sl2();
    let k = frac(p, q) - int(2);
    let level = virasoro::VirLevel::from_pq(p, q)?;
    let c = central_charge(SimpleType::A(1), &k)?;
    let c_pq = int(1) - frac(6 * (p - q) * (p - q), p * q);
    let c_matches = c == c_pq && c == virasoro::c_of_k(&k)?;
    let corner = virasoro::h_pq(0, p, p, q)?;
    let mut rows = Vec::new();
    let mut corners_only = true;
    for x in sl2_xk(p, q)? {
        let red = reduce_weight(&w, &x.weight)?;
        let hv = virasoro::h_pq(x.r, x.s, p, q)?;
        let tr = wadm_transfer(&w, &x.weight, h)?;
        if tr.verdict == WVerdict::Undetermined && hv != corner {
            corners_only = false;
        }
        rows.push(RecoveryRow {
            r: x.r,
            s: x.s,
            l0: red.l0,
            vir_admissible: virasoro::is_c_admissible(&Height::Value(hv.clone()), &level)?,
            h_pq: hv,
            verdict: tr.verdict,
        });
    }
    Ok(RecoveryReport { p, q, rows, central_charge: c, c_matches, undetermined_at_corners_only: corners_only })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_adm::sl2_weight;

    fn ext(x: Rational) -> ExtRational {
        ExtRational::rational(x)
    }

    #[test]
    fn vacuum_reduces_to_zero() {
        for ty in [SimpleType::A(1), SimpleType::A(2), SimpleType::C(2), SimpleType::G2] {
            let w = MinimalWData::new(ty).unwrap();
            let v = w.data.vacuum_weight(ext(frac(3, 7))).unwrap();
            let r = reduce_weight(&w, &v).unwrap();
            assert!(r.l0.is_zero() && r.hf.iter().all(Zero::is_zero), "{ty:?}");
            assert_eq!(w.hf_basis.len(), ty.rank() - 1);
        }
    }

    #[test]
    fn sl2_values_and_delta_invariance() {
        let w = MinimalWData::sl2();
        let x = sl2_weight(2, 2, 4, 3).unwrap();
        assert_eq!(reduce_weight(&w, &x.weight).unwrap().l0, frac(1, 16));
        let shifted = x.weight.add(&w.data.delta().unwrap().scale(&frac(5, 3)));
        assert_eq!(reduce_weight(&w, &shifted).unwrap(), reduce_weight(&w, &x.weight).unwrap());
        let s0 = w.s0_dot(&x.weight).unwrap();
        assert_eq!(reduce_weight(&w, &s0).unwrap(), reduce_weight(&w, &x.weight).unwrap());
    }

    #[test]
    fn central_charges() {
        assert_eq!(central_charge(SimpleType::A(1), &frac(-2, 3)).unwrap(), frac(1, 2));
        // Bershadsky–Polyakov: c = −(2k+3)(3k+1)/(k+3)
        for k in [int(0), int(1), frac(1, 2)] {
            let bp = -(int(2) * &k + int(3)) * (int(3) * &k + int(1)) / (&k + int(3));
            assert_eq!(central_charge(SimpleType::A(2), &k).unwrap(), bp);
        }
        assert!(central_charge(SimpleType::A(1), &int(-2)).is_err());
    }

    #[test]
    fn phi_kernel() {
        let w = MinimalWData::sl2();
        let x = sl2_weight(1, 1, 3, 2).unwrap();
        let delta = w.data.delta().unwrap();
        assert!(phi_map(&w, &x.weight, &delta).unwrap().l0.is_zero());
        assert_eq!(phi_kernel_dim(&w, &x.weight).unwrap(), 1);
        assert_eq!(phi_rank(&w, &x.weight).unwrap(), 1);
        // (λ + ρ̂, α₀) = 0 on λ_{q,p}
        let y = sl2_weight(2, 3, 3, 2).unwrap();
        assert!(w.alpha0_pairing(&y.weight).unwrap().is_zero());
        assert_eq!(phi_kernel_dim(&w, &y.weight).unwrap(), 2);
        let a0 = w.data.root_weight(w.alpha0()).unwrap();
        assert_eq!(phi_map(&w, &y.weight, &a0).unwrap(), WWeight { hf: Vec::new(), l0: int(0) });
        assert!(phi_map(&w, &y.weight, &y.weight).is_err());
    }

    #[test]
    fn transfer_examples() {
        let w = MinimalWData::sl2();
        let x = sl2_weight(1, 2, 4, 3).unwrap();
        assert_eq!(wadm_transfer(&w, &x.weight, 20).unwrap().verdict, WVerdict::AdmissibleW);
        let y = sl2_weight(3, 4, 4, 3).unwrap();
        assert_eq!(wadm_transfer(&w, &y.weight, 20).unwrap().verdict, WVerdict::SufficientByExtW0);
        let z = sl2_weight(3, 0, 4, 3).unwrap();
        assert_eq!(wadm_transfer(&w, &z.weight, 20).unwrap().verdict, WVerdict::Undetermined);
        // vacuum at k = −2 for C2: neither kΛ₀ nor s₀.kΛ₀ is weakly admissible
        let c = MinimalWData::new(SimpleType::C(2)).unwrap();
        let v = c.data.vacuum_weight(ext(int(-2))).unwrap();
        assert_eq!(wadm_transfer(&c, &v, 20).unwrap().verdict, WVerdict::NotAdmissibleW);
        let a = MinimalWData::new(SimpleType::A(2)).unwrap();
        let v = a.data.vacuum_weight(ext(int(-2))).unwrap();
        assert_eq!(wadm_transfer(&a, &v, 20).unwrap().verdict, WVerdict::Undetermined);
        let neg = w.data.vacuum_weight(ext(int(-3))).unwrap();
        assert_eq!(wadm_transfer(&w, &neg, 20).unwrap().verdict, WVerdict::NotAdmissibleW);
    }

    #[test]
    fn recovery() {
        for (p, q) in [(4, 3), (3, 2), (5, 2), (2, 1)] {
            let r = vir_recovery_check(p, q, 20).unwrap();
            assert!(r.passed(), "{p}/{q}: {r:?}");
        }
    }
}
