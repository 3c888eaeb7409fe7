//! Admissibility at a fixed level for untwisted affine algebras: the vacuum
//! module `L(kΛ₀)` for every simple type, and the full description of the
//! admissible weights of affine `sl₂`.
//!
//! Rational levels are written `k + h∨ = p/q` in lowest terms with `q > 0`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactmath::{frac, int, ExtRational, Rational};
use crate::rootsystem::{classify, integral_subsystem, Admissible, CartanData, Root, SimpleType, SimpleTypeData, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelPQ {
    Rational { p: i64, q: i64 },
    Irrational,
}

impl LevelPQ {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q <= 0 {
            return Err(Error::Input(format!("need q > 0, got {q}")));
        }
        if p == 0 {
            return Err(Error::Domain("critical level k = -h∨".into()));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::Input(format!("p = {p} and q = {q} are not coprime")));
        }
        Ok(LevelPQ::Rational { p, q })
    }

    pub fn from_k(ty: SimpleType, k: &Rational) -> Result<Self> {
        let u = k + int(ty.data().hdual);
        let to = |x: &num_bigint::BigInt| {
            crate::exactmath::rational::to_i64(&Rational::from_integer(x.clone()))
                .ok_or_else(|| Error::Input(format!("level {k} too large")))
        };
        if u == int(0) {
            return Err(Error::Domain("critical level k = -h∨".into()));
        }
        LevelPQ::new(to(u.numer())?, to(u.denom())?)
    }

    /// `k = p/q − h∨`.
    pub fn k(&self, ty: SimpleType) -> Option<Rational> {
        match self {
            LevelPQ::Rational { p, q } => Some(frac(*p, *q) - int(ty.data().hdual)),
            LevelPQ::Irrational => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VacuumClass {
    NotWeaklyAdmissible,
    /// k-admissible but not KW-admissible.
    KAdmissible,
    KwAdmissible,
}

impl VacuumClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            VacuumClass::NotWeaklyAdmissible => "notWeaklyAdmissible",
            VacuumClass::KAdmissible => "kAdmissible",
            VacuumClass::KwAdmissible => "kwAdmissible",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VacuumStatus {
    pub data: SimpleTypeData,
    pub level: LevelPQ,
    pub class: VacuumClass,
    pub weakly_admissible: bool,
    pub k_admissible: bool,
    pub kw_admissible: bool,
    /// Full admissibility; `Unknown` outside `sl₂` where only a conjecture is available.
    pub admissible: Admissible,
    /// Set when `admissible` is `Unknown` and the conjectured answer is yes.
    pub admissible_conjectural: bool,
    /// Self-extensions with a diagonal action of `K` split over `[g, g]`.
    pub selfext_split_over_derived: bool,
    /// `gcd(q, l)`, which selects the `h∨` or the `h` branch.
    pub gcd_q_l: Option<i64>,
}

/// Vacuum module verdicts. With `k + h∨ = p/q` and `t = h∨` if `gcd(q,l) = 1`,
/// `t = h` if `gcd(q,l) = l`: weakly admissible and k-admissible iff `p ≥ t − 1`,
/// KW-admissible iff `p ≥ t`. Irrational levels are k-admissible only.
pub fn vacuum_status(ty: SimpleType, level: &LevelPQ) -> Result<VacuumStatus> {
    let data = ty.data();
    let (weak, kw, g) = match level {
        LevelPQ::Irrational => (true, false, None),
        LevelPQ::Rational { p, q } => {
            let g = q.gcd(&data.lacety);
            let t = if g == 1 { data.hdual } else { data.h };
            (*p >= t - 1, *p >= t, Some(g))
        }
    };
    let class = if kw {
        VacuumClass::KwAdmissible
    } else if weak {
        VacuumClass::KAdmissible
    } else {
        VacuumClass::NotWeaklyAdmissible
    };
    let (admissible, conjectural) = match level {
        LevelPQ::Irrational => (Admissible::No, false),
        _ if !weak => (Admissible::No, false),
        _ if kw => (Admissible::Yes, false),
        // for sl₂ the admissible and KW-admissible vacuum levels coincide
        _ if ty == SimpleType::A(1) => (Admissible::No, false),
        _ => (Admissible::Unknown, true),
    };
    Ok(VacuumStatus {
        data,
        level: *level,
        class,
        weakly_admissible: weak,
        k_admissible: weak,
        kw_admissible: kw,
        admissible,
        admissible_conjectural: conjectural,
        selfext_split_over_derived: true,
        gcd_q_l: g,
    })
}

/// Whether the category of admissible modules at this level is empty
/// (`k + h∨ ∈ ℚ≤0`), with a note for irrational levels.
pub fn adm_category_emptiness(level: &LevelPQ) -> (bool, Option<&'static str>) {
    match level {
        LevelPQ::Rational { p, .. } => (*p <= 0, None),
        LevelPQ::Irrational => (false, Some("irrational level: the vacuum is k-admissible but the polyhedra are not defined")),
    }
}

/// The coroot `j·K + ε·α∨` of the real root `jδ + εα` of affine `sl₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineCoroot {
    pub k_coeff: i64,
    pub alpha_sign: i64,
}

impl AffineCoroot {
    pub fn root(&self) -> Root {
        // affine simple-root basis: α₀ = δ − α first, then α
        Root::real(alloc::vec![self.k_coeff, self.k_coeff + self.alpha_sign])
    }

    pub fn label(&self) -> String {
        let a = if self.alpha_sign > 0 { "+α∨" } else { "−α∨" };
        match self.k_coeff {
            0 if self.alpha_sign > 0 => "α∨".into(),
            0 => "−α∨".into(),
            1 => format!("K{a}"),
            j => format!("{j}K{a}"),
        }
    }

    /// `⟨λ + ρ̂, j·K + ε·α∨⟩` for a weight given by `(λ, α)` and its level.
    pub fn pairing(&self, finite_coord: &Rational, level: &Rational) -> Rational {
        int(self.k_coeff) * (level + int(2)) + int(self.alpha_sign) * (finite_coord + int(1))
    }
}

/// `Γ_r = {(r−1)K + α∨, (q−r+1)K − α∨}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub r: i64,
    pub p: i64,
    pub q: i64,
    pub coroots: [AffineCoroot; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coroot: AffineCoroot,
    pub lo: i64,
    pub hi: i64,
}

fn check_sl2(p: i64, q: i64) -> Result<()> {
    if p <= 0 || q <= 0 {
        return Err(Error::Input(format!("need positive p, q, got ({p}, {q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Input(format!("p = {p} and q = {q} are not coprime")));
    }
    Ok(())
}

pub fn sl2_bk(p: i64, q: i64) -> Result<Vec<Gamma>> {
    check_sl2(p, q)?;
    Ok((1..=q)
        .map(|r| Gamma {
            r,
            p,
            q,
            coroots: [
                AffineCoroot { k_coeff: r - 1, alpha_sign: 1 },
                AffineCoroot { k_coeff: q - r + 1, alpha_sign: -1 },
            ],
        })
        .collect())
}

/// `⟨λ + ρ̂, β∨⟩ ∈ [0, p·r∨]` for both `β∨ ∈ Γ`; `r∨ = 1` for `sl₂`.
pub fn sl2_polyhedron(gamma: &Gamma) -> Vec<Constraint> {
    gamma.coroots.iter().map(|c| Constraint { coroot: *c, lo: 0, hi: gamma.p }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2AdmWeight {
    pub r: i64,
    pub s: i64,
    pub p: i64,
    pub q: i64,
    /// `(λ_{r,s}, α) = (s − 1) − (r − 1)p/q`.
    pub finite_coord: Rational,
    pub weight: Weight,
}

impl Sl2AdmWeight {
    pub fn level(&self) -> Rational {
        frac(self.p, self.q) - int(2)
    }

    /// Pairings with the two coroots of `Γ_r`; equal to `(s, p − s)`.
    pub fn pairings(&self) -> (Rational, Rational) {
        let g = &sl2_bk(self.p, self.q).expect("valid level")[(self.r - 1) as usize];
        let k = self.level();
        (g.coroots[0].pairing(&self.finite_coord, &k), g.coroots[1].pairing(&self.finite_coord, &k))
    }

    pub fn is_kw(&self) -> bool {
        0 < self.s && self.s < self.p
    }
}

/// `λ_{r,s}` at level `p/q − 2`, with `D`-coordinate zero.
pub fn sl2_weight(r: i64, s: i64, p: i64, q: i64) -> Result<Sl2AdmWeight> {
    check_sl2(p, q)?;
    let fc = int(s - 1) - int(r - 1) * frac(p, q);
    let data = CartanData::affine_sl2();
    let k = frac(p, q) - int(2);
    let weight = data.affine_weight(&[ExtRational::rational(fc.clone())], ExtRational::rational(k), ExtRational::zero())?;
    Ok(Sl2AdmWeight { r, s, p, q, finite_coord: fc, weight })
}

/// `X_k = {λ_{r,s} : 1 ≤ r ≤ q, 0 ≤ s ≤ p}`.
pub fn sl2_xk(p: i64, q: i64) -> Result<Vec<Sl2AdmWeight>> {
    check_sl2(p, q)?;
    let mut out = Vec::new();
    for r in 1..=q {
        for s in 0..=p {
            out.push(sl2_weight(r, s, p, q)?);
        }
    }
    Ok(out)
}

/// For `sl₂` every point of `X_k` is k-admissible.
pub fn sl2_kadm_set(p: i64, q: i64) -> Result<Vec<Sl2AdmWeight>> {
    sl2_xk(p, q)
}

/// Interior points `1 ≤ s ≤ p − 1`.
pub fn sl2_kw_set(p: i64, q: i64) -> Result<Vec<Sl2AdmWeight>> {
    Ok(sl2_xk(p, q)?.into_iter().filter(Sl2AdmWeight::is_kw).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossValidation {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

impl CrossValidation {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Runs the general predicates on every `λ_{r,s}`: all are weakly admissible
/// and rational with `Π(λ) = Γ_r`; KW members are also dominant and
/// shifted-regular, boundary members are not.
pub fn cross_validate_sl2(p: i64, q: i64, h: i64) -> Result<CrossValidation> {
    let data = CartanData::affine_sl2();
    let bk = sl2_bk(p, q)?;
    let mut mismatches = Vec::new();
    let xs = sl2_xk(p, q)?;
    for w in &xs {
        let tag = format!("λ_{{{},{}}}", w.r, w.s);
        let rep = classify(&data, &w.weight, h)?;
        if !rep.weakly_admissible.holds {
            mismatches.push(format!("{tag}: not weakly admissible"));
        }
        if !rep.rational.holds {
            mismatches.push(format!("{tag}: not rational"));
        }
        let kw = rep.dominant.holds && rep.shifted_regular.holds && rep.kw_admissible.holds;
        if kw != w.is_kw() {
            mismatches.push(format!("{tag}: KW predicate {kw}, expected {}", w.is_kw()));
        }
        let (a, b) = w.pairings();
        if (a.clone(), b.clone()) != (int(w.s), int(w.p - w.s)) {
            mismatches.push(format!("{tag}: pairings ({a}, {b})"));
        }
        let sub = integral_subsystem(&data, &w.weight, h)?;
        let mut got: Vec<Vec<i64>> = sub.simple_system.iter().map(|(r, _)| r.vector.clone()).collect();
        let mut want: Vec<Vec<i64>> = bk[(w.r - 1) as usize].coroots.iter().map(|c| c.root().vector).collect();
        got.sort();
        want.sort();
        if got != want {
            mismatches.push(format!("{tag}: Π(λ) = {got:?}, expected {want:?}"));
        }
    }
    Ok(CrossValidation { checked: xs.len(), mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn status(t: SimpleType, p: i64, q: i64) -> VacuumStatus {
        vacuum_status(t, &LevelPQ::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn vacuum_examples() {
        let s = status(SimpleType::A(1), 1, 3);
        assert!(s.k_admissible && !s.kw_admissible);
        let s = status(SimpleType::G2, 7, 3);
        assert_eq!(s.gcd_q_l, Some(3));
        assert!(s.kw_admissible);
        let s = status(SimpleType::G2, 5, 3);
        assert_eq!(s.class, VacuumClass::KAdmissible);
        let s = status(SimpleType::G2, 4, 3);
        assert_eq!(s.class, VacuumClass::NotWeaklyAdmissible);
        // gcd(q, l) = 1 branch uses h∨ = 4
        let s = status(SimpleType::G2, 3, 1);
        assert_eq!(s.class, VacuumClass::KAdmissible);
        for t in [SimpleType::A(1), SimpleType::E8, SimpleType::C(2)] {
            let s = vacuum_status(t, &LevelPQ::Irrational).unwrap();
            assert!(s.k_admissible && !s.kw_admissible && s.admissible == Admissible::No);
        }
        assert!(LevelPQ::new(0, 1).is_err());
        assert!(LevelPQ::from_k(SimpleType::A(1), &int(-2)).is_err());
    }

    #[test]
    fn emptiness() {
        let k = LevelPQ::from_k(SimpleType::A(1), &int(-3)).unwrap();
        assert!(adm_category_emptiness(&k).0);
        let k = LevelPQ::from_k(SimpleType::A(1), &frac(-1, 2)).unwrap();
        assert!(!adm_category_emptiness(&k).0);
        assert!(adm_category_emptiness(&LevelPQ::Irrational).1.is_some());
    }

    #[test]
    fn bk_example() {
        let b = sl2_bk(3, 2).unwrap();
        assert_eq!(b.len(), 2);
        let labels: Vec<Vec<String>> = b.iter().map(|g| g.coroots.iter().map(|c| c.label()).collect()).collect();
        assert_eq!(labels, vec![vec![String::from("α∨"), "2K−α∨".into()], vec!["K+α∨".into(), "K−α∨".into()]]);
        assert!(sl2_bk(4, 2).is_err());
    }

    #[test]
    fn xk_counts_and_pairings() {
        assert_eq!(sl2_kadm_set(3, 2).unwrap().len(), 8);
        assert_eq!(sl2_kw_set(3, 2).unwrap().len(), 4);
        assert!(sl2_kw_set(1, 2).unwrap().is_empty());
        for w in sl2_xk(5, 3).unwrap() {
            let (a, b) = w.pairings();
            assert_eq!((a, b), (int(w.s), int(w.p - w.s)));
            let g = &sl2_bk(5, 3).unwrap()[(w.r - 1) as usize];
            for c in sl2_polyhedron(g) {
                let v = c.coroot.pairing(&w.finite_coord, &w.level());
                assert!(int(c.lo) <= v && v <= int(c.hi));
            }
        }
        // q = 1: λ_{1,s} has Dynkin label s − 1 at level p − 2
        for w in sl2_xk(4, 1).unwrap() {
            assert_eq!(w.finite_coord, int(w.s - 1));
        }
    }

    #[test]
    fn cross_validation() {
        for (p, q) in [(3, 2), (2, 1), (1, 1)] {
            let r = cross_validate_sl2(p, q, 20).unwrap();
            assert!(r.ok(), "{p}/{q}: {:?}", r.mismatches);
        }
    }
}
