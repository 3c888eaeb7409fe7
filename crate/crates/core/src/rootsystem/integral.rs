//! The integral root subsystem `Δ(λ)`, its simple system `Π(λ)` and the
//! predicates built on them.
//!
//! For affine data the set `{n : α̇ + nδ ∈ Δ(λ)}` is computed exactly for each
//! finite root `α̇`: it is empty, a single point (irrational level) or an
//! arithmetic progression (rational level). Quantifiers over positive roots are
//! evaluated up to the height cutoff `H`; the coroot rank is exact.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{CartanData, Kind, Root, Weight};
use crate::error::{Error, Result};
use crate::exactmath::{int, rank, ExtRational, Rational};

/// `{n ∈ ℤ : a + n·b ∈ ℤ}` for a finite root.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Progression {
    Empty,
    Single(i64),
    Periodic { start: i64, period: i64 },
}

fn progression(a: &ExtRational, b: &ExtRational) -> Progression {
    if b.is_zero() {
        return if a.is_integer() { Progression::Periodic { start: 0, period: 1 } } else { Progression::Empty };
    }
    if !b.x.is_zero() {
        // a.x + n b.x = 0
        let n = -&a.x / &b.x;
        if !n.is_integer() {
            return Progression::Empty;
        }
        let n = crate::exactmath::rational::to_i64(&n).expect("small index");
        let v = &a.r + &b.r * int(n);
        return if v.is_integer() { Progression::Single(n) } else { Progression::Empty };
    }
    if !a.x.is_zero() {
        return Progression::Empty;
    }
    let period = crate::exactmath::rational::to_i64(&Rational::from_integer(b.r.denom().clone())).expect("small period");
    for n in 0..period {
        if (&a.r + &b.r * int(n)).is_integer() {
            return Progression::Periodic { start: n, period };
        }
    }
    Progression::Empty
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralSubsystem {
    pub lambda: Weight,
    /// Members of `Δ₊(λ)` of height ≤ `cutoff`, with `⟨λ+ρ, α∨⟩`.
    pub positive_members: Vec<(Root, i64)>,
    /// Elements of `Π(λ)` of height ≤ `cutoff`.
    pub simple_system: Vec<(Root, i64)>,
    /// For rational affine level `p/q`: `q·r∨`, the multiple of `K` under which `Δ(λ)∨` is stable.
    pub periodicity: Option<i64>,
    /// Exact rank of the span of `Δ(λ)∨`.
    pub coroot_rank: usize,
    pub cutoff: i64,
}

struct Subsystem {
    members: Vec<(Root, i64)>,
    coroot_rank: usize,
    periodicity: Option<i64>,
}

/// `Δ₊(λ)` up to height `h` together with the exact coroot rank.
fn members(data: &CartanData, lambda: &Weight, h: i64) -> Result<Subsystem> {
    let shifted = lambda.add(&data.rho()?);
    if !data.is_affine() {
        let mut out = Vec::new();
        let mut coroots = Vec::new();
        for r in data.positive_roots(i64::MAX)? {
            let m = data.coroot_pairing(&shifted, &r)?;
            if let Some(m) = m.to_i64() {
                coroots.push(data.coroot_vector(&r.vector));
                if r.height() <= h {
                    out.push((r, m));
                }
            }
        }
        return Ok(Subsystem { coroot_rank: rank(&coroots), members: out, periodicity: None });
    }
    let fin_roots = data.finite_positive_roots()?.to_vec();
    let fform = data.finite_form()?.to_vec();
    let cox = data.coxeter_number()?;
    let lvl = data.level(&shifted)?;
    let mut out = Vec::new();
    let mut coroots = Vec::new();
    let mut all_periodic = true;
    for r in &fin_roots {
        for sign in [1i64, -1] {
            let v: Vec<i64> = r.iter().map(|x| sign * x).collect();
            let root0 = data.affine_real_root(&v, 0)?;
            let len = super::bilinear(&fform, &v, &v);
            let a = data.coroot_pairing(&shifted, &root0)?;
            let b = lvl.scale(&(int(2) / &len));
            let ht0: i64 = v.iter().sum();
            let nmin = if sign > 0 { 0 } else { 1 };
            let push = |n: i64, out: &mut Vec<(Root, i64)>| -> Result<()> {
                if n >= nmin && ht0 + n * cox <= h {
                    let m = (&a + &b.scale(&int(n))).to_i64().expect("integral member");
                    out.push((data.affine_real_root(&v, n)?, m));
                }
                Ok(())
            };
            match progression(&a, &b) {
                Progression::Empty => {}
                Progression::Single(n) => {
                    all_periodic = false;
                    coroots.push(data.coroot_vector(&data.affine_real_root(&v, n)?.vector));
                    push(n, &mut out)?;
                }
                Progression::Periodic { start, period } => {
                    coroots.push(data.coroot_vector(&data.affine_real_root(&v, start)?.vector));
                    coroots.push(data.coroot_vector(&data.affine_real_root(&v, start + period)?.vector));
                    let mut n = start.rem_euclid(period);
                    while ht0 + n * cox <= h {
                        push(n, &mut out)?;
                        n += period;
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| x.0.height().cmp(&y.0.height()).then_with(|| x.0.vector.cmp(&y.0.vector)));
    let periodicity = match lvl.as_rational() {
        Some(k) if !k.is_zero() && all_periodic => Some(crate::exactmath::rational::to_i64(&Rational::from_integer(k.denom().clone())).unwrap() * data.lacety()?),
        _ => None,
    };
    Ok(Subsystem { coroot_rank: rank(&coroots), members: out, periodicity })
}

/// Elements of `Δ₊(λ)` up to height `h` whose reflection inverts no other element of `Δ₊(λ)`.
fn simple_system(data: &CartanData, lambda: &Weight, h: i64, found: &[(Root, i64)]) -> Result<Vec<(Root, i64)>> {
    // Inversions of s_α lie below ⟨β,α∨⟩α with ⟨β,α∨⟩ ≤ 3.
    let deep = members(data, lambda, 3 * h)?.members;
    let mut out = Vec::new();
    for (a, m) in found {
        let ha = a.height();
        let simple = deep.iter().all(|(b, _)| {
            if b.vector == a.vector || b.height() >= 3 * ha {
                return true;
            }
            let img = data.reflect_root(&b.vector, &a.vector);
            CartanData::is_positive(&img)
        });
        if simple {
            out.push((a.clone(), *m));
        }
    }
    Ok(out)
}

fn is_critical(data: &CartanData, lambda: &Weight) -> Result<bool> {
    if !data.is_affine() {
        return Ok(false);
    }
    let l = data.level(lambda)?;
    Ok((&l + &ExtRational::rational(int(data.dual_coxeter_number()?))).is_zero())
}

pub fn integral_subsystem(data: &CartanData, lambda: &Weight, h: i64) -> Result<IntegralSubsystem> {
    if data.kind == Kind::General {
        return Err(Error::Unsupported("integral subsystem of general kind".into()));
    }
    if is_critical(data, lambda)? {
        return Err(Error::Domain("critical level".into()));
    }
    let s = members(data, lambda, h)?;
    let simple = simple_system(data, lambda, h, &s.members)?;
    Ok(IntegralSubsystem {
        lambda: lambda.clone(),
        positive_members: s.members,
        simple_system: simple,
        periodicity: s.periodicity,
        coroot_rank: s.coroot_rank,
        cutoff: h,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Root>,
    pub note: Option<String>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { holds: true, witness: None, note: None }
    }

    fn no(witness: Option<Root>, note: Option<String>) -> Self {
        Verdict { holds: false, witness, note }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Admissible {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub non_critical: Verdict,
    pub dominant: Verdict,
    pub shifted_regular: Verdict,
    pub rational: Verdict,
    pub weakly_admissible: Verdict,
    pub kw_admissible: Verdict,
    /// Shifted-regular weakly admissible weights are admissible iff rational;
    /// other weights are decided only when a necessary condition fails.
    pub admissible: Admissible,
    pub cutoff: i64,
}

pub fn classify(data: &CartanData, lambda: &Weight, h: i64) -> Result<AdmissibilityReport> {
    if data.kind == Kind::General {
        return Err(Error::Unsupported("classification of general kind".into()));
    }
    let critical = is_critical(data, lambda)?;
    let non_critical = if critical {
        let d = data.positive_roots(data.coxeter_number()?)?.into_iter().find(|r| !r.is_real);
        Verdict::no(d, Some("level equals −h∨".into()))
    } else {
        Verdict::yes()
    };
    let s = members(data, lambda, h)?;
    let find = |pred: &dyn Fn(i64) -> bool| s.members.iter().find(|(_, m)| pred(*m)).map(|(r, _)| r.clone());
    let dominant = match find(&|m| m <= 0) {
        Some(r) => Verdict::no(Some(r), None),
        None => Verdict::yes(),
    };
    let shifted_regular = match find(&|m| m == 0) {
        Some(r) => Verdict::no(Some(r), None),
        None => Verdict::yes(),
    };
    let weakly_admissible = match find(&|m| m < 0) {
        Some(r) => Verdict::no(Some(r), None),
        None if critical => Verdict::no(None, Some("critical level".into())),
        None => Verdict::yes(),
    };
    let rational = if s.coroot_rank == data.dim_h_prime() {
        Verdict::yes()
    } else {
        Verdict::no(None, Some(format!("rank Δ(λ)∨ = {} < {}", s.coroot_rank, data.dim_h_prime())))
    };
    let kw_admissible = if non_critical.holds && dominant.holds && rational.holds {
        Verdict::yes()
    } else {
        let first = [&non_critical, &dominant, &rational].into_iter().find(|v| !v.holds).unwrap();
        Verdict::no(first.witness.clone(), Some("fails non-critical, dominant or rational".into()))
    };
    let admissible = if !non_critical.holds {
        Admissible::Unknown
    } else if !weakly_admissible.holds || !rational.holds {
        Admissible::No
    } else if shifted_regular.holds {
        Admissible::Yes
    } else {
        Admissible::Unknown
    };
    Ok(AdmissibilityReport {
        non_critical,
        dominant,
        shifted_regular,
        rational,
        weakly_admissible,
        kw_admissible,
        admissible,
        cutoff: h,
    })
}

/// `dim Ext¹(L(λ), L(λ)) = dim 𝔥 − rank Δ(λ)∨` for non-critical, shifted-regular weights maximal in their orbit.
pub fn selfext_dim(data: &CartanData, lambda: &Weight, h: i64) -> Result<usize> {
    let r = classify(data, lambda, h)?;
    for (name, v) in [
        ("non-critical", &r.non_critical),
        ("shifted-regular", &r.shifted_regular),
        ("weakly admissible", &r.weakly_admissible),
    ] {
        if !v.holds {
            return Err(Error::Domain(format!("selfext_dim requires a {name} weight")));
        }
    }
    let s = members(data, lambda, h)?;
    Ok(data.dim_h() - s.coroot_rank)
}

fn span_rank(roots: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<Rational>> = roots.iter().map(|r| r.iter().map(|x| int(*x)).collect()).collect();
    rank(&m)
}

fn dominates(big: &[i64], small: &[i64]) -> bool {
    big != small && big.iter().zip(small).all(|(a, b)| a >= b)
}

/// `(dim C(λ)^⊥, dim M^⊥)` where `M` is the set of roots certified `λ`-minimal.
pub fn upsilon_bounds(data: &CartanData, lambda: &Weight, h: i64) -> Result<(usize, usize)> {
    let sub = integral_subsystem(data, lambda, h)?;
    let dim = data.dim_h();
    // C′(λ) = {(α, m) : m = ⟨λ+ρ, α∨⟩ > 0}; no imaginary pairs off the critical level
    let c: Vec<(Root, i64)> = sub.positive_members.iter().filter(|(_, m)| *m > 0).cloned().collect();
    let lower = dim - span_rank(&c.iter().map(|(r, _)| r.vector.clone()).collect::<Vec<_>>());
    let mut minimal: Vec<Vec<i64>> = sub.simple_system.iter().filter(|(_, m)| *m > 0).map(|(r, _)| r.vector.clone()).collect();
    let deep_h = 3 * h;
    let deep: Vec<(Vec<i64>, Vec<i64>)> = members(data, lambda, deep_h)?
        .members
        .into_iter()
        .filter(|(_, m)| *m > 0)
        .map(|(r, m)| {
            let mv = r.vector.iter().map(|x| x * m).collect();
            (r.vector, mv)
        })
        .collect();
    for (a, m) in &c {
        if *m * a.height() > deep_h {
            continue;
        }
        let ma: Vec<i64> = a.vector.iter().map(|x| x * m).collect();
        let below = deep.iter().any(|(_, nb)| dominates(&ma, nb));
        let shared = deep.iter().any(|(b, nb)| *nb == ma && *b != a.vector);
        if !below && !shared && !minimal.contains(&a.vector) {
            minimal.push(a.vector.clone());
        }
    }
    let upper = dim - span_rank(&minimal);
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::super::SimpleType;
    use super::*;
    use crate::exactmath::frac;
    use alloc::vec;

    fn e(r: Rational) -> ExtRational {
        ExtRational::rational(r)
    }

    fn xi() -> ExtRational {
        ExtRational::new(int(0), int(1))
    }

    #[test]
    fn vacuum_integer_level() {
        let a = CartanData::affine_sl2();
        let l = a.vacuum_weight(e(int(1))).unwrap();
        let s = integral_subsystem(&a, &l, 20).unwrap();
        let simple: Vec<Vec<i64>> = s.simple_system.iter().map(|(r, _)| r.vector.clone()).collect();
        assert_eq!(simple, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(s.periodicity, Some(1));
        let r = classify(&a, &l, 20).unwrap();
        for v in [&r.non_critical, &r.dominant, &r.shifted_regular, &r.rational, &r.weakly_admissible, &r.kw_admissible] {
            assert!(v.holds);
        }
        assert_eq!(r.admissible, Admissible::Yes);
        assert_eq!(selfext_dim(&a, &l, 20).unwrap(), 1);
    }

    #[test]
    fn vacuum_fractional_level() {
        // k = −2 + 1/2
        let a = CartanData::affine_sl2();
        let l = a.vacuum_weight(e(frac(-3, 2))).unwrap();
        let r = classify(&a, &l, 20).unwrap();
        assert!(r.weakly_admissible.holds);
        assert!(r.rational.holds);
        assert!(!r.kw_admissible.holds);
        let s = integral_subsystem(&a, &l, 20).unwrap();
        assert_eq!(s.periodicity, Some(2));
        // Π = {α, 2δ − α}, pairings 1 and 0
        let simple: Vec<(Vec<i64>, i64)> = s.simple_system.iter().map(|(r, m)| (r.vector.clone(), *m)).collect();
        assert_eq!(simple, vec![(vec![0, 1], 1), (vec![2, 1], 0)]);
    }

    #[test]
    fn vacuum_irrational_level() {
        let a = CartanData::affine_sl2();
        let l = a.vacuum_weight(xi()).unwrap();
        let s = integral_subsystem(&a, &l, 20).unwrap();
        let simple: Vec<Vec<i64>> = s.simple_system.iter().map(|(r, _)| r.vector.clone()).collect();
        assert_eq!(simple, vec![vec![0, 1]]);
        let r = classify(&a, &l, 20).unwrap();
        assert!(!r.rational.holds);
        assert!(!r.kw_admissible.holds);
        assert!(r.weakly_admissible.holds);
        assert_eq!(r.admissible, Admissible::No);
        assert_eq!(selfext_dim(&a, &l, 20).unwrap(), 2);
        assert_eq!(upsilon_bounds(&a, &l, 20).unwrap(), (2, 2));
    }

    #[test]
    fn critical_level() {
        let a = CartanData::affine_sl2();
        let l = a.vacuum_weight(e(int(-2))).unwrap();
        assert!(matches!(integral_subsystem(&a, &l, 10), Err(Error::Domain(_))));
        let r = classify(&a, &l, 10).unwrap();
        assert!(!r.non_critical.holds);
        assert!(!r.non_critical.witness.unwrap().is_real);
        assert!(!r.kw_admissible.holds);
        assert!(selfext_dim(&a, &l, 10).is_err());
    }

    #[test]
    fn finite_weights() {
        let sl3 = CartanData::finite(SimpleType::A(2));
        let l = sl3.weight_from_labels(&[int(1), int(2)]).unwrap();
        let s = integral_subsystem(&sl3, &l, 20).unwrap();
        let simple: Vec<Vec<i64>> = s.simple_system.iter().map(|(r, _)| r.vector.clone()).collect();
        assert_eq!(simple, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(selfext_dim(&sl3, &l, 20).unwrap(), 0);
        assert_eq!(upsilon_bounds(&sl3, &l, 20).unwrap(), (0, 0));
        let sl2 = CartanData::sl2();
        let l = sl2.weight_from_labels(&[int(4)]).unwrap();
        assert_eq!(selfext_dim(&sl2, &l, 20).unwrap(), 0);
        assert_eq!(upsilon_bounds(&sl2, &l, 20).unwrap(), (0, 0));
        // non-integral: Δ(λ) empty
        let l = sl2.weight_from_labels(&[frac(1, 3)]).unwrap();
        assert_eq!(selfext_dim(&sl2, &l, 20).unwrap(), 1);
        // antidominant: not maximal
        let l = sl2.weight_from_labels(&[int(-3)]).unwrap();
        assert!(!classify(&sl2, &l, 20).unwrap().weakly_admissible.holds);
        assert!(selfext_dim(&sl2, &l, 20).is_err());
    }

    #[test]
    fn b2_integral_subsystem_of_half_integral_weight() {
        // labels (1/2, 0) on B2: only roots with integral pairing survive
        let b2 = CartanData::finite(SimpleType::B(2));
        let l = b2.weight_from_labels(&[frac(1, 2), int(0)]).unwrap();
        let s = integral_subsystem(&b2, &l, 20).unwrap();
        assert!(s.positive_members.len() < 4);
        for (r, _) in &s.simple_system {
            assert!(s.positive_members.iter().any(|(m, _)| m == r));
        }
    }

    #[test]
    fn generic_rational_vacuum_bounds() {
        let a = CartanData::affine_sl2();
        // k + 2 = 5/3
        let l = a.vacuum_weight(e(frac(-1, 3))).unwrap();
        assert_eq!(upsilon_bounds(&a, &l, 20).unwrap(), (1, 1));
        // k + 2 = 3
        let l = a.vacuum_weight(e(int(1))).unwrap();
        assert_eq!(upsilon_bounds(&a, &l, 20).unwrap(), (1, 1));
    }

    #[test]
    fn g2_affine_vacuum() {
        let g = CartanData::affine(SimpleType::G2);
        // k + 4 = 7/3
        let l = g.vacuum_weight(e(frac(7, 3) - int(4))).unwrap();
        let r = classify(&g, &l, 20).unwrap();
        assert!(r.rational.holds);
        let s = integral_subsystem(&g, &l, 20).unwrap();
        assert_eq!(s.periodicity, Some(9));
    }
}
