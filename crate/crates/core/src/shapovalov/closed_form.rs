//! Closed-form determinant products and up-to-scalar comparison with the
//! engine determinants.
//!
//! Virasoro and NS determinants are compared in `(h, k)` coordinates after
//! substituting `c = c(k)` and clearing the denominator of `c(k)`.

use alloc::vec::Vec;

use super::engine::{AlgebraEngine, Grade};
use crate::error::{Error, Result};
use crate::exactmath::{int, MultiPoly, Rational};
use crate::partitions;

const HK: &[&str] = &["h", "k"];
const HKAFF: &[&str] = &["h", "K"];

fn lin(vars: &[&str], c: &[i64]) -> MultiPoly {
    let v: Vec<Rational> = c.iter().map(|x| int(*x)).collect();
    MultiPoly::linear(vars, &v)
}

/// `(numerator, denominator)` of `c(k)` as polynomials in `(h, k)`.
fn central_charge(engine: &AlgebraEngine) -> (MultiPoly, MultiPoly) {
    let k1 = lin(HK, &[0, 1, 1]);
    match engine.id {
        super::EngineId::Virasoro => {
            // c(k) = ((k+2) − 6(k+1)²) / (k+2)
            let den = lin(HK, &[0, 1, 2]);
            (den.sub(&k1.mul(&k1).scale(&int(6))), den)
        }
        _ => {
            // c(k) = (3(2k+3)/2 − 12(k+1)²) / (2k+3)
            let den = lin(HK, &[0, 2, 3]);
            (den.scale(&Rational::new(3.into(), 2.into())).sub(&k1.mul(&k1).scale(&int(12))), den)
        }
    }
}

/// `den(k)^E · det(h, c(k))` with `E = deg_c det`; returns the polynomial and `E`.
pub fn substitute_central_charge(engine: &AlgebraEngine, det: &MultiPoly) -> (MultiPoly, u32) {
    let (num, den) = central_charge(engine);
    let e = det.degree_in(1);
    let h = MultiPoly::var(HK, "h").expect("h");
    let mut out = MultiPoly::zero(HK);
    for (mono, coeff) in det.terms() {
        let (a, b) = (mono.0[0], mono.0[1]);
        let t = h.pow(a).mul(&num.pow(b)).mul(&den.pow(e - b)).scale(coeff);
        out = out.add(&t);
    }
    (out, e)
}

/// Kac product `∏ (4(k+2)h − ((m(k+2)−n)² − (k+1)²))^{P(N−mn)}` over `m, n ≥ 1`.
pub fn virasoro_product(n: i64) -> Result<(MultiPoly, u64)> {
    let h = MultiPoly::var(HK, "h")?;
    let t = lin(HK, &[0, 1, 2]);
    let k1 = lin(HK, &[0, 1, 1]);
    let mut out = MultiPoly::constant(HK, int(1));
    let mut total = 0u64;
    for a in 1..=n {
        for b in 1..=n / a {
            let exp = partitions::vir_partition((n - a * b) as u32)?;
            let line = t.scale(&int(a)).sub(&MultiPoly::constant(HK, int(b)));
            let f = t.mul(&h).scale(&int(4)).sub(&line.mul(&line).sub(&k1.mul(&k1)));
            out = out.mul(&f.pow(exp as u32));
            total += exp;
        }
    }
    Ok((out, total))
}

/// NS product over nice points `m ≡ n (mod 2)`, `m, n ≥ 1`, at doubled depth `n2`:
/// `∏ (8u h − ((m u − n)² − 4(k+1)²))^{P_NS(n2 − mn)}` with `u = 2k + 3`.
pub fn neveu_schwarz_product(n2: i64) -> Result<(MultiPoly, u64)> {
    let h = MultiPoly::var(HK, "h")?;
    let u = lin(HK, &[0, 2, 3]);
    let k1 = lin(HK, &[0, 1, 1]);
    let mut out = MultiPoly::constant(HK, int(1));
    let mut total = 0u64;
    for a in 1..=n2 {
        for b in 1..=n2 / a {
            if (a - b) % 2 != 0 {
                continue;
            }
            let exp = partitions::ns_partition((n2 - a * b) as u32)?;
            let line = u.scale(&int(a)).sub(&MultiPoly::constant(HK, int(b)));
            let f = u.mul(&h).scale(&int(8)).sub(&line.mul(&line).sub(&k1.mul(&k1).scale(&int(4))));
            out = out.mul(&f.pow(exp as u32));
            total += exp;
        }
    }
    Ok((out, total))
}

/// Compare an engine determinant (Virasoro or NS, in `(h, c)`) with its Kac
/// product. Returns the scalar `s` with `lhs = s · rhs` when they agree.
pub fn compare_kac(engine: &AlgebraEngine, nu: Grade, det: &MultiPoly) -> Result<Option<Rational>> {
    let (prod, total) = match engine.id {
        super::EngineId::Virasoro => virasoro_product(nu.0)?,
        super::EngineId::NeveuSchwarz => neveu_schwarz_product(nu.0)?,
        super::EngineId::AffineSl2 => return Err(Error::Input("use compare_affine for affine sl2".into())),
    };
    let (sub, e) = substitute_central_charge(engine, det);
    let (_, den) = central_charge(engine);
    let lhs = sub.mul(&den.pow(total as u32));
    let rhs = prod.mul(&den.pow(e));
    Ok(lhs.scalar_ratio(&rhs))
}

/// Product `∏_γ ∏_{n≥1} (2(λ+ρ,γ) − n(γ,γ))^{mult γ · P(ν − nγ)}` for affine sl2 in
/// coordinates `h = ⟨λ,α∨⟩`, `K`, at `ν = aα + bδ`.
pub fn affine_product(nu: Grade) -> Result<(MultiPoly, u64)> {
    let (a, b) = nu;
    let mut out = MultiPoly::constant(HKAFF, int(1));
    let mut total = 0u64;
    let mut push = |f: MultiPoly, e: u64, out: &mut MultiPoly| {
        if e > 0 {
            *out = out.mul(&f.pow(e as u32));
            total += e;
        }
    };
    for j in 0..=b {
        for n in 1..=(a.abs() + 2 * b + 2) {
            // α + jδ: 2(h + 1 + j(K+2)) − 2n
            let e = partitions::affine_sl2_partition(a - n, b - n * j)?;
            push(lin(HKAFF, &[2, 2 * j, 2 + 4 * j - 2 * n]), e, &mut out);
            if j >= 1 {
                // −α + jδ: 2(−(h + 1) + j(K+2)) − 2n
                let e = partitions::affine_sl2_partition(a + n, b - n * j)?;
                push(lin(HKAFF, &[-2, 2 * j, -2 + 4 * j - 2 * n]), e, &mut out);
                // jδ: 2j(K+2)
                let e = partitions::affine_sl2_partition(a, b - n * j)?;
                push(lin(HKAFF, &[0, 2 * j, 4 * j]), e, &mut out);
            }
        }
    }
    Ok((out, total))
}

pub fn compare_affine(nu: Grade, det: &MultiPoly) -> Result<Option<Rational>> {
    let (prod, _) = affine_product(nu)?;
    Ok(det.scalar_ratio(&prod))
}

#[cfg(test)]
mod tests {
    use super::super::shapovalov_det;
    use super::*;

    #[test]
    fn virasoro_low_depths() {
        let v = AlgebraEngine::VIRASORO;
        for n in 1..=4 {
            let d = shapovalov_det(&v, (n, 0)).unwrap();
            assert!(compare_kac(&v, (n, 0), &d).unwrap().is_some(), "depth {n}");
        }
    }

    #[test]
    fn neveu_schwarz_low_depths() {
        let e = AlgebraEngine::NEVEU_SCHWARZ;
        for n2 in 1..=5 {
            let d = shapovalov_det(&e, (n2, 0)).unwrap();
            assert!(compare_kac(&e, (n2, 0), &d).unwrap().is_some(), "depth {n2}/2");
        }
    }

    #[test]
    fn affine_low_depths() {
        let a = AlgebraEngine::AFFINE_SL2;
        for nu in super::super::depths_up_to(&a, 2) {
            let d = shapovalov_det(&a, nu).unwrap();
            assert!(compare_affine(nu, &d).unwrap().is_some(), "depth {nu:?}");
        }
    }

    #[test]
    fn wrong_exponent_is_rejected() {
        let v = AlgebraEngine::VIRASORO;
        let d = shapovalov_det(&v, (2, 0)).unwrap();
        assert!(compare_kac(&v, (3, 0), &d).unwrap().is_none());
        let a = AlgebraEngine::AFFINE_SL2;
        let d = shapovalov_det(&a, (0, 1)).unwrap();
        assert!(compare_affine((1, 1), &d).unwrap().is_none());
    }
}
