use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp;
use super::poly::{Mono, MultiPoly};
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Row echelon form in place; returns pivot columns.
fn echelon(a: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = int(1) / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (pr, row) = if i < r {
                    let (top, bot) = a.split_at_mut(r);
                    (&bot[0], &mut top[i])
                } else {
                    let (top, bot) = a.split_at_mut(i);
                    (&top[r], &mut bot[0])
                };
                for (x, y) in row.iter_mut().zip(pr.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix given by rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    echelon(&mut a).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a = rows.to_vec();
    let piv = echelon(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = int(1);
            for (i, &pc) in piv.iter().enumerate() {
                x[pc] = -a[i][f].clone();
            }
            x
        })
        .collect()
}

/// Exact determinant of a rational matrix.
pub fn det_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = int(1) / &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let (top, bot) = a.split_at_mut(i);
            for (x, y) in bot[0].iter_mut().zip(top[c].iter()).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

fn check_square(m: &[Vec<MultiPoly>]) -> Result<()> {
    for r in m {
        if r.len() != m.len() {
            return Err(Error::Input("determinant of a non-square matrix".into()));
        }
    }
    Ok(())
}

/// Fraction-free Bareiss elimination with exact multivariate division.
pub fn det_bareiss(vars: &[&str], m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    check_square(m)?;
    let n = m.len();
    let mut a = m.to_vec();
    let mut prev = MultiPoly::constant(vars, int(1));
    let mut sign = int(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(MultiPoly::zero(vars));
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(a[n - 1][n - 1].scale(&sign))
}

type IntPoly = Vec<(Vec<u32>, BigInt)>;

fn mod_u64(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Determinant by evaluation on the simplex `{e : |e| ≤ D}` modulo several
/// word-sized primes, Newton interpolation, and Chinese remaindering.
///
/// `D` is Σ_i max_j deg(M_ij), an upper bound for the total degree of the
/// determinant. Enough primes are taken for their product to exceed twice the
/// bound Π_i Σ_j ‖M_ij‖₁ on every integer coefficient after the rows are
/// cleared of denominators, so the reconstruction is exact.
pub fn det_interpolated(vars: &[&str], m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    check_square(m)?;
    let n = m.len();
    let nv = vars.len();
    if n == 0 {
        return Ok(MultiPoly::constant(vars, int(1)));
    }
    // integral rows
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<IntPoly>> = Vec::with_capacity(n);
    let mut bound = BigInt::one();
    let mut dtot: usize = 0;
    let mut maxdeg: usize = 0;
    for r in m {
        let mut l = BigInt::one();
        for e in r {
            for (_, c) in e.terms() {
                l = l.lcm(c.denom());
            }
        }
        scale *= &l;
        let lr = Rational::from_integer(l);
        let mut row = Vec::with_capacity(n);
        let mut norm = BigInt::zero();
        let mut rdeg = None;
        for e in r {
            let mut ip = Vec::with_capacity(e.nterms());
            for (mono, c) in e.terms() {
                let v = (c * &lr).to_integer();
                norm += v.abs();
                ip.push((mono.0.clone(), v));
            }
            if let Some(d) = e.degree() {
                rdeg = Some(rdeg.map_or(d, |x: u32| x.max(d)));
            }
            row.push(ip);
        }
        let Some(rdeg) = rdeg else {
            return Ok(MultiPoly::zero(vars));
        };
        dtot += rdeg as usize;
        maxdeg = maxdeg.max(rdeg as usize);
        bound *= norm;
        rows.push(row);
    }
    if nv == 0 {
        let q: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|e| e.as_constant().unwrap()).collect()).collect();
        return Ok(MultiPoly::constant(vars, det_rational(&q)));
    }
    let side = dtot + 1;
    let cells = side
        .checked_pow(nv as u32)
        .filter(|c| *c <= 20_000_000)
        .ok_or_else(|| Error::Cutoff { what: "interpolation grid".into(), limit: 20_000_000 })?;
    let strides: Vec<usize> = (0..nv).map(|k| side.pow(k as u32)).collect();
    let points: Vec<Vec<usize>> = simplex_points(nv, dtot);

    let target = &bound * 2 + 1;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); cells];
    let mut pi = 0usize;
    let mut plist = modp::primes(4);
    while modulus < target {
        if pi == plist.len() {
            plist = modp::primes(plist.len() * 2);
        }
        let p = plist[pi];
        pi += 1;
        let coeffs = det_mod_p(&rows, &points, &strides, cells, dtot, maxdeg, nv, p);
        // CRT: r ← r + M·((c − r)·M⁻¹ mod p)
        let minv = modp::inv(mod_u64(&modulus, p), p);
        for idx in points.iter().map(|e| index(e, &strides)) {
            let r = &residues[idx];
            let diff = modp::sub(coeffs[idx], mod_u64(r, p), p);
            let t = modp::mul(diff, minv, p);
            if t != 0 {
                residues[idx] = r + &modulus * BigInt::from(t);
            }
        }
        modulus *= BigInt::from(p);
    }
    let half = &modulus / 2;
    let sc = Rational::from_integer(scale);
    let mut out = MultiPoly::zero(vars);
    for e in &points {
        let mut r = residues[index(e, &strides)].clone();
        if r > half {
            r -= &modulus;
        }
        if !r.is_zero() {
            out.add_term(Mono(e.iter().map(|x| *x as u32).collect()), Rational::from_integer(r) / &sc);
        }
    }
    Ok(out)
}

fn index(e: &[usize], strides: &[usize]) -> usize {
    e.iter().zip(strides).map(|(a, b)| a * b).sum()
}

fn simplex_points(nv: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; nv];
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[k] = x;
            rec(k + 1, left - x, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn det_mod_p(
    rows: &[Vec<IntPoly>],
    points: &[Vec<usize>],
    strides: &[usize],
    cells: usize,
    d: usize,
    maxdeg: usize,
    nv: usize,
    p: u64,
) -> Vec<u64> {
    let n = rows.len();
    let red: Vec<Vec<Vec<(Vec<u32>, u64)>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| e.iter().map(|(m, c)| (m.clone(), mod_u64(c, p))).filter(|(_, c)| *c != 0).collect())
                .collect()
        })
        .collect();
    // powtab[x][k] = x^k mod p
    let powtab: Vec<Vec<u64>> = (0..=d as u64)
        .map(|x| {
            let mut v = Vec::with_capacity(maxdeg + 1);
            v.push(1);
            for k in 1..=maxdeg {
                v.push(modp::mul(v[k - 1], x % p, p));
            }
            v
        })
        .collect();
    let mut vals = vec![0u64; cells];
    let mut mat = vec![vec![0u64; n]; n];
    for e in points {
        for (i, r) in red.iter().enumerate() {
            for (j, ent) in r.iter().enumerate() {
                let mut s = 0u64;
                for (mono, c) in ent {
                    let mut t = *c;
                    for (k, ex) in mono.iter().enumerate() {
                        if *ex > 0 {
                            t = modp::mul(t, powtab[e[k]][*ex as usize], p);
                        }
                    }
                    s = modp::add(s, t, p);
                }
                mat[i][j] = s;
            }
        }
        vals[index(e, strides)] = modp::det(mat.clone(), p);
    }
    // forward differences along every axis: vals[e] ← Δ^e f(0)
    for k in 0..nv {
        for base in points.iter().filter(|e| e[k] == 0) {
            let len = d - base.iter().sum::<usize>();
            let i0 = index(base, strides);
            let st = strides[k];
            for j in 1..=len {
                for i in (j..=len).rev() {
                    let a = vals[i0 + i * st];
                    let b = vals[i0 + (i - 1) * st];
                    vals[i0 + i * st] = modp::sub(a, b, p);
                }
            }
        }
    }
    // Newton basis Π binom(x_k, e_k) → monomials, via Stirling numbers of the first kind
    let mut stir = vec![vec![0u64; d + 1]; d + 1];
    stir[0][0] = 1;
    for i in 0..d {
        for j in 0..=i + 1 {
            let a = if j > 0 { stir[i][j - 1] } else { 0 };
            let b = if j <= i { modp::mul(i as u64 % p, stir[i][j], p) } else { 0 };
            stir[i + 1][j] = modp::sub(a, b, p);
        }
    }
    let mut invfact = vec![1u64; d + 1];
    let mut f = 1u64;
    for (i, slot) in invfact.iter_mut().enumerate().skip(1) {
        f = modp::mul(f, i as u64, p);
        *slot = modp::inv(f, p);
    }
    let mut tmp = vec![0u64; d + 1];
    for k in 0..nv {
        for base in points.iter().filter(|e| e[k] == 0) {
            let len = d - base.iter().sum::<usize>();
            let i0 = index(base, strides);
            let st = strides[k];
            for (j, slot) in tmp.iter_mut().enumerate().take(len + 1) {
                let mut s = 0u64;
                for e in j..=len {
                    let v = vals[i0 + e * st];
                    if v != 0 && stir[e][j] != 0 {
                        s = modp::add(s, modp::mul(modp::mul(v, stir[e][j], p), invfact[e], p), p);
                    }
                }
                *slot = s;
            }
            for (j, v) in tmp.iter().enumerate().take(len + 1) {
                vals[i0 + j * st] = *v;
            }
        }
    }
    vals
}

/// Symbolic determinant: Bareiss for small matrices, interpolation otherwise.
pub fn det_poly(vars: &[&str], m: &[Vec<MultiPoly>]) -> Result<MultiPoly> {
    if m.len() <= 5 {
        det_bareiss(vars, m)
    } else {
        det_interpolated(vars, m)
    }
}

/// Evaluate every entry of a polynomial matrix at a point.
pub fn eval_matrix(m: &[Vec<MultiPoly>], point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    m.iter().map(|r| r.iter().map(|e| e.eval_slice(point)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::frac;

    const V: [&str; 2] = ["h", "c"];

    fn var(n: &str) -> MultiPoly {
        MultiPoly::var(&V, n).unwrap()
    }
    fn k(c: Rational) -> MultiPoly {
        MultiPoly::constant(&V, c)
    }

    fn sample() -> Vec<Vec<MultiPoly>> {
        let h = var("h");
        let c = var("c");
        vec![
            vec![h.scale(&int(2)), c.add(&k(frac(1, 2))), h.mul(&c)],
            vec![c.add(&k(frac(1, 2))), h.pow(2).sub(&c), k(int(3))],
            vec![h.mul(&c), k(int(3)), c.pow(2).add(&h).scale(&frac(2, 3))],
        ]
    }

    #[test]
    fn routes_agree() {
        let m = sample();
        let a = det_bareiss(&V, &m).unwrap();
        let b = det_interpolated(&V, &m).unwrap();
        assert_eq!(a, b);
        let pt = [frac(3, 5), frac(-7, 2)];
        let direct = det_rational(&eval_matrix(&m, &pt).unwrap());
        assert_eq!(a.eval_slice(&pt).unwrap(), direct);
    }

    #[test]
    fn singular_matrices() {
        let h = var("h");
        let m = vec![vec![h.clone(), h.clone()], vec![h.clone(), h.clone()]];
        assert!(det_bareiss(&V, &m).unwrap().is_zero());
        assert!(det_interpolated(&V, &m).unwrap().is_zero());
        let z = vec![vec![h.zero_like(), h.clone()], vec![h.zero_like(), h.clone()]];
        assert!(det_interpolated(&V, &z).unwrap().is_zero());
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(6)], vec![int(0), int(1), int(1)]];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot: Rational = r.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(det_rational(&[vec![int(2), int(1)], vec![int(1), int(1)]]), int(1));
    }
}
