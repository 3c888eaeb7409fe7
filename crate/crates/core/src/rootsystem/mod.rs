//! Root data of finite and untwisted affine Kac–Moody algebras, the invariant
//! form, the dot action and the weight predicates built on the integral root
//! subsystem.
//!
//! Weights of a finite-type algebra are written in the basis of simple roots.
//! Weights of an affine algebra are written as `(λ̇, k, d)`: the finite part in
//! the simple roots of the underlying finite algebra, the `Λ₀`-coefficient
//! (the level) and the `δ`-coefficient. The form satisfies `(Λ₀,Λ₀) = 0`,
//! `(Λ₀,δ) = 1`, `(δ,δ) = 0` and `(Λ₀, λ̇) = 0`, and `ρ̂ = ρ + h∨Λ₀`.
//!
//! Roots are integer vectors over the simple roots; for affine data the
//! affine node `α₀ = δ − θ` has index 0. Heights are `Σ cᵢ` in that basis, so
//! `ht(δ) = h`, the Coxeter number.

mod integral;
pub mod types;

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{int, ExtRational, Rational};

pub use integral::{
    classify, integral_subsystem, selfext_dim, upsilon_bounds, AdmissibilityReport, Admissible, IntegralSubsystem,
    Verdict,
};
pub use types::{SimpleType, SimpleTypeData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Finite,
    AffineUntwisted,
    General,
}

impl Kind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "finite" => Ok(Kind::Finite),
            "affine-untwisted" => Ok(Kind::AffineUntwisted),
            "general" => Ok(Kind::General),
            _ => Err(Error::Input(format!("unknown kind {s:?}"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Finite => "finite",
            Kind::AffineUntwisted => "affine-untwisted",
            Kind::General => "general",
        }
    }
}

/// Finite root data shared by the finite kind and the finite part of an affine algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
struct FiniteData {
    rank: usize,
    form: Vec<Vec<Rational>>,
    /// Positive roots sorted by height, then lexicographically.
    roots: Vec<Vec<i64>>,
    theta: Vec<i64>,
    rho: Vec<Rational>,
    coxeter: i64,
    hdual: i64,
    lacety: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub name: String,
    pub gcm: Vec<Vec<i64>>,
    /// Indices of odd simple roots. Stored and reported; every built-in algebra is even.
    pub tau: Vec<usize>,
    /// `dᵢ` with `(αᵢ, αⱼ) = dᵢ aᵢⱼ`.
    pub symmetrizer: Vec<Rational>,
    pub kind: Kind,
    simple_form: Vec<Vec<Rational>>,
    fin: Option<FiniteData>,
}

/// A weight in the coordinates described in the module docs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub coords: Vec<ExtRational>,
}

impl Weight {
    pub fn rational(coords: Vec<Rational>) -> Self {
        Weight { coords: coords.into_iter().map(ExtRational::rational).collect() }
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight { coords: self.coords.iter().map(|a| a.scale(c)).collect() }
    }

    /// `self + c·o` for an `ExtRational` coefficient and a rational weight `o`.
    pub fn add_multiple(&self, c: &ExtRational, o: &Weight) -> Result<Weight> {
        let coords = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| Ok(a + &c.mul(b)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { coords })
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_rational())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub vector: Vec<i64>,
    pub is_real: bool,
    pub odd: bool,
    pub isotropic: bool,
    pub multiplicity: u32,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.vector.iter().sum()
    }

    pub fn real(vector: Vec<i64>) -> Root {
        Root { vector, is_real: true, odd: false, isotropic: false, multiplicity: 1 }
    }
}

fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = Rational::one() / &m[col][col];
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &m[col][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn bilinear(b: &[Vec<Rational>], x: &[i64], y: &[i64]) -> Rational {
    let mut s = Rational::zero();
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if *yj != 0 {
                s += &b[i][j] * int(xi * yj);
            }
        }
    }
    s
}

/// Symmetrizer of an indecomposable GCM, normalized with `d₀ = 1`.
fn symmetrize(gcm: &[Vec<i64>]) -> Result<Vec<Rational>> {
    let n = gcm.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    if n == 0 {
        return Err(Error::Input("empty Cartan matrix".into()));
    }
    d[0] = Some(Rational::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i == j || gcm[i][j] == 0 {
                continue;
            }
            if gcm[j][i] == 0 {
                return Err(Error::Input("Cartan matrix violates a_ij = 0 ⟺ a_ji = 0".into()));
            }
            let dj = d[i].clone().unwrap() * int(gcm[i][j]) / int(gcm[j][i]);
            match &d[j] {
                None => {
                    d[j] = Some(dj);
                    stack.push(j);
                }
                Some(e) if *e != dj => return Err(Error::Input("Cartan matrix is not symmetrizable".into())),
                _ => {}
            }
        }
    }
    d.into_iter()
        .map(|x| x.ok_or_else(|| Error::Input("Cartan matrix is decomposable".into())))
        .collect()
}

fn finite_data(gcm: &[Vec<i64>], form: Vec<Vec<Rational>>) -> Result<FiniteData> {
    let n = gcm.len();
    let mut roots: Vec<Vec<i64>> = (0..n).map(|i| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }).collect();
    let mut seen: BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut level = roots.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..n {
                // α_i-string through β: p = max{p : β − pα_i is a root}
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if seen.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| beta[j] * gcm[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        if seen.len() > 5000 {
            return Err(Error::Input("Cartan matrix is not of finite type".into()));
        }
        roots.extend(next.iter().cloned());
        level = next;
    }
    roots.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| a.cmp(b)));
    let theta = roots.last().unwrap().clone();
    let t2 = bilinear(&form, &theta, &theta);
    if !t2.is_positive() {
        return Err(Error::Input("finite part is not positive definite".into()));
    }
    let scale = int(2) / t2;
    let form: Vec<Vec<Rational>> = form.iter().map(|r| r.iter().map(|x| x * &scale).collect()).collect();
    let mut rho = vec![Rational::zero(); n];
    for r in &roots {
        for i in 0..n {
            rho[i] += int(r[i]) / int(2);
        }
    }
    let coxeter = theta.iter().sum::<i64>() + 1;
    let rho_theta: Rational = (0..n).map(|i| bilinear(&form, &{
        let mut e = vec![0; n];
        e[i] = 1;
        e
    }, &theta) * &rho[i]).fold(Rational::zero(), |a, b| a + b);
    let hdual = crate::exactmath::rational::to_i64(&(rho_theta + int(1)))
        .ok_or_else(|| Error::Input("non-integral dual Coxeter number".into()))?;
    let lens: Vec<Rational> = (0..n).map(|i| form[i][i].clone()).collect();
    let mx = lens.iter().max().unwrap();
    let mn = lens.iter().min().unwrap();
    let lacety = crate::exactmath::rational::to_i64(&(mx / mn)).unwrap_or(1);
    Ok(FiniteData { rank: n, form, roots, theta, rho, coxeter, hdual, lacety })
}

impl CartanData {
    /// Builds root data from a GCM. For `AffineUntwisted` the affine node must have index 0.
    pub fn from_gcm(name: &str, gcm: Vec<Vec<i64>>, tau: Vec<usize>, kind: Kind) -> Result<Self> {
        let n = gcm.len();
        if gcm.iter().any(|r| r.len() != n) {
            return Err(Error::Input("Cartan matrix must be square".into()));
        }
        for i in 0..n {
            if gcm[i][i] != 2 && gcm[i][i] != 0 {
                return Err(Error::Input(format!("diagonal entry a_{i}{i} must be 0 or 2")));
            }
            for j in 0..n {
                if i != j && gcm[i][j] > 0 {
                    return Err(Error::Input("off-diagonal entries must be nonpositive".into()));
                }
            }
        }
        if let Some(t) = tau.iter().find(|t| **t >= n) {
            return Err(Error::Input(format!("parity index {t} out of range")));
        }
        let mut d = symmetrize(&gcm)?;
        let form_of = |d: &[Rational]| -> Vec<Vec<Rational>> {
            (0..n).map(|i| (0..n).map(|j| &d[i] * int(gcm[i][j])).collect()).collect()
        };
        let fin = match kind {
            Kind::General => None,
            Kind::Finite => {
                if gcm.iter().enumerate().any(|(i, r)| r[i] != 2) {
                    return Err(Error::Input("finite type requires a_ii = 2".into()));
                }
                let f = finite_data(&gcm, form_of(&d))?;
                let s = &f.form[0][0] / (&d[0] * int(2));
                d = d.iter().map(|x| x * &s).collect();
                Some(f)
            }
            Kind::AffineUntwisted => {
                if n < 2 {
                    return Err(Error::Input("affine data needs at least two nodes".into()));
                }
                let sub: Vec<Vec<i64>> = gcm[1..].iter().map(|r| r[1..].to_vec()).collect();
                let full = form_of(&d);
                let sub_form: Vec<Vec<Rational>> = full[1..].iter().map(|r| r[1..].to_vec()).collect();
                let f = finite_data(&sub, sub_form)?;
                let s = &f.form[0][0] / &full[1][1];
                d = d.iter().map(|x| x * &s).collect();
                let full = form_of(&d);
                // α₀ = δ − θ
                let t = &f.theta;
                let ok0 = full[0][0] == int(2)
                    && (1..n).all(|i| {
                        let mut e = vec![0; n - 1];
                        e[i - 1] = 1;
                        full[0][i] == -bilinear(&f.form, t, &e)
                    });
                if !ok0 {
                    return Err(Error::Input("node 0 is not the affine node α₀ = δ − θ".into()));
                }
                Some(f)
            }
        };
        let simple_form = form_of(&d);
        Ok(CartanData { name: name.into(), gcm, tau, symmetrizer: d, kind, simple_form, fin })
    }

    pub fn finite(t: SimpleType) -> Self {
        let b = t.simple_form();
        let gcm = gcm_of(&b);
        CartanData::from_gcm(&t.name(), gcm, Vec::new(), Kind::Finite).expect("built-in type")
    }

    /// Untwisted affinization of a simple type.
    pub fn affine(t: SimpleType) -> Self {
        let fb = t.simple_form();
        let fin = finite_data(&gcm_of(&fb), fb.clone()).expect("built-in type");
        let n = fb.len() + 1;
        let mut b = vec![vec![Rational::zero(); n]; n];
        b[0][0] = int(2);
        for i in 1..n {
            let mut e = vec![0; n - 1];
            e[i - 1] = 1;
            let v = -bilinear(&fb, &fin.theta, &e);
            b[0][i] = v.clone();
            b[i][0] = v;
            for j in 1..n {
                b[i][j] = fb[i - 1][j - 1].clone();
            }
        }
        CartanData::from_gcm(&format!("{}^(1)", t.name()), gcm_of(&b), Vec::new(), Kind::AffineUntwisted)
            .expect("built-in type")
    }

    pub fn sl2() -> Self {
        Self::finite(SimpleType::A(1))
    }

    pub fn affine_sl2() -> Self {
        Self::affine(SimpleType::A(1))
    }

    fn fin(&self) -> Result<&FiniteData> {
        self.fin.as_ref().ok_or_else(|| Error::Unsupported("root data of general kind".into()))
    }

    pub fn is_affine(&self) -> bool {
        self.kind == Kind::AffineUntwisted
    }

    /// Rank `ℓ` of the finite root system (the whole system for finite kind).
    pub fn finite_rank(&self) -> Result<usize> {
        Ok(self.fin()?.rank)
    }

    /// `dim 𝔥 = n + corank A`.
    pub fn dim_h(&self) -> usize {
        let n = self.gcm.len();
        let m: Vec<Vec<Rational>> = self.gcm.iter().map(|r| r.iter().map(|x| int(*x)).collect()).collect();
        2 * n - crate::exactmath::rank(&m)
    }

    /// `dim 𝔥′`, the span of the simple coroots.
    pub fn dim_h_prime(&self) -> usize {
        self.gcm.len()
    }

    pub fn coxeter_number(&self) -> Result<i64> {
        Ok(self.fin()?.coxeter)
    }

    pub fn dual_coxeter_number(&self) -> Result<i64> {
        Ok(self.fin()?.hdual)
    }

    pub fn lacety(&self) -> Result<i64> {
        Ok(self.fin()?.lacety)
    }

    /// Highest root of the finite part, over the finite simple roots.
    pub fn theta(&self) -> Result<Vec<i64>> {
        Ok(self.fin()?.theta.clone())
    }

    /// Positive roots of the finite part over the finite simple roots.
    pub fn finite_positive_roots(&self) -> Result<&[Vec<i64>]> {
        Ok(&self.fin()?.roots)
    }

    pub fn finite_form(&self) -> Result<&[Vec<Rational>]> {
        Ok(&self.fin()?.form)
    }

    pub fn simple_form(&self) -> &[Vec<Rational>] {
        &self.simple_form
    }

    fn weight_len(&self) -> Result<usize> {
        let f = self.fin()?;
        Ok(if self.is_affine() { f.rank + 2 } else { f.rank })
    }

    pub fn zero_weight(&self) -> Result<Weight> {
        Ok(Weight { coords: vec![ExtRational::zero(); self.weight_len()?] })
    }

    fn check(&self, w: &Weight) -> Result<()> {
        if w.coords.len() != self.weight_len()? {
            return Err(Error::Input(format!(
                "weight has {} coordinates, expected {}",
                w.coords.len(),
                self.weight_len()?
            )));
        }
        Ok(())
    }

    /// Finite part with Dynkin labels `⟨λ, αᵢ∨⟩`, over the finite simple roots.
    fn finite_from_labels(&self, labels: &[ExtRational]) -> Result<Vec<ExtRational>> {
        let f = self.fin()?;
        if labels.len() != f.rank {
            return Err(Error::Input(format!("expected {} labels", f.rank)));
        }
        // ⟨λ, αᵢ∨⟩ = 2(λ, αᵢ)/(αᵢ, αᵢ) = Σⱼ cⱼ aᵢⱼ in the finite part
        let a: Vec<Vec<Rational>> = (0..f.rank)
            .map(|i| (0..f.rank).map(|j| int(2) * &f.form[i][j] / &f.form[i][i]).collect())
            .collect();
        let rs: Vec<Rational> = labels.iter().map(|l| l.r.clone()).collect();
        let xs: Vec<Rational> = labels.iter().map(|l| l.x.clone()).collect();
        let cr = solve(&a, &rs).ok_or_else(|| Error::Input("singular finite Cartan matrix".into()))?;
        let cx = solve(&a, &xs).ok_or_else(|| Error::Input("singular finite Cartan matrix".into()))?;
        Ok(cr.into_iter().zip(cx).map(|(r, x)| ExtRational::new(r, x)).collect())
    }

    /// Finite-type weight from Dynkin labels.
    pub fn weight_from_labels(&self, labels: &[Rational]) -> Result<Weight> {
        if self.is_affine() {
            return Err(Error::Input("use affine_weight for affine data".into()));
        }
        let l: Vec<ExtRational> = labels.iter().cloned().map(ExtRational::rational).collect();
        Ok(Weight { coords: self.finite_from_labels(&l)? })
    }

    /// Affine weight `λ̇ + kΛ₀ + dδ` with `λ̇` given by its finite Dynkin labels.
    pub fn affine_weight(&self, labels: &[ExtRational], level: ExtRational, delta: ExtRational) -> Result<Weight> {
        if !self.is_affine() {
            return Err(Error::Input("affine_weight needs affine data".into()));
        }
        let mut coords = self.finite_from_labels(labels)?;
        coords.push(level);
        coords.push(delta);
        Ok(Weight { coords })
    }

    /// `kΛ₀`.
    pub fn vacuum_weight(&self, level: ExtRational) -> Result<Weight> {
        let l = vec![ExtRational::zero(); self.fin()?.rank];
        self.affine_weight(&l, level, ExtRational::zero())
    }

    pub fn delta(&self) -> Result<Weight> {
        let l = vec![ExtRational::zero(); self.fin()?.rank];
        self.affine_weight(&l, ExtRational::zero(), ExtRational::rational(int(1)))
    }

    pub fn level(&self, w: &Weight) -> Result<ExtRational> {
        if !self.is_affine() {
            return Err(Error::Input("level is defined for affine data only".into()));
        }
        self.check(w)?;
        Ok(w.coords[self.fin()?.rank].clone())
    }

    /// `⟨λ, D⟩`, the `δ`-coefficient.
    pub fn d_coordinate(&self, w: &Weight) -> Result<ExtRational> {
        if !self.is_affine() {
            return Err(Error::Input("D-coordinate is defined for affine data only".into()));
        }
        self.check(w)?;
        Ok(w.coords[self.fin()?.rank + 1].clone())
    }

    pub fn finite_part(&self, w: &Weight) -> Result<Vec<ExtRational>> {
        self.check(w)?;
        Ok(w.coords[..self.fin()?.rank].to_vec())
    }

    /// `ρ` (finite kind) or `ρ̂ = ρ + h∨Λ₀` (affine kind).
    pub fn rho(&self) -> Result<Weight> {
        let f = self.fin()?;
        let mut w = Weight::rational(f.rho.clone());
        if self.is_affine() {
            w.coords.push(ExtRational::rational(int(f.hdual)));
            w.coords.push(ExtRational::zero());
        }
        Ok(w)
    }

    /// The weight of a root.
    pub fn root_weight(&self, r: &Root) -> Result<Weight> {
        let f = self.fin()?;
        if !self.is_affine() {
            if r.vector.len() != f.rank {
                return Err(Error::Input("root has wrong length".into()));
            }
            return Ok(Weight::rational(r.vector.iter().map(|x| int(*x)).collect()));
        }
        if r.vector.len() != f.rank + 1 {
            return Err(Error::Input("root has wrong length".into()));
        }
        let c0 = r.vector[0];
        let mut coords: Vec<Rational> = (0..f.rank).map(|i| int(r.vector[i + 1] - c0 * f.theta[i])).collect();
        coords.push(Rational::zero());
        coords.push(int(c0));
        Ok(Weight::rational(coords))
    }

    /// Invariant form on weights.
    pub fn form(&self, x: &Weight, y: &Weight) -> Result<ExtRational> {
        self.check(x)?;
        self.check(y)?;
        let f = self.fin()?;
        let mut s = ExtRational::zero();
        for i in 0..f.rank {
            for j in 0..f.rank {
                if f.form[i][j].is_zero() {
                    continue;
                }
                s = &s + &x.coords[i].mul(&y.coords[j])?.scale(&f.form[i][j]);
            }
        }
        if self.is_affine() {
            let (l, d) = (f.rank, f.rank + 1);
            s = &s + &x.coords[l].mul(&y.coords[d])?;
            s = &s + &x.coords[d].mul(&y.coords[l])?;
        }
        Ok(s)
    }

    /// `(α, β)` on root vectors.
    pub fn root_form(&self, a: &[i64], b: &[i64]) -> Rational {
        bilinear(&self.simple_form, a, b)
    }

    pub fn coroot_pairing(&self, w: &Weight, a: &Root) -> Result<ExtRational> {
        let n = self.root_form(&a.vector, &a.vector);
        if !a.is_real || n.is_zero() {
            return Err(Error::Domain("coroot pairing with an isotropic root".into()));
        }
        let aw = self.root_weight(a)?;
        Ok(self.form(w, &aw)?.scale(&(int(2) / n)))
    }

    /// `s_α.λ = λ − ⟨λ+ρ, α∨⟩α`.
    pub fn dot_reflect(&self, w: &Weight, a: &Root) -> Result<Weight> {
        let m = self.coroot_pairing(&w.add(&self.rho()?), a)?;
        let aw = self.root_weight(a)?;
        w.add_multiple(&(-&m), &aw)
    }

    /// `s_α(β)` on root vectors.
    pub fn reflect_root(&self, beta: &[i64], a: &[i64]) -> Vec<i64> {
        let c = int(2) * self.root_form(beta, a) / self.root_form(a, a);
        let c = crate::exactmath::rational::to_i64(&c).expect("integral pairing of real roots");
        beta.iter().zip(a).map(|(b, x)| b - c * x).collect()
    }

    /// Coroot `α∨ = 2α/(α,α)` in the basis of simple coroots.
    pub fn coroot_vector(&self, a: &[i64]) -> Vec<Rational> {
        let n = self.root_form(a, a);
        a.iter().zip(&self.symmetrizer).map(|(c, d)| int(2) * int(*c) * d / &n).collect()
    }

    /// Real root `α̇ + nδ` from a finite root vector (any sign).
    pub fn affine_real_root(&self, fin_root: &[i64], n: i64) -> Result<Root> {
        let f = self.fin()?;
        let mut v = vec![n];
        v.extend(fin_root.iter().zip(&f.theta).map(|(a, t)| a + n * t));
        Ok(Root::real(v))
    }

    /// Positive roots of height at most `h`, sorted by height then vector.
    pub fn positive_roots(&self, h: i64) -> Result<Vec<Root>> {
        let f = match self.kind {
            Kind::General => return Err(Error::Unsupported("positive roots of general kind".into())),
            _ => self.fin()?,
        };
        let mut out = Vec::new();
        if !self.is_affine() {
            for r in &f.roots {
                if r.iter().sum::<i64>() <= h {
                    out.push(Root::real(r.clone()));
                }
            }
            return Ok(out);
        }
        let hd = f.coxeter;
        let mut n = 0;
        while n * hd - (hd - 1) <= h {
            for r in &f.roots {
                let ht = r.iter().sum::<i64>();
                if ht + n * hd <= h {
                    out.push(self.affine_real_root(r, n)?);
                }
                if n >= 1 && n * hd - ht <= h {
                    let neg: Vec<i64> = r.iter().map(|x| -x).collect();
                    out.push(self.affine_real_root(&neg, n)?);
                }
            }
            if n >= 1 && n * hd <= h {
                let mut v = vec![n];
                v.extend(f.theta.iter().map(|t| n * t));
                out.push(Root { vector: v, is_real: false, odd: false, isotropic: true, multiplicity: f.rank as u32 });
            }
            n += 1;
        }
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.vector.cmp(&b.vector)));
        Ok(out)
    }

    /// Whether a root vector is positive (all coordinates ≥ 0).
    pub fn is_positive(v: &[i64]) -> bool {
        v.iter().all(|x| *x >= 0) && v.iter().any(|x| *x > 0)
    }
}

fn gcm_of(b: &[Vec<Rational>]) -> Vec<Vec<i64>> {
    (0..b.len())
        .map(|i| {
            (0..b.len())
                .map(|j| crate::exactmath::rational::to_i64(&(int(2) * &b[i][j] / &b[i][i])).expect("integral Cartan entry"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::frac;

    #[test]
    fn type_table_matches_root_data() {
        let types = [
            SimpleType::A(1),
            SimpleType::A(2),
            SimpleType::A(5),
            SimpleType::B(2),
            SimpleType::B(4),
            SimpleType::C(2),
            SimpleType::C(3),
            SimpleType::D(4),
            SimpleType::D(6),
            SimpleType::E6,
            SimpleType::E7,
            SimpleType::E8,
            SimpleType::F4,
            SimpleType::G2,
        ];
        for t in types {
            let c = CartanData::finite(t);
            let d = t.data();
            let nroots = c.finite_positive_roots().unwrap().len() as i64;
            // h = |Δ| / rank
            assert_eq!(2 * nroots, d.h * t.rank() as i64, "{}", t.name());
            assert_eq!(c.coxeter_number().unwrap(), d.h, "{}", t.name());
            assert_eq!(c.dual_coxeter_number().unwrap(), d.hdual, "{}", t.name());
            assert_eq!(c.lacety().unwrap(), d.lacety, "{}", t.name());
        }
    }

    #[test]
    fn root_counts() {
        assert_eq!(CartanData::finite(SimpleType::E8).finite_positive_roots().unwrap().len(), 120);
        assert_eq!(CartanData::finite(SimpleType::G2).finite_positive_roots().unwrap().len(), 6);
        let sl3 = CartanData::finite(SimpleType::A(2));
        let r: Vec<Vec<i64>> = sl3.positive_roots(2).unwrap().into_iter().map(|r| r.vector).collect();
        assert_eq!(r, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let sl2 = CartanData::sl2();
        assert_eq!(sl2.positive_roots(1).unwrap().len(), 1);
    }

    #[test]
    fn affine_sl2_roots_to_height_three() {
        let a = CartanData::affine_sl2();
        let r: Vec<(Vec<i64>, bool)> = a.positive_roots(3).unwrap().into_iter().map(|r| (r.vector, r.is_real)).collect();
        // α₀ = δ − α, α₁ = α
        assert_eq!(
            r,
            vec![
                (vec![0, 1], true),
                (vec![1, 0], true),
                (vec![1, 1], false),
                (vec![1, 2], true),
                (vec![2, 1], true),
            ]
        );
    }

    #[test]
    fn affine_form_identities() {
        let a = CartanData::affine_sl2();
        let d = a.delta().unwrap();
        assert!(a.form(&d, &d).unwrap().is_zero());
        assert_eq!(a.form(&a.rho().unwrap(), &d).unwrap(), ExtRational::rational(int(2)));
        let l0 = a.vacuum_weight(ExtRational::rational(int(1))).unwrap();
        assert!(a.form(&l0, &l0).unwrap().is_zero());
        let g2 = CartanData::affine(SimpleType::G2);
        assert_eq!(g2.form(&g2.rho().unwrap(), &g2.delta().unwrap()).unwrap(), ExtRational::rational(int(4)));
    }

    #[test]
    fn dot_reflection_examples() {
        let s = CartanData::sl2();
        let l = s.weight_from_labels(&[int(3)]).unwrap();
        let al = &s.positive_roots(1).unwrap()[0];
        assert_eq!(s.coroot_pairing(&l, al).unwrap(), ExtRational::rational(int(3)));
        let r = s.dot_reflect(&l, al).unwrap();
        assert_eq!(s.coroot_pairing(&r, al).unwrap(), ExtRational::rational(int(-5)));
        assert_eq!(s.dot_reflect(&r, al).unwrap(), l);
        let fixed = s.weight_from_labels(&[int(-1)]).unwrap();
        assert_eq!(s.dot_reflect(&fixed, al).unwrap(), fixed);
        assert_eq!(s.coroot_pairing(&s.weight_from_labels(&[frac(1, 2)]).unwrap(), al).unwrap(), ExtRational::rational(frac(1, 2)));
    }

    #[test]
    fn imaginary_roots_have_no_coroot() {
        let a = CartanData::affine_sl2();
        let d = a.positive_roots(2).unwrap().into_iter().find(|r| !r.is_real).unwrap();
        assert_eq!(d.multiplicity, 1);
        assert!(matches!(a.coroot_pairing(&a.rho().unwrap(), &d), Err(Error::Domain(_))));
    }

    #[test]
    fn gcm_validation() {
        assert!(CartanData::from_gcm("x", vec![vec![2, -1], vec![0, 2]], vec![], Kind::General).is_err());
        assert!(CartanData::from_gcm("x", vec![vec![2, 1], vec![1, 2]], vec![], Kind::General).is_err());
        assert!(CartanData::from_gcm("x", vec![vec![2, -2], vec![-2, 2]], vec![], Kind::Finite).is_err());
        // A1^(1) given by hand
        let a = CartanData::from_gcm("a", vec![vec![2, -2], vec![-2, 2]], vec![], Kind::AffineUntwisted).unwrap();
        assert_eq!(a.dim_h(), 3);
        assert_eq!(a.dual_coxeter_number().unwrap(), 2);
        // wrong affine node
        let bad = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert!(CartanData::from_gcm("b", bad, vec![], Kind::AffineUntwisted).is_err());
        assert!(CartanData::from_gcm("g", vec![vec![2, -3], vec![-1, 2]], vec![], Kind::General).unwrap().positive_roots(3).is_err());
    }
}
