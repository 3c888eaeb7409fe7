use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactmath::{frac, int, Rational};

/// Weight lattice coordinates. Virasoro: `(N, 0)`; Neveu–Schwarz: `(2N, 0)`;
/// affine sl2: `(a, b)` for `aα + bδ`.
pub type Grade = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EngineId {
    Virasoro,
    NeveuSchwarz,
    AffineSl2,
}

/// A mode of the algebra. The derived order (mode first, then kind) is the
/// PBW order. Neveu–Schwarz modes are doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub mode: i32,
    pub kind: u8,
}

pub const L: u8 = 0;
pub const G: u8 = 1;
pub const E: u8 = 0;
pub const F: u8 = 1;
pub const H: u8 = 2;

impl Gen {
    pub const fn new(kind: u8, mode: i32) -> Self {
        Gen { mode, kind }
    }
}

/// Lie superalgebra element: generator combination plus a multiple of the central element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    pub gens: Vec<(Gen, Rational)>,
    pub central: Rational,
}

impl Element {
    fn gen(g: Gen, c: Rational) -> Self {
        Element { gens: vec![(g, c)], central: Rational::zero() }
    }

    fn central(c: Rational) -> Self {
        Element { gens: Vec::new(), central: c }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|(_, c)| c.is_zero()) && self.central.is_zero()
    }

    fn add_scaled(&mut self, o: &Element, s: &Rational) {
        for (g, c) in &o.gens {
            match self.gens.iter_mut().find(|(h, _)| h == g) {
                Some((_, v)) => *v += c * s,
                None => self.gens.push((*g, c * s)),
            }
        }
        self.central += &o.central * s;
        self.gens.retain(|(_, c)| !c.is_zero());
        self.gens.sort();
    }
}

/// Triangular data and structure constants of one of the three concrete algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraEngine {
    pub id: EngineId,
}

impl AlgebraEngine {
    pub const VIRASORO: AlgebraEngine = AlgebraEngine { id: EngineId::Virasoro };
    pub const NEVEU_SCHWARZ: AlgebraEngine = AlgebraEngine { id: EngineId::NeveuSchwarz };
    pub const AFFINE_SL2: AlgebraEngine = AlgebraEngine { id: EngineId::AffineSl2 };

    /// Names of the generators of S(𝔥) used as polynomial variables.
    ///
    /// Affine sl2 uses `h` for α∨ and `K`; the derivation D never occurs in a
    /// Shapovalov entry, so it is not carried as a variable.
    pub fn vars(&self) -> &'static [&'static str] {
        match self.id {
            EngineId::Virasoro | EngineId::NeveuSchwarz => &["h", "c"],
            EngineId::AffineSl2 => &["h", "K"],
        }
    }

    pub fn name(&self) -> &'static str {
        match self.id {
            EngineId::Virasoro => "virasoro",
            EngineId::NeveuSchwarz => "neveu-schwarz",
            EngineId::AffineSl2 => "affine-sl2",
        }
    }

    pub fn is_odd(&self, g: Gen) -> bool {
        self.id == EngineId::NeveuSchwarz && g.kind == G
    }

    /// Zero modes of the Cartan subalgebra, as linear forms in [`Self::vars`].
    pub fn cartan_form(&self, g: Gen) -> Option<Vec<Rational>> {
        match (self.id, g.kind, g.mode) {
            (EngineId::Virasoro | EngineId::NeveuSchwarz, L, 0) => Some(vec![int(1), int(0), int(0)]),
            (EngineId::AffineSl2, H, 0) => Some(vec![int(1), int(0), int(0)]),
            _ => None,
        }
    }

    /// Amount by which `g` lowers the weight: negative generators have depth in Q₊.
    pub fn depth(&self, g: Gen) -> Grade {
        match self.id {
            EngineId::Virasoro => (-(g.mode as i64), 0),
            EngineId::NeveuSchwarz => (-(g.mode as i64), 0),
            EngineId::AffineSl2 => {
                let n = -(g.mode as i64);
                match g.kind {
                    E => (-1, n),
                    F => (1, n),
                    _ => (0, n),
                }
            }
        }
    }

    pub fn is_negative(&self, g: Gen) -> bool {
        match self.id {
            EngineId::Virasoro | EngineId::NeveuSchwarz => g.mode < 0,
            EngineId::AffineSl2 => g.mode < 0 || (g.mode == 0 && g.kind == F),
        }
    }

    pub fn is_positive(&self, g: Gen) -> bool {
        match self.id {
            EngineId::Virasoro | EngineId::NeveuSchwarz => g.mode > 0,
            EngineId::AffineSl2 => g.mode > 0 || (g.mode == 0 && g.kind == E),
        }
    }

    /// The anti-involution exchanging positive and negative parts.
    pub fn sigma(&self, g: Gen) -> Gen {
        match self.id {
            EngineId::Virasoro | EngineId::NeveuSchwarz => Gen::new(g.kind, -g.mode),
            EngineId::AffineSl2 => match g.kind {
                E => Gen::new(F, -g.mode),
                F => Gen::new(E, -g.mode),
                _ => Gen::new(H, -g.mode),
            },
        }
    }

    /// `ν ∈ Q₊`.
    pub fn in_cone(&self, nu: Grade) -> bool {
        match self.id {
            EngineId::Virasoro | EngineId::NeveuSchwarz => nu.0 >= 0 && nu.1 == 0,
            EngineId::AffineSl2 => nu.1 >= 0 && nu.0 >= -nu.1,
        }
    }

    /// Shift of each Cartan variable on the weight space `λ − ν`.
    pub fn shift(&self, nu: Grade) -> Vec<Rational> {
        match self.id {
            EngineId::Virasoro => vec![int(nu.0), int(0)],
            EngineId::NeveuSchwarz => vec![frac(nu.0, 2), int(0)],
            EngineId::AffineSl2 => vec![int(-2 * nu.0), int(0)],
        }
    }

    /// Every negative generator whose depth does not exceed `nu`.
    pub fn negative_generators(&self, nu: Grade) -> Vec<Gen> {
        let mut out = Vec::new();
        match self.id {
            EngineId::Virasoro => {
                for j in 1..=nu.0 {
                    out.push(Gen::new(L, -(j as i32)));
                }
            }
            EngineId::NeveuSchwarz => {
                for j in 1..=nu.0 {
                    let kind = if j % 2 == 0 { L } else { G };
                    out.push(Gen::new(kind, -(j as i32)));
                }
            }
            EngineId::AffineSl2 => {
                let mut cands = vec![Gen::new(F, 0)];
                for n in 1..=nu.1 {
                    for k in [E, F, H] {
                        cands.push(Gen::new(k, -(n as i32)));
                    }
                }
                for g in cands {
                    let d = self.depth(g);
                    if self.in_cone((nu.0 - d.0, nu.1 - d.1)) {
                        out.push(g);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Super bracket `[x, y]`.
    pub fn bracket(&self, x: Gen, y: Gen) -> Element {
        match self.id {
            EngineId::Virasoro => vir_bracket(x.mode as i64, y.mode as i64),
            EngineId::NeveuSchwarz => ns_bracket(x, y),
            EngineId::AffineSl2 => affine_bracket(x, y),
        }
    }

    /// The central element as a linear form in [`Self::vars`].
    pub fn central_form(&self) -> Vec<Rational> {
        vec![int(0), int(1), int(0)]
    }

    pub fn gen_name(&self, g: Gen) -> String {
        match self.id {
            EngineId::Virasoro => format!("L{}", g.mode),
            EngineId::NeveuSchwarz => {
                let s = if g.mode % 2 == 0 { format!("{}", g.mode / 2) } else { format!("{}/2", g.mode) };
                if g.kind == G {
                    format!("G{s}")
                } else {
                    format!("L{s}")
                }
            }
            EngineId::AffineSl2 => {
                let k = ["e", "f", "h"][g.kind as usize];
                format!("{k}{}", g.mode)
            }
        }
    }

    /// Super Jacobi identity defect for three generators; zero when the brackets are consistent.
    pub fn jacobi_defect(&self, x: Gen, y: Gen, z: Gen) -> Element {
        let sign = |a: Gen, b: Gen| if self.is_odd(a) && self.is_odd(b) { int(-1) } else { int(1) };
        // [x,[y,z]] − [[x,y],z] − (−1)^{|x||y|}[y,[x,z]]
        let mut out = Element::default();
        let bracket_with = |left: Option<Gen>, el: &Element, right: Option<Gen>| {
            let mut acc = Element::default();
            for (g, c) in &el.gens {
                let b = match (left, right) {
                    (Some(l), None) => self.bracket(l, *g),
                    (None, Some(r)) => self.bracket(*g, r),
                    _ => unreachable!(),
                };
                acc.add_scaled(&b, c);
            }
            acc
        };
        out.add_scaled(&bracket_with(Some(x), &self.bracket(y, z), None), &int(1));
        out.add_scaled(&bracket_with(None, &self.bracket(x, y), Some(z)), &int(-1));
        out.add_scaled(&bracket_with(Some(y), &self.bracket(x, z), None), &-sign(x, y));
        out
    }
}

fn vir_bracket(m: i64, n: i64) -> Element {
    let mut el = Element::gen(Gen::new(L, (m + n) as i32), int(m - n));
    if m + n == 0 {
        el.central = frac(m * m * m - m, 12);
    }
    el.gens.retain(|(_, c)| !c.is_zero());
    el
}

fn ns_bracket(x: Gen, y: Gen) -> Element {
    let (mx, my) = (x.mode as i64, y.mode as i64);
    match (x.kind, y.kind) {
        (L, L) => {
            // doubled modes: L_m with m = mx/2
            let (m, n) = (mx / 2, my / 2);
            let mut el = vir_bracket(m, n);
            for (g, _) in el.gens.iter_mut() {
                g.mode *= 2;
            }
            el
        }
        (L, G) => {
            // [L_m, G_r] = (m/2 − r) G_{m+r}; doubled: (mx − 2 my)/4
            let mut el = Element::gen(Gen::new(G, (mx + my) as i32), frac(mx - 2 * my, 4));
            el.gens.retain(|(_, c)| !c.is_zero());
            el
        }
        (G, L) => {
            let mut el = ns_bracket(y, x);
            for (_, c) in el.gens.iter_mut() {
                *c = -c.clone();
            }
            el.central = -el.central;
            el
        }
        _ => {
            // {G_r, G_s} = 2 L_{r+s} + C/3 (r² − 1/4) δ_{r+s,0}
            let mut el = Element::gen(Gen::new(L, (mx + my) as i32), int(2));
            if mx + my == 0 {
                el.central = frac(mx * mx - 1, 12);
            }
            el
        }
    }
}

fn affine_bracket(x: Gen, y: Gen) -> Element {
    let (m, n) = (x.mode as i64, y.mode as i64);
    let s = (m + n) as i32;
    match (x.kind, y.kind) {
        (E, F) => {
            let mut el = Element::gen(Gen::new(H, s), int(1));
            if m + n == 0 {
                el.central = int(m);
            }
            el
        }
        (F, E) => {
            let mut el = Element::gen(Gen::new(H, s), int(-1));
            if m + n == 0 {
                el.central = int(-n);
            }
            el
        }
        (H, E) => Element::gen(Gen::new(E, s), int(2)),
        (E, H) => Element::gen(Gen::new(E, s), int(-2)),
        (H, F) => Element::gen(Gen::new(F, s), int(-2)),
        (F, H) => Element::gen(Gen::new(F, s), int(2)),
        (H, H) => {
            if m + n == 0 {
                Element::central(int(2 * m))
            } else {
                Element::default()
            }
        }
        _ => Element::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_gens(e: &AlgebraEngine, span: i32) -> Vec<Gen> {
        let mut v = Vec::new();
        for m in -span..=span {
            match e.id {
                EngineId::Virasoro => v.push(Gen::new(L, m)),
                EngineId::NeveuSchwarz => v.push(Gen::new(if m % 2 == 0 { L } else { G }, m)),
                EngineId::AffineSl2 => {
                    for k in [E, F, H] {
                        v.push(Gen::new(k, m));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn jacobi_holds_on_small_modes() {
        for e in [AlgebraEngine::VIRASORO, AlgebraEngine::NEVEU_SCHWARZ, AlgebraEngine::AFFINE_SL2] {
            let gens = all_gens(&e, 3);
            for &x in &gens {
                for &y in &gens {
                    for &z in &gens {
                        assert!(e.jacobi_defect(x, y, z).is_zero(), "{:?} {:?} {:?} {:?}", e.id, x, y, z);
                    }
                }
            }
        }
    }

    #[test]
    fn brackets_are_super_antisymmetric() {
        for e in [AlgebraEngine::VIRASORO, AlgebraEngine::NEVEU_SCHWARZ, AlgebraEngine::AFFINE_SL2] {
            let gens = all_gens(&e, 3);
            for &x in &gens {
                for &y in &gens {
                    let s = if e.is_odd(x) && e.is_odd(y) { int(1) } else { int(-1) };
                    let mut sum = e.bracket(x, y);
                    sum.add_scaled(&e.bracket(y, x), &-s);
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn grading_is_additive() {
        let e = AlgebraEngine::AFFINE_SL2;
        for &x in &all_gens(&e, 2) {
            for &y in &all_gens(&e, 2) {
                for (g, _) in e.bracket(x, y).gens {
                    let (dx, dy, dg) = (e.depth(x), e.depth(y), e.depth(g));
                    assert_eq!((dx.0 + dy.0, dx.1 + dy.1), dg);
                }
            }
        }
    }

    #[test]
    fn negative_generator_lists() {
        let v = AlgebraEngine::VIRASORO.negative_generators((3, 0));
        assert_eq!(v.len(), 3);
        let ns = AlgebraEngine::NEVEU_SCHWARZ.negative_generators((3, 0));
        assert_eq!(ns, vec![Gen::new(G, -3), Gen::new(L, -2), Gen::new(G, -1)]);
        let a = AlgebraEngine::AFFINE_SL2.negative_generators((1, 0));
        assert_eq!(a, vec![Gen::new(F, 0)]);
        let a = AlgebraEngine::AFFINE_SL2.negative_generators((0, 1));
        assert_eq!(a, vec![Gen::new(E, -1), Gen::new(H, -1), Gen::new(F, 0)]);
    }
}
