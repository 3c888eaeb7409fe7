//! Serialized forms of every command payload. Rationals are written as
//! `{"num": "...", "den": "..."}` strings; half-integer grades carry an `x2` key.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use admkit_core::exactmath::{ExtRational, MultiPoly, Rational};
use admkit_core::rootsystem::{Admissible, Verdict};
use admkit_core::shapovalov::{EngineId, Grade};
use admkit_core::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rat {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Rat {
    fn from(x: &Rational) -> Self {
        Rat { num: x.numer().to_string(), den: x.denom().to_string() }
    }
}

impl From<Rational> for Rat {
    fn from(x: Rational) -> Self {
        Rat::from(&x)
    }
}

impl TryFrom<&Rat> for Rational {
    type Error = Error;

    fn try_from(r: &Rat) -> Result<Self, Error> {
        let bad = || Error::Input(format!("not a rational: {}/{}", r.num, r.den));
        let n = r.num.parse().map_err(|_| bad())?;
        let d: BigInt = r.den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(n, d))
    }
}

/// Parses `3`, `-2/5` or `1.25`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Input(format!("cannot parse {s:?} as a rational number"));
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let num = Rational::from_str(&digits).map_err(|_| bad())?;
        let scale = Rational::from_str(&format!("1{}", "0".repeat(frac_part.len()))).map_err(|_| bad())?;
        return Ok(num / scale);
    }
    Rational::from_str(s).map_err(|_| bad())
}

/// Comma-separated list of rationals.
pub fn parse_rationals(s: &str) -> Result<Vec<Rational>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// `r + x·ξ` with `ξ` transcendental; `xi` is omitted when zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ext {
    pub r: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<Rat>,
}

impl From<&ExtRational> for Ext {
    fn from(x: &ExtRational) -> Self {
        Ext { r: Rat::from(&x.r), xi: (!x.x.is_zero()).then(|| Rat::from(&x.x)) }
    }
}

/// A grade of one of the three engines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Depth {
    Integer(i64),
    Half { x2: i64 },
    Affine { alpha: i64, delta: i64 },
}

impl Depth {
    pub fn of(engine: EngineId, nu: Grade) -> Self {
        match engine {
            EngineId::Virasoro => Depth::Integer(nu.0),
            EngineId::NeveuSchwarz => Depth::Half { x2: nu.0 },
            EngineId::AffineSl2 => Depth::Affine { alpha: nu.0, delta: nu.1 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRow {
    pub depth: Depth,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRow {
    pub vector: Vec<i64>,
    pub height: i64,
    pub real: bool,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictOut {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&Verdict> for VerdictOut {
    fn from(v: &Verdict) -> Self {
        VerdictOut { holds: v.holds, witness: v.witness.as_ref().map(|r| r.vector.clone()), note: v.note.clone() }
    }
}

pub fn admissible_str(a: Admissible) -> &'static str {
    match a {
        Admissible::Yes => "yes",
        Admissible::No => "no",
        Admissible::Unknown => "unknown",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleRootOut {
    pub root: Vec<i64>,
    pub pairing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyOut {
    pub weight: Vec<Ext>,
    pub non_critical: VerdictOut,
    pub dominant: VerdictOut,
    pub shifted_regular: VerdictOut,
    pub rational: VerdictOut,
    pub weakly_admissible: VerdictOut,
    pub kw_admissible: VerdictOut,
    pub admissible: String,
    pub simple_system: Vec<SimpleRootOut>,
    pub selfext_dim: Option<usize>,
    pub upsilon_bounds: Option<[usize; 2]>,
    pub cutoff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOut {
    pub exp: Vec<u32>,
    pub num: String,
    pub den: String,
}

/// A polynomial over ℚ, terms from the highest monomial down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyOut {
    pub vars: Vec<String>,
    pub terms: Vec<TermOut>,
}

impl From<&MultiPoly> for PolyOut {
    fn from(p: &MultiPoly) -> Self {
        let terms = p
            .terms()
            .rev()
            .map(|(m, c)| TermOut { exp: m.0.clone(), num: c.numer().to_string(), den: c.denom().to_string() })
            .collect();
        PolyOut { vars: p.var_names().to_vec(), terms }
    }
}

impl TryFrom<&PolyOut> for MultiPoly {
    type Error = Error;

    fn try_from(p: &PolyOut) -> Result<Self, Error> {
        let vars: Vec<&str> = p.vars.iter().map(String::as_str).collect();
        let terms = p
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), Rational::try_from(&Rat { num: t.num.clone(), den: t.den.clone() })?)))
            .collect::<Result<Vec<_>, Error>>()?;
        MultiPoly::from_terms(&vars, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KacDetOut {
    pub algebra: String,
    pub depth: Depth,
    pub size: usize,
    pub determinant: PolyOut,
    /// Engine determinant over closed form, when they agree up to a scalar.
    pub closed_form_ratio: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct JantzenRow {
    pub depth: Depth,
    pub layers: Vec<usize>,
    pub layer_sum: usize,
    pub det_valuation: u32,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VirGridRowOut {
    pub r: i64,
    pub s: i64,
    pub h: Rat,
    pub weakly_admissible: bool,
    pub c_admissible: bool,
    pub minimal_model: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NsGridRowOut {
    pub r: i64,
    pub s: i64,
    pub h: Rat,
    pub weakly_admissible: bool,
    /// `null` when the classification leaves the weight open.
    pub c_admissible: Option<bool>,
    pub status: String,
    pub minimal_model: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfExtOut {
    pub dim: u8,
    pub case: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VacuumOut {
    #[serde(rename = "type")]
    pub ty: String,
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub class: String,
    pub weakly_admissible: bool,
    pub k_admissible: bool,
    pub kw_admissible: bool,
    pub admissible: String,
    pub admissible_conjectural: bool,
    #[serde(rename = "gcdQL")]
    pub gcd_q_l: Option<i64>,
    pub adm_category_empty: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Sl2WeightOut {
    pub r: i64,
    pub s: i64,
    pub finite_coord: Rat,
    pub pairings: [Rat; 2],
    pub k_admissible: bool,
    pub kw_admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaOut {
    pub r: i64,
    pub coroots: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationOut {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Sl2Out {
    pub p: i64,
    pub q: i64,
    pub level: Rat,
    pub gammas: Vec<GammaOut>,
    pub rows: Vec<Sl2WeightOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WReduceOut {
    #[serde(rename = "type")]
    pub ty: String,
    pub level: Rat,
    pub hf: Vec<Rat>,
    pub l0: Rat,
    pub central_charge: Rat,
    pub kernel_dim: usize,
    pub verdict: String,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecoveryRowOut {
    pub r: i64,
    pub s: i64,
    pub l0: Rat,
    pub h_pq: Rat,
    pub verdict: String,
    pub vir_admissible: bool,
    pub h_matches: bool,
    pub verdict_agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecoveryOut {
    pub p: i64,
    pub q: i64,
    pub central_charge: Rat,
    pub c_matches: bool,
    pub undetermined_at_corners_only: bool,
    pub passed: bool,
    pub rows: Vec<RecoveryRowOut>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub id: u8,
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use admkit_core::exactmath::frac;

    #[test]
    fn rationals_round_trip() {
        for x in [frac(-3, 4), frac(0, 1), frac(7, 1)] {
            let r = Rat::from(&x);
            let s = serde_json::to_string(&r).unwrap();
            let back: Rat = serde_json::from_str(&s).unwrap();
            assert_eq!(Rational::try_from(&back).unwrap(), x);
        }
        assert_eq!(serde_json::to_string(&Rat::from(frac(-3, 4))).unwrap(), r#"{"num":"-3","den":"4"}"#);
        assert!(Rational::try_from(&Rat { num: "1".into(), den: "0".into() }).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-2/6").unwrap(), frac(-1, 3));
        assert_eq!(parse_rational("1.25").unwrap(), frac(5, 4));
        assert_eq!(parse_rational(" 4 ").unwrap(), frac(4, 1));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rationals("1,1/2").unwrap(), vec![frac(1, 1), frac(1, 2)]);
    }

    #[test]
    fn polynomials_round_trip() {
        let p = MultiPoly::from_terms(&["h", "c"], [(vec![2, 0], frac(1, 2)), (vec![0, 1], frac(-3, 1))]).unwrap();
        let out = PolyOut::from(&p);
        assert_eq!(out.terms[0].exp, vec![2, 0]);
        let s = serde_json::to_string(&out).unwrap();
        let back: PolyOut = serde_json::from_str(&s).unwrap();
        assert_eq!(MultiPoly::try_from(&back).unwrap(), p);
    }

    #[test]
    fn depths_are_tagged_by_shape() {
        assert_eq!(serde_json::to_string(&Depth::of(EngineId::NeveuSchwarz, (7, 0))).unwrap(), r#"{"x2":7}"#);
        let d: Depth = serde_json::from_str(r#"{"alpha":1,"delta":2}"#).unwrap();
        assert_eq!(d, Depth::Affine { alpha: 1, delta: 2 });
    }
}
