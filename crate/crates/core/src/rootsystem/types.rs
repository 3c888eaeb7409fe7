//! Simple Lie algebra types and their numerical invariants.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactmath::{frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SimpleType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

/// Coxeter number `h`, dual Coxeter number `h∨`, lacety `l` and `r∨` (equal to `l` for untwisted types).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleTypeData {
    pub ty: SimpleType,
    pub h: i64,
    pub hdual: i64,
    pub lacety: i64,
    pub rdual: i64,
}

impl SimpleType {
    /// Parses names such as `A1`, `C2`, `E8`, `G2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Input(format!("unknown simple type {s:?}"));
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: u32 = chars.as_str().parse().map_err(|_| bad())?;
        let t = match (letter, n) {
            ('A', n) => SimpleType::A(n),
            ('B', n) => SimpleType::B(n),
            ('C', n) => SimpleType::C(n),
            ('D', n) => SimpleType::D(n),
            ('E', 6) => SimpleType::E6,
            ('E', 7) => SimpleType::E7,
            ('E', 8) => SimpleType::E8,
            ('F', 4) => SimpleType::F4,
            ('G', 2) => SimpleType::G2,
            _ => return Err(bad()),
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            SimpleType::A(n) => n >= 1,
            SimpleType::B(n) | SimpleType::C(n) => n >= 2,
            SimpleType::D(n) => n >= 4,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Input(format!("invalid rank for {}", self.name())))
        }
    }

    pub fn name(&self) -> String {
        match *self {
            SimpleType::A(n) => format!("A{n}"),
            SimpleType::B(n) => format!("B{n}"),
            SimpleType::C(n) => format!("C{n}"),
            SimpleType::D(n) => format!("D{n}"),
            SimpleType::E6 => "E6".into(),
            SimpleType::E7 => "E7".into(),
            SimpleType::E8 => "E8".into(),
            SimpleType::F4 => "F4".into(),
            SimpleType::G2 => "G2".into(),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            SimpleType::A(n) | SimpleType::B(n) | SimpleType::C(n) | SimpleType::D(n) => n as usize,
            SimpleType::E6 => 6,
            SimpleType::E7 => 7,
            SimpleType::E8 => 8,
            SimpleType::F4 => 4,
            SimpleType::G2 => 2,
        }
    }

    pub fn data(&self) -> SimpleTypeData {
        let (h, hdual, lacety) = match *self {
            SimpleType::A(n) => (n as i64 + 1, n as i64 + 1, 1),
            SimpleType::B(n) => (2 * n as i64, 2 * n as i64 - 1, 2),
            SimpleType::C(n) => (2 * n as i64, n as i64 + 1, 2),
            SimpleType::D(n) => (2 * n as i64 - 2, 2 * n as i64 - 2, 1),
            SimpleType::E6 => (12, 12, 1),
            SimpleType::E7 => (18, 18, 1),
            SimpleType::E8 => (30, 30, 1),
            SimpleType::F4 => (12, 9, 2),
            SimpleType::G2 => (6, 4, 3),
        };
        SimpleTypeData { ty: *self, h, hdual, lacety, rdual: lacety }
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots (Bourbaki numbering), long roots of square length 2.
    pub fn simple_form(&self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        let mut b = vec![vec![int(0); n]; n];
        let mut len = vec![int(2); n];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match *self {
            SimpleType::A(_) => edges = chain(n),
            SimpleType::B(_) => {
                edges = chain(n);
                len[n - 1] = int(1);
            }
            SimpleType::C(_) => {
                edges = chain(n);
                for l in len.iter_mut().take(n - 1) {
                    *l = int(1);
                }
            }
            SimpleType::D(_) => {
                edges = chain(n - 1);
                edges.push((n - 3, n - 1));
            }
            SimpleType::E6 | SimpleType::E7 | SimpleType::E8 => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                edges.push((0, 2));
                edges.push((1, 3));
                for i in 2..n - 1 {
                    edges.push((i, i + 1));
                }
            }
            SimpleType::F4 => {
                edges = chain(4);
                len[2] = int(1);
                len[3] = int(1);
            }
            SimpleType::G2 => {
                edges.push((0, 1));
                len[0] = frac(2, 3);
            }
        }
        for i in 0..n {
            b[i][i] = len[i].clone();
        }
        for (i, j) in edges {
            // (α_i, α_j) = −max(|α_i|², |α_j|²)/2 for adjacent nodes
            let v = -(if len[i] > len[j] { len[i].clone() } else { len[j].clone() }) / int(2);
            b[i][j] = v.clone();
            b[j][i] = v;
        }
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!(SimpleType::parse("A1").unwrap(), SimpleType::A(1));
        assert_eq!(SimpleType::parse("g2").unwrap(), SimpleType::G2);
        assert_eq!(SimpleType::parse("E8").unwrap(), SimpleType::E8);
        assert!(SimpleType::parse("D3").is_err());
        assert!(SimpleType::parse("E9").is_err());
        assert!(SimpleType::parse("").is_err());
    }

    #[test]
    fn g2_cartan_entries() {
        let b = SimpleType::G2.simple_form();
        // a_12 = 2(α_1,α_2)/(α_1,α_1) = −3, a_21 = −1
        assert_eq!(int(2) * &b[0][1] / &b[0][0], int(-3));
        assert_eq!(int(2) * &b[1][0] / &b[1][1], int(-1));
    }
}
