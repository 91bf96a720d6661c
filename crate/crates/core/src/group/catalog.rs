//! Built-in groups and the JSON group-spec format.
//!
//! The catalog order is fixed: `Q8` lists its elements as
//! `1, -1, i, -i, j, -j, k, -k`; permutation groups list their elements by
//! image array, so the identity always comes first.

use serde::{Deserialize, Serialize};

use super::{abelian, cyclic, from_permutations, FiniteGroup, RepresentationKind};
use crate::error::{Error, Result};
use crate::heisenberg::heis_group;

/// Quaternion group of order 8 in catalog order.
pub fn q8() -> FiniteGroup {
    // index = 2 * unit + negative, units 1, i, j, k
    fn unit_mul(u: usize, v: usize) -> (bool, usize) {
        match (u, v) {
            (0, v) => (false, v),
            (u, 0) => (false, u),
            (u, v) if u == v => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    }
    let g = FiniteGroup::from_law(8, RepresentationKind::Table, |a, b| {
        let (neg, unit) = unit_mul(a / 2, b / 2);
        let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
        2 * unit + usize::from(sign)
    })
    .expect("Q8 table");
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
    g.with_names(names)
}

/// Dihedral group of order 8, as symmetries of a square on vertices 0..4.
pub fn d4() -> FiniteGroup {
    from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).expect("D4")
}

/// Symmetric group on three points.
pub fn s3() -> FiniteGroup {
    from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).expect("S3")
}

/// Group description accepted on the command line and in files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cayley {
        order: usize,
        table: Vec<Vec<usize>>,
    },
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Builtin {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<usize>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cayley { order, table } => FiniteGroup::from_table(*order, table),
            GroupSpec::Permutation { degree, generators } => from_permutations(*degree, generators),
            GroupSpec::Builtin { name, n, q } => match name.as_str() {
                "Q8" => Ok(q8()),
                "D4" => Ok(d4()),
                "S3" => Ok(s3()),
                "Z" => cyclic(n.ok_or_else(|| Error::InvalidGroup("builtin Z needs n".into()))?),
                "heis" => {
                    let n = n.ok_or_else(|| Error::InvalidGroup("builtin heis needs n".into()))?;
                    let q = q.ok_or_else(|| Error::InvalidGroup("builtin heis needs q".into()))?;
                    heis_group(n, q as u64)
                }
                other => Err(Error::InvalidGroup(format!("unknown builtin {other:?}"))),
            },
        }
    }
}

/// Parses a short group name: `Q8`, `D4`, `S3`, `Z6`, `heis(1,3)`, or an
/// abelian direct sum `Z2+Z4+Z4`. Case-insensitive.
pub fn parse_group(name: &str) -> Result<FiniteGroup> {
    let s: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    match s.as_str() {
        "q8" => return Ok(q8()),
        "d4" => return Ok(d4()),
        "s3" => return Ok(s3()),
        _ => {}
    }
    if let Some(args) = s.strip_prefix("heis(").and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::InvalidGroup(format!("expected heis(n,q), got {name:?}")));
        }
        let n = parse_num(parts[0], name)?;
        let q = parse_num(parts[1], name)?;
        return heis_group(n, q as u64);
    }
    let moduli = parse_abelian(&s)?;
    if moduli.len() == 1 {
        cyclic(moduli[0])
    } else {
        abelian(&moduli)
    }
}

/// Parses `Z2+Z4+...` into its list of moduli.
pub fn parse_abelian(s: &str) -> Result<Vec<usize>> {
    let s = s.to_ascii_lowercase();
    s.split('+')
        .map(|part| {
            let part = part.trim();
            part.strip_prefix('z')
                .ok_or_else(|| Error::InvalidGroup(format!("unknown group {s:?}")))
                .and_then(|d| parse_num(d, &s))
        })
        .collect()
}

fn parse_num(d: &str, ctx: &str) -> Result<usize> {
    d.trim()
        .parse::<usize>()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::InvalidGroup(format!("bad number {d:?} in {ctx:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q8_catalog_order() {
        let q = q8();
        q.verify_axioms().unwrap();
        let e = |s: &str| q.element_by_name(s).unwrap();
        assert_eq!(q.names().unwrap(), &["1", "-1", "i", "-i", "j", "-j", "k", "-k"]);
        assert_eq!(q.mul(e("i"), e("j")), e("k"));
        assert_eq!(q.mul(e("j"), e("i")), e("-k"));
        assert_eq!(q.mul(e("i"), e("i")), e("-1"));
        assert_eq!(q.mul(e("k"), e("i")), e("j"));
        assert_eq!(q.inv(e("i")), e("-i"));
        assert_eq!(q.order_profile().get(&4), Some(&6));
    }

    #[test]
    fn small_catalog_groups() {
        let d = d4();
        d.verify_axioms().unwrap();
        assert_eq!(d.order(), 8);
        assert_eq!(d.order_profile().get(&2), Some(&5));
        assert_eq!(s3().order(), 6);
    }

    #[test]
    fn spec_json_round_trip() {
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"builtin","name":"Z","n":6}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 6);
        let spec: GroupSpec = serde_json::from_str(r#"{"kind":"builtin","name":"heis","n":1,"q":3}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 27);
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"permutation","degree":3,"generators":[[1,2,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 3);
        let spec: GroupSpec =
            serde_json::from_str(r#"{"kind":"cayley","order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().order(), 2);
        assert!(GroupSpec::Builtin { name: "nope".into(), n: None, q: None }.build().is_err());
    }

    #[test]
    fn shorthand_names() {
        assert_eq!(parse_group("Z2+Z4").unwrap().order(), 8);
        assert_eq!(parse_group("z12").unwrap().order(), 12);
        assert_eq!(parse_group("heis(1,2)").unwrap().order(), 8);
        assert_eq!(parse_group("Q8").unwrap().order(), 8);
        assert!(parse_group("Z0").is_err());
        assert!(parse_group("foo").is_err());
    }
}
