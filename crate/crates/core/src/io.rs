//! JSON files for algebras, brackets and wedge elements.
//!
//! ```text
//! algebra: {"name": .., "basis": [..], "unit": [..], "mul": [[i, j, k, "p/q"], ..]}
//! bracket: {"algebra": .., "params": [..], "coeffs": [[i, j, a, b, "poly"], ..], "modified": false}
//! wedge:   {"algebra": .., "terms": [[a, b, "p/q"], ..]}
//! ```
//!
//! Indices are 0-based; brackets and wedges also accept basis names, and
//! wedges accept `"1"` for the unit. Rationals are written as strings.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElement, FDAlgebra};
use crate::bracket::DoubleBracket;
use crate::error::{Error, Result};
use crate::inner::WedgeElement;
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Largest basis accepted from a file.
pub const MAX_FILE_DIM: usize = 32;

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    basis: Vec<String>,
    unit: Vec<Rational>,
    #[serde(default)]
    mul: Vec<(usize, usize, usize, Rational)>,
}

pub fn parse_algebra_json(s: &str) -> Result<FDAlgebra> {
    let f: AlgebraFile = serde_json::from_str(s).map_err(parse_err)?;
    if f.basis.len() > MAX_FILE_DIM {
        return Err(Error::InvalidAlgebra(format!(
            "basis larger than {MAX_FILE_DIM}"
        )));
    }
    FDAlgebra::new(f.name, f.basis, f.unit, f.mul)
}

pub fn algebra_to_json(alg: &FDAlgebra) -> String {
    let n = alg.dim();
    let mut mul = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, q) in alg.product_terms(i, j) {
                mul.push((i, j, *k, q.clone()));
            }
        }
    }
    let f = AlgebraFile {
        name: alg.name().to_string(),
        basis: alg.basis_names().to_vec(),
        unit: alg.unit().coords,
        mul,
    };
    serde_json::to_string_pretty(&f).expect("serializable")
}

/// A basis index given as a number or a name.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Slot {
    Index(usize),
    Name(String),
}

impl Slot {
    fn index(&self, alg: &FDAlgebra) -> Result<usize> {
        match self {
            Slot::Index(i) if *i < alg.dim() => Ok(*i),
            Slot::Index(i) => Err(Error::Parse(format!("basis index {i} out of range"))),
            Slot::Name(s) => alg
                .basis_index(s)
                .ok_or_else(|| Error::Parse(format!("unknown basis element {s:?}"))),
        }
    }

    fn element(&self, alg: &FDAlgebra) -> Result<AlgElement<Rational>> {
        match self {
            Slot::Name(s) if s == "1" => Ok(alg.unit()),
            _ => Ok(alg.basis_element(self.index(alg)?)),
        }
    }
}

/// A coefficient given as an integer or as a polynomial string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffText {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketFile {
    #[serde(default)]
    algebra: Option<String>,
    #[serde(default)]
    params: Vec<String>,
    coeffs: Vec<(Slot, Slot, Slot, Slot, CoeffText)>,
    #[serde(default)]
    modified: bool,
}

/// A bracket read from a file, with coefficients in its declared parameters.
#[derive(Clone, Debug)]
pub struct BracketSpec {
    pub algebra: Option<String>,
    pub params: Vec<String>,
    pub modified: bool,
    pub bracket: DoubleBracket<MultiPoly>,
}

/// The `"algebra"` field of a bracket or wedge file, if present.
pub fn referenced_algebra(s: &str) -> Result<Option<String>> {
    #[derive(Deserialize)]
    struct Head {
        #[serde(default)]
        algebra: Option<String>,
    }
    let h: Head = serde_json::from_str(s).map_err(parse_err)?;
    Ok(h.algebra)
}

pub fn parse_bracket_json(s: &str, alg: &FDAlgebra) -> Result<BracketSpec> {
    let f: BracketFile = serde_json::from_str(s).map_err(parse_err)?;
    for (i, p) in f.params.iter().enumerate() {
        if f.params[..i].contains(p) {
            return Err(Error::Parse(format!("duplicate parameter {p:?}")));
        }
    }
    let vars: Arc<[String]> = f.params.clone().into();
    let n = alg.dim();
    let mut coeffs = vec![MultiPoly::zero_in(&vars); n.pow(4)];
    for (i, j, a, b, c) in &f.coeffs {
        let (i, j, a, b) = (i.index(alg)?, j.index(alg)?, a.index(alg)?, b.index(alg)?);
        let p = match c {
            CoeffText::Int(k) => MultiPoly::constant_in(&vars, Rational::from(*k)),
            CoeffText::Text(t) => MultiPoly::parse(t, &vars)?,
        };
        coeffs[((i * n + j) * n + a) * n + b] += &p;
    }
    let db = DoubleBracket::from_coeffs(n, coeffs)?;
    Ok(BracketSpec {
        algebra: f.algebra,
        params: f.params,
        modified: f.modified,
        bracket: db,
    })
}

/// Nonzero coefficients as `[i, j, a, b, "poly"]` rows.
pub fn bracket_to_json(
    db: &DoubleBracket<MultiPoly>,
    algebra: Option<&str>,
    modified: bool,
) -> String {
    let n = db.dim();
    let params: Vec<String> = db
        .coeffs()
        .iter()
        .map(|p| p.vars())
        .find(|v| !v.is_empty())
        .map(|v| v.to_vec())
        .unwrap_or_default();
    let coeffs = db
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, p)| !num_traits::Zero::is_zero(*p))
        .map(|(k, p)| {
            let (i, j, a, b) = (k / n.pow(3), (k / n.pow(2)) % n, (k / n) % n, k % n);
            (
                Slot::Index(i),
                Slot::Index(j),
                Slot::Index(a),
                Slot::Index(b),
                CoeffText::Text(p.to_string()),
            )
        })
        .collect();
    let f = BracketFile {
        algebra: algebra.map(str::to_string),
        params,
        coeffs,
        modified,
    };
    let rows: Vec<String> = f.coeffs.iter().map(|c| format!("    {}", row(c))).collect();
    let mut s = String::from("{\n");
    if let Some(a) = &f.algebra {
        s += &format!("  \"algebra\": {},\n", row(a));
    }
    s += &format!("  \"params\": {},\n", row(&f.params));
    s += &format!("  \"modified\": {},\n", f.modified);
    if rows.is_empty() {
        s += "  \"coeffs\": []\n}";
    } else {
        s += &format!("  \"coeffs\": [\n{}\n  ]\n}}", rows.join(",\n"));
    }
    s
}

fn row<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WedgeFile {
    #[serde(default)]
    #[allow(dead_code)]
    algebra: Option<String>,
    terms: Vec<(Slot, Slot, Rational)>,
}

/// `Σ c·(x∧y)` over the listed terms.
pub fn parse_wedge_json(s: &str, alg: &FDAlgebra) -> Result<WedgeElement> {
    let f: WedgeFile = serde_json::from_str(s).map_err(parse_err)?;
    let mut r = WedgeElement::zero(alg.dim());
    for (x, y, c) in &f.terms {
        r = r.add(&WedgeElement::wedge(&x.element(alg)?, &y.element(alg)?).scale(c));
    }
    Ok(r)
}
