//! JSON definition files.
//!
//! ```json
//! {
//!   "name": "sl2",
//!   "kind": "lie",
//!   "dim": 3,
//!   "basis": ["h", "e", "f"],
//!   "brackets": [
//!     { "i": 1, "j": 2, "coeffs": ["0", "2", "0"] },
//!     { "i": 2, "j": 1, "coeffs": ["0", "-2", "0"] }
//!   ]
//! }
//! ```
//!
//! Coefficients are rational strings such as `"-2/3"`. The bracket table is
//! taken literally: listing `[x_i, x_j]` does not fill in `[x_j, x_i]`, so
//! an antisymmetric partner that is left out shows up as a validation
//! failure. An optional `matrices` section describes a representation on
//! `End_W(V)`:
//!
//! ```json
//! "matrices": {
//!   "dimV": 2,
//!   "W": [["1", "0"]],
//!   "q": [["0", "0"], ["0", "1"]],
//!   "rho": { "x": [["0", "1"], ["0", "0"]] },
//!   "k": "1",
//!   "variant": "6th",
//!   "degree": 3,
//!   "algebra": { "basis": [[["1", "0"], ["0", "1"]]], "q": [["0", "0"], ["0", "0"]] }
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::parser::parse_expr;
use crate::scalar::{parse_scalar, Scalar};
use crate::structures::{BracketKind, StructureConstants, Variant};
use crate::words::FreeElem;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub kind: BracketKind,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<MatricesSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

type RawMatrix = Vec<Vec<String>>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatricesSection {
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    #[serde(rename = "W")]
    pub w: Vec<Vec<String>>,
    pub q: RawMatrix,
    pub rho: BTreeMap<String, RawMatrix>,
    pub k: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSection>,
}

/// A finite dimensional invariant algebra spanned by square matrices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSection {
    pub basis: Vec<RawMatrix>,
    pub q: RawMatrix,
}

/// A checked definition file.
#[derive(Debug, Clone)]
pub struct Definition {
    pub name: String,
    pub labels: Vec<String>,
    pub structure: StructureConstants,
    pub rep: Option<RepConfig>,
}

/// The `matrices` section with every entry parsed. The matrices are not yet
/// checked for the invariant-algebra conditions; that is the job of the
/// `rep` command, which reports violations as findings.
#[derive(Debug, Clone)]
pub struct RepConfig {
    pub dim_v: usize,
    pub w: Vec<Vec<Scalar>>,
    pub q: Matrix,
    /// One matrix per basis label, in basis order.
    pub rho: Vec<Matrix>,
    pub k: Scalar,
    pub variant: Variant,
    pub degree: usize,
    pub algebra: Option<(Vec<Matrix>, Matrix)>,
}

/// Default degree cap for the envelope extension check.
pub const DEFAULT_REP_DEGREE: usize = 3;

fn scalar(s: &str, what: &str) -> Result<Scalar> {
    parse_scalar(s).map_err(|_| Error::Format(format!("{what}: `{s}` is not an exact rational")))
}

fn matrix(raw: &RawMatrix, what: &str) -> Result<Matrix> {
    let rows = raw
        .iter()
        .map(|row| row.iter().map(|s| scalar(s, what)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|e| Error::Format(format!("{what}: {e}")))
}

fn square(raw: &RawMatrix, n: usize, what: &str) -> Result<Matrix> {
    let m = matrix(raw, what)?;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::Format(format!("{what} is {}x{}, expected {n}x{n}", m.nrows(), m.ncols())));
    }
    Ok(m)
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    /// Checks indices, labels and coefficients and builds the structure
    /// constants and, if present, the representation data.
    pub fn definition(&self) -> Result<Definition> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Format("dim must be positive".into()));
        }
        if self.basis.len() != n {
            return Err(Error::Format(format!("{} basis labels for dim {n}", self.basis.len())));
        }
        let mut seen = BTreeSet::new();
        for (idx, label) in self.basis.iter().enumerate() {
            if label == "q" {
                return Err(Error::Format("the label `q` is reserved for the idempotent".into()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::Format(format!("duplicate basis label `{label}`")));
            }
            match parse_expr(label, &self.basis) {
                Ok(e) if e == FreeElem::gen(idx + 1) => {}
                _ => return Err(Error::Format(format!("basis label `{label}` is not an identifier"))),
            }
        }
        let mut structure = StructureConstants::zero(n, self.kind);
        let mut listed = BTreeSet::new();
        for b in &self.brackets {
            if !listed.insert((b.i, b.j)) {
                return Err(Error::Format(format!("bracket ({}, {}) listed twice", b.i, b.j)));
            }
            let what = format!("bracket ({}, {})", b.i, b.j);
            let coeffs = b.coeffs.iter().map(|s| scalar(s, &what)).collect::<Result<Vec<_>>>()?;
            structure
                .set(b.i, b.j, coeffs)
                .map_err(|e| Error::Format(e.to_string()))?;
        }
        let rep = self.matrices.as_ref().map(|m| self.rep_config(m)).transpose()?;
        Ok(Definition {
            name: self.name.clone(),
            labels: self.basis.clone(),
            structure,
            rep,
        })
    }

    fn rep_config(&self, m: &MatricesSection) -> Result<RepConfig> {
        let n = m.dim_v;
        if n == 0 {
            return Err(Error::Format("dimV must be positive".into()));
        }
        let w = m
            .w
            .iter()
            .map(|v| {
                if v.len() != n {
                    return Err(Error::Format(format!("W vector of length {}, expected {n}", v.len())));
                }
                v.iter().map(|s| scalar(s, "W")).collect()
            })
            .collect::<Result<Vec<_>>>()?;
        let q = square(&m.q, n, "q")?;
        if let Some(extra) = m.rho.keys().find(|l| !self.basis.contains(l)) {
            return Err(Error::Format(format!("rho given for unknown label `{extra}`")));
        }
        let rho = self
            .basis
            .iter()
            .map(|l| {
                let raw = m
                    .rho
                    .get(l)
                    .ok_or_else(|| Error::Format(format!("rho missing for label `{l}`")))?;
                square(raw, n, &format!("rho({l})"))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = scalar(&m.k, "k")?;
        let variant = match &m.variant {
            Some(v) => v.parse()?,
            None => default_variant(self.kind),
        };
        let algebra = m
            .algebra
            .as_ref()
            .map(|a| -> Result<(Vec<Matrix>, Matrix)> {
                let basis = a.basis.iter().map(|b| matrix(b, "algebra basis")).collect::<Result<Vec<_>>>()?;
                Ok((basis, matrix(&a.q, "algebra q")?))
            })
            .transpose()?;
        Ok(RepConfig {
            dim_v: n,
            w,
            q,
            rho,
            k,
            variant,
            degree: m.degree.unwrap_or(DEFAULT_REP_DEGREE),
            algebra,
        })
    }
}

/// The bracket that matches the algebra's kind.
pub fn default_variant(kind: BracketKind) -> Variant {
    match kind {
        BracketKind::Lie => Variant::Sixth,
        BracketKind::Leibniz => Variant::Fourth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    const HEIS: &str = r#"{
        "name": "heisenberg", "kind": "lie", "dim": 3, "basis": ["a", "b", "c"],
        "brackets": [
            { "i": 1, "j": 2, "coeffs": ["0", "0", "1"] },
            { "i": 2, "j": 1, "coeffs": ["0", "0", "-1"] }
        ]
    }"#;

    #[test]
    fn reads_literal_table() {
        let d = AlgebraFile::from_json(HEIS).unwrap().definition().unwrap();
        assert_eq!(d.labels, vec!["a", "b", "c"]);
        assert_eq!(d.structure.bracket_coeffs(1, 2), &[int(0), int(0), int(1)]);
        assert_eq!(d.structure.bracket_coeffs(1, 3), &[int(0), int(0), int(0)]);
        assert!(d.rep.is_none());
    }

    #[test]
    fn rejects_bad_input() {
        let bad = |patch: &str| AlgebraFile::from_json(&HEIS.replace(r#""basis": ["a", "b", "c"]"#, patch));
        assert!(bad(r#""basis": ["a", "q", "c"]"#).unwrap().definition().is_err());
        assert!(bad(r#""basis": ["a", "a", "c"]"#).unwrap().definition().is_err());
        assert!(bad(r#""basis": ["a", "b"]"#).unwrap().definition().is_err());
        assert!(bad(r#""basis": ["a", "b", "2c"]"#).unwrap().definition().is_err());
        assert!(bad(r#""basis": ["a", "b", "c"], "extra": 1"#).is_err());
        let float = HEIS.replace(r#""-1""#, r#""-1.5""#);
        assert!(matches!(
            AlgebraFile::from_json(&float).unwrap().definition(),
            Err(Error::Format(_))
        ));
        let range = HEIS.replace(r#""i": 2, "j": 1"#, r#""i": 4, "j": 1"#);
        assert!(AlgebraFile::from_json(&range).unwrap().definition().is_err());
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(AlgebraFile::load("/nonexistent/alg.json"), Err(Error::Io { .. })));
    }
}
