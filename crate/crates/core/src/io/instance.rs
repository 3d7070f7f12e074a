//! Instance files: a lattice, commuting operators on it and an optional
//! pairing with a second lattice.
//!
//! Operator matrices are written in the coordinates of `lattice_basis` as it
//! appears in the file and must be integral (that is what lattice stability
//! means in these coordinates). On parsing the basis is replaced by the
//! canonical one and the operators are transported along.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::json::{from_slice_with_path, from_value_with_path, int_matrix_from_rows, rat_matrix_from_rows, rows_from_int, rows_from_rat, NumRows};
use crate::congruence::detect::PairingData;
use crate::error::{Error, Result};
use crate::field::{dense, Rationals};
use crate::hecke::{HeckeSystem, Operator, OperatorLabel};
use crate::lattice::{dual_lattice, BilinearPairing, Lattice};
use crate::linalg::{IntMatrix, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TagLabel {
    pub l: u64,
    pub j: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<TagLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub matrix: NumRows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization_exponent: Option<i64>,
}

/// The on-disk document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(alias = "dim")]
    pub ambient_dim: usize,
    #[serde(alias = "basis")]
    pub lattice_basis: NumRows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_lattice_basis: Option<NumRows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairing_gram: Option<NumRows>,
    pub operators: Vec<OperatorEntry>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub system: HeckeSystem,
    pub pairing: Option<PairingData>,
    pub metadata: BTreeMap<String, Value>,
}

impl Instance {
    /// Operators in ambient coordinates, `B⁻¹·T·B`; needs a full-rank lattice.
    pub fn ambient_operator(&self, t: &RatMatrix) -> Result<RatMatrix> {
        let b = self.system.lattice().basis();
        let binv = dense::inverse(&Rationals, b)
            .ok_or_else(|| Error::Dimension("lattice is not of full rank".into()))?;
        Ok(&(&binv * t) * b)
    }
}

pub fn parse_instance(bytes: &[u8]) -> Result<Instance> {
    let file: InstanceFile = from_slice_with_path(bytes)?;
    instance_from_file(&file)
}

/// Parses an instance document, or a result record whose `output.instance`
/// holds one (as written by `modsym` and `gen`).
pub fn parse_instance_value(v: &Value) -> Result<Instance> {
    let doc = v.get("output").and_then(|o| o.get("instance")).unwrap_or(v);
    let file: InstanceFile = from_value_with_path(doc.clone())?;
    instance_from_file(&file)
}

pub fn instance_from_file(file: &InstanceFile) -> Result<Instance> {
    let n = file.ambient_dim;
    let given = rat_matrix_from_rows(&file.lattice_basis, n, "lattice_basis")?;
    let lattice = Lattice::new(given.clone()).map_err(|e| Error::Schema {
        path: "lattice_basis".into(),
        message: e.to_string(),
    })?;
    // canonical = U·given with U unimodular; T ↦ U·T·U⁻¹
    let u = dense::solve_left(&Rationals, &given, lattice.basis()).ok_or_else(|| Error::Invariant("canonical basis outside the lattice span".into()))?;
    let uinv = dense::inverse(&Rationals, &u).ok_or_else(|| Error::Invariant("basis change is singular".into()))?;
    let r = lattice.rank();
    let mut ops = Vec::new();
    for (i, e) in file.operators.iter().enumerate() {
        let path = format!("operators[{i}]");
        let label = match (&e.label, &e.name) {
            (Some(t), None) => OperatorLabel::Tag { l: t.l, j: t.j },
            (None, Some(s)) => OperatorLabel::Name(s.clone()),
            _ => {
                return Err(Error::Schema { path, message: "exactly one of 'label' and 'name' is required".into() });
            }
        };
        let m = rat_matrix_from_rows(&e.matrix, r, &format!("{path}.matrix"))?;
        if m.rows() != r {
            return Err(Error::Schema { path: format!("{path}.matrix"), message: format!("expected {r} rows, found {}", m.rows()) });
        }
        let m = m.to_integer().ok_or_else(|| Error::NotStable(label.to_string()))?;
        let t = (&(&u * &m.to_rational()) * &uinv).to_integer().ok_or_else(|| Error::NotStable(label.to_string()))?;
        ops.push(Operator { label, matrix: t, normalization_exponent: e.normalization_exponent });
    }
    let system = HeckeSystem::new(lattice.clone(), ops)?;
    let pairing = match (&file.pairing_gram, &file.dual_lattice_basis) {
        (None, None) => None,
        (gram, dual) => {
            let pairing = match gram {
                Some(g) => BilinearPairing::new(rat_matrix_from_rows(g, n, "pairing_gram")?),
                None => BilinearPairing::standard(n),
            };
            if pairing.gram().rows() != n {
                return Err(Error::Schema { path: "pairing_gram".into(), message: format!("expected {n} rows") });
            }
            let dual = match dual {
                Some(d) => Lattice::new(rat_matrix_from_rows(d, n, "dual_lattice_basis")?).map_err(|e| Error::Schema {
                    path: "dual_lattice_basis".into(),
                    message: e.to_string(),
                })?,
                None => dual_lattice(&lattice, &pairing.transpose(), None)?,
            };
            Some(PairingData { lattice, dual, pairing })
        }
    };
    Ok(Instance { system, pairing, metadata: file.metadata.clone() })
}

/// The document for a system in canonical coordinates.
pub fn instance_to_file(
    h: &HeckeSystem,
    pairing: Option<&PairingData>,
    metadata: BTreeMap<String, Value>,
) -> InstanceFile {
    let operators = h
        .operators()
        .iter()
        .map(|op| {
            let (label, name) = match &op.label {
                OperatorLabel::Tag { l, j } => (Some(TagLabel { l: *l, j: *j }), None),
                OperatorLabel::Name(s) => (None, Some(s.clone())),
            };
            OperatorEntry { label, name, matrix: rows_from_int(&op.matrix), normalization_exponent: op.normalization_exponent }
        })
        .collect();
    InstanceFile {
        ambient_dim: h.lattice().ambient_dim(),
        lattice_basis: rows_from_rat(h.lattice().basis()),
        dual_lattice_basis: pairing.map(|p| rows_from_rat(p.dual.basis())),
        pairing_gram: pairing.map(|p| rows_from_rat(p.pairing.gram())),
        operators,
        metadata,
    }
}

pub fn instance_to_json(file: &InstanceFile) -> String {
    let mut s = serde_json::to_string_pretty(file).expect("instance serializes");
    s.push('\n');
    s
}

/// Integer matrix from a JSON text such as `[[2,4],[6,8]]`.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix> {
    let rows: NumRows = from_slice_with_path(text.as_bytes())?;
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    int_matrix_from_rows(&rows, cols, "matrix")
}
