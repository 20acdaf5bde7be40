//! JSON files for states, operators, channels and measurements.
//!
//! Every complex number is a `[re, im]` pair and matrices are flattened
//! row-major. An operator file looks like
//!
//! ```json
//! { "type": "density", "dims": [2, 2], "labels": ["A", "B"],
//!   "matrix": [[0.5, 0.0], [0.0, 0.0], ...] }
//! ```
//!
//! `type` is optional for operators and defaults to `density`. The other
//! types are `operator` (any Hermitian matrix), `pure` (a `vector` field
//! instead of `matrix`), `channel` (`dim_in`, `dim_out`, `kraus`) and `povm`
//! (`dim`, `elements`).

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::objects::{KrausChannel, Povm, PureState};
use crate::operator::{ComplexMatrix, ComplexVector, HermitianOperator};
use crate::state::DensityOperator;

/// Parsed contents of a file.
#[derive(Clone, Debug)]
pub enum Document {
    Density(DensityOperator),
    Operator(HermitianOperator, SubsystemLayout),
    Pure(PureState),
    Channel(KrausChannel),
    Povm(Povm),
}

impl Document {
    pub fn type_name(&self) -> &'static str {
        match self {
            Document::Density(_) => "density",
            Document::Operator(..) => "operator",
            Document::Pure(_) => "pure",
            Document::Channel(_) => "channel",
            Document::Povm(_) => "povm",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Format("top level: expected a JSON object".into()))?;
        let kind = match obj.get("type") {
            None => "density",
            Some(Value::String(s)) => s.as_str(),
            Some(_) => return Err(Error::Format("type: expected a string".into())),
        };
        match kind {
            "density" | "state" => {
                let (m, layout) = parse_operator(obj)?;
                Ok(Document::Density(
                    DensityOperator::new(m, layout)
                        .map_err(|e| Error::Format(format!("matrix: {e}")))?,
                ))
            }
            "operator" => {
                let (m, layout) = parse_operator(obj)?;
                Ok(Document::Operator(m, layout))
            }
            "pure" => {
                let layout = parse_layout(obj)?;
                let v = parse_entries(field(obj, "vector")?, "vector")?;
                if v.len() != layout.total_dim() {
                    return Err(Error::Format(format!(
                        "vector: expected {} entries for dims {:?}, found {}",
                        layout.total_dim(),
                        layout.dims(),
                        v.len()
                    )));
                }
                let v = ComplexVector::from_vec(v);
                Ok(Document::Pure(
                    PureState::new(v, layout).map_err(|e| Error::Format(format!("vector: {e}")))?,
                ))
            }
            "channel" => {
                let dim_in = parse_count(field(obj, "dim_in")?, "dim_in")?;
                let dim_out = parse_count(field(obj, "dim_out")?, "dim_out")?;
                let list = list_of(field(obj, "kraus")?, "kraus")?;
                let kraus = list
                    .iter()
                    .enumerate()
                    .map(|(i, k)| parse_matrix(k, dim_out, dim_in, &format!("kraus[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Document::Channel(
                    KrausChannel::new(kraus).map_err(|e| Error::Format(format!("kraus: {e}")))?,
                ))
            }
            "povm" => {
                let dim = parse_count(field(obj, "dim")?, "dim")?;
                let list = list_of(field(obj, "elements")?, "elements")?;
                let elements = list
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let path = format!("elements[{i}]");
                        let m = parse_matrix(e, dim, dim, &path)?;
                        HermitianOperator::new(m)
                            .map_err(|err| Error::Format(format!("{path}: {err}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Document::Povm(
                    Povm::new(elements).map_err(|e| Error::Format(format!("elements: {e}")))?,
                ))
            }
            other => Err(Error::Format(format!(
                "type: unknown value {other:?}; expected density, operator, pure, channel or povm"
            ))),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Density(rho) => operator_value("density", rho.operator(), rho.layout()),
            Document::Operator(m, layout) => operator_value("operator", m, layout),
            Document::Pure(psi) => json!({
                "type": "pure",
                "dims": psi.layout().dims(),
                "labels": psi.layout().labels(),
                "vector": entries_value(psi.vector().iter()),
            }),
            Document::Channel(ch) => json!({
                "type": "channel",
                "dim_in": ch.dim_in(),
                "dim_out": ch.dim_out(),
                "kraus": ch.kraus().iter().map(matrix_value).collect::<Vec<_>>(),
            }),
            Document::Povm(p) => json!({
                "type": "povm",
                "dim": p.dim(),
                "elements": p.elements().iter().map(|e| matrix_value(e.matrix())).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values are finite")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// The state described by a `density` or `pure` document.
    pub fn into_state(self) -> Result<DensityOperator> {
        match self {
            Document::Density(rho) => Ok(rho),
            Document::Pure(psi) => Ok(psi.density()),
            other => Err(Error::Format(format!(
                "type: expected a density or pure state, found {}",
                other.type_name()
            ))),
        }
    }

    /// Any operator-valued document, with its layout.
    pub fn into_operator(self) -> Result<(HermitianOperator, SubsystemLayout)> {
        match self {
            Document::Operator(m, l) => Ok((m, l)),
            Document::Density(rho) => Ok(rho.into_parts()),
            Document::Pure(psi) => Ok(psi.density().into_parts()),
            other => Err(Error::Format(format!(
                "type: expected an operator, found {}",
                other.type_name()
            ))),
        }
    }
}

pub fn read_state(path: impl AsRef<Path>) -> Result<DensityOperator> {
    Document::read(path)?.into_state()
}

pub fn read_operator(path: impl AsRef<Path>) -> Result<(HermitianOperator, SubsystemLayout)> {
    Document::read(path)?.into_operator()
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::Format(format!("{name}: missing field")))
}

fn list_of<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Format(format!("{path}: expected an array")))
}

fn parse_count(v: &Value, path: &str) -> Result<usize> {
    match v.as_u64() {
        Some(n) if n > 0 => Ok(n as usize),
        _ => Err(Error::Format(format!(
            "{path}: expected a positive integer, found {v}"
        ))),
    }
}

fn parse_layout(obj: &Map<String, Value>) -> Result<SubsystemLayout> {
    let dims = list_of(field(obj, "dims")?, "dims")?
        .iter()
        .enumerate()
        .map(|(i, d)| parse_count(d, &format!("dims[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let layout = match obj.get("labels") {
        None => SubsystemLayout::from_dims(&dims),
        Some(v) => {
            let labels = list_of(v, "labels")?
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    l.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Format(format!("labels[{i}]: expected a string")))
                })
                .collect::<Result<Vec<_>>>()?;
            SubsystemLayout::new(labels, dims)
        }
    };
    layout.map_err(|e| Error::Format(format!("labels/dims: {e}")))
}

fn parse_complex(v: &Value, path: &str) -> Result<Complex64> {
    let bad = || {
        Error::Format(format!(
            "{path}: expected a [re, im] pair of finite numbers, found {v}"
        ))
    };
    let pair = v.as_array().ok_or_else(bad)?;
    if pair.len() != 2 {
        return Err(bad());
    }
    let re = pair[0].as_f64().ok_or_else(bad)?;
    let im = pair[1].as_f64().ok_or_else(bad)?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn parse_entries(v: &Value, path: &str) -> Result<Vec<Complex64>> {
    list_of(v, path)?
        .iter()
        .enumerate()
        .map(|(i, z)| parse_complex(z, &format!("{path}[{i}]")))
        .collect()
}

fn parse_matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<ComplexMatrix> {
    let entries = parse_entries(v, path)?;
    if entries.len() != rows * cols {
        return Err(Error::Format(format!(
            "{path}: expected {} entries for a {rows}x{cols} matrix, found {}",
            rows * cols,
            entries.len()
        )));
    }
    Ok(ComplexMatrix::from_row_slice(rows, cols, &entries))
}

fn parse_operator(obj: &Map<String, Value>) -> Result<(HermitianOperator, SubsystemLayout)> {
    let layout = parse_layout(obj)?;
    let d = layout.total_dim();
    let m = parse_matrix(field(obj, "matrix")?, d, d, "matrix")?;
    let op = HermitianOperator::new(m).map_err(|e| Error::Format(format!("matrix: {e}")))?;
    Ok((op, layout))
}

fn entries_value<'a>(it: impl Iterator<Item = &'a Complex64>) -> Value {
    Value::Array(it.map(|z| json!([z.re, z.im])).collect())
}

fn matrix_value(m: &ComplexMatrix) -> Value {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push(json!([z.re, z.im]));
        }
    }
    Value::Array(out)
}

fn operator_value(kind: &str, m: &HermitianOperator, layout: &SubsystemLayout) -> Value {
    json!({
        "type": kind,
        "dims": layout.dims(),
        "labels": layout.labels(),
        "matrix": matrix_value(m.matrix()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::{random_density, SeededRng};

    #[test]
    fn density_round_trip_is_bit_exact() {
        let mut rng = SeededRng::new(1);
        let rho =
            random_density(&SubsystemLayout::from_dims(&[2, 3]).unwrap(), 6, &mut rng).unwrap();
        let doc = Document::Density(rho.clone());
        let back = Document::parse(&doc.to_json())
            .unwrap()
            .into_state()
            .unwrap();
        assert_eq!(back.matrix(), rho.matrix());
        assert_eq!(back.layout(), rho.layout());
    }

    #[test]
    fn other_documents_round_trip() {
        let mut rng = SeededRng::new(2);
        let ch = KrausChannel::random(2, 3, 2, &mut rng).unwrap();
        match Document::parse(&Document::Channel(ch.clone()).to_json()).unwrap() {
            Document::Channel(c) => assert_eq!(c, ch),
            other => panic!("{other:?}"),
        }
        let p = Povm::random(2, 3, &mut rng).unwrap();
        match Document::parse(&Document::Povm(p.clone()).to_json()).unwrap() {
            Document::Povm(q) => assert_eq!(q.elements(), p.elements()),
            other => panic!("{other:?}"),
        }
        let psi = PureState::maximally_entangled(2, ["A", "B"]).unwrap();
        match Document::parse(&Document::Pure(psi.clone()).to_json()).unwrap() {
            Document::Pure(q) => assert_eq!(q, psi),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn labels_default_and_type_is_optional() {
        let text = r#"{"dims": [2], "matrix": [[1,0],[0,0],[0,0],[0,0]]}"#;
        let rho = Document::parse(text).unwrap().into_state().unwrap();
        assert_eq!(rho.layout().labels(), ["A"]);
    }

    fn message(text: &str) -> String {
        match Document::parse(text) {
            Err(Error::Format(m)) => m,
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn diagnostics_name_field_and_position() {
        assert!(message(r#"{"dims": [2], "matrix": [[1,0],[0,0],[0,0]]}"#)
            .starts_with("matrix: expected 4 entries"));
        assert!(
            message(r#"{"dims": [2], "matrix": [[1,0],[0,0],[0],[0,0]]}"#)
                .starts_with("matrix[2]:")
        );
        assert!(message(r#"{"dims": [2, 0], "matrix": []}"#).starts_with("dims[1]:"));
        assert!(message(r#"{"dims": [2]}"#).starts_with("matrix: missing field"));
        assert!(
            message(r#"{"type": "povm", "dim": 2, "elements": [[[1,0],[0,0],[0,0],[0,0]]]}"#)
                .starts_with("elements:")
        );
        assert!(message(r#"{"dims": [2], "matrix": [[2,0],[0,0],[0,0],[0,0]]}"#).contains("trace"));
        assert!(message(r#"{"type": "qubit"}"#).starts_with("type: unknown"));
        assert!(message("[1, 2").contains("line 1"));
    }
}
