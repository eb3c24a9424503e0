//! Instance files (TOML) and representation files (JSON).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qgrass_core::exactfield::{FieldSpec, Matrix, Scalar};
use qgrass_core::polyring::{parse_poly, Polynomial};
use qgrass_core::quiverrep::{Arrow, DimVector, Quiver, Representation};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub enumeration: Option<u64>,
    pub trials: Option<usize>,
    pub retries: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldSpec,
    pub n: usize,
    pub equations: Vec<String>,
    #[serde(default)]
    pub inequations: Vec<String>,
    #[serde(default)]
    pub projective: bool,
    #[serde(default)]
    pub caps: Caps,
    pub seed: Option<u64>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        Self::from_toml(&read(path)?, path)
    }

    pub fn from_toml(text: &str, path: &Path) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::InstanceFormat {
            path: path.to_path_buf(),
            message: e.message().to_string(),
        })
    }

    /// Parses both polynomial lists over `field`.
    pub fn polynomials(&self, field: FieldSpec) -> Result<(Vec<Polynomial>, Vec<Polynomial>), CliError> {
        let parse = |role: &'static str, texts: &[String]| {
            texts
                .iter()
                .enumerate()
                .map(|(index, text)| {
                    parse_poly(text, self.n, field).map_err(|source| CliError::Parse {
                        role,
                        index,
                        text: text.clone(),
                        source,
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        };
        Ok((parse("equation", &self.equations)?, parse("inequation", &self.inequations)?))
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ScalarText {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum EdgeSpec {
    Plain(usize, usize),
    Labelled(usize, usize, String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum QuiverSpec {
    /// `"instance"`: the quiver of the encoded instance.
    Named(String),
    Explicit { vertices: usize, arrows: Vec<EdgeSpec> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepSpec {
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<ScalarText>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFileSpec {
    field: Option<FieldSpec>,
    quiver: QuiverSpec,
    representations: BTreeMap<String, RepSpec>,
}

/// The named representations of one file, all over one quiver and field.
#[derive(Clone, Debug)]
pub struct RepFile {
    pub path: PathBuf,
    pub quiver: Arc<Quiver>,
    pub field: FieldSpec,
    pub reps: BTreeMap<String, Representation>,
}

impl RepFile {
    /// `field` overrides the file's field; `instance` resolves the quiver name
    /// `"instance"`.
    pub fn load(path: &Path, field: Option<FieldSpec>, instance: Option<&Arc<Quiver>>) -> Result<Self, CliError> {
        Self::from_json(&read(path)?, path, field, instance)
    }

    pub fn from_json(text: &str, path: &Path, field: Option<FieldSpec>, instance: Option<&Arc<Quiver>>) -> Result<Self, CliError> {
        let bad = |message: String| CliError::RepFormat {
            path: path.to_path_buf(),
            message,
        };
        let spec: RepFileSpec = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let field = field.or(spec.field).ok_or_else(|| bad("no field given (set `field` or pass --field)".into()))?;
        let quiver = match spec.quiver {
            QuiverSpec::Named(name) if name == "instance" => instance
                .cloned()
                .ok_or_else(|| bad("quiver `instance` is only available to commands that read an instance file".into()))?,
            QuiverSpec::Named(name) => return Err(bad(format!("unknown quiver name `{name}`"))),
            QuiverSpec::Explicit { vertices, arrows } => {
                let arrows = arrows
                    .into_iter()
                    .enumerate()
                    .map(|(i, e)| match e {
                        EdgeSpec::Plain(source, target) => Arrow {
                            source,
                            target,
                            label: format!("a{i}"),
                        },
                        EdgeSpec::Labelled(source, target, label) => Arrow { source, target, label },
                    })
                    .collect();
                Arc::new(Quiver::new(vertices, arrows)?)
            }
        };
        let mut reps = BTreeMap::new();
        for (name, r) in spec.representations {
            let dims = DimVector::new(r.dims);
            if dims.len() != quiver.vertex_count() {
                return Err(bad(format!(
                    "`{name}` has {} dimensions for {} vertices",
                    dims.len(),
                    quiver.vertex_count()
                )));
            }
            if r.maps.len() != quiver.arrows().len() {
                return Err(bad(format!("`{name}` has {} maps for {} arrows", r.maps.len(), quiver.arrows().len())));
            }
            let maps = quiver
                .arrows()
                .iter()
                .zip(r.maps)
                .map(|(a, rows)| matrix(field, dims[a.target], dims[a.source], rows))
                .collect::<Result<Vec<_>, _>>()?;
            reps.insert(name, Representation::new(quiver.clone(), field, dims, maps)?);
        }
        Ok(RepFile {
            path: path.to_path_buf(),
            quiver,
            field,
            reps,
        })
    }

    pub fn get(&self, name: &str) -> Result<&Representation, CliError> {
        self.reps.get(name).ok_or_else(|| CliError::UnknownRep {
            path: self.path.clone(),
            name: name.to_string(),
        })
    }
}

/// A `rows × cols` matrix; an empty row list stands for a matrix with no
/// rows or no columns.
fn matrix(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Vec<ScalarText>>) -> Result<Matrix, CliError> {
    if entries.is_empty() || rows == 0 || cols == 0 {
        if entries.iter().any(|r| !r.is_empty()) {
            return Err(qgrass_core::exactfield::FieldError::ShapeMismatch {
                left: (rows, cols),
                right: (entries.len(), entries[0].len()),
            }
            .into());
        }
        return Ok(Matrix::zeros(field, rows, cols));
    }
    let parsed = entries
        .into_iter()
        .map(|row| row.into_iter().map(|x| scalar(field, x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let m = Matrix::from_rows(field, cols, parsed)?;
    if m.shape() != (rows, cols) {
        return Err(qgrass_core::exactfield::FieldError::ShapeMismatch {
            left: (rows, cols),
            right: m.shape(),
        }
        .into());
    }
    Ok(m)
}

fn scalar(field: FieldSpec, x: ScalarText) -> Result<Scalar, CliError> {
    Ok(match x {
        ScalarText::Int(v) => field.from_i64(v),
        ScalarText::Text(t) => field.parse_scalar(&t)?,
    })
}

/// Parses `"0,1,1"`.
pub fn parse_dims(text: &str) -> Result<DimVector, CliError> {
    text.split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map(DimVector::new)
        .map_err(|_| CliError::BadDims(text.to_string()))
}

/// A `--pred` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredSpec {
    /// `perp:W`, the instance's `W`.
    PerpW,
    /// `perp:<file>#<name>`.
    PerpFile { path: PathBuf, name: String },
}

impl PredSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = || CliError::BadPred(text.to_string());
        let body = text.strip_prefix("perp:").ok_or_else(bad)?;
        if body == "W" {
            return Ok(PredSpec::PerpW);
        }
        let (path, name) = body.rsplit_once('#').ok_or_else(bad)?;
        if path.is_empty() || name.is_empty() {
            return Err(bad());
        }
        Ok(PredSpec::PerpFile {
            path: PathBuf::from(path),
            name: name.to_string(),
        })
    }
}
