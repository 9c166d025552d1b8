//! JSON problem descriptions.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::linear_class::{check_linear_class, LinearClass, Verdict};
use crate::matroid::{self, Matroid};
use crate::subset::Subset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Circuits {
        n: usize,
        circuits: Vec<Vec<usize>>,
    },
    Matrix {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<FieldSpec>,
        columns: Vec<Vec<Scalar>>,
    },
    Graph {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// A matrix entry: an integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn parse<F: Field>(&self, field: &F) -> Result<F::Elem> {
        match self {
            Scalar::Int(v) => Ok(field.from_i64(*v)),
            Scalar::Text(t) => field.parse(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Keyword(String),
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInput {
    pub matroid: MatroidSpec,
    #[serde(default = "default_class")]
    pub linear_class: ClassSpec,
    #[serde(default)]
    pub field: FieldSpec,
}

fn default_class() -> ClassSpec {
    ClassSpec::Keyword("all".into())
}

/// A parsed input whose class has not yet been checked for linearity.
#[derive(Clone, Debug)]
pub struct Problem {
    pub matroid: Matroid,
    pub family: Vec<Subset>,
    pub field: FieldSpec,
}

impl Problem {
    /// The linear class, or `HypothesisViolated` with the witness.
    pub fn class(&self) -> Result<LinearClass> {
        LinearClass::new(&self.matroid, &self.family)
    }

    pub fn verdict(&self) -> Result<Verdict> {
        check_linear_class(&self.matroid, &self.family)
    }
}

impl ProblemInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("input JSON: {e}")))
    }

    /// SHA-256 of the canonical (key-sorted, compact) JSON encoding.
    pub fn digest(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        let canonical = serde_json::to_string(&value).expect("serializable");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn build_matroid(&self) -> Result<Matroid> {
        match &self.matroid {
            MatroidSpec::Circuits { n, circuits } => {
                if *n > matroid::MAX_GROUND {
                    return Err(Error::TooLarge(format!(
                        "n = {n} exceeds the limit of {}",
                        matroid::MAX_GROUND
                    )));
                }
                let sets = circuits
                    .iter()
                    .enumerate()
                    .map(|(i, c)| to_subset(c, *n, &format!("matroid.circuits[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Matroid::from_circuits(*n, sets)
            }
            MatroidSpec::Matrix { field, columns } => {
                match field.unwrap_or(self.field) {
                    FieldSpec::Rationals => matrix_over(&Rationals, columns),
                    FieldSpec::PrimeField(p) => matrix_over(&PrimeField::new(p)?, columns),
                }
            }
            MatroidSpec::Graph { vertices, edges } => {
                if let Some(i) = edges
                    .iter()
                    .position(|&(a, b)| a == 0 || b == 0 || a > *vertices || b > *vertices)
                {
                    return Err(Error::Input(format!(
                        "matroid.edges[{i}]: vertex out of range 1..={vertices}"
                    )));
                }
                matroid::from_graph(*vertices, edges)
            }
        }
    }

    /// Build the matroid and read the class family against it.
    pub fn resolve(&self) -> Result<Problem> {
        let m = self.build_matroid()?;
        let family = match &self.linear_class {
            ClassSpec::Keyword(k) => match k.as_str() {
                "all" => m.circuits().to_vec(),
                "empty" => Vec::new(),
                other => {
                    return Err(Error::Input(format!(
                        "linear_class: expected \"all\", \"empty\" or a list of circuits, got {other:?}"
                    )))
                }
            },
            ClassSpec::Explicit(list) => {
                let mut out = list
                    .iter()
                    .enumerate()
                    .map(|(i, c)| to_subset(c, m.n(), &format!("linear_class[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                out.sort();
                out.dedup();
                out
            }
        };
        Ok(Problem {
            matroid: m,
            family,
            field: self.field,
        })
    }
}

fn matrix_over<F: Field>(field: &F, columns: &[Vec<Scalar>]) -> Result<Matroid> {
    let parsed = columns
        .iter()
        .enumerate()
        .map(|(i, col)| {
            col.iter()
                .map(|v| v.parse(field))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Input(format!("matroid.columns[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    matroid::from_matrix(field, &parsed)
}

fn to_subset(elements: &[usize], n: usize, at: &str) -> Result<Subset> {
    Subset::try_from_elements(elements.iter().copied(), n)
        .map_err(|x| Error::Input(format!("{at}: element {x} outside 1..={n}")))
}
