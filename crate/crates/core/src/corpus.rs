//! Small matroids shipped with the crate, each with every linear class.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::input::{ClassSpec, MatroidSpec, ProblemInput};
use crate::linear_class::LinearClass;
use crate::matroid::Matroid;
use crate::subset::Subset;

const FILES: [(&str, &str); 6] = [
    ("u23", include_str!("../corpus/u23.json")),
    ("u24", include_str!("../corpus/u24.json")),
    ("u35", include_str!("../corpus/u35.json")),
    ("u12_u12", include_str!("../corpus/u12_u12.json")),
    ("k4", include_str!("../corpus/k4.json")),
    ("two_triangles", include_str!("../corpus/two_triangles.json")),
];

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    pub matroid: MatroidSpec,
    #[serde(default)]
    pub field: FieldSpec,
    pub linear_classes: Vec<Vec<Vec<usize>>>,
}

impl CorpusEntry {
    pub fn build_matroid(&self) -> Result<Matroid> {
        self.problem(ClassSpec::Keyword("empty".into())).build_matroid()
    }

    /// The entry as a problem with the given class.
    pub fn problem(&self, class: ClassSpec) -> ProblemInput {
        ProblemInput {
            matroid: self.matroid.clone(),
            linear_class: class,
            field: self.field,
        }
    }

    /// Problems for every shipped class, in file order.
    pub fn problems(&self) -> Vec<ProblemInput> {
        self.linear_classes
            .iter()
            .map(|c| self.problem(ClassSpec::Explicit(c.clone())))
            .collect()
    }

    pub fn classes(&self, m: &Matroid) -> Result<Vec<LinearClass>> {
        self.linear_classes
            .iter()
            .map(|family| {
                let sets: Vec<Subset> = family.iter().map(|c| c.iter().copied().collect()).collect();
                LinearClass::new(m, &sets)
            })
            .collect()
    }
}

/// Every bundled entry, in a fixed order.
pub fn bundled() -> Vec<CorpusEntry> {
    FILES
        .iter()
        .map(|(name, text)| {
            serde_json::from_str(text).unwrap_or_else(|e| panic!("bundled corpus file {name}: {e}"))
        })
        .collect()
}

pub fn by_name(name: &str) -> Result<CorpusEntry> {
    bundled()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Input(format!("no bundled matroid named {name:?}")))
}
