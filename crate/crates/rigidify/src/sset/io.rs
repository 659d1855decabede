//! JSON wire formats for simplicial sets and finite categories.
//!
//! A complex document lists nondegenerate simplices by dimension; face
//! references carry a degeneracy word and the index of the base simplex,
//! whose dimension is implied. A category document lists objects,
//! non-identity morphisms, and the composition table; identities are
//! implicit and named `id_{object}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delta::DegeneracyWord;

use super::category::{CatError, FinCategory};
use super::fin_sset::{FinSSet, NondegId, SimplexRef, SsetError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("complex: {0}")]
    Sset(#[from] SsetError),
    #[error("category: {0}")]
    Category(#[from] CatError),
    #[error("face of a {dim}-simplex has a word longer than {}", dim - 1)]
    WordTooLong { dim: usize },
    #[error("degeneracy word {0:?} is not strictly decreasing")]
    BadWord(Vec<usize>),
    #[error("unknown morphism label `{0}` in composition table")]
    UnknownMorphism(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SSetDoc {
    pub dim_cap: usize,
    /// `levels[d]` lists the nondegenerate `d`-simplices in order.
    pub levels: Vec<Vec<SimplexDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplexDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<FaceDoc>,
}

/// A face reference: the base simplex sits `1 + word.len()` dimensions
/// below the simplex carrying the reference.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub word: Vec<usize>,
    pub idx: usize,
}

pub fn sset_to_doc(x: &FinSSet) -> SSetDoc {
    let levels = (0..=x.dim_cap())
        .map(|dim| {
            x.nondeg_ids(dim)
                .map(|id| {
                    let r = SimplexRef::nondeg(id);
                    let faces = if dim == 0 {
                        vec![]
                    } else {
                        (0..=dim)
                            .map(|i| {
                                let f = x.face(&r, i);
                                FaceDoc {
                                    word: f.word.indices().to_vec(),
                                    idx: f.id.idx,
                                }
                            })
                            .collect()
                    };
                    SimplexDoc {
                        label: x.label_of(id).to_string(),
                        faces,
                    }
                })
                .collect()
        })
        .collect();
    SSetDoc {
        dim_cap: x.dim_cap(),
        levels,
    }
}

pub fn sset_from_doc(doc: &SSetDoc) -> Result<FinSSet, IoError> {
    let mut x = FinSSet::new(doc.dim_cap);
    for (dim, level) in doc.levels.iter().enumerate() {
        for s in level {
            let faces = s
                .faces
                .iter()
                .map(|f| {
                    if dim == 0 || f.word.len() > dim - 1 {
                        return Err(IoError::WordTooLong { dim });
                    }
                    let word = DegeneracyWord::new(f.word.clone())
                        .map_err(|_| IoError::BadWord(f.word.clone()))?;
                    Ok(SimplexRef {
                        id: NondegId {
                            dim: dim - 1 - word.len(),
                            idx: f.idx,
                        },
                        word,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            x.add_simplex(dim, s.label.clone(), faces)?;
        }
    }
    Ok(x)
}

pub fn sset_to_json(x: &FinSSet) -> String {
    serde_json::to_string_pretty(&sset_to_doc(x)).expect("serialize complex")
}

pub fn sset_from_json(s: &str) -> Result<FinSSet, IoError> {
    sset_from_doc(&serde_json::from_str(s)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    /// Entries `[g, f, gf]` by label: `g` after `f` is `gf`.
    #[serde(default)]
    pub compositions: Vec<[String; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub label: String,
    pub src: String,
    pub tgt: String,
}

pub fn category_to_doc(cat: &FinCategory) -> CategoryDoc {
    let morphisms = cat
        .morphism_ids()
        .filter(|&m| !cat.is_identity(m))
        .map(|m| MorphismDoc {
            label: cat.mor_label(m).to_string(),
            src: cat.object_label(cat.src(m)).to_string(),
            tgt: cat.object_label(cat.tgt(m)).to_string(),
        })
        .collect();
    let mut compositions = Vec::new();
    for g in cat.morphism_ids() {
        if cat.is_identity(g) {
            continue;
        }
        for f in cat.morphism_ids() {
            if cat.is_identity(f) || cat.tgt(f) != cat.src(g) {
                continue;
            }
            if let Some(gf) = cat.compose(g, f) {
                compositions.push([
                    cat.mor_label(g).to_string(),
                    cat.mor_label(f).to_string(),
                    cat.mor_label(gf).to_string(),
                ]);
            }
        }
    }
    CategoryDoc {
        objects: cat.object_labels().map(|s| s.to_string()).collect(),
        morphisms,
        compositions,
    }
}

pub fn category_from_doc(doc: &CategoryDoc) -> Result<FinCategory, IoError> {
    let mut cat = FinCategory::new(&doc.objects);
    for m in &doc.morphisms {
        cat.add_morphism(m.label.clone(), &m.src, &m.tgt)?;
    }
    for [g, f, gf] in &doc.compositions {
        let find = |label: &String| {
            cat.mor_by_label(label)
                .ok_or_else(|| IoError::UnknownMorphism(label.clone()))
        };
        let (g, f, gf) = (find(g)?, find(f)?, find(gf)?);
        cat.set_composite(g, f, gf)?;
    }
    Ok(cat)
}

pub fn category_to_json(cat: &FinCategory) -> String {
    serde_json::to_string_pretty(&category_to_doc(cat)).expect("serialize category")
}

pub fn category_from_json(s: &str) -> Result<FinCategory, IoError> {
    category_from_doc(&serde_json::from_str(s)?)
}
