//! JSON group and preorder documents (format 1).

use serde::{Deserialize, Serialize};

use super::table::{validate_character_table, CharacterTable};
use super::{generate_group, load_preorder, value_conductor, Preorder, ReflectionGroup, DEFAULT_BOUND};
use crate::error::{KostkaError, Result};
use crate::linalg::Mat;
use crate::scalars::Cyclo;

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct CharacterDoc {
    pub name: String,
    pub values: Vec<Cyclo>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub format: u32,
    pub name: String,
    pub conductor: i64,
    pub dim_h: usize,
    /// Each generator is a list of rows.
    pub generators: Vec<Vec<Vec<Cyclo>>>,
    pub characters: Vec<CharacterDoc>,
    /// One word in the generator indices per class, matching the order of
    /// character values.
    pub class_reps: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct PreorderDoc {
    pub format: u32,
    pub phyla: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

fn schema(msg: impl Into<String>) -> KostkaError {
    KostkaError::Schema(msg.into())
}

fn embed(v: &Cyclo, n: u32, what: &str) -> Result<Cyclo> {
    v.embed(n).ok_or_else(|| schema(format!("{what}: value {v} does not lie in the field of conductor {n}")))
}

/// Parse, generate and validate a group document. The columns of the
/// returned table follow the class order of the returned group.
pub fn load_group_file(data: &str) -> Result<(ReflectionGroup, CharacterTable)> {
    let doc: GroupDoc = serde_json::from_str(data).map_err(|e| schema(e.to_string()))?;
    if doc.format != 1 {
        return Err(schema(format!("unsupported format {}", doc.format)));
    }
    if doc.conductor < 1 {
        return Err(KostkaError::InvalidConductor(doc.conductor));
    }
    let n = u32::try_from(doc.conductor).map_err(|_| KostkaError::InvalidConductor(doc.conductor))?;
    let k = doc.class_reps.len();
    if doc.class_sizes.len() != k {
        return Err(schema(format!("{} class sizes for {k} class representatives", doc.class_sizes.len())));
    }
    for c in &doc.characters {
        if c.values.len() != k {
            return Err(schema(format!("character {} has {} values for {k} classes", c.name, c.values.len())));
        }
    }
    let gens = doc
        .generators
        .iter()
        .enumerate()
        .map(|(i, rows)| {
            if rows.len() != doc.dim_h || rows.iter().any(|r| r.len() != doc.dim_h) {
                return Err(KostkaError::InvalidGenerator(format!("generator {i} is not {0}x{0}", doc.dim_h)));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|v| embed(v, n, &format!("generator {i}"))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Mat::from_rows(rows))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut g = generate_group(doc.dim_h, gens, DEFAULT_BOUND)?.with_name(doc.name.clone());
    g.raise_conductor(n);

    // Locate each listed class and build the column permutation.
    if k != g.num_classes() {
        return Err(KostkaError::Validation(format!(
            "file lists {k} classes but the group has {}",
            g.num_classes()
        )));
    }
    let mut col_of_class = vec![usize::MAX; k];
    for (j, word) in doc.class_reps.iter().enumerate() {
        let w = g.eval_word(word).map_err(|e| schema(e.to_string()))?;
        let c = g.class_of(w);
        if col_of_class[c] != usize::MAX {
            return Err(KostkaError::Validation(format!("class representatives {} and {j} are conjugate", col_of_class[c])));
        }
        if g.classes()[c].size != doc.class_sizes[j] {
            return Err(KostkaError::Validation(format!(
                "class {j} has size {} but the file says {}",
                g.classes()[c].size,
                doc.class_sizes[j]
            )));
        }
        col_of_class[c] = j;
    }
    if col_of_class[g.class_of(0)] != 0 {
        return Err(schema("the first class representative must be the identity"));
    }
    let mut values = Vec::with_capacity(doc.characters.len());
    for c in &doc.characters {
        let row = c.values.iter().map(|v| embed(v, n, &format!("character {}", c.name))).collect::<Result<Vec<_>>>()?;
        for v in &row {
            g.raise_conductor(value_conductor(v));
        }
        values.push(row);
    }
    let labels: Vec<String> = doc.class_reps.iter().map(|w| format!("{w:?}")).collect();
    let names = doc.characters.iter().map(|c| c.name.clone()).collect();
    let table = CharacterTable::new(names, labels, values).permute_columns(&col_of_class);
    validate_character_table(&g, &table).into_result()?;
    Ok((g, table))
}

/// Parse a preorder document against a loaded table.
pub fn load_preorder_file(g: &ReflectionGroup, t: &CharacterTable, data: &str) -> Result<Preorder> {
    let doc: PreorderDoc = serde_json::from_str(data).map_err(|e| schema(e.to_string()))?;
    if doc.format != 1 {
        return Err(schema(format!("unsupported format {}", doc.format)));
    }
    load_preorder(g, t, &doc.phyla)
}
