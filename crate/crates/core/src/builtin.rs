//! Groups and preorders shipped with the library.

use crate::error::{KostkaError, Result};
use crate::wgroup::{
    dominance_preorder_sn, generate_group, load_group_file, load_preorder_file, one_phylum, symmetric_group,
    CharacterTable, Preorder, ReflectionGroup,
};
use crate::scalars::Cyclo;

const B2: &str = include_str!("../data/B2.json");
const G2: &str = include_str!("../data/G2.json");
const C3: &str = include_str!("../data/C3.json");
const B2_SPRINGER: &str = include_str!("../data/B2.springer.json");
const G2_SPRINGER: &str = include_str!("../data/G2.springer.json");
const C3_SPRINGER: &str = include_str!("../data/C3.springer.json");

pub const GROUP_NAMES: [&str; 8] = ["trivial", "S2", "S3", "S4", "S5", "B2", "G2", "C3"];

/// Rank of a symmetric group name like `S4`.
pub fn symmetric_rank(name: &str) -> Option<usize> {
    name.strip_prefix(['S', 's']).and_then(|r| r.parse().ok())
}

/// The trivial group acting on a line.
pub fn trivial_group() -> (ReflectionGroup, CharacterTable) {
    let g = generate_group(1, Vec::new(), 1).expect("trivial group").with_name("trivial");
    let t = CharacterTable::new(vec!["triv".into()], vec!["[]".into()], vec![vec![Cyclo::from_int(1)]]);
    (g, t)
}

pub fn builtin_group(name: &str) -> Result<(ReflectionGroup, CharacterTable)> {
    match name {
        "trivial" | "S1" => Ok(trivial_group()),
        "B2" => load_group_file(B2),
        "G2" => load_group_file(G2),
        "C3" => load_group_file(C3),
        _ => match symmetric_rank(name) {
            Some(n) => {
                let g = symmetric_group(n)?;
                let t = crate::wgroup::symmetric_table_for_group(&g, n)?;
                Ok((g, t))
            }
            None => Err(KostkaError::InvalidInput(format!(
                "unknown group {name:?}; built-in groups are {}",
                GROUP_NAMES.join(", ")
            ))),
        },
    }
}

pub const PREORDER_NAMES: [&str; 3] = ["springer", "dominance", "one-phylum"];

/// `springer` is the shipped geometric preorder of each built-in group;
/// for symmetric groups it coincides with `dominance`.
pub fn builtin_preorder(name: &str, g: &ReflectionGroup, t: &CharacterTable) -> Result<Preorder> {
    let group = g.name();
    match name {
        "one-phylum" => Ok(one_phylum(t)),
        "dominance" => match symmetric_rank(group) {
            Some(n) if group != "S1" => dominance_preorder_sn(t, n),
            _ => Err(KostkaError::InvalidInput(format!("dominance order is only defined for symmetric groups, not {group}"))),
        },
        "springer" | "default" => match group {
            "trivial" => Ok(one_phylum(t)),
            "B2" => load_preorder_file(g, t, B2_SPRINGER),
            "G2" => load_preorder_file(g, t, G2_SPRINGER),
            "C3" => load_preorder_file(g, t, C3_SPRINGER),
            _ => builtin_preorder("dominance", g, t),
        },
        _ => Err(KostkaError::InvalidInput(format!(
            "unknown preorder {name:?}; built-in preorders are {}",
            PREORDER_NAMES.join(", ")
        ))),
    }
}
