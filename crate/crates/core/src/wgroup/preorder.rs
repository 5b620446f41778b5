use super::symmetric::{parse_partition, partitions};
use super::{conjugate_character, CharacterTable, ReflectionGroup};
use crate::error::{KostkaError, Result};

/// A total preorder on the irreducibles: phyla listed from minimal to
/// maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preorder {
    phyla: Vec<Vec<usize>>,
    phylum_of: Vec<usize>,
}

impl Preorder {
    /// Phyla must partition `0..n`.
    pub fn new(n: usize, phyla: Vec<Vec<usize>>) -> Result<Self> {
        let mut phylum_of = vec![usize::MAX; n];
        for (p, members) in phyla.iter().enumerate() {
            if members.is_empty() {
                return Err(KostkaError::InvalidPartition(format!("phylum {p} is empty")));
            }
            for &chi in members {
                if chi >= n {
                    return Err(KostkaError::InvalidPartition(format!("character index {chi} out of range")));
                }
                if phylum_of[chi] != usize::MAX {
                    return Err(KostkaError::InvalidPartition(format!("character {chi} appears twice")));
                }
                phylum_of[chi] = p;
            }
        }
        if let Some(missing) = phylum_of.iter().position(|&p| p == usize::MAX) {
            return Err(KostkaError::InvalidPartition(format!("character {missing} lies in no phylum")));
        }
        Ok(Preorder { phyla, phylum_of })
    }

    pub fn phyla(&self) -> &[Vec<usize>] {
        &self.phyla
    }

    pub fn num_phyla(&self) -> usize {
        self.phyla.len()
    }

    pub fn phylum_of(&self, chi: usize) -> usize {
        self.phylum_of[chi]
    }

    /// `a ≾ b`
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.phylum_of[a] <= self.phylum_of[b]
    }

    /// `a ≺ b`
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.phylum_of[a] < self.phylum_of[b]
    }

    /// `a ∼ b`
    pub fn equiv(&self, a: usize, b: usize) -> bool {
        self.phylum_of[a] == self.phylum_of[b]
    }

    /// Character indices phylum by phylum, table order within a phylum.
    pub fn ordering(&self) -> Vec<usize> {
        self.phyla
            .iter()
            .flat_map(|p| {
                let mut p = p.clone();
                p.sort_unstable();
                p
            })
            .collect()
    }

    pub fn labels(&self, t: &CharacterTable) -> Vec<Vec<String>> {
        self.phyla.iter().map(|p| p.iter().map(|&i| t.name(i).to_string()).collect()).collect()
    }
}

/// Preorder from phyla given by character labels, ascending.
pub fn load_preorder(g: &ReflectionGroup, t: &CharacterTable, phyla: &[Vec<String>]) -> Result<Preorder> {
    let idx = phyla
        .iter()
        .map(|p| {
            p.iter()
                .map(|l| t.resolve(g, l).map_err(|_| KostkaError::InvalidPartition(format!("unknown character label {l:?}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Preorder::new(t.len(), idx)
}

/// Every character in one phylum.
pub fn one_phylum(t: &CharacterTable) -> Preorder {
    Preorder::new(t.len(), vec![(0..t.len()).collect()]).expect("single phylum covers all")
}

/// Ok iff every phylum is closed under complex conjugation.
pub fn validate_malle(p: &Preorder, t: &CharacterTable) -> Result<()> {
    for chi in 0..t.len() {
        let bar = conjugate_character(t, chi)?;
        if !p.equiv(chi, bar) {
            return Err(KostkaError::MalleViolation(format!(
                "{} and its conjugate {} lie in different phyla",
                t.name(chi),
                t.name(bar)
            )));
        }
    }
    Ok(())
}

/// `λ ⊴ μ` in dominance order.
fn dominated(l: &[usize], m: &[usize]) -> bool {
    let (mut a, mut b) = (0, 0);
    for i in 0..l.len().max(m.len()) {
        a += l.get(i).copied().unwrap_or(0);
        b += m.get(i).copied().unwrap_or(0);
        if a > b {
            return false;
        }
    }
    true
}

/// Dominance order on the partition-labelled rows of an `S_n` table, with
/// `(1^n)` minimal and `(n)` maximal. Only available while dominance is a
/// total order (`n ≤ 5`); larger ranks need an explicit preorder file.
pub fn dominance_preorder_sn(t: &CharacterTable, n: usize) -> Result<Preorder> {
    let mut parts = partitions(n);
    for a in &parts {
        for b in &parts {
            if !dominated(a, b) && !dominated(b, a) {
                return Err(KostkaError::UnsupportedRank(format!(
                    "dominance on partitions of {n} is not total ({a:?} and {b:?} are incomparable); supply a preorder file"
                )));
            }
        }
    }
    parts.sort_by(|a, b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if dominated(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let phyla = parts
        .iter()
        .map(|p| {
            t.names()
                .iter()
                .position(|name| parse_partition(name).as_ref() == Some(p))
                .map(|i| vec![i])
                .ok_or_else(|| KostkaError::InvalidPartition(format!("table has no row for partition {p:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Preorder::new(t.len(), phyla)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgroup::{sn_character_table, symmetric::table_for_group, symmetric_group};

    #[test]
    fn dominance_small() {
        let t = sn_character_table(3).unwrap();
        let p = dominance_preorder_sn(&t, 3).unwrap();
        assert_eq!(p.labels(&t), vec![vec!["(1,1,1)"], vec!["(2,1)"], vec!["(3)"]]);
        let t1 = sn_character_table(1).unwrap();
        assert_eq!(dominance_preorder_sn(&t1, 1).unwrap().num_phyla(), 1);
        let t6 = sn_character_table(6).unwrap();
        assert!(dominance_preorder_sn(&t6, 6).is_err());
        let t5 = sn_character_table(5).unwrap();
        assert_eq!(dominance_preorder_sn(&t5, 5).unwrap().num_phyla(), 7);
    }

    #[test]
    fn load_by_labels() {
        let g = symmetric_group(2).unwrap();
        let t = table_for_group(&g, 2).unwrap();
        let p = load_preorder(&g, &t, &[vec!["sgn".into()], vec!["triv".into()]]).unwrap();
        let (s, tr) = (t.resolve(&g, "sgn").unwrap(), t.resolve(&g, "triv").unwrap());
        assert!(p.lt(s, tr));
        assert!(matches!(load_preorder(&g, &t, &[vec!["sgn".into()]]), Err(KostkaError::InvalidPartition(_))));
        assert!(matches!(
            load_preorder(&g, &t, &[vec!["sgn".into()], vec!["sgn".into(), "triv".into()]]),
            Err(KostkaError::InvalidPartition(_))
        ));
        assert_eq!(one_phylum(&t).num_phyla(), 1);
        assert!(validate_malle(&p, &t).is_ok());
    }
}
