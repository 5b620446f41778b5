//! Finite complex reflection groups given by matrices on `h`, their
//! conjugacy classes, character tables and preorders on the irreducibles.

mod file;
mod preorder;
mod symmetric;
mod table;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{KostkaError, Result};
use crate::linalg::{inverse, Mat};
use crate::scalars::{Cyclo, Poly, Ring};

pub use file::{load_group_file, load_preorder_file, GroupDoc, PreorderDoc};
pub use preorder::{dominance_preorder_sn, load_preorder, one_phylum, validate_malle, Preorder};
pub use symmetric::{
    parse_partition, partition_label, partitions, sn_character_table, sn_character_value, symmetric_group,
    table_for_group as symmetric_table_for_group, Partition,
};
pub use table::{conjugate_character, inner_product, validate_character_table, CharacterTable, Check, ValidationReport};

/// Default cap on the number of elements produced by [`generate_group`].
pub const DEFAULT_BOUND: usize = 5000;

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: usize,
    pub size: usize,
    pub members: Vec<usize>,
}

/// A finite matrix group on `h`. Element 0 is the identity; every element
/// is stored as its matrix together with a word in the generators.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    name: String,
    dim_h: usize,
    conductor: u32,
    generators: Vec<Mat<Cyclo>>,
    gen_index: Vec<usize>,
    elements: Vec<Mat<Cyclo>>,
    words: Vec<Vec<usize>>,
    mult: Vec<u32>,
    inverse: Vec<usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

fn lcm(a: u32, b: u32) -> u32 {
    a / num_integer::gcd(a, b) * b
}

/// Conductor needed to hold a value; rational values need none.
pub(crate) fn value_conductor(c: &Cyclo) -> u32 {
    if c.is_rational() {
        1
    } else {
        c.conductor()
    }
}

/// Breadth-first closure of `generators` acting on a space of dimension
/// `dim_h`. Fails once more than `bound` elements appear.
pub fn generate_group(dim_h: usize, generators: Vec<Mat<Cyclo>>, bound: usize) -> Result<ReflectionGroup> {
    let mut conductor = 1;
    for (i, g) in generators.iter().enumerate() {
        if g.rows() != dim_h || g.cols() != dim_h {
            return Err(KostkaError::InvalidGenerator(format!(
                "generator {i} is {}x{}, expected {dim_h}x{dim_h}",
                g.rows(),
                g.cols()
            )));
        }
        if dim_h > 0 && inverse(g).is_none() {
            return Err(KostkaError::InvalidGenerator(format!("generator {i} is not invertible")));
        }
        for r in 0..dim_h {
            for c in 0..dim_h {
                conductor = lcm(conductor, value_conductor(&g[(r, c)]));
            }
        }
    }

    let id = Mat::<Cyclo>::identity(dim_h);
    let mut index: HashMap<Mat<Cyclo>, usize> = HashMap::new();
    index.insert(id.clone(), 0);
    let mut elements = vec![id];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in generators.iter().enumerate() {
            let y = elements[head].mul(g);
            if index.contains_key(&y) {
                continue;
            }
            if elements.len() >= bound {
                return Err(KostkaError::GroupTooLarge(bound));
            }
            let mut w = words[head].clone();
            w.push(gi);
            index.insert(y.clone(), elements.len());
            elements.push(y);
            words.push(w);
        }
        head += 1;
    }

    let n = elements.len();
    let mult: Vec<u32> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let elements = &elements;
            let index = &index;
            (0..n).map(move |j| index[&elements[i].mul(&elements[j])] as u32)
        })
        .collect();
    let mut inv = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            if mult[i * n + j] == 0 {
                inv[i] = j;
                break;
            }
        }
    }
    let gen_index: Vec<usize> = generators.iter().map(|g| index[g]).collect();

    // Conjugacy classes as orbits under conjugation by generators.
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![start];
        class_of[start] = c;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in &gen_index {
                let y = mult[mult[g * n + x] as usize * n + inv[g]] as usize;
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        classes.push(ConjClass { rep: start, size: members.len(), members });
    }

    Ok(ReflectionGroup {
        name: String::new(),
        dim_h,
        conductor,
        generators,
        gen_index,
        elements,
        words,
        mult,
        inverse: inv,
        classes,
        class_of,
    })
}

impl ReflectionGroup {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn raise_conductor(&mut self, n: u32) {
        self.conductor = lcm(self.conductor, n);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn generators(&self) -> &[Mat<Cyclo>] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_elements(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn elements(&self) -> &[Mat<Cyclo>] {
        &self.elements
    }

    pub fn matrix(&self, w: usize) -> &Mat<Cyclo> {
        &self.elements[w]
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, w: usize) -> usize {
        self.class_of[w]
    }

    /// Element reached by a word in the generators.
    pub fn eval_word(&self, word: &[usize]) -> Result<usize> {
        let mut x = 0;
        for &g in word {
            let gi = *self
                .gen_index
                .get(g)
                .ok_or_else(|| KostkaError::InvalidInput(format!("word letter {g} is not a generator index")))?;
            x = self.mul(x, gi);
        }
        Ok(x)
    }

    /// Trace on `h`, per class.
    pub fn reflection_character(&self) -> Vec<Cyclo> {
        self.classes.iter().map(|c| self.elements[c.rep].trace()).collect()
    }

    /// Determinant on `h`, per class.
    pub fn det_character(&self) -> Vec<Cyclo> {
        self.classes
            .iter()
            .map(|c| {
                let p = char_poly_h(self, c.rep);
                let top = p.coeff(self.dim_h);
                if self.dim_h.is_multiple_of(2) {
                    top
                } else {
                    top.rneg()
                }
            })
            .collect()
    }

    pub fn element_order(&self, w: usize) -> usize {
        let mut x = w;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, w);
            k += 1;
        }
        k
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> usize {
        self.classes.iter().fold(1, |acc, c| num_integer::lcm(acc, self.element_order(c.rep)))
    }

    /// Whether the generators are reflections (fix a hyperplane pointwise).
    pub fn generated_by_reflections(&self) -> bool {
        self.generators.iter().all(|g| {
            let d = g.sub(&Mat::identity(self.dim_h));
            crate::linalg::rank(&d) == 1
        })
    }
}

/// `det(1 - q w)` for the action of `w` on `h`, via Faddeev–LeVerrier.
pub fn char_poly_h(g: &ReflectionGroup, w: usize) -> Poly<Cyclo> {
    let m = g.matrix(w);
    let n = m.rows();
    // c_n = 1, and det(tI - M) = Σ c_k t^k; det(1 - qM) reverses it.
    let mut c = vec![Cyclo::zero(); n + 1];
    c[n] = Cyclo::one();
    let mut mk = Mat::<Cyclo>::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)] = next[(i, i)].radd(&c[n - k + 1]);
        }
        mk = next;
        let tr = m.mul(&mk).trace();
        c[n - k] = tr.rneg().rmul(&Cyclo::from_q(crate::scalars::Q::new(1, k as i64)));
    }
    Poly::new(c.into_iter().rev().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Q;

    pub(crate) fn cm(rows: &[&[i64]]) -> Mat<Cyclo> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Cyclo::from_int(x)).collect()).collect())
    }

    #[test]
    fn small_groups() {
        let s2 = generate_group(1, vec![cm(&[&[-1]])], 10).unwrap();
        assert_eq!((s2.order(), s2.num_classes()), (2, 2));
        let triv = generate_group(1, vec![], 10).unwrap();
        assert_eq!(triv.order(), 1);
        let s3 = generate_group(2, vec![cm(&[&[-1, 1], &[0, 1]]), cm(&[&[1, 0], &[1, -1]])], 10).unwrap();
        assert_eq!(s3.order(), 6);
        let mut sizes: Vec<usize> = s3.classes().iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(s3.generated_by_reflections());
    }

    #[test]
    fn generation_errors() {
        assert!(matches!(
            generate_group(2, vec![cm(&[&[1, 1], &[0, 1]])], 50),
            Err(KostkaError::GroupTooLarge(50))
        ));
        assert!(matches!(generate_group(2, vec![cm(&[&[1, 1], &[1, 1]])], 50), Err(KostkaError::InvalidGenerator(_))));
        assert!(matches!(generate_group(2, vec![cm(&[&[1]])], 50), Err(KostkaError::InvalidGenerator(_))));
    }

    #[test]
    fn group_axioms() {
        let g = symmetric_group(4).unwrap();
        let n = g.order();
        assert_eq!(n, 24);
        for a in 0..n {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                assert_eq!(g.matrix(g.mul(a, b)), &g.matrix(a).mul(g.matrix(b)));
            }
        }
        assert_eq!(g.classes().iter().map(|c| c.size).sum::<usize>(), n);
        assert!(g.classes().iter().all(|c| n.is_multiple_of(c.size)));
    }

    #[test]
    fn char_poly_examples() {
        let s3 = generate_group(2, vec![cm(&[&[-1, 1], &[0, 1]]), cm(&[&[1, 0], &[1, -1]])], 10).unwrap();
        let one_minus_q = Poly::new(vec![Cyclo::one(), Cyclo::from_int(-1)]);
        assert_eq!(char_poly_h(&s3, 0), one_minus_q.mul(&one_minus_q));
        let s = s3.generator_elements()[0];
        let one_plus_q = Poly::new(vec![Cyclo::one(), Cyclo::one()]);
        assert_eq!(char_poly_h(&s3, s), one_minus_q.mul(&one_plus_q));
        let z = Cyclo::zeta(3, 1);
        let c3 = generate_group(1, vec![Mat::from_rows(vec![vec![z.clone()]])], 10).unwrap();
        assert_eq!(c3.order(), 3);
        assert_eq!(c3.conductor(), 3);
        let g = c3.generator_elements()[0];
        assert_eq!(char_poly_h(&c3, g), Poly::new(vec![Cyclo::one(), z.rneg()]));
        assert_eq!(c3.det_character().iter().filter(|d| d.is_rational()).count(), 1);
        let _ = Q::ONE;
    }
}
