//! Finite matrix groups, fully enumerated.

use std::collections::HashMap;

use exact_algebra::matrix::Matrix;
use exact_algebra::ring::Ring;

use crate::error::{CohomologyError, Result};

pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// Multiplication tables are only materialized below this size; larger
/// groups multiply through the element index.
const TABLE_LIMIT: usize = 2_048;

/// A finite group of invertible matrices over a finite coefficient ring,
/// closed by breadth-first multiplication from its generators.
///
/// Element 0 is always the identity.  Each non-identity element records the
/// BFS step that discovered it: `elements[i] = elements[parent] * gen`,
/// which lets representations and cocycles given on generators extend to
/// the whole group by one pass in discovery order.
pub struct FiniteGroup {
    ring: Ring,
    elements: Vec<Matrix>,
    index: HashMap<Vec<u8>, u32>,
    generators: Vec<u32>,
    /// (parent element, generator position); identity holds (0, 0).
    provenance: Vec<(u32, u32)>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Closure of a generating set, or an error if `cap` is exceeded.
    pub fn generate(gens: &[Matrix], cap: usize) -> Result<FiniteGroup> {
        if gens.is_empty() {
            return Err(CohomologyError::Shape("no generators supplied".into()));
        }
        let ring = gens[0].ring.clone();
        if !ring.is_finite() {
            return Err(CohomologyError::Shape(format!(
                "group enumeration needs a finite coefficient ring, got {}",
                ring.name()
            )));
        }
        let n = gens[0].rows;
        for (i, g) in gens.iter().enumerate() {
            if g.ring != ring || g.rows != n || g.cols != n {
                return Err(CohomologyError::Shape(format!(
                    "generator {i} has mismatched ring or shape"
                )));
            }
            if !g.is_invertible() {
                return Err(CohomologyError::BadGenerator { index: i });
            }
        }

        let identity = Matrix::identity(&ring, n);
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
        index.insert(identity.canon_bytes(), 0);
        let mut provenance = vec![(0u32, 0u32)];

        // dedup generators against the running enumeration
        let mut generators = Vec::new();
        let mut frontier = vec![0u32];
        // plain BFS: append products element * generator
        let mut cursor = 0usize;
        while cursor < frontier.len() {
            let e = frontier[cursor] as usize;
            cursor += 1;
            for (gi, g) in gens.iter().enumerate() {
                let prod = elements[e].mul(g).map_err(CohomologyError::Algebra)?;
                let key = prod.canon_bytes();
                if !index.contains_key(&key) {
                    if elements.len() >= cap {
                        return Err(CohomologyError::CapExceeded { cap });
                    }
                    let id = elements.len() as u32;
                    index.insert(key, id);
                    elements.push(prod);
                    provenance.push((e as u32, gi as u32));
                    frontier.push(id);
                }
            }
            if cursor == 1 {
                // after processing identity, pin down generator indices
                for g in gens {
                    generators.push(index[&g.canon_bytes()]);
                }
            }
        }

        let inverse = (0..elements.len())
            .map(|i| {
                let inv = elements[i].inverse().expect("group elements invert");
                index[&inv.canon_bytes()]
            })
            .collect();

        let mut group = FiniteGroup {
            ring,
            elements,
            index,
            generators,
            provenance,
            inverse,
            table: None,
        };
        if group.size() <= TABLE_LIMIT {
            let sz = group.size();
            let mut table = vec![0u32; sz * sz];
            for i in 0..sz {
                for j in 0..sz {
                    table[i * sz + j] = group.mul_by_matrix(i, j);
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.elements[0].rows
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    /// BFS provenance: `elements[i] = elements[p] * gens[s]` for `i > 0`.
    pub fn provenance(&self, i: usize) -> (usize, usize) {
        let (p, s) = self.provenance[i];
        (p as usize, s as usize)
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(&m.canon_bytes()).map(|&i| i as usize)
    }

    fn mul_by_matrix(&self, i: usize, j: usize) -> u32 {
        let prod = self.elements[i].mul(&self.elements[j]).expect("closed");
        self.index[&prod.canon_bytes()]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.size() + j] as usize,
            None => self.mul_by_matrix(i, j) as usize,
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    pub fn order_of(&self, i: usize) -> usize {
        let mut acc = i;
        let mut n = 1;
        while acc != 0 {
            acc = self.mul(acc, i);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.mul(a as usize, b as usize) == self.mul(b as usize, a as usize))
        })
    }

    /// Verify that a set of element indices is a subgroup; returns the set
    /// sorted with the identity first.
    pub fn subgroup(&self, indices: &[usize]) -> Result<Vec<usize>> {
        let mut set: Vec<usize> = indices.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.binary_search(&0).is_err() {
            return Err(CohomologyError::NotASubgroup);
        }
        for &a in &set {
            if a >= self.size() || set.binary_search(&self.inv(a)).is_err() {
                return Err(CohomologyError::NotASubgroup);
            }
            for &b in &set {
                if set.binary_search(&self.mul(a, b)).is_err() {
                    return Err(CohomologyError::NotASubgroup);
                }
            }
        }
        Ok(set)
    }

    /// Subgroup generated by the given element indices.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        seen[0] = true;
        let mut frontier = vec![0usize];
        let mut cursor = 0;
        while cursor < frontier.len() {
            let e = frontier[cursor];
            cursor += 1;
            for &g in gens {
                let p = self.mul(e, g);
                if !seen[p] {
                    seen[p] = true;
                    frontier.push(p);
                }
            }
        }
        frontier.sort_unstable();
        frontier
    }
}

/// Extend a generator assignment `gens[i] -> images[i]` into a target group
/// to a verified homomorphism on every element, or fail.
pub fn homomorphism_from_generators(
    source: &FiniteGroup,
    target: &FiniteGroup,
    images: &[usize],
) -> Result<Vec<usize>> {
    if images.len() != source.generator_indices().len() {
        return Err(CohomologyError::Shape(
            "one image per generator required".into(),
        ));
    }
    let mut phi = vec![usize::MAX; source.size()];
    phi[0] = 0;
    for i in 1..source.size() {
        let (p, s) = source.provenance(i);
        phi[i] = target.mul(phi[p], images[s]);
    }
    // full check: phi(e * s) = phi(e) * phi(s) for every element and generator
    for e in 0..source.size() {
        for (s, &g) in source.generator_indices().iter().enumerate() {
            let lhs = phi[source.mul(e, g as usize)];
            let rhs = target.mul(phi[e], images[s]);
            if lhs != rhs {
                return Err(CohomologyError::NotAHomomorphism);
            }
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_algebra::ring::Ring;

    #[test]
    fn trivial_group() {
        let f5 = Ring::fp(5);
        let g = FiniteGroup::generate(&[Matrix::identity(&f5, 2)], 10).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn unipotent_is_cyclic_of_order_p() {
        let f5 = Ring::fp(5);
        let u = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
        let g = FiniteGroup::generate(&[u.clone()], 100).unwrap();
        assert_eq!(g.size(), 5);
        let gi = g.index_of(&u).unwrap();
        assert_eq!(g.order_of(gi), 5);
        assert!(g.is_abelian());
    }

    #[test]
    fn gl2_f3_has_order_48() {
        let f3 = Ring::fp(3);
        let e = Matrix::from_i64(&f3, 2, 2, &[1, 1, 0, 1]);
        let f = Matrix::from_i64(&f3, 2, 2, &[1, 0, 1, 1]);
        let d = Matrix::from_i64(&f3, 2, 2, &[2, 0, 0, 1]);
        let g = FiniteGroup::generate(&[e, f, d], 100).unwrap();
        assert_eq!(g.size(), 48);
        assert!(!g.is_abelian());
    }

    #[test]
    fn cap_is_enforced() {
        let f5 = Ring::fp(5);
        let u = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
        assert!(matches!(
            FiniteGroup::generate(&[u], 3),
            Err(CohomologyError::CapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn inverse_table_is_correct() {
        let f5 = Ring::fp(5);
        let a = Matrix::from_i64(&f5, 2, 2, &[2, 0, 0, 1]);
        let b = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
        let g = FiniteGroup::generate(&[a, b], 1000).unwrap();
        assert_eq!(g.size(), 20);
        for i in 0..g.size() {
            assert_eq!(g.mul(i, g.inv(i)), 0);
        }
    }

    #[test]
    fn quotient_map_validates() {
        let f5 = Ring::fp(5);
        // F20 = <a, b | a^5, b^4, b a b^-1 = a^2>
        let a = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
        let b = Matrix::from_i64(&f5, 2, 2, &[2, 0, 0, 1]);
        let g = FiniteGroup::generate(&[a, b], 1000).unwrap();
        // quotient by <a>: Z/4 realized inside GL_1(F_5)
        let z4 = FiniteGroup::generate(&[Matrix::from_i64(&f5, 1, 1, &[2])], 10).unwrap();
        let phi = homomorphism_from_generators(
            &g,
            &z4,
            &[0, z4.index_of(&Matrix::from_i64(&f5, 1, 1, &[2])).unwrap()],
        )
        .unwrap();
        assert_eq!(phi.len(), 20);
        // kernel has size 5
        assert_eq!(phi.iter().filter(|&&x| x == 0).count(), 5);
        // sending both generators to the order-4 element is not a homomorphism
        let bad = homomorphism_from_generators(&g, &z4, &[1, 1]);
        assert!(matches!(bad, Err(CohomologyError::NotAHomomorphism)));
    }
}
