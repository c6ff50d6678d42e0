//! Group modules over finite fields: explicit action matrices per element.

use exact_algebra::matrix::Matrix;
use exact_algebra::ring::{Elem, Ring};

use crate::error::{CohomologyError, Result};
use crate::group::FiniteGroup;

/// A module for a [`FiniteGroup`] over a finite field: one invertible
/// matrix per group element, stored in element order.
pub struct GModule {
    ring: Ring,
    dim: usize,
    action: Vec<Matrix>,
}

impl GModule {
    /// Build from explicit per-element matrices; the homomorphism property
    /// is checked on every (element, generator) pair, which determines it
    /// everywhere by the BFS provenance of the group.
    pub fn new(group: &FiniteGroup, action: Vec<Matrix>) -> Result<GModule> {
        if action.len() != group.size() {
            return Err(CohomologyError::Shape(format!(
                "need {} action matrices, got {}",
                group.size(),
                action.len()
            )));
        }
        let ring = action[0].ring.clone();
        if !ring.is_field() || !ring.is_finite() {
            return Err(CohomologyError::Shape(format!(
                "module coefficients must be a finite field, got {}",
                ring.name()
            )));
        }
        let dim = action[0].rows;
        for m in &action {
            if m.ring != ring || m.rows != dim || m.cols != dim {
                return Err(CohomologyError::Shape("ragged action matrices".into()));
            }
        }
        if !action[0].is_identity() {
            return Err(CohomologyError::NotAHomomorphism);
        }
        let module = GModule { ring, dim, action };
        for e in 0..group.size() {
            for &s in group.generator_indices() {
                let prod = group.mul(e, s as usize);
                let lhs = &module.action[prod];
                let rhs = module.action[e]
                    .mul(&module.action[s as usize])
                    .map_err(CohomologyError::Algebra)?;
                if !lhs.eq_to(&rhs) {
                    return Err(CohomologyError::NotAHomomorphism);
                }
            }
        }
        Ok(module)
    }

    /// Extend matrices given on the group's generators along BFS provenance.
    /// The homomorphism check in [`GModule::new`] still runs in full.
    pub fn from_generator_action(group: &FiniteGroup, gen_images: &[Matrix]) -> Result<GModule> {
        if gen_images.len() != group.generator_indices().len() {
            return Err(CohomologyError::Shape(
                "one action matrix per generator required".into(),
            ));
        }
        let ring = gen_images[0].ring.clone();
        let dim = gen_images[0].rows;
        let mut action = vec![Matrix::identity(&ring, dim)];
        for i in 1..group.size() {
            let (p, s) = group.provenance(i);
            let m = action[p]
                .mul(&gen_images[s])
                .map_err(CohomologyError::Algebra)?;
            action.push(m);
        }
        GModule::new(group, action)
    }

    pub fn trivial(group: &FiniteGroup, ring: &Ring, dim: usize) -> Result<GModule> {
        GModule::new(
            group,
            (0..group.size())
                .map(|_| Matrix::identity(ring, dim))
                .collect(),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn act(&self, element: usize) -> &Matrix {
        &self.action[element]
    }

    pub fn apply(&self, element: usize, v: &[Elem]) -> Vec<Elem> {
        self.action[element].apply(v).expect("dimension checked")
    }

    /// Twist by a character: same space, action multiplied by a scalar.
    pub fn twist(&self, group: &FiniteGroup, chi: &GroupCharacter) -> Result<GModule> {
        if chi.values.len() != group.size() {
            return Err(CohomologyError::Shape("character/group mismatch".into()));
        }
        let action = (0..group.size())
            .map(|e| self.action[e].scale(&chi.values[e]))
            .collect();
        GModule::new(group, action)
    }

    /// Restrict to a subgroup given by sorted element indices; returns the
    /// action list in the subgroup's own element order.
    pub fn restrict_action(&self, sub_elements: &[usize]) -> Vec<Matrix> {
        sub_elements.iter().map(|&e| self.action[e].clone()).collect()
    }
}

/// A multiplicative character of a group with values in a finite field,
/// stored per element and validated like any other module.
pub struct GroupCharacter {
    pub values: Vec<Elem>,
}

impl GroupCharacter {
    pub fn from_generator_values(
        group: &FiniteGroup,
        ring: &Ring,
        gen_values: &[Elem],
    ) -> Result<GroupCharacter> {
        let images: Vec<Matrix> = gen_values
            .iter()
            .map(|v| {
                let mut m = Matrix::zero(ring, 1, 1);
                m.set(0, 0, v.clone());
                m
            })
            .collect();
        let module = GModule::from_generator_action(group, &images)?;
        Ok(GroupCharacter {
            values: (0..group.size())
                .map(|e| module.act(e).get(0, 0).clone())
                .collect(),
        })
    }

    pub fn trivial(group: &FiniteGroup, ring: &Ring) -> GroupCharacter {
        GroupCharacter {
            values: vec![ring.one(); group.size()],
        }
    }
}

/// Basis of the full matrix algebra: elementary matrices `E_ij` in
/// row-major order.
pub fn ad_basis(ring: &Ring, n: usize) -> Vec<Matrix> {
    let mut basis = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut m = Matrix::zero(ring, n, n);
            m.set(i, j, ring.one());
            basis.push(m);
        }
    }
    basis
}

/// Basis of trace-zero matrices: off-diagonal `E_ij` in row-major order,
/// then `E_kk - E_{k+1,k+1}`.
pub fn ad0_basis(ring: &Ring, n: usize) -> Vec<Matrix> {
    let mut basis = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::zero(ring, n, n);
                m.set(i, j, ring.one());
                basis.push(m);
            }
        }
    }
    for k in 0..n - 1 {
        let mut m = Matrix::zero(ring, n, n);
        m.set(k, k, ring.one());
        m.set(k + 1, k + 1, ring.neg(&ring.one()));
        basis.push(m);
    }
    basis
}

/// Coordinates of a matrix in the `ad` basis (row-major flatten).
pub fn ad_coords(m: &Matrix) -> Vec<Elem> {
    m.entries().to_vec()
}

/// Coordinates of a trace-zero matrix in the `ad0` basis.
///
/// With basis off-diagonals-then-hyperplane, the coefficient of
/// `E_kk - E_{k+1,k+1}` is the partial sum `m_00 + ... + m_kk`.
pub fn ad0_coords(m: &Matrix) -> Result<Vec<Elem>> {
    let ring = &m.ring;
    let n = m.rows;
    let tr = m.trace().map_err(CohomologyError::Algebra)?;
    if !ring.is_zero(&tr) {
        return Err(CohomologyError::Shape("matrix is not trace zero".into()));
    }
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(m.get(i, j).clone());
            }
        }
    }
    let mut partial = ring.zero();
    for k in 0..n - 1 {
        partial = ring.add(&partial, m.get(k, k));
        out.push(partial.clone());
    }
    Ok(out)
}

/// The conjugation action of `group` (through a representation given per
/// element by `rho`) on `ad` or, with `fixed_det`, on trace-zero `ad0`;
/// optionally twisted by a character.
///
/// `rho` defaults to the matrix realization of the group itself.
pub fn adjoint_module(
    group: &FiniteGroup,
    rho: Option<&GModule>,
    fixed_det: bool,
    twist: Option<&GroupCharacter>,
) -> Result<GModule> {
    let (ring, n, rep): (Ring, usize, Box<dyn Fn(usize) -> Matrix>) = match rho {
        Some(r) => (
            r.ring().clone(),
            r.dim(),
            Box::new(move |e| r.act(e).clone()),
        ),
        None => (
            group.ring().clone(),
            group.matrix_size(),
            Box::new(move |e| group.element(e).clone()),
        ),
    };
    if !ring.is_field() || !ring.is_finite() {
        return Err(CohomologyError::Shape(
            "adjoint modules need finite field coefficients".into(),
        ));
    }
    if fixed_det {
        let p = ring.characteristic();
        if n as u64 % p == 0 {
            return Err(CohomologyError::Shape(format!(
                "trace-zero summand needs the characteristic {p} prime to the dimension {n}"
            )));
        }
    }
    let basis = if fixed_det {
        ad0_basis(&ring, n)
    } else {
        ad_basis(&ring, n)
    };
    let dim = basis.len();
    let mut action = Vec::with_capacity(group.size());
    for e in 0..group.size() {
        let g = rep(e);
        let ginv = g.inverse().map_err(CohomologyError::Algebra)?;
        let mut m = Matrix::zero(&ring, dim, dim);
        for (j, b) in basis.iter().enumerate() {
            let img = g
                .mul(b)
                .and_then(|x| x.mul(&ginv))
                .map_err(CohomologyError::Algebra)?;
            let coords = if fixed_det {
                ad0_coords(&img)?
            } else {
                ad_coords(&img)
            };
            for (i, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        action.push(m);
    }
    let module = GModule::new(group, action)?;
    match twist {
        Some(chi) => module.twist(group, chi),
        None => Ok(module),
    }
}
