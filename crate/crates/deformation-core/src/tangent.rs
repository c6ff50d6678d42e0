use exact_algebra::{rank, Elem, Matrix};
use group_cohomology::{ad0_basis, ad0_coords, ad_basis, ad_coords};

use crate::error::{DeformationError, Result};
use crate::problem::LiftingProblem;

/// Cocycle, cohomology, and invariant dimensions of the adjoint action of a
/// presented group, plus the gap between framed and unframed tangent spaces.
///
/// All four numbers refer to ad ρ̄, or to ad⁰ρ̄ when the problem fixes
/// determinants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub dim_z1: usize,
    pub dim_h1: usize,
    pub dim_h0: usize,
    pub dim_module: usize,
    pub framed_minus_unframed: usize,
}

struct AdjointSetup {
    basis: Vec<Matrix>,
    fixed_det: bool,
}

impl AdjointSetup {
    fn coords(&self, m: &Matrix) -> Result<Vec<Elem>> {
        if self.fixed_det {
            Ok(ad0_coords(m)?)
        } else {
            Ok(ad_coords(m))
        }
    }

    /// Matrix of X ↦ QXQ⁻¹ on the module, columns indexed by the basis.
    fn action_of(&self, q: &Matrix) -> Result<Matrix> {
        let qinv = q.inverse()?;
        let dim = self.basis.len();
        let mut cols = Vec::with_capacity(dim);
        for b in &self.basis {
            cols.push(self.coords(&q.mul(b)?.mul(&qinv)?)?);
        }
        Ok(Matrix::from_fn(&q.ring, dim, dim, |i, j| {
            cols[j][i].clone()
        }))
    }
}

fn setup(problem: &LiftingProblem) -> Result<AdjointSetup> {
    let field = problem.field();
    let n = problem.n();
    if problem.fixed_det() {
        if n as u64 % field.characteristic() == 0 {
            return Err(DeformationError::Shape(
                "trace splitting of ad needs the matrix size invertible in the field".into(),
            ));
        }
        Ok(AdjointSetup {
            basis: ad0_basis(field, n),
            fixed_det: true,
        })
    } else {
        Ok(AdjointSetup {
            basis: ad_basis(field, n),
            fixed_det: false,
        })
    }
}

/// The linearized relator system whose kernel is Z¹(G, ad ρ̄) for the
/// presented group G.
///
/// A cocycle is determined by its generator values c₁..c_g; walking a
/// relator letter-by-letter replaces each letter ±i at prefix w by the block
/// ±(action of ρ̄(w)) — with the prefix advanced first on inverse letters —
/// acting on cᵢ.  A tuple descends to a cocycle on G exactly when every
/// relator row vanishes: values on conjugates w·r·w⁻¹ of a relator differ
/// from the value on r by the invertible prefix action, so no further
/// conditions arise.
fn relator_system(problem: &LiftingProblem, adj: &AdjointSetup) -> Result<Matrix> {
    let field = problem.field();
    let n = problem.n();
    let g = problem.num_generators();
    let dim = adj.basis.len();
    let rows = problem.relators().len() * dim;
    let mut system = Matrix::zero(field, rows, g * dim);
    for (ri, word) in problem.relators().iter().enumerate() {
        let mut prefix = Matrix::identity(field, n);
        for &letter in word {
            let idx = letter.unsigned_abs() as usize - 1;
            let negative = letter < 0;
            if negative {
                prefix = prefix.mul(&problem.rho_bar_inv()[idx])?;
            }
            let block = adj.action_of(&prefix)?;
            for r in 0..dim {
                for c in 0..dim {
                    let row = ri * dim + r;
                    let col = idx * dim + c;
                    let term = if negative {
                        field.neg(block.get(r, c))
                    } else {
                        block.get(r, c).clone()
                    };
                    let v = field.add(system.get(row, col), &term);
                    system.set(row, col, v);
                }
            }
            if !negative {
                prefix = prefix.mul(&problem.rho_bar()[idx])?;
            }
        }
    }
    Ok(system)
}

/// Dimensions of the tangent-space package of a lifting problem.
///
/// Besides the dimension count, the computation cross-checks itself: every
/// coboundary (action(ρ̄(gᵢ)) − 1)·m must solve the relator system.
pub fn tangent_report(problem: &LiftingProblem) -> Result<TangentReport> {
    let field = problem.field();
    let g = problem.num_generators();
    let adj = setup(problem)?;
    let dim = adj.basis.len();

    let actions: Vec<Matrix> = problem
        .rho_bar()
        .iter()
        .map(|q| adj.action_of(q))
        .collect::<Result<_>>()?;

    // H⁰ = common fixed space of the generator actions.
    let stacked = Matrix::from_fn(field, g * dim, dim, |row, col| {
        let a = &actions[row / dim];
        let r = row % dim;
        if r == col {
            field.sub(a.get(r, col), &field.one())
        } else {
            a.get(r, col).clone()
        }
    });
    let dim_h0 = dim - rank(&stacked)?;

    let system = relator_system(problem, &adj)?;
    let dim_z1 = g * dim - rank(&system)?;

    // Coboundaries solve the relator system; fail loudly if the
    // linearization and the differential ever disagree.
    for m in &adj.basis {
        let mut cochain = Vec::with_capacity(g * dim);
        for a in &actions {
            let coords = adj.coords(m)?;
            let acted = a.apply(&coords)?;
            for (x, y) in acted.iter().zip(coords.iter()) {
                cochain.push(field.sub(x, y));
            }
        }
        let image = system.apply(&cochain)?;
        if image.iter().any(|v| !field.is_zero(v)) {
            return Err(DeformationError::Shape(
                "a coboundary violates the linearized relator system".into(),
            ));
        }
    }

    let dim_b1 = dim - dim_h0;
    let dim_h1 = dim_z1 - dim_b1;
    assert_eq!(dim_z1, dim_h1 + dim - dim_h0);
    Ok(TangentReport {
        dim_z1,
        dim_h1,
        dim_h0,
        dim_module: dim,
        framed_minus_unframed: dim_z1 - dim_h1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_algebra::Ring;

    #[test]
    fn trivial_group_has_no_cocycles() {
        let f5 = Ring::fp(5);
        let id = Matrix::identity(&f5, 2);
        let p = LiftingProblem::new(f5, 2, vec![id], vec![vec![1]], false).unwrap();
        let report = tangent_report(&p).unwrap();
        assert_eq!(
            report,
            TangentReport {
                dim_z1: 0,
                dim_h1: 0,
                dim_h0: 4,
                dim_module: 4,
                framed_minus_unframed: 0,
            }
        );
    }

    #[test]
    fn cyclic_p_with_trivial_image_is_unobstructed_in_degree_one() {
        let f5 = Ring::fp(5);
        let id = Matrix::identity(&f5, 2);
        let p = LiftingProblem::new(f5, 2, vec![id], vec![vec![1; 5]], false).unwrap();
        let report = tangent_report(&p).unwrap();
        assert_eq!(report.dim_z1, 4);
        assert_eq!(report.dim_h1, 4);
        assert_eq!(report.dim_h0, 4);
    }

    #[test]
    fn split_torus_of_order_four() {
        let f5 = Ring::fp(5);
        let a = Matrix::from_i64(&f5, 2, 2, &[2, 1, 0, 3]);
        let p = LiftingProblem::new(f5, 2, vec![a], vec![vec![1; 4]], false).unwrap();
        let report = tangent_report(&p).unwrap();
        assert_eq!(report.dim_z1, 2);
        assert_eq!(report.dim_h0, 2);
        assert_eq!(report.dim_h1, 0);
        assert_eq!(report.framed_minus_unframed, 2);
    }

    #[test]
    fn symmetric_group_with_fixed_determinant() {
        let f5 = Ring::fp(5);
        let a = Matrix::from_i64(&f5, 2, 2, &[0, 4, 1, 4]);
        let b = Matrix::from_i64(&f5, 2, 2, &[0, 1, 1, 0]);
        let p = LiftingProblem::new(
            f5,
            2,
            vec![a, b],
            vec![vec![1, 1, 1], vec![2, 2], vec![1, 2, 1, 2]],
            true,
        )
        .unwrap();
        let report = tangent_report(&p).unwrap();
        assert_eq!(report.dim_module, 3);
        assert_eq!(report.dim_z1, 3);
        assert_eq!(report.dim_h0, 0);
        assert_eq!(report.dim_h1, 0);
    }

    #[test]
    fn fixed_determinant_rejects_bad_characteristic() {
        let f2 = Ring::fp(2);
        let swap = Matrix::from_i64(&f2, 2, 2, &[0, 1, 1, 0]);
        let p = LiftingProblem::new(f2, 2, vec![swap], vec![vec![1, 1]], true).unwrap();
        assert!(tangent_report(&p).is_err());
    }
}
