//! Cohomology of finite groups in degrees 0-2 via normalized inhomogeneous
//! cochains and dense linear algebra.
//!
//! A degree-`d` cochain is a function on `d`-tuples of non-identity
//! elements (normalization forces the value zero as soon as any argument is
//! the identity), flattened to a coordinate vector: tuple coordinates vary
//! fastest in the last argument, then the module coordinate.

use exact_algebra::linalg::{kernel_basis, QuotientSpace, Subspace};
use exact_algebra::matrix::Matrix;
use exact_algebra::ring::Elem;

use crate::error::{CohomologyError, Result};
use crate::group::FiniteGroup;
use crate::module::{GModule, GroupCharacter};

pub const DEFAULT_BUDGET_CELLS: u64 = 4_000_000;

/// A cochain in the normalized complex, tagged with its degree.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub degree: u8,
    pub cochain: Vec<Elem>,
}

pub fn cochain_dim(group: &FiniteGroup, module: &GModule, degree: u8) -> usize {
    let k = group.size() - 1;
    k.pow(degree as u32) * module.dim()
}

/// Offset of the block belonging to a tuple of non-identity elements.
fn tuple_offset(group_size: usize, m: usize, tuple: &[usize]) -> usize {
    let k = group_size - 1;
    let mut acc = 0usize;
    for &g in tuple {
        debug_assert!(g >= 1);
        acc = acc * k + (g - 1);
    }
    acc * m
}

/// Value of a cochain on a tuple of group elements (identity anywhere gives
/// zero by normalization).
pub fn eval_cochain(
    group: &FiniteGroup,
    module: &GModule,
    cochain: &[Elem],
    tuple: &[usize],
) -> Vec<Elem> {
    let m = module.dim();
    if tuple.iter().any(|&g| g == 0) {
        return vec![module.ring().zero(); m];
    }
    let off = tuple_offset(group.size(), m, tuple);
    cochain[off..off + m].to_vec()
}

/// Apply the inhomogeneous differential to a degree-`d` cochain, `d <= 2`,
/// producing a degree-`d+1` cochain.
pub fn differential_apply(
    group: &FiniteGroup,
    module: &GModule,
    degree: u8,
    cochain: &[Elem],
) -> Result<Vec<Elem>> {
    let m = module.dim();
    let ring = module.ring().clone();
    if cochain.len() != cochain_dim(group, module, degree) {
        return Err(CohomologyError::Shape("cochain length mismatch".into()));
    }
    let n = group.size();
    let out_dim = cochain_dim(group, module, degree + 1);
    let mut out = vec![ring.zero(); out_dim];
    let add_into = |out: &mut Vec<Elem>, off: usize, v: &[Elem], sign_plus: bool| {
        for (t, x) in v.iter().enumerate() {
            let cur = out[off + t].clone();
            out[off + t] = if sign_plus {
                ring.add(&cur, x)
            } else {
                ring.sub(&cur, x)
            };
        }
    };
    match degree {
        0 => {
            // (d x)(g) = g x - x
            for g in 1..n {
                let off = tuple_offset(n, m, &[g]);
                let gx = module.apply(g, cochain);
                add_into(&mut out, off, &gx, true);
                add_into(&mut out, off, cochain, false);
            }
        }
        1 => {
            // (d f)(g, h) = g f(h) - f(gh) + f(g)
            for g in 1..n {
                let fg = eval_cochain(group, module, cochain, &[g]);
                for h in 1..n {
                    let off = tuple_offset(n, m, &[g, h]);
                    let fh = eval_cochain(group, module, cochain, &[h]);
                    let gfh = module.apply(g, &fh);
                    add_into(&mut out, off, &gfh, true);
                    let fgh = eval_cochain(group, module, cochain, &[group.mul(g, h)]);
                    add_into(&mut out, off, &fgh, false);
                    add_into(&mut out, off, &fg, true);
                }
            }
        }
        2 => {
            // (d f)(g, h, k) = g f(h,k) - f(gh,k) + f(g,hk) - f(g,h)
            for g in 1..n {
                for h in 1..n {
                    let gh = group.mul(g, h);
                    let fgh_pre = eval_cochain(group, module, cochain, &[g, h]);
                    for k in 1..n {
                        let off = tuple_offset(n, m, &[g, h, k]);
                        let fhk = eval_cochain(group, module, cochain, &[h, k]);
                        let gfhk = module.apply(g, &fhk);
                        add_into(&mut out, off, &gfhk, true);
                        let f_ghk = eval_cochain(group, module, cochain, &[gh, k]);
                        add_into(&mut out, off, &f_ghk, false);
                        let hk = group.mul(h, k);
                        let f_g_hk = eval_cochain(group, module, cochain, &[g, hk]);
                        add_into(&mut out, off, &f_g_hk, true);
                        add_into(&mut out, off, &fgh_pre, false);
                    }
                }
            }
        }
        _ => return Err(CohomologyError::Degree(degree)),
    }
    Ok(out)
}

pub fn is_cocycle(
    group: &FiniteGroup,
    module: &GModule,
    degree: u8,
    cochain: &[Elem],
) -> Result<bool> {
    let ring = module.ring();
    let img = differential_apply(group, module, degree, cochain)?;
    Ok(img.iter().all(|x| ring.is_zero(x)))
}

/// Dense matrix of the differential out of degree `d`.
pub fn differential_matrix(
    group: &FiniteGroup,
    module: &GModule,
    degree: u8,
    budget_cells: u64,
) -> Result<Matrix> {
    let rows = cochain_dim(group, module, degree + 1);
    let cols = cochain_dim(group, module, degree);
    let cells = rows as u64 * cols as u64;
    if cells > budget_cells {
        return Err(CohomologyError::Budget {
            cells,
            budget: budget_cells,
        });
    }
    let ring = module.ring();
    let mut out = Matrix::zero(ring, rows, cols);
    let mut basis_vec = vec![ring.zero(); cols];
    for j in 0..cols {
        basis_vec[j] = ring.one();
        let img = differential_apply(group, module, degree, &basis_vec)?;
        for (i, x) in img.into_iter().enumerate() {
            if !ring.is_zero(&x) {
                out.set(i, j, x);
            }
        }
        basis_vec[j] = ring.zero();
    }
    Ok(out)
}

/// Cohomology in one degree, with explicit representing cocycles and the
/// quotient structure needed to test and compare classes.
pub struct Cohomology {
    pub degree: u8,
    pub dim_h: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub classes: Vec<CohomologyClass>,
    quotient: QuotientSpace,
}

impl Cohomology {
    /// Class coordinates of a cocycle with respect to the returned basis;
    /// `None` if the cochain is not in the cocycle space.
    pub fn class_coords(&self, cochain: &[Elem]) -> Option<Vec<Elem>> {
        self.quotient.coords(cochain)
    }

    pub fn is_coboundary(&self, cochain: &[Elem]) -> bool {
        self.quotient
            .coords(cochain)
            .map_or(false, |c| c.iter().all(|x| self.ring_is_zero(x)))
    }

    fn ring_is_zero(&self, x: &Elem) -> bool {
        self.quotient.denominator().ring().is_zero(x)
    }
}

pub fn cohomology(
    group: &FiniteGroup,
    module: &GModule,
    degree: u8,
    budget_cells: u64,
) -> Result<Cohomology> {
    if degree > 2 {
        return Err(CohomologyError::Degree(degree));
    }
    let ring = module.ring().clone();
    let m = module.dim();

    // cocycles
    let z: Vec<Vec<Elem>> = if degree == 0 {
        // invariants under the generators
        let gens = group.generator_indices();
        let stacked = Matrix::from_fn(&ring, gens.len() * m, m, |i, j| {
            let (which, row) = (i / m, i % m);
            let g = gens[which] as usize;
            let a = module.act(g).get(row, j).clone();
            if row == j {
                ring.sub(&a, &ring.one())
            } else {
                a
            }
        });
        kernel_basis(&stacked).map_err(CohomologyError::Algebra)?
    } else {
        let d = differential_matrix(group, module, degree, budget_cells)?;
        kernel_basis(&d).map_err(CohomologyError::Algebra)?
    };
    let dim_z = z.len();

    // coboundaries
    let width = cochain_dim(group, module, degree);
    let b: Vec<Vec<Elem>> = if degree == 0 {
        Vec::new()
    } else {
        let prev = differential_matrix(group, module, degree - 1, budget_cells)?;
        let mut img = Vec::new();
        let mut basis_vec = vec![ring.zero(); prev.cols];
        for j in 0..prev.cols {
            basis_vec[j] = ring.one();
            img.push(differential_apply(group, module, degree - 1, &basis_vec)?);
            basis_vec[j] = ring.zero();
        }
        img
    };
    let denom = Subspace::from_vectors(&ring, width, b);
    let dim_b = denom.dim();
    let quotient = QuotientSpace::new(denom, z);
    let dim_h = quotient.dim();
    let classes = quotient
        .basis_reps()
        .iter()
        .map(|v| CohomologyClass {
            degree,
            cochain: v.clone(),
        })
        .collect();
    Ok(Cohomology {
        degree,
        dim_h,
        dim_z,
        dim_b,
        classes,
        quotient,
    })
}

/// Restrict a class along a subgroup inclusion.  The subgroup is given by
/// element indices in the ambient group; returns the subgroup as a group in
/// its own right, the restricted module, and the restricted class.
pub fn restrict_class(
    group: &FiniteGroup,
    module: &GModule,
    class: &CohomologyClass,
    sub_indices: &[usize],
) -> Result<(FiniteGroup, GModule, CohomologyClass)> {
    let sub = group.subgroup(sub_indices)?;
    let mats: Vec<Matrix> = sub.iter().map(|&i| group.element(i).clone()).collect();
    let sub_group = FiniteGroup::generate(&mats, sub.len())?;
    // map subgroup elements to ambient indices
    let mut to_ambient = vec![0usize; sub_group.size()];
    for i in 0..sub_group.size() {
        to_ambient[i] = group
            .index_of(sub_group.element(i))
            .ok_or(CohomologyError::NotASubgroup)?;
    }
    let sub_module = GModule::new(
        &sub_group,
        to_ambient.iter().map(|&i| module.act(i).clone()).collect(),
    )?;
    let d = class.degree as usize;
    let m = module.dim();
    let mut cochain = vec![module.ring().zero(); cochain_dim(&sub_group, &sub_module, class.degree)];
    let k = sub_group.size() - 1;
    let mut tuple = vec![1usize; d];
    if d == 0 {
        cochain = class.cochain.clone();
    } else if k > 0 {
        loop {
            let ambient_tuple: Vec<usize> = tuple.iter().map(|&i| to_ambient[i]).collect();
            let val = eval_cochain(group, module, &class.cochain, &ambient_tuple);
            let off = tuple_offset(sub_group.size(), m, &tuple);
            cochain[off..off + m].clone_from_slice(&val);
            // advance odometer over non-identity subgroup elements
            let mut pos = d;
            let mut advanced = false;
            while pos > 0 {
                pos -= 1;
                if tuple[pos] < k {
                    tuple[pos] += 1;
                    for t in tuple.iter_mut().skip(pos + 1) {
                        *t = 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    Ok((
        sub_group,
        sub_module,
        CohomologyClass {
            degree: class.degree,
            cochain,
        },
    ))
}

/// Inflate a class along a surjection `pi: G -> Q` (element-index map).
/// The module on `G` is the pullback of the quotient module.
pub fn inflate_class(
    group: &FiniteGroup,
    quotient_group: &FiniteGroup,
    quotient_module: &GModule,
    pi: &[usize],
    class: &CohomologyClass,
) -> Result<(GModule, CohomologyClass)> {
    if pi.len() != group.size() {
        return Err(CohomologyError::Shape("index map length mismatch".into()));
    }
    let pulled = GModule::new(
        group,
        pi.iter().map(|&q| quotient_module.act(q).clone()).collect(),
    )?;
    let d = class.degree as usize;
    let m = quotient_module.dim();
    if d == 0 {
        return Ok((
            pulled,
            CohomologyClass {
                degree: 0,
                cochain: class.cochain.clone(),
            },
        ));
    }
    let n = group.size();
    let mut cochain = vec![quotient_module.ring().zero(); cochain_dim(group, &pulled, class.degree)];
    let k = n - 1;
    if k == 0 {
        return Ok((
            pulled,
            CohomologyClass {
                degree: class.degree,
                cochain,
            },
        ));
    }
    let mut tuple = vec![1usize; d];
    loop {
        let image_tuple: Vec<usize> = tuple.iter().map(|&i| pi[i]).collect();
        let val = eval_cochain(quotient_group, quotient_module, &class.cochain, &image_tuple);
        let off = tuple_offset(n, m, &tuple);
        cochain[off..off + m].clone_from_slice(&val);
        let mut pos = d;
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if tuple[pos] < k {
                tuple[pos] += 1;
                for t in tuple.iter_mut().skip(pos + 1) {
                    *t = 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    Ok((
        pulled,
        CohomologyClass {
            degree: class.degree,
            cochain,
        },
    ))
}

/// A bilinear, G-equivariant pairing `M1 x M2 -> M3` presented as an
/// `m3 x (m1*m2)` matrix on pure tensors (column index `i1*m2 + i2`).
pub struct Pairing {
    pub matrix: Matrix,
}

impl Pairing {
    /// Check equivariance on the generators:
    /// `P (g x (x) g y) = g P(x (x) y)`.
    pub fn verify_equivariant(
        &self,
        group: &FiniteGroup,
        m1: &GModule,
        m2: &GModule,
        m3: &GModule,
    ) -> Result<()> {
        for &s in group.generator_indices() {
            let g1 = m1.act(s as usize);
            let g2 = m2.act(s as usize);
            let g3 = m3.act(s as usize);
            let kron = kron_product(g1, g2)?;
            let lhs = self.matrix.mul(&kron).map_err(CohomologyError::Algebra)?;
            let rhs = g3.mul(&self.matrix).map_err(CohomologyError::Algebra)?;
            if !lhs.eq_to(&rhs) {
                return Err(CohomologyError::NotEquivariant);
            }
        }
        Ok(())
    }

    pub fn pair(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let ring = &self.matrix.ring;
        let m2 = y.len();
        let mut tensor = vec![ring.zero(); x.len() * m2];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                tensor[i * m2 + j] = ring.mul(xi, yj);
            }
        }
        self.matrix.apply(&tensor).expect("pairing shape")
    }
}

pub fn kron_product(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let ring = &a.ring;
    let mut out = Matrix::zero(ring, a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            if ring.is_zero(aij) {
                continue;
            }
            for r in 0..b.rows {
                for c in 0..b.cols {
                    let v = ring.mul(aij, b.get(r, c));
                    out.set(i * b.rows + r, j * b.cols + c, v);
                }
            }
        }
    }
    Ok(out)
}

/// The trace pairing on trace-zero matrices, `X (x) Y -> tr(XY)`, as a
/// [`Pairing`] in the `ad0` basis.
pub fn trace_pairing_ad0(ring: &exact_algebra::ring::Ring, n: usize) -> Pairing {
    let basis = crate::module::ad0_basis(ring, n);
    let dim = basis.len();
    let mut m = Matrix::zero(ring, 1, dim * dim);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let t = x.mul(y).and_then(|p| p.trace()).expect("square");
            m.set(0, i * dim + j, t);
        }
    }
    Pairing { matrix: m }
}

/// Cochain-level cup product of two degree-1 cochains:
/// `(f U g)(a, b) = P(f(a) (x) a . g(b))`.
pub fn cup_product(
    group: &FiniteGroup,
    m1: &GModule,
    m2: &GModule,
    m3: &GModule,
    pairing: &Pairing,
    c1: &CohomologyClass,
    c2: &CohomologyClass,
) -> Result<CohomologyClass> {
    if c1.degree != 1 || c2.degree != 1 {
        return Err(CohomologyError::Degree(c1.degree.max(c2.degree)));
    }
    pairing.verify_equivariant(group, m1, m2, m3)?;
    let n = group.size();
    let m3_dim = m3.dim();
    let mut out = vec![m3.ring().zero(); cochain_dim(group, m3, 2)];
    for a in 1..n {
        let fa = eval_cochain(group, m1, &c1.cochain, &[a]);
        for b in 1..n {
            let gb = eval_cochain(group, m2, &c2.cochain, &[b]);
            let agb = m2.apply(a, &gb);
            let val = pairing.pair(&fa, &agb);
            let off = tuple_offset(n, m3_dim, &[a, b]);
            out[off..off + m3_dim].clone_from_slice(&val);
        }
    }
    Ok(CohomologyClass {
        degree: 2,
        cochain: out,
    })
}

/// Tate-twist helper re-exported at the cohomology level: twist a module by
/// a character (used to build `M(1)` from a declared mod-p cyclotomic
/// character).
pub fn twist_module(
    group: &FiniteGroup,
    module: &GModule,
    chi: &GroupCharacter,
) -> Result<GModule> {
    module.twist(group, chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_algebra::ring::Ring;

    fn cyclic(p: u64, order_hint: usize) -> FiniteGroup {
        let f = Ring::fp(p);
        let u = Matrix::from_i64(&f, 2, 2, &[1, 1, 0, 1]);
        let g = FiniteGroup::generate(&[u], order_hint).unwrap();
        g
    }

    #[test]
    fn h0_of_trivial_group_is_everything() {
        let f5 = Ring::fp(5);
        let g = FiniteGroup::generate(&[Matrix::identity(&f5, 2)], 4).unwrap();
        let m = GModule::trivial(&g, &f5, 3).unwrap();
        let h0 = cohomology(&g, &m, 0, DEFAULT_BUDGET_CELLS).unwrap();
        assert_eq!(h0.dim_h, 3);
    }

    #[test]
    fn cyclic_p_trivial_coefficients() {
        // H^0 = H^1 = H^2 = F_p for G = Z/p acting trivially on F_p
        let g = cyclic(5, 10);
        let f5 = Ring::fp(5);
        let m = GModule::trivial(&g, &f5, 1).unwrap();
        for (deg, expect) in [(0u8, 1usize), (1, 1), (2, 1)] {
            let h = cohomology(&g, &m, deg, DEFAULT_BUDGET_CELLS).unwrap();
            assert_eq!(h.dim_h, expect, "degree {deg}");
            for c in &h.classes {
                assert!(is_cocycle(&g, &m, deg, &c.cochain).unwrap());
            }
        }
    }

    #[test]
    fn coprime_order_vanishing() {
        // G = Z/5 inside GL_2(F_5), but coefficients F_7: H^1 = H^2 = 0
        let g = cyclic(5, 10);
        let f7 = Ring::fp(7);
        let m = GModule::trivial(&g, &f7, 2).unwrap();
        for deg in [1u8, 2] {
            let h = cohomology(&g, &m, deg, DEFAULT_BUDGET_CELLS).unwrap();
            assert_eq!(h.dim_h, 0, "degree {deg}");
        }
    }

    #[test]
    fn euler_bookkeeping_z1_b1() {
        let f5 = Ring::fp(5);
        let r = Matrix::from_i64(&f5, 2, 2, &[0, 4, 1, 4]);
        let s = Matrix::from_i64(&f5, 2, 2, &[0, 1, 1, 0]);
        let g = FiniteGroup::generate(&[r, s], 10).unwrap();
        let ad0 = crate::module::adjoint_module(&g, None, true, None).unwrap();
        let h0 = cohomology(&g, &ad0, 0, DEFAULT_BUDGET_CELLS).unwrap();
        let h1 = cohomology(&g, &ad0, 1, DEFAULT_BUDGET_CELLS).unwrap();
        assert_eq!(h1.dim_z, h1.dim_b + h1.dim_h);
        assert_eq!(h1.dim_b, ad0.dim() - h0.dim_h);
    }

    #[test]
    fn restriction_to_trivial_subgroup_kills_classes() {
        let g = cyclic(5, 10);
        let f5 = Ring::fp(5);
        let m = GModule::trivial(&g, &f5, 1).unwrap();
        let h1 = cohomology(&g, &m, 1, DEFAULT_BUDGET_CELLS).unwrap();
        let (sub, sub_m, res) = restrict_class(&g, &m, &h1.classes[0], &[0]).unwrap();
        assert_eq!(sub.size(), 1);
        assert_eq!(cochain_dim(&sub, &sub_m, 1), 0);
        assert!(res.cochain.is_empty());
    }

    #[test]
    fn cup_product_nonzero_on_cyclic_two() {
        // For G = Z/2 with F_2 coefficients the cup square is the Bockstein,
        // which is nonzero in H^2: brute force over every degree-1 class.
        let g = cyclic(2, 5);
        let f2 = Ring::fp(2);
        let m = GModule::trivial(&g, &f2, 1).unwrap();
        let h1 = cohomology(&g, &m, 1, DEFAULT_BUDGET_CELLS).unwrap();
        assert_eq!(h1.dim_h, 1);
        let h2 = cohomology(&g, &m, 2, DEFAULT_BUDGET_CELLS).unwrap();
        assert_eq!(h2.dim_h, 1);
        let pairing = Pairing {
            matrix: Matrix::from_i64(&f2, 1, 1, &[1]),
        };
        let mut found_nonzero = false;
        for c1 in &h1.classes {
            for c2 in &h1.classes {
                let cup = cup_product(&g, &m, &m, &m, &pairing, c1, c2).unwrap();
                assert!(is_cocycle(&g, &m, 2, &cup.cochain).unwrap());
                if !h2.is_coboundary(&cup.cochain) {
                    found_nonzero = true;
                }
            }
        }
        assert!(found_nonzero);
    }

    #[test]
    fn cup_product_graded_commutative() {
        // G = Z/5 unipotent in GL_2(F_5) with its trace-zero adjoint: H^1 is
        // nonzero and every a U b + b U a must die in H^2 of the trivial
        // coefficients.
        let g = cyclic(5, 10);
        let f5 = Ring::fp(5);
        let ad0 = crate::module::adjoint_module(&g, None, true, None).unwrap();
        let f = GModule::trivial(&g, &f5, 1).unwrap();
        let pairing = trace_pairing_ad0(&f5, 2);
        pairing.verify_equivariant(&g, &ad0, &ad0, &f).unwrap();
        let h1 = cohomology(&g, &ad0, 1, DEFAULT_BUDGET_CELLS).unwrap();
        assert!(h1.dim_h > 0);
        let h2 = cohomology(&g, &f, 2, DEFAULT_BUDGET_CELLS).unwrap();
        assert!(h2.dim_h > 0);
        for c1 in &h1.classes {
            for c2 in &h1.classes {
                let ab = cup_product(&g, &ad0, &ad0, &f, &pairing, c1, c2).unwrap();
                let ba = cup_product(&g, &ad0, &ad0, &f, &pairing, c2, c1).unwrap();
                let sum: Vec<Elem> = ab
                    .cochain
                    .iter()
                    .zip(&ba.cochain)
                    .map(|(x, y)| f5.add(x, y))
                    .collect();
                assert!(h2.is_coboundary(&sum));
            }
        }
    }
}
