//! Linear algebra over field kinds: streaming row reduction, kernels,
//! solving, subspaces and quotient spaces.
//!
//! Cochain complexes produce wide, very sparse differentials, so the rank
//! computations are organized around [`RrefBuilder`], which consumes rows
//! one at a time and never materializes the whole matrix.

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Ring};

/// Incremental reduced row echelon form over a field.
#[derive(Clone, Debug)]
pub struct RrefBuilder {
    pub ring: Ring,
    pub width: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl RrefBuilder {
    pub fn new(ring: &Ring, width: usize) -> RrefBuilder {
        assert!(ring.is_field(), "row reduction needs a field");
        RrefBuilder {
            ring: ring.clone(),
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminate all pivot coordinates from `row` in place.
    pub fn reduce_in_place(&self, row: &mut [Elem]) {
        let r = &self.ring;
        for (idx, &p) in self.pivots.iter().enumerate() {
            if r.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            let basis = &self.rows[idx];
            for j in p..self.width {
                if r.is_zero(&basis[j]) {
                    continue;
                }
                let t = r.mul(&c, &basis[j]);
                row[j] = r.sub(&row[j], &t);
            }
        }
    }

    /// Insert a row.  Returns true when the rank grew.
    pub fn push(&mut self, mut row: Vec<Elem>) -> bool {
        assert_eq!(row.len(), self.width);
        let r = self.ring.clone();
        self.reduce_in_place(&mut row);
        let lead = match row.iter().position(|e| !r.is_zero(e)) {
            Some(l) => l,
            None => return false,
        };
        let inv = r.inv(&row[lead]).expect("nonzero field element");
        for e in row.iter_mut().skip(lead) {
            if !r.is_zero(e) {
                *e = r.mul(e, &inv);
            }
        }
        // back-substitute into existing rows to keep full RREF
        for idx in 0..self.rows.len() {
            let c = self.rows[idx][lead].clone();
            if r.is_zero(&c) {
                continue;
            }
            for j in lead..self.width {
                if r.is_zero(&row[j]) {
                    continue;
                }
                let t = r.mul(&c, &row[j]);
                self.rows[idx][j] = r.sub(&self.rows[idx][j], &t);
            }
        }
        // insert keeping pivot order
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
        true
    }

    pub fn contains(&self, row: &[Elem]) -> bool {
        let mut v = row.to_vec();
        self.reduce_in_place(&mut v);
        v.iter().all(|e| self.ring.is_zero(e))
    }
}

/// A linear subspace of coordinate space, stored as an RREF basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    builder: RrefBuilder,
}

impl Subspace {
    pub fn empty(ring: &Ring, width: usize) -> Subspace {
        Subspace {
            builder: RrefBuilder::new(ring, width),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<Elem>>>(
        ring: &Ring,
        width: usize,
        vectors: I,
    ) -> Subspace {
        let mut s = Subspace::empty(ring, width);
        for v in vectors {
            s.builder.push(v);
        }
        s
    }

    pub fn add(&mut self, v: Vec<Elem>) -> bool {
        self.builder.push(v)
    }

    pub fn dim(&self) -> usize {
        self.builder.rank()
    }

    pub fn width(&self) -> usize {
        self.builder.width
    }

    pub fn ring(&self) -> &Ring {
        &self.builder.ring
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        self.builder.rows()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.builder.contains(v)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn equals_space(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_space(other)
    }

    /// Canonical representative of v modulo this subspace.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let mut out = v.to_vec();
        self.builder.reduce_in_place(&mut out);
        out
    }
}

/// Quotient of a span by a subspace, with explicit coordinates.
///
/// Built from a denominator subspace B and vectors spanning the numerator
/// space Z (which must contain B for quotient semantics to make sense).
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub ring: Ring,
    pub width: usize,
    denom: Subspace,
    reps: Vec<Vec<Elem>>,
    rep_pivots: Vec<usize>,
}

impl QuotientSpace {
    pub fn new<I: IntoIterator<Item = Vec<Elem>>>(
        denom: Subspace,
        numerator_span: I,
    ) -> QuotientSpace {
        let ring = denom.ring().clone();
        let width = denom.width();
        let mut reps: Vec<Vec<Elem>> = Vec::new();
        let mut rep_pivots: Vec<usize> = Vec::new();
        for v in numerator_span {
            let mut v = denom.reduce(&v);
            // reduce against existing reps
            for (idx, &p) in rep_pivots.iter().enumerate() {
                if ring.is_zero(&v[p]) {
                    continue;
                }
                let c = v[p].clone();
                for j in 0..width {
                    if ring.is_zero(&reps[idx][j]) {
                        continue;
                    }
                    let t = ring.mul(&c, &reps[idx][j]);
                    v[j] = ring.sub(&v[j], &t);
                }
            }
            if let Some(lead) = v.iter().position(|e| !ring.is_zero(e)) {
                let inv = ring.inv(&v[lead]).expect("field");
                for e in v.iter_mut() {
                    if !ring.is_zero(e) {
                        *e = ring.mul(e, &inv);
                    }
                }
                // back-substitution keeps reps mutually reduced
                for (idx, rep) in reps.iter_mut().enumerate() {
                    let _ = idx;
                    let c = rep[lead].clone();
                    if ring.is_zero(&c) {
                        continue;
                    }
                    for j in 0..width {
                        if ring.is_zero(&v[j]) {
                            continue;
                        }
                        let t = ring.mul(&c, &v[j]);
                        rep[j] = ring.sub(&rep[j], &t);
                    }
                }
                let pos = rep_pivots.partition_point(|&p| p < lead);
                rep_pivots.insert(pos, lead);
                reps.insert(pos, v);
            }
        }
        QuotientSpace {
            ring,
            width,
            denom,
            reps,
            rep_pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Representative vectors of the chosen basis.
    pub fn basis_reps(&self) -> &[Vec<Elem>] {
        &self.reps
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denom
    }

    /// Coordinates of the class of v in the chosen basis, or None when v
    /// does not lie in the numerator span + denominator.
    pub fn coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let r = &self.ring;
        let mut w = self.denom.reduce(v);
        let mut coords = vec![r.zero(); self.reps.len()];
        for (idx, &p) in self.rep_pivots.iter().enumerate() {
            if r.is_zero(&w[p]) {
                continue;
            }
            let c = w[p].clone();
            coords[idx] = c.clone();
            for j in 0..self.width {
                if r.is_zero(&self.reps[idx][j]) {
                    continue;
                }
                let t = r.mul(&c, &self.reps[idx][j]);
                w[j] = r.sub(&w[j], &t);
            }
        }
        if w.iter().all(|e| r.is_zero(e)) {
            Some(coords)
        } else {
            None
        }
    }

    /// Whether the class of v is zero.
    pub fn is_zero_class(&self, v: &[Elem]) -> bool {
        self.denom.contains(v)
    }

    /// A vector representing the class with the given coordinates.
    pub fn lift(&self, coords: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.width];
        for (c, rep) in coords.iter().zip(&self.reps) {
            if r.is_zero(c) {
                continue;
            }
            for j in 0..self.width {
                if r.is_zero(&rep[j]) {
                    continue;
                }
                let t = r.mul(c, &rep[j]);
                out[j] = r.add(&out[j], &t);
            }
        }
        out
    }
}

/// Right kernel basis of a matrix over a field.
pub fn kernel_basis(m: &Matrix) -> Result<Vec<Vec<Elem>>> {
    let r = &m.ring;
    if !r.is_field() {
        return Err(AlgebraError::NotAField(r.name()));
    }
    let mut b = RrefBuilder::new(r, m.cols);
    for i in 0..m.rows {
        b.push(m.row(i).to_vec());
    }
    let mut pivot_set = vec![usize::MAX; m.cols];
    for (idx, &p) in b.pivots().iter().enumerate() {
        pivot_set[p] = idx;
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set[free] != usize::MAX {
            continue;
        }
        let mut v = vec![r.zero(); m.cols];
        v[free] = r.one();
        for (idx, &p) in b.pivots().iter().enumerate() {
            let c = &b.rows()[idx][free];
            if !r.is_zero(c) {
                v[p] = r.neg(c);
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Solve m x = b over a field; returns one solution or None.
pub fn solve(m: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let r = &m.ring;
    if !r.is_field() {
        return Err(AlgebraError::NotAField(r.name()));
    }
    if b.len() != m.rows {
        return Err(AlgebraError::DimensionMismatch(m.rows, m.cols, b.len(), 1));
    }
    // augmented column trick: reduce [m | b] rows
    let mut builder = RrefBuilder::new(r, m.cols + 1);
    for i in 0..m.rows {
        let mut row = m.row(i).to_vec();
        row.push(b[i].clone());
        builder.push(row);
    }
    // inconsistent iff a pivot lands in the last column
    if builder.pivots().contains(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![r.zero(); m.cols];
    for (idx, &p) in builder.pivots().iter().enumerate() {
        x[p] = builder.rows()[idx][m.cols].clone();
    }
    Ok(Some(x))
}

/// Rank of a matrix over a field.
pub fn rank(m: &Matrix) -> Result<usize> {
    let r = &m.ring;
    if !r.is_field() {
        return Err(AlgebraError::NotAField(r.name()));
    }
    let mut b = RrefBuilder::new(r, m.cols);
    for i in 0..m.rows {
        b.push(m.row(i).to_vec());
    }
    Ok(b.rank())
}

/// Column span of a matrix as a subspace of coordinate space.
pub fn column_space(m: &Matrix) -> Subspace {
    let t = m.transpose();
    Subspace::from_vectors(&m.ring, t.cols, (0..t.rows).map(|i| t.row(i).to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let f5 = Ring::fp(5);
        let m = Matrix::from_i64(&f5, 2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = kernel_basis(&m).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            let out = m.apply(v).unwrap();
            assert!(out.iter().all(|e| f5.is_zero(e)));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let q = Ring::rat();
        let m = Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 1]);
        let b = vec![q.from_i64(3), q.from_i64(1)];
        let x = solve(&m, &b).unwrap().unwrap();
        assert!(q.eq(&x[0], &q.from_i64(2)));
        assert!(q.eq(&x[1], &q.from_i64(1)));

        let sing = Matrix::from_i64(&q, 2, 2, &[1, 1, 2, 2]);
        let b2 = vec![q.from_i64(1), q.from_i64(3)];
        assert!(solve(&sing, &b2).unwrap().is_none());
    }

    #[test]
    fn quotient_space_coords() {
        let f5 = Ring::fp(5);
        // B = span{(1,0,0)}, Z = span{(1,0,0),(0,1,0)}; quotient is a line
        let denom = Subspace::from_vectors(
            &f5,
            3,
            vec![vec![f5.from_i64(1), f5.zero(), f5.zero()]],
        );
        let q = QuotientSpace::new(
            denom,
            vec![
                vec![f5.from_i64(1), f5.zero(), f5.zero()],
                vec![f5.from_i64(2), f5.from_i64(1), f5.zero()],
            ],
        );
        assert_eq!(q.dim(), 1);
        let v = vec![f5.from_i64(4), f5.from_i64(3), f5.zero()];
        let c = q.coords(&v).unwrap();
        assert!(f5.eq(&c[0], &f5.from_i64(3)));
        let outside = vec![f5.zero(), f5.zero(), f5.one()];
        assert!(q.coords(&outside).is_none());
    }
}
