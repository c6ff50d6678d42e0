//! Dense matrices over a runtime ring.
//!
//! Sizes in this workbench stay small (at most a few dozen rows), so the
//! representation is a flat row-major `Vec<Elem>`.  Characteristic
//! polynomials and determinants use the Berkowitz algorithm, which is
//! division-free and therefore valid over every supported ring, including
//! the non-domain Galois rings and square-zero extensions.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AlgebraError, Result};
use crate::ring::{Elem, Ring};

#[derive(Clone, Debug)]
pub struct Matrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Build from row-major integer entries.
    pub fn from_i64(ring: &Ring, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix::from_fn(ring, rows, cols, |i, j| ring.from_i64(entries[i * cols + j]))
    }

    /// Build from row-major canonical strings.
    pub fn parse(ring: &Ring, rows: usize, cols: usize, entries: &[&str]) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(rows, cols, entries.len(), 1));
        }
        let mut data = Vec::with_capacity(entries.len());
        for s in entries {
            data.push(ring.parse(s)?);
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, mut f: impl FnMut(&Elem) -> Elem) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| f(e)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let r = &self.ring;
        Ok(Matrix {
            ring: r.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| r.add(x, y))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let r = &self.ring;
        Ok(Matrix {
            ring: r.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| r.sub(x, y))
                .collect(),
        })
    }

    pub fn neg(&self) -> Matrix {
        self.map(|e| self.ring.neg(e))
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        self.map(|e| self.ring.mul(e, c))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let r = &self.ring;
        let mut out = Matrix::zero(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let t = r.mul(a, b);
                    let cur = out.get(i, j);
                    out.set(i, j, r.add(cur, &t));
                }
            }
        }
        Ok(out)
    }

    /// Apply to a vector (as a column).
    pub fn apply(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if self.cols != v.len() {
            return Err(AlgebraError::DimensionMismatch(self.rows, self.cols, v.len(), 1));
        }
        let r = &self.ring;
        let mut out = vec![r.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = r.zero();
            for j in 0..self.cols {
                let a = self.get(i, j);
                if r.is_zero(a) || r.is_zero(&v[j]) {
                    continue;
                }
                acc = r.add(&acc, &r.mul(a, &v[j]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Matrix::identity(&self.ring, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn eq_to(&self, other: &Matrix) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(x, y)| self.ring.eq(x, y))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.eq_to(&Matrix::identity(&self.ring, self.rows))
    }

    pub fn trace(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let r = &self.ring;
        let mut t = r.zero();
        for i in 0..self.rows {
            t = r.add(&t, self.get(i, i));
        }
        Ok(t)
    }

    /// Characteristic polynomial of a square matrix, ascending coefficients,
    /// monic of degree n: det(X*I - A).  Berkowitz's division-free scheme, so
    /// it is exact over non-domains as well.
    pub fn charpoly(&self) -> Result<Vec<Elem>> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let r = &self.ring;
        let n = self.rows;
        if n == 0 {
            return Ok(vec![r.one()]);
        }
        // c holds the charpoly of the leading principal minor, descending
        // coefficients: c[0] = 1 leading.
        let mut c: Vec<Elem> = vec![r.one(), r.neg(self.get(0, 0))];
        for i in 1..n {
            // Toeplitz column q: q[0] = 1, q[1] = -a_ii, q[j] = -(R M^(j-2) S).
            let mut q: Vec<Elem> = Vec::with_capacity(i + 2);
            q.push(r.one());
            q.push(r.neg(self.get(i, i)));
            // v = S (column above the diagonal entry), iterated by M.
            let mut v: Vec<Elem> = (0..i).map(|t| self.get(t, i).clone()).collect();
            for _ in 0..i {
                // R . v
                let mut dot = r.zero();
                for t in 0..i {
                    let a = self.get(i, t);
                    if r.is_zero(a) || r.is_zero(&v[t]) {
                        continue;
                    }
                    dot = r.add(&dot, &r.mul(a, &v[t]));
                }
                q.push(r.neg(&dot));
                if q.len() == i + 2 {
                    break;
                }
                // v <- M v with M the leading i x i block
                let mut nv = vec![r.zero(); i];
                for s in 0..i {
                    let mut acc = r.zero();
                    for t in 0..i {
                        let a = self.get(s, t);
                        if r.is_zero(a) || r.is_zero(&v[t]) {
                            continue;
                        }
                        acc = r.add(&acc, &r.mul(a, &v[t]));
                    }
                    nv[s] = acc;
                }
                v = nv;
            }
            q.truncate(i + 2);
            // c_next = T . c where T is lower-triangular Toeplitz with column q
            let mut next: Vec<Elem> = vec![r.zero(); i + 2];
            for (row, slot) in next.iter_mut().enumerate() {
                let mut acc = r.zero();
                for (col, cc) in c.iter().enumerate() {
                    if row >= col && row - col < q.len() {
                        let qq = &q[row - col];
                        if !r.is_zero(qq) && !r.is_zero(cc) {
                            acc = r.add(&acc, &r.mul(qq, cc));
                        }
                    }
                }
                *slot = acc;
            }
            c = next;
        }
        c.reverse();
        Ok(c)
    }

    /// Determinant via the characteristic polynomial constant term.
    pub fn det(&self) -> Result<Elem> {
        let r = &self.ring;
        let n = self.rows;
        let cp = self.charpoly()?;
        // det(X*I - A) at X = 0 is (-1)^n det(A)
        let c0 = cp[0].clone();
        Ok(if n % 2 == 0 { c0 } else { r.neg(&c0) })
    }

    /// Inverse by Gauss-Jordan with unit pivoting.  Works over fields and
    /// over local rings (Gr, SqZero), where a unit pivot always exists in
    /// some remaining row when the matrix is invertible.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let r = &self.ring;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(r, n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| r.is_unit(a.get(i, col)));
            let pivot = pivot.ok_or(AlgebraError::NotInvertible)?;
            if pivot != col {
                for j in 0..n {
                    let x = a.get(pivot, j).clone();
                    let y = a.get(col, j).clone();
                    a.set(pivot, j, y);
                    a.set(col, j, x);
                    let x = inv.get(pivot, j).clone();
                    let y = inv.get(col, j).clone();
                    inv.set(pivot, j, y);
                    inv.set(col, j, x);
                }
            }
            let pinv = r.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, r.mul(a.get(col, j), &pinv));
                inv.set(col, j, r.mul(inv.get(col, j), &pinv));
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = a.get(i, col).clone();
                if r.is_zero(&factor) {
                    continue;
                }
                for j in 0..n {
                    let t = r.mul(&factor, a.get(col, j));
                    a.set(i, j, r.sub(a.get(i, j), &t));
                    let t = r.mul(&factor, inv.get(col, j));
                    inv.set(i, j, r.sub(inv.get(i, j), &t));
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        match self.det() {
            Ok(d) => self.ring.is_unit(&d),
            Err(_) => false,
        }
    }

    /// Conjugate: g * self * g^-1.
    pub fn conjugate_by(&self, g: &Matrix) -> Result<Matrix> {
        g.mul(self)?.mul(&g.inverse()?)
    }

    /// Commutator check.
    pub fn commutes_with(&self, other: &Matrix) -> Result<bool> {
        Ok(self.mul(other)?.eq_to(&other.mul(self)?))
    }

    /// Evaluate a polynomial (ascending coefficients) at this matrix.
    pub fn eval_poly(&self, coeffs: &[Elem]) -> Result<Matrix> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let r = &self.ring;
        let n = self.rows;
        let mut acc = Matrix::zero(r, n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let cur = acc.get(i, i);
                acc.set(i, i, r.add(cur, c));
            }
        }
        Ok(acc)
    }

    /// Canonical strings of all entries, row-major.
    pub fn entry_strings(&self) -> Vec<String> {
        self.data.iter().map(|e| self.ring.canon_string(e)).collect()
    }

    /// Stable bytes for hashing group elements.
    pub fn canon_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.data.len() * 4);
        for e in &self.data {
            out.extend_from_slice(&self.ring.canon_bytes(e));
            out.push(b';');
        }
        out
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entry_strings(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        let refs: Vec<&str> = wire.entries.iter().map(|s| s.as_str()).collect();
        Matrix::parse(&wire.ring, wire.rows, wire.cols, &refs)
            .map_err(|e| D::Error::custom(format!("bad matrix: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_2x2_rational() {
        let q = Ring::rat();
        let m = Matrix::from_i64(&q, 2, 2, &[2, 1, 0, 3]);
        let cp = m.charpoly().unwrap();
        // X^2 - 5X + 6
        assert!(q.eq(&cp[0], &q.from_i64(6)));
        assert!(q.eq(&cp[1], &q.from_i64(-5)));
        assert!(q.eq(&cp[2], &q.one()));
        assert!(q.eq(&m.det().unwrap(), &q.from_i64(6)));
    }

    #[test]
    fn charpoly_3x3_det_matches_cofactor() {
        let q = Ring::rat();
        let m = Matrix::from_i64(&q, 3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 10]);
        // cofactor determinant: 1*(50-48) - 2*(40-42) + 3*(32-35) = 2 + 4 - 9 = -3
        assert!(q.eq(&m.det().unwrap(), &q.from_i64(-3)));
    }

    #[test]
    fn inverse_over_galois_ring() {
        let gr = Ring::gr(5, 2, 1);
        let m = Matrix::from_i64(&gr, 2, 2, &[1, 5, 3, 2]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_rejected() {
        let q = Ring::rat();
        let m = Matrix::from_i64(&q, 2, 2, &[1, 2, 2, 4]);
        assert!(m.inverse().is_err());
        assert!(!m.is_invertible());
    }
}
