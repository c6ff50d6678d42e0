//! Symmetric powers of 2x2 matrices acting on binary forms.
//!
//! `Sym^m` of the standard representation has basis
//! `X^m, X^{m-1}Y, ..., Y^m` (first-variable exponent descending).  A matrix
//! `g = [[a, b], [c, d]]` sends `X -> aX + cY` and `Y -> bX + dY`; column `j`
//! of the symmetric-power matrix lists the coefficients of
//! `(aX + cY)^{m-j} (bX + dY)^j` in that basis.

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Ring};

/// The action of `g` on binary forms of degree `m`; `sym_power(1, g) = g`
/// and `sym_power(0, g) = (1)`.
pub fn sym_power(m: usize, g: &Matrix) -> Result<Matrix> {
    if g.rows != 2 || g.cols != 2 {
        return Err(AlgebraError::DimensionMismatch(g.rows, g.cols, 2, 2));
    }
    let ring = &g.ring;
    let a = g.get(0, 0);
    let b = g.get(0, 1);
    let c = g.get(1, 0);
    let d = g.get(1, 1);
    let n = m + 1;
    let mut out = Matrix::zero(ring, n, n);
    for j in 0..n {
        // (aX + cY)^(m-j) * (bX + dY)^j, coefficients indexed by Y-degree
        let first = binary_power(ring, a, c, m - j);
        let second = binary_power(ring, b, d, j);
        let mut col = vec![ring.zero(); n];
        for (s, cs) in first.iter().enumerate() {
            for (t, ct) in second.iter().enumerate() {
                let prev = col[s + t].clone();
                col[s + t] = ring.add(&prev, &ring.mul(cs, ct));
            }
        }
        for (i, v) in col.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Coefficients of `(uX + vY)^e` by ascending `Y`-degree.
fn binary_power(ring: &Ring, u: &Elem, v: &Elem, e: usize) -> Vec<Elem> {
    let mut coeffs = vec![ring.one()];
    for _ in 0..e {
        let mut next = vec![ring.zero(); coeffs.len() + 1];
        for (i, cf) in coeffs.iter().enumerate() {
            let xi = ring.mul(cf, u);
            let prev = next[i].clone();
            next[i] = ring.add(&prev, &xi);
            let yi = ring.mul(cf, v);
            let prev = next[i + 1].clone();
            next[i + 1] = ring.add(&prev, &yi);
        }
        coeffs = next;
    }
    coeffs
}
