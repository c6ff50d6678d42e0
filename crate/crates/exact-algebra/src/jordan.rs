//! Multiplicative Jordan-Chevalley decomposition over an exact field.
//!
//! For an invertible matrix `a`, produces `a = s * u` with `s` semisimple
//! (squarefree minimal polynomial), `u` unipotent, and `s u = u s`.  The
//! semisimple part is found by Newton iteration against the squarefree part
//! of the minimal polynomial; everything stays inside the subalgebra
//! generated by `a`, which is what forces commutation.

use crate::error::{AlgebraError, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::poly;
use crate::ring::{Elem, Ring};

/// Minimal polynomial (monic, ascending coefficients) via Krylov linear
/// algebra on the full matrix space.
pub fn min_poly(a: &Matrix) -> Result<Vec<Elem>> {
    if !a.is_square() {
        return Err(AlgebraError::NotSquare(a.rows, a.cols));
    }
    let ring = &a.ring;
    if !ring.is_field() {
        return Err(AlgebraError::NotAField(ring.name()));
    }
    let n = a.rows;
    let dim = n * n;
    // powers of a, flattened
    let mut powers: Vec<Vec<Elem>> = Vec::with_capacity(n + 1);
    let mut cur = Matrix::identity(ring, n);
    for _ in 0..=n {
        powers.push(cur.entries().to_vec());
        cur = cur.mul(a)?;
    }
    for d in 1..=n {
        // try to write powers[d] as a combination of powers[0..d]
        let mat = Matrix::from_fn(ring, dim, d, |i, j| powers[j][i].clone());
        if let Some(x) = linalg::solve(&mat, &powers[d])? {
            // a^d = sum x_j a^j  =>  min poly = X^d - sum x_j X^j
            let mut coeffs: Vec<Elem> = x.iter().map(|c| ring.neg(c)).collect();
            coeffs.push(ring.one());
            return Ok(coeffs);
        }
    }
    Err(AlgebraError::Inconsistent)
}

#[derive(Clone, Debug)]
pub struct JordanChevalley {
    pub semisimple: Matrix,
    pub unipotent: Matrix,
    /// Newton iterations taken to converge.
    pub iterations: usize,
}

/// Multiplicative Jordan-Chevalley decomposition of an invertible matrix.
pub fn jordan_chevalley(a: &Matrix) -> Result<JordanChevalley> {
    let ring = &a.ring;
    if !ring.is_field() {
        return Err(AlgebraError::NotAField(ring.name()));
    }
    if !a.is_invertible() {
        return Err(AlgebraError::NotInvertible);
    }
    let m = min_poly(a)?;
    let m0 = poly::squarefree_part(ring, &m)?;
    let m0d = poly::derivative(ring, &m0);

    let mut s = a.clone();
    let mut iterations = 0usize;
    let max_iter = 2 * (usize::BITS - (a.rows.max(2) - 1).leading_zeros()) as usize + 4;
    loop {
        let val = s.eval_poly(&m0)?;
        if val.is_zero_matrix() {
            break;
        }
        if iterations >= max_iter {
            return Err(AlgebraError::NotSeparable);
        }
        let deriv = s.eval_poly(&m0d)?;
        let corr = deriv.inverse().map_err(|_| AlgebraError::NotSeparable)?;
        s = s.sub(&val.mul(&corr)?)?;
        iterations += 1;
    }
    let u = s.inverse()?.mul(a)?;

    // internal guarantees, all exact
    debug_assert!(s.mul(&u)?.eq_to(a));
    debug_assert!(u.mul(&s)?.eq_to(&s.mul(&u)?));
    Ok(JordanChevalley {
        semisimple: s,
        unipotent: u,
        iterations,
    })
}

/// Nilpotency check: returns the smallest e with n^e = 0, if any, scanning
/// exponents up to the matrix size.
pub fn nilpotency_degree(n: &Matrix) -> Result<Option<usize>> {
    if !n.is_square() {
        return Err(AlgebraError::NotSquare(n.rows, n.cols));
    }
    let mut cur = n.clone();
    for e in 1..=n.rows {
        if cur.is_zero_matrix() {
            return Ok(Some(e));
        }
        cur = cur.mul(n)?;
    }
    Ok(if cur.is_zero_matrix() {
        Some(n.rows)
    } else {
        None
    })
}

/// Exponential of a nilpotent matrix: finite series, requires the
/// characteristic to be zero or larger than the matrix size.
pub fn nilpotent_exp(n: &Matrix) -> Result<Matrix> {
    let ring = &n.ring;
    check_series_char(ring, n.rows)?;
    if nilpotency_degree(n)?.is_none() {
        return Err(AlgebraError::NotNilpotent);
    }
    let mut acc = Matrix::identity(ring, n.rows);
    let mut term = Matrix::identity(ring, n.rows);
    for j in 1..=n.rows {
        term = term.mul(n)?;
        if term.is_zero_matrix() {
            break;
        }
        let fact_inv = ring.inv(&factorial_elem(ring, j as u64))?;
        acc = acc.add(&term.scale(&fact_inv))?;
    }
    Ok(acc)
}

/// Logarithm of a unipotent matrix: finite Mercator series with the same
/// characteristic restriction.
pub fn unipotent_log(u: &Matrix) -> Result<Matrix> {
    let ring = &u.ring;
    check_series_char(ring, u.rows)?;
    let m = u.sub(&Matrix::identity(ring, u.rows))?;
    if nilpotency_degree(&m)?.is_none() {
        return Err(AlgebraError::NotUnipotent);
    }
    let mut acc = Matrix::zero(ring, u.rows, u.rows);
    let mut term = Matrix::identity(ring, u.rows);
    for j in 1..=u.rows {
        term = term.mul(&m)?;
        if term.is_zero_matrix() {
            break;
        }
        let jinv = ring.inv(&ring.from_u64(j as u64))?;
        let signed = if j % 2 == 1 {
            term.scale(&jinv)
        } else {
            term.scale(&jinv).neg()
        };
        acc = acc.add(&signed)?;
    }
    Ok(acc)
}

fn check_series_char(ring: &Ring, size: usize) -> Result<()> {
    let ch = ring.characteristic();
    if ch == 0 {
        return Ok(());
    }
    let p = ring.prime().unwrap_or(ch);
    if p as usize <= size {
        return Err(AlgebraError::CharacteristicTooSmall {
            char_p: p,
            size,
        });
    }
    Ok(())
}

fn factorial_elem(ring: &Ring, j: u64) -> Elem {
    let mut acc = ring.one();
    for i in 2..=j {
        acc = ring.mul(&acc, &ring.from_u64(i));
    }
    acc
}
