//! Dense univariate polynomial arithmetic over a field ring, ascending
//! coefficients.  Used for minimal polynomials, squarefree parts, and
//! characteristic polynomial bookkeeping.

use crate::error::{AlgebraError, Result};
use crate::ring::{Elem, Ring};

pub fn trim(ring: &Ring, a: &mut Vec<Elem>) {
    while a.len() > 1 && ring.is_zero(a.last().unwrap()) {
        a.pop();
    }
}

pub fn is_zero(ring: &Ring, a: &[Elem]) -> bool {
    a.iter().all(|c| ring.is_zero(c))
}

pub fn degree(ring: &Ring, a: &[Elem]) -> Option<usize> {
    a.iter().rposition(|c| !ring.is_zero(c))
}

pub fn add(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| ring.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.push(ring.add(&x, &y));
    }
    trim(ring, &mut out);
    out
}

pub fn sub(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let neg_b: Vec<Elem> = b.iter().map(|c| ring.neg(c)).collect();
    add(ring, a, &neg_b)
}

pub fn mul(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if is_zero(ring, a) || is_zero(ring, b) {
        return vec![ring.zero()];
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if ring.is_zero(y) {
                continue;
            }
            let t = ring.mul(x, y);
            out[i + j] = ring.add(&out[i + j], &t);
        }
    }
    trim(ring, &mut out);
    out
}

pub fn scale(ring: &Ring, a: &[Elem], c: &Elem) -> Vec<Elem> {
    let mut out: Vec<Elem> = a.iter().map(|x| ring.mul(x, c)).collect();
    trim(ring, &mut out);
    out
}

/// Division with remainder; the divisor's leading coefficient must be a unit.
pub fn divrem(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let db = degree(ring, b).ok_or(AlgebraError::DivisionByZero)?;
    let lead_inv = ring.inv(&b[db])?;
    let mut r: Vec<Elem> = a.to_vec();
    trim(ring, &mut r);
    let da = match degree(ring, &r) {
        Some(d) => d,
        None => return Ok((vec![ring.zero()], vec![ring.zero()])),
    };
    if da < db {
        return Ok((vec![ring.zero()], r));
    }
    let mut q = vec![ring.zero(); da - db + 1];
    for i in (db..=da).rev() {
        if ring.is_zero(&r[i]) {
            continue;
        }
        let c = ring.mul(&r[i], &lead_inv);
        q[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            if ring.is_zero(bj) {
                continue;
            }
            let t = ring.mul(&c, bj);
            r[i - db + j] = ring.sub(&r[i - db + j], &t);
        }
    }
    r.truncate(db.max(1));
    trim(ring, &mut r);
    trim(ring, &mut q);
    Ok((q, r))
}

/// Monic normalization of a nonzero polynomial.
pub fn monic(ring: &Ring, a: &[Elem]) -> Result<Vec<Elem>> {
    let d = degree(ring, a).ok_or(AlgebraError::DivisionByZero)?;
    let inv = ring.inv(&a[d])?;
    let mut out = scale(ring, &a[..=d], &inv);
    trim(ring, &mut out);
    Ok(out)
}

/// Monic gcd over a field.
pub fn gcd(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(ring, &mut x);
    trim(ring, &mut y);
    while !is_zero(ring, &y) {
        let (_, r) = divrem(ring, &x, &y)?;
        x = y;
        y = r;
    }
    if is_zero(ring, &x) {
        return Ok(vec![ring.zero()]);
    }
    monic(ring, &x)
}

pub fn derivative(ring: &Ring, a: &[Elem]) -> Vec<Elem> {
    if a.len() <= 1 {
        return vec![ring.zero()];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        let k = ring.from_u64(i as u64);
        out.push(ring.mul(&k, c));
    }
    trim(ring, &mut out);
    out
}

/// Squarefree part m / gcd(m, m') of a monic polynomial.
pub fn squarefree_part(ring: &Ring, m: &[Elem]) -> Result<Vec<Elem>> {
    let d = derivative(ring, m);
    if is_zero(ring, &d) {
        // inseparable; cannot happen over the perfect fields in scope,
        // but fail loudly rather than loop
        return Err(AlgebraError::NotSeparable);
    }
    let g = gcd(ring, m, &d)?;
    let (q, r) = divrem(ring, m, &g)?;
    if !is_zero(ring, &r) {
        return Err(AlgebraError::NotSeparable);
    }
    monic(ring, &q)
}

pub fn eval(ring: &Ring, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = ring.zero();
    for c in a.iter().rev() {
        acc = ring.mul(&acc, x);
        acc = ring.add(&acc, c);
    }
    acc
}

pub fn eq(ring: &Ring, a: &[Elem], b: &[Elem]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(ring, &mut x);
    trim(ring, &mut y);
    x.len() == y.len() && x.iter().zip(&y).all(|(u, v)| ring.eq(u, v))
}

/// Render ascending coefficients as a polynomial in X.
pub fn to_string(ring: &Ring, a: &[Elem]) -> String {
    let mut terms = Vec::new();
    for (i, c) in a.iter().enumerate() {
        if ring.is_zero(c) {
            continue;
        }
        let cs = ring.canon_string(c);
        let body = match i {
            0 => cs,
            1 => {
                if cs == "1" {
                    "X".into()
                } else {
                    format!("({cs})*X")
                }
            }
            _ => {
                if cs == "1" {
                    format!("X^{i}")
                } else {
                    format!("({cs})*X^{i}")
                }
            }
        };
        terms.push(body);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
