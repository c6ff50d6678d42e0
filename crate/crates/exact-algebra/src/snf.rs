//! Smith normal form over local-PID-like coefficient rings, with the
//! valuation supplied as context: either the natural p-adic valuation of a
//! Galois ring, or the l-adic valuation on the rationals.
//!
//! The algorithm pivots on a global minimum-valuation entry, so every
//! elimination quotient is integral and exact; the transforms U and V stay
//! invertible over the integral subring (their determinants are units).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Ring};

/// Valuation context for SNF and related local computations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    /// l-adic valuation on Ring::Rat.
    PAdic { l: u64 },
    /// The natural valuation of Ring::Gr (p-adic on coefficients).
    GrNatural,
}

impl Valuation {
    /// Valuation of an element; None for zero.
    pub fn of(&self, ring: &Ring, x: &Elem) -> Option<i64> {
        match (self, ring, x) {
            (Valuation::PAdic { l }, Ring::Rat, Elem::Rat(r)) => {
                if r.is_zero() {
                    return None;
                }
                Some(bigint_val(r.numer(), *l) - bigint_val(r.denom(), *l))
            }
            (Valuation::GrNatural, Ring::Gr { .. }, _) => {
                ring.gr_valuation(x).map(|v| v as i64)
            }
            _ => panic!("valuation context does not match ring {}", ring.name()),
        }
    }

    pub fn is_integral(&self, ring: &Ring, x: &Elem) -> bool {
        match self.of(ring, x) {
            None => true,
            Some(v) => v >= 0,
        }
    }

    /// uniformizer^v as a ring element (v may be negative for PAdic).
    pub fn uniformizer_pow(&self, ring: &Ring, v: i64) -> Result<Elem> {
        match (self, ring) {
            (Valuation::PAdic { l }, Ring::Rat) => {
                let base = BigRational::from(BigInt::from(*l));
                let mut acc = BigRational::one();
                for _ in 0..v.unsigned_abs() {
                    acc *= &base;
                }
                if v < 0 {
                    acc = acc.recip();
                }
                Ok(Elem::Rat(acc))
            }
            (Valuation::GrNatural, Ring::Gr { p, .. }) => {
                if v < 0 {
                    return Err(AlgebraError::Unsupported {
                        ring: ring.name(),
                        what: "negative uniformizer power".into(),
                    });
                }
                Ok(ring.from_u64(p.pow(v as u32)))
            }
            _ => panic!("valuation context does not match ring {}", ring.name()),
        }
    }

    /// Exact quotient x / y valid whenever val(x) >= val(y); over Gr the
    /// quotient uses canonical integer representatives so that q * y == x
    /// holds exactly in the ring.
    pub fn exact_div(&self, ring: &Ring, x: &Elem, y: &Elem) -> Result<Elem> {
        match (self, ring) {
            (Valuation::PAdic { .. }, Ring::Rat) => ring.div(x, y),
            (Valuation::GrNatural, Ring::Gr { .. }) => {
                if ring.is_zero(x) {
                    return Ok(ring.zero());
                }
                let (vx, ux) = ring.gr_unit_part(x).ok_or(AlgebraError::DivisionByZero)?;
                let (vy, uy) = ring.gr_unit_part(y).ok_or(AlgebraError::DivisionByZero)?;
                if vx < vy {
                    return Err(AlgebraError::Unsupported {
                        ring: ring.name(),
                        what: "inexact local division".into(),
                    });
                }
                let shift = self.uniformizer_pow(ring, (vx - vy) as i64)?;
                let q = ring.mul(&shift, &ring.mul(&ux, &ring.inv(&uy)?));
                Ok(q)
            }
            _ => panic!("valuation context does not match ring {}", ring.name()),
        }
    }
}

fn bigint_val(n: &BigInt, l: u64) -> i64 {
    let mut v = 0i64;
    let mut n = n.abs();
    let l = BigInt::from(l);
    while (&n % &l).is_zero() {
        n /= &l;
        v += 1;
    }
    v
}

/// Result of a Smith normal form computation: u * m * v = d with d diagonal,
/// consecutive divisibility along the diagonal, and u, v invertible over the
/// integral subring.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub d: Matrix,
    pub u: Matrix,
    pub v: Matrix,
    /// Valuations of the diagonal entries, None for zero entries.
    pub divisor_valuations: Vec<Option<i64>>,
}

impl SmithNormalForm {
    /// The nonzero diagonal entries.
    pub fn divisors(&self) -> Vec<Elem> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Smith normal form with valuation pivoting.
pub fn smith_normal_form(m: &Matrix, val: &Valuation) -> Result<SmithNormalForm> {
    let ring = &m.ring;
    match (val, ring) {
        (Valuation::PAdic { .. }, Ring::Rat) | (Valuation::GrNatural, Ring::Gr { .. }) => {}
        _ => {
            return Err(AlgebraError::Unsupported {
                ring: ring.name(),
                what: "smith normal form valuation context".into(),
            })
        }
    }
    let mut a = m.clone();
    let mut u = Matrix::identity(ring, m.rows);
    let mut v = Matrix::identity(ring, m.cols);
    let steps = m.rows.min(m.cols);
    let mut divisor_valuations: Vec<Option<i64>> = vec![None; steps];

    for t in 0..steps {
        // locate the minimum-valuation nonzero entry in the trailing block
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                if let Some(w) = val.of(ring, a.get(i, j)) {
                    if best.map_or(true, |(_, _, bw)| w < bw) {
                        best = Some((i, j, w));
                    }
                }
            }
        }
        let (pi, pj, pval) = match best {
            None => break, // trailing block is zero
            Some(b) => b,
        };
        swap_rows(&mut a, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        // normalize the pivot to uniformizer^val
        let target = val.uniformizer_pow(ring, pval)?;
        let unit = val.exact_div(ring, &target, a.get(t, t))?;
        scale_row(&mut a, t, &unit);
        scale_row(&mut u, t, &unit);

        // clear the pivot column with row operations
        for i in t + 1..m.rows {
            let e = a.get(i, t).clone();
            if ring.is_zero(&e) {
                continue;
            }
            let q = val.exact_div(ring, &e, a.get(t, t))?;
            row_sub(&mut a, i, t, &q);
            row_sub(&mut u, i, t, &q);
        }
        // clear the pivot row with column operations
        for j in t + 1..m.cols {
            let e = a.get(t, j).clone();
            if ring.is_zero(&e) {
                continue;
            }
            let q = val.exact_div(ring, &e, a.get(t, t))?;
            col_sub(&mut a, j, t, &q);
            col_sub(&mut v, j, t, &q);
        }
        divisor_valuations[t] = Some(pval);
    }

    let check = u.mul(m)?.mul(&v)?;
    if !check.eq_to(&a) {
        return Err(AlgebraError::Inconsistent);
    }
    // divisibility chain
    let mut prev: Option<i64> = None;
    for w in divisor_valuations.iter().flatten() {
        if let Some(p) = prev {
            if *w < p {
                return Err(AlgebraError::Inconsistent);
            }
        }
        prev = Some(*w);
    }
    Ok(SmithNormalForm {
        d: a,
        u,
        v,
        divisor_valuations,
    })
}

fn swap_rows(m: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols {
        let x = m.get(i, c).clone();
        let y = m.get(j, c).clone();
        m.set(i, c, y);
        m.set(j, c, x);
    }
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..m.rows {
        let x = m.get(r, i).clone();
        let y = m.get(r, j).clone();
        m.set(r, i, y);
        m.set(r, j, x);
    }
}

fn scale_row(m: &mut Matrix, i: usize, c: &Elem) {
    let ring = m.ring.clone();
    for j in 0..m.cols {
        let t = ring.mul(m.get(i, j), c);
        m.set(i, j, t);
    }
}

/// row_i -= q * row_t
fn row_sub(m: &mut Matrix, i: usize, t: usize, q: &Elem) {
    let ring = m.ring.clone();
    for j in 0..m.cols {
        let s = ring.mul(q, m.get(t, j));
        let x = ring.sub(m.get(i, j), &s);
        m.set(i, j, x);
    }
}

/// col_j -= q * col_t
fn col_sub(m: &mut Matrix, j: usize, t: usize, q: &Elem) {
    let ring = m.ring.clone();
    for i in 0..m.rows {
        let s = ring.mul(q, m.get(i, t));
        let x = ring.sub(m.get(i, j), &s);
        m.set(i, j, x);
    }
}

/// Solve m x = b over a Galois ring via SNF; returns one solution or None.
pub fn solve_local(m: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let ring = &m.ring;
    let val = Valuation::GrNatural;
    let snf = smith_normal_form(m, &val)?;
    // d y = u b, x = v y
    let ub = snf.u.apply(b)?;
    let steps = m.rows.min(m.cols);
    let mut y = vec![ring.zero(); m.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < steps {
            let d = snf.d.get(i, i);
            if ring.is_zero(d) {
                if !ring.is_zero(ubi) {
                    return Ok(None);
                }
            } else {
                match val.exact_div(ring, ubi, d) {
                    Ok(q) => y[i] = q,
                    Err(_) => return Ok(None),
                }
            }
        } else if !ring.is_zero(ubi) {
            return Ok(None);
        }
    }
    Ok(Some(snf.v.apply(&y)?))
}

/// Kernel generators of m over a Galois ring GR(p^k, f): columns v_i for
/// zero divisors, and p^(k - a_i) v_i for divisors of valuation a_i > 0.
pub fn kernel_local(m: &Matrix) -> Result<Vec<Vec<Elem>>> {
    let ring = &m.ring;
    let k = match ring {
        Ring::Gr { k, .. } => *k as i64,
        _ => {
            return Err(AlgebraError::Unsupported {
                ring: ring.name(),
                what: "local kernel".into(),
            })
        }
    };
    let snf = smith_normal_form(m, &Valuation::GrNatural)?;
    let val = Valuation::GrNatural;
    let mut gens = Vec::new();
    for j in 0..m.cols {
        let dv = if j < snf.divisor_valuations.len() {
            snf.divisor_valuations[j]
        } else {
            None
        };
        let scale = match dv {
            None => Some(ring.one()),
            Some(a) if a > 0 => Some(val.uniformizer_pow(ring, k - a)?),
            Some(_) => None,
        };
        if let Some(c) = scale {
            let col: Vec<Elem> = (0..m.cols).map(|i| ring.mul(snf.v.get(i, j), &c)).collect();
            if col.iter().any(|e| !ring.is_zero(e)) {
                gens.push(col);
            }
        }
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_rational_2adic() {
        let q = Ring::rat();
        let m = Matrix::from_i64(&q, 2, 2, &[2, 3, 4, 7]);
        let snf = smith_normal_form(&m, &Valuation::PAdic { l: 2 }).unwrap();
        assert_eq!(snf.divisor_valuations, vec![Some(0), Some(1)]);
        let prod = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert!(prod.eq_to(&snf.d));
        // transforms integral with unit determinant
        let val = Valuation::PAdic { l: 2 };
        for mat in [&snf.u, &snf.v] {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(val.is_integral(&q, mat.get(i, j)));
                }
            }
            let d = mat.det().unwrap();
            assert_eq!(val.of(&q, &d), Some(0));
        }
    }

    #[test]
    fn snf_galois_ring() {
        let gr = Ring::gr(5, 2, 1);
        let m = Matrix::from_i64(&gr, 2, 3, &[5, 10, 3, 15, 5, 10]);
        let snf = smith_normal_form(&m, &Valuation::GrNatural).unwrap();
        let prod = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert!(prod.eq_to(&snf.d));
        // min valuation entry is the unit 3, so first divisor is 1
        assert_eq!(snf.divisor_valuations[0], Some(0));
    }

    #[test]
    fn solve_local_divisible() {
        let gr = Ring::gr(5, 2, 1);
        let m = Matrix::from_i64(&gr, 2, 2, &[5, 0, 0, 1]);
        let b = vec![gr.from_i64(10), gr.from_i64(3)];
        let x = solve_local(&m, &b).unwrap().unwrap();
        let out = m.apply(&x).unwrap();
        assert!(gr.eq(&out[0], &b[0]));
        assert!(gr.eq(&out[1], &b[1]));
        // 5x = 3 insoluble mod 25
        let b2 = vec![gr.from_i64(3), gr.from_i64(0)];
        assert!(solve_local(&m, &b2).unwrap().is_none());
    }

    #[test]
    fn kernel_local_torsion() {
        let gr = Ring::gr(5, 2, 1);
        let m = Matrix::from_i64(&gr, 1, 2, &[5, 0]);
        let gens = kernel_local(&m).unwrap();
        // kernel = {(a, b): 5a = 0} generated by (5, 0) and (0, 1)
        for g in &gens {
            let out = m.apply(g).unwrap();
            assert!(out.iter().all(|e| gr.is_zero(e)));
        }
        assert!(gens.len() == 2);
    }
}
