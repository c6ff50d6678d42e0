use exact_algebra::{Elem, Matrix, Ring};

use crate::error::{DeformationError, Result};

/// Largest coefficient ring we are willing to enumerate outright.
const ENUM_LIMIT: u64 = 1 << 20;

/// A finite local coefficient ring together with its residue map, used as a
/// test object for lifting problems.
///
/// Accepted kinds: finite fields themselves (the degenerate case), Galois
/// rings GR(p^k, f), and square-zero extensions F[e_1..e_k]/(e_ie_j) of a
/// finite field.  Construction verifies locality by exhaustion: the non-units
/// must be exactly the maximal ideal.
#[derive(Clone, Debug)]
pub struct ArtinianTestRing {
    ring: Ring,
    residue_field: Ring,
    max_ideal: Vec<Elem>,
    cardinality: u64,
}

impl ArtinianTestRing {
    pub fn new(ring: Ring) -> Result<Self> {
        if !ring.is_finite() {
            return Err(DeformationError::NotArtinianLocal(ring.name()));
        }
        let residue_field = ring
            .residue_ring()
            .ok_or_else(|| DeformationError::NotArtinianLocal(ring.name()))?;
        if !residue_field.is_field() || !residue_field.is_finite() {
            return Err(DeformationError::NotArtinianLocal(ring.name()));
        }
        let elements = ring.enumerate(ENUM_LIMIT)?;
        let mut max_ideal = Vec::new();
        for x in &elements {
            let in_m = ring
                .in_max_ideal(x)
                .ok_or_else(|| DeformationError::NotArtinianLocal(ring.name()))?;
            if in_m != !ring.is_unit(x) {
                return Err(DeformationError::NotArtinianLocal(ring.name()));
            }
            if in_m {
                max_ideal.push(x.clone());
            }
        }
        let cardinality = elements.len() as u64;
        Ok(ArtinianTestRing {
            ring,
            residue_field,
            max_ideal,
            cardinality,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn residue_field(&self) -> &Ring {
        &self.residue_field
    }

    pub fn cardinality(&self) -> u64 {
        self.cardinality
    }

    /// All elements of the maximal ideal, zero included, in enumeration order.
    pub fn max_ideal_elements(&self) -> &[Elem] {
        &self.max_ideal
    }

    pub fn is_field(&self) -> bool {
        self.max_ideal.len() == 1
    }

    pub fn residue(&self, x: &Elem) -> Elem {
        self.ring.residue(x).expect("validated local kind")
    }

    pub fn residue_matrix(&self, m: &Matrix) -> Matrix {
        Matrix::from_fn(&self.residue_field, m.rows, m.cols, |i, j| {
            self.residue(m.get(i, j))
        })
    }

    /// Coefficientwise section of the residue map (additive, not multiplicative).
    pub fn lift(&self, xbar: &Elem) -> Elem {
        self.ring.lift_residue(xbar).expect("validated local kind")
    }

    pub fn lift_matrix(&self, mbar: &Matrix) -> Matrix {
        Matrix::from_fn(&self.ring, mbar.rows, mbar.cols, |i, j| {
            self.lift(mbar.get(i, j))
        })
    }

    /// The multiplicative lift of a residue element.
    ///
    /// Over a Galois ring GR(p^k, f) this is x ↦ x̂^(q^(k−1)) with q = p^f,
    /// which is independent of the chosen section x̂; over a field or a
    /// square-zero extension the coefficientwise lift is already a ring map.
    pub fn teichmuller(&self, xbar: &Elem) -> Elem {
        let lifted = self.lift(xbar);
        match &self.ring {
            Ring::Gr { p, k, modulus } => {
                let f = (modulus.len() - 1) as u32;
                let q = p.pow(f);
                let e = q.pow(*k - 1);
                self.ring.pow_u64(&lifted, e)
            }
            _ => lifted,
        }
    }

    /// Every matrix congruent to the identity modulo the maximal ideal,
    /// i.e. the kernel of GL_n(A) → GL_n(F), in deterministic order.
    pub fn kernel_matrices(&self, n: usize, budget: u64) -> Result<Vec<Matrix>> {
        let m = self.max_ideal.len() as u64;
        let cells = n * n;
        let mut count: u64 = 1;
        for _ in 0..cells {
            count = count
                .checked_mul(m)
                .ok_or(DeformationError::Budget { budget })?;
            if count > budget {
                return Err(DeformationError::Budget { budget });
            }
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut idx = vec![0usize; cells];
        loop {
            let mut mat = Matrix::identity(&self.ring, n);
            for (pos, &choice) in idx.iter().enumerate() {
                let (i, j) = (pos / n, pos % n);
                let v = self.ring.add(mat.get(i, j), &self.max_ideal[choice]);
                mat.set(i, j, v);
            }
            out.push(mat);
            let mut pos = 0;
            loop {
                if pos == cells {
                    return Ok(out);
                }
                idx[pos] += 1;
                if idx[pos] < self.max_ideal.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn galois_ring_is_accepted_and_measured() {
        let a = ArtinianTestRing::new(Ring::gr(5, 2, 1)).unwrap();
        assert_eq!(a.cardinality(), 25);
        assert_eq!(a.max_ideal_elements().len(), 5);
        assert!(!a.is_field());
        assert_eq!(a.residue_field(), &Ring::fp(5));
        let k = a.kernel_matrices(2, 10_000).unwrap();
        assert_eq!(k.len(), 625);
        assert!(k[0].is_identity());
        assert!(k.iter().all(|g| a.residue_matrix(g).is_identity()));
    }

    #[test]
    fn dual_numbers_kernel_size() {
        let a = ArtinianTestRing::new(Ring::sq_zero(Ring::fp(5), 1).unwrap()).unwrap();
        assert_eq!(a.cardinality(), 25);
        assert_eq!(a.kernel_matrices(2, 10_000).unwrap().len(), 625);
    }

    #[test]
    fn field_case_is_degenerate() {
        let a = ArtinianTestRing::new(Ring::fq(5, 2)).unwrap();
        assert!(a.is_field());
        assert_eq!(a.kernel_matrices(2, 10).unwrap().len(), 1);
    }

    #[test]
    fn global_rings_are_rejected() {
        assert!(ArtinianTestRing::new(Ring::rat()).is_err());
        assert!(ArtinianTestRing::new(Ring::quad(2).unwrap()).is_err());
    }

    #[test]
    fn teichmuller_is_multiplicative_on_residue_units() {
        let a = ArtinianTestRing::new(Ring::gr(5, 2, 1)).unwrap();
        let f = a.residue_field().clone();
        let r = a.ring().clone();
        for x in 1..5u64 {
            for y in 1..5u64 {
                let tx = a.teichmuller(&f.from_u64(x));
                let ty = a.teichmuller(&f.from_u64(y));
                let txy = a.teichmuller(&f.from_u64(x * y));
                assert!(r.eq(&r.mul(&tx, &ty), &txy));
            }
        }
        // The only fourth roots of unity in Z/25 are 1, 7, 18, 24.
        assert!(r.eq(&a.teichmuller(&f.from_u64(2)), &r.from_u64(7)));
        assert!(r.eq(&a.teichmuller(&f.from_u64(3)), &r.from_u64(18)));
    }

    #[test]
    fn teichmuller_budget_guard() {
        let a = ArtinianTestRing::new(Ring::gr(2, 3, 1)).unwrap();
        assert_eq!(a.cardinality(), 8);
        assert_eq!(a.max_ideal_elements().len(), 4);
        assert!(a.kernel_matrices(2, 100).is_err());
        assert_eq!(a.kernel_matrices(2, 256).unwrap().len(), 256);
    }
}
