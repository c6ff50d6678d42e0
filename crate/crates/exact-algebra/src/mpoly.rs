//! Bivariate polynomials and reduced fractions over a base field.
//!
//! These back the rational-function coefficient ring in the two Satake
//! symbols `a` and `b`.  Terms are kept sorted by exponent pair with no
//! zero coefficients, so polynomial equality is structural; fraction
//! equality is decided by cross-multiplication, which is exact regardless
//! of whether a common polynomial factor has been cancelled.

use crate::ring::{Elem, Ring};

/// Polynomial in two variables with coefficients in a base field.
/// Invariant: `terms` sorted ascending by `(ea, eb)`, no zero coefficients.
#[derive(Clone, Debug)]
pub struct MPoly {
    pub terms: Vec<(u32, u32, Elem)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(base: &Ring, c: Elem) -> Self {
        let mut p = MPoly {
            terms: vec![(0, 0, c)],
        };
        p.normalize(base);
        p
    }

    pub fn one(base: &Ring) -> Self {
        MPoly::constant(base, base.one())
    }

    pub fn monomial(base: &Ring, ea: u32, eb: u32, c: Elem) -> Self {
        let mut p = MPoly {
            terms: vec![(ea, eb, c)],
        };
        p.normalize(base);
        p
    }

    pub fn var_a(base: &Ring) -> Self {
        MPoly::monomial(base, 1, 0, base.one())
    }

    pub fn var_b(base: &Ring) -> Self {
        MPoly::monomial(base, 0, 1, base.one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sort, merge duplicate exponent pairs, drop zeros.
    pub fn normalize(&mut self, base: &Ring) {
        self.terms.sort_by_key(|t| (t.0, t.1));
        let mut out: Vec<(u32, u32, Elem)> = Vec::with_capacity(self.terms.len());
        for (ea, eb, c) in self.terms.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.0 == ea && last.1 == eb {
                    last.2 = base.add(&last.2, &c);
                    continue;
                }
            }
            out.push((ea, eb, c));
        }
        out.retain(|t| !base.is_zero(&t.2));
        self.terms = out;
    }

    pub fn add(base: &Ring, x: &MPoly, y: &MPoly) -> MPoly {
        let mut terms = x.terms.clone();
        terms.extend(y.terms.iter().cloned());
        let mut p = MPoly { terms };
        p.normalize(base);
        p
    }

    pub fn neg(base: &Ring, x: &MPoly) -> MPoly {
        MPoly {
            terms: x
                .terms
                .iter()
                .map(|(a, b, c)| (*a, *b, base.neg(c)))
                .collect(),
        }
    }

    pub fn sub(base: &Ring, x: &MPoly, y: &MPoly) -> MPoly {
        MPoly::add(base, x, &MPoly::neg(base, y))
    }

    pub fn mul(base: &Ring, x: &MPoly, y: &MPoly) -> MPoly {
        let mut terms = Vec::with_capacity(x.terms.len() * y.terms.len());
        for (xa, xb, xc) in &x.terms {
            for (ya, yb, yc) in &y.terms {
                terms.push((xa + ya, xb + yb, base.mul(xc, yc)));
            }
        }
        let mut p = MPoly { terms };
        p.normalize(base);
        p
    }

    pub fn scale(base: &Ring, x: &MPoly, c: &Elem) -> MPoly {
        let mut p = MPoly {
            terms: x
                .terms
                .iter()
                .map(|(a, b, k)| (*a, *b, base.mul(k, c)))
                .collect(),
        };
        p.normalize(base);
        p
    }

    pub fn eq(base: &Ring, x: &MPoly, y: &MPoly) -> bool {
        x.terms.len() == y.terms.len()
            && x.terms
                .iter()
                .zip(&y.terms)
                .all(|(s, t)| s.0 == t.0 && s.1 == t.1 && base.eq(&s.2, &t.2))
    }

    /// Componentwise minimum of all exponent pairs; zero polynomial gives (0, 0).
    pub fn min_exps(&self) -> (u32, u32) {
        let mut ma = u32::MAX;
        let mut mb = u32::MAX;
        for (a, b, _) in &self.terms {
            ma = ma.min(*a);
            mb = mb.min(*b);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (ma, mb)
        }
    }

    /// Exact division by the monomial a^da * b^db.
    pub fn shift_down(&self, da: u32, db: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(a, b, c)| (a - da, b - db, c.clone()))
                .collect(),
        }
    }

    /// Leading term in the (ea, eb) lexicographic order.
    pub fn leading(&self) -> Option<&(u32, u32, Elem)> {
        self.terms.last()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(a, b, _)| a + b).max().unwrap_or(0)
    }
}

/// A fraction of bivariate polynomials over a base field.
///
/// Normal form: the denominator is nonzero with lex-leading coefficient 1,
/// and no common monomial factor remains between numerator and denominator.
/// A common non-monomial polynomial factor may survive; equality is decided
/// by cross-multiplication, which does not care.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: MPoly,
    pub den: MPoly,
}

impl Frac {
    /// Build a normalized fraction.  `den` must be nonzero.
    pub fn new(base: &Ring, num: MPoly, den: MPoly) -> Frac {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Frac {
                num,
                den: MPoly::one(base),
            };
        }
        let (na, nb) = num.min_exps();
        let (da, db) = den.min_exps();
        let (ca, cb) = (na.min(da), nb.min(db));
        let mut num = num.shift_down(ca, cb);
        let mut den = den.shift_down(ca, cb);
        let lead = den.leading().expect("nonzero denominator").2.clone();
        if !base.eq(&lead, &base.one()) {
            let linv = base.inv(&lead).expect("leading coefficient in a field");
            num = MPoly::scale(base, &num, &linv);
            den = MPoly::scale(base, &den, &linv);
        }
        Frac { num, den }
    }

    pub fn from_poly(base: &Ring, num: MPoly) -> Frac {
        Frac {
            num,
            den: MPoly::one(base),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(base: &Ring, x: &Frac, y: &Frac) -> Frac {
        let num = MPoly::add(
            base,
            &MPoly::mul(base, &x.num, &y.den),
            &MPoly::mul(base, &y.num, &x.den),
        );
        let den = MPoly::mul(base, &x.den, &y.den);
        Frac::new(base, num, den)
    }

    pub fn neg(base: &Ring, x: &Frac) -> Frac {
        Frac {
            num: MPoly::neg(base, &x.num),
            den: x.den.clone(),
        }
    }

    pub fn mul(base: &Ring, x: &Frac, y: &Frac) -> Frac {
        let num = MPoly::mul(base, &x.num, &y.num);
        let den = MPoly::mul(base, &x.den, &y.den);
        Frac::new(base, num, den)
    }

    /// Reciprocal; errors upstream guard against zero.
    pub fn recip(base: &Ring, x: &Frac) -> Frac {
        Frac::new(base, x.den.clone(), x.num.clone())
    }

    pub fn eq(base: &Ring, x: &Frac, y: &Frac) -> bool {
        MPoly::eq(
            base,
            &MPoly::mul(base, &x.num, &y.den),
            &MPoly::mul(base, &y.num, &x.den),
        )
    }
}
