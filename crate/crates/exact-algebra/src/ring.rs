//! Runtime-described coefficient rings and their elements.
//!
//! A [`Ring`] value is a complete description of a coefficient ring and an
//! [`Elem`] is element data that only has meaning relative to a ring.  All
//! arithmetic is mediated by the ring, which lets matrices, cochains and
//! deformation data move between prime fields, Galois rings, cyclotomic
//! fields and the symbolic function field without type-level plumbing.
//!
//! Supported kinds:
//! * `Fp`            — prime field F_p
//! * `Fq`            — F_{p^f} as F_p[w]/(modulus)
//! * `Gr`            — Galois ring GR(p^k, f) = (Z/p^k)[w]/(modulus)
//! * `Rat`           — rational numbers
//! * `Quad`          — Q(s), s^2 = q for a non-square integer q
//! * `Cyclo`         — Q(z), z a primitive n-th root of unity
//! * `RatFunc`       — rational functions in the symbols a, b over a field
//! * `SqZero`        — F[e_1..e_k]/(e_i e_j), square-zero test extensions

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::mpoly::{Frac, MPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ring {
    Fp {
        p: u64,
    },
    Fq {
        p: u64,
        modulus: Vec<u64>,
    },
    Gr {
        p: u64,
        k: u32,
        modulus: Vec<u64>,
    },
    Rat,
    Quad {
        q: u64,
    },
    Cyclo {
        n: u64,
        phi: Vec<i64>,
    },
    RatFunc {
        base: Box<Ring>,
    },
    SqZero {
        base: Box<Ring>,
        k: u8,
    },
}

#[derive(Clone, Debug)]
pub enum Elem {
    /// Residue in F_p.
    U(u64),
    /// Coefficient vector (ascending, fixed length f) for Fq or Gr.
    Poly(Vec<u64>),
    /// Rational number.
    Rat(BigRational),
    /// Rational coordinate vector: length 2 for Quad (1, s), length deg(phi) for Cyclo.
    RatVec(Vec<BigRational>),
    /// Square-zero extension coordinates: length k+1 over the base field.
    Nested(Vec<Elem>),
    /// Rational function.
    Frac(Box<Frac>),
}

// ---------------------------------------------------------------------------
// small modular arithmetic helpers
// ---------------------------------------------------------------------------

fn umod(a: i64, m: u64) -> u64 {
    let r = a % m as i64;
    if r < 0 {
        (r + m as i64) as u64
    } else {
        r as u64
    }
}

fn inv_mod_prime(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // extended Euclid
    let (mut t, mut newt): (i128, i128) = (0, 1);
    let (mut r, mut newr): (i128, i128) = (p as i128, (a % p) as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    if r != 1 {
        return None;
    }
    let mut t = t % p as i128;
    if t < 0 {
        t += p as i128;
    }
    Some(t as u64)
}

/// `b^e mod m` by binary powering; `m` must be nonzero.
pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut bb = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    acc as u64
}

/// p-adic valuation of a nonzero residue class representative.
fn int_val_p(mut a: u64, p: u64) -> u32 {
    let mut v = 0;
    while a != 0 && a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

fn is_square_u64(q: u64) -> bool {
    let r = (q as f64).sqrt() as u64;
    for c in r.saturating_sub(2)..=r + 2 {
        if c * c == q {
            return true;
        }
    }
    false
}

// dense polynomial helpers over Z/m (coefficients u64, m < 2^32)

fn zm_poly_mul_mod(x: &[u64], y: &[u64], modulus: &[u64], m: u64) -> Vec<u64> {
    let f = modulus.len() - 1;
    let mut prod = vec![0u64; x.len() + y.len()];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj == 0 {
                continue;
            }
            let t = (xi as u128 * yj as u128 + prod[i + j] as u128) % m as u128;
            prod[i + j] = t as u64;
        }
    }
    // reduce by the monic modulus
    for i in (f..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        let base = i - f;
        for (j, &mj) in modulus.iter().enumerate().take(f) {
            let sub = c as u128 * mj as u128 % m as u128;
            let cur = prod[base + j] as u128;
            prod[base + j] = ((cur + m as u128 * m as u128 - sub) % m as u128) as u64;
        }
    }
    prod.truncate(f.max(1));
    prod.resize(f.max(1), 0);
    prod
}

// polynomial arithmetic over F_p for modulus generation (variable length)

fn fp_poly_trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_poly_trim(&mut r);
    let mut bb = b.to_vec();
    fp_poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = inv_mod_prime(bb[db], p).expect("nonzero leading coefficient");
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] as u128 * lead_inv as u128 % p as u128;
        if c != 0 {
            let shift = dr - db;
            for (j, &bj) in bb.iter().enumerate() {
                let sub = c * bj as u128 % p as u128;
                let cur = r[shift + j] as u128;
                r[shift + j] = ((cur + p as u128 - sub) % p as u128) as u64;
            }
        }
        r.pop();
        fp_poly_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    fp_poly_trim(&mut r);
    r
}

fn fp_poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_poly_trim(&mut x);
    fp_poly_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = fp_poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn fp_poly_powmod(base: &[u64], mut e: BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len() - 1;
    let mut acc = vec![0u64; f.max(1)];
    acc[0] = 1;
    let mut b = zm_poly_mul_mod(base, &[1], modulus, p);
    let one = BigUint::one();
    while !e.is_zero() {
        if (&e & &one) == one {
            acc = zm_poly_mul_mod(&acc, &b, modulus, p);
        }
        b = zm_poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Deterministically find the lexicographically first monic irreducible of
/// degree f over F_p.
fn find_irreducible(p: u64, f: usize) -> Vec<u64> {
    assert!(f >= 2, "degree must be at least 2");
    let mut coeffs = vec![0u64; f + 1];
    coeffs[f] = 1;
    loop {
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
        // increment the low f coefficients as a base-p counter
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < f, "no irreducible polynomial found (impossible)");
        }
    }
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    let x = {
        let mut v = vec![0u64; f.max(2)];
        v[1] = 1;
        v.truncate(f.max(1));
        v.resize(f.max(1), 0);
        v
    };
    // x^(p^f) == x mod m
    let pf = BigUint::from(p).pow(f as u32);
    let xp = fp_poly_powmod(&x, pf, m, p);
    let mut diff: Vec<u64> = xp.clone();
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    fp_poly_trim(&mut diff);
    if !(diff.len() == 1 && diff[0] == 0) {
        return false;
    }
    // gcd(x^(p^(f/r)) - x, m) must be constant for every prime r | f
    let mut fr = f;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= fr {
        if fr % d == 0 {
            primes.push(d);
            while fr % d == 0 {
                fr /= d;
            }
        }
        d += 1;
    }
    if fr > 1 {
        primes.push(fr);
    }
    for r in primes {
        let e = BigUint::from(p).pow((f / r) as u32);
        let xr = fp_poly_powmod(&x, e, m, p);
        let mut diff: Vec<u64> = xr;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        fp_poly_trim(&mut diff);
        let g = fp_poly_gcd(&diff, m, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Coefficients of the n-th cyclotomic polynomial, ascending.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // Phi_d computed for all d | n by exact division of x^d - 1.
    let mut memo: Vec<(u64, Vec<i64>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mut num = vec![0i64; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        for (e, phi_e) in &memo {
            if d % e == 0 {
                num = int_poly_div_exact(&num, phi_e);
            }
        }
        memo.push((d, num));
    }
    memo.pop().expect("n >= 1").1
}

fn int_poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db] == 1 || b[db] == -1);
    let mut q = vec![0i64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i] * b[db];
        q[i - db] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i - db + j] -= c * bj;
            }
        }
    }
    assert!(r.iter().all(|&c| c == 0), "division was not exact");
    q
}

// BigRational dense polynomial helpers (for Cyclo arithmetic)

fn rat_zero() -> BigRational {
    BigRational::zero()
}

fn qq_poly_mul_reduce(x: &[BigRational], y: &[BigRational], phi: &[i64]) -> Vec<BigRational> {
    let f = phi.len() - 1;
    let mut prod = vec![rat_zero(); x.len() + y.len()];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let t = xi * yj;
            prod[i + j] += t;
        }
    }
    for i in (f..prod.len()).rev() {
        if prod[i].is_zero() {
            continue;
        }
        let c = prod[i].clone();
        prod[i] = rat_zero();
        for (j, &mj) in phi.iter().enumerate().take(f) {
            if mj != 0 {
                let sub = &c * BigRational::from(BigInt::from(mj));
                prod[i - f + j] -= sub;
            }
        }
    }
    prod.truncate(f.max(1));
    prod.resize(f.max(1), rat_zero());
    prod
}

fn qq_poly_trim(a: &mut Vec<BigRational>) {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
}

fn qq_poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    qq_poly_trim(&mut r);
    let mut bb = b.to_vec();
    qq_poly_trim(&mut bb);
    let db = bb.len() - 1;
    if r.len() < bb.len() {
        return (vec![rat_zero()], r);
    }
    let mut q = vec![rat_zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] / &bb[db];
        q[i - db] = c.clone();
        for (j, bj) in bb.iter().enumerate() {
            let sub = &c * bj;
            r[i - db + j] -= sub;
        }
    }
    qq_poly_trim(&mut r);
    r.truncate(db.max(1));
    qq_poly_trim(&mut r);
    (q, r)
}

/// Extended gcd over Q[x]: returns (g, u) with u*a === g mod b, g = gcd(a, b).
fn qq_poly_half_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    qq_poly_trim(&mut r0);
    qq_poly_trim(&mut r1);
    let mut u0 = vec![BigRational::one()];
    let mut u1 = vec![rat_zero()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r2) = qq_poly_divrem(&r0, &r1);
        // u2 = u0 - q*u1
        let mut qu1 = vec![rat_zero(); q.len() + u1.len()];
        for (i, qi) in q.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            for (j, uj) in u1.iter().enumerate() {
                let t = qi * uj;
                qu1[i + j] += t;
            }
        }
        let mut u2 = vec![rat_zero(); u0.len().max(qu1.len())];
        for (i, c) in u0.iter().enumerate() {
            u2[i] += c;
        }
        for (i, c) in qu1.iter().enumerate() {
            u2[i] -= c;
        }
        qq_poly_trim(&mut u2);
        r0 = r1;
        r1 = r2;
        u0 = u1;
        u1 = u2;
    }
    (r0, u0)
}

// ---------------------------------------------------------------------------
// Ring construction
// ---------------------------------------------------------------------------

impl Ring {
    pub fn fp(p: u64) -> Ring {
        assert!(p >= 2 && p < (1 << 31), "prime out of range");
        Ring::Fp { p }
    }

    /// F_{p^f} with the lexicographically first monic irreducible modulus.
    pub fn fq(p: u64, f: usize) -> Ring {
        if f <= 1 {
            return Ring::fp(p);
        }
        Ring::Fq {
            p,
            modulus: find_irreducible(p, f),
        }
    }

    /// Galois ring GR(p^k, f).  The modulus is the integer lift of the
    /// degree-f irreducible used for F_{p^f}.
    pub fn gr(p: u64, k: u32, f: usize) -> Ring {
        assert!(k >= 1);
        let pk = p.checked_pow(k).expect("p^k fits in u64");
        assert!(pk < (1 << 32), "p^k out of range for exact arithmetic");
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, f)
        };
        Ring::Gr { p, k, modulus }
    }

    pub fn rat() -> Ring {
        Ring::Rat
    }

    pub fn quad(q: u64) -> Result<Ring> {
        if q < 2 || is_square_u64(q) {
            return Err(AlgebraError::BadRing(format!(
                "quadratic extension needs a non-square q >= 2, got {q}"
            )));
        }
        Ok(Ring::Quad { q })
    }

    pub fn cyclo(n: u64) -> Result<Ring> {
        if n < 2 || n > 1000 {
            return Err(AlgebraError::BadRing(format!(
                "cyclotomic order must be in 2..=1000, got {n}"
            )));
        }
        Ok(Ring::Cyclo {
            n,
            phi: cyclotomic_poly(n),
        })
    }

    pub fn rat_func(base: Ring) -> Result<Ring> {
        if !base.is_field() {
            return Err(AlgebraError::BadRing(
                "rational-function coefficients need a field base".into(),
            ));
        }
        if matches!(base, Ring::RatFunc { .. }) {
            return Err(AlgebraError::BadRing(
                "nested rational-function fields are not supported".into(),
            ));
        }
        Ok(Ring::RatFunc { base: Box::new(base) })
    }

    pub fn sq_zero(base: Ring, k: u8) -> Result<Ring> {
        let ok = matches!(base, Ring::Fp { .. } | Ring::Fq { .. });
        if !ok {
            return Err(AlgebraError::BadRing(
                "square-zero extension needs a finite field base".into(),
            ));
        }
        if k == 0 || k > 4 {
            return Err(AlgebraError::BadRing(format!(
                "square-zero extension supports 1..=4 dual numbers, got {k}"
            )));
        }
        Ok(Ring::SqZero { base: Box::new(base), k })
    }

    pub fn name(&self) -> String {
        match self {
            Ring::Fp { p } => format!("F{p}"),
            Ring::Fq { p, modulus } => format!("F{}^{}", p, modulus.len() - 1),
            Ring::Gr { p, k, modulus } => format!("GR({p}^{k},{})", modulus.len() - 1),
            Ring::Rat => "Q".into(),
            Ring::Quad { q } => format!("Q(s|s^2={q})"),
            Ring::Cyclo { n, .. } => format!("Q(zeta_{n})"),
            Ring::RatFunc { base } => format!("{}(a,b)", base.name()),
            Ring::SqZero { base, k } => format!("{}[e;{k}]", base.name()),
        }
    }

    /// Modulus for coefficient arithmetic: p for Fp/Fq, p^k for Gr.
    fn coeff_mod(&self) -> u64 {
        match self {
            Ring::Fp { p } => *p,
            Ring::Fq { p, .. } => *p,
            Ring::Gr { p, k, .. } => p.pow(*k),
            _ => unreachable!("coeff_mod on non-modular ring"),
        }
    }

    fn poly_len(&self) -> usize {
        match self {
            Ring::Fq { modulus, .. } | Ring::Gr { modulus, .. } => modulus.len() - 1,
            _ => unreachable!("poly_len on non-polynomial ring"),
        }
    }

    // -- structure ----------------------------------------------------------

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Fp { .. } | Ring::Fq { .. } | Ring::Rat | Ring::Quad { .. } | Ring::Cyclo { .. } => true,
            Ring::Gr { k, .. } => *k == 1,
            Ring::RatFunc { .. } => true,
            Ring::SqZero { .. } => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(
            self,
            Ring::Fp { .. } | Ring::Fq { .. } | Ring::Gr { .. } | Ring::SqZero { .. }
        )
    }

    /// Additive order of 1 (0 in characteristic zero).  For Gr this is p^k.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Fp { p } | Ring::Fq { p, .. } => *p,
            Ring::Gr { p, k, .. } => p.pow(*k),
            Ring::Rat | Ring::Quad { .. } | Ring::Cyclo { .. } => 0,
            Ring::RatFunc { base } => base.characteristic(),
            Ring::SqZero { base, .. } => base.characteristic(),
        }
    }

    /// Residue characteristic p for the local finite kinds.
    pub fn prime(&self) -> Option<u64> {
        match self {
            Ring::Fp { p } | Ring::Fq { p, .. } | Ring::Gr { p, .. } => Some(*p),
            Ring::SqZero { base, .. } => base.prime(),
            _ => None,
        }
    }

    pub fn cardinality(&self) -> Option<BigUint> {
        match self {
            Ring::Fp { p } => Some(BigUint::from(*p)),
            Ring::Fq { p, modulus } => Some(BigUint::from(*p).pow((modulus.len() - 1) as u32)),
            Ring::Gr { p, k, modulus } => {
                Some(BigUint::from(p.pow(*k)).pow((modulus.len() - 1) as u32))
            }
            Ring::SqZero { base, k } => base.cardinality().map(|c| c.pow(*k as u32 + 1)),
            _ => None,
        }
    }

    /// All elements of a finite ring, in a deterministic order.
    pub fn enumerate(&self, limit: u64) -> Result<Vec<Elem>> {
        let card = self.cardinality().ok_or_else(|| AlgebraError::Unsupported {
            ring: self.name(),
            what: "enumeration of an infinite ring".into(),
        })?;
        let card_u = card.to_u64().ok_or_else(|| AlgebraError::Budget {
            what: format!("enumerate {}", self.name()),
            needed: u64::MAX,
            limit,
        })?;
        if card_u > limit {
            return Err(AlgebraError::Budget {
                what: format!("enumerate {}", self.name()),
                needed: card_u,
                limit,
            });
        }
        Ok(match self {
            Ring::Fp { p } => (0..*p).map(Elem::U).collect(),
            Ring::Fq { .. } | Ring::Gr { .. } => {
                let m = self.coeff_mod();
                let f = self.poly_len();
                let mut out = Vec::with_capacity(card_u as usize);
                let mut idx = vec![0u64; f];
                loop {
                    out.push(Elem::Poly(idx.clone()));
                    let mut i = 0;
                    loop {
                        if i == f {
                            return Ok(out);
                        }
                        idx[i] += 1;
                        if idx[i] < m {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                }
            }
            Ring::SqZero { base, k } => {
                let base_elems = base.enumerate(limit)?;
                let n = *k as usize + 1;
                let mut out = Vec::with_capacity(card_u as usize);
                let mut idx = vec![0usize; n];
                loop {
                    out.push(Elem::Nested(idx.iter().map(|&i| base_elems[i].clone()).collect()));
                    let mut i = 0;
                    loop {
                        if i == n {
                            return Ok(out);
                        }
                        idx[i] += 1;
                        if idx[i] < base_elems.len() {
                            break;
                        }
                        idx[i] = 0;
                        i += 1;
                    }
                }
            }
            _ => unreachable!(),
        })
    }

    // -- constants and embeddings -------------------------------------------

    pub fn zero(&self) -> Elem {
        match self {
            Ring::Fp { .. } => Elem::U(0),
            Ring::Fq { .. } | Ring::Gr { .. } => Elem::Poly(vec![0; self.poly_len()]),
            Ring::Rat => Elem::Rat(BigRational::zero()),
            Ring::Quad { .. } => Elem::RatVec(vec![rat_zero(), rat_zero()]),
            Ring::Cyclo { phi, .. } => Elem::RatVec(vec![rat_zero(); phi.len() - 1]),
            Ring::RatFunc { base } => Elem::Frac(Box::new(Frac::from_poly(base, MPoly::zero()))),
            Ring::SqZero { base, k } => {
                Elem::Nested(vec![base.zero(); *k as usize + 1])
            }
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match self {
            Ring::Fp { p } => Elem::U(umod(n, *p)),
            Ring::Fq { .. } | Ring::Gr { .. } => {
                let m = self.coeff_mod();
                let mut v = vec![0; self.poly_len()];
                v[0] = umod(n, m);
                Elem::Poly(v)
            }
            Ring::Rat => Elem::Rat(BigRational::from(BigInt::from(n))),
            Ring::Quad { .. } => Elem::RatVec(vec![BigRational::from(BigInt::from(n)), rat_zero()]),
            Ring::Cyclo { phi, .. } => {
                let mut v = vec![rat_zero(); phi.len() - 1];
                v[0] = BigRational::from(BigInt::from(n));
                Elem::RatVec(v)
            }
            Ring::RatFunc { base } => {
                let c = base.from_i64(n);
                Elem::Frac(Box::new(Frac::from_poly(base, MPoly::constant(base, c))))
            }
            Ring::SqZero { base, k } => {
                let mut v = vec![base.zero(); *k as usize + 1];
                v[0] = base.from_i64(n);
                Elem::Nested(v)
            }
        }
    }

    pub fn from_u64(&self, n: u64) -> Elem {
        if n <= i64::MAX as u64 {
            self.from_i64(n as i64)
        } else {
            let h = self.from_i64((n >> 1) as i64);
            let two = self.from_i64(2);
            let d = self.mul(&two, &h);
            if n & 1 == 1 {
                self.add(&d, &self.one())
            } else {
                d
            }
        }
    }

    /// Exact rational constant (only for characteristic-zero kinds).
    pub fn from_rational(&self, num: i64, den: i64) -> Result<Elem> {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.div(&n, &d)
    }

    /// The distinguished generator: w for Fq/Gr(f>1), s for Quad, z for Cyclo.
    pub fn generator(&self) -> Option<Elem> {
        match self {
            Ring::Fq { .. } | Ring::Gr { .. } if self.poly_len() >= 2 => {
                let mut v = vec![0; self.poly_len()];
                v[1] = 1;
                Some(Elem::Poly(v))
            }
            Ring::Quad { .. } => Some(Elem::RatVec(vec![rat_zero(), BigRational::one()])),
            Ring::Cyclo { phi, .. } => {
                let mut v = vec![rat_zero(); phi.len() - 1];
                if v.len() >= 2 {
                    v[1] = BigRational::one();
                    Some(Elem::RatVec(v))
                } else {
                    // n = 2: z = -1
                    v[0] = -BigRational::one();
                    Some(Elem::RatVec(v))
                }
            }
            _ => None,
        }
    }

    /// The i-th square-zero generator e_i (1-based) of a SqZero ring.
    pub fn epsilon(&self, i: usize) -> Option<Elem> {
        match self {
            Ring::SqZero { base, k } => {
                if i == 0 || i > *k as usize {
                    return None;
                }
                let mut v = vec![base.zero(); *k as usize + 1];
                v[i] = base.one();
                Some(Elem::Nested(v))
            }
            _ => None,
        }
    }

    /// Symbol a (first Satake symbol) of a rational-function field.
    pub fn sym_a(&self) -> Option<Elem> {
        match self {
            Ring::RatFunc { base } => {
                Some(Elem::Frac(Box::new(Frac::from_poly(base, MPoly::var_a(base)))))
            }
            _ => None,
        }
    }

    /// Symbol b (second Satake symbol) of a rational-function field.
    pub fn sym_b(&self) -> Option<Elem> {
        match self {
            Ring::RatFunc { base } => {
                Some(Elem::Frac(Box::new(Frac::from_poly(base, MPoly::var_b(base)))))
            }
            _ => None,
        }
    }

    /// Embed a base-ring scalar into a RatFunc or SqZero extension.
    pub fn lift_scalar(&self, c: &Elem) -> Result<Elem> {
        match self {
            Ring::RatFunc { base } => Ok(Elem::Frac(Box::new(Frac::from_poly(
                base,
                MPoly::constant(base, c.clone()),
            )))),
            Ring::SqZero { base, k } => {
                let mut v = vec![base.zero(); *k as usize + 1];
                v[0] = c.clone();
                Ok(Elem::Nested(v))
            }
            _ => Err(AlgebraError::Unsupported {
                ring: self.name(),
                what: "lift_scalar".into(),
            }),
        }
    }

    // -- arithmetic -----------------------------------------------------------

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Fp { p }, Elem::U(a), Elem::U(b)) => Elem::U((a + b) % p),
            (Ring::Fq { .. } | Ring::Gr { .. }, Elem::Poly(a), Elem::Poly(b)) => {
                let m = self.coeff_mod();
                Elem::Poly(a.iter().zip(b).map(|(x, y)| (x + y) % m).collect())
            }
            (Ring::Rat, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Ring::Quad { .. } | Ring::Cyclo { .. }, Elem::RatVec(a), Elem::RatVec(b)) => {
                Elem::RatVec(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Ring::RatFunc { base }, Elem::Frac(a), Elem::Frac(b)) => {
                Elem::Frac(Box::new(Frac::add(base, a, b)))
            }
            (Ring::SqZero { base, .. }, Elem::Nested(a), Elem::Nested(b)) => {
                Elem::Nested(a.iter().zip(b).map(|(x, y)| base.add(x, y)).collect())
            }
            _ => panic!("element does not belong to ring {}", self.name()),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Ring::Fp { p }, Elem::U(a)) => Elem::U((p - a) % p),
            (Ring::Fq { .. } | Ring::Gr { .. }, Elem::Poly(a)) => {
                let m = self.coeff_mod();
                Elem::Poly(a.iter().map(|x| (m - x) % m).collect())
            }
            (Ring::Rat, Elem::Rat(a)) => Elem::Rat(-a),
            (Ring::Quad { .. } | Ring::Cyclo { .. }, Elem::RatVec(a)) => {
                Elem::RatVec(a.iter().map(|x| -x).collect())
            }
            (Ring::RatFunc { base }, Elem::Frac(a)) => Elem::Frac(Box::new(Frac::neg(base, a))),
            (Ring::SqZero { base, .. }, Elem::Nested(a)) => {
                Elem::Nested(a.iter().map(|x| base.neg(x)).collect())
            }
            _ => panic!("element does not belong to ring {}", self.name()),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Fp { p }, Elem::U(a), Elem::U(b)) => {
                Elem::U((*a as u128 * *b as u128 % *p as u128) as u64)
            }
            (Ring::Fq { modulus, .. }, Elem::Poly(a), Elem::Poly(b)) => {
                Elem::Poly(zm_poly_mul_mod(a, b, modulus, self.coeff_mod()))
            }
            (Ring::Gr { modulus, .. }, Elem::Poly(a), Elem::Poly(b)) => {
                Elem::Poly(zm_poly_mul_mod(a, b, modulus, self.coeff_mod()))
            }
            (Ring::Rat, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Ring::Quad { q }, Elem::RatVec(a), Elem::RatVec(b)) => {
                let qq = BigRational::from(BigInt::from(*q));
                let c0 = &a[0] * &b[0] + (&a[1] * &b[1]) * &qq;
                let c1 = &a[0] * &b[1] + &a[1] * &b[0];
                Elem::RatVec(vec![c0, c1])
            }
            (Ring::Cyclo { phi, .. }, Elem::RatVec(a), Elem::RatVec(b)) => {
                Elem::RatVec(qq_poly_mul_reduce(a, b, phi))
            }
            (Ring::RatFunc { base }, Elem::Frac(a), Elem::Frac(b)) => {
                Elem::Frac(Box::new(Frac::mul(base, a, b)))
            }
            (Ring::SqZero { base, .. }, Elem::Nested(a), Elem::Nested(b)) => {
                let mut out = Vec::with_capacity(a.len());
                out.push(base.mul(&a[0], &b[0]));
                for i in 1..a.len() {
                    out.push(base.add(&base.mul(&a[0], &b[i]), &base.mul(&a[i], &b[0])));
                }
                Elem::Nested(out)
            }
            _ => panic!("element does not belong to ring {}", self.name()),
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::Fp { .. }, Elem::U(a)) => *a == 0,
            (Ring::Fq { .. } | Ring::Gr { .. }, Elem::Poly(a)) => a.iter().all(|&c| c == 0),
            (Ring::Rat, Elem::Rat(a)) => a.is_zero(),
            (Ring::Quad { .. } | Ring::Cyclo { .. }, Elem::RatVec(a)) => {
                a.iter().all(|c| c.is_zero())
            }
            (Ring::RatFunc { .. }, Elem::Frac(a)) => a.is_zero(),
            (Ring::SqZero { base, .. }, Elem::Nested(a)) => a.iter().all(|c| base.is_zero(c)),
            _ => panic!("element does not belong to ring {}", self.name()),
        }
    }

    pub fn eq(&self, x: &Elem, y: &Elem) -> bool {
        match (self, x, y) {
            (Ring::RatFunc { base }, Elem::Frac(a), Elem::Frac(b)) => Frac::eq(base, a, b),
            _ => self.is_zero(&self.sub(x, y)),
        }
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::Gr { p, .. }, Elem::Poly(a)) => a.iter().any(|&c| c % p != 0),
            (Ring::SqZero { base, .. }, Elem::Nested(a)) => !base.is_zero(&a[0]),
            _ => !self.is_zero(x),
        }
    }

    pub fn inv(&self, x: &Elem) -> Result<Elem> {
        if !self.is_unit(x) {
            return Err(AlgebraError::NotAUnit { ring: self.name() });
        }
        Ok(match (self, x) {
            (Ring::Fp { p }, Elem::U(a)) => {
                Elem::U(inv_mod_prime(*a, *p).ok_or(AlgebraError::DivisionByZero)?)
            }
            (Ring::Fq { p, modulus }, Elem::Poly(a)) => {
                Elem::Poly(fq_inverse(a, modulus, *p)?)
            }
            (Ring::Gr { p, k, modulus }, Elem::Poly(a)) => {
                // Hensel: invert in the residue field, then Newton-lift.
                let res_mod: Vec<u64> = modulus.iter().map(|c| c % p).collect();
                let a_res: Vec<u64> = a.iter().map(|c| c % p).collect();
                let b0 = if modulus.len() == 2 {
                    vec![inv_mod_prime(a_res[0], *p).ok_or(AlgebraError::DivisionByZero)?]
                } else {
                    fq_inverse(&a_res, &res_mod, *p)?
                };
                let m = p.pow(*k);
                let mut b: Vec<u64> = b0;
                b.resize(self.poly_len(), 0);
                let two = {
                    let mut t = vec![0u64; self.poly_len()];
                    t[0] = 2 % m;
                    t
                };
                for _ in 0..=*k {
                    // b <- b * (2 - a*b)
                    let ab = zm_poly_mul_mod(a, &b, modulus, m);
                    let corr: Vec<u64> = two
                        .iter()
                        .zip(&ab)
                        .map(|(t, v)| (t + m - v % m) % m)
                        .collect();
                    b = zm_poly_mul_mod(&b, &corr, modulus, m);
                }
                let check = zm_poly_mul_mod(a, &b, modulus, m);
                let mut one = vec![0u64; self.poly_len()];
                one[0] = 1;
                if check != one {
                    return Err(AlgebraError::NotAUnit { ring: self.name() });
                }
                Elem::Poly(b)
            }
            (Ring::Rat, Elem::Rat(a)) => Elem::Rat(a.recip()),
            (Ring::Quad { q }, Elem::RatVec(a)) => {
                let qq = BigRational::from(BigInt::from(*q));
                let nrm = &a[0] * &a[0] - (&a[1] * &a[1]) * &qq;
                if nrm.is_zero() {
                    return Err(AlgebraError::NotAUnit { ring: self.name() });
                }
                Elem::RatVec(vec![&a[0] / &nrm, -(&a[1] / &nrm)])
            }
            (Ring::Cyclo { phi, .. }, Elem::RatVec(a)) => {
                let phi_q: Vec<BigRational> = phi
                    .iter()
                    .map(|&c| BigRational::from(BigInt::from(c)))
                    .collect();
                let (g, u) = qq_poly_half_ext_gcd(a, &phi_q);
                if g.len() != 1 || g[0].is_zero() {
                    return Err(AlgebraError::NotAUnit { ring: self.name() });
                }
                let ginv = g[0].clone().recip();
                let mut out: Vec<BigRational> = u.iter().map(|c| c * &ginv).collect();
                out.resize(phi.len() - 1, rat_zero());
                let out = qq_poly_mul_reduce(&out, &[BigRational::one()], phi);
                Elem::RatVec(out)
            }
            (Ring::RatFunc { base }, Elem::Frac(a)) => Elem::Frac(Box::new(Frac::recip(base, a))),
            (Ring::SqZero { base, .. }, Elem::Nested(a)) => {
                let c0inv = base.inv(&a[0])?;
                let mut out = Vec::with_capacity(a.len());
                out.push(c0inv.clone());
                let c0inv2 = base.mul(&c0inv, &c0inv);
                for ai in &a[1..] {
                    out.push(base.neg(&base.mul(&c0inv2, ai)));
                }
                Elem::Nested(out)
            }
            _ => panic!("element does not belong to ring {}", self.name()),
        })
    }

    pub fn div(&self, x: &Elem, y: &Elem) -> Result<Elem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow_u64(&self, x: &Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    // -- local structure ------------------------------------------------------

    /// p-adic valuation of a Gr element: largest v with p^v dividing every
    /// coefficient.  `None` for the zero element.
    pub fn gr_valuation(&self, x: &Elem) -> Option<u32> {
        match (self, x) {
            (Ring::Gr { p, k, .. }, Elem::Poly(a)) => {
                if a.iter().all(|&c| c == 0) {
                    return None;
                }
                let v = a
                    .iter()
                    .filter(|&&c| c != 0)
                    .map(|&c| int_val_p(c, *p))
                    .min()
                    .unwrap();
                Some(v.min(*k))
            }
            _ => None,
        }
    }

    /// Write a nonzero Gr element as p^v * unit and return (v, unit), using
    /// the canonical integer representatives in [0, p^k).
    pub fn gr_unit_part(&self, x: &Elem) -> Option<(u32, Elem)> {
        match (self, x) {
            (Ring::Gr { p, .. }, Elem::Poly(a)) => {
                let v = self.gr_valuation(x)?;
                let pv = p.pow(v);
                Some((v, Elem::Poly(a.iter().map(|&c| c / pv).collect())))
            }
            _ => None,
        }
    }

    /// The residue field of a local kind (Gr -> Fq/Fp, SqZero -> base).
    pub fn residue_ring(&self) -> Option<Ring> {
        match self {
            Ring::Gr { p, modulus, .. } => {
                if modulus.len() == 2 {
                    Some(Ring::Fp { p: *p })
                } else {
                    Some(Ring::Fq {
                        p: *p,
                        modulus: modulus.iter().map(|c| c % p).collect(),
                    })
                }
            }
            Ring::SqZero { base, .. } => Some((**base).clone()),
            Ring::Fp { .. } | Ring::Fq { .. } => Some(self.clone()),
            _ => None,
        }
    }

    /// Reduction to the residue field.
    pub fn residue(&self, x: &Elem) -> Option<Elem> {
        match (self, x) {
            (Ring::Gr { p, modulus, .. }, Elem::Poly(a)) => {
                if modulus.len() == 2 {
                    Some(Elem::U(a[0] % p))
                } else {
                    Some(Elem::Poly(a.iter().map(|c| c % p).collect()))
                }
            }
            (Ring::SqZero { .. }, Elem::Nested(a)) => Some(a[0].clone()),
            (Ring::Fp { .. } | Ring::Fq { .. }, _) => Some(x.clone()),
            _ => None,
        }
    }

    /// Coefficientwise section of the residue map.
    pub fn lift_residue(&self, x: &Elem) -> Option<Elem> {
        match (self, x) {
            (Ring::Gr { modulus, .. }, Elem::U(a)) if modulus.len() == 2 => {
                Some(Elem::Poly(vec![*a]))
            }
            (Ring::Gr { modulus, .. }, Elem::Poly(a)) if modulus.len() > 2 => {
                Some(Elem::Poly(a.clone()))
            }
            (Ring::SqZero { base, k }, _) => {
                let mut v = vec![base.zero(); *k as usize + 1];
                v[0] = x.clone();
                Some(Elem::Nested(v))
            }
            (Ring::Fp { .. } | Ring::Fq { .. }, _) => Some(x.clone()),
            _ => None,
        }
    }

    /// Whether x lies in the maximal ideal of a local finite kind.
    pub fn in_max_ideal(&self, x: &Elem) -> Option<bool> {
        match self {
            Ring::Gr { .. } | Ring::SqZero { .. } => Some(!self.is_unit(x)),
            Ring::Fp { .. } | Ring::Fq { .. } => Some(self.is_zero(x)),
            _ => None,
        }
    }

    // -- randomness -----------------------------------------------------------

    /// Uniform element for finite kinds; small-height element otherwise.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Elem {
        match self {
            Ring::Fp { p } => Elem::U(rng.gen_range(0..*p)),
            Ring::Fq { .. } | Ring::Gr { .. } => {
                let m = self.coeff_mod();
                Elem::Poly((0..self.poly_len()).map(|_| rng.gen_range(0..m)).collect())
            }
            Ring::Rat => {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=9);
                Elem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            Ring::Quad { .. } => {
                let mut c = || {
                    let n = rng.gen_range(-9i64..=9);
                    BigRational::from(BigInt::from(n))
                };
                Elem::RatVec(vec![c(), c()])
            }
            Ring::Cyclo { phi, .. } => Elem::RatVec(
                (0..phi.len() - 1)
                    .map(|_| BigRational::from(BigInt::from(rng.gen_range(-5i64..=5))))
                    .collect(),
            ),
            Ring::RatFunc { base } => {
                let mut terms = Vec::new();
                for _ in 0..rng.gen_range(1..=3usize) {
                    let ea = rng.gen_range(0..=2u32);
                    let eb = rng.gen_range(0..=2u32);
                    terms.push((ea, eb, base.sample(rng)));
                }
                let mut num = MPoly { terms };
                num.normalize(base);
                let mut den = MPoly::monomial(
                    base,
                    rng.gen_range(0..=1u32),
                    rng.gen_range(0..=1u32),
                    base.one(),
                );
                if den.is_zero() {
                    den = MPoly::one(base);
                }
                Elem::Frac(Box::new(Frac::new(base, num, den)))
            }
            Ring::SqZero { base, k } => {
                Elem::Nested((0..=*k as usize).map(|_| base.sample(rng)).collect())
            }
        }
    }
}

fn fq_inverse(a: &[u64], modulus: &[u64], p: u64) -> Result<Vec<u64>> {
    // extended Euclid in F_p[x]
    let mut r0: Vec<u64> = modulus.to_vec();
    let mut r1: Vec<u64> = a.to_vec();
    fp_poly_trim(&mut r0);
    fp_poly_trim(&mut r1);
    let mut s0: Vec<u64> = vec![0];
    let mut s1: Vec<u64> = vec![1];
    while !(r1.len() == 1 && r1[0] == 0) {
        // q, r = divmod(r0, r1)
        let (q, r2) = fp_poly_divrem(&r0, &r1, p);
        let qs1 = fp_poly_mul(&q, &s1, p);
        let s2 = fp_poly_sub(&s0, &qs1, p);
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 || r0[0] == 0 {
        return Err(AlgebraError::NotAUnit {
            ring: format!("F{}[w]", p),
        });
    }
    let c = inv_mod_prime(r0[0], p).ok_or(AlgebraError::DivisionByZero)?;
    let mut out: Vec<u64> = s0
        .iter()
        .map(|&x| (x as u128 * c as u128 % p as u128) as u64)
        .collect();
    out.resize(modulus.len() - 1, 0);
    // reduce once more in case deg(s0) reached deg(modulus)
    Ok(zm_poly_mul_mod(&out, &[1], modulus, p))
}

fn fp_poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_poly_trim(&mut r);
    let mut bb = b.to_vec();
    fp_poly_trim(&mut bb);
    let db = bb.len() - 1;
    if r.len() - 1 < db || (r.len() == 1 && r[0] == 0) {
        return (vec![0], r);
    }
    let mut q = vec![0u64; r.len() - db];
    let lead_inv = inv_mod_prime(bb[db], p).expect("unit leading coefficient");
    for i in (db..r.len()).rev() {
        let c = (r[i] as u128 * lead_inv as u128 % p as u128) as u64;
        q[i - db] = c;
        if c != 0 {
            for (j, &bj) in bb.iter().enumerate() {
                let sub = c as u128 * bj as u128 % p as u128;
                r[i - db + j] = ((r[i - db + j] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
    }
    fp_poly_trim(&mut r);
    r.truncate(db.max(1));
    fp_poly_trim(&mut r);
    (q, r)
}

fn fp_poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    fp_poly_trim(&mut out);
    out
}

fn fp_poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y % p) % p;
    }
    fp_poly_trim(&mut out);
    out
}

// ---------------------------------------------------------------------------
// printing and parsing
// ---------------------------------------------------------------------------

fn rat_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True if the coefficient string needs parentheses inside a larger term.
fn needs_parens(s: &str) -> bool {
    s.chars().skip(1).any(|c| c == '+' || c == '-') || s.contains('*') || s.contains('/')
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push('-');
            out.push_str(rest);
        } else {
            out.push('+');
            out.push_str(&t);
        }
    }
    out
}

/// Render one power product: coefficient times var^exp factors.
fn render_term(coeff: &str, factors: &[(&str, u32)]) -> String {
    let live: Vec<String> = factors
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { (*v).to_string() } else { format!("{v}^{e}") })
        .collect();
    if live.is_empty() {
        return coeff.to_string();
    }
    let vars = live.join("*");
    if coeff == "1" {
        vars
    } else if coeff == "-1" {
        format!("-{vars}")
    } else if needs_parens(coeff) {
        format!("({coeff})*{vars}")
    } else {
        format!("{coeff}*{vars}")
    }
}

impl Ring {
    /// Canonical display string; `parse` accepts everything this produces.
    pub fn canon_string(&self, x: &Elem) -> String {
        match (self, x) {
            (Ring::Fp { .. }, Elem::U(a)) => a.to_string(),
            (Ring::Fq { .. } | Ring::Gr { .. }, Elem::Poly(a)) => {
                let terms: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| render_term(&c.to_string(), &[("w", i as u32)]))
                    .collect();
                join_terms(terms)
            }
            (Ring::Rat, Elem::Rat(a)) => rat_str(a),
            (Ring::Quad { .. }, Elem::RatVec(a)) => {
                let terms: Vec<String> = [(&a[0], 0u32), (&a[1], 1u32)]
                    .into_iter()
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, e)| render_term(&rat_str(c), &[("s", e)]))
                    .collect();
                join_terms(terms)
            }
            (Ring::Cyclo { .. }, Elem::RatVec(a)) => {
                let terms: Vec<String> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| render_term(&rat_str(c), &[("z", i as u32)]))
                    .collect();
                join_terms(terms)
            }
            (Ring::RatFunc { base }, Elem::Frac(fr)) => {
                let poly_str = |p: &MPoly| -> String {
                    let terms: Vec<String> = p
                        .terms
                        .iter()
                        .map(|(ea, eb, c)| {
                            render_term(&base.canon_string(c), &[("a", *ea), ("b", *eb)])
                        })
                        .collect();
                    join_terms(terms)
                };
                let num = poly_str(&fr.num);
                let den_one = {
                    let one = MPoly::one(base);
                    MPoly::eq(base, &fr.den, &one)
                };
                if den_one {
                    num
                } else {
                    format!("({})/({})", num, poly_str(&fr.den))
                }
            }
            (Ring::SqZero { base, k }, Elem::Nested(a)) => {
                let var = |i: usize| -> String {
                    if *k == 1 {
                        "e".into()
                    } else {
                        format!("e{i}")
                    }
                };
                let mut terms = Vec::new();
                if !base.is_zero(&a[0]) {
                    let c = base.canon_string(&a[0]);
                    terms.push(if needs_parens(&c) { format!("({c})") } else { c });
                }
                for (i, ai) in a.iter().enumerate().skip(1) {
                    if !base.is_zero(ai) {
                        let vs = var(i);
                        let leak: &str = &vs;
                        terms.push(render_term(&base.canon_string(ai), &[(leak, 1)]));
                    }
                }
                join_terms(terms)
            }
            _ => panic!("element does not belong to ring {}", self.name()),
        }
    }

    /// Canonical bytes for hashing; stable across runs.
    pub fn canon_bytes(&self, x: &Elem) -> Vec<u8> {
        self.canon_string(x).into_bytes()
    }

    /// Parse the expression grammar: integers, the ring's symbols
    /// (w, s, z, e/e1../e4, a, b), `+ - * / ^` and parentheses.
    pub fn parse(&self, text: &str) -> Result<Elem> {
        let mut p = Parser {
            ring: self,
            chars: text.chars().collect(),
            pos: 0,
            text,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(AlgebraError::Parse {
                text: text.into(),
                msg: format!("unexpected trailing input at byte {}", p.pos),
            });
        }
        Ok(v)
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            text: self.text.into(),
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.ring.div(&acc, &f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected an integer exponent after ^"));
            }
            let e: u64 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.err("exponent does not fit in u64"))?;
            return Ok(self.ring.pow_u64(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Elem> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                let f = self.factor()?;
                Ok(self.ring.neg(&f))
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing closing parenthesis"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: u64 = digits
                    .parse()
                    .map_err(|_| self.err("integer literal does not fit in u64"))?;
                Ok(self.ring.from_u64(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().collect();
                self.symbol(&ident)
            }
            other => Err(self.err(format!("unexpected input {:?}", other))),
        }
    }

    fn symbol(&mut self, ident: &str) -> Result<Elem> {
        let r = self.ring;
        let fail = || self.err(format!("symbol {ident:?} has no meaning in {}", r.name()));
        match ident {
            "w" => match r {
                Ring::Fq { .. } | Ring::Gr { .. } => r.generator().ok_or_else(fail),
                _ => Err(fail()),
            },
            "s" => match r {
                Ring::Quad { .. } => r.generator().ok_or_else(fail),
                Ring::RatFunc { base } => {
                    let g = base.generator().ok_or_else(fail)?;
                    r.lift_scalar(&g)
                }
                _ => Err(fail()),
            },
            "z" => match r {
                Ring::Cyclo { .. } => r.generator().ok_or_else(fail),
                _ => Err(fail()),
            },
            "a" => r.sym_a().ok_or_else(fail),
            "b" => r.sym_b().ok_or_else(fail),
            "e" => r.epsilon(1).ok_or_else(fail),
            _ => {
                if let Some(rest) = ident.strip_prefix('e') {
                    if let Ok(i) = rest.parse::<usize>() {
                        return r.epsilon(i).ok_or_else(fail);
                    }
                }
                Err(fail())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn irreducible_degree2_mod5() {
        let m = find_irreducible(5, 2);
        assert_eq!(m.len(), 3);
        assert_eq!(m[2], 1);
        // no roots in F_5
        for x in 0..5u64 {
            let v = (m[0] + m[1] * x + m[2] * x * x) % 5;
            assert_ne!(v, 0, "claimed irreducible has root {x}");
        }
    }

    #[test]
    fn pow_mod_sanity() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(7, 0, 13), 1);
    }
}
