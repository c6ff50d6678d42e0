use std::collections::HashMap;

use exact_algebra::{Elem, Matrix, Ring};

use crate::artinian::ArtinianTestRing;
use crate::error::{DeformationError, Result};

/// Ceiling on the raw search space |m|^(n²·generators) of one enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 4_000_000;

/// Ceiling on the closure built while comparing traces of two liftings.
pub const DEFAULT_PAIR_CAP: usize = 50_000;

/// A residual representation of a finitely presented group.
///
/// Relator words are strings of nonzero letters: letter `+i` stands for the
/// i-th generator (1-based), `-i` for its inverse.  Finite-order relators
/// stand in for the continuity constraints of the profinite setting, so the
/// presented group is finite in every problem we care about, but none of the
/// computations below ever materialize it.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    field: Ring,
    n: usize,
    rho_bar: Vec<Matrix>,
    rho_bar_inv: Vec<Matrix>,
    relators: Vec<Vec<i32>>,
    fixed_det: bool,
}

/// Generator images over an Artinian test ring.
#[derive(Clone, Debug)]
pub struct Lifting {
    pub images: Vec<Matrix>,
}

/// Multiply out a word at the given images; negative letters use the
/// supplied inverses.
pub(crate) fn eval_word(
    ring: &Ring,
    n: usize,
    images: &[Matrix],
    inverses: &[Matrix],
    word: &[i32],
) -> Matrix {
    let mut acc = Matrix::identity(ring, n);
    for &letter in word {
        let idx = letter.unsigned_abs() as usize - 1;
        let factor = if letter > 0 {
            &images[idx]
        } else {
            &inverses[idx]
        };
        acc = acc.mul(factor).expect("validated shapes");
    }
    acc
}

impl LiftingProblem {
    pub fn new(
        field: Ring,
        n: usize,
        rho_bar: Vec<Matrix>,
        relators: Vec<Vec<i32>>,
        fixed_det: bool,
    ) -> Result<Self> {
        if !field.is_field() || !field.is_finite() {
            return Err(DeformationError::NotArtinianLocal(field.name()));
        }
        if rho_bar.is_empty() || n == 0 {
            return Err(DeformationError::Shape(
                "a problem needs at least one generator and n ≥ 1".into(),
            ));
        }
        let g = rho_bar.len();
        let mut rho_bar_inv = Vec::with_capacity(g);
        for (i, m) in rho_bar.iter().enumerate() {
            if m.ring != field || m.rows != n || m.cols != n {
                return Err(DeformationError::Shape(format!(
                    "generator image {i} is not an n×n matrix over the residue field"
                )));
            }
            match m.inverse() {
                Ok(inv) => rho_bar_inv.push(inv),
                Err(_) => return Err(DeformationError::NotInvertible { index: i }),
            }
        }
        for (ri, word) in relators.iter().enumerate() {
            for &letter in word {
                if letter == 0 || letter.unsigned_abs() as usize > g {
                    return Err(DeformationError::BadLetter {
                        index: ri,
                        letter,
                    });
                }
            }
            if !eval_word(&field, n, &rho_bar, &rho_bar_inv, word).is_identity() {
                return Err(DeformationError::RelatorViolated { index: ri });
            }
        }
        Ok(LiftingProblem {
            field,
            n,
            rho_bar,
            rho_bar_inv,
            relators,
            fixed_det,
        })
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.rho_bar.len()
    }

    pub fn rho_bar(&self) -> &[Matrix] {
        &self.rho_bar
    }

    pub(crate) fn rho_bar_inv(&self) -> &[Matrix] {
        &self.rho_bar_inv
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }

    pub fn fixed_det(&self) -> bool {
        self.fixed_det
    }

    /// The determinant character a lifting must satisfy over `a`, evaluated
    /// on the generators: the multiplicative lift of det ρ̄.
    pub fn det_character(&self, a: &ArtinianTestRing) -> Result<Vec<Elem>> {
        self.rho_bar
            .iter()
            .map(|m| Ok(a.teichmuller(&m.det()?)))
            .collect()
    }

    fn check_test_ring(&self, a: &ArtinianTestRing) -> Result<()> {
        if a.residue_field() != &self.field {
            return Err(DeformationError::ResidueFieldMismatch);
        }
        Ok(())
    }
}

/// All generator tuples over `a` that reduce to ρ̄, satisfy the relators,
/// and (if the problem fixes determinants) have the prescribed determinant.
///
/// The search walks lifts generator-by-generator in a deterministic order,
/// pruning with every relator whose letters are already all assigned.  The
/// raw search space |m|^(n²·g) must fit the budget.
pub fn enumerate_liftings(
    problem: &LiftingProblem,
    a: &ArtinianTestRing,
    budget: u64,
) -> Result<Vec<Lifting>> {
    problem.check_test_ring(a)?;
    let g = problem.num_generators();
    let n = problem.n();
    let m = a.max_ideal_elements().len() as u64;
    let mut raw: u64 = 1;
    for _ in 0..n * n * g {
        raw = raw
            .checked_mul(m)
            .ok_or(DeformationError::Budget { budget })?;
        if raw > budget {
            return Err(DeformationError::Budget { budget });
        }
    }

    let chi = if problem.fixed_det() {
        Some(problem.det_character(a)?)
    } else {
        None
    };

    // Per-generator candidate lists: every lift of ρ̄(g_i), with the
    // determinant filter applied up front.  Each entry carries its inverse.
    let ring = a.ring().clone();
    let mut candidates: Vec<Vec<(Matrix, Matrix)>> = Vec::with_capacity(g);
    for i in 0..g {
        let base = a.lift_matrix(&problem.rho_bar()[i]);
        let mut list = Vec::new();
        let cells = n * n;
        let ideal = a.max_ideal_elements();
        let mut idx = vec![0usize; cells];
        'odometer: loop {
            let mut x = base.clone();
            for (pos, &choice) in idx.iter().enumerate() {
                let (r, c) = (pos / n, pos % n);
                let v = ring.add(x.get(r, c), &ideal[choice]);
                x.set(r, c, v);
            }
            let keep = match &chi {
                Some(values) => ring.eq(&x.det()?, &values[i]),
                None => true,
            };
            if keep {
                let inv = x.inverse()?;
                list.push((x, inv));
            }
            let mut pos = 0;
            loop {
                if pos == cells {
                    break 'odometer;
                }
                idx[pos] += 1;
                if idx[pos] < ideal.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
        candidates.push(list);
    }

    // Relators grouped by the highest generator they mention.
    let mut relator_levels: Vec<Vec<usize>> = vec![Vec::new(); g];
    for (ri, word) in problem.relators().iter().enumerate() {
        let top = word
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(1);
        relator_levels[top - 1].push(ri);
    }

    let mut out = Vec::new();
    let mut images: Vec<Matrix> = Vec::with_capacity(g);
    let mut inverses: Vec<Matrix> = Vec::with_capacity(g);
    dfs(
        problem,
        &ring,
        &candidates,
        &relator_levels,
        &mut images,
        &mut inverses,
        &mut out,
    );
    Ok(out)
}

fn dfs(
    problem: &LiftingProblem,
    ring: &Ring,
    candidates: &[Vec<(Matrix, Matrix)>],
    relator_levels: &[Vec<usize>],
    images: &mut Vec<Matrix>,
    inverses: &mut Vec<Matrix>,
    out: &mut Vec<Lifting>,
) {
    let level = images.len();
    if level == candidates.len() {
        out.push(Lifting {
            images: images.clone(),
        });
        return;
    }
    let n = problem.n();
    'next: for (x, xinv) in &candidates[level] {
        images.push(x.clone());
        inverses.push(xinv.clone());
        for &ri in &relator_levels[level] {
            let value = eval_word(ring, n, images, inverses, &problem.relators()[ri]);
            if !value.is_identity() {
                images.pop();
                inverses.pop();
                continue 'next;
            }
        }
        dfs(
            problem,
            ring,
            candidates,
            relator_levels,
            images,
            inverses,
            out,
        );
        images.pop();
        inverses.pop();
    }
}

/// Re-verify a lifting from scratch: shape, reduction to ρ̄, relators, and
/// the determinant character when the problem fixes determinants.
pub fn verify_lifting(
    problem: &LiftingProblem,
    a: &ArtinianTestRing,
    lifting: &Lifting,
) -> Result<()> {
    problem.check_test_ring(a)?;
    let g = problem.num_generators();
    let n = problem.n();
    if lifting.images.len() != g {
        return Err(DeformationError::Shape(format!(
            "expected {g} generator images, found {}",
            lifting.images.len()
        )));
    }
    let mut inverses = Vec::with_capacity(g);
    for (i, x) in lifting.images.iter().enumerate() {
        if &x.ring != a.ring() || x.rows != n || x.cols != n {
            return Err(DeformationError::Shape(format!(
                "image {i} is not an n×n matrix over the test ring"
            )));
        }
        if !a.residue_matrix(x).eq_to(&problem.rho_bar()[i]) {
            return Err(DeformationError::BadReduction { index: i });
        }
        match x.inverse() {
            Ok(inv) => inverses.push(inv),
            Err(_) => return Err(DeformationError::NotInvertible { index: i }),
        }
    }
    for (ri, word) in problem.relators().iter().enumerate() {
        if !eval_word(a.ring(), n, &lifting.images, &inverses, word).is_identity() {
            return Err(DeformationError::RelatorViolated { index: ri });
        }
    }
    if problem.fixed_det() {
        let chi = problem.det_character(a)?;
        for (i, x) in lifting.images.iter().enumerate() {
            if !a.ring().eq(&x.det()?, &chi[i]) {
                return Err(DeformationError::DeterminantMismatch { index: i });
            }
        }
    }
    Ok(())
}

fn lifting_key(lifting: &Lifting) -> Vec<u8> {
    let mut key = Vec::new();
    for m in &lifting.images {
        key.extend_from_slice(&m.canon_bytes());
    }
    key
}

/// Partition a complete list of liftings into conjugation orbits under the
/// kernel of GL_n(A) → GL_n(F).  Returns orbits as sorted index lists, in
/// order of their smallest member.
pub fn deformation_classes(
    problem: &LiftingProblem,
    a: &ArtinianTestRing,
    liftings: &[Lifting],
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    problem.check_test_ring(a)?;
    let n = problem.n();
    let kernel = a.kernel_matrices(n, budget)?;
    let mut index: HashMap<Vec<u8>, usize> = HashMap::with_capacity(liftings.len());
    for (i, l) in liftings.iter().enumerate() {
        index.insert(lifting_key(l), i);
    }
    let mut assigned = vec![false; liftings.len()];
    let mut orbits = Vec::new();
    for start in 0..liftings.len() {
        if assigned[start] {
            continue;
        }
        let mut members = Vec::new();
        for k in &kernel {
            let kinv = k.inverse()?;
            let conjugated = Lifting {
                images: liftings[start]
                    .images
                    .iter()
                    .map(|x| k.mul(x).and_then(|kx| kx.mul(&kinv)))
                    .collect::<exact_algebra::Result<_>>()?,
            };
            let j = *index.get(&lifting_key(&conjugated)).ok_or_else(|| {
                DeformationError::Shape(
                    "conjugate of a lifting is missing; the supplied list is incomplete".into(),
                )
            })?;
            if !assigned[j] {
                assigned[j] = true;
                members.push(j);
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(orbits)
}

/// Outcome of a trace-comparison conjugacy search.
#[derive(Clone, Debug)]
pub enum CarayolOutcome {
    /// A kernel element a with ρ₂ = a ρ₁ a⁻¹.
    Conjugator(Matrix),
    /// A word in the generators at which the traces already disagree.
    TraceMismatch { word: Vec<i32> },
}

/// Decide whether two liftings of a Schur residual representation are
/// kernel-conjugate, by comparing traces on the whole image and then
/// searching the kernel exhaustively.
///
/// Requires End_{F[G]}(ρ̄) = F; with that hypothesis equal traces force
/// conjugacy, so the search only fails by returning a trace witness.
pub fn carayol_conjugator(
    problem: &LiftingProblem,
    a: &ArtinianTestRing,
    rho1: &Lifting,
    rho2: &Lifting,
    budget: u64,
) -> Result<CarayolOutcome> {
    verify_lifting(problem, a, rho1)?;
    verify_lifting(problem, a, rho2)?;
    if endomorphism_dim(problem)? != 1 {
        return Err(DeformationError::NotSchur);
    }

    // Traces must agree on every element of the image, not just the
    // generators.  Walk the subgroup generated by the image pairs
    // (ρ₁(g), ρ₂(g)); it is a quotient of the presented group, so the walk
    // stays small, and provenance lets us report a witness word.
    let ring = a.ring();
    let n = problem.n();
    let g = problem.num_generators();
    let gens: Vec<(Matrix, Matrix)> = (0..g)
        .map(|i| (rho1.images[i].clone(), rho2.images[i].clone()))
        .collect();
    let pair_key = |p: &(Matrix, Matrix)| {
        let mut k = p.0.canon_bytes();
        k.extend_from_slice(&p.1.canon_bytes());
        k
    };
    let identity_pair = (Matrix::identity(ring, n), Matrix::identity(ring, n));
    let mut elements = vec![identity_pair];
    let mut provenance: Vec<(usize, usize)> = vec![(0, 0)];
    let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
    seen.insert(pair_key(&elements[0]), 0);
    let mut frontier = 0;
    while frontier < elements.len() {
        for (s, (x1, x2)) in gens.iter().enumerate() {
            let next = (
                elements[frontier].0.mul(x1)?,
                elements[frontier].1.mul(x2)?,
            );
            let key = pair_key(&next);
            if seen.contains_key(&key) {
                continue;
            }
            if elements.len() >= DEFAULT_PAIR_CAP {
                return Err(DeformationError::Budget {
                    budget: DEFAULT_PAIR_CAP as u64,
                });
            }
            let t1 = next.0.trace()?;
            let t2 = next.1.trace()?;
            let id = elements.len();
            seen.insert(key, id);
            elements.push(next);
            provenance.push((frontier, s));
            if !ring.eq(&t1, &t2) {
                let mut word = Vec::new();
                let mut cursor = id;
                while cursor != 0 {
                    let (parent, letter) = provenance[cursor];
                    word.push(letter as i32 + 1);
                    cursor = parent;
                }
                word.reverse();
                return Ok(CarayolOutcome::TraceMismatch { word });
            }
        }
        frontier += 1;
    }

    for k in a.kernel_matrices(n, budget)? {
        let kinv = k.inverse()?;
        let mut all = true;
        for i in 0..g {
            let conj = k.mul(&rho1.images[i])?.mul(&kinv)?;
            if !conj.eq_to(&rho2.images[i]) {
                all = false;
                break;
            }
        }
        if all {
            return Ok(CarayolOutcome::Conjugator(k));
        }
    }
    Err(DeformationError::Shape(
        "equal traces but no kernel conjugator; Schur hypothesis violated upstream".into(),
    ))
}

/// Dimension of End_{F[G]}(ρ̄): the solution space of X·ρ̄(gᵢ) = ρ̄(gᵢ)·X.
pub fn endomorphism_dim(problem: &LiftingProblem) -> Result<usize> {
    let field = problem.field();
    let n = problem.n();
    let g = problem.num_generators();
    // Row (i, (r,c)) constrains vec(X) by (ρ̄ᵢ X − X ρ̄ᵢ)_{rc} = 0 with X
    // flattened row-major.
    let system = Matrix::from_fn(field, g * n * n, n * n, |row, col| {
        let gen = row / (n * n);
        let (r, c) = ((row / n) % n, row % n);
        let (k, l) = (col / n, col % n);
        let rho = &problem.rho_bar()[gen];
        let mut v = field.zero();
        if l == c {
            v = field.add(&v, rho.get(r, k));
        }
        if k == r {
            v = field.sub(&v, rho.get(l, c));
        }
        v
    });
    let nullity = n * n - exact_algebra::rank(&system)?;
    Ok(nullity)
}
