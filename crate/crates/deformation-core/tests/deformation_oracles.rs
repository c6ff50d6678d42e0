use std::collections::{HashMap, HashSet};

use deformation_core::*;
use exact_algebra::{Matrix, Ring};
use group_cohomology::{adjoint_module, cohomology, FiniteGroup, DEFAULT_BUDGET_CELLS};

fn dual_numbers() -> ArtinianTestRing {
    ArtinianTestRing::new(Ring::sq_zero(Ring::fp(5), 1).unwrap()).unwrap()
}

fn lifting_key(l: &Lifting) -> Vec<u8> {
    let mut key = Vec::new();
    for m in &l.images {
        key.extend_from_slice(&m.canon_bytes());
    }
    key
}

fn assert_complete_and_verified(p: &LiftingProblem, a: &ArtinianTestRing, lifts: &[Lifting]) {
    let keys: HashSet<Vec<u8>> = lifts.iter().map(lifting_key).collect();
    assert_eq!(keys.len(), lifts.len(), "duplicate liftings in enumeration");
    for l in lifts {
        verify_lifting(p, a, l).unwrap();
    }
}

struct Sample {
    name: &'static str,
    problem: LiftingProblem,
    group: FiniteGroup,
}

fn samples() -> Vec<Sample> {
    let f5 = Ring::fp(5);
    let u = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
    let s3a = Matrix::from_i64(&f5, 2, 2, &[0, 4, 1, 4]);
    let s3b = Matrix::from_i64(&f5, 2, 2, &[0, 1, 1, 0]);
    let torus = Matrix::from_i64(&f5, 2, 2, &[2, 1, 0, 3]);
    let diag21 = Matrix::from_i64(&f5, 2, 2, &[2, 0, 0, 1]);
    let s3_relators = vec![vec![1, 1, 1], vec![2, 2], vec![1, 2, 1, 2]];
    let frobenius_relators = vec![vec![1; 5], vec![2; 4], vec![2, 1, -2, -1, -1]];
    vec![
        Sample {
            name: "unipotent Z/5",
            problem: LiftingProblem::new(f5.clone(), 2, vec![u.clone()], vec![vec![1; 5]], false)
                .unwrap(),
            group: FiniteGroup::generate(std::slice::from_ref(&u), 100).unwrap(),
        },
        Sample {
            name: "S3 standard",
            problem: LiftingProblem::new(
                f5.clone(),
                2,
                vec![s3a.clone(), s3b.clone()],
                s3_relators.clone(),
                false,
            )
            .unwrap(),
            group: FiniteGroup::generate(&[s3a.clone(), s3b.clone()], 100).unwrap(),
        },
        Sample {
            name: "S3 standard, fixed determinant",
            problem: LiftingProblem::new(f5.clone(), 2, vec![s3a.clone(), s3b.clone()], s3_relators, true)
                .unwrap(),
            group: FiniteGroup::generate(&[s3a, s3b], 100).unwrap(),
        },
        Sample {
            name: "split torus Z/4",
            problem: LiftingProblem::new(f5.clone(), 2, vec![torus.clone()], vec![vec![1; 4]], false)
                .unwrap(),
            group: FiniteGroup::generate(std::slice::from_ref(&torus), 100).unwrap(),
        },
        Sample {
            name: "Frobenius group of order 20",
            problem: LiftingProblem::new(
                f5,
                2,
                vec![u.clone(), diag21.clone()],
                frobenius_relators,
                false,
            )
            .unwrap(),
            group: FiniteGroup::generate(&[u, diag21], 100).unwrap(),
        },
    ]
}

/// Lifting counts over the dual numbers against the cocycle space computed
/// by the cohomology machinery on the realized matrix group, and against the
/// relator linearization.  All three routes must agree exactly.
#[test]
fn lifting_counts_match_cocycle_spaces() {
    let eps = dual_numbers();
    let expected_z1: HashMap<&str, usize> = [
        ("unipotent Z/5", 4),
        ("S3 standard", 3),
        ("S3 standard, fixed determinant", 3),
        ("split torus Z/4", 2),
        ("Frobenius group of order 20", 3),
    ]
    .into_iter()
    .collect();
    for sample in samples() {
        let report = tangent_report(&sample.problem).unwrap();
        let module =
            adjoint_module(&sample.group, None, sample.problem.fixed_det(), None).unwrap();
        let h1 = cohomology(&sample.group, &module, 1, DEFAULT_BUDGET_CELLS).unwrap();
        let h0 = cohomology(&sample.group, &module, 0, DEFAULT_BUDGET_CELLS).unwrap();
        assert_eq!(report.dim_z1, h1.dim_z, "Z1 mismatch: {}", sample.name);
        assert_eq!(report.dim_h1, h1.dim_h, "H1 mismatch: {}", sample.name);
        assert_eq!(report.dim_h0, h0.dim_h, "H0 mismatch: {}", sample.name);
        assert_eq!(report.dim_z1, expected_z1[sample.name], "{}", sample.name);

        let lifts = enumerate_liftings(&sample.problem, &eps, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(
            lifts.len() as u64,
            5u64.pow(report.dim_z1 as u32),
            "lifting count vs Z1: {}",
            sample.name
        );
        assert_complete_and_verified(&sample.problem, &eps, &lifts);
    }
}

/// Over F₅[ε₁,ε₂]/(ε₁,ε₂)² the maximal ideal is two-dimensional, so the
/// lifting count is the square of the dual-numbers count and all liftings
/// collapse into 5^(2·dim H¹) orbits.
#[test]
fn two_variable_dual_numbers_square_the_count() {
    let f5 = Ring::fp(5);
    let torus = Matrix::from_i64(&f5, 2, 2, &[2, 1, 0, 3]);
    let p = LiftingProblem::new(f5, 2, vec![torus], vec![vec![1; 4]], false).unwrap();
    let a = ArtinianTestRing::new(Ring::sq_zero(Ring::fp(5), 2).unwrap()).unwrap();
    let lifts = enumerate_liftings(&p, &a, DEFAULT_ENUM_BUDGET).unwrap();
    assert_eq!(lifts.len(), 625);
    assert_complete_and_verified(&p, &a, &lifts);
    let orbits = deformation_classes(&p, &a, &lifts, 500_000).unwrap();
    assert_eq!(orbits.len(), 1);
}

/// An order-4 semisimple residual representation lifts along its
/// characteristic polynomial: 25 liftings over each length-two coefficient
/// ring, every one with characteristic polynomial exactly X² + 1.
#[test]
fn hensel_counts_for_semisimple_order_four() {
    let f5 = Ring::fp(5);
    let torus = Matrix::from_i64(&f5, 2, 2, &[2, 1, 0, 3]);
    for ring in [Ring::sq_zero(Ring::fp(5), 1).unwrap(), Ring::gr(5, 2, 1)] {
        let a = ArtinianTestRing::new(ring).unwrap();
        for fixed_det in [false, true] {
            let p = LiftingProblem::new(
                Ring::fp(5),
                2,
                vec![torus.clone()],
                vec![vec![1; 4]],
                fixed_det,
            )
            .unwrap();
            let lifts = enumerate_liftings(&p, &a, DEFAULT_ENUM_BUDGET).unwrap();
            assert_eq!(lifts.len(), 25);
            assert_complete_and_verified(&p, &a, &lifts);
            let ring = a.ring();
            for l in &lifts {
                let cp = l.images[0].charpoly().unwrap();
                assert!(ring.eq(&cp[0], &ring.one()));
                assert!(ring.is_zero(&cp[1]));
                assert!(ring.eq(&cp[2], &ring.one()));
            }
            let orbits = deformation_classes(&p, &a, &lifts, 100_000).unwrap();
            assert_eq!(orbits.len(), 1);
        }
    }
}

fn icosahedral_problem(fixed_det: bool) -> LiftingProblem {
    let f5 = Ring::fp(5);
    let a = Matrix::from_i64(&f5, 2, 2, &[4, 4, 0, 4]);
    let b = Matrix::from_i64(&f5, 2, 2, &[0, 1, 4, 1]);
    let grp = FiniteGroup::generate(&[a.clone(), b.clone()], 1_000).unwrap();
    assert_eq!(grp.size(), 120);
    LiftingProblem::new(
        f5,
        2,
        vec![a, b],
        vec![vec![1, 1, 1, 1, 1, -2, -2, -2], vec![2, 2, -1, -2, -1]],
        fixed_det,
    )
    .unwrap()
}

/// The natural representation of SL₂(F₅), presented as the binary
/// icosahedral group ⟨a,b | a⁵ = b³ = (ab)²⟩, has one-dimensional H¹(ad):
/// its 625 dual-number liftings fall into exactly 5 orbits of 125, matching
/// the orbit count a Schur residual representation must have.
#[test]
fn schur_orbit_count_matches_h1() {
    let eps = dual_numbers();
    for fixed_det in [false, true] {
        let p = icosahedral_problem(fixed_det);
        assert_eq!(endomorphism_dim(&p).unwrap(), 1);
        let report = tangent_report(&p).unwrap();
        assert_eq!(report.dim_z1, 4);
        assert_eq!(report.dim_h1, 1);
        assert_eq!(report.dim_h0, if fixed_det { 0 } else { 1 });
        let lifts = enumerate_liftings(&p, &eps, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(lifts.len(), 625);
        assert_complete_and_verified(&p, &eps, &lifts);
        let orbits = deformation_classes(&p, &eps, &lifts, 100_000).unwrap();
        assert_eq!(orbits.len(), 5);
        assert!(orbits.iter().all(|o| o.len() == 125));
    }
}

/// Reducible diagnostic: ρ̄ = diag(ψ, 1) on the order-20 Frobenius group,
/// where ψ has order 4.  Kernel conjugation still cuts the 125 liftings into
/// 5 orbits — the H¹ count — but conjugation by all of GL₂ is strictly
/// coarser: the centralizer torus rescales the off-diagonal cocycle line, so
/// the four nonzero classes merge and only 2 coarse classes remain.  For a
/// Schur ρ̄ the two equivalences would agree.
#[test]
fn non_schur_orbits_are_coarsened_by_full_conjugation() {
    let f5 = Ring::fp(5);
    let id = Matrix::identity(&f5, 2);
    let b = Matrix::from_i64(&f5, 2, 2, &[2, 0, 0, 1]);
    let p = LiftingProblem::new(
        f5.clone(),
        2,
        vec![id, b.clone()],
        vec![vec![1; 5], vec![2; 4], vec![2, 1, -2, -1, -1]],
        false,
    )
    .unwrap();
    assert_eq!(endomorphism_dim(&p).unwrap(), 2);
    let report = tangent_report(&p).unwrap();
    assert_eq!(report.dim_z1, 3);
    assert_eq!(report.dim_h1, 1);
    assert_eq!(report.dim_h0, 2);

    let eps = dual_numbers();
    let lifts = enumerate_liftings(&p, &eps, DEFAULT_ENUM_BUDGET).unwrap();
    assert_eq!(lifts.len(), 125);
    assert_complete_and_verified(&p, &eps, &lifts);
    let orbits = deformation_classes(&p, &eps, &lifts, 100_000).unwrap();
    assert_eq!(orbits.len(), 5);

    let mut orbit_of = vec![usize::MAX; lifts.len()];
    for (oi, orbit) in orbits.iter().enumerate() {
        for &i in orbit {
            orbit_of[i] = oi;
        }
    }
    let index: HashMap<Vec<u8>, usize> = lifts
        .iter()
        .enumerate()
        .map(|(i, l)| (lifting_key(l), i))
        .collect();

    // Merge orbits that a torus conjugation identifies.
    let z = eps.lift_matrix(&b);
    let zinv = z.inverse().unwrap();
    let mut class_of: Vec<usize> = (0..orbits.len()).collect();
    fn find(class_of: &mut Vec<usize>, i: usize) -> usize {
        let mut root = i;
        while class_of[root] != root {
            root = class_of[root];
        }
        let mut cursor = i;
        while class_of[cursor] != root {
            let next = class_of[cursor];
            class_of[cursor] = root;
            cursor = next;
        }
        root
    }
    for (i, l) in lifts.iter().enumerate() {
        let conj = Lifting {
            images: l
                .images
                .iter()
                .map(|x| z.mul(x).unwrap().mul(&zinv).unwrap())
                .collect(),
        };
        let j = index[&lifting_key(&conj)];
        let (a, c) = (find(&mut class_of, orbit_of[i]), find(&mut class_of, orbit_of[j]));
        if a != c {
            class_of[a] = c;
        }
    }
    let classes: HashSet<usize> = (0..orbits.len())
        .map(|i| find(&mut class_of, i))
        .collect();
    assert_eq!(classes.len(), 2);

    // The constant lifting sits alone; the four twisted classes merge.
    let base = Lifting {
        images: vec![eps.lift_matrix(&Matrix::identity(&f5, 2)), z.clone()],
    };
    let base_orbit = orbit_of[index[&lifting_key(&base)]];
    let base_class = find(&mut class_of, base_orbit);
    let lone = (0..orbits.len())
        .filter(|&o| find(&mut class_of, o) == base_class)
        .count();
    assert_eq!(lone, 1);

    // And the trace-comparison machinery refuses the problem outright.
    assert!(matches!(
        carayol_conjugator(&p, &eps, &lifts[0], &lifts[1], 100_000),
        Err(DeformationError::NotSchur)
    ));
}

/// Conjugator recovery over the length-two Galois ring, plus the trace
/// witness on a pair of liftings from different orbits.
#[test]
fn carayol_search_recovers_conjugators_and_witnesses() {
    let f5 = Ring::fp(5);
    let s3a = Matrix::from_i64(&f5, 2, 2, &[0, 4, 1, 4]);
    let s3b = Matrix::from_i64(&f5, 2, 2, &[0, 1, 1, 0]);
    let p = LiftingProblem::new(
        f5,
        2,
        vec![s3a, s3b],
        vec![vec![1, 1, 1], vec![2, 2], vec![1, 2, 1, 2]],
        false,
    )
    .unwrap();
    let a = ArtinianTestRing::new(Ring::gr(5, 2, 1)).unwrap();
    let lifts = enumerate_liftings(&p, &a, DEFAULT_ENUM_BUDGET).unwrap();
    assert_eq!(lifts.len(), 125);

    match carayol_conjugator(&p, &a, &lifts[0], &lifts[0], 100_000).unwrap() {
        CarayolOutcome::Conjugator(c) => assert!(c.is_identity()),
        other => panic!("expected identity conjugator, got {other:?}"),
    }

    let kernel = a.kernel_matrices(2, 100_000).unwrap();
    let k = &kernel[137];
    let kinv = k.inverse().unwrap();
    let rho2 = Lifting {
        images: lifts[0]
            .images
            .iter()
            .map(|x| k.mul(x).unwrap().mul(&kinv).unwrap())
            .collect(),
    };
    match carayol_conjugator(&p, &a, &lifts[0], &rho2, 100_000).unwrap() {
        CarayolOutcome::Conjugator(c) => {
            assert!(a.residue_matrix(&c).is_identity());
            let cinv = c.inverse().unwrap();
            for (x, y) in lifts[0].images.iter().zip(rho2.images.iter()) {
                assert!(c.mul(x).unwrap().mul(&cinv).unwrap().eq_to(y));
            }
        }
        other => panic!("expected a conjugator, got {other:?}"),
    }

    // Distinct orbits of the icosahedral problem must exhibit a trace
    // witness: Schur plus equal traces would force conjugacy.
    let eps = dual_numbers();
    let pi = icosahedral_problem(false);
    let ilifts = enumerate_liftings(&pi, &eps, DEFAULT_ENUM_BUDGET).unwrap();
    let orbits = deformation_classes(&pi, &eps, &ilifts, 100_000).unwrap();
    let r1 = &ilifts[orbits[0][0]];
    let r2 = &ilifts[orbits[1][0]];
    match carayol_conjugator(&pi, &eps, r1, r2, 100_000).unwrap() {
        CarayolOutcome::TraceMismatch { word } => {
            assert!(!word.is_empty());
            let ring = eps.ring();
            let inv1: Vec<Matrix> = r1.images.iter().map(|m| m.inverse().unwrap()).collect();
            let inv2: Vec<Matrix> = r2.images.iter().map(|m| m.inverse().unwrap()).collect();
            let mut w1 = Matrix::identity(ring, 2);
            let mut w2 = Matrix::identity(ring, 2);
            for &letter in &word {
                let idx = letter.unsigned_abs() as usize - 1;
                if letter > 0 {
                    w1 = w1.mul(&r1.images[idx]).unwrap();
                    w2 = w2.mul(&r2.images[idx]).unwrap();
                } else {
                    w1 = w1.mul(&inv1[idx]).unwrap();
                    w2 = w2.mul(&inv2[idx]).unwrap();
                }
            }
            assert!(!ring.eq(&w1.trace().unwrap(), &w2.trace().unwrap()));
        }
        other => panic!("expected a trace witness, got {other:?}"),
    }
}
