use exact_algebra::linalg::Subspace;
use exact_algebra::matrix::Matrix;
use exact_algebra::ring::{Elem, Ring};
use group_cohomology::{
    adjoint_module, cochain_dim, cohomology, eval_cochain, homomorphism_from_generators,
    inflate_class, is_cocycle, restrict_class, FiniteGroup, GModule, DEFAULT_BUDGET_CELLS,
};

/// Count 1-cocycles by sheer enumeration of all functions G\{1} -> M.
fn bruteforce_z1_count(group: &FiniteGroup, module: &GModule) -> u64 {
    let ring = module.ring().clone();
    let width = cochain_dim(group, module, 1);
    let elems = ring.enumerate(10_000).unwrap();
    let card = elems.len() as u64;
    let total = card.pow(width as u32);
    let mut count = 0u64;
    for stamp in 0..total {
        let mut cochain: Vec<Elem> = Vec::with_capacity(width);
        let mut x = stamp;
        for _ in 0..width {
            cochain.push(elems[(x % card) as usize].clone());
            x /= card;
        }
        if is_cocycle(group, module, 1, &cochain).unwrap() {
            count += 1;
        }
    }
    count
}

#[test]
fn coprime_vanishing_against_bruteforce() {
    // Z/3 acting trivially on F_5: no cohomology above degree 0, and the
    // brute-force count of 1-cocycles agrees with the linear algebra.
    let f5 = Ring::fp(5);
    let r = Matrix::from_i64(&f5, 2, 2, &[0, 4, 1, 4]);
    let g = FiniteGroup::generate(&[r], 10).unwrap();
    assert_eq!(g.size(), 3);
    let m = GModule::trivial(&g, &f5, 1).unwrap();
    let h1 = cohomology(&g, &m, 1, DEFAULT_BUDGET_CELLS).unwrap();
    let h2 = cohomology(&g, &m, 2, DEFAULT_BUDGET_CELLS).unwrap();
    assert_eq!(h1.dim_h, 0);
    assert_eq!(h2.dim_h, 0);
    assert_eq!(bruteforce_z1_count(&g, &m), 5u64.pow(h1.dim_z as u32));
    assert_eq!(h1.dim_z, 0);
}

#[test]
fn cyclic_p_cocycle_count_against_bruteforce() {
    // Z/5 on trivial F_5: Z^1 = Hom(Z/5, F_5) is one-dimensional, so the
    // brute force over all 5^4 candidate cochains must find exactly 5.
    let f5 = Ring::fp(5);
    let u = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
    let g = FiniteGroup::generate(&[u], 10).unwrap();
    let m = GModule::trivial(&g, &f5, 1).unwrap();
    let h1 = cohomology(&g, &m, 1, DEFAULT_BUDGET_CELLS).unwrap();
    assert_eq!(h1.dim_h, 1);
    assert_eq!(h1.dim_z, 1);
    assert_eq!(bruteforce_z1_count(&g, &m), 5);
}

#[test]
fn adjoint_of_full_gl2_is_irreducible() {
    // ad0 of GL_2(F_5) acting on itself: no invariant line and no invariant
    // plane, checked exhaustively over all 31 lines on each side.
    let f5 = Ring::fp(5);
    let e = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
    let f = Matrix::from_i64(&f5, 2, 2, &[1, 0, 1, 1]);
    let d = Matrix::from_i64(&f5, 2, 2, &[2, 0, 0, 1]);
    let g = FiniteGroup::generate(&[e, f, d], 1000).unwrap();
    assert_eq!(g.size(), 480);
    let ad0 = adjoint_module(&g, None, true, None).unwrap();
    assert_eq!(ad0.dim(), 3);

    let nonzero_vectors: Vec<Vec<Elem>> = {
        let mut out = Vec::new();
        for a in 0..5i64 {
            for b in 0..5i64 {
                for c in 0..5i64 {
                    if a != 0 || b != 0 || c != 0 {
                        out.push(vec![f5.from_i64(a), f5.from_i64(b), f5.from_i64(c)]);
                    }
                }
            }
        }
        out
    };
    let gens: Vec<usize> = g.generator_indices().iter().map(|&x| x as usize).collect();

    // invariant lines
    for v in &nonzero_vectors {
        let line = Subspace::from_vectors(&f5, 3, vec![v.clone()]);
        let invariant = gens.iter().all(|&s| line.contains(&ad0.apply(s, v)));
        assert!(!invariant, "found an invariant line");
    }
    // invariant planes, as kernels of covectors: the plane w^perp is stable
    // iff w composed with the action is proportional to w for each generator
    for w in &nonzero_vectors {
        let wline = Subspace::from_vectors(&f5, 3, vec![w.clone()]);
        let invariant = gens.iter().all(|&s| {
            let acted: Vec<Elem> = (0..3)
                .map(|j| {
                    let mut acc = f5.zero();
                    for i in 0..3 {
                        acc = f5.add(&acc, &f5.mul(&w[i], ad0.act(s).get(i, j)));
                    }
                    acc
                })
                .collect();
            wline.contains(&acted)
        });
        assert!(!invariant, "found an invariant plane");
    }
}

#[test]
fn inflation_restriction_exactness_on_split_extension() {
    // G = Z/2 x Z/2 realized by signed diagonals over F_3, H the first
    // factor, Q = G/H, coefficients the trivial module F_2.  The five-term
    // sequence begins 0 -> H^1(Q, M^H) -> H^1(G, M) -> H^1(H, M), and both
    // the injectivity and im(inf) = ker(res) are checkable by hand here.
    let f3 = Ring::fp(3);
    let f2 = Ring::fp(2);
    let g1 = Matrix::from_i64(&f3, 2, 2, &[2, 0, 0, 1]);
    let g2 = Matrix::from_i64(&f3, 2, 2, &[1, 0, 0, 2]);
    let g = FiniteGroup::generate(&[g1.clone(), g2.clone()], 10).unwrap();
    assert_eq!(g.size(), 4);
    let m = GModule::trivial(&g, &f2, 1).unwrap();

    // quotient by <g1>: a 1x1 sign group over F_3
    let q = FiniteGroup::generate(&[Matrix::from_i64(&f3, 1, 1, &[2])], 5).unwrap();
    let z = q.index_of(&Matrix::from_i64(&f3, 1, 1, &[2])).unwrap();
    let pi = homomorphism_from_generators(&g, &q, &[0, z]).unwrap();
    let mq = GModule::trivial(&q, &f2, 1).unwrap();

    let h1_g = cohomology(&g, &m, 1, DEFAULT_BUDGET_CELLS).unwrap();
    let h1_q = cohomology(&q, &mq, 1, DEFAULT_BUDGET_CELLS).unwrap();
    assert_eq!(h1_g.dim_h, 2);
    assert_eq!(h1_q.dim_h, 1);

    // image of inflation inside H^1(G), in class coordinates
    let mut inf_image = Vec::new();
    for c in &h1_q.classes {
        let (_pulled, inflated) = inflate_class(&g, &q, &mq, &pi, c).unwrap();
        assert!(is_cocycle(&g, &m, 1, &inflated.cochain).unwrap());
        let coords = h1_g.class_coords(&inflated.cochain).unwrap();
        assert!(coords.iter().any(|x| !f2.is_zero(x)), "inflation not injective");
        inf_image.push(coords);
    }
    let inf_space = Subspace::from_vectors(&f2, h1_g.dim_h, inf_image);
    assert_eq!(inf_space.dim(), 1);

    // kernel of restriction to H = <g1>
    let h_indices = g.generated_subgroup(&[g.index_of(&g1).unwrap()]);
    assert_eq!(h_indices.len(), 2);
    let mut res_matrix_cols = Vec::new();
    let mut h1_h_opt = None;
    for c in &h1_g.classes {
        let (sub, sub_m, res) = restrict_class(&g, &m, c, &h_indices).unwrap();
        let h1_h = cohomology(&sub, &sub_m, 1, DEFAULT_BUDGET_CELLS).unwrap();
        let coords = h1_h.class_coords(&res.cochain).unwrap();
        res_matrix_cols.push(coords);
        h1_h_opt = Some(h1_h.dim_h);
    }
    assert_eq!(h1_h_opt, Some(1));
    let res_matrix = Matrix::from_fn(&f2, 1, h1_g.dim_h, |_i, j| res_matrix_cols[j][0].clone());
    let kernel = exact_algebra::kernel_basis(&res_matrix).unwrap();
    let ker_space = Subspace::from_vectors(&f2, h1_g.dim_h, kernel);
    assert!(inf_space.equals_space(&ker_space), "im(inf) != ker(res)");
}

#[test]
fn inflate_then_evaluate_on_section() {
    // evaluating an inflated class on a lift agrees with the original class
    let f3 = Ring::fp(3);
    let f2 = Ring::fp(2);
    let g1 = Matrix::from_i64(&f3, 2, 2, &[2, 0, 0, 1]);
    let g2 = Matrix::from_i64(&f3, 2, 2, &[1, 0, 0, 2]);
    let g = FiniteGroup::generate(&[g1, g2.clone()], 10).unwrap();
    let q = FiniteGroup::generate(&[Matrix::from_i64(&f3, 1, 1, &[2])], 5).unwrap();
    let z = q.index_of(&Matrix::from_i64(&f3, 1, 1, &[2])).unwrap();
    let pi = homomorphism_from_generators(&g, &q, &[0, z]).unwrap();
    let mq = GModule::trivial(&q, &f2, 1).unwrap();
    let h1_q = cohomology(&q, &mq, 1, DEFAULT_BUDGET_CELLS).unwrap();
    let c = &h1_q.classes[0];
    let (pulled, inflated) = inflate_class(&g, &q, &mq, &pi, c).unwrap();
    // section sends z to g2
    let lift = g.index_of(&g2).unwrap();
    let got = eval_cochain(&g, &pulled, &inflated.cochain, &[lift]);
    let expect = eval_cochain(&q, &mq, &c.cochain, &[z]);
    assert_eq!(got.len(), expect.len());
    for (x, y) in got.iter().zip(&expect) {
        assert!(f2.eq(x, y));
    }
}

#[test]
fn restriction_is_transitive() {
    // order 20 > order 10 > order 5 subgroup chain with the full adjoint
    // module; restriction is cochain-level, so any cocycle will do
    let f5 = Ring::fp(5);
    let a = Matrix::from_i64(&f5, 2, 2, &[1, 1, 0, 1]);
    let b = Matrix::from_i64(&f5, 2, 2, &[2, 0, 0, 1]);
    let g = FiniteGroup::generate(&[a.clone(), b.clone()], 100).unwrap();
    assert_eq!(g.size(), 20);
    let ad0 = adjoint_module(&g, None, false, None).unwrap();
    let x = vec![f5.zero(), f5.one(), f5.zero(), f5.zero()];
    let cochain = group_cohomology::differential_apply(&g, &ad0, 0, &x).unwrap();
    assert!(cochain.iter().any(|v| !f5.is_zero(v)));
    assert!(is_cocycle(&g, &ad0, 1, &cochain).unwrap());
    let c = &group_cohomology::CohomologyClass { degree: 1, cochain };

    let ai = g.index_of(&a).unwrap();
    let b2i = g.mul(g.index_of(&b).unwrap(), g.index_of(&b).unwrap());
    let mid_indices = g.generated_subgroup(&[ai, b2i]);
    assert_eq!(mid_indices.len(), 10);
    let small_indices = g.generated_subgroup(&[ai]);
    assert_eq!(small_indices.len(), 5);

    // one hop
    let (small_direct, _m1, res_direct) = restrict_class(&g, &ad0, c, &small_indices).unwrap();
    // two hops
    let (mid, mid_m, res_mid) = restrict_class(&g, &ad0, c, &mid_indices).unwrap();
    let small_in_mid: Vec<usize> = small_indices
        .iter()
        .map(|&i| mid.index_of(g.element(i)).unwrap())
        .collect();
    let (small_via_mid, _m2, res_twice) =
        restrict_class(&mid, &mid_m, &res_mid, &small_in_mid).unwrap();

    assert_eq!(small_direct.size(), small_via_mid.size());
    for i in 0..small_direct.size() {
        assert!(small_direct.element(i).eq_to(small_via_mid.element(i)));
    }
    assert_eq!(res_direct.cochain.len(), res_twice.cochain.len());
    for (x, y) in res_direct.cochain.iter().zip(&res_twice.cochain) {
        assert!(f5.eq(x, y));
    }
}
