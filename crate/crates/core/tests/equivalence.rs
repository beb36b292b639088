mod common;

use common::{h4, random_morphism, random_obj, rat, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensor_recon::algebra::AlgElement;
use tensor_recon::equivalence::{apply_functor, check_eta_equiv, check_eta_equiv_same_phi, check_tensor_equiv, EquivWitness, EtaWitness};
use tensor_recon::h4::{build_diagonal, build_h4_regauged, build_vec_z2, build_vec_z2_broken};
use tensor_recon::{FusionRing, Obj, Rational, RationalQuadruple};

fn random_scales(rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    if i == 0 || j == 0 {
                        rat(1, 1)
                    } else {
                        let num = [-3, -2, -1, 1, 2, 3, 5][rng.gen_range(0..7)];
                        rat(num, rng.gen_range(1..=4))
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn identity_witness_accepted() {
    let q = h4();
    let report = check_eta_equiv(q, q, &EtaWitness::identity(q));
    assert!(report.is_ok(), "{}", report.summary());
    let report = check_tensor_equiv(q, q, &EquivWitness::identity(q));
    assert!(report.is_ok(), "{}", report.summary());
}

#[test]
fn regauged_h4_accepted_for_five_scale_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..5 {
        let scales = random_scales(&mut rng);
        let (regauged, w) = build_h4_regauged(&Q, &scales).unwrap();
        assert!(regauged.validate().is_ok(), "round {round}");
        let report = check_eta_equiv(h4(), &regauged, &w);
        assert!(report.is_ok(), "round {round}: {}", report.summary());
    }
}

#[test]
fn regauge_rescales_phi_by_the_scale_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let scales = random_scales(&mut rng);
    let (regauged, _) = build_h4_regauged(&Q, &scales).unwrap();
    let q = h4();
    let a = &q.algebra;
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let ((i, j), (l, k)) = (a.grade(x), a.grade(y));
            let ratio = scales[i][l].clone() / scales[j][k].clone();
            let want = q.phi.get(&q.fusion, a, x, y).scale(&ratio);
            assert_eq!(regauged.phi.get(&q.fusion, a, x, y), want, "({}, {})", a.name(x), a.name(y));
        }
    }
}

#[test]
fn regauge_witness_in_the_wrong_direction_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let scales = random_scales(&mut rng);
    let (regauged, w) = build_h4_regauged(&Q, &scales).unwrap();
    assert!(!check_eta_equiv(&regauged, h4(), &w).is_ok());
}

#[test]
fn sign_cocycle_rejected_at_the_nontrivial_triple() {
    let trivial: RationalQuadruple = build_vec_z2(&Q, false);
    let sign: RationalQuadruple = build_vec_z2(&Q, true);
    assert!(trivial.validate().is_ok());
    assert!(sign.validate().is_ok());
    let report = check_eta_equiv(&trivial, &sign, &EtaWitness::identity(&trivial));
    let v = report.first_violation("eta.coherence").expect("coherence fails");
    assert_eq!(v.locus.one_based(), vec![2, 2, 2]);
    assert_eq!(report.violations().len(), 1);
    let same = check_eta_equiv_same_phi(&trivial, &sign.assoc, &EtaWitness::identity(&trivial));
    assert_eq!(same.violations(), report.violations());
}

#[test]
fn broken_vec_z2_fails_the_pentagon() {
    let broken: RationalQuadruple = build_vec_z2_broken(&Q);
    let report = broken.validate();
    assert!(!report.is_ok());
    assert!(report.first_violation("assoc.pentagon").is_some());
}

#[cfg(feature = "witness-search")]
#[test]
fn no_gauge_witness_relates_the_sign_cocycle_to_the_trivial_associator() {
    use tensor_recon::equivalence::search_eta_witness;
    let trivial: RationalQuadruple = build_vec_z2(&Q, false);
    let sign: RationalQuadruple = build_vec_z2(&Q, true);
    let candidates: Vec<Rational> = [-2, -1, 1, 2].iter().map(|&v| rat(v, 1)).collect();
    assert!(search_eta_witness(&trivial, &sign, &candidates).unwrap().is_none());
    assert!(search_eta_witness(&trivial, &trivial, &candidates).unwrap().is_some());
}

#[test]
fn witness_composition_accumulates_scales() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s1 = random_scales(&mut rng);
    let s2 = random_scales(&mut rng);
    let product: Vec<Vec<Rational>> = (0..4).map(|i| (0..4).map(|j| s1[i][j].clone() * s2[i][j].clone()).collect()).collect();
    let (q1, w1) = build_h4_regauged(&Q, &s1).unwrap();
    let (q12, _) = build_h4_regauged(&Q, &product).unwrap();
    // q12 → q1 has witness s2⁻¹, then q1 → h4 has s1⁻¹
    let w2 = EtaWitness::from_fn(4, |i, j| q1.identity(&q1.fusion.cvec(i, j)).scale(&(rat(1, 1) / s2[i][j].clone())));
    assert!(check_eta_equiv(&q1, &q12, &w2).is_ok());
    let composite = w1.then(&q1.algebra, &w2).unwrap();
    let report = check_eta_equiv(h4(), &q12, &composite);
    assert!(report.is_ok(), "{}", report.summary());
}

/// `δ(x_ij) = λ_ij x_ij` with `δ` multiplicative on the two paths.
fn arrow_scaling(rng: &mut ChaCha8Rng) -> EquivWitness<Rational> {
    let q = h4();
    let a = &q.algebra;
    let mut w = EquivWitness::identity(q);
    let mut lambda = |name: &str| (a.index_of(name).unwrap(), rat([-2, -1, 1, 3][rng.gen_range(0..4)], rng.gen_range(1..=3)));
    let arrows: Vec<(usize, Rational)> = ["x21", "x32", "x43", "x14"].iter().map(|n| lambda(n)).collect();
    for (p, l) in &arrows {
        w.delta[*p] = AlgElement::from_terms(vec![(*p, l.clone())]);
    }
    let path = |x: usize, y: usize| arrows[x].1.clone() * arrows[y].1.clone();
    w.delta[a.index_of("x43x32").unwrap()] = AlgElement::from_terms(vec![(a.index_of("x43x32").unwrap(), path(2, 1))]);
    w.delta[a.index_of("x21x14").unwrap()] = AlgElement::from_terms(vec![(a.index_of("x21x14").unwrap(), path(0, 3))]);
    w
}

#[test]
fn functor_preserves_composition_on_random_pairs() {
    let q = h4();
    let a = &q.algebra;
    let mut rng = ChaCha8Rng::seed_from_u64(0xf00d);
    let w = arrow_scaling(&mut rng);
    for _ in 0..100 {
        let (m, s, t) = (random_obj(4, 3, &mut rng), random_obj(4, 3, &mut rng), random_obj(4, 3, &mut rng));
        let x = random_morphism(a, &Q, &t, &s, &mut rng);
        let y = random_morphism(a, &Q, &s, &m, &mut rng);
        let fx = apply_functor(a, &w, &x).unwrap();
        let fy = apply_functor(a, &w, &y).unwrap();
        let fxy = apply_functor(a, &w, &q.compose(&x, &y).unwrap()).unwrap();
        assert_eq!(q.compose(&fx, &fy).unwrap(), fxy);
        assert_eq!(apply_functor(a, &w, &q.identity(&m)).unwrap(), q.identity(&m));
    }
}

fn z3() -> RationalQuadruple {
    let ring = FusionRing::from_products(3, |i, j| Obj::unit(3, (i + j) % 3).0);
    build_diagonal(&Q, ring)
}

#[test]
fn relabelling_the_generators_of_z3_is_an_equivalence() {
    let q = z3();
    assert!(q.validate().is_ok());
    let mut w = EquivWitness::identity(&q);
    w.sigma = vec![0, 2, 1];
    w.delta = vec![AlgElement::basis(0), AlgElement::basis(2), AlgElement::basis(1)];
    w.phi = (0..9).map(|k| q.identity(&q.fusion.cvec(w.sigma[k / 3], w.sigma[k % 3]))).collect();
    let report = check_tensor_equiv(&q, &q, &w);
    assert!(report.is_ok(), "{}", report.summary());
    let x = q.identity(&Obj(vec![0, 2, 1]));
    assert_eq!(apply_functor(&q.algebra, &w, &x).unwrap(), q.identity(&Obj(vec![0, 1, 2])));
}

#[test]
fn swapping_the_two_dimensional_simples_is_not_an_algebra_map() {
    // r2 ↔ r4 is a ring automorphism, but fixing the arrows while swapping
    // e2 and e4 does not respect the grading
    let q = h4();
    let mut w = EquivWitness::identity(q);
    w.sigma = vec![0, 3, 2, 1];
    w.delta.swap(1, 3);
    let report = check_tensor_equiv(q, q, &w);
    assert_eq!(report.status("equiv.ring"), Some(tensor_recon::report::Status::Pass));
    assert!(report.first_violation("equiv.delta").is_some());
}

#[test]
fn scaling_alpha_alone_breaks_the_unit_condition() {
    let q = h4();
    let mut w = EquivWitness::identity(q);
    w.alpha = rat(2, 1);
    assert!(!check_tensor_equiv(q, q, &w).is_ok());
}

#[test]
fn rescaling_alpha_together_with_phi_is_accepted() {
    let q = h4();
    let mut w = EquivWitness::identity(q);
    w.alpha = rat(2, 1);
    w.phi = w.phi.iter().map(|p| p.scale(&rat(2, 1))).collect();
    let report = check_tensor_equiv(q, q, &w);
    assert!(report.is_ok(), "{}", report.summary());
}

#[test]
fn sign_cocycle_breaks_the_tensor_coherence_condition() {
    let trivial: RationalQuadruple = build_vec_z2(&Q, false);
    let sign: RationalQuadruple = build_vec_z2(&Q, true);
    let report = check_tensor_equiv(&trivial, &sign, &EquivWitness::identity(&trivial));
    assert_eq!(report.first_violation("equiv.coherence").unwrap().locus.one_based(), vec![2, 2, 2]);
    assert_eq!(report.violations().len(), 1);
}

#[test]
fn regauge_scale_edge_cases() {
    let ones = vec![vec![rat(1, 1); 4]; 4];
    let (same, w) = build_h4_regauged(&Q, &ones).unwrap();
    assert_eq!(&same, h4());
    assert!(check_eta_equiv(h4(), &same, &w).is_ok());

    let mut flipped = ones.clone();
    flipped[1][1] = rat(-1, 1);
    let (q, _) = build_h4_regauged(&Q, &flipped).unwrap();
    assert_eq!(q.validate().status("assoc.pentagon"), Some(tensor_recon::report::Status::Pass));

    // scale(2,3) only touches phi on pairs landing in c_23
    let mut one_cell = ones.clone();
    one_cell[1][2] = rat(2, 1);
    let (q, w) = build_h4_regauged(&Q, &one_cell).unwrap();
    assert!(check_eta_equiv(h4(), &q, &w).is_ok());
    let a = &q.algebra;
    for x in 0..a.dim() {
        for y in 0..a.dim() {
            let ((i, j), (l, k)) = (a.grade(x), a.grade(y));
            let touched = (i, l) == (1, 2) || (j, k) == (1, 2);
            let differs = q.phi.get(&q.fusion, a, x, y) != h4().phi.get(&q.fusion, a, x, y);
            assert!(differs <= touched, "({}, {})", a.name(x), a.name(y));
        }
    }

    let mut zero = ones;
    zero[2][3] = rat(0, 1);
    assert!(build_h4_regauged(&Q, &zero).is_err());
}
