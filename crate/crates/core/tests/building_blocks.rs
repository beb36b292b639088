mod common;

use common::{elem, h4, int, Q};
use tensor_recon::algebra::{AlgElement, BasisElem, GradedAlgebra};
use tensor_recon::blockmat::{inverse, is_invertible, pi_index_map, BlockMatrix};
use tensor_recon::fusion::format_ring_element;
use tensor_recon::phimap::{hat_tensor, hat_tensor_via_perm, PhiTable};
use tensor_recon::report::{Locus, Report, Status};
use tensor_recon::{Error, FusionRing, Obj, Rational};

fn z2() -> FusionRing {
    FusionRing::from_products(2, |i, j| Obj::unit(2, (i + j) % 2).0)
}

#[test]
fn object_parsing() {
    assert_eq!(Obj::parse("e3", 4).unwrap(), Obj::unit(4, 2));
    assert_eq!(Obj::parse("e_2", 4).unwrap(), Obj::unit(4, 1));
    assert_eq!(Obj::parse(" 1, 0,2,0 ", 4).unwrap(), Obj(vec![1, 0, 2, 0]));
    assert!(matches!(Obj::parse("e5", 4), Err(Error::OutOfRange(_))));
    assert!(matches!(Obj::parse("e0", 4), Err(Error::OutOfRange(_))));
    assert!(matches!(Obj::parse("1,2", 4), Err(Error::Malformed(_))));
    assert!(matches!(Obj::parse("x", 4), Err(Error::Malformed(_))));
    assert_eq!(Obj(vec![2, 0, 1]).grades(), vec![0, 0, 2]);
    assert_eq!(Obj(vec![2, 0, 1]).to_string(), "2,0,1");
}

#[test]
fn fusion_ring_rejects_ragged_tables() {
    assert!(FusionRing::new(vec![]).is_err());
    assert!(FusionRing::new(vec![vec![vec![1, 0]], vec![vec![0, 1], vec![1, 0]]]).is_err());
    assert_eq!(FusionRing::new(z2().to_nested()).unwrap(), z2());
}

#[test]
fn fusion_check_locates_a_broken_unit_and_associativity() {
    assert!(z2().check().is_ok());
    let mut ring = z2();
    ring.set_c(0, 1, 0, 1);
    let report = ring.check();
    assert_eq!(report.first_violation("fusion.unit.left").unwrap().locus.one_based(), vec![2, 1]);
    assert!(report.first_violation("fusion.associativity").is_some());
}

#[test]
fn object_tensor_is_bilinear() {
    let ring = &h4().fusion;
    let (m, s) = (Obj(vec![1, 2, 0, 1]), Obj(vec![0, 1, 1, 0]));
    let mut sum = Obj::zero(4);
    for i in 0..4 {
        for j in 0..4 {
            for _ in 0..m.get(i) * s.get(j) {
                sum = sum.add(&ring.cvec(i, j));
            }
        }
    }
    assert_eq!(ring.obj_tensor(&m, &s), sum);
}

#[test]
fn expression_evaluation() {
    let ring = &h4().fusion;
    let eval = |s: &str| format_ring_element(&ring.eval_expression(s).unwrap());
    assert_eq!(eval("r2 - r2"), "0");
    assert_eq!(eval("3*r1 - r3"), "3r1-r3");
    assert_eq!(eval("(r3)^0"), "r1");
    assert_eq!(eval("r3^3"), "r3");
    // juxtaposition and the middle dot both multiply
    assert_eq!(eval("2r2 r3"), eval("2*r2*r3"));
    assert_eq!(eval("r2·r3"), "r4");
    for bad in ["r5", "r2 +", "(r1", "r1 r2 x", "r0"] {
        assert!(ring.eval_expression(bad).is_err(), "{bad}");
    }
}

fn dual_numbers() -> GradedAlgebra<Rational> {
    let basis = vec![BasisElem { name: "e".into(), row: 0, col: 0 }, BasisElem { name: "t".into(), row: 0, col: 0 }];
    let products = vec![(0, 0, AlgElement::basis(0)), (0, 1, AlgElement::basis(1)), (1, 0, AlgElement::basis(1))];
    GradedAlgebra::new(1, basis, vec![0], products).unwrap()
}

#[test]
fn algebra_constructor_validates_indices() {
    let b = |name: &str, row, col| BasisElem { name: name.into(), row, col };
    assert!(matches!(GradedAlgebra::<Rational>::new(1, vec![b("e", 0, 1)], vec![0], vec![]), Err(Error::OutOfRange(_))));
    assert!(matches!(GradedAlgebra::<Rational>::new(1, vec![b("e", 0, 0), b("e", 0, 0)], vec![0], vec![]), Err(Error::Malformed(_))));
    assert!(matches!(GradedAlgebra::<Rational>::new(1, vec![b("e", 0, 0)], vec![3], vec![]), Err(Error::OutOfRange(_))));
    assert!(matches!(
        GradedAlgebra::<Rational>::new(1, vec![b("e", 0, 0)], vec![0], vec![(0, 2, AlgElement::zero())]),
        Err(Error::OutOfRange(_))
    ));
}

#[test]
fn local_algebra_with_a_nilpotent() {
    let alg = dual_numbers();
    let report = alg.check(&Q);
    // dim e1Ae1 = 2 is the only failure
    assert_eq!(report.status("algebra.associativity"), Some(Status::Pass));
    assert!(report.first_violation("algebra.dim-e1Ae1").is_some());
    let t = AlgElement::basis(1);
    assert!(alg.mul(&t, &t).is_zero());
    assert_eq!(alg.radical(&Q).unwrap().dim(), 1);
    assert!(!alg.is_semisimple_by_dimension());
}

#[test]
fn algebra_check_catches_a_badly_graded_product() {
    let q = h4();
    let a = &q.algebra;
    let b: Vec<BasisElem> = a.basis().to_vec();
    let mut products = Vec::new();
    for p in 0..a.dim() {
        for r in 0..a.dim() {
            let v = a.mul_basis(p, r).clone();
            if !v.is_zero() {
                products.push((p, r, v));
            }
        }
    }
    // x32·x21 lands in e3Ae1, but x43x32 lives in e4Ae2
    let (x32, x21) = (a.index_of("x32").unwrap(), a.index_of("x21").unwrap());
    products.push((x32, x21, AlgElement::basis(a.index_of("x43x32").unwrap())));
    let broken = GradedAlgebra::new(4, b, a.idempotents().to_vec(), products).unwrap();
    let report = broken.check(&Q);
    assert!(report.first_violation("algebra.grading").is_some());
}

#[test]
fn elements_combine_linearly() {
    let a = &h4().algebra;
    let x = elem(a, "x21").scale(&int(3)).add(&elem(a, "x14"));
    assert_eq!(x.coeff(a.index_of("x21").unwrap()), int(3));
    assert!(x.sub(&x).is_zero());
    assert_eq!(x.neg().neg(), x);
    assert_eq!(a.mul(&a.unit_element(), &x), x);
    assert_eq!(a.format(&x), "3*x21+x14");
    assert_eq!(a.from_coords(1, 0, &a.coords(&elem(a, "x21"), 1, 0)), elem(a, "x21"));
}

#[test]
fn block_matrices_reject_badly_graded_entries() {
    let a = &h4().algebra;
    let e2 = Obj::unit(4, 1);
    let e1 = Obj::unit(4, 0);
    assert!(BlockMatrix::element(a, 1, 0, elem(a, "x21")).is_ok());
    assert!(matches!(BlockMatrix::element(a, 0, 1, elem(a, "x21")), Err(Error::TypeMismatch(_))));
    assert!(BlockMatrix::from_rows(a, e2.clone(), e1.clone(), vec![vec![elem(a, "x32")]]).is_err());
    let x = BlockMatrix::from_rows(a, e2, e1, vec![vec![elem(a, "x21")]]).unwrap();
    assert!(matches!(x.compose(a, &x), Err(Error::TypeMismatch(_))));
}

#[test]
fn unitriangular_matrices_invert() {
    let q = h4();
    let a = &q.algebra;
    let m = Obj(vec![1, 1, 0, 0]);
    let x = BlockMatrix::from_rows(
        a,
        m.clone(),
        m.clone(),
        vec![vec![elem(a, "e1").scale(&int(2)), AlgElement::zero()], vec![elem(a, "x21"), elem(a, "e2")]],
    )
    .unwrap();
    let inv = inverse(a, &x).unwrap();
    assert_eq!(q.compose(&x, &inv).unwrap(), q.identity(&m));
    assert_eq!(q.compose(&inv, &x).unwrap(), q.identity(&m));
    let nilpotent = BlockMatrix::from_rows(
        a,
        m.clone(),
        m,
        vec![vec![AlgElement::zero(), AlgElement::zero()], vec![elem(a, "x21"), AlgElement::zero()]],
    )
    .unwrap();
    assert!(!is_invertible(a, &nilpotent));
}

#[test]
fn pi_index_map_groups_rows_by_grade() {
    // blocks of types (1,1), (1,0): grade-1 rows come first, block by block
    let map = pi_index_map(&[Obj(vec![1, 1]), Obj(vec![1, 0])]);
    assert_eq!(map, vec![vec![0, 2], vec![1]]);
    let map = pi_index_map(&[Obj(vec![0, 2]), Obj(vec![2, 1])]);
    assert_eq!(map, vec![vec![2, 3], vec![0, 1, 4]]);
}

#[test]
fn both_hat_tensor_layouts_agree_on_h4() {
    let q = h4();
    let a = &q.algebra;
    let objs = [Obj(vec![1, 1, 0, 0]), Obj(vec![0, 1, 0, 1]), Obj(vec![0, 0, 1, 0])];
    for m in &objs {
        for s in &objs {
            let x = q.identity(m).add(&q.identity(m)).unwrap();
            let y = q.identity(s);
            let direct = hat_tensor(&q.fusion, a, &q.phi, &x, &y);
            assert_eq!(direct, hat_tensor_via_perm(&q.fusion, a, &q.phi, &x, &y).unwrap());
        }
    }
    let x = BlockMatrix::basis_element(a, a.index_of("x32").unwrap());
    let y = BlockMatrix::basis_element(a, a.index_of("x14").unwrap());
    assert_eq!(hat_tensor(&q.fusion, a, &q.phi, &x, &y), hat_tensor_via_perm(&q.fusion, a, &q.phi, &x, &y).unwrap());
}

#[test]
fn phi_setter_checks_the_type() {
    let q = h4();
    let a = &q.algebra;
    let mut phi = PhiTable::empty(a);
    let (e2, x32, x21) = (a.index_of("e2").unwrap(), a.index_of("x32").unwrap(), a.index_of("x21").unwrap());
    let good = q.phi.get(&q.fusion, a, e2, x32);
    assert!(phi.set(&q.fusion, a, e2, x32, good.clone()).is_ok());
    assert!(matches!(phi.set(&q.fusion, a, e2, x21, good.clone()), Err(Error::TypeMismatch(_))));
    assert!(matches!(phi.set(&q.fusion, a, 10, 0, good), Err(Error::OutOfRange(_))));
}

#[test]
fn report_bookkeeping() {
    let mut report = Report::new();
    report.pass_count("a", 3);
    report.fail("b", Locus::new("i,j", [0, 2]), "boom".into());
    report.pass_count("b", 5);
    report.skip("c", "not applicable".into());
    assert!(!report.is_ok());
    assert_eq!(report.status("a"), Some(Status::Pass));
    assert_eq!(report.status("b"), Some(Status::Fail));
    assert_eq!(report.status("c"), Some(Status::Skipped));
    assert_eq!(report.instances("b"), 5);
    let lines = report.json_lines();
    assert_eq!(lines.len(), 4);
    let v: serde_json::Value = serde_json::from_str(&lines[3]).unwrap();
    assert_eq!(v["locus"]["index"], serde_json::json!([1, 3]));
    assert!(report.summary().ends_with("1 violation(s)\n"));
}
