//! Small hand-checkable cases for each public operation.

use num_bigint::BigInt;
use num_rational::BigRational;

use torsion_lab_core::cocycle::{
    coboundary, epsilon, extension_group, flat_trivializations_on_cyclic, gamma, is_coboundary, restrict,
    schur_multiplier, standard_torsion_cocycle,
};
use torsion_lab_core::local_system::{
    local_system_from_torsion, twisted_class_algebra, twisted_cr_cohomology, verify_inner_local_system,
};
use torsion_lab_core::sectors::{
    evaluation, inertia, involution, moduli_sectors, multisector_of, multisectors, virtual_dimension,
};
use torsion_lab_core::surface::{
    alpha_weight_closed, canonical_frames, enumerate_homs, fundamental_class_multiplier, gluing_check, gw_table,
    relator_check, theta_with_boundary, twisted_dw_partition, twisted_point_gw, Gluing,
};
use torsion_lab_core::{
    Cochain1, Cocycle2, CocycleError, Cyclotomic, Element, FiniteGroup, GroupError, OrbifoldPresentation, Rational,
    RootOfUnity, SurfaceHom, SurfaceSignature, Trivialization,
};

const CAP: u64 = torsion_lab_core::DEFAULT_ENUMERATION_CAP;

fn v4_torsion() -> (FiniteGroup, Cocycle2) {
    standard_torsion_cocycle(2)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// (a, b) ∈ Z/2×Z/2 sits at index 2a + b
const A: Element = Element(2);
const B: Element = Element(1);
const AB: Element = Element(3);

#[test]
fn cayley_tables() {
    let g = FiniteGroup::from_cayley_table(&[vec![0]], "one").unwrap();
    assert_eq!(g.order(), 1);
    let z2 = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]], "z2").unwrap();
    assert_eq!((z2.order(), z2.identity()), (2, Element(0)));
    // a Latin square with identity 0 that is not associative
    let bad =
        vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    assert!(matches!(FiniteGroup::from_cayley_table(&bad, "bad"), Err(GroupError::NotAssociative { .. })));
}

#[test]
fn permutation_closures() {
    let g = FiniteGroup::from_permutation_generators(2, &[vec![1, 0]], "s2", 100).unwrap();
    assert_eq!(g.order(), 2);
    let s3 = FiniteGroup::from_permutation_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], "s3", 100).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(FiniteGroup::from_permutation_generators(4, &[], "e", 100).unwrap().order(), 1);
}

#[test]
fn classes_and_centralizers() {
    let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
    assert_eq!(v4.conjugacy_classes().len(), 4);
    assert!(v4.conjugacy_classes().iter().all(|c| c.len() == 1));
    assert_eq!((v4.order(), v4.exponent()), (4, 2));
    let s3 = FiniteGroup::symmetric(3);
    assert_eq!(s3.class_size_multiset(), vec![1, 2, 3]);
    assert_eq!(FiniteGroup::trivial().conjugacy_classes().len(), 1);
    let transposition = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    assert_eq!(s3.centralizer(transposition).order(), 2);
    assert_eq!(s3.centralizer(s3.identity()).order(), 6);
    for x in v4.elements() {
        assert_eq!(v4.centralizer(x).order(), 4);
        assert_eq!(v4.commutator(x, A), v4.identity());
    }
    assert_eq!(s3.element_order(s3.identity()), 1);
}

#[test]
fn cocycle_validation() {
    let (g, alpha) = v4_torsion();
    assert!(Cocycle2::trivial(&g).is_trivial());
    assert_eq!(alpha.exponents().len(), 4);
    assert!(alpha.exponents().iter().flatten().all(|&x| x < 2));
    let mut exps: Vec<Vec<i64>> = alpha.exponents().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    assert!(Cocycle2::from_exponents(&g, 2, &exps).is_ok());
    exps[1][2] ^= 1;
    assert!(matches!(Cocycle2::from_exponents(&g, 2, &exps), Err(CocycleError::CocycleViolation { .. })));
}

#[test]
fn coboundaries() {
    let (g, alpha) = v4_torsion();
    assert!(coboundary(&g, &Cochain1::trivial(&g)).is_trivial());
    let f = Cochain1::from_exponents(&g, 4, &[0, 1, 3, 2]).unwrap();
    assert!(is_coboundary(&g, &coboundary(&g, &f)).is_some());
    let rho = is_coboundary(&g, &Cocycle2::trivial(&g)).unwrap();
    assert_eq!(coboundary(&g, &rho), Cocycle2::trivial(&g));
    assert!(is_coboundary(&g, &alpha).is_none());
    let z6 = FiniteGroup::cyclic(6);
    let f = Cochain1::from_exponents(&z6, 7, &[0, 1, 2, 3, 4, 5]).unwrap();
    assert!(is_coboundary(&z6, &coboundary(&z6, &f)).is_some());
}

#[test]
fn gamma_values() {
    let (g, alpha) = v4_torsion();
    assert!(g.elements().all(|x| gamma(&g, &alpha, x, g.identity()).is_one()));
    assert_eq!(gamma(&g, &alpha, A, B), RootOfUnity::new(1, 2));
    assert_eq!(epsilon(&alpha, A, B), RootOfUnity::minus_one());
    let trivial = Cocycle2::trivial(&g);
    assert!(g.elements().all(|x| g.elements().all(|y| gamma(&g, &trivial, x, y).is_one())));
}

#[test]
fn schur_multipliers() {
    assert!(schur_multiplier(&FiniteGroup::cyclic(6), 6).unwrap().divisors().is_empty());
    assert!(schur_multiplier(&FiniteGroup::trivial(), 1).unwrap().divisors().is_empty());
    let (v4, _) = v4_torsion();
    assert_eq!(schur_multiplier(&v4, 4).unwrap().divisors(), &[2]);
}

#[test]
fn standard_torsion_values() {
    let (g, alpha) = standard_torsion_cocycle(3);
    let (a, b) = (Element(3), Element(1));
    assert_eq!(alpha.value(a, b), RootOfUnity::new(1, 3));
    assert!(alpha.value(b, a).is_one());
    assert_eq!(g.order(), 9);
}

#[test]
fn extensions() {
    let (g, alpha) = v4_torsion();
    let ext = extension_group(&g, &alpha);
    assert_eq!(ext.order(), 8);
    assert!(!ext.is_abelian());
    let trivial = extension_group(&g, &Cocycle2::trivial(&g).with_modulus(2).unwrap());
    assert!(trivial.is_abelian());
    assert_eq!(trivial.exponent(), 2);
}

#[test]
fn trivializations() {
    let z2 = FiniteGroup::cyclic(2);
    let alpha = Cocycle2::trivial(&z2).with_modulus(2).unwrap();
    assert_eq!(flat_trivializations_on_cyclic(&z2, &alpha, Element(1), Some(2)).unwrap().len(), 2);
    assert_eq!(flat_trivializations_on_cyclic(&z2, &alpha, z2.identity(), None).unwrap().len(), 1);
    let (g, torsion) = v4_torsion();
    let (h, restricted) = restrict(&g, &torsion, &g.cyclic_subgroup(A));
    assert_eq!(h.order(), 2);
    assert!(restricted.is_trivial());
}

#[test]
fn sectors_and_multisectors() {
    assert_eq!(inertia(&OrbifoldPresentation::point(FiniteGroup::symmetric(3))).len(), 3);
    assert_eq!(inertia(&OrbifoldPresentation::point(FiniteGroup::trivial())).len(), 1);
    let free = OrbifoldPresentation::gset(FiniteGroup::cyclic(2), vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(inertia(&free).len(), 1);

    let (v4, _) = v4_torsion();
    let p = OrbifoldPresentation::point(v4.clone());
    assert_eq!(multisectors(&p, 1, CAP).unwrap().len(), 4);
    assert_eq!(multisectors(&p, 2, CAP).unwrap().len(), 16);
    let two = moduli_sectors(&p, 2, CAP).unwrap();
    assert_eq!(two.len(), 4);
    assert!(two.iter().all(|m| m.tuple[1] == v4.inv(m.tuple[0])));
    assert_eq!(moduli_sectors(&p, 3, CAP).unwrap().len(), 16);

    let ms = multisector_of(&p, &[A, B]);
    assert_eq!(involution(&p, &involution(&p, &ms)), ms);
    assert_eq!(evaluation(&p, &ms, &[1, 2]).unwrap(), ms);
    assert_eq!(evaluation(&p, &ms, &[1]).unwrap().tuple, vec![A]);
}

#[test]
fn ages_and_dimensions() {
    let z3 = FiniteGroup::cyclic(3);
    let p = OrbifoldPresentation::linear(z3.clone(), vec![vec![0, 1, 2]; 2], 3, None).unwrap();
    assert_eq!(p.age(z3.identity()), q(0, 1));
    assert_eq!(p.age(Element(1)), q(2, 3));
    assert_eq!(p.age(Element(2)), q(4, 3));
    let z2 = OrbifoldPresentation::linear(FiniteGroup::cyclic(2), vec![vec![0, 1]], 2, None).unwrap();
    assert_eq!(z2.age(Element(1)), q(1, 2));

    let point = OrbifoldPresentation::point(FiniteGroup::cyclic(3));
    assert_eq!(virtual_dimension(&point, 0, &[Element(0); 3]), q(0, 1));
    let z3_three = OrbifoldPresentation::linear(z3, vec![vec![0, 2, 1]; 2], 3, None).unwrap();
    // ages (2/3, 2/3, 2/3) need weight 2 at the generator
    assert_eq!(z3_three.age(Element(1)), q(4, 3));
    assert_eq!(virtual_dimension(&p, 0, &[Element(1); 3]), q(0, 1));
    assert_eq!(virtual_dimension(&point, 1, &[]), q(0, 1));
}

#[test]
fn local_systems() {
    let (g, alpha) = v4_torsion();
    let p = OrbifoldPresentation::point(g.clone());
    let l = local_system_from_torsion(&p, &alpha).unwrap();
    assert!(verify_inner_local_system(&l).is_ok());
    assert!(l.fiber_character(A).contains(&(B, RootOfUnity::minus_one())));
    assert!(!l.is_sector_surviving(A));
    assert!(l.is_sector_surviving(g.identity()));
    let trivial = local_system_from_torsion(&p, &Cocycle2::trivial(&g)).unwrap();
    assert!(g.elements().all(|x| trivial.is_sector_surviving(x)));
    let one = OrbifoldPresentation::point(FiniteGroup::trivial());
    let l = local_system_from_torsion(&one, &Cocycle2::trivial(one.group())).unwrap();
    assert!(l.verify().passed());
}

#[test]
fn twisted_cohomology() {
    let s3 = FiniteGroup::symmetric(3);
    let h = twisted_cr_cohomology(&OrbifoldPresentation::point(s3.clone()), &Cocycle2::trivial(&s3)).unwrap();
    assert_eq!(h.poincare_polynomial(), vec![(q(0, 1), 3)]);
    let (g, alpha) = v4_torsion();
    assert_eq!(twisted_cr_cohomology(&OrbifoldPresentation::point(g), &alpha).unwrap().total_dimension(), 1);
    let z3 = FiniteGroup::cyclic(3);
    let p = OrbifoldPresentation::linear(z3.clone(), vec![vec![0, 1, 2]; 2], 3, None).unwrap();
    let h = twisted_cr_cohomology(&p, &Cocycle2::trivial(&z3)).unwrap();
    assert_eq!(h.poincare_polynomial(), vec![(q(0, 1), 1), (q(4, 3), 1), (q(8, 3), 1)]);
}

#[test]
fn class_algebras() {
    let (g, alpha) = v4_torsion();
    let a = twisted_class_algebra(&g, &alpha).unwrap();
    assert_eq!(a.dimension(), 1);
    assert_eq!(a.constant(0, 0, 0), &Cyclotomic::one());
    let z4 = FiniteGroup::cyclic(4);
    let a = twisted_class_algebra(&z4, &Cocycle2::trivial(&z4)).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let expected = if (i + j) % 4 == k { 1 } else { 0 };
                assert_eq!(a.constant(i, j, k), &Cyclotomic::from_integer(expected));
            }
        }
    }
    let s3 = FiniteGroup::symmetric(3);
    let a = twisted_class_algebra(&s3, &Cocycle2::trivial(&s3)).unwrap();
    let t = s3.class_index(s3.elements().find(|&x| s3.element_order(x) == 2).unwrap());
    let t = a.position(t).unwrap();
    // (sum of transpositions)² = 3·1 + 3·(sum of 3-cycles)
    let id = a.identity_index();
    assert_eq!(a.constant(t, t, id), &Cyclotomic::from_integer(3));
    assert!(a.is_commutative());
}

#[test]
fn homomorphisms() {
    let (v4, alpha) = v4_torsion();
    assert_eq!(enumerate_homs(&v4, &SurfaceSignature::closed(1), CAP).unwrap().len(), 16);
    assert_eq!(enumerate_homs(&v4, &SurfaceSignature::closed(0), CAP).unwrap().len(), 1);
    let sig = SurfaceSignature::with_boundary(0, vec![Some(2), Some(1), Some(3)]);
    assert_eq!(enumerate_homs(&v4, &sig, CAP).unwrap().len(), 1);

    let e = v4.identity();
    assert!(relator_check(&v4, &SurfaceHom { mu: vec![e, e], boundary: vec![] }));
    let s3 = FiniteGroup::symmetric(3);
    let (x, y) = (Element(1), Element(2));
    assert_ne!(s3.mul(x, y), s3.mul(y, x));
    assert!(!relator_check(&s3, &SurfaceHom { mu: vec![x, y], boundary: vec![] }));
    for h in enumerate_homs(&s3, &SurfaceSignature::with_boundary(1, vec![None]), CAP).unwrap() {
        assert!(relator_check(&s3, &h));
    }

    let torus = SurfaceHom { mu: vec![A, B], boundary: vec![] };
    assert_eq!(alpha_weight_closed(&v4, &alpha, &torus).unwrap(), RootOfUnity::minus_one());
    assert_eq!(alpha_weight_closed(&v4, &alpha, &torus).unwrap(), epsilon(&alpha, A, B));
    assert!(alpha_weight_closed(&v4, &Cocycle2::trivial(&v4), &torus).unwrap().is_one());
    assert!(alpha_weight_closed(&v4, &alpha, &SurfaceHom { mu: vec![e, e], boundary: vec![] }).unwrap().is_one());
}

#[test]
fn framed_weights() {
    let (v4, alpha) = v4_torsion();
    let torus = SurfaceHom { mu: vec![A, B], boundary: vec![] };
    assert_eq!(theta_with_boundary(&v4, &alpha, &torus, &[]).unwrap().value, RootOfUnity::minus_one());

    let frames = canonical_frames(&v4, &alpha).unwrap();
    let pants = SurfaceHom { mu: vec![], boundary: vec![A, B, AB] };
    let pick = |f: &[Trivialization]| pants.boundary.iter().map(|&l| f[v4.class_index(l)].clone()).collect::<Vec<_>>();
    let base = theta_with_boundary(&v4, &alpha, &pants, &pick(&frames)).unwrap();
    assert_eq!(base.value.order(), 4);
    for (i, &l) in pants.boundary.iter().enumerate() {
        for alt in flat_trivializations_on_cyclic(&v4, &alpha, l, None).unwrap() {
            let mut frame = pick(&frames);
            frame[i] = alt;
            let w = theta_with_boundary(&v4, &alpha, &pants, &frame).unwrap().value;
            let ratio = w * base.value.inv();
            assert!(ratio.is_one() || ratio == RootOfUnity::minus_one());
        }
    }
    let trivial = Cocycle2::trivial(&v4);
    let ones = canonical_frames(&v4, &trivial).unwrap();
    let frame: Vec<_> = pants.boundary.iter().map(|&l| ones[v4.class_index(l)].clone()).collect();
    assert!(theta_with_boundary(&v4, &trivial, &pants, &frame).unwrap().value.is_one());
}

#[test]
fn partitions() {
    let s3 = FiniteGroup::symmetric(3);
    assert_eq!(twisted_dw_partition(&s3, &Cocycle2::trivial(&s3), 1, CAP).unwrap(), big(3, 1));
    assert_eq!(twisted_dw_partition(&s3, &Cocycle2::trivial(&s3), 0, CAP).unwrap(), big(1, 6));
    let (v4, alpha) = v4_torsion();
    assert_eq!(twisted_dw_partition(&v4, &alpha, 1, CAP).unwrap(), big(1, 1));
}

#[test]
fn point_invariants() {
    let s3 = FiniteGroup::symmetric(3);
    let trivial = Cocycle2::trivial(&s3);
    for c in 0..3 {
        let r = s3.conjugacy_classes()[c].representative;
        let inv = s3.class_index(s3.inv(r));
        let v = twisted_point_gw(&s3, &trivial, 0, &[c, inv, 0], CAP).unwrap();
        let expected = big(s3.class_of(r).len() as i64, 6);
        assert_eq!(v, Cyclotomic::from_rational(expected));
    }
    assert_eq!(twisted_point_gw(&s3, &trivial, 0, &[0, 0, 0], CAP).unwrap(), Cyclotomic::from_rational(big(1, 6)));
    let (v4, alpha) = v4_torsion();
    for c in 1..4 {
        assert!(twisted_point_gw(&v4, &alpha, 0, &[c, c, 0], CAP).unwrap().is_zero());
    }
    let t = gw_table(&v4, &alpha, 0, 3, None, CAP).unwrap();
    assert_eq!(t.entries.len(), 1);
}

#[test]
fn gluing() {
    let s3 = FiniteGroup::symmetric(3);
    assert!(gluing_check(&s3, &Cocycle2::trivial(&s3), Gluing::Pants, CAP).unwrap().passed());
    let (v4, alpha) = v4_torsion();
    assert!(gluing_check(&v4, &alpha, Gluing::Pants, CAP).unwrap().passed());
    assert!(gluing_check(&v4, &alpha, Gluing::SelfGluing { genus: 0 }, CAP).unwrap().passed());
    assert!(gluing_check(&v4, &alpha, Gluing::SelfGluing { genus: 1 }, CAP).unwrap().passed());
}

#[test]
fn multipliers() {
    let sig = |m: Vec<u64>| SurfaceSignature { multiplicities: m, ..SurfaceSignature::closed(0) };
    assert_eq!(fundamental_class_multiplier(&sig(vec![2, 3])).unwrap(), 6);
    assert_eq!(fundamental_class_multiplier(&sig(vec![])).unwrap(), 1);
    assert_eq!(fundamental_class_multiplier(&sig(vec![4, 4])).unwrap(), 4);
    assert!(fundamental_class_multiplier(&sig(vec![0])).is_err());
}
