use std::sync::Arc;

use sccat_core::constructions::{codiscrete_groupoid, walking_arrow};
use sccat_core::model::lifting::{squares, verify_unliftable_square};
use sccat_core::model::*;
use sccat_core::scat::basic::*;
use sccat_core::scat::{SFunctor, SimplicialCategory};
use sccat_core::sset::standard::*;
use sccat_core::verdict::{Evidence, FunctorData};
use sccat_core::{Budget, Verdict};

fn budget() -> Budget {
    Budget::default()
}

/// `{x}` included at `x` of a codiscrete groupoid.
fn point_into_codiscrete(n: usize, d: usize) -> SFunctor {
    let g = codiscrete_groupoid(n, d).unwrap();
    let data = FunctorData { ob_map: vec![0], hom_maps: vec![(0..=d).map(|_| vec![0]).collect()] };
    SFunctor::from_data(singleton_cat(d), g, data).unwrap()
}

/// One object whose endomorphisms form the discrete group Z/2.
fn discrete_z2(d: usize) -> Arc<SimplicialCategory> {
    let (two, _) = disjoint_union(&[Arc::new(point(d)), Arc::new(point(d))]).unwrap();
    let c = SimplicialCategory::from_fn(vec!["a".into()], d, vec![two.clone()], vec![0], |k, _, _, _, g, f| {
        let per = two.len(k) / 2;
        ((g / per) ^ (f / per)) * per + g % per
    })
    .unwrap();
    assert!(c.validate().is_empty());
    Arc::new(c)
}

#[test]
fn dk_equivalence_examples() {
    let c = functor_u(Arc::new(boundary(1, 2).unwrap())).unwrap();
    assert!(is_dk_equivalence(&SFunctor::identity(c), &budget()).unwrap().is_yes());
    for n in 1..=3 {
        assert!(is_dk_equivalence(&point_into_codiscrete(n, 2), &budget()).unwrap().is_yes(), "n = {n}");
    }
    let f = u_of_map(&boundary_inclusion(2, 2).unwrap()).unwrap();
    let v = is_dk_equivalence(&f, &budget()).unwrap();
    let Verdict::No(Evidence::HomPair { source: 0, target: 1, .. }) = v else { panic!("{v:?}") };
}

#[test]
fn fibration_examples() {
    let d = discrete_z2(2);
    assert!(is_fibration(&SFunctor::identity(d.clone()), &budget()).unwrap().is_yes());
    let (_, collapse) = double_object(&d, 0).unwrap();
    assert!(is_fibration(&collapse, &budget()).unwrap().is_yes());
    let f = point_into_codiscrete(2, 2);
    let v = is_fibration(&f, &budget()).unwrap();
    assert_eq!(v, Verdict::No(Evidence::F2Failure { a1: 0, b: 1, e: 0 }));
    assert!(verify_f2_failure(&f, 0, 1, 0).unwrap());
}

#[test]
fn acyclic_fibration_examples() {
    let s = singleton_cat(2);
    let id = SFunctor::identity(s.clone());
    assert!(is_acyclic_fibration(&id, &budget()).unwrap().is_yes());
    assert!(is_acyclic_fibration_lifting(&id, &budget()).unwrap().is_yes());

    let (_, collapse) = double_object(&s, 0).unwrap();
    assert!(is_acyclic_fibration(&collapse, &budget()).unwrap().is_yes());
    assert!(is_acyclic_fibration_lifting(&collapse, &budget()).unwrap().is_yes());

    let (_, incs) = coproduct(&[s.clone(), s]).unwrap();
    let v = is_acyclic_fibration_lifting(&incs[0], &budget()).unwrap();
    let Verdict::No(Evidence::Route { inner, .. }) = v else { panic!("{v:?}") };
    let Evidence::UnliftableSquare { generator, .. } = *inner else { panic!() };
    assert_eq!(generator, 3, "boundary cells 0..=2 come first, then the object cell");
}

#[test]
fn lifting_examples() {
    let c = functor_u(Arc::new(standard_simplex(1, 1).unwrap())).unwrap();
    let gen = u_of_map(&horn_inclusion(1, 0, 1).unwrap()).unwrap();
    let id = SFunctor::identity(c.clone());
    for sq in squares(&gen, &id, &budget()).unwrap() {
        let top = SFunctor::from_data(gen.source().clone(), c.clone(), sq.top.clone()).unwrap();
        let bottom = SFunctor::from_data(gen.target().clone(), c.clone(), sq.bottom.clone()).unwrap();
        let p = LiftingProblem::new(gen.clone(), id.clone(), top, bottom).unwrap();
        let Verdict::Yes(Evidence::Lift { diagonal }) = solve_lifting(&p, &budget()).unwrap() else { panic!() };
        assert_eq!(diagonal, sq.bottom);
    }

    let s = singleton_cat(1);
    let (_, incs) = coproduct(&[s.clone(), s.clone()]).unwrap();
    let c2 = from_empty(s);
    let v = has_rlp_against_set(&incs[1], std::slice::from_ref(&c2), &budget()).unwrap();
    let Verdict::No(Evidence::UnliftableSquare { square, .. }) = v else { panic!() };
    assert_eq!(verify_unliftable_square(&c2, &incs[1], &square, 100_000), Some(true));

    let d = discrete_z2(2);
    let (_, collapse) = double_object(&d, 0).unwrap();
    let horn = u_of_map(&horn_inclusion(2, 1, 2).unwrap()).unwrap();
    let sqs = squares(&horn, &collapse, &budget()).unwrap();
    assert!(!sqs.is_empty());
    for sq in sqs {
        let p = lifting::LiftingProblem::new(
            horn.clone(),
            collapse.clone(),
            SFunctor::from_data(horn.source().clone(), collapse.source().clone(), sq.top).unwrap(),
            SFunctor::from_data(horn.target().clone(), d.clone(), sq.bottom).unwrap(),
        )
        .unwrap();
        let Verdict::Yes(Evidence::Lift { diagonal }) = solve_lifting(&p, &budget()).unwrap() else { panic!() };
        assert!(p.verify_lift(&diagonal));
    }
}

#[test]
fn rlp_against_horns_matches_kan_condition() {
    // The fold of two copies of Δ[1] onto Δ[1] is Kan; the inclusion ∂Δ[1] → Δ[1] is not.
    let fold = trivial_covering(Arc::new(standard_simplex(1, 2).unwrap()), 2).unwrap();
    let gens: Vec<_> = generating_acyclic_a1(2, 2).unwrap().into_iter().map(|g| g.functor).collect();
    assert!(has_rlp_against_set(&u_of_map(&fold).unwrap(), &gens, &budget()).unwrap().is_yes());
    let bad = u_of_map(&boundary_inclusion(1, 2).unwrap()).unwrap();
    assert!(has_rlp_against_set(&bad, &gens, &budget()).unwrap().is_no());
    assert!(is_fibration(&bad, &budget()).unwrap().is_no());
}

#[test]
fn a2_examples() {
    let f = point_into_codiscrete(2, 2);
    let h = f.target().clone();
    let mut mk = GeneratorMarking::empty(2, 2);
    for p in [1, 2] {
        mk.mark(p, 0, 0);
    }
    let mk = mk.closed(&h);
    let v = is_a2_candidate(&f, &mk, &budget()).unwrap();
    let Verdict::No(Evidence::A2Failure { condition, detail }) = v else { panic!() };
    assert_eq!(condition, "free");
    assert!(detail.contains("both"), "{detail}");

    let w = walking_arrow(2);
    let data = FunctorData { ob_map: vec![0], hom_maps: vec![(0..=2).map(|k| vec![w.id_k(0, k)]).collect()] };
    let inc = SFunctor::from_data(singleton_cat(2), w.clone(), data).unwrap();
    let mut mk = GeneratorMarking::empty(2, 2);
    mk.mark(1, 0, 0);
    let v = is_a2_candidate(&inc, &mk.closed(&w), &budget()).unwrap();
    assert!(matches!(v, Verdict::No(Evidence::A2Failure { ref condition, .. }) if condition == "contractible"));
}

#[test]
fn factorization_examples() {
    let f = u_of_map(&horn_inclusion(1, 0, 1).unwrap()).unwrap();
    let gens = generating_acyclic_a1(1, 1).unwrap();
    let fac = factor_bounded(&f, &gens, &budget()).unwrap();
    assert!(fac.is_complete());
    assert_eq!(fac.cells.len(), 1);
    assert!(fac.p.hom_maps().iter().all(|m| m.is_isomorphism()));
    assert_eq!(fac.p.after(&fac.i).unwrap().data(), f.data());
    let w = factor::retract_from_factorization(&f, &fac, &budget()).unwrap().unwrap();
    assert!(verify_retract(&f, &fac.i, &w).unwrap());

    // The two-dimensional horn keeps generating new horns to fill; the
    // partial factorization still composes to f.
    let f = u_of_map(&horn_inclusion(2, 1, 2).unwrap()).unwrap();
    let fac = factor_bounded(&f, &generating_acyclic_a1(2, 2).unwrap(), &Budget::new(4, 6, 1_000_000)).unwrap();
    assert!(!fac.is_complete());
    assert_eq!(fac.cells.len(), 6);
    assert_eq!(fac.p.after(&fac.i).unwrap().data(), f.data());
}
