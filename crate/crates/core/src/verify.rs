//! Re-validation of verdict payloads.
//!
//! Each check's output is re-examined from its inputs: lifts are recomposed,
//! unliftable squares are searched again by brute force, and summary `Yes`
//! answers are re-derived from the lower-level verifiers.

use crate::algebra::group::group_order;
use crate::algebra::homology::{induced_on_homology, reduced_homology};
use crate::budget::Budget;
use crate::model::free::{endpoints_functor, is_free_map, GeneratorMarking};
use crate::model::generators::generating_cofibrations;
use crate::model::lifting::{verify_rlp_lifts, verify_unliftable_square, LiftingProblem};
use crate::model::verify_f2_failure;
use crate::scat::pi0::{is_homotopy_equivalence, pi0_functor};
use crate::scat::search::all_functors;
use crate::scat::SFunctor;
use crate::sset::homotopy::{edge_path_presentation, pi0, pi0_map};
use crate::sset::lifting::{verify_sset_lift, verify_unliftable};
use crate::sset::standard::{boundary_inclusion, horn_inclusion};
use crate::sset::{SSetMap, SimplicialSet};
use crate::verdict::{Evidence, Verdict};

/// The question a verdict answers.
#[derive(Debug, Clone, Copy)]
pub enum Claim<'a> {
    WeaklyContractible(&'a SimplicialSet),
    WeakEquivalenceSset(&'a SSetMap),
    RlpSset { p: &'a SSetMap, i: &'a SSetMap },
    KanFibration(&'a SSetMap),
    AcyclicFibrationSset(&'a SSetMap),
    DkEquivalence(&'a SFunctor),
    Fibration(&'a SFunctor),
    AcyclicFibration(&'a SFunctor),
    RlpSet { f: &'a SFunctor, gens: &'a [SFunctor] },
    Lifting(&'a LiftingProblem),
    A2Candidate { inc: &'a SFunctor, marking: &'a GeneratorMarking },
}

/// `true` when the payload re-validates; `Unknown` verdicts carry nothing to
/// check and pass trivially.
pub fn verify_verdict(claim: Claim<'_>, v: &Verdict, budget: &Budget) -> bool {
    match v {
        Verdict::Unknown(_) => true,
        Verdict::Yes(e) => yes(claim, e, budget),
        Verdict::No(e) => no(claim, e, budget),
    }
}

fn yes(claim: Claim<'_>, e: &Evidence, budget: &Budget) -> bool {
    let steps = budget.max_steps;
    match (claim, e) {
        (Claim::WeaklyContractible(x), Evidence::Contractible { .. }) => contractible(x, budget),
        (Claim::WeakEquivalenceSset(f), e) => weak_equivalence(f, e, budget),
        (Claim::RlpSset { p, i }, Evidence::SsetLifts { lifts, .. }) => lifts.iter().all(|l| verify_sset_lift(p, i, l)),
        (Claim::KanFibration(p), Evidence::SsetLifts { lifts, .. }) => sset_lifts(p, lifts, true),
        (Claim::AcyclicFibrationSset(p), Evidence::SsetLifts { lifts, .. }) => sset_lifts(p, lifts, false),
        (Claim::DkEquivalence(f), Evidence::DkEquivalence { .. }) => dk_yes(f, budget),
        (Claim::Fibration(f), Evidence::Fibration { .. }) => fibration_yes(f, budget),
        (Claim::AcyclicFibration(f), Evidence::Route { name, inner }) => match name.as_str() {
            "definitional" => fibration_yes(f, budget) && dk_yes(f, budget),
            "lifting" => {
                let Some(gens) = lifting_generators(f, budget) else { return false };
                let Evidence::FunctorLifts { lifts, .. } = inner.as_ref() else { return false };
                verify_rlp_lifts(f, &gens, lifts, steps) == Some(true)
            }
            _ => false,
        },
        (Claim::RlpSet { f, gens }, Evidence::FunctorLifts { lifts, .. }) => {
            verify_rlp_lifts(f, gens, lifts, steps) == Some(true)
        }
        (Claim::Lifting(p), Evidence::Lift { diagonal }) => p.verify_lift(diagonal),
        (Claim::A2Candidate { inc, marking }, Evidence::A2Candidate { .. }) => {
            let h = inc.target();
            h.num_objects() == 2
                && h.homs().iter().all(|x| contractible(x, budget))
                && endpoints_functor(h, inc.ob(0)).is_ok_and(|p| is_free_map(&p, marking).is_ok_and(|c| c.free))
        }
        _ => false,
    }
}

fn no(claim: Claim<'_>, e: &Evidence, budget: &Budget) -> bool {
    let steps = budget.max_steps;
    match (claim, e) {
        (Claim::WeaklyContractible(x), e) => not_contractible(x, e, budget),
        (Claim::WeakEquivalenceSset(f), e) => not_weak_equivalence(f, e),
        (Claim::RlpSet { f, gens }, Evidence::UnliftableSquare { generator, square }) => {
            gens.get(*generator).is_some_and(|g| verify_unliftable_square(g, f, square, steps) == Some(true))
        }
        (Claim::RlpSset { p, i }, Evidence::SsetUnliftable { square, .. }) => {
            verify_unliftable(p, i, square, steps) == Some(true)
        }
        (Claim::KanFibration(p), Evidence::SsetUnliftable { horn: Some((n, k)), square }) => {
            horn_inclusion(*n, *k, p.source().dim_bound())
                .is_ok_and(|i| verify_unliftable(p, &i, square, steps) == Some(true))
        }
        (Claim::AcyclicFibrationSset(p), Evidence::SsetUnliftable { horn: Some((n, _)), square }) => {
            boundary_inclusion(*n, p.source().dim_bound())
                .is_ok_and(|i| verify_unliftable(p, &i, square, steps) == Some(true))
        }
        (Claim::DkEquivalence(f), e) => not_dk(f, e),
        (Claim::Fibration(f), e) => not_fibration(f, e, steps),
        (Claim::AcyclicFibration(f), Evidence::Route { name, inner }) => match name.as_str() {
            "definitional" => not_fibration(f, inner, steps) || not_dk(f, inner),
            "lifting" => {
                let Some(gens) = lifting_generators(f, budget) else { return false };
                no(Claim::RlpSet { f, gens: &gens }, inner, budget)
            }
            _ => false,
        },
        (Claim::Lifting(p), Evidence::NoLift { .. }) => {
            p.check().is_ok()
                && all_functors(p.left.target(), p.right.source(), steps)
                    .is_some_and(|all| !all.iter().any(|d| p.verify_lift(&d.data())))
        }
        (Claim::A2Candidate { inc, marking }, Evidence::A2Failure { condition, .. }) => {
            let h = inc.target();
            match condition.as_str() {
                "objects" => h.num_objects() != 2,
                "contractible" => h.homs().iter().any(|x| {
                    let v = crate::sset::homotopy::is_weakly_contractible(x, budget);
                    v.evidence().is_some_and(|e| v.is_no() && not_contractible(x, e, budget))
                }),
                "free" => endpoints_functor(h, inc.ob(0)).is_ok_and(|p| is_free_map(&p, marking).is_ok_and(|c| !c.free)),
                _ => false,
            }
        }
        _ => false,
    }
}

fn lifting_generators(f: &SFunctor, budget: &Budget) -> Option<Vec<SFunctor>> {
    let d = f.source().dim_bound();
    Some(generating_cofibrations(budget.max_dim.min(d), d).ok()?.into_iter().map(|g| g.functor).collect())
}

fn sset_lifts(p: &SSetMap, lifts: &[crate::verdict::SsetLift], horns: bool) -> bool {
    let d = p.source().dim_bound();
    lifts.iter().all(|l| {
        let Some((n, k)) = l.horn else { return false };
        let i = if horns { horn_inclusion(n, k, d) } else { boundary_inclusion(n, d) };
        i.is_ok_and(|i| verify_sset_lift(p, &i, l))
    })
}

/// One component, vanishing reduced homology below the bound, and a coset
/// enumeration of π₁ that closes on a single coset.
pub fn contractible(x: &SimplicialSet, budget: &Budget) -> bool {
    let d = x.dim_bound();
    d > 0
        && pi0(x).count() == 1
        && (1..d).all(|k| reduced_homology(x, k).is_ok_and(|h| h.is_zero()))
        && edge_path_presentation(x, 0).is_ok_and(|p| p.generators.is_empty() || group_order(&p, budget) == Some(1))
}

fn not_contractible(x: &SimplicialSet, e: &Evidence, budget: &Budget) -> bool {
    match e {
        Evidence::Components { count } => pi0(x).count() == *count && *count != 1,
        Evidence::ReducedHomology { degree, betti, torsion } => reduced_homology(x, *degree)
            .is_ok_and(|h| !h.is_zero() && h.betti == *betti && &h.torsion == torsion),
        Evidence::Pi1 { vertex, detail } => {
            let Ok(p) = edge_path_presentation(x, *vertex) else { return false };
            match detail.as_ref() {
                Evidence::Abelianization { free_rank, torsion } => {
                    (*free_rank > 0 || !torsion.is_empty()) && p.abelianization() == (*free_rank, torsion.clone())
                }
                Evidence::FiniteGroup { order } => *order > 1 && group_order(&p, budget) == Some(*order),
                _ => false,
            }
        }
        _ => false,
    }
}

fn bijective_on_pi0(f: &SSetMap) -> bool {
    let (_, cy, map) = pi0_map(f);
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == map.len() && sorted.len() == cy.count()
}

fn weak_equivalence(f: &SSetMap, e: &Evidence, budget: &Budget) -> bool {
    match e {
        Evidence::Isomorphism => f.is_isomorphism(),
        Evidence::BothContractible => contractible(f.source(), budget) && contractible(f.target(), budget),
        Evidence::HomologyIsomorphism { .. } => {
            let (x, y) = (f.source(), f.target());
            let simply_connected = |s: &SimplicialSet| {
                pi0(s).classes.iter().all(|c| {
                    edge_path_presentation(s, c[0])
                        .is_ok_and(|p| p.generators.is_empty() || group_order(&p, budget) == Some(1))
                })
            };
            bijective_on_pi0(f)
                && (1..x.dim_bound()).all(|k| induced_on_homology(f, k) == Ok((true, true)))
                && simply_connected(x)
                && simply_connected(y)
        }
        _ => false,
    }
}

fn not_weak_equivalence(f: &SSetMap, e: &Evidence) -> bool {
    match e {
        Evidence::Pi0Mismatch { injective, surjective } => {
            let (_, cy, map) = pi0_map(f);
            let mut hit = vec![0usize; cy.count()];
            for &c in &map {
                hit[c] += 1;
            }
            let inj = hit.iter().all(|&h| h <= 1);
            let surj = hit.iter().all(|&h| h >= 1);
            !(inj && surj) && (inj, surj) == (*injective, *surjective)
        }
        Evidence::HomologyMismatch { degree, injective, surjective } => {
            !(*injective && *surjective) && induced_on_homology(f, *degree) == Ok((*injective, *surjective))
        }
        _ => false,
    }
}

/// π₀ of `f` is fully faithful and every target object is isomorphic to an
/// image object, checked on the composition tables.
fn pi0_equivalence(f: &SFunctor) -> Option<bool> {
    let p = pi0_functor(f).ok()?;
    let (s, t) = (p.source(), p.target());
    let n = s.num_objects();
    for a in 0..n {
        for b in 0..n {
            let mut images: Vec<usize> = (0..s.hom_size(a, b)).map(|m| p.apply(a, b, m)).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != s.hom_size(a, b) || images.len() != t.hom_size(p.ob(a), p.ob(b)) {
                return Some(false);
            }
        }
    }
    let iso = |a: usize, b: usize| {
        (0..t.hom_size(a, b)).any(|m| {
            (0..t.hom_size(b, a)).any(|w| t.compose(a, b, a, w, m) == t.id(a) && t.compose(b, a, b, m, w) == t.id(b))
        })
    };
    Some((0..t.num_objects()).all(|d| (0..n).any(|a| iso(p.ob(a), d))))
}

fn dk_yes(f: &SFunctor, budget: &Budget) -> bool {
    let n = f.source().num_objects();
    let homs_ok = (0..n).all(|a| {
        (0..n).all(|b| {
            let m = f.hom_map(a, b);
            [Evidence::Isomorphism, Evidence::BothContractible, Evidence::HomologyIsomorphism { components: 0, degrees_checked: 0 }]
                .iter()
                .any(|e| weak_equivalence(m, e, budget))
        })
    });
    homs_ok && pi0_equivalence(f) == Some(true)
}

fn not_dk(f: &SFunctor, e: &Evidence) -> bool {
    match e {
        Evidence::HomPair { source, target, inner } => {
            let n = f.source().num_objects();
            *source < n && *target < n && not_weak_equivalence(f.hom_map(*source, *target), inner)
        }
        Evidence::NotEquivalence { .. } => pi0_equivalence(f) == Some(false),
        _ => false,
    }
}

fn fibration_yes(f: &SFunctor, budget: &Budget) -> bool {
    let n = f.source().num_objects();
    let kan = (0..n).all(|a| {
        (0..n).all(|b| {
            let p = f.hom_map(a, b);
            match crate::sset::lifting::is_kan_fibration(p, budget) {
                Ok(Verdict::Yes(Evidence::SsetLifts { lifts, .. })) => sset_lifts(p, &lifts, true),
                _ => false,
            }
        })
    });
    kan && f2_holds(f) == Some(true)
}

/// Every homotopy equivalence out of an image object lifts to one in the source.
fn f2_holds(f: &SFunctor) -> Option<bool> {
    let (s, t) = (f.source(), f.target());
    for a1 in 0..s.num_objects() {
        let fa = f.ob(a1);
        for b in 0..t.num_objects() {
            for e in 0..t.hom(fa, b).len(0) {
                if !is_homotopy_equivalence(t, fa, b, e).ok()? {
                    continue;
                }
                let mut lifted = false;
                for a2 in (0..s.num_objects()).filter(|&a2| f.ob(a2) == b) {
                    for d in 0..s.hom(a1, a2).len(0) {
                        if f.apply(0, a1, a2, d) == e && is_homotopy_equivalence(s, a1, a2, d).ok()? {
                            lifted = true;
                        }
                    }
                }
                if !lifted {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

fn not_fibration(f: &SFunctor, e: &Evidence, steps: usize) -> bool {
    match e {
        Evidence::HomPair { source, target, inner } => {
            let n = f.source().num_objects();
            if *source >= n || *target >= n {
                return false;
            }
            let p = f.hom_map(*source, *target);
            match inner.as_ref() {
                Evidence::SsetUnliftable { horn: Some((hn, k)), square } => horn_inclusion(*hn, *k, p.source().dim_bound())
                    .is_ok_and(|i| verify_unliftable(p, &i, square, steps) == Some(true)),
                _ => false,
            }
        }
        Evidence::F2Failure { a1, b, e } => verify_f2_failure(f, *a1, *b, *e).unwrap_or(false),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::model::{is_dk_equivalence, is_fibration};
    use crate::scat::basic::{double_object, singleton_cat, u_of_map};
    use crate::sset::homotopy::is_weakly_contractible;
    use crate::sset::standard::*;

    #[test]
    fn contractibility_payloads() {
        let b = Budget::default();
        for x in [standard_simplex(2, 3).unwrap(), boundary(2, 3).unwrap(), boundary(1, 3).unwrap()] {
            let v = is_weakly_contractible(&x, &b);
            assert!(verify_verdict(Claim::WeaklyContractible(&x), &v, &b), "{v:?}");
        }
        let forged = Verdict::No(Evidence::Components { count: 2 });
        assert!(!verify_verdict(Claim::WeaklyContractible(&standard_simplex(1, 3).unwrap()), &forged, &b));
    }

    #[test]
    fn functor_payloads() {
        let b = Budget::default();
        let (_, collapse) = double_object(&singleton_cat(2), 0).unwrap();
        let f = u_of_map(&boundary_inclusion(2, 2).unwrap()).unwrap();
        for g in [&collapse, &f] {
            let v = is_dk_equivalence(g, &b).unwrap();
            assert!(verify_verdict(Claim::DkEquivalence(g), &v, &b), "{v:?}");
            let v = is_fibration(g, &b).unwrap();
            assert!(verify_verdict(Claim::Fibration(g), &v, &b), "{v:?}");
        }
        let forged = Verdict::Yes(Evidence::DkEquivalence { pairs_checked: 4 });
        assert!(!verify_verdict(Claim::DkEquivalence(&f), &forged, &b));
        let circle = Arc::new(boundary(2, 2).unwrap());
        let p = SSetMap::constant(circle.clone(), Arc::new(point(2)), 0).unwrap();
        let v = crate::sset::lifting::is_kan_fibration(&p, &b).unwrap();
        assert!(v.is_no() && verify_verdict(Claim::KanFibration(&p), &v, &b));
    }
}
