//! Weak equivalences, fibrations and cofibrations of simplicial categories as
//! decision procedures over bounded data.

pub mod factor;
pub mod free;
pub mod generators;
pub mod lifting;

pub use factor::{factor_bounded, verify_retract, CellRecord, Factorization, RetractWitness};
pub use free::{is_a2_candidate, is_free_map, FreeCheck, GeneratorMarking};
pub use generators::{generating_acyclic_a1, generating_cofibrations, Generator};
pub use lifting::{has_rlp_against_set, solve_lifting, LiftingProblem};

use crate::budget::Budget;
use crate::cat::is_equivalence;
use crate::error::Result;
use crate::scat::pi0::{equivalence_flags, pi0_functor};
use crate::scat::SFunctor;
use crate::sset::homotopy::is_weak_equivalence_sset;
use crate::sset::lifting::is_kan_fibration;
use crate::verdict::{Evidence, Verdict};

fn on_pair(a: usize, b: usize, v: Verdict) -> Verdict {
    match v {
        Verdict::Yes(e) => Verdict::Yes(Evidence::HomPair { source: a, target: b, inner: Box::new(e) }),
        Verdict::No(e) => Verdict::No(Evidence::HomPair { source: a, target: b, inner: Box::new(e) }),
        u => u,
    }
}

/// Weak equivalence on every hom complex plus an equivalence on π₀.
pub fn is_dk_equivalence(f: &SFunctor, budget: &Budget) -> Result<Verdict> {
    f.validate()?;
    let n = f.source().num_objects();
    let mut checks = Vec::with_capacity(n * n + 1);
    for a in 0..n {
        for b in 0..n {
            checks.push(on_pair(a, b, is_weak_equivalence_sset(f.hom_map(a, b), budget)?));
        }
    }
    checks.push(is_equivalence(&pi0_functor(f)?)?);
    Ok(Verdict::all(checks, |_| Evidence::DkEquivalence { pairs_checked: n * n }))
}

/// Kan fibration on every hom complex plus lifting of homotopy equivalences
/// out of the image. A `No` on the second part names `(a1, b, e)` with
/// `e ∈ Hom(f a1, b)_0`.
pub fn is_fibration(f: &SFunctor, budget: &Budget) -> Result<Verdict> {
    f.validate()?;
    let n = f.source().num_objects();
    let mut checks = Vec::with_capacity(n * n + 1);
    let mut checked_dim = 0;
    for a in 0..n {
        for b in 0..n {
            let v = is_kan_fibration(f.hom_map(a, b), budget)?;
            if let Verdict::Yes(Evidence::SsetLifts { checked_dim: Some(c), .. }) = &v {
                checked_dim = *c;
            }
            checks.push(on_pair(a, b, v));
        }
    }
    let (instances, failure) = f2_search(f)?;
    if let Some((a1, b, e)) = failure {
        checks.push(Verdict::No(Evidence::F2Failure { a1, b, e }));
    }
    Ok(Verdict::all(checks, |_| Evidence::Fibration { checked_dim, f2_instances: instances }))
}

/// Number of homotopy equivalences examined and the first one without a lift.
fn f2_search(f: &SFunctor) -> Result<(usize, Option<(usize, usize, usize)>)> {
    let (s, t) = (f.source(), f.target());
    let (n, m) = (s.num_objects(), t.num_objects());
    let src_flags = equivalence_flags(s)?;
    let tgt_flags = equivalence_flags(t)?;
    let mut instances = 0;
    for a1 in 0..n {
        for b in 0..m {
            let fa = f.ob(a1);
            for e in 0..t.hom(fa, b).len(0) {
                if !tgt_flags[fa * m + b][e] {
                    continue;
                }
                instances += 1;
                let lifted = (0..n).filter(|&a2| f.ob(a2) == b).any(|a2| {
                    (0..s.hom(a1, a2).len(0)).any(|d| src_flags[a1 * n + a2][d] && f.apply(0, a1, a2, d) == e)
                });
                if !lifted {
                    return Ok((instances, Some((a1, b, e))));
                }
            }
        }
    }
    Ok((instances, None))
}

/// Route (a): fibration and DK-equivalence.
pub fn is_acyclic_fibration(f: &SFunctor, budget: &Budget) -> Result<Verdict> {
    let v = Verdict::all([is_fibration(f, budget)?, is_dk_equivalence(f, budget)?], |mut e| e.swap_remove(0));
    Ok(route("definitional", v))
}

/// Route (b): right lifting property against the boundary cells up to
/// `min(max_dim, dim_bound)` and the new-object map.
pub fn is_acyclic_fibration_lifting(f: &SFunctor, budget: &Budget) -> Result<Verdict> {
    let d = f.source().dim_bound();
    let gens: Vec<SFunctor> =
        generating_cofibrations(budget.max_dim.min(d), d)?.into_iter().map(|g| g.functor).collect();
    let v = has_rlp_against_set(f, &gens, budget)?;
    Ok(route("lifting", v))
}

fn route(name: &str, v: Verdict) -> Verdict {
    let wrap = |e: Evidence| Evidence::Route { name: name.to_string(), inner: Box::new(e) };
    match v {
        Verdict::Yes(e) => Verdict::Yes(wrap(e)),
        Verdict::No(e) => Verdict::No(wrap(e)),
        u => u,
    }
}

/// Re-checks an `F2Failure` by scanning all 0-simplices over `e` through π₀
/// inverses computed from scratch.
pub fn verify_f2_failure(f: &SFunctor, a1: usize, b: usize, e: usize) -> Result<bool> {
    use crate::scat::pi0::is_homotopy_equivalence;
    let (s, t) = (f.source(), f.target());
    if a1 >= s.num_objects() || b >= t.num_objects() || e >= t.hom(f.ob(a1), b).len(0) {
        return Ok(false);
    }
    if !is_homotopy_equivalence(t, f.ob(a1), b, e)? {
        return Ok(false);
    }
    for a2 in (0..s.num_objects()).filter(|&a2| f.ob(a2) == b) {
        for d in 0..s.hom(a1, a2).len(0) {
            if f.apply(0, a1, a2, d) == e && is_homotopy_equivalence(s, a1, a2, d)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
