//! Right lifting property of simplicial-set maps, Kan and acyclic fibrations.

use std::sync::Arc;

use super::search::{first_map, search_maps, MapConstraints, SearchEnd};
use super::standard::{boundary_inclusion, horn_inclusion};
use super::SSetMap;
use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::verdict::{Assignment, Evidence, SsetLift, SsetSquare, UnknownReason, Verdict};

fn compose(outer: &SSetMap, inner: &Assignment) -> Assignment {
    inner.iter().enumerate().map(|(k, row)| row.iter().map(|&x| outer.apply(k, x)).collect()).collect()
}

/// Images forced on the target of `i` by the top edge of a square, or
/// `None` if `i` identifies simplices with different images.
fn forced_by(i: &SSetMap, top: &Assignment) -> Option<Vec<Vec<Option<usize>>>> {
    let b = i.target();
    let mut fixed: Vec<Vec<Option<usize>>> = (0..=b.dim_bound()).map(|k| vec![None; b.len(k)]).collect();
    for (k, row) in top.iter().enumerate() {
        for (a, &t) in row.iter().enumerate() {
            let slot = &mut fixed[k][i.apply(k, a)];
            match slot {
                Some(prev) if *prev != t => return None,
                _ => *slot = Some(t),
            }
        }
    }
    Some(fixed)
}

enum Found {
    Lift(Assignment),
    None,
    Exhausted,
}

fn find_lift(p: &SSetMap, i: &SSetMap, sq: &SsetSquare, meter: &mut Meter) -> Found {
    let Some(fixed) = forced_by(i, &sq.top) else { return Found::None };
    let c = MapConstraints { fixed: Some(&fixed), over: Some((p, &sq.bottom)) };
    match first_map(i.target(), p.source(), &c, meter) {
        Ok(Some(d)) => Found::Lift(d),
        Ok(None) => Found::None,
        Err(()) => Found::Exhausted,
    }
}

/// Every commutative square from `i` to `p`, each with a diagonal; `No`
/// names the first square (in enumeration order) without one.
pub fn has_rlp_sset(p: &SSetMap, i: &SSetMap, budget: &Budget) -> Result<Verdict> {
    p.validate()?;
    i.validate()?;
    let mut meter = Meter::new(budget.max_steps);
    Ok(rlp_with_meter(p, i, &mut meter, None))
}

/// A single square `p ∘ top = bottom ∘ i`: `Yes` carries the first diagonal.
pub fn solve_sset_square(p: &SSetMap, i: &SSetMap, square: &SsetSquare, budget: &Budget) -> Result<Verdict> {
    p.validate()?;
    i.validate()?;
    let top = SSetMap::new(i.source().clone(), p.source().clone(), square.top.clone())?;
    let bottom = SSetMap::new(i.target().clone(), p.target().clone(), square.bottom.clone())?;
    if compose(p, top.assignment()) != compose(&bottom, i.assignment()) {
        return Err(crate::error::Error::NonCommutingSquare("p ∘ top differs from bottom ∘ i".into()));
    }
    let mut meter = Meter::new(budget.max_steps);
    Ok(match find_lift(p, i, square, &mut meter) {
        Found::Lift(diagonal) => Verdict::Yes(Evidence::SsetLifts {
            checked_dim: None,
            lifts: vec![SsetLift { horn: None, square: square.clone(), diagonal }],
        }),
        Found::None => Verdict::No(Evidence::SsetUnliftable { horn: None, square: square.clone() }),
        Found::Exhausted => Verdict::Unknown(UnknownReason::BudgetExhausted),
    })
}

fn rlp_with_meter(p: &SSetMap, i: &SSetMap, meter: &mut Meter, horn: Option<(usize, usize)>) -> Verdict {
    let mut bottoms = Vec::new();
    let end = search_maps(i.target(), p.target(), &MapConstraints::default(), meter, &mut |f| {
        bottoms.push(f);
        true
    });
    if end == SearchEnd::Exhausted {
        return Verdict::Unknown(UnknownReason::BudgetExhausted);
    }
    let mut lifts = Vec::new();
    for bottom in bottoms {
        let over = compose(&bottom_map(i, p, &bottom), i.assignment());
        let mut tops = Vec::new();
        let c = MapConstraints { fixed: None, over: Some((p, &over)) };
        if search_maps(i.source(), p.source(), &c, meter, &mut |f| {
            tops.push(f);
            true
        }) == SearchEnd::Exhausted
        {
            return Verdict::Unknown(UnknownReason::BudgetExhausted);
        }
        for top in tops {
            let square = SsetSquare { top, bottom: bottom.clone() };
            match find_lift(p, i, &square, meter) {
                Found::Lift(diagonal) => lifts.push(SsetLift { horn, square, diagonal }),
                Found::None => return Verdict::No(Evidence::SsetUnliftable { horn, square }),
                Found::Exhausted => return Verdict::Unknown(UnknownReason::BudgetExhausted),
            }
        }
    }
    Verdict::Yes(Evidence::SsetLifts { checked_dim: None, lifts })
}

fn bottom_map(i: &SSetMap, p: &SSetMap, bottom: &Assignment) -> SSetMap {
    SSetMap::new_unchecked(i.target().clone(), p.target().clone(), bottom.clone())
}

fn against_family(
    p: &SSetMap,
    budget: &Budget,
    family: impl Fn(usize, usize) -> Vec<(usize, SSetMap)>,
    min_n: usize,
) -> Result<Verdict> {
    p.validate()?;
    let d = p.source().dim_bound();
    let top = budget.max_dim.min(d);
    let mut meter = Meter::new(budget.max_steps);
    let mut lifts = Vec::new();
    let mut unknown = None;
    for n in min_n..=top {
        for (k, inc) in family(n, d) {
            match rlp_with_meter(p, &inc, &mut meter, Some((n, k))) {
                Verdict::No(e) => return Ok(Verdict::No(e)),
                Verdict::Unknown(r) => {
                    unknown.get_or_insert(r);
                }
                Verdict::Yes(Evidence::SsetLifts { lifts: l, .. }) => lifts.extend(l),
                Verdict::Yes(_) => unreachable!(),
            }
            if unknown.is_some() {
                return Ok(Verdict::Unknown(UnknownReason::BudgetExhausted));
            }
        }
    }
    Ok(Verdict::Yes(Evidence::SsetLifts { checked_dim: Some(top), lifts }))
}

/// Horn filling for `n ≤ min(max_dim, dim_bound)`; `Yes` records that dimension.
pub fn is_kan_fibration(p: &SSetMap, budget: &Budget) -> Result<Verdict> {
    against_family(
        p,
        budget,
        |n, d| (0..=n).map(|k| (k, horn_inclusion(n, k, d).expect("n within bound"))).collect(),
        1,
    )
}

/// Boundary filling for `n ≤ min(max_dim, dim_bound)`; the pair recorded is `(n, n)`.
pub fn is_acyclic_fibration_sset(p: &SSetMap, budget: &Budget) -> Result<Verdict> {
    against_family(p, budget, |n, d| vec![(n, boundary_inclusion(n, d).expect("n within bound"))], 0)
}

/// Re-checks a lift: both triangles commute and the diagonal is simplicial.
pub fn verify_sset_lift(p: &SSetMap, i: &SSetMap, lift: &SsetLift) -> bool {
    let Ok(top) = SSetMap::new(i.source().clone(), p.source().clone(), lift.square.top.clone()) else {
        return false;
    };
    let Ok(bottom) = SSetMap::new(i.target().clone(), p.target().clone(), lift.square.bottom.clone()) else {
        return false;
    };
    let Ok(diag) = SSetMap::new(i.target().clone(), p.source().clone(), lift.diagonal.clone()) else {
        return false;
    };
    p.after(&top).ok() == bottom.after(i).ok()
        && diag.after(i).ok().as_ref() == Some(&top)
        && p.after(&diag).ok().as_ref() == Some(&bottom)
}

/// Re-checks an unliftable square: it commutes and an independent brute-force
/// scan over all maps out of the target of `i` finds no diagonal.
pub fn verify_unliftable(p: &SSetMap, i: &SSetMap, square: &SsetSquare, max_steps: usize) -> Option<bool> {
    let top = SSetMap::new(i.source().clone(), p.source().clone(), square.top.clone()).ok()?;
    let bottom = SSetMap::new(i.target().clone(), p.target().clone(), square.bottom.clone()).ok()?;
    if p.after(&top).ok() != bottom.after(i).ok() {
        return Some(false);
    }
    let all = super::search::all_maps(i.target(), p.source(), max_steps)?;
    let target = Arc::clone(p.source());
    Some(!all.into_iter().any(|d| {
        let diag = SSetMap::new_unchecked(i.target().clone(), target.clone(), d);
        diag.after(i).ok().as_ref() == Some(&top) && p.after(&diag).ok().as_ref() == Some(&bottom)
    }))
}
