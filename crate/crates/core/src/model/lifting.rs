//! Lifting problems of simplicial functors and right lifting properties.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::scat::search::{all_functors, search_functors, FunctorConstraints};
use crate::scat::SFunctor;
use crate::sset::search::SearchEnd;
use crate::verdict::{Evidence, FunctorData, FunctorLift, FunctorSquare, UnknownReason, Verdict};

/// A commutative square `right ∘ top = bottom ∘ left`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftingProblem {
    pub left: SFunctor,
    pub right: SFunctor,
    pub top: SFunctor,
    pub bottom: SFunctor,
}

impl LiftingProblem {
    pub fn new(left: SFunctor, right: SFunctor, top: SFunctor, bottom: SFunctor) -> Result<Self> {
        let p = LiftingProblem { left, right, top, bottom };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        let shapes = self.left.source() == self.top.source()
            && self.left.target() == self.bottom.source()
            && self.top.target() == self.right.source()
            && self.right.target() == self.bottom.target();
        if !shapes {
            return Err(Error::Mismatch("lifting problem functors do not form a square".into()));
        }
        if self.right.after(&self.top)?.data() != self.bottom.after(&self.left)?.data() {
            return Err(Error::NonCommutingSquare("right ∘ top differs from bottom ∘ left".into()));
        }
        Ok(())
    }

    /// Whether `diagonal` makes both triangles commute.
    pub fn verify_lift(&self, diagonal: &FunctorData) -> bool {
        let Ok(d) = SFunctor::from_data(self.left.target().clone(), self.right.source().clone(), diagonal.clone()) else {
            return false;
        };
        let upper = d.after(&self.left).map(|f| f.data() == self.top.data());
        let lower = self.right.after(&d).map(|f| f.data() == self.bottom.data());
        upper == Ok(true) && lower == Ok(true)
    }
}

/// Constraints on a diagonal `B → C` induced by `left` and `top`; `None` if
/// `left` identifies cells that `top` keeps apart.
fn diagonal_constraints<'a>(left: &SFunctor, top: &SFunctor) -> Option<FunctorConstraints<'a>> {
    let a = left.source();
    let b = left.target();
    let (n, m) = (a.num_objects(), b.num_objects());
    let mut ob_fixed = vec![None; m];
    for x in 0..n {
        let slot = &mut ob_fixed[left.ob(x)];
        match *slot {
            Some(o) if o != top.ob(x) => return None,
            _ => *slot = Some(top.ob(x)),
        }
    }
    let mut hom_fixed: Vec<Vec<Vec<Option<usize>>>> =
        (0..m * m).map(|p| (0..=b.dim_bound()).map(|k| vec![None; b.hom(p / m, p % m).len(k)]).collect()).collect();
    for x in 0..n {
        for y in 0..n {
            let pair = left.ob(x) * m + left.ob(y);
            for k in 0..=a.dim_bound() {
                for s in 0..a.hom(x, y).len(k) {
                    let t = top.apply(k, x, y, s);
                    let slot = &mut hom_fixed[pair][k][left.apply(k, x, y, s)];
                    match *slot {
                        Some(u) if u != t => return None,
                        _ => *slot = Some(t),
                    }
                }
            }
        }
    }
    Some(FunctorConstraints { ob_fixed: Some(ob_fixed), hom_fixed: Some(hom_fixed), over: None })
}

/// Searches for a diagonal of the square; `Yes(Lift)` carries the first one
/// in enumeration order.
pub fn solve_lifting(p: &LiftingProblem, budget: &Budget) -> Result<Verdict> {
    p.check()?;
    let Some(mut c) = diagonal_constraints(&p.left, &p.top) else {
        return Ok(Verdict::No(Evidence::NoLift { nodes: 0 }));
    };
    let bottom = p.bottom.data();
    c.over = Some((&p.right, &bottom));
    let mut meter = Meter::new(budget.max_steps);
    let mut found = None;
    let end = search_functors(p.left.target(), p.right.source(), &c, &mut meter, &mut |d| {
        found = Some(d);
        false
    });
    Ok(match (end, found) {
        (_, Some(diagonal)) => Verdict::Yes(Evidence::Lift { diagonal }),
        (SearchEnd::Exhausted, None) => Verdict::Unknown(UnknownReason::BudgetExhausted),
        (_, None) => Verdict::No(Evidence::NoLift { nodes: meter.used }),
    })
}

/// Every commuting square from `gen` into `f`, bottoms in enumeration order
/// and tops within each; `None` if a search ran out of steps.
pub fn squares(gen: &SFunctor, f: &SFunctor, budget: &Budget) -> Option<Vec<FunctorSquare>> {
    let mut bottoms = Vec::new();
    let mut meter = Meter::new(budget.max_steps);
    let end = search_functors(gen.target(), f.target(), &FunctorConstraints::default(), &mut meter, &mut |b| {
        bottoms.push(b);
        true
    });
    if end == SearchEnd::Exhausted {
        return None;
    }
    let mut out = Vec::new();
    for bottom in bottoms {
        let bf = SFunctor::from_data_unchecked(gen.target().clone(), f.target().clone(), bottom.clone()).ok()?;
        let over = bf.after(gen).ok()?.data();
        let c = FunctorConstraints { over: Some((f, &over)), ..Default::default() };
        let mut meter = Meter::new(budget.max_steps);
        let end = search_functors(gen.source(), f.source(), &c, &mut meter, &mut |top| {
            out.push(FunctorSquare { top, bottom: bottom.clone() });
            true
        });
        if end == SearchEnd::Exhausted {
            return None;
        }
    }
    Some(out)
}

pub(crate) fn problem_of(gen: &SFunctor, f: &SFunctor, sq: &FunctorSquare) -> Result<LiftingProblem> {
    let top = SFunctor::from_data_unchecked(gen.source().clone(), f.source().clone(), sq.top.clone())?;
    let bottom = SFunctor::from_data_unchecked(gen.target().clone(), f.target().clone(), sq.bottom.clone())?;
    Ok(LiftingProblem { left: gen.clone(), right: f.clone(), top, bottom })
}

/// Right lifting property of `f` against every functor in `gens`.
pub fn has_rlp_against_set(f: &SFunctor, gens: &[SFunctor], budget: &Budget) -> Result<Verdict> {
    let mut lifts = Vec::new();
    let mut count = 0;
    let mut unknown = false;
    for (gi, g) in gens.iter().enumerate() {
        if g.source().dim_bound() != f.source().dim_bound() {
            return Err(Error::Mismatch(format!("generator {gi} has a different dim_bound")));
        }
        let Some(sqs) = squares(g, f, budget) else {
            unknown = true;
            continue;
        };
        for sq in sqs {
            count += 1;
            match solve_lifting(&problem_of(g, f, &sq)?, budget)? {
                Verdict::Yes(Evidence::Lift { diagonal }) => lifts.push(FunctorLift { generator: gi, square: sq, diagonal }),
                Verdict::No(_) => return Ok(Verdict::No(Evidence::UnliftableSquare { generator: gi, square: sq })),
                _ => unknown = true,
            }
        }
    }
    Ok(if unknown {
        Verdict::Unknown(UnknownReason::BudgetExhausted)
    } else {
        Verdict::Yes(Evidence::FunctorLifts { squares: count, lifts })
    })
}

/// Re-checks a square claimed unliftable by trying every functor `B → C`,
/// independently of the constrained search. `None` if the cap ran out.
pub fn verify_unliftable_square(gen: &SFunctor, f: &SFunctor, sq: &FunctorSquare, max_steps: usize) -> Option<bool> {
    let p = problem_of(gen, f, sq).ok()?;
    if p.check().is_err() {
        return Some(false);
    }
    let all = all_functors(gen.target(), f.source(), max_steps)?;
    Some(!all.iter().any(|d| p.verify_lift(&d.data())))
}

/// Re-checks a `FunctorLifts` payload: every lift commutes and the lifted
/// squares are exactly the squares found by brute force.
pub fn verify_rlp_lifts(f: &SFunctor, gens: &[SFunctor], lifts: &[FunctorLift], max_steps: usize) -> Option<bool> {
    let mut expected = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        let bottoms = all_functors(g.target(), f.target(), max_steps)?;
        let tops = all_functors(g.source(), f.source(), max_steps)?;
        for b in &bottoms {
            let bg = b.after(g).ok()?.data();
            for t in &tops {
                if f.after(t).ok()?.data() == bg {
                    expected.push((gi, t.data(), b.data()));
                }
            }
        }
    }
    expected.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
    let mut got: Vec<_> = lifts.iter().map(|l| (l.generator, l.square.top.clone(), l.square.bottom.clone())).collect();
    got.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
    if got != expected {
        return Some(false);
    }
    Some(lifts.iter().all(|l| problem_of(&gens[l.generator], f, &l.square).is_ok_and(|p| p.verify_lift(&l.diagonal))))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::scat::basic::*;
    use crate::sset::standard::*;

    fn c2(d: usize) -> SFunctor {
        from_empty(singleton_cat(d))
    }

    #[test]
    fn identity_lifts_everything() {
        let c = functor_u(Arc::new(standard_simplex(1, 1).unwrap())).unwrap();
        let id = SFunctor::identity(c);
        let g = u_of_map(&horn_inclusion(1, 0, 1).unwrap()).unwrap();
        let v = has_rlp_against_set(&id, &[g.clone(), c2(1)], &Budget::default()).unwrap();
        let Verdict::Yes(Evidence::FunctorLifts { lifts, .. }) = &v else { panic!("{v:?}") };
        assert_eq!(verify_rlp_lifts(&id, &[g, c2(1)], lifts, 100_000), Some(true));
    }

    #[test]
    fn object_generator_detects_non_surjective() {
        let s = singleton_cat(1);
        let (two, incs) = coproduct(&[s.clone(), s]).unwrap();
        let v = has_rlp_against_set(&incs[0], &[c2(1)], &Budget::default()).unwrap();
        let Verdict::No(Evidence::UnliftableSquare { square, .. }) = &v else { panic!("{v:?}") };
        assert_eq!(square.bottom.ob_map, vec![1]);
        assert_eq!(verify_unliftable_square(&c2(1), &incs[0], square, 100_000), Some(true));
        assert!(two.validate().is_empty());
    }

    #[test]
    fn non_commuting_square_rejected() {
        let s = singleton_cat(0);
        let (two, incs) = coproduct(&[s.clone(), s.clone()]).unwrap();
        let p = LiftingProblem {
            left: SFunctor::identity(s.clone()),
            right: SFunctor::identity(two),
            top: incs[0].clone(),
            bottom: incs[1].clone(),
        };
        assert!(matches!(solve_lifting(&p, &Budget::default()), Err(Error::NonCommutingSquare(_))));
    }
}
