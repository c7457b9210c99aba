//! Retract witnesses and a bounded small-object factorization.

use serde::{Deserialize, Serialize};

use super::generators::Generator;
use super::lifting::{problem_of, solve_lifting, squares, LiftingProblem};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::scat::pushout::pushout_generating;
use crate::scat::SFunctor;
use crate::verdict::{Evidence, FunctorData, Verdict};

/// `f: C → D` as a retract of `g: C → D'`: `s ∘ f = g`, `r ∘ g = f`, `r ∘ s = id`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetractWitness {
    pub section: SFunctor,
    pub retraction: SFunctor,
}

pub fn verify_retract(f: &SFunctor, g: &SFunctor, w: &RetractWitness) -> Result<bool> {
    let (s, r) = (&w.section, &w.retraction);
    if f.source() != g.source()
        || s.source() != f.target()
        || s.target() != g.target()
        || r.source() != g.target()
        || r.target() != f.target()
    {
        return Err(Error::Mismatch("retract witness does not fit the two maps".into()));
    }
    if s.validate().is_err() || r.validate().is_err() {
        return Ok(false);
    }
    let id = SFunctor::identity(f.target().clone());
    Ok(s.after(f)?.data() == g.data() && r.after(g)?.data() == f.data() && r.after(s)?.data() == id.data())
}

/// One attached cell: which generator, and the square it killed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub generator: usize,
    pub glue: FunctorData,
    pub bottom: FunctorData,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factorization {
    pub i: SFunctor,
    pub p: SFunctor,
    pub cells: Vec<CellRecord>,
    /// `None` once `p` lifts against every generator; otherwise why it stopped.
    pub stopped: Option<String>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.stopped.is_none()
    }
}

/// Attaches cells along the first unliftable square (generators in list
/// order, squares in enumeration order) until `p` lifts against every
/// generator. At most `max_words` cells are attached.
pub fn factor_bounded(f: &SFunctor, gens: &[Generator], budget: &Budget) -> Result<Factorization> {
    f.validate()?;
    let mut i = SFunctor::identity(f.source().clone());
    let mut p = f.clone();
    let mut cells = Vec::new();
    loop {
        let mut next = None;
        'search: for (gi, g) in gens.iter().enumerate() {
            let Some(sqs) = squares(&g.functor, &p, budget) else {
                return Ok(Factorization { i, p, cells, stopped: Some("square enumeration ran out of steps".into()) });
            };
            for sq in sqs {
                match solve_lifting(&problem_of(&g.functor, &p, &sq)?, budget)? {
                    Verdict::Yes(_) => {}
                    Verdict::No(_) => {
                        next = Some((gi, sq));
                        break 'search;
                    }
                    Verdict::Unknown(_) => {
                        return Ok(Factorization { i, p, cells, stopped: Some("lifting search ran out of steps".into()) })
                    }
                }
            }
        }
        let Some((gi, sq)) = next else {
            return Ok(Factorization { i, p, cells, stopped: None });
        };
        if cells.len() >= budget.max_words {
            return Ok(Factorization { i, p, cells, stopped: Some(format!("more than {} cells", budget.max_words)) });
        }
        let g = &gens[gi];
        let glue = SFunctor::from_data(g.functor.source().clone(), p.source().clone(), sq.top.clone())?;
        let bottom = SFunctor::from_data(g.functor.target().clone(), p.target().clone(), sq.bottom.clone())?;
        let po = match pushout_generating(p.source(), &g.attachment, &glue, budget) {
            Ok(po) => po,
            Err(Error::BudgetExceeded(m)) => return Ok(Factorization { i, p, cells, stopped: Some(m) }),
            Err(e) => return Err(e),
        };
        p = po.induced(&p, &bottom, &glue)?;
        i = po.from_base.after(&i)?;
        cells.push(CellRecord { generator: gi, glue: sq.top, bottom: sq.bottom });
    }
}

/// Solves `i` against `p` over `f` to exhibit `f` as a retract of `i`.
pub fn retract_from_factorization(f: &SFunctor, fac: &Factorization, budget: &Budget) -> Result<Option<RetractWitness>> {
    let problem = LiftingProblem::new(f.clone(), fac.p.clone(), fac.i.clone(), SFunctor::identity(f.target().clone()))?;
    Ok(match solve_lifting(&problem, budget)? {
        Verdict::Yes(Evidence::Lift { diagonal }) => Some(RetractWitness {
            section: SFunctor::from_data(f.target().clone(), fac.i.target().clone(), diagonal)?,
            retraction: fac.p.clone(),
        }),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::model::generators::*;
    use crate::scat::basic::*;
    use crate::sset::standard::*;

    #[test]
    fn already_lifting_needs_no_cells() {
        let c = functor_u(Arc::new(standard_simplex(1, 1).unwrap())).unwrap();
        let fac = factor_bounded(&SFunctor::identity(c), &generating_acyclic_a1(1, 1).unwrap(), &Budget::default()).unwrap();
        assert!(fac.is_complete());
        assert!(fac.cells.is_empty());
    }

    #[test]
    fn new_object_cell() {
        let s = singleton_cat(1);
        let f = from_empty(s.clone());
        let gens: Vec<_> = generating_cofibrations(0, 1).unwrap().into_iter().filter(|g| g.name == "C2").collect();
        let fac = factor_bounded(&f, &gens, &Budget::default()).unwrap();
        assert!(fac.is_complete());
        assert_eq!(fac.cells.len(), 1);
        assert_eq!(fac.p.ob_map(), &[0]);
        assert!(fac.p.hom_maps().iter().all(|m| m.is_isomorphism()));
        assert_eq!(fac.p.after(&fac.i).unwrap().data(), f.data());
        let w = retract_from_factorization(&f, &fac, &Budget::default()).unwrap().unwrap();
        assert!(verify_retract(&f, &fac.i, &w).unwrap());
    }

    #[test]
    fn retract_of_itself() {
        let c = functor_u(Arc::new(boundary(1, 1).unwrap())).unwrap();
        let f = from_empty(c.clone());
        let id = SFunctor::identity(c.clone());
        let w = RetractWitness { section: id.clone(), retraction: id.clone() };
        assert!(verify_retract(&f, &f, &w).unwrap());
        let h = c.hom(0, 1).clone();
        let squash = crate::sset::SSetMap::constant(h.clone(), h, 0).unwrap();
        let mut data = id.data();
        data.hom_maps[1] = squash.assignment().clone();
        let r = SFunctor::from_data(c.clone(), c.clone(), data).unwrap();
        let broken = RetractWitness { section: id, retraction: r };
        assert!(!verify_retract(&f, &f, &broken).unwrap());
    }
}
