//! Growing `{x} → H → G` cell by cell until the homs of `H` are weakly
//! contractible.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::kill::{kill_pi0, kill_pi1, KillResult};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::model::free::GeneratorMarking;
use crate::scat::basic::{functor_u, singleton_named};
use crate::scat::pushout::{pushout_generating, Attachment};
use crate::scat::{SFunctor, SimplicialCategory};
use crate::sset::homotopy::{is_weakly_contractible, pi0, pi1_trivial};
use crate::sset::standard::{boundary_inclusion, standard_simplex, vertex_sequence};
use crate::sset::{SSetMap, SimplicialSet};
use crate::verdict::{FunctorData, Verdict};

/// Hom pairs in the fixed order H1..H4.
pub const HOM_ORDER: [(usize, usize); 4] = [(0, 1), (1, 0), (0, 0), (1, 1)];

/// One attached cell: a simplex of dimension `dim` in `Hom(a,b)` with the
/// given faces (indices before attachment), lying over `image` in `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillEntry {
    /// 1-based position in the H1..H4 order.
    pub hom: usize,
    pub pair: (usize, usize),
    pub dim: usize,
    pub faces: Vec<usize>,
    pub image: usize,
    /// Simplices of `Hom(a,b)` after closing under composition.
    pub simplices_after: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillRecord {
    pub entries: Vec<KillEntry>,
}

#[derive(Debug, Clone)]
pub struct BuildOutcome {
    pub h: Arc<SimplicialCategory>,
    pub inclusion: SFunctor,
    pub to_g: SFunctor,
    pub marking: GeneratorMarking,
    pub record: KillRecord,
    /// `None` when every hom of `h` is certified weakly contractible.
    pub stopped: Option<String>,
}

struct Stage {
    h: Arc<SimplicialCategory>,
    from_start: SFunctor,
    to_g: SFunctor,
    /// Generators as `(pair, dim, simplex)`.
    marked: Vec<(usize, usize, usize)>,
}

/// The functor `U(∂Δ[n]) → H` picking the boundary of a would-be simplex with `faces` in `Hom(a,b)`.
fn boundary_glue(h: &Arc<SimplicialCategory>, a: usize, b: usize, n: usize, faces: &[usize]) -> Result<(SSetMap, SFunctor)> {
    let d = h.dim_bound();
    let inc = boundary_inclusion(n, d)?;
    let ub = functor_u(inc.source().clone())?;
    let hom = h.hom(a, b);
    let face_of = |seq: &[usize]| -> usize {
        // The face of the new simplex spanned by `seq`, through the known faces.
        let missing: Vec<usize> = (0..=n).filter(|v| !seq.contains(v)).collect();
        let first = missing[missing.len() - 1];
        let mut cur = faces[first];
        let mut dim = n - 1;
        for &m in missing[..missing.len() - 1].iter().rev() {
            cur = hom.face(dim, cur, m);
            dim -= 1;
        }
        cur
    };
    let src = inc.source();
    let map = SSetMap::from_nondegenerate(src.clone(), hom.clone(), |k, s| face_of(&vertex_sequence(src, k, s)))?;
    let ident = |o: usize| (0..=d).map(|k| vec![h.id_k(o, k)]).collect::<Vec<_>>();
    let empty = vec![Vec::new(); d + 1];
    let data = FunctorData {
        ob_map: vec![a, b],
        hom_maps: if a == b {
            vec![ident(a), map.assignment().clone(), empty, ident(a)]
        } else {
            vec![ident(a), map.assignment().clone(), empty, ident(b)]
        },
    };
    Ok((inc, SFunctor::from_data(ub, h.clone(), data)?))
}

/// `U(Δ[n]) → G` sending the top simplex to `image` in `Hom(ga, gb)`.
fn simplex_bottom(g: &Arc<SimplicialCategory>, ga: usize, gb: usize, n: usize, image: usize) -> Result<SFunctor> {
    let d = g.dim_bound();
    let simplex = Arc::new(standard_simplex(n, d)?);
    let us = functor_u(simplex.clone())?;
    let hom = g.hom(ga, gb);
    let map = SSetMap::from_nondegenerate(simplex.clone(), hom.clone(), |k, s| {
        let seq = vertex_sequence(&simplex, k, s);
        let mut cur = image;
        let mut dim = n;
        for v in (0..=n).rev() {
            if !seq.contains(&v) {
                cur = hom.face(dim, cur, v);
                dim -= 1;
            }
        }
        cur
    })?;
    let ident = |o: usize| (0..=d).map(|k| vec![g.id_k(o, k)]).collect::<Vec<_>>();
    let data = FunctorData {
        ob_map: vec![ga, gb],
        hom_maps: vec![ident(ga), map.assignment().clone(), vec![Vec::new(); d + 1], ident(gb)],
    };
    SFunctor::from_data(us, g.clone(), data)
}

impl Stage {
    fn attach(&mut self, hom: usize, dim: usize, faces: Vec<usize>, image: usize, budget: &Budget) -> Result<KillEntry> {
        let (a, b) = HOM_ORDER[hom - 1];
        let (inc, glue) = boundary_glue(&self.h, a, b, dim, &faces)?;
        let bottom = simplex_bottom(self.to_g.target(), self.to_g.ob(a), self.to_g.ob(b), dim, image)?;
        let po = pushout_generating(&self.h, &Attachment::Cell { inclusion: inc }, &glue, budget)?;
        let to_g = po.induced(&self.to_g, &bottom, &glue)?;
        let n = po.category.num_objects();
        let mut marked: Vec<(usize, usize, usize)> = self
            .marked
            .iter()
            .map(|&(p, k, s)| (p, k, po.from_base.apply(k, p / n, p % n, s)))
            .collect();
        marked.extend(po.generators.iter().map(|&(x, y, k, s)| (x * n + y, k, s)));
        self.from_start = po.from_base.after(&self.from_start)?;
        self.h = po.category.clone();
        self.to_g = to_g;
        self.marked = marked;
        Ok(KillEntry {
            hom,
            pair: (a, b),
            dim,
            faces,
            image,
            simplices_after: (0..=self.h.dim_bound()).map(|k| self.h.hom(a, b).len(k)).collect(),
        })
    }

    fn outcome(self, record: KillRecord, stopped: Option<String>) -> Result<BuildOutcome> {
        let d = self.h.dim_bound();
        let mut marking = GeneratorMarking::empty(self.h.num_objects(), d);
        for &(p, k, s) in &self.marked {
            marking.mark(p, k, s);
        }
        let marking = marking.closed(&self.h);
        let x = singleton_named(&self.h.objects()[0], d);
        let inclusion = SFunctor::from_data(
            x,
            self.h.clone(),
            FunctorData { ob_map: vec![0], hom_maps: vec![(0..=d).map(|k| vec![self.h.id_k(0, k)]).collect()] },
        )?;
        Ok(BuildOutcome { h: self.h, inclusion, to_g: self.to_g, marking, record, stopped })
    }
}

/// The next cell to attach: `(hom, dim, faces, image)`, or why there is none.
fn next_cell(stage: &Stage, budget: &Budget) -> Result<std::result::Result<(usize, usize, Vec<usize>, usize), Option<String>>> {
    let h = &stage.h;
    let hom_map = |a: usize, b: usize| stage.to_g.hom_map(a, b);
    for (i, &(a, b)) in HOM_ORDER.iter().enumerate() {
        let hom = h.hom(a, b);
        if hom.len(0) == 0 {
            let g = stage.to_g.target().hom(stage.to_g.ob(a), stage.to_g.ob(b));
            if g.len(0) == 0 {
                return Ok(Err(Some(format!("Hom({a},{b}) of the target is empty"))));
            }
            return Ok(Ok((i + 1, 0, Vec::new(), 0)));
        }
        if pi0(hom).count() > 1 {
            let r = kill_pi0(hom_map(a, b), budget)?;
            return Ok(Ok(first_cell(i + 1, &r)));
        }
    }
    if h.dim_bound() >= 2 {
        for (i, &(a, b)) in HOM_ORDER.iter().enumerate() {
            if !pi1_trivial(h.hom(a, b), 0, budget)?.is_yes() {
                let r = kill_pi1(hom_map(a, b), 0, budget)?;
                return Ok(Ok(first_cell(i + 1, &r)));
            }
        }
    }
    for &(a, b) in &HOM_ORDER {
        match is_weakly_contractible(h.hom(a, b), budget) {
            Verdict::Yes(_) => {}
            Verdict::No(e) => return Ok(Err(Some(format!("obstruction above π₁ in Hom({a},{b}): {e:?}")))),
            Verdict::Unknown(r) => return Ok(Err(Some(format!("Hom({a},{b}) undecided: {r:?}")))),
        }
    }
    Ok(Err(None))
}

/// The first cell of a kill plan, with faces translated back to the old set.
fn first_cell(hom: usize, r: &KillResult) -> (usize, usize, Vec<usize>, usize) {
    let c = &r.cells[0];
    let back = |k: usize, s: usize| r.inclusion.assignment()[k].iter().position(|&t| t == s).expect("first cell has old faces");
    let faces = c.faces.iter().map(|&s| back(c.dim - 1, s)).collect();
    (hom, c.dim, faces, c.image)
}

/// Starting from `start → G` with `start` two objects `x`, `y`: adjoins
/// `y → x` if missing, then kills π₀ and π₁ of the four homs one cell at a
/// time (lowest dimension first, H1..H4 as tiebreak).
pub fn build_h(start: &Arc<SimplicialCategory>, target: &SFunctor, budget: &Budget) -> Result<BuildOutcome> {
    check_start(start, target, budget)?;
    let mut stage = initial_stage(start, target);
    let mut record = KillRecord::default();
    for _ in 0..budget.max_words {
        let (hom, dim, faces, image) = match next_cell(&stage, budget) {
            Ok(Ok(cell)) => cell,
            Ok(Err(stop)) => return stage.outcome(record, stop),
            Err(Error::BudgetExceeded(m)) => return stage.outcome(record, Some(m)),
            Err(e) => return Err(e),
        };
        match stage.attach(hom, dim, faces, image, budget) {
            Ok(entry) => record.entries.push(entry),
            Err(Error::BudgetExceeded(m)) => return stage.outcome(record, Some(m)),
            Err(e) => return Err(e),
        }
    }
    stage.outcome(record, Some(format!("more than {} cells", budget.max_words)))
}

/// Re-attaches the cells of `record` in order.
pub fn replay(start: &Arc<SimplicialCategory>, target: &SFunctor, record: &KillRecord, budget: &Budget) -> Result<BuildOutcome> {
    check_start(start, target, budget)?;
    let mut stage = initial_stage(start, target);
    let mut out = KillRecord::default();
    for e in &record.entries {
        out.entries.push(stage.attach(e.hom, e.dim, e.faces.clone(), e.image, budget)?);
    }
    let stop = next_cell(&stage, budget)?.err().flatten();
    stage.outcome(out, stop)
}

fn check_start(start: &Arc<SimplicialCategory>, target: &SFunctor, budget: &Budget) -> Result<()> {
    if start.num_objects() != 2 || target.source().as_ref() != start.as_ref() {
        return Err(Error::Mismatch("start must be a two-object category mapped into the target".into()));
    }
    target.validate()?;
    let g = target.target();
    for &(a, b) in &HOM_ORDER {
        let (ga, gb) = (target.ob(a), target.ob(b));
        let v = is_weakly_contractible(g.hom(ga, gb), budget);
        if !v.is_yes() {
            return Err(Error::ObstructionNotCertified(format!(
                "Hom({ga},{gb}) of the target is {} for weak contractibility",
                v.label()
            )));
        }
    }
    Ok(())
}

fn initial_stage(start: &Arc<SimplicialCategory>, target: &SFunctor) -> Stage {
    let mut marked = Vec::new();
    for p in [1usize, 2] {
        let hom: &SimplicialSet = start.hom(p / 2, p % 2);
        for k in 0..=start.dim_bound() {
            marked.extend((0..hom.len(k)).map(|s| (p, k, s)));
        }
    }
    Stage { h: start.clone(), from_start: SFunctor::identity(start.clone()), to_g: target.clone(), marked }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{codiscrete_groupoid, walking_arrow};

    fn arrow_into(g: &Arc<SimplicialCategory>) -> (Arc<SimplicialCategory>, SFunctor) {
        let w = walking_arrow(g.dim_bound());
        let d = g.dim_bound();
        let hm = (0..4).map(|p| (0..=d).map(|k| vec![0; w.hom(p / 2, p % 2).len(k)]).collect()).collect();
        let f = SFunctor::from_data(w.clone(), g.clone(), FunctorData { ob_map: vec![0, 1], hom_maps: hm }).unwrap();
        (w, f)
    }

    #[test]
    fn adjoining_an_inverse_never_stabilizes() {
        let g = codiscrete_groupoid(2, 2).unwrap();
        let (w, f) = arrow_into(&g);
        let out = build_h(&w, &f, &Budget::new(4, 16, 100_000)).unwrap();
        assert!(out.record.entries.is_empty());
        assert!(out.stopped.unwrap().contains("longer than 16"));
    }

    #[test]
    fn already_contractible_start() {
        let g = codiscrete_groupoid(2, 2).unwrap();
        let f = SFunctor::identity(g.clone());
        let out = build_h(&g, &f, &Budget::default()).unwrap();
        assert!(out.stopped.is_none());
        assert!(out.record.entries.is_empty());
        let again = replay(&g, &f, &out.record, &Budget::default()).unwrap();
        assert_eq!(again.h, out.h);
    }
}
