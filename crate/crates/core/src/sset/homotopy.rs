//! π₀, the edge-path group, weak contractibility and weak equivalences.

use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;

use super::{SSetMap, SimplicialSet};
use crate::algebra::group::{is_trivial_group, GroupPresentation};
use crate::algebra::homology::{induced_on_homology, reduced_homology};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::verdict::{Evidence, UnknownReason, Verdict};

/// Connected components of the 0-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Classes ordered by smallest member, members ascending.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each vertex.
    pub label: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.classes.len()
    }
}

pub fn pi0(x: &SimplicialSet) -> Components {
    let n = x.len(0);
    let mut uf = UnionFind::<usize>::new(n);
    if x.dim_bound() >= 1 {
        for e in x.nondegenerate(1) {
            let (a, b) = x.endpoints(e);
            uf.union(a, b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of_root = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes.len();
            classes.push(Vec::new());
        }
        label[v] = class_of_root[r];
        classes[label[v]].push(v);
    }
    Components { classes, label }
}

/// Edge-path presentation of π₁(X, base): one generator per nondegenerate
/// edge of the component off a breadth-first spanning tree, one relator per
/// nondegenerate 2-simplex.
pub fn edge_path_presentation(x: &SimplicialSet, base: usize) -> Result<GroupPresentation> {
    if base >= x.len(0) {
        return Err(Error::NotAZeroSimplex(format!("vertex {base} not in a set with {} vertices", x.len(0))));
    }
    let edges: Vec<usize> = if x.dim_bound() >= 1 { x.nondegenerate(1).collect() } else { Vec::new() };
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); x.len(0)];
    for &e in &edges {
        let (a, b) = x.endpoints(e);
        incident[a].push(e);
        if b != a {
            incident[b].push(e);
        }
    }
    let mut seen = vec![false; x.len(0)];
    let mut tree = vec![false; x.len(1)];
    let mut in_component = vec![false; x.len(1)];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for &e in &incident[v] {
            in_component[e] = true;
            let (a, b) = x.endpoints(e);
            let w = if a == v { b } else { a };
            if !seen[w] {
                seen[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let mut letter = vec![0i64; x.len(1)];
    let mut generators = Vec::new();
    for &e in &edges {
        if in_component[e] && !tree[e] {
            generators.push(format!("e{e}"));
            letter[e] = generators.len() as i64;
        }
    }
    let mut relators = Vec::new();
    if x.dim_bound() >= 2 {
        for t in x.nondegenerate(2) {
            if !seen[x.vertex(2, t, 0)] {
                continue;
            }
            let r: Vec<i64> = [(x.face(2, t, 2), 1), (x.face(2, t, 0), 1), (x.face(2, t, 1), -1)]
                .into_iter()
                .filter_map(|(e, sign)| (letter[e] != 0).then_some(sign * letter[e]))
                .collect();
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    GroupPresentation::new(generators, relators)
}

/// π₁ triviality at a vertex; needs the 2-skeleton whenever loops exist.
pub fn pi1_trivial(x: &SimplicialSet, base: usize, budget: &Budget) -> Result<Verdict> {
    let p = edge_path_presentation(x, base)?;
    if x.dim_bound() < 2 && !p.generators.is_empty() {
        return Ok(Verdict::Unknown(UnknownReason::DimensionBound));
    }
    Ok(match is_trivial_group(&p, budget) {
        Verdict::No(e) => Verdict::No(Evidence::Pi1 { vertex: base, detail: Box::new(e) }),
        v => v,
    })
}

/// `Yes` means: connected, simply connected, and reduced homology vanishes
/// in every degree below `dim_bound`.
pub fn is_weakly_contractible(x: &SimplicialSet, budget: &Budget) -> Verdict {
    let comps = pi0(x);
    if comps.count() == 0 {
        return Verdict::No(Evidence::Components { count: 0 });
    }
    if x.dim_bound() == 0 {
        return Verdict::Unknown(UnknownReason::DimensionBound);
    }
    if comps.count() > 1 {
        return Verdict::No(Evidence::Components { count: comps.count() });
    }
    for k in 1..x.dim_bound() {
        let h = reduced_homology(x, k).expect("degree below bound");
        if !h.is_zero() {
            return Verdict::No(Evidence::ReducedHomology { degree: k, betti: h.betti, torsion: h.torsion });
        }
    }
    match pi1_trivial(x, 0, budget).expect("vertex exists") {
        Verdict::Yes(_) => Verdict::Yes(Evidence::Contractible { degrees_checked: x.dim_bound() }),
        other => other,
    }
}

/// Map induced on π₀ as a vector of component labels.
pub fn pi0_map(f: &SSetMap) -> (Components, Components, Vec<usize>) {
    let (cx, cy) = (pi0(f.source()), pi0(f.target()));
    let map = cx.classes.iter().map(|c| cy.label[f.apply(0, c[0])]).collect();
    (cx, cy, map)
}

/// Sound, partial check: isomorphisms, maps between contractible sets, and
/// maps between sets with simply connected components are decided.
pub fn is_weak_equivalence_sset(f: &SSetMap, budget: &Budget) -> Result<Verdict> {
    f.validate()?;
    if f.is_isomorphism() {
        return Ok(Verdict::Yes(Evidence::Isomorphism));
    }
    let (x, y) = (f.source(), f.target());
    if is_weakly_contractible(x, budget).is_yes() && is_weakly_contractible(y, budget).is_yes() {
        return Ok(Verdict::Yes(Evidence::BothContractible));
    }
    let d = x.dim_bound();
    if d == 0 {
        return Ok(Verdict::Unknown(UnknownReason::DimensionBound));
    }
    let (cx, cy, map) = pi0_map(f);
    let mut hit = vec![false; cy.count()];
    let mut injective = true;
    for &c in &map {
        injective &= !hit[c];
        hit[c] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    if !injective || !surjective {
        return Ok(Verdict::No(Evidence::Pi0Mismatch { injective, surjective }));
    }
    for k in 1..d {
        let (injective, surjective) = induced_on_homology(f, k)?;
        if !injective || !surjective {
            return Ok(Verdict::No(Evidence::HomologyMismatch { degree: k, injective, surjective }));
        }
    }
    let bases = cx.classes.iter().map(|c| (x.as_ref(), c[0])).chain(cy.classes.iter().map(|c| (y.as_ref(), c[0])));
    let mut pending = None;
    for (s, v) in bases {
        match pi1_trivial(s, v, budget)? {
            Verdict::Yes(_) => {}
            Verdict::No(_) => pending = pending.or(Some(UnknownReason::UndecidedGroup)),
            Verdict::Unknown(r) => pending = pending.or(Some(r)),
        }
    }
    Ok(match pending {
        Some(r) => Verdict::Unknown(r),
        None => Verdict::Yes(Evidence::HomologyIsomorphism { components: cx.count(), degrees_checked: d }),
    })
}
