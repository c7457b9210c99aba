//! Exhaustive search for simplicial functors under constraints.
//!
//! Object maps are tried lexicographically; for each, the images of the
//! nondegenerate simplices of every hom are assigned by dimension, then hom
//! pair, then index, with candidates in index order. Identities are forced and
//! composition is checked as soon as all three simplices of a triple have
//! images.

use std::sync::Arc;

use super::{SFunctor, SimplicialCategory};
use crate::budget::Meter;
use crate::sset::search::SearchEnd;
use crate::verdict::FunctorData;

/// Constraints on a functor `F: A → B`.
#[derive(Default)]
pub struct FunctorConstraints<'a> {
    pub ob_fixed: Option<Vec<Option<usize>>>,
    /// Per hom pair of `A`, per dimension, per simplex.
    pub hom_fixed: Option<Vec<Vec<Vec<Option<usize>>>>>,
    /// `p ∘ F` must equal the given data.
    pub over: Option<(&'a SFunctor, &'a FunctorData)>,
}

struct HomState<'a> {
    a: &'a SimplicialCategory,
    b: &'a SimplicialCategory,
    c: &'a FunctorConstraints<'a>,
    ob: Vec<usize>,
    cells: Vec<(usize, usize, usize)>,
    val: Vec<Vec<Vec<Option<usize>>>>,
    /// For each pair (a,c), dimension and simplex x: all (b, g, f) with g ∘ f = x.
    factor: Vec<Vec<Vec<Vec<(usize, usize, usize)>>>>,
}

impl HomState<'_> {
    fn n(&self) -> usize {
        self.a.num_objects()
    }

    fn target_pair(&self, pair: usize) -> (usize, usize) {
        let n = self.n();
        (self.ob[pair / n], self.ob[pair % n])
    }

    fn img(&self, pair: usize, k: usize, y: usize) -> Option<usize> {
        let n = self.n();
        let h = self.a.hom(pair / n, pair % n);
        let dec = h.decomp(k, y);
        let m = k - dec.word.len();
        let base = self.val[pair][m][dec.base]?;
        let (ta, tb) = self.target_pair(pair);
        self.b.hom(ta, tb).apply_word(m, base, &dec.word)
    }

    fn fixed_ok(&self, pair: usize, k: usize, y: usize, t: usize) -> bool {
        if let Some(fixed) = &self.c.hom_fixed {
            if fixed[pair][k][y].is_some_and(|w| w != t) {
                return false;
            }
        }
        if let Some((p, over)) = self.c.over {
            let (ta, tb) = self.target_pair(pair);
            if p.apply(k, ta, tb, t) != over.hom_maps[pair][k][y] {
                return false;
            }
        }
        true
    }

    /// g ∘ f with g ∈ Hom(y,z), f ∈ Hom(x,y), all in dimension k.
    fn triple_ok(&self, k: usize, x: usize, y: usize, z: usize, g: usize, f: usize) -> bool {
        let n = self.n();
        let (Some(fg), Some(ff)) = (self.img(y * n + z, k, g), self.img(x * n + y, k, f)) else { return true };
        let gf = self.a.compose(k, x, y, z, g, f);
        let Some(fgf) = self.img(x * n + z, k, gf) else { return true };
        fgf == self.b.compose(k, self.ob[x], self.ob[y], self.ob[z], fg, ff)
    }

    /// Every determined triple and constraint in dimension k.
    fn dimension_ok(&self, k: usize) -> bool {
        let n = self.n();
        for pair in 0..n * n {
            let h = self.a.hom(pair / n, pair % n);
            for y in 0..h.len(k) {
                if let Some(t) = self.img(pair, k, y) {
                    if !self.fixed_ok(pair, k, y, t) {
                        return false;
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..self.a.hom(y, z).len(k) {
                        for f in 0..self.a.hom(x, y).len(k) {
                            if !self.triple_ok(k, x, y, z, g, f) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Triples in dimension k involving the simplex just assigned.
    fn cell_ok(&self, k: usize, pair: usize, s: usize) -> bool {
        let n = self.n();
        let (x, y) = (pair / n, pair % n);
        for z in 0..n {
            for g in 0..self.a.hom(y, z).len(k) {
                if !self.triple_ok(k, x, y, z, g, s) {
                    return false;
                }
            }
            for f in 0..self.a.hom(z, x).len(k) {
                if !self.triple_ok(k, z, x, y, s, f) {
                    return false;
                }
            }
        }
        self.factor[pair][k][s].iter().all(|&(mid, g, f)| self.triple_ok(k, x, mid, y, g, f))
    }

    fn run(
        &mut self,
        depth: usize,
        checked: Option<usize>,
        meter: &mut Meter,
        visit: &mut dyn FnMut(FunctorData) -> bool,
    ) -> SearchEnd {
        let next_dim = self.cells.get(depth).map_or(self.a.dim_bound(), |c| c.0);
        let from = checked.map_or(0, |c| c + 1);
        let upto = if depth == self.cells.len() { self.a.dim_bound() } else { next_dim };
        for k in from..=upto {
            if !self.dimension_ok(k) {
                return SearchEnd::Complete;
            }
        }
        let checked = Some(upto.max(checked.unwrap_or(0)));
        if depth == self.cells.len() {
            let n = self.n();
            let hom_maps = (0..n * n)
                .map(|pair| {
                    let h = self.a.hom(pair / n, pair % n);
                    (0..=h.dim_bound())
                        .map(|k| (0..h.len(k)).map(|y| self.img(pair, k, y).expect("all assigned")).collect())
                        .collect()
                })
                .collect();
            return if visit(FunctorData { ob_map: self.ob.clone(), hom_maps }) {
                SearchEnd::Complete
            } else {
                SearchEnd::Stopped
            };
        }
        let (k, pair, s) = self.cells[depth];
        let n = self.n();
        let (sa, sb) = (pair / n, pair % n);
        let (ta, tb) = self.target_pair(pair);
        let target = self.b.hom(ta, tb).clone();
        let forced = if k == 0 && sa == sb && s == self.a.id(sa) {
            Some(self.b.id(ta))
        } else {
            self.c.hom_fixed.as_ref().and_then(|f| f[pair][k][s])
        };
        let range = match forced {
            Some(t) if t < target.len(k) => t..t + 1,
            Some(_) => 0..0,
            None => 0..target.len(k),
        };
        let src = self.a.hom(sa, sb).clone();
        for t in range {
            if !meter.tick() {
                return SearchEnd::Exhausted;
            }
            if !self.fixed_ok(pair, k, s, t) {
                continue;
            }
            if k > 0 {
                let faces_ok = (0..=k).all(|i| self.img(pair, k - 1, src.face(k, s, i)) == Some(target.face(k, t, i)));
                if !faces_ok {
                    continue;
                }
            }
            self.val[pair][k][s] = Some(t);
            if self.cell_ok(k, pair, s) {
                let end = self.run(depth + 1, checked, meter, visit);
                if end != SearchEnd::Complete {
                    self.val[pair][k][s] = None;
                    return end;
                }
            }
            self.val[pair][k][s] = None;
        }
        SearchEnd::Complete
    }
}

fn factor_index(a: &SimplicialCategory) -> Vec<Vec<Vec<Vec<(usize, usize, usize)>>>> {
    let n = a.num_objects();
    let d = a.dim_bound();
    let mut idx: Vec<Vec<Vec<Vec<(usize, usize, usize)>>>> = (0..n * n)
        .map(|p| (0..=d).map(|k| vec![Vec::new(); a.hom(p / n, p % n).len(k)]).collect())
        .collect();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for k in 0..=d {
                    for g in 0..a.hom(y, z).len(k) {
                        for f in 0..a.hom(x, y).len(k) {
                            idx[x * n + z][k][a.compose(k, x, y, z, g, f)].push((y, g, f));
                        }
                    }
                }
            }
        }
    }
    idx
}

/// Calls `visit` on each functor `A → B` meeting the constraints until it returns false.
pub(crate) fn search_functors(
    a: &Arc<SimplicialCategory>,
    b: &Arc<SimplicialCategory>,
    c: &FunctorConstraints<'_>,
    meter: &mut Meter,
    visit: &mut dyn FnMut(FunctorData) -> bool,
) -> SearchEnd {
    let n = a.num_objects();
    let m = b.num_objects();
    if a.dim_bound() != b.dim_bound() {
        return SearchEnd::Complete;
    }
    let factor = factor_index(a);
    let d = a.dim_bound();
    let mut cells = Vec::new();
    for k in 0..=d {
        for pair in 0..n * n {
            cells.extend(a.hom(pair / n, pair % n).nondegenerate(k).map(|s| (k, pair, s)));
        }
    }
    let mut ob = vec![0usize; n];
    let allowed = |i: usize, o: usize| {
        c.ob_fixed.as_ref().is_none_or(|f| f[i].is_none_or(|w| w == o))
            && c.over.is_none_or(|(p, over)| p.ob(o) == over.ob_map[i])
    };
    // Odometer over object maps in lexicographic order.
    if n > 0 && m == 0 {
        return SearchEnd::Complete;
    }
    loop {
        if !meter.tick() {
            return SearchEnd::Exhausted;
        }
        if (0..n).all(|i| allowed(i, ob[i])) {
            let val = (0..n * n).map(|p| (0..=d).map(|k| vec![None; a.hom(p / n, p % n).len(k)]).collect()).collect();
            let mut st = HomState { a, b, c, ob: ob.clone(), cells: cells.clone(), val, factor: factor.clone() };
            let end = st.run(0, None, meter, visit);
            if end != SearchEnd::Complete {
                return end;
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return SearchEnd::Complete;
            }
            i -= 1;
            ob[i] += 1;
            if ob[i] < m {
                break;
            }
            ob[i] = 0;
        }
    }
}

/// Every functor `A → B`, or `None` if `max_steps` ran out.
pub fn all_functors(a: &Arc<SimplicialCategory>, b: &Arc<SimplicialCategory>, max_steps: usize) -> Option<Vec<SFunctor>> {
    let mut out = Vec::new();
    let mut meter = Meter::new(max_steps);
    let end = search_functors(a, b, &FunctorConstraints::default(), &mut meter, &mut |f| {
        out.push(SFunctor::from_data(a.clone(), b.clone(), f).expect("search yields valid functors"));
        true
    });
    (end != SearchEnd::Exhausted).then_some(out)
}
