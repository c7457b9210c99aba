//! Exhaustive search for simplicial maps under constraints.
//!
//! A map out of `A` is fixed by the images of its nondegenerate simplices,
//! subject to face compatibility. Cells are visited by dimension, then index;
//! candidates are tried in index order, so the first map found is the
//! lexicographically least one.

use super::SimplicialSet;
use crate::budget::Meter;
use crate::verdict::Assignment;
use crate::sset::SSetMap;

/// Partial images and an optional condition `p ∘ f = over`.
#[derive(Default)]
pub struct MapConstraints<'a> {
    /// Required images, indexed like the source.
    pub fixed: Option<&'a [Vec<Option<usize>>]>,
    pub over: Option<(&'a SSetMap, &'a Assignment)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchEnd {
    /// Every map was visited.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    /// The step cap ran out first.
    Exhausted,
}

struct State<'a> {
    a: &'a SimplicialSet,
    b: &'a SimplicialSet,
    c: &'a MapConstraints<'a>,
    cells: Vec<(usize, usize)>,
    val: Vec<Vec<Option<usize>>>,
}

impl State<'_> {
    fn img(&self, k: usize, y: usize) -> usize {
        let dec = self.a.decomp(k, y);
        let m = k - dec.word.len();
        let base = self.val[m][dec.base].expect("lower cells assigned first");
        self.b.apply_word(m, base, &dec.word).expect("within bound")
    }

    fn fits(&self, k: usize, s: usize, t: usize) -> bool {
        if let Some((p, over)) = self.c.over {
            if p.apply(k, t) != over[k][s] {
                return false;
            }
        }
        k == 0 || (0..=k).all(|i| self.b.face(k, t, i) == self.img(k - 1, self.a.face(k, s, i)))
    }

    fn full(&self) -> Assignment {
        (0..=self.a.dim_bound()).map(|k| (0..self.a.len(k)).map(|y| self.img(k, y)).collect()).collect()
    }

    fn accepts(&self, f: &Assignment) -> bool {
        for k in 0..f.len() {
            for (s, &t) in f[k].iter().enumerate() {
                if let Some(fixed) = self.c.fixed {
                    if fixed[k][s].is_some_and(|want| want != t) {
                        return false;
                    }
                }
                if let Some((p, over)) = self.c.over {
                    if p.apply(k, t) != over[k][s] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize, meter: &mut Meter, visit: &mut dyn FnMut(Assignment) -> bool) -> SearchEnd {
        if depth == self.cells.len() {
            let f = self.full();
            if self.accepts(&f) && !visit(f) {
                return SearchEnd::Stopped;
            }
            return SearchEnd::Complete;
        }
        let (k, s) = self.cells[depth];
        let forced = self.c.fixed.and_then(|f| f[k][s]);
        let range = match forced {
            Some(t) if t < self.b.len(k) => t..t + 1,
            Some(_) => 0..0,
            None => 0..self.b.len(k),
        };
        for t in range {
            if !meter.tick() {
                return SearchEnd::Exhausted;
            }
            if !self.fits(k, s, t) {
                continue;
            }
            self.val[k][s] = Some(t);
            let end = self.run(depth + 1, meter, visit);
            self.val[k][s] = None;
            if end != SearchEnd::Complete {
                return end;
            }
        }
        SearchEnd::Complete
    }
}

/// Calls `visit` on every map `a → b` meeting the constraints, in
/// lexicographic order, until it returns false.
pub(crate) fn search_maps(
    a: &SimplicialSet,
    b: &SimplicialSet,
    c: &MapConstraints<'_>,
    meter: &mut Meter,
    visit: &mut dyn FnMut(Assignment) -> bool,
) -> SearchEnd {
    let cells = (0..=a.dim_bound()).flat_map(|k| a.nondegenerate(k).map(move |s| (k, s))).collect();
    let val = (0..=a.dim_bound()).map(|k| vec![None; a.len(k)]).collect();
    let mut st = State { a, b, c, cells, val };
    st.run(0, meter, visit)
}

/// First map in lexicographic order; `Err(())` when the cap ran out.
pub(crate) fn first_map(
    a: &SimplicialSet,
    b: &SimplicialSet,
    c: &MapConstraints<'_>,
    meter: &mut Meter,
) -> Result<Option<Assignment>, ()> {
    let mut found = None;
    match search_maps(a, b, c, meter, &mut |f| {
        found = Some(f);
        false
    }) {
        SearchEnd::Exhausted => Err(()),
        _ => Ok(found),
    }
}

/// All maps `a → b`, or `None` if the cap ran out.
pub fn all_maps(a: &SimplicialSet, b: &SimplicialSet, max_steps: usize) -> Option<Vec<Assignment>> {
    let mut out = Vec::new();
    let mut meter = Meter::new(max_steps);
    match search_maps(a, b, &MapConstraints::default(), &mut meter, &mut |f| {
        out.push(f);
        true
    }) {
        SearchEnd::Exhausted => None,
        _ => Some(out),
    }
}
