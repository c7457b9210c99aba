//! Free maps of simplicial categories and the A2 candidate check.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::scat::basic::{coproduct, singleton_named};
use crate::scat::{SFunctor, SimplicialCategory};
use crate::sset::homotopy::is_weakly_contractible;
use crate::verdict::{Evidence, FunctorData, Verdict};

/// Simplices marked as free generators, indexed by hom pair `a * n + b`,
/// then dimension; each list is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMarking {
    pub marked: Vec<Vec<Vec<usize>>>,
}

impl GeneratorMarking {
    pub fn empty(num_objects: usize, dim_bound: usize) -> Self {
        GeneratorMarking { marked: vec![vec![Vec::new(); dim_bound + 1]; num_objects * num_objects] }
    }

    pub fn mark(&mut self, pair: usize, k: usize, s: usize) {
        let list = &mut self.marked[pair][k];
        if let Err(i) = list.binary_search(&s) {
            list.insert(i, s);
        }
    }

    pub fn is_marked(&self, pair: usize, k: usize, s: usize) -> bool {
        self.marked.get(pair).and_then(|p| p.get(k)).is_some_and(|l| l.binary_search(&s).is_ok())
    }

    pub fn count(&self) -> usize {
        self.marked.iter().flatten().map(Vec::len).sum()
    }

    pub fn validate(&self, c: &SimplicialCategory) -> Result<()> {
        let n = c.num_objects();
        if self.marked.len() != n * n || self.marked.iter().any(|p| p.len() != c.dim_bound() + 1) {
            return Err(Error::MarkingInconsistent("marking shape does not match the category".into()));
        }
        for (pair, dims) in self.marked.iter().enumerate() {
            for (k, list) in dims.iter().enumerate() {
                if let Some(&s) = list.iter().find(|&&s| s >= c.hom(pair / n, pair % n).len(k)) {
                    return Err(Error::MarkingInconsistent(format!(
                        "simplex {s} of Hom({},{}) in dimension {k} does not exist",
                        pair / n,
                        pair % n
                    )));
                }
                if list.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::MarkingInconsistent("marked lists must be sorted and distinct".into()));
                }
            }
        }
        Ok(())
    }

    /// Adds every degeneracy of every marked simplex.
    pub fn closed(mut self, c: &SimplicialCategory) -> Self {
        let n = c.num_objects();
        for pair in 0..n * n {
            let h = c.hom(pair / n, pair % n);
            for k in 0..c.dim_bound() {
                for s in self.marked[pair][k].clone() {
                    for j in 0..=k {
                        self.mark(pair, k + 1, h.degen(k, s, j).expect("below dim_bound"));
                    }
                }
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeCheck {
    pub free: bool,
    pub violation: Option<String>,
}

impl FreeCheck {
    fn fail(msg: String) -> Self {
        FreeCheck { free: false, violation: Some(msg) }
    }
}

/// Whether `f` is a monomorphism whose target is, in each dimension, freely
/// generated over the image by the marked simplices, with the marking closed
/// under degeneracies.
pub fn is_free_map(f: &SFunctor, marking: &GeneratorMarking) -> Result<FreeCheck> {
    let (s, t) = (f.source(), f.target());
    marking.validate(t)?;
    let (n, m) = (s.num_objects(), t.num_objects());
    let d = t.dim_bound();
    let mut seen = vec![false; m];
    for &o in f.ob_map() {
        if std::mem::replace(&mut seen[o], true) {
            return Ok(FreeCheck::fail(format!("object {o} is hit twice")));
        }
    }
    if let Some(i) = f.hom_maps().iter().position(|h| !h.is_injective()) {
        return Ok(FreeCheck::fail(format!("hom map ({},{}) is not injective", i / n, i % n)));
    }
    let mut image: Vec<Vec<Vec<bool>>> =
        (0..m * m).map(|p| (0..=d).map(|k| vec![false; t.hom(p / m, p % m).len(k)]).collect()).collect();
    for a in 0..n {
        for b in 0..n {
            for k in 0..=d {
                for x in 0..s.hom(a, b).len(k) {
                    let y = f.apply(k, a, b, x);
                    if !t.is_identity(f.ob(a), f.ob(b), k, y) {
                        image[f.ob(a) * m + f.ob(b)][k][y] = true;
                    }
                }
            }
        }
    }
    for pair in 0..m * m {
        let (a, b) = (pair / m, pair % m);
        let h = t.hom(a, b);
        for k in 0..=d {
            for &g in &marking.marked[pair][k] {
                if image[pair][k][g] || t.is_identity(a, b, k, g) {
                    return Ok(FreeCheck::fail(format!(
                        "generator {g} of Hom({a},{b}) in dimension {k} lies in the image"
                    )));
                }
                if k < d {
                    for j in 0..=k {
                        let dg = h.degen(k, g, j).expect("below dim_bound");
                        if !marking.is_marked(pair, k + 1, dg) {
                            return Ok(FreeCheck::fail(format!(
                                "degeneracy s{j} of generator {g} of Hom({a},{b}) in dimension {k} is not marked"
                            )));
                        }
                    }
                }
            }
        }
    }
    for k in 0..=d {
        if let Some(v) = unique_words(t, k, &image, marking) {
            return Ok(FreeCheck::fail(v));
        }
    }
    Ok(FreeCheck { free: true, violation: None })
}

/// Breadth-first enumeration of alternating words in dimension `k`. Each word
/// must land on a fresh simplex; the enumeration is finite since every step
/// claims a new one.
fn unique_words(t: &SimplicialCategory, k: usize, image: &[Vec<Vec<bool>>], marking: &GeneratorMarking) -> Option<String> {
    let m = t.num_objects();
    let mut word_of: Vec<Vec<Option<Vec<String>>>> = (0..m * m).map(|p| vec![None; t.hom(p / m, p % m).len(k)]).collect();
    let show = |w: &[String]| if w.is_empty() { "id".to_string() } else { w.join("·") };
    let mut queue = VecDeque::new();
    for o in 0..m {
        word_of[o * m + o][t.id_k(o, k)] = Some(Vec::new());
        queue.push_back((o, o, t.id_k(o, k), false, Vec::<String>::new()));
    }
    while let Some((o, end, value, last_image, word)) = queue.pop_front() {
        for c in 0..m {
            let pair = end * m + c;
            for x in 0..t.hom(end, c).len(k) {
                let is_img = image[pair][k][x];
                let is_gen = marking.is_marked(pair, k, x);
                if !(is_gen || is_img && !last_image) {
                    continue;
                }
                let tag = if is_gen { "g" } else { "f" };
                let v = t.compose(k, o, end, c, x, value);
                let mut w = word.clone();
                w.push(format!("{tag}({end}→{c}:{x})"));
                if let Some(prev) = &word_of[o * m + c][v] {
                    return Some(format!(
                        "simplex {v} of Hom({o},{c}) in dimension {k} is both {} and {}",
                        show(prev),
                        show(&w)
                    ));
                }
                word_of[o * m + c][v] = Some(w.clone());
                queue.push_back((o, c, v, is_img, w));
            }
        }
    }
    for (pair, row) in word_of.iter().enumerate() {
        if let Some(v) = row.iter().position(Option::is_none) {
            return Some(format!(
                "simplex {v} of Hom({},{}) in dimension {k} is not a composite of image cells and generators",
                pair / m,
                pair % m
            ));
        }
    }
    None
}

/// The functor `{x} ⨿ {y} → H` hitting `x` first.
pub(crate) fn endpoints_functor(h: &std::sync::Arc<SimplicialCategory>, x: usize) -> Result<SFunctor> {
    let d = h.dim_bound();
    let y = 1 - x;
    let (pair, _) = coproduct(&[singleton_named(&h.objects()[x], d), singleton_named(&h.objects()[y], d)])?;
    let ident = |o: usize| (0..=d).map(|k| vec![h.id_k(o, k)]).collect::<Vec<_>>();
    let empty = vec![Vec::new(); d + 1];
    SFunctor::from_data(
        pair,
        h.clone(),
        FunctorData { ob_map: vec![x, y], hom_maps: vec![ident(x), empty.clone(), empty, ident(y)] },
    )
}

/// Two objects, weakly contractible homs, and `{x} ⨿ {y} → H` free on the marking.
pub fn is_a2_candidate(inc: &SFunctor, marking: &GeneratorMarking, budget: &Budget) -> Result<Verdict> {
    inc.validate()?;
    if inc.source().num_objects() != 1 {
        return Err(Error::Mismatch("the inclusion must start at a one-object category".into()));
    }
    let h = inc.target();
    let fail = |condition: &str, detail: String| {
        Verdict::No(Evidence::A2Failure { condition: condition.to_string(), detail })
    };
    if h.num_objects() != 2 {
        return Ok(fail("objects", format!("{} objects instead of two", h.num_objects())));
    }
    marking.validate(h)?;
    let mut checks = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            checks.push(match is_weakly_contractible(h.hom(a, b), budget) {
                Verdict::No(_) => fail("contractible", format!("Hom({a},{b}) is not weakly contractible")),
                v => v,
            });
        }
    }
    let free = is_free_map(&endpoints_functor(h, inc.ob(0))?, marking)?;
    if let Some(v) = free.violation {
        checks.push(fail("free", v));
    }
    Ok(Verdict::all(checks, |_| Evidence::A2Candidate { free_generators: marking.count() }))
}
