//! Categories enriched in bounded simplicial sets.

pub mod basic;
pub mod free;
pub mod pi0;
pub mod pushout;
pub mod search;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{pair_key, parse_pair_key};
use crate::error::{Error, Result};
use crate::sset::{SSetMap, SimplicialSet};
use crate::verdict::{Assignment, FunctorData};

/// Composition of `g ∈ Hom(b,c)_k` after `f ∈ Hom(a,b)_k` is stored in the
/// table for `(a,b,c)` and dimension `k` at `g * |Hom(a,b)_k| + f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ScatDoc", try_from = "ScatDoc")]
pub struct SimplicialCategory {
    objects: Vec<String>,
    dim_bound: usize,
    homs: Vec<Arc<SimplicialSet>>,
    compose: Vec<Vec<Vec<usize>>>,
    ids: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ScatDoc {
    objects: Vec<String>,
    dim_bound: usize,
    homs: BTreeMap<String, Arc<SimplicialSet>>,
    compose: Vec<ScatTriple>,
    ids: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ScatTriple {
    a: usize,
    b: usize,
    c: usize,
    tables: Vec<Vec<usize>>,
}

impl From<SimplicialCategory> for ScatDoc {
    fn from(c: SimplicialCategory) -> Self {
        let n = c.objects.len();
        let mut homs = BTreeMap::new();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                homs.insert(pair_key(a, b), c.homs[a * n + b].clone());
                for cc in 0..n {
                    compose.push(ScatTriple { a, b, c: cc, tables: c.compose[(a * n + b) * n + cc].clone() });
                }
            }
        }
        ScatDoc { objects: c.objects, dim_bound: c.dim_bound, homs, compose, ids: c.ids }
    }
}

impl TryFrom<ScatDoc> for SimplicialCategory {
    type Error = Error;

    fn try_from(d: ScatDoc) -> Result<Self> {
        let n = d.objects.len();
        let mut homs: Vec<Option<Arc<SimplicialSet>>> = vec![None; n * n];
        for (k, h) in d.homs {
            let (a, b) = parse_pair_key(&k, n)?;
            homs[a * n + b] = Some(h);
        }
        let homs = homs
            .into_iter()
            .enumerate()
            .map(|(i, h)| h.ok_or_else(|| Error::Schema(format!("missing hom {}", pair_key(i / n, i % n)))))
            .collect::<Result<Vec<_>>>()?;
        let mut compose = vec![Vec::new(); n * n * n];
        for t in d.compose {
            if t.a >= n || t.b >= n || t.c >= n {
                return Err(Error::UnknownObject(t.a.max(t.b).max(t.c)));
            }
            compose[(t.a * n + t.b) * n + t.c] = t.tables;
        }
        SimplicialCategory::new(d.objects, d.dim_bound, homs, compose, d.ids)
    }
}

/// A failed category axiom, with the dimension, objects and simplices involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatViolation {
    pub dim: Option<usize>,
    pub objects: Vec<usize>,
    pub simplices: Vec<usize>,
    pub detail: String,
}

impl std::fmt::Display for ScatViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.detail)?;
        if let Some(k) = self.dim {
            write!(f, " in dimension {k}")?;
        }
        write!(f, " (objects {:?}, simplices {:?})", self.objects, self.simplices)
    }
}

impl SimplicialCategory {
    pub fn new(
        objects: Vec<String>,
        dim_bound: usize,
        homs: Vec<Arc<SimplicialSet>>,
        compose: Vec<Vec<Vec<usize>>>,
        ids: Vec<usize>,
    ) -> Result<Self> {
        let c = SimplicialCategory { objects, dim_bound, homs, compose, ids };
        let v = c.validate();
        if v.is_empty() {
            Ok(c)
        } else {
            Err(Error::InvalidCategory(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))
        }
    }

    pub fn new_unchecked(
        objects: Vec<String>,
        dim_bound: usize,
        homs: Vec<Arc<SimplicialSet>>,
        compose: Vec<Vec<Vec<usize>>>,
        ids: Vec<usize>,
    ) -> Self {
        SimplicialCategory { objects, dim_bound, homs, compose, ids }
    }

    /// Tabulates composition from `(k, a, b, c, g, f) ↦ g ∘ f`.
    pub fn from_fn(
        objects: Vec<String>,
        dim_bound: usize,
        homs: Vec<Arc<SimplicialSet>>,
        ids: Vec<usize>,
        comp: impl Fn(usize, usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let n = objects.len();
        let mut compose = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc) = (&homs[a * n + b], &homs[b * n + c]);
                    let tables = (0..=dim_bound)
                        .map(|k| {
                            let mut t = Vec::with_capacity(ab.len(k) * bc.len(k));
                            for g in 0..bc.len(k) {
                                for f in 0..ab.len(k) {
                                    t.push(comp(k, a, b, c, g, f));
                                }
                            }
                            t
                        })
                        .collect();
                    compose.push(tables);
                }
            }
        }
        Self::new(objects, dim_bound, homs, compose, ids)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn hom(&self, a: usize, b: usize) -> &Arc<SimplicialSet> {
        &self.homs[a * self.objects.len() + b]
    }

    pub fn homs(&self) -> &[Arc<SimplicialSet>] {
        &self.homs
    }

    /// Identity 0-simplex of `Hom(a,a)`.
    pub fn id(&self, a: usize) -> usize {
        self.ids[a]
    }

    /// Identity in dimension `k`: the iterated degeneracy of the identity vertex.
    pub fn id_k(&self, a: usize, k: usize) -> usize {
        self.hom(a, a).constant(self.ids[a], k)
    }

    pub fn is_identity(&self, a: usize, b: usize, k: usize, s: usize) -> bool {
        a == b && self.id_k(a, k) == s
    }

    /// `g ∘ f` in dimension `k` for `f ∈ Hom(a,b)_k`, `g ∈ Hom(b,c)_k`.
    pub fn compose(&self, k: usize, a: usize, b: usize, c: usize, g: usize, f: usize) -> usize {
        let n = self.objects.len();
        self.compose[(a * n + b) * n + c][k][g * self.hom(a, b).len(k) + f]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// Every violated axiom; empty when the category is valid.
    pub fn validate(&self) -> Vec<ScatViolation> {
        let mut out = Vec::new();
        let n = self.objects.len();
        let d = self.dim_bound;
        let viol = |dim, objects: Vec<usize>, simplices: Vec<usize>, detail: String| ScatViolation {
            dim,
            objects,
            simplices,
            detail,
        };
        if self.homs.len() != n * n || self.compose.len() != n * n * n || self.ids.len() != n {
            out.push(viol(None, vec![], vec![], "table shapes do not match the object count".into()));
            return out;
        }
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                if h.dim_bound() != d {
                    out.push(viol(None, vec![a, b], vec![], format!("hom has dim_bound {}", h.dim_bound())));
                }
                for v in h.validate() {
                    out.push(viol(Some(v.dim), vec![a, b], vec![v.simplex], format!("hom complex: {}", v.identity)));
                }
            }
            if self.ids[a] >= self.hom(a, a).len(0) {
                out.push(viol(Some(0), vec![a], vec![self.ids[a]], "identity out of range".into()));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = &self.compose[(a * n + b) * n + c];
                    if t.len() != d + 1 {
                        out.push(viol(None, vec![a, b, c], vec![], "composition needs one table per dimension".into()));
                        continue;
                    }
                    for k in 0..=d {
                        let want = self.hom(a, b).len(k) * self.hom(b, c).len(k);
                        if t[k].len() != want || t[k].iter().any(|&v| v >= self.hom(a, c).len(k)) {
                            out.push(viol(Some(k), vec![a, b, c], vec![], "composition table size or range".into()));
                        }
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    self.check_simplicial(a, b, c, &mut out);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for k in 0..=d {
                    for f in 0..self.hom(a, b).len(k) {
                        if self.compose(k, a, b, b, self.id_k(b, k), f) != f {
                            out.push(viol(Some(k), vec![a, b], vec![f], "left unit law".into()));
                        }
                        if self.compose(k, a, a, b, f, self.id_k(a, k)) != f {
                            out.push(viol(Some(k), vec![a, b], vec![f], "right unit law".into()));
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        self.check_associative(a, b, c, e, &mut out);
                    }
                }
            }
        }
        out
    }

    fn check_simplicial(&self, a: usize, b: usize, c: usize, out: &mut Vec<ScatViolation>) {
        let (ab, bc) = (self.hom(a, b), self.hom(b, c));
        let ac = self.hom(a, c);
        for k in 0..=self.dim_bound {
            for g in 0..bc.len(k) {
                for f in 0..ab.len(k) {
                    let gf = self.compose(k, a, b, c, g, f);
                    if k > 0 {
                        for i in 0..=k {
                            let lhs = ac.face(k, gf, i);
                            let rhs = self.compose(k - 1, a, b, c, bc.face(k, g, i), ab.face(k, f, i));
                            if lhs != rhs {
                                out.push(ScatViolation {
                                    dim: Some(k),
                                    objects: vec![a, b, c],
                                    simplices: vec![g, f],
                                    detail: format!("d_{i} does not commute with composition"),
                                });
                                return;
                            }
                        }
                    }
                    if k < self.dim_bound {
                        for j in 0..=k {
                            let lhs = ac.degen(k, gf, j).unwrap();
                            let rhs =
                                self.compose(k + 1, a, b, c, bc.degen(k, g, j).unwrap(), ab.degen(k, f, j).unwrap());
                            if lhs != rhs {
                                out.push(ScatViolation {
                                    dim: Some(k),
                                    objects: vec![a, b, c],
                                    simplices: vec![g, f],
                                    detail: format!("s_{j} does not commute with composition"),
                                });
                                return;
                            }
                        }
                    }
                }
            }
        }
    }

    fn check_associative(&self, a: usize, b: usize, c: usize, e: usize, out: &mut Vec<ScatViolation>) {
        for k in 0..=self.dim_bound {
            for f in 0..self.hom(a, b).len(k) {
                for g in 0..self.hom(b, c).len(k) {
                    let gf = self.compose(k, a, b, c, g, f);
                    for h in 0..self.hom(c, e).len(k) {
                        let hg = self.compose(k, b, c, e, h, g);
                        if self.compose(k, a, c, e, h, gf) != self.compose(k, a, b, e, hg, f) {
                            out.push(ScatViolation {
                                dim: Some(k),
                                objects: vec![a, b, c, e],
                                simplices: vec![h, g, f],
                                detail: "associativity".into(),
                            });
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// Object map plus one simplicial map per ordered pair of source objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "FunctorDoc", try_from = "FunctorDoc")]
pub struct SFunctor {
    source: Arc<SimplicialCategory>,
    target: Arc<SimplicialCategory>,
    ob_map: Vec<usize>,
    hom_maps: Vec<SSetMap>,
}

#[derive(Serialize, Deserialize)]
struct FunctorDoc {
    source: Arc<SimplicialCategory>,
    target: Arc<SimplicialCategory>,
    ob_map: Vec<usize>,
    hom_maps: BTreeMap<String, Assignment>,
}

impl From<SFunctor> for FunctorDoc {
    fn from(f: SFunctor) -> Self {
        let n = f.source.num_objects();
        let hom_maps = f
            .hom_maps
            .iter()
            .enumerate()
            .map(|(i, m)| (pair_key(i / n, i % n), m.assignment().clone()))
            .collect();
        FunctorDoc { source: f.source, target: f.target, ob_map: f.ob_map, hom_maps }
    }
}

impl TryFrom<FunctorDoc> for SFunctor {
    type Error = Error;

    fn try_from(d: FunctorDoc) -> Result<Self> {
        let n = d.source.num_objects();
        let mut maps: Vec<Assignment> = vec![Vec::new(); n * n];
        for (k, m) in d.hom_maps {
            let (a, b) = parse_pair_key(&k, n)?;
            maps[a * n + b] = m;
        }
        SFunctor::from_data(d.source, d.target, FunctorData { ob_map: d.ob_map, hom_maps: maps })
    }
}

impl SFunctor {
    pub fn new(
        source: Arc<SimplicialCategory>,
        target: Arc<SimplicialCategory>,
        ob_map: Vec<usize>,
        hom_maps: Vec<SSetMap>,
    ) -> Result<Self> {
        let f = SFunctor { source, target, ob_map, hom_maps };
        f.validate()?;
        Ok(f)
    }

    /// Builds and validates a functor from raw object and assignment tables.
    pub fn from_data(source: Arc<SimplicialCategory>, target: Arc<SimplicialCategory>, data: FunctorData) -> Result<Self> {
        let f = Self::from_data_unchecked(source, target, data)?;
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_data_unchecked(
        source: Arc<SimplicialCategory>,
        target: Arc<SimplicialCategory>,
        data: FunctorData,
    ) -> Result<Self> {
        let n = source.num_objects();
        if data.ob_map.len() != n || data.hom_maps.len() != n * n {
            return Err(Error::InvalidFunctor("object or hom map count mismatch".into()));
        }
        if let Some(&o) = data.ob_map.iter().find(|&&o| o >= target.num_objects()) {
            return Err(Error::UnknownObject(o));
        }
        let hom_maps = data
            .hom_maps
            .into_iter()
            .enumerate()
            .map(|(i, assign)| {
                let (a, b) = (i / n, i % n);
                SSetMap::new_unchecked(
                    source.hom(a, b).clone(),
                    target.hom(data.ob_map[a], data.ob_map[b]).clone(),
                    assign,
                )
            })
            .collect();
        Ok(SFunctor { source, target, ob_map: data.ob_map, hom_maps })
    }

    pub fn identity(c: Arc<SimplicialCategory>) -> Self {
        let n = c.num_objects();
        let hom_maps = c.homs.iter().map(|h| SSetMap::identity(h.clone())).collect();
        SFunctor { source: c.clone(), target: c, ob_map: (0..n).collect(), hom_maps }
    }

    pub fn source(&self) -> &Arc<SimplicialCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialCategory> {
        &self.target
    }

    pub fn ob(&self, a: usize) -> usize {
        self.ob_map[a]
    }

    pub fn ob_map(&self) -> &[usize] {
        &self.ob_map
    }

    pub fn hom_map(&self, a: usize, b: usize) -> &SSetMap {
        &self.hom_maps[a * self.source.num_objects() + b]
    }

    pub fn hom_maps(&self) -> &[SSetMap] {
        &self.hom_maps
    }

    pub fn apply(&self, k: usize, a: usize, b: usize, s: usize) -> usize {
        self.hom_map(a, b).apply(k, s)
    }

    pub fn data(&self) -> FunctorData {
        FunctorData { ob_map: self.ob_map.clone(), hom_maps: self.hom_maps.iter().map(|m| m.assignment().clone()).collect() }
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &SFunctor) -> Result<SFunctor> {
        if inner.target.as_ref() != self.source.as_ref() {
            return Err(Error::Mismatch("functors are not composable".into()));
        }
        let n = inner.source.num_objects();
        let ob_map: Vec<usize> = inner.ob_map.iter().map(|&o| self.ob_map[o]).collect();
        let hom_maps = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                let outer = self.hom_map(inner.ob(a), inner.ob(b));
                let assign = inner.hom_maps[i]
                    .assignment()
                    .iter()
                    .enumerate()
                    .map(|(k, row)| row.iter().map(|&s| outer.apply(k, s)).collect())
                    .collect();
                SSetMap::new_unchecked(inner.source.hom(a, b).clone(), self.target.hom(ob_map[a], ob_map[b]).clone(), assign)
            })
            .collect();
        Ok(SFunctor { source: inner.source.clone(), target: self.target.clone(), ob_map, hom_maps })
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let n = s.num_objects();
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        if s.dim_bound() != t.dim_bound() {
            return bad("source and target dim_bound differ".into());
        }
        if self.ob_map.len() != n || self.hom_maps.len() != n * n {
            return bad("object or hom map count mismatch".into());
        }
        if let Some(&o) = self.ob_map.iter().find(|&&o| o >= t.num_objects()) {
            return Err(Error::UnknownObject(o));
        }
        for a in 0..n {
            for b in 0..n {
                let m = self.hom_map(a, b);
                let same = |x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>| Arc::ptr_eq(x, y) || x == y;
                if !same(m.source(), s.hom(a, b)) || !same(m.target(), t.hom(self.ob(a), self.ob(b))) {
                    return bad(format!("hom map ({a},{b}) has wrong endpoints"));
                }
                m.validate().map_err(|e| Error::InvalidFunctor(format!("hom map ({a},{b}): {e}")))?;
            }
            if self.apply(0, a, a, s.id(a)) != t.id(self.ob(a)) {
                return bad(format!("identity of object {a} not preserved"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (fa, fb, fc) = (self.ob(a), self.ob(b), self.ob(c));
                    for k in 0..=s.dim_bound() {
                        for g in 0..s.hom(b, c).len(k) {
                            let fg = self.apply(k, b, c, g);
                            for f in 0..s.hom(a, b).len(k) {
                                let lhs = self.apply(k, a, c, s.compose(k, a, b, c, g, f));
                                let rhs = t.compose(k, fa, fb, fc, fg, self.apply(k, a, b, f));
                                if lhs != rhs {
                                    return bad(format!(
                                        "composition not preserved on ({a},{b},{c}) in dimension {k} at ({g},{f})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
