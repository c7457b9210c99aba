//! Finite ordinary categories and functors.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{Evidence, Verdict};

/// Morphisms of each hom are numbered `0..hom_size(a, b)`. Composition of
/// `g: b → c` after `f: a → b` is stored per triple at `g * |Hom(a,b)| + f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CategoryDoc", try_from = "CategoryDoc")]
pub struct FiniteCategory {
    objects: Vec<String>,
    hom_sizes: Vec<usize>,
    compose: Vec<Vec<usize>>,
    ids: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CategoryDoc {
    objects: Vec<String>,
    homs: BTreeMap<String, usize>,
    compose: Vec<TripleTable>,
    ids: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TripleTable {
    a: usize,
    b: usize,
    c: usize,
    table: Vec<usize>,
}

pub(crate) fn pair_key(a: usize, b: usize) -> String {
    format!("{a},{b}")
}

pub(crate) fn parse_pair_key(key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || Error::Schema(format!("bad hom key {key:?}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a >= n || b >= n {
        return Err(Error::UnknownObject(a.max(b)));
    }
    Ok((a, b))
}

impl From<FiniteCategory> for CategoryDoc {
    fn from(c: FiniteCategory) -> Self {
        let n = c.objects.len();
        let mut homs = BTreeMap::new();
        let mut compose = Vec::new();
        for a in 0..n {
            for b in 0..n {
                homs.insert(pair_key(a, b), c.hom_sizes[a * n + b]);
                for cc in 0..n {
                    compose.push(TripleTable { a, b, c: cc, table: c.compose[(a * n + b) * n + cc].clone() });
                }
            }
        }
        CategoryDoc { objects: c.objects, homs, compose, ids: c.ids }
    }
}

impl TryFrom<CategoryDoc> for FiniteCategory {
    type Error = Error;

    fn try_from(d: CategoryDoc) -> Result<Self> {
        let n = d.objects.len();
        let mut hom_sizes = vec![0; n * n];
        for (k, &v) in &d.homs {
            let (a, b) = parse_pair_key(k, n)?;
            hom_sizes[a * n + b] = v;
        }
        let mut compose = vec![Vec::new(); n * n * n];
        for t in d.compose {
            if t.a >= n || t.b >= n || t.c >= n {
                return Err(Error::UnknownObject(t.a.max(t.b).max(t.c)));
            }
            compose[(t.a * n + t.b) * n + t.c] = t.table;
        }
        FiniteCategory::new(d.objects, hom_sizes, compose, d.ids)
    }
}

impl FiniteCategory {
    pub fn new(objects: Vec<String>, hom_sizes: Vec<usize>, compose: Vec<Vec<usize>>, ids: Vec<usize>) -> Result<Self> {
        let c = FiniteCategory { objects, hom_sizes, compose, ids };
        c.validate()?;
        Ok(c)
    }

    /// Builds the composition tables from a closure `(a, b, c, g, f) ↦ g ∘ f`.
    pub fn from_fn(
        objects: Vec<String>,
        hom_sizes: Vec<usize>,
        ids: Vec<usize>,
        comp: impl Fn(usize, usize, usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let n = objects.len();
        let mut compose = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc) = (hom_sizes[a * n + b], hom_sizes[b * n + c]);
                    let mut t = Vec::with_capacity(ab * bc);
                    for g in 0..bc {
                        for f in 0..ab {
                            t.push(comp(a, b, c, g, f));
                        }
                    }
                    compose.push(t);
                }
            }
        }
        Self::new(objects, hom_sizes, compose, ids)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn hom_size(&self, a: usize, b: usize) -> usize {
        self.hom_sizes[a * self.objects.len() + b]
    }

    pub fn id(&self, a: usize) -> usize {
        self.ids[a]
    }

    /// `g ∘ f` for `f: a → b`, `g: b → c`.
    pub fn compose(&self, a: usize, b: usize, c: usize, g: usize, f: usize) -> usize {
        let n = self.objects.len();
        self.compose[(a * n + b) * n + c][g * self.hom_size(a, b) + f]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.objects.len();
        let bad = |m: String| Err(Error::InvalidCategory(m));
        if self.hom_sizes.len() != n * n || self.compose.len() != n * n * n || self.ids.len() != n {
            return bad("table shapes do not match the object count".into());
        }
        for a in 0..n {
            if self.ids[a] >= self.hom_size(a, a) {
                return bad(format!("identity of object {a} out of range"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = &self.compose[(a * n + b) * n + c];
                    if t.len() != self.hom_size(a, b) * self.hom_size(b, c) {
                        return bad(format!("composition table ({a},{b},{c}) has wrong size"));
                    }
                    if t.iter().any(|&v| v >= self.hom_size(a, c)) {
                        return bad(format!("composition table ({a},{b},{c}) out of range"));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for f in 0..self.hom_size(a, b) {
                    if self.compose(a, b, b, self.ids[b], f) != f || self.compose(a, a, b, f, self.ids[a]) != f {
                        return bad(format!("unit law fails for morphism {f} of ({a},{b})"));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for f in 0..self.hom_size(a, b) {
                            for g in 0..self.hom_size(b, c) {
                                let gf = self.compose(a, b, c, g, f);
                                for h in 0..self.hom_size(c, d) {
                                    let hg = self.compose(b, c, d, h, g);
                                    if self.compose(a, c, d, h, gf) != self.compose(a, b, d, hg, f) {
                                        return bad(format!("associativity fails on ({a},{b},{c},{d})"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// An inverse of `m: a → b`, if one exists (first in hom order).
    pub fn is_isomorphism(&self, a: usize, b: usize, m: usize) -> Result<Option<usize>> {
        let n = self.objects.len();
        if a >= n || b >= n {
            return Err(Error::UnknownObject(a.max(b)));
        }
        if m >= self.hom_size(a, b) {
            return Err(Error::OutOfRange(format!("morphism {m} of ({a},{b})")));
        }
        Ok((0..self.hom_size(b, a))
            .find(|&w| self.compose(a, b, a, w, m) == self.ids[a] && self.compose(b, a, b, m, w) == self.ids[b]))
    }

    /// Walking arrow `x → y`.
    pub fn walking_arrow() -> Self {
        Self::from_fn(vec!["x".into(), "y".into()], vec![1, 1, 0, 1], vec![0, 0], |_, _, _, _, _| 0)
            .expect("valid")
    }

    /// Exactly one morphism between any two objects.
    pub fn codiscrete(n: usize) -> Self {
        Self::from_fn((0..n).map(|i| format!("o{i}")).collect(), vec![1; n * n], vec![0; n], |_, _, _, _, _| 0)
            .expect("valid")
    }

    pub fn discrete(n: usize) -> Self {
        let sizes = (0..n * n).map(|i| usize::from(i / n == i % n)).collect();
        Self::from_fn((0..n).map(|i| format!("o{i}")).collect(), sizes, vec![0; n], |_, _, _, _, _| 0)
            .expect("valid")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    ob_map: Vec<usize>,
    /// Indexed by `a * n + b` over source objects.
    hom_maps: Vec<Vec<usize>>,
}

impl FiniteFunctor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        ob_map: Vec<usize>,
        hom_maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let f = FiniteFunctor { source, target, ob_map, hom_maps };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let n = c.num_objects();
        let hom_maps = (0..n * n).map(|i| (0..c.hom_size(i / n, i % n)).collect()).collect();
        FiniteFunctor { source: c.clone(), target: c, ob_map: (0..n).collect(), hom_maps }
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn ob(&self, a: usize) -> usize {
        self.ob_map[a]
    }

    pub fn apply(&self, a: usize, b: usize, m: usize) -> usize {
        self.hom_maps[a * self.source.num_objects() + b][m]
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &FiniteFunctor) -> Result<FiniteFunctor> {
        if inner.target != self.source {
            return Err(Error::Mismatch("functors are not composable".into()));
        }
        let n = inner.source.num_objects();
        let ob_map = inner.ob_map.iter().map(|&o| self.ob_map[o]).collect();
        let hom_maps = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                inner.hom_maps[i].iter().map(|&m| self.apply(inner.ob(a), inner.ob(b), m)).collect()
            })
            .collect();
        Ok(FiniteFunctor { source: inner.source.clone(), target: self.target.clone(), ob_map, hom_maps })
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let n = s.num_objects();
        let bad = |m: String| Err(Error::InvalidFunctor(m));
        if self.ob_map.len() != n || self.ob_map.iter().any(|&o| o >= t.num_objects()) {
            return bad("object map has wrong length or range".into());
        }
        if self.hom_maps.len() != n * n {
            return bad("hom map count differs from n^2".into());
        }
        for a in 0..n {
            for b in 0..n {
                let m = &self.hom_maps[a * n + b];
                if m.len() != s.hom_size(a, b) || m.iter().any(|&v| v >= t.hom_size(self.ob(a), self.ob(b))) {
                    return bad(format!("hom map ({a},{b}) has wrong length or range"));
                }
            }
            if self.apply(a, a, s.id(a)) != t.id(self.ob(a)) {
                return bad(format!("identity of {a} not preserved"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for f in 0..s.hom_size(a, b) {
                        for g in 0..s.hom_size(b, c) {
                            let lhs = self.apply(a, c, s.compose(a, b, c, g, f));
                            let (fa, fb, fc) = (self.ob(a), self.ob(b), self.ob(c));
                            let rhs = t.compose(fa, fb, fc, self.apply(b, c, g), self.apply(a, b, f));
                            if lhs != rhs {
                                return bad(format!("composition not preserved on ({a},{b},{c})"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fully faithful and essentially surjective. `Yes` records, per target
/// object, a source object and an isomorphism `F(source) → target`.
pub fn is_equivalence(f: &FiniteFunctor) -> Result<Verdict> {
    f.validate()?;
    let (s, t) = (f.source(), f.target());
    let n = s.num_objects();
    for a in 0..n {
        for b in 0..n {
            let size = t.hom_size(f.ob(a), f.ob(b));
            let mut hit = vec![false; size];
            for &m in &f.hom_maps[a * n + b] {
                if hit[m] {
                    return Ok(Verdict::No(Evidence::NotEquivalence { reason: format!("not faithful on ({a},{b})") }));
                }
                hit[m] = true;
            }
            if hit.iter().any(|&h| !h) {
                return Ok(Verdict::No(Evidence::NotEquivalence { reason: format!("not full on ({a},{b})") }));
            }
        }
    }
    let mut iso_choices = Vec::with_capacity(t.num_objects());
    for d in 0..t.num_objects() {
        let found = (0..n).find_map(|a| {
            (0..t.hom_size(f.ob(a), d)).find_map(|m| match t.is_isomorphism(f.ob(a), d, m) {
                Ok(Some(_)) => Some((a, m)),
                _ => None,
            })
        });
        match found {
            Some(choice) => iso_choices.push(choice),
            None => {
                return Ok(Verdict::No(Evidence::NotEquivalence {
                    reason: format!("object {d} is not isomorphic to an image object"),
                }))
            }
        }
    }
    Ok(Verdict::Yes(Evidence::Equivalence { iso_choices }))
}
