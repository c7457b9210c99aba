//! Free extensions of a simplicial category by normalized words.
//!
//! A morphism of the extension is a path of atoms: non-identity simplices of
//! the base category, non-identity simplices of an amalgamated second
//! category, or adjoined generators. Adjacent atoms from the same category
//! are composed, identities dropped; generators never compose. Words are
//! enumerated breadth-first by length, then lexicographically.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{SFunctor, SimplicialCategory};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::sset::SimplicialSet;
use crate::verdict::FunctorData;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    /// Simplex of the base hom with source `a`, target `b`.
    Base { a: usize, b: usize, s: usize },
    /// Simplex of the amalgamated category's hom `(a, b)` (its own object indices).
    Ext { a: usize, b: usize, s: usize },
    /// Adjoined generator, indexed within its dimension.
    Gen(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub src: usize,
    pub tgt: usize,
    /// Path order: the first atom is applied first.
    pub atoms: Vec<Atom>,
}

/// A free generator in one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenCell {
    pub src: usize,
    pub tgt: usize,
    /// `d_0 … d_k`, each a word one dimension down (empty for vertices).
    pub faces: Vec<Word>,
    /// `s_0 … s_k`, generator indices one dimension up (empty at the bound).
    pub degens: Vec<usize>,
}

/// A category amalgamated with the base along an object map.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub cat: Arc<SimplicialCategory>,
    /// Object of the result for each object of `cat`.
    pub ob_map: Vec<usize>,
}

/// Data of a free extension of `base`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub base: Arc<SimplicialCategory>,
    pub new_objects: Vec<String>,
    pub amalgam: Option<Amalgam>,
    /// Generators per dimension `0..=dim_bound`.
    pub gens: Vec<Vec<GenCell>>,
}

/// The extension computed exactly, with the word behind every simplex.
#[derive(Debug, Clone)]
pub struct FreeResult {
    pub category: Arc<SimplicialCategory>,
    /// Per hom pair, per dimension, the word of each simplex.
    pub words: Vec<Vec<Vec<Word>>>,
    index: Vec<Vec<HashMap<Word, usize>>>,
}

impl FreeResult {
    pub fn lookup(&self, k: usize, w: &Word) -> Option<usize> {
        let n = self.category.num_objects();
        self.index[w.src * n + w.tgt][k].get(w).copied()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Factor {
    Base,
    Ext,
    Free,
}

fn factor(a: &Atom) -> Factor {
    match a {
        Atom::Base { .. } => Factor::Base,
        Atom::Ext { .. } => Factor::Ext,
        Atom::Gen(_) => Factor::Free,
    }
}

impl Extension {
    pub fn dim_bound(&self) -> usize {
        self.base.dim_bound()
    }

    pub fn num_objects(&self) -> usize {
        self.base.num_objects() + self.new_objects.len()
    }

    fn atom_ends(&self, k: usize, a: &Atom) -> (usize, usize) {
        match *a {
            Atom::Base { a, b, .. } => (a, b),
            Atom::Ext { a, b, .. } => {
                let m = &self.amalgam.as_ref().expect("amalgam").ob_map;
                (m[a], m[b])
            }
            Atom::Gen(g) => (self.gens[k][g].src, self.gens[k][g].tgt),
        }
    }

    fn is_identity(&self, k: usize, a: &Atom) -> bool {
        match *a {
            Atom::Base { a, b, s } => self.base.is_identity(a, b, k, s),
            Atom::Ext { a, b, s } => self.amalgam.as_ref().expect("amalgam").cat.is_identity(a, b, k, s),
            Atom::Gen(_) => false,
        }
    }

    /// `second ∘ first` for two atoms of one composing category.
    fn compose_atoms(&self, k: usize, first: &Atom, second: &Atom) -> Atom {
        match (*first, *second) {
            (Atom::Base { a, b, s: f }, Atom::Base { b: c, s: g, .. }) => {
                Atom::Base { a, b: c, s: self.base.compose(k, a, b, c, g, f) }
            }
            (Atom::Ext { a, b, s: f }, Atom::Ext { b: c, s: g, .. }) => {
                let h = &self.amalgam.as_ref().expect("amalgam").cat;
                Atom::Ext { a, b: c, s: h.compose(k, a, b, c, g, f) }
            }
            _ => unreachable!("only same-category atoms compose"),
        }
    }

    /// Normal form of a composable atom sequence.
    pub fn normalize(&self, k: usize, src: usize, tgt: usize, atoms: impl IntoIterator<Item = Atom>) -> Word {
        let mut stack: Vec<Atom> = Vec::new();
        for atom in atoms {
            if self.is_identity(k, &atom) {
                continue;
            }
            match stack.last() {
                Some(top) if factor(top) == factor(&atom) && factor(&atom) != Factor::Free => {
                    let top = stack.pop().unwrap();
                    let c = self.compose_atoms(k, &top, &atom);
                    if !self.is_identity(k, &c) {
                        stack.push(c);
                    }
                }
                _ => stack.push(atom),
            }
        }
        Word { src, tgt, atoms: stack }
    }

    pub fn concat(&self, k: usize, first: &Word, second: &Word) -> Word {
        debug_assert_eq!(first.tgt, second.src);
        self.normalize(k, first.src, second.tgt, first.atoms.iter().chain(&second.atoms).copied())
    }

    pub fn face(&self, k: usize, w: &Word, i: usize) -> Word {
        let mut atoms = Vec::new();
        for atom in &w.atoms {
            match *atom {
                Atom::Base { a, b, s } => atoms.push(Atom::Base { a, b, s: self.base.hom(a, b).face(k, s, i) }),
                Atom::Ext { a, b, s } => {
                    let h = &self.amalgam.as_ref().expect("amalgam").cat;
                    atoms.push(Atom::Ext { a, b, s: h.hom(a, b).face(k, s, i) })
                }
                Atom::Gen(g) => atoms.extend(self.gens[k][g].faces[i].atoms.iter().copied()),
            }
        }
        self.normalize(k - 1, w.src, w.tgt, atoms)
    }

    pub fn degen(&self, k: usize, w: &Word, j: usize) -> Word {
        let atoms = w.atoms.iter().map(|atom| match *atom {
            Atom::Base { a, b, s } => Atom::Base { a, b, s: self.base.hom(a, b).degen(k, s, j).expect("below bound") },
            Atom::Ext { a, b, s } => {
                let h = &self.amalgam.as_ref().expect("amalgam").cat;
                Atom::Ext { a, b, s: h.hom(a, b).degen(k, s, j).expect("below bound") }
            }
            Atom::Gen(g) => Atom::Gen(self.gens[k][g].degens[j]),
        });
        self.normalize(k + 1, w.src, w.tgt, atoms)
    }

    /// Non-identity atoms of dimension k leaving each object, in atom order.
    fn atoms_from(&self, k: usize) -> Vec<Vec<Atom>> {
        let n = self.num_objects();
        let mut out = vec![Vec::new(); n];
        let nb = self.base.num_objects();
        for a in 0..nb {
            for b in 0..nb {
                for s in 0..self.base.hom(a, b).len(k) {
                    if !self.base.is_identity(a, b, k, s) {
                        out[a].push(Atom::Base { a, b, s });
                    }
                }
            }
        }
        if let Some(am) = &self.amalgam {
            let m = am.cat.num_objects();
            for a in 0..m {
                for b in 0..m {
                    for s in 0..am.cat.hom(a, b).len(k) {
                        if !am.cat.is_identity(a, b, k, s) {
                            out[am.ob_map[a]].push(Atom::Ext { a, b, s });
                        }
                    }
                }
            }
        }
        for (g, cell) in self.gens[k].iter().enumerate() {
            out[cell.src].push(Atom::Gen(g));
        }
        for list in &mut out {
            list.sort();
        }
        out
    }

    /// Enumerates all normal words and tabulates the resulting category.
    pub fn build(&self, budget: &Budget) -> Result<FreeResult> {
        let d = self.dim_bound();
        let n = self.num_objects();
        let mut meter = Meter::new(budget.max_steps);
        let exceeded = |what: String| Error::BudgetExceeded(what);
        let mut words: Vec<Vec<Vec<Word>>> = vec![vec![Vec::new(); d + 1]; n * n];
        for k in 0..=d {
            let out = self.atoms_from(k);
            for a in 0..n {
                let mut frontier = vec![Word { src: a, tgt: a, atoms: Vec::new() }];
                words[a * n + a][k].push(frontier[0].clone());
                let mut len = 0;
                while !frontier.is_empty() {
                    let mut next = Vec::new();
                    for w in &frontier {
                        let last = w.atoms.last().map(factor);
                        for atom in &out[w.tgt] {
                            let f = factor(atom);
                            if last == Some(f) && f != Factor::Free {
                                continue;
                            }
                            if !meter.tick() {
                                return Err(exceeded("step cap reached during word enumeration".into()));
                            }
                            let (_, b) = self.atom_ends(k, atom);
                            let mut atoms = w.atoms.clone();
                            atoms.push(*atom);
                            next.push(Word { src: a, tgt: b, atoms });
                        }
                    }
                    if !next.is_empty() && len == budget.max_words {
                        return Err(exceeded(format!(
                            "words longer than {} from object {a} in dimension {k}",
                            budget.max_words
                        )));
                    }
                    for w in &next {
                        words[a * n + w.tgt][k].push(w.clone());
                    }
                    frontier = next;
                    len += 1;
                }
            }
        }
        let index: Vec<Vec<HashMap<Word, usize>>> = words
            .iter()
            .map(|per| per.iter().map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()).collect())
            .collect();
        let find = |k: usize, w: &Word| -> Result<usize> {
            index[w.src * n + w.tgt][k]
                .get(w)
                .copied()
                .ok_or_else(|| Error::InvalidCategory(format!("word {w:?} missing in dimension {k}")))
        };
        let mut homs = Vec::with_capacity(n * n);
        for (pair, per) in words.iter().enumerate() {
            let mut faces = vec![Vec::new(); d + 1];
            let mut degens = vec![Vec::new(); d + 1];
            for k in 0..=d {
                for w in &per[k] {
                    faces[k].push(if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k).map(|i| find(k - 1, &self.face(k, w, i))).collect::<Result<Vec<_>>>()?
                    });
                    degens[k].push(if k == d {
                        Vec::new()
                    } else {
                        (0..=k).map(|j| find(k + 1, &self.degen(k, w, j))).collect::<Result<Vec<_>>>()?
                    });
                }
            }
            let h = SimplicialSet::from_tables(d, faces, degens)
                .map_err(|e| Error::InvalidCategory(format!("hom {pair}: {e}")))?;
            homs.push(Arc::new(h));
        }
        let mut objects = self.base.objects().to_vec();
        objects.extend(self.new_objects.iter().cloned());
        let ids = (0..n).map(|a| find(0, &Word { src: a, tgt: a, atoms: Vec::new() })).collect::<Result<Vec<_>>>()?;
        let mut compose = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut tables = Vec::with_capacity(d + 1);
                    for k in 0..=d {
                        let (fs, gs) = (&words[a * n + b][k], &words[b * n + c][k]);
                        let mut t = Vec::with_capacity(fs.len() * gs.len());
                        for g in gs {
                            for f in fs {
                                t.push(find(k, &self.concat(k, f, g))?);
                            }
                        }
                        tables.push(t);
                    }
                    compose.push(tables);
                }
            }
        }
        let category = Arc::new(SimplicialCategory::new_unchecked(objects, d, homs, compose, ids));
        Ok(FreeResult { category, words, index })
    }
}

impl FreeResult {
    /// The inclusion of the base category.
    pub fn from_base(&self, ext: &Extension) -> Result<SFunctor> {
        let base = &ext.base;
        let nb = base.num_objects();
        let hom_maps = (0..nb * nb)
            .map(|p| {
                let (a, b) = (p / nb, p % nb);
                let h = base.hom(a, b);
                (0..=h.dim_bound())
                    .map(|k| {
                        (0..h.len(k))
                            .map(|s| {
                                let w = ext.normalize(k, a, b, [Atom::Base { a, b, s }]);
                                self.lookup(k, &w).expect("base word present")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SFunctor::from_data(base.clone(), self.category.clone(), FunctorData { ob_map: (0..nb).collect(), hom_maps })
    }

    /// The inclusion of the amalgamated category.
    pub fn from_amalgam(&self, ext: &Extension) -> Result<SFunctor> {
        let am = ext.amalgam.as_ref().ok_or_else(|| Error::Mismatch("no amalgamated category".into()))?;
        let m = am.cat.num_objects();
        let hom_maps = (0..m * m)
            .map(|p| {
                let (a, b) = (p / m, p % m);
                let h = am.cat.hom(a, b);
                (0..=h.dim_bound())
                    .map(|k| {
                        (0..h.len(k))
                            .map(|s| {
                                let w = ext.normalize(k, am.ob_map[a], am.ob_map[b], [Atom::Ext { a, b, s }]);
                                self.lookup(k, &w).expect("amalgam word present")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SFunctor::from_data(am.cat.clone(), self.category.clone(), FunctorData { ob_map: am.ob_map.clone(), hom_maps })
    }

    /// The functor out of the extension determined by an object map and
    /// images of atoms; composites go to composites.
    pub fn induced(
        &self,
        ext: &Extension,
        target: Arc<SimplicialCategory>,
        ob_map: Vec<usize>,
        atom_image: impl Fn(usize, &Atom) -> usize,
    ) -> Result<SFunctor> {
        let n = self.category.num_objects();
        let mut hom_maps = Vec::with_capacity(n * n);
        for p in 0..n * n {
            let per = &self.words[p];
            let mut assign = Vec::with_capacity(per.len());
            for (k, ws) in per.iter().enumerate() {
                let mut row = Vec::with_capacity(ws.len());
                for w in ws {
                    let mut cur = target.id_k(ob_map[w.src], k);
                    let mut at = ob_map[w.src];
                    for atom in &w.atoms {
                        let (_, b) = ext.atom_ends(k, atom);
                        cur = target.compose(k, ob_map[w.src], at, ob_map[b], atom_image(k, atom), cur);
                        at = ob_map[b];
                    }
                    row.push(cur);
                }
                assign.push(row);
            }
            hom_maps.push(assign);
        }
        SFunctor::from_data(self.category.clone(), target, FunctorData { ob_map, hom_maps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::basic::*;
    use crate::sset::standard::*;

    fn arrow(d: usize) -> Arc<SimplicialCategory> {
        functor_u(Arc::new(point(d))).unwrap()
    }

    fn point_gen(src: usize, tgt: usize, d: usize) -> Vec<Vec<GenCell>> {
        // A vertex generator with its degeneracies, one per dimension.
        (0..=d)
            .map(|k| {
                vec![GenCell {
                    src,
                    tgt,
                    faces: if k == 0 {
                        vec![]
                    } else {
                        vec![Word { src, tgt, atoms: vec![Atom::Gen(0)] }; k + 1]
                    },
                    degens: if k == d { vec![] } else { vec![0; k + 1] },
                }]
            })
            .collect()
    }

    #[test]
    fn no_generators_reproduces_base() {
        let c = arrow(2);
        let ext = Extension { base: c.clone(), new_objects: vec![], amalgam: None, gens: vec![vec![]; 3] };
        let r = ext.build(&Budget::default()).unwrap();
        assert!(r.category.validate().is_empty());
        let inc = r.from_base(&ext).unwrap();
        assert!(inc.hom_maps().iter().all(|m| m.is_isomorphism()));
    }

    #[test]
    fn parallel_generator_stabilizes() {
        // A second arrow x → y: no composites, Hom(x,y) becomes two points.
        let ext = Extension { base: arrow(2), new_objects: vec![], amalgam: None, gens: point_gen(0, 1, 2) };
        let r = ext.build(&Budget::default()).unwrap();
        assert!(r.category.validate().is_empty());
        assert_eq!(r.category.hom(0, 1).len(0), 2);
        assert_eq!(r.category.hom(1, 0).len(0), 0);
    }

    #[test]
    fn backward_generator_never_stabilizes() {
        let ext = Extension { base: arrow(2), new_objects: vec![], amalgam: None, gens: point_gen(1, 0, 2) };
        let e = ext.build(&Budget::new(4, 16, 1_000_000)).unwrap_err();
        assert!(e.to_string().contains("longer than 16"), "{e}");
        assert!(matches!(e, Error::BudgetExceeded(_)), "{e:?}");
    }

    #[test]
    fn amalgamating_a_category() {
        // Glue U(Δ[0]) to {x} along x: Hom(x, y') gains one arrow.
        let s = singleton_cat(2);
        let ext = Extension {
            base: s,
            new_objects: vec!["y".into()],
            amalgam: Some(Amalgam { cat: arrow(2), ob_map: vec![0, 1] }),
            gens: vec![vec![]; 3],
        };
        let r = ext.build(&Budget::default()).unwrap();
        assert!(r.category.validate().is_empty());
        assert_eq!(r.category.hom(0, 1).len(0), 1);
        r.from_amalgam(&ext).unwrap();
        r.from_base(&ext).unwrap();
    }
}
