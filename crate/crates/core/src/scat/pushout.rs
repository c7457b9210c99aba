//! Pushouts along the generating shapes φ → {x}, U(X) → U(Y), {x} → H.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::basic::{empty_cat, functor_u, functor_u_map, singleton_cat};
use super::free::{Amalgam, Atom, Extension, FreeResult, GenCell, Word};
use super::{SFunctor, SimplicialCategory};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::sset::SSetMap;
use crate::verdict::FunctorData;

/// A generating map to push out along.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Attachment {
    /// φ → {x}.
    NewObject,
    /// U(i) for a monomorphism `i: X → Y`.
    Cell { inclusion: SSetMap },
    /// {x} → H, with `x` the first object of a two-object H.
    A2 { h: Arc<SimplicialCategory> },
}

impl Attachment {
    /// The generating functor itself, source to target.
    pub fn functor(&self, dim_bound: usize) -> Result<SFunctor> {
        match self {
            Attachment::NewObject => Ok(super::basic::from_empty(singleton_cat(dim_bound))),
            Attachment::Cell { inclusion } => {
                if !inclusion.is_injective() {
                    return Err(Error::UnsupportedAttachment("cell attachment along a non-injective map".into()));
                }
                functor_u_map(inclusion, functor_u(inclusion.source().clone())?, functor_u(inclusion.target().clone())?)
            }
            Attachment::A2 { h } => {
                if h.num_objects() != 2 {
                    return Err(Error::UnsupportedAttachment("A2 target must have two objects".into()));
                }
                let s = singleton_cat(h.dim_bound());
                let data = FunctorData { ob_map: vec![0], hom_maps: vec![vec![vec![h.id(0)]; h.dim_bound() + 1]] };
                let data = FunctorData {
                    hom_maps: vec![(0..=h.dim_bound()).map(|k| vec![h.id_k(0, k)]).collect()],
                    ..data
                };
                SFunctor::from_data(s, h.clone(), data)
            }
        }
    }

    pub fn source(&self, dim_bound: usize) -> Result<Arc<SimplicialCategory>> {
        Ok(match self {
            Attachment::NewObject => empty_cat(dim_bound),
            Attachment::Cell { inclusion } => functor_u(inclusion.source().clone())?,
            Attachment::A2 { h } => singleton_cat(h.dim_bound()),
        })
    }
}

/// The pushout `D` of `C ← source → target`, exact (closure stabilized).
#[derive(Debug, Clone)]
pub struct Pushout {
    pub category: Arc<SimplicialCategory>,
    pub from_base: SFunctor,
    pub from_attachment: SFunctor,
    /// New generator simplices of `D`: (source object, target object, dimension, simplex).
    pub generators: Vec<(usize, usize, usize, usize)>,
    pub stabilized: bool,
    ext: Extension,
    free: FreeResult,
    attachment: Attachment,
    /// Simplex of `Y` behind each generator, per dimension.
    gen_simplex: Vec<Vec<usize>>,
}

pub fn pushout_generating(
    c: &Arc<SimplicialCategory>,
    attach: &Attachment,
    glue: &SFunctor,
    budget: &Budget,
) -> Result<Pushout> {
    let d = c.dim_bound();
    if glue.target().as_ref() != c.as_ref() {
        return Err(Error::Mismatch("glue functor does not land in the category".into()));
    }
    if glue.source().as_ref() != attach.source(d)?.as_ref() {
        return Err(Error::Mismatch("glue functor does not start at the attachment source".into()));
    }
    let attach_functor = attach.functor(d)?;
    let mut gen_simplex = vec![Vec::new(); d + 1];
    let ext = match attach {
        Attachment::NewObject => Extension {
            base: c.clone(),
            new_objects: vec![format!("x{}", c.num_objects())],
            amalgam: None,
            gens: vec![Vec::new(); d + 1],
        },
        Attachment::A2 { h } => Extension {
            base: c.clone(),
            new_objects: vec![h.objects()[1].clone()],
            amalgam: Some(Amalgam { cat: h.clone(), ob_map: vec![glue.ob(0), c.num_objects()] }),
            gens: vec![Vec::new(); d + 1],
        },
        Attachment::Cell { inclusion } => {
            let (a, b) = (glue.ob(0), glue.ob(1));
            let x_map = glue.hom_map(0, 1);
            let y = inclusion.target();
            let mut preimage: Vec<Vec<Option<usize>>> = (0..=d).map(|k| vec![None; y.len(k)]).collect();
            for k in 0..=d {
                for s in 0..inclusion.source().len(k) {
                    preimage[k][inclusion.apply(k, s)] = Some(s);
                }
            }
            let mut gen_of: Vec<Vec<Option<usize>>> = (0..=d).map(|k| vec![None; y.len(k)]).collect();
            for k in 0..=d {
                for t in 0..y.len(k) {
                    if preimage[k][t].is_none() {
                        gen_of[k][t] = Some(gen_simplex[k].len());
                        gen_simplex[k].push(t);
                    }
                }
            }
            let mut gens = vec![Vec::new(); d + 1];
            for k in 0..=d {
                for &t in &gen_simplex[k] {
                    let faces = if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k)
                            .map(|i| {
                                let f = y.face(k, t, i);
                                let atoms = match (preimage[k - 1][f], gen_of[k - 1][f]) {
                                    (Some(x), _) => vec![Atom::Base { a, b, s: x_map.apply(k - 1, x) }],
                                    (None, Some(g)) => vec![Atom::Gen(g)],
                                    _ => unreachable!(),
                                };
                                Word { src: a, tgt: b, atoms }
                            })
                            .collect()
                    };
                    let degens = if k == d {
                        Vec::new()
                    } else {
                        (0..=k)
                            .map(|j| gen_of[k + 1][y.degen(k, t, j).unwrap()].expect("degeneracies of new simplices are new"))
                            .collect()
                    };
                    gens[k].push(GenCell { src: a, tgt: b, faces, degens });
                }
            }
            Extension { base: c.clone(), new_objects: Vec::new(), amalgam: None, gens }
        }
    };
    // Normalize generator faces once so that identities vanish.
    let mut ext = ext;
    for k in 1..=d {
        for g in 0..ext.gens[k].len() {
            let faces: Vec<Word> =
                ext.gens[k][g].faces.iter().map(|w| ext.normalize(k - 1, w.src, w.tgt, w.atoms.clone())).collect();
            ext.gens[k][g].faces = faces;
        }
    }
    let free = ext.build(budget)?;
    let from_base = free.from_base(&ext)?;
    let from_attachment = match attach {
        Attachment::NewObject => {
            let s = singleton_cat(d);
            let n = c.num_objects();
            SFunctor::from_data(
                s,
                free.category.clone(),
                FunctorData { ob_map: vec![n], hom_maps: vec![(0..=d).map(|k| vec![free.category.id_k(n, k)]).collect()] },
            )?
        }
        Attachment::A2 { .. } => free.from_amalgam(&ext)?,
        Attachment::Cell { inclusion } => {
            let (a, b) = (glue.ob(0), glue.ob(1));
            let uy = attach_functor.target().clone();
            let y = inclusion.target();
            let mut preimage: Vec<Vec<Option<usize>>> = (0..=d).map(|k| vec![None; y.len(k)]).collect();
            for k in 0..=d {
                for s in 0..inclusion.source().len(k) {
                    preimage[k][inclusion.apply(k, s)] = Some(s);
                }
            }
            let xy: Vec<Vec<usize>> = (0..=d)
                .map(|k| {
                    let mut gi = 0;
                    (0..y.len(k))
                        .map(|t| {
                            let w = match preimage[k][t] {
                                Some(x) => ext.normalize(k, a, b, [Atom::Base { a, b, s: glue.apply(k, 0, 1, x) }]),
                                None => {
                                    gi += 1;
                                    Word { src: a, tgt: b, atoms: vec![Atom::Gen(gi - 1)] }
                                }
                            };
                            free.lookup(k, &w).expect("word present")
                        })
                        .collect()
                })
                .collect();
            let dcat = &free.category;
            let ident = |o: usize| (0..=d).map(|k| vec![dcat.id_k(o, k)]).collect::<Vec<_>>();
            let data = FunctorData {
                ob_map: vec![a, b],
                hom_maps: vec![ident(a), xy, vec![Vec::new(); d + 1], ident(b)],
            };
            SFunctor::from_data(uy, free.category.clone(), data)?
        }
    };
    let n = free.category.num_objects();
    let mut generators = Vec::new();
    for k in 0..=d {
        for (g, cell) in ext.gens[k].iter().enumerate() {
            let w = Word { src: cell.src, tgt: cell.tgt, atoms: vec![Atom::Gen(g)] };
            generators.push((cell.src, cell.tgt, k, free.lookup(k, &w).expect("generator present")));
        }
    }
    if let Attachment::A2 { h } = attach {
        let m = &ext.amalgam.as_ref().unwrap().ob_map;
        for a in 0..2 {
            for b in 0..2 {
                for k in 0..=d {
                    for s in 0..h.hom(a, b).len(k) {
                        if !h.is_identity(a, b, k, s) {
                            let t = from_attachment.apply(k, a, b, s);
                            generators.push((m[a], m[b], k, t));
                        }
                    }
                }
            }
        }
    }
    debug_assert!(generators.iter().all(|&(a, b, _, _)| a < n && b < n));
    let base_then = from_base.after(glue)?;
    let att_then = from_attachment.after(&attach_functor)?;
    if base_then != att_then {
        return Err(Error::InvalidCategory("pushout square does not commute".into()));
    }
    Ok(Pushout {
        category: free.category.clone(),
        from_base,
        from_attachment,
        generators,
        stabilized: true,
        ext,
        free,
        attachment: attach.clone(),
        gen_simplex,
    })
}

impl Pushout {
    /// The map `D → E` induced by a cocone `(u: C → E, v: target → E)`.
    pub fn induced(&self, u: &SFunctor, v: &SFunctor, glue: &SFunctor) -> Result<SFunctor> {
        let e = u.target().clone();
        if v.target().as_ref() != e.as_ref() {
            return Err(Error::Mismatch("cocone legs have different targets".into()));
        }
        let attach_functor = self.attachment.functor(self.category.dim_bound())?;
        if u.after(glue)? != v.after(&attach_functor)? {
            return Err(Error::NonCommutingSquare("cocone does not commute with the span".into()));
        }
        let nc = self.ext.base.num_objects();
        let mut ob_map: Vec<usize> = (0..nc).map(|a| u.ob(a)).collect();
        match &self.attachment {
            Attachment::NewObject => ob_map.push(v.ob(0)),
            Attachment::A2 { .. } => ob_map.push(v.ob(1)),
            Attachment::Cell { .. } => {}
        }
        self.free.induced(&self.ext, e, ob_map, |k, atom| match *atom {
            Atom::Base { a, b, s } => u.apply(k, a, b, s),
            Atom::Ext { a, b, s } => v.apply(k, a, b, s),
            Atom::Gen(g) => v.apply(k, 0, 1, self.gen_simplex[k][g]),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::basic::*;
    use crate::sset::standard::*;

    #[test]
    fn horn_pushout_adds_one_two_simplex() {
        let d = 2;
        let i = horn_inclusion(2, 1, d).unwrap();
        let ud = functor_u(i.target().clone()).unwrap();
        let uh = functor_u(i.source().clone()).unwrap();
        let glue = functor_u_map(&i, uh, ud.clone()).unwrap();
        let p = pushout_generating(&ud, &Attachment::Cell { inclusion: i.clone() }, &glue, &Budget::default()).unwrap();
        assert!(p.category.validate().is_empty());
        let before = ud.hom(0, 1).count_nondegenerate();
        assert_eq!(p.category.hom(0, 1).count_nondegenerate(), before + 2);
        assert_eq!(p.category.hom(0, 1).nondegenerate(2).count(), 2);
        assert_eq!(p.category.hom(1, 0).len(0), 0);
    }

    #[test]
    fn new_object_is_coproduct() {
        let c = functor_u(std::sync::Arc::new(point(2))).unwrap();
        let glue = from_empty(c.clone());
        let p = pushout_generating(&c, &Attachment::NewObject, &glue, &Budget::default()).unwrap();
        let (sum, _) = coproduct(&[c.clone(), singleton_cat(2)]).unwrap();
        assert_eq!(p.category.num_objects(), 3);
        assert_eq!(p.category.homs(), sum.homs());
    }

    #[test]
    fn a2_along_identity_is_h() {
        let h = functor_u(std::sync::Arc::new(standard_simplex(1, 2).unwrap())).unwrap();
        let s = singleton_cat(2);
        let att = Attachment::A2 { h: h.clone() };
        let glue = SFunctor::identity(s.clone());
        let p = pushout_generating(&s, &att, &glue, &Budget::default()).unwrap();
        assert_eq!(p.category.homs(), h.homs());
        let back = p.induced(&att.functor(2).unwrap(), &SFunctor::identity(h.clone()), &glue).unwrap();
        assert!(back.hom_maps().iter().all(SSetMap::is_isomorphism));
    }
}
