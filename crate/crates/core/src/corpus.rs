//! Seeded random instances: small simplicial sets, a pool of small simplicial
//! categories, and functors between them.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{codiscrete_groupoid, object_names, walking_arrow};
use crate::error::{Error, Result};
use crate::scat::basic::{coproduct, double_object, functor_u, singleton_cat, u_of_map};
use crate::scat::search::all_functors;
use crate::scat::{SFunctor, SimplicialCategory};
use crate::sset::search::all_maps;
use crate::sset::standard::{boundary_inclusion, disjoint_union, point, standard_simplex, trivial_covering};
use crate::sset::{SSetBuilder, SSetMap, SimplicialSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCaps {
    pub max_objects: usize,
    pub dim_bound: usize,
    pub max_nondegenerate: usize,
}

impl Default for CorpusCaps {
    fn default() -> Self {
        CorpusCaps { max_objects: 3, dim_bound: 2, max_nondegenerate: 6 }
    }
}

impl CorpusCaps {
    pub fn check(&self) -> Result<()> {
        if self.max_objects == 0 || self.max_objects > 3 || self.dim_bound == 0 || self.dim_bound > 4 || self.max_nondegenerate == 0 || self.max_nondegenerate > 6 {
            return Err(Error::OutOfRange("corpus caps must lie within 3 objects, dim_bound 1..=4, 6 nondegenerate simplices".into()));
        }
        Ok(())
    }

    pub fn admits(&self, c: &SimplicialCategory) -> bool {
        c.num_objects() <= self.max_objects
            && c.dim_bound() == self.dim_bound
            && c.homs().iter().all(|h| h.count_nondegenerate() <= self.max_nondegenerate)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCategory {
    pub name: String,
    pub category: Arc<SimplicialCategory>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedFunctor {
    pub name: String,
    pub functor: SFunctor,
}

/// A random simplicial set with at most `max_nondeg` nondegenerate simplices,
/// none above dimension 2.
pub fn random_sset(rng: &mut impl Rng, dim_bound: usize, max_nondeg: usize) -> SimplicialSet {
    let mut b = SSetBuilder::new(dim_bound);
    let nv = rng.gen_range(1..=3.min(max_nondeg));
    let verts: Vec<_> = (0..nv).map(|_| b.add_vertex()).collect();
    let mut budget = max_nondeg - nv;
    let ne = if budget == 0 { 0 } else { rng.gen_range(0..=budget.min(4)) };
    let mut edges = Vec::new();
    for _ in 0..ne {
        let (s, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        if s == t && rng.gen_bool(0.7) {
            continue;
        }
        edges.push((s, t, b.add_simplex(vec![verts[t].clone(), verts[s].clone()]).expect("edge")));
        budget -= 1;
    }
    if dim_bound >= 2 {
        let mut all_edges: Vec<(usize, usize, crate::sset::SimplexKey)> = edges.clone();
        for (i, v) in verts.iter().enumerate() {
            all_edges.push((i, i, b.degenerate(v, 0)));
        }
        let tries = if budget == 0 { 0 } else { rng.gen_range(0..=budget.min(2)) };
        for _ in 0..tries {
            let (a, bb, e2) = all_edges[rng.gen_range(0..all_edges.len())].clone();
            let outs: Vec<_> = all_edges.iter().filter(|e| e.0 == bb).cloned().collect();
            let (_, c, e0) = outs[rng.gen_range(0..outs.len())].clone();
            let closes: Vec<_> = all_edges.iter().filter(|e| e.0 == a && e.1 == c).cloned().collect();
            let Some((_, _, e1)) = closes.choose(rng).cloned() else { continue };
            if e0.is_nondegenerate() || e1.is_nondegenerate() || e2.is_nondegenerate() {
                b.add_simplex(vec![e0, e1, e2]).expect("triangle");
            }
        }
    }
    b.build()
}

/// Discrete cyclic group `Z/n` on one object.
pub fn discrete_cyclic(n: usize, dim_bound: usize) -> Result<Arc<SimplicialCategory>> {
    let pts: Vec<_> = (0..n).map(|_| Arc::new(point(dim_bound))).collect();
    let (set, _) = disjoint_union(&pts)?;
    let c = SimplicialCategory::from_fn(vec!["x".into()], dim_bound, vec![set.clone()], vec![0], |k, _, _, _, g, f| {
        let per = set.len(k) / n;
        ((g / per + f / per) % n) * per
    })?;
    Ok(Arc::new(c))
}

/// One object with endomorphisms Δ[n], composed by vertexwise maximum.
pub fn max_monoid(n: usize, dim_bound: usize) -> Result<Arc<SimplicialCategory>> {
    let s = Arc::new(standard_simplex(n, dim_bound)?);
    let seqs: Vec<Vec<Vec<usize>>> =
        (0..=dim_bound).map(|k| (0..s.len(k)).map(|x| crate::sset::standard::vertex_sequence(&s, k, x)).collect()).collect();
    let c = SimplicialCategory::from_fn(vec!["x".into()], dim_bound, vec![s.clone()], vec![0], |k, _, _, _, g, f| {
        let m: Vec<usize> = seqs[k][g].iter().zip(&seqs[k][f]).map(|(a, b)| *a.max(b)).collect();
        seqs[k].iter().position(|q| *q == m).expect("monotone")
    })?;
    Ok(Arc::new(c))
}

/// `0 → 1 → … → n-1` with point homs upward and nothing downward.
pub fn linear_order(n: usize, dim_bound: usize) -> Result<Arc<SimplicialCategory>> {
    let pt = Arc::new(point(dim_bound));
    let empty = Arc::new(SimplicialSet::empty(dim_bound));
    let homs = (0..n * n).map(|p| if p / n <= p % n { pt.clone() } else { empty.clone() }).collect();
    Ok(Arc::new(SimplicialCategory::from_fn(object_names(n), dim_bound, homs, vec![0; n], |_, _, _, _, _, _| 0)?))
}

/// Fixed categories followed by `randoms` categories `U(X)` for random `X`.
pub fn category_pool(rng: &mut impl Rng, caps: &CorpusCaps, randoms: usize) -> Result<Vec<NamedCategory>> {
    caps.check()?;
    let d = caps.dim_bound;
    let s = singleton_cat(d);
    let z2 = discrete_cyclic(2, d)?;
    let m1 = max_monoid(1, d)?;
    let mut pool: Vec<(String, Arc<SimplicialCategory>)> = vec![
        ("singleton".into(), s.clone()),
        ("codiscrete2".into(), codiscrete_groupoid(2, d)?),
        ("codiscrete3".into(), codiscrete_groupoid(3, d)?),
        ("z2".into(), z2.clone()),
        ("z3".into(), discrete_cyclic(3, d)?),
        ("max1".into(), m1.clone()),
        ("arrow".into(), walking_arrow(d)),
        ("order3".into(), linear_order(3, d)?),
        ("u_simplex1".into(), functor_u(Arc::new(standard_simplex(1, d)?))?),
        ("u_boundary1".into(), functor_u(Arc::new(crate::sset::standard::boundary(1, d)?))?),
        ("two_points".into(), coproduct(&[s.clone(), s.clone()])?.0),
        ("point_plus_z2".into(), coproduct(&[s.clone(), z2.clone()])?.0),
        ("double_z2".into(), double_object(&z2, 0)?.0),
        ("double_max1".into(), double_object(&m1, 0)?.0),
    ];
    for i in 0..randoms {
        let x = random_sset(rng, d, caps.max_nondegenerate);
        pool.push((format!("u_random{i}"), functor_u(Arc::new(x))?));
    }
    Ok(pool
        .into_iter()
        .filter(|(_, c)| caps.admits(c))
        .map(|(name, category)| NamedCategory { name, category })
        .collect())
}

/// Structured functors that every corpus contains.
fn anchors(pool: &[NamedCategory], caps: &CorpusCaps) -> Result<Vec<NamedFunctor>> {
    let d = caps.dim_bound;
    let get = |n: &str| pool.iter().find(|c| c.name == n).map(|c| c.category.clone()).expect("fixed pool entry");
    let mut out = Vec::new();
    let mut push = |name: &str, functor: SFunctor| out.push(NamedFunctor { name: name.into(), functor });
    push("id_codiscrete2", SFunctor::identity(get("codiscrete2")));
    push("collapse_z2", double_object(&get("z2"), 0)?.1);
    push("collapse_max1", double_object(&get("max1"), 0)?.1);
    push("u_boundary_inclusion1", u_of_map(&boundary_inclusion(1, d)?)?);
    push("u_fold_simplex1", u_of_map(&trivial_covering(Arc::new(standard_simplex(1, d)?), 2)?)?);
    let into = |src: &str, tgt: &str| -> Result<SFunctor> {
        let fs = all_functors(&get(src), &get(tgt), 1_000_000).unwrap_or_default();
        fs.into_iter().next().ok_or_else(|| Error::Mismatch(format!("no functor {src} → {tgt}")))
    };
    push("point_into_codiscrete2", into("singleton", "codiscrete2")?);
    push("codiscrete3_to_point", into("codiscrete3", "singleton")?);
    push("z2_to_point", into("z2", "singleton")?);
    Ok(out)
}

/// The pool that `functor_corpus(seed, ..)` draws from.
pub fn seeded_pool(seed: u64, caps: &CorpusCaps) -> Result<Vec<NamedCategory>> {
    category_pool(&mut ChaCha8Rng::seed_from_u64(seed), caps, POOL_RANDOMS)
}

const POOL_RANDOMS: usize = 8;

/// `count` functors: the anchors, then seeded random picks among all functors
/// between random pool pairs, then `U` of random maps of random sets.
pub fn functor_corpus(seed: u64, count: usize, caps: &CorpusCaps) -> Result<Vec<NamedFunctor>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = category_pool(&mut rng, caps, POOL_RANDOMS)?;
    let mut out = anchors(&pool, caps)?;
    out.truncate(count);
    let mut attempt = 0;
    while out.len() < count {
        attempt += 1;
        if attempt > 50 * count + 100 {
            return Err(Error::BudgetExceeded("could not fill the corpus".into()));
        }
        if rng.gen_bool(0.3) {
            let x = Arc::new(random_sset(&mut rng, caps.dim_bound, caps.max_nondegenerate));
            let y = Arc::new(random_sset(&mut rng, caps.dim_bound, caps.max_nondegenerate));
            let Some(maps) = all_maps(&x, &y, 200_000) else { continue };
            let Some(m) = maps.choose(&mut rng) else { continue };
            let f = u_of_map(&SSetMap::new(x, y, m.clone())?)?;
            out.push(NamedFunctor { name: format!("u_map{}", out.len()), functor: f });
            continue;
        }
        let a = &pool[rng.gen_range(0..pool.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        let Some(fs) = all_functors(&a.category, &b.category, 200_000) else { continue };
        let Some(f) = fs.choose(&mut rng) else { continue };
        out.push(NamedFunctor { name: format!("{}_to_{}_{}", a.name, b.name, out.len()), functor: f.clone() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_is_valid_and_capped() {
        let caps = CorpusCaps::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in category_pool(&mut rng, &caps, 20).unwrap() {
            assert!(c.category.validate().is_empty(), "{}", c.name);
            assert!(caps.admits(&c.category));
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let caps = CorpusCaps::default();
        let a = functor_corpus(11, 40, &caps).unwrap();
        let b = functor_corpus(11, 40, &caps).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        for f in &a {
            f.functor.validate().unwrap();
        }
    }

    #[test]
    fn random_sets_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = random_sset(&mut rng, 2, 6);
            assert!(x.validate().is_empty());
            assert!(x.count_nondegenerate() <= 6);
        }
    }
}
