//! U, φ, {x}, coproducts, full subcategories, object doubling, pullbacks.

use std::sync::Arc;

use super::{SFunctor, SimplicialCategory};
use crate::error::{Error, Result};
use crate::sset::standard::{fiber_product, point};
use crate::sset::{SSetMap, SimplicialSet};
use crate::verdict::FunctorData;

/// Two objects `x`, `y` with `Hom(x,y) = X` and nothing else but identities.
pub fn functor_u(x: Arc<SimplicialSet>) -> Result<Arc<SimplicialCategory>> {
    x.ensure_valid()?;
    let d = x.dim_bound();
    let pt = Arc::new(point(d));
    let empty = Arc::new(SimplicialSet::empty(d));
    let homs = vec![pt.clone(), x, empty, pt];
    let c = SimplicialCategory::from_fn(vec!["x".into(), "y".into()], d, homs, vec![0, 0], |_, a, b, c, g, f| {
        if a == b {
            g
        } else if b == c {
            f
        } else {
            unreachable!("Hom(y,x) is empty")
        }
    })?;
    Ok(Arc::new(c))
}

/// `U(g)` for a map `g: X → Y`, between the given images of U.
pub fn functor_u_map(g: &SSetMap, ux: Arc<SimplicialCategory>, uy: Arc<SimplicialCategory>) -> Result<SFunctor> {
    if ux.hom(0, 1).as_ref() != g.source().as_ref() || uy.hom(0, 1).as_ref() != g.target().as_ref() {
        return Err(Error::Mismatch("U(g) endpoints do not match g".into()));
    }
    let id = |c: &SimplicialCategory, a: usize, b: usize| SSetMap::identity(c.hom(a, b).clone()).assignment().clone();
    let data = FunctorData {
        ob_map: vec![0, 1],
        hom_maps: vec![id(&ux, 0, 0), g.assignment().clone(), id(&ux, 1, 0), id(&ux, 1, 1)],
    };
    SFunctor::from_data(ux, uy, data)
}

/// Builds `U(X) → U(Y)` from `g: X → Y`.
pub fn u_of_map(g: &SSetMap) -> Result<SFunctor> {
    functor_u_map(g, functor_u(g.source().clone())?, functor_u(g.target().clone())?)
}

pub fn empty_cat(dim_bound: usize) -> Arc<SimplicialCategory> {
    Arc::new(SimplicialCategory::new_unchecked(Vec::new(), dim_bound, Vec::new(), Vec::new(), Vec::new()))
}

/// One object, only the identity and its degeneracies.
pub fn singleton_cat(dim_bound: usize) -> Arc<SimplicialCategory> {
    singleton_named("x", dim_bound)
}

pub fn singleton_named(name: &str, dim_bound: usize) -> Arc<SimplicialCategory> {
    let pt = Arc::new(point(dim_bound));
    Arc::new(
        SimplicialCategory::from_fn(vec![name.into()], dim_bound, vec![pt], vec![0], |_, _, _, _, _, _| 0)
            .expect("valid"),
    )
}

/// The unique functor out of the empty category.
pub fn from_empty(target: Arc<SimplicialCategory>) -> SFunctor {
    let d = target.dim_bound();
    SFunctor::from_data_unchecked(empty_cat(d), target, FunctorData { ob_map: vec![], hom_maps: vec![] })
        .expect("empty data")
}

/// Disjoint union with its summand inclusions. Cross homs are empty.
pub fn coproduct(parts: &[Arc<SimplicialCategory>]) -> Result<(Arc<SimplicialCategory>, Vec<SFunctor>)> {
    let Some(first) = parts.first() else {
        return Err(Error::Mismatch("coproduct of an empty list needs a dim_bound; use empty_cat".into()));
    };
    let d = first.dim_bound();
    if parts.iter().any(|p| p.dim_bound() != d) {
        return Err(Error::Mismatch("summands have different dim_bound".into()));
    }
    let mut owner = Vec::new();
    let mut objects = Vec::new();
    for (pi, p) in parts.iter().enumerate() {
        for (a, name) in p.objects().iter().enumerate() {
            owner.push((pi, a));
            objects.push(name.clone());
        }
    }
    let n = objects.len();
    let empty = Arc::new(SimplicialSet::empty(d));
    let homs = (0..n * n)
        .map(|i| {
            let ((p, a), (q, b)) = (owner[i / n], owner[i % n]);
            if p == q {
                parts[p].hom(a, b).clone()
            } else {
                empty.clone()
            }
        })
        .collect();
    let ids = owner.iter().map(|&(p, a)| parts[p].id(a)).collect();
    let sum = Arc::new(SimplicialCategory::from_fn(objects, d, homs, ids, |k, a, b, c, g, f| {
        let (p, (a, b, c)) = (owner[a].0, (owner[a].1, owner[b].1, owner[c].1));
        parts[p].compose(k, a, b, c, g, f)
    })?);
    let mut offset = 0;
    let mut incs = Vec::with_capacity(parts.len());
    for p in parts {
        let m = p.num_objects();
        let ob_map = (offset..offset + m).collect();
        let hom_maps = (0..m * m).map(|i| SSetMap::identity(p.hom(i / m, i % m).clone()).assignment().clone()).collect();
        incs.push(SFunctor::from_data(p.clone(), sum.clone(), FunctorData { ob_map, hom_maps })?);
        offset += m;
    }
    Ok((sum, incs))
}

/// Full subcategory on `objs` (in the given order) with its inclusion.
pub fn full_subcategory(d: &Arc<SimplicialCategory>, objs: &[usize]) -> Result<(Arc<SimplicialCategory>, SFunctor)> {
    if let Some(&o) = objs.iter().find(|&&o| o >= d.num_objects()) {
        return Err(Error::UnknownObject(o));
    }
    let mut seen = objs.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != objs.len() {
        return Err(Error::Mismatch("repeated object in subcategory".into()));
    }
    let m = objs.len();
    let homs = (0..m * m).map(|i| d.hom(objs[i / m], objs[i % m]).clone()).collect();
    let ids = objs.iter().map(|&o| d.id(o)).collect();
    let names = objs.iter().map(|&o| d.objects()[o].clone()).collect();
    let sub = Arc::new(SimplicialCategory::from_fn(names, d.dim_bound(), homs, ids, |k, a, b, c, g, f| {
        d.compose(k, objs[a], objs[b], objs[c], g, f)
    })?);
    let hom_maps = (0..m * m).map(|i| SSetMap::identity(sub.homs()[i].clone()).assignment().clone()).collect();
    let inc = SFunctor::from_data(sub.clone(), d.clone(), FunctorData { ob_map: objs.to_vec(), hom_maps })?;
    Ok((sub, inc))
}

/// Two copies `a`, `a'` of an object, every hom equal to `Hom(a,a)`, with the
/// collapse functor back onto `a`.
pub fn double_object(d: &Arc<SimplicialCategory>, a: usize) -> Result<(Arc<SimplicialCategory>, SFunctor)> {
    if a >= d.num_objects() {
        return Err(Error::UnknownObject(a));
    }
    let h = d.hom(a, a).clone();
    let name = &d.objects()[a];
    let doubled = Arc::new(SimplicialCategory::from_fn(
        vec![name.clone(), format!("{name}'")],
        d.dim_bound(),
        vec![h.clone(); 4],
        vec![d.id(a); 2],
        |k, _, _, _, g, f| d.compose(k, a, a, a, g, f),
    )?);
    let id = SSetMap::identity(h).assignment().clone();
    let collapse =
        SFunctor::from_data(doubled.clone(), d.clone(), FunctorData { ob_map: vec![a, a], hom_maps: vec![id; 4] })?;
    Ok((doubled, collapse))
}

/// `B ×_D C` for `f: B → D`, `h: C → D`, with both projections.
pub fn pullback(f: &SFunctor, h: &SFunctor) -> Result<(Arc<SimplicialCategory>, SFunctor, SFunctor)> {
    if f.target().as_ref() != h.target().as_ref() {
        return Err(Error::Mismatch("pullback legs have different targets".into()));
    }
    let (b, c) = (f.source(), h.source());
    let mut objs = Vec::new();
    for x in 0..b.num_objects() {
        for y in 0..c.num_objects() {
            if f.ob(x) == h.ob(y) {
                objs.push((x, y));
            }
        }
    }
    let m = objs.len();
    let mut homs = Vec::with_capacity(m * m);
    let mut pairs = Vec::with_capacity(m * m);
    let mut pr1 = Vec::with_capacity(m * m);
    let mut pr2 = Vec::with_capacity(m * m);
    for i in 0..m * m {
        let ((x, y), (x2, y2)) = (objs[i / m], objs[i % m]);
        let (p1, p2, pr) = fiber_product(f.hom_map(x, x2), h.hom_map(y, y2))?;
        homs.push(p1.source().clone());
        pr1.push(p1.assignment().clone());
        pr2.push(p2.assignment().clone());
        pairs.push(pr);
    }
    let index: Vec<Vec<std::collections::HashMap<(usize, usize), usize>>> = pairs
        .iter()
        .map(|levels| levels.iter().map(|l| l.iter().enumerate().map(|(i, &p)| (p, i)).collect()).collect())
        .collect();
    let ids = objs
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| index[i * m + i][0][&(b.id(x), c.id(y))])
        .collect();
    let names = objs.iter().map(|&(x, y)| format!("({},{})", b.objects()[x], c.objects()[y])).collect();
    let pb = Arc::new(SimplicialCategory::from_fn(names, b.dim_bound(), homs, ids, |k, p, q, r, g, fs| {
        let ((x, y), (x2, y2), (x3, y3)) = (objs[p], objs[q], objs[r]);
        let (g1, g2) = pairs[q * m + r][k][g];
        let (f1, f2) = pairs[p * m + q][k][fs];
        let s = b.compose(k, x, x2, x3, g1, f1);
        let t = c.compose(k, y, y2, y3, g2, f2);
        index[p * m + r][k][&(s, t)]
    })?);
    let first = SFunctor::from_data(
        pb.clone(),
        b.clone(),
        FunctorData { ob_map: objs.iter().map(|&(x, _)| x).collect(), hom_maps: pr1 },
    )?;
    let second = SFunctor::from_data(
        pb.clone(),
        c.clone(),
        FunctorData { ob_map: objs.iter().map(|&(_, y)| y).collect(), hom_maps: pr2 },
    )?;
    Ok((pb, first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard::*;

    fn codiscrete(n: usize, d: usize) -> Arc<SimplicialCategory> {
        let pt = Arc::new(point(d));
        Arc::new(
            SimplicialCategory::from_fn(
                (0..n).map(|i| format!("o{i}")).collect(),
                d,
                vec![pt; n * n],
                vec![0; n],
                |_, _, _, _, _, _| 0,
            )
            .unwrap(),
        )
    }

    #[test]
    fn u_examples() {
        let u0 = functor_u(Arc::new(point(3))).unwrap();
        assert!(u0.validate().is_empty());
        assert_eq!(u0.hom(0, 1).len(0), 1);
        assert_eq!(u0.hom(1, 0).len(0), 0);
        let u1 = functor_u(Arc::new(boundary(1, 3).unwrap())).unwrap();
        assert_eq!(u1.hom(0, 1).len(0), 2);
        let i = horn_inclusion(2, 1, 3).unwrap();
        let ui = u_of_map(&i).unwrap();
        assert_eq!(ui.hom_map(0, 1), &i);
    }

    #[test]
    fn u_preserves_composition() {
        let i = horn_inclusion(2, 1, 3).unwrap();
        let c = SSetMap::constant(i.target().clone(), Arc::new(point(3)), 0).unwrap();
        let ci = c.after(&i).unwrap();
        let (uh, ud, up) = (
            functor_u(i.source().clone()).unwrap(),
            functor_u(i.target().clone()).unwrap(),
            functor_u(c.target().clone()).unwrap(),
        );
        let lhs = functor_u_map(&ci, uh.clone(), up.clone()).unwrap();
        let rhs = functor_u_map(&c, ud.clone(), up).unwrap().after(&functor_u_map(&i, uh, ud).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn small_categories() {
        assert_eq!(empty_cat(2).num_objects(), 0);
        let s = singleton_cat(2);
        assert!(s.validate().is_empty());
        let (xy, incs) = coproduct(&[s.clone(), singleton_named("y", 2)]).unwrap();
        assert_eq!(xy.num_objects(), 2);
        assert_eq!(xy.hom(0, 1).len(0), 0);
        assert_eq!(incs.len(), 2);
        let (same, _) = coproduct(&[s.clone(), empty_cat(2)]).unwrap();
        assert_eq!(same.as_ref(), s.as_ref());
    }

    #[test]
    fn subcategories_and_doubling() {
        let c3 = codiscrete(3, 2);
        let (c2, inc) = full_subcategory(&c3, &[0, 2]).unwrap();
        assert_eq!(c2.num_objects(), 2);
        inc.validate().unwrap();
        let (all, _) = full_subcategory(&c3, &[0, 1, 2]).unwrap();
        assert_eq!(all.as_ref(), c3.as_ref());
        let u = functor_u(Arc::new(standard_simplex(1, 2).unwrap())).unwrap();
        let (x, _) = full_subcategory(&u, &[0]).unwrap();
        assert_eq!(x.as_ref(), singleton_cat(2).as_ref());
        assert!(matches!(full_subcategory(&u, &[4]), Err(Error::UnknownObject(4))));

        let (dd, collapse) = double_object(&singleton_cat(2), 0).unwrap();
        assert!(dd.validate().is_empty());
        assert_eq!(dd.homs().iter().map(|h| h.len(0)).collect::<Vec<_>>(), vec![1; 4]);
        collapse.validate().unwrap();
    }

    #[test]
    fn pullbacks() {
        let u = functor_u(Arc::new(horn(2, 1, 2).unwrap())).unwrap();
        let id = SFunctor::identity(u.clone());
        let (pb, p1, p2) = pullback(&id, &id).unwrap();
        assert_eq!(pb.num_objects(), 2);
        assert!(p1.hom_maps().iter().all(SSetMap::is_isomorphism));
        assert_eq!(id.after(&p1).unwrap(), id.after(&p2).unwrap());
    }
}
