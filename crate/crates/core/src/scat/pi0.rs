//! The category of components and homotopy equivalences.

use std::sync::Arc;

use super::{SFunctor, SimplicialCategory};
use crate::cat::{FiniteCategory, FiniteFunctor};
use crate::error::{Error, Result};
use crate::sset::homotopy::{pi0, Components};

/// π₀ of every hom complex, indexed `a * n + b`.
pub fn hom_components(c: &SimplicialCategory) -> Vec<Components> {
    c.homs().iter().map(|h| pi0(h)).collect()
}

/// Morphisms are components of hom complexes; composition is induced from
/// 0-simplices and checked to be independent of representatives.
pub fn pi0_category(c: &SimplicialCategory) -> Result<FiniteCategory> {
    let n = c.num_objects();
    let comps = hom_components(c);
    let sizes = comps.iter().map(Components::count).collect();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                let (ab, bc, ac) = (&comps[a * n + b], &comps[b * n + cc], &comps[a * n + cc]);
                for g in 0..c.hom(b, cc).len(0) {
                    for f in 0..c.hom(a, b).len(0) {
                        let rep = c.compose(0, a, b, cc, bc.classes[bc.label[g]][0], ab.classes[ab.label[f]][0]);
                        if ac.label[c.compose(0, a, b, cc, g, f)] != ac.label[rep] {
                            return Err(Error::InvalidCategory(format!(
                                "π₀ composition depends on representatives on ({a},{b},{cc})"
                            )));
                        }
                    }
                }
            }
        }
    }
    let ids = (0..n).map(|a| comps[a * n + a].label[c.id(a)]).collect();
    FiniteCategory::from_fn(c.objects().to_vec(), sizes, ids, |a, b, cc, g, f| {
        let (ab, bc, ac) = (&comps[a * n + b], &comps[b * n + cc], &comps[a * n + cc]);
        ac.label[c.compose(0, a, b, cc, bc.classes[g][0], ab.classes[f][0])]
    })
}

pub fn pi0_functor(f: &SFunctor) -> Result<FiniteFunctor> {
    let (s, t) = (f.source(), f.target());
    let (cs, ct) = (hom_components(s), hom_components(t));
    let n = s.num_objects();
    let m = t.num_objects();
    let hom_maps = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            let tc = &ct[f.ob(a) * m + f.ob(b)];
            cs[i].classes.iter().map(|cl| tc.label[f.apply(0, a, b, cl[0])]).collect()
        })
        .collect();
    FiniteFunctor::new(
        Arc::new(pi0_category(s)?),
        Arc::new(pi0_category(t)?),
        f.ob_map().to_vec(),
        hom_maps,
    )
}

/// Whether a 0-simplex `e ∈ Hom(a,b)_0` becomes invertible in π₀.
pub fn is_homotopy_equivalence(c: &SimplicialCategory, a: usize, b: usize, e: usize) -> Result<bool> {
    let n = c.num_objects();
    if a >= n || b >= n {
        return Err(Error::UnknownObject(a.max(b)));
    }
    if e >= c.hom(a, b).len(0) {
        return Err(Error::NotAZeroSimplex(format!("{e} is not a 0-simplex of Hom({a},{b})")));
    }
    let p = pi0_category(c)?;
    let label = pi0(c.hom(a, b)).label[e];
    Ok(p.is_isomorphism(a, b, label)?.is_some())
}

/// Homotopy-equivalence flags for every 0-simplex of every hom, given π₀ data.
pub(crate) fn equivalence_flags(c: &SimplicialCategory) -> Result<Vec<Vec<bool>>> {
    let n = c.num_objects();
    let p = pi0_category(c)?;
    let comps = hom_components(c);
    Ok((0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            let iso: Vec<bool> = (0..comps[i].count())
                .map(|m| p.is_isomorphism(a, b, m).ok().flatten().is_some())
                .collect();
            comps[i].label.iter().map(|&l| iso[l]).collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::basic::functor_u;
    use crate::sset::standard::*;

    #[test]
    fn components_of_u() {
        let u = functor_u(Arc::new(standard_simplex(1, 2).unwrap())).unwrap();
        let p = pi0_category(&u).unwrap();
        assert_eq!((p.hom_size(0, 1), p.hom_size(1, 0)), (1, 0));
        let u2 = functor_u(Arc::new(boundary(1, 2).unwrap())).unwrap();
        assert_eq!(pi0_category(&u2).unwrap().hom_size(0, 1), 2);
        assert!(is_homotopy_equivalence(&u, 0, 0, 0).unwrap());
        assert!(!is_homotopy_equivalence(&u, 0, 1, 0).unwrap());
        assert!(is_homotopy_equivalence(&u, 0, 1, 9).is_err());
    }

    #[test]
    fn functoriality_on_identity() {
        let u = functor_u(Arc::new(horn(2, 0, 2).unwrap())).unwrap();
        let f = pi0_functor(&SFunctor::identity(u.clone())).unwrap();
        assert_eq!(f, FiniteFunctor::identity(Arc::new(pi0_category(&u).unwrap())));
    }
}
