//! Walking arrow, codiscrete groupoids, homotopy-equivalence subcategories,
//! cell attachments that kill π₀ and π₁ classes, and the H-building loop.

pub mod build;
pub mod kill;

pub use build::{build_h, replay, BuildOutcome, KillEntry, KillRecord};
pub use kill::{kill_pi0, kill_pi1, AttachedCell, KillResult};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scat::basic::functor_u;
use crate::scat::pi0::equivalence_flags;
use crate::scat::{SFunctor, SimplicialCategory};
use crate::sset::standard::{point, subcomplex};
use crate::sset::SSetMap;
use crate::verdict::FunctorData;

/// `x → y` with one nonidentity 0-simplex; equal to `U(Δ[0])`.
pub fn walking_arrow(dim_bound: usize) -> Arc<SimplicialCategory> {
    functor_u(Arc::new(point(dim_bound))).expect("point is valid")
}

pub(crate) fn object_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match (n, i) {
            (..=3, 0) => "x".to_string(),
            (..=3, 1) => "y".to_string(),
            (..=3, 2) => "z".to_string(),
            _ => format!("o{i}"),
        })
        .collect()
}

/// Exactly one morphism between any two objects in every dimension.
pub fn codiscrete_groupoid(n: usize, dim_bound: usize) -> Result<Arc<SimplicialCategory>> {
    if n == 0 {
        return Err(Error::OutOfRange("a codiscrete groupoid needs at least one object".into()));
    }
    let pt = Arc::new(point(dim_bound));
    let c = SimplicialCategory::from_fn(object_names(n), dim_bound, vec![pt; n * n], vec![0; n], |_, _, _, _, _, _| 0)?;
    Ok(Arc::new(c))
}

/// Keeps the simplices whose vertices are all homotopy equivalences.
pub fn homotopy_equivalence_subcategory(c: &Arc<SimplicialCategory>) -> Result<(Arc<SimplicialCategory>, SFunctor)> {
    let v = c.validate();
    if let Some(first) = v.first() {
        return Err(Error::InvalidCategory(format!("{first:?}")));
    }
    let n = c.num_objects();
    let d = c.dim_bound();
    let flags = equivalence_flags(c)?;
    let incs: Vec<SSetMap> = (0..n * n)
        .map(|p| {
            let h = c.hom(p / n, p % n);
            let keep: Vec<Vec<bool>> = (0..=d)
                .map(|k| (0..h.len(k)).map(|s| (0..=k).all(|i| flags[p][h.vertex(k, s, i)])).collect())
                .collect();
            subcomplex(h, &keep)
        })
        .collect::<Result<_>>()?;
    let back: Vec<Vec<Vec<usize>>> = incs
        .iter()
        .map(|m| {
            (0..=d)
                .map(|k| {
                    let mut inv = vec![usize::MAX; m.target().len(k)];
                    for (i, &s) in m.assignment()[k].iter().enumerate() {
                        inv[s] = i;
                    }
                    inv
                })
                .collect()
        })
        .collect();
    let homs = incs.iter().map(|m| m.source().clone()).collect();
    let ids = (0..n).map(|a| back[a * n + a][0][c.id(a)]).collect();
    let sub = SimplicialCategory::from_fn(c.objects().to_vec(), d, homs, ids, |k, a, b, cc, g, f| {
        let full = c.compose(k, a, b, cc, incs[b * n + cc].apply(k, g), incs[a * n + b].apply(k, f));
        back[a * n + cc][k][full]
    })?;
    let sub = Arc::new(sub);
    let data = FunctorData { ob_map: (0..n).collect(), hom_maps: incs.iter().map(|m| m.assignment().clone()).collect() };
    let inc = SFunctor::from_data(sub.clone(), c.clone(), data)?;
    Ok((sub, inc))
}
