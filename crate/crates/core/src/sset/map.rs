use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SimplicialSet;
use crate::error::{Error, Result};
use crate::verdict::Assignment;

/// A simplicial map, stored as the image of every simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assign: Assignment,
}

impl SSetMap {
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, assign: Assignment) -> Result<Self> {
        let f = SSetMap { source, target, assign };
        f.validate()?;
        Ok(f)
    }

    pub fn new_unchecked(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, assign: Assignment) -> Self {
        SSetMap { source, target, assign }
    }

    /// Extends images of nondegenerate simplices to the whole source.
    pub fn from_nondegenerate(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        image: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let assign = extend_nondegenerate(&source, &target, image)?;
        Self::new(source, target, assign)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let assign = (0..=x.dim_bound()).map(|k| (0..x.len(k)).collect()).collect();
        SSetMap { source: x.clone(), target: x, assign }
    }

    /// Constant map onto a vertex of the target.
    pub fn constant(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, v: usize) -> Result<Self> {
        let assign = (0..=source.dim_bound())
            .map(|k| vec![target.constant(v, k); source.len(k)])
            .collect();
        Self::new(source, target, assign)
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assign
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.assign[k][x]
    }

    /// `self` after `inner`.
    pub fn after(&self, inner: &SSetMap) -> Result<SSetMap> {
        if inner.target.as_ref() != self.source.as_ref() {
            return Err(Error::Mismatch("composable maps must share the middle object".into()));
        }
        let assign = inner
            .assign
            .iter()
            .enumerate()
            .map(|(k, row)| row.iter().map(|&y| self.assign[k][y]).collect())
            .collect();
        Ok(SSetMap { source: inner.source.clone(), target: self.target.clone(), assign })
    }

    pub fn validate(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        let d = x.dim_bound();
        if y.dim_bound() != d {
            return Err(Error::InvalidMap(format!("dim_bound {} vs {}", d, y.dim_bound())));
        }
        if self.assign.len() != d + 1 {
            return Err(Error::InvalidMap("assignment depth differs from dim_bound + 1".into()));
        }
        for k in 0..=d {
            if self.assign[k].len() != x.len(k) {
                return Err(Error::InvalidMap(format!("assignment in dim {k} has wrong length")));
            }
            if let Some(&bad) = self.assign[k].iter().find(|&&t| t >= y.len(k)) {
                return Err(Error::InvalidMap(format!("image {bad} in dim {k} out of range")));
            }
        }
        for k in 0..=d {
            for s in 0..x.len(k) {
                let fs = self.assign[k][s];
                if k > 0 {
                    for i in 0..=k {
                        if self.assign[k - 1][x.face(k, s, i)] != y.face(k, fs, i) {
                            return Err(Error::InvalidMap(format!("d_{i} not preserved at simplex {s} in dim {k}")));
                        }
                    }
                }
                if k < d {
                    for j in 0..=k {
                        if self.assign[k + 1][x.degen(k, s, j).unwrap()] != y.degen(k, fs, j).unwrap() {
                            return Err(Error::InvalidMap(format!("s_{j} not preserved at simplex {s} in dim {k}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.assign.iter().all(|row| {
            let mut seen = row.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        })
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.assign.len()).all(|k| {
            let mut hit = vec![false; self.target.len(k)];
            for &t in &self.assign[k] {
                hit[t] = true;
            }
            hit.into_iter().all(|h| h)
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Assignment determined by images of nondegenerate simplices; degenerate
/// simplices follow their decompositions. Face compatibility is not checked.
pub fn extend_nondegenerate(
    source: &SimplicialSet,
    target: &SimplicialSet,
    image: impl Fn(usize, usize) -> usize,
) -> Result<Assignment> {
    let d = source.dim_bound();
    let mut assign: Assignment = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut row = Vec::with_capacity(source.len(k));
        for s in 0..source.len(k) {
            let dec = source.decomp(k, s);
            let t = if dec.word.is_empty() {
                image(k, s)
            } else {
                let base_dim = k - dec.word.len();
                let b = assign[base_dim][dec.base];
                target
                    .apply_word(base_dim, b, &dec.word)
                    .ok_or_else(|| Error::InvalidMap("degeneracy beyond target bound".into()))?
            };
            if t >= target.len(k) {
                return Err(Error::InvalidMap(format!("image {t} in dim {k} out of range")));
            }
            row.push(t);
        }
        assign.push(row);
    }
    Ok(assign)
}

#[cfg(test)]
mod tests {
    use super::super::standard::*;
    use super::*;

    #[test]
    fn identity_and_composition() {
        let x = Arc::new(standard_simplex(2, 3).unwrap());
        let id = SSetMap::identity(x.clone());
        id.validate().unwrap();
        assert!(id.is_isomorphism());
        let p = Arc::new(point(3));
        let c = SSetMap::constant(x.clone(), p.clone(), 0).unwrap();
        assert_eq!(c.after(&id).unwrap(), c);
    }

    #[test]
    fn face_violation_is_rejected() {
        let x = Arc::new(standard_simplex(1, 1).unwrap());
        let mut assign = SSetMap::identity(x.clone()).assignment().clone();
        assign[0].swap(0, 1);
        assert!(SSetMap::new(x.clone(), x, assign).is_err());
    }

    #[test]
    fn nondegenerate_extension_matches_identity() {
        let x = Arc::new(horn(3, 1, 3).unwrap());
        let f = SSetMap::from_nondegenerate(x.clone(), x.clone(), |_, s| s).unwrap();
        assert_eq!(f, SSetMap::identity(x));
    }
}
