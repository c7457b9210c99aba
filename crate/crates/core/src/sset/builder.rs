use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ops;
use super::{SimplexRecord, SimplicialSet};
use crate::error::{Error, Result};

/// Stable name of a simplex while a simplicial set is under construction:
/// a nondegenerate base (by dimension and insertion rank) plus a normal-form
/// degeneracy word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexKey {
    pub base_dim: usize,
    pub base: usize,
    pub word: Vec<usize>,
}

impl SimplexKey {
    pub fn dim(&self) -> usize {
        self.base_dim + self.word.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_empty()
    }
}

/// Incremental construction from nondegenerate simplices; all degeneracies up
/// to the bound are materialized by [`SSetBuilder::build`].
#[derive(Debug, Clone)]
pub struct SSetBuilder {
    dim_bound: usize,
    nondeg: Vec<Vec<Vec<SimplexKey>>>,
}

impl SSetBuilder {
    pub fn new(dim_bound: usize) -> Self {
        SSetBuilder { dim_bound, nondeg: vec![Vec::new(); dim_bound + 1] }
    }

    /// Reopens an existing set; returns the builder and the key of every simplex.
    pub fn from_set(x: &SimplicialSet) -> (Self, Vec<Vec<SimplexKey>>) {
        let d = x.dim_bound();
        let mut rank = vec![vec![usize::MAX; 0]; d + 1];
        for k in 0..=d {
            rank[k] = vec![usize::MAX; x.len(k)];
            for (r, i) in x.nondegenerate(k).enumerate() {
                rank[k][i] = r;
            }
        }
        let key_of = |k: usize, i: usize| {
            let dc = x.decomp(k, i);
            let bd = k - dc.word.len();
            SimplexKey { base_dim: bd, base: rank[bd][dc.base], word: dc.word.clone() }
        };
        let keys: Vec<Vec<SimplexKey>> =
            (0..=d).map(|k| (0..x.len(k)).map(|i| key_of(k, i)).collect()).collect();
        let mut b = SSetBuilder::new(d);
        for k in 0..=d {
            for i in x.nondegenerate(k) {
                let faces = if k == 0 {
                    Vec::new()
                } else {
                    x.faces(k, i).iter().map(|&f| keys[k - 1][f].clone()).collect()
                };
                b.nondeg[k].push(faces);
            }
        }
        (b, keys)
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn nondegenerate_count(&self, k: usize) -> usize {
        self.nondeg.get(k).map_or(0, Vec::len)
    }

    pub fn nondegenerate_key(&self, k: usize, rank: usize) -> SimplexKey {
        SimplexKey { base_dim: k, base: rank, word: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> SimplexKey {
        self.nondeg[0].push(Vec::new());
        SimplexKey { base_dim: 0, base: self.nondeg[0].len() - 1, word: Vec::new() }
    }

    /// Adds a nondegenerate simplex with the given faces `d_0, …, d_k`.
    pub fn add_simplex(&mut self, faces: Vec<SimplexKey>) -> Result<SimplexKey> {
        let k = faces.len().checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| {
            Error::OutOfRange("a simplex of positive dimension needs at least two faces".into())
        })?;
        if k > self.dim_bound {
            return Err(Error::OutOfRange(format!("dimension {k} above bound {}", self.dim_bound)));
        }
        for f in &faces {
            if f.dim() != k - 1 || f.base >= self.nondegenerate_count(f.base_dim) {
                return Err(Error::OutOfRange(format!("face {f:?} is not a known {}-simplex", k - 1)));
            }
        }
        self.nondeg[k].push(faces);
        Ok(SimplexKey { base_dim: k, base: self.nondeg[k].len() - 1, word: Vec::new() })
    }

    pub fn degenerate(&self, key: &SimplexKey, j: usize) -> SimplexKey {
        SimplexKey {
            base_dim: key.base_dim,
            base: key.base,
            word: ops::push_degeneracy(key.dim(), &key.word, j),
        }
    }

    pub fn face(&self, key: &SimplexKey, i: usize) -> SimplexKey {
        let k = key.dim();
        if key.word.is_empty() {
            return self.nondeg[k][key.base][i].clone();
        }
        let sigma = ops::surjection_of_word(k, &key.word);
        let (image, rho) = ops::epi_mono(&ops::after_face(&sigma, i));
        let mut cur = SimplexKey { base_dim: key.base_dim, base: key.base, word: Vec::new() };
        for p in (0..=key.base_dim).rev() {
            if image.binary_search(&p).is_err() {
                cur = self.face(&cur, p);
            }
        }
        let tau = ops::surjection_of_word(cur.dim(), &cur.word);
        SimplexKey {
            base_dim: cur.base_dim,
            base: cur.base,
            word: ops::word_of_surjection(&ops::compose(&tau, &rho)),
        }
    }

    /// Every key of dimension `k` in canonical order: nondegenerate first, then
    /// degenerate ones by descending base dimension, base rank, word.
    fn keys_in_dim(&self, k: usize) -> Vec<SimplexKey> {
        let mut out: Vec<SimplexKey> = (0..self.nondeg[k].len())
            .map(|b| SimplexKey { base_dim: k, base: b, word: Vec::new() })
            .collect();
        for m in (0..k).rev() {
            let ws = ops::words(k, k - m);
            for b in 0..self.nondeg[m].len() {
                for w in &ws {
                    out.push(SimplexKey { base_dim: m, base: b, word: w.clone() });
                }
            }
        }
        out
    }

    pub fn build(&self) -> SimplicialSet {
        self.build_with_index().0
    }

    /// Builds the set and returns, per dimension, the index of every key.
    pub fn build_with_index(&self) -> (SimplicialSet, Vec<HashMap<SimplexKey, usize>>) {
        let d = self.dim_bound;
        let keys: Vec<Vec<SimplexKey>> = (0..=d).map(|k| self.keys_in_dim(k)).collect();
        let index: Vec<HashMap<SimplexKey, usize>> = keys
            .iter()
            .map(|ks| ks.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
            .collect();
        let mut dims = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut recs = Vec::with_capacity(keys[k].len());
            for key in &keys[k] {
                let faces = if k == 0 {
                    Vec::new()
                } else {
                    (0..=k).map(|i| index[k - 1][&self.face(key, i)]).collect()
                };
                let degens = if k < d {
                    (0..=k).map(|j| index[k + 1][&self.degenerate(key, j)]).collect()
                } else {
                    Vec::new()
                };
                let base = index[key.base_dim][&SimplexKey {
                    base_dim: key.base_dim,
                    base: key.base,
                    word: Vec::new(),
                }];
                recs.push(SimplexRecord {
                    faces,
                    degens,
                    nondeg: key.word.is_empty(),
                    decomp: super::Decomp { base, word: key.word.clone() },
                });
            }
            dims.push(recs);
        }
        (SimplicialSet::from_records(d, dims), index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reopen_and_rebuild_is_identity() {
        let x = crate::sset::standard::horn(3, 1, 3).unwrap();
        let (b, keys) = SSetBuilder::from_set(&x);
        let (y, index) = b.build_with_index();
        assert_eq!(x, y);
        for k in 0..=3 {
            for (i, key) in keys[k].iter().enumerate() {
                assert_eq!(index[k][key], i);
            }
        }
    }

    #[test]
    fn degenerate_faces_follow_identities() {
        let mut b = SSetBuilder::new(3);
        let v0 = b.add_vertex();
        let v1 = b.add_vertex();
        let e = b.add_simplex(vec![v1, v0.clone()]).unwrap();
        let s = b.degenerate(&e, 0);
        assert_eq!(b.face(&s, 0), e);
        assert_eq!(b.face(&s, 1), e);
        assert_eq!(b.face(&s, 2), b.degenerate(&v0, 0));
    }
}
