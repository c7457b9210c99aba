//! Finite, dimension-bounded simplicial sets.

pub mod builder;
pub mod homotopy;
pub mod lifting;
pub mod map;
pub mod ops;
pub mod search;
pub mod standard;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builder::{SSetBuilder, SimplexKey};
pub use map::SSetMap;

/// Canonical Eilenberg–Zilber decomposition: `word` applied to the
/// nondegenerate simplex `base` of dimension `k - word.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomp {
    pub base: usize,
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexRecord {
    pub faces: Vec<usize>,
    pub degens: Vec<usize>,
    pub nondeg: bool,
    pub decomp: Decomp,
}

/// A simplicial set truncated at `dim_bound`; every simplex up to that
/// dimension is stored, degenerate ones included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSet {
    dim_bound: usize,
    dims: Vec<Vec<SimplexRecord>>,
}

/// One failed invariant, naming the simplex and the identity that broke.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub dim: usize,
    pub simplex: usize,
    pub identity: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "simplex {} in dimension {}: {}", self.simplex, self.dim, self.identity)
    }
}

impl SimplicialSet {
    pub fn empty(dim_bound: usize) -> Self {
        SimplicialSet { dim_bound, dims: vec![Vec::new(); dim_bound + 1] }
    }

    /// Raw constructor for deserialized data; run [`SimplicialSet::validate`] before trusting it.
    pub fn from_records(dim_bound: usize, dims: Vec<Vec<SimplexRecord>>) -> Self {
        SimplicialSet { dim_bound, dims }
    }

    pub fn records(&self) -> &[Vec<SimplexRecord>] {
        &self.dims
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    /// Number of k-simplices (zero above the bound).
    pub fn len(&self, k: usize) -> usize {
        self.dims.get(k).map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len(0) == 0
    }

    pub fn face(&self, k: usize, x: usize, i: usize) -> usize {
        self.dims[k][x].faces[i]
    }

    pub fn faces(&self, k: usize, x: usize) -> &[usize] {
        &self.dims[k][x].faces
    }

    /// `s_j x`, or `None` at the top dimension.
    pub fn degen(&self, k: usize, x: usize, j: usize) -> Option<usize> {
        self.dims[k][x].degens.get(j).copied()
    }

    pub fn is_nondegenerate(&self, k: usize, x: usize) -> bool {
        self.dims[k][x].nondeg
    }

    pub fn decomp(&self, k: usize, x: usize) -> &Decomp {
        &self.dims[k][x].decomp
    }

    pub fn nondegenerate(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.dims
            .get(k)
            .into_iter()
            .flat_map(|d| d.iter().enumerate().filter(|(_, r)| r.nondeg).map(|(i, _)| i))
    }

    pub fn count_nondegenerate(&self) -> usize {
        (0..=self.dim_bound).map(|k| self.nondegenerate(k).count()).sum()
    }

    /// Highest dimension holding a nondegenerate simplex.
    pub fn top_dimension(&self) -> Option<usize> {
        (0..=self.dim_bound).rev().find(|&k| self.nondegenerate(k).next().is_some())
    }

    /// Applies a normal-form degeneracy word to a `k`-simplex.
    pub fn apply_word(&self, k: usize, x: usize, word: &[usize]) -> Option<usize> {
        let mut cur = x;
        for (dim, &j) in (k..).zip(word.iter().rev()) {
            cur = self.degen(dim, cur, j)?;
        }
        Some(cur)
    }

    /// Vertex `i` of a `k`-simplex.
    pub fn vertex(&self, k: usize, x: usize, i: usize) -> usize {
        let mut cur = x;
        let mut dim = k;
        while dim > i {
            cur = self.face(dim, cur, dim);
            dim -= 1;
        }
        while dim > 0 {
            cur = self.face(dim, cur, 0);
            dim -= 1;
        }
        cur
    }

    /// Source and target vertex of an edge.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        (self.face(1, e, 1), self.face(1, e, 0))
    }

    /// Iterated degeneracy `s_0^k` of a vertex.
    pub fn constant(&self, v: usize, k: usize) -> usize {
        let mut cur = v;
        for dim in 0..k {
            cur = self.degen(dim, cur, 0).expect("within bound");
        }
        cur
    }

    /// Builds a simplicial set from face and degeneracy tables alone, deriving
    /// the nondegenerate flags and Eilenberg–Zilber decompositions.
    pub fn from_tables(
        dim_bound: usize,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if faces.len() != dim_bound + 1 || degens.len() != dim_bound + 1 {
            return Err(Error::Mismatch("table depth differs from dim_bound + 1".into()));
        }
        let mut dims: Vec<Vec<SimplexRecord>> = Vec::with_capacity(dim_bound + 1);
        for k in 0..=dim_bound {
            let n = faces[k].len();
            if degens[k].len() != n {
                return Err(Error::Mismatch(format!("face/degeneracy count differs in dim {k}")));
            }
            let mut recs: Vec<SimplexRecord> = (0..n)
                .map(|x| SimplexRecord {
                    faces: faces[k][x].clone(),
                    degens: degens[k][x].clone(),
                    nondeg: true,
                    decomp: Decomp { base: x, word: Vec::new() },
                })
                .collect();
            if k > 0 {
                for (y, rec) in dims[k - 1].iter().enumerate() {
                    for (j, &z) in rec.degens.iter().enumerate() {
                        if z >= n {
                            return Err(Error::Mismatch(format!(
                                "degeneracy s_{j} of simplex {y} in dim {} out of range",
                                k - 1
                            )));
                        }
                        if recs[z].nondeg {
                            recs[z].nondeg = false;
                            recs[z].decomp = Decomp {
                                base: rec.decomp.base,
                                word: ops::push_degeneracy(k - 1, &rec.decomp.word, j),
                            };
                        }
                    }
                }
            }
            dims.push(recs);
        }
        Ok(SimplicialSet { dim_bound, dims })
    }

    /// Checks every structural invariant; empty result means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let v = |dim, simplex, identity: String| Violation { dim, simplex, identity };
        if self.dims.len() != self.dim_bound + 1 {
            out.push(v(0, 0, format!("expected {} dimension levels", self.dim_bound + 1)));
            return out;
        }
        // Shape and ranges first; later checks index freely.
        for k in 0..=self.dim_bound {
            let below = if k > 0 { self.len(k - 1) } else { 0 };
            let above = if k < self.dim_bound { self.len(k + 1) } else { 0 };
            for (x, r) in self.dims[k].iter().enumerate() {
                let nf = if k == 0 { 0 } else { k + 1 };
                if r.faces.len() != nf || r.faces.iter().any(|&f| f >= below) {
                    out.push(v(k, x, "face list has wrong length or index out of range".into()));
                }
                let nd = if k < self.dim_bound { k + 1 } else { 0 };
                if r.degens.len() != nd || r.degens.iter().any(|&s| s >= above) {
                    out.push(v(k, x, "degeneracy list has wrong length or index out of range".into()));
                }
                let bd = k.checked_sub(r.decomp.word.len());
                match bd {
                    Some(bd) if r.decomp.base < self.len(bd) => {}
                    _ => out.push(v(k, x, "decomposition out of range".into())),
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for k in 0..=self.dim_bound {
            for x in 0..self.len(k) {
                let r = &self.dims[k][x];
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            let lhs = self.face(k - 1, r.faces[j], i);
                            let rhs = self.face(k - 1, r.faces[i], j - 1);
                            if lhs != rhs {
                                out.push(v(k, x, format!("d_{i} d_{j} != d_{} d_{i}", j - 1)));
                            }
                        }
                    }
                }
                if k < self.dim_bound {
                    for j in 0..=k {
                        let s = r.degens[j];
                        for i in 0..=k + 1 {
                            let lhs = self.face(k + 1, s, i);
                            let (rhs, name) = if i == j || i == j + 1 {
                                (x, format!("d_{i} s_{j} != id"))
                            } else if i < j {
                                (self.degen(k - 1, r.faces[i], j - 1).unwrap(), format!("d_{i} s_{j} != s_{} d_{i}", j - 1))
                            } else {
                                (self.degen(k - 1, r.faces[i - 1], j).unwrap(), format!("d_{i} s_{j} != s_{j} d_{}", i - 1))
                            };
                            if lhs != rhs {
                                out.push(v(k, x, name));
                            }
                        }
                        if k + 2 <= self.dim_bound {
                            for i in 0..=j {
                                let lhs = self.degen(k + 1, self.degen(k, x, j).unwrap(), i).unwrap();
                                let rhs = self.degen(k + 1, self.degen(k, x, i).unwrap(), j + 1).unwrap();
                                if lhs != rhs {
                                    out.push(v(k, x, format!("s_{i} s_{j} != s_{} s_{i}", j + 1)));
                                }
                            }
                        }
                    }
                }
            }
        }
        // Degeneracy flags and normal forms.
        for k in 0..=self.dim_bound {
            let mut image = vec![None; self.len(k)];
            if k > 0 {
                for r in &self.dims[k - 1] {
                    for (j, &z) in r.degens.iter().enumerate() {
                        let expect = Decomp { base: r.decomp.base, word: ops::push_degeneracy(k - 1, &r.decomp.word, j) };
                        match &image[z] {
                            None => image[z] = Some(expect),
                            Some(prev) if *prev != expect => {
                                out.push(v(k, z, "two distinct normal forms (Eilenberg-Zilber uniqueness)".into()))
                            }
                            _ => {}
                        }
                    }
                }
            }
            for (x, r) in self.dims[k].iter().enumerate() {
                match &image[x] {
                    None => {
                        if !r.nondeg || r.decomp.base != x || !r.decomp.word.is_empty() {
                            out.push(v(k, x, "not in the image of a degeneracy but not marked nondegenerate".into()));
                        }
                    }
                    Some(expect) => {
                        if r.nondeg {
                            out.push(v(k, x, "in the image of a degeneracy but marked nondegenerate".into()));
                        } else if r.decomp != *expect {
                            out.push(v(k, x, "stored decomposition differs from the normal form".into()));
                        } else {
                            let bd = k - r.decomp.word.len();
                            if !self.dims[bd][r.decomp.base].nondeg
                                || self.apply_word(bd, r.decomp.base, &r.decomp.word) != Some(x)
                            {
                                out.push(v(k, x, "decomposition does not reproduce the simplex".into()));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSimplicialSet(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;

    #[test]
    fn constructors_validate() {
        for n in 0..=4 {
            assert!(standard_simplex(n, 4).unwrap().validate().is_empty(), "Δ[{n}]");
            assert!(boundary(n, 4).unwrap().validate().is_empty(), "∂Δ[{n}]");
            for k in 0..=n {
                if n >= 1 {
                    assert!(horn(n, k, 4).unwrap().validate().is_empty(), "V[{n},{k}]");
                }
            }
        }
    }

    #[test]
    fn broken_face_identity_is_named() {
        // u -> v -> w with the long edge ending at w' != w.
        let mut b = SSetBuilder::new(2);
        let u = b.add_vertex();
        let vv = b.add_vertex();
        let w = b.add_vertex();
        let w2 = b.add_vertex();
        let e2 = b.add_simplex(vec![vv.clone(), u.clone()]).unwrap();
        let e0 = b.add_simplex(vec![w.clone(), vv]).unwrap();
        let e1 = b.add_simplex(vec![w2, u]).unwrap();
        b.add_simplex(vec![e0, e1, e2]).unwrap();
        let x = b.build();
        let viol = x.validate();
        assert_eq!(viol.len(), 1, "{viol:?}");
        assert_eq!(viol[0].dim, 2);
        assert_eq!(viol[0].identity, "d_0 d_1 != d_0 d_0");
    }

    #[test]
    fn from_tables_recovers_normal_forms() {
        let x = standard_simplex(2, 3).unwrap();
        let faces = x.records().iter().map(|d| d.iter().map(|r| r.faces.clone()).collect()).collect();
        let degens = x.records().iter().map(|d| d.iter().map(|r| r.degens.clone()).collect()).collect();
        let y = SimplicialSet::from_tables(3, faces, degens).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn serde_shape() {
        let x = standard_simplex(1, 1).unwrap();
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v["dim_bound"], 1);
        let r = &v["dims"][1][0];
        assert!(r["faces"].is_array() && r["degens"].is_array());
        assert!(r["nondeg"].is_boolean());
        assert!(r["decomp"]["base"].is_number() && r["decomp"]["word"].is_array());
    }
}
