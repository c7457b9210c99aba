//! Integer homology of the normalized chain complex.

use serde::{Deserialize, Serialize};

use super::snf::{narrow, smith_normal_form, Int, IntMatrix};
use crate::error::{Error, Result};
use crate::sset::{SSetMap, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Nondegenerate k-simplices and their positions in the chain basis.
pub fn chain_basis(x: &SimplicialSet, k: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let basis: Vec<usize> = x.nondegenerate(k).collect();
    let mut pos = vec![None; x.len(k)];
    for (i, &s) in basis.iter().enumerate() {
        pos[s] = Some(i);
    }
    (basis, pos)
}

/// ∂_k : C_k → C_{k-1}, columns indexed by nondegenerate k-simplices.
pub fn boundary_matrix(x: &SimplicialSet, k: usize) -> IntMatrix {
    let (cols, _) = chain_basis(x, k);
    if k == 0 {
        return IntMatrix::zeros(0, cols.len());
    }
    let (rows, pos) = chain_basis(x, k - 1);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (j, &s) in cols.iter().enumerate() {
        for i in 0..=k {
            if let Some(r) = pos[x.face(k, s, i)] {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(r, j, m.get(r, j) + sign);
            }
        }
    }
    m
}

fn check_degree(x: &SimplicialSet, k: usize) -> Result<()> {
    if k >= x.dim_bound() {
        return Err(Error::DimensionBound { degree: k, dim_bound: x.dim_bound() });
    }
    Ok(())
}

/// H_k(X; ℤ) for `k < dim_bound`.
pub fn homology(x: &SimplicialSet, k: usize) -> Result<HomologyGroup> {
    check_degree(x, k)?;
    let dk = boundary_matrix(x, k);
    let dk1 = boundary_matrix(x, k + 1);
    if dk.rows() > 0 && dk1.cols() > 0 {
        assert!(dk.mul(&dk1).is_zero(), "∂∘∂ ≠ 0 in degree {}", k + 1);
    }
    let rank_k = smith_normal_form(&dk).rank();
    let snf = smith_normal_form(&dk1);
    let factors = snf.invariant_factors();
    Ok(HomologyGroup {
        betti: dk.cols() - rank_k - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).map(narrow).collect(),
    })
}

/// Reduced homology: H̃_0 drops one free summand for a nonempty set.
pub fn reduced_homology(x: &SimplicialSet, k: usize) -> Result<HomologyGroup> {
    let mut h = homology(x, k)?;
    if k == 0 && x.len(0) > 0 {
        h.betti -= 1;
    }
    Ok(h)
}

/// Matrix of f_* : C_k(X) → C_k(Y) on normalized chains.
pub fn chain_map_matrix(f: &SSetMap, k: usize) -> IntMatrix {
    let (src, _) = chain_basis(f.source(), k);
    let (tgt, pos) = chain_basis(f.target(), k);
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (j, &s) in src.iter().enumerate() {
        if let Some(r) = pos[f.apply(k, s)] {
            m.set(r, j, 1);
        }
    }
    m
}

/// Whether f_* : H_k(X) → H_k(Y) is (injective, surjective).
pub fn induced_on_homology(f: &SSetMap, k: usize) -> Result<(bool, bool)> {
    check_degree(f.source(), k)?;
    let (x, y) = (f.source(), f.target());
    let zx: Vec<Vec<Int>> = smith_normal_form(&boundary_matrix(x, k)).kernel_basis();
    let zy: Vec<Vec<Int>> = smith_normal_form(&boundary_matrix(y, k)).kernel_basis();
    let fk = chain_map_matrix(f, k);
    let ny = fk.rows();
    let f_zx = IntMatrix::from_columns(ny, &zx.iter().map(|z| fk.mul_vec(z)).collect::<Vec<_>>());
    let by = boundary_matrix(y, k + 1);
    let bx = boundary_matrix(x, k + 1);

    let span = smith_normal_form(&f_zx.hcat(&by));
    let surjective = zy.iter().all(|z| span.solve(z).is_some());

    let mut neg_by = by.clone();
    for i in 0..neg_by.rows() {
        for j in 0..neg_by.cols() {
            neg_by.set(i, j, -by.get(i, j));
        }
    }
    let pairs = smith_normal_form(&f_zx.hcat(&neg_by)).kernel_basis();
    let nx = bx.rows();
    let bx_snf = smith_normal_form(&bx);
    let injective = pairs.iter().all(|v| {
        let mut cycle = vec![0 as Int; nx];
        for (a, z) in v.iter().zip(&zx) {
            for (c, &zi) in cycle.iter_mut().zip(z) {
                *c += a * zi;
            }
        }
        bx_snf.solve(&cycle).is_some()
    });
    Ok((injective, surjective))
}
