//! Δ[n], ∂Δ[n], V[n,k] and a few small combinators.

use std::collections::HashMap;
use std::sync::Arc;

use super::{SSetBuilder, SSetMap, SimplexKey, SimplicialSet};
use crate::error::{Error, Result};

/// Vertex sequence `(x_0, …, x_k)` of a simplex.
pub fn vertex_sequence(x: &SimplicialSet, k: usize, s: usize) -> Vec<usize> {
    (0..=k).map(|i| x.vertex(k, s, i)).collect()
}

/// Subcomplex of Δ[n] spanned by the vertex subsets accepted by `keep`.
/// `keep` must be closed under taking nonempty subsets.
fn simplex_subcomplex(n: usize, dim_bound: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
    let mut b = SSetBuilder::new(dim_bound);
    let mut keys: HashMap<Vec<usize>, SimplexKey> = HashMap::new();
    for size in 1..=(n + 1).min(dim_bound + 1) {
        for subset in subsets(n + 1, size) {
            if !keep(&subset) {
                continue;
            }
            let key = if size == 1 {
                b.add_vertex()
            } else {
                let faces = (0..size)
                    .map(|i| {
                        let mut f = subset.clone();
                        f.remove(i);
                        keys[&f].clone()
                    })
                    .collect();
                b.add_simplex(faces).expect("faces already present")
            };
            keys.insert(subset, key);
        }
    }
    b.build()
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn check_n(n: usize, dim_bound: usize) -> Result<()> {
    if n > dim_bound {
        return Err(Error::OutOfRange(format!("n = {n} exceeds dim_bound {dim_bound}")));
    }
    Ok(())
}

pub fn standard_simplex(n: usize, dim_bound: usize) -> Result<SimplicialSet> {
    check_n(n, dim_bound)?;
    Ok(simplex_subcomplex(n, dim_bound, |_| true))
}

pub fn boundary(n: usize, dim_bound: usize) -> Result<SimplicialSet> {
    check_n(n, dim_bound)?;
    Ok(simplex_subcomplex(n, dim_bound, |s| s.len() <= n))
}

/// V[n,k]: the boundary with the face opposite vertex k removed.
pub fn horn(n: usize, k: usize, dim_bound: usize) -> Result<SimplicialSet> {
    check_n(n, dim_bound)?;
    if n == 0 || k > n {
        return Err(Error::OutOfRange(format!("horn V[{n},{k}] needs n >= 1 and k <= n")));
    }
    Ok(simplex_subcomplex(n, dim_bound, |s| s.len() <= n && !(s.len() == n && !s.contains(&k))))
}

pub fn point(dim_bound: usize) -> SimplicialSet {
    simplex_subcomplex(0, dim_bound, |_| true)
}

/// Inclusion of a subcomplex of Δ[n] (as produced above) into Δ[n], matched by vertex sequences.
/// The subcomplex must contain every vertex of Δ[n].
pub fn inclusion_into_simplex(sub: Arc<SimplicialSet>, n: usize) -> Result<SSetMap> {
    let vertices: Vec<usize> = (0..=n).collect();
    include_on_vertices(sub, n, &vertices)
}

/// As [`inclusion_into_simplex`], with vertex `i` of `sub` sent to `vertices[i]`.
fn include_on_vertices(sub: Arc<SimplicialSet>, n: usize, vertices: &[usize]) -> Result<SSetMap> {
    if sub.len(0) != vertices.len() {
        return Err(Error::Mismatch(format!(
            "subcomplex has {} vertices, {} labels given",
            sub.len(0),
            vertices.len()
        )));
    }
    let d = sub.dim_bound();
    let simplex = Arc::new(standard_simplex(n, d)?);
    let mut lookup: Vec<HashMap<Vec<usize>, usize>> = vec![HashMap::new(); d + 1];
    for k in 0..=d {
        for s in 0..simplex.len(k) {
            lookup[k].insert(vertex_sequence(&simplex, k, s), s);
        }
    }
    let assign = (0..=d)
        .map(|k| {
            (0..sub.len(k))
                .map(|s| {
                    let seq: Vec<usize> = vertex_sequence(&sub, k, s).into_iter().map(|v| vertices[v]).collect();
                    lookup[k][&seq]
                })
                .collect()
        })
        .collect();
    SSetMap::new(sub, simplex, assign)
}

pub fn boundary_inclusion(n: usize, dim_bound: usize) -> Result<SSetMap> {
    let vertices: Vec<usize> = if n == 0 { Vec::new() } else { (0..=n).collect() };
    include_on_vertices(Arc::new(boundary(n, dim_bound)?), n, &vertices)
}

pub fn horn_inclusion(n: usize, k: usize, dim_bound: usize) -> Result<SSetMap> {
    let h = Arc::new(horn(n, k, dim_bound)?);
    // V[1,k] is the single vertex 1 - k.
    let vertices: Vec<usize> = if n == 1 { vec![1 - k] } else { (0..=n).collect() };
    include_on_vertices(h, n, &vertices)
}

/// Disjoint union with its summand inclusions.
pub fn disjoint_union(parts: &[Arc<SimplicialSet>]) -> Result<(Arc<SimplicialSet>, Vec<SSetMap>)> {
    let d = parts.first().map_or(0, |p| p.dim_bound());
    if parts.iter().any(|p| p.dim_bound() != d) {
        return Err(Error::Mismatch("summands have different dim_bound".into()));
    }
    let mut offsets = vec![vec![0usize; d + 1]];
    for p in parts {
        let last = offsets.last().unwrap().clone();
        offsets.push((0..=d).map(|k| last[k] + p.len(k)).collect());
    }
    let mut faces = vec![Vec::new(); d + 1];
    let mut degens = vec![Vec::new(); d + 1];
    for (pi, p) in parts.iter().enumerate() {
        for k in 0..=d {
            for s in 0..p.len(k) {
                let shift_down = if k > 0 { offsets[pi][k - 1] } else { 0 };
                faces[k].push(p.faces(k, s).iter().map(|&f| f + shift_down).collect::<Vec<_>>());
                degens[k].push(
                    (0..if k < d { k + 1 } else { 0 })
                        .map(|j| p.degen(k, s, j).unwrap() + offsets[pi][k + 1])
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let union = Arc::new(SimplicialSet::from_tables(d, faces, degens)?);
    let incs = parts
        .iter()
        .enumerate()
        .map(|(pi, p)| {
            let assign = (0..=d).map(|k| (0..p.len(k)).map(|s| s + offsets[pi][k]).collect()).collect();
            SSetMap::new(p.clone(), union.clone(), assign)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((union, incs))
}

/// `copies` disjoint copies of `x` together with the fold map onto `x`
/// (a trivial covering, hence a Kan fibration).
pub fn trivial_covering(x: Arc<SimplicialSet>, copies: usize) -> Result<SSetMap> {
    let parts = vec![x.clone(); copies];
    let (union, _) = disjoint_union(&parts)?;
    let d = x.dim_bound();
    let assign = (0..=d)
        .map(|k| (0..union.len(k)).map(|s| s % x.len(k).max(1)).collect())
        .collect();
    SSetMap::new(union, x, assign)
}

/// Pullback `X ×_Z Y` of `p: X → Z` and `q: Y → Z`, with its projections and
/// the pair behind each simplex (pairs listed lexicographically).
pub fn fiber_product(p: &SSetMap, q: &SSetMap) -> Result<(SSetMap, SSetMap, Vec<Vec<(usize, usize)>>)> {
    if p.target() != q.target() {
        return Err(Error::Mismatch("pullback legs have different targets".into()));
    }
    let (x, y) = (p.source(), q.source());
    let d = x.dim_bound();
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(d + 1);
    let mut index: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
        for t in 0..y.len(k) {
            by_image.entry(q.apply(k, t)).or_default().push(t);
        }
        let mut level = Vec::new();
        for s in 0..x.len(k) {
            if let Some(ts) = by_image.get(&p.apply(k, s)) {
                level.extend(ts.iter().map(|&t| (s, t)));
            }
        }
        index.push(level.iter().enumerate().map(|(i, &st)| (st, i)).collect());
        pairs.push(level);
    }
    let faces = (0..=d)
        .map(|k| {
            pairs[k]
                .iter()
                .map(|&(s, t)| {
                    if k == 0 {
                        Vec::new()
                    } else {
                        (0..=k).map(|i| index[k - 1][&(x.face(k, s, i), y.face(k, t, i))]).collect()
                    }
                })
                .collect()
        })
        .collect();
    let degens = (0..=d)
        .map(|k| {
            pairs[k]
                .iter()
                .map(|&(s, t)| {
                    if k == d {
                        Vec::new()
                    } else {
                        (0..=k).map(|j| index[k + 1][&(x.degen(k, s, j).unwrap(), y.degen(k, t, j).unwrap())]).collect()
                    }
                })
                .collect()
        })
        .collect();
    let pb = Arc::new(SimplicialSet::from_tables(d, faces, degens)?);
    let pr1 = pairs.iter().map(|l| l.iter().map(|&(s, _)| s).collect()).collect();
    let pr2 = pairs.iter().map(|l| l.iter().map(|&(_, t)| t).collect()).collect();
    Ok((SSetMap::new(pb.clone(), x.clone(), pr1)?, SSetMap::new(pb, y.clone(), pr2)?, pairs))
}

/// The simplices flagged in `keep` as a simplicial set, with its inclusion.
/// `keep` must be closed under faces and degeneracies.
pub fn subcomplex(x: &Arc<SimplicialSet>, keep: &[Vec<bool>]) -> Result<SSetMap> {
    let d = x.dim_bound();
    let index: Vec<Vec<Option<usize>>> = keep
        .iter()
        .map(|row| {
            let mut next = 0;
            row.iter()
                .map(|&k| {
                    k.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let closed = |k: usize, s: usize| -> Result<usize> {
        index[k][s].ok_or_else(|| Error::InvalidSimplicialSet(vec![super::Violation {
            dim: k,
            simplex: s,
            identity: "kept simplices are not closed under faces and degeneracies".into(),
        }]))
    };
    let mut faces = vec![Vec::new(); d + 1];
    let mut degens = vec![Vec::new(); d + 1];
    let mut assign = vec![Vec::new(); d + 1];
    for k in 0..=d {
        for s in (0..x.len(k)).filter(|&s| keep[k][s]) {
            let fs = if k == 0 { Vec::new() } else { x.faces(k, s).iter().map(|&f| closed(k - 1, f)).collect::<Result<_>>()? };
            let ds = if k < d {
                (0..=k).map(|j| closed(k + 1, x.degen(k, s, j).expect("below bound"))).collect::<Result<_>>()?
            } else {
                Vec::new()
            };
            faces[k].push(fs);
            degens[k].push(ds);
            assign[k].push(s);
        }
    }
    let sub = Arc::new(SimplicialSet::from_tables(d, faces, degens)?);
    SSetMap::new(sub, x.clone(), assign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nondeg_counts(x: &SimplicialSet) -> Vec<usize> {
        (0..=x.dim_bound()).map(|k| x.nondegenerate(k).count()).collect()
    }

    #[test]
    fn one_dimensional_horns_hit_the_right_vertex() {
        for k in 0..=1 {
            let i = horn_inclusion(1, k, 2).unwrap();
            assert_eq!(i.apply(0, 0), 1 - k);
        }
        assert_eq!(boundary_inclusion(0, 2).unwrap().source().len(0), 0);
    }

    #[test]
    fn standard_objects_have_expected_cells() {
        let d0 = standard_simplex(0, 4).unwrap();
        assert_eq!(nondeg_counts(&d0), vec![1, 0, 0, 0, 0]);
        for k in 0..=4 {
            assert_eq!(d0.len(k), 1);
        }
        assert_eq!(nondeg_counts(&boundary(1, 4).unwrap()), vec![2, 0, 0, 0, 0]);
        let h = horn(2, 1, 4).unwrap();
        assert_eq!(nondeg_counts(&h), vec![3, 2, 0, 0, 0]);
        let edges: Vec<Vec<usize>> = h.nondegenerate(1).map(|e| vertex_sequence(&h, 1, e)).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(nondeg_counts(&standard_simplex(3, 4).unwrap()), vec![4, 6, 4, 1, 0]);
        // Δ[n]_k has C(n+k+1, k+1) simplices.
        assert_eq!(standard_simplex(2, 3).unwrap().len(3), 15);
    }

    #[test]
    fn out_of_range_arguments() {
        assert!(standard_simplex(5, 4).is_err());
        assert!(horn(0, 0, 4).is_err());
        assert!(horn(2, 3, 4).is_err());
    }

    #[test]
    fn inclusions_are_valid_maps() {
        for n in 1..=3 {
            boundary_inclusion(n, 3).unwrap();
            for k in 0..=n {
                let f = horn_inclusion(n, k, 3).unwrap();
                assert!(f.is_injective());
            }
        }
        let f = boundary_inclusion(0, 2).unwrap();
        assert_eq!(f.source().len(0), 0);
        let g = horn_inclusion(2, 1, 2).unwrap();
        let (p1, _, pairs) = fiber_product(&g, &g).unwrap();
        assert_eq!(pairs[1].len(), p1.source().len(1));
        assert!(p1.is_isomorphism());
    }
}
