//! Attaching finitely many simplices to a simplicial set over a fixed target
//! so that components merge (π₀) or loops bound disks (π₁).

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::sset::homotopy::{edge_path_presentation, pi0, pi1_trivial};
use crate::sset::{SSetBuilder, SSetMap, SimplexKey, SimplicialSet};

/// A simplex added by a kill step: its faces in the extended set and its image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachedCell {
    pub dim: usize,
    pub faces: Vec<usize>,
    pub image: usize,
}

/// `A ↪ A' → B` with the attached simplices in attachment order.
#[derive(Debug, Clone, PartialEq)]
pub struct KillResult {
    pub inclusion: SSetMap,
    pub extension: SSetMap,
    pub cells: Vec<AttachedCell>,
}

impl KillResult {
    pub fn extended(&self) -> &Arc<SimplicialSet> {
        self.extension.source()
    }
}

/// Builder state shared by both kill procedures.
struct Growth<'a> {
    f: &'a SSetMap,
    builder: SSetBuilder,
    keys: Vec<Vec<SimplexKey>>,
    /// Image of every nondegenerate key (old ones included).
    image: HashMap<SimplexKey, usize>,
    cells: Vec<(SimplexKey, usize)>,
}

impl<'a> Growth<'a> {
    fn new(f: &'a SSetMap) -> Self {
        let a = f.source();
        let (builder, keys) = SSetBuilder::from_set(a);
        let mut image = HashMap::new();
        for k in 0..=a.dim_bound() {
            for s in a.nondegenerate(k) {
                image.insert(keys[k][s].clone(), f.apply(k, s));
            }
        }
        Growth { f, builder, keys, image, cells: Vec::new() }
    }

    fn add_vertex(&mut self, image: usize) -> SimplexKey {
        let key = self.builder.add_vertex();
        self.image.insert(key.clone(), image);
        self.cells.push((key.clone(), image));
        key
    }

    fn add_simplex(&mut self, faces: Vec<SimplexKey>, image: usize) -> Result<SimplexKey> {
        let key = self.builder.add_simplex(faces)?;
        self.image.insert(key.clone(), image);
        self.cells.push((key.clone(), image));
        Ok(key)
    }

    /// Current set, its key index, and the map to the target.
    fn snapshot(&self) -> Result<(Arc<SimplicialSet>, Vec<HashMap<SimplexKey, usize>>, SSetMap)> {
        let (x, index) = self.builder.build_with_index();
        let x = Arc::new(x);
        let mut key_at: Vec<Vec<Option<&SimplexKey>>> = (0..=x.dim_bound()).map(|k| vec![None; x.len(k)]).collect();
        for (k, m) in index.iter().enumerate() {
            for (key, &i) in m {
                key_at[k][i] = Some(key);
            }
        }
        let ext = SSetMap::from_nondegenerate(x.clone(), self.f.target().clone(), |k, s| {
            self.image[key_at[k][s].expect("indexed")]
        })?;
        Ok((x, index, ext))
    }

    fn finish(self) -> Result<KillResult> {
        let (x, index, extension) = self.snapshot()?;
        let a = self.f.source();
        let assign = (0..=a.dim_bound()).map(|k| self.keys[k].iter().map(|key| index[k][key]).collect()).collect();
        let inclusion = SSetMap::new(a.clone(), x.clone(), assign)?;
        let cells = self
            .cells
            .iter()
            .map(|(key, image)| AttachedCell {
                dim: key.dim(),
                faces: if key.dim() == 0 {
                    Vec::new()
                } else {
                    x.faces(key.dim(), index[key.dim()][key]).to_vec()
                },
                image: *image,
            })
            .collect();
        Ok(KillResult { inclusion, extension, cells })
    }
}

/// Breadth-first path through nondegenerate edges, as `(edge, forward)` steps.
fn edge_path(x: &SimplicialSet, from: usize, to: usize) -> Option<Vec<(usize, bool)>> {
    if x.dim_bound() == 0 {
        return (from == to).then(Vec::new);
    }
    let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; x.len(0)];
    let mut seen = vec![false; x.len(0)];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for e in x.nondegenerate(1) {
            let (a, b) = x.endpoints(e);
            for (here, there, fwd) in [(a, b, true), (b, a, false)] {
                if here == v && !seen[there] {
                    seen[there] = true;
                    prev[there] = Some((v, e, fwd));
                    queue.push_back(there);
                }
            }
        }
    }
    if !seen[to] {
        return None;
    }
    let mut steps = Vec::new();
    let mut cur = to;
    while let Some((p, e, fwd)) = prev[cur] {
        steps.push((e, fwd));
        cur = p;
    }
    steps.reverse();
    Some(steps)
}

/// Joins every pair of components of `A` that `f` sends to one component of
/// `B`, by a path of new edges (and new vertices) lying over a path in `B`.
pub fn kill_pi0(f: &SSetMap, _budget: &Budget) -> Result<KillResult> {
    f.validate()?;
    let (a, b) = (f.source(), f.target());
    if a.dim_bound() == 0 {
        return Err(Error::DimensionBound { degree: 1, dim_bound: 0 });
    }
    let (ca, cb) = (pi0(a), pi0(b));
    let mut g = Growth::new(f);
    let mut root: Vec<Option<usize>> = vec![None; cb.count()];
    for class in &ca.classes {
        let v = class[0];
        let target = cb.label[f.apply(0, v)];
        let Some(r) = root[target] else {
            root[target] = Some(v);
            continue;
        };
        let (fr, fv) = (f.apply(0, r), f.apply(0, v));
        let path = edge_path(b, fr, fv).expect("same component");
        let mut cur = g.keys[0][r].clone();
        if path.is_empty() {
            g.add_simplex(vec![g.keys[0][v].clone(), cur], b.degen(0, fr, 0).expect("dim_bound ≥ 1"))?;
            continue;
        }
        for (i, &(e, fwd)) in path.iter().enumerate() {
            let (s, t) = b.endpoints(e);
            let next_b = if fwd { t } else { s };
            let next = if i + 1 == path.len() { g.keys[0][v].clone() } else { g.add_vertex(next_b) };
            let faces = if fwd { vec![next.clone(), cur] } else { vec![cur, next.clone()] };
            g.add_simplex(faces, e)?;
            cur = next;
        }
    }
    g.finish()
}

/// Fans off loops at `base` with new 2-simplices (and new edges out of
/// `base`) lying over simplices of `B`, until π₁(A', base) is certified
/// trivial. `B` must have certified trivial π₁ at `f(base)`.
pub fn kill_pi1(f: &SSetMap, base: usize, budget: &Budget) -> Result<KillResult> {
    f.validate()?;
    let b = f.target().clone();
    if f.source().dim_bound() < 2 {
        return Err(Error::DimensionBound { degree: 2, dim_bound: f.source().dim_bound() });
    }
    match pi1_trivial(&b, f.apply(0, base), budget)? {
        v if v.is_yes() => {}
        v => {
            return Err(Error::ObstructionNotCertified(format!(
                "π₁ of the target at vertex {} is {}",
                f.apply(0, base),
                v.label()
            )))
        }
    }
    let mut g = Growth::new(f);
    let base_key = g.keys[0][base].clone();
    let mut filled = HashSet::new();
    for _ in 0..budget.max_words {
        let (x, index, ext) = g.snapshot()?;
        let xb = index[0][&base_key];
        if pi1_trivial(&x, xb, budget)?.is_yes() {
            return g.finish();
        }
        let p = edge_path_presentation(&x, xb)?;
        let edge_key = |e: usize| index[1].iter().find(|(_, &i)| i == e).map(|(key, _)| key.clone()).expect("indexed");
        let next = p
            .generators
            .iter()
            .map(|name| name[1..].parse::<usize>().expect("generator names are e<index>"))
            .find(|&e| !filled.contains(&edge_key(e)));
        let Some(e) = next else {
            return Err(Error::ObstructionNotCertified("every generator loop is filled but π₁ is undecided".into()));
        };
        filled.insert(edge_key(e));
        fan_off(&mut g, &x, &index, &ext, xb, e, budget)?;
    }
    Err(Error::BudgetExceeded(format!("π₁ not killed after {} rounds", budget.max_words)))
}

fn fan_off(
    g: &mut Growth<'_>,
    x: &SimplicialSet,
    index: &[HashMap<SimplexKey, usize>],
    ext: &SSetMap,
    base: usize,
    e: usize,
    budget: &Budget,
) -> Result<()> {
    let b = ext.target().clone();
    let key_of = |k: usize, s: usize| index[k].iter().find(|(_, &i)| i == s).map(|(key, _)| key.clone()).expect("indexed");
    let (u, v) = x.endpoints(e);
    let to_u = edge_path(x, base, u).expect("component of base");
    let to_v = edge_path(x, base, v).expect("component of base");
    // Loop steps as edges; orientation comes from the edge itself.
    let mut steps: Vec<usize> = to_u.iter().map(|s| s.0).collect();
    steps.push(e);
    steps.extend(to_v.iter().rev().map(|s| s.0));
    let mut vertices: Vec<usize> = Vec::new();
    for &s in &steps {
        let (p, q) = x.endpoints(s);
        for w in [p, q] {
            if w != base && !vertices.contains(&w) {
                vertices.push(w);
            }
        }
    }
    // Diagonal base → w: an existing edge if there is one.
    let mut diag: HashMap<usize, Option<usize>> = HashMap::new();
    diag.insert(base, Some(x.degen(0, base, 0).expect("dim_bound ≥ 2")));
    for &w in &vertices {
        diag.insert(w, x.nondegenerate(1).find(|&d| x.endpoints(d) == (base, w)));
    }
    let fresh: Vec<usize> = vertices.iter().copied().filter(|w| diag[w].is_none()).collect();
    let mut triangles: Vec<usize> = Vec::new();
    for &s in &steps {
        if !triangles.contains(&s) {
            triangles.push(s);
        }
    }
    let fb = ext.apply(0, base);
    let candidates: Vec<Vec<usize>> = fresh
        .iter()
        .map(|&w| (0..b.len(1)).filter(|&c| b.endpoints(c) == (fb, ext.apply(0, w))).collect())
        .collect();
    // Image of the diagonal at w under a choice for the fresh ones.
    let diag_image = |w: usize, choice: &[usize]| match diag[&w] {
        Some(d) => Some(ext.apply(1, d)),
        None => fresh.iter().position(|&z| z == w).and_then(|i| choice.get(i).copied()),
    };
    let filler = |s: usize, choice: &[usize]| -> Option<Option<usize>> {
        let (p, q) = x.endpoints(s);
        let (dq, dp) = (diag_image(q, choice)?, diag_image(p, choice)?);
        let want = [ext.apply(1, s), dq, dp];
        Some((0..b.len(2)).find(|&t| b.faces(2, t) == want))
    };
    let mut meter = Meter::new(budget.max_steps);
    let mut choice = Vec::new();
    if !choose(&candidates, &mut choice, &mut meter, &|c| triangles.iter().all(|&s| filler(s, c) != Some(None)))? {
        return Err(Error::ObstructionNotCertified(format!("no disk over the target bounds the loop through edge {e}")));
    }
    let mut diag_key: HashMap<usize, SimplexKey> = HashMap::new();
    for (&w, d) in &diag {
        if let Some(d) = d {
            diag_key.insert(w, key_of(1, *d));
        }
    }
    let base_key = key_of(0, base);
    for (i, &w) in fresh.iter().enumerate() {
        let k = g.add_simplex(vec![key_of(0, w), base_key.clone()], choice[i])?;
        diag_key.insert(w, k);
    }
    for &s in &triangles {
        let (p, q) = x.endpoints(s);
        let faces = [s, usize::MAX, usize::MAX];
        let existing = (0..x.len(2)).any(|t| {
            let f = x.faces(2, t);
            f[0] == faces[0] && diag[&q].is_some_and(|d| f[1] == d) && diag[&p].is_some_and(|d| f[2] == d)
        });
        if existing {
            continue;
        }
        let image = filler(s, &choice).flatten().expect("chosen");
        g.add_simplex(vec![key_of(1, s), diag_key[&q].clone(), diag_key[&p].clone()], image)?;
    }
    Ok(())
}

/// Depth-first choice of one candidate per slot satisfying `ok` on the full choice.
fn choose(candidates: &[Vec<usize>], choice: &mut Vec<usize>, meter: &mut Meter, ok: &dyn Fn(&[usize]) -> bool) -> Result<bool> {
    if choice.len() == candidates.len() {
        return Ok(ok(choice));
    }
    for &c in &candidates[choice.len()] {
        if !meter.tick() {
            return Err(Error::BudgetExceeded("searching for a bounding disk".into()));
        }
        choice.push(c);
        if choose(candidates, choice, meter, ok)? {
            return Ok(true);
        }
        choice.pop();
    }
    Ok(false)
}
