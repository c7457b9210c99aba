use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sccat_core::algebra::homology::{boundary_matrix, homology};
use sccat_core::constructions::{build_h, codiscrete_groupoid, kill_pi0, kill_pi1, walking_arrow};
use sccat_core::corpus::{category_pool, functor_corpus, random_sset, CorpusCaps, NamedCategory, NamedFunctor};
use sccat_core::io::{self, Document};
use sccat_core::model::{factor_bounded, generating_acyclic_a1, is_dk_equivalence, verify_retract, RetractWitness};
use sccat_core::scat::basic::{coproduct, double_object, pullback, u_of_map};
use sccat_core::scat::pi0::pi0_functor;
use sccat_core::scat::search::all_functors;
use sccat_core::scat::SFunctor;
use sccat_core::sset::homotopy::{is_weak_equivalence_sset, pi0};
use sccat_core::sset::search::all_maps;
use sccat_core::sset::standard::{boundary, horn, standard_simplex};
use sccat_core::sset::{SSetMap, SimplicialSet};
use sccat_core::verdict::FunctorData;
use sccat_core::Budget;

const CASES: u32 = 48;

fn caps() -> CorpusCaps {
    CorpusCaps::default()
}

fn pool() -> &'static [NamedCategory] {
    static POOL: OnceLock<Vec<NamedCategory>> = OnceLock::new();
    POOL.get_or_init(|| category_pool(&mut ChaCha8Rng::seed_from_u64(11), &caps(), 10).unwrap())
}

fn corpus() -> &'static [NamedFunctor] {
    static CORPUS: OnceLock<Vec<NamedFunctor>> = OnceLock::new();
    CORPUS.get_or_init(|| functor_corpus(5, 80, &caps()).unwrap())
}

fn sset(seed: u64) -> Arc<SimplicialSet> {
    Arc::new(random_sset(&mut ChaCha8Rng::seed_from_u64(seed), 2, 6))
}

/// A random map between two random sets, if the search finds one.
fn sset_map(seed: u64, x: Arc<SimplicialSet>) -> Option<SSetMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = Arc::new(random_sset(&mut rng, x.dim_bound(), 6));
    let maps = all_maps(&x, &y, 200_000)?;
    let m = maps.choose(&mut rng)?.clone();
    Some(SSetMap::new(x, y, m).unwrap())
}

/// Two composable functors through random pool categories.
fn composable(seed: u64) -> Option<(SFunctor, SFunctor)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = pool();
    let [a, b, c] = [0, 0, 0].map(|_| p.choose(&mut rng).unwrap().category.clone());
    let f = all_functors(&a, &b, 100_000)?.choose(&mut rng)?.clone();
    let g = all_functors(&b, &c, 100_000)?.choose(&mut rng)?.clone();
    Some((f, g))
}

fn mat_is_zero(rows: &[Vec<i128>]) -> bool {
    rows.iter().all(|r| r.iter().all(|&v| v == 0))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, ..ProptestConfig::default() })]

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let x = sset(seed);
        let doc = Document::SimplicialSet((*x).clone());
        prop_assert_eq!(io::parse(&io::to_string(&doc)).unwrap(), doc);
        let f = &corpus()[(seed % corpus().len() as u64) as usize].functor;
        let doc = Document::Functor(f.clone());
        prop_assert_eq!(io::parse(&io::to_string(&doc)).unwrap(), doc);
    }

    #[test]
    fn betti0_counts_components(seed in any::<u64>()) {
        let x = sset(seed);
        prop_assert_eq!(homology(&x, 0).unwrap().betti, pi0(&x).count());
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let x = sset(seed);
        for k in 1..x.dim_bound() {
            let dd = boundary_matrix(&x, k).mul(&boundary_matrix(&x, k + 1));
            prop_assert!(mat_is_zero(&dd.to_rows()), "k = {}", k);
        }
    }

    #[test]
    fn standard_constructors_validate(n in 0usize..=4, k in 0usize..=4, extra in 0usize..=1) {
        let d = (n + extra).min(4);
        prop_assert!(standard_simplex(n, d).unwrap().validate().is_empty());
        if n >= 1 {
            prop_assert!(boundary(n, d).unwrap().validate().is_empty());
            if k <= n {
                prop_assert!(horn(n, k, d).unwrap().validate().is_empty());
            }
        }
    }

    #[test]
    fn weak_equivalences_are_reflexive(seed in any::<u64>()) {
        let id = SSetMap::identity(sset(seed));
        prop_assert!(is_weak_equivalence_sset(&id, &Budget::default()).unwrap().is_yes());
    }

    #[test]
    fn two_out_of_three(seed in any::<u64>()) {
        let b = Budget::default();
        let Some(f) = sset_map(seed, sset(seed)) else { return Ok(()) };
        let Some(g) = sset_map(seed ^ 0x9e37, f.target().clone()) else { return Ok(()) };
        let gf = g.after(&f).unwrap();
        let [vf, vg, vgf] = [&f, &g, &gf].map(|m| is_weak_equivalence_sset(m, &b).unwrap());
        if vf.is_yes() && vg.is_yes() {
            prop_assert!(!vgf.is_no());
        }
        if vf.is_yes() && vgf.is_yes() {
            prop_assert!(!vg.is_no());
        }
        if vg.is_yes() && vgf.is_yes() {
            prop_assert!(!vf.is_no());
        }
    }

    #[test]
    fn pi0_is_functorial(seed in any::<u64>()) {
        let Some((f, g)) = composable(seed) else { return Ok(()) };
        let whole = pi0_functor(&g.after(&f).unwrap()).unwrap();
        let parts = pi0_functor(&g).unwrap().after(&pi0_functor(&f).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn u_is_functorial(seed in any::<u64>()) {
        let Some(f) = sset_map(seed, sset(seed)) else { return Ok(()) };
        let Some(g) = sset_map(seed.rotate_left(7), f.target().clone()) else { return Ok(()) };
        let whole = u_of_map(&g.after(&f).unwrap()).unwrap();
        let parts = u_of_map(&g).unwrap().after(&u_of_map(&f).unwrap()).unwrap();
        prop_assert_eq!(whole.data(), parts.data());
    }

    #[test]
    fn pullback_square_commutes(i in 0usize..80, j in 0usize..80) {
        let (f, h) = (&corpus()[i].functor, &corpus()[j].functor);
        if f.target() != h.target() {
            return Ok(());
        }
        let (pb, first, second) = pullback(f, h).unwrap();
        prop_assert!(pb.validate().is_empty());
        prop_assert_eq!(f.after(&first).unwrap().data(), h.after(&second).unwrap().data());
    }

    #[test]
    fn doubling_validates(i in 0usize..24) {
        let c = &pool()[i % pool().len()].category;
        for a in 0..c.num_objects() {
            let (doubled, collapse) = double_object(c, a).unwrap();
            prop_assert!(doubled.validate().is_empty());
            prop_assert!(collapse.validate().is_ok());
        }
    }

    /// `f` is a retract of `inc₀ ∘ f` through `D ⨿ E → D`, so a definite
    /// equivalence verdict on the composite is never contradicted by `f`.
    #[test]
    fn retracts_of_equivalences(i in 0usize..80, e in 0usize..24) {
        let f = &corpus()[i].functor;
        let d = f.target().clone();
        let other = pool()[e % pool().len()].category.clone();
        let Some(h) = all_functors(&other, &d, 100_000).and_then(|v| v.into_iter().next()) else { return Ok(()) };
        let (sum, incs) = coproduct(&[d.clone(), other.clone()]).unwrap();
        let (nd, no) = (d.num_objects(), other.num_objects());
        let n = nd + no;
        let db = d.dim_bound();
        let mut hom_maps = vec![vec![Vec::new(); db + 1]; n * n];
        for a in 0..n {
            for b in 0..n {
                hom_maps[a * n + b] = match (a < nd, b < nd) {
                    (true, true) => (0..=db).map(|k| (0..d.hom(a, b).len(k)).collect()).collect(),
                    (false, false) => h.hom_map(a - nd, b - nd).assignment().clone(),
                    _ => vec![Vec::new(); db + 1],
                };
            }
        }
        let ob_map = (0..nd).chain((0..no).map(|x| h.ob(x))).collect();
        let r = SFunctor::from_data(sum, d, FunctorData { ob_map, hom_maps }).unwrap();
        let s = incs[0].clone();
        let g = s.after(f).unwrap();
        let w = RetractWitness { section: s, retraction: r };
        prop_assert!(verify_retract(f, &g, &w).unwrap());
        let b = Budget::default();
        if is_dk_equivalence(&g, &b).unwrap().is_yes() {
            prop_assert!(!is_dk_equivalence(f, &b).unwrap().is_no());
        }
    }

    #[test]
    fn kills_factor_the_map(seed in any::<u64>()) {
        let b = Budget::default();
        let Some(f) = sset_map(seed, sset(seed)) else { return Ok(()) };
        let r = kill_pi0(&f, &b).unwrap();
        prop_assert!(r.inclusion.is_injective());
        prop_assert_eq!(r.extension.after(&r.inclusion).unwrap(), f.clone());
        let (_, _, comps) = sccat_core::sset::homotopy::pi0_map(&r.extension);
        let mut seen = std::collections::HashSet::new();
        prop_assert!(comps.iter().all(|c| seen.insert(*c)), "fibres over a component stay connected");
    }
}

/// Maps into a simplex have simply connected targets, so π₁ can always be killed.
#[test]
fn kill_pi1_into_simplices() {
    let b = Budget::default();
    let target = Arc::new(standard_simplex(2, 2).unwrap());
    let mut tried = 0;
    for seed in 0..24 {
        let x = sset(seed);
        let Some(maps) = all_maps(&x, &target, 200_000) else { continue };
        let Some(m) = maps.first() else { continue };
        let f = SSetMap::new(x, target.clone(), m.clone()).unwrap();
        let r0 = kill_pi0(&f, &b).unwrap();
        let r1 = kill_pi1(&r0.extension, 0, &b).unwrap();
        assert!(r1.inclusion.is_injective());
        assert_eq!(r1.extension.after(&r1.inclusion).unwrap(), r0.extension);
        assert_eq!(pi0(r1.extended()).count(), 1);
        tried += 1;
    }
    assert!(tried >= 12, "only {tried} instances");
}

#[test]
fn factorizations_compose_back() {
    let gens = generating_acyclic_a1(2, 2).unwrap();
    let budget = Budget::new(4, 6, 200_000);
    let mut complete = 0;
    for nf in corpus().iter().take(20) {
        let fac = factor_bounded(&nf.functor, &gens, &budget).unwrap();
        assert_eq!(fac.p.after(&fac.i).unwrap().data(), nf.functor.data(), "{}", nf.name);
        assert_eq!(fac.i.source(), nf.functor.source());
        assert_eq!(fac.p.target(), nf.functor.target());
        complete += fac.is_complete() as usize;
    }
    assert!(complete > 0);
}

#[test]
fn build_h_composite_commutes() {
    let d = 3;
    let arrow = walking_arrow(d);
    for n in 1..=2 {
        let g = codiscrete_groupoid(n, d).unwrap();
        for f in all_functors(&arrow, &g, 100_000).unwrap() {
            let out = build_h(&arrow, &f, &Budget::new(4, 16, 100_000)).unwrap();
            let through = out.to_g.after(&out.inclusion).unwrap();
            assert!(through.validate().is_ok());
            assert_eq!(through.ob_map(), &[f.ob(0)]);
            assert!(out.h.validate().is_empty());
        }
    }
}
