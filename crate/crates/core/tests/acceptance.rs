//! Acceptance suite. Prints one PASS/FAIL line per criterion, then exits
//! nonzero if any criterion failed.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sccat_core::algebra::snf::{smith_normal_form, IntMatrix};
use sccat_core::constructions::build::build_h;
use sccat_core::constructions::codiscrete_groupoid;
use sccat_core::constructions::walking_arrow;
use sccat_core::corpus::{category_pool, functor_corpus, CorpusCaps, NamedFunctor};
use sccat_core::model::generators::{generating_acyclic_a1, generating_cofibrations};
use sccat_core::model::{
    has_rlp_against_set, is_a2_candidate, is_acyclic_fibration, is_dk_equivalence, is_fibration,
    is_acyclic_fibration_lifting as lifting_route,
};
use sccat_core::scat::basic::pullback;
use sccat_core::scat::pushout::{pushout_generating, Attachment};
use sccat_core::scat::search::all_functors;
use sccat_core::scat::SFunctor;
use sccat_core::sset::homotopy::{is_weak_equivalence_sset, is_weakly_contractible};
use sccat_core::sset::lifting::{is_kan_fibration, solve_sset_square};
use sccat_core::sset::search::all_maps;
use sccat_core::sset::standard::*;
use sccat_core::sset::{SSetMap, SimplicialSet};
use sccat_core::verdict::SsetSquare;
use sccat_core::verify::{verify_verdict, Claim};
use sccat_core::{Budget, Verdict};

const CORPUS_SEED: u64 = 7;
const CORPUS_SIZE: usize = 220;
const POOL_RANDOMS: usize = 24;
/// Word-length cap for pushout closures; closures that stabilize do so well below it.
const PUSHOUT_WORDS: usize = 16;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Every definite payload seen by the suites, re-validated on the spot.
#[derive(Default)]
struct Audit {
    checked: usize,
    failures: Vec<String>,
}

impl Audit {
    fn check(&mut self, what: &str, claim: Claim<'_>, v: &Verdict, budget: &Budget) {
        if !v.is_definite() {
            return;
        }
        self.checked += 1;
        if !verify_verdict(claim, v, budget) {
            self.failures.push(format!("{what}: {}", v.label()));
        }
    }
}

fn report(id: &str, name: &str, o: &Outcome) -> bool {
    println!("{} {id:<4} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    o.pass
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn corpus() -> Vec<NamedFunctor> {
    functor_corpus(CORPUS_SEED, CORPUS_SIZE, &CorpusCaps::default()).expect("corpus generates")
}

fn routes_agree(corpus: &[NamedFunctor], audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let start = Instant::now();
    let (mut both, mut disagree) = (0, Vec::new());
    for nf in corpus {
        let f = &nf.functor;
        let a = is_acyclic_fibration(f, &b).unwrap();
        let l = lifting_route(f, &b).unwrap();
        audit.check(&nf.name, Claim::AcyclicFibration(f), &a, &b);
        audit.check(&nf.name, Claim::AcyclicFibration(f), &l, &b);
        if a.is_definite() && l.is_definite() {
            both += 1;
            if a.is_yes() != l.is_yes() {
                disagree.push(nf.name.clone());
            }
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: disagree.is_empty() && both >= 50 && t < Duration::from_secs(30),
        detail: format!("{} functors, {both} doubly definite, disagreements {disagree:?}, {}", corpus.len(), secs(t)),
    }
}

fn f1_matches_a1(corpus: &[NamedFunctor], audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let start = Instant::now();
    let a1: Vec<SFunctor> = generating_acyclic_a1(2, 2).unwrap().into_iter().map(|g| g.functor).collect();
    let (mut both, mut disagree) = (0, Vec::new());
    for nf in corpus {
        let f = &nf.functor;
        let n = f.source().num_objects();
        let mut homs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let v = is_kan_fibration(f.hom_map(x, y), &b).unwrap();
                audit.check(&nf.name, Claim::KanFibration(f.hom_map(x, y)), &v, &b);
                homs.push(v);
            }
        }
        let f1 = Verdict::all(homs, |mut e| e.pop().unwrap_or(sccat_core::Evidence::Isomorphism));
        let rlp = has_rlp_against_set(f, &a1, &b).unwrap();
        audit.check(&nf.name, Claim::RlpSet { f, gens: &a1 }, &rlp, &b);
        if f1.is_definite() && rlp.is_definite() {
            both += 1;
            if f1.is_yes() != rlp.is_yes() {
                disagree.push(nf.name.clone());
            }
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: disagree.is_empty() && both >= 50 && t < Duration::from_secs(20),
        detail: format!("{both} doubly definite, disagreements {disagree:?}, {}", secs(t)),
    }
}

fn c2_is_surjectivity(corpus: &[NamedFunctor], audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let c2 = vec![generating_cofibrations(0, 2).unwrap().pop().unwrap().functor];
    let (mut agree, mut indefinite) = (0, 0);
    for nf in corpus {
        let f = &nf.functor;
        let v = has_rlp_against_set(f, &c2, &b).unwrap();
        audit.check(&nf.name, Claim::RlpSet { f, gens: &c2 }, &v, &b);
        let m = f.target().num_objects();
        let onto = (0..m).all(|y| f.ob_map().contains(&y));
        if !v.is_definite() {
            indefinite += 1;
        } else if v.is_yes() == onto {
            agree += 1;
        }
    }
    Outcome {
        pass: agree == corpus.len(),
        detail: format!("{agree}/{} agree, {indefinite} indefinite", corpus.len()),
    }
}

fn contractibility(audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let d = 4;
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let mut cases: Vec<(String, SimplicialSet, bool)> = Vec::new();
    for n in 0..=3 {
        cases.push((format!("Δ[{n}]"), standard_simplex(n, d).unwrap(), true));
        if n > 0 {
            for k in 0..=n {
                cases.push((format!("V[{n},{k}]"), horn(n, k, d).unwrap(), true));
            }
        }
    }
    for n in 1..=4 {
        cases.push((format!("∂Δ[{n}]"), boundary(n, d).unwrap(), false));
    }
    for (name, x, expect) in &cases {
        let start = Instant::now();
        let v = is_weakly_contractible(x, &b);
        let t = start.elapsed();
        slowest = slowest.max(t);
        audit.check(name, Claim::WeaklyContractible(x), &v, &b);
        let ok = if *expect { v.is_yes() } else { v.is_no() };
        if !ok || t >= Duration::from_secs(1) {
            bad.push(format!("{name}: {} in {}", v.label(), secs(t)));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} complexes, slowest {}, failures {bad:?}", cases.len(), secs(slowest)),
    }
}

fn big(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
}

fn big_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Determinant over Q by Gaussian elimination on big rationals.
fn big_det(m: &[Vec<BigInt>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let factor = &a[r][c] / &a[c][c];
            for j in c..n {
                let delta = &factor * &a[c][j];
                a[r][j] -= delta;
            }
        }
    }
    det
}

/// Rank over Q by Gaussian elimination on big rationals.
fn rational_rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let factor = &m[r][c] / &pivot;
                for j in c..cols {
                    let delta = &factor * &m[rank][j];
                    m[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn snf_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut largest = BigInt::zero();
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i128>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        let (l, mm, rt) = (big(&s.left), big(&m), big(&s.right));
        for v in l.iter().chain(&rt).flatten() {
            largest = largest.max(v.abs());
        }
        let remult = big_mul(&big_mul(&l, &mm, r, c), &rt, c, c) == big(&s.diagonal);
        let one = BigRational::one();
        let unimodular = big_det(&l).abs() == one && big_det(&rt).abs() == one;
        let d = &s.diagonal;
        let off_diagonal_zero = (0..r).all(|i| (0..c).all(|j| i == j || d.get(i, j) == 0));
        let f = s.invariant_factors();
        let divides = f.windows(2).all(|w| w[1] % w[0] == 0) && f.iter().all(|&v| v > 0);
        let tail_zero = (f.len()..r.min(c)).all(|i| d.get(i, i) == 0);
        let rank_ok = s.rank() == rational_rank(&rows);
        if !(remult && unimodular && off_diagonal_zero && divides && tail_zero && rank_ok) {
            bad.push(trial);
        }
    }
    let t = start.elapsed();
    Outcome {
        pass: bad.is_empty() && t < Duration::from_secs(10),
        detail: format!("1000 matrices, failing trials {bad:?}, largest transform entry {largest}, {}", secs(t)),
    }
}

fn right_properness(corpus: &[NamedFunctor], audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let mut fibrations = Vec::new();
    let mut weqs = Vec::new();
    for nf in corpus {
        let f = &nf.functor;
        if is_fibration(f, &b).unwrap().is_yes() {
            fibrations.push(nf);
        }
        if is_dk_equivalence(f, &b).unwrap().is_yes() {
            weqs.push(nf);
        }
    }
    let (mut cospans, mut yes, mut no) = (0, 0, Vec::new());
    'outer: for g in &fibrations {
        for h in &weqs {
            if g.functor.target() != h.functor.target() {
                continue;
            }
            let (_, pr1, _) = pullback(&g.functor, &h.functor).unwrap();
            let v = is_dk_equivalence(&pr1, &b).unwrap();
            audit.check("pullback projection", Claim::DkEquivalence(&pr1), &v, &b);
            cospans += 1;
            if v.is_yes() {
                yes += 1;
            }
            if v.is_no() {
                no.push(format!("{} ← {}", g.name, h.name));
            }
            if cospans >= 120 {
                break 'outer;
            }
        }
    }
    Outcome {
        pass: cospans >= 30 && no.is_empty() && yes >= 20,
        detail: format!(
            "{} fibrations, {} weqs, {cospans} cospans, {yes} yes, negatives {no:?}",
            fibrations.len(),
            weqs.len()
        ),
    }
}

/// Pushouts along the horn generators into pool categories.
fn pushout_a1(audit: &mut Audit) -> (Outcome, usize) {
    let b = Budget::default();
    let closure = Budget { max_words: PUSHOUT_WORDS, ..b };
    let caps = CorpusCaps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let pool = category_pool(&mut rng, &caps, POOL_RANDOMS).unwrap();
    let gens = generating_acyclic_a1(2, caps.dim_bound).unwrap();
    let (mut glued_into, mut instances, mut yes, mut no) = (0, 0, 0, Vec::new());
    for c in &pool {
        let mut any = false;
        for g in &gens {
            let Some(glues) = all_functors(g.functor.source(), &c.category, 200_000) else { continue };
            for glue in glues.iter().take(3) {
                let Ok(p) = pushout_generating(&c.category, &g.attachment, glue, &closure) else { continue };
                if !p.stabilized {
                    continue;
                }
                any = true;
                instances += 1;
                let v = is_dk_equivalence(&p.from_base, &b).unwrap();
                audit.check("pushout", Claim::DkEquivalence(&p.from_base), &v, &b);
                if v.is_yes() {
                    yes += 1;
                }
                if v.is_no() {
                    no.push(format!("{} along {}", c.name, g.name));
                }
            }
        }
        glued_into += usize::from(any);
    }
    (
        Outcome {
            pass: glued_into >= 20 && no.is_empty() && yes >= 15,
            detail: format!("{glued_into} categories, {instances} pushouts, {yes} yes, negatives {no:?}"),
        },
        glued_into,
    )
}

/// The A2 instance: build_H over the codiscrete groupoid on two objects.
fn a2_instance(d: usize, budget: &Budget) -> Result<sccat_core::constructions::build::BuildOutcome, String> {
    let g = codiscrete_groupoid(2, d).unwrap();
    let arrow = walking_arrow(d);
    let f = all_functors(&arrow, &g, 100_000)
        .unwrap()
        .into_iter()
        .find(|f| f.ob_map() == [0, 1])
        .expect("arrow into the groupoid");
    let out = build_h(&arrow, &f, budget).map_err(|e| e.to_string())?;
    match &out.stopped {
        None => Ok(out),
        Some(why) => Err(format!("build_H stopped after {} cells: {why}", out.record.entries.len())),
    }
}

fn pushout_a2(audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let caps = CorpusCaps::default();
    let out = match a2_instance(caps.dim_bound, &b) {
        Ok(out) => out,
        Err(why) => return Outcome { pass: false, detail: format!("no A2 instance: {why}") },
    };
    let attach = Attachment::A2 { h: out.h.clone() };
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let pool = category_pool(&mut rng, &caps, POOL_RANDOMS).unwrap();
    let (mut glued_into, mut yes, mut no) = (0, 0, Vec::new());
    for c in &pool {
        let Some(glues) = all_functors(&attach.source(caps.dim_bound).unwrap(), &c.category, 200_000) else { continue };
        let Some(glue) = glues.first() else { continue };
        let Ok(p) = pushout_generating(&c.category, &attach, glue, &b) else { continue };
        if !p.stabilized {
            continue;
        }
        glued_into += 1;
        let v = is_dk_equivalence(&p.from_base, &b).unwrap();
        audit.check("A2 pushout", Claim::DkEquivalence(&p.from_base), &v, &b);
        yes += usize::from(v.is_yes());
        if v.is_no() {
            no.push(c.name.clone());
        }
    }
    Outcome {
        pass: no.is_empty() && glued_into > 0,
        detail: format!("{glued_into} categories, {yes} yes, negatives {no:?}"),
    }
}

/// Squares `A → C`, `B → D` with `i: A ↪ B`, a weak equivalence `w: B' → B`
/// and `j: A → B'` over `i`; lifts through `B` and through `B'` must agree.
fn lift_transfer(audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let d = 2;
    let s = |x: SimplicialSet| Arc::new(x);
    let pt = s(point(d));
    let d1 = s(standard_simplex(1, d).unwrap());
    let d2 = s(standard_simplex(2, d).unwrap());
    let inclusions: Vec<SSetMap> = vec![
        boundary_inclusion(1, d).unwrap(),
        horn_inclusion(1, 0, d).unwrap(),
        horn_inclusion(2, 0, d).unwrap(),
        horn_inclusion(2, 1, d).unwrap(),
        boundary_inclusion(0, d).unwrap(),
    ];
    let primes: Vec<Arc<SimplicialSet>> =
        vec![pt.clone(), d1.clone(), d2.clone(), s(horn(2, 1, d).unwrap()), s(horn(2, 2, d).unwrap())];
    let fibrations: Vec<SSetMap> = vec![
        SSetMap::identity(d1.clone()),
        trivial_covering(pt.clone(), 2).unwrap(),
        trivial_covering(d1.clone(), 2).unwrap(),
        SSetMap::constant(s(boundary(1, d).unwrap()), pt.clone(), 0).unwrap(),
        SSetMap::constant(pt.clone(), pt.clone(), 0).unwrap(),
    ];
    let (mut squares, mut lifts, mut mismatches, mut skipped) = (0, 0, Vec::new(), 0);
    for p in &fibrations {
        let kan = is_kan_fibration(p, &b).unwrap();
        audit.check("square fibration", Claim::KanFibration(p), &kan, &b);
        if !kan.is_yes() {
            skipped += 1;
            continue;
        }
        for i in &inclusions {
            for bp in &primes {
                let ws = all_maps(bp, i.target(), 100_000).unwrap();
                let js = all_maps(i.source(), bp, 100_000).unwrap();
                let Some((w, j)) = ws.iter().find_map(|w| {
                    let w = SSetMap::new(bp.clone(), i.target().clone(), w.clone()).ok()?;
                    let j = js.iter().find_map(|j| {
                        let j = SSetMap::new(i.source().clone(), bp.clone(), j.clone()).ok()?;
                        (w.after(&j).ok()? == *i).then_some(j)
                    })?;
                    Some((w, j))
                }) else {
                    continue;
                };
                let weq = is_weak_equivalence_sset(&w, &b).unwrap();
                audit.check("square weq", Claim::WeakEquivalenceSset(&w), &weq, &b);
                if !weq.is_yes() {
                    continue;
                }
                let tops = all_maps(i.source(), p.source(), 100_000).unwrap();
                let bottoms = all_maps(i.target(), p.target(), 100_000).unwrap();
                for bottom in &bottoms {
                    let bot = SSetMap::new(i.target().clone(), p.target().clone(), bottom.clone()).unwrap();
                    for top in &tops {
                        let t = SSetMap::new(i.source().clone(), p.source().clone(), top.clone()).unwrap();
                        if p.after(&t).unwrap() != bot.after(i).unwrap() {
                            continue;
                        }
                        let sq = SsetSquare { top: top.clone(), bottom: bottom.clone() };
                        let through_b = solve_sset_square(p, i, &sq, &b).unwrap();
                        let sq2 = SsetSquare { top: top.clone(), bottom: bot.after(&w).unwrap().assignment().clone() };
                        let through_bp = solve_sset_square(p, &j, &sq2, &b).unwrap();
                        audit.check("square via B", Claim::RlpSset { p, i }, &through_b, &b);
                        audit.check("square via B'", Claim::RlpSset { p, i: &j }, &through_bp, &b);
                        squares += 1;
                        lifts += usize::from(through_b.is_yes());
                        if !(through_b.is_definite() && through_bp.is_definite())
                            || through_b.is_yes() != through_bp.is_yes()
                        {
                            mismatches.push(squares);
                        }
                    }
                }
            }
        }
    }
    Outcome {
        pass: squares >= 30 && mismatches.is_empty(),
        detail: format!(
            "{squares} squares ({lifts} liftable), {skipped} non-Kan maps skipped, mismatches {mismatches:?}"
        ),
    }
}

fn build_h_end_to_end(audit: &mut Audit) -> Outcome {
    let b = Budget::default();
    let start = Instant::now();
    let out = match a2_instance(3, &b) {
        Ok(out) => out,
        Err(why) => {
            return Outcome { pass: false, detail: format!("{why} ({})", secs(start.elapsed())) };
        }
    };
    let a2 = is_a2_candidate(&out.inclusion, &out.marking, &b).unwrap();
    audit.check("H", Claim::A2Candidate { inc: &out.inclusion, marking: &out.marking }, &a2, &b);
    let dk = is_dk_equivalence(&out.inclusion, &b).unwrap();
    audit.check("{x} → H", Claim::DkEquivalence(&out.inclusion), &dk, &b);
    let t = start.elapsed();
    Outcome {
        pass: a2.is_yes() && dk.is_yes() && t < Duration::from_secs(10),
        detail: format!("a2 {}, dk {}, {} cells, {}", a2.label(), dk.label(), out.record.entries.len(), secs(t)),
    }
}

fn main() -> ExitCode {
    let total = Instant::now();
    let corpus = corpus();
    let mut audit = Audit::default();
    let mut ok = true;
    ok &= report("1", "acyclic fibration routes agree", &routes_agree(&corpus, &mut audit));
    ok &= report("2", "F1 agrees with RLP(A1)", &f1_matches_a1(&corpus, &mut audit));
    ok &= report("3", "RLP(C2) is surjectivity on objects", &c2_is_surjectivity(&corpus, &mut audit));
    ok &= report("4", "contractibility certificates", &contractibility(&mut audit));
    ok &= report("5", "Smith normal form", &snf_suite());
    let (mut o, t) = timed(|| right_properness(&corpus, &mut audit));
    o.detail += &format!(", {}", secs(t));
    ok &= report("6", "right properness", &o);
    let ((mut a1, _), t) = timed(|| pushout_a1(&mut audit));
    a1.detail += &format!(", {}", secs(t));
    let a2 = pushout_a2(&mut audit);
    report("7a", "pushouts along A1 are weak equivalences", &a1);
    report("7b", "pushouts along the A2 instance are weak equivalences", &a2);
    ok &= report(
        "7",
        "pushouts along A1 and A2 are weak equivalences",
        &Outcome { pass: a1.pass && a2.pass, detail: format!("A1 {}, A2 {}", a1.pass, a2.pass) },
    );
    let (mut o, t) = timed(|| lift_transfer(&mut audit));
    o.detail += &format!(", {}", secs(t));
    ok &= report("8", "lifting transfer along a weak equivalence", &o);
    ok &= report("9", "build_H end to end", &build_h_end_to_end(&mut audit));
    ok &= report(
        "10",
        "witness integrity",
        &Outcome {
            pass: audit.failures.is_empty() && audit.checked > 0,
            detail: format!("{} payloads re-validated, failures {:?}", audit.checked, audit.failures),
        },
    );
    println!("total {}", secs(total.elapsed()));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
