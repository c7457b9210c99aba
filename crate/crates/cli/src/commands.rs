use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use sccat_core::algebra::homology::homology;
use sccat_core::constructions::build_h;
use sccat_core::corpus::{functor_corpus, seeded_pool, CorpusCaps};
use sccat_core::io::{self, Document};
use sccat_core::model::{
    factor_bounded, generating_acyclic_a1, generating_cofibrations, has_rlp_against_set, is_a2_candidate,
    is_acyclic_fibration, is_acyclic_fibration_lifting, is_dk_equivalence, is_fibration, solve_lifting, Generator,
};
use sccat_core::scat::pi0::pi0_category;
use sccat_core::sset::homotopy::{is_weak_equivalence_sset, is_weakly_contractible, pi0};
use sccat_core::sset::lifting::{has_rlp_sset, is_kan_fibration};
use sccat_core::verdict::FunctorSquare;
use sccat_core::verify::{verify_verdict, Claim};
use sccat_core::{Budget, UnknownReason, Verdict};

use crate::report::{Check, InputDigest, Report};
use crate::{Cli, Command, Family, Format, Options};

pub const INPUT_ERROR: u8 = 3;

type Outcome<T> = std::result::Result<T, String>;

fn load(path: &Path, digests: &mut Vec<InputDigest>) -> Outcome<Document> {
    let shown = path.display().to_string();
    let bytes = fs::read(path).map_err(|e| format!("{shown}: {e}"))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| format!("{shown}: {e}"))?;
    let doc = io::parse(text).map_err(|e| format!("{shown}: {e}"))?;
    digests.push(InputDigest::new(&shown, doc.kind(), &bytes));
    Ok(doc)
}

fn wrong_kind(path: &Path, doc: &Document, wanted: &str) -> String {
    format!("{}: $.kind: expected {wanted}, found {}", path.display(), doc.kind())
}

fn core<T>(path: &Path, r: sccat_core::Result<T>) -> Outcome<T> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

fn decide(name: &str, v: Verdict, claim: Claim<'_>, budget: &Budget) -> Check {
    let ok = verify_verdict(claim, &v, budget);
    Check::decision(name, &v, ok)
}

struct Clock {
    on: bool,
}

impl Clock {
    fn time<T>(&self, f: impl FnOnce() -> Outcome<T>) -> Outcome<(T, Option<u64>)> {
        let start = Instant::now();
        let out = f()?;
        Ok((out, self.on.then(|| start.elapsed().as_millis() as u64)))
    }
}

fn family(fam: Family, n: usize, d: usize) -> sccat_core::Result<Vec<Generator>> {
    match fam {
        Family::C => generating_cofibrations(n, d),
        Family::A1 => generating_acyclic_a1(n, d),
    }
}

fn emit(opts: &Options, text: &str) -> Outcome<()> {
    match &opts.out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> Outcome<u8> {
    let opts = &cli.opts;
    let budget = opts.budget();
    if !budget.is_valid() {
        return Err("--max-dim, --max-words and --max-steps must be positive".into());
    }
    let clock = Clock { on: opts.timings };
    let mut inputs = Vec::new();
    let (name, checks) = match &cli.command {
        Command::Validate { inputs: paths } => {
            if paths.is_empty() {
                return Err("validate: no inputs".into());
            }
            let mut checks = Vec::new();
            for p in paths {
                let doc = load(p, &mut inputs)?;
                checks.push(Check::computed("valid", json!({ "path": p.display().to_string(), "kind": doc.kind() })));
            }
            ("validate", checks)
        }
        Command::Pi0 { input } => {
            let result = match load(input, &mut inputs)? {
                Document::SimplicialSet(x) => {
                    let c = pi0(&x);
                    json!({ "count": c.count(), "classes": c.classes })
                }
                Document::SimplicialCategory(c) => json!(core(input, pi0_category(&c))?),
                d => return Err(wrong_kind(input, &d, "simplicial_set or simplicial_category")),
            };
            ("pi0", vec![Check::computed("pi0", result)])
        }
        Command::Homology { input } => {
            let Document::SimplicialSet(x) = load(input, &mut inputs)? else {
                return Err(format!("{}: $.kind: expected simplicial_set", input.display()));
            };
            let mut groups = Vec::new();
            for k in 0..x.dim_bound() {
                let h = core(input, homology(&x, k))?;
                groups.push(json!({ "degree": k, "betti": h.betti, "torsion": h.torsion }));
            }
            ("homology", vec![Check::computed("homology", Value::Array(groups))])
        }
        Command::Kan { input } => {
            let Document::SsetMap(p) = load(input, &mut inputs)? else {
                return Err(format!("{}: $.kind: expected sset_map", input.display()));
            };
            let (v, ms) = clock.time(|| core(input, is_kan_fibration(&p, &budget)))?;
            ("kan", vec![timed(decide("kan-fibration", v, Claim::KanFibration(&p), &budget), ms)])
        }
        Command::WeqSset { input } => {
            let check = match load(input, &mut inputs)? {
                Document::SsetMap(f) => {
                    let (v, ms) = clock.time(|| core(input, is_weak_equivalence_sset(&f, &budget)))?;
                    timed(decide("weak-equivalence", v, Claim::WeakEquivalenceSset(&f), &budget), ms)
                }
                Document::SimplicialSet(x) => {
                    let (v, ms) = clock.time(|| Ok(is_weakly_contractible(&x, &budget)))?;
                    timed(decide("weakly-contractible", v, Claim::WeaklyContractible(&x), &budget), ms)
                }
                d => return Err(wrong_kind(input, &d, "sset_map or simplicial_set")),
            };
            ("weq-sset", vec![check])
        }
        Command::DkCheck { input } => {
            let f = functor(input, &mut inputs)?;
            let (v, ms) = clock.time(|| core(input, is_dk_equivalence(&f, &budget)))?;
            ("dk-check", vec![timed(decide("dk-equivalence", v, Claim::DkEquivalence(&f), &budget), ms)])
        }
        Command::FibCheck { input } => {
            let f = functor(input, &mut inputs)?;
            let (v, ms) = clock.time(|| core(input, is_fibration(&f, &budget)))?;
            ("fib-check", vec![timed(decide("fibration", v, Claim::Fibration(&f), &budget), ms)])
        }
        Command::AfibCheck { input } => {
            let f = functor(input, &mut inputs)?;
            let (a, ms_a) = clock.time(|| core(input, is_acyclic_fibration(&f, &budget)))?;
            let (b, ms_b) = clock.time(|| core(input, is_acyclic_fibration_lifting(&f, &budget)))?;
            let checks = vec![
                timed(decide("acyclic-fibration/definitional", a, Claim::AcyclicFibration(&f), &budget), ms_a),
                timed(decide("acyclic-fibration/lifting", b, Claim::AcyclicFibration(&f), &budget), ms_b),
            ];
            ("afib-check", checks)
        }
        Command::Lift { input } => {
            let Document::LiftingProblem(p) = load(input, &mut inputs)? else {
                return Err(format!("{}: $.kind: expected lifting_problem", input.display()));
            };
            let (v, ms) = clock.time(|| core(input, solve_lifting(&p, &budget)))?;
            let no = v.is_no();
            let mut check = timed(decide("lift", v, Claim::Lifting(&p), &budget), ms);
            if no {
                let square = FunctorSquare { top: p.top.data(), bottom: p.bottom.data() };
                check = check.with_result(json!({ "unliftable_square": square }));
            }
            ("lift", vec![check])
        }
        Command::Rlp { input, against, family: fam, n } => {
            let check = match load(input, &mut inputs)? {
                Document::SsetMap(p) => {
                    let Some(path) = against else {
                        return Err("rlp: a map of simplicial sets needs a second map to lift against".into());
                    };
                    let Document::SsetMap(i) = load(path, &mut inputs)? else {
                        return Err(format!("{}: $.kind: expected sset_map", path.display()));
                    };
                    let (v, ms) = clock.time(|| core(input, has_rlp_sset(&p, &i, &budget)))?;
                    timed(decide("rlp", v, Claim::RlpSset { p: &p, i: &i }, &budget), ms)
                }
                Document::Functor(f) => {
                    let gens = generators(against.as_deref(), *fam, *n, &f, &budget, &mut inputs)?;
                    let gens: Vec<_> = gens.into_iter().map(|g| g.functor).collect();
                    let (v, ms) = clock.time(|| core(input, has_rlp_against_set(&f, &gens, &budget)))?;
                    timed(decide("rlp", v, Claim::RlpSet { f: &f, gens: &gens }, &budget), ms)
                }
                d => return Err(wrong_kind(input, &d, "functor or sset_map")),
            };
            ("rlp", vec![check])
        }
        Command::Factor { input, generators: file, family: fam, n } => {
            let f = functor(input, &mut inputs)?;
            let gens = generators(file.as_deref(), *fam, *n, &f, &budget, &mut inputs)?;
            let (fac, ms) = clock.time(|| core(input, factor_bounded(&f, &gens, &budget)))?;
            let composite = core(input, fac.p.after(&fac.i))?.data() == f.data();
            let result = json!({
                "complete": fac.is_complete(),
                "stopped": fac.stopped,
                "composite_matches": composite,
                "cells": fac.cells,
                "i": fac.i,
                "p": fac.p,
            });
            let check = if fac.is_complete() && composite {
                Check::computed("factorization", result)
            } else {
                Check::decision("factorization", &Verdict::Unknown(UnknownReason::BudgetExhausted), composite)
                    .with_result(result)
            };
            ("factor", vec![timed(check, ms)])
        }
        Command::A2Check { input } => {
            let Document::MarkedFunctor(m) = load(input, &mut inputs)? else {
                return Err(format!("{}: $.kind: expected marked_functor", input.display()));
            };
            let (v, ms) = clock.time(|| core(input, is_a2_candidate(&m.functor, &m.marking, &budget)))?;
            let claim = Claim::A2Candidate { inc: &m.functor, marking: &m.marking };
            ("a2-check", vec![timed(decide("a2-candidate", v, claim, &budget), ms)])
        }
        Command::BuildH { input } => {
            let Document::BuildInput(b) = load(input, &mut inputs)? else {
                return Err(format!("{}: $.kind: expected build_input", input.display()));
            };
            let (out, ms) = clock.time(|| core(input, build_h(&b.start, &b.target, &budget)))?;
            let result = json!({
                "stopped": out.stopped,
                "record": out.record,
                "marking": out.marking,
                "h": out.h,
                "inclusion": out.inclusion,
                "to_g": out.to_g,
            });
            let v = match out.stopped {
                None => core(input, is_a2_candidate(&out.inclusion, &out.marking, &budget))?,
                Some(_) => Verdict::Unknown(UnknownReason::BudgetExhausted),
            };
            let claim = Claim::A2Candidate { inc: &out.inclusion, marking: &out.marking };
            ("build-h", vec![timed(decide("build-h", v, claim, &budget).with_result(result), ms)])
        }
        Command::Gen { family: fam, n, dim_bound } => {
            let gens = family(*fam, *n, *dim_bound).map_err(|e| format!("gen: {e}"))?;
            emit(opts, &io::to_string(&Document::GeneratorSet { generators: gens }))?;
            return Ok(0);
        }
        Command::Corpus { count, max_objects, dim_bound, max_nondegenerate } => {
            let caps = CorpusCaps { max_objects: *max_objects, dim_bound: *dim_bound, max_nondegenerate: *max_nondegenerate };
            let Some(dir) = &opts.out else {
                return Err("corpus: --out <DIR> is required".into());
            };
            let text = corpus(dir, opts.seed, *count, &caps, &budget)?;
            print!("{text}");
            return Ok(0);
        }
    };
    let report = Report::new(name, budget, inputs, checks);
    let text = match opts.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    emit(opts, &text)?;
    Ok(report.exit_code())
}

fn timed(mut c: Check, ms: Option<u64>) -> Check {
    c.wall_ms = ms;
    c
}

fn functor(path: &Path, inputs: &mut Vec<InputDigest>) -> Outcome<sccat_core::scat::SFunctor> {
    match load(path, inputs)? {
        Document::Functor(f) => Ok(f),
        d => Err(wrong_kind(path, &d, "functor")),
    }
}

/// Generators from a file, else the family up to `n` (default: the budget's
/// dimension capped by the functor's bound).
fn generators(
    file: Option<&Path>,
    fam: Family,
    n: Option<usize>,
    f: &sccat_core::scat::SFunctor,
    budget: &Budget,
    inputs: &mut Vec<InputDigest>,
) -> Outcome<Vec<Generator>> {
    let d = f.source().dim_bound();
    if let Some(path) = file {
        return match load(path, inputs)? {
            Document::GeneratorSet { generators } => {
                if let Some(i) = generators.iter().position(|g| g.functor.source().dim_bound() != d) {
                    return Err(format!("{}: $.generators[{i}]: dimension bound differs from the functor's", path.display()));
                }
                Ok(generators)
            }
            doc => Err(wrong_kind(path, &doc, "generator_set")),
        };
    }
    family(fam, n.unwrap_or(budget.max_dim.min(d)), d).map_err(|e| format!("generators: {e}"))
}

/// Writes `categories/`, `functors/` and `manifest.json` under `dir`, and
/// returns the manifest text.
fn corpus(dir: &Path, seed: u64, count: usize, caps: &CorpusCaps, budget: &Budget) -> Outcome<String> {
    let err = |p: &Path, e: std::io::Error| format!("{}: {e}", p.display());
    let pool = seeded_pool(seed, caps).map_err(|e| format!("corpus: {e}"))?;
    let functors = functor_corpus(seed, count, caps).map_err(|e| format!("corpus: {e}"))?;
    let (cat_dir, fun_dir) = (dir.join("categories"), dir.join("functors"));
    for d in [&cat_dir, &fun_dir] {
        fs::create_dir_all(d).map_err(|e| err(d, e))?;
    }
    let mut entries = Vec::new();
    for (i, c) in pool.iter().enumerate() {
        if !c.category.validate().is_empty() {
            return Err(format!("corpus: category {} failed validation", c.name));
        }
        let rel = PathBuf::from("categories").join(format!("{i:03}-{}.json", c.name));
        let text = io::to_string(&Document::SimplicialCategory((*c.category).clone()));
        write(dir, &rel, &text)?;
        entries.push(json!({ "path": rel.display().to_string(), "sha256": digest(&text) }));
    }
    let (mut non_fibrations, mut non_equivalences) = (0, 0);
    let mut functor_entries = Vec::new();
    for (i, nf) in functors.iter().enumerate() {
        nf.functor.validate().map_err(|e| format!("corpus: functor {}: {e}", nf.name))?;
        let fib = is_fibration(&nf.functor, budget).map_err(|e| format!("corpus: {e}"))?;
        let dk = is_dk_equivalence(&nf.functor, budget).map_err(|e| format!("corpus: {e}"))?;
        non_fibrations += fib.is_no() as usize;
        non_equivalences += dk.is_no() as usize;
        let rel = PathBuf::from("functors").join(format!("{i:03}-{}.json", nf.name));
        let text = io::to_string(&Document::Functor(nf.functor.clone()));
        write(dir, &rel, &text)?;
        functor_entries.push(json!({
            "path": rel.display().to_string(),
            "sha256": digest(&text),
            "fibration": fib.label(),
            "dk_equivalence": dk.label(),
        }));
    }
    let manifest = json!({
        "tool": "sccat",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "caps": caps,
        "budget": budget,
        "categories": entries,
        "functors": functor_entries,
        "non_fibrations": non_fibrations,
        "non_dk_equivalences": non_equivalences,
    });
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write(dir, Path::new("manifest.json"), &text)?;
    Ok(text)
}

fn write(dir: &Path, rel: &Path, text: &str) -> Outcome<()> {
    let p = dir.join(rel);
    fs::write(&p, text).map_err(|e| format!("{}: {e}", p.display()))
}

fn digest(text: &str) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(text.as_bytes()))
}
