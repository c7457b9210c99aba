//! Finitely presented groups: abelianization and coset enumeration.

use serde::{Deserialize, Serialize};

use super::snf::{narrow, smith_normal_form, Int, IntMatrix};
use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::verdict::{Evidence, UnknownReason, Verdict};

/// Words are lists of nonzero integers: `g + 1` for generator `g`, `-(g + 1)` for its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i64>>) -> Result<Self> {
        let p = GroupPresentation { generators, relators };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.generators.len() as i64;
        for r in &self.relators {
            if let Some(&bad) = r.iter().find(|&&l| l == 0 || l.abs() > n) {
                return Err(Error::OutOfRange(format!("relator letter {bad} with {n} generators")));
            }
        }
        Ok(())
    }

    /// Free rank and torsion coefficients (> 1) of the abelianization.
    pub fn abelianization(&self) -> (usize, Vec<i64>) {
        let n = self.generators.len();
        let rows: Vec<Vec<Int>> = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![0 as Int; n];
                for &l in r {
                    row[(l.unsigned_abs() - 1) as usize] += Int::from(l.signum());
                }
                row
            })
            .collect();
        let m = if rows.is_empty() { IntMatrix::zeros(0, n) } else { IntMatrix::from_rows(&rows) };
        let snf = smith_normal_form(&m);
        let factors = snf.invariant_factors();
        (n - factors.len(), factors.into_iter().filter(|&d| d > 1).map(narrow).collect())
    }
}

const NONE: usize = usize::MAX;

/// Coset table for the trivial subgroup, Hasselgrove–Leech–Trotter style.
struct CosetTable {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    live: usize,
    cap: usize,
}

fn col(letter: i64) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

fn inv(c: usize) -> usize {
    c ^ 1
}

enum Stop {
    Overflow,
}

impl CosetTable {
    fn new(gens: usize, cap: usize) -> Self {
        CosetTable { cols: 2 * gens, table: vec![vec![NONE; 2 * gens]], parent: vec![0], live: 1, cap }
    }

    fn define(&mut self, c: usize, x: usize, meter: &mut Meter) -> std::result::Result<(), Stop> {
        if self.table.len() >= self.cap || !meter.tick() {
            return Err(Stop::Overflow);
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][x] = d;
        self.table[d][inv(x)] = c;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut cur = c;
        while self.parent[cur] != r {
            let next = self.parent[cur];
            self.parent[cur] = r;
            cur = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        self.live -= 1;
        queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                self.table[f][inv(x)] = NONE;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t, &mut queue);
                } else if self.table[f1][inv(x)] != NONE {
                    let t = self.table[f1][inv(x)];
                    self.merge(e1, t, &mut queue);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][inv(x)] = e1;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize], meter: &mut Meter) -> std::result::Result<(), Stop> {
        let (mut f, mut b) = (c, c);
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][word[i]] != NONE {
                f = self.table[f][word[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][inv(word[j as usize])] != NONE {
                b = self.table[b][inv(word[j as usize])];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][word[i]] = b;
                self.table[b][inv(word[i])] = f;
                return Ok(());
            }
            self.define(f, word[i], meter)?;
        }
    }

    /// Runs to completion; returns the index of the trivial subgroup (the group order).
    fn enumerate(&mut self, relators: &[Vec<usize>], meter: &mut Meter) -> std::result::Result<usize, Stop> {
        let mut c = 0;
        while c < self.table.len() {
            for r in relators {
                if self.parent[c] != c {
                    break;
                }
                self.scan_and_fill(c, r, meter)?;
            }
            for x in 0..self.cols {
                if self.parent[c] != c {
                    break;
                }
                if self.table[c][x] == NONE {
                    self.define(c, x, meter)?;
                }
            }
            c += 1;
        }
        Ok(self.live)
    }
}

/// Order of the group if coset enumeration closes within the step cap.
pub fn group_order(p: &GroupPresentation, budget: &Budget) -> Option<usize> {
    let relators: Vec<Vec<usize>> =
        p.relators.iter().filter(|r| !r.is_empty()).map(|r| r.iter().map(|&l| col(l)).collect()).collect();
    let mut meter = Meter::new(budget.max_steps);
    let mut table = CosetTable::new(p.generators.len(), budget.max_steps.max(1));
    table.enumerate(&relators, &mut meter).ok()
}

/// `No` on a nonzero abelianization or a finite nontrivial group, `Yes` when
/// enumeration closes on one coset, `Unknown` otherwise.
pub fn is_trivial_group(p: &GroupPresentation, budget: &Budget) -> Verdict {
    let (free_rank, torsion) = p.abelianization();
    if free_rank > 0 || !torsion.is_empty() {
        return Verdict::No(Evidence::Abelianization { free_rank, torsion });
    }
    if p.generators.is_empty() {
        return Verdict::Yes(Evidence::TrivialGroup { cosets: 1 });
    }
    match group_order(p, budget) {
        Some(1) => Verdict::Yes(Evidence::TrivialGroup { cosets: 1 }),
        Some(order) => Verdict::No(Evidence::FiniteGroup { order }),
        None => Verdict::Unknown(UnknownReason::UndecidedGroup),
    }
}
