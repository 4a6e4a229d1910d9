//! Exhaustive cross-checks of the fast algorithms against brute-force
//! oracles on small instances.

use serde::{Deserialize, Serialize};

use crate::alcove::{geometric_residue_equivalent, step_residues};
use crate::branching::{all_paths, vertices_at_level, DimensionTable};
use crate::error::Result;
use crate::modules::{decomposition_row, simple_dimension_verified, SimpleDimensions};
use crate::residues::{
    linkage_classes, linkage_classes_brute_force, residue_equivalent, residue_vector,
};

pub const SELFTEST_MAX_LEVEL: usize = 7;
pub const SELFTEST_MAX_N: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> Self {
        SuiteOutcome {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Runs every suite for levels `≤ max_level` and `0 ≤ n ≤ max_n`.
pub fn run_selftest(max_level: usize, max_n: i64) -> Result<Vec<SuiteOutcome>> {
    Ok(vec![
        bell_identity(max_level)?,
        simple_dimensions(max_level, max_n)?,
        decomposition_bookkeeping(max_level, max_n)?,
        step_residue_formula(max_level, max_n)?,
        geometric_residues(max_level, max_n)?,
        linkage(max_level, max_n)?,
    ])
}

fn bell(k: usize) -> u64 {
    // Bell triangle
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

fn bell_identity(max_level: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("cell dimensions square-sum to Bell numbers");
    let table = DimensionTable::up_to(max_level)?;
    for k in 0..=max_level {
        let total: u64 = vertices_at_level(k)
            .iter()
            .map(|v| table.get(v).unwrap().pow(2))
            .sum();
        out.check(total == bell(k), || {
            format!("level {k}: {total} != {}", bell(k))
        });
    }
    Ok(out)
}

fn simple_dimensions(max_level: usize, max_n: i64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("simple dimensions: paths, restriction and chain agree");
    for k in 0..=max_level {
        for n in 0..=max_n {
            for v in vertices_at_level(k) {
                let r = simple_dimension_verified(&v, n);
                out.check(r.is_ok(), || {
                    format!("{v} n={n}: {}", r.clone().unwrap_err())
                });
            }
        }
    }
    Ok(out)
}

fn decomposition_bookkeeping(max_level: usize, max_n: i64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("decomposition rows account for cell dimensions");
    for n in 0..=max_n {
        let mut dims = SimpleDimensions::new(n, max_level)?;
        for k in 0..=max_level {
            for v in vertices_at_level(k) {
                let row = decomposition_row(&v, n);
                let mut total = 0;
                for (w, m) in &row.factors {
                    total += m * dims.get(w)?;
                }
                let cell = dims.cell(&v)?;
                out.check(total == cell, || {
                    format!("{v} n={n}: factors sum to {total}, cell {cell}")
                });
            }
        }
    }
    Ok(out)
}

fn step_residue_formula(max_level: usize, max_n: i64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("step residues equal residue vectors");
    for k in 0..=max_level {
        for t in all_paths(k)? {
            for n in 0..=max_n {
                let (a, b) = (step_residues(&t, n), residue_vector(&t, n).values);
                out.check(a == b, || format!("{t} n={n}: {a:?} != {b:?}"));
            }
        }
    }
    Ok(out)
}

fn geometric_residues(max_level: usize, max_n: i64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("geometric and residue equivalence of paths agree");
    for k in 0..=max_level {
        let paths = all_paths(k)?;
        for n in 0..=max_n {
            for s in &paths {
                for t in &paths {
                    let (g, r) = (
                        geometric_residue_equivalent(s, t, n)?,
                        residue_equivalent(s, t, n)?,
                    );
                    out.check(g == r, || {
                        format!("{s} vs {t} n={n}: geometric {g}, residue {r}")
                    });
                }
            }
        }
    }
    Ok(out)
}

fn linkage(max_level: usize, max_n: i64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("linkage classes from chains match brute force");
    for k in 0..=max_level {
        for n in 0..=max_n {
            let ok = linkage_classes(k, n) == linkage_classes_brute_force(k, n)?;
            out.check(ok, || format!("level {k} n={n}"));
        }
    }
    Ok(out)
}
