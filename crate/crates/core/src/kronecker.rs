//! Symmetric-group characters by the Murnaghan–Nakayama rule, Kronecker
//! coefficients, their stable limits and the monotonicity check.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modules::min_semisimple_parameter;
use crate::partitions::Partition;

/// Largest `n` for which character tables are built by default.
pub const DEFAULT_MAX_N: usize = 16;

/// `λ_[n] = (n − |λ|, λ_1, λ_2, …)`; `padded` is `None` when that is not a
/// partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PaddedPartition {
    pub base: Partition,
    pub n: usize,
    pub padded: Option<Partition>,
}

impl PaddedPartition {
    pub fn is_valid(&self) -> bool {
        self.padded.is_some()
    }
}

pub fn pad(lambda: &Partition, n: usize) -> PaddedPartition {
    let padded = n
        .checked_sub(lambda.size())
        .filter(|&head| head >= lambda.first())
        .map(|head| {
            let mut parts = vec![head];
            parts.extend_from_slice(lambda.parts());
            parts.retain(|&p| p > 0);
            Partition::new(parts).expect("weakly decreasing")
        });
    PaddedPartition {
        base: lambda.clone(),
        n,
        padded,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleType {
    pub parts: Partition,
    pub class_size: u128,
}

impl CycleType {
    pub fn new(parts: Partition) -> Result<Self> {
        let mut size = factorial(parts.size())?;
        let mut multiplicities: HashMap<usize, usize> = HashMap::new();
        for &p in parts.parts() {
            *multiplicities.entry(p).or_default() += 1;
        }
        for (&part, &m) in &multiplicities {
            let centralizer = (part as u128)
                .checked_pow(m as u32)
                .and_then(|x| x.checked_mul(factorial(m).ok()?))
                .ok_or(Error::Overflow("centralizer order"))?;
            size /= centralizer;
        }
        Ok(CycleType {
            parts,
            class_size: size,
        })
    }

    pub fn all(n: usize) -> Result<Vec<CycleType>> {
        Partition::all_of_size(n)
            .into_iter()
            .map(CycleType::new)
            .collect()
    }
}

pub fn factorial(n: usize) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, i| {
        acc.checked_mul(i).ok_or(Error::Overflow("factorial"))
    })
}

/// Character values memoized on `(shape, remaining cycle parts)`.
#[derive(Debug, Default, Clone)]
pub struct CharacterTable {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, shape: &Partition, cycle: &Partition) -> Result<i64> {
        if shape.size() != cycle.size() {
            return Err(Error::Mismatch(format!(
                "character of a partition of {} on a class of {}",
                shape.size(),
                cycle.size()
            )));
        }
        self.mn(shape.parts(), cycle.parts())
    }

    fn mn(&mut self, shape: &[usize], cycle: &[usize]) -> Result<i64> {
        if cycle.is_empty() {
            return Ok(1);
        }
        let key = (shape.to_vec(), cycle.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        let r = cycle[0];
        let rest = &cycle[1..];
        // beta-numbers b_i = λ_i + (len − i), strictly decreasing
        let len = shape.len();
        let beta: Vec<usize> = (0..len).map(|i| shape[i] + len - 1 - i).collect();
        let mut total = 0i64;
        for i in 0..len {
            let Some(target) = beta[i].checked_sub(r) else {
                continue;
            };
            if beta.contains(&target) {
                continue;
            }
            let between = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
            let mut moved = beta.clone();
            moved[i] = target;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let sub: Vec<usize> = (0..len)
                .map(|m| moved[m] - (len - 1 - m))
                .filter(|&p| p > 0)
                .collect();
            let value = self.mn(&sub, rest)?;
            let signed = if between % 2 == 0 { value } else { -value };
            total = total
                .checked_add(signed)
                .ok_or(Error::Overflow("character value"))?;
        }
        self.memo.insert(key, total);
        Ok(total)
    }
}

pub fn mn_character(shape: &Partition, cycle: &CycleType) -> Result<i64> {
    CharacterTable::new().value(shape, &cycle.parts)
}

/// Holds the class list and character cache per `n`.
#[derive(Debug, Clone)]
pub struct KroneckerEngine {
    max_n: usize,
    classes: HashMap<usize, Vec<CycleType>>,
    characters: CharacterTable,
    values: HashMap<(Partition, usize), Vec<i64>>,
}

impl Default for KroneckerEngine {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_N)
    }
}

impl KroneckerEngine {
    pub fn new(max_n: usize) -> Self {
        KroneckerEngine {
            max_n,
            classes: HashMap::new(),
            characters: CharacterTable::new(),
            values: HashMap::new(),
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::ResourceBound {
                what: "Kronecker n",
                requested: n,
                bound: self.max_n,
            });
        }
        Ok(())
    }

    pub fn classes(&mut self, n: usize) -> Result<&[CycleType]> {
        self.check_n(n)?;
        if let std::collections::hash_map::Entry::Vacant(e) = self.classes.entry(n) {
            e.insert(CycleType::all(n)?);
        }
        Ok(&self.classes[&n])
    }

    /// The character of `shape` on every class of its size, in class order.
    pub fn character(&mut self, shape: &Partition) -> Result<Vec<i64>> {
        let n = shape.size();
        if let Some(v) = self.values.get(&(shape.clone(), n)) {
            return Ok(v.clone());
        }
        let classes: Vec<Partition> = self.classes(n)?.iter().map(|c| c.parts.clone()).collect();
        let row = classes
            .iter()
            .map(|c| self.characters.value(shape, c))
            .collect::<Result<Vec<_>>>()?;
        self.values.insert((shape.clone(), n), row.clone());
        Ok(row)
    }

    /// `(1/n!) Σ_C |C| χ^a(C) χ^b(C) χ^c(C)` for three partitions of `n`.
    pub fn coefficient_of_shapes(
        &mut self,
        a: &Partition,
        b: &Partition,
        c: &Partition,
    ) -> Result<u64> {
        let n = a.size();
        if b.size() != n || c.size() != n {
            return Err(Error::Mismatch(format!(
                "partitions of {}, {}, {}",
                n,
                b.size(),
                c.size()
            )));
        }
        let (xa, xb, xc) = (self.character(a)?, self.character(b)?, self.character(c)?);
        let sizes: Vec<u128> = self.classes(n)?.iter().map(|c| c.class_size).collect();
        let overflow = || Error::Overflow("Kronecker character sum");
        let mut sum = 0i128;
        for i in 0..sizes.len() {
            let term = i128::try_from(sizes[i])
                .ok()
                .and_then(|s| s.checked_mul(i128::from(xa[i])))
                .and_then(|s| s.checked_mul(i128::from(xb[i])))
                .and_then(|s| s.checked_mul(i128::from(xc[i])))
                .ok_or_else(overflow)?;
            sum = sum.checked_add(term).ok_or_else(overflow)?;
        }
        let order = i128::try_from(factorial(n)?).map_err(|_| overflow())?;
        if sum % order != 0 || sum < 0 {
            return Err(Error::Inconsistent(format!(
                "character sum {sum} for {a}, {b}, {c} is not a nonnegative multiple of {n}!"
            )));
        }
        u64::try_from(sum / order).map_err(|_| overflow())
    }

    pub fn kronecker_coefficient(
        &mut self,
        a: &PaddedPartition,
        b: &PaddedPartition,
        c: &PaddedPartition,
    ) -> Result<u64> {
        if a.n != b.n || a.n != c.n {
            return Err(Error::Mismatch(format!(
                "padded to n = {}, {}, {}",
                a.n, b.n, c.n
            )));
        }
        let shapes = [a, b, c]
            .iter()
            .map(|p| {
                p.padded.clone().ok_or_else(|| {
                    Error::Precondition(format!(
                        "{} cannot be padded to n = {}",
                        p.base.pretty(),
                        p.n
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.coefficient_of_shapes(&shapes[0], &shapes[1], &shapes[2])
    }

    /// `g_n` from the first `n` at which all three pads are valid through
    /// `n_max`.
    pub fn kronecker_sequence(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        n_max: usize,
    ) -> Result<Vec<SequenceEntry>> {
        self.check_n(n_max)?;
        let start = first_valid_n(&[lambda, mu, nu]);
        let mut out = Vec::new();
        for n in start..=n_max {
            let (a, b, c) = (pad(lambda, n), pad(mu, n), pad(nu, n));
            let valid = a.is_valid() && b.is_valid() && c.is_valid();
            let g = if valid {
                self.kronecker_coefficient(&a, &b, &c)?
            } else {
                0
            };
            out.push(SequenceEntry { n, g, valid });
        }
        Ok(out)
    }

    /// `(ḡ, n₀)`.
    pub fn stable_kronecker(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
    ) -> Result<(u64, usize)> {
        let n0 = stable_point(lambda, mu, nu);
        if nu.size() > lambda.size() + mu.size() {
            return Ok((0, n0));
        }
        let g = self.kronecker_coefficient(&pad(lambda, n0), &pad(mu, n0), &pad(nu, n0))?;
        Ok((g, n0))
    }

    pub fn kronecker_result(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        n_max: usize,
    ) -> Result<KroneckerResult> {
        let sequence = self.kronecker_sequence(lambda, mu, nu, n_max)?;
        let (stable, stable_at) = self.stable_kronecker(lambda, mu, nu)?;
        Ok(KroneckerResult {
            lambda: lambda.clone(),
            mu: mu.clone(),
            nu: nu.clone(),
            sequence,
            stable,
            stable_at,
        })
    }

    /// Checks `g_n ≤ g_{n+1}` and `g_n ≤ ḡ` through `n_max`.
    pub fn check_monotone(
        &mut self,
        lambda: &Partition,
        mu: &Partition,
        nu: &Partition,
        n_max: usize,
    ) -> Result<MonotoneReport> {
        let result = self.kronecker_result(lambda, mu, nu, n_max)?;
        let mut violations = Vec::new();
        for w in result.sequence.windows(2) {
            if w[0].g > w[1].g {
                violations.push(format!(
                    "g({}) = {} > g({}) = {}",
                    w[0].n, w[0].g, w[1].n, w[1].g
                ));
            }
        }
        for e in &result.sequence {
            if e.g > result.stable {
                violations.push(format!(
                    "g({}) = {} exceeds stable value {}",
                    e.n, e.g, result.stable
                ));
            }
            if e.n >= result.stable_at && e.g != result.stable {
                violations.push(format!(
                    "g({}) = {} differs from stable value {}",
                    e.n, e.g, result.stable
                ));
            }
        }
        let tail = result
            .sequence
            .iter()
            .rev()
            .take_while(|e| e.g == result.stable)
            .count();
        let first_stable = (tail > 0).then(|| result.sequence[result.sequence.len() - tail].n);
        Ok(MonotoneReport {
            pass: violations.is_empty(),
            result,
            first_stable,
            violations,
        })
    }
}

/// The smallest `n` with every pad valid.
pub fn first_valid_n(shapes: &[&Partition]) -> usize {
    shapes
        .iter()
        .map(|p| p.size() + p.first())
        .max()
        .unwrap_or(0)
}

/// `n₀ = max(min semisimple n at level 2p, first valid n)`, `p = |λ| + |μ|`.
pub fn stable_point(lambda: &Partition, mu: &Partition, nu: &Partition) -> usize {
    let p = lambda.size() + mu.size();
    let semisimple = min_semisimple_parameter(2 * p) as usize;
    semisimple.max(first_valid_n(&[lambda, mu, nu]))
}

pub fn kronecker_coefficient(
    a: &PaddedPartition,
    b: &PaddedPartition,
    c: &PaddedPartition,
) -> Result<u64> {
    KroneckerEngine::default().kronecker_coefficient(a, b, c)
}

pub fn kronecker_sequence(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n_max: usize,
) -> Result<Vec<SequenceEntry>> {
    KroneckerEngine::default().kronecker_sequence(lambda, mu, nu, n_max)
}

pub fn stable_kronecker(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<(u64, usize)> {
    KroneckerEngine::default().stable_kronecker(lambda, mu, nu)
}

pub fn check_monotone(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    n_max: usize,
) -> Result<MonotoneReport> {
    KroneckerEngine::default().check_monotone(lambda, mu, nu, n_max)
}

/// Serialized as `[n, g, valid]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, u64, bool)", into = "(usize, u64, bool)")]
pub struct SequenceEntry {
    pub n: usize,
    pub g: u64,
    pub valid: bool,
}

impl From<(usize, u64, bool)> for SequenceEntry {
    fn from((n, g, valid): (usize, u64, bool)) -> Self {
        SequenceEntry { n, g, valid }
    }
}

impl From<SequenceEntry> for (usize, u64, bool) {
    fn from(e: SequenceEntry) -> Self {
        (e.n, e.g, e.valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KroneckerResult {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub sequence: Vec<SequenceEntry>,
    pub stable: u64,
    pub stable_at: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub pass: bool,
    pub result: KroneckerResult,
    /// Smallest `n` from which the observed sequence is constant at `ḡ`.
    pub first_stable: Option<usize>,
    pub violations: Vec<String>,
}
