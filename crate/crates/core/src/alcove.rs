//! The embedding of the branching graph into `ℤ^∞`, its walls and alcoves,
//! the reflections `s_{0,j}`, and the geometric description of residue
//! equivalence.
//!
//! A vertex `(λ, k)` maps to `x = (x_0, x_1, x_2, …)` with
//! `x_0 = n − |λ|` (even `k`) or `n − 1 − |λ|` (odd `k`) and
//! `x_i = λ_i − i` for `i ≥ 1`. Beyond the last part the coordinates follow
//! the staircase `x_i = −i`, so every point has a finite description.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::branching::{Path, Vertex};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// A point of `ℤ^∞` that agrees with the staircase `x_i = −i` beyond a
/// finite prefix. The prefix is kept trimmed, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coordinates(Vec<i64>);

impl Coordinates {
    pub fn new(mut prefix: Vec<i64>) -> Self {
        while prefix.len() > 1 && prefix[prefix.len() - 1] == -(prefix.len() as i64 - 1) {
            prefix.pop();
        }
        if prefix.is_empty() {
            prefix.push(0);
        }
        Coordinates(prefix)
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(-(i as i64))
    }

    /// Coordinates `x_0..=x_last` explicitly.
    pub fn prefix(&self, last: usize) -> Vec<i64> {
        (0..=last).map(|i| self.get(i)).collect()
    }

    /// Index past which every coordinate equals the staircase.
    pub fn support(&self) -> usize {
        self.0.len()
    }

    pub fn swap(&self, i: usize, j: usize) -> Coordinates {
        let mut v = self.prefix(i.max(j).max(self.support()));
        v.swap(i, j);
        Coordinates::new(v)
    }

    pub fn add_unit(&self, i: usize, delta: i64) -> Coordinates {
        let mut v = self.prefix(i.max(self.support()));
        v[i] += delta;
        Coordinates::new(v)
    }

    /// If `other = self ± ε_i`, returns `(i, ±1)`.
    pub fn unit_difference(&self, other: &Coordinates) -> Option<(usize, i64)> {
        let len = self.support().max(other.support());
        let diffs: Vec<(usize, i64)> = (0..len)
            .map(|i| (i, other.get(i) - self.get(i)))
            .filter(|&(_, d)| d != 0)
            .collect();
        match diffs.as_slice() {
            [(i, d)] if d.abs() == 1 => Some((*i, *d)),
            _ => None,
        }
    }

    /// Recovers the vertex at `level` whose image under `φ_n` is this point,
    /// if there is one.
    pub fn to_vertex(&self, level: usize, n: i64) -> Option<Vertex> {
        let mut parts = Vec::new();
        for i in 1..self.support().max(2) {
            let part = self.get(i) + i as i64;
            if part < 0 {
                return None;
            }
            parts.push(part as usize);
        }
        let shape = Partition::new(parts).ok()?;
        let head = if level % 2 == 0 { n } else { n - 1 } - shape.size() as i64;
        if head != self.get(0) || shape.size() > level / 2 {
            return None;
        }
        Some(Vertex { shape, level })
    }
}

/// `(x0 | x1,x2,…,xm, …)` up to the last coordinate off the staircase.
impl fmt::Display for Coordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail: Vec<String> = (1..self.support().max(2))
            .map(|i| self.get(i).to_string())
            .collect();
        write!(f, "({} | {}, …)", self.get(0), tail.join(","))
    }
}

/// `φ_n(λ, k)` together with the data it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddedPoint {
    pub head: i64,
    pub shape: Partition,
    pub odd_level: bool,
    pub n: i64,
}

impl EmbeddedPoint {
    pub fn coord(&self, i: usize) -> i64 {
        if i == 0 {
            self.head
        } else {
            self.shape.part(i) as i64 - i as i64
        }
    }

    pub fn coordinates(&self) -> Coordinates {
        Coordinates::new((0..=self.shape.len() + 1).map(|i| self.coord(i)).collect())
    }
}

impl fmt::Display for EmbeddedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coordinates().fmt(f)
    }
}

pub fn embed(v: &Vertex, n: i64) -> EmbeddedPoint {
    let odd_level = v.level % 2 == 1;
    let base = if odd_level { n - 1 } else { n };
    EmbeddedPoint {
        head: base - v.shape.size() as i64,
        shape: v.shape.clone(),
        odd_level,
        n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlcovePosition {
    Alcove(usize),
    Wall(usize),
}

impl AlcovePosition {
    pub fn is_wall(self) -> bool {
        matches!(self, AlcovePosition::Wall(_))
    }

    pub fn index(self) -> usize {
        match self {
            AlcovePosition::Alcove(j) | AlcovePosition::Wall(j) => j,
        }
    }
}

impl fmt::Display for AlcovePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlcovePosition::Alcove(j) => write!(f, "Alcove({j})"),
            AlcovePosition::Wall(j) => write!(f, "Wall({j})"),
        }
    }
}

/// Locates a point whose coordinates `x_1 > x_2 > …` strictly decrease.
pub fn classify_coordinates(x: &Coordinates) -> AlcovePosition {
    let x0 = x.get(0);
    let mut j = 1;
    loop {
        let xj = x.get(j);
        if x0 == xj {
            return AlcovePosition::Wall(j);
        }
        if x0 > xj {
            return AlcovePosition::Alcove(j);
        }
        j += 1;
    }
}

pub fn classify(x: &EmbeddedPoint) -> AlcovePosition {
    classify_coordinates(&x.coordinates())
}

pub fn position(v: &Vertex, n: i64) -> AlcovePosition {
    classify(&embed(v, n))
}

/// `s_{0,j}` applied to `φ_n(v)`, with the vertex at the same level it is
/// the image of, when there is one.
pub fn reflect(x: &EmbeddedPoint, j: usize, level: usize) -> (Coordinates, Option<Vertex>) {
    let raw = x.coordinates().swap(0, j);
    let vertex = raw.to_vertex(level, x.n);
    (raw, vertex)
}

/// `(λ, μ)` is an `n`-pair: `μ` is `λ` plus a nonempty segment of a single
/// row whose last box has content `n − |λ|`.
pub fn is_n_pair(lambda: &Partition, mu: &Partition, n: i64) -> bool {
    if !mu.contains(lambda) || mu == lambda {
        return false;
    }
    let rows: Vec<usize> = (1..=mu.len())
        .filter(|&r| mu.part(r) != lambda.part(r))
        .collect();
    match rows.as_slice() {
        [row] => mu.part(*row) as i64 - *row as i64 == n - lambda.size() as i64,
        _ => false,
    }
}

/// The `j ≥ 1` with `φ_n(w) = s_{0,j}(φ_n(v))`, if any. Vertices must share
/// a level and `|shape(v)| < |shape(w)|`.
pub fn npair_reflection_index(v: &Vertex, w: &Vertex, n: i64) -> Result<Option<usize>> {
    if v.level != w.level {
        return Err(Error::Mismatch(format!(
            "{v} and {w} are on different levels"
        )));
    }
    if v.shape.size() >= w.shape.size() {
        return Err(Error::Precondition(format!(
            "expected |{}| < |{}|",
            v.shape.pretty(),
            w.shape.pretty()
        )));
    }
    let x = embed(v, n).coordinates();
    let y = embed(w, n).coordinates();
    let last = x.support().max(y.support());
    Ok((1..=last).find(|&j| x.swap(0, j) == y))
}

pub fn npair_reflection_equiv(v: &Vertex, w: &Vertex, n: i64) -> Result<bool> {
    Ok(npair_reflection_index(v, w, n)?.is_some())
}

/// Which way a neighbour of an alcove point sits, following the trichotomy
/// for edges `y → x` with `x` in the `j`-th alcove.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeCase {
    SameAlcove,
    /// `y` on the `j`-th wall; `y = x + ε_j` or `y = x − ε_0`.
    WallJ(WallApproach),
    /// `y` on the `(j−1)`-th wall; `y = x + ε_0` or `y = x − ε_{j−1}`.
    WallJMinus1(WallApproach),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WallApproach {
    /// `y` differs from `x` in coordinate 0.
    HeadStep,
    /// `y` differs from `x` in coordinate `j` (resp. `j − 1`).
    RowStep,
}

pub fn edge_case(x: &Coordinates, y: &Coordinates) -> Result<EdgeCase> {
    let j = match classify_coordinates(x) {
        AlcovePosition::Alcove(j) => j,
        pos => {
            return Err(Error::Precondition(format!(
                "{x} is on {pos}, not in an alcove"
            )))
        }
    };
    let (i, delta) = x
        .unit_difference(y)
        .ok_or_else(|| Error::Precondition(format!("{y} and {x} are not joined by an edge")))?;
    Ok(match classify_coordinates(y) {
        AlcovePosition::Alcove(jy) if jy == j => EdgeCase::SameAlcove,
        AlcovePosition::Wall(w)
            if w == j && ((i == j && delta == 1) || (i == 0 && delta == -1)) =>
        {
            EdgeCase::WallJ(if i == 0 {
                WallApproach::HeadStep
            } else {
                WallApproach::RowStep
            })
        }
        AlcovePosition::Wall(w)
            if w + 1 == j && ((i == 0 && delta == 1) || (i + 1 == j && delta == -1)) =>
        {
            EdgeCase::WallJMinus1(if i == 0 {
                WallApproach::HeadStep
            } else {
                WallApproach::RowStep
            })
        }
        pos => {
            return Err(Error::Inconsistent(format!(
                "neighbour {y} of {x} (alcove {j}) lies in {pos}"
            )))
        }
    })
}

/// Residues read off the embedded path: `x^{(i)}_j` for a step `+ε_j` and
/// `n − 1 − x^{(i)}_j` for a step `−ε_j`.
pub fn step_residues(t: &Path, n: i64) -> Vec<i64> {
    let points: Vec<Coordinates> = t.vertices().map(|v| embed(&v, n).coordinates()).collect();
    points
        .windows(2)
        .map(|w| {
            let (j, delta) = w[0]
                .unit_difference(&w[1])
                .expect("consecutive embedded vertices differ by a unit vector");
            if delta > 0 {
                w[1].get(j)
            } else {
                n - 1 - w[1].get(j)
            }
        })
        .collect()
}

/// One maximal stretch where two paths disagree. Both paths coincide at
/// `start` on the `wall`-th wall, and at `end` unless `end` is the last level
/// and the paths disagree there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionInterval {
    pub start: usize,
    pub end: usize,
    pub wall: usize,
}

/// Splits the pair into maximal agreement segments and the disagreement
/// intervals between them, and checks each interval: common endpoints on the
/// `j`-th wall, one path in the `j`-th alcove and the other in the
/// `(j+1)`-th throughout, related pointwise by `s_{0,j}`. Returns the
/// intervals when all checks pass.
pub fn reflection_intervals(s: &Path, t: &Path, n: i64) -> Result<Option<Vec<ReflectionInterval>>> {
    if s.len() != t.len() {
        return Err(Error::Mismatch(format!(
            "paths of lengths {} and {}",
            s.len(),
            t.len()
        )));
    }
    let k = t.len();
    let xs: Vec<Coordinates> = t.vertices().map(|v| embed(&v, n).coordinates()).collect();
    let ys: Vec<Coordinates> = s.vertices().map(|v| embed(&v, n).coordinates()).collect();
    let mut intervals = Vec::new();
    let mut i = 0;
    while i <= k {
        if xs[i] == ys[i] {
            i += 1;
            continue;
        }
        // i ≥ 1 since both paths start at (∅, 0)
        let start = i - 1;
        let mut end = i;
        while end <= k && xs[end] != ys[end] {
            end += 1;
        }
        let open_ended = end > k;
        let end = end.min(k);
        let wall = match classify_coordinates(&xs[start]) {
            AlcovePosition::Wall(j) => j,
            AlcovePosition::Alcove(_) => return Ok(None),
        };
        if !open_ended && classify_coordinates(&xs[end]) != AlcovePosition::Wall(wall) {
            return Ok(None);
        }
        let inside = if open_ended {
            start + 1..=end
        } else {
            start + 1..=end - 1
        };
        let mut orientation = None;
        for m in inside {
            if xs[m].swap(0, wall) != ys[m] {
                return Ok(None);
            }
            let px = classify_coordinates(&xs[m]);
            let py = classify_coordinates(&ys[m]);
            let o = if px == AlcovePosition::Alcove(wall) && py == AlcovePosition::Alcove(wall + 1)
            {
                true
            } else if py == AlcovePosition::Alcove(wall) && px == AlcovePosition::Alcove(wall + 1) {
                false
            } else {
                return Ok(None);
            };
            if *orientation.get_or_insert(o) != o {
                return Ok(None);
            }
        }
        intervals.push(ReflectionInterval { start, end, wall });
        i = end + 1;
    }
    Ok(Some(intervals))
}

pub fn geometric_residue_equivalent(s: &Path, t: &Path, n: i64) -> Result<bool> {
    Ok(reflection_intervals(s, t, n)?.is_some())
}
