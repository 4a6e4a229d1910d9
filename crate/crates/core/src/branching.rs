//! The branching graph: vertices `(λ, k)` with `|λ| ≤ ⌊k/2⌋`, paths from
//! `(∅, 0)`, the reverse lexicographic path order and cell-module dimensions.
//!
//! Edges into level `k` keep the shape or, at even `k`, add a box and, at odd
//! `k`, remove a box. The graph is never materialized; parents are computed
//! from shape arithmetic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Default bound on the level for operations that materialize path lists.
pub const DEFAULT_MAX_PATH_LEVEL: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub shape: Partition,
    pub level: usize,
}

impl Vertex {
    pub fn new(shape: Partition, level: usize) -> Result<Self> {
        if shape.size() > level / 2 {
            return Err(Error::InvalidVertex(format!(
                "|{}| = {} exceeds ⌊{level}/2⌋",
                shape.pretty(),
                shape.size()
            )));
        }
        Ok(Vertex { shape, level })
    }

    pub fn root() -> Self {
        Vertex {
            shape: Partition::empty(),
            level: 0,
        }
    }

    /// Vertices `(μ, k−1)` with an edge into `self`, in the order "same
    /// shape" first, then by row of the differing box.
    pub fn parents(&self) -> Vec<Vertex> {
        if self.level == 0 {
            return Vec::new();
        }
        let below = self.level - 1;
        let mut out = Vec::new();
        if self.shape.size() <= below / 2 {
            out.push(Vertex {
                shape: self.shape.clone(),
                level: below,
            });
        }
        if self.level % 2 == 0 {
            // λ = μ ∪ {a}
            for node in self.shape.removable_nodes() {
                let mu = self.shape.without_node(node).expect("removable");
                out.push(Vertex {
                    shape: mu,
                    level: below,
                });
            }
        } else {
            // λ = μ \ {a}
            for node in self.shape.addable_nodes() {
                let mu = self.shape.with_node(node).expect("addable");
                if mu.size() <= below / 2 {
                    out.push(Vertex {
                        shape: mu,
                        level: below,
                    });
                }
            }
        }
        out
    }

    /// Vertices `(μ, k+1)` reached by an edge out of `self`.
    pub fn children(&self) -> Vec<Vertex> {
        let above = self.level + 1;
        let mut out = vec![Vertex {
            shape: self.shape.clone(),
            level: above,
        }];
        if above % 2 == 0 {
            if self.shape.size() < above / 2 {
                for node in self.shape.addable_nodes() {
                    out.push(Vertex {
                        shape: self.shape.with_node(node).expect("addable"),
                        level: above,
                    });
                }
            }
        } else {
            for node in self.shape.removable_nodes() {
                out.push(Vertex {
                    shape: self.shape.without_node(node).expect("removable"),
                    level: above,
                });
            }
        }
        out
    }

    pub fn is_edge_from(&self, parent: &Vertex) -> bool {
        parent.level + 1 == self.level && self.parents().contains(parent)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.shape.pretty(), self.level)
    }
}

/// Dominance on vertices of a common level.
pub fn dominance_geq(a: &Vertex, b: &Vertex) -> Result<bool> {
    if a.level != b.level {
        return Err(Error::Mismatch(format!(
            "vertices at levels {} and {} are incomparable",
            a.level, b.level
        )));
    }
    Ok(a.shape.dominance_geq(&b.shape))
}

/// All vertices at level `k`, by size then reverse lexicographic.
pub fn vertices_at_level(level: usize) -> Vec<Vertex> {
    Partition::all_up_to(level / 2)
        .into_iter()
        .map(|shape| Vertex { shape, level })
        .collect()
}

/// A path `(∅,0) → … → (λ,k)`, stored as its sequence of shapes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    shapes: Vec<Partition>,
}

impl Path {
    /// Validates every step against the edge relation.
    pub fn new(shapes: Vec<Partition>) -> Result<Self> {
        match shapes.first() {
            Some(s) if s.is_empty() => {}
            _ => return Err(Error::InvalidPath("a path must start at (∅, 0)".into())),
        }
        for (i, pair) in shapes.windows(2).enumerate() {
            let from = Vertex {
                shape: pair[0].clone(),
                level: i,
            };
            let to = Vertex {
                shape: pair[1].clone(),
                level: i + 1,
            };
            if to.shape.size() > to.level / 2 || !to.is_edge_from(&from) {
                return Err(Error::InvalidPath(format!("no edge {from} → {to}")));
            }
        }
        Ok(Path { shapes })
    }

    pub fn trivial() -> Self {
        Path {
            shapes: vec![Partition::empty()],
        }
    }

    /// Number of steps `k`.
    pub fn len(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn shape(&self, i: usize) -> &Partition {
        &self.shapes[i]
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        Vertex {
            shape: self.shapes[i].clone(),
            level: i,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.shapes.len()).map(|i| self.vertex(i))
    }

    pub fn end(&self) -> Vertex {
        self.vertex(self.len())
    }

    /// The prefix up to level `r`.
    pub fn truncate(&self, r: usize) -> Result<Path> {
        if r > self.len() {
            return Err(Error::OutOfRange {
                level: r,
                max: self.len(),
            });
        }
        Ok(Path {
            shapes: self.shapes[..=r].to_vec(),
        })
    }

    fn extended(&self, shape: Partition) -> Path {
        let mut shapes = self.shapes.clone();
        shapes.push(shape);
        Path { shapes }
    }

    /// Reverse lexicographic comparison of paths sharing an endpoint:
    /// `Greater` means `self ≻ other`.
    pub fn rev_lex_cmp(&self, other: &Path) -> Result<Ordering> {
        if self.len() != other.len() || self.shapes.last() != other.shapes.last() {
            return Err(Error::Mismatch("paths end at different vertices".into()));
        }
        for r in (0..self.len()).rev() {
            let (a, b) = (&self.shapes[r], &other.shapes[r]);
            if a == b {
                continue;
            }
            return Ok(if a.dominance_gt(b) {
                Ordering::Greater
            } else if b.dominance_gt(a) {
                Ordering::Less
            } else {
                // Last-differing shapes are neighbours of a common shape and
                // always comparable.
                return Err(Error::Inconsistent(format!("{a} and {b} are incomparable")));
            });
        }
        Ok(Ordering::Equal)
    }

    /// `self ≻ other`
    pub fn succ(&self, other: &Path) -> Result<bool> {
        Ok(self.rev_lex_cmp(other)? == Ordering::Greater)
    }
}

/// Comma-separated bracketed shapes, e.g. `[],[],[1],[1]`.
impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.shapes.iter().map(Partition::bracketed).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut shapes = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::InvalidPath(format!("{s}: expected '['")))?;
            let close = body
                .find(']')
                .ok_or_else(|| Error::InvalidPath(format!("{s}: unclosed shape")))?;
            shapes.push(body[..close].parse::<Partition>()?);
            rest = body[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        Path::new(shapes)
    }
}

/// `Std_k(λ)` sorted in descending `≻` order.
pub fn enumerate_paths(v: &Vertex) -> Result<Vec<Path>> {
    enumerate_paths_bounded(v, DEFAULT_MAX_PATH_LEVEL)
}

pub fn enumerate_paths_bounded(v: &Vertex, max_level: usize) -> Result<Vec<Path>> {
    if v.level > max_level {
        return Err(Error::ResourceBound {
            what: "path level",
            requested: v.level,
            bound: max_level,
        });
    }
    let mut memo: HashMap<Vertex, Vec<Path>> = HashMap::new();
    let mut paths = paths_to(v, &mut memo);
    paths.sort_by(|a, b| b.rev_lex_cmp(a).expect("common endpoint"));
    Ok(paths)
}

fn paths_to(v: &Vertex, memo: &mut HashMap<Vertex, Vec<Path>>) -> Vec<Path> {
    if v.level == 0 {
        return vec![Path::trivial()];
    }
    if let Some(p) = memo.get(v) {
        return p.clone();
    }
    let mut out = Vec::new();
    for parent in v.parents() {
        for p in paths_to(&parent, memo) {
            out.push(p.extended(v.shape.clone()));
        }
    }
    memo.insert(v.clone(), out.clone());
    out
}

/// Every path of length `k`, grouped by endpoint in [`vertices_at_level`] order.
pub fn all_paths(level: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    for v in vertices_at_level(level) {
        out.extend(enumerate_paths(&v)?);
    }
    Ok(out)
}

/// Cell-module dimensions `|Std_k(λ)|` for every vertex up to a level, filled
/// in by dynamic programming over parents.
#[derive(Debug, Clone)]
pub struct DimensionTable {
    levels: Vec<HashMap<Partition, u64>>,
}

impl DimensionTable {
    pub fn up_to(max_level: usize) -> Result<Self> {
        let mut levels: Vec<HashMap<Partition, u64>> = Vec::with_capacity(max_level + 1);
        levels.push(HashMap::from([(Partition::empty(), 1)]));
        for level in 1..=max_level {
            let prev = &levels[level - 1];
            let mut cur = HashMap::new();
            for v in vertices_at_level(level) {
                let mut total = 0u64;
                for p in v.parents() {
                    total = total
                        .checked_add(prev[&p.shape])
                        .ok_or(Error::Overflow("cell dimension"))?;
                }
                cur.insert(v.shape, total);
            }
            levels.push(cur);
        }
        Ok(DimensionTable { levels })
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn get(&self, v: &Vertex) -> Option<u64> {
        self.levels.get(v.level)?.get(&v.shape).copied()
    }
}

/// `|Std_k(λ)|` without materializing paths.
pub fn cell_dimension(v: &Vertex) -> Result<u64> {
    let table = DimensionTable::up_to(v.level)?;
    table
        .get(v)
        .ok_or_else(|| Error::InvalidVertex(v.to_string()))
}
