//! Integer partitions, Young diagram nodes and their contents.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A weakly decreasing sequence of positive integers. The empty sequence is
/// the empty partition. Trailing zeros are never stored, so derived equality
/// and hashing are structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds a partition from parts, dropping zeros. Fails if the nonzero
    /// parts are not weakly decreasing.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self, Error> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based rows; zero beyond the last part.
    pub fn part(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn contains_node(&self, node: Node) -> bool {
        node.col <= self.part(node.row)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Addable nodes, sorted by row.
    pub fn addable_nodes(&self) -> Vec<Node> {
        (1..=self.len() + 1)
            .filter(|&row| row == 1 || self.part(row - 1) > self.part(row))
            .map(|row| Node::new(row, self.part(row) + 1))
            .collect()
    }

    /// Removable nodes, sorted by row.
    pub fn removable_nodes(&self) -> Vec<Node> {
        (1..=self.len())
            .filter(|&row| self.part(row) > self.part(row + 1))
            .map(|row| Node::new(row, self.part(row)))
            .collect()
    }

    /// Adds a box at the end of `row` (1-based). `None` if the result is not a
    /// partition.
    pub fn add_box(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() + 1 || (row > 1 && self.part(row - 1) == self.part(row)) {
            return None;
        }
        let mut parts = self.0.clone();
        if row == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] += 1;
        }
        Some(Partition(parts))
    }

    /// Removes the last box of `row` (1-based). `None` if the result is not a
    /// partition.
    pub fn remove_box(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() || self.part(row) == self.part(row + 1) {
            return None;
        }
        let mut parts = self.0.clone();
        parts[row - 1] -= 1;
        if parts[row - 1] == 0 {
            parts.pop();
        }
        Some(Partition(parts))
    }

    pub fn with_node(&self, node: Node) -> Option<Partition> {
        (node.col == self.part(node.row) + 1)
            .then(|| self.add_box(node.row))
            .flatten()
    }

    pub fn without_node(&self, node: Node) -> Option<Partition> {
        (node.col == self.part(node.row) && node.col > 0)
            .then(|| self.remove_box(node.row))
            .flatten()
    }

    /// Equal-size dominance on partial sums.
    /// The transposed diagram: column lengths of `self`.
    pub fn conjugate(&self) -> Partition {
        Partition(
            (1..=self.first())
                .map(|c| self.0.iter().filter(|&&p| p >= c).count())
                .collect(),
        )
    }

    pub fn dominates_same_size(&self, other: &Partition) -> bool {
        let rows = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for row in 1..=rows {
            a += self.part(row);
            b += other.part(row);
            if a < b {
                return false;
            }
        }
        true
    }

    /// The order used on branching-graph vertices: a strictly smaller
    /// partition dominates, equal sizes compare by partial sums.
    pub fn dominance_geq(&self, other: &Partition) -> bool {
        match self.size().cmp(&other.size()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.dominates_same_size(other),
        }
    }

    pub fn dominance_gt(&self, other: &Partition) -> bool {
        self != other && self.dominance_geq(other)
    }

    /// All partitions of `n` in reverse lexicographic order, `(n)` first.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `n`, by size then reverse lexicographic.
    pub fn all_up_to(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }

    /// Bracketed form used inside paths, e.g. `[2,1]` and `[]`.
    pub fn bracketed(&self) -> String {
        format!("[{}]", self.join())
    }

    /// Conventional notation, e.g. `(2,1)` and `∅`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            "∅".to_string()
        } else {
            format!("({})", self.join())
        }
    }

    fn join(&self) -> String {
        self.0
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Comma-separated parts; the empty partition prints as `[]`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("[]")
        } else {
            f.write_str(&self.join())
        }
    }
}

/// Accepts `2,1`, `[2,1]`, `(2,1)`, and `""`, `[]` or `∅` for the empty
/// partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .or_else(|| trimmed.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() || inner == "∅" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                let p = p.trim();
                match p.parse::<usize>() {
                    Ok(v) if v > 0 => Ok(v),
                    _ => Err(Error::InvalidPartition(s.to_string())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts).map_err(|_| Error::InvalidPartition(s.to_string()))
    }
}

/// A cell `(row, col)` of a Young diagram, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Node { row, col }
    }

    pub fn content(self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}
