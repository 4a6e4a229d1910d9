//! Blocks, decomposition numbers, permissible paths and the dimensions of
//! simple and radical modules.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::alcove::{embed, position, AlcovePosition};
use crate::branching::{
    cell_dimension, enumerate_paths, vertices_at_level, DimensionTable, Path, Vertex,
};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// A maximal run of vertices at one level joined by successive reflections:
/// `φ_n(chain[i+1]) = s_{0,i+1}(φ_n(chain[i]))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockChain {
    pub chain: Vec<Vertex>,
    pub reflections: Vec<usize>,
}

impl BlockChain {
    pub fn position_of(&self, v: &Vertex) -> Option<usize> {
        self.chain.iter().position(|w| w == v)
    }
}

pub fn block_chain(v: &Vertex, n: i64) -> BlockChain {
    let mut start = v.clone();
    let mut j = match position(v, n) {
        AlcovePosition::Wall(_) => {
            return BlockChain {
                chain: vec![v.clone()],
                reflections: Vec::new(),
            };
        }
        AlcovePosition::Alcove(j) => j,
    };
    while j > 1 {
        let (_, below) = crate::alcove::reflect(&embed(&start, n), j - 1, v.level);
        start = below.expect("reflection towards the first alcove stays in the graph");
        j -= 1;
    }
    let mut chain = vec![start];
    let mut reflections = Vec::new();
    loop {
        let j = chain.len();
        let last = chain.last().expect("nonempty");
        match crate::alcove::reflect(&embed(last, n), j, v.level).1 {
            Some(next) => {
                chain.push(next);
                reflections.push(j);
            }
            None => break,
        }
    }
    BlockChain { chain, reflections }
}

/// `n = 0`, even `k ≥ 2`, `λ = ∅`: the cell module is `L((1))`.
fn is_exceptional(v: &Vertex, n: i64) -> bool {
    n == 0 && v.level >= 2 && v.level % 2 == 0 && v.shape.is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionRow {
    pub cell: Vertex,
    pub factors: Vec<(Vertex, u64)>,
}

pub fn decomposition_row(v: &Vertex, n: i64) -> DecompositionRow {
    if is_exceptional(v, n) {
        let one = Partition::new(vec![1]).expect("valid");
        return DecompositionRow {
            cell: v.clone(),
            factors: vec![(
                Vertex {
                    shape: one,
                    level: v.level,
                },
                1,
            )],
        };
    }
    let chain = block_chain(v, n);
    let i = chain
        .position_of(v)
        .expect("chain passes through its vertex");
    let mut factors = vec![(v.clone(), 1)];
    if let Some(next) = chain.chain.get(i + 1) {
        factors.push((next.clone(), 1));
    }
    DecompositionRow {
        cell: v.clone(),
        factors,
    }
}

/// Whether `t` is counted by the simple module at its endpoint.
pub fn is_permissible(t: &Path, n: i64) -> bool {
    let positions: Vec<AlcovePosition> = t.vertices().map(|u| position(&u, n)).collect();
    match *positions.last().expect("paths are nonempty") {
        AlcovePosition::Wall(_) => true,
        AlcovePosition::Alcove(1) => positions.iter().all(|&p| p == AlcovePosition::Alcove(1)),
        AlcovePosition::Alcove(j) => {
            match positions
                .iter()
                .rposition(|&p| p != AlcovePosition::Alcove(j))
            {
                Some(i) => positions[i] == AlcovePosition::Wall(j - 1),
                // the root is always in the first alcove or on the first wall
                None => false,
            }
        }
    }
}

pub fn permissible_paths(v: &Vertex, n: i64) -> Result<Vec<Path>> {
    Ok(enumerate_paths(v)?
        .into_iter()
        .filter(|t| is_permissible(t, n))
        .collect())
}

/// Memoized simple-module dimensions for a fixed `n`, by restriction.
#[derive(Debug, Clone)]
pub struct SimpleDimensions {
    n: i64,
    cells: DimensionTable,
    memo: HashMap<Vertex, u64>,
}

impl SimpleDimensions {
    pub fn new(n: i64, max_level: usize) -> Result<Self> {
        Ok(SimpleDimensions {
            n,
            cells: DimensionTable::up_to(max_level)?,
            memo: HashMap::new(),
        })
    }

    pub fn get(&mut self, v: &Vertex) -> Result<u64> {
        if v.level > self.cells.max_level() {
            return Err(Error::OutOfRange {
                level: v.level,
                max: self.cells.max_level(),
            });
        }
        if let Some(&d) = self.memo.get(v) {
            return Ok(d);
        }
        let d = if v.level == 0 {
            1
        } else {
            match position(v, self.n) {
                AlcovePosition::Wall(_) => self.cells.get(v).expect("in table"),
                AlcovePosition::Alcove(j) => {
                    let mut total = 0u64;
                    for parent in v.parents() {
                        let p = position(&parent, self.n);
                        if p == AlcovePosition::Alcove(j)
                            || (j > 1 && p == AlcovePosition::Wall(j - 1))
                        {
                            total = total
                                .checked_add(self.get(&parent)?)
                                .ok_or(Error::Overflow("simple dimension"))?;
                        }
                    }
                    total
                }
            }
        };
        self.memo.insert(v.clone(), d);
        Ok(d)
    }

    pub fn cell(&self, v: &Vertex) -> Result<u64> {
        self.cells.get(v).ok_or(Error::OutOfRange {
            level: v.level,
            max: self.cells.max_level(),
        })
    }
}

pub fn simple_dimension(v: &Vertex, n: i64) -> Result<u64> {
    SimpleDimensions::new(n, v.level)?.get(v)
}

/// Counts permissible paths.
pub fn simple_dimension_by_paths(v: &Vertex, n: i64) -> Result<u64> {
    Ok(permissible_paths(v, n)?.len() as u64)
}

/// Alternating sum of cell dimensions along the block chain.
pub fn simple_dimension_by_chain(v: &Vertex, n: i64) -> Result<u64> {
    if is_exceptional(v, n) {
        return Ok(0);
    }
    let chain = block_chain(v, n);
    let start = chain
        .position_of(v)
        .expect("chain passes through its vertex");
    let mut total = 0i128;
    for (offset, w) in chain.chain[start..].iter().enumerate() {
        let d = i128::from(cell_dimension(w)?);
        total += if offset % 2 == 0 { d } else { -d };
    }
    u64::try_from(total)
        .map_err(|_| Error::Inconsistent(format!("negative alternating sum at {v}, n={n}")))
}

/// Runs all three algorithms and fails if they disagree.
pub fn simple_dimension_verified(v: &Vertex, n: i64) -> Result<u64> {
    let b = simple_dimension(v, n)?;
    let a = simple_dimension_by_paths(v, n)?;
    let c = simple_dimension_by_chain(v, n)?;
    if a != b || b != c {
        return Err(Error::Inconsistent(format!(
            "simple dimension of {v} at n={n}: paths {a}, restriction {b}, chain {c}"
        )));
    }
    Ok(b)
}

pub fn radical_dimension(v: &Vertex, n: i64) -> Result<u64> {
    let cell = cell_dimension(v)?;
    let simple = simple_dimension(v, n)?;
    cell.checked_sub(simple).ok_or_else(|| {
        Error::Inconsistent(format!("simple module of {v} larger than its cell module"))
    })
}

pub fn restrict_cell(v: &Vertex) -> Result<Vec<Vertex>> {
    if v.level == 0 {
        return Err(Error::Precondition("cannot restrict from level 0".into()));
    }
    Ok(v.parents())
}

pub fn restrict_simple(v: &Vertex, n: i64) -> Result<Vec<Vertex>> {
    let j = match position(v, n) {
        AlcovePosition::Alcove(j) => j,
        AlcovePosition::Wall(w) => {
            return Err(Error::Precondition(format!(
                "{v} lies on wall {w} at n={n}; its simple module is the cell module, use restrict_cell"
            )))
        }
    };
    if v.level == 0 {
        return Err(Error::Precondition("cannot restrict from level 0".into()));
    }
    Ok(v.parents()
        .into_iter()
        .filter(|p| {
            let pos = position(p, n);
            pos == AlcovePosition::Alcove(j) || (j > 1 && pos == AlcovePosition::Wall(j - 1))
        })
        .collect())
}

pub fn is_semisimple(level: usize, n: i64) -> bool {
    if n == 0 && level >= 2 && level % 2 == 0 {
        return false;
    }
    vertices_at_level(level)
        .iter()
        .all(|v| block_chain(v, n).chain.len() == 1)
}

/// Smallest `n ≥ 0` at which the algebra at `level` is semisimple.
pub fn min_semisimple_parameter(level: usize) -> i64 {
    (0..)
        .find(|&n| is_semisimple(level, n))
        .expect("large n is semisimple")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::{classify_coordinates, reflect};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn v(parts: &[usize], level: usize) -> Vertex {
        Vertex::new(p(parts), level).unwrap()
    }

    fn path(shapes: &[&[usize]]) -> Path {
        Path::new(shapes.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn chain_examples() {
        let c = block_chain(&v(&[], 6), 2);
        assert_eq!(c.chain, vec![v(&[], 6), v(&[3], 6)]);
        assert_eq!(c.reflections, vec![1]);
        assert_eq!(block_chain(&v(&[3], 6), 2), c);
        assert_eq!(
            block_chain(&v(&[1], 6), 2).chain,
            vec![v(&[1], 6), v(&[2], 6)]
        );
        assert_eq!(block_chain(&v(&[2, 1], 6), 2).chain, vec![v(&[2, 1], 6)]);
    }

    #[test]
    fn chains_are_maximal_and_increasing() {
        for level in 0..=9 {
            for n in 0..=7 {
                for u in vertices_at_level(level) {
                    let c = block_chain(&u, n);
                    for w in c.chain.windows(2) {
                        assert!(w[0].shape.size() < w[1].shape.size());
                    }
                    for (i, &j) in c.reflections.iter().enumerate() {
                        assert_eq!(j, i + 1);
                    }
                    let last = c.chain.last().unwrap();
                    if !position(last, n).is_wall() {
                        assert_eq!(reflect(&embed(last, n), c.chain.len(), level).1, None);
                    }
                    for w in &c.chain {
                        assert_eq!(&block_chain(w, n), &c);
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let row = decomposition_row(&v(&[], 6), 2);
        assert_eq!(row.factors, vec![(v(&[], 6), 1), (v(&[3], 6), 1)]);
        assert_eq!(
            decomposition_row(&v(&[3], 6), 2).factors,
            vec![(v(&[3], 6), 1)]
        );
        assert_eq!(
            decomposition_row(&v(&[], 2), 0).factors,
            vec![(v(&[1], 2), 1)]
        );
        assert_eq!(
            decomposition_row(&v(&[], 0), 0).factors,
            vec![(v(&[], 0), 1)]
        );
    }

    #[test]
    fn permissible_examples() {
        let s = path(&[&[], &[], &[1], &[], &[1], &[], &[]]);
        let t = path(&[&[], &[], &[1], &[1], &[1], &[], &[]]);
        let u = path(&[&[], &[], &[1], &[1], &[2], &[2], &[3]]);
        assert!(is_permissible(&s, 2));
        assert!(!is_permissible(&t, 2));
        assert!(is_permissible(&u, 2));
        assert_eq!(permissible_paths(&v(&[], 6), 2).unwrap().len(), 4);
        assert_eq!(permissible_paths(&v(&[1], 6), 2).unwrap().len(), 4);
        assert!(permissible_paths(&v(&[], 2), 0).unwrap().is_empty());
    }

    #[test]
    fn simple_dimension_examples() {
        assert_eq!(simple_dimension(&v(&[], 6), 2).unwrap(), 4);
        assert_eq!(simple_dimension(&v(&[1], 6), 2).unwrap(), 4);
        assert_eq!(simple_dimension(&v(&[2], 6), 2).unwrap(), 6);
        assert_eq!(simple_dimension(&v(&[], 0), 5).unwrap(), 1);
        assert_eq!(radical_dimension(&v(&[], 6), 2).unwrap(), 1);
        assert_eq!(radical_dimension(&v(&[3], 6), 2).unwrap(), 0);
        assert_eq!(radical_dimension(&v(&[], 2), 0).unwrap(), 1);
    }

    #[test]
    fn three_algorithms_agree() {
        for level in 0..=7 {
            for n in 0..=5 {
                for u in vertices_at_level(level) {
                    simple_dimension_verified(&u, n).unwrap();
                }
            }
        }
    }

    #[test]
    fn decomposition_bookkeeping() {
        for level in 0..=7 {
            for n in 0..=5 {
                let mut dims = SimpleDimensions::new(n, level).unwrap();
                for u in vertices_at_level(level) {
                    let row = decomposition_row(&u, n);
                    assert!(row.factors.len() <= 2);
                    let total: u64 = row
                        .factors
                        .iter()
                        .map(|(w, m)| m * dims.get(w).unwrap())
                        .sum();
                    assert_eq!(total, dims.cell(&u).unwrap(), "{u} n={n}");
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(
            restrict_cell(&v(&[1], 6)).unwrap(),
            vec![v(&[1], 5), v(&[], 5)]
        );
        assert_eq!(restrict_cell(&v(&[], 1)).unwrap(), vec![v(&[], 0)]);
        assert!(restrict_cell(&Vertex::root()).is_err());
        assert_eq!(restrict_simple(&v(&[], 6), 2).unwrap(), vec![v(&[], 5)]);
        assert_eq!(restrict_simple(&v(&[1], 6), 2).unwrap(), vec![v(&[], 5)]);
        assert_eq!(restrict_simple(&v(&[3], 6), 2).unwrap(), vec![v(&[2], 5)]);
        assert!(matches!(
            restrict_simple(&v(&[1], 3), 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn restriction_dimension_identities() {
        for level in 1..=8 {
            let table = DimensionTable::up_to(level).unwrap();
            for n in 0..=6 {
                let mut dims = SimpleDimensions::new(n, level).unwrap();
                for u in vertices_at_level(level) {
                    let cells: u64 = restrict_cell(&u)
                        .unwrap()
                        .iter()
                        .map(|w| table.get(w).unwrap())
                        .sum();
                    assert_eq!(cells, table.get(&u).unwrap());
                    if position(&u, n).is_wall() {
                        continue;
                    }
                    let simples: u64 = restrict_simple(&u, n)
                        .unwrap()
                        .iter()
                        .map(|w| dims.get(w).unwrap())
                        .sum();
                    assert_eq!(simples, dims.get(&u).unwrap());
                }
            }
        }
    }

    #[test]
    fn permissibility_is_monotone_in_n() {
        for level in 0..=7 {
            for n in 0..=5 {
                for u in vertices_at_level(level) {
                    if position(&u, n) != AlcovePosition::Alcove(1) {
                        continue;
                    }
                    for t in permissible_paths(&u, n).unwrap() {
                        assert!(is_permissible(&t, n + 1), "{t} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn companion_vertex_exists() {
        for level in 1..=8 {
            for n in 0..=6 {
                for u in vertices_at_level(level) {
                    let j = match position(&u, n) {
                        AlcovePosition::Alcove(j) => j,
                        _ => continue,
                    };
                    for parent in u.parents() {
                        if position(&parent, n) != AlcovePosition::Wall(j) {
                            continue;
                        }
                        let (raw, companion) = reflect(&embed(&u, n), j, level);
                        let companion =
                            companion.unwrap_or_else(|| panic!("no companion for {u} n={n}"));
                        assert_eq!(embed(&companion, n).coordinates(), raw);
                        assert_eq!(classify_coordinates(&raw), AlcovePosition::Alcove(j + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn semisimplicity() {
        assert!(!is_semisimple(4, 2));
        assert!(is_semisimple(4, 3));
        assert!(!is_semisimple(6, 2));
        assert!(is_semisimple(0, 0));
        for m in 1..=4 {
            assert_eq!(min_semisimple_parameter(2 * m), 2 * m as i64 - 1);
        }
    }
}
