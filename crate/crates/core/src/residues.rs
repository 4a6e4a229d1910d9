//! Content vectors of paths, their specializations at `z = n`, and the
//! residue and linkage relations they induce.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::branching::{all_paths, vertices_at_level, Path, Vertex};
use crate::error::{Error, Result};
use crate::modules::block_chain;

/// `constant + zcoeff·z` with `zcoeff ∈ {0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContentValue {
    pub constant: i64,
    pub zcoeff: u8,
}

impl ContentValue {
    pub fn constant(c: i64) -> Self {
        ContentValue {
            constant: c,
            zcoeff: 0,
        }
    }

    /// `z + c`
    pub fn z_plus(c: i64) -> Self {
        ContentValue {
            constant: c,
            zcoeff: 1,
        }
    }

    pub fn eval(self, n: i64) -> i64 {
        self.constant + i64::from(self.zcoeff) * n
    }
}

impl fmt::Display for ContentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.zcoeff, self.constant) {
            (0, c) => write!(f, "{c}"),
            (_, 0) => f.write_str("z"),
            (_, c) if c > 0 => write!(f, "z+{c}"),
            (_, c) => write!(f, "z{c}"),
        }
    }
}

/// Jucys–Murphy eigenvalues along a path, one per step.
pub fn content_vector(t: &Path) -> Vec<ContentValue> {
    (1..=t.len())
        .map(|i| {
            let (prev, cur) = (t.shape(i - 1), t.shape(i));
            let size = cur.size() as i64;
            let even = i % 2 == 0;
            if prev == cur {
                if even {
                    ContentValue::z_plus(-size)
                } else {
                    ContentValue::constant(size)
                }
            } else if even {
                let added = cur
                    .removable_nodes()
                    .into_iter()
                    .find(|&a| cur.without_node(a).as_ref() == Some(prev))
                    .expect("even step adds a box");
                ContentValue::constant(added.content())
            } else {
                let removed = prev
                    .removable_nodes()
                    .into_iter()
                    .find(|&a| prev.without_node(a).as_ref() == Some(cur))
                    .expect("odd step removes a box");
                ContentValue::z_plus(-removed.content())
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueVector {
    pub values: Vec<i64>,
    pub n: i64,
}

/// `(0,0,1,1,2,2)`
impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn residue_vector(t: &Path, n: i64) -> ResidueVector {
    ResidueVector {
        values: content_vector(t).into_iter().map(|c| c.eval(n)).collect(),
        n,
    }
}

pub fn residue_equivalent(s: &Path, t: &Path, n: i64) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::Mismatch(format!(
            "paths of lengths {} and {}",
            s.len(),
            t.len()
        )));
    }
    Ok(residue_vector(s, n) == residue_vector(t, n))
}

/// `[t]_n` restricted to the endpoint of `t`.
pub fn residue_class_at_endpoint(t: &Path, n: i64) -> Result<Vec<Path>> {
    let target = residue_vector(t, n);
    Ok(crate::branching::enumerate_paths(&t.end())?
        .into_iter()
        .filter(|s| residue_vector(s, n) == target)
        .collect())
}

/// Largest level accepted by [`linkage_classes_brute_force`].
pub const DEFAULT_MAX_BRUTE_FORCE_LEVEL: usize = 10;

/// Linkage classes at level `k`, from the reflection chains of the embedded
/// graph. Classes are listed in order of their first vertex in
/// [`vertices_at_level`] order; members keep that order too.
pub fn linkage_classes(level: usize, n: i64) -> Vec<Vec<Vertex>> {
    let vertices = vertices_at_level(level);
    let index: HashMap<&Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut uf = UnionFind::<usize>::new(vertices.len());
    for v in &vertices {
        for w in block_chain(v, n).chain {
            uf.union(index[v], index[&w]);
        }
    }
    collect_classes(&vertices, &uf)
}

/// Linkage classes from the definition: joins the endpoints of every pair of
/// paths with equal residue vectors.
pub fn linkage_classes_brute_force(level: usize, n: i64) -> Result<Vec<Vec<Vertex>>> {
    if level > DEFAULT_MAX_BRUTE_FORCE_LEVEL {
        return Err(Error::ResourceBound {
            what: "brute-force linkage level",
            requested: level,
            bound: DEFAULT_MAX_BRUTE_FORCE_LEVEL,
        });
    }
    let vertices = vertices_at_level(level);
    let index: HashMap<&Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut uf = UnionFind::<usize>::new(vertices.len());
    let mut first_with_residue: HashMap<Vec<i64>, usize> = HashMap::new();
    for t in all_paths(level)? {
        let end = index[&t.end()];
        let r = residue_vector(&t, n).values;
        let rep = *first_with_residue.entry(r).or_insert(end);
        uf.union(rep, end);
    }
    Ok(collect_classes(&vertices, &uf))
}

fn collect_classes(vertices: &[Vertex], uf: &UnionFind<usize>) -> Vec<Vec<Vertex>> {
    let mut order: Vec<usize> = Vec::new();
    let mut classes: HashMap<usize, Vec<Vertex>> = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        let root = uf.find(i);
        classes
            .entry(root)
            .or_insert_with(|| {
                order.push(root);
                Vec::new()
            })
            .push(v.clone());
    }
    order
        .into_iter()
        .map(|r| classes.remove(&r).unwrap())
        .collect()
}
