//! Set-partition diagrams and the partition algebra over `ℤ[z]`.
//!
//! A diagram on `m` dots has southern points `1..m` and northern (barred)
//! points `1'..m'`. Points are totally ordered `1 < … < m < 1' < … < m'` and
//! a diagram is stored as the restricted growth string of block labels in that
//! order, which is exactly the canonical form with blocks sorted by their
//! minimum.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Largest level accepted by [`enumerate_diagrams`] unless overridden.
pub const DEFAULT_MAX_DIAGRAM_LEVEL: usize = 12;

/// Number of dots per side of the diagrams spanning level `k`.
pub fn dots_for_level(level: usize) -> usize {
    level.div_ceil(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedPoint {
    /// 1-based position.
    pub index: usize,
    /// Northern vertex.
    pub barred: bool,
}

impl MarkedPoint {
    pub fn south(index: usize) -> Self {
        MarkedPoint {
            index,
            barred: false,
        }
    }

    pub fn north(index: usize) -> Self {
        MarkedPoint {
            index,
            barred: true,
        }
    }

    fn slot(self, dots: usize) -> usize {
        if self.barred {
            dots + self.index - 1
        } else {
            self.index - 1
        }
    }

    fn from_slot(slot: usize, dots: usize) -> Self {
        if slot < dots {
            MarkedPoint::south(slot + 1)
        } else {
            MarkedPoint::north(slot - dots + 1)
        }
    }
}

impl fmt::Display for MarkedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, if self.barred { "'" } else { "" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartitionDiagram {
    dots: usize,
    labels: Vec<usize>,
}

fn canonical_labels(raw: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut map: Vec<(usize, usize)> = Vec::new();
    raw.into_iter()
        .map(|r| match map.iter().find(|(k, _)| *k == r) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len();
                map.push((r, v));
                v
            }
        })
        .collect()
}

impl SetPartitionDiagram {
    pub fn identity(dots: usize) -> Self {
        Self::from_raw_labels(dots, (0..dots).chain(0..dots))
    }

    /// Builds a diagram from arbitrary block labels indexed by slot
    /// (`0..dots` southern, `dots..2·dots` northern).
    pub fn from_raw_labels(dots: usize, raw: impl IntoIterator<Item = usize>) -> Self {
        let labels = canonical_labels(raw);
        assert_eq!(labels.len(), 2 * dots, "label count must be 2·dots");
        SetPartitionDiagram { dots, labels }
    }

    pub fn from_blocks(dots: usize, blocks: &[Vec<MarkedPoint>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; 2 * dots];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidDiagram("empty block".into()));
            }
            for &p in block {
                if p.index == 0 || p.index > dots {
                    return Err(Error::InvalidDiagram(format!(
                        "point {p} outside 1..{dots}"
                    )));
                }
                let slot = p.slot(dots);
                if raw[slot] != usize::MAX {
                    return Err(Error::InvalidDiagram(format!("point {p} appears twice")));
                }
                raw[slot] = b;
            }
        }
        if let Some(slot) = raw.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidDiagram(format!(
                "point {} not covered",
                MarkedPoint::from_slot(slot, dots)
            )));
        }
        Ok(Self::from_raw_labels(dots, raw))
    }

    pub fn dots(&self) -> usize {
        self.dots
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks in canonical order, points within a block in point order.
    pub fn blocks(&self) -> Vec<Vec<MarkedPoint>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (slot, &l) in self.labels.iter().enumerate() {
            blocks[l].push(MarkedPoint::from_slot(slot, self.dots));
        }
        blocks
    }

    pub fn same_block(&self, a: MarkedPoint, b: MarkedPoint) -> bool {
        self.labels[a.slot(self.dots)] == self.labels[b.slot(self.dots)]
    }

    /// Whether `m` and `m'` share a block, i.e. the diagram spans the
    /// odd level `2m − 1`.
    pub fn is_half_level(&self) -> bool {
        self.dots == 0
            || self.same_block(MarkedPoint::south(self.dots), MarkedPoint::north(self.dots))
    }

    /// Whether the diagram belongs to the basis at `level`.
    pub fn fits_level(&self, level: usize) -> bool {
        self.dots == dots_for_level(level) && (level % 2 == 0 || self.is_half_level())
    }

    /// Concatenates `self` above `other`. Returns the resulting diagram and the
    /// number of components made only of middle points; the algebra product
    /// is `z^t` times the diagram.
    pub fn compose(&self, other: &Self) -> Result<(Self, usize)> {
        if self.dots != other.dots {
            return Err(Error::Mismatch(format!(
                "cannot compose diagrams on {} and {} dots",
                self.dots, other.dots
            )));
        }
        let m = self.dots;
        // Slots: 0..m top (self north), m..2m middle, 2m..3m bottom (other south).
        let mut uf = UnionFind::<usize>::new(3 * m);
        let mut first_of_block = vec![usize::MAX; 4 * m];
        for (slot, &label) in self.labels.iter().enumerate() {
            let pos = if slot < m { m + slot } else { slot - m };
            let rep = &mut first_of_block[label];
            if *rep == usize::MAX {
                *rep = pos;
            } else {
                uf.union(*rep, pos);
            }
        }
        let offset = 2 * m;
        for (slot, &label) in other.labels.iter().enumerate() {
            let pos = if slot < m { 2 * m + slot } else { slot };
            let rep = &mut first_of_block[offset + label];
            if *rep == usize::MAX {
                *rep = pos;
            } else {
                uf.union(*rep, pos);
            }
        }
        let mut touches_boundary = vec![false; 3 * m];
        for pos in (0..m).chain(2 * m..3 * m) {
            touches_boundary[uf.find(pos)] = true;
        }
        let mut middle_only = 0;
        let mut seen = vec![false; 3 * m];
        for pos in m..2 * m {
            let root = uf.find(pos);
            if !touches_boundary[root] && !seen[root] {
                seen[root] = true;
                middle_only += 1;
            }
        }
        let raw = (0..m)
            .map(|i| uf.find(2 * m + i))
            .chain((0..m).map(|i| uf.find(i)));
        Ok((Self::from_raw_labels(m, raw), middle_only))
    }

    /// Flips the diagram through its horizontal axis.
    pub fn involute(&self) -> Self {
        let m = self.dots;
        Self::from_raw_labels(m, self.labels[m..].iter().chain(&self.labels[..m]).copied())
    }

    /// Image under the tower inclusion from `level` to `level + 1`.
    pub fn embed_up(&self, level: usize) -> Self {
        if level % 2 == 1 {
            return self.clone();
        }
        let m = self.dots;
        let fresh = self.block_count();
        let raw = self.labels[..m]
            .iter()
            .copied()
            .chain(std::iter::once(fresh))
            .chain(self.labels[m..].iter().copied())
            .chain(std::iter::once(fresh));
        Self::from_raw_labels(m + 1, raw)
    }
}

/// `[[1,2'],[2],[1']]`
impl fmt::Display for SetPartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, p) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl FromStr for SetPartitionDiagram {
    type Err = Error;

    /// The number of dots is the largest index mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidDiagram(format!("{s}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected outer brackets"))?;
        let mut blocks = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('[').ok_or_else(|| bad("expected '['"))?;
            let close = body_start.find(']').ok_or_else(|| bad("unclosed block"))?;
            let body = &body_start[..close];
            let block = body
                .split(',')
                .map(|tok| {
                    let (num, barred) = match tok.strip_suffix('\'') {
                        Some(n) => (n, true),
                        None => (tok, false),
                    };
                    num.parse::<usize>()
                        .ok()
                        .filter(|&i| i > 0)
                        .map(|index| MarkedPoint { index, barred })
                        .ok_or_else(|| bad("bad point"))
                })
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = &body_start[close + 1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        let dots = blocks.iter().flatten().map(|p| p.index).max().unwrap_or(0);
        Self::from_blocks(dots, &blocks)
    }
}

/// Restricted growth strings of length `len`, in lexicographic order.
fn restricted_growth_strings(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(len: usize, max_label: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let next_max = if cur.is_empty() { 0 } else { max_label + 1 };
        for l in 0..=next_max {
            cur.push(l);
            go(len, max_label.max(l), cur, out);
            cur.pop();
        }
    }
    go(len, 0, &mut cur, &mut out);
    out
}

/// The diagram basis of the algebra at `level`.
pub fn enumerate_diagrams(level: usize) -> Result<Vec<SetPartitionDiagram>> {
    enumerate_diagrams_bounded(level, DEFAULT_MAX_DIAGRAM_LEVEL)
}

pub fn enumerate_diagrams_bounded(
    level: usize,
    max_level: usize,
) -> Result<Vec<SetPartitionDiagram>> {
    if level > max_level {
        return Err(Error::ResourceBound {
            what: "diagram level",
            requested: level,
            bound: max_level,
        });
    }
    let dots = dots_for_level(level);
    Ok(restricted_growth_strings(2 * dots)
        .into_iter()
        .map(|labels| SetPartitionDiagram { dots, labels })
        .filter(|d| d.fits_level(level))
        .collect())
}

/// A finite `ℤ[z]`-combination of diagrams at a fixed level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    level: usize,
    terms: BTreeMap<SetPartitionDiagram, IntPolynomial>,
}

impl AlgebraElement {
    pub fn zero(level: usize) -> Self {
        AlgebraElement {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(level: usize) -> Self {
        Self::basis(level, SetPartitionDiagram::identity(dots_for_level(level)))
            .expect("identity fits every level")
    }

    pub fn basis(level: usize, d: SetPartitionDiagram) -> Result<Self> {
        Self::term(level, IntPolynomial::constant(1), d)
    }

    pub fn term(level: usize, coeff: IntPolynomial, d: SetPartitionDiagram) -> Result<Self> {
        let mut e = Self::zero(level);
        e.add_term(coeff, d)?;
        Ok(e)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SetPartitionDiagram, &IntPolynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &SetPartitionDiagram) -> IntPolynomial {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, coeff: IntPolynomial, d: SetPartitionDiagram) -> Result<()> {
        if !d.fits_level(self.level) {
            return Err(Error::InvalidDiagram(format!(
                "{d} is not a basis diagram at level {}",
                self.level
            )));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let sum = match self.terms.get(&d) {
            Some(c) => c.checked_add(&coeff)?,
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, sum);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(c.clone(), d.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &IntPolynomial) -> Result<Self> {
        let mut out = Self::zero(self.level);
        for (d, coeff) in &self.terms {
            out.add_term(coeff.checked_mul(c)?, d.clone())?;
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        let mut out = Self::zero(self.level);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let (d, t) = x.compose(y)?;
                out.add_term(a.checked_mul(b)?.shift(t), d)?;
            }
        }
        Ok(out)
    }

    pub fn involute(&self) -> Self {
        AlgebraElement {
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.involute(), c.clone()))
                .collect(),
        }
    }

    pub fn embed_up(&self) -> Self {
        AlgebraElement {
            level: self.level + 1,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.embed_up(self.level), c.clone()))
                .collect(),
        }
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::Mismatch(format!(
                "algebra elements at levels {} and {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    /// Parses `coeff * diagram` terms joined by `+` or `-`, e.g.
    /// `3z^2-1 * [[1],[1']] - z * [[1,1']]`. The coefficient may be omitted.
    pub fn parse(level: usize, s: &str) -> Result<Self> {
        let mut out = Self::zero(level);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for (negate, term) in split_terms(s) {
            let term = term.trim();
            let (coeff, diagram) = match term.find('[') {
                Some(pos) => {
                    let head = term[..pos].trim().trim_end_matches('*').trim();
                    let coeff = if head.is_empty() {
                        IntPolynomial::constant(1)
                    } else {
                        head.parse()?
                    };
                    (coeff, &term[pos..])
                }
                None => {
                    return Err(Error::InvalidDiagram(format!(
                        "term without diagram: {term}"
                    )))
                }
            };
            let coeff = if negate {
                coeff.checked_mul(&IntPolynomial::constant(-1))?
            } else {
                coeff
            };
            let mut d: SetPartitionDiagram = diagram.parse()?;
            let want = dots_for_level(level);
            if d.dots() < want {
                d = pad_dots(&d, want);
            }
            out.add_term(coeff, d)?;
        }
        Ok(out)
    }
}

/// Splits after each closed diagram at a following `+` or `-`; the flag
/// records a `-` separator.
fn split_terms(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start, mut negate, mut closed) = (0i32, 0, false, false);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                closed = depth == 0;
            }
            '+' | '-' if depth == 0 && closed => {
                out.push((negate, &s[start..i]));
                negate = ch == '-';
                start = i + 1;
                closed = false;
            }
            _ => {}
        }
    }
    out.push((negate, &s[start..]));
    out
}

/// Extends a parsed diagram whose highest points were omitted as singletons.
fn pad_dots(d: &SetPartitionDiagram, dots: usize) -> SetPartitionDiagram {
    let m = d.dots();
    let base = d.block_count();
    let south = d.labels[..m]
        .iter()
        .copied()
        .chain((m..dots).map(|i| base + i));
    let north = d.labels[m..]
        .iter()
        .copied()
        .chain((m..dots).map(|i| base + dots + i));
    SetPartitionDiagram::from_raw_labels(dots, south.chain(north).collect::<Vec<_>>())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c} * {d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> SetPartitionDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_signed_terms() {
        let a = AlgebraElement::parse(4, "z * [[1,2],[1',2']] - 2 * [[1,1'],[2,2']]").unwrap();
        assert_eq!(
            a.coefficient(&d("[[1,1'],[2,2']]")),
            IntPolynomial::constant(-2)
        );
        assert_eq!(
            a.coefficient(&d("[[1,2],[1',2']]")),
            IntPolynomial::monomial(1, 1)
        );
        let b = AlgebraElement::parse(2, "z-1 * [[1],[1']] + [[1,1']]").unwrap();
        assert_eq!(
            b.coefficient(&d("[[1],[1']]")),
            IntPolynomial::from_coeffs(vec![-1, 1])
        );
    }

    #[test]
    fn parse_and_print() {
        let x = d("[[1,2'],[2],[1']]");
        assert_eq!(x.to_string(), "[[1,2'],[2],[1']]");
        assert_eq!(x.dots(), 2);
        assert_eq!(d("[[2],[1',1],[2']]").to_string(), "[[1,1'],[2],[2']]");
        assert!("[[1],[1]]".parse::<SetPartitionDiagram>().is_err());
        assert!("[[1],[2']]".parse::<SetPartitionDiagram>().is_err());
        assert!("[1,2]".parse::<SetPartitionDiagram>().is_err());
    }

    #[test]
    fn identity_composition() {
        for level in 0..=5 {
            let id = SetPartitionDiagram::identity(dots_for_level(level));
            for x in enumerate_diagrams(level).unwrap() {
                assert_eq!(id.compose(&x).unwrap(), (x.clone(), 0));
                assert_eq!(x.compose(&id).unwrap(), (x.clone(), 0));
            }
        }
    }

    #[test]
    fn singleton_diagram_squares_to_z() {
        let e = d("[[1],[1']]");
        assert_eq!(e.compose(&e).unwrap(), (e.clone(), 1));
        let ee = AlgebraElement::basis(2, e.clone()).unwrap();
        let sq = ee.multiply(&ee).unwrap();
        assert_eq!(
            sq,
            AlgebraElement::term(2, IntPolynomial::monomial(1, 1), e.clone()).unwrap()
        );
        let cube_left = sq.multiply(&ee).unwrap();
        let cube_right = ee.multiply(&sq).unwrap();
        assert_eq!(cube_left, cube_right);
        assert_eq!(cube_left.coefficient(&e), IntPolynomial::monomial(1, 2));
    }

    #[test]
    fn isolated_middle_vertex() {
        let x = d("[[1,1'],[2],[2']]");
        assert_eq!(x.compose(&x).unwrap(), (x.clone(), 1));
    }

    #[test]
    fn compose_rejects_mismatched_dots() {
        assert!(d("[[1,1']]").compose(&d("[[1,1'],[2,2']]")).is_err());
    }

    #[test]
    fn bilinearity() {
        let x = d("[[1,2'],[2],[1']]");
        let y = d("[[1,2],[1',2']]");
        let a = AlgebraElement::term(4, IntPolynomial::constant(2), x.clone()).unwrap();
        let b = AlgebraElement::term(4, IntPolynomial::constant(3), y.clone()).unwrap();
        let (xy, t) = x.compose(&y).unwrap();
        let expect = AlgebraElement::term(4, IntPolynomial::monomial(6, t), xy).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), expect);
    }

    #[test]
    fn level_mismatch_is_error() {
        assert!(AlgebraElement::identity(2)
            .multiply(&AlgebraElement::identity(4))
            .is_err());
        assert!(AlgebraElement::basis(3, d("[[1,1'],[2],[2']]")).is_err());
    }

    #[test]
    fn involution_examples() {
        let id = SetPartitionDiagram::identity(3);
        assert_eq!(id.involute(), id);
        assert_eq!(d("[[1,2,1'],[2']]").involute(), d("[[1',2',1],[2]]"));
    }

    #[test]
    fn diagram_counts_are_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (k, &b) in bell.iter().enumerate() {
            assert_eq!(enumerate_diagrams(k).unwrap().len(), b, "level {k}");
        }
    }

    #[test]
    fn enumeration_respects_bound() {
        assert!(matches!(
            enumerate_diagrams_bounded(9, 8),
            Err(Error::ResourceBound { requested: 9, .. })
        ));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(
            AlgebraElement::identity(2).embed_up(),
            AlgebraElement::identity(3)
        );
        assert_eq!(
            AlgebraElement::identity(3).embed_up(),
            AlgebraElement::identity(4)
        );
        let e = AlgebraElement::basis(2, d("[[1],[1']]")).unwrap();
        let up = e.embed_up();
        assert_eq!(up.level(), 3);
        assert_eq!(up.terms().next().unwrap().0, &d("[[1],[2,2'],[1']]"));
        assert_eq!(
            up.multiply(&up).unwrap(),
            up.scale(&IntPolynomial::monomial(1, 1)).unwrap()
        );
    }

    #[test]
    fn element_text_round_trip() {
        let x = d("[[1,2'],[2],[1']]");
        let mut e = AlgebraElement::term(4, "3z^2-1".parse().unwrap(), x).unwrap();
        e.add_term(
            IntPolynomial::monomial(1, 1),
            SetPartitionDiagram::identity(2),
        )
        .unwrap();
        let text = e.to_string();
        assert_eq!(AlgebraElement::parse(4, &text).unwrap(), e);
        assert_eq!(
            AlgebraElement::parse(4, "0").unwrap(),
            AlgebraElement::zero(4)
        );
        assert_eq!(
            AlgebraElement::parse(4, "[[1,1']]").unwrap(),
            AlgebraElement::basis(4, d("[[1,1'],[2],[2']]")).unwrap()
        );
    }
}
