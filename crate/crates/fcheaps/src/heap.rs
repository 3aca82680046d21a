//! Heaps of pieces over the Coxeter graph: construction, canonical form, subheaps,
//! forks and the family classification of FC heaps of type C̃_n.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSpec, Family, Word};
use crate::error::{Error, Result};

/// Maximum number of vertices a heap may carry.
pub const MAX_VERTICES: usize = 128;

/// Default bound on the number of vertices for linear-extension enumeration.
pub const DEFAULT_EXTENSION_BOUND: usize = 16;

type Bits = u128;

/// A labeled heap stored through its lexicographically minimal linear extension.
///
/// Vertex `v` is the `v`-th letter of that word. `a` is above `b` (written `a ≺ b`)
/// when `a < b` and a chain of non-commuting letters links them.
#[derive(Clone)]
pub struct Heap {
    spec: CoxeterSpec,
    labels: Vec<u8>,
    below: Vec<Bits>,
    covers: Vec<(usize, usize)>,
}

impl PartialEq for Heap {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.labels == other.labels
    }
}

impl Eq for Heap {}

impl Hash for Heap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.hash(state);
        self.labels.hash(state);
    }
}

impl PartialOrd for Heap {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Heap {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.spec, self.labels.len(), &self.labels).cmp(&(
            other.spec,
            other.labels.len(),
            &other.labels,
        ))
    }
}

impl fmt::Debug for Heap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Heap[{}]{:?}", self.spec, self.labels)
    }
}

/// Above/below relation for a word, without canonicalization.
fn order_of(spec: CoxeterSpec, letters: &[u8]) -> Vec<Bits> {
    let n = letters.len();
    let mut below = vec![0 as Bits; n];
    for i in (0..n).rev() {
        for j in i + 1..n {
            if !spec.commute(letters[i], letters[j]) {
                below[i] |= (1 as Bits) << j;
                below[i] |= below[j];
            }
        }
    }
    below
}

/// Lexicographically minimal linear extension of the heap of `letters`.
fn lex_min_extension(spec: CoxeterSpec, letters: &[u8]) -> Vec<u8> {
    let n = letters.len();
    let below = order_of(spec, letters);
    let mut above_count = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if below[i] >> j & 1 == 1 {
                above_count[j] += 1;
            }
        }
    }
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = (0..n)
            .filter(|&v| !used[v] && above_count[v] == 0)
            .min_by_key(|&v| (letters[v], v))
            .expect("a minimal element always exists");
        used[pick] = true;
        out.push(letters[pick]);
        for j in 0..n {
            if below[pick] >> j & 1 == 1 {
                above_count[j] -= 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForkSide {
    Left,
    Right,
    Inner,
}

/// A convex chain labeled `(i, i±1, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fork {
    pub outer_top: usize,
    pub middle: usize,
    pub outer_bottom: usize,
    pub side: ForkSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeapFamily {
    Alt,
    Zz,
    Lp { j_l: usize },
    Rp { j_r: usize },
    Lrpz { j_l: usize, j_r: usize },
    Pzz,
}

impl fmt::Display for HeapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeapFamily::Alt => write!(f, "ALT"),
            HeapFamily::Zz => write!(f, "ZZ"),
            HeapFamily::Pzz => write!(f, "PZZ"),
            HeapFamily::Lp { j_l } => write!(f, "LP(j_l={j_l})"),
            HeapFamily::Rp { j_r } => write!(f, "RP(j_r={j_r})"),
            HeapFamily::Lrpz { j_l, j_r } => write!(f, "LRPZ(j_l={j_l},j_r={j_r})"),
        }
    }
}

impl Heap {
    pub fn empty(spec: CoxeterSpec) -> Self {
        Heap {
            spec,
            labels: Vec::new(),
            below: Vec::new(),
            covers: Vec::new(),
        }
    }

    /// Heap of a word; the word must already be valid for `spec`.
    pub fn from_letters(spec: CoxeterSpec, letters: &[u8]) -> Self {
        assert!(letters.len() <= MAX_VERTICES, "heap too large");
        let labels = lex_min_extension(spec, letters);
        let below = order_of(spec, &labels);
        let n = labels.len();
        let mut covers = Vec::new();
        for a in 0..n {
            let mut indirect: Bits = 0;
            for b in a + 1..n {
                if below[a] >> b & 1 == 1 {
                    indirect |= below[b];
                }
            }
            for b in a + 1..n {
                if below[a] >> b & 1 == 1 && indirect >> b & 1 == 0 {
                    covers.push((a, b));
                }
            }
        }
        Heap {
            spec,
            labels,
            below,
            covers,
        }
    }

    pub fn from_word(w: &Word) -> Result<Self> {
        if w.len() > MAX_VERTICES {
            return Err(Error::resource(format!("heap larger than {MAX_VERTICES}")));
        }
        Ok(Self::from_letters(w.spec, &w.letters))
    }

    pub fn spec(&self) -> CoxeterSpec {
        self.spec
    }

    /// Canonical word: the lexicographically minimal linear extension.
    pub fn word(&self) -> &[u8] {
        &self.labels
    }

    pub fn to_word(&self) -> Word {
        Word {
            spec: self.spec,
            letters: self.labels.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> u8 {
        self.labels[v]
    }

    /// Hasse covers `(a, b)` with `a` directly above `b`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// True if `a` lies strictly above `b`.
    pub fn above(&self, a: usize, b: usize) -> bool {
        self.below[a] >> b & 1 == 1
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.above(a, b) || self.above(b, a)
    }

    pub fn covers_pair(&self, a: usize, b: usize) -> bool {
        self.covers.contains(&(a, b))
    }

    /// Number of vertices `v` with `a ≤ v ≤ b`.
    pub fn interval_size(&self, a: usize, b: usize) -> usize {
        if a == b {
            return 1;
        }
        if !self.above(a, b) {
            return 0;
        }
        (a + 1..b)
            .filter(|&v| self.above(a, v) && self.above(v, b))
            .count()
            + 2
    }

    /// Vertices in column `c`, top to bottom.
    pub fn column(&self, c: u8) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.labels[v] == c).collect()
    }

    pub fn column_count(&self, c: u8) -> usize {
        self.labels.iter().filter(|&&l| l == c).count()
    }

    /// Vertices with labels in `cols`, top to bottom (a chain when `cols` are pairwise non-commuting).
    pub fn chain(&self, cols: &[u8]) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| cols.contains(&self.labels[v]))
            .collect()
    }

    /// Cartier–Foata levels, each sorted by column.
    pub fn cf_levels(&self) -> Vec<Vec<u8>> {
        let level = self.levels();
        let depth = level.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); depth];
        for (v, &l) in level.iter().enumerate() {
            out[l].push(self.labels[v]);
        }
        for lvl in &mut out {
            lvl.sort_unstable();
        }
        out
    }

    /// Cartier–Foata level of each vertex (0 for maximal vertices).
    pub fn levels(&self) -> Vec<usize> {
        let n = self.len();
        let mut level = vec![0usize; n];
        for b in 0..n {
            for a in 0..b {
                if self.above(a, b) {
                    level[b] = level[b].max(level[a] + 1);
                }
            }
        }
        level
    }

    /// Vertices with nothing above them.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| !(0..b).any(|a| self.above(a, b)))
            .collect()
    }

    /// Vertices with nothing below them.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.below[a] == 0).collect()
    }

    /// Heap of the subword formed by the vertices in `keep`, in canonical order.
    pub fn restrict(&self, keep: &[usize]) -> Heap {
        let mut ks = keep.to_vec();
        ks.sort_unstable();
        ks.dedup();
        let letters: Vec<u8> = ks.iter().map(|&v| self.labels[v]).collect();
        Heap::from_letters(self.spec, &letters)
    }

    /// The heap with vertex `v` deleted.
    pub fn remove(&self, v: usize) -> Heap {
        let keep: Vec<usize> = (0..self.len()).filter(|&u| u != v).collect();
        self.restrict(&keep)
    }

    /// Subheap `H_I` on the columns in `cols`.
    pub fn subheap(&self, cols: &[u8]) -> Heap {
        self.restrict(&self.chain(cols))
    }

    /// Subheap on the column interval `lo..=hi`.
    pub fn subheap_range(&self, lo: u8, hi: u8) -> Heap {
        let cols: Vec<u8> = (lo..=hi).collect();
        self.subheap(&cols)
    }

    /// All linear extensions as label words.
    pub fn linear_extensions(&self, bound: usize) -> Result<Vec<Vec<u8>>> {
        if self.len() > bound {
            return Err(Error::resource(format!(
                "heap with {} vertices exceeds extension bound {bound}",
                self.len()
            )));
        }
        let n = self.len();
        let mut preds = vec![0 as Bits; n];
        for a in 0..n {
            for b in 0..n {
                if self.above(a, b) {
                    preds[b] |= (1 as Bits) << a;
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(h: &Heap, preds: &[Bits], used: Bits, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == h.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..h.len() {
                if used >> v & 1 == 0 && preds[v] & !used == 0 {
                    cur.push(h.labels[v]);
                    rec(h, preds, used | (1 as Bits) << v, cur, out);
                    cur.pop();
                }
            }
        }
        rec(self, &preds, 0, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    /// A linear extension in which the vertices of `block` appear consecutively,
    /// in their heap order, if one exists.
    pub fn extension_with_consecutive(&self, block: &[usize]) -> Option<Vec<usize>> {
        let mut blk = block.to_vec();
        blk.sort_unstable();
        let inside = |v: usize| blk.contains(&v);
        // The block must be convex.
        for &a in &blk {
            for &b in &blk {
                for v in 0..self.len() {
                    if !inside(v) && self.above(a, v) && self.above(v, b) {
                        return None;
                    }
                }
            }
        }
        let above_block: Vec<usize> = (0..self.len())
            .filter(|&v| !inside(v) && blk.iter().any(|&b| self.above(v, b)))
            .collect();
        let mut order: Vec<usize> = Vec::with_capacity(self.len());
        let rest: Vec<usize> = (0..self.len())
            .filter(|&v| !inside(v) && !above_block.contains(&v))
            .collect();
        order.extend(&above_block);
        order.extend(&blk);
        order.extend(&rest);
        Some(order)
    }

    /// True if the heap is the heap of a reduced fully commutative element.
    pub fn is_fc(&self) -> bool {
        for &(a, b) in &self.covers {
            if self.labels[a] == self.labels[b] {
                return false;
            }
        }
        for x in 0..self.len() {
            let s = self.labels[x];
            for t in [s.wrapping_sub(1), s + 1] {
                if t == 0 || t as usize > self.spec.rank() {
                    continue;
                }
                let m = self.spec.m(s, t) as usize;
                if m < 3 {
                    continue;
                }
                let chain = self.chain(&[s, t]);
                let pos = chain.iter().position(|&v| v == x).unwrap();
                if pos + m > chain.len() {
                    continue;
                }
                let seg = &chain[pos..pos + m];
                let alternating = seg
                    .iter()
                    .enumerate()
                    .all(|(q, &v)| self.labels[v] == if q % 2 == 0 { s } else { t });
                if alternating && self.interval_size(seg[0], seg[m - 1]) == m {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_alternating(&self) -> bool {
        (1..=self.spec.n as u8).all(|i| self.pair_alternates(i))
    }

    /// True if the `{i, i+1}` chain alternates.
    pub fn pair_alternates(&self, i: u8) -> bool {
        let ch = self.chain(&[i, i + 1]);
        ch.windows(2)
            .all(|w| self.labels[w[0]] != self.labels[w[1]])
    }

    /// All forks, top to bottom.
    pub fn forks(&self) -> Vec<Fork> {
        let mut out = Vec::new();
        let rank = self.spec.rank() as u8;
        for x in 0..self.len() {
            let i = self.labels[x];
            for j in [i.wrapping_sub(1), i + 1] {
                if j == 0 || j > rank {
                    continue;
                }
                let chain = self.chain(&[i, j]);
                let pos = chain.iter().position(|&v| v == x).unwrap();
                if pos + 2 >= chain.len() {
                    continue;
                }
                let (y, z) = (chain[pos + 1], chain[pos + 2]);
                if self.labels[y] == j && self.labels[z] == i && self.interval_size(x, z) == 3 {
                    let side = if i == 1 {
                        ForkSide::Left
                    } else if i == rank {
                        ForkSide::Right
                    } else {
                        ForkSide::Inner
                    };
                    out.push(Fork {
                        outer_top: x,
                        middle: y,
                        outer_bottom: z,
                        side,
                    });
                }
            }
        }
        let level = self.levels();
        out.sort_by_key(|f| (level[f.outer_top], self.labels[f.outer_top], f.outer_top));
        out
    }

    /// True if the heap is a chain whose labels read a factor of
    /// `(s_1 s_2 ⋯ s_{n+1} s_n ⋯ s_2)^∞` top to bottom.
    pub fn is_zigzag_factor(&self) -> bool {
        let rank = self.spec.rank() as u8;
        let l = &self.labels;
        if l.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return false;
        }
        l.windows(3)
            .all(|w| w[0] != w[2] || w[1] == 1 || w[1] == rank)
    }

    fn interior_max_count(&self) -> usize {
        (2..=self.spec.n as u8)
            .map(|i| self.column_count(i))
            .max()
            .unwrap_or(0)
    }

    fn has_factor(&self, f: [u8; 3]) -> bool {
        self.labels.windows(3).any(|w| w == f)
    }

    /// Left peak conditions (1) and (2) at index `j`.
    fn left_peak_at(&self, j: u8) -> bool {
        let left = self.subheap_range(1, j);
        let mut peak: Vec<u8> = (1..=j).rev().collect();
        peak.extend(2..=j);
        if left != Heap::from_letters(self.spec, &peak) {
            return false;
        }
        let col = self.column(j);
        if col.len() != 2 {
            return false;
        }
        let (top, bot) = (col[0], col[1]);
        !(0..self.len())
            .any(|v| self.labels[v] == j + 1 && self.above(top, v) && self.above(v, bot))
    }

    fn right_peak_at(&self, j: u8) -> bool {
        let rank = self.spec.rank() as u8;
        let right = self.subheap_range(j, rank);
        let mut peak: Vec<u8> = (j..=rank).collect();
        peak.extend((j..rank).rev());
        if right != Heap::from_letters(self.spec, &peak) {
            return false;
        }
        let col = self.column(j);
        if col.len() != 2 {
            return false;
        }
        let (top, bot) = (col[0], col[1]);
        !(0..self.len())
            .any(|v| self.labels[v] + 1 == j && self.above(top, v) && self.above(v, bot))
    }

    /// Heap on columns `lo..=hi` with one vertex deleted from each listed column.
    fn range_minus(&self, lo: u8, hi: u8, drop: &[u8]) -> Heap {
        let sub = self.subheap_range(lo, hi);
        let mut keep: Vec<usize> = (0..sub.len()).collect();
        for &c in drop {
            if let Some(&v) = sub.column(c).first() {
                keep.retain(|&u| u != v);
            }
        }
        sub.restrict(&keep)
    }

    pub fn is_lp(&self, j: u8) -> bool {
        let rank = self.spec.rank() as u8;
        self.left_peak_at(j) && self.range_minus(j, rank, &[j]).is_alternating()
    }

    pub fn is_rp(&self, j: u8) -> bool {
        self.right_peak_at(j) && self.range_minus(1, j, &[j]).is_alternating()
    }

    pub fn is_lrp(&self, jl: u8, jr: u8) -> bool {
        jl < jr
            && self.left_peak_at(jl)
            && self.right_peak_at(jr)
            && self.range_minus(jl, jr, &[jl, jr]).is_alternating()
    }

    pub fn is_pzz(&self) -> bool {
        let rank = self.spec.rank() as u8;
        let n = self.spec.n as u8;
        self.is_zigzag_factor()
            && self.interior_max_count() < 3
            && self.has_factor([2, 1, 2])
            && self.has_factor([n, rank, n])
    }

    pub fn is_zz(&self) -> bool {
        self.is_zigzag_factor() && self.interior_max_count() >= 3
    }

    /// Family of an FC heap of type C̃_n.
    pub fn classify_family(&self) -> Result<HeapFamily> {
        if self.spec.family != Family::TypeCtilde {
            return Err(Error::Classification(
                "families are defined for type C~ only".into(),
            ));
        }
        if !self.is_fc() {
            return Err(Error::NotFc(format!("{:?}", self.labels)));
        }
        if self.is_alternating() {
            return Ok(HeapFamily::Alt);
        }
        if self.is_zz() {
            return Ok(HeapFamily::Zz);
        }
        if self.is_pzz() {
            return Ok(HeapFamily::Pzz);
        }
        let n = self.spec.n as u8;
        if let Some(j) = (2..=n).find(|&j| self.is_lp(j)) {
            return Ok(HeapFamily::Lp { j_l: j as usize });
        }
        if let Some(j) = (2..=n).find(|&j| self.is_rp(j)) {
            return Ok(HeapFamily::Rp { j_r: j as usize });
        }
        for jl in 2..=n {
            for jr in jl + 1..=n {
                if self.is_lrp(jl, jr) {
                    return Ok(HeapFamily::Lrpz {
                        j_l: jl as usize,
                        j_r: jr as usize,
                    });
                }
            }
        }
        Err(Error::Classification(format!(
            "FC heap {:?} fits no family",
            self.labels
        )))
    }

    /// Columns with counts, for diagnostics.
    pub fn column_counts(&self) -> BTreeMap<u8, usize> {
        let mut m = BTreeMap::new();
        for &l in &self.labels {
            *m.entry(l).or_insert(0) += 1;
        }
        m
    }

    /// Concatenation `self · other` as heaps.
    pub fn concat(&self, other: &Heap) -> Heap {
        let mut w = self.labels.clone();
        w.extend_from_slice(&other.labels);
        Heap::from_letters(self.spec, &w)
    }

    /// The same heap viewed in another Coxeter system with enough generators.
    pub fn relabel(&self, spec: CoxeterSpec) -> Heap {
        Heap::from_letters(spec, &self.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(spec: CoxeterSpec, w: &[u8]) -> Heap {
        Heap::from_letters(spec, w)
    }

    #[test]
    fn fig2_covers() {
        let a4 = CoxeterSpec::type_a(3);
        let heap = h(a4, &[1, 3, 2, 4, 3]);
        assert_eq!(heap.word(), &[1, 3, 2, 4, 3]);
        let covers: Vec<(u8, u8)> = heap
            .covers()
            .iter()
            .map(|&(a, b)| (heap.label(a), heap.label(b)))
            .collect();
        assert_eq!(covers, vec![(1, 2), (3, 2), (3, 4), (2, 3), (4, 3)]);
        let sub = heap.subheap(&[2, 3]);
        assert_eq!(sub.word(), &[3, 2, 3]);
        assert_eq!(sub.covers().len(), 2);
        assert_eq!(heap.linear_extensions(16).unwrap().len(), 5);
    }

    #[test]
    fn canonical_form_is_class_invariant() {
        let a = CoxeterSpec::type_a(3);
        assert_eq!(h(a, &[3, 1, 2]), h(a, &[1, 3, 2]));
        assert_ne!(h(a, &[1, 2]), h(a, &[2, 1]));
        assert_eq!(h(a, &[3, 1]).cf_levels(), vec![vec![1, 3]]);
    }

    #[test]
    fn trivial_cases() {
        let c2 = CoxeterSpec::ctilde(2);
        assert!(h(c2, &[]).is_alternating());
        assert_eq!(
            h(c2, &[]).linear_extensions(16).unwrap(),
            vec![Vec::<u8>::new()]
        );
        assert_eq!(
            h(c2, &[2, 1]).linear_extensions(16).unwrap(),
            vec![vec![2, 1]]
        );
        assert!(h(c2, &[1, 3]).covers().is_empty());
        assert!(!h(c2, &[2, 1, 2]).is_alternating());
        assert!(h(c2, &[2]).forks().is_empty());
    }

    #[test]
    fn forks_and_sides() {
        let c2 = CoxeterSpec::ctilde(2);
        let f = h(c2, &[1, 2, 1]).forks();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].side, ForkSide::Left);
        let f = h(c2, &[3, 2, 3]).forks();
        assert_eq!(f[0].side, ForkSide::Right);
        let c3 = CoxeterSpec::ctilde(3);
        let f = h(c3, &[2, 1, 2]).forks();
        assert_eq!(f[0].side, ForkSide::Inner);
    }

    #[test]
    fn families() {
        let c3 = CoxeterSpec::ctilde(3);
        assert_eq!(
            h(c3, &[2, 1, 2]).classify_family().unwrap(),
            HeapFamily::Lp { j_l: 2 }
        );
        let c2 = CoxeterSpec::ctilde(2);
        assert_eq!(
            h(c2, &[1, 2, 3, 2, 1, 2, 3]).classify_family().unwrap(),
            HeapFamily::Zz
        );
        assert_eq!(
            h(c2, &[1, 2, 1]).classify_family().unwrap(),
            HeapFamily::Alt
        );
        let c6 = CoxeterSpec::ctilde(6);
        let w = [
            2, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 4,
        ];
        assert_eq!(h(c6, &w).classify_family().unwrap(), HeapFamily::Alt);
    }
}
