//! LR-decorated diagrams over Ω = {•, ▲, ○, △} and their multiplication.
//!
//! Decorations of an edge are stored from its smaller slot, so propagating edges read
//! north to south and non-propagating edges read from the smaller position.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSpec, Family, Word};
use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::tl::{trace_product, BoxNode, Diagram, Part, Piece};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dec {
    #[serde(rename = "b")]
    BlackDot,
    #[serde(rename = "B")]
    BlackTri,
    #[serde(rename = "w")]
    WhiteDot,
    #[serde(rename = "W")]
    WhiteTri,
}

impl Dec {
    pub fn is_black(self) -> bool {
        matches!(self, Dec::BlackDot | Dec::BlackTri)
    }

    pub fn is_dot(self) -> bool {
        matches!(self, Dec::BlackDot | Dec::WhiteDot)
    }

    fn weight(self) -> u32 {
        if self.is_dot() {
            1
        } else {
            2
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Dec::BlackDot => '•',
            Dec::BlackTri => '▲',
            Dec::WhiteDot => '○',
            Dec::WhiteTri => '△',
        }
    }

    pub fn code(self) -> char {
        match self {
            Dec::BlackDot => 'b',
            Dec::BlackTri => 'B',
            Dec::WhiteDot => 'w',
            Dec::WhiteTri => 'W',
        }
    }

    pub fn from_code(c: char) -> Option<Dec> {
        match c {
            'b' => Some(Dec::BlackDot),
            'B' => Some(Dec::BlackTri),
            'w' => Some(Dec::WhiteDot),
            'W' => Some(Dec::WhiteTri),
            _ => None,
        }
    }
}

pub fn fmt_decs(seq: &[Dec]) -> String {
    seq.iter().map(|d| d.symbol()).collect()
}

/// A scalar `2^two · δ^delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Scalar {
    pub two: u32,
    pub delta: u32,
}

impl Scalar {
    pub const ONE: Scalar = Scalar { two: 0, delta: 0 };

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn times(self, other: Scalar) -> Scalar {
        Scalar {
            two: self.two + other.two,
            delta: self.delta + other.delta,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}*delta^{}", self.two, self.delta)
    }
}

/// Rewrite a linear sequence: maximal same-colour runs collapse to one decoration.
///
/// A run of total weight `m` (• = 1, ▲ = 2) becomes • or ▲ by parity of `m`, with a factor
/// `2^((m-1)/2)`.
pub fn reduce_block(seq: &[Dec]) -> (Vec<Dec>, u32) {
    let mut out = Vec::new();
    let mut two = 0;
    let mut p = 0;
    while p < seq.len() {
        let black = seq[p].is_black();
        let mut m = 0;
        while p < seq.len() && seq[p].is_black() == black {
            m += seq[p].weight();
            p += 1;
        }
        two += (m - 1) / 2;
        out.push(match (black, m % 2 == 1) {
            (true, true) => Dec::BlackDot,
            (true, false) => Dec::BlackTri,
            (false, true) => Dec::WhiteDot,
            (false, false) => Dec::WhiteTri,
        });
    }
    (out, two)
}

/// Outcome of closing a decorated strand into a loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopValue {
    /// The loop evaluates to `2^two · δ`.
    Delta { two: u32 },
    /// An irreducible decorated loop in normal form, with a factor `2^two`.
    Kept { seq: Vec<Dec>, two: u32 },
}

/// Canonical representative of a cyclic sequence up to rotation and reversal.
pub fn canonical_cycle(seq: &[Dec]) -> Vec<Dec> {
    let n = seq.len();
    let mut best: Option<Vec<Dec>> = None;
    for rev in [false, true] {
        let base: Vec<Dec> = if rev {
            seq.iter().rev().copied().collect()
        } else {
            seq.to_vec()
        };
        for r in 0..n.max(1) {
            let cand: Vec<Dec> = (0..n).map(|q| base[(q + r) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Evaluate a closed strand carrying the cyclic sequence `seq`.
pub fn evaluate_loop(seq: &[Dec]) -> LoopValue {
    if seq.is_empty() {
        return LoopValue::Delta { two: 0 };
    }
    let black = seq[0].is_black();
    if seq.iter().all(|d| d.is_black() == black) {
        let m: u32 = seq.iter().map(|d| d.weight()).sum();
        if m.is_multiple_of(2) {
            return LoopValue::Delta { two: (m - 2) / 2 };
        }
        let dot = if black { Dec::BlackDot } else { Dec::WhiteDot };
        return LoopValue::Kept {
            seq: vec![dot],
            two: (m - 1) / 2,
        };
    }
    let start = (0..seq.len())
        .find(|&p| seq[p].is_black() != seq[(p + seq.len() - 1) % seq.len()].is_black())
        .expect("two colours give a colour change");
    let rotated: Vec<Dec> = (0..seq.len())
        .map(|q| seq[(start + q) % seq.len()])
        .collect();
    let (reduced, two) = reduce_block(&rotated);
    LoopValue::Kept {
        seq: canonical_cycle(&reduced),
        two,
    }
}

/// The admissible loop ℒ carrying one ▲ and one △.
pub fn admissible_loop() -> Vec<Dec> {
    canonical_cycle(&[Dec::BlackTri, Dec::WhiteTri])
}

/// A decorated pseudo diagram in normal form.
///
/// `blocks[s]` holds the blocks of the edge whose smaller slot is `s` (empty otherwise).
/// When `a = 1`, `vorder` lists the start slots of propagating edges, one entry per block,
/// from the highest block to the lowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecDiagram {
    pub k: usize,
    pub partner: Vec<u8>,
    pub blocks: Vec<Vec<Vec<Dec>>>,
    pub loops: Vec<Vec<Dec>>,
    pub vorder: Vec<u8>,
}

/// One decoration placed at a height, used to assemble diagrams with vertical positions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placed {
    /// Start slot of the edge.
    pub edge: usize,
    /// Position along the edge in reading order.
    pub along: f64,
    /// Vertical position; smaller is higher.
    pub height: f64,
    pub dec: Dec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagramClass {
    Z,
    P {
        j_l: Option<usize>,
        j_r: Option<usize>,
    },
    A,
}

impl fmt::Display for DiagramClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramClass::Z => write!(f, "Z"),
            DiagramClass::A => write!(f, "A"),
            DiagramClass::P { j_l, j_r } => {
                write!(f, "P(")?;
                if let Some(j) = j_l {
                    write!(f, "j_l={j}")?;
                }
                if j_l.is_some() && j_r.is_some() {
                    write!(f, ",")?;
                }
                if let Some(j) = j_r {
                    write!(f, "j_r={j}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn edge_start(partner: &[u8], slot: usize) -> usize {
    slot.min(partner[slot] as usize)
}

impl DecDiagram {
    /// Undecorated diagram with the given matching; loops of `base` are ignored.
    pub fn plain(base: &Diagram) -> Self {
        DecDiagram {
            k: base.k,
            partner: base.partner.clone(),
            blocks: vec![Vec::new(); 2 * base.k],
            loops: Vec::new(),
            vorder: Vec::new(),
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::plain(&Diagram::identity(k))
    }

    /// The simple decorated diagram `d̃_i` of type C̃_n.
    pub fn simple(spec: CoxeterSpec, i: u8) -> Result<Self> {
        if spec.family != Family::TypeCtilde {
            return Err(Error::input("decorated generators exist for type C~ only"));
        }
        spec.check_index(i)?;
        let k = spec.k();
        let mut d = Self::plain(&Diagram::simple_k(k, i as usize));
        let i = i as usize;
        if i == 1 {
            d.blocks[0] = vec![vec![Dec::BlackDot]];
            d.blocks[k] = vec![vec![Dec::BlackDot]];
        } else if i == k - 1 {
            d.blocks[k - 2] = vec![vec![Dec::WhiteDot]];
            d.blocks[2 * k - 2] = vec![vec![Dec::WhiteDot]];
        }
        Ok(d)
    }

    pub fn base(&self) -> Diagram {
        Diagram {
            k: self.k,
            partner: self.partner.clone(),
            loops: 0,
        }
    }

    pub fn a(&self) -> usize {
        self.base().a()
    }

    pub fn is_propagating(&self, start: usize) -> bool {
        (start < self.k) != ((self.partner[start] as usize) < self.k)
    }

    /// Start slots of propagating edges, left to right.
    pub fn propagating(&self) -> Vec<usize> {
        (0..self.k)
            .filter(|&s| (self.partner[s] as usize) >= self.k)
            .collect()
    }

    /// All decorations of the edge starting at `start`, blocks concatenated.
    pub fn decorations(&self, start: usize) -> Vec<Dec> {
        self.blocks[start].concat()
    }

    /// Edges as `(start, end)` slot pairs.
    pub fn edge_slots(&self) -> Vec<(usize, usize)> {
        (0..2 * self.k)
            .filter(|&s| s < self.partner[s] as usize)
            .map(|s| (s, self.partner[s] as usize))
            .collect()
    }

    pub fn edge_between(&self, a: BoxNode, b: BoxNode) -> Option<usize> {
        let (sa, sb) = (a.slot(self.k), b.slot(self.k));
        (self.partner[sa] as usize == sb).then(|| sa.min(sb))
    }

    pub fn is_decorated(&self) -> bool {
        self.blocks.iter().any(|b| !b.is_empty()) || !self.loops.is_empty()
    }

    fn pieces_decs(&self, from: usize, to: usize) -> Vec<Vec<Dec>> {
        let start = from.min(to);
        let blocks = &self.blocks[start];
        if from == start {
            blocks.clone()
        } else {
            blocks
                .iter()
                .rev()
                .map(|b| b.iter().rev().copied().collect())
                .collect()
        }
    }

    /// Rank of each propagating block: `(start slot, block index) -> position in vorder`.
    fn block_ranks(&self) -> HashMap<(usize, usize), usize> {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut out = HashMap::new();
        for (r, &s) in self.vorder.iter().enumerate() {
            let c = seen.entry(s as usize).or_insert(0);
            out.insert((s as usize, *c), r);
            *c += 1;
        }
        out
    }

    /// `self · bottom` in normal form together with the extracted scalar.
    pub fn multiply(&self, bottom: &DecDiagram) -> Result<(Scalar, DecDiagram)> {
        if self.k != bottom.k {
            return Err(Error::Diagram("box sizes differ".into()));
        }
        let k = self.k;
        let trace = trace_product(k, &self.partner, &bottom.partner);
        let result_a = (0..k)
            .filter(|&s| (trace.partner[s] as usize) < k && s < trace.partner[s] as usize)
            .count();
        let mut scalar = Scalar::ONE;
        let mut out = DecDiagram {
            k,
            partner: trace.partner.clone(),
            blocks: vec![Vec::new(); 2 * k],
            loops: Vec::new(),
            vorder: Vec::new(),
        };
        let decs_of = |p: &Piece| -> Vec<Vec<Dec>> {
            match p.part {
                Part::Top => self.pieces_decs(p.from, p.to),
                Part::Bottom => bottom.pieces_decs(p.from, p.to),
            }
        };
        if result_a == 1 && self.a() <= 1 && bottom.a() <= 1 {
            let top_ranks = self.block_ranks();
            let bot_ranks = bottom.block_ranks();
            // (level, rank, position along edge, edge, block)
            let mut items: Vec<(usize, usize, usize, usize, Vec<Dec>)> = Vec::new();
            for (start, pieces) in &trace.edges {
                let start = *start;
                let prop = (start < k) != ((trace.partner[start] as usize) < k);
                if !prop {
                    let seq: Vec<Dec> = pieces.iter().flat_map(|p| decs_of(p).concat()).collect();
                    if !seq.is_empty() {
                        let (red, two) = reduce_block(&seq);
                        scalar.two += two;
                        out.blocks[start] = vec![red];
                    }
                    continue;
                }
                for (pos, p) in pieces.iter().enumerate() {
                    let blocks = decs_of(p);
                    let factor_prop = (p.from < k) != (p.to < k);
                    for (bi, b) in blocks.into_iter().enumerate() {
                        let (level, rank) = match (p.part, factor_prop) {
                            (Part::Top, true) => (0, top_ranks[&(p.from.min(p.to), bi)]),
                            (Part::Bottom, true) => (2, bot_ranks[&(p.from.min(p.to), bi)]),
                            _ => (1, 0),
                        };
                        items.push((level, rank, pos, start, b));
                    }
                }
            }
            items.sort_by_key(|it| (it.0, it.1, it.2));
            let mut merged: Vec<(usize, Vec<Dec>)> = Vec::new();
            for (_, _, _, edge, b) in items {
                match merged.last_mut() {
                    Some((e, seq)) if *e == edge => seq.extend(b),
                    _ => merged.push((edge, b)),
                }
            }
            for (edge, seq) in merged {
                let (red, two) = reduce_block(&seq);
                scalar.two += two;
                out.blocks[edge].push(red);
                out.vorder.push(edge as u8);
            }
        } else {
            for (start, pieces) in &trace.edges {
                let seq: Vec<Dec> = pieces.iter().flat_map(|p| decs_of(p).concat()).collect();
                if !seq.is_empty() {
                    let (red, two) = reduce_block(&seq);
                    scalar.two += two;
                    out.blocks[*start] = vec![red];
                }
            }
        }
        for lp in &trace.loops {
            let seq: Vec<Dec> = lp.iter().flat_map(|p| decs_of(p).concat()).collect();
            match evaluate_loop(&seq) {
                LoopValue::Delta { two } => {
                    scalar.two += two;
                    scalar.delta += 1;
                }
                LoopValue::Kept { seq, two } => {
                    scalar.two += two;
                    out.loops.push(seq);
                }
            }
        }
        out.loops.extend(self.loops.iter().cloned());
        out.loops.extend(bottom.loops.iter().cloned());
        out.loops.sort();
        Ok((scalar, out))
    }

    /// Assemble a diagram from placed decorations.
    ///
    /// With `a = 1`, propagating-edge decorations are grouped into blocks by height and
    /// adjacent same-edge blocks are conjoined; otherwise each edge is one block.
    /// Returns the scalar produced by the rewriting relations.
    pub fn from_placed(
        base: &Diagram,
        placed: &[Placed],
        loops: Vec<Vec<Dec>>,
    ) -> (Scalar, DecDiagram) {
        let mut d = DecDiagram::plain(base);
        let mut scalar = Scalar::ONE;
        let a1 = base.a() == 1;
        let mut per_edge: HashMap<usize, Vec<Placed>> = HashMap::new();
        for p in placed {
            per_edge.entry(p.edge).or_default().push(*p);
        }
        let mut prop_items: Vec<Placed> = Vec::new();
        for (edge, mut ps) in per_edge {
            let prop = d.is_propagating(edge);
            if a1 && prop {
                prop_items.extend(ps);
                continue;
            }
            ps.sort_by(|x, y| x.along.total_cmp(&y.along));
            let seq: Vec<Dec> = ps.iter().map(|p| p.dec).collect();
            let (red, two) = reduce_block(&seq);
            scalar.two += two;
            d.blocks[edge] = vec![red];
        }
        if a1 {
            prop_items.sort_by(|x, y| {
                x.height
                    .total_cmp(&y.height)
                    .then(x.along.total_cmp(&y.along))
            });
            let mut merged: Vec<(usize, Vec<Dec>)> = Vec::new();
            for p in prop_items {
                match merged.last_mut() {
                    Some((e, seq)) if *e == p.edge => seq.push(p.dec),
                    _ => merged.push((p.edge, vec![p.dec])),
                }
            }
            for (edge, seq) in merged {
                let (red, two) = reduce_block(&seq);
                scalar.two += two;
                d.blocks[edge].push(red);
                d.vorder.push(edge as u8);
            }
        }
        for lp in loops {
            match evaluate_loop(&lp) {
                LoopValue::Delta { two } => {
                    scalar.two += two;
                    scalar.delta += 1;
                }
                LoopValue::Kept { seq, two } => {
                    scalar.two += two;
                    d.loops.push(seq);
                }
            }
        }
        d.loops.sort();
        debug_assert!(d.is_normal(), "block order disagrees with reading order");
        (scalar, d)
    }

    /// The j-th block of every edge appears in `vorder` in reading order.
    pub fn is_normal(&self) -> bool {
        if self.a() != 1 {
            return self.vorder.is_empty() && self.blocks.iter().all(|b| b.len() <= 1);
        }
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &s in &self.vorder {
            *count.entry(s as usize).or_insert(0) += 1;
        }
        (0..2 * self.k).all(|s| {
            let expected = if s < self.partner[s] as usize && self.is_propagating(s) {
                self.blocks[s].len()
            } else {
                0
            };
            count.get(&s).copied().unwrap_or(0) == expected
                && (self.is_propagating(s.min(self.partner[s] as usize))
                    || self.blocks[s].len() <= 1)
        }) && self.vorder.windows(2).all(|w| w[0] != w[1])
    }

    /// Z, P or A diagram.
    pub fn classify(&self) -> DiagramClass {
        let prop = self.propagating();
        if self.a() == 1 && prop.len() >= 2 {
            let first = self.decorations(prop[0]);
            let last = self.decorations(*prop.last().unwrap());
            if first.contains(&Dec::BlackTri) && last.contains(&Dec::WhiteTri) {
                return DiagramClass::Z;
            }
        }
        let k = self.k;
        let vertical = |i: usize| self.partner[i] as usize == k + i;
        let left = vertical(0) && self.decorations(0) == [Dec::BlackTri];
        let right = vertical(k - 1) && self.decorations(k - 1) == [Dec::WhiteTri];
        if left || right {
            let plain = |i: usize| vertical(i) && self.blocks[i].is_empty();
            let j_l = left.then(|| 2 + (1..k).take_while(|&i| plain(i)).count());
            let j_r = right.then(|| k - 2 - (0..k - 1).rev().take_while(|&i| plain(i)).count());
            return DiagramClass::P { j_l, j_r };
        }
        DiagramClass::A
    }

    /// Edge of the diagram touching `node`, as a start slot.
    pub fn edge_at(&self, node: BoxNode) -> usize {
        edge_start(&self.partner, node.slot(self.k))
    }

    /// Decorations of the edge at `node`, read starting from `node`.
    pub fn decorations_from(&self, node: BoxNode) -> Vec<Dec> {
        let s = node.slot(self.k);
        let start = self.edge_at(node);
        let mut seq = self.decorations(start);
        if s != start {
            seq.reverse();
        }
        seq
    }

    /// Admissibility; the a = 1 western/eastern-end condition is checked through block shapes.
    pub fn is_admissible(&self) -> bool {
        let ell = admissible_loop();
        if self.loops.iter().any(|l| *l != ell) {
            return false;
        }
        let k = self.k;
        let ends = [
            (BoxNode::north(1), BoxNode::south(1), true),
            (BoxNode::south(1), BoxNode::north(1), true),
            (BoxNode::north(k), BoxNode::south(k), false),
            (BoxNode::south(k), BoxNode::north(k), false),
        ];
        let dot = |black: bool| if black { Dec::BlackDot } else { Dec::WhiteDot };
        let tri = |black: bool| if black { Dec::BlackTri } else { Dec::WhiteTri };
        if self.a() != 1 {
            for (node, opposite, black) in ends {
                let seq = self.decorations_from(node);
                let connected = self.partner[node.slot(k)] as usize == opposite.slot(k);
                if !connected {
                    if seq.first() != Some(&dot(black)) {
                        return false;
                    }
                } else {
                    let ok = seq.is_empty()
                        || seq == [tri(black)]
                        || (seq.first() == Some(&dot(black))
                            && seq.windows(2).all(|w| w[0].is_black() != w[1].is_black()));
                    if !ok {
                        return false;
                    }
                }
            }
            return self.dots_only_where_required();
        }
        // a = 1
        let prop = self.propagating();
        if prop.len() < 2 {
            return false;
        }
        let (first, last) = (prop[0], *prop.last().unwrap());
        for &p in &prop[1..prop.len() - 1] {
            if !self.blocks[p].is_empty() {
                return false;
            }
        }
        let nb = self.vorder.len();
        let mut idx: HashMap<usize, usize> = HashMap::new();
        for (r, &s) in self.vorder.iter().enumerate() {
            let s = s as usize;
            let bi = *idx.entry(s).and_modify(|c| *c += 1).or_insert(0);
            let block = &self.blocks[s][bi];
            let black = s == first;
            if s != first && s != last {
                return false;
            }
            if first == last {
                return false;
            }
            if block == &[tri(black)] {
                continue;
            }
            if block == &[dot(black)] && (r == 0 || r + 1 == nb) {
                continue;
            }
            return false;
        }
        for (s, e) in self.edge_slots() {
            if self.is_propagating(s) {
                continue;
            }
            let seq = self.decorations(s);
            let (lo, hi) = (s % k + 1, e % k + 1);
            let mut allowed: Vec<Vec<Dec>> = vec![vec![]];
            if lo == 1 {
                allowed.push(vec![Dec::BlackDot]);
            }
            if hi == k {
                allowed.push(vec![Dec::WhiteDot]);
            }
            if !allowed.contains(&seq) {
                return false;
            }
        }
        // A dot on a propagating edge pairs with a dot on the arc at the same end.
        true
    }

    fn dots_only_where_required(&self) -> bool {
        let k = self.k;
        for (s, _) in self.edge_slots() {
            let seq = self.decorations(s);
            for (p, d) in seq.iter().enumerate() {
                if !d.is_dot() {
                    continue;
                }
                let from_start = BoxNode::from_slot(s, k);
                let from_end = BoxNode::from_slot(self.partner[s] as usize, k);
                let at = |node: BoxNode| {
                    if d.is_black() {
                        node.pos == 1
                    } else {
                        node.pos == k
                    }
                };
                let ok = (p == 0 && at(from_start)) || (p + 1 == seq.len() && at(from_end));
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// `θ̃` on a word: fold of decorated generator products, with the accumulated scalar.
pub fn theta_tilde_with_scalar(w: &Word) -> Result<(Scalar, DecDiagram)> {
    let spec = w.spec;
    let mut acc = DecDiagram::identity(spec.k());
    let mut scalar = Scalar::ONE;
    for &i in &w.letters {
        let (s, d) = acc.multiply(&DecDiagram::simple(spec, i)?)?;
        scalar = scalar.times(s);
        acc = d;
    }
    Ok((scalar, acc))
}

/// `θ̃(b̃_w)` for an FC word; a non-unit scalar is reported as an error.
pub fn theta_tilde(w: &Word) -> Result<DecDiagram> {
    let (s, d) = theta_tilde_with_scalar(w)?;
    if !s.is_one() {
        return Err(Error::Scalar(format!("{w} produced {s}")));
    }
    Ok(d)
}

pub fn theta_tilde_heap(h: &Heap) -> Result<DecDiagram> {
    theta_tilde(&h.to_word())
}

impl fmt::Display for DecDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (s, e) in self.edge_slots() {
            let a = BoxNode::from_slot(s, self.k);
            let b = BoxNode::from_slot(e, self.k);
            let blocks: Vec<String> = self.blocks[s].iter().map(|b| fmt_decs(b)).collect();
            if blocks.is_empty() {
                parts.push(format!("({a},{b})"));
            } else {
                parts.push(format!("({a},{b}){}", blocks.join("|")));
            }
        }
        for l in &self.loops {
            parts.push(format!("loop[{}]", fmt_decs(l)));
        }
        write!(f, "{}", parts.join(" "))?;
        if !self.vorder.is_empty() {
            let order: Vec<String> = self
                .vorder
                .iter()
                .map(|&s| BoxNode::from_slot(s as usize, self.k).to_string())
                .collect();
            write!(f, " vorder[{}]", order.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, w: &[u8]) -> Word {
        Word::new(CoxeterSpec::ctilde(n), w.to_vec()).unwrap()
    }

    fn product(n: usize, w: &[u8]) -> (Scalar, DecDiagram) {
        theta_tilde_with_scalar(&word(n, w)).unwrap()
    }

    #[test]
    fn block_rewriting() {
        use Dec::*;
        assert_eq!(reduce_block(&[BlackDot, BlackDot]), (vec![BlackTri], 0));
        assert_eq!(reduce_block(&[BlackTri, BlackDot]), (vec![BlackDot], 1));
        assert_eq!(reduce_block(&[BlackTri, BlackTri]), (vec![BlackTri], 1));
        assert_eq!(
            reduce_block(&[BlackDot, WhiteTri, BlackDot]),
            (vec![BlackDot, WhiteTri, BlackDot], 0)
        );
        assert_eq!(evaluate_loop(&[BlackTri]), LoopValue::Delta { two: 0 });
        assert_eq!(
            evaluate_loop(&[BlackDot, WhiteDot, WhiteDot, BlackDot]),
            LoopValue::Kept {
                seq: admissible_loop(),
                two: 0
            }
        );
    }

    #[test]
    fn relation_c1() {
        for n in 2..=4 {
            for i in 1..=n as u8 + 1 {
                let (s, d) = product(n, &[i, i]);
                assert_eq!(s, Scalar { two: 0, delta: 1 });
                assert_eq!(d, DecDiagram::simple(CoxeterSpec::ctilde(n), i).unwrap());
            }
        }
    }

    #[test]
    fn relation_c4() {
        for n in 2..=4u8 {
            for (i, j) in [(1, 2), (2, 1), (n, n + 1), (n + 1, n)] {
                let (s, d) = product(n as usize, &[i, j, i, j]);
                let (s2, d2) = product(n as usize, &[i, j]);
                assert_eq!(s, Scalar { two: 1, delta: 0 });
                assert!(s2.is_one());
                assert_eq!(d, d2);
            }
        }
    }

    #[test]
    fn small_images() {
        let (s, d) = product(2, &[1, 2, 1]);
        assert!(s.is_one());
        assert_eq!(d.to_string(), "(1,2)• (3,3')▲ (4,4') (1',2')• vorder[3]");
        let (_, d) = product(3, &[2, 1, 2]);
        assert_eq!(d.decorations(0), vec![Dec::BlackTri]);
        let (s, d) = product(2, &[2, 1, 2, 3, 2]);
        assert!(s.is_one());
        assert_eq!(d.to_string(), "(1,1')▲ (2,3) (4,4')△ (2',3') vorder[1,4]");
        assert_eq!(d.classify(), DiagramClass::Z);
    }
}
