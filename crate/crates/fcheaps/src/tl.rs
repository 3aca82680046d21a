//! Undecorated Temperley–Lieb pseudo diagrams on the standard k-box.
//!
//! Nodes are stored as slots: north node `i` is slot `i-1`, south node `i′` is slot `k+i-1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::coxeter::{enumerate_fc, CoxeterSpec, Family};
use crate::error::{Error, Result};
use crate::heap::Heap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Face {
    N,
    S,
}

/// A mark point of the box, `pos` in `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxNode {
    pub pos: usize,
    pub face: Face,
}

impl BoxNode {
    pub fn north(pos: usize) -> Self {
        BoxNode { pos, face: Face::N }
    }

    pub fn south(pos: usize) -> Self {
        BoxNode { pos, face: Face::S }
    }

    pub fn slot(&self, k: usize) -> usize {
        match self.face {
            Face::N => self.pos - 1,
            Face::S => k + self.pos - 1,
        }
    }

    pub fn from_slot(slot: usize, k: usize) -> Self {
        if slot < k {
            BoxNode::north(slot + 1)
        } else {
            BoxNode::south(slot - k + 1)
        }
    }

    pub fn is_north(&self) -> bool {
        self.face == Face::N
    }
}

impl fmt::Display for BoxNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.face {
            Face::N => write!(f, "{}", self.pos),
            Face::S => write!(f, "{}'", self.pos),
        }
    }
}

/// Position of a slot in the clockwise boundary order: north left to right, then south right to left.
pub fn boundary_position(slot: usize, k: usize) -> usize {
    if slot < k {
        slot
    } else {
        2 * k - 1 - (slot - k)
    }
}

/// A planar perfect matching of the 2k slots together with a loop count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub k: usize,
    pub partner: Vec<u8>,
    pub loops: u32,
}

/// Which factor of a product a traversed piece belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Top,
    Bottom,
}

/// One edge of a factor, traversed from slot `from` to slot `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Piece {
    pub part: Part,
    pub from: usize,
    pub to: usize,
}

/// The result of tracing the strands of `top · bottom`.
#[derive(Debug, Clone)]
pub struct Trace {
    pub partner: Vec<u8>,
    /// For each result slot that starts an edge (the smaller slot), the pieces from it to its partner.
    pub edges: Vec<(usize, Vec<Piece>)>,
    pub loops: Vec<Vec<Piece>>,
}

/// Trace the product of two matchings on `k` nodes, `top` placed above `bottom`.
pub fn trace_product(k: usize, top: &[u8], bottom: &[u8]) -> Trace {
    let mut partner = vec![0u8; 2 * k];
    let mut edges = Vec::new();
    let mut middle_seen = vec![false; k];
    let mut done = vec![false; 2 * k];
    for start in 0..2 * k {
        if done[start] {
            continue;
        }
        let mut pieces = Vec::new();
        let (mut part, mut slot) = if start < k {
            (Part::Top, start)
        } else {
            (Part::Bottom, start)
        };
        let end = loop {
            let d = match part {
                Part::Top => top,
                Part::Bottom => bottom,
            };
            let to = d[slot] as usize;
            pieces.push(Piece {
                part,
                from: slot,
                to,
            });
            match part {
                Part::Top if to < k => break to,
                Part::Top => {
                    let j = to - k;
                    middle_seen[j] = true;
                    part = Part::Bottom;
                    slot = j;
                }
                Part::Bottom if to >= k => break to,
                Part::Bottom => {
                    middle_seen[to] = true;
                    part = Part::Top;
                    slot = to + k;
                }
            }
        };
        partner[start] = end as u8;
        partner[end] = start as u8;
        done[start] = true;
        done[end] = true;
        edges.push((start, pieces));
    }
    let mut loops = Vec::new();
    for j in 0..k {
        if middle_seen[j] {
            continue;
        }
        let mut pieces = Vec::new();
        let (mut part, mut slot) = (Part::Bottom, j);
        loop {
            let d = match part {
                Part::Top => top,
                Part::Bottom => bottom,
            };
            let to = d[slot] as usize;
            pieces.push(Piece {
                part,
                from: slot,
                to,
            });
            let mid = match part {
                Part::Top => to - k,
                Part::Bottom => to,
            };
            middle_seen[mid] = true;
            match part {
                Part::Top => {
                    part = Part::Bottom;
                    slot = mid;
                }
                Part::Bottom => {
                    part = Part::Top;
                    slot = mid + k;
                }
            }
            if part == Part::Bottom && slot == j {
                break;
            }
        }
        loops.push(pieces);
    }
    Trace {
        partner,
        edges,
        loops,
    }
}

impl Diagram {
    pub fn identity(k: usize) -> Self {
        let partner = (0..2 * k)
            .map(|s| if s < k { (s + k) as u8 } else { (s - k) as u8 })
            .collect();
        Diagram {
            k,
            partner,
            loops: 0,
        }
    }

    /// The simple diagram `d_i` of `spec`.
    pub fn simple(spec: CoxeterSpec, i: u8) -> Result<Self> {
        spec.check_index(i)?;
        Ok(Self::simple_k(spec.k(), i as usize))
    }

    pub fn simple_k(k: usize, i: usize) -> Self {
        let mut d = Self::identity(k);
        let (a, b) = (i - 1, i);
        d.partner[a] = b as u8;
        d.partner[b] = a as u8;
        d.partner[k + a] = (k + b) as u8;
        d.partner[k + b] = (k + a) as u8;
        d
    }

    pub fn multiply(&self, bottom: &Diagram) -> Result<Diagram> {
        if self.k != bottom.k {
            return Err(Error::Diagram(format!(
                "box sizes differ: {} vs {}",
                self.k, bottom.k
            )));
        }
        let t = trace_product(self.k, &self.partner, &bottom.partner);
        Ok(Diagram {
            k: self.k,
            partner: t.partner,
            loops: self.loops + bottom.loops + t.loops.len() as u32,
        })
    }

    /// Product of simple diagrams along `letters`.
    pub fn of_word(k: usize, letters: &[u8]) -> Diagram {
        letters.iter().fold(Diagram::identity(k), |acc, &i| {
            acc.multiply(&Diagram::simple_k(k, i as usize))
                .expect("same box size")
        })
    }

    /// Number of non-propagating edges on the north face.
    pub fn a(&self) -> usize {
        (0..self.k)
            .filter(|&s| (self.partner[s] as usize) < self.k && s < self.partner[s] as usize)
            .count()
    }

    pub fn without_loops(&self) -> Diagram {
        Diagram {
            loops: 0,
            ..self.clone()
        }
    }

    /// Edges as node pairs, each listed once from its smaller slot.
    pub fn edges(&self) -> Vec<(BoxNode, BoxNode)> {
        (0..2 * self.k)
            .filter(|&s| s < self.partner[s] as usize)
            .map(|s| {
                (
                    BoxNode::from_slot(s, self.k),
                    BoxNode::from_slot(self.partner[s] as usize, self.k),
                )
            })
            .collect()
    }

    /// Build from an explicit list of node pairs, checking that it is a planar perfect matching.
    pub fn from_pairs(k: usize, pairs: &[(BoxNode, BoxNode)], loops: u32) -> Result<Diagram> {
        let mut partner = vec![u8::MAX; 2 * k];
        for &(a, b) in pairs {
            for x in [a, b] {
                if x.pos == 0 || x.pos > k {
                    return Err(Error::input(format!("node {x} outside box of size {k}")));
                }
            }
            let (sa, sb) = (a.slot(k), b.slot(k));
            if sa == sb || partner[sa] != u8::MAX || partner[sb] != u8::MAX {
                return Err(Error::input(format!("node used twice in pair ({a},{b})")));
            }
            partner[sa] = sb as u8;
            partner[sb] = sa as u8;
        }
        if partner.contains(&u8::MAX) {
            return Err(Error::input("matching is not perfect"));
        }
        let d = Diagram { k, partner, loops };
        if !is_planar(k, &d.partner) {
            return Err(Error::input("matching is not planar"));
        }
        Ok(d)
    }
}

/// True if no two edges interleave in the boundary order.
pub fn is_planar(k: usize, partner: &[u8]) -> bool {
    let chords: Vec<(usize, usize)> = (0..2 * k)
        .filter(|&s| s < partner[s] as usize)
        .map(|s| {
            let (x, y) = (
                boundary_position(s, k),
                boundary_position(partner[s] as usize, k),
            );
            (x.min(y), x.max(y))
        })
        .collect();
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .edges()
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        write!(f, "{}", parts.join(" "))?;
        if self.loops > 0 {
            write!(f, " delta^{}", self.loops)?;
        }
        Ok(())
    }
}

/// `d(H)`: product of simple diagrams along the canonical word.
pub fn diagram_of_heap(h: &Heap) -> Diagram {
    Diagram::of_word(h.spec().k(), h.word())
}

/// Table from loop-free matchings to FC heaps of type A_{n+1}.
#[derive(Debug)]
pub struct ThetaInverseTable {
    pub spec: CoxeterSpec,
    map: HashMap<Vec<u8>, Heap>,
}

impl ThetaInverseTable {
    pub fn build(n: usize) -> Result<Self> {
        let spec = CoxeterSpec::new(Family::TypeA, n)?;
        let mut map = HashMap::new();
        for h in enumerate_fc(spec, None)? {
            let d = diagram_of_heap(&h);
            debug_assert_eq!(d.loops, 0);
            map.insert(d.partner, h);
        }
        Ok(ThetaInverseTable { spec, map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, d: &Diagram) -> Result<Heap> {
        if d.loops != 0 {
            return Err(Error::Diagram(
                "theta_inverse needs a loop-free diagram".into(),
            ));
        }
        if d.k != self.spec.k() {
            return Err(Error::Diagram("box size does not match the table".into()));
        }
        self.map
            .get(&d.partner)
            .cloned()
            .ok_or_else(|| Error::Diagram(format!("no FC heap has diagram {d}")))
    }
}

/// Shared table for rank parameter `n`, built once.
pub fn theta_inverse_table(n: usize) -> Result<Arc<ThetaInverseTable>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ThetaInverseTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("table cache").get(&n) {
        return Ok(t.clone());
    }
    let t = Arc::new(ThetaInverseTable::build(n)?);
    cache.lock().expect("table cache").insert(n, t.clone());
    Ok(t)
}

/// The unique FC heap of type A_{n+1} with loop-free diagram `d`.
pub fn theta_inverse(d: &Diagram) -> Result<Heap> {
    if d.k < 3 {
        return Err(Error::Diagram("box size must be at least 3".into()));
    }
    if !is_planar(d.k, &d.partner) {
        return Err(Error::Diagram("matching is not planar".into()));
    }
    theta_inverse_table(d.k - 2)?.get(d)
}

/// `(τ(w̃), α(w̃))` for an FC heap of type C̃_n.
pub fn tau_alpha(h: &Heap) -> Result<(Heap, u32)> {
    let d = diagram_of_heap(h);
    let tau = theta_inverse(&d.without_loops())?;
    Ok((tau, d.loops))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_shape() {
        let d = Diagram::simple(CoxeterSpec::ctilde(2), 2).unwrap();
        let e = d.edges();
        assert!(e.contains(&(BoxNode::north(2), BoxNode::north(3))));
        assert!(e.contains(&(BoxNode::north(1), BoxNode::south(1))));
        assert!(e.contains(&(BoxNode::south(2), BoxNode::south(3))));
        assert_eq!(d.a(), 1);
        assert_eq!(d.loops, 0);
    }

    #[test]
    fn relations_a() {
        let k = 5;
        for i in 1..=4 {
            let di = Diagram::simple_k(k, i);
            let sq = di.multiply(&di).unwrap();
            assert_eq!(sq.partner, di.partner);
            assert_eq!(sq.loops, 1);
            for j in 1..=4 {
                let dj = Diagram::simple_k(k, j);
                if i.abs_diff(j) == 1 {
                    assert_eq!(di.multiply(&dj).unwrap().multiply(&di).unwrap(), di);
                }
                if i.abs_diff(j) > 1 {
                    assert_eq!(di.multiply(&dj).unwrap(), dj.multiply(&di).unwrap());
                }
            }
        }
    }

    #[test]
    fn planarity_check() {
        let k = 4;
        let bad = [
            (BoxNode::north(1), BoxNode::north(3)),
            (BoxNode::north(2), BoxNode::north(4)),
            (BoxNode::south(1), BoxNode::south(2)),
            (BoxNode::south(3), BoxNode::south(4)),
        ];
        assert!(Diagram::from_pairs(k, &bad, 0).is_err());
        let good: Vec<_> = Diagram::simple_k(4, 2).edges();
        assert_eq!(
            Diagram::from_pairs(k, &good, 0).unwrap(),
            Diagram::simple_k(4, 2)
        );
    }

    #[test]
    fn theta_inverse_examples() {
        let a = CoxeterSpec::type_a(2);
        assert!(theta_inverse(&Diagram::identity(4)).unwrap().is_empty());
        assert_eq!(
            theta_inverse(&Diagram::of_word(4, &[2, 1, 3])).unwrap(),
            Heap::from_letters(a, &[2, 1, 3])
        );
        assert_eq!(theta_inverse_table(2).unwrap().len(), 14);
    }

    #[test]
    fn h_infinity_has_a_loop() {
        let c2 = CoxeterSpec::ctilde(2);
        let h = Heap::from_letters(c2, &[1, 3, 2, 1, 3]);
        let d = diagram_of_heap(&h);
        assert_eq!(d.loops, 1);
        assert_eq!(d.without_loops(), Diagram::of_word(4, &[1, 3]));
    }
}
