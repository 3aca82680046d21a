//! JSON records for heaps, diagrams, decorated diagrams and snake paths.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSpec, Family};
use crate::decorated::{Dec, DecDiagram};
use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::snake::{SnakeKind, SnakePath};
use crate::tl::{BoxNode, Diagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub col: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeapJson {
    pub n: usize,
    pub family: Family,
    pub vertices: Vec<VertexJson>,
    pub covers: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub k: usize,
    pub pairs: Vec<(BoxNode, BoxNode)>,
    pub loops: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDecJson {
    pub dec: Vec<Dec>,
    pub blocks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vrank: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecDiagramJson {
    pub k: usize,
    pub pairs: Vec<(BoxNode, BoxNode)>,
    pub edges: Vec<EdgeDecJson>,
    pub loops: Vec<Vec<Dec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnakeJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<u8>,
    pub vertices: Vec<usize>,
}

impl From<&Heap> for HeapJson {
    fn from(h: &Heap) -> Self {
        let spec = h.spec();
        HeapJson {
            n: spec.n,
            family: spec.family,
            vertices: h
                .word()
                .iter()
                .enumerate()
                .map(|(id, &col)| VertexJson { id, col })
                .collect(),
            covers: h.covers().to_vec(),
        }
    }
}

impl HeapJson {
    /// Rebuild the heap, checking that the covers are exactly the Hasse diagram of the labels.
    pub fn to_heap(&self) -> Result<Heap> {
        let spec = CoxeterSpec::new(self.family, self.n)?;
        let m = self.vertices.len();
        if m > crate::heap::MAX_VERTICES {
            return Err(Error::resource(format!(
                "heap larger than {}",
                crate::heap::MAX_VERTICES
            )));
        }
        let mut index = std::collections::HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            spec.check_index(v.col)?;
            if index.insert(v.id, i).is_some() {
                return Err(Error::input(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut succ = vec![Vec::new(); m];
        let mut indeg = vec![0usize; m];
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.covers {
            let (Some(&x), Some(&y)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::input(format!(
                    "cover ({a},{b}) names an unknown vertex"
                )));
            };
            if !seen.insert((x, y)) {
                return Err(Error::input(format!("duplicate cover ({a},{b})")));
            }
            succ[x].push(y);
            indeg[y] += 1;
        }
        let mut ready: BTreeSet<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(m);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &u in &succ[v] {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    ready.insert(u);
                }
            }
        }
        if order.len() != m {
            return Err(Error::input("covers contain a cycle"));
        }
        let letters: Vec<u8> = order.iter().map(|&v| self.vertices[v].col).collect();
        spec.check_word(&letters)?;
        let built = Heap::from_letters(spec, &letters);
        if !same_order(self, &order, &built) {
            return Err(Error::input(
                "covers are not the Hasse diagram of the labelled vertices",
            ));
        }
        Ok(built)
    }
}

/// The input poset, read along `order`, has the same covers as `built`.
fn same_order(input: &HeapJson, order: &[usize], built: &Heap) -> bool {
    let m = order.len();
    let mut pos = vec![0usize; m];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let index: std::collections::HashMap<usize, usize> = input
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id, i))
        .collect();
    let given: BTreeSet<(usize, usize)> = input
        .covers
        .iter()
        .map(|&(a, b)| (pos[index[&a]], pos[index[&b]]))
        .collect();
    let letters: Vec<u8> = order.iter().map(|&v| input.vertices[v].col).collect();
    let canon_pos = canonical_positions(built.spec(), &letters);
    let mapped: BTreeSet<(usize, usize)> = given
        .iter()
        .map(|&(a, b)| (canon_pos[a], canon_pos[b]))
        .collect();
    let expected: BTreeSet<(usize, usize)> = built.covers().iter().copied().collect();
    mapped == expected
}

/// For a word, the canonical vertex id of each of its letters.
fn canonical_positions(spec: CoxeterSpec, letters: &[u8]) -> Vec<usize> {
    let m = letters.len();
    let commute = |a: u8, b: u8| spec.commute(a, b);
    let mut pred = vec![Vec::new(); m];
    for j in 0..m {
        for i in 0..j {
            if !commute(letters[i], letters[j]) {
                pred[j].push(i);
            }
        }
    }
    let mut done = vec![false; m];
    let mut out = vec![0usize; m];
    for next in 0..m {
        let v = (0..m)
            .filter(|&v| !done[v] && pred[v].iter().all(|&p| done[p]))
            .min_by_key(|&v| (letters[v], v))
            .expect("acyclic");
        done[v] = true;
        out[v] = next;
    }
    out
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            k: d.k,
            pairs: d.edges(),
            loops: d.loops,
        }
    }
}

impl DiagramJson {
    pub fn to_diagram(&self) -> Result<Diagram> {
        Diagram::from_pairs(self.k, &self.pairs, self.loops)
    }
}

impl From<&DecDiagram> for DecDiagramJson {
    fn from(d: &DecDiagram) -> Self {
        let k = d.k;
        let with_rank = d.a() == 1;
        let mut pairs = Vec::new();
        let mut edges = Vec::new();
        for (s, t) in d.edge_slots() {
            pairs.push((BoxNode::from_slot(s, k), BoxNode::from_slot(t, k)));
            let blocks = &d.blocks[s];
            let vrank = (with_rank && d.is_propagating(s) && !blocks.is_empty()).then(|| {
                d.vorder
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x)| x as usize == s)
                    .map(|(r, _)| r)
                    .collect()
            });
            edges.push(EdgeDecJson {
                dec: blocks.concat(),
                blocks: blocks.iter().map(Vec::len).collect(),
                vrank,
            });
        }
        DecDiagramJson {
            k,
            pairs,
            edges,
            loops: d.loops.clone(),
        }
    }
}

impl DecDiagramJson {
    pub fn to_diagram(&self) -> Result<DecDiagram> {
        let k = self.k;
        if self.edges.len() != self.pairs.len() {
            return Err(Error::input("edges and pairs differ in length"));
        }
        let base = Diagram::from_pairs(k, &self.pairs, 0)?;
        let mut d = DecDiagram::plain(&base);
        let mut ranked: Vec<(usize, u8)> = Vec::new();
        let with_rank = base.a() == 1;
        for (&(a, b), e) in self.pairs.iter().zip(&self.edges) {
            let s = a.slot(k);
            if s > b.slot(k) {
                return Err(Error::input(format!(
                    "edge ({a},{b}) must be listed from its smaller node"
                )));
            }
            let needs_rank = with_rank && d.is_propagating(s) && !e.blocks.is_empty();
            if needs_rank != e.vrank.is_some() {
                return Err(Error::input(format!("vrank of ({a},{b}) must be given exactly for decorated propagating edges when a = 1")));
            }
            if e.blocks.iter().sum::<usize>() != e.dec.len() || e.blocks.contains(&0) {
                return Err(Error::input(format!(
                    "block lengths do not split the decorations of ({a},{b})"
                )));
            }
            let mut rest = &e.dec[..];
            for &len in &e.blocks {
                d.blocks[s].push(rest[..len].to_vec());
                rest = &rest[len..];
            }
            match &e.vrank {
                Some(r) if r.len() != e.blocks.len() => {
                    return Err(Error::input(format!(
                        "vrank of ({a},{b}) does not match its blocks"
                    )));
                }
                Some(r) => ranked.extend(r.iter().map(|&x| (x, s as u8))),
                None => {}
            }
        }
        ranked.sort_unstable();
        if ranked.iter().enumerate().any(|(i, &(r, _))| r != i) {
            return Err(Error::input("vrank values are not a permutation"));
        }
        d.vorder = ranked.into_iter().map(|(_, s)| s).collect();
        d.loops = self.loops.clone();
        Ok(d)
    }
}

impl From<&SnakePath> for SnakeJson {
    fn from(sp: &SnakePath) -> Self {
        let (kind, x, y) = match sp.kind {
            SnakeKind::Cycle => ("cycle", None, None),
            SnakeKind::ForkPath { x, y } => ("fork", Some(x), Some(y)),
            SnakeKind::Directed { x, y } => ("directed", Some(x), Some(y)),
            SnakeKind::TopDegenerate(x) => ("top", Some(x), None),
            SnakeKind::BottomDegenerate(x) => ("bottom", Some(x), None),
            SnakeKind::Empty(x) => ("empty", Some(x), None),
        };
        SnakeJson {
            kind: kind.into(),
            x,
            y,
            vertices: sp.vertices.clone(),
        }
    }
}

pub fn heap_to_json(h: &Heap) -> String {
    serde_json::to_string(&HeapJson::from(h)).expect("serializable")
}

pub fn heap_from_json(s: &str) -> Result<Heap> {
    let rec: HeapJson =
        serde_json::from_str(s).map_err(|e| Error::input(format!("heap JSON: {e}")))?;
    rec.to_heap()
}

pub fn diagram_to_json(d: &Diagram) -> String {
    serde_json::to_string(&DiagramJson::from(d)).expect("serializable")
}

pub fn diagram_from_json(s: &str) -> Result<Diagram> {
    let rec: DiagramJson =
        serde_json::from_str(s).map_err(|e| Error::input(format!("diagram JSON: {e}")))?;
    rec.to_diagram()
}

pub fn dec_diagram_to_json(d: &DecDiagram) -> String {
    serde_json::to_string(&DecDiagramJson::from(d)).expect("serializable")
}

pub fn dec_diagram_from_json(s: &str) -> Result<DecDiagram> {
    let rec: DecDiagramJson = serde_json::from_str(s)
        .map_err(|e| Error::input(format!("decorated diagram JSON: {e}")))?;
    rec.to_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoration::dec;

    #[test]
    fn heap_roundtrip() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(3), &[2, 1, 3, 2, 4]);
        assert_eq!(heap_from_json(&heap_to_json(&h)).unwrap(), h);
    }

    #[test]
    fn heap_ids_may_be_permuted() {
        let s = r#"{"n":2,"family":"Ctilde","vertices":[{"id":7,"col":1},{"id":3,"col":2}],"covers":[[3,7]]}"#;
        assert_eq!(heap_from_json(s).unwrap().word(), &[2, 1]);
    }

    #[test]
    fn wrong_covers_rejected() {
        let s = r#"{"n":2,"family":"Ctilde","vertices":[{"id":0,"col":1},{"id":1,"col":3}],"covers":[[0,1]]}"#;
        assert!(heap_from_json(s).is_err());
    }

    #[test]
    fn decorated_roundtrip() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1, 2, 1]);
        let d = dec(&h).unwrap();
        assert_eq!(dec_diagram_from_json(&dec_diagram_to_json(&d)).unwrap(), d);
    }
}
