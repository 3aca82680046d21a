//! Snake paths of alternating heaps and the edges they determine in the box.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heap::{Fork, ForkSide, Heap};
use crate::tl::{BoxNode, Face};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Dir {
    Left,
    Right,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Vert {
    Up,
    Down,
}

impl Vert {
    fn flip(self) -> Vert {
        match self {
            Vert::Up => Vert::Down,
            Vert::Down => Vert::Up,
        }
    }
}

/// A single up-down step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub dir: Dir,
    pub vert: Vert,
}

/// A fork crossed by a snake path, listed as (top, middle, bottom).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub top: usize,
    pub middle: usize,
    pub bottom: usize,
    pub side: ForkSide,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SnakeKind {
    Cycle,
    ForkPath { x: u8, y: u8 },
    Directed { x: u8, y: u8 },
    TopDegenerate(u8),
    BottomDegenerate(u8),
    Empty(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnakePath {
    pub kind: SnakeKind,
    /// Vertices in path order (for fork paths: from `B_x` to `B_y`).
    pub vertices: Vec<usize>,
    /// Hasse edges crossed, as (upper, lower) pairs.
    pub edges: Vec<(usize, usize)>,
    /// Forks crossed, in path order.
    pub crossings: Vec<Crossing>,
    pub anchor_fork: Option<(usize, usize, usize)>,
    /// Last step of `γ^top` and `γ^bot` for fork paths; first and last step for directed paths.
    pub steps: Option<(Step, Step)>,
}

/// The box edge (or loop) attached to a snake path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SnakeEdge {
    Edge(BoxNode, BoxNode),
    Loop,
}

fn next_in(h: &Heap, v: usize, cols: [u8; 2], downward: bool) -> Option<usize> {
    let chain = h.chain(&cols);
    let p = chain.iter().position(|&u| u == v)?;
    if downward {
        chain.get(p + 1).copied()
    } else if p > 0 {
        Some(chain[p - 1])
    } else {
        None
    }
}

/// Target of a step from `v`, if it exists.
pub fn step_target(h: &Heap, v: usize, step: Step) -> Option<usize> {
    let c = h.label(v);
    let rank = h.spec().rank() as u8;
    let other = match step.dir {
        Dir::Right if c < rank => c + 1,
        Dir::Left if c > 1 => c - 1,
        _ => return None,
    };
    let u = next_in(h, v, [c, other], step.vert == Vert::Down)?;
    (h.label(u) == other).then_some(u)
}

struct Walk {
    nodes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    crossings: Vec<Crossing>,
    last: Option<Step>,
    cycle: bool,
}

fn edge_pair(h: &Heap, a: usize, b: usize) -> (usize, usize) {
    if h.above(a, b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Up-down walk with the turnaround rule at the far column.
fn walk(h: &Heap, start: usize, dir0: Dir, vert0: Vert) -> Walk {
    let rank = h.spec().rank() as u8;
    let mut nodes = vec![start];
    let mut edges = Vec::new();
    let mut crossings = Vec::new();
    let mut seen: HashSet<(usize, Dir, Vert)> = HashSet::new();
    let (mut v, mut dir, mut vert) = (start, dir0, vert0);
    let mut last: Option<Step> = None;
    loop {
        if !seen.insert((v, dir, vert)) {
            return Walk {
                nodes,
                edges,
                crossings,
                last,
                cycle: true,
            };
        }
        let step = Step { dir, vert };
        if let Some(u) = step_target(h, v, step) {
            edges.push(edge_pair(h, v, u));
            nodes.push(u);
            last = Some(step);
            v = u;
            vert = vert.flip();
            continue;
        }
        let x = h.label(v);
        let far = match dir {
            Dir::Right => x == rank,
            Dir::Left => x == 1,
        };
        let Some(prev) = last else { break };
        if !far {
            break;
        }
        let inner = if x == 1 { 2 } else { rank - 1 };
        let col = h.column(x);
        let p = col
            .iter()
            .position(|&u| u == v)
            .expect("vertex in its column");
        let (other, top, bottom, first) = match prev.vert {
            Vert::Down if p > 0 => (col[p - 1], col[p - 1], v, Vert::Down),
            Vert::Up if p + 1 < col.len() => (col[p + 1], v, col[p + 1], Vert::Up),
            _ => break,
        };
        let middle = next_in(h, top, [inner.min(x), inner.max(x)], true)
            .expect("an alternating heap has a middle node");
        let side = if x == 1 {
            ForkSide::Left
        } else {
            ForkSide::Right
        };
        crossings.push(Crossing {
            top,
            middle,
            bottom,
            side,
        });
        nodes.push(other);
        v = other;
        dir = dir.flip();
        vert = first;
    }
    Walk {
        nodes,
        edges,
        crossings,
        last,
        cycle: false,
    }
}

/// The snake path of a left or right fork (UD1)–(UD4).
pub fn snake_from_fork(h: &Heap, f: &Fork) -> Result<SnakePath> {
    if !h.is_alternating() {
        return Err(Error::Snake("heap is not alternating".into()));
    }
    let dir = match f.side {
        ForkSide::Left => Dir::Right,
        ForkSide::Right => Dir::Left,
        ForkSide::Inner => return Err(Error::Snake("inner forks have no snake path".into())),
    };
    let own = Crossing {
        top: f.outer_top,
        middle: f.middle,
        bottom: f.outer_bottom,
        side: f.side,
    };
    let anchor = Some((f.outer_top, f.middle, f.outer_bottom));
    let top = walk(h, f.outer_top, dir, Vert::Down);
    if top.cycle {
        let mut crossings = vec![own];
        crossings.extend(top.crossings.iter().copied());
        return Ok(SnakePath {
            kind: SnakeKind::Cycle,
            vertices: top.nodes,
            edges: top.edges,
            crossings,
            anchor_fork: anchor,
            steps: None,
        });
    }
    let bot = walk(h, f.outer_bottom, dir, Vert::Up);
    let x = h.label(*top.nodes.last().unwrap());
    let y = h.label(*bot.nodes.last().unwrap());
    let mut vertices: Vec<usize> = top.nodes.iter().rev().copied().collect();
    vertices.extend(bot.nodes.iter().copied());
    let mut edges: Vec<(usize, usize)> = top.edges.iter().rev().copied().collect();
    edges.extend(bot.edges.iter().copied());
    let mut crossings: Vec<Crossing> = top.crossings.iter().rev().copied().collect();
    crossings.push(own);
    crossings.extend(bot.crossings.iter().copied());
    Ok(SnakePath {
        kind: SnakeKind::ForkPath { x, y },
        vertices,
        edges,
        crossings,
        anchor_fork: anchor,
        steps: Some((top.last.unwrap(), bot.last.unwrap())),
    })
}

fn directed_from(h: &Heap, a: usize, b: usize, covered: &HashSet<(usize, usize)>) -> SnakePath {
    // `a` is the left end of the seed edge, `b` the right one.
    let free = |u: usize, v: usize| !covered.contains(&edge_pair(h, u, v));
    let seed_vert = if h.above(a, b) { Vert::Down } else { Vert::Up };
    let mut right = vec![b];
    let mut vert = seed_vert.flip();
    loop {
        let v = *right.last().unwrap();
        match step_target(
            h,
            v,
            Step {
                dir: Dir::Right,
                vert,
            },
        ) {
            Some(u) if free(v, u) => {
                right.push(u);
                vert = vert.flip();
            }
            _ => break,
        }
    }
    let last_vert = vert.flip();
    let mut left = vec![a];
    // Going left from `a` retraces the step into `a`, whose vertical sense is opposite to the seed.
    let mut back = seed_vert;
    loop {
        let v = *left.last().unwrap();
        match step_target(
            h,
            v,
            Step {
                dir: Dir::Left,
                vert: back,
            },
        ) {
            Some(u) if free(v, u) => {
                left.push(u);
                back = back.flip();
            }
            _ => break,
        }
    }
    let first_vert = back;
    let mut vertices: Vec<usize> = left.into_iter().rev().collect();
    vertices.extend(right);
    let edges = vertices
        .windows(2)
        .map(|w| edge_pair(h, w[0], w[1]))
        .collect();
    let x = h.label(vertices[0]);
    let y = h.label(*vertices.last().unwrap());
    SnakePath {
        kind: SnakeKind::Directed { x, y },
        vertices,
        edges,
        crossings: Vec::new(),
        anchor_fork: None,
        steps: Some((
            Step {
                dir: Dir::Right,
                vert: first_vert,
            },
            Step {
                dir: Dir::Right,
                vert: last_vert,
            },
        )),
    }
}

/// `Snakes(H)` for an alternating heap.
pub fn snakes_partition(h: &Heap) -> Result<Vec<SnakePath>> {
    if !h.is_alternating() {
        return Err(Error::Snake("heap is not alternating".into()));
    }
    let mut out = Vec::new();
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    let mut used_forks: HashSet<(usize, usize, usize)> = HashSet::new();
    let forks = h.forks();
    for side in [ForkSide::Left, ForkSide::Right] {
        for f in forks.iter().filter(|f| f.side == side) {
            if used_forks.contains(&(f.outer_top, f.middle, f.outer_bottom)) {
                continue;
            }
            let sp = snake_from_fork(h, f)?;
            for c in &sp.crossings {
                used_forks.insert((c.top, c.middle, c.bottom));
            }
            for e in &sp.edges {
                if !covered.insert(*e) {
                    return Err(Error::Snake(format!("edge {e:?} crossed twice")));
                }
            }
            out.push(sp);
        }
    }
    let mut hasse: Vec<(usize, usize)> = h.covers().to_vec();
    hasse.sort_by_key(|&(a, b)| (a.min(b), h.label(a).min(h.label(b))));
    for &(a, b) in &hasse {
        if covered.contains(&(a, b)) {
            continue;
        }
        let (l, r) = if h.label(a) < h.label(b) {
            (a, b)
        } else {
            (b, a)
        };
        let sp = directed_from(h, l, r, &covered);
        for e in &sp.edges {
            covered.insert(*e);
        }
        out.push(sp);
    }
    for v in h.maximal() {
        out.push(degenerate(SnakeKind::TopDegenerate(h.label(v)), v));
    }
    for v in h.minimal() {
        out.push(degenerate(SnakeKind::BottomDegenerate(h.label(v)), v));
    }
    let rank = h.spec().rank() as u8;
    for x in 1..=rank + 1 {
        let empty = |c: u8| c == 0 || c > rank || h.column_count(c) == 0;
        if empty(x - 1) && empty(x) {
            out.push(SnakePath {
                kind: SnakeKind::Empty(x),
                vertices: Vec::new(),
                edges: Vec::new(),
                crossings: Vec::new(),
                anchor_fork: None,
                steps: None,
            });
        }
    }
    Ok(out)
}

fn degenerate(kind: SnakeKind, v: usize) -> SnakePath {
    SnakePath {
        kind,
        vertices: vec![v],
        edges: Vec::new(),
        crossings: Vec::new(),
        anchor_fork: None,
        steps: None,
    }
}

fn end_node(x: u8, step: Step) -> BoxNode {
    let x = x as usize;
    match (step.dir, step.vert) {
        (Dir::Right, Vert::Down) => BoxNode::north(x + 1),
        (Dir::Left, Vert::Down) => BoxNode::north(x),
        (Dir::Right, Vert::Up) => BoxNode::south(x + 1),
        (Dir::Left, Vert::Up) => BoxNode::south(x),
    }
}

/// `(h, k)_γ`, oriented as produced by the path.
pub fn edge_of_snake(sp: &SnakePath) -> SnakeEdge {
    match sp.kind {
        SnakeKind::Cycle => SnakeEdge::Loop,
        SnakeKind::ForkPath { x, y } => {
            let (top, bot) = sp.steps.expect("fork paths record their last steps");
            SnakeEdge::Edge(end_node(x, top), end_node(y, bot))
        }
        SnakeKind::Directed { x, y } => {
            let (first, last) = sp.steps.expect("directed paths record their end steps");
            let h = match first.vert {
                Vert::Up => BoxNode::north(x as usize),
                Vert::Down => BoxNode::south(x as usize),
            };
            let k = match last.vert {
                Vert::Down => BoxNode::north(y as usize + 1),
                Vert::Up => BoxNode::south(y as usize + 1),
            };
            SnakeEdge::Edge(h, k)
        }
        SnakeKind::TopDegenerate(x) => {
            SnakeEdge::Edge(BoxNode::north(x as usize), BoxNode::north(x as usize + 1))
        }
        SnakeKind::BottomDegenerate(x) => {
            SnakeEdge::Edge(BoxNode::south(x as usize), BoxNode::south(x as usize + 1))
        }
        SnakeKind::Empty(x) => {
            SnakeEdge::Edge(BoxNode::north(x as usize), BoxNode::south(x as usize))
        }
    }
}

/// Rank of a node in `≻_ℓ`: 1, 2, …, n+2, (n+2)′, …, 1′ (smaller rank is greater).
fn rank_left(a: BoxNode, k: usize) -> usize {
    match a.face {
        Face::N => a.pos,
        Face::S => 2 * k + 1 - a.pos,
    }
}

fn rank_right(a: BoxNode, k: usize) -> usize {
    match a.face {
        Face::N => k + 1 - a.pos,
        Face::S => k + a.pos,
    }
}

/// `a ≻_ℓ b`.
pub fn precedes_left(a: BoxNode, b: BoxNode, k: usize) -> bool {
    rank_left(a, k) < rank_left(b, k)
}

/// `a ≻_r b`.
pub fn precedes_right(a: BoxNode, b: BoxNode, k: usize) -> bool {
    rank_right(a, k) < rank_right(b, k)
}

fn unordered(e: SnakeEdge, k: usize) -> Option<(usize, usize)> {
    match e {
        SnakeEdge::Edge(a, b) => {
            let (x, y) = (a.slot(k), b.slot(k));
            Some((x.min(y), x.max(y)))
        }
        SnakeEdge::Loop => None,
    }
}

/// The map `E`: each snake path with its edge, checked to be a bijection onto the edges of
/// `d_τ` together with `α` loops.
pub fn edge_bijection(h: &Heap) -> Result<Vec<(SnakePath, SnakeEdge)>> {
    let k = h.spec().k();
    let pairs: Vec<(SnakePath, SnakeEdge)> = snakes_partition(h)?
        .into_iter()
        .map(|sp| {
            let e = edge_of_snake(&sp);
            (sp, e)
        })
        .collect();
    let (tau, alpha) = crate::reduction::reduce(h)?;
    let target = crate::tl::Diagram::of_word(k, tau.word());
    let mut expected: Vec<Option<(usize, usize)>> = target
        .edges()
        .into_iter()
        .map(|(a, b)| Some((a.slot(k), b.slot(k))))
        .collect();
    expected.extend(std::iter::repeat_n(None, alpha as usize));
    let mut got: Vec<Option<(usize, usize)>> =
        pairs.iter().map(|(_, e)| unordered(*e, k)).collect();
    expected.sort_unstable();
    got.sort_unstable();
    if expected != got {
        return Err(Error::Snake(format!(
            "snake edges {got:?} differ from the edges of d_tau with {alpha} loops"
        )));
    }
    Ok(pairs)
}

/// Violations of the fork-order inequalities: `h ≻ k` for every non-cycle fork path, and
/// `h ≻ k ≻ h̄ ≻ k̄` (or equal edges) for forks `f` above `f̄` on the same side.
pub fn fork_order_violations(h: &Heap) -> Result<Vec<String>> {
    if !h.is_alternating() {
        return Err(Error::Snake("heap is not alternating".into()));
    }
    let k = h.spec().k();
    let mut out = Vec::new();
    let forks = h.forks();
    let mut edges = Vec::with_capacity(forks.len());
    for f in &forks {
        edges.push(edge_of_snake(&snake_from_fork(h, f)?));
    }
    let prec = |side: ForkSide, a: BoxNode, b: BoxNode| match side {
        ForkSide::Left => precedes_left(a, b, k),
        _ => precedes_right(a, b, k),
    };
    for (f, e) in forks.iter().zip(&edges) {
        if let SnakeEdge::Edge(a, b) = *e {
            if !prec(f.side, a, b) {
                out.push(format!("fork at {}: ({a},{b}) is not decreasing", f.middle));
            }
        }
    }
    for (i, (f, e)) in forks.iter().zip(&edges).enumerate() {
        for (g, eg) in forks.iter().zip(&edges).skip(i + 1) {
            if f.side != g.side || !h.above(f.middle, g.middle) {
                continue;
            }
            let (SnakeEdge::Edge(a, b), SnakeEdge::Edge(c, d)) = (*e, *eg) else {
                continue;
            };
            if (a, b) == (c, d) {
                continue;
            }
            if !(prec(f.side, a, b) && prec(f.side, b, c) && prec(f.side, c, d)) {
                out.push(format!(
                    "forks at {} and {}: ({a},{b}) and ({c},{d}) are not nested",
                    f.middle, g.middle
                ));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSpec;

    #[test]
    fn small_fork_path() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1, 2, 1]);
        let sp = snake_from_fork(&h, &h.forks()[0]).unwrap();
        assert_eq!(sp.kind, SnakeKind::ForkPath { x: 2, y: 2 });
        assert_eq!(
            edge_of_snake(&sp),
            SnakeEdge::Edge(BoxNode::north(3), BoxNode::south(3))
        );
    }

    #[test]
    fn complete_horizontal_heap_cycles() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1, 3, 2, 1, 3]);
        let left = h
            .forks()
            .into_iter()
            .find(|f| f.side == ForkSide::Left)
            .unwrap();
        assert_eq!(snake_from_fork(&h, &left).unwrap().kind, SnakeKind::Cycle);
    }

    #[test]
    fn orders() {
        let k = 4;
        assert!(precedes_left(BoxNode::north(1), BoxNode::south(3), k));
        assert!(precedes_right(BoxNode::north(4), BoxNode::north(1), k));
        assert!(precedes_right(BoxNode::north(1), BoxNode::south(1), k));
        assert!(!precedes_left(BoxNode::north(2), BoxNode::north(2), k));
    }
}
