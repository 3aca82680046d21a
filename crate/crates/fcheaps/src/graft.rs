//! The inductive construction for A-diagrams: strip a decorated edge, invert the rest,
//! build the heap `H_e` of the stripped edge and graft the two together.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::coxeter::{CoxeterSpec, Family};
use crate::decorated::{admissible_loop, Dec, DecDiagram};
use crate::decoration::dec_alt;
use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::snake::{
    edge_of_snake, precedes_left, snakes_partition, Dir, SnakeEdge, SnakePath, Step, Vert,
};
use crate::tl::{theta_inverse, BoxNode, Diagram, Face};

/// An edge of a decorated diagram (by start slot) or one of its decorated loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeRef {
    Edge(usize),
    Loop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingData {
    pub edge: EdgeRef,
    pub sp_n: BTreeSet<usize>,
    pub sp_s: BTreeSet<usize>,
    pub sp: BTreeSet<usize>,
}

fn spec_of(d: &DecDiagram) -> Result<CoxeterSpec> {
    CoxeterSpec::new(Family::TypeCtilde, d.k.saturating_sub(2))
}

fn has_triangle(seq: &[Dec]) -> bool {
    seq.iter().any(|x| !x.is_dot())
}

fn node(slot: usize, k: usize) -> BoxNode {
    BoxNode::from_slot(slot, k)
}

/// Decorated edges (with a triangle), `≻_ℓ`-greatest first.
pub fn decorated_edges(d: &DecDiagram) -> Vec<usize> {
    let k = d.k;
    let mut out: Vec<usize> = d
        .edge_slots()
        .into_iter()
        .filter(|&(s, _)| has_triangle(&d.decorations(s)))
        .map(|(s, _)| s)
        .collect();
    let key = |s: usize| {
        let (a, b) = (node(s, k), node(d.partner[s] as usize, k));
        if precedes_left(a, b, k) {
            a
        } else {
            b
        }
    };
    out.sort_by(|&x, &y| {
        let (a, b) = (key(x), key(y));
        if precedes_left(a, b, k) {
            std::cmp::Ordering::Less
        } else if a == b {
            std::cmp::Ordering::Equal
        } else {
            std::cmp::Ordering::Greater
        }
    });
    out
}

/// `d_ě`: erase the loop, or remove the decorations of `e` keeping its end dots.
pub fn strip_edge(d: &DecDiagram, e: EdgeRef) -> Result<DecDiagram> {
    let mut out = d.clone();
    let k = d.k;
    match e {
        EdgeRef::Loop => {
            let ell = admissible_loop();
            let i = out
                .loops
                .iter()
                .position(|l| *l == ell)
                .ok_or_else(|| Error::input("diagram has no decorated loop"))?;
            out.loops.remove(i);
        }
        EdgeRef::Edge(s) => {
            if s >= 2 * k || (d.partner[s] as usize) < s {
                return Err(Error::input(format!("slot {s} does not start an edge")));
            }
            if !has_triangle(&d.decorations(s)) {
                return Err(Error::input("edge carries no triangle"));
            }
            let t = d.partner[s] as usize;
            let vertical = t == s + k;
            let end_dot = |slot: usize, x: Dec| {
                !vertical
                    && match x {
                        Dec::BlackDot => slot == 0 || slot == k,
                        Dec::WhiteDot => slot == k - 1 || slot == 2 * k - 1,
                        _ => false,
                    }
            };
            let flat: Vec<(usize, Dec)> = d.blocks[s]
                .iter()
                .enumerate()
                .flat_map(|(b, blk)| blk.iter().map(move |&x| (b, x)))
                .collect();
            let last = flat.len().saturating_sub(1);
            let mut blocks: Vec<Vec<Dec>> = vec![Vec::new(); d.blocks[s].len()];
            for (i, &(b, x)) in flat.iter().enumerate() {
                let keep = (i == 0 && end_dot(s, x)) || (i == last && end_dot(t, x));
                if keep {
                    blocks[b].push(x);
                }
            }
            let mut vorder = Vec::new();
            let mut seen = 0;
            for &v in &d.vorder {
                if v as usize == s {
                    if !blocks[seen].is_empty() {
                        vorder.push(v);
                    }
                    seen += 1;
                } else {
                    vorder.push(v);
                }
            }
            blocks.retain(|b| !b.is_empty());
            out.blocks[s] = blocks;
            out.vorder = vorder;
        }
    }
    Ok(out)
}

/// The heap `H_∞` of the complete horizontal region (n even).
pub fn complete_horizontal(spec: CoxeterSpec) -> Result<Heap> {
    let rank = spec.rank() as u8;
    if rank.is_multiple_of(2) {
        return Err(Error::input("a complete horizontal heap needs n even"));
    }
    let odd: Vec<u8> = (1..=rank).step_by(2).collect();
    let even: Vec<u8> = (2..rank).step_by(2).collect();
    let word: Vec<u8> = odd.iter().chain(&even).chain(&odd).copied().collect();
    Ok(Heap::from_letters(spec, &word))
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

/// Grid walk realising a fork path from `h` to `k` crossing forks of the given colours.
fn snake_heap(spec: CoxeterSpec, h: BoxNode, k: BoxNode, colours: &[bool]) -> Option<Heap> {
    let rank = spec.rank() as u8;
    let first_black = *colours.first()?;
    let p = h.pos as i32;
    let (x, mut step) = match (h.face, first_black) {
        (Face::N, true) => (
            p - 1,
            Step {
                dir: Dir::Left,
                vert: Vert::Up,
            },
        ),
        (Face::N, false) => (
            p,
            Step {
                dir: Dir::Right,
                vert: Vert::Up,
            },
        ),
        (Face::S, true) => (
            p - 1,
            Step {
                dir: Dir::Left,
                vert: Vert::Down,
            },
        ),
        (Face::S, false) => (
            p,
            Step {
                dir: Dir::Right,
                vert: Vert::Down,
            },
        ),
    };
    if x < 1 || x > rank as i32 {
        return None;
    }
    let mut cur = (x, 0i32);
    let mut nodes: BTreeSet<(i32, i32)> = BTreeSet::from([cur]);
    let advance = |cur: (i32, i32), step: Step| -> (i32, i32) {
        let dc = if step.dir == Dir::Right { 1 } else { -1 };
        let dr = if step.vert == Vert::Down { 1 } else { -1 };
        (cur.0 + dc, cur.1 + dr)
    };
    for &black in colours {
        let (wall, dir) = if black {
            (1, Dir::Left)
        } else {
            (rank as i32, Dir::Right)
        };
        if step.dir != dir {
            return None;
        }
        while cur.0 != wall {
            cur = advance(cur, step);
            if cur.0 < 1 || cur.0 > rank as i32 {
                return None;
            }
            nodes.insert(cur);
            step.vert = match step.vert {
                Vert::Up => Vert::Down,
                Vert::Down => Vert::Up,
            };
        }
        // `step.vert` is now the next vertical sense; the arrival was the opposite one.
        let arrived_up = step.vert == Vert::Down;
        cur = if arrived_up {
            (cur.0, cur.1 + 2)
        } else {
            (cur.0, cur.1 - 2)
        };
        nodes.insert(cur);
        step = Step {
            dir: if black { Dir::Right } else { Dir::Left },
            vert: if arrived_up { Vert::Up } else { Vert::Down },
        };
    }
    for _ in 0..=rank {
        let next = advance(cur, step);
        if next.0 < 1 || next.0 > rank as i32 {
            return None;
        }
        cur = next;
        nodes.insert(cur);
        if end_node(cur.0 as u8, step) == k {
            let mut pts: Vec<(i32, i32)> = nodes.into_iter().map(|(c, r)| (r, c)).collect();
            pts.sort();
            let word: Vec<u8> = pts.into_iter().map(|(_, c)| c as u8).collect();
            return Some(Heap::from_letters(spec, &word));
        }
        step.vert = match step.vert {
            Vert::Up => Vert::Down,
            Vert::Down => Vert::Up,
        };
    }
    None
}

fn trivial_elsewhere(img: &DecDiagram, e: usize) -> bool {
    let k = img.k;
    img.edge_slots().into_iter().all(|(s, t)| {
        s == e
            || (!has_triangle(&img.decorations(s))
                && (t == s + 1 && (t < k) == (s < k) || t == s + k))
    }) && img.loops.is_empty()
}

/// `H_e`: an alternating heap whose image has `e` decorated as in `d` and every other edge trivial.
pub fn build_he(d: &DecDiagram, e: EdgeRef) -> Result<Heap> {
    let spec = spec_of(d)?;
    let k = d.k;
    let s = match e {
        EdgeRef::Loop => return complete_horizontal(spec),
        EdgeRef::Edge(s) => s,
    };
    let t = d.partner[s] as usize;
    let seq = d.decorations(s);
    let colours: Vec<bool> = seq
        .iter()
        .filter(|x| !x.is_dot())
        .map(|x| x.is_black())
        .collect();
    if colours.is_empty() {
        return Err(Error::input("edge carries no triangle"));
    }
    let target: Vec<Dec> = seq;
    let mut rev = colours.clone();
    rev.reverse();
    for (a, b, cs) in [(s, t, &colours), (t, s, &rev)] {
        if let Some(h) = snake_heap(spec, node(a, k), node(b, k), cs) {
            if !h.is_fc() || !h.is_alternating() {
                continue;
            }
            let Ok(img) = dec_alt(&h) else { continue };
            if img.partner[s] as usize == t
                && img.decorations(s) == target
                && trivial_elsewhere(&img, s)
            {
                return Ok(h);
            }
        }
    }
    Err(Error::NotAdmissible(format!(
        "no snake heap realises edge ({},{})",
        node(s, k),
        node(t, k)
    )))
}

/// Snake path of `h` whose box edge is the undecorated edge between slots `s` and `t`.
pub fn snake_of_edge(h: &Heap, s: usize, t: usize) -> Result<Option<SnakePath>> {
    let k = h.spec().k();
    let (a, b) = (node(s, k), node(t, k));
    Ok(snakes_partition(h)?
        .into_iter()
        .find(|sp| match edge_of_snake(sp) {
            SnakeEdge::Edge(x, y) => (x, y) == (a, b) || (x, y) == (b, a),
            SnakeEdge::Loop => false,
        }))
}

/// Above / below sets and the splitting nodes of `e` in `Ȟ`.
pub fn splitting_nodes(d: &DecDiagram, e: EdgeRef, hcheck: &Heap) -> Result<SplittingData> {
    let k = d.k;
    let check = strip_edge(d, e)?;
    let snakes = snakes_partition(hcheck)?;
    let mut above: Vec<(usize, usize)> = Vec::new();
    let mut below: Vec<(usize, usize)> = Vec::new();
    let e_span = match e {
        EdgeRef::Loop => None,
        EdgeRef::Edge(s) => Some((s, d.partner[s] as usize)),
    };
    let path = e_span.map(|(s, _)| crate::inverse::wall_path(d, s));
    let crosses = |p: usize| -> bool {
        let Some(path) = &path else { return true };
        path.windows(2).any(|w| {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            a < p && p < b
        })
    };
    let pos = |slot: usize| node(slot, k).pos;
    for (s, t) in check.edge_slots() {
        if Some((s, t)) == e_span {
            continue;
        }
        let north = s < k && t < k;
        let south = s >= k && t >= k;
        if north || south {
            if crosses(pos(s)) || crosses(pos(t)) {
                if north {
                    above.push((s, t));
                } else {
                    below.push((s, t));
                }
            }
        } else if let Some((es, et)) = e_span {
            let e_north = es < k && et < k;
            let e_south = es >= k && et >= k;
            if e_north || e_south {
                let (lo, hi) = (pos(es).min(pos(et)), pos(es).max(pos(et)));
                let side = |p: usize| {
                    if p < lo {
                        -1
                    } else if p > hi {
                        1
                    } else {
                        0
                    }
                };
                let (x, y) = (side(pos(s)), side(pos(t)));
                if x * y == -1 {
                    if e_north {
                        below.push((s, t));
                    } else {
                        above.push((s, t));
                    }
                }
            }
        }
    }
    let nodes_of = |edges: &[(usize, usize)]| -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for sp in &snakes {
            if let SnakeEdge::Edge(a, b) = edge_of_snake(sp) {
                let (x, y) = (a.slot(k), b.slot(k));
                if edges.iter().any(|&(s, t)| (s, t) == (x.min(y), x.max(y))) {
                    out.extend(sp.vertices.iter().copied());
                }
            }
        }
        out
    };
    let sp_n = nodes_of(&above);
    let sp_s = nodes_of(&below);
    let sp = sp_n.intersection(&sp_s).copied().collect();
    Ok(SplittingData {
        edge: e,
        sp_n,
        sp_s,
        sp,
    })
}

/// Grid rows of an alternating heap: a cover between adjacent columns drops one row,
/// a cover inside a column drops two.
pub fn grid_rows(h: &Heap) -> Result<Vec<i32>> {
    let n = h.len();
    let mut row: Vec<Option<i32>> = vec![None; n];
    let mut adj: Vec<Vec<(usize, i32)>> = vec![Vec::new(); n];
    for &(a, b) in h.covers() {
        let d = if h.label(a) == h.label(b) { 2 } else { 1 };
        adj[a].push((b, d));
        adj[b].push((a, -d));
    }
    for s in 0..n {
        if row[s].is_some() {
            continue;
        }
        row[s] = Some(0);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let r = row[u].unwrap_or(0);
            for &(v, d) in &adj[u] {
                match row[v] {
                    None => {
                        row[v] = Some(r + d);
                        stack.push(v);
                    }
                    Some(x) if x != r + d => {
                        return Err(Error::Snake("heap has no grid embedding".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(row.into_iter().map(|r| r.unwrap_or(0)).collect())
}

/// Connected components of `h`, each sorted.
pub fn components(h: &Heap) -> Vec<Vec<usize>> {
    let n = h.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while c[r] != r {
            r = c[r];
        }
        c[x] = r;
        r
    }
    for &(a, b) in h.covers() {
        let (x, y) = (find(&mut comp, a), find(&mut comp, b));
        comp[x.max(y)] = x.min(y);
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut comp, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

#[derive(Debug, Clone)]
enum Placement {
    Above,
    Below,
    Cut(BTreeSet<usize>),
}

const MAX_GRAFTS: usize = 1 << 14;

/// `H(d, e)`: `H_e` with the part of `Ȟ` above the cut on its north border and the part
/// below on its south border. The cut of the component of `ρ` is `ρ` with its levelled
/// splitting nodes; every other component is cut along one of its rows or copied whole.
pub fn assemble(d: &DecDiagram, e: EdgeRef, hcheck: &Heap, he: &Heap) -> Result<Heap> {
    let spec = spec_of(d)?;
    let rows = grid_rows(hcheck)?;
    let (black, white) = match e {
        EdgeRef::Loop => (true, true),
        EdgeRef::Edge(s) => {
            let seq = d.decorations(s);
            (seq.contains(&Dec::BlackTri), seq.contains(&Dec::WhiteTri))
        }
    };
    let rho: Vec<usize> = match e {
        EdgeRef::Loop => Vec::new(),
        EdgeRef::Edge(s) => snake_of_edge(hcheck, s, d.partner[s] as usize)?
            .map(|r| r.vertices)
            .unwrap_or_default(),
    };
    let label = |v: usize| hcheck.label(v);
    let mut options: Vec<Vec<Placement>> = Vec::new();
    for comp in components(hcheck) {
        if !rho.is_empty() && comp.contains(&rho[0]) {
            let mut cut: BTreeSet<usize> = rho.iter().copied().collect();
            let lm = *rho.iter().min_by_key(|&&v| (label(v), rows[v])).unwrap();
            let rm = *rho.iter().max_by_key(|&&v| (label(v), -rows[v])).unwrap();
            for &v in &comp {
                if black && rows[v] == rows[lm] && label(v) < label(lm) {
                    cut.insert(v);
                }
                if white && rows[v] == rows[rm] && label(v) > label(rm) {
                    cut.insert(v);
                }
            }
            options.push(vec![Placement::Cut(cut)]);
            continue;
        }
        let mut opts = vec![Placement::Above, Placement::Below];
        let line: BTreeSet<i32> = comp.iter().map(|&v| rows[v]).collect();
        for r in line {
            opts.push(Placement::Cut(
                comp.iter().copied().filter(|&v| rows[v] == r).collect(),
            ));
        }
        options.push(opts);
    }
    let comps = components(hcheck);
    let total: usize = options.iter().map(|o| o.len()).product();
    if total > MAX_GRAFTS {
        return Err(Error::Resource(format!("{total} candidate grafts")));
    }
    for mut idx in 0..total {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (comp, opts) in comps.iter().zip(&options) {
            let choice = &opts[idx % opts.len()];
            idx /= opts.len();
            match choice {
                Placement::Above => up.extend(comp),
                Placement::Below => down.extend(comp),
                Placement::Cut(cut) => {
                    let top = cut.iter().map(|&c| rows[c]).min().unwrap_or(0);
                    for &v in comp {
                        if cut.contains(&v) {
                            continue;
                        }
                        let is_up = if cut.iter().any(|&c| hcheck.above(v, c)) {
                            true
                        } else if cut.iter().any(|&c| hcheck.above(c, v)) {
                            false
                        } else {
                            rows[v] < top
                        };
                        if is_up {
                            up.push(v);
                        } else {
                            down.push(v);
                        }
                    }
                }
            }
        }
        up.sort_unstable();
        down.sort_unstable();
        let mut word: Vec<u8> = up.iter().map(|&v| label(v)).collect();
        word.extend_from_slice(he.word());
        word.extend(down.iter().map(|&v| label(v)));
        let h = Heap::from_letters(spec, &word);
        if h.is_fc() && h.is_alternating() && dec_alt(&h).is_ok_and(|x| &x == d) {
            return Ok(h);
        }
    }
    Err(Error::NotAdmissible(
        "no graft of H_e and the stripped heap has the required image".into(),
    ))
}

/// Base case: a diagram with no triangles and no loops comes from a fork-free heap.
pub fn invert_base(d: &DecDiagram) -> Result<Heap> {
    let spec = spec_of(d)?;
    let base = Diagram {
        k: d.k,
        partner: d.partner.clone(),
        loops: 0,
    };
    let tau = theta_inverse(&base)?;
    Ok(tau.relabel(spec))
}

/// The A-diagram induction on the number of decorated edges.
pub fn invert_inductive(d: &DecDiagram) -> Result<Heap> {
    let e = match decorated_edges(d).first() {
        Some(&s) => EdgeRef::Edge(s),
        None if d.loops.is_empty() => return invert_base(d),
        None => EdgeRef::Loop,
    };
    let check = strip_edge(d, e)?;
    let hcheck = invert_inductive(&check)?;
    let he = build_he(d, e)?;
    assemble(d, e, &hcheck, &he)
}
