//! Rebuilding the FC heap of an admissible decorated diagram.

use std::collections::BTreeSet;

use crate::coxeter::CoxeterSpec;
use crate::decorated::{Dec, DecDiagram, DiagramClass};
use crate::decoration::{dec, dec_alt};
use crate::error::{Error, Result};
use crate::heap::Heap;

fn spec_of(d: &DecDiagram) -> Result<CoxeterSpec> {
    if d.k < 4 {
        return Err(Error::input(format!(
            "box size {} is too small for type C~",
            d.k
        )));
    }
    CoxeterSpec::new(crate::coxeter::Family::TypeCtilde, d.k - 2)
}

fn position(slot: usize, k: usize) -> usize {
    if slot < k {
        slot + 1
    } else {
        slot - k + 1
    }
}

/// Points visited by an edge drawn with black decorations on the left wall and white ones on the right wall.
pub fn wall_path(d: &DecDiagram, start: usize) -> Vec<usize> {
    let k = d.k;
    let end = d.partner[start] as usize;
    let mut pts = vec![position(start, k)];
    for &x in d.blocks[start].iter().flatten() {
        let wall = if x.is_black() { 0 } else { k + 1 };
        if *pts.last().unwrap() != wall {
            pts.push(wall);
        }
    }
    pts.push(position(end, k));
    pts
}

/// Column counts `c_1, …, c_{n+1}` read from the wall-crossing numbers of `d`.
pub fn column_profile(d: &DecDiagram) -> Result<Vec<usize>> {
    let k = d.k;
    let mut cross = vec![0usize; k];
    for (s, _) in d.edge_slots() {
        for w in wall_path(d, s).windows(2) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            for x in &mut cross[a.max(1)..b.min(k)] {
                *x += 1;
            }
        }
    }
    let mut out = Vec::with_capacity(k - 1);
    for &x in &cross[1..k] {
        if x % 2 == 1 {
            return Err(Error::NotAdmissible("odd crossing number".into()));
        }
        out.push(x / 2 + d.loops.len());
    }
    Ok(out)
}

/// The alternating heap with column counts `counts` whose chain on columns `{i, i+1}`
/// starts with column `i` exactly when `starts_left[i-1]` holds.
fn alternating_heap(spec: CoxeterSpec, counts: &[usize], starts_left: &[bool]) -> Option<Heap> {
    let cols = counts.len();
    let id = |c: usize, i: usize| counts[..c].iter().sum::<usize>() + i;
    let total: usize = counts.iter().sum();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); total];
    let mut indeg = vec![0usize; total];
    let mut label = vec![0u8; total];
    for c in 0..cols {
        for i in 0..counts[c] {
            label[id(c, i)] = c as u8 + 1;
            if i + 1 < counts[c] {
                succ[id(c, i)].push(id(c, i + 1));
                indeg[id(c, i + 1)] += 1;
            }
        }
    }
    for c in 0..cols.saturating_sub(1) {
        let (a, b) = (counts[c], counts[c + 1]);
        if a == 0 || b == 0 {
            continue;
        }
        let left_first = match a.cmp(&b) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => starts_left[c],
        };
        let mut seq = Vec::with_capacity(a + b);
        let (mut i, mut j, mut take_left) = (0, 0, left_first);
        while i < a || j < b {
            if take_left {
                if i >= a {
                    return None;
                }
                seq.push(id(c, i));
                i += 1;
            } else {
                if j >= b {
                    return None;
                }
                seq.push(id(c + 1, j));
                j += 1;
            }
            take_left = !take_left;
        }
        for w in seq.windows(2) {
            succ[w[0]].push(w[1]);
            indeg[w[1]] += 1;
        }
    }
    let mut ready: BTreeSet<(u8, usize)> = (0..total)
        .filter(|&v| indeg[v] == 0)
        .map(|v| (label[v], v))
        .collect();
    let mut word = Vec::with_capacity(total);
    while let Some(&(l, v)) = ready.iter().next() {
        ready.remove(&(l, v));
        word.push(l);
        for &u in &succ[v] {
            indeg[u] -= 1;
            if indeg[u] == 0 {
                ready.insert((label[u], u));
            }
        }
    }
    (word.len() == total).then(|| Heap::from_letters(spec, &word))
}

/// All FC alternating heaps with the given column counts.
pub fn alternating_with_profile(spec: CoxeterSpec, counts: &[usize]) -> Vec<Heap> {
    let cols = counts.len();
    for c in 0..cols {
        let left = c > 0 && counts[c - 1] > 0;
        let right = c + 1 < cols && counts[c + 1] > 0;
        if !left && !right && counts[c] > 1 {
            return Vec::new();
        }
        if right && counts[c].abs_diff(counts[c + 1]) > 1 {
            return Vec::new();
        }
    }
    let free: Vec<usize> = (0..cols.saturating_sub(1))
        .filter(|&c| counts[c] > 0 && counts[c] == counts[c + 1])
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut bits = vec![false; cols];
        for (b, &c) in free.iter().enumerate() {
            bits[c] = mask >> b & 1 == 1;
        }
        if let Some(h) = alternating_heap(spec, counts, &bits) {
            if h.is_fc() && h.is_alternating() {
                out.push(h);
            }
        }
    }
    out
}

/// Inverse of `dec_A`: the alternating heap whose decorated diagram is `d`.
pub fn invert_alt(d: &DecDiagram) -> Result<Heap> {
    let spec = spec_of(d)?;
    let counts = column_profile(d)?;
    alternating_with_profile(spec, &counts)
        .into_iter()
        .find(|h| dec_alt(h).is_ok_and(|x| &x == d))
        .ok_or_else(|| Error::NotAdmissible(format!("no alternating heap has image {d}")))
}

/// `d` with the triangle removed from the end vertical edges named by `left` / `right`.
fn strip_peaks(d: &DecDiagram, left: bool, right: bool) -> Result<DecDiagram> {
    let k = d.k;
    let mut out = d.clone();
    for (on, slot, tri) in [(left, 0, Dec::BlackTri), (right, k - 1, Dec::WhiteTri)] {
        if !on {
            continue;
        }
        if out.blocks[slot] != vec![vec![tri]] {
            return Err(Error::NotAdmissible(format!(
                "edge ({},{}') does not carry a single triangle",
                slot + 1,
                slot + 1
            )));
        }
        out.blocks[slot].clear();
        out.vorder.retain(|&s| s as usize != slot);
    }
    Ok(out)
}

fn insert_peak(h: &Heap, j: u8, left: bool) -> Result<Heap> {
    let spec = h.spec();
    let rank = spec.rank() as u8;
    let col = h.column(j);
    let [v] = col[..] else {
        return Err(Error::NotAdmissible(format!(
            "column {j} of the semireduced heap is not a single node"
        )));
    };
    let peak: Vec<u8> = if left {
        (1..=j).rev().chain(2..=j).collect()
    } else {
        (j..=rank).chain((j..rank).rev()).collect()
    };
    let mut word = Vec::with_capacity(h.len() + peak.len());
    for (u, &l) in h.word().iter().enumerate() {
        if u == v {
            word.extend(&peak);
        } else {
            word.push(l);
        }
    }
    Ok(Heap::from_letters(spec, &word))
}

/// Inverse on a P-diagram: invert the semireduced part and attach the peaks.
pub fn invert_peak(d: &DecDiagram, j_l: Option<usize>, j_r: Option<usize>) -> Result<Heap> {
    let stripped = strip_peaks(d, j_l.is_some(), j_r.is_some())?;
    let mut h = invert_alt(&stripped)?;
    if let Some(j) = j_l {
        h = insert_peak(&h, j as u8, true)?;
    }
    if let Some(j) = j_r {
        h = insert_peak(&h, j as u8, false)?;
    }
    Ok(h)
}

/// Inverse on a zigzag-shaped diagram: the chain from the north arc to the south arc
/// touching the end columns in the colour order of the vertical ranks.
pub fn invert_zigzag(d: &DecDiagram) -> Result<Heap> {
    let spec = spec_of(d)?;
    let k = d.k;
    let rank = spec.rank() as u8;
    if d.a() != 1 {
        return Err(Error::NotAdmissible(
            "zigzag diagrams have a single north arc".into(),
        ));
    }
    let arc = |south: bool| -> Option<u8> {
        let lo = if south { k } else { 0 };
        (lo..lo + k)
            .find(|&s| {
                let p = d.partner[s] as usize;
                p > s && (p < k) == (s < k)
            })
            .map(|s| position(s, k) as u8)
    };
    let (Some(i), Some(j)) = (arc(false), arc(true)) else {
        return Err(Error::NotAdmissible("missing arc".into()));
    };
    let prop = d.propagating();
    let (first, last) = (prop[0], *prop.last().unwrap());
    let mut colours: Vec<bool> = Vec::new();
    let mut seen = vec![0usize; 2 * k];
    for &s in &d.vorder {
        let s = s as usize;
        let block = &d.blocks[s][seen[s]];
        seen[s] += 1;
        if s != first && s != last {
            return Err(Error::NotAdmissible(
                "decorated inner propagating edge".into(),
            ));
        }
        colours.push(block.iter().all(|x| x.is_black()));
    }
    let mut word = vec![i];
    let mut pos = i;
    let walk = |from: u8, to: u8, word: &mut Vec<u8>| {
        if from < to {
            word.extend(from + 1..=to);
        } else {
            word.extend((to..from).rev());
        }
    };
    for black in colours {
        let target = if black { 1 } else { rank };
        walk(pos, target, &mut word);
        pos = target;
    }
    walk(pos, j, &mut word);
    Ok(Heap::from_letters(spec, &word))
}

/// The FC heap `H` with `dec(H) = d`.
pub fn invert(d: &DecDiagram) -> Result<Heap> {
    if !d.is_admissible() {
        return Err(Error::NotAdmissible(format!("{d}")));
    }
    let attempt = |r: Result<Heap>| -> Option<Heap> {
        r.ok()
            .filter(|h| h.is_fc() && dec(h).is_ok_and(|x| &x == d))
    };
    let found = match d.classify() {
        DiagramClass::Z => attempt(invert_zigzag(d)),
        DiagramClass::P { j_l, j_r } => {
            attempt(invert_peak(d, j_l, j_r)).or_else(|| attempt(invert_zigzag(d)))
        }
        DiagramClass::A => {
            attempt(crate::graft::invert_inductive(d)).or_else(|| attempt(invert_alt(d)))
        }
    };
    found.ok_or_else(|| Error::NotAdmissible(format!("no FC heap has image {d}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_generator() {
        let c2 = CoxeterSpec::ctilde(2);
        let d = DecDiagram::simple(c2, 2).unwrap();
        assert_eq!(invert(&d).unwrap(), Heap::from_letters(c2, &[2]));
    }

    #[test]
    fn single_fork() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1, 2, 1]);
        assert_eq!(invert(&dec(&h).unwrap()).unwrap(), h);
    }

    #[test]
    fn profile_of_complete_horizontal_heap() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1, 3, 2, 1, 3]);
        assert_eq!(column_profile(&dec(&h).unwrap()).unwrap(), vec![2, 1, 2]);
    }
}
