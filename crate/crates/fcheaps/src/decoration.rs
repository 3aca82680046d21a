//! The decoration algorithms `dec_A`, `dec_P`, `dec_Z` and the dispatcher `dec`.

use crate::decorated::{admissible_loop, Dec, DecDiagram, Placed};
use crate::error::{Error, Result};
use crate::heap::{ForkSide, Heap, HeapFamily};
use crate::reduction::{eliminate_fork, reduce};
use crate::snake::{edge_of_snake, snakes_partition, SnakeEdge, SnakeKind};
use crate::tl::{BoxNode, Diagram};

const TOP: f64 = f64::NEG_INFINITY;
const BOTTOM: f64 = f64::INFINITY;

fn base_diagram(h: &Heap) -> Result<Diagram> {
    let (tau, _) = reduce(h)?;
    Ok(Diagram::of_word(h.spec().k(), tau.word()).without_loops())
}

fn triangle(side: ForkSide) -> Dec {
    match side {
        ForkSide::Left => Dec::BlackTri,
        _ => Dec::WhiteTri,
    }
}

/// (D4): a dot at `node`, placed first when the edge is read from `node`.
fn end_dot(base: &Diagram, node: BoxNode, dec: Dec, height: f64) -> Placed {
    let k = base.k;
    let s = node.slot(k);
    let edge = s.min(base.partner[s] as usize);
    Placed {
        edge,
        along: if edge == s { TOP } else { BOTTOM },
        height,
        dec,
    }
}

/// Decorations placed by (D2)/(D4) on `d_τ` together with the loop count from (D2.1).
fn alt_placements(h: &Heap) -> Result<(Diagram, Vec<Placed>, usize)> {
    if !h.is_alternating() {
        return Err(Error::Classification("heap is not alternating".into()));
    }
    let base = base_diagram(h)?;
    let k = base.k;
    let mut placed = Vec::new();
    let mut loops = 0;
    for sp in snakes_partition(h)? {
        match (sp.kind, edge_of_snake(&sp)) {
            (SnakeKind::Cycle, _) => loops += 1,
            (SnakeKind::ForkPath { .. }, SnakeEdge::Edge(a, b)) => {
                let (sa, sb) = (a.slot(k), b.slot(k));
                if base.partner[sa] as usize != sb {
                    return Err(Error::Snake(format!("({a},{b}) is not an edge of d_tau")));
                }
                let forward = sa < sb;
                let edge = sa.min(sb);
                for (i, c) in sp.crossings.iter().enumerate() {
                    let i = i as f64;
                    placed.push(Placed {
                        edge,
                        along: if forward { i } else { -i },
                        height: c.middle as f64,
                        dec: triangle(c.side),
                    });
                }
            }
            _ => {}
        }
    }
    let rank = h.spec().rank() as u8;
    for (col, pos, dot) in [(1, 1, Dec::BlackDot), (rank, k, Dec::WhiteDot)] {
        let nodes = h.column(col);
        let (Some(&hi), Some(&lo)) = (nodes.first(), nodes.last()) else {
            continue;
        };
        let (hi, lo) = (hi as f64, lo as f64);
        placed.push(end_dot(&base, BoxNode::north(pos), dot, hi));
        placed.push(end_dot(&base, BoxNode::south(pos), dot, lo));
    }
    Ok((base, placed, loops))
}

fn finish(base: &Diagram, placed: &[Placed], loops: usize) -> Result<DecDiagram> {
    let (scalar, d) = DecDiagram::from_placed(base, placed, vec![admissible_loop(); loops]);
    if !scalar.is_one() {
        return Err(Error::Scalar(format!(
            "decoration produced scalar {scalar}"
        )));
    }
    Ok(d)
}

/// `dec_A` without the family check; requires an alternating heap.
pub fn dec_alt(h: &Heap) -> Result<DecDiagram> {
    let (base, placed, loops) = alt_placements(h)?;
    finish(&base, &placed, loops)
}

/// `dec_A` on an (ALT) heap.
pub fn dec_a(h: &Heap) -> Result<DecDiagram> {
    match h.classify_family()? {
        HeapFamily::Alt => dec_alt(h),
        f => Err(Error::Classification(format!("dec_A expects ALT, got {f}"))),
    }
}

fn peak_bounds(family: HeapFamily) -> (Option<usize>, Option<usize>) {
    match family {
        HeapFamily::Lp { j_l } => (Some(j_l), None),
        HeapFamily::Rp { j_r } => (None, Some(j_r)),
        HeapFamily::Lrpz { j_l, j_r } => (Some(j_l), Some(j_r)),
        _ => (None, None),
    }
}

fn eliminate_peak(h: &Heap, outer: u8, middle: u8) -> Result<Heap> {
    let f = h
        .forks()
        .into_iter()
        .find(|f| h.label(f.outer_top) == outer && h.label(f.middle) == middle)
        .ok_or_else(|| Error::Classification(format!("no peak fork {outer},{middle},{outer}")))?;
    Ok(eliminate_fork(h, &f)?.0)
}

/// The semireduced heap `H_sr` together with the peak indices `j_ℓ`, `j_r`.
pub fn semireduced(h: &Heap) -> Result<(Heap, Option<usize>, Option<usize>)> {
    let family = h.classify_family()?;
    let (j_l, j_r) = peak_bounds(family);
    if j_l.is_none() && j_r.is_none() {
        return Err(Error::Classification(format!("{family} has no peaks")));
    }
    let rank = h.spec().rank() as u8;
    let mut cur = h.clone();
    if let Some(j) = j_l {
        for outer in 2..=j as u8 {
            cur = eliminate_peak(&cur, outer, outer - 1)?;
        }
    }
    if let Some(j) = j_r {
        for outer in (j as u8..=rank - 1).rev() {
            cur = eliminate_peak(&cur, outer, outer + 1)?;
        }
    }
    Ok((cur, j_l, j_r))
}

/// `dec_P` on an (LP), (RP) or (LRP-Z) heap.
pub fn dec_p(h: &Heap) -> Result<DecDiagram> {
    let (sr, j_l, j_r) = semireduced(h)?;
    let (base, mut placed, loops) = alt_placements(&sr)?;
    let k = base.k;
    let height = |j: usize| -> f64 { sr.column(j as u8).first().map_or(TOP, |&v| v as f64) };
    if let Some(j) = j_l {
        placed.push(Placed {
            edge: 0,
            along: 0.0,
            height: height(j),
            dec: Dec::BlackTri,
        });
    }
    if let Some(j) = j_r {
        placed.push(Placed {
            edge: k - 1,
            along: 0.0,
            height: height(j),
            dec: Dec::WhiteTri,
        });
    }
    finish(&base, &placed, loops)
}

/// `dec_Z` on a (ZZ) or (PZZ) heap.
pub fn dec_z(h: &Heap) -> Result<DecDiagram> {
    match h.classify_family()? {
        HeapFamily::Zz | HeapFamily::Pzz => {}
        f => {
            return Err(Error::Classification(format!(
                "dec_Z expects ZZ or PZZ, got {f}"
            )))
        }
    }
    dec_zigzag(h)
}

/// A peak heap that is also a zigzag factor reaching both end columns.
pub fn is_full_zigzag(h: &Heap) -> bool {
    let rank = h.spec().rank() as u8;
    h.is_zigzag_factor() && h.column_count(1) > 0 && h.column_count(rank) > 0
}

fn dec_zigzag(h: &Heap) -> Result<DecDiagram> {
    let base = base_diagram(h)?;
    let k = base.k;
    let prop: Vec<usize> = (0..k)
        .filter(|&s| (base.partner[s] as usize) >= k)
        .collect();
    let (first, last) = match (prop.first(), prop.last()) {
        (Some(&f), Some(&l)) if f != l => (f, l),
        _ => {
            return Err(Error::Diagram(
                "zigzag reduction lacks two propagating edges".into(),
            ))
        }
    };
    let rank = h.spec().rank() as u8;
    let word = h.word();
    let top = word[0];
    let bottom = *word.last().unwrap();
    let mut placed = Vec::new();
    for (col, edge, tri, dot, arc_top, arc_bottom) in [
        (
            1,
            first,
            Dec::BlackTri,
            Dec::BlackDot,
            BoxNode::north(1),
            BoxNode::south(1),
        ),
        (
            rank,
            last,
            Dec::WhiteTri,
            Dec::WhiteDot,
            BoxNode::north(k),
            BoxNode::south(k),
        ),
    ] {
        let nodes = h.column(col);
        for (i, &v) in nodes.iter().enumerate() {
            let mut dec = tri;
            if (i == 0 && top == col) || (i + 1 == nodes.len() && bottom == col) {
                dec = dot;
            }
            placed.push(Placed {
                edge,
                along: v as f64,
                height: v as f64,
                dec,
            });
        }
        if top == col {
            placed.push(end_dot(&base, arc_top, dot, TOP));
        }
        if bottom == col {
            placed.push(end_dot(&base, arc_bottom, dot, BOTTOM));
        }
    }
    finish(&base, &placed, 0)
}

/// `dec(H)` for an FC heap of type C̃.
pub fn dec(h: &Heap) -> Result<DecDiagram> {
    match h.classify_family()? {
        HeapFamily::Alt => dec_alt(h),
        HeapFamily::Zz | HeapFamily::Pzz => dec_zigzag(h),
        _ if is_full_zigzag(h) => dec_zigzag(h),
        _ => dec_p(h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSpec;

    #[test]
    fn single_fork() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1, 2, 1]);
        assert_eq!(
            dec_a(&h).unwrap().to_string(),
            "(1,2)• (3,3')▲ (4,4') (1',2')• vorder[3]"
        );
    }

    #[test]
    fn fork_free() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1]);
        let d = dec(&h).unwrap();
        assert_eq!(d, DecDiagram::simple(CoxeterSpec::ctilde(2), 1).unwrap());
    }

    #[test]
    fn two_loops() {
        let w = [
            2, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 4,
        ];
        let d = dec_a(&Heap::from_letters(CoxeterSpec::ctilde(6), &w)).unwrap();
        assert_eq!(d.loops, vec![admissible_loop(); 2]);
    }

    #[test]
    fn family_mismatch() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(3), &[2, 1, 2]);
        assert!(dec_a(&h).is_err());
        assert!(dec_z(&h).is_err());
        assert!(dec_p(&h).is_ok());
    }
}
