//! ASCII and SVG pictures of heaps and diagrams.

use std::fmt::Write;

use crate::decorated::{fmt_decs, Dec, DecDiagram};
use crate::decoration::dec;
use crate::error::Result;
use crate::heap::Heap;
use crate::tl::{diagram_of_heap, BoxNode, Diagram};

const CELL: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// Heap drawn top to bottom by Cartier–Foata level, one character cell per column.
pub fn heap_ascii(h: &Heap) -> String {
    let rank = h.spec().rank();
    let mut out = String::new();
    let header: Vec<String> = (1..=rank).map(|c| format!("{c:>3}")).collect();
    let _ = writeln!(out, "{}", header.concat());
    let _ = writeln!(out, "{}", "-".repeat(3 * rank));
    let levels = h.levels();
    let depth = levels.iter().max().map_or(0, |m| m + 1);
    for l in 0..depth {
        let mut row = vec!["  .".to_string(); rank];
        for v in (0..h.len()).filter(|&v| levels[v] == l) {
            row[h.label(v) as usize - 1] = format!("{:>3}", h.label(v));
        }
        let _ = writeln!(out, "{}", row.concat());
    }
    out
}

fn edge_name(d_k: usize, s: usize, t: usize) -> String {
    format!(
        "({},{})",
        BoxNode::from_slot(s, d_k),
        BoxNode::from_slot(t, d_k)
    )
}

pub fn diagram_ascii(d: &Diagram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k={} a={} loops={}", d.k, d.a(), d.loops);
    for (a, b) in d.edges() {
        let _ = writeln!(out, "({a},{b})");
    }
    out
}

pub fn dec_diagram_ascii(d: &DecDiagram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k={} a={}", d.k, d.a());
    for (s, t) in d.edge_slots() {
        let blocks: Vec<String> = d.blocks[s].iter().map(|b| fmt_decs(b)).collect();
        let line = format!("{:<10} {}", edge_name(d.k, s, t), blocks.join(" | "));
        let _ = writeln!(out, "{}", line.trim_end());
    }
    for l in &d.loops {
        let _ = writeln!(out, "loop       {}", fmt_decs(l));
    }
    if !d.vorder.is_empty() {
        let ranks: Vec<String> = d
            .vorder
            .iter()
            .map(|&s| edge_name(d.k, s as usize, d.partner[s as usize] as usize))
            .collect();
        let _ = writeln!(out, "vrank      {}", ranks.join(" > "));
    }
    out
}

/// Heap followed by its (decorated, for type C̃) diagram.
pub fn heap_with_diagram_ascii(h: &Heap) -> Result<String> {
    let mut out = heap_ascii(h);
    out.push('\n');
    if h.spec().is_ctilde() {
        out.push_str(&dec_diagram_ascii(&dec(h)?));
    } else {
        out.push_str(&diagram_ascii(&diagram_of_heap(h)));
    }
    Ok(out)
}

fn svg_open(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    )
}

fn heap_svg_body(h: &Heap, x0: f64, out: &mut String) -> f64 {
    let levels = h.levels();
    let at = |v: usize| {
        (
            x0 + MARGIN + CELL * (h.label(v) as f64 - 1.0),
            MARGIN + CELL * levels[v] as f64,
        )
    };
    for &(a, b) in h.covers() {
        let ((x1, y1), (x2, y2)) = (at(a), at(b));
        let _ = writeln!(
            out,
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"black\"/>"
        );
    }
    for v in 0..h.len() {
        let (x, y) = at(v);
        let _ = writeln!(
            out,
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"10\" fill=\"white\" stroke=\"black\"/>\
             <text x=\"{x}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            y + 4.0,
            h.label(v)
        );
    }
    2.0 * MARGIN + CELL * (h.spec().rank() as f64 - 1.0)
}

/// Point at parameter `t` on the drawn edge between two boundary nodes.
fn edge_point(a: BoxNode, b: BoxNode, t: f64, x0: f64, height: f64) -> (f64, f64) {
    let x = |n: BoxNode| x0 + MARGIN + CELL * (n.pos as f64 - 1.0);
    let y = |n: BoxNode| {
        if n.is_north() {
            MARGIN
        } else {
            MARGIN + height
        }
    };
    let (xa, ya, xb, yb) = (x(a), y(a), x(b), y(b));
    if a.face != b.face {
        return (xa + (xb - xa) * t, ya + (yb - ya) * t);
    }
    let depth = CELL * 0.4 * (a.pos.abs_diff(b.pos) as f64);
    let sign = if a.is_north() { 1.0 } else { -1.0 };
    let angle = std::f64::consts::PI * t;
    let (cx, r) = ((xa + xb) / 2.0, (xb - xa) / 2.0);
    (cx - r * angle.cos(), ya + sign * depth * angle.sin())
}

fn edge_path(a: BoxNode, b: BoxNode, x0: f64, height: f64) -> String {
    let pts: Vec<String> = (0..=24)
        .map(|i| {
            let (x, y) = edge_point(a, b, i as f64 / 24.0, x0, height);
            format!("{x:.1},{y:.1}")
        })
        .collect();
    format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"black\"/>",
        pts.join(" ")
    )
}

fn decoration_svg(x: f64, y: f64, d: Dec) -> String {
    let fill = if d.is_black() { "black" } else { "white" };
    if d.is_dot() {
        format!("<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"{fill}\" stroke=\"black\"/>")
    } else {
        format!(
            "<polygon points=\"{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}\" fill=\"{fill}\" stroke=\"black\"/>",
            x,
            y - 5.0,
            x - 5.0,
            y + 4.0,
            x + 5.0,
            y + 4.0
        )
    }
}

fn diagram_height(k: usize) -> f64 {
    CELL * (k as f64 / 2.0 + 1.0)
}

fn dec_diagram_svg_body(d: &DecDiagram, x0: f64, out: &mut String) -> f64 {
    let k = d.k;
    let height = diagram_height(k);
    let width = CELL * (k as f64 - 1.0);
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{MARGIN}\" width=\"{}\" height=\"{height}\" fill=\"none\" stroke=\"gray\"/>",
        x0 + MARGIN - CELL / 2.0,
        width + CELL
    );
    let ranked = d.a() == 1 && !d.vorder.is_empty();
    let levels = d.vorder.len() as f64 + 1.0;
    if ranked {
        for r in 0..d.vorder.len() {
            let y = MARGIN + height * (r as f64 + 1.0) / levels;
            let _ = writeln!(
                out,
                "<line x1=\"{}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" stroke=\"gray\" stroke-dasharray=\"4,3\"/>",
                x0 + MARGIN - CELL / 2.0,
                x0 + MARGIN + width + CELL / 2.0
            );
        }
    }
    for (s, t) in d.edge_slots() {
        let (a, b) = (BoxNode::from_slot(s, k), BoxNode::from_slot(t, k));
        let _ = writeln!(out, "{}", edge_path(a, b, x0, height));
        let blocks = &d.blocks[s];
        let total: usize = blocks.iter().map(Vec::len).sum();
        let mut i = 0;
        let mut rank = d
            .vorder
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x as usize == s)
            .map(|(r, _)| r);
        for block in blocks {
            let guide = if ranked && d.is_propagating(s) {
                rank.next()
            } else {
                None
            };
            for (j, &x) in block.iter().enumerate() {
                let t = match guide {
                    Some(r) => {
                        let centre = (r as f64 + 1.0) / levels;
                        centre + (j as f64 - (block.len() as f64 - 1.0) / 2.0) * 0.06
                    }
                    None => (i as f64 + 1.0) / (total as f64 + 1.0),
                };
                let (px, py) = edge_point(a, b, t, x0, height);
                let _ = writeln!(out, "{}", decoration_svg(px, py, x));
                i += 1;
            }
        }
    }
    for p in 1..=k {
        for (y, label) in [(MARGIN, format!("{p}")), (MARGIN + height, format!("{p}'"))] {
            let x = x0 + MARGIN + CELL * (p as f64 - 1.0);
            let _ = writeln!(
                out,
                "<circle cx=\"{x}\" cy=\"{y}\" r=\"2\" fill=\"black\"/>"
            );
            let dy = if y == MARGIN { -6.0 } else { 14.0 };
            let _ = writeln!(
                out,
                "<text x=\"{x}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{label}</text>",
                y + dy
            );
        }
    }
    for (i, l) in d.loops.iter().enumerate() {
        let cx = x0 + MARGIN + CELL * (i as f64);
        let cy = MARGIN + height + 40.0;
        let _ = writeln!(
            out,
            "<ellipse cx=\"{cx}\" cy=\"{cy}\" rx=\"14\" ry=\"10\" fill=\"none\" stroke=\"black\"/>"
        );
        for (j, &x) in l.iter().enumerate() {
            let angle = std::f64::consts::PI * (j as f64 + 0.5) / l.len() as f64 * 2.0;
            let _ = writeln!(
                out,
                "{}",
                decoration_svg(cx - 14.0 * angle.cos(), cy - 10.0 * angle.sin(), x)
            );
        }
    }
    2.0 * MARGIN + width
}

fn svg_height(k: usize, depth: usize) -> f64 {
    let diagram = 2.0 * MARGIN + diagram_height(k) + 60.0;
    let heap = 2.0 * MARGIN + CELL * depth.max(1) as f64;
    diagram.max(heap)
}

pub fn dec_diagram_svg(d: &DecDiagram) -> String {
    let mut body = String::new();
    let w = dec_diagram_svg_body(d, 0.0, &mut body);
    let mut out = svg_open(w, svg_height(d.k, 0));
    out.push_str(&body);
    out.push_str("</svg>\n");
    out
}

pub fn diagram_svg(d: &Diagram) -> String {
    let mut dd = DecDiagram::plain(d);
    dd.loops = vec![Vec::new(); d.loops as usize];
    dec_diagram_svg(&dd)
}

/// Heap on the left, its diagram on the right.
pub fn heap_svg(h: &Heap) -> Result<String> {
    let d = if h.spec().is_ctilde() {
        dec(h)?
    } else {
        let base = diagram_of_heap(h);
        let mut dd = DecDiagram::plain(&base);
        dd.loops = vec![Vec::new(); base.loops as usize];
        dd
    };
    let mut body = String::new();
    let wh = if h.is_empty() {
        0.0
    } else {
        heap_svg_body(h, 0.0, &mut body)
    };
    let wd = dec_diagram_svg_body(&d, wh, &mut body);
    let depth = h.levels().iter().max().map_or(0, |m| m + 1);
    let mut out = svg_open(wh + wd, svg_height(d.k, depth));
    out.push_str(&body);
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSpec;

    #[test]
    fn empty_heap_draws_vertical_strands() {
        let svg = heap_svg(&Heap::empty(CoxeterSpec::ctilde(2))).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert!(!svg.contains("<polygon"));
        assert_eq!(svg, heap_svg(&Heap::empty(CoxeterSpec::ctilde(2))).unwrap());
    }

    #[test]
    fn ascii_levels() {
        let h = Heap::from_letters(CoxeterSpec::ctilde(2), &[1, 3, 2]);
        let text = heap_ascii(&h);
        assert_eq!(text.lines().nth(2), Some("  1  .  3"));
        assert_eq!(text.lines().nth(3), Some("  .  2  ."));
    }
}
