//! Fork elimination and the reduction map from FC(C̃_n) heaps to FC(A_{n+1}) heaps.

use rand::Rng;

use crate::coxeter::{CoxeterSpec, Family};
use crate::error::{Error, Result};
use crate::heap::{Fork, Heap};

fn word_of_order(h: &Heap, order: &[usize]) -> Vec<u8> {
    order.iter().map(|&v| h.label(v)).collect()
}

/// Eliminate one fork; returns the new heap and the (F3) flag.
pub fn eliminate_fork(h: &Heap, f: &Fork) -> Result<(Heap, u32)> {
    if !h.forks().contains(f) {
        return Err(Error::input("not a fork of this heap"));
    }
    let n = h.spec().n as u8;
    let i = h.label(f.outer_top);
    let j = h.label(f.middle);
    let order = h
        .extension_with_consecutive(&[f.outer_top, f.middle, f.outer_bottom])
        .ok_or_else(|| Error::input("fork is not convex"))?;
    // (F1) drop the middle node, (F2) identify the outer ones.
    let keep: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&v| v != f.middle && v != f.outer_bottom)
        .collect();
    let reduced = Heap::from_letters(h.spec(), &word_of_order(h, &keep));
    // (F3)
    let side = if j == i + 1 && i < n {
        Some(i + 2)
    } else if j + 1 == i && i > 2 {
        Some(i - 2)
    } else {
        None
    };
    if let Some(c) = side {
        let col = reduced.column(c);
        for w in col.windows(2) {
            if reduced.interval_size(w[0], w[1]) == 2 {
                let order = reduced
                    .extension_with_consecutive(&[w[0], w[1]])
                    .expect("a two-element interval is convex");
                let keep: Vec<usize> = order.into_iter().filter(|&v| v != w[1]).collect();
                let merged = Heap::from_letters(reduced.spec(), &word_of_order(&reduced, &keep));
                return Ok((merged, 1));
            }
        }
    }
    Ok((reduced, 0))
}

fn finish(h: Heap) -> Heap {
    let spec = CoxeterSpec {
        family: Family::TypeA,
        n: h.spec().n,
    };
    h.relabel(spec)
}

/// `(𝔉(H), del(H))`, eliminating the topmost fork first.
pub fn reduce(h: &Heap) -> Result<(Heap, u32)> {
    let mut cur = h.clone();
    let mut del = 0;
    loop {
        let forks = cur.forks();
        let Some(f) = forks.first() else { break };
        let (next, flag) = eliminate_fork(&cur, f)?;
        cur = next;
        del += flag;
    }
    Ok((finish(cur), del))
}

/// Reduction with a random fork chosen at each step.
pub fn reduce_random<R: Rng>(h: &Heap, rng: &mut R) -> Result<(Heap, u32)> {
    let mut cur = h.clone();
    let mut del = 0;
    loop {
        let forks = cur.forks();
        if forks.is_empty() {
            break;
        }
        let f = forks[rng.gen_range(0..forks.len())];
        let (next, flag) = eliminate_fork(&cur, &f)?;
        cur = next;
        del += flag;
    }
    Ok((finish(cur), del))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tl::{diagram_of_heap, tau_alpha};

    #[test]
    fn single_peak() {
        let c3 = CoxeterSpec::ctilde(3);
        let h = Heap::from_letters(c3, &[2, 1, 2]);
        let f = h.forks()[0];
        let (r, flag) = eliminate_fork(&h, &f).unwrap();
        assert_eq!(r.word(), &[2]);
        assert_eq!(flag, 0);
    }

    #[test]
    fn h_infinity_fires_f3() {
        let c2 = CoxeterSpec::ctilde(2);
        let h = Heap::from_letters(c2, &[1, 3, 2, 1, 3]);
        let left = h
            .forks()
            .into_iter()
            .find(|f| h.label(f.outer_top) == 1)
            .unwrap();
        let (r, flag) = eliminate_fork(&h, &left).unwrap();
        assert_eq!(r.word(), &[1, 3]);
        assert_eq!(flag, 1);
        assert_eq!(diagram_of_heap(&h).loops, 1);
    }

    #[test]
    fn fig11_and_example() {
        let c5 = CoxeterSpec::ctilde(5);
        let w = [2, 1, 3, 2, 4, 6, 1, 3, 5, 2, 4, 6, 1, 3, 5, 2, 1];
        let (r, _) = reduce(&Heap::from_letters(c5, &w)).unwrap();
        assert_eq!(
            r,
            Heap::from_letters(CoxeterSpec::type_a(5), &[2, 1, 3, 6, 5])
        );
        let c6 = CoxeterSpec::ctilde(6);
        let w = [
            2, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 4,
        ];
        let h = Heap::from_letters(c6, &w);
        let (r, del) = reduce(&h).unwrap();
        assert_eq!(del, 2);
        let (tau, alpha) = tau_alpha(&h).unwrap();
        assert_eq!((r, del), (tau, alpha));
    }
}
