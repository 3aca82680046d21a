//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::collections::BTreeSet;

use fcheaps::coxeter::{CoxeterSpec, Family, Word};
use fcheaps::decorated::{admissible_loop, canonical_cycle, theta_tilde_with_scalar};
use fcheaps::decoration::dec;
use fcheaps::graft::complete_horizontal;
use fcheaps::inverse::invert;
use fcheaps::reduction::reduce;
use fcheaps::snake::{edge_bijection, snakes_partition, SnakeEdge, SnakeKind};
use fcheaps::tl::{tau_alpha, BoxNode, Diagram};
use fcheaps::verify::{run, Suite, VerifyConfig};
use fcheaps::Heap;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suite(s: Suite, family: Family, ns: &[usize], max_len: Option<usize>) -> Outcome {
    for &n in ns {
        let cfg = VerifyConfig::new(
            CoxeterSpec::new(family, n).map_err(|e| e.to_string())?,
            max_len,
        );
        let r = run(s, &cfg).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{r}"));
        }
        if r.checked == 0 {
            return Err(format!("{s} n={n}: nothing checked"));
        }
    }
    Ok(())
}

fn relations() -> Outcome {
    suite(Suite::Relations, Family::TypeA, &[2, 3, 4, 5], None)?;
    suite(Suite::Relations, Family::TypeCtilde, &[2, 3, 4, 5], None)
}

fn catalan() -> Outcome {
    for (n, want) in [(1, 5), (2, 14), (3, 42), (4, 132)] {
        let cfg = VerifyConfig::new(CoxeterSpec::type_a(n), None);
        let r = run(Suite::Catalan, &cfg).map_err(|e| e.to_string())?;
        if !r.passed() || r.count != Some(want) {
            return Err(format!("n={n}: {r}"));
        }
    }
    Ok(())
}

fn worked_example() -> Outcome {
    let spec = CoxeterSpec::ctilde(6);
    let letters = [
        2, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 2, 4, 6, 1, 3, 5, 7, 4,
    ];
    let w = Word::new(spec, letters.to_vec()).map_err(|e| e.to_string())?;
    let h = Heap::from_word(&w).map_err(|e| e.to_string())?;
    let (tau, alpha) = reduce(&h).map_err(|e| e.to_string())?;
    let want = Heap::from_letters(tau.spec(), &[2, 6, 1, 3, 5, 7, 4]);
    if tau.spec().family != Family::TypeA || tau != want || alpha != 2 {
        return Err(format!("got tau {:?} alpha {alpha}", tau.word()));
    }
    if tau_alpha(&h).map_err(|e| e.to_string())? != (want.clone(), 2) {
        return Err("diagram oracle disagrees".into());
    }
    let mut d = Diagram::of_word(spec.k(), &letters);
    d.loops -= 2;
    if d != Diagram::of_word(spec.k(), &[2, 6, 1, 3, 5, 7, 4]) {
        return Err("d(w) is not delta^2 d_tau".into());
    }
    Ok(())
}

fn snake_example() -> Outcome {
    let spec = CoxeterSpec::ctilde(12);
    let h = Heap::from_letters(spec, &[2, 4, 8, 13, 1, 3, 5, 9, 12, 2, 4, 6, 1, 3, 5, 7, 4]);
    if !h.is_fc() || !h.is_alternating() {
        return Err("heap is not an ALT heap".into());
    }
    let pairs = edge_bijection(&h).map_err(|e| e.to_string())?;
    let n = BoxNode::north;
    let s = BoxNode::south;
    let listed = [
        (n(7), n(10)),
        (n(1), n(6)),
        (s(3), s(6)),
        (n(12), s(14)),
        (n(2), n(3)),
        (n(4), n(5)),
        (n(8), n(9)),
        (n(13), n(14)),
        (s(1), s(2)),
        (s(4), s(5)),
        (s(7), s(8)),
        (s(9), s(10)),
        (s(12), s(13)),
        (n(11), s(11)),
    ];
    let unordered = |a: BoxNode, b: BoxNode| if a <= b { (a, b) } else { (b, a) };
    let want: BTreeSet<_> = listed.iter().map(|&(a, b)| unordered(a, b)).collect();
    let got: BTreeSet<_> = pairs
        .iter()
        .filter_map(|(_, e)| match *e {
            SnakeEdge::Edge(a, b) => Some(unordered(a, b)),
            SnakeEdge::Loop => None,
        })
        .collect();
    if pairs.len() != 14 || got != want {
        return Err(format!("{} paths, edges {got:?}", pairs.len()));
    }
    let kinds: BTreeSet<String> = pairs.iter().map(|(p, _)| format!("{:?}", p.kind)).collect();
    let want_kinds: BTreeSet<String> = [
        SnakeKind::ForkPath { x: 6, y: 9 },
        SnakeKind::Directed { x: 1, y: 5 },
        SnakeKind::Directed { x: 3, y: 5 },
        SnakeKind::Directed { x: 12, y: 13 },
        SnakeKind::TopDegenerate(2),
        SnakeKind::TopDegenerate(4),
        SnakeKind::TopDegenerate(8),
        SnakeKind::TopDegenerate(13),
        SnakeKind::BottomDegenerate(1),
        SnakeKind::BottomDegenerate(4),
        SnakeKind::BottomDegenerate(7),
        SnakeKind::BottomDegenerate(9),
        SnakeKind::BottomDegenerate(12),
        SnakeKind::Empty(11),
    ]
    .iter()
    .map(|k| format!("{k:?}"))
    .collect();
    if kinds != want_kinds {
        return Err(format!("kinds {kinds:?}"));
    }
    Ok(())
}

fn ctilde_suite(s: Suite, max_len: usize) -> Outcome {
    suite(s, Family::TypeCtilde, &[2, 3, 4], Some(max_len))
}

fn check_heap(h: &Heap) -> Outcome {
    let word = format!("{:?}", h.word());
    let d = dec(h).map_err(|e| format!("{word}: {e}"))?;
    let (scalar, theta) =
        theta_tilde_with_scalar(&h.to_word()).map_err(|e| format!("{word}: {e}"))?;
    if !scalar.is_one() || theta != d {
        return Err(format!("{word}: dec differs from theta"));
    }
    if !d.is_admissible() {
        return Err(format!("{word}: not admissible"));
    }
    if invert(&d).map_err(|e| format!("{word}: {e}"))? != *h {
        return Err(format!("{word}: roundtrip"));
    }
    if reduce(h).map_err(|e| e.to_string())? != tau_alpha(h).map_err(|e| e.to_string())? {
        return Err(format!("{word}: reduction"));
    }
    if h.is_alternating() {
        edge_bijection(h).map_err(|e| format!("{word}: {e}"))?;
    }
    Ok(())
}

fn degenerate() -> Outcome {
    for n in [2, 4] {
        let spec = CoxeterSpec::ctilde(n);
        check_heap(&Heap::empty(spec))?;
        for i in 1..=(n as u8 + 1) {
            check_heap(&Heap::from_letters(spec, &[i]))?;
        }
        let hinf = complete_horizontal(spec).map_err(|e| e.to_string())?;
        check_heap(&hinf)?;
        let cycles = snakes_partition(&hinf)
            .map_err(|e| e.to_string())?
            .iter()
            .filter(|p| p.kind == SnakeKind::Cycle)
            .count();
        let d = dec(&hinf).map_err(|e| e.to_string())?;
        if cycles != 1
            || d.loops.len() != 1
            || canonical_cycle(&d.loops[0]) != canonical_cycle(&admissible_loop())
        {
            return Err(format!("H_inf n={n}: {cycles} cycles, loops {:?}", d.loops));
        }
        let (_, alpha) = reduce(&hinf).map_err(|e| e.to_string())?;
        if alpha != 1 {
            return Err(format!("H_inf n={n}: del {alpha}"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("relations", relations),
        ("catalan", catalan),
        ("worked example", worked_example),
        ("reduction order", || {
            ctilde_suite(Suite::ReductionOrder, 12)
        }),
        ("snake bijection", || {
            ctilde_suite(Suite::SnakesBijection, 12)
        }),
        ("snake example", snake_example),
        ("dec equals theta", || ctilde_suite(Suite::DecTheta, 12)),
        ("injectivity", || ctilde_suite(Suite::Injective, 10)),
        ("roundtrip", || ctilde_suite(Suite::Roundtrip, 12)),
        ("degenerate inputs", degenerate),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} {name}: PASS", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
