use fcheaps::coxeter::{enumerate_fc, CoxeterSpec};
use fcheaps::decorated::DiagramClass;
use fcheaps::decoration::dec;
use fcheaps::graft::{build_he, complete_horizontal, decorated_edges, invert_inductive, EdgeRef};
use fcheaps::json::{dec_diagram_from_json, dec_diagram_to_json, heap_from_json, heap_to_json};
use fcheaps::tl::BoxNode;
use fcheaps::Heap;

#[test]
fn loop_heap_is_complete_horizontal() {
    for n in [2, 4, 6] {
        let spec = CoxeterSpec::ctilde(n);
        let hinf = complete_horizontal(spec).unwrap();
        let d = dec(&hinf).unwrap();
        assert_eq!(d.loops.len(), 1);
        assert_eq!(build_he(&d, EdgeRef::Loop).unwrap(), hinf);
        assert_eq!(invert_inductive(&d).unwrap(), hinf);
    }
    assert!(complete_horizontal(CoxeterSpec::ctilde(3)).is_err());
}

#[test]
fn single_triangle_through_edge() {
    let spec = CoxeterSpec::ctilde(2);
    let h = Heap::from_letters(spec, &[1, 2, 1]);
    let d = dec(&h).unwrap();
    let s = BoxNode::north(3).slot(d.k);
    assert_eq!(d.partner[s] as usize, BoxNode::south(3).slot(d.k));
    assert_eq!(decorated_edges(&d), vec![s]);
    assert_eq!(build_he(&d, EdgeRef::Edge(s)).unwrap(), h);
}

#[test]
fn inductive_inverse_on_a_diagrams() {
    for (n, len) in [(2, 12), (3, 10), (4, 9)] {
        let mut seen = 0;
        for h in enumerate_fc(CoxeterSpec::ctilde(n), Some(len)).unwrap() {
            let d = dec(&h).unwrap();
            if d.classify() != DiagramClass::A {
                continue;
            }
            seen += 1;
            assert_eq!(invert_inductive(&d).unwrap(), h, "{:?}", h.word());
        }
        assert!(seen > 0);
    }
}

#[test]
fn json_roundtrips() {
    for h in enumerate_fc(CoxeterSpec::ctilde(3), Some(8)).unwrap() {
        assert_eq!(heap_from_json(&heap_to_json(&h)).unwrap(), h);
        let d = dec(&h).unwrap();
        assert_eq!(dec_diagram_from_json(&dec_diagram_to_json(&d)).unwrap(), d);
    }
}
