use super::*;
use crate::formula::Formula;

pub(crate) fn load(name: &str) -> ProofStructure {
    let path = format!("{}/nets/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_net(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn parses_example_net() {
    let net = load("ex51.net");
    assert_eq!(net.link_count(), 8);
    assert_eq!(net.edge_count(), 8);
    assert!(validate(&net).is_valid());
    let e7 = net.edge(net.edge_index("e7").unwrap());
    assert_eq!(e7.label, Formula::tensor(Formula::pos("U"), Formula::neg("U")));
}

#[test]
fn smallest_net() {
    let net = load("axiom.net");
    assert_eq!((net.link_count(), net.edge_count()), (3, 2));
    let pairing = atom_pairings(&net).unwrap();
    assert_eq!(pairing.qubit_count(), 1);
    let paths = persistent_paths(&net, &pairing).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].len(), 2);
    assert!(find_redexes(&net).is_empty());
}

#[test]
fn parse_errors() {
    let undefined = "link a ax\nlink c1 c\nedge e1 a -> nowhere : X\n";
    match parse_net(undefined) {
        Err(NetError::AtLine { line: 3, source }) => {
            assert_eq!(*source, NetError::UnknownLink("nowhere".into()))
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(parse_net("# only a comment\n\n"), Err(NetError::Empty));
    let dup = "link a ax\nlink a c\n";
    assert!(matches!(parse_net(dup), Err(NetError::AtLine { line: 2, .. })));
    let no_slot = "link a ax\nlink t tensor\nedge e a -> t : X\n";
    assert!(parse_net(no_slot).unwrap_err().to_string().contains("needs a .L or .R slot"));
    let bad_slot = "link a ax\nlink c c\nedge e a -> c.L : X\n";
    assert!(parse_net(bad_slot).is_err());
    let taken = "link a ax\nlink b ax\nlink t tensor\nedge e a -> t.L : X\nedge f b -> t.L : X\n";
    assert!(parse_net(taken).unwrap_err().to_string().contains("no free premiss"));
    let bad_formula = "link a ax\nlink c c\nedge e a -> c : X *\n";
    assert!(matches!(parse_net(bad_formula), Err(NetError::AtLine { line: 3, .. })));
    assert!(parse_net("link a widget\n").is_err());
    assert!(parse_net("node a\n").is_err());
}

#[test]
fn links_may_follow_edges() {
    let net = parse_net("edge e1 a -> c1 : ~X\nedge e2 a -> c2 : X # trailing\nlink a ax\nlink c1 c\nlink c2 c\n").unwrap();
    assert!(validate(&net).is_valid());
}

#[test]
fn axiom_labels_not_dual() {
    let net = parse_net("link a ax\nlink c1 c\nlink c2 c\nedge e1 a -> c1 : A\nedge e2 a -> c2 : A\n").unwrap();
    let r = validate(&net);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].subject, "a");
    assert_eq!(r.violations[0].message, "axiom labels not dual");
}

#[test]
fn other_violations() {
    let net = parse_net("link a ax\nlink c1 c\nedge e1 a -> c1 : ~A\n").unwrap();
    let r = validate(&net);
    assert!(r.violations.iter().any(|v| v.subject == "a" && v.message.contains("conclusion")));
    let net = parse_net(
        "link a ax\nlink b ax\nlink t tensor\nlink c1 c\nlink c2 c\nlink c3 c\n\
         edge e1 a -> c1 : ~A\nedge e2 a -> t.L : A\nedge e3 b -> t.R : B\nedge e4 b -> c2 : ~B\n\
         edge e5 t -> c3 : B * A\n",
    )
    .unwrap();
    assert!(validate(&net)
        .violations
        .iter()
        .any(|v| v.message == "tensor conclusion label mismatch"));
    let net = parse_net("link a ax\nlink b ax\nlink k cut\nlink c1 c\nlink c2 c\nedge e1 a -> c1 : ~A\nedge e2 a -> k : A\nedge e3 b -> k : A\nedge e4 b -> c2 : ~A\n").unwrap();
    assert_eq!(validate(&net).violations[0].message, "cut premisses not dual");
}

#[test]
fn cyclic_class_is_reported() {
    let net = load("cycle.net");
    let r = validate(&net);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].message, "cyclic persistent class");
    let pairing = atom_pairings(&net).unwrap();
    assert!(matches!(persistent_paths(&net, &pairing), Err(NetError::Cycle(_))));
}

#[test]
fn pairing_sizes() {
    let net = load("ex51.net");
    let p = atom_pairings(&net).unwrap();
    let l3 = net.link_index("l3").unwrap();
    assert_eq!(p.per_link[l3].len(), 2);
    assert!(p.per_link[net.link_index("l1").unwrap()].is_empty());
    assert_eq!(p.qubit_count(), 9);
    // every occurrence lies in one pair at its source and at most one at its target
    let mut pair_ends = 0;
    for e in 0..net.edge_count() {
        for pos in 0..net.edge(e).label.atom_count() {
            let occ = Occ { edge: e, pos };
            pair_ends += 1 + p.target_qubit(occ).is_some() as usize;
        }
    }
    assert_eq!(pair_ends, 2 * p.qubit_count());
}

/// Hand trace of the single class of the example net, from the ~U conclusion.
#[test]
fn example_path_by_hand() {
    let net = load("ex51.net");
    let p = atom_pairings(&net).unwrap();
    let paths = persistent_paths(&net, &p).unwrap();
    assert_eq!(paths.len(), 1);
    let trace: Vec<(String, usize, bool)> = paths[0]
        .steps
        .iter()
        .map(|s| (net.edge(s.occ.edge).id.clone(), s.occ.pos, s.forward))
        .collect();
    let want = [
        ("e1", 0, false),
        ("e2", 0, true),
        ("e7", 0, true),
        ("e8", 0, false),
        ("e5", 0, false),
        ("e6", 0, true),
        ("e8", 1, true),
        ("e7", 1, false),
        ("e3", 0, false),
        ("e4", 0, true),
    ];
    let want: Vec<(String, usize, bool)> = want.iter().map(|(e, k, f)| (e.to_string(), *k, *f)).collect();
    assert_eq!(trace, want);
    for s in &paths[0].steps {
        assert_eq!(s.sign == crate::formula::Sign::Pos, s.forward);
    }
    assert_eq!(paths[0].qubits.len(), 9);
}

#[test]
fn redexes_of_examples() {
    let net = load("ex51.net");
    let r = find_redexes(&net);
    assert_eq!(r.len(), 1);
    assert!(matches!(&r[0], Redex::Multiplicative { cut, .. } if cut == "l8"));
    let net = load("ex52.net");
    assert_eq!(find_redexes(&net).len(), 1);
    let net = load("wire3.net");
    // both cut premisses come from axioms
    assert_eq!(find_redexes(&net).len(), 2);
}

#[test]
fn m_reduction_of_example() {
    let net = load("ex52.net");
    let red = apply_reduction(&net, &find_redexes(&net)[0]).unwrap();
    let after = &red.after;
    assert_eq!(after.link_count(), net.link_count() - 1);
    assert_eq!(after.edge_count(), net.edge_count() - 2);
    assert!(validate(after).is_valid());
    let ids: Vec<&str> = after.links().iter().map(|l| l.id.as_str()).collect();
    assert_eq!(ids, ["l1", "l2", "l3", "l6_a", "l6_b", "c1", "c2"]);
    let e = |id: &str| after.edge(after.edge_index(id).unwrap());
    assert_eq!(after.link(e("f2").target).id, "l6_a");
    assert_eq!(after.link(e("f5").target).id, "l6_a");
    assert_eq!(after.link(e("f3").target).id, "l6_b");
    assert_eq!(after.link(e("f6").target).id, "l6_b");
    // the lower net is an ax-cut-ax-cut-ax chain
    let p = atom_pairings(after).unwrap();
    assert_eq!(p.qubit_count(), 5);
    let paths = persistent_paths(after, &p).unwrap();
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].len(), 6);
    assert_eq!(red.edge_map.iter().filter(|m| m.is_none()).count(), 2);
}

#[test]
fn a_reduction_gives_single_axiom() {
    let net = load("wire3.net");
    for redex in find_redexes(&net) {
        let red = apply_reduction(&net, &redex).unwrap();
        assert_eq!(red.after.link_count(), net.link_count() - 2);
        assert_eq!(red.after.edge_count(), net.edge_count() - 2);
        let kinds: Vec<LinkKind> = red.after.links().iter().map(|l| l.kind).collect();
        assert_eq!(kinds, [LinkKind::Ax, LinkKind::Conclusion, LinkKind::Conclusion]);
        assert!(validate(&red.after).is_valid());
        let q = atom_pairings(&red.after).unwrap().qubit_count();
        assert_eq!(q, 1);
    }
}

#[test]
fn a_reduction_keeps_slot_and_id() {
    let net = load("wire4.net");
    let redex = find_redexes(&net)
        .into_iter()
        .find(|r| matches!(r, Redex::Axiom { axiom, .. } if axiom == "a2"))
        .unwrap();
    let red = apply_reduction(&net, &redex).unwrap();
    let spliced = red.after.edge(red.after.edge_index("e2").unwrap());
    assert_eq!(red.after.link(spliced.source).id, "a1");
    assert_eq!(red.after.link(spliced.target).id, "t");
    assert_eq!(spliced.slot, Some(Slot::L));
    let e4 = net.edge_index("e4").unwrap();
    assert_eq!(red.edge_map[e4], red.after.edge_index("e2"));
    assert!(red.edge_map_ids().contains(&("e4".into(), "e2".into())));
}

#[test]
fn stale_redex_is_rejected() {
    let net = load("ex52.net");
    let redex = find_redexes(&net)[0].clone();
    let red = apply_reduction(&net, &redex).unwrap();
    assert!(matches!(apply_reduction(&red.after, &redex), Err(NetError::StaleRedex(_))));
    let bogus = Redex::Axiom {
        cut: "l6".into(),
        axiom: "l1".into(),
        axiom_edge: "f7".into(),
        other_edge: "f8".into(),
        outer_edge: "f1".into(),
    };
    assert!(apply_reduction(&net, &bogus).is_err());
}

#[test]
fn fresh_cut_names_avoid_collisions() {
    let text = std::fs::read_to_string(format!("{}/nets/ex52.net", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let text = text.replace("link c1 c", "link l6_a c").replace("l1 -> c1", "l1 -> l6_a");
    let net = parse_net(&text).unwrap();
    let red = apply_reduction(&net, &find_redexes(&net)[0]).unwrap();
    assert!(red.after.link_index("l6_a2").is_some());
    assert!(red.after.link_index("l6_b").is_some());
    assert!(validate(&red.after).is_valid());
}

#[test]
fn text_roundtrip_and_determinism() {
    for name in ["ex51.net", "ex52.net", "wire4.net", "chain3.net"] {
        let net = load(name);
        let again = parse_net(&net.to_net_text()).unwrap();
        assert_eq!(again, net);
        assert_eq!(again.to_net_text(), net.to_net_text());
        assert_eq!(find_redexes(&again), find_redexes(&net));
        assert_eq!(
            serde_json::to_string(&net.to_json()).unwrap(),
            serde_json::to_string(&again.to_json()).unwrap()
        );
    }
}

#[test]
fn chain_reduces_to_an_axiom() {
    let mut net = load("chain3.net");
    for _ in 0..3 {
        let redex = find_redexes(&net)[0].clone();
        net = apply_reduction(&net, &redex).unwrap().after;
        assert!(validate(&net).is_valid());
    }
    assert!(find_redexes(&net).is_empty());
    assert_eq!(net.link_count(), 3);
}
