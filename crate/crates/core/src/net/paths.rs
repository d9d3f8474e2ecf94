use std::collections::HashMap;

use serde::Serialize;

use super::{LinkKind, NetError, ProofStructure, Slot};
use crate::formula::Sign;

/// An atom occurrence: position `pos` in the label of edge `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Occ {
    pub edge: usize,
    pub pos: usize,
}

/// One pair of matched occurrences at a non-conclusion link.
///
/// For ax/cut links `ends` lists the occurrences on the two edges in
/// declaration order; for tensor/par the conclusion occurrence comes first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Qubit {
    pub id: usize,
    pub link: usize,
    /// Index within the link's pair list.
    pub index: usize,
    pub ends: [Occ; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomPairing {
    pub qubits: Vec<Qubit>,
    /// Qubit ids per link, in pair order; empty for conclusion links.
    pub per_link: Vec<Vec<usize>>,
    /// For each occurrence, the qubit at its source link and the one at its
    /// target link (absent when the target is a conclusion).
    by_occ: HashMap<Occ, (usize, Option<usize>)>,
}

impl AtomPairing {
    pub fn qubit_count(&self) -> usize {
        self.qubits.len()
    }

    pub fn source_qubit(&self, occ: Occ) -> usize {
        self.by_occ[&occ].0
    }

    pub fn target_qubit(&self, occ: Occ) -> Option<usize> {
        self.by_occ[&occ].1
    }

    /// Qubit id for `(link, index)`.
    pub fn qubit_at(&self, link: usize, index: usize) -> Option<usize> {
        self.per_link.get(link).and_then(|v| v.get(index)).copied()
    }
}

fn atom_count(net: &ProofStructure, e: usize) -> usize {
    net.edge(e).label.atom_count()
}

fn pair_positionally(net: &ProofStructure, link: usize, a: usize, b: usize) -> Result<Vec<[Occ; 2]>, NetError> {
    let xa = net.atoms(a);
    let xb = net.atoms(b);
    if xa.len() != xb.len() || xa.iter().zip(&xb).any(|(p, q)| p.0 != q.0 || p.1 == q.1) {
        return Err(NetError::Invalid(format!(
            "labels of {:?} and {:?} at link {:?} do not match positionally",
            net.edge(a).id,
            net.edge(b).id,
            net.link(link).id
        )));
    }
    Ok((0..xa.len())
        .map(|k| [Occ { edge: a, pos: k }, Occ { edge: b, pos: k }])
        .collect())
}

/// Positional matching of atom occurrences at every non-conclusion link.
/// Qubit ids follow link declaration order, then pair order.
pub fn atom_pairings(net: &ProofStructure) -> Result<AtomPairing, NetError> {
    let mut qubits = Vec::new();
    let mut per_link = Vec::with_capacity(net.link_count());
    for l in 0..net.link_count() {
        let kind = net.link(l).kind;
        let arity_err = || NetError::Invalid(format!("link {:?} has the wrong arity", net.link(l).id));
        let pairs = match kind {
            LinkKind::Conclusion => Vec::new(),
            LinkKind::Ax | LinkKind::Cut => {
                let es = if kind == LinkKind::Ax { net.conclusions_of(l) } else { net.premisses_of(l) };
                if es.len() != 2 {
                    return Err(arity_err());
                }
                pair_positionally(net, l, es[0], es[1])?
            }
            LinkKind::Tensor | LinkKind::Par => {
                let out = net.conclusions_of(l);
                let (Some(left), Some(right)) = (net.premiss_at(l, Slot::L), net.premiss_at(l, Slot::R)) else {
                    return Err(arity_err());
                };
                if out.len() != 1 {
                    return Err(arity_err());
                }
                let o = out[0];
                let (nl, nr) = (atom_count(net, left), atom_count(net, right));
                let co = net.atoms(o);
                let mut prem = net.atoms(left);
                prem.extend(net.atoms(right));
                if co != prem {
                    return Err(NetError::Invalid(format!(
                        "conclusion of {} link {:?} does not match its premisses",
                        kind,
                        net.link(l).id
                    )));
                }
                (0..nl)
                    .map(|k| [Occ { edge: o, pos: k }, Occ { edge: left, pos: k }])
                    .chain((0..nr).map(|k| [Occ { edge: o, pos: nl + k }, Occ { edge: right, pos: k }]))
                    .collect()
            }
        };
        let mut ids = Vec::with_capacity(pairs.len());
        for (index, ends) in pairs.into_iter().enumerate() {
            ids.push(qubits.len());
            qubits.push(Qubit {
                id: qubits.len(),
                link: l,
                index,
                ends,
            });
        }
        per_link.push(ids);
    }
    let mut by_occ: HashMap<Occ, (usize, Option<usize>)> = HashMap::new();
    for e in 0..net.edge_count() {
        for pos in 0..atom_count(net, e) {
            let occ = Occ { edge: e, pos };
            let find = |link: usize| per_link[link].iter().copied().find(|&q| qubits[q].ends.contains(&occ));
            let edge = net.edge(e);
            let src = find(edge.source).ok_or_else(|| {
                NetError::Invalid(format!("occurrence {} of edge {:?} has no source pairing", pos, edge.id))
            })?;
            by_occ.insert(occ, (src, find(edge.target)));
        }
    }
    Ok(AtomPairing {
        qubits,
        per_link,
        by_occ,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PathStep {
    pub occ: Occ,
    pub sign: Sign,
    /// Whether the path runs along the edge's direction here.
    pub forward: bool,
}

/// A ≈-class oriented from its negative end. `qubits[t]` joins
/// `steps[t]` and `steps[t + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PersistentPath {
    pub steps: Vec<PathStep>,
    pub qubits: Vec<usize>,
}

impl PersistentPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Extracts all ≈-classes as oriented paths in canonical order: by the
/// declaration index of the conclusion edge at the negative end, then by
/// atom position.
pub fn persistent_paths(net: &ProofStructure, pairing: &AtomPairing) -> Result<Vec<PersistentPath>, NetError> {
    let mut seen: HashMap<Occ, bool> = HashMap::new();
    let mut paths = Vec::new();
    let mut ends: Vec<Occ> = Vec::new();
    for e in 0..net.edge_count() {
        if !net.is_internal(e) {
            for pos in 0..atom_count(net, e) {
                ends.push(Occ { edge: e, pos });
            }
        }
    }
    for &start in &ends {
        if seen.contains_key(&start) {
            continue;
        }
        let mut steps = Vec::new();
        let mut qs = Vec::new();
        let mut cur = start;
        let mut via: Option<usize> = None;
        loop {
            seen.insert(cur, true);
            let (sq, tq) = pairing.by_occ[&cur];
            // leave through whichever qubit we did not arrive by
            let next_q = match via {
                None => Some(sq),
                Some(q) if q == sq => tq,
                Some(_) => Some(sq),
            };
            let forward = match next_q {
                Some(q) => Some(q) == tq,
                None => true,
            };
            steps.push(PathStep {
                occ: cur,
                sign: net.atoms(cur.edge)[cur.pos].1,
                forward,
            });
            let Some(q) = next_q else { break };
            qs.push(q);
            let ends_q = pairing.qubits[q].ends;
            cur = if ends_q[0] == cur { ends_q[1] } else { ends_q[0] };
            via = Some(q);
        }
        let mut path = PersistentPath { steps, qubits: qs };
        match (path.steps[0].sign, path.steps.last().expect("nonempty").sign) {
            (Sign::Neg, _) => {}
            (Sign::Pos, Sign::Neg) => {
                path.steps.reverse();
                path.qubits.reverse();
                for s in &mut path.steps {
                    s.forward = !s.forward;
                }
            }
            (Sign::Pos, Sign::Pos) => {
                return Err(NetError::Invalid(format!(
                    "persistent path from edge {:?} has two positive ends",
                    net.edge(start.edge).id
                )))
            }
        }
        paths.push(path);
    }
    for e in 0..net.edge_count() {
        for pos in 0..atom_count(net, e) {
            if !seen.contains_key(&Occ { edge: e, pos }) {
                return Err(NetError::Cycle(net.edge(e).id.clone()));
            }
        }
    }
    paths.sort_by_key(|p| p.steps[0].occ);
    Ok(paths)
}
