use serde::Serialize;

use super::{atom_pairings, persistent_paths, LinkKind, NetError, ProofStructure, Slot};
use crate::formula::Formula;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Offending link or edge id.
    pub subject: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, subject: &str, message: impl Into<String>) {
        self.violations.push(Violation {
            subject: subject.into(),
            message: message.into(),
        });
    }
}

/// Arity and labelling conditions, then the path criterion: every ≈-class
/// must be a simple path between conclusions.
pub fn validate(net: &ProofStructure) -> ValidationReport {
    let mut r = ValidationReport::default();
    for e in net.edges() {
        if e.source == e.target {
            r.push(&e.id, "edge is a loop");
        }
    }
    for (l, link) in net.links().iter().enumerate() {
        let outs = net.conclusions_of(l);
        let ins = net.premisses_of(l);
        if outs.len() != link.kind.conclusion_count() {
            r.push(
                &link.id,
                format!("{} link needs {} conclusion(s), has {}", link.kind, link.kind.conclusion_count(), outs.len()),
            );
        }
        if ins.len() != link.kind.premiss_count() {
            r.push(
                &link.id,
                format!("{} link needs {} premiss(es), has {}", link.kind, link.kind.premiss_count(), ins.len()),
            );
        }
        let label = |e: usize| &net.edge(e).label;
        match link.kind {
            LinkKind::Ax if outs.len() == 2 => {
                if !label(outs[0]).is_dual_of(label(outs[1])) {
                    r.push(&link.id, "axiom labels not dual");
                }
            }
            LinkKind::Cut if ins.len() == 2 => {
                if !label(ins[0]).is_dual_of(label(ins[1])) {
                    r.push(&link.id, "cut premisses not dual");
                }
            }
            LinkKind::Tensor | LinkKind::Par if outs.len() == 1 => {
                if let (Some(a), Some(b)) = (net.premiss_at(l, Slot::L), net.premiss_at(l, Slot::R)) {
                    let (a, b) = (label(a).clone(), label(b).clone());
                    let want = if link.kind == LinkKind::Tensor {
                        Formula::tensor(a, b)
                    } else {
                        Formula::par(a, b)
                    };
                    if *label(outs[0]) != want {
                        r.push(&link.id, format!("{} conclusion label mismatch", link.kind));
                    }
                }
            }
            _ => {}
        }
    }
    if !r.is_valid() {
        return r;
    }
    match atom_pairings(net).and_then(|p| persistent_paths(net, &p)) {
        Ok(_) => {}
        Err(NetError::Cycle(edge)) => r.push(&edge, "cyclic persistent class"),
        Err(other) => r.push("", other.to_string()),
    }
    r
}
