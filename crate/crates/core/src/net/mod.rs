//! Proof structures: links, formula-labelled edges and the derived
//! atom-level bookkeeping (pairings, qubits, persistent paths, redexes).

mod parse;
mod paths;
mod reduce;
mod validate;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{Formula, FormulaError, Sign};

pub use parse::parse_net;
pub use paths::{atom_pairings, persistent_paths, AtomPairing, Occ, PathStep, PersistentPath, Qubit};
pub use reduce::{apply_reduction, find_redexes, Redex, Reduction};
pub use validate::{validate, ValidationReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    Ax,
    Cut,
    Tensor,
    Par,
    #[serde(rename = "c")]
    Conclusion,
}

impl LinkKind {
    pub fn keyword(self) -> &'static str {
        match self {
            LinkKind::Ax => "ax",
            LinkKind::Cut => "cut",
            LinkKind::Tensor => "tensor",
            LinkKind::Par => "par",
            LinkKind::Conclusion => "c",
        }
    }

    pub fn from_keyword(s: &str) -> Option<LinkKind> {
        Some(match s {
            "ax" => LinkKind::Ax,
            "cut" => LinkKind::Cut,
            "tensor" => LinkKind::Tensor,
            "par" => LinkKind::Par,
            "c" => LinkKind::Conclusion,
            _ => return None,
        })
    }

    /// Number of premiss edges the link accepts.
    pub fn premiss_count(self) -> usize {
        match self {
            LinkKind::Ax => 0,
            LinkKind::Cut | LinkKind::Tensor | LinkKind::Par => 2,
            LinkKind::Conclusion => 1,
        }
    }

    /// Number of conclusion edges the link emits.
    pub fn conclusion_count(self) -> usize {
        match self {
            LinkKind::Ax => 2,
            LinkKind::Tensor | LinkKind::Par => 1,
            LinkKind::Cut | LinkKind::Conclusion => 0,
        }
    }

    pub fn has_ordered_premisses(self) -> bool {
        matches!(self, LinkKind::Tensor | LinkKind::Par)
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Slot {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Link {
    pub id: String,
    pub kind: LinkKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub slot: Option<Slot>,
    pub label: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<NetError>,
    },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("bad formula: {0}")]
    Formula(#[from] FormulaError),
    #[error("empty net")]
    Empty,
    #[error("invalid identifier {0:?}")]
    BadIdentifier(String),
    #[error("undefined link {0:?}")]
    UnknownLink(String),
    #[error("undefined edge {0:?}")]
    UnknownEdge(String),
    #[error("duplicate link id {0:?}")]
    DuplicateLink(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} into {kind} link {link:?} needs a .L or .R slot")]
    SlotMissing { edge: String, link: String, kind: LinkKind },
    #[error("edge {edge:?} gives a slot but {kind} link {link:?} has unordered premisses")]
    SlotUnexpected { edge: String, link: String, kind: LinkKind },
    #[error("edge {edge:?} has no free premiss slot at link {link:?}")]
    NoFreePremiss { edge: String, link: String },
    #[error("edge {edge:?} has no free conclusion slot at link {link:?}")]
    NoFreeConclusion { edge: String, link: String },
    #[error("structure is not valid: {0}")]
    Invalid(String),
    #[error("cyclic persistent class through edge {0:?}")]
    Cycle(String),
    #[error("redex is not present in this structure: {0}")]
    StaleRedex(String),
}

impl NetError {
    pub fn at_line(self, line: usize) -> NetError {
        NetError::AtLine {
            line,
            source: Box::new(self),
        }
    }
}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

/// A proof structure: links and edges in declaration order.
#[derive(Clone, Debug, Default)]
pub struct ProofStructure {
    links: Vec<Link>,
    edges: Vec<Edge>,
    link_by_id: HashMap<String, usize>,
    edge_by_id: HashMap<String, usize>,
}

impl PartialEq for ProofStructure {
    fn eq(&self, other: &Self) -> bool {
        self.links == other.links && self.edges == other.edges
    }
}

impl Eq for ProofStructure {}

impl ProofStructure {
    pub fn new() -> ProofStructure {
        ProofStructure::default()
    }

    pub fn add_link(&mut self, id: &str, kind: LinkKind) -> Result<usize, NetError> {
        if !is_identifier(id) {
            return Err(NetError::BadIdentifier(id.into()));
        }
        if self.link_by_id.contains_key(id) {
            return Err(NetError::DuplicateLink(id.into()));
        }
        self.links.push(Link { id: id.into(), kind });
        self.link_by_id.insert(id.into(), self.links.len() - 1);
        Ok(self.links.len() - 1)
    }

    /// Adds an edge `source -> target[.slot]`. Slot occupancy and link
    /// capacities are enforced here; missing edges are left to [`validate`].
    pub fn add_edge(
        &mut self,
        id: &str,
        source: &str,
        target: &str,
        slot: Option<Slot>,
        label: Formula,
    ) -> Result<usize, NetError> {
        if !is_identifier(id) {
            return Err(NetError::BadIdentifier(id.into()));
        }
        if self.edge_by_id.contains_key(id) {
            return Err(NetError::DuplicateEdge(id.into()));
        }
        let s = self.link_index(source).ok_or_else(|| NetError::UnknownLink(source.into()))?;
        let t = self.link_index(target).ok_or_else(|| NetError::UnknownLink(target.into()))?;
        let tkind = self.links[t].kind;
        match (tkind.has_ordered_premisses(), slot) {
            (true, None) => {
                return Err(NetError::SlotMissing {
                    edge: id.into(),
                    link: target.into(),
                    kind: tkind,
                })
            }
            (false, Some(_)) => {
                return Err(NetError::SlotUnexpected {
                    edge: id.into(),
                    link: target.into(),
                    kind: tkind,
                })
            }
            _ => {}
        }
        let taken = self
            .edges
            .iter()
            .filter(|e| e.target == t && (slot.is_none() || e.slot == slot))
            .count();
        let capacity = if slot.is_some() { 1 } else { tkind.premiss_count() };
        if taken >= capacity {
            return Err(NetError::NoFreePremiss {
                edge: id.into(),
                link: target.into(),
            });
        }
        if self.edges.iter().filter(|e| e.source == s).count() >= self.links[s].kind.conclusion_count() {
            return Err(NetError::NoFreeConclusion {
                edge: id.into(),
                link: source.into(),
            });
        }
        self.edges.push(Edge {
            id: id.into(),
            source: s,
            target: t,
            slot,
            label,
        });
        self.edge_by_id.insert(id.into(), self.edges.len() - 1);
        Ok(self.edges.len() - 1)
    }

    pub(crate) fn from_parts(links: Vec<Link>, edges: Vec<Edge>) -> ProofStructure {
        let link_by_id = links.iter().enumerate().map(|(i, l)| (l.id.clone(), i)).collect();
        let edge_by_id = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        ProofStructure {
            links,
            edges,
            link_by_id,
            edge_by_id,
        }
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn link(&self, i: usize) -> &Link {
        &self.links[i]
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn link_index(&self, id: &str) -> Option<usize> {
        self.link_by_id.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_by_id.get(id).copied()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges leaving `link`, in declaration order.
    pub fn conclusions_of(&self, link: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].source == link).collect()
    }

    /// Edges entering `link`: `.L` before `.R`, otherwise declaration order.
    pub fn premisses_of(&self, link: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].target == link).collect();
        v.sort_by_key(|&e| (self.edges[e].slot.map(|s| s == Slot::R), e));
        v
    }

    pub fn premiss_at(&self, link: usize, slot: Slot) -> Option<usize> {
        (0..self.edges.len()).find(|&e| self.edges[e].target == link && self.edges[e].slot == Some(slot))
    }

    /// True iff the edge joins two links that both carry qubits.
    pub fn is_internal(&self, edge: usize) -> bool {
        self.links[self.edges[edge].target].kind != LinkKind::Conclusion
    }

    pub fn atoms(&self, edge: usize) -> Vec<(std::sync::Arc<str>, Sign)> {
        self.edges[edge].label.atoms_of()
    }

    pub fn cut_count(&self) -> usize {
        self.links.iter().filter(|l| l.kind == LinkKind::Cut).count()
    }

    /// Serialises in the line format read by [`parse_net`].
    pub fn to_net_text(&self) -> String {
        let mut s = String::new();
        for l in &self.links {
            s.push_str(&format!("link {} {}\n", l.id, l.kind));
        }
        for e in &self.edges {
            let slot = match e.slot {
                Some(Slot::L) => ".L",
                Some(Slot::R) => ".R",
                None => "",
            };
            s.push_str(&format!(
                "edge {} {} -> {}{} : {}\n",
                e.id, self.links[e.source].id, self.links[e.target].id, slot, e.label
            ));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "id": e.id,
                    "source": self.links[e.source].id,
                    "target": self.links[e.target].id,
                    "slot": e.slot,
                    "label": e.label.render(),
                })
            })
            .collect();
        serde_json::json!({ "links": self.links, "edges": edges })
    }
}

#[cfg(test)]
pub(crate) mod tests;
