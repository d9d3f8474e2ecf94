use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::{Edge, Link, LinkKind, NetError, ProofStructure, Slot};

/// A cut-elimination redex, named by ids so a handle can be checked against
/// the structure it is applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Redex {
    /// An axiom `l_ax` cut against an edge `l -> cut`. `outer` is the other
    /// conclusion `l_ax -> m`.
    Axiom {
        cut: String,
        axiom: String,
        axiom_edge: String,
        other_edge: String,
        outer_edge: String,
    },
    /// A tensor conclusion cut against a par conclusion.
    Multiplicative {
        cut: String,
        tensor: String,
        par: String,
        tensor_edge: String,
        par_edge: String,
    },
}

impl Redex {
    pub fn cut(&self) -> &str {
        match self {
            Redex::Axiom { cut, .. } | Redex::Multiplicative { cut, .. } => cut,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Redex::Axiom { .. } => "a-redex",
            Redex::Multiplicative { .. } => "m-redex",
        }
    }
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Redex::Axiom { cut, axiom, .. } => write!(f, "a-redex at cut {cut} (axiom {axiom})"),
            Redex::Multiplicative { cut, tensor, par, .. } => {
                write!(f, "m-redex at cut {cut} (tensor {tensor}, par {par})")
            }
        }
    }
}

/// All redexes, in cut declaration order. A cut between two axioms yields
/// two a-redexes, one per axiom.
pub fn find_redexes(net: &ProofStructure) -> Vec<Redex> {
    let mut out = Vec::new();
    for c in 0..net.link_count() {
        if net.link(c).kind != LinkKind::Cut {
            continue;
        }
        let ins = net.premisses_of(c);
        if ins.len() != 2 {
            continue;
        }
        for (ax_e, other_e) in [(ins[0], ins[1]), (ins[1], ins[0])] {
            let lax = net.edge(ax_e).source;
            let l = net.edge(other_e).source;
            if net.link(lax).kind != LinkKind::Ax || lax == l {
                continue;
            }
            let Some(&outer) = net.conclusions_of(lax).iter().find(|&&e| e != ax_e) else {
                continue;
            };
            if net.edge(outer).target == l {
                continue;
            }
            out.push(Redex::Axiom {
                cut: net.link(c).id.clone(),
                axiom: net.link(lax).id.clone(),
                axiom_edge: net.edge(ax_e).id.clone(),
                other_edge: net.edge(other_e).id.clone(),
                outer_edge: net.edge(outer).id.clone(),
            });
        }
        let kinds = [net.link(net.edge(ins[0]).source).kind, net.link(net.edge(ins[1]).source).kind];
        let pair = match kinds {
            [LinkKind::Tensor, LinkKind::Par] => Some((ins[0], ins[1])),
            [LinkKind::Par, LinkKind::Tensor] => Some((ins[1], ins[0])),
            _ => None,
        };
        if let Some((te, pe)) = pair {
            out.push(Redex::Multiplicative {
                cut: net.link(c).id.clone(),
                tensor: net.link(net.edge(te).source).id.clone(),
                par: net.link(net.edge(pe).source).id.clone(),
                tensor_edge: net.edge(te).id.clone(),
                par_edge: net.edge(pe).id.clone(),
            });
        }
    }
    out
}

/// A reduction `π ⇝ π′` with its edge correspondence.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub redex: Redex,
    pub before: ProofStructure,
    pub after: ProofStructure,
    /// Image in π′ of each π edge; `None` for edges consumed by the redex.
    pub edge_map: Vec<Option<usize>>,
}

impl Reduction {
    /// `(π edge id, π′ edge id)` for every edge with an image.
    pub fn edge_map_ids(&self) -> Vec<(String, String)> {
        self.edge_map
            .iter()
            .enumerate()
            .filter_map(|(e, img)| img.map(|i| (self.before.edge(e).id.clone(), self.after.edge(i).id.clone())))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: Vec<_> = self
            .edge_map_ids()
            .into_iter()
            .map(|(a, b)| serde_json::json!({ "from": a, "to": b }))
            .collect();
        serde_json::json!({
            "redex": self.redex,
            "links_before": self.before.link_count(),
            "links_after": self.after.link_count(),
            "edges_before": self.before.edge_count(),
            "edges_after": self.after.edge_count(),
            "correspondence": map,
        })
    }
}

struct EdgeSpec {
    id: String,
    source: String,
    target: String,
    slot: Option<Slot>,
    label: crate::formula::Formula,
    origin: Vec<usize>,
}

fn fresh_link_id(net: &ProofStructure, base: &str) -> String {
    if net.link_index(base).is_none() {
        return base.into();
    }
    (2..)
        .map(|k| format!("{base}{k}"))
        .find(|id| net.link_index(id).is_none())
        .expect("unbounded")
}

pub fn apply_reduction(net: &ProofStructure, redex: &Redex) -> Result<Reduction, NetError> {
    if !find_redexes(net).contains(redex) {
        return Err(NetError::StaleRedex(redex.to_string()));
    }
    let idx = |id: &str| net.edge_index(id).expect("checked by find_redexes");
    let lid = |l: usize| net.link(l).id.clone();
    let spec = |e: usize| {
        let edge = net.edge(e);
        EdgeSpec {
            id: edge.id.clone(),
            source: lid(edge.source),
            target: lid(edge.target),
            slot: edge.slot,
            label: edge.label.clone(),
            origin: vec![e],
        }
    };
    let mut links: Vec<Link> = Vec::new();
    let mut edges: Vec<EdgeSpec> = Vec::new();
    match redex {
        Redex::Axiom {
            cut,
            axiom,
            axiom_edge,
            other_edge,
            outer_edge,
        } => {
            let (ax_e, other_e, outer_e) = (idx(axiom_edge), idx(other_edge), idx(outer_edge));
            links.extend(net.links().iter().filter(|l| l.id != *cut && l.id != *axiom).cloned());
            for e in 0..net.edge_count() {
                if e == ax_e || e == outer_e {
                    continue;
                }
                if e == other_e {
                    let outer = net.edge(outer_e);
                    edges.push(EdgeSpec {
                        id: net.edge(other_e).id.clone(),
                        source: lid(net.edge(other_e).source),
                        target: lid(outer.target),
                        slot: outer.slot,
                        label: net.edge(other_e).label.clone(),
                        origin: vec![outer_e],
                    });
                } else {
                    edges.push(spec(e));
                }
            }
        }
        Redex::Multiplicative {
            cut,
            tensor,
            par,
            tensor_edge,
            par_edge,
        } => {
            let (te, pe) = (idx(tensor_edge), idx(par_edge));
            let t = net.link_index(tensor).expect("checked");
            let p = net.link_index(par).expect("checked");
            let cut_a = fresh_link_id(net, &format!("{cut}_a"));
            let mut cut_b = fresh_link_id(net, &format!("{cut}_b"));
            if cut_b == cut_a {
                cut_b = fresh_link_id(net, &format!("{cut}_b_"));
            }
            for l in net.links() {
                if l.id == *cut {
                    links.push(Link { id: cut_a.clone(), kind: LinkKind::Cut });
                    links.push(Link { id: cut_b.clone(), kind: LinkKind::Cut });
                } else if l.id != *tensor && l.id != *par {
                    links.push(l.clone());
                }
            }
            let retarget: HashMap<usize, &String> = [
                (net.premiss_at(t, Slot::L), &cut_a),
                (net.premiss_at(p, Slot::L), &cut_a),
                (net.premiss_at(t, Slot::R), &cut_b),
                (net.premiss_at(p, Slot::R), &cut_b),
            ]
            .into_iter()
            .map(|(e, c)| (e.expect("valid premiss"), c))
            .collect();
            for e in 0..net.edge_count() {
                if e == te || e == pe {
                    continue;
                }
                let mut s = spec(e);
                if let Some(c) = retarget.get(&e) {
                    s.target = (*c).clone();
                    s.slot = None;
                }
                edges.push(s);
            }
        }
    }
    let link_pos: HashMap<&str, usize> = links.iter().enumerate().map(|(i, l)| (l.id.as_str(), i)).collect();
    let mut edge_map = vec![None; net.edge_count()];
    let mut built = Vec::with_capacity(edges.len());
    for (i, s) in edges.iter().enumerate() {
        for &o in &s.origin {
            edge_map[o] = Some(i);
        }
        built.push(Edge {
            id: s.id.clone(),
            source: link_pos[s.source.as_str()],
            target: link_pos[s.target.as_str()],
            slot: s.slot,
            label: s.label.clone(),
        });
    }
    let after = ProofStructure::from_parts(links, built);
    Ok(Reduction {
        redex: redex.clone(),
        before: net.clone(),
        after,
        edge_map,
    })
}
