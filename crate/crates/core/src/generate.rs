//! Seeded random proof nets and the reduction checks run over them.
//!
//! Nets are grown sequent-style: components start as axioms, `⊗` joins
//! two components, `⅋` joins two conclusions of one component, and a cut
//! binds a conclusion `F` to a fresh dual partner. The partner is either an
//! axiom (giving an a-redex) or a one-step η-expansion of `¬F` (giving an
//! m-redex). Whatever stays open is closed with conclusion links.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::compiler::{compile_net, wire_decomposition, CompileError, CompiledNet, OrderingChoice};
use crate::correction::{
    composite_report, hamiltonian_shift, reduction_correction, verify_correction, CompositeReport, Correction,
    CorrectionError, CorrectionReport, HamiltonianShift,
};
use crate::formula::Formula;
use crate::net::{apply_reduction, atom_pairings, find_redexes, LinkKind, NetError, ProofStructure, Slot};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenConfig {
    pub max_qubits: usize,
    pub max_axioms: usize,
    pub max_steps: usize,
    pub max_depth: usize,
}

impl Default for GenConfig {
    fn default() -> GenConfig {
        GenConfig {
            max_qubits: 12,
            max_axioms: 3,
            max_steps: 5,
            max_depth: 2,
        }
    }
}

struct Open {
    edge: usize,
    component: usize,
}

#[derive(Default)]
struct Builder {
    links: Vec<LinkKind>,
    /// (source, target, slot, label)
    edges: Vec<(usize, Option<usize>, Option<Slot>, Formula)>,
    open: Vec<Open>,
    components: usize,
}

impl Builder {
    fn link(&mut self, kind: LinkKind) -> usize {
        self.links.push(kind);
        self.links.len() - 1
    }

    fn edge(&mut self, source: usize, label: Formula) -> usize {
        self.edges.push((source, None, None, label));
        self.edges.len() - 1
    }

    fn axiom(&mut self, f: &Formula) -> (usize, usize) {
        let a = self.link(LinkKind::Ax);
        (self.edge(a, f.negate()), self.edge(a, f.clone()))
    }

    fn attach(&mut self, edge: usize, target: usize, slot: Option<Slot>) {
        self.edges[edge].1 = Some(target);
        self.edges[edge].2 = slot;
    }

    fn take(&mut self, k: usize) -> Open {
        self.open.swap_remove(k)
    }

    fn finish(mut self) -> ProofStructure {
        for o in std::mem::take(&mut self.open) {
            let c = self.link(LinkKind::Conclusion);
            self.attach(o.edge, c, None);
        }
        let mut net = ProofStructure::new();
        let name = |i: usize| format!("l{}", i + 1);
        for (i, &k) in self.links.iter().enumerate() {
            net.add_link(&name(i), k).expect("fresh id");
        }
        for (i, (s, t, slot, f)) in self.edges.into_iter().enumerate() {
            net.add_edge(&format!("e{}", i + 1), &name(s), &name(t.expect("closed")), slot, f)
                .expect("built to fit");
        }
        net
    }
}

pub struct NetGenerator {
    rng: ChaCha8Rng,
    config: GenConfig,
}

impl NetGenerator {
    pub fn new(seed: u64, config: GenConfig) -> NetGenerator {
        NetGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            config,
        }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.random_bool(0.5) {
            let name = ["X", "Y", "Z"][self.rng.random_range(0..3)];
            return if self.rng.random_bool(0.5) { Formula::pos(name) } else { Formula::neg(name) };
        }
        let (a, b) = (self.formula(depth - 1), self.formula(depth - 1));
        if self.rng.random_bool(0.5) {
            Formula::tensor(a, b)
        } else {
            Formula::par(a, b)
        }
    }

    /// Cuts `F` against a fresh partner for `¬F`.
    fn cut(&mut self, b: &mut Builder) {
        let k = self.rng.random_range(0..b.open.len());
        let o = b.take(k);
        let f = b.edges[o.edge].3.clone();
        let cut = b.link(LinkKind::Cut);
        b.attach(o.edge, cut, None);
        let expand = !matches!(f, Formula::Atom { .. }) && self.rng.random_bool(0.7);
        if !expand {
            let (neg, pos) = b.axiom(&f);
            b.attach(neg, cut, None);
            b.open.push(Open {
                edge: pos,
                component: o.component,
            });
            return;
        }
        let (l, r, kind) = match &f {
            Formula::Tensor(l, r) => (l.as_ref().clone(), r.as_ref().clone(), LinkKind::Par),
            Formula::Par(l, r) => (l.as_ref().clone(), r.as_ref().clone(), LinkKind::Tensor),
            Formula::Atom { .. } => unreachable!(),
        };
        let (nl, pl) = b.axiom(&l);
        let (nr, pr) = b.axiom(&r);
        let link = b.link(kind);
        b.attach(nl, link, Some(Slot::L));
        b.attach(nr, link, Some(Slot::R));
        let out = b.edge(link, f.negate());
        b.attach(out, cut, None);
        for e in [pl, pr] {
            b.open.push(Open {
                edge: e,
                component: o.component,
            });
        }
    }

    fn pair(&mut self, b: &mut Builder, same: bool) -> bool {
        let mut choices = Vec::new();
        for i in 0..b.open.len() {
            for j in 0..b.open.len() {
                if i != j && (b.open[i].component == b.open[j].component) == same {
                    choices.push((i, j));
                }
            }
        }
        if choices.is_empty() {
            return false;
        }
        let (i, j) = choices[self.rng.random_range(0..choices.len())];
        let (ei, ej, ci, cj) = (b.open[i].edge, b.open[j].edge, b.open[i].component, b.open[j].component);
        let label = |b: &Builder, e: usize| b.edges[e].3.clone();
        let (kind, f) = if same {
            (LinkKind::Par, Formula::par(label(b, ei), label(b, ej)))
        } else {
            (LinkKind::Tensor, Formula::tensor(label(b, ei), label(b, ej)))
        };
        let link = b.link(kind);
        b.attach(ei, link, Some(Slot::L));
        b.attach(ej, link, Some(Slot::R));
        let out = b.edge(link, f);
        let (hi, lo) = (i.max(j), i.min(j));
        b.take(hi);
        b.take(lo);
        for o in b.open.iter_mut() {
            if o.component == cj {
                o.component = ci;
            }
        }
        b.open.push(Open { edge: out, component: ci });
        true
    }

    fn attempt(&mut self) -> ProofStructure {
        let mut b = Builder::default();
        let axioms = self.rng.random_range(1..=self.config.max_axioms);
        for _ in 0..axioms {
            let f = self.formula(self.config.max_depth);
            let (neg, pos) = b.axiom(&f);
            let component = b.components;
            b.components += 1;
            b.open.push(Open { edge: neg, component });
            b.open.push(Open { edge: pos, component });
        }
        let steps = self.rng.random_range(0..=self.config.max_steps);
        let mut cuts = 0;
        for _ in 0..steps {
            match self.rng.random_range(0..3) {
                0 => {
                    self.pair(&mut b, false);
                }
                1 => {
                    self.pair(&mut b, true);
                }
                _ => {
                    self.cut(&mut b);
                    cuts += 1;
                }
            }
        }
        if cuts == 0 {
            self.cut(&mut b);
        }
        b.finish()
    }

    /// Next net with at most `max_qubits` qubits and at least one cut.
    pub fn next_net(&mut self) -> ProofStructure {
        loop {
            let net = self.attempt();
            if atom_pairings(&net).is_ok_and(|p| p.qubit_count() <= self.config.max_qubits) {
                return net;
            }
        }
    }
}

pub fn random_nets(seed: u64, count: usize, config: GenConfig) -> Vec<ProofStructure> {
    let mut g = NetGenerator::new(seed, config);
    (0..count).map(|_| g.next_net()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FuzzError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Correction(#[from] CorrectionError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepRecord {
    pub redex: String,
    pub qubits_before: usize,
    pub qubits_after: usize,
    pub correction: CorrectionReport,
    pub shift: HamiltonianShift,
    /// The reduct still compiles to wires.
    pub wires_after: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositeRecord {
    pub steps: usize,
    pub correction: CorrectionReport,
    pub shift: HamiltonianShift,
    pub composite: CompositeReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetRecord {
    pub qubits: usize,
    pub paths: usize,
    /// Nearest-neighbour blocks, one per path, with `Σ(N−1) = n`.
    pub wires: bool,
    pub steps: Vec<StepRecord>,
    /// Successive first-redex steps down to normal form, composed.
    pub normalization: Option<CompositeRecord>,
}

impl NetRecord {
    pub fn reductions_ok(&self, tol: f64) -> bool {
        self.steps.iter().all(|s| s.correction.passed() && s.shift.deviation <= tol)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.wires
            && self.reductions_ok(tol)
            && self.steps.iter().all(|s| s.wires_after)
            && self.normalization.as_ref().is_none_or(|c| {
                c.correction.passed()
                    && c.shift.deviation <= tol
                    && c.composite.spans_agree
                    && c.composite.nested_image_deviation <= tol
            })
    }
}

fn wires_ok(c: &CompiledNet) -> bool {
    c.paths
        .as_ref()
        .is_some_and(|p| wire_decomposition(&c.code, p).is_ok_and(|w| w.path_qubits == w.n))
}

/// Every redex of `net` reduced once and verified, plus the composite of a
/// full normalization when it takes at least two steps.
pub fn check_net(net: &ProofStructure, tol: f64) -> Result<NetRecord, FuzzError> {
    let compiled = compile_net(net, &OrderingChoice::Linear)?;
    let mut steps = Vec::new();
    for redex in find_redexes(net) {
        let red = apply_reduction(net, &redex)?;
        let after = compile_net(&red.after, &OrderingChoice::Linear)?;
        let corr = reduction_correction(&red, &compiled, &after)?;
        steps.push(StepRecord {
            redex: redex.to_string(),
            qubits_before: compiled.code.n,
            qubits_after: after.code.n,
            correction: verify_correction(&corr, tol),
            shift: hamiltonian_shift(&corr),
            wires_after: wires_ok(&after),
        });
    }
    let mut chain: Vec<Correction> = Vec::new();
    let (mut cur, mut cur_c) = (net.clone(), compiled.clone());
    while let Some(redex) = find_redexes(&cur).into_iter().next() {
        let red = apply_reduction(&cur, &redex)?;
        let next = compile_net(&red.after, &OrderingChoice::Linear)?;
        chain.push(reduction_correction(&red, &cur_c, &next)?);
        cur = red.after;
        cur_c = next;
    }
    let normalization = if chain.len() >= 2 {
        let mut total = chain[0].clone();
        for t in &chain[1..] {
            total = total.compose(t)?;
        }
        Some(CompositeRecord {
            steps: chain.len(),
            correction: verify_correction(&total, tol),
            shift: hamiltonian_shift(&total),
            composite: composite_report(&total, &chain[0]),
        })
    } else {
        None
    };
    Ok(NetRecord {
        qubits: compiled.code.n,
        paths: compiled.paths.as_ref().map_or(0, |p| p.len()),
        wires: wires_ok(&compiled),
        steps,
        normalization,
    })
}
