//! Command-line front end. `run` executes one command and writes its report;
//! the binary only parses arguments and exits with the returned status.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for
//! usage and parse errors, 3 for I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::compiler::{
    codespace_report, compile_net, hamiltonian, spectrum, wire_decomposition, CompileError, CompiledNet,
    OrderingChoice,
};
use crate::correction::{code_fidelity, hamiltonian_shift, reduction_correction, verify_correction, CorrectionError};
use crate::generate::{check_net, random_nets, FuzzError, GenConfig};
use crate::linalg::{dump_matrix, dump_vector, DEFAULT_DENSE_LIMIT, DEFAULT_TOLERANCE, MAX_DENSE_LIMIT};
use crate::majorana::{majorana_check, MajoranaError};
use crate::net::{
    apply_reduction, atom_pairings, find_redexes, parse_net, persistent_paths, validate, NetError, ProofStructure,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: NetError },
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Correction(#[from] CorrectionError),
    #[error(transparent)]
    Majorana(#[from] MajoranaError),
    #[error(transparent)]
    Fuzz(#[from] FuzzError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Compile(CompileError::Dense(_)) => EXIT_USAGE,
            _ => EXIT_CHECK,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingArg {
    Linear,
    Declaration,
}

#[derive(Parser, Debug)]
#[command(name = "pnqec", version, about = "Proof nets to stabilizer codes, with certified cut elimination")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Qubit ordering used for compilation.
    #[arg(long, global = true, value_enum, default_value = "linear")]
    pub ordering: OrderingArg,
    /// Largest register handled with dense matrices; for `fuzz`, the largest generated net.
    #[arg(long, global = true)]
    pub max_qubits: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Directory for plain-text dumps of vectors and matrices.
    #[arg(long, global = true)]
    pub dump: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check a proof structure against the correctness criterion.
    Validate { net: PathBuf },
    /// List the persistent paths and their qubits.
    Paths { net: PathBuf },
    /// Compile to a stabilizer code.
    Compile { net: PathBuf },
    /// Compare the projector codespace with the ground space of H.
    Codespace { net: PathBuf },
    /// Spectrum of H = −Σ generators.
    Spectrum { net: PathBuf },
    /// Reduce one redex and write the reduct.
    Reduce {
        net: PathBuf,
        /// Index into the redex list (see `paths`/`compile` output order).
        #[arg(long, default_value_t = 0)]
        redex: usize,
        /// Where to write the reduced net; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build and check the correction for a reduction step.
    VerifyReduction {
        net: PathBuf,
        #[arg(long, default_value_t = 0)]
        redex: usize,
        /// Check every redex instead of one.
        #[arg(long)]
        all: bool,
    },
    /// Seeded random nets through every reduction check.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Majorana chain identities for a chain of the given length.
    MajoranaCheck {
        #[arg(long, default_value_t = 3)]
        length: usize,
    },
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub ordering: OrderingArg,
    pub dense_limit: usize,
    pub fuzz_qubits: usize,
    pub tolerance: f64,
    pub format: Format,
    pub dump: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, CliError> {
        let g = cli.global;
        if !(g.tolerance > 0.0) {
            return Err(CliError::Usage("--tolerance must be positive".into()));
        }
        if let Some(m) = g.max_qubits {
            if m > MAX_DENSE_LIMIT || m == 0 {
                return Err(CliError::Usage(format!("--max-qubits must be in 1..={MAX_DENSE_LIMIT}")));
            }
        }
        if let Command::MajoranaCheck { length } = cli.command {
            if !(2..=8).contains(&length) {
                return Err(CliError::Usage("--length must be in 2..=8".into()));
            }
        }
        Ok(RunConfig {
            command: cli.command,
            ordering: g.ordering,
            dense_limit: g.max_qubits.unwrap_or(DEFAULT_DENSE_LIMIT),
            fuzz_qubits: g.max_qubits.unwrap_or(12),
            tolerance: g.tolerance,
            format: g.format,
            dump: g.dump,
        })
    }

    fn choice(&self) -> OrderingChoice {
        match self.ordering {
            OrderingArg::Linear => OrderingChoice::Linear,
            OrderingArg::Declaration => OrderingChoice::Declaration,
        }
    }
}

/// One command's result.
pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn read_net(path: &Path) -> Result<ProofStructure, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_net(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn dump(cfg: &RunConfig, name: &str, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = &cfg.dump {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        write_file(&dir.join(name), contents)?;
    }
    Ok(())
}

fn qubit_label(c: &CompiledNet, q: usize) -> String {
    let qb = &c.pairing.qubits[q];
    format!("{}/{}", c.net.link(qb.link).id, qb.index)
}

fn compile(cfg: &RunConfig, net: &ProofStructure) -> Result<CompiledNet, CliError> {
    Ok(compile_net(net, &cfg.choice())?)
}

fn cmd_validate(net: &ProofStructure) -> Outcome {
    let report = validate(net);
    let mut text = String::new();
    for v in &report.violations {
        text += &format!("{}: {}\n", v.subject, v.message);
    }
    text += if report.is_valid() { "valid\n" } else { "invalid\n" };
    Outcome {
        ok: report.is_valid(),
        text,
        json: json!({
            "valid": report.is_valid(),
            "violations": report.violations.iter().map(|v| json!({"subject": v.subject, "message": v.message})).collect::<Vec<_>>(),
        }),
    }
}

fn cmd_paths(net: &ProofStructure) -> Result<Outcome, CliError> {
    let pairing = atom_pairings(net)?;
    let paths = persistent_paths(net, &pairing)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for (k, p) in paths.iter().enumerate() {
        let steps: Vec<String> = p
            .steps
            .iter()
            .map(|s| format!("{}/{}{}", net.edge(s.occ.edge).id, s.occ.pos, s.sign.symbol()))
            .collect();
        text += &format!("path {}: {} ({} qubits)\n", k + 1, steps.join(" "), p.qubits.len());
        items.push(json!({"steps": steps, "qubits": p.qubits}));
    }
    let covered: usize = paths.iter().map(|p| p.len() - 1).sum();
    let ok = covered == pairing.qubit_count();
    text += &format!("[{}] sum(N-1) = {} = n = {}\n", mark(ok), covered, pairing.qubit_count());
    Ok(Outcome {
        ok,
        text,
        json: json!({"paths": items, "covered": covered, "qubits": pairing.qubit_count()}),
    })
}

fn cmd_compile(cfg: &RunConfig, net: &ProofStructure) -> Result<Outcome, CliError> {
    let c = compile(cfg, net)?;
    let code = &c.code;
    let order: Vec<String> = code.ordering.order().iter().map(|&q| qubit_label(&c, q)).collect();
    let mut text = format!("qubits: {}\nordering ({:?}): {}\n", code.n, code.ordering.kind(), order.join(" "));
    let mut gens = Vec::new();
    for g in &code.generators {
        let label = format!("{}/{}", c.net.edge(g.edge).id, g.pos);
        text += &format!("  {label:<10} y={} i={} j={}  {}\n", g.sign.symbol(), g.i, g.j, g.pauli);
        gens.push(json!({"edge": label, "sign": g.sign, "i": g.i, "j": g.j, "pauli": g.pauli}));
    }
    let dim = code.codespace_dimension();
    text += &format!(
        "generators: {}\nrank: {}\ncodespace dimension: {}\n",
        code.generators.len(),
        code.group.independent_rank(),
        dim
    );
    let wires = c.paths.as_ref().map(|p| wire_decomposition(code, p));
    let wire_json = match &wires {
        Some(Ok(w)) => {
            let lens: Vec<String> = w.blocks.iter().map(|b| b.len.to_string()).collect();
            text += &format!("wire blocks: {}\n", lens.join(" "));
            json!(w)
        }
        Some(Err(e)) => {
            text += &format!("wire blocks: none ({e})\n");
            Value::Null
        }
        None => Value::Null,
    };
    Ok(Outcome {
        ok: true,
        text,
        json: json!({
            "qubits": code.n,
            "ordering": {"kind": code.ordering.kind(), "order": order},
            "generators": gens,
            "rank": code.group.independent_rank(),
            "codespace_dimension": dim.to_string(),
            "wires": wire_json,
        }),
    })
}

fn cmd_codespace(cfg: &RunConfig, net: &ProofStructure) -> Result<Outcome, CliError> {
    let c = compile(cfg, net)?;
    let (r, basis) = codespace_report(&c.code, cfg.dense_limit)?;
    let ok = r.consistent(cfg.tolerance);
    let text = format!(
        "qubits: {}\nrank: {}\ndimension (2^(n-rank)): {}\ndimension (projector): {}\nground energy: {:.12}\nground degeneracy: {}\nground/codespace fidelity: {:.15}\n[{}] codespace equals ground space\n",
        r.n, r.rank, r.dimension_from_rank, r.dimension_from_projector, r.ground_energy, r.ground_degeneracy,
        r.ground_fidelity, mark(ok)
    );
    for k in 0..basis.ncols() {
        dump(cfg, &format!("codespace_{k}.txt"), &dump_vector(&basis.column(k).into_owned()))?;
    }
    Ok(Outcome { ok, text, json: json!(r) })
}

fn cmd_spectrum(cfg: &RunConfig, net: &ProofStructure) -> Result<Outcome, CliError> {
    let c = compile(cfg, net)?;
    let h = hamiltonian(&c.code);
    let s = spectrum(&h, cfg.dense_limit)?;
    let mut text = format!("qubits: {}\n", c.code.n);
    for (v, m) in &s.distinct {
        text += &format!("  {v:>10.6}  x{m}\n");
    }
    text += &format!("ground energy: {:.12} (degeneracy {})\n", s.ground_energy(), s.ground_degeneracy());
    dump(cfg, "hamiltonian.txt", &dump_matrix(&h.dense(cfg.dense_limit)?))?;
    Ok(Outcome {
        ok: true,
        text,
        json: json!({"qubits": c.code.n, "distinct": s.distinct, "ground_energy": s.ground_energy(), "ground_degeneracy": s.ground_degeneracy()}),
    })
}

fn pick_redex(net: &ProofStructure, index: usize) -> Result<crate::net::Redex, CliError> {
    let redexes = find_redexes(net);
    if redexes.is_empty() {
        return Err(CliError::Usage("the net has no redex".into()));
    }
    redexes
        .get(index)
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("redex index {index} out of range (found {})", redexes.len())))
}

fn cmd_reduce(net: &ProofStructure, index: usize, output: Option<&Path>) -> Result<Outcome, CliError> {
    let redex = pick_redex(net, index)?;
    let red = apply_reduction(net, &redex)?;
    let reduced = red.after.to_net_text();
    let mut text = format!("{redex}\n");
    for (from, to) in red.edge_map_ids() {
        text += &format!("  {from} -> {to}\n");
    }
    match output {
        Some(p) => {
            write_file(p, &reduced)?;
            text += &format!("wrote {}\n", p.display());
        }
        None => text += &reduced,
    }
    let mut j = red.to_json();
    j["net"] = Value::String(reduced);
    Ok(Outcome { ok: true, text, json: j })
}

fn verify_one(cfg: &RunConfig, net: &ProofStructure, redex: crate::net::Redex) -> Result<(bool, String, Value), CliError> {
    let red = apply_reduction(net, &redex)?;
    let before = compile(cfg, net)?;
    let after = compile(cfg, &red.after)?;
    let corr = reduction_correction(&red, &before, &after)?;
    let r = verify_correction(&corr, cfg.tolerance);
    let shift = hamiltonian_shift(&corr);
    let fidelity = code_fidelity(&corr);
    let shift_ok = shift.deviation <= cfg.tolerance;
    let fid_ok = fidelity >= 1.0 - cfg.tolerance;
    let names = |idx: &[usize]| idx.iter().map(|&i| corr.source_labels[i].clone()).collect::<Vec<_>>();
    let mut text = format!("{redex}\n  qubits: {} -> {}\n  C: {}\n", before.code.n, after.code.n, names(&corr.c).join(" "));
    let lines = [
        (r.isometry_ok(), format!("isometry T*T = I (max deviation {:.3e})", r.isometry_deviation)),
        (r.invariance_ok(), format!("image of T is C-invariant (max deviation {:.3e})", r.invariance_deviation)),
        (
            r.dimension_ok(),
            format!("dim H^C = {} = 2^{}", r.invariant_dimension, corr.isometry.cols),
        ),
        (r.intertwine_ok(), format!("g T = T nu(g) on D (max deviation {:.3e})", r.intertwine_deviation)),
        (r.nu_bijective, format!("nu: D -> G' bijective ({} generators)", r.d_size)),
        (shift_ok, format!("H T = T (H' - {}) (max deviation {:.3e})", corr.c.len(), shift.deviation)),
        (fid_ok, format!("T(Code') = Code (fidelity {fidelity:.15})")),
    ];
    for (ok, line) in &lines {
        text += &format!("  [{}] {line}\n", mark(*ok));
    }
    text += &format!("  unshifted H T - T H' deviation: {:.3e}\n", shift.unshifted_deviation);
    let ok = lines.iter().all(|l| l.0);
    let nu: Vec<Value> = corr
        .d
        .iter()
        .zip(&corr.nu)
        .map(|(&g, &h)| json!([corr.source_labels[g], corr.target_labels[h]]))
        .collect();
    let j = json!({
        "redex": redex,
        "ok": ok,
        "qubits": [before.code.n, after.code.n],
        "c": names(&corr.c),
        "nu": nu,
        "checks": r,
        "shift": shift,
        "code_fidelity": fidelity,
    });
    Ok((ok, text, j))
}

fn cmd_verify(cfg: &RunConfig, net: &ProofStructure, index: usize, all: bool) -> Result<Outcome, CliError> {
    let redexes = if all { find_redexes(net) } else { vec![pick_redex(net, index)?] };
    if redexes.is_empty() {
        return Err(CliError::Usage("the net has no redex".into()));
    }
    let (mut ok, mut text, mut items) = (true, String::new(), Vec::new());
    for r in redexes {
        let (o, t, j) = verify_one(cfg, net, r)?;
        ok &= o;
        text += &t;
        items.push(j);
    }
    Ok(Outcome {
        ok,
        text,
        json: json!({"reductions": items}),
    })
}

fn cmd_fuzz(cfg: &RunConfig, seed: u64, count: usize) -> Result<Outcome, CliError> {
    let gen = GenConfig {
        max_qubits: cfg.fuzz_qubits,
        ..GenConfig::default()
    };
    let nets = random_nets(seed, count, gen);
    let (mut passed, mut steps, mut text, mut items) = (0, 0, String::new(), Vec::new());
    for (k, net) in nets.iter().enumerate() {
        let rec = check_net(net, cfg.tolerance)?;
        let ok = rec.passed(cfg.tolerance);
        passed += ok as usize;
        steps += rec.steps.len();
        if !ok {
            text += &format!("net {k} FAILED\n{}", net.to_net_text());
        }
        items.push(json!({"index": k, "ok": ok, "record": rec}));
    }
    let ok = passed == nets.len();
    text += &format!(
        "[{}] {passed}/{} nets verified ({steps} reductions, seed {seed})\n",
        mark(ok),
        nets.len()
    );
    Ok(Outcome {
        ok,
        text,
        json: json!({"seed": seed, "count": count, "passed": passed, "reductions": steps, "nets": items}),
    })
}

fn cmd_majorana(cfg: &RunConfig, length: usize) -> Result<Outcome, CliError> {
    let r = majorana_check(length)?;
    let mut text = format!("chain length {length}\n");
    for (j, eq) in &r.stabilizers {
        text += &format!("  [{}] S_{j} = X_{j} X_{}\n", mark(*eq), j + 1);
    }
    text += &format!("  [{}] gamma_k self-adjoint\n", mark(r.majoranas_self_adjoint));
    text += &format!("  [{}] gamma_k^2 = 1\n", mark(r.majoranas_square_to_one));
    let fid = r.wire_fidelity >= 1.0 - cfg.tolerance;
    text += &format!("  [{}] ground space = wire codespace (fidelity {:.15})\n", mark(fid), r.wire_fidelity);
    text += "  spectrum of H_MC:";
    for (v, m) in &r.spectrum {
        text += &format!(" {v:.6}(x{m})");
    }
    text += "\n";
    text += &format!(
        "  hopping+pairing form equals H_MC: with +1 hopping {}, with -1 hopping {}\n",
        r.hopping_plus_equal, r.hopping_minus_equal
    );
    Ok(Outcome {
        ok: r.passed(cfg.tolerance),
        text,
        json: json!(r),
    })
}

fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::Validate { net } => Ok(cmd_validate(&read_net(net)?)),
        Command::Paths { net } => cmd_paths(&read_net(net)?),
        Command::Compile { net } => cmd_compile(cfg, &read_net(net)?),
        Command::Codespace { net } => cmd_codespace(cfg, &read_net(net)?),
        Command::Spectrum { net } => cmd_spectrum(cfg, &read_net(net)?),
        Command::Reduce { net, redex, output } => cmd_reduce(&read_net(net)?, *redex, output.as_deref()),
        Command::VerifyReduction { net, redex, all } => cmd_verify(cfg, &read_net(net)?, *redex, *all),
        Command::Fuzz { seed, count } => cmd_fuzz(cfg, *seed, *count),
        Command::MajoranaCheck { length } => cmd_majorana(cfg, *length),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Paths { .. } => "paths",
        Command::Compile { .. } => "compile",
        Command::Codespace { .. } => "codespace",
        Command::Spectrum { .. } => "spectrum",
        Command::Reduce { .. } => "reduce",
        Command::VerifyReduction { .. } => "verify-reduction",
        Command::Fuzz { .. } => "fuzz",
        Command::MajoranaCheck { .. } => "majorana-check",
    }
}

/// Runs one command, writing the report to `out` and errors to `err`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let name = command_name(&cfg.command);
    let (code, body) = match execute(cfg) {
        Ok(o) => {
            let code = if o.ok { EXIT_OK } else { EXIT_CHECK };
            let body = match cfg.format {
                Format::Text => o.text,
                Format::Json => {
                    let v = json!({"command": name, "ok": o.ok, "result": o.json});
                    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
                }
            };
            (code, body)
        }
        Err(e) => {
            let _ = writeln!(err, "pnqec {name}: {e}");
            let body = match cfg.format {
                Format::Text => String::new(),
                Format::Json => {
                    let v = json!({"command": name, "ok": false, "error": e.to_string()});
                    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
                }
            };
            (e.exit_code(), body)
        }
    };
    if out.write_all(body.as_bytes()).is_err() {
        return EXIT_IO;
    }
    code
}

/// Parses arguments and runs; the binary's whole body.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run(&cfg, out, err),
        Err(e) => {
            let _ = writeln!(err, "pnqec: {e}");
            e.exit_code()
        }
    }
}
