//! End-to-end compilation: pick a logical, synthesize a measurement graph in
//! one of four modes, assemble and verify the deformed code, and keep the
//! smallest result over many seeded trials.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::base::build_base_graph;
use crate::code::{load_code, logical_basis, reduce_weight, LogicalKind, LogicalOperator, StabilizerCode};
use crate::cycles::{greedy_partition, static_decongestion, CycleState, PartitionRule, RemovalRule};
use crate::deform::{assemble, join_sides, verify, AssemblyInput, DeformedCode, Metrics, VerifyReport};
use crate::error::{Error, Result};
use crate::expander::{
    conditioned_expander, congestion_aware_expander, random_regular_expander, ExpanderConfig,
    TraceRow,
};
use crate::gf2::PauliVector;
use crate::graph::{lambda2, MultiGraph};
use crate::lift::{choose_layers, lift, LayerRule};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Independent random 3-regular expander on the ports, fixed layer count.
    Gauge,
    /// Expander grown from the matching graph, fixed layer count.
    ExpOpt,
    /// Expansion balanced against edge-disjoint cycle groups.
    CongOpt,
    /// Balanced, with load-bounded groups and large faces.
    FullOpt,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Gauge, Mode::ExpOpt, Mode::CongOpt, Mode::FullOpt];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Gauge => "gauge",
            Mode::ExpOpt => "exp-opt",
            Mode::CongOpt => "cong-opt",
            Mode::FullOpt => "full-opt",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::param(format!("unknown mode `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub mode: Mode,
    pub beta: f64,
    /// Degree cap for full-opt results.
    pub dq: usize,
    /// Largest face in full-opt.
    pub dc: usize,
    pub trials: usize,
    pub seed: u64,
    pub tau_iterations: usize,
    pub tau_reset: usize,
    /// Per-edge load kept free for vertex checks, squares and dressings;
    /// full-opt groups allow `dq - reserve` cycles per edge.
    pub reserve: usize,
    /// Edge retired per cycle during static decongestion.
    pub retire: RemovalRule,
    /// Forest edge swapped out for each new cycle during synthesis.
    pub removal: RemovalRule,
    /// Cut product squares into two triangles when faces are triangles.
    pub split_squares: bool,
    /// Degree of the independent expander in gauge mode.
    pub gauge_degree: usize,
    /// Exhaustive search for logicals below this weight on the best result.
    pub distance_check: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            mode: Mode::FullOpt,
            beta: 0.34,
            dq: 12,
            dc: 12,
            trials: 100,
            seed: 0,
            tau_iterations: 20,
            tau_reset: 25,
            reserve: 4,
            retire: RemovalRule::MostLoaded,
            removal: RemovalRule::LeastLoaded,
            split_squares: false,
            gauge_degree: 3,
            distance_check: None,
        }
    }
}

impl PipelineConfig {
    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.expander().validate()?;
        if self.dc < 3 {
            return Err(Error::param(format!("dc must be at least 3, got {}", self.dc)));
        }
        if self.dq <= self.reserve {
            return Err(Error::param(format!(
                "dq ({}) must exceed the reserve ({})",
                self.dq, self.reserve
            )));
        }
        if self.gauge_degree == 0 {
            return Err(Error::param("gauge expander degree must be at least 1"));
        }
        Ok(())
    }

    pub fn expander(&self) -> ExpanderConfig {
        ExpanderConfig {
            beta: self.beta,
            tau_iterations: self.tau_iterations,
            tau_reset: self.tau_reset,
            trials: self.trials,
            seed: self.seed,
        }
    }

    /// Face size used by the mode.
    pub fn face_size(&self) -> usize {
        match self.mode {
            Mode::FullOpt => self.dc,
            _ => 3,
        }
    }

    fn partition_rule(&self) -> PartitionRule {
        match self.mode {
            Mode::FullOpt if self.dq - self.reserve > 1 => PartitionRule::LoadBounded(self.dq - self.reserve),
            _ => PartitionRule::EdgeDisjoint,
        }
    }
}

/// Which logical to measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogicalSelector {
    /// Member of the computed logical basis.
    Basis { index: usize, kind: LogicalKind },
    Explicit(PauliVector),
}

impl FromStr for LogicalSelector {
    type Err = Error;

    /// `3:X`, `0:z`, or `pauli:XXIZ...`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(p) = s.strip_prefix("pauli:") {
            return Ok(LogicalSelector::Explicit(p.parse()?));
        }
        let (idx, kind) = s
            .split_once(':')
            .ok_or_else(|| Error::param(format!("logical selector `{s}` needs `index:X|Z` or `pauli:...`")))?;
        let index = idx
            .trim()
            .parse()
            .map_err(|e| Error::param(format!("bad logical index `{idx}`: {e}")))?;
        let kind = match kind.trim() {
            "X" | "x" => LogicalKind::X,
            "Z" | "z" => LogicalKind::Z,
            other => return Err(Error::param(format!("logical kind must be X or Z, got `{other}`"))),
        };
        Ok(LogicalSelector::Basis { index, kind })
    }
}

impl fmt::Display for LogicalSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicalSelector::Basis { index, kind } => write!(f, "{index}:{kind:?}"),
            LogicalSelector::Explicit(p) => write!(f, "pauli:{p}"),
        }
    }
}

const SELECTION_STREAM: u64 = u64::MAX;

/// Resolves a selector into a logical operator. Basis members are passed
/// through weight reduction first.
pub fn resolve_logical(code: &StabilizerCode, sel: &LogicalSelector, seed: u64) -> Result<LogicalOperator> {
    match sel {
        LogicalSelector::Explicit(p) => LogicalOperator::checked(code, p.clone(), None),
        LogicalSelector::Basis { index, kind } => {
            let basis = logical_basis(code);
            let (x, z) = basis.get(*index).cloned().ok_or_else(|| {
                Error::param(format!("logical index {index} out of range, code has k = {}", basis.len()))
            })?;
            let p = match kind {
                LogicalKind::X => x,
                LogicalKind::Z => z,
            };
            let l = LogicalOperator::new(p, Some((*index, *kind)));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(SELECTION_STREAM);
            reduce_weight(&l, code, 4, &mut rng)
        }
    }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One side of a compilation before assembly.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub input: AssemblyInput,
    pub levels: usize,
    pub groups: usize,
    pub lambda2: f64,
    pub congestion: usize,
    pub matching_edges: usize,
    pub graph_edges: usize,
    pub chords: usize,
    pub trace: Vec<TraceRow>,
}

fn check_basis(graph: &MultiGraph, state: &CycleState) -> Result<()> {
    let rank = state.basis_rank(graph.num_edges());
    if rank != state.basis().len() || rank != graph.circuit_rank() {
        return Err(Error::invariant(format!(
            "cycle basis rank {rank} with {} cycles, circuit rank {}",
            state.basis().len(),
            graph.circuit_rank()
        )));
    }
    if cfg!(debug_assertions) && state.rule() == PartitionRule::EdgeDisjoint {
        let lists: Vec<Vec<usize>> = state.basis().iter().map(|c| c.edges.clone()).collect();
        if greedy_partition(&lists) != state.group_of() {
            return Err(Error::invariant("incremental partition differs from batch greedy"));
        }
    }
    state.validate_partition()
}

/// Builds the measurement graph and faces for `l` with the mode in `cfg`.
pub fn synthesize(
    code: &StabilizerCode,
    l: &LogicalOperator,
    cfg: &PipelineConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Synthesis> {
    let (g0, ports, plan) = build_base_graph(code, l)?;
    let matching_edges = g0.num_edges();
    let xcfg = cfg.expander();
    let rule = cfg.partition_rule();
    let (graph, state, layer_rule, trace) = if g0.num_vertices() < 2 {
        let state = static_decongestion(&g0, rule, cfg.retire, cfg.removal, rng);
        (g0, state, LayerRule::Balanced, Vec::new())
    } else {
        match cfg.mode {
            Mode::Gauge => {
                let h = random_regular_expander(g0.num_vertices(), cfg.gauge_degree, 2.0 * cfg.beta, 1000, rng)?;
                let mut g = g0;
                for &(u, v) in h.edges() {
                    g.add_edge(u, v)?;
                }
                let state = static_decongestion(&g, rule, cfg.retire, cfg.removal, rng);
                (g, state, LayerRule::Baseline, Vec::new())
            }
            Mode::ExpOpt => {
                let g = conditioned_expander(&g0, &xcfg, rng)?;
                let state = static_decongestion(&g, rule, cfg.retire, cfg.removal, rng);
                (g, state, LayerRule::Baseline, Vec::new())
            }
            Mode::CongOpt | Mode::FullOpt => {
                let out = congestion_aware_expander(&g0, &xcfg, rule, cfg.retire, cfg.removal, rng)?;
                (out.graph, out.state, LayerRule::Balanced, out.trace)
            }
        }
    };
    check_basis(&graph, &state)?;
    let levels = choose_layers(state.t(), cfg.beta, layer_rule)?;
    let lifted = lift(&graph, &state, levels, cfg.face_size(), cfg.split_squares)?;
    let nv = graph.num_vertices();
    let port_qubit = (0..lifted.graph.num_vertices())
        .map(|v| (v < nv).then(|| ports.qubit(v)))
        .collect();
    let lambda2 = if nv >= 2 { lambda2(&graph)? } else { 0.0 };
    Ok(Synthesis {
        input: AssemblyInput {
            code: code.clone(),
            logical: l.pauli().clone(),
            port_qubit,
            dressing: plan.edges_by_stabilizer(code.num_generators()),
            faces: lifted.faces,
            graph: lifted.graph,
        },
        levels,
        groups: state.t(),
        lambda2,
        congestion: state.congestion(),
        matching_edges,
        graph_edges: graph.num_edges(),
        chords: lifted.chords,
        trace,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialStatus {
    Ok,
    /// Verified, but degrees exceed the cap in full-opt.
    Infeasible,
    /// The expander target was not reached within the layer budget.
    Unreachable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub status: TrialStatus,
    pub qubits: usize,
    pub checks: usize,
    pub max_qubit_degree: usize,
    pub max_check_weight: usize,
    pub levels: usize,
    pub groups: usize,
    pub lambda2: f64,
    pub congestion: usize,
    pub graph_edges: usize,
    pub chords: usize,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BestSummary {
    pub trial: usize,
    pub qubits: usize,
    pub checks: usize,
    pub deg_q: usize,
    pub deg_c: usize,
    pub levels: usize,
    pub groups: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompileReport {
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub logical: String,
    pub logical_weight: usize,
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    pub config: PipelineConfig,
    pub best: BestSummary,
    pub verify: VerifyReport,
    pub per_trial: Vec<TrialRecord>,
    pub wall_ms: f64,
}

impl CompileReport {
    /// Copy with every timing field zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.wall_ms = 0.0;
        for t in &mut r.per_trial {
            t.wall_ms = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Flat CSV with one row per trial.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for t in &self.per_trial {
            w.serialize(t)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Serde(e.to_string()))?)
            .map_err(|e| Error::Serde(e.to_string()))
    }
}

/// Best deformed code with its report and the trace of the best trial.
#[derive(Clone, Debug)]
pub struct CompileOutcome {
    pub best: DeformedCode,
    pub report: CompileReport,
    pub trace: Vec<TraceRow>,
}

struct TrialOutcome {
    record: TrialRecord,
    code: Option<DeformedCode>,
    trace: Vec<TraceRow>,
    verify: Option<VerifyReport>,
}

fn unreachable_record(trial: usize, wall_ms: f64) -> TrialOutcome {
    TrialOutcome {
        record: TrialRecord {
            trial,
            status: TrialStatus::Unreachable,
            qubits: 0,
            checks: 0,
            max_qubit_degree: 0,
            max_check_weight: 0,
            levels: 0,
            groups: 0,
            lambda2: 0.0,
            congestion: 0,
            graph_edges: 0,
            chords: 0,
            wall_ms,
        },
        code: None,
        trace: Vec::new(),
        verify: None,
    }
}

fn finish_trial(
    trial: usize,
    syn: &Synthesis,
    deformed: DeformedCode,
    k_original: usize,
    cfg: &PipelineConfig,
    started: Instant,
) -> Result<TrialOutcome> {
    let report = verify(&deformed, k_original, None)?;
    if let Some(e) = report.failure() {
        return Err(Error::Verification(format!("trial {trial}: {e}")));
    }
    let m = deformed.metrics();
    let status = if cfg.mode == Mode::FullOpt && (m.max_qubit_degree > cfg.dq || m.max_check_weight > cfg.dq) {
        TrialStatus::Infeasible
    } else {
        TrialStatus::Ok
    };
    Ok(TrialOutcome {
        record: TrialRecord {
            trial,
            status,
            qubits: m.ancilla_qubits,
            checks: m.ancilla_checks,
            max_qubit_degree: m.max_qubit_degree,
            max_check_weight: m.max_check_weight,
            levels: syn.levels,
            groups: syn.groups,
            lambda2: syn.lambda2,
            congestion: syn.congestion,
            graph_edges: syn.graph_edges,
            chords: syn.chords,
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        },
        code: Some(deformed),
        trace: syn.trace.clone(),
        verify: Some(report),
    })
}

/// Picks the smallest successful trial by (qubits, checks, trial index).
fn select_best(outcomes: &[TrialOutcome]) -> Result<usize> {
    outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.record.status == TrialStatus::Ok)
        .min_by_key(|(_, o)| (o.record.qubits, o.record.checks, o.record.trial))
        .map(|(i, _)| i)
        .ok_or_else(|| {
            let unreachable = outcomes.iter().filter(|o| o.record.status == TrialStatus::Unreachable).count();
            if unreachable == outcomes.len() {
                Error::ExpansionUnreachable {
                    best_lambda2: 0.0,
                }
            } else {
                Error::Verification(format!(
                    "no trial met the degree cap ({} of {} exceeded it)",
                    outcomes.len() - unreachable,
                    outcomes.len()
                ))
            }
        })
}

fn run_trials(cfg: &PipelineConfig, f: impl Fn(usize) -> Result<TrialOutcome> + Sync + Send) -> Result<Vec<TrialOutcome>> {
    par::map_indexed(cfg.trials, |t| {
        let started = Instant::now();
        match f(t) {
            Err(Error::ExpansionUnreachable { .. }) => Ok(unreachable_record(t, started.elapsed().as_secs_f64() * 1e3)),
            other => other,
        }
    })
    .into_iter()
    .collect()
}

fn summarize(best: &TrialRecord) -> BestSummary {
    BestSummary {
        trial: best.trial,
        qubits: best.qubits,
        checks: best.checks,
        deg_q: best.max_qubit_degree,
        deg_c: best.max_check_weight,
        levels: best.levels,
        groups: best.groups,
    }
}

fn final_verify(best: &DeformedCode, k_original: usize, check: Option<usize>, fallback: VerifyReport) -> Result<VerifyReport> {
    match check {
        None => Ok(fallback),
        Some(w) => {
            let r = verify(best, k_original, Some(w))?;
            match r.failure() {
                Some(e) => Err(e),
                None => Ok(r),
            }
        }
    }
}

/// Runs `cfg.trials` seeded syntheses, verifies each, and keeps the
/// smallest. Trial `i` draws from stream `i` of the seeded generator.
pub fn compile(code: &StabilizerCode, sel: &LogicalSelector, cfg: &PipelineConfig) -> Result<CompileOutcome> {
    cfg.validate()?;
    let started = Instant::now();
    let l = resolve_logical(code, sel, cfg.seed)?;
    let k = code.k();
    let mut outcomes = run_trials(cfg, |t| {
        let begun = Instant::now();
        let mut rng = trial_rng(cfg.seed, t as u64);
        let syn = synthesize(code, &l, cfg, &mut rng)?;
        let deformed = assemble(&syn.input)?;
        finish_trial(t, &syn, deformed, k, cfg, begun)
    })?;
    let i = select_best(&outcomes)?;
    let best = outcomes[i].code.take().expect("successful trial keeps its code");
    let trace = std::mem::take(&mut outcomes[i].trace);
    let verify = final_verify(&best, k, cfg.distance_check, outcomes[i].verify.take().expect("verified"))?;
    let report = CompileReport {
        code: code.name().to_string(),
        n: code.n(),
        k,
        logical: l.pauli().to_string(),
        logical_weight: l.weight(),
        mode: cfg.mode,
        seed: cfg.seed,
        trials: cfg.trials,
        config: cfg.clone(),
        best: summarize(&outcomes[i].record),
        verify,
        per_trial: outcomes.into_iter().map(|o| o.record).collect(),
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    Ok(CompileOutcome { best, report, trace })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JointReport {
    pub report: CompileReport,
    pub adapter_edges: usize,
    pub adapter_faces: usize,
    /// Degrees of the best trial with each side assembled on its own.
    pub without_adapter: Metrics,
    pub code_b: String,
    pub logical_b: String,
}

#[derive(Clone, Debug)]
pub struct JointOutcome {
    pub best: DeformedCode,
    pub report: JointReport,
}

/// Joint measurement of `L_A * L_B`. Each trial synthesizes side A from
/// stream `2i` and side B from stream `2i + 1`, then joins the sides with
/// `d = min(distance A, distance B)` adapter edges (declared distances,
/// falling back to logical weights).
pub fn compile_joint(
    code_a: &StabilizerCode,
    sel_a: &LogicalSelector,
    code_b: &StabilizerCode,
    sel_b: &LogicalSelector,
    cfg: &PipelineConfig,
) -> Result<JointOutcome> {
    cfg.validate()?;
    let started = Instant::now();
    let la = resolve_logical(code_a, sel_a, cfg.seed)?;
    let lb = resolve_logical(code_b, sel_b, cfg.seed)?;
    let d = code_a.declared_distance().unwrap_or(la.weight()).min(code_b.declared_distance().unwrap_or(lb.weight()));
    let k = code_a.k() + code_b.k();
    let per_side: Vec<std::sync::Mutex<Option<(Metrics, usize, usize)>>> =
        (0..cfg.trials).map(|_| std::sync::Mutex::new(None)).collect();
    let mut outcomes = run_trials(cfg, |t| {
        let begun = Instant::now();
        let sa = synthesize(code_a, &la, cfg, &mut trial_rng(cfg.seed, 2 * t as u64))?;
        let sb = synthesize(code_b, &lb, cfg, &mut trial_rng(cfg.seed, 2 * t as u64 + 1))?;
        let ma = assemble(&sa.input)?.metrics();
        let mb = assemble(&sb.input)?.metrics();
        let (joint, spec) = join_sides(&sa.input, &sb.input, d, cfg.face_size())?;
        let deformed = assemble(&joint)?;
        let syn = Synthesis {
            levels: sa.levels.max(sb.levels),
            groups: sa.groups.max(sb.groups),
            lambda2: sa.lambda2.min(sb.lambda2),
            congestion: sa.congestion.max(sb.congestion),
            matching_edges: sa.matching_edges + sb.matching_edges,
            graph_edges: sa.graph_edges + sb.graph_edges + spec.d,
            chords: joint.graph.num_edges() - sa.input.graph.num_edges() - sb.input.graph.num_edges() - spec.d
                + sa.chords
                + sb.chords,
            trace: Vec::new(),
            input: joint,
        };
        let separate = Metrics {
            ancilla_qubits: ma.ancilla_qubits + mb.ancilla_qubits,
            ancilla_checks: ma.ancilla_checks + mb.ancilla_checks,
            max_qubit_degree: ma.max_qubit_degree.max(mb.max_qubit_degree),
            max_check_weight: ma.max_check_weight.max(mb.max_check_weight),
        };
        *per_side[t].lock().expect("unpoisoned") = Some((separate, spec.edges.len(), spec.faces));
        finish_trial(t, &syn, deformed, k, cfg, begun)
    })?;
    let i = select_best(&outcomes)?;
    let best = outcomes[i].code.take().expect("successful trial keeps its code");
    let verify = final_verify(&best, k, cfg.distance_check, outcomes[i].verify.take().expect("verified"))?;
    let trial = outcomes[i].record.trial;
    let (without_adapter, adapter_edges, adapter_faces) =
        per_side[trial].lock().expect("unpoisoned").expect("successful trial records sides");
    let mut logical = la.pauli().embed(code_a.n() + code_b.n(), 0);
    logical.mul_assign(&lb.pauli().embed(code_a.n() + code_b.n(), code_a.n()));
    let report = CompileReport {
        code: format!("{}+{}", code_a.name(), code_b.name()),
        n: code_a.n() + code_b.n(),
        k,
        logical: logical.to_string(),
        logical_weight: logical.weight(),
        mode: cfg.mode,
        seed: cfg.seed,
        trials: cfg.trials,
        config: cfg.clone(),
        best: summarize(&outcomes[i].record),
        verify,
        per_trial: outcomes.into_iter().map(|o| o.record).collect(),
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    Ok(JointOutcome {
        best,
        report: JointReport {
            report,
            adapter_edges,
            adapter_faces,
            without_adapter,
            code_b: code_b.name().to_string(),
            logical_b: lb.pauli().to_string(),
        },
    })
}

/// Per-step trace as CSV: `step,lambda2,t,required,edges`.
pub fn trace_csv(trace: &[TraceRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in trace {
        w.serialize(row)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Serde(e.to_string()))?)
        .map_err(|e| Error::Serde(e.to_string()))
}

/// One entry of a benchmark suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub code: String,
    #[serde(default = "default_logical")]
    pub logical: String,
    #[serde(default = "default_modes")]
    pub modes: Vec<Mode>,
    pub trials: Option<usize>,
}

fn default_logical() -> String {
    "0:X".into()
}

fn default_modes() -> Vec<Mode> {
    Mode::ALL.to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    #[serde(rename = "row")]
    pub rows: Vec<SuiteRow>,
}

impl Suite {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::param(format!("suite file: {e}")))
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Suite::from_toml(&std::fs::read_to_string(path)?)
    }
}

/// One line of the results table: size, degrees and time for a code and
/// mode. Failed rows keep the error text and leave the numbers empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub code: String,
    pub logical: String,
    pub mode: Mode,
    pub qubits: Option<usize>,
    pub checks: Option<usize>,
    pub deg_q: Option<usize>,
    pub deg_c: Option<usize>,
    pub time_s: Option<f64>,
    pub error: Option<String>,
}

/// Runs every (row, mode) pair; errors are recorded and the suite goes on.
pub fn bench(suite: &Suite, base: &PipelineConfig) -> Vec<BenchRow> {
    let mut out = Vec::new();
    for row in &suite.rows {
        let loaded = load_code(&row.code).and_then(|c| Ok((c, row.logical.parse::<LogicalSelector>()?)));
        for &mode in &row.modes {
            let mut cfg = base.clone().with_mode(mode);
            if let Some(t) = row.trials {
                cfg.trials = t;
            }
            let result = match &loaded {
                Ok((code, sel)) => compile(code, sel, &cfg).map(|o| o.report),
                Err(e) => Err(Error::param(e.to_string())),
            };
            out.push(match result {
                Ok(r) => BenchRow {
                    code: row.code.clone(),
                    logical: row.logical.clone(),
                    mode,
                    qubits: Some(r.best.qubits),
                    checks: Some(r.best.checks),
                    deg_q: Some(r.best.deg_q),
                    deg_c: Some(r.best.deg_c),
                    time_s: Some(r.wall_ms / 1e3),
                    error: None,
                },
                Err(e) => BenchRow {
                    code: row.code.clone(),
                    logical: row.logical.clone(),
                    mode,
                    qubits: None,
                    checks: None,
                    deg_q: None,
                    deg_c: None,
                    time_s: None,
                    error: Some(e.to_string()),
                },
            });
        }
    }
    out
}

pub fn bench_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Serde(e.to_string()))?)
        .map_err(|e| Error::Serde(e.to_string()))
}
