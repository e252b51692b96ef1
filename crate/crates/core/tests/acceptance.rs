//! Acceptance gate. Runs every criterion in order, prints one PASS/FAIL line
//! each and exits nonzero if any fails. Invariants are rechecked here with
//! small local oracles rather than the library's own verifier.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surgery_core::base::build_base_graph;
use surgery_core::code::{load_code, StabilizerCode};
use surgery_core::cycles::{
    greedy_partition, incidence_matrix, incremental_partition, static_decongestion, Cycle, CycleState, PartitionRule,
    RemovalRule,
};
use surgery_core::deform::{assemble, DeformedCode};
use surgery_core::expander::{
    conditioned_expander, congestion_aware_expander, required_groups, ExpanderConfig, TraceRow,
};
use surgery_core::gf2::{BitVec, Pauli, PauliVector};
use surgery_core::graph::{cheeger_bruteforce, lambda2, MultiGraph};
use surgery_core::lift::{cellulate, cellulate_cycle};
use surgery_core::pipeline::{compile, compile_joint, resolve_logical, synthesize, LogicalSelector, Mode, PipelineConfig};

const SUITE: [&str; 7] = [
    "surface:d=3",
    "surface:d=5",
    "surface:d=7",
    "color:d=5",
    "color:d=7",
    "bb:preset=72",
    "hp:rep=3",
];

/// Per (code, mode) pair: direct syntheses checked one by one.
const DIRECT_SEEDS: u64 = 8;
/// Per (code, mode) pair: trials of the full compile whose best is checked.
const COMPILE_TRIALS: usize = 20;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn x_logical() -> LogicalSelector {
    "0:X".parse().unwrap()
}

// ---------------------------------------------------------------------------
// Local GF(2) oracle on plain u64 words.

fn words(v: &PauliVector) -> Vec<u64> {
    let n = v.n();
    let mut w = vec![0u64; (2 * n).div_ceil(64)];
    for q in 0..n {
        let (x, z) = v.get(q).bits();
        if x {
            w[q / 64] |= 1 << (q % 64);
        }
        if z {
            w[(n + q) / 64] |= 1 << ((n + q) % 64);
        }
    }
    w
}

fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let bits = rows.first().map_or(0, |r| r.len() * 64);
    let mut r = 0;
    for col in 0..bits {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (r..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[w] & b != 0 {
                row.iter_mut().zip(&pivot).for_each(|(a, c)| *a ^= c);
            }
        }
        r += 1;
    }
    r
}

fn anticommute(a: &PauliVector, b: &PauliVector) -> bool {
    let mut odd = false;
    for q in 0..a.n() {
        let (ax, az) = a.get(q).bits();
        let (bx, bz) = b.get(q).bits();
        odd ^= (ax && bz) ^ (az && bx);
    }
    odd
}

fn violations(checks: &[PauliVector]) -> usize {
    let mut count = 0;
    for i in 0..checks.len() {
        for j in i + 1..checks.len() {
            count += anticommute(&checks[i], &checks[j]) as usize;
        }
    }
    count
}

fn promoted(checks: &[PauliVector], l: &PauliVector) -> bool {
    let base: Vec<Vec<u64>> = checks.iter().map(words).collect();
    let r = rank(base.clone());
    let mut with = base;
    with.push(words(l));
    rank(with) == r
}

/// Product of vertex checks is `l` on the original qubits, identity after.
fn vertex_product(code: &DeformedCode, l: &PauliVector) -> bool {
    let n = code.n_total();
    let mut acc = vec![0u64; (2 * n).div_ceil(64)];
    for v in code.vertex_checks() {
        acc.iter_mut().zip(words(v)).for_each(|(a, c)| *a ^= c);
    }
    acc == words(&l.embed(n, 0))
}

struct Check {
    violations: usize,
    promoted: bool,
    product: bool,
}

fn check(code: &DeformedCode, l: &PauliVector) -> Check {
    let checks = code.checks();
    Check {
        violations: violations(&checks),
        promoted: promoted(&checks, &l.embed(code.n_total(), 0)),
        product: vertex_product(code, l),
    }
}

// ---------------------------------------------------------------------------
// Shared compile sweep for criteria 1, 2, 3, 6, 7 and 14.

#[derive(Default)]
struct Sweep {
    runs: usize,
    violations: usize,
    not_promoted: Vec<String>,
    bad_product: Vec<String>,
    bad_rank: Vec<String>,
    over_degree: Vec<String>,
    infeasible_trials: usize,
    full_opt_trials: usize,
    traces: Vec<(String, Vec<TraceRow>)>,
    elapsed: Duration,
    errors: Vec<String>,
}

fn sweep() -> Sweep {
    let started = Instant::now();
    let mut s = Sweep::default();
    for spec in SUITE {
        let code = load_code(spec).unwrap();
        for mode in Mode::ALL {
            let tag = format!("{spec} {mode}");
            let cfg = PipelineConfig {
                trials: COMPILE_TRIALS,
                ..PipelineConfig::default().with_mode(mode)
            };
            let l = resolve_logical(&code, &x_logical(), cfg.seed).unwrap();
            for seed in 0..DIRECT_SEEDS {
                let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
                let syn = match synthesize(&code, &l, &cfg, &mut rng) {
                    Ok(syn) => syn,
                    Err(e) => {
                        s.errors.push(format!("{tag} seed {seed}: {e}"));
                        continue;
                    }
                };
                let deformed = assemble(&syn.input).unwrap();
                record(&mut s, &tag, &deformed, l.pauli(), cfg.dq, mode);
                if !syn.trace.is_empty() {
                    s.traces.push((format!("{tag} seed {seed}"), syn.trace.clone()));
                }
            }
            match compile(&code, &x_logical(), &cfg) {
                Ok(out) => {
                    record(&mut s, &tag, &out.best, l.pauli(), cfg.dq, mode);
                    if mode == Mode::FullOpt {
                        s.full_opt_trials += out.report.per_trial.len();
                        s.infeasible_trials += out
                            .report
                            .per_trial
                            .iter()
                            .filter(|t| t.status == surgery_core::pipeline::TrialStatus::Infeasible)
                            .count();
                    }
                }
                Err(e) => s.errors.push(format!("{tag} compile: {e}")),
            }
            rank_check(&mut s, &tag, &code, &l, &cfg);
        }
    }
    s.elapsed = started.elapsed();
    s
}

fn record(s: &mut Sweep, tag: &str, code: &DeformedCode, l: &PauliVector, dq: usize, mode: Mode) {
    let c = check(code, l);
    s.runs += 1;
    s.violations += c.violations;
    if !c.promoted {
        s.not_promoted.push(tag.to_string());
    }
    if !c.product {
        s.bad_product.push(tag.to_string());
    }
    if mode == Mode::FullOpt {
        let (deg, weight) = degrees(code);
        if deg > dq || weight > dq {
            s.over_degree.push(format!("{tag}: {deg}/{weight}"));
        }
    }
}

fn degrees(code: &DeformedCode) -> (usize, usize) {
    let mut deg = vec![0usize; code.n_total()];
    let mut weight = 0;
    for c in code.checks() {
        let support = c.support();
        weight = weight.max(support.len());
        for q in support {
            deg[q] += 1;
        }
    }
    (deg.into_iter().max().unwrap_or(0), weight)
}

/// Recomputes the cycle basis the way each mode does and compares the rank
/// of its incidence matrix with the circuit rank.
fn rank_check(s: &mut Sweep, tag: &str, code: &StabilizerCode, l: &surgery_core::code::LogicalOperator, cfg: &PipelineConfig) {
    let (g0, _, _) = build_base_graph(code, l).unwrap();
    if g0.num_vertices() < 2 {
        return;
    }
    let xcfg = cfg.expander();
    let rule = match cfg.mode {
        Mode::FullOpt => PartitionRule::LoadBounded(cfg.dq - cfg.reserve),
        _ => PartitionRule::EdgeDisjoint,
    };
    for seed in 0..4u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let built = match cfg.mode {
            Mode::Gauge | Mode::ExpOpt => conditioned_expander(&g0, &xcfg, &mut rng)
                .map(|g| {
                    let st = static_decongestion(&g, rule, cfg.retire, cfg.removal, &mut rng);
                    (g, st)
                }),
            Mode::CongOpt | Mode::FullOpt => {
                congestion_aware_expander(&g0, &xcfg, rule, cfg.retire, cfg.removal, &mut rng).map(|b| (b.graph, b.state))
            }
        };
        let Ok((g, st)) = built else { continue };
        let expected = g.num_edges() + components(&g) - g.num_vertices();
        let m = incidence_matrix(st.basis(), g.num_edges());
        let rows: Vec<Vec<u64>> = m
            .row_vecs()
            .iter()
            .map(|r| {
                let mut w = vec![0u64; g.num_edges().div_ceil(64).max(1)];
                for e in r.iter_ones() {
                    w[e / 64] |= 1 << (e % 64);
                }
                w
            })
            .collect();
        let r = rank(rows);
        if r != expected || st.basis().len() != expected {
            s.bad_rank.push(format!("{tag} seed {seed}: rank {r}, cycles {}, expected {expected}", st.basis().len()));
        }
    }
}

fn components(g: &MultiGraph) -> usize {
    let n = g.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for &(u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

// ---------------------------------------------------------------------------

fn c1(s: &Sweep) -> Outcome {
    let pass = s.violations == 0 && s.errors.is_empty() && s.elapsed < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "{} deformed codes, {} anticommuting pairs, {} errors {:?}, {:.1}s (limit 300s)",
            s.runs,
            s.violations,
            s.errors.len(),
            s.errors.iter().take(3).collect::<Vec<_>>(),
            s.elapsed.as_secs_f64()
        ),
    )
}

fn c2(s: &Sweep, joint: &Joint) -> Outcome {
    let pass = s.not_promoted.is_empty() && joint.checked.iter().all(|c| c.promoted);
    outcome(
        pass,
        format!(
            "{} single + {} joint codes, not promoted: {:?}",
            s.runs,
            joint.checked.len(),
            s.not_promoted
        ),
    )
}

fn c3(s: &Sweep, joint: &Joint) -> Outcome {
    let pass = s.bad_product.is_empty() && joint.checked.iter().all(|c| c.product);
    outcome(
        pass,
        format!(
            "{} single + {} joint codes, mismatched products: {:?}",
            s.runs,
            joint.checked.len(),
            s.bad_product
        ),
    )
}

/// Local brute force over all cuts.
fn cheeger_oracle(g: &MultiGraph) -> f64 {
    let n = g.num_vertices();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << n) - 1 {
        let cut = g
            .edges()
            .iter()
            .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
            .count();
        let size = mask.count_ones() as usize;
        best = best.min(cut as f64 / size.min(n - size) as f64);
    }
    best
}

fn random_connected(n: usize, rng: &mut ChaCha8Rng) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for v in 1..n {
        let u = rng.random_range(0..v);
        g.add_edge(u, v).unwrap();
    }
    let extra = rng.random_range(0..=n * 2);
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

fn c4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut fails = Vec::new();
    let mut tightest = f64::INFINITY;
    for i in 0..100 {
        let n = rng.random_range(2..=12);
        let g = random_connected(n, &mut rng);
        let l2 = lambda2(&g).unwrap();
        let h = cheeger_bruteforce(&g).unwrap();
        let h_local = cheeger_oracle(&g);
        tightest = tightest.min(h - l2 / 2.0);
        if (h - h_local).abs() > 1e-12 || l2 / 2.0 > h + 1e-9 {
            fails.push(format!("graph {i}: lambda2 {l2}, h {h}, oracle {h_local}"));
        }
    }
    outcome(
        fails.is_empty(),
        format!("100 graphs, smallest gap h - lambda2/2 = {tightest:.3e}, failures {fails:?}"),
    )
}

/// Local first-fit over edge sets.
fn first_fit(cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    for c in cycles {
        let k = match groups.iter().position(|g| c.iter().all(|e| !g.contains(e))) {
            Some(k) => k,
            None => {
                groups.push(Vec::new());
                groups.len() - 1
            }
        };
        groups[k].extend(c);
        out.push(k);
    }
    out
}

fn c5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut fails = 0;
    let mut max_t = 0;
    for _ in 0..100 {
        let edges = rng.random_range(8..80);
        let g = MultiGraph::from_edges(2, &vec![(0, 1); edges]).unwrap();
        let count = rng.random_range(1..=200);
        let mut all: Vec<usize> = (0..edges).collect();
        let lists: Vec<Vec<usize>> = (0..count)
            .map(|_| {
                let len = rng.random_range(2..=8.min(edges));
                all.shuffle(&mut rng);
                all[..len].to_vec()
            })
            .collect();
        let mut state = CycleState::new(&g, PartitionRule::EdgeDisjoint, RemovalRule::LeastLoaded);
        for c in &lists {
            let cycle = Cycle {
                vertices: vec![0; c.len()],
                edges: c.clone(),
            };
            incremental_partition(&mut state, cycle).unwrap();
        }
        let replay = state.group_of().to_vec();
        max_t = max_t.max(state.t());
        if replay != greedy_partition(&lists) || replay != first_fit(&lists) {
            fails += 1;
        }
    }
    outcome(fails == 0, format!("100 sequences, up to {max_t} groups, {fails} mismatches"))
}

fn c6(s: &Sweep) -> Outcome {
    outcome(
        s.bad_rank.is_empty(),
        format!("{} codes x 4 modes x 4 seeds, mismatches {:?}", SUITE.len(), s.bad_rank),
    )
}

fn c7(s: &Sweep, joint: &Joint, large: &Large) -> Outcome {
    let mut over = s.over_degree.clone();
    if joint.full_degrees.0 > 12 || joint.full_degrees.1 > 12 {
        over.push(format!("joint {:?}", joint.full_degrees));
    }
    if large.degrees.0 > 12 || large.degrees.1 > 12 {
        over.push(format!("surface-21 {:?}", large.degrees));
    }
    outcome(
        over.is_empty(),
        format!(
            "every full-opt result within 12 ({} of {} full-opt trials rejected as infeasible), over: {over:?}",
            s.infeasible_trials, s.full_opt_trials
        ),
    )
}

fn c8() -> Outcome {
    let six = cellulate(8, 3).unwrap().len();
    let two = cellulate(8, 5).unwrap().len();
    let mut bad = Vec::new();
    for len in 3..=20 {
        let mut g = MultiGraph::new(len);
        for v in 0..len {
            g.add_edge(v, (v + 1) % len).unwrap();
        }
        let cycle = Cycle {
            vertices: (0..len).collect(),
            edges: (0..len).collect(),
        };
        for dc in 3..=12 {
            let mut h = g.clone();
            let faces = cellulate_cycle(&mut h, &cycle, dc).unwrap();
            let mut sum = BitVec::zeros(h.num_edges());
            for f in &faces {
                sum.xor_assign(&f.indicator(h.num_edges()));
            }
            let target = BitVec::from_indices(h.num_edges(), 0..len);
            let expected_faces = if len <= dc { 1 } else { (len - 2).div_ceil(dc - 2) };
            if sum != target || faces.len() != expected_faces || faces.iter().any(|f| f.len() > dc) {
                bad.push((len, dc));
            }
        }
    }
    outcome(
        six == 6 && two == 2 && bad.is_empty(),
        format!("L=8: dc=3 -> {six} faces, dc=5 -> {two} faces; 180 (L, dc) sums, bad {bad:?}"),
    )
}

struct Table {
    full: usize,
    gauge: usize,
    elapsed: Duration,
}

fn run_table() -> Table {
    let code = load_code("bb:preset=72").unwrap();
    let started = Instant::now();
    let full = compile(&code, &x_logical(), &PipelineConfig::default()).unwrap();
    let gauge = compile(&code, &x_logical(), &PipelineConfig::default().with_mode(Mode::Gauge)).unwrap();
    Table {
        full: full.report.best.qubits,
        gauge: gauge.report.best.qubits,
        elapsed: started.elapsed(),
    }
}

fn c9(t: &Table) -> Outcome {
    let reduction = 1.0 - t.full as f64 / t.gauge as f64;
    let pass = t.full <= 20
        && (60..=140).contains(&t.gauge)
        && reduction >= 0.60
        && t.elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "full-opt {} qubits (limit 20), gauge {} (band 60..140), reduction {:.0}% (limit 60%), {:.1}s (limit 60s)",
            t.full,
            t.gauge,
            100.0 * reduction,
            t.elapsed.as_secs_f64()
        ),
    )
}

struct Joint {
    full: usize,
    gauge: usize,
    full_degrees: (usize, usize),
    checked: Vec<Check>,
    violations: usize,
    elapsed: Duration,
}

fn run_joint() -> Joint {
    let a = load_code("bb:preset=72").unwrap();
    let b = load_code("surface:d=5").unwrap();
    let started = Instant::now();
    let full = compile_joint(&a, &x_logical(), &b, &x_logical(), &PipelineConfig::default()).unwrap();
    let gauge = compile_joint(&a, &x_logical(), &b, &x_logical(), &PipelineConfig::default().with_mode(Mode::Gauge)).unwrap();
    let elapsed = started.elapsed();
    let mut checked = Vec::new();
    let mut total = 0;
    for out in [&full, &gauge] {
        let l: PauliVector = out.report.report.logical.parse().unwrap();
        let c = check(&out.best, &l);
        total += c.violations;
        checked.push(c);
    }
    Joint {
        full: full.report.report.best.qubits,
        gauge: gauge.report.report.best.qubits,
        full_degrees: degrees(&full.best),
        checked,
        violations: total,
        elapsed,
    }
}

fn c10(j: &Joint) -> Outcome {
    let reduction = 1.0 - j.full as f64 / j.gauge as f64;
    let pass = j.full <= 55 && reduction >= 0.60 && j.violations == 0 && j.elapsed < Duration::from_secs(180);
    outcome(
        pass,
        format!(
            "full-opt {} qubits (limit 55), gauge {}, reduction {:.0}% (limit 60%), {} anticommuting pairs, {:.1}s (limit 180s)",
            j.full,
            j.gauge,
            100.0 * reduction,
            j.violations,
            j.elapsed.as_secs_f64()
        ),
    )
}

fn single(n: usize, q: usize, p: Pauli) -> PauliVector {
    let mut v = PauliVector::identity(n);
    v.set(q, p);
    v
}

fn c11() -> Outcome {
    let code = load_code("surface:d=3").unwrap();
    let mut found = Vec::new();
    let mut sizes = Vec::new();
    for mode in Mode::ALL {
        let out = compile(&code, &x_logical(), &PipelineConfig::default().with_mode(mode)).unwrap();
        let checks = out.best.checks();
        let n = out.best.n_total();
        sizes.push(n);
        let rows: Vec<Vec<u64>> = checks.iter().map(words).collect();
        let r = rank(rows.clone());
        let paulis = [Pauli::X, Pauli::Y, Pauli::Z];
        let mut candidates: Vec<PauliVector> = Vec::new();
        for q in 0..n {
            for p in paulis {
                candidates.push(single(n, q, p));
            }
        }
        for q1 in 0..n {
            for q2 in q1 + 1..n {
                for p1 in paulis {
                    for p2 in paulis {
                        let mut v = single(n, q1, p1);
                        v.set(q2, p2);
                        candidates.push(v);
                    }
                }
            }
        }
        for v in candidates {
            if checks.iter().any(|c| anticommute(c, &v)) {
                continue;
            }
            let mut with = rows.clone();
            with.push(words(&v));
            if rank(with) > r {
                found.push(format!("{mode}: {v}"));
                break;
            }
        }
    }
    outcome(
        found.is_empty(),
        format!("4 modes, {sizes:?} qubits, weight 1-2 logicals found: {found:?}"),
    )
}

fn c12() -> Outcome {
    let g = MultiGraph::new(64);
    let cfg = ExpanderConfig {
        beta: 0.34,
        tau_iterations: 10,
        ..ExpanderConfig::default()
    };
    let mut ok = 0;
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Ok(h) = conditioned_expander(&g, &cfg, &mut rng) {
            if lambda2(&h).unwrap() >= 0.68 {
                ok += 1;
            }
        }
    }
    outcome(ok >= 95, format!("{ok}/100 seeds reach lambda2 >= 0.68 within 10 layers (limit 95)"))
}

struct Large {
    qubits: usize,
    degrees: (usize, usize),
    violations: usize,
    elapsed: Duration,
}

fn run_large() -> Large {
    let code = load_code("surface:d=21").unwrap();
    let cfg = PipelineConfig {
        trials: 1,
        ..PipelineConfig::default()
    };
    let started = Instant::now();
    let out = compile(&code, &x_logical(), &cfg).unwrap();
    let elapsed = started.elapsed();
    let l: PauliVector = out.report.logical.parse().unwrap();
    Large {
        qubits: out.report.best.qubits,
        degrees: degrees(&out.best),
        violations: check(&out.best, &l).violations,
        elapsed,
    }
}

fn c13(l: &Large) -> Outcome {
    let pass = l.elapsed < Duration::from_secs(30) && l.degrees.0 <= 12 && l.degrees.1 <= 12 && l.violations == 0;
    outcome(
        pass,
        format!(
            "{} ancilla qubits, degrees {}/{}, {} anticommuting pairs, {:.2}s (limit 30s)",
            l.qubits,
            l.degrees.0,
            l.degrees.1,
            l.violations,
            l.elapsed.as_secs_f64()
        ),
    )
}

fn c14(s: &Sweep) -> Outcome {
    let mut bad = Vec::new();
    let mut rows = 0;
    for (tag, trace) in &s.traces {
        rows += trace.len();
        for w in trace.windows(2) {
            let before = w[0].required.unwrap_or(usize::MAX);
            let after = w[1].required.unwrap_or(usize::MAX);
            let consistent = w[1].required == (w[1].lambda2 > 1e-12).then(|| required_groups(w[1].lambda2));
            if after > before || w[1].t < w[0].t || !consistent {
                bad.push(format!("{tag} step {}", w[1].step));
                break;
            }
        }
    }
    outcome(
        bad.is_empty() && !s.traces.is_empty(),
        format!("{} traces, {rows} rows, violations {bad:?}", s.traces.len()),
    )
}

fn main() -> ExitCode {
    let started = Instant::now();
    let s = sweep();
    let joint = run_joint();
    let table = run_table();
    let large = run_large();
    let results = [
        ("commutation soundness", c1(&s)),
        ("logical promotion", c2(&s, &joint)),
        ("vertex-check product", c3(&s, &joint)),
        ("spectral bound on cut expansion", c4()),
        ("incremental vs batch partition", c5()),
        ("cycle-basis rank", c6(&s)),
        ("full-opt degree bound", c7(&s, &joint, &large)),
        ("cellulation counts", c8()),
        ("bb-72 size reduction", c9(&table)),
        ("bb-72 + surface-5 joint", c10(&joint)),
        ("surface-3 distance", c11()),
        ("random matching expansion", c12()),
        ("surface-21 scalability", c13(&large)),
        ("balance monotonicity", c14(&s)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", i + 1, o.detail);
        failed += !o.pass as usize;
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
