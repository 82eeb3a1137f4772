//! The kernelization pipeline: the linear kernel for path-of-five families,
//! the quadratic kernel for families without beneficial sets, the general
//! polynomial kernel driven by strongly beneficial sets, and the dispatcher.

use crate::exact::{meds, EdgeSet};
use crate::graph::{ComponentView, Graph};
use crate::instance::ModInstance;
use crate::matching::{Bipartite, SaturationResult};
use crate::profile::{classify_family, HProfile, Profiler, Verdict};
use crate::{Caps, EdsError, Result};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleId {
    /// Delete modulator vertices that the auxiliary matching saturates.
    DropMatchedModulator,
    /// Attach a pendant to a modulator vertex forced into every solution.
    PinForcedModulator,
    /// Delete fully served components and pay their optimum out of k.
    DropServedComponents,
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    /// Vertex ids (in the input labeling) removed by this application.
    pub removed: Vec<usize>,
    /// Pendants added as (fresh vertex id, forced modulator vertex).
    pub added_pendants: Vec<(usize, usize)>,
    pub k_delta: i64,
}

#[derive(Debug, Clone)]
pub enum KernelOutcome {
    Reduced(ModInstance),
    /// k is large enough for the padding certificate: a minimum solution of
    /// G minus X plus one incident edge per modulator vertex.
    TrivialYes { witness: EdgeSet },
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub path: &'static str,
    pub outcome: KernelOutcome,
    pub rule_trace: Vec<RuleApplication>,
    pub size_before: (usize, usize),
    pub size_after: (usize, usize),
    /// Total optimum paid for deleted components; reduced.k = k - delta.
    pub budget_delta: i64,
    pub stats: BTreeMap<&'static str, usize>,
}

impl KernelReport {
    pub fn reduced(&self) -> Option<&ModInstance> {
        match &self.outcome {
            KernelOutcome::Reduced(inst) => Some(inst),
            KernelOutcome::TrivialYes { .. } => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let outcome = match &self.outcome {
            KernelOutcome::Reduced(inst) => serde_json::json!({
                "kind": "reduced",
                "instance": crate::instance::serialize_instance(inst, None),
                "k": inst.k,
                "modulator_size": inst.modulator.len(),
            }),
            KernelOutcome::TrivialYes { witness } => serde_json::json!({
                "kind": "trivial-yes",
                "witness": witness.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect::<Vec<_>>(),
            }),
        };
        serde_json::json!({
            "path": self.path,
            "outcome": outcome,
            "rule_trace": self.rule_trace,
            "size_before": self.size_before,
            "size_after": self.size_after,
            "budget_delta": self.budget_delta,
            "stats": self.stats,
        })
    }
}

// --- shared working state ----------------------------------------------------

struct Work<'a> {
    inst: &'a ModInstance,
    comps: Vec<ComponentView>,
    dead_vertices: BTreeSet<usize>,
    dead_comps: BTreeSet<usize>,
    pendants: Vec<(usize, usize)>,
    modulator: BTreeSet<usize>,
    k: i64,
    trace: Vec<RuleApplication>,
    stats: BTreeMap<&'static str, usize>,
}

impl<'a> Work<'a> {
    fn new(inst: &'a ModInstance) -> Self {
        Work {
            inst,
            comps: inst.components(),
            dead_vertices: BTreeSet::new(),
            dead_comps: BTreeSet::new(),
            pendants: Vec::new(),
            modulator: inst.modulator.iter().copied().collect(),
            k: inst.k,
            trace: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    fn drop_modulator(&mut self, removed: Vec<usize>) {
        for &v in &removed {
            self.modulator.remove(&v);
            self.dead_vertices.insert(v);
        }
        self.trace.push(RuleApplication {
            rule: RuleId::DropMatchedModulator,
            removed,
            added_pendants: Vec::new(),
            k_delta: 0,
        });
    }

    fn pin_forced(&mut self, forced: Vec<usize>) {
        let mut added = Vec::new();
        let mut next = self.inst.graph.n() + self.pendants.len();
        for &x in &forced {
            added.push((next, x));
            self.pendants.push((next, x));
            next += 1;
        }
        self.trace.push(RuleApplication {
            rule: RuleId::PinForcedModulator,
            removed: Vec::new(),
            added_pendants: added,
            k_delta: 0,
        });
    }

    fn drop_components(&mut self, comp_ids: Vec<usize>, caps: &Caps) -> Result<()> {
        let mut removed = Vec::new();
        let mut paid = 0i64;
        for &c in &comp_ids {
            self.dead_comps.insert(c);
            removed.extend(self.comps[c].vertices.iter().copied());
            paid += meds(&self.comps[c].local, caps)?.size as i64;
        }
        for &v in &removed {
            self.dead_vertices.insert(v);
        }
        self.k -= paid;
        self.trace.push(RuleApplication {
            rule: RuleId::DropServedComponents,
            removed,
            added_pendants: Vec::new(),
            k_delta: -paid,
        });
        Ok(())
    }

    fn finish(self, path: &'static str) -> KernelReport {
        let budget_delta = self.inst.k - self.k;
        let reduced = materialize(
            &self.inst.graph,
            &self.dead_vertices,
            &self.pendants,
            &self.modulator,
            self.k,
            self.inst.family.clone(),
        );
        let mut stats = self.stats;
        stats.insert(
            "components_after",
            self.comps.len() - self.dead_comps.len(),
        );
        stats.insert("modulator_after", reduced.modulator.len());
        KernelReport {
            path,
            outcome: KernelOutcome::Reduced(reduced),
            rule_trace: self.trace,
            size_before: (self.inst.graph.n(), self.inst.graph.m()),
            size_after: (0, 0), // fixed up by caller
            budget_delta,
            stats,
        }
    }
}

fn materialize(
    graph: &Graph,
    dead: &BTreeSet<usize>,
    pendants: &[(usize, usize)],
    modulator: &BTreeSet<usize>,
    k: i64,
    family: Vec<Graph>,
) -> ModInstance {
    let mut ids: Vec<usize> = (0..graph.n()).filter(|v| !dead.contains(v)).collect();
    ids.extend(pendants.iter().map(|&(p, _)| p));
    ids.sort_unstable();
    let mut new_id = HashMap::new();
    for (i, &v) in ids.iter().enumerate() {
        new_id.insert(v, i);
    }
    let mut edges = Vec::new();
    for (u, v) in graph.edges() {
        if !dead.contains(&u) && !dead.contains(&v) {
            edges.push((new_id[&u], new_id[&v]));
        }
    }
    for &(p, x) in pendants {
        edges.push((new_id[&p], new_id[&x]));
    }
    let new_graph = Graph::new(ids.len(), &edges).expect("materialized graph is simple");
    // pendants join the modulator so the reduced object stays a valid
    // instance over the same family
    let mut new_mod: Vec<usize> = modulator.iter().map(|v| new_id[v]).collect();
    new_mod.extend(pendants.iter().map(|&(p, _)| new_id[&p]));
    ModInstance::new(new_graph, k, new_mod, family).expect("materialized instance is valid")
}

/// Re-applies a recorded trace to the input instance; the result must equal
/// the report's reduced instance.
pub fn replay(inst: &ModInstance, trace: &[RuleApplication]) -> ModInstance {
    let mut dead = BTreeSet::new();
    let mut pendants = Vec::new();
    let mut modulator: BTreeSet<usize> = inst.modulator.iter().copied().collect();
    let mut k = inst.k;
    for step in trace {
        for &v in &step.removed {
            dead.insert(v);
            modulator.remove(&v);
        }
        pendants.extend(step.added_pendants.iter().copied());
        k += step.k_delta;
    }
    materialize(&inst.graph, &dead, &pendants, &modulator, k, inst.family.clone())
}

// --- padding certificate -----------------------------------------------------

/// When k >= MEDS(G-X) + |X|, a minimum solution of G-X plus one edge per
/// modulator vertex already dominates everything.
fn trivial_yes(inst: &ModInstance, comps: &[ComponentView], caps: &Caps) -> Result<Option<EdgeSet>> {
    let mut rest = 0i64;
    let mut witness: Vec<(usize, usize)> = Vec::new();
    for comp in comps {
        let w = meds(&comp.local, caps)?;
        rest += w.size as i64;
        witness.extend(
            w.witness
                .edges()
                .iter()
                .map(|&(u, v)| (comp.original_id(u), comp.original_id(v))),
        );
    }
    if inst.k - rest < inst.modulator.len() as i64 {
        return Ok(None);
    }
    for &x in &inst.modulator {
        if let Some(&y) = inst.graph.neighbors(x).first() {
            witness.push((x, y));
        }
    }
    Ok(Some(EdgeSet::new(witness)))
}

fn trivial_report(inst: &ModInstance, path: &'static str, witness: EdgeSet) -> KernelReport {
    KernelReport {
        path,
        outcome: KernelOutcome::TrivialYes { witness },
        rule_trace: Vec::new(),
        size_before: (inst.graph.n(), inst.graph.m()),
        size_after: (inst.graph.n(), inst.graph.m()),
        budget_delta: 0,
        stats: BTreeMap::new(),
    }
}

// --- path-of-five kernel -------------------------------------------------------

fn p5_middle(comp: &ComponentView) -> usize {
    // middle of a path on five vertices: distance two from a degree-one end
    let local = &comp.local;
    let end = (0..local.n()).find(|&v| local.degree(v) == 1).expect("path end");
    let mut dist = vec![usize::MAX; local.n()];
    dist[end] = 0;
    let mut queue = vec![end];
    while let Some(v) = queue.pop() {
        for &w in local.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push(w);
            }
        }
    }
    (0..local.n()).find(|&v| dist[v] == 2).expect("path middle")
}

/// Linear kernel for families consisting of the path on five vertices.
/// Builds the modulator-vs-component matching over non-middle adjacency, then
/// deletes the saturated modulator part and every component not tied to the
/// deficient part.
pub fn kernelize_p5(inst: &ModInstance, caps: &Caps) -> Result<KernelReport> {
    let p5 = Graph::path(5);
    if inst.family.len() != 1 || !inst.family[0].is_isomorphic(&p5, caps.max_component_size)? {
        return Err(EdsError::Precondition(
            "the linear kernel requires the family {P5}".into(),
        ));
    }
    inst.validate(caps)?;
    let mut work = Work::new(inst);

    let modulator: Vec<usize> = inst.modulator.clone();
    let comps = work.comps.clone();
    let middles: Vec<usize> = comps.iter().map(|c| c.original_id(p5_middle(c))).collect();

    let mut aux = Bipartite::new(modulator.len(), comps.len());
    for (xi, &x) in modulator.iter().enumerate() {
        for (ci, comp) in comps.iter().enumerate() {
            let non_middle_adjacent = comp
                .vertices
                .iter()
                .any(|&w| w != middles[ci] && inst.graph.has_edge(x, w));
            if non_middle_adjacent {
                aux.add_edge(xi, ci);
            }
        }
    }
    let (x1, x2): (Vec<usize>, Vec<usize>) = match aux.saturate_or_deficiency() {
        SaturationResult::Saturated(_) => (modulator.clone(), Vec::new()),
        SaturationResult::Deficient { violator, .. } => {
            let y: BTreeSet<usize> = violator.into_iter().collect();
            let x1 = (0..modulator.len())
                .filter(|i| !y.contains(i))
                .map(|i| modulator[i])
                .collect();
            let x2 = y.into_iter().map(|i| modulator[i]).collect();
            (x1, x2)
        }
    };
    // components tied to the deficient part through non-middle vertices stay
    let x2_set: BTreeSet<usize> = x2.iter().copied().collect();
    let mut served = Vec::new();
    for (ci, comp) in comps.iter().enumerate() {
        let in_c2 = comp.vertices.iter().any(|&w| {
            w != middles[ci] && inst.graph.neighbors(w).iter().any(|n| x2_set.contains(n))
        });
        if !in_c2 {
            served.push(ci);
        }
    }
    work.stats.insert("x1", x1.len());
    work.stats.insert("x2", x2.len());
    work.stats.insert("c1", served.len());
    work.stats.insert("c2", comps.len() - served.len());
    work.drop_modulator(x1);
    work.drop_components(served, caps)?;
    Ok(finish_with_sizes(work, "p5"))
}

fn finish_with_sizes(work: Work, path: &'static str) -> KernelReport {
    let mut report = work.finish(path);
    if let KernelOutcome::Reduced(inst) = &report.outcome {
        report.size_after = (inst.graph.n(), inst.graph.m());
    }
    report
}

// --- component profiling shared by the two general kernels --------------------

struct CompData {
    /// free vertices, original ids
    free: Vec<usize>,
    /// uncovered vertices, original ids
    uncovered: Vec<usize>,
    /// strongly beneficial sets with costs, original ids
    strong: Vec<(Vec<usize>, usize)>,
}

fn profile_components(comps: &[ComponentView], caps: &Caps) -> Result<Vec<CompData>> {
    let mut memo: HashMap<Graph, HProfile> = HashMap::new();
    let mut out = Vec::with_capacity(comps.len());
    for comp in comps {
        let profile = match memo.get(&comp.local) {
            Some(p) => p.clone(),
            None => {
                let p = Profiler::new(&comp.local, caps)?.profile();
                memo.insert(comp.local.clone(), p.clone());
                p
            }
        };
        out.push(CompData {
            free: profile.free.iter().map(|&v| comp.original_id(v)).collect(),
            uncovered: profile
                .uncovered
                .iter()
                .map(|&v| comp.original_id(v))
                .collect(),
            strong: profile
                .strongly_beneficial
                .iter()
                .map(|(set, cost)| (set.iter().map(|&v| comp.original_id(v)).collect(), *cost))
                .collect(),
        });
    }
    Ok(out)
}

/// Modulator partition produced by the free-vertex auxiliary matching.
struct FreePartition {
    x_w_h: Vec<usize>,
    x_w_l: Vec<usize>,
    /// component indices whose free vertices see the deficient part
    c_w_l: BTreeSet<usize>,
}

/// Builds the bipartite graph between (copies of) modulator vertices adjacent
/// to free vertices and the components owning those free vertices, and reads
/// the partition off the saturate-or-deficiency result. `copies` = 1 gives
/// the quadratic kernel's graph; `copies` = |X| the general one.
fn free_partition(
    g: &Graph,
    modulator: &[usize],
    comps: &[ComponentView],
    data: &[CompData],
    copies: usize,
) -> FreePartition {
    let mut comp_free_adjacent: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); comps.len()];
    for (ci, d) in data.iter().enumerate() {
        for &w in &d.free {
            for &x in g.neighbors(w) {
                if modulator.binary_search(&x).is_ok() {
                    comp_free_adjacent[ci].insert(x);
                }
            }
        }
    }
    let x_w: Vec<usize> = modulator
        .iter()
        .copied()
        .filter(|&x| comp_free_adjacent.iter().any(|s| s.contains(&x)))
        .collect();
    let c_w: Vec<usize> = (0..comps.len())
        .filter(|&ci| !comp_free_adjacent[ci].is_empty())
        .collect();
    let mut aux = Bipartite::new(x_w.len() * copies, c_w.len());
    for (xi, &x) in x_w.iter().enumerate() {
        for (cj, &ci) in c_w.iter().enumerate() {
            if comp_free_adjacent[ci].contains(&x) {
                for copy in 0..copies {
                    aux.add_edge(xi * copies + copy, cj);
                }
            }
        }
    }
    match aux.saturate_or_deficiency() {
        SaturationResult::Saturated(_) => FreePartition {
            x_w_h: x_w,
            x_w_l: Vec::new(),
            c_w_l: BTreeSet::new(),
        },
        SaturationResult::Deficient { violator, .. } => {
            // all copies of a vertex share a neighborhood, so membership in
            // the violator is per-vertex
            let low: BTreeSet<usize> = violator.iter().map(|&i| x_w[i / copies]).collect();
            let x_w_h: Vec<usize> = x_w.iter().copied().filter(|x| !low.contains(x)).collect();
            let c_w_l: BTreeSet<usize> = c_w
                .iter()
                .copied()
                .filter(|&ci| comp_free_adjacent[ci].iter().any(|x| low.contains(x)))
                .collect();
            FreePartition {
                x_w_h,
                x_w_l: low.into_iter().collect(),
                c_w_l,
            }
        }
    }
}

/// Modulator split by adjacency to uncovered vertices: vertices seeing
/// uncovered vertices of more than `threshold` components are forced into
/// every feasible solution.
struct UncoveredPartition {
    x_u_h: Vec<usize>,
    x_u_l: Vec<usize>,
    c_u_l: BTreeSet<usize>,
}

fn uncovered_partition(
    g: &Graph,
    modulator: &BTreeSet<usize>,
    comps: &[ComponentView],
    data: &[CompData],
    dead_comps: &BTreeSet<usize>,
    threshold: usize,
) -> UncoveredPartition {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seen_by: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for (ci, d) in data.iter().enumerate() {
        if dead_comps.contains(&ci) {
            continue;
        }
        let mut adjacent: BTreeSet<usize> = BTreeSet::new();
        for &u in &d.uncovered {
            for &x in g.neighbors(u) {
                if modulator.contains(&x) {
                    adjacent.insert(x);
                }
            }
        }
        for &x in &adjacent {
            *count.entry(x).or_default() += 1;
            seen_by[ci].push(x);
        }
    }
    let x_u_h: Vec<usize> = count
        .iter()
        .filter(|&(_, &c)| c >= threshold + 1)
        .map(|(&x, _)| x)
        .collect();
    let x_u_l: Vec<usize> = count
        .iter()
        .filter(|&(_, &c)| c < threshold + 1)
        .map(|(&x, _)| x)
        .collect();
    let x_u_l_set: BTreeSet<usize> = x_u_l.iter().copied().collect();
    let c_u_l: BTreeSet<usize> = (0..comps.len())
        .filter(|&ci| seen_by[ci].iter().any(|x| x_u_l_set.contains(x)))
        .collect();
    UncoveredPartition { x_u_h, x_u_l, c_u_l }
}

/// True when some vertex already serves as the forcing gadget for x: a
/// private degree-one neighbor.
fn has_forcing_gadget(g: &Graph, x: usize) -> bool {
    g.neighbors(x)
        .iter()
        .any(|&u| g.degree(u) == 1 && g.neighbors(u) == [x])
}

/// Singleton components that are forcing gadgets of the given vertices.
fn gadget_components(
    g: &Graph,
    comps: &[ComponentView],
    forced: &BTreeSet<usize>,
) -> BTreeSet<usize> {
    (0..comps.len())
        .filter(|&ci| {
            comps[ci].local.n() == 1 && {
                let v = comps[ci].vertices[0];
                let ns = g.neighbors(v);
                ns.len() == 1 && forced.contains(&ns[0])
            }
        })
        .collect()
}

// --- quadratic kernel ----------------------------------------------------------

/// Kernel for families whose members have no beneficial sets and decompose
/// into free vertices, their neighbors, and uncovered vertices.
pub fn kernelize_basic(inst: &ModInstance, caps: &Caps) -> Result<KernelReport> {
    match classify_family(&inst.family, caps)? {
        Verdict::QuadraticKernel => {}
        Verdict::PolyKernel { .. } => {
            return Err(EdsError::Precondition(
                "family has beneficial sets; use the general kernel".into(),
            ))
        }
        Verdict::NoPolyKernel { kind, .. } => {
            return Err(EdsError::Precondition(format!(
                "family admits no polynomial kernel (item {})",
                kind.code()
            )))
        }
    }
    inst.validate(caps)?;
    let mut work = Work::new(inst);
    if let Some(witness) = trivial_yes(inst, &work.comps, caps)? {
        return Ok(trivial_report(inst, "basic", witness));
    }
    let x_entry = inst.modulator.len();
    let comps = work.comps.clone();
    let data = profile_components(&comps, caps)?;

    let fp = free_partition(&inst.graph, &inst.modulator, &comps, &data, 1);
    work.stats.insert("x_w_h", fp.x_w_h.len());
    work.stats.insert("x_w_l", fp.x_w_l.len());
    work.stats.insert("c_w_l", fp.c_w_l.len());
    work.drop_modulator(fp.x_w_h);

    let up = uncovered_partition(
        &inst.graph,
        &work.modulator,
        &comps,
        &data,
        &work.dead_comps,
        x_entry,
    );
    work.stats.insert("x_u_h", up.x_u_h.len());
    work.stats.insert("x_u_l", up.x_u_l.len());
    work.stats.insert("c_u_l", up.c_u_l.len());
    let forced: BTreeSet<usize> = up.x_u_h.iter().copied().collect();
    let need_pendant: Vec<usize> = up
        .x_u_h
        .iter()
        .copied()
        .filter(|&x| !has_forcing_gadget(&inst.graph, x))
        .collect();
    work.stats.insert("c_s", need_pendant.len());
    work.pin_forced(need_pendant);

    let keep_gadgets = gadget_components(&inst.graph, &comps, &forced);
    let served: Vec<usize> = (0..comps.len())
        .filter(|ci| {
            !up.c_u_l.contains(ci) && !fp.c_w_l.contains(ci) && !keep_gadgets.contains(ci)
        })
        .collect();
    work.stats.insert("c_d", served.len());
    work.drop_components(served, caps)?;
    Ok(finish_with_sizes(work, "basic"))
}

// --- general kernel --------------------------------------------------------------

/// The auxiliary graph pairing (modulator subset, extra budget) demands with
/// components able to serve them through a strongly beneficial set matched
/// into the subset.
pub struct BenefitAux {
    /// Left-side labels: (sorted modulator subset, beta).
    pub rows: Vec<(Vec<usize>, usize)>,
    pub graph: Bipartite,
}

fn subsets_of_size(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(pool: &[usize], size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..pool.len() {
            current.push(pool[i]);
            rec(pool, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(pool, size, 0, &mut current, &mut out);
    out
}

/// Builds the auxiliary graph: one row per (Y, beta) with Y a modulator
/// subset of size 2..=d and beta in 1..=|Y|-1; an edge to component C when C
/// has a strongly beneficial set B with |B| = |Y|, cost(B) = beta, and a
/// perfect matching between Y and B along instance edges.
pub fn benefit_auxiliary(
    g: &Graph,
    modulator: &[usize],
    d: usize,
    comp_strong: &[Vec<(Vec<usize>, usize)>],
) -> BenefitAux {
    let mut rows: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut row_of: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    for size in 2..=d.min(modulator.len()) {
        for y in subsets_of_size(modulator, size) {
            for beta in 1..size {
                row_of.insert((y.clone(), beta), rows.len());
                rows.push((y.clone(), beta));
            }
        }
    }
    let mut aux = Bipartite::new(rows.len(), comp_strong.len());
    for (ci, strong) in comp_strong.iter().enumerate() {
        for (b, cost) in strong {
            if b.len() < 2 || b.len() > d || *cost >= b.len() || *cost == 0 {
                continue;
            }
            // modulator vertices adjacent to the beneficial set
            let z: Vec<usize> = modulator
                .iter()
                .copied()
                .filter(|&x| b.iter().any(|&v| g.has_edge(x, v)))
                .collect();
            for y in subsets_of_size(&z, b.len()) {
                let mut m = Bipartite::new(y.len(), b.len());
                for (yi, &x) in y.iter().enumerate() {
                    for (bi, &v) in b.iter().enumerate() {
                        if g.has_edge(x, v) {
                            m.add_edge(yi, bi);
                        }
                    }
                }
                if m.max_matching().len() == y.len() {
                    let row = row_of[&(y.clone(), *cost)];
                    aux.add_edge(row, ci);
                }
            }
        }
    }
    BenefitAux { rows, graph: aux }
}

/// Kernel for families without lower-bound patterns but with strongly
/// beneficial sets of size up to d.
pub fn kernelize_general(inst: &ModInstance, d: usize, caps: &Caps) -> Result<KernelReport> {
    match classify_family(&inst.family, caps)? {
        Verdict::PolyKernel { d: found } if found == d => {}
        Verdict::PolyKernel { d: found } => {
            return Err(EdsError::Precondition(format!(
                "family classifies with largest strongly beneficial size {found}, not {d}"
            )))
        }
        other => {
            return Err(EdsError::Precondition(format!(
                "general kernel requires a poly-kernel family verdict, got {other:?}"
            )))
        }
    }
    inst.validate(caps)?;
    let mut work = Work::new(inst);
    if let Some(witness) = trivial_yes(inst, &work.comps, caps)? {
        return Ok(trivial_report(inst, "general", witness));
    }
    let x_entry = inst.modulator.len();
    let comps = work.comps.clone();
    let data = profile_components(&comps, caps)?;

    let fp = free_partition(&inst.graph, &inst.modulator, &comps, &data, x_entry.max(1));
    work.stats.insert("x_w_h", fp.x_w_h.len());
    work.stats.insert("x_w_l", fp.x_w_l.len());
    work.stats.insert("c_w_l", fp.c_w_l.len());
    work.drop_modulator(fp.x_w_h);

    let up = uncovered_partition(
        &inst.graph,
        &work.modulator,
        &comps,
        &data,
        &work.dead_comps,
        x_entry,
    );
    work.stats.insert("x_u_h", up.x_u_h.len());
    work.stats.insert("x_u_l", up.x_u_l.len());
    work.stats.insert("c_u_l", up.c_u_l.len());
    let forced: BTreeSet<usize> = up.x_u_h.iter().copied().collect();
    let need_pendant: Vec<usize> = up
        .x_u_h
        .iter()
        .copied()
        .filter(|&x| !has_forcing_gadget(&inst.graph, x))
        .collect();
    work.stats.insert("c_s", need_pendant.len());
    work.pin_forced(need_pendant);
    let keep_gadgets = gadget_components(&inst.graph, &comps, &forced);

    // components able to serve budget demands through beneficial sets
    let modulator_now: Vec<usize> = work.modulator.iter().copied().collect();
    let c_b: Vec<usize> = (0..comps.len())
        .filter(|ci| {
            !fp.c_w_l.contains(ci)
                && !up.c_u_l.contains(ci)
                && !keep_gadgets.contains(ci)
                && !data[*ci].strong.is_empty()
        })
        .collect();
    let comp_strong: Vec<Vec<(Vec<usize>, usize)>> =
        c_b.iter().map(|&ci| data[ci].strong.clone()).collect();
    let aux = benefit_auxiliary(&inst.graph, &modulator_now, d, &comp_strong);
    let (c_b_l, c_b_h): (BTreeSet<usize>, BTreeSet<usize>) = match aux.graph.saturate_or_deficiency()
    {
        SaturationResult::Saturated(m) => (
            BTreeSet::new(),
            m.iter().map(|&(_, cj)| c_b[cj]).collect(),
        ),
        SaturationResult::Deficient { violator, matching } => {
            let mut blocked: BTreeSet<usize> = BTreeSet::new();
            for &row in &violator {
                for &cj in aux.graph.neighbors(row) {
                    blocked.insert(c_b[cj]);
                }
            }
            let kept: BTreeSet<usize> = matching.iter().map(|&(_, cj)| c_b[cj]).collect();
            (blocked, kept)
        }
    };
    work.stats.insert("c_b", c_b.len());
    work.stats.insert("c_b_l", c_b_l.len());
    work.stats.insert("c_b_h", c_b_h.len());
    work.stats.insert("aux_rows", aux.rows.len());

    let served: Vec<usize> = (0..comps.len())
        .filter(|ci| {
            !up.c_u_l.contains(ci)
                && !fp.c_w_l.contains(ci)
                && !keep_gadgets.contains(ci)
                && !c_b_l.contains(ci)
                && !c_b_h.contains(ci)
        })
        .collect();
    work.stats.insert("c_d", served.len());
    work.drop_components(served, caps)?;
    Ok(finish_with_sizes(work, "general"))
}

// --- dispatcher ------------------------------------------------------------------

/// Classifies the family and routes to the matching kernel. `general` turns
/// off the path-of-five fast path.
pub fn kernelize(inst: &ModInstance, general: bool, caps: &Caps) -> Result<KernelReport> {
    if inst.family.is_empty() {
        return Err(EdsError::Precondition(
            "kernelization requires a nonempty family".into(),
        ));
    }
    match classify_family(&inst.family, caps)? {
        Verdict::NoPolyKernel { kind, witness } => Err(EdsError::NoPolyKernelFamily {
            item: kind.code().into(),
            witness: format!("{witness:?}"),
        }),
        Verdict::PolyKernel { d } => kernelize_general(inst, d, caps),
        Verdict::QuadraticKernel => {
            let p5 = Graph::path(5);
            let is_p5_family = inst.family.len() == 1
                && inst.family[0].is_isomorphic(&p5, caps.max_component_size)?;
            if is_p5_family && !general {
                kernelize_p5(inst, caps)
            } else {
                kernelize_basic(inst, caps)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{decide_eds, is_eds};

    fn caps() -> Caps {
        Caps::default()
    }

    /// P5 with a pendant modulator vertex attached to one end.
    fn pendant_p6(k: i64) -> ModInstance {
        let g = Graph::new(6, &[(5, 0), (0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        ModInstance::new(g, k, vec![5], vec![Graph::path(5)]).unwrap()
    }

    #[test]
    fn p5_kernel_pendant_example() {
        let report = kernelize_p5(&pendant_p6(2), &caps()).unwrap();
        let reduced = report.reduced().unwrap();
        assert_eq!(reduced.graph.n(), 0);
        assert_eq!(reduced.k, 0);
        assert_eq!(report.budget_delta, 2);
        // original answer yes at k=2
        assert!(decide_eds(&pendant_p6(2).graph, 2, &caps()).unwrap().is_some());

        let report = kernelize_p5(&pendant_p6(1), &caps()).unwrap();
        let reduced = report.reduced().unwrap();
        assert_eq!(reduced.k, -1);
        assert!(decide_eds(&pendant_p6(1).graph, 1, &caps()).unwrap().is_none());
    }

    #[test]
    fn p5_kernel_middle_only_modulator() {
        // two modulator vertices adjacent only to middles of two paths
        let mut edges = vec![];
        // paths 0-1-2-3-4 and 5-6-7-8-9; modulator 10, 11 on middles 2 and 7
        for base in [0, 5] {
            for i in 0..4 {
                edges.push((base + i, base + i + 1));
            }
        }
        edges.push((10, 2));
        edges.push((11, 7));
        let g = Graph::new(12, &edges).unwrap();
        let inst = ModInstance::new(g, 5, vec![10, 11], vec![Graph::path(5)]).unwrap();
        let report = kernelize_p5(&inst, &caps()).unwrap();
        // middles are excluded from the auxiliary graph, so nothing saturates:
        // the whole modulator lands in the deficient part, no component is
        // adjacent to it through non-middles, both get deleted
        assert_eq!(report.stats["x1"], 0);
        assert_eq!(report.stats["x2"], 2);
        assert_eq!(report.stats["c1"], 2);
        assert_eq!(report.budget_delta, 4);
        let reduced = report.reduced().unwrap();
        assert_eq!(reduced.graph.n(), 2);
        assert_eq!(reduced.k, 1);
    }

    #[test]
    fn p5_kernel_size_bound() {
        let report = kernelize_p5(&pendant_p6(2), &caps()).unwrap();
        let reduced = report.reduced().unwrap();
        assert!(reduced.graph.n() <= 6 * reduced.modulator.len());
    }

    #[test]
    fn basic_kernel_isolated_p2s() {
        // t isolated edges, no contact with the modulator
        let t = 4;
        let mut g = Graph::empty(1); // modulator vertex 0
        for _ in 0..t {
            g = g.disjoint_union(&Graph::path(2));
        }
        let inst = ModInstance::new(g, 4, vec![0], vec![Graph::path(2)]).unwrap();
        let report = kernelize_basic(&inst, &caps()).unwrap();
        let reduced = report.reduced().unwrap();
        assert_eq!(report.stats["c_d"], t);
        assert_eq!(reduced.k, 0);
        assert_eq!(reduced.graph.n(), 1);
    }

    #[test]
    fn basic_kernel_saturated_modulator() {
        // one modulator vertex adjacent to w1 of each of 3 P5s; k tight so
        // the padding certificate does not fire
        let mut edges = vec![];
        for base in [1, 6, 11] {
            for i in 0..4 {
                edges.push((base + i, base + i + 1));
            }
            edges.push((0, base));
        }
        let g = Graph::new(16, &edges).unwrap();
        let inst = ModInstance::new(g, 6, vec![0], vec![Graph::path(5)]).unwrap();
        let report = kernelize_basic(&inst, &caps()).unwrap();
        assert_eq!(report.stats["x_w_h"], 1);
        assert_eq!(report.stats["c_d"], 3);
        let reduced = report.reduced().unwrap();
        assert_eq!(reduced.k, 0);
        assert_eq!(reduced.graph.n(), 0);
        // oracle agreement
        let yes_before = decide_eds(&inst.graph, inst.k, &caps()).unwrap().is_some();
        let yes_after = reduced.k >= 0;
        assert_eq!(yes_before, yes_after);
    }

    #[test]
    fn basic_kernel_trivial_yes() {
        let inst = pendant_p6(3); // k = 3 >= MEDS(P5) + |X| = 2 + 1
        let report = kernelize_basic(&inst, &caps()).unwrap();
        match &report.outcome {
            KernelOutcome::TrivialYes { witness } => {
                assert!(is_eds(&inst.graph, witness).unwrap());
                assert!(witness.len() as i64 <= inst.k);
            }
            _ => panic!("expected the padding certificate"),
        }
    }

    #[test]
    fn dispatcher_routes_and_rejects() {
        let inst = pendant_p6(2);
        assert_eq!(kernelize(&inst, false, &caps()).unwrap().path, "p5");
        assert_eq!(kernelize(&inst, true, &caps()).unwrap().path, "basic");
        // P3 family refuses with the witness item
        let g = Graph::path(3);
        let bad = ModInstance::new(g, 1, vec![], vec![Graph::path(3)]).unwrap();
        match kernelize(&bad, false, &caps()) {
            Err(EdsError::NoPolyKernelFamily { item, .. }) => assert_eq!(item, "1a"),
            other => panic!("unexpected {other:?}"),
        }
        // K4 family goes through the quadratic path
        let inst = ModInstance::new(Graph::complete(4), 2, vec![], vec![Graph::complete(4)]).unwrap();
        assert_eq!(kernelize(&inst, false, &caps()).unwrap().path, "basic");
    }

    #[test]
    fn replay_reproduces_reduced_instance() {
        let inst = pendant_p6(2);
        let report = kernelize_p5(&inst, &caps()).unwrap();
        let replayed = replay(&inst, &report.rule_trace);
        assert_eq!(&replayed, report.reduced().unwrap());
    }

    #[test]
    fn kernel_deterministic() {
        let inst = pendant_p6(2);
        let a = kernelize(&inst, false, &caps()).unwrap().to_json().to_string();
        let b = kernelize(&inst, false, &caps()).unwrap().to_json().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn benefit_auxiliary_edge_rule() {
        // hand-built component with a strongly beneficial pair of cost 1,
        // matched into two modulator vertices
        let fig2_edges = [
            (0, 1),
            (0, 5),
            (5, 10),
            (10, 11),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (2, 7),
            (2, 8),
            (3, 8),
            (3, 9),
        ];
        let mut edges = fig2_edges.to_vec();
        edges.push((12, 2)); // x1 - c
        edges.push((13, 6)); // x2 - g
        let g = Graph::new(14, &edges).unwrap();
        let comp_strong = vec![vec![(vec![2, 6], 1)]];
        let aux = benefit_auxiliary(&g, &[12, 13], 2, &comp_strong);
        assert_eq!(aux.rows, vec![(vec![12, 13], 1)]);
        assert_eq!(aux.graph.neighbors(0), &[0]);

        // wrong beta: no edge (cost 1 demanded as beta 1 only)
        let comp_strong = vec![vec![(vec![2, 6], 1)]];
        let aux = benefit_auxiliary(&g, &[12, 13], 3, &comp_strong);
        // rows for size 2 and 3 exist; only ( {12,13}, 1 ) has the edge
        for (i, (y, beta)) in aux.rows.iter().enumerate() {
            let expect = y == &vec![12, 13] && *beta == 1;
            assert_eq!(!aux.graph.neighbors(i).is_empty(), expect);
        }

        // no perfect matching: both modulator vertices attached to the same
        // beneficial vertex
        let mut edges = fig2_edges.to_vec();
        edges.push((12, 2));
        edges.push((13, 2));
        let g = Graph::new(14, &edges).unwrap();
        let aux = benefit_auxiliary(&g, &[12, 13], 2, &[vec![(vec![2, 6], 1)]]);
        assert!(aux.graph.neighbors(0).is_empty());
    }
}
