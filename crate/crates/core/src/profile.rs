//! Per-graph structure profiles: extendable / free / uncovered vertices,
//! deletion costs, (strongly) beneficial sets, the kernelizability verdict,
//! and control pairs.
//!
//! Everything here quantifies over all minimum edge dominating sets, so the
//! computations run the full enumeration from `exact` and are gated by the
//! enumeration cap. Correctness over speed; the cap keeps it feasible.

use crate::exact::{enumerate_min_eds, MedsCache};
use crate::graph::Graph;
use crate::{Caps, EdsError, Result};
use serde::Serialize;
use std::collections::HashMap;

/// Which lower-bound pattern a graph matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LowerBoundKind {
    /// An extendable vertex that is not free.
    ExtendableNotFree,
    /// A strongly beneficial set containing an uncovered vertex.
    StrongSetMeetsUncovered,
    /// A vertex that is neither uncovered, free, nor neighbor of a free one.
    VertexOutsideCore,
    /// A strongly beneficial set near the free vertices whose removal leaves
    /// part of their neighborhood uncoverable by any optimum.
    UncoverableNeighborhood,
}

impl LowerBoundKind {
    /// Short stable code used in reports and JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            LowerBoundKind::ExtendableNotFree => "1a",
            LowerBoundKind::StrongSetMeetsUncovered => "1b",
            LowerBoundKind::VertexOutsideCore => "1c",
            LowerBoundKind::UncoverableNeighborhood => "1d",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    Vertex(usize),
    Set(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NoPolyKernel {
        kind: LowerBoundKind,
        witness: Witness,
    },
    PolyKernel {
        d: usize,
    },
    QuadraticKernel,
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::NoPolyKernel { kind, witness } => {
                let w = match witness {
                    Witness::Vertex(v) => serde_json::json!([v + 1]),
                    Witness::Set(s) => {
                        serde_json::json!(s.iter().map(|v| v + 1).collect::<Vec<_>>())
                    }
                };
                serde_json::json!({"verdict": "no-poly-kernel", "item": kind.code(), "witness": w})
            }
            Verdict::PolyKernel { d } => serde_json::json!({"verdict": "poly-kernel", "d": d}),
            Verdict::QuadraticKernel => serde_json::json!({"verdict": "quadratic"}),
        }
    }
}

/// Full structure profile of one connected graph.
#[derive(Debug, Clone, Serialize)]
pub struct HProfile {
    pub n: usize,
    pub m: usize,
    pub meds: usize,
    /// Q: vertices whose deletion lowers the optimum by one.
    pub extendable: Vec<usize>,
    /// W: the unique maximum free subset of Q.
    pub free: Vec<usize>,
    /// U: vertices touched by no minimum solution.
    pub uncovered: Vec<usize>,
    /// Every strongly beneficial set with its cost, ordered by (size, ids).
    pub strongly_beneficial: Vec<(Vec<usize>, usize)>,
    /// Size of the largest strongly beneficial set (0 if none).
    pub d: usize,
    pub verdict: Verdict,
}

impl HProfile {
    /// Machine-readable profile; vertex ids are 1-based to match the file
    /// format.
    pub fn to_json(&self) -> serde_json::Value {
        let up = |s: &[usize]| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        let mut value = serde_json::json!({
            "n": self.n,
            "m": self.m,
            "meds": self.meds,
            "Q": up(&self.extendable),
            "W": up(&self.free),
            "U": up(&self.uncovered),
            "strongly_beneficial": self.strongly_beneficial.iter().map(|(set, cost)| {
                serde_json::json!({"set": up(set), "cost": cost})
            }).collect::<Vec<_>>(),
            "d": self.d,
        });
        let verdict = self.verdict.to_json();
        for (k, v) in verdict.as_object().unwrap() {
            value[k] = v.clone();
        }
        value
    }
}

/// A control pair (C, B): B strongly beneficial, C coverable by some optimum
/// of H but by no optimum of H - B, with C disjoint from Q(H), B, and not
/// extendable in H - B.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ControlPair {
    pub control: Vec<usize>,
    pub benefit: Vec<usize>,
}

fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |acc, &v| acc | (1 << v))
}

fn vertices_of(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Shared computation state over one host graph.
pub struct Profiler {
    g: Graph,
    caps: Caps,
    cache: MedsCache,
    /// deletion mask -> covered-vertex masks (original ids) of all minimum
    /// solutions of H minus the masked vertices
    covered_memo: HashMap<u64, Vec<u64>>,
    /// subset mask -> minimum total cost over all partitions of the subset
    partition_memo: HashMap<u64, usize>,
}

impl Profiler {
    pub fn new(g: &Graph, caps: &Caps) -> Result<Self> {
        caps.check("structure profile", caps.enumeration_cap, g.n())?;
        if !g.is_connected() {
            return Err(EdsError::Precondition(
                "structure profiles require a connected graph".into(),
            ));
        }
        Ok(Profiler {
            g: g.clone(),
            caps: *caps,
            cache: MedsCache::new(g, caps)?,
            covered_memo: HashMap::new(),
            partition_memo: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn meds(&mut self) -> usize {
        self.cache.meds_host()
    }

    pub fn meds_minus(&mut self, mask: u64) -> usize {
        self.cache.meds_minus(mask)
    }

    pub fn cost(&mut self, mask: u64) -> usize {
        self.cache.cost(mask)
    }

    /// Covered-vertex masks (in host ids) of every minimum solution of the
    /// host minus `del`.
    pub fn covered_sets(&mut self, del: u64) -> Vec<u64> {
        if let Some(v) = self.covered_memo.get(&del) {
            return v.clone();
        }
        let remove: Vec<usize> = vertices_of(del, self.g.n());
        let (sub, map) = self.g.delete_vertices(&remove).unwrap();
        let sets = enumerate_min_eds(&sub, &self.caps).expect("host under cap");
        let mut masks: Vec<u64> = sets
            .iter()
            .map(|f| {
                f.covered_vertices()
                    .into_iter()
                    .fold(0u64, |acc, v| acc | (1 << map[v]))
            })
            .collect();
        masks.sort_unstable();
        masks.dedup();
        self.covered_memo.insert(del, masks.clone());
        masks
    }

    /// Q(H): vertices v with MEDS(H - v) + 1 = MEDS(H).
    pub fn extendable(&mut self) -> Vec<usize> {
        let base = self.meds();
        (0..self.g.n())
            .filter(|&v| self.meds_minus(1 << v) + 1 == base)
            .collect()
    }

    /// Is Y free: for all v in Y and all minimum solutions F of H there is a
    /// minimum solution F' of H - v with V(F) minus Y inside V(F').
    fn is_free(&mut self, y_mask: u64, extendable_mask: u64) -> bool {
        if y_mask & !extendable_mask != 0 {
            return false; // free sets live inside Q
        }
        let host_covers = self.covered_sets(0);
        for v in vertices_of(y_mask, self.g.n()) {
            let deleted_covers = self.covered_sets(1 << v);
            for &cov in &host_covers {
                let need = cov & !y_mask;
                if !deleted_covers.iter().any(|&c| need & !c == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// W(H): the union of all free subsets of Q (unions of free sets are
    /// free, so this is the unique maximum free set). Tests Q itself first.
    pub fn max_free_set(&mut self) -> Vec<usize> {
        let q = self.extendable();
        let q_mask = mask_of(&q);
        if self.is_free(q_mask, q_mask) {
            return q;
        }
        let mut union = 0u64;
        // iterate subsets of q_mask
        let mut sub = q_mask;
        loop {
            if sub & !union != 0 && self.is_free(sub, q_mask) {
                union |= sub;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & q_mask;
        }
        vertices_of(union, self.g.n())
    }

    /// U(H): vertices covered by no minimum solution.
    pub fn uncovered(&mut self) -> Vec<usize> {
        let all: u64 = self.covered_sets(0).iter().fold(0, |acc, &c| acc | c);
        (0..self.g.n()).filter(|&v| all >> v & 1 == 0).collect()
    }

    /// Beneficial: deleting B lowers the optimum strictly below every proper
    /// subset's. Checking the co-atoms suffices by deletion monotonicity.
    pub fn is_beneficial(&mut self, b_mask: u64) -> bool {
        if b_mask == 0 {
            return false;
        }
        let full = self.meds_minus(b_mask);
        for v in vertices_of(b_mask, self.g.n()) {
            if full >= self.meds_minus(b_mask & !(1 << v)) {
                return false;
            }
        }
        true
    }

    /// Minimum total cost over all partitions of `mask` (trivial allowed).
    /// The first part is pinned to contain the lowest bit, so every
    /// unordered split is visited once.
    fn min_partition_cost(&mut self, mask: u64) -> usize {
        if let Some(&v) = self.partition_memo.get(&mask) {
            return v;
        }
        let mut best = self.cost(mask);
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut t = rest;
        loop {
            if t != rest {
                let part = t | low;
                let other = mask & !part;
                let split = self.min_partition_cost(part) + self.min_partition_cost(other);
                if split < best {
                    best = split;
                }
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        self.partition_memo.insert(mask, best);
        best
    }

    /// Minimum total cost over all non-trivial partitions (at least 2 parts).
    pub fn min_nontrivial_partition_cost(&mut self, mask: u64) -> Option<usize> {
        if mask.count_ones() < 2 {
            return None;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut best = None;
        let mut t = rest;
        loop {
            if t != rest {
                let part = t | low;
                let other = mask & !part;
                let split = self.min_partition_cost(part) + self.min_partition_cost(other);
                if best.map_or(true, |b| split < b) {
                    best = Some(split);
                }
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        best
    }

    /// Strongly beneficial: beneficial, and strictly cheaper than every
    /// non-trivial partition (equivalent to the cover form).
    pub fn is_strongly_beneficial(&mut self, b_mask: u64) -> bool {
        if !self.is_beneficial(b_mask) {
            return false;
        }
        match self.min_nontrivial_partition_cost(b_mask) {
            None => true, // singletons have no non-trivial partition
            Some(best) => self.cost(b_mask) < best,
        }
    }

    /// All strongly beneficial subsets of V minus W with their costs,
    /// ordered by (size, ids).
    pub fn strongly_beneficial_sets(&mut self) -> Vec<(Vec<usize>, usize)> {
        let w_mask = mask_of(&self.max_free_set());
        let n = self.g.n();
        let candidates = !w_mask & ((1u64 << n) - 1);
        let mut out = Vec::new();
        // iterate nonempty subsets of the candidate mask
        let mut sub = candidates;
        while sub != 0 {
            if self.is_strongly_beneficial(sub) {
                out.push((vertices_of(sub, n), self.cost(sub)));
            }
            sub = (sub - 1) & candidates;
        }
        out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        out
    }

    fn neighborhood_mask(&self, set_mask: u64) -> u64 {
        let mut out = 0u64;
        for v in vertices_of(set_mask, self.g.n()) {
            for &w in self.g.neighbors(v) {
                out |= 1 << w;
            }
        }
        out & !set_mask
    }

    /// Verdict per the classification, checking the lower-bound patterns in
    /// order 1a, 1b, 1c, 1d, then poly vs quadratic.
    pub fn classify(&mut self) -> Verdict {
        let q = mask_of(&self.extendable());
        let w = mask_of(&self.max_free_set());
        let u = mask_of(&self.uncovered());
        let n = self.g.n();

        if q & !w != 0 {
            let v = (q & !w).trailing_zeros() as usize;
            return Verdict::NoPolyKernel {
                kind: LowerBoundKind::ExtendableNotFree,
                witness: Witness::Vertex(v),
            };
        }
        let strong = self.strongly_beneficial_sets();
        let mut witness_ordered = strong.clone();
        witness_ordered.sort_by(|a, b| (&a.0, a.0.len()).cmp(&(&b.0, b.0.len())));
        for (set, _) in &witness_ordered {
            if mask_of(set) & u != 0 {
                return Verdict::NoPolyKernel {
                    kind: LowerBoundKind::StrongSetMeetsUncovered,
                    witness: Witness::Set(set.clone()),
                };
            }
        }
        let core = w | self.neighborhood_mask(w) | u;
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if all & !core != 0 {
            let v = (all & !core).trailing_zeros() as usize;
            return Verdict::NoPolyKernel {
                kind: LowerBoundKind::VertexOutsideCore,
                witness: Witness::Vertex(v),
            };
        }
        let nw = self.neighborhood_mask(w);
        for (set, _) in &witness_ordered {
            let b_mask = mask_of(set);
            if b_mask & !nw != 0 {
                continue;
            }
            let need = nw & !b_mask;
            let covers = self.covered_sets(b_mask);
            if !covers.iter().any(|&c| need & !c == 0) {
                return Verdict::NoPolyKernel {
                    kind: LowerBoundKind::UncoverableNeighborhood,
                    witness: Witness::Set(set.clone()),
                };
            }
        }
        let d = strong.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
        if d >= 1 {
            debug_assert!(d >= 2, "singleton strongly beneficial sets trigger 1a");
            Verdict::PolyKernel { d }
        } else {
            Verdict::QuadraticKernel
        }
    }

    /// Checks the four control-pair conditions by enumeration.
    pub fn validate_control_pair(&mut self, cp: &ControlPair) -> bool {
        let b_mask = mask_of(&cp.benefit);
        let c_mask = mask_of(&cp.control);
        if c_mask == 0 || b_mask == 0 {
            return false;
        }
        let q = mask_of(&self.extendable());
        if c_mask & (q | b_mask) != 0 {
            return false;
        }
        if !self.is_strongly_beneficial(b_mask) {
            return false;
        }
        // no control vertex extendable in H - B
        let sub_meds = self.meds_minus(b_mask);
        for v in vertices_of(c_mask, self.g.n()) {
            if self.meds_minus(b_mask | (1 << v)) + 1 == sub_meds {
                return false;
            }
        }
        // some optimum of H covers C
        if !self.covered_sets(0).iter().any(|&cov| c_mask & !cov == 0) {
            return false;
        }
        // no optimum of H - B covers C
        if self.covered_sets(b_mask).iter().any(|&cov| c_mask & !cov == 0) {
            return false;
        }
        true
    }

    /// Searches for a control pair guided by the constructions behind each
    /// lower-bound pattern, falling back to exhaustive search. Returns none
    /// when the graph classifies outside the lower-bound patterns.
    pub fn find_control_pair(&mut self) -> Option<ControlPair> {
        let verdict = self.classify();
        let kind = match verdict {
            Verdict::NoPolyKernel { kind, .. } => kind,
            _ => return None,
        };
        let n = self.g.n();
        let q_mask = mask_of(&self.extendable());
        let w_mask = mask_of(&self.max_free_set());
        let u_mask = mask_of(&self.uncovered());

        let try_pair = |profiler: &mut Profiler, c_mask: u64, b_mask: u64| {
            let cp = ControlPair {
                control: vertices_of(c_mask, n),
                benefit: vertices_of(b_mask, n),
            };
            profiler.validate_control_pair(&cp).then_some(cp)
        };

        match kind {
            LowerBoundKind::ExtendableNotFree => {
                // B = {v} for an extendable non-free v; C = V(F) minus Q for
                // a minimum solution F whose coverage cannot be preserved
                for v in vertices_of(q_mask & !w_mask, n) {
                    for cov in self.covered_sets(0) {
                        let c_mask = cov & !q_mask;
                        if let Some(cp) = try_pair(self, c_mask, 1 << v) {
                            return Some(cp);
                        }
                    }
                }
            }
            LowerBoundKind::StrongSetMeetsUncovered => {
                let strong = self.witness_ordered_strong_sets();
                for b_mask in strong {
                    if b_mask & u_mask == 0 {
                        continue;
                    }
                    let c_mask = self.neighborhood_mask(b_mask & u_mask) & !b_mask;
                    if let Some(cp) = try_pair(self, c_mask, b_mask) {
                        return Some(cp);
                    }
                }
            }
            LowerBoundKind::VertexOutsideCore => {
                let core = w_mask | self.neighborhood_mask(w_mask) | u_mask;
                let all = (1u64 << n) - 1;
                for v in vertices_of(all & !core, n) {
                    // v must miss some optimum and join another via an edge
                    let covers = self.covered_sets(0);
                    if !covers.iter().any(|&c| c >> v & 1 == 0) {
                        continue;
                    }
                    for x in self.g.neighbors(v).to_vec() {
                        // {v,x} must sit in some minimum solution: deleting
                        // both leaves an optimum one smaller
                        let b_mask = (1 << v) | (1 << x);
                        let c_mask = self.neighborhood_mask(1 << v) & !(1 << x);
                        if let Some(cp) = try_pair(self, c_mask, b_mask) {
                            return Some(cp);
                        }
                    }
                }
            }
            LowerBoundKind::UncoverableNeighborhood => {
                let nw = self.neighborhood_mask(w_mask);
                let strong = self.witness_ordered_strong_sets();
                for b0 in strong {
                    if b0 & !nw != 0 {
                        continue;
                    }
                    // augmentation loop: grow B by control vertices that
                    // became extendable in H - B until none remain
                    let mut b_mask = b0;
                    for _ in 0..=n {
                        let c_mask = nw & !b_mask;
                        let sub_meds = self.meds_minus(b_mask);
                        let grow = vertices_of(c_mask, n).into_iter().find(|&c| {
                            self.meds_minus(b_mask | (1 << c)) + 1 == sub_meds
                        });
                        match grow {
                            Some(c) => b_mask |= 1 << c,
                            None => {
                                if let Some(cp) = try_pair(self, c_mask, b_mask) {
                                    return Some(cp);
                                }
                                break;
                            }
                        }
                    }
                }
            }
        }

        // exhaustive fallback over strongly beneficial sets and candidate
        // control sets; the constructions above should always succeed
        let strong = self.witness_ordered_strong_sets();
        for b_mask in strong {
            let pool = !(q_mask | b_mask) & ((1u64 << n) - 1);
            let mut sub = pool;
            let mut candidates: Vec<u64> = Vec::new();
            while sub != 0 {
                candidates.push(sub);
                sub = (sub - 1) & pool;
            }
            candidates.sort_by_key(|&m| (vertices_of(m, n), m.count_ones()));
            for c_mask in candidates {
                if let Some(cp) = try_pair(self, c_mask, b_mask) {
                    return Some(cp);
                }
            }
        }
        None
    }

    /// Strongly beneficial masks in witness order: ids lexicographic, then
    /// size.
    fn witness_ordered_strong_sets(&mut self) -> Vec<u64> {
        let mut sets = self.strongly_beneficial_sets();
        sets.sort_by(|a, b| (&a.0, a.0.len()).cmp(&(&b.0, b.0.len())));
        sets.into_iter().map(|(s, _)| mask_of(&s)).collect()
    }

    /// Full profile with verdict.
    pub fn profile(&mut self) -> HProfile {
        let meds = self.meds();
        let extendable = self.extendable();
        let free = self.max_free_set();
        let uncovered = self.uncovered();
        let strongly_beneficial = self.strongly_beneficial_sets();
        let d = strongly_beneficial
            .iter()
            .map(|(s, _)| s.len())
            .max()
            .unwrap_or(0);
        let verdict = self.classify();
        HProfile {
            n: self.g.n(),
            m: self.g.m(),
            meds,
            extendable,
            free,
            uncovered,
            strongly_beneficial,
            d,
            verdict,
        }
    }
}

// --- free-standing operation wrappers ---------------------------------------

pub fn extendable(h: &Graph, caps: &Caps) -> Result<Vec<usize>> {
    Ok(Profiler::new(h, caps)?.extendable())
}

pub fn max_free_set(h: &Graph, caps: &Caps) -> Result<Vec<usize>> {
    Ok(Profiler::new(h, caps)?.max_free_set())
}

pub fn uncovered(h: &Graph, caps: &Caps) -> Result<Vec<usize>> {
    Ok(Profiler::new(h, caps)?.uncovered())
}

/// cost(Y) = |Y| + MEDS(H - Y) - MEDS(H).
pub fn cost(h: &Graph, set: &[usize], caps: &Caps) -> Result<usize> {
    caps.check("cost evaluation", caps.enumeration_cap, h.n())?;
    let mut cache = MedsCache::new(h, caps)?;
    Ok(cache.cost(mask_of(set)))
}

pub fn is_beneficial(h: &Graph, set: &[usize], caps: &Caps) -> Result<bool> {
    let mut p = Profiler::new(h, caps)?;
    let w = mask_of(&p.max_free_set());
    let b = mask_of(set);
    if b == 0 {
        return Err(EdsError::InvalidInput("beneficial sets are nonempty".into()));
    }
    if b & w != 0 {
        return Err(EdsError::InvalidInput(
            "beneficial sets must avoid the free vertices".into(),
        ));
    }
    Ok(p.is_beneficial(b))
}

pub fn is_strongly_beneficial(h: &Graph, set: &[usize], caps: &Caps) -> Result<bool> {
    let mut p = Profiler::new(h, caps)?;
    let w = mask_of(&p.max_free_set());
    let b = mask_of(set);
    if b == 0 || b & w != 0 {
        return Err(EdsError::InvalidInput(
            "strongly beneficial candidates must be nonempty and avoid the free vertices".into(),
        ));
    }
    if !p.is_beneficial(b) {
        return Err(EdsError::Precondition(
            "strongly beneficial test requires a beneficial set".into(),
        ));
    }
    Ok(p.is_strongly_beneficial(b))
}

pub fn strongly_beneficial_sets(h: &Graph, caps: &Caps) -> Result<Vec<(Vec<usize>, usize)>> {
    Ok(Profiler::new(h, caps)?.strongly_beneficial_sets())
}

pub fn classify_graph(h: &Graph, caps: &Caps) -> Result<Verdict> {
    Ok(Profiler::new(h, caps)?.classify())
}

pub fn profile(h: &Graph, caps: &Caps) -> Result<HProfile> {
    Ok(Profiler::new(h, caps)?.profile())
}

pub fn find_control_pair(h: &Graph, caps: &Caps) -> Result<Option<ControlPair>> {
    Ok(Profiler::new(h, caps)?.find_control_pair())
}

pub fn validate_control_pair(h: &Graph, cp: &ControlPair, caps: &Caps) -> Result<bool> {
    Ok(Profiler::new(h, caps)?.validate_control_pair(cp))
}

/// Family verdict: the worst member wins. Disconnected members are dropped
/// because they can never equal a connected component.
pub fn classify_family(family: &[Graph], caps: &Caps) -> Result<Verdict> {
    let mut best_d = 0usize;
    for member in family {
        if member.n() == 0 || !member.is_connected() {
            continue;
        }
        match classify_graph(member, caps)? {
            v @ Verdict::NoPolyKernel { .. } => return Ok(v),
            Verdict::PolyKernel { d } => best_d = best_d.max(d),
            Verdict::QuadraticKernel => {}
        }
    }
    if best_d >= 1 {
        Ok(Verdict::PolyKernel { d: best_d })
    } else {
        Ok(Verdict::QuadraticKernel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn fig2() -> Graph {
        Graph::new(
            12,
            &[
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
            ],
        )
        .unwrap()
    }

    fn e_graph() -> Graph {
        Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn extendable_p3_and_p5() {
        assert_eq!(extendable(&Graph::path(3), &caps()).unwrap(), vec![1]);
        assert_eq!(
            extendable(&Graph::path(5), &caps()).unwrap(),
            vec![0, 1, 3, 4]
        );
    }

    #[test]
    fn extendable_fig2() {
        // a,b,k,l and d,h,j
        assert_eq!(
            extendable(&fig2(), &caps()).unwrap(),
            vec![0, 1, 3, 7, 9, 10, 11]
        );
    }

    #[test]
    fn free_sets() {
        assert!(max_free_set(&Graph::path(3), &caps()).unwrap().is_empty());
        assert_eq!(
            max_free_set(&Graph::path(5), &caps()).unwrap(),
            vec![0, 1, 3, 4]
        );
        assert_eq!(
            max_free_set(&fig2(), &caps()).unwrap(),
            vec![0, 1, 10, 11]
        );
    }

    #[test]
    fn uncovered_sets() {
        assert_eq!(uncovered(&fig2(), &caps()).unwrap(), vec![4]); // e
        assert_eq!(uncovered(&Graph::path(4), &caps()).unwrap(), vec![0, 3]);
        assert!(uncovered(&Graph::complete(3), &caps()).unwrap().is_empty());
    }

    #[test]
    fn cost_examples() {
        let g = fig2();
        assert_eq!(cost(&g, &[], &caps()).unwrap(), 0);
        assert_eq!(cost(&g, &[2, 6], &caps()).unwrap(), 1); // {c,g}
        assert_eq!(cost(&g, &[2, 6, 8, 9], &caps()).unwrap(), 2); // {c,g,i,j}
    }

    #[test]
    fn beneficial_examples() {
        let g = fig2();
        assert!(is_beneficial(&g, &[2, 6], &caps()).unwrap());
        assert!(!is_beneficial(&g, &[2, 6, 8], &caps()).unwrap());
        assert!(is_beneficial(&g, &[2, 6, 8, 9], &caps()).unwrap());
    }

    #[test]
    fn strongly_beneficial_examples() {
        let g = fig2();
        assert!(is_strongly_beneficial(&g, &[2, 6], &caps()).unwrap());
        assert!(!is_strongly_beneficial(&g, &[2, 6, 8, 9], &caps()).unwrap());
        // P3 middle vertex: singleton in Q minus W
        assert!(is_strongly_beneficial(&Graph::path(3), &[1], &caps()).unwrap());
        // not-beneficial input is a precondition error
        assert!(is_strongly_beneficial(&g, &[2, 6, 8], &caps()).is_err());
    }

    #[test]
    fn strongly_beneficial_set_lists() {
        assert!(strongly_beneficial_sets(&Graph::path(5), &caps())
            .unwrap()
            .is_empty());
        // frozen from the cover-form brute force over all subsets of V
        // minus W: besides the middle vertex, the two ends together drop
        // the optimum to zero at cost 1, beating the singleton cover
        assert_eq!(
            strongly_beneficial_sets(&Graph::path(3), &caps()).unwrap(),
            vec![(vec![1], 0), (vec![0, 2], 1)]
        );
        let sets = strongly_beneficial_sets(&fig2(), &caps()).unwrap();
        assert!(sets.contains(&(vec![2, 6], 1)));
        assert!(!sets.iter().any(|(s, _)| s == &vec![2, 6, 8, 9]));
    }

    #[test]
    fn classification_table() {
        use LowerBoundKind::*;
        let checks: Vec<(Graph, Option<LowerBoundKind>)> = vec![
            (Graph::path(2), None),
            (Graph::path(3), Some(ExtendableNotFree)),
            (Graph::path(4), Some(StrongSetMeetsUncovered)),
            (Graph::complete(3), Some(VertexOutsideCore)),
            (Graph::complete(4), None),
            (Graph::complete(5), Some(VertexOutsideCore)),
            (Graph::path(5), None),
            (e_graph(), None),
        ];
        for (g, expect) in checks {
            let verdict = classify_graph(&g, &caps()).unwrap();
            match expect {
                Some(kind) => match verdict {
                    Verdict::NoPolyKernel { kind: got, .. } => assert_eq!(got, kind),
                    other => panic!("expected lower bound, got {other:?}"),
                },
                None => assert_eq!(verdict, Verdict::QuadraticKernel),
            }
        }
    }

    #[test]
    fn classify_p3_witness_is_middle() {
        match classify_graph(&Graph::path(3), &caps()).unwrap() {
            Verdict::NoPolyKernel {
                witness: Witness::Vertex(v),
                ..
            } => assert_eq!(v, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn classify_family_rules() {
        let fam = vec![Graph::path(5)];
        assert_eq!(
            classify_family(&fam, &caps()).unwrap(),
            Verdict::QuadraticKernel
        );
        let fam = vec![Graph::path(5), Graph::path(3)];
        assert!(matches!(
            classify_family(&fam, &caps()).unwrap(),
            Verdict::NoPolyKernel {
                kind: LowerBoundKind::ExtendableNotFree,
                ..
            }
        ));
        assert_eq!(
            classify_family(&[], &caps()).unwrap(),
            Verdict::QuadraticKernel
        );
        // disconnected members are dropped
        let fam = vec![Graph::path(3).disjoint_union(&Graph::path(3))];
        assert_eq!(
            classify_family(&fam, &caps()).unwrap(),
            Verdict::QuadraticKernel
        );
    }

    #[test]
    fn control_pair_p3() {
        let cp = find_control_pair(&Graph::path(3), &caps()).unwrap().unwrap();
        assert_eq!(cp.benefit, vec![1]);
        assert_eq!(cp.control, vec![0]);
        assert!(validate_control_pair(&Graph::path(3), &cp, &caps()).unwrap());
    }

    #[test]
    fn control_pair_absent_for_p5() {
        assert!(find_control_pair(&Graph::path(5), &caps()).unwrap().is_none());
    }

    #[test]
    fn control_pair_fig2() {
        let g = fig2();
        let cp = find_control_pair(&g, &caps()).unwrap().unwrap();
        assert_eq!(cp.benefit.len(), 1);
        assert!([3usize, 7, 9].contains(&cp.benefit[0])); // d, h or j
        assert!(validate_control_pair(&g, &cp, &caps()).unwrap());
    }

    #[test]
    fn control_pairs_for_other_patterns() {
        // P4 hits the uncovered pattern, K3/K5 the outside-core pattern
        for g in [Graph::path(4), Graph::complete(3), Graph::complete(5)] {
            let cp = find_control_pair(&g, &caps()).unwrap().unwrap();
            assert!(validate_control_pair(&g, &cp, &caps()).unwrap());
        }
    }

    #[test]
    fn single_vertex_profile() {
        let p = profile(&Graph::empty(1), &caps()).unwrap();
        assert_eq!(p.meds, 0);
        assert!(p.extendable.is_empty());
        assert!(p.free.is_empty());
        assert_eq!(p.uncovered, vec![0]);
        assert!(p.strongly_beneficial.is_empty());
        assert_eq!(p.verdict, Verdict::QuadraticKernel);
    }

    #[test]
    fn disconnected_input_rejected() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2));
        assert!(extendable(&g, &caps()).is_err());
    }

    #[test]
    fn verdict_isomorphism_invariant() {
        let g = e_graph();
        let perm = vec![5, 2, 0, 3, 1, 4];
        let h = g.relabel(&perm);
        assert_eq!(
            classify_graph(&g, &caps()).unwrap(),
            classify_graph(&h, &caps()).unwrap()
        );
    }
}
