//! Exact edge-dominating-set computation: the decision oracle, optimum
//! witnesses, and full enumeration of minimum solutions.

use crate::graph::Graph;
use crate::{Caps, EdsError, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// A set of edges of some host graph, normalized to (u, v) with u < v,
/// sorted, deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct EdgeSet(Vec<(usize, usize)>);

impl EdgeSet {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        EdgeSet(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Vertices incident with some member edge.
    pub fn covered_vertices(&self) -> BTreeSet<usize> {
        self.0.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    pub fn covered_mask(&self) -> u128 {
        self.0
            .iter()
            .fold(0u128, |acc, &(u, v)| acc | (1 << u) | (1 << v))
    }
}

/// Optimal size plus one optimal witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MedsWitness {
    pub size: usize,
    pub witness: EdgeSet,
}

/// True iff every edge of `g` shares an endpoint with some edge of `f`;
/// equivalently V(g) minus V(f) is independent.
pub fn is_eds(g: &Graph, f: &EdgeSet) -> Result<bool> {
    for &(u, v) in f.edges() {
        if !g.has_edge(u, v) {
            return Err(EdsError::InvalidInput(format!(
                "({u},{v}) is not an edge of the host graph"
            )));
        }
    }
    let covered: BTreeSet<usize> = f.covered_vertices();
    Ok(g.edges()
        .iter()
        .all(|&(u, v)| covered.contains(&u) || covered.contains(&v)))
}

// --- branch and bound core ---------------------------------------------------

/// Solver state over one graph with n <= 64: memoized search on the set of
/// covered vertices. States recombine heavily on dense graphs, which keeps
/// the table far below 2^n in practice.
struct Solver {
    edges: Vec<(usize, usize)>,
    degree: Vec<usize>,
    /// covered-vertex mask -> exact number of additional edges needed
    memo: HashMap<u64, u8>,
}

impl Solver {
    fn new(g: &Graph) -> Self {
        assert!(g.n() <= 64, "solver requires n <= 64");
        Solver {
            edges: g.edges(),
            degree: (0..g.n()).map(|v| g.degree(v)).collect(),
            memo: HashMap::new(),
        }
    }

    /// Greedy maximal matching among undominated edges; any edge of a
    /// solution is incident with at most two of its members, so
    /// ceil(size/2) more edges are always needed.
    fn lower_bound(&self, covered: u64) -> usize {
        let mut used = 0u64;
        let mut size = 0usize;
        for &(u, v) in &self.edges {
            let bits = (1 << u) | (1 << v);
            if covered & bits != 0 || used & bits != 0 {
                continue;
            }
            used |= bits;
            size += 1;
        }
        size.div_ceil(2)
    }

    /// Branch edge: the undominated edge with maximum endpoint-degree sum.
    fn pick_uncovered(&self, covered: u64) -> Option<(usize, usize)> {
        let mut pick = None;
        let mut score = 0usize;
        for &(u, v) in &self.edges {
            if covered & ((1 << u) | (1 << v)) != 0 {
                continue;
            }
            let s = self.degree[u] + self.degree[v];
            if pick.is_none() || s > score {
                pick = Some((u, v));
                score = s;
            }
        }
        pick
    }

    /// Exact number of edges needed on top of `covered`; some solution edge
    /// must be incident with the picked undominated edge.
    fn solve(&mut self, covered: u64) -> usize {
        let Some((u, v)) = self.pick_uncovered(covered) else {
            return 0;
        };
        if let Some(&cached) = self.memo.get(&covered) {
            return cached as usize;
        }
        let mut best = usize::MAX;
        for idx in 0..self.edges.len() {
            let (a, b) = self.edges[idx];
            if a == u || a == v || b == u || b == v {
                let next = covered | (1 << a) | (1 << b);
                // the matching bound can close a branch before recursion
                let lb = self.lower_bound(next);
                if 1 + lb < best {
                    best = best.min(1 + self.solve(next));
                }
            }
        }
        self.memo.insert(covered, best as u8);
        best
    }

    /// Rebuilds one optimal edge set by walking the memo table.
    fn witness(&mut self, mut covered: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        loop {
            let Some((u, v)) = self.pick_uncovered(covered) else {
                return out;
            };
            let need = self.solve(covered);
            let pick = self
                .edges
                .clone()
                .into_iter()
                .find(|&(a, b)| {
                    (a == u || a == v || b == u || b == v)
                        && 1 + self.solve(covered | (1 << a) | (1 << b)) == need
                })
                .expect("an optimal branch exists");
            out.push(pick);
            covered |= (1 << pick.0) | (1 << pick.1);
        }
    }
}

fn solve_component(g: &Graph, limit: usize) -> Option<EdgeSet> {
    if g.m() == 0 {
        return Some(EdgeSet::empty());
    }
    let mut solver = Solver::new(g);
    let size = solver.solve(0);
    if size > limit {
        return None;
    }
    let witness = solver.witness(0);
    debug_assert_eq!(witness.len(), size);
    Some(EdgeSet::new(witness))
}

/// Minimum edge dominating set with witness. MEDS is additive over
/// components, so each component is solved on its own; every component must
/// fit under `caps.exact_solver_cap`.
pub fn meds(g: &Graph, caps: &Caps) -> Result<MedsWitness> {
    let mut size = 0;
    let mut witness = Vec::new();
    for comp in g.connected_components() {
        caps.check("exact solver input", caps.exact_solver_cap, comp.local.n())?;
        caps.check("exact solver input", 64, comp.local.n())?;
        let local = solve_component(&comp.local, usize::MAX).expect("unbounded solve");
        size += local.len();
        witness.extend(
            local
                .edges()
                .iter()
                .map(|&(u, v)| (comp.original_id(u), comp.original_id(v))),
        );
    }
    Ok(MedsWitness {
        size,
        witness: EdgeSet::new(witness),
    })
}

/// True iff MEDS(g) <= k, with a witness on yes. Solves the whole graph,
/// modulator included; `caps.oracle_cap` bounds the total vertex count.
pub fn decide_eds(g: &Graph, k: i64, caps: &Caps) -> Result<Option<EdgeSet>> {
    caps.check("decision oracle input", caps.oracle_cap, g.n())?;
    if k < 0 {
        return Ok(None);
    }
    let k = k as usize;
    let mut total = 0usize;
    let mut witness = Vec::new();
    for comp in g.connected_components() {
        caps.check("decision oracle input", 64, comp.local.n())?;
        let Some(local) = solve_component(&comp.local, k.saturating_sub(total)) else {
            return Ok(None);
        };
        total += local.len();
        if total > k {
            return Ok(None);
        }
        witness.extend(
            local
                .edges()
                .iter()
                .map(|&(u, v)| (comp.original_id(u), comp.original_id(v))),
        );
    }
    Ok(Some(EdgeSet::new(witness)))
}

// --- enumeration -------------------------------------------------------------

/// All edge dominating sets of minimum size, deduplicated, in sorted order.
pub fn enumerate_min_eds(g: &Graph, caps: &Caps) -> Result<Vec<EdgeSet>> {
    caps.check("minimum-solution enumeration", caps.enumeration_cap, g.n())?;
    caps.check("minimum-solution enumeration", 64, g.n())?;
    let opt = meds(g, caps)?.size;
    if g.m() == 0 {
        return Ok(vec![EdgeSet::empty()]);
    }
    let edges = g.edges();
    let mut found: BTreeSet<EdgeSet> = BTreeSet::new();
    // branch on the first undominated edge; every solution must contain an
    // incident edge, so recursing over all of them reaches every optimum
    fn recurse(
        edges: &[(usize, usize)],
        opt: usize,
        chosen: &mut Vec<(usize, usize)>,
        covered: u64,
        found: &mut BTreeSet<EdgeSet>,
    ) {
        let uncovered = edges
            .iter()
            .find(|&&(u, v)| covered & ((1 << u) | (1 << v)) == 0);
        let Some(&(u, v)) = uncovered else {
            if chosen.len() == opt {
                found.insert(EdgeSet::new(chosen.iter().copied()));
            }
            return;
        };
        if chosen.len() == opt {
            return;
        }
        // matching lower bound on the remaining demand
        let mut used = 0u64;
        let mut matching = 0usize;
        for &(a, b) in edges {
            let bits = (1 << a) | (1 << b);
            if covered & bits == 0 && used & bits == 0 {
                used |= bits;
                matching += 1;
            }
        }
        if chosen.len() + matching.div_ceil(2) > opt {
            return;
        }
        for &(a, b) in edges {
            if a == u || a == v || b == u || b == v {
                if chosen.contains(&(a, b)) {
                    continue;
                }
                chosen.push((a, b));
                recurse(edges, opt, chosen, covered | (1 << a) | (1 << b), found);
                chosen.pop();
            }
        }
    }
    recurse(&edges, opt, &mut Vec::new(), 0, &mut found);
    Ok(found.into_iter().collect())
}

// --- deletion-mask memo --------------------------------------------------------

/// Memoizes MEDS(H - Y) for a fixed host H, keyed by the bitmask of Y.
/// Confined to one thread; callers create one per host.
pub struct MedsCache {
    host: Graph,
    caps: Caps,
    table: HashMap<u64, usize>,
}

impl MedsCache {
    pub fn new(host: &Graph, caps: &Caps) -> Result<Self> {
        caps.check("deletion memo host", caps.enumeration_cap, host.n())?;
        Ok(MedsCache {
            host: host.clone(),
            caps: *caps,
            table: HashMap::new(),
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// MEDS of the host with the masked vertices deleted.
    pub fn meds_minus(&mut self, mask: u64) -> usize {
        if let Some(&v) = self.table.get(&mask) {
            return v;
        }
        let remove: Vec<usize> = (0..self.host.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let (sub, _) = self.host.delete_vertices(&remove).unwrap();
        let value = meds(&sub, &self.caps).expect("host under cap").size;
        self.table.insert(mask, value);
        value
    }

    pub fn meds_host(&mut self) -> usize {
        self.meds_minus(0)
    }

    /// cost(Y) = |Y| + MEDS(H - Y) - MEDS(H).
    pub fn cost(&mut self, mask: u64) -> usize {
        let base = self.meds_host();
        let removed = mask.count_ones() as usize;
        removed + self.meds_minus(mask) - base
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn fig2() -> Graph {
        // 12 vertices a..l = 0..11
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

    #[test]
    fn is_eds_p3_middle_edge() {
        let g = Graph::path(3);
        assert!(is_eds(&g, &EdgeSet::new([(0, 1)])).unwrap());
        assert!(is_eds(&g, &EdgeSet::new([(1, 2)])).unwrap());
    }

    #[test]
    fn is_eds_p5_two_middle_edges() {
        let g = Graph::path(5);
        assert!(is_eds(&g, &EdgeSet::new([(1, 2), (2, 3)])).unwrap());
    }

    #[test]
    fn is_eds_fig2_wavy_edges() {
        // {a,b}, {f,k}, {c,h}, {i,j}
        let f = EdgeSet::new([(0, 1), (5, 10), (2, 7), (8, 9)]);
        assert!(is_eds(&fig2(), &f).unwrap());
    }

    #[test]
    fn is_eds_rejects_non_edge() {
        let g = Graph::path(3);
        assert!(is_eds(&g, &EdgeSet::new([(0, 2)])).is_err());
    }

    #[test]
    fn meds_small_paths() {
        assert_eq!(meds(&Graph::path(3), &caps()).unwrap().size, 1);
        assert_eq!(meds(&Graph::path(5), &caps()).unwrap().size, 2);
        let w = meds(&Graph::path(6), &caps()).unwrap();
        assert_eq!(w.size, 2);
        assert!(is_eds(&Graph::path(6), &w.witness).unwrap());
    }

    #[test]
    fn meds_fig2_is_4() {
        let g = fig2();
        let w = meds(&g, &caps()).unwrap();
        assert_eq!(w.size, 4);
        assert!(is_eds(&g, &w.witness).unwrap());
    }

    #[test]
    fn meds_fig2_minus_cgij_is_2() {
        let g = fig2();
        let (h, _) = g.delete_vertices(&[2, 6, 8, 9]).unwrap();
        assert_eq!(meds(&h, &caps()).unwrap().size, 2);
        let (h2, _) = g.delete_vertices(&[2, 6]).unwrap();
        assert_eq!(meds(&h2, &caps()).unwrap().size, 3);
    }

    #[test]
    fn meds_additive_over_components() {
        let g = Graph::path(5).disjoint_union(&Graph::complete(3));
        assert_eq!(meds(&g, &caps()).unwrap().size, 2 + 1);
    }

    #[test]
    fn decide_p6() {
        let g = Graph::path(6);
        assert!(decide_eds(&g, 2, &caps()).unwrap().is_some());
        assert!(decide_eds(&g, 1, &caps()).unwrap().is_none());
        assert!(decide_eds(&Graph::empty(0), 0, &caps()).unwrap().is_some());
    }

    #[test]
    fn decide_negative_budget_is_no() {
        assert!(decide_eds(&Graph::path(3), -1, &caps()).unwrap().is_none());
        assert!(decide_eds(&Graph::empty(2), -1, &caps()).unwrap().is_none());
    }

    #[test]
    fn enumerate_p3_p4_k3() {
        let p3 = enumerate_min_eds(&Graph::path(3), &caps()).unwrap();
        assert_eq!(p3, vec![EdgeSet::new([(0, 1)]), EdgeSet::new([(1, 2)])]);
        // brute-force oracle for P4: try each single edge
        let p4 = Graph::path(4);
        let singles: Vec<EdgeSet> = p4
            .edges()
            .into_iter()
            .map(|e| EdgeSet::new([e]))
            .filter(|f| is_eds(&p4, f).unwrap())
            .collect();
        assert_eq!(singles, vec![EdgeSet::new([(1, 2)])]);
        assert_eq!(enumerate_min_eds(&p4, &caps()).unwrap(), singles);
        assert_eq!(enumerate_min_eds(&Graph::complete(3), &caps()).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_matches_exhaustive_search() {
        // cross-check on every graph that shows up in the worked examples
        for g in [
            Graph::path(2),
            Graph::path(4),
            Graph::path(5),
            Graph::path(6),
            Graph::complete(4),
            Graph::cycle(5),
            Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap(),
        ] {
            let opt = meds(&g, &caps()).unwrap().size;
            let edges = g.edges();
            let mut expect = BTreeSet::new();
            for mask in 0u64..1 << edges.len() {
                if (mask.count_ones() as usize) != opt {
                    continue;
                }
                let f = EdgeSet::new(
                    edges
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &e)| e),
                );
                if is_eds(&g, &f).unwrap() {
                    expect.insert(f);
                }
                // no smaller solution exists
            }
            for mask in 0u64..1 << edges.len() {
                if (mask.count_ones() as usize) < opt {
                    let f = EdgeSet::new(
                        edges
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &e)| e),
                    );
                    assert!(!is_eds(&g, &f).unwrap());
                }
            }
            let got: BTreeSet<EdgeSet> =
                enumerate_min_eds(&g, &caps()).unwrap().into_iter().collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn empty_graph_has_empty_solution() {
        let g = Graph::empty(3);
        assert_eq!(meds(&g, &caps()).unwrap().size, 0);
        assert_eq!(
            enumerate_min_eds(&g, &caps()).unwrap(),
            vec![EdgeSet::empty()]
        );
    }

    #[test]
    fn cap_errors() {
        let tight = Caps {
            oracle_cap: 3,
            ..Caps::default()
        };
        assert!(matches!(
            decide_eds(&Graph::path(4), 2, &tight),
            Err(EdsError::CapExceeded { .. })
        ));
    }

    #[test]
    fn meds_cache_matches_direct() {
        let g = fig2();
        let mut cache = MedsCache::new(&g, &caps()).unwrap();
        assert_eq!(cache.meds_host(), 4);
        // c, g deleted -> 3 ; cost 1
        let mask = (1 << 2) | (1 << 6);
        assert_eq!(cache.meds_minus(mask), 3);
        assert_eq!(cache.cost(mask), 1);
        let mask4 = mask | (1 << 8) | (1 << 9);
        assert_eq!(cache.cost(mask4), 2);
    }
}
