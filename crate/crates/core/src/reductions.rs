//! Constructive instance generators: the cross-compositions from
//! Multicolored Clique, the satisfiability and vertex-cover reductions, and
//! the seeded random-instance supply, plus brute-force solvers for the
//! source problems.

use crate::exact::{meds, EdgeSet, MedsCache};
use crate::graph::Graph;
use crate::instance::ModInstance;
use crate::profile::{classify_graph, ControlPair, Verdict};
use crate::{Caps, EdsError, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Multicolored Clique instance: find a k-clique with one vertex per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccInstance {
    pub graph: Graph,
    pub k: usize,
    pub classes: Vec<Vec<usize>>,
}

impl MccInstance {
    pub fn new(graph: Graph, classes: Vec<Vec<usize>>) -> Result<Self> {
        let k = classes.len();
        let mut seen = vec![false; graph.n()];
        let size = classes.first().map_or(0, |c| c.len());
        for class in &classes {
            if class.len() != size {
                return Err(EdsError::InvalidInput(
                    "color classes must have equal size".into(),
                ));
            }
            for &v in class {
                if v >= graph.n() || seen[v] {
                    return Err(EdsError::InvalidInput(
                        "classes must partition the vertex set".into(),
                    ));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(EdsError::InvalidInput(
                "classes must partition the vertex set".into(),
            ));
        }
        if k > graph.n() {
            return Err(EdsError::InvalidInput("more classes than vertices".into()));
        }
        Ok(MccInstance { graph, k, classes })
    }

    pub fn class_size(&self) -> usize {
        self.classes.first().map_or(0, |c| c.len())
    }

    fn class_of(&self) -> Vec<usize> {
        let mut cls = vec![usize::MAX; self.graph.n()];
        for (ci, class) in self.classes.iter().enumerate() {
            for &v in class {
                cls[v] = ci;
            }
        }
        cls
    }

    /// Edges of each cross-class pair (p, q), p < q, in a fixed order.
    fn cross_edges(&self) -> Result<Vec<((usize, usize), Vec<(usize, usize)>)>> {
        let cls = self.class_of();
        let mut buckets: Vec<((usize, usize), Vec<(usize, usize)>)> = Vec::new();
        for p in 0..self.k {
            for q in p + 1..self.k {
                buckets.push(((p, q), Vec::new()));
            }
        }
        for (u, v) in self.graph.edges() {
            let (a, b) = (cls[u].min(cls[v]), cls[u].max(cls[v]));
            if a == b {
                return Err(EdsError::InvalidInput(format!(
                    "edge ({u},{v}) lies inside one color class; drop it first"
                )));
            }
            let idx = buckets
                .iter()
                .position(|&((p, q), _)| (p, q) == (a, b))
                .unwrap();
            buckets[idx].1.push((u, v));
        }
        Ok(buckets)
    }
}

/// Exhaustive multicolored-clique search over class transversals.
pub fn solve_mcc_brute(inst: &MccInstance) -> Result<bool> {
    let n = inst.class_size();
    if n * inst.k > 16 {
        return Err(EdsError::CapExceeded {
            what: "multicolored clique brute force",
            limit: 16,
            actual: n * inst.k,
        });
    }
    if inst.k == 0 {
        return Ok(true);
    }
    let mut pick = vec![0usize; inst.k];
    loop {
        let verts: Vec<usize> = (0..inst.k).map(|c| inst.classes[c][pick[c]]).collect();
        let clique = (0..inst.k)
            .all(|a| (a + 1..inst.k).all(|b| inst.graph.has_edge(verts[a], verts[b])));
        if clique {
            return Ok(true);
        }
        let mut c = 0;
        loop {
            if c == inst.k {
                return Ok(false);
            }
            pick[c] += 1;
            if pick[c] < n {
                break;
            }
            pick[c] = 0;
            c += 1;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComposeManifest {
    pub reduction: &'static str,
    pub inputs: usize,
    pub dropped: Vec<usize>,
    pub used: usize,
    pub s: usize,
    pub x_size: usize,
    pub k_prime: i64,
    pub component_count: usize,
    pub graph_n: usize,
    pub graph_m: usize,
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            n: 0,
            edges: Vec::new(),
        }
    }
    fn block(&mut self, size: usize) -> Vec<usize> {
        let out: Vec<usize> = (self.n..self.n + size).collect();
        self.n += size;
        out
    }
    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }
    fn finish(self) -> Result<Graph> {
        Graph::new(self.n, &self.edges)
    }
}

/// Checks pairwise equivalence (same k, same classes), drops inputs with an
/// empty cross-class edge bucket, errors when nothing remains.
fn prepare_inputs<'a>(
    instances: &'a [MccInstance],
) -> Result<(Vec<&'a MccInstance>, Vec<usize>, usize, usize)> {
    let first = instances
        .first()
        .ok_or_else(|| EdsError::InvalidInput("composition needs at least one input".into()))?;
    for inst in instances {
        if inst.k != first.k || inst.classes != first.classes {
            return Err(EdsError::InvalidInput(
                "composition inputs must share k and color classes".into(),
            ));
        }
    }
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        let trivial_no = inst.cross_edges()?.iter().any(|(_, es)| es.is_empty());
        if trivial_no {
            dropped.push(i);
        } else {
            kept.push(inst);
        }
    }
    if kept.is_empty() {
        return Err(EdsError::InvalidInput(
            "every input is a trivial no instance (some empty cross-class edge set)".into(),
        ));
    }
    Ok((kept, dropped, first.k, first.class_size()))
}

/// Lexicographically i-th subset of size `size` from 0..pool.
fn nth_subset(pool: usize, size: usize, mut index: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(size);
    let mut start = 0;
    let mut remaining = size;
    while remaining > 0 {
        for candidate in start..pool {
            let slots = pool - candidate - 1;
            let below = binomial(slots, remaining - 1);
            if index < below {
                out.push(candidate);
                start = candidate + 1;
                remaining -= 1;
                break;
            }
            index -= below;
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Cross-composition into a path-of-three component instance: one path per
/// input edge, instance selection through subsets of W, clique selection
/// through T and S.
pub fn compose_p3(instances: &[MccInstance]) -> Result<(ModInstance, ComposeManifest)> {
    let (kept, dropped, k, n) = prepare_inputs(instances)?;
    let mut padded: Vec<&MccInstance> = kept.clone();
    while !padded.len().is_power_of_two() {
        padded.push(*padded.last().unwrap());
    }
    let t = padded.len();
    let s = t.trailing_zeros() as usize;

    let mut b = Builder::new();
    let v_block = b.block(k * n);
    let t_block = b.block(k);
    let tp_block = b.block(k);
    let z_block = b.block(s);
    let zp_block = b.block(s);
    let w_block = b.block(2 * s);
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|p| (p + 1..k).map(move |q| (p, q)))
        .collect();
    let s_block = b.block(pairs.len());
    let sp_block = b.block(pairs.len());

    // the shared selection wiring
    for j in 0..k {
        b.edge(t_block[j], tp_block[j]);
        for i in 0..n {
            b.edge(t_block[j], v_block[j * n + i]);
        }
    }
    for a in 0..s {
        b.edge(z_block[a], zp_block[a]);
        for &w in &w_block {
            b.edge(z_block[a], w);
        }
    }
    for (pi, _) in pairs.iter().enumerate() {
        b.edge(s_block[pi], sp_block[pi]);
    }

    // positional map: vertex of the shared class structure -> V-block id
    let class_position = position_map(padded[0], k, n);

    let mut total_edges = 0usize;
    let mut first_path = usize::MAX;
    for (i, inst) in padded.iter().enumerate() {
        let w_i: Vec<usize> = nth_subset(2 * s, s, i).iter().map(|&x| w_block[x]).collect();
        for ((p, q), es) in inst.cross_edges()? {
            let pi = pairs.iter().position(|&pq| pq == (p, q)).unwrap();
            for (x, y) in es {
                total_edges += 1;
                let path = b.block(3); // u1, mid, u2
                if first_path == usize::MAX {
                    first_path = path[0];
                }
                b.edge(path[0], path[1]);
                b.edge(path[1], path[2]);
                b.edge(path[0], v_block[class_position[x]]);
                b.edge(path[0], v_block[class_position[y]]);
                for &w in &w_i {
                    b.edge(path[0], w);
                }
                b.edge(path[1], s_block[pi]);
            }
        }
    }

    let graph = b.finish()?;
    let modulator: Vec<usize> = (0..first_path.min(graph.n())).collect();
    let k_prime = (k + s + total_edges) as i64;
    let inst = ModInstance::new(graph, k_prime, modulator, vec![Graph::path(3)])?;
    let manifest = ComposeManifest {
        reduction: "p3",
        inputs: instances.len(),
        dropped,
        used: t,
        s,
        x_size: inst.modulator.len(),
        k_prime,
        component_count: total_edges,
        graph_n: inst.graph.n(),
        graph_m: inst.graph.m(),
    };
    Ok((inst, manifest))
}

fn position_map(inst: &MccInstance, k: usize, n: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; inst.graph.n()];
    for p in 0..k {
        for i in 0..n {
            pos[inst.classes[p][i]] = p * n + i;
        }
    }
    pos
}

/// Generalized composition: one H copy per input edge, the control set wired
/// to the instance-selection and clique-selection vertices, the beneficial
/// set matched into per-pair budget vertices.
pub fn compose_control_pair(
    h: &Graph,
    cp: &ControlPair,
    instances: &[MccInstance],
    caps: &Caps,
) -> Result<(ModInstance, ComposeManifest)> {
    if !crate::profile::validate_control_pair(h, cp, caps)? {
        return Err(EdsError::InvalidInput(
            "the pair fails the control-pair conditions".into(),
        ));
    }
    let meds_h = meds(h, caps)?.size;
    let mut cache = MedsCache::new(h, caps)?;
    let b_mask: u64 = cp.benefit.iter().fold(0, |a, &v| a | 1 << v);
    let cost_b = cache.cost(b_mask);
    let d = cp.benefit.len();

    let (kept, dropped, k, n) = prepare_inputs(instances)?;
    let mut padded: Vec<&MccInstance> = kept.clone();
    while !padded.len().is_power_of_two() {
        padded.push(*padded.last().unwrap());
    }
    let t = padded.len();
    let s = t.trailing_zeros() as usize;

    let mut b = Builder::new();
    let v_block = b.block(k * n);
    let t_block = b.block(k);
    let tp_block = b.block(k);
    let z_block = b.block(s);
    let zp_block = b.block(s);
    let w_block = b.block(2 * s);
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|p| (p + 1..k).map(move |q| (p, q)))
        .collect();
    // S_{p,q} and S'_{p,q} have one vertex per member of the beneficial set
    let s_blocks: Vec<Vec<usize>> = pairs.iter().map(|_| b.block(d)).collect();
    let sp_blocks: Vec<Vec<usize>> = pairs.iter().map(|_| b.block(d)).collect();

    for j in 0..k {
        b.edge(t_block[j], tp_block[j]);
        for i in 0..n {
            b.edge(t_block[j], v_block[j * n + i]);
        }
    }
    for a in 0..s {
        b.edge(z_block[a], zp_block[a]);
        for &w in &w_block {
            b.edge(z_block[a], w);
        }
    }
    for (pi, _) in pairs.iter().enumerate() {
        for j in 0..d {
            b.edge(s_blocks[pi][j], sp_blocks[pi][j]);
        }
    }

    let class_position = position_map(padded[0], k, n);
    let h_edges = h.edges();
    let mut total_edges = 0usize;
    let mut first_copy = usize::MAX;
    for (i, inst) in padded.iter().enumerate() {
        let w_i: Vec<usize> = nth_subset(2 * s, s, i).iter().map(|&x| w_block[x]).collect();
        for ((p, q), es) in inst.cross_edges()? {
            let pi = pairs.iter().position(|&pq| pq == (p, q)).unwrap();
            for (x, y) in es {
                total_edges += 1;
                let copy = b.block(h.n());
                if first_copy == usize::MAX {
                    first_copy = copy[0];
                }
                for &(a, c) in &h_edges {
                    b.edge(copy[a], copy[c]);
                }
                for &cv in &cp.control {
                    for &w in &w_i {
                        b.edge(copy[cv], w);
                    }
                    b.edge(copy[cv], v_block[class_position[x]]);
                    b.edge(copy[cv], v_block[class_position[y]]);
                }
                for (j, &bv) in cp.benefit.iter().enumerate() {
                    b.edge(copy[bv], s_blocks[pi][j]);
                }
            }
        }
    }

    let graph = b.finish()?;
    let modulator: Vec<usize> = (0..first_copy.min(graph.n())).collect();
    let k_prime = (s + k + total_edges * meds_h + pairs.len() * cost_b) as i64;
    let inst = ModInstance::new(graph, k_prime, modulator, vec![h.clone()])?;
    let manifest = ComposeManifest {
        reduction: "control",
        inputs: instances.len(),
        dropped,
        used: t,
        s,
        x_size: inst.modulator.len(),
        k_prime,
        component_count: total_edges,
        graph_n: inst.graph.n(),
        graph_m: inst.graph.m(),
    };
    Ok((inst, manifest))
}

/// Composition of cost t^(1/d): selection gadgets choose one index per
/// dimension, clique gadgets force the clique edges of the selected
/// instance, H copies pay for them through the beneficial set.
pub fn compose_cost(
    h: &Graph,
    benefit: &[usize],
    instances: &[MccInstance],
    caps: &Caps,
) -> Result<(ModInstance, ComposeManifest)> {
    match classify_graph(h, caps)? {
        Verdict::PolyKernel { .. } => {}
        other => {
            return Err(EdsError::Precondition(format!(
                "cost composition requires a poly-kernel component graph, got {other:?}"
            )))
        }
    }
    let mut sorted_benefit = benefit.to_vec();
    sorted_benefit.sort_unstable();
    let strong = crate::profile::strongly_beneficial_sets(h, caps)?;
    let Some(&(_, cost_b)) = strong.iter().find(|(set, _)| *set == sorted_benefit) else {
        return Err(EdsError::InvalidInput(
            "the given set is not strongly beneficial in the component graph".into(),
        ));
    };
    let d = sorted_benefit.len();
    let meds_h = meds(h, caps)?.size;

    let (kept, dropped, k, n) = prepare_inputs(instances)?;
    // least odd s with t <= s^d
    let t_input = kept.len();
    let mut s = 1usize;
    while s.pow(d as u32) < t_input || s % 2 == 0 {
        s += 1;
    }
    let t = s.pow(d as u32);
    let mut padded: Vec<&MccInstance> = kept.clone();
    while padded.len() < t {
        padded.push(*padded.last().unwrap());
    }

    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|p| (p + 1..k).map(move |q| (p, q)))
        .collect();
    let kk2 = pairs.len();
    let sel_part = 2 * kk2 * d; // size of each X'_{i,j} / T'_j part

    let mut b = Builder::new();
    // d-1 selection gadgets over the X_{i,j} sets
    let mut x_sets: Vec<Vec<Vec<usize>>> = Vec::new(); // [i][j] -> block
    let mut xp_sets: Vec<Vec<Vec<usize>>> = Vec::new();
    for _ in 0..d.saturating_sub(1) {
        let xs: Vec<Vec<usize>> = (0..s).map(|_| b.block(kk2)).collect();
        let xps: Vec<Vec<usize>> = (0..s).map(|_| b.block(sel_part)).collect();
        x_sets.push(xs);
        xp_sets.push(xps);
    }
    // s clique gadgets
    let mut t_sets: Vec<Vec<Vec<usize>>> = Vec::new(); // [j][i] -> T_{j,i}
    let mut z_sets: Vec<Vec<Vec<usize>>> = Vec::new(); // [j][v] -> Z_{j,v}
    let mut zp_sets: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut y_sets: Vec<Vec<usize>> = Vec::new(); // [j] -> Y_j
    let mut y_index: Vec<std::collections::HashMap<(usize, usize), usize>> = Vec::new();
    for _ in 0..s {
        let ts: Vec<Vec<usize>> = (0..k).map(|_| b.block(k - 1)).collect();
        let zs: Vec<Vec<usize>> = (0..k * n).map(|_| b.block(k - 1)).collect();
        let zps: Vec<Vec<usize>> = (0..k * n).map(|_| b.block(k - 1)).collect();
        let y = b.block(kk2 * n * n);
        let mut index = std::collections::HashMap::new();
        let mut slot = 0;
        for (p, q) in &pairs {
            for ip in 0..n {
                for iq in 0..n {
                    index.insert((p * n + ip, q * n + iq), y[slot]);
                    slot += 1;
                }
            }
        }
        t_sets.push(ts);
        z_sets.push(zs);
        zp_sets.push(zps);
        y_sets.push(y);
        y_index.push(index);
    }
    // last selection gadget over the T_j sets
    let tp_sets: Vec<Vec<usize>> = (0..s).map(|_| b.block(sel_part)).collect();

    // selection gadget wiring
    for i in 0..d.saturating_sub(1) {
        for j in 0..s {
            for &xp in &xp_sets[i][j] {
                for &x in &x_sets[i][j] {
                    b.edge(xp, x);
                }
            }
            for j2 in j + 1..s {
                for &a in &xp_sets[i][j] {
                    for &c in &xp_sets[i][j2] {
                        b.edge(a, c);
                    }
                }
            }
        }
    }
    for j in 0..s {
        for &tp in &tp_sets[j] {
            for ti in &t_sets[j] {
                for &tv in ti {
                    b.edge(tp, tv);
                }
            }
        }
        for j2 in j + 1..s {
            for &a in &tp_sets[j] {
                for &c in &tp_sets[j2] {
                    b.edge(a, c);
                }
            }
        }
    }
    // clique gadget wiring
    for j in 0..s {
        for v in 0..k * n {
            let class = v / n;
            for &z in &z_sets[j][v] {
                for &zp in &zp_sets[j][v] {
                    b.edge(z, zp);
                }
                for u in 0..k * n {
                    if u / n != class {
                        let key = if class < u / n { (v, u) } else { (u, v) };
                        b.edge(z, y_index[j][&key]);
                    }
                }
            }
            for &tv in &t_sets[j][class] {
                for &zp in &zp_sets[j][v] {
                    b.edge(tv, zp);
                }
            }
        }
    }

    // H copies per instance edge, indexed by vectors in [s]^d
    let class_position = position_map(padded[0], k, n);
    let h_edges = h.edges();
    let mut total_edges = 0usize;
    let mut first_copy = usize::MAX;
    for (idx, inst) in padded.iter().enumerate() {
        // digits of idx in base s: h_vec[i] selects the i-th gadget index
        let mut rem = idx;
        let h_vec: Vec<usize> = (0..d)
            .map(|_| {
                let digit = rem % s;
                rem /= s;
                digit
            })
            .collect();
        for ((p, q), es) in inst.cross_edges()? {
            let pi = pairs.iter().position(|&pq| pq == (p, q)).unwrap();
            for (x, y) in es {
                total_edges += 1;
                let copy = b.block(h.n());
                if first_copy == usize::MAX {
                    first_copy = copy[0];
                }
                for &(a, c) in &h_edges {
                    b.edge(copy[a], copy[c]);
                }
                for (i, &bv) in sorted_benefit.iter().enumerate().take(d - 1) {
                    b.edge(copy[bv], x_sets[i][h_vec[i]][pi]);
                }
                let (px, py) = (class_position[x], class_position[y]);
                let key = if px / n < py / n { (px, py) } else { (py, px) };
                b.edge(copy[sorted_benefit[d - 1]], y_index[h_vec[d - 1]][&key]);
            }
        }
    }

    let graph = b.finish()?;
    let modulator: Vec<usize> = (0..first_copy.min(graph.n())).collect();
    let k_prime = (d * 2 * kk2 * d * (s - 1) / 2
        + s * k * n * (k - 1)
        + total_edges * meds_h
        + kk2 * cost_b) as i64;
    let inst = ModInstance::new(graph, k_prime, modulator, vec![h.clone()])?;
    let manifest = ComposeManifest {
        reduction: "cost",
        inputs: instances.len(),
        dropped,
        used: t,
        s,
        x_size: inst.modulator.len(),
        k_prime,
        component_count: total_edges,
        graph_n: inst.graph.n(),
        graph_m: inst.graph.m(),
    };
    Ok((inst, manifest))
}

// --- satisfiability ------------------------------------------------------------

/// 3-CNF formula: clauses of exactly three literals (variable, positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub n_vars: usize,
    pub clauses: Vec<[(usize, bool); 3]>,
}

impl CnfFormula {
    pub fn new(n_vars: usize, clauses: Vec<[(usize, bool); 3]>) -> Result<Self> {
        for clause in &clauses {
            for &(v, _) in clause {
                if v >= n_vars {
                    return Err(EdsError::InvalidInput(format!(
                        "literal references variable {v} outside 0..{n_vars}"
                    )));
                }
            }
        }
        Ok(CnfFormula { n_vars, clauses })
    }
}

/// Minimal DIMACS subset: `c` comments, `p cnf <n> <m>`, then m lines with
/// exactly three nonzero literals terminated by 0.
pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
    let (line_no, header) = lines.next().ok_or(EdsError::Parse {
        line: 1,
        msg: "missing cnf header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        ["p", "cnf", n, m] => (
            n.parse::<usize>().map_err(|_| EdsError::Parse {
                line: line_no,
                msg: "malformed variable count".into(),
            })?,
            m.parse::<usize>().map_err(|_| EdsError::Parse {
                line: line_no,
                msg: "malformed clause count".into(),
            })?,
        ),
        _ => {
            return Err(EdsError::Parse {
                line: line_no,
                msg: format!("malformed header {header:?}"),
            })
        }
    };
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(EdsError::Parse {
            line: 0,
            msg: "missing clause lines".into(),
        })?;
        let lits: Vec<i64> = line
            .split_whitespace()
            .map(|f| {
                f.parse::<i64>().map_err(|_| EdsError::Parse {
                    line: line_no,
                    msg: format!("malformed literal {f:?}"),
                })
            })
            .collect::<Result<_>>()?;
        match lits.as_slice() {
            [a, b, c, 0] => {
                let mut clause = [(0usize, false); 3];
                for (slot, &l) in clause.iter_mut().zip([a, b, c]) {
                    let var = l.unsigned_abs() as usize;
                    if var == 0 || var > n {
                        return Err(EdsError::Parse {
                            line: line_no,
                            msg: format!("literal {l} outside 1..={n}"),
                        });
                    }
                    *slot = (var - 1, l > 0);
                }
                clauses.push(clause);
            }
            _ => {
                return Err(EdsError::Parse {
                    line: line_no,
                    msg: format!("expected exactly three literals and a 0, got {line:?}"),
                })
            }
        }
    }
    CnfFormula::new(n, clauses)
}

/// Satisfiability-to-domination gadget graph: four vertices per variable,
/// eight per clause, with a recorded perfect matching of size 2n + 4m and
/// decision target n + 2m.
pub fn sat_to_eds(f: &CnfFormula) -> Result<(Graph, EdgeSet, i64)> {
    let n = f.n_vars;
    let m = f.clauses.len();
    let mut b = Builder::new();
    let mut matching = Vec::new();
    // variable gadget: positive, negative, coupler, pendant
    for _ in 0..n {
        let block = b.block(4);
        let (pos, neg, c, d) = (block[0], block[1], block[2], block[3]);
        b.edge(pos, neg);
        b.edge(pos, c);
        b.edge(neg, c);
        b.edge(c, d);
        matching.push((pos, neg));
        matching.push((c, d));
    }
    // clause gadget: a-triangle, private b partners, collector t, pendant s
    for clause in &f.clauses {
        let block = b.block(8);
        let (a, bs, t, sp) = (&block[0..3], &block[3..6], block[6], block[7]);
        b.edge(a[0], a[1]);
        b.edge(a[0], a[2]);
        b.edge(a[1], a[2]);
        for i in 0..3 {
            b.edge(a[i], bs[i]);
            b.edge(t, bs[i]);
            matching.push((a[i], bs[i]));
        }
        b.edge(t, sp);
        matching.push((t, sp));
        for (i, &(var, positive)) in clause.iter().enumerate() {
            let lit = 4 * var + if positive { 0 } else { 1 };
            b.edge(lit, a[i]);
        }
    }
    let g = b.finish()?;
    let matching = EdgeSet::new(matching);
    debug_assert_eq!(matching.len(), 2 * n + 4 * m);
    Ok((g, matching, (n + 2 * m) as i64))
}

/// Exhaustive satisfiability check, up to 20 variables.
pub fn solve_3sat_brute(f: &CnfFormula) -> Result<bool> {
    if f.n_vars > 20 {
        return Err(EdsError::CapExceeded {
            what: "satisfiability brute force",
            limit: 20,
            actual: f.n_vars,
        });
    }
    for assignment in 0u64..1 << f.n_vars {
        let ok = f.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&(v, positive)| (assignment >> v & 1 == 1) == positive)
        });
        if ok {
            return Ok(true);
        }
    }
    Ok(f.clauses.is_empty())
}

/// Vertex-cover-to-domination reduction: k pendant pairs, each pendant
/// center adjacent to the whole original vertex set.
pub fn vc_to_eds(g: &Graph, k: usize) -> Result<(Graph, i64)> {
    if k > g.n() {
        return Err(EdsError::InvalidInput(format!(
            "cover budget {k} exceeds vertex count {}",
            g.n()
        )));
    }
    let n = g.n();
    let mut b = Builder::new();
    b.block(n);
    for (u, v) in g.edges() {
        b.edge(u, v);
    }
    let centers = b.block(k);
    let pendants = b.block(k);
    for i in 0..k {
        b.edge(centers[i], pendants[i]);
        for v in 0..n {
            b.edge(centers[i], v);
        }
    }
    Ok((b.finish()?, k as i64))
}

// --- random instance supply ------------------------------------------------------

/// Seeded random modulator instance: `x_size` modulator vertices with
/// internal edges at probability 1/2, `n_components` components drawn
/// uniformly from the family, each cross edge included at `density`; k is
/// the component optimum plus a uniform slack up to `x_size`.
pub fn gen_random_instance(
    family: &[Graph],
    x_size: usize,
    n_components: usize,
    density: f64,
    seed: u64,
    caps: &Caps,
) -> Result<ModInstance> {
    if !(0.0..=1.0).contains(&density) {
        return Err(EdsError::InvalidInput(format!(
            "density {density} outside [0,1]"
        )));
    }
    if family.is_empty() {
        return Err(EdsError::InvalidInput("family must be nonempty".into()));
    }
    for member in family {
        caps.check("family member", caps.max_component_size, member.n())?;
        if !member.is_connected() {
            return Err(EdsError::InvalidInput(
                "random instances draw connected family members".into(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new();
    let modulator = b.block(x_size);
    for i in 0..x_size {
        for j in i + 1..x_size {
            if rng.gen_bool(0.5) {
                b.edge(modulator[i], modulator[j]);
            }
        }
    }
    let member_meds: Vec<usize> = family
        .iter()
        .map(|h| meds(h, caps).map(|w| w.size))
        .collect::<Result<_>>()?;
    let mut rest_opt = 0usize;
    for _ in 0..n_components {
        let pick = rng.gen_range(0..family.len());
        let member = &family[pick];
        rest_opt += member_meds[pick];
        let block = b.block(member.n());
        for (u, v) in member.edges() {
            b.edge(block[u], block[v]);
        }
        for &x in &modulator {
            for &v in &block {
                if rng.gen_bool(density) {
                    b.edge(x, v);
                }
            }
        }
    }
    let k = rest_opt as i64 + rng.gen_range(0..=x_size) as i64;
    ModInstance::new(b.finish()?, k, modulator, family.to_vec())
}

/// Seeded random Multicolored Clique instance with contiguous classes and
/// cross-class edges at the given probability.
pub fn gen_random_mcc(k: usize, n: usize, edge_prob: f64, rng: &mut ChaCha8Rng) -> MccInstance {
    let classes: Vec<Vec<usize>> = (0..k).map(|p| (p * n..(p + 1) * n).collect()).collect();
    let mut edges = Vec::new();
    for p in 0..k {
        for q in p + 1..k {
            for i in 0..n {
                for j in 0..n {
                    if rng.gen_bool(edge_prob) {
                        edges.push((p * n + i, q * n + j));
                    }
                }
            }
        }
    }
    let graph = Graph::new(k * n, &edges).unwrap();
    MccInstance::new(graph, classes).unwrap()
}
