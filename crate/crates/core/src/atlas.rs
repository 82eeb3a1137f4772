//! Small-graph atlas: enumerate all connected graphs up to a vertex bound,
//! one representative per isomorphism class, and classify each.

use crate::graph::{CanonKey, Graph};
use crate::profile::{Profiler, Verdict};
use crate::{Caps, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

/// One atlas entry: a canonical representative with its profile summary.
#[derive(Debug, Clone, Serialize)]
pub struct AtlasRow {
    pub key: String,
    pub n: usize,
    pub m: usize,
    pub edges: Vec<(usize, usize)>,
    pub meds: usize,
    pub q_size: usize,
    pub w_size: usize,
    pub u_size: usize,
    pub d: usize,
    pub verdict: Verdict,
}

pub const ATLAS_MAX: usize = 8;

/// All connected graphs with 1..=n_max vertices, one per isomorphism class.
/// Vertex-augmentation: every connected n-vertex graph arises from a
/// connected (n-1)-vertex graph by attaching a new vertex with a nonempty
/// neighborhood (delete any non-cut vertex to see this), so augmenting and
/// deduplicating by canonical form is exhaustive.
pub fn connected_graphs(n_max: usize) -> Result<Vec<Graph>> {
    if n_max > ATLAS_MAX {
        return Err(crate::EdsError::CapExceeded {
            what: "atlas enumeration",
            limit: ATLAS_MAX,
            actual: n_max,
        });
    }
    let mut all: Vec<Graph> = Vec::new();
    if n_max == 0 {
        return Ok(all);
    }
    let mut level: HashMap<CanonKey, Graph> = HashMap::new();
    let k1 = Graph::empty(1);
    level.insert(k1.canonical_key()?, k1);
    for n in 1..=n_max {
        let mut reps: Vec<(CanonKey, Graph)> = level.drain().collect();
        reps.sort_by_key(|(k, _)| *k);
        all.extend(reps.iter().map(|(_, g)| g.clone()));
        if n == n_max {
            break;
        }
        let next: Vec<(CanonKey, Graph)> = reps
            .par_iter()
            .flat_map_iter(|(_, g)| {
                let g = g.clone();
                (1u64..1 << n).map(move |nbrs| {
                    let mut edges = g.edges();
                    for v in 0..n {
                        if nbrs >> v & 1 == 1 {
                            edges.push((v, n));
                        }
                    }
                    let aug = Graph::new(n + 1, &edges).unwrap();
                    (aug.canonical_key().unwrap(), aug)
                })
            })
            .collect();
        for (key, g) in next {
            level.entry(key).or_insert(g);
        }
    }
    Ok(all)
}

/// Profiles and classifies every connected graph up to `n_max` vertices.
/// Rows are ordered by (n, canonical key); identical n_max gives identical
/// output.
pub fn atlas(n_max: usize, caps: &Caps) -> Result<Vec<AtlasRow>> {
    let graphs = connected_graphs(n_max)?;
    let rows: Vec<Result<AtlasRow>> = graphs
        .par_iter()
        .map(|g| {
            let mut profiler = Profiler::new(g, caps)?;
            let p = profiler.profile();
            let key = g.canonical_key()?;
            Ok(AtlasRow {
                key: format!("{}:{:x}", key.n, key.bits),
                n: p.n,
                m: p.m,
                edges: g.edges(),
                meds: p.meds,
                q_size: p.extendable.len(),
                w_size: p.free.len(),
                u_size: p.uncovered.len(),
                d: p.d,
                verdict: p.verdict,
            })
        })
        .collect();
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        out.push(r?);
    }
    out.sort_by(|a, b| (a.n, a.key.clone()).cmp(&(b.n, b.key.clone())));
    Ok(out)
}

/// First atlas entry classified as PolyKernel, if any: the empirical answer
/// to whether the general kernel's interesting case is realizable at small
/// scale.
pub fn find_poly_kernel_exemplar(n_max: usize, caps: &Caps) -> Result<Option<(Graph, usize)>> {
    for g in connected_graphs(n_max)? {
        let mut profiler = Profiler::new(&g, caps)?;
        if let Verdict::PolyKernel { d } = profiler.classify() {
            return Ok(Some((g, d)));
        }
    }
    Ok(None)
}
