//! Simple undirected graphs with dense 0-based vertex ids, the text format,
//! component decomposition, and small-graph isomorphism via canonical forms.

use crate::{EdsError, Result};
use std::fmt::Write as _;

/// Simple undirected graph. No self-loops, no parallel edges, adjacency
/// lists kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// One connected component of a host graph: the original vertex ids plus the
/// densely relabeled local copy. `vertices[i]` is the original id of local
/// vertex `i`.
#[derive(Debug, Clone)]
pub struct ComponentView {
    pub vertices: Vec<usize>,
    pub local: Graph,
}

impl ComponentView {
    /// Maps a local vertex id back to the original id.
    pub fn original_id(&self, local: usize) -> usize {
        self.vertices[local]
    }
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        };
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        for nbrs in &mut g.adj {
            nbrs.sort_unstable();
        }
        Ok(g)
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(EdsError::InvalidInput(format!(
                "edge ({u},{v}) references a vertex outside 0..{n}"
            )));
        }
        if u == v {
            return Err(EdsError::InvalidInput(format!("self-loop at vertex {u}")));
        }
        if self.adj[u].contains(&v) {
            return Err(EdsError::InvalidInput(format!("duplicate edge ({u},{v})")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.m += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Per-vertex neighborhood bitsets; available only for n <= 64.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        let mut masks = vec![0u64; self.n()];
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                masks[u] |= 1 << v;
            }
        }
        Some(masks)
    }

    // --- standard small graphs -------------------------------------------

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Path on n vertices (0-1-2-...-n-1).
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges).unwrap()
    }

    // --- structure ---------------------------------------------------------

    /// Induced subgraph on V minus `remove`, densely relabeled. Returns the
    /// new graph together with the map new id -> original id.
    pub fn delete_vertices(&self, remove: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.n();
        let mut gone = vec![false; n];
        for &v in remove {
            if v >= n {
                return Err(EdsError::InvalidInput(format!(
                    "cannot delete unknown vertex {v} (n={n})"
                )));
            }
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for &v in &keep {
            for &w in &self.adj[v] {
                if !gone[w] {
                    adj[new_id[v]].push(new_id[w]);
                    if new_id[v] < new_id[w] {
                        m += 1;
                    }
                }
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok((Graph { adj, m }, keep))
    }

    /// Induced subgraph keeping exactly `keep` (must be sorted, deduped).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if new_id[w] != usize::MAX {
                    adj[i].push(new_id[w]);
                    if i < new_id[w] {
                        m += 1;
                    }
                }
            }
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Graph { adj, m }
    }

    /// Maximal connected pieces, ordered by smallest original id.
    pub fn connected_components(&self) -> Vec<ComponentView> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut verts = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                verts.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            verts.sort_unstable();
            let local = self.induced(&verts);
            out.push(ComponentView {
                vertices: verts,
                local,
            });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&w| w + off).collect::<Vec<_>>()),
        );
        Graph {
            adj,
            m: self.m + other.m,
        }
    }

    /// Relabels the graph by `perm` (new id of vertex v is perm[v]).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            adj[perm[v]] = self.adj[v].iter().map(|&w| perm[w]).collect();
            adj[perm[v]].sort_unstable();
        }
        Graph { adj, m: self.m }
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

// --- text format -----------------------------------------------------------
//
// Graph file (UTF-8, LF): `#` comment lines; header `p eds <n> <m>`; then
// exactly m lines `e <u> <v>` with 1 <= u < v <= n. Instance files add one
// `k <int>` line and one `x <id> ...` line (possibly empty). Witness lines
// `f <u> <v>` may be appended.

pub fn parse_graph(text: &str) -> Result<Graph> {
    let (g, rest) = parse_graph_lines(text)?;
    if let Some((line_no, line)) = rest.into_iter().next() {
        return Err(EdsError::Parse {
            line: line_no,
            msg: format!("unexpected content after edge list: {line:?}"),
        });
    }
    Ok(g)
}

/// Parses the graph header and edge lines; returns the remaining
/// non-comment lines with their 1-based line numbers.
pub(crate) fn parse_graph_lines(text: &str) -> Result<(Graph, Vec<(usize, String)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(EdsError::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        ["p", "eds", n, m] => {
            let n = n.parse::<usize>().map_err(|_| bad(line_no, "vertex count"))?;
            let m = m.parse::<usize>().map_err(|_| bad(line_no, "edge count"))?;
            (n, m)
        }
        _ => {
            return Err(EdsError::Parse {
                line: line_no,
                msg: format!("malformed header {header:?}, expected `p eds <n> <m>`"),
            })
        }
    };

    let mut g = Graph::empty(n);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or_else(|| EdsError::Parse {
            line: 0,
            msg: format!("expected {m} edge lines, input ended early"),
        })?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (u, v) = match fields.as_slice() {
            ["e", u, v] => (
                u.parse::<usize>().map_err(|_| bad(line_no, "endpoint"))?,
                v.parse::<usize>().map_err(|_| bad(line_no, "endpoint"))?,
            ),
            _ => {
                return Err(EdsError::Parse {
                    line: line_no,
                    msg: format!("malformed edge line {line:?}"),
                })
            }
        };
        if u == v {
            return Err(EdsError::Parse {
                line: line_no,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        if !(1 <= u && u < v && v <= n) {
            return Err(EdsError::Parse {
                line: line_no,
                msg: format!("edge ({u},{v}) violates 1 <= u < v <= {n}"),
            });
        }
        g.add_edge_checked(u - 1, v - 1).map_err(|e| EdsError::Parse {
            line: line_no,
            msg: e.to_string(),
        })?;
    }
    for nbrs in &mut g.adj {
        nbrs.sort_unstable();
    }
    let rest = lines.map(|(i, l)| (i, l.to_string())).collect();
    Ok((g, rest))
}

fn bad(line: usize, what: &str) -> EdsError {
    EdsError::Parse {
        line,
        msg: format!("malformed {what}"),
    }
}

/// Writes the graph in the text format, edges sorted lexicographically.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p eds {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

// --- canonical form and isomorphism -----------------------------------------

/// Canonical key of a graph: n plus the lexicographically smallest
/// upper-triangle adjacency encoding over all refinement-respecting
/// relabelings. Only supported for n <= 16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey {
    pub n: u8,
    pub bits: u128,
}

const CANON_HARD_LIMIT: usize = 16;

impl Graph {
    /// Iterated degree refinement: vertices get colors refined by the
    /// multiset of neighbor colors until stable. Returns per-vertex colors.
    fn refine_colors(&self) -> Vec<usize> {
        let n = self.n();
        let mut color: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        loop {
            let mut sig: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut ns: Vec<usize> = self.adj[v].iter().map(|&w| color[w]).collect();
                    ns.sort_unstable();
                    (color[v], ns)
                })
                .collect();
            let mut sorted = sig.clone();
            sorted.sort();
            sorted.dedup();
            let next: Vec<usize> = sig
                .drain(..)
                .map(|s| sorted.binary_search(&s).unwrap())
                .collect();
            if next == color {
                return color;
            }
            color = next;
        }
    }

    /// Canonical key computed by degree refinement followed by exhaustive
    /// permutation within refinement cells (DFS with prefix pruning).
    ///
    /// Row i of the lower triangle occupies more significant bits than row
    /// i+1, so a partial encoding strictly above the best known one can
    /// never recover and the branch is pruned.
    pub fn canonical_key(&self) -> Result<CanonKey> {
        let n = self.n();
        if n > CANON_HARD_LIMIT {
            return Err(EdsError::CapExceeded {
                what: "canonical form",
                limit: CANON_HARD_LIMIT,
                actual: n,
            });
        }
        if n == 0 {
            return Ok(CanonKey { n: 0, bits: 0 });
        }
        let color = self.refine_colors();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (color[v], v));
        let masks = self.adjacency_masks().expect("n <= 16");
        let total_bits = (n * (n - 1) / 2) as u32;

        struct Search<'a> {
            masks: &'a [u64],
            color: &'a [usize],
            order: &'a [usize],
            total_bits: u32,
            placed: Vec<usize>,
            used: Vec<bool>,
            best: Option<u128>,
        }

        impl Search<'_> {
            fn dfs(&mut self, enc: u128, cum: u32) {
                let n = self.used.len();
                let pos = self.placed.len();
                if pos == n {
                    if self.best.map_or(true, |b| enc < b) {
                        self.best = Some(enc);
                    }
                    return;
                }
                let cell_color = self
                    .order
                    .iter()
                    .filter(|&&v| !self.used[v])
                    .map(|&v| self.color[v])
                    .min()
                    .unwrap();
                for idx in 0..self.order.len() {
                    let v = self.order[idx];
                    if self.used[v] || self.color[v] != cell_color {
                        continue;
                    }
                    // row bits towards already placed positions, earliest
                    // position most significant
                    let mut row = 0u128;
                    for (j, &p) in self.placed.iter().enumerate() {
                        if self.masks[v] >> p & 1 == 1 {
                            row |= 1 << (pos - 1 - j);
                        }
                    }
                    let cum2 = cum + pos as u32;
                    let enc2 = enc | (row << (self.total_bits - cum2));
                    if let Some(b) = self.best {
                        let keep = self.total_bits - cum2;
                        let prefix = if keep >= 128 { 0 } else { (b >> keep) << keep };
                        if enc2 > prefix {
                            continue;
                        }
                    }
                    self.used[v] = true;
                    self.placed.push(v);
                    self.dfs(enc2, cum2);
                    self.placed.pop();
                    self.used[v] = false;
                }
            }
        }

        let mut search = Search {
            masks: &masks,
            color: &color,
            order: &order,
            total_bits,
            placed: Vec::with_capacity(n),
            used: vec![false; n],
            best: None,
        };
        search.dfs(0, 0);
        Ok(CanonKey {
            n: n as u8,
            bits: search.best.unwrap(),
        })
    }

    /// True iff an edge-preserving bijection exists. Both graphs must be at
    /// most `max_component_size` vertices.
    pub fn is_isomorphic(&self, other: &Graph, cap: usize) -> Result<bool> {
        let cap = cap.min(CANON_HARD_LIMIT);
        for g in [self, other] {
            if g.n() > cap {
                return Err(EdsError::CapExceeded {
                    what: "isomorphism test",
                    limit: cap,
                    actual: g.n(),
                });
            }
        }
        if self.n() != other.n() || self.m() != other.m() {
            return Ok(false);
        }
        if self.degree_sequence() != other.degree_sequence() {
            return Ok(false);
        }
        Ok(self.canonical_key()? == other.canonical_key()?)
    }
}
