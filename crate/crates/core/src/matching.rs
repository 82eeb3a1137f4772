//! Maximum bipartite matching (Hopcroft-Karp) and the saturate-or-deficiency
//! contract used by every kernelization: either a matching saturating the
//! left side R, or a Hall violator Y together with a matching in G - N[Y]
//! that saturates R minus Y.

use serde::Serialize;
use std::collections::VecDeque;

/// Bipartite graph with left part R and right part S, adjacency from left to
/// right kept sorted for reproducible matchings.
#[derive(Debug, Clone)]
pub struct Bipartite {
    adj: Vec<Vec<usize>>,
    right_count: usize,
}

/// Matching as pairs (left, right).
pub type Matching = Vec<(usize, usize)>;

#[derive(Debug, Clone, Serialize)]
pub enum SaturationResult {
    /// Matching saturating every left vertex.
    Saturated(Matching),
    /// `violator` is a set Y of left vertices with |N(Y)| < |Y|; `matching`
    /// lives in G - N[Y] and saturates R minus Y.
    Deficient {
        violator: Vec<usize>,
        matching: Matching,
    },
}

impl Bipartite {
    pub fn new(left: usize, right: usize) -> Self {
        Bipartite {
            adj: vec![Vec::new(); left],
            right_count: right,
        }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(l < self.adj.len() && r < self.right_count);
        if let Err(pos) = self.adj[l].binary_search(&r) {
            self.adj[l].insert(pos, r);
        }
    }

    pub fn left_count(&self) -> usize {
        self.adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn neighbors(&self, l: usize) -> &[usize] {
        &self.adj[l]
    }

    /// Maximum-cardinality matching via repeated shortest-augmenting-path
    /// phases (layered BFS, then DFS along the layers).
    pub fn max_matching(&self) -> Matching {
        let n_left = self.adj.len();
        let mut match_l: Vec<Option<usize>> = vec![None; n_left];
        let mut match_r: Vec<Option<usize>> = vec![None; self.right_count];

        loop {
            // BFS from unmatched left vertices, layering left vertices
            let mut dist: Vec<usize> = vec![usize::MAX; n_left];
            let mut queue = VecDeque::new();
            for l in 0..n_left {
                if match_l[l].is_none() {
                    dist[l] = 0;
                    queue.push_back(l);
                }
            }
            let mut found_free = false;
            while let Some(l) = queue.pop_front() {
                for &r in &self.adj[l] {
                    match match_r[r] {
                        None => found_free = true,
                        Some(l2) => {
                            if dist[l2] == usize::MAX {
                                dist[l2] = dist[l] + 1;
                                queue.push_back(l2);
                            }
                        }
                    }
                }
            }
            if !found_free {
                break;
            }
            fn try_augment(
                b: &Bipartite,
                l: usize,
                dist: &mut [usize],
                match_l: &mut [Option<usize>],
                match_r: &mut [Option<usize>],
            ) -> bool {
                let d = std::mem::replace(&mut dist[l], usize::MAX);
                for &r in &b.adj[l] {
                    let ok = match match_r[r] {
                        None => true,
                        Some(l2) => {
                            dist[l2] == d + 1 && try_augment(b, l2, dist, match_l, match_r)
                        }
                    };
                    if ok {
                        match_l[l] = Some(r);
                        match_r[r] = Some(l);
                        return true;
                    }
                }
                false
            }
            let mut advanced = false;
            for l in 0..n_left {
                if match_l[l].is_none() && dist[l] == 0 {
                    advanced |= try_augment(self, l, &mut dist, &mut match_l, &mut match_r);
                }
            }
            if !advanced {
                break;
            }
        }

        (0..n_left)
            .filter_map(|l| match_l[l].map(|r| (l, r)))
            .collect()
    }

    /// Either a matching saturating R, or the maximal Hall violator Y (all
    /// left vertices reachable from an unmatched left vertex by alternating
    /// paths) plus the surviving matching on R minus Y.
    pub fn saturate_or_deficiency(&self) -> SaturationResult {
        let matching = self.max_matching();
        let n_left = self.adj.len();
        if matching.len() == n_left {
            return SaturationResult::Saturated(matching);
        }
        let mut match_l: Vec<Option<usize>> = vec![None; n_left];
        let mut match_r: Vec<Option<usize>> = vec![None; self.right_count];
        for &(l, r) in &matching {
            match_l[l] = Some(r);
            match_r[r] = Some(l);
        }
        // alternating BFS: unmatched-left roots, left->right on free edges,
        // right->left on matched edges
        let mut seen_l = vec![false; n_left];
        let mut seen_r = vec![false; self.right_count];
        let mut queue: VecDeque<usize> = (0..n_left).filter(|&l| match_l[l].is_none()).collect();
        for &l in &queue {
            seen_l[l] = true;
        }
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                if seen_r[r] {
                    continue;
                }
                seen_r[r] = true;
                if let Some(l2) = match_r[r] {
                    if !seen_l[l2] {
                        seen_l[l2] = true;
                        queue.push_back(l2);
                    }
                }
            }
        }
        let violator: Vec<usize> = (0..n_left).filter(|&l| seen_l[l]).collect();
        // matched partners of R minus Y avoid N(Y), so the restriction
        // survives deleting N[Y] and still saturates R minus Y
        let survivors: Matching = matching
            .iter()
            .copied()
            .filter(|&(l, _)| !seen_l[l])
            .collect();
        debug_assert!(survivors.iter().all(|&(_, r)| !seen_r[r]));
        SaturationResult::Deficient {
            violator,
            matching: survivors,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(l: usize, r: usize) -> Bipartite {
        let mut b = Bipartite::new(l, r);
        for i in 0..l {
            for j in 0..r {
                b.add_edge(i, j);
            }
        }
        b
    }

    #[test]
    fn k22_saturates() {
        let b = complete(2, 2);
        assert_eq!(b.max_matching().len(), 2);
        assert!(matches!(
            b.saturate_or_deficiency(),
            SaturationResult::Saturated(m) if m.len() == 2
        ));
    }

    #[test]
    fn two_lefts_one_right() {
        let b = complete(2, 1);
        assert_eq!(b.max_matching().len(), 1);
        match b.saturate_or_deficiency() {
            SaturationResult::Deficient { violator, matching } => {
                assert_eq!(violator, vec![0, 1]);
                assert!(matching.is_empty());
            }
            _ => panic!("expected deficiency"),
        }
    }

    #[test]
    fn augmenting_path_flips() {
        // path r0-s0-r1-s1: r0~s0, r1~s0, r1~s1
        let mut b = Bipartite::new(2, 2);
        b.add_edge(0, 0);
        b.add_edge(1, 0);
        b.add_edge(1, 1);
        assert_eq!(b.max_matching().len(), 2);
    }

    #[test]
    fn hall_violator_example() {
        // r0~s0, r1~s0, r2~s1: Y = {r0,r1}, survivor matching {r2-s1}
        let mut b = Bipartite::new(3, 2);
        b.add_edge(0, 0);
        b.add_edge(1, 0);
        b.add_edge(2, 1);
        match b.saturate_or_deficiency() {
            SaturationResult::Deficient { violator, matching } => {
                assert_eq!(violator, vec![0, 1]);
                assert_eq!(matching, vec![(2, 1)]);
            }
            _ => panic!("expected deficiency"),
        }
    }

    #[test]
    fn isolated_left_vertices_join_violator() {
        let mut b = Bipartite::new(3, 1);
        b.add_edge(0, 0);
        match b.saturate_or_deficiency() {
            SaturationResult::Deficient { violator, matching } => {
                assert!(violator.contains(&1) && violator.contains(&2));
                // |N(Y)| < |Y| must hold
                let mut nbrs: Vec<usize> = violator
                    .iter()
                    .flat_map(|&l| b.neighbors(l).to_vec())
                    .collect();
                nbrs.sort_unstable();
                nbrs.dedup();
                assert!(nbrs.len() < violator.len());
                for (l, r) in matching {
                    assert!(!violator.contains(&l));
                    assert!(!nbrs.contains(&r));
                }
            }
            _ => panic!("expected deficiency"),
        }
    }

    // brute-force maximum matching for cross-checking
    fn brute_max(b: &Bipartite) -> usize {
        fn rec(b: &Bipartite, l: usize, used: &mut Vec<bool>) -> usize {
            if l == b.left_count() {
                return 0;
            }
            let mut best = rec(b, l + 1, used);
            for &r in b.neighbors(l) {
                if !used[r] {
                    used[r] = true;
                    best = best.max(1 + rec(b, l + 1, used));
                    used[r] = false;
                }
            }
            best
        }
        rec(b, 0, &mut vec![false; b.right_count()])
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        // deterministic pseudo-random bipartite graphs with |R|+|S| <= 12
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..200 {
            let l = (next() % 6 + 1) as usize;
            let r = (next() % 6 + 1) as usize;
            let mut b = Bipartite::new(l, r);
            for i in 0..l {
                for j in 0..r {
                    if next() % 10 < 4 {
                        b.add_edge(i, j);
                    }
                }
            }
            assert_eq!(b.max_matching().len(), brute_max(&b));
            // deficiency invariants
            if let SaturationResult::Deficient { violator, matching } = b.saturate_or_deficiency()
            {
                let mut nbrs: Vec<usize> = violator
                    .iter()
                    .flat_map(|&x| b.neighbors(x).to_vec())
                    .collect();
                nbrs.sort_unstable();
                nbrs.dedup();
                assert!(nbrs.len() < violator.len(), "not a Hall violator");
                let matched: Vec<usize> = matching.iter().map(|&(x, _)| x).collect();
                for x in 0..l {
                    if !violator.contains(&x) {
                        assert!(matched.contains(&x), "R minus Y not saturated");
                    }
                }
                for &(_, y) in &matching {
                    assert!(!nbrs.contains(&y), "survivor matching touches N(Y)");
                }
            }
        }
    }

    #[test]
    fn koenig_duality_spot_check() {
        let mut seed = 0xdeadbeefu64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..100 {
            let l = (next() % 5 + 1) as usize;
            let r = (next() % 5 + 1) as usize;
            let mut b = Bipartite::new(l, r);
            for i in 0..l {
                for j in 0..r {
                    if next() % 10 < 5 {
                        b.add_edge(i, j);
                    }
                }
            }
            let matching = b.max_matching();
            // vertex cover from alternating reachability: (R \ reach) + (S & reach)
            let mut match_r = vec![None; r];
            let mut match_l = vec![None; l];
            for &(x, y) in &matching {
                match_l[x] = Some(y);
                match_r[y] = Some(x);
            }
            let mut seen_l = vec![false; l];
            let mut seen_r = vec![false; r];
            let mut queue: Vec<usize> = (0..l).filter(|&x| match_l[x].is_none()).collect();
            for &x in &queue {
                seen_l[x] = true;
            }
            while let Some(x) = queue.pop() {
                for &y in b.neighbors(x) {
                    if !seen_r[y] {
                        seen_r[y] = true;
                        if let Some(x2) = match_r[y] {
                            if !seen_l[x2] {
                                seen_l[x2] = true;
                                queue.push(x2);
                            }
                        }
                    }
                }
            }
            let cover = (0..l).filter(|&x| !seen_l[x]).count()
                + (0..r).filter(|&y| seen_r[y]).count();
            assert_eq!(cover, matching.len(), "Koenig duality violated");
            // the derived cover must cover every edge
            for x in 0..l {
                for &y in b.neighbors(x) {
                    assert!(!seen_l[x] || seen_r[y]);
                }
            }
        }
    }
}
