//! Capture-graph analytics for 2-Solo Chess configurations.
//!
//! The *capture graph* of a configuration has one vertex per occupied
//! square; two vertices are adjacent iff the pieces attack each other,
//! disregarding budgets. Since captures only ever move pieces onto occupied
//! squares, every configuration reachable from `C` has a capture graph that
//! is a subgraph of `C`'s — which makes static graph structure a sound
//! source of pruning rules and verification properties:
//!
//! * [`CaptureGraph::connected_components`] — a clearable configuration is
//!   connected.
//! * [`CaptureGraph::articulation_points`] — singleton vertex cuts; in every
//!   clearing sequence they must hold pieces that never move.
//! * [`CaptureGraph::find_antennae`] — leaf-ended induced paths. An antenna
//!   `(u, v, w)` whose leaf `u` is neither frozen nor the final square
//!   forces the opening captures `u > v > w`; a longer antenna whose leaf
//!   has budget strictly below the path length pins the final square onto
//!   the antenna.
//! * [`CaptureGraph::is_bipartite_by_color`] — whether every edge joins
//!   squares of opposite checkerboard color. True for all knight graphs,
//!   false for king graphs with diagonal contacts.

use std::collections::{BTreeMap, BTreeSet};

use solochess_core::{Configuration, PieceKind, Square};

/// The capture graph of a configuration, together with the budgets the
/// pieces held when the graph was built (edges ignore budgets; antennae
/// report the leaf budget).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaptureGraph {
    kind: PieceKind,
    /// Budget per occupied square.
    vertices: BTreeMap<Square, u8>,
    /// Sorted adjacency lists; symmetric.
    adjacency: BTreeMap<Square, Vec<Square>>,
}

/// A maximal leaf-ended induced path `v_0, …, v_b`: `v_0` is a leaf,
/// `v_1 … v_{b-1}` have degree exactly 2, and `v_b` (the anchor) is the
/// first vertex of degree ≥ 3 — or the far end of a path component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antenna {
    /// The squares `v_0, …, v_b`, starting at the leaf.
    pub path: Vec<Square>,
    /// Budget of the piece on the leaf `v_0`.
    pub leaf_budget: u8,
}

impl Antenna {
    /// Number of edges `b` of the path `v_0, …, v_b`.
    pub fn length(&self) -> usize {
        self.path.len() - 1
    }
}

/// Builds the capture graph of `config`.
pub fn build_graph(config: &Configuration) -> CaptureGraph {
    let kind = config.kind();
    let vertices: BTreeMap<Square, u8> =
        config.pieces().iter().map(|(&s, &b)| (s, b)).collect();
    let mut adjacency: BTreeMap<Square, Vec<Square>> = BTreeMap::new();
    for &square in vertices.keys() {
        let neighbors: Vec<Square> = kind
            .attacks(square)
            .into_iter()
            .filter(|n| vertices.contains_key(n))
            .collect();
        adjacency.insert(square, neighbors);
    }
    CaptureGraph {
        kind,
        vertices,
        adjacency,
    }
}

impl CaptureGraph {
    pub fn kind(&self) -> PieceKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Square> + '_ {
        self.vertices.keys().copied()
    }

    pub fn contains(&self, square: Square) -> bool {
        self.vertices.contains_key(&square)
    }

    /// Budget of the piece on `square` at graph construction time.
    pub fn budget(&self, square: Square) -> Option<u8> {
        self.vertices.get(&square).copied()
    }

    /// Sorted neighbors of one vertex.
    pub fn neighbors(&self, square: Square) -> &[Square] {
        self.adjacency
            .get(&square)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn degree(&self, square: Square) -> usize {
        self.neighbors(square).len()
    }

    /// All edges, each reported once with `a < b`.
    pub fn edges(&self) -> Vec<(Square, Square)> {
        let mut out = Vec::new();
        for (&a, neighbors) in &self.adjacency {
            for &b in neighbors {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Open neighborhood `N(X)`: vertices outside `X` adjacent to some
    /// vertex of `X`.
    pub fn neighborhood(&self, set: &BTreeSet<Square>) -> BTreeSet<Square> {
        let mut out = BTreeSet::new();
        for &v in set {
            for &n in self.neighbors(v) {
                if !set.contains(&n) {
                    out.insert(n);
                }
            }
        }
        out
    }

    /// Connected components, ordered by their smallest square; each
    /// component is a sorted set.
    pub fn connected_components(&self) -> Vec<BTreeSet<Square>> {
        let mut seen: BTreeSet<Square> = BTreeSet::new();
        let mut components = Vec::new();
        for &start in self.vertices.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut component = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                if !seen.insert(v) {
                    continue;
                }
                component.insert(v);
                for &n in self.neighbors(v) {
                    if !seen.contains(&n) {
                        stack.push(n);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    /// Whether the graph is connected (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Whether `set` induces a connected subgraph (empty and singleton sets
    /// count as connected).
    pub fn is_connected_subset(&self, set: &BTreeSet<Square>) -> bool {
        let Some(&start) = set.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if !seen.insert(v) {
                continue;
            }
            for &n in self.neighbors(v) {
                if set.contains(&n) && !seen.contains(&n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Articulation points (cut vertices), computed per component with the
    /// classic low-link depth-first search.
    pub fn articulation_points(&self) -> BTreeSet<Square> {
        let index_of: BTreeMap<Square, usize> = self
            .vertices
            .keys()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        let squares: Vec<Square> = self.vertices.keys().copied().collect();
        let n = squares.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = vec![false; n];
        let mut timer = 0usize;

        // Iterative DFS: (vertex, parent, next-neighbor-position).
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut root_children = 0usize;
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
                let neighbors = self.neighbors(squares[v]);
                if *pos < neighbors.len() {
                    let w = index_of[&neighbors[*pos]];
                    *pos += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            cut[p] = true;
                        }
                    }
                }
            }
            cut[root] = root_children > 1;
        }

        squares
            .into_iter()
            .enumerate()
            .filter_map(|(i, s)| cut[i].then_some(s))
            .collect()
    }

    /// Whether removing `set` disconnects the remaining vertices (or leaves
    /// fewer than two of them — such sets are not cuts).
    pub fn is_vertex_cut(&self, set: &BTreeSet<Square>) -> bool {
        let rest: BTreeSet<Square> = self
            .vertices
            .keys()
            .filter(|s| !set.contains(s))
            .copied()
            .collect();
        if rest.len() < 2 {
            return false;
        }
        !self.is_connected_subset(&rest)
    }

    /// All maximal antennae: for every leaf, the induced path from that leaf
    /// through degree-2 vertices up to (and including) the first vertex of
    /// degree ≥ 3, or the far end of a path component. Ordered by leaf
    /// square. A two-vertex component yields one antenna per end.
    pub fn find_antennae(&self) -> Vec<Antenna> {
        let mut out = Vec::new();
        for (&leaf, neighbors) in &self.adjacency {
            if neighbors.len() != 1 {
                continue;
            }
            let mut path = vec![leaf];
            let mut prev = leaf;
            let mut current = neighbors[0];
            loop {
                path.push(current);
                let next: Vec<Square> = self
                    .neighbors(current)
                    .iter()
                    .copied()
                    .filter(|&n| n != prev)
                    .collect();
                if next.len() != 1 {
                    break; // anchor of degree ≥ 3, or far leaf of a path
                }
                prev = current;
                current = next[0];
            }
            out.push(Antenna {
                path,
                leaf_budget: self.vertices[&leaf],
            });
        }
        out
    }

    /// Whether every edge joins squares of opposite checkerboard color.
    /// Knight graphs always satisfy this; a king graph fails as soon as two
    /// pieces touch diagonally, since diagonal neighbors share a color.
    pub fn is_bipartite_by_color(&self) -> bool {
        self.edges().iter().all(|(a, b)| a.color() != b.color())
    }
}
