//! Connected multigraphs with genus-labelled vertices.
//!
//! Edges are stored in a fixed order; edge `i` owns polynomial variable `x_i`.
//! The `(tail, head)` pair of an edge fixes the orientation used for cycle
//! signs. Loops (`tail == head`) and parallel edges are allowed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn new(tail: usize, head: usize) -> Self {
        Edge { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite to `v`. For a loop this is `v` itself.
    pub fn other(&self, v: usize) -> usize {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }
}

/// A connected multigraph. Construction validates connectivity, so every
/// value of this type is connected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    genera: Vec<u32>,
    edges: Vec<Edge>,
}

/// Disjoint-set forest over `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so that representatives are deterministic.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    #[serde(default)]
    genus: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<VertexJson>>,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    /// Builds a graph from vertex genera and an edge list, checking endpoints
    /// and connectivity.
    pub fn new(genera: Vec<u32>, edges: Vec<Edge>) -> Result<Self> {
        if genera.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let v = genera.len();
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= v || e.head >= v {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} ({}, {}) references a vertex outside 0..{v}",
                    e.tail, e.head
                )));
            }
        }
        let g = Multigraph { genera, edges };
        if g.components_after_deleting(|_| false) != 1 {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// All vertices of genus 0.
    pub fn from_pairs(num_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs.iter().map(|&(t, h)| Edge::new(t, h)).collect();
        Multigraph::new(vec![0; num_vertices], edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn genera(&self) -> &[u32] {
        &self.genera
    }

    /// Valence of `v`; a loop contributes 2.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    /// Number of connected components of the spanning subgraph that keeps
    /// every edge for which `deleted` returns false.
    pub(crate) fn components_after_deleting(&self, deleted: impl Fn(usize) -> bool) -> usize {
        let mut uf = UnionFind::new(self.num_vertices());
        for (i, e) in self.edges.iter().enumerate() {
            if !deleted(i) {
                uf.union(e.tail, e.head);
            }
        }
        uf.components()
    }

    pub(crate) fn check_edge_ids<'a>(&self, ids: impl IntoIterator<Item = &'a usize>) -> Result<()> {
        for &i in ids {
            if i >= self.num_edges() {
                return Err(Error::EdgeOutOfRange {
                    edge: i,
                    edges: self.num_edges(),
                });
            }
        }
        Ok(())
    }

    /// Serializes into the JSON graph schema.
    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = GraphJson {
            vertices: Some(
                self.genera
                    .iter()
                    .enumerate()
                    .map(|(id, &genus)| VertexJson { id, genus })
                    .collect(),
            ),
            edges: self.edges.iter().map(|e| (e.tail, e.head)).collect(),
        };
        serde_json::to_value(doc).expect("graph serialization is infallible")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// Renders in the whitespace edge-list format. Genus labels are lost.
    pub fn to_edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|e| format!("{} {}\n", e.tail, e.head))
            .collect()
    }
}

/// Parses either the JSON schema or whitespace edge-list lines `tail head`.
///
/// JSON is detected by a leading `{`. In the text format, blank lines and
/// lines starting with `#` are skipped, vertices are `0..=max id`, and all
/// genera are 0.
pub fn parse_graph(input: &str) -> Result<Multigraph> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_edge_list(input)
    }
}

fn parse_json(input: &str) -> Result<Multigraph> {
    let doc: GraphJson = serde_json::from_str(input).map_err(|e| Error::Parse {
        line: Some(e.line()),
        msg: e.to_string(),
    })?;
    let genera = match doc.vertices {
        Some(vs) => {
            let n = vs.len();
            let mut genera = vec![None; n];
            for v in vs {
                if v.id >= n {
                    return Err(Error::Parse {
                        line: None,
                        msg: format!("vertex ids must be 0..{n}, found {}", v.id),
                    });
                }
                if genera[v.id].replace(v.genus).is_some() {
                    return Err(Error::Parse {
                        line: None,
                        msg: format!("duplicate vertex id {}", v.id),
                    });
                }
            }
            genera.into_iter().map(|g| g.unwrap_or(0)).collect()
        }
        None => {
            let n = doc
                .edges
                .iter()
                .map(|&(t, h)| t.max(h) + 1)
                .max()
                .unwrap_or(0);
            vec![0; n]
        }
    };
    let edges = doc.edges.iter().map(|&(t, h)| Edge::new(t, h)).collect();
    Multigraph::new(genera, edges)
}

fn parse_edge_list(input: &str) -> Result<Multigraph> {
    let mut pairs = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| Error::Parse {
            line: Some(idx + 1),
            msg,
        };
        if fields.len() != 2 {
            return Err(bad(format!(
                "expected `tail head`, found {} fields",
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| bad(format!("`{s}` is not a vertex id")))
        };
        pairs.push((parse(fields[0])?, parse(fields[1])?));
    }
    if pairs.is_empty() {
        return Err(Error::Parse {
            line: None,
            msg: "no edges".into(),
        });
    }
    let n = pairs.iter().map(|&(t, h)| t.max(h) + 1).max().unwrap_or(0);
    Multigraph::from_pairs(n, &pairs)
}

/// First Betti number `e - v + 1`.
pub fn betti(g: &Multigraph) -> usize {
    g.num_edges() + 1 - g.num_vertices()
}

/// Arithmetic genus: Betti number plus the vertex genera.
pub fn genus(g: &Multigraph) -> usize {
    betti(g) + g.genera.iter().map(|&x| x as usize).sum::<usize>()
}

/// Edges whose deletion disconnects the graph, in increasing order.
pub fn bridges(g: &Multigraph) -> Vec<usize> {
    // Iterative low-link DFS. The parent edge is skipped by id, so parallel
    // edges correctly count as back edges.
    let n = g.num_vertices();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        if !e.is_loop() {
            adj[e.tail].push((e.head, i));
            adj[e.head].push((e.tail, i));
        }
    }
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut counter = 0;
    let mut out = Vec::new();
    // (vertex, edge used to enter, next adjacency index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, eid) = adj[v][*next];
                *next += 1;
                if eid == via {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push((w, eid, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > order[parent] {
                        out.push(via);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Result of contracting a set of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Multigraph,
    /// `edge_map[old] = Some(new)` for surviving edges, `None` for contracted ones.
    pub edge_map: Vec<Option<usize>>,
}

/// Contracts every edge in `set`: endpoints are identified and the edges
/// removed. Other edges survive in their original relative order, including
/// edges that become loops or parallel. Merged vertices carry the sum of the
/// genera plus the Betti number of the contracted piece, so the arithmetic
/// genus is preserved.
pub fn contract_edges(g: &Multigraph, set: &[usize]) -> Result<Contraction> {
    g.check_edge_ids(set)?;
    let in_set: BTreeSet<usize> = set.iter().copied().collect();
    if let Some(&l) = in_set.iter().find(|&&i| g.edges[i].is_loop()) {
        return Err(Error::ContractLoop(l));
    }
    let n = g.num_vertices();
    let mut uf = UnionFind::new(n);
    for &i in &in_set {
        uf.union(g.edges[i].tail, g.edges[i].head);
    }
    // Class representatives are minimal vertex ids; number classes in that order.
    let mut new_id = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = uf.find(v);
        if new_id[r] == usize::MAX {
            new_id[r] = count;
            count += 1;
        }
        new_id[v] = new_id[r];
    }
    let mut genera = vec![0u32; count];
    let mut class_size = vec![0usize; count];
    for v in 0..n {
        genera[new_id[v]] += g.genera[v];
        class_size[new_id[v]] += 1;
    }
    let mut contracted_per_class = vec![0usize; count];
    for &i in &in_set {
        contracted_per_class[new_id[g.edges[i].tail]] += 1;
    }
    for c in 0..count {
        // Each class is connected by its contracted edges: b = e - v + 1.
        let b = contracted_per_class[c] + 1 - class_size[c];
        genera[c] += b as u32;
    }
    let mut edges = Vec::with_capacity(g.num_edges() - in_set.len());
    let mut edge_map = vec![None; g.num_edges()];
    for (i, e) in g.edges.iter().enumerate() {
        if !in_set.contains(&i) {
            edge_map[i] = Some(edges.len());
            edges.push(Edge::new(new_id[e.tail], new_id[e.head]));
        }
    }
    Ok(Contraction {
        graph: Multigraph::new(genera, edges)?,
        edge_map,
    })
}

/// Deletes edges. Fails with [`Error::Disconnected`] if the result is not connected.
pub fn delete_edges(g: &Multigraph, set: &[usize]) -> Result<Contraction> {
    g.check_edge_ids(set)?;
    let mut edges = Vec::new();
    let mut edge_map = vec![None; g.num_edges()];
    for (i, e) in g.edges.iter().enumerate() {
        if !set.contains(&i) {
            edge_map[i] = Some(edges.len());
            edges.push(*e);
        }
    }
    Ok(Contraction {
        graph: Multigraph::new(g.genera.clone(), edges)?,
        edge_map,
    })
}

/// All spanning trees as sorted edge-id lists, in lexicographic order.
///
/// Branches on each edge in id order: contract it (include) first, then
/// delete it (exclude) if the remaining edges still connect the graph.
pub fn spanning_trees(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let uf = UnionFind::new(g.num_vertices());
    tree_rec(g, 0, uf, &mut chosen, &mut out);
    out
}

fn tree_rec(
    g: &Multigraph,
    next: usize,
    uf: UnionFind,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if uf.components() == 1 {
        out.push(chosen.clone());
        return;
    }
    if next == g.num_edges() {
        return;
    }
    let e = g.edges[next];
    let mut with = uf.clone();
    if with.union(e.tail, e.head) {
        chosen.push(next);
        tree_rec(g, next + 1, with, chosen, out);
        chosen.pop();
    }
    // Excluding `next` must keep the current forest plus later edges connected.
    let mut probe = uf.clone();
    for f in &g.edges[next + 1..] {
        probe.union(f.tail, f.head);
    }
    if probe.components() == 1 {
        tree_rec(g, next + 1, uf, chosen, out);
    }
}

/// Lexicographically first spanning tree (greedy in edge-id order).
pub fn first_spanning_tree(g: &Multigraph) -> Vec<usize> {
    let mut uf = UnionFind::new(g.num_vertices());
    (0..g.num_edges())
        .filter(|&i| uf.union(g.edges[i].tail, g.edges[i].head))
        .collect()
}

/// Signed fundamental cycles of a spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    /// `b x e` matrix with entries in {-1, 0, 1}.
    pub cycles: Vec<Vec<i8>>,
    pub tree: Vec<usize>,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }
}

/// Fundamental cycle basis of the lexicographically first spanning tree.
pub fn fundamental_cycle_basis(g: &Multigraph) -> CycleBasis {
    cycle_basis_for_tree(g, &first_spanning_tree(g)).expect("first spanning tree is a tree")
}

/// Fundamental cycles of `tree`, one per non-tree edge in increasing id order.
/// Row `i` has `+1` at its non-tree edge and follows the tree path from that
/// edge's head back to its tail.
pub fn cycle_basis_for_tree(g: &Multigraph, tree: &[usize]) -> Result<CycleBasis> {
    g.check_edge_ids(tree)?;
    let n = g.num_vertices();
    let mut uf = UnionFind::new(n);
    for &t in tree {
        if !uf.union(g.edges[t].tail, g.edges[t].head) {
            return Err(Error::InvalidArgument(format!(
                "edge set {tree:?} contains a cycle"
            )));
        }
    }
    if uf.components() != 1 {
        return Err(Error::InvalidArgument(format!(
            "edge set {tree:?} does not span the graph"
        )));
    }
    // Root the tree at 0: parent pointers with the connecting edge.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &t in tree {
        adj[g.edges[t].tail].push(t);
        adj[g.edges[t].head].push(t);
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &t in &adj[v] {
            let w = g.edges[t].other(v);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, t));
                depth[w] = depth[v] + 1;
                stack.push(w);
            }
        }
    }
    let in_tree: BTreeSet<usize> = tree.iter().copied().collect();
    let mut cycles = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if in_tree.contains(&i) {
            continue;
        }
        let mut row = vec![0i8; g.num_edges()];
        row[i] = 1;
        // Walk head -> lca and tail -> lca; the path runs head -> lca -> tail.
        let (mut a, mut b) = (e.head, e.tail);
        let mut from_tail_side = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let (p, t) = parent[a].expect("non-root vertex has a parent");
                // Traversing t from a to p.
                row[t] = if g.edges[t].tail == a { 1 } else { -1 };
                a = p;
            } else {
                let (p, t) = parent[b].expect("non-root vertex has a parent");
                from_tail_side.push((t, p, b));
                b = p;
            }
        }
        // Tail-side edges are traversed from p down to child.
        for (t, p, _child) in from_tail_side {
            row[t] = if g.edges[t].tail == p { 1 } else { -1 };
        }
        cycles.push(row);
    }
    Ok(CycleBasis {
        cycles,
        tree: tree.to_vec(),
    })
}

/// Stability: `2 g_v - 2 + val(v) > 0` at every vertex.
pub fn is_stable(g: &Multigraph) -> bool {
    (0..g.num_vertices()).all(|v| 2 * g.genera[v] as i64 - 2 + g.valence(v) as i64 > 0)
}

/// Signed vertex-edge incidence matrix (`v x e`): `-1` at the tail, `+1` at
/// the head, zero column for loops.
pub fn incidence_matrix(g: &Multigraph) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; g.num_edges()]; g.num_vertices()];
    for (i, e) in g.edges.iter().enumerate() {
        if !e.is_loop() {
            m[e.tail][i] -= 1;
            m[e.head][i] += 1;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> Multigraph {
        Multigraph::from_pairs(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }

    fn triangle() -> Multigraph {
        parse_graph("0 1\n1 2\n2 0").unwrap()
    }

    #[test]
    fn parse_text_triangle() {
        let g = triangle();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.edge(2), Edge::new(2, 0));
    }

    #[test]
    fn parse_json_loop() {
        let g = parse_graph(r#"{"edges": [[0,0]]}"#).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert_eq!(betti(&g), 1);
    }

    #[test]
    fn parse_json_with_genera() {
        let g = parse_graph(
            r#"{"vertices": [{"id": 1, "genus": 2}, {"id": 0}], "edges": [[0,1]]}"#,
        )
        .unwrap();
        assert_eq!(g.genera(), &[0, 2]);
        assert_eq!(genus(&g), 2);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_graph("0 1\n2 3"), Err(Error::Disconnected));
        assert!(matches!(
            parse_graph("0 1\n1 x"),
            Err(Error::Parse { line: Some(2), .. })
        ));
        assert!(matches!(
            parse_graph("0 1 2"),
            Err(Error::Parse { line: Some(1), .. })
        ));
        assert!(matches!(parse_graph("{\"edges\": [[0,"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_graph(r#"{"vertices": [{"id": 0}], "edges": [[0,1]]}"#),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(parse_graph("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn json_roundtrip() {
        let g = Multigraph::new(vec![0, 3, 1], vec![Edge::new(0, 1), Edge::new(2, 1), Edge::new(2, 2)]).unwrap();
        assert_eq!(parse_graph(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn betti_and_genus() {
        assert_eq!(betti(&triangle()), 1);
        assert_eq!(betti(&theta()), 2);
        assert_eq!(betti(&parse_graph("0 0").unwrap()), 1);
        let g = Multigraph::new(vec![2, 0, 0], triangle().edges().to_vec()).unwrap();
        assert_eq!(genus(&g), 3);
        let point = Multigraph::new(vec![0], vec![]).unwrap();
        assert_eq!(genus(&point), 0);
    }

    #[test]
    fn bridge_examples() {
        assert!(bridges(&triangle()).is_empty());
        assert_eq!(bridges(&parse_graph("0 1\n1 2").unwrap()), vec![0, 1]);
        let two = parse_graph("0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n2 3").unwrap();
        assert_eq!(bridges(&two), vec![6]);
        assert!(bridges(&parse_graph("0 0\n0 1\n1 1").unwrap()) == vec![1]);
        assert!(bridges(&theta()).is_empty());
    }

    #[test]
    fn contraction_examples() {
        let c = contract_edges(&triangle(), &[0]).unwrap();
        assert_eq!(c.graph.num_vertices(), 2);
        assert_eq!(c.graph.num_edges(), 2);
        assert_eq!(c.edge_map, vec![None, Some(0), Some(1)]);
        assert!(bridges(&c.graph).is_empty());

        let id = contract_edges(&triangle(), &[]).unwrap();
        assert_eq!(id.graph, triangle());
        assert_eq!(id.edge_map, vec![Some(0), Some(1), Some(2)]);

        assert_eq!(
            contract_edges(&parse_graph("0 0\n0 1\n1 0").unwrap(), &[0]),
            Err(Error::ContractLoop(0))
        );
        assert!(matches!(
            contract_edges(&triangle(), &[7]),
            Err(Error::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn contracting_a_cycle_moves_genus_to_the_vertex() {
        let g = parse_graph("0 1\n1 0\n1 2\n2 0").unwrap();
        let c = contract_edges(&g, &[0, 1]).unwrap();
        assert_eq!(betti(&c.graph), betti(&g) - 1);
        assert_eq!(genus(&c.graph), genus(&g));
    }

    #[test]
    fn doubled_square_contracts_to_theta_like() {
        // Sides 0,3 single; 1,2 and 4,5 doubled.
        let g = Multigraph::from_pairs(4, &[(0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (3, 0)]).unwrap();
        let c = contract_edges(&g, &[0, 3]).unwrap();
        assert_eq!(c.graph.num_vertices(), 2);
        assert_eq!(c.graph.num_edges(), 4);
        assert_eq!(betti(&c.graph), 3);
        assert!(bridges(&c.graph).is_empty());
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(spanning_trees(&triangle()), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(spanning_trees(&theta()), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(spanning_trees(&parse_graph("0 0").unwrap()), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn cycle_basis_examples() {
        let b = fundamental_cycle_basis(&triangle());
        assert_eq!(b.cycles, vec![vec![1, 1, 1]]);
        let b = fundamental_cycle_basis(&theta());
        assert_eq!(b.tree, vec![0]);
        assert_eq!(b.cycles, vec![vec![-1, 1, 0], vec![-1, 0, 1]]);
        let b = fundamental_cycle_basis(&parse_graph("0 0").unwrap());
        assert_eq!(b.cycles, vec![vec![1]]);
    }

    #[test]
    fn cycle_basis_rejects_non_trees() {
        assert!(cycle_basis_for_tree(&triangle(), &[0]).is_err());
        assert!(cycle_basis_for_tree(&theta(), &[0, 1]).is_err());
    }

    #[test]
    fn stability_examples() {
        let g = parse_graph("0 0\n0 1\n1 1").unwrap();
        assert!(is_stable(&g));
        assert!(!is_stable(&triangle()));
        assert!(!is_stable(&Multigraph::new(vec![1], vec![]).unwrap()));
        assert!(is_stable(&Multigraph::new(vec![2], vec![]).unwrap()));
        assert!(is_stable(&theta()));
    }
}
