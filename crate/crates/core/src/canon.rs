//! Canonical labelling of small multigraphs and enumeration of stable graphs.
//!
//! The canonical code is the lexicographically smallest encoding over every
//! leaf of an individualisation-refinement search tree. No automorphism
//! pruning is done; graphs here have at most a dozen or so vertices.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::graph::{Edge, Multigraph};

/// `[v, genera.., upper-triangular multiplicities row by row]`.
pub type CanonCode = Vec<u16>;

fn adjacency(g: &Multigraph) -> Vec<Vec<u16>> {
    let n = g.num_vertices();
    let mut adj = vec![vec![0u16; n]; n];
    for e in g.edges() {
        if e.is_loop() {
            adj[e.tail][e.tail] += 1;
        } else {
            adj[e.tail][e.head] += 1;
            adj[e.head][e.tail] += 1;
        }
    }
    adj
}

fn refine(adj: &[Vec<u16>], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut cell_of = vec![0usize; n];
    loop {
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let k = cells.len();
        let mut next = Vec::with_capacity(n);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u32; k + 1];
                    for u in 0..n {
                        sig[cell_of[u]] += adj[v][u] as u32;
                    }
                    sig[k] = adj[v][v] as u32;
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let done = next.len() == cells.len();
        cells = next;
        if done {
            return cells;
        }
    }
}

fn encode(adj: &[Vec<u16>], genera: &[u32], order: &[usize]) -> CanonCode {
    let n = order.len();
    let mut code = Vec::with_capacity(1 + n + n * (n + 1) / 2);
    code.push(n as u16);
    code.extend(order.iter().map(|&v| genera[v] as u16));
    for i in 0..n {
        for j in i..n {
            code.push(adj[order[i]][order[j]]);
        }
    }
    code
}

fn search(
    adj: &[Vec<u16>],
    genera: &[u32],
    cells: Vec<Vec<usize>>,
    best: &mut Option<(CanonCode, Vec<usize>)>,
) {
    let cells = refine(adj, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = encode(adj, genera, &order);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, order));
            }
        }
        Some(idx) => {
            for &v in &cells[idx] {
                let mut next = cells[..idx].to_vec();
                next.push(vec![v]);
                next.push(cells[idx].iter().copied().filter(|&u| u != v).collect());
                next.extend_from_slice(&cells[idx + 1..]);
                search(adj, genera, next, best);
            }
        }
    }
}

/// Canonical code and the relabelled graph (edges sorted, oriented low to high).
/// Two graphs are isomorphic (as genus-labelled multigraphs) exactly when their
/// codes are equal.
pub fn canonical_form(g: &Multigraph) -> (CanonCode, Multigraph) {
    let adj = adjacency(g);
    let genera = g.genera();
    let mut by_genus: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, &gv) in genera.iter().enumerate() {
        by_genus.entry(gv).or_default().push(v);
    }
    let mut best = None;
    search(&adj, genera, by_genus.into_values().collect(), &mut best);
    let (code, _) = best.expect("search visits at least one leaf");
    let graph = decode(&code).expect("code produced by encode");
    (code, graph)
}

fn decode(code: &[u16]) -> Option<Multigraph> {
    let n = *code.first()? as usize;
    let genera = code.get(1..1 + n)?.iter().map(|&x| x as u32).collect();
    let mut edges = Vec::new();
    let mut k = 1 + n;
    for i in 0..n {
        for j in i..n {
            for _ in 0..*code.get(k)? {
                edges.push(Edge::new(i, j));
            }
            k += 1;
        }
    }
    Multigraph::new(genera, edges).ok()
}

/// Splits vertex `u` along every partition of its half-edges into two parts of
/// size at least 2, joining the parts by a new edge.
fn splits(g: &Multigraph, u: usize) -> Vec<Multigraph> {
    // Half-edges at u: (edge id, which end: 0 tail / 1 head).
    let mut halves = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.tail == u {
            halves.push((i, 0u8));
        }
        if e.head == u {
            halves.push((i, 1u8));
        }
    }
    let d = halves.len();
    if d < 4 {
        return Vec::new();
    }
    let w = g.num_vertices();
    let mut out = Vec::new();
    // Bit k set: half-edge k moves to w. The first half-edge always stays.
    for mask in (0u64..1 << d).step_by(2) {
        let moved = mask.count_ones() as usize;
        if moved < 2 || d - moved < 2 {
            continue;
        }
        let mut edges = g.edges().to_vec();
        for (k, &(i, end)) in halves.iter().enumerate() {
            if mask >> k & 1 == 1 {
                if end == 0 {
                    edges[i].tail = w;
                } else {
                    edges[i].head = w;
                }
            }
        }
        edges.push(Edge::new(u, w));
        let mut genera = g.genera().to_vec();
        genera.push(0);
        out.push(Multigraph::new(genera, edges).expect("splitting keeps the graph connected"));
    }
    out
}

/// All connected stable graphs of the given genus with genus-0 vertices and at
/// most `max_edges` edges, one per isomorphism class, in canonical form.
/// Ordered by edge count, then canonical code.
pub fn stable_graphs(genus: usize, max_edges: usize) -> Vec<(CanonCode, Multigraph)> {
    if genus < 2 || genus > max_edges {
        return Vec::new();
    }
    let rose = Multigraph::new(vec![0], vec![Edge::new(0, 0); genus]).expect("rose is connected");
    let mut level: BTreeMap<CanonCode, Multigraph> = BTreeMap::new();
    let (code, g) = canonical_form(&rose);
    level.insert(code, g);
    let mut all: Vec<(CanonCode, Multigraph)> = level.clone().into_iter().collect();
    let top = max_edges.min(3 * genus - 3);
    for _ in genus..top {
        let children: Vec<Vec<(CanonCode, Multigraph)>> = level
            .par_iter()
            .map(|(_, g)| {
                let mut local: BTreeMap<CanonCode, Multigraph> = BTreeMap::new();
                for u in 0..g.num_vertices() {
                    for child in splits(g, u) {
                        let (code, cg) = canonical_form(&child);
                        local.entry(code).or_insert(cg);
                    }
                }
                local.into_iter().collect()
            })
            .collect();
        let mut next = BTreeMap::new();
        for (code, g) in children.into_iter().flatten() {
            next.entry(code).or_insert(g);
        }
        all.extend(next.iter().map(|(c, g)| (c.clone(), g.clone())));
        level = next;
    }
    all
}
