//! The cographic matroid of a bridgeless graph: rank oracle, maximal density,
//! the witness construction in the scaled base polytope, and the covering LP
//! over spanning-tree complements.
//!
//! Subsets of the ground set are `u64` bitmasks (bit `i` is edge `i`). All
//! subset scans are exhaustive and exact; they are capped at
//! [`MAX_SCAN_EDGES`] edges.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, Multigraph, UnionFind};
use crate::lp;
use crate::rational::Rational;

/// Largest ground set for which exhaustive subset scans are run.
pub const MAX_SCAN_EDGES: usize = 20;

/// Largest number of spanning trees accepted by [`cover_lp_oracle`].
pub const MAX_LP_TREES: usize = 500;

pub type EdgeMask = u64;

pub fn mask_of(edges: &[usize]) -> EdgeMask {
    edges.iter().fold(0, |m, &i| m | (1u64 << i))
}

pub fn edges_of(mask: EdgeMask) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

#[derive(Debug, Clone)]
pub struct CographicMatroid {
    graph: Multigraph,
    /// Rank of the underlying graphic matroid, `v - 1`.
    graphic_rank: usize,
}

impl CographicMatroid {
    /// Fails if the graph has bridges (they are loops of the cographic matroid)
    /// or more than 64 edges.
    pub fn new(graph: Multigraph) -> Result<Self> {
        if graph.num_edges() > 64 {
            return Err(Error::TooLarge {
                what: "edge count",
                actual: graph.num_edges(),
                limit: 64,
            });
        }
        let br = graph::bridges(&graph);
        if !br.is_empty() {
            return Err(Error::HasBridges(br));
        }
        let graphic_rank = graph.num_vertices() - 1;
        Ok(CographicMatroid {
            graph,
            graphic_rank,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn ground_size(&self) -> usize {
        self.graph.num_edges()
    }

    pub fn full_mask(&self) -> EdgeMask {
        full_mask(self.ground_size())
    }

    /// `rk(E)`, equal to the Betti number of the graph.
    pub fn rank(&self) -> usize {
        self.ground_size() - self.graphic_rank
    }

    /// Dual rank `|S| - (components(G - S) - 1)`.
    pub fn corank_mask(&self, set: EdgeMask) -> usize {
        let mut uf = UnionFind::new(self.graph.num_vertices());
        for (i, e) in self.graph.edges().iter().enumerate() {
            if set >> i & 1 == 0 {
                uf.union(e.tail, e.head);
            }
        }
        set.count_ones() as usize + 1 - uf.components()
    }

    pub fn corank(&self, set: &[usize]) -> Result<usize> {
        self.graph.check_edge_ids(set)?;
        Ok(self.corank_mask(mask_of(set)))
    }

    fn check_scan_size(&self) -> Result<()> {
        if self.ground_size() > MAX_SCAN_EDGES {
            return Err(Error::TooLarge {
                what: "ground set for exhaustive subset scan",
                actual: self.ground_size(),
                limit: MAX_SCAN_EDGES,
            });
        }
        if self.ground_size() == 0 {
            return Err(Error::InvalidArgument("empty ground set".into()));
        }
        Ok(())
    }

    /// `rk(S)` for every `S`, indexed by mask.
    pub fn corank_table(&self) -> Result<Vec<u8>> {
        self.check_scan_size()?;
        let n = 1usize << self.ground_size();
        let edges = self.graph.edges();
        let nv = self.graph.num_vertices();
        let mut parent = vec![0usize; nv];
        let mut table = Vec::with_capacity(n);
        for s in 0..n {
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i;
            }
            let mut comps = nv;
            for (i, e) in edges.iter().enumerate() {
                if s >> i & 1 == 0 {
                    let (a, b) = (root(&mut parent, e.tail), root(&mut parent, e.head));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                        comps -= 1;
                    }
                }
            }
            table.push((s.count_ones() as usize + 1 - comps) as u8);
        }
        Ok(table)
    }
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn full_mask(n: usize) -> EdgeMask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Maximal density `m = max |S| / rk S` and the union `T0` of all maximizers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Density {
    #[serde(serialize_with = "ser_rational")]
    pub m: Rational,
    pub t0: Vec<usize>,
}

/// `m`, `T0`, and a witness `w` with `w >= 1` lying in `m * P(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityCertificate {
    #[serde(serialize_with = "ser_rational")]
    pub m: Rational,
    pub t0: Vec<usize>,
    #[serde(serialize_with = "ser_rationals")]
    pub witness: Vec<Rational>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn density(m: &CographicMatroid) -> Result<Density> {
    let table = m.corank_table()?;
    Ok(density_from_table(&table)?.0)
}

fn density_from_table(table: &[u8]) -> Result<(Density, u64, u64)> {
    // Best ratio num/den, compared by cross-multiplication.
    let (mut num, mut den) = (0u64, 1u64);
    let mut union: EdgeMask = 0;
    for (s, &rk) in table.iter().enumerate().skip(1) {
        let size = (s as u64).count_ones() as u64;
        let rk = rk as u64;
        if rk == 0 {
            return Err(Error::Internal(format!("nonempty set {s:#b} has rank 0")));
        }
        let lhs = size * den;
        let rhs = num * rk;
        if lhs > rhs {
            num = size;
            den = rk;
            union = s as EdgeMask;
        } else if lhs == rhs {
            union |= s as EdgeMask;
        }
    }
    // Union closure: T0 attains the maximum itself.
    let t0_size = union.count_ones() as u64;
    if t0_size * den != num * table[union as usize] as u64 {
        return Err(Error::TheoremViolation(format!(
            "union of maximizers {union:#b} does not attain the maximal density"
        )));
    }
    let density = Density {
        m: Rational::new(BigInt::from(num), BigInt::from(den)),
        t0: edges_of(union),
    };
    Ok((density, num, den))
}

/// Membership of `w` in `t * P(M)`, by exhaustive subset check.
pub fn in_scaled_polytope(m: &CographicMatroid, w: &[Rational], t: &Rational) -> Result<bool> {
    if w.len() != m.ground_size() {
        return Err(Error::DimensionMismatch {
            expected: m.ground_size(),
            actual: w.len(),
        });
    }
    let table = m.corank_table()?;
    // Subset sums by extending from the set without its lowest element.
    let mut phi: Vec<Rational> = Vec::with_capacity(table.len());
    phi.push(Rational::zero());
    for s in 1..table.len() {
        let low = s.trailing_zeros() as usize;
        let v = &phi[s & (s - 1)] + &w[low];
        phi.push(v);
    }
    for (s, f) in phi.iter().enumerate() {
        let bound = t * Rational::from_integer(BigInt::from(table[s]));
        if *f < Rational::zero() || *f > bound {
            return Ok(false);
        }
    }
    let full = m.full_mask() as usize;
    Ok(phi[full] == t * Rational::from_integer(BigInt::from(table[full])))
}

/// Builds the certificate: starting from the all-ones vector, repeatedly
/// raises the smallest coordinate outside the maximal tight set by the
/// largest step that keeps every constraint `phi_S(w) <= m rk S`.
pub fn build_witness(m: &CographicMatroid) -> Result<DensityCertificate> {
    let table = m.corank_table()?;
    let (density, p, q) = density_from_table(&table)?;
    let n = m.ground_size();
    let full = m.full_mask();
    // Scaled by q: W = q w, so every quantity is an integer. Slack of S is
    // p rk(S) - sum_{e in S} W_e.
    let mut weights = vec![q as i64; n];
    let mut slack: Vec<i64> = table
        .iter()
        .enumerate()
        .map(|(s, &rk)| p as i64 * rk as i64 - q as i64 * (s as u64).count_ones() as i64)
        .collect();
    if slack.iter().any(|&x| x < 0) {
        return Err(Error::TheoremViolation("all-ones vector violates m rk S".into()));
    }
    let tight_union = |slack: &[i64]| -> EdgeMask {
        slack
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == 0)
            .fold(0, |acc, (s, _)| acc | s as EdgeMask)
    };
    let mut tight = tight_union(&slack);
    if tight != mask_of(&density.t0) {
        return Err(Error::Internal("initial tight set differs from T0".into()));
    }
    while tight != full {
        let e = (!tight).trailing_zeros() as usize;
        let bit = 1usize << e;
        let step = slack
            .iter()
            .enumerate()
            .filter(|(s, _)| s & bit != 0)
            .map(|(_, &x)| x)
            .min()
            .expect("some set contains e");
        if step <= 0 {
            return Err(Error::Internal(format!("non-positive step {step} at edge {e}")));
        }
        weights[e] += step;
        for (s, x) in slack.iter_mut().enumerate() {
            if s & bit != 0 {
                *x -= step;
            }
        }
        let next = tight_union(&slack);
        if next & tight != tight || next == tight || slack[next as usize] != 0 {
            return Err(Error::Internal("tight set failed to grow".into()));
        }
        tight = next;
    }
    let qb = BigInt::from(q);
    let witness = weights
        .into_iter()
        .map(|w| Rational::new(BigInt::from(w), qb.clone()))
        .collect();
    Ok(DensityCertificate {
        m: density.m,
        t0: density.t0,
        witness,
    })
}

impl DensityCertificate {
    /// Re-checks every claim exactly against the matroid.
    pub fn verify(&self, m: &CographicMatroid) -> Result<()> {
        let fail = |msg: String| Err(Error::TheoremViolation(msg));
        let t0 = mask_of(&self.t0);
        let rk = m.corank_mask(t0);
        if rk == 0 || Rational::new(BigInt::from(self.t0.len()), BigInt::from(rk)) != self.m {
            return fail(format!("|T0|/rk(T0) differs from m = {}", self.m));
        }
        if self.witness.iter().any(|w| *w < Rational::one()) {
            return fail("witness has a coordinate below 1".into());
        }
        if !in_scaled_polytope(m, &self.witness, &self.m)? {
            return fail("witness is not in m * P(M)".into());
        }
        // w >= 1 on T0 with phi_T0(w) <= m rk(T0) = |T0| forces w = 1 there.
        if self.t0.iter().any(|&e| !self.witness[e].is_one()) {
            return fail("witness exceeds 1 on T0".into());
        }
        Ok(())
    }
}

/// Solution of the covering LP `min sum c_T  s.t.  sum_T c_T v_T >= 1, c >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverSolution {
    pub value: Rational,
    pub trees: Vec<Vec<usize>>,
    /// Optimal `c_T`, aligned with `trees`.
    pub tree_weights: Vec<Rational>,
    /// Optimal packing `y_e` of the dual.
    pub edge_weights: Vec<Rational>,
}

/// Threshold via the covering LP over spanning-tree complements, solved
/// exactly through its packing dual; the covering solution is read off the
/// final tableau and both are checked for feasibility and equal value.
pub fn cover_lp(g: &Multigraph) -> Result<CoverSolution> {
    let br = graph::bridges(g);
    if !br.is_empty() {
        return Err(Error::HasBridges(br));
    }
    let e = g.num_edges();
    if e == 0 {
        return Err(Error::NoCycles);
    }
    let trees = graph::spanning_trees(g);
    if trees.len() > MAX_LP_TREES {
        return Err(Error::TooLarge {
            what: "spanning tree count",
            actual: trees.len(),
            limit: MAX_LP_TREES,
        });
    }
    let one = Rational::one();
    let zero = Rational::zero();
    let rows: Vec<Vec<Rational>> = trees
        .iter()
        .map(|t| {
            let mut r = vec![one.clone(); e];
            for &i in t {
                r[i] = zero.clone();
            }
            r
        })
        .collect();
    // Packing dual: max sum y_e  s.t.  sum_{e not in T} y_e <= 1 for every T.
    let sol = lp::maximize(&vec![one.clone(); e], &rows, &vec![one.clone(); trees.len()])?;
    let tree_weights = sol.dual;
    let edge_weights = sol.primal;
    // Covering feasibility and strong duality, exactly.
    for i in 0..e {
        let cover: Rational = rows
            .iter()
            .zip(&tree_weights)
            .filter(|(r, _)| r[i].is_one())
            .map(|(_, c)| c.clone())
            .sum();
        if cover < one {
            return Err(Error::Internal(format!("covering infeasible at edge {i}")));
        }
    }
    let cover_value: Rational = tree_weights.iter().cloned().sum();
    let pack_value: Rational = edge_weights.iter().cloned().sum();
    if cover_value != sol.value || pack_value != sol.value {
        return Err(Error::Internal("LP duality gap".into()));
    }
    Ok(CoverSolution {
        value: sol.value,
        trees,
        tree_weights,
        edge_weights,
    })
}

pub fn cover_lp_oracle(g: &Multigraph) -> Result<Rational> {
    Ok(cover_lp(g)?.value)
}
