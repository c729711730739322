//! Convergence thresholds: bridge reduction, the threshold `c` with its
//! certificate, optimal contractions, the two standard graph families, the
//! divergence-witness search, and report assembly.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon;
use crate::error::{Error, Result};
use crate::graph::{self, Edge, Multigraph};
use crate::kirchhoff;
use crate::matroid::{self, CographicMatroid, DensityCertificate};
use crate::probe::{self, GrowthVerdict, ProbeConfig};
use crate::rational::{self, Rational};

/// Largest edge count accepted by [`search_divergent`].
pub const MAX_SEARCH_EDGES: usize = 15;

/// `c` for a graph, with everything needed to re-check it.
#[derive(Debug, Clone)]
pub struct Threshold {
    pub c: Rational,
    /// Certificate on the bridgeless core; edge ids are core ids.
    pub certificate: DensityCertificate,
    pub core: Multigraph,
    /// `core_edge_map[original] = Some(core id)`, `None` for bridges.
    pub core_edge_map: Vec<Option<usize>>,
    pub bridges: Vec<usize>,
}

/// Contracts all bridges.
pub fn bridgeless_core(g: &Multigraph) -> Result<graph::Contraction> {
    graph::contract_edges(g, &graph::bridges(g))
}

/// Contracts the bridges, then computes the maximal density of the cographic
/// matroid of the core together with a witness certificate.
pub fn threshold(g: &Multigraph) -> Result<Threshold> {
    if graph::betti(g) == 0 {
        return Err(Error::NoCycles);
    }
    let bridges = graph::bridges(g);
    let core = graph::contract_edges(g, &bridges)?;
    let m = CographicMatroid::new(core.graph.clone())?;
    let certificate = matroid::build_witness(&m)?;
    certificate.verify(&m)?;
    Ok(Threshold {
        c: certificate.m.clone(),
        certificate,
        core: core.graph,
        core_edge_map: core.edge_map,
        bridges,
    })
}

/// Threshold value only.
pub fn threshold_value(g: &Multigraph) -> Result<Rational> {
    if graph::betti(g) == 0 {
        return Err(Error::NoCycles);
    }
    let core = bridgeless_core(g)?;
    Ok(matroid::density(&CographicMatroid::new(core.graph)?)?.m)
}

/// `e / b` as an exact rational.
pub fn edge_ratio(g: &Multigraph) -> Result<Rational> {
    let b = graph::betti(g);
    if b == 0 {
        return Err(Error::NoCycles);
    }
    Ok(Rational::new(BigInt::from(g.num_edges()), BigInt::from(b)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalContraction {
    /// `E \ T0`: deleted if a loop, contracted otherwise.
    pub contracted: Vec<usize>,
    pub graph: Multigraph,
    /// `edge_map[old] = Some(new)` for the surviving edges, i.e. `T0`.
    pub edge_map: Vec<Option<usize>>,
    pub c: Rational,
}

/// Removes `S = E \ T0` from a bridgeless graph: loops in `S` are deleted and
/// the other edges of `S` contracted. The restriction of the cographic matroid
/// to `T0` is the cographic matroid of the result, so the result is optimal
/// with the same threshold; all three facts are rechecked.
pub fn optimal_contraction(g: &Multigraph) -> Result<OptimalContraction> {
    let br = graph::bridges(g);
    if !br.is_empty() {
        return Err(Error::HasBridges(br));
    }
    let m = CographicMatroid::new(g.clone())?;
    let density = matroid::density(&m)?;
    let in_t0 = matroid::mask_of(&density.t0);
    let s: Vec<usize> = (0..g.num_edges()).filter(|&i| in_t0 >> i & 1 == 0).collect();
    let (loops, rest): (Vec<usize>, Vec<usize>) = s.iter().partition(|&&i| g.edge(i).is_loop());
    let deleted = graph::delete_edges(g, &loops)?;
    let rest_after: Vec<usize> = rest
        .iter()
        .map(|&i| deleted.edge_map[i].expect("non-loop edges survive deletion"))
        .collect();
    let contracted = graph::contract_edges(&deleted.graph, &rest_after)?;
    let edge_map: Vec<Option<usize>> = deleted
        .edge_map
        .iter()
        .map(|x| x.and_then(|j| contracted.edge_map[j]))
        .collect();
    let bar = contracted.graph;
    let rk_t0 = m.corank_mask(in_t0);
    if bar.num_edges() != density.t0.len() || graph::betti(&bar) != rk_t0 {
        return Err(Error::TheoremViolation(format!(
            "contraction has e = {}, b = {}; expected {} and {}",
            bar.num_edges(),
            graph::betti(&bar),
            density.t0.len(),
            rk_t0
        )));
    }
    let c_bar = threshold_value(&bar)?;
    if c_bar != density.m || edge_ratio(&bar)? != density.m {
        return Err(Error::TheoremViolation(format!(
            "contracted graph has c = {c_bar}, expected the optimal value {}",
            density.m
        )));
    }
    Ok(OptimalContraction {
        contracted: s,
        graph: bar,
        edge_map,
        c: c_bar,
    })
}

/// The cycle `P_n`: edge `i` joins `i` and `i + 1 mod n`.
pub fn make_ngon(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n-gon needs n >= 2, got {n}")));
    }
    Multigraph::new(vec![0; n], (0..n).map(|i| Edge::new(i, (i + 1) % n)).collect())
}

/// The `2n`-gon with every other side doubled: sides `(i, i + 1 mod 2n)`, and
/// sides `0, 2, 4, ...` (the odd ones counting from 1) appear twice in a row.
pub fn make_doubled_2ngon(n: usize) -> Result<Multigraph> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("doubled 2n-gon needs n >= 1, got {n}")));
    }
    let v = 2 * n;
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..v {
        let e = Edge::new(i, (i + 1) % v);
        edges.push(e);
        if i % 2 == 0 {
            edges.push(e);
        }
    }
    Multigraph::new(vec![0; v], edges)
}

/// Cheap isomorphism invariant reported with search hits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub v: usize,
    pub e: usize,
    pub degrees: Vec<usize>,
    pub spanning_trees: usize,
    /// Number of `psi` terms containing each edge variable, sorted.
    pub psi_edge_counts: Vec<usize>,
}

pub fn fingerprint(g: &Multigraph) -> Fingerprint {
    let mut degrees: Vec<usize> = (0..g.num_vertices()).map(|v| g.valence(v)).collect();
    degrees.sort_unstable();
    let trees = graph::spanning_trees(g);
    let mut in_tree = vec![0usize; g.num_edges()];
    for t in &trees {
        for &i in t {
            in_tree[i] += 1;
        }
    }
    let mut psi_edge_counts: Vec<usize> = in_tree.iter().map(|k| trees.len() - k).collect();
    psi_edge_counts.sort_unstable();
    Fingerprint {
        v: g.num_vertices(),
        e: g.num_edges(),
        degrees,
        spanning_trees: trees.len(),
        psi_edge_counts,
    }
}

#[derive(Debug, Clone)]
pub struct SearchHit {
    pub graph: Multigraph,
    pub c: Rational,
    pub fingerprint: Fingerprint,
}

/// Stable bridgeless graphs of the given genus (all vertex genera 0, at most
/// `max_edges` edges) whose threshold is at least `target`, one per
/// isomorphism class, sorted by `c` descending, then edge count, then
/// canonical code.
pub fn search_divergent(genus: usize, max_edges: usize, target: &Rational) -> Result<Vec<SearchHit>> {
    if genus < 2 {
        return Err(Error::InvalidArgument(format!("genus must be at least 2, got {genus}")));
    }
    if max_edges > MAX_SEARCH_EDGES {
        return Err(Error::TooLarge {
            what: "search edge bound",
            actual: max_edges,
            limit: MAX_SEARCH_EDGES,
        });
    }
    if *target <= rational::int(0) {
        return Err(Error::InvalidArgument("target must be positive".into()));
    }
    let candidates = canon::stable_graphs(genus, max_edges);
    // c <= e, so smaller graphs cannot reach the target.
    let mut hits: Vec<(Rational, usize, canon::CanonCode, Multigraph)> = candidates
        .into_par_iter()
        .filter(|(_, g)| rational::int(g.num_edges() as i64) >= *target)
        .filter(|(_, g)| graph::bridges(g).is_empty())
        .map(|(code, g)| {
            let c = threshold_value(&g)?;
            Ok((c, g.num_edges(), code, g))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(c, ..)| c >= target)
        .collect();
    hits.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    Ok(hits
        .into_iter()
        .map(|(c, _, _, g)| SearchHit {
            fingerprint: fingerprint(&g),
            graph: g,
            c,
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    pub probe: bool,
    pub seed: u64,
    pub samples: usize,
    /// Largest bridgeless core accepted.
    pub max_edges: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            probe: false,
            seed: probe::DEFAULT_SEED,
            samples: probe::DEFAULT_SAMPLES,
            max_edges: matroid::MAX_SCAN_EDGES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Cyclic,
    NoCycles,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub v: usize,
    pub e: usize,
    pub b: usize,
    pub genus: usize,
    pub stable: bool,
    pub graph: serde_json::Value,
}

impl GraphSummary {
    pub fn of(g: &Multigraph) -> Self {
        GraphSummary {
            v: g.num_vertices(),
            e: g.num_edges(),
            b: graph::betti(g),
            genus: graph::genus(g),
            stable: graph::is_stable(g),
            graph: g.to_json_value(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreSummary {
    pub summary: GraphSummary,
    /// Original edge id to core edge id; `null` for bridges.
    pub edge_map: Vec<Option<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PsiSummary {
    /// Over the core variables `x0, x1, ...`.
    pub polynomial: String,
    pub terms: usize,
    pub degree: usize,
    /// Determinant of the cycle form equals the spanning-tree sum.
    pub routes_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionSummary {
    /// Core edge ids outside `T0`.
    pub contracted: Vec<usize>,
    pub summary: GraphSummary,
    pub c: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStatement {
    pub converges_for: String,
    pub diverges_at: Option<String>,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LpSummary {
    pub value: String,
    pub spanning_trees: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeSummary {
    pub status: String,
    pub note: String,
    pub at_threshold: Option<GrowthVerdict>,
    pub above_threshold: Option<GrowthVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub schema: &'static str,
    pub kind: ReportKind,
    pub input: GraphSummary,
    pub bridges: Vec<usize>,
    pub core: Option<CoreSummary>,
    pub psi: Option<PsiSummary>,
    pub c: Option<String>,
    pub c_decimal: Option<String>,
    pub c_float: Option<f64>,
    /// `e / b` of the core.
    pub lower_bound: Option<String>,
    pub optimal: Option<bool>,
    pub certificate: Option<DensityCertificate>,
    pub optimal_contraction: Option<ContractionSummary>,
    pub convergence: ConvergenceStatement,
    pub lp: Option<LpSummary>,
    pub probe: Option<ProbeSummary>,
}

impl ConvergenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    pub const CSV_HEADER: [&'static str; 10] =
        ["v", "e", "b", "genus", "stable", "bridges", "c", "c_decimal", "lower_bound", "optimal"];

    pub fn csv_row(&self) -> [String; 10] {
        let opt = |x: &Option<String>| x.clone().unwrap_or_default();
        [
            self.input.v.to_string(),
            self.input.e.to_string(),
            self.input.b.to_string(),
            self.input.genus.to_string(),
            self.input.stable.to_string(),
            self.bridges.len().to_string(),
            opt(&self.c),
            opt(&self.c_decimal),
            opt(&self.lower_bound),
            self.optimal.map(|b| b.to_string()).unwrap_or_default(),
        ]
    }
}

/// Runs the whole pipeline. A graph without cycles yields the `no_cycles`
/// report; a failed cross-check is an error rather than a report.
pub fn analyze(g: &Multigraph, opts: &AnalyzeOptions) -> Result<ConvergenceReport> {
    let input = GraphSummary::of(g);
    let bridges = graph::bridges(g);
    if graph::betti(g) == 0 {
        return Ok(ConvergenceReport {
            schema: "1",
            kind: ReportKind::NoCycles,
            input,
            bridges,
            core: None,
            psi: None,
            c: None,
            c_decimal: None,
            c_float: None,
            lower_bound: None,
            optimal: None,
            certificate: None,
            optimal_contraction: None,
            convergence: ConvergenceStatement {
                converges_for: "all s".into(),
                diverges_at: None,
                note: "no cycles: every edge is a bridge, the integrand has no Kirchhoff factor and the threshold is undefined".into(),
            },
            lp: None,
            probe: None,
        });
    }
    let core_edges = g.num_edges() - bridges.len();
    if core_edges > opts.max_edges {
        return Err(Error::TooLarge {
            what: "bridgeless core edge count",
            actual: core_edges,
            limit: opts.max_edges,
        });
    }
    let th = threshold(g)?;
    let core = &th.core;

    let by_det = kirchhoff::psi(core);
    let by_trees = kirchhoff::psi_trees(core);
    if by_det != by_trees {
        return Err(Error::TheoremViolation(
            "determinant and spanning-tree expansions of psi differ".into(),
        ));
    }
    let psi = PsiSummary {
        polynomial: by_det.to_string(),
        terms: by_det.num_terms(),
        degree: by_det.homogeneous_degree().unwrap_or(0) as usize,
        routes_agree: true,
    };

    let lower = edge_ratio(core)?;
    if th.c < lower {
        return Err(Error::TheoremViolation(format!("c = {} is below e/b = {lower}", th.c)));
    }
    let oc = optimal_contraction(core)?;
    if oc.c != th.c {
        return Err(Error::TheoremViolation("optimal contraction changed c".into()));
    }

    let trees = by_trees.num_terms();
    let lp = if trees <= matroid::MAX_LP_TREES {
        let value = matroid::cover_lp_oracle(core)?;
        if value != th.c {
            return Err(Error::TheoremViolation(format!(
                "covering LP value {value} differs from density {}",
                th.c
            )));
        }
        Some(LpSummary {
            value: value.to_string(),
            spanning_trees: trees,
            agrees: true,
        })
    } else {
        None
    };

    let probe = opts.probe.then(|| run_probe(core, &th.c, opts)).transpose()?;
    let c_str = th.c.to_string();
    Ok(ConvergenceReport {
        schema: "1",
        kind: ReportKind::Cyclic,
        input,
        bridges: th.bridges.clone(),
        core: Some(CoreSummary {
            summary: GraphSummary::of(core),
            edge_map: th.core_edge_map.clone(),
        }),
        psi: Some(psi),
        c: Some(c_str.clone()),
        c_decimal: Some(rational::to_decimal(&th.c, 6)),
        c_float: Some(rational::to_f64(&th.c)),
        lower_bound: Some(lower.to_string()),
        optimal: Some(lower == th.c),
        certificate: Some(th.certificate.clone()),
        optimal_contraction: Some(ContractionSummary {
            contracted: oc.contracted,
            summary: GraphSummary::of(&oc.graph),
            c: oc.c.to_string(),
        }),
        convergence: ConvergenceStatement {
            converges_for: format!("Re(s) > {c_str}"),
            diverges_at: Some(c_str),
            note: "bridges are contracted first; they do not affect the threshold".into(),
        },
        lp,
        probe,
    })
}

fn run_probe(core: &Multigraph, c: &Rational, opts: &AnalyzeOptions) -> Result<ProbeSummary> {
    let note = "real s only: |psi^s| = psi^Re(s), so Re(s) alone governs convergence".to_string();
    if core.num_edges() > probe::MAX_MC_VARS {
        return Ok(ProbeSummary {
            status: "skipped".into(),
            note: format!("{note}; skipped because the core has more than {} edges", probe::MAX_MC_VARS),
            at_threshold: None,
            above_threshold: None,
        });
    }
    let run = |s: f64| {
        let mut cfg = ProbeConfig::new(s);
        cfg.seed = opts.seed;
        cfg.samples = opts.samples;
        probe::truncated_j(core, &cfg)
    };
    let cf = rational::to_f64(c);
    Ok(ProbeSummary {
        status: "ok".into(),
        note,
        at_threshold: Some(run(cf)?),
        above_threshold: Some(run(cf + 0.5)?),
    })
}
