//! End-to-end approximation: open decomposition, even-ear minimisation,
//! pendant short ears, niceness, then drop the trivial ears.

use crate::bounds::{
    check_claims, claim_flags, eardrum_of, lower_bounds, max_earmuff_bruteforce, vertex_partition,
    AnalysisReport, ClaimCheck, Eardrum, Earmuff, DEFAULT_EARMUFF_GUARD,
};
use crate::ear::{build_open_decomposition_from, minimize_even_ears, EarDecomposition, SearchLimits};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::nice::{is_nice, nicify_traced};
use crate::oracle::{opt_2vcss_bruteforce, DEFAULT_OPT_GUARD};
use crate::pendant::pendantize_traced;
use crate::trace::Trace;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Edge limit for the exact even-ear searches.
    pub phi_guard: usize,
    /// Edge limit for the exact optimum; `None` skips it.
    pub oracle_guard: Option<usize>,
    pub earmuff_guard: usize,
    /// Picks the root of the initial decomposition (`seed mod n`).
    pub seed: u64,
    /// Start from this decomposition instead of building one.
    pub init: Option<EarDecomposition>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            phi_guard: SearchLimits::default().max_edges,
            oracle_guard: None,
            earmuff_guard: DEFAULT_EARMUFF_GUARD,
            seed: 0,
            init: None,
        }
    }
}

impl PipelineConfig {
    pub fn with_oracle(mut self) -> Self {
        self.oracle_guard = Some(DEFAULT_OPT_GUARD);
        self
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    /// Edge ids of the output subgraph, ascending.
    pub h: Vec<EdgeId>,
    pub initial: EarDecomposition,
    /// After even-ear minimisation, before the rewrites.
    pub evenmin: EarDecomposition,
    /// After pendantization, before niceness.
    pub pendant: EarDecomposition,
    pub decomposition: EarDecomposition,
    pub trace: Trace,
    pub eardrum: Eardrum,
    pub earmuff: Option<Earmuff>,
    pub claims: Vec<ClaimCheck>,
    pub report: AnalysisReport,
}

impl PipelineOutput {
    pub fn claim_violations(&self) -> Vec<&ClaimCheck> {
        self.claims.iter().filter(|c| !c.holds()).collect()
    }
}

pub fn check_instance(g: &Graph) -> Result<()> {
    if !g.is_two_vertex_connected() {
        return Err(Error::NotTwoConnected);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 3) {
        return Err(Error::MinDegreeTooLow {
            vertex: v,
            degree: g.degree(v),
            required: 3,
        });
    }
    Ok(())
}

/// Runs the whole algorithm on `g` and fills in the analysis report.
///
/// Any broken invariant along the way is an [`Error::InvariantViolation`],
/// including an output above 17/12 of the optimum on a certified run.
pub fn approximate_2vcss(g: &Graph, config: &PipelineConfig) -> Result<PipelineOutput> {
    check_instance(g)?;
    let initial = match &config.init {
        Some(d) => {
            if let Some(v) = d.validate(g).first() {
                return Err(Error::precondition(format!("initial decomposition: {v}")));
            }
            if !d.is_open() {
                return Err(Error::precondition("initial decomposition is not open"));
            }
            d.clone()
        }
        None => build_open_decomposition_from(g, (config.seed % g.n() as u64) as usize)?,
    };
    let outcome = minimize_even_ears(g, &initial, SearchLimits::new(config.phi_guard))?;
    let certified = outcome.certified;
    let mut trace = Trace::default();
    let pendant = pendantize_traced(g, &outcome.decomposition, certified, &mut trace)?;
    let d = nicify_traced(g, &pendant, certified, &mut trace)?;
    if !is_nice(g, &d) {
        return Err(Error::invariant("final decomposition is not nice"));
    }
    let h = d.nontrivial_edge_ids(g);
    if !g.spanning_subgraph(&h).is_two_vertex_connected() {
        return Err(Error::invariant("output subgraph is not 2-vertex-connected"));
    }

    let part = vertex_partition(g, &d);
    let eardrum = eardrum_of(g, &d)?;
    let earmuff = if eardrum.len() <= config.earmuff_guard {
        Some(max_earmuff_bruteforce(g, &eardrum, &part.v_i, config.earmuff_guard)?)
    } else {
        None
    };
    let phi = d.even_count();
    let mu = earmuff.as_ref().map(|e| e.mu);
    let (l_phi, l_mu) = lower_bounds(g.n(), phi, eardrum.len(), mu.unwrap_or(0));
    let opt = match config.oracle_guard {
        Some(guard) if g.m() <= guard => Some(opt_2vcss_bruteforce(g, guard)?.size),
        _ => None,
    };
    let mut report = AnalysisReport {
        n: g.n(),
        m: g.m(),
        phi,
        phi_certified: certified,
        pi: d.pi(),
        pi3: d.pi3(),
        m_size: eardrum.len(),
        mu,
        v_i: part.v_i.len(),
        v_d: part.v_d.len(),
        v_m: part.v_m.len(),
        l_phi,
        l_mu: mu.map(|_| l_mu),
        output_edges: h.len(),
        opt,
        ratio: opt.map(|o| h.len() as f64 / o as f64),
        ..Default::default()
    };
    let claims = check_claims(g, &d, &report)?;
    let forest = earmuff.as_ref().map(|e| e.contact_graph_is_forest(g.n()));
    report.claims = claim_flags(&claims, forest);

    if let Some(o) = opt {
        if certified && 12 * h.len() > 17 * o {
            return Err(Error::invariant(format!(
                "output has {} edges, above 17/12 of the optimum {o}",
                h.len()
            )));
        }
    }
    Ok(PipelineOutput {
        h,
        initial,
        evenmin: outcome.decomposition,
        pendant,
        decomposition: d,
        trace,
        eardrum,
        earmuff,
        claims,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named;

    #[test]
    fn seeded_k4_gives_a_hamiltonian_cycle() {
        let init = EarDecomposition::from_paths(0, vec![vec![0, 1, 2, 0], vec![0, 3, 1], vec![2, 3]]);
        let config = PipelineConfig {
            init: Some(init),
            ..PipelineConfig::default().with_oracle()
        };
        let out = approximate_2vcss(&named::complete(4), &config).unwrap();
        let g = named::complete(4);
        let edges: Vec<_> = out.h.iter().map(|&id| g.edge(id)).collect();
        assert_eq!(edges, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(out.report.opt, Some(4));
        assert_eq!(out.report.ratio, Some(1.0));
        assert_eq!(out.trace.cases(), vec!["closed-short-first"]);
        assert_eq!((out.report.l_phi, out.report.l_mu), (4, Some(3)));
    }

    #[test]
    fn rejects_low_degree_and_disconnected_input() {
        let config = PipelineConfig::default();
        assert!(matches!(
            approximate_2vcss(&named::cycle(5), &config),
            Err(Error::MinDegreeTooLow { degree: 2, .. })
        ));
        let two_triangles =
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(matches!(
            approximate_2vcss(&two_triangles, &config),
            Err(Error::NotTwoConnected)
        ));
    }

    #[test]
    fn named_graphs_within_ratio() {
        for name in ["k33", "petersen", "prism", "w5", "q3", "k5"] {
            let g = named::by_name(name).unwrap();
            let out = approximate_2vcss(&g, &PipelineConfig::default().with_oracle()).unwrap();
            let opt = out.report.opt.unwrap();
            assert!(12 * out.h.len() <= 17 * opt, "{name}");
            assert!(out.claim_violations().is_empty(), "{name}");
        }
    }
}
