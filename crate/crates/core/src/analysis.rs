//! Full property report for one Cayley graph: classification plus every
//! graph-side and algebra-side check that applies to it.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    check_complement_identities, check_pds_identity, check_regular_clique_identity, check_schur_closure,
    check_subgroup_clique_identity, second_identity_orders, AlgebraError, Fit, PartitionBasis, SchurOutcome,
    SrgConstants,
};
use crate::cayley::{build_cayley, quotient_eigenvalues, CayleyGraph, ConnectionSet, GraphError, QuotientMatrix};
use crate::clique::{
    check_uniform_cliques, classify, find_regular_cliques, integer_eigs_check, nexus_of_clique, srg_eigenvalues,
    Classification, NeumaierParameters, RegularClique,
};
use crate::feasibility;
use crate::group::GroupTable;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub order: usize,
    pub degree: usize,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub classification: Option<Classification>,
    pub clique_words: Vec<String>,
    pub quotient: Option<QuotientMatrix>,
    pub quotient_eigenvalues: Option<(i64, i64)>,
    pub srg_eigenvalues: Option<(i64, i64)>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Analysis {
    pub fn params(&self) -> Option<&NeumaierParameters> {
        self.classification.as_ref().and_then(Classification::params)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Whether the group has an element whose order equals the group order.
pub fn is_cyclic(group: &GroupTable) -> bool {
    (0..group.order()).any(|x| group.element_order(x) == group.order())
}

pub fn analyze(group: &GroupTable, set: &ConnectionSet) -> Result<Analysis, AnalysisError> {
    let graph = build_cayley(group, set)?;
    let connected = graph.is_connected();
    let mut analysis = Analysis {
        order: graph.order(),
        degree: graph.degree(),
        connected,
        diameter: None,
        classification: None,
        clique_words: Vec::new(),
        quotient: None,
        quotient_eigenvalues: None,
        srg_eigenvalues: None,
        checks: Vec::new(),
        pass: false,
    };
    if !connected {
        analysis
            .checks
            .push(Check::new("connected", false, "graph is disconnected"));
        return Ok(analysis);
    }
    analysis.diameter = Some(graph.diameter()?);
    let classification = classify(&graph)?;
    analysis.classification = Some(classification.clone());
    let (Some(params), Some(clique)) = (classification.params().copied(), classification.clique()) else {
        analysis
            .checks
            .push(Check::new("neumaier", false, classification.label()));
        return Ok(analysis);
    };
    let words = group.shortest_words();
    analysis.clique_words = clique.iter().map(|&x| words[x].to_string()).collect();
    neumaier_checks(group, &graph, params, clique, &mut analysis)?;
    analysis.pass = analysis.checks.iter().all(|c| c.pass);
    Ok(analysis)
}

fn neumaier_checks(
    group: &GroupTable,
    graph: &CayleyGraph,
    p: NeumaierParameters,
    clique: &[usize],
    out: &mut Analysis,
) -> Result<(), AnalysisError> {
    let set = graph.connection_set().members();
    let [n, k, lambda, a, c] = [p.n, p.k, p.lambda, p.a, p.c].map(|v| v as i64);
    let checks = &mut out.checks;

    let diameter = out.diameter.unwrap_or(0);
    checks.push(Check::new(
        "diameter_two",
        diameter == 2,
        format!("diameter {diameter}"),
    ));

    let cliques = find_regular_cliques(graph);
    let uniform = check_uniform_cliques(&cliques);
    checks.push(Check::new(
        "uniform_cliques",
        uniform.is_ok()
            && cliques
                .iter()
                .all(|r| r.vertices.len() as i64 == c && r.nexus as i64 == a),
        match uniform {
            Ok(()) => format!("{} regular cliques through the identity", cliques.len()),
            Err(e) => e.to_string(),
        },
    ));

    let graph_nexus = nexus_of_clique(graph, clique)?;
    let fitted = check_regular_clique_identity(group, set, clique)?;
    checks.push(Check::new(
        "clique_identity",
        graph_nexus.map(|x| x as u64) == fitted.clone().value() && graph_nexus == Some(a as usize),
        format!("graph nexus {graph_nexus:?}, algebra fit {fitted:?}"),
    ));

    let pds = check_pds_identity(group, set)?;
    let pds_ok = match (p.mu, &pds) {
        (Some(mu), Fit::Match(fit)) => *fit == (lambda, mu as i64),
        (None, Fit::Mismatch(_)) => true,
        _ => false,
    };
    checks.push(Check::new("pds_identity", pds_ok, format!("{pds:?}")));

    if let Some(mu) = p.mu {
        let constants = SrgConstants {
            lambda,
            mu: mu as i64,
            nexus: a,
        };
        let orders = second_identity_orders(group, set, clique, constants)?;
        checks.push(Check::new(
            "second_identity",
            orders.as_written,
            format!("as written {}, reversed {}", orders.as_written, orders.reversed),
        ));
        let comp = check_complement_identities(group, set, clique, constants)?;
        checks.push(Check::new("complement_identities", comp.holds(), format!("{comp:?}")));
        checks.push(Check::new(
            "integer_eigenvalues",
            integer_eigs_check(&p),
            format!("srg eigenvalues {:?}", srg_eigenvalues(k, lambda, mu as i64)),
        ));
        out.srg_eigenvalues = srg_eigenvalues(k, lambda, mu as i64);
        if is_cyclic(group) {
            let trivial = !graph.complement().is_connected();
            checks.push(Check::new(
                "circulant_trivial",
                trivial,
                "complement of a strongly regular circulant must be disconnected",
            ));
        }
    }

    let rest: Vec<usize> = (0..graph.order()).filter(|v| !clique.contains(v)).collect();
    let quotient = graph.equitable_quotient(&[clique.to_vec(), rest])?;
    let expected = QuotientMatrix(vec![vec![c - 1, k - c + 1], vec![a, k - a]]);
    checks.push(Check::new(
        "quotient_matrix",
        quotient.as_ref() == Some(&expected),
        format!("{quotient:?}"),
    ));
    if let Some(q) = &quotient {
        let eig = quotient_eigenvalues(q).ok();
        checks.push(Check::new(
            "quotient_eigenvalues",
            eig == Some((k, c - a - 1)),
            format!("{eig:?}"),
        ));
        out.quotient_eigenvalues = eig;
    }
    out.quotient = quotient;

    if a == 1 {
        checks.push(Check::new(
            "nexus_one",
            lambda == c - 2 && k - 2 * c + 3 > 0,
            format!("lambda {lambda}, k-2c+3 = {}", k - 2 * c + 3),
        ));
    }

    let subgroup_clique: Option<&RegularClique> = cliques.iter().find(|r| group.is_subgroup(&r.vertices));
    if let Some(h) = subgroup_clique {
        let index = n / c;
        checks.push(Check::new(
            "subgroup_clique_degree",
            k == (index - 1) * a + c - 1,
            format!("|S| = {k}, ([G:C]-1)a + |C| - 1 = {}", (index - 1) * a + c - 1),
        ));
        checks.push(Check::new(
            "subgroup_clique_identity",
            check_subgroup_clique_identity(group, set, &h.vertices, a)?,
            "(S\\C)C = a(G\\C)",
        ));
        if p.mu.is_some() && group.is_abelian() {
            let basis = PartitionBasis::neumaier(group, set, &h.vertices)?;
            let outcome = check_schur_closure(group, &basis)?;
            checks.push(Check::new(
                "schur_closure",
                matches!(outcome, SchurOutcome::Closed(_)),
                match outcome {
                    SchurOutcome::Closed(sc) => format!("closed, rank {}", sc.rank),
                    SchurOutcome::NotClosed { left, right, mismatch } => {
                        format!("blocks {left}x{right} fail at {mismatch:?}")
                    }
                },
            ));
        }
    }

    if group.is_abelian() && c == 3 && a == 1 {
        checks.push(Check::new(
            "size_three_subgroup",
            cliques.iter().all(|r| group.is_subgroup(&r.vertices)),
            "every regular clique through the identity is a subgroup of order 3",
        ));
    }

    if k <= 20 {
        let listed = feasibility::enumerate(k, None).iter().any(|v| {
            v.is_survivor()
                && (v.candidate.n, v.candidate.lambda, v.candidate.a, v.candidate.c) == (n, Some(lambda), a, c)
        });
        checks.push(Check::new(
            "feasible_parameters",
            listed,
            "parameters survive the feasibility sweep",
        ));
    }
    Ok(())
}
