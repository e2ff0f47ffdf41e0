//! Regular cliques, edge and strong regularity, and Neumaier classification.

use std::fmt;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::cayley::{exact_sqrt, CayleyGraph, GraphError};

/// `(n, k, λ; a, c)` with `μ` when the graph is strongly regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct NeumaierParameters {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub a: u64,
    pub c: u64,
    pub mu: Option<u64>,
}

impl NeumaierParameters {
    /// Builds the tuple and checks the counting and parameter equations.
    pub fn new(n: u64, k: u64, lambda: u64, a: u64, c: u64, mu: Option<u64>) -> Result<Self, GraphError> {
        let p = NeumaierParameters { n, k, lambda, a, c, mu };
        match p.violation() {
            None => Ok(p),
            Some(rule) => Err(GraphError::ParameterInvariant {
                params: p.to_string(),
                rule,
            }),
        }
    }

    /// Name of the first violated relation, if any.
    pub fn violation(&self) -> Option<&'static str> {
        let [n, k, l, a, c] = [self.n, self.k, self.lambda, self.a, self.c].map(|v| v as i128);
        if a < 1 {
            return Some("nexus at least 1");
        }
        if c < 2 || c > k + 1 {
            return Some("clique size in 2..=k+1");
        }
        if c * (k - c + 1) != (n - c) * a {
            return Some("c(k-c+1) = (n-c)a");
        }
        if (k - c + 1) * (a - 1) != (c - 1) * (l - c + 2) {
            return Some("(k-c+1)(a-1) = (c-1)(lambda-c+2)");
        }
        if (c - 1) * (k - l - 1) != (n - k - 1) * a {
            return Some("(c-1)(k-lambda-1) = (n-k-1)a");
        }
        if let Some(mu) = self.mu {
            if (k - c + 1) * (k - l - 1) != (n - k - 1) * (mu as i128 - a) {
                return Some("(k-c+1)(k-lambda-1) = (n-k-1)(mu-a)");
            }
        }
        None
    }

    pub fn is_strongly_regular(&self) -> bool {
        self.mu.is_some()
    }
}

impl fmt::Display for NeumaierParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{},{})", self.n, self.k, self.lambda, self.a, self.c)?;
        if let Some(mu) = self.mu {
            write!(f, " mu={mu}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RegularClique {
    pub vertices: Vec<usize>,
    pub nexus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification {
    Complete,
    NotEdgeRegular,
    EdgeRegularNoRegularClique {
        lambda: u64,
    },
    StrictlyNeumaier {
        params: NeumaierParameters,
        clique: Vec<usize>,
    },
    StronglyRegularNeumaier {
        params: NeumaierParameters,
        clique: Vec<usize>,
    },
}

impl Classification {
    pub fn params(&self) -> Option<&NeumaierParameters> {
        match self {
            Classification::StrictlyNeumaier { params, .. }
            | Classification::StronglyRegularNeumaier { params, .. } => Some(params),
            _ => None,
        }
    }

    pub fn clique(&self) -> Option<&[usize]> {
        match self {
            Classification::StrictlyNeumaier { clique, .. }
            | Classification::StronglyRegularNeumaier { clique, .. } => Some(clique),
            _ => None,
        }
    }

    pub fn is_neumaier(&self) -> bool {
        self.params().is_some()
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::Complete => "complete",
            Classification::NotEdgeRegular => "not edge-regular",
            Classification::EdgeRegularNoRegularClique { .. } => "edge-regular without regular clique",
            Classification::StrictlyNeumaier { .. } => "strictly Neumaier",
            Classification::StronglyRegularNeumaier { .. } => "strongly regular Neumaier",
        }
    }
}

/// Common-neighbour count shared by every edge.
pub fn edge_regular_lambda(graph: &CayleyGraph) -> Option<usize> {
    let mut lambda = None;
    for u in 0..graph.order() {
        for v in graph.neighbors(u).iter().filter(|&v| v > u) {
            let common = graph.common_neighbors(u, v);
            match lambda {
                None => lambda = Some(common),
                Some(l) if l != common => return None,
                Some(_) => {}
            }
        }
    }
    lambda
}

/// Common-neighbour count shared by every pair of distinct non-adjacent
/// vertices. Pairs at the identity are scanned first.
pub fn strong_regular_mu(graph: &CayleyGraph) -> Option<usize> {
    let n = graph.order();
    let non_adjacent = |u: usize| (u + 1..n).filter(move |&v| !graph.adjacent(u, v));
    let mu = graph.common_neighbors(0, non_adjacent(0).next()?);
    if non_adjacent(0).any(|v| graph.common_neighbors(0, v) != mu) {
        return None;
    }
    (1..n)
        .all(|u| non_adjacent(u).all(|v| graph.common_neighbors(u, v) == mu))
        .then_some(mu)
}

/// Number of clique neighbours shared by every vertex outside `clique`.
/// Equal to `|C|` only in complete graphs.
pub fn nexus_of_clique(graph: &CayleyGraph, clique: &[usize]) -> Result<Option<usize>, GraphError> {
    if let Some(&v) = clique.iter().find(|&&v| v >= graph.order()) {
        return Err(GraphError::ElementOutOfRange(v));
    }
    if !graph.is_clique(clique) {
        return Err(GraphError::NotAClique);
    }
    let mask = BitSet::from_indices(graph.order(), clique.iter().copied());
    let mut outside = (0..graph.order()).filter(|&v| !mask.contains(v));
    let Some(first) = outside.next() else {
        return Ok(None);
    };
    let a = graph.neighbors(first).intersection_count(&mask);
    Ok(outside
        .all(|v| graph.neighbors(v).intersection_count(&mask) == a)
        .then_some(a))
}

struct Frame {
    candidates: BitSet,
    choice: Option<usize>,
}

/// Cliques of a fixed size through vertex 0, in lexicographic order.
pub struct CliqueIter<'a, 'g> {
    graph: &'a CayleyGraph<'g>,
    need: usize,
    stack: Vec<Frame>,
    singleton: bool,
}

impl Iterator for CliqueIter<'_, '_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if std::mem::take(&mut self.singleton) {
            return Some(vec![0]);
        }
        loop {
            let depth = self.stack.len();
            let frame = self.stack.last_mut()?;
            let Some(v) = frame.candidates.next_after(frame.choice) else {
                self.stack.pop();
                continue;
            };
            frame.choice = Some(v);
            if depth == self.need {
                let mut clique = Vec::with_capacity(self.need + 1);
                clique.push(0);
                clique.extend(self.stack.iter().filter_map(|f| f.choice));
                return Some(clique);
            }
            let mut next = frame.candidates.clone();
            next.clear_through(v);
            next.intersect_with(self.graph.neighbors(v));
            if next.count() >= self.need - depth {
                self.stack.push(Frame {
                    candidates: next,
                    choice: None,
                });
            }
        }
    }
}

pub fn enumerate_cliques_containing_identity<'a, 'g>(
    graph: &'a CayleyGraph<'g>,
    size: usize,
) -> Result<CliqueIter<'a, 'g>, GraphError> {
    let max = graph.degree() + 1;
    if size < 1 || size > max {
        return Err(GraphError::InvalidCliqueSize { size, max });
    }
    let mut it = CliqueIter {
        graph,
        need: size - 1,
        stack: Vec::new(),
        singleton: size == 1,
    };
    if size > 1 {
        it.stack.push(Frame {
            candidates: graph.neighbors(0).clone(),
            choice: None,
        });
    }
    Ok(it)
}

/// Every regular clique through the identity with nexus at least 1, by
/// increasing size then lexicographically.
pub fn find_regular_cliques(graph: &CayleyGraph) -> Vec<RegularClique> {
    let mut found = Vec::new();
    for size in 2..=graph.degree() + 1 {
        found.extend(regular_cliques_of_size(graph, size));
    }
    found
}

fn regular_cliques_of_size<'a>(graph: &'a CayleyGraph, size: usize) -> impl Iterator<Item = RegularClique> + 'a {
    enumerate_cliques_containing_identity(graph, size)
        .into_iter()
        .flatten()
        .filter_map(move |vertices| {
            let nexus = nexus_of_clique(graph, &vertices).ok().flatten()?;
            (nexus >= 1 && nexus < vertices.len()).then_some(RegularClique { vertices, nexus })
        })
}

/// First regular clique by size then lexicographic order.
pub fn first_regular_clique(graph: &CayleyGraph) -> Option<RegularClique> {
    (2..=graph.degree() + 1).find_map(|size| regular_cliques_of_size(graph, size).next())
}

/// Classifies a connected Cayley graph, re-deriving every parameter from
/// adjacency.
pub fn classify(graph: &CayleyGraph) -> Result<Classification, GraphError> {
    if !graph.is_connected() {
        return Err(GraphError::Disconnected);
    }
    if graph.is_complete() {
        return Ok(Classification::Complete);
    }
    let Some(lambda) = edge_regular_lambda(graph) else {
        return Ok(Classification::NotEdgeRegular);
    };
    let Some(clique) = first_regular_clique(graph) else {
        return Ok(Classification::EdgeRegularNoRegularClique { lambda: lambda as u64 });
    };
    let mu = strong_regular_mu(graph);
    let params = NeumaierParameters::new(
        graph.order() as u64,
        graph.degree() as u64,
        lambda as u64,
        clique.nexus as u64,
        clique.vertices.len() as u64,
        mu.map(|m| m as u64),
    )?;
    Ok(match mu {
        Some(_) => Classification::StronglyRegularNeumaier {
            params,
            clique: clique.vertices,
        },
        None => Classification::StrictlyNeumaier {
            params,
            clique: clique.vertices,
        },
    })
}

/// Checks that every regular clique through the identity has the same size
/// and nexus.
pub fn check_uniform_cliques(cliques: &[RegularClique]) -> Result<(), GraphError> {
    let Some(first) = cliques.first() else {
        return Ok(());
    };
    match cliques
        .iter()
        .find(|c| (c.vertices.len(), c.nexus) != (first.vertices.len(), first.nexus))
    {
        Some(other) => Err(GraphError::InconsistentCliques(
            first.vertices.len(),
            first.nexus,
            other.vertices.len(),
            other.nexus,
        )),
        None => Ok(()),
    }
}

/// Roots `r > s` of `x² − (λ−μ)x − (k−μ)` when both are integers.
pub fn srg_eigenvalues(k: i64, lambda: i64, mu: i64) -> Option<(i64, i64)> {
    let b = lambda - mu;
    let disc = b * b + 4 * (k - mu);
    let root = exact_sqrt(disc)?;
    if (b + root) % 2 != 0 {
        return None;
    }
    Some(((b + root) / 2, (b - root) / 2))
}

/// `r = c−a−1`, `s = −μ/a`, and with `m = −s`: `c = 1 + k/m`, `a = μ/m`.
pub fn integer_eigs_check(p: &NeumaierParameters) -> bool {
    let Some(mu) = p.mu else {
        return false;
    };
    let [k, l, mu, a, c] = [p.k, p.lambda, mu, p.a, p.c].map(|v| v as i64);
    let Some((r, s)) = srg_eigenvalues(k, l, mu) else {
        return false;
    };
    let m = -s;
    r == c - a - 1 && s * a == -mu && m > 0 && k % m == 0 && c == 1 + k / m && a * m == mu
}
