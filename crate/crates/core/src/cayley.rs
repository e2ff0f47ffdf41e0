//! Cayley graphs `Cay(G, S)`: `u ~ v` iff `u·v⁻¹ ∈ S`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::group::{GroupError, GroupTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("connection set contains the identity")]
    IdentityInSet,
    #[error("connection set is not inverse-closed: {element} is present but its inverse {inverse} is not")]
    NotInverseClosed { element: usize, inverse: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid vertex partition: {0}")]
    InvalidPartition(String),
    #[error("quotient matrix must be 2x2, got {0}x{0}")]
    NotTwoByTwo(usize),
    #[error("eigenvalues are not integers (discriminant {0})")]
    NonIntegralEigenvalues(i64),
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("clique size {size} outside 2..={max}")]
    InvalidCliqueSize { size: usize, max: usize },
    #[error("computed parameters {params} violate {rule}")]
    ParameterInvariant { params: String, rule: &'static str },
    #[error("regular cliques disagree: size {0} nexus {1} versus size {2} nexus {3}")]
    InconsistentCliques(usize, usize, usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Inverse-closed, identity-free subset of a group, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    members: Vec<usize>,
}

impl ConnectionSet {
    pub fn new(group: &GroupTable, elements: impl IntoIterator<Item = usize>) -> Result<Self, GraphError> {
        let mut members: Vec<usize> = elements.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&x) = members.iter().find(|&&x| x >= group.order()) {
            return Err(GraphError::ElementOutOfRange(x));
        }
        if members.first() == Some(&group.identity()) {
            return Err(GraphError::IdentityInSet);
        }
        for &x in &members {
            let inverse = group.inv(x);
            if members.binary_search(&inverse).is_err() {
                return Err(GraphError::NotInverseClosed { element: x, inverse });
            }
        }
        Ok(ConnectionSet { members })
    }

    /// Resolves words (or cycle notation for permutation groups).
    pub fn parse<S: AsRef<str>>(group: &GroupTable, elements: &[S]) -> Result<Self, GraphError> {
        let resolved = elements
            .iter()
            .map(|w| group.parse_element(w.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        ConnectionSet::new(group, resolved)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Square matrix of an equitable partition: entry `(i, j)` is the number of
/// neighbors a vertex of block `i` has in block `j`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct QuotientMatrix(pub Vec<Vec<i64>>);

impl QuotientMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone)]
pub struct CayleyGraph<'g> {
    group: &'g GroupTable,
    set: ConnectionSet,
    adj: Vec<BitSet>,
}

pub fn build_cayley<'g>(group: &'g GroupTable, set: &ConnectionSet) -> Result<CayleyGraph<'g>, GraphError> {
    // Re-validate: the set may have been built against another group.
    let set = ConnectionSet::new(group, set.members().iter().copied())?;
    let n = group.order();
    let adj = (0..n)
        .map(|u| BitSet::from_indices(n, set.members().iter().map(|&s| group.mul(s, u))))
        .collect();
    Ok(CayleyGraph { group, set, adj })
}

impl<'g> CayleyGraph<'g> {
    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self) -> usize {
        self.set.len()
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &BitSet {
        &self.adj[u]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.adj[u].intersection_count(&self.adj[v])
    }

    pub fn is_complete(&self) -> bool {
        self.degree() + 1 == self.order()
    }

    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices have a distance");
            for v in self.adj[u].iter() {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Eccentricity of the identity, which is the diameter by
    /// vertex-transitivity.
    pub fn diameter(&self) -> Result<usize, GraphError> {
        self.distances_from(0)
            .into_iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
            .ok_or(GraphError::Disconnected)
    }

    /// `Cay(G, G \ (S ∪ {e}))`.
    pub fn complement(&self) -> CayleyGraph<'g> {
        let rest = (1..self.order()).filter(|&x| !self.set.contains(x));
        let set = ConnectionSet::new(self.group, rest).expect("complement of an inverse-closed set is inverse-closed");
        build_cayley(self.group, &set).expect("validated above")
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    /// Quotient matrix of `partition` if it is equitable.
    pub fn equitable_quotient(&self, partition: &[Vec<usize>]) -> Result<Option<QuotientMatrix>, GraphError> {
        let n = self.order();
        let mut owner = vec![usize::MAX; n];
        for (i, block) in partition.iter().enumerate() {
            if block.is_empty() {
                return Err(GraphError::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(GraphError::ElementOutOfRange(v));
                }
                if owner[v] != usize::MAX {
                    return Err(GraphError::InvalidPartition(format!("vertex {v} appears twice")));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(GraphError::InvalidPartition(format!("vertex {v} is not covered")));
        }
        let masks: Vec<BitSet> = partition
            .iter()
            .map(|b| BitSet::from_indices(n, b.iter().copied()))
            .collect();
        let mut rows = Vec::with_capacity(partition.len());
        for block in partition {
            let row: Vec<i64> = masks
                .iter()
                .map(|m| self.adj[block[0]].intersection_count(m) as i64)
                .collect();
            for &v in &block[1..] {
                let same = masks
                    .iter()
                    .zip(&row)
                    .all(|(m, &expected)| self.adj[v].intersection_count(m) as i64 == expected);
                if !same {
                    return Ok(None);
                }
            }
            rows.push(row);
        }
        Ok(Some(QuotientMatrix(rows)))
    }
}

pub(crate) fn exact_sqrt(x: i64) -> Option<i64> {
    if x < 0 {
        return None;
    }
    let r = x.isqrt();
    (r * r == x).then_some(r)
}

/// Exact eigenvalues `(larger, smaller)` of a 2×2 integer matrix.
pub fn quotient_eigenvalues(m: &QuotientMatrix) -> Result<(i64, i64), GraphError> {
    if m.size() != 2 || m.0.iter().any(|r| r.len() != 2) {
        return Err(GraphError::NotTwoByTwo(m.size()));
    }
    let trace = m.0[0][0] + m.0[1][1];
    let det = m.0[0][0] * m.0[1][1] - m.0[0][1] * m.0[1][0];
    let disc = trace * trace - 4 * det;
    let root = exact_sqrt(disc).ok_or(GraphError::NonIntegralEigenvalues(disc))?;
    if (trace + root) % 2 != 0 {
        return Err(GraphError::NonIntegralEigenvalues(disc));
    }
    Ok(((trace + root) / 2, (trace - root) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral};

    fn graph<'g>(g: &'g GroupTable, words: &[&str]) -> CayleyGraph<'g> {
        build_cayley(g, &ConnectionSet::parse(g, words).unwrap()).unwrap()
    }

    #[test]
    fn four_cycle() {
        let z4 = build_cyclic(4).unwrap();
        let c4 = graph(&z4, &["a", "a^-1"]);
        assert_eq!(c4.degree(), 2);
        assert!(c4.adjacent(0, 1) && c4.adjacent(1, 2) && c4.adjacent(2, 3) && c4.adjacent(3, 0));
        assert!(!c4.adjacent(0, 2));
        assert_eq!(c4.common_neighbors(0, 2), 2);
        assert_eq!(c4.diameter(), Ok(2));
    }

    #[test]
    fn set_validation() {
        let z5 = build_cyclic(5).unwrap();
        assert_eq!(ConnectionSet::parse(&z5, &["a", "1"]), Err(GraphError::IdentityInSet));
        assert_eq!(
            ConnectionSet::parse(&z5, &["a"]),
            Err(GraphError::NotInverseClosed { element: 1, inverse: 4 })
        );
        assert!(matches!(ConnectionSet::parse(&z5, &["q"]), Err(GraphError::Group(_))));
    }

    #[test]
    fn adjacency_is_right_quotient() {
        let d16 = build_dihedral(8).unwrap();
        let words = ["a", "a^-1", "a^2", "a^-2", "b", "b*a", "b*a^3", "b*a^4", "b*a^6"];
        let g = graph(&d16, &words);
        assert_eq!(g.order(), 16);
        for u in 0..16 {
            assert_eq!(g.neighbors(u).count(), 9);
            for v in 0..16 {
                let quotient = d16.mul(u, d16.inv(v));
                assert_eq!(g.adjacent(u, v), g.connection_set().contains(quotient));
                assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
            }
        }
    }

    #[test]
    fn complete_and_disconnected() {
        let z6 = build_cyclic(6).unwrap();
        let k6 = graph(&z6, &["a", "a^2", "a^3", "a^4", "a^5"]);
        assert!(k6.is_complete());
        assert_eq!(k6.diameter(), Ok(1));
        assert_eq!(k6.complement().degree(), 0);
        let split = graph(&z6, &["a^2", "a^4"]);
        assert!(!split.is_connected());
        assert_eq!(split.diameter(), Err(GraphError::Disconnected));
        assert_eq!(z6.subgroup_generated(split.connection_set().members()).len(), 3);
    }

    #[test]
    fn quotients() {
        let z4 = build_cyclic(4).unwrap();
        let c4 = graph(&z4, &["a", "a^-1"]);
        let singletons: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
        let q = c4.equitable_quotient(&singletons).unwrap().unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(q.0[u][v], c4.adjacent(u, v) as i64);
            }
        }
        assert_eq!(
            c4.equitable_quotient(&[vec![0, 1, 2, 3]]).unwrap(),
            Some(QuotientMatrix(vec![vec![2]]))
        );
        assert_eq!(c4.equitable_quotient(&[vec![0], vec![1, 2, 3]]).unwrap(), None);
        assert!(c4.equitable_quotient(&[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(c4.equitable_quotient(&[vec![0, 1]]).is_err());
    }

    #[test]
    fn two_by_two_eigenvalues() {
        let m = |a: i64, b: i64, c: i64, d: i64| QuotientMatrix(vec![vec![a, b], vec![c, d]]);
        assert_eq!(quotient_eigenvalues(&m(3, 6, 2, 7)), Ok((9, 1)));
        assert_eq!(quotient_eigenvalues(&m(1, 0, 0, 1)), Ok((1, 1)));
        // (k, c, a) = (8, 4, 1): x² − 10x + 16 → {8, 2}
        assert_eq!(quotient_eigenvalues(&m(3, 5, 1, 7)), Ok((8, 2)));
        assert_eq!(
            quotient_eigenvalues(&m(0, 1, 1, 1)),
            Err(GraphError::NonIntegralEigenvalues(5))
        );
        assert_eq!(
            quotient_eigenvalues(&QuotientMatrix(vec![vec![2]])),
            Err(GraphError::NotTwoByTwo(1))
        );
    }
}
