//! Integer feasibility conditions for Neumaier Cayley graph parameters and
//! the small-valency sweep built from them.

use std::fmt;

use serde::Serialize;

use crate::clique::{integer_eigs_check, NeumaierParameters};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    AtMost,
    Positive,
    Holds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub name: &'static str,
    pub left: Option<i64>,
    pub right: Option<i64>,
    pub relation: Relation,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl ConstraintReport {
    fn compare(name: &'static str, left: i64, right: i64, relation: Relation) -> Self {
        let pass = match relation {
            Relation::Equal => left == right,
            Relation::AtMost => left <= right,
            Relation::Positive => left > 0,
            Relation::Holds => true,
        };
        ConstraintReport {
            name,
            left: Some(left),
            right: Some(right),
            relation,
            pass,
            note: None,
        }
    }

    fn flag(name: &'static str, pass: bool, note: &'static str) -> Self {
        ConstraintReport {
            name,
            left: None,
            right: None,
            relation: Relation::Holds,
            pass,
            note: Some(note),
        }
    }
}

/// `c(k−c+1) = (n−c)a`.
pub fn counting_ok(n: i64, k: i64, c: i64, a: i64) -> ConstraintReport {
    ConstraintReport::compare("counting", c * (k - c + 1), (n - c) * a, Relation::Equal)
}

/// λ from `(k−c+1)(a−1) = (c−1)(λ−c+2)` when integral with `c−2 ≤ λ ≤ k−1`.
pub fn clique_lambda(k: i64, c: i64, a: i64) -> Option<i64> {
    if c < 2 {
        return None;
    }
    let num = (k - c + 1) * (a - 1);
    if num % (c - 1) != 0 {
        return None;
    }
    let lambda = num / (c - 1) + c - 2;
    (c - 2..=k - 1).contains(&lambda).then_some(lambda)
}

/// `(c−1)(k−λ−1) = (n−k−1)a`.
pub fn non_neighbour_ok(n: i64, k: i64, lambda: i64, c: i64, a: i64) -> ConstraintReport {
    ConstraintReport::compare(
        "non_neighbour",
        (c - 1) * (k - lambda - 1),
        (n - k - 1) * a,
        Relation::Equal,
    )
}

/// Whether [`non_neighbour_ok`] holds for some λ in `c−2..=k−1`.
pub fn non_neighbour_solvable(n: i64, k: i64, c: i64, a: i64) -> ConstraintReport {
    let pass = (c - 2..k).any(|l| non_neighbour_ok(n, k, l, c, a).pass);
    ConstraintReport::flag("non_neighbour", pass, "no lambda in range satisfies the relation")
}

/// μ from `(k−c+1)(k−λ−1) = (n−k−1)(μ−a)` when integral with `a ≤ μ ≤ k`.
pub fn srg_mu(n: i64, k: i64, lambda: i64, c: i64, a: i64) -> Option<i64> {
    if n <= k + 1 {
        return None;
    }
    let num = (k - c + 1) * (k - lambda - 1);
    if num % (n - k - 1) != 0 {
        return None;
    }
    let mu = num / (n - k - 1) + a;
    (a..=k).contains(&mu).then_some(mu)
}

/// Largest order of a diameter-two Neumaier graph of valency `k`.
pub fn vertex_bound(k: i64) -> i64 {
    (1 + k + k * (k - 2)).max(2 * k)
}

/// Twice the minimum edge count.
pub fn edge_lower_bound(k: i64, lambda: i64, c: i64, a: i64) -> i64 {
    2 * k * (k - lambda) + 2 * (k - c + 1) * (a - 1) + (k - c + 1) * (lambda - a + 1) + (c - 1) * (c - 2)
}

/// Compares the bound against twice the edge count `nk`. Equality forces
/// `μ = k`.
pub fn edge_bound_check(n: i64, k: i64, lambda: i64, c: i64, a: i64) -> ConstraintReport {
    let bound = edge_lower_bound(k, lambda, c, a);
    let mut report = ConstraintReport::compare("edge_bound", bound, n * k, Relation::AtMost);
    if bound == n * k {
        report.note = Some("bound attained: forces mu = k");
    }
    report
}

/// `a = 1 ⇒ k − 2c + 3 > 0`.
pub fn nexus_one_ok(k: i64, c: i64) -> ConstraintReport {
    ConstraintReport::compare("nexus_one", k - 2 * c + 3, 0, Relation::Positive)
}

/// `λ = 1 ⇒ k` even.
pub fn lambda1_parity_ok(k: i64, lambda: i64) -> ConstraintReport {
    ConstraintReport::flag(
        "lambda_one_parity",
        lambda != 1 || k % 2 == 0,
        "lambda = 1 needs even valency",
    )
}

/// `c ≥ k` only for `C₄`.
pub fn special_cases(n: i64, k: i64, c: i64) -> ConstraintReport {
    ConstraintReport::flag(
        "special_cases",
        c < k || (n, k, c) == (4, 2, 2),
        "c >= k forces the 4-cycle",
    )
}

/// `a = c` only in complete graphs.
pub fn complete_flag(a: i64, c: i64) -> ConstraintReport {
    ConstraintReport::flag(
        "complete_flag",
        a != c,
        "nexus equal to clique size forces a complete graph",
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Feasible,
    Eliminated { reasons: Vec<&'static str> },
    ExistenceUnresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub n: i64,
    pub k: i64,
    pub lambda: Option<i64>,
    pub a: i64,
    pub c: i64,
    pub mu: Option<i64>,
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lambda {
            Some(l) => write!(f, "({},{},{};{},{})", self.n, self.k, l, self.a, self.c),
            None => write!(f, "({},{},?;{},{})", self.n, self.k, self.a, self.c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityVerdict {
    pub candidate: Candidate,
    #[serde(flatten)]
    pub status: Status,
    pub reasons: Vec<ConstraintReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_eigenvalues: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl FeasibilityVerdict {
    pub fn is_survivor(&self) -> bool {
        !matches!(self.status, Status::Eliminated { .. })
    }

    /// One line: tuple, optional μ, status and failed constraints.
    pub fn summary(&self) -> String {
        let mut line = self.candidate.to_string();
        if let Some(mu) = self.candidate.mu {
            line.push_str(&format!(" mu={mu}"));
        }
        match &self.status {
            Status::Feasible => line.push_str(" feasible"),
            Status::ExistenceUnresolved => line.push_str(" unresolved"),
            Status::Eliminated { reasons } => {
                line.push_str(" eliminated ");
                line.push_str(&reasons.join(","));
            }
        }
        line
    }
}

/// `(n, k, λ, a, c)`.
pub type Tuple = (i64, i64, i64, i64, i64);

/// Tuples that pass every arithmetic condition but whose existence as a
/// Cayley graph is settled only by exhaustive search.
pub const UNRESOLVED: [Tuple; 7] = [
    (21, 8, 1, 1, 3),
    (25, 8, 3, 1, 5),
    (15, 8, 4, 2, 5),
    (14, 9, 6, 3, 7),
    (27, 10, 1, 1, 3),
    (15, 10, 6, 3, 5),
    (14, 10, 7, 4, 7),
];

const ANNOTATIONS: [(Tuple, &str); 17] = [
    ((4, 2, 0, 1, 2), "the 4-cycle"),
    ((9, 4, 1, 1, 3), "lattice graph L2(3)"),
    ((6, 4, 2, 2, 3), "complete multipartite K2,2,2"),
    (
        (15, 6, 1, 1, 3),
        "only realization is the GQ(2,2) collinearity graph, which is not a Cayley graph; not recomputed",
    ),
    (
        (10, 6, 3, 2, 4),
        "complement of the Petersen graph, not a Cayley graph; not recomputed",
    ),
    ((16, 6, 2, 1, 4), "lattice graph L2(4)"),
    (
        (20, 7, 2, 1, 4),
        "no strictly Neumaier or strongly regular graph exists per published tables; not recomputed",
    ),
    (
        (24, 8, 2, 1, 4),
        "four vertex-transitive strictly Neumaier graphs, all Cayley",
    ),
    ((10, 8, 6, 4, 5), "complete multipartite K2,2,2,2,2"),
    ((16, 9, 4, 2, 4), "smallest strictly Neumaier graph"),
    (
        (28, 9, 2, 1, 4),
        "strictly Neumaier Cayley graphs over Z28 and Z2 x Z14",
    ),
    (
        (30, 9, 3, 1, 5),
        "no strictly Neumaier or strongly regular graph exists per published tables; not recomputed",
    ),
    (
        (32, 10, 2, 1, 4),
        "no strictly Neumaier or strongly regular graph exists per published tables; not recomputed",
    ),
    (
        (35, 10, 3, 1, 5),
        "no Neumaier Cayley graph: exhaustive search over Z35",
    ),
    (
        (16, 10, 6, 3, 6),
        "complement of the Clebsch graph, not Neumaier; not recomputed",
    ),
    ((21, 10, 5, 2, 6), "triangular graph T(7)"),
    ((36, 10, 4, 1, 6), "lattice graph L2(6)"),
];

fn annotation(key: Tuple) -> Option<&'static str> {
    ANNOTATIONS.iter().find(|(k, _)| *k == key).map(|(_, note)| *note)
}

/// Evaluates every applicable condition on one `(n, k, c, a)` candidate.
pub fn evaluate(n: i64, k: i64, c: i64, a: i64) -> FeasibilityVerdict {
    let lambda = clique_lambda(k, c, a);
    let mut reasons = vec![
        ConstraintReport::compare("vertex_bound", n, vertex_bound(k), Relation::AtMost),
        ConstraintReport::compare("non_complete", k + 2, n, Relation::AtMost),
        counting_ok(n, k, c, a),
        ConstraintReport::flag("clique_lambda", lambda.is_some(), "lambda integral in c-2..=k-1"),
    ];
    match lambda {
        Some(l) => reasons.push(non_neighbour_ok(n, k, l, c, a)),
        None => reasons.push(non_neighbour_solvable(n, k, c, a)),
    }
    if a == 1 {
        reasons.push(nexus_one_ok(k, c));
    }
    if lambda == Some(1) {
        reasons.push(lambda1_parity_ok(k, 1));
    }
    if c >= k {
        reasons.push(special_cases(n, k, c));
    }
    reasons.push(complete_flag(a, c));
    reasons.push(ConstraintReport::flag("handshake", n * k % 2 == 0, "nk must be even"));
    let mut mu = None;
    if let Some(l) = lambda {
        reasons.push(edge_bound_check(n, k, l, c, a));
        mu = srg_mu(n, k, l, c, a);
    }

    let failed: Vec<&'static str> = reasons.iter().filter(|r| !r.pass).map(|r| r.name).collect();
    let candidate = Candidate { n, k, lambda, a, c, mu };
    let status = match lambda {
        _ if !failed.is_empty() => Status::Eliminated { reasons: failed },
        Some(l) if UNRESOLVED.contains(&(n, k, l, a, c)) => Status::ExistenceUnresolved,
        _ => Status::Feasible,
    };
    let integer_eigenvalues = match (&status, lambda, mu) {
        (Status::Feasible | Status::ExistenceUnresolved, Some(l), Some(m)) => {
            let params = NeumaierParameters {
                n: n as u64,
                k: k as u64,
                lambda: l as u64,
                a: a as u64,
                c: c as u64,
                mu: Some(m as u64),
            };
            Some(integer_eigs_check(&params))
        }
        _ => None,
    };
    let note = match status {
        Status::ExistenceUnresolved => Some("all arithmetic conditions hold; existence decided by exhaustive search"),
        Status::Feasible => annotation((n, k, lambda.unwrap_or(-1), a, c)),
        Status::Eliminated { .. } => None,
    };
    FeasibilityVerdict {
        candidate,
        status,
        reasons,
        integer_eigenvalues,
        note,
    }
}

/// Every `(c, a)` with `2 ≤ c ≤ k+1`, `1 ≤ a < c` and integral
/// `n = c + c(k−c+1)/a`, sorted by `(c, n, a)`.
pub fn enumerate(k: i64, max_n: Option<i64>) -> Vec<FeasibilityVerdict> {
    let mut verdicts: Vec<FeasibilityVerdict> = (2..=k + 1)
        .flat_map(|c| (1..c).map(move |a| (c, a)))
        .filter(|&(c, a)| (c * (k - c + 1)) % a == 0)
        .map(|(c, a)| (c + c * (k - c + 1) / a, c, a))
        .filter(|&(n, _, _)| max_n.is_none_or(|m| n <= m))
        .map(|(n, c, a)| evaluate(n, k, c, a))
        .collect();
    verdicts.sort_by_key(|v| (v.candidate.c, v.candidate.n, v.candidate.a));
    verdicts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_examples() {
        assert!(counting_ok(24, 8, 4, 1).pass);
        assert!(counting_ok(35, 10, 5, 1).pass);
        let r = counting_ok(10, 4, 3, 1);
        assert!(!r.pass);
        assert_eq!((r.left, r.right), (Some(6), Some(7)));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(clique_lambda(9, 4, 2), Some(4));
        assert_eq!(clique_lambda(8, 4, 1), Some(2));
        assert_eq!(clique_lambda(10, 5, 3), Some(6));
        assert_eq!(clique_lambda(5, 4, 2), None);
        for c in 2..8 {
            assert_eq!(clique_lambda(10, c, 1), Some(c - 2));
        }
    }

    #[test]
    fn non_neighbour_examples() {
        assert!(non_neighbour_ok(16, 9, 4, 4, 2).pass);
        assert!(!non_neighbour_solvable(8, 5, 4, 2).pass);
        assert!(non_neighbour_ok(4, 2, 0, 2, 1).pass);
    }

    #[test]
    fn mu_examples() {
        assert_eq!(srg_mu(9, 4, 1, 3, 1), Some(2));
        for k in 2..12 {
            assert_eq!(srg_mu(2 * k, k, 0, 2, 1), Some(k));
        }
        assert_eq!(srg_mu(21, 10, 5, 6, 2), Some(4));
        assert_eq!(srg_mu(5, 4, 3, 5, 1), None);
    }

    #[test]
    fn vertex_bounds() {
        let bounds: Vec<i64> = (4..=10).map(vertex_bound).collect();
        assert_eq!(bounds, [13, 21, 31, 43, 57, 73, 91]);
        assert_eq!(vertex_bound(2), 4);
    }

    #[test]
    fn edge_bounds() {
        let r = edge_bound_check(6, 3, 0, 2, 1);
        assert!(r.pass);
        assert_eq!(r.left, Some(18));
        assert!(r.note.is_some());
        assert_eq!(edge_lower_bound(8, 2, 4, 1), 2 * 56);
        assert_eq!(edge_lower_bound(10, 6, 5, 3), 2 * 70);
        assert!(edge_bound_check(15, 10, 6, 5, 3).pass);
    }

    #[test]
    fn auxiliary_checks() {
        assert!(!nexus_one_ok(5, 4).pass);
        assert!(!lambda1_parity_ok(5, 1).pass);
        assert!(lambda1_parity_ok(6, 1).pass);
        assert!(special_cases(4, 2, 2).pass);
        assert!(!special_cases(9, 8, 8).pass);
        assert!(!complete_flag(3, 3).pass);
    }

    fn survivors(k: i64) -> Vec<String> {
        enumerate(k, None)
            .iter()
            .filter(|v| v.is_survivor())
            .map(|v| v.candidate.to_string())
            .collect()
    }

    #[test]
    fn small_valency_survivors() {
        assert_eq!(survivors(2), ["(4,2,0;1,2)"]);
        assert_eq!(survivors(3), ["(6,3,0;1,2)"]);
        assert_eq!(survivors(4), ["(8,4,0;1,2)", "(6,4,2;2,3)", "(9,4,1;1,3)"]);
        let k8 = survivors(8);
        assert!(k8.contains(&"(24,8,2;1,4)".to_string()));
        assert!(k8.contains(&"(12,8,4;2,3)".to_string()));
        let k9 = survivors(9);
        for t in ["(28,9,2;1,4)", "(16,9,4;2,4)", "(18,9,0;1,2)", "(12,9,6;3,4)"] {
            assert!(k9.contains(&t.to_string()), "{t}");
        }
    }

    #[test]
    fn unresolved_at_valency_ten() {
        let v = enumerate(10, None);
        for t in ["(27,10,1;1,3)", "(15,10,6;3,5)"] {
            let verdict = v.iter().find(|v| v.candidate.to_string() == t).unwrap();
            assert_eq!(verdict.status, Status::ExistenceUnresolved);
        }
    }

    #[test]
    fn verdict_invariants_over_sweep() {
        for k in 2..=20 {
            for v in enumerate(k, None) {
                match &v.status {
                    Status::Eliminated { reasons } => assert!(!reasons.is_empty()),
                    _ => assert!(v.reasons.iter().all(|r| r.pass)),
                }
                let Candidate { n, k, lambda, a, c, mu } = v.candidate;
                if v.is_survivor() {
                    let l = lambda.unwrap();
                    assert!(counting_ok(n, k, c, a).pass);
                    assert!(non_neighbour_ok(n, k, l, c, a).pass);
                    assert_eq!(v.integer_eigenvalues.is_some(), mu.is_some());
                }
                if let Some(l) = lambda {
                    if n > k + 1 {
                        let attained = edge_bound_check(n, k, l, c, a).note.is_some();
                        assert_eq!(attained, mu == Some(k), "{}", v.summary());
                    }
                }
            }
        }
    }

    #[test]
    fn max_n_filters() {
        assert!(enumerate(10, Some(20)).iter().all(|v| v.candidate.n <= 20));
        assert!(enumerate(10, Some(20)).len() < enumerate(10, None).len());
    }
}
