//! Built-in examples of Neumaier Cayley graphs and their verification.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{analyze, Analysis, AnalysisError, Check};
use crate::cayley::{ConnectionSet, GraphError};
use crate::clique::{Classification, NeumaierParameters};
use crate::feasibility::UNRESOLVED;
use crate::group::{GroupError, GroupSpec};
use crate::search::{search_neumaier, SearchError, SearchOptions, Target};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedClass {
    StrictlyNeumaier,
    StronglyRegularNeumaier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub group: GroupSpec,
    pub set: Vec<String>,
    pub class: ExpectedClass,
    /// Expected `(n, k, λ; a, c)` and `μ`, with `a` the nexus and `c` the
    /// clique size.
    pub expected: NeumaierParameters,
    pub description: String,
    /// Parameter tuple as usually printed when it lists `c` before `a`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn params(n: u64, k: u64, lambda: u64, a: u64, c: u64, mu: Option<u64>) -> NeumaierParameters {
    NeumaierParameters { n, k, lambda, a, c, mu }
}

fn words(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn strict(name: &str, group: GroupSpec, set: &[&str], expected: NeumaierParameters, description: &str) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        group,
        set: words(set),
        class: ExpectedClass::StrictlyNeumaier,
        expected,
        description: description.into(),
        printed: None,
        note: None,
    }
}

const SWAPPED: &str = "printed tuple lists the clique size before the nexus";

fn complete_multipartite(m: u64, parts: u64) -> CatalogEntry {
    // Z_m x Z_parts with H = Z_m x {0}; S = G \ H.
    let group = GroupSpec::product(vec![GroupSpec::cyclic(m as usize), GroupSpec::cyclic(parts as usize)]);
    let set = (0..m)
        .flat_map(|i| {
            (1..parts).map(move |j| {
                if i == 0 {
                    format!("a2^{j}")
                } else {
                    format!("a1^{i}*a2^{j}")
                }
            })
        })
        .collect();
    let (n, k, l, mu) = (m * parts, (parts - 1) * m, (parts - 2) * m, (parts - 1) * m);
    CatalogEntry {
        name: format!("multipartite-{m}x{parts}"),
        group,
        set,
        class: ExpectedClass::StronglyRegularNeumaier,
        expected: params(n, k, l, parts - 1, parts, Some(mu)),
        description: format!("complete multipartite graph with {parts} parts of size {m}"),
        printed: Some(format!("({n},{k},{l},{mu};{parts},{})", parts - 1)),
        note: Some(SWAPPED.into()),
    }
}

fn lattice(n: u64) -> CatalogEntry {
    let group = GroupSpec::product(vec![GroupSpec::cyclic(n as usize), GroupSpec::cyclic(n as usize)]);
    let set = (1..n).flat_map(|i| [format!("a1^{i}"), format!("a2^{i}")]).collect();
    CatalogEntry {
        name: format!("lattice-{n}"),
        group,
        set,
        class: ExpectedClass::StronglyRegularNeumaier,
        expected: params(n * n, 2 * (n - 1), n - 2, 1, n, Some(2)),
        description: format!("lattice graph L2({n})"),
        printed: Some(format!("({},{},{},2;{n},1)", n * n, 2 * (n - 1), n - 2)),
        note: Some(SWAPPED.into()),
    }
}

fn bipartite(k: u64) -> CatalogEntry {
    let set = (0..k).map(|i| format!("a^{}", 2 * i + 1)).collect();
    CatalogEntry {
        name: format!("bipartite-{k}"),
        group: GroupSpec::cyclic(2 * k as usize),
        set,
        class: ExpectedClass::StronglyRegularNeumaier,
        expected: params(2 * k, k, 0, 1, 2, Some(k)),
        description: format!("complete bipartite graph K{k},{k}"),
        printed: None,
        note: None,
    }
}

/// `a` central of order 2 on {4, 5}; `b`, `c`, `d` generate A4 on
/// {0, 1, 2, 3} with `b⁻¹cb = d` and `b⁻¹db = cd`.
pub fn z2_a4() -> GroupSpec {
    GroupSpec::permutation(
        6,
        vec![
            vec![0, 1, 2, 3, 5, 4],
            vec![0, 2, 3, 1, 4, 5],
            vec![1, 0, 3, 2, 4, 5],
            vec![2, 3, 0, 1, 4, 5],
        ],
    )
    .named(["a", "b", "c", "d"])
}

pub fn symmetric4() -> GroupSpec {
    GroupSpec::permutation(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]])
}

/// `a⁻¹ba = b²`, `a³ = b⁷ = e`.
pub fn frobenius21() -> GroupSpec {
    GroupSpec::permutation(7, vec![vec![0, 2, 4, 6, 1, 3, 5], vec![1, 2, 3, 4, 5, 6, 0]]).named(["a", "b"])
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    let mut entries = vec![CatalogEntry {
        name: "c4".into(),
        group: GroupSpec::cyclic(4),
        set: words(&["a", "a^-1"]),
        class: ExpectedClass::StronglyRegularNeumaier,
        expected: params(4, 2, 0, 1, 2, Some(2)),
        description: "the 4-cycle".into(),
        printed: None,
        note: None,
    }];
    entries.extend((3..=10).map(bipartite));
    entries.extend([(2, 3), (3, 3), (4, 3), (2, 4), (3, 4), (5, 3), (2, 6)].map(|(m, p)| complete_multipartite(m, p)));
    entries.extend([3, 4, 6].map(lattice));
    let p24 = params(24, 8, 2, 1, 4, None);
    entries.push(strict(
        "s4-s1",
        symmetric4(),
        &[
            "(0,2)(1,3)",
            "(0,3)(1,2)",
            "(0,2,3)",
            "(0,3,1)",
            "(0,3,2)",
            "(0,1,3)",
            "(0,1,3,2)",
            "(0,2,3,1)",
        ],
        p24,
        "vertex-transitive strictly Neumaier graph on 24 vertices over S4",
    ));
    entries.push(strict(
        "s4-s3",
        symmetric4(),
        &[
            "(0,3)(1,2)",
            "(0,2)(1,3)",
            "(0,1,3)",
            "(0,3,2)",
            "(0,3,1)",
            "(0,2,3)",
            "(0,3)",
            "(1,2)",
        ],
        p24,
        "vertex-transitive strictly Neumaier graph on 24 vertices over S4",
    ));
    entries.push(strict(
        "z2a4-s2",
        z2_a4(),
        &["c*d", "a*d", "d", "b*c*d", "b*c", "b^2*d", "b^2*c*d", "a*c"],
        p24,
        "vertex-transitive strictly Neumaier graph on 24 vertices over Z2 x A4",
    ));
    entries.push(strict(
        "z2a4-s4",
        z2_a4(),
        &["a", "b", "c", "d", "b*c*d", "b^2", "a*c", "b^2*d"],
        p24,
        "vertex-transitive strictly Neumaier graph on 24 vertices over Z2 x A4",
    ));
    let p28 = params(28, 9, 2, 1, 4, None);
    entries.push(strict(
        "z28-a",
        GroupSpec::cyclic(28),
        &["a", "a^-1", "a^4", "a^-4", "a^5", "a^-5", "a^7", "a^-7", "a^14"],
        p28,
        "strictly Neumaier circulant on 28 vertices",
    ));
    entries.push(strict(
        "z2xz14",
        GroupSpec::product(vec![GroupSpec::cyclic(2), GroupSpec::cyclic(14)]).named(["a", "b"]),
        &["a", "b", "b^-1", "b^7", "a*b^2", "a*b^-2", "a*b^3", "a*b^-3", "a*b^7"],
        p28,
        "strictly Neumaier Cayley graph on 28 vertices over Z2 x Z14",
    ));
    entries.push(strict(
        "d16-smallest-strict",
        GroupSpec::dihedral(8),
        &["a", "a^-1", "a^2", "a^-2", "b", "b*a", "b*a^3", "b*a^4", "b*a^6"],
        params(16, 9, 4, 2, 4, None),
        "smallest strictly Neumaier graph",
    ));
    entries.push(CatalogEntry {
        name: "f21-t7".into(),
        group: frobenius21(),
        set: words(&[
            "a",
            "a^-1",
            "b^2",
            "b^-2",
            "a*b^2",
            "b^-2*a^-1",
            "a*b^4",
            "b^-4*a^-1",
            "a^2*b",
            "b^-1*a^-2",
        ]),
        class: ExpectedClass::StronglyRegularNeumaier,
        expected: params(21, 10, 5, 2, 6, Some(4)),
        description: "triangular graph T(7) over the Frobenius group of order 21".into(),
        printed: Some("(21,10,5,4;6,2)".into()),
        note: Some(SWAPPED.into()),
    });
    entries
}

pub fn find_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    catalog_entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub expected: NeumaierParameters,
    pub analysis: Analysis,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub fn verify(entry: &CatalogEntry) -> Result<VerificationReport, CatalogError> {
    let group = entry.group.build()?;
    let set = ConnectionSet::parse(&group, &entry.set)?;
    let analysis = analyze(&group, &set)?;
    let mut checks = analysis.checks.clone();
    let computed = analysis.params().copied();
    let class_ok = matches!(
        (&analysis.classification, entry.class),
        (
            Some(Classification::StrictlyNeumaier { .. }),
            ExpectedClass::StrictlyNeumaier
        ) | (
            Some(Classification::StronglyRegularNeumaier { .. }),
            ExpectedClass::StronglyRegularNeumaier
        )
    );
    checks.push(Check {
        name: "expected_class",
        pass: class_ok,
        detail: format!(
            "expected {:?}, computed {}",
            entry.class,
            analysis.classification.as_ref().map_or("disconnected", |c| c.label())
        ),
    });
    checks.push(Check {
        name: "expected_parameters",
        pass: computed == Some(entry.expected),
        detail: format!(
            "expected {}, computed {}",
            entry.expected,
            computed.map_or("none".to_string(), |p| p.to_string())
        ),
    });
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        name: entry.name.clone(),
        expected: entry.expected,
        analysis,
        checks,
        pass,
    })
}

pub fn verify_entry(name: &str) -> Result<VerificationReport, CatalogError> {
    verify(&find_entry(name)?)
}

/// Every entry, in catalog order.
pub fn verify_all() -> Result<Vec<VerificationReport>, CatalogError> {
    catalog_entries().par_iter().map(verify).collect()
}

/// Every group of the orders appearing in [`UNRESOLVED`].
pub fn groups_of_order(n: usize) -> Vec<(&'static str, GroupSpec)> {
    let c = GroupSpec::cyclic;
    let p = GroupSpec::product;
    match n {
        14 => vec![("Z14", c(14)), ("D14", GroupSpec::dihedral(7))],
        15 => vec![("Z15", c(15))],
        21 => vec![("Z21", c(21)), ("F21", frobenius21())],
        25 => vec![("Z25", c(25)), ("Z5 x Z5", p(vec![c(5), c(5)]))],
        27 => vec![
            ("Z27", c(27)),
            ("Z9 x Z3", p(vec![c(9), c(3)])),
            ("Z3 x Z3 x Z3", p(vec![c(3), c(3), c(3)])),
            // (u, v) -> (u + 1, v), (u, v + 1), (u, v + u) on Z3 x Z3.
            (
                "Heisenberg 3^(1+2)",
                GroupSpec::permutation(
                    9,
                    vec![
                        heis(|u, v| (u + 1, v)),
                        heis(|u, v| (u, v + 1)),
                        heis(|u, v| (u, v + u)),
                    ],
                ),
            ),
            // i -> i + 1 and i -> 4i on Z9.
            (
                "Z9 : Z3",
                GroupSpec::permutation(
                    9,
                    vec![
                        (0..9).map(|i| (i + 1) % 9).collect(),
                        (0..9).map(|i| (4 * i) % 9).collect(),
                    ],
                ),
            ),
        ],
        _ => Vec::new(),
    }
}

fn heis(f: impl Fn(u32, u32) -> (u32, u32)) -> Vec<u32> {
    (0..9)
        .map(|p| {
            let (u, v) = f(p / 3, p % 3);
            (u % 3) * 3 + v % 3
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupResolution {
    pub group: &'static str,
    pub candidates: u64,
    pub witnesses: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub target: Target,
    pub groups: Vec<GroupResolution>,
    pub exists: bool,
}

/// Settles each arithmetically feasible but unresolved tuple by exhaustive
/// search over every group of that order.
pub fn resolve_unresolved() -> Result<Vec<Resolution>, CatalogError> {
    UNRESOLVED
        .iter()
        .map(|&(n, k, lambda, a, c)| {
            let target = Target {
                n: n as u64,
                k: k as u64,
                lambda: lambda as u64,
                a: a as u64,
                c: c as u64,
            };
            let groups = groups_of_order(n as usize)
                .into_iter()
                .map(|(name, spec)| {
                    let group = spec.build()?;
                    let result = search_neumaier(&group, target, &SearchOptions::default())?;
                    Ok(GroupResolution {
                        group: name,
                        candidates: result.stats.candidates,
                        witnesses: result.matches.len(),
                        first_witness: result.matches.first().map(|m| m.set.clone()),
                    })
                })
                .collect::<Result<Vec<_>, CatalogError>>()?;
            let exists = groups.iter().any(|g| g.witnesses > 0);
            Ok(Resolution { target, groups, exists })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_names_are_unique() {
        let entries = catalog_entries();
        let mut names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), entries.len());
        assert_eq!(entries.len(), 1 + 8 + 7 + 3 + 8);
    }

    #[test]
    fn expected_parameters_are_consistent() {
        for e in catalog_entries() {
            let p = e.expected;
            assert!(p.violation().is_none(), "{}: {:?}", e.name, p.violation());
            assert_eq!(p.mu.is_some(), e.class == ExpectedClass::StronglyRegularNeumaier);
        }
    }

    #[test]
    fn flagship_entries_verify() {
        for name in [
            "d16-smallest-strict",
            "z28-a",
            "lattice-3",
            "f21-t7",
            "s4-s1",
            "z2a4-s2",
        ] {
            let report = verify_entry(name).unwrap();
            assert!(report.pass, "{name}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn lattice_schur_closure() {
        let report = verify_entry("lattice-3").unwrap();
        assert!(report.checks.iter().any(|c| c.name == "schur_closure" && c.pass));
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(verify_entry("nope"), Err(CatalogError::UnknownEntry(_))));
    }

    #[test]
    fn groups_have_expected_orders() {
        for n in [14, 15, 21, 25, 27] {
            for (name, spec) in groups_of_order(n) {
                assert_eq!(spec.build().unwrap().order(), n, "{name}");
            }
        }
        let nonabelian: Vec<_> = groups_of_order(27)
            .into_iter()
            .filter(|(_, s)| !s.build().unwrap().is_abelian())
            .map(|(name, _)| name)
            .collect();
        assert_eq!(nonabelian.len(), 2);
    }
}
