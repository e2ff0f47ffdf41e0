//! Exhaustive search for connection sets realizing given Neumaier parameters.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cayley::{build_cayley, ConnectionSet, GraphError};
use crate::clique::{classify, Classification};
use crate::group::GroupTable;

pub const DEFAULT_CAP: u128 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("group has order {order} but the target needs {n} vertices")]
    OrderMismatch { order: usize, n: u64 },
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("forced element {0} is the identity or out of range")]
    BadForced(usize),
    #[error("search space has {estimate} candidates, above the cap of {cap}")]
    TooLarge { estimate: u128, cap: u128 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `(n, k, λ; a, c)` to search for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Target {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub a: u64,
    pub c: u64,
}

impl FromStr for Target {
    type Err = SearchError;

    /// `n,k,l,a,c`
    fn from_str(s: &str) -> Result<Self, SearchError> {
        let values: Vec<u64> = s
            .split(',')
            .map(|v| v.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|e| SearchError::InvalidTarget(format!("{s}: {e}")))?;
        let [n, k, lambda, a, c] = values[..] else {
            return Err(SearchError::InvalidTarget(format!(
                "{s}: expected five values n,k,l,a,c"
            )));
        };
        Ok(Target { n, k, lambda, a, c })
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{},{})", self.n, self.k, self.lambda, self.a, self.c)
    }
}

/// `{x, x⁻¹}` for `x ≠ e`; one element for involutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub elements: Vec<usize>,
}

impl Orbit {
    pub fn weight(&self) -> usize {
        self.elements.len()
    }
}

#[derive(Debug, Clone)]
pub struct SearchSpace<'g> {
    pub group: &'g GroupTable,
    pub target: Target,
    /// Inverse pairs and involutions partitioning `G ∖ {e}`, by smallest element.
    pub orbits: Vec<Orbit>,
    /// Orbits every candidate must contain.
    pub forced: Vec<usize>,
}

impl<'g> SearchSpace<'g> {
    pub fn new(group: &'g GroupTable, target: Target) -> Result<Self, SearchError> {
        if group.order() as u64 != target.n {
            return Err(SearchError::OrderMismatch {
                order: group.order(),
                n: target.n,
            });
        }
        if target.k == 0 || target.k >= target.n {
            return Err(SearchError::InvalidTarget(format!(
                "valency {} outside 1..{}",
                target.k, target.n
            )));
        }
        let orbits = (1..group.order())
            .filter(|&x| x <= group.inv(x))
            .map(|x| {
                let y = group.inv(x);
                Orbit {
                    elements: if x == y { vec![x] } else { vec![x, y] },
                }
            })
            .collect();
        Ok(SearchSpace {
            group,
            target,
            orbits,
            forced: Vec::new(),
        })
    }

    /// Forces the orbits of the given elements into every candidate.
    pub fn with_forced(mut self, elements: &[usize]) -> Result<Self, SearchError> {
        for &x in elements {
            if x == self.group.identity() || x >= self.group.order() {
                return Err(SearchError::BadForced(x));
            }
            let orbit = self.orbit_of(x);
            if !self.forced.contains(&orbit) {
                self.forced.push(orbit);
            }
        }
        self.forced.sort_unstable();
        Ok(self)
    }

    fn orbit_of(&self, x: usize) -> usize {
        self.orbits
            .iter()
            .position(|o| o.elements.contains(&x))
            .expect("orbits cover every non-identity element")
    }

    pub fn involution_count(&self) -> usize {
        self.orbits.iter().filter(|o| o.weight() == 1).count()
    }

    fn forced_weight(&self) -> usize {
        self.forced.iter().map(|&i| self.orbits[i].weight()).sum()
    }

    fn free(&self) -> Vec<usize> {
        (0..self.orbits.len()).filter(|i| !self.forced.contains(i)).collect()
    }

    /// Remaining weight to choose, or why none can be chosen.
    fn remaining(&self) -> Result<usize, &'static str> {
        let k = self.target.k as usize;
        let forced = self.forced_weight();
        if forced > k {
            return Err("forced elements exceed the valency");
        }
        if k % 2 == 1 && self.involution_count() == 0 {
            return Err("odd valency needs an involution and the group has none");
        }
        Ok(k - forced)
    }

    /// Exact number of candidates.
    pub fn size(&self) -> u128 {
        let Ok(r) = self.remaining() else {
            return 0;
        };
        let free = self.free();
        let mut ways = vec![0u128; r + 1];
        ways[0] = 1;
        for &i in &free {
            let w = self.orbits[i].weight();
            for t in (w..=r).rev() {
                ways[t] = ways[t].saturating_add(ways[t - w]);
            }
        }
        ways[r]
    }

    fn assemble(&self, free: &[usize], chosen: &[usize]) -> Vec<usize> {
        let mut set: Vec<usize> = self
            .forced
            .iter()
            .copied()
            .chain(chosen.iter().map(|&j| free[j]))
            .flat_map(|i| self.orbits[i].elements.iter().copied())
            .collect();
        set.sort_unstable();
        set
    }
}

/// Index lists with a fixed weight sum, in lexicographic order.
struct WeightedCombinations {
    weights: Vec<usize>,
    suffix: Vec<usize>,
    target: usize,
    stack: Vec<usize>,
    sum: usize,
    pos: usize,
    done: bool,
}

impl WeightedCombinations {
    fn new(weights: Vec<usize>, start: usize, target: usize) -> Self {
        let mut suffix = vec![0; weights.len() + 1];
        for i in (0..weights.len()).rev() {
            suffix[i] = suffix[i + 1] + weights[i];
        }
        WeightedCombinations {
            weights,
            suffix,
            target,
            stack: Vec::new(),
            sum: 0,
            pos: start,
            done: false,
        }
    }

    fn backtrack(&mut self) -> bool {
        match self.stack.pop() {
            Some(last) => {
                self.sum -= self.weights[last];
                self.pos = last + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for WeightedCombinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while !self.done {
            if self.sum == self.target {
                let out = self.stack.clone();
                if !self.backtrack() {
                    self.done = true;
                }
                return Some(out);
            }
            if self.pos < self.weights.len() && self.sum + self.suffix[self.pos] >= self.target {
                if self.sum + self.weights[self.pos] <= self.target {
                    self.stack.push(self.pos);
                    self.sum += self.weights[self.pos];
                }
                self.pos += 1;
            } else if !self.backtrack() {
                self.done = true;
            }
        }
        None
    }
}

/// Every inverse-closed, identity-free `k`-subset containing the forced
/// orbits, in lexicographic order of orbit choices.
pub fn enumerate_connection_sets<'s>(space: &'s SearchSpace) -> impl Iterator<Item = ConnectionSet> + 's {
    let free = space.free();
    let weights: Vec<usize> = free.iter().map(|&i| space.orbits[i].weight()).collect();
    let combos = space.remaining().ok().map(|r| WeightedCombinations::new(weights, 0, r));
    combos.into_iter().flatten().map(move |chosen| {
        let set = space.assemble(&free, &chosen);
        debug_assert!(set
            .iter()
            .all(|&x| x != 0 && set.binary_search(&space.group.inv(x)).is_ok()));
        ConnectionSet::new(space.group, set).expect("orbit unions are inverse-closed")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Collect every match rather than stopping at the first.
    pub all: bool,
    /// Force each subgroup of order `c` into the candidates.
    pub anchor_clique: bool,
    pub parallel: bool,
    pub cap: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            all: true,
            anchor_clique: false,
            parallel: true,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub candidates: u64,
    pub disconnected: u64,
    pub lambda_rejected: u64,
    pub classified: u64,
}

impl SearchStats {
    fn merge(mut self, other: SearchStats) -> SearchStats {
        self.candidates += other.candidates;
        self.disconnected += other.disconnected;
        self.lambda_rejected += other.lambda_rejected;
        self.classified += other.classified;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchMatch {
    pub set: Vec<usize>,
    pub clique: Vec<usize>,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub target: Target,
    pub matches: Vec<SearchMatch>,
    pub stats: SearchStats,
    pub anchored: bool,
    /// Anchoring cannot lose solutions: abelian group, `c = 3`, `a = 1`.
    pub anchoring_proven: bool,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SearchResult {
    /// Empty after a search that provably covered every candidate.
    pub fn proves_nonexistence(&self) -> bool {
        self.matches.is_empty() && self.exhaustive && (!self.anchored || self.anchoring_proven)
    }
}

fn lambda_at_identity(member: &[bool], group: &GroupTable, set: &[usize], lambda: usize) -> bool {
    set.iter()
        .all(|&s| set.iter().filter(|&&t| member[group.mul(s, group.inv(t))]).count() == lambda)
}

fn examine(space: &SearchSpace, set: Vec<usize>, stats: &mut SearchStats) -> Result<Option<SearchMatch>, SearchError> {
    let group = space.group;
    let t = space.target;
    stats.candidates += 1;
    if group.subgroup_generated(&set).len() != group.order() {
        stats.disconnected += 1;
        return Ok(None);
    }
    let mut member = vec![false; group.order()];
    for &x in &set {
        member[x] = true;
    }
    if !lambda_at_identity(&member, group, &set, t.lambda as usize) {
        stats.lambda_rejected += 1;
        return Ok(None);
    }
    stats.classified += 1;
    let cs = ConnectionSet::new(group, set)?;
    let graph = build_cayley(group, &cs)?;
    let classification = classify(&graph)?;
    let Some(p) = classification.params() else {
        return Ok(None);
    };
    if (p.n, p.k, p.lambda, p.a, p.c) != (t.n, t.k, t.lambda, t.a, t.c) {
        return Ok(None);
    }
    let clique = classification
        .clique()
        .expect("Neumaier classification has a clique")
        .to_vec();
    debug_assert!(!(group.is_abelian() && p.c == 3 && p.a == 1) || size_three_clique_is_subgroup(group, &clique));
    Ok(Some(SearchMatch {
        set: cs.members().to_vec(),
        clique,
        classification,
    }))
}

/// Abelian groups: a regular clique of size 3 and nexus 1 through `e` is a
/// subgroup of order 3.
pub fn size_three_clique_is_subgroup(group: &GroupTable, clique: &[usize]) -> bool {
    clique.len() == 3 && group.is_subgroup(clique)
}

fn run_space(space: &SearchSpace, options: &SearchOptions) -> Result<(Vec<SearchMatch>, SearchStats), SearchError> {
    let free = space.free();
    let weights: Vec<usize> = free.iter().map(|&i| space.orbits[i].weight()).collect();
    let Ok(r) = space.remaining() else {
        return Ok((Vec::new(), SearchStats::default()));
    };
    if !options.all || !options.parallel || r == 0 {
        let mut stats = SearchStats::default();
        let mut matches = Vec::new();
        for chosen in WeightedCombinations::new(weights, 0, r) {
            if let Some(m) = examine(space, space.assemble(&free, &chosen), &mut stats)? {
                matches.push(m);
                if !options.all {
                    break;
                }
            }
        }
        return Ok((matches, stats));
    }
    // Split on the first chosen orbit; each branch is an independent
    // lexicographic range, so concatenating in order preserves it.
    let branches: Vec<Result<(Vec<SearchMatch>, SearchStats), SearchError>> = (0..free.len())
        .into_par_iter()
        .map(|first| {
            let mut stats = SearchStats::default();
            let mut matches = Vec::new();
            let w = weights[first];
            if w > r {
                return Ok((matches, stats));
            }
            for rest in WeightedCombinations::new(weights.clone(), first + 1, r - w) {
                let mut chosen = Vec::with_capacity(rest.len() + 1);
                chosen.push(first);
                chosen.extend(rest);
                if let Some(m) = examine(space, space.assemble(&free, &chosen), &mut stats)? {
                    matches.push(m);
                }
            }
            Ok((matches, stats))
        })
        .collect();
    let mut matches = Vec::new();
    let mut stats = SearchStats::default();
    for branch in branches {
        let (m, s) = branch?;
        matches.extend(m);
        stats = stats.merge(s);
    }
    Ok((matches, stats))
}

pub fn search_neumaier(
    group: &GroupTable,
    target: Target,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    let base = SearchSpace::new(group, target)?;
    let spaces: Vec<SearchSpace> = if options.anchor_clique {
        group
            .small_subgroups(target.c as usize)
            .into_iter()
            .map(|h| base.clone().with_forced(&h[1..]))
            .collect::<Result<_, _>>()?
    } else {
        vec![base.clone()]
    };
    let estimate: u128 = spaces.iter().map(SearchSpace::size).sum();
    if estimate > options.cap {
        return Err(SearchError::TooLarge {
            estimate,
            cap: options.cap,
        });
    }
    let note = base.remaining().err().map(str::to_string);
    let mut matches = Vec::new();
    let mut stats = SearchStats::default();
    for space in &spaces {
        let (m, s) = run_space(space, options)?;
        matches.extend(m);
        stats = stats.merge(s);
        if !options.all && !matches.is_empty() {
            break;
        }
    }
    matches.sort_by(|x, y| x.set.cmp(&y.set));
    matches.dedup_by(|x, y| x.set == y.set);
    let anchoring_proven = options.anchor_clique && group.is_abelian() && target.c == 3 && target.a == 1;
    Ok(SearchResult {
        target,
        exhaustive: options.all || matches.is_empty(),
        matches,
        stats,
        anchored: options.anchor_clique,
        anchoring_proven,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonexistenceReport {
    pub target: Target,
    pub nonexistent: bool,
    pub candidates: u64,
    pub seconds: f64,
}

/// Unanchored exhaustive search; `nonexistent` iff nothing matches.
pub fn verify_nonexistence(group: &GroupTable, target: Target) -> Result<NonexistenceReport, SearchError> {
    let start = Instant::now();
    let options = SearchOptions {
        all: false,
        ..SearchOptions::default()
    };
    let result = search_neumaier(group, target, &options)?;
    Ok(NonexistenceReport {
        target,
        nonexistent: result.matches.is_empty(),
        candidates: result.stats.candidates,
        seconds: start.elapsed().as_secs_f64(),
    })
}
