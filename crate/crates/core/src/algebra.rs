//! Integer group ring `ℤG` and exact template matching of the identities that
//! characterize regular cliques, partial difference sets and Schur rings.
//!
//! Every check is an exact coefficient comparison. When a product fails to
//! fit a template, the earliest mismatching element (in index order) is
//! reported.

use serde::Serialize;
use thiserror::Error;

use crate::group::GroupTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("coefficient overflow")]
    Overflow,
    #[error("coefficient vector has length {got}, group has order {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("connection set contains the identity")]
    IdentityInSet,
    #[error("connection set is not inverse-closed at element {0}")]
    NotInverseClosed(usize),
    #[error("clique does not contain the identity")]
    IdentityNotInClique,
    #[error("clique element {0} is neither the identity nor in the connection set")]
    CliqueOutsideSet(usize),
    #[error("clique is the whole group, so the nexus is undefined")]
    CliqueIsWholeGroup,
    #[error("template is degenerate: {0}")]
    Degenerate(&'static str),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("inverse of block {0} is not a block")]
    BlockNotInverseClosed(usize),
}

/// `Σ a_g g` with `a_g` stored at the index of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement<'g> {
    group: &'g GroupTable,
    coeffs: Vec<i64>,
}

impl<'g> AlgebraElement<'g> {
    pub fn zero(group: &'g GroupTable) -> Self {
        AlgebraElement {
            group,
            coeffs: vec![0; group.order()],
        }
    }

    pub fn from_coeffs(group: &'g GroupTable, coeffs: Vec<i64>) -> Result<Self, AlgebraError> {
        if coeffs.len() != group.order() {
            return Err(AlgebraError::WrongLength {
                expected: group.order(),
                got: coeffs.len(),
            });
        }
        Ok(AlgebraElement { group, coeffs })
    }

    /// The identity `e` of the ring.
    pub fn one(group: &'g GroupTable) -> Self {
        subset_sum(group, &[group.identity()]).expect("identity is in range")
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, x: usize) -> i64 {
        self.coeffs[x]
    }

    fn same_group(&self, other: &Self) -> Result<(), AlgebraError> {
        if std::ptr::eq(self.group, other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(AlgebraError::GroupMismatch)
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self, AlgebraError> {
        self.same_group(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(AlgebraError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(AlgebraElement {
            group: self.group,
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn scale(&self, c: i64) -> Result<Self, AlgebraError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| a.checked_mul(c).ok_or(AlgebraError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(AlgebraElement {
            group: self.group,
            coeffs,
        })
    }

    /// `(Σ a_g g)(Σ b_h h) = Σ a_g b_h gh`.
    pub fn convolve(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_group(other)?;
        let g = self.group;
        let mut out = vec![0i64; g.order()];
        for (x, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (y, &b) in other.coeffs.iter().enumerate().filter(|(_, b)| **b != 0) {
                let slot = &mut out[g.mul(x, y)];
                *slot = a
                    .checked_mul(b)
                    .and_then(|p| slot.checked_add(p))
                    .ok_or(AlgebraError::Overflow)?;
            }
        }
        Ok(AlgebraElement { group: g, coeffs: out })
    }

    /// `Σ a_g g⁻¹`.
    pub fn involute(&self) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        for (x, &a) in self.coeffs.iter().enumerate() {
            coeffs[self.group.inv(x)] = a;
        }
        AlgebraElement {
            group: self.group,
            coeffs,
        }
    }
}

/// Indicator sum `T̄ = Σ_{t ∈ T} t`.
pub fn subset_sum<'g>(group: &'g GroupTable, set: &[usize]) -> Result<AlgebraElement<'g>, AlgebraError> {
    let mut out = AlgebraElement::zero(group);
    for &t in set {
        if t >= group.order() {
            return Err(AlgebraError::ElementOutOfRange(t));
        }
        out.coeffs[t] = 1;
    }
    Ok(out)
}

/// First element where a product leaves its template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub element: usize,
    pub found: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fit<T> {
    Match(T),
    Mismatch(Mismatch),
}

impl<T> Fit<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Fit::Match(v) => Some(v),
            Fit::Mismatch(_) => None,
        }
    }

    pub fn is_match(&self) -> bool {
        matches!(self, Fit::Match(_))
    }
}

/// Fits one constant per block. `expected[b]` pins block `b`; unpinned blocks
/// take the coefficient of their first element.
fn fit_blocks(coeffs: &[i64], owner: &[usize], expected: &[Option<i64>]) -> Fit<Vec<i64>> {
    let mut fitted = expected.to_vec();
    for (x, (&c, &b)) in coeffs.iter().zip(owner).enumerate() {
        match fitted[b] {
            None => fitted[b] = Some(c),
            Some(e) if e != c => {
                return Fit::Mismatch(Mismatch {
                    element: x,
                    found: c,
                    expected: e,
                })
            }
            Some(_) => {}
        }
    }
    // Empty blocks stay unconstrained; report them as 0.
    Fit::Match(fitted.into_iter().map(|v| v.unwrap_or(0)).collect())
}

fn membership(group: &GroupTable, set: &[usize]) -> Result<Vec<bool>, AlgebraError> {
    let mut member = vec![false; group.order()];
    for &x in set {
        if x >= group.order() {
            return Err(AlgebraError::ElementOutOfRange(x));
        }
        member[x] = true;
    }
    Ok(member)
}

fn validate_set(group: &GroupTable, set: &[usize]) -> Result<Vec<bool>, AlgebraError> {
    let member = membership(group, set)?;
    if member[group.identity()] {
        return Err(AlgebraError::IdentityInSet);
    }
    if let Some(&x) = set.iter().find(|&&x| !member[group.inv(x)]) {
        return Err(AlgebraError::NotInverseClosed(x));
    }
    Ok(member)
}

/// Block labels for the Neumaier partition `{e}`, `C \ {e}`, `S \ C`,
/// `G \ (S ∪ {e})`, numbered 0..4.
fn neumaier_owner(group: &GroupTable, set: &[usize], clique: &[usize]) -> Result<Vec<usize>, AlgebraError> {
    let in_set = validate_set(group, set)?;
    let in_clique = membership(group, clique)?;
    if !in_clique[group.identity()] {
        return Err(AlgebraError::IdentityNotInClique);
    }
    if let Some(&x) = clique.iter().find(|&&x| x != group.identity() && !in_set[x]) {
        return Err(AlgebraError::CliqueOutsideSet(x));
    }
    Ok((0..group.order())
        .map(|x| match (x == group.identity(), in_clique[x], in_set[x]) {
            (true, _, _) => 0,
            (false, true, _) => 1,
            (false, false, true) => 2,
            (false, false, false) => 3,
        })
        .collect())
}

const E: usize = 0;
const CLIQUE_REST: usize = 1;
const SET_REST: usize = 2;
const NON_NEIGHBORS: usize = 3;

/// Fits `S̄·C̄ = a·(G∖C)‾ + (|C|−1)·C̄` and returns the nexus `a`.
pub fn check_regular_clique_identity(
    group: &GroupTable,
    set: &[usize],
    clique: &[usize],
) -> Result<Fit<u64>, AlgebraError> {
    validate_set(group, set)?;
    let in_clique = membership(group, clique)?;
    if !in_clique[group.identity()] {
        return Err(AlgebraError::IdentityNotInClique);
    }
    let size = in_clique.iter().filter(|&&m| m).count();
    if size == group.order() {
        return Err(AlgebraError::CliqueIsWholeGroup);
    }
    let product = subset_sum(group, set)?.convolve(&subset_sum(group, clique)?)?;
    let owner: Vec<usize> = in_clique.iter().map(|&m| if m { 0 } else { 1 }).collect();
    Ok(
        match fit_blocks(product.coeffs(), &owner, &[Some(size as i64 - 1), None]) {
            Fit::Match(v) => Fit::Match(v[1] as u64),
            Fit::Mismatch(m) => Fit::Mismatch(m),
        },
    )
}

/// Fits `S̄² = μḠ + (λ−μ)S̄ + (|S|−μ)e` and returns `(λ, μ)`.
pub fn check_pds_identity(group: &GroupTable, set: &[usize]) -> Result<Fit<(i64, i64)>, AlgebraError> {
    let in_set = validate_set(group, set)?;
    if set.is_empty() {
        return Err(AlgebraError::Degenerate("empty connection set"));
    }
    if set.len() + 1 == group.order() {
        return Err(AlgebraError::Degenerate(
            "connection set is the whole group minus the identity",
        ));
    }
    let s = subset_sum(group, set)?;
    let square = s.convolve(&s)?;
    let owner: Vec<usize> = (0..group.order())
        .map(|x| match (x == group.identity(), in_set[x]) {
            (true, _) => 0,
            (false, true) => 1,
            (false, false) => 2,
        })
        .collect();
    Ok(
        match fit_blocks(square.coeffs(), &owner, &[Some(set.len() as i64), None, None]) {
            Fit::Match(v) => Fit::Match((v[1], v[2])),
            Fit::Mismatch(m) => Fit::Mismatch(m),
        },
    )
}

/// Constants of a strongly regular Neumaier Cayley graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgConstants {
    pub lambda: i64,
    pub mu: i64,
    pub nexus: i64,
}

fn second_identity_template(group: &GroupTable, set: &[usize], clique: &[usize], k: SrgConstants) -> [Option<i64>; 4] {
    let _ = group;
    let s = set.len() as i64;
    let c = clique.len() as i64;
    let mut t = [None; 4];
    t[NON_NEIGHBORS] = Some(k.mu - k.nexus);
    t[SET_REST] = Some(k.lambda - k.nexus);
    t[CLIQUE_REST] = Some(k.lambda - c + 1);
    t[E] = Some(s - c + 1);
    t
}

/// Result of evaluating a product in both multiplication orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderedCheck {
    pub as_written: bool,
    pub reversed: bool,
}

/// Checks `S̄·(S̄ − C̄) = (μ−a)·N̄ + (λ−a)·(S∖C)‾ + (λ−|C|+1)·(C∖{e})‾ + (|S|−|C|+1)·e`
/// with `N = G ∖ (S ∪ {e})`.
///
/// Since `e ∈ C` and `e ∉ S`, `S̄ − C̄ = (S∖C)‾ − e`; the left side is
/// `S̄·(S∖C)‾ − S̄`.
pub fn check_second_identity(
    group: &GroupTable,
    set: &[usize],
    clique: &[usize],
    constants: SrgConstants,
) -> Result<bool, AlgebraError> {
    Ok(second_identity_orders(group, set, clique, constants)?.as_written)
}

/// [`check_second_identity`] in both orders: `S̄·(S̄−C̄)` and `(S̄−C̄)·S̄`.
pub fn second_identity_orders(
    group: &GroupTable,
    set: &[usize],
    clique: &[usize],
    constants: SrgConstants,
) -> Result<OrderedCheck, AlgebraError> {
    let owner = neumaier_owner(group, set, clique)?;
    let s = subset_sum(group, set)?;
    let diff = s.sub(&subset_sum(group, clique)?)?;
    let template = second_identity_template(group, set, clique, constants);
    let holds = |p: AlgebraElement| fit_blocks(p.coeffs(), &owner, &template).is_match();
    Ok(OrderedCheck {
        as_written: holds(s.convolve(&diff)?),
        reversed: holds(diff.convolve(&s)?),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplementChecks {
    /// `N̄·C̄ = (|C|−a)·(G∖C)‾`
    pub with_clique: bool,
    /// `N̄·(S∖C)‾ = (|S|−μ−|C|+a+1)·N̄ + (|S|−|C|−λ+a−1)·(S∖C)‾ + (|S|−λ−1)·(C∖{e})‾`
    pub with_set_rest: bool,
    /// `N̄² = (|G|−2|S|+λ)·Ḡ + (μ−λ−2)·N̄ + (|S|−1−λ)·e`
    pub square: bool,
}

impl ComplementChecks {
    pub fn holds(&self) -> bool {
        self.with_clique && self.with_set_rest && self.square
    }
}

/// Identities for the complement `N = G ∖ (S ∪ {e})` of a strongly regular
/// Neumaier Cayley graph with regular clique `C ∋ e`.
pub fn check_complement_identities(
    group: &GroupTable,
    set: &[usize],
    clique: &[usize],
    constants: SrgConstants,
) -> Result<ComplementChecks, AlgebraError> {
    let owner = neumaier_owner(group, set, clique)?;
    let members = |b: usize| -> Vec<usize> { (0..group.order()).filter(|&x| owner[x] == b).collect() };
    let non = subset_sum(group, &members(NON_NEIGHBORS))?;
    let set_rest = subset_sum(group, &members(SET_REST))?;
    let clique_bar = subset_sum(group, clique)?;
    let (n, s, c) = (group.order() as i64, set.len() as i64, clique.len() as i64);
    let SrgConstants { lambda, mu, nexus: a } = constants;

    let mut t = [None; 4];
    t[E] = Some(0);
    t[CLIQUE_REST] = Some(0);
    t[SET_REST] = Some(c - a);
    t[NON_NEIGHBORS] = Some(c - a);
    let with_clique = fit_blocks(non.convolve(&clique_bar)?.coeffs(), &owner, &t).is_match();

    t[E] = Some(0);
    t[NON_NEIGHBORS] = Some(s - mu - c + a + 1);
    t[SET_REST] = Some(s - c - lambda + a - 1);
    t[CLIQUE_REST] = Some(s - lambda - 1);
    let with_set_rest = fit_blocks(non.convolve(&set_rest)?.coeffs(), &owner, &t).is_match();

    let base = n - 2 * s + lambda;
    t[E] = Some(base + s - 1 - lambda);
    t[NON_NEIGHBORS] = Some(base + mu - lambda - 2);
    t[SET_REST] = Some(base);
    t[CLIQUE_REST] = Some(base);
    let square = fit_blocks(non.convolve(&non)?.coeffs(), &owner, &t).is_match();

    Ok(ComplementChecks {
        with_clique,
        with_set_rest,
        square,
    })
}

/// `(S∖C)‾·C̄ = a·(G∖C)‾`, valid when the regular clique `C` is a subgroup.
pub fn check_subgroup_clique_identity(
    group: &GroupTable,
    set: &[usize],
    clique: &[usize],
    nexus: i64,
) -> Result<bool, AlgebraError> {
    let owner = neumaier_owner(group, set, clique)?;
    let set_rest: Vec<usize> = (0..group.order()).filter(|&x| owner[x] == SET_REST).collect();
    let product = subset_sum(group, &set_rest)?.convolve(&subset_sum(group, clique)?)?;
    let mut t = [Some(nexus); 4];
    t[E] = Some(0);
    t[CLIQUE_REST] = Some(0);
    Ok(fit_blocks(product.coeffs(), &owner, &t).is_match())
}

/// Ordered partition of `G` with `{e}` as block 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionBasis {
    blocks: Vec<Vec<usize>>,
}

impl PartitionBasis {
    pub fn new(group: &GroupTable, blocks: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        if blocks.first().map(Vec::as_slice) != Some(&[group.identity()][..]) {
            return Err(AlgebraError::InvalidPartition("block 0 must be {e}".into()));
        }
        let mut seen = vec![false; group.order()];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(AlgebraError::InvalidPartition(format!("block {i} is empty")));
            }
            for &x in block {
                if x >= group.order() {
                    return Err(AlgebraError::ElementOutOfRange(x));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(AlgebraError::InvalidPartition(format!("element {x} appears twice")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|&s| !s) {
            return Err(AlgebraError::InvalidPartition(format!("element {x} is not covered")));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(PartitionBasis { blocks })
    }

    pub fn singletons(group: &GroupTable) -> Self {
        PartitionBasis {
            blocks: (0..group.order()).map(|x| vec![x]).collect(),
        }
    }

    /// `{e}`, `C∖{e}`, `S∖C`, `G∖(S∪{e})`, skipping empty blocks.
    pub fn neumaier(group: &GroupTable, set: &[usize], clique: &[usize]) -> Result<Self, AlgebraError> {
        let owner = neumaier_owner(group, set, clique)?;
        let blocks = (0..4)
            .map(|b| (0..group.order()).filter(|&x| owner[x] == b).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        PartitionBasis::new(group, blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// `p[i][j][k]` with `T̄_i·T̄_j = Σ_k p^k_{ij} T̄_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureConstants {
    pub rank: usize,
    values: Vec<i64>,
}

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.values[(i * self.rank + j) * self.rank + k]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SchurOutcome {
    Closed(StructureConstants),
    NotClosed {
        left: usize,
        right: usize,
        mismatch: Mismatch,
    },
}

/// Checks that the span of the block sums is closed under multiplication and
/// returns the structure constants. Each block's inverse must be a block.
pub fn check_schur_closure(group: &GroupTable, basis: &PartitionBasis) -> Result<SchurOutcome, AlgebraError> {
    let n = group.order();
    let mut owner = vec![0usize; n];
    for (i, block) in basis.blocks().iter().enumerate() {
        for &x in block {
            owner[x] = i;
        }
    }
    for (i, block) in basis.blocks().iter().enumerate() {
        let mut inverse: Vec<usize> = block.iter().map(|&x| group.inv(x)).collect();
        inverse.sort_unstable();
        if basis.blocks()[owner[inverse[0]]] != inverse {
            return Err(AlgebraError::BlockNotInverseClosed(i));
        }
    }
    let rank = basis.len();
    let mut values = vec![0i64; rank * rank * rank];
    let mut product = vec![0i64; n];
    let unknown = vec![None; rank];
    for (i, left) in basis.blocks().iter().enumerate() {
        for (j, right) in basis.blocks().iter().enumerate() {
            product.iter_mut().for_each(|c| *c = 0);
            for &x in left {
                for &y in right {
                    product[group.mul(x, y)] += 1;
                }
            }
            match fit_blocks(&product, &owner, &unknown) {
                Fit::Match(fitted) => {
                    values[(i * rank + j) * rank..(i * rank + j + 1) * rank].copy_from_slice(&fitted);
                }
                Fit::Mismatch(mismatch) => {
                    return Ok(SchurOutcome::NotClosed {
                        left: i,
                        right: j,
                        mismatch,
                    })
                }
            }
        }
    }
    Ok(SchurOutcome::Closed(StructureConstants { rank, values }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, build_direct_product};

    fn elems(g: &GroupTable, words: &[&str]) -> Vec<usize> {
        words.iter().map(|w| g.parse_element(w).unwrap()).collect()
    }

    /// Brute-force oracle: common neighbours / clique counts by direct
    /// adjacency `u·v⁻¹ ∈ S`, independent of the convolution code.
    fn neighbors_in(g: &GroupTable, set: &[usize], x: usize, target: &[usize]) -> i64 {
        target.iter().filter(|&&t| set.contains(&g.mul(x, g.inv(t)))).count() as i64
    }

    #[test]
    fn subset_sums() {
        let z5 = build_cyclic(5).unwrap();
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(subset_sum(&z5, &all).unwrap().coeffs(), &[1; 5]);
        assert_eq!(subset_sum(&z5, &[]).unwrap().coeffs(), &[0; 5]);
        assert_eq!(
            subset_sum(&z5, &elems(&z5, &["a", "a^-1"])).unwrap().coeffs(),
            &[0, 1, 0, 0, 1]
        );
    }

    #[test]
    fn convolution_examples() {
        let z5 = build_cyclic(5).unwrap();
        let e = AlgebraElement::one(&z5);
        assert_eq!(e.convolve(&e).unwrap(), e);
        let all = subset_sum(&z5, &(0..5).collect::<Vec<_>>()).unwrap();
        assert_eq!(all.convolve(&all).unwrap(), all.scale(5).unwrap());
        // Products of {1, 4}: 1+1=2, 1+4=0, 4+1=0, 4+4=3.
        let s = subset_sum(&z5, &[1, 4]).unwrap();
        assert_eq!(s.convolve(&s).unwrap().coeffs(), &[2, 0, 1, 1, 0]);
    }

    #[test]
    fn involution() {
        let z5 = build_cyclic(5).unwrap();
        let s = subset_sum(&z5, &[1, 4]).unwrap();
        assert_eq!(s.involute(), s);
        assert_eq!(
            subset_sum(&z5, &[1]).unwrap().involute(),
            subset_sum(&z5, &[4]).unwrap()
        );
        let u = AlgebraElement::from_coeffs(&z5, vec![3, -1, 4, 1, -5]).unwrap();
        assert_eq!(u.involute().involute(), u);
    }

    #[test]
    fn group_mismatch_and_overflow() {
        let z5 = build_cyclic(5).unwrap();
        let z6 = build_cyclic(6).unwrap();
        assert_eq!(
            AlgebraElement::one(&z5).convolve(&AlgebraElement::one(&z6)),
            Err(AlgebraError::GroupMismatch)
        );
        let big = AlgebraElement::from_coeffs(&z5, vec![i64::MAX, 0, 0, 0, 0]).unwrap();
        assert_eq!(big.convolve(&big), Err(AlgebraError::Overflow));
        assert!(AlgebraElement::from_coeffs(&z5, vec![1]).is_err());
    }

    fn d16_data(g: &GroupTable) -> (Vec<usize>, Vec<usize>) {
        let set = elems(g, &["a", "a^-1", "a^2", "a^-2", "b", "b*a", "b*a^3", "b*a^4", "b*a^6"]);
        // Found by brute force over 4-subsets through e: {e, a, a^2, b*a^...}
        let clique = crate::clique::find_regular_cliques(
            &crate::cayley::build_cayley(g, &crate::cayley::ConnectionSet::new(g, set.clone()).unwrap()).unwrap(),
        )
        .into_iter()
        .next()
        .unwrap()
        .vertices;
        (set, clique)
    }

    #[test]
    fn regular_clique_identity_on_d16() {
        let d16 = build_dihedral(8).unwrap();
        let (set, clique) = d16_data(&d16);
        assert_eq!(clique.len(), 4);
        assert_eq!(
            check_regular_clique_identity(&d16, &set, &clique).unwrap(),
            Fit::Match(2)
        );
        // Oracle: every outside vertex has exactly 2 neighbours in the clique.
        for x in (0..16).filter(|x| !clique.contains(x)) {
            assert_eq!(neighbors_in(&d16, &set, x, &clique), 2);
        }
        assert!(matches!(check_pds_identity(&d16, &set).unwrap(), Fit::Mismatch(_)));
        for mu in 0..=16 {
            let k = SrgConstants {
                lambda: 4,
                mu,
                nexus: 2,
            };
            assert!(!check_second_identity(&d16, &set, &clique, k).unwrap());
        }
    }

    #[test]
    fn precondition_errors() {
        let z5 = build_cyclic(5).unwrap();
        assert_eq!(
            check_regular_clique_identity(&z5, &[0, 1, 4], &[0]),
            Err(AlgebraError::IdentityInSet)
        );
        assert_eq!(
            check_regular_clique_identity(&z5, &[1], &[0]),
            Err(AlgebraError::NotInverseClosed(1))
        );
        assert_eq!(
            check_regular_clique_identity(&z5, &[1, 4], &[1]),
            Err(AlgebraError::IdentityNotInClique)
        );
        let k = SrgConstants {
            lambda: 0,
            mu: 1,
            nexus: 1,
        };
        assert_eq!(
            check_second_identity(&z5, &[1, 4], &[0, 2], k),
            Err(AlgebraError::CliqueOutsideSet(2))
        );
    }

    fn lattice3() -> (GroupTable, Vec<usize>, Vec<usize>) {
        let z3 = build_cyclic(3).unwrap();
        let g = build_direct_product(&[z3.clone(), z3]).unwrap();
        let set = elems(&g, &["a2", "a2^2", "a1", "a1^2"]);
        let clique = elems(&g, &["1", "a2", "a2^2"]);
        (g, set, clique)
    }

    fn k33() -> (GroupTable, Vec<usize>, Vec<usize>) {
        let z6 = build_cyclic(6).unwrap();
        let set = elems(&z6, &["a", "a^3", "a^5"]);
        let clique = elems(&z6, &["1", "a"]);
        (z6, set, clique)
    }

    #[test]
    fn pds_examples() {
        let (g, set, _) = lattice3();
        assert_eq!(check_pds_identity(&g, &set).unwrap(), Fit::Match((1, 2)));
        let (g, set, _) = k33();
        assert_eq!(check_pds_identity(&g, &set).unwrap(), Fit::Match((0, 3)));
        // Oracle: brute-force common neighbours of e and every x.
        for x in 1..6 {
            let common = (0..6)
                .filter(|&w| set.contains(&g.inv(w)) && set.contains(&g.mul(x, g.inv(w))))
                .count() as i64;
            assert_eq!(common, if set.contains(&x) { 0 } else { 3 });
        }
    }

    #[test]
    fn second_and_complement_identities() {
        for ((g, set, clique), k) in [
            (
                lattice3(),
                SrgConstants {
                    lambda: 1,
                    mu: 2,
                    nexus: 1,
                },
            ),
            (
                k33(),
                SrgConstants {
                    lambda: 0,
                    mu: 3,
                    nexus: 1,
                },
            ),
        ] {
            // Direct oracle for S̄·(S∖C)‾ − S̄ coefficients.
            let set_rest: Vec<usize> = set.iter().copied().filter(|x| !clique.contains(x)).collect();
            let s = subset_sum(&g, &set).unwrap();
            let lhs = s.convolve(&s.sub(&subset_sum(&g, &clique).unwrap()).unwrap()).unwrap();
            for x in 0..g.order() {
                let direct = neighbors_in(&g, &set, x, &set_rest) - set.contains(&x) as i64;
                assert_eq!(lhs.coeff(x), direct);
            }
            assert!(check_second_identity(&g, &set, &clique, k).unwrap());
            let orders = second_identity_orders(&g, &set, &clique, k).unwrap();
            assert!(orders.as_written && orders.reversed);
            assert!(check_complement_identities(&g, &set, &clique, k).unwrap().holds());
            let perturbed = SrgConstants {
                nexus: k.nexus + 1,
                ..k
            };
            assert!(!check_complement_identities(&g, &set, &clique, perturbed)
                .unwrap()
                .holds());
            assert!(!check_second_identity(&g, &set, &clique, perturbed).unwrap());
            assert!(check_subgroup_clique_identity(&g, &set, &clique, k.nexus).unwrap() || !g.is_subgroup(&clique));
        }
    }

    #[test]
    fn schur_closure_on_lattice_4() {
        let z4 = build_cyclic(4).unwrap();
        let g = build_direct_product(&[z4.clone(), z4]).unwrap();
        let set = elems(&g, &["a2", "a2^2", "a2^3", "a1", "a1^2", "a1^3"]);
        let clique = elems(&g, &["1", "a2", "a2^2", "a2^3"]);
        assert!(g.is_subgroup(&clique));
        let basis = PartitionBasis::neumaier(&g, &set, &clique).unwrap();
        assert_eq!(basis.len(), 4);
        let SchurOutcome::Closed(p) = check_schur_closure(&g, &basis).unwrap() else {
            panic!("lattice basis should close");
        };
        // Oracle: p^k_ij counts pairs (x, y) ∈ T_i × T_j with xy = z for a fixed z ∈ T_k.
        for i in 0..4 {
            for j in 0..4 {
                for (k, block) in basis.blocks().iter().enumerate() {
                    let z = block[0];
                    let count = basis.blocks()[i]
                        .iter()
                        .filter(|&&x| basis.blocks()[j].contains(&g.mul(g.inv(x), z)))
                        .count() as i64;
                    assert_eq!(p.get(i, j, k), count);
                }
            }
        }
    }

    #[test]
    fn schur_singletons_and_bad_partitions() {
        let d8 = build_dihedral(4).unwrap();
        let basis = PartitionBasis::singletons(&d8);
        let SchurOutcome::Closed(p) = check_schur_closure(&d8, &basis).unwrap() else {
            panic!("group basis is closed");
        };
        for x in 0..8 {
            for y in 0..8 {
                for z in 0..8 {
                    assert_eq!(p.get(x, y, z), (d8.mul(x, y) == z) as i64);
                }
            }
        }
        let z5 = build_cyclic(5).unwrap();
        let lopsided = PartitionBasis::new(&z5, vec![vec![0], vec![1, 2], vec![3, 4]]).unwrap();
        // {1,2}⁻¹ = {4,3}: a block.
        assert!(check_schur_closure(&z5, &lopsided).is_ok());
        let mixed = PartitionBasis::new(&z5, vec![vec![0], vec![1, 3], vec![2, 4]]).unwrap();
        // {1,3}⁻¹ = {4,2}: also a block, but closure fails.
        assert!(matches!(
            check_schur_closure(&z5, &mixed).unwrap(),
            SchurOutcome::NotClosed { .. }
        ));
        let asym = PartitionBasis::new(&z5, vec![vec![0], vec![1], vec![2, 3, 4]]).unwrap();
        assert_eq!(
            check_schur_closure(&z5, &asym),
            Err(AlgebraError::BlockNotInverseClosed(1))
        );
        assert!(PartitionBasis::new(&z5, vec![vec![1], vec![0, 2, 3, 4]]).is_err());
        assert!(PartitionBasis::new(&z5, vec![vec![0], vec![1, 2]]).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::group::{build_cyclic, build_dihedral, build_from_permutations};
    use proptest::prelude::*;

    fn group(which: usize) -> GroupTable {
        match which {
            0 => build_cyclic(12).unwrap(),
            1 => build_dihedral(5).unwrap(),
            _ => build_from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap(),
        }
    }

    const ORDERS: [usize; 3] = [12, 10, 24];

    fn triple() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
        (0usize..3).prop_flat_map(|i| {
            let c = || prop::collection::vec(-6i64..=6, ORDERS[i]);
            (Just(i), c(), c(), c())
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((which, a, b, c) in triple()) {
            let g = group(which);
            let [u, v, w] = [a, b, c].map(|x| AlgebraElement::from_coeffs(&g, x).unwrap());
            prop_assert_eq!(
                u.convolve(&v).unwrap().convolve(&w).unwrap(),
                u.convolve(&v.convolve(&w).unwrap()).unwrap()
            );
            prop_assert_eq!(
                u.convolve(&v.add(&w).unwrap()).unwrap(),
                u.convolve(&v).unwrap().add(&u.convolve(&w).unwrap()).unwrap()
            );
            prop_assert_eq!(
                u.add(&v).unwrap().convolve(&w).unwrap(),
                u.convolve(&w).unwrap().add(&v.convolve(&w).unwrap()).unwrap()
            );
            prop_assert_eq!(
                u.convolve(&v).unwrap().involute(),
                v.involute().convolve(&u.involute()).unwrap()
            );
            prop_assert_eq!(u.involute().involute(), u.clone());
            prop_assert_eq!(u.convolve(&AlgebraElement::one(&g)).unwrap(), u);
        }
    }
}
