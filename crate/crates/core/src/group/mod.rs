//! Finite groups materialized as multiplication tables.
//!
//! Every group is stored as an `n × n` table of element indices with the
//! identity at index 0. The four constructors (cyclic, dihedral, direct
//! product, permutation closure) cover every group used by the catalog.

mod perm;
mod spec;
mod word;

use std::collections::{HashMap, VecDeque};

use rand::{rngs::StdRng, Rng, SeedableRng};
use thiserror::Error;

pub use perm::{compose, format_cycles, invert, parse_cycles, Permutation};
pub use spec::{GroupKind, GroupSpec};
pub use word::ElementWord;

/// Largest group the constructors will materialize.
pub const ORDER_CAP: usize = 20_000;

/// Groups up to this order get a full `O(n³)` associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("dihedral group needs at least 2 rotations, got {0}")]
    DihedralTooSmall(usize),
    #[error("group of order {order} exceeds the cap of {cap} elements")]
    TooLarge { order: usize, cap: usize },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("unbound generator name `{0}`")]
    UnboundGenerator(String),
    #[error("malformed word `{word}`: {reason}")]
    BadWord { word: String, reason: String },
    #[error("malformed cycle notation `{0}`")]
    BadCycle(String),
    #[error("cycle notation needs a permutation group")]
    NotPermutationGroup,
    #[error("table is not a group: {0}")]
    NotAGroup(String),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("expected {expected} generator names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
}

/// A finite group as an indexed multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<(String, usize)>,
    abelian: bool,
    perms: Option<Vec<Permutation>>,
}

impl GroupTable {
    /// Validates a raw row-major table. Identity must be index 0.
    pub fn from_table(order: usize, mult: Vec<u32>, generators: Vec<(String, usize)>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if order > ORDER_CAP {
            return Err(GroupError::TooLarge { order, cap: ORDER_CAP });
        }
        if mult.len() != order * order {
            return Err(GroupError::NotAGroup("table has the wrong size".into()));
        }
        let at = |x: usize, y: usize| mult[x * order + y] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::NotAGroup(format!("index 0 is not an identity for {x}")));
            }
        }
        let mut row_seen = vec![0u32; order];
        let mut col_seen = vec![0u32; order];
        for x in 0..order {
            let stamp = x as u32 + 1;
            for y in 0..order {
                let r = at(x, y);
                let c = at(y, x);
                if r >= order || c >= order || row_seen[r] == stamp || col_seen[c] == stamp {
                    return Err(GroupError::NotAGroup(format!("row/column {x} is not a permutation")));
                }
                row_seen[r] = stamp;
                col_seen[c] = stamp;
            }
        }
        let mut inv = vec![0u32; order];
        for (x, slot) in inv.iter_mut().enumerate() {
            let y = (0..order)
                .find(|&y| at(x, y) == 0)
                .expect("latin square row contains 0");
            if at(y, x) != 0 {
                return Err(GroupError::NotAGroup(format!("left and right inverses of {x} differ")));
            }
            *slot = y as u32;
        }
        let assoc = |x: usize, y: usize, z: usize| at(at(x, y), z) == at(x, at(y, z));
        if order <= FULL_ASSOCIATIVITY_LIMIT {
            for x in 0..order {
                for y in 0..order {
                    let xy = at(x, y);
                    for z in 0..order {
                        if at(xy, z) != at(x, at(y, z)) {
                            return Err(GroupError::NotAGroup(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x6e65_756d);
            for _ in 0..SAMPLED_TRIPLES {
                let (x, y, z) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !assoc(x, y, z) {
                    return Err(GroupError::NotAGroup(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
                }
            }
        }
        for (_, g) in &generators {
            if *g >= order {
                return Err(GroupError::ElementOutOfRange(*g));
            }
        }
        check_unique_names(generators.iter().map(|(n, _)| n.as_str()))?;
        let abelian = (0..order).all(|x| (x + 1..order).all(|y| at(x, y) == at(y, x)));
        Ok(GroupTable {
            order,
            mult,
            inv,
            generators,
            abelian,
            perms: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn pow(&self, x: usize, exp: i64) -> usize {
        let mut base = if exp < 0 { self.inv(x) } else { x };
        let mut e = exp.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, g)| *g)
    }

    /// The one-line permutation of an element, for groups built by closure.
    pub fn permutation(&self, x: usize) -> Option<&[u32]> {
        self.perms.as_ref().map(|p| p[x].as_slice())
    }

    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order).filter(|&x| self.inv(x) == x).collect()
    }

    /// Replaces the generator names, keeping their order and elements.
    pub fn with_generator_names<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self, GroupError> {
        if names.len() != self.generators.len() {
            return Err(GroupError::NameCount {
                expected: self.generators.len(),
                got: names.len(),
            });
        }
        check_unique_names(names.iter().map(|n| n.as_ref()))?;
        for ((name, _), new) in self.generators.iter_mut().zip(names) {
            *name = new.as_ref().to_string();
        }
        Ok(self)
    }

    fn parse_cycle_element(&self, text: &str) -> Result<usize, GroupError> {
        let perms = self.perms.as_ref().ok_or(GroupError::NotPermutationGroup)?;
        let degree = perms[0].len();
        let p = parse_cycles(text, degree)?;
        perms
            .iter()
            .position(|q| *q == p)
            .ok_or_else(|| GroupError::BadCycle(format!("{text} is not in the group")))
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() || set.iter().any(|&x| x >= self.order) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        member[self.identity()]
            && set.iter().all(|&x| member[self.inv(x)])
            && set.iter().all(|&x| set.iter().all(|&y| member[self.mul(x, y)]))
    }

    /// The subgroup generated by `set`, as sorted element indices.
    pub fn subgroup_generated(&self, set: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in set {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| member[x]).collect()
    }

    /// Right cosets `Hg`, each sorted, ordered by their smallest element.
    pub fn cosets(&self, subgroup: &[usize]) -> Result<Vec<Vec<usize>>, GroupError> {
        if !self.is_subgroup(subgroup) {
            return Err(GroupError::NotASubgroup);
        }
        let mut assigned = vec![false; self.order];
        let mut blocks = Vec::with_capacity(self.order / subgroup.len());
        for g in 0..self.order {
            if assigned[g] {
                continue;
            }
            let mut block: Vec<usize> = subgroup.iter().map(|&h| self.mul(h, g)).collect();
            block.sort_unstable();
            for &x in &block {
                assigned[x] = true;
            }
            blocks.push(block);
        }
        Ok(blocks)
    }

    /// All subgroups of the given order generated by at most two elements.
    /// For orders below 8 that is every subgroup of that order.
    pub fn small_subgroups(&self, order: usize) -> Vec<Vec<usize>> {
        let mut found: Vec<Vec<usize>> = Vec::new();
        if order == 0 || !self.order.is_multiple_of(order) {
            return found;
        }
        let candidates: Vec<usize> = (0..self.order)
            .filter(|&x| order.is_multiple_of(self.element_order(x)))
            .collect();
        for (i, &x) in candidates.iter().enumerate() {
            for &y in &candidates[i..] {
                let h = self.subgroup_generated(&[x, y]);
                if h.len() == order && !found.contains(&h) {
                    found.push(h);
                }
            }
        }
        found.sort();
        found
    }
}

fn check_unique_names<'a>(names: impl Iterator<Item = &'a str>) -> Result<(), GroupError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(GroupError::DuplicateName(n.to_string()));
        }
    }
    Ok(())
}

fn default_names(count: usize) -> Vec<String> {
    // `e` is left out so it can always denote the identity.
    let letters: Vec<char> = ('a'..='z').filter(|&c| c != 'e').collect();
    if count <= letters.len() {
        letters[..count].iter().map(|c| c.to_string()).collect()
    } else {
        (0..count).map(|i| format!("g{i}")).collect()
    }
}

/// `ℤ_n` with generator `a` bound to 1.
pub fn build_cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroOrder);
    }
    if n > ORDER_CAP {
        return Err(GroupError::TooLarge {
            order: n,
            cap: ORDER_CAP,
        });
    }
    let mult = (0..n).flat_map(|x| (0..n).map(move |y| ((x + y) % n) as u32)).collect();
    GroupTable::from_table(n, mult, vec![("a".into(), 1 % n)])
}

/// Dihedral group of order `2m`, `⟨a, b | a^m = b^2 = (ba)^2 = e⟩`.
///
/// Element `b^s a^r` has index `s·m + r`; `b a^r b = a^-r` gives the product
/// `(b^s a^r)(b^t a^q) = b^(s+t) a^((-1)^t r + q)`.
pub fn build_dihedral(m: usize) -> Result<GroupTable, GroupError> {
    if m < 2 {
        return Err(GroupError::DihedralTooSmall(m));
    }
    let n = 2 * m;
    if n > ORDER_CAP {
        return Err(GroupError::TooLarge {
            order: n,
            cap: ORDER_CAP,
        });
    }
    let mut mult = Vec::with_capacity(n * n);
    for x in 0..n {
        let (s, r) = (x / m, x % m);
        for y in 0..n {
            let (t, q) = (y / m, y % m);
            let r = if t == 1 { (m - r) % m } else { r };
            mult.push((((s + t) % 2) * m + (r + q) % m) as u32);
        }
    }
    GroupTable::from_table(n, mult, vec![("a".into(), 1), ("b".into(), m)])
}

/// Direct product of any number of factors. Element `(x_1, …, x_r)` is
/// indexed in mixed radix with the first factor most significant. When two
/// factors share a generator name, every name gets the factor's 1-based
/// position as a suffix.
pub fn build_direct_product(factors: &[GroupTable]) -> Result<GroupTable, GroupError> {
    if factors.is_empty() {
        return build_cyclic(1);
    }
    let order = factors
        .iter()
        .try_fold(1usize, |acc, g| acc.checked_mul(g.order()).filter(|&o| o <= ORDER_CAP))
        .ok_or_else(|| GroupError::TooLarge {
            order: factors.iter().fold(1usize, |a, g| a.saturating_mul(g.order())),
            cap: ORDER_CAP,
        })?;
    let orders: Vec<usize> = factors.iter().map(|g| g.order()).collect();
    let digits = |mut x: usize| -> Vec<usize> {
        let mut out = vec![0; orders.len()];
        for i in (0..orders.len()).rev() {
            out[i] = x % orders[i];
            x /= orders[i];
        }
        out
    };
    let compose_index = |parts: &[usize]| parts.iter().zip(&orders).fold(0, |acc, (p, o)| acc * o + p);
    let decomposed: Vec<Vec<usize>> = (0..order).map(digits).collect();
    let mut mult = Vec::with_capacity(order * order);
    let mut scratch = vec![0; orders.len()];
    for x in 0..order {
        for y in 0..order {
            for (i, g) in factors.iter().enumerate() {
                scratch[i] = g.mul(decomposed[x][i], decomposed[y][i]);
            }
            mult.push(compose_index(&scratch) as u32);
        }
    }
    let mut all_names = std::collections::HashSet::new();
    let collide = factors
        .iter()
        .flat_map(|g| g.generators().iter())
        .any(|(n, _)| !all_names.insert(n.clone()));
    let mut generators = Vec::new();
    for (i, g) in factors.iter().enumerate() {
        for (name, elem) in g.generators() {
            let mut parts = vec![0; orders.len()];
            parts[i] = *elem;
            let name = if collide {
                format!("{name}{}", i + 1)
            } else {
                name.clone()
            };
            generators.push((name, compose_index(&parts)));
        }
    }
    GroupTable::from_table(order, mult, generators)
}

/// Closure of a set of permutations of `0..degree`. Elements are indexed in
/// breadth-first discovery order from the identity; generators get default
/// names `a, b, c, …`.
pub fn build_from_permutations(degree: usize, generators: &[Permutation]) -> Result<GroupTable, GroupError> {
    for (index, g) in generators.iter().enumerate() {
        if !perm::is_bijection(g, degree) {
            return Err(GroupError::NotAPermutation { index, degree });
        }
    }
    let mut elements: Vec<Permutation> = vec![perm::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(elements[0].clone(), 0)]);
    // right[x * r + j] = x · g_j; parent[x] = (p, j) with x = p · g_j.
    let r = generators.len();
    let mut right: Vec<usize> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut cursor = 0;
    while cursor < elements.len() {
        for (j, g) in generators.iter().enumerate() {
            let y = compose(&elements[cursor], g);
            let idx = match index.get(&y) {
                Some(&i) => i,
                None => {
                    if elements.len() == ORDER_CAP {
                        return Err(GroupError::TooLarge {
                            order: ORDER_CAP + 1,
                            cap: ORDER_CAP,
                        });
                    }
                    let i = elements.len();
                    index.insert(y.clone(), i);
                    elements.push(y);
                    parent.push(Some((cursor, j)));
                    i
                }
            };
            right.push(idx);
            debug_assert_eq!(right.len(), cursor * r + j + 1);
        }
        cursor += 1;
    }
    let n = elements.len();
    let mut mult = vec![0u32; n * n];
    for x in 0..n {
        mult[x * n] = x as u32;
        // Discovery order guarantees parents precede children.
        for y in 1..n {
            let (p, j) = parent[y].expect("non-identity elements have a parent");
            let xp = mult[x * n + p] as usize;
            mult[x * n + y] = right[xp * r + j] as u32;
        }
    }
    let names = default_names(r);
    let gens = names
        .into_iter()
        .zip(generators)
        .map(|(name, g)| (name, index[g]))
        .collect();
    let mut table = GroupTable::from_table(n, mult, gens)?;
    table.perms = Some(elements);
    Ok(table)
}
