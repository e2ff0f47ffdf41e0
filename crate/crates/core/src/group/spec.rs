//! JSON group descriptions.
//!
//! ```json
//! {"kind": "cyclic", "n": 35}
//! {"kind": "dihedral", "n": 8}
//! {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 14}], "names": ["a", "b"]}
//! {"kind": "permutation", "degree": 7, "generators": [[0, 2, 4, 6, 1, 3, 5], [1, 2, 3, 4, 5, 6, 0]], "names": ["a", "b"]}
//! ```
//!
//! `n` is the rotation count for dihedral groups (order `2n`). Permutation
//! generators are 0-based one-line image arrays. `names` optionally renames
//! the generators of any kind, in order.

use serde::{Deserialize, Serialize};

use super::{build_cyclic, build_dihedral, build_direct_product, build_from_permutations, GroupError, GroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Product { factors: Vec<GroupSpec> },
    Permutation { degree: usize, generators: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(flatten)]
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl GroupSpec {
    pub fn cyclic(n: usize) -> Self {
        GroupKind::Cyclic { n }.into()
    }

    pub fn dihedral(m: usize) -> Self {
        GroupKind::Dihedral { n: m }.into()
    }

    pub fn product(factors: Vec<GroupSpec>) -> Self {
        GroupKind::Product { factors }.into()
    }

    pub fn permutation(degree: usize, generators: Vec<Vec<u32>>) -> Self {
        GroupKind::Permutation { degree, generators }.into()
    }

    pub fn named<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.names = Some(names.into_iter().map(Into::into).collect());
        self
    }

    pub fn build(&self) -> Result<GroupTable, GroupError> {
        let table = match &self.kind {
            GroupKind::Cyclic { n } => build_cyclic(*n)?,
            GroupKind::Dihedral { n } => build_dihedral(*n)?,
            GroupKind::Product { factors } => {
                let built = factors.iter().map(GroupSpec::build).collect::<Result<Vec<_>, _>>()?;
                build_direct_product(&built)?
            }
            GroupKind::Permutation { degree, generators } => build_from_permutations(*degree, generators)?,
        };
        match &self.names {
            Some(names) => table.with_generator_names(names),
            None => Ok(table),
        }
    }
}

impl From<GroupKind> for GroupSpec {
    fn from(kind: GroupKind) -> Self {
        GroupSpec { kind, names: None }
    }
}
