//! Grouping the extensions of all induced subposets by the extension of the
//! whole poset they come from.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{deletable_set, descent_set, enumerate_extensions, subsequence, LinearExtension};
use crate::poset::{Label, Poset};
use crate::{Error, Result};

pub const DEFAULT_CLASS_GUARD: usize = 12;

/// `[w] = { w \ D : D a subset of Del(w) }` for one root `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionClass {
    pub root: LinearExtension,
    pub des: usize,
    pub deletable: BTreeSet<Label>,
    /// Sorted by length, then lexicographically.
    pub members: Vec<LinearExtension>,
}

impl ExtensionClass {
    pub fn del(&self) -> usize {
        self.deletable.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    pub classes: Vec<ExtensionClass>,
}

impl ClassPartition {
    pub fn total_members(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    /// All members of all classes; duplicates collapse.
    pub fn union(&self) -> BTreeSet<LinearExtension> {
        self.classes
            .iter()
            .flat_map(|c| c.members.iter().cloned())
            .collect()
    }

    pub fn is_disjoint(&self) -> bool {
        self.union().len() == self.total_members()
    }

    pub fn to_json(&self) -> ClassPartitionJson {
        ClassPartitionJson {
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    root: c.root.to_string(),
                    des: c.des,
                    del: c.del(),
                    members: c.members.iter().map(|m| m.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPartitionJson {
    pub classes: Vec<ClassJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub root: String,
    pub des: usize,
    pub del: usize,
    pub members: Vec<String>,
}

/// One class per linear extension of `poset`. The union has
/// `sum over w of 2^del(w)` members, hence the size guard.
pub fn class_partition(poset: &Poset, max_size: usize) -> Result<ClassPartition> {
    if poset.size() > max_size {
        return Err(Error::GuardExceeded {
            what: "class partition",
            size: poset.size() as u64,
            limit: max_size as u64,
        });
    }
    let classes = enumerate_extensions(poset)
        .map(|root| {
            let deletable = deletable_set(poset, root.word()).expect("enumerated extension");
            let labels: Vec<Label> = deletable.iter().copied().collect();
            let mut members: Vec<LinearExtension> = (0u64..1 << labels.len())
                .map(|mask| {
                    let d: BTreeSet<Label> = labels
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &l)| l)
                        .collect();
                    subsequence(root.word(), &d)
                })
                .collect();
            members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            ExtensionClass {
                des: descent_set(root.word()).len(),
                root,
                deletable,
                members,
            }
        })
        .collect();
    Ok(ClassPartition { classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{antichain, chain, grid};

    #[test]
    fn two_by_two_classes() {
        let cp = class_partition(&grid(2, 2), DEFAULT_CLASS_GUARD).unwrap();
        assert_eq!(cp.classes.len(), 2);
        assert_eq!(cp.classes[0].members.len(), 16);
        assert_eq!(cp.classes[1].members.len(), 4);
        assert!(cp.is_disjoint());
        assert_eq!(cp.union().len(), 20);
        let small: Vec<String> = cp.classes[1]
            .members
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(small, vec!["3 2", "1 3 2", "3 2 4", "1 3 2 4"]);
    }

    #[test]
    fn antichain_classes() {
        let cp = class_partition(&antichain(3), DEFAULT_CLASS_GUARD).unwrap();
        assert_eq!(cp.classes.len(), 6);
        assert_eq!(cp.union().len(), 16);
        assert!(cp.is_disjoint());
    }

    #[test]
    fn chain_two_single_class() {
        let cp = class_partition(&chain(2), DEFAULT_CLASS_GUARD).unwrap();
        assert_eq!(cp.classes.len(), 1);
        let members: Vec<String> = cp.classes[0]
            .members
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(members, vec!["", "1", "2", "1 2"]);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            class_partition(&chain(13), DEFAULT_CLASS_GUARD),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let cp = class_partition(&grid(2, 2), DEFAULT_CLASS_GUARD).unwrap();
        let json = serde_json::to_value(cp.to_json()).unwrap();
        assert_eq!(json["classes"][1]["root"], "1 3 2 4");
        assert_eq!(json["classes"][1]["des"], 1);
        assert_eq!(json["classes"][1]["del"], 2);
    }
}
