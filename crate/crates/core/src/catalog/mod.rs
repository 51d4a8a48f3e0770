//! Group constructions: the spec grammar and the realizations behind it.

mod realize;
mod spec;

pub use realize::{affine_group, psl2_group, realize, realize_with_cap, XspGroup};
pub use spec::{parse_spec, GroupSpec, NamedGroup};

use serde::{Deserialize, Serialize};

/// A cataloged small-degree witness with its recorded order and degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWitness {
    pub name: String,
    pub spec: GroupSpec,
    pub expected_order: u64,
    pub degree_claim: u64,
}

pub fn named_witnesses() -> Vec<NamedWitness> {
    NamedGroup::ALL
        .iter()
        .map(|&n| {
            let (expected_order, degree_claim) = n.claim();
            NamedWitness {
                name: n.name().to_string(),
                spec: GroupSpec::Named(n),
                expected_order,
                degree_claim,
            }
        })
        .collect()
}

/// Witnesses recorded for degree `n`.
pub fn witnesses_for_degree(n: u64) -> Vec<NamedWitness> {
    named_witnesses()
        .into_iter()
        .filter(|w| w.degree_claim == n)
        .collect()
}
