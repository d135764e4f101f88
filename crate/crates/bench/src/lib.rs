//! Shared fixtures for the pipeline benchmarks.

use canmod_core::cosets::{enumerate_cosets, full_group_triple, monodromy_triple};
use canmod_core::perm::PermTriple;
use canmod_core::quatalg::CaseOrders;
use canmod_core::Case;

/// The triple that the case's Belyi map is verified against.
pub fn belyi_triple(case: Case) -> PermTriple {
    let orders = CaseOrders::build(case).expect("case orders");
    match case {
        Case::IV => full_group_triple(&orders).expect("full group triple").2,
        _ => monodromy_triple(&enumerate_cosets(&orders.gamma_prime_integral).expect("cosets")).expect("triple"),
    }
}
