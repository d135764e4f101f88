#[path = "support/properties.rs"]
#[allow(dead_code)]
mod properties;

#[test]
fn tower_field_axioms() {
    properties::tower_field_axioms().unwrap();
}

#[test]
fn rational_field_axioms() {
    properties::rational_field_axioms().unwrap();
}

#[test]
fn order_closure_is_idempotent() {
    properties::order_closure_is_idempotent().unwrap();
}

#[test]
fn split_map_is_compatible() {
    properties::split_map_is_compatible().unwrap();
}

#[test]
fn series_root_then_power() {
    properties::series_root_then_power().unwrap();
}

#[test]
fn series_power_then_root() {
    properties::series_power_then_root().unwrap();
}

#[test]
fn coset_action_is_well_defined() {
    properties::coset_action_is_well_defined().unwrap();
}

#[test]
fn coset_induction_preserves_triples() {
    properties::coset_induction_preserves_triples().unwrap();
}
