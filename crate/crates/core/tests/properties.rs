mod common;

use common::*;
use proptest::prelude::*;

fn ok(c: Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn groebner_basis_is_idempotent(seed in any::<u64>(), gens in 1usize..4, d in 2u32..4) {
        ok(gb_idempotent(seed, gens, d))?;
    }

    #[test]
    fn saturation_is_stable(seed in any::<u64>()) {
        ok(saturation_stabilizes(seed))?;
    }

    #[test]
    fn hilbert_function_and_polynomial_agree(seed in any::<u64>(), gens in 1usize..4) {
        ok(hilbert_agrees(seed, gens))?;
    }

    #[test]
    fn image_forms_span_the_kernel(seed in any::<u64>()) {
        ok(homog_part_on_veroneses(seed))?;
    }

    #[test]
    fn conjugated_standard_cremona_is_certified(seed in any::<u64>()) {
        ok(cremona_certification(seed))?;
    }

    #[test]
    fn components_are_additive(seed in any::<u64>(), pieces in 1usize..4) {
        ok(components_add(seed, pieces))?;
    }

    #[test]
    fn invariants_survive_coordinate_changes(seed in any::<u64>()) {
        ok(coordinate_change_invariance(seed))?;
    }

    #[test]
    fn elimination_agrees_with_kernel(seed in any::<u64>()) {
        ok(elimination_matches_kernel(seed))?;
    }
}
