//! Randomized laws of the block-matrix tensor calculus, 500 cases each from
//! fixed seeds, over the H4 quadruple.

mod common;

use common::laws;
use common::laws_config;
use proptest::prelude::*;

proptest! {
    #![proptest_config(laws_config(0x1001))]
    #[test]
    fn interchange(seed in any::<u64>()) {
        prop_assert_eq!(laws::interchange(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1002))]
    #[test]
    fn identity_tensor_identity(seed in any::<u64>()) {
        prop_assert_eq!(laws::identity_tensor_identity(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1003))]
    #[test]
    fn unit_absorbs(seed in any::<u64>()) {
        prop_assert_eq!(laws::unit_absorbs(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1004))]
    #[test]
    fn object_associativity_matches_ring_associativity(seed in any::<u64>()) {
        prop_assert_eq!(laws::object_associativity_matches_ring_associativity(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1005))]
    #[test]
    fn placement_matches_permutation_similarity(seed in any::<u64>()) {
        prop_assert_eq!(laws::placement_matches_permutation_similarity(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1006))]
    #[test]
    fn annihilators_unique_up_to_invertibles(seed in any::<u64>()) {
        prop_assert_eq!(laws::annihilators_unique_up_to_invertibles(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1007))]
    #[test]
    fn epi_mono_recomposes(seed in any::<u64>()) {
        prop_assert_eq!(laws::epi_mono_recomposes(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1008))]
    #[test]
    fn extended_associator_is_natural(seed in any::<u64>()) {
        prop_assert_eq!(laws::extended_associator_is_natural(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x1009))]
    #[test]
    fn associator_with_unit_in_the_middle_is_identity(seed in any::<u64>()) {
        prop_assert_eq!(laws::associator_with_unit_in_the_middle_is_identity(seed), Ok(()));
    }
}

proptest! {
    #![proptest_config(laws_config(0x100a))]
    #[test]
    fn extended_inverse_inverts(seed in any::<u64>()) {
        prop_assert_eq!(laws::extended_inverse_inverts(seed), Ok(()));
    }
}
