//! Deterministic seed derivation.
//!
//! Every stage that needs randomness (splits, permutations, synthetic data)
//! derives its seed from a master seed with [`derive_seed`], so a whole
//! experiment is reproducible from one number. The rule is fixed: mixing a
//! stream index into the master seed with splitmix64.

/// One round of splitmix64.
pub fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for one stream (run index, method index, ...) from a
/// master seed. Distinct streams give statistically independent seeds;
/// identical inputs always give the same output.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    splitmix64(master ^ splitmix64(stream))
}
