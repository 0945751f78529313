//! Stable per-episode seed derivation.

/// One round of the SplitMix64 output function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of episode `index` under `master`. Depends only on its inputs, so
/// any episode can be replayed without replaying the ones before it.
pub fn episode_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}
