//! Independent deterministic random streams keyed by `(seed, label, index)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fnv1a(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// Stream for case `index` of `label` under the master `seed`. Streams for
/// different keys are unrelated, so results never depend on evaluation order.
pub fn stream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let key = splitmix64(splitmix64(seed ^ fnv1a(label)).wrapping_add(index));
    ChaCha8Rng::seed_from_u64(key)
}
