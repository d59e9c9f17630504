use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for work unit `unit` of an experiment seeded with `seed`.
///
/// ChaCha keyed by the seed, with the unit index as the stream id: units get
/// independent streams and any unit can be regenerated on its own.
pub fn unit_rng(seed: u64, unit: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(unit);
    rng
}
