//! Deterministic random streams.
//!
//! Campaigns derive one ChaCha stream per task from `(master seed, task
//! index)`, so results do not depend on how tasks are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TaskRng = ChaCha8Rng;

/// Generator for the task `index` of a run seeded with `seed`.
pub fn task_rng(seed: u64, index: u64) -> TaskRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
