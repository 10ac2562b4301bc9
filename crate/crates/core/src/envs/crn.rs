use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent randomness streams keyed by purpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Stream {
    Instance = 1,
    Context = 2,
    Noise = 3,
    Explore = 4,
    Policy = 5,
}

/// Counter-keyed random numbers for paired simulations.
///
/// Every draw is addressed by `(seed, stream, a, b)`, usually
/// `(trial seed, purpose, round, arm)`. Two algorithms that touch the same
/// coordinates see identical numbers regardless of what else they consumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crn {
    seed: u64,
}

impl Crn {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&self, stream: Stream, a: u64, b: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&(stream as u64).to_le_bytes());
        key[16..24].copy_from_slice(&a.to_le_bytes());
        key[24..].copy_from_slice(&b.to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }
}
