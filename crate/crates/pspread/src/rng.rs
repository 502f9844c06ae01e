//! Seeded deterministic random numbers (splitmix64).
//!
//! The generator is hand-rolled so that streams are identical across
//! platforms and releases; channel trials depend on that for replayability.

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng { state: seed }
    }

    /// Independent substream for trial `index` of a run seeded with `seed`.
    pub fn substream(seed: u64, index: u64) -> Rng {
        Rng::new(seed ^ (index.wrapping_add(1)).wrapping_mul(0x9E3779B97F4A7C15))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw in 0..n (n > 0); the slight modulo bias is
    /// irrelevant at the field sizes used here.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is meaningless");
        self.next_u64() % n
    }

    pub fn field_elem(&mut self, q: u32) -> u32 {
        self.below(q as u64) as u32
    }
}
