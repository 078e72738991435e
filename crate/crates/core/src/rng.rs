//! Seeded pseudo-random numbers for the distance search.
//!
//! SplitMix64 (state `s`, output `z`):
//!
//! ```text
//! s = s + 0x9E3779B97F4A7C15
//! z = (s ^ (s >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z = z ^ (z >> 31)
//! ```
//!
//! xoshiro256** (state `s[0..4]`, seeded by four successive SplitMix64 outputs):
//!
//! ```text
//! out  = rotl(s[1] * 5, 7) * 9
//! t    = s[1] << 17
//! s[2] ^= s[0]; s[3] ^= s[1]; s[1] ^= s[2]; s[0] ^= s[3]
//! s[2] ^= t;    s[3] = rotl(s[3], 45)
//! ```
//!
//! All arithmetic is wrapping modulo 2^64. Iteration `i` of a search with seed
//! `seed` uses the generator seeded with `splitmix64(seed + splitmix64(i))`, so
//! iterations are independent of scheduling.

/// One SplitMix64 step applied to `x` as the state.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-iteration seed.
pub fn derive_seed(seed: u64, iteration: u64) -> u64 {
    splitmix64(seed.wrapping_add(splitmix64(iteration)))
}

#[derive(Debug, Clone)]
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    pub fn seed_from_u64(seed: u64) -> Self {
        let mut state = seed;
        let mut s = [0u64; 4];
        for slot in s.iter_mut() {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            *slot = z ^ (z >> 31);
        }
        Xoshiro256StarStar { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let out = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        out
    }

    /// Uniform-ish value in [0, bound) as `next_u64() % bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Fisher-Yates: for j from len-1 down to 1, swap j with `below(j + 1)`.
    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for j in (1..v.len()).rev() {
            let i = self.below(j as u64 + 1) as usize;
            v.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference() {
        // First outputs of SplitMix64 from state 0.
        let mut rng = Xoshiro256StarStar::seed_from_u64(0);
        assert_eq!(rng.s[0], 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.s[1], 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(splitmix64(0), 0xE220_A839_7B1D_CDAF);
        let a = rng.next_u64();
        let mut again = Xoshiro256StarStar::seed_from_u64(0);
        assert_eq!(again.next_u64(), a);
    }

    #[test]
    fn xoshiro_reference() {
        // Reference state (1, 2, 3, 4) from the published algorithm.
        let mut rng = Xoshiro256StarStar { s: [1, 2, 3, 4] };
        let outs: Vec<u64> = (0..3).map(|_| rng.next_u64()).collect();
        assert_eq!(outs, vec![11520, 0, 1509978240]);
    }

    #[test]
    fn shuffle_is_permutation() {
        let mut rng = Xoshiro256StarStar::seed_from_u64(derive_seed(7, 3));
        let mut v: Vec<usize> = (0..100).collect();
        rng.shuffle(&mut v);
        let mut sorted = v.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..100).collect::<Vec<_>>());
        assert_ne!(v, sorted);
    }
}
