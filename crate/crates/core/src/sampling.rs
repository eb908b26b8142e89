//! Counter-based uniform sampling: point `i` of stream `seed` depends only on
//! `(seed, i)`, so any chunking of the index range reproduces the sequential
//! stream.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform points on `[0, 2pi)^dim`.
#[derive(Debug, Clone, Copy)]
pub struct TorusSampler {
    seed: u64,
    dim: usize,
}

impl TorusSampler {
    pub fn new(seed: u64, dim: usize) -> Self {
        Self { seed, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Calls `f` on points `start..start + count`, in order.
    pub fn for_each_in(&self, start: u64, count: u64, mut f: impl FnMut(&[f64])) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        // Each coordinate consumes one u64, i.e. two 32-bit words.
        rng.set_word_pos(2 * self.dim as u128 * start as u128);
        let mut point = vec![0.0; self.dim];
        for _ in 0..count {
            for x in point.iter_mut() {
                let v = rng.random::<f64>() * TAU;
                *x = if v >= TAU { 0.0 } else { v };
            }
            f(&point);
        }
    }

    pub fn point(&self, index: u64) -> Vec<f64> {
        let mut out = Vec::new();
        self.for_each_in(index, 1, |p| out = p.to_vec());
        out
    }
}

/// `n` independent uniform edge lengths in `[1, 2)`.
pub fn random_lengths(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(1.0..2.0)).collect()
}

/// Seeded generator used for reproducible length draws.
pub fn length_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Splits `0..total` into `(start, count)` chunks of at most `chunk` points.
pub fn chunks(total: u64, chunk: u64) -> Vec<(u64, u64)> {
    (0..total.div_ceil(chunk))
        .map(|c| {
            let start = c * chunk;
            (start, chunk.min(total - start))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_stream_matches_sequential() {
        let s = TorusSampler::new(11, 3);
        let mut seq = Vec::new();
        s.for_each_in(0, 50, |p| seq.push(p.to_vec()));
        let mut chunked = Vec::new();
        for (start, count) in chunks(50, 7) {
            s.for_each_in(start, count, |p| chunked.push(p.to_vec()));
        }
        assert_eq!(seq, chunked);
        assert_eq!(s.point(23), seq[23]);
        assert!(seq.iter().flatten().all(|&x| (0.0..TAU).contains(&x)));
    }

    #[test]
    fn lengths_in_range_and_seeded() {
        let a = random_lengths(8, 4);
        assert_eq!(a, random_lengths(8, 4));
        assert_ne!(a, random_lengths(8, 5));
        assert!(a.iter().all(|&l| (1.0..2.0).contains(&l)));
    }

    #[test]
    fn chunk_cover() {
        assert_eq!(chunks(10, 4), vec![(0, 4), (4, 4), (8, 2)]);
        assert!(chunks(0, 4).is_empty());
    }
}
