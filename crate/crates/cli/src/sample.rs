//! Seeded parameter sampling.

use qcl_core::exact::rat::{rat, ratio, BigRat};
use qcl_core::qseries::{Param, Params};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Values that keep every catalog target away from vanishing factors.
pub fn pool() -> Vec<BigRat> {
    vec![rat(2), rat(3), rat(5), rat(7), rat(11), rat(13), ratio(3, 2), ratio(5, 3), ratio(7, 2), rat(-2), rat(-3)]
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// `count` samples of distinct pool values for `params`. The stream depends
/// only on the seed and the label, so adding targets to a run does not
/// change the samples of the others.
pub fn samples(params: &[Param], label: &str, seed: u64, count: usize) -> Vec<Params> {
    if params.is_empty() {
        return vec![Params::new()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(label));
    (0..count)
        .map(|_| {
            let mut values = pool();
            values.shuffle(&mut rng);
            params.iter().zip(values).fold(Params::new(), |p, (x, v)| p.with(*x, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let ps = [Param::A, Param::B, Param::C, Param::D];
        let s = samples(&ps, "THM11", 7, 3);
        assert_eq!(s, samples(&ps, "THM11", 7, 3));
        assert_ne!(s, samples(&ps, "THM11", 8, 3));
        for p in &s {
            let vals: Vec<&BigRat> = p.iter().map(|(_, v)| v).collect();
            for (i, v) in vals.iter().enumerate() {
                assert!(!vals[i + 1..].contains(v));
            }
        }
        assert_eq!(samples(&[], "EQ13", 7, 3).len(), 1);
    }
}
