//! Seeded random elements of K⊗H for property sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::homology::{Gen, HTensor, KBasis};
use crate::quadrature::{Letter, PathWord, Point};

/// The generator used by every seeded sweep.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random integer combination of up to `max_terms` basis elements
/// β⊗z with coefficients in −3…3.
pub fn random_k_tensor<R: Rng + ?Sized>(kb: &KBasis, rng: &mut R, max_terms: usize) -> HTensor {
    let g = kb.genus();
    let mut out = HTensor::zero(g, 3);
    for _ in 0..rng.random_range(1..=max_terms.max(1)) {
        let e = &kb.elements()[rng.random_range(0..kb.elements().len())];
        let third = Gen::from_coord(rng.random_range(0..2 * g), g);
        let c = rng.random_range(-3i64..=3);
        out = out
            .add(&e.tensor.tensor_gen(third).scale(c))
            .expect("same genus and degree");
    }
    out
}

/// A random well-formed word of `len` letters starting at Q₀.
pub fn random_word<R: Rng + ?Sized>(genus: usize, rng: &mut R, len: usize) -> PathWord {
    let mut at = Point::Q0;
    let letters: Vec<Letter> = (0..len.max(1))
        .map(|_| {
            let iota = rng.random_bool(0.5);
            // the inverse flag is forced by where we stand
            let inverse = iota ^ (at == Point::Q1);
            let l = Letter {
                j: rng.random_range(0..2 * genus + 2),
                iota,
                inverse,
            };
            at = l.end();
            l
        })
        .collect();
    PathWord::new(genus, letters).expect("letters chain by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_lie_in_k_tensor_h_and_are_reproducible() {
        let kb = KBasis::new(3).unwrap();
        let mut a = seeded_rng(7);
        let mut b = seeded_rng(7);
        for _ in 0..50 {
            let x = random_k_tensor(&kb, &mut a, 5);
            assert!(x.check_in_k_tensor_h().is_ok());
            assert_eq!(x, random_k_tensor(&kb, &mut b, 5));
        }
        for len in 1..8 {
            assert_eq!(random_word(2, &mut a, len).letters().len(), len);
        }
    }
}
