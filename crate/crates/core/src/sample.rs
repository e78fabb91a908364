//! Seeded random inputs for property checks and benchmarks.

use num_traits::Zero;
use rand::Rng;

use crate::diagram::{AlgebraElement, Matching};
use crate::presentation::word::{GeneratorSymbol, GeneratorWord};
use crate::scalar::{random_rational, QuadScalar};

/// Up to `max_terms` random diagrams with small nonzero rational coefficients.
pub fn random_element<R: Rng + ?Sized>(n: usize, max_terms: usize, rng: &mut R) -> AlgebraElement {
    let count = rng.gen_range(1..=max_terms.max(1));
    let terms: Vec<(Matching, QuadScalar)> = (0..count)
        .map(|_| {
            let m = Matching::random(n, rng);
            let mut c = random_rational(rng, 9, 4);
            while c.is_zero() {
                c = random_rational(rng, 9, 4);
            }
            (m, QuadScalar::rational(c))
        })
        .collect();
    AlgebraElement::from_terms(n, terms).expect("all terms share n and the rational field")
}

/// Random word in `E_i`, `v_i` of length at most `max_len` (possibly empty).
pub fn random_word<R: Rng + ?Sized>(n: usize, max_len: usize, rng: &mut R) -> GeneratorWord {
    assert!(n >= 2, "generators need at least two strands");
    let len = rng.gen_range(0..=max_len);
    let symbols = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n);
            if rng.gen_bool(0.5) {
                GeneratorSymbol::e(i)
            } else {
                GeneratorSymbol::v(i)
            }
        })
        .collect();
    GeneratorWord::new(n, symbols).expect("indices drawn in range")
}
