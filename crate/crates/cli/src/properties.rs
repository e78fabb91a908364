//! Seeded spot-checks run alongside `verify`.

use rand::Rng;
use serde::Serialize;
use vtl_core::rep::{evaluate_word, DiagramRep, MatrixRep, Representation};
use vtl_core::sample::{random_element, random_word};
use vtl_core::tensor::rep_element_in;
use vtl_core::{QuadScalar, Result, RhoParams};

/// Largest matrix dimension for the homomorphism spot-check.
const MAX_SAMPLED_DIM: usize = 81;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub samples: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.passed == self.samples
    }
}

pub fn diagram_properties<R: Rng>(
    n: usize,
    lambda: &QuadScalar,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<PropertyReport>> {
    let mut assoc = 0;
    let mut cyclic = 0;
    for _ in 0..samples {
        let x = random_element(n, 3, rng);
        let y = random_element(n, 3, rng);
        let z = random_element(n, 3, rng);
        let left = x.multiply(&y, lambda)?.multiply(&z, lambda)?;
        let right = x.multiply(&y.multiply(&z, lambda)?, lambda)?;
        assoc += usize::from(left == right);
        let xy = x.multiply(&y, lambda)?.closure_trace(lambda)?;
        let yx = y.multiply(&x, lambda)?.closure_trace(lambda)?;
        cyclic += usize::from(xy == yx);
    }
    Ok(vec![
        PropertyReport { name: "associativity", samples, passed: assoc, note: None },
        PropertyReport { name: "trace cyclicity", samples, passed: cyclic, note: None },
    ])
}

pub fn matrix_properties<R: Rng>(rep: &MatrixRep, samples: usize, rng: &mut R) -> Result<Vec<PropertyReport>> {
    let cfg = rep.config();
    if cfg.n() < 2 || cfg.dim() > MAX_SAMPLED_DIM {
        let note = format!("skipped: d^n = {} exceeds {MAX_SAMPLED_DIM}", cfg.dim());
        return Ok(vec![PropertyReport { name: "homomorphism", samples: 0, passed: 0, note: Some(note) }]);
    }
    let diagrams = DiagramRep::new(cfg.n(), cfg.lambda())?;
    // words use only E and v, so ρ parameters never enter
    let params = RhoParams::rational(1, 0, 0, cfg.d() as i64);
    let mut passed = 0;
    for _ in 0..samples {
        let u = random_word(cfg.n(), 6, rng);
        let w = random_word(cfg.n(), 6, rng);
        let product = diagrams.mul(&evaluate_word(&u, &diagrams, &params)?, &evaluate_word(&w, &diagrams, &params)?)?;
        let mapped = rep_element_in(&product, rep)?;
        let factors = rep.mul(&evaluate_word(&u, rep, &params)?, &evaluate_word(&w, rep, &params)?)?;
        passed += usize::from(mapped == factors);
    }
    Ok(vec![PropertyReport { name: "homomorphism", samples, passed, note: None }])
}
