//! Permutation `P` and its partial transpose `P★` on `(ℂ^d)^⊗n`.
//!
//! Basis order is lexicographic in `|i₁…iₙ⟩` with the leftmost factor most
//! significant and digits `0..d`. Matrix rows are outputs, columns inputs.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::diagram::check_site;
use crate::error::{Error, Result};
use crate::scalar::QuadScalar;
use crate::tensor::DenseMatrix;

/// `n` tensor factors of local dimension `d`; the loop value is `λ = d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepConfig {
    n: usize,
    d: usize,
}

impl RepConfig {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroStrands);
        }
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    pub fn lambda(&self) -> QuadScalar {
        QuadScalar::from_int(self.d as i64)
    }

    /// `d² − 4`, the discriminant of the field holding `b±`.
    pub fn discriminant(&self) -> BigRational {
        let d = BigInt::from(self.d);
        BigRational::from_integer(&d * &d - 4)
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension(d))
    } else {
        Ok(())
    }
}

/// `P|ξη⟩ = |ηξ⟩`.
pub fn perm_matrix(d: usize) -> Result<DenseMatrix> {
    check_dim(d)?;
    let mut m = DenseMatrix::zeros(d * d, d * d);
    for xi in 0..d {
        for eta in 0..d {
            m.set(eta * d + xi, xi * d + eta, QuadScalar::one());
        }
    }
    Ok(m)
}

/// `P★|ξη⟩ = δ_ξη Σᵢ |ii⟩`.
pub fn ptranspose_matrix(d: usize) -> Result<DenseMatrix> {
    check_dim(d)?;
    let mut m = DenseMatrix::zeros(d * d, d * d);
    for xi in 0..d {
        for i in 0..d {
            m.set(i * d + i, xi * d + xi, QuadScalar::one());
        }
    }
    Ok(m)
}

/// Transpose of the second tensor factor of an operator on `ℂ^d ⊗ ℂ^d`:
/// `⟨ab|Θ(M)|ce⟩ = ⟨ae|M|cb⟩`.
pub fn partial_transpose_second(op: &DenseMatrix, d: usize) -> Result<DenseMatrix> {
    if op.rows() != d * d || op.cols() != d * d {
        return Err(Error::SizeMismatch(format!("expected {0}x{0}, got {1}x{2}", d * d, op.rows(), op.cols())));
    }
    let mut out = DenseMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    out.set(a * d + b, c * d + e, op.get(a * d + e, c * d + b).clone());
                }
            }
        }
    }
    Ok(out)
}

/// `1 ⊗ … ⊗ op ⊗ … ⊗ 1` with `op` acting on factors `i, i+1` (1-based).
pub fn site_embed(op: &DenseMatrix, site: usize, cfg: &RepConfig) -> Result<DenseMatrix> {
    let (n, d) = (cfg.n, cfg.d);
    check_site(site, n)?;
    if op.rows() != d * d || op.cols() != d * d {
        return Err(Error::SizeMismatch(format!("expected {0}x{0}, got {1}x{2}", d * d, op.rows(), op.cols())));
    }
    let left = DenseMatrix::identity(d.pow(site as u32 - 1));
    let right = DenseMatrix::identity(d.pow((n - site - 1) as u32));
    left.kron(op)?.kron(&right)
}

/// `1 − P★` at `d = 2`, which squares to the identity.
pub fn pstar_complement(cfg: &RepConfig) -> Result<DenseMatrix> {
    if cfg.d != 2 {
        return Err(Error::Unsupported(format!("1 - P★ is an involution only at d = 2, got d = {}", cfg.d)));
    }
    DenseMatrix::identity(4).sub(&ptranspose_matrix(2)?)
}
