//! Representations that supply images of `E_i` and `v_i`, and evaluation of
//! words and expressions in them.

use serde::Serialize;

use crate::diagram::{linearly_independent, AlgebraElement, Matching};
use crate::error::{Error, Result};
use crate::presentation::expr::Expr;
use crate::presentation::params::RhoParams;
use crate::presentation::word::{GeneratorKind, GeneratorSymbol, GeneratorWord};
use crate::scalar::QuadScalar;
use crate::serial::ScalarRecord;
use crate::tensor::{perm_matrix, ptranspose_matrix, site_embed, DenseMatrix, RepConfig};

/// Where a nonzero residual shows up.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Term { matching: Matching, coefficient: ScalarRecord },
    Entry { row: usize, col: usize, value: ScalarRecord },
}

pub trait Representation: Sync {
    type Elem: Clone + PartialEq + Send + Sync;

    fn name(&self) -> &'static str;
    fn n(&self) -> usize;
    fn lambda(&self) -> &QuadScalar;
    /// Local dimension for tensor-space models.
    fn local_dim(&self) -> Option<usize> {
        None
    }

    fn identity(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn e(&self, i: usize) -> Result<Self::Elem>;
    fn v(&self, i: usize) -> Result<Self::Elem>;

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, s: &QuadScalar, x: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `Err(Error::NonInvertible)` when `x` has no inverse.
    fn invert(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn witness(&self, x: &Self::Elem) -> Option<Witness>;
    /// `"0"` for zero, otherwise a count of nonzero entries and the largest magnitude.
    fn residual_norm(&self, x: &Self::Elem) -> String;
    fn independent(&self, xs: &[Self::Elem]) -> Result<bool>;

    fn rho(&self, i: usize, params: &RhoParams) -> Result<Self::Elem> {
        let a = self.scale(&params.a, &self.identity())?;
        let b = self.scale(&params.b, &self.e(i)?)?;
        let c = self.scale(&params.c, &self.v(i)?)?;
        self.add(&self.add(&a, &b)?, &c)
    }

    fn symbol(&self, sym: GeneratorSymbol, params: &RhoParams) -> Result<Self::Elem> {
        if sym.index == 0 || sym.index >= self.n() {
            return Err(Error::IndexOutOfRange { index: sym.index, n: self.n() });
        }
        match sym.kind {
            GeneratorKind::E => self.e(sym.index),
            GeneratorKind::V => self.v(sym.index),
            GeneratorKind::Rho => self.rho(sym.index, params),
            GeneratorKind::RhoInv => self.invert(&self.rho(sym.index, params)?),
        }
    }
}

/// Ordered product of the generator images; the empty word is the identity.
pub fn evaluate_word<R: Representation>(word: &GeneratorWord, rep: &R, params: &RhoParams) -> Result<R::Elem> {
    if word.n() != rep.n() {
        return Err(Error::StrandMismatch { left: word.n(), right: rep.n() });
    }
    word.symbols().iter().try_fold(rep.identity(), |acc, &s| rep.mul(&acc, &rep.symbol(s, params)?))
}

pub fn evaluate_expr<R: Representation>(expr: &Expr, rep: &R, params: &RhoParams) -> Result<R::Elem> {
    match expr {
        Expr::Gen(s) => rep.symbol(*s, params),
        Expr::Scalar(s) => rep.scale(s, &rep.identity()),
        Expr::Sum(xs) => xs.iter().try_fold(rep.zero(), |acc, x| rep.add(&acc, &evaluate_expr(x, rep, params)?)),
        Expr::Product(xs) => {
            xs.iter().try_fold(rep.identity(), |acc, x| rep.mul(&acc, &evaluate_expr(x, rep, params)?))
        }
        Expr::Scaled(s, x) => rep.scale(s, &evaluate_expr(x, rep, params)?),
        Expr::Named(_, x) => evaluate_expr(x, rep, params),
    }
}

fn describe_norm<'a>(values: impl Iterator<Item = &'a QuadScalar>, what: &str) -> String {
    let (count, max) = values.fold((0usize, 0f64), |(k, m), c| {
        let (re, im) = c.approx();
        (k + 1, m.max(re.hypot(im)))
    });
    if count == 0 {
        "0".to_string()
    } else {
        format!("{count} nonzero {what}, max |value| ≈ {max:.6}")
    }
}

/// The Brauer diagram algebra `D_n(λ)`.
#[derive(Clone, Debug)]
pub struct DiagramRep {
    n: usize,
    lambda: QuadScalar,
}

impl DiagramRep {
    pub fn new(n: usize, lambda: QuadScalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroStrands);
        }
        Ok(Self { n, lambda })
    }
}

/// Largest strand count for which diagram-algebra inversion (a dense solve
/// over all `(2n−1)!!` diagrams) is attempted.
pub const MAX_DIAGRAM_INVERT_STRANDS: usize = 4;

impl Representation for DiagramRep {
    type Elem = AlgebraElement;

    fn name(&self) -> &'static str {
        "diagram"
    }

    fn n(&self) -> usize {
        self.n
    }

    fn lambda(&self) -> &QuadScalar {
        &self.lambda
    }

    fn identity(&self) -> AlgebraElement {
        AlgebraElement::identity(self.n)
    }

    fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.n)
    }

    fn e(&self, i: usize) -> Result<AlgebraElement> {
        AlgebraElement::e(i, self.n)
    }

    fn v(&self, i: usize) -> Result<AlgebraElement> {
        AlgebraElement::v(i, self.n)
    }

    fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        x.add(y)
    }

    fn scale(&self, s: &QuadScalar, x: &AlgebraElement) -> Result<AlgebraElement> {
        x.scale(s)
    }

    fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        x.multiply(y, &self.lambda)
    }

    fn is_zero(&self, x: &AlgebraElement) -> bool {
        x.is_zero()
    }

    /// Solves `x·y = 1` through the left-multiplication matrix of `x`.
    fn invert(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n > MAX_DIAGRAM_INVERT_STRANDS {
            return Err(Error::Unsupported(format!(
                "diagram inversion is limited to n <= {MAX_DIAGRAM_INVERT_STRANDS}"
            )));
        }
        let basis = Matching::all(self.n);
        let size = basis.len();
        let mut left = DenseMatrix::zeros(size, size);
        for (col, m) in basis.iter().enumerate() {
            let prod = x.multiply(&AlgebraElement::from(m.clone()), &self.lambda)?;
            for (term, c) in prod.terms() {
                let row = basis.binary_search(term).expect("basis is complete");
                left.set(row, col, c.clone());
            }
        }
        let inv = left.invert()?;
        let id_col = basis.binary_search(&Matching::identity(self.n)).expect("identity is a diagram");
        AlgebraElement::from_terms(
            self.n,
            basis.iter().enumerate().map(|(r, m)| (m.clone(), inv.get(r, id_col).clone())),
        )
    }

    fn witness(&self, x: &AlgebraElement) -> Option<Witness> {
        x.leading_term().map(|(m, c)| Witness::Term { matching: m.clone(), coefficient: ScalarRecord::from(c) })
    }

    fn residual_norm(&self, x: &AlgebraElement) -> String {
        describe_norm(x.terms().map(|(_, c)| c), "terms")
    }

    fn independent(&self, xs: &[AlgebraElement]) -> Result<bool> {
        linearly_independent(xs)
    }
}

/// The tensor-space model: `E_i ↦ P★` and `v_i ↦ P` on factors `i, i+1`, with `λ = d`.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    cfg: RepConfig,
    lambda: QuadScalar,
    e_images: Vec<DenseMatrix>,
    v_images: Vec<DenseMatrix>,
}

impl MatrixRep {
    pub fn new(cfg: RepConfig) -> Result<Self> {
        let p = perm_matrix(cfg.d())?;
        let ps = ptranspose_matrix(cfg.d())?;
        let sites = 1..cfg.n();
        let e_images = sites.clone().map(|i| site_embed(&ps, i, &cfg)).collect::<Result<_>>()?;
        let v_images = sites.map(|i| site_embed(&p, i, &cfg)).collect::<Result<_>>()?;
        Ok(Self { cfg, lambda: cfg.lambda(), e_images, v_images })
    }

    pub fn config(&self) -> &RepConfig {
        &self.cfg
    }

    fn image(images: &[DenseMatrix], i: usize, n: usize) -> Result<DenseMatrix> {
        i.checked_sub(1).and_then(|k| images.get(k)).cloned().ok_or(Error::IndexOutOfRange { index: i, n })
    }
}

impl Representation for MatrixRep {
    type Elem = DenseMatrix;

    fn name(&self) -> &'static str {
        "matrix"
    }

    fn n(&self) -> usize {
        self.cfg.n()
    }

    fn lambda(&self) -> &QuadScalar {
        &self.lambda
    }

    fn local_dim(&self) -> Option<usize> {
        Some(self.cfg.d())
    }

    fn identity(&self) -> DenseMatrix {
        DenseMatrix::identity(self.cfg.dim())
    }

    fn zero(&self) -> DenseMatrix {
        DenseMatrix::zeros(self.cfg.dim(), self.cfg.dim())
    }

    fn e(&self, i: usize) -> Result<DenseMatrix> {
        Self::image(&self.e_images, i, self.cfg.n())
    }

    fn v(&self, i: usize) -> Result<DenseMatrix> {
        Self::image(&self.v_images, i, self.cfg.n())
    }

    fn add(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
        x.add(y)
    }

    fn scale(&self, s: &QuadScalar, x: &DenseMatrix) -> Result<DenseMatrix> {
        x.scale(s)
    }

    fn mul(&self, x: &DenseMatrix, y: &DenseMatrix) -> Result<DenseMatrix> {
        x.mul(y)
    }

    fn is_zero(&self, x: &DenseMatrix) -> bool {
        x.is_zero()
    }

    fn invert(&self, x: &DenseMatrix) -> Result<DenseMatrix> {
        x.invert()
    }

    fn witness(&self, x: &DenseMatrix) -> Option<Witness> {
        x.first_nonzero().map(|(row, col, v)| Witness::Entry { row, col, value: ScalarRecord::from(v) })
    }

    fn residual_norm(&self, x: &DenseMatrix) -> String {
        describe_norm(x.entries().iter().filter(|c| !c.is_zero()), "entries")
    }

    fn independent(&self, xs: &[DenseMatrix]) -> Result<bool> {
        if xs.is_empty() {
            return Ok(true);
        }
        let width = xs[0].entries().len();
        let mut stacked = DenseMatrix::zeros(xs.len(), width);
        for (r, x) in xs.iter().enumerate() {
            if x.entries().len() != width {
                return Err(Error::SizeMismatch("mixed matrix sizes".into()));
            }
            for (c, v) in x.entries().iter().enumerate() {
                stacked.set(r, c, v.clone());
            }
        }
        Ok(stacked.rank()? == xs.len())
    }
}
