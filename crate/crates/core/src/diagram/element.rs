use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::Matching;
use crate::error::{Error, Result};
use crate::scalar::QuadScalar;
use crate::serial::ScalarRecord;
use crate::tensor::DenseMatrix;

/// Finite linear combination of Brauer diagrams on `n` strands.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Matching, QuadScalar>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from(Matching::identity(n))
    }

    pub fn scalar(n: usize, s: QuadScalar) -> Self {
        Self::identity(n).scale(&s).expect("identity has a rational coefficient")
    }

    pub fn e(i: usize, n: usize) -> Result<Self> {
        Matching::e(i, n).map(Self::from)
    }

    pub fn v(i: usize, n: usize) -> Result<Self> {
        Matching::v(i, n).map(Self::from)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Matching, QuadScalar)>) -> Result<Self> {
        let mut out = Self::zero(n);
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::StrandMismatch { left: n, right: m.n() });
            }
            out.accumulate(m, c)?;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Matching, &QuadScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Matching) -> QuadScalar {
        self.terms.get(m).cloned().unwrap_or_else(QuadScalar::zero)
    }

    fn accumulate(&mut self, m: Matching, c: QuadScalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.remove(&m) {
            Some(prev) => {
                let sum = prev.try_add(&c)?;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
        Ok(())
    }

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::StrandMismatch { left: self.n, right: other.n })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, s: &QuadScalar) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.accumulate(m.clone(), s.try_mul(c)?)?;
        }
        Ok(out)
    }

    /// Bilinear product `self · other`, each closed loop weighted by `lambda`.
    pub fn multiply(&self, other: &Self, lambda: &QuadScalar) -> Result<Self> {
        self.same_n(other)?;
        let max_loops = self.n;
        let powers: Vec<QuadScalar> = (0..=max_loops as u32).map(|k| lambda.pow(k)).collect();
        let mut out = Self::zero(self.n);
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                let (m, loops) = mx.compose(my)?;
                let c = cx.try_mul(cy)?.try_mul(&powers[loops])?;
                out.accumulate(m, c)?;
            }
        }
        Ok(out)
    }

    /// Markov-style closure: join `Ti` to `Bi` and weight each loop by `lambda`.
    pub fn closure_trace(&self, lambda: &QuadScalar) -> Result<QuadScalar> {
        self.terms
            .iter()
            .try_fold(QuadScalar::zero(), |acc, (m, c)| acc.try_add(&c.try_mul(&lambda.pow(m.closure_loops() as u32))?))
    }

    /// First term in diagram order, used as a witness for nonzero residuals.
    pub fn leading_term(&self) -> Option<(&Matching, &QuadScalar)> {
        self.terms.iter().next()
    }
}

impl From<Matching> for AlgebraElement {
    fn from(m: Matching) -> Self {
        let n = m.n();
        Self { n, terms: BTreeMap::from([(m, QuadScalar::one())]) }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{m}")?;
        }
        Ok(())
    }
}

/// Whether the given elements are linearly independent over the scalar field.
pub fn linearly_independent(elems: &[AlgebraElement]) -> Result<bool> {
    let mut basis: BTreeMap<&Matching, usize> = BTreeMap::new();
    for e in elems {
        for (m, _) in e.terms() {
            let next = basis.len();
            basis.entry(m).or_insert(next);
        }
    }
    if basis.len() < elems.len() {
        return Ok(false);
    }
    let mut mat = DenseMatrix::zeros(elems.len(), basis.len().max(1));
    for (r, e) in elems.iter().enumerate() {
        for (m, c) in e.terms() {
            mat.set(r, basis[m], c.clone());
        }
    }
    Ok(mat.rank()? == elems.len())
}

#[derive(Serialize, Deserialize)]
pub struct TermRecord {
    pub matching: Matching,
    pub coefficient: ScalarRecord,
}

/// Wire form: `{"n": .., "terms": [{"matching": .., "coefficient": ..}, ...]}`.
#[derive(Serialize, Deserialize)]
pub struct ElementRecord {
    pub n: usize,
    pub terms: Vec<TermRecord>,
}

impl From<&AlgebraElement> for ElementRecord {
    fn from(e: &AlgebraElement) -> Self {
        Self {
            n: e.n,
            terms: e
                .terms
                .iter()
                .map(|(m, c)| TermRecord { matching: m.clone(), coefficient: ScalarRecord::from(c) })
                .collect(),
        }
    }
}

impl TryFrom<ElementRecord> for AlgebraElement {
    type Error = Error;

    fn try_from(rec: ElementRecord) -> Result<Self> {
        let terms = rec.terms.into_iter().map(|t| Ok((t.matching, QuadScalar::try_from(t.coefficient)?)));
        AlgebraElement::from_terms(rec.n, terms.collect::<Result<Vec<_>>>()?)
    }
}
