//! Factoring Brauer diagrams into `E`/`v` generator words, and the induced
//! map from the diagram algebra into the tensor-space model.

use crate::diagram::{AlgebraElement, Matching};
use crate::error::{Error, Result};
use crate::presentation::word::{GeneratorKind, GeneratorSymbol};
use crate::rep::{MatrixRep, Representation};
use crate::tensor::{DenseMatrix, RepConfig};

/// A generator word whose diagram product is `λ^loops` times the factored diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub word: Vec<GeneratorSymbol>,
    pub loops: usize,
}

/// Adjacent transpositions `v_j` whose product is the permutation diagram
/// sending top `a` to bottom `perm[a]`.
pub fn permutation_word(perm: &[usize]) -> Vec<GeneratorSymbol> {
    let mut arr = perm.to_vec();
    let mut word = Vec::new();
    // bubble sort; each swap at (j, j+1) right-multiplies by s_j
    for pass in 0..arr.len() {
        for j in 0..arr.len().saturating_sub(1 + pass) {
            if arr[j] > arr[j + 1] {
                arr.swap(j, j + 1);
                word.push(GeneratorSymbol::v(j + 1));
            }
        }
    }
    word
}

fn word_product(n: usize, word: &[GeneratorSymbol]) -> Result<(Matching, usize)> {
    word.iter().try_fold((Matching::identity(n), 0), |(acc, loops), s| {
        let g = match s.kind {
            GeneratorKind::E => Matching::e(s.index, n)?,
            GeneratorKind::V => Matching::v(s.index, n)?,
            _ => return Err(Error::Unsupported("only E and v appear in diagram factorizations".into())),
        };
        let (m, l) = acc.compose(&g)?;
        Ok((m, loops + l))
    })
}

fn verified(m: &Matching, word: Vec<GeneratorSymbol>) -> Result<Factorization> {
    let (product, loops) = word_product(m.n(), &word)?;
    if &product != m {
        return Err(Error::Unsupported(format!("internal error: factorization of {m} produced {product}")));
    }
    Ok(Factorization { word, loops })
}

/// Standard form `π_top · E_1 E_3 ⋯ E_{2k−1} · π_bottom` where `k` is the number
/// of cups. The permutation layers are sorted into adjacent transpositions.
pub fn factor_matching(m: &Matching) -> Result<Factorization> {
    let n = m.n();
    let cups = m.cups();
    let caps = m.caps();
    let through = m.through_strands();
    let k = cups.len();

    // top layer: result top p_l, q_l feed middle positions 2l, 2l+1; through strand j feeds 2k+j
    let mut top = vec![0; n];
    for (l, &(p, q)) in cups.iter().enumerate() {
        top[p] = 2 * l;
        top[q] = 2 * l + 1;
    }
    for (j, &(t, _)) in through.iter().enumerate() {
        top[t] = 2 * k + j;
    }
    // bottom layer: middle position y leads to result bottom
    let mut bottom = vec![0; n];
    for (l, &(r, s)) in caps.iter().enumerate() {
        bottom[2 * l] = r;
        bottom[2 * l + 1] = s;
    }
    for (j, &(_, u)) in through.iter().enumerate() {
        bottom[2 * k + j] = u;
    }

    let mut word = permutation_word(&top);
    word.extend((0..k).map(|l| GeneratorSymbol::e(2 * l + 1)));
    word.extend(permutation_word(&bottom));
    verified(m, word)
}

/// Same diagram, written with `E_1` as the only cup-cap generator, using
/// `E_{j+1} = v_j v_{j+1} E_j v_{j+1} v_j` repeatedly.
pub fn factor_matching_via_e1(m: &Matching) -> Result<Factorization> {
    fn expand(j: usize, out: &mut Vec<GeneratorSymbol>) {
        if j == 1 {
            out.push(GeneratorSymbol::e(1));
            return;
        }
        out.push(GeneratorSymbol::v(j - 1));
        out.push(GeneratorSymbol::v(j));
        expand(j - 1, out);
        out.push(GeneratorSymbol::v(j));
        out.push(GeneratorSymbol::v(j - 1));
    }
    let standard = factor_matching(m)?;
    let mut word = Vec::new();
    for s in standard.word {
        match s.kind {
            GeneratorKind::E => expand(s.index, &mut word),
            _ => word.push(s),
        }
    }
    verified(m, word)
}

fn word_matrix(rep: &MatrixRep, f: &Factorization) -> Result<DenseMatrix> {
    let prod = f.word.iter().try_fold(rep.identity(), |acc, s| {
        let g = match s.kind {
            GeneratorKind::E => rep.e(s.index)?,
            _ => rep.v(s.index)?,
        };
        acc.mul(&g)
    })?;
    if f.loops == 0 {
        Ok(prod)
    } else {
        prod.scale(&rep.lambda().pow(f.loops as u32).inverse()?)
    }
}

/// Image of a single diagram in the tensor-space model.
pub fn rep_matching(m: &Matching, rep: &MatrixRep) -> Result<DenseMatrix> {
    if m.n() != rep.n() {
        return Err(Error::StrandMismatch { left: m.n(), right: rep.n() });
    }
    word_matrix(rep, &factor_matching(m)?)
}

/// Linear extension of `E_i ↦ P★_i`, `v_i ↦ P_i` to the whole diagram algebra at `λ = d`.
pub fn rep_element(x: &AlgebraElement, cfg: &RepConfig) -> Result<DenseMatrix> {
    let rep = MatrixRep::new(*cfg)?;
    rep_element_in(x, &rep)
}

pub fn rep_element_in(x: &AlgebraElement, rep: &MatrixRep) -> Result<DenseMatrix> {
    if x.n() != rep.n() {
        return Err(Error::StrandMismatch { left: x.n(), right: rep.n() });
    }
    x.terms().try_fold(rep.zero(), |acc, (m, c)| acc.add(&rep_matching(m, rep)?.scale(c)?))
}
