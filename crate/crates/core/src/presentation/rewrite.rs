//! Brute expansion of two-site relations in the free algebra on
//! `E_i, E_{i+1}, v_i, v_{i+1}`, reduced with TLR, VCR and VEV rewriting.
//!
//! Used to cross-check the stored coefficient slots of (vTL), (FF₁), (FF₂)
//! and (wTL₁), (wTL₂) against the braid and forbidden-move relations under ρ.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::expr::Expr;
use crate::presentation::params::RhoParams;
use crate::presentation::registry::{ff_coefficients, relation_instances, vtl_coefficients, Family};
use crate::presentation::word::GeneratorKind;
use crate::scalar::QuadScalar;

/// Generators relative to the site `i`: `E_i, E_{i+1}, v_i, v_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E0,
    E1,
    V0,
    V1,
}

use Letter::*;

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            E0 => "E_i",
            E1 => "E_{i+1}",
            V0 => "v_i",
            V1 => "v_{i+1}",
        })
    }
}

/// Noncommutative polynomial: words over [`Letter`] with scalar coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NcPoly {
    terms: BTreeMap<Vec<Letter>, QuadScalar>,
}

/// Rewriting rules `lhs → coeff·rhs`; `true` marks a λ coefficient.
const RULES: &[(&[Letter], bool, &[Letter])] = &[
    (&[E0, E0], true, &[E0]),
    (&[E1, E1], true, &[E1]),
    (&[V0, V0], false, &[]),
    (&[V1, V1], false, &[]),
    (&[E0, E1, E0], false, &[E0]),
    (&[E1, E0, E1], false, &[E1]),
    (&[V1, V0, V1], false, &[V0, V1, V0]),
    (&[V0, E1, V0], false, &[V1, E0, V1]),
    (&[E1, V0, V1], false, &[V0, V1, E0]),
    (&[V1, V0, E1], false, &[E0, V1, V0]),
];

const MAX_PASSES: usize = 10_000;

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(s: QuadScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), s).expect("single field");
        p
    }

    pub fn letter(l: Letter) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![l], QuadScalar::one()).expect("single field");
        p
    }

    fn add_term(&mut self, word: Vec<Letter>, c: QuadScalar) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let next = match self.terms.get(&word) {
            Some(old) => old.try_add(&c)?,
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, next);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QuadScalar::from_int(-1))?)
    }

    pub fn scale(&self, s: &QuadScalar) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.try_mul(s)?)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.try_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[Letter]) -> QuadScalar {
        self.terms.get(word).cloned().unwrap_or_else(QuadScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Letter>, &QuadScalar)> {
        self.terms.iter()
    }

    /// Apply the rules to every word until none matches.
    pub fn reduce(&self, lambda: &QuadScalar) -> Result<Self> {
        let mut current = self.clone();
        for _ in 0..MAX_PASSES {
            let mut next = Self::zero();
            let mut changed = false;
            for (w, c) in &current.terms {
                match rewrite_once(w) {
                    Some((word, uses_lambda)) => {
                        changed = true;
                        let c = if uses_lambda { c.try_mul(lambda)? } else { c.clone() };
                        next.add_term(word, c)?;
                    }
                    None => next.add_term(w.clone(), c.clone())?,
                }
            }
            current = next;
            if !changed {
                return Ok(current);
            }
        }
        Err(Error::Unsupported("rewriting did not terminate".into()))
    }
}

fn rewrite_once(word: &[Letter]) -> Option<(Vec<Letter>, bool)> {
    for start in 0..word.len() {
        for &(lhs, uses_lambda, rhs) in RULES {
            if word[start..].starts_with(lhs) {
                let mut out = word[..start].to_vec();
                out.extend_from_slice(rhs);
                out.extend_from_slice(&word[start + lhs.len()..]);
                return Some((out, uses_lambda));
            }
        }
    }
    None
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = w.iter().map(ToString::to_string).collect();
            let word = if word.is_empty() { "1".to_string() } else { word.join(" ") };
            write!(f, "({c})·{word}")?;
        }
        Ok(())
    }
}

/// Translate a two-site expression at `site` into the free algebra, with `ρ` expanded.
pub fn from_expr(expr: &Expr, site: usize, params: &RhoParams) -> Result<NcPoly> {
    match expr {
        Expr::Gen(s) => {
            let offset =
                s.index.checked_sub(site).filter(|&o| o <= 1).ok_or_else(|| {
                    Error::Unsupported(format!("generator {s} is outside sites {site}, {}", site + 1))
                })?;
            let e = if offset == 0 { E0 } else { E1 };
            let v = if offset == 0 { V0 } else { V1 };
            match s.kind {
                GeneratorKind::E => Ok(NcPoly::letter(e)),
                GeneratorKind::V => Ok(NcPoly::letter(v)),
                GeneratorKind::Rho => NcPoly::scalar(params.a.clone())
                    .add(&NcPoly::letter(e).scale(&params.b)?)?
                    .add(&NcPoly::letter(v).scale(&params.c)?),
                GeneratorKind::RhoInv => Err(Error::Unsupported("ρ⁻¹ has no polynomial expansion".into())),
            }
        }
        Expr::Scalar(s) => Ok(NcPoly::scalar(s.clone())),
        Expr::Sum(xs) => xs.iter().try_fold(NcPoly::zero(), |acc, x| acc.add(&from_expr(x, site, params)?)),
        Expr::Product(xs) => {
            xs.iter().try_fold(NcPoly::scalar(QuadScalar::one()), |acc, x| acc.mul(&from_expr(x, site, params)?))
        }
        Expr::Scaled(s, x) => from_expr(x, site, params)?.scale(s),
        Expr::Named(_, x) => from_expr(x, site, params),
    }
}

fn residual(family: Family, params: &RhoParams) -> Result<NcPoly> {
    let inst = relation_instances(family, 3, params)?;
    let inst = inst
        .iter()
        .find(|x| x.site == 1 && from_expr(&x.lhs, 1, params).is_ok() && from_expr(&x.rhs, 1, params).is_ok())
        .ok_or_else(|| Error::Unsupported(format!("{family} has no two-site instance")))?;
    from_expr(&inst.lhs, 1, params)?.sub(&from_expr(&inst.rhs, 1, params)?)?.reduce(&params.lambda)
}

#[derive(Clone, Debug, Serialize)]
pub struct SlotCheck {
    pub slot: &'static str,
    pub word: String,
    pub stored: String,
    pub expanded: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub stored: Family,
    pub against: String,
    pub slots: Vec<SlotCheck>,
    /// The reduced stored form and the reduced expansion agree word by word.
    pub full_match: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.full_match && self.slots.iter().all(|s| s.matches)
    }
}

fn slot(name: &'static str, word: &[Letter], stored: QuadScalar, expanded: &NcPoly) -> SlotCheck {
    let got = expanded.coefficient(word);
    let text: Vec<String> = word.iter().map(ToString::to_string).collect();
    SlotCheck {
        slot: name,
        word: text.join(" "),
        matches: got == stored,
        stored: stored.to_string(),
        expanded: got.to_string(),
    }
}

/// (vTL) against `ρ_iρ_{i+1}ρ_i − ρ_{i+1}ρ_iρ_{i+1}`.
pub fn cross_check_vtl(params: &RhoParams) -> Result<CrossCheck> {
    let stored = residual(Family::Vtl, params)?;
    let expanded = residual(Family::Bgr, params)?;
    let k = vtl_coefficients(params)?;
    Ok(CrossCheck {
        stored: Family::Vtl,
        against: "ρ_iρ_{i+1}ρ_i − ρ_{i+1}ρ_iρ_{i+1}".into(),
        slots: vec![
            slot("a²b+ab²λ+b³", &[E0], k.e_diff, &expanded),
            slot("a²c", &[V0], k.v_diff, &expanded),
            slot("abc", &[E0, V0], k.mixed, &expanded),
            slot("b²c", &[E0, V1, E0], k.forbidden, &expanded),
        ],
        full_match: stored == expanded,
    })
}

/// (FF₁) against the first forbidden move, (FF₂) against the second.
pub fn cross_check_ff(which: u8, params: &RhoParams) -> Result<CrossCheck> {
    let (stored_family, move_family, against, words): (_, _, _, [&[Letter]; 3]) = match which {
        1 => (Family::Ff1, Family::F1, "v_iρ_{i+1}ρ_i − ρ_{i+1}ρ_iv_{i+1}", [&[V0], &[V0, E0], &[V0, E1, E0]]),
        2 => (Family::Ff2, Family::F2, "ρ_iρ_{i+1}v_i − v_{i+1}ρ_iρ_{i+1}", [&[V0], &[E0, V0], &[E0, E1, V0]]),
        _ => return Err(Error::Unsupported(format!("no forbidden move {which}"))),
    };
    let stored = residual(stored_family, params)?;
    let expanded = residual(move_family, params)?;
    let [a2, ab, b2] = ff_coefficients(params)?;
    Ok(CrossCheck {
        stored: stored_family,
        against: against.into(),
        slots: vec![
            slot("a²", words[0], a2, &expanded),
            slot("ab", words[1], ab, &expanded),
            slot("b²", words[2], b2, &expanded),
        ],
        full_match: stored == expanded,
    })
}

/// (wTLₗ) against (vTL) − c·(FFₗ), both as stored.
pub fn cross_check_wtl(which: u8, params: &RhoParams) -> Result<CrossCheck> {
    let (wtl, ff) = match which {
        1 => (Family::Wtl1, Family::Ff1),
        2 => (Family::Wtl2, Family::Ff2),
        _ => return Err(Error::Unsupported(format!("no welded relation {which}"))),
    };
    let stored = residual(wtl, params)?;
    let expanded = residual(Family::Vtl, params)?.sub(&residual(ff, params)?.scale(&params.c)?)?;
    let k = vtl_coefficients(params)?;
    Ok(CrossCheck {
        stored: wtl,
        against: format!("vTL − c·{ff}"),
        slots: vec![slot("a²b+ab²λ+b³", &[E0], k.e_diff, &expanded)],
        full_match: stored == expanded,
    })
}
