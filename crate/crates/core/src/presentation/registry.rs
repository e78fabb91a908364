//! Closed registry of relation families and their instantiation at concrete sites.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::presentation::expr::Expr;
use crate::presentation::params::RhoParams;
use crate::scalar::QuadScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Tlr,
    Vcr,
    Vev,
    Brauer,
    Conj,
    Fj,
    Bgr,
    Vbr,
    F1,
    F2,
    Vtl,
    Brvtl,
    Ff1,
    Ff2,
    Wtl1,
    Wtl2,
    Wtl1Br,
    Wtl2Br,
    VtlC0,
    VtlA0,
    Wtl1A0,
    Wtl2A0,
    UtlA0,
    F1Star,
    F2Star,
    Fu22,
}

impl Family {
    pub const ALL: [Family; 26] = [
        Family::Tlr,
        Family::Vcr,
        Family::Vev,
        Family::Brauer,
        Family::Conj,
        Family::Fj,
        Family::Bgr,
        Family::Vbr,
        Family::F1,
        Family::F2,
        Family::Vtl,
        Family::Brvtl,
        Family::Ff1,
        Family::Ff2,
        Family::Wtl1,
        Family::Wtl2,
        Family::Wtl1Br,
        Family::Wtl2Br,
        Family::VtlC0,
        Family::VtlA0,
        Family::Wtl1A0,
        Family::Wtl2A0,
        Family::UtlA0,
        Family::F1Star,
        Family::F2Star,
        Family::Fu22,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Tlr => "TLR",
            Family::Vcr => "VCR",
            Family::Vev => "VEV",
            Family::Brauer => "BRAUER",
            Family::Conj => "CONJ",
            Family::Fj => "FJ",
            Family::Bgr => "BGR",
            Family::Vbr => "VBR",
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::Vtl => "vTL",
            Family::Brvtl => "brvtl",
            Family::Ff1 => "FF1",
            Family::Ff2 => "FF2",
            Family::Wtl1 => "wTL1",
            Family::Wtl2 => "wTL2",
            Family::Wtl1Br => "wTL1_BR",
            Family::Wtl2Br => "wTL2_BR",
            Family::VtlC0 => "vTL_c0",
            Family::VtlA0 => "vTL_a0",
            Family::Wtl1A0 => "wTL1_a0",
            Family::Wtl2A0 => "wTL2_a0",
            Family::UtlA0 => "uTL_a0",
            Family::F1Star => "<F1>",
            Family::F2Star => "<F2>",
            Family::Fu22 => "fu22",
        }
    }

    /// The displayed relation this family instantiates.
    pub fn formula(self) -> &'static str {
        match self {
            Family::Tlr => "E_i^2 = λE_i, E_iE_{i±1}E_i = E_i, E_iE_j = E_jE_i (|i−j|>1)",
            Family::Vcr => "v_i^2 = 1, v_iv_{i+1}v_i = v_{i+1}v_iv_{i+1}, v_iv_j = v_jv_i (|i−j|>1)",
            Family::Vev => "v_iE_{i+1}v_i = v_{i+1}E_iv_{i+1}, E_iv_j = v_jE_i (|i−j|>1)",
            Family::Brauer => {
                "E_iv_i = v_iE_i = E_i, E_iv_j = v_jE_i (|i−j|>1), v_{i±1}E_iE_{i±1} = v_iE_{i±1}, E_{i±1}E_iv_{i±1} = E_{i±1}v_i"
            }
            Family::Conj => "E_{i+1} = v_iv_{i+1}E_iv_{i+1}v_i",
            Family::Fj => "[F]_0 = E_i − E_{i+1}, [F]_1 = v_{i+1}E_i − E_{i+1}v_i, [F]_2 = E_iv_{i+1} − v_iE_{i+1}",
            Family::Bgr => "ρ_iρ_{i+1}ρ_i = ρ_{i+1}ρ_iρ_{i+1}, ρ_iρ_j = ρ_jρ_i (|i−j|>1)",
            Family::Vbr => "ρ_iv_j = v_jρ_i (|i−j|>1), v_iρ_{i+1}v_i = v_{i+1}ρ_iv_{i+1}",
            Family::F1 => "v_iρ_{i+1}ρ_i = ρ_{i+1}ρ_iv_{i+1}",
            Family::F2 => "ρ_iρ_{i+1}v_i = v_{i+1}ρ_iρ_{i+1}",
            Family::Vtl => {
                "0 = (a²b+ab²λ+b³)(E_i−E_{i+1}) + a²c(v_i−v_{i+1}) + abc(E_iv_i+v_iE_i−E_{i+1}v_{i+1}−v_{i+1}E_{i+1}) + b²c([F]_0+[F]_1+[F]_2)"
            }
            Family::Brvtl => "a²c(v_i−v_{i+1}) + b(a²+abλ+b²+c(2a+b))[F]_0 + b²c([F]_1+[F]_2) = 0",
            Family::Ff1 => "a²(v_i−v_{i+1}) = −ab(v_iE_i−E_{i+1}v_{i+1}+v_iE_{i+1}−E_iv_{i+1}) − b²[F]_1",
            Family::Ff2 => "a²(v_i−v_{i+1}) = −ab(E_iv_i−v_{i+1}E_{i+1}+E_{i+1}v_i−v_{i+1}E_i) − b²[F]_2",
            Family::Wtl1 => {
                "(a²b+ab²λ+b³)(E_i−E_{i+1}) + b²c([F]_0+[F]_2) + abc(E_iv_i−v_{i+1}E_{i+1}−v_iE_{i+1}+E_iv_{i+1}) = 0"
            }
            Family::Wtl2 => {
                "(a²b+ab²λ+b³)(E_i−E_{i+1}) + b²c([F]_0+[F]_1) + abc(v_iE_i−E_{i+1}v_{i+1}−E_{i+1}v_i+v_{i+1}E_i) = 0"
            }
            Family::Wtl1Br => "b(a²+abλ+b²+c(a+b))[F]_0 + bc(a+b)[F]_2 = 0",
            Family::Wtl2Br => "b(a²+abλ+b²+c(a+b))[F]_0 + bc(a+b)[F]_1 = 0",
            Family::VtlC0 => "(a²b+ab²λ+b³)(E_i−E_{i+1}) = 0",
            Family::VtlA0 => "b(E_i−E_{i+1}) + c([F]_0+[F]_1+[F]_2) = 0",
            Family::Wtl1A0 => "b(E_i−E_{i+1}) + c([F]_0+[F]_2) = 0, [F]_1 = 0",
            Family::Wtl2A0 => "b(E_i−E_{i+1}) + c([F]_0+[F]_1) = 0, [F]_2 = 0",
            Family::UtlA0 => "[F]_1 = [F]_2 = 0, b(E_i−E_{i+1}) + c[F]_0 = 0",
            Family::F1Star => "v_iE★_{i+1}E★_i = E★_{i+1}E★_iv_{i+1}, E★_i = 1 − E_i",
            Family::F2Star => "E★_iE★_{i+1}v_i = v_{i+1}E★_iE★_{i+1}, E★_i = 1 − E_i",
            Family::Fu22 => "P_iP★_{i+1}P★_i = P★_{i+1}P★_iP_{i+1}, P★_iP★_{i+1}P_i = P_{i+1}P★_iP★_{i+1}, P★ = 1 − P_*",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::Tlr | Family::Vcr | Family::Brauer => 2,
            _ => 3,
        }
    }

    /// Whether the instances carry coefficients drawn from `a, b, c`.
    pub fn uses_params(self) -> bool {
        !matches!(
            self,
            Family::Tlr
                | Family::Vcr
                | Family::Vev
                | Family::Brauer
                | Family::Conj
                | Family::Fj
                | Family::F1Star
                | Family::F2Star
                | Family::Fu22
        )
    }

    /// Forbidden-move families: the F moves under ρ and their E★ forms.
    pub fn is_forbidden_move(self) -> bool {
        matches!(
            self,
            Family::F1 | Family::F2 | Family::Ff1 | Family::Ff2 | Family::F1Star | Family::F2Star | Family::Fu22
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(key))
            .or(match key.to_ascii_lowercase().as_str() {
                "f1star" | "f1*" => Some(Family::F1Star),
                "f2star" | "f2*" => Some(Family::F2Star),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Basis of the Brauer-reduced forms at site `i`:
/// `v_i − v_{i+1}`, `E_i − E_{i+1}`, `v_{i+1}E_i − E_{i+1}v_i`, `E_iv_{i+1} − v_iE_{i+1}`.
pub const BASIS_NAMES: [&str; 4] = ["v_i−v_{i+1}", "[F]_0", "[F]_1", "[F]_2"];

/// What an instance's residual becomes once the Brauer axioms are applied.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Reduced {
    /// Holds in `D_n(λ)` and every quotient of it.
    Identity,
    /// Residual equals `Σ_k coeffs[k]·basis_k` in `D_n(λ)`; see [`BASIS_NAMES`].
    Linear([QuadScalar; 4]),
}

pub fn basis_expr(k: usize, i: usize) -> Expr {
    match k {
        0 => Expr::v(i).minus(Expr::v(i + 1)),
        1 => f0_brauer(i),
        2 => f1_brauer(i),
        3 => f2_brauer(i),
        _ => panic!("basis index {k} out of range"),
    }
}

#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub family: Family,
    pub n: usize,
    pub site: usize,
    pub label: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub reduced: Reduced,
}

fn p<const K: usize>(xs: [Expr; K]) -> Expr {
    Expr::word(xs)
}

fn e(i: usize) -> Expr {
    Expr::e(i)
}

fn v(i: usize) -> Expr {
    Expr::v(i)
}

fn r(i: usize) -> Expr {
    Expr::rho(i)
}

fn es(i: usize) -> Expr {
    Expr::e_star(i)
}

fn lin(terms: Vec<(QuadScalar, Expr)>) -> Expr {
    Expr::Sum(terms.into_iter().map(|(c, x)| x.scaled(c)).collect())
}

fn q(v: i64) -> QuadScalar {
    QuadScalar::from_int(v)
}

pub fn f0(i: usize) -> Expr {
    p([e(i), v(i + 1), e(i)]).minus(p([e(i + 1), v(i), e(i + 1)])).named("[F]_0")
}

pub fn f1(i: usize) -> Expr {
    p([v(i), e(i + 1), e(i)]).minus(p([e(i + 1), e(i), v(i + 1)])).named("[F]_1")
}

pub fn f2(i: usize) -> Expr {
    p([e(i), e(i + 1), v(i)]).minus(p([v(i + 1), e(i), e(i + 1)])).named("[F]_2")
}

pub fn f0_brauer(i: usize) -> Expr {
    e(i).minus(e(i + 1)).named("[F]_0 (Brauer)")
}

pub fn f1_brauer(i: usize) -> Expr {
    p([v(i + 1), e(i)]).minus(p([e(i + 1), v(i)])).named("[F]_1 (Brauer)")
}

pub fn f2_brauer(i: usize) -> Expr {
    p([e(i), v(i + 1)]).minus(p([v(i), e(i + 1)])).named("[F]_2 (Brauer)")
}

fn mul(xs: &[&QuadScalar]) -> Result<QuadScalar> {
    xs.iter().try_fold(QuadScalar::one(), |acc, x| acc.try_mul(x))
}

fn sum(xs: &[QuadScalar]) -> Result<QuadScalar> {
    xs.iter().try_fold(QuadScalar::zero(), |acc, x| acc.try_add(x))
}

/// Coefficient slots of the stored (vTL) relation.
#[derive(Clone, Debug, PartialEq)]
pub struct VtlCoefficients {
    /// `a²b + ab²λ + b³` on `E_i − E_{i+1}`.
    pub e_diff: QuadScalar,
    /// `a²c` on `v_i − v_{i+1}`.
    pub v_diff: QuadScalar,
    /// `abc` on `E_iv_i + v_iE_i − E_{i+1}v_{i+1} − v_{i+1}E_{i+1}`.
    pub mixed: QuadScalar,
    /// `b²c` on `[F]_0 + [F]_1 + [F]_2`.
    pub forbidden: QuadScalar,
}

pub fn vtl_coefficients(params: &RhoParams) -> Result<VtlCoefficients> {
    let RhoParams { a, b, c, lambda } = params;
    Ok(VtlCoefficients {
        e_diff: sum(&[mul(&[a, a, b])?, mul(&[a, b, b, lambda])?, mul(&[b, b, b])?])?,
        v_diff: mul(&[a, a, c])?,
        mixed: mul(&[a, b, c])?,
        forbidden: mul(&[b, b, c])?,
    })
}

/// Slots `a², ab, b²` of the stored (FF₁)/(FF₂) relations.
pub fn ff_coefficients(params: &RhoParams) -> Result<[QuadScalar; 3]> {
    let RhoParams { a, b, .. } = params;
    Ok([mul(&[a, a])?, mul(&[a, b])?, mul(&[b, b])?])
}

/// `b(a² + abλ + b² + c·k)` where `k` is `2a + b` for (vTL) and `a + b` for (wTL).
fn brauer_f0_coefficient(params: &RhoParams, k: &QuadScalar) -> Result<QuadScalar> {
    let RhoParams { a, b, c, lambda } = params;
    let inner = sum(&[mul(&[a, a])?, mul(&[a, b, lambda])?, mul(&[b, b])?, mul(&[c, k])?])?;
    b.try_mul(&inner)
}

fn brvtl_coefficients(params: &RhoParams) -> Result<[QuadScalar; 4]> {
    let RhoParams { a, b, c, .. } = params;
    let k = sum(&[a.clone(), a.clone(), b.clone()])?;
    let fc = mul(&[b, b, c])?;
    Ok([mul(&[a, a, c])?, brauer_f0_coefficient(params, &k)?, fc.clone(), fc])
}

fn wtl_brauer_coefficients(params: &RhoParams) -> Result<(QuadScalar, QuadScalar)> {
    let RhoParams { a, b, c, .. } = params;
    let apb = a.try_add(b)?;
    Ok((brauer_f0_coefficient(params, &apb)?, mul(&[b, c, &apb])?))
}

fn ff1_reduced(a2: QuadScalar, ab: QuadScalar, b2: QuadScalar) -> Reduced {
    Reduced::Linear([a2, ab.clone(), b2, ab.neg()])
}

fn ff2_reduced(a2: QuadScalar, ab: QuadScalar, b2: QuadScalar) -> Reduced {
    Reduced::Linear([a2, ab.clone(), ab.neg(), b2])
}

struct Builder<'a> {
    family: Family,
    n: usize,
    params: &'a RhoParams,
    out: Vec<RelationInstance>,
}

impl Builder<'_> {
    fn push(&mut self, site: usize, lhs: Expr, rhs: Expr, reduced: Reduced) {
        let label = format!("{lhs} = {rhs}");
        self.push_labelled(site, label, lhs, rhs, reduced);
    }

    fn push_labelled(&mut self, site: usize, label: impl Into<String>, lhs: Expr, rhs: Expr, reduced: Reduced) {
        self.out.push(RelationInstance {
            family: self.family,
            n: self.n,
            site,
            label: label.into(),
            lhs,
            rhs,
            reduced,
        });
    }

    /// Indices `j` with `|i − j| > 1`; with `upper_only`, just `j > i + 1`.
    fn distant(&self, i: usize, upper_only: bool) -> Vec<usize> {
        (1..self.n).filter(|&j| j > i + 1 || (!upper_only && j + 1 < i)).collect()
    }

    fn site(&mut self, i: usize) -> Result<()> {
        use Family::*;
        let n = self.n;
        let j = i + 1;
        let inner = j < n;
        let id = || Reduced::Identity;
        match self.family {
            Tlr => {
                let lambda = self.params.lambda.clone();
                self.push(i, p([e(i), e(i)]), e(i).scaled(lambda), id());
                if inner {
                    self.push(i, p([e(i), e(j), e(i)]), e(i), id());
                    self.push(i, p([e(j), e(i), e(j)]), e(j), id());
                }
                for k in self.distant(i, true) {
                    self.push(i, p([e(i), e(k)]), p([e(k), e(i)]), id());
                }
            }
            Vcr => {
                self.push(i, p([v(i), v(i)]), Expr::one(), id());
                if inner {
                    self.push(i, p([v(i), v(j), v(i)]), p([v(j), v(i), v(j)]), id());
                }
                for k in self.distant(i, true) {
                    self.push(i, p([v(i), v(k)]), p([v(k), v(i)]), id());
                }
            }
            Vev => {
                if inner {
                    self.push(i, p([v(i), e(j), v(i)]), p([v(j), e(i), v(j)]), id());
                }
                for k in self.distant(i, false) {
                    self.push(i, p([e(i), v(k)]), p([v(k), e(i)]), id());
                }
            }
            Brauer => {
                self.push(i, p([e(i), v(i)]), e(i), id());
                self.push(i, p([v(i), e(i)]), e(i), id());
                for k in self.distant(i, false) {
                    self.push(i, p([e(i), v(k)]), p([v(k), e(i)]), id());
                }
                if inner {
                    self.push(i, p([v(j), e(i), e(j)]), p([v(i), e(j)]), id());
                    self.push(i, p([v(i), e(j), e(i)]), p([v(j), e(i)]), id());
                    self.push(i, p([e(j), e(i), v(j)]), p([e(j), v(i)]), id());
                    self.push(i, p([e(i), e(j), v(i)]), p([e(i), v(j)]), id());
                }
            }
            Conj if inner => {
                self.push(i, e(j), p([v(i), v(j), e(i), v(j), v(i)]), id());
            }
            Fj if inner => {
                self.push_labelled(i, "[F]_0 explicit", f0(i), f0_brauer(i), id());
                self.push_labelled(i, "[F]_1 explicit", f1(i), f1_brauer(i), id());
                self.push_labelled(i, "[F]_2 explicit", f2(i), f2_brauer(i), id());
            }
            Bgr => {
                if inner {
                    let red = Reduced::Linear(brvtl_coefficients(self.params)?);
                    self.push(i, p([r(i), r(j), r(i)]), p([r(j), r(i), r(j)]), red);
                }
                for k in self.distant(i, true) {
                    self.push(i, p([r(i), r(k)]), p([r(k), r(i)]), id());
                }
            }
            Vbr => {
                for k in self.distant(i, false) {
                    self.push(i, p([r(i), v(k)]), p([v(k), r(i)]), id());
                }
                if inner {
                    self.push(i, p([v(i), r(j), v(i)]), p([v(j), r(i), v(j)]), id());
                }
            }
            F1 if inner => {
                let [a2, ab, b2] = ff_coefficients(self.params)?;
                self.push(i, p([v(i), r(j), r(i)]), p([r(j), r(i), v(j)]), ff1_reduced(a2, ab, b2));
            }
            F2 if inner => {
                let [a2, ab, b2] = ff_coefficients(self.params)?;
                self.push(i, p([r(i), r(j), v(i)]), p([v(j), r(i), r(j)]), ff2_reduced(a2, ab, b2));
            }
            Vtl if inner => {
                let k = vtl_coefficients(self.params)?;
                let mixed = Expr::Sum(vec![
                    p([e(i), v(i)]),
                    p([v(i), e(i)]),
                    p([e(j), v(j)]).scaled(q(-1)),
                    p([v(j), e(j)]).scaled(q(-1)),
                ]);
                let lhs = lin(vec![
                    (k.e_diff, e(i).minus(e(j))),
                    (k.v_diff, v(i).minus(v(j))),
                    (k.mixed, mixed),
                    (k.forbidden, Expr::Sum(vec![f0(i), f1(i), f2(i)])),
                ]);
                let red = Reduced::Linear(brvtl_coefficients(self.params)?);
                self.push_labelled(i, format!("vTL at site {i}"), lhs, Expr::zero(), red);
            }
            Brvtl if inner => {
                let [c0, c1, c2, c3] = brvtl_coefficients(self.params)?;
                let lhs = lin(vec![
                    (c0.clone(), v(i).minus(v(j))),
                    (c1.clone(), f0_brauer(i)),
                    (c2.clone(), f1_brauer(i).plus(f2_brauer(i))),
                ]);
                let red = Reduced::Linear([c0, c1, c2, c3]);
                self.push_labelled(i, format!("brvtl at site {i}"), lhs, Expr::zero(), red);
            }
            Ff1 if inner => {
                let [a2, ab, b2] = ff_coefficients(self.params)?;
                let group = Expr::Sum(vec![
                    p([v(i), e(i)]),
                    p([e(j), v(j)]).scaled(q(-1)),
                    p([v(i), e(j)]),
                    p([e(i), v(j)]).scaled(q(-1)),
                ]);
                let lhs = v(i).minus(v(j)).scaled(a2.clone());
                let rhs = lin(vec![(ab.neg(), group), (b2.neg(), f1(i))]);
                self.push_labelled(i, format!("FF1 at site {i}"), lhs, rhs, ff1_reduced(a2, ab, b2));
            }
            Ff2 if inner => {
                let [a2, ab, b2] = ff_coefficients(self.params)?;
                let group = Expr::Sum(vec![
                    p([e(i), v(i)]),
                    p([v(j), e(j)]).scaled(q(-1)),
                    p([e(j), v(i)]),
                    p([v(j), e(i)]).scaled(q(-1)),
                ]);
                let lhs = v(i).minus(v(j)).scaled(a2.clone());
                let rhs = lin(vec![(ab.neg(), group), (b2.neg(), f2(i))]);
                self.push_labelled(i, format!("FF2 at site {i}"), lhs, rhs, ff2_reduced(a2, ab, b2));
            }
            Wtl1 | Wtl2 if inner => {
                let k = vtl_coefficients(self.params)?;
                let (f0c, fc) = wtl_brauer_coefficients(self.params)?;
                let (fsum, mixed, red) = if self.family == Wtl1 {
                    let mixed = Expr::Sum(vec![
                        p([e(i), v(i)]),
                        p([v(j), e(j)]).scaled(q(-1)),
                        p([v(i), e(j)]).scaled(q(-1)),
                        p([e(i), v(j)]),
                    ]);
                    (f0(i).plus(f2(i)), mixed, [QuadScalar::zero(), f0c, QuadScalar::zero(), fc])
                } else {
                    let mixed = Expr::Sum(vec![
                        p([v(i), e(i)]),
                        p([e(j), v(j)]).scaled(q(-1)),
                        p([e(j), v(i)]).scaled(q(-1)),
                        p([v(j), e(i)]),
                    ]);
                    (f0(i).plus(f1(i)), mixed, [QuadScalar::zero(), f0c, fc, QuadScalar::zero()])
                };
                let lhs = lin(vec![(k.e_diff, e(i).minus(e(j))), (k.forbidden, fsum), (k.mixed, mixed)]);
                let label = format!("{} at site {i}", self.family);
                self.push_labelled(i, label, lhs, Expr::zero(), Reduced::Linear(red));
            }
            Wtl1Br | Wtl2Br if inner => {
                let (f0c, fc) = wtl_brauer_coefficients(self.params)?;
                let (other, red) = if self.family == Wtl1Br {
                    (f2_brauer(i), [QuadScalar::zero(), f0c.clone(), QuadScalar::zero(), fc.clone()])
                } else {
                    (f1_brauer(i), [QuadScalar::zero(), f0c.clone(), fc.clone(), QuadScalar::zero()])
                };
                let lhs = lin(vec![(f0c, f0_brauer(i)), (fc, other)]);
                let label = format!("{} at site {i}", self.family);
                self.push_labelled(i, label, lhs, Expr::zero(), Reduced::Linear(red));
            }
            VtlC0 if inner => {
                let k = vtl_coefficients(&RhoParams { c: QuadScalar::zero(), ..self.params.clone() })?;
                let red =
                    Reduced::Linear([QuadScalar::zero(), k.e_diff.clone(), QuadScalar::zero(), QuadScalar::zero()]);
                let lhs = e(i).minus(e(j)).scaled(k.e_diff);
                self.push_labelled(i, format!("vTL (c=0) at site {i}"), lhs, Expr::zero(), red);
            }
            VtlA0 | Wtl1A0 | Wtl2A0 | UtlA0 if inner => self.a_zero_site(i)?,
            _ => {}
        }
        Ok(())
    }

    /// The `a = 0` specializations; `a` itself is ignored.
    fn a_zero_site(&mut self, i: usize) -> Result<()> {
        use Family::*;
        let j = i + 1;
        let b = self.params.b.clone();
        let c = self.params.c.clone();
        let z = QuadScalar::zero;
        let bc = b.try_add(&c)?;
        let head = |groups: Vec<Expr>| lin(vec![(b.clone(), e(i).minus(e(j))), (c.clone(), Expr::Sum(groups))]);
        let vanish = |k: usize| if k == 1 { f1(i) } else { f2(i) };
        let unit = |k: usize| {
            let mut cs = [z(), z(), z(), z()];
            cs[k + 1] = QuadScalar::one();
            Reduced::Linear(cs)
        };
        match self.family {
            VtlA0 => {
                let red = Reduced::Linear([z(), bc, c.clone(), c.clone()]);
                self.push_labelled(
                    i,
                    format!("vTL (a=0) at site {i}"),
                    head(vec![f0(i), f1(i), f2(i)]),
                    Expr::zero(),
                    red,
                );
            }
            Wtl1A0 => {
                let red = Reduced::Linear([z(), bc, z(), c.clone()]);
                self.push_labelled(i, format!("wTL1 (a=0) at site {i}"), head(vec![f0(i), f2(i)]), Expr::zero(), red);
                self.push_labelled(i, "[F]_1 = 0", vanish(1), Expr::zero(), unit(1));
            }
            Wtl2A0 => {
                let red = Reduced::Linear([z(), bc, c.clone(), z()]);
                self.push_labelled(i, format!("wTL2 (a=0) at site {i}"), head(vec![f0(i), f1(i)]), Expr::zero(), red);
                self.push_labelled(i, "[F]_2 = 0", vanish(2), Expr::zero(), unit(2));
            }
            UtlA0 => {
                self.push_labelled(i, "[F]_1 = 0", vanish(1), Expr::zero(), unit(1));
                self.push_labelled(i, "[F]_2 = 0", vanish(2), Expr::zero(), unit(2));
                let red = Reduced::Linear([z(), bc, z(), z()]);
                self.push_labelled(i, format!("uTL (a=0) at site {i}"), head(vec![f0(i)]), Expr::zero(), red);
            }
            _ => unreachable!("not an a = 0 family"),
        }
        Ok(())
    }

    fn star_site(&mut self, i: usize) {
        let j = i + 1;
        // E★ = 1 − E is ρ at a = 1, b = −1, c = 0
        let first = || (p([v(i), es(j), es(i)]), p([es(j), es(i), v(j)]), ff1_reduced(q(1), q(-1), q(1)));
        let second = || (p([es(i), es(j), v(i)]), p([v(j), es(i), es(j)]), ff2_reduced(q(1), q(-1), q(1)));
        match self.family {
            Family::F1Star => {
                let (l, r, red) = first();
                self.push(i, l, r, red);
            }
            Family::F2Star => {
                let (l, r, red) = second();
                self.push(i, l, r, red);
            }
            Family::Fu22 => {
                for (tag, (l, r, red)) in [("first", first()), ("second", second())] {
                    self.push_labelled(i, format!("fu22 {tag}: {l} = {r}"), l, r, red);
                }
            }
            _ => {}
        }
    }
}

/// All instances of `family` on `n` strands in ascending site order.
pub fn relation_instances(family: Family, n: usize, params: &RhoParams) -> Result<Vec<RelationInstance>> {
    if n < family.min_n() {
        return Err(Error::TooFewStrands { family: family.name().to_string(), min: family.min_n(), n });
    }
    let mut b = Builder { family, n, params, out: Vec::new() };
    for i in 1..n {
        if matches!(family, Family::F1Star | Family::F2Star | Family::Fu22) {
            if i + 1 < n {
                b.star_site(i);
            }
        } else {
            b.site(i)?;
        }
    }
    Ok(b.out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> RhoParams {
        RhoParams::rational(2, 3, 5, 7)
    }

    #[test]
    fn vcr_at_three_strands() {
        let inst = relation_instances(Family::Vcr, 3, &params()).unwrap();
        assert_eq!(inst.len(), 3);
        let labels: Vec<&str> = inst.iter().map(|x| x.label.as_str()).collect();
        assert!(labels.contains(&"v1 v2 v1 = v2 v1 v2"));
    }

    #[test]
    fn tlr_includes_distant_commutation() {
        let inst = relation_instances(Family::Tlr, 4, &params()).unwrap();
        assert!(inst.iter().any(|x| x.label == "E1 E3 = E3 E1"));
    }

    #[test]
    fn sites_ascend() {
        for family in Family::ALL {
            let inst = relation_instances(family, 5, &params()).unwrap();
            assert!(!inst.is_empty(), "{family}");
            assert!(inst.windows(2).all(|w| w[0].site <= w[1].site), "{family}");
        }
    }

    #[test]
    fn too_few_strands_and_unknown_names() {
        assert!(matches!(relation_instances(Family::Vtl, 2, &params()), Err(Error::TooFewStrands { .. })));
        assert_eq!("wtl1".parse::<Family>().unwrap(), Family::Wtl1);
        assert_eq!("<f2>".parse::<Family>().unwrap(), Family::F2Star);
        assert!(matches!("nope".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn braid_root_kills_the_vtl_coefficient() {
        let lambda = QuadScalar::from_int(3);
        let p = RhoParams::braid_plus(lambda).unwrap();
        let k = vtl_coefficients(&p).unwrap();
        assert!(k.e_diff.is_zero());
        let inst = relation_instances(Family::Vtl, 3, &p).unwrap();
        match &inst[0].reduced {
            Reduced::Linear(cs) => assert!(cs.iter().all(QuadScalar::is_zero)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vtl_names_its_bracket_groups() {
        let inst = relation_instances(Family::Vtl, 3, &params()).unwrap();
        let names: Vec<&str> = inst[0].lhs.named_groups().iter().map(|(n, _)| *n).collect();
        assert_eq!(names, vec!["[F]_0", "[F]_1", "[F]_2"]);
    }

    #[test]
    fn every_family_round_trips_its_name() {
        for family in Family::ALL {
            assert_eq!(family.name().parse::<Family>().unwrap(), family);
        }
    }
}
