use std::fmt;

use crate::presentation::word::{GeneratorKind, GeneratorSymbol};
use crate::scalar::QuadScalar;

/// Formal expression over generator symbols with scalar coefficients.
///
/// `Named` wraps a sub-expression (such as a bracketed `[F]_j` group) so that
/// reports can point at it.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(GeneratorSymbol),
    /// Scalar multiple of the identity.
    Scalar(QuadScalar),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Scaled(QuadScalar, Box<Expr>),
    Named(String, Box<Expr>),
}

impl Expr {
    pub fn e(i: usize) -> Self {
        Expr::Gen(GeneratorSymbol::e(i))
    }

    pub fn v(i: usize) -> Self {
        Expr::Gen(GeneratorSymbol::v(i))
    }

    pub fn rho(i: usize) -> Self {
        Expr::Gen(GeneratorSymbol::rho(i))
    }

    pub fn one() -> Self {
        Expr::Scalar(QuadScalar::one())
    }

    pub fn zero() -> Self {
        Expr::Sum(Vec::new())
    }

    pub fn word(symbols: impl IntoIterator<Item = Expr>) -> Self {
        Expr::Product(symbols.into_iter().collect())
    }

    pub fn scaled(self, s: QuadScalar) -> Self {
        Expr::Scaled(s, Box::new(self))
    }

    pub fn minus(self, other: Expr) -> Self {
        Expr::Sum(vec![self, other.scaled(QuadScalar::from_int(-1))])
    }

    pub fn plus(self, other: Expr) -> Self {
        Expr::Sum(vec![self, other])
    }

    pub fn named(self, name: impl Into<String>) -> Self {
        Expr::Named(name.into(), Box::new(self))
    }

    /// `E★_i = 1 − E_i`.
    pub fn e_star(i: usize) -> Self {
        Expr::one().minus(Expr::e(i)).named(format!("E*{i}"))
    }

    pub fn is_zero_literal(&self) -> bool {
        match self {
            Expr::Sum(terms) => terms.iter().all(Expr::is_zero_literal),
            Expr::Scalar(s) => s.is_zero(),
            Expr::Scaled(s, inner) => s.is_zero() || inner.is_zero_literal(),
            Expr::Named(_, inner) => inner.is_zero_literal(),
            _ => false,
        }
    }

    pub fn max_index(&self) -> usize {
        match self {
            Expr::Gen(s) => s.index,
            Expr::Scalar(_) => 0,
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().map(Expr::max_index).max().unwrap_or(0),
            Expr::Scaled(_, x) | Expr::Named(_, x) => x.max_index(),
        }
    }

    pub fn uses_rho(&self) -> bool {
        match self {
            Expr::Gen(s) => matches!(s.kind, GeneratorKind::Rho | GeneratorKind::RhoInv),
            Expr::Scalar(_) => false,
            Expr::Sum(xs) | Expr::Product(xs) => xs.iter().any(Expr::uses_rho),
            Expr::Scaled(_, x) | Expr::Named(_, x) => x.uses_rho(),
        }
    }

    /// Named sub-expressions, outermost first, without duplicates by name.
    pub fn named_groups(&self) -> Vec<(&str, &Expr)> {
        fn walk<'a>(e: &'a Expr, out: &mut Vec<(&'a str, &'a Expr)>) {
            match e {
                Expr::Named(name, inner) => {
                    if !out.iter().any(|(n, _)| n == name) {
                        out.push((name, inner));
                    }
                    walk(inner, out);
                }
                Expr::Sum(xs) | Expr::Product(xs) => xs.iter().for_each(|x| walk(x, out)),
                Expr::Scaled(_, x) => walk(x, out),
                Expr::Gen(_) | Expr::Scalar(_) => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

fn fmt_factor(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Expr::Sum(xs) if xs.len() > 1 => write!(f, "({e})"),
        Expr::Scaled(..) => write!(f, "({e})"),
        _ => write!(f, "{e}"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(s) => match s.kind {
                GeneratorKind::E => write!(f, "E{}", s.index),
                GeneratorKind::V => write!(f, "v{}", s.index),
                GeneratorKind::Rho => write!(f, "ρ{}", s.index),
                GeneratorKind::RhoInv => write!(f, "ρ{}^-1", s.index),
            },
            Expr::Scalar(s) if s.is_one() => write!(f, "1"),
            Expr::Scalar(s) => write!(f, "{s}"),
            Expr::Sum(xs) if xs.is_empty() => write!(f, "0"),
            Expr::Sum(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Expr::Product(xs) if xs.is_empty() => write!(f, "1"),
            Expr::Product(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    fmt_factor(x, f)?;
                }
                Ok(())
            }
            Expr::Scaled(s, x) => {
                if s == &QuadScalar::from_int(-1) {
                    write!(f, "-")?;
                } else {
                    write!(f, "({s})·")?;
                }
                fmt_factor(x, f)
            }
            Expr::Named(name, _) => write!(f, "{name}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_compactly() {
        let e = Expr::word([Expr::v(1), Expr::e(2), Expr::v(1)]);
        assert_eq!(e.to_string(), "v1 E2 v1");
        assert_eq!(Expr::e(1).minus(Expr::e(2)).to_string(), "E1 + -E2");
        assert_eq!(Expr::word([Expr::v(1), Expr::e_star(2)]).to_string(), "v1 E*2");
    }

    #[test]
    fn named_groups_are_collected_once() {
        let f0 = Expr::e(1).minus(Expr::e(2)).named("[F]_0");
        let e = f0.clone().plus(f0).plus(Expr::e_star(1));
        let names: Vec<&str> = e.named_groups().iter().map(|(n, _)| *n).collect();
        assert_eq!(names, vec!["[F]_0", "E*1"]);
    }

    #[test]
    fn index_and_rho_queries() {
        let e = Expr::word([Expr::rho(2), Expr::v(3)]);
        assert_eq!(e.max_index(), 3);
        assert!(e.uses_rho());
        assert!(!Expr::e(1).uses_rho());
        assert!(Expr::zero().is_zero_literal());
    }
}
