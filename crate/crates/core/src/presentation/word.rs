use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Temperley-Lieb idempotent `E_i`.
    E,
    /// Virtual crossing `v_i`.
    V,
    /// `ρ_i = a + bE_i + cv_i`.
    Rho,
    /// `ρ_i⁻¹`, evaluable only where `ρ_i` is invertible.
    RhoInv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub kind: GeneratorKind,
    pub index: usize,
}

impl GeneratorSymbol {
    pub fn e(index: usize) -> Self {
        Self { kind: GeneratorKind::E, index }
    }

    pub fn v(index: usize) -> Self {
        Self { kind: GeneratorKind::V, index }
    }

    pub fn rho(index: usize) -> Self {
        Self { kind: GeneratorKind::Rho, index }
    }

    pub fn rho_inv(index: usize) -> Self {
        Self { kind: GeneratorKind::RhoInv, index }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::E => write!(f, "e{}", self.index),
            GeneratorKind::V => write!(f, "v{}", self.index),
            GeneratorKind::Rho => write!(f, "r{}", self.index),
            GeneratorKind::RhoInv => write!(f, "r{}^-1", self.index),
        }
    }
}

/// A product of generators on `n` strands; empty means the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorWord {
    n: usize,
    symbols: Vec<GeneratorSymbol>,
}

impl GeneratorWord {
    pub fn new(n: usize, symbols: Vec<GeneratorSymbol>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroStrands);
        }
        if let Some(bad) = symbols.iter().find(|s| s.index == 0 || s.index >= n) {
            return Err(Error::IndexOutOfRange { index: bad.index, n });
        }
        Ok(Self { n, symbols })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, symbols: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn parse_token(token: &str) -> Option<GeneratorSymbol> {
    let (body, inverse) = match token.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (token, false),
    };
    let mut chars = body.chars();
    let head = chars.next()?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let index: usize = digits.parse().ok()?;
    let kind = match (head, inverse) {
        ('e', false) => GeneratorKind::E,
        ('v', false) => GeneratorKind::V,
        ('r', false) => GeneratorKind::Rho,
        ('r', true) => GeneratorKind::RhoInv,
        _ => return None,
    };
    Some(GeneratorSymbol { kind, index })
}

/// Parse whitespace-separated `e<k>`, `v<k>`, `r<k>`, `r<k>^-1` tokens with `1 ≤ k ≤ n−1`.
///
/// Error positions are 1-based token numbers.
pub fn parse_word(text: &str, n: usize) -> Result<GeneratorWord> {
    if n == 0 {
        return Err(Error::ZeroStrands);
    }
    let mut symbols = Vec::new();
    for (k, token) in text.split_whitespace().enumerate() {
        let sym = parse_token(token).ok_or_else(|| Error::Parse {
            position: k + 1,
            token: token.to_string(),
            reason: "expected e<k>, v<k>, r<k> or r<k>^-1".into(),
        })?;
        if sym.index == 0 || sym.index >= n {
            return Err(Error::Parse {
                position: k + 1,
                token: token.to_string(),
                reason: format!("index out of range 1..={} for {n} strands", n.saturating_sub(1)),
            });
        }
        symbols.push(sym);
    }
    Ok(GeneratorWord { n, symbols })
}

/// Smallest strand count a word's text needs (at least 2).
pub fn min_strands(text: &str) -> usize {
    text.split_whitespace().filter_map(parse_token).map(|s| s.index + 1).max().unwrap_or(2).max(2)
}
