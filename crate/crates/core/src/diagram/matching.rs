use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Boundary point of an `n`-strand diagram, 1-based. Tops sort before bottoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Top(usize),
    Bottom(usize),
}

impl Endpoint {
    fn slot(self, n: usize) -> Result<usize> {
        match self {
            Endpoint::Top(i) if (1..=n).contains(&i) => Ok(i - 1),
            Endpoint::Bottom(i) if (1..=n).contains(&i) => Ok(n + i - 1),
            _ => Err(Error::InvalidMatching(format!("endpoint {self} outside 1..={n}"))),
        }
    }

    fn from_slot(slot: usize, n: usize) -> Self {
        if slot < n {
            Endpoint::Top(slot + 1)
        } else {
            Endpoint::Bottom(slot - n + 1)
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Top(i) => write!(f, "T{i}"),
            Endpoint::Bottom(i) => write!(f, "B{i}"),
        }
    }
}

impl FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidMatching(format!("bad endpoint label `{s}`"));
        let (kind, idx) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match kind {
            "T" => Ok(Endpoint::Top(idx)),
            "B" => Ok(Endpoint::Bottom(idx)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A Brauer diagram: a perfect matching on `T1..Tn, B1..Bn`.
///
/// Stored as a partner table over slots `0..2n` (tops first), which is
/// already canonical, so derived equality and ordering are structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    n: usize,
    partner: Vec<usize>,
}

impl Matching {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Endpoint, Endpoint)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroStrands);
        }
        let mut partner = vec![usize::MAX; 2 * n];
        for (a, b) in pairs {
            let (sa, sb) = (a.slot(n)?, b.slot(n)?);
            if sa == sb || partner[sa] != usize::MAX || partner[sb] != usize::MAX {
                return Err(Error::InvalidMatching(format!("endpoint reused in pair ({a}, {b})")));
            }
            partner[sa] = sb;
            partner[sb] = sa;
        }
        if let Some(slot) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidMatching(format!("endpoint {} is unmatched", Endpoint::from_slot(slot, n))));
        }
        Ok(Self { n, partner })
    }

    fn from_partner(n: usize, partner: Vec<usize>) -> Self {
        debug_assert!(partner.iter().enumerate().all(|(i, &p)| partner[p] == i && p != i));
        Self { n, partner }
    }

    /// `Ti - Bi` for every strand.
    ///
    /// Panics if `n == 0`.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "a diagram needs at least one strand");
        Self::permutation(&(0..n).collect::<Vec<_>>())
    }

    /// Cup-cap generator: `Ti - Ti+1`, `Bi - Bi+1`, straight strands elsewhere.
    pub fn e(i: usize, n: usize) -> Result<Self> {
        check_site(i, n)?;
        let mut m = Self::identity(n);
        let (a, b) = (i - 1, i);
        m.partner[a] = b;
        m.partner[b] = a;
        m.partner[n + a] = n + b;
        m.partner[n + b] = n + a;
        Ok(m)
    }

    /// Transposition generator: `Ti - Bi+1`, `Ti+1 - Bi`.
    pub fn v(i: usize, n: usize) -> Result<Self> {
        check_site(i, n)?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i - 1, i);
        Ok(Self::permutation(&perm))
    }

    /// Permutation diagram joining `T(a+1)` to `B(perm[a]+1)` (0-based `perm`).
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut partner = vec![0; 2 * n];
        for (a, &b) in perm.iter().enumerate() {
            partner[a] = n + b;
            partner[n + b] = a;
        }
        Self::from_partner(n, partner)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partner_of(&self, e: Endpoint) -> Result<Endpoint> {
        Ok(Endpoint::from_slot(self.partner[e.slot(self.n)?], self.n))
    }

    /// Canonical pair list: smaller endpoint first, pairs sorted.
    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        (0..2 * self.n)
            .filter(|&s| s < self.partner[s])
            .map(|s| (Endpoint::from_slot(s, self.n), Endpoint::from_slot(self.partner[s], self.n)))
            .collect()
    }

    /// `Some(perm)` (0-based, top `a` to bottom `perm[a]`) when every strand goes through.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        (0..self.n).map(|a| self.partner[a].checked_sub(self.n)).collect()
    }

    /// Top-to-top pairs `(a, b)` with `a < b`, 0-based.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        (0..self.n).filter(|&a| self.partner[a] < self.n && a < self.partner[a]).map(|a| (a, self.partner[a])).collect()
    }

    /// Bottom-to-bottom pairs `(a, b)` with `a < b`, 0-based strand positions.
    pub fn caps(&self) -> Vec<(usize, usize)> {
        (self.n..2 * self.n)
            .filter(|&s| self.partner[s] >= self.n && s < self.partner[s])
            .map(|s| (s - self.n, self.partner[s] - self.n))
            .collect()
    }

    /// Through strands `(top, bottom)`, 0-based, ordered by top position.
    pub fn through_strands(&self) -> Vec<(usize, usize)> {
        (0..self.n).filter(|&a| self.partner[a] >= self.n).map(|a| (a, self.partner[a] - self.n)).collect()
    }

    /// Stack `self` on top of `lower` and return the composite with the number
    /// of closed loops formed in the glued middle row.
    pub fn compose(&self, lower: &Matching) -> Result<(Matching, usize)> {
        if self.n != lower.n {
            return Err(Error::StrandMismatch { left: self.n, right: lower.n });
        }
        let n = self.n;
        let mut glued = vec![false; n];
        let mut partner = vec![usize::MAX; 2 * n];

        // slots of the composite: 0..n are self's tops, n..2n are lower's bottoms
        for start in 0..2 * n {
            if partner[start] != usize::MAX {
                continue;
            }
            let (mut on_upper, mut point) = (start < n, start);
            let end = loop {
                if on_upper {
                    let p = self.partner[point];
                    if p < n {
                        break p;
                    }
                    glued[p - n] = true;
                    on_upper = false;
                    point = p - n;
                } else {
                    let q = lower.partner[point];
                    if q >= n {
                        break q;
                    }
                    glued[q] = true;
                    on_upper = true;
                    point = n + q;
                }
            };
            partner[start] = end;
            partner[end] = start;
        }

        let mut loops = 0;
        for g in 0..n {
            if glued[g] {
                continue;
            }
            loops += 1;
            let mut cur = g;
            loop {
                glued[cur] = true;
                // every unvisited middle point is matched to the middle on both sides
                let via_upper = self.partner[n + cur] - n;
                glued[via_upper] = true;
                cur = lower.partner[via_upper];
                if cur == g {
                    break;
                }
            }
        }
        Ok((Matching::from_partner(n, partner), loops))
    }

    /// Loops in the closure that joins `Ti` to `Bi` for every `i`.
    pub fn closure_loops(&self) -> usize {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                let across = self.partner[cur];
                seen[across] = true;
                cur = if across < n { across + n } else { across - n };
            }
        }
        loops
    }

    /// Mirror image top-to-bottom; reverses composition order.
    pub fn flip(&self) -> Matching {
        let n = self.n;
        let swap = |s: usize| if s < n { s + n } else { s - n };
        let mut partner = vec![0; 2 * n];
        for s in 0..2 * n {
            partner[swap(s)] = swap(self.partner[s]);
        }
        Matching::from_partner(n, partner)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matching {
        assert!(n > 0, "a diagram needs at least one strand");
        let mut slots: Vec<usize> = (0..2 * n).collect();
        slots.shuffle(rng);
        let mut partner = vec![0; 2 * n];
        for pair in slots.chunks(2) {
            partner[pair[0]] = pair[1];
            partner[pair[1]] = pair[0];
        }
        Matching::from_partner(n, partner)
    }

    /// Every Brauer diagram on `n` strands, `(2n-1)!!` of them, in ascending order.
    pub fn all(n: usize) -> Vec<Matching> {
        fn extend(partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
                out.push(partner.clone());
                return;
            };
            for other in first + 1..partner.len() {
                if partner[other] == usize::MAX {
                    partner[first] = other;
                    partner[other] = first;
                    extend(partner, out);
                    partner[first] = usize::MAX;
                    partner[other] = usize::MAX;
                }
            }
        }
        let mut out = Vec::new();
        extend(&mut vec![usize::MAX; 2 * n], &mut out);
        let mut all: Vec<Matching> = out.into_iter().map(|p| Matching::from_partner(n, p)).collect();
        all.sort();
        all
    }
}

pub(crate) fn check_site(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

/// Wire form: `{"n": 3, "pairs": [["T1","B1"], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatchingRecord {
    n: usize,
    pairs: Vec<(Endpoint, Endpoint)>,
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatchingRecord { n: self.n, pairs: self.pairs() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = MatchingRecord::deserialize(deserializer)?;
        Matching::new(rec.n, rec.pairs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::Endpoint::{Bottom as B, Top as T};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m(n: usize, pairs: &[(Endpoint, Endpoint)]) -> Matching {
        Matching::new(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn generator_shapes() {
        assert_eq!(Matching::identity(2), m(2, &[(T(1), B(1)), (T(2), B(2))]));
        assert_eq!(Matching::identity(1), m(1, &[(T(1), B(1))]));
        assert_eq!(Matching::e(1, 2).unwrap(), m(2, &[(T(1), T(2)), (B(1), B(2))]));
        assert_eq!(Matching::e(2, 3).unwrap(), m(3, &[(T(1), B(1)), (T(2), T(3)), (B(2), B(3))]));
        assert_eq!(Matching::v(1, 2).unwrap(), m(2, &[(T(1), B(2)), (T(2), B(1))]));
    }

    #[test]
    fn generator_index_errors() {
        assert_eq!(Matching::e(0, 3), Err(Error::IndexOutOfRange { index: 0, n: 3 }));
        assert_eq!(Matching::v(3, 3), Err(Error::IndexOutOfRange { index: 3, n: 3 }));
        assert!(Matching::e(1, 1).is_err());
    }

    #[test]
    fn rejects_non_matchings() {
        assert!(Matching::new(2, [(T(1), B(1))]).is_err());
        assert!(Matching::new(2, [(T(1), B(1)), (T(1), B(2))]).is_err());
        assert!(Matching::new(2, [(T(1), T(1)), (T(2), B(2))]).is_err());
        assert!(Matching::new(2, [(T(1), B(3)), (T(2), B(2))]).is_err());
        assert_eq!(Matching::new(0, []), Err(Error::ZeroStrands));
    }

    #[test]
    fn canonical_regardless_of_input_order() {
        let a = m(2, &[(B(2), B(1)), (T(2), T(1))]);
        assert_eq!(a, Matching::e(1, 2).unwrap());
        assert_eq!(a.pairs(), vec![(T(1), T(2)), (B(1), B(2))]);
    }

    #[test]
    fn e_squares_with_one_loop() {
        let e = Matching::e(1, 2).unwrap();
        assert_eq!(e.compose(&e).unwrap(), (e.clone(), 1));
    }

    #[test]
    fn v_is_an_involution() {
        let v = Matching::v(1, 2).unwrap();
        assert_eq!(v.compose(&v).unwrap(), (Matching::identity(2), 0));
    }

    #[test]
    fn e1_e2_e1_is_e1() {
        let e1 = Matching::e(1, 3).unwrap();
        let e2 = Matching::e(2, 3).unwrap();
        let (e2e1, l1) = e2.compose(&e1).unwrap();
        let (res, l2) = e1.compose(&e2e1).unwrap();
        assert_eq!((res, l1 + l2), (e1, 0));
    }

    #[test]
    fn v_absorbs_into_e() {
        let v = Matching::v(1, 2).unwrap();
        let e = Matching::e(1, 2).unwrap();
        assert_eq!(v.compose(&e).unwrap(), (e.clone(), 0));
        assert_eq!(e.compose(&v).unwrap(), (e, 0));
    }

    #[test]
    fn v_braid_relation() {
        let v1 = Matching::v(1, 3).unwrap();
        let v2 = Matching::v(2, 3).unwrap();
        let lhs = v1.compose(&v2).unwrap().0.compose(&v1).unwrap().0;
        let rhs = v2.compose(&v1).unwrap().0.compose(&v2).unwrap().0;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = Matching::random(3, &mut rng);
            let id = Matching::identity(3);
            assert_eq!(id.compose(&x).unwrap(), (x.clone(), 0));
            assert_eq!(x.compose(&id).unwrap(), (x.clone(), 0));
        }
    }

    #[test]
    fn strand_mismatch() {
        let err = Matching::identity(2).compose(&Matching::identity(3)).unwrap_err();
        assert_eq!(err, Error::StrandMismatch { left: 2, right: 3 });
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Matching::all(1).len(), 1);
        assert_eq!(Matching::all(2).len(), 3);
        assert_eq!(Matching::all(3).len(), 15);
        assert_eq!(Matching::all(4).len(), 105);
    }

    #[test]
    fn closure_loops_by_hand() {
        assert_eq!(Matching::identity(3).closure_loops(), 3);
        assert_eq!(Matching::e(1, 2).unwrap().closure_loops(), 1);
        assert_eq!(Matching::v(1, 2).unwrap().closure_loops(), 1);
        assert_eq!(Matching::e(1, 3).unwrap().closure_loops(), 2);
    }

    #[test]
    fn endpoint_labels_round_trip() {
        for e in [T(1), B(12)] {
            assert_eq!(e.to_string().parse::<Endpoint>().unwrap(), e);
        }
        assert!("X1".parse::<Endpoint>().is_err());
        assert!("T".parse::<Endpoint>().is_err());
    }

    #[test]
    fn json_wire_form() {
        let e = Matching::e(1, 2).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"n":2,"pairs":[["T1","T2"],["B1","B2"]]}"#);
        assert_eq!(serde_json::from_str::<Matching>(&json).unwrap(), e);
    }
}
