//! Summand tokens tracked by the reduction engine: coloured S(m,n) knots
//! and coloured (p,2)-torus knots.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariant::cu_raw;
use crate::modp::{self, reduce_mod_p};
use crate::seifert::{torus_2p, Handedness};
use crate::IntMatrix;

/// A coloured genus-1 summand S(m,n) with characteristic vector (v0, v1).
/// Both components are nonzero: the kernel condition forces them to vanish
/// together, and trivially coloured summands are deleted upstream.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SmnToken {
    pub p: u64,
    pub m: i64,
    pub n: i64,
    pub v: (u64, u64),
}

impl SmnToken {
    pub fn new(p: u64, m: i64, n: i64, v: (u64, u64)) -> Result<Self> {
        modp::require_odd_prime(p)?;
        if v.0 == 0 || v.1 == 0 || v.0 >= p || v.1 >= p {
            return Err(Error::Validation(format!(
                "S(m,n) colouring ({},{}) must have both components in 1..{p}",
                v.0, v.1
            )));
        }
        let row0 = reduce_mod_p(2 * m, p) * v.0 + v.1;
        let row1 = v.0 + reduce_mod_p(2 * n, p) * v.1;
        if row0 % p != 0 || row1 % p != 0 {
            return Err(Error::Validation(format!(
                "({},{}) is not a characteristic vector of S({m},{n}) mod {p}",
                v.0, v.1
            )));
        }
        Ok(Self { p, m, n, v })
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&[vec![self.m, 1], vec![0, self.n]]).expect("2x2")
    }

    pub fn cu(&self) -> u64 {
        cu_raw(&self.matrix(), &[self.v.0 as i64, self.v.1 as i64], self.p)
            .expect("validated token")
    }
}

impl fmt::Display for SmnToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})v({},{})", self.m, self.n, self.v.0, self.v.1)
    }
}

/// A coloured (p,2)-torus summand. `orbit` labels the colouring up to
/// negation: orbit k means v = k * v_ref with k normalized into
/// 0..=(p-1)/2; orbit 0 is the trivial colouring.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct TorusToken {
    pub handedness: Handedness,
    pub orbit: u64,
}

impl Handedness {
    fn order(self) -> u8 {
        match self {
            Handedness::Left => 0,
            Handedness::Right => 1,
        }
    }
}

impl PartialOrd for Handedness {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Handedness {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order().cmp(&other.order())
    }
}

impl TorusToken {
    pub fn new(p: u64, handedness: Handedness, orbit: u64) -> Result<Self> {
        modp::require_odd_prime(p)?;
        if orbit > (p - 1) / 2 {
            return Err(Error::Validation(format!(
                "orbit label {orbit} out of range 0..={}",
                (p - 1) / 2
            )));
        }
        Ok(Self { handedness, orbit })
    }

    /// Normalize a scaling factor to an orbit label: k and p-k name the
    /// same orbit.
    pub fn normalize_orbit(p: u64, k: u64) -> u64 {
        let k = k % p;
        k.min(p - k)
    }

    pub fn mirrored(self) -> Self {
        Self {
            handedness: self.handedness.flipped(),
            orbit: self.orbit,
        }
    }

    /// cu of this summand, computed from the torus matrix and the scaled
    /// reference vector.
    pub fn cu(&self, p: u64) -> u64 {
        if self.orbit == 0 {
            return 0;
        }
        let left = torus_2p(p, Handedness::Left).expect("p validated upstream");
        let basis = modp::kernel_mod_p(&left.symmetrized(), p).expect("torus kernel");
        let v = basis[0].scaled(self.orbit);
        let matrix = match self.handedness {
            Handedness::Left => left.matrix().clone(),
            Handedness::Right => left
                .matrix()
                .transpose()
                .checked_neg()
                .expect("small entries"),
        };
        cu_raw(&matrix, &v.lift(), p).expect("torus token cu")
    }

    /// How many reference summands this token converts to. The conversion
    /// constants for p = 5 are 1, 4, 9, 11 for left orbit-1, left orbit-2,
    /// right orbit-1, right orbit-2; for p = 3 they are 1 and 2.
    pub fn reference_count(&self, p: u64) -> u64 {
        if self.orbit == 0 {
            return 0;
        }
        match (p, self.handedness, self.orbit) {
            (3, Handedness::Left, 1) => 1,
            (3, Handedness::Right, 1) => 2,
            (5, Handedness::Left, 1) => 1,
            (5, Handedness::Left, 2) => 4,
            (5, Handedness::Right, 1) => 9,
            (5, Handedness::Right, 2) => 11,
            // general form: the class with cu equal to this token's cu
            _ => (p - self.cu(p)) % p,
        }
    }
}

impl fmt::Display for TorusToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.handedness {
            Handedness::Left => "L",
            Handedness::Right => "R",
        };
        write!(f, "T{h}{}", self.orbit)
    }
}

/// A multiset of torus summands with multiplicities.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SummandMultiset {
    p: u64,
    counts: BTreeMap<TorusToken, u64>,
}

impl SummandMultiset {
    pub fn new(p: u64) -> Result<Self> {
        modp::require_odd_prime(p)?;
        Ok(Self {
            p,
            counts: BTreeMap::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn insert(&mut self, token: TorusToken, count: u64) {
        if count > 0 {
            *self.counts.entry(token).or_insert(0) += count;
        }
    }

    pub fn remove(&mut self, token: TorusToken, count: u64) -> Result<()> {
        let have = self.counts.get(&token).copied().unwrap_or(0);
        if have < count {
            return Err(Error::Validation(format!(
                "multiset holds {have} of {token}, cannot remove {count}"
            )));
        }
        if have == count {
            self.counts.remove(&token);
        } else {
            *self.counts.get_mut(&token).unwrap() -= count;
        }
        Ok(())
    }

    pub fn counts(&self) -> &BTreeMap<TorusToken, u64> {
        &self.counts
    }

    pub fn count(&self, token: TorusToken) -> u64 {
        self.counts.get(&token).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Total token count, trivial colourings included.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        let mut out = self.clone();
        for (&t, &c) in &other.counts {
            out.insert(t, c);
        }
        Ok(out)
    }

    /// Sum of member cu values mod p.
    pub fn cu(&self) -> u64 {
        let mut acc = 0u64;
        for (t, &c) in &self.counts {
            acc = (acc + t.cu(self.p) * (c % self.p)) % self.p;
        }
        acc
    }

    /// Total reference-summand count before modular reduction.
    pub fn reference_total(&self) -> u128 {
        self.counts
            .iter()
            .map(|(t, &c)| t.reference_count(self.p) as u128 * c as u128)
            .sum()
    }

    /// True iff some member carries a nontrivial colouring.
    pub fn has_nontrivial(&self) -> bool {
        self.counts.keys().any(|t| t.orbit != 0)
    }
}

impl fmt::Display for SummandMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, (t, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}:{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smn_token_validation() {
        assert!(SmnToken::new(3, 1, 1, (1, 1)).is_ok());
        assert!(SmnToken::new(3, 1, 1, (1, 2)).is_err());
        assert!(SmnToken::new(3, 1, 1, (0, 1)).is_err());
        assert!(SmnToken::new(5, -1, 1, (1, 2)).is_ok());
    }

    #[test]
    fn smn_token_cu() {
        assert_eq!(SmnToken::new(3, 1, 1, (1, 1)).unwrap().cu(), 2);
        assert_eq!(SmnToken::new(5, -1, 1, (1, 2)).unwrap().cu(), 2);
        assert_eq!(SmnToken::new(3, 4, 1, (1, 1)).unwrap().cu(), 1);
    }

    #[test]
    fn torus_token_cu_values() {
        let l1 = TorusToken::new(3, Handedness::Left, 1).unwrap();
        let r1 = TorusToken::new(3, Handedness::Right, 1).unwrap();
        assert_eq!(l1.cu(3), 2);
        assert_eq!(r1.cu(3), 1);
        let cases5 = [
            (Handedness::Left, 1, 4u64),
            (Handedness::Left, 2, 1),
            (Handedness::Right, 1, 1),
            (Handedness::Right, 2, 4),
        ];
        for (h, o, expect) in cases5 {
            let t = TorusToken::new(5, h, o).unwrap();
            assert_eq!(t.cu(5), expect, "{t}");
        }
    }

    #[test]
    fn reference_counts_are_cu_consistent() {
        // converting to k reference copies must preserve cu: cu(ref) = -1
        for p in [3u64, 5] {
            for h in [Handedness::Left, Handedness::Right] {
                for orbit in 1..=(p - 1) / 2 {
                    let t = TorusToken::new(p, h, orbit).unwrap();
                    let k = t.reference_count(p);
                    assert_eq!((k * (p - 1)) % p, t.cu(p), "{t} mod {p}");
                }
            }
        }
    }

    #[test]
    fn multiset_accounting() {
        let mut ms = SummandMultiset::new(5).unwrap();
        let l1 = TorusToken::new(5, Handedness::Left, 1).unwrap();
        let l2 = TorusToken::new(5, Handedness::Left, 2).unwrap();
        ms.insert(l1, 4);
        ms.insert(l2, 1);
        assert_eq!(ms.total(), 5);
        assert_eq!(ms.cu(), (4 * 4 + 1) % 5);
        assert_eq!(ms.reference_total(), 4 + 4);
        ms.remove(l2, 1).unwrap();
        assert!(ms.remove(l2, 1).is_err());
    }
}
