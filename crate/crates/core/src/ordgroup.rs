//! The free abelian group `G = ⊕ℤ` on generators `x₁, x₂, …`, written
//! multiplicatively, with its lexicographic total order, the subgroup of
//! squares `H`, and the twist `Φ: G → Gal(K/Q)` acting by signs on radicals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::mqfield::MQElem;
use crate::{Error, Result};

/// Finitely supported exponent vector; coordinates not stored are zero.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupElem {
    exps: BTreeMap<usize, i64>,
}

impl GroupElem {
    pub fn identity() -> Self {
        Self::default()
    }

    /// The generator `x_i` (1-based).
    pub fn generator(i: usize) -> Self {
        Self::generator_pow(i, 1)
    }

    pub fn generator_pow(i: usize, e: i64) -> Self {
        Self::from_pairs([(i, e)])
    }

    /// Builds `∏ x_i^{e}`; repeated indices add up.
    pub fn from_pairs<I: IntoIterator<Item = (usize, i64)>>(pairs: I) -> Self {
        let mut g = Self::identity();
        for (i, e) in pairs {
            assert!(i >= 1, "generator indices are 1-based");
            g.bump(i, e);
        }
        g
    }

    /// From a dense coordinate vector `(n₁, n₂, …)`.
    pub fn from_coords(coords: &[i64]) -> Self {
        Self::from_pairs(coords.iter().enumerate().map(|(k, &e)| (k + 1, e)))
    }

    fn bump(&mut self, i: usize, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.exps.entry(i).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&i);
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exps.is_empty()
    }

    /// The coordinate `n_i`.
    pub fn exponent(&self, i: usize) -> i64 {
        self.exps.get(&i).copied().unwrap_or(0)
    }

    /// Nonzero coordinates in increasing index order.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn max_index(&self) -> usize {
        self.exps.keys().next_back().copied().unwrap_or(0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, &e) in &other.exps {
            out.bump(i, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self {
            exps: self.exps.iter().map(|(&i, &e)| (i, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        Self {
            exps: if k == 0 {
                BTreeMap::new()
            } else {
                self.exps.iter().map(|(&i, &e)| (i, e * k)).collect()
            },
        }
    }

    /// Membership in `H = {x² : x ∈ G}`: every coordinate is even.
    pub fn is_in_h(&self) -> bool {
        self.exps.values().all(|e| e % 2 == 0)
    }

    /// `(-1)^{n_i}`, the sign by which `Φ_x` acts on `√p_i`.
    pub fn twist_sign(&self, i: usize) -> i8 {
        if self.exponent(i) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `Φ_x(a)`: each radical component picks up `∏_{i∈S} (-1)^{n_i}`.
    pub fn apply_twist(&self, a: &MQElem) -> Result<MQElem> {
        let len = a.basis().len();
        if let Some(i) = self.exps.keys().find(|&&i| i > len) {
            return Err(Error::IndexOutOfRange { index: *i, len });
        }
        Ok(self.apply_twist_unchecked(a))
    }

    pub(crate) fn apply_twist_unchecked(&self, a: &MQElem) -> MQElem {
        let odd: Vec<usize> = self
            .exps
            .iter()
            .filter(|(_, e)| *e % 2 != 0)
            .map(|(&i, _)| i)
            .collect();
        if odd.is_empty() {
            return a.clone();
        }
        a.negate_where(|s| odd.iter().filter(|&&i| s.contains(i)).count() % 2 == 1)
    }
}

impl Ord for GroupElem {
    /// Lexicographic on `(n₁, n₂, …)`: the first differing coordinate decides.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, &ea)), None) => return ea.cmp(&0),
                (None, Some((_, &eb))) => return 0.cmp(&eb),
                (Some((&ia, &ea)), Some((&ib, &eb))) => match ia.cmp(&ib) {
                    // coordinate ia is zero in other
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(i, e)| {
                if *e == 1 {
                    format!("x{i}")
                } else {
                    format!("x{i}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElem({self})")
    }
}
