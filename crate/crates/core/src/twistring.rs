//! Finitely supported elements of the twisted series ring `D = K((G,Φ))`.
//!
//! Multiplication is the twisted convolution
//! `(Σ a_x x)(Σ b_y y) = Σ_z (Σ_{xy=z} a_x Φ_x(b_y)) z`, so moving a field
//! element rightward past a group element `x` applies `Φ_x` to it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::mqfield::{MQElem, PrimeBasis};
use crate::ordgroup::GroupElem;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedElem {
    basis: Arc<PrimeBasis>,
    terms: BTreeMap<GroupElem, MQElem>,
}

impl TwistedElem {
    pub fn zero(basis: &Arc<PrimeBasis>) -> Self {
        Self {
            basis: basis.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: &Arc<PrimeBasis>) -> Self {
        Self::scalar(MQElem::one(basis))
    }

    /// `a · e`.
    pub fn scalar(a: MQElem) -> Self {
        let basis = a.basis().clone();
        let mut t = Self::zero(&basis);
        t.accumulate(GroupElem::identity(), a);
        t
    }

    /// `a · x`.
    pub fn monomial(a: MQElem, x: GroupElem) -> Result<Self> {
        let basis = a.basis().clone();
        check_group_indices(&x, &basis)?;
        let mut t = Self::zero(&basis);
        t.accumulate(x, a);
        Ok(t)
    }

    /// `1 · x`.
    pub fn group(basis: &Arc<PrimeBasis>, x: GroupElem) -> Result<Self> {
        Self::monomial(MQElem::one(basis), x)
    }

    /// `√p_i` as an element of `D`.
    pub fn radical(basis: &Arc<PrimeBasis>, i: usize) -> Result<Self> {
        Ok(Self::scalar(MQElem::radical(basis, i)?))
    }

    pub fn from_terms<I: IntoIterator<Item = (GroupElem, MQElem)>>(
        basis: &Arc<PrimeBasis>,
        terms: I,
    ) -> Result<Self> {
        let mut t = Self::zero(basis);
        for (x, a) in terms {
            if a.basis() != basis {
                return Err(Error::BasisMismatch);
            }
            check_group_indices(&x, basis)?;
            t.accumulate(x, a);
        }
        Ok(t)
    }

    pub fn basis(&self) -> &Arc<PrimeBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(x, a_x)` pairs in increasing group order.
    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, &MQElem)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElem> {
        self.terms.keys()
    }

    pub fn coeff(&self, x: &GroupElem) -> MQElem {
        self.terms
            .get(x)
            .cloned()
            .unwrap_or_else(|| MQElem::zero(&self.basis))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest generator or radical index used anywhere in the element.
    pub fn max_index(&self) -> usize {
        self.terms
            .iter()
            .map(|(x, a)| x.max_index().max(a.max_index()))
            .max()
            .unwrap_or(0)
    }

    fn accumulate(&mut self, x: GroupElem, a: MQElem) {
        if a.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            Entry::Vacant(v) => {
                v.insert(a);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&a).expect("shared basis");
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (x, a) in &other.terms {
            out.accumulate(x.clone(), a.clone());
        }
        Ok(out)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            terms: self.terms.iter().map(|(x, a)| (x.clone(), a.neg())).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Twisted convolution: `a_x x · b_y y = a_x Φ_x(b_y) · xy`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut out = Self::zero(&self.basis);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let c = a.mul(&x.apply_twist_unchecked(b))?;
                out.accumulate(x.mul(y), c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.basis);
        for _ in 0..e {
            acc = acc.mul(self).expect("shared basis");
        }
        acc
    }

    /// `αβ − βα`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Membership in `Q((H))`: every support element is a square and every
    /// coefficient is rational.
    pub fn is_central_by_characterization(&self) -> bool {
        self.terms
            .iter()
            .all(|(x, a)| x.is_in_h() && a.is_fixed_by_all())
    }

    /// Commutes with `√p_i` and `x_i` for every `i ≤ bound`.
    ///
    /// `bound` must cover every index the element uses and fit in the basis.
    pub fn is_central_by_commutation(&self, bound: usize) -> Result<bool> {
        let needed = self.max_index();
        if bound < needed {
            return Err(Error::BoundTooSmall { bound, needed });
        }
        if bound > self.basis.len() {
            return Err(Error::IndexOutOfRange {
                index: bound,
                len: self.basis.len(),
            });
        }
        for i in 1..=bound {
            let root = Self::radical(&self.basis, i)?;
            if !self.commutator(&root)?.is_zero() {
                return Ok(false);
            }
            let gen = Self::group(&self.basis, GroupElem::generator(i))?;
            if !self.commutator(&gen)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_group_indices(x: &GroupElem, basis: &PrimeBasis) -> Result<()> {
    let m = x.max_index();
    if m > basis.len() {
        Err(Error::IndexOutOfRange {
            index: m,
            len: basis.len(),
        })
    } else {
        Ok(())
    }
}

impl fmt::Display for TwistedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (x, a) in &self.terms {
            let word = x.to_string();
            let piece = if x.is_identity() {
                a.to_string()
            } else if a.is_one() {
                word
            } else if a.num_components() == 1 {
                let s = a.to_string();
                if s == "-1" {
                    format!("-{word}")
                } else {
                    format!("{s}*{word}")
                }
            } else {
                format!("({a})*{word}")
            };
            if out.is_empty() {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for TwistedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TwistedElem({self})")
    }
}
