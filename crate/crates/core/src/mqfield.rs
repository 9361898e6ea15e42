//! Exact arithmetic in the multiquadratic tower `K = Q(√p₁,…,√pₙ)`.
//!
//! An element is stored as a sparse map from radical sets `S ⊆ {1..n}` to
//! rational coefficients, standing for `Σ c_S · ∏_{i∈S} √p_i`. Zero
//! coefficients are never stored, so structural equality is field equality.
//!
//! The automorphisms `f_i` negate `√p_i` and fix every other generator.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{push_term, Q};
use crate::{Error, Result};

/// Largest number of primes a basis may hold (radical sets are bitmasks).
pub const MAX_PRIMES: usize = 64;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Strictly increasing list of distinct primes `p₁ < … < pₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

impl PrimeBasis {
    pub fn new(primes: Vec<u64>) -> Result<Arc<Self>> {
        if primes.len() > MAX_PRIMES {
            return Err(Error::InvalidPrimeBasis(format!(
                "at most {MAX_PRIMES} primes are supported, got {}",
                primes.len()
            )));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidPrimeBasis(format!("{p} is not prime")));
        }
        if let Some(w) = primes.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPrimeBasis(format!(
                "primes must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(Arc::new(Self { primes }))
    }

    /// The first `n` primes `2, 3, 5, …`.
    pub fn first(n: usize) -> Result<Arc<Self>> {
        let mut primes = Vec::with_capacity(n);
        let mut c = 2u64;
        while primes.len() < n {
            if is_prime(c) {
                primes.push(c);
            }
            c += 1;
        }
        Self::new(primes)
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `p_i` for a 1-based index.
    pub fn prime(&self, i: usize) -> Result<u64> {
        self.check_index(i)?;
        Ok(self.primes[i - 1])
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.primes.len() {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.primes.len(),
            })
        } else {
            Ok(())
        }
    }
}

/// A set of radical indices, bit `i-1` standing for `√p_i`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadicalSet(u64);

impl RadicalSet {
    pub const EMPTY: RadicalSet = RadicalSet(0);

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_PRIMES).contains(&i));
        RadicalSet(1 << (i - 1))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter()
            .fold(Self::EMPTY, |acc, i| acc.symmetric_difference(Self::singleton(i)))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_PRIMES).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Largest index in the set, 0 when empty.
    pub fn max_index(self) -> usize {
        (u64::BITS - self.0.leading_zeros()) as usize
    }

    pub fn intersection(self, other: Self) -> Self {
        RadicalSet(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        RadicalSet(self.0 ^ other.0)
    }

    pub fn without(self, i: usize) -> Self {
        RadicalSet(self.0 & !(1 << (i - 1)))
    }

    /// Indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=MAX_PRIMES).filter(move |i| bits & (1 << (i - 1)) != 0)
    }
}

/// An element of `Q(√p₁,…,√pₙ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MQElem {
    basis: Arc<PrimeBasis>,
    coeffs: BTreeMap<RadicalSet, Q>,
}

impl MQElem {
    pub fn zero(basis: &Arc<PrimeBasis>) -> Self {
        Self {
            basis: basis.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(basis: &Arc<PrimeBasis>) -> Self {
        Self::rational(basis, Q::one())
    }

    pub fn rational(basis: &Arc<PrimeBasis>, q: Q) -> Self {
        let mut e = Self::zero(basis);
        e.accumulate(RadicalSet::EMPTY, q);
        e
    }

    pub fn integer(basis: &Arc<PrimeBasis>, n: i64) -> Self {
        Self::rational(basis, Q::from_integer(BigInt::from(n)))
    }

    /// `√p_i`.
    pub fn radical(basis: &Arc<PrimeBasis>, i: usize) -> Result<Self> {
        basis.check_index(i)?;
        let mut e = Self::zero(basis);
        e.coeffs.insert(RadicalSet::singleton(i), Q::one());
        Ok(e)
    }

    /// Builds `Σ c · ∏_{i∈S} √p_i` from `(S, c)` pairs; repeated sets are summed.
    ///
    /// Each `S` is a set: listing an index twice is rejected rather than squared.
    pub fn from_components<I>(basis: &Arc<PrimeBasis>, parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Q)>,
    {
        let mut e = Self::zero(basis);
        for (idx, c) in parts {
            let mut set = RadicalSet::EMPTY;
            for i in idx {
                basis.check_index(i)?;
                if set.contains(i) {
                    return Err(Error::MalformedQuery(format!(
                        "radical index {i} repeated in one component"
                    )));
                }
                set = set.symmetric_difference(RadicalSet::singleton(i));
            }
            e.accumulate(set, c);
        }
        Ok(e)
    }

    pub fn basis(&self) -> &Arc<PrimeBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&RadicalSet::EMPTY)
                .is_some_and(|c| c.is_one())
    }

    /// Only the rational component is present (or the element is zero).
    pub fn is_rational(&self) -> bool {
        self.coeffs.keys().all(|s| s.is_empty())
    }

    pub fn rational_part(&self) -> Q {
        self.coeffs
            .get(&RadicalSet::EMPTY)
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, set: RadicalSet) -> Q {
        self.coeffs.get(&set).cloned().unwrap_or_else(Q::zero)
    }

    /// Nonzero components in canonical order.
    pub fn components(&self) -> impl Iterator<Item = (RadicalSet, &Q)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn num_components(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest radical index with a nonzero component, 0 for rationals.
    pub fn max_index(&self) -> usize {
        self.coeffs.keys().map(|s| s.max_index()).max().unwrap_or(0)
    }

    fn accumulate(&mut self, set: RadicalSet, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(set) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
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
        for (s, c) in &other.coeffs {
            out.accumulate(*s, c.clone());
        }
        Ok(out)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::zero(&self.basis);
        }
        Self {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, c * q)).collect(),
        }
    }

    /// Product of radical monomials: `√S · √T = (∏_{i∈S∩T} p_i) · √(S △ T)`.
    fn radical_product(&self, s: RadicalSet, t: RadicalSet) -> (Q, RadicalSet) {
        let mut factor = BigInt::one();
        for i in s.intersection(t).indices() {
            factor *= self.basis.primes[i - 1];
        }
        (Q::from_integer(factor), s.symmetric_difference(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut out = Self::zero(&self.basis);
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                let (f, u) = self.radical_product(*s, *t);
                out.accumulate(u, a * b * f);
            }
        }
        Ok(out)
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same basis")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.basis);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same basis");
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by recursive conjugation down the tower.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.inv_below(self.max_index())
    }

    /// Inverse of an element whose radicals all have index `<= level`.
    fn inv_below(&self, level: usize) -> Result<Self> {
        if level == 0 {
            let c = self.rational_part();
            if c.is_zero() {
                return Err(Error::Internal("vanishing norm in inverse".into()));
            }
            return Ok(Self::rational(&self.basis, c.recip()));
        }
        // self = u + v·√p_level with u, v free of √p_level
        let mut u = Self::zero(&self.basis);
        let mut v = Self::zero(&self.basis);
        for (s, c) in &self.coeffs {
            if s.contains(level) {
                v.accumulate(s.without(level), c.clone());
            } else {
                u.accumulate(*s, c.clone());
            }
        }
        if v.is_zero() {
            return u.inv_below(level - 1);
        }
        let p = Q::from_integer(BigInt::from(self.basis.primes[level - 1]));
        let norm = u.square().sub(&v.square().scale(&p))?;
        if norm.is_zero() {
            return Err(Error::Internal(format!(
                "norm vanished at level {level} for a nonzero element"
            )));
        }
        let norm_inv = norm.inv_below(level - 1)?;
        let root = Self::radical(&self.basis, level)?;
        let conj = u.sub(&v.mul(&root)?)?;
        conj.mul(&norm_inv)
    }

    /// `f_i`: negates the components containing `√p_i`.
    pub fn apply_f(&self, i: usize) -> Result<Self> {
        self.basis.check_index(i)?;
        Ok(self.negate_where(|s| s.contains(i)))
    }

    /// Negates exactly the components selected by `pred`.
    pub(crate) fn negate_where(&self, pred: impl Fn(RadicalSet) -> bool) -> Self {
        Self {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, c)| (*s, if pred(*s) { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// `f_i(a) = a` for every `i` in the basis.
    ///
    /// Computed by applying each automorphism; agrees with [`MQElem::is_rational`].
    pub fn is_fixed_by_all(&self) -> bool {
        (1..=self.basis.len()).all(|i| self.apply_f(i).map(|b| b == *self).unwrap_or(false))
    }
}

impl fmt::Display for MQElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (s, c) in &self.coeffs {
            let body = s
                .indices()
                .map(|i| format!("s{i}"))
                .collect::<Vec<_>>()
                .join("*");
            push_term(&mut out, c, &body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MQElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MQElem({self})")
    }
}
