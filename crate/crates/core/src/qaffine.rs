//! Quantum affine spaces `A = k⟨x₁,…,xₙ⟩ / (x_i x_j − q x_j x_i, i < j)` with
//! `q = r_t` a primitive `p^{2t}`-th root of unity and `k = Q(r_t)`.
//!
//! Sorted monomials `x₁^{e₁}⋯xₙ^{eₙ}` form a basis. Moving a generator `x_j`
//! left past `x_i` with `i < j` costs a factor `q⁻¹`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use crate::cyclo::{CycElem, CycField, RootOrder};
use crate::growth::GrowthSeries;
use crate::rational::fmt_q;
use crate::{Error, Result};

/// Exponent vector of a sorted monomial.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QAlgebra {
    n: usize,
    field: Arc<CycField>,
    q: CycElem,
}

impl QAlgebra {
    /// `A_{nt}` over `Q(ζ_{p^{2t}})` with `q = ζ`.
    pub fn new(n: usize, p: u64, t: u32) -> Result<Arc<Self>> {
        let field = CycField::new(p, t)?;
        Self::with_parameter(n, CycElem::zeta(&field))
    }

    /// Uses an explicit `q`, which must be a primitive `m`-th root of unity.
    pub fn with_parameter(n: usize, q: CycElem) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidParameter("need at least one generator".into()));
        }
        let m = q.field().m();
        if q.order()? != RootOrder::Finite(m) {
            return Err(Error::InvalidParameter(format!(
                "q = {q} is not a primitive {m}-th root of unity"
            )));
        }
        Ok(Arc::new(Self {
            n,
            field: q.field().clone(),
            q,
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn q(&self) -> &CycElem {
        &self.q
    }

    /// `q^k`; `q` has order `m`, so `k` is read modulo `m`.
    pub fn q_pow(&self, k: i64) -> CycElem {
        let m = self.field.m() as i64;
        self.q.pow(k.rem_euclid(m) as u64)
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            })
        } else {
            Ok(())
        }
    }
}

/// A word in the free algebra with a scalar prefactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeWord {
    alg: Arc<QAlgebra>,
    scalar: CycElem,
    letters: Vec<usize>,
}

impl FreeWord {
    pub fn new(alg: &Arc<QAlgebra>, scalar: CycElem, letters: Vec<usize>) -> Result<Self> {
        if scalar.field() != alg.field() {
            return Err(Error::FieldMismatch);
        }
        for &i in &letters {
            alg.check_generator(i)?;
        }
        Ok(Self {
            alg: alg.clone(),
            scalar,
            letters,
        })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn scalar(&self) -> &CycElem {
        &self.scalar
    }

    /// Normal form by adjacent swaps; `choose` picks which descent to swap
    /// from the nonempty list of positions `k` with `letters[k] > letters[k+1]`.
    pub fn normal_form_by(&self, mut choose: impl FnMut(&[usize]) -> usize) -> QPoly {
        let mut w = self.letters.clone();
        let mut swaps = 0i64;
        loop {
            let descents: Vec<usize> = (0..w.len().saturating_sub(1))
                .filter(|&k| w[k] > w[k + 1])
                .collect();
            if descents.is_empty() {
                break;
            }
            let k = descents[choose(&descents) % descents.len()];
            w.swap(k, k + 1);
            swaps += 1;
        }
        let mut exps = vec![0u32; self.alg.n];
        for i in w {
            exps[i - 1] += 1;
        }
        let c = self
            .scalar
            .mul(&self.alg.q_pow(-swaps))
            .expect("same field");
        QPoly::monomial(&self.alg, exps, c)
    }

    /// Normal form by bubble sort (leftmost descent first).
    pub fn normal_form(&self) -> QPoly {
        self.normal_form_by(|_| 0)
    }
}

/// An element of `A` in the sorted-monomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    alg: Arc<QAlgebra>,
    terms: BTreeMap<Monomial, CycElem>,
}

impl QPoly {
    pub fn zero(alg: &Arc<QAlgebra>) -> Self {
        Self {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alg: &Arc<QAlgebra>, c: CycElem) -> Self {
        Self::monomial(alg, vec![0; alg.n], c)
    }

    pub fn one(alg: &Arc<QAlgebra>) -> Self {
        Self::constant(alg, CycElem::one(alg.field()))
    }

    pub fn monomial(alg: &Arc<QAlgebra>, exps: Monomial, c: CycElem) -> Self {
        assert_eq!(exps.len(), alg.n, "exponent vector length");
        let mut out = Self::zero(alg);
        out.accumulate(exps, c);
        out
    }

    pub fn generator(alg: &Arc<QAlgebra>, i: usize) -> Result<Self> {
        Self::generator_pow(alg, i, 1)
    }

    /// `x_i^k`.
    pub fn generator_pow(alg: &Arc<QAlgebra>, i: usize, k: u32) -> Result<Self> {
        alg.check_generator(i)?;
        let mut exps = vec![0; alg.n];
        exps[i - 1] = k;
        Ok(Self::monomial(alg, exps, CycElem::one(alg.field())))
    }

    pub fn algebra(&self) -> &Arc<QAlgebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycElem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> CycElem {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| CycElem::zero(self.alg.field()))
    }

    fn accumulate(&mut self, exps: Monomial, c: CycElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c).expect("same field");
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Self {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CycElem) -> Result<Self> {
        let mut out = Self::zero(&self.alg);
        for (e, a) in &self.terms {
            out.accumulate(e.clone(), a.mul(c)?);
        }
        Ok(out)
    }

    /// Product of sorted monomials `x^a · x^b = q^{-s} x^{a+b}` with
    /// `s = Σ_{i<j} a_j b_i`, the number of swaps bubble sort performs on the
    /// concatenated word.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let n = self.alg.n;
        let mut out = Self::zero(&self.alg);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut swaps = 0i64;
                let mut higher_in_a = 0i64;
                // walk generators from the top so higher_in_a = Σ_{j>i} a_j
                for i in (0..n).rev() {
                    swaps += higher_in_a * b[i] as i64;
                    higher_in_a += a[i] as i64;
                }
                let exps: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let c = ca.mul(cb)?.mul(&self.alg.q_pow(-swaps))?;
                out.accumulate(exps, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same algebra");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same algebra");
            }
        }
        acc
    }

    /// `[f, g] = fg − gf`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }
}

fn monomial_word(exps: &[u32]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{e}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (exps, c) in &self.terms {
            let word = monomial_word(exps);
            let (neg, piece) = match c.as_rational() {
                Some(q) => {
                    let abs = fmt_q(&q.abs());
                    let piece = if word.is_empty() {
                        abs
                    } else if abs == "1" {
                        word
                    } else {
                        format!("{abs}*{word}")
                    };
                    (q.is_negative(), piece)
                }
                None if word.is_empty() => (false, format!("({c})")),
                None => (false, format!("({c})*{word}")),
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&piece);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Number of sorted monomials of length `≤ r` in `n` generators, by enumeration.
pub fn dim_vr(n: usize, r: u32) -> u64 {
    // nondecreasing index sequences of length s <= r
    fn count(n: usize, first: usize, remaining: u32) -> u64 {
        // the empty continuation is itself a monomial
        let mut total = 1;
        if remaining == 0 {
            return total;
        }
        for i in first..n {
            total += count(n, i, remaining - 1);
        }
        total
    }
    count(n, 0, r)
}

/// Whether `x_i^k` commutes with every generator.
pub fn power_is_central(alg: &Arc<QAlgebra>, i: usize, k: u32) -> Result<bool> {
    let xk = QPoly::generator_pow(alg, i, k)?;
    for j in 1..=alg.n() {
        let xj = QPoly::generator(alg, j)?;
        if !xj.commutator(&xk)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `x_i^{p^{2t}}` is central.
pub fn central_power_check(alg: &Arc<QAlgebra>, i: usize) -> Result<bool> {
    let m = u32::try_from(alg.field().m())
        .map_err(|_| Error::InvalidParameter("root order too large".into()))?;
    power_is_central(alg, i, m)
}

/// A defining relation `x_i x_j − q x_j x_i` (`i < j`) whose image is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailedRelation {
    pub i: usize,
    pub j: usize,
    pub residual: QPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub ok: bool,
    /// Relations checked, as `(i, j)` with `i < j`.
    pub checked: Vec<(usize, usize)>,
    pub failures: Vec<FailedRelation>,
}

impl HomReport {
    pub fn first_failure(&self) -> Option<&FailedRelation> {
        self.failures.first()
    }
}

/// Checks whether `x_i ↦ images[i-1]` respects every relation of `src`.
///
/// The source parameter is carried into the destination field by
/// `ζ_src ↦ ζ_dst^{m_dst/m_src}`, so `r_{t-1}` lands on `r_t^{p²}`.
pub fn hom_check(src: &Arc<QAlgebra>, dst: &Arc<QAlgebra>, images: &[QPoly]) -> Result<HomReport> {
    if images.len() != src.n() {
        return Err(Error::Incompatible(format!(
            "{} images given for {} source generators",
            images.len(),
            src.n()
        )));
    }
    if images.iter().any(|img| img.algebra() != dst) {
        return Err(Error::AlgebraMismatch);
    }
    let r_src = src.q().embed_into(dst.field())?;
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    for i in 1..=src.n() {
        for j in i + 1..=src.n() {
            let (a, b) = (&images[i - 1], &images[j - 1]);
            let residual = a.mul(b)?.sub(&b.mul(a)?.scale(&r_src)?)?;
            checked.push((i, j));
            if !residual.is_zero() {
                failures.push(FailedRelation { i, j, residual });
            }
        }
    }
    Ok(HomReport {
        ok: failures.is_empty(),
        checked,
        failures,
    })
}

/// Images `x_i ↦ x_i^k` for `i = 1..=count` in `dst`.
pub fn power_map_images(dst: &Arc<QAlgebra>, count: usize, k: u32) -> Result<Vec<QPoly>> {
    (1..=count).map(|i| QPoly::generator_pow(dst, i, k)).collect()
}

/// `(r, dim V^r)` for `r = 1..=r_max`, with `V` spanned by `1, x₁, …, xₙ`.
pub fn gk_profile(alg: &QAlgebra, r_max: u32) -> Result<GrowthSeries> {
    if r_max < 2 {
        return Err(Error::InvalidParameter("r_max must be at least 2".into()));
    }
    GrowthSeries::from_fn(1..=r_max as u64, |r| dim_vr(alg.n(), r as u32) as u128)
}
