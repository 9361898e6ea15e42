//! Exact arithmetic in `Q(ζ_m)` for `m = p^{2t}`.
//!
//! Elements are coefficient vectors of length `φ(m)` in the power basis
//! `1, ζ, …, ζ^{φ(m)-1}`, reduced modulo the prime-power cyclotomic polynomial
//! `Φ_{p^{2t}}(X) = Σ_{j<p} X^{j·p^{2t-1}}`. Level `t = 0` is the degenerate
//! field `Q` with `ζ = 1` and modulus `X - 1`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::mqfield::is_prime;
use crate::rational::{push_term, q_int, Q};
use crate::{Error, Result};

/// Largest supported `m`.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycField {
    p: u64,
    t: u32,
    m: u64,
    degree: usize,
    /// Sparse monic modulus as `(exponent, coefficient)`, leading term last.
    modulus: Vec<(usize, i64)>,
}

impl CycField {
    pub fn new(p: u64, t: u32) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        let m = p
            .checked_pow(2 * t)
            .filter(|&m| m <= MAX_ORDER)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("p^(2t) = {p}^{} exceeds {MAX_ORDER}", 2 * t))
            })?;
        let (degree, modulus) = if t == 0 {
            (1, vec![(0, -1), (1, 1)])
        } else {
            let h = (m / p) as usize;
            (h * (p as usize - 1), (0..p as usize).map(|j| (j * h, 1)).collect())
        };
        Ok(Arc::new(Self {
            p,
            t,
            m,
            degree,
            modulus,
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// The root-of-unity order `m = p^{2t}`.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// `φ(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dense coefficients of the modulus, constant term first.
    pub fn modulus_coeffs(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.degree + 1];
        for &(e, c) in &self.modulus {
            v[e] += c;
        }
        v
    }

    /// Reduces a dense polynomial in `ζ` modulo the cyclotomic modulus.
    fn reduce(&self, v: Vec<Q>) -> Vec<Q> {
        tower::reduce(v, self.p, 2 * self.t)
    }
}

/// An element of `Q(ζ_m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElem {
    field: Arc<CycField>,
    coeffs: Vec<Q>,
}

/// Multiplicative order of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootOrder {
    Finite(u64),
    NotRootOfUnity,
}

impl CycElem {
    /// Builds `Σ c_k ζ^k` from any number of coefficients, reducing as needed.
    pub fn from_coeffs(field: &Arc<CycField>, coeffs: Vec<Q>) -> Self {
        Self {
            field: field.clone(),
            coeffs: field.reduce(coeffs),
        }
    }

    pub fn zero(field: &Arc<CycField>) -> Self {
        Self::from_coeffs(field, Vec::new())
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::rational(field, Q::one())
    }

    pub fn rational(field: &Arc<CycField>, q: Q) -> Self {
        Self::from_coeffs(field, vec![q])
    }

    pub fn integer(field: &Arc<CycField>, n: i64) -> Self {
        Self::rational(field, q_int(n))
    }

    /// The generator `ζ`.
    pub fn zeta(field: &Arc<CycField>) -> Self {
        Self::zeta_pow(field, 1)
    }

    /// `ζ^e` for any integer `e`, using `ζ^m = 1`.
    pub fn zeta_pow(field: &Arc<CycField>, e: i64) -> Self {
        let k = e.rem_euclid(field.m as i64) as usize;
        let mut v = vec![Q::zero(); k + 1];
        v[k] = Q::one();
        Self::from_coeffs(field, v)
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, q: &Q) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let (a, da) = tower::integral(&self.coeffs);
        let (b, db) = tower::integral(&other.coeffs);
        let den = da * db;
        let coeffs = tower::mul(&a, &b, self.field.p, 2 * self.field.t)
            .into_iter()
            .map(|c| Q::new(c, den.clone()))
            .collect();
        Ok(Self {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Inverse by descending the tower `Q(ζ_{p^k}) ⊃ Q(ζ_{p^{k-1}}) ⊃ … ⊃ Q(ζ_p)`
    /// with relative norms, solving a small linear system at the bottom.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let x = tower::inv(&self.coeffs, self.field.p, 2 * self.field.t)
            .ok_or_else(|| Error::Internal("element is not invertible".into()))?;
        Ok(Self::from_coeffs(&self.field, x))
    }

    /// Least `k ≤ m` with `a^k = 1`.
    pub fn order(&self) -> Result<RootOrder> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut acc = self.clone();
        for k in 1..=self.field.m {
            if acc.is_one() {
                return Ok(RootOrder::Finite(k));
            }
            acc = acc.mul(self)?;
        }
        Ok(RootOrder::NotRootOfUnity)
    }

    /// Image under `ζ_src ↦ ζ_dst^{m_dst/m_src}`, the embedding that sends
    /// the level-`t` root to the `p^{2(t'-t)}`-th power of the level-`t'` root.
    pub fn embed_into(&self, dst: &Arc<CycField>) -> Result<Self> {
        let src = &self.field;
        if src.m != 1 && src.p != dst.p {
            return Err(Error::Incompatible(format!(
                "Q(zeta_{}) does not embed in Q(zeta_{})",
                src.m, dst.m
            )));
        }
        if !dst.m.is_multiple_of(src.m) {
            return Err(Error::Incompatible(format!(
                "{} does not divide {}",
                src.m, dst.m
            )));
        }
        let ratio = (dst.m / src.m) as i64;
        let mut out = Self::zero(dst);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&Self::zeta_pow(dst, k as i64 * ratio).scale(c))?;
            }
        }
        Ok(out)
    }

    /// Evaluates the polynomial with integer coefficients `poly` (constant first) at `self`.
    pub fn eval_int_poly(&self, poly: &[i64]) -> Self {
        let mut acc = Self::zero(&self.field);
        for &c in poly.iter().rev() {
            acc = acc
                .mul(self)
                .expect("same field")
                .add(&Self::integer(&self.field, c))
                .expect("same field");
        }
        acc
    }
}

/// Checks `r_t = r_{t+1}^{p²}`: in level `t+1`, `ζ^{p²}` has order `p^{2t}`
/// and is a root of the level-`t` cyclotomic modulus.
pub fn tower_check(p: u64, t: u32) -> Result<bool> {
    let lower = CycField::new(p, t)?;
    let upper = CycField::new(p, t + 1)?;
    let w = CycElem::zeta_pow(&upper, (p * p) as i64);
    let order_ok = w.order()? == RootOrder::Finite(lower.m());
    let root_ok = w.eval_int_poly(&lower.modulus_coeffs()).is_zero();
    Ok(order_ok && root_ok)
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            push_term(&mut out, c, &body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycElem[m={}]({self})", self.field.m)
    }
}

/// Power-basis vectors modulo `Φ_{p^k}(X) = Σ_{j<p} X^{j·p^{k-1}}` for any `k`,
/// including the odd levels that sit between the fields exposed above.
mod tower {
    use std::ops::SubAssign;

    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};

    use super::linalg;
    use crate::rational::Q;

    /// `(degree, h)` with `h = p^{k-1}`; level `k = 0` is `Q` with modulus `X - 1`.
    fn shape(p: u64, k: u32) -> (usize, usize) {
        if k == 0 {
            (1, 0)
        } else {
            let h = p.pow(k - 1) as usize;
            ((p as usize - 1) * h, h)
        }
    }

    pub fn reduce<T>(mut v: Vec<T>, p: u64, k: u32) -> Vec<T>
    where
        T: Zero + Clone + for<'a> SubAssign<&'a T>,
    {
        if k == 0 {
            return vec![v.into_iter().fold(T::zero(), |acc, c| acc + c)];
        }
        let (d, h) = shape(p, k);
        while v.len() > d {
            let top = v.len() - 1;
            let c = v.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let shift = top - d;
            for j in 0..p as usize - 1 {
                v[shift + j * h] -= &c;
            }
        }
        v.resize(d, T::zero());
        v
    }

    /// `(A, L)` with `a = A / L` and `A` integral.
    pub fn integral(a: &[Q]) -> (Vec<BigInt>, BigInt) {
        let lcm = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled = a.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        (scaled, lcm)
    }

    pub fn mul(a: &[BigInt], b: &[BigInt], p: u64, k: u32) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); (a.len() + b.len()).saturating_sub(1)];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        reduce(v, p, k)
    }

    /// Inverse of `a`, or `None` when `a` is zero.
    pub fn inv(a: &[Q], p: u64, k: u32) -> Option<Vec<Q>> {
        let (scaled, lcm) = integral(a);
        let (num, den) = inv_int(&scaled, p, k)?;
        Some(
            num.into_iter()
                .map(|c| Q::new(c * &lcm, den.clone()))
                .collect(),
        )
    }

    /// `a⁻¹ = num / den` for an integral `a`.
    fn inv_int(a: &[BigInt], p: u64, k: u32) -> Option<(Vec<BigInt>, BigInt)> {
        match k {
            0 => (!a[0].is_zero()).then(|| (vec![BigInt::one()], a[0].clone())),
            1 => by_elimination(a, p),
            _ => {
                // σ_j(ζ) = ζ^{1 + j·m/p} fixes ζ^p, so a·∏σ_j(a) lies in Q(ζ^p)
                let m = p.pow(k) as usize;
                let step = m / p as usize;
                let mut prod = vec![BigInt::one()];
                for j in 1..p as usize {
                    let mut conj = vec![BigInt::zero(); m];
                    for (i, c) in a.iter().enumerate() {
                        if !c.is_zero() {
                            conj[(i + i * j * step) % m] += c;
                        }
                    }
                    prod = mul(&prod, &reduce(conj, p, k), p, k);
                }
                let norm = mul(a, &prod, p, k);
                let sub: Vec<BigInt> = norm.iter().step_by(p as usize).cloned().collect();
                let (sub_num, den) = inv_int(&sub, p, k - 1)?;
                let mut lifted = vec![BigInt::zero(); (sub_num.len() - 1) * p as usize + 1];
                for (i, c) in sub_num.into_iter().enumerate() {
                    lifted[i * p as usize] = c;
                }
                Some((mul(&prod, &lifted, p, k), den))
            }
        }
    }

    /// Solves `a·x = 1` in `Q(ζ_p)` with fraction-free elimination.
    fn by_elimination(a: &[BigInt], p: u64) -> Option<(Vec<BigInt>, BigInt)> {
        let d = p as usize - 1;
        // column j holds the coordinates of a·ζ^j
        let mut col = a.to_vec();
        let mut rows = vec![vec![BigInt::zero(); d + 1]; d];
        for j in 0..d {
            for (row, c) in rows.iter_mut().zip(&col) {
                row[j] = c.clone();
            }
            let top = col.pop().expect("degree is positive");
            col.insert(0, BigInt::zero());
            for c in col.iter_mut() {
                *c -= &top;
            }
        }
        rows[0][d] = BigInt::one();
        let x = linalg::solve_augmented(rows)?;
        let den = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = x.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Some((num, den))
    }
}

mod linalg {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    use crate::rational::Q;

    /// Solves a square system given as rows `[A | b]` by Bareiss elimination.
    /// Returns `None` when `A` is singular.
    pub fn solve_augmented(mut m: Vec<Vec<BigInt>>) -> Option<Vec<Q>> {
        let n = m.len();
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
            m.swap(k, pivot);
            let (head, tail) = m.split_at_mut(k + 1);
            let pivot_row = &head[k];
            for row in tail.iter_mut() {
                let factor = std::mem::take(&mut row[k]);
                for j in k + 1..=n {
                    row[j] = (&row[j] * &pivot_row[k] - &factor * &pivot_row[j]) / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let mut x = vec![Q::zero(); n];
        for i in (0..n).rev() {
            let mut acc = Q::from_integer(m[i][n].clone());
            for j in i + 1..n {
                acc -= Q::from_integer(m[i][j].clone()) * &x[j];
            }
            x[i] = acc / Q::from_integer(m[i][i].clone());
        }
        Some(x)
    }
}
