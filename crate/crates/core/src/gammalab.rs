//! Coefficient functionals of powers of `γ = x₁⁻¹ + x₂⁻¹ + …` and the
//! normal-form growth model for the subalgebra `F[γ, √p₁…√pₙ, x₁…xₙ]`.
//!
//! `γ` has infinite support and is never materialized. Its coefficients are
//! rational, so the twist plays no role in `γᵏ` and the coefficient of
//! `∏ x_j^{-m_j}` is the multinomial `k! / ∏ m_j!` when `Σ m_j = k`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::ordgroup::GroupElem;
use crate::{Error, Result};

/// Largest power the brute-force oracle accepts.
pub const ORACLE_MAX_POWER: u32 = 10;

/// Default cap on tuples the oracle may enumerate.
pub const DEFAULT_MAX_OPS: u64 = 100_000_000;

/// "Coefficient of `target` in `γ^power`", with `target` having no positive coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCoeffQuery {
    power: u32,
    target: GroupElem,
}

impl GammaCoeffQuery {
    pub fn new(power: u32, target: GroupElem) -> Result<Self> {
        if let Some((i, e)) = target.support().find(|&(_, e)| e > 0) {
            return Err(Error::MalformedQuery(format!(
                "target coordinate {i} is {e}; powers of gamma only reach nonpositive exponents"
            )));
        }
        Ok(Self { power, target })
    }

    /// `x₁⁻¹ x₂⁻¹ ⋯ x_n⁻¹` in `γⁿ`, the distinguished witness monomial.
    pub fn witness(power: u32, n: usize) -> Self {
        Self {
            power,
            target: witness_monomial(n),
        }
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn target(&self) -> &GroupElem {
        &self.target
    }
}

/// `X_n = x₁⁻¹ ⋯ x_n⁻¹` (the identity for `n = 0`).
pub fn witness_monomial(n: usize) -> GroupElem {
    GroupElem::from_pairs((1..=n).map(|i| (i, -1)))
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Coefficient of the query target in `γ^power`, via the multinomial formula.
pub fn gamma_coeff(q: &GammaCoeffQuery) -> BigUint {
    let ms: Vec<u64> = q.target.support().map(|(_, e)| (-e) as u64).collect();
    if ms.iter().sum::<u64>() != q.power as u64 {
        return BigUint::zero();
    }
    let denom = ms
        .iter()
        .fold(BigUint::one(), |acc, &m| acc * factorial(m));
    factorial(q.power as u64) / denom
}

/// Coefficient of the query target in `γ^power` by counting ordered index
/// tuples `(j₁,…,j_n)` over `supp(target)` whose product `∏ x_{j_k}⁻¹` is the target.
///
/// Independent of [`gamma_coeff`]; meant for small powers only.
pub fn gamma_coeff_oracle(q: &GammaCoeffQuery, max_ops: u64) -> Result<BigUint> {
    if q.power > ORACLE_MAX_POWER {
        return Err(Error::BudgetExceeded {
            needed: u128::MAX,
            limit: max_ops,
        });
    }
    let support: Vec<usize> = q.target.support().map(|(i, _)| i).collect();
    let n = q.power as usize;
    let needed = (support.len() as u128).pow(q.power);
    if needed > max_ops as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            limit: max_ops,
        });
    }
    if n == 0 {
        return Ok(if q.target.is_identity() {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    if support.is_empty() {
        return Ok(BigUint::zero());
    }
    let wanted: Vec<u32> = q.target.support().map(|(_, e)| (-e) as u32).collect();
    let mut digits = vec![0usize; n];
    let mut hits = vec![0u32; support.len()];
    let mut count = 0u64;
    loop {
        // the tuple's product is ∏ x_{support[d]}⁻¹; compare exponent by exponent
        hits.iter_mut().for_each(|h| *h = 0);
        for &d in &digits {
            hits[d] += 1;
        }
        if hits == wanted {
            count += 1;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(BigUint::from(count));
            }
            digits[pos] += 1;
            if digits[pos] < support.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// The triangular system showing `1, γ, …, γ^d` are independent over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceWitness {
    pub degree: u32,
    /// `matrix[k][n]` is the coefficient of `X_n` in `γᵏ`, for `0 ≤ k, n ≤ d`.
    pub matrix: Vec<Vec<BigUint>>,
    /// `matrix[n][n] = n!` for `n = 1..=d`.
    pub diagonal: Vec<BigUint>,
    /// Back-substitution, from the top power down to the constant term.
    pub trace: Vec<String>,
    pub independent: bool,
}

/// Builds the witness for every relation `a₀ + a₁γ + … + a_dγ^d = 0` with
/// rational `a_k`: the coefficient of `X_n` in the relation is `a_n · n!`.
pub fn gamma_independence_witness(degree: u32) -> Result<IndependenceWitness> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    let d = degree as usize;
    let matrix: Vec<Vec<BigUint>> = (0..=degree)
        .map(|k| {
            (0..=d)
                .map(|n| gamma_coeff(&GammaCoeffQuery::witness(k, n)))
                .collect()
        })
        .collect();
    let diagonal: Vec<BigUint> = (1..=d).map(|n| matrix[n][n].clone()).collect();
    let off_diagonal_zero = (0..=d)
        .all(|k| (0..=d).all(|n| k == n || matrix[k][n].is_zero()));
    let diagonal_nonzero = (0..=d).all(|n| !matrix[n][n].is_zero());

    let mut trace = Vec::with_capacity(d + 1);
    for n in (0..=d).rev() {
        let x = witness_monomial(n);
        let others_vanish = (0..=d).all(|k| k == n || matrix[k][n].is_zero());
        let line = if others_vanish && !matrix[n][n].is_zero() {
            format!(
                "coefficient of {x}: {}*a{n} = 0 => a{n} = 0",
                matrix[n][n]
            )
        } else {
            format!("coefficient of {x}: system not triangular at column {n}")
        };
        trace.push(line);
    }
    Ok(IndependenceWitness {
        degree,
        matrix,
        diagonal,
        trace,
        independent: off_diagonal_zero && diagonal_nonzero,
    })
}

/// Size of the normal-form span `V^r` in the model of `R′ₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalFormCount {
    pub n: u32,
    pub r: u32,
    pub count: u128,
}

/// Counts monomials `γ^a (√p₁)^{ε₁}⋯(√pₙ)^{εₙ} x₁^{μ₁}⋯xₙ^{μₙ}` with binary
/// `ε, μ` and `a + |ε| + |μ| ≤ r` by enumerating every triple.
///
/// Work grows as `4ⁿ · r`; callers bound `n`.
pub fn rn_dim(n: u32, r: u32) -> NormalFormCount {
    let masks = 1u64 << n;
    let mut count = 0u128;
    for eps in 0..masks {
        for mu in 0..masks {
            let w = eps.count_ones() + mu.count_ones();
            for a in 0..=r {
                if a + w <= r {
                    count += 1;
                }
            }
        }
    }
    NormalFormCount { n, r, count }
}

/// `|Bₙ| = 4ⁿ`, the number of products `(√p)^ε x^μ` with binary exponents.
pub fn rn_basis_size(n: u32) -> BigUint {
    BigUint::one() << (2 * n as usize)
}
