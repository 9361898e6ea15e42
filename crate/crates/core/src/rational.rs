//! Exact rationals shared by the field modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Renders `c` in the text grammar: `3`, `-1/2`.
pub fn fmt_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Appends `coef*body` to a sum being rendered, folding signs and unit coefficients.
///
/// `body` is empty for a constant term.
pub(crate) fn push_term(out: &mut String, coef: &Q, body: &str) {
    let neg = coef.is_negative();
    let abs = coef.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if body.is_empty() {
        out.push_str(&fmt_q(&abs));
    } else if abs.is_one() {
        out.push_str(body);
    } else {
        out.push_str(&fmt_q(&abs));
        out.push('*');
        out.push_str(body);
    }
}

