//! Binomial polynomials and the closed forms for chains, antichains and
//! two-row grids.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::BivariatePolynomial;
use crate::{Error, Result};

type P = BivariatePolynomial;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

/// `C(n + shift, k) = (n+shift)(n+shift-1)...(n+shift-k+1) / k!` as a
/// polynomial in `n`.
pub fn binom_poly(shift: i64, k: u32) -> BivariatePolynomial {
    let mut acc = P::one();
    for i in 0..k as i64 {
        acc = &acc * &P::n_plus(shift - i);
    }
    acc.scale(&BigRational::new(BigInt::one(), factorial(k)))
}

/// Integer binomial coefficient, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A hypergeometric parameter `constant + n_coeff * n`, affine in the symbol `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Param {
    pub constant: i64,
    pub n_coeff: i64,
}

impl Param {
    pub fn int(constant: i64) -> Self {
        Self {
            constant,
            n_coeff: 0,
        }
    }

    /// `offset - n`.
    pub fn minus_n(offset: i64) -> Self {
        Self {
            constant: offset,
            n_coeff: -1,
        }
    }

    fn poly(self) -> BivariatePolynomial {
        P::n().scale(&rat(self.n_coeff)) + P::integer(self.constant)
    }

    fn shifted(self, by: i64) -> Self {
        Self {
            constant: self.constant + by,
            ..self
        }
    }
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
fn pochhammer(x: Param, k: u32) -> BivariatePolynomial {
    (0..k as i64).fold(P::one(), |acc, i| &acc * &x.shifted(i).poly())
}

/// `2F1[a, b; c; z] = sum_k (a)_k (b)_k / ((c)_k k!) z^k` for a non-positive
/// integer `a`, where the series stops after `k = -a`. `b` may depend on `n`.
pub fn hypergeometric_2f1_terminating(a: i64, b: Param, c: i64) -> Result<BivariatePolynomial> {
    if a > 0 {
        return Err(Error::NonTerminating(a));
    }
    if c <= 0 {
        return Err(Error::InvalidParameter(format!(
            "lower parameter {c} must be a positive integer"
        )));
    }
    let mut sum = P::zero();
    for k in 0..=(-a) as u32 {
        let upper: BigInt = (0..k as i64).map(|i| BigInt::from(a + i)).product();
        let lower: BigInt = (0..k as i64)
            .map(|i| BigInt::from(c + i))
            .product::<BigInt>()
            * factorial(k);
        let coeff = BigRational::new(upper, lower);
        let term = &pochhammer(b, k) * &P::monomial(coeff, 0, k);
        sum += &term;
    }
    Ok(sum)
}

/// `sum_k C(p, k) C(n, k) z^k`, i.e. `2F1[-p, -n; 1; z]`.
pub fn chain_closed_form(p: u32) -> BivariatePolynomial {
    hypergeometric_2f1_terminating(-(p as i64), Param::minus_n(0), 1).expect("terminating")
}

/// `(1 + n z)^p`.
pub fn antichain_closed_form(p: u32) -> BivariatePolynomial {
    (P::one() + P::n() * P::z()).pow(p)
}

/// The 2x2 determinant
///
/// ```text
/// | F(-m,-n;1;z)                 z C(m+1,2) F(1-m,1-n;3;z) |
/// | z C(n+1,2) F(1-m,1-n;3;z)    F(-m,-n;1;z)              |
/// ```
///
/// expanded exactly; it equals the extended polynomial of the `2 x m` grid.
pub fn two_by_m_determinant(m: u32) -> Result<BivariatePolynomial> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let m = m as i64;
    let diag = hypergeometric_2f1_terminating(-m, Param::minus_n(0), 1)?;
    let off = hypergeometric_2f1_terminating(1 - m, Param::minus_n(1), 3)?;
    let z = P::z();
    let upper_right = (&z * &off).scale(&BigRational::from_integer(binom(m + 1, 2)));
    let lower_left = &(&z * &off) * &binom_poly(1, 2);
    Ok(&(&diag * &diag) - &(&upper_right * &lower_left))
}
