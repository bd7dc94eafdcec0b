use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exact polynomial in `n` and `z` with rational coefficients.
///
/// Terms are keyed by `(degree in n, degree in z)` and zero coefficients are
/// never stored, so two polynomials are equal exactly when their term maps are.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: BigRational, n_deg: u32, z_deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((n_deg, z_deg), c);
        }
        Self { terms }
    }

    /// The variable `n`.
    pub fn n() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// `n + c`.
    pub fn n_plus(c: i64) -> Self {
        Self::n() + Self::integer(c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing `(n, z)` degree order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRational)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn coefficient(&self, n_deg: u32, z_deg: u32) -> BigRational {
        self.terms
            .get(&(n_deg, z_deg))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Highest power of `n`; `None` for the zero polynomial.
    pub fn degree_n(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_z(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, k)| k).max()
    }

    /// The coefficient of `z^k`, as a polynomial in `n`.
    pub fn z_coefficient(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, zk), _)| zk == k)
                .map(|(&(a, _), c)| ((a, 0), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn mul_z_pow(&self, k: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, zk), v)| ((a, zk + k), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, n: &BigRational, z: &BigRational) -> BigRational {
        let mut n_pows = vec![BigRational::one()];
        let mut z_pows = vec![BigRational::one()];
        let mut sum = BigRational::zero();
        for (&(a, k), c) in &self.terms {
            while n_pows.len() <= a as usize {
                let next = n_pows.last().unwrap() * n;
                n_pows.push(next);
            }
            while z_pows.len() <= k as usize {
                let next = z_pows.last().unwrap() * z;
                z_pows.push(next);
            }
            sum += c * &n_pows[a as usize] * &z_pows[k as usize];
        }
        sum
    }

    pub fn eval_int(&self, n: i64, z: i64) -> BigRational {
        self.eval(&rat(n), &rat(z))
    }

    /// Substitutes a value for `n`, leaving a polynomial in `z`.
    pub fn substitute_n(&self, n: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(a, k), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..a {
                v *= n;
            }
            out.add_term((0, k), v);
        }
        out
    }

    /// Substitutes a value for `z`, leaving a polynomial in `n`.
    pub fn substitute_z(&self, z: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(a, k), c) in &self.terms {
            let mut v = c.clone();
            for _ in 0..k {
                v *= z;
            }
            out.add_term((a, 0), v);
        }
        out
    }

    /// Whether every coefficient is an integer (not required for integer values).
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            terms: self
                .terms
                .iter()
                .map(|(&(n, z), c)| TermJson {
                    n,
                    z,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let mut out = Self::zero();
        for t in &json.terms {
            let parse = |s: &str| {
                s.parse::<BigInt>()
                    .map_err(|e| Error::InvalidParameter(format!("bad integer `{s}`: {e}")))
            };
            let den = parse(&t.den)?;
            if den.is_zero() {
                return Err(Error::InvalidParameter("zero denominator".into()));
            }
            out.add_term((t.n, t.z), BigRational::new(parse(&t.num)?, den));
        }
        Ok(out)
    }
}

/// `{"terms":[{"n":a,"z":k,"num":"...","den":"..."}]}`, terms in increasing
/// `(n, z)` order, coefficients in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub n: u32,
    pub z: u32,
    pub num: String,
    pub den: String,
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn add(mut self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&BivariatePolynomial> for BivariatePolynomial {
    fn add_assign(&mut self, rhs: &BivariatePolynomial) {
        for (&k, v) in &rhs.terms {
            self.add_term(k, v.clone());
        }
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn neg(self) -> BivariatePolynomial {
        BivariatePolynomial {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        out += &-rhs;
        out
    }
}

impl Sub for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn sub(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self - &rhs
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(a1, k1), c1) in &self.terms {
            for (&(a2, k2), c2) in &rhs.terms {
                out.add_term((a1 + a2, k1 + k2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivariatePolynomial {
    type Output = BivariatePolynomial;

    fn mul(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
        &self * &rhs
    }
}

/// Terms grouped by increasing power of `z`, e.g. `1 + 3*n*z + 3*n^2*z^2`.
impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(&(a, k), _)| (k, a));
        for (i, (&(a, k), c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && k == 0) {
                factors.push(mag.to_string());
            }
            for (var, deg) in [("n", a), ("z", k)] {
                match deg {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    d => factors.push(format!("{var}^{d}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
