//! The strict order polynomial and its extension over all induced subposets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::extension::{histogram, EnumOptions};
use crate::oracle;
use crate::poly::{BivariatePolynomial, PolynomialJson, StructuredTable, TableEntryJson};
use crate::poset::Poset;
use crate::{Error, Result};

/// Number of strict order-preserving maps `P -> [n]`, as a polynomial in `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaPolynomial {
    pub poly: BivariatePolynomial,
    pub size: usize,
}

/// `E(n, z) = sum over induced subposets Q of Omega_Q(n) z^#Q`, together with
/// the `(des, fixed)` table it was expanded from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedOrderPolynomial {
    poly: BivariatePolynomial,
    table: StructuredTable,
}

impl ExtendedOrderPolynomial {
    pub fn from_table(table: StructuredTable) -> Self {
        Self {
            poly: table.expand(),
            table,
        }
    }

    pub fn poly(&self) -> &BivariatePolynomial {
        &self.poly
    }

    pub fn table(&self) -> &StructuredTable {
        &self.table
    }

    pub fn size(&self) -> usize {
        self.table.size() as usize
    }

    /// The `z^p` coefficient, which is the strict order polynomial of the whole poset.
    pub fn omega(&self) -> OmegaPolynomial {
        OmegaPolynomial {
            poly: self.poly.z_coefficient(self.table.size()),
            size: self.size(),
        }
    }

    pub fn to_json(&self) -> EpolyJson {
        EpolyJson {
            p: self.table.size(),
            poly: self.poly.to_json(),
            table: self.table.to_json(),
        }
    }

    pub fn from_json(json: &EpolyJson) -> Result<Self> {
        let table =
            StructuredTable::from_json(json.p, &json.table).map_err(Error::InvalidParameter)?;
        let poly = BivariatePolynomial::from_json(&json.poly)?;
        if poly != table.expand() {
            return Err(Error::Mismatch(
                "polynomial terms disagree with the table".into(),
            ));
        }
        Ok(Self { poly, table })
    }
}

/// Serialized form of an [`ExtendedOrderPolynomial`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpolyJson {
    pub p: u32,
    pub poly: PolynomialJson,
    pub table: Vec<TableEntryJson>,
}

/// `sum over w in L(P) of C(n + des(w), p)`.
pub fn omega(poset: &Poset) -> Result<OmegaPolynomial> {
    omega_with(poset, &EnumOptions::unlimited())
}

pub fn omega_with(poset: &Poset, options: &EnumOptions) -> Result<OmegaPolynomial> {
    let table = StructuredTable::from_histogram(&histogram(poset, options)?);
    Ok(OmegaPolynomial {
        poly: table.omega(),
        size: poset.size(),
    })
}

/// The extended strict order polynomial from one pass over `L(P)`.
///
/// Each extension `w` stands for the `C(del(w), k - fixed(w))` words of length
/// `k` obtained by deleting deletable labels, all with `des(w)` descents, so it
/// contributes `C(p - fixed, k - fixed) C(n + des, k) z^k` for every `k`.
pub fn extended(poset: &Poset) -> Result<ExtendedOrderPolynomial> {
    extended_with(poset, &EnumOptions::unlimited())
}

pub fn extended_with(poset: &Poset, options: &EnumOptions) -> Result<ExtendedOrderPolynomial> {
    let table = StructuredTable::from_histogram(&histogram(poset, options)?);
    Ok(ExtendedOrderPolynomial::from_table(table))
}

/// Exact value of `E(n, z)`; an integer whenever `z` is.
pub fn evaluate(e: &ExtendedOrderPolynomial, n: u64, z: &BigRational) -> BigRational {
    e.poly.eval(&BigRational::from_integer(BigInt::from(n)), z)
}

fn z_polynomial(coeffs: &[num_bigint::BigUint]) -> BivariatePolynomial {
    coeffs
        .iter()
        .enumerate()
        .fold(BivariatePolynomial::zero(), |acc, (k, c)| {
            acc + BivariatePolynomial::monomial(
                BigRational::from_integer(BigInt::from(c.clone())),
                0,
                k as u32,
            )
        })
}

/// `E(n, z)` at a fixed `n`, summed literally over all `2^p` induced subposets
/// with map counts from the brute-force oracle.
pub fn extended_oracle_eval(poset: &Poset, n: u64) -> Result<BivariatePolynomial> {
    Ok(z_polynomial(&oracle::subposet_map_counts(poset, n)?))
}

/// `E(1, z)`: only antichains admit a strict map to `[1]`, so this must be the
/// antichain generating polynomial. Returns it after checking both routes agree.
pub fn antichain_generating_check(poset: &Poset) -> Result<BivariatePolynomial> {
    if poset.size() > 20 {
        return Err(Error::GuardExceeded {
            what: "antichain check",
            size: poset.size() as u64,
            limit: 20,
        });
    }
    let direct = z_polynomial(&oracle::antichain_counts(poset)?);
    let via_extensions = extended(poset)?
        .poly
        .substitute_n(&BigRational::from_integer(1.into()));
    if via_extensions != direct {
        return Err(Error::Mismatch(format!(
            "E(1,z) = {via_extensions} but antichains give {direct}"
        )));
    }
    Ok(direct)
}

impl OmegaPolynomial {
    pub fn eval(&self, n: u64) -> BigRational {
        self.poly.eval(
            &BigRational::from_integer(BigInt::from(n)),
            &BigRational::zero(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{binom_poly, chain_closed_form};
    use crate::poset::{antichain, chain, grid};

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&chain(3)).unwrap().poly, binom_poly(0, 3));
        let n_squared = BivariatePolynomial::monomial(rat(1), 2, 0);
        assert_eq!(omega(&antichain(2)).unwrap().poly, n_squared);
        assert_eq!(
            omega(&grid(2, 2)).unwrap().poly,
            binom_poly(0, 4) + binom_poly(1, 4)
        );
    }

    /// Fit of the brute-force counts for n = 0..=8 against the degree-4
    /// polynomial C(n,4) + C(n+1,4).
    #[test]
    fn omega_grid_matches_brute_force_counts() {
        let om = omega(&grid(2, 2)).unwrap();
        for n in 0..=8u64 {
            let count = oracle::count_strict_maps(&grid(2, 2), n).unwrap();
            assert_eq!(om.eval(n), BigRational::from_integer(count.into()));
        }
    }

    #[test]
    fn extended_chain_three() {
        let e = extended(&chain(3)).unwrap();
        assert_eq!(e.poly(), &chain_closed_form(3));
        assert_eq!(evaluate(&e, 3, &rat(1)), rat(20));
        assert_eq!(evaluate(&e, 0, &rat(1)), rat(1));
        assert_eq!(evaluate(&e, 7, &rat(0)), rat(1));
    }

    #[test]
    fn extended_empty_poset() {
        let e = extended(&Poset::empty(0)).unwrap();
        assert_eq!(e.poly(), &BivariatePolynomial::one());
        assert_eq!(e.omega().poly, BivariatePolynomial::one());
        assert_eq!(e.table().get(0, 0), 1u32.into());
    }

    #[test]
    fn omega_is_top_coefficient() {
        for p in [grid(2, 3), antichain(4), crate::poset::fence(5)] {
            let e = extended(&p).unwrap();
            assert_eq!(e.omega().poly, omega(&p).unwrap().poly);
            assert_eq!(e.poly().degree_z(), Some(p.size() as u32));
            assert_eq!(e.poly().degree_n(), Some(p.size() as u32));
            assert_eq!(e.poly().coefficient(0, 0), rat(1));
        }
    }

    #[test]
    fn oracle_eval_examples() {
        let c = extended_oracle_eval(&chain(3), 4).unwrap();
        assert_eq!(c.to_string(), "1 + 12*z + 18*z^2 + 4*z^3");
        assert_eq!(
            extended_oracle_eval(&Poset::empty(0), 5).unwrap(),
            BivariatePolynomial::one()
        );
        assert!(extended_oracle_eval(&chain(13), 1).is_err());
    }

    #[test]
    fn antichain_identity() {
        assert_eq!(
            antichain_generating_check(&chain(3)).unwrap().to_string(),
            "1 + 3*z"
        );
        assert_eq!(
            antichain_generating_check(&grid(2, 2)).unwrap().to_string(),
            "1 + 4*z + z^2"
        );
        let cube = (BivariatePolynomial::one() + BivariatePolynomial::z()).pow(3);
        assert_eq!(antichain_generating_check(&antichain(3)).unwrap(), cube);
    }

    #[test]
    fn json_round_trip() {
        let e = extended(&grid(2, 3)).unwrap();
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let back =
            ExtendedOrderPolynomial::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, e);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }
}
