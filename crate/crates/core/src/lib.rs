//! Strict and extended strict order polynomials of finite posets.
//!
//! Every quantity here is computed exactly. The workhorse is the enumeration of
//! linear extensions `w` of a naturally labeled poset together with two
//! statistics: the descent count `des(w)` and the number of *fixed* (non-deletable)
//! labels. Grouping extensions by `(des, fixed)` gives a small table from which
//! the full bivariate polynomial `E(n, z) = sum over induced subposets Q of
//! Omega_Q(n) z^#Q` is expanded.
//!
//! ```
//! use ordopoly_core::{grid, extended};
//!
//! let e = extended(&grid(2, 2)).unwrap();
//! assert_eq!(e.table().total(), 2u32.into());
//! ```

pub mod corpus;
mod error;
pub mod extension;
pub mod oracle;
pub mod order_poly;
pub mod poly;
pub mod poset;
pub mod verify;

pub use error::{Error, Result};
pub use extension::{
    class_partition, deletable_set, delete, descent_set, enumerate_extensions, restore,
    subsequence, ClassPartition, EnumOptions, ExtensionClass, ExtensionStats, ExtensionWalker,
    LinearExtension, Restoration,
};
pub use order_poly::{
    antichain_generating_check, evaluate, extended, extended_oracle_eval, extended_with, omega,
    omega_with, EpolyJson, ExtendedOrderPolynomial, OmegaPolynomial,
};
pub use poly::{BivariatePolynomial, StructuredTable};
pub use poset::{
    antichain, canonicalize, chain, fence, from_covers, grid, parse_poset, Builtin, Label, Poset,
    Relabeling, SubposetSelection,
};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
