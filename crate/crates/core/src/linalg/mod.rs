//! Exact integer and prime-field linear algebra.
//!
//! Everything homology-related bottoms out here: sparse integer matrices,
//! Smith normal form with unimodular transforms, ranks over `F_p` and `Q`,
//! and the dense field routines used by the cohomology ring.

mod field;
mod int_matrix;
mod rank;
mod snf;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use field::{null_space, rank as field_rank, EchelonBasis, Field, PrimeField, Rationals};
pub use int_matrix::IntMatrix;
pub use rank::{image_preserving_column_removal, rank_over_field, rank_over_prime, rank_over_rationals};
pub use snf::{invariant_factors, smith_normal_form, SnfDecomposition};

/// A coefficient field: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coefficients {
    Rational,
    Prime(u64),
}

impl Coefficients {
    /// Checks that a prime field really has prime order (and fits in 32 bits).
    pub fn validate(self) -> Result<Self> {
        if let Coefficients::Prime(p) = self {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if p >= 1 << 32 {
                return Err(Error::PrimeTooLarge(p));
            }
        }
        Ok(self)
    }

    /// The characteristic: 0 for `Q`.
    pub fn characteristic(self) -> u64 {
        match self {
            Coefficients::Rational => 0,
            Coefficients::Prime(p) => p,
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Rational => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `q`, `Q`, `f<p>`, `F<p>` or a bare prime.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Coefficients::Rational);
        }
        let digits = t.strip_prefix(['f', 'F']).unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("unrecognised coefficient field '{s}'")))?;
        Coefficients::Prime(p).validate()
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_coefficients() {
        assert_eq!("q".parse::<Coefficients>(), Ok(Coefficients::Rational));
        assert_eq!("F2".parse::<Coefficients>(), Ok(Coefficients::Prime(2)));
        assert_eq!("f7".parse::<Coefficients>(), Ok(Coefficients::Prime(7)));
        assert_eq!("f4".parse::<Coefficients>(), Err(Error::NotPrime(4)));
        assert!("z".parse::<Coefficients>().is_err());
        assert_eq!(
            Coefficients::Prime(4294967311).validate(),
            Err(Error::PrimeTooLarge(4294967311))
        );
    }
}
