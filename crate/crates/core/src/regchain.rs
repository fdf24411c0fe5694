//! Regular chains, regular systems and the specializes-well predicate.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{sprem, sres, Polynomial, Var};
use crate::triset::{is_triangular, TriangularSet};

/// True if every initial has nonzero successive resultant w.r.t. the chain
/// below it.
pub fn is_regular_chain(polys: &[Polynomial]) -> bool {
    if !is_triangular(polys) {
        return false;
    }
    for i in 0..polys.len() {
        let Ok(init) = polys[i].initial() else {
            return false;
        };
        match sres(&init, &polys[..i]) {
            Ok(r) if !r.is_zero() => {}
            _ => return false,
        }
    }
    true
}

/// A regular chain whose main variables are all the variables.
pub fn is_zero_dimensional_regular(polys: &[Polynomial]) -> bool {
    match polys.first() {
        Some(p) => polys.len() == p.context().nvars() && is_regular_chain(polys),
        None => false,
    }
}

pub fn is_regular_system(polys: &[Polynomial], h: &Polynomial) -> bool {
    is_regular_chain(polys) && matches!(sres(h, polys), Ok(r) if !r.is_zero())
}

/// Membership in the saturated ideal, decided by the successive
/// pseudo-remainder.
pub fn in_saturation(f: &Polynomial, chain: &[Polynomial]) -> Result<bool> {
    Ok(sprem(f, chain)?.is_zero())
}

/// A regular chain with an inequation; its zero set is `V(T \ H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularSystem {
    pub chain: TriangularSet,
    pub inequation: Polynomial,
}

impl RegularSystem {
    pub fn new(chain: TriangularSet, inequation: Polynomial) -> Result<Self> {
        if !is_regular_system(chain.polys(), &inequation) {
            return Err(Error::Internal(format!(
                "[{chain}, {inequation}] is not a regular system"
            )));
        }
        Ok(RegularSystem { chain, inequation })
    }

    /// Build without checking regularity; callers that accept external
    /// documents use this and check separately.
    pub fn unchecked(chain: TriangularSet, inequation: Polynomial) -> Self {
        RegularSystem { chain, inequation }
    }

    pub fn is_regular(&self) -> bool {
        is_regular_system(self.chain.polys(), &self.inequation)
    }

    /// Whether the system keeps its shape after substituting the parameter
    /// values: the specialized chain is a regular chain of the same rank and
    /// the inequation keeps a nonzero successive resultant.
    pub fn specializes_well(&self, point: &[(Var, BigInt)]) -> bool {
        specializes_well(self.chain.polys(), &self.inequation, point)
    }
}

impl fmt::Display for RegularSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.chain, self.inequation)
    }
}

pub fn specializes_well(chain: &[Polynomial], h: &Polynomial, point: &[(Var, BigInt)]) -> bool {
    let mut special = Vec::with_capacity(chain.len());
    for t in chain {
        let ta = t.specialize(point);
        match (t.rank(), ta.rank()) {
            (Ok(r), Ok(ra)) if r == ra => special.push(ta),
            _ => return false,
        }
    }
    is_regular_system(&special, &h.specialize(point))
}
