use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Context, Monomial, Polynomial, Var};
use crate::error::{Error, Result};

/// Reduce an integer into `[0, p)`.
pub fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A polynomial with coefficients in `F_p`, terms in descending order.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyModP {
    ctx: Arc<Context>,
    prime: u64,
    terms: Vec<(Monomial, u64)>,
}

impl PolyModP {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate at a point given for every indeterminate of the context.
    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.prime;
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = mul_mod(t, pow_mod(point[v], e as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree(v))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = Polynomial::from_sorted(
            &self.ctx,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), BigInt::from(*c)))
                .collect(),
        );
        write!(f, "{lifted} (mod {})", self.prime)
    }
}

impl fmt::Debug for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyModP({self})")
    }
}

impl Polynomial {
    /// Coefficient-wise reduction modulo `p`.
    pub fn mod_p(&self, p: u64) -> PolyModP {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let r = reduce(c, p);
                (r != 0).then(|| (m.clone(), r))
            })
            .collect();
        PolyModP {
            ctx: self.ctx.clone(),
            prime: p,
            terms,
        }
    }
}

/// A polynomial with rational coefficients written as an integer polynomial
/// over a positive common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    pub numerator: Polynomial,
    pub denominator: BigInt,
}

impl RationalPolynomial {
    pub fn new(numerator: Polynomial, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (numerator, denominator) = if denominator.is_negative() {
            (-numerator, -denominator)
        } else {
            (numerator, denominator)
        };
        let g = numerator.integer_content().gcd(&denominator);
        if g.is_one() || g.is_zero() {
            return Ok(RationalPolynomial {
                numerator,
                denominator,
            });
        }
        Ok(RationalPolynomial {
            numerator: numerator.div_integer(&g).expect("gcd divides"),
            denominator: denominator / g,
        })
    }

    /// Coefficient-wise reduction; fails if `p` divides the denominator.
    pub fn mod_p(&self, p: u64) -> Result<PolyModP> {
        let d = reduce(&self.denominator, p);
        let inv = inv_mod(d, p).ok_or(Error::BadPrime(p))?;
        let mut f = self.numerator.mod_p(p);
        for t in &mut f.terms {
            t.1 = mul_mod(t.1, inv, p);
        }
        Ok(f)
    }
}
