//! Sparse multivariate polynomials with integer coefficients over an ordered
//! split of indeterminates into parameters and variables.
//!
//! Every polynomial lives in a [`Context`] listing the parameters
//! `u_1 < ... < u_d` followed by the variables `x_1 < ... < x_n`. Indeterminates
//! are addressed by their position in that combined list. Terms are kept in
//! strictly descending lexicographic order with the last indeterminate most
//! significant, so the first term always carries the highest power of the
//! main variable.
//!
//! Coefficients are arbitrary-precision integers. The engine works over the
//! rationals up to nonzero constant factors, so integer representatives are
//! sufficient everywhere except at the boundary, where [`RationalPolynomial`]
//! carries an explicit denominator.

mod gcd;
mod modp;
mod parse;
mod univariate;

pub use gcd::{content_in, divides, exact_div, gcd, lcm, primitive_part_in, squarefree_primitive};
pub use modp::{inv_mod, is_prime, mul_mod, pow_mod, reduce, PolyModP, RationalPolynomial};
pub use parse::parse_polynomial;
pub use univariate::{
    pquo, prem, principal_coefficient, pseudo_divide, resultant, sprem, sprem_with, sres,
    sres_with, subresultant_chain,
};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Position of an indeterminate inside its [`Context`].
pub type Var = usize;

/// Ordered parameter and variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    params: Vec<String>,
    vars: Vec<String>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Context {
    pub fn new<S: AsRef<str>>(params: &[S], vars: &[S]) -> Result<Arc<Context>> {
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = std::collections::HashSet::new();
        for name in params.iter().chain(vars.iter()) {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!(
                    "'{name}' is not an identifier"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidContext(format!("duplicate name '{name}'")));
            }
        }
        Ok(Arc::new(Context { params, vars }))
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Total number of indeterminates.
    pub fn len(&self) -> usize {
        self.params.len() + self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Indeterminate index of the variable `x_{i+1}`.
    pub fn var(&self, i: usize) -> Var {
        self.params.len() + i
    }

    /// Indeterminate indices of all variables, ascending.
    pub fn var_indices(&self) -> Vec<Var> {
        (self.params.len()..self.len()).collect()
    }

    pub fn param_indices(&self) -> Vec<Var> {
        (0..self.params.len()).collect()
    }

    pub fn is_param(&self, v: Var) -> bool {
        v < self.params.len()
    }

    pub fn name(&self, v: Var) -> &str {
        if v < self.params.len() {
            &self.params[v]
        } else {
            &self.vars[v - self.params.len()]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<Var> {
        self.params
            .iter()
            .chain(self.vars.iter())
            .position(|n| n == name)
    }

    /// Same parameters, variables listed in a new ascending order.
    pub fn with_var_order<S: AsRef<str>>(&self, order: &[S]) -> Result<Arc<Context>> {
        let mut sorted: Vec<&str> = order.iter().map(|s| s.as_ref()).collect();
        let mut mine: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        sorted.sort_unstable();
        mine.sort_unstable();
        if sorted != mine {
            return Err(Error::InvalidContext(
                "ordering must be a permutation of the variables".into(),
            ));
        }
        let order: Vec<&str> = order.iter().map(|s| s.as_ref()).collect();
        let params: Vec<&str> = self.params.iter().map(|s| s.as_str()).collect();
        Context::new(&params, &order)
    }
}

/// Exponent vector indexed by indeterminate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self, v: Var) -> u32 {
        self.0[v]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    fn with(&self, v: Var, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[v] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial with integer coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<Context>,
    terms: Vec<(Monomial, BigInt)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order: by leading monomials, then coefficients.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

pub(crate) fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Merge two descending term lists, dropping cancellations.
fn merge_terms(a: Vec<(Monomial, BigInt)>, b: Vec<(Monomial, BigInt)>) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => break,
        };
        match ord {
            Ordering::Greater => out.push(ia.next().unwrap()),
            Ordering::Less => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let (m, c1) = ia.next().unwrap();
                let (_, c2) = ib.next().unwrap();
                let c = c1 + c2;
                if !c.is_zero() {
                    out.push((m, c));
                }
            }
        }
    }
    out
}

impl Polynomial {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, BigInt::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(ctx.len()), c)]
        };
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// The indeterminate `v` itself.
    pub fn indeterminate(ctx: &Arc<Context>, v: Var) -> Self {
        Self::monomial(ctx, BigInt::one(), Monomial::one(ctx.len()).with(v, 1))
    }

    pub fn monomial(ctx: &Arc<Context>, c: BigInt, m: Monomial) -> Self {
        assert_eq!(
            m.0.len(),
            ctx.len(),
            "monomial length does not match context"
        );
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Build from arbitrary (possibly repeated, unordered) terms.
    pub fn from_terms(ctx: &Arc<Context>, terms: Vec<(Monomial, BigInt)>) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(
                m.0.len(),
                ctx.len(),
                "monomial length does not match context"
            );
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    fn from_sorted(ctx: &Arc<Context>, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for elements of the coefficient field (no indeterminate occurs).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient of the lexicographically largest term.
    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn check_context(&self, other: &Polynomial) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    // ---- ring operations -------------------------------------------------

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_context(other)?;
        Ok(Polynomial::from_sorted(
            &self.ctx,
            merge_terms(self.terms.clone(), other.terms.clone()),
        ))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_context(other)?;
        let neg = other.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Ok(Polynomial::from_sorted(
            &self.ctx,
            merge_terms(self.terms.clone(), neg),
        ))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_context(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ctx));
        }
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        // Multiplying by a monomial preserves the term order, so the product is
        // a balanced merge of shifted copies of the larger factor.
        let mut parts: Vec<Vec<(Monomial, BigInt)>> = small
            .terms
            .iter()
            .map(|(m, c)| {
                large
                    .terms
                    .iter()
                    .map(|(m2, c2)| (m.mul(m2), c * c2))
                    .collect()
            })
            .collect();
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut it = parts.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(merge_terms(a, b)),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        Ok(Polynomial::from_sorted(&self.ctx, parts.pop().unwrap()))
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ctx);
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

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial::from_sorted(
            &self.ctx,
            self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial::from_sorted(
            &self.ctx,
            self.terms
                .iter()
                .map(|(m2, c)| (m2.mul(m), c.clone()))
                .collect(),
        )
    }

    /// Multiply by `v^e`.
    pub fn shift(&self, v: Var, e: u32) -> Polynomial {
        if e == 0 {
            return self.clone();
        }
        self.mul_monomial(&Monomial::one(self.ctx.len()).with(v, e))
    }

    /// Exact division by an integer; `None` if some coefficient is not divisible.
    pub fn div_integer(&self, c: &BigInt) -> Option<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, k) in &self.terms {
            let (q, r) = k.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(Polynomial::from_sorted(&self.ctx, terms))
    }

    // ---- degrees and structure ------------------------------------------

    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v] > 0)
    }

    /// Indeterminates that occur, ascending.
    pub fn support(&self) -> Vec<Var> {
        (0..self.ctx.len()).filter(|&v| self.contains(v)).collect()
    }

    /// Highest indeterminate that occurs.
    pub fn top_indeterminate(&self) -> Option<Var> {
        // The leading term has the highest power of the top indeterminate.
        let m = &self.terms.first()?.0;
        (0..self.ctx.len()).rev().find(|&v| m.0[v] > 0)
    }

    /// Class: 1-based position of the highest variable occurring, 0 if none.
    pub fn class(&self) -> usize {
        match self.top_indeterminate() {
            Some(v) if !self.ctx.is_param(v) => v - self.ctx.nparams() + 1,
            _ => 0,
        }
    }

    /// Class relative to an ascending list of indeterminates: 1-based
    /// position of the highest listed indeterminate that occurs, 0 if none.
    pub fn class_in(&self, vars: &[Var]) -> usize {
        (0..vars.len())
            .rev()
            .find(|&i| self.contains(vars[i]))
            .map_or(0, |i| i + 1)
    }

    pub fn main_var(&self) -> Result<Var> {
        match self.class() {
            0 => Err(Error::ConstantClass),
            c => Ok(self.ctx.var(c - 1)),
        }
    }

    pub fn main_var_in(&self, vars: &[Var]) -> Option<Var> {
        match self.class_in(vars) {
            0 => None,
            c => Some(vars[c - 1]),
        }
    }

    /// Initial: coefficient of the highest power of the main variable.
    pub fn initial(&self) -> Result<Polynomial> {
        let v = self.main_var()?;
        Ok(self.leading_coefficient_in(v))
    }

    /// Rank as (main variable, main degree).
    pub fn rank(&self) -> Result<(Var, u32)> {
        let v = self.main_var()?;
        Ok((v, self.degree(v)))
    }

    /// Coefficient of `v^deg(self, v)`.
    pub fn leading_coefficient_in(&self, v: Var) -> Polynomial {
        let d = self.degree(v);
        self.coefficient_in(v, d)
    }

    /// Coefficient of `v^e`, as a polynomial free of `v`.
    pub fn coefficient_in(&self, v: Var, e: u32) -> Polynomial {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[v] == e)
            .map(|(m, c)| (m.with(v, 0), c.clone()))
            .collect();
        // Terms sharing the exponent of `v` keep their relative order.
        Polynomial::from_sorted(&self.ctx, terms)
    }

    /// Dense coefficient list in `v`, lowest degree first.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let d = self.degree(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.0[v] as usize].push((m.with(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| Polynomial::from_sorted(&self.ctx, t))
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients(ctx: &Arc<Context>, v: Var, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                terms.push((m.with(v, m.0[v] + e as u32), k.clone()));
            }
        }
        Polynomial::from_terms(ctx, terms)
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[v] > 0)
            .map(|(m, c)| (m.with(v, m.0[v] - 1), c * BigInt::from(m.0[v])))
            .collect();
        Polynomial::from_terms(&self.ctx, terms)
    }

    /// Content of the integer coefficients, always non-negative.
    pub fn integer_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide by the integer content and make the leading coefficient positive.
    pub fn primitive_integer(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.integer_content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        self.div_integer(&g)
            .expect("content divides every coefficient")
    }

    /// Same associate with a positive leading coefficient.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    // ---- evaluation ------------------------------------------------------

    /// Substitute integers for some indeterminates.
    pub fn specialize(&self, assignment: &[(Var, BigInt)]) -> Polynomial {
        if assignment.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(Var, u32), BigInt> = HashMap::new();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = m.clone();
            for (v, val) in assignment {
                let e = m.0[*v];
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((*v, e))
                    .or_insert_with(|| num_traits::pow(val.clone(), e as usize));
                coeff *= &*pw;
                mono.0[*v] = 0;
                if coeff.is_zero() {
                    break;
                }
            }
            if !coeff.is_zero() {
                terms.push((mono, coeff));
            }
        }
        Polynomial::from_terms(&self.ctx, terms)
    }

    /// Substitute by indeterminate name.
    pub fn specialize_named(&self, assignment: &[(&str, BigInt)]) -> Result<Polynomial> {
        let mut idx = Vec::with_capacity(assignment.len());
        for (name, val) in assignment {
            let v = self
                .ctx
                .index_of(name)
                .ok_or_else(|| Error::UnknownIndeterminate(name.to_string()))?;
            idx.push((v, val.clone()));
        }
        Ok(self.specialize(&idx))
    }

    /// Evaluate at a point given for the listed indeterminates only; every
    /// indeterminate that occurs must be assigned.
    pub fn evaluate(&self, assignment: &[(Var, BigInt)]) -> Option<BigInt> {
        self.specialize(assignment).constant_value()
    }

    /// Rewrite into another context through an indeterminate map.
    pub fn remap(&self, ctx: &Arc<Context>, map: &[Var]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = Monomial::one(ctx.len());
                for (i, &x) in m.0.iter().enumerate() {
                    if x > 0 {
                        e.0[map[i]] += x;
                    }
                }
                (e, c.clone())
            })
            .collect();
        Polynomial::from_terms(ctx, terms)
    }

    /// Move into a context with the same names in another order.
    pub fn to_context(&self, ctx: &Arc<Context>) -> Result<Polynomial> {
        if same_context(&self.ctx, ctx) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ctx.len());
        for v in 0..self.ctx.len() {
            let name = self.ctx.name(v);
            map.push(
                ctx.index_of(name)
                    .ok_or_else(|| Error::UnknownIndeterminate(name.to_string()))?,
            );
        }
        Ok(self.remap(ctx, &map))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mag = c.abs();
            let mut first = true;
            if !mag.is_one() || m.is_one() {
                write!(f, "{mag}")?;
                first = false;
            }
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ctx.name(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomial context mismatch")
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$checked(rhs).expect("polynomial context mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_sorted(
            &self.ctx,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

/// Product of a list of polynomials.
pub fn product<'a>(
    ctx: &Arc<Context>,
    polys: impl IntoIterator<Item = &'a Polynomial>,
) -> Polynomial {
    polys
        .into_iter()
        .fold(Polynomial::one(ctx), |acc, p| &acc * p)
}
