//! Splitting zero-dimensional chains against a polynomial, and converting a
//! triangular set into zero-dimensional regular chains.
//!
//! Both procedures work relative to an ascending list of variables `vars`;
//! every other indeterminate, including true variables outside the list, is
//! treated as a parameter. Every branch decision and every chain built along
//! the way contributes a polynomial in those parameters to a [`Witness`].
//! Off the zero set of the witness the same decisions are valid after
//! specialization.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{
    content_in, exact_div, lcm, pquo, sprem_with, sres_with, subresultant_chain, Context,
    Polynomial, Var,
};
use crate::triset::{absorb, normalize};

use std::sync::Arc;

/// Accumulated stability certificate: squarefree primitive factors whose
/// product must not vanish, plus the integer contents stripped on the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    factors: BTreeSet<Polynomial>,
    pub guard: BigInt,
}

impl Default for Witness {
    fn default() -> Self {
        Witness {
            factors: BTreeSet::new(),
            guard: BigInt::one(),
        }
    }
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a polynomial that must stay nonzero.
    pub fn add(&mut self, p: &Polynomial) -> Result<()> {
        if p.is_zero() {
            return Err(Error::Internal("zero stability certificate".into()));
        }
        let f = normalize(p, &mut self.guard)?;
        if !f.is_constant() {
            self.factors.insert(f);
        }
        Ok(())
    }

    pub fn merge(&mut self, other: Witness) {
        absorb(&mut self.guard, &other.guard);
        self.factors.extend(other.factors);
    }

    pub fn absorb_integer(&mut self, c: &BigInt) {
        absorb(&mut self.guard, c);
    }

    pub fn factors(&self) -> impl Iterator<Item = &Polynomial> {
        self.factors.iter()
    }

    /// Least common multiple of the factors.
    pub fn polynomial(&self, ctx: &Arc<Context>) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(ctx), |acc, f| lcm(&acc, f))
    }

    /// Product of the recorded factors, without removing shared parts.
    pub fn product(&self, ctx: &Arc<Context>) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(ctx), |acc, f| &acc * f)
    }
}

/// Result of splitting a zero-dimensional regular chain `T` by `P`.
#[derive(Clone, Debug)]
pub struct WrsdResult {
    /// Chains whose zeros are the common zeros of `T` and `P`.
    pub hset: Vec<Vec<Polynomial>>,
    /// Chains whose zeros are the zeros of `T` where `P` does not vanish.
    pub gset: Vec<Vec<Polynomial>>,
    pub witness: Witness,
}

/// Result of converting a triangular set into zero-dimensional regular
/// chains over its main variables.
#[derive(Clone, Debug)]
pub struct ZdtorcResult {
    pub gset: Vec<Vec<Polynomial>>,
    pub witness: Witness,
}

fn internal(msg: &str) -> Error {
    Error::Internal(msg.to_string())
}

/// Certificate that a chain over `vars` is regular: the first initial and
/// the successive resultant of each later initial w.r.t. the chain below.
fn chain_certificate(chain: &[Polynomial], vars: &[Var], w: &mut Witness) -> Result<()> {
    for i in 0..chain.len() {
        let init = chain[i].leading_coefficient_in(vars[i]);
        let r = sres_with(&init, &chain[..i], &vars[..i])?;
        if r.is_zero() {
            return Err(internal("constructed chain is not regular"));
        }
        w.add(&r)?;
    }
    Ok(())
}

/// Split the zero-dimensional regular chain `chain` (one element per entry of
/// `vars`, in order) by `p`. The certificate of `chain` itself is the
/// caller's; only chains built here contribute theirs.
pub fn wrsd(chain: &[Polynomial], p: &Polynomial, vars: &[Var]) -> Result<WrsdResult> {
    if chain.len() != vars.len() {
        return Err(Error::NotZeroDimensionalRegular);
    }
    for (t, &v) in chain.iter().zip(vars) {
        if t.main_var_in(vars) != Some(v) {
            return Err(Error::NotZeroDimensionalRegular);
        }
    }
    let mut w = Witness::new();
    let mut hset = Vec::new();
    let mut gset = Vec::new();
    split(chain, p, vars, &mut hset, &mut gset, &mut w)?;
    Ok(WrsdResult {
        hset: dedup_chains(hset),
        gset: dedup_chains(gset),
        witness: w,
    })
}

fn split(
    chain: &[Polynomial],
    p: &Polynomial,
    vars: &[Var],
    hset: &mut Vec<Vec<Polynomial>>,
    gset: &mut Vec<Vec<Polynomial>>,
    w: &mut Witness,
) -> Result<()> {
    let p = sprem_with(p, chain, vars)?;
    if p.is_zero() {
        hset.push(chain.to_vec());
        return Ok(());
    }
    let k = p.class_in(vars);
    if k == 0 {
        w.add(&p)?;
        gset.push(chain.to_vec());
        return Ok(());
    }
    let y = vars[k - 1];
    let lower = &chain[..k - 1];
    let sk = &chain[k - 1];
    let upper = &chain[k..];
    let assemble = |low: &[Polynomial], mid: &Polynomial| -> Vec<Polynomial> {
        let mut c = low.to_vec();
        c.push(mid.clone());
        c.extend(upper.iter().cloned());
        c
    };

    let init = p.leading_coefficient_in(y);
    let d = p.degree(y);
    let tail = &p - &init.shift(y, d);
    let mut h1 = Vec::new();
    let mut g1 = Vec::new();
    split(lower, &init, &vars[..k - 1], &mut h1, &mut g1, w)?;

    for l in h1 {
        let next = assemble(&l, sk);
        chain_certificate(&next, vars, w)?;
        split(&next, &tail, vars, hset, gset, w)?;
    }

    if g1.is_empty() {
        return Ok(());
    }
    let sres_chain = subresultant_chain(sk, &p, y)?;
    let low_vars = &vars[..k - 1];
    // Each pending branch: a lower chain and the first index whose principal
    // coefficient is still undecided on it.
    let mut pending: Vec<(Vec<Polynomial>, usize)> = g1.into_iter().map(|l| (l, 0)).collect();
    while let Some((l, j)) = pending.pop() {
        if j > d as usize {
            return Err(internal("no regular principal subresultant coefficient"));
        }
        let psc = sres_chain[j].coefficient_in(y, j as u32);
        let mut hj = Vec::new();
        let mut gj = Vec::new();
        split(&l, &psc, low_vars, &mut hj, &mut gj, w)?;
        for lh in hj {
            pending.push((lh, j + 1));
        }
        for lg in gj {
            if j == 0 {
                let next = assemble(&lg, sk);
                chain_certificate(&next, vars, w)?;
                gset.push(next);
                continue;
            }
            let g = primitive_in(&sres_chain[j], y, w)?;
            let common = assemble(&lg, &g);
            chain_certificate(&common, vars, w)?;
            hset.push(common);
            if g.degree(y) == sk.degree(y) {
                continue;
            }
            let q = primitive_in(&pquo(sk, &g, y)?, y, w)?;
            let rest = assemble(&lg, &q);
            chain_certificate(&rest, vars, w)?;
            split(&rest, &p, vars, hset, gset, w)?;
        }
    }
    Ok(())
}

/// Primitive part w.r.t. `y`, recording the stripped integer content.
fn primitive_in(f: &Polynomial, y: Var, w: &mut Witness) -> Result<Polynomial> {
    let c = content_in(f, y);
    w.absorb_integer(&c.integer_content());
    exact_div(f, &c)
        .map(|q| q.sign_normalized())
        .ok_or_else(|| internal("content does not divide"))
}

fn dedup_chains(mut chains: Vec<Vec<Polynomial>>) -> Vec<Vec<Polynomial>> {
    chains.sort();
    chains.dedup();
    chains
}

/// Convert a triangular set whose main variables are exactly `vars` into
/// zero-dimensional regular chains over `vars` covering its quasi-component.
pub fn zdtorc(chain: &[Polynomial], vars: &[Var]) -> Result<ZdtorcResult> {
    if chain.len() != vars.len() {
        return Err(Error::VarsMismatch);
    }
    for (t, &v) in chain.iter().zip(vars) {
        if t.main_var_in(vars) != Some(v) {
            return Err(Error::VarsMismatch);
        }
    }
    let mut w = Witness::new();
    let mut partial: Vec<Vec<Polynomial>> = vec![Vec::new()];
    for (i, t) in chain.iter().enumerate() {
        let init = t.leading_coefficient_in(vars[i]);
        let mut next = Vec::new();
        for s in &partial {
            let r = wrsd(s, &init, &vars[..i])?;
            w.merge(r.witness);
            for g in r.gset {
                let mut c = g;
                c.push(t.clone());
                chain_certificate(&c, &vars[..=i], &mut w)?;
                next.push(c);
            }
        }
        partial = dedup_chains(next);
    }
    Ok(ZdtorcResult {
        gset: partial,
        witness: w,
    })
}
