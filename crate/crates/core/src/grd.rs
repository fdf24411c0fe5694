//! Generic regular decomposition: triangular sets to regular systems, and the
//! full driver producing the RDU polynomial.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Context, Polynomial};
use crate::regchain::RegularSystem;
use crate::regularize::{zdtorc, Witness};
use crate::triset::{chain_rank_cmp, wu_decompose, AscendingChain, TriangularSet};

/// Regular systems plus the polynomial `B` in the parameters off whose zero
/// set the decomposition is stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrdResult {
    pub systems: Vec<RegularSystem>,
    /// Squarefree primitive `B`: the least common multiple of the factors.
    pub rdu: Polynomial,
    /// Factors in the order they were multiplied in; their product is the
    /// unnormalized `B`.
    pub raw_factors: Vec<Polynomial>,
    /// Integer contents stripped while normalizing. Primes dividing it are
    /// unsafe for modular checks.
    pub guard: BigInt,
}

impl GrdResult {
    pub fn context(&self) -> &Arc<Context> {
        self.rdu.context()
    }

    /// The unnormalized `B` as a product.
    pub fn raw(&self) -> Polynomial {
        let one = Polynomial::one(self.context());
        self.raw_factors.iter().fold(one, |acc, f| &acc * f)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Profile {
    pub wu: Duration,
    pub tstors: Duration,
}

struct Acc {
    systems: Vec<RegularSystem>,
    witness: Witness,
    raw: Vec<Polynomial>,
}

impl Acc {
    fn new() -> Self {
        Acc {
            systems: Vec::new(),
            witness: Witness::new(),
            raw: Vec::new(),
        }
    }

    fn fold(&mut self, p: &Polynomial) -> Result<()> {
        if !p.is_constant() {
            self.raw.push(p.clone());
        }
        self.witness.add(p)
    }

    fn merge(&mut self, other: Acc) {
        self.systems.extend(other.systems);
        self.witness.merge(other.witness);
        self.raw.extend(other.raw);
    }

    fn finish(self, ctx: &Arc<Context>) -> GrdResult {
        let mut systems = self.systems;
        systems.sort_by(|a, b| {
            chain_rank_cmp(a.chain.polys(), b.chain.polys())
                .then_with(|| a.chain.to_string().cmp(&b.chain.to_string()))
                .then_with(|| a.inequation.to_string().cmp(&b.inequation.to_string()))
        });
        systems.dedup();
        GrdResult {
            systems,
            rdu: self.witness.polynomial(ctx),
            raw_factors: self.raw,
            guard: self.witness.guard,
        }
    }
}

fn internal(msg: String) -> Error {
    Error::Internal(msg)
}

/// Regular systems covering the quasi-component of a triangular set.
pub fn tstors(t: &TriangularSet) -> Result<GrdResult> {
    let ctx = t.context().clone();
    Ok(tstors_acc(t)?.finish(&ctx))
}

fn tstors_acc(t: &TriangularSet) -> Result<Acc> {
    let ctx = t.context();
    let mvars = t.main_vars();
    let z = zdtorc(t.polys(), &mvars)?;
    let w2 = z.witness.polynomial(ctx);
    let mut acc = Acc::new();
    for g in z.gset {
        let chain = TriangularSet::new(ctx, g)?;
        acc.systems.push(RegularSystem::new(chain, w2.clone())?);
    }
    let has_vars = ctx.var_indices().into_iter().any(|v| w2.contains(v));
    if !has_vars {
        if !w2.is_constant() {
            acc.raw.push(w2);
        }
        acc.witness = z.witness;
        return Ok(acc);
    }
    acc.witness.absorb_integer(&z.witness.guard);
    let wu = wu_decompose(std::slice::from_ref(&w2))?;
    acc.witness.absorb_integer(&wu.guard);
    for c in &wu.chains {
        match c {
            AscendingChain::Contradictory(p) => {
                if p.class() != 0 {
                    return Err(internal(format!(
                        "contradictory chain {p} has positive class"
                    )));
                }
                acc.fold(p)?;
            }
            AscendingChain::Chain(ci) => {
                if ci.main_vars().iter().any(|v| mvars.contains(v)) {
                    return Err(internal(format!("{ci} shares a main variable with {t}")));
                }
                let ti = t.extended(ci.polys())?;
                if ti.dim_defect() >= t.dim_defect() {
                    return Err(internal(format!(
                        "recursion on {ti} does not decrease the dimension"
                    )));
                }
                acc.merge(tstors_acc(&ti)?);
            }
        }
    }
    Ok(acc)
}

/// Generic regular decomposition of `polys` together with its RDU
/// polynomial.
pub fn rdu(polys: &[Polynomial]) -> Result<GrdResult> {
    rdu_profiled(polys).map(|(r, _)| r)
}

/// [`rdu`] with wall times for the Wu stage and the triangular-set stage.
pub fn rdu_profiled(polys: &[Polynomial]) -> Result<(GrdResult, Profile)> {
    let ctx = polys.first().ok_or(Error::EmptySystem)?.context().clone();
    let start = Instant::now();
    let wu = wu_decompose(polys)?;
    let wu_time = start.elapsed();
    let start = Instant::now();
    let mut acc = Acc::new();
    acc.witness.absorb_integer(&wu.guard);
    for c in &wu.chains {
        match c {
            AscendingChain::Contradictory(p) => acc.fold(p)?,
            AscendingChain::Chain(t) => acc.merge(tstors_acc(t)?),
        }
    }
    let result = acc.finish(&ctx);
    let profile = Profile {
        wu: wu_time,
        tstors: start.elapsed(),
    };
    Ok((result, profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, squarefree_primitive};

    fn ctx() -> Arc<Context> {
        Context::new(&["u", "v", "w"], &["x", "y", "z"]).unwrap()
    }

    fn p(c: &Arc<Context>, s: &str) -> Polynomial {
        parse_polynomial(c, s).unwrap()
    }

    fn ts(c: &Arc<Context>, s: &[&str]) -> TriangularSet {
        TriangularSet::new(c, s.iter().map(|e| p(c, e)).collect()).unwrap()
    }

    #[test]
    fn monic_chain() {
        let c = ctx();
        let r = tstors(&ts(&c, &["y-x"])).unwrap();
        assert_eq!(r.systems.len(), 1);
        assert!(r.systems[0].inequation.is_one());
        assert!(r.rdu.is_one());
    }

    #[test]
    fn second_chain_of_the_worked_example() {
        let c = ctx();
        let t = ts(&c, &["u*x+1", "v*y+1", "u-w*z"]);
        let r = tstors(&t).unwrap();
        assert_eq!(r.systems.len(), 1);
        assert_eq!(r.systems[0].chain, t);
        assert_eq!(r.systems[0].inequation, p(&c, "u*v*w"));
        assert_eq!(r.rdu, p(&c, "u*v*w"));
    }

    #[test]
    fn first_chain_of_the_worked_example() {
        let c = ctx();
        let t = ts(&c, &["u*x+1", "u+u*v*y*z^2+u*z^2-w*z"]);
        let r = tstors(&t).unwrap();
        assert_eq!(r.systems.len(), 1);
        assert_eq!(
            r.systems[0].inequation,
            squarefree_primitive(&p(&c, "u*(v*y+1)")).unwrap()
        );
        assert_eq!(r.rdu, p(&c, "u*v"));
    }

    #[test]
    fn worked_example_end_to_end() {
        let c = ctx();
        let sys = [p(&c, "(u*x+1)*z^3+(v*y+1)*z^2+w*x*z+1"), p(&c, "u*x+1")];
        let r = rdu(&sys).unwrap();
        assert_eq!(r.systems.len(), 2);
        assert_eq!(r.rdu, p(&c, "u*v*w"));
        for s in &r.systems {
            assert!(s.is_regular());
        }
    }

    #[test]
    fn trivial_and_inconsistent() {
        let c = Context::new(&["u"], &["x"]).unwrap();
        let r = rdu(&[p(&c, "x-u")]).unwrap();
        assert_eq!(r.systems.len(), 1);
        assert!(r.rdu.is_one());
        let r = rdu(&[p(&c, "u*x+1"), p(&c, "u")]).unwrap();
        assert!(r.systems.is_empty());
        assert_eq!(r.rdu, p(&c, "u"));
        assert_eq!(rdu(&[]).unwrap_err(), Error::EmptySystem);
        assert_eq!(rdu(&[p(&c, "0")]).unwrap_err(), Error::EmptySystem);
    }
}
