use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{is_prime, mul_mod, reduce, Context, Polynomial};

/// Default cap on `p^n`.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A parameter-free polynomial reduced mod `p`, exponents over the variables
/// only.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    terms: Vec<(Vec<u32>, u64)>,
    /// Number of leading variables it depends on; 0 for constants.
    class: usize,
    max_deg: u32,
}

impl Compiled {
    pub(crate) fn new(f: &Polynomial, p: u64) -> Result<Self> {
        let ctx = f.context();
        let np = ctx.nparams();
        if (0..np).any(|v| f.contains(v)) {
            return Err(Error::Config(format!(
                "enumeration needs parameter-free polynomials, got {f}"
            )));
        }
        let mut terms = Vec::with_capacity(f.num_terms());
        let mut class = 0;
        let mut max_deg = 0;
        for (m, c) in f.terms() {
            let c = reduce(c, p);
            if c == 0 {
                continue;
            }
            let e = m.exponents()[np..].to_vec();
            if let Some(k) = e.iter().rposition(|&d| d > 0) {
                class = class.max(k + 1);
            }
            max_deg = max_deg.max(e.iter().copied().max().unwrap_or(0));
            terms.push((e, c));
        }
        Ok(Compiled {
            terms,
            class,
            max_deg,
        })
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn eval(&self, x: &[u64], p: u64) -> u64 {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (xi, &d) in x.iter().zip(e) {
                if d > 0 {
                    t = mul_mod(t, crate::poly::pow_mod(*xi, d as u64, p), p);
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

pub(crate) fn check_budget(n: usize, p: u64, budget: u128) -> Result<()> {
    let required = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

struct Scan<'a> {
    p: u64,
    n: usize,
    by_class: Vec<Vec<&'a Compiled>>,
    stride: usize,
    pows: Vec<u64>,
    point: Vec<u64>,
    out: &'a mut dyn FnMut(&[u64]),
}

impl Scan<'_> {
    fn pow(&self, x: u64, e: u32) -> u64 {
        self.pows[x as usize * self.stride + e as usize]
    }

    /// Coefficients in `x_k` of `f` with the earlier coordinates substituted.
    fn univariate(&self, f: &Compiled, k: usize) -> Vec<u64> {
        let mut c = vec![0u64; f.max_deg as usize + 1];
        for (e, coeff) in &f.terms {
            let mut t = *coeff;
            for (j, &d) in e[..k].iter().enumerate() {
                if d > 0 {
                    t = mul_mod(t, self.pow(self.point[j], d), self.p);
                    if t == 0 {
                        break;
                    }
                }
            }
            let slot = &mut c[e[k] as usize];
            *slot = (*slot + t) % self.p;
        }
        while c.len() > 1 && c[c.len() - 1] == 0 {
            c.pop();
        }
        c
    }

    fn run(&mut self, k: usize) {
        if k == self.n {
            (self.out)(&self.point);
            return;
        }
        let images: Vec<Vec<u64>> = self.by_class[k + 1]
            .iter()
            .map(|f| self.univariate(f, k))
            .collect();
        if images.iter().any(|c| c.len() == 1 && c[0] != 0) {
            return;
        }
        for x in 0..self.p {
            let vanish = images.iter().all(|c| {
                c.iter()
                    .rev()
                    .fold(0u64, |acc, &ci| (mul_mod(acc, x, self.p) + ci) % self.p)
                    == 0
            });
            if vanish {
                self.point[k] = x;
                self.run(k + 1);
            }
        }
    }
}

/// Visit every point of `F_p^n` at which all of `polys` vanish, in
/// lexicographic order of coordinates.
pub(crate) fn scan(n: usize, polys: &[Compiled], p: u64, out: &mut dyn FnMut(&[u64])) {
    let mut by_class: Vec<Vec<&Compiled>> = vec![Vec::new(); n + 1];
    for f in polys {
        by_class[f.class].push(f);
    }
    if by_class[0].iter().any(|f| !f.is_zero()) {
        return;
    }
    let max_deg = polys.iter().map(|f| f.max_deg).max().unwrap_or(0) as usize;
    let stride = max_deg + 1;
    let mut pows = vec![0u64; p as usize * stride];
    for x in 0..p {
        let mut acc = 1 % p;
        for e in 0..stride {
            pows[x as usize * stride + e] = acc;
            acc = mul_mod(acc, x, p);
        }
    }
    let mut s = Scan {
        p,
        n,
        by_class,
        stride,
        pows,
        point: vec![0; n],
        out,
    };
    s.run(0);
}

pub(crate) fn compile_all(polys: &[Polynomial], p: u64) -> Result<Vec<Compiled>> {
    polys.iter().map(|f| Compiled::new(f, p)).collect()
}

/// All points of `F_p^n` where every polynomial vanishes. The polynomials
/// must be free of parameters; coordinates follow the variable order.
pub fn enumerate_variety_mod_p(
    ctx: &Arc<Context>,
    polys: &[Polynomial],
    p: u64,
    budget: u128,
) -> Result<BTreeSet<Vec<u64>>> {
    check_prime(p)?;
    check_budget(ctx.nvars(), p, budget)?;
    let compiled = compile_all(polys, p)?;
    let mut out = BTreeSet::new();
    scan(ctx.nvars(), &compiled, p, &mut |x| {
        out.insert(x.to_vec());
    });
    Ok(out)
}

/// Points of `V(T) \ V(h)` over `F_p`.
pub fn enumerate_quasi_component_mod_p(
    ctx: &Arc<Context>,
    chain: &[Polynomial],
    h: &Polynomial,
    p: u64,
    budget: u128,
) -> Result<BTreeSet<Vec<u64>>> {
    check_prime(p)?;
    check_budget(ctx.nvars(), p, budget)?;
    let compiled = compile_all(chain, p)?;
    let h = Compiled::new(h, p)?;
    let mut out = BTreeSet::new();
    scan(ctx.nvars(), &compiled, p, &mut |x| {
        if h.eval(x, p) != 0 {
            out.insert(x.to_vec());
        }
    });
    Ok(out)
}
