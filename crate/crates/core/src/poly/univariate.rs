//! Operations that view a polynomial as univariate in one indeterminate with
//! coefficients in the ring of the remaining ones.

use super::gcd::exact_div;
use super::{Polynomial, Var};
use crate::error::{Error, Result};

fn zero_degree(g: &Polynomial, v: Var) -> Error {
    Error::ZeroDegreeDivisor(g.context().name(v).to_string())
}

/// Pseudo-division with the full power `k = deg(F) - deg(G) + 1` of the
/// leading coefficient: returns `(Q, R)` with `lc(G)^k F = Q G + R`.
/// When `deg(F) < deg(G)` the result is `(0, F)`.
pub fn pseudo_divide(f: &Polynomial, g: &Polynomial, v: Var) -> Result<(Polynomial, Polynomial)> {
    f.check_context(g)?;
    let dg = g.degree(v);
    if dg == 0 {
        return Err(zero_degree(g, v));
    }
    let ctx = f.context();
    let df = f.degree(v);
    if f.is_zero() || df < dg {
        return Ok((Polynomial::zero(ctx), f.clone()));
    }
    let gc = g.coefficients_in(v);
    let b = &gc[dg as usize];
    let mut r = f.coefficients_in(v);
    let steps = (df - dg + 1) as usize;
    let mut q = vec![Polynomial::zero(ctx); steps];
    for s in (0..steps).rev() {
        let j = s + dg as usize;
        let c = std::mem::replace(&mut r[j], Polynomial::zero(ctx));
        for qi in q.iter_mut().skip(s + 1) {
            *qi = &*qi * b;
        }
        q[s] = c.clone();
        for (i, ri) in r.iter_mut().enumerate().take(j) {
            let mut t = &*ri * b;
            if i >= s && !c.is_zero() {
                let gi = &gc[i - s];
                if !gi.is_zero() {
                    t = t - &c * gi;
                }
            }
            *ri = t;
        }
    }
    r.truncate(dg as usize);
    let ctx = ctx.clone();
    Ok((
        Polynomial::from_coefficients(&ctx, v, &q),
        Polynomial::from_coefficients(&ctx, v, &r),
    ))
}

/// Pseudo-remainder of `F` by `G` in `v`.
pub fn prem(f: &Polynomial, g: &Polynomial, v: Var) -> Result<Polynomial> {
    pseudo_divide(f, g, v).map(|(_, r)| r)
}

/// Pseudo-quotient of `F` by `G` in `v`.
pub fn pquo(f: &Polynomial, g: &Polynomial, v: Var) -> Result<Polynomial> {
    pseudo_divide(f, g, v).map(|(q, _)| q)
}

/// Successive pseudo-remainder w.r.t. a triangular set, reducing by the top
/// element first. Each element is taken w.r.t. its main variable.
pub fn sprem(f: &Polynomial, chain: &[Polynomial]) -> Result<Polynomial> {
    let mvars = chain
        .iter()
        .map(|t| t.main_var())
        .collect::<Result<Vec<_>>>()?;
    sprem_with(f, chain, &mvars)
}

/// [`sprem`] with explicitly supplied main variables.
pub fn sprem_with(f: &Polynomial, chain: &[Polynomial], mvars: &[Var]) -> Result<Polynomial> {
    let mut r = f.clone();
    for (t, &v) in chain.iter().zip(mvars).rev() {
        if r.is_zero() {
            break;
        }
        r = prem(&r, t, v)?;
    }
    Ok(r)
}

/// Resultant in `v`, equal to the Sylvester determinant with the rows of `F`
/// first. If one argument has degree 0 in `v` the result is that argument
/// raised to the degree of the other.
pub fn resultant(f: &Polynomial, g: &Polynomial, v: Var) -> Result<Polynomial> {
    f.check_context(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroResultant);
    }
    let n = f.degree(v);
    let m = g.degree(v);
    if n == 0 {
        return Ok(f.pow(m));
    }
    if m == 0 {
        return Ok(g.pow(n));
    }
    if n < m {
        let r = resultant(g, f, v)?;
        return Ok(if (n * m) % 2 == 1 { -r } else { r });
    }
    if n == m {
        // lc(G) F - lc(F) G has lower degree; undo the row operation and the
        // column expansions it causes.
        let lf = f.leading_coefficient_in(v);
        let lg = g.leading_coefficient_in(v);
        let a = &(&lg * f) - &(&lf * g);
        if a.is_zero() {
            return Ok(Polynomial::zero(f.context()));
        }
        let r = a.degree(v);
        let base = resultant(&a, g, v)?;
        let base = if (m * (m - r)) % 2 == 1 { -base } else { base };
        return exact_div(&base, &lg.pow(r))
            .ok_or_else(|| Error::Internal("inexact division in resultant".into()));
    }
    let chain = subresultant_chain(f, g, v)?;
    Ok(chain.into_iter().next().unwrap())
}

/// Successive resultant w.r.t. a triangular set, eliminating the top element
/// first.
pub fn sres(f: &Polynomial, chain: &[Polynomial]) -> Result<Polynomial> {
    let mvars = chain
        .iter()
        .map(|t| t.main_var())
        .collect::<Result<Vec<_>>>()?;
    sres_with(f, chain, &mvars)
}

/// [`sres`] with explicitly supplied main variables.
pub fn sres_with(f: &Polynomial, chain: &[Polynomial], mvars: &[Var]) -> Result<Polynomial> {
    let mut r = f.clone();
    for (t, &v) in chain.iter().zip(mvars).rev() {
        if r.is_zero() {
            break;
        }
        r = resultant(&r, t, v)?;
    }
    Ok(r)
}

/// Subresultant chain `[S_0, ..., S_{p-1}]` of `A` and `B` in `v`, where
/// `p = deg(A) > deg(B)`. `S_j` has degree at most `j`, `S_0` is the
/// resultant and `S_{p-1} = B`.
pub fn subresultant_chain(a: &Polynomial, b: &Polynomial, v: Var) -> Result<Vec<Polynomial>> {
    a.check_context(b)?;
    let ctx = a.context().clone();
    let p = a.degree(v);
    let q = b.degree(v);
    if p == 0 || q >= p {
        return Err(Error::Internal(format!(
            "subresultant chain needs deg A > deg B (got {p}, {q})"
        )));
    }
    let mut s: Vec<Polynomial> = vec![Polynomial::zero(&ctx); p as usize];
    s[p as usize - 1] = b.clone();
    if b.is_zero() {
        return Ok(s);
    }
    let lb = b.leading_coefficient_in(v);
    s[q as usize] = &lb.pow(p - q - 1) * b;
    if q == 0 {
        return Ok(s);
    }
    let mut sc = lb.pow(p - q);
    let mut x = b.clone();
    let mut y = prem(a, &-b, v)?;
    loop {
        let d = x.degree(v);
        if y.is_zero() {
            break;
        }
        let e = y.degree(v);
        s[d as usize - 1] = y.clone();
        let c = if d - e > 1 {
            let ly = y.leading_coefficient_in(v);
            let num = &ly.pow(d - e - 1) * &y;
            let c = exact_div(&num, &sc.pow(d - e - 1))
                .ok_or_else(|| Error::Internal("inexact Lazard step".into()))?;
            s[e as usize] = c.clone();
            c
        } else {
            y.clone()
        };
        if e == 0 {
            break;
        }
        let den = &sc.pow(d - e) * &x.leading_coefficient_in(v);
        let next = prem(&x, &-&y, v)?;
        y = exact_div(&next, &den)
            .ok_or_else(|| Error::Internal("inexact subresultant step".into()))?;
        x = c;
        sc = x.leading_coefficient_in(v);
    }
    Ok(s)
}

/// Principal subresultant coefficient `psc_j`: the coefficient of `v^j` in
/// `S_j`.
pub fn principal_coefficient(chain: &[Polynomial], j: usize, v: Var) -> Polynomial {
    chain[j].coefficient_in(v, j as u32)
}
