#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use regulus::poly::{exact_div, Monomial};
use regulus::{Context, Polynomial, Var};

/// Fraction-free Gaussian elimination. Entries are polynomials; every
/// division is exact by Sylvester's identity.
pub fn bareiss_det(mut m: Vec<Vec<Polynomial>>, ctx: &Arc<Context>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ctx);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(ctx);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Polynomial::zero(ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = exact_div(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Dense coefficients of `f` in `v`, highest first, padded to `deg + 1`.
fn row_coeffs(f: &Polynomial, v: Var, deg: usize) -> Vec<Polynomial> {
    let mut c = f.coefficients_in(v);
    c.resize(deg + 1, Polynomial::zero(f.context()));
    c.reverse();
    c
}

/// Sylvester matrix of `f` (degree n) and `g` (degree m) in `v`, rows of `f`
/// first.
pub fn sylvester(f: &Polynomial, g: &Polynomial, v: Var) -> Vec<Vec<Polynomial>> {
    let ctx = f.context();
    let n = f.degree(v) as usize;
    let m = g.degree(v) as usize;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, count) in [(f, n, m), (g, m, n)] {
        let c = row_coeffs(poly, v, deg);
        for shift in 0..count {
            let mut row = vec![Polynomial::zero(ctx); size];
            for (k, ck) in c.iter().enumerate() {
                row[shift + k] = ck.clone();
            }
            rows.push(row);
        }
    }
    rows
}

pub fn sylvester_resultant(f: &Polynomial, g: &Polynomial, v: Var) -> Polynomial {
    bareiss_det(sylvester(f, g, v), f.context())
}

/// The j-th subresultant as a determinant polynomial: rows are
/// `v^{q-j-1} A, ..., A, v^{p-j-1} B, ..., B`; the first `p+q-2j-1` columns
/// are kept and the last column is swapped for the column of `v^i`.
pub fn determinant_subresultant(a: &Polynomial, b: &Polynomial, v: Var, j: usize) -> Polynomial {
    let ctx = a.context();
    let p = a.degree(v) as usize;
    let q = b.degree(v) as usize;
    let width = p + q - j;
    let mut full = Vec::new();
    for (poly, deg, count) in [(a, p, q - j), (b, q, p - j)] {
        let c = row_coeffs(poly, v, deg);
        for shift in 0..count {
            let mut row = vec![Polynomial::zero(ctx); width];
            for (k, ck) in c.iter().enumerate() {
                row[shift + k] = ck.clone();
            }
            full.push(row);
        }
    }
    // Column c holds the coefficient of v^{width-1-c}.
    let size = p + q - 2 * j;
    let mut acc = Polynomial::zero(ctx);
    for i in 0..=j {
        let col = width - 1 - i;
        let m: Vec<Vec<Polynomial>> = full
            .iter()
            .map(|row| {
                let mut r: Vec<Polynomial> = row[..size - 1].to_vec();
                r.push(row[col].clone());
                r
            })
            .collect();
        let d = bareiss_det(m, ctx);
        acc = &acc + &d.shift(v, i as u32);
    }
    acc
}

/// Random polynomial with the given number of terms, exponents bounded per
/// indeterminate listed in `vars` and total degree at most `max_total`.
pub fn random_poly<R: Rng>(
    rng: &mut R,
    ctx: &Arc<Context>,
    vars: &[Var],
    max_total: u32,
    terms: usize,
    coeff: i64,
) -> Polynomial {
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; ctx.len()];
        let mut budget = rng.gen_range(0..=max_total);
        while budget > 0 {
            let v = vars[rng.gen_range(0..vars.len())];
            e[v] += 1;
            budget -= 1;
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-coeff..=coeff);
        }
        out.push((Monomial::from_exponents(&e), BigInt::from(c)));
    }
    Polynomial::from_terms(ctx, out)
}

/// Random polynomial in `v` of exact degree `deg` whose coefficients are
/// small polynomials in `coeff_vars`.
pub fn random_univariate<R: Rng>(
    rng: &mut R,
    ctx: &Arc<Context>,
    v: Var,
    deg: u32,
    coeff_vars: &[Var],
) -> Polynomial {
    loop {
        let mut coeffs = Vec::new();
        for _ in 0..=deg {
            let t = rng.gen_range(0..=2);
            coeffs.push(random_poly(rng, ctx, coeff_vars, 2, t, 5));
        }
        let f = Polynomial::from_coefficients(ctx, v, &coeffs);
        if f.degree(v) == deg {
            return f;
        }
    }
}
