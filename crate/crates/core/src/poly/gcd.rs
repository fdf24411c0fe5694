use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modp::{inv_mod, mul_mod, pow_mod};
use super::univariate::{prem, subresultant_chain};
use super::{Monomial, Polynomial, Var};
use crate::error::{Error, Result};

/// Exact quotient `a / b`, or `None` when `b` does not divide `a` over Z.
pub fn exact_div(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(a.clone());
    }
    if let Some(c) = b.constant_value() {
        return a.div_integer(&c);
    }
    let (lm, lc) = b.terms[0].clone();
    if b.is_monomial() {
        let mut terms = Vec::with_capacity(a.terms.len());
        for (m, c) in &a.terms {
            if !lm.divides(m) {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.div(&lm), q));
        }
        return Some(Polynomial::from_sorted(&a.ctx, terms));
    }
    // Cheap degree screen before the division loop.
    for v in 0..a.ctx.len() {
        if a.degree(v) < b.degree(v) {
            return None;
        }
    }
    let mut r = a.clone();
    let mut q = Vec::new();
    while let Some((m, c)) = r.terms.first() {
        if !lm.divides(m) {
            return None;
        }
        let (qc, rem) = c.div_rem(&lc);
        if !rem.is_zero() {
            return None;
        }
        let qm = m.div(&lm);
        let step: Vec<(Monomial, BigInt)> = b.terms[1..]
            .iter()
            .map(|(bm, bc)| (bm.mul(&qm), -(bc * &qc)))
            .collect();
        let mut rest = std::mem::take(&mut r.terms);
        rest.remove(0);
        r.terms = super::merge_terms(rest, step);
        q.push((qm, qc));
    }
    Some(Polynomial::from_sorted(&a.ctx, q))
}

/// True if `b` divides `a`.
pub fn divides(b: &Polynomial, a: &Polynomial) -> bool {
    exact_div(a, b).is_some()
}

fn monomial_gcd(m: &Monomial, f: &Polynomial) -> Monomial {
    let mut g = m.clone();
    for (t, _) in &f.terms {
        for (e, x) in g.0.iter_mut().zip(t.0.iter()) {
            *e = (*e).min(*x);
        }
    }
    g
}

/// Greatest common divisor over Z, with positive leading coefficient.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.check_context(b).expect("polynomial context mismatch");
    if a.is_zero() {
        return b.sign_normalized();
    }
    if b.is_zero() {
        return a.sign_normalized();
    }
    if a.is_monomial() || b.is_monomial() {
        let (m, f) = if a.is_monomial() { (a, b) } else { (b, a) };
        let c = m.terms[0].1.gcd(&f.integer_content());
        let mono = monomial_gcd(&m.terms[0].0, f);
        return Polynomial::monomial(&a.ctx, c, mono);
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::constant(&a.ctx, a.integer_content().gcd(&b.integer_content()));
    }
    let sa = a.support();
    let sb = b.support();
    if sa.iter().all(|v| !sb.contains(v)) {
        return Polynomial::constant(&a.ctx, a.integer_content().gcd(&b.integer_content()));
    }
    if coprime_by_images(a, b, &sa, &sb) {
        return Polynomial::constant(&a.ctx, a.integer_content().gcd(&b.integer_content()));
    }
    if let Some(g) = trial_divisor_gcd(a, b) {
        return g;
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g;
    }
    let v = *sa.iter().chain(sb.iter()).max().unwrap();
    let in_a = sa.contains(&v);
    let in_b = sb.contains(&v);
    if !in_a {
        return gcd(a, &content_in(b, v));
    }
    if !in_b {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = exact_div(a, &ca).expect("content divides");
    let pb = exact_div(b, &cb).expect("content divides");
    let gc = gcd(&ca, &cb);
    let gp = primitive_gcd(&pa, &pb, v);
    (&gc * &gp).sign_normalized()
}

const IMAGE_PRIME: u64 = (1 << 61) - 1;

/// Coefficients (lowest first, trailing zeros trimmed) of `f` in `v` after
/// substituting `point` for every other indeterminate, modulo `p`.
fn image_in(f: &Polynomial, v: Var, point: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; f.degree(v) as usize + 1];
    for (m, c) in &f.terms {
        let mut acc = super::modp::reduce(c, p);
        for (i, &e) in m.0.iter().enumerate() {
            if i != v && e > 0 {
                acc = mul_mod(acc, pow_mod(point[i], e as u64, p), p);
            }
        }
        let k = m.degree(v) as usize;
        out[k] = (out[k] + acc) % p;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Option<usize> {
    if a.is_empty() && b.is_empty() {
        return None;
    }
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p).expect("trimmed");
        while a.len() >= b.len() {
            let q = mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                a[shift + i] = (a[shift + i] + p - t) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}

/// True only if the gcd of `a` and `b` provably involves no indeterminate.
/// For each shared indeterminate `v`, an image under a substitution that
/// keeps a leading coefficient in `v` alive bounds `deg_v` of the gcd.
fn coprime_by_images(a: &Polynomial, b: &Polynomial, sa: &[Var], sb: &[Var]) -> bool {
    let p = IMAGE_PRIME;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    for &v in sa.iter().filter(|v| sb.contains(v)) {
        let mut certified = false;
        for _ in 0..2 {
            let point: Vec<u64> = (0..a.ctx.len()).map(|_| rng.gen_range(1..p)).collect();
            let ia = image_in(a, v, &point, p);
            let ib = image_in(b, v, &point, p);
            let lead_alive =
                ia.len() == a.degree(v) as usize + 1 || ib.len() == b.degree(v) as usize + 1;
            if !lead_alive {
                continue;
            }
            certified = gcd_degree_mod(ia, ib, p) == Some(0);
            break;
        }
        if !certified {
            return false;
        }
    }
    true
}

fn max_norm(f: &Polynomial) -> BigInt {
    f.terms
        .iter()
        .map(|(_, c)| c.abs())
        .max()
        .unwrap_or_default()
}

fn symmetric_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Rebuild a polynomial in `v` from its image at `v = xi`, reading the
/// balanced base-`xi` digits of each coefficient as the coefficients of
/// successive powers of `v`.
fn interpolate(h: &Polynomial, v: Var, xi: &BigInt) -> Polynomial {
    let mut h = h.clone();
    let mut parts = Vec::new();
    while !h.is_zero() {
        let digit: Vec<_> = h
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let d = symmetric_mod(c, xi);
                (!d.is_zero()).then(|| (m.clone(), d))
            })
            .collect();
        let g = Polynomial::from_sorted(&h.ctx, digit);
        h = (&h - &g).div_integer(xi).expect("digit removed");
        parts.push(g);
    }
    Polynomial::from_coefficients(&h.ctx, v, &parts)
}

/// Heuristic gcd: evaluate one indeterminate at a large integer, recurse,
/// and lift the image back by balanced base-`xi` expansion. A candidate is
/// accepted only if it divides both inputs, which together with the size of
/// `xi` makes it the gcd. Gives up after a few evaluation points.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let ca = a.integer_content();
    let cb = b.integer_content();
    let ic = ca.gcd(&cb);
    let a = a.div_integer(&ca).unwrap();
    let b = b.div_integer(&cb).unwrap();
    let g = heuristic_primitive(&a, &b)?;
    Some(g.scale(&ic).sign_normalized())
}

fn heuristic_primitive(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let ctx = &a.ctx;
    if a.is_constant() || b.is_constant() {
        return Some(Polynomial::constant(
            ctx,
            a.integer_content().gcd(&b.integer_content()),
        ));
    }
    let v = a.top_indeterminate().max(b.top_indeterminate())?;
    let na = max_norm(a);
    let nb = max_norm(b);
    let la = a.terms[0].1.abs();
    let lb = b.terms[0].1.abs();
    let mut xi: BigInt = BigInt::from(2) * na.clone().min(nb.clone()) + 29;
    let alt: BigInt = BigInt::from(2) * (&na / &la).min(&nb / &lb) + 4;
    if alt > xi {
        xi = alt;
    }
    for _ in 0..6 {
        let ea = a.specialize(&[(v, xi.clone())]);
        let eb = b.specialize(&[(v, xi.clone())]);
        if !ea.is_zero() && !eb.is_zero() {
            let ic = ea.integer_content().gcd(&eb.integer_content());
            let pa = ea.div_integer(&ea.integer_content()).unwrap();
            let pb = eb.div_integer(&eb.integer_content()).unwrap();
            if let Some(h) = heuristic_primitive(&pa, &pb) {
                let h = h.scale(&ic);
                let cand = interpolate(&h, v, &xi).primitive_integer();
                if !cand.is_zero() && divides(&cand, a) && divides(&cand, b) {
                    return Some(cand);
                }
                if let Some(cfa) = exact_div(&ea, &h) {
                    let cof = interpolate(&cfa, v, &xi);
                    if let Some(cand) = exact_div(a, &cof) {
                        let cand = cand.primitive_integer();
                        if divides(&cand, b) {
                            return Some(cand);
                        }
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

fn trial_divisor_gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let (small, large) = if a.num_terms() <= b.num_terms() {
        (a, b)
    } else {
        (b, a)
    };
    let s = small.primitive_integer();
    if divides(&s, large) {
        let c = small.integer_content().gcd(&large.integer_content());
        return Some(s.scale(&c));
    }
    None
}

/// gcd of two polynomials that are primitive w.r.t. `v` and both contain `v`.
fn primitive_gcd(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let (mut a, mut b) = if a.degree(v) >= b.degree(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if a.degree(v) == b.degree(v) {
        let r = prem(&a, &b, v).expect("positive degree");
        if r.is_zero() {
            return primitive_part_in(&b, v);
        }
        if r.degree(v) == 0 {
            return Polynomial::one(&a.ctx);
        }
        a = std::mem::replace(&mut b, r);
    }
    let chain = subresultant_chain(&a, &b, v).expect("deg a > deg b");
    match chain.iter().find(|s| !s.is_zero()) {
        Some(s) if s.degree(v) > 0 => primitive_part_in(s, v),
        _ => Polynomial::one(&a.ctx),
    }
}

/// Least common multiple with positive leading coefficient.
pub fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero(&a.ctx);
    }
    let g = gcd(a, b);
    let q = exact_div(a, &g).expect("gcd divides");
    (&q * b).sign_normalized()
}

/// Content of `f` viewed as a polynomial in `v`: the gcd of its coefficients,
/// with positive leading coefficient.
pub fn content_in(f: &Polynomial, v: Var) -> Polynomial {
    let coeffs = f.coefficients_in(v);
    let mut nz: Vec<&Polynomial> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.num_terms());
    let mut g = Polynomial::zero(&f.ctx);
    for c in nz {
        g = gcd(&g, c);
        if g.is_constant() && g.integer_content().is_one() {
            break;
        }
    }
    g
}

/// `f` divided by its content in `v`.
pub fn primitive_part_in(f: &Polynomial, v: Var) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, v);
    exact_div(f, &c).expect("content divides").sign_normalized()
}

/// A squarefree, integer-primitive associate of `f` with the same zero set
/// and positive leading coefficient. Constants map to 1.
pub fn squarefree_primitive(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(squarefree_rec(f).primitive_integer())
}

fn squarefree_rec(f: &Polynomial) -> Polynomial {
    let Some(v) = f.top_indeterminate() else {
        return Polynomial::one(&f.ctx);
    };
    if f.is_monomial() {
        let m = Monomial(f.terms[0].0 .0.iter().map(|&e| e.min(1)).collect());
        return Polynomial::monomial(&f.ctx, BigInt::one(), m);
    }
    let c = content_in(f, v);
    let pp = exact_div(f, &c).expect("content divides");
    let d = pp.derivative(v);
    let g = gcd(&pp, &d);
    let part = exact_div(&pp, &g).expect("gcd divides");
    &squarefree_rec(&c) * &part
}
