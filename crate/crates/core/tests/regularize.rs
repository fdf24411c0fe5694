mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regulus::poly::{is_prime, reduce, squarefree_primitive};
use regulus::regchain::is_regular_chain;
use regulus::regularize::{wrsd, zdtorc};
use regulus::verify::{enumerate_quasi_component_mod_p, enumerate_variety_mod_p, DEFAULT_BUDGET};
use regulus::{parse_polynomial, Context, Polynomial, Var};

use common::{random_poly, random_univariate};

fn p(c: &Arc<Context>, s: &str) -> Polynomial {
    parse_polynomial(c, s).unwrap()
}

fn spec(fs: &[Polynomial], at: &[(Var, BigInt)]) -> Vec<Polynomial> {
    fs.iter().map(|f| f.specialize(at)).collect()
}

type Points = BTreeSet<Vec<u64>>;

fn quasi(ctx: &Arc<Context>, t: &[Polynomial], h: &Polynomial, prime: u64) -> Points {
    enumerate_quasi_component_mod_p(ctx, t, h, prime, DEFAULT_BUDGET).unwrap()
}

fn union(sets: impl IntoIterator<Item = Points>) -> Points {
    sets.into_iter().flatten().collect()
}

/// Points of `V(G ∪ {f})` off `V(h)`.
fn off(
    ctx: &Arc<Context>,
    g: &[Polynomial],
    f: Option<&Polynomial>,
    h: &Polynomial,
    prime: u64,
) -> Points {
    let mut t = g.to_vec();
    t.extend(f.cloned());
    quasi(ctx, &t, h, prime)
}

#[test]
fn disjoint_line_and_root_pair() {
    let c = Context::new(&["u", "v"], &["x"]).unwrap();
    let x = c.var(0);
    let r = wrsd(&[p(&c, "x^2-u")], &p(&c, "x-v"), &[x]).unwrap();
    assert!(r.hset.is_empty());
    assert_eq!(r.gset, vec![vec![p(&c, "x^2-u")]]);
    assert_eq!(r.witness.polynomial(&c), p(&c, "v^2-u"));
    // On v^2 = u the line meets the pair; off it the intersection is empty.
    for (a, meets) in [((4, 2), true), ((9, -3), true), ((5, 2), false)] {
        let at = [(0, BigInt::from(a.0)), (1, BigInt::from(a.1))];
        let pts = enumerate_variety_mod_p(
            &c,
            &spec(&[p(&c, "x^2-u"), p(&c, "x-v")], &at),
            101,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(!pts.is_empty(), meets);
    }
}

#[test]
fn splitting_a_factored_chain() {
    let c = Context::new(&["u"], &["x"]).unwrap();
    let x = c.var(0);
    let r = wrsd(&[p(&c, "x^2-(2*u+1)*x+u*(u+1)")], &p(&c, "x-u"), &[x]).unwrap();
    assert_eq!(r.hset, vec![vec![p(&c, "x-u")]]);
    assert_eq!(r.gset, vec![vec![p(&c, "x-u-1")]]);
    assert!(r.witness.polynomial(&c).is_one());
}

#[test]
fn unit_inequation() {
    let c = Context::new(&["u", "v", "w"], &["x", "y", "z"]).unwrap();
    let t = vec![p(&c, "u*x+1"), p(&c, "v*y+1"), p(&c, "u-w*z")];
    let r = wrsd(&t, &Polynomial::one(&c), &c.var_indices()).unwrap();
    assert!(r.hset.is_empty());
    assert_eq!(r.gset, vec![t]);
    assert!(r.witness.polynomial(&c).is_one());
}

#[test]
fn zdtorc_worked_example() {
    let c = Context::new(&["u", "v", "w"], &["x", "y", "z"]).unwrap();
    let (x, y, z) = (c.var(0), c.var(1), c.var(2));
    let t1 = vec![p(&c, "u*x+1"), p(&c, "u+u*v*y*z^2+u*z^2-w*z")];
    let r = zdtorc(&t1, &[x, z]).unwrap();
    assert_eq!(r.gset, vec![t1]);
    assert_eq!(
        r.witness.polynomial(&c),
        squarefree_primitive(&p(&c, "u*(v*y+1)")).unwrap()
    );
    let t2 = vec![p(&c, "u*x+1"), p(&c, "v*y+1"), p(&c, "u-w*z")];
    let r = zdtorc(&t2, &[x, y, z]).unwrap();
    assert_eq!(r.gset, vec![t2]);
    assert_eq!(r.witness.polynomial(&c), p(&c, "u*v*w"));
    let c1 = Context::new(&["u"], &["x"]).unwrap();
    let r = zdtorc(&[p(&c1, "x-u")], &[c1.var(0)]).unwrap();
    assert!(r.witness.polynomial(&c1).is_one());
}

fn ctx2() -> Arc<Context> {
    Context::new(&["u", "v"], &["x", "y"]).unwrap()
}

/// A triangular set `{T1(x), T2(x, y)}` with parameter coefficients.
fn random_chain(rng: &mut ChaCha8Rng, c: &Arc<Context>) -> Vec<Polynomial> {
    let (x, y) = (c.var(0), c.var(1));
    let d1 = rng.gen_range(1..=2);
    let d2 = rng.gen_range(1..=2);
    vec![
        random_univariate(rng, c, x, d1, &[0, 1]),
        random_univariate(rng, c, y, d2, &[0, 1, x]),
    ]
}

fn random_params(rng: &mut ChaCha8Rng) -> Vec<(Var, BigInt)> {
    (0..2)
        .map(|v| (v, BigInt::from(rng.gen_range(-20..=20))))
        .collect()
}

const PRIMES: [u64; 4] = [101, 103, 107, 109];

fn pick_prime(guard: &BigInt) -> u64 {
    PRIMES
        .into_iter()
        .find(|&q| is_prime(q) && reduce(guard, q) != 0)
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Off V(B), the chain's zeros off its initials are exactly the zeros of
    /// the emitted chains off B, and the initials do not vanish identically
    /// whenever a chain is emitted.
    #[test]
    fn zdtorc_specializes(seed in any::<u64>()) {
        let c = ctx2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_chain(&mut rng, &c);
        let r = zdtorc(&t, &c.var_indices()).unwrap();
        let b = r.witness.polynomial(&c);
        prop_assert!(!b.is_zero());
        for g in &r.gset {
            prop_assert!(is_regular_chain(g));
        }
        let prime = pick_prime(&r.witness.guard);
        let init = t.iter().fold(Polynomial::one(&c), |acc, f| &acc * &f.initial().unwrap());
        let mut tested = 0;
        for _ in 0..20 {
            let at = random_params(&mut rng);
            let ba = b.specialize(&at);
            if ba.is_zero() {
                continue;
            }
            tested += 1;
            if !r.gset.is_empty() {
                prop_assert!(!init.specialize(&at).is_zero());
            }
            let lhs = quasi(&c, &spec(&t, &at), &(&init * &b).specialize(&at), prime);
            let rhs = union(r.gset.iter().map(|g| quasi(&c, &spec(g, &at), &ba, prime)));
            prop_assert_eq!(lhs, rhs, "T = {:?} at {:?}", t, at);
        }
        prop_assert!(tested > 0);
    }

    /// For a regular chain G and a polynomial f, off V(B): the zeros of
    /// G and f are the union over Hset, and the zeros of G off f are the
    /// union over Gset.
    #[test]
    fn wrsd_splits_exactly(seed in any::<u64>()) {
        let c = ctx2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_chain(&mut rng, &c);
        let z = zdtorc(&t, &c.var_indices()).unwrap();
        prop_assume!(!z.gset.is_empty());
        let g = z.gset[0].clone();
        let all: Vec<Var> = (0..c.len()).collect();
        let f = random_poly(&mut rng, &c, &all, 3, 3, 5);
        let r = wrsd(&g, &f, &c.var_indices()).unwrap();
        let b = r.witness.polynomial(&c);
        let prime = pick_prime(&(&r.witness.guard * &z.witness.guard));
        for _ in 0..10 {
            let at = random_params(&mut rng);
            let ba = b.specialize(&at);
            if ba.is_zero() {
                continue;
            }
            let gs = spec(&g, &at);
            let fs = f.specialize(&at);
            // Points where B(a) vanishes mod p are excluded on both sides.
            let meet = off(&c, &gs, Some(&fs), &ba, prime);
            let hs = union(r.hset.iter().map(|h| off(&c, &spec(h, &at), None, &ba, prime)));
            prop_assert_eq!(meet, hs, "G = {:?}, f = {}", g, f);
            let outside = quasi(&c, &gs, &(&fs * &ba), prime);
            let gsplit = union(r.gset.iter().map(|h| quasi(&c, &spec(h, &at), &(&fs * &ba), prime)));
            prop_assert_eq!(outside, gsplit);
        }
    }
}
