//! Triangular sets, ascending chains, characteristic sets and Wu's
//! decomposition.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{
    content_in, exact_div, sprem, squarefree_primitive, subresultant_chain, Context, Polynomial,
    Var,
};

/// Folds the integer content stripped during normalization into a running
/// integer. Primes dividing it may behave differently from characteristic 0.
pub(crate) fn absorb(guard: &mut BigInt, c: &BigInt) {
    if !c.is_one() && !num_traits::Zero::is_zero(c) {
        *guard = guard.lcm(c);
    }
}

/// Squarefree primitive form, recording the stripped integer content.
pub(crate) fn normalize(f: &Polynomial, guard: &mut BigInt) -> Result<Polynomial> {
    absorb(guard, &f.integer_content());
    squarefree_primitive(f)
}

/// Polynomials with positive, strictly increasing classes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TriangularSet {
    ctx: Arc<Context>,
    polys: Vec<Polynomial>,
}

impl TriangularSet {
    pub fn new(ctx: &Arc<Context>, polys: Vec<Polynomial>) -> Result<Self> {
        if !is_triangular(&polys) {
            return Err(Error::NotTriangular);
        }
        for p in &polys {
            if !crate::poly::same_context(p.context(), ctx) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(TriangularSet {
            ctx: ctx.clone(),
            polys,
        })
    }

    pub fn empty(ctx: &Arc<Context>) -> Self {
        TriangularSet {
            ctx: ctx.clone(),
            polys: Vec::new(),
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn main_vars(&self) -> Vec<Var> {
        self.polys.iter().map(|p| p.main_var().unwrap()).collect()
    }

    pub fn ranks(&self) -> Vec<(Var, u32)> {
        self.polys.iter().map(|p| p.rank().unwrap()).collect()
    }

    pub fn initials(&self) -> Vec<Polynomial> {
        self.polys.iter().map(|p| p.initial().unwrap()).collect()
    }

    /// Product of the initials.
    pub fn initial_product(&self) -> Polynomial {
        self.polys
            .iter()
            .fold(Polynomial::one(&self.ctx), |acc, p| {
                &acc * &p.initial().unwrap()
            })
    }

    /// Number of variables that are not main variables.
    pub fn dim_defect(&self) -> usize {
        self.ctx.nvars() - self.polys.len()
    }

    pub fn is_ascending_chain(&self) -> bool {
        is_ascending_chain(&self.polys)
    }

    /// Element whose main variable is `v`, if any.
    pub fn with_main_var(&self, v: Var) -> Option<&Polynomial> {
        self.polys.iter().find(|p| p.main_var().ok() == Some(v))
    }

    /// Insert polynomials with fresh main variables, keeping class order.
    pub fn extended(&self, more: &[Polynomial]) -> Result<TriangularSet> {
        let mut polys = self.polys.clone();
        polys.extend(more.iter().cloned());
        polys.sort_by_key(|p| p.class());
        TriangularSet::new(&self.ctx, polys)
    }
}

impl fmt::Debug for TriangularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.polys.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for TriangularSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn is_triangular(polys: &[Polynomial]) -> bool {
    let mut last = 0;
    for p in polys {
        let c = p.class();
        if c <= last {
            return false;
        }
        last = c;
    }
    true
}

/// `F` is reduced w.r.t. `T` if its degree in each main variable of `T` is
/// below that element's main degree.
pub fn is_reduced(f: &Polynomial, chain: &[Polynomial]) -> bool {
    chain.iter().all(|t| match t.rank() {
        Ok((v, d)) => f.degree(v) < d,
        Err(_) => false,
    })
}

pub fn is_ascending_chain(polys: &[Polynomial]) -> bool {
    is_triangular(polys) && (1..polys.len()).all(|i| is_reduced(&polys[i], &polys[..i]))
}

/// An ascending chain, or a single nonzero parameter-only polynomial
/// witnessing that the system has no generic zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AscendingChain {
    Chain(TriangularSet),
    Contradictory(Polynomial),
}

impl AscendingChain {
    pub fn is_contradictory(&self) -> bool {
        matches!(self, AscendingChain::Contradictory(_))
    }

    pub fn chain(&self) -> Option<&TriangularSet> {
        match self {
            AscendingChain::Chain(t) => Some(t),
            AscendingChain::Contradictory(_) => None,
        }
    }

    /// The polynomials of the chain; a contradictory chain has one.
    pub fn polys(&self) -> Vec<Polynomial> {
        match self {
            AscendingChain::Chain(t) => t.polys().to_vec(),
            AscendingChain::Contradictory(p) => vec![p.clone()],
        }
    }
}

impl fmt::Display for AscendingChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AscendingChain::Chain(t) => write!(f, "{t}"),
            AscendingChain::Contradictory(p) => write!(f, "contradictory {{{p}}}"),
        }
    }
}

/// Ritt ordering of polynomials with deterministic tie-breaks.
fn poly_rank_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let ra = (a.class(), a.main_var().map_or(0, |v| a.degree(v)));
    let rb = (b.class(), b.main_var().map_or(0, |v| b.degree(v)));
    ra.cmp(&rb)
        .then_with(|| a.num_terms().cmp(&b.num_terms()))
        .then_with(|| a.to_string().cmp(&b.to_string()))
}

/// Ritt ordering of chains: elementwise, a longer chain is lower when one is a
/// prefix of the other.
pub(crate) fn chain_rank_cmp(a: &[Polynomial], b: &[Polynomial]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let rx = (x.class(), x.main_var().map_or(0, |v| x.degree(v)));
        let ry = (y.class(), y.main_var().map_or(0, |v| y.degree(v)));
        match rx.cmp(&ry) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

fn clean(polys: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let nz: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nz.is_empty() {
        return Err(Error::EmptySystem);
    }
    let ctx = nz[0].context().clone();
    for p in &nz {
        if !crate::poly::same_context(p.context(), &ctx) {
            return Err(Error::ContextMismatch);
        }
    }
    Ok(nz)
}

/// A basic set of `P`: an ascending chain in `P` of minimal rank, or a
/// contradictory chain if `P` has a nonzero class-0 member.
pub fn basic_set(polys: &[Polynomial]) -> Result<AscendingChain> {
    let mut sorted = clean(polys)?;
    sorted.sort_by(poly_rank_cmp);
    sorted.dedup();
    if sorted[0].class() == 0 {
        return Ok(AscendingChain::Contradictory(sorted[0].clone()));
    }
    let ctx = sorted[0].context().clone();
    let mut chain: Vec<Polynomial> = Vec::new();
    for p in sorted {
        let above = chain
            .last()
            .is_none_or(|l: &Polynomial| p.class() > l.class());
        if above && is_reduced(&p, &chain) {
            chain.push(p);
        }
    }
    Ok(AscendingChain::Chain(TriangularSet::new(&ctx, chain)?))
}

/// Result of the characteristic-set loop together with its working set.
#[derive(Clone, Debug)]
pub struct CharSetRun {
    pub chain: AscendingChain,
    /// The input together with the chain; same zero set as the input.
    pub expanded: Vec<Polynomial>,
    /// Least common multiple of the integer contents stripped from
    /// remainders.
    pub guard: BigInt,
}

/// Characteristic set by Ritt–Wu: adjoin the nonzero pseudo-remainders of
/// the input w.r.t. its basic set until they all vanish.
pub fn char_set(polys: &[Polynomial]) -> Result<AscendingChain> {
    char_set_run(polys).map(|r| r.chain)
}

pub fn char_set_run(polys: &[Polynomial]) -> Result<CharSetRun> {
    match char_set_loop(&clean(polys)?, &[], false)? {
        Step::Done(run) => Ok(run),
        Step::Split(..) => Err(Error::Internal("unexpected content split".into())),
    }
}

/// A system for the Wu loop: `base` must reduce to zero w.r.t. the final
/// chain, `extras` are members of its ideal offered as basic-set candidates.
#[derive(Clone, Debug)]
struct System {
    base: Vec<Polynomial>,
    extras: Vec<Polynomial>,
}

impl System {
    fn new(base: Vec<Polynomial>, extras: Vec<Polynomial>) -> Self {
        System {
            base: canonical(base),
            extras: canonical(extras),
        }
    }
}

enum Step {
    Done(CharSetRun),
    /// The system extended by the content and by the primitive part of a
    /// remainder, plus the integer contents stripped so far.
    Split(System, System, BigInt),
}

/// The characteristic-set loop. Only `base` is reduced each round; adjoined
/// remainders and `extras` lie in its ideal and serve as basic-set
/// candidates. With `split`, the loop stops at the first remainder with a
/// nontrivial content in its main variable so that both factors can be
/// followed separately.
fn char_set_loop(base: &[Polynomial], extras: &[Polynomial], split: bool) -> Result<Step> {
    let base = base.to_vec();
    let mut set = base.clone();
    for e in extras {
        if !set.contains(e) {
            set.push(e.clone());
        }
    }
    let mut guard = BigInt::one();
    loop {
        let bs = basic_set(&set)?;
        let chain = match &bs {
            AscendingChain::Contradictory(p) => {
                let p = normalize(p, &mut guard)?;
                return Ok(Step::Done(CharSetRun {
                    chain: AscendingChain::Contradictory(p),
                    expanded: base,
                    guard,
                }));
            }
            AscendingChain::Chain(t) => t.polys().to_vec(),
        };
        let mut fresh = Vec::new();
        for f in &base {
            if chain.contains(f) {
                continue;
            }
            let r = sprem(f, &chain)?;
            if r.is_zero() {
                continue;
            }
            let r = normalize(&r, &mut guard)?;
            if r.class() > 0 {
                let c = content_in(&r, r.main_var()?);
                if split && !c.is_constant() {
                    let pp = exact_div(&r, &c).expect("content divides");
                    let mut with_c = base.clone();
                    with_c.push(normalize(&c, &mut guard)?);
                    let pp = normalize(&pp, &mut guard)?;
                    let mut pp_extras = set.clone();
                    pp_extras.extend(subresultants_against(&chain, &pp, &mut guard)?);
                    let mut with_pp = base;
                    with_pp.push(pp);
                    return Ok(Step::Split(
                        System::new(with_c, set),
                        System::new(with_pp, pp_extras),
                        guard,
                    ));
                }
                for s in subresultants_against(&chain, &r, &mut guard)? {
                    if !set.contains(&s) && !fresh.contains(&s) {
                        fresh.push(s);
                    }
                }
            }
            if !set.contains(&r) && !fresh.contains(&r) {
                fresh.push(r);
            }
        }
        if fresh.is_empty() {
            let mut expanded = base;
            for c in &chain {
                if !expanded.contains(c) {
                    expanded.push(c.clone());
                }
            }
            return Ok(Step::Done(CharSetRun {
                chain: bs,
                expanded,
                guard,
            }));
        }
        set.extend(fresh);
    }
}

/// The nonzero subresultants of `r` and the chain element sharing its main
/// variable. They lie in the ideal of the two, so adjoining them keeps the
/// zero set while skipping the coefficient swell of repeated pseudo-division.
fn subresultants_against(
    chain: &[Polynomial],
    r: &Polynomial,
    guard: &mut BigInt,
) -> Result<Vec<Polynomial>> {
    let v = r.main_var()?;
    let Some(b) = chain.iter().find(|b| b.main_var().ok() == Some(v)) else {
        return Ok(Vec::new());
    };
    if b.degree(v) <= r.degree(v) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for s in subresultant_chain(b, r, v)? {
        if !s.is_zero() {
            out.push(normalize(&s, guard)?);
        }
    }
    Ok(out)
}

/// Characteristic sets of the branches of Wu's zero decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WuDecomposition {
    pub chains: Vec<AscendingChain>,
    /// Least common multiple of every integer content stripped on the way.
    pub guard: BigInt,
}

impl WuDecomposition {
    pub fn non_contradictory(&self) -> impl Iterator<Item = &TriangularSet> {
        self.chains.iter().filter_map(|c| c.chain())
    }

    pub fn contradictory(&self) -> impl Iterator<Item = &Polynomial> {
        self.chains.iter().filter_map(|c| match c {
            AscendingChain::Contradictory(p) => Some(p),
            _ => None,
        })
    }
}

const WU_BRANCH_LIMIT: usize = 20_000;

/// Wu's decomposition: `V(P) = V(C \ I(C)) ∪ ⋃ V(P ∪ C ∪ {I(C_i)})`, applied
/// recursively. Chain elements with a nontrivial content in their main
/// variable are split into content and primitive part first.
pub fn wu_decompose(polys: &[Polynomial]) -> Result<WuDecomposition> {
    let start = clean(polys)?;
    let mut guard = BigInt::one();
    let mut initial = Vec::with_capacity(start.len());
    for p in &start {
        initial.push(normalize(p, &mut guard)?);
    }
    let mut worklist = vec![System::new(initial, Vec::new())];
    let mut seen: HashSet<Vec<Polynomial>> = HashSet::new();
    let mut out: Vec<AscendingChain> = Vec::new();
    while let Some(sys) = worklist.pop() {
        if !seen.insert(sys.base.clone()) {
            continue;
        }
        if seen.len() > WU_BRANCH_LIMIT {
            return Err(Error::Internal(
                "Wu decomposition branch limit reached".into(),
            ));
        }
        let run = match char_set_loop(&sys.base, &sys.extras, true)? {
            Step::Done(run) => run,
            Step::Split(with_c, with_pp, g) => {
                absorb(&mut guard, &g);
                worklist.push(with_c);
                worklist.push(with_pp);
                continue;
            }
        };
        absorb(&mut guard, &run.guard);
        let chain = match &run.chain {
            AscendingChain::Contradictory(_) => {
                out.push(run.chain);
                continue;
            }
            AscendingChain::Chain(t) => t.polys().to_vec(),
        };
        if let Some((f, c, pp)) = first_content_split(&chain)? {
            let rest: Vec<Polynomial> = sys.base.iter().filter(|g| **g != f).cloned().collect();
            let others: Vec<Polynomial> = chain.iter().filter(|g| **g != f).cloned().collect();
            let mut with_pp = rest.clone();
            with_pp.push(normalize(&pp, &mut guard)?);
            let mut with_c = rest;
            with_c.push(normalize(&c, &mut guard)?);
            worklist.push(System::new(with_c, others.clone()));
            worklist.push(System::new(with_pp, others));
            continue;
        }
        for t in &chain {
            let init = t.initial()?;
            if init.is_constant() {
                continue;
            }
            let mut next = sys.base.clone();
            next.push(normalize(&init, &mut guard)?);
            worklist.push(System::new(next, chain.clone()));
        }
        out.push(run.chain);
    }
    Ok(WuDecomposition {
        chains: sort_chains(out),
        guard,
    })
}

fn first_content_split(
    chain: &[Polynomial],
) -> Result<Option<(Polynomial, Polynomial, Polynomial)>> {
    for f in chain {
        let v = f.main_var()?;
        let c = content_in(f, v);
        if !c.is_constant() {
            let pp = exact_div(f, &c).expect("content divides");
            return Ok(Some((f.clone(), c, pp)));
        }
    }
    Ok(None)
}

fn canonical(mut polys: Vec<Polynomial>) -> Vec<Polynomial> {
    polys.sort();
    polys.dedup();
    polys
}

/// Deterministic order: non-contradictory chains by rank then printed form,
/// contradictory ones last; duplicates removed.
pub(crate) fn sort_chains(chains: Vec<AscendingChain>) -> Vec<AscendingChain> {
    let mut good: Vec<Vec<Polynomial>> = Vec::new();
    let mut bad: BTreeSet<Polynomial> = BTreeSet::new();
    let mut ctx = None;
    for c in chains {
        match c {
            AscendingChain::Chain(t) => {
                ctx = Some(t.context().clone());
                let p = t.into_polys();
                if !good.contains(&p) {
                    good.push(p);
                }
            }
            AscendingChain::Contradictory(p) => {
                bad.insert(p);
            }
        }
    }
    good.sort_by(|a, b| chain_rank_cmp(a, b).then_with(|| printed(a).cmp(&printed(b))));
    let mut out: Vec<AscendingChain> = good
        .into_iter()
        .map(|p| {
            let ctx = ctx.clone().unwrap();
            AscendingChain::Chain(TriangularSet::new(&ctx, p).expect("chain stays triangular"))
        })
        .collect();
    out.extend(bad.into_iter().map(AscendingChain::Contradictory));
    out
}

fn printed(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

/// True iff every non-contradictory chain of a Wu decomposition of `P` has
/// as many elements as there are variables.
pub fn is_generic_zero_dimensional(polys: &[Polynomial]) -> Result<bool> {
    let wu = wu_decompose(polys)?;
    let all = wu.non_contradictory().all(|t| t.dim_defect() == 0);
    Ok(all)
}
