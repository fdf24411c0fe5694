//! Brute-force oracle: compares zero sets over small prime fields after
//! substituting integer parameter values.
//!
//! Only `F_p`-rational points are compared, so a pass is a necessary
//! condition for the identities over the algebraic closure, not a proof.

mod enumerate;

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use enumerate::{check_budget, compile_all, scan, Compiled};
pub use enumerate::{enumerate_quasi_component_mod_p, enumerate_variety_mod_p, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::grd::GrdResult;
use crate::poly::{is_prime, reduce, Context, Polynomial, Var};
use crate::regchain::{is_regular_system, specializes_well};
use crate::triset::{TriangularSet, WuDecomposition};

/// Integer values for every parameter, in parameter order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecPoint {
    names: Vec<String>,
    values: Vec<BigInt>,
}

impl SpecPoint {
    pub fn new(ctx: &Context, values: Vec<BigInt>) -> Result<Self> {
        if values.len() != ctx.nparams() {
            return Err(Error::Config(format!(
                "expected {} parameter values, got {}",
                ctx.nparams(),
                values.len()
            )));
        }
        Ok(SpecPoint {
            names: ctx.params().to_vec(),
            values,
        })
    }

    pub fn from_i64(ctx: &Context, values: &[i64]) -> Result<Self> {
        Self::new(ctx, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Build from name/value pairs; every parameter must be given once.
    pub fn from_named(ctx: &Context, pairs: &[(&str, BigInt)]) -> Result<Self> {
        let mut values = vec![None; ctx.nparams()];
        for (name, val) in pairs {
            let v = ctx
                .index_of(name)
                .filter(|&v| ctx.is_param(v))
                .ok_or_else(|| Error::UnknownIndeterminate(name.to_string()))?;
            if values[v].replace(val.clone()).is_some() {
                return Err(Error::Config(format!("parameter '{name}' assigned twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::Config(format!("parameter '{}' unassigned", ctx.params()[i]))
                })
            })
            .collect::<Result<_>>()?;
        Self::new(ctx, values)
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// The point as a substitution; parameters occupy the first indices.
    pub fn assignment(&self) -> Vec<(Var, BigInt)> {
        self.values.iter().cloned().enumerate().collect()
    }
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.names.iter().zip(&self.values).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for SpecPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.names.len()))?;
        for (n, v) in self.names.iter().zip(&self.values) {
            m.serialize_entry(n, &v.to_string())?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub prime: u64,
    /// Used when `prime` divides `B(a)` or the guard at a sampled point.
    pub alternate: u64,
    pub trials: usize,
    /// Sampled parameter values lie in `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
    /// Largest `p^n` the enumerator may scan.
    pub budget: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            prime: 101,
            alternate: 211,
            trials: 50,
            bound: 1000,
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        for p in [self.prime, self.alternate] {
            if !is_prime(p) {
                return Err(Error::BadPrime(p));
            }
        }
        if self.bound < 0 {
            return Err(Error::Config("negative coefficient bound".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
}

/// A point of `F_p^n` on exactly one side of a compared identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub coordinates: Vec<(String, u64)>,
    /// True if the point lies on the left-hand side only.
    pub left_only: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self
            .coordinates
            .iter()
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        let side = if self.left_only {
            "left side only"
        } else {
            "right side only"
        };
        write!(f, "({}) on the {side}", coords.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub point: SpecPoint,
    pub prime: u64,
    /// Exact value of `B` at the point, when a `B` is involved.
    pub b_value: Option<String>,
    pub status: Status,
    pub clauses: Vec<Clause>,
    pub witness: Option<Counterexample>,
    pub note: Option<String>,
}

impl TrialRecord {
    fn new(point: &SpecPoint, prime: u64) -> Self {
        TrialRecord {
            point: point.clone(),
            prime,
            b_value: None,
            status: Status::Pass,
            clauses: Vec::new(),
            witness: None,
            note: None,
        }
    }

    fn skipped(mut self, note: &str) -> Self {
        self.status = Status::Skipped;
        self.note = Some(note.to_string());
        self
    }

    fn clause(&mut self, name: &str, pass: bool) {
        self.clauses.push(Clause {
            name: name.to_string(),
            pass,
        });
        if !pass {
            self.status = Status::Fail;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub trials: Vec<TrialRecord>,
    /// Pass iff no trial failed.
    pub verdict: Status,
}

impl VerifyReport {
    pub fn from_trials(trials: Vec<TrialRecord>) -> Self {
        let verdict = if trials.iter().any(|t| t.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
        VerifyReport { trials, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn count(&self, status: Status) -> usize {
        self.trials.iter().filter(|t| t.status == status).count()
    }

    pub fn first_failure(&self) -> Option<&TrialRecord> {
        self.trials.iter().find(|t| t.status == Status::Fail)
    }

    /// One line per trial, an indented line per counterexample, and a final
    /// verdict line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.trials.iter().enumerate() {
            let _ = write!(out, "trial {} p={} a=({})", i + 1, t.prime, t.point);
            if let Some(b) = &t.b_value {
                let _ = write!(out, " B(a)={b}");
            }
            let _ = write!(out, " {}", t.status);
            for c in &t.clauses {
                let _ = write!(out, " {}={}", c.name, if c.pass { "pass" } else { "fail" });
            }
            if let Some(n) = &t.note {
                let _ = write!(out, " # {n}");
            }
            out.push('\n');
            if let Some(w) = &t.witness {
                let _ = writeln!(out, "  witness {w}");
            }
        }
        let ran = self.trials.len() - self.count(Status::Skipped);
        let _ = writeln!(
            out,
            "verdict {} {}/{}",
            self.verdict,
            self.count(Status::Pass),
            ran
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn first_difference(
    ctx: &Context,
    lhs: &BTreeSet<Vec<u64>>,
    rhs: &BTreeSet<Vec<u64>>,
) -> Option<Counterexample> {
    let left = lhs.difference(rhs).next().map(|x| (x, true));
    let right = rhs.difference(lhs).next().map(|x| (x, false));
    let (x, left_only) = match (left, right) {
        (Some(l), Some(r)) => std::cmp::min(l, r),
        (l, r) => l.or(r)?,
    };
    Some(Counterexample {
        coordinates: ctx.vars().iter().cloned().zip(x.iter().copied()).collect(),
        left_only,
    })
}

fn specialize_all(polys: &[Polynomial], at: &[(Var, BigInt)]) -> Vec<Polynomial> {
    polys.iter().map(|f| f.specialize(at)).collect()
}

fn variety(ctx: &Arc<Context>, polys: &[Polynomial], p: u64) -> Result<BTreeSet<Vec<u64>>> {
    let compiled = compile_all(polys, p)?;
    let mut out = BTreeSet::new();
    scan(ctx.nvars(), &compiled, p, &mut |x| {
        out.insert(x.to_vec());
    });
    Ok(out)
}

/// Union of `V(T(a)) \ V(h(a))` over the given pairs.
fn union_of_quasi(
    ctx: &Arc<Context>,
    pieces: &[(Vec<Polynomial>, Polynomial)],
    p: u64,
) -> Result<BTreeSet<Vec<u64>>> {
    let mut out = BTreeSet::new();
    for (t, h) in pieces {
        let compiled = compile_all(t, p)?;
        let h = Compiled::new(h, p)?;
        scan(ctx.nvars(), &compiled, p, &mut |x| {
            if h.eval(x, p) != 0 {
                out.insert(x.to_vec());
            }
        });
    }
    Ok(out)
}

fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> Result<()> {
    if a != b {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

fn first_context(polys: &[Polynomial]) -> Result<&Arc<Context>> {
    Ok(polys.first().ok_or(Error::EmptySystem)?.context())
}

fn guard_ok(guard: &BigInt, p: u64) -> bool {
    guard.is_zero() || !guard.is_multiple_of(&BigInt::from(p))
}

/// Compare `V(P(a))` with the union of `V(T(a) \ H(a))` over `F_p`, and check
/// that every system specializes well at `a`. Points on `V(B)` are skipped.
pub fn check_decomposition_at(
    polys: &[Polynomial],
    th: &GrdResult,
    a: &SpecPoint,
    p: u64,
    budget: u128,
) -> Result<TrialRecord> {
    let regular: Vec<bool> = th
        .systems
        .iter()
        .map(|s| is_regular_system(s.chain.polys(), &s.inequation))
        .collect();
    decomposition_trial(polys, th, &regular, a, p, budget)
}

fn decomposition_trial(
    polys: &[Polynomial],
    th: &GrdResult,
    regular: &[bool],
    a: &SpecPoint,
    p: u64,
    budget: u128,
) -> Result<TrialRecord> {
    let ctx = first_context(polys)?;
    same_context(ctx, th.context())?;
    if !is_prime(p) || !guard_ok(&th.guard, p) {
        return Err(Error::BadPrime(p));
    }
    check_budget(ctx.nvars(), p, budget)?;
    let at = a.assignment();
    let mut rec = TrialRecord::new(a, p);
    let b = th.rdu.specialize(&at);
    let b_value = b
        .constant_value()
        .ok_or_else(|| Error::Config(format!("B = {} involves variables", th.rdu)))?;
    rec.b_value = Some(b_value.to_string());
    if b_value.is_zero() {
        return Ok(rec.skipped("on RDU variety, skipped"));
    }
    if reduce(&b_value, p) == 0 {
        rec.note = Some(format!("B(a) is divisible by {p}"));
    }
    let lhs = variety(ctx, &specialize_all(polys, &at), p)?;
    let pieces: Vec<_> = th
        .systems
        .iter()
        .map(|s| {
            (
                specialize_all(s.chain.polys(), &at),
                s.inequation.specialize(&at),
            )
        })
        .collect();
    let rhs = union_of_quasi(ctx, &pieces, p)?;
    let witness = first_difference(ctx, &lhs, &rhs);
    rec.clause("identity", witness.is_none());
    rec.witness = witness;
    rec.clause("regular", regular.iter().all(|&r| r));
    let well = th
        .systems
        .iter()
        .all(|s| specializes_well(s.chain.polys(), &s.inequation, &at));
    rec.clause("specializes_well", well);
    Ok(rec)
}

/// Sample `cfg.trials` parameter points off `V(B)` and run
/// [`check_decomposition_at`] at each.
pub fn check_stability(
    polys: &[Polynomial],
    th: &GrdResult,
    cfg: &OracleConfig,
) -> Result<VerifyReport> {
    cfg.validate()?;
    let ctx = first_context(polys)?;
    same_context(ctx, th.context())?;
    if th.rdu.is_zero() {
        return Err(Error::RduVanishes);
    }
    if ctx.var_indices().into_iter().any(|v| th.rdu.contains(v)) {
        return Err(Error::Config(format!("B = {} involves variables", th.rdu)));
    }
    let regular: Vec<bool> = th
        .systems
        .iter()
        .map(|s| is_regular_system(s.chain.polys(), &s.inequation))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut trials = Vec::with_capacity(cfg.trials);
    let mut attempts = 0usize;
    let limit = cfg.trials.saturating_mul(1000);
    while trials.len() < cfg.trials {
        if attempts >= limit {
            return Err(Error::RduVanishes);
        }
        attempts += 1;
        let values: Vec<BigInt> = (0..ctx.nparams())
            .map(|_| BigInt::from(rng.gen_range(-cfg.bound..=cfg.bound)))
            .collect();
        let a = SpecPoint::new(ctx, values)?;
        let b = th
            .rdu
            .specialize(&a.assignment())
            .constant_value()
            .expect("B is free of variables");
        if b.is_zero() {
            continue;
        }
        let Some(p) = [cfg.prime, cfg.alternate]
            .into_iter()
            .find(|&p| reduce(&b, p) != 0 && guard_ok(&th.guard, p))
        else {
            continue;
        };
        trials.push(decomposition_trial(polys, th, &regular, &a, p, cfg.budget)?);
    }
    Ok(VerifyReport::from_trials(trials))
}

/// Compare `V(P(a))` with the union of `V(C(a) \ I(C)(a))` over the
/// non-contradictory chains. Skipped when a contradictory polynomial
/// vanishes at `a` modulo `p`.
pub fn check_wu_at(
    polys: &[Polynomial],
    wu: &WuDecomposition,
    a: &SpecPoint,
    p: u64,
    budget: u128,
) -> Result<TrialRecord> {
    let ctx = first_context(polys)?;
    if !is_prime(p) || !guard_ok(&wu.guard, p) {
        return Err(Error::BadPrime(p));
    }
    check_budget(ctx.nvars(), p, budget)?;
    let at = a.assignment();
    let rec = TrialRecord::new(a, p);
    for c in wu.contradictory() {
        same_context(ctx, c.context())?;
        let v = c.specialize(&at);
        if !v.is_constant() {
            return Err(Error::Internal(format!(
                "contradictory polynomial {c} involves variables"
            )));
        }
        if reduce(&v.constant_value().unwrap_or_default(), p) == 0 {
            return Ok(rec.skipped("contradictory polynomial vanishes at the point"));
        }
    }
    let pieces: Vec<_> = wu
        .non_contradictory()
        .map(|t| {
            (
                specialize_all(t.polys(), &at),
                t.initial_product().specialize(&at),
            )
        })
        .collect();
    compare(ctx, polys, &pieces, &at, rec, p)
}

/// Check `V(P(a)) = V(C(a) \ I(a)) ∪ ⋃_i V(P(a), C(a), I_i(a))` for a
/// characteristic set `C` of `P` with initials `I_i` and product `I`.
pub fn check_char_set_at(
    polys: &[Polynomial],
    chain: &TriangularSet,
    a: &SpecPoint,
    p: u64,
    budget: u128,
) -> Result<TrialRecord> {
    let ctx = first_context(polys)?;
    same_context(ctx, chain.context())?;
    if !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    check_budget(ctx.nvars(), p, budget)?;
    let at = a.assignment();
    let c = specialize_all(chain.polys(), &at);
    let mut pieces = vec![(c.clone(), chain.initial_product().specialize(&at))];
    let mut base = specialize_all(polys, &at);
    base.extend(c);
    for init in chain.initials() {
        let mut t = base.clone();
        t.push(init.specialize(&at));
        pieces.push((t, Polynomial::one(ctx)));
    }
    compare(ctx, polys, &pieces, &at, TrialRecord::new(a, p), p)
}

fn compare(
    ctx: &Arc<Context>,
    polys: &[Polynomial],
    pieces: &[(Vec<Polynomial>, Polynomial)],
    at: &[(Var, BigInt)],
    mut rec: TrialRecord,
    p: u64,
) -> Result<TrialRecord> {
    let lhs = variety(ctx, &specialize_all(polys, at), p)?;
    let rhs = union_of_quasi(ctx, pieces, p)?;
    let witness = first_difference(ctx, &lhs, &rhs);
    rec.clause("identity", witness.is_none());
    rec.witness = witness;
    Ok(rec)
}
