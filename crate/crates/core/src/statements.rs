//! Statement evaluation: build the specialized generator sets, compute the
//! expected count, classify abundancy, and decide truth by exact rank with a
//! target-rank early exit.
//!
//! A statement asserts that a specific randomly-specialized subspace of the
//! degree-d forms attains its expected dimension `min(count, ambient)`.
//! Because random specialization only bounds the generic rank from below, a
//! full-rank witness Verifies the statement while a shortfall is merely
//! Inconclusive; Inconclusive never certifies falsity.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::forms::{
    generic_linear_forms, mul_linear, mul_monomial, pi, BasisTower, FormTuple, HomPoly,
    LinearForm,
};
use crate::gfp::{PrimeModulus, RankBuilder, DEFAULT_PRIME};
use crate::numbers::{binomial, binomial_int, nabla, FunctionSpec};
use crate::{mix_seed, Error, Result};

/// The two statement families: fixed-dimension induction specializes the
/// degree (family A), fixed-degree induction specializes the ambient
/// dimension (family B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
        }
    }
}

/// Parameters of one statement: specialization depth `i`, ambient `n`,
/// degree `d`, restriction step `l` (ignored when `i = 0`), and the four
/// count functions.
#[derive(Clone, Debug)]
pub struct StatementParams {
    pub family: Family,
    pub i: u32,
    pub n: u32,
    pub d: u32,
    pub l: u32,
    pub s: FunctionSpec,
    pub t: FunctionSpec,
    pub u: FunctionSpec,
    pub v: FunctionSpec,
}

/// Comparison of the expected count against the ambient dimension.
/// Equiabundant statements are both sub- and superabundant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Abundancy {
    Subabundant,
    Superabundant,
    Equiabundant,
}

impl Abundancy {
    pub fn is_subabundant(self) -> bool {
        matches!(self, Abundancy::Subabundant | Abundancy::Equiabundant)
    }

    pub fn is_superabundant(self) -> bool {
        matches!(self, Abundancy::Superabundant | Abundancy::Equiabundant)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    Inconclusive,
}

/// Everything a statement evaluation produced, sufficient to replay it.
#[derive(Clone, Debug)]
pub struct StatementOutcome {
    pub a_value: BigUint,
    pub ambient: BigUint,
    pub target: BigUint,
    pub abundancy: Abundancy,
    pub achieved_rank: usize,
    pub verdict: Verdict,
    pub seed: u64,
    pub prime: u32,
    pub attempts: u32,
}

/// Evaluation configuration: modulus, base seed, retry budget, and the
/// matrix-size guard.
#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    pub prime: PrimeModulus,
    pub seed: u64,
    pub max_attempts: u32,
    pub cell_budget: u64,
}

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_MAX_ATTEMPTS: u32 = 3;
pub const DEFAULT_CELL_BUDGET: u64 = 200_000_000;

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            prime: PrimeModulus::new(DEFAULT_PRIME).expect("default prime"),
            seed: DEFAULT_SEED,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            cell_budget: DEFAULT_CELL_BUDGET,
        }
    }
}

impl EvalConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Evaluated backward-difference counts for one parameter set. `spec_*` are
/// the depth-(i-1) counts that size the specialized blocks, `top_*` the
/// depth-i counts that size the unspecialized blocks.
struct Counts {
    spec_s: i64,
    spec_t: i64,
    spec_u: i64,
    spec_v: i64,
    top_s: i64,
    top_t: i64,
    top_u: i64,
    top_v: i64,
}

impl StatementParams {
    /// Point at which the count functions are evaluated: the degree for
    /// family A, the ambient dimension for family B.
    fn eval_point(&self) -> i64 {
        match self.family {
            Family::A => self.d as i64,
            Family::B => self.n as i64,
        }
    }

    fn counts(&self) -> Result<Counts> {
        let x = self.eval_point();
        let l = self.l as i64;
        let i = self.i;
        let (spec_s, spec_t, spec_u, spec_v) = if i > 0 {
            (
                nabla(&self.s, i - 1, l, x - l)?,
                nabla(&self.t, i - 1, l, x - l)?,
                nabla(&self.u, i - 1, l, x - l)?,
                nabla(&self.v, i - 1, l, x - l)?,
            )
        } else {
            (0, 0, 0, 0)
        };
        Ok(Counts {
            spec_s,
            spec_t,
            spec_u,
            spec_v,
            top_s: nabla(&self.s, i, l, x)?,
            top_t: nabla(&self.t, i, l, x)?,
            top_u: nabla(&self.u, i, l, x)?,
            top_v: nabla(&self.v, i, l, x)?,
        })
    }

    /// Validate the parameter set: depth within range, step small enough for
    /// the specialized tuples to exist, and every block count nonnegative.
    pub fn validate(&self) -> Result<()> {
        self.checked_counts().map(|_| ())
    }

    fn checked_counts(&self) -> Result<Counts> {
        if self.n == 0 || self.d == 0 {
            return Err(Error::InvalidParams("need n >= 1 and d >= 1".into()));
        }
        match self.family {
            Family::A => {
                if self.i > self.n {
                    return Err(Error::InvalidParams(format!(
                        "depth i={} exceeds n={}",
                        self.i, self.n
                    )));
                }
                // at positive depth the specialized point and pencil blocks
                // are dominated by the layer subspace only for d >= l+1
                if self.i > 0 && self.d < self.l + 1 {
                    return Err(Error::InvalidParams(format!(
                        "need d >= l+1 at positive depth (d={}, l={})",
                        self.d, self.l
                    )));
                }
            }
            Family::B => {
                if self.i > self.d {
                    return Err(Error::InvalidParams(format!(
                        "depth i={} exceeds d={}",
                        self.i, self.d
                    )));
                }
                if self.i > 0 && self.l > self.n {
                    return Err(Error::InvalidParams(format!(
                        "step l={} exceeds ambient n={}",
                        self.l, self.n
                    )));
                }
            }
        }
        if self.i > 0 && self.l == 0 {
            return Err(Error::InvalidParams("step l must be >= 1 when i > 0".into()));
        }
        let counts = self.counts()?;
        for (label, c) in [
            ("s", counts.spec_s),
            ("t", counts.spec_t),
            ("u", counts.spec_u),
            ("v", counts.spec_v),
            ("s", counts.top_s),
            ("t", counts.top_t),
            ("u", counts.top_u),
            ("v", counts.top_v),
        ] {
            if c < 0 {
                return Err(Error::InvalidParams(format!(
                    "negative difference count for {label}: {c}"
                )));
            }
        }
        Ok(counts)
    }

    /// Canonical descriptor text, e.g.
    /// `A:i=0:n=3:d=3:s=const:2:t=const:0:u=const:0:v=const:0`.
    /// The step is omitted at depth 0 where it is ignored.
    pub fn descriptor(&self) -> String {
        let l = if self.i > 0 {
            format!("l={}:", self.l)
        } else {
            String::new()
        };
        format!(
            "{}:i={}:n={}:d={}:{}s={}:t={}:u={}:v={}",
            self.family.letter(),
            self.i,
            self.n,
            self.d,
            l,
            self.s,
            self.t,
            self.u,
            self.v
        )
    }

    /// Parse a descriptor. Field values may themselves contain colons (the
    /// function-spec syntax does), so tokens that do not start a known
    /// statement field are folded back into the value being built.
    pub fn parse_descriptor(text: &str) -> Result<Self> {
        let mut tokens = text.trim().split(':');
        let family = match tokens.next() {
            Some("A") | Some("a") => Family::A,
            Some("B") | Some("b") => Family::B,
            other => {
                return Err(Error::Parse(format!(
                    "descriptor must start with family A or B, got {other:?}"
                )))
            }
        };
        const FIELDS: [&str; 8] = ["i", "n", "d", "l", "s", "t", "u", "v"];
        let mut pairs: Vec<(String, String)> = Vec::new();
        for token in tokens {
            let starts_field = token
                .split_once('=')
                .is_some_and(|(k, _)| FIELDS.contains(&k));
            if starts_field {
                let (k, v) = token.split_once('=').expect("checked");
                pairs.push((k.to_string(), v.to_string()));
            } else if let Some(last) = pairs.last_mut() {
                last.1.push(':');
                last.1.push_str(token);
            } else {
                return Err(Error::Parse(format!("unexpected token `{token}`")));
            }
        }
        let mut i = None;
        let mut n = None;
        let mut d = None;
        let mut l: u32 = 1;
        let mut fns: [Option<FunctionSpec>; 4] = [None, None, None, None];
        for (k, v) in pairs {
            match k.as_str() {
                "i" | "n" | "d" | "l" => {
                    let parsed: u32 = v
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer for {k}: `{v}`")))?;
                    match k.as_str() {
                        "i" => i = Some(parsed),
                        "n" => n = Some(parsed),
                        "d" => d = Some(parsed),
                        _ => l = parsed,
                    }
                }
                "s" => fns[0] = Some(v.parse()?),
                "t" => fns[1] = Some(v.parse()?),
                "u" => fns[2] = Some(v.parse()?),
                "v" => fns[3] = Some(v.parse()?),
                _ => unreachable!("filtered above"),
            }
        }
        let missing = |what: &str| Error::Parse(format!("descriptor missing {what}"));
        let [s, t, u, v] = fns;
        Ok(Self {
            family,
            i: i.ok_or_else(|| missing("i="))?,
            n: n.ok_or_else(|| missing("n="))?,
            d: d.ok_or_else(|| missing("d="))?,
            l,
            s: s.unwrap_or_else(FunctionSpec::zero),
            t: t.unwrap_or_else(FunctionSpec::zero),
            u: u.unwrap_or_else(FunctionSpec::zero),
            v: v.unwrap_or_else(FunctionSpec::zero),
        })
    }

    /// The ambient dimension `C(n+d, d)` of the space of degree-d forms.
    pub fn ambient(&self) -> BigUint {
        binomial((self.n + self.d) as i64, self.d as i64)
    }
}

/// The expected count of the statement: inclusion-exclusion over the
/// specialized layers plus the per-block dimension contributions.
///
/// Family A (counts evaluated at the degree d):
/// `sum_{j=1..i} (-1)^(j-1) C(i,j) C(n+d-jl, d-jl) + i*l*n*spec_s + i*l*spec_u
///  + (dn+1)*top_s + top_t + (d+1)*top_u + (n+1)*top_v`.
///
/// Family B (counts evaluated at the ambient n) swaps the roles the step
/// plays: restricting the variables by l costs `d*l` per specialized tangent
/// block and `l` per specialized span block, so the companion coefficients
/// are `i*l*d*spec_s + i*l*spec_v`, with the inclusion-exclusion binomial
/// `C(n+d-jl, n-jl)`. This is the version under which the difference
/// identity below holds and the restriction induction goes through.
pub fn a_value(params: &StatementParams) -> Result<BigUint> {
    let counts = params.checked_counts()?;
    let n = params.n as i64;
    let d = params.d as i64;
    let l = params.l as i64;
    let i = params.i as i64;
    let mut acc = BigInt::zero();
    for j in 1..=i {
        let binom = match params.family {
            Family::A => binomial_int(n + d - j * l, d - j * l),
            Family::B => binomial_int(n + d - j * l, n - j * l),
        };
        let term = binomial_int(i, j) * binom;
        if (j - 1) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let (spec_tangent_coeff, spec_span_count) = match params.family {
        Family::A => (i * l * n, counts.spec_u),
        Family::B => (i * l * d, counts.spec_v),
    };
    acc += BigInt::from(spec_tangent_coeff) * BigInt::from(counts.spec_s);
    acc += BigInt::from(i * l) * BigInt::from(spec_span_count);
    acc += BigInt::from(d * n + 1) * BigInt::from(counts.top_s);
    acc += BigInt::from(counts.top_t);
    acc += BigInt::from(d + 1) * BigInt::from(counts.top_u);
    acc += BigInt::from(n + 1) * BigInt::from(counts.top_v);
    if acc.is_negative() {
        return Err(Error::InvalidParams(format!(
            "expected count is negative: {acc}"
        )));
    }
    Ok(acc.to_biguint().expect("nonnegative"))
}

/// Compare the expected count against the ambient dimension.
pub fn abundancy(params: &StatementParams) -> Result<Abundancy> {
    let a = a_value(params)?;
    let ambient = params.ambient();
    Ok(match a.cmp(&ambient) {
        std::cmp::Ordering::Less => Abundancy::Subabundant,
        std::cmp::Ordering::Greater => Abundancy::Superabundant,
        std::cmp::Ordering::Equal => Abundancy::Equiabundant,
    })
}

/// Reduced generator set for a family-A statement. Blocks whose span is
/// contained in an earlier block are dropped, and the specialized tangent
/// blocks are trimmed to the factors that actually leave the common-divisor
/// subspace:
///
/// 1. for each specialization layer j: the common product times every
///    monomial of degree d-l;
/// 2. per specialized tangent tuple, the last l factor-dropping products,
///    each multiplied by n fresh generic linear forms;
/// 3. per specialized span tuple, the last l single products;
/// 4. the unspecialized blocks: full tangents (every factor-dropping product
///    times every variable), single point products, span products, and
///    pencil products times every variable.
pub fn build_a_generators<R: rand::Rng>(
    params: &StatementParams,
    p: PrimeModulus,
    rng: &mut R,
) -> Result<Vec<HomPoly>> {
    if params.family != Family::A {
        return Err(Error::InvalidParams("family A expected".into()));
    }
    let counts = params.checked_counts()?;
    let n = params.n as usize;
    let d = params.d as usize;
    let l = params.l as usize;
    let i = params.i as usize;
    let tower = BasisTower::new(n, d + 1);
    let r1 = LinearForm::full_basis(n, p);
    let target = tower.basis(d);
    let mut gens: Vec<HomPoly> = Vec::new();

    for _j in 0..i {
        let g = generic_linear_forms(&r1, l, p, rng)?;
        let g_prod = crate::forms::product(&g, &tower, p)?;
        // layer subspace: (prod g) * R_{d-l}
        let low = tower.basis(d - l);
        for mi in 0..low.size() {
            gens.push(mul_monomial(&g_prod, low.exponents(mi), target)?);
        }
        // specialized tangent tuples, trimmed to the factors inside g
        for _k in 0..counts.spec_s {
            let f = generic_linear_forms(&r1, d - l, p, rng)?;
            let fg = f.concat(&g);
            for m in (d - l + 1)..=d {
                let pm = pi(m, &fg, &tower, p)?;
                let fresh = generic_linear_forms(&r1, n, p, rng)?;
                for lf in fresh.iter() {
                    gens.push(mul_linear(&pm, lf, target, p)?);
                }
            }
        }
        // specialized span tuples, same trimming
        for _k in 0..counts.spec_u {
            let f = generic_linear_forms(&r1, d - l + 1, p, rng)?;
            let fg = f.concat(&g);
            for m in (d - l + 2)..=(d + 1) {
                gens.push(pi(m, &fg, &tower, p)?);
            }
        }
    }
    push_unspecialized_blocks(&counts, d, &tower, &r1, p, rng, &mut gens)?;
    Ok(gens)
}

/// Generator set for a family-B statement: each specialization layer
/// restricts to a generic subspace of the linear forms of codimension l and
/// contributes a monomial basis of its degree-d symmetric power, plus
/// tangent/point/span/pencil blocks with tuples drawn inside the subspace.
/// The unspecialized blocks are as in family A.
pub fn build_b_generators<R: rand::Rng>(
    params: &StatementParams,
    p: PrimeModulus,
    rng: &mut R,
) -> Result<Vec<HomPoly>> {
    if params.family != Family::B {
        return Err(Error::InvalidParams("family B expected".into()));
    }
    let counts = params.checked_counts()?;
    let n = params.n as usize;
    let d = params.d as usize;
    let l = params.l as usize;
    let i = params.i as usize;
    let tower = BasisTower::new(n, d + 1);
    let r1 = LinearForm::full_basis(n, p);
    let target = tower.basis(d);
    let mut gens: Vec<HomPoly> = Vec::new();

    for _j in 0..i {
        // generic subspace V of dimension n-l+1
        let v_basis: Vec<LinearForm> = generic_linear_forms(&r1, n - l + 1, p, rng)?
            .iter()
            .cloned()
            .collect();
        // monomial basis of S_d V: push products of d basis elements indexed
        // by the degree-d monomials in n-l+1 letters
        let sub_index = MonomialProducts::new(n - l, d);
        for exps in sub_index.iter() {
            let mut factors = Vec::with_capacity(d);
            for (var, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    factors.push(v_basis[var].clone());
                }
            }
            gens.push(crate::forms::product(&FormTuple::new(factors), &tower, p)?);
        }
        // specialized blocks with tuples inside V
        for _k in 0..counts.spec_s {
            let f = generic_linear_forms(&v_basis, d, p, rng)?;
            for m in 1..=d {
                let pm = pi(m, &f, &tower, p)?;
                for var in &r1 {
                    gens.push(mul_linear(&pm, var, target, p)?);
                }
            }
        }
        for _k in 0..counts.spec_t {
            let f = generic_linear_forms(&v_basis, d + 1, p, rng)?;
            gens.push(pi(1, &f, &tower, p)?);
        }
        for _k in 0..counts.spec_u {
            let f = generic_linear_forms(&v_basis, d + 1, p, rng)?;
            for m in 1..=(d + 1) {
                gens.push(pi(m, &f, &tower, p)?);
            }
        }
        for _k in 0..counts.spec_v {
            let f = generic_linear_forms(&v_basis, d, p, rng)?;
            let p1 = pi(1, &f, &tower, p)?;
            for var in &r1 {
                gens.push(mul_linear(&p1, var, target, p)?);
            }
        }
    }
    push_unspecialized_blocks(&counts, d, &tower, &r1, p, rng, &mut gens)?;
    Ok(gens)
}

/// Monomial exponent vectors of fixed degree in a smaller variable set,
/// reused for the restricted symmetric powers of family B.
struct MonomialProducts {
    exps: Vec<Box<[u16]>>,
}

impl MonomialProducts {
    fn new(n: usize, d: usize) -> Self {
        let basis = crate::forms::MonomialBasis::new(n, d);
        Self {
            exps: (0..basis.size())
                .map(|i| basis.exponents(i).to_vec().into_boxed_slice())
                .collect(),
        }
    }

    fn iter(&self) -> std::slice::Iter<'_, Box<[u16]>> {
        self.exps.iter()
    }
}

#[allow(clippy::too_many_arguments)]
fn push_unspecialized_blocks<R: rand::Rng>(
    counts: &Counts,
    d: usize,
    tower: &BasisTower,
    r1: &[LinearForm],
    p: PrimeModulus,
    rng: &mut R,
    gens: &mut Vec<HomPoly>,
) -> Result<()> {
    let target = tower.basis(d);
    for _j in 0..counts.top_s {
        let f = generic_linear_forms(r1, d, p, rng)?;
        for m in 1..=d {
            let pm = pi(m, &f, tower, p)?;
            for var in r1 {
                gens.push(mul_linear(&pm, var, target, p)?);
            }
        }
    }
    for _j in 0..counts.top_t {
        let f = generic_linear_forms(r1, d + 1, p, rng)?;
        gens.push(pi(1, &f, tower, p)?);
    }
    for _j in 0..counts.top_u {
        let f = generic_linear_forms(r1, d + 1, p, rng)?;
        for m in 1..=(d + 1) {
            gens.push(pi(m, &f, tower, p)?);
        }
    }
    for _j in 0..counts.top_v {
        let f = generic_linear_forms(r1, d, p, rng)?;
        let p1 = pi(1, &f, tower, p)?;
        for var in r1 {
            gens.push(mul_linear(&p1, var, target, p)?);
        }
    }
    Ok(())
}

/// Number of generators the builders will emit, used for the capacity guard
/// before any allocation happens.
fn generator_count(params: &StatementParams, counts: &Counts) -> u64 {
    let n = params.n as u64;
    let d = params.d as u64;
    let l = params.l as u64;
    let i = params.i as u64;
    let unspec = counts.top_s as u64 * d * (n + 1)
        + counts.top_t as u64
        + counts.top_u as u64 * (d + 1)
        + counts.top_v as u64 * (n + 1);
    if i == 0 {
        return unspec;
    }
    let spec = match params.family {
        Family::A => {
            let low = binomial(
                params.n as i64 + params.d as i64 - params.l as i64,
                params.d as i64 - params.l as i64,
            )
            .to_u64()
            .unwrap_or(u64::MAX);
            i * low + i * (counts.spec_s as u64 * l * n + counts.spec_u as u64 * l)
        }
        Family::B => {
            let sub = binomial(
                params.n as i64 - params.l as i64 + params.d as i64,
                params.d as i64,
            )
            .to_u64()
            .unwrap_or(u64::MAX);
            i * sub
                + i * (counts.spec_s as u64 * d * (n + 1)
                    + counts.spec_t as u64
                    + counts.spec_u as u64 * (d + 1)
                    + counts.spec_v as u64 * (n + 1))
        }
    };
    unspec.saturating_add(spec)
}

/// Evaluate a statement: build generators, absorb them in shuffled order into
/// an incremental rank with early exit at the target, and retry with fresh
/// randomness up to `max_attempts` times. A Verified verdict certifies the
/// statement; Inconclusive only reports the best rank lower bound seen.
pub fn evaluate_statement(params: &StatementParams, cfg: &EvalConfig) -> Result<StatementOutcome> {
    let counts = params.checked_counts()?;
    let a = a_value(params)?;
    let ambient = params.ambient();
    let target = a.clone().min(ambient.clone());
    let abundancy = match a.cmp(&ambient) {
        std::cmp::Ordering::Less => Abundancy::Subabundant,
        std::cmp::Ordering::Greater => Abundancy::Superabundant,
        std::cmp::Ordering::Equal => Abundancy::Equiabundant,
    };

    let cols = ambient
        .to_u64()
        .filter(|&c| c <= cfg.cell_budget)
        .ok_or_else(|| Error::Capacity {
            needed: ambient.to_u64().unwrap_or(u64::MAX),
            budget: cfg.cell_budget,
        })?;
    let rows = generator_count(params, &counts);
    let needed = rows.saturating_mul(cols);
    if needed > cfg.cell_budget {
        return Err(Error::Capacity {
            needed,
            budget: cfg.cell_budget,
        });
    }
    let target_usize = target.to_usize().expect("target bounded by ambient");

    let mut achieved = 0usize;
    let mut attempts = 0u32;
    let mut verdict = Verdict::Inconclusive;
    for attempt in 0..cfg.max_attempts.max(1) {
        attempts = attempt + 1;
        let attempt_seed = mix_seed(cfg.seed, attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed);
        let gens = match params.family {
            Family::A => build_a_generators(params, cfg.prime, &mut rng)?,
            Family::B => build_b_generators(params, cfg.prime, &mut rng)?,
        };
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.shuffle(&mut rng);
        let mut builder = RankBuilder::new(cfg.prime, cols as usize);
        for idx in order {
            builder.absorb(gens[idx].coeffs())?;
            if builder.current_rank() == target_usize {
                break;
            }
        }
        achieved = achieved.max(builder.current_rank());
        if builder.current_rank() == target_usize {
            verdict = Verdict::Verified;
            break;
        }
    }

    Ok(StatementOutcome {
        a_value: a,
        ambient,
        target,
        abundancy,
        achieved_rank: achieved,
        verdict,
        seed: cfg.seed,
        prime: cfg.prime.get(),
        attempts,
    })
}
