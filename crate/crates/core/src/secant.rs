//! User-facing dimension and defect computations for secant varieties of the
//! varieties of degree-d completely decomposable forms in projective n-space.
//!
//! Cheap certainties come first: linear and quadratic forms have closed
//! forms, two or fewer variables and the large-n regime are settled results.
//! Everything else goes through one randomized tangent-span rank, which can
//! certify nondefectivity but never defectivity.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::numbers::binomial;
use crate::statements::{
    evaluate_statement, EvalConfig, Family, StatementParams, Verdict as StatementVerdict,
};
use crate::numbers::FunctionSpec;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecantQuery {
    pub n: u32,
    pub d: u32,
    pub s: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecantVerdict {
    Nondefective,
    DefectiveByClosedForm,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    ClosedForm,
    Rank,
    KnownResult,
}

#[derive(Clone, Debug)]
pub struct SecantReport {
    pub query: SecantQuery,
    pub expected_projective_dim: BigUint,
    /// Exact for closed-form and known results; a lower bound otherwise.
    pub achieved_projective_dim: BigUint,
    pub verdict: SecantVerdict,
    /// Nonzero only alongside `DefectiveByClosedForm`.
    pub defect: BigUint,
    pub provenance: Provenance,
    pub seed: u64,
    pub prime: u32,
}

/// `min(s(dn+1), C(n+d,d)) - 1`. Meaningful for `s >= 1`.
pub fn expected_projective_dim(q: &SecantQuery) -> BigUint {
    let span = BigUint::from(q.s) * BigUint::from(q.d as u64 * q.n as u64 + 1);
    let ambient = binomial((q.n + q.d) as i64, q.d as i64);
    span.min(ambient).max(BigUint::one()) - BigUint::one()
}

/// Closed-form defect of the s-th secant variety of the quadric split
/// variety: `2s(s-1)` below the balance point `C(n+2,2)/(2n+1)`,
/// `C(n-2s+2, 2)` between the balance point and `n/2`, zero otherwise.
/// Boundary comparisons are exact (integer cross-multiplication).
pub fn d2_defect(n: u32, s: u64) -> BigUint {
    if s == 0 {
        return BigUint::zero();
    }
    let ambient = binomial((n + 2) as i64, 2);
    // s <= C(n+2,2) / (2n+1)  <=>  s * (2n+1) <= C(n+2,2)
    let lhs = BigUint::from(s) * BigUint::from(2 * n as u64 + 1);
    if lhs <= ambient {
        return BigUint::from(2 * s) * BigUint::from(s - 1);
    }
    // balance point < s <= n/2
    if 2 * s <= n as u64 {
        return binomial(n as i64 - 2 * s as i64 + 2, 2);
    }
    BigUint::zero()
}

/// Decide the dimension of the secant variety. Dispatch order: degree-1 and
/// degree-2 closed forms, the settled small-n and large-n families, then a
/// randomized rank certificate.
pub fn secant_dim(q: &SecantQuery, cfg: &EvalConfig) -> Result<SecantReport> {
    if q.s == 0 || q.n == 0 || q.d == 0 {
        return Err(crate::Error::InvalidParams(
            "need n >= 1, d >= 1, s >= 1".into(),
        ));
    }
    let expected = expected_projective_dim(q);
    let mut report = SecantReport {
        query: *q,
        expected_projective_dim: expected.clone(),
        achieved_projective_dim: expected.clone(),
        verdict: SecantVerdict::Nondefective,
        defect: BigUint::zero(),
        provenance: Provenance::ClosedForm,
        seed: cfg.seed,
        prime: cfg.prime.get(),
    };
    if q.d == 1 {
        // every linear form splits; the variety is all of projective n-space
        return Ok(report);
    }
    if q.d == 2 {
        let defect = d2_defect(q.n, q.s);
        if !defect.is_zero() {
            report.achieved_projective_dim = expected - defect.clone();
            report.verdict = SecantVerdict::DefectiveByClosedForm;
            report.defect = defect;
        }
        return Ok(report);
    }
    if q.n <= 2 {
        // one variable: binary forms all split; two variables: settled
        report.provenance = Provenance::KnownResult;
        return Ok(report);
    }
    if 3 * (q.s.saturating_sub(1)) <= q.n as u64 {
        // many variables relative to s: settled
        report.provenance = Provenance::KnownResult;
        return Ok(report);
    }

    let params = StatementParams {
        family: Family::A,
        i: 0,
        n: q.n,
        d: q.d,
        l: 1,
        s: FunctionSpec::Constant(q.s as i64),
        t: FunctionSpec::zero(),
        u: FunctionSpec::zero(),
        v: FunctionSpec::zero(),
    };
    let outcome = evaluate_statement(&params, cfg)?;
    report.provenance = Provenance::Rank;
    match outcome.verdict {
        StatementVerdict::Verified => Ok(report),
        StatementVerdict::Inconclusive => {
            report.verdict = SecantVerdict::Inconclusive;
            report.achieved_projective_dim = if outcome.achieved_rank > 0 {
                BigUint::from(outcome.achieved_rank as u64 - 1)
            } else {
                BigUint::zero()
            };
            Ok(report)
        }
    }
}

impl SecantReport {
    /// The stable JSON shape used by the CLI and the certificate cache.
    /// Dimensions are decimal strings so that arbitrarily large ambient
    /// spaces serialize exactly.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.query.n,
            "d": self.query.d,
            "s": self.query.s,
            "expected": self.expected_projective_dim.to_string(),
            "achieved": self.achieved_projective_dim.to_string(),
            "verdict": match self.verdict {
                SecantVerdict::Nondefective => "nondefective",
                SecantVerdict::DefectiveByClosedForm => "defective_closed_form",
                SecantVerdict::Inconclusive => "inconclusive",
            },
            "defect": self.defect.to_string(),
            "provenance": match self.provenance {
                Provenance::ClosedForm => "closed_form",
                Provenance::Rank => "rank",
                Provenance::KnownResult => "known_result",
            },
            "seed": self.seed,
            "prime": self.prime,
        })
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self.verdict, SecantVerdict::Inconclusive)
    }

    pub fn achieved_u64(&self) -> Option<u64> {
        self.achieved_projective_dim.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_dim_examples() {
        assert_eq!(
            expected_projective_dim(&SecantQuery { n: 5, d: 3, s: 2 }),
            BigUint::from(31u32)
        );
        assert_eq!(
            expected_projective_dim(&SecantQuery { n: 3, d: 28, s: 52 }),
            BigUint::from(4419u32)
        );
        for s in 1..5u64 {
            assert_eq!(
                expected_projective_dim(&SecantQuery { n: 1, d: 7, s }),
                BigUint::from(7u32)
            );
        }
    }

    #[test]
    fn d2_defect_examples() {
        assert_eq!(d2_defect(4, 2), BigUint::one());
        assert_eq!(d2_defect(10, 2), BigUint::from(4u32));
        for n in 1..12 {
            assert_eq!(d2_defect(n, 1), BigUint::zero());
        }
        // nondefective above n/2
        assert_eq!(d2_defect(4, 3), BigUint::zero());
        assert_eq!(d2_defect(3, 2), BigUint::zero());
    }

    #[test]
    fn secant_dim_dispatch() {
        let cfg = EvalConfig::default();

        let r = secant_dim(&SecantQuery { n: 1, d: 7, s: 1 }, &cfg).unwrap();
        assert_eq!(r.verdict, SecantVerdict::Nondefective);
        assert_eq!(r.achieved_projective_dim, BigUint::from(7u32));

        let r = secant_dim(&SecantQuery { n: 4, d: 2, s: 2 }, &cfg).unwrap();
        assert_eq!(r.verdict, SecantVerdict::DefectiveByClosedForm);
        assert_eq!(r.defect, BigUint::one());
        assert_eq!(r.achieved_projective_dim, BigUint::from(13u32));
        assert_eq!(r.provenance, Provenance::ClosedForm);

        let r = secant_dim(&SecantQuery { n: 5, d: 3, s: 2 }, &cfg).unwrap();
        assert_eq!(r.verdict, SecantVerdict::Nondefective);
        assert_eq!(r.achieved_projective_dim, BigUint::from(31u32));
        assert_eq!(r.provenance, Provenance::KnownResult);

        let r = secant_dim(&SecantQuery { n: 2, d: 4, s: 3 }, &cfg).unwrap();
        assert_eq!(r.verdict, SecantVerdict::Nondefective);
        assert_eq!(r.achieved_projective_dim, BigUint::from(14u32));

        // forces the rank route: n=3, d=4, s=3 (not covered by short-circuits)
        let r = secant_dim(&SecantQuery { n: 3, d: 4, s: 3 }, &cfg).unwrap();
        assert_eq!(r.provenance, Provenance::Rank);
        assert_eq!(r.verdict, SecantVerdict::Nondefective);
    }

    #[test]
    fn achieved_dim_monotone_in_s() {
        let cfg = EvalConfig::default();
        for (n, d) in [(3u32, 3u32), (3, 4), (4, 3)] {
            let mut prev = BigUint::zero();
            for s in 1..=5u64 {
                let r = secant_dim(&SecantQuery { n, d, s }, &cfg).unwrap();
                assert!(
                    r.achieved_projective_dim >= prev,
                    "dim dropped at n={n} d={d} s={s}"
                );
                prev = r.achieved_projective_dim;
            }
        }
    }
}
