//! Exact combinatorics: arbitrary-precision binomials, Stirling numbers, the
//! backward-difference operator, and the integer-valued count functions
//! (constants, piecewise quadratics by residue class, and the named builtin
//! families s1, s2, ...) that parameterize statements and sweeps.
//!
//! Everything here is exact. Floating point is banned because floor/ceil
//! identities are part of the test surface.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational with enough headroom for every coefficient this crate uses.
pub type Rat = Ratio<i128>;

/// Default validity range for piecewise function specs: wide enough for every
/// sweep the drivers run.
pub const DEFAULT_VALIDITY: (i64, i64) = (0, 400);

/// Binomial coefficient with the zero convention: `C(a,b) = 0` whenever
/// `b < 0` or `a < b`. The convention lets alternating sums silently drop
/// terms whose arguments have gone negative, exactly as the count formulas
/// require.
pub fn binomial(a: i64, b: i64) -> BigUint {
    if b < 0 || a < b {
        return BigUint::zero();
    }
    let b = b.min(a - b); // symmetry keeps the loop short
    let mut acc = BigUint::one();
    for i in 1..=b {
        acc *= BigUint::from((a - b + i) as u64);
        acc /= BigUint::from(i as u64);
    }
    acc
}

pub fn binomial_int(a: i64, b: i64) -> BigInt {
    BigInt::from(binomial(a, b))
}

/// Word-sized binomial for backward-difference weights (orders stay small).
fn small_binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 1..=k as i128 {
        acc = acc * (n as i128 - k as i128 + i) / i;
    }
    acc
}

/// Stirling number of the second kind via the alternating sum
/// `(1/k!) * sum_j (-1)^(k-j) C(k,j) j^n`. Exact; `S(n,k) = 0` for `n < k`
/// and `S(n,n) = 1`.
pub fn stirling2(n: u32, k: u32) -> BigUint {
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = binomial_int(k as i64, j as i64) * BigInt::from(j).pow(n);
        if (k - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let mut kfact = BigInt::one();
    for i in 1..=k as i64 {
        kfact *= BigInt::from(i);
    }
    let (q, r) = num_integer::Integer::div_rem(&sum, &kfact);
    debug_assert!(r.is_zero(), "Stirling sum must be divisible by k!");
    debug_assert!(!q.is_negative());
    q.to_biguint().expect("nonnegative")
}

/// i-fold backward difference with step `l`:
/// `(nabla^i f)(x) = sum_{j=0..=i} (-1)^j C(i,j) f(x - j*l)`.
/// Order 0 returns `f` unchanged.
pub fn backward_difference<F>(f: F, order: u32, step: i64) -> impl Fn(i64) -> Result<i64>
where
    F: Fn(i64) -> Result<i64>,
{
    move |x: i64| {
        let mut acc: i128 = 0;
        for j in 0..=order {
            let w = small_binomial(order, j);
            let v = f(x - j as i64 * step)? as i128;
            if j % 2 == 0 {
                acc += w * v;
            } else {
                acc -= w * v;
            }
        }
        i64::try_from(acc).map_err(|_| Error::Overflow)
    }
}

/// Backward difference of a [`FunctionSpec`], evaluated at one point.
pub fn nabla(f: &FunctionSpec, order: u32, step: i64, x: i64) -> Result<i64> {
    backward_difference(|y| f.eval(y), order, step)(x)
}

/// The named builtin count families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinFn {
    S1,
    S2,
    S2pp,
    S1p,
    S2p,
    STilde,
    SUnder,
    SOver,
}

struct BuiltinData {
    name: &'static str,
    modulus: i64,
    denom: i64,
    /// per residue class: (a2, a1, a0) numerators over `denom`
    rows: &'static [(i64, i64, i64)],
}

const S1_DATA: BuiltinData = BuiltinData {
    name: "s1",
    modulus: 9,
    denom: 18,
    rows: &[
        (1, 5, 0),
        (1, 5, 12),
        (1, 5, 4),
        (1, 5, 12),
        (1, 5, 0),
        (1, 5, 4),
        (1, 5, 6),
        (1, 5, 6),
        (1, 5, 4),
    ],
};

// mixed-modulus family: classes divisible by 3 follow a mod-6 rule, the rest
// a mod-9 rule; both fit on a common mod-18 table
const S2_DATA: BuiltinData = BuiltinData {
    name: "s2",
    modulus: 18,
    denom: 18,
    rows: &[
        (1, 6, 18), // 0: d=0 mod 6
        (1, 7, 10), // 1: 1 mod 9
        (1, 7, 18), // 2: 2 mod 9
        (1, 6, 9),  // 3: 3 mod 6
        (1, 7, 10), // 4: 4 mod 9
        (1, 7, 12), // 5: 5 mod 9
        (1, 6, 18), // 6: 0 mod 6
        (1, 7, 10), // 7: 7 mod 9
        (1, 7, 6),  // 8: 8 mod 9
        (1, 6, 9),  // 9: 3 mod 6
        (1, 7, 10), // 10: 1 mod 9
        (1, 7, 18), // 11: 2 mod 9
        (1, 6, 18), // 12: 0 mod 6
        (1, 7, 10), // 13: 4 mod 9
        (1, 7, 12), // 14: 5 mod 9
        (1, 6, 9),  // 15: 3 mod 6
        (1, 7, 10), // 16: 7 mod 9
        (1, 7, 6),  // 17: 8 mod 9
    ],
};

const S2PP_DATA: BuiltinData = BuiltinData {
    name: "s2pp",
    modulus: 9,
    denom: 18,
    rows: &[
        (1, 7, 0),
        (1, 7, 10),
        (1, 7, 18),
        (1, 7, 6),
        (1, 7, 10),
        (1, 7, 12),
        (1, 7, 12),
        (1, 7, 10),
        (1, 7, 6),
    ],
};

const S1P_DATA: BuiltinData = BuiltinData {
    name: "s1p",
    modulus: 6,
    denom: 18,
    rows: &[
        (1, 3, 18),
        (1, 4, -5),
        (1, 5, 4),
        (1, 3, 0),
        (1, 4, 4),
        (1, 5, 4),
    ],
};

const S2P_DATA: BuiltinData = BuiltinData {
    name: "s2p",
    modulus: 6,
    denom: 18,
    rows: &[
        (1, 6, 18),
        (1, 7, 28),
        (1, 8, 16),
        (1, 6, 9),
        (1, 7, 10),
        (1, 8, 7),
    ],
};

const STILDE_DATA: BuiltinData = BuiltinData {
    name: "stilde",
    modulus: 6,
    denom: 24,
    rows: &[
        (1, 2, 0),
        (1, 4, -5),
        (1, 2, -8),
        (1, 4, 3),
        (1, 2, 0),
        (1, 4, 3),
    ],
};

/// per-class offsets of the mod-27 floor/ceil family; each entry is pinned by
/// the requirement that the quadratic hits floor(C(d+3,3)/(3d+1)) on its class
const A_TABLE: [i64; 27] = [
    0, -10, 4, -12, -4, 1, 3, 2, -2, -9, 8, -5, 6, -13, -8, -6, -7, -11, 9, -1, 13, -3, 5, 10,
    12, 11, 7,
];

fn sunder_rows() -> &'static [(i64, i64, i64)] {
    use std::sync::OnceLock;
    static ROWS: OnceLock<Vec<(i64, i64, i64)>> = OnceLock::new();
    ROWS.get_or_init(|| A_TABLE.iter().map(|&a| (3, 17, 2 * a)).collect())
}

fn sover_rows() -> &'static [(i64, i64, i64)] {
    use std::sync::OnceLock;
    static ROWS: OnceLock<Vec<(i64, i64, i64)>> = OnceLock::new();
    ROWS.get_or_init(|| A_TABLE.iter().map(|&a| (3, 17, 2 * a + 54)).collect())
}

impl BuiltinFn {
    pub const ALL: [BuiltinFn; 8] = [
        BuiltinFn::S1,
        BuiltinFn::S2,
        BuiltinFn::S2pp,
        BuiltinFn::S1p,
        BuiltinFn::S2p,
        BuiltinFn::STilde,
        BuiltinFn::SUnder,
        BuiltinFn::SOver,
    ];

    fn data(self) -> BuiltinData {
        match self {
            BuiltinFn::S1 => S1_DATA,
            BuiltinFn::S2 => S2_DATA,
            BuiltinFn::S2pp => S2PP_DATA,
            BuiltinFn::S1p => S1P_DATA,
            BuiltinFn::S2p => S2P_DATA,
            BuiltinFn::STilde => STILDE_DATA,
            BuiltinFn::SUnder => BuiltinData {
                name: "sunder",
                modulus: 27,
                denom: 54,
                rows: sunder_rows(),
            },
            BuiltinFn::SOver => BuiltinData {
                name: "sover",
                modulus: 27,
                denom: 54,
                rows: sover_rows(),
            },
        }
    }

    pub fn name(self) -> &'static str {
        self.data().name
    }

    pub fn by_name(name: &str) -> Option<BuiltinFn> {
        BuiltinFn::ALL.iter().copied().find(|b| b.name() == name)
    }

    fn eval(self, x: i64) -> Result<i64> {
        if x < 0 {
            return Err(Error::OutOfRange(format!("{}({x})", self.name())));
        }
        let d = self.data();
        let (a2, a1, a0) = d.rows[(x % d.modulus) as usize];
        let num = a2 as i128 * x as i128 * x as i128 + a1 as i128 * x as i128 + a0 as i128;
        if num % d.denom as i128 != 0 {
            return Err(Error::NonInteger(format!("{}({x})", self.name())));
        }
        i64::try_from(num / d.denom as i128).map_err(|_| Error::Overflow)
    }
}

/// An integer-valued function of one variable: a constant, a piecewise
/// quadratic by residue class with exact rational coefficients, or one of the
/// named builtin families.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    Constant(i64),
    Piecewise(PiecewiseSpec),
    Builtin(BuiltinFn),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseSpec {
    modulus: u32,
    a2: Rat,
    a1: Rat,
    a0: Vec<Rat>,
    lo: i64,
    hi: i64,
}

impl PiecewiseSpec {
    fn eval_rat(&self, x: i64) -> Rat {
        let r = x.rem_euclid(self.modulus as i64) as usize;
        let x = Rat::from_integer(x as i128);
        self.a2 * x * x + self.a1 * x + self.a0[r]
    }
}

impl FunctionSpec {
    pub fn zero() -> Self {
        FunctionSpec::Constant(0)
    }

    pub fn constant(c: i64) -> Result<Self> {
        if c < 0 {
            return Err(Error::InvalidParams(format!("constant {c} is negative")));
        }
        Ok(FunctionSpec::Constant(c))
    }

    pub fn builtin(b: BuiltinFn) -> Self {
        FunctionSpec::Builtin(b)
    }

    /// Piecewise quadratic over the default validity range. Construction
    /// checks that every point of the range evaluates to a nonnegative
    /// integer, so a malformed spec can never surprise at evaluation time.
    pub fn piecewise(modulus: u32, a2: Rat, a1: Rat, a0: Vec<Rat>) -> Result<Self> {
        Self::piecewise_with_range(modulus, a2, a1, a0, DEFAULT_VALIDITY)
    }

    pub fn piecewise_with_range(
        modulus: u32,
        a2: Rat,
        a1: Rat,
        a0: Vec<Rat>,
        range: (i64, i64),
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParams("piecewise modulus must be >= 1".into()));
        }
        if a0.len() != modulus as usize {
            return Err(Error::InvalidParams(format!(
                "expected {} constant terms, got {}",
                modulus,
                a0.len()
            )));
        }
        let spec = PiecewiseSpec {
            modulus,
            a2,
            a1,
            a0,
            lo: range.0,
            hi: range.1,
        };
        for x in range.0..=range.1 {
            let v = spec.eval_rat(x);
            if !v.is_integer() {
                return Err(Error::NonInteger(format!("piecewise spec at x={x}: {v}")));
            }
            if v.is_negative() {
                return Err(Error::InvalidParams(format!(
                    "piecewise spec is negative at x={x}: {v}"
                )));
            }
        }
        Ok(FunctionSpec::Piecewise(spec))
    }

    pub fn eval(&self, x: i64) -> Result<i64> {
        match self {
            FunctionSpec::Constant(c) => Ok(*c),
            FunctionSpec::Builtin(b) => b.eval(x),
            FunctionSpec::Piecewise(pw) => {
                if x < pw.lo || x > pw.hi {
                    return Err(Error::OutOfRange(format!(
                        "piecewise spec evaluated at {x}, valid on [{}, {}]",
                        pw.lo, pw.hi
                    )));
                }
                let v = pw.eval_rat(x);
                debug_assert!(v.is_integer() && !v.is_negative());
                v.to_integer().to_i64().ok_or(Error::Overflow)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FunctionSpec::Constant(0))
    }

    /// Per-residue-class polynomial view modulo `step`, when the spec is a
    /// polynomial on each class: entry `r` holds `[c0, c1, c2]` with
    /// `f(x) = c2 x^2 + c1 x + c0` for all valid `x = r (mod step)`.
    /// Returns `None` when the spec's own modulus does not divide `step`.
    pub fn residue_polys(&self, step: u32) -> Option<Vec<[Rat; 3]>> {
        if step == 0 {
            return None;
        }
        match self {
            FunctionSpec::Constant(c) => Some(vec![
                [
                    Rat::from_integer(*c as i128),
                    Rat::zero(),
                    Rat::zero()
                ];
                step as usize
            ]),
            FunctionSpec::Piecewise(pw) => {
                if step % pw.modulus != 0 {
                    return None;
                }
                Some(
                    (0..step)
                        .map(|r| [pw.a0[(r % pw.modulus) as usize], pw.a1, pw.a2])
                        .collect(),
                )
            }
            FunctionSpec::Builtin(b) => {
                let d = b.data();
                if step as i64 % d.modulus != 0 {
                    return None;
                }
                let den = Rat::from_integer(d.denom as i128);
                Some(
                    (0..step)
                        .map(|r| {
                            let (a2, a1, a0) = d.rows[(r as i64 % d.modulus) as usize];
                            [
                                Rat::from_integer(a0 as i128) / den,
                                Rat::from_integer(a1 as i128) / den,
                                Rat::from_integer(a2 as i128) / den,
                            ]
                        })
                        .collect(),
                )
            }
        }
    }
}

fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(text: &str) -> Result<Rat> {
    let bad = |_| Error::Parse(format!("bad rational `{text}`"));
    match text.split_once('/') {
        None => Ok(Rat::from_integer(text.trim().parse::<i128>().map_err(bad)?)),
        Some((n, d)) => {
            let n = n.trim().parse::<i128>().map_err(bad)?;
            let d = d.trim().parse::<i128>().map_err(bad)?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Ok(Rat::new(n, d))
        }
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Constant(c) => write!(f, "const:{c}"),
            FunctionSpec::Builtin(b) => write!(f, "builtin:{}", b.name()),
            FunctionSpec::Piecewise(pw) => {
                let a0 = pw
                    .a0
                    .iter()
                    .map(format_rat)
                    .collect::<Vec<_>>()
                    .join(",");
                write!(
                    f,
                    "pw:m={}:a2={}:a1={}:a0={}",
                    pw.modulus,
                    format_rat(&pw.a2),
                    format_rat(&pw.a1),
                    a0
                )
            }
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Text syntax: `const:<int>`, `builtin:<name>`, or
    /// `pw:m=<mod>:a2=<p>/<q>:a1=<p>/<q>:a0=<p1>/<q1>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(c) = s.strip_prefix("const:") {
            let c = c
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad constant `{c}`")))?;
            return FunctionSpec::constant(c);
        }
        if let Some(name) = s.strip_prefix("builtin:") {
            return BuiltinFn::by_name(name)
                .map(FunctionSpec::Builtin)
                .ok_or_else(|| Error::Parse(format!("unknown builtin `{name}`")));
        }
        if let Some(rest) = s.strip_prefix("pw:") {
            let mut modulus: Option<u32> = None;
            let mut a2: Option<Rat> = None;
            let mut a1: Option<Rat> = None;
            let mut a0: Option<Vec<Rat>> = None;
            for part in rest.split(':') {
                let (key, val) = part
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("bad piecewise field `{part}`")))?;
                match key {
                    "m" => {
                        modulus = Some(val.parse::<u32>().map_err(|_| {
                            Error::Parse(format!("bad piecewise modulus `{val}`"))
                        })?)
                    }
                    "a2" => a2 = Some(parse_rat(val)?),
                    "a1" => a1 = Some(parse_rat(val)?),
                    "a0" => {
                        a0 = Some(
                            val.split(',')
                                .map(parse_rat)
                                .collect::<Result<Vec<_>>>()?,
                        )
                    }
                    other => {
                        return Err(Error::Parse(format!("unknown piecewise field `{other}`")))
                    }
                }
            }
            let modulus =
                modulus.ok_or_else(|| Error::Parse("piecewise spec missing m=".into()))?;
            let a2 = a2.ok_or_else(|| Error::Parse("piecewise spec missing a2=".into()))?;
            let a1 = a1.ok_or_else(|| Error::Parse("piecewise spec missing a1=".into()))?;
            let a0 = a0.ok_or_else(|| Error::Parse("piecewise spec missing a0=".into()))?;
            return FunctionSpec::piecewise(modulus, a2, a1, a0);
        }
        Err(Error::Parse(format!("unrecognized function spec `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(31, 28), BigUint::from(4495u32));
        assert_eq!(binomial(7, 0), BigUint::one());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(5, -1), BigUint::zero());
        assert_eq!(binomial(-2, 3), BigUint::zero());
        // factorial-product oracle for C(22,17)
        let fact = |n: u64| (1..=n).map(BigUint::from).product::<BigUint>();
        assert_eq!(
            binomial(22, 17),
            fact(22) / (fact(17) * fact(5))
        );
        assert_eq!(binomial(22, 17), BigUint::from(26334u32));
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 2), BigUint::from(3u32));
        for n in 0..6u32 {
            assert_eq!(stirling2(n, n), BigUint::one());
            for k in n + 1..8 {
                assert_eq!(stirling2(n, k), BigUint::zero());
            }
        }
        assert_eq!(stirling2(5, 2), BigUint::from(15u32));
        assert_eq!(stirling2(6, 3), BigUint::from(90u32));
    }

    #[test]
    fn backward_difference_basics() {
        let f = |x: i64| Ok(x * x);
        let nabla0 = backward_difference(f, 0, 3);
        for x in -5..20 {
            assert_eq!(nabla0(x).unwrap(), x * x);
        }
        // second difference of a quadratic with step 3 is the constant 2 * 1 * 3^2
        let nabla2 = backward_difference(f, 2, 3);
        for x in 0..30 {
            assert_eq!(nabla2(x).unwrap(), 18);
        }
        let nabla3 = backward_difference(f, 3, 3);
        for x in 0..30 {
            assert_eq!(nabla3(x).unwrap(), 0);
        }
    }

    #[test]
    fn backward_difference_recurrence() {
        // (nabla^{i+1} f)(d) + (nabla^i f)(d - l) = (nabla^i f)(d)
        let f = |x: i64| Ok(x * x * x - 4 * x + 7);
        for i in 0..4u32 {
            for l in 1..4i64 {
                for d in 10..30i64 {
                    let hi = backward_difference(f, i + 1, l)(d).unwrap();
                    let lo = backward_difference(f, i, l)(d - l).unwrap();
                    let base = backward_difference(f, i, l)(d).unwrap();
                    assert_eq!(hi + lo, base);
                }
            }
        }
    }

    #[test]
    fn builtin_spot_values() {
        let s1 = FunctionSpec::Builtin(BuiltinFn::S1);
        assert_eq!(s1.eval(3).unwrap(), 2);
        assert_eq!(s1.eval(1).unwrap(), 1);
        assert_eq!(s1.eval(10).unwrap(), 9);
        let s2pp = FunctionSpec::Builtin(BuiltinFn::S2pp);
        assert_eq!(s2pp.eval(3).unwrap(), 2);
        let st = FunctionSpec::Builtin(BuiltinFn::STilde);
        assert_eq!(st.eval(14).unwrap(), 9);
        assert_eq!(st.eval(15).unwrap(), 12);
        assert_eq!(st.eval(16).unwrap(), 12);
        assert_eq!(st.eval(17).unwrap(), 15);
        let sover = FunctionSpec::Builtin(BuiltinFn::SOver);
        assert_eq!(sover.eval(13).unwrap(), 14);
        assert!(s1.eval(-1).is_err());
    }

    #[test]
    fn builtins_are_nonnegative_integers_on_range() {
        for b in BuiltinFn::ALL {
            for x in 0..=400 {
                let v = FunctionSpec::Builtin(b).eval(x).unwrap();
                assert!(v >= 0, "{}({x}) = {v}", b.name());
            }
        }
    }

    #[test]
    fn piecewise_validation() {
        // s1 as an explicit piecewise spec
        let a0: Vec<Rat> = [0, 12, 4, 12, 0, 4, 6, 6, 4]
            .iter()
            .map(|&n| Rat::new(n, 18))
            .collect();
        let pw = FunctionSpec::piecewise(9, Rat::new(1, 18), Rat::new(5, 18), a0).unwrap();
        for x in 0..=400 {
            assert_eq!(
                pw.eval(x).unwrap(),
                FunctionSpec::Builtin(BuiltinFn::S1).eval(x).unwrap()
            );
        }
        assert!(pw.eval(401).is_err());
        // not integer-valued
        assert!(FunctionSpec::piecewise(
            1,
            Rat::new(1, 2),
            Rat::zero(),
            vec![Rat::zero()]
        )
        .is_err());
        // negative somewhere
        assert!(FunctionSpec::piecewise(
            1,
            Rat::zero(),
            Rat::from_integer(-1),
            vec![Rat::zero()]
        )
        .is_err());
        assert!(FunctionSpec::constant(-3).is_err());
    }

    #[test]
    fn spec_text_round_trip() {
        for text in [
            "const:7",
            "builtin:s1",
            "builtin:sover",
            "pw:m=2:a2=1/2:a1=1/2:a0=0,0",
        ] {
            let spec: FunctionSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            let again: FunctionSpec = spec.to_string().parse().unwrap();
            assert_eq!(again, spec);
        }
        assert!("builtin:nope".parse::<FunctionSpec>().is_err());
        assert!("pw:m=2:a2=1".parse::<FunctionSpec>().is_err());
        assert!("gibberish".parse::<FunctionSpec>().is_err());
    }

    #[test]
    fn residue_poly_views() {
        let s1 = FunctionSpec::Builtin(BuiltinFn::S1);
        assert!(s1.residue_polys(6).is_none());
        let polys = s1.residue_polys(9).unwrap();
        assert_eq!(polys.len(), 9);
        for p in &polys {
            assert_eq!(p[2], Rat::new(1, 18));
        }
        let c = FunctionSpec::Constant(4);
        let polys = c.residue_polys(5).unwrap();
        assert_eq!(polys[3], [Rat::from_integer(4), Rat::zero(), Rat::zero()]);
        // consistency: polynomial view reproduces eval on each class
        let st = FunctionSpec::Builtin(BuiltinFn::STilde);
        let polys = st.residue_polys(12).unwrap();
        for x in 0..=60i64 {
            let p = &polys[(x % 12) as usize];
            let xr = Rat::from_integer(x as i128);
            let v = p[2] * xr * xr + p[1] * xr + p[0];
            assert_eq!(v, Rat::from_integer(st.eval(x).unwrap() as i128));
        }
    }
}
