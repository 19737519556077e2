//! Arithmetic modulo a word-sized prime and exact rank computation of dense
//! matrices. This is the computational bottleneck of the whole crate: every
//! dimension question ultimately becomes one call to [`FieldMatrix::rank`] or
//! one pass through a [`RankBuilder`].

use crate::{Error, Result};

/// Default modulus. Large enough that a random specialization loses rank with
/// probability on the order of `deg/p`, small enough that products fit
/// comfortably in 64-bit intermediates.
pub const DEFAULT_PRIME: u32 = 32003;

/// A prime modulus `p` with `2 < p < 2^31`, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeModulus {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeModulus {
    pub fn new(p: u32) -> Result<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn get(self) -> u32 {
        self.p
    }

    /// Reduce an arbitrary signed integer into `[0, p)`.
    pub fn elt(self, x: i64) -> FieldElement {
        let p = self.p as i64;
        FieldElement(x.rem_euclid(p) as u32)
    }

    pub fn zero(self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(self) -> FieldElement {
        FieldElement(1)
    }

    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.p as u64;
        FieldElement(if s >= p { (s - p) as u32 } else { s as u32 })
    }

    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        FieldElement(((a.0 as u64 + p - b.0 as u64) % p) as u32)
    }

    pub fn neg(self, a: FieldElement) -> FieldElement {
        if a.0 == 0 {
            a
        } else {
            FieldElement(self.p - a.0)
        }
    }

    /// Products go through 64-bit width, so no overflow for p < 2^31.
    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus is prime, gcd must be 1");
        Ok(self.elt(t0))
    }
}

/// A residue in `[0, p)`. Constructors go through [`PrimeModulus::elt`], so a
/// value is always reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    p: PrimeModulus,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn zero(p: PrimeModulus, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            p,
            entries: vec![FieldElement(0); rows * cols],
        }
    }

    pub fn from_rows(p: PrimeModulus, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            p,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mat_mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p.p as u64;
        let mut out = FieldMatrix::zero(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + self.get(r, k).0 as u64 * other.get(k, c).0 as u64) % p;
                }
                out.set(r, c, FieldElement(acc as u32));
            }
        }
        Ok(out)
    }

    /// Rank over GF(p) by plain row-major Gaussian elimination, pivoting on
    /// the first row with a nonzero entry in the current column. Deterministic
    /// and idempotent; exact arithmetic needs no pivmagnitude heuristics.
    pub fn rank(&self) -> usize {
        let p = self.p.p as u64;
        let mut m: Vec<u64> = self.entries.iter().map(|e| e.0 as u64).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for k in col..cols {
                    m.swap(pivot * cols + k, rank * cols + k);
                }
            }
            let inv = self.p.inv(FieldElement(m[rank * cols + col] as u32)).expect("nonzero pivot");
            for r in rank + 1..rows {
                let lead = m[r * cols + col];
                if lead == 0 {
                    continue;
                }
                // r <- r - (lead/pivot) * pivot_row
                let factor = (p - (lead * inv.0 as u64) % p) % p;
                for k in col..cols {
                    m[r * cols + k] = (m[r * cols + k] + factor * m[rank * cols + k]) % p;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Incremental rank computation: rows are absorbed one at a time into a
/// normalized row-echelon basis, so callers can stop as soon as a target rank
/// is reached. Reductions accumulate lazily in 64-bit scratch and reduce mod p
/// only when the running bound would overflow, which for small p means one
/// final reduction per absorbed row.
pub struct RankBuilder {
    p: PrimeModulus,
    cols: usize,
    // echelon rows sorted by pivot column, each normalized to a unit pivot
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    scratch: Vec<u64>,
}

impl RankBuilder {
    pub fn new(p: PrimeModulus, cols: usize) -> Self {
        Self {
            p,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            scratch: vec![0; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn current_rank(&self) -> usize {
        self.rows.len()
    }

    /// Absorb one row; returns whether it was independent of the rows seen so
    /// far (i.e. whether the rank increased).
    pub fn absorb(&mut self, row: &[FieldElement]) -> Result<bool> {
        if row.len() != self.cols {
            return Err(Error::Shape(format!(
                "row has {} entries, builder expects {}",
                row.len(),
                self.cols
            )));
        }
        let p = self.p.p as u64;
        let step = (p - 1) * (p - 1);
        let scratch = &mut self.scratch;
        for (s, e) in scratch.iter_mut().zip(row) {
            *s = e.0 as u64;
        }
        let mut bound = p - 1;
        for (basis, &piv) in self.rows.iter().zip(&self.pivots) {
            let lead = scratch[piv] % p;
            if lead == 0 {
                continue;
            }
            if bound > u64::MAX - step {
                for s in scratch.iter_mut() {
                    *s %= p;
                }
                bound = p - 1;
            }
            // add (p - lead) * basis, i.e. subtract lead * basis mod p
            let factor = p - lead;
            for (s, b) in scratch[piv..].iter_mut().zip(&basis[piv..]) {
                *s += factor * *b as u64;
            }
            bound += step;
        }
        for s in scratch.iter_mut() {
            *s %= p;
        }
        let Some(piv) = scratch.iter().position(|&s| s != 0) else {
            return Ok(false);
        };
        let inv = self.p.inv(FieldElement(scratch[piv] as u32))?.0 as u64;
        let normalized: Vec<u32> = scratch
            .iter()
            .map(|&s| ((s * inv) % p) as u32)
            .collect();
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, normalized);
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeModulus {
        PrimeModulus::new(DEFAULT_PRIME).unwrap()
    }

    fn random_matrix(p: PrimeModulus, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
        let mut m = FieldMatrix::zero(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, FieldElement(rng.gen_range(0..p.get())));
            }
        }
        m
    }

    #[test]
    fn prime_validation() {
        assert!(PrimeModulus::new(32003).is_ok());
        assert!(PrimeModulus::new(2).is_err());
        assert!(PrimeModulus::new(1).is_err());
        assert!(PrimeModulus::new(32004).is_err());
        assert!(PrimeModulus::new(2147483647).is_ok()); // 2^31 - 1 is prime
        assert!(PrimeModulus::new(2147483648u32.wrapping_sub(1)).is_ok());
    }

    #[test]
    fn field_ops_examples() {
        let p = fp();
        // wraparound
        assert_eq!(p.add(p.elt(5), p.elt(32003 - 3)).value(), 2);
        assert_eq!(p.inv(p.one()).unwrap().value(), 1);
        // frozen: 2 * 16002 = 32004 = 32003 + 1
        assert_eq!(p.inv(p.elt(2)).unwrap().value(), 16002);
        assert!(p.inv(p.zero()).is_err());
    }

    #[test]
    fn inverses_match_fermat_powers() {
        // independent route: a^(p-2) mod p
        let p = fp();
        let powmod = |mut b: u64, mut e: u64, m: u64| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % m;
                }
                b = b * b % m;
                e >>= 1;
            }
            acc
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = rng.gen_range(1..p.get());
            let inv = p.inv(FieldElement(a)).unwrap();
            assert_eq!(inv.value() as u64, powmod(a as u64, (p.get() - 2) as u64, p.get() as u64));
            assert_eq!(p.mul(FieldElement(a), inv).value(), 1);
        }
    }

    #[test]
    fn rank_trivial_cases() {
        let p = fp();
        let mut id = FieldMatrix::zero(p, 3, 3);
        for i in 0..3 {
            id.set(i, i, p.one());
        }
        assert_eq!(id.rank(), 3);

        let prop = FieldMatrix::from_rows(
            p,
            vec![
                vec![p.elt(1), p.elt(2)],
                vec![p.elt(2), p.elt(4)],
            ],
        )
        .unwrap();
        assert_eq!(prop.rank(), 1);

        assert_eq!(FieldMatrix::zero(p, 0, 5).rank(), 0);
        assert_eq!(FieldMatrix::zero(p, 4, 4).rank(), 0);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let p = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=60);
            let cols = rng.gen_range(1..=60);
            let m = random_matrix(p, rows, cols, &mut rng);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn product_rank_bounded_by_factors() {
        let p = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let a = rng.gen_range(1..=20);
            let b = rng.gen_range(1..=20);
            let c = rng.gen_range(1..=20);
            // force some rank deficiency by multiplying through a thin middle
            let m1 = random_matrix(p, a, b, &mut rng);
            let m2 = random_matrix(p, b, c, &mut rng);
            let prod = m1.mat_mul(&m2).unwrap();
            assert!(prod.rank() <= m1.rank().min(m2.rank()));
        }
    }

    #[test]
    fn incremental_matches_batch() {
        let p = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let rows = rng.gen_range(1..=50);
            let cols = rng.gen_range(1..=50);
            let m = random_matrix(p, rows, cols, &mut rng);
            let mut rb = RankBuilder::new(p, cols);
            for r in 0..rows {
                rb.absorb(m.row(r)).unwrap();
            }
            assert_eq!(rb.current_rank(), m.rank());
        }
    }

    #[test]
    fn builder_unit_rows() {
        let p = fp();
        let e = |i: usize| {
            let mut v = vec![p.zero(); 4];
            v[i] = p.one();
            v
        };
        let mut rb = RankBuilder::new(p, 4);
        assert!(rb.absorb(&e(0)).unwrap());
        assert!(!rb.absorb(&e(0)).unwrap());
        assert_eq!(rb.current_rank(), 1);
        assert!(rb.absorb(&e(1)).unwrap());
        assert_eq!(rb.current_rank(), 2);
        assert!(rb.absorb(&[p.elt(3), p.elt(5), p.zero(), p.zero()]).is_ok_and(|b| !b));
        assert!(rb.absorb(&e(0)[..3]).is_err());
    }

    #[test]
    fn builder_full_rank_random() {
        // invertible 50x50: final incremental rank 50 equals batch rank
        let p = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        loop {
            let m = random_matrix(p, 50, 50, &mut rng);
            if m.rank() < 50 {
                continue;
            }
            let mut rb = RankBuilder::new(p, 50);
            for r in 0..50 {
                rb.absorb(m.row(r)).unwrap();
            }
            assert_eq!(rb.current_rank(), 50);
            break;
        }
    }

    #[test]
    fn builder_handles_large_prime_lazily() {
        // p near 2^31 exercises the scratch-reduction guard
        let p = PrimeModulus::new(2147483647).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let m = random_matrix(p, 40, 30, &mut rng);
        let mut rb = RankBuilder::new(p, 30);
        for r in 0..40 {
            rb.absorb(m.row(r)).unwrap();
        }
        assert_eq!(rb.current_rank(), m.rank());
    }

    #[test]
    fn mod_p_rank_bounds_rational_rank() {
        // Reductions mod p can only lose rank: check against an exact
        // fraction-arithmetic elimination on small integer matrices.
        fn rational_rank(m: &[Vec<i64>]) -> usize {
            use num_bigint::BigInt;
            use num_rational::BigRational;
            use num_traits::Zero;
            let rows = m.len();
            if rows == 0 {
                return 0;
            }
            let cols = m[0].len();
            let mut a: Vec<Vec<BigRational>> = m
                .iter()
                .map(|r| r.iter().map(|&x| BigRational::from(BigInt::from(x))).collect())
                .collect();
            let mut rank = 0;
            for col in 0..cols {
                let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                    continue;
                };
                a.swap(piv, rank);
                for r in rank + 1..rows {
                    if a[r][col].is_zero() {
                        continue;
                    }
                    let f = &a[r][col] / &a[rank][col];
                    for k in col..cols {
                        let sub = &f * &a[rank][k];
                        a[r][k] = &a[r][k] - sub;
                    }
                }
                rank += 1;
                if rank == rows {
                    break;
                }
            }
            rank
        }

        let p = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let rows = rng.gen_range(1..=8);
            let cols = rng.gen_range(1..=8);
            let mut ints = vec![vec![0i64; cols]; rows];
            let mut m = FieldMatrix::zero(p, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let x = rng.gen_range(-10..=10);
                    ints[r][c] = x;
                    m.set(r, c, p.elt(x));
                }
            }
            assert!(rational_rank(&ints) >= m.rank());
        }
    }
}
