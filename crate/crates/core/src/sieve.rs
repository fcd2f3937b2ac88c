//! Exact computation of μ(n), Λ(n), M(x) and M(x;q,a) by segmented sieving.
//!
//! Everything here is integer-exact (Λ is stored as a natural log, the one
//! real-valued quantity). These values are the ground truth every analytic
//! comparison in the crate is measured against.

use crate::error::{Error, Result};
use crate::util::gcd_u64;

/// Default cap on a single segment length (entries), chosen to keep the
/// working set cache-friendly while streaming.
pub const DEFAULT_SEGMENT_CAP: u64 = 1 << 22;

/// μ and Λ over a contiguous range `[lo, hi]`.
///
/// Invariants: `mu[n - lo]` is the Möbius function of `n`, and
/// `lambda[n - lo]` is `log p` when `n = p^k` and `0.0` otherwise.
#[derive(Debug, Clone)]
pub struct SieveSegment {
    pub lo: u64,
    pub hi: u64,
    pub mu: Vec<i8>,
    pub lambda: Vec<f64>,
}

impl SieveSegment {
    #[inline]
    pub fn mu_at(&self, n: u64) -> i8 {
        debug_assert!(n >= self.lo && n <= self.hi);
        self.mu[(n - self.lo) as usize]
    }

    #[inline]
    pub fn lambda_at(&self, n: u64) -> f64 {
        debug_assert!(n >= self.lo && n <= self.hi);
        self.lambda[(n - self.lo) as usize]
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

/// `M(x; q, a)` together with the gcd decomposition `a = b d`, `q = r d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProgressionSum {
    pub x: u64,
    pub q: u64,
    /// Residue normalized into `[0, q)`.
    pub a: u64,
    /// `gcd(a, q)`; equals `q` when `a = 0`.
    pub d: u64,
    pub b: u64,
    pub r: u64,
    pub value: i64,
}

/// Primes up to `limit` by a simple odd-only sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = vec![2u64];
    let mut p = 3usize;
    while p * p <= n {
        if !composite[p] {
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += 2 * p;
            }
        }
        p += 2;
    }
    let mut k = 3usize;
    while k <= n {
        if !composite[k] {
            primes.push(k as u64);
        }
        k += 2;
    }
    primes
}

pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|rr| rr > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|rr| rr <= n) {
        r += 1;
    }
    r
}

/// Sieve `[lo, hi]` using a caller-provided table of primes up to `√hi`.
///
/// The prime table is shared read-only, so disjoint segments can be sieved
/// concurrently.
pub fn sieve_segment_with_primes(lo: u64, hi: u64, primes: &[u64]) -> Result<SieveSegment> {
    sieve_segment_capped(lo, hi, primes, DEFAULT_SEGMENT_CAP)
}

fn sieve_segment_capped(lo: u64, hi: u64, primes: &[u64], cap: u64) -> Result<SieveSegment> {
    if lo == 0 {
        return Err(Error::Domain("sieve range must start at 1 or above".into()));
    }
    if lo > hi {
        return Err(Error::Domain(format!("empty sieve range [{lo}, {hi}]")));
    }
    let len = hi - lo + 1;
    if len > cap {
        return Err(Error::SizeCap { requested: len, cap });
    }
    let len = len as usize;
    let root = isqrt(hi);

    // rem[i] = n with all primes <= sqrt(hi) divided out; sign tracks the
    // parity of the number of distinct prime factors found so far.
    let mut rem: Vec<u64> = (lo..=hi).collect();
    let mut sign = vec![1i8; len];
    let mut squarefull = vec![false; len];
    let mut lambda = vec![0.0f64; len];

    for &p in primes.iter().take_while(|&&p| p <= root) {
        let start = lo
            .div_ceil(p)
            .checked_mul(p)
            .ok_or_else(|| Error::Domain("overflow while locating sieve start".into()))?;
        let mut m = start;
        while m <= hi {
            let i = (m - lo) as usize;
            let mut e = 0u32;
            while rem[i].is_multiple_of(p) {
                rem[i] /= p;
                e += 1;
            }
            if e >= 2 {
                squarefull[i] = true;
            }
            sign[i] = -sign[i];
            // n is the prime power p^e exactly when nothing else remains.
            if rem[i] == 1 && m == p.checked_pow(e).unwrap_or(0) {
                lambda[i] = (p as f64).ln();
            }
            match m.checked_add(p) {
                Some(next) => m = next,
                None => break,
            }
        }
    }

    let mut mu = vec![0i8; len];
    for i in 0..len {
        let n = lo + i as u64;
        if n == 1 {
            mu[i] = 1; // empty product of primes
            continue;
        }
        if rem[i] > 1 {
            // One remaining prime factor > sqrt(hi), necessarily to the
            // first power.
            sign[i] = -sign[i];
            if rem[i] == n {
                lambda[i] = (n as f64).ln();
            }
        }
        mu[i] = if squarefull[i] { 0 } else { sign[i] };
    }

    Ok(SieveSegment { lo, hi, mu, lambda })
}

/// Sieve `[lo, hi]`, building the prime table internally.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<SieveSegment> {
    if lo == 0 {
        return Err(Error::Domain("sieve range must start at 1 or above".into()));
    }
    if lo > hi {
        return Err(Error::Domain(format!("empty sieve range [{lo}, {hi}]")));
    }
    let primes = primes_up_to(isqrt(hi));
    sieve_segment_with_primes(lo, hi, &primes)
}

/// Stream segments of at most `DEFAULT_SEGMENT_CAP` entries over `[1, x]`,
/// applying `f` to each.
pub fn for_each_segment<F: FnMut(&SieveSegment)>(x: u64, mut f: F) -> Result<()> {
    let primes = primes_up_to(isqrt(x));
    let mut lo = 1u64;
    while lo <= x {
        let hi = lo.saturating_add(DEFAULT_SEGMENT_CAP - 1).min(x);
        let seg = sieve_segment_with_primes(lo, hi, &primes)?;
        f(&seg);
        lo = hi + 1;
    }
    Ok(())
}

/// Mertens function `M(x) = Σ_{n ≤ x} μ(n)`, exact.
pub fn mertens(x: u64) -> Result<i64> {
    if x == 0 {
        return Err(Error::Domain("mertens requires x >= 1".into()));
    }
    let mut total = 0i64;
    for_each_segment(x, |seg| {
        total += seg.mu.iter().map(|&m| m as i64).sum::<i64>();
    })?;
    Ok(total)
}

/// Normalize a possibly negative residue into `[0, q)`.
pub fn normalize_residue(a: i64, q: u64) -> u64 {
    a.rem_euclid(q as i64) as u64
}

/// All progression sums `M(x; q, a)` for `a = 0..q` in one sieve pass.
pub fn mertens_ap_all(x: u64, q: u64) -> Result<Vec<i64>> {
    if x == 0 || q == 0 {
        return Err(Error::Domain("mertens_ap_all requires x >= 1 and q >= 1".into()));
    }
    let mut buckets = vec![0i64; q as usize];
    for_each_segment(x, |seg| {
        let mut r = (seg.lo % q) as usize;
        for &m in &seg.mu {
            buckets[r] += m as i64;
            r += 1;
            if r == q as usize {
                r = 0;
            }
        }
    })?;
    Ok(buckets)
}

/// `M(x; q, a) = Σ_{n ≤ x, n ≡ a (q)} μ(n)`, exact, with the
/// `(d, b, r)` decomposition attached.
pub fn mertens_ap(x: u64, q: u64, a: i64) -> Result<ProgressionSum> {
    if x == 0 || q == 0 {
        return Err(Error::Domain("mertens_ap requires x >= 1 and q >= 1".into()));
    }
    let a = normalize_residue(a, q);
    let d = if a == 0 { q } else { gcd_u64(a, q) };
    let mut value = 0i64;
    for_each_segment(x, |seg| {
        // First n >= seg.lo with n ≡ a (mod q).
        let offset = (a + q - seg.lo % q) % q;
        let mut n = match seg.lo.checked_add(offset) {
            Some(n) => n,
            None => return,
        };
        while n <= seg.hi {
            value += seg.mu_at(n) as i64;
            n = match n.checked_add(q) {
                Some(next) => next,
                None => break,
            };
        }
    })?;
    Ok(ProgressionSum {
        x,
        q,
        a,
        d,
        b: a / d,
        r: q / d,
        value,
    })
}

/// Möbius function of a single integer by trial factorization.
///
/// This is also the independent oracle the sieve is tested against.
pub fn mu_trial(mut n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut count = 0u32;
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= n) {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// von Mangoldt function of a single integer by trial factorization.
pub fn lambda_trial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut m = n;
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= m) {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return if m == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    // n itself is prime.
    (n as f64).ln()
}

/// Both sides of the gcd reduction identity
/// `M(x; q, a) = μ(d) Σ_{m ≤ x/d, m ≡ b (r), (d, m) = 1} μ(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionCheck {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub d: u64,
}

/// Evaluate both sides of the reduction identity independently.
///
/// The left side sums μ(n) directly over the progression; the right side
/// sieves `m ≤ x/d` with the coprimality filter. They must agree exactly.
pub fn verify_reduction_identity(x: u64, q: u64, a: i64) -> Result<ReductionCheck> {
    let lhs_sum = mertens_ap(x, q, a)?;
    let d = lhs_sum.d;
    let b = lhs_sum.b;
    let r = lhs_sum.r;
    let mu_d = mu_trial(d) as i64;

    let mut rhs = 0i64;
    if mu_d != 0 {
        let bound = x / d;
        let mut inner = 0i64;
        if bound >= 1 {
            for_each_segment(bound, |seg| {
                let offset = (b + r - seg.lo % r) % r;
                let mut m = match seg.lo.checked_add(offset) {
                    Some(m) => m,
                    None => return,
                };
                while m <= seg.hi {
                    if gcd_u64(m, d) == 1 {
                        inner += seg.mu_at(m) as i64;
                    }
                    m = match m.checked_add(r) {
                        Some(next) => next,
                        None => break,
                    };
                }
            })?;
        }
        rhs = mu_d * inner;
    }

    Ok(ReductionCheck {
        lhs: lhs_sum.value,
        rhs,
        holds: lhs_sum.value == rhs,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment_values_match_known_cases() {
        let seg = sieve_segment(1, 12).unwrap();
        assert_eq!(seg.mu_at(1), 1);
        assert_eq!(seg.mu_at(12), 0); // 4 | 12
        assert!((seg.lambda_at(8) - 2f64.ln()).abs() < 1e-15); // 8 = 2^3
        let seg = sieve_segment(25, 35).unwrap();
        assert_eq!(seg.mu_at(30), -1); // 30 = 2*3*5
    }

    #[test]
    fn lambda_matches_trial_factorization() {
        let seg = sieve_segment(1, 3000).unwrap();
        for n in 1..=3000u64 {
            assert!(
                (seg.lambda_at(n) - lambda_trial(n)).abs() < 1e-12,
                "Lambda mismatch at {n}"
            );
        }
    }

    #[test]
    fn mu_matches_trial_factorization_across_segment_boundary() {
        let primes = primes_up_to(isqrt(5000));
        let seg = sieve_segment_with_primes(4000, 5000, &primes).unwrap();
        for n in 4000..=5000u64 {
            assert_eq!(seg.mu_at(n), mu_trial(n), "mu mismatch at {n}");
        }
    }

    #[test]
    fn mertens_small_values() {
        assert_eq!(mertens(1).unwrap(), 1);
        let oracle: i64 = (1..=10u64).map(|n| mu_trial(n) as i64).sum();
        assert_eq!(oracle, -1);
        assert_eq!(mertens(10).unwrap(), -1);
        let oracle: i64 = (1..=1000u64).map(|n| mu_trial(n) as i64).sum();
        assert_eq!(oracle, 2);
        assert_eq!(mertens(1000).unwrap(), 2);
    }

    #[test]
    fn mertens_ap_matches_brute_force() {
        for a in 0..4i64 {
            let oracle: i64 = (1..=100u64)
                .filter(|n| n % 4 == a as u64)
                .map(|n| mu_trial(n) as i64)
                .sum();
            assert_eq!(mertens_ap(100, 4, a).unwrap().value, oracle, "a = {a}");
        }
    }

    #[test]
    fn mertens_ap_q1_equals_mertens() {
        let ps = mertens_ap(10, 1, 0).unwrap();
        assert_eq!(ps.value, -1);
        assert_eq!((ps.d, ps.b, ps.r), (1, 0, 1));
    }

    #[test]
    fn negative_residues_are_normalized() {
        let pos = mertens_ap(500, 7, 3).unwrap();
        let neg = mertens_ap(500, 7, 3 - 7).unwrap();
        assert_eq!(pos, neg);
    }

    #[test]
    fn decomposition_invariants() {
        let ps = mertens_ap(100, 8, 4).unwrap();
        assert_eq!(ps.d, 4);
        assert_eq!(ps.b * ps.d, ps.a);
        assert_eq!(ps.r * ps.d, ps.q);
        assert_eq!(gcd_u64(ps.b, ps.r), 1);
        // a = 0 edge: d = q.
        let ps = mertens_ap(100, 8, 0).unwrap();
        assert_eq!((ps.d, ps.b, ps.r), (8, 0, 1));
    }

    #[test]
    fn reduction_identity_examples() {
        // d = 2 case.
        let c = verify_reduction_identity(100, 4, 2).unwrap();
        assert_eq!(c.d, 2);
        assert!(c.holds, "lhs {} rhs {}", c.lhs, c.rhs);
        // Coprime case d = 1.
        let c = verify_reduction_identity(50, 7, 3).unwrap();
        assert_eq!(c.d, 1);
        assert!(c.holds);
        // mu(d) = 0 forces both sides to vanish.
        let c = verify_reduction_identity(40, 8, 4).unwrap();
        assert_eq!(c.d, 4);
        assert_eq!(c.lhs, 0);
        assert_eq!(c.rhs, 0);
    }

    #[test]
    fn partition_over_residues() {
        for &(x, q) in &[(1000u64, 7u64), (997, 12), (500, 1)] {
            let total: i64 = (0..q)
                .map(|a| mertens_ap(x, q, a as i64).unwrap().value)
                .sum();
            assert_eq!(total, mertens(x).unwrap(), "x={x} q={q}");
        }
    }

    #[test]
    fn segment_restriction_consistency() {
        let full = sieve_segment(1, 2000).unwrap();
        let part = sieve_segment(700, 1300).unwrap();
        for n in 700..=1300 {
            assert_eq!(full.mu_at(n), part.mu_at(n));
            assert!((full.lambda_at(n) - part.lambda_at(n)).abs() < 1e-15);
        }
    }

    #[test]
    fn zero_lo_is_domain_error() {
        assert!(matches!(sieve_segment(0, 10), Err(Error::Domain(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let primes = primes_up_to(1 << 13);
        let err = sieve_segment_capped(1, DEFAULT_SEGMENT_CAP + 2, &primes, DEFAULT_SEGMENT_CAP);
        assert!(matches!(err, Err(Error::SizeCap { .. })));
    }
}
