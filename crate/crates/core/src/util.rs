//! Small shared numerics: deterministic RNG, adaptive Simpson quadrature.

/// SplitMix64: tiny deterministic generator for seeded sweeps.
///
/// Not cryptographic. Chosen so that randomized property sweeps are
/// reproducible from a single `u64` seed without an external dependency.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // Modulo bias is irrelevant at the sweep sizes used here.
        self.next_u64() % n
    }

    /// Uniform in `[lo, hi]` (inclusive).
    pub fn range_u64(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }

    /// Uniform in `[0, 1)`.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit_f64()
    }
}

/// Result of an adaptive quadrature run.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Accumulated per-panel error estimate (Richardson difference).
    pub error: f64,
    pub evaluations: usize,
}

/// Adaptive Simpson on `[a, b]` with absolute per-panel tolerance `tol`.
///
/// Recursion depth is capped; when the cap is hit the current Richardson
/// estimate is accepted and folded into the reported error.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Quadrature {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut evals = 3usize;
    let mut err = 0.0;
    let value = simpson_rec(
        f, a, b, fa, fm, fb, whole, tol, 30, &mut evals, &mut err,
    );
    Quadrature {
        value,
        error: err,
        evaluations: evals,
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut usize,
    err: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    *evals += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        *err += delta.abs() / 15.0;
        left + right + delta / 15.0
    } else {
        let half_tol = 0.5 * tol;
        simpson_rec(f, a, m, fa, flm, fm, left, half_tol, depth - 1, evals, err)
            + simpson_rec(f, m, b, fm, frm, fb, right, half_tol, depth - 1, evals, err)
    }
}

/// Integrate `f` over `[a, b]` by splitting into `n` equal panels first and
/// running adaptive Simpson on each. Used when the integrand oscillates with
/// a known period: choose `n` so each panel spans a fraction of the period.
pub fn panelled_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize, tol: f64) -> Quadrature {
    assert!(n > 0);
    let step = (b - a) / n as f64;
    let mut total = 0.0;
    let mut err = 0.0;
    let mut evals = 0;
    for i in 0..n {
        let lo = a + step * i as f64;
        let hi = if i + 1 == n { b } else { a + step * (i + 1) as f64 };
        let q = adaptive_simpson(f, lo, hi, tol);
        total += q.value;
        err += q.error;
        evals += q.evaluations;
    }
    Quadrature {
        value: total,
        error: err,
        evaluations: evals,
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        // Simpson is exact on cubics.
        let q = adaptive_simpson(&|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-12);
        assert!((q.value - (4.0 - 4.0 + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn simpson_matches_known_integral() {
        let q = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((q.value - 2.0).abs() < 1e-10);
        assert!(q.error < 1e-9);
    }

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd_u64(0, 7), 7);
        assert_eq!(gcd_u64(12, 18), 6);
        assert_eq!(gcd_u64(35, 64), 1);
    }
}
