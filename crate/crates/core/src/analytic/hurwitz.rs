//! Hurwitz zeta by Euler–Maclaurin with a certified remainder, and the
//! digamma function by recurrence lift plus Stirling's asymptotic series.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// B_{2k} / (2k)! for k = 1..=9; eight correction terms are used and the
/// ninth drives the remainder bound.
const EM_COEFF: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
];

const EM_TERMS: usize = 8;

/// Value with a certified absolute error bound.
#[derive(Debug, Clone, Copy)]
pub struct Certified {
    pub value: Complex64,
    pub error: f64,
}

/// Norm of the rising factorial s(s+1)...(s+m−1).
fn rising_norm(s: Complex64, m: usize) -> f64 {
    let mut acc = 1.0f64;
    for j in 0..m {
        acc *= (s + j as f64).norm();
    }
    acc
}

/// Remainder bound for Euler–Maclaurin after `EM_TERMS` corrections:
/// `|R| ≤ |B_{2M+2}/(2M+2)!| |(s)_{2M+1}| (N+α)^{−σ−2M−1} |s+2M+1|/(σ+2M+1)`.
pub(crate) fn em_remainder_bound(s: Complex64, shift: f64) -> f64 {
    let m2 = 2 * EM_TERMS + 1; // 17
    let sigma = s.re;
    if sigma + m2 as f64 + 1.0 <= 0.0 {
        return f64::INFINITY;
    }
    let c = EM_COEFF[EM_TERMS].abs();
    let ratio = (s + m2 as f64).norm() / (sigma + m2 as f64);
    c * rising_norm(s, m2) * shift.powf(-(sigma + m2 as f64)) * ratio
}

/// Smallest shift point N + α making the remainder bound fit `tol`.
fn choose_shift(s: Complex64, alpha: f64, tol: f64) -> Result<usize> {
    let mut n = (0.35 * s.im.abs()).ceil().max(12.0) as usize;
    loop {
        if em_remainder_bound(s, n as f64 + alpha) <= tol {
            return Ok(n);
        }
        n = n.saturating_mul(2);
        if n > 50_000_000 {
            return Err(Error::Tolerance(format!(
                "Euler-Maclaurin shift exceeded cap for s = {s}, tol = {tol:e}"
            )));
        }
    }
}

/// Hurwitz zeta `ζ(s, α) = Σ_{n≥0} (n+α)^{−s}`, analytically continued,
/// with an explicit remainder bound. Requires `α ∈ (0, 1]` and `s ≠ 1`.
pub fn hurwitz_zeta(s: Complex64, alpha: f64, tol: f64) -> Result<Certified> {
    if (s - Complex64::new(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::Domain("hurwitz zeta pole at s = 1".into()));
    }
    let reg = hurwitz_zeta_regularized(s, alpha, tol)?;
    Ok(Certified {
        value: reg.value + 1.0 / (s - 1.0),
        error: reg.error,
    })
}

/// `ζ(s, α) − 1/(s−1)`, which is entire in s: the pole term from
/// Euler–Maclaurin is folded in as `(w^{1−s} − 1)/(s−1)`, evaluated through
/// the stable `(e^z − 1)/z` form so s = 1 needs no special casing.
///
/// The χ-weighted sums in `eval_l` are built on this, since the pole parts
/// cancel exactly for nonprincipal characters.
pub fn hurwitz_zeta_regularized(s: Complex64, alpha: f64, tol: f64) -> Result<Certified> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("alpha must be in (0, 1], got {alpha}")));
    }
    let n = choose_shift(s, alpha, 0.5 * tol)?;
    Ok(hurwitz_zeta_regularized_with_shift(s, alpha, n))
}

/// Euler–Maclaurin evaluation of the regularized value with the shift
/// point fixed by the caller.
pub fn hurwitz_zeta_regularized_with_shift(s: Complex64, alpha: f64, n: usize) -> Certified {
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        sum += (-s * (k as f64 + alpha).ln()).exp();
    }
    sum += em_tail_regularized(s, n as f64 + alpha);
    Certified {
        value: sum,
        error: em_remainder_bound(s, n as f64 + alpha),
    }
}

/// `(e^z − 1)/z`, stable near z = 0.
fn expm1_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        let one = Complex64::new(1.0, 0.0);
        one + z / 2.0 * (one + z / 3.0 * (one + z / 4.0 * (one + z / 5.0)))
    } else {
        (z.exp() - 1.0) / z
    }
}

/// Boundary and Bernoulli corrections at shift point `w = N + α`, with the
/// pole subtracted:
/// `(w^{1−s} − 1)/(s−1) + w^{−s}/2 + Σ_k B_{2k}/(2k)! (s)_{2k−1} w^{−s−2k+1}`.
pub(crate) fn em_tail_regularized(s: Complex64, w: f64) -> Complex64 {
    let lw = w.ln();
    let w_minus_s = (-s * lw).exp();
    // (w^{1−s} − 1)/(s−1) = −ln w · (e^z − 1)/z with z = (1−s) ln w.
    let z = (Complex64::new(1.0, 0.0) - s) * lw;
    let mut tail = -lw * expm1_over(z) + w_minus_s * 0.5;
    let mut rising = s; // (s)_1
    let inv_w2 = 1.0 / (w * w);
    let mut w_pow = w_minus_s / w; // w^{−s−1}
    for (k, &coeff) in EM_COEFF.iter().take(EM_TERMS).enumerate() {
        tail += rising * coeff * w_pow;
        // advance (s)_{2k−1} -> (s)_{2k+1} and w^{−s−2k+1} -> w^{−s−2k−1}
        let j = 2 * k + 1;
        rising = rising * (s + j as f64) * (s + (j + 1) as f64);
        w_pow *= inv_w2;
    }
    tail
}

/// Digamma ψ(z) for `Re z > 0`: recurrence lift into `|z| ≥ 12`, then
/// Stirling's series. Absolute error well below 1e−10.
pub fn digamma_complex(mut z: Complex64) -> Result<Complex64> {
    if z.re <= 0.0 && z.im == 0.0 && z.re == z.re.floor() {
        return Err(Error::Domain(format!("digamma pole at {z}")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    // Reflect into the right half plane if needed.
    if z.re < 0.0 {
        // psi(1−z) − psi(z) = π cot(πz)
        let pi = std::f64::consts::PI;
        let reflected = digamma_complex(Complex64::new(1.0, 0.0) - z)?;
        let cot = (Complex64::new(pi, 0.0) * z).cos() / (Complex64::new(pi, 0.0) * z).sin();
        return Ok(reflected - cot * pi);
    }
    while z.norm() < 12.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    // psi(z) ~ ln z − 1/2z − Σ B_{2k}/(2k z^{2k})
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for &c in &C {
        series += p * c;
        p *= inv2;
    }
    Ok(acc + z.ln() - inv * 0.5 - series)
}

/// `Re ψ(s)`, the quantity appearing in the explicit formula's archimedean
/// term.
pub fn digamma_real_part(s: Complex64) -> Result<f64> {
    Ok(digamma_complex(s)?.re)
}

/// Real digamma.
pub fn digamma(x: f64) -> Result<f64> {
    digamma_real_part(Complex64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn digamma_at_one_is_minus_gamma() {
        // Harmonic-series oracle: psi(1) = −lim (Σ_{k≤n} 1/k − log n).
        let n = 10_000_000u64;
        let mut h = 0.0f64;
        for k in (1..=n).rev() {
            h += 1.0 / k as f64;
        }
        let crude = -(h - (n as f64).ln());
        let d = digamma(1.0).unwrap();
        assert!((d - crude).abs() < 1e-7, "digamma(1) = {d} vs oracle {crude}");
        assert!((d + EULER_GAMMA).abs() < 1e-12);
    }

    #[test]
    fn digamma_at_half() {
        // psi(1/2) = −γ − 2 log 2
        let expect = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert!((digamma(0.5).unwrap() - expect).abs() < 1e-12);
        assert!((digamma(0.5).unwrap() + 1.963_510_026_021_423_5).abs() < 1e-10);
    }

    #[test]
    fn digamma_recurrence() {
        // psi(2) = psi(1) + 1
        let d1 = digamma(1.0).unwrap();
        let d2 = digamma(2.0).unwrap();
        assert!((d2 - d1 - 1.0).abs() < 1e-12);
        // general recurrence at complex points
        let z = Complex64::new(0.3, 7.2);
        let a = digamma_complex(z + 1.0).unwrap();
        let b = digamma_complex(z).unwrap() + 1.0 / z;
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn digamma_pole_rejected() {
        assert!(digamma(0.0).is_err());
        assert!(digamma(-3.0).is_err());
    }

    #[test]
    fn hurwitz_zeta_matches_zeta_two() {
        // ζ(2, 1) = π²/6; oracle by direct summation with integral bracket.
        let n = 200_000u64;
        let mut direct = 0.0f64;
        for k in (1..=n).rev() {
            direct += 1.0 / (k as f64 * k as f64);
        }
        let bracket_mid = direct + 0.5 * (1.0 / n as f64 + 1.0 / (n as f64 + 1.0));
        let z = hurwitz_zeta(Complex64::new(2.0, 0.0), 1.0, 1e-12).unwrap();
        assert!((z.value.re - bracket_mid).abs() < 1e-10);
        assert!((z.value.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        assert!(z.value.im.abs() < 1e-13);
        assert!(z.error < 1e-12);
    }

    #[test]
    fn hurwitz_splitting_identity() {
        // ζ(s, α) = ζ(s, α/2-type splitting: ζ(s,a) over halves:
        // Σ (n+α)^{-s} = 2^{-s} [ζ(s, α/2) + ζ(s, (α+1)/2)]
        for &(sr, si, alpha) in &[(1.7, 3.0, 0.7), (2.5, -11.0, 1.0), (0.6, 21.0, 0.37)] {
            let s = Complex64::new(sr, si);
            let lhs = hurwitz_zeta(s, alpha, 1e-11).unwrap().value;
            let rhs = (-s * 2f64.ln()).exp()
                * (hurwitz_zeta(s, alpha / 2.0, 1e-11).unwrap().value
                    + hurwitz_zeta(s, (alpha + 1.0) / 2.0, 1e-11).unwrap().value);
            assert!(
                (lhs - rhs).norm() < 1e-9,
                "s = {s}, alpha = {alpha}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn hurwitz_rejects_pole_and_bad_alpha() {
        assert!(hurwitz_zeta(Complex64::new(1.0, 0.0), 1.0, 1e-10).is_err());
        assert!(hurwitz_zeta(Complex64::new(2.0, 0.0), 0.0, 1e-10).is_err());
        assert!(hurwitz_zeta(Complex64::new(2.0, 0.0), 1.5, 1e-10).is_err());
    }

    #[test]
    fn hurwitz_known_negative_argument() {
        // ζ(−1, 1) = −1/12 by continuation.
        let z = hurwitz_zeta(Complex64::new(-1.0, 0.0), 1.0, 1e-12).unwrap();
        assert!((z.value.re + 1.0 / 12.0).abs() < 1e-12, "{}", z.value);
    }
}
