//! Dirichlet L-function evaluation.
//!
//! The workhorse is the Hurwitz decomposition
//! `L(s, χ) = q^{−s} Σ_{a=1}^{q} χ(a) ζ(s, a/q)`, valid for every χ by
//! analytic continuation (the principal character inherits the pole at
//! s = 1). A literal truncated Dirichlet series with a partial-summation
//! tail bound is kept as the second, independent route for `Re s > 1`.

use num_complex::Complex64;

use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

use super::hurwitz::{hurwitz_zeta_regularized, Certified};

/// Evaluation route for [`eval_l`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LMethod {
    /// Hurwitz zeta by Euler–Maclaurin; works in the whole plane minus the
    /// principal-character pole.
    HurwitzEulerMaclaurin,
    /// Truncated Dirichlet series; requires `Re s > 1`.
    DirichletSeries,
}

/// Request for one L-value.
#[derive(Debug, Clone)]
pub struct LValueRequest<'a> {
    pub s: Complex64,
    pub chi: &'a DirichletCharacter,
    pub method: LMethod,
    pub tolerance: f64,
}

impl<'a> LValueRequest<'a> {
    pub fn new(s: Complex64, chi: &'a DirichletCharacter, method: LMethod, tolerance: f64) -> Self {
        Self {
            s,
            chi,
            method,
            tolerance,
        }
    }
}

/// `L(s, χ)` with an absolute error bound.
pub fn eval_l(req: &LValueRequest) -> Result<Certified> {
    if req.tolerance < 1e-12 {
        return Err(Error::Domain(format!(
            "tolerance must be at least 1e-12, got {:e}",
            req.tolerance
        )));
    }
    match req.method {
        LMethod::HurwitzEulerMaclaurin => eval_l_hurwitz(req.s, req.chi, req.tolerance),
        LMethod::DirichletSeries => eval_l_series(req.s, req.chi, req.tolerance),
    }
}

pub fn eval_l_hurwitz(s: Complex64, chi: &DirichletCharacter, tol: f64) -> Result<Certified> {
    let q = chi.modulus();
    if chi.is_principal() && (s - Complex64::new(1.0, 0.0)).norm() < 1e-8 {
        return Err(Error::Domain(
            "L(s, principal) has a pole at s = 1; refuse evaluation within 1e-8".into(),
        ));
    }
    let per_term_tol = tol / q as f64;
    let q_pow = (-s * (q as f64).ln()).exp(); // q^{-s}
    // Work with ζ(s, a/q) − 1/(s−1) termwise: for nonprincipal χ the pole
    // parts cancel exactly (Σ χ(a) = 0), so this stays stable through
    // s = 1; the principal character gets its pole restored explicitly.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut units = 0u64;
    for a in 1..=q {
        let v = chi.value(a as i64);
        if v.norm() == 0.0 {
            continue;
        }
        units += 1;
        let z = hurwitz_zeta_regularized(s, a as f64 / q as f64, per_term_tol)?;
        sum += v * z.value;
        err += z.error;
    }
    if chi.is_principal() {
        sum += Complex64::new(units as f64, 0.0) / (s - 1.0);
    }
    Ok(Certified {
        value: q_pow * sum,
        error: err * q_pow.norm(),
    })
}

fn eval_l_series(s: Complex64, chi: &DirichletCharacter, tol: f64) -> Result<Certified> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "Dirichlet series method requires Re(s) > 1, got {}",
            s.re
        )));
    }
    let sigma = s.re;
    let q = chi.modulus() as f64;
    // Truncation point. Nonprincipal characters have bounded partial sums,
    // so Abel summation gives tail <= q |s| M^{-sigma} / sigma. Principal
    // characters only get the integral comparison M^{1-sigma}/(sigma-1).
    let (m, tail) = if chi.is_principal() {
        let m = ((sigma - 1.0) * tol).powf(1.0 / (1.0 - sigma)).ceil();
        (m, m.powf(1.0 - sigma) / (sigma - 1.0))
    } else {
        let m = (q * (s.norm() + 1.0) / (sigma * tol)).powf(1.0 / sigma).ceil();
        (m, q * (s.norm() + 1.0) * m.powf(-sigma) / sigma)
    };
    if !(m.is_finite()) || m > 3e7 {
        return Err(Error::Tolerance(format!(
            "Dirichlet series needs {m:.3e} terms for tol {tol:e} at s = {s}; out of reach"
        )));
    }
    let m = m as u64;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=m {
        let v = chi.value(n as i64);
        if v.norm() == 0.0 {
            continue;
        }
        sum += v * (-s * (n as f64).ln()).exp();
    }
    Ok(Certified {
        value: sum,
        error: tail,
    })
}

/// The coprimality Euler factor `l_d(s, χ) = Π_{p | d} (1 − χ(p) p^{−s})`.
///
/// Primes dividing the modulus of χ contribute a factor 1 since χ(p) = 0.
pub fn eval_l_d(s: Complex64, chi: &DirichletCharacter, d: u64) -> Result<Complex64> {
    if d == 0 {
        return Err(Error::Domain("l_d requires d >= 1".into()));
    }
    let mut value = Complex64::new(1.0, 0.0);
    let mut m = d;
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|pp| pp <= m) {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            value *= Complex64::new(1.0, 0.0) - chi.value(p as i64) * (-s * (p as f64).ln()).exp();
        }
        p += 1;
    }
    if m > 1 {
        value *= Complex64::new(1.0, 0.0) - chi.value(m as i64) * (-s * (m as f64).ln()).exp();
    }
    Ok(value)
}

/// Diagnostic for the imprimitivity error: `log|l_d|` against the scale
/// `√(log d)/loglog d` from the prime-divisor bound. The implied constant
/// is unknown, so only the ratio is reported.
pub fn l_d_log_ratio(s: Complex64, chi: &DirichletCharacter, d: u64) -> Result<Option<f64>> {
    let v = eval_l_d(s, chi, d)?;
    let log_abs = v.norm().ln();
    if d < 16 {
        return Ok(None); // loglog d <= 0, scale undefined
    }
    let ld = (d as f64).ln();
    let scale = ld.sqrt() / ld.ln();
    Ok(Some(log_abs.abs() / scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_group;

    fn principal_mod_1() -> DirichletCharacter {
        character_group(1).unwrap().pop().unwrap()
    }

    #[test]
    fn zeta_two_against_direct_sum() {
        // Independent oracle: plain summation with integral bracketing.
        let n = 200_000u64;
        let mut direct = 0.0f64;
        for k in (1..=n).rev() {
            direct += 1.0 / (k as f64 * k as f64);
        }
        let oracle = direct + 0.5 * (1.0 / n as f64 + 1.0 / (n as f64 + 1.0));

        let chi = principal_mod_1();
        let req = LValueRequest::new(
            Complex64::new(2.0, 0.0),
            &chi,
            LMethod::HurwitzEulerMaclaurin,
            1e-10,
        );
        let v = eval_l(&req).unwrap();
        assert!((v.value.re - oracle).abs() < 1e-9);
        assert!((v.value.re - 1.644_934_066_848_226_4).abs() < 1e-12);
    }

    #[test]
    fn leibniz_value_for_odd_character_mod_4() {
        // L(1, χ₄) = π/4; oracle by the Leibniz series with pair-averaging.
        let chars = character_group(4).unwrap();
        let chi = chars.iter().find(|c| !c.is_principal()).unwrap();
        // Averaging consecutive partial sums of Σ (−1)^j/(2j+1) kills the
        // leading alternating error term.
        let n = 200_000usize;
        let mut s = 0.0f64;
        for j in 0..n {
            let term = 1.0 / (2 * j + 1) as f64;
            s += if j % 2 == 0 { term } else { -term };
        }
        let s_next = s + {
            let term = 1.0 / (2 * n + 1) as f64;
            if n.is_multiple_of(2) {
                term
            } else {
                -term
            }
        };
        let oracle = 0.5 * (s + s_next);
        let req = LValueRequest::new(
            Complex64::new(1.0, 0.0),
            chi,
            LMethod::HurwitzEulerMaclaurin,
            1e-10,
        );
        let v = eval_l(&req).unwrap();
        assert!(
            (v.value.re - oracle).abs() < 1e-6,
            "L(1,chi4) = {} vs oracle {oracle}",
            v.value.re
        );
        assert!((v.value.re - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!(v.value.im.abs() < 1e-12);
    }

    #[test]
    fn principal_character_euler_factor_identity() {
        // L(s, principal mod 2) = (1 − 2^{−s}) ζ(s) at s = 2.
        let chars = character_group(2).unwrap();
        let chi0 = &chars[0];
        let req = LValueRequest::new(
            Complex64::new(2.0, 0.0),
            chi0,
            LMethod::HurwitzEulerMaclaurin,
            1e-10,
        );
        let v = eval_l(&req).unwrap();
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v.value.re - 0.75 * zeta2).abs() < 1e-11, "{}", v.value.re);
    }

    #[test]
    fn two_methods_agree_for_nonprincipal() {
        let mut rng = crate::util::SplitMix64::new(0xd1a1e77);
        let mut tested = 0;
        while tested < 25 {
            let q = rng.range_u64(3, 20);
            let chars = character_group(q).unwrap();
            let nonprincipal: Vec<_> = chars.iter().filter(|c| !c.is_principal()).collect();
            if nonprincipal.is_empty() {
                continue;
            }
            let chi = nonprincipal[rng.below(nonprincipal.len() as u64) as usize];
            let s = Complex64::new(rng.range_f64(1.6, 3.0), rng.range_f64(-8.0, 8.0));
            let hz = eval_l(&LValueRequest::new(s, chi, LMethod::HurwitzEulerMaclaurin, 1e-10))
                .unwrap();
            let ds = eval_l(&LValueRequest::new(s, chi, LMethod::DirichletSeries, 1e-9)).unwrap();
            assert!(
                (hz.value - ds.value).norm() <= 1e-8 + hz.error + ds.error,
                "q={q} s={s}: hurwitz {} vs series {}",
                hz.value,
                ds.value
            );
            tested += 1;
        }
    }

    #[test]
    fn series_method_requires_re_gt_one() {
        let chi = principal_mod_1();
        let req = LValueRequest::new(
            Complex64::new(0.9, 2.0),
            &chi,
            LMethod::DirichletSeries,
            1e-9,
        );
        assert!(eval_l(&req).is_err());
    }

    #[test]
    fn pole_guard_for_principal() {
        let chi = principal_mod_1();
        let req = LValueRequest::new(
            Complex64::new(1.0, 1e-12),
            &chi,
            LMethod::HurwitzEulerMaclaurin,
            1e-9,
        );
        assert!(matches!(eval_l(&req), Err(Error::Domain(_))));
    }

    #[test]
    fn tolerance_floor_enforced() {
        let chi = principal_mod_1();
        let req = LValueRequest::new(
            Complex64::new(2.0, 0.0),
            &chi,
            LMethod::HurwitzEulerMaclaurin,
            1e-13,
        );
        assert!(matches!(eval_l(&req), Err(Error::Domain(_))));
    }

    #[test]
    fn l_d_examples() {
        let chi = principal_mod_1();
        let s = Complex64::new(1.0, 0.0);
        // Empty product.
        assert_eq!(eval_l_d(s, &chi, 1).unwrap(), Complex64::new(1.0, 0.0));
        // Single prime p = 2: 1 − 1/2.
        let v = eval_l_d(s, &chi, 4).unwrap();
        assert!((v - Complex64::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn imprimitive_factorization_identity() {
        // L(s, χ) = L(s, χ₁) l_q(s, χ₁) for the induced character.
        let s = Complex64::new(1.5, 3.0);
        for q in [8u64, 9, 12, 15, 45] {
            for chi in character_group(q).unwrap() {
                let chi1 = chi.inducing_primitive().unwrap();
                let lhs = eval_l(&LValueRequest::new(s, &chi, LMethod::HurwitzEulerMaclaurin, 1e-11))
                    .unwrap();
                let l1 = eval_l(&LValueRequest::new(
                    s,
                    &chi1,
                    LMethod::HurwitzEulerMaclaurin,
                    1e-11,
                ))
                .unwrap();
                let factor = eval_l_d(s, &chi1, q).unwrap();
                assert!(
                    (lhs.value - l1.value * factor).norm() < 1e-9,
                    "q={q} exps={:?}",
                    chi.exponents()
                );
            }
        }
    }

    #[test]
    fn l_d_log_ratio_reports() {
        let chars = character_group(3).unwrap();
        let chi = chars.iter().find(|c| !c.is_principal()).unwrap();
        let r = l_d_log_ratio(Complex64::new(0.75, 14.0), chi, 30030).unwrap();
        assert!(r.unwrap() > 0.0);
        assert!(l_d_log_ratio(Complex64::new(0.75, 14.0), chi, 4)
            .unwrap()
            .is_none());
    }
}
