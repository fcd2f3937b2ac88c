//! Numerical Perron integral: the vertical-segment contour integral
//! recovering Möbius progression sums from `1/(L l_d)`, with the truncation
//! inherent to the finite segment showing up as the `O(log(x/d))`
//! discrepancy against the sieve.

use num_complex::Complex64;

use crate::characters::{character_group, DirichletCharacter};
use crate::error::{Error, Result};
use crate::sieve::mu_trial;
use crate::util::gcd_u64;

use super::hurwitz::{em_remainder_bound, em_tail_regularized};

/// Result of one contour integration `A(x, χ)`.
#[derive(Debug, Clone, Copy)]
pub struct PerronResult {
    pub value: Complex64,
    /// Accumulated quadrature error estimate plus propagated L-evaluation
    /// tolerance (does not include the O(log) Perron truncation itself).
    pub quadrature_error: f64,
    pub x_over_d: f64,
    /// Integration limit `⌊x/d⌋`.
    pub u_limit: f64,
    pub evaluations: usize,
}

/// Precomputed data for evaluating `x'^s / (s L(s,χ) l_d(s,χ))` along the
/// fixed vertical line `Re s = c`.
struct LineEvaluator {
    c: f64,
    x_prime: f64,
    ln_x: f64,
    principal_units: f64,
    chi_values: Vec<Complex64>,
    /// Per residue class a (only units kept): ln(k + a/q) and (k + a/q)^{−c}.
    logs: Vec<Vec<f64>>,
    powers: Vec<Vec<f64>>,
    alphas: Vec<f64>,
    q_pow_c: f64,
    ln_q: f64,
    /// Distinct primes of d with their χ(p) values and p^{−c}, ln p.
    d_factors: Vec<(Complex64, f64, f64)>,
    n_max: usize,
    is_principal: bool,
}

fn distinct_primes(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl LineEvaluator {
    fn new(x_prime: f64, chi: &DirichletCharacter, d: u64) -> Result<Self> {
        let q = chi.modulus();
        let ln_x = x_prime.ln();
        let c = 1.0 + 1.0 / ln_x;
        let u = x_prime.floor();
        // Shift point large enough for the worst t on the segment.
        let mut n_max = (0.45 * u).ceil().max(24.0) as usize;
        let s_top = Complex64::new(c, u);
        while em_remainder_bound(s_top, n_max as f64) > 1e-10 {
            n_max *= 2;
            if n_max > 20_000_000 {
                return Err(Error::Tolerance(
                    "Perron line evaluator could not certify the Euler-Maclaurin shift".into(),
                ));
            }
        }

        let mut chi_values = Vec::new();
        let mut logs = Vec::new();
        let mut powers = Vec::new();
        let mut alphas = Vec::new();
        let mut units = 0u64;
        for a in 1..=q {
            let v = chi.value(a as i64);
            if v.norm() == 0.0 {
                continue;
            }
            units += 1;
            let alpha = a as f64 / q as f64;
            let mut lg = Vec::with_capacity(n_max);
            let mut pw = Vec::with_capacity(n_max);
            for k in 0..n_max {
                let w = k as f64 + alpha;
                let l = w.ln();
                lg.push(l);
                pw.push((-c * l).exp());
            }
            chi_values.push(v);
            logs.push(lg);
            powers.push(pw);
            alphas.push(alpha);
        }

        let d_factors = distinct_primes(d)
            .into_iter()
            .map(|p| {
                let lp = (p as f64).ln();
                (chi.value(p as i64), (-c * lp).exp(), lp)
            })
            .collect();

        Ok(LineEvaluator {
            c,
            x_prime,
            ln_x,
            principal_units: units as f64,
            chi_values,
            logs,
            powers,
            alphas,
            q_pow_c: (q as f64).powf(-c),
            ln_q: (q as f64).ln(),
            d_factors,
            n_max,
            is_principal: chi.is_principal(),
        })
    }

    /// Number of Euler–Maclaurin main-sum terms used at height t.
    fn terms_at(&self, t: f64) -> usize {
        ((0.45 * t.abs()).ceil() as usize).clamp(24, self.n_max)
    }

    /// The integrand `x'^{c+it} / ((c+it) L l_d)`.
    fn integrand(&self, t: f64) -> Complex64 {
        let s = Complex64::new(self.c, t);
        let n = self.terms_at(t);
        let mut l_sum = Complex64::new(0.0, 0.0);
        for (j, chi_a) in self.chi_values.iter().enumerate() {
            let logs = &self.logs[j];
            let powers = &self.powers[j];
            let mut re = 0.0f64;
            let mut im = 0.0f64;
            for k in 0..n {
                // e^{−it ln w} = cos − i sin
                let (sin, cos) = (t * logs[k]).sin_cos();
                let p = powers[k];
                re += p * cos;
                im -= p * sin;
            }
            let mut zeta_reg = Complex64::new(re, im);
            zeta_reg += em_tail_regularized(s, n as f64 + self.alphas[j]);
            l_sum += chi_a * zeta_reg;
        }
        if self.is_principal {
            l_sum += Complex64::new(self.principal_units, 0.0) / (s - 1.0);
        }
        let (sin_q, cos_q) = (t * self.ln_q).sin_cos();
        let l_value = l_sum * self.q_pow_c * Complex64::new(cos_q, -sin_q);

        let mut l_d = Complex64::new(1.0, 0.0);
        for &(chi_p, p_pow, ln_p) in &self.d_factors {
            let (sin_p, cos_p) = (t * ln_p).sin_cos();
            l_d *= Complex64::new(1.0, 0.0) - chi_p * p_pow * Complex64::new(cos_p, -sin_p);
        }

        let (sin_x, cos_x) = (t * self.ln_x).sin_cos();
        let x_pow = self.x_prime.powf(self.c) * Complex64::new(cos_x, sin_x);
        x_pow / (s * l_value * l_d)
    }
}

struct ComplexQuad {
    value: Complex64,
    error: f64,
    evaluations: usize,
}

#[allow(clippy::too_many_arguments)]
fn complex_simpson_rec<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
    out: &mut ComplexQuad,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    out.evaluations += 2;
    let left = (fa + flm * 4.0 + fm) * ((m - a) / 6.0);
    let right = (fm + frm * 4.0 + fb) * ((b - m) / 6.0);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        out.error += delta.norm() / 15.0;
        left + right + delta / 15.0
    } else {
        complex_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, out)
            + complex_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, out)
    }
}

fn complex_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> ComplexQuad {
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
    let mut out = ComplexQuad {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        evaluations: 3,
    };
    out.value = complex_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 24, &mut out);
    out
}

/// Half-line integral `∫_0^U integrand dt` with oscillation-resolving
/// panels, optionally split across threads (panels are independent; the
/// reduction is sequential in panel order, so the result is deterministic
/// for any thread count).
fn half_line_integral(ev: &LineEvaluator, threads: usize) -> ComplexQuad {
    let u = ev.x_prime.floor();
    // Panel width: an eighth of the oscillation period 2π/log x'.
    let width = (2.0 * std::f64::consts::PI / ev.ln_x) / 8.0;
    let n_panels = (u / width).ceil().max(1.0) as usize;
    let panel_tol = 3e-10 * ev.x_prime;

    let run_panel = |i: usize| -> ComplexQuad {
        let a = u * i as f64 / n_panels as f64;
        let b = u * (i + 1) as f64 / n_panels as f64;
        complex_panel(&|t| ev.integrand(t), a, b, panel_tol)
    };

    // Panels are computed independently (possibly across threads) and then
    // reduced sequentially in panel order, so the result is bit-identical
    // for every thread count.
    let threads = threads.max(1).min(n_panels);
    let panels: Vec<ComplexQuad> = if threads == 1 {
        (0..n_panels).map(run_panel).collect()
    } else {
        let chunk = n_panels.div_ceil(threads);
        let mut chunks: Vec<Vec<ComplexQuad>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(n_panels);
                    let run = &run_panel;
                    scope.spawn(move || (lo..hi.max(lo)).map(run).collect::<Vec<_>>())
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut all = Vec::with_capacity(n_panels);
        for c in chunks.drain(..) {
            all.extend(c);
        }
        all
    };

    let mut acc = ComplexQuad {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        evaluations: 0,
    };
    for p in &panels {
        acc.value += p.value;
        acc.error += p.error;
        acc.evaluations += p.evaluations;
    }
    acc
}

/// `A(x, χ) = (1/2πi) ∫ (x/d)^s / (s L(s,χ) l_d(s,χ)) ds` along the
/// vertical segment `Re s = 1 + 1/log(x/d)`, `|Im s| ≤ ⌊x/d⌋`.
///
/// The negative half-line is obtained from the conjugate character:
/// `g_χ(−t) = conj(g_χ̄(t))`.
pub fn perron_integral(
    x: f64,
    chi: &DirichletCharacter,
    d: u64,
    threads: usize,
) -> Result<PerronResult> {
    if d == 0 {
        return Err(Error::Domain("perron_integral requires d >= 1".into()));
    }
    let x_prime = x / d as f64;
    if x_prime < 10.0 {
        return Err(Error::Domain(format!(
            "perron_integral requires x/d >= 10, got {x_prime}"
        )));
    }
    if chi.modulus() > 500 {
        return Err(Error::Domain(format!(
            "perron_integral caps the modulus at 500, got {}",
            chi.modulus()
        )));
    }
    let ev = LineEvaluator::new(x_prime, chi, d)?;
    let pos = half_line_integral(&ev, threads);
    let (neg_value, neg_err, neg_evals) = if chi.is_real() {
        (pos.value.conj(), pos.error, 0)
    } else {
        let conj_chi = chi.conjugate();
        let ev_bar = LineEvaluator::new(x_prime, &conj_chi, d)?;
        let q = half_line_integral(&ev_bar, threads);
        (q.value.conj(), q.error, q.evaluations)
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    Ok(PerronResult {
        value: (pos.value + neg_value) / two_pi,
        quadrature_error: (pos.error + neg_err) / two_pi + 1e-9 * x_prime,
        x_over_d: x_prime,
        u_limit: x_prime.floor(),
        evaluations: pos.evaluations + neg_evals,
    })
}

/// The assembled §2 pipeline: recover `M(x; q, a)` from Perron integrals
/// over the characters mod `r = q/d`.
#[derive(Debug, Clone, Copy)]
pub struct PerronAssembly {
    pub value: Complex64,
    pub quadrature_error: f64,
    pub d: u64,
    pub r: u64,
    pub x_over_d: f64,
}

/// `μ(d)/φ(r) Σ_{χ mod r} conj(χ(b)) A(x, χ)`: the Perron reconstruction of
/// the progression sum, expected to match the sieve within `O(log(x/d))`.
pub fn perron_mertens_ap(x: u64, q: u64, a: i64, threads: usize) -> Result<PerronAssembly> {
    if x == 0 || q == 0 {
        return Err(Error::Domain("perron_mertens_ap requires x, q >= 1".into()));
    }
    let a = a.rem_euclid(q as i64) as u64;
    let d = if a == 0 { q } else { gcd_u64(a, q) };
    let r = q / d;
    let b = a / d;
    let mu_d = mu_trial(d) as f64;
    let x_prime = x as f64 / d as f64;
    if mu_d == 0.0 {
        return Ok(PerronAssembly {
            value: Complex64::new(0.0, 0.0),
            quadrature_error: 0.0,
            d,
            r,
            x_over_d: x_prime,
        });
    }
    let chars = character_group(r)?;
    let phi = chars.len() as f64;
    // Half-line integrals per character, reused across the conjugation
    // pairing: A(x, χ) = (I(χ) + conj(I(χ̄))) / 2π.
    let mut half: Vec<Option<ComplexQuad>> = (0..chars.len()).map(|_| None).collect();
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for (i, chi) in chars.iter().enumerate() {
        if half[i].is_none() {
            let ev = LineEvaluator::new(x_prime, chi, d)?;
            half[i] = Some(half_line_integral(&ev, threads));
        }
        let bar = chi.conjugate();
        let j = chars
            .iter()
            .position(|c| c == &bar)
            .expect("conjugate character is in the group");
        if half[j].is_none() {
            let ev = LineEvaluator::new(x_prime, &bar, d)?;
            half[j] = Some(half_line_integral(&ev, threads));
        }
        let pos = half[i].as_ref().unwrap();
        let neg = half[j].as_ref().unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        let a_chi = (pos.value + neg.value.conj()) / two_pi;
        let weight = bar.value(b as i64);
        value += weight * a_chi;
        err += (pos.error + neg.error) / two_pi;
    }
    Ok(PerronAssembly {
        value: value * (mu_d / phi),
        quadrature_error: err / phi + 1e-9 * x_prime,
        d,
        r,
        x_over_d: x_prime,
    })
}

/// Batched assembly for every residue `a ∈ [0, q)`, reusing half-line
/// integrals across residues that share the same gcd class.
pub fn perron_mertens_ap_batch(x: u64, q: u64, threads: usize) -> Result<Vec<PerronAssembly>> {
    if x == 0 || q == 0 {
        return Err(Error::Domain("perron_mertens_ap_batch requires x, q >= 1".into()));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out: Vec<Option<PerronAssembly>> = vec![None; q as usize];
    // Group residues by d = gcd(a, q).
    let mut by_d: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for a in 0..q {
        let d = if a == 0 { q } else { gcd_u64(a, q) };
        by_d.entry(d).or_default().push(a);
    }
    for (d, residues) in by_d {
        let r = q / d;
        let mu_d = mu_trial(d) as f64;
        let x_prime = x as f64 / d as f64;
        if mu_d == 0.0 {
            for &a in &residues {
                out[a as usize] = Some(PerronAssembly {
                    value: Complex64::new(0.0, 0.0),
                    quadrature_error: 0.0,
                    d,
                    r,
                    x_over_d: x_prime,
                });
            }
            continue;
        }
        let chars = character_group(r)?;
        let phi = chars.len() as f64;
        let mut half: Vec<ComplexQuad> = Vec::with_capacity(chars.len());
        for chi in &chars {
            let ev = LineEvaluator::new(x_prime, chi, d)?;
            half.push(half_line_integral(&ev, threads));
        }
        let conj_index: Vec<usize> = chars
            .iter()
            .map(|chi| {
                let bar = chi.conjugate();
                chars.iter().position(|c| c == &bar).expect("closed under conjugation")
            })
            .collect();
        for &a in &residues {
            let b = a / d;
            let mut value = Complex64::new(0.0, 0.0);
            let mut err = 0.0;
            for (i, chi) in chars.iter().enumerate() {
                let j = conj_index[i];
                let a_chi = (half[i].value + half[j].value.conj()) / two_pi;
                value += chi.conjugate().value(b as i64) * a_chi;
                err += (half[i].error + half[j].error) / two_pi;
            }
            out[a as usize] = Some(PerronAssembly {
                value: value * (mu_d / phi),
                quadrature_error: err / phi + 1e-9 * x_prime,
                d,
                r,
                x_over_d: x_prime,
            });
        }
    }
    Ok(out.into_iter().map(|o| o.expect("all residues assembled")).collect())
}
