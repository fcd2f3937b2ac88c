//! Dirichlet characters mod q with exact root-of-unity values.
//!
//! The unit group (ℤ/qℤ)* is decomposed by CRT over the prime powers
//! dividing q. Odd prime powers use a least primitive root (adjusted so the
//! same integer generates every p-power level); the 2-part uses ⟨−1, 5⟩ for
//! 2^k with k ≥ 3 and ⟨−1⟩ for 4. Character values are stored as exponents
//! modulo the group exponent, so orthogonality can be certified exactly in
//! integer arithmetic; conversion to complex happens only at evaluation
//! boundaries.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::util::gcd_u64;

/// Default cap on the modulus accepted by [`character_group`].
pub const DEFAULT_MODULUS_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FactorKind {
    /// (ℤ/p^k)* for odd p, cyclic.
    OddPrimePower,
    /// ⟨−1⟩ inside (ℤ/2^k)*, k ≥ 2.
    TwoSign,
    /// ⟨5⟩ inside (ℤ/2^k)*, k ≥ 3.
    TwoFive,
}

/// One cyclic factor of (ℤ/qℤ)*.
#[derive(Debug, Clone)]
struct Factor {
    kind: FactorKind,
    prime: u64,
    /// p^k, the prime-power modulus this factor lives in.
    prime_power: u64,
    /// Order of the cyclic factor.
    order: u64,
    /// Discrete log table indexed by residue mod `prime_power`
    /// (`u32::MAX` marks non-units). For the 2-part the two factors carry
    /// the sign component and the ⟨5⟩ component separately.
    dlog: Vec<u32>,
}

/// The CRT structure of (ℤ/qℤ)*, shared read-only by every character mod q.
#[derive(Debug)]
pub struct UnitGroup {
    q: u64,
    factors: Vec<Factor>,
    /// lcm of the factor orders.
    exponent: u64,
    phi: u64,
}

impl UnitGroup {
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler phi from factorization.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(1)
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % modulus as u128) as u64;
        }
        base = (base as u128 * base as u128 % modulus as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Least primitive root of the odd prime p, adjusted (g → g + p) so that it
/// remains a primitive root of p² and hence of every p^k.
fn primitive_root_all_levels(p: u64) -> u64 {
    let order = p - 1;
    let factors = factorize(order);
    let mut g = 2u64;
    loop {
        let ok = factors
            .iter()
            .all(|&(f, _)| mod_pow(g, order / f, p) != 1);
        if ok {
            break;
        }
        g += 1;
    }
    let p2 = p * p;
    if mod_pow(g, p - 1, p2) == 1 {
        g += p;
    }
    g
}

fn build_unit_group(q: u64) -> UnitGroup {
    let mut factors = Vec::new();
    for (p, k) in factorize(q) {
        let pk = p.pow(k);
        if p == 2 {
            if k == 1 {
                continue; // (Z/2)* is trivial
            }
            // Sign component: n ≡ (−1)^s 5^m (mod 2^k); for k = 2 only the
            // sign survives.
            let five_order = if k >= 3 { 1u64 << (k - 2) } else { 1 };
            let mut sign_dlog = vec![u32::MAX; pk as usize];
            let mut five_dlog = vec![u32::MAX; pk as usize];
            for s in 0..2u64 {
                let mut val = if s == 0 { 1u64 } else { pk - 1 };
                for m in 0..five_order {
                    sign_dlog[val as usize] = s as u32;
                    five_dlog[val as usize] = m as u32;
                    val = val * 5 % pk;
                }
            }
            factors.push(Factor {
                kind: FactorKind::TwoSign,
                prime: 2,
                prime_power: pk,
                order: 2,
                dlog: sign_dlog,
            });
            if k >= 3 {
                factors.push(Factor {
                    kind: FactorKind::TwoFive,
                    prime: 2,
                    prime_power: pk,
                    order: five_order,
                    dlog: five_dlog,
                });
            }
        } else {
            let g = primitive_root_all_levels(p);
            let order = (p - 1) * p.pow(k - 1);
            let mut dlog = vec![u32::MAX; pk as usize];
            let mut val = 1u64;
            for l in 0..order {
                dlog[val as usize] = l as u32;
                val = (val as u128 * g as u128 % pk as u128) as u64;
            }
            factors.push(Factor {
                kind: FactorKind::OddPrimePower,
                prime: p,
                prime_power: pk,
                order,
                dlog,
            });
        }
    }
    let mut exponent = 1u64;
    for f in &factors {
        exponent = exponent / gcd_u64(exponent, f.order) * f.order;
    }
    UnitGroup {
        q,
        factors,
        exponent,
        phi: euler_phi(q),
    }
}

/// A Dirichlet character mod q, identified by its exponent vector over the
/// cyclic factors of (ℤ/qℤ)*.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exps: Vec<u64>,
    order: u64,
    conductor: u64,
    kappa: u8,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group.q == other.group.q && self.exps == other.exps
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    fn new(group: Arc<UnitGroup>, exps: Vec<u64>) -> Self {
        let order = character_order(&group, &exps);
        let conductor = character_conductor(&group, &exps);
        let mut chi = DirichletCharacter {
            group,
            exps,
            order,
            conductor,
            kappa: 0,
        };
        chi.kappa = match chi.exponent(chi.group.q as i64 - 1) {
            Some(0) | None => 0, // None only for q <= 2, where chi(-1) = chi(1) = 1
            Some(_) => 1,
        };
        chi
    }

    pub fn modulus(&self) -> u64 {
        self.group.q
    }

    /// Order of χ in the dual group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Smallest modulus from which χ is induced (1 for the principal
    /// character).
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Parity: 0 when χ(−1) = 1, 1 when χ(−1) = −1.
    pub fn kappa(&self) -> u8 {
        self.kappa
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.group.q
    }

    /// A character is real iff its order divides 2.
    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// Exponent vector over the CRT factors, the crate's internal label.
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    /// Serialized label `"q:e1,e2,...,ek"`.
    pub fn label(&self) -> String {
        let exps: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        format!("{}:{}", self.group.q, exps.join(","))
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let exps = self
            .exps
            .iter()
            .zip(&self.group.factors)
            .map(|(&c, f)| if c == 0 { 0 } else { f.order - c })
            .collect();
        DirichletCharacter::new(Arc::clone(&self.group), exps)
    }

    /// χ(n) as an exponent e modulo the group exponent:
    /// χ(n) = exp(2πi e / λ). `None` when gcd(n, q) > 1.
    pub fn exponent(&self, n: i64) -> Option<u64> {
        let q = self.group.q;
        let n = n.rem_euclid(q as i64) as u64;
        if q == 1 {
            return Some(0);
        }
        if gcd_u64(n, q) != 1 {
            return None;
        }
        let lambda = self.group.exponent;
        let mut e = 0u64;
        for (f, &c) in self.group.factors.iter().zip(&self.exps) {
            let l = f.dlog[(n % f.prime_power) as usize];
            debug_assert_ne!(l, u32::MAX);
            // c * l * (lambda / order) mod lambda; c < order <= lambda <= 1e6
            // keeps the product within u128 comfortably.
            let term =
                (c as u128 * l as u128 % lambda as u128) * (lambda / f.order) as u128 % lambda as u128;
            e = ((e as u128 + term) % lambda as u128) as u64;
        }
        Some(e)
    }

    /// χ(n) as a complex number (0 when gcd(n, q) > 1).
    pub fn value(&self, n: i64) -> Complex64 {
        match self.exponent(n) {
            None => Complex64::new(0.0, 0.0),
            Some(e) => root_of_unity(e, self.group.exponent),
        }
    }

    /// The primitive character χ₁ mod conductor(χ) inducing χ.
    ///
    /// Idempotent on primitive characters. The generator convention is
    /// shared across moduli, so the restriction is exact exponent
    /// arithmetic.
    pub fn inducing_primitive(&self) -> Result<DirichletCharacter> {
        let q1 = self.conductor;
        if self.is_primitive() {
            return Ok(self.clone());
        }
        let target = Arc::new(build_unit_group(q1));
        let mut exps = vec![0u64; target.factors.len()];
        for (tf, te) in target.factors.iter().zip(exps.iter_mut()) {
            // Find the matching factor mod q (same prime and kind, except
            // that a TwoSign factor mod 4 may descend from either 2-part
            // shape).
            let src_idx = self
                .group
                .factors
                .iter()
                .position(|sf| sf.prime == tf.prime && sf.kind == tf.kind)
                .expect("conductor divides q, factor must exist");
            let sf = &self.group.factors[src_idx];
            let c = self.exps[src_idx];
            // chi1 on the target generator must equal chi on the source
            // generator: c1 / d1 = c / d, exact by the conductor choice.
            debug_assert_eq!(c as u128 * tf.order as u128 % sf.order as u128, 0);
            *te = (c as u128 * tf.order as u128 / sf.order as u128) as u64;
        }
        Ok(DirichletCharacter::new(target, exps))
    }
}

fn character_order(group: &UnitGroup, exps: &[u64]) -> u64 {
    let mut order = 1u64;
    for (f, &c) in group.factors.iter().zip(exps) {
        let o = f.order / gcd_u64(c, f.order).max(1);
        let o = if c == 0 { 1 } else { o };
        order = order / gcd_u64(order, o) * o;
    }
    order
}

fn character_conductor(group: &UnitGroup, exps: &[u64]) -> u64 {
    let mut conductor = 1u64;
    let mut two_sign_nontrivial = false;
    let mut two_five_conductor = 1u64;
    for (f, &c) in group.factors.iter().zip(exps) {
        let o = if c == 0 { 1 } else { f.order / gcd_u64(c, f.order) };
        match f.kind {
            FactorKind::OddPrimePower => {
                if o > 1 {
                    let p = f.prime;
                    // o | p^{k-1}(p-1); local conductor is p^{1 + v_p(o)}.
                    let mut vp = 0u32;
                    let mut m = o;
                    while m % p == 0 {
                        m /= p;
                        vp += 1;
                    }
                    conductor *= p.pow(vp + 1);
                }
            }
            FactorKind::TwoSign => {
                if o > 1 {
                    two_sign_nontrivial = true;
                }
            }
            FactorKind::TwoFive => {
                if o > 1 {
                    // order 2^b on <5> forces 2-adic level b + 2.
                    two_five_conductor = 4 * o;
                }
            }
        }
    }
    let two_part = if two_five_conductor > 1 {
        two_five_conductor
    } else if two_sign_nontrivial {
        4
    } else {
        1
    };
    conductor * two_part
}

fn root_of_unity(e: u64, order: u64) -> Complex64 {
    let theta = 2.0 * std::f64::consts::PI * (e as f64) / (order as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// All φ(q) Dirichlet characters mod q, deterministically ordered by
/// lexicographic exponent vector over the CRT factors.
pub fn character_group(q: u64) -> Result<Vec<DirichletCharacter>> {
    character_group_capped(q, DEFAULT_MODULUS_CAP)
}

pub fn character_group_capped(q: u64, cap: u64) -> Result<Vec<DirichletCharacter>> {
    if q == 0 {
        return Err(Error::Domain("modulus must be >= 1".into()));
    }
    if q > cap {
        return Err(Error::SizeCap { requested: q, cap });
    }
    let group = Arc::new(build_unit_group(q));
    let orders: Vec<u64> = group.factors.iter().map(|f| f.order).collect();
    let mut out = Vec::with_capacity(group.phi as usize);
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::new(Arc::clone(&group), exps.clone()));
        // Odometer over exponent vectors, last coordinate fastest, so the
        // output is lexicographic in the vector.
        let mut i = orders.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// Find the character mod q with the given exponent label.
pub fn character_by_label(q: u64, exps: &[u64]) -> Result<DirichletCharacter> {
    let all = character_group(q)?;
    all.into_iter()
        .find(|c| c.exponents() == exps)
        .ok_or_else(|| Error::Validation(format!("no character mod {q} with exponents {exps:?}")))
}

/// Result of an orthogonality sum, carrying both the floating evaluation
/// and the exact value certified by exponent arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct OrthogonalitySum {
    /// (1/φ(q)) Σ_χ χ(n) conj(χ(a)), accumulated in floating point.
    pub value: Complex64,
    /// Exact value (0 or 1) certified by integer exponent arithmetic.
    pub exact: u8,
}

/// (1/φ(q)) Σ_{χ mod q} χ(n) conj(χ(a)); requires gcd(a, q) = 1.
///
/// The exact field is certified without floating point: the sum is φ(q)
/// when n ≡ a and gcd(n, q) = 1; otherwise the value multiset is a union of
/// complete sets of roots of unity and cancels identically.
pub fn orthogonality_sum(q: u64, n: i64, a: i64) -> Result<OrthogonalitySum> {
    let chars = character_group(q)?;
    orthogonality_sum_in(&chars, n, a)
}

/// As [`orthogonality_sum`], over a prebuilt character group (avoids
/// rebuilding discrete-log tables in bulk sweeps).
pub fn orthogonality_sum_in(chars: &[DirichletCharacter], n: i64, a: i64) -> Result<OrthogonalitySum> {
    let q = chars
        .first()
        .ok_or_else(|| Error::Domain("empty character group".into()))?
        .modulus();
    debug_assert_eq!(chars.len() as u64, euler_phi(q));
    let a_res = a.rem_euclid(q as i64) as u64;
    if q > 1 && gcd_u64(a_res, q) != 1 {
        return Err(Error::Domain(format!(
            "orthogonality requires gcd(a, q) = 1, got a = {a_res}, q = {q}"
        )));
    }
    let phi = chars.len() as f64;
    let lambda = chars[0].group.exponent;

    let mut value = Complex64::new(0.0, 0.0);
    let mut all_zero_diff = true;
    let mut any_unit = false;
    for chi in chars {
        let (en, ea) = (chi.exponent(n), chi.exponent(a));
        if let (Some(en), Some(ea)) = (en, ea) {
            any_unit = true;
            let diff = (en + lambda - ea) % lambda;
            if diff != 0 {
                all_zero_diff = false;
            }
            value += root_of_unity(diff, lambda);
        }
    }
    let exact = if any_unit && all_zero_diff { 1 } else { 0 };
    Ok(OrthogonalitySum {
        value: value / phi,
        exact,
    })
}

/// Σ_{χ mod q} χ(n): equals φ(q) iff n ≡ 1 (mod q) and gcd(n, q) = 1,
/// otherwise 0. Returned as (float sum, exact integer).
pub fn dual_orthogonality_sum(q: u64, n: i64) -> Result<(Complex64, i64)> {
    let chars = character_group(q)?;
    let lambda = chars[0].group.exponent;
    let mut value = Complex64::new(0.0, 0.0);
    let mut all_zero = true;
    let mut any = false;
    for chi in &chars {
        match chi.exponent(n) {
            Some(e) => {
                any = true;
                if e != 0 {
                    all_zero = false;
                }
                value += root_of_unity(e, lambda);
            }
            None => {
                all_zero = false;
            }
        }
    }
    let exact = if any && all_zero { chars.len() as i64 } else { 0 };
    Ok((value, exact))
}

/// Number of primitive characters mod q, by direct conductor computation.
pub fn count_primitive(q: u64) -> Result<u64> {
    Ok(character_group(q)?
        .iter()
        .filter(|c| c.is_primitive())
        .count() as u64)
}
