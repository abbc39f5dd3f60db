//! Extensions `F_{p^k}` where the `r = 3` count sits near either end of its
//! bound window.
//!
//! With `pi_p = sqrt(p) e^{i theta}` the trace is `s_k = 2 p^{k/2} cos(k theta)`,
//! so the normalized deviation
//! `d_k = (3(eps1 + eps2) + 10 + 2 s_k) / (2 p^{k/2})`
//! approaches `+2` when `k theta` is near a multiple of `2 pi` and `-2` near an
//! odd multiple of `pi`. Candidates `k` are convergent denominators of
//! `theta / 2pi` and `theta / pi`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::arith;
use crate::closed::epsilons_from_residue;
use crate::contfrac::{self, Convergent};
use crate::curve::{compute_kappa, trace_from_kappa};
use crate::error::{Error, Result};
use crate::fixed;
use crate::surd::{format_scaled, QuadraticSurd};

/// Precision ceiling for the convergent search, in bits.
const MAX_BITS: u32 = 1 << 15;
/// Slack, in units of the last place, allowed on the fixed-point angle.
const ANGLE_SLACK_BITS: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeOptions {
    /// Convergents per expansion.
    pub depth: usize,
    /// Convergent denominators above this are listed but not evaluated.
    pub max_k: u64,
    /// Decimal digits for reported values.
    pub digits: u32,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { depth: 30, max_k: 10_000, digits: 40 }
    }
}

/// Which expansion a candidate came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expansion {
    /// `theta / 2pi`; `k theta` near a multiple of `2pi`.
    Turn,
    /// `theta / pi`; `k theta` near a multiple of `pi`.
    HalfTurn,
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expansion::Turn => "theta/2pi",
            Expansion::HalfTurn => "theta/pi",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub k: u64,
    pub source: Expansion,
    /// Numerator of the convergent with denominator `k`.
    pub m: BigInt,
    pub epsilon1: i64,
    pub epsilon2: i64,
    /// `d_k`, exactly.
    pub deviation: QuadraticSurd,
    /// `d_k` truncated to the requested digits.
    pub deviation_decimal: String,
    /// `2 cos(k theta)`, truncated.
    pub two_cos_decimal: String,
    /// `gcd(n, (p^k - 1)/3) = 1`.
    pub gcd_ok: bool,
    /// `|d_k - 2 cos(k theta)| <= 8 p^{-k/2}` up to the printed precision.
    pub within_window: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpnessProbe {
    pub p: u64,
    pub n: u64,
    pub kappa: i64,
    /// Working precision of `theta`, in bits.
    pub bits: u32,
    /// `theta * 2^bits`.
    pub theta_fixed: BigInt,
    pub theta_decimal: String,
    pub turn_convergents: Vec<Convergent>,
    pub half_turn_convergents: Vec<Convergent>,
    pub findings: Vec<Finding>,
}

impl SharpnessProbe {
    pub fn finding(&self, k: u64) -> Option<&Finding> {
        self.findings.iter().find(|f| f.k == k)
    }
}

/// Argument of `pi_p = -kappa/2 + i sqrt(p - kappa^2/4)`, in `(0, pi)`.
pub fn theta(p: u64, kappa: i64, bits: u32) -> BigInt {
    let pi = fixed::pi(bits);
    if kappa == 0 {
        return pi >> 1;
    }
    let disc = 4 * p as i64 - kappa * kappa;
    let root = fixed::sqrt(&fixed::from_int(disc, bits), bits);
    let t = root / BigInt::from(-kappa);
    let a = fixed::atan(&t, bits);
    if kappa > 0 {
        a + pi
    } else {
        a
    }
}

fn to_decimal(raw: &BigInt, bits: u32, digits: u32) -> String {
    let scaled: BigInt = (raw * BigInt::from(10).pow(digits)) >> bits;
    format_scaled(&scaled, digits)
}

/// Convergents of `num / 2^bits`, valid for every real within the slack.
fn interval_convergents(num: &BigInt, bits: u32, depth: usize) -> Vec<Convergent> {
    let slack = BigInt::one() << ANGLE_SLACK_BITS;
    let den = BigInt::one() << bits;
    let qs = contfrac::common_quotients(&(num - &slack), &(num + &slack), &den, depth);
    contfrac::convergents(&qs)
}

fn exact_convergents(num: i64, den: i64) -> Vec<Convergent> {
    contfrac::convergents(&contfrac::rational_quotients(&num.into(), &den.into()))
}

/// Runs the probe with default options and the given depth.
pub fn sharpness_probe(p: u64, n: u64, depth: usize) -> Result<SharpnessProbe> {
    sharpness_probe_with(p, n, ProbeOptions { depth, ..ProbeOptions::default() })
}

pub fn sharpness_probe_with(p: u64, n: u64, opts: ProbeOptions) -> Result<SharpnessProbe> {
    if n == 0 {
        return Err(Error::ZeroExponent);
    }
    let kappa = compute_kappa(p)?.kappa;
    let k_bits = 64 - opts.max_k.leading_zeros();
    let mut bits = (opts.digits * 4 + k_bits + 2 * ANGLE_SLACK_BITS + 64).max(192);
    let (theta_fixed, turn, half) = loop {
        let th = theta(p, kappa, bits);
        if kappa == 0 {
            break (th, exact_convergents(1, 4), exact_convergents(1, 2));
        }
        let two_pi = fixed::pi(bits) << 1;
        let turn = interval_convergents(&fixed::div(&th, &two_pi, bits), bits, opts.depth);
        let half = interval_convergents(&fixed::div(&th, &(two_pi >> 1), bits), bits, opts.depth);
        if (turn.len() >= opts.depth && half.len() >= opts.depth) || bits >= MAX_BITS {
            break (th, turn, half);
        }
        bits *= 2;
    };

    let mut candidates: Vec<(u64, Expansion, BigInt)> = Vec::new();
    for (src, list) in [(Expansion::Turn, &turn), (Expansion::HalfTurn, &half)] {
        for c in list {
            let Ok(k) = u64::try_from(&c.n) else { continue };
            if k == 0 || k > opts.max_k || arith::pow_mod(p, k, 3) != 1 {
                continue;
            }
            if !candidates.iter().any(|(j, _, _)| *j == k) {
                candidates.push((k, src, c.m.clone()));
            }
        }
    }
    candidates.sort_by_key(|(k, _, _)| *k);

    let findings = candidates
        .into_iter()
        .map(|(k, source, m)| evaluate(p, n, kappa, k, source, m, &theta_fixed, bits, opts.digits))
        .collect();

    Ok(SharpnessProbe {
        p,
        n,
        kappa,
        bits,
        theta_decimal: to_decimal(&theta_fixed, bits, opts.digits),
        theta_fixed,
        turn_convergents: turn,
        half_turn_convergents: half,
        findings,
    })
}

#[allow(clippy::too_many_arguments)]
fn evaluate(
    p: u64,
    n: u64,
    kappa: i64,
    k: u64,
    source: Expansion,
    m: BigInt,
    theta_fixed: &BigInt,
    bits: u32,
    digits: u32,
) -> Finding {
    let (e1, e2) = epsilons_from_residue(arith::pow_mod(p, k, 9), n);
    let s_k = trace_from_kappa(p, kappa, k);
    let q: BigUint = num_traits::pow(BigUint::from(p), k as usize);
    let qi = BigInt::from(q.clone());
    let num = BigInt::from(3 * (e1 + e2) + 10) + &s_k * 2;
    // num / (2 sqrt q) = num sqrt(q) / (2q)
    let deviation = QuadraticSurd::new(0, num, q.clone(), &qi * 2);
    let scale = BigInt::from(10).pow(digits);
    let d_scaled = deviation.scaled(&scale).floor();

    let c_raw = fixed::cos(&(theta_fixed * BigInt::from(k)), bits) << 1;
    let c_scaled: BigInt = (&c_raw * &scale) >> bits;
    let window = QuadraticSurd::new(0, &scale * 8, q, qi).ceil() + 4;
    let within_window = (&d_scaled - &c_scaled).abs() <= window;

    Finding {
        k,
        source,
        m,
        epsilon1: e1,
        epsilon2: e2,
        deviation_decimal: format_scaled(&d_scaled, digits),
        deviation,
        two_cos_decimal: format_scaled(&c_scaled, digits),
        gcd_ok: arith::coprime_to_cofactor(n, p, k, 3),
        within_window,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_quadrants() {
        let bits = 128;
        // kappa = 7 > 0: real part negative, angle in (pi/2, pi)
        let t = fixed::to_f64(&theta(73, 7, bits), bits);
        let expect = (243f64.sqrt() / 2.0).atan2(-3.5);
        assert!((t - expect).abs() < 1e-14);
        // kappa = -5 < 0: angle in (0, pi/2)
        let t = fixed::to_f64(&theta(13, -5, bits), bits);
        assert!((t - (27f64.sqrt() / 2.0).atan2(2.5)).abs() < 1e-14);
        let t = fixed::to_f64(&theta(5, 0, bits), bits);
        assert!((t - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn small_prime_deviations_bounded() {
        let probe = sharpness_probe(7, 1, 8).unwrap();
        assert!(!probe.findings.is_empty());
        for f in &probe.findings {
            let d: f64 = f.deviation_decimal.parse().unwrap();
            let c: f64 = f.two_cos_decimal.parse().unwrap();
            assert!(f.within_window, "k={}", f.k);
            assert!((d - c).abs() <= 8.0 * (7f64).powf(-(f.k as f64) / 2.0) + 1e-14);
            if f.k >= 4 {
                assert!(d.abs() <= 2.0, "k={} d={d}", f.k);
            }
        }
    }

    #[test]
    fn convergents_approximate_theta() {
        let probe = sharpness_probe(73, 35, 12).unwrap();
        let bits = probe.bits;
        let two_pi = fixed::pi(bits) << 1;
        let x = fixed::div(&probe.theta_fixed, &two_pi, bits);
        let den = BigInt::one() << bits;
        for c in &probe.turn_convergents {
            assert!(contfrac::approximates(c, &x, &den));
        }
        assert_eq!(probe.turn_convergents.len(), 12);
    }

    #[test]
    fn even_characteristic_branch() {
        let probe = sharpness_probe(2, 1, 5).unwrap();
        let ks: Vec<u64> = probe.findings.iter().map(|f| f.k).collect();
        assert_eq!(ks, vec![2, 4]);
        // s_2 = -4, s_4 = 8 for p = 2
        assert!(probe.finding(2).unwrap().deviation_decimal.starts_with('-'));
        assert!(!probe.finding(4).unwrap().deviation_decimal.starts_with('-'));
    }

    #[test]
    fn rejects_three() {
        assert_eq!(sharpness_probe(3, 1, 5).unwrap_err(), Error::UnsupportedPrime(3));
    }
}
