//! Verification sweeps over every `(q, n, r)` cell up to a bound.
//!
//! Each cell compares the closed-form count with the character criterion
//! and, on selected cells, with brute force and the Wan-Lidl criterion.
//! Disagreements are recorded, never raised.

use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use num_bigint::BigInt;
use permbinom::arith;
use permbinom::closed::CountReport;
use permbinom::perm::{compute_index_form, wan_lidl_check, BinomialEvaluator, CriterionProfile};
use permbinom::{FieldSpec, Method, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub q_max: u64,
    pub r_set: Vec<u64>,
    /// Routes checked against the closed form. The criterion always runs.
    pub methods: Vec<Method>,
    pub jobs: usize,
    /// Brute force and Wan-Lidl run on every cell with `q` up to this.
    pub full_check_max: u64,
    /// Fraction of the remaining cells that get them.
    pub sample_rate: f64,
    pub seed: u64,
    pub guard: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            q_max: 343,
            r_set: vec![2, 3],
            methods: vec![Method::Criterion, Method::BruteForce],
            jobs: 1,
            full_check_max: 100,
            sample_rate: 0.1,
            seed: 0x5eed,
            guard: permbinom::field::DEFAULT_ENUMERATION_GUARD,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_max > self.guard {
            bail!("q_max = {} exceeds the enumeration guard {}; pass --force", self.q_max, self.guard);
        }
        if self.r_set.is_empty() || self.r_set.iter().any(|r| *r != 2 && *r != 3) {
            bail!("index set must be a nonempty subset of {{2, 3}}");
        }
        if !(0.0..=1.0).contains(&self.sample_rate) {
            bail!("sample rate must lie in [0, 1]");
        }
        if self.jobs == 0 {
            bail!("at least one worker is needed");
        }
        Ok(())
    }

    /// Whether the sampled routes run on this cell. Deterministic in the
    /// seed and the cell.
    pub fn samples(&self, q: u64, n: u64, r: u64) -> bool {
        if q <= self.full_check_max {
            return true;
        }
        let mix = self.seed
            ^ q.wrapping_mul(0x9e37_79b9_7f4a_7c15)
            ^ n.wrapping_mul(0xbf58_476d_1ce4_e5b9)
            ^ r.wrapping_mul(0x94d0_49bb_1331_11eb);
        ChaCha8Rng::seed_from_u64(mix).gen_bool(self.sample_rate)
    }
}

/// Two routes disagreed on a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub q: u64,
    pub n: u64,
    pub r: u64,
    pub route_a: String,
    pub route_b: String,
    pub diff: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepResult {
    pub cells: Vec<CountReport>,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether index `r` applies to `F_q`: `r | q - 1`, and `q` odd for `r = 2`.
pub fn index_applies(q: u64, r: u64) -> bool {
    (q - 1) % r == 0 && !(r == 2 && q % 2 == 0)
}

/// Prime powers `q <= q_max` for which index `r` applies.
pub fn admissible_orders(q_max: u64, r: u64) -> Vec<u64> {
    arith::prime_powers_up_to(q_max).into_iter().filter(|&q| index_applies(q, r)).collect()
}

/// Every `n` in `1..q` with `gcd(n, (q-1)/r) = 1`.
pub fn valid_exponents(q: u64, r: u64) -> impl Iterator<Item = u64> {
    (1..q).filter(move |&n| arith::gcd(n, (q - 1) / r) == 1)
}

pub fn run_verify_sweep(config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let start = Instant::now();
    let tasks: Vec<(u64, u64)> = arith::prime_powers_up_to(config.q_max)
        .into_iter()
        .flat_map(|q| config.r_set.iter().map(move |&r| (q, r)))
        .filter(|&(q, r)| index_applies(q, r))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build()?;
    let parts: Vec<(Vec<CountReport>, Vec<Failure>)> =
        pool.install(|| tasks.par_iter().map(|&(q, r)| run_field(config, q, r)).collect());

    let mut result = SweepResult::default();
    for (cells, failures) in parts {
        result.cells.extend(cells);
        result.failures.extend(failures);
    }
    result.cells.sort_by_key(|c| (c.q, c.n, c.r));
    result.failures.sort_by(|a, b| (a.q, a.n, a.r).cmp(&(b.q, b.n, b.r)));
    result.elapsed = start.elapsed();
    Ok(result)
}

fn failure(q: u64, n: u64, r: u64, a: &str, b: &str, diff: String) -> Failure {
    Failure { q, n, r, route_a: a.into(), route_b: b.into(), diff }
}

fn describe(a: &[u64], b: &[u64]) -> String {
    if a.len() != b.len() {
        format!("{} vs {}", a.len(), b.len())
    } else {
        let first = a.iter().zip(b).find(|(x, y)| x != y).map(|(x, _)| *x).unwrap_or(0);
        format!("same count {}, sets differ at index {first}", a.len())
    }
}

fn run_field(config: &SweepConfig, q: u64, r: u64) -> (Vec<CountReport>, Vec<Failure>) {
    let mut cells = Vec::new();
    let mut failures = Vec::new();
    let (p, k) = arith::prime_power(q).expect("q is a prime power");
    let setup = FieldSpec::new(p, k, None)
        .map(|spec| spec.with_guard(config.guard))
        .and_then(|spec| CriterionProfile::new(&spec, r).map(|profile| (spec, profile)));
    let (spec, profile) = match setup {
        Ok(v) => v,
        Err(e) => {
            failures.push(failure(q, 0, r, "setup", "setup", e.to_string()));
            return (cells, failures);
        }
    };
    let brute = config.methods.contains(&Method::BruteForce);
    let wan_lidl = config.methods.contains(&Method::WanLidl);

    for n in valid_exponents(q, r) {
        let mut report = match CountReport::closed(q, n, r) {
            Ok(rep) => rep,
            Err(e) => {
                failures.push(failure(q, n, r, "closed", "closed", e.to_string()));
                continue;
            }
        };
        let criterion = profile.admissible(n);
        report.criterion_count = Some(criterion.len() as u64);
        if BigInt::from(criterion.len()) != report.closed_count {
            failures.push(failure(
                q,
                n,
                r,
                "criterion",
                "closed",
                format!("{} vs {}", criterion.len(), report.closed_count),
            ));
        }

        if (brute || wan_lidl) && config.samples(q, n, r) {
            if brute {
                match brute_list(&spec, n, r) {
                    Ok(list) => {
                        report.brute_count = Some(list.len() as u64);
                        if list != criterion {
                            failures.push(failure(q, n, r, "bruteforce", "criterion", describe(&list, &criterion)));
                        }
                    }
                    Err(e) => failures.push(failure(q, n, r, "bruteforce", "bruteforce", e.to_string())),
                }
            }
            if wan_lidl {
                match wan_lidl_list(&spec, n, r) {
                    Ok(list) if list != criterion => {
                        failures.push(failure(q, n, r, "wanlidl", "criterion", describe(&list, &criterion)))
                    }
                    Ok(_) => {}
                    Err(e) => failures.push(failure(q, n, r, "wanlidl", "wanlidl", e.to_string())),
                }
            }
        }

        if !report.within_mz() {
            failures.push(failure(q, n, r, "closed", "masuda-zieve", bounds_diff(&report)));
        }
        if report.within_corollary() == Some(false) {
            failures.push(failure(q, n, r, "closed", "corollary", bounds_diff(&report)));
        }
        cells.push(report);
    }
    (cells, failures)
}

fn bounds_diff(rep: &CountReport) -> String {
    format!(
        "count {} against [{}, {}]",
        rep.closed_count,
        rep.mz_lower.to_decimal_floor(3),
        rep.mz_upper.to_decimal_ceil(3)
    )
}

fn brute_list(spec: &FieldSpec, n: u64, r: u64) -> permbinom::Result<Vec<u64>> {
    let eval = BinomialEvaluator::new(spec, n, r)?;
    Ok((0..spec.q()).filter(|&i| eval.permutes(&spec.decode(i))).collect())
}

fn wan_lidl_list(spec: &FieldSpec, n: u64, r: u64) -> permbinom::Result<Vec<u64>> {
    let mut out = Vec::new();
    for i in 0..spec.q() {
        let a = spec.decode(i);
        let form = compute_index_form(spec, &Polynomial::binomial(spec, n, r, &a))?;
        if wan_lidl_check(spec, &form)? {
            out.push(i);
        }
    }
    Ok(out)
}
