//! The acceptance checks, one function per criterion. Each returns an
//! [`Outcome`] that fails on a wrong value or a blown time limit.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use permbinom::arith;
use permbinom::chars::{cubic_char, power_sum, quadratic_char, CubicChar, QuadChar};
use permbinom::curve::{
    char2_cubic_sum, compute_kappa, count_points_extension, count_points_prime, trace_residue_mod_p, pi_trace,
    CurveSpec,
};
use permbinom::sharpness::{sharpness_probe_with, ProbeOptions, SharpnessProbe};
use permbinom::{enumerate_perm_binomials, FieldSpec, Method};

use crate::sweep::{run_verify_sweep, SweepConfig};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl Outcome {
    pub fn line(&self) -> String {
        let limit = self.limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
        format!(
            "{} {:>2} {} ({:.2} s{limit}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Times `check`, which returns whether the math held and a detail line.
fn timed(id: u8, name: &'static str, limit: Option<Duration>, check: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = check();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    if !in_time {
        detail += "; time limit exceeded";
    }
    Outcome { id, name, passed: ok && in_time, detail, elapsed, limit }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// Admissible `a` for `x^35 (x^24 + a)` over `F_73`.
pub const WORKED_EXAMPLE_A: [u64; 16] = [0, 2, 4, 16, 18, 21, 22, 30, 32, 33, 37, 45, 55, 57, 68, 71];

pub fn criterion_1() -> Outcome {
    timed(1, "worked example over F_73, n = 35, r = 3", secs(1), || {
        let f = match FieldSpec::prime(73) {
            Ok(f) => f,
            Err(e) => return (false, e.to_string()),
        };
        let mut detail = String::new();
        let mut ok = true;
        for m in Method::ALL {
            match enumerate_perm_binomials(&f, 35, 3, m) {
                Ok(list) => {
                    let codes: Vec<u64> = list.iter().map(|a| f.encode(a)).collect();
                    let matches = codes == WORKED_EXAMPLE_A;
                    ok &= matches;
                    let _ = write!(detail, "{m}: {} values{}; ", codes.len(), if matches { "" } else { " (mismatch)" });
                }
                Err(e) => {
                    ok = false;
                    let _ = write!(detail, "{m}: {e}; ");
                }
            }
        }
        (ok, detail.trim_end_matches("; ").to_string())
    })
}

pub fn criterion_2() -> Outcome {
    timed(2, "kappa values and point-count cross-check", secs(5), || {
        let expected = [(7u64, 1i64), (13, -5), (73, 7)];
        for (p, k) in expected {
            match compute_kappa(p) {
                Ok(rec) if rec.kappa == k => {}
                Ok(rec) => return (false, format!("kappa_{p} = {}, expected {k}", rec.kappa)),
                Err(e) => return (false, format!("p = {p}: {e}")),
            }
        }
        let primes: Vec<u64> = (5..=499).filter(|&p| arith::is_prime(p) && p % 3 == 1).collect();
        for &p in &primes {
            let rec = match compute_kappa(p) {
                Ok(r) => r,
                Err(e) => return (false, format!("p = {p}: {e}")),
            };
            let inv4 = arith::inv_mod(4, p).expect("p odd") as i64;
            let count = count_points_prime(p, 0, inv4).unwrap_or(0);
            if count as i64 != p as i64 + 1 + rec.kappa {
                return (false, format!("p = {p}: {count} points, kappa = {}", rec.kappa));
            }
            if rec.kappa * rec.kappa > 4 * p as i64 {
                return (false, format!("p = {p}: kappa = {} outside the Hasse window", rec.kappa));
            }
        }
        (true, format!("kappa = 1, -5, 7; {} primes cross-checked", primes.len()))
    })
}

fn sweep_outcome(id: u8, name: &'static str, cfg: SweepConfig) -> Outcome {
    timed(id, name, secs(120), || match run_verify_sweep(&cfg) {
        Ok(res) => {
            let brute = res.cells.iter().filter(|c| c.brute_count.is_some()).count();
            let mut detail = format!("{} cells, {} brute-force checked, {} failures", res.cells.len(), brute, res.failures.len());
            if let Some(f) = res.failures.first() {
                let _ = write!(detail, "; first: q={} n={} {} vs {}: {}", f.q, f.n, f.route_a, f.route_b, f.diff);
            }
            (res.passed(), detail)
        }
        Err(e) => (false, e.to_string()),
    })
}

pub fn r2_sweep_config() -> SweepConfig {
    SweepConfig { q_max: 343, r_set: vec![2], jobs: 1, ..SweepConfig::default() }
}

pub fn r3_sweep_config() -> SweepConfig {
    SweepConfig { q_max: 400, r_set: vec![3], jobs: 1, ..SweepConfig::default() }
}

pub fn criterion_3() -> Outcome {
    sweep_outcome(3, "r = 2 exact count sweep, q <= 343", r2_sweep_config())
}

pub fn criterion_4() -> Outcome {
    sweep_outcome(4, "r = 3 exact count sweep, q <= 400", r3_sweep_config())
}

pub fn criterion_5() -> Outcome {
    timed(5, "point-count congruence mod p, 5 <= p <= 61", secs(60), || {
        let mut curves = 0u64;
        for p in (5..=61).filter(|&p| arith::is_prime(p)) {
            for a in 0..p as i64 {
                for b in 0..p as i64 {
                    let count = match count_points_prime(p, a, b) {
                        Ok(c) => c,
                        Err(e) => return (false, e.to_string()),
                    };
                    let rhs = match trace_residue_mod_p(p, a, b) {
                        Ok(r) => r,
                        Err(e) => return (false, e.to_string()),
                    };
                    if (count + p - 1) % p != rhs {
                        return (false, format!("p = {p}, A = {a}, B = {b}: count {count}, sum {rhs}"));
                    }
                    curves += 1;
                }
            }
        }
        (true, format!("{curves} curves"))
    })
}

pub fn criterion_6() -> Outcome {
    timed(6, "extension point counts against the trace recurrence", secs(120), || {
        let mut detail = String::new();
        for p in [7u64, 13, 19, 31, 37, 73] {
            for j in [1u32, 2] {
                let counted = FieldSpec::new(p, j, None)
                    .and_then(|f| CurveSpec::quarter(&f).and_then(|c| count_points_extension(&f, &c)));
                let counted = match counted {
                    Ok(c) => BigInt::from(c),
                    Err(e) => return (false, format!("p = {p}, j = {j}: {e}")),
                };
                let s = match pi_trace(p, j as u64) {
                    Ok(s) => s,
                    Err(e) => return (false, e.to_string()),
                };
                let expect = BigInt::from(p.pow(j) + 1) - s;
                if counted != expect {
                    return (false, format!("p = {p}, j = {j}: counted {counted}, recurrence {expect}"));
                }
                let _ = write!(detail, "{p}^{j}:{counted} ");
            }
        }
        (true, detail.trim_end().to_string())
    })
}

pub fn criterion_7() -> Outcome {
    timed(7, "characteristic-2 cubic sum", None, || {
        let mut got = Vec::new();
        for k in 1..=3u32 {
            let expect = -2 + (-2i64).pow(k + 1);
            match char2_cubic_sum(k) {
                Ok(v) if v == expect => got.push(v),
                Ok(v) => return (false, format!("k = {k}: {v}, expected {expect}")),
                Err(e) => return (false, e.to_string()),
            }
        }
        (true, format!("{got:?}"))
    })
}

pub fn criterion_8() -> Outcome {
    timed(8, "counts within Masuda-Zieve and corollary bounds", None, || {
        let mut cells = 0;
        for cfg in [r2_sweep_config(), r3_sweep_config()] {
            let cfg = SweepConfig { methods: vec![Method::Criterion], ..cfg };
            let res = match run_verify_sweep(&cfg) {
                Ok(r) => r,
                Err(e) => return (false, e.to_string()),
            };
            for c in &res.cells {
                if !c.within_mz() || c.within_corollary() == Some(false) {
                    return (false, format!("q = {} n = {} r = {}: count {} outside bounds", c.q, c.n, c.r, c.closed_count));
                }
            }
            if !res.passed() {
                return (false, format!("{} failures", res.failures.len()));
            }
            cells += res.cells.len();
        }
        (true, format!("{cells} cells"))
    })
}

fn compare_scaled(probe: &SharpnessProbe, k: u64, bound: i64, digits: u32) -> Option<Ordering> {
    let f = probe.finding(k)?;
    let scale = BigInt::from(10).pow(digits);
    Some(f.deviation.scaled(&scale).cmp_int(&BigInt::from(bound)))
}

fn significant(s: &str, n: usize) -> String {
    s.chars().filter(|c| c.is_ascii_digit()).skip_while(|c| *c == '0').take(n).collect()
}

pub fn criterion_9() -> Outcome {
    timed(9, "sharpness witnesses for p = 73, n = 35", secs(10), || {
        let opts = ProbeOptions { depth: 30, max_k: 10_000, digits: 40 };
        let (a, b) = match (sharpness_probe_with(73, 35, opts), sharpness_probe_with(73, 35, opts)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return (false, e.to_string()),
        };
        let high = compare_scaled(&a, 1217, 1_999_998_451_823, 12);
        let low = compare_scaled(&a, 1578, -199_999_906_282, 11);
        let stable = a.findings.len() == b.findings.len()
            && a.findings.iter().zip(&b.findings).all(|(x, y)| {
                x.k == y.k && significant(&x.deviation_decimal, 10) == significant(&y.deviation_decimal, 10)
            });
        let d = |k| a.finding(k).map(|f| f.deviation_decimal.clone()).unwrap_or_else(|| "missing".into());
        let gcd = |k| a.finding(k).map(|f| f.gcd_ok);
        let detail = format!(
            "d_1217 = {}, d_1578 = {}, gcd flags {:?}/{:?}, stable = {stable}",
            d(1217),
            d(1578),
            gcd(1217),
            gcd(1578)
        );
        (high == Some(Ordering::Greater) && low == Some(Ordering::Less) && stable, detail)
    })
}

pub fn criterion_10() -> Outcome {
    timed(10, "character sums and power sums, q <= 64", None, || {
        let mut fields = 0;
        for q in arith::prime_powers_up_to(64) {
            let (p, k) = arith::prime_power(q).expect("prime power");
            let f = match FieldSpec::new(p, k, None) {
                Ok(f) => f,
                Err(e) => return (false, e.to_string()),
            };
            let nonzero: Vec<_> = f.elements().expect("small field").skip(1).collect();
            if p != 2 {
                let plus = nonzero.iter().filter(|a| quadratic_char(&f, a) == Ok(QuadChar::Plus)).count();
                if 2 * plus != nonzero.len() {
                    return (false, format!("q = {q}: quadratic character sum nonzero"));
                }
            }
            if q % 3 == 1 {
                let mut classes = [0usize; 3];
                for a in &nonzero {
                    match cubic_char(&f, a) {
                        Ok(CubicChar::E(j)) => classes[j as usize] += 1,
                        _ => return (false, format!("q = {q}: cubic character failed")),
                    }
                }
                if classes.iter().any(|&c| c != nonzero.len() / 3) {
                    return (false, format!("q = {q}: cube classes {classes:?}"));
                }
            }
            for m in 0..=3 * (q - 1) {
                let expect = if m > 0 && m % (q - 1) == 0 { f.neg(&f.one()) } else { f.zero() };
                match power_sum(&f, m) {
                    Ok(s) if s == expect => {}
                    Ok(s) => return (false, format!("q = {q}, m = {m}: sum {s}")),
                    Err(e) => return (false, e.to_string()),
                }
            }
            fields += 1;
        }
        (true, format!("{fields} fields"))
    })
}

pub type Criterion = fn() -> Outcome;

pub const ALL: [Criterion; 10] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
];

pub fn run_all() -> Vec<Outcome> {
    ALL.iter().map(|c| c()).collect()
}
