use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use permbinom::chars::{CharTable, CubicChar};
use permbinom::closed::{corollary_bounds_r3, masuda_zieve_bounds, CountReport};
use permbinom::curve::{compute_kappa, count_points_extension, pi_trace, CurveSpec, TraceSequence};
use permbinom::sharpness::{sharpness_probe_with, ProbeOptions};
use permbinom::{enumerate_perm_binomials, Method};
use permbinom_cli::config::{build_field, effective_guard, parse_field, parse_r_set, Format};
use permbinom_cli::report::{emit_count, emit_report, to_json};
use permbinom_cli::selftest;
use permbinom_cli::sweep::{run_verify_sweep, SweepConfig};
use serde_json::json;

#[derive(Parser)]
#[command(name = "permbinom", version, about = "Permutation binomials x^n(x^((q-1)/r) + a) over finite fields")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Ignore the enumeration guard (PERMBINOM_GUARD, default 2^20).
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every a for which the binomial permutes the field.
    Enumerate {
        #[arg(long)]
        field: String,
        /// Modulus coefficients, constant term first.
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        /// criterion, bruteforce, wanlidl or all.
        #[arg(long, default_value = "criterion")]
        method: String,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Closed-form count, optionally checked against enumeration.
    Count {
        #[arg(long)]
        field: String,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        /// Also count by criterion and brute force.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Masuda-Zieve bounds and, for r = 3, the ceiling/floor pair.
    Bounds {
        #[arg(long)]
        field: String,
        #[arg(long)]
        r: u64,
    },
    /// kappa_p with its residue and curve count.
    Kappa {
        #[arg(long)]
        p: u64,
    },
    /// Trace s_j of the curve y^2 = x^3 + 1/4 over F_p.
    Trace {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: u64,
        /// Print s_0 through s_j.
        #[arg(long)]
        all: bool,
    },
    /// Count points on y^2 = x^3 + Ax + B (default A = 0, B = 1/4).
    Curve {
        #[arg(long)]
        field: String,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
    },
    /// Quadratic and cubic character table as CSV or JSON.
    Char {
        #[arg(long)]
        field: String,
        #[arg(long)]
        modulus: Option<String>,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
    /// Convergent-based search for extensions near the ends of the bound window.
    Sharpness {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 30)]
        depth: usize,
        /// Largest extension degree evaluated.
        #[arg(long, default_value_t = 10_000)]
        max_k: u64,
        #[arg(long, default_value_t = 40)]
        digits: u32,
    },
    /// Verify closed forms against the criterion and brute force.
    Sweep {
        #[arg(long, default_value_t = 343)]
        q_max: u64,
        /// Comma-separated subset of {2,3}.
        #[arg(long, default_value = "2,3")]
        r: String,
        /// Comma-separated routes: criterion, bruteforce, wanlidl.
        #[arg(long, default_value = "criterion,bruteforce")]
        method: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Every cell with q up to this gets the sampled routes.
        #[arg(long, default_value_t = 100)]
        full_check_max: u64,
        /// Fraction of larger cells that get the sampled routes.
        #[arg(long, default_value_t = 0.1)]
        sample_rate: f64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Comma-separated criterion numbers; all by default.
        #[arg(long)]
        only: Option<String>,
    },
}

fn parse_methods(s: &str) -> Result<Vec<Method>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Method::ALL.to_vec());
    }
    s.split(',').map(|m| m.trim().parse::<Method>().map_err(|e| anyhow::anyhow!("{e}"))).collect()
}

struct Output {
    bytes: Vec<u8>,
    ok: bool,
}

fn out(bytes: Vec<u8>) -> Output {
    Output { bytes, ok: true }
}

fn run(cli: &Cli) -> Result<Output> {
    let guard = effective_guard(cli.force)?;
    match &cli.command {
        Command::Enumerate { field, modulus, n, r, method, format } => {
            let spec = build_field(field, modulus.as_deref(), guard)?;
            let methods = parse_methods(method)?;
            let mut lists = Vec::new();
            for m in &methods {
                let list = enumerate_perm_binomials(&spec, *n, *r, *m)?;
                lists.push((m, list));
            }
            let agree = lists.windows(2).all(|w| w[0].1 == w[1].1);
            let first = &lists[0].1;
            let values: Vec<String> = first.iter().map(ToString::to_string).collect();
            let bytes = match format {
                Format::Json => to_json(&json!({
                    "q": spec.q(),
                    "n": n,
                    "r": r,
                    "methods": methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
                    "agree": agree,
                    "count": first.len(),
                    "a_values": values,
                }))?,
                Format::Text | Format::Csv => format!("{}\n", values.join("\n")).into_bytes(),
            };
            Ok(Output { bytes, ok: agree })
        }
        Command::Count { field, modulus, n, r, verify, format } => {
            let rep = if *verify {
                let spec = build_field(field, modulus.as_deref(), guard)?;
                CountReport::verified(&spec, *n, *r, true)?
            } else {
                let (p, k) = parse_field(field)?;
                let q = p.checked_pow(k).context("field order overflows")?;
                CountReport::closed(q, *n, *r)?
            };
            let ok = rep.consistent() && rep.within_mz() && rep.within_corollary() != Some(false);
            Ok(Output { bytes: emit_count(&rep, *format)?, ok })
        }
        Command::Bounds { field, r } => {
            let (p, k) = parse_field(field)?;
            let q = p.checked_pow(k).context("field order overflows")?;
            let (lo, hi) = masuda_zieve_bounds(q, *r)?;
            let cor = if *r == 3 { Some(corollary_bounds_r3(q)?) } else { None };
            Ok(out(to_json(&json!({
                "q": q,
                "r": r,
                "mz_lower": lo.to_decimal_floor(6),
                "mz_upper": hi.to_decimal_ceil(6),
                "mz_lower_exact": lo.to_string(),
                "mz_upper_exact": hi.to_string(),
                "cor_lower": cor.as_ref().map(|c| c.0.to_string()),
                "cor_upper": cor.as_ref().map(|c| c.1.to_string()),
            }))?))
        }
        Command::Kappa { p } => {
            let rec = compute_kappa(*p)?;
            Ok(out(to_json(&json!({
                "p": rec.p,
                "kappa": rec.kappa,
                "residue": rec.residue,
                "curve_count": rec.curve_count,
            }))?))
        }
        Command::Trace { p, j, all } => {
            let body = if *all {
                let seq = TraceSequence::new(*p, *j as usize)?;
                json!({
                    "p": p,
                    "kappa": seq.kappa,
                    "values": seq.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            } else {
                json!({ "p": p, "j": j, "s_j": pi_trace(*p, *j)?.to_string() })
            };
            Ok(out(to_json(&body)?))
        }
        Command::Curve { field, modulus, a, b } => {
            let spec = build_field(field, modulus.as_deref(), guard)?;
            let default_curve = a.is_none() && b.is_none();
            let curve = if default_curve {
                CurveSpec::quarter(&spec)?
            } else {
                CurveSpec { a: spec.from_int(a.unwrap_or(0)), b: spec.from_int(b.unwrap_or(0)) }
            };
            let count = count_points_extension(&spec, &curve)?;
            let expected: Option<BigInt> = if default_curve {
                let s = pi_trace(spec.p(), spec.k() as u64)?;
                Some(BigInt::from(spec.q()) + 1 - s)
            } else {
                None
            };
            let ok = expected.as_ref().is_none_or(|e| *e == BigInt::from(count));
            let bytes = to_json(&json!({
                "q": spec.q(),
                "a": curve.a.to_string(),
                "b": curve.b.to_string(),
                "count": count,
                "expected": expected.map(|e| e.to_string()),
            }))?;
            Ok(Output { bytes, ok })
        }
        Command::Char { field, modulus, format } => {
            let spec = build_field(field, modulus.as_deref(), guard)?;
            let table = CharTable::new(&spec)?;
            let rows: Vec<(u64, String, Option<i64>, Option<u8>)> = spec
                .elements()?
                .enumerate()
                .map(|(i, a)| {
                    let i = i as u64;
                    let chi = table.chi(i).ok().map(|c| c.value());
                    let eta = table.eta(i).and_then(CubicChar::exponent);
                    (i, a.to_string(), chi, eta)
                })
                .collect();
            let bytes = match format {
                Format::Json => to_json(
                    &rows
                        .iter()
                        .map(|(i, a, chi, eta)| json!({"index": i, "element": a, "chi": chi, "eta_exponent": eta}))
                        .collect::<Vec<_>>(),
                )?,
                _ => {
                    let mut wtr = csv::Writer::from_writer(Vec::new());
                    wtr.write_record(["index", "element", "chi", "eta_exponent"])?;
                    for (i, a, chi, eta) in &rows {
                        let chi = chi.map(|c| c.to_string()).unwrap_or_default();
                        let eta = eta.map(|e| e.to_string()).unwrap_or_default();
                        wtr.write_record([i.to_string(), a.clone(), chi, eta])?;
                    }
                    wtr.into_inner()?
                }
            };
            Ok(out(bytes))
        }
        Command::Sharpness { p, n, depth, max_k, digits } => {
            let probe = sharpness_probe_with(*p, *n, ProbeOptions { depth: *depth, max_k: *max_k, digits: *digits })?;
            let conv = |v: &[permbinom::contfrac::Convergent]| {
                v.iter().map(|c| [c.m.to_string(), c.n.to_string()]).collect::<Vec<_>>()
            };
            let findings: Vec<_> = probe
                .findings
                .iter()
                .map(|f| {
                    json!({
                        "k": f.k,
                        "source": f.source.to_string(),
                        "m": f.m.to_string(),
                        "epsilon1": f.epsilon1,
                        "epsilon2": f.epsilon2,
                        "deviation": f.deviation_decimal,
                        "two_cos": f.two_cos_decimal,
                        "gcd_ok": f.gcd_ok,
                        "within_window": f.within_window,
                    })
                })
                .collect();
            let ok = probe.findings.iter().all(|f| f.within_window);
            let bytes = to_json(&json!({
                "p": probe.p,
                "n": probe.n,
                "kappa": probe.kappa,
                "theta": probe.theta_decimal,
                "bits": probe.bits,
                "turn_convergents": conv(&probe.turn_convergents),
                "half_turn_convergents": conv(&probe.half_turn_convergents),
                "findings": findings,
            }))?;
            Ok(Output { bytes, ok })
        }
        Command::Sweep { q_max, r, method, jobs, format, full_check_max, sample_rate, seed, timing } => {
            let mut methods = parse_methods(method)?;
            if !methods.contains(&Method::Criterion) {
                methods.push(Method::Criterion);
            }
            let cfg = SweepConfig {
                q_max: *q_max,
                r_set: parse_r_set(r)?,
                methods,
                jobs: *jobs,
                full_check_max: *full_check_max,
                sample_rate: *sample_rate,
                seed: *seed,
                guard,
            };
            let res = run_verify_sweep(&cfg)?;
            if *format == Format::Csv {
                for f in &res.failures {
                    eprintln!("FAIL q={} n={} r={} {} vs {}: {}", f.q, f.n, f.r, f.route_a, f.route_b, f.diff);
                }
            }
            Ok(Output { bytes: emit_report(&res, *format, *timing)?, ok: res.passed() })
        }
        Command::Selftest { only } => {
            let picks: Vec<usize> = match only {
                Some(s) => s
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().context("criterion numbers are 1 to 10"))
                    .collect::<Result<_>>()?,
                None => (1..=selftest::ALL.len()).collect(),
            };
            if picks.iter().any(|&i| i == 0 || i > selftest::ALL.len()) {
                bail!("criterion numbers are 1 to {}", selftest::ALL.len());
            }
            let mut text = String::new();
            let mut ok = true;
            for i in picks {
                let o = selftest::ALL[i - 1]();
                ok &= o.passed;
                text += &o.line();
                text.push('\n');
            }
            Ok(Output { bytes: text.into_bytes(), ok })
        }
    }
}

fn write_output(path: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| write_output(cli.out.as_ref(), &o.bytes).map(|_| o.ok));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
