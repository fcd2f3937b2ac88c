//! Command-line front end: exact Möbius progression sums plus the
//! numerical verification suite for the analytic machinery behind their
//! conditional bounds.

mod output;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use mertens_ap::analytic::{perron_mertens_ap_batch, verify_explicit_formula_both};
use mertens_ap::bounds::{
    check_elem1, check_elem2, comparison_table, contour_schedule, elementary_inequality_sweep,
    main_envelope, EnvelopeParams, VPolicy,
};
use mertens_ap::characters::{character_by_label, character_group, orthogonality_sum_in};
use mertens_ap::data;
use mertens_ap::selberg::{fourier_quadrature, mass_quadrature, SelbergPair, SelbergSign};
use mertens_ap::sieve::{
    mertens, mertens_ap, mertens_ap_all, mu_trial, sieve_segment, verify_reduction_identity,
};
use mertens_ap::util::SplitMix64;
use mertens_ap::zeros::{
    classify_typical, count_zeros, goldston_gonek_check, minimal_typical_v, range_bounds,
    window_deviation, LambdaTable, ZeroDataset,
};
use mertens_ap::Error;

use output::{fmt_real, Format, Table, Value};

#[derive(Parser)]
#[command(
    name = "mertens-ap",
    version,
    about = "Exact Möbius sums over arithmetic progressions and desk-scale verification of the analytic objects bounding them"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Directory of lzeros-v1 dataset files (MERTENS_AP_DATA overrides).
    #[arg(long, global = true)]
    dataset_dir: Option<PathBuf>,

    /// Worker threads; defaults to the logical core count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = 0x6d65_7274)]
    seed: u64,

    /// Run the subcommand's module invariant suite instead of the normal
    /// operation.
    #[arg(long, global = true)]
    self_test: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact Mertens function M(x).
    Mertens {
        #[arg(long)]
        x: u64,
    },
    /// Exact progression sum M(x; q, a) with its gcd decomposition.
    MertensAp {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// The character group mod q: labels, orders, conductors, parity.
    Characters {
        #[arg(long)]
        q: u64,
    },
    /// Majorant/minorant checks for one (h, delta) pair.
    SelbergCheck {
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        #[arg(long, default_value_t = 2.0)]
        delta: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Two-sided explicit-formula verification at center t.
    ExplicitFormula {
        /// Character label q:e1,e2,... (e.g. 4:1).
        #[arg(long)]
        chi: String,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        #[arg(long, default_value_t = 2.0)]
        delta: f64,
    },
    /// Zero-dataset statistics: counts, window deviation, absolute-bound
    /// margin.
    ZerosStats {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
    },
    /// Typicality classification of an ordinate, or the minimal level over
    /// [n, n+1] with --minimal.
    Typicality {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: f64,
        /// Order T; defaults to t/1.5 so that t lies inside [T, 2T].
        #[arg(long)]
        t_order: Option<f64>,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Scan for the smallest passing V over [floor(t), floor(t)+1].
        #[arg(long)]
        minimal: bool,
    },
    /// Randomized sweeps of the two proved elementary inequalities.
    Inequalities {
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Exact sums against the envelope, the trivial bound, and the
    /// conjectured true order.
    EnvelopeTable {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        a: i64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Comma-separated x values.
        #[arg(long, default_value = "16,100,1000,10000,100000,1000000")]
        x_list: String,
    },
    /// Dyadic contour schedule with per-ordinate typicality levels.
    ContourSchedule {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value_t = 2.0)]
        c: f64,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
    },
    /// Perron reconstruction of M(x; q, a) against the sieve.
    PerronCheck {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        q: u64,
        /// Check a single residue instead of all of them.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::SizeCap { .. } | Error::Parse { .. } | Error::Validation(_) => 2,
        Error::Coverage { .. } | Error::Tolerance(_) => 3,
    }
}

fn threads(cli: &Cli) -> usize {
    cli.threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn config_echo() -> String {
    std::env::args().collect::<Vec<_>>().join(" ")
}

fn emit(cli: &Cli, table: &Table, plain: Option<String>) -> Result<(), Error> {
    let io_err = |e: std::io::Error| Error::Validation(format!("output failed: {e}"));
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(std::fs::File::create(path).map_err(io_err)?),
        None => Box::new(std::io::stdout()),
    };
    match cli.format {
        Format::Plain => match plain {
            Some(text) => writeln!(sink, "{text}").map_err(io_err),
            None => table.write_plain(&mut sink).map_err(io_err),
        },
        Format::Csv => table.write_csv(&mut sink).map_err(io_err),
        Format::Json => table.write_json(&mut sink, &config_echo()).map_err(io_err),
    }
}

/// Dataset resolution: MERTENS_AP_DATA overrides --dataset-dir; bundled
/// data is the fallback for q in {1, 3, 4}.
fn load_dataset(cli: &Cli, q: u64) -> Result<ZeroDataset, Error> {
    let dir = std::env::var_os("MERTENS_AP_DATA")
        .map(PathBuf::from)
        .or_else(|| cli.dataset_dir.clone());
    if let Some(dir) = dir {
        return dataset_from_dir(&dir, q);
    }
    match data::bundled_for_modulus(q) {
        Some(ds) => ds,
        None => Err(Error::Validation(format!(
            "no bundled dataset for q = {q}; point --dataset-dir or MERTENS_AP_DATA at one"
        ))),
    }
}

fn dataset_from_dir(dir: &Path, q: u64) -> Result<ZeroDataset, Error> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::Validation(format!("cannot read dataset dir {dir:?}: {e}")))?;
    for entry in entries.flatten() {
        let path = entry.path();
        if path.extension().is_none_or(|e| e != "lzeros") {
            continue;
        }
        let ds = mertens_ap::zeros::load_zeros(&path)?;
        if ds.q == q {
            return Ok(ds);
        }
    }
    Err(Error::Validation(format!(
        "no lzeros-v1 file for q = {q} under {dir:?}"
    )))
}

fn parse_chi_label(label: &str) -> Result<(u64, Vec<u64>), Error> {
    let (q_str, exps_str) = label.split_once(':').ok_or_else(|| {
        Error::Validation(format!("character label must be q:e1,e2,...; got {label:?}"))
    })?;
    let q: u64 = q_str
        .parse()
        .map_err(|e| Error::Validation(format!("bad modulus in {label:?}: {e}")))?;
    let exps = if exps_str.is_empty() {
        Vec::new()
    } else {
        exps_str
            .split(',')
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|e| Error::Validation(format!("bad exponent in {label:?}: {e}")))
            })
            .collect::<Result<Vec<u64>, Error>>()?
    };
    Ok((q, exps))
}

fn run(cli: &Cli) -> Result<(), Error> {
    if cli.self_test {
        return self_test(cli);
    }
    match &cli.cmd {
        Cmd::Mertens { x } => {
            let value = mertens(*x)?;
            let mut table = Table::new(&["x", "m"]);
            table.push(vec![Value::UInt(*x), Value::Int(value)]);
            emit(cli, &table, Some(value.to_string()))
        }
        Cmd::MertensAp { x, q, a } => {
            let ps = mertens_ap(*x, *q, *a)?;
            let mut table = Table::new(&["x", "q", "a", "value", "d", "b", "r"]);
            table.push(vec![
                Value::UInt(ps.x),
                Value::UInt(ps.q),
                Value::UInt(ps.a),
                Value::Int(ps.value),
                Value::UInt(ps.d),
                Value::UInt(ps.b),
                Value::UInt(ps.r),
            ]);
            emit(cli, &table, Some(ps.value.to_string()))
        }
        Cmd::Characters { q } => {
            let chars = character_group(*q)?;
            let mut table = Table::new(&[
                "label",
                "order",
                "conductor",
                "kappa",
                "primitive",
                "principal",
            ]);
            for chi in &chars {
                table.push(vec![
                    Value::Str(chi.label()),
                    Value::UInt(chi.order()),
                    Value::UInt(chi.conductor()),
                    Value::UInt(chi.kappa() as u64),
                    Value::Bool(chi.is_primitive()),
                    Value::Bool(chi.is_principal()),
                ]);
            }
            emit(cli, &table, None)
        }
        Cmd::SelbergCheck { h, delta, samples } => {
            let pair = SelbergPair::new(*h, *delta)?;
            let mut rng = SplitMix64::new(cli.seed);
            let mut violations = 0u64;
            for _ in 0..*samples {
                let u = rng.range_f64(-10.0 * h, 10.0 * h);
                let indicator = if u.abs() <= *h { 1.0 } else { 0.0 };
                if pair.evaluate(SelbergSign::Minus, u) > indicator
                    || pair.evaluate(SelbergSign::Plus, u) < indicator
                {
                    violations += 1;
                }
            }
            let mut table = Table::new(&[
                "sign",
                "sandwich_violations",
                "l1_mass",
                "mass_bound",
                "fourier_at_1.5delta",
                "fourier_err",
                "decay_constant",
            ]);
            for sign in [SelbergSign::Plus, SelbergSign::Minus] {
                let mass = mass_quadrature(&pair, sign);
                let fourier = fourier_quadrature(&pair, sign, 1.5 * delta, 1e-6)?;
                table.push(vec![
                    Value::Str(if sign == SelbergSign::Plus { "+" } else { "-" }.into()),
                    Value::UInt(violations),
                    Value::Float(mass.value),
                    Value::Float(1.0 / delta),
                    Value::Float(fourier.value),
                    Value::Float(fourier.error),
                    Value::Float(pair.decay_constant(sign)),
                ]);
            }
            if violations > 0 {
                emit(cli, &table, None)?;
                return Err(Error::Tolerance(format!("{violations} sandwich violations")));
            }
            emit(cli, &table, None)
        }
        Cmd::ExplicitFormula { chi, t, h, delta } => {
            let (q, exps) = parse_chi_label(chi)?;
            let chi = character_by_label(q, &exps)?;
            let ds = load_dataset(cli, q)?;
            let pair = SelbergPair::new(*h, *delta)?;
            let reports = verify_explicit_formula_both(&chi, &ds, *t, &pair)?;
            let mut table = Table::new(&[
                "sign",
                "t",
                "lhs",
                "rhs_conductor",
                "rhs_pole",
                "rhs_archimedean",
                "rhs_prime_sum",
                "rhs_total",
                "discrepancy",
                "estimate",
                "holds",
            ]);
            let mut all_hold = true;
            for r in &reports {
                all_hold &= r.holds;
                table.push(vec![
                    Value::Str(if r.sign == SelbergSign::Plus { "+" } else { "-" }.into()),
                    Value::Float(r.t),
                    Value::Float(r.lhs),
                    Value::Float(r.rhs_conductor),
                    Value::Float(r.rhs_pole),
                    Value::Float(r.rhs_archimedean),
                    Value::Float(r.rhs_prime_sum),
                    Value::Float(r.rhs_total()),
                    Value::Float(r.discrepancy()),
                    Value::Float(r.truncation_error_estimate),
                    Value::Bool(r.holds),
                ]);
            }
            let verdict = if all_hold { "PASS" } else { "FAIL" };
            let plain = format!(
                "{verdict}: lhs+ {} rhs+ {} | lhs- {} rhs- {} (estimate {})",
                fmt_real(reports[0].lhs),
                fmt_real(reports[0].rhs_total()),
                fmt_real(reports[1].lhs),
                fmt_real(reports[1].rhs_total()),
                fmt_real(reports[0].truncation_error_estimate),
            );
            emit(cli, &table, Some(plain))?;
            if all_hold {
                Ok(())
            } else {
                Err(Error::Tolerance(
                    "explicit formula discrepancy exceeded estimate".into(),
                ))
            }
        }
        Cmd::ZerosStats { q, t, h } => {
            let ds = load_dataset(cli, *q)?;
            let mut table = Table::new(&[
                "q",
                "zeros",
                "gamma_max",
                "t",
                "count_to_t",
                "window_deviation",
                "gg_margin",
            ]);
            let t_eff = t.unwrap_or((ds.gamma_max - h - 1.0).floor());
            let count = count_zeros(&ds, t_eff)?;
            let dev = window_deviation(&ds, t_eff, *h)?;
            // The absolute-bound margin needs qt >= e^e.
            let gg = match goldston_gonek_check(&ds, t_eff, *h) {
                Ok(m) => Value::Float(m),
                Err(Error::Domain(_)) => Value::Str("n/a".into()),
                Err(e) => return Err(e),
            };
            table.push(vec![
                Value::UInt(ds.q),
                Value::UInt(ds.ordinates.len() as u64),
                Value::Float(ds.gamma_max),
                Value::Float(t_eff),
                Value::UInt(count as u64),
                Value::Float(dev),
                gg,
            ]);
            emit(cli, &table, None)
        }
        Cmd::Typicality {
            q,
            t,
            t_order,
            v,
            delta,
            minimal,
        } => {
            let ds = load_dataset(cli, *q)?;
            let chars = character_group(*q)?;
            let chi = chars
                .iter()
                .find(|c| c.is_primitive() && (*q == 1 || !c.is_principal()))
                .ok_or_else(|| Error::Validation(format!("no primitive character mod {q}")))?;
            let t_ord = t_order.unwrap_or(t / 1.5);
            let (abound, bbound) = range_bounds(t_ord, *q)?;
            let y_cap = ((*q as f64 * t_ord) as u64).clamp(64, 2_000_000);
            let lambda = LambdaTable::up_to(y_cap)?;
            if *minimal {
                let n = t.floor() as u64;
                let v_min = minimal_typical_v(&ds, chi, n, t_ord, *delta, &lambda)?;
                let mut table = Table::new(&["n", "t_order", "a", "b", "minimal_v"]);
                table.push(vec![
                    Value::UInt(n),
                    Value::Float(t_ord),
                    Value::Float(abound),
                    Value::Float(bbound),
                    Value::UInt(v_min),
                ]);
                emit(cli, &table, Some(v_min.to_string()))
            } else {
                let v_eff = v.unwrap_or(bbound.ceil() as u64);
                let rep = classify_typical(&ds, chi, *t, t_ord, v_eff, *delta, &lambda)?;
                let mut table = Table::new(&[
                    "t",
                    "t_order",
                    "v",
                    "delta",
                    "y",
                    "margin_i",
                    "margin_ii",
                    "margin_iii",
                    "typical",
                ]);
                table.push(vec![
                    Value::Float(rep.t),
                    Value::Float(rep.t_order),
                    Value::UInt(rep.v),
                    Value::Float(rep.delta),
                    Value::Float(rep.y),
                    Value::Float(rep.criterion_i_margin),
                    Value::Float(rep.criterion_ii_margin),
                    Value::Float(rep.criterion_iii_margin),
                    Value::Bool(rep.is_typical()),
                ]);
                emit(cli, &table, Some(rep.is_typical().to_string()))
            }
        }
        Cmd::Inequalities { trials } => {
            let (w1, w2) = elementary_inequality_sweep(*trials, cli.seed);
            let mut table = Table::new(&["inequality", "trials", "worst_margin"]);
            table.push(vec![
                Value::Str("elem1".into()),
                Value::UInt(*trials),
                Value::Float(w1),
            ]);
            table.push(vec![
                Value::Str("elem2".into()),
                Value::UInt(*trials),
                Value::Float(w2),
            ]);
            emit(
                cli,
                &table,
                Some(format!(
                    "elem1 worst {} | elem2 worst {}",
                    fmt_real(w1),
                    fmt_real(w2)
                )),
            )?;
            if w1 < 0.0 || w2 < 0.0 {
                return Err(Error::Tolerance(
                    "a proved inequality returned a negative margin (implementation bug)".into(),
                ));
            }
            Ok(())
        }
        Cmd::EnvelopeTable {
            q,
            a,
            epsilon,
            x_list,
        } => {
            let xs: Vec<u64> = x_list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Validation(format!("bad x value {t:?}: {e}")))
                })
                .collect::<Result<_, _>>()?;
            let rows = comparison_table(&xs, *q, *a, *epsilon)?;
            let mut table = Table::new(&[
                "x",
                "m_value",
                "envelope_log",
                "envelope",
                "trivial",
                "gonek",
            ]);
            for row in rows {
                table.push(vec![
                    Value::UInt(row.x),
                    Value::Int(row.m_value),
                    Value::Float(row.envelope_log),
                    match row.envelope {
                        Some(v) => Value::Float(v),
                        None => Value::Str("overflow".into()),
                    },
                    Value::Float(row.trivial),
                    match row.gonek {
                        Some(v) => Value::Float(v),
                        None => Value::Str("n/a".into()),
                    },
                ]);
            }
            emit(cli, &table, None)
        }
        Cmd::ContourSchedule { x, q, c, delta } => {
            let chars = character_group(*q)?;
            let chi = chars
                .iter()
                .find(|ch| *q == 1 || !ch.is_principal())
                .unwrap_or(&chars[0]);
            let ds = load_dataset(cli, chi.conductor().max(1)).or_else(|_| load_dataset(cli, *q))?;
            let lambda = LambdaTable::up_to(4000)?;
            let sched = contour_schedule(*x, *q, chi, &ds, *delta, *c, &lambda)?;
            let mut table = Table::new(&["k", "t_k", "n_lo", "n_hi", "policy", "v_min", "v_max"]);
            for seg in &sched.segments {
                let (policy, v_min, v_max) = match &seg.policy {
                    VPolicy::PerOrdinate(levels) => {
                        let lo = levels.iter().map(|&(_, v)| v).min().unwrap_or(0);
                        let hi = levels.iter().map(|&(_, v)| v).max().unwrap_or(0);
                        ("per-ordinate", lo, hi)
                    }
                    VPolicy::Uniform(v) => ("uniform-ceiling", *v, *v),
                    VPolicy::PreAsymptotic => ("pre-asymptotic", 0, 0),
                };
                table.push(vec![
                    Value::UInt(seg.k as u64),
                    Value::Float(seg.t_k),
                    Value::UInt(seg.n_lo),
                    Value::UInt(seg.n_hi),
                    Value::Str(policy.into()),
                    Value::UInt(v_min),
                    Value::UInt(v_max),
                ]);
            }
            let plain = format!(
                "K={} l={} degenerate={} segments={}",
                sched.k_max,
                sched.l,
                sched.degenerate,
                sched.segments.len()
            );
            if cli.format == Format::Plain {
                emit(cli, &table, Some(plain))
            } else {
                emit(cli, &table, None)
            }
        }
        Cmd::PerronCheck { x, q, a } => {
            let batch = perron_mertens_ap_batch(*x, *q, threads(cli))?;
            let exact = mertens_ap_all(*x, *q)?;
            let mut table = Table::new(&[
                "a",
                "d",
                "x_over_d",
                "perron",
                "sieve",
                "abs_diff",
                "budget",
                "ok",
            ]);
            let residues: Vec<u64> = match a {
                Some(a) => vec![a.rem_euclid(*q as i64) as u64],
                None => (0..*q).collect(),
            };
            let mut all_ok = true;
            for &res in &residues {
                let asm = &batch[res as usize];
                let budget = 5.0 * asm.x_over_d.max(std::f64::consts::E).ln();
                let diff = (asm.value.re - exact[res as usize] as f64).abs();
                let ok = diff <= budget;
                all_ok &= ok;
                table.push(vec![
                    Value::UInt(res),
                    Value::UInt(asm.d),
                    Value::Float(asm.x_over_d),
                    Value::Float(asm.value.re),
                    Value::Int(exact[res as usize]),
                    Value::Float(diff),
                    Value::Float(budget),
                    Value::Bool(ok),
                ]);
            }
            emit(cli, &table, None)?;
            if all_ok {
                Ok(())
            } else {
                Err(Error::Tolerance(
                    "perron reconstruction exceeded 5 log(x/d)".into(),
                ))
            }
        }
    }
}

/// Compact per-module invariant suites behind --self-test.
fn self_test(cli: &Cli) -> Result<(), Error> {
    let mut rng = SplitMix64::new(cli.seed);
    let mut failures = 0u32;
    let mut check = |name: &str, ok: bool| {
        println!("self-test {name}: {}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };
    match &cli.cmd {
        Cmd::Mertens { .. } | Cmd::MertensAp { .. } => {
            check(
                "mertens small values",
                mertens(10)? == -1 && mertens(1000)? == 2,
            );
            let seg = sieve_segment(1, 20_000)?;
            check(
                "sieve vs trial factorization",
                (1..=20_000u64).all(|n| seg.mu_at(n) == mu_trial(n)),
            );
            let mut ok = true;
            for _ in 0..50 {
                let x = rng.range_u64(1, 20_000);
                let q = rng.range_u64(1, 60);
                let buckets = mertens_ap_all(x, q)?;
                ok &= buckets.iter().sum::<i64>() == mertens(x)?;
                ok &= verify_reduction_identity(x, q, rng.below(q) as i64)?.holds;
            }
            check("partition and reduction identities", ok);
        }
        Cmd::Characters { q } => {
            let chars = character_group(*q)?;
            let mut ok = true;
            for _ in 0..200 {
                let n = rng.below(3 * *q + 5) as i64;
                let a = (1 + rng.below(*q)) as i64;
                if *q > 1 && mertens_ap::util::gcd_u64(a as u64 % *q, *q) != 1 {
                    continue;
                }
                let s = orthogonality_sum_in(&chars, n, a)?;
                let expect = f64::from(s.exact);
                ok &= (s.value.re - expect).abs() < 1e-11 && s.value.im.abs() < 1e-11;
            }
            check("orthogonality exactness", ok);
            check(
                "conductor divides modulus",
                chars.iter().all(|c| q % c.conductor() == 0),
            );
            check(
                "inducing primitive is idempotent",
                chars.iter().all(|c| {
                    let c1 = c.inducing_primitive().unwrap();
                    c1.is_primitive() && c1.kappa() == c.kappa()
                }),
            );
        }
        Cmd::SelbergCheck { h, delta, .. } => {
            let pair = SelbergPair::new(*h, *delta)?;
            let mut ok = true;
            for _ in 0..4000 {
                let u = rng.range_f64(-10.0 * h, 10.0 * h);
                let indicator = if u.abs() <= *h { 1.0 } else { 0.0 };
                ok &= pair.evaluate(SelbergSign::Minus, u) <= indicator;
                ok &= pair.evaluate(SelbergSign::Plus, u) >= indicator;
            }
            check("sandwich", ok);
            let mut interp = true;
            for n in 1..=20i32 {
                interp &= (mertens_ap::selberg::beurling_h(n as f64) - 1.0).abs() < 1e-10;
                interp &= (mertens_ap::selberg::beurling_h(-n as f64) + 1.0).abs() < 1e-10;
            }
            check("sign-function interpolation", interp);
            let mass = mass_quadrature(&pair, SelbergSign::Plus);
            check("l1 mass", mass.value <= 1.0 / delta + 1e-6);
        }
        Cmd::ExplicitFormula { .. } | Cmd::ZerosStats { .. } => {
            for q in [3u64, 4] {
                let ds = load_dataset(cli, q)?;
                let chi = character_group(q)?
                    .into_iter()
                    .find(|c| !c.is_principal())
                    .unwrap();
                let pair = SelbergPair::new(1.0, 2.0)?;
                let reports = verify_explicit_formula_both(&chi, &ds, 20.0, &pair)?;
                check(
                    &format!("explicit formula q={q} at t=20"),
                    reports.iter().all(|r| r.holds),
                );
            }
        }
        Cmd::Typicality { q, .. } => {
            let ds = load_dataset(cli, *q)?;
            let chars = character_group(*q)?;
            let chi = chars
                .iter()
                .find(|c| c.is_primitive() && (*q == 1 || !c.is_principal()))
                .unwrap();
            let lambda = LambdaTable::up_to(4000)?;
            let mut ok = true;
            for &gamma in ds.ordinates.iter().take(40) {
                if gamma + 1.0 > ds.gamma_max {
                    continue;
                }
                let t_ord = gamma / 1.5;
                let Ok((_, b)) = range_bounds(t_ord, *q) else {
                    continue;
                };
                let rep = classify_typical(&ds, chi, gamma, t_ord, b.ceil() as u64, 1.0, &lambda)?;
                ok &= rep.is_typical();
            }
            check("ceiling level always typical", ok);
        }
        Cmd::Inequalities { .. } => {
            let (w1, w2) = elementary_inequality_sweep(5_000, cli.seed);
            check("elem1 nonnegative margins", w1 >= 0.0);
            check("elem2 nonnegative margins", w2 >= 0.0);
            check("elem1 endpoint", check_elem1(5.0, 1, 1e6).is_ok());
            check("elem2 example", check_elem2(5.0, 1.0, 10.0)? >= 0.0);
        }
        Cmd::EnvelopeTable { .. } => {
            let rows = comparison_table(&[100, 10_000], 3, 1, 0.1)?;
            check(
                "trivial bound",
                rows.iter()
                    .all(|r| (r.m_value.unsigned_abs() as f64) <= r.trivial + 1.0),
            );
            let env = main_envelope(&EnvelopeParams::new(1e6, 1, 0, 0.1)?);
            check("envelope dominates M(1e6)", env.log_value > (212f64).ln());
        }
        Cmd::ContourSchedule { .. } => {
            let chars = character_group(1)?;
            let ds = data::zeta_dataset()?;
            let lambda = LambdaTable::up_to(4000)?;
            let sched = contour_schedule(2f64.powi(20), 1, &chars[0], &ds, 0.5, 2.0, &lambda)?;
            check("degenerate at 2^20 with c=2", sched.degenerate && sched.l == 25);
            let sched = contour_schedule(2f64.powi(60), 1, &chars[0], &ds, 0.5, 1.0, &lambda)?;
            let mut expected = 1u64 << sched.segments[0].k;
            let mut partition = true;
            for seg in &sched.segments {
                partition &= seg.n_lo == expected;
                expected = seg.n_hi;
            }
            check("dyadic partition", !sched.degenerate && partition);
        }
        Cmd::PerronCheck { .. } => {
            let batch = perron_mertens_ap_batch(150, 3, threads(cli))?;
            let exact = mertens_ap_all(150, 3)?;
            let ok = (0..3usize).all(|a| {
                (batch[a].value.re - exact[a] as f64).abs()
                    <= 5.0 * batch[a].x_over_d.max(std::f64::consts::E).ln()
            });
            check("perron vs sieve at x=150, q=3", ok);
        }
    }
    if failures > 0 {
        Err(Error::Tolerance(format!("{failures} self-test checks failed")))
    } else {
        Ok(())
    }
}
