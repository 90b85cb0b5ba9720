//! Command-line front end: build the named models, evaluate them on
//! inputs, certify acceptance contracts by exhaustive sweep, compute
//! lower bounds, and check size inequalities. All probabilities are
//! printed as exact fractions.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_traits::One;
use serde::Deserialize;

use obddlab_core::automata::{
    build_modxor_afa, build_modxor_lv_pfa, build_modxor_lv_ufa, run_automaton, sweep_strings,
};
use obddlab_core::bounds::{
    check_inequalities, distinguishable_count, n_of, InequalityCheck, SearchMode, TruthTable,
};
use obddlab_core::constructions::{
    build_hwb_afobdd, build_minimal_obdd, build_mws_afobdd, build_ssa_afobdd,
    build_ssa_lv_pobdd, build_ssa_lv_uobdd, build_ws_afobdd,
};
use obddlab_core::functions::{hwb, modxor_member, mws, ssa, ws, BitString, SsaParams};
use obddlab_core::numeric::{QuadExt, Rational};
use obddlab_core::obdd::{
    sweep_classify, CertMode, Obdd, RunOutcome, VariableOrder, DEFAULT_SWEEP_BUDGET,
};

use obddlab_cli::doc::{self, format_quad, parse_ratio, AnyModel, MetadataDoc, ModelDocument, ModelPayload};
use obddlab_cli::report::*;

/// Exit codes: 0 success/pass, 1 certification or validation failure,
/// 2 budget refusal, 3 anything else (bad arguments, IO, malformed
/// files).
const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "obddlab",
    about = "Exact simulation and certification of OBDD and automaton models",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named model and write it as a JSON document.
    Build {
        /// One of: hwb, ws, mws, ssa-lv-pobdd, ssa-lv-uobdd, ssa-afobdd,
        /// modxor-lv-pfa, modxor-lv-ufa, modxor-afa, minimal-obdd
        builder: String,
        /// Input length for hwb/ws/mws
        #[arg(long)]
        n: Option<usize>,
        /// Storage-access parameter for the ssa builders
        #[arg(long)]
        d: Option<usize>,
        /// Block parameter for the modxor builders
        #[arg(long)]
        k: Option<usize>,
        /// Function for minimal-obdd, e.g. parity-3, hwb-4, ws-4, ssa-1
        #[arg(long)]
        function: Option<String>,
        /// Variable order for minimal-obdd, e.g. "2,1,3" (default identity)
        #[arg(long)]
        order: Option<String>,
        /// Output file for the model document
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate a model on one input and print the exact outcome.
    Eval {
        #[arg(long)]
        model: PathBuf,
        /// The input bits, e.g. 010011
        input: String,
    },
    /// Sweep a model exhaustively against a reference oracle.
    Certify {
        #[arg(long)]
        model: PathBuf,
        /// One of: hwb, ws, mws, ssa, modxor, end
        #[arg(long)]
        oracle: String,
        /// exact, lasvegas:P (default P=1/2), or bounded:E
        #[arg(long, default_value = "exact")]
        mode: String,
        /// Maximum string length for automaton sweeps
        #[arg(long)]
        maxlen: Option<usize>,
        /// Write the JSON report here as well
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Compute subfunction bounds or Nerode distinguishability counts.
    Bound {
        /// parity, majority, hwb, ws, ssa, modxor, end; a -N suffix
        /// fixes the parameter (e.g. parity-2, ssa-1)
        function: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Enumerate all orders (default when no sampling requested)
        #[arg(long)]
        exhaustive: bool,
        /// Sample this many random orders instead (upper bound only)
        #[arg(long)]
        sample: Option<usize>,
        /// Seed for sampled order search
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Truth table file (a line of 0/1 of length 2^n) instead of a name
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        prefix_maxlen: usize,
        #[arg(long, default_value_t = 6)]
        suffix_maxlen: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check bound-vs-size inequalities from a config file.
    CheckInequalities {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Re-run the validity predicates on a model file.
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's rendering but our exit-code contract
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if let Some(obddlab_core::Error::BudgetExceeded { .. }) =
                e.downcast_ref::<obddlab_core::Error>()
            {
                EXIT_BUDGET
            } else {
                EXIT_ERROR
            };
            ExitCode::from(code)
        }
    }
}

fn budget() -> u64 {
    std::env::var("OBDDLAB_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SWEEP_BUDGET)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Build {
            builder,
            n,
            d,
            k,
            function,
            order,
            out,
        } => cmd_build(&builder, n, d, k, function.as_deref(), order.as_deref(), &out),
        Command::Eval { model, input } => cmd_eval(&model, &input),
        Command::Certify {
            model,
            oracle,
            mode,
            maxlen,
            out,
            json,
        } => cmd_certify(&model, &oracle, &mode, maxlen, out.as_deref(), json),
        Command::Bound {
            function,
            n,
            d,
            k,
            exhaustive,
            sample,
            seed,
            table,
            prefix_maxlen,
            suffix_maxlen,
            out,
            json,
        } => cmd_bound(
            &function,
            n,
            d,
            k,
            exhaustive,
            sample,
            seed,
            table.as_deref(),
            prefix_maxlen,
            suffix_maxlen,
            out.as_deref(),
            json,
        ),
        Command::CheckInequalities { config, out, json } => {
            cmd_check_inequalities(&config, out.as_deref(), json)
        }
        Command::Validate { model } => cmd_validate(&model),
    }
}

/// Parse "name-3" into (name, 3); bare names pass through.
fn split_param(spec: &str) -> (String, Option<usize>) {
    if let Some((head, tail)) = spec.rsplit_once('-') {
        if let Ok(v) = tail.parse::<usize>() {
            return (head.to_string(), Some(v));
        }
    }
    (spec.to_string(), None)
}

fn named_truth_table(name: &str, param: usize) -> Result<(TruthTable, String)> {
    let label = format!("{name}-{param}");
    let table = match name {
        "parity" => TruthTable::from_fn(param, |x| x.count_ones() % 2 == 1),
        "majority" => TruthTable::from_fn(param, |x| 2 * x.count_ones() > param),
        "hwb" => TruthTable::from_fn(param, hwb),
        "ws" => TruthTable::from_fn(param, ws),
        "ssa" => {
            let p = SsaParams::from_d(param)?;
            return Ok((
                TruthTable::from_fn(p.n, move |x| ssa(x, &p).unwrap()),
                label,
            ));
        }
        other => bail!("unknown function {other:?}"),
    };
    Ok((table, label))
}

fn cmd_build(
    builder: &str,
    n: Option<usize>,
    d: Option<usize>,
    k: Option<usize>,
    function: Option<&str>,
    order: Option<&str>,
    out: &Path,
) -> Result<u8> {
    let need = |opt: Option<usize>, flag: &str| {
        opt.ok_or_else(|| anyhow!("builder {builder} requires --{flag}"))
    };
    let mut params = BTreeMap::new();
    let mut state_encoding = None;
    let model = match builder {
        "hwb" => {
            let n = need(n, "n")?;
            params.insert("n".into(), n as u64);
            AnyModel::Obdd(Obdd::Affine(build_hwb_afobdd(n)?))
        }
        "ws" => {
            let n = need(n, "n")?;
            params.insert("n".into(), n as u64);
            AnyModel::Obdd(Obdd::Affine(build_ws_afobdd(n)?))
        }
        "mws" => {
            let n = need(n, "n")?;
            params.insert("n".into(), n as u64);
            AnyModel::Obdd(Obdd::Affine(build_mws_afobdd(n)?))
        }
        "ssa-lv-pobdd" | "ssa-lv-uobdd" | "ssa-afobdd" => {
            let d = need(d, "d")?;
            params.insert("d".into(), d as u64);
            match builder {
                "ssa-lv-pobdd" | "ssa-lv-uobdd" => {
                    state_encoding = Some(
                        "flat index = ((((s*2 + t)*2 + e) << d) + a)*2 + b, registers MSB-first"
                            .to_string(),
                    );
                }
                _ => {
                    state_encoding =
                        Some("classical index = p * 2^d + address, register MSB-first".to_string());
                }
            }
            match builder {
                "ssa-lv-pobdd" => AnyModel::Obdd(Obdd::Probabilistic(build_ssa_lv_pobdd(d)?)),
                "ssa-lv-uobdd" => AnyModel::Obdd(Obdd::Unitary(build_ssa_lv_uobdd(d)?)),
                _ => AnyModel::Obdd(Obdd::Affine(build_ssa_afobdd(d)?)),
            }
        }
        "modxor-lv-pfa" | "modxor-lv-ufa" | "modxor-afa" => {
            let k = need(k, "k")?;
            params.insert("k".into(), k as u64);
            let m = match builder {
                "modxor-lv-pfa" => build_modxor_lv_pfa(k)?,
                "modxor-lv-ufa" => build_modxor_lv_ufa(k)?,
                _ => build_modxor_afa(k)?,
            };
            AnyModel::Automaton(m)
        }
        "minimal-obdd" => {
            let spec = function
                .ok_or_else(|| anyhow!("minimal-obdd requires --function, e.g. parity-3"))?;
            let (name, param) = split_param(spec);
            let param = param
                .or(n)
                .or(d)
                .ok_or_else(|| anyhow!("no parameter given for function {name:?}"))?;
            let (table, label) = named_truth_table(&name, param)?;
            let order = match order {
                Some(text) => {
                    let pi: Vec<usize> = text
                        .split(',')
                        .map(|t| t.trim().parse().context("bad order entry"))
                        .collect::<Result<_>>()?;
                    VariableOrder::new(pi).map_err(|e| anyhow!("{e}"))?
                }
                None => VariableOrder::identity(table.n()),
            };
            let built = build_minimal_obdd(&table, &order, budget())?;
            params.insert("n".into(), table.n() as u64);
            params.insert("reading_width".into(), built.reading_width() as u64);
            state_encoding = Some(format!("minimal machine for {label}"));
            AnyModel::Obdd(Obdd::Deterministic(built.machine))
        }
        other => bail!(
            "unknown builder {other:?}; expected one of hwb, ws, mws, ssa-lv-pobdd, \
             ssa-lv-uobdd, ssa-afobdd, modxor-lv-pfa, modxor-lv-ufa, modxor-afa, minimal-obdd"
        ),
    };

    let document = ModelDocument::new(
        MetadataDoc {
            builder: builder.to_string(),
            params,
            state_encoding,
        },
        &model,
    );
    std::fs::write(out, document.to_json())
        .with_context(|| format!("writing {}", out.display()))?;
    let size_name = match model {
        AnyModel::Obdd(_) => "width",
        AnyModel::Automaton(_) => "states",
    };
    println!(
        "wrote {} ({builder}, {size_name} {})",
        out.display(),
        model.width_or_states()
    );
    let problems = model.validate();
    for p in &problems {
        eprintln!("note: {p}");
    }
    Ok(EXIT_PASS)
}

fn load_model(path: &Path) -> Result<(ModelDocument, AnyModel)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let document = ModelDocument::parse(&text)?;
    let model = document.to_model()?;
    // predicate violations are reported but do not block examination
    for p in model.validate() {
        eprintln!("warning: {p}");
    }
    Ok((document, model))
}

fn outcome_strings(out: &RunOutcome<QuadExt>) -> (String, String, String) {
    (
        format_quad(&out.accept),
        format_quad(&out.reject),
        format_quad(&out.dont_know),
    )
}

fn cmd_eval(path: &Path, input: &str) -> Result<u8> {
    let (_, model) = load_model(path)?;
    let input = BitString::parse(input).map_err(|e| anyhow!("{e}"))?;
    let outcome = match &model {
        AnyModel::Obdd(m) => {
            if input.len() != m.n() {
                bail!(
                    "input has {} bits but the model reads {}",
                    input.len(),
                    m.n()
                );
            }
            m.run(&input).map_err(|e| anyhow!("{e}"))?
        }
        AnyModel::Automaton(m) => run_automaton(m, &input).map_err(|e| anyhow!("{e}"))?,
    };
    let (a, r, d) = outcome_strings(&outcome);
    println!("accept {a} reject {r} dontknow {d}");
    Ok(EXIT_PASS)
}

fn parse_mode(text: &str) -> Result<CertMode> {
    let (head, param) = match text.split_once(':') {
        Some((h, p)) => (h, Some(p)),
        None => (text, None),
    };
    Ok(match head {
        "exact" => CertMode::Exact,
        "lasvegas" => CertMode::LasVegas(match param {
            Some(p) => parse_ratio(p)?,
            None => Rational::new(1.into(), 2.into()),
        }),
        "bounded" => CertMode::Bounded(
            parse_ratio(param.ok_or_else(|| anyhow!("bounded mode needs an error bound"))?)?,
        ),
        other => bail!("unknown mode {other:?}; expected exact, lasvegas:P or bounded:E"),
    })
}

fn metadata_param(document: &ModelDocument, key: &str) -> Option<usize> {
    document.metadata.params.get(key).map(|&v| v as usize)
}

fn obdd_oracle(
    name: &str,
    document: &ModelDocument,
    n: usize,
) -> Result<Box<dyn Fn(&BitString) -> bool + Sync>> {
    Ok(match name {
        "hwb" => Box::new(hwb),
        "ws" => Box::new(ws),
        "mws" => {
            if n % 2 != 0 {
                bail!("mws needs an even input length, model reads {n}");
            }
            let half = n / 2;
            Box::new(move |w: &BitString| {
                let x = BitString::new(w.as_slice()[..half].to_vec());
                let y = BitString::new(w.as_slice()[half..].to_vec());
                mws(&x, &y).unwrap()
            })
        }
        "ssa" => {
            let d = metadata_param(document, "d")
                .or_else(|| (1..=4).find(|&d| SsaParams::from_d(d).map(|p| p.n) == Ok(n)))
                .ok_or_else(|| anyhow!("cannot infer the ssa parameter for input length {n}"))?;
            let params = SsaParams::from_d(d)?;
            if params.n != n {
                bail!("ssa d={d} reads {} bits, model reads {n}", params.n);
            }
            Box::new(move |w: &BitString| ssa(w, &params).unwrap())
        }
        other => bail!("oracle {other:?} does not apply to fixed-length models"),
    })
}

fn cmd_certify(
    path: &Path,
    oracle: &str,
    mode_text: &str,
    maxlen: Option<usize>,
    out: Option<&Path>,
    json: bool,
) -> Result<u8> {
    let (document, model) = load_model(path)?;
    let mode = parse_mode(mode_text)?;
    let budget = budget();

    let (inputs, pass, violations) = match &model {
        AnyModel::Obdd(m) => {
            let oracle_fn = obdd_oracle(oracle, &document, m.n())?;
            let report = sweep_classify(m, |x| oracle_fn(x), &mode, budget)
                .map_err(anyhow::Error::new)?;
            let violations = report
                .violations
                .iter()
                .map(|v| {
                    let (accept, reject, dont_know) = outcome_strings(&v.outcome);
                    ViolationDoc {
                        input: v.input.to_string(),
                        member: v.member,
                        accept,
                        reject,
                        dont_know,
                        reason: v.reason.clone(),
                    }
                })
                .collect();
            (report.total, report.passed(), violations)
        }
        AnyModel::Automaton(m) => {
            let k = metadata_param(&document, "k");
            let oracle_fn: Box<dyn Fn(&BitString) -> bool + Sync> = match oracle {
                "modxor" => {
                    let k = k.ok_or_else(|| anyhow!("model metadata does not record k"))?;
                    Box::new(move |w: &BitString| modxor_member(w, k))
                }
                "end" => {
                    let k = k.ok_or_else(|| anyhow!("model metadata does not record k"))?;
                    Box::new(move |w: &BitString| obddlab_core::functions::end_member(w, k))
                }
                other => bail!("oracle {other:?} does not apply to automata"),
            };
            let maxlen = maxlen.unwrap_or_else(|| 2 * k.unwrap_or(1) + 6);
            let report = sweep_strings(m, |w| oracle_fn(w), maxlen, &mode, budget)
                .map_err(anyhow::Error::new)?;
            let violations = report
                .violations
                .iter()
                .map(|v| {
                    let (accept, reject, dont_know) = outcome_strings(&v.outcome);
                    ViolationDoc {
                        input: v.input.to_string(),
                        member: v.member,
                        accept,
                        reject,
                        dont_know,
                        reason: v.reason.clone(),
                    }
                })
                .collect();
            (report.total, report.passed(), violations)
        }
    };

    let report = CertificationReport {
        model: path.display().to_string(),
        oracle: oracle.to_string(),
        mode: format!("{mode}"),
        inputs,
        pass,
        violations,
    };
    emit(&report, report.render_text(), out, json)?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

#[allow(clippy::too_many_arguments)]
fn cmd_bound(
    function: &str,
    n: Option<usize>,
    d: Option<usize>,
    k: Option<usize>,
    _exhaustive: bool,
    sample: Option<usize>,
    seed: u64,
    table: Option<&Path>,
    prefix_maxlen: usize,
    suffix_maxlen: usize,
    out: Option<&Path>,
    json: bool,
) -> Result<u8> {
    let budget = budget();
    let (name, suffix) = split_param(function);

    if matches!(name.as_str(), "modxor" | "end") {
        let k = suffix
            .or(k)
            .ok_or_else(|| anyhow!("{name} needs a parameter, e.g. {name}-2 or --k 2"))?;
        let count = match name.as_str() {
            "modxor" => {
                distinguishable_count(|w| modxor_member(w, k), prefix_maxlen, suffix_maxlen, budget)
            }
            _ => distinguishable_count(
                |w| obddlab_core::functions::end_member(w, k),
                prefix_maxlen,
                suffix_maxlen,
                budget,
            ),
        }
        .map_err(anyhow::Error::new)?;
        let report = NerodeBoundReport {
            language: name,
            k,
            prefix_max_len: prefix_maxlen,
            suffix_max_len: suffix_maxlen,
            distinguishable: count,
        };
        emit(&report, report.render_text(), out, json)?;
        return Ok(EXIT_PASS);
    }

    let (table, label) = match table {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let bits: Vec<bool> = text
                .trim()
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(anyhow!("unexpected character {other:?} in table")),
                })
                .collect::<Result<_>>()?;
            let n = bits
                .len()
                .checked_ilog2()
                .ok_or_else(|| anyhow!("empty table"))? as usize;
            (
                TruthTable::from_bits(n, bits).map_err(|e| anyhow!("{e}"))?,
                path.display().to_string(),
            )
        }
        None => {
            let param = suffix.or(n).or(d).ok_or_else(|| {
                anyhow!("{name} needs a parameter, e.g. {name}-3, or --n/--d")
            })?;
            named_truth_table(&name, param)?
        }
    };

    let mode = match sample {
        Some(count) => SearchMode::Sampled { count, seed },
        None => SearchMode::Exhaustive,
    };
    let bound = n_of(&table, mode.clone(), budget).map_err(anyhow::Error::new)?;
    let report = SubfunctionBoundReport {
        function: label,
        n: table.n(),
        search: match mode {
            SearchMode::Exhaustive => "exhaustive".to_string(),
            SearchMode::Sampled { count, seed } => format!("sampled({count}, seed {seed})"),
        },
        orders_examined: bound.orders_examined,
        best_order: bound.best_order.as_slice().to_vec(),
        per_cut: bound.per_cut.clone(),
        n_pi: bound.n_pi,
        n_f: bound.n_f,
        estimate_only: bound.n_f.is_none(),
    };
    emit(&report, report.render_text(), out, json)?;
    Ok(EXIT_PASS)
}

#[derive(Deserialize)]
struct LedgerConfig {
    checks: Vec<LedgerConfigEntry>,
}

#[derive(Deserialize)]
struct LedgerConfigEntry {
    label: String,
    bound: u64,
    size: u64,
    /// error bound eps as a fraction, e.g. "1/2"
    epsilon: String,
}

fn cmd_check_inequalities(config: &Path, out: Option<&Path>, json: bool) -> Result<u8> {
    let text = std::fs::read_to_string(config)
        .with_context(|| format!("reading {}", config.display()))?;
    let config: LedgerConfig = serde_json::from_str(&text).context("malformed config")?;
    let checks: Vec<InequalityCheck> = config
        .checks
        .iter()
        .map(|e| {
            let eps = parse_ratio(&e.epsilon)?;
            Ok(InequalityCheck {
                label: e.label.clone(),
                bound: e.bound,
                size: e.size,
                one_minus_eps: Rational::one() - eps,
            })
        })
        .collect::<Result<_>>()?;
    let results = check_inequalities(&checks).map_err(anyhow::Error::new)?;
    let report = LedgerReport {
        pass: results.iter().all(|r| r.pass),
        entries: results
            .iter()
            .map(|r| LedgerEntry {
                label: r.label.clone(),
                bound: r.bound,
                size: r.size,
                one_minus_eps: doc::format_ratio(&r.one_minus_eps),
                lhs: r.lhs.to_string(),
                rhs: r.rhs.to_string(),
                pass: r.pass,
            })
            .collect(),
    };
    emit(&report, report.render_text(), out, json)?;
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_validate(path: &Path) -> Result<u8> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let document = ModelDocument::parse(&text)?;
    let model = document.to_model()?;
    let problems = model.validate();
    let report = ValidationReport {
        model: path.display().to_string(),
        variant: match &document.payload {
            ModelPayload::ProbabilisticObdd { .. } => "probabilistic-obdd",
            ModelPayload::UnitaryObdd { .. } => "unitary-obdd",
            ModelPayload::AffineObdd { .. } => "affine-obdd",
            ModelPayload::DeterministicObdd { .. } => "deterministic-obdd",
            ModelPayload::ProbabilisticAutomaton { .. } => "probabilistic-automaton",
            ModelPayload::UnitaryAutomaton { .. } => "unitary-automaton",
            ModelPayload::AffineAutomaton { .. } => "affine-automaton",
            ModelPayload::DeterministicAutomaton { .. } => "deterministic-automaton",
        }
        .to_string(),
        width_or_states: model.width_or_states(),
        pass: problems.is_empty(),
        problems,
    };
    print!("{}", report.render_text());
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn emit<T: serde::Serialize>(
    report: &T,
    text: String,
    out: Option<&Path>,
    json: bool,
) -> Result<()> {
    let json_text = serde_json::to_string_pretty(report)?;
    if json {
        println!("{json_text}");
    } else {
        print!("{text}");
    }
    if let Some(path) = out {
        std::fs::write(path, json_text + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}
