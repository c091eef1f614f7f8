//! Command-line entry point.
//!
//! Subcommands: `check`, `order`, `operators`, `partitions`, `entropy`,
//! `dynamics`, `enumerate`, `verify`. Exit code 0 when every asserted claim
//! passed, 1 when a check or claim failed, 2 on structural or parse errors.
//! Reports are byte-identical across runs for identical inputs;
//! `LALG_THREADS` caps the parallelism used inside the verify sweep without
//! affecting output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lalg::docs::{
    format_rational, load, AlgebraDoc, DocError, NamedAlgebra, OperatorDoc, PartitionDoc,
    SystemDoc,
};
use lalg_core::algebra::{check_axioms, check_axioms_lenient, check_derived_laws};
use lalg_core::closure::{
    check_inf_simple, enumerate_closure_operators, is_closure_operator, is_l_operator,
    maximal_operators, simple_elements, OperatorPoset,
};
use lalg_core::dynamics::{entropy_rate, system_entropy};
use lalg_core::entropy::{conditional_entropy, entropy, info_gain, LogBase};
use lalg_core::enumerate::enumerate_l_algebras;
use lalg_core::partition::{
    bayes_check, common_refinement, decomposition_holds, independent, interior_subset, refines,
};
use lalg::registry::{render_matrix_text, verify_paper, RegistryVerdict, RunContext};

#[derive(Parser)]
#[command(name = "lalg", version, about = "Exact computation on finite L-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// strict checks all five axioms; lenient skips antisymmetry (5)
    #[arg(long, global = true, value_enum, default_value_t = Mode::Strict)]
    mode: Mode,
    #[arg(long = "log-base", global = true, value_enum, default_value_t = BaseArg::Two)]
    log_base: BaseArg,
    /// tolerance for structural float identities
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// tolerance for finite-truncation dynamical identities
    #[arg(long = "dyn-tol", global = true, default_value_t = 1e-6)]
    dyn_tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// write the report to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// cap on the enumeration order
    #[arg(long = "max-order", global = true, default_value_t = 5)]
    max_order: usize,
    /// cap on partition block counts in sweeps
    #[arg(long = "max-blocks", global = true, default_value_t = 4)]
    max_blocks: usize,
    /// truncation horizon for entropy-rate estimates
    #[arg(long = "N", global = true, default_value_t = 8)]
    horizon: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Strict,
    Lenient,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    #[value(name = "2")]
    Two,
    #[value(name = "e")]
    E,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms on an algebra document
    Check { algebra: PathBuf },
    /// Induced order, least element, and derived laws
    Order { algebra: PathBuf },
    /// Classify an operator or materialize the closure-operator poset
    Operators {
        algebra: PathBuf,
        /// list every closure operator, not just the summary
        #[arg(long)]
        enumerate: bool,
        /// classify this operator document instead
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Validate a partition; optionally join or compare with another
    Partitions {
        partition: PathBuf,
        /// common refinement with this partition
        #[arg(long)]
        join: Option<PathBuf>,
        /// test whether the first partition refines this one
        #[arg(long)]
        refines: Option<PathBuf>,
    },
    /// Entropy of a partition, conditional on --given when present
    Entropy {
        partition: PathBuf,
        #[arg(long)]
        given: Option<PathBuf>,
    },
    /// Rate estimate for a dynamical system and partition
    Dynamics {
        system: PathBuf,
        #[arg(long)]
        xi: PathBuf,
        /// also sweep for the system entropy
        #[arg(long)]
        sweep: bool,
    },
    /// Enumerate the L-algebras of one order
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Run the bundled claim registry and print the traceability matrix
    Verify {
        #[arg(long, default_value = "paper")]
        bundle: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
}

fn run(cli: &Cli) -> Result<u8, DocError> {
    let lenient = cli.mode == Mode::Lenient;
    let base = match cli.log_base {
        BaseArg::Two => LogBase::Two,
        BaseArg::E => LogBase::Natural,
    };
    let (output, code) = match &cli.command {
        Command::Check { algebra } => cmd_check(algebra, lenient)?,
        Command::Order { algebra } => cmd_order(algebra, lenient)?,
        Command::Operators { algebra, enumerate, operator } => {
            cmd_operators(algebra, *enumerate, operator.as_deref(), lenient, cli.max_order)?
        }
        Command::Partitions { partition, join, refines } => {
            cmd_partitions(partition, join.as_deref(), refines.as_deref(), lenient)?
        }
        Command::Entropy { partition, given } => {
            cmd_entropy(partition, given.as_deref(), lenient, base, cli.tol)?
        }
        Command::Dynamics { system, xi, sweep } => cmd_dynamics(
            system,
            xi,
            *sweep,
            lenient,
            base,
            cli.dyn_tol,
            cli.horizon,
            cli.max_blocks,
        )?,
        Command::Enumerate { order, up_to_iso } => {
            cmd_enumerate(*order, *up_to_iso, cli.max_order)?
        }
        Command::Verify { bundle } => cmd_verify(bundle, base, cli)?,
    };
    emit(cli, output)?;
    Ok(code)
}

fn emit(cli: &Cli, output: Output) -> Result<(), DocError> {
    let rendered = match cli.format {
        Format::Text => output.text,
        Format::Json => format!("{:#}\n", output.json),
        Format::Csv => output.csv.unwrap_or_else(|| "csv output not available here\n".into()),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|source| DocError::Io { path: path.clone(), source }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn mode_str(lenient: bool) -> &'static str {
    if lenient {
        "lenient"
    } else {
        "strict"
    }
}

// --------------------------------------------------------------------- check

fn cmd_check(path: &Path, lenient: bool) -> Result<(Output, u8), DocError> {
    let (doc, _) = load::<AlgebraDoc>(path)?;
    let (table, unit) = doc.to_table()?;
    let report = if lenient {
        check_axioms_lenient(&table, unit)
    } else {
        check_axioms(&table, unit)
    }
    .expect("unit index validated by to_table");
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom,
                "witness": v.witness.iter().map(|&i| doc.elements[i].clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = String::new();
    if report.passed() {
        text.push_str("L-algebra: valid\n");
    } else {
        text.push_str("L-algebra: invalid\n");
        for v in &report.violations {
            let names: Vec<&str> = v.witness.iter().map(|&i| doc.elements[i].as_str()).collect();
            text.push_str(&format!("  axiom ({}) fails at ({})\n", v.axiom, names.join(",")));
        }
    }
    text.push_str(&format!("mode: {}\n", mode_str(lenient)));
    let json = json!({
        "command": "check",
        "mode": mode_str(lenient),
        "valid": report.passed(),
        "violations": violations,
    });
    let code = if report.passed() { 0 } else { 1 };
    Ok((Output { text, json, csv: None }, code))
}

// --------------------------------------------------------------------- order

fn cmd_order(path: &Path, lenient: bool) -> Result<(Output, u8), DocError> {
    let (doc, _) = load::<AlgebraDoc>(path)?;
    let named = doc.build(lenient)?;
    let alg = &named.algebra;
    let order = alg.induced_order();
    let pairs: Vec<Value> = order
        .pairs()
        .iter()
        .map(|&(x, y)| json!([named.name(x), named.name(y)]))
        .collect();
    let least = alg.least_element().map(|z| named.name(z).to_string());
    let laws = check_derived_laws(alg);
    let mut text = format!(
        "order: {} pair(s); partial order: {}\nleast element: {}\n",
        order.pairs().len(),
        order.is_partial_order(),
        least.clone().unwrap_or_else(|| "none".into()),
    );
    text.push_str(&format!(
        "derived laws: exchange {} | unit-image {} | monotone {} | equivalence {}\n",
        laws.arrow_exchange
            .map(|(x, y)| format!("fails at ({},{})", named.name(x), named.name(y)))
            .unwrap_or_else(|| "holds".into()),
        if laws.unit_image_laws.is_none() { "holds" } else { "fails" },
        if laws.arrow_monotone.is_none() { "holds" } else { "fails" },
        if laws.k_laws_equivalent() { "holds" } else { "fails" },
    ));
    text.push_str(&format!("mode: {}\n", mode_str(lenient)));
    let json = json!({
        "command": "order",
        "mode": mode_str(lenient),
        "pairs": pairs,
        "partial_order": order.is_partial_order(),
        "least": least,
        "derived_laws": {
            "arrow_exchange_holds": laws.arrow_exchange.is_none(),
            "unit_image_holds": laws.unit_image_laws.is_none(),
            "monotone_holds": laws.arrow_monotone.is_none(),
            "k_laws": laws.k_laws,
            "k_laws_equivalent": laws.k_laws_equivalent(),
        },
    });
    Ok((Output { text, json, csv: None }, 0))
}

// ----------------------------------------------------------------- operators

fn cmd_operators(
    path: &Path,
    enumerate: bool,
    operator: Option<&Path>,
    lenient: bool,
    max_order: usize,
) -> Result<(Output, u8), DocError> {
    if let Some(op_path) = operator {
        let (op_doc, base_dir) = load::<OperatorDoc>(op_path)?;
        let (named, map) = op_doc.build(&base_dir, lenient)?;
        // the operator document names its own algebra; it must agree with
        // the positional one
        let (alg_doc, _) = load::<AlgebraDoc>(path)?;
        ensure_same_algebra(&alg_doc.build(lenient)?, &named)?;
        let alg = &named.algebra;
        let l_op = is_l_operator(alg, &map).map_err(core_structural)?;
        let closure = is_closure_operator(alg, &map).map_err(core_structural)?;
        let simple: Option<Vec<String>> = l_op.then(|| {
            simple_elements(alg, &map)
                .expect("operator verified")
                .into_iter()
                .map(|x| named.name(x).to_string())
                .collect()
        });
        let inf_simple = closure.then(|| check_inf_simple(alg, &map).expect("closure verified"));
        let text = format!(
            "L-operator: {l_op}\nclosure operator: {closure}\nsimple elements: {}\n\
             simple-infimum characterization: {}\nmode: {}\n",
            simple.as_ref().map(|s| s.join(",")).unwrap_or_else(|| "-".into()),
            inf_simple
                .as_ref()
                .map(|r| if r.holds() { "holds" } else { "fails" })
                .unwrap_or("-"),
            mode_str(lenient),
        );
        let json = json!({
            "command": "operators",
            "mode": mode_str(lenient),
            "l_operator": l_op,
            "closure_operator": closure,
            "simple_elements": simple,
            "inf_simple_holds": inf_simple.map(|r| r.holds()),
        });
        let code = u8::from(!closure);
        return Ok((Output { text, json, csv: None }, code));
    }

    let (doc, _) = load::<AlgebraDoc>(path)?;
    let named = doc.build(lenient)?;
    let alg = &named.algebra;
    let poset = enumerate_closure_operators(alg, max_order).map_err(core_structural)?;
    let report = maximal_operators(alg, &poset);
    let name_map = |m: &[usize]| -> Vec<String> {
        m.iter().map(|&v| named.name(v).to_string()).collect()
    };
    let mut text = format!(
        "closure operators: {}\nmaximal (excluding top): {}\n",
        poset.len(),
        report.maximal.len()
    );
    text.push_str(&format!(
        "two-valued operators failing closure: {:?}\nmaximal-but-not-two-valued: {}\n",
        report
            .threshold_not_closure
            .iter()
            .map(|&a| named.name(a).to_string())
            .collect::<Vec<_>>(),
        report.maximal_not_threshold.len(),
    ));
    if enumerate {
        for op in poset.ops() {
            text.push_str(&format!("  {:?}\n", name_map(op)));
        }
    }
    text.push_str(&format!("mode: {}\n", mode_str(lenient)));
    let json = json!({
        "command": "operators",
        "mode": mode_str(lenient),
        "count": poset.len(),
        "top": name_map(&OperatorPoset::top(alg)),
        "maximal": report.maximal.iter().map(|m| name_map(m)).collect::<Vec<_>>(),
        "threshold_not_closure": report.threshold_not_closure.iter().map(|&a| named.name(a).to_string()).collect::<Vec<_>>(),
        "maximal_not_threshold": report.maximal_not_threshold.iter().map(|m| name_map(m)).collect::<Vec<_>>(),
        "operators": enumerate.then(|| poset.ops().iter().map(|o| name_map(o)).collect::<Vec<_>>()),
    });
    Ok((Output { text, json, csv: None }, 0))
}

fn core_structural(e: lalg_core::Error) -> DocError {
    DocError::AlgebraInvalid { detail: format!("{e}") }
}

// ---------------------------------------------------------------- partitions

fn ensure_same_algebra(a: &NamedAlgebra, b: &NamedAlgebra) -> Result<(), DocError> {
    if a.names != b.names || a.algebra != b.algebra {
        return Err(DocError::AlgebraMismatch);
    }
    Ok(())
}

fn cmd_partitions(
    path: &Path,
    join: Option<&Path>,
    refines_path: Option<&Path>,
    lenient: bool,
) -> Result<(Output, u8), DocError> {
    let (doc, base_dir) = load::<PartitionDoc>(path)?;
    let (named, state, partition) = doc.build(&base_dir, lenient)?;
    let mut text = format!(
        "partition: valid ({} block(s))\nblocks: {:?}\n",
        partition.len(),
        named.names_of(partition.blocks())
    );
    let mut json = json!({
        "command": "partitions",
        "mode": mode_str(lenient),
        "valid": true,
        "blocks": named.names_of(partition.blocks()),
    });
    if let Some(other_path) = join {
        let (other_doc, other_dir) = load::<PartitionDoc>(other_path)?;
        let (other_named, other_state, other) = other_doc.build(&other_dir, lenient)?;
        ensure_same_algebra(&named, &other_named)?;
        if state != other_state {
            return Err(DocError::StateMismatch);
        }
        match common_refinement(&named.algebra, &state, &partition, &other) {
            Ok(j) => {
                text.push_str(&format!("join: {:?}\n", named.names_of(j.blocks())));
                text.push_str(&format!(
                    "join refines first: {} | join refines second: {}\n",
                    refines(&named.algebra, &j, &partition),
                    refines(&named.algebra, &j, &other),
                ));
                json["join"] = json!(named.names_of(j.blocks()));
            }
            Err(e) => {
                text.push_str(&format!("join: does not validate ({e:?})\n"));
                json["join_error"] = json!(format!("{e:?}"));
            }
        }
    }
    if let Some(other_path) = refines_path {
        let (other_doc, other_dir) = load::<PartitionDoc>(other_path)?;
        let (other_named, other_state, other) = other_doc.build(&other_dir, lenient)?;
        ensure_same_algebra(&named, &other_named)?;
        if state != other_state {
            return Err(DocError::StateMismatch);
        }
        let r = refines(&named.algebra, &partition, &other);
        text.push_str(&format!("refines: {r}\n"));
        json["refines"] = json!(r);
    }
    text.push_str(&format!("mode: {}\n", mode_str(lenient)));
    Ok((Output { text, json, csv: None }, 0))
}

// ------------------------------------------------------------------- entropy

fn cmd_entropy(
    path: &Path,
    given: Option<&Path>,
    lenient: bool,
    base: LogBase,
    tol: f64,
) -> Result<(Output, u8), DocError> {
    let (doc, base_dir) = load::<PartitionDoc>(path)?;
    let (named, state, partition) = doc.build(&base_dir, lenient)?;
    let alg = &named.algebra;
    let h = entropy(&state, &partition, base);
    let mut text = format!("H = {:.12}\nexactly zero: {}\n", h.value, h.is_zero_exact());
    let mut csv = String::from("quantity,value\n");
    csv.push_str(&format!("H,{:.12}\n", h.value));
    let mut json = json!({
        "command": "entropy",
        "mode": mode_str(lenient),
        "log_base": if base == LogBase::Two { "2" } else { "e" },
        "entropy": h.value,
        "exactly_zero": h.is_zero_exact(),
        "terms": h.terms.iter().map(|t| json!({
            "p": format_rational(t.p),
            "given": t.given.map(format_rational),
        })).collect::<Vec<_>>(),
    });
    let mut code = 0u8;
    if let Some(given_path) = given {
        let (other_doc, other_dir) = load::<PartitionDoc>(given_path)?;
        let (other_named, other_state, eta) = other_doc.build(&other_dir, lenient)?;
        ensure_same_algebra(&named, &other_named)?;
        if state != other_state {
            return Err(DocError::StateMismatch);
        }
        match conditional_entropy(alg, &state, &partition, &eta, base) {
            Ok(cond) => {
                let gain = info_gain(alg, &state, &partition, &eta, base)
                    .expect("grid already evaluated");
                let decomp = decomposition_holds(alg, &state, &partition, &eta)
                    .unwrap_or(false);
                let mut bayes_all = true;
                for &y in eta.blocks() {
                    if let Ok(b) = bayes_check(alg, &state, &partition, y) {
                        bayes_all &= b.literal;
                    }
                }
                let interior = interior_subset(alg, &state, &partition, &eta).unwrap();
                let indep = independent(alg, &state, &partition, &eta).unwrap();
                text.push_str(&format!(
                    "H(.|given) = {:.12}\ninfo gain = {:.12}\n\
                     alternative form = {}\nhypotheses: bayes-literal {} | \
                     bayes-decomposition {} | interior-subset {} | independent {}\n",
                    cond.value,
                    gain.value,
                    gain.alternative
                        .map(|a| format!("{a:.12}"))
                        .unwrap_or_else(|| "undefined (join does not validate)".into()),
                    bayes_all,
                    decomp,
                    interior,
                    indep,
                ));
                if let Some(alt) = gain.alternative {
                    if decomp && (alt - gain.value).abs() > tol {
                        text.push_str("warning: gain forms disagree beyond tolerance\n");
                        code = 1;
                    }
                }
                csv.push_str(&format!("H_conditional,{:.12}\n", cond.value));
                csv.push_str(&format!("info_gain,{:.12}\n", gain.value));
                json["conditional_entropy"] = json!(cond.value);
                json["conditional_exactly_zero"] = json!(cond.is_zero_exact());
                json["info_gain"] = json!(gain.value);
                json["info_gain_alternative"] = json!(gain.alternative);
                json["hypotheses"] = json!({
                    "bayes_literal": bayes_all,
                    "bayes_decomposition": decomp,
                    "interior_subset": interior,
                    "independent": indep,
                });
            }
            Err(e) => {
                text.push_str(&format!("H(.|given): undefined ({e})\n"));
                json["conditional_error"] = json!(format!("{e}"));
                code = 1;
            }
        }
    }
    text.push_str(&format!("mode: {}\n", mode_str(lenient)));
    Ok((Output { text, json, csv: Some(csv) }, code))
}

// ------------------------------------------------------------------ dynamics

#[allow(clippy::too_many_arguments)]
fn cmd_dynamics(
    system_path: &Path,
    xi_path: &Path,
    sweep: bool,
    lenient: bool,
    base: LogBase,
    dyn_tol: f64,
    horizon: usize,
    max_blocks: usize,
) -> Result<(Output, u8), DocError> {
    let (sys_doc, sys_dir) = load::<SystemDoc>(system_path)?;
    let (named, system) = sys_doc.build(&sys_dir, lenient)?;
    let (xi_doc, xi_dir) = load::<PartitionDoc>(xi_path)?;
    let (xi_named, xi_state, xi) = xi_doc.build(&xi_dir, lenient)?;
    ensure_same_algebra(&named, &xi_named)?;
    if system.state() != &xi_state {
        return Err(DocError::StateMismatch);
    }
    let mut code = 0u8;
    let mut text;
    let mut csv = String::from("n,join_entropy,conditional_entropy\n");
    let json;
    match entropy_rate(&system, &xi, horizon, dyn_tol, base) {
        Ok(est) => {
            for (i, (a, c)) in est.joins.iter().zip(&est.conditional).enumerate() {
                csv.push_str(&format!("{},{:.12},{:.12}\n", i + 1, a, c));
            }
            text = format!(
                "h(T, xi) estimate = {:.12} (conditional form at N={horizon})\n\
                 cesaro estimate = {:.12}\nconverged: conditional {} | cesaro {}\n\
                 subadditivity certificate: {} (max excess {:.3e})\n\
                 conditional non-increasing: {} (max increase {:.3e})\n",
                est.rate(),
                est.cesaro_rate,
                est.conditional_converged,
                est.cesaro_converged,
                est.subadditivity_certified(1e-9),
                est.subadditive_excess,
                est.conditional_increase <= 1e-9,
                est.conditional_increase,
            );
            if !est.estimators_agree(dyn_tol) {
                text.push_str("warning: estimators converged to different values\n");
                code = 1;
            }
            json = json!({
                "command": "dynamics",
                "mode": mode_str(lenient),
                "horizon": horizon,
                "rate_conditional": est.rate(),
                "rate_cesaro": est.cesaro_rate,
                "joins": est.joins,
                "conditional": est.conditional,
                "converged": {
                    "conditional": est.conditional_converged,
                    "cesaro": est.cesaro_converged,
                },
                "subadditive_excess": est.subadditive_excess,
            });
        }
        Err(e) => {
            text = format!("rate estimate undefined: {e:?}\n");
            json = json!({
                "command": "dynamics",
                "mode": mode_str(lenient),
                "error": format!("{e:?}"),
            });
            code = 1;
        }
    }
    let mut json = json;
    if sweep {
        match system_entropy(&system, max_blocks, horizon, dyn_tol, base) {
            Ok(s) => {
                text.push_str(&format!(
                    "h(T) sweep = {:.12} over {} measure-class(es) \
                     (max blocks {}, horizon {}, skipped {})\n",
                    s.value, s.searched, s.max_blocks, s.horizon, s.skipped
                ));
                json["system_entropy"] = json!({
                    "value": s.value,
                    "searched": s.searched,
                    "skipped": s.skipped,
                    "max_blocks": s.max_blocks,
                    "horizon": s.horizon,
                });
            }
            Err(e) => {
                text.push_str(&format!("h(T) sweep failed: {e}\n"));
                code = 1;
            }
        }
    }
    text.push_str(&format!("mode: {}\n", mode_str(lenient)));
    Ok((Output { text, json, csv: Some(csv) }, code))
}

// ----------------------------------------------------------------- enumerate

fn cmd_enumerate(order: usize, up_to_iso: bool, cap: usize) -> Result<(Output, u8), DocError> {
    let algebras = enumerate_l_algebras(order, up_to_iso, cap)
        .map_err(|e| DocError::AlgebraInvalid { detail: format!("{e}") })?;
    let mut docs = Vec::new();
    for alg in &algebras {
        let names: Vec<String> = (0..alg.n())
            .map(|i| if i == alg.unit() { "1".to_string() } else { format!("x{i}") })
            .collect();
        let named = NamedAlgebra { algebra: alg.clone(), names };
        docs.push(AlgebraDoc::from_named(&named));
    }
    let mut text = format!(
        "order {order}: {} algebra(s){}\n",
        algebras.len(),
        if up_to_iso { " up to isomorphism" } else { "" }
    );
    for doc in &docs {
        let rows: Vec<String> = doc.arrow.iter().map(|r| r.join(" ")).collect();
        text.push_str(&format!("  [{}]\n", rows.join(" | ")));
    }
    let json = json!({
        "command": "enumerate",
        "order": order,
        "up_to_iso": up_to_iso,
        "count": algebras.len(),
        "algebras": docs,
    });
    Ok((Output { text, json, csv: None }, 0))
}

// -------------------------------------------------------------------- verify

fn cmd_verify(bundle: &str, base: LogBase, cli: &Cli) -> Result<(Output, u8), DocError> {
    if bundle != "paper" {
        return Err(DocError::AlgebraInvalid {
            detail: format!("unknown bundle {bundle:?}; only \"paper\" is bundled"),
        });
    }
    let ctx = RunContext {
        tol: cli.tol,
        dyn_tol: cli.dyn_tol,
        base,
        max_blocks: cli.max_blocks,
        horizon: cli.horizon,
    };
    let report = verify_paper(&ctx);
    let text = render_matrix_text(&report);
    let mut csv = String::from("id,section,quote,verdict,asserted,gated\n");
    for r in &report.records {
        csv.push_str(&format!(
            "{},{},\"{}\",{},{},{}\n",
            r.id,
            r.section,
            r.quote.replace('"', "'"),
            r.verdict.as_str(),
            r.asserted,
            r.gated
        ));
    }
    let json = json!({
        "command": "verify",
        "bundle": bundle,
        "lenient_fixtures": report.lenient_fixtures,
        "claims": report.records.iter().map(|r| json!({
            "id": r.id,
            "section": r.section,
            "quote": r.quote,
            "verdict": r.verdict.as_str(),
            "asserted": r.asserted,
            "gated": r.gated,
            "notes": r.notes,
        })).collect::<Vec<_>>(),
        "counts": {
            "holds": report.count(RegistryVerdict::Holds),
            "fails": report.count(RegistryVerdict::Fails),
            "hypothesis_not_met": report.count(RegistryVerdict::HypothesisNotMet),
            "not_assertable": report.count(RegistryVerdict::NotAssertable),
        },
    });
    let code = u8::from(!report.failing().is_empty());
    Ok((Output { text, json, csv: Some(csv) }, code))
}
