//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 input error.

use std::fmt::Display;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::coalition::{enumerate_coalition_sne, probation_best_efforts, probation_value};
use crate::equilibrium::enumerate_sne;
use crate::error::{Error, Result};
use crate::farkas::{farkas_check, verify};
use crate::io::{load_model, ModelDocument};
use crate::model::{
    shapley_shares, stage_payoffs, AgentType, EffortLevel, GrandState, PureStrategy,
    TypeDistribution,
};
use crate::quadratic::SignSegment;
use crate::scalar::{self, round_half_up};
use crate::sweep::{sweep, write_csv};
use crate::thresholds::{
    build_farkas_systems, existence_conditions, interval_report, rationalizability, Chain,
};
use crate::validate::ModelValidation;
use crate::welfare::{welfare_curve, welfare_dominance};

#[derive(Debug, Parser)]
#[command(
    name = "tamgame",
    version,
    about = "Exact SNE analysis of the two-employee TAM game"
)]
struct Cli {
    /// Run analysis commands even when super-modularity or the cost
    /// assumptions fail (e.g. a zero cost function).
    #[arg(long, global = true)]
    skip_validation: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every structural check.
    Validate { model: String },
    /// Shapley shares and stage payoffs at all 16 grand states.
    Shapley { model: String },
    /// SNE set and deviation witnesses at one distribution.
    Equilibria {
        model: String,
        /// p(t_h), as `a/b` or a decimal.
        #[arg(long)]
        p: String,
    },
    /// Exact SNE intervals, existence chains, rationalizability, Farkas checks.
    Intervals { model: String },
    /// Expected welfare curves and dominance.
    Welfare {
        model: String,
        #[arg(long, num_args = 2, value_names = ["SA", "SB"])]
        compare: Option<Vec<String>>,
    },
    /// Coalition-dependent strategies at one distribution.
    Coalition {
        model: String,
        #[arg(long)]
        p: String,
    },
    /// CSV sweep over p(t_h) = k / N.
    Sweep {
        model: String,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Output(e.to_string())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let model_arg = match &cli.command {
        Command::Validate { model }
        | Command::Shapley { model }
        | Command::Equilibria { model, .. }
        | Command::Intervals { model }
        | Command::Welfare { model, .. }
        | Command::Coalition { model, .. }
        | Command::Sweep { model, .. } => model,
    };
    let doc = load_model(model_arg)?;
    let checks = ModelValidation::run(&doc.model, &doc.cost);

    if let Command::Validate { .. } = cli.command {
        return validate(&doc, &checks, out);
    }
    writeln!(out, "model: {}", doc.name).map_err(io_err)?;
    if checks.hypotheses_hold() {
        writeln!(out, "hypotheses: super-modular M, sub-modular C: hold").map_err(io_err)?;
    } else if cli.skip_validation {
        writeln!(
            out,
            "hypotheses: FAIL (validation skipped; results are unsupported by the hypotheses)"
        )
        .map_err(io_err)?;
    } else {
        writeln!(out, "hypotheses: FAIL").map_err(io_err)?;
        for report in [&checks.symmetry, &checks.supermodularity, &checks.cost] {
            for v in &report.violations {
                writeln!(out, "  {v}").map_err(io_err)?;
            }
        }
        writeln!(
            out,
            "refusing to analyse; pass --skip-validation to override"
        )
        .map_err(io_err)?;
        return Ok(1);
    }

    match &cli.command {
        Command::Validate { .. } => unreachable!("handled above"),
        Command::Shapley { .. } => shapley(&doc, out),
        Command::Equilibria { p, .. } => equilibria(&doc, &TypeDistribution::parse(p)?, out),
        Command::Intervals { .. } => intervals(&doc, out),
        Command::Welfare { compare, .. } => {
            let pairs = match compare {
                Some(names) => vec![(strategy(&names[0])?, strategy(&names[1])?)],
                None => vec![
                    (PureStrategy::LL, PureStrategy::LH),
                    (PureStrategy::LL, PureStrategy::HH),
                    (PureStrategy::LH, PureStrategy::HH),
                ],
            };
            welfare(&doc, &pairs, out)
        }
        Command::Coalition { p, .. } => coalition(&doc, &TypeDistribution::parse(p)?, out),
        Command::Sweep {
            grid, out: path, ..
        } => sweep_cmd(&doc, *grid, path, out),
    }
    .map(|()| 0)
}

fn strategy(name: &str) -> Result<PureStrategy> {
    PureStrategy::from_name(name).ok_or_else(|| Error::Output(format!("unknown strategy `{name}`")))
}

fn line(out: &mut dyn Write, text: impl Display) -> Result<()> {
    writeln!(out, "{text}").map_err(io_err)
}

fn validate(doc: &ModelDocument, checks: &ModelValidation, out: &mut dyn Write) -> Result<i32> {
    line(out, format!("model: {}", doc.name))?;
    for report in checks.reports() {
        let status = if report.passed { "PASS" } else { "FAIL" };
        line(out, format!("{}: {status}", report.name))?;
        for v in &report.violations {
            line(out, format!("  {v}"))?;
        }
    }
    line(
        out,
        "(strict intelligence and concavity are informational and do not affect the exit code)",
    )?;
    if checks.required_pass() {
        line(out, "result: PASS")?;
        Ok(0)
    } else {
        line(out, "result: FAIL")?;
        Ok(1)
    }
}

fn shapley(doc: &ModelDocument, out: &mut dyn Write) -> Result<()> {
    line(out, "state | M | Sh_1 | Sh_2 | u_1 | u_2")?;
    for g in GrandState::all() {
        let sh = shapley_shares(&doc.model, g);
        let (u1, u2) = stage_payoffs(&doc.model, &doc.cost, g);
        line(
            out,
            format!(
                "{g} | {} | {} | {} | {} | {}",
                scalar::exact(doc.model.grand(g)),
                scalar::exact(&sh.share_1),
                scalar::exact(&sh.share_2),
                scalar::exact(&u1),
                scalar::exact(&u2)
            ),
        )?;
    }
    Ok(())
}

fn set_text<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn equilibria(doc: &ModelDocument, p: &TypeDistribution, out: &mut dyn Write) -> Result<()> {
    let report = enumerate_sne(&doc.model, &doc.cost, p);
    line(out, p)?;
    line(out, format!("SNE set: {}", set_text(&report.sne_set)))?;
    for s in PureStrategy::ALL {
        let found = &report.witnesses[&(s, s)];
        if found.is_empty() {
            line(out, format!("({s}, {s}): SNE"))?;
        } else {
            line(out, format!("({s}, {s}): not an SNE"))?;
            for w in found {
                line(
                    out,
                    format!(
                        "  {} gains by {} -> {}: {} -> {}",
                        w.deviator,
                        w.from,
                        w.to,
                        scalar::exact(&w.payoff_before),
                        scalar::exact(&w.payoff_after)
                    ),
                )?;
            }
        }
    }
    let asym: Vec<String> = report
        .asymmetric_nash
        .iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect();
    line(out, format!("asymmetric ex-ante Nash: {}", set_text(asym)))
}

fn chain_text(c: &Chain) -> String {
    format!(
        "{} < {} < {}: {}",
        scalar::exact(&c.left),
        scalar::exact(&c.middle),
        scalar::exact(&c.right),
        if c.holds() { "holds" } else { "fails" }
    )
}

fn intervals(doc: &ModelDocument, out: &mut dyn Write) -> Result<()> {
    let (m, c) = (&doc.model, &doc.cost);
    let report = interval_report(m, c)?;
    line(out, "SNE intervals for p(t_h):")?;
    for s in PureStrategy::ALL {
        let i = report.get(s);
        if i.is_empty() {
            line(out, format!("{s}: empty"))?;
        } else {
            line(out, format!("{s}: {i} ≈ {}", i.to_decimal_string(6)))?;
        }
    }
    line(out, "s_hl: there is no p for which (s_hl, s_hl) is an SNE")?;

    let e = existence_conditions(m, c)?;
    line(out, "existence chains:")?;
    line(out, format!("  s_hh: {}", chain_text(&e.all_high)))?;
    line(out, format!("  s_ll: {}", chain_text(&e.all_low)))?;
    for (label, chain) in ["(i)(a)", "(i)(b)", "(ii)(a)", "(ii)(b)"]
        .iter()
        .zip(&e.mixed)
    {
        line(out, format!("  s_lh {label}: {}", chain_text(chain)))?;
    }
    line(
        out,
        format!(
            "  s_lh: exactly one of (i), (ii): {}",
            if e.mixed_chain_holds() { "yes" } else { "no" }
        ),
    )?;
    for s in PureStrategy::ALL {
        line(
            out,
            format!(
                "  {s}: SNE for some p and not for others: {}",
                if e.nontrivial[&s] { "yes" } else { "no" }
            ),
        )?;
    }
    line(
        out,
        format!(
            "  A = {}, B = {} (A >= 0 => B > 0, B <= 0 => A < 0: {})",
            scalar::exact(&e.margin_a),
            scalar::exact(&e.margin_b),
            if e.margins_consistent() {
                "consistent"
            } else {
                "violated"
            }
        ),
    )?;

    let r = rationalizability(m, c)?;
    line(out, "rationalizability:")?;
    for s in PureStrategy::ALL {
        let text = match &r.witnesses[&s] {
            Some(w) if w.confirmed => format!(
                "rationalizable, unique SNE at p(t_h) = {} (≈ {})",
                scalar::fraction(&w.p_high),
                round_half_up(&w.p_high, 6)
            ),
            Some(w) => format!(
                "not confirmed: brute force disagrees at p(t_h) = {}",
                scalar::fraction(&w.p_high)
            ),
            None => "not rationalizable".to_string(),
        };
        line(out, format!("  {s}: {text}"))?;
    }
    let overlaps: Vec<String> = r
        .overlapping
        .iter()
        .map(|(a, b)| format!("{a}/{b}"))
        .collect();
    line(
        out,
        format!(
            "  overlapping intervals: {}",
            if overlaps.is_empty() {
                "none".to_string()
            } else {
                overlaps.join(", ")
            }
        ),
    )?;
    line(
        out,
        format!(
            "  concave within type profiles: {}",
            if r.concave { "yes" } else { "no" }
        ),
    )?;
    if let Some(disjoint) = r.concave_disjointness() {
        line(
            out,
            format!(
                "  concave case, intervals pairwise disjoint: {}",
                if disjoint { "yes" } else { "NO" }
            ),
        )?;
    }

    let (ph, qh) = build_farkas_systems(m, c);
    for (name, sys) in [("Ph", &ph), ("Qh", &qh)] {
        let result = farkas_check(sys);
        line(out, format!("Farkas ({name}):"))?;
        write!(out, "{sys}").map_err(io_err)?;
        line(
            out,
            format!(
                "  {result} [{}]",
                if verify(sys, &result) {
                    "verified"
                } else {
                    "NOT verified"
                }
            ),
        )?;
    }
    if !report.supported {
        line(
            out,
            "note: hypotheses fail, so these intervals are unsupported",
        )?;
    }
    Ok(())
}

fn segment_list(segments: &[&SignSegment]) -> String {
    if segments.is_empty() {
        "nowhere".to_string()
    } else {
        segments
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }
}

fn welfare(
    doc: &ModelDocument,
    pairs: &[(PureStrategy, PureStrategy)],
    out: &mut dyn Write,
) -> Result<()> {
    let (m, c) = (&doc.model, &doc.cost);
    for s in [PureStrategy::LL, PureStrategy::LH, PureStrategy::HH] {
        line(out, format!("EW({s}, p) = {}", welfare_curve(m, c, s)))?;
    }
    for &(a, b) in pairs {
        let r = welfare_dominance(m, c, a, b)?;
        line(out, format!("{a} vs {b}:"))?;
        if r.identical() {
            line(out, "  identical curves")?;
            continue;
        }
        line(out, format!("  EW({a}) - EW({b}) = {}", r.difference))?;
        line(
            out,
            format!("  discriminant = {}", scalar::exact(&r.discriminant)),
        )?;
        let roots: Vec<String> = r
            .roots_in_unit()
            .iter()
            .map(|x| match x.as_rational() {
                Some(_) => x.to_string(),
                None => format!("{x} ≈ {:.6}", x.to_f64()),
            })
            .collect();
        line(out, format!("  crossings in (0, 1): {}", set_text(roots)))?;
        let better = |sign: std::cmp::Ordering| -> Vec<&SignSegment> {
            r.segments.iter().filter(|s| s.sign == sign).collect()
        };
        line(
            out,
            format!(
                "  {a} higher on {}",
                segment_list(&better(std::cmp::Ordering::Greater))
            ),
        )?;
        line(
            out,
            format!(
                "  {b} higher on {}",
                segment_list(&better(std::cmp::Ordering::Less))
            ),
        )?;
        if r.overlap.is_empty() {
            line(out, "  never both SNEs")?;
            continue;
        }
        line(out, format!("  both SNEs on {}", r.overlap))?;
        line(
            out,
            format!(
                "    {a} higher on {}",
                segment_list(&r.first_better_on_overlap())
            ),
        )?;
        line(
            out,
            format!(
                "    {b} higher on {}",
                segment_list(&r.second_better_on_overlap())
            ),
        )?;
        if r.first_dominates_on_overlap() == Some(false) && !r.first_better_on_overlap().is_empty()
        {
            line(
                out,
                format!("    note: {a} does not dominate on the whole overlap; the curves cross inside it"),
            )?;
        }
    }
    Ok(())
}

fn coalition(doc: &ModelDocument, p: &TypeDistribution, out: &mut dyn Write) -> Result<()> {
    let (m, c) = (&doc.model, &doc.cost);
    line(out, p)?;
    let best = probation_best_efforts(m, c);
    for t in AgentType::ALL {
        let values: Vec<String> = EffortLevel::ALL
            .iter()
            .map(|&e| format!("{e}: {}", scalar::exact(&probation_value(m, c, e, t))))
            .collect();
        line(
            out,
            format!(
                "probation best at {t}: {} ({})",
                set_text(&best[&t]),
                values.join(", ")
            ),
        )?;
    }
    let sne = enumerate_coalition_sne(m, c, p);
    line(out, format!("coalition SNE set: {}", set_text(&sne)))
}

fn sweep_cmd(
    doc: &ModelDocument,
    grid_n: usize,
    path: &PathBuf,
    out: &mut dyn Write,
) -> Result<()> {
    let rows = sweep(&doc.model, &doc.cost, grid_n)?;
    let file = File::create(path).map_err(io_err)?;
    write_csv(&rows, BufWriter::new(file))?;
    let mismatched = rows.iter().filter(|r| !r.flags_agree()).count();
    line(
        out,
        format!("wrote {} rows to {}", rows.len(), path.display()),
    )?;
    if mismatched == 0 {
        line(out, "SNE flags equal interval flags on all rows")
    } else {
        line(
            out,
            format!("SNE flags differ from interval flags on {mismatched} rows"),
        )
    }
}
