//! `teugels charlier`: λ tables and both readings of the Charlier expansion.

use std::fmt::Write;

use serde::Serialize;
use teugels_core::charlier::lambda_tables;
use teugels_core::{expansion_check, Convention, ExactPolynomial, LambdaTable};

use crate::args::{CharlierArgs, Format};
use crate::output::Sink;
use crate::{Outcome, StageError};

/// Largest order the command accepts.
pub(crate) const MAX_ORDER: usize = 12;

#[derive(Serialize)]
struct Verdict {
    order: usize,
    convention: Convention,
    holds: bool,
    /// `g_n` minus the expansion, in `(x, a)`.
    difference: ExactPolynomial,
}

#[derive(Serialize)]
struct CharlierReport {
    max_order: usize,
    lambda_tables: Vec<LambdaTable>,
    expansions: Vec<Verdict>,
}

pub(crate) fn run(args: &CharlierArgs) -> Result<Outcome, StageError> {
    if args.max_order == 0 || args.max_order > MAX_ORDER {
        return Err(StageError::new(
            "config",
            anyhow::anyhow!("--max-order must be between 1 and {MAX_ORDER}, got {}", args.max_order),
        ));
    }
    let sink = Sink::new(&args.output)?;
    let mut expansions = Vec::new();
    for n in 1..=args.max_order {
        for convention in Convention::ALL {
            let r = expansion_check(n, convention).map_err(|e| StageError::new("charlier", e))?;
            expansions.push(Verdict {
                order: n,
                convention,
                holds: r.holds,
                difference: r.difference,
            });
        }
    }
    let report = CharlierReport {
        max_order: args.max_order,
        lambda_tables: lambda_tables(args.max_order),
        expansions,
    };

    let mut text = String::from("lambda tables\n");
    for t in &report.lambda_tables {
        let entries: Vec<String> = t.entries.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "  n={:<3} [{}]", t.order, entries.join(", "));
    }
    text.push_str("expansion of g_n(x, a) in Charlier polynomials (x1 = x, x2 = a)\n");
    let _ = writeln!(
        text,
        "  {:<6} {:<24} {:<8} difference",
        "order", "convention", "verdict"
    );
    for v in &report.expansions {
        let verdict = if v.holds { "holds" } else { "fails" };
        let _ = writeln!(
            text,
            "  {:<6} {:<24} {:<8} {}",
            v.order,
            v.convention.to_string(),
            verdict,
            v.difference
        );
    }
    sink.write_json("charlier.json", &report)?;
    sink.write(Format::Text, "charlier.txt", &text)?;
    // Both readings are reported; neither outcome is a failure of the command.
    Ok(Outcome::Pass)
}
