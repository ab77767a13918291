//! `teugels gamma`: the table of Kendall polynomials.

use std::fmt::Write;

use serde::Serialize;
use teugels_core::cumulant::DEFAULT_ORACLE_CAP;
use teugels_core::{gamma, gamma_partition_oracle, ExactPolynomial};

use crate::args::{Format, GammaArgs};
use crate::output::Sink;
use crate::{Outcome, StageError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum OracleStatus {
    Match,
    Mismatch,
    /// Above the oracle cap.
    Skipped,
}

#[derive(Serialize)]
struct Entry {
    order: usize,
    oracle: OracleStatus,
    polynomial: ExactPolynomial,
}

#[derive(Serialize)]
struct GammaTable {
    max_order: usize,
    oracle_cap: usize,
    entries: Vec<Entry>,
}

pub(crate) fn run(args: &GammaArgs) -> Result<Outcome, StageError> {
    let sink = Sink::new(&args.output)?;
    let mut entries = Vec::with_capacity(args.max_order + 1);
    for n in 0..=args.max_order {
        let polynomial = (*gamma(n).map_err(|e| StageError::new("gamma", e))?).clone();
        let oracle = if n <= DEFAULT_ORACLE_CAP {
            let reference = gamma_partition_oracle(n).map_err(|e| StageError::new("oracle", e))?;
            if reference == polynomial {
                OracleStatus::Match
            } else {
                OracleStatus::Mismatch
            }
        } else {
            OracleStatus::Skipped
        };
        entries.push(Entry {
            order: n,
            oracle,
            polynomial,
        });
    }
    let table = GammaTable {
        max_order: args.max_order,
        oracle_cap: DEFAULT_ORACLE_CAP,
        entries,
    };

    let mut text = String::new();
    for e in &table.entries {
        let _ = writeln!(text, "gamma_{} = {}", e.order, e.polynomial);
    }
    sink.write_json("gamma.json", &table)?;
    sink.write(Format::Text, "gamma.txt", &text)?;

    let mismatches: Vec<usize> = table
        .entries
        .iter()
        .filter(|e| e.oracle == OracleStatus::Mismatch)
        .map(|e| e.order)
        .collect();
    if !mismatches.is_empty() {
        eprintln!("gamma: partition-oracle mismatch at orders {mismatches:?}");
    }
    Ok(Outcome::from_pass(mismatches.is_empty()))
}
