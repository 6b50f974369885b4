//! Rendering of report streams as text, JSON or CSV.

use std::io::{self, Write};

use anyhow::Result;
use apery_core::{CongruenceReport, RecoveryReport};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Top-level JSON document.
#[derive(Serialize)]
pub struct Document<'a, C: Serialize, R: Serialize> {
    pub command: &'a str,
    pub config: &'a C,
    pub reports: &'a [R],
}

pub fn write_json<C: Serialize, R: Serialize>(
    out: &mut impl Write,
    command: &str,
    config: &C,
    reports: &[R],
) -> Result<()> {
    let doc = Document {
        command,
        config,
        reports,
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_congruence_csv(out: &mut impl Write, reports: &[CongruenceReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "statement",
        "family",
        "p",
        "n",
        "k",
        "j",
        "r",
        "s",
        "m",
        "modulus",
        "lhs",
        "rhs",
        "holds",
        "holds_to_exponent",
    ])?;
    for r in reports {
        let p = &r.params;
        w.write_record([
            r.statement.id().to_string(),
            opt(p.family),
            p.p.to_string(),
            opt(p.n),
            opt(p.k),
            opt(p.j),
            opt(p.r),
            opt(p.s),
            opt(p.m),
            r.modulus.value().to_string(),
            r.lhs.value().to_string(),
            r.rhs.value().to_string(),
            r.holds.to_string(),
            opt(r.holds_to_exponent),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_congruence_text(out: &mut impl Write, reports: &[CongruenceReport]) -> Result<()> {
    for r in reports {
        writeln!(out, "{r}")?;
    }
    let failing = reports.iter().filter(|r| !r.holds).count();
    writeln!(out, "summary: {} reports, {failing} failing", reports.len())?;
    Ok(())
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn skipped(r: &RecoveryReport) -> String {
    join(r.skipped_primes.iter().map(|s| {
        let reason = serde_json::to_value(s.reason)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        format!("{}:{reason}", s.prime)
    }))
}

pub fn write_recovery_csv(out: &mut impl Write, reports: &[RecoveryReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "family",
        "n",
        "conjecture",
        "usable_primes",
        "skipped_primes",
        "residues",
        "crt_modulus",
        "recovered",
        "table_value",
        "matches",
    ])?;
    for r in reports {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.conjecture.number().to_string(),
            join(&r.usable_primes),
            skipped(r),
            join(
                r.residues
                    .iter()
                    .map(|x| format!("{}:{}", x.prime, x.residue)),
            ),
            r.crt_modulus.to_string(),
            opt(r.recovered.as_ref()),
            opt(r.table_value.as_ref()),
            opt(r.matches),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_recovery_text(out: &mut impl Write, reports: &[RecoveryReport]) -> Result<()> {
    for r in reports {
        let verdict = match (r.succeeded(), r.matches) {
            (false, _) => "FAILS",
            (true, Some(true)) => "matches table",
            (true, _) => "no table value",
        };
        let skipped = skipped(r);
        writeln!(
            out,
            "{} n={} conjecture={} recovered={} table={} primes={} skipped={} {verdict}",
            r.family,
            r.n,
            r.conjecture.number(),
            opt(r.recovered.as_ref()),
            opt(r.table_value.as_ref()),
            r.usable_primes.len(),
            if skipped.is_empty() { "none" } else { &skipped },
        )?;
    }
    let failing = reports.iter().filter(|r| !r.succeeded()).count();
    writeln!(
        out,
        "summary: {} recoveries, {failing} failing",
        reports.len()
    )?;
    Ok(())
}

pub fn stdout() -> io::StdoutLock<'static> {
    io::stdout().lock()
}
