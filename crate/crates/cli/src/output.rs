// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::Path;

use sedecim::sieve_lab::SumReport;

use crate::{Failure, Format};

/// Writes `text` to `out`, or to standard output when no path is given.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub const SUM_HEADER: [&str; 16] = [
    "kind",
    "x",
    "m",
    "n",
    "d",
    "plugin",
    "seed",
    "value",
    "num_re",
    "num_im",
    "den",
    "weighted_re",
    "weighted_im",
    "term_count",
    "normalized",
    "stream",
];

/// One report as CSV: a header, one data row and, for the ideal form of
/// S(X), a second table of the exact per-(Norm p, l) sums.
pub fn sum_report_csv(r: &SumReport) -> Result<String, Failure> {
    let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(SUM_HEADER).map_err(csv_err)?;
    let kind = serde_json::to_value(r.kind).map_err(|e| Failure::Usage(e.to_string()))?;
    let (value, re, im, den) = match &r.value {
        Some(v) => (v.fraction_string(), v.re.to_string(), v.im.to_string(), "4".to_string()),
        None => Default::default(),
    };
    let (wre, wim) = r.weighted.clone().unwrap_or_default();
    w.write_record([
        kind.as_str().unwrap_or_default().to_string(),
        opt(&r.x),
        opt(&r.m),
        opt(&r.n),
        opt(&r.d),
        opt(&r.plugin),
        opt(&r.seed),
        value,
        re,
        im,
        den,
        wre,
        wim,
        r.term_count.to_string(),
        r.normalized.clone(),
        opt(&r.stream),
    ])
    .map_err(csv_err)?;
    let mut text = String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?).expect("csv output is UTF-8");
    if !r.prime_power_terms.is_empty() {
        text.push_str("\nprime_norm,power,num_re,num_im,den\n");
        for t in &r.prime_power_terms {
            text.push_str(&format!("{},{},{},{},4\n", t.prime_norm, t.power, t.sum.re, t.sum.im));
        }
    }
    Ok(text)
}

pub fn sum_report(r: &SumReport, format: Format) -> Result<String, Failure> {
    match format {
        Format::Csv => sum_report_csv(r),
        Format::Json => serde_json::to_string_pretty(r)
            .map(|s| s + "\n")
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}
