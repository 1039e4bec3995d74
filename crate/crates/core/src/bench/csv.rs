//! Table output: fixed-header CSV and a JSON dump with the raw samples.

use std::io::{self, Write};

use super::campaign::ThroughputRecord;
use crate::imcodec::format_ratio_2dp;

pub const CSV_HEADER: &str = "N,m_bits,se_gain,mapper,runtime_us,delta_us,throughput_mbps,samples";

/// One CSV row without the trailing newline.
pub fn csv_row(r: &ThroughputRecord) -> String {
    format!(
        "{},{},{},{},{:.2},{:.2},{:.2},{}",
        r.n,
        r.m_bits,
        format_ratio_2dp(r.m_bits, r.n),
        r.mapper_label(),
        r.runtime_us,
        r.delta_us,
        r.throughput_mbps,
        r.samples
    )
}

pub fn write_csv<W: Write>(mut w: W, records: &[ThroughputRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", csv_row(r))?;
    }
    w.flush()
}

pub fn write_json<W: Write>(w: W, records: &[ThroughputRecord]) -> io::Result<()> {
    serde_json::to_writer_pretty(w, records).map_err(io::Error::other)
}
