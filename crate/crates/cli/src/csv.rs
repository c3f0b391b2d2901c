//! CSV writers. Floats use 17 significant digits so every value
//! round-trips exactly through text.

use std::io::{self, Write};

use memfuzz_core::{RunSummary, SimRecord};

pub const RECORD_HEADER: &str = "t,v_src,i,v_mem,x,r,f";
pub const SURFACE_HEADER: &str = "u1,u2,f";
pub const SUMMARY_HEADER: &str = "label,x_min,x_max,x_final,r_first,max_abs_dr,rel_dr,saturated,r_at_zero_crossings";

#[inline]
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_records<W: Write>(mut out: W, records: &[SimRecord<f64>]) -> io::Result<()> {
    writeln!(out, "{RECORD_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            num(r.t),
            num(r.v_src),
            num(r.i),
            num(r.v_mem),
            num(r.x),
            num(r.r),
            num(r.f)
        )?;
    }
    out.flush()
}

pub fn summary_row(label: &str, s: &RunSummary<f64>) -> String {
    let crossings: Vec<String> = s.r_at_zero_crossings.iter().map(|&r| num(r)).collect();
    format!(
        "{label},{},{},{},{},{},{},{},{}",
        num(s.x_min),
        num(s.x_max),
        num(s.x_final),
        num(s.r_first),
        num(s.max_abs_dr),
        num(s.relative_dr()),
        s.saturated,
        crossings.join(";")
    )
}

pub fn write_summaries<W: Write>(mut out: W, rows: &[(String, RunSummary<f64>)]) -> io::Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for (label, s) in rows {
        writeln!(out, "{}", summary_row(label, s))?;
    }
    out.flush()
}

/// Parses a record CSV written by [`write_records`].
pub fn read_records(text: &str) -> Result<Vec<SimRecord<f64>>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(RECORD_HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(n, line)| {
            let v: Vec<f64> = line
                .split(',')
                .map(|c| c.parse::<f64>().map_err(|e| format!("row {}: {e}", n + 1)))
                .collect::<Result<_, _>>()?;
            if v.len() != 7 {
                return Err(format!("row {}: expected 7 columns, got {}", n + 1, v.len()));
            }
            Ok(SimRecord { t: v[0], v_src: v[1], i: v[2], v_mem: v[3], x: v[4], r: v[5], f: v[6] })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(0.0), "0.0000000000000000e0");
        for v in [std::f64::consts::PI, -1.234e-17, 16_000.0, 5000.0 / 15900.0] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn records_round_trip() {
        let rec = SimRecord { t: 1e-4, v_src: 0.1, i: 1.0 / 3.0, v_mem: -2.5e-9, x: 0.7, r: 4870.0, f: 0.0 };
        let mut buf = Vec::new();
        write_records(&mut buf, &[rec, rec]).unwrap();
        let back = read_records(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back, vec![rec, rec]);
    }
}
