//! CSV formats shared by the tests and the command-line tools.
//!
//! All numeric output uses `.` as the decimal separator regardless of
//! locale (Rust float formatting is locale-independent). Floating-point
//! columns are written with 17 significant digits, which round-trips `f64`
//! exactly; sample times use 12 significant digits. Lines starting with
//! `#` are comments and are skipped on read.

use crate::harmonic::HarmonicComponent;
use crate::matrix::Mat;
use crate::{Complex64, ComplexMatrix, Error, Result};
use std::io::{BufRead, Write};

/// 17 significant digits: exact `f64` round-trip.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// 12 significant digits, for sample times.
pub fn fmt_time(v: f64) -> String {
    format!("{v:.11e}")
}

/// Writes `row,col,re,im` with 1-based indices, row-major order.
pub fn write_matrix_csv<W: Write>(w: &mut W, matrix: &ComplexMatrix) -> Result<()> {
    writeln!(w, "row,col,re,im")?;
    for r in 0..matrix.rows() {
        for c in 0..matrix.cols() {
            let v = matrix.get(r, c);
            writeln!(w, "{},{},{},{}", r + 1, c + 1, fmt_f64(v.re), fmt_f64(v.im))?;
        }
    }
    Ok(())
}

/// Reads the matrix format back. Dimensions are inferred from the largest
/// indices; every entry must be present exactly once. The result is in raw
/// normalization state regardless of how the source was produced.
pub fn read_matrix_csv<R: BufRead>(r: R) -> Result<ComplexMatrix> {
    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
    let mut rows = 0usize;
    let mut cols = 0usize;
    let mut header_seen = false;
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != "row,col,re,im" {
                return Err(Error::Io(format!("unexpected matrix header: {line}")));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Io(format!("expected 4 fields, got: {line}")));
        }
        let row: usize = fields[0]
            .parse()
            .map_err(|e| Error::Io(format!("bad row index {}: {e}", fields[0])))?;
        let col: usize = fields[1]
            .parse()
            .map_err(|e| Error::Io(format!("bad col index {}: {e}", fields[1])))?;
        let re: f64 = fields[2]
            .parse()
            .map_err(|e| Error::Io(format!("bad re value {}: {e}", fields[2])))?;
        let im: f64 = fields[3]
            .parse()
            .map_err(|e| Error::Io(format!("bad im value {}: {e}", fields[3])))?;
        if row == 0 || col == 0 {
            return Err(Error::Io("matrix indices are 1-based".into()));
        }
        rows = rows.max(row);
        cols = cols.max(col);
        entries.push((row - 1, col - 1, Complex64::new(re, im)));
    }
    if !header_seen {
        return Err(Error::Io("missing matrix header".into()));
    }
    if entries.len() != rows * cols {
        return Err(Error::Io(format!(
            "expected {} entries for a {rows}x{cols} matrix, got {}",
            rows * cols,
            entries.len()
        )));
    }
    let mut m = Mat::zeros(rows, cols);
    let mut seen = vec![false; rows * cols];
    for (r, c, v) in entries {
        if std::mem::replace(&mut seen[r * cols + c], true) {
            return Err(Error::Io(format!("duplicate entry ({},{})", r + 1, c + 1)));
        }
        m.set(r, c, v);
    }
    Ok(m)
}

/// Writes `slot,time_s,value` sample rows.
pub fn write_samples_csv<W: Write>(
    w: &mut W,
    slots: &[u64],
    times: &[f64],
    values: &[f64],
) -> Result<()> {
    if slots.len() != times.len() || slots.len() != values.len() {
        return Err(Error::DimensionMismatch(format!(
            "slots/times/values lengths differ: {}/{}/{}",
            slots.len(),
            times.len(),
            values.len()
        )));
    }
    writeln!(w, "slot,time_s,value")?;
    for i in 0..slots.len() {
        writeln!(
            w,
            "{},{},{}",
            slots[i],
            fmt_time(times[i]),
            fmt_f64(values[i])
        )?;
    }
    Ok(())
}

/// Reads sample rows back as `(slot, time_s, value)` triples.
pub fn read_samples_csv<R: BufRead>(r: R) -> Result<Vec<(u64, f64, f64)>> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != "slot,time_s,value" {
                return Err(Error::Io(format!("unexpected samples header: {line}")));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Io(format!("expected 3 fields, got: {line}")));
        }
        let slot = fields[0]
            .parse()
            .map_err(|e| Error::Io(format!("bad slot {}: {e}", fields[0])))?;
        let time = fields[1]
            .parse()
            .map_err(|e| Error::Io(format!("bad time {}: {e}", fields[1])))?;
        let value = fields[2]
            .parse()
            .map_err(|e| Error::Io(format!("bad value {}: {e}", fields[2])))?;
        out.push((slot, time, value));
    }
    Ok(out)
}

/// Writes `freq_index,freq_hz,amplitude,phase_rad` spectrum rows.
pub fn write_spectrum_csv<W: Write>(
    w: &mut W,
    components: &[HarmonicComponent],
    f0: f64,
) -> Result<()> {
    writeln!(w, "freq_index,freq_hz,amplitude,phase_rad")?;
    for c in components {
        writeln!(
            w,
            "{},{},{},{}",
            c.index,
            fmt_f64(c.index as f64 * f0),
            fmt_f64(c.amplitude),
            fmt_f64(c.phase)
        )?;
    }
    Ok(())
}

/// Reads spectrum rows back.
pub fn read_spectrum_csv<R: BufRead>(r: R) -> Result<Vec<HarmonicComponent>> {
    let mut out = Vec::new();
    let mut header_seen = false;
    for line in r.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !header_seen {
            if line != "freq_index,freq_hz,amplitude,phase_rad" {
                return Err(Error::Io(format!("unexpected spectrum header: {line}")));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Io(format!("expected 4 fields, got: {line}")));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|e| Error::Io(format!("bad index {}: {e}", fields[0])))?;
        let amplitude: f64 = fields[2]
            .parse()
            .map_err(|e| Error::Io(format!("bad amplitude {}: {e}", fields[2])))?;
        let phase: f64 = fields[3]
            .parse()
            .map_err(|e| Error::Io(format!("bad phase {}: {e}", fields[3])))?;
        out.push(HarmonicComponent {
            index,
            amplitude,
            phase,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use crate::sensing::{build_sensing_matrix, SensingParams};

    #[test]
    fn matrix_roundtrip_is_bit_exact() {
        let params = SensingParams::new(11, 3).unwrap();
        let a = build_sensing_matrix(&params);
        let mut buf = Vec::new();
        write_matrix_csv(&mut buf, &a).unwrap();
        let back = read_matrix_csv(&buf[..]).unwrap();
        assert_eq!((back.rows(), back.cols()), (a.rows(), a.cols()));
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let x = a.get(r, c);
                let y = back.get(r, c);
                assert_eq!(x.re.to_bits(), y.re.to_bits(), "({r},{c})");
                assert_eq!(x.im.to_bits(), y.im.to_bits(), "({r},{c})");
            }
        }
    }

    #[test]
    fn matrix_reader_rejects_malformed_input() {
        assert!(read_matrix_csv(&b"row,col,re\n"[..]).is_err());
        assert!(read_matrix_csv(&b"row,col,re,im\n1,1,0.0\n"[..]).is_err());
        // missing entry (2,2)
        let partial = b"row,col,re,im\n1,1,1.0,0.0\n1,2,1.0,0.0\n2,1,1.0,0.0\n";
        assert!(read_matrix_csv(&partial[..]).is_err());
        let dup = b"row,col,re,im\n1,1,1.0,0.0\n1,1,2.0,0.0\n";
        assert!(read_matrix_csv(&dup[..]).is_err());
    }

    #[test]
    fn samples_roundtrip() {
        let slots = vec![1u64, 4, 9];
        let times = vec![0.1, 0.4, 0.9];
        let values = vec![0.5, -1.25, 3.0];
        let mut buf = Vec::new();
        write_samples_csv(&mut buf, &slots, &times, &values).unwrap();
        let rows = read_samples_csv(&buf[..]).unwrap();
        assert_eq!(rows.len(), 3);
        for (i, (slot, time, value)) in rows.iter().enumerate() {
            assert_eq!(*slot, slots[i]);
            assert!((time - times[i]).abs() < 1e-9);
            assert_eq!(value.to_bits(), values[i].to_bits());
        }
    }

    #[test]
    fn spectrum_roundtrip_with_comments() {
        let mut rng = CounterRng::from_seed(6);
        let comps: Vec<HarmonicComponent> = (1..=5)
            .map(|i| HarmonicComponent {
                index: i * 7,
                amplitude: rng.uniform_in(0.1, 1.0),
                phase: rng.uniform_in(0.0, 6.28),
            })
            .collect();
        let mut buf = Vec::new();
        buf.extend_from_slice(b"# config: something\n");
        write_spectrum_csv(&mut buf, &comps, 1.0).unwrap();
        let back = read_spectrum_csv(&buf[..]).unwrap();
        assert_eq!(back.len(), comps.len());
        for (a, b) in back.iter().zip(&comps) {
            assert_eq!(a.index, b.index);
            assert_eq!(a.amplitude.to_bits(), b.amplitude.to_bits());
            assert_eq!(a.phase.to_bits(), b.phase.to_bits());
        }
    }
}
