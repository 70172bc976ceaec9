//! CSV emission with fixed header rows.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so the
//! decimal text parses back to the identical f64 and artifacts from
//! identical runs are byte-identical.

use std::fs::File;
use std::io::{BufWriter, Result, Write};
use std::path::Path;

use crate::causal::NuSweepRow;
use crate::conductivity::{MultiplierField, SymbolSweepRow};

fn writer(path: &Path) -> Result<BufWriter<File>> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    Ok(BufWriter::new(File::create(path)?))
}

/// Columns: nu,t,x,v,f_value,f_limit,abs_err.
pub fn write_probe_table(path: &Path, rows: &[NuSweepRow]) -> Result<()> {
    let mut out = writer(path)?;
    writeln!(out, "nu,t,x,v,f_value,f_limit,abs_err")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.nu, r.probe.t, r.probe.x, r.probe.v, r.f_value, r.f_limit, r.abs_err
        )?;
    }
    out.flush()
}

/// Columns: omega,k,nu,re_sigma,im_sigma.
pub fn write_symbol_table(path: &Path, rows: &[SymbolSweepRow]) -> Result<()> {
    let mut out = writer(path)?;
    writeln!(out, "omega,k,nu,re_sigma,im_sigma")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.omega, r.k, r.nu, r.sigma_nu.re, r.sigma_nu.im)?;
    }
    out.flush()
}

/// Columns: t,x,j over the whole grid, row-major in t.
pub fn write_current_grid(path: &Path, field: &MultiplierField) -> Result<()> {
    let mut out = writer(path)?;
    writeln!(out, "t,x,j")?;
    let grid = &field.grid;
    for j in 0..grid.n_t {
        let t = grid.t_node(j);
        for l in 0..grid.n_x {
            writeln!(out, "{},{},{}", t, grid.x_node(l), field.value(j, l))?;
        }
    }
    out.flush()
}

/// Columns: t,x,j for an arbitrary list of samples (used when the current
/// comes from pointwise evaluation rather than a multiplier grid).
pub fn write_current_samples(path: &Path, samples: &[(f64, f64, f64)]) -> Result<()> {
    let mut out = writer(path)?;
    writeln!(out, "t,x,j")?;
    for (t, x, j) in samples {
        writeln!(out, "{},{},{}", t, x, j)?;
    }
    out.flush()
}

/// Columns: nu,t,x,u_value,u_limit,abs_err — the model-problem convergence
/// table, mirroring the probe-table layout without the velocity column.
pub fn write_model_table(path: &Path, rows: &[(f64, f64, f64, f64, f64, f64)]) -> Result<()> {
    let mut out = writer(path)?;
    writeln!(out, "nu,t,x,u_value,u_limit,abs_err")?;
    for (nu, t, x, u, u_limit, abs_err) in rows {
        writeln!(out, "{},{},{},{},{},{}", nu, t, x, u, u_limit, abs_err)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal::Probe;

    #[test]
    fn probe_table_round_trips_values() {
        let dir = std::env::temp_dir().join("plasma_response_report_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("probes.csv");
        let rows = vec![NuSweepRow {
            nu: 0.1,
            probe: Probe { t: 1.0, x: -0.5, v: 0.25 },
            f_value: 0.123456789012345678,
            f_limit: 0.12345,
            abs_err: 1.1e-6,
        }];
        write_probe_table(&path, &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "nu,t,x,v,f_value,f_limit,abs_err");
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        // Shortest round-trip formatting parses back bit-exactly.
        assert_eq!(fields[4].parse::<f64>().unwrap().to_bits(), rows[0].f_value.to_bits());
        std::fs::remove_file(&path).unwrap();
    }
}
