//! Deterministic writers: CSV tables, JSON documents, and OBJ
//! polylines. Every float prints through one fixed-width scientific
//! format (17 significant digits), so identical inputs give
//! byte-identical files on any platform.

use std::io::{self, Write};

use elastica::knot::KnotSolution;
use serde_json::{json, Map, Value};

/// 17 significant digits, scientific, `.` decimal separator.
pub fn sig17(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

/// JSON number, with non-finite values mapped to null.
pub fn jnum(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

pub const CURVE_COLUMNS: [&str; 18] = [
    "s",
    "kappa",
    "tau",
    "rho",
    "theta",
    "z",
    "x",
    "y",
    "t_x",
    "t_y",
    "t_z",
    "n_x",
    "n_y",
    "n_z",
    "b_x",
    "b_y",
    "b_z",
    "theta_darboux",
];

fn curve_row(k: &KnotSolution, i: usize) -> [f64; 18] {
    let c = &k.samples[i];
    [
        c.s,
        c.kappa,
        c.tau,
        c.rho,
        c.theta,
        c.z,
        c.position[0],
        c.position[1],
        c.t_hat[0],
        c.t_hat[1],
        c.t_hat[2],
        c.n_hat[0],
        c.n_hat[1],
        c.n_hat[2],
        c.b_hat[0],
        c.b_hat[1],
        c.b_hat[2],
        c.theta_darboux,
    ]
}

/// Header lines describing parameters, functionals, and where each
/// constant came from. Rendered as `#` comments in CSV/OBJ and as a
/// string list in JSON.
pub fn curve_header(k: &KnotSolution, solved_from: &str) -> Vec<String> {
    let f = &k.functionals;
    let mut lines = vec![
        format!("m = {} ({solved_from})", sig17(k.m)),
        format!(
            "q0 = {} (vertical closure scale Q0(m) = 2E/K - (1 - m))",
            sig17(k.q0)
        ),
        format!("k0 = {} (input; maximum curvature, sets the length unit)", sig17(k.k0)),
        format!(
            "lambda = {}, nu = {} (chart of the conserved quantities at (m, q0))",
            sig17(f.lambda),
            sig17(f.nu)
        ),
    ];
    if k.p_int > 0 {
        lines.push(format!(
            "p = {}, q = {}, ell = {} (azimuthal winding p/q, ell curvature periods per closure)",
            k.p_int, k.q_int, k.ell
        ));
    } else {
        lines.push(format!(
            "ell = {} (single curvature period; no azimuthal closure demanded)",
            k.ell
        ));
    }
    lines.extend([
        format!(
            "F_hat = {} (scale-free curvature functional)",
            sig17(f.f_hat)
        ),
        format!(
            "avg_torsion = {}, total_torsion = {} (torsion descriptors)",
            sig17(f.avg_torsion),
            sig17(f.total_torsion)
        ),
        format!(
            "R_hat = {}, delta_theta = {} (scale-free radius; azimuthal advance per period)",
            sig17(k.r_hat),
            sig17(k.delta_theta)
        ),
        format!("rows = {} (samples_per_period x ell + 1)", k.samples.len()),
    ]);
    lines
}

pub fn write_curve_csv(
    out: &mut dyn Write,
    k: &KnotSolution,
    header: &[String],
) -> io::Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "{}", CURVE_COLUMNS.join(","))?;
    for i in 0..k.samples.len() {
        let row = curve_row(k, i);
        let cells: Vec<String> = row.iter().map(|&v| sig17(v)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn write_curve_json(
    out: &mut dyn Write,
    k: &KnotSolution,
    header: &[String],
) -> io::Result<()> {
    let samples: Vec<Value> = (0..k.samples.len())
        .map(|i| Value::Array(curve_row(k, i).iter().map(|&v| jnum(v)).collect()))
        .collect();
    let doc = json!({
        "header": header,
        "parameters": {
            "m": jnum(k.m),
            "q0": jnum(k.q0),
            "k0": jnum(k.k0),
            "lambda": jnum(k.functionals.lambda),
            "nu": jnum(k.functionals.nu),
            "p": k.p_int,
            "q": k.q_int,
            "ell": k.ell,
        },
        "functionals": {
            "f_hat": jnum(k.functionals.f_hat),
            "avg_torsion": jnum(k.functionals.avg_torsion),
            "total_torsion": jnum(k.functionals.total_torsion),
            "r_hat": jnum(k.r_hat),
            "delta_theta": jnum(k.delta_theta),
        },
        "columns": CURVE_COLUMNS,
        "samples": samples,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
}

pub fn write_curve_obj(
    out: &mut dyn Write,
    k: &KnotSolution,
    header: &[String],
) -> io::Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    for c in &k.samples {
        writeln!(
            out,
            "v {} {} {}",
            sig17(c.position[0]),
            sig17(c.position[1]),
            sig17(c.position[2])
        )?;
    }
    let indices: Vec<String> = (1..=k.samples.len()).map(|i| i.to_string()).collect();
    writeln!(out, "l {}", indices.join(" "))
}

/// A generic numeric table: `#` comment header, one column-name row,
/// then data rows.
pub fn write_table_csv(
    out: &mut dyn Write,
    header: &[String],
    columns: &[&str],
    rows: &[Vec<f64>],
) -> io::Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "{}", columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| sig17(v)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn write_table_json(
    out: &mut dyn Write,
    header: &[String],
    columns: &[&str],
    rows: &[Vec<f64>],
) -> io::Result<()> {
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (name, &v) in columns.iter().zip(row) {
                obj.insert(name.to_string(), jnum(v));
            }
            Value::Object(obj)
        })
        .collect();
    let doc = json!({ "header": header, "rows": json_rows });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
}
