//! Graph exports: Graphviz DOT and a CSV edge list.

use std::fmt::Write as _;
use std::io::{Read, Write};

use netgood_core::{DependenceMatrix, SquareMatrix};

use crate::error::CliError;

/// Arcs point from the dependent agent to the agent it depends on, labelled
/// with `g_ij`. Nodes and arcs are listed in index order.
pub fn to_dot(g: &DependenceMatrix) -> String {
    let mut out = String::from("digraph netgood {\n");
    for i in 0..g.n() {
        let _ = writeln!(out, "  {i};");
    }
    for (i, j, w) in g.edges() {
        let _ = writeln!(out, "  {i} -> {j} [label=\"{w}\"];");
    }
    out.push_str("}\n");
    out
}

/// `from,to,weight` rows. Weights use the shortest representation that
/// parses back to the same `f64`.
pub fn write_csv<W: Write>(g: &DependenceMatrix, writer: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["from", "to", "weight"])?;
    for (i, j, v) in g.edges() {
        w.write_record([i.to_string(), j.to_string(), format!("{v}")])?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv(g: &DependenceMatrix) -> String {
    let mut buf = Vec::new();
    write_csv(g, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

fn csv_error(line: u64, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: format!("csv line {line}"),
        message: message.into(),
    }
}

/// Reads an edge list produced by [`write_csv`] into an `n`-agent matrix.
pub fn dependence_from_csv<R: Read>(reader: R, n: usize) -> Result<DependenceMatrix, CliError> {
    let mut r = csv::Reader::from_reader(reader);
    let mut g = SquareMatrix::zeros(n);
    for (k, rec) in r.records().enumerate() {
        let line = k as u64 + 2;
        let rec = rec.map_err(|e| csv_error(line, e.to_string()))?;
        if rec.len() != 3 {
            return Err(csv_error(line, format!("expected 3 fields, found {}", rec.len())));
        }
        let idx = |f: usize| -> Result<usize, CliError> {
            let v: usize = rec[f].trim().parse().map_err(|e| csv_error(line, format!("{e}")))?;
            if v >= n {
                return Err(csv_error(line, format!("index {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let (i, j) = (idx(0)?, idx(1)?);
        let w: f64 = rec[2].trim().parse().map_err(|e| csv_error(line, format!("{e}")))?;
        if i == j {
            return Err(csv_error(line, "self-loop"));
        }
        g[(i, j)] = w;
    }
    DependenceMatrix::new(g).map_err(CliError::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_for_pair_and_empty_graph() {
        let g = DependenceMatrix::pair(0.5, 0.5).unwrap();
        let dot = to_dot(&g);
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("0 -> 1 [label=\"0.5\"]"));
        let empty = to_dot(&DependenceMatrix::zeros(3));
        assert_eq!(empty, "digraph netgood {\n  0;\n  1;\n  2;\n}\n");
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let g = DependenceMatrix::from_rows(&[[0.0, 0.1, 1.0 / 3.0], [-2.5e-17, 0.0, 0.0], [0.0, 7.0, 0.0]]).unwrap();
        let back = dependence_from_csv(to_csv(&g).as_bytes(), 3).unwrap();
        assert_eq!(back, g);
    }
}
