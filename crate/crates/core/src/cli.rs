//! The `spalex` command line.

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coloring::{
    coloring_basis, coloring_determinant_check, enumerate_colorings, ColoringOptions,
    DEFAULT_COLORING_CAP,
};
use crate::diagram::{
    balanced_weighting_basis, contract_edge, ensure_balanced, is_balanced, mirror, parallelize,
    reverse_all, validate, wedge, Diagram,
};
use crate::error::{Error, Result};
use crate::invariants::{alexander_poly_of, determinant_at_of, DetOptions};
use crate::metacyclic::classify_and_count;
use crate::wirtinger::{alexander_matrix, closed_form_matrix};
use crate::{AlexMatrix, Laurent};

#[derive(Parser, Debug)]
#[command(
    name = "spalex",
    version,
    about = "Alexander invariants of balanced spatial graphs"
)]
pub struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for minor enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Diagram JSON file, or `-` for stdin.
    #[arg(required_unless_present = "raw_matrix")]
    pub file: Option<PathBuf>,
    /// Read a bare Alexander matrix instead of a diagram.
    #[arg(long, conflicts_with = "file")]
    pub raw_matrix: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the diagram rules and report balance.
    Validate {
        /// Diagram JSON file, or `-` for stdin.
        file: PathBuf,
    },
    /// Print the Alexander matrix with its row and column labels.
    Matrix {
        #[command(flatten)]
        input: Input,
        /// Fill rows from the closed-form crossing and vertex relations.
        #[arg(long)]
        closed_form: bool,
    },
    /// The k-th Alexander polynomial.
    Alex {
        #[command(flatten)]
        input: Input,
        /// Index k: gcd of the (c + v - k)-minors.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
        /// Drop one redundant relation row before enumerating minors.
        #[arg(long)]
        drop_redundant_row: bool,
        /// Enumerate every minor without unit pivoting or early exit.
        #[arg(long)]
        naive: bool,
        /// Largest number of minors to evaluate.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
    },
    /// The k-th determinant at n.
    Det {
        #[command(flatten)]
        input: Input,
        /// Nonzero integer substituted for t.
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Index k: gcd of the (c + v - k)-minors.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
    },
    /// p-colorings at n.
    Color {
        /// Diagram JSON file, or `-` for stdin.
        file: PathBuf,
        /// Odd prime modulus.
        #[arg(long)]
        p: u64,
        /// Nonzero integer substituted for t.
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// List every coloring.
        #[arg(long)]
        enumerate: bool,
        /// Largest number of colorings to enumerate.
        #[arg(long, default_value_t = DEFAULT_COLORING_CAP)]
        cap: u64,
        /// Also test the determinant criterion for this k.
        #[arg(long)]
        check_k: Option<i64>,
        /// Permit p = 2.
        #[arg(long)]
        allow_two: bool,
    },
    /// Representations into the metacyclic group Γ(p, m, k).
    Reps {
        /// Diagram JSON file, or `-` for stdin.
        file: PathBuf,
        /// Odd prime modulus.
        #[arg(long)]
        p: u64,
        /// Twist: β α β⁻¹ = α^k, also the value substituted for t.
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Use this m instead of the order of k mod p.
        #[arg(long)]
        m: Option<u64>,
        /// Largest number of colorings to enumerate.
        #[arg(long, default_value_t = DEFAULT_COLORING_CAP)]
        cap: u64,
        /// Print every representation.
        #[arg(long)]
        list: bool,
    },
    /// Apply a diagram transformation and print the resulting diagram.
    Transform {
        /// Diagram JSON file, or `-` for stdin.
        file: PathBuf,
        #[command(subcommand)]
        op: TransformOp,
    },
    /// A basis of balanced weightings of the underlying graph.
    Weightings {
        /// Diagram JSON file, or `-` for stdin.
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum TransformOp {
    /// Mirror image: crossing signs flip, vertex orders reverse.
    Mirror,
    /// Reverse every edge orientation.
    ReverseAll,
    /// Contract a crossing-free edge joining two distinct vertices.
    Contract { edge: String },
    /// Replace each edge by n parallel copies, the first r keeping its direction.
    Parallel { n: usize, r: usize },
    /// Join with another diagram by identifying vertex v1 here with v2 there.
    Wedge {
        other: PathBuf,
        v1: String,
        v2: String,
    },
}

/// Matrix file: declared crossing, vertex and edge counts and rows of polynomial strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawMatrixInput {
    pub crossings: usize,
    pub vertices: usize,
    pub edges: usize,
    pub rows: Vec<Vec<String>>,
}

impl RawMatrixInput {
    pub fn into_matrix(self) -> Result<AlexMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<Laurent>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        AlexMatrix::from_raw(rows, self.crossings, self.vertices, self.edges)
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    Ok(std::fs::read_to_string(path)?)
}

fn read_diagram(path: &Path) -> Result<Diagram> {
    Diagram::from_json(&read_text(path)?)
}

fn read_matrix(input: &Input) -> Result<(AlexMatrix, Value)> {
    match (&input.raw_matrix, &input.file) {
        (Some(path), _) => {
            let raw: RawMatrixInput = serde_json::from_str(&read_text(path)?)?;
            Ok((raw.into_matrix()?, json!({ "raw_matrix": path })))
        }
        (None, Some(path)) => Ok((
            alexander_matrix(&read_diagram(path)?)?,
            json!({ "file": path }),
        )),
        (None, None) => Err(Error::InvalidArgument("no input given".into())),
    }
}

fn poly_json(p: &Laurent) -> Value {
    json!({
        "text": p.to_string(),
        "terms": p.to_pairs().iter().map(|(e, c)| json!([e, c.to_string()])).collect::<Vec<_>>(),
    })
}

fn envelope(operation: &str, inputs: Value, result: Value) -> String {
    let v = json!({ "operation": operation, "inputs": inputs, "result": result });
    serde_json::to_string_pretty(&v).expect("json value serializes") + "\n"
}

/// Executes a parsed command line and returns what should go to stdout.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Validate { file } => {
            let d = read_diagram(file)?;
            let violations = validate(&d);
            if !violations.is_empty() {
                let msgs: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                return Err(Error::InvalidDiagram(msgs.join("; ")));
            }
            let balanced = is_balanced(&d)?;
            let summary = json!({
                "valid": true,
                "balanced": balanced,
                "crossings": d.crossings.len(),
                "vertices": d.vertices.len(),
                "edges": d.edges.len(),
                "components": d.component_count(),
            });
            if cli.json {
                return Ok(envelope("validate", json!({ "file": file }), summary));
            }
            Ok(format!(
                "valid: {} crossings, {} vertices, {} edges, {} component(s); balanced: {}\n",
                d.crossings.len(),
                d.vertices.len(),
                d.edges.len(),
                d.component_count(),
                if balanced { "yes" } else { "no" }
            ))
        }
        Command::Matrix { input, closed_form } => {
            let (m, inputs) = match (&input.file, *closed_form) {
                (Some(path), true) if input.raw_matrix.is_none() => (
                    closed_form_matrix(&read_diagram(path)?)?,
                    json!({ "file": path, "closed_form": true }),
                ),
                _ => read_matrix(input)?,
            };
            let rows = m.matrix.to_rows();
            if cli.json {
                let entries: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect())
                    .collect();
                let result = json!({
                    "rows": m.rows,
                    "columns": m.cols,
                    "entries": entries,
                });
                return Ok(envelope("matrix", inputs, result));
            }
            let mut out = format!("columns: {}\n", m.cols.join(", "));
            for (label, row) in m.rows.iter().zip(&rows) {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!("{label}: [{}]\n", cells.join(", ")));
            }
            Ok(out)
        }
        Command::Alex {
            input,
            k,
            drop_redundant_row,
            naive,
            cap,
        } => {
            let (m, mut inputs) = read_matrix(input)?;
            let mut opts = if *naive {
                DetOptions::naive()
            } else {
                DetOptions::default()
            };
            opts.drop_redundant_row = *drop_redundant_row;
            opts.threads = cli.threads;
            opts.max_minors = *cap;
            let p = alexander_poly_of(&m, *k, &opts)?;
            if cli.json {
                inputs["k"] = json!(k);
                return Ok(envelope("alex", inputs, poly_json(&p)));
            }
            Ok(format!("{p}\n"))
        }
        Command::Det { input, n, k } => {
            let (m, mut inputs) = read_matrix(input)?;
            let det = determinant_at_of::<BigInt>(&m, *n, *k)?;
            if cli.json {
                inputs["n"] = json!(n);
                inputs["k"] = json!(k);
                let result = json!({
                    "value": det.value.to_string(),
                    "raw": det.raw.to_string(),
                    "invariant": det.invariant,
                });
                return Ok(envelope("det", inputs, result));
            }
            let note = if det.invariant {
                String::new()
            } else {
                " (not diagram-invariant: |n| is composite)".to_string()
            };
            Ok(format!("{} (raw {}){note}\n", det.value, det.raw))
        }
        Command::Color {
            file,
            p,
            n,
            enumerate,
            cap,
            check_k,
            allow_two,
        } => {
            let d = read_diagram(file)?;
            ensure_balanced(&d)?;
            let opts = ColoringOptions {
                allow_two: *allow_two,
            };
            let basis = coloring_basis(&d, *n, *p, opts)?;
            let all = if *enumerate {
                Some(enumerate_colorings(&d, *n, *p, *cap, opts)?)
            } else {
                None
            };
            let check = match check_k {
                Some(k) => Some(coloring_determinant_check(&d, *n, *p, *k)?),
                None => None,
            };
            let arcs: Vec<String> = crate::diagram::ArcIndex::new(&d).arcs;
            if cli.json {
                let result = json!({
                    "arcs": arcs,
                    "nullity": basis.len(),
                    "basis": basis.iter().map(|c| &c.values).collect::<Vec<_>>(),
                    "colorings": all.as_ref().map(|v| v.iter().map(|c| &c.values).collect::<Vec<_>>()),
                    "check": check.as_ref().map(|c| json!({
                        "k": check_k,
                        "nullity": c.nullity,
                        "threshold": c.threshold,
                        "det_raw": c.det_raw,
                        "extra_colorings": c.extra_colorings,
                        "p_divides": c.p_divides,
                        "holds": c.holds(),
                    })),
                });
                let inputs = json!({ "file": file, "p": p, "n": n });
                return Ok(envelope("color", inputs, result));
            }
            let mut out = format!("nullity: {}\narcs: {}\n", basis.len(), arcs.join(", "));
            for c in &basis {
                out.push_str(&format!("basis: {:?}\n", c.values));
            }
            if let Some(all) = &all {
                out.push_str(&format!("colorings: {}\n", all.len()));
                for c in all {
                    out.push_str(&format!("{:?}\n", c.values));
                }
            }
            if let (Some(c), Some(k)) = (&check, check_k) {
                out.push_str(&format!(
                    "check k={k}: N_p = {} > {}: {}; p | {}: {}; {}\n",
                    c.nullity,
                    c.threshold,
                    c.extra_colorings,
                    c.det_raw,
                    c.p_divides,
                    if c.holds() { "consistent" } else { "VIOLATED" }
                ));
            }
            Ok(out)
        }
        Command::Reps {
            file,
            p,
            k,
            m,
            cap,
            list,
        } => {
            let d = read_diagram(file)?;
            let counts = classify_and_count(&d, *p, *k, *m, *cap)?;
            let reps = if *list {
                let g = counts.group;
                let colorings = enumerate_colorings(&d, *k, *p, *cap, ColoringOptions::default())?;
                Some(
                    colorings
                        .iter()
                        .map(|c| crate::metacyclic::build_representation(&d, &g, c))
                        .collect::<Result<Vec<_>>>()?,
                )
            } else {
                None
            };
            if cli.json {
                let inputs = json!({ "file": file, "p": p, "k": k, "m": m });
                let mut result = serde_json::to_value(&counts)?;
                if let Some(reps) = &reps {
                    result["representations"] = json!(reps
                        .iter()
                        .map(|r| r.images.iter().map(|x| [x.a, x.b]).collect::<Vec<_>>())
                        .collect::<Vec<_>>());
                }
                return Ok(envelope("reps", inputs, result));
            }
            let mut out = format!(
                "group: Γ({}, {}, {})\nnullity: {}\ntotal: {}\ncyclic: {}\nsurjective: {}\n",
                counts.group.p,
                counts.group.m,
                counts.group.k,
                counts.nullity,
                counts.total,
                counts.cyclic,
                counts.surjective
            );
            out.push_str(&format!(
                "inequivalent surjective (orbits): {}\n",
                counts.orbits
            ));
            if counts.minimal_m {
                out.push_str(&format!(
                    "inequivalent surjective (formula): {}\n",
                    counts.formula
                ));
            }
            if let Some(reps) = &reps {
                for r in reps {
                    let cells: Vec<String> = r
                        .arcs
                        .iter()
                        .zip(&r.images)
                        .map(|(a, x)| format!("{a}=a^{}b^{}", x.a, x.b))
                        .collect();
                    out.push_str(&format!("{}\n", cells.join(" ")));
                }
            }
            Ok(out)
        }
        Command::Transform { file, op } => {
            let d = read_diagram(file)?;
            let out = match op {
                TransformOp::Mirror => mirror(&d),
                TransformOp::ReverseAll => reverse_all(&d),
                TransformOp::Contract { edge } => contract_edge(&d, edge)?,
                TransformOp::Parallel { n, r } => parallelize(&d, *n, *r)?,
                TransformOp::Wedge { other, v1, v2 } => wedge(&d, v1, &read_diagram(other)?, v2)?,
            };
            if cli.json {
                let inputs = json!({ "file": file, "op": format!("{op:?}") });
                return Ok(envelope("transform", inputs, serde_json::to_value(&out)?));
            }
            Ok(out.to_json() + "\n")
        }
        Command::Weightings { file } => {
            let d = read_diagram(file)?;
            let basis = balanced_weighting_basis(&d)?;
            let edges: Vec<&str> = d.edges.iter().map(|e| e.id.as_str()).collect();
            let balanced = is_balanced(&d)?;
            if cli.json {
                let result = json!({
                    "edges": edges,
                    "basis": basis,
                    "current_balanced": balanced,
                });
                return Ok(envelope("weightings", json!({ "file": file }), result));
            }
            let mut out = format!(
                "edges: {}\ncurrent weighting balanced: {}\nbasis rank: {}\n",
                edges.join(", "),
                if balanced { "yes" } else { "no" },
                basis.len()
            );
            for b in &basis {
                out.push_str(&format!("{b:?}\n"));
            }
            Ok(out)
        }
    }
}
