//! Serialized forms of command results. Big integers are always decimal
//! strings.

use std::io::Write;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use pyramidal::census::CensusRow;
use pyramidal::geometry::{PolygonPath, PolygonReport};
use pyramidal::pell::{GeneratedSolution, PellContext};
use pyramidal::socs::classify_parameterized;
use pyramidal::SolutionTriple;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
pub struct OutputRecord<T> {
    pub schema_version: String,
    pub command: String,
    pub payload: T,
}

impl<T: Serialize> OutputRecord<T> {
    pub fn new(command: &str, payload: T) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            payload,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRow {
    pub a: String,
    pub b: String,
    pub c: String,
    #[serde(rename = "N")]
    pub n: String,
    pub ell: String,
    pub m: String,
    pub k: Option<String>,
}

impl From<&SolutionTriple> for SolutionRow {
    fn from(t: &SolutionTriple) -> Self {
        let g = t.gaps();
        SolutionRow {
            a: t.a().to_string(),
            b: t.b().to_string(),
            c: t.c().to_string(),
            n: t.span().to_string(),
            ell: g.ell.to_string(),
            m: g.m.to_string(),
            k: classify_parameterized(t).map(|k| k.to_string()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ContextSummary {
    pub base: [String; 3],
    #[serde(rename = "A")]
    pub a_coeff: String,
    #[serde(rename = "B")]
    pub b_coeff: String,
    pub u0: String,
    pub v0: String,
    pub p: String,
    pub q: String,
    pub period_length: usize,
}

impl From<&PellContext> for ContextSummary {
    fn from(ctx: &PellContext) -> Self {
        let t = &ctx.base;
        ContextSummary {
            base: [t.a().to_string(), t.b().to_string(), t.c().to_string()],
            a_coeff: ctx.a_coeff.to_string(),
            b_coeff: ctx.b_coeff.to_string(),
            u0: ctx.u0.to_string(),
            v0: ctx.v0.to_string(),
            p: ctx.unit.p().to_string(),
            q: ctx.unit.q().to_string(),
            period_length: ctx.expansion.period.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedRow {
    pub n: i64,
    pub a: String,
    pub b: String,
    pub c: String,
    pub p_n: String,
    pub q_n: String,
    pub valid: bool,
    pub parity: String,
}

impl From<&GeneratedSolution> for GeneratedRow {
    fn from(g: &GeneratedSolution) -> Self {
        GeneratedRow {
            n: g.n,
            a: g.a.to_string(),
            b: g.b.to_string(),
            c: g.c.to_string(),
            p_n: g.p_n.to_string(),
            q_n: g.q_n.to_string(),
            valid: g.valid,
            parity: if g.odd_span() { "odd" } else { "even" }.to_string(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratePayload {
    pub context: ContextSummary,
    pub rows: Vec<GeneratedRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusCsvRow {
    pub a: String,
    pub b: String,
    pub c: String,
    #[serde(rename = "N")]
    pub n: String,
    pub k: Option<String>,
    pub candidate_built: bool,
    pub convex: bool,
    pub mu: usize,
    pub self_intersecting: bool,
}

impl From<&CensusRow> for CensusCsvRow {
    fn from(r: &CensusRow) -> Self {
        let t = &r.triple;
        CensusCsvRow {
            a: t.a().to_string(),
            b: t.b().to_string(),
            c: t.c().to_string(),
            n: t.span().to_string(),
            k: r.parameterized_k.as_ref().map(BigInt::to_string),
            candidate_built: r.candidate_built,
            convex: r.convex,
            mu: r.mu,
            self_intersecting: r.self_intersecting,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CensusPayload {
    pub candidates: usize,
    pub convex: usize,
    pub rows: Vec<CensusCsvRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportSummary {
    pub max_side_residual: f64,
    pub max_perp_residual: f64,
    pub max_diagonal_residual: f64,
    pub closure_residual: f64,
    pub degenerate_vertices: Vec<usize>,
    pub self_intersecting: bool,
    pub mu: usize,
    pub convex: bool,
}

impl From<&PolygonReport> for ReportSummary {
    fn from(r: &PolygonReport) -> Self {
        ReportSummary {
            max_side_residual: r.max_side_residual,
            max_perp_residual: r.max_perp_residual,
            max_diagonal_residual: r.max_diagonal_residual,
            closure_residual: r.closure_residual,
            degenerate_vertices: r.degenerate_vertices.clone(),
            self_intersecting: r.self_intersecting,
            mu: r.mu,
            convex: r.convex,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolygonPayload {
    pub triple: [String; 3],
    pub mode: String,
    pub turns: Option<String>,
    pub vertices: Vec<[f64; 2]>,
    pub side_lengths: Vec<u64>,
    /// Exact `|V_i - O|^2` for each vertex, `O` first.
    pub squared_diagonals: Vec<String>,
    pub report: ReportSummary,
}

impl PolygonPayload {
    pub fn new(
        t: &SolutionTriple,
        mode: &str,
        turns: Option<String>,
        path: &PolygonPath,
        report: &PolygonReport,
    ) -> Self {
        PolygonPayload {
            triple: [t.a().to_string(), t.b().to_string(), t.c().to_string()],
            mode: mode.to_string(),
            turns,
            vertices: path.vertices.iter().map(|p| [p.x, p.y]).collect(),
            side_lengths: path.side_targets.clone(),
            squared_diagonals: path.squared_diagonals.iter().map(u128::to_string).collect(),
            report: report.into(),
        }
    }
}

pub fn write_json<T: Serialize>(
    out: &mut impl Write,
    record: &OutputRecord<T>,
) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, record)?;
    writeln!(out)
}

pub fn write_csv<T: Serialize>(
    out: &mut impl Write,
    rows: &[T],
    header: &[&str],
) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
