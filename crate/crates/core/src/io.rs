//! File formats: edge-list text and JSON for graphs, CSV and JSON for
//! matrices. Everything a command writes can be read back unchanged,
//! rationals included.

use std::path::Path;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::metric::DistanceMatrix;
use crate::rational::Rational;

/// How rationals are printed. `Decimal` refuses values without a finite
/// decimal expansion instead of rounding them.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Default)]
pub enum NumberStyle {
    #[default]
    Fraction,
    Decimal,
}

pub fn format_rational(r: &Rational, style: NumberStyle) -> Result<String> {
    match style {
        NumberStyle::Fraction => Ok(r.to_string()),
        NumberStyle::Decimal => r.to_decimal_string().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{r} has no exact decimal form (denominator is not 2^a*5^b)"
            ))
        }),
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDto {
    labels: Vec<String>,
    edges: Vec<EdgeDto>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDto {
    a: String,
    b: String,
    w: String,
}

fn graph_dto(g: &WeightedGraph, style: NumberStyle) -> Result<GraphDto> {
    let mut edges = Vec::with_capacity(g.edge_count());
    for (e, w) in g.edges() {
        edges.push(EdgeDto {
            a: g.label(e.a()).to_string(),
            b: g.label(e.b()).to_string(),
            w: format_rational(w, style)?,
        });
    }
    Ok(GraphDto {
        labels: g.labels().to_vec(),
        edges,
    })
}

fn graph_from_dto(dto: GraphDto) -> Result<WeightedGraph> {
    let find = |label: &str, labels: &[String]| {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| parse_error(0, 0, format!("edge endpoint '{label}' is not a vertex")))
    };
    let mut edges = Vec::with_capacity(dto.edges.len());
    for e in &dto.edges {
        let a = find(&e.a, &dto.labels)?;
        let b = find(&e.b, &dto.labels)?;
        let w: Rational =
            e.w.parse()
                .map_err(|err| parse_error(0, 0, format!("weight of ({},{}): {err}", e.a, e.b)))?;
        edges.push((a, b, w));
    }
    WeightedGraph::new(dto.labels, edges)
}

impl Serialize for WeightedGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        graph_dto(self, NumberStyle::Fraction)
            .map_err(serde::ser::Error::custom)?
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightedGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        graph_from_dto(GraphDto::deserialize(deserializer)?).map_err(D::Error::custom)
    }
}

fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn json_error(err: &serde_json::Error) -> Error {
    parse_error(err.line(), err.column(), err.to_string())
}

pub fn graph_to_json(g: &WeightedGraph, style: NumberStyle) -> Result<String> {
    let dto = graph_dto(g, style)?;
    Ok(serde_json::to_string_pretty(&dto).expect("dto serialization cannot fail"))
}

pub fn graph_from_json(text: &str) -> Result<WeightedGraph> {
    let dto: GraphDto = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    graph_from_dto(dto)
}

/// Splits on commas that are not nested inside braces, so subset labels like
/// `{1,3,4}` survive the vertex header.
fn split_top_level_commas(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '{' => {
                depth += 1;
                current.push(ch);
            }
            '}' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            ',' if depth == 0 => parts.push(std::mem::take(&mut current)),
            _ => current.push(ch),
        }
    }
    parts.push(current);
    parts.into_iter().map(|p| p.trim().to_string()).collect()
}

const VERTEX_HEADER: &str = "#vertices:";

/// One edge per line, `<label>\t<label>\t<weight>`, after a header line
/// listing the vertex labels.
pub fn graph_to_edge_list(g: &WeightedGraph, style: NumberStyle) -> Result<String> {
    let mut out = format!("{VERTEX_HEADER} {}\n", g.labels().join(","));
    for (e, w) in g.edges() {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            g.label(e.a()),
            g.label(e.b()),
            format_rational(w, style)?
        ));
    }
    Ok(out)
}

pub fn graph_from_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut lines = text.lines().enumerate();
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| parse_error(1, 1, "empty edge-list file"))?;
    let rest = header.strip_prefix(VERTEX_HEADER).ok_or_else(|| {
        parse_error(
            header_line + 1,
            1,
            format!("expected header starting with '{VERTEX_HEADER}'"),
        )
    })?;
    let labels = split_top_level_commas(rest);
    let index_of = |label: &str| labels.iter().position(|l| l == label);

    let mut edges = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(parse_error(
                lineno + 1,
                1,
                format!("expected 3 tab-separated fields, found {}", fields.len()),
            ));
        }
        let col_of = |idx: usize| fields.iter().take(idx).map(|f| f.len() + 1).sum::<usize>() + 1;
        let a = index_of(fields[0]).ok_or_else(|| {
            parse_error(
                lineno + 1,
                col_of(0),
                format!("unknown vertex '{}'", fields[0]),
            )
        })?;
        let b = index_of(fields[1]).ok_or_else(|| {
            parse_error(
                lineno + 1,
                col_of(1),
                format!("unknown vertex '{}'", fields[1]),
            )
        })?;
        let w: Rational = fields[2]
            .parse()
            .map_err(|err| parse_error(lineno + 1, col_of(2), format!("{err}")))?;
        edges.push((a, b, w));
    }
    WeightedGraph::new(labels, edges)
}

/// First row is the labels; each following row is one matrix row. Labels
/// containing commas are quoted by the CSV layer.
pub fn matrix_to_csv(d: &DistanceMatrix, style: NumberStyle) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(d.labels()).map_err(|e| csv_error(&e))?;
    for i in 0..d.dim() {
        let mut row = Vec::with_capacity(d.dim());
        for j in 0..d.dim() {
            row.push(format_rational(d.entry(i, j), style)?);
        }
        writer.write_record(&row).map_err(|e| csv_error(&e))?;
    }
    let bytes = writer.into_inner().expect("in-memory writer");
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_error(err: &csv::Error) -> Error {
    let line = err
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or_default();
    parse_error(line, 1, format!("csv: {err}"))
}

pub fn matrix_from_csv(text: &str) -> Result<DistanceMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let labels: Vec<String> = match records.next() {
        Some(record) => record
            .map_err(|e| csv_error(&e))?
            .iter()
            .map(|s| s.to_string())
            .collect(),
        None => return Err(parse_error(1, 1, "empty matrix file")),
    };
    let mut entries = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_error(&e))?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(entries.len() + 2);
        if record.len() != labels.len() {
            return Err(parse_error(
                line,
                1,
                format!("expected {} entries, found {}", labels.len(), record.len()),
            ));
        }
        let mut row = Vec::with_capacity(labels.len());
        for (idx, field) in record.iter().enumerate() {
            let value: Rational = field
                .parse()
                .map_err(|err| parse_error(line, idx + 1, format!("{err}")))?;
            row.push(value);
        }
        entries.push(row);
    }
    DistanceMatrix::new(labels, entries)
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    labels: Vec<String>,
    rows: Vec<Vec<String>>,
}

pub fn matrix_to_json(d: &DistanceMatrix, style: NumberStyle) -> Result<String> {
    let mut rows = Vec::with_capacity(d.dim());
    for i in 0..d.dim() {
        let mut row = Vec::with_capacity(d.dim());
        for j in 0..d.dim() {
            row.push(format_rational(d.entry(i, j), style)?);
        }
        rows.push(row);
    }
    let dto = MatrixDto {
        labels: d.labels().to_vec(),
        rows,
    };
    Ok(serde_json::to_string_pretty(&dto).expect("dto serialization cannot fail"))
}

pub fn matrix_from_json(text: &str) -> Result<DistanceMatrix> {
    let dto: MatrixDto = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let mut entries = Vec::with_capacity(dto.rows.len());
    for (i, row) in dto.rows.iter().enumerate() {
        let mut parsed = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            parsed.push(
                cell.parse::<Rational>()
                    .map_err(|err| parse_error(0, 0, format!("rows[{i}][{j}]: {err}")))?,
            );
        }
        entries.push(parsed);
    }
    DistanceMatrix::new(dto.labels, entries)
}

/// File formats are chosen by extension: `.json` selects JSON, anything
/// else the text format (edge list for graphs, CSV for matrices).
fn is_json(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph> {
    let text = std::fs::read_to_string(path)?;
    if is_json(path) {
        graph_from_json(&text)
    } else {
        graph_from_edge_list(&text)
    }
}

pub fn write_graph(path: &Path, g: &WeightedGraph, style: NumberStyle) -> Result<()> {
    let text = if is_json(path) {
        graph_to_json(g, style)?
    } else {
        graph_to_edge_list(g, style)?
    };
    write_atomic(path, &text)
}

pub fn read_matrix(path: &Path) -> Result<DistanceMatrix> {
    let text = std::fs::read_to_string(path)?;
    if is_json(path) {
        matrix_from_json(&text)
    } else {
        matrix_from_csv(&text)
    }
}

pub fn write_matrix(path: &Path, d: &DistanceMatrix, style: NumberStyle) -> Result<()> {
    let text = if is_json(path) {
        matrix_to_json(d, style)?
    } else {
        matrix_to_csv(d, style)?
    };
    write_atomic(path, &text)
}

/// Writes via a temporary file in the target directory and renames it into
/// place, so readers never observe a half-written file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    use std::io::Write;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{generate_generalized_petersen, generate_kneser};
    use crate::metric::all_pairs_distances;

    #[test]
    fn graph_json_round_trips_with_subset_labels() {
        let g = generate_kneser(5, 2).unwrap();
        let json = graph_to_json(&g, NumberStyle::Fraction).unwrap();
        let back = graph_from_json(&json).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_round_trips_with_subset_labels() {
        let g = generate_kneser(5, 2).unwrap();
        let text = graph_to_edge_list(&g, NumberStyle::Fraction).unwrap();
        let back = graph_from_edge_list(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_round_trips_fractional_weights() {
        let g = generate_generalized_petersen(5, 2)
            .unwrap()
            .reweighted(|e| Rational::new((e.a() + e.b()) as i64 + 1, 7))
            .unwrap();
        let text = graph_to_edge_list(&g, NumberStyle::Fraction).unwrap();
        assert_eq!(graph_from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_errors_carry_positions() {
        match graph_from_edge_list("#vertices: a,b\na\tc\t1\n") {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!(line, 2);
                assert_eq!(col, 3);
                assert!(msg.contains("unknown vertex 'c'"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match graph_from_edge_list("#vertices: a,b\na\tb\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(graph_from_edge_list("a\tb\t1\n").is_err());
    }

    #[test]
    fn matrix_csv_round_trips_with_quoted_labels() {
        let g = generate_kneser(5, 2).unwrap();
        let d = all_pairs_distances(&g).unwrap();
        let csv = matrix_to_csv(&d, NumberStyle::Fraction).unwrap();
        assert!(csv.contains("\"{1,2}\""), "subset labels need quoting");
        let back = matrix_from_csv(&csv).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn matrix_csv_reports_positions() {
        match matrix_from_csv("a,b\n0,x\n1,0\n") {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(col, 2);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match matrix_from_csv("a,b\n0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn matrix_json_round_trips() {
        let g = generate_generalized_petersen(5, 2)
            .unwrap()
            .reweighted(|_| Rational::new(5, 4))
            .unwrap();
        let d = all_pairs_distances(&g).unwrap();
        let json = matrix_to_json(&d, NumberStyle::Fraction).unwrap();
        assert_eq!(matrix_from_json(&json).unwrap(), d);
    }

    #[test]
    fn decimal_style_is_exact_or_an_error() {
        let g = WeightedGraph::new(
            vec!["a".into(), "b".into()],
            vec![(0, 1, Rational::new(3, 2))],
        )
        .unwrap();
        let text = graph_to_edge_list(&g, NumberStyle::Decimal).unwrap();
        assert!(text.contains("1.5"));
        assert_eq!(graph_from_edge_list(&text).unwrap(), g);

        let g3 = WeightedGraph::new(
            vec!["a".into(), "b".into()],
            vec![(0, 1, Rational::new(1, 3))],
        )
        .unwrap();
        assert!(graph_to_edge_list(&g3, NumberStyle::Decimal).is_err());
    }

    #[test]
    fn atomic_write_creates_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested.txt");
        write_atomic(&path, "payload").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "payload");
    }

    #[test]
    fn top_level_comma_split_respects_braces() {
        assert_eq!(
            split_top_level_commas("{1,2},{1,3},plain"),
            vec!["{1,2}", "{1,3}", "plain"]
        );
    }
}
