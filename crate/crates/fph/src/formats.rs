//! Line-oriented file formats shared by the pipeline stages.
//!
//! Every file opens with `#` comment lines: the producing command and its
//! configuration as JSON. Readers skip comments except the few `# key value`
//! lines they need (`# mining` in pattern files, `# graphs` in diagram files).

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use fph_core::{
    DiagramPoint, FeatureVector, FilteredComplex, LabeledGraph, MiningConfig, Pattern, PatternSet, PersistenceDiagram,
    RobustnessReport, Value,
};
use serde::Serialize;

use crate::error::DataError;

/// The comment block that starts every output file.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub command: String,
    pub config: serde_json::Value,
}

impl Header {
    pub fn new(command: &str, config: &impl Serialize) -> Self {
        Self { command: command.to_string(), config: serde_json::to_value(config).expect("configs serialize") }
    }

    pub fn write(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "# fph {} {}", env!("CARGO_PKG_VERSION"), self.command)?;
        writeln!(w, "# config {}", self.config)
    }
}

/// Creates `path` and fills it through `body`.
pub fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<fs::File>) -> io::Result<()>) -> Result<(), DataError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| DataError::io(parent, e))?;
    }
    let f = fs::File::create(path).map_err(|e| DataError::io(path, e))?;
    let mut w = BufWriter::new(f);
    body(&mut w).and_then(|_| w.flush()).map_err(|e| DataError::io(path, e))
}

fn read(path: &Path) -> Result<String, DataError> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => DataError::new(path, "missing file"),
        _ => DataError::io(path, e),
    })
}

/// `(line_number, text)` of non-comment, non-blank lines.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn meta<'a>(text: &'a str, key: &str) -> Option<(usize, &'a str)> {
    let prefix = format!("# {key} ");
    text.lines().enumerate().find_map(|(i, l)| l.trim_end_matches('\r').strip_prefix(&prefix).map(|v| (i + 1, v)))
}

fn parse<T: FromStr>(path: &Path, line: usize, what: &str, field: &str) -> Result<T, DataError> {
    field.trim().parse().map_err(|_| DataError::at(path, line, format!("invalid {what} `{field}`")))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

// Patterns: support, filtration value, canonical code, vertex labels, edges.

pub fn write_patterns(w: &mut impl Write, header: &Header, set: &PatternSet) -> io::Result<()> {
    header.write(w)?;
    writeln!(w, "# mining {}", serde_json::to_string(set.config()).expect("configs serialize"))?;
    writeln!(w, "# support\tfiltration_value\tcanonical_code\tvertex_labels\tedges")?;
    for p in set.patterns() {
        let g = p.graph();
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}",
            p.mni_support(),
            p.filtration_value(),
            hex::encode(p.canonical_code()),
            join(g.labels(), ","),
            join(g.edges().map(|(u, v)| format!("{u}-{v}")), ","),
        )?;
    }
    Ok(())
}

pub fn read_patterns(path: &Path) -> Result<PatternSet, DataError> {
    let text = read(path)?;
    let (line, json) = meta(&text, "mining").ok_or_else(|| DataError::new(path, "no `# mining` header line"))?;
    let config: MiningConfig =
        serde_json::from_str(json).map_err(|e| DataError::at(path, line, format!("invalid mining config: {e}")))?;
    let mut patterns = Vec::new();
    for (line, row) in data_lines(&text) {
        let fields: Vec<&str> = row.split('\t').collect();
        let [support, value, code, labels, edges] = fields[..] else {
            return Err(DataError::at(path, line, format!("expected 5 tab-separated fields, found {}", fields.len())));
        };
        let support: u32 = parse(path, line, "support", support)?;
        let value: Value = parse(path, line, "filtration value", value)?;
        let labels: Vec<u32> = labels.split(',').map(|l| parse(path, line, "label", l)).collect::<Result<_, _>>()?;
        let edges: Vec<(u32, u32)> = edges
            .split(',')
            .map(|e| match e.split_once('-') {
                Some((u, v)) => Ok((parse(path, line, "vertex", u)?, parse(path, line, "vertex", v)?)),
                None => Err(DataError::at(path, line, format!("invalid edge `{e}`"))),
            })
            .collect::<Result<_, _>>()?;
        let graph = LabeledGraph::new(labels, edges).map_err(|e| DataError::at(path, line, e.to_string()))?;
        let pattern = Pattern::from_graph(&graph, support).map_err(|e| DataError::at(path, line, e.to_string()))?;
        if hex::encode(pattern.canonical_code()) != code {
            return Err(DataError::at(path, line, "canonical code does not match the pattern"));
        }
        if pattern.filtration_value() != value {
            return Err(DataError::at(path, line, format!("filtration value {value} is not 1/{support}")));
        }
        patterns.push(pattern);
    }
    PatternSet::from_patterns(patterns, config).map_err(|e| DataError::new(path, e.to_string()))
}

// Complex dump: one simplex per line in reduction order.

pub fn write_complex(w: &mut impl Write, header: &Header, complex: &FilteredComplex) -> io::Result<()> {
    header.write(w)?;
    for s in complex.simplices() {
        writeln!(w, "{}\t{}", s.value(), join(s.vertices(), ","))?;
    }
    Ok(())
}

// Diagrams: `graph_id,dim,birth,death`, death possibly `inf`.

pub fn write_diagrams(w: &mut impl Write, header: &Header, diagrams: &[PersistenceDiagram]) -> io::Result<()> {
    header.write(w)?;
    writeln!(w, "# graphs {}", diagrams.len())?;
    writeln!(w, "graph_id,dim,birth,death")?;
    for (g, d) in diagrams.iter().enumerate() {
        for p in d.points() {
            writeln!(w, "{g},{},{},{}", p.dim, p.birth, p.death)?;
        }
    }
    Ok(())
}

pub fn read_diagrams(path: &Path) -> Result<Vec<PersistenceDiagram>, DataError> {
    let text = read(path)?;
    let (line, count) = meta(&text, "graphs").ok_or_else(|| DataError::new(path, "no `# graphs` header line"))?;
    let count: usize = parse(path, line, "graph count", count)?;
    let mut points: Vec<Vec<DiagramPoint>> = vec![Vec::new(); count];
    for (line, row) in data_lines(&text).skip_while(|(_, r)| r.starts_with("graph_id")) {
        let fields: Vec<&str> = row.split(',').collect();
        let [g, dim, birth, death] = fields[..] else {
            return Err(DataError::at(path, line, format!("expected 4 fields, found {}", fields.len())));
        };
        let g: usize = parse(path, line, "graph id", g)?;
        let point = DiagramPoint {
            dim: parse(path, line, "dimension", dim)?,
            birth: parse(path, line, "birth", birth)?,
            death: parse(path, line, "death", death)?,
        };
        if point.birth.is_nan() || point.death.is_nan() || point.birth > point.death {
            return Err(DataError::at(path, line, "birth after death"));
        }
        points.get_mut(g).ok_or_else(|| DataError::at(path, line, format!("graph id {g} out of range")))?.push(point);
    }
    Ok(points.into_iter().map(PersistenceDiagram::new).collect())
}

// Features: `graph_id,class,f_0,...`.

/// A feature matrix as read back from disk.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureTable {
    pub graph_ids: Vec<usize>,
    pub classes: Vec<u32>,
    pub rows: Vec<Vec<f64>>,
}

pub fn write_features(w: &mut impl Write, header: &Header, features: &[FeatureVector], classes: &[u32]) -> io::Result<()> {
    header.write(w)?;
    let width = features.first().map_or(0, FeatureVector::len);
    if let Some(f) = features.first() {
        writeln!(w, "# layout dims={} block={} then total_persistence", join(&f.dims, ","), fph_core::features::BLOCK_NAMES.join(","))?;
    }
    writeln!(w, "graph_id,class{}", (0..width).map(|i| format!(",f_{i}")).collect::<String>())?;
    for (g, (f, class)) in features.iter().zip(classes).enumerate() {
        writeln!(w, "{g},{class}{}", f.values.iter().map(|x| format!(",{x}")).collect::<String>())?;
    }
    Ok(())
}

pub fn read_features(path: &Path) -> Result<FeatureTable, DataError> {
    let text = read(path)?;
    let mut table = FeatureTable { graph_ids: Vec::new(), classes: Vec::new(), rows: Vec::new() };
    let mut lines = data_lines(&text);
    let (line, head) = lines.next().ok_or_else(|| DataError::new(path, "no header row"))?;
    if !head.starts_with("graph_id,class") {
        return Err(DataError::at(path, line, "header must start with `graph_id,class`"));
    }
    let width = head.split(',').count() - 2;
    for (line, row) in lines {
        let mut fields = row.split(',');
        table.graph_ids.push(parse(path, line, "graph id", fields.next().unwrap_or(""))?);
        table.classes.push(parse(path, line, "class", fields.next().unwrap_or(""))?);
        let values: Vec<f64> = fields.map(|f| parse(path, line, "feature", f)).collect::<Result<_, _>>()?;
        if values.len() != width {
            return Err(DataError::at(path, line, format!("{} features, header has {width}", values.len())));
        }
        table.rows.push(values);
    }
    Ok(table)
}

// Robustness: one row per (dimension, mode, ratio).

pub fn write_robustness(
    w: &mut impl Write,
    header: &Header,
    dataset: &str,
    subset_size: usize,
    report: &RobustnessReport,
) -> io::Result<()> {
    header.write(w)?;
    writeln!(w, "dataset,dimension,mode,ratio,mean,std,graph_count,skipped,seed,subset_size")?;
    for c in &report.cells {
        writeln!(
            w,
            "{dataset},{},{},{},{},{},{},{},{},{subset_size}",
            c.dimension,
            c.mode.as_str(),
            c.ratio,
            c.mean,
            c.std,
            c.graph_count,
            c.skipped,
            c.seed
        )?;
    }
    Ok(())
}

/// JSON documents carry the header in a `header` field.
pub fn write_json(w: &mut impl Write, header: &Header, body: &impl Serialize) -> io::Result<()> {
    let mut doc = serde_json::Map::new();
    doc.insert("header".into(), serde_json::to_value(header).expect("headers serialize"));
    match serde_json::to_value(body).expect("reports serialize") {
        serde_json::Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("body".into(), other);
        }
    }
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}
