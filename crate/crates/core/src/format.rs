//! Versioned JSON file formats for structures, models, reports and PG(3,q)
//! coordinate metadata.
//!
//! Output is canonical: object keys are sorted, index lists are sorted, and
//! each top-level key sits on its own line with a compact value. Serializing
//! the same value twice yields identical bytes.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::incidence::{IncidenceStructure, LineId, LineSet};
use crate::labeling::{GeometryModel, Seed};
use crate::models::Pg3Metadata;
use crate::report::{CheckReport, Outcome, Witness};

pub const STRUCTURE_FORMAT: &str = "linespace-v1";
pub const MODEL_FORMAT: &str = "linespace-model-v1";
pub const REPORT_FORMAT: &str = "linespace-report-v1";
pub const PG3_META_FORMAT: &str = "linespace-pg3-meta-v1";

#[derive(Deserialize)]
struct RawStructure {
    name: String,
    lines: Vec<String>,
    skew_pairs: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
struct RawSeed {
    pair: [usize; 2],
    class_of: usize,
}

#[derive(Deserialize)]
struct RawModel {
    #[serde(flatten)]
    structure: RawStructure,
    points: Vec<Vec<usize>>,
    planes: Vec<Vec<usize>>,
    seed: Option<RawSeed>,
}

/// A parsed input file: either a bare structure or a model.
#[derive(Clone, Debug)]
pub enum Document {
    Structure(IncidenceStructure),
    Model(GeometryModel),
}

impl Document {
    pub fn structure(&self) -> &IncidenceStructure {
        match self {
            Document::Structure(s) => s,
            Document::Model(m) => m.structure(),
        }
    }
}

fn parse_value(text: &str) -> Result<Value> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn format_of(v: &Value) -> Result<&str> {
    v.get("format")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing \"format\" key".into()))
}

fn build_structure(raw: RawStructure, max_lines: usize) -> Result<IncidenceStructure> {
    let n = raw.lines.len();
    if n > max_lines {
        return Err(Error::Capacity {
            line_count: n,
            max: max_lines,
        });
    }
    let pairs: Vec<(usize, usize)> = raw.skew_pairs.iter().map(|&[i, j]| (i, j)).collect();
    IncidenceStructure::from_skew_pairs_with_limit(raw.name, raw.lines, &pairs, max_lines)
}

fn element_sets(s: &IncidenceStructure, raw: &[Vec<usize>]) -> Result<Vec<LineSet>> {
    raw.iter()
        .map(|idx| {
            let set = LineSet::from_indices(idx.iter().copied());
            s.check_set(&set)?;
            Ok(set)
        })
        .collect()
}

/// Parses either a structure or a model file.
pub fn parse_document(text: &str, max_lines: usize) -> Result<Document> {
    let v = parse_value(text)?;
    match format_of(&v)? {
        STRUCTURE_FORMAT => {
            let raw: RawStructure =
                serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Document::Structure(build_structure(raw, max_lines)?))
        }
        MODEL_FORMAT => {
            let raw: RawModel =
                serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            let s = build_structure(raw.structure, max_lines)?;
            let points = element_sets(&s, &raw.points)?;
            let planes = element_sets(&s, &raw.planes)?;
            let seed = match raw.seed {
                None => None,
                Some(RawSeed {
                    pair: [i, j],
                    class_of,
                }) => {
                    let (a, b) = (LineId(i), LineId(j));
                    s.check_line(a)?;
                    s.check_line(b)?;
                    if class_of > 1 {
                        return Err(Error::Parse(format!(
                            "seed class_of must be 0 or 1, got {class_of}"
                        )));
                    }
                    Some(Seed {
                        pair: (a, b),
                        class_of,
                    })
                }
            };
            Ok(Document::Model(GeometryModel::from_parts(
                s, points, planes, seed,
            )))
        }
        other => Err(Error::Parse(format!("unknown format {other:?}"))),
    }
}

/// Parses a structure file; a model file is rejected.
pub fn parse_structure(text: &str, max_lines: usize) -> Result<IncidenceStructure> {
    match parse_document(text, max_lines)? {
        Document::Structure(s) => Ok(s),
        Document::Model(_) => Err(Error::Parse(format!("expected a {STRUCTURE_FORMAT} file"))),
    }
}

/// Parses a model file without verifying its labeling.
pub fn parse_model(text: &str, max_lines: usize) -> Result<GeometryModel> {
    match parse_document(text, max_lines)? {
        Document::Model(m) => Ok(m),
        Document::Structure(_) => Err(Error::Parse(format!("expected a {MODEL_FORMAT} file"))),
    }
}

/// Top-level keys one per line, values compact.
fn canonical(map: Map<String, Value>) -> String {
    let mut out = String::from("{\n");
    let n = map.len();
    for (i, (k, v)) in map.into_iter().enumerate() {
        out.push_str("  ");
        out.push_str(&Value::String(k).to_string());
        out.push_str(": ");
        out.push_str(&v.to_string());
        if i + 1 < n {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

fn structure_map(s: &IncidenceStructure, format: &str) -> Map<String, Value> {
    let pairs: Vec<[usize; 2]> = s.skew_pairs().map(|(a, b)| [a.0, b.0]).collect();
    let mut map = Map::new();
    map.insert("format".into(), json!(format));
    map.insert("name".into(), json!(s.name()));
    map.insert("lines".into(), json!(s.labels()));
    map.insert("skew_pairs".into(), json!(pairs));
    map
}

pub fn serialize_structure(s: &IncidenceStructure) -> String {
    canonical(structure_map(s, STRUCTURE_FORMAT))
}

pub fn serialize_model(m: &GeometryModel) -> String {
    let mut map = structure_map(m.structure(), MODEL_FORMAT);
    let sets = |es: &[LineSet]| json!(es.iter().map(LineSet::indices).collect::<Vec<_>>());
    map.insert("points".into(), sets(m.points()));
    map.insert("planes".into(), sets(m.planes()));
    let seed = m.seed().map_or(
        Value::Null,
        |sd| json!({"pair": [sd.pair.0 .0, sd.pair.1 .0], "class_of": sd.class_of}),
    );
    map.insert("seed".into(), seed);
    canonical(map)
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::DependencyUnmet => "dependency_unmet",
    }
}

fn witness_value(s: &IncidenceStructure, w: &Witness) -> Value {
    let lines: Map<String, Value> = w
        .lines
        .iter()
        .map(|(n, l)| (n.clone(), json!(s.label(*l))))
        .collect();
    let sets: Map<String, Value> = w
        .sets
        .iter()
        .map(|(n, set)| {
            (
                n.clone(),
                json!(set.iter().map(|l| s.label(l)).collect::<Vec<_>>()),
            )
        })
        .collect();
    json!({
        "tag": w.tag,
        "description": w.description,
        "lines": lines,
        "sets": sets,
    })
}

/// One report entry; lines are referenced by label.
pub fn report_value(s: &IncidenceStructure, r: &CheckReport) -> Value {
    let mut stats: Map<String, Value> = r
        .stats
        .counts
        .iter()
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect();
    stats.insert("cases_examined".into(), json!(r.stats.cases_examined));
    if let Some(seed) = r.stats.sampling_seed {
        stats.insert("sampling_seed".into(), json!(seed));
    }
    let mut map = Map::new();
    map.insert("check_name".into(), json!(r.check_name));
    map.insert("passed".into(), json!(r.passed()));
    map.insert("outcome".into(), json!(outcome_name(r.outcome)));
    map.insert("stats".into(), Value::Object(stats));
    if let Some(w) = &r.counterexample {
        map.insert("counterexample".into(), witness_value(s, w));
    }
    if !r.witness_sample.is_empty() {
        let sample: Vec<Value> = r
            .witness_sample
            .iter()
            .map(|w| witness_value(s, w))
            .collect();
        map.insert("witness_sample".into(), json!(sample));
    }
    Value::Object(map)
}

pub fn serialize_reports(s: &IncidenceStructure, reports: &[CheckReport]) -> String {
    let mut map = Map::new();
    map.insert("format".into(), json!(REPORT_FORMAT));
    map.insert("structure".into(), json!(s.name()));
    map.insert(
        "reports".into(),
        Value::Array(reports.iter().map(|r| report_value(s, r)).collect()),
    );
    canonical(map)
}

/// Coordinate matrices of a generated PG(3,q), entries as integers mod q.
pub fn serialize_pg3_metadata(meta: &Pg3Metadata) -> String {
    let mut map = Map::new();
    map.insert("format".into(), json!(PG3_META_FORMAT));
    map.insert("q".into(), json!(meta.q));
    map.insert("lines".into(), json!(meta.line_reps));
    map.insert("points".into(), json!(meta.point_reps));
    map.insert("planes".into(), json!(meta.plane_reps));
    canonical(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::DEFAULT_MAX_LINES;
    use crate::labeling::{coordinate_labels, dualize};
    use crate::models::{gen_pg3, gen_tetrahedron};

    #[test]
    fn structure_round_trip() {
        let t = gen_tetrahedron();
        let text = serialize_structure(&t);
        let back = parse_structure(&text, DEFAULT_MAX_LINES).unwrap();
        assert_eq!(back, t);
        assert_eq!(serialize_structure(&back), text);
        assert!(text.contains("\"skew_pairs\": [[0,3],[1,4],[2,5]]"));
    }

    #[test]
    fn model_round_trip_and_dual() {
        let t = gen_tetrahedron();
        let m = coordinate_labels(&t, None).unwrap();
        let text = serialize_model(&m);
        let back = parse_model(&text, DEFAULT_MAX_LINES).unwrap();
        back.verify().unwrap();
        assert_eq!(serialize_model(&back), text);
        let twice = dualize(&dualize(&back));
        assert_eq!(serialize_model(&twice), text);
    }

    #[test]
    fn lenient_pairs_and_rejections() {
        let ok = r#"{"format":"linespace-v1","name":"x","lines":["p","q","r"],
                    "skew_pairs":[[0,1],[1,0],[0,1]]}"#;
        let s = parse_structure(ok, DEFAULT_MAX_LINES).unwrap();
        assert_eq!(s.skew_pairs().count(), 1);

        let self_skew = ok.replace("[1,0]", "[2,2]");
        assert!(matches!(
            parse_structure(&self_skew, DEFAULT_MAX_LINES),
            Err(Error::SelfSkew(2))
        ));
        let out_of_range = ok.replace("[1,0]", "[0,7]");
        assert!(matches!(
            parse_structure(&out_of_range, DEFAULT_MAX_LINES),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_structure(ok, 2),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(parse_structure("", 10), Err(Error::Parse(_))));
        assert!(matches!(
            parse_structure("{\"format\":\"v0\"}", 10),
            Err(Error::Parse(_))
        ));
        let dup = ok.replace("\"r\"", "\"q\"");
        assert!(matches!(
            parse_structure(&dup, DEFAULT_MAX_LINES),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn metadata_lists_every_coordinate() {
        let (_, meta) = gen_pg3(2).unwrap();
        let v: Value = serde_json::from_str(&serialize_pg3_metadata(&meta)).unwrap();
        assert_eq!(v["lines"].as_array().unwrap().len(), 35);
        assert_eq!(v["points"].as_array().unwrap().len(), 15);
        assert_eq!(v["planes"][0].as_array().unwrap().len(), 3);
    }
}
