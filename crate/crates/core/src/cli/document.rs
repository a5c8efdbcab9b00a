use std::path::Path;

use indexmap::IndexMap;
use serde::Deserialize;

use crate::geometry::{make_disk, make_ellipse, EllipseSpec, PlanarSet, Point, Polygon};

use super::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryDocument {
    pub schema_version: u32,
    pub sets: IndexMap<String, SetSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SetSpec {
    Polygon(Vec<[f64; 2]>),
    Disk(DiskSpec),
    Ellipse(EllipseDoc),
    Union(Vec<SetSpec>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskSpec {
    #[serde(default)]
    pub center: [f64; 2],
    pub radius: f64,
    #[serde(default = "default_vertices")]
    pub n: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseDoc {
    #[serde(default)]
    pub center: [f64; 2],
    pub a: f64,
    pub e: f64,
    #[serde(default = "default_vertices")]
    pub n: usize,
}

fn default_vertices() -> usize {
    256
}

fn point([x, y]: [f64; 2]) -> Point {
    Point::new(x, y)
}

impl SetSpec {
    fn polygons(&self, out: &mut Vec<Polygon>) -> Result<(), String> {
        let set = match self {
            SetSpec::Polygon(v) => {
                out.push(Polygon::new(v.iter().copied().map(point).collect()).map_err(|e| e.to_string())?);
                return Ok(());
            }
            SetSpec::Disk(d) => make_disk(d.radius, point(d.center), d.n),
            SetSpec::Ellipse(d) => {
                EllipseSpec::new(d.a, d.e).and_then(|spec| make_ellipse(spec, point(d.center), d.n))
            }
            SetSpec::Union(parts) => {
                for p in parts {
                    p.polygons(out)?;
                }
                return Ok(());
            }
        }
        .map_err(|e| e.to_string())?;
        out.extend(set.components().iter().cloned());
        Ok(())
    }

    pub fn to_planar_set(&self) -> Result<PlanarSet, String> {
        let mut polygons = Vec::new();
        self.polygons(&mut polygons)?;
        PlanarSet::new(polygons).map_err(|e| e.to_string())
    }
}

/// Parses a geometry document and builds every named set, in document order.
pub fn parse_document(text: &str) -> Result<Vec<(String, PlanarSet)>, CliError> {
    let doc: GeometryDocument = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(CliError::Input(format!(
            "unsupported schema_version {} (expected {SCHEMA_VERSION})",
            doc.schema_version
        )));
    }
    if doc.sets.is_empty() {
        return Err(CliError::Input("document contains no sets".into()));
    }
    doc.sets
        .iter()
        .map(|(name, spec)| {
            spec.to_planar_set()
                .map(|s| (name.clone(), s))
                .map_err(|e| CliError::Input(format!("set \"{name}\": {e}")))
        })
        .collect()
}

pub fn read_document(path: &Path) -> Result<Vec<(String, PlanarSet)>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_kinds() {
        let text = r#"{
            "schema_version": 1,
            "sets": {
                "square": {"polygon": [[0,0],[1,0],[1,1],[0,1]]},
                "disk": {"disk": {"center": [5, 0], "radius": 1, "n": 64}},
                "ellipse": {"ellipse": {"a": 2, "e": 0.5}},
                "pair": {"union": [
                    {"disk": {"center": [-3, 0], "radius": 1}},
                    {"polygon": [[1,0],[2,0],[2,1]]}
                ]}
            }
        }"#;
        let sets = parse_document(text).unwrap();
        let names: Vec<&str> = sets.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["square", "disk", "ellipse", "pair"]);
        assert!((sets[0].1.area() - 1.0).abs() < 1e-15);
        assert_eq!(sets[1].1.vertices().count(), 64);
        assert_eq!(sets[3].1.component_count(), 2);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            r#"{"schema_version": 1, "sets": {}}"#,
            r#"{"schema_version": 2, "sets": {"a": {"disk": {"radius": 1}}}}"#,
            r#"{"schema_version": 1, "sets": {"a": {"disk": {"radius": 1, "colour": 3}}}}"#,
            r#"{"schema_version": 1, "sets": {"a": {"blob": {}}}}"#,
            r#"{"schema_version": 1, "extra": 0, "sets": {"a": {"disk": {"radius": 1}}}}"#,
            r#"{"schema_version": 1, "sets": {"a": {"disk": {"radius": -1}}}}"#,
            r#"{"schema_version": 1, "sets": {"a": {"union": [{"disk": {"radius": 1}}, {"disk": {"radius": 1}}]}}}"#,
            r#"{"schema_version": 1, "sets": {"a": {"disk": {"radius": 1}, "polygon": []}}}"#,
            r#"{"schema_version": 1, "sets": "#,
        ];
        for c in cases {
            assert!(matches!(parse_document(c), Err(CliError::Input(_))), "{c}");
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let Err(CliError::Input(m)) = parse_document("{\n  \"schema_version\": 1,\n  \"sets\": [,]\n}") else {
            panic!("expected input error");
        };
        assert!(m.contains("line 3"), "{m}");
    }
}
