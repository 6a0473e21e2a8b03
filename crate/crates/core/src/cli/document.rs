//! JSON documents for presentations and bisected-quiver data.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cbvf::{validate_bisected_quiver, BisectedQuiver, HFunction, HValue, SocleSpec};
use crate::field::{FieldSpec, Scalar};
use crate::presentation::{validate_presentation, Presentation, PresentationData};
use crate::quiver::{validate_biserial_quiver, Quiver};

use super::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PresentationDocument {
    pub format_version: u32,
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    pub f: BTreeMap<String, String>,
    /// Keyed by any arrow of the orbit.
    pub m: BTreeMap<String, u32>,
    pub r: BTreeMap<String, u32>,
    pub c: BTreeMap<String, String>,
    pub d: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HEntry {
    pub pair: [String; 2],
    /// Absent together with `word` for a zero value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CbvfDocument {
    pub format_version: u32,
    pub field: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    pub sigma: BTreeMap<String, i64>,
    pub tau: BTreeMap<String, i64>,
    pub h: Vec<HEntry>,
    pub multiplicities: BTreeMap<String, u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub socle_scalars: BTreeMap<String, BTreeMap<String, String>>,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn check_version(v: u32) -> Result<(), CliError> {
    if v != FORMAT_VERSION {
        return Err(schema(format!("unsupported format-version {v} (expected {FORMAT_VERSION})")));
    }
    Ok(())
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn build_quiver(vertices: &[String], arrows: &[ArrowEntry]) -> Result<Quiver, CliError> {
    Quiver::new(vertices.iter().cloned(), arrows.iter().map(|a| (a.id.clone(), a.source.clone(), a.target.clone())))
        .map_err(|e| schema(e.to_string()))
}

fn check_arrow_keys<'a>(q: &Quiver, map: &str, keys: impl IntoIterator<Item = &'a String>) -> Result<(), CliError> {
    for k in keys {
        if q.arrow(k).is_none() {
            return Err(schema(format!("{map}: dangling reference to arrow `{k}`")));
        }
    }
    Ok(())
}

fn parse_field(text: &str) -> Result<FieldSpec, CliError> {
    FieldSpec::from_str(text).map_err(|e| schema(format!("field: {e}")))
}

fn parse_scalars(
    map: &str,
    values: &BTreeMap<String, String>,
    field: FieldSpec,
) -> Result<BTreeMap<String, Scalar>, CliError> {
    values
        .iter()
        .map(|(k, v)| {
            Scalar::parse(v, field)
                .map(|s| (k.clone(), s))
                .map_err(|e| CliError::Parse(format!("{map}[{k}] = \"{v}\": {e}")))
        })
        .collect()
}

impl PresentationDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = parse_json(text)?;
        doc.check_schema()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Version, ids and references; nothing algebraic.
    pub fn check_schema(&self) -> Result<(), CliError> {
        check_version(self.format_version)?;
        parse_field(&self.field)?;
        let q = build_quiver(&self.vertices, &self.arrows)?;
        check_arrow_keys(&q, "f", self.f.keys().chain(self.f.values()))?;
        check_arrow_keys(&q, "m", self.m.keys())?;
        check_arrow_keys(&q, "r", self.r.keys())?;
        check_arrow_keys(&q, "c", self.c.keys())?;
        check_arrow_keys(&q, "d", self.d.keys())
    }

    /// Structural check, then every algebraic condition. Algebraic failures
    /// come back as `CliError::Validation`.
    pub fn to_presentation(&self) -> Result<Presentation, CliError> {
        self.check_schema()?;
        let field = parse_field(&self.field)?;
        let quiver = build_quiver(&self.vertices, &self.arrows)?;
        let c = parse_scalars("c", &self.c, field)?;
        let d = parse_scalars("d", &self.d, field)?;
        let bq = validate_biserial_quiver(quiver, &self.f).map_err(|e| CliError::validation(e.iter()))?;
        validate_presentation(PresentationData { bq, field, m: self.m.clone(), r: self.r.clone(), c, d })
            .map_err(|e| CliError::validation(e.iter()))
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let data = p.to_data();
        let q = data.bq.quiver();
        let show = |m: BTreeMap<String, Scalar>| m.into_iter().map(|(k, v)| (k, v.to_string())).collect();
        PresentationDocument {
            format_version: FORMAT_VERSION,
            field: data.field.to_string(),
            vertices: q.vertices().map(|v| q.vertex_id(v).to_string()).collect(),
            arrows: q
                .arrows()
                .map(|a| ArrowEntry {
                    id: q.arrow_id(a).to_string(),
                    source: q.vertex_id(q.source(a)).to_string(),
                    target: q.vertex_id(q.target(a)).to_string(),
                })
                .collect(),
            f: data.bq.f_map(),
            m: data.m,
            r: data.r,
            c: show(data.c),
            d: show(data.d),
        }
    }
}

/// Parsed bisected data, ready for extraction.
pub struct CbvfInput {
    pub field: FieldSpec,
    pub bisected: BisectedQuiver,
    pub h: HFunction,
    pub socle: SocleSpec,
}

impl CbvfDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Self = parse_json(text)?;
        doc.check_schema()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn check_schema(&self) -> Result<(), CliError> {
        check_version(self.format_version)?;
        parse_field(&self.field)?;
        let q = build_quiver(&self.vertices, &self.arrows)?;
        check_arrow_keys(&q, "sigma", self.sigma.keys())?;
        check_arrow_keys(&q, "tau", self.tau.keys())?;
        check_arrow_keys(&q, "multiplicities", self.multiplicities.keys())?;
        let mut seen = BTreeSet::new();
        for e in &self.h {
            check_arrow_keys(&q, "h", e.pair.iter().chain(e.word.iter().flatten()))?;
            if !seen.insert(&e.pair) {
                return Err(schema(format!("h: duplicate entry for `{} {}`", e.pair[0], e.pair[1])));
            }
            if e.coefficient.is_some() != e.word.is_some() {
                return Err(schema(format!(
                    "h: entry `{} {}` needs both coefficient and word, or neither",
                    e.pair[0], e.pair[1]
                )));
            }
        }
        for (v, scalars) in &self.socle_scalars {
            if q.vertex(v).is_none() {
                return Err(schema(format!("socle-scalars: dangling reference to vertex `{v}`")));
            }
            check_arrow_keys(&q, "socle-scalars", scalars.keys())?;
        }
        Ok(())
    }

    pub fn to_input(&self) -> Result<CbvfInput, CliError> {
        self.check_schema()?;
        let field = parse_field(&self.field)?;
        let quiver = build_quiver(&self.vertices, &self.arrows)?;
        let bisected =
            validate_bisected_quiver(quiver, &self.sigma, &self.tau).map_err(|e| CliError::validation(e.iter()))?;
        let q = bisected.quiver();
        let arrow = |s: &String| q.arrow(s).expect("schema checked");
        let mut h = HFunction::new();
        for e in &self.h {
            let value = match (&e.coefficient, &e.word) {
                (Some(c), Some(w)) => HValue::Word {
                    coefficient: Scalar::parse(c, field)
                        .map_err(|err| CliError::Parse(format!("h[{} {}]: {err}", e.pair[0], e.pair[1])))?,
                    word: w.iter().map(arrow).collect(),
                },
                _ => HValue::Zero,
            };
            h.insert((arrow(&e.pair[0]), arrow(&e.pair[1])), value);
        }
        let scalars = self
            .socle_scalars
            .iter()
            .map(|(v, m)| Ok((v.clone(), parse_scalars("socle-scalars", m, field)?)))
            .collect::<Result<_, CliError>>()?;
        let socle = SocleSpec { multiplicities: self.multiplicities.clone(), scalars };
        Ok(CbvfInput { field, bisected, h, socle })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::examples::{builtin_cbvf, builtin_presentation};

    #[test]
    fn canonical_documents_round_trip() {
        for name in ["ex3.5", "ex3.6:m=1,n=2", "ex4.1", "ex4.2"] {
            let doc = builtin_presentation(name).unwrap();
            let canonical = PresentationDocument::from_presentation(&doc.to_presentation().unwrap());
            let back = PresentationDocument::parse(&canonical.to_json()).unwrap();
            assert_eq!(back, canonical, "{name}");
        }
        let cbvf = builtin_cbvf("ex4.1-cbvf").unwrap();
        assert_eq!(CbvfDocument::parse(&cbvf.to_json()).unwrap(), cbvf);
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut value: serde_json::Value =
            serde_json::from_str(&builtin_presentation("ex4.1").unwrap().to_json()).unwrap();
        value["colour"] = "blue".into();
        let err = PresentationDocument::parse(&value.to_string()).unwrap_err();
        assert!(matches!(err, CliError::Parse(_)), "{err:?}");
    }

    #[test]
    fn dangling_reference_in_f() {
        let mut doc = builtin_presentation("ex4.1").unwrap();
        doc.f.insert("alpha".into(), "omega".into());
        let err = PresentationDocument::parse(&doc.to_json()).unwrap_err();
        assert_eq!(err, CliError::Schema("f: dangling reference to arrow `omega`".into()));
    }

    #[test]
    fn duplicate_arrow_id() {
        let mut doc = builtin_presentation("ex4.1").unwrap();
        doc.arrows.push(doc.arrows[0].clone());
        assert!(matches!(doc.check_schema(), Err(CliError::Schema(_))));
    }

    #[test]
    fn parse_error_has_position() {
        let err = PresentationDocument::parse("{\n  \"format-version\": 1,\n  oops\n}").unwrap_err();
        let CliError::Parse(msg) = err else { panic!("expected parse error") };
        assert!(msg.starts_with("line 3, column 3"), "{msg}");
    }
}
