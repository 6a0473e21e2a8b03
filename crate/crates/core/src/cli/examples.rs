//! Bundled example documents.
//!
//! Names take optional parameters after a colon, for example
//! `ex3.6:m=1,n=2` or `ex4.1:field=GF(2)`.

use std::collections::BTreeMap;

use super::document::{ArrowEntry, CbvfDocument, HEntry, PresentationDocument, FORMAT_VERSION};
use super::CliError;

pub const PRESENTATIONS: [&str; 4] = ["ex3.5", "ex3.6", "ex4.1", "ex4.2"];
pub const CBVF: [&str; 1] = ["ex4.1-cbvf"];

struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    fn parse(name: &str, text: Option<&str>, allowed: &[&str]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for item in text.unwrap_or("").split(',').filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| CliError::UnknownExample(format!("{name}: parameter `{item}` is not key=value")))?;
            if !allowed.contains(&k) {
                return Err(CliError::UnknownExample(format!(
                    "{name}: unknown parameter `{k}` (allowed: {})",
                    allowed.join(", ")
                )));
            }
            values.insert(k.to_string(), v.to_string());
        }
        Ok(Params { values })
    }

    fn positive(&self, name: &str, key: &str, default: u32) -> Result<u32, CliError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => match v.parse::<u32>() {
                Ok(x) if x > 0 => Ok(x),
                _ => Err(CliError::UnknownExample(format!("{name}: `{key}` must be a positive integer, got `{v}`"))),
            },
        }
    }

    fn field(&self) -> String {
        self.values.get("field").cloned().unwrap_or_else(|| "rationals".into())
    }
}

fn arrows(list: &[(&str, &str, &str)]) -> Vec<ArrowEntry> {
    list.iter()
        .map(|(id, s, t)| ArrowEntry { id: id.to_string(), source: s.to_string(), target: t.to_string() })
        .collect()
}

fn map<V: Clone>(pairs: &[(&str, V)]) -> BTreeMap<String, V> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn scalars(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

const LOOPS: [(&str, &str, &str); 2] = [("alpha", "1", "1"), ("beta", "1", "1")];

const TRIANGLE: [(&str, &str, &str); 6] = [
    ("alpha", "1", "2"),
    ("beta", "2", "3"),
    ("gamma", "3", "1"),
    ("xi", "1", "1"),
    ("eta", "2", "2"),
    ("mu", "3", "3"),
];

fn triangle_vertices() -> Vec<String> {
    vec!["1".into(), "2".into(), "3".into()]
}

/// Resolves a bundled presentation by name.
pub fn builtin_presentation(spec: &str) -> Result<PresentationDocument, CliError> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    let doc = match name {
        // One vertex, f fixes both loops, one g-orbit (alpha beta). The
        // deformation is placed on the socle: r = m, d = (2, 3).
        "ex3.5" => {
            let p = Params::parse(name, params, &["m", "field"])?;
            let m = p.positive(name, "m", 2)?;
            PresentationDocument {
                format_version: FORMAT_VERSION,
                field: p.field(),
                vertices: vec!["1".into()],
                arrows: arrows(&LOOPS),
                f: map(&[("alpha", "alpha".to_string()), ("beta", "beta".to_string())]),
                m: map(&[("alpha", m)]),
                r: map(&[("alpha", m), ("beta", m)]),
                c: scalars(&[("alpha", "1"), ("beta", "1")]),
                d: scalars(&[("alpha", "2"), ("beta", "3")]),
            }
        }
        // f swaps the loops; weights m on (alpha) and n on (beta).
        "ex3.6" => {
            let p = Params::parse(name, params, &["m", "n", "field"])?;
            let (m, n) = (p.positive(name, "m", 1)?, p.positive(name, "n", 2)?);
            PresentationDocument {
                format_version: FORMAT_VERSION,
                field: p.field(),
                vertices: vec!["1".into()],
                arrows: arrows(&LOOPS),
                f: map(&[("alpha", "beta".to_string()), ("beta", "alpha".to_string())]),
                m: map(&[("alpha", m), ("beta", n)]),
                r: map(&[("alpha", 1), ("beta", 1)]),
                c: scalars(&[("alpha", "1"), ("beta", "1")]),
                d: scalars(&[("alpha", "0"), ("beta", "0")]),
            }
        }
        "ex4.1" => {
            let p = Params::parse(name, params, &["field"])?;
            PresentationDocument {
                format_version: FORMAT_VERSION,
                field: p.field(),
                vertices: triangle_vertices(),
                arrows: arrows(&TRIANGLE),
                f: map(&[
                    ("alpha", "beta".to_string()),
                    ("beta", "gamma".to_string()),
                    ("gamma", "alpha".to_string()),
                    ("xi", "xi".to_string()),
                    ("eta", "eta".to_string()),
                    ("mu", "mu".to_string()),
                ]),
                m: map(&[("alpha", 2)]),
                r: map(&[("xi", 1), ("eta", 2), ("mu", 2), ("alpha", 1), ("beta", 2), ("gamma", 1)]),
                c: scalars(&[("xi", "1"), ("eta", "1"), ("mu", "1"), ("alpha", "-1"), ("beta", "-1"), ("gamma", "1")]),
                d: scalars(&[("xi", "1"), ("eta", "0"), ("mu", "0"), ("alpha", "-1"), ("beta", "1"), ("gamma", "-1")]),
            }
        }
        "ex4.2" => {
            let p = Params::parse(name, params, &["field"])?;
            PresentationDocument {
                format_version: FORMAT_VERSION,
                field: p.field(),
                vertices: triangle_vertices(),
                arrows: arrows(&TRIANGLE),
                f: map(&[
                    ("alpha", "beta".to_string()),
                    ("beta", "mu".to_string()),
                    ("mu", "gamma".to_string()),
                    ("gamma", "xi".to_string()),
                    ("xi", "alpha".to_string()),
                    ("eta", "eta".to_string()),
                ]),
                m: map(&[("alpha", 3), ("mu", 2), ("xi", 1)]),
                r: map(&[("gamma", 1), ("beta", 2), ("eta", 3)]),
                c: scalars(&[("xi", "1"), ("eta", "1"), ("mu", "1"), ("alpha", "-1"), ("beta", "-1"), ("gamma", "1")]),
                d: scalars(&[("beta", "1"), ("eta", "7"), ("gamma", "0")]),
            }
        }
        _ => {
            return Err(CliError::UnknownExample(format!(
                "unknown example `{name}` (available: {}, {})",
                PRESENTATIONS.join(", "),
                CBVF.join(", ")
            )))
        }
    };
    Ok(doc)
}

/// The bisected form of the 4.1 example: bad pairs `αβ, βγ, γα, ξξ, ηη, μμ`.
pub fn builtin_cbvf(spec: &str) -> Result<CbvfDocument, CliError> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    if name != "ex4.1-cbvf" {
        return Err(CliError::UnknownExample(format!("unknown example `{name}` (available: {})", CBVF.join(", "))));
    }
    let p = Params::parse(name, params, &["field"])?;
    let entry = |a: &str, b: &str, value: Option<(&str, &str)>| HEntry {
        pair: [a.to_string(), b.to_string()],
        coefficient: value.map(|(c, _)| c.to_string()),
        word: value.map(|(_, w)| w.split_whitespace().map(String::from).collect()),
    };
    Ok(CbvfDocument {
        format_version: FORMAT_VERSION,
        field: p.field(),
        vertices: triangle_vertices(),
        arrows: arrows(&TRIANGLE),
        sigma: map(&[("alpha", 1), ("beta", 1), ("gamma", 1), ("xi", -1), ("eta", -1), ("mu", -1)]),
        tau: map(&[("alpha", -1), ("beta", -1), ("gamma", -1), ("xi", 1), ("eta", 1), ("mu", 1)]),
        h: vec![
            entry("alpha", "beta", Some(("-1", "eta beta mu"))),
            entry("beta", "gamma", Some(("1", "mu gamma xi alpha eta beta mu gamma xi"))),
            entry("gamma", "alpha", Some(("-1", "xi alpha eta"))),
            entry("xi", "xi", Some(("1", "alpha eta beta mu gamma"))),
            entry("eta", "eta", None),
            entry("mu", "mu", None),
        ],
        multiplicities: map(&[("alpha", 2)]),
        socle_scalars: BTreeMap::from([
            ("1".to_string(), scalars(&[("alpha", "-1"), ("xi", "1")])),
            ("2".to_string(), scalars(&[("beta", "-1"), ("eta", "1")])),
            ("3".to_string(), scalars(&[("gamma", "1"), ("mu", "1")])),
        ]),
    })
}

pub fn is_builtin(spec: &str) -> bool {
    let name = spec.split_once(':').map_or(spec, |(n, _)| n);
    PRESENTATIONS.contains(&name) || CBVF.contains(&name)
}
