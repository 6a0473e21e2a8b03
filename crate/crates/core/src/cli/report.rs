//! Report structures. Each one renders as plain text and serializes as the
//! `--json` mirror.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{check_symmetric, weak_symmetry_report, AlgebraTable, Obstruction, OracleReport, SymmetryVerdict};
use crate::cbvf::RoundTripReport;
use crate::presentation::Presentation;
use crate::quiver::Quiver;

use super::CliError;

/// One line per arrow whose deformation does not reach the socle.
pub fn deformation_warnings(p: &Presentation) -> Vec<String> {
    let q = p.quiver();
    p.sub_socle_deformations()
        .into_iter()
        .map(|a| {
            let id = q.arrow_id(a);
            format!(
                "d_{id} = {} is nonzero but D_{id} has length {} while B_{id} has length {}; \
                 the basis count Σ m n² is not certified here (compare with `oracle`)",
                p.deformation(a),
                p.d_len(a).unwrap_or(0),
                p.cycle_len(a)
            )
        })
        .collect()
}

fn write_warnings(f: &mut fmt::Formatter<'_>, warnings: &[String]) -> fmt::Result {
    for w in warnings {
        writeln!(f, "warning: {w}")?;
    }
    Ok(())
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    if items.is_empty() {
        return "none".into();
    }
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub field: String,
    pub vertices: usize,
    pub arrows: usize,
    pub dimension: usize,
    pub warnings: Vec<String>,
}

impl ValidateReport {
    pub fn new(p: &Presentation) -> Self {
        ValidateReport {
            valid: true,
            field: p.field().to_string(),
            vertices: p.quiver().num_vertices(),
            arrows: p.quiver().num_arrows(),
            dimension: p.dimension(),
            warnings: deformation_warnings(p),
        }
    }
}

impl fmt::Display for ValidateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "valid: {} vertices, {} arrows over {}, dimension {}",
            self.vertices, self.arrows, self.field, self.dimension
        )?;
        write_warnings(f, &self.warnings)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub arrows: Vec<String>,
    pub n: usize,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowRow {
    pub id: String,
    pub source: String,
    pub target: String,
}

fn arrow_rows(q: &Quiver) -> Vec<ArrowRow> {
    q.arrows()
        .map(|a| ArrowRow {
            id: q.arrow_id(a).into(),
            source: q.vertex_id(q.source(a)).into(),
            target: q.vertex_id(q.target(a)).into(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildDetails {
    pub orbits: Vec<OrbitRow>,
    pub admissible: Vec<String>,
    pub virtual_loops: Vec<String>,
    /// `None` when the algebra is too small to have one.
    pub gabriel_quiver: Option<Vec<ArrowRow>>,
    pub vertices: Vec<String>,
    pub cartan: Vec<Vec<usize>>,
    pub projective_dimensions: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildReport {
    pub dimension: usize,
    pub relations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<BuildDetails>,
    pub warnings: Vec<String>,
}

impl BuildReport {
    /// Fails with an invariant breach when a relation generator does not
    /// vanish in the table.
    pub fn new(t: &AlgebraTable, details: bool) -> Result<Self, CliError> {
        let p = t.presentation();
        let q = p.quiver();
        let check = t.verify_relations();
        if !check.passed() {
            let failing: Vec<String> = check.residuals.iter().map(|(g, _)| g.display(q)).collect();
            return Err(CliError::Invariant(format!(
                "{} of {} relation generators do not vanish: {}",
                failing.len(),
                check.total,
                failing.join("; ")
            )));
        }
        let details = details.then(|| {
            let orbits = p.orbits();
            BuildDetails {
                orbits: orbits
                    .orbit_ids()
                    .map(|o| OrbitRow {
                        arrows: orbits.orbit(o).iter().map(|&a| q.arrow_id(a).to_string()).collect(),
                        n: orbits.orbit(o).len(),
                        m: p.weight(o),
                    })
                    .collect(),
                admissible: p.admissible_set().into_iter().map(|a| q.arrow_id(a).to_string()).collect(),
                virtual_loops: p.virtual_loops().into_iter().map(|a| q.arrow_id(a).to_string()).collect(),
                gabriel_quiver: t.gabriel_quiver().ok().map(|g| arrow_rows(&g)),
                vertices: q.vertices().map(|v| q.vertex_id(v).to_string()).collect(),
                cartan: t.cartan_matrix(),
                projective_dimensions: t.projective_dimensions(),
            }
        });
        Ok(BuildReport { dimension: t.dimension(), relations: check.total, details, warnings: deformation_warnings(p) })
    }
}

impl fmt::Display for BuildReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension: {}", self.dimension)?;
        writeln!(f, "relations: {} generators, all vanish", self.relations)?;
        if let Some(d) = &self.details {
            writeln!(f, "g-orbits:")?;
            for o in &d.orbits {
                writeln!(f, "  ({})  n = {}  m = {}", o.arrows.join(" "), o.n, o.m)?;
            }
            writeln!(f, "admissible arrows: {}", join(&d.admissible))?;
            writeln!(f, "virtual loops: {}", join(&d.virtual_loops))?;
            match &d.gabriel_quiver {
                Some(arrows) => {
                    writeln!(f, "gabriel quiver: {} arrows", arrows.len())?;
                    for a in arrows {
                        writeln!(f, "  {}: {} -> {}", a.id, a.source, a.target)?;
                    }
                }
                None => writeln!(f, "gabriel quiver: undefined below dimension 3")?,
            }
            writeln!(f, "cartan matrix (rows e_i B, columns {}):", d.vertices.join(" "))?;
            for (v, row) in d.vertices.iter().zip(&d.cartan) {
                writeln!(f, "  {v}: {}", join(row))?;
            }
            let dims: Vec<String> =
                d.vertices.iter().zip(&d.projective_dimensions).map(|(v, n)| format!("{v}: {n}")).collect();
            writeln!(f, "projective dimensions: {}", dims.join(", "))?;
        }
        write_warnings(f, &self.warnings)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakRow {
    pub vertex: String,
    pub annihilator_dim: usize,
    pub socle: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakReport {
    pub holds: bool,
    pub vertices: Vec<WeakRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormEntry {
    pub basis: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricReport {
    /// `symmetric`, `not symmetric` or `inconclusive`.
    pub verdict: String,
    pub centralizer_dim: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub form: Vec<FormEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gram_determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialReport {
    pub holds: bool,
    pub degrees_ok: bool,
    pub offenders: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weakly_symmetric: Option<WeakReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<SymmetricReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_biserial: Option<SpecialReport>,
    pub warnings: Vec<String>,
}

pub fn weak_report(t: &AlgebraTable) -> WeakReport {
    let q = t.quiver();
    let r = weak_symmetry_report(t);
    WeakReport {
        holds: r.holds(),
        vertices: r
            .vertices
            .iter()
            .map(|v| WeakRow {
                vertex: q.vertex_id(v.vertex).into(),
                annihilator_dim: v.annihilator_dim,
                socle: t.describe(t.socle_index(v.vertex)),
                holds: v.holds(),
            })
            .collect(),
    }
}

pub fn symmetric_report(t: &AlgebraTable) -> Result<SymmetricReport, CliError> {
    let verdict = check_symmetric(t).map_err(|e| CliError::Invariant(e.to_string()))?;
    Ok(match verdict {
        SymmetryVerdict::Symmetric { form, gram_determinant, centralizer_dim } => SymmetricReport {
            verdict: "symmetric".into(),
            centralizer_dim,
            form: form
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| FormEntry { basis: t.describe(i), value: v.to_string() })
                .collect(),
            gram_determinant: Some(gram_determinant.to_string()),
            obstruction: None,
        },
        SymmetryVerdict::NotSymmetric { obstruction, centralizer_dim } => SymmetricReport {
            verdict: "not symmetric".into(),
            centralizer_dim,
            form: Vec::new(),
            gram_determinant: None,
            obstruction: Some(match obstruction {
                Obstruction::VanishingVertex(v) => {
                    format!("every functional vanishing on commutators is zero on {}", t.describe(t.socle_index(v)))
                }
                Obstruction::NoNowhereZeroCombination => {
                    "no functional vanishing on commutators is nonzero on all socle elements at once".into()
                }
            }),
        },
        SymmetryVerdict::Inconclusive { centralizer_dim, searched } => SymmetricReport {
            verdict: "inconclusive".into(),
            centralizer_dim,
            form: Vec::new(),
            gram_determinant: None,
            obstruction: Some(format!("witness search stopped after {searched} candidates")),
        },
    })
}

pub fn special_report(p: &Presentation) -> SpecialReport {
    let r = p.special_biserial_check();
    SpecialReport {
        holds: r.holds(),
        degrees_ok: r.degrees_ok,
        offenders: r.offenders.iter().map(|&a| p.quiver().arrow_id(a).to_string()).collect(),
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = &self.weakly_symmetric {
            writeln!(f, "weakly symmetric: {}", if w.holds { "yes" } else { "no" })?;
            for v in &w.vertices {
                writeln!(
                    f,
                    "  vertex {}: socle of P_{} has dimension {}, spanned by {}{}",
                    v.vertex,
                    v.vertex,
                    v.annihilator_dim,
                    v.socle,
                    if v.holds { "" } else { " (fails)" }
                )?;
            }
        }
        if let Some(s) = &self.symmetric {
            writeln!(f, "symmetric: {} (commutator-free functionals: {})", s.verdict, s.centralizer_dim)?;
            if let Some(det) = &s.gram_determinant {
                writeln!(f, "  gram determinant: {det}")?;
                let entries: Vec<String> = s.form.iter().map(|e| format!("{} ↦ {}", e.basis, e.value)).collect();
                writeln!(f, "  form: {}", entries.join(", "))?;
            }
            if let Some(o) = &s.obstruction {
                writeln!(f, "  reason: {o}")?;
            }
        }
        if let Some(s) = &self.special_biserial {
            writeln!(f, "special biserial: {}", if s.holds { "yes" } else { "no" })?;
            if !s.degrees_ok {
                writeln!(f, "  some vertex has more than two arrows in or out")?;
            }
            if !s.offenders.is_empty() {
                writeln!(f, "  arrows with two nonzero continuations: {}", s.offenders.join(" "))?;
            }
        }
        write_warnings(f, &self.warnings)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleView {
    pub trunc: usize,
    pub dimension: usize,
    pub groebner_size: usize,
    pub formula: usize,
    pub agrees: bool,
}

impl OracleView {
    pub fn new(r: &OracleReport, p: &Presentation) -> Self {
        OracleView {
            trunc: r.trunc,
            dimension: r.dimension,
            groebner_size: r.groebner_size,
            formula: p.dimension(),
            agrees: r.dimension == p.dimension(),
        }
    }
}

impl fmt::Display for OracleView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "oracle dimension: {} (stable at trunc {} and {})", self.dimension, self.trunc, self.trunc + 1)?;
        writeln!(f, "gröbner basis size: {}", self.groebner_size)?;
        writeln!(f, "formula Σ m n²: {} ({})", self.formula, if self.agrees { "agrees" } else { "differs" })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ImportReport {
    pub bad_pairs: Vec<String>,
    pub added_loops: BTreeMap<String, String>,
    pub f: BTreeMap<String, String>,
    pub d: BTreeMap<String, String>,
    pub r: BTreeMap<String, u32>,
    pub m: BTreeMap<String, u32>,
    pub dimension: usize,
    pub cartan: Vec<Vec<usize>>,
    pub weakly_symmetric: bool,
    pub round_trip: bool,
    pub mismatches: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emitted: Option<String>,
    pub warnings: Vec<String>,
}

impl ImportReport {
    pub fn new(
        bad_pairs: Vec<String>,
        added_loops: BTreeMap<String, String>,
        p: &Presentation,
        rt: &RoundTripReport,
        names: impl Fn((crate::quiver::Arrow, crate::quiver::Arrow)) -> String,
    ) -> Self {
        let data = p.to_data();
        ImportReport {
            bad_pairs,
            added_loops,
            f: data.bq.f_map(),
            d: data.d.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            r: data.r,
            m: data.m,
            dimension: rt.dimension,
            cartan: rt.cartan.clone(),
            weakly_symmetric: rt.weakly_symmetric,
            round_trip: rt.passed(),
            mismatches: rt.mismatches.iter().map(|&x| names(x)).collect(),
            emitted: None,
            warnings: deformation_warnings(p),
        }
    }
}

impl fmt::Display for ImportReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bad pairs: {}", self.bad_pairs.join(", "))?;
        if !self.added_loops.is_empty() {
            let loops: Vec<String> = self.added_loops.iter().map(|(v, a)| format!("{a} at {v}")).collect();
            writeln!(f, "added loops: {}", loops.join(", "))?;
        }
        let f_map: Vec<String> = self.f.iter().map(|(a, b)| format!("{a} ↦ {b}")).collect();
        writeln!(f, "f: {}", f_map.join(", "))?;
        let d: Vec<String> = self.d.iter().map(|(a, v)| format!("d_{a} = {v}")).collect();
        writeln!(f, "d: {}", join(&d))?;
        let r: Vec<String> = self.r.iter().map(|(a, v)| format!("r_{a} = {v}")).collect();
        writeln!(f, "r: {}", join(&r))?;
        writeln!(f, "dimension: {}", self.dimension)?;
        let rows: Vec<String> = self.cartan.iter().map(|row| format!("({})", join(row))).collect();
        writeln!(f, "cartan rows: {}", rows.join(" "))?;
        writeln!(f, "weakly symmetric: {}", if self.weakly_symmetric { "yes" } else { "no" })?;
        if self.round_trip {
            writeln!(f, "round trip: h recovered exactly")?;
        } else {
            writeln!(f, "round trip: mismatch at {}", self.mismatches.join(", "))?;
        }
        if let Some(path) = &self.emitted {
            writeln!(f, "presentation written to {path}")?;
        }
        write_warnings(f, &self.warnings)
    }
}
