//! Weight, rank, parameter and admissible functions on a biserial quiver,
//! their validation, the distinguished paths `B_α`, `C_α`, `D_α` and the
//! generators of the defining ideal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::diagnostics::Diagnostics;
use crate::field::{FieldSpec, Scalar};
use crate::quiver::{
    admissible_arrows, border_data, derive_orbits, Arrow, BiserialQuiver, OrbitData, OrbitId, Quiver, Vertex,
};

/// A path of the quiver. The trivial path at a vertex has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowPath {
    source: Vertex,
    target: Vertex,
    arrows: Vec<Arrow>,
}

impl ArrowPath {
    pub fn trivial(v: Vertex) -> Self {
        ArrowPath { source: v, target: v, arrows: Vec::new() }
    }

    /// `None` when the arrows do not compose or the list is empty.
    pub fn new(quiver: &Quiver, arrows: Vec<Arrow>) -> Option<Self> {
        let (first, last) = (*arrows.first()?, *arrows.last()?);
        if arrows.windows(2).any(|w| quiver.target(w[0]) != quiver.source(w[1])) {
            return None;
        }
        Some(ArrowPath { source: quiver.source(first), target: quiver.target(last), arrows })
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_prefix_of(&self, other: &ArrowPath) -> bool {
        self.source == other.source && other.arrows.starts_with(&self.arrows)
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", quiver.vertex_id(self.source))
        } else {
            quiver.word(&self.arrows)
        }
    }
}

/// The four families of defining relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `α f(α)` for a non-admissible arrow.
    ZeroBadPair,
    /// `α f(α) − d_α D_α` for an admissible arrow.
    DeformedBadPair,
    /// `c_α B_α − c_ᾱ B_ᾱ`.
    SocleCommutation,
    /// `B_α α`.
    Overflow,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::ZeroBadPair => "zero-bad-pair",
            RelationKind::DeformedBadPair => "deformed-bad-pair",
            RelationKind::SocleCommutation => "socle-commutation",
            RelationKind::Overflow => "overflow",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Scalar,
    pub path: ArrowPath,
}

/// A generator `Σ coefficient·path` (at most two terms, common endpoints).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGenerator {
    pub kind: RelationKind,
    /// The arrow indexing the generator within its family.
    pub arrow: Arrow,
    pub terms: Vec<Term>,
}

impl RelationGenerator {
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coefficient.is_negative();
            let abs = if neg { -&t.coefficient } else { t.coefficient.clone() };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}·"));
            }
            out.push('(');
            out.push_str(&t.path.display(quiver));
            out.push(')');
        }
        out
    }
}

/// Raw presentation data keyed by ids, before validation.
#[derive(Clone, Debug)]
pub struct PresentationData {
    pub bq: BiserialQuiver,
    pub field: FieldSpec,
    /// Weight per g-orbit; keys may be any arrow of the orbit.
    pub m: BTreeMap<String, u32>,
    /// Rank on admissible arrows.
    pub r: BTreeMap<String, u32>,
    /// Parameter on all arrows.
    pub c: BTreeMap<String, Scalar>,
    /// Admissible function on admissible arrows.
    pub d: BTreeMap<String, Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationViolation {
    UnknownArrow {
        map: &'static str,
        arrow: String,
    },
    NotAdmissible {
        map: &'static str,
        arrow: String,
    },
    MissingWeight {
        orbit: String,
    },
    ConflictingWeight {
        orbit: String,
        values: Vec<u32>,
    },
    ZeroWeight {
        orbit: String,
    },
    MissingRank {
        arrow: String,
    },
    ZeroRank {
        arrow: String,
    },
    RankExceedsWeight {
        arrow: String,
        rank: u32,
        weight: u32,
    },
    MissingParameter {
        arrow: String,
    },
    ZeroParameter {
        arrow: String,
    },
    MissingAdmissible {
        arrow: String,
    },
    WrongField {
        map: &'static str,
        arrow: String,
        expected: FieldSpec,
        found: FieldSpec,
    },
    /// `d_{f⁻¹(α)} ≠ 0` although `m_α n_α = 1`.
    ConditionOne {
        arrow: String,
        preimage: String,
    },
    /// `d_α d_β = 1` for distinct admissible arrows with parallel `g`-images.
    ConditionTwo {
        first: String,
        second: String,
    },
    TooSmall {
        dimension: usize,
    },
}

impl fmt::Display for PresentationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PresentationViolation::*;
        match self {
            UnknownArrow { map, arrow } => write!(f, "{map}: unknown arrow `{arrow}`"),
            NotAdmissible { map, arrow } => {
                write!(f, "{map}: arrow `{arrow}` is not admissible (f²({arrow}) outside its g-orbit)")
            }
            MissingWeight { orbit } => write!(f, "weight m: missing for the g-orbit of `{orbit}`"),
            ConflictingWeight { orbit, values } => {
                write!(f, "weight m: conflicting values {values:?} on the g-orbit of `{orbit}`")
            }
            ZeroWeight { orbit } => write!(f, "weight m: must be positive on the g-orbit of `{orbit}`"),
            MissingRank { arrow } => write!(f, "rank r: missing for admissible arrow `{arrow}`"),
            ZeroRank { arrow } => write!(f, "rank r: must be positive at `{arrow}`"),
            RankExceedsWeight { arrow, rank, weight } => {
                write!(f, "rank bound: r_{arrow} = {rank} exceeds m_{arrow} = {weight}")
            }
            MissingParameter { arrow } => write!(f, "parameter c: missing for arrow `{arrow}`"),
            ZeroParameter { arrow } => write!(f, "parameter c: c_{arrow} must be nonzero"),
            MissingAdmissible { arrow } => write!(f, "admissible d: missing for admissible arrow `{arrow}`"),
            WrongField { map, arrow, expected, found } => {
                write!(f, "{map}: value at `{arrow}` lies in {found}, expected {expected}")
            }
            ConditionOne { arrow, preimage } => {
                write!(f, "admissible condition (i): m_{arrow}·n_{arrow} = 1 forces d_{preimage} = 0")
            }
            ConditionTwo { first, second } => {
                write!(f, "admissible condition (ii): d_{first}·d_{second} = 1 with g({first}), g({second}) parallel")
            }
            TooSmall { dimension } => write!(f, "dimension {dimension} is below 2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("arrow `{0}` is not admissible")]
    NotAdmissible(String),
    #[error("the biserial quiver has an empty border")]
    EmptyBorder,
    #[error("vertex `{0}` is not a border vertex")]
    NotBorderVertex(String),
    #[error("border function missing at vertex `{0}`")]
    MissingBorderValue(String),
    #[error("{0}")]
    Invalid(Diagnostics<PresentationViolation>),
}

impl From<Diagnostics<PresentationViolation>> for PresentationError {
    fn from(d: Diagnostics<PresentationViolation>) -> Self {
        PresentationError::Invalid(d)
    }
}

/// A validated presentation of a generalized biserial quiver algebra.
///
/// Ranks are canonical: an admissible arrow with `d_α = 0` stores `r_α = 1`,
/// since the algebra does not depend on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    bq: BiserialQuiver,
    orbits: OrbitData,
    omega: Vec<bool>,
    field: FieldSpec,
    weights: Vec<u32>,
    ranks: Vec<u32>,
    parameters: Vec<Scalar>,
    admissible: Vec<Scalar>,
}

/// Checks every constraint on the functions and builds the canonical
/// presentation.
pub fn validate_presentation(data: PresentationData) -> Result<Presentation, Diagnostics<PresentationViolation>> {
    use PresentationViolation as V;
    let PresentationData { bq, field, m, r, c, d } = data;
    let orbits = derive_orbits(&bq);
    let omega_set = admissible_arrows(&bq, &orbits);
    let q = bq.quiver();
    let id = |a: Arrow| q.arrow_id(a).to_string();
    let mut violations = Vec::new();

    // weights
    let mut given: Vec<Vec<u32>> = vec![Vec::new(); orbits.num_orbits()];
    for (k, &v) in &m {
        match q.arrow(k) {
            Some(a) => given[orbits.orbit_of(a).index()].push(v),
            None => violations.push(V::UnknownArrow { map: "weight m", arrow: k.clone() }),
        }
    }
    let mut weights = vec![1u32; orbits.num_orbits()];
    for o in orbits.orbit_ids() {
        let rep = id(orbits.representative(o));
        let vals = &mut given[o.index()];
        vals.sort_unstable();
        vals.dedup();
        match vals.as_slice() {
            [] => violations.push(V::MissingWeight { orbit: rep }),
            [0] => violations.push(V::ZeroWeight { orbit: rep }),
            [w] => weights[o.index()] = *w,
            _ => violations.push(V::ConflictingWeight { orbit: rep, values: vals.clone() }),
        }
    }

    // key hygiene for r and d
    for (map, keys) in [("rank r", r.keys().collect::<Vec<_>>()), ("admissible d", d.keys().collect())] {
        for k in keys {
            match q.arrow(k) {
                None => violations.push(V::UnknownArrow { map, arrow: k.clone() }),
                Some(a) if !omega_set.contains(&a) => violations.push(V::NotAdmissible { map, arrow: k.clone() }),
                _ => {}
            }
        }
    }
    for k in c.keys() {
        if q.arrow(k).is_none() {
            violations.push(V::UnknownArrow { map: "parameter c", arrow: k.clone() });
        }
    }

    let n_arrows = q.num_arrows();
    let mut omega = vec![false; n_arrows];
    let mut ranks = vec![1u32; n_arrows];
    let mut parameters = vec![Scalar::one(field); n_arrows];
    let mut admissible = vec![Scalar::zero(field); n_arrows];
    for a in q.arrows() {
        let name = id(a);
        match c.get(&name) {
            None => violations.push(V::MissingParameter { arrow: name.clone() }),
            Some(v) if v.field() != field => violations.push(V::WrongField {
                map: "parameter c",
                arrow: name.clone(),
                expected: field,
                found: v.field(),
            }),
            Some(v) if v.is_zero() => violations.push(V::ZeroParameter { arrow: name.clone() }),
            Some(v) => parameters[a.index()] = v.clone(),
        }
        if !omega_set.contains(&a) {
            continue;
        }
        omega[a.index()] = true;
        let weight = weights[orbits.orbit_of(a).index()];
        match r.get(&name) {
            None => violations.push(V::MissingRank { arrow: name.clone() }),
            Some(0) => violations.push(V::ZeroRank { arrow: name.clone() }),
            Some(&rank) if rank > weight => violations.push(V::RankExceedsWeight { arrow: name.clone(), rank, weight }),
            Some(&rank) => ranks[a.index()] = rank,
        }
        match d.get(&name) {
            None => violations.push(V::MissingAdmissible { arrow: name.clone() }),
            Some(v) if v.field() != field => violations.push(V::WrongField {
                map: "admissible d",
                arrow: name.clone(),
                expected: field,
                found: v.field(),
            }),
            Some(v) => admissible[a.index()] = v.clone(),
        }
    }
    // Conditions on d only make sense once the maps are complete.
    if violations.is_empty() {
        let cycle_len = |a: Arrow| weights[orbits.orbit_of(a).index()] as usize * orbits.n(a);
        for a in q.arrows() {
            let pre = bq.f_inv(a);
            if cycle_len(a) == 1 && omega[pre.index()] && !admissible[pre.index()].is_zero() {
                violations.push(V::ConditionOne { arrow: id(a), preimage: id(pre) });
            }
        }
        let omega_list: Vec<Arrow> = omega_set.iter().copied().collect();
        for (i, &a) in omega_list.iter().enumerate() {
            for &b in &omega_list[i + 1..] {
                let (ga, gb) = (orbits.g(a), orbits.g(b));
                let parallel = q.source(ga) == q.source(gb) && q.target(ga) == q.target(gb);
                let (da, db) = (&admissible[a.index()], &admissible[b.index()]);
                if parallel && !da.is_zero() && !db.is_zero() && (da * db).is_one() {
                    violations.push(V::ConditionTwo { first: id(a), second: id(b) });
                }
            }
        }
        let dimension: usize =
            orbits.orbit_ids().map(|o| weights[o.index()] as usize * orbits.orbit(o).len().pow(2)).sum();
        if dimension < 2 {
            violations.push(V::TooSmall { dimension });
        }
    }
    Diagnostics::check(violations)?;

    for a in q.arrows() {
        if admissible[a.index()].is_zero() {
            ranks[a.index()] = 1;
        }
    }
    Ok(Presentation { bq, orbits, omega, field, weights, ranks, parameters, admissible })
}

impl Presentation {
    pub fn biserial_quiver(&self) -> &BiserialQuiver {
        &self.bq
    }

    pub fn quiver(&self) -> &Quiver {
        self.bq.quiver()
    }

    pub fn orbits(&self) -> &OrbitData {
        &self.orbits
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_admissible(&self, a: Arrow) -> bool {
        self.omega[a.index()]
    }

    pub fn admissible_set(&self) -> BTreeSet<Arrow> {
        self.quiver().arrows().filter(|&a| self.is_admissible(a)).collect()
    }

    pub fn weight(&self, o: OrbitId) -> u32 {
        self.weights[o.index()]
    }

    /// `m_α`.
    pub fn weight_of(&self, a: Arrow) -> u32 {
        self.weights[self.orbits.orbit_of(a).index()]
    }

    /// `r_α` for admissible arrows (canonical).
    pub fn rank(&self, a: Arrow) -> Option<u32> {
        self.is_admissible(a).then(|| self.ranks[a.index()])
    }

    /// `c_α`.
    pub fn parameter(&self, a: Arrow) -> &Scalar {
        &self.parameters[a.index()]
    }

    /// `d_α` for admissible arrows.
    pub fn admissible_value(&self, a: Arrow) -> Option<&Scalar> {
        self.is_admissible(a).then(|| &self.admissible[a.index()])
    }

    /// `d_α`, with zero outside `Ω`.
    pub fn deformation(&self, a: Arrow) -> &Scalar {
        &self.admissible[a.index()]
    }

    /// Length `m_α n_α` of `B_α`.
    pub fn cycle_len(&self, a: Arrow) -> usize {
        self.weight_of(a) as usize * self.orbits.n(a)
    }

    pub fn dimension(&self) -> usize {
        self.orbits.orbit_ids().map(|o| self.weight(o) as usize * self.orbits.orbit(o).len().pow(2)).sum()
    }

    /// `d ≡ 0`.
    pub fn is_special(&self) -> bool {
        self.admissible.iter().all(Scalar::is_zero)
    }

    /// Arrows with `d_α ≠ 0` where `αf(α) − d_α D_α` does not land in the
    /// socle: `|D_α| < m_α n_α`, or `B_α` is a single arrow.
    ///
    /// The basis of `Σ m n²` paths is only certified when this is empty. For
    /// these arrows the ideal can contain further paths (for instance when
    /// `d_{f(α)} = 0`, associating `α f(α) f²(α)` both ways gives a nonzero
    /// multiple of a longer `g`-walk equal to zero), and the true quotient is
    /// then smaller. The oracle decides each case.
    pub fn sub_socle_deformations(&self) -> Vec<Arrow> {
        self.quiver()
            .arrows()
            .filter(|&a| {
                let full = self.cycle_len(a);
                !self.deformation(a).is_zero() && (full == 1 || self.d_len(a).is_some_and(|l| l < full))
            })
            .collect()
    }

    fn walk(&self, a: Arrow, len: usize) -> ArrowPath {
        ArrowPath::new(self.quiver(), self.orbits.g_walk(a, len)).expect("g-walks compose")
    }

    /// `B_α = (α g(α) … g^{n_α−1}(α))^{m_α}`.
    pub fn cycle_b(&self, a: Arrow) -> ArrowPath {
        self.walk(a, self.cycle_len(a))
    }

    /// `|C_α|` for admissible `α`.
    pub fn c_len(&self, a: Arrow) -> Option<usize> {
        if !self.is_admissible(a) {
            return None;
        }
        let last = self.orbits.g_inv(self.bq.f(self.bq.f(a)));
        Some(self.orbits.steps_between(a, last).expect("admissible arrow") + 1)
    }

    /// `C_α = α g(α) … g⁻¹(f²(α))`.
    pub fn subpath_c(&self, a: Arrow) -> Result<ArrowPath, PresentationError> {
        let len = self.c_len(a).ok_or_else(|| self.not_admissible(a))?;
        Ok(self.walk(a, len))
    }

    /// `|D_α| = (r_α − 1) n_α + |C_α|`.
    pub fn d_len(&self, a: Arrow) -> Option<usize> {
        let c = self.c_len(a)?;
        Some((self.ranks[a.index()] as usize - 1) * self.orbits.n(a) + c)
    }

    /// `D_α = (α g(α) … g^{n_α−1}(α))^{r_α−1} C_α`.
    pub fn path_d(&self, a: Arrow) -> Result<ArrowPath, PresentationError> {
        let len = self.d_len(a).ok_or_else(|| self.not_admissible(a))?;
        let path = self.walk(a, len);
        debug_assert!(path.is_prefix_of(&self.cycle_b(a)));
        Ok(path)
    }

    fn not_admissible(&self, a: Arrow) -> PresentationError {
        PresentationError::NotAdmissible(self.quiver().arrow_id(a).to_string())
    }

    fn bad_pair(&self, a: Arrow) -> ArrowPath {
        ArrowPath::new(self.quiver(), vec![a, self.bq.f(a)]).expect("s(f(α)) = t(α)")
    }

    /// All generators of the defining ideal, grouped by family and ordered by
    /// arrow within each family.
    pub fn relation_generators(&self) -> Vec<RelationGenerator> {
        let one = Scalar::one(self.field);
        let q = self.quiver();
        let mut out = Vec::new();
        for a in q.arrows().filter(|&a| !self.is_admissible(a)) {
            out.push(RelationGenerator {
                kind: RelationKind::ZeroBadPair,
                arrow: a,
                terms: vec![Term { coefficient: one.clone(), path: self.bad_pair(a) }],
            });
        }
        for a in q.arrows().filter(|&a| self.is_admissible(a)) {
            let mut terms = vec![Term { coefficient: one.clone(), path: self.bad_pair(a) }];
            let d = self.deformation(a);
            if !d.is_zero() {
                terms.push(Term { coefficient: -d, path: self.path_d(a).expect("admissible") });
            }
            out.push(RelationGenerator { kind: RelationKind::DeformedBadPair, arrow: a, terms });
        }
        for a in q.arrows() {
            let bar = self.bq.other_arrow(a);
            out.push(RelationGenerator {
                kind: RelationKind::SocleCommutation,
                arrow: a,
                terms: vec![
                    Term { coefficient: self.parameter(a).clone(), path: self.cycle_b(a) },
                    Term { coefficient: -self.parameter(bar), path: self.cycle_b(bar) },
                ],
            });
        }
        for a in q.arrows() {
            let mut arrows = self.cycle_b(a).arrows().to_vec();
            arrows.push(a);
            out.push(RelationGenerator {
                kind: RelationKind::Overflow,
                arrow: a,
                terms: vec![Term {
                    coefficient: one.clone(),
                    path: ArrowPath::new(q, arrows).expect("B_α is a cycle at s(α)"),
                }],
            });
        }
        out
    }

    /// Loops `α` with `m_α n_α = 1`.
    pub fn virtual_loops(&self) -> BTreeSet<Arrow> {
        self.quiver().arrows().filter(|&a| self.cycle_len(a) == 1).collect()
    }

    /// Back to id-keyed raw data (canonical ranks, weights keyed by orbit
    /// representatives).
    pub fn to_data(&self) -> PresentationData {
        let q = self.quiver();
        let id = |a: Arrow| q.arrow_id(a).to_string();
        PresentationData {
            bq: self.bq.clone(),
            field: self.field,
            m: self.orbits.orbit_ids().map(|o| (id(self.orbits.representative(o)), self.weight(o))).collect(),
            r: q.arrows().filter_map(|a| self.rank(a).map(|r| (id(a), r))).collect(),
            c: q.arrows().map(|a| (id(a), self.parameter(a).clone())).collect(),
            d: q.arrows().filter_map(|a| self.admissible_value(a).map(|d| (id(a), d.clone()))).collect(),
        }
    }

    /// Syntactic special-biserial check on the relation set: every arrow has
    /// at most one continuation and at most one predecessor outside the
    /// monomial length-2 relations.
    pub fn special_biserial_check(&self) -> SpecialBiserialReport {
        let q = self.quiver();
        let zero_pairs: BTreeSet<(Arrow, Arrow)> = self
            .relation_generators()
            .into_iter()
            .filter(|g| g.is_monomial() && g.terms[0].path.len() == 2)
            .map(|g| (g.terms[0].path.arrows()[0], g.terms[0].path.arrows()[1]))
            .collect();
        let mut offenders = Vec::new();
        for a in q.arrows() {
            let after = q.out_arrows(q.target(a)).into_iter().filter(|&b| !zero_pairs.contains(&(a, b))).count();
            let before = q.in_arrows(q.source(a)).into_iter().filter(|&b| !zero_pairs.contains(&(b, a))).count();
            if after > 1 || before > 1 {
                offenders.push(a);
            }
        }
        SpecialBiserialReport { degrees_ok: true, offenders }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialBiserialReport {
    /// Condition (a): at most two arrows in and out at each vertex.
    pub degrees_ok: bool,
    /// Arrows violating condition (b).
    pub offenders: Vec<Arrow>,
}

impl SpecialBiserialReport {
    pub fn holds(&self) -> bool {
        self.degrees_ok && self.offenders.is_empty()
    }
}

/// Presentation with `d ≡ 0` and canonical ranks.
pub fn special_presentation(
    bq: BiserialQuiver,
    field: FieldSpec,
    m: BTreeMap<String, u32>,
    c: BTreeMap<String, Scalar>,
) -> Result<Presentation, Diagnostics<PresentationViolation>> {
    let orbits = derive_orbits(&bq);
    let omega = admissible_arrows(&bq, &orbits);
    let q = bq.quiver();
    let r = omega.iter().map(|&a| (q.arrow_id(a).to_string(), 1)).collect();
    let d = omega.iter().map(|&a| (q.arrow_id(a).to_string(), Scalar::zero(field))).collect();
    validate_presentation(PresentationData { bq, field, m, r, c, d })
}

/// The presentation attached to a border function: `d` is `b` on border loops
/// and zero elsewhere, `r_α = m_α` on `Ω`, and `c ≡ 1`.
pub fn presentation_from_border(
    bq: BiserialQuiver,
    field: FieldSpec,
    m: BTreeMap<String, u32>,
    b: &BTreeMap<String, Scalar>,
) -> Result<Presentation, PresentationError> {
    let border = border_data(&bq);
    if border.vertices.is_empty() {
        return Err(PresentationError::EmptyBorder);
    }
    let q = bq.quiver();
    for v in b.keys() {
        match q.vertex(v) {
            Some(x) if border.vertices.contains(&x) => {}
            _ => return Err(PresentationError::NotBorderVertex(v.clone())),
        }
    }
    for &v in &border.vertices {
        if !b.contains_key(q.vertex_id(v)) {
            return Err(PresentationError::MissingBorderValue(q.vertex_id(v).to_string()));
        }
    }
    let orbits = derive_orbits(&bq);
    let omega = admissible_arrows(&bq, &orbits);
    let weight_of = |a: Arrow| -> u32 {
        orbits.orbit(orbits.orbit_of(a)).iter().find_map(|&x| m.get(q.arrow_id(x)).copied()).unwrap_or(0)
    };
    let mut r = BTreeMap::new();
    let mut d = BTreeMap::new();
    for &a in &omega {
        let name = q.arrow_id(a).to_string();
        r.insert(name.clone(), weight_of(a));
        let value = if border.loops.contains(&a) { b[q.vertex_id(q.source(a))].clone() } else { Scalar::zero(field) };
        d.insert(name, value);
    }
    let c = q.arrows().map(|a| (q.arrow_id(a).to_string(), Scalar::one(field))).collect();
    Ok(validate_presentation(PresentationData { bq, field, m, r, c, d })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::validate_biserial_quiver;

    fn q(s: &str) -> Scalar {
        Scalar::parse(s, FieldSpec::Rationals).unwrap()
    }

    fn strs<V: Clone>(pairs: &[(&str, V)]) -> BTreeMap<String, V> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    fn triangle(f: &[(&str, &str)]) -> BiserialQuiver {
        let quiver = Quiver::new(
            ["1", "2", "3"],
            [
                ("alpha", "1", "2"),
                ("beta", "2", "3"),
                ("gamma", "3", "1"),
                ("xi", "1", "1"),
                ("eta", "2", "2"),
                ("mu", "3", "3"),
            ],
        )
        .unwrap();
        let f = f.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        validate_biserial_quiver(quiver, &f).unwrap()
    }

    fn ex41_data() -> PresentationData {
        let bq = triangle(&[
            ("alpha", "beta"),
            ("beta", "gamma"),
            ("gamma", "alpha"),
            ("xi", "xi"),
            ("eta", "eta"),
            ("mu", "mu"),
        ]);
        PresentationData {
            bq,
            field: FieldSpec::Rationals,
            m: strs(&[("alpha", 2)]),
            r: strs(&[("xi", 1), ("eta", 2), ("mu", 2), ("alpha", 1), ("beta", 2), ("gamma", 1)]),
            c: strs(&[
                ("xi", q("1")),
                ("eta", q("1")),
                ("mu", q("1")),
                ("gamma", q("1")),
                ("alpha", q("-1")),
                ("beta", q("-1")),
            ]),
            d: strs(&[
                ("xi", q("1")),
                ("beta", q("1")),
                ("eta", q("0")),
                ("mu", q("0")),
                ("alpha", q("-1")),
                ("gamma", q("-1")),
            ]),
        }
    }

    fn ex42_data() -> PresentationData {
        let bq = triangle(&[
            ("alpha", "beta"),
            ("beta", "mu"),
            ("mu", "gamma"),
            ("gamma", "xi"),
            ("xi", "alpha"),
            ("eta", "eta"),
        ]);
        PresentationData {
            bq,
            field: FieldSpec::Rationals,
            m: strs(&[("alpha", 3), ("mu", 2), ("xi", 1)]),
            r: strs(&[("gamma", 1), ("beta", 2), ("eta", 3)]),
            c: strs(&[
                ("xi", q("1")),
                ("eta", q("1")),
                ("mu", q("1")),
                ("gamma", q("1")),
                ("alpha", q("-1")),
                ("beta", q("-1")),
            ]),
            d: strs(&[("beta", q("1")), ("eta", q("7")), ("gamma", q("0"))]),
        }
    }

    fn word(p: &Presentation, path: &ArrowPath) -> String {
        p.quiver().word(path.arrows())
    }

    #[test]
    fn example_4_1_paths() {
        let p = validate_presentation(ex41_data()).unwrap();
        let a = |s| p.quiver().arrow(s).unwrap();
        assert_eq!(word(&p, &p.cycle_b(a("alpha"))), "alpha eta beta mu gamma xi ".repeat(2).trim());
        assert_eq!(word(&p, &p.subpath_c(a("alpha")).unwrap()), "alpha eta beta mu");
        assert_eq!(word(&p, &p.subpath_c(a("xi")).unwrap()), "xi alpha eta beta mu gamma");
        assert_eq!(word(&p, &p.path_d(a("beta")).unwrap()), "beta mu gamma xi alpha eta beta mu gamma xi");
        // d_eta = 0, so its rank is stored canonically
        assert_eq!(p.rank(a("eta")), Some(1));
        assert_eq!(p.rank(a("beta")), Some(2));
        assert!(p.virtual_loops().is_empty());
        assert_eq!(p.dimension(), 72);
    }

    #[test]
    fn example_4_1_generator_counts() {
        let p = validate_presentation(ex41_data()).unwrap();
        let gens = p.relation_generators();
        let count = |k| gens.iter().filter(|g| g.kind == k).count();
        assert_eq!(count(RelationKind::ZeroBadPair), 0);
        assert_eq!(count(RelationKind::DeformedBadPair), 6);
        assert_eq!(count(RelationKind::SocleCommutation), 6);
        assert_eq!(count(RelationKind::Overflow), 6);
        let alpha = p.quiver().arrow("alpha").unwrap();
        let g = gens.iter().find(|g| g.kind == RelationKind::DeformedBadPair && g.arrow == alpha).unwrap();
        assert_eq!(g.display(p.quiver()), "(alpha beta) + (alpha eta beta mu)");
    }

    #[test]
    fn example_4_2_paths_and_generators() {
        let p = validate_presentation(ex42_data()).unwrap();
        let a = |s| p.quiver().arrow(s).unwrap();
        assert_eq!(word(&p, &p.cycle_b(a("xi"))), "xi");
        assert_eq!(word(&p, &p.subpath_c(a("beta")).unwrap()), "beta");
        assert_eq!(word(&p, &p.path_d(a("beta")).unwrap()), "beta gamma alpha eta beta");
        assert_eq!(word(&p, &p.path_d(a("eta")).unwrap()), "eta beta gamma alpha ".repeat(3).trim());
        assert!(matches!(p.subpath_c(a("alpha")), Err(PresentationError::NotAdmissible(_))));
        let gens = p.relation_generators();
        let count = |k| gens.iter().filter(|g| g.kind == k).count();
        assert_eq!(count(RelationKind::ZeroBadPair), 3);
        assert_eq!(count(RelationKind::DeformedBadPair), 3);
        assert_eq!(count(RelationKind::SocleCommutation), 6);
        assert_eq!(count(RelationKind::Overflow), 6);
        let vl: Vec<_> = p.virtual_loops().into_iter().map(|x| p.quiver().arrow_id(x).to_string()).collect();
        assert_eq!(vl, ["xi"]);
        assert_eq!(p.dimension(), 51);
    }

    #[test]
    fn rank_bound_violation() {
        let mut data = ex42_data();
        data.r.insert("eta".into(), 4);
        let err = validate_presentation(data).unwrap_err();
        assert_eq!(
            err.into_vec(),
            vec![PresentationViolation::RankExceedsWeight { arrow: "eta".into(), rank: 4, weight: 3 }]
        );
    }

    #[test]
    fn condition_one_violation() {
        let mut data = ex42_data();
        data.d.insert("gamma".into(), q("5"));
        let err = validate_presentation(data).unwrap_err();
        assert_eq!(
            err.into_vec(),
            vec![PresentationViolation::ConditionOne { arrow: "xi".into(), preimage: "gamma".into() }]
        );
    }

    fn local(f: &[(&str, &str)]) -> BiserialQuiver {
        let quiver = Quiver::new(["1"], [("alpha", "1", "1"), ("beta", "1", "1")]).unwrap();
        let f = f.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        validate_biserial_quiver(quiver, &f).unwrap()
    }

    #[test]
    fn condition_two_violation_on_example_3_5() {
        let bq = local(&[("alpha", "alpha"), ("beta", "beta")]);
        let data = PresentationData {
            bq,
            field: FieldSpec::Rationals,
            m: strs(&[("alpha", 2)]),
            r: strs(&[("alpha", 1), ("beta", 1)]),
            c: strs(&[("alpha", q("1")), ("beta", q("1"))]),
            d: strs(&[("alpha", q("2")), ("beta", q("1/2"))]),
        };
        let err = validate_presentation(data).unwrap_err();
        assert_eq!(
            err.into_vec(),
            vec![PresentationViolation::ConditionTwo { first: "alpha".into(), second: "beta".into() }]
        );
    }

    #[test]
    fn example_3_6_paths() {
        let bq = local(&[("alpha", "beta"), ("beta", "alpha")]);
        let p = special_presentation(
            bq,
            FieldSpec::Rationals,
            strs(&[("alpha", 3), ("beta", 2)]),
            strs(&[("alpha", q("1")), ("beta", q("1"))]),
        )
        .unwrap();
        let alpha = p.quiver().arrow("alpha").unwrap();
        assert_eq!(word(&p, &p.cycle_b(alpha)), "alpha alpha alpha");
        assert_eq!(p.dimension(), 5);
        assert!(p.special_biserial_check().holds());
    }

    #[test]
    fn sub_socle_deformations_are_listed() {
        let bq = local(&[("alpha", "beta"), ("beta", "alpha")]);
        let data = |r_alpha: u32| PresentationData {
            bq: bq.clone(),
            field: FieldSpec::Rationals,
            m: strs(&[("alpha", 2), ("beta", 2)]),
            r: strs(&[("alpha", r_alpha), ("beta", 2)]),
            c: strs(&[("alpha", q("1")), ("beta", q("1"))]),
            d: strs(&[("alpha", q("3")), ("beta", q("0"))]),
        };
        let low = validate_presentation(data(1)).unwrap();
        assert_eq!(low.sub_socle_deformations(), vec![low.quiver().arrow("alpha").unwrap()]);
        let top = validate_presentation(data(2)).unwrap();
        assert!(top.sub_socle_deformations().is_empty());
        assert_eq!(validate_presentation(ex41_data()).unwrap().sub_socle_deformations().len(), 4);
    }

    #[test]
    fn missing_weight_is_reported() {
        let bq = local(&[("alpha", "beta"), ("beta", "alpha")]);
        let err = special_presentation(
            bq,
            FieldSpec::Rationals,
            strs(&[("alpha", 1)]),
            strs(&[("alpha", q("1")), ("beta", q("1"))]),
        )
        .unwrap_err();
        assert_eq!(err.into_vec(), vec![PresentationViolation::MissingWeight { orbit: "beta".into() }]);
    }

    #[test]
    fn border_presentation() {
        let bq = triangle(&[
            ("alpha", "beta"),
            ("beta", "gamma"),
            ("gamma", "alpha"),
            ("xi", "xi"),
            ("eta", "eta"),
            ("mu", "mu"),
        ]);
        let b = strs(&[("1", q("1")), ("2", q("0")), ("3", q("0"))]);
        let p = presentation_from_border(bq.clone(), FieldSpec::Rationals, strs(&[("alpha", 2)]), &b).unwrap();
        let a = |s| p.quiver().arrow(s).unwrap();
        assert_eq!(p.deformation(a("xi")), &q("1"));
        for s in ["eta", "mu", "alpha", "beta", "gamma"] {
            assert!(p.deformation(a(s)).is_zero());
            assert_eq!(p.rank(a(s)), Some(1));
        }
        assert_eq!(p.rank(a("xi")), Some(2));
        assert!(p.quiver().arrows().all(|x| p.parameter(x).is_one()));

        let zero = strs(&[("1", q("0")), ("2", q("0")), ("3", q("0"))]);
        let p0 = presentation_from_border(bq, FieldSpec::Rationals, strs(&[("alpha", 2)]), &zero).unwrap();
        assert!(p0.is_special());

        let err = presentation_from_border(
            local(&[("alpha", "beta"), ("beta", "alpha")]),
            FieldSpec::Rationals,
            strs(&[("alpha", 1), ("beta", 1)]),
            &BTreeMap::new(),
        )
        .unwrap_err();
        assert_eq!(err, PresentationError::EmptyBorder);
    }

    #[test]
    fn zero_d_ranks_compare_equal() {
        let mut other = ex41_data();
        other.r.insert("eta".into(), 1);
        other.r.insert("mu".into(), 1);
        assert_eq!(validate_presentation(ex41_data()).unwrap(), validate_presentation(other).unwrap());
    }
}
