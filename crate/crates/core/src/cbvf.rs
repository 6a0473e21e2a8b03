//! Bisected quivers with a function `h` on bad length-two paths, and their
//! normalization into a presentation.
//!
//! Pairs through a vertex with a single outgoing arrow never count as bad:
//! such vertices receive an extra loop during 2-regularization, and the
//! permutation there is fixed by the loop alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{enumerate_basis, weak_symmetry_report};
use crate::diagnostics::Diagnostics;
use crate::field::{FieldSpec, Scalar};
use crate::presentation::{validate_presentation, Presentation, PresentationData, PresentationViolation};
use crate::quiver::{
    admissible_arrows, derive_orbits, validate_biserial_quiver, Arrow, BiserialQuiver, BiserialViolation, Quiver,
    Vertex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_int(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BisectionViolation {
    UnknownArrow { map: &'static str, arrow: String },
    MissingSign { map: &'static str, arrow: String },
    EqualSigma { first: String, second: String },
    EqualTau { first: String, second: String },
    DegreeTooLarge { vertex: String, outgoing: usize, incoming: usize },
    DegreeMismatch { vertex: String, outgoing: usize, incoming: usize },
    Disconnected,
}

impl fmt::Display for BisectionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BisectionViolation::*;
        match self {
            UnknownArrow { map, arrow } => write!(f, "{map}: unknown arrow `{arrow}`"),
            MissingSign { map, arrow } => write!(f, "{map}: missing sign for arrow `{arrow}`"),
            EqualSigma { first, second } => {
                write!(f, "sigma: arrows `{first}` and `{second}` share a source and a sign")
            }
            EqualTau { first, second } => write!(f, "tau: arrows `{first}` and `{second}` share a target and a sign"),
            DegreeTooLarge { vertex, outgoing, incoming } => {
                write!(f, "vertex `{vertex}` has {outgoing} outgoing and {incoming} incoming arrows (at most 2 each)")
            }
            DegreeMismatch { vertex, outgoing, incoming } => write!(
                f,
                "vertex `{vertex}` has {outgoing} outgoing but {incoming} incoming arrows (need equal, 1 or 2)"
            ),
            Disconnected => write!(f, "quiver is not connected"),
        }
    }
}

/// A quiver with a bisection `(σ, τ)`. Every vertex has equal in- and
/// out-degree, 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisectedQuiver {
    quiver: Quiver,
    sigma: Vec<Sign>,
    tau: Vec<Sign>,
    delta: BTreeSet<Vertex>,
}

pub fn validate_bisected_quiver(
    quiver: Quiver,
    sigma: &BTreeMap<String, i64>,
    tau: &BTreeMap<String, i64>,
) -> Result<BisectedQuiver, Diagnostics<BisectionViolation>> {
    use BisectionViolation as V;
    let mut violations = Vec::new();
    let mut signs = |map: &'static str, values: &BTreeMap<String, i64>| -> Vec<Sign> {
        for k in values.keys() {
            if quiver.arrow(k).is_none() {
                violations.push(V::UnknownArrow { map, arrow: k.clone() });
            }
        }
        quiver
            .arrows()
            .map(|a| {
                let id = quiver.arrow_id(a);
                match values.get(id).and_then(|&v| Sign::from_int(v)) {
                    Some(s) => s,
                    None => {
                        violations.push(V::MissingSign { map, arrow: id.to_string() });
                        Sign::Plus
                    }
                }
            })
            .collect()
    };
    let sigma = signs("sigma", sigma);
    let tau = signs("tau", tau);
    let mut delta = BTreeSet::new();
    for v in quiver.vertices() {
        let (outs, ins) = (quiver.out_arrows(v), quiver.in_arrows(v));
        let name = quiver.vertex_id(v).to_string();
        if outs.len() > 2 || ins.len() > 2 {
            violations.push(V::DegreeTooLarge { vertex: name, outgoing: outs.len(), incoming: ins.len() });
            continue;
        }
        if outs.len() != ins.len() || outs.is_empty() {
            violations.push(V::DegreeMismatch { vertex: name, outgoing: outs.len(), incoming: ins.len() });
            continue;
        }
        if outs.len() == 1 {
            delta.insert(v);
        }
        if outs.len() == 2 && sigma[outs[0].index()] == sigma[outs[1].index()] {
            violations.push(V::EqualSigma {
                first: quiver.arrow_id(outs[0]).into(),
                second: quiver.arrow_id(outs[1]).into(),
            });
        }
        if ins.len() == 2 && tau[ins[0].index()] == tau[ins[1].index()] {
            violations
                .push(V::EqualTau { first: quiver.arrow_id(ins[0]).into(), second: quiver.arrow_id(ins[1]).into() });
        }
    }
    if !quiver.is_connected() {
        violations.push(V::Disconnected);
    }
    Diagnostics::check(violations)?;
    Ok(BisectedQuiver { quiver, sigma, tau, delta })
}

impl BisectedQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn sigma(&self, a: Arrow) -> Sign {
        self.sigma[a.index()]
    }

    pub fn tau(&self, a: Arrow) -> Sign {
        self.tau[a.index()]
    }

    /// Vertices with a single outgoing arrow.
    pub fn delta(&self) -> &BTreeSet<Vertex> {
        &self.delta
    }

    /// `αγ` is bad when it passes through a vertex with two outgoing arrows
    /// and `τ(α) ≠ σ(γ)`.
    pub fn is_bad_pair(&self, a: Arrow, b: Arrow) -> bool {
        let q = &self.quiver;
        q.target(a) == q.source(b) && !self.delta.contains(&q.target(a)) && self.tau(a) != self.sigma(b)
    }

    /// A composable word without bad length-two subpaths.
    pub fn is_good(&self, word: &[Arrow]) -> bool {
        word.windows(2).all(|w| self.quiver.target(w[0]) == self.quiver.source(w[1]) && !self.is_bad_pair(w[0], w[1]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathClassification {
    /// The bad pairs, ordered by first arrow.
    pub bad: Vec<(Arrow, Arrow)>,
    pub good: Vec<(Arrow, Arrow)>,
}

pub fn classify_paths(bq: &BisectedQuiver) -> PathClassification {
    let q = bq.quiver();
    let mut out = PathClassification { bad: Vec::new(), good: Vec::new() };
    for a in q.arrows() {
        for b in q.out_arrows(q.target(a)) {
            if bq.is_bad_pair(a, b) {
                out.bad.push((a, b));
            } else {
                out.good.push((a, b));
            }
        }
    }
    out
}

/// Value of `h` on one bad pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HValue {
    Zero,
    /// `coefficient · δ₁…δ_r`.
    Word {
        coefficient: Scalar,
        word: Vec<Arrow>,
    },
}

pub type HFunction = BTreeMap<(Arrow, Arrow), HValue>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CbvfViolation {
    MissingPair {
        pair: String,
    },
    NotBadPair {
        pair: String,
    },
    ZeroCoefficient {
        pair: String,
    },
    EmptyWord {
        pair: String,
    },
    NotComposable {
        pair: String,
    },
    NotGood {
        pair: String,
    },
    WrongEndpoint {
        pair: String,
    },
    EndsWithPairedArrow {
        pair: String,
    },
    /// Two single-arrow values with reciprocal coefficients.
    ReciprocalValues {
        first: String,
        second: String,
    },
}

impl fmt::Display for CbvfViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CbvfViolation::*;
        match self {
            MissingPair { pair } => write!(f, "h: missing value for bad pair `{pair}`"),
            NotBadPair { pair } => write!(f, "h: `{pair}` is not a bad pair"),
            ZeroCoefficient { pair } => write!(f, "(C1) h_{pair}: coefficient must be nonzero (use zero instead)"),
            EmptyWord { pair } => write!(f, "(C1) h_{pair}: word must contain at least one arrow"),
            NotComposable { pair } => write!(f, "(C1) h_{pair}: word is not a path continuing the first arrow"),
            NotGood { pair } => write!(f, "(C1) h_{pair}: the first arrow followed by the word is not good"),
            WrongEndpoint { pair } => write!(f, "(C1) h_{pair}: word must end at the target of the second arrow"),
            EndsWithPairedArrow { pair } => write!(f, "(C1) h_{pair}: word must not end with the second arrow"),
            ReciprocalValues { first, second } => {
                write!(f, "(C2) h_{first} and h_{second} are single arrows with coefficient product 1")
            }
        }
    }
}

fn pair_name(q: &Quiver, (a, b): (Arrow, Arrow)) -> String {
    format!("{} {}", q.arrow_id(a), q.arrow_id(b))
}

fn check_keys(bq: &BisectedQuiver, h: &HFunction, violations: &mut Vec<CbvfViolation>) {
    let q = bq.quiver();
    let bad: BTreeSet<(Arrow, Arrow)> = classify_paths(bq).bad.into_iter().collect();
    for &pair in &bad {
        if !h.contains_key(&pair) {
            violations.push(CbvfViolation::MissingPair { pair: pair_name(q, pair) });
        }
    }
    for &pair in h.keys() {
        if !bad.contains(&pair) {
            violations.push(CbvfViolation::NotBadPair { pair: pair_name(q, pair) });
        }
    }
}

fn check_c1(bq: &BisectedQuiver, pair: (Arrow, Arrow), value: &HValue) -> Option<CbvfViolation> {
    use CbvfViolation as V;
    let q = bq.quiver();
    let HValue::Word { coefficient, word } = value else {
        return None;
    };
    let name = pair_name(q, pair);
    if coefficient.is_zero() {
        return Some(V::ZeroCoefficient { pair: name });
    }
    let Some(&last) = word.last() else {
        return Some(V::EmptyWord { pair: name });
    };
    let mut full = vec![pair.0];
    full.extend_from_slice(word);
    if full.windows(2).any(|w| q.target(w[0]) != q.source(w[1])) {
        return Some(V::NotComposable { pair: name });
    }
    if !bq.is_good(&full) {
        return Some(V::NotGood { pair: name });
    }
    if q.target(last) != q.target(pair.1) {
        return Some(V::WrongEndpoint { pair: name });
    }
    if last == pair.1 {
        return Some(V::EndsWithPairedArrow { pair: name });
    }
    None
}

/// Checks that `h` is keyed by the bad pairs and satisfies (C1) and (C2).
pub fn validate_cbvf(bq: &BisectedQuiver, h: &HFunction) -> Result<(), Diagnostics<CbvfViolation>> {
    let q = bq.quiver();
    let mut violations = Vec::new();
    check_keys(bq, h, &mut violations);
    for (&pair, value) in h {
        violations.extend(check_c1(bq, pair, value));
    }
    let singles: Vec<((Arrow, Arrow), Arrow, &Scalar)> = h
        .iter()
        .filter_map(|(&pair, v)| match v {
            HValue::Word { coefficient, word } if word.len() == 1 => Some((pair, word[0], coefficient)),
            _ => None,
        })
        .collect();
    for (i, &((a, c), delta, d1)) in singles.iter().enumerate() {
        for &((b, dd), gamma, d2) in &singles[i + 1..] {
            if delta == dd && gamma == c && (d1 * d2).is_one() {
                violations.push(CbvfViolation::ReciprocalValues {
                    first: pair_name(q, (a, c)),
                    second: pair_name(q, (b, dd)),
                });
            }
        }
    }
    Diagnostics::check(violations)
}

/// The 2-regular quiver with one extra loop per single-degree vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularized {
    pub biserial: BiserialQuiver,
    /// Added loop per single-degree vertex, as ids of the new quiver.
    pub loops: BTreeMap<String, String>,
}

fn fresh_loop_id(q: &Quiver, vertex: &str, taken: &BTreeSet<String>) -> String {
    let mut id = format!("eta_{vertex}");
    while q.arrow(&id).is_some() || taken.contains(&id) {
        id.push('\'');
    }
    id
}

pub fn two_regularize(bq: &BisectedQuiver) -> Regularized {
    let q = bq.quiver();
    let mut loops = BTreeMap::new();
    let mut taken = BTreeSet::new();
    for &v in bq.delta() {
        let id = fresh_loop_id(q, q.vertex_id(v), &taken);
        taken.insert(id.clone());
        loops.insert(q.vertex_id(v).to_string(), id);
    }
    let mut arrows: Vec<(String, String, String)> = q
        .arrows()
        .map(|a| {
            (q.arrow_id(a).to_string(), q.vertex_id(q.source(a)).to_string(), q.vertex_id(q.target(a)).to_string())
        })
        .collect();
    arrows.extend(loops.iter().map(|(v, id)| (id.clone(), v.clone(), v.clone())));
    let vertices: Vec<String> = q.vertices().map(|v| q.vertex_id(v).to_string()).collect();
    let quiver = Quiver::new(vertices, arrows).expect("ids stay unique");

    let mut f = BTreeMap::new();
    for a in q.arrows() {
        let t = q.target(a);
        let image = if bq.delta().contains(&t) {
            loops[q.vertex_id(t)].clone()
        } else {
            let bad = q.out_arrows(t).into_iter().find(|&b| bq.is_bad_pair(a, b)).expect("one bad continuation");
            q.arrow_id(bad).to_string()
        };
        f.insert(q.arrow_id(a).to_string(), image);
    }
    for (v, id) in &loops {
        let out = q.out_arrows(q.vertex(v).expect("vertex"))[0];
        f.insert(id.clone(), q.arrow_id(out).to_string());
    }
    let biserial = validate_biserial_quiver(quiver, &f)
        .unwrap_or_else(|d: Diagnostics<BiserialViolation>| panic!("2-regularization produced an invalid quiver: {d}"));
    Regularized { biserial, loops }
}

/// Weights and socle scalars supplied with the bisected data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SocleSpec {
    /// Weight per `g`-orbit, keyed by any arrow of the orbit.
    pub multiplicities: BTreeMap<String, u32>,
    /// Per vertex with two outgoing arrows, the scalar of each.
    pub scalars: BTreeMap<String, BTreeMap<String, Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CbvfError {
    #[error("{0}")]
    Conditions(Diagnostics<CbvfViolation>),
    #[error("h_{pair}: the word does not follow the g-orbit of its first arrow")]
    WordLeavesOrbit { pair: String },
    #[error(
        "h_{pair}: a word of length {len} is not (full cycles of length {n}) followed by a prefix of length {c_len}"
    )]
    WordNotFactoring { pair: String, len: usize, c_len: usize, n: usize },
    #[error("h_{pair}: nonzero value on a non-admissible arrow")]
    NotAdmissible { pair: String },
    #[error("h_{pair}: rank {rank} exceeds the weight {weight}")]
    RankExceedsWeight { pair: String, rank: u32, weight: u32 },
    #[error("multiplicity: unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("multiplicity: missing for the g-orbit of `{0}`")]
    MissingMultiplicity(String),
    #[error("multiplicity: values {values:?} disagree along the g-orbit of `{orbit}`")]
    InconsistentMultiplicity { orbit: String, values: Vec<u32> },
    #[error("socle scalars at vertex `{vertex}`: {reason}")]
    SocleScalars { vertex: String, reason: String },
    #[error("{0}")]
    Presentation(Diagnostics<PresentationViolation>),
}

/// Normalizes the bisected data into a presentation on the 2-regularized
/// quiver.
pub fn extract_presentation(
    bq: &BisectedQuiver,
    h: &HFunction,
    socle: &SocleSpec,
    field: FieldSpec,
) -> Result<Presentation, CbvfError> {
    let q = bq.quiver();
    let mut violations = Vec::new();
    check_keys(bq, h, &mut violations);
    for (&pair, value) in h {
        violations.extend(check_c1(bq, pair, value));
    }
    Diagnostics::check(violations).map_err(CbvfError::Conditions)?;

    let reg = two_regularize(bq);
    let rb = &reg.biserial;
    let rq = rb.quiver();
    let orbits = derive_orbits(rb);
    let omega = admissible_arrows(rb, &orbits);
    let lift = |a: Arrow| rq.arrow(q.arrow_id(a)).expect("original arrows survive");
    let loop_ids: BTreeSet<&str> = reg.loops.values().map(String::as_str).collect();

    // weights
    let mut given: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
    for (id, &m) in &socle.multiplicities {
        let a = rq.arrow(id).ok_or_else(|| CbvfError::UnknownArrow(id.clone()))?;
        given.entry(orbits.orbit_of(a).index()).or_default().insert(m);
    }
    let mut m = BTreeMap::new();
    for o in orbits.orbit_ids() {
        let rep = orbits.representative(o);
        let rep_id = rq.arrow_id(rep).to_string();
        let forced = orbits.orbit(o).iter().all(|&a| loop_ids.contains(rq.arrow_id(a)));
        let values = given.get(&o.index());
        let weight = match (forced, values) {
            (true, None) => 1,
            (true, Some(v)) if v.len() == 1 && v.contains(&1) => 1,
            (_, Some(v)) if v.len() > 1 || forced => {
                return Err(CbvfError::InconsistentMultiplicity {
                    orbit: rep_id,
                    values: v.iter().copied().chain(forced.then_some(1)).collect(),
                })
            }
            (_, Some(v)) => *v.iter().next().expect("nonempty"),
            (false, None) => return Err(CbvfError::MissingMultiplicity(rep_id)),
        };
        m.insert(rep_id, weight);
    }
    let weight_of = |a: Arrow| m[rq.arrow_id(orbits.representative(orbits.orbit_of(a)))];

    // ranks and deformations
    let mut r = BTreeMap::new();
    let mut d = BTreeMap::new();
    for &a in &omega {
        let id = rq.arrow_id(a).to_string();
        r.insert(id.clone(), 1);
        d.insert(id, Scalar::zero(field));
    }
    for (&pair, value) in h {
        let name = pair_name(q, pair);
        let HValue::Word { coefficient, word } = value else {
            continue;
        };
        let a = lift(pair.0);
        if !omega.contains(&a) {
            return Err(CbvfError::NotAdmissible { pair: name });
        }
        let mut full = vec![a];
        full.extend(word.iter().map(|&x| lift(x)));
        if full != orbits.g_walk(a, full.len()) {
            return Err(CbvfError::WordLeavesOrbit { pair: name });
        }
        let n = orbits.n(a);
        let c_len = orbits.steps_between(a, orbits.g_inv(rb.f(rb.f(a)))).expect("admissible") + 1;
        if full.len() < c_len || !(full.len() - c_len).is_multiple_of(n) {
            return Err(CbvfError::WordNotFactoring { pair: name, len: full.len(), c_len, n });
        }
        let rank = ((full.len() - c_len) / n + 1) as u32;
        let weight = weight_of(a);
        if rank > weight {
            return Err(CbvfError::RankExceedsWeight { pair: name, rank, weight });
        }
        let id = rq.arrow_id(a).to_string();
        r.insert(id.clone(), rank);
        d.insert(id, coefficient.clone());
    }

    // parameters
    let mut c: BTreeMap<String, Scalar> =
        rq.arrows().map(|a| (rq.arrow_id(a).to_string(), Scalar::one(field))).collect();
    for (vertex, scalars) in &socle.scalars {
        let err = |reason: &str| CbvfError::SocleScalars { vertex: vertex.clone(), reason: reason.into() };
        let v = q.vertex(vertex).ok_or_else(|| err("unknown vertex"))?;
        if bq.delta().contains(&v) {
            return Err(err("the vertex has a single outgoing arrow; its scalars are fixed to 1"));
        }
        let outs: BTreeSet<String> = q.out_arrows(v).into_iter().map(|a| q.arrow_id(a).to_string()).collect();
        if scalars.keys().cloned().collect::<BTreeSet<_>>() != outs {
            return Err(err("scalars must be given for exactly the two outgoing arrows"));
        }
        for (arrow, s) in scalars {
            c.insert(arrow.clone(), s.clone());
        }
    }

    validate_presentation(PresentationData { bq: rb.clone(), field, m, r, c, d }).map_err(CbvfError::Presentation)
}

/// Outcome of rebuilding the algebra and reading `h` back.
#[derive(Clone, Debug)]
pub struct RoundTripReport {
    pub dimension: usize,
    pub cartan: Vec<Vec<usize>>,
    pub weakly_symmetric: bool,
    pub recovered: HFunction,
    /// Bad pairs whose recovered value differs from the input.
    pub mismatches: Vec<(Arrow, Arrow)>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn roundtrip_report(bq: &BisectedQuiver, h: &HFunction, extracted: &Presentation) -> RoundTripReport {
    let table = enumerate_basis(extracted);
    let q = bq.quiver();
    let rq = extracted.quiver();
    let mut recovered = HFunction::new();
    for pair in classify_paths(bq).bad {
        let a = rq.arrow(q.arrow_id(pair.0)).expect("original arrows survive");
        let d = extracted.deformation(a);
        let value = if d.is_zero() {
            HValue::Zero
        } else {
            let path = extracted.path_d(a).expect("nonzero d lives on admissible arrows");
            let word = path.arrows()[1..]
                .iter()
                .map(|&x| q.arrow(rq.arrow_id(x)).expect("g-walks avoid the added loops"))
                .collect();
            HValue::Word { coefficient: d.clone(), word }
        };
        recovered.insert(pair, value);
    }
    let mismatches = recovered.iter().filter(|(k, v)| h.get(k) != Some(v)).map(|(&k, _)| k).collect();
    RoundTripReport {
        dimension: table.dimension(),
        cartan: table.cartan_matrix(),
        weakly_symmetric: weak_symmetry_report(&table).holds(),
        recovered,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signs(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn triangle() -> Quiver {
        Quiver::new(
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
        .unwrap()
    }

    fn ex41_bisected() -> BisectedQuiver {
        let sigma = signs(&[("alpha", 1), ("beta", 1), ("gamma", 1), ("xi", -1), ("eta", -1), ("mu", -1)]);
        let tau = signs(&[("alpha", -1), ("beta", -1), ("gamma", -1), ("xi", 1), ("eta", 1), ("mu", 1)]);
        validate_bisected_quiver(triangle(), &sigma, &tau).unwrap()
    }

    fn word(q: &Quiver, s: &str) -> Vec<Arrow> {
        s.split_whitespace().map(|x| q.arrow(x).unwrap()).collect()
    }

    fn q(s: &str) -> Scalar {
        Scalar::parse(s, FieldSpec::Rationals).unwrap()
    }

    fn ex41_h(bq: &BisectedQuiver) -> HFunction {
        let qv = bq.quiver();
        let a = |s| qv.arrow(s).unwrap();
        let w = |c: &str, s: &str| HValue::Word { coefficient: q(c), word: word(qv, s) };
        BTreeMap::from([
            ((a("alpha"), a("beta")), w("-1", "eta beta mu")),
            ((a("beta"), a("gamma")), w("1", "mu gamma xi alpha eta beta mu gamma xi")),
            ((a("gamma"), a("alpha")), w("-1", "xi alpha eta")),
            ((a("xi"), a("xi")), w("1", "alpha eta beta mu gamma")),
            ((a("eta"), a("eta")), HValue::Zero),
            ((a("mu"), a("mu")), HValue::Zero),
        ])
    }

    fn ex41_socle() -> SocleSpec {
        let sc = |pairs: &[(&str, &str)]| pairs.iter().map(|(k, v)| (k.to_string(), q(v))).collect();
        SocleSpec {
            multiplicities: BTreeMap::from([("alpha".to_string(), 2)]),
            scalars: BTreeMap::from([
                ("1".to_string(), sc(&[("alpha", "-1"), ("xi", "1")])),
                ("2".to_string(), sc(&[("beta", "-1"), ("eta", "1")])),
                ("3".to_string(), sc(&[("gamma", "1"), ("mu", "1")])),
            ]),
        }
    }

    #[test]
    fn example_4_1_bad_pairs() {
        let bq = ex41_bisected();
        let qv = bq.quiver();
        let bad: Vec<String> = classify_paths(&bq).bad.into_iter().map(|p| pair_name(qv, p)).collect();
        assert_eq!(bad, ["alpha beta", "beta gamma", "eta eta", "gamma alpha", "mu mu", "xi xi"]);
        assert!(bq.delta().is_empty());
    }

    #[test]
    fn two_cycle_has_no_bad_pairs_and_gets_loops() {
        let quiver = Quiver::new(["1", "2"], [("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let bq =
            validate_bisected_quiver(quiver, &signs(&[("a", 1), ("b", 1)]), &signs(&[("a", -1), ("b", 1)])).unwrap();
        assert!(classify_paths(&bq).bad.is_empty());
        let reg = two_regularize(&bq);
        let f = reg.biserial.f_map();
        assert_eq!(f["eta_1"], "a");
        assert_eq!(f["b"], "eta_1");
        assert_eq!(f["eta_2"], "b");
        assert_eq!(f["a"], "eta_2");
    }

    #[test]
    fn bisection_errors() {
        let err = validate_bisected_quiver(
            triangle(),
            &signs(&[("alpha", 1), ("beta", 1), ("gamma", 1), ("xi", 1), ("eta", -1), ("mu", -1)]),
            &signs(&[("alpha", -1), ("beta", -1), ("gamma", -1), ("xi", 1), ("eta", 1), ("mu", 1)]),
        )
        .unwrap_err();
        assert_eq!(err.into_vec(), vec![BisectionViolation::EqualSigma { first: "alpha".into(), second: "xi".into() }]);

        let lopsided = Quiver::new(["1", "2"], [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "1")]).unwrap();
        let err = validate_bisected_quiver(
            lopsided,
            &signs(&[("a", 1), ("b", 1), ("c", -1)]),
            &signs(&[("a", 1), ("b", 1), ("c", -1)]),
        )
        .unwrap_err();
        assert!(err.iter().any(|v| matches!(v, BisectionViolation::DegreeMismatch { .. })));
    }

    #[test]
    fn example_4_1_regularization_recovers_f() {
        let reg = two_regularize(&ex41_bisected());
        assert!(reg.loops.is_empty());
        let f = reg.biserial.f_map();
        assert_eq!(f["alpha"], "beta");
        assert_eq!(f["beta"], "gamma");
        assert_eq!(f["gamma"], "alpha");
        for l in ["xi", "eta", "mu"] {
            assert_eq!(f[l], l);
        }
    }

    #[test]
    fn example_4_1_conditions() {
        let bq = ex41_bisected();
        let h = ex41_h(&bq);
        validate_cbvf(&bq, &h).unwrap();

        let qv = bq.quiver();
        let mut bad = h.clone();
        bad.insert(
            (qv.arrow("alpha").unwrap(), qv.arrow("beta").unwrap()),
            HValue::Word { coefficient: q("1"), word: word(qv, "eta beta") },
        );
        let err = validate_cbvf(&bq, &bad).unwrap_err();
        assert_eq!(err.into_vec(), vec![CbvfViolation::EndsWithPairedArrow { pair: "alpha beta".into() }]);
    }

    #[test]
    fn reciprocal_single_arrows() {
        // one vertex, loops a and b, both squares bad
        let quiver = Quiver::new(["1"], [("a", "1", "1"), ("b", "1", "1")]).unwrap();
        let bq =
            validate_bisected_quiver(quiver, &signs(&[("a", 1), ("b", -1)]), &signs(&[("a", -1), ("b", 1)])).unwrap();
        let qv = bq.quiver();
        let (a, b) = (qv.arrow("a").unwrap(), qv.arrow("b").unwrap());
        let h = BTreeMap::from([
            ((a, a), HValue::Word { coefficient: q("2"), word: vec![b] }),
            ((b, b), HValue::Word { coefficient: q("1/2"), word: vec![a] }),
        ]);
        let err = validate_cbvf(&bq, &h).unwrap_err();
        assert_eq!(err.into_vec(), vec![CbvfViolation::ReciprocalValues { first: "a a".into(), second: "b b".into() }]);
        let socle = SocleSpec { multiplicities: BTreeMap::from([("a".to_string(), 1)]), ..Default::default() };
        let err = extract_presentation(&bq, &h, &socle, FieldSpec::Rationals).unwrap_err();
        let CbvfError::Presentation(d) = err else { panic!("expected presentation failure") };
        assert!(d.iter().any(|v| matches!(v, PresentationViolation::ConditionTwo { .. })));
    }

    #[test]
    fn example_4_1_extraction() {
        let bq = ex41_bisected();
        let h = ex41_h(&bq);
        let p = extract_presentation(&bq, &h, &ex41_socle(), FieldSpec::Rationals).unwrap();
        let a = |s| p.quiver().arrow(s).unwrap();
        for (s, d, r) in
            [("alpha", "-1", 1), ("beta", "1", 2), ("gamma", "-1", 1), ("xi", "1", 1), ("eta", "0", 1), ("mu", "0", 1)]
        {
            assert_eq!(p.deformation(a(s)), &q(d), "d_{s}");
            assert_eq!(p.rank(a(s)), Some(r), "r_{s}");
        }
        assert_eq!(p.parameter(a("alpha")), &q("-1"));
        let report = roundtrip_report(&bq, &h, &p);
        assert!(report.passed());
        assert_eq!(report.dimension, 72);
        assert_eq!(report.cartan, vec![vec![8, 8, 8]; 3]);
        assert!(report.weakly_symmetric);

        let mut corrupted = h.clone();
        let key = (bq.quiver().arrow("alpha").unwrap(), bq.quiver().arrow("beta").unwrap());
        if let Some(HValue::Word { coefficient, .. }) = corrupted.get_mut(&key) {
            *coefficient = q("-2");
        }
        assert_eq!(roundtrip_report(&bq, &corrupted, &p).mismatches, vec![key]);
    }

    #[test]
    fn missing_multiplicity() {
        let bq = ex41_bisected();
        let h = ex41_h(&bq);
        let err = extract_presentation(&bq, &h, &SocleSpec::default(), FieldSpec::Rationals).unwrap_err();
        assert_eq!(err, CbvfError::MissingMultiplicity("alpha".into()));
    }

    #[test]
    fn two_cycle_import() {
        let quiver = Quiver::new(["1", "2"], [("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let bq =
            validate_bisected_quiver(quiver, &signs(&[("a", 1), ("b", 1)]), &signs(&[("a", 1), ("b", 1)])).unwrap();
        let socle = SocleSpec { multiplicities: BTreeMap::from([("a".to_string(), 1)]), ..Default::default() };
        let p = extract_presentation(&bq, &HFunction::new(), &socle, FieldSpec::Rationals).unwrap();
        let report = roundtrip_report(&bq, &HFunction::new(), &p);
        assert!(report.passed());
        assert_eq!(report.dimension, 6);
        assert_eq!(enumerate_basis(&p).projective_dimensions(), vec![3, 3]);
        assert!(report.weakly_symmetric);
    }
}
