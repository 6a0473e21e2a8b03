//! Quivers, biserial quivers `(Q, f)` and the combinatorics derived from `f`:
//! the involution `ᾱ`, the permutation `g = (·̄) ∘ f`, its orbits, the
//! admissible arrows and the border.
//!
//! Arrows are stored sorted by id, so arrow indices follow the lexicographic
//! order on ids. Every canonical choice (orbit representatives, the socle
//! representative at a vertex) picks the smallest index.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::diagnostics::Diagnostics;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex(usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow(usize);

impl Arrow {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ArrowData {
    id: String,
    source: Vertex,
    target: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("quiver has no vertices")]
    NoVertices,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
}

/// A finite quiver. Vertices keep their declaration order; arrows are sorted
/// by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<ArrowData>,
    vertex_ix: HashMap<String, Vertex>,
    arrow_ix: HashMap<String, Arrow>,
}

impl Quiver {
    pub fn new<V, I, A, S, T>(vertices: V, arrows: I) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        I: IntoIterator<Item = (A, S, T)>,
        A: Into<String>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(QuiverError::NoVertices);
        }
        let mut vertex_ix = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_ix.insert(v.clone(), Vertex(i)).is_some() {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let mut data = Vec::new();
        for (id, s, t) in arrows {
            let id: String = id.into();
            let lookup = |name: &str| {
                vertex_ix
                    .get(name)
                    .copied()
                    .ok_or_else(|| QuiverError::UnknownVertex { arrow: id.clone(), vertex: name.to_string() })
            };
            let source = lookup(s.as_ref())?;
            let target = lookup(t.as_ref())?;
            data.push(ArrowData { id, source, target });
        }
        data.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = data.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(QuiverError::DuplicateArrow(w[0].id.clone()));
        }
        let arrow_ix = data.iter().enumerate().map(|(i, a)| (a.id.clone(), Arrow(i))).collect();
        Ok(Quiver { vertices, arrows: data, vertex_ix, arrow_ix })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        (0..self.vertices.len()).map(Vertex)
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = Arrow> + '_ {
        (0..self.arrows.len()).map(Arrow)
    }

    pub fn vertex(&self, id: &str) -> Option<Vertex> {
        self.vertex_ix.get(id).copied()
    }

    pub fn arrow(&self, id: &str) -> Option<Arrow> {
        self.arrow_ix.get(id).copied()
    }

    pub fn vertex_id(&self, v: Vertex) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow_id(&self, a: Arrow) -> &str {
        &self.arrows[a.0].id
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        self.arrows[a.0].target
    }

    pub fn is_loop(&self, a: Arrow) -> bool {
        self.source(a) == self.target(a)
    }

    pub fn out_arrows(&self, v: Vertex) -> Vec<Arrow> {
        self.arrows().filter(|&a| self.source(a) == v).collect()
    }

    pub fn in_arrows(&self, v: Vertex) -> Vec<Arrow> {
        self.arrows().filter(|&a| self.target(a) == v).collect()
    }

    /// Connectedness of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source.0].push(a.target.0);
            adj[a.target.0].push(a.source.0);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Formats a word of arrows as space-separated ids.
    pub fn word(&self, arrows: &[Arrow]) -> String {
        arrows.iter().map(|&a| self.arrow_id(a)).collect::<Vec<_>>().join(" ")
    }

    /// Copy of the quiver without the given arrows.
    pub fn without_arrows(&self, removed: &BTreeSet<Arrow>) -> Quiver {
        let kept = self
            .arrows()
            .filter(|a| !removed.contains(a))
            .map(|a| {
                (
                    self.arrow_id(a).to_string(),
                    self.vertex_id(self.source(a)).to_string(),
                    self.vertex_id(self.target(a)).to_string(),
                )
            })
            .collect::<Vec<_>>();
        Quiver::new(self.vertices.clone(), kept).expect("sub-quiver of a valid quiver")
    }
}

/// Reasons a `(Q, f)` pair fails to be a biserial quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiserialViolation {
    NotTwoRegular { vertex: String, outgoing: usize, incoming: usize },
    PermutationMissing { arrow: String },
    PermutationUnknownArrow { arrow: String },
    PermutationNotInjective { image: String, preimages: Vec<String> },
    NotComposable { arrow: String, image: String },
    Disconnected,
}

impl fmt::Display for BiserialViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiserialViolation::NotTwoRegular { vertex, outgoing, incoming } => write!(
                f,
                "2-regularity: vertex `{vertex}` has {outgoing} outgoing and {incoming} incoming arrows (need 2 and 2)"
            ),
            BiserialViolation::PermutationMissing { arrow } => {
                write!(f, "permutation f: no image given for arrow `{arrow}`")
            }
            BiserialViolation::PermutationUnknownArrow { arrow } => {
                write!(f, "permutation f: unknown arrow `{arrow}`")
            }
            BiserialViolation::PermutationNotInjective { image, preimages } => {
                write!(f, "permutation f: arrow `{image}` is the image of {}", preimages.join(", "))
            }
            BiserialViolation::NotComposable { arrow, image } => {
                write!(f, "permutation f: s(f({arrow})) = s({image}) differs from t({arrow})")
            }
            BiserialViolation::Disconnected => write!(f, "quiver is not connected"),
        }
    }
}

/// A validated biserial quiver: 2-regular, connected, with `f` a permutation
/// of the arrows satisfying `s(f(α)) = t(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiserialQuiver {
    quiver: Quiver,
    f: Vec<Arrow>,
    f_inv: Vec<Arrow>,
    other: Vec<Arrow>,
}

/// Checks conditions (a)/(b) and connectivity, returning every violation.
pub fn validate_biserial_quiver(
    quiver: Quiver,
    f: &BTreeMap<String, String>,
) -> Result<BiserialQuiver, Diagnostics<BiserialViolation>> {
    let mut violations = Vec::new();
    for v in quiver.vertices() {
        let (o, i) = (quiver.out_arrows(v).len(), quiver.in_arrows(v).len());
        if o != 2 || i != 2 {
            violations.push(BiserialViolation::NotTwoRegular {
                vertex: quiver.vertex_id(v).to_string(),
                outgoing: o,
                incoming: i,
            });
        }
    }
    let mut image: Vec<Option<Arrow>> = vec![None; quiver.num_arrows()];
    for (k, v) in f {
        match (quiver.arrow(k), quiver.arrow(v)) {
            (Some(a), Some(b)) => image[a.0] = Some(b),
            (None, _) => violations.push(BiserialViolation::PermutationUnknownArrow { arrow: k.clone() }),
            (_, None) => violations.push(BiserialViolation::PermutationUnknownArrow { arrow: v.clone() }),
        }
    }
    let mut preimages: BTreeMap<Arrow, Vec<Arrow>> = BTreeMap::new();
    for a in quiver.arrows() {
        match image[a.0] {
            None => violations.push(BiserialViolation::PermutationMissing { arrow: quiver.arrow_id(a).to_string() }),
            Some(b) => {
                preimages.entry(b).or_default().push(a);
                if quiver.source(b) != quiver.target(a) {
                    violations.push(BiserialViolation::NotComposable {
                        arrow: quiver.arrow_id(a).to_string(),
                        image: quiver.arrow_id(b).to_string(),
                    });
                }
            }
        }
    }
    for (b, pre) in &preimages {
        if pre.len() > 1 {
            violations.push(BiserialViolation::PermutationNotInjective {
                image: quiver.arrow_id(*b).to_string(),
                preimages: pre.iter().map(|&a| quiver.arrow_id(a).to_string()).collect(),
            });
        }
    }
    if !quiver.is_connected() {
        violations.push(BiserialViolation::Disconnected);
    }
    Diagnostics::check(violations)?;
    let f = image.into_iter().map(|a| a.expect("checked total")).collect();
    Ok(BiserialQuiver::from_parts(quiver, f))
}

impl BiserialQuiver {
    /// Assembles a biserial quiver from an already-checked permutation.
    pub(crate) fn from_parts(quiver: Quiver, f: Vec<Arrow>) -> Self {
        let mut f_inv = vec![Arrow(usize::MAX); f.len()];
        for (a, &b) in f.iter().enumerate() {
            f_inv[b.0] = Arrow(a);
        }
        let other = quiver
            .arrows()
            .map(|a| {
                let outs = quiver.out_arrows(quiver.source(a));
                debug_assert_eq!(outs.len(), 2);
                if outs[0] == a {
                    outs[1]
                } else {
                    outs[0]
                }
            })
            .collect();
        BiserialQuiver { quiver, f, f_inv, other }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn f(&self, a: Arrow) -> Arrow {
        self.f[a.0]
    }

    pub fn f_inv(&self, a: Arrow) -> Arrow {
        self.f_inv[a.0]
    }

    /// `ᾱ`: the other arrow starting at `s(α)`.
    pub fn other_arrow(&self, a: Arrow) -> Arrow {
        self.other[a.0]
    }

    /// The permutation `f` as an id map.
    pub fn f_map(&self) -> BTreeMap<String, String> {
        self.quiver
            .arrows()
            .map(|a| (self.quiver.arrow_id(a).to_string(), self.quiver.arrow_id(self.f(a)).to_string()))
            .collect()
    }

    /// Cycles of `f`, each starting at its smallest arrow.
    pub fn f_orbits(&self) -> Vec<Vec<Arrow>> {
        cycles(&self.f)
    }
}

fn cycles(perm: &[Arrow]) -> Vec<Vec<Arrow>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            cycle.push(Arrow(a));
            a = perm[a].0;
        }
        out.push(cycle);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitId(usize);

impl OrbitId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// The permutation `g` and its cycles. Orbits are numbered by their smallest
/// arrow, and each cycle is listed starting from that arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    g: Vec<Arrow>,
    g_inv: Vec<Arrow>,
    orbits: Vec<Vec<Arrow>>,
    orbit_of: Vec<OrbitId>,
    position: Vec<usize>,
}

pub fn derive_orbits(bq: &BiserialQuiver) -> OrbitData {
    let g: Vec<Arrow> = bq.quiver.arrows().map(|a| bq.other_arrow(bq.f(a))).collect();
    let mut g_inv = vec![Arrow(usize::MAX); g.len()];
    for (a, &b) in g.iter().enumerate() {
        g_inv[b.0] = Arrow(a);
    }
    let orbits = cycles(&g);
    let mut orbit_of = vec![OrbitId(0); g.len()];
    let mut position = vec![0; g.len()];
    for (k, orbit) in orbits.iter().enumerate() {
        for (p, a) in orbit.iter().enumerate() {
            orbit_of[a.0] = OrbitId(k);
            position[a.0] = p;
        }
    }
    OrbitData { g, g_inv, orbits, orbit_of, position }
}

impl OrbitData {
    pub fn g(&self, a: Arrow) -> Arrow {
        self.g[a.0]
    }

    pub fn g_inv(&self, a: Arrow) -> Arrow {
        self.g_inv[a.0]
    }

    pub fn orbits(&self) -> &[Vec<Arrow>] {
        &self.orbits
    }

    pub fn num_orbits(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_ids(&self) -> impl Iterator<Item = OrbitId> {
        (0..self.orbits.len()).map(OrbitId)
    }

    pub fn orbit(&self, o: OrbitId) -> &[Arrow] {
        &self.orbits[o.0]
    }

    pub fn orbit_of(&self, a: Arrow) -> OrbitId {
        self.orbit_of[a.0]
    }

    /// Smallest arrow of the orbit.
    pub fn representative(&self, o: OrbitId) -> Arrow {
        self.orbits[o.0][0]
    }

    /// `n_α = |O(α)|`.
    pub fn n(&self, a: Arrow) -> usize {
        self.orbits[self.orbit_of[a.0].0].len()
    }

    /// Number of `g`-steps from `from` forward to `to`, if they share an orbit.
    pub fn steps_between(&self, from: Arrow, to: Arrow) -> Option<usize> {
        let o = self.orbit_of(from);
        if self.orbit_of(to) != o {
            return None;
        }
        let n = self.orbits[o.0].len();
        Some((self.position[to.0] + n - self.position[from.0]) % n)
    }

    /// `g^k(α)`.
    pub fn g_pow(&self, a: Arrow, k: usize) -> Arrow {
        let orbit = &self.orbits[self.orbit_of[a.0].0];
        orbit[(self.position[a.0] + k) % orbit.len()]
    }

    /// The walk `α g(α) … g^{len-1}(α)`.
    pub fn g_walk(&self, a: Arrow, len: usize) -> Vec<Arrow> {
        (0..len).map(|k| self.g_pow(a, k)).collect()
    }

    /// The permutation `g` as an id map.
    pub fn g_map(&self, quiver: &Quiver) -> BTreeMap<String, String> {
        quiver.arrows().map(|a| (quiver.arrow_id(a).to_string(), quiver.arrow_id(self.g(a)).to_string())).collect()
    }
}

/// `Ω(Q,f) = {α : f²(α) ∈ O(α)}`.
pub fn admissible_arrows(bq: &BiserialQuiver, od: &OrbitData) -> BTreeSet<Arrow> {
    bq.quiver.arrows().filter(|&a| od.orbit_of(bq.f(bq.f(a))) == od.orbit_of(a)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BorderData {
    pub vertices: BTreeSet<Vertex>,
    pub loops: BTreeSet<Arrow>,
}

/// Border vertices (carrying a loop fixed by `f`) and the border loops.
pub fn border_data(bq: &BiserialQuiver) -> BorderData {
    let mut out = BorderData::default();
    for a in bq.quiver.arrows() {
        if bq.quiver.is_loop(a) && bq.f(a) == a {
            out.loops.insert(a);
            out.vertices.insert(bq.quiver.source(a));
        }
    }
    out
}
