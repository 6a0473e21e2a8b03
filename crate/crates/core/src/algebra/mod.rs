//! The algebra `KQ/J` of a validated presentation: an explicit basis and exact
//! multiplication by extending `g`-walks.

mod oracle;
mod reports;

pub use oracle::{oracle_quotient_dimension, OracleError, OracleReport};
pub use reports::{
    check_symmetric, weak_symmetry_report, Obstruction, SymmetryVerdict, VertexSocle, WeakSymmetryReport,
};

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};
use crate::presentation::{Presentation, RelationGenerator};
use crate::quiver::{Arrow, Quiver, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebra tables")]
    MixedTables,
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("basis index {0} out of range")]
    NotInBasis(usize),
    #[error("basis element does not belong to this algebra")]
    ForeignBasisElement,
    #[error("the Gabriel quiver needs dimension at least 3, got {dimension}")]
    TooSmallForGabriel { dimension: usize },
    #[error("internal invariant breach: {0}")]
    Invariant(String),
}

/// A basis vector of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    Idempotent(Vertex),
    /// `α g(α) … g^{len−1}(α)` with `1 ≤ len < m_α n_α`.
    GPath {
        start: Arrow,
        len: usize,
    },
    /// The class of `B_{α₀(i)}`, `α₀(i)` the least arrow starting at `i`.
    Socle(Vertex),
}

/// A scalar multiple of one basis element.
pub type Monomial = (Scalar, usize);

static NEXT_TABLE: AtomicU64 = AtomicU64::new(0);

/// Linear combination of basis elements of one table, without zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    table: u64,
    field: FieldSpec,
    terms: BTreeMap<usize, Scalar>,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<usize, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, idx: usize) -> Scalar {
        self.terms.get(&idx).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// The single term, if the element is a nonzero monomial.
    pub fn as_monomial(&self) -> Option<Monomial> {
        match self.terms.len() {
            1 => self.terms.iter().next().map(|(&i, s)| (s.clone(), i)),
            _ => None,
        }
    }

    fn add_term(&mut self, idx: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let entry = self.terms.entry(idx).or_insert_with(|| Scalar::zero(self.field));
        *entry = &*entry + value;
        if entry.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn checked_add(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if self.table != other.table {
            return Err(AlgebraError::MixedTables);
        }
        let mut out = self.clone();
        for (&i, v) in &other.terms {
            out.add_term(i, v);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.checked_add(&other.scale(&-Scalar::one(self.field)))
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement { table: self.table, field: self.field, terms: BTreeMap::new() };
        for (&i, v) in &self.terms {
            out.add_term(i, &(v * s));
        }
        out
    }
}

/// The basis of the algebra with its structure constants.
///
/// Immutable after construction. Products of a basis element with an arrow
/// are computed eagerly; products of two basis elements are filled in on
/// first use.
#[derive(Debug)]
pub struct AlgebraTable {
    id: u64,
    presentation: Presentation,
    basis: Vec<BasisElement>,
    index: BTreeMap<BasisElement, usize>,
    slices: Vec<Range<usize>>,
    socle: Vec<usize>,
    // c_{α₀(s(α))} / c_α
    kappa: Vec<Scalar>,
    // basis index * |Q1| + arrow
    action: Vec<Option<Monomial>>,
    products: OnceLock<Vec<Option<Monomial>>>,
}

/// Builds the basis and the arrow action.
pub fn enumerate_basis(p: &Presentation) -> AlgebraTable {
    let q = p.quiver();
    let mut basis = Vec::with_capacity(p.dimension());
    let mut slices = Vec::with_capacity(q.num_vertices());
    let mut socle = Vec::with_capacity(q.num_vertices());
    for v in q.vertices() {
        let start = basis.len();
        basis.push(BasisElement::Idempotent(v));
        for a in q.out_arrows(v) {
            basis.extend((1..p.cycle_len(a)).map(|len| BasisElement::GPath { start: a, len }));
        }
        socle.push(basis.len());
        basis.push(BasisElement::Socle(v));
        slices.push(start..basis.len());
    }
    let index = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let kappa = q
        .arrows()
        .map(|a| {
            let least = q.out_arrows(q.source(a))[0];
            p.parameter(least).checked_div(p.parameter(a)).expect("parameters are nonzero")
        })
        .collect();
    let mut table = AlgebraTable {
        id: NEXT_TABLE.fetch_add(1, Ordering::Relaxed),
        presentation: p.clone(),
        basis,
        index,
        slices,
        socle,
        kappa,
        action: Vec::new(),
        products: OnceLock::new(),
    };
    let action: Vec<Option<Monomial>> = (0..table.basis.len())
        .flat_map(|x| q.arrows().map(move |a| (x, a)))
        .map(|(x, a)| table.compute_action(x, a))
        .collect();
    table.action = action;
    assert_eq!(table.basis.len(), p.dimension(), "basis size disagrees with the dimension formula");
    table
}

/// `Σ_O m_O n_O²`.
pub fn dimension(p: &Presentation) -> usize {
    p.dimension()
}

impl AlgebraTable {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn field(&self) -> FieldSpec {
        self.presentation.field()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Basis indices of `e_i B`.
    pub fn slice(&self, v: Vertex) -> Range<usize> {
        self.slices[v.index()].clone()
    }

    pub fn socle_index(&self, v: Vertex) -> usize {
        self.socle[v.index()]
    }

    pub fn source(&self, idx: usize) -> Vertex {
        match self.basis[idx] {
            BasisElement::Idempotent(v) | BasisElement::Socle(v) => v,
            BasisElement::GPath { start, .. } => self.quiver().source(start),
        }
    }

    pub fn target(&self, idx: usize) -> Vertex {
        match self.basis[idx] {
            BasisElement::Idempotent(v) | BasisElement::Socle(v) => v,
            BasisElement::GPath { start, len } => {
                self.quiver().target(self.presentation.orbits().g_pow(start, len - 1))
            }
        }
    }

    /// The arrow word represented by a basis element (empty for idempotents).
    pub fn word(&self, idx: usize) -> Vec<Arrow> {
        let orbits = self.presentation.orbits();
        match self.basis[idx] {
            BasisElement::Idempotent(_) => Vec::new(),
            BasisElement::GPath { start, len } => orbits.g_walk(start, len),
            BasisElement::Socle(v) => {
                let least = self.quiver().out_arrows(v)[0];
                orbits.g_walk(least, self.presentation.cycle_len(least))
            }
        }
    }

    pub fn describe(&self, idx: usize) -> String {
        let q = self.quiver();
        match self.basis[idx] {
            BasisElement::Idempotent(v) => format!("e_{}", q.vertex_id(v)),
            BasisElement::GPath { .. } => q.word(&self.word(idx)),
            BasisElement::Socle(v) => format!("soc_{}", q.vertex_id(v)),
        }
    }

    fn one(&self) -> Scalar {
        Scalar::one(self.field())
    }

    /// The walk from `a` of length `len`, as a multiple of a basis element.
    fn walk_class(&self, a: Arrow, len: usize) -> Option<Monomial> {
        let full = self.presentation.cycle_len(a);
        if len < full {
            Some((self.one(), self.index[&BasisElement::GPath { start: a, len }]))
        } else if len == full {
            Some((self.kappa[a.index()].clone(), self.socle[self.quiver().source(a).index()]))
        } else {
            None
        }
    }

    fn compute_action(&self, x: usize, beta: Arrow) -> Option<Monomial> {
        let q = self.quiver();
        let p = &self.presentation;
        if self.target(x) != q.source(beta) {
            return None;
        }
        match self.basis[x] {
            BasisElement::Idempotent(_) => self.walk_class(beta, 1),
            BasisElement::Socle(_) => None,
            BasisElement::GPath { start, len } => {
                let last = p.orbits().g_pow(start, len - 1);
                if beta == p.orbits().g(last) {
                    return self.walk_class(start, len + 1);
                }
                debug_assert_eq!(beta, p.biserial_quiver().f(last));
                let d = p.deformation(last);
                if d.is_zero() {
                    return None;
                }
                let d_len = p.d_len(last).expect("nonzero d only on admissible arrows");
                let (s, idx) = self.walk_class(start, len + d_len - 1)?;
                Some((d * &s, idx))
            }
        }
    }

    /// Cached `x·β` for a basis index.
    pub fn act(&self, x: usize, beta: Arrow) -> Option<&Monomial> {
        self.action[x * self.quiver().num_arrows() + beta.index()].as_ref()
    }

    pub fn mul_basis_by_arrow(&self, x: &BasisElement, arrow_id: &str) -> Result<AlgebraElement, AlgebraError> {
        let beta = self.quiver().arrow(arrow_id).ok_or_else(|| AlgebraError::UnknownArrow(arrow_id.into()))?;
        let x = self.index_of(x).ok_or(AlgebraError::ForeignBasisElement)?;
        let mut out = self.zero();
        if let Some((s, i)) = self.act(x, beta) {
            out.add_term(*i, s);
        }
        Ok(out)
    }

    /// Folds a word of arrows onto a monomial.
    pub fn fold(&self, start: Monomial, word: &[Arrow]) -> Option<Monomial> {
        let mut cur = start;
        for &a in word {
            let (s, i) = self.act(cur.1, a)?;
            cur = (&cur.0 * s, *i);
        }
        Some(cur)
    }

    fn compute_product(&self, x: usize, y: usize) -> Option<Monomial> {
        if let BasisElement::Idempotent(v) = self.basis[y] {
            return (self.target(x) == v).then(|| (self.one(), x));
        }
        if self.target(x) != self.source(y) {
            return None;
        }
        self.fold((self.one(), x), &self.word(y))
    }

    fn product_table(&self) -> &[Option<Monomial>] {
        self.products.get_or_init(|| {
            let n = self.dimension();
            (0..n * n).map(|k| self.compute_product(k / n, k % n)).collect()
        })
    }

    /// Product of two basis elements.
    pub fn product_basis(&self, x: usize, y: usize) -> Option<&Monomial> {
        self.product_table()[x * self.dimension() + y].as_ref()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { table: self.id, field: self.field(), terms: BTreeMap::new() }
    }

    pub fn element(&self, idx: usize) -> AlgebraElement {
        self.monomial(&(self.one(), idx))
    }

    pub fn monomial(&self, m: &Monomial) -> AlgebraElement {
        let mut out = self.zero();
        out.add_term(m.1, &m.0);
        out
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (usize, Scalar)>) -> Result<AlgebraElement, AlgebraError> {
        let mut out = self.zero();
        for (i, v) in terms {
            if i >= self.dimension() {
                return Err(AlgebraError::NotInBasis(i));
            }
            if v.field() != self.field() {
                return Err(AlgebraError::Invariant(format!("scalar {v} is not in {}", self.field())));
            }
            out.add_term(i, &v);
        }
        Ok(out)
    }

    /// `Σ_i e_i`.
    pub fn unit(&self) -> AlgebraElement {
        let mut out = self.zero();
        for r in &self.slices {
            out.add_term(r.start, &self.one());
        }
        out
    }

    fn owns(&self, x: &AlgebraElement) -> Result<(), AlgebraError> {
        if x.table == self.id {
            Ok(())
        } else {
            Err(AlgebraError::MixedTables)
        }
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        let mut out = self.zero();
        for (&i, a) in &x.terms {
            for (&j, b) in &y.terms {
                if let Some((s, k)) = self.product_basis(i, j) {
                    out.add_term(*k, &(&(a * b) * s));
                }
            }
        }
        Ok(out)
    }

    /// Evaluates a relation generator by folding each of its paths.
    pub fn evaluate(&self, gen: &RelationGenerator) -> AlgebraElement {
        let mut out = self.zero();
        for term in &gen.terms {
            let start = (self.one(), self.slices[term.path.source().index()].start);
            if let Some((s, i)) = self.fold(start, term.path.arrows()) {
                out.add_term(i, &(&s * &term.coefficient));
            }
        }
        out
    }

    pub fn verify_relations(&self) -> RelationReport {
        let generators = self.presentation.relation_generators();
        let total = generators.len();
        let residuals = generators
            .into_iter()
            .filter_map(|g| {
                let value = self.evaluate(&g);
                (!value.is_zero()).then_some((g, value))
            })
            .collect();
        RelationReport { total, residuals }
    }

    /// `C_{ij}`: basis elements of `e_i B` ending at `j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.quiver().num_vertices();
        let mut c = vec![vec![0; n]; n];
        for (i, r) in self.slices.iter().enumerate() {
            for x in r.clone() {
                c[i][self.target(x).index()] += 1;
            }
        }
        c
    }

    /// `dim e_i B` per vertex.
    pub fn projective_dimensions(&self) -> Vec<usize> {
        self.slices.iter().map(|r| r.len()).collect()
    }

    /// `Q` with the virtual loops removed.
    pub fn gabriel_quiver(&self) -> Result<Quiver, AlgebraError> {
        if self.dimension() < 3 {
            return Err(AlgebraError::TooSmallForGabriel { dimension: self.dimension() });
        }
        Ok(self.quiver().without_arrows(&self.presentation.virtual_loops()))
    }

    /// For each virtual loop `α`, whether `c_α·α = c_ᾱ·B_ᾱ` holds in the
    /// algebra.
    pub fn virtual_loop_identity(&self) -> Vec<(Arrow, bool)> {
        let p = &self.presentation;
        p.virtual_loops()
            .into_iter()
            .map(|a| {
                let bar = p.biserial_quiver().other_arrow(a);
                let e = (self.one(), self.slices[self.quiver().source(a).index()].start);
                let lhs = self.fold(e.clone(), &[a]).map(|m| self.monomial(&m)).unwrap_or_else(|| self.zero());
                let rhs =
                    self.fold(e, p.cycle_b(bar).arrows()).map(|m| self.monomial(&m)).unwrap_or_else(|| self.zero());
                let holds = lhs.scale(p.parameter(a)) == rhs.scale(p.parameter(bar));
                (a, holds)
            })
            .collect()
    }

    /// Testing aid: a copy of the table with one cached arrow product
    /// negated. Used to confirm that `verify_relations` detects corruption.
    #[doc(hidden)]
    pub fn with_negated_action(&self, x: usize, beta: Arrow) -> AlgebraTable {
        let mut action = self.action.clone();
        let k = x * self.quiver().num_arrows() + beta.index();
        if let Some((s, _)) = action[k].as_mut() {
            *s = -&*s;
        }
        AlgebraTable {
            id: NEXT_TABLE.fetch_add(1, Ordering::Relaxed),
            presentation: self.presentation.clone(),
            basis: self.basis.clone(),
            index: self.index.clone(),
            slices: self.slices.clone(),
            socle: self.socle.clone(),
            kappa: self.kappa.clone(),
            action,
            products: OnceLock::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub total: usize,
    /// Generators that did not evaluate to zero, with their value.
    pub residuals: Vec<(RelationGenerator, AlgebraElement)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}
