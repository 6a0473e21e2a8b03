//! Socle and symmetry checks.

use crate::field::{FieldSpec, Matrix, RowEchelon, Scalar, SparseRow};
use crate::quiver::Vertex;

use super::{AlgebraError, AlgebraTable};

/// Right annihilator of the arrows inside `e_i B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSocle {
    pub vertex: Vertex,
    pub annihilator_dim: usize,
    /// The annihilator is exactly the span of the socle element at `vertex`.
    pub spanned_by_socle: bool,
}

impl VertexSocle {
    pub fn holds(&self) -> bool {
        self.annihilator_dim == 1 && self.spanned_by_socle
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakSymmetryReport {
    pub vertices: Vec<VertexSocle>,
}

impl WeakSymmetryReport {
    pub fn holds(&self) -> bool {
        self.vertices.iter().all(VertexSocle::holds)
    }
}

pub fn weak_symmetry_report(t: &AlgebraTable) -> WeakSymmetryReport {
    let q = t.quiver();
    let vertices = q
        .vertices()
        .map(|v| {
            let slice = t.slice(v);
            let cols = slice.len();
            // one equation per (arrow, image basis element)
            let mut rows: std::collections::BTreeMap<(usize, usize), SparseRow> = Default::default();
            for (col, x) in slice.clone().enumerate() {
                for a in q.arrows() {
                    if let Some((s, k)) = t.act(x, a) {
                        rows.entry((a.index(), *k)).or_default().push((col, s.clone()));
                    }
                }
            }
            let mut ech = RowEchelon::new(t.field(), cols);
            for row in rows.into_values() {
                ech.insert(row);
            }
            let kernel = ech.nullspace();
            let socle_col = t.socle_index(v) - slice.start;
            let spanned_by_socle =
                kernel.len() == 1 && kernel[0].iter().enumerate().all(|(c, x)| (c == socle_col) != x.is_zero());
            VertexSocle { vertex: v, annihilator_dim: kernel.len(), spanned_by_socle }
        })
        .collect();
    WeakSymmetryReport { vertices }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Every trace-like functional vanishes on the socle element here.
    VanishingVertex(Vertex),
    /// Each vertex is reachable, but no single functional is nonzero on all
    /// socle elements over this (finite) field.
    NoNowhereZeroCombination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryVerdict {
    Symmetric {
        /// Values of the symmetrizing functional on the basis.
        form: Vec<Scalar>,
        /// Determinant of `(φ(xy))_{x,y}`; nonzero.
        gram_determinant: Scalar,
        centralizer_dim: usize,
    },
    NotSymmetric {
        obstruction: Obstruction,
        centralizer_dim: usize,
    },
    /// The witness search over a finite field hit its bound.
    Inconclusive {
        centralizer_dim: usize,
        searched: u64,
    },
}

impl SymmetryVerdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::Symmetric { .. })
    }
}

const SEARCH_BOUND: u64 = 1 << 20;

/// Decides whether a symmetric, associative, nondegenerate form exists.
///
/// `V` is the space of functionals vanishing on all commutators of basis
/// elements. A functional in `V` gives a nondegenerate form exactly when it
/// is nonzero on every socle element.
pub fn check_symmetric(t: &AlgebraTable) -> Result<SymmetryVerdict, AlgebraError> {
    let field = t.field();
    let n = t.dimension();
    let mut ech = RowEchelon::new(field, n);
    for x in 0..n {
        for y in x + 1..n {
            let mut row: SparseRow = Vec::with_capacity(2);
            let xy = t.product_basis(x, y).cloned();
            let yx = t.product_basis(y, x).cloned().map(|(s, k)| (-s, k));
            match (xy, yx) {
                (Some((a, i)), Some((b, j))) if i == j => {
                    let s = &a + &b;
                    if !s.is_zero() {
                        row.push((i, s));
                    }
                }
                (Some((a, i)), Some((b, j))) => {
                    let (first, second) = if i < j { ((i, a), (j, b)) } else { ((j, b), (i, a)) };
                    row.push(first);
                    row.push(second);
                }
                (Some((a, i)), None) | (None, Some((a, i))) => row.push((i, a)),
                (None, None) => {}
            }
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    let v_basis = ech.nullspace();
    let centralizer_dim = v_basis.len();
    let socles: Vec<usize> = t.quiver().vertices().map(|v| t.socle_index(v)).collect();
    // evaluation matrix: rows = vertices, columns = basis of V
    let eval: Vec<Vec<Scalar>> = socles.iter().map(|&s| v_basis.iter().map(|phi| phi[s].clone()).collect()).collect();
    for (v, row) in t.quiver().vertices().zip(&eval) {
        if row.iter().all(Scalar::is_zero) {
            return Ok(SymmetryVerdict::NotSymmetric { obstruction: Obstruction::VanishingVertex(v), centralizer_dim });
        }
    }
    let lambda = match field {
        FieldSpec::Rationals => search_rational(&eval, centralizer_dim),
        FieldSpec::Prime(p) => match search_prime(&eval, field, p.get() as u64) {
            Search::Found(l) => Some(l),
            Search::Exhausted => {
                return Ok(SymmetryVerdict::NotSymmetric {
                    obstruction: Obstruction::NoNowhereZeroCombination,
                    centralizer_dim,
                })
            }
            Search::Bounded(searched) => {
                return Ok(SymmetryVerdict::Inconclusive { centralizer_dim, searched });
            }
        },
    }
    .ok_or_else(|| AlgebraError::Invariant("no witness among polynomial samples over the rationals".into()))?;

    let mut form = vec![Scalar::zero(field); n];
    for (l, phi) in lambda.iter().zip(&v_basis) {
        for (f, x) in form.iter_mut().zip(phi) {
            *f = &*f + &(l * x);
        }
    }
    let gram: Vec<Vec<Scalar>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| match t.product_basis(x, y) {
                    Some((s, k)) => s * &form[*k],
                    None => Scalar::zero(field),
                })
                .collect()
        })
        .collect();
    let gram_determinant = Matrix::new(field, n, gram)
        .and_then(|m| m.determinant())
        .map_err(|e| AlgebraError::Invariant(e.to_string()))?;
    if gram_determinant.is_zero() {
        return Err(AlgebraError::Invariant("symmetrizing functional is degenerate".into()));
    }
    Ok(SymmetryVerdict::Symmetric { form, gram_determinant, centralizer_dim })
}

fn combine(eval: &[Vec<Scalar>], lambda: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    eval.iter().map(|row| row.iter().zip(lambda).fold(Scalar::zero(field), |acc, (a, b)| &acc + &(a * b))).collect()
}

/// Over the rationals `λ = (1, t, t², …)` works for all but finitely many
/// `t`: each entry of `Eλ` is a nonzero polynomial of degree below `dim V`.
fn search_rational(eval: &[Vec<Scalar>], dim_v: usize) -> Option<Vec<Scalar>> {
    let field = FieldSpec::Rationals;
    (0..=(eval.len() * dim_v) as i64).find_map(|t| {
        let base = Scalar::from_i64(t, field);
        let mut lambda = Vec::with_capacity(dim_v);
        let mut pow = Scalar::one(field);
        for _ in 0..dim_v {
            lambda.push(pow.clone());
            pow = &pow * &base;
        }
        combine(eval, &lambda, field).iter().all(|x| !x.is_zero()).then_some(lambda)
    })
}

enum Search {
    Found(Vec<Scalar>),
    Exhausted,
    Bounded(u64),
}

/// Enumerates the column space of `eval` through a column basis.
fn search_prime(eval: &[Vec<Scalar>], field: FieldSpec, p: u64) -> Search {
    let rows = eval.len();
    let cols = eval.first().map_or(0, Vec::len);
    let mut ech = RowEchelon::new(field, rows);
    let mut basis_cols = Vec::new();
    for c in 0..cols {
        let column: Vec<Scalar> = eval.iter().map(|r| r[c].clone()).collect();
        if ech.insert_dense(&column) {
            basis_cols.push(c);
        }
    }
    let r = basis_cols.len() as u32;
    let total = p.checked_pow(r);
    let limit = total.map_or(SEARCH_BOUND, |t| t.min(SEARCH_BOUND));
    let mut digits = vec![0u64; basis_cols.len()];
    for searched in 0..limit {
        let mut lambda = vec![Scalar::zero(field); cols];
        for (d, &c) in digits.iter().zip(&basis_cols) {
            lambda[c] = Scalar::from_i64(*d as i64, field);
        }
        if combine(eval, &lambda, field).iter().all(|x| !x.is_zero()) {
            return Search::Found(lambda);
        }
        // next digit vector
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
        if searched + 1 == limit && total != Some(limit) {
            return Search::Bounded(limit);
        }
    }
    Search::Exhausted
}
