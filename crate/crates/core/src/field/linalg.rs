use super::{FieldError, FieldSpec, Scalar};

/// Sparse row: `(column, value)` pairs, columns strictly increasing, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// Dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn new(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self, FieldError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(FieldError::RaggedMatrix { row: i, len: row.len(), expected: cols });
            }
            for x in row {
                if x.field() != field {
                    return Err(FieldError::FieldMismatch(field, x.field()));
                }
            }
        }
        Ok(Matrix { field, cols, rows })
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) }).collect())
            .collect();
        Matrix { field, cols: n, rows }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    fn echelon(&self) -> RowEchelon {
        let mut ech = RowEchelon::new(self.field, self.cols);
        for row in &self.rows {
            ech.insert_dense(row);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the right nullspace `{x : Mx = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.echelon().nullspace()
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).fold(Scalar::zero(self.field), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    /// Determinant by Gaussian elimination with exact division.
    pub fn determinant(&self) -> Result<Scalar, FieldError> {
        let n = self.rows.len();
        if n != self.cols {
            return Err(FieldError::NotSquare { rows: n, cols: self.cols });
        }
        let mut a = self.rows.clone();
        let mut det = Scalar::one(self.field);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            let pinv = pivot.inv()?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] * &pinv;
                let (upper, lower) = a.split_at_mut(r);
                for (x, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        Ok(det)
    }
}

/// Incrementally maintained reduced row echelon form over sparse rows.
///
/// Every stored row has leading coefficient 1 at its pivot column and zeros in
/// every other pivot column.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseRow>,
    // pivot column -> index into `rows`
    pivot_of_col: Vec<Option<usize>>,
}

fn axpy(row: &[(usize, Scalar)], factor: &Scalar, other: &[(usize, Scalar)]) -> SparseRow {
    // row - factor * other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let take_left = j >= other.len() || (i < row.len() && row[i].0 < other[j].0);
        let take_right = i >= row.len() || (j < other.len() && other[j].0 < row[i].0);
        if take_left {
            out.push(row[i].clone());
            i += 1;
        } else if take_right {
            let v = -(factor * &other[j].1);
            out.push((other[j].0, v));
            j += 1;
        } else {
            let v = &row[i].1 - &(factor * &other[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl RowEchelon {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        RowEchelon { field, cols, rows: Vec::new(), pivot_of_col: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut k = 0;
        while k < row.len() {
            let (col, val) = (row[k].0, row[k].1.clone());
            match self.pivot_of_col[col] {
                Some(r) => {
                    row = axpy(&row, &val, &self.rows[r]);
                    // the entry at `col` is gone; entries before `k` are untouched
                }
                None => k += 1,
            }
        }
        row
    }

    pub fn insert_dense(&mut self, row: &[Scalar]) -> bool {
        let sparse: SparseRow =
            row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect();
        self.insert(sparse)
    }

    /// Adds a row to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        let row = self.reduce(row);
        let Some((pivot_col, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        for r in 0..self.rows.len() {
            if let Ok(pos) = self.rows[r].binary_search_by_key(&pivot_col, |e| e.0) {
                let factor = self.rows[r][pos].1.clone();
                self.rows[r] = axpy(&self.rows[r], &factor, &row);
            }
        }
        self.pivot_of_col[pivot_col] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of `{x : r·x = 0 for every stored row r}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let zero = Scalar::zero(self.field);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if self.pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = Scalar::one(self.field);
            for row in &self.rows {
                if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                    let pivot = row[0].0;
                    v[pivot] = -&row[pos].1;
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(n, FieldSpec::Rationals)
    }

    #[test]
    fn nullspace_examples() {
        let m = Matrix::new(FieldSpec::Rationals, 2, vec![vec![q(1), q(-1)]]).unwrap();
        assert_eq!(m.nullspace(), vec![vec![q(1), q(1)]]);

        let id = Matrix::identity(FieldSpec::Rationals, 3);
        assert!(id.nullspace().is_empty());

        let zero = Matrix::new(FieldSpec::Rationals, 3, vec![vec![q(0); 3]; 2]).unwrap();
        assert_eq!(zero.nullspace().len(), 3);
    }

    #[test]
    fn rejects_ragged_and_mixed() {
        let err = Matrix::new(FieldSpec::Rationals, 2, vec![vec![q(1)]]).unwrap_err();
        assert!(matches!(err, FieldError::RaggedMatrix { .. }));
        let gf3 = FieldSpec::prime(3).unwrap();
        let err = Matrix::new(FieldSpec::Rationals, 1, vec![vec![Scalar::one(gf3)]]).unwrap_err();
        assert!(matches!(err, FieldError::FieldMismatch(..)));
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::new(
            FieldSpec::Rationals,
            3,
            vec![vec![q(2), q(0), q(1)], vec![q(1), q(3), q(2)], vec![q(1), q(1), q(1)]],
        )
        .unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.determinant().unwrap(), q(0));
        let m = Matrix::new(FieldSpec::Rationals, 2, vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(m.determinant().unwrap(), q(-1));
    }

    #[test]
    fn nullspace_over_prime_field() {
        let gf2 = FieldSpec::prime(2).unwrap();
        let one = Scalar::one(gf2);
        let m = Matrix::new(gf2, 2, vec![vec![one.clone(), one.clone()]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Scalar::is_zero));
    }
}
