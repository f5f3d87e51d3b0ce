use crate::error::{Error, Result};

/// Square dense real matrix whose rows and columns carry vertex labels.
///
/// Labels start out as `0..n` and survive row/column deletion, so entries of
/// a submatrix can still be addressed by original vertex id. Storage is
/// row-major `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    data: Vec<f64>,
    row_labels: Vec<usize>,
    col_labels: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![0.0; order * order],
            row_labels: (0..order).collect(),
            col_labels: (0..order).collect(),
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from row slices. All rows must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        let mut data = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::PreconditionNotMet(format!(
                    "matrix must be square, row has length {} but there are {} rows",
                    row.len(),
                    order
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            order,
            data,
            row_labels: (0..order).collect(),
            col_labels: (0..order).collect(),
        })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[usize] {
        &self.col_labels
    }

    pub fn position_of_row_label(&self, label: usize) -> Option<usize> {
        self.row_labels.iter().position(|&l| l == label)
    }

    pub fn position_of_col_label(&self, label: usize) -> Option<usize> {
        self.col_labels.iter().position(|&l| l == label)
    }

    /// Entry addressed by original labels instead of positions.
    pub fn get_by_labels(&self, row_label: usize, col_label: usize) -> Option<f64> {
        let i = self.position_of_row_label(row_label)?;
        let j = self.position_of_col_label(col_label)?;
        Some(self.get(i, j))
    }

    pub(crate) fn with_labels(mut self, row_labels: Vec<usize>, col_labels: Vec<usize>) -> Self {
        assert_eq!(row_labels.len(), self.order);
        assert_eq!(col_labels.len(), self.order);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    /// Removes the rows and columns carrying the given labels. The counts must
    /// match so the result stays square; surviving labels are preserved.
    pub fn delete_rows_cols(&self, rows: &[usize], cols: &[usize]) -> Result<DenseMatrix> {
        if rows.len() != cols.len() {
            return Err(Error::PreconditionNotMet(format!(
                "must delete as many rows as columns to stay square ({} vs {})",
                rows.len(),
                cols.len()
            )));
        }
        for &label in rows {
            if self.position_of_row_label(label).is_none() {
                return Err(Error::IndexOutOfRange { index: label, order: self.order });
            }
        }
        for &label in cols {
            if self.position_of_col_label(label).is_none() {
                return Err(Error::IndexOutOfRange { index: label, order: self.order });
            }
        }
        let keep_rows: Vec<usize> = (0..self.order)
            .filter(|&i| !rows.contains(&self.row_labels[i]))
            .collect();
        let keep_cols: Vec<usize> = (0..self.order)
            .filter(|&j| !cols.contains(&self.col_labels[j]))
            .collect();
        let order = keep_rows.len();
        let mut data = Vec::with_capacity(order * order);
        for &i in &keep_rows {
            for &j in &keep_cols {
                data.push(self.get(i, j));
            }
        }
        Ok(DenseMatrix {
            order,
            data,
            row_labels: keep_rows.iter().map(|&i| self.row_labels[i]).collect(),
            col_labels: keep_cols.iter().map(|&j| self.col_labels[j]).collect(),
        })
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.order, other.order, "order mismatch in matmul");
        let n = self.order;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.order, "length mismatch in mul_vec");
        let n = self.order;
        (0..n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.order, other.order, "order mismatch in sub");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> DenseMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= factor;
        }
        out
    }

    /// Induced ∞-norm (maximum absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Largest `|m_ij - m_ji|` over all pairs.
    pub fn max_symmetry_gap(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, tolerance: f64) -> bool {
        self.max_symmetry_gap() <= tolerance
    }
}

pub fn vec_inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}
