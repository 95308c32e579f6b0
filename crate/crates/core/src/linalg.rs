//! Small exact matrices over tower elements. Determinants are computed
//! division-free (subset dynamic programming) and inverses through the
//! adjugate, so everything works over the Laurent-symbol coefficient rings
//! as long as the determinant itself is invertible.

use std::sync::Arc;

use crate::tower::{TowerElement, TowerSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<TowerElement>,
}

impl Matrix {
    pub fn zero(spec: &Arc<TowerSpec>, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![TowerElement::zero(spec); rows * cols] }
    }

    pub fn identity(spec: &Arc<TowerSpec>, n: usize) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = TowerElement::one(spec);
        }
        m
    }

    pub fn from_rows(rows_data: Vec<Vec<TowerElement>>) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows * cols);
        for r in rows_data {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &TowerElement {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut TowerElement {
        &mut self.data[r * self.cols + c]
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        self.data[0].spec()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.spec(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.at(r, c) != self.at(c, r) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let spec = self.spec().clone();
        let mut out = Matrix::zero(&spec, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = TowerElement::zero(&spec);
                for k in 0..self.cols {
                    acc = &acc + &(self.at(r, k) * rhs.at(k, c));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[TowerElement]) -> Vec<TowerElement> {
        assert_eq!(self.cols, v.len());
        let spec = self.spec().clone();
        (0..self.rows)
            .map(|r| {
                let mut acc = TowerElement::zero(&spec);
                for k in 0..self.cols {
                    acc = &acc + &(self.at(r, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    /// Division-free determinant: expand row by row over column subsets.
    pub fn det(&self) -> TowerElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let spec = self.spec().clone();
        if n == 0 {
            return TowerElement::one(&spec);
        }
        // state[mask] = signed sum over ways to cover rows 0..popcount(mask)
        // using exactly the columns of the mask.
        let mut state = vec![None::<TowerElement>; 1 << n];
        state[0] = Some(TowerElement::one(&spec));
        for row in 0..n {
            let mut next = vec![None::<TowerElement>; 1 << n];
            for (mask, v) in state.into_iter().enumerate() {
                let Some(v) = v else { continue };
                if (mask as u32).count_ones() as usize != row {
                    continue;
                }
                for col in 0..n {
                    if mask & (1 << col) != 0 {
                        continue;
                    }
                    let entry = self.at(row, col);
                    if entry.is_zero() {
                        continue;
                    }
                    // Parity of already-used columns above `col` gives the sign.
                    let used_above = (mask >> (col + 1)).count_ones();
                    let term = &v * entry;
                    let term = if used_above % 2 == 1 { -&term } else { term };
                    let slot = &mut next[mask | (1 << col)];
                    *slot = Some(match slot.take() {
                        Some(acc) => &acc + &term,
                        None => term,
                    });
                }
            }
            state = next;
        }
        state[(1 << n) - 1].take().unwrap_or_else(|| TowerElement::zero(&spec))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Matrix {
        let mut rows_data = Vec::with_capacity(self.rows - 1);
        for r in 0..self.rows {
            if r == skip_row {
                continue;
            }
            let mut row = Vec::with_capacity(self.cols - 1);
            for c in 0..self.cols {
                if c == skip_col {
                    continue;
                }
                row.push(self.at(r, c).clone());
            }
            rows_data.push(row);
        }
        Matrix::from_rows(rows_data)
    }

    /// Adjugate-based inverse; `None` when the determinant has no inverse in
    /// the coefficient ring.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let det = self.det();
        let det_inv = det.inv().ok()?;
        let n = self.rows;
        let mut out = Matrix::zero(self.spec(), n, n);
        for r in 0..n {
            for c in 0..n {
                let cof = self.minor(r, c).det();
                let cof = if (r + c) % 2 == 1 { -&cof } else { cof };
                // adj[c][r] = cofactor(r, c)
                *out.at_mut(c, r) = &cof * &det_inv;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RatFunc;

    fn rational_matrix(entries: &[&[i64]]) -> Matrix {
        let spec = TowerSpec::rational();
        Matrix::from_rows(
            entries
                .iter()
                .map(|row| row.iter().map(|&v| TowerElement::from_int(&spec, v)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_matches_cofactor_values() {
        let m = rational_matrix(&[&[2, 0, 1], &[1, 3, -1], &[0, 5, 4]]);
        // 2*(12+5) - 0 + 1*(5-0) = 39
        assert_eq!(m.det().as_ratfunc().unwrap(), RatFunc::from_int(39));
        let hyperbolic = rational_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(hyperbolic.det().as_ratfunc().unwrap(), RatFunc::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = rational_matrix(&[&[2, 0, 1], &[1, 3, -1], &[0, 5, 4]]);
        let inv = m.inverse().unwrap();
        let spec = TowerSpec::rational();
        assert_eq!(m.mul(&inv), Matrix::identity(&spec, 3));
        let singular = rational_matrix(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn laurent_symbol_inverse() {
        // Shear-with-symbol matrices invert through the adjugate.
        let spec = TowerSpec::builder().symbol("a").build().unwrap();
        let a = TowerElement::symbol(&spec, "a").unwrap();
        let one = TowerElement::one(&spec);
        let zero = TowerElement::zero(&spec);
        let m = Matrix::from_rows(vec![vec![a.clone(), zero.clone()], vec![one.clone(), one.clone()]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&spec, 2));
    }
}
