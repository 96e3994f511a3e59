//! Compressed sparse row storage for complex matrices, built from triplets.

use num_complex::Complex64;

/// Square complex sparse matrix in CSR form. Duplicate triplet entries are
/// summed during construction.
#[derive(Debug, Clone)]
pub struct CsrMatrix {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<Complex64>,
}

impl CsrMatrix {
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, Complex64)]) -> Self {
        let mut order: Vec<usize> = (0..triplets.len()).collect();
        order.sort_unstable_by_key(|&t| (triplets[t].0, triplets[t].1));

        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());

        for &t in &order {
            let (r, c, v) = triplets[t];
            debug_assert!(r < n && c < n);
            if let (Some(&lc), true) = (col_idx.last(), row_ptr[r + 1] > 0) {
                // same row as previous entry and same column: accumulate
                if lc == c && row_ptr[r + 1] == col_idx.len() {
                    *values.last_mut().unwrap() += v;
                    continue;
                }
            }
            // close out rows up to r
            col_idx.push(c);
            values.push(v);
            row_ptr[r + 1] = col_idx.len();
        }
        // make row_ptr cumulative over empty rows
        for i in 1..=n {
            if row_ptr[i] < row_ptr[i - 1] {
                row_ptr[i] = row_ptr[i - 1];
            }
        }
        CsrMatrix {
            n,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// y = A x
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.n];
        for r in 0..self.n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            y[r] = acc;
        }
        y
    }

    /// y = A^H x (conjugate transpose apply)
    pub fn mul_vec_conj_transpose(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.n];
        for r in 0..self.n {
            let xr = x[r];
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                y[self.col_idx[k]] += self.values[k].conj() * xr;
            }
        }
        y
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|r| {
                self.values[self.row_ptr[r]..self.row_ptr[r + 1]]
                    .iter()
                    .map(|v| v.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// Entrywise linear combination c0*A0 + c1*A1 + c2*A2 over the union pattern.
    pub fn linear_combination(mats: &[(&CsrMatrix, Complex64)]) -> CsrMatrix {
        assert!(!mats.is_empty());
        let n = mats[0].0.n;
        let mut triplets = Vec::new();
        for (m, c) in mats {
            assert_eq!(m.n, n);
            if c.norm() == 0.0 {
                continue;
            }
            for r in 0..n {
                for k in m.row_ptr[r]..m.row_ptr[r + 1] {
                    triplets.push((r, m.col_idx[k], *c * m.values[k]));
                }
            }
        }
        CsrMatrix::from_triplets(n, &triplets)
    }

    /// Undirected adjacency (pattern of A + A^T) as neighbor lists, self loops dropped.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for r in 0..self.n {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.col_idx[k];
                if c != r {
                    adj[r].push(c);
                    adj[c].push(r);
                }
            }
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        adj
    }

    pub fn max_abs_diff(&self, other: &CsrMatrix) -> f64 {
        let d = CsrMatrix::linear_combination(&[
            (self, Complex64::new(1.0, 0.0)),
            (other, Complex64::new(-1.0, 0.0)),
        ]);
        d.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn triplets_accumulate_and_matvec() {
        let t = vec![
            (0, 0, c(1.0, 0.0)),
            (0, 1, c(2.0, 0.0)),
            (1, 1, c(0.0, 1.0)),
            (0, 1, c(0.5, 0.0)),
        ];
        let a = CsrMatrix::from_triplets(2, &t);
        let y = a.mul_vec(&[c(1.0, 0.0), c(1.0, 0.0)]);
        assert!((y[0] - c(3.5, 0.0)).norm() < 1e-15);
        assert!((y[1] - c(0.0, 1.0)).norm() < 1e-15);
        let z = a.mul_vec_conj_transpose(&[c(1.0, 0.0), c(1.0, 0.0)]);
        // A^H rows: [1, 0; 2.5, -i]
        assert!((z[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((z[1] - c(2.5, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn combination_matches_manual_sum() {
        let a = CsrMatrix::from_triplets(2, &[(0, 0, c(1.0, 0.0)), (1, 0, c(2.0, 0.0))]);
        let b = CsrMatrix::from_triplets(2, &[(0, 0, c(0.0, 1.0)), (0, 1, c(1.0, 0.0))]);
        let s = CsrMatrix::linear_combination(&[(&a, c(2.0, 0.0)), (&b, c(0.0, 1.0))]);
        let y = s.mul_vec(&[c(1.0, 0.0), c(1.0, 0.0)]);
        // 2A + iB = [2-1, i; 4, 0] => y = (1+i, 4)
        assert!((y[0] - c(1.0, 1.0)).norm() < 1e-15);
        assert!((y[1] - c(4.0, 0.0)).norm() < 1e-15);
    }
}
