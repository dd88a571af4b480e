//! Small dense complex matrices: determinants, minors, orthonormal
//! completion, and a Jacobi eigensolver for symmetric real matrices.
//!
//! Sizes are bounded by 32. Everything is dense and row-major; there is no
//! sparse machinery and none is needed at desk scale.

use super::{re, IndexSubset, Scalar, ONE, ZERO};
use crate::error::{KrawError, Result};

/// Maximum supported side length.
pub const MAX_DIM: usize = 32;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(KrawError::Dimension("ragged row lengths".into()));
        }
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(KrawError::Degenerate("non-finite matrix entry".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| re(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(KrawError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(KrawError::Dimension("shape mismatch in addition".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(KrawError::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    /// Entry-wise max modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ‖self − other‖∞ entry-wise.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.max_abs())
    }

    /// Largest imaginary part in modulus; a realness check.
    pub fn max_imag(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Submatrix with the given rows and columns, both in the given order.
    pub fn submatrix(&self, row_ids: &[usize], col_ids: &[usize]) -> Result<Self> {
        if row_ids.iter().any(|&i| i >= self.rows) || col_ids.iter().any(|&j| j >= self.cols) {
            return Err(KrawError::Dimension("submatrix index out of range".into()));
        }
        Ok(Self::from_fn(row_ids.len(), col_ids.len(), |i, j| {
            self.get(row_ids[i], col_ids[j])
        }))
    }

    /// Determinant of the minor with rows I and columns J, both increasing.
    pub fn minor(&self, row_set: &IndexSubset, col_set: &IndexSubset) -> Result<Scalar> {
        if row_set.len() != col_set.len() {
            return Err(KrawError::Dimension(format!(
                "minor needs |I| = |J|, got {} and {}",
                row_set.len(),
                col_set.len()
            )));
        }
        self.submatrix(row_set.members(), col_set.members())?.det()
    }

    /// Determinant. Exact cofactor expansion for n ≤ 4, LU with partial
    /// pivoting above.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(KrawError::Dimension(format!(
                "determinant of non-square {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows > MAX_DIM {
            return Err(KrawError::Dimension(format!(
                "matrix side {} exceeds the supported bound {MAX_DIM}",
                self.rows
            )));
        }
        if self.rows <= 4 {
            return Ok(self.det_cofactor());
        }
        Ok(self.det_lu())
    }

    fn det_cofactor(&self) -> Scalar {
        let n = self.rows;
        match n {
            0 => ONE,
            1 => self.get(0, 0),
            2 => self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0),
            _ => {
                let mut acc = ZERO;
                let sub_rows: Vec<usize> = (1..n).collect();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a == ZERO {
                        continue;
                    }
                    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                    let minor = self
                        .submatrix(&sub_rows, &cols)
                        .expect("in-range cofactor indices")
                        .det_cofactor();
                    let sign = if j % 2 == 0 { ONE } else { -ONE };
                    acc += sign * a * minor;
                }
                acc
            }
        }
    }

    fn det_lu(&self) -> Scalar {
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r1, &r2| {
                    a[r1 * n + col]
                        .norm()
                        .partial_cmp(&a[r2 * n + col].norm())
                        .unwrap()
                })
                .unwrap();
            let pivot = a[pivot_row * n + col];
            if pivot.norm() == 0.0 {
                return ZERO;
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            det *= pivot;
            for r in col + 1..n {
                let factor = a[r * n + col] / pivot;
                if factor == ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= factor * v;
                }
            }
        }
        det
    }

    /// Inverse via Gauss-Jordan with partial pivoting. Desk-scale only.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(KrawError::Dimension("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&r1, &r2| {
                    a.get(r1, col)
                        .norm()
                        .partial_cmp(&a.get(r2, col).norm())
                        .unwrap()
                })
                .unwrap();
            if a.get(pivot_row, col).norm() < 1e-300 {
                return Err(KrawError::Singular("pivot collapsed during inversion".into()));
            }
            if pivot_row != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(pivot_row, j));
                    a.set(col, j, y);
                    a.set(pivot_row, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot_row, j));
                    inv.set(col, j, y);
                    inv.set(pivot_row, j, x);
                }
            }
            let pivot = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / pivot);
                inv.set(col, j, inv.get(col, j) / pivot);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor == ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - factor * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }
}

/// Orthogonal completion of a nonzero real vector: returns an orthogonal
/// matrix whose first row is v/‖v‖ (a Householder reflection, so the first
/// column agrees with the first row), together with its determinant.
pub fn orthonormal_complete(v: &[f64]) -> Result<(Matrix, f64)> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(KrawError::Degenerate(
            "orthonormal completion of a zero or non-finite vector".into(),
        ));
    }
    let n = v.len();
    let u: Vec<f64> = v.iter().map(|x| x / norm).collect();
    // w = u - e0; H = I - 2 w wᵗ / ‖w‖² satisfies H e0 = u and H = Hᵗ.
    let mut w = u.clone();
    w[0] -= 1.0;
    let w2: f64 = w.iter().map(|x| x * x).sum();
    if w2 < 1e-30 {
        return Ok((Matrix::identity(n), 1.0));
    }
    let h = Matrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        re(delta - 2.0 * w[i] * w[j] / w2)
    });
    Ok((h, -1.0))
}

/// Eigenvalues of a symmetric real matrix by cyclic Jacobi rotations,
/// ascending. Rejects complex or asymmetric input.
pub fn symmetric_eigenvalues(m: &Matrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(KrawError::Dimension("eigenvalues of non-square matrix".into()));
    }
    if m.max_imag() > 1e-12 {
        return Err(KrawError::Domain("Jacobi eigensolver needs a real matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).re).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            if (a[i][j] - a[j][i]).abs() > 1e-9 * (1.0 + a[i][j].abs()) {
                return Err(KrawError::Domain("Jacobi eigensolver needs symmetry".into()));
            }
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eig)
}

/// Smallest singular value of the matrix whose rows are the given complex
/// vectors, computed through the real embedding [[X, −Y], [Y, X]].
pub fn min_singular_value(rows: &[Vec<Scalar>]) -> Result<f64> {
    let r = rows.len();
    if r == 0 {
        return Ok(0.0);
    }
    let c = rows[0].len();
    if rows.iter().any(|row| row.len() != c) {
        return Err(KrawError::Dimension("ragged rows in singular value input".into()));
    }
    let embed = Matrix::from_fn(2 * r, 2 * c, |i, j| {
        let z = rows[i % r][j % c];
        match (i >= r, j >= c) {
            (false, false) | (true, true) => re(z.re),
            (false, true) => re(-z.im),
            (true, false) => re(z.im),
        }
    });
    let gram = embed.mul(&embed.transpose())?;
    let eig = symmetric_eigenvalues(&gram)?;
    Ok(eig[0].max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkern::SplitMix64;

    /// Permutation-sum determinant: the independent oracle for `det`.
    fn det_perm_sum(m: &Matrix) -> Scalar {
        fn go(m: &Matrix, used: &mut Vec<bool>, row: usize, sign: f64) -> Scalar {
            let n = m.rows();
            if row == n {
                return re(sign);
            }
            let mut acc = ZERO;
            for col in 0..n {
                if used[col] {
                    continue;
                }
                used[col] = true;
                let inversions = used[col + 1..].iter().filter(|&&u| u).count();
                let s = if inversions % 2 == 0 { sign } else { -sign };
                acc += m.get(row, col) * go(m, used, row + 1, s);
                used[col] = false;
            }
            acc
        }
        go(m, &mut vec![false; m.rows()], 0, 1.0)
    }

    fn random_matrix(rng: &mut SplitMix64, n: usize) -> Matrix {
        Matrix::from_fn(n, n, |_, _| re(rng.next_range(-1.0, 1.0)))
    }

    #[test]
    fn det_identity() {
        assert_eq!(Matrix::identity(3).det().unwrap(), ONE);
    }

    #[test]
    fn det_two_by_two() {
        let m = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        assert_eq!(m.det().unwrap(), re(-2.0));
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Matrix::zeros(2, 3);
        assert!(matches!(m.det(), Err(KrawError::Dimension(_))));
    }

    #[test]
    fn det_five_by_five_vs_permutation_oracle() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..10 {
            let m = random_matrix(&mut rng, 5);
            let lu = m.det().unwrap();
            let oracle = det_perm_sum(&m);
            assert!((lu - oracle).norm() <= 1e-12, "{lu} vs {oracle}");
        }
    }

    #[test]
    fn det_product_rule() {
        let mut rng = SplitMix64::new(5);
        for n in 2..=6usize {
            for _ in 0..5 {
                let a = random_matrix(&mut rng, n);
                let b = random_matrix(&mut rng, n);
                let lhs = a.mul(&b).unwrap().det().unwrap();
                let rhs = a.det().unwrap() * b.det().unwrap();
                let scale = lhs.norm().max(rhs.norm()).max(1.0);
                assert!((lhs - rhs).norm() <= 1e-11 * scale);
            }
        }
    }

    #[test]
    fn minor_identity_block() {
        let i3 = Matrix::identity(3);
        let s = IndexSubset::new(vec![0, 1]).unwrap();
        assert_eq!(i3.minor(&s, &s).unwrap(), ONE);
    }

    #[test]
    fn minor_single_entry() {
        let m = Matrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]]).unwrap();
        let s = IndexSubset::new(vec![1]).unwrap();
        assert_eq!(m.minor(&s, &s).unwrap(), re(-1.0));
    }

    #[test]
    fn minor_size_mismatch() {
        let m = Matrix::identity(3);
        let i = IndexSubset::new(vec![0, 1]).unwrap();
        let j = IndexSubset::new(vec![2]).unwrap();
        assert!(matches!(m.minor(&i, &j), Err(KrawError::Dimension(_))));
    }

    #[test]
    fn minor_matches_delete_then_det() {
        // Oracle: build the submatrix by hand and take its determinant.
        let mut rng = SplitMix64::new(23);
        let m = random_matrix(&mut rng, 5);
        let i = IndexSubset::new(vec![0, 2, 4]).unwrap();
        let j = IndexSubset::new(vec![1, 2, 3]).unwrap();
        let naive = Matrix::from_fn(3, 3, |r, c| m.get(i.members()[r], j.members()[c]));
        let want = det_perm_sum(&naive);
        assert!((m.minor(&i, &j).unwrap() - want).norm() <= 1e-12);
    }

    #[test]
    fn cauchy_binet_on_random_pairs() {
        // Σ_I minor(A, J, I) · minor(Bᵗ, J, I) = minor(AB, J, J); the right
        // side is the independent product-then-minor oracle.
        use crate::numkern::enumerate_subsets;
        let mut rng = SplitMix64::new(77);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, 3);
            let b = random_matrix(&mut rng, 3);
            let bt = b.transpose();
            let ab = a.mul(&b).unwrap();
            for d in 1..=3usize {
                for j_set in enumerate_subsets(3, d) {
                    let mut acc = ZERO;
                    for i_set in enumerate_subsets(3, d) {
                        acc += a.minor(&j_set, &i_set).unwrap()
                            * bt.minor(&j_set, &i_set).unwrap();
                    }
                    let want = ab.minor(&j_set, &j_set).unwrap();
                    assert!((acc - want).norm() <= 1e-12, "d={d} J={:?}", j_set.members());
                }
            }
        }
    }

    #[test]
    fn orthonormal_complete_axis_vector() {
        let (o, det) = orthonormal_complete(&[1.0, 0.0]).unwrap();
        assert_eq!(o.get(0, 0), ONE);
        assert_eq!(o.get(0, 1), ZERO);
        assert_eq!(det, 1.0);
    }

    #[test]
    fn orthonormal_complete_is_orthogonal() {
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        let (o, _) = orthonormal_complete(&[inv_sqrt2, inv_sqrt2]).unwrap();
        let gram = o.mul(&o.transpose()).unwrap();
        assert!(gram.max_abs_diff(&Matrix::identity(2)).unwrap() <= 1e-14);
    }

    #[test]
    fn orthonormal_complete_det_is_unimodular() {
        let mut rng = SplitMix64::new(3);
        for n in 1..=6usize {
            let v: Vec<f64> = (0..n).map(|_| rng.next_range(-1.0, 1.0)).collect();
            if v.iter().all(|x| x.abs() < 1e-3) {
                continue;
            }
            let (o, det) = orthonormal_complete(&v).unwrap();
            assert!((o.det().unwrap().norm() - 1.0).abs() <= 1e-14);
            assert!((o.det().unwrap().re - det).abs() <= 1e-12);
            let gram = o.mul(&o.transpose()).unwrap();
            assert!(gram.max_abs_diff(&Matrix::identity(n)).unwrap() <= 1e-13);
            // First row is the normalized input.
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            for j in 0..n {
                assert!((o.get(0, j).re - v[j] / norm).abs() <= 1e-13);
            }
        }
    }

    #[test]
    fn orthonormal_complete_rejects_zero() {
        assert!(matches!(
            orthonormal_complete(&[0.0, 0.0]),
            Err(KrawError::Degenerate(_))
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = SplitMix64::new(9);
        let m = random_matrix(&mut rng, 4);
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        assert!(prod.max_abs_diff(&Matrix::identity(4)).unwrap() <= 1e-12);
    }

    #[test]
    fn jacobi_diagonal_matrix() {
        let m = Matrix::diag(&[re(3.0), re(-1.0), re(0.5)]);
        let eig = symmetric_eigenvalues(&m).unwrap();
        assert!((eig[0] + 1.0).abs() < 1e-12);
        assert!((eig[1] - 0.5).abs() < 1e-12);
        assert!((eig[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_known_two_by_two() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let m = Matrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let eig = symmetric_eigenvalues(&m).unwrap();
        assert!((eig[0] - 1.0).abs() < 1e-12);
        assert!((eig[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn min_singular_value_of_orthonormal_rows() {
        let rows = vec![vec![ONE, ZERO], vec![ZERO, ONE]];
        assert!((min_singular_value(&rows).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn min_singular_value_detects_rank_deficiency() {
        let rows = vec![vec![ONE, ONE], vec![ONE, ONE]];
        assert!(min_singular_value(&rows).unwrap() < 1e-12);
    }
}
