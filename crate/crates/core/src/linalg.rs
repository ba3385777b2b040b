//! Exact linear algebra over a generic scalar.
//!
//! Everything here is deterministic: pivots are always the first nonzero
//! entry in row/column order, so certificates and ranks reproduce across
//! runs. With an exact scalar ([`crate::Rat`]) no operation rounds.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &S {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut S {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = S::one() / m.at(pivot_row, col).clone();
            for j in col..m.cols {
                let v = m.at(pivot_row, j).clone() * inv.clone();
                *m.at_mut(pivot_row, j) = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for j in col..m.cols {
                    let v = m.at(r, j).clone() - f.clone() * m.at(pivot_row, j).clone();
                    *m.at_mut(r, j) = v;
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        (m, pivot_cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, in free-column
    /// order; each vector has a single `1` at its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let (rref, pivot_cols) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -rref.at(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact by construction.
pub fn bareiss_determinant<S: Scalar>(m: &Matrix<S>) -> Result<S> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(S::one());
    }
    let mut a = m.clone();
    let mut sign = S::one();
    let mut prev = S::one();
    for k in 0..n - 1 {
        let Some(src) = (k..n).find(|&r| !a.at(r, k).is_zero()) else {
            return Ok(S::zero());
        };
        if src != k {
            a.swap_rows(k, src);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.at(k, k).clone() * a.at(i, j).clone()
                    - a.at(i, k).clone() * a.at(k, j).clone())
                    / prev.clone();
                *a.at_mut(i, j) = v;
            }
            *a.at_mut(i, k) = S::zero();
        }
        prev = a.at(k, k).clone();
    }
    Ok(sign * a.at(n - 1, n - 1).clone())
}

/// Inertia of a symmetric matrix, plus a vector with positive value when
/// one exists.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature<S> {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub positive_witness: Option<Vec<S>>,
}

/// Computes the inertia of a symmetric matrix by exact congruence
/// elimination.
///
/// Diagonal pivots are consumed first; when the active block has an
/// all-zero diagonal but a nonzero off-diagonal entry, that hyperbolic pair
/// contributes one positive and one negative direction. The tracked basis
/// vectors turn any positive direction into an explicit witness `x` with
/// `x^T Q x > 0`.
pub fn symmetric_signature<S: Scalar>(m: &Matrix<S>) -> Result<Signature<S>> {
    if !m.is_symmetric() {
        return Err(Error::InvalidConfiguration(
            "signature requires a symmetric matrix".into(),
        ));
    }
    let n = m.rows();
    let mut a = m.clone();
    // basis[v] expresses the current v-th coordinate direction in the
    // original coordinates.
    let mut basis: Vec<Vec<S>> = (0..n)
        .map(|i| {
            let mut e = vec![S::zero(); n];
            e[i] = S::one();
            e
        })
        .collect();
    let mut active: Vec<bool> = vec![true; n];
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
        positive_witness: None,
    };

    loop {
        let live: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        if live.is_empty() {
            break;
        }
        if let Some(&k) = live.iter().find(|&&i| !a.at(i, i).is_zero()) {
            let d = a.at(k, k).clone();
            if d > S::zero() {
                sig.positive += 1;
                if sig.positive_witness.is_none() {
                    sig.positive_witness = Some(basis[k].clone());
                }
            } else {
                sig.negative += 1;
            }
            let row_k: Vec<S> = (0..n).map(|j| a.at(k, j).clone()).collect();
            let factors: Vec<(usize, S)> = live
                .iter()
                .filter(|&&i| i != k)
                .map(|&i| (i, row_k[i].clone() / d.clone()))
                .collect();
            for &(i, ref fi) in &factors {
                for &(j, _) in &factors {
                    let v = a.at(i, j).clone() - fi.clone() * row_k[j].clone();
                    *a.at_mut(i, j) = v;
                }
                let bk = basis[k].clone();
                for (b, kb) in basis[i].iter_mut().zip(bk) {
                    *b = b.clone() - fi.clone() * kb;
                }
            }
            active[k] = false;
        } else if let Some((k, l)) = first_offdiagonal(&a, &live) {
            // Hyperbolic pair: zero diagonal, coupling c != 0.
            let c = a.at(k, l).clone();
            sig.positive += 1;
            sig.negative += 1;
            if sig.positive_witness.is_none() {
                let w: Vec<S> = basis[k]
                    .iter()
                    .zip(&basis[l])
                    .map(|(x, y)| {
                        if c > S::zero() {
                            x.clone() + y.clone()
                        } else {
                            x.clone() - y.clone()
                        }
                    })
                    .collect();
                sig.positive_witness = Some(w);
            }
            let row_k: Vec<S> = (0..n).map(|j| a.at(k, j).clone()).collect();
            let row_l: Vec<S> = (0..n).map(|j| a.at(l, j).clone()).collect();
            let rest: Vec<usize> = live.iter().copied().filter(|&i| i != k && i != l).collect();
            let alpha: Vec<S> = rest.iter().map(|&i| row_l[i].clone() / c.clone()).collect();
            let beta: Vec<S> = rest.iter().map(|&i| row_k[i].clone() / c.clone()).collect();
            for (ai, &i) in rest.iter().enumerate() {
                for (aj, &j) in rest.iter().enumerate() {
                    let correction = row_l[j].clone() * row_k[i].clone()
                        + row_k[j].clone() * row_l[i].clone();
                    let v = a.at(i, j).clone() - correction / c.clone();
                    *a.at_mut(i, j) = v;
                    let _ = aj;
                }
                let bk = basis[k].clone();
                let bl = basis[l].clone();
                for ((b, kb), lb) in basis[i].iter_mut().zip(bk).zip(bl) {
                    *b = b.clone() - alpha[ai].clone() * kb - beta[ai].clone() * lb;
                }
            }
            active[k] = false;
            active[l] = false;
        } else {
            sig.zero += live.len();
            break;
        }
    }
    Ok(sig)
}

fn first_offdiagonal<S: Scalar>(a: &Matrix<S>, live: &[usize]) -> Option<(usize, usize)> {
    for (p, &k) in live.iter().enumerate() {
        for &l in &live[p + 1..] {
            if !a.at(k, l).is_zero() {
                return Some((k, l));
            }
        }
    }
    None
}

/// Sparse vector: strictly ascending column indices, nonzero values only.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<S> {
    entries: Vec<(usize, S)>,
}

impl<S: Scalar> SparseVec<S> {
    pub fn new(mut entries: Vec<(usize, S)>) -> Self {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(c, _)| *c);
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, S)] {
        &self.entries
    }

    pub fn leading(&self) -> Option<(usize, &S)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    fn scale(&self, f: &S) -> SparseVec<S> {
        SparseVec::new(
            self.entries
                .iter()
                .map(|(c, v)| (*c, v.clone() * f.clone()))
                .collect(),
        )
    }

    /// `self - f * other`, merged sparsely.
    fn sub_scaled(&self, f: &S, other: &SparseVec<S>) -> SparseVec<S> {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            match (self.entries.get(i), other.entries.get(j)) {
                (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                    let v = va.clone() - f.clone() * vb.clone();
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((ca, va)), Some((cb, _))) if ca < cb => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (Some(_), Some((cb, vb))) => {
                    out.push((*cb, -(f.clone() * vb.clone())));
                    j += 1;
                }
                (Some((ca, va)), None) => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                (None, Some((cb, vb))) => {
                    out.push((*cb, -(f.clone() * vb.clone())));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot_dense(&self, x: &[S]) -> S {
        self.entries
            .iter()
            .fold(S::zero(), |acc, (c, v)| acc + v.clone() * x[*c].clone())
    }
}

/// Incremental Gaussian elimination over sparse rows.
///
/// Rows are offered in order; each is reduced against the pivots collected
/// so far and becomes a new pivot if anything is left. The first nonzero
/// column of the reduced row is its pivot column, which makes the pivot
/// row selection deterministic and reproducible.
#[derive(Debug, Clone)]
pub struct RowReducer<S> {
    pivots: BTreeMap<usize, SparseVec<S>>,
    sources: Vec<usize>,
}

impl<S: Scalar> RowReducer<S> {
    pub fn new() -> Self {
        RowReducer {
            pivots: BTreeMap::new(),
            sources: Vec::new(),
        }
    }

    /// Reduces a row against the current pivots without installing it.
    pub fn reduce(&self, row: SparseVec<S>) -> SparseVec<S> {
        let mut r = row;
        while let Some((lead, val)) = r.leading() {
            let Some(p) = self.pivots.get(&lead) else { break };
            let f = val.clone();
            r = r.sub_scaled(&f, p);
        }
        r
    }

    /// Offers a row; returns true when it contributed a new pivot.
    pub fn offer(&mut self, source_index: usize, row: SparseVec<S>) -> bool {
        let r = self.reduce(row);
        match r.leading() {
            Some((lead, val)) => {
                let inv = S::one() / val.clone();
                self.pivots.insert(lead, r.scale(&inv));
                self.sources.push(source_index);
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Original indices of the rows that became pivots, ascending.
    pub fn pivot_sources(&self) -> Vec<usize> {
        let mut s = self.sources.clone();
        s.sort_unstable();
        s
    }

    /// The normalized pivot rows in pivot-column order.
    pub fn pivot_rows(&self) -> Vec<&SparseVec<S>> {
        self.pivots.values().collect()
    }
}

impl<S: Scalar> Default for RowReducer<S> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::from_i64;
    use crate::Rat;

    fn mat(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(bareiss_determinant(&mat(&[&[2]])).unwrap(), from_i64::<Rat>(2));
        assert_eq!(
            bareiss_determinant(&mat(&[&[1, 2], &[3, 4]])).unwrap(),
            from_i64::<Rat>(-2)
        );
        assert_eq!(
            bareiss_determinant(&mat(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])).unwrap(),
            from_i64::<Rat>(1)
        );
        assert_eq!(
            bareiss_determinant(&mat(&[&[1, 2], &[2, 4]])).unwrap(),
            from_i64::<Rat>(0)
        );
        assert!(bareiss_determinant(&mat(&[&[1, 2]])).is_err());
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 1);
        for v in &kernel {
            let mv = m.mul_vec(v).unwrap();
            assert!(mv.iter().all(|x| x.is_zero()));
        }
        assert_eq!(mat(&[&[0, 0], &[0, 0]]).rank(), 0);
    }

    #[test]
    fn signature_diagonal_and_hyperbolic() {
        let sig = symmetric_signature(&mat(&[&[-2, 1], &[1, -2]])).unwrap();
        assert_eq!((sig.positive, sig.negative, sig.zero), (0, 2, 0));
        assert!(sig.positive_witness.is_none());

        // Hyperbolic plane has inertia (1, 1).
        let m = mat(&[&[0, 1], &[1, 0]]);
        let sig = symmetric_signature(&m).unwrap();
        assert_eq!((sig.positive, sig.negative, sig.zero), (1, 1, 0));
        let w = sig.positive_witness.unwrap();
        let quad = m
            .mul_vec(&w)
            .unwrap()
            .iter()
            .zip(&w)
            .fold(Rat::new(0.into(), 1.into()), |acc, (a, b)| {
                acc + a.clone() * b.clone()
            });
        assert!(quad > from_i64::<Rat>(0));

        let sig = symmetric_signature(&mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])).unwrap();
        assert_eq!((sig.positive, sig.negative, sig.zero), (1, 2, 0));

        let sig = symmetric_signature(&mat(&[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!((sig.positive, sig.negative, sig.zero), (0, 0, 2));
    }

    #[test]
    fn signature_counts_match_rank() {
        let m = mat(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, -3]]);
        let sig = symmetric_signature(&m).unwrap();
        assert_eq!(sig.positive + sig.negative, m.rank());
        assert_eq!(sig.positive + sig.negative + sig.zero, m.rows());
    }

    #[test]
    fn sparse_reduction_tracks_pivot_sources() {
        let mut red: RowReducer<Rat> = RowReducer::new();
        assert!(red.offer(0, SparseVec::new(vec![(1, from_i64(-1))])));
        assert!(red.offer(1, SparseVec::new(vec![(2, from_i64(-1))])));
        // (0, -2, 1) is dependent on the first two rows.
        assert!(!red.offer(
            2,
            SparseVec::new(vec![(1, from_i64(-2)), (2, from_i64(1))])
        ));
        assert!(red.offer(3, SparseVec::new(vec![(0, from_i64(1))])));
        assert_eq!(red.rank(), 3);
        assert_eq!(red.pivot_sources(), vec![0, 1, 3]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Matrix<Rat>> {
            (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-4i64..=4, r * c).prop_map(move |vals| {
                    let mut it = vals.into_iter();
                    Matrix::from_fn(r, c, |_, _| from_i64(it.next().unwrap()))
                })
            })
        }

        proptest! {
            #[test]
            fn kernel_vectors_annihilate(m in small_matrix()) {
                for v in m.kernel_basis() {
                    let mv = m.mul_vec(&v).unwrap();
                    prop_assert!(mv.iter().all(|x| x.is_zero()));
                }
                prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
            }

            #[test]
            fn sparse_rank_agrees_with_dense(m in small_matrix()) {
                let mut red: RowReducer<Rat> = RowReducer::new();
                for r in 0..m.rows() {
                    let row = SparseVec::new(
                        m.row(r).iter().cloned().enumerate().collect());
                    red.offer(r, row);
                }
                prop_assert_eq!(red.rank(), m.rank());
            }
        }
    }
}
