//! Pairing matrix between test-curve functionals and the canonical basis,
//! exact ranks, independence certificates and relation checks.
//!
//! Rows are the degree functionals of every generated test curve plus one
//! formal `lambda` functional (entry `1` at `lambda`, `0` elsewhere). That
//! last row is an axiom, not a curve degree: no test curve pairs nonzero
//! with `lambda`, and the row makes the nondegeneracy of `lambda` explicit
//! in every certificate. Columns are the canonical basis symbols; the rank
//! of the matrix is the witness for the linear independence of the basis.

use std::collections::BTreeSet;
use std::fmt;

use crate::boundary::enumerate_upsilon_bar;
use crate::curves::{generate_all, TestCurve};
use crate::divisor::{BasisDescriptor, GeneratorSymbol, TautClass};
use crate::error::{Error, Result};
use crate::linalg::{bareiss_determinant, Matrix, RowReducer, SparseVec};
use crate::scalar::{from_i64, Scalar};
use crate::surface::SurfaceType;
use crate::Rat;

/// Label of one pairing-matrix row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowLabel {
    Curve(TestCurve),
    LambdaAxiom,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Curve(c) => write!(f, "{c}"),
            RowLabel::LambdaAxiom => write!(f, "axiom:lambda"),
        }
    }
}

/// Exact pairing matrix of a surface; rows stored sparsely.
#[derive(Debug, Clone)]
pub struct PairingMatrix<S: Scalar = Rat> {
    surface: SurfaceType,
    basis: BasisDescriptor,
    labels: Vec<RowLabel>,
    rows: Vec<SparseVec<S>>,
}

impl<S: Scalar> PairingMatrix<S> {
    /// All generated test curves plus the `lambda` axiom row, in
    /// deterministic order.
    pub fn build(surface: SurfaceType) -> Result<Self> {
        let mut labels: Vec<RowLabel> = generate_all(surface)?
            .into_iter()
            .map(RowLabel::Curve)
            .collect();
        labels.push(RowLabel::LambdaAxiom);
        Self::from_rows(surface, labels)
    }

    /// Builds the matrix for an explicit row list. Each curve row is the
    /// degree functional evaluated at every basis symbol.
    pub fn from_rows(surface: SurfaceType, labels: Vec<RowLabel>) -> Result<Self> {
        let basis = BasisDescriptor::new(surface)?;
        let mut rows = Vec::with_capacity(labels.len());
        for label in &labels {
            let mut entries: Vec<(usize, S)> = Vec::new();
            match label {
                RowLabel::Curve(curve) => {
                    if curve.surface() != surface {
                        return Err(Error::SurfaceMismatch {
                            expected_g: surface.genus(),
                            expected_n: surface.marked_points(),
                            found_g: curve.surface().genus(),
                            found_n: curve.surface().marked_points(),
                        });
                    }
                    for (col, sym) in basis.symbols().iter().enumerate() {
                        let d = curve.degree(sym)?;
                        if d != 0 {
                            entries.push((col, from_i64(d)));
                        }
                    }
                }
                RowLabel::LambdaAxiom => entries.push((0, S::one())),
            }
            rows.push(SparseVec::new(entries));
        }
        Ok(PairingMatrix {
            surface,
            basis,
            labels,
            rows,
        })
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn basis(&self) -> &BasisDescriptor {
        &self.basis
    }

    pub fn row_labels(&self) -> &[RowLabel] {
        &self.labels
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> S {
        assert!(row < self.row_count() && col < self.col_count());
        self.rows[row]
            .entries()
            .iter()
            .find(|(c, _)| *c == col)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(S::zero)
    }

    /// Exact rank over the scalar field.
    pub fn rank(&self) -> usize {
        let mut reducer = RowReducer::new();
        for (r, row) in self.rows.iter().enumerate() {
            reducer.offer(r, row.clone());
        }
        reducer.rank()
    }

    /// Independence certificate for a subset of basis columns.
    ///
    /// When the selected columns are linearly independent against the rows
    /// the certificate names a square minor with nonzero determinant; the
    /// witness rows are the first rows (in matrix order) that contribute
    /// pivots. Otherwise it returns an exact nonzero kernel vector over the
    /// selected columns.
    pub fn certificate(&self, columns: &[GeneratorSymbol]) -> Result<Certificate<S>> {
        if columns.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut seen = BTreeSet::new();
        let mut positions = Vec::with_capacity(columns.len());
        for sym in columns {
            if !seen.insert(*sym) {
                return Err(Error::DuplicateColumn(sym.to_string()));
            }
            let pos = self
                .basis
                .position(sym)
                .ok_or_else(|| Error::UnknownColumn(sym.to_string()))?;
            positions.push(pos);
        }

        let k = positions.len();
        let mut reducer = RowReducer::new();
        for (r, row) in self.rows.iter().enumerate() {
            reducer.offer(r, restrict(row, &positions));
        }

        if reducer.rank() == k {
            let witness_rows = reducer.pivot_sources();
            let minor = Matrix::from_fn(k, k, |i, j| {
                self.entry(witness_rows[i], positions[j])
            });
            let determinant = bareiss_determinant(&minor)?;
            assert!(
                !determinant.is_zero(),
                "pivot rows must give a nonsingular minor"
            );
            Ok(Certificate::IndependenceWitness {
                row_indices: witness_rows,
                determinant,
            })
        } else {
            // The pivot rows span the restricted row space, so their kernel
            // is the kernel of the whole restricted matrix.
            let pivot_rows: Vec<Vec<S>> = reducer
                .pivot_rows()
                .into_iter()
                .map(|sv| {
                    let mut dense = vec![S::zero(); k];
                    for (c, v) in sv.entries() {
                        dense[*c] = v.clone();
                    }
                    dense
                })
                .collect();
            let kernel = Matrix::from_rows(pivot_rows)?
                .kernel_basis()
                .into_iter()
                .next()
                .expect("rank deficit guarantees a kernel vector");
            for row in &self.rows {
                let value = restrict(row, &positions).dot_dense(&kernel);
                assert!(value.is_zero(), "kernel vector must annihilate every row");
            }
            Ok(Certificate::KernelVector(kernel))
        }
    }
}

fn restrict<S: Scalar>(row: &SparseVec<S>, positions: &[usize]) -> SparseVec<S> {
    SparseVec::new(
        positions
            .iter()
            .enumerate()
            .filter_map(|(new_col, &old_col)| {
                row.entries()
                    .iter()
                    .find(|(c, _)| *c == old_col)
                    .map(|(_, v)| (new_col, v.clone()))
            })
            .collect(),
    )
}

/// Outcome of a column-independence query.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<S> {
    IndependenceWitness {
        /// Row indices of the square minor, ascending.
        row_indices: Vec<usize>,
        /// Exact determinant of that minor; nonzero.
        determinant: S,
    },
    /// Nonzero exact vector over the selected columns annihilated by all
    /// rows.
    KernelVector(Vec<S>),
}

/// Rank the canonical basis predicts: `2 + n + |classes|` for `g >= 3`,
/// `1 + n + |classes|` for `g = 2`, `1 + |classes|` for `g = 1`.
pub fn expected_picard_rank(surface: SurfaceType) -> Result<usize> {
    let g = surface.genus();
    if g == 0 {
        return Err(Error::GenusZeroUnsupported("the expected rank"));
    }
    let splits = enumerate_upsilon_bar(surface).len();
    let n = surface.marked_points() as usize;
    Ok(match g {
        1 => 1 + splits,
        2 => 1 + n + splits,
        _ => 2 + n + splits,
    })
}

/// Per-curve evaluation report of a candidate relation.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport<S: Scalar = Rat> {
    /// Each generated curve with its exact pairing value.
    pub per_curve: Vec<(TestCurve, S)>,
    /// `lambda` coefficient of the candidate after basis reduction; the
    /// formal axiom row. A genuine relation has this zero as well.
    pub axiom_value: S,
    /// True when every curve evaluation is exactly zero.
    pub is_relation: bool,
}

/// Pairs a candidate class against every generated test curve.
pub fn relation_check<S: Scalar>(candidate: &TautClass<S>) -> Result<RelationReport<S>> {
    let surface = candidate.surface();
    let reduced = candidate.reduce_to_basis()?;
    let axiom_value = reduced.coeff(&GeneratorSymbol::Lambda);
    let mut per_curve = Vec::new();
    let mut is_relation = true;
    for curve in generate_all(surface)? {
        let value = curve.degree_on_class(candidate)?;
        if !value.is_zero() {
            is_relation = false;
        }
        per_curve.push((curve, value));
    }
    Ok(RelationReport {
        per_curve,
        axiom_value,
        is_relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{canonicalize, HalfIndex, LabelSet};

    type Pairing = PairingMatrix<Rat>;
    type Class = TautClass<Rat>;

    fn surface(g: u32, n: u32) -> SurfaceType {
        SurfaceType::new(g, n).unwrap()
    }

    fn labels(ts: &[u32]) -> LabelSet {
        LabelSet::from_labels(ts).unwrap()
    }

    fn delta(i: u32, ts: &[u32], s: SurfaceType) -> GeneratorSymbol {
        GeneratorSymbol::DeltaSplit(canonicalize(HalfIndex::new(i, labels(ts)), s).unwrap())
    }

    fn rat(v: i64) -> Rat {
        from_i64(v)
    }

    fn dense_row(m: &Pairing, r: usize) -> Vec<i64> {
        (0..m.col_count())
            .map(|c| {
                let v = m.entry(r, c);
                assert!(v.is_integer(), "curve degrees are integral");
                i64::try_from(v.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn matrix_3_0() {
        let m = Pairing::build(surface(3, 0)).unwrap();
        let labels: Vec<String> = m.row_labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(
            labels,
            vec!["A", "B:1:[]", "C:1:[]", "C:2:[]", "D:1:1:[]:[]", "axiom:lambda"]
        );
        // Columns: lambda, irr, split:1:[].
        assert_eq!(dense_row(&m, 0), vec![0, -1, 0]);
        assert_eq!(dense_row(&m, 1), vec![0, 0, -1]);
        assert_eq!(dense_row(&m, 2), vec![0, -2, 1]);
        assert_eq!(dense_row(&m, 3), vec![0, -2, 1]);
        assert_eq!(dense_row(&m, 4), vec![0, 0, -1]);
        assert_eq!(dense_row(&m, 5), vec![1, 0, 0]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn matrix_1_1_is_axiom_only() {
        let m = Pairing::build(surface(1, 1)).unwrap();
        assert_eq!(m.row_count(), 1);
        assert_eq!(m.col_count(), 1);
        assert_eq!(m.entry(0, 0), rat(1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn matrix_1_2() {
        let m = Pairing::build(surface(1, 2)).unwrap();
        // Columns: lambda, split:0:[1,2]; rows: the single D curve, axiom.
        assert_eq!(m.row_count(), 2);
        assert_eq!(m.col_count(), 2);
        assert_eq!(dense_row(&m, 0), vec![0, 1]);
        assert_eq!(dense_row(&m, 1), vec![1, 0]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn expected_ranks() {
        assert_eq!(expected_picard_rank(surface(3, 0)).unwrap(), 3);
        assert_eq!(expected_picard_rank(surface(2, 1)).unwrap(), 3);
        assert_eq!(expected_picard_rank(surface(1, 1)).unwrap(), 1);
        assert_eq!(expected_picard_rank(surface(1, 2)).unwrap(), 2);
        assert_eq!(expected_picard_rank(surface(2, 0)).unwrap(), 2);
        assert!(matches!(
            expected_picard_rank(surface(0, 3)),
            Err(Error::GenusZeroUnsupported(_))
        ));
    }

    #[test]
    fn certificate_full_basis_3_0() {
        let m = Pairing::build(surface(3, 0)).unwrap();
        let cols: Vec<GeneratorSymbol> = m.basis().symbols().to_vec();
        match m.certificate(&cols).unwrap() {
            Certificate::IndependenceWitness {
                row_indices,
                determinant,
            } => {
                // First pivots in row order: A, B:1:[], then the axiom row.
                assert_eq!(row_indices, vec![0, 1, 5]);
                assert!(determinant == rat(1) || determinant == rat(-1));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn certificate_rejects_bad_selections() {
        let m = Pairing::build(surface(3, 0)).unwrap();
        assert!(matches!(m.certificate(&[]), Err(Error::EmptySelection)));
        assert!(matches!(
            m.certificate(&[GeneratorSymbol::DeltaIrr, GeneratorSymbol::DeltaIrr]),
            Err(Error::DuplicateColumn(_))
        ));
        assert!(matches!(
            m.certificate(&[GeneratorSymbol::Psi(1)]),
            Err(Error::UnknownColumn(_))
        ));
    }

    #[test]
    fn certificate_kernel_without_axiom_row() {
        // Drop the axiom row: every curve kills lambda, so the lambda
        // column alone is annihilated and the kernel vector is (1).
        let s = surface(3, 0);
        let rows: Vec<RowLabel> = generate_all(s)
            .unwrap()
            .into_iter()
            .map(RowLabel::Curve)
            .collect();
        let m = Pairing::from_rows(s, rows).unwrap();
        match m.certificate(&[GeneratorSymbol::Lambda]).unwrap() {
            Certificate::KernelVector(v) => assert_eq!(v, vec![rat(1)]),
            other => panic!("expected a kernel vector, got {other:?}"),
        }
    }

    #[test]
    fn relation_check_genus_two() {
        let s = surface(2, 0);
        let candidate = Class::from_coeffs(
            s,
            [
                (GeneratorSymbol::Lambda, rat(10)),
                (GeneratorSymbol::DeltaIrr, rat(-1)),
                (delta(1, &[], s), rat(-2)),
            ],
        )
        .unwrap();
        let report = relation_check(&candidate).unwrap();
        assert!(report.is_relation);
        assert!(report.axiom_value.is_zero());
        assert_eq!(report.per_curve.len(), 1); // only C:1:[]
        assert!(report.per_curve[0].1.is_zero());
    }

    #[test]
    fn relation_check_genus_one_psi() {
        let s = surface(1, 2);
        let candidate = Class::from_coeffs(
            s,
            [
                (GeneratorSymbol::Psi(1), rat(1)),
                (GeneratorSymbol::Lambda, rat(-1)),
                (delta(0, &[1, 2], s), rat(-1)),
            ],
        )
        .unwrap();
        let report = relation_check(&candidate).unwrap();
        assert!(report.is_relation);
        assert_eq!(report.per_curve.len(), 1);
        assert!(report.per_curve[0].1.is_zero());
    }

    #[test]
    fn relation_check_flags_lambda() {
        let s = surface(3, 0);
        let lambda = Class::generator(s, GeneratorSymbol::Lambda).unwrap();
        let report = relation_check(&lambda).unwrap();
        // Every curve kills lambda, but the axiom row does not.
        assert!(report.is_relation);
        assert_eq!(report.axiom_value, rat(1));
    }

    #[test]
    fn reduction_substitutions_pass_relation_check() {
        // g = 2: irr - (10*lambda - 2*sum delta_[1,I]) pairs to zero.
        for n in 0..=3u32 {
            let s = surface(2, n);
            let irr = Class::generator(s, GeneratorSymbol::DeltaIrr).unwrap();
            let candidate = irr.sub(&irr.reduce_to_basis().unwrap()).unwrap();
            let report = relation_check(&candidate).unwrap();
            assert!(report.is_relation, "g=2, n={n}");
            assert!(report.axiom_value.is_zero());
        }
        // g = 1: irr - 12*lambda and psi_t - reduce(psi_t).
        for n in 1..=4u32 {
            let s = surface(1, n);
            let irr = Class::generator(s, GeneratorSymbol::DeltaIrr).unwrap();
            let candidate = irr.sub(&irr.reduce_to_basis().unwrap()).unwrap();
            assert!(relation_check(&candidate).unwrap().is_relation);
            for t in 1..=n {
                let psi = Class::generator(s, GeneratorSymbol::Psi(t)).unwrap();
                let candidate = psi.sub(&psi.reduce_to_basis().unwrap()).unwrap();
                assert!(relation_check(&candidate).unwrap().is_relation);
            }
        }
    }

    #[test]
    fn curve_rows_are_integral() {
        for (g, n) in [(1u32, 3u32), (2, 2), (3, 1)] {
            let m = Pairing::build(surface(g, n)).unwrap();
            for r in 0..m.row_count() {
                dense_row(&m, r); // asserts integrality
            }
        }
    }
}
