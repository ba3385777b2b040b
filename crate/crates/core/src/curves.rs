//! The four families of test curves and their exact degree functionals.
//!
//! Each test curve is a pencil of stable curves with known intersection
//! degrees against every tautological generator; only those degrees are
//! modelled, not the underlying geometry. The families and their degree
//! patterns on the extended boundary classes:
//!
//! * `A` (`g >= 3`): `irr -> -1`, everything else `0`.
//! * `B(i, I)` (`g >= 2`, `0 <= i <= g-2`): `-1` at the class `[i, I]`,
//!   `irr -> 0`.
//! * `C(i, I)` (`g >= 2`, `1 <= i <= g-1`): `+1` at `[i, I]`, `irr -> -2`.
//! * `D(i, j, I, J)` (`g >= 1`, `i + j <= g-1`, `I`, `J` disjoint): `+1` at
//!   `[i+j, I u J]` and `-1` at each of `[i, I]`, `[j, J]`, `irr -> 0`.
//!
//! `lambda` pairs to zero with every family. Contributions landing on the
//! same canonical class accumulate additively (so `D` with `[i,I] = [j,J]`
//! contributes `-2` there). Degrees against `psi_t` are obtained through
//! the identification of the point class `[0, {t}]` with `-psi_t`.

use std::fmt;

use crate::boundary::{ExtendedBoundaryIndex, HalfIndex, LabelSet};
use crate::divisor::{GeneratorSymbol, TautClass};
use crate::error::{Error, Result};
use crate::scalar::{from_i64, Scalar};
use crate::surface::SurfaceType;

/// Family tag and raw parameters of a test curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveFamily {
    AIrr,
    B {
        genus: u32,
        labels: LabelSet,
    },
    C {
        genus: u32,
        labels: LabelSet,
    },
    D {
        genus_first: u32,
        labels_first: LabelSet,
        genus_second: u32,
        labels_second: LabelSet,
    },
}

/// A test curve: family parameters plus the accumulated degree table on
/// canonical extended boundary classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCurve {
    surface: SurfaceType,
    family: CurveFamily,
    irr_degree: i64,
    support: Vec<(ExtendedBoundaryIndex, i64)>,
}

impl TestCurve {
    pub fn a_irr(surface: SurfaceType) -> Result<Self> {
        if surface.genus() < 3 {
            return Err(Error::InvalidCurve(format!(
                "family A requires g >= 3, got {surface}"
            )));
        }
        Ok(TestCurve {
            surface,
            family: CurveFamily::AIrr,
            irr_degree: -1,
            support: Vec::new(),
        })
    }

    pub fn b(surface: SurfaceType, genus: u32, labels: LabelSet) -> Result<Self> {
        let g = surface.genus();
        if g < 2 || genus + 2 > g {
            return Err(Error::InvalidCurve(format!(
                "family B requires g >= 2 and 0 <= i <= g-2, got i={genus} on {surface}"
            )));
        }
        let cls = ExtendedBoundaryIndex::canonicalize(HalfIndex::new(genus, labels), surface)
            .map_err(|e| Error::InvalidCurve(format!("family B parameter: {e}")))?;
        Ok(TestCurve {
            surface,
            family: CurveFamily::B { genus, labels },
            irr_degree: 0,
            support: vec![(cls, -1)],
        })
    }

    pub fn c(surface: SurfaceType, genus: u32, labels: LabelSet) -> Result<Self> {
        let g = surface.genus();
        if g < 2 || genus < 1 || genus > g - 1 {
            return Err(Error::InvalidCurve(format!(
                "family C requires g >= 2 and 1 <= i <= g-1, got i={genus} on {surface}"
            )));
        }
        let cls = ExtendedBoundaryIndex::canonicalize(HalfIndex::new(genus, labels), surface)
            .map_err(|e| Error::InvalidCurve(format!("family C parameter: {e}")))?;
        Ok(TestCurve {
            surface,
            family: CurveFamily::C { genus, labels },
            irr_degree: -2,
            support: vec![(cls, 1)],
        })
    }

    pub fn d(
        surface: SurfaceType,
        genus_first: u32,
        labels_first: LabelSet,
        genus_second: u32,
        labels_second: LabelSet,
    ) -> Result<Self> {
        let g = surface.genus();
        if g < 1 || genus_first + genus_second + 1 > g {
            return Err(Error::InvalidCurve(format!(
                "family D requires g >= 1 and i + j <= g-1, got i={genus_first}, j={genus_second} on {surface}"
            )));
        }
        if !labels_first.is_disjoint(labels_second) {
            return Err(Error::InvalidCurve(
                "family D requires disjoint label sets".into(),
            ));
        }
        let first =
            ExtendedBoundaryIndex::canonicalize(HalfIndex::new(genus_first, labels_first), surface)
                .map_err(|e| Error::InvalidCurve(format!("family D first class: {e}")))?;
        let second = ExtendedBoundaryIndex::canonicalize(
            HalfIndex::new(genus_second, labels_second),
            surface,
        )
        .map_err(|e| Error::InvalidCurve(format!("family D second class: {e}")))?;
        let joined = ExtendedBoundaryIndex::canonicalize(
            HalfIndex::new(
                genus_first + genus_second,
                labels_first.union(labels_second),
            ),
            surface,
        )
        .map_err(|e| Error::InvalidCurve(format!("family D joined class: {e}")))?;

        let mut support = vec![(joined, 1i64), (first, -1), (second, -1)];
        // Accumulate coinciding canonical classes.
        support.sort_by_key(|(cls, _)| *cls);
        let mut merged: Vec<(ExtendedBoundaryIndex, i64)> = Vec::new();
        for (cls, v) in support {
            match merged.last_mut() {
                Some((last, acc)) if *last == cls => *acc += v,
                _ => merged.push((cls, v)),
            }
        }
        merged.retain(|(_, v)| *v != 0);

        Ok(TestCurve {
            surface,
            family: CurveFamily::D {
                genus_first,
                labels_first,
                genus_second,
                labels_second,
            },
            irr_degree: 0,
            support: merged,
        })
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn family(&self) -> &CurveFamily {
        &self.family
    }

    /// Degree against an extended boundary class.
    pub fn degree_extended(&self, ext: &ExtendedBoundaryIndex) -> Result<i64> {
        if !ext.is_valid_for(self.surface) {
            return Err(Error::InvalidSymbol(format!("{ext} on {}", self.surface)));
        }
        Ok(self
            .support
            .iter()
            .filter(|(cls, _)| cls == ext)
            .map(|(_, v)| *v)
            .sum())
    }

    /// Degree against a generator symbol. `lambda` is zero for every
    /// family; `psi_t` is minus the degree at the point class `[0, {t}]`.
    pub fn degree(&self, sym: &GeneratorSymbol) -> Result<i64> {
        if !sym.is_valid_for(self.surface) {
            return Err(Error::InvalidSymbol(format!("{sym} on {}", self.surface)));
        }
        Ok(match sym {
            GeneratorSymbol::Lambda => 0,
            GeneratorSymbol::DeltaIrr => self.irr_degree,
            GeneratorSymbol::Psi(t) => {
                -self.degree_extended(&ExtendedBoundaryIndex::Point(*t))?
            }
            GeneratorSymbol::DeltaSplit(s) => {
                self.degree_extended(&ExtendedBoundaryIndex::Split(*s))?
            }
        })
    }

    /// Linear extension of the degree functional to divisor classes.
    pub fn degree_on_class<S: Scalar>(&self, class: &TautClass<S>) -> Result<S> {
        if class.surface() != self.surface {
            return Err(Error::SurfaceMismatch {
                expected_g: self.surface.genus(),
                expected_n: self.surface.marked_points(),
                found_g: class.surface().genus(),
                found_n: class.surface().marked_points(),
            });
        }
        let mut total = S::zero();
        for (sym, coeff) in class.iter() {
            total = total + coeff.clone() * from_i64::<S>(self.degree(sym)?);
        }
        Ok(total)
    }
}

impl fmt::Display for TestCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            CurveFamily::AIrr => write!(f, "A"),
            CurveFamily::B { genus, labels } => write!(f, "B:{genus}:{labels}"),
            CurveFamily::C { genus, labels } => write!(f, "C:{genus}:{labels}"),
            CurveFamily::D {
                genus_first,
                labels_first,
                genus_second,
                labels_second,
            } => write!(
                f,
                "D:{genus_first}:{genus_second}:{labels_first}:{labels_second}"
            ),
        }
    }
}

/// All valid test curves of the surface, deterministically ordered:
/// family `A`, then `B` and `C` by `(i, I)`, then `D` by
/// `(i, I, j, J)` with the symmetric duplicate `(j, J, i, I)` omitted.
pub fn generate_all(surface: SurfaceType) -> Result<Vec<TestCurve>> {
    let g = surface.genus();
    if g == 0 {
        return Err(Error::GenusZeroUnsupported("test-curve generation"));
    }
    let subsets = LabelSet::subsets_of(surface.marked_points());
    let mut out = Vec::new();

    if g >= 3 {
        out.push(TestCurve::a_irr(surface)?);
    }
    if g >= 2 {
        for i in 0..=g - 2 {
            for &labels in &subsets {
                if let Ok(curve) = TestCurve::b(surface, i, labels) {
                    out.push(curve);
                }
            }
        }
        for i in 1..=g - 1 {
            for &labels in &subsets {
                if let Ok(curve) = TestCurve::c(surface, i, labels) {
                    out.push(curve);
                }
            }
        }
    }
    for i in 0..g {
        for &labels_first in &subsets {
            for j in i..g {
                for &labels_second in &subsets {
                    if i + j + 1 > g {
                        continue;
                    }
                    // Emit each unordered parameter pair once.
                    if i == j && labels_second < labels_first {
                        continue;
                    }
                    if let Ok(curve) =
                        TestCurve::d(surface, i, labels_first, j, labels_second)
                    {
                        out.push(curve);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::canonicalize;
    use crate::Rat;

    fn surface(g: u32, n: u32) -> SurfaceType {
        SurfaceType::new(g, n).unwrap()
    }

    fn labels(ts: &[u32]) -> LabelSet {
        LabelSet::from_labels(ts).unwrap()
    }

    fn delta(i: u32, ts: &[u32], s: SurfaceType) -> GeneratorSymbol {
        GeneratorSymbol::DeltaSplit(canonicalize(HalfIndex::new(i, labels(ts)), s).unwrap())
    }

    #[test]
    fn family_a_degrees() {
        let s = surface(3, 0);
        let a = TestCurve::a_irr(s).unwrap();
        assert_eq!(a.degree(&GeneratorSymbol::Lambda).unwrap(), 0);
        assert_eq!(a.degree(&GeneratorSymbol::DeltaIrr).unwrap(), -1);
        assert_eq!(a.degree(&delta(1, &[], s)).unwrap(), 0);
        assert!(TestCurve::a_irr(surface(2, 0)).is_err());
    }

    #[test]
    fn family_c_degrees_and_canonicalization() {
        let s = surface(3, 0);
        let c1 = TestCurve::c(s, 1, labels(&[])).unwrap();
        assert_eq!(c1.degree(&GeneratorSymbol::DeltaIrr).unwrap(), -2);
        assert_eq!(c1.degree(&delta(1, &[], s)).unwrap(), 1);
        assert_eq!(c1.degree(&GeneratorSymbol::Lambda).unwrap(), 0);

        // The parameter class [2, []] canonicalizes to [1, []].
        let c2 = TestCurve::c(s, 2, labels(&[])).unwrap();
        assert_eq!(c2.degree(&delta(1, &[], s)).unwrap(), 1);
        assert_eq!(c2.degree(&GeneratorSymbol::DeltaIrr).unwrap(), -2);
    }

    #[test]
    fn family_b_point_class_hits_psi() {
        let s = surface(2, 1);
        let b = TestCurve::b(s, 0, labels(&[1])).unwrap();
        assert_eq!(
            b.degree_extended(&ExtendedBoundaryIndex::Point(1)).unwrap(),
            -1
        );
        assert_eq!(b.degree(&GeneratorSymbol::Psi(1)).unwrap(), 1);
        assert_eq!(b.degree(&GeneratorSymbol::DeltaIrr).unwrap(), 0);
    }

    #[test]
    fn family_d_degrees() {
        let s = surface(1, 2);
        let d = TestCurve::d(s, 0, labels(&[1]), 0, labels(&[2])).unwrap();
        let joined = ExtendedBoundaryIndex::canonicalize(HalfIndex::new(0, labels(&[1, 2])), s)
            .unwrap();
        assert_eq!(d.degree_extended(&joined).unwrap(), 1);
        assert_eq!(
            d.degree_extended(&ExtendedBoundaryIndex::Point(1)).unwrap(),
            -1
        );
        assert_eq!(
            d.degree_extended(&ExtendedBoundaryIndex::Point(2)).unwrap(),
            -1
        );
        assert_eq!(d.degree(&GeneratorSymbol::Psi(1)).unwrap(), 1);
        assert_eq!(d.degree(&GeneratorSymbol::Psi(2)).unwrap(), 1);
        assert_eq!(d.degree(&GeneratorSymbol::Lambda).unwrap(), 0);
    }

    #[test]
    fn family_d_accumulates_coinciding_classes() {
        // On (3, 0) the classes [1,[]], [1,[]] and [2,[]] all canonicalize
        // to the same index, so the contributions sum to +1 - 1 - 1 = -1.
        let s = surface(3, 0);
        let d = TestCurve::d(s, 1, labels(&[]), 1, labels(&[])).unwrap();
        assert_eq!(d.degree(&delta(1, &[], s)).unwrap(), -1);
        assert_eq!(d.degree(&GeneratorSymbol::DeltaIrr).unwrap(), 0);
    }

    #[test]
    fn generation_small_cases() {
        assert!(generate_all(surface(1, 1)).unwrap().is_empty());

        let curves: Vec<String> = generate_all(surface(3, 0))
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(curves, vec!["A", "B:1:[]", "C:1:[]", "C:2:[]", "D:1:1:[]:[]"]);

        let curves: Vec<String> = generate_all(surface(1, 2))
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(curves, vec!["D:0:0:[1]:[2]"]);

        let curves: Vec<String> = generate_all(surface(2, 0))
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(curves, vec!["C:1:[]"]);

        assert!(matches!(
            generate_all(surface(0, 4)),
            Err(Error::GenusZeroUnsupported(_))
        ));
    }

    #[test]
    fn degree_extends_linearly() {
        let s = surface(1, 2);
        let d = generate_all(s).unwrap().pop().unwrap();
        let psi1 = TautClass::<Rat>::generator(s, GeneratorSymbol::Psi(1)).unwrap();
        let psi2 = TautClass::<Rat>::generator(s, GeneratorSymbol::Psi(2)).unwrap();
        let combo = psi1.scale(&from_i64(3)).add(&psi2.neg()).unwrap();
        assert_eq!(d.degree_on_class(&combo).unwrap(), from_i64::<Rat>(2));
    }

    #[test]
    fn genus_one_psi_consistency_with_reduction() {
        for n in 1..=4u32 {
            let s = surface(1, n);
            for curve in generate_all(s).unwrap() {
                for t in 1..=n {
                    let psi = TautClass::<Rat>::generator(s, GeneratorSymbol::Psi(t)).unwrap();
                    let direct = curve.degree_on_class(&psi).unwrap();
                    let reduced = curve
                        .degree_on_class(&psi.reduce_to_basis().unwrap())
                        .unwrap();
                    assert_eq!(direct, reduced, "curve {curve}, psi:{t} on {s}");
                }
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn small_surface() -> impl Strategy<Value = SurfaceType> {
            (1u32..=4, 0u32..=4).prop_filter_map("stable", |(g, n)| SurfaceType::new(g, n).ok())
        }

        proptest! {
            #[test]
            fn lambda_annihilation(s in small_surface()) {
                for curve in generate_all(s).unwrap() {
                    prop_assert_eq!(curve.degree(&GeneratorSymbol::Lambda).unwrap(), 0);
                }
            }

            #[test]
            fn d_symmetry(
                (s, i, j, bits_i, bits_j) in small_surface().prop_flat_map(|s| {
                    let n = s.marked_points();
                    let mask = if n == 0 { 0 } else { (1u64 << n) - 1 };
                    (Just(s), 0u32..s.genus(), 0u32..s.genus(), 0u64..=mask, 0u64..=mask)
                })
            ) {
                let li = LabelSet::from_bits(bits_i);
                let lj = LabelSet::from_bits(bits_j & !bits_i);
                let fwd = TestCurve::d(s, i, li, j, lj);
                let rev = TestCurve::d(s, j, lj, i, li);
                prop_assert_eq!(fwd.is_ok(), rev.is_ok());
                if let (Ok(fwd), Ok(rev)) = (fwd, rev) {
                    for ext in crate::boundary::enumerate_upsilon_bar_ext(s) {
                        prop_assert_eq!(
                            fwd.degree_extended(&ext).unwrap(),
                            rev.degree_extended(&ext).unwrap()
                        );
                    }
                }
            }
        }
    }
}
