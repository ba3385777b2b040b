//! Exact rational vectors over the tautological divisor class generators,
//! with reduction to the canonical basis via the low-genus relations.
//!
//! Generators are `lambda`, the cotangent classes `psi_1..psi_n`, the
//! irreducible boundary class `irr` and one class per splitting index.
//! The canonical basis drops `irr` at genus 2 (where
//! `irr = 10*lambda - 2*sum delta_[1,I]`) and both `irr` and the `psi`
//! classes at genus 1 (`irr = 12*lambda`,
//! `psi_t = lambda + sum_{t in I, |I| >= 2} delta_[0,I]`).

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};

use crate::boundary::{
    enumerate_upsilon_bar, parse_split_index, ExtendedBoundaryIndex, SplitIndex,
};
use crate::error::{Error, Result};
use crate::scalar::{from_i64, parse_scalar, Scalar};
use crate::surface::SurfaceType;
use crate::Rat;

/// A tautological generator of the divisor class group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorSymbol {
    Lambda,
    Psi(u32),
    DeltaIrr,
    DeltaSplit(SplitIndex),
}

impl GeneratorSymbol {
    pub fn is_valid_for(&self, surface: SurfaceType) -> bool {
        match self {
            GeneratorSymbol::Lambda | GeneratorSymbol::DeltaIrr => true,
            GeneratorSymbol::Psi(t) => *t >= 1 && *t <= surface.marked_points(),
            GeneratorSymbol::DeltaSplit(s) => s.is_valid_for(surface),
        }
    }

    /// Parses the encodings `lambda`, `psi:t`, `irr` and `split:i:[..]`,
    /// canonicalizing split indices against the surface.
    pub fn parse(text: &str, surface: SurfaceType) -> Result<Self> {
        let sym = match text {
            "lambda" => GeneratorSymbol::Lambda,
            "irr" => GeneratorSymbol::DeltaIrr,
            _ if text.starts_with("psi:") => {
                let t: u32 = text[4..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid psi index in '{text}'")))?;
                GeneratorSymbol::Psi(t)
            }
            _ if text.starts_with("split:") => {
                GeneratorSymbol::DeltaSplit(parse_split_index(text, surface)?)
            }
            _ => return Err(Error::Parse(format!("unknown symbol '{text}'"))),
        };
        if !sym.is_valid_for(surface) {
            return Err(Error::InvalidSymbol(format!("{sym} on {surface}")));
        }
        Ok(sym)
    }

    fn order_key(&self) -> (u8, u32, u32, crate::boundary::LabelSet) {
        use crate::boundary::LabelSet;
        match self {
            GeneratorSymbol::Lambda => (0, 0, 0, LabelSet::empty()),
            GeneratorSymbol::Psi(t) => (1, *t, 0, LabelSet::empty()),
            GeneratorSymbol::DeltaIrr => (2, 0, 0, LabelSet::empty()),
            GeneratorSymbol::DeltaSplit(s) => (3, 0, s.genus(), s.labels()),
        }
    }
}

impl Ord for GeneratorSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for GeneratorSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSymbol::Lambda => write!(f, "lambda"),
            GeneratorSymbol::Psi(t) => write!(f, "psi:{t}"),
            GeneratorSymbol::DeltaIrr => write!(f, "irr"),
            GeneratorSymbol::DeltaSplit(s) => write!(f, "{s}"),
        }
    }
}

/// The ordered canonical basis of the divisor class group for a surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisDescriptor {
    surface: SurfaceType,
    symbols: Vec<GeneratorSymbol>,
}

impl BasisDescriptor {
    pub fn new(surface: SurfaceType) -> Result<Self> {
        let g = surface.genus();
        if g == 0 {
            return Err(Error::GenusZeroUnsupported("the canonical basis"));
        }
        let mut symbols = vec![GeneratorSymbol::Lambda];
        if g >= 2 {
            symbols.extend((1..=surface.marked_points()).map(GeneratorSymbol::Psi));
        }
        if g >= 3 {
            symbols.push(GeneratorSymbol::DeltaIrr);
        }
        symbols.extend(
            enumerate_upsilon_bar(surface)
                .into_iter()
                .map(GeneratorSymbol::DeltaSplit),
        );
        debug_assert!(symbols.windows(2).all(|w| w[0] < w[1]));
        Ok(BasisDescriptor { surface, symbols })
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn symbols(&self) -> &[GeneratorSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn position(&self, sym: &GeneratorSymbol) -> Option<usize> {
        self.symbols.binary_search(sym).ok()
    }

    pub fn contains(&self, sym: &GeneratorSymbol) -> bool {
        self.position(sym).is_some()
    }
}

/// A finitely supported exact vector over the generator symbols of one
/// surface. Zero coefficients are never stored, so equality is exact
/// coefficient-wise equality.
#[derive(Debug, Clone, PartialEq)]
pub struct TautClass<S: Scalar = Rat> {
    surface: SurfaceType,
    coeffs: BTreeMap<GeneratorSymbol, S>,
}

impl<S: Scalar> TautClass<S> {
    pub fn zero(surface: SurfaceType) -> Self {
        TautClass {
            surface,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn generator(surface: SurfaceType, sym: GeneratorSymbol) -> Result<Self> {
        Self::from_coeffs(surface, [(sym, S::one())])
    }

    pub fn from_coeffs(
        surface: SurfaceType,
        coeffs: impl IntoIterator<Item = (GeneratorSymbol, S)>,
    ) -> Result<Self> {
        let mut class = Self::zero(surface);
        for (sym, value) in coeffs {
            class.accumulate(sym, value)?;
        }
        Ok(class)
    }

    fn accumulate(&mut self, sym: GeneratorSymbol, value: S) -> Result<()> {
        if !sym.is_valid_for(self.surface) {
            return Err(Error::InvalidSymbol(format!("{sym} on {}", self.surface)));
        }
        let entry = self.coeffs.entry(sym).or_insert_with(S::zero);
        *entry = entry.clone() + value;
        if entry.is_zero() {
            self.coeffs.remove(&sym);
        }
        Ok(())
    }

    pub fn surface(&self) -> SurfaceType {
        self.surface
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, sym: &GeneratorSymbol) -> S {
        self.coeffs.get(sym).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficients in symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorSymbol, &S)> {
        self.coeffs.iter()
    }

    fn check_same_surface(&self, other: &Self) -> Result<()> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch {
                expected_g: self.surface.genus(),
                expected_n: self.surface.marked_points(),
                found_g: other.surface.genus(),
                found_n: other.surface.marked_points(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_surface(other)?;
        let mut out = self.clone();
        for (sym, value) in &other.coeffs {
            out.accumulate(*sym, value.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero(self.surface);
        }
        TautClass {
            surface: self.surface,
            coeffs: self
                .coeffs
                .iter()
                .map(|(sym, v)| (*sym, v.clone() * factor.clone()))
                .collect(),
        }
    }

    /// The class named by an extended boundary index: splitting indices map
    /// to their generator, the point class `[0, {t}]` maps to `-psi_t`.
    pub fn expand_extended(surface: SurfaceType, ext: &ExtendedBoundaryIndex) -> Result<Self> {
        if !ext.is_valid_for(surface) {
            return Err(Error::InvalidSymbol(format!("{ext} on {surface}")));
        }
        match ext {
            ExtendedBoundaryIndex::Split(s) => {
                Self::generator(surface, GeneratorSymbol::DeltaSplit(*s))
            }
            ExtendedBoundaryIndex::Point(t) => {
                Ok(Self::generator(surface, GeneratorSymbol::Psi(*t))?.neg())
            }
        }
    }

    /// Rewrites the class over the canonical basis of its surface.
    ///
    /// Genus 1 substitutes `irr -> 12*lambda` and
    /// `psi_t -> lambda + sum_{t in I, |I| >= 2} delta_[0,I]`; genus 2
    /// substitutes `irr -> 10*lambda - 2 * sum_I delta_[1,I]` (one term per
    /// canonical class); genus 3 and up is the identity. Linear and
    /// idempotent.
    pub fn reduce_to_basis(&self) -> Result<Self> {
        let g = self.surface.genus();
        if g == 0 {
            return Err(Error::GenusZeroUnsupported("basis reduction"));
        }
        if g >= 3 {
            return Ok(self.clone());
        }
        let mut out = Self::zero(self.surface);
        for (sym, value) in &self.coeffs {
            match (g, sym) {
                (1, GeneratorSymbol::DeltaIrr) => {
                    out.accumulate(GeneratorSymbol::Lambda, value.clone() * from_i64(12))?;
                }
                (1, GeneratorSymbol::Psi(t)) => {
                    out.accumulate(GeneratorSymbol::Lambda, value.clone())?;
                    for idx in enumerate_upsilon_bar(self.surface) {
                        if idx.genus() == 0 && idx.labels().contains(*t) {
                            out.accumulate(GeneratorSymbol::DeltaSplit(idx), value.clone())?;
                        }
                    }
                }
                (2, GeneratorSymbol::DeltaIrr) => {
                    out.accumulate(GeneratorSymbol::Lambda, value.clone() * from_i64(10))?;
                    for idx in enumerate_upsilon_bar(self.surface) {
                        if idx.genus() == 1 {
                            out.accumulate(
                                GeneratorSymbol::DeltaSplit(idx),
                                value.clone() * from_i64(-2),
                            )?;
                        }
                    }
                }
                _ => out.accumulate(*sym, value.clone())?,
            }
        }
        Ok(out)
    }

    /// Whether every stored symbol belongs to the canonical basis.
    pub fn is_basis_supported(&self) -> Result<bool> {
        let basis = BasisDescriptor::new(self.surface)?;
        Ok(self.coeffs.keys().all(|sym| basis.contains(sym)))
    }

    /// JSON form: `{"g": .., "n": .., "coeffs": {"<symbol>": "<p/q>"}}`.
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (sym, value) in &self.coeffs {
            coeffs.insert(sym.to_string(), Value::String(value.to_string()));
        }
        let mut obj = Map::new();
        obj.insert("g".into(), Value::from(self.surface.genus()));
        obj.insert("n".into(), Value::from(self.surface.marked_points()));
        obj.insert("coeffs".into(), Value::Object(coeffs));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let g = read_u32(obj, "g")?;
        let n = read_u32(obj, "n")?;
        let surface = SurfaceType::new(g, n)?;
        let mut class = Self::zero(surface);
        let coeffs = obj
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing 'coeffs' object".into()))?;
        for (key, raw) in coeffs {
            let sym = GeneratorSymbol::parse(key, surface)?;
            let value = parse_scalar_value(raw)?;
            class.accumulate(sym, value)?;
        }
        Ok(class)
    }
}

fn read_u32(obj: &Map<String, Value>, key: &str) -> Result<u32> {
    obj.get(key)
        .and_then(Value::as_u64)
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::Parse(format!("missing or invalid '{key}'")))
}

/// Accepts exact textual scalars (`"p/q"`, `"p"`) and integral JSON numbers.
pub(crate) fn parse_scalar_value<S: Scalar>(value: &Value) -> Result<S> {
    match value {
        Value::String(s) => parse_scalar(s),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                Ok(from_i64(i))
            } else {
                Err(Error::Parse(format!(
                    "non-integral number {num}; encode rationals as \"p/q\" strings"
                )))
            }
        }
        other => Err(Error::Parse(format!("expected a scalar, got {other}"))),
    }
}

impl<S: Scalar> fmt::Display for TautClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (sym, value)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{value}*{sym}")?;
        }
        Ok(())
    }
}
