//! Boundary divisor index combinatorics.
//!
//! The boundary of the moduli space of stable `n`-pointed genus-`g` curves
//! decomposes into the irreducible class and one class per unordered
//! splitting `{(i, I), (g-i, [n]\I)}` of the genus and the marked points.
//! A half `(i, I)` is admissible when `i >= 1` or `|I| >= 2`; the formal
//! point classes `[0, {t}]` extend the splitting classes and stand for
//! `-psi_t` in the divisor algebra.
//!
//! Every splitting class is kept in a canonical form (smaller genus first,
//! lexicographically smaller label set on a genus tie) so that values hash,
//! compare and print deterministically.

use std::fmt;

use crate::error::{Error, Result};
use crate::surface::SurfaceType;

/// A subset of the marked-point labels `{1, ..., n}`, stored as a bitmask.
///
/// The ordering is lexicographic on the ascending label sequence, e.g.
/// `[] < [1] < [1,4] < [2,3]`; this single order drives canonical
/// representatives and every enumeration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LabelSet(u64);

impl LabelSet {
    pub fn empty() -> Self {
        LabelSet(0)
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: u32) -> Self {
        debug_assert!(n <= SurfaceType::MAX_MARKED_POINTS);
        if n == 0 {
            LabelSet(0)
        } else {
            LabelSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(t: u32) -> Result<Self> {
        Self::from_labels(&[t])
    }

    pub fn from_labels(labels: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &t in labels {
            if t == 0 || t > SurfaceType::MAX_MARKED_POINTS {
                return Err(Error::Parse(format!(
                    "label {t} out of range 1..={}",
                    SurfaceType::MAX_MARKED_POINTS
                )));
            }
            bits |= 1u64 << (t - 1);
        }
        Ok(LabelSet(bits))
    }

    pub(crate) fn from_bits(bits: u64) -> Self {
        LabelSet(bits)
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, t: u32) -> bool {
        t >= 1 && t <= SurfaceType::MAX_MARKED_POINTS && self.0 & (1u64 << (t - 1)) != 0
    }

    pub fn is_subset_of(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: LabelSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn complement_in(self, n: u32) -> LabelSet {
        LabelSet(Self::full(n).0 & !self.0)
    }

    /// Labels in ascending order.
    pub fn iter(self) -> LabelIter {
        LabelIter(self.0)
    }

    /// All subsets of `{1, ..., n}` in the crate-wide lexicographic order.
    pub fn subsets_of(n: u32) -> Vec<LabelSet> {
        debug_assert!(n <= SurfaceType::MAX_MARKED_POINTS);
        let count: u64 = 1u64 << n;
        let mut all: Vec<LabelSet> = (0..count).map(LabelSet).collect();
        all.sort();
        all
    }
}

impl Ord for LabelSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for LabelSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, t) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

pub struct LabelIter(u64);

impl Iterator for LabelIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let t = self.0.trailing_zeros() + 1;
            self.0 &= self.0 - 1;
            Some(t)
        }
    }
}

/// Parses the `[t1,t2,...]` form produced by [`LabelSet`]'s `Display`.
pub fn parse_label_list(text: &str) -> Result<LabelSet> {
    let inner = text
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed label list, got '{text}'")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(LabelSet::empty());
    }
    let mut labels = Vec::new();
    for part in inner.split(',') {
        let t: u32 = part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid label '{part}'")))?;
        labels.push(t);
    }
    LabelSet::from_labels(&labels)
}

/// One side `(i, I)` of a splitting, prior to canonicalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfIndex {
    pub genus: u32,
    pub labels: LabelSet,
}

impl HalfIndex {
    pub fn new(genus: u32, labels: LabelSet) -> Self {
        HalfIndex { genus, labels }
    }

    fn check_bounds(self, surface: SurfaceType) -> Result<()> {
        if self.genus > surface.genus() {
            return Err(invalid_half(self, surface, "genus exceeds the surface genus"));
        }
        if !self.labels.is_subset_of(LabelSet::full(surface.marked_points())) {
            return Err(invalid_half(
                self,
                surface,
                "labels outside the marked-point range",
            ));
        }
        Ok(())
    }

    pub fn complement(self, surface: SurfaceType) -> Result<HalfIndex> {
        self.check_bounds(surface)?;
        Ok(HalfIndex {
            genus: surface.genus() - self.genus,
            labels: self.labels.complement_in(surface.marked_points()),
        })
    }

    /// Membership in the admissible index set: `i >= 1` or `|I| >= 2`.
    pub fn is_admissible(self, surface: SurfaceType) -> bool {
        self.check_bounds(surface).is_ok() && (self.genus >= 1 || self.labels.len() >= 2)
    }

    fn order_key(self) -> (u32, LabelSet) {
        (self.genus, self.labels)
    }
}

impl fmt::Display for HalfIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.genus, self.labels)
    }
}

fn invalid_half(half: HalfIndex, surface: SurfaceType, reason: &'static str) -> Error {
    Error::InvalidHalf {
        genus: half.genus,
        labels: half.labels.to_string(),
        g: surface.genus(),
        n: surface.marked_points(),
        reason,
    }
}

/// Canonical representative of an unordered splitting class.
///
/// Values are only produced by [`canonicalize`] and the enumerators, so a
/// `SplitIndex` always names the half with the smaller genus (label set
/// lexicographically at most its complement on a genus tie).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitIndex {
    genus: u32,
    labels: LabelSet,
}

impl SplitIndex {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn labels(&self) -> LabelSet {
        self.labels
    }

    pub fn half(&self) -> HalfIndex {
        HalfIndex::new(self.genus, self.labels)
    }

    /// Whether this value is the canonical class of a valid splitting of
    /// `surface`. Guards against indices smuggled in from another surface.
    pub fn is_valid_for(&self, surface: SurfaceType) -> bool {
        canonicalize(self.half(), surface).map(|c| c == *self).unwrap_or(false)
    }
}

impl Ord for SplitIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.genus, self.labels).cmp(&(other.genus, other.labels))
    }
}

impl PartialOrd for SplitIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SplitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "split:{}:{}", self.genus, self.labels)
    }
}

/// A boundary divisor class: the irreducible class or a splitting class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryIndex {
    Irr,
    Split(SplitIndex),
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryIndex::Irr => write!(f, "irr"),
            BoundaryIndex::Split(s) => write!(f, "{s}"),
        }
    }
}

/// A splitting class or one of the formal point classes `[0, {t}]`.
///
/// Point classes are not boundary divisors; they are the extension used by
/// the test-curve degree tables and stand for `-psi_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedBoundaryIndex {
    Split(SplitIndex),
    Point(u32),
}

impl ExtendedBoundaryIndex {
    /// Canonicalizes an arbitrary half `(i, I)` as an extended class.
    ///
    /// The pair `{(0, {t}), (g, [n]\{t})}` maps to the point class
    /// `[0, {t}]`; the pair `{(0, []), (g, [n])}` is invalid; everything
    /// else must be a genuine splitting with both halves admissible.
    pub fn canonicalize(half: HalfIndex, surface: SurfaceType) -> Result<Self> {
        let comp = half.complement(surface)?;
        for h in [half, comp] {
            if h.genus == 0 && h.labels.len() == 1 {
                let t = h.labels.iter().next().expect("singleton label");
                return Ok(ExtendedBoundaryIndex::Point(t));
            }
        }
        canonicalize(half, surface).map(ExtendedBoundaryIndex::Split)
    }

    pub fn is_valid_for(&self, surface: SurfaceType) -> bool {
        match self {
            ExtendedBoundaryIndex::Split(s) => s.is_valid_for(surface),
            ExtendedBoundaryIndex::Point(t) => *t >= 1 && *t <= surface.marked_points(),
        }
    }

    fn order_key(&self) -> (u8, u32, LabelSet) {
        match self {
            ExtendedBoundaryIndex::Split(s) => (0, s.genus(), s.labels()),
            ExtendedBoundaryIndex::Point(t) => {
                (1, *t, LabelSet::empty())
            }
        }
    }
}

impl Ord for ExtendedBoundaryIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for ExtendedBoundaryIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedBoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedBoundaryIndex::Split(s) => write!(f, "{s}"),
            ExtendedBoundaryIndex::Point(t) => write!(f, "pt:{t}"),
        }
    }
}

/// Canonicalizes the unordered pair `{(i, I), (g-i, [n]\I)}`.
///
/// Both halves must be admissible. The canonical representative is the
/// half with the smaller genus; on a genus tie, the half whose label set
/// is lexicographically at most its complement.
pub fn canonicalize(half: HalfIndex, surface: SurfaceType) -> Result<SplitIndex> {
    let comp = half.complement(surface)?;
    if !half.is_admissible(surface) {
        return Err(invalid_half(half, surface, "half is excluded from the index set"));
    }
    if !comp.is_admissible(surface) {
        return Err(invalid_half(
            comp,
            surface,
            "complement half is excluded from the index set",
        ));
    }
    let rep = if half.order_key() <= comp.order_key() {
        half
    } else {
        comp
    };
    Ok(SplitIndex {
        genus: rep.genus,
        labels: rep.labels,
    })
}

/// All splitting classes of the surface, canonicalized, in deterministic
/// order (genus ascending, then label set lexicographic).
pub fn enumerate_upsilon_bar(surface: SurfaceType) -> Vec<SplitIndex> {
    let g = surface.genus();
    let n = surface.marked_points();
    let subsets = LabelSet::subsets_of(n);
    let mut out = Vec::new();
    for i in 0..=g / 2 {
        for &labels in &subsets {
            let half = HalfIndex::new(i, labels);
            let comp = half.complement(surface).expect("bounds hold by construction");
            // Keep exactly the canonical side of each unordered pair.
            if half.order_key() > comp.order_key() {
                continue;
            }
            if half.is_admissible(surface) && comp.is_admissible(surface) {
                out.push(SplitIndex {
                    genus: i,
                    labels,
                });
            }
        }
    }
    out
}

/// The splitting classes plus the `n` point classes.
pub fn enumerate_upsilon_bar_ext(surface: SurfaceType) -> Vec<ExtendedBoundaryIndex> {
    let mut out: Vec<ExtendedBoundaryIndex> = enumerate_upsilon_bar(surface)
        .into_iter()
        .map(ExtendedBoundaryIndex::Split)
        .collect();
    out.extend((1..=surface.marked_points()).map(ExtendedBoundaryIndex::Point));
    out
}

/// Parses the textual encodings `irr` and `split:i:[..]`, canonicalizing
/// the splitting form against the surface.
pub fn parse_boundary_index(text: &str, surface: SurfaceType) -> Result<BoundaryIndex> {
    if text == "irr" {
        return Ok(BoundaryIndex::Irr);
    }
    parse_split_index(text, surface).map(BoundaryIndex::Split)
}

pub(crate) fn parse_split_index(text: &str, surface: SurfaceType) -> Result<SplitIndex> {
    let rest = text
        .strip_prefix("split:")
        .ok_or_else(|| Error::Parse(format!("expected a boundary encoding, got '{text}'")))?;
    let (genus_part, labels_part) = rest
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("malformed splitting encoding '{text}'")))?;
    let genus: u32 = genus_part
        .parse()
        .map_err(|_| Error::Parse(format!("invalid genus in '{text}'")))?;
    let labels = parse_label_list(labels_part)?;
    canonicalize(HalfIndex::new(genus, labels), surface)
}
