//! The `(g, n)` pair fixing which moduli space all other data lives on.

use std::fmt;

use crate::error::{Error, Result};

/// Genus and number of marked points of a stable pointed curve type.
///
/// Construction enforces stability, `2g - 2 + n > 0`, so every value of
/// this type is a valid moduli-space selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceType {
    g: u32,
    n: u32,
}

impl SurfaceType {
    /// Largest supported number of marked points; label sets are stored
    /// as 64-bit masks.
    pub const MAX_MARKED_POINTS: u32 = 62;

    pub fn new(g: u32, n: u32) -> Result<Self> {
        if n > Self::MAX_MARKED_POINTS {
            return Err(Error::MarkedPointLimit {
                n,
                limit: Self::MAX_MARKED_POINTS,
            });
        }
        // 2g - 2 + n > 0, evaluated without underflow.
        if 2 * g + n <= 2 {
            return Err(Error::UnstableSurface { g, n });
        }
        Ok(SurfaceType { g, n })
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn marked_points(&self) -> u32 {
        self.n
    }
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, n={})", self.g, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stability() {
        assert!(SurfaceType::new(0, 3).is_ok());
        assert!(SurfaceType::new(1, 1).is_ok());
        assert!(SurfaceType::new(2, 0).is_ok());
        assert_eq!(
            SurfaceType::new(0, 2),
            Err(Error::UnstableSurface { g: 0, n: 2 })
        );
        assert_eq!(
            SurfaceType::new(1, 0),
            Err(Error::UnstableSurface { g: 1, n: 0 })
        );
        assert_eq!(
            SurfaceType::new(0, 0),
            Err(Error::UnstableSurface { g: 0, n: 0 })
        );
    }

    #[test]
    fn marked_point_limit() {
        assert!(SurfaceType::new(1, 62).is_ok());
        assert_eq!(
            SurfaceType::new(1, 63),
            Err(Error::MarkedPointLimit { n: 63, limit: 62 })
        );
    }
}
