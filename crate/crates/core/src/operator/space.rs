//! Truncated index spaces and the interior where relations are tested.

use serde::Serialize;

/// A finite orthonormal basis together with, for each basis vector, its
/// distance to the lower and upper truncation boundaries.
///
/// For a tensor product of truncated `ℓ²(ℕ)` factors the upper distance of
/// `|m₁,…,m_k⟩` is `minᵢ (N−1−mᵢ)` and there is no lower boundary. For a
/// path space the lower distance of a walk is its length and the upper one
/// is `N − length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSpace {
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl IndexSpace {
    pub fn new(lower: Vec<usize>, upper: Vec<usize>) -> Self {
        assert_eq!(lower.len(), upper.len(), "boundary tables differ in length");
        IndexSpace { lower, upper }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower_distance(&self, i: usize) -> usize {
        self.lower[i]
    }

    pub fn upper_distance(&self, i: usize) -> usize {
        self.upper[i]
    }

    /// Basis indices lying in the interior.
    pub fn interior(&self, spec: InteriorSpec) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.lower[i] >= spec.lower && self.upper[i] >= spec.upper)
            .collect()
    }
}

/// Required distances from the lower and upper truncation boundaries.
///
/// A relation whose words have length at most `d` holds exactly on basis
/// vectors at distance `≥ d` from every boundary, so `uniform(d)` is the
/// usual choice. Families whose operators first remove and then re-add
/// path segments need a larger lower distance than upper distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InteriorSpec {
    pub lower: usize,
    pub upper: usize,
}

impl InteriorSpec {
    pub fn uniform(d: usize) -> Self {
        InteriorSpec { lower: d, upper: d }
    }

    /// The whole space.
    pub fn everything() -> Self {
        InteriorSpec { lower: 0, upper: 0 }
    }
}
