//! Graded vector spaces and graded linear maps.
//!
//! Grading is cohomological throughout: a map of degree `d` sends the
//! degree-`i` piece to the degree-`i + d` piece. Chain-graded data is
//! brought in by negating degrees.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinalgError, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("block at source degree {degree} has shape {found:?}, expected {expected:?}")]
    BlockShape {
        degree: i32,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("cannot compose: target of the inner map differs from source of the outer map")]
    Composition,
    #[error("maps differ in {0}")]
    Mismatch(&'static str),
    #[error("dimension at degree {0} must be positive")]
    ZeroDimension(i32),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Finite-dimensional graded vector space, stored as degree -> dimension
/// with zero pieces omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<i32, usize>", into = "BTreeMap<i32, usize>")]
pub struct GradedVectorSpace {
    dims: BTreeMap<i32, usize>,
}

impl TryFrom<BTreeMap<i32, usize>> for GradedVectorSpace {
    type Error = GradedError;

    fn try_from(dims: BTreeMap<i32, usize>) -> Result<Self, Self::Error> {
        if let Some((&d, _)) = dims.iter().find(|(_, &n)| n == 0) {
            return Err(GradedError::ZeroDimension(d));
        }
        Ok(GradedVectorSpace { dims })
    }
}

impl From<GradedVectorSpace> for BTreeMap<i32, usize> {
    fn from(v: GradedVectorSpace) -> Self {
        v.dims
    }
}

impl FromIterator<(i32, usize)> for GradedVectorSpace {
    /// Repeated degrees accumulate; zero dimensions are dropped.
    fn from_iter<I: IntoIterator<Item = (i32, usize)>>(iter: I) -> Self {
        let mut dims = BTreeMap::new();
        for (d, n) in iter {
            *dims.entry(d).or_insert(0) += n;
        }
        dims.retain(|_, n| *n > 0);
        GradedVectorSpace { dims }
    }
}

impl GradedVectorSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `R^dim` placed in a single degree.
    pub fn concentrated(degree: i32, dim: usize) -> Self {
        [(degree, dim)].into_iter().collect()
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.dims.keys().next_back().copied()
    }

    /// `max_degree - min_degree`, or `None` for the zero space.
    pub fn spread(&self) -> Option<i32> {
        Some(self.max_degree()? - self.min_degree()?)
    }

    /// Supported in at most one degree (the zero space counts).
    pub fn is_concentrated(&self) -> bool {
        self.dims.len() <= 1
    }

    /// `Σ (-1)^i dim V^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.iter()
            .map(|(d, n)| {
                if d.rem_euclid(2) == 0 {
                    n as i64
                } else {
                    -(n as i64)
                }
            })
            .sum()
    }

    /// `V[s]^i = V^{i+s}`.
    pub fn shift(&self, s: i32) -> Self {
        self.iter().map(|(d, n)| (d - s, n)).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        self.iter().chain(other.iter()).collect()
    }

    /// Degree `d` piece is `⊕_i Hom(V^i, W^{i+d})`.
    pub fn hom_space(&self, target: &Self) -> Self {
        self.iter()
            .flat_map(|(i, n)| target.iter().map(move |(j, m)| (j - i, n * m)))
            .collect()
    }

    /// `(V^*)^d = Hom(V^{-d}, R)`.
    pub fn dual(&self) -> Self {
        self.iter().map(|(d, n)| (-d, n)).collect()
    }
}

/// Free-function spellings of the space operations.
pub fn shift_space(v: &GradedVectorSpace, s: i32) -> GradedVectorSpace {
    v.shift(s)
}

pub fn direct_sum_space(v: &GradedVectorSpace, w: &GradedVectorSpace) -> GradedVectorSpace {
    v.direct_sum(w)
}

pub fn hom_space(v: &GradedVectorSpace, w: &GradedVectorSpace) -> GradedVectorSpace {
    v.hom_space(w)
}

pub fn dual_space(v: &GradedVectorSpace) -> GradedVectorSpace {
    v.dual()
}

/// A homogeneous linear map of some degree between graded spaces, one
/// matrix block per source degree.
///
/// Blocks are stored for every source degree `i` where both `V^i` and
/// `W^{i+d}` are nonzero; any other block is necessarily zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedMap {
    source: GradedVectorSpace,
    target: GradedVectorSpace,
    degree: i32,
    blocks: BTreeMap<i32, RationalMatrix>,
}

impl GradedMap {
    /// Missing blocks are zero. Blocks that can only be empty (zero source
    /// or target piece) are accepted if their shape is right and dropped.
    pub fn new(
        source: GradedVectorSpace,
        target: GradedVectorSpace,
        degree: i32,
        blocks: BTreeMap<i32, RationalMatrix>,
    ) -> Result<Self, GradedError> {
        let mut map = GradedMap::zero(source, target, degree);
        for (i, block) in blocks {
            let expected = map.block_shape(i);
            if block.shape() != expected {
                return Err(GradedError::BlockShape {
                    degree: i,
                    expected,
                    found: block.shape(),
                });
            }
            if expected.0 > 0 && expected.1 > 0 {
                map.blocks.insert(i, block);
            }
        }
        Ok(map)
    }

    pub fn zero(source: GradedVectorSpace, target: GradedVectorSpace, degree: i32) -> Self {
        let blocks = source
            .iter()
            .filter_map(|(i, n)| {
                let m = target.dim(i + degree);
                (m > 0).then(|| (i, RationalMatrix::zeros(m, n)))
            })
            .collect();
        GradedMap {
            source,
            target,
            degree,
            blocks,
        }
    }

    pub fn identity(space: &GradedVectorSpace) -> Self {
        let blocks = space
            .iter()
            .map(|(i, n)| (i, RationalMatrix::identity(n)))
            .collect();
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            degree: 0,
            blocks,
        }
    }

    pub fn source(&self) -> &GradedVectorSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedVectorSpace {
        &self.target
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// `(rows, cols)` of the block out of source degree `i`.
    pub fn block_shape(&self, i: i32) -> (usize, usize) {
        (self.target.dim(i + self.degree), self.source.dim(i))
    }

    /// The block `V^i -> W^{i+d}`, zero-filled when not stored.
    pub fn block(&self, i: i32) -> RationalMatrix {
        match self.blocks.get(&i) {
            Some(b) => b.clone(),
            None => {
                let (r, c) = self.block_shape(i);
                RationalMatrix::zeros(r, c)
            }
        }
    }

    /// Nonempty blocks keyed by source degree.
    pub fn blocks(&self) -> &BTreeMap<i32, RationalMatrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(RationalMatrix::is_zero)
    }

    /// Degree zero, source equals target, every block invertible.
    pub fn is_invertible(&self) -> bool {
        self.degree == 0
            && self.source == self.target
            && self.source.iter().all(|(i, _)| {
                self.blocks
                    .get(&i)
                    .is_some_and(RationalMatrix::is_invertible)
            })
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap, GradedError> {
        if inner.target != self.source {
            return Err(GradedError::Composition);
        }
        let degree = inner.degree + self.degree;
        let mut blocks = BTreeMap::new();
        for (&i, b) in &inner.blocks {
            if let Some(a) = self.blocks.get(&(i + inner.degree)) {
                blocks.insert(i, a.multiply(b)?);
            }
        }
        GradedMap::new(inner.source.clone(), self.target.clone(), degree, blocks)
    }

    /// `a * self + b * other`.
    pub fn scale_and_add(
        &self,
        a: &Rational,
        other: &GradedMap,
        b: &Rational,
    ) -> Result<GradedMap, GradedError> {
        if self.degree != other.degree {
            return Err(GradedError::Mismatch("degree"));
        }
        if self.source != other.source || self.target != other.target {
            return Err(GradedError::Mismatch("source or target"));
        }
        let mut blocks = BTreeMap::new();
        for (&i, x) in &self.blocks {
            let y = &other.blocks[&i];
            blocks.insert(i, x.linear_combination(a, b, y)?);
        }
        Ok(GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            blocks,
        })
    }

    pub fn scale(&self, factor: &Rational) -> GradedMap {
        GradedMap {
            blocks: self
                .blocks
                .iter()
                .map(|(&i, b)| (i, b.scale(factor)))
                .collect(),
            ..self.clone()
        }
    }
}

/// `g ∘ f`.
pub fn compose(g: &GradedMap, f: &GradedMap) -> Result<GradedMap, GradedError> {
    g.compose(f)
}

/// `a·f + b·g`.
pub fn scale_and_add(
    a: &Rational,
    f: &GradedMap,
    b: &Rational,
    g: &GradedMap,
) -> Result<GradedMap, GradedError> {
    f.scale_and_add(a, g, b)
}

/// One basis element of the degree-`d` piece of `hom(V, W)`: the matrix
/// unit at `(row, col)` in the block out of `source_degree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomBasisElement {
    pub source_degree: i32,
    pub row: usize,
    pub col: usize,
}

/// Ordered basis of `hom^d(V, W)`: by source degree, then row-major inside
/// each block. Coordinates elsewhere in the crate use this order.
pub fn hom_basis(v: &GradedVectorSpace, w: &GradedVectorSpace, d: i32) -> Vec<HomBasisElement> {
    let mut basis = Vec::new();
    for (i, n) in v.iter() {
        let m = w.dim(i + d);
        for row in 0..m {
            for col in 0..n {
                basis.push(HomBasisElement {
                    source_degree: i,
                    row,
                    col,
                });
            }
        }
    }
    basis
}

/// The graded map corresponding to a single basis element.
pub fn hom_basis_map(
    v: &GradedVectorSpace,
    w: &GradedVectorSpace,
    d: i32,
    e: HomBasisElement,
) -> GradedMap {
    let mut map = GradedMap::zero(v.clone(), w.clone(), d);
    let block = map
        .blocks
        .get_mut(&e.source_degree)
        .expect("basis element lies in a nonempty block");
    block[(e.row, e.col)] = Rational::one();
    map
}

/// Coordinates of `map` in [`hom_basis`] order.
pub fn hom_coordinates(map: &GradedMap) -> Vec<Rational> {
    let mut coords = Vec::new();
    for (i, _) in map.source.iter() {
        if let Some(b) = map.blocks.get(&i) {
            coords.extend(b.entries().iter().cloned());
        }
    }
    coords
}
