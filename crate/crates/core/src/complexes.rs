//! Bounded cochain complexes of finite-dimensional rational vector spaces.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graded::{GradedError, GradedMap, GradedVectorSpace};
use crate::linalg::{Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("differential must have degree +1, found {0}")]
    DifferentialDegree(i32),
    #[error("differential source and target must both be the underlying space")]
    DifferentialSpace,
    #[error("d∘d is nonzero out of degree {0}")]
    NotAComplex(i32),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// A graded space with a degree +1 differential squaring to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    space: GradedVectorSpace,
    differential: GradedMap,
}

/// Degree `i` for which `d^{i+1} ∘ d^i` is nonzero, if any.
fn first_square_violation(differential: &GradedMap) -> Option<i32> {
    let square = differential
        .compose(differential)
        .expect("endomorphism composes with itself");
    square
        .blocks()
        .iter()
        .find(|(_, b)| !b.is_zero())
        .map(|(&i, _)| i)
}

impl CochainComplex {
    pub fn new(differential: GradedMap) -> Result<Self, ComplexError> {
        if differential.degree() != 1 {
            return Err(ComplexError::DifferentialDegree(differential.degree()));
        }
        if differential.source() != differential.target() {
            return Err(ComplexError::DifferentialSpace);
        }
        if let Some(i) = first_square_violation(&differential) {
            return Err(ComplexError::NotAComplex(i));
        }
        Ok(CochainComplex {
            space: differential.source().clone(),
            differential,
        })
    }

    /// Builds the differential from blocks `d^i : V^i -> V^{i+1}`.
    pub fn from_blocks(
        space: GradedVectorSpace,
        blocks: BTreeMap<i32, RationalMatrix>,
    ) -> Result<Self, ComplexError> {
        CochainComplex::new(GradedMap::new(space.clone(), space, 1, blocks)?)
    }

    pub fn with_zero_differential(space: GradedVectorSpace) -> Self {
        CochainComplex {
            differential: GradedMap::zero(space.clone(), space.clone(), 1),
            space,
        }
    }

    pub fn zero() -> Self {
        CochainComplex::with_zero_differential(GradedVectorSpace::zero())
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    /// `d^i`, zero-filled.
    pub fn d(&self, i: i32) -> RationalMatrix {
        self.differential.block(i)
    }

    /// Re-checks `d∘d = 0` block by block.
    pub fn validate(&self) -> bool {
        first_square_violation(&self.differential).is_none()
    }

    /// `dim H^n = (dim C^n - rank d^n) - rank d^{n-1}`; only nonzero
    /// degrees are recorded.
    pub fn cohomology(&self) -> CohomologyResult {
        let dims = self
            .space
            .iter()
            .filter_map(|(n, dim)| {
                let h = dim - self.d(n).rank() - self.d(n - 1).rank();
                (h > 0).then_some((n, h))
            })
            .collect();
        CohomologyResult { dims }
    }

    pub fn euler_from_dims(&self) -> i64 {
        self.space.euler_characteristic()
    }

    pub fn euler_from_cohomology(&self) -> i64 {
        self.cohomology().euler_characteristic()
    }

    /// `C[s]^i = C^{i+s}` with differential `(-1)^s d`.
    pub fn shift(&self, s: i32) -> CochainComplex {
        let sign = Rational::sign_power(s.into());
        let blocks = self
            .differential
            .blocks()
            .iter()
            .map(|(&i, b)| (i - s, b.scale(&sign)))
            .collect();
        CochainComplex::from_blocks(self.space.shift(s), blocks)
            .expect("shifting preserves d∘d = 0")
    }

    /// Degreewise sum with block-diagonal differential. At each degree the
    /// basis of `self` comes first.
    pub fn direct_sum(&self, other: &CochainComplex) -> CochainComplex {
        let space = self.space.direct_sum(&other.space);
        let blocks = space
            .degrees()
            .map(|i| (i, self.d(i).block_diagonal(&other.d(i))))
            .collect();
        CochainComplex::from_blocks(space, blocks).expect("direct sum of complexes is a complex")
    }
}

pub fn validate(c: &CochainComplex) -> bool {
    c.validate()
}

pub fn cohomology(c: &CochainComplex) -> CohomologyResult {
    c.cohomology()
}

pub fn euler_from_dims(c: &CochainComplex) -> i64 {
    c.euler_from_dims()
}

pub fn euler_from_cohomology(c: &CochainComplex) -> i64 {
    c.euler_from_cohomology()
}

pub fn shift_complex(c: &CochainComplex, s: i32) -> CochainComplex {
    c.shift(s)
}

pub fn direct_sum_complex(a: &CochainComplex, b: &CochainComplex) -> CochainComplex {
    a.direct_sum(b)
}

/// Cohomology dimensions by degree. Degrees with zero cohomology are not
/// stored; [`CohomologyResult::dim`] returns 0 for them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CohomologyResult {
    dims: BTreeMap<i32, usize>,
}

impl CohomologyResult {
    pub fn from_dims<I: IntoIterator<Item = (i32, usize)>>(dims: I) -> Self {
        CohomologyResult {
            dims: dims.into_iter().filter(|&(_, n)| n > 0).collect(),
        }
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    /// Degrees with nonzero cohomology, ascending.
    pub fn support(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(&d, &n)| {
                if d.rem_euclid(2) == 0 {
                    n as i64
                } else {
                    -(n as i64)
                }
            })
            .sum()
    }

    /// Same data with every degree negated (upper <-> lower indexing).
    pub fn negate_degrees(&self) -> Self {
        CohomologyResult {
            dims: self.dims.iter().map(|(&d, &n)| (-d, n)).collect(),
        }
    }
}

/// Random valid complex for property tests and sweeps.
///
/// Each degree in `band` gets a dimension in `0..=max_dim`. Differentials
/// are drawn from `scalars`, then `d^{i+1}` is restricted to the cokernel
/// of `d^i` (precomposed with the projection `K^T`, where the columns of
/// `K` span the left null space of `d^i`), so `d∘d = 0` holds by
/// construction.
pub fn random_complex<R: Rng + ?Sized>(
    rng: &mut R,
    max_dim: usize,
    band: (i32, i32),
    scalars: &[Rational],
) -> CochainComplex {
    let (lo, hi) = band;
    let space: GradedVectorSpace = (lo..=hi)
        .map(|d| (d, rng.random_range(0..=max_dim)))
        .collect();
    let mut blocks = BTreeMap::new();
    let mut previous: Option<RationalMatrix> = None;
    for i in lo..hi {
        let (rows, cols) = (space.dim(i + 1), space.dim(i));
        let block = match &previous {
            Some(prev) if prev.cols() > 0 && prev.rows() > 0 => {
                let cokernel = prev.transpose().kernel_basis();
                let free = random_matrix(rng, rows, cokernel.cols(), scalars);
                free.multiply(&cokernel.transpose())
                    .expect("shapes agree by construction")
            }
            _ => random_matrix(rng, rows, cols, scalars),
        };
        previous = Some(block.clone());
        if rows > 0 && cols > 0 {
            blocks.insert(i, block);
        }
    }
    CochainComplex::from_blocks(space, blocks).expect("generator produces d∘d = 0")
}

pub(crate) fn random_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    scalars: &[Rational],
) -> RationalMatrix {
    let entries = (0..rows * cols)
        .map(|_| scalars.choose(rng).cloned().unwrap_or_default())
        .collect();
    RationalMatrix::new(rows, cols, entries).expect("entry count matches")
}

/// On-disk form: `{ "dims": {...}, "differential": {"i": [[p/q, ...], ...]} }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub dims: GradedVectorSpace,
    #[serde(default)]
    pub differential: BTreeMap<i32, Vec<Vec<Rational>>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<CochainComplex, ComplexError> {
        let mut blocks = BTreeMap::new();
        for (i, rows) in self.differential {
            let cols = self.dims.dim(i);
            blocks.insert(
                i,
                RationalMatrix::from_rows(cols, rows).map_err(GradedError::from)?,
            );
        }
        CochainComplex::from_blocks(self.dims, blocks)
    }

    pub fn from_complex(c: &CochainComplex) -> Self {
        ComplexFile {
            dims: c.space().clone(),
            differential: c
                .differential()
                .blocks()
                .iter()
                .map(|(&i, b)| (i, b.to_rows()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn space(pairs: &[(i32, usize)]) -> GradedVectorSpace {
        pairs.iter().copied().collect()
    }

    fn circle() -> CochainComplex {
        CochainComplex::with_zero_differential(space(&[(-1, 1), (0, 1)]))
    }

    fn sphere() -> CochainComplex {
        CochainComplex::with_zero_differential(space(&[(-2, 1), (0, 1)]))
    }

    fn torus() -> CochainComplex {
        CochainComplex::with_zero_differential(space(&[(-2, 1), (-1, 2), (0, 1)]))
    }

    #[test]
    fn validate_examples() {
        assert!(circle().validate());
        assert!(torus().validate());
        let line = space(&[(0, 1), (1, 1), (2, 1)]);
        let id = RationalMatrix::identity(1);
        let err = CochainComplex::from_blocks(line, BTreeMap::from([(0, id.clone()), (1, id)]));
        assert_eq!(err, Err(ComplexError::NotAComplex(0)));
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(
            circle().cohomology(),
            CohomologyResult::from_dims([(-1, 1), (0, 1)])
        );
        assert_eq!(
            sphere().cohomology().negate_degrees(),
            CohomologyResult::from_dims([(0, 1), (2, 1)])
        );
        assert_eq!(
            torus().cohomology().negate_degrees(),
            CohomologyResult::from_dims([(0, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn acyclic_complex() {
        let c = CochainComplex::from_blocks(
            space(&[(0, 1), (1, 1)]),
            BTreeMap::from([(0, RationalMatrix::identity(1))]),
        )
        .unwrap();
        assert!(c.cohomology().is_zero());
        assert_eq!(c.euler_from_dims(), 0);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(sphere().euler_from_dims(), 2);
        assert_eq!(CochainComplex::zero().euler_from_dims(), 0);
        assert_eq!(torus().euler_from_dims(), 0);
        assert_eq!(torus().euler_from_cohomology(), 0);
    }

    #[test]
    fn shift_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let scalars: Vec<Rational> = (-2..=2).map(Rational::integer).collect();
        let c = random_complex(&mut rng, 3, (-2, 2), &scalars);
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).euler_from_dims(), -c.euler_from_dims());
        assert_eq!(c.shift(1).shift(1), c.shift(2));
        assert_eq!(
            c.shift(2)
                .differential()
                .blocks()
                .values()
                .collect::<Vec<_>>(),
            c.differential().blocks().values().collect::<Vec<_>>()
        );
    }

    #[test]
    fn direct_sum_examples() {
        let t = torus();
        assert_eq!(t.direct_sum(&CochainComplex::zero()), t);
        let s = sphere();
        assert_eq!(t.direct_sum(&s).euler_from_dims(), 2);
    }

    #[test]
    fn complex_file_round_trip() {
        let json = r#"{"dims": {"0": 1, "1": 2}, "differential": {"0": [["1"], ["-1/2"]]}}"#;
        let file: ComplexFile = serde_json::from_str(json).unwrap();
        let c = file.into_complex().unwrap();
        assert_eq!(c.cohomology(), CohomologyResult::from_dims([(1, 1)]));
        let back = serde_json::to_string(&ComplexFile::from_complex(&c)).unwrap();
        assert_eq!(
            back,
            r#"{"dims":{"0":1,"1":2},"differential":{"0":[["1"],["-1/2"]]}}"#
        );
    }

    #[test]
    fn complex_file_rejects_bad_blocks() {
        let ragged = r#"{"dims": {"0": 1, "1": 2}, "differential": {"0": [["1", "2"], ["3"]]}}"#;
        let file: ComplexFile = serde_json::from_str(ragged).unwrap();
        assert!(file.into_complex().is_err());
        let wrong =
            r#"{"dims": {"0": 1, "1": 1, "2": 1}, "differential": {"0": [["1"]], "1": [["1"]]}}"#;
        let file: ComplexFile = serde_json::from_str(wrong).unwrap();
        assert_eq!(file.into_complex(), Err(ComplexError::NotAComplex(0)));
    }
}
