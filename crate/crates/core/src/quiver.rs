//! One-object dg categories presented by a quiver of loops, their bounded
//! representations, and the morphism complex between two representations.
//!
//! A representation is a finite-dimensional graded space `V` (zero
//! differential) with one graded endomorphism per generator, of the
//! generator's degree, such that each relation `dx = Σ c_w w` evaluates to
//! the zero map.
//!
//! For representations `(V, f_i)` and `(W, g_i)` with `U = hom(V, W)` the
//! morphism complex has underlying space `U ⊕ ⊕_i U[|x_i| - 1]`. When every
//! generator is closed (`dx_i = 0`) its differential is
//!
//! ```text
//! (t_0, t_1, ..., t_n) ↦ (0, s_1, ..., s_n),
//! s_i = g_i t_0 - (-1)^{|t_0| |x_i|} t_0 f_i
//! ```
//!
//! Otherwise only the graded dimensions (and hence χ) are available.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{CochainComplex, CohomologyResult, ComplexError};
use crate::graded::{
    hom_basis, hom_basis_map, hom_coordinates, GradedError, GradedMap, GradedVectorSpace,
};
use crate::linalg::{LinalgError, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("relation for {generator:?} uses a word of length {len}; at most 2 allowed")]
    WordTooLong { generator: String, len: usize },
    #[error("relation for {generator:?}: word {word:?} has degree {found}, expected {expected}")]
    RelationDegree {
        generator: String,
        word: Vec<String>,
        expected: i32,
        found: i32,
    },
    #[error("more than one relation for {0:?}")]
    DuplicateRelation(String),
    #[error("unknown quiver {0:?}; expected sphere, torus or an inline presentation")]
    UnknownQuiver(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("no map given for generator {0:?}")]
    MissingMap(String),
    #[error("map for {0:?} is not an endomorphism of the representation space")]
    MapSpace(String),
    #[error("map for {generator:?} has degree {found}, expected {expected}")]
    Degree {
        generator: String,
        expected: i32,
        found: i32,
    },
    #[error("relation for {0:?} does not evaluate to zero")]
    Relation(String),
    #[error("map for invertible generator {0:?} is not invertible")]
    NotInvertible(String),
    #[error("representations are over different quivers")]
    QuiverMismatch,
    #[error("differential of the hom complex is not defined: d{0} != 0")]
    UnsupportedDifferential(String),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

impl From<LinalgError> for RepresentationError {
    fn from(e: LinalgError) -> Self {
        RepresentationError::Graded(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    #[serde(default)]
    pub invertible: bool,
}

/// `coeff · w`, where the word `[a, b]` means `a ∘ b` and the empty word
/// is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: i64,
    pub word: Vec<String>,
}

/// `d(generator) = Σ terms`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub generator: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinQuiver {
    /// One loop `z`, `|z| = -1`, `dz = 0`.
    Sphere,
    /// Loops `m, n` of degree 0 (invertible) and `h` of degree -1 with
    /// `dh = mn - nm`.
    Torus,
}

impl fmt::Display for BuiltinQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinQuiver::Sphere => "sphere",
            BuiltinQuiver::Torus => "torus",
        })
    }
}

impl std::str::FromStr for BuiltinQuiver {
    type Err = QuiverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sphere" => Ok(BuiltinQuiver::Sphere),
            "torus" => Ok(BuiltinQuiver::Torus),
            _ => Err(QuiverError::UnknownQuiver(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation", into = "RawPresentation")]
pub struct QuiverPresentation {
    generators: Vec<Generator>,
    relations: Vec<Relation>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: Vec<Generator>,
    #[serde(default)]
    relations: Vec<Relation>,
}

impl TryFrom<RawPresentation> for QuiverPresentation {
    type Error = QuiverError;

    fn try_from(raw: RawPresentation) -> Result<Self, Self::Error> {
        QuiverPresentation::new(raw.generators, raw.relations)
    }
}

impl From<QuiverPresentation> for RawPresentation {
    fn from(q: QuiverPresentation) -> Self {
        RawPresentation {
            generators: q.generators,
            relations: q.relations,
        }
    }
}

impl QuiverPresentation {
    pub fn new(generators: Vec<Generator>, relations: Vec<Relation>) -> Result<Self, QuiverError> {
        let mut degrees = HashMap::new();
        for g in &generators {
            if degrees.insert(g.name.as_str(), g.degree).is_some() {
                return Err(QuiverError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut related = HashSet::new();
        for rel in &relations {
            let Some(&gen_degree) = degrees.get(rel.generator.as_str()) else {
                return Err(QuiverError::UnknownGenerator(rel.generator.clone()));
            };
            if !related.insert(rel.generator.as_str()) {
                return Err(QuiverError::DuplicateRelation(rel.generator.clone()));
            }
            for term in &rel.terms {
                if term.word.len() > 2 {
                    return Err(QuiverError::WordTooLong {
                        generator: rel.generator.clone(),
                        len: term.word.len(),
                    });
                }
                let mut degree = 0;
                for letter in &term.word {
                    degree += degrees
                        .get(letter.as_str())
                        .ok_or_else(|| QuiverError::UnknownGenerator(letter.clone()))?;
                }
                if degree != gen_degree + 1 {
                    return Err(QuiverError::RelationDegree {
                        generator: rel.generator.clone(),
                        word: term.word.clone(),
                        expected: gen_degree + 1,
                        found: degree,
                    });
                }
            }
        }
        Ok(QuiverPresentation {
            generators,
            relations,
        })
    }

    pub fn builtin(which: BuiltinQuiver) -> Self {
        let gen = |name: &str, degree, invertible| Generator {
            name: name.into(),
            degree,
            invertible,
        };
        let word = |coeff, letters: &[&str]| Term {
            coeff,
            word: letters.iter().map(|s| s.to_string()).collect(),
        };
        let (generators, relations) = match which {
            BuiltinQuiver::Sphere => (vec![gen("z", -1, false)], vec![]),
            BuiltinQuiver::Torus => (
                vec![gen("m", 0, true), gen("n", 0, true), gen("h", -1, false)],
                vec![Relation {
                    generator: "h".into(),
                    terms: vec![word(1, &["m", "n"]), word(-1, &["n", "m"])],
                }],
            ),
        };
        QuiverPresentation::new(generators, relations).expect("builtin quivers are well formed")
    }

    pub fn sphere() -> Self {
        Self::builtin(BuiltinQuiver::Sphere)
    }

    pub fn torus() -> Self {
        Self::builtin(BuiltinQuiver::Torus)
    }

    /// Which builtin this is, if any.
    pub fn as_builtin(&self) -> Option<BuiltinQuiver> {
        [BuiltinQuiver::Sphere, BuiltinQuiver::Torus]
            .into_iter()
            .find(|&b| *self == Self::builtin(b))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    fn position(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// `d(name)` as a formal combination with like words collected and
    /// zero coefficients dropped.
    pub fn differential_of(&self, name: &str) -> BTreeMap<Vec<String>, i64> {
        let mut combo = BTreeMap::new();
        for rel in self.relations.iter().filter(|r| r.generator == name) {
            for t in &rel.terms {
                *combo.entry(t.word.clone()).or_insert(0) += t.coeff;
            }
        }
        combo.retain(|_, c| *c != 0);
        combo
    }

    /// First generator with a nonzero differential.
    pub fn first_non_closed(&self) -> Option<&Generator> {
        self.generators
            .iter()
            .find(|g| !self.differential_of(&g.name).is_empty())
    }

    pub fn all_closed(&self) -> bool {
        self.first_non_closed().is_none()
    }
}

/// A representation: graded space plus one map per generator, stored in
/// generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: QuiverPresentation,
    space: GradedVectorSpace,
    maps: Vec<GradedMap>,
}

impl Representation {
    /// Structural checks only (one endomorphism of `space` per generator);
    /// see [`Representation::validate`] for the rest.
    pub fn new(
        quiver: QuiverPresentation,
        space: GradedVectorSpace,
        mut maps: BTreeMap<String, GradedMap>,
    ) -> Result<Self, RepresentationError> {
        if let Some(extra) = maps.keys().find(|k| quiver.generator(k).is_none()) {
            return Err(QuiverError::UnknownGenerator(extra.clone()).into());
        }
        let mut ordered = Vec::with_capacity(quiver.generators.len());
        for g in &quiver.generators {
            let map = maps
                .remove(&g.name)
                .ok_or_else(|| RepresentationError::MissingMap(g.name.clone()))?;
            if *map.source() != space || *map.target() != space {
                return Err(RepresentationError::MapSpace(g.name.clone()));
            }
            ordered.push(map);
        }
        Ok(Representation {
            quiver,
            space,
            maps: ordered,
        })
    }

    /// Builds each generator's map from blocks at the generator's degree;
    /// generators not mentioned get the zero map.
    pub fn from_blocks<'a, I>(
        quiver: QuiverPresentation,
        space: GradedVectorSpace,
        blocks: I,
    ) -> Result<Self, RepresentationError>
    where
        I: IntoIterator<Item = (&'a str, BTreeMap<i32, RationalMatrix>)>,
    {
        let mut given: BTreeMap<String, BTreeMap<i32, RationalMatrix>> = BTreeMap::new();
        for (name, b) in blocks {
            if quiver.generator(name).is_none() {
                return Err(QuiverError::UnknownGenerator(name.to_string()).into());
            }
            given.insert(name.to_string(), b);
        }
        let mut maps = BTreeMap::new();
        for g in &quiver.generators {
            let b = given.remove(&g.name).unwrap_or_default();
            maps.insert(
                g.name.clone(),
                GradedMap::new(space.clone(), space.clone(), g.degree, b)?,
            );
        }
        Representation::new(quiver, space, maps)
    }

    /// `R` in degree 0 with every map zero except identities on
    /// invertible generators; over the sphere quiver this is the
    /// zero-section representation.
    pub fn point(quiver: QuiverPresentation) -> Self {
        let space = GradedVectorSpace::concentrated(0, 1);
        let maps = quiver
            .generators
            .iter()
            .map(|g| {
                let m = if g.invertible && g.degree == 0 {
                    GradedMap::identity(&space)
                } else {
                    GradedMap::zero(space.clone(), space.clone(), g.degree)
                };
                (g.name.clone(), m)
            })
            .collect();
        Representation::new(quiver, space, maps).expect("maps are endomorphisms of the space")
    }

    /// The zero representation.
    pub fn zero(quiver: QuiverPresentation) -> Self {
        Representation::from_blocks(quiver, GradedVectorSpace::zero(), [])
            .expect("zero maps are well formed")
    }

    pub fn quiver(&self) -> &QuiverPresentation {
        &self.quiver
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn maps(&self) -> impl Iterator<Item = (&Generator, &GradedMap)> {
        self.quiver.generators.iter().zip(&self.maps)
    }

    pub fn map(&self, name: &str) -> Option<&GradedMap> {
        self.quiver.position(name).map(|i| &self.maps[i])
    }

    /// `Σ c_w ρ(w)` for the relation of `name` (the zero map if `name` is
    /// closed).
    pub fn evaluate_differential(&self, name: &str) -> Result<GradedMap, RepresentationError> {
        let g = self
            .quiver
            .generator(name)
            .ok_or_else(|| QuiverError::UnknownGenerator(name.to_string()))?;
        let mut total = GradedMap::zero(self.space.clone(), self.space.clone(), g.degree + 1);
        for (word, coeff) in self.quiver.differential_of(name) {
            let mut value = GradedMap::identity(&self.space);
            for letter in word.iter().rev() {
                let m = self
                    .map(letter)
                    .ok_or_else(|| QuiverError::UnknownGenerator(letter.clone()))?;
                value = m.compose(&value)?;
            }
            total = total.scale_and_add(&Rational::one(), &value, &Rational::integer(coeff))?;
        }
        Ok(total)
    }

    /// Degree, relation and invertibility constraints, reporting the first
    /// violation.
    pub fn validate(&self) -> Result<(), RepresentationError> {
        for (g, m) in self.maps() {
            if m.degree() != g.degree {
                return Err(RepresentationError::Degree {
                    generator: g.name.clone(),
                    expected: g.degree,
                    found: m.degree(),
                });
            }
        }
        for rel in &self.quiver.relations {
            if !self.evaluate_differential(&rel.generator)?.is_zero() {
                return Err(RepresentationError::Relation(rel.generator.clone()));
            }
        }
        for (g, m) in self.maps() {
            if g.invertible && !m.is_invertible() {
                return Err(RepresentationError::NotInvertible(g.name.clone()));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }
}

pub fn validate_representation(r: &Representation) -> Result<(), RepresentationError> {
    r.validate()
}

/// One summand of the morphism complex: the base copy of `hom(V, W)` or
/// the copy attached to a generator, shifted by `|x| - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSummand {
    pub generator: Option<String>,
    pub shift: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomComplexResult {
    pub space: GradedVectorSpace,
    /// Base summand first, then one per generator in quiver order. At each
    /// degree the basis of the total space is the concatenation of the
    /// summands' bases in this order.
    pub layout: Vec<HomSummand>,
    /// `None` when some generator has a nonzero differential.
    pub complex: Option<CochainComplex>,
}

impl HomComplexResult {
    pub fn differential_defined(&self) -> bool {
        self.complex.is_some()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.space.euler_characteristic()
    }
}

fn check_pair(v: &Representation, w: &Representation) -> Result<(), RepresentationError> {
    if v.quiver != w.quiver {
        return Err(RepresentationError::QuiverMismatch);
    }
    v.validate()?;
    w.validate()
}

fn hom_layout(
    v: &Representation,
    w: &Representation,
) -> (GradedVectorSpace, GradedVectorSpace, Vec<HomSummand>) {
    let base = v.space.hom_space(&w.space);
    let layout: Vec<HomSummand> = std::iter::once(HomSummand {
        generator: None,
        shift: 0,
    })
    .chain(v.quiver.generators.iter().map(|g| HomSummand {
        generator: Some(g.name.clone()),
        shift: g.degree - 1,
    }))
    .collect();
    let total = layout.iter().fold(GradedVectorSpace::zero(), |acc, s| {
        acc.direct_sum(&base.shift(s.shift))
    });
    (base, total, layout)
}

pub fn hom_complex(
    v: &Representation,
    w: &Representation,
) -> Result<HomComplexResult, RepresentationError> {
    check_pair(v, w)?;
    let (base, space, layout) = hom_layout(v, w);
    if !v.quiver.all_closed() {
        return Ok(HomComplexResult {
            space,
            layout,
            complex: None,
        });
    }

    let mut blocks = BTreeMap::new();
    for e in space.degrees() {
        let rows = space.dim(e + 1);
        let cols = space.dim(e);
        if rows == 0 || base.dim(e) == 0 {
            continue;
        }
        let mut block = RationalMatrix::zeros(rows, cols);
        for (j, basis) in hom_basis(&v.space, &w.space, e).into_iter().enumerate() {
            let t0 = hom_basis_map(&v.space, &w.space, e, basis);
            // base summand of degree e+1 receives nothing
            let mut row_offset = base.dim(e + 1);
            for (k, (g, f_k)) in v.maps().enumerate() {
                let g_k = &w.maps[k];
                let sign = Rational::sign_power(i64::from(e) * i64::from(g.degree));
                let s =
                    g_k.compose(&t0)?
                        .scale_and_add(&Rational::one(), &t0.compose(f_k)?, &-sign)?;
                for (r, x) in hom_coordinates(&s).into_iter().enumerate() {
                    block[(row_offset + r, j)] = x;
                }
                row_offset += base.dim(e + 1 + g.degree - 1);
            }
        }
        blocks.insert(e, block);
    }
    let complex = CochainComplex::from_blocks(space.clone(), blocks)?;
    Ok(HomComplexResult {
        space,
        layout,
        complex: Some(complex),
    })
}

/// Cohomology of the morphism complex.
pub fn floer_cohomology(
    v: &Representation,
    w: &Representation,
) -> Result<CohomologyResult, RepresentationError> {
    match hom_complex(v, w)?.complex {
        Some(c) => Ok(c.cohomology()),
        None => {
            let g = v
                .quiver
                .first_non_closed()
                .expect("some generator is not closed");
            Err(RepresentationError::UnsupportedDifferential(g.name.clone()))
        }
    }
}

/// χ of the morphism complex, from graded dimensions alone.
pub fn euler_of_hom(v: &Representation, w: &Representation) -> Result<i64, RepresentationError> {
    check_pair(v, w)?;
    Ok(hom_layout(v, w).1.euler_characteristic())
}

/// Either a builtin quiver name or an inline presentation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuiverRef {
    Named(String),
    Inline(QuiverPresentation),
}

impl QuiverRef {
    pub fn resolve(&self) -> Result<QuiverPresentation, QuiverError> {
        match self {
            QuiverRef::Named(name) => Ok(QuiverPresentation::builtin(name.parse()?)),
            QuiverRef::Inline(q) => Ok(q.clone()),
        }
    }
}

/// On-disk representation:
/// `{ "quiver": ..., "space": {...}, "maps": { gen: { "i": [[...]] } } }`.
/// Generators without an entry in `maps` get the zero map.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub quiver: QuiverRef,
    pub space: GradedVectorSpace,
    #[serde(default)]
    pub maps: BTreeMap<String, BTreeMap<i32, Vec<Vec<Rational>>>>,
}

impl RepresentationFile {
    pub fn into_representation(self) -> Result<Representation, RepresentationError> {
        let quiver = self.quiver.resolve()?;
        let mut blocks = Vec::new();
        for (name, by_degree) in &self.maps {
            let mut b = BTreeMap::new();
            for (&i, rows) in by_degree {
                b.insert(
                    i,
                    RationalMatrix::from_rows(self.space.dim(i), rows.clone())?,
                );
            }
            blocks.push((name.as_str(), b));
        }
        Representation::from_blocks(quiver, self.space.clone(), blocks)
    }

    pub fn from_representation(r: &Representation) -> Self {
        let quiver = match r.quiver.as_builtin() {
            Some(b) => QuiverRef::Named(b.to_string()),
            None => QuiverRef::Inline(r.quiver.clone()),
        };
        let maps = r
            .maps()
            .filter(|(_, m)| !m.blocks().is_empty())
            .map(|(g, m)| {
                let blocks = m.blocks().iter().map(|(&i, b)| (i, b.to_rows())).collect();
                (g.name.clone(), blocks)
            })
            .collect();
        RepresentationFile {
            quiver,
            space: r.space.clone(),
            maps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows)
    }

    fn space(pairs: &[(i32, usize)]) -> GradedVectorSpace {
        pairs.iter().copied().collect()
    }

    fn torus_rep(alpha: RationalMatrix, beta: RationalMatrix) -> Representation {
        let n = alpha.rows();
        Representation::from_blocks(
            QuiverPresentation::torus(),
            space(&[(0, n)]),
            [
                ("m", BTreeMap::from([(0, alpha)])),
                ("n", BTreeMap::from([(0, beta)])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn builtin_presentations() {
        let s = QuiverPresentation::sphere();
        assert_eq!(s.generators().len(), 1);
        assert_eq!(s.generator("z").unwrap().degree, -1);
        assert!(s.all_closed());
        let t = QuiverPresentation::torus();
        assert_eq!(t.first_non_closed().unwrap().name, "h");
        assert_eq!(t.differential_of("h").len(), 2);
        assert_eq!(t.as_builtin(), Some(BuiltinQuiver::Torus));
    }

    #[test]
    fn presentation_checks() {
        let g = |name: &str, degree| Generator {
            name: name.into(),
            degree,
            invertible: false,
        };
        assert_eq!(
            QuiverPresentation::new(vec![g("a", 0), g("a", 1)], vec![]),
            Err(QuiverError::DuplicateGenerator("a".into()))
        );
        let bad_degree = Relation {
            generator: "a".into(),
            terms: vec![Term {
                coeff: 1,
                word: vec!["a".into()],
            }],
        };
        assert!(matches!(
            QuiverPresentation::new(vec![g("a", -1)], vec![bad_degree]),
            Err(QuiverError::RelationDegree {
                expected: 0,
                found: -1,
                ..
            })
        ));
        let long = Relation {
            generator: "a".into(),
            terms: vec![Term {
                coeff: 1,
                word: vec!["b".into(); 3],
            }],
        };
        assert!(matches!(
            QuiverPresentation::new(vec![g("a", 1), g("b", 0)], vec![long]),
            Err(QuiverError::WordTooLong { len: 3, .. })
        ));
        // empty word is the identity, degree 0
        let unit = Relation {
            generator: "a".into(),
            terms: vec![Term {
                coeff: 1,
                word: vec![],
            }],
        };
        assert!(QuiverPresentation::new(vec![g("a", -1)], vec![unit]).is_ok());
    }

    #[test]
    fn validate_examples() {
        let zero_section = Representation::point(QuiverPresentation::sphere());
        assert!(zero_section.validate().is_ok());
        assert!(zero_section.map("z").unwrap().is_zero());

        let scalars = torus_rep(mat(&[&[1]]), mat(&[&[1]]));
        assert!(scalars.validate().is_ok());

        let noncommuting = torus_rep(mat(&[&[1, 1], &[0, 1]]), mat(&[&[1, 0], &[1, 1]]));
        assert_eq!(
            noncommuting.validate(),
            Err(RepresentationError::Relation("h".into()))
        );

        let singular = torus_rep(mat(&[&[1, 1], &[1, 1]]), mat(&[&[1, 0], &[0, 1]]));
        assert_eq!(
            singular.validate(),
            Err(RepresentationError::NotInvertible("m".into()))
        );
    }

    #[test]
    fn commutator_oracle() {
        // αβ - βα computed by hand for the non-commuting pair above
        let a = mat(&[&[1, 1], &[0, 1]]);
        let b = mat(&[&[1, 0], &[1, 1]]);
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        let comm = ab
            .linear_combination(&Rational::one(), &Rational::integer(-1), &ba)
            .unwrap();
        assert_eq!(comm, mat(&[&[1, 0], &[0, -1]]));
        let r = torus_rep(a, b);
        assert_eq!(r.evaluate_differential("h").unwrap().block(0), comm);
    }

    #[test]
    fn degree_violation_is_reported() {
        let v = space(&[(0, 1)]);
        let maps = BTreeMap::from([("z".to_string(), GradedMap::identity(&v))]);
        let r = Representation::new(QuiverPresentation::sphere(), v, maps).unwrap();
        assert!(matches!(
            r.validate(),
            Err(RepresentationError::Degree {
                expected: -1,
                found: 0,
                ..
            })
        ));
    }

    #[test]
    fn structural_errors() {
        let v = space(&[(0, 1)]);
        assert_eq!(
            Representation::new(QuiverPresentation::sphere(), v.clone(), BTreeMap::new()),
            Err(RepresentationError::MissingMap("z".into()))
        );
        let w = space(&[(0, 2)]);
        let maps = BTreeMap::from([("z".to_string(), GradedMap::zero(w.clone(), w, -1))]);
        assert_eq!(
            Representation::new(QuiverPresentation::sphere(), v, maps),
            Err(RepresentationError::MapSpace("z".into()))
        );
    }

    #[test]
    fn zero_section_hom_complex() {
        let x0 = Representation::point(QuiverPresentation::sphere());
        let hom = hom_complex(&x0, &x0).unwrap();
        assert_eq!(hom.space, space(&[(0, 1), (2, 1)]));
        assert_eq!(
            hom.layout.iter().map(|s| s.shift).collect::<Vec<_>>(),
            [0, -2]
        );
        let c = hom.complex.unwrap();
        assert!(c.differential().is_zero());
        assert_eq!(
            c.cohomology(),
            CohomologyResult::from_dims([(0, 1), (2, 1)])
        );
        assert_eq!(euler_of_hom(&x0, &x0).unwrap(), 2);
    }

    #[test]
    fn torus_hom_complex_has_dims_only() {
        let r = torus_rep(mat(&[&[1, 0], &[0, 2]]), mat(&[&[3, 0], &[0, 1]]));
        let hom = hom_complex(&r, &r).unwrap();
        assert!(!hom.differential_defined());
        let u = space(&[(0, 4)]);
        let expected = u
            .direct_sum(&u.shift(-1))
            .direct_sum(&u.shift(-1))
            .direct_sum(&u.shift(-2));
        assert_eq!(hom.space, expected);
        assert_eq!(euler_of_hom(&r, &r).unwrap(), 0);
        assert_eq!(
            floer_cohomology(&r, &r),
            Err(RepresentationError::UnsupportedDifferential("h".into()))
        );
    }

    #[test]
    fn zero_representation_has_zero_euler() {
        let z = Representation::zero(QuiverPresentation::sphere());
        let x0 = Representation::point(QuiverPresentation::sphere());
        assert_eq!(euler_of_hom(&z, &x0).unwrap(), 0);
        assert_eq!(euler_of_hom(&x0, &z).unwrap(), 0);
    }

    #[test]
    fn quiver_mismatch() {
        let s = Representation::point(QuiverPresentation::sphere());
        let t = Representation::point(QuiverPresentation::torus());
        assert_eq!(
            hom_complex(&s, &t),
            Err(RepresentationError::QuiverMismatch)
        );
        assert_eq!(
            euler_of_hom(&s, &t),
            Err(RepresentationError::QuiverMismatch)
        );
    }

    #[test]
    fn file_format() {
        let json =
            r#"{"quiver": "sphere", "space": {"0": 1, "1": 1}, "maps": {"z": {"1": [["1"]]}}}"#;
        let file: RepresentationFile = serde_json::from_str(json).unwrap();
        let r = file.into_representation().unwrap();
        assert_eq!(r.map("z").unwrap().block(1), mat(&[&[1]]));
        let back = serde_json::to_string(&RepresentationFile::from_representation(&r)).unwrap();
        assert_eq!(
            back,
            r#"{"quiver":"sphere","space":{"0":1,"1":1},"maps":{"z":{"1":[["1"]]}}}"#
        );

        let inline = r#"{"quiver": {"generators": [{"name": "x", "degree": 0, "invertible": true}]},
                         "space": {"0": 1}, "maps": {"x": {"0": [["2"]]}}}"#;
        let r: RepresentationFile = serde_json::from_str(inline).unwrap();
        assert!(r.into_representation().unwrap().is_valid());

        let unknown = r#"{"quiver": "klein", "space": {}}"#;
        let r: RepresentationFile = serde_json::from_str(unknown).unwrap();
        assert!(matches!(
            r.into_representation(),
            Err(RepresentationError::Quiver(QuiverError::UnknownQuiver(_)))
        ));
    }
}
