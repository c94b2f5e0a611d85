//! Cell decompositions with user-supplied incidence coefficients, their
//! cellular homology, and genus classification of closed orientable
//! surfaces by Euler characteristic.
//!
//! Incidence coefficients are data: nothing here derives them from
//! attaching maps. Internally an `i`-cell sits in cochain degree `-i` and
//! the boundary map becomes a degree +1 differential; all user-facing
//! results use geometric (lower) indices.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{CochainComplex, CohomologyResult, ComplexError};
use crate::graded::GradedVectorSpace;
use crate::linalg::{Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("duplicate cell id {0:?}")]
    DuplicateId(String),
    #[error("incidence refers to unknown cell {0:?}")]
    UnknownCell(String),
    #[error("incidence {from:?} -> {to:?} joins dimensions {from_dim} and {to_dim}; expected a drop of one")]
    DimensionMismatch {
        from: String,
        to: String,
        from_dim: u32,
        to_dim: u32,
    },
    #[error("incidence {from:?} -> {to:?} listed twice")]
    DuplicateIncidence { from: String, to: String },
    #[error("inconsistent incidence: boundary of boundary is nonzero on {0}-cells")]
    InconsistentIncidence(u32),
    #[error("unknown builtin {0:?}; expected circle, sphere, torus or genus_g:<g>")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub id: String,
    pub dim: u32,
}

/// `from` is an `(i+1)`-cell, `to` an `i`-cell; `coeff` is the signed count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Incidence {
    pub from: String,
    pub to: String,
    pub coeff: i64,
}

/// A cell decomposition. Pairs absent from `incidence` have coefficient 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub incidence: Vec<Incidence>,
}

impl CellComplex {
    /// Checks id uniqueness, references, and the dimension-drop rule.
    pub fn check(&self) -> Result<(), CellError> {
        let mut dims = HashMap::new();
        for c in &self.cells {
            if dims.insert(c.id.as_str(), c.dim).is_some() {
                return Err(CellError::DuplicateId(c.id.clone()));
            }
        }
        let mut seen = HashSet::new();
        for inc in &self.incidence {
            let lookup = |id: &str| {
                dims.get(id)
                    .copied()
                    .ok_or_else(|| CellError::UnknownCell(id.to_string()))
            };
            let (from_dim, to_dim) = (lookup(&inc.from)?, lookup(&inc.to)?);
            if from_dim != to_dim + 1 {
                return Err(CellError::DimensionMismatch {
                    from: inc.from.clone(),
                    to: inc.to.clone(),
                    from_dim,
                    to_dim,
                });
            }
            if !seen.insert((inc.from.as_str(), inc.to.as_str())) {
                return Err(CellError::DuplicateIncidence {
                    from: inc.from.clone(),
                    to: inc.to.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn count(&self, dim: u32) -> usize {
        self.cells.iter().filter(|c| c.dim == dim).count()
    }

    /// `Σ (-1)^i (number of i-cells)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn builtin(which: Builtin) -> CellComplex {
        builtin(which)
    }
}

/// The built-in decompositions, all with vanishing incidence coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Circle,
    Sphere,
    Torus,
    Genus(u32),
}

impl FromStr for Builtin {
    type Err = CellError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "circle" => Ok(Builtin::Circle),
            "sphere" => Ok(Builtin::Sphere),
            "torus" => Ok(Builtin::Torus),
            _ => s
                .strip_prefix("genus_g:")
                .and_then(|g| g.parse().ok())
                .map(Builtin::Genus)
                .ok_or_else(|| CellError::UnknownBuiltin(s.to_string())),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Circle => f.write_str("circle"),
            Builtin::Sphere => f.write_str("sphere"),
            Builtin::Torus => f.write_str("torus"),
            Builtin::Genus(g) => write!(f, "genus_g:{g}"),
        }
    }
}

fn cell(id: impl Into<String>, dim: u32) -> Cell {
    Cell { id: id.into(), dim }
}

pub fn builtin(which: Builtin) -> CellComplex {
    match which {
        Builtin::Circle => CellComplex {
            cells: vec![cell("b", 0), cell("a", 1)],
            incidence: vec![Incidence {
                from: "a".into(),
                to: "b".into(),
                coeff: 0,
            }],
        },
        Builtin::Sphere | Builtin::Genus(0) => CellComplex {
            cells: vec![cell("p", 0), cell("s", 2)],
            incidence: Vec::new(),
        },
        Builtin::Torus => genus_surface(1, ["d"], ["b", "c"], "a"),
        Builtin::Genus(g) => {
            let ones: Vec<String> = (1..=2 * g).map(|i| format!("b{i}")).collect();
            genus_surface(g, ["a".to_string()], ones, "c")
        }
    }
}

/// One 0-cell, `2g` 1-cells and one 2-cell, with every listed coefficient
/// zero (each 1-cell is traversed once in each direction).
fn genus_surface<S: Into<String>>(
    g: u32,
    zero: [S; 1],
    ones: impl IntoIterator<Item = S>,
    two: &str,
) -> CellComplex {
    let [zero] = zero.map(Into::into);
    let ones: Vec<String> = ones.into_iter().map(Into::into).collect();
    debug_assert_eq!(ones.len(), 2 * g as usize);
    let mut cells = vec![cell(zero.clone(), 0)];
    cells.extend(ones.iter().map(|b| cell(b.clone(), 1)));
    cells.push(cell(two, 2));
    let incidence = ones
        .iter()
        .map(|b| Incidence {
            from: b.clone(),
            to: zero.clone(),
            coeff: 0,
        })
        .chain(ones.iter().map(|b| Incidence {
            from: two.to_string(),
            to: b.clone(),
            coeff: 0,
        }))
        .collect();
    CellComplex { cells, incidence }
}

/// Cellular chain complex, cochain-graded (`i`-cells in degree `-i`).
///
/// Within each dimension, cells keep their listed order; the entry at
/// `(b, a)` of the boundary out of dimension `i` is `coeff(a -> b)`.
pub fn chain_complex_of(cc: &CellComplex) -> Result<CochainComplex, CellError> {
    cc.check()?;
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for c in &cc.cells {
        let k = counts.entry(c.dim).or_insert(0);
        index.insert(c.id.as_str(), *k);
        *k += 1;
    }
    let dim_of: HashMap<&str, u32> = cc.cells.iter().map(|c| (c.id.as_str(), c.dim)).collect();

    let space: GradedVectorSpace = counts.iter().map(|(&i, &n)| (-(i as i32), n)).collect();
    let mut blocks: BTreeMap<i32, RationalMatrix> = BTreeMap::new();
    for inc in &cc.incidence {
        if inc.coeff == 0 {
            continue;
        }
        let i = dim_of[inc.from.as_str()];
        let source = -(i as i32);
        let block = blocks
            .entry(source)
            .or_insert_with(|| RationalMatrix::zeros(counts[&(i - 1)], counts[&i]));
        block[(index[inc.to.as_str()], index[inc.from.as_str()])] = Rational::integer(inc.coeff);
    }
    match CochainComplex::from_blocks(space, blocks) {
        // square out of cochain degree -i is ∂_{i-1} ∘ ∂_i on i-cells
        Err(ComplexError::NotAComplex(degree)) => {
            Err(CellError::InconsistentIncidence((-degree) as u32))
        }
        other => Ok(other?),
    }
}

/// Homology in geometric (lower) indices: key `i` is `dim H_i`.
pub fn homology_of(cc: &CellComplex) -> Result<CohomologyResult, CellError> {
    Ok(chain_complex_of(cc)?.cohomology().negate_degrees())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceVerdict {
    pub genus: u32,
    pub euler: i64,
    pub connected: bool,
    pub orientable_assumed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not connected: dim H_0 = {0}")]
    Disconnected(usize),
    #[error("dim H_2 = {0}; a closed orientable surface has dim H_2 = 1")]
    NoFundamentalClass(usize),
    #[error("homology in degree {0} > 2; not a surface")]
    TooHighDimensional(i32),
    #[error("odd Euler characteristic {0}; not a closed orientable surface")]
    OddEuler(i64),
    #[error("Euler characteristic {0} exceeds 2; not a closed connected surface")]
    EulerTooLarge(i64),
    #[error(transparent)]
    Cell(#[from] CellError),
}

/// `g = (2 - χ) / 2` for even `χ ≤ 2`.
pub fn genus_from_euler(euler: i64) -> Result<u32, ClassifyError> {
    if euler.rem_euclid(2) != 0 {
        return Err(ClassifyError::OddEuler(euler));
    }
    if euler > 2 {
        return Err(ClassifyError::EulerTooLarge(euler));
    }
    u32::try_from((2 - euler) / 2).map_err(|_| ClassifyError::EulerTooLarge(euler))
}

pub fn classify_surface(cc: &CellComplex) -> Result<SurfaceVerdict, ClassifyError> {
    let h = homology_of(cc)?;
    if h.dim(0) != 1 {
        return Err(ClassifyError::Disconnected(h.dim(0)));
    }
    if let Some(top) = h.support().find(|&i| i > 2) {
        return Err(ClassifyError::TooHighDimensional(top));
    }
    if h.dim(2) != 1 {
        return Err(ClassifyError::NoFundamentalClass(h.dim(2)));
    }
    let euler = h.euler_characteristic();
    Ok(SurfaceVerdict {
        genus: genus_from_euler(euler)?,
        euler,
        connected: true,
        orientable_assumed: true,
    })
}
