//! Finite verification of the classification results for exact Lagrangian
//! surfaces in `T*S²` and `T*T²`, phrased over quiver representations:
//!
//! * **concentrated**: a sphere-quiver representation whose space has
//!   degree spread `k ≥ 1` has `HF^{-k} ≠ 0` and `HF^{k+2} ≠ 0`, so its
//!   Floer cohomology spans at least `2k + 2 ≥ 4` degrees.
//! * **sphere**: if `HF` of a sphere-quiver representation lies in degrees
//!   `{0, 1, 2}` then the space is concentrated, `HF = (m², 0, m²)`, and
//!   `dim HF⁰ = 1` forces sphere cohomology `(1, 0, 1)`.
//! * **torus**: every torus-quiver representation has `χ(hom(r, r)) = 0`,
//!   the Euler characteristic of a genus-1 surface.
//!
//! Checks collect violations instead of failing, so a report is the
//! output of a sweep. Sample `i` is drawn from its own ChaCha stream keyed
//! by `(seed, i)`, so serial and parallel runs give identical reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cellular::genus_from_euler;
use crate::complexes::random_matrix;
use crate::graded::GradedVectorSpace;
use crate::linalg::{Rational, RationalMatrix};
use crate::par::{map_indexed, Execution};
use crate::quiver::{
    euler_of_hom, floer_cohomology, BuiltinQuiver, QuiverPresentation, Representation,
    RepresentationFile,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("count must be at least 1")]
    ZeroCount,
    #[error("max_total_dim must be at least 1")]
    ZeroMaxDim,
    #[error("degree band [{0}, {1}] is empty")]
    EmptyBand(i32, i32),
    #[error("scalar pool is empty")]
    EmptyPool,
    #[error("only the builtin sphere and torus quivers can be sampled")]
    UnsupportedQuiver,
    #[error("exhaustive enumeration would visit {0} candidates; refusing")]
    TooLarge(u128),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub max_total_dim: usize,
    /// Inclusive.
    pub degree_band: (i32, i32),
    pub scalar_pool: Vec<Rational>,
    pub execution: Execution,
}

impl SampleConfig {
    pub fn new(seed: u64, count: usize) -> Self {
        SampleConfig {
            seed,
            count,
            max_total_dim: 3,
            degree_band: (-3, 3),
            scalar_pool: (-2..=2).map(Rational::integer).collect(),
            execution: Execution::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn check(&self) -> Result<(), SampleError> {
        if self.count == 0 {
            return Err(SampleError::ZeroCount);
        }
        if self.max_total_dim == 0 {
            return Err(SampleError::ZeroMaxDim);
        }
        if self.degree_band.0 > self.degree_band.1 {
            return Err(SampleError::EmptyBand(
                self.degree_band.0,
                self.degree_band.1,
            ));
        }
        if self.scalar_pool.is_empty() {
            return Err(SampleError::EmptyPool);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Sphere,
    Torus,
    Concentrated,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Sphere => "sphere",
            Theorem::Torus => "torus",
            Theorem::Concentrated => "concentrated",
        })
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sphere" => Ok(Theorem::Sphere),
            "torus" => Ok(Theorem::Torus),
            "concentrated" => Ok(Theorem::Concentrated),
            _ => Err(format!(
                "unknown theorem {s:?}; expected sphere, torus or concentrated"
            )),
        }
    }
}

impl Theorem {
    pub fn quiver(self) -> BuiltinQuiver {
        match self {
            Theorem::Torus => BuiltinQuiver::Torus,
            Theorem::Sphere | Theorem::Concentrated => BuiltinQuiver::Sphere,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub reason: String,
    /// The offending representation in the representation file format.
    pub witness: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    #[serde(rename = "checked")]
    pub samples_checked: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
    /// Outcome categories, e.g. how many samples landed in each branch.
    pub tally: BTreeMap<String, usize>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "theorem: {}\nchecked: {}\nskipped: {}\nviolations: {}\n",
            self.theorem,
            self.samples_checked,
            self.skipped,
            self.violations.len()
        );
        for (k, n) in &self.tally {
            out.push_str(&format!("  {k}: {n}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!(
                "  sample {}: {}\n    {}\n",
                v.index, v.reason, v.witness
            ));
        }
        out.push_str(if self.passed() {
            "result: PASS\n"
        } else {
            "result: FAIL\n"
        });
        out
    }
}

enum Outcome {
    Skipped,
    Checked {
        category: String,
        problem: Option<String>,
    },
}

fn checked(category: impl Into<String>, problem: Option<String>) -> Outcome {
    Outcome::Checked {
        category: category.into(),
        problem,
    }
}

fn build_report(
    theorem: Theorem,
    reps: &[Representation],
    outcomes: Vec<Outcome>,
) -> TheoremReport {
    let mut report = TheoremReport {
        theorem,
        samples_checked: 0,
        skipped: 0,
        violations: Vec::new(),
        tally: BTreeMap::new(),
    };
    for (index, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Skipped => report.skipped += 1,
            Outcome::Checked { category, problem } => {
                report.samples_checked += 1;
                *report.tally.entry(category).or_insert(0) += 1;
                if let Some(reason) = problem {
                    let witness =
                        serde_json::to_value(RepresentationFile::from_representation(&reps[index]))
                            .expect("representation serializes");
                    report.violations.push(Violation {
                        index,
                        reason,
                        witness,
                    });
                }
            }
        }
    }
    report
}

fn lemma_outcome(r: &Representation) -> Outcome {
    if let Err(e) = r.validate() {
        return checked("invalid", Some(format!("invalid representation: {e}")));
    }
    let Some(k) = r.space().spread().filter(|&k| k >= 1) else {
        return Outcome::Skipped;
    };
    let hf = match floer_cohomology(r, r) {
        Ok(hf) => hf,
        Err(e) => return checked("error", Some(e.to_string())),
    };
    checked(format!("spread_{k}"), lemma_problem(k, &hf))
}

fn lemma_problem(k: i32, hf: &crate::complexes::CohomologyResult) -> Option<String> {
    if hf.dim(-k) == 0 {
        return Some(format!("HF^{} vanishes for spread {k}", -k));
    }
    if hf.dim(k + 2) == 0 {
        return Some(format!("HF^{} vanishes for spread {k}", k + 2));
    }
    let lo = hf.support().next().expect("nonempty");
    let hi = hf.support().last().expect("nonempty");
    if lo < -k || hi > k + 2 {
        return Some(format!(
            "HF supported in [{lo}, {hi}], outside [{}, {}]",
            -k,
            k + 2
        ));
    }
    if hi - lo < 4 {
        return Some(format!("HF support gap {} < 4", hi - lo));
    }
    None
}

fn sphere_outcome(r: &Representation) -> Outcome {
    if let Err(e) = r.validate() {
        return checked("invalid", Some(format!("invalid representation: {e}")));
    }
    let hf = match floer_cohomology(r, r) {
        Ok(hf) => hf,
        Err(e) => return checked("error", Some(e.to_string())),
    };
    let in_surface_range = hf.support().all(|d| (0..=2).contains(&d));
    let space = r.space();
    if !in_surface_range {
        let problem = match space.spread() {
            Some(k) if k >= 1 => lemma_problem(k, &hf),
            _ => Some("concentrated space with HF outside degrees 0..=2".to_string()),
        };
        return checked("non_surface", problem);
    }
    if !space.is_concentrated() {
        return checked(
            "surface_range",
            Some("HF within degrees 0..=2 but the space is not concentrated".into()),
        );
    }
    let m2 = space.total_dim() * space.total_dim();
    if (hf.dim(0), hf.dim(1), hf.dim(2)) != (m2, 0, m2) {
        return checked(
            "surface_range",
            Some(format!(
                "concentrated space of dim {} gave HF = ({}, {}, {}), expected ({m2}, 0, {m2})",
                space.total_dim(),
                hf.dim(0),
                hf.dim(1),
                hf.dim(2)
            )),
        );
    }
    if hf.dim(0) != 1 {
        // H⁰ ≠ R: excluded by connectedness
        return checked(format!("excluded_h0_{}", hf.dim(0)), None);
    }
    let problem = (hf.total_dim() != 2).then(|| "HF⁰ = R but HF is not (R, 0, R)".to_string());
    checked("sphere", problem)
}

fn torus_outcome(r: &Representation) -> Outcome {
    if let Err(e) = r.validate() {
        return checked("invalid", Some(format!("invalid representation: {e}")));
    }
    let chi = match euler_of_hom(r, r) {
        Ok(chi) => chi,
        Err(e) => return checked("error", Some(e.to_string())),
    };
    if chi != 0 {
        return checked(
            "nonzero_chi",
            Some(format!("χ(hom(r, r)) = {chi}, expected 0")),
        );
    }
    match genus_from_euler(chi) {
        Ok(1) => checked(format!("dim_{}", r.space().total_dim()), None),
        other => checked("genus", Some(format!("χ = 0 classified as {other:?}"))),
    }
}

fn outcome_fn(theorem: Theorem) -> fn(&Representation) -> Outcome {
    match theorem {
        Theorem::Sphere => sphere_outcome,
        Theorem::Torus => torus_outcome,
        Theorem::Concentrated => lemma_outcome,
    }
}

/// Runs `theorem`'s check over an explicit list of representations.
pub fn check_representations(
    theorem: Theorem,
    reps: &[Representation],
    execution: Execution,
) -> TheoremReport {
    let f = outcome_fn(theorem);
    let outcomes = map_indexed(reps.len(), execution, |i| f(&reps[i]));
    build_report(theorem, reps, outcomes)
}

/// Samples `cfg.count` representations of the theorem's quiver and checks
/// each of them.
pub fn check_theorem(theorem: Theorem, cfg: &SampleConfig) -> Result<TheoremReport, SampleError> {
    let quiver = QuiverPresentation::builtin(theorem.quiver());
    let reps = sample_representations(&quiver, cfg)?;
    Ok(check_representations(theorem, &reps, cfg.execution))
}

pub fn check_concentrated_lemma(cfg: &SampleConfig) -> Result<TheoremReport, SampleError> {
    check_theorem(Theorem::Concentrated, cfg)
}

pub fn check_sphere_theorem(cfg: &SampleConfig) -> Result<TheoremReport, SampleError> {
    check_theorem(Theorem::Sphere, cfg)
}

pub fn check_torus_theorem(cfg: &SampleConfig) -> Result<TheoremReport, SampleError> {
    check_theorem(Theorem::Torus, cfg)
}

fn sampler_kind(quiver: &QuiverPresentation) -> Result<BuiltinQuiver, SampleError> {
    quiver.as_builtin().ok_or(SampleError::UnsupportedQuiver)
}

/// `cfg.count` valid representations; sample `i` depends only on
/// `(cfg.seed, i)` and the shape parameters of `cfg`.
pub fn sample_representations(
    quiver: &QuiverPresentation,
    cfg: &SampleConfig,
) -> Result<Vec<Representation>, SampleError> {
    cfg.check()?;
    let kind = sampler_kind(quiver)?;
    Ok(map_indexed(cfg.count, cfg.execution, |i| {
        sample_representation(kind, cfg, i)
    }))
}

pub fn sample_representation(
    kind: BuiltinQuiver,
    cfg: &SampleConfig,
    index: usize,
) -> Representation {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let space = sample_space(&mut rng, cfg);
    match kind {
        BuiltinQuiver::Sphere => {
            let f = lowering_blocks(&mut rng, &space, &cfg.scalar_pool);
            Representation::from_blocks(QuiverPresentation::sphere(), space, [("z", f)])
        }
        BuiltinQuiver::Torus => {
            let (alpha, beta) = commuting_pair(&mut rng, &space, &cfg.scalar_pool);
            let gamma = lowering_blocks(&mut rng, &space, &cfg.scalar_pool);
            Representation::from_blocks(
                QuiverPresentation::torus(),
                space,
                [("m", alpha), ("n", beta), ("h", gamma)],
            )
        }
    }
    .expect("sampled blocks have the right shapes")
}

fn sample_space<R: Rng>(rng: &mut R, cfg: &SampleConfig) -> GradedVectorSpace {
    let total = rng.random_range(1..=cfg.max_total_dim);
    let (lo, hi) = cfg.degree_band;
    (0..total).map(|_| (rng.random_range(lo..=hi), 1)).collect()
}

/// Random degree -1 blocks `V^i -> V^{i-1}`.
fn lowering_blocks<R: Rng>(
    rng: &mut R,
    space: &GradedVectorSpace,
    pool: &[Rational],
) -> BTreeMap<i32, RationalMatrix> {
    space
        .iter()
        .filter(|&(i, _)| space.dim(i - 1) > 0)
        .map(|(i, n)| (i, random_matrix(rng, space.dim(i - 1), n, pool)))
        .collect()
}

const MAX_RESAMPLES: usize = 64;

fn nonzero_pool(pool: &[Rational]) -> Vec<Rational> {
    let nz: Vec<Rational> = pool.iter().filter(|x| !x.is_zero()).cloned().collect();
    if nz.is_empty() {
        vec![Rational::one()]
    } else {
        nz
    }
}

fn random_diagonal<R: Rng>(rng: &mut R, n: usize, nonzero: &[Rational]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = nonzero.choose(rng).expect("nonempty").clone();
    }
    m
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize, pool: &[Rational]) -> RationalMatrix {
    for _ in 0..MAX_RESAMPLES {
        let m = random_matrix(rng, n, n, pool);
        if m.is_invertible() {
            return m;
        }
    }
    RationalMatrix::identity(n)
}

/// `Σ_k c_k a^k` for `k = 0..coeffs.len()`.
fn polynomial_in(a: &RationalMatrix, coeffs: &[Rational]) -> RationalMatrix {
    let n = a.rows();
    let mut power = RationalMatrix::identity(n);
    let mut total = RationalMatrix::zeros(n, n);
    for c in coeffs {
        total = total
            .linear_combination(&Rational::one(), c, &power)
            .expect("square matrices of one size");
        power = power.multiply(a).expect("square");
    }
    total
}

/// Degreewise commuting invertible pair: a diagonal pair (one draw in
/// four) or `α` invertible with `β` a polynomial in `α`.
fn commuting_pair<R: Rng>(
    rng: &mut R,
    space: &GradedVectorSpace,
    pool: &[Rational],
) -> (BTreeMap<i32, RationalMatrix>, BTreeMap<i32, RationalMatrix>) {
    let nonzero = nonzero_pool(pool);
    let diagonal_family = rng.random_bool(0.25);
    let mut alpha = BTreeMap::new();
    let mut beta = BTreeMap::new();
    for (i, n) in space.iter() {
        let (a, b) = if diagonal_family {
            (
                random_diagonal(rng, n, &nonzero),
                random_diagonal(rng, n, &nonzero),
            )
        } else {
            let a = random_invertible(rng, n, pool);
            let b = (0..MAX_RESAMPLES)
                .map(|_| {
                    let coeffs: Vec<Rational> = (0..=n)
                        .map(|_| pool.choose(rng).expect("nonempty").clone())
                        .collect();
                    polynomial_in(&a, &coeffs)
                })
                .find(RationalMatrix::is_invertible)
                .unwrap_or_else(|| RationalMatrix::identity(n));
            (a, b)
        };
        alpha.insert(i, a);
        beta.insert(i, b);
    }
    (alpha, beta)
}

/// Parameters of an exhaustive sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_total_dim: usize,
    pub degree_band: (i32, i32),
    pub scalar_pool: Vec<Rational>,
}

const ENUMERATION_LIMIT: u128 = 20_000_000;

/// Every graded space with total dimension `<= max_total_dim` supported in
/// `band`, the zero space first.
pub fn enumerate_spaces(max_total_dim: usize, band: (i32, i32)) -> Vec<GradedVectorSpace> {
    fn go(
        degree: i32,
        hi: i32,
        remaining: usize,
        acc: &mut Vec<(i32, usize)>,
        out: &mut Vec<GradedVectorSpace>,
    ) {
        if degree > hi {
            out.push(acc.iter().copied().collect());
            return;
        }
        for n in 0..=remaining {
            acc.push((degree, n));
            go(degree + 1, hi, remaining - n, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(band.0, band.1, max_total_dim, &mut Vec::new(), &mut out);
    out.sort_by_key(|v| (v.total_dim(), v.iter().collect::<Vec<_>>()));
    out
}

/// Every valid representation of a builtin quiver with all matrix entries
/// drawn from the pool, over every space from [`enumerate_spaces`].
pub fn enumerate_representations(
    quiver: &QuiverPresentation,
    cfg: &EnumerationConfig,
) -> Result<Vec<Representation>, SampleError> {
    sampler_kind(quiver)?;
    if cfg.scalar_pool.is_empty() {
        return Err(SampleError::EmptyPool);
    }
    if cfg.degree_band.0 > cfg.degree_band.1 {
        return Err(SampleError::EmptyBand(cfg.degree_band.0, cfg.degree_band.1));
    }
    let pool = &cfg.scalar_pool;
    let mut reps = Vec::new();
    for space in enumerate_spaces(cfg.max_total_dim, cfg.degree_band) {
        // (generator, source degree, rows, cols) for every nonempty block
        let slots: Vec<(&str, i32, usize, usize)> = quiver
            .generators()
            .iter()
            .flat_map(|g| {
                let space = &space;
                space.iter().filter_map(move |(i, n)| {
                    let m = space.dim(i + g.degree);
                    (m > 0).then_some((g.name.as_str(), i, m, n))
                })
            })
            .collect();
        let entries: usize = slots.iter().map(|&(_, _, r, c)| r * c).sum();
        let candidates = (pool.len() as u128)
            .checked_pow(entries as u32)
            .unwrap_or(u128::MAX);
        if candidates > ENUMERATION_LIMIT {
            return Err(SampleError::TooLarge(candidates));
        }
        let mut digits = vec![0usize; entries];
        for _ in 0..candidates {
            let mut values = digits.iter().map(|&d| pool[d].clone());
            let mut blocks: BTreeMap<&str, BTreeMap<i32, RationalMatrix>> = BTreeMap::new();
            for &(name, i, r, c) in &slots {
                let m = RationalMatrix::new(r, c, values.by_ref().take(r * c).collect())
                    .expect("entry count matches");
                blocks.entry(name).or_default().insert(i, m);
            }
            let rep = Representation::from_blocks(quiver.clone(), space.clone(), blocks)
                .expect("enumerated blocks have the right shapes");
            if rep.is_valid() {
                reps.push(rep);
            }
            // odometer increment
            for d in digits.iter_mut() {
                *d += 1;
                if *d < pool.len() {
                    break;
                }
                *d = 0;
            }
        }
    }
    Ok(reps)
}
