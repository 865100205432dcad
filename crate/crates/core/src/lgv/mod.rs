//! Lattice paths with unit right/up steps, counted one at a time by dynamic
//! programming and in vertex-disjoint families by exhaustive enumeration.
//!
//! The enumeration is deliberately naive: it is the independent oracle the
//! determinant side is checked against.

mod dual;
mod render;

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_int, floor_div, Integer};
use crate::determinants::det_fraction_free;
use crate::error::{Error, Result};
use crate::matrices::{AlphaVector, ExactMatrix, Provenance};

pub use dual::{count_dual_paths, dual_path, dual_path_count, DualStep};
pub use render::render_ascii;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Right,
    Up,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Up => 'U',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePath {
    start: LatticePoint,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(start: LatticePoint, steps: Vec<Step>) -> Self {
        LatticePath { start, steps }
    }

    pub fn start(&self) -> LatticePoint {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn end(&self) -> LatticePoint {
        self.points().last().expect("a path visits its start")
    }

    /// Every visited point, start and end included.
    pub fn points(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().scan(self.start, |p, s| {
            match s {
                Step::Right => p.x += 1,
                Step::Up => p.y += 1,
            }
            Some(*p)
        }))
    }

    pub fn step_string(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.step_string())
    }
}

/// Every visited point must satisfy `x >= mu * y`; touching the line is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopeConstraint {
    mu: u32,
}

impl SlopeConstraint {
    pub fn new(mu: u32) -> Result<Self> {
        if mu == 0 {
            return Err(Error::domain("slope constraint needs mu >= 1"));
        }
        Ok(SlopeConstraint { mu })
    }

    pub fn mu(self) -> u32 {
        self.mu
    }

    pub fn admits(self, p: LatticePoint) -> bool {
        p.x >= i64::from(self.mu) * p.y
    }
}

fn admitted(constraint: Option<SlopeConstraint>, p: LatticePoint) -> bool {
    constraint.is_none_or(|c| c.admits(p))
}

/// How many objects an exhaustive enumeration may produce before it is
/// refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCap(pub u64);

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap(100_000)
    }
}

/// Where a path system came from; some reductions only apply to one shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConfigOrigin {
    Custom,
    /// Paths from `(-(k-1) alpha_i, -alpha_i)` to `(i + beta, floor((i+beta)/(k-1)))`.
    RowShift {
        alphas: AlphaVector,
        k: u32,
        beta: u32,
    },
    /// [`ConfigOrigin::RowShift`] after the forced final vertical steps are removed.
    RowShiftReduced {
        alphas: AlphaVector,
        k: u32,
        beta: u32,
    },
    /// Unconstrained paths from `(a, b - i)` to `(alpha_i, c)`.
    PathFamilies {
        a: i64,
        b: i64,
        c: i64,
        alphas: Vec<i64>,
    },
    /// One summand of the adjacent-index expansion.
    Adjacent {
        n: u32,
        s: u32,
        k: u32,
        beta: u32,
    },
    /// [`ConfigOrigin::Adjacent`] with all forced portions and the boundary removed.
    AdjacentReduced {
        n: u32,
        s: u32,
        k: u32,
        beta: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystemConfig {
    pub starts: Vec<LatticePoint>,
    pub ends: Vec<LatticePoint>,
    pub constraint: Option<SlopeConstraint>,
    pub origin: ConfigOrigin,
}

impl PathSystemConfig {
    pub fn new(
        starts: Vec<LatticePoint>,
        ends: Vec<LatticePoint>,
        constraint: Option<SlopeConstraint>,
    ) -> Result<Self> {
        if starts.len() != ends.len() {
            return Err(Error::domain(format!(
                "{} start points but {} end points",
                starts.len(),
                ends.len()
            )));
        }
        Ok(PathSystemConfig {
            starts,
            ends,
            constraint,
            origin: ConfigOrigin::Custom,
        })
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    fn with_origin(mut self, origin: ConfigOrigin) -> Self {
        self.origin = origin;
        self
    }
}

/// Number of monotone paths from `a` to `e` whose every point obeys the
/// constraint.
pub fn count_paths(
    a: LatticePoint,
    e: LatticePoint,
    constraint: Option<SlopeConstraint>,
) -> Integer {
    if e.x < a.x || e.y < a.y || !admitted(constraint, a) || !admitted(constraint, e) {
        return Integer::zero();
    }
    let width = (e.x - a.x + 1) as usize;
    let height = (e.y - a.y + 1) as usize;
    let mut row = vec![Integer::zero(); width];
    for dy in 0..height {
        for dx in 0..width {
            let p = LatticePoint::new(a.x + dx as i64, a.y + dy as i64);
            if !admitted(constraint, p) {
                row[dx] = Integer::zero();
                continue;
            }
            if dx == 0 && dy == 0 {
                row[0] = Integer::one();
            } else if dx > 0 {
                // row[dx] still holds the count from below
                let left = row[dx - 1].clone();
                row[dx] += left;
            }
        }
    }
    row[width - 1].clone()
}

/// Closed count of paths from the origin to `(c, d)` staying weakly below
/// `x = mu y`, valid when `c >= mu d >= 0`:
/// `(c - mu d + 1) / (c + d + 1) * C(c + d + 1, d)`.
pub fn slope_path_formula(c: i64, d: i64, mu: i64) -> Integer {
    assert!(d >= 0 && c >= mu * d, "formula needs c >= mu*d >= 0");
    binomial_int(c + d + 1, d) * (c - mu * d + 1) / (c + d + 1)
}

/// Reverse table: for every point of the bounding box, whether an
/// admissible continuation to `e` exists.
struct Continuations {
    origin: LatticePoint,
    width: usize,
    height: usize,
    ways: Vec<bool>,
}

impl Continuations {
    fn new(a: LatticePoint, e: LatticePoint, constraint: Option<SlopeConstraint>) -> Self {
        let width = (e.x - a.x + 1).max(0) as usize;
        let height = (e.y - a.y + 1).max(0) as usize;
        let mut ways = vec![false; width * height];
        for dy in (0..height).rev() {
            for dx in (0..width).rev() {
                let p = LatticePoint::new(a.x + dx as i64, a.y + dy as i64);
                if !admitted(constraint, p) {
                    continue;
                }
                let idx = dy * width + dx;
                ways[idx] = (dx + 1 == width && dy + 1 == height)
                    || (dx + 1 < width && ways[idx + 1])
                    || (dy + 1 < height && ways[idx + width]);
            }
        }
        Continuations {
            origin: a,
            width,
            height,
            ways,
        }
    }

    fn reaches(&self, p: LatticePoint) -> bool {
        let (dx, dy) = (p.x - self.origin.x, p.y - self.origin.y);
        if dx < 0 || dy < 0 || dx as usize >= self.width || dy as usize >= self.height {
            return false;
        }
        self.ways[dy as usize * self.width + dx as usize]
    }
}

/// All admissible paths from `a` to `e`, in lexicographic order of their
/// step strings (`R` before `U`).
pub fn enumerate_paths(
    a: LatticePoint,
    e: LatticePoint,
    constraint: Option<SlopeConstraint>,
    cap: EnumerationCap,
) -> Result<Vec<LatticePath>> {
    let count = count_paths(a, e, constraint);
    if count > Integer::from(cap.0) {
        return Err(Error::CapExceeded {
            count: count.to_string(),
            cap: cap.0,
        });
    }
    let mut out = Vec::new();
    if count.is_zero() {
        return Ok(out);
    }
    let table = Continuations::new(a, e, constraint);
    let mut steps = Vec::new();
    walk(&table, a, e, &mut steps, &mut out);
    Ok(out)
}

fn walk(
    table: &Continuations,
    p: LatticePoint,
    e: LatticePoint,
    steps: &mut Vec<Step>,
    out: &mut Vec<LatticePath>,
) {
    if p == e {
        out.push(LatticePath::new(table.origin, steps.clone()));
        return;
    }
    for step in [Step::Right, Step::Up] {
        let q = match step {
            Step::Right => LatticePoint::new(p.x + 1, p.y),
            Step::Up => LatticePoint::new(p.x, p.y + 1),
        };
        if table.reaches(q) {
            steps.push(step);
            walk(table, q, e, steps, out);
            steps.pop();
        }
    }
}

/// Paths packed as bitsets over the common bounding box, so disjointness is
/// a word-wise AND.
struct PackedPaths {
    paths: Vec<Vec<LatticePath>>,
    masks: Vec<Vec<Vec<u64>>>,
}

impl PackedPaths {
    fn build(config: &PathSystemConfig, cap: EnumerationCap) -> Result<Self> {
        let paths = config
            .starts
            .iter()
            .zip(&config.ends)
            .map(|(&a, &e)| enumerate_paths(a, e, config.constraint, cap))
            .collect::<Result<Vec<_>>>()?;
        let pts: Vec<LatticePoint> = config.starts.iter().chain(&config.ends).copied().collect();
        let (min_x, min_y) = (
            pts.iter().map(|p| p.x).min().unwrap_or(0),
            pts.iter().map(|p| p.y).min().unwrap_or(0),
        );
        let width = (pts.iter().map(|p| p.x).max().unwrap_or(0) - min_x + 1) as usize;
        let height = (pts.iter().map(|p| p.y).max().unwrap_or(0) - min_y + 1) as usize;
        let words = (width * height).div_ceil(64);
        let masks = paths
            .iter()
            .map(|list| {
                list.iter()
                    .map(|path| {
                        let mut mask = vec![0u64; words];
                        for p in path.points() {
                            let bit = (p.y - min_y) as usize * width + (p.x - min_x) as usize;
                            mask[bit / 64] |= 1 << (bit % 64);
                        }
                        mask
                    })
                    .collect()
            })
            .collect();
        Ok(PackedPaths { paths, masks })
    }

    fn count_from(&self, level: usize, occupied: &mut [u64]) -> u64 {
        if level == self.masks.len() {
            return 1;
        }
        let mut total = 0;
        for mask in &self.masks[level] {
            if disjoint(occupied, mask) {
                toggle(occupied, mask);
                total += self.count_from(level + 1, occupied);
                toggle(occupied, mask);
            }
        }
        total
    }

    fn collect_from(
        &self,
        level: usize,
        occupied: &mut [u64],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() > limit {
            return;
        }
        if level == self.masks.len() {
            out.push(chosen.clone());
            return;
        }
        for (idx, mask) in self.masks[level].iter().enumerate() {
            if disjoint(occupied, mask) {
                toggle(occupied, mask);
                chosen.push(idx);
                self.collect_from(level + 1, occupied, chosen, out, limit);
                chosen.pop();
                toggle(occupied, mask);
            }
        }
    }
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn toggle(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// Number of families of pairwise vertex-disjoint paths, path `i` running
/// from `starts[i]` to `ends[i]`, counted by exhaustive search. Each
/// single-pair path list must fit under the cap.
pub fn count_nonintersecting(config: &PathSystemConfig, cap: EnumerationCap) -> Result<Integer> {
    if config.is_empty() {
        return Ok(Integer::one());
    }
    let packed = PackedPaths::build(config, cap)?;
    let words = packed.masks[0].first().map_or(0, Vec::len);
    let total: u64 = packed.masks[0]
        .par_iter()
        .map(|first| {
            let mut occupied = first.clone();
            if words == 0 {
                return 0;
            }
            packed.count_from(1, &mut occupied)
        })
        .sum();
    Ok(Integer::from(total))
}

/// All vertex-disjoint families in lexicographic order (by path index, then
/// by each path's step string). Refuses when more than `cap` families exist.
pub fn enumerate_families(
    config: &PathSystemConfig,
    cap: EnumerationCap,
) -> Result<Vec<Vec<LatticePath>>> {
    if config.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let packed = PackedPaths::build(config, cap)?;
    let words = packed.masks[0].first().map_or(0, Vec::len);
    let limit = usize::try_from(cap.0).unwrap_or(usize::MAX);
    let mut picks = Vec::new();
    packed.collect_from(0, &mut vec![0; words], &mut Vec::new(), &mut picks, limit);
    if picks.len() > limit {
        return Err(Error::CapExceeded {
            count: format!("more than {limit}"),
            cap: cap.0,
        });
    }
    Ok(picks
        .into_iter()
        .map(|idx| {
            idx.iter()
                .enumerate()
                .map(|(level, &i)| packed.paths[level][i].clone())
                .collect()
        })
        .collect())
}

/// The single-pair count matrix, `entry(i, j) = P(starts[j] -> ends[i])`.
pub fn path_count_matrix(config: &PathSystemConfig) -> Result<ExactMatrix> {
    let n = config.len();
    ExactMatrix::from_fn(n, Provenance::PathCounts { n }, |i, j| {
        Ok(crate::arith::rat_int(count_paths(
            config.starts[j],
            config.ends[i],
            config.constraint,
        )))
    })
}

/// Determinant of [`path_count_matrix`]; equals the family count whenever
/// every path from `A_i` to `E_l` meets every path from `A_j` to `E_k` for
/// `i < j`, `k < l`.
pub fn lgv_determinant(config: &PathSystemConfig) -> Result<Integer> {
    if config.is_empty() {
        return Ok(Integer::one());
    }
    det_fraction_free(&path_count_matrix(config)?)
}

fn slope(k: u32) -> Result<SlopeConstraint> {
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    SlopeConstraint::new(k - 1)
}

fn check_beta(k: u32, beta: u32) -> Result<()> {
    if beta > k.saturating_sub(1) {
        return Err(Error::domain(format!(
            "beta must satisfy 0 <= beta <= k-1, got beta = {beta}, k = {k}"
        )));
    }
    Ok(())
}

/// Paths from `(-(k-1) alpha_i, -alpha_i)` to `(i + beta, floor((i + beta)/(k-1)))`
/// below `x = (k-1) y`; the count matrix is the transpose of the
/// generalised Catalan row-shift matrix. Any `beta >= 0` gives a valid
/// system, although the closed form needs `beta <= k-1`.
pub fn row_shift_config(alphas: &AlphaVector, k: u32, beta: u32) -> Result<PathSystemConfig> {
    let constraint = slope(k)?;
    let step = i64::from(k) - 1;
    let starts = alphas
        .as_slice()
        .iter()
        .map(|&a| LatticePoint::new(-step * a as i64, -(a as i64)))
        .collect();
    let ends = (0..alphas.len() as i64)
        .map(|i| {
            let x = i + i64::from(beta);
            LatticePoint::new(x, floor_div(x, step))
        })
        .collect();
    Ok(
        PathSystemConfig::new(starts, ends, Some(constraint))?.with_origin(
            ConfigOrigin::RowShift {
                alphas: alphas.clone(),
                k,
                beta,
            },
        ),
    )
}

/// Drops the final vertical steps every path of a row-shift system is forced
/// to take above the first end point: end `i` moves down to
/// `(i + beta, floor(beta / (k-1)))`. The family count is unchanged.
pub fn reduce_forced(config: &PathSystemConfig) -> Result<PathSystemConfig> {
    let ConfigOrigin::RowShift { alphas, k, beta } = &config.origin else {
        return Err(Error::domain(
            "forced-step reduction applies to row-shift systems only",
        ));
    };
    let (k, beta) = (*k, *beta);
    let height = floor_div(i64::from(beta), i64::from(k) - 1);
    let ends = (0..config.len() as i64)
        .map(|i| LatticePoint::new(i + i64::from(beta), height))
        .collect();
    Ok(
        PathSystemConfig::new(config.starts.clone(), ends, config.constraint)?.with_origin(
            ConfigOrigin::RowShiftReduced {
                alphas: alphas.clone(),
                k,
                beta,
            },
        ),
    )
}

/// Unconstrained paths from `(a, b - i)` to `(alpha_i, c)`.
pub fn path_family_config(a: i64, b: i64, c: i64, alphas: &[i64]) -> Result<PathSystemConfig> {
    let starts = (0..alphas.len() as i64)
        .map(|i| LatticePoint::new(a, b - i))
        .collect();
    let ends = alphas.iter().map(|&x| LatticePoint::new(x, c)).collect();
    Ok(
        PathSystemConfig::new(starts, ends, None)?.with_origin(ConfigOrigin::PathFamilies {
            a,
            b,
            c,
            alphas: alphas.to_vec(),
        }),
    )
}

fn check_adjacent(n: u32, s: u32, k: u32, beta: u32) -> Result<()> {
    slope(k)?;
    check_beta(k, beta)?;
    if s > n {
        return Err(Error::domain(format!(
            "need 0 <= s <= n, got s = {s}, n = {n}"
        )));
    }
    Ok(())
}

/// The system behind the `s`-th summand of the adjacent-index expansion:
/// path `i` from `(-(k-1) i, -i)` to `(m_i, floor(m_i/(k-1)))` with
/// `m_i = i + [i >= s] + beta`, below `x = (k-1) y`.
pub fn adjacent_config(n: u32, s: u32, k: u32, beta: u32) -> Result<PathSystemConfig> {
    check_adjacent(n, s, k, beta)?;
    let step = i64::from(k) - 1;
    let starts = (0..i64::from(n))
        .map(|i| LatticePoint::new(-step * i, -i))
        .collect();
    let ends = (0..i64::from(n))
        .map(|i| {
            let m = i + i64::from(i >= i64::from(s)) + i64::from(beta);
            LatticePoint::new(m, floor_div(m, step))
        })
        .collect();
    Ok(
        PathSystemConfig::new(starts, ends, Some(slope(k)?))?.with_origin(ConfigOrigin::Adjacent {
            n,
            s,
            k,
            beta,
        }),
    )
}

/// What remains of [`adjacent_config`] once the forced portions and the
/// boundary are removed: paths `i = s..n-1` from `(s + beta, -i)` to
/// `(i + beta + 1, floor((s + beta)/(k-1)))`, unconstrained.
pub fn adjacent_reduced_config(n: u32, s: u32, k: u32, beta: u32) -> Result<PathSystemConfig> {
    check_adjacent(n, s, k, beta)?;
    let (s_, b) = (i64::from(s), i64::from(beta));
    let height = floor_div(s_ + b, i64::from(k) - 1);
    let starts = (s_..i64::from(n))
        .map(|i| LatticePoint::new(s_ + b, -i))
        .collect();
    let ends = (s_..i64::from(n))
        .map(|i| LatticePoint::new(i + b + 1, height))
        .collect();
    Ok(
        PathSystemConfig::new(starts, ends, None)?.with_origin(ConfigOrigin::AdjacentReduced {
            n,
            s,
            k,
            beta,
        }),
    )
}

/// Parses `x,y;x,y;...` into points.
pub fn parse_points(text: &str) -> Result<Vec<LatticePoint>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut column = 1;
    let mut out = Vec::new();
    for part in text.split(';') {
        let bad = || {
            Error::parse(
                1,
                column,
                format!("expected x,y but found {:?}", part.trim()),
            )
        };
        let (x, y) = part.split_once(',').ok_or_else(bad)?;
        let x = x.trim().parse::<i64>().map_err(|_| bad())?;
        let y = y.trim().parse::<i64>().map_err(|_| bad())?;
        // keep coordinates small enough that grid arithmetic cannot overflow
        const LIMIT: i64 = 1 << 31;
        if x.abs() > LIMIT || y.abs() > LIMIT {
            return Err(Error::parse(1, column, "coordinate out of range"));
        }
        out.push(LatticePoint::new(x, y));
        column += part.chars().count() + 1;
    }
    Ok(out)
}
