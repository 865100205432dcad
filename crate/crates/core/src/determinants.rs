//! Exact determinant engines.
//!
//! Four independent routes: cofactor expansion (small orders only),
//! single-step fraction-free elimination over the integers, Gaussian
//! elimination over the rationals, and condensation on connected minors.
//! They must agree to the last bit; the test suite checks that they do.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::matrices::ExactMatrix;

/// Largest order accepted by [`det_laplace`].
pub const LAPLACE_MAX_ORDER: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Laplace,
    FractionFree,
    Rational,
    Condensation,
}

impl Engine {
    pub const ALL: [Engine; 4] = [
        Engine::Laplace,
        Engine::FractionFree,
        Engine::Rational,
        Engine::Condensation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Laplace => "laplace",
            Engine::FractionFree => "fraction-free",
            Engine::Rational => "rational",
            Engine::Condensation => "condensation",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown engine {s:?}")))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DetStats {
    /// Row interchanges performed while searching for a nonzero pivot.
    pub row_swaps: usize,
    /// Condensation steps that hit a zero interior minor and were recomputed
    /// by rational elimination.
    pub fallbacks: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetResult {
    pub value: Rational,
    pub engine: Engine,
    pub stats: DetStats,
}

/// Cofactor expansion along the first row. Refuses orders above
/// [`LAPLACE_MAX_ORDER`].
pub fn det_laplace(m: &ExactMatrix) -> Result<Rational> {
    let n = m.order();
    if n > LAPLACE_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: LAPLACE_MAX_ORDER,
        });
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(expand(m, 0, &cols))
}

fn expand(m: &ExactMatrix, row: usize, cols: &[usize]) -> Rational {
    if cols.is_empty() {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = entry * expand(m, row + 1, &rest);
        if pos % 2 == 0 {
            total += minor;
        } else {
            total -= minor;
        }
    }
    total
}

/// Fraction-free elimination on an integer matrix. Every division is exact.
pub fn det_fraction_free(m: &ExactMatrix) -> Result<Integer> {
    fraction_free(m).map(|(v, _)| v)
}

fn fraction_free(m: &ExactMatrix) -> Result<(Integer, usize)> {
    let mut a = m
        .integer_rows()
        .ok_or_else(|| Error::Contract("fraction-free elimination needs integer entries".into()))?;
    let n = a.len();
    let mut negate = false;
    let mut swaps = 0;
    let mut prev = Integer::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                    swaps += 1;
                }
                None => return Ok((Integer::zero(), swaps)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact fraction-free division");
                a[i][j] = q;
            }
            a[i][k] = Integer::zero();
        }
        prev = a[k][k].clone();
    }
    let last = a[n - 1][n - 1].clone();
    Ok((if negate { -last } else { last }, swaps))
}

/// Gaussian elimination over the rationals, pivoting on the first nonzero
/// entry of each column.
pub fn det_rational_elim(m: &ExactMatrix) -> Rational {
    rational_elim(m.rational_rows()).0
}

fn rational_elim(mut a: Vec<Vec<Rational>>) -> (Rational, usize) {
    let n = a.len();
    let mut value = Rational::one();
    let mut swaps = 0;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return (Rational::zero(), swaps);
        };
        if p != k {
            a.swap(k, p);
            value = -value;
            swaps += 1;
        }
        let pivot = a[k][k].clone();
        value *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k + 1..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
            a[i][k] = Rational::zero();
        }
    }
    (value, swaps)
}

/// Condensation: each step builds all connected minors of the next size
/// from the 2x2 minors of the current ones, divided by the interior minors
/// of the previous size. A zero interior minor makes that quotient
/// undefined; the affected minor is then computed directly by rational
/// elimination and counted as a fallback.
pub fn det_condensation(m: &ExactMatrix) -> (Rational, DetStats) {
    let n = m.order();
    let mut stats = DetStats::default();
    // minors of size s - 1 and s, starting with the sizes 0 and 1
    let mut prev: Vec<Vec<Rational>> = vec![vec![Rational::one(); n + 1]; n + 1];
    let mut cur: Vec<Vec<Rational>> = m.rational_rows();
    for size in 1..n {
        let dim = n - size;
        let mut next = vec![vec![Rational::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let interior = &prev[i + 1][j + 1];
                next[i][j] = if interior.is_zero() {
                    stats.fallbacks += 1;
                    let block = m.block(i, j, size + 1).expect("block within bounds");
                    let (v, swaps) = rational_elim(block.rational_rows());
                    stats.row_swaps += swaps;
                    v
                } else {
                    (&cur[i][j] * &cur[i + 1][j + 1] - &cur[i][j + 1] * &cur[i + 1][j]) / interior
                };
            }
        }
        prev = cur;
        cur = next;
    }
    (cur[0][0].clone(), stats)
}

/// Picks fraction-free elimination for integer matrices and rational
/// elimination otherwise.
pub fn default_engine(m: &ExactMatrix) -> Engine {
    if m.is_integral() {
        Engine::FractionFree
    } else {
        Engine::Rational
    }
}

pub fn det(m: &ExactMatrix) -> DetResult {
    det_with(m, default_engine(m)).expect("default engine accepts every matrix")
}

pub fn det_with(m: &ExactMatrix, engine: Engine) -> Result<DetResult> {
    let start = Instant::now();
    let mut stats = DetStats::default();
    let value = match engine {
        Engine::Laplace => det_laplace(m)?,
        Engine::FractionFree => {
            let (v, swaps) = fraction_free(m)?;
            stats.row_swaps = swaps;
            rat_int(v)
        }
        Engine::Rational => {
            let (v, swaps) = rational_elim(m.rational_rows());
            stats.row_swaps = swaps;
            v
        }
        Engine::Condensation => {
            let (v, s) = det_condensation(m);
            stats = s;
            v
        }
    };
    stats.elapsed = start.elapsed();
    Ok(DetResult {
        value,
        engine,
        stats,
    })
}
