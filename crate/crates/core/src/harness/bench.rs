use std::time::{Duration, Instant};

use crate::arith::{rat, Rational};
use crate::closed_forms::ClosedFormId;
use crate::determinants::{det_with, Engine, LAPLACE_MAX_ORDER};
use crate::error::{Error, Result};
use crate::matrices::ExactMatrix;

use super::{entry, Lhs, Params, Shape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: u32,
    pub engine: Engine,
    pub value: Rational,
    /// `None` when the engine cannot handle this matrix.
    pub median: Option<Duration>,
}

/// A fixed representative of a matrix family at order `n`.
fn representative(id: ClosedFormId, n: u32) -> Result<Params> {
    let spaced = |start: i64, len: u32| {
        (0..i64::from(len))
            .map(|i| start + 2 * i)
            .collect::<Vec<_>>()
    };
    let p = match entry(id).shape {
        Shape::Order => Params::order(n),
        Shape::OrderK => Params::order(n).with_k(3),
        Shape::OrderKBeta => Params::order(n).with_k(3).with_beta(1),
        Shape::Alphas { pair } => Params::default().with_alpha(spaced(0, n + u32::from(pair))),
        Shape::AlphasKBeta { pair, .. } => Params::default()
            .with_alpha(spaced(1, n + u32::from(pair)))
            .with_k(3)
            .with_beta(1),
        Shape::Product => {
            let n = i64::from(n);
            Params {
                x: Some((0..n).map(|i| rat(2 * i + 1, 2)).collect()),
                upper: Some((1..n).map(|t| rat(t, 3)).collect()),
                lower: Some((1..n).map(|t| rat(-t, 5)).collect()),
                ..Params::default()
            }
        }
        Shape::Families => {
            return Err(Error::domain(format!(
                "{id} is counted by enumeration, not a determinant"
            )));
        }
    };
    Ok(p)
}

fn build(id: ClosedFormId, n: u32) -> Result<ExactMatrix> {
    let e = entry(id);
    let p = representative(id, n)?;
    e.validate(&p)?;
    match e.lhs(&p)? {
        Lhs::Matrix(m) => Ok(m),
        Lhs::Families(_) => unreachable!("families are rejected above"),
    }
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

/// Times each engine on the family's representative matrix for every order
/// in `n_min..=n_max`. All engines' values are compared before any timing
/// is taken; timings are medians of at least five runs after one warm-up.
pub fn bench(
    id: ClosedFormId,
    n_min: u32,
    n_max: u32,
    engines: &[Engine],
    reps: usize,
) -> Result<Vec<BenchRow>> {
    if engines.is_empty() {
        return Err(Error::domain("no engines selected"));
    }
    let reps = reps.max(5);
    let mut rows = Vec::new();
    for n in n_min.max(1)..=n_max {
        let m = build(id, n)?;
        let usable = |e: Engine| match e {
            Engine::Laplace => m.order() <= LAPLACE_MAX_ORDER,
            Engine::FractionFree => m.is_integral(),
            _ => true,
        };
        let mut values = Vec::new();
        for &e in engines.iter().filter(|&&e| usable(e)) {
            values.push((e, det_with(&m, e)?.value));
        }
        if let Some((first, v)) = values.first() {
            if let Some((other, w)) = values.iter().find(|(_, w)| w != v) {
                return Err(Error::Contract(format!(
                    "{first} gives {v} but {other} gives {w} at n = {n}"
                )));
            }
        }
        let value = values.first().map(|(_, v)| v.clone()).unwrap_or_default();
        for &e in engines {
            let median = if usable(e) {
                det_with(&m, e)?;
                let samples = (0..reps)
                    .map(|_| {
                        let t = Instant::now();
                        det_with(&m, e).map(|_| t.elapsed())
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(median(samples))
            } else {
                None
            };
            rows.push(BenchRow {
                n,
                engine: e,
                value: value.clone(),
                median,
            });
        }
    }
    Ok(rows)
}
