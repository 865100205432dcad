use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{rat, Rational};
use crate::closed_forms::ClosedFormId;
use crate::determinants::Engine;
use crate::error::{Error, Result};

use super::{entry, run_case, IdentityCase, Params, Shape, VerificationReport};

/// Ranges for a verification sweep. Empty `k` means `{2, 3, 4}`; `beta: None`
/// means every valid `beta` for each `k`. A fixed `alpha` replaces sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub n_min: u32,
    pub n_max: u32,
    pub k: Vec<u32>,
    pub beta: Option<Vec<u32>>,
    pub alpha: Option<Vec<i64>>,
    /// Random instances per grid point for sampled families.
    pub samples: usize,
    /// Largest sampled alpha entry.
    pub alpha_max: i64,
    pub seed: u64,
    pub engine: Option<Engine>,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n_min: 1,
            n_max: 6,
            k: Vec::new(),
            beta: None,
            alpha: None,
            samples: 25,
            alpha_max: 12,
            seed: 20_250_101,
            engine: None,
        }
    }
}

impl GridSpec {
    fn ks(&self) -> Vec<u32> {
        if self.k.is_empty() {
            vec![2, 3, 4]
        } else {
            self.k.clone()
        }
    }

    fn betas(&self, k: u32) -> Vec<u32> {
        match &self.beta {
            Some(b) => b.clone(),
            None => (0..k.max(1)).collect(),
        }
    }
}

/// Strictly increasing vector of `len` values from `lo..=hi`.
fn increasing(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Result<Vec<i64>> {
    let span = (hi - lo + 1).max(0) as usize;
    if len > span {
        return Err(Error::domain(format!(
            "cannot draw {len} distinct values from {lo}..={hi}"
        )));
    }
    let mut picked: Vec<i64> = sample(rng, span, len)
        .into_iter()
        .map(|i| lo + i as i64)
        .collect();
    picked.sort_unstable();
    Ok(picked)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

/// The cases of a sweep, in a fixed order determined by the spec alone.
pub fn expand_grid(id: ClosedFormId, spec: &GridSpec) -> Result<Vec<IdentityCase>> {
    if spec.n_min > spec.n_max {
        return Err(Error::domain(format!(
            "empty range n = {}..={}",
            spec.n_min, spec.n_max
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::new();
    let mut push = |p: Params| out.push(IdentityCase::new(id, p).with_engine(spec.engine));
    let ns = spec.n_min..=spec.n_max;
    match entry(id).shape {
        Shape::Order => ns.for_each(|n| push(Params::order(n))),
        Shape::OrderK => {
            for n in ns {
                for k in spec.ks() {
                    push(Params::order(n).with_k(k));
                }
            }
        }
        Shape::OrderKBeta => {
            for n in ns {
                for k in spec.ks() {
                    for beta in spec.betas(k) {
                        push(Params::order(n).with_k(k).with_beta(beta));
                    }
                }
            }
        }
        Shape::Alphas { pair } => match &spec.alpha {
            Some(alpha) => push(Params::default().with_alpha(alpha.clone())),
            None => {
                for n in ns {
                    for _ in 0..spec.samples {
                        let len = n as usize + usize::from(pair);
                        push(Params::default().with_alpha(increasing(
                            &mut rng,
                            len,
                            0,
                            spec.alpha_max,
                        )?));
                    }
                }
            }
        },
        Shape::AlphasKBeta { pair, binomial } => {
            let lo = i64::from(binomial);
            let fixed = spec.alpha.clone();
            let ns: Vec<u32> = if fixed.is_some() {
                vec![0]
            } else {
                ns.collect()
            };
            for n in ns {
                for k in spec.ks() {
                    for beta in spec.betas(k) {
                        let base = Params::default().with_k(k).with_beta(beta);
                        match &fixed {
                            Some(alpha) => push(base.with_alpha(alpha.clone())),
                            None => {
                                for _ in 0..spec.samples {
                                    let len = n as usize + usize::from(pair);
                                    push(base.clone().with_alpha(increasing(
                                        &mut rng,
                                        len,
                                        lo,
                                        spec.alpha_max,
                                    )?));
                                }
                            }
                        }
                    }
                }
            }
        }
        Shape::Families => {
            for n in ns {
                for _ in 0..spec.samples {
                    let c = rng.gen_range(0..=4);
                    let alpha = increasing(&mut rng, n as usize, 0, 5.max(i64::from(n)))?;
                    push(Params {
                        a: Some(0),
                        b: Some(0),
                        c: Some(c),
                        ..Params::default().with_alpha(alpha)
                    });
                }
            }
        }
        Shape::Product => {
            for n in ns {
                for _ in 0..spec.samples {
                    let n = n as usize;
                    let x = (0..n).map(|_| small_rational(&mut rng)).collect();
                    let upper = (1..n).map(|_| small_rational(&mut rng)).collect();
                    let lower = (1..n).map(|_| small_rational(&mut rng)).collect();
                    push(Params {
                        x: Some(x),
                        upper: Some(upper),
                        lower: Some(lower),
                        ..Params::default()
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Runs every case of the sweep concurrently; the output keeps the order of
/// [`expand_grid`].
pub fn run_grid(id: ClosedFormId, spec: &GridSpec) -> Result<Vec<VerificationReport>> {
    let cases = expand_grid(id, spec)?;
    Ok(cases.par_iter().map(run_case).collect())
}
