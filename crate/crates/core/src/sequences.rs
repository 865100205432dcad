//! The number sequences the determinant families are built from.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_int, expect_integral, floor_div, rat, rat_int, Integer, Rational};
use crate::error::{Error, Result};

/// Which of the ternary sequences with a replaced zeroth term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShiftedTernary {
    /// `a_0 = -2`, `a_m = C(3m+1, m) / (3m+1)`.
    A,
    /// `b_0 = 10`, `b_m = 2 C(3m+2, m) / (3m+2)`.
    B,
    /// `c_0 = 7/2`, `c_m = 2 C(3m+1, m+1) / (3m+1)`.
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SequenceSpec {
    Catalan,
    GenCatalan(u32),
    Fibonacci,
    Ternary(ShiftedTernary),
}

impl SequenceSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SequenceSpec::GenCatalan(k) => check_k(k),
            _ => Ok(()),
        }
    }

    pub fn term(&self, m: u64) -> Result<Rational> {
        Ok(match *self {
            SequenceSpec::Catalan => rat_int(catalan(m)),
            SequenceSpec::GenCatalan(k) => rat_int(gen_catalan(m, k)?),
            SequenceSpec::Fibonacci => rat_int(fibonacci(m)),
            SequenceSpec::Ternary(v) => shifted_ternary(v, m),
        })
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::Catalan => write!(f, "catalan"),
            SequenceSpec::GenCatalan(k) => write!(f, "gen-catalan(k={k})"),
            SequenceSpec::Fibonacci => write!(f, "fibonacci"),
            SequenceSpec::Ternary(v) => write!(f, "ternary-{}", format!("{v:?}").to_lowercase()),
        }
    }
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::domain(format!(
            "generalised Catalan numbers need k >= 2, got k = {k}"
        )));
    }
    Ok(())
}

type Cache = Mutex<HashMap<(u64, u32), Integer>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn memoized(m: u64, k: u32, compute: impl FnOnce() -> Integer) -> Integer {
    if let Some(v) = cache()
        .lock()
        .expect("sequence cache poisoned")
        .get(&(m, k))
    {
        return v.clone();
    }
    let v = compute();
    cache()
        .lock()
        .expect("sequence cache poisoned")
        .insert((m, k), v.clone());
    v
}

/// `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Integer {
    memoized(n, 0, || {
        let n = n as i64;
        binomial_int(2 * n, n) / (n + 1)
    })
}

/// The generalised Catalan number `C_{n,k}`: with `q = floor(n / (k-1))`,
/// `(n - (k-1) q + 1) / (n + q + 1) * C(n + q + 1, n + 1)`.
///
/// It counts monotone paths from the origin to `(n, q)` staying weakly below
/// the line `x = (k-1) y`.
pub fn gen_catalan(n: u64, k: u32) -> Result<Integer> {
    check_k(k)?;
    Ok(memoized(n, k, || {
        let n = n as i64;
        let step = k as i64 - 1;
        let q = floor_div(n, step);
        let value = rat(n - step * q + 1, n + q + 1) * rat_int(binomial_int(n + q + 1, n + 1));
        expect_integral(&value, "generalised Catalan number").expect("C_{n,k} is an integer")
    }))
}

/// Fibonacci numbers with `F_0 = F_1 = 1`.
pub fn fibonacci(m: u64) -> Integer {
    let (mut a, mut b) = (Integer::one(), Integer::one());
    for _ in 0..m {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

pub fn shifted_ternary(variant: ShiftedTernary, m: u64) -> Rational {
    let m = m as i64;
    match (variant, m) {
        (ShiftedTernary::A, 0) => rat(-2, 1),
        (ShiftedTernary::B, 0) => rat(10, 1),
        (ShiftedTernary::C, 0) => rat(7, 2),
        (ShiftedTernary::A, _) => ternary(1, 1, 0, m),
        (ShiftedTernary::B, _) => ternary(2, 2, 0, m),
        (ShiftedTernary::C, _) => ternary(2, 1, 1, m),
    }
}

/// `scale / (3m + shift) * C(3m + shift, m + lower)`.
pub fn ternary(scale: i64, shift: i64, lower: i64, m: i64) -> Rational {
    rat(scale, 3 * m + shift) * rat_int(binomial_int(3 * m + shift, m + lower))
}
