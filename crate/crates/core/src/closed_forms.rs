//! Closed-form right-hand sides for every determinant family.
//!
//! Everything is evaluated over the rationals. Integrality is asserted only
//! where the value is known to be an integer.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    binomial_int, expect_integral, factorial, floor_div, pochhammer, rat, rat_int, sign_pow,
    Integer, Rational,
};
use crate::error::{Error, Result};
use crate::matrices::{AlphaVector, TernaryHankel};
use crate::sequences::fibonacci;

/// One determinant identity: a matrix family paired with its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedFormId {
    /// `det(C_{i+j}) = 1`.
    CatalanHankel,
    /// `det(C_{i+j+1}) = 1`.
    CatalanHankelShift1,
    /// `det(C_{i+j+2}) = n + 1`.
    CatalanHankelShift2,
    /// `det(C_{i+j} + C_{i+j+1}) = F_{2n}`.
    CatalanPairFibonacci,
    /// Row-pair determinant of generalised Catalan numbers with `alpha_i = i`,
    /// equal to `sum_s C((k-1)s + n, n - s)`.
    GenCatalanPairSum,
    /// Adjacent-index determinant at `beta = 0`, equal to
    /// `sum_s C(floor(s/(k-1)) + n, n - s)`.
    GenCatalanAdjacentSum,
    CatalanRowShift,
    CatalanRowPair,
    GenCatalanRowShift,
    BinomialRowShift,
    GenCatalanRowPair,
    GenCatalanAdjacent,
    PathFamilies,
    Ternary(TernaryHankel),
    ProductLemma,
}

impl ClosedFormId {
    pub fn all() -> Vec<ClosedFormId> {
        let mut ids = vec![
            ClosedFormId::CatalanHankel,
            ClosedFormId::CatalanHankelShift1,
            ClosedFormId::CatalanHankelShift2,
            ClosedFormId::CatalanPairFibonacci,
            ClosedFormId::GenCatalanPairSum,
            ClosedFormId::GenCatalanAdjacentSum,
            ClosedFormId::CatalanRowShift,
            ClosedFormId::CatalanRowPair,
            ClosedFormId::GenCatalanRowShift,
            ClosedFormId::BinomialRowShift,
            ClosedFormId::GenCatalanRowPair,
            ClosedFormId::GenCatalanAdjacent,
            ClosedFormId::PathFamilies,
        ];
        ids.extend(TernaryHankel::ALL.into_iter().map(ClosedFormId::Ternary));
        ids.push(ClosedFormId::ProductLemma);
        ids
    }

    pub fn name(&self) -> String {
        match self {
            ClosedFormId::CatalanHankel => "catalan-hankel".into(),
            ClosedFormId::CatalanHankelShift1 => "catalan-hankel-1".into(),
            ClosedFormId::CatalanHankelShift2 => "catalan-hankel-2".into(),
            ClosedFormId::CatalanPairFibonacci => "catalan-pair-fibonacci".into(),
            ClosedFormId::GenCatalanPairSum => "gen-catalan-pair-sum".into(),
            ClosedFormId::GenCatalanAdjacentSum => "gen-catalan-adjacent-sum".into(),
            ClosedFormId::CatalanRowShift => "catalan-row-shift".into(),
            ClosedFormId::CatalanRowPair => "catalan-row-pair".into(),
            ClosedFormId::GenCatalanRowShift => "gen-catalan-row-shift".into(),
            ClosedFormId::BinomialRowShift => "binomial-row-shift".into(),
            ClosedFormId::GenCatalanRowPair => "gen-catalan-row-pair".into(),
            ClosedFormId::GenCatalanAdjacent => "gen-catalan-adjacent".into(),
            ClosedFormId::PathFamilies => "path-families".into(),
            ClosedFormId::Ternary(v) => format!("ternary:{v}"),
            ClosedFormId::ProductLemma => "product-lemma".into(),
        }
    }
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ClosedFormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClosedFormId::all()
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown identity {s:?}")))
    }
}

fn fact(n: i64) -> Rational {
    rat_int(factorial(n).expect("nonnegative factorial argument"))
}

/// `prod_{i<j} (v_j - v_i)`.
fn vandermonde(values: &[i64]) -> Rational {
    let mut acc = Integer::one();
    for j in 0..values.len() {
        for i in 0..j {
            acc *= values[j] - values[i];
        }
    }
    rat_int(acc)
}

fn signed(alphas: &AlphaVector) -> Vec<i64> {
    alphas.as_slice().iter().map(|&a| a as i64).collect()
}

fn check_k_beta(k: u32, beta: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    if beta > k - 1 {
        return Err(Error::domain(format!(
            "beta must satisfy 0 <= beta <= k-1 = {}, got {beta}",
            k - 1
        )));
    }
    Ok(())
}

fn check_distinct(alphas: &AlphaVector) -> Result<()> {
    if alphas.has_repeat() {
        return Err(Error::domain(format!(
            "closed form is singular for repeated alphas {alphas}"
        )));
    }
    Ok(())
}

/// `det(C_{alpha_i + j})`:
/// `prod_{i<j} (alpha_j - alpha_i) * prod_i (i+n)! (2 alpha_i)! / ((2i)! alpha_i! (alpha_i+n)!)`.
pub fn rhs_catalan_row_shift(alphas: &AlphaVector) -> Rational {
    let a = signed(alphas);
    let n = a.len() as i64;
    let mut acc = vandermonde(&a);
    for (i, &ai) in a.iter().enumerate() {
        let i = i as i64;
        acc *= fact(i + n) * fact(2 * ai) / (fact(2 * i) * fact(ai) * fact(ai + n));
    }
    acc
}

/// Sign and power of two relating `det(C_{alpha_i + j})` to
/// `det(binom(1/2, alpha_i + j + 1))`, namely
/// `(-1)^(C(n,2) + sum alpha) * 2^(n^2 + 2 sum alpha)`.
pub fn half_binomial_rewrite_factor(alphas: &AlphaVector) -> Rational {
    let n = alphas.len() as i64;
    let total: i64 = signed(alphas).iter().sum();
    let exponent = (n * n + 2 * total) as u32;
    sign_pow(n * (n - 1) / 2 + total) * rat_int(Integer::from(2).pow(exponent))
}

/// Shared shape of the two row-pair closed forms: with per-row weights
/// `w(alpha)`, the value is
/// `V(alpha_0..alpha_n) * prod_{i<n} row(i) * prod_{i<=n} w(alpha_i) *
///  sum_s 1 / (w(alpha_s) prod_{j<s} (alpha_s - alpha_j) prod_{j>s} (alpha_j - alpha_s))`.
fn row_pair_form(
    alphas: &AlphaVector,
    row_factor: impl Fn(i64) -> Rational,
    weight: impl Fn(i64) -> Rational,
) -> Result<Rational> {
    check_distinct(alphas)?;
    let a = signed(alphas);
    let n = a.len() as i64 - 1;
    if n < 1 {
        return Err(Error::domain(
            "row-pair closed form needs at least two alphas",
        ));
    }
    let mut acc = vandermonde(&a);
    for i in 0..n {
        acc *= row_factor(i);
    }
    for &ai in &a {
        acc *= weight(ai);
    }
    let mut sum = Rational::zero();
    for (s, &as_) in a.iter().enumerate() {
        let mut denom = weight(as_);
        for &aj in &a[..s] {
            denom *= rat_int(as_ - aj);
        }
        for &aj in &a[s + 1..] {
            denom *= rat_int(aj - as_);
        }
        sum += Rational::one() / denom;
    }
    Ok(acc * sum)
}

/// `det(C_{alpha_i + j} + C_{alpha_{i+1} + j})` for distinct alphas.
pub fn rhs_catalan_row_pair(alphas: &AlphaVector) -> Result<Rational> {
    let n = alphas.len() as i64 - 1;
    row_pair_form(
        alphas,
        |i| fact(i + n) / fact(2 * i),
        |a| fact(2 * a) / (fact(a) * fact(a + n)),
    )
}

/// `det(C_{(k-1) alpha_i + j + beta, k})`.
pub fn rhs_gen_catalan_row_shift(alphas: &AlphaVector, k: u32, beta: u32) -> Result<Rational> {
    check_k_beta(k, beta)?;
    let a = signed(alphas);
    let n = a.len() as i64;
    let (k, b) = (i64::from(k), i64::from(beta));
    let mut acc = vandermonde(&a);
    for (i, &ai) in a.iter().enumerate() {
        let i = i as i64;
        acc *= fact((k - 1) * i + b + n) * fact(k * ai + b)
            / (fact(k * i + b) * fact(ai) * fact((k - 1) * ai + b + n));
    }
    Ok(acc)
}

/// `det(C(k alpha_i + j + beta, alpha_i - 1))`, for `alpha_i >= 1`. Holds
/// for every `beta >= 0`; no upper bound on `beta` is needed here.
pub fn rhs_binomial_row_shift(alphas: &AlphaVector, k: u32, beta: u32) -> Result<Rational> {
    if k < 1 {
        return Err(Error::domain("k must be positive"));
    }
    if alphas.as_slice().contains(&0) {
        return Err(Error::domain(
            "binomial row-shift closed form needs alpha_i >= 1",
        ));
    }
    let a = signed(alphas);
    let n = a.len() as i64;
    let (k, b) = (i64::from(k), i64::from(beta));
    let mut acc = fact(b) / fact(b + n) * vandermonde(&a);
    for (i, &ai) in a.iter().enumerate() {
        let i = i as i64;
        acc *= fact((k - 1) * i + b + n) * fact(k * ai + b)
            / (fact(k * i + b) * fact(ai - 1) * fact((k - 1) * ai + b + n));
    }
    Ok(acc)
}

/// `det(C_{(k-1) alpha_i + j + beta, k} + C_{(k-1) alpha_{i+1} + j + beta, k})`
/// for distinct alphas.
pub fn rhs_gen_catalan_row_pair(alphas: &AlphaVector, k: u32, beta: u32) -> Result<Rational> {
    check_k_beta(k, beta)?;
    let n = alphas.len() as i64 - 1;
    let (k, b) = (i64::from(k), i64::from(beta));
    row_pair_form(
        alphas,
        |i| fact((k - 1) * i + b + n) / fact(k * i + b),
        |a| fact(k * a + b) / (fact(a) * fact((k - 1) * a + b + n)),
    )
}

/// `det(C_{(k-1)i+j+beta,k} + C_{(k-1)i+j+beta+1,k}) =
///  sum_{s=0..n} C(floor((s+beta)/(k-1)) + n, n - s)`.
pub fn rhs_gen_catalan_adjacent(k: u32, beta: u32, n: u32) -> Result<Integer> {
    check_k_beta(k, beta)?;
    let (step, b, n) = (i64::from(k) - 1, i64::from(beta), i64::from(n));
    Ok((0..=n)
        .map(|s| binomial_int(floor_div(s + b, step) + n, n - s))
        .sum())
}

/// `sum_{s=0..n} C((k-1)s + n, n - s)`.
pub fn gen_catalan_pair_sum(k: u32, n: u32) -> Result<Integer> {
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    let (step, n) = (i64::from(k) - 1, i64::from(n));
    Ok((0..=n).map(|s| binomial_int(step * s + n, n - s)).sum())
}

/// `F_{2n}`.
pub fn catalan_pair_fibonacci(n: u32) -> Integer {
    fibonacci(2 * u64::from(n))
}

/// Hankel determinants of the Catalan numbers at offsets 0, 1 and 2.
pub fn catalan_hankel_value(offset: u32, n: u32) -> Result<Integer> {
    match offset {
        0 | 1 => Ok(Integer::one()),
        2 => Ok(Integer::from(n) + 1),
        _ => Err(Error::domain(format!(
            "no dedicated closed form for offset {offset}; use the row-shift identity"
        ))),
    }
}

/// Number of vertex-disjoint path families, path `i` running from
/// `(a, b - i)` to `(alpha_i, c)`:
/// `prod_{i<j} (alpha_j - alpha_i) * prod_i (alpha_i + c - a - b)! / ((alpha_i - a)! (c - b + i)!)`.
pub fn rhs_path_families(a: i64, b: i64, c: i64, alphas: &[i64]) -> Result<Rational> {
    if alphas.is_empty() {
        return Err(Error::domain("need at least one path"));
    }
    if b > c {
        return Err(Error::domain(format!("need b <= c, got b = {b}, c = {c}")));
    }
    if alphas[0] < a || alphas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::domain("need a <= alpha_0 <= alpha_1 <= ..."));
    }
    let mut acc = vandermonde(alphas);
    for (i, &ai) in alphas.iter().enumerate() {
        acc *= fact(ai + c - a - b) / (fact(ai - a) * fact(c - b + i as i64));
    }
    Ok(acc)
}

/// Parameters of a product
/// `prod_{i=0}^{n-1+extra} lead * (u1)_i (u2)_i (u3)_i (u4)_i / ((l1)_{2i} (l2)_{2i}) * (27/4)^{2i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PochhammerProduct {
    pub lead: Rational,
    pub upper: [Rational; 4],
    pub lower: [Rational; 2],
    /// 0 when the product stops at `n - 1`, 1 when it stops at `n`.
    pub extra: u32,
}

impl PochhammerProduct {
    fn new(lead: (i64, i64), upper: [(i64, i64); 4], lower: [(i64, i64); 2], extra: u32) -> Self {
        PochhammerProduct {
            lead: rat(lead.0, lead.1),
            upper: upper.map(|(p, q)| rat(p, q)),
            lower: lower.map(|(p, q)| rat(p, q)),
            extra,
        }
    }

    pub fn evaluate(&self, n: u32) -> Rational {
        let base = rat(27, 4);
        let mut acc = Rational::one();
        for i in 0..u64::from(n + self.extra) {
            let mut term = self.lead.clone();
            for u in &self.upper {
                term *= pochhammer(u, i);
            }
            for l in &self.lower {
                term /= pochhammer(l, 2 * i);
            }
            term *= num_traits::pow(base.clone(), 2 * i as usize);
            acc *= term;
        }
        acc
    }
}

const THIRDS_A: [(i64, i64); 4] = [(2, 3), (1, 6), (4, 3), (5, 6)];
const THIRDS_B: [(i64, i64); 4] = [(4, 3), (5, 6), (5, 3), (7, 6)];
const HALVES_A: [(i64, i64); 2] = [(1, 2), (3, 2)];
const HALVES_B: [(i64, i64); 2] = [(3, 2), (5, 2)];

/// The product whose value equals the ternary Hankel determinant of order `n`.
pub fn ternary_product(variant: TernaryHankel) -> PochhammerProduct {
    use TernaryHankel::*;
    match variant {
        Frac110 => PochhammerProduct::new((1, 1), THIRDS_A, HALVES_A, 0),
        Frac141 | Frac121 => PochhammerProduct::new((1, 1), THIRDS_B, HALVES_B, 0),
        // The entries 2/(3m+5) C(3m+5, m+1) coincide with 1/(3m+5) C(3m+5, m+2).
        Frac152 | Frac211 | Frac251 => PochhammerProduct::new((1, 1), THIRDS_A, HALVES_A, 1),
        Frac242 => PochhammerProduct::new((1, 1), THIRDS_B, HALVES_B, 1),
        ShiftedA => PochhammerProduct::new((-2, 1), [(1, 3), (-1, 6), (5, 3), (7, 6)], HALVES_A, 0),
        ShiftedB => PochhammerProduct::new((10, 1), [(2, 3), (1, 6), (7, 3), (11, 6)], HALVES_B, 0),
        ShiftedC => PochhammerProduct::new(
            (7, 2),
            [(5, 6), (4, 3), (13, 6), (8, 3)],
            [(5, 2), (7, 2)],
            0,
        ),
    }
}

/// The product as it is commonly typeset in the literature. For
/// [`TernaryHankel::Frac251`] and [`TernaryHankel::ShiftedC`] that form does
/// not equal the determinant (both give 3 at `n = 1`, against 2 and 7/2);
/// [`ternary_product`] holds the verified replacement.
pub fn ternary_product_as_typeset(variant: TernaryHankel) -> PochhammerProduct {
    match variant {
        TernaryHankel::Frac251 | TernaryHankel::ShiftedC => {
            PochhammerProduct::new((1, 1), THIRDS_B, HALVES_B, 1)
        }
        other => ternary_product(other),
    }
}

pub fn rhs_ternary(variant: TernaryHankel, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("ternary Hankel closed form needs n >= 1"));
    }
    Ok(ternary_product(variant).evaluate(n))
}

/// `prod_{i<j} (X_i - X_j) * prod_{1 <= i <= j <= n-1} (B_i - A_j)`, with
/// `a[t-1] = A_t` and `b[t-1] = B_t`.
pub fn rhs_product_lemma(x: &[Rational], a: &[Rational], b: &[Rational]) -> Result<Rational> {
    let n = x.len();
    if n == 0 || a.len() + 1 != n || b.len() + 1 != n {
        return Err(Error::domain(
            "product lemma needs |X| = n >= 1 and |A| = |B| = n - 1",
        ));
    }
    let mut acc = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            acc *= &x[i] - &x[j];
        }
    }
    for i in 1..n {
        for j in i..n {
            acc *= &b[i - 1] - &a[j - 1];
        }
    }
    Ok(acc)
}

/// Integer-valued families assert integrality of their closed form.
pub fn integral(value: Rational, what: &str) -> Result<Integer> {
    expect_integral(&value, what)
}
