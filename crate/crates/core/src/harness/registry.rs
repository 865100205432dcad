//! One row per identity: what the determinant side is, how to compute the
//! closed form, and which parameters it takes.

use crate::arith::{rat_int, Rational};
use crate::closed_forms::*;
use crate::error::{Error, Result};
use crate::lgv::{path_family_config, PathSystemConfig};
use crate::matrices::*;
use crate::sequences::SequenceSpec;

use super::Params;

/// The left-hand side of an identity before it is evaluated.
#[derive(Debug, Clone)]
pub enum Lhs {
    Matrix(ExactMatrix),
    /// Counted by brute-force family enumeration.
    Families(PathSystemConfig),
}

/// The parameters an identity takes, which also drives validation and grid
/// expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Only `n`.
    Order,
    /// `n` and `k >= 2`.
    OrderK,
    /// `n`, `k >= 2` and `0 <= beta <= k-1`.
    OrderKBeta,
    /// An alpha vector of length `n`, or `n + 1` when `pair` is set.
    Alphas { pair: bool },
    /// Alpha vector with `k` and `beta`. The binomial family allows `k >= 1`,
    /// any `beta`, and needs `alpha_i >= 1`.
    AlphasKBeta { pair: bool, binomial: bool },
    /// Corner `(a, b)`, height `c` and end abscissae `alpha`.
    Families,
    /// Rational vectors `x`, `upper`, `lower`.
    Product,
}

type LhsFn = fn(ClosedFormId, &Params) -> Result<Lhs>;
type RhsFn = fn(ClosedFormId, &Params) -> Result<Rational>;

#[derive(Clone, Copy)]
pub struct IdentityEntry {
    pub id: ClosedFormId,
    pub shape: Shape,
    pub statement: &'static str,
    lhs: LhsFn,
    rhs: RhsFn,
}

impl std::fmt::Debug for IdentityEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityEntry")
            .field("id", &self.id)
            .field("shape", &self.shape)
            .finish()
    }
}

impl IdentityEntry {
    pub fn validate(&self, p: &Params) -> Result<()> {
        validate(self.shape, p)
    }

    pub fn lhs(&self, p: &Params) -> Result<Lhs> {
        (self.lhs)(self.id, p)
    }

    pub fn rhs(&self, p: &Params) -> Result<Rational> {
        (self.rhs)(self.id, p)
    }
}

pub fn entry(id: ClosedFormId) -> IdentityEntry {
    use ClosedFormId::*;
    use Shape::*;
    let (shape, statement, lhs, rhs): (Shape, &'static str, LhsFn, RhsFn) = match id {
        CatalanHankel => (Order, "det(C_{i+j}) = 1", hankel, hankel_rhs),
        CatalanHankelShift1 => (Order, "det(C_{i+j+1}) = 1", hankel, hankel_rhs),
        CatalanHankelShift2 => (Order, "det(C_{i+j+2}) = n+1", hankel, hankel_rhs),
        CatalanPairFibonacci => (Order, "det(C_{i+j} + C_{i+j+1}) = F_{2n}", fib_lhs, fib_rhs),
        GenCatalanPairSum => (OrderK, "det(C_{(k-1)i+j,k} + C_{(k-1)(i+1)+j,k}) = sum_s C((k-1)s+n, n-s)", pair_sum_lhs, pair_sum_rhs),
        GenCatalanAdjacentSum => (OrderK, "det(C_{(k-1)i+j,k} + C_{(k-1)i+j+1,k}) = sum_s C(floor(s/(k-1))+n, n-s)", adjacent_lhs, adjacent_rhs),
        CatalanRowShift => (Alphas { pair: false }, "det(C_{alpha_i+j}) = Vandermonde product", row_shift_lhs, row_shift_rhs),
        CatalanRowPair => (Alphas { pair: true }, "det(C_{alpha_i+j} + C_{alpha_{i+1}+j}) = product times sum", row_pair_lhs, row_pair_rhs),
        GenCatalanRowShift => (AlphasKBeta { pair: false, binomial: false }, "det(C_{(k-1)alpha_i+j+beta,k}) = Vandermonde product", gen_shift_lhs, gen_shift_rhs),
        BinomialRowShift => (AlphasKBeta { pair: false, binomial: true }, "det(C(k alpha_i+j+beta, alpha_i-1)) = product", binom_lhs, binom_rhs),
        GenCatalanRowPair => (AlphasKBeta { pair: true, binomial: false }, "det(C_{(k-1)alpha_i+j+beta,k} + C_{(k-1)alpha_{i+1}+j+beta,k}) = product times sum", gen_pair_lhs, gen_pair_rhs),
        GenCatalanAdjacent => (OrderKBeta, "det(C_{(k-1)i+j+beta,k} + C_{(k-1)i+j+beta+1,k}) = sum_s C(floor((s+beta)/(k-1))+n, n-s)", adjacent_lhs, adjacent_rhs),
        PathFamilies => (Families, "#families (a,b-i) -> (alpha_i,c) = Vandermonde product", families_lhs, families_rhs),
        Ternary(_) => (Order, "Hankel determinant of a ternary sequence = Pochhammer product", ternary_lhs, ternary_rhs),
        ProductLemma => (Product, "det(prod (X_i+A_t) prod (X_i+B_t)) = prod (X_i-X_j) prod (B_i-A_j)", product_lhs, product_rhs),
    };
    IdentityEntry {
        id,
        shape,
        statement,
        lhs,
        rhs,
    }
}

pub fn registry() -> Vec<IdentityEntry> {
    ClosedFormId::all().into_iter().map(entry).collect()
}

fn validate(shape: Shape, p: &Params) -> Result<()> {
    let k_at_least = |min: u32| -> Result<u32> {
        let k = p.need_k()?;
        if k < min {
            return Err(Error::domain(format!("k must be at least {min}, got {k}")));
        }
        Ok(k)
    };
    let beta_in_range = |k: u32| -> Result<()> {
        let beta = p.beta_or_zero();
        if beta > k - 1 {
            return Err(Error::domain(format!(
                "beta must satisfy 0 <= beta <= k-1 = {}, got {beta}",
                k - 1
            )));
        }
        Ok(())
    };
    let alpha_len = |pair: bool| -> Result<()> {
        let alpha = p.alpha_vector()?;
        let min = 1 + usize::from(pair);
        if alpha.len() < min {
            return Err(Error::domain(format!("alpha needs at least {min} entries")));
        }
        if let Some(n) = p.n {
            if alpha.len() != n as usize + usize::from(pair) {
                return Err(Error::domain(format!(
                    "alpha has {} entries but n = {n}",
                    alpha.len()
                )));
            }
        }
        Ok(())
    };
    match shape {
        Shape::Order => {
            if p.need_n()? == 0 {
                return Err(Error::domain("n must be at least 1"));
            }
        }
        Shape::OrderK | Shape::OrderKBeta => {
            if p.need_n()? == 0 {
                return Err(Error::domain("n must be at least 1"));
            }
            let k = k_at_least(2)?;
            if shape == Shape::OrderKBeta {
                beta_in_range(k)?;
            } else if p.beta_or_zero() != 0 {
                return Err(Error::domain("this identity is stated for beta = 0 only"));
            }
        }
        Shape::Alphas { pair } => alpha_len(pair)?,
        Shape::AlphasKBeta { pair, binomial } => {
            alpha_len(pair)?;
            if binomial {
                k_at_least(1)?;
                if p.need_alpha()?.contains(&0) {
                    return Err(Error::domain(
                        "binomial row-shift identity needs alpha_i >= 1",
                    ));
                }
            } else {
                let k = k_at_least(2)?;
                beta_in_range(k)?;
            }
        }
        Shape::Families => {
            let alpha = p.need_alpha()?;
            let (a, b, c) = corner(p)?;
            if alpha.is_empty() {
                return Err(Error::domain("need at least one path"));
            }
            if b > c || alpha[0] < a || alpha.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::domain(
                    "need b <= c and a <= alpha_0 <= alpha_1 <= ...",
                ));
            }
        }
        Shape::Product => {
            let n = p.need_rationals("x")?.len();
            if n == 0
                || p.need_rationals("upper")?.len() + 1 != n
                || p.need_rationals("lower")?.len() + 1 != n
            {
                return Err(Error::domain(
                    "product lemma needs |x| = n >= 1 and |upper| = |lower| = n - 1",
                ));
            }
        }
    }
    Ok(())
}

fn corner(p: &Params) -> Result<(i64, i64, i64)> {
    let get = |v: Option<i64>, name: &str| {
        v.ok_or_else(|| Error::domain(format!("missing parameter {name}")))
    };
    Ok((get(p.a, "a")?, get(p.b, "b")?, get(p.c, "c")?))
}

fn hankel_offset(id: ClosedFormId) -> u32 {
    match id {
        ClosedFormId::CatalanHankelShift1 => 1,
        ClosedFormId::CatalanHankelShift2 => 2,
        _ => 0,
    }
}

fn matrix(m: Result<ExactMatrix>) -> Result<Lhs> {
    m.map(Lhs::Matrix)
}

fn identity_alphas(n: u32) -> AlphaVector {
    AlphaVector::new((0..=u64::from(n)).collect())
}

fn hankel(id: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(build_hankel(
        SequenceSpec::Catalan,
        p.need_n()? as usize,
        u64::from(hankel_offset(id)),
    ))
}

fn hankel_rhs(id: ClosedFormId, p: &Params) -> Result<Rational> {
    catalan_hankel_value(hankel_offset(id), p.need_n()?).map(rat_int)
}

fn fib_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(catalan_row_pair_matrix(&identity_alphas(p.need_n()?)))
}

fn fib_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    Ok(rat_int(catalan_pair_fibonacci(p.need_n()?)))
}

fn pair_sum_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(gen_catalan_row_pair_matrix(
        &identity_alphas(p.need_n()?),
        p.need_k()?,
        0,
    ))
}

fn pair_sum_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    gen_catalan_pair_sum(p.need_k()?, p.need_n()?).map(rat_int)
}

fn adjacent_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(gen_catalan_adjacent_matrix(
        p.need_k()?,
        p.beta_or_zero(),
        p.need_n()? as usize,
    ))
}

fn adjacent_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    rhs_gen_catalan_adjacent(p.need_k()?, p.beta_or_zero(), p.need_n()?).map(rat_int)
}

fn row_shift_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(catalan_row_shift_matrix(&p.alpha_vector()?))
}

fn row_shift_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    Ok(rhs_catalan_row_shift(&p.alpha_vector()?))
}

fn row_pair_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(catalan_row_pair_matrix(&p.alpha_vector()?))
}

fn row_pair_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    rhs_catalan_row_pair(&p.alpha_vector()?)
}

fn gen_shift_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(gen_catalan_row_shift_matrix(
        &p.alpha_vector()?,
        p.need_k()?,
        p.beta_or_zero(),
    ))
}

fn gen_shift_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    rhs_gen_catalan_row_shift(&p.alpha_vector()?, p.need_k()?, p.beta_or_zero())
}

fn binom_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(binomial_row_shift_matrix(
        &p.alpha_vector()?,
        p.need_k()?,
        p.beta_or_zero(),
    ))
}

fn binom_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    rhs_binomial_row_shift(&p.alpha_vector()?, p.need_k()?, p.beta_or_zero())
}

fn gen_pair_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(gen_catalan_row_pair_matrix(
        &p.alpha_vector()?,
        p.need_k()?,
        p.beta_or_zero(),
    ))
}

fn gen_pair_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    rhs_gen_catalan_row_pair(&p.alpha_vector()?, p.need_k()?, p.beta_or_zero())
}

fn families_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    let (a, b, c) = corner(p)?;
    path_family_config(a, b, c, p.need_alpha()?).map(Lhs::Families)
}

fn families_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    let (a, b, c) = corner(p)?;
    rhs_path_families(a, b, c, p.need_alpha()?)
}

fn variant(id: ClosedFormId) -> TernaryHankel {
    match id {
        ClosedFormId::Ternary(v) => v,
        other => unreachable!("{other} is not a ternary identity"),
    }
}

fn ternary_lhs(id: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(ternary_hankel_matrix(variant(id), p.need_n()? as usize))
}

fn ternary_rhs(id: ClosedFormId, p: &Params) -> Result<Rational> {
    rhs_ternary(variant(id), p.need_n()?)
}

fn product_lhs(_: ClosedFormId, p: &Params) -> Result<Lhs> {
    matrix(product_lemma_matrix(
        p.need_rationals("x")?,
        p.need_rationals("upper")?,
        p.need_rationals("lower")?,
    ))
}

fn product_rhs(_: ClosedFormId, p: &Params) -> Result<Rational> {
    rhs_product_lemma(
        p.need_rationals("x")?,
        p.need_rationals("upper")?,
        p.need_rationals("lower")?,
    )
}
