//! Square exact matrices and the builders for every determinant family.
//!
//! Builders are pure: the same parameters always give the same matrix. Each
//! matrix remembers which builder produced it so a failing report can name
//! the identity behind it.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_int, parse_rational, rat_int, Integer, Rational};
use crate::error::{Error, Result};
use crate::sequences::{catalan, gen_catalan, ternary, SequenceSpec, ShiftedTernary};

/// Nonnegative row-shift parameters `alpha_0, alpha_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphaVector(Vec<u64>);

impl AlphaVector {
    pub fn new(values: Vec<u64>) -> Self {
        AlphaVector(values)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_repeat(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl From<Vec<u64>> for AlphaVector {
    fn from(v: Vec<u64>) -> Self {
        AlphaVector(v)
    }
}

impl fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The ten ternary Hankel families. `FracPQR` has entries
/// `P / (3m + Q) * C(3m + Q, m + R)` at `m = i + j`; the `Shifted*` kinds use
/// the sequences with a replaced zeroth term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TernaryHankel {
    Frac110,
    Frac141,
    Frac121,
    Frac152,
    Frac211,
    Frac242,
    ShiftedA,
    ShiftedB,
    Frac251,
    ShiftedC,
}

impl TernaryHankel {
    pub const ALL: [TernaryHankel; 10] = [
        TernaryHankel::Frac110,
        TernaryHankel::Frac141,
        TernaryHankel::Frac121,
        TernaryHankel::Frac152,
        TernaryHankel::Frac211,
        TernaryHankel::Frac242,
        TernaryHankel::ShiftedA,
        TernaryHankel::ShiftedB,
        TernaryHankel::Frac251,
        TernaryHankel::ShiftedC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TernaryHankel::Frac110 => "1-1-0",
            TernaryHankel::Frac141 => "1-4-1",
            TernaryHankel::Frac121 => "1-2-1",
            TernaryHankel::Frac152 => "1-5-2",
            TernaryHankel::Frac211 => "2-1-1",
            TernaryHankel::Frac242 => "2-4-2",
            TernaryHankel::ShiftedA => "a",
            TernaryHankel::ShiftedB => "b",
            TernaryHankel::Frac251 => "2-5-1",
            TernaryHankel::ShiftedC => "c",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    /// The `m`-th sequence term; entry `(i, j)` is `term(i + j)`.
    pub fn term(self, m: u64) -> Rational {
        let mi = m as i64;
        match self {
            TernaryHankel::Frac110 => ternary(1, 1, 0, mi),
            TernaryHankel::Frac141 => ternary(1, 4, 1, mi),
            TernaryHankel::Frac121 => ternary(1, 2, 1, mi),
            TernaryHankel::Frac152 => ternary(1, 5, 2, mi),
            TernaryHankel::Frac211 => ternary(2, 1, 1, mi),
            TernaryHankel::Frac242 => ternary(2, 4, 2, mi),
            TernaryHankel::Frac251 => ternary(2, 5, 1, mi),
            TernaryHankel::ShiftedA => crate::sequences::shifted_ternary(ShiftedTernary::A, m),
            TernaryHankel::ShiftedB => crate::sequences::shifted_ternary(ShiftedTernary::B, m),
            TernaryHankel::ShiftedC => crate::sequences::shifted_ternary(ShiftedTernary::C, m),
        }
    }
}

impl fmt::Display for TernaryHankel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which builder produced a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Hankel {
        seq: SequenceSpec,
        offset: u64,
    },
    CatalanRowShift {
        alphas: AlphaVector,
    },
    CatalanRowPair {
        alphas: AlphaVector,
    },
    GenCatalanRowShift {
        alphas: AlphaVector,
        k: u32,
        beta: u32,
    },
    GenCatalanRowPair {
        alphas: AlphaVector,
        k: u32,
        beta: u32,
    },
    GenCatalanAdjacent {
        k: u32,
        beta: u32,
        n: usize,
    },
    BinomialRowShift {
        alphas: AlphaVector,
        k: u32,
        beta: u32,
    },
    Ternary {
        variant: TernaryHankel,
        n: usize,
    },
    ProductLemma {
        n: usize,
    },
    PathCounts {
        n: usize,
    },
    File,
    Custom(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Hankel { seq, offset } => write!(f, "hankel[{seq}, offset={offset}]"),
            Provenance::CatalanRowShift { alphas } => {
                write!(f, "catalan-row-shift[alpha={alphas}]")
            }
            Provenance::CatalanRowPair { alphas } => write!(f, "catalan-row-pair[alpha={alphas}]"),
            Provenance::GenCatalanRowShift { alphas, k, beta } => {
                write!(
                    f,
                    "gen-catalan-row-shift[alpha={alphas}, k={k}, beta={beta}]"
                )
            }
            Provenance::GenCatalanRowPair { alphas, k, beta } => {
                write!(
                    f,
                    "gen-catalan-row-pair[alpha={alphas}, k={k}, beta={beta}]"
                )
            }
            Provenance::GenCatalanAdjacent { k, beta, n } => {
                write!(f, "gen-catalan-adjacent[k={k}, beta={beta}, n={n}]")
            }
            Provenance::BinomialRowShift { alphas, k, beta } => {
                write!(f, "binomial-row-shift[alpha={alphas}, k={k}, beta={beta}]")
            }
            Provenance::Ternary { variant, n } => write!(f, "ternary[{variant}, n={n}]"),
            Provenance::ProductLemma { n } => write!(f, "product-lemma[n={n}]"),
            Provenance::PathCounts { n } => write!(f, "path-counts[n={n}]"),
            Provenance::File => write!(f, "file"),
            Provenance::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A dense square matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<Rational>,
    integral: bool,
    provenance: Provenance,
}

impl ExactMatrix {
    pub fn new(order: usize, entries: Vec<Rational>, provenance: Provenance) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("matrix order must be at least 1"));
        }
        if entries.len() != order * order {
            return Err(Error::domain(format!(
                "order {order} needs {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        let integral = entries.iter().all(|e| e.is_integer());
        Ok(ExactMatrix {
            order,
            entries,
            integral,
            provenance,
        })
    }

    pub fn from_fn(
        order: usize,
        provenance: Provenance,
        mut entry: impl FnMut(usize, usize) -> Result<Rational>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(entry(i, j)?);
            }
        }
        Self::new(order, entries, provenance)
    }

    pub fn from_integer_rows(rows: &[Vec<i64>], provenance: Provenance) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::domain("rows must form a square matrix"));
        }
        let entries = rows.iter().flatten().map(|&v| rat_int(v)).collect();
        Self::new(order, entries, provenance)
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, Provenance::Custom("identity".into()), |i, j| {
            Ok(rat_int(i64::from(i == j)))
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.order)
    }

    /// True when every entry has denominator one.
    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Integer entries as row vectors, or `None` if some entry is fractional.
    pub fn integer_rows(&self) -> Option<Vec<Vec<Integer>>> {
        if !self.integral {
            return None;
        }
        Some(
            self.rows()
                .map(|r| r.iter().map(|e| e.to_integer()).collect())
                .collect(),
        )
    }

    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.rows().map(<[Rational]>::to_vec).collect()
    }

    /// The contiguous block with top-left corner `(row, col)` and side `size`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> Result<Self> {
        if row + size > self.order || col + size > self.order {
            return Err(Error::domain("block exceeds matrix bounds"));
        }
        Self::from_fn(size, self.provenance.clone(), |i, j| {
            Ok(self.get(row + i, col + j).clone())
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, self.provenance.clone(), |i, j| {
            Ok(self.get(j, i).clone())
        })
        .expect("same shape")
    }

    pub fn scale_row(&self, row: usize, factor: &Rational) -> Self {
        let mut out = self.clone();
        for j in 0..self.order {
            out.entries[row * self.order + j] *= factor;
        }
        out.integral = out.entries.iter().all(|e| e.is_integer());
        out
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        for j in 0..self.order {
            out.entries.swap(a * self.order + j, b * self.order + j);
        }
        out
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_matrix(self))
    }
}

fn check_beta(k: u32, beta: u32) -> Result<()> {
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

fn nonempty(alphas: &AlphaVector, extra: usize) -> Result<usize> {
    if alphas.len() < 1 + extra {
        return Err(Error::domain(format!(
            "alpha vector needs at least {} entries",
            1 + extra
        )));
    }
    Ok(alphas.len() - extra)
}

/// `entry(i, j) = seq(i + j + offset)`.
pub fn build_hankel(seq: SequenceSpec, n: usize, offset: u64) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::domain("Hankel matrix order must be at least 1"));
    }
    seq.validate()?;
    let terms = (0..2 * n as u64 - 1)
        .map(|m| seq.term(m + offset))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_fn(n, Provenance::Hankel { seq, offset }, |i, j| {
        Ok(terms[i + j].clone())
    })
}

/// `entry(i, j) = C_{alpha_i + j}`; order is the length of `alphas`.
pub fn catalan_row_shift_matrix(alphas: &AlphaVector) -> Result<ExactMatrix> {
    let n = nonempty(alphas, 0)?;
    let a = alphas.as_slice();
    ExactMatrix::from_fn(
        n,
        Provenance::CatalanRowShift {
            alphas: alphas.clone(),
        },
        |i, j| Ok(rat_int(catalan(a[i] + j as u64))),
    )
}

/// `entry(i, j) = C_{alpha_i + j} + C_{alpha_{i+1} + j}`; order is one less
/// than the length of `alphas`.
pub fn catalan_row_pair_matrix(alphas: &AlphaVector) -> Result<ExactMatrix> {
    let n = nonempty(alphas, 1)?;
    let a = alphas.as_slice();
    ExactMatrix::from_fn(
        n,
        Provenance::CatalanRowPair {
            alphas: alphas.clone(),
        },
        |i, j| {
            let j = j as u64;
            Ok(rat_int(catalan(a[i] + j) + catalan(a[i + 1] + j)))
        },
    )
}

/// `entry(i, j) = C_{(k-1) alpha_i + j + beta, k}` with `0 <= beta <= k-1`.
pub fn gen_catalan_row_shift_matrix(
    alphas: &AlphaVector,
    k: u32,
    beta: u32,
) -> Result<ExactMatrix> {
    check_beta(k, beta)?;
    let n = nonempty(alphas, 0)?;
    let a = alphas.as_slice();
    let step = u64::from(k - 1);
    ExactMatrix::from_fn(
        n,
        Provenance::GenCatalanRowShift {
            alphas: alphas.clone(),
            k,
            beta,
        },
        |i, j| {
            Ok(rat_int(gen_catalan(
                step * a[i] + j as u64 + u64::from(beta),
                k,
            )?))
        },
    )
}

/// `entry(i, j) = C_{(k-1) alpha_i + j + beta, k} + C_{(k-1) alpha_{i+1} + j + beta, k}`.
///
/// Repeated alphas are accepted here; only the closed form rejects them.
pub fn gen_catalan_row_pair_matrix(alphas: &AlphaVector, k: u32, beta: u32) -> Result<ExactMatrix> {
    check_beta(k, beta)?;
    let n = nonempty(alphas, 1)?;
    let a = alphas.as_slice();
    let step = u64::from(k - 1);
    let b = u64::from(beta);
    ExactMatrix::from_fn(
        n,
        Provenance::GenCatalanRowPair {
            alphas: alphas.clone(),
            k,
            beta,
        },
        |i, j| {
            let j = j as u64;
            Ok(rat_int(
                gen_catalan(step * a[i] + j + b, k)? + gen_catalan(step * a[i + 1] + j + b, k)?,
            ))
        },
    )
}

/// `entry(i, j) = C_{(k-1) i + j + beta, k} + C_{(k-1) i + j + beta + 1, k}`.
pub fn gen_catalan_adjacent_matrix(k: u32, beta: u32, n: usize) -> Result<ExactMatrix> {
    check_beta(k, beta)?;
    if n == 0 {
        return Err(Error::domain("matrix order must be at least 1"));
    }
    let step = u64::from(k - 1);
    let b = u64::from(beta);
    ExactMatrix::from_fn(n, Provenance::GenCatalanAdjacent { k, beta, n }, |i, j| {
        let m = step * i as u64 + j as u64 + b;
        Ok(rat_int(gen_catalan(m, k)? + gen_catalan(m + 1, k)?))
    })
}

/// `entry(i, j) = C(k alpha_i + j + beta, alpha_i - 1)`; needs every `alpha_i >= 1`.
pub fn binomial_row_shift_matrix(alphas: &AlphaVector, k: u32, beta: u32) -> Result<ExactMatrix> {
    let n = nonempty(alphas, 0)?;
    if let Some(pos) = alphas.as_slice().iter().position(|&a| a == 0) {
        return Err(Error::domain(format!(
            "binomial row-shift matrix needs alpha_i >= 1, alpha_{pos} = 0"
        )));
    }
    let a = alphas.as_slice();
    let (k, b) = (i64::from(k), i64::from(beta));
    ExactMatrix::from_fn(
        n,
        Provenance::BinomialRowShift {
            alphas: alphas.clone(),
            k: k as u32,
            beta: b as u32,
        },
        |i, j| {
            let ai = a[i] as i64;
            Ok(rat_int(binomial_int(k * ai + j as i64 + b, ai - 1)))
        },
    )
}

/// Hankel matrix of one of the ternary sequences.
pub fn ternary_hankel_matrix(variant: TernaryHankel, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::domain("matrix order must be at least 1"));
    }
    ExactMatrix::from_fn(n, Provenance::Ternary { variant, n }, |i, j| {
        Ok(variant.term((i + j) as u64))
    })
}

/// Product matrix with
/// `entry(i, j) = (X_i + A_{n-1}) ... (X_i + A_{j+1}) (X_i + B_j) ... (X_i + B_1)`.
///
/// `a[t - 1]` holds `A_t` and `b[t - 1]` holds `B_t`, so both have length `n - 1`.
pub fn product_lemma_matrix(x: &[Rational], a: &[Rational], b: &[Rational]) -> Result<ExactMatrix> {
    let n = x.len();
    if n == 0 || a.len() + 1 != n || b.len() + 1 != n {
        return Err(Error::domain(format!(
            "product lemma needs |X| = n >= 1 and |A| = |B| = n - 1, got {}, {}, {}",
            n,
            a.len(),
            b.len()
        )));
    }
    ExactMatrix::from_fn(n, Provenance::ProductLemma { n }, |i, j| {
        let mut acc = Rational::one();
        for t in (j + 1)..n {
            acc *= &x[i] + &a[t - 1];
        }
        for t in 1..=j {
            acc *= &x[i] + &b[t - 1];
        }
        Ok(acc)
    })
}

/// Serialises a matrix: the order on the first line, then one row per line.
pub fn write_matrix(m: &ExactMatrix) -> String {
    let mut out = format!("{}\n", m.order());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the matrix text format. `#` starts a comment that runs to the end
/// of the line; blank lines are ignored.
pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let mut order: Option<usize> = None;
    let mut entries: Vec<Rational> = Vec::new();
    let mut rows_read = 0usize;
    let mut last_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<(usize, &str)> = tokenize(content);
        if tokens.is_empty() {
            continue;
        }
        match order {
            None => {
                if tokens.len() != 1 {
                    return Err(Error::parse(
                        line_no,
                        tokens[1].0,
                        "expected only the matrix order",
                    ));
                }
                let (col, tok) = tokens[0];
                let n: usize = tok.parse().map_err(|_| {
                    Error::parse(line_no, col, format!("invalid matrix order {tok:?}"))
                })?;
                if n == 0 {
                    return Err(Error::parse(
                        line_no,
                        col,
                        "matrix order must be at least 1",
                    ));
                }
                order = Some(n);
            }
            Some(n) => {
                if rows_read == n {
                    return Err(Error::parse(
                        line_no,
                        tokens[0].0,
                        format!("more than {n} rows"),
                    ));
                }
                if tokens.len() != n {
                    let col = tokens.get(n).map_or(content.trim_end().len() + 1, |t| t.0);
                    return Err(Error::parse(
                        line_no,
                        col,
                        format!("row has {} entries, expected {n}", tokens.len()),
                    ));
                }
                for (col, tok) in tokens {
                    let value = parse_rational(tok).map_err(|e| match e {
                        Error::Parse { message, .. } => Error::parse(line_no, col, message),
                        other => other,
                    })?;
                    entries.push(value);
                }
                rows_read += 1;
            }
        }
    }

    let n = order.ok_or_else(|| Error::parse(last_line.max(1), 1, "missing matrix order"))?;
    if rows_read != n {
        return Err(Error::parse(
            last_line + 1,
            1,
            format!("expected {n} rows, found {rows_read}"),
        ));
    }
    ExactMatrix::new(n, entries, Provenance::File)
}

fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..pos]));
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    // 1-based character columns
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn check_tall(rows: &[Vec<Rational>]) -> Result<usize> {
    let n = rows
        .len()
        .checked_sub(1)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::domain("need an (n+1) x n array with n >= 1"))?;
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::domain(format!(
            "every row of an (n+1) x n array needs {n} entries"
        )));
    }
    Ok(n)
}

/// From an `(n+1) x n` array, the `n x n` matrix with rows `a_i + a_{i+1}`.
pub fn adjacent_row_sums(rows: &[Vec<Rational>]) -> Result<ExactMatrix> {
    let n = check_tall(rows)?;
    ExactMatrix::from_fn(n, Provenance::Custom("adjacent-row-sums".into()), |i, j| {
        Ok(&rows[i][j] + &rows[i + 1][j])
    })
}

/// From an `(n+1) x n` array, the `n x n` matrix left after deleting row `s`.
pub fn delete_row(rows: &[Vec<Rational>], s: usize) -> Result<ExactMatrix> {
    let n = check_tall(rows)?;
    if s > n {
        return Err(Error::domain(format!("row {s} out of range 0..={n}")));
    }
    ExactMatrix::from_fn(n, Provenance::Custom(format!("delete-row-{s}")), |i, j| {
        Ok(rows[i + usize::from(i >= s)][j].clone())
    })
}
