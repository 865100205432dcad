use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};
use crate::matrices::AlphaVector;

/// Named parameters of one identity instance. Unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub beta: Option<u32>,
    pub alpha: Option<Vec<i64>>,
    /// Path-family corner `(a, b)` and end height `c`.
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub c: Option<i64>,
    /// Product-lemma variables `X`, `A_1..A_{n-1}` and `B_1..B_{n-1}`.
    pub x: Option<Vec<Rational>>,
    pub upper: Option<Vec<Rational>>,
    pub lower: Option<Vec<Rational>>,
}

impl Params {
    pub fn order(n: u32) -> Self {
        Params {
            n: Some(n),
            ..Params::default()
        }
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_beta(mut self, beta: u32) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_alpha(mut self, alpha: Vec<i64>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub(crate) fn need_n(&self) -> Result<u32> {
        self.n.ok_or_else(|| missing("n"))
    }

    pub(crate) fn need_k(&self) -> Result<u32> {
        self.k.ok_or_else(|| missing("k"))
    }

    pub(crate) fn beta_or_zero(&self) -> u32 {
        self.beta.unwrap_or(0)
    }

    pub(crate) fn need_alpha(&self) -> Result<&[i64]> {
        self.alpha.as_deref().ok_or_else(|| missing("alpha"))
    }

    pub(crate) fn alpha_vector(&self) -> Result<AlphaVector> {
        let raw = self.need_alpha()?;
        let values = raw
            .iter()
            .map(|&a| {
                u64::try_from(a).map_err(|_| {
                    Error::domain(format!("alpha entries must be non-negative, got {a}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlphaVector::new(values))
    }

    pub(crate) fn need_rationals(&self, which: &str) -> Result<&[Rational]> {
        let v = match which {
            "x" => &self.x,
            "upper" => &self.upper,
            _ => &self.lower,
        };
        v.as_deref().ok_or_else(|| missing(which))
    }

    fn entries(&self) -> Vec<(&'static str, String)> {
        let list = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>().join(",");
        let mut out = Vec::new();
        if let Some(n) = self.n {
            out.push(("n", n.to_string()));
        }
        if let Some(k) = self.k {
            out.push(("k", k.to_string()));
        }
        if let Some(beta) = self.beta {
            out.push(("beta", beta.to_string()));
        }
        if let Some(alpha) = &self.alpha {
            let s: Vec<String> = alpha.iter().map(i64::to_string).collect();
            out.push(("alpha", s.join(",")));
        }
        for (key, v) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if let Some(v) = v {
                out.push((key, v.to_string()));
            }
        }
        for (key, v) in [
            ("x", &self.x),
            ("upper", &self.upper),
            ("lower", &self.lower),
        ] {
            if let Some(v) = v {
                out.push((key, list(v)));
            }
        }
        out
    }
}

fn missing(name: &str) -> Error {
    Error::domain(format!("missing parameter {name}"))
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let str_list = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let mut map = serializer.serialize_map(None)?;
        if let Some(n) = self.n {
            map.serialize_entry("n", &n)?;
        }
        if let Some(k) = self.k {
            map.serialize_entry("k", &k)?;
        }
        if let Some(beta) = self.beta {
            map.serialize_entry("beta", &beta)?;
        }
        if let Some(alpha) = &self.alpha {
            map.serialize_entry("alpha", alpha)?;
        }
        for (key, v) in [("a", self.a), ("b", self.b), ("c", self.c)] {
            if let Some(v) = v {
                map.serialize_entry(key, &v)?;
            }
        }
        for (key, v) in [
            ("x", &self.x),
            ("upper", &self.upper),
            ("lower", &self.lower),
        ] {
            if let Some(v) = v {
                map.serialize_entry(key, &str_list(v))?;
            }
        }
        map.end()
    }
}
