//! Sparse multivariate formal series with rational coefficients, truncated by
//! total degree.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{invalid, Result};
use crate::exact_arith::{rational_to_string, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, Rational>,
    trunc: Option<i64>,
}

pub fn total_degree(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

impl Series {
    pub fn zero(vars: Vec<String>, trunc: Option<i64>) -> Series {
        Series { vars, terms: BTreeMap::new(), trunc }
    }

    pub fn one(vars: Vec<String>, trunc: Option<i64>) -> Series {
        let mut s = Series::zero(vars, trunc);
        let n = s.vars.len();
        s.add_term(vec![0; n], Rational::one());
        s
    }

    /// Variables named `prefix0..prefix{n-1}`.
    pub fn indexed_vars(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn univariate(trunc: Option<i64>) -> Series {
        Series::zero(vec!["q".to_string()], trunc)
    }

    /// Univariate series from a dense coefficient list starting at q^0.
    pub fn from_coeffs(coeffs: &[Rational], trunc: Option<i64>) -> Series {
        let mut s = Series::univariate(trunc);
        for (i, c) in coeffs.iter().enumerate() {
            s.add_term(vec![i as i32], c.clone());
        }
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[i32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    fn keeps(&self, e: &[i32]) -> bool {
        self.trunc.is_none_or(|t| total_degree(e) <= t)
    }

    pub fn add_term(&mut self, e: Vec<i32>, c: Rational) {
        assert_eq!(e.len(), self.vars.len(), "exponent vector length mismatch");
        if c.is_zero() || !self.keeps(&e) {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_vars(&self, o: &Series) {
        assert_eq!(self.vars, o.vars, "series over different variables");
    }

    fn min_trunc(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn add(&self, o: &Series) -> Series {
        self.check_vars(o);
        let mut out = Series::zero(self.vars.clone(), Series::min_trunc(self.trunc, o.trunc));
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Series {
        let mut out = Series::zero(self.vars.clone(), self.trunc);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn sub(&self, o: &Series) -> Series {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn mul(&self, o: &Series) -> Series {
        self.check_vars(o);
        let trunc = Series::min_trunc(self.trunc, o.trunc);
        let mut acc: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            let d1 = total_degree(e1);
            for (e2, c2) in &o.terms {
                if trunc.is_some_and(|t| d1 + total_degree(e2) > t) {
                    continue;
                }
                let e: Vec<i32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Series { vars: self.vars.clone(), terms: acc, trunc }
    }

    pub fn pow(&self, n: u32) -> Series {
        (0..n).fold(Series::one(self.vars.clone(), self.trunc), |acc, _| acc.mul(self))
    }

    /// Re-truncate at a (possibly) smaller total degree.
    pub fn truncate(&self, t: i64) -> Series {
        let trunc = Series::min_trunc(self.trunc, Some(t));
        let terms = self.terms.iter().filter(|(e, _)| total_degree(e) <= t).map(|(e, c)| (e.clone(), c.clone())).collect();
        Series { vars: self.vars.clone(), terms, trunc }
    }

    /// Multiply by a monomial, leaving the truncation bound unchanged.
    pub fn shift(&self, e: &[i32]) -> Series {
        let mut out = Series::zero(self.vars.clone(), self.trunc);
        for (x, c) in &self.terms {
            out.add_term(x.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone());
        }
        out
    }

    /// Monomial-wise substitution x_i ↦ images[i] (a monomial in `targets`,
    /// the all-zero vector standing for 1).  The result is truncated at
    /// `trunc`; it is exact only if every source monomial that can land at
    /// degree ≤ trunc was present in `self`, which holds automatically when
    /// every image has degree ≥ 1 and trunc ≤ self.trunc.
    pub fn specialize(&self, targets: &[String], images: &[Vec<i32>], trunc: Option<i64>) -> Result<Series> {
        if images.len() != self.vars.len() {
            return invalid(format!("assignment covers {} of {} variables", images.len(), self.vars.len()));
        }
        if images.iter().any(|m| m.len() != targets.len()) {
            return invalid("assignment image has wrong arity");
        }
        let mut out = Series::zero(targets.to_vec(), trunc);
        for (e, c) in &self.terms {
            let mut img = vec![0i32; targets.len()];
            for (k, &x) in e.iter().enumerate() {
                for (t, &y) in images[k].iter().enumerate() {
                    img[t] += x * y;
                }
            }
            out.add_term(img, c.clone());
        }
        Ok(out)
    }

    /// Σ_{k≥0} (mono)^k, i.e. 1/(1 - mono), truncated.
    pub fn geometric(vars: Vec<String>, mono: &[i32], trunc: i64) -> Series {
        let d = total_degree(mono);
        assert!(d > 0, "geometric series needs a monomial of positive degree");
        let mut out = Series::zero(vars, Some(trunc));
        let mut k = 0;
        while k * d <= trunc {
            out.add_term(mono.iter().map(|x| x * k as i32).collect(), Rational::one());
            k += 1;
        }
        out
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    /// Coefficients of a univariate series keyed by exponent.
    pub fn univariate_coeffs(&self) -> BTreeMap<i64, Rational> {
        assert_eq!(self.vars.len(), 1, "not a univariate series");
        self.terms.iter().map(|(e, c)| (e[0] as i64, c.clone())).collect()
    }

    /// One JSON record per monomial, variables in the series' canonical order.
    pub fn to_json_records(&self) -> Vec<Value> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut mono = Map::new();
                for (v, x) in self.vars.iter().zip(e) {
                    if *x != 0 {
                        mono.insert(v.clone(), json!(x));
                    }
                }
                json!({ "monomial": mono, "coeff": rational_to_string(c) })
            })
            .collect()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, x)| **x != 0)
                .map(|(v, x)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let cs = rational_to_string(c);
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mono.join("*"),
                (false, _) => format!("{cs}*{}", mono.join("*")),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        match self.trunc {
            Some(t) => write!(f, "{} + O({})", parts.join(" + "), t + 1),
            None => write!(f, "{}", parts.join(" + ")),
        }
    }
}
