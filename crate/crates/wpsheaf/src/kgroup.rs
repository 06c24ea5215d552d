//! The rationalized Grothendieck group K(P(a,b,c)) = Q[g]/((1-g^a)(1-g^b)(1-g^c)),
//! with g the class of O(-1).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Result};
use crate::exact_arith::{int, poly, rational_to_string, Rational};
use crate::partitions::{chart_spec, color_count, Partition};
use crate::sheaf_model::TypeIBundle;

struct ParamsInner {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    d12: i64,
    d13: i64,
    d23: i64,
    m: i64,
    modulus: Vec<Rational>,
    g_inv: Vec<Rational>,
}

/// Weights of P(a,b,c) together with derived gcd/lcm data and the cached
/// inverse of g in the quotient ring.
#[derive(Clone)]
pub struct WppParams(Arc<ParamsInner>);

impl WppParams {
    pub fn new(a: i64, b: i64, c: i64) -> Result<WppParams> {
        if a <= 0 || b <= 0 || c <= 0 {
            return invalid(format!("weights must be positive, got ({a},{b},{c})"));
        }
        let one_minus = |k: i64| {
            let mut p = vec![Rational::zero(); k as usize + 1];
            p[0] = Rational::one();
            p[k as usize] = int(-1);
            p
        };
        let modulus = poly::mul(&poly::mul(&one_minus(a), &one_minus(b)), &one_minus(c));
        let g_inv = poly::inverse_mod(&[Rational::zero(), Rational::one()], &modulus)
            .expect("g is a unit because the modulus has constant term 1");
        Ok(WppParams(Arc::new(ParamsInner {
            a,
            b,
            c,
            d: a.gcd(&b).gcd(&c),
            d12: a.gcd(&b),
            d13: a.gcd(&c),
            d23: b.gcd(&c),
            m: a.lcm(&b).lcm(&c),
            modulus,
            g_inv,
        })))
    }

    pub fn a(&self) -> i64 {
        self.0.a
    }
    pub fn b(&self) -> i64 {
        self.0.b
    }
    pub fn c(&self) -> i64 {
        self.0.c
    }
    pub fn d(&self) -> i64 {
        self.0.d
    }
    pub fn d12(&self) -> i64 {
        self.0.d12
    }
    pub fn d13(&self) -> i64 {
        self.0.d13
    }
    pub fn d23(&self) -> i64 {
        self.0.d23
    }
    pub fn m(&self) -> i64 {
        self.0.m
    }
    pub fn weights(&self) -> (i64, i64, i64) {
        (self.0.a, self.0.b, self.0.c)
    }

    /// 1 ↦ a, 2 ↦ b, 3 ↦ c.
    pub fn hat(&self, i: usize) -> i64 {
        match i {
            1 => self.0.a,
            2 => self.0.b,
            3 => self.0.c,
            _ => panic!("chart index {i} out of range 1..=3"),
        }
    }

    /// gcd of the weights of charts i and j.
    pub fn dij(&self, i: usize, j: usize) -> i64 {
        match (i.min(j), i.max(j)) {
            (1, 2) => self.0.d12,
            (1, 3) => self.0.d13,
            (2, 3) => self.0.d23,
            _ => panic!("invalid chart pair ({i},{j})"),
        }
    }

    pub fn degree_bound(&self) -> usize {
        (self.0.a + self.0.b + self.0.c) as usize
    }

    fn modulus(&self) -> &[Rational] {
        &self.0.modulus
    }
}

impl PartialEq for WppParams {
    fn eq(&self, o: &WppParams) -> bool {
        self.weights() == o.weights()
    }
}

impl Eq for WppParams {}

impl fmt::Debug for WppParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{},{})", self.0.a, self.0.b, self.0.c)
    }
}

/// Canonical representative (degree < a+b+c) of a class in K(P)_Q.
#[derive(Clone, PartialEq, Eq)]
pub struct KClass {
    params: WppParams,
    coeffs: Vec<Rational>,
}

impl KClass {
    pub fn from_poly(params: &WppParams, p: &[Rational]) -> KClass {
        let mut r = poly::rem(p, params.modulus());
        r.resize(params.degree_bound(), Rational::zero());
        KClass { params: params.clone(), coeffs: r }
    }

    pub fn zero(params: &WppParams) -> KClass {
        KClass::from_poly(params, &[])
    }

    pub fn one(params: &WppParams) -> KClass {
        KClass::from_poly(params, &[Rational::one()])
    }

    /// g^j for any integer j.
    pub fn g_pow(params: &WppParams, j: i64) -> KClass {
        if j >= 0 {
            let mut p = vec![Rational::zero(); j as usize + 1];
            p[j as usize] = Rational::one();
            return KClass::from_poly(params, &p);
        }
        let inv = KClass::from_poly(params, &params.0.g_inv);
        let mut acc = KClass::one(params);
        for _ in 0..(-j) {
            acc = acc.mul(&inv);
        }
        acc
    }

    pub fn params(&self) -> &WppParams {
        &self.params
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &KClass) {
        assert_eq!(self.params, o.params, "K-classes of different stacks");
    }

    pub fn add(&self, o: &KClass) -> KClass {
        self.check(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x + y).collect();
        KClass { params: self.params.clone(), coeffs }
    }

    pub fn sub(&self, o: &KClass) -> KClass {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> KClass {
        KClass { params: self.params.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, o: &KClass) -> KClass {
        self.check(o);
        KClass::from_poly(&self.params, &poly::mul(&self.coeffs, &o.coeffs))
    }

    pub fn mul_g_pow(&self, j: i64) -> KClass {
        self.mul(&KClass::g_pow(&self.params, j))
    }

    /// Ordered (exponent, numerator, denominator) triples of the nonzero coefficients.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| json!([e, crate::cli::bigint_json(c.numer()), crate::cli::bigint_json(c.denom())]))
                .collect(),
        )
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.params, self)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| match e {
                0 => rational_to_string(c),
                1 => format!("{}*g", rational_to_string(c)),
                _ => format!("{}*g^{}", rational_to_string(c), e),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub fn kclass_from_laurent(params: &WppParams, terms: &BTreeMap<i64, Rational>) -> KClass {
    terms
        .iter()
        .fold(KClass::zero(params), |acc, (e, c)| acc.add(&KClass::g_pow(params, *e).scale(c)))
}

fn one_minus_g_pow(params: &WppParams, k: i64) -> KClass {
    KClass::one(params).sub(&KClass::g_pow(params, k))
}

/// [O_{P_i} ⊗ (character j)] = (1-g^a)(1-g^b)(1-g^c)/(1-g^{î}) · g^j.
pub fn structure_sheaf_point(params: &WppParams, i: usize, j: i64) -> KClass {
    let (x, y) = match i {
        1 => (params.b(), params.c()),
        2 => (params.a(), params.c()),
        3 => (params.a(), params.b()),
        _ => panic!("chart index {i} out of range 1..=3"),
    };
    one_minus_g_pow(params, x).mul(&one_minus_g_pow(params, y)).mul_g_pow(j)
}

pub fn line_bundle_class(params: &WppParams, a: i64, b: i64, c: i64) -> KClass {
    KClass::g_pow(params, a + b + c)
}

/// Class of the rank-1 sheaf with reflexive hull L_(A,B,C) and corner partitions λ_i:
/// g^{A+B+C} − Σ_i Σ_l #_l λ_i · [O_{P_i}] g^l, colors taken with offset A+B+C.
/// A box of color l is a skyscraper with fine weight l, whose class is
/// [O_{P_i}] g^l, so the offset enters once.
pub fn rank1_class(params: &WppParams, a: i64, b: i64, c: i64, lambdas: &[Partition; 3]) -> KClass {
    let mut acc = line_bundle_class(params, a, b, c);
    for (idx, lam) in lambdas.iter().enumerate() {
        let chart = idx + 1;
        let counts = color_count(lam, &chart_spec(params, chart, a + b + c));
        for (l, n) in counts.iter().enumerate() {
            if *n > 0 {
                acc = acc.sub(&structure_sheaf_point(params, chart, l as i64).scale(&int(*n as i64)));
            }
        }
    }
    acc
}

/// The rank-1 class formula read symbol for symbol: the whole bracket,
/// point terms included, multiplied by g^{A+B+C}.  This applies the offset
/// twice and differs from [`rank1_class`] as soon as a chart with a
/// nonempty partition has î ∤ A+B+C.
pub fn rank1_class_as_printed(params: &WppParams, a: i64, b: i64, c: i64, lambdas: &[Partition; 3]) -> KClass {
    let mut acc = KClass::one(params);
    for (idx, lam) in lambdas.iter().enumerate() {
        let chart = idx + 1;
        let counts = color_count(lam, &chart_spec(params, chart, a + b + c));
        for (l, n) in counts.iter().enumerate() {
            if *n > 0 {
                acc = acc.sub(&structure_sheaf_point(params, chart, l as i64).scale(&int(*n as i64)));
            }
        }
    }
    acc.mul_g_pow(a + b + c)
}

/// Class of a type I rank-2 bundle from its (A_i, Δ_i, p_i) data.
pub fn rank2_typei_class(params: &WppParams, datum: &TypeIBundle) -> Result<KClass> {
    datum.check_divisibility(params)?;
    let [d1, d2, d3] = datum.delta;
    let [p1, p2, p3] = &datum.points;
    let mut acc = KClass::one(params).add(&KClass::g_pow(params, d1 + d2 + d3));
    for (x, y, same) in [(d1, d2, p1 == p2), (d2, d3, p2 == p3), (d3, d1, p3 == p1)] {
        if !same {
            acc = acc.sub(&one_minus_g_pow(params, x).mul(&one_minus_g_pow(params, y)));
        }
    }
    Ok(acc.mul_g_pow(datum.a.iter().sum()))
}

/// One side of a relation: Σ_k [O_{P_chart}] g^{e} over the listed exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSide {
    pub chart: usize,
    pub exponents: Vec<i64>,
}

/// Every row of the point-class relations: for each residue s modulo d the
/// three-way equality, and for each pair (i,j) and residue s modulo d_ij the
/// two-way equality.
pub fn relation_rows(params: &WppParams) -> Vec<Vec<RelationSide>> {
    let side = |chart: usize, step: i64, s: i64| RelationSide {
        chart,
        exponents: (0..params.hat(chart) / step).map(|k| k * step + s).collect(),
    };
    let mut rows = Vec::new();
    let d = params.d();
    for s in 0..d {
        rows.push(vec![side(1, d, s), side(2, d, s), side(3, d, s)]);
    }
    for (i, j) in [(1, 2), (2, 3), (1, 3)] {
        let dij = params.dij(i, j);
        for s in 0..dij {
            rows.push(vec![side(i, dij, s), side(j, dij, s)]);
        }
    }
    rows
}

pub fn relation_side_class(params: &WppParams, side: &RelationSide) -> KClass {
    side.exponents
        .iter()
        .fold(KClass::zero(params), |acc, e| acc.add(&structure_sheaf_point(params, side.chart, *e)))
}

pub fn verify_relations(params: &WppParams) -> bool {
    relation_rows(params).iter().all(|row| {
        let first = relation_side_class(params, &row[0]);
        row[1..].iter().all(|s| relation_side_class(params, s) == first)
    })
}
