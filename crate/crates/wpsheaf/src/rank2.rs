//! μ-stability of type I rank-2 bundles and the rank-2 generating functions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{internal, invalid, Result};
use crate::exact_arith::{int, rational_to_string, to_i64, Cyclotomic, Rational};
use crate::hilbert::{kclass_hilb_top, rank2_a, rank2_constant_term, slope_mu, GeneratingSheafSpec};
use crate::inertia::{sectors, tch_rank2_closed_form, ChernVector, SectorKind};
use crate::kgroup::{rank2_typei_class, KClass, WppParams};
use crate::partitions::{g_series_color0, Series};
use crate::sheaf_model::{ProjPoint, TypeIBundle};

/// All Δ_i > 0, the points mutually distinct and the strict triangle inequalities.
pub fn is_mu_stable(datum: &TypeIBundle) -> bool {
    let [d1, d2, d3] = datum.delta;
    d1 > 0 && d2 > 0 && d3 > 0 && datum.points_distinct() && d1 < d2 + d3 && d2 < d1 + d3 && d3 < d1 + d2
}

/// Slopes of the three equivariant line subbundles L_i, as K-classes.
pub fn line_subbundles(params: &WppParams, datum: &TypeIBundle) -> [KClass; 3] {
    let [d1, d2, d3] = datum.delta;
    let s: i64 = datum.a.iter().sum();
    [KClass::g_pow(params, d2 + d3 + s), KClass::g_pow(params, d3 + d1 + s), KClass::g_pow(params, d1 + d2 + s)]
}

/// Stability decided by comparing modified slopes of F and its line subbundles.
pub fn slope_oracle_stability(params: &WppParams, spec: &GeneratingSheafSpec, datum: &TypeIBundle) -> Result<bool> {
    if datum.delta.iter().any(|&x| x <= 0) || !datum.points_distinct() {
        return Ok(false);
    }
    let f = rank2_typei_class(params, datum)?;
    let mu_f = slope_mu(&kclass_hilb_top(&f, spec))?;
    for l in line_subbundles(params, datum) {
        if slope_mu(&kclass_hilb_top(&l, spec))? >= mu_f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A stable fixed point: A_1 = A_2 = 0, A_3 = A, points (1:0), (0:1), (1:1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StableTriple {
    pub a: i64,
    pub delta: [i64; 3],
}

impl StableTriple {
    pub fn bundle(&self) -> TypeIBundle {
        TypeIBundle::new([0, 0, self.a], self.delta, ProjPoint::standard_triple())
    }

    pub fn to_json(&self) -> Value {
        json!({ "A": self.a, "delta": self.delta })
    }
}

fn candidate_deltas(params: &WppParams, max_sum: i64) -> Vec<[i64; 3]> {
    let (a, b, c) = params.weights();
    let mut out = Vec::new();
    for total in 3..=max_sum {
        for d1 in (b..total).step_by(b as usize) {
            for d2 in (c..total - d1).step_by(c as usize) {
                let d3 = total - d1 - d2;
                if d3 > 0 && d3 % a == 0 && d1 < d2 + d3 && d2 < d1 + d3 && d3 < d1 + d2 {
                    out.push([d1, d2, d3]);
                }
            }
        }
    }
    out
}

/// Stable data with −2A − ΣΔ = c1 and A ≡ λ mod d, ordered by ΣΔ then Δ.
pub fn enumerate_stable_triples(params: &WppParams, c1: i64, lambda: i64, max_sum: i64) -> Vec<StableTriple> {
    candidate_deltas(params, max_sum)
        .into_iter()
        .filter_map(|delta| rank2_a(params, c1, lambda, delta).ok().map(|a| StableTriple { a, delta }))
        .collect()
}

/// Codegree-2 and codegree-1 targets for refined counting.
/// Sectors absent from a map are unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Targets {
    pub alpha: BTreeMap<usize, Cyclotomic>,
    pub beta: BTreeMap<usize, Cyclotomic>,
}

impl Rank2Targets {
    /// α_f = 2e^{−2π√−1 fλ}, β_f = c1·e^{−2π√−1 fλ} on the 2-dimensional sectors.
    pub fn from_c1_lambda(params: &WppParams, c1: i64, lambda: i64) -> Rank2Targets {
        let ix = sectors(params);
        let m = params.m() as u64;
        let mut alpha = BTreeMap::new();
        let mut beta = BTreeMap::new();
        for (s, sec) in ix.sectors().iter().enumerate() {
            if sec.kind != SectorKind::TwoDim {
                continue;
            }
            let e = (&sec.f * int(params.m())).to_integer();
            let e: i64 = i64::try_from(e).expect("sector numerator fits i64");
            let z = crate::exact_arith::zeta_pow(m, -(e * lambda));
            alpha.insert(s, z.scale(&int(2)));
            beta.insert(s, z.scale(&int(c1)));
        }
        Rank2Targets { alpha, beta }
    }

    /// Also fix the codegree-1 entry of the sector with value f.
    pub fn with_beta(mut self, params: &WppParams, f: &Rational, value: Cyclotomic) -> Result<Rank2Targets> {
        let ix = sectors(params);
        let Some(s) = ix.position(f) else {
            return invalid(format!("no sector with f = {}", rational_to_string(f)));
        };
        if ix.sectors()[s].dim() < 1 {
            return invalid("0-dimensional sectors have no codegree-1 entry");
        }
        self.beta.insert(s, value.embed(params.m() as u64));
        Ok(self)
    }

    fn c1(&self, params: &WppParams) -> Result<i64> {
        let s0 = sectors(params).position(&Rational::zero()).expect("f = 0 is always a sector");
        match self.beta.get(&s0).and_then(|b| b.as_rational()).as_ref().and_then(to_i64) {
            Some(v) => Ok(v),
            None => invalid("the codegree-1 target at f = 0 must be an integer"),
        }
    }

    fn matches(&self, ch: &ChernVector) -> bool {
        self.alpha.iter().all(|(s, v)| ch.codegree(*s, 2) == Some(v)) && self.beta.iter().all(|(s, v)| ch.codegree(*s, 1) == Some(v))
    }
}

/// Codegree-0 entries over all sectors, in canonical sector order, as
/// power-basis coordinates in Q(ζ_m).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RefinedKey(pub Vec<Vec<Rational>>);

impl RefinedKey {
    pub fn of(ch: &ChernVector) -> RefinedKey {
        let order = ch.order();
        RefinedKey(
            (0..ch.index().len())
                .map(|s| ch.codegree(s, 0).expect("codegree 0 exists").embed(order).coords().to_vec())
                .collect(),
        )
    }

    pub fn to_json(&self, params: &WppParams) -> Value {
        let ix = sectors(params);
        Value::Array(
            ix.sectors()
                .iter()
                .zip(&self.0)
                .map(|(s, v)| {
                    json!({
                        "f": [s.f.numer().to_string(), s.f.denom().to_string()],
                        "kind": s.kind.label(),
                        "value": v.iter().map(rational_to_string).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// Admissible (A, Δ) meeting the targets, with their closed-form Chern vectors.
pub fn refined_solutions(params: &WppParams, targets: &Rank2Targets, max_sum: i64) -> Result<Vec<(StableTriple, ChernVector)>> {
    let beta0 = targets.c1(params)?;
    let mut out = Vec::new();
    for delta in candidate_deltas(params, max_sum) {
        let s = beta0 + delta.iter().sum::<i64>();
        if s % 2 != 0 {
            continue;
        }
        let t = StableTriple { a: -s / 2, delta };
        let ch = tch_rank2_closed_form(params, &t.bundle())?;
        if targets.matches(&ch) {
            out.push((t, ch));
        }
    }
    Ok(out)
}

/// Multiplicity of every codegree-0 Chern vector among the stable fixed points.
pub fn h_vb_refined(params: &WppParams, targets: &Rank2Targets, max_sum: i64) -> Result<BTreeMap<RefinedKey, u64>> {
    let mut out = BTreeMap::new();
    for (_, ch) in refined_solutions(params, targets, max_sum)? {
        *out.entry(RefinedKey::of(&ch)).or_insert(0) += 1;
    }
    Ok(out)
}

/// P_E(F,0) values attained by each refined key.
pub fn refined_exponents(
    params: &WppParams,
    spec: &GeneratingSheafSpec,
    targets: &Rank2Targets,
    lambda: i64,
    max_sum: i64,
) -> Result<BTreeMap<RefinedKey, BTreeSet<i64>>> {
    let c1 = targets.c1(params)?;
    let mut out: BTreeMap<RefinedKey, BTreeSet<i64>> = BTreeMap::new();
    for (t, ch) in refined_solutions(params, targets, max_sum)? {
        let p = exponent(params, spec, c1, lambda, t.delta)?;
        out.entry(RefinedKey::of(&ch)).or_default().insert(p);
    }
    Ok(out)
}

fn exponent(params: &WppParams, spec: &GeneratingSheafSpec, c1: i64, lambda: i64, delta: [i64; 3]) -> Result<i64> {
    let v = rank2_constant_term(params, spec, c1, lambda, delta)?;
    match to_i64(&v) {
        Some(e) if v.is_integer() => Ok(e),
        _ => internal(format!("exponent {} is not a machine integer", rational_to_string(&v))),
    }
}

/// Σ q^{P(Δ)} over the stable triples with ΣΔ ≤ max_sum.
pub fn h_vb_specialized(params: &WppParams, spec: &GeneratingSheafSpec, c1: i64, lambda: i64, max_sum: i64) -> Result<Series> {
    let mut out = Series::univariate(None);
    for t in enumerate_stable_triples(params, c1, lambda, max_sum) {
        let e = exponent(params, spec, c1, lambda, t.delta)?;
        let e = i32::try_from(e).map_err(|_| crate::error::WppError::Internal(format!("exponent {e} out of range")))?;
        out.add_term(vec![e], Rational::from_integer(1.into()));
    }
    Ok(out)
}

/// H^vb (partial sum over ΣΔ ≤ max_sum) times the square of the color-0
/// specialized rank-1 series, truncated at q^{max_order}.
pub fn h_full(params: &WppParams, spec: &GeneratingSheafSpec, c1: i64, lambda: i64, max_sum: i64, max_order: i64) -> Result<Series> {
    let hvb = h_vb_specialized(params, spec, c1, lambda, max_sum)?;
    let Some(lo) = hvb.min_degree() else {
        return Ok(Series::univariate(Some(max_order)));
    };
    if lo > max_order {
        return Ok(Series::univariate(Some(max_order)));
    }
    let g = g_series_color0(params, 0, max_order - lo)?;
    Ok(hvb.mul(&g.mul(&g)).truncate(max_order))
}
