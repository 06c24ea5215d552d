//! Hilbert polynomials of line bundles via Toën–Riemann–Roch, the ψ_E/φ_E
//! sums, modified slopes and the rank-2 constant term P_E(F,0).

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{internal, invalid, Result};
use crate::exact_arith::{int, rat, rational_to_string, zeta_pow, Cyclotomic, Rational};
use crate::kgroup::{KClass, WppParams};

/// Coefficients of t² and t in P(F,t), constant term omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbTop {
    pub quad: Rational,
    pub lin: Rational,
}

impl HilbTop {
    pub fn zero() -> HilbTop {
        HilbTop { quad: Rational::zero(), lin: Rational::zero() }
    }

    pub fn add(&self, o: &HilbTop) -> HilbTop {
        HilbTop { quad: &self.quad + &o.quad, lin: &self.lin + &o.lin }
    }

    pub fn scale(&self, s: &Rational) -> HilbTop {
        HilbTop { quad: &self.quad * s, lin: &self.lin * s }
    }

    pub fn to_strings(&self) -> (String, String) {
        (rational_to_string(&self.quad), rational_to_string(&self.lin))
    }
}

/// Rank E of the generating sheaf ⊕_{u<E} O(u); m = lcm(a,b,c) must divide E.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratingSheafSpec {
    e: i64,
}

impl GeneratingSheafSpec {
    pub fn new(params: &WppParams, e: i64) -> Result<GeneratingSheafSpec> {
        if e <= 0 {
            return invalid(format!("generating sheaf rank must be positive, got {e}"));
        }
        if e % params.m() != 0 {
            return invalid(format!("lcm(a,b,c) = {} does not divide E = {e}", params.m()));
        }
        Ok(GeneratingSheafSpec { e })
    }

    pub fn e(&self) -> i64 {
        self.e
    }
}

/// φ_E(x) = x + 2x² + … + (E−1)x^{E−1}.
pub fn phi_e(e: i64, x: &Cyclotomic) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(x.order());
    let mut pw = x.clone();
    for j in 1..e {
        acc = acc.add(&pw.scale(&int(j)));
        pw = pw.mul(x);
    }
    acc
}

/// ψ_E(m1,m2,m3,n), evaluated termwise in Q(ζ_n); the total must be rational.
pub fn psi_e(e: i64, m1: i64, m2: i64, m3: i64, n: i64) -> Result<Rational> {
    if n <= 0 {
        return invalid(format!("psi_E needs n > 0, got {n}"));
    }
    let nn = n as u64;
    let step = n / m1.gcd(&n);
    let one = Cyclotomic::one(nn);
    let mut acc = Cyclotomic::zero(nn);
    for k in 1..n {
        if k % step == 0 {
            continue;
        }
        let num = one.add(&zeta_pow(nn, -k * m2));
        let den = one.sub(&zeta_pow(nn, -k * m1));
        let term = num.div(&den)?.mul(&zeta_pow(nn, -k * m3)).mul(&phi_e(e, &zeta_pow(nn, k)));
        acc = acc.add(&term);
    }
    match acc.as_rational() {
        Some(q) => Ok(q),
        None => internal(format!("psi_E({e};{m1},{m2},{m3},{n}) is not rational: {acc}")),
    }
}

/// Top two coefficients of P(O(r), t).
pub fn hilb_top(params: &WppParams, r: i64) -> Result<HilbTop> {
    let d = params.d();
    if r.rem_euclid(d) != 0 {
        return Ok(HilbTop::zero());
    }
    let (a, b, c) = params.weights();
    let m = params.m();
    let abc = a * b * c;
    let quad = rat(d * m * m, 2 * abc);
    let mut inner = rat((2 * r + a + b + c) * d, 2 * abc);
    for (i, j, k) in [(1, 2, 3), (1, 3, 2), (2, 3, 1)] {
        let dij = params.dij(i, j);
        let nn = dij as u64;
        let skip = dij / d;
        let one = Cyclotomic::one(nn);
        let mut s = Cyclotomic::zero(nn);
        for h in 1..dij {
            if h % skip == 0 {
                continue;
            }
            let den = one.sub(&zeta_pow(nn, h * params.hat(k)));
            s = s.add(&zeta_pow(nn, -h * r).div(&den)?);
        }
        let s = match s.as_rational() {
            Some(q) => q,
            None => return internal(format!("omega sum for ({i},{j}) at r = {r} is not rational")),
        };
        inner += s / int(params.hat(i) * params.hat(j));
    }
    Ok(HilbTop { quad, lin: inner * int(m) })
}

/// Top two coefficients of P(O(r) ⊗ E, t).
pub fn hilb_top_e(params: &WppParams, spec: &GeneratingSheafSpec, r: i64) -> HilbTop {
    let (a, b, c) = params.weights();
    let (m, d) = (params.m(), params.d());
    let abc = a * b * c;
    let quad = rat(spec.e * m * m, 2 * abc);
    let lin = (0..spec.e)
        .filter(|u| (r + u).rem_euclid(d) == 0)
        .map(|u| rat((2 * r + 2 * u + a + b + c) * m * d, 2 * abc))
        .fold(Rational::zero(), |x, y| x + y);
    HilbTop { quad, lin }
}

/// #{(i,j,k) ≥ 0 : ai + bj + ck = s}.
pub fn monomial_count(params: &WppParams, s: i64) -> i64 {
    if s < 0 {
        return 0;
    }
    let (a, b, c) = params.weights();
    let mut n = 0;
    for i in 0..=s / a {
        let rest = s - a * i;
        for j in 0..=rest / b {
            if (rest - b * j) % c == 0 {
                n += 1;
            }
        }
    }
    n
}

/// χ(O(r)) = h⁰ + h², the latter by Serre duality with ω = O(−a−b−c).
pub fn chi_oracle(params: &WppParams, r: i64) -> i64 {
    let (a, b, c) = params.weights();
    monomial_count(params, r) + monomial_count(params, -r - a - b - c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbFit {
    pub quad: Rational,
    pub lin: Rational,
    pub constant: Rational,
}

impl HilbFit {
    pub fn top(&self) -> HilbTop {
        HilbTop { quad: self.quad.clone(), lin: self.lin.clone() }
    }
}

/// Quadratic through χ(O(r + mt)) at t = 0,1,2, confirmed at t = 3.
pub fn hilb_fit_oracle(params: &WppParams, r: i64) -> Result<HilbFit> {
    let m = params.m();
    let y: Vec<Rational> = (0..4).map(|t| int(chi_oracle(params, r + m * t))).collect();
    let quad = (&y[2] - &y[1] * int(2) + &y[0]) / int(2);
    let lin = &y[1] - &y[0] - &quad;
    let constant = y[0].clone();
    let at3 = &quad * int(9) + &lin * int(3) + &constant;
    if at3 != y[3] {
        return internal(format!("χ(O({r}+{m}t)) is not quadratic in t on {params:?}"));
    }
    Ok(HilbFit { quad, lin, constant })
}

pub fn slope_mu(top: &HilbTop) -> Result<Rational> {
    if top.quad.is_zero() {
        return invalid("slope of a sheaf with vanishing quadratic term");
    }
    Ok(&top.lin / &top.quad)
}

/// P(F ⊗ E, t) modulo constants for a class Σ c_j g^j = Σ c_j [O(−j)].
pub fn kclass_hilb_top(k: &KClass, spec: &GeneratingSheafSpec) -> HilbTop {
    k.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(HilbTop::zero(), |acc, (j, c)| acc.add(&hilb_top_e(k.params(), spec, -(j as i64)).scale(c)))
}

/// A = −(c1 + ΣΔ)/2 after checking divisibility, parity and A ≡ λ mod d.
pub fn rank2_a(params: &WppParams, c1: i64, lambda: i64, delta: [i64; 3]) -> Result<i64> {
    let [d1, d2, d3] = delta;
    if delta.iter().any(|&x| x <= 0) {
        return invalid("widths must be positive");
    }
    if d1 % params.b() != 0 || d2 % params.c() != 0 || d3 % params.a() != 0 {
        return invalid(format!("divisibility b|Δ1, c|Δ2, a|Δ3 fails for {delta:?} on {params:?}"));
    }
    let s = c1 + d1 + d2 + d3;
    if s % 2 != 0 {
        return invalid(format!("c1 + ΣΔ = {s} is odd"));
    }
    let a = -s / 2;
    if (a - lambda).rem_euclid(params.d()) != 0 {
        return invalid(format!("A = {a} is not congruent to λ = {lambda} mod {}", params.d()));
    }
    Ok(a)
}

/// The constant term P_E(F,0) of the modified Hilbert polynomial of a type I
/// bundle with data (c1, λ, Δ).
pub fn rank2_constant_term(params: &WppParams, spec: &GeneratingSheafSpec, c1: i64, lambda: i64, delta: [i64; 3]) -> Result<Rational> {
    let av = rank2_a(params, c1, lambda, delta)?;
    let (a, b, c) = params.weights();
    let d = params.d();
    let e = spec.e;
    let [d1, d2, d3] = delta;
    let ad = av.rem_euclid(d);
    let abc_sum = a + b + c;
    let mut brace = rat(c1 * c1 + d1 * d1 + d2 * d2 + d3 * d3, 4);
    brace -= rat(d1 * d2 + d2 * d3 + d3 * d1, 2);
    brace += rat(abc_sum * c1, 2);
    brace += rat(a * a + b * b + c * c, 6);
    brace += rat(a * b + b * c + c * a, 2);
    brace += int((c1 + abc_sum + e - d) * ad);
    brace += rat((c1 + abc_sum) * (e - d), 2);
    brace += int(ad * ad);
    brace += rat(e * e, 3) - rat(e * d, 2) + rat(d * d, 6);
    let mut total = brace * rat(e, a * b * c);
    total += psi_e(e, c, d2, av, params.d12())? / int(a * b);
    total += psi_e(e, b, d1, av, params.d13())? / int(a * c);
    total += psi_e(e, a, d3, av, params.d23())? / int(b * c);
    if !total.is_integer() {
        return internal(format!("P_E(F,0) = {} is not an integer for Δ = {delta:?}, c1 = {c1}", rational_to_string(&total)));
    }
    Ok(total)
}

/// Σ_{u<E} hilb_top(r+u), the additivity cross-check for [`hilb_top_e`].
pub fn hilb_top_e_by_sum(params: &WppParams, spec: &GeneratingSheafSpec, r: i64) -> Result<HilbTop> {
    let mut acc = HilbTop::zero();
    for u in 0..spec.e {
        acc = acc.add(&hilb_top(params, r + u)?);
    }
    Ok(acc)
}
