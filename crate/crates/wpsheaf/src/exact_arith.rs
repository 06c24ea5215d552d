//! Exact scalars: big rationals and elements of cyclotomic fields Q(ζ_n).
//!
//! A cyclotomic element of order `n` is a polynomial in ζ_n reduced modulo
//! the n-th cyclotomic polynomial, so it has exactly φ(n) coordinates.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{invalid, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational as an exact `i64`, if it is an integer in range.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !q.is_integer() {
        return None;
    }
    i64::try_from(q.to_integer()).ok()
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense polynomials over Q, coefficients in ascending degree.
pub mod poly {
    use super::*;

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rational> = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => Rational::zero(),
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn neg(a: &[Rational]) -> Vec<Rational> {
        a.iter().map(|c| -c).collect()
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        add(a, &neg(b))
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
        let mut out: Vec<Rational> = a.iter().map(|c| c * s).collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn divrem(a: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut d = d.to_vec();
        trim(&mut d);
        assert!(!d.is_empty(), "polynomial division by zero");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < d.len() {
            return (Vec::new(), r);
        }
        let lead = d.last().unwrap().clone();
        let mut q = vec![Rational::zero(); r.len() - d.len() + 1];
        while r.len() >= d.len() {
            let shift = r.len() - d.len();
            let c = r.last().unwrap() / &lead;
            for (i, di) in d.iter().enumerate() {
                r[shift + i] -= &c * di;
            }
            q[shift] = c;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[Rational], d: &[Rational]) -> Vec<Rational> {
        divrem(a, d).1
    }

    /// Inverse of `a` modulo `m` via extended Euclid; `None` when not coprime.
    pub fn inverse_mod(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
        let (mut r0, mut r1) = (m.to_vec(), rem(a, m));
        let (mut s0, mut s1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
        trim(&mut r0);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        Some(rem(&scale(&s0, &(Rational::one() / c)), m))
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n0 = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0 % p == 0 {
            while n0 % p == 0 {
                n0 /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n0 > 1 {
        out -= out / n0;
    }
    out
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials whose divisor is monic.
fn int_poly_div_monic(a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - d.len() + 1];
    for shift in (0..q.len()).rev() {
        let c = r[shift + d.len() - 1].clone();
        for (i, di) in d.iter().enumerate() {
            r[shift + i] -= &c * di;
        }
        q[shift] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

type CycCache = RwLock<HashMap<u64, Arc<Vec<BigInt>>>>;

fn cyc_cache() -> &'static CycCache {
    static CACHE: OnceLock<CycCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, ascending coefficients.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    if let Some(p) = cyc_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in 1..n {
        if n % d == 0 {
            den = int_poly_mul(&den, &cyclotomic_poly(d));
        }
    }
    let p = Arc::new(int_poly_div_monic(&num, &den));
    cyc_cache().write().unwrap().insert(n, p.clone());
    p
}

fn cyc_modulus(n: u64) -> Vec<Rational> {
    cyclotomic_poly(n).iter().map(|c| Rational::from_integer(c.clone())).collect()
}

/// Element of Q(ζ_n) in power-basis coordinates modulo Φ_n.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn from_poly(order: u64, p: &[Rational]) -> Cyclotomic {
        let mut r = poly::rem(p, &cyc_modulus(order));
        r.resize(euler_phi(order) as usize, Rational::zero());
        Cyclotomic { order, coeffs: r }
    }

    pub fn from_coords(order: u64, coords: Vec<Rational>) -> Result<Cyclotomic> {
        if order == 0 {
            return invalid("cyclotomic order must be positive");
        }
        if coords.len() != euler_phi(order) as usize {
            return invalid(format!("order {order} needs {} coordinates", euler_phi(order)));
        }
        Ok(Cyclotomic { order, coeffs: coords })
    }

    pub fn from_rational(order: u64, q: Rational) -> Cyclotomic {
        Cyclotomic::from_poly(order, &[q])
    }

    pub fn zero(order: u64) -> Cyclotomic {
        Cyclotomic::from_poly(order, &[])
    }

    pub fn one(order: u64) -> Cyclotomic {
        Cyclotomic::from_rational(order, Rational::one())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-express in Q(ζ_big) via ζ_n ↦ ζ_big^{big/n}.
    pub fn embed(&self, big: u64) -> Cyclotomic {
        assert!(big % self.order == 0, "cannot embed order {} into {}", self.order, big);
        if big == self.order {
            return self.clone();
        }
        let step = (big / self.order) as usize;
        let mut p = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Cyclotomic::from_poly(big, &p)
    }

    fn common(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let n = a.order.lcm(&b.order);
        (a.embed(n), b.embed(n))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Cyclotomic { order: a.order, coeffs }
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, other);
        Cyclotomic::from_poly(a.order, &poly::mul(&a.coeffs, &b.coeffs))
    }

    pub fn scale(&self, q: &Rational) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return invalid("inverse of zero in a cyclotomic field");
        }
        let m = cyc_modulus(self.order);
        match poly::inverse_mod(&self.coeffs, &m) {
            Some(p) => Ok(Cyclotomic::from_poly(self.order, &p)),
            None => invalid("element is not invertible modulo the cyclotomic polynomial"),
        }
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        let (a, b) = Cyclotomic::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", rational_to_string(&q));
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = rational_to_string(c);
            parts.push(match i {
                0 => s,
                1 => format!("{s}*z{}", self.order),
                _ => format!("{s}*z{}^{i}", self.order),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// ζ_n^k.
pub fn zeta_pow(n: u64, k: i64) -> Cyclotomic {
    let e = k.rem_euclid(n as i64) as usize;
    let mut p = vec![Rational::zero(); e + 1];
    p[e] = Rational::one();
    Cyclotomic::from_poly(n, &p)
}

pub fn cyc_add(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    a.add(b)
}

pub fn cyc_mul(a: &Cyclotomic, b: &Cyclotomic) -> Cyclotomic {
    a.mul(b)
}

pub fn cyc_inv(a: &Cyclotomic) -> Result<Cyclotomic> {
    a.inv()
}

pub fn as_rational(a: &Cyclotomic) -> Option<Rational> {
    a.as_rational()
}

/// gcd on non-negative machine integers.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Sign-aware helper used by series code.
pub fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), ip(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(2), ip(&[1, 1]));
        assert_eq!(*cyclotomic_poly(6), ip(&[1, -1, 1]));
        assert_eq!(*cyclotomic_poly(12), ip(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn product_over_divisors_is_xn_minus_one() {
        for n in 1..=30u64 {
            let mut prod = ip(&[1]);
            for d in 1..=n {
                if n % d == 0 {
                    prod = int_poly_mul(&prod, &cyclotomic_poly(d));
                }
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = BigInt::from(-1);
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_pow(2, 1).as_rational(), Some(int(-1)));
        assert_eq!(zeta_pow(4, 2).as_rational(), Some(int(-1)));
        let z3 = zeta_pow(3, 1);
        assert_eq!(z3.coords(), &[int(0), int(1)]);
        assert_eq!(zeta_pow(3, -1), zeta_pow(3, 2));
    }

    #[test]
    fn inverse_examples() {
        let m1 = Cyclotomic::from_rational(1, int(-1));
        assert_eq!(cyc_inv(&m1).unwrap(), m1);
        assert_eq!(cyc_mul(&zeta_pow(3, 1), &zeta_pow(3, 2)), Cyclotomic::one(3));
        let x = Cyclotomic::one(3).sub(&zeta_pow(3, 1));
        let expect = Cyclotomic::from_rational(3, int(2)).add(&zeta_pow(3, 1)).scale(&rat(1, 3));
        assert_eq!(x.inv().unwrap(), expect);
        assert!(Cyclotomic::zero(5).inv().is_err());
    }

    #[test]
    fn rationality() {
        assert_eq!(Cyclotomic::from_rational(1, rat(7, 2)).as_rational(), Some(rat(7, 2)));
        assert_eq!(zeta_pow(3, 1).add(&zeta_pow(3, 2)).as_rational(), Some(int(-1)));
        assert_eq!(zeta_pow(4, 1).as_rational(), None);
    }

    #[test]
    fn mixed_orders_embed() {
        // ζ_2 = ζ_4^2 and ζ_3 * ζ_2 lives in order 6
        assert_eq!(zeta_pow(2, 1), zeta_pow(4, 2));
        let p = zeta_pow(3, 1).mul(&zeta_pow(2, 1));
        assert_eq!(p.order(), 6);
        assert_eq!(p, zeta_pow(6, 5));
    }

    #[test]
    fn galois_sums() {
        for n in 1..=24u64 {
            for m in 0..=24i64 {
                let mut s = Cyclotomic::zero(n);
                for k in 1..n as i64 {
                    s = s.add(&zeta_pow(n, k * m));
                }
                let expect = if m % n as i64 == 0 { n as i64 - 1 } else { -1 };
                assert_eq!(s.as_rational(), Some(int(expect)), "n={n} m={m}");
            }
        }
    }

    proptest! {
        #[test]
        fn mul_by_inverse_is_one(n in 1u64..=24, raw in proptest::collection::vec((-9i64..=9, 1i64..=5), 24)) {
            let phi = euler_phi(n) as usize;
            let coords: Vec<Rational> = raw[..phi].iter().map(|&(p, q)| rat(p, q)).collect();
            let a = Cyclotomic::from_coords(n, coords).unwrap();
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a.mul(&a.inv().unwrap()), Cyclotomic::one(n));
        }

        #[test]
        fn field_ops_commute(n in 1u64..=12, x in -5i64..5, y in -5i64..5, k in 0i64..12) {
            let a = Cyclotomic::from_rational(n, int(x)).add(&zeta_pow(n, k));
            let b = zeta_pow(n, 2 * k + 1).scale(&int(y));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).sub(&b), a);
        }
    }
}
