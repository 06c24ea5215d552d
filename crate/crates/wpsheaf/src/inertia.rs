//! Components of the inertia stack and the orbifold Chern character.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Result};
use crate::exact_arith::{int, rat, rational_to_string, zeta_pow, Cyclotomic, Rational};
use crate::kgroup::{KClass, WppParams};
use crate::sheaf_model::TypeIBundle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectorKind {
    TwoDim,
    /// Pair i < j of chart indices.
    OneDim(usize, usize),
    ZeroDim(usize),
}

impl SectorKind {
    pub fn dim(&self) -> usize {
        match self {
            SectorKind::TwoDim => 2,
            SectorKind::OneDim(..) => 1,
            SectorKind::ZeroDim(_) => 0,
        }
    }

    pub fn label(&self) -> String {
        match self {
            SectorKind::TwoDim => "D".into(),
            SectorKind::OneDim(i, j) => format!("D{i}{j}"),
            SectorKind::ZeroDim(i) => format!("D{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub f: Rational,
    pub kind: SectorKind,
}

impl Sector {
    pub fn dim(&self) -> usize {
        self.kind.dim()
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind.label(), rational_to_string(&self.f))
    }
}

/// The sets D, D_ij, D_i as one list ordered by f.  The f values are
/// distinct across kinds, so f alone identifies a sector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorIndex {
    sectors: Vec<Sector>,
}

fn fractions(n: i64) -> BTreeSet<Rational> {
    (0..n).map(|l| rat(l, n)).collect()
}

pub fn sectors(params: &WppParams) -> SectorIndex {
    let d = fractions(params.d());
    let mut out: Vec<Sector> = d.iter().map(|f| Sector { f: f.clone(), kind: SectorKind::TwoDim }).collect();
    let mut pair_sets = Vec::new();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let dij: BTreeSet<Rational> = fractions(params.dij(i, j)).difference(&d).cloned().collect();
        out.extend(dij.iter().map(|f| Sector { f: f.clone(), kind: SectorKind::OneDim(i, j) }));
        pair_sets.push(((i, j), dij));
    }
    for i in 1..=3 {
        let mut s: BTreeSet<Rational> = fractions(params.hat(i)).difference(&d).cloned().collect();
        for ((p, q), set) in &pair_sets {
            if *p == i || *q == i {
                s = s.difference(set).cloned().collect();
            }
        }
        out.extend(s.iter().map(|f| Sector { f: f.clone(), kind: SectorKind::ZeroDim(i) }));
    }
    out.sort_by(|x, y| x.f.cmp(&y.f).then(x.kind.cmp(&y.kind)));
    SectorIndex { sectors: out }
}

impl SectorIndex {
    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn position(&self, f: &Rational) -> Option<usize> {
        self.sectors.iter().position(|s| &s.f == f)
    }

    pub fn count(&self, pred: impl Fn(&SectorKind) -> bool) -> usize {
        self.sectors.iter().filter(|s| pred(&s.kind)).count()
    }
}

/// e^{-2π√-1 f k} in Q(ζ_m).
fn eigen(m: i64, f: &Rational, k: i64) -> Cyclotomic {
    let fm = f * int(m);
    debug_assert!(fm.is_integer());
    let e = fm.to_integer();
    let e: i64 = i64::try_from(e).expect("sector numerator fits i64");
    zeta_pow(m as u64, -(e * k).rem_euclid(m))
}

/// Per-sector truncated polynomial in the hyperplane class; `coeffs[k]` is the
/// coefficient of x^k, i.e. the entry of codegree dim − k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernVector {
    index: SectorIndex,
    order: u64,
    coeffs: Vec<Vec<Cyclotomic>>,
}

impl ChernVector {
    pub fn zero(params: &WppParams) -> ChernVector {
        let index = sectors(params);
        let order = params.m() as u64;
        let coeffs = index.sectors.iter().map(|s| vec![Cyclotomic::zero(order); s.dim() + 1]).collect();
        ChernVector { index, order, coeffs }
    }

    pub fn index(&self) -> &SectorIndex {
        &self.index
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficient list of sector `s` in ascending powers of x.
    pub fn coeffs(&self, s: usize) -> &[Cyclotomic] {
        &self.coeffs[s]
    }

    /// Entry of codegree k, absent when k exceeds the sector dimension.
    pub fn codegree(&self, s: usize, k: usize) -> Option<&Cyclotomic> {
        let dim = self.index.sectors[s].dim();
        if k > dim {
            return None;
        }
        Some(&self.coeffs[s][dim - k])
    }

    fn set(&mut self, s: usize, power: usize, v: Cyclotomic) {
        self.coeffs[s][power] = v.embed(self.order);
    }

    pub fn add(&self, o: &ChernVector) -> ChernVector {
        let mut out = self.clone();
        for (s, row) in out.coeffs.iter_mut().enumerate() {
            for (k, c) in row.iter_mut().enumerate() {
                *c = c.add(&o.coeffs[s][k]);
            }
        }
        out
    }

    /// Sectorwise product truncated at each sector's dimension.
    pub fn mul(&self, o: &ChernVector) -> ChernVector {
        let mut out = self.clone();
        for (s, row) in out.coeffs.iter_mut().enumerate() {
            let n = row.len();
            for (k, slot) in row.iter_mut().enumerate() {
                let mut acc = Cyclotomic::zero(self.order);
                for i in 0..=k.min(n - 1) {
                    acc = acc.add(&self.coeffs[s][i].mul(&o.coeffs[s][k - i]));
                }
                *slot = acc;
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let records: Vec<Value> = self
            .index
            .sectors
            .iter()
            .zip(&self.coeffs)
            .map(|(s, row)| {
                json!({
                    "f": [s.f.numer().to_string(), s.f.denom().to_string()],
                    "kind": s.kind.label(),
                    "coeffs": row.iter().map(cyc_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        Value::Array(records)
    }
}

pub fn cyc_json(c: &Cyclotomic) -> Value {
    json!({ "order": c.order(), "coords": c.coords().iter().map(rational_to_string).collect::<Vec<_>>() })
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, row) in self.index.sectors.iter().zip(&self.coeffs) {
            let parts: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{s}: [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

/// g ↦ e^{-2π√-1 f} e^{-x} on each sector, extended linearly.
pub fn tch_of_kclass(k: &KClass) -> ChernVector {
    let params = k.params();
    let m = params.m();
    let mut out = ChernVector::zero(params);
    let secs = out.index.sectors.clone();
    for (s, sec) in secs.iter().enumerate() {
        for power in 0..=sec.dim() {
            let fact: i64 = (1..=power as i64).product();
            let mut acc = Cyclotomic::zero(m as u64);
            for (j, c) in k.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let j = j as i64;
                let w = int((-j).pow(power as u32)) * c / int(fact);
                acc = acc.add(&eigen(m, &sec.f, j).scale(&w));
            }
            out.set(s, power, acc);
        }
    }
    out
}

/// Closed-form orbifold Chern character of an indecomposable type I bundle
/// with A_1 = A_2 = 0, A_3 = A.
pub fn tch_rank2_closed_form(params: &WppParams, datum: &TypeIBundle) -> Result<ChernVector> {
    datum.check_divisibility(params)?;
    if datum.a[0] != 0 || datum.a[1] != 0 {
        return invalid("closed form needs A_1 = A_2 = 0");
    }
    if datum.delta.iter().any(|&x| x <= 0) {
        return invalid("closed form needs all widths positive");
    }
    let [p1, p2, p3] = &datum.points;
    if p1 == p2 || p2 == p3 || p3 == p1 {
        return invalid("closed form needs mutually distinct points");
    }
    let a = datum.a[2];
    let dl = datum.delta;
    let sum: i64 = dl.iter().sum();
    let m = params.m();
    let mut out = ChernVector::zero(params);
    let secs = out.index.sectors.clone();
    let c = |q: Rational| Cyclotomic::from_rational(m as u64, q);
    for (s, sec) in secs.iter().enumerate() {
        let f = &sec.f;
        let ea = eigen(m, f, a);
        match sec.kind {
            SectorKind::TwoDim => {
                out.set(s, 0, ea.scale(&int(2)));
                out.set(s, 1, ea.scale(&int(-(2 * a + sum))));
                let sq: i64 = dl.iter().map(|x| x * x).sum();
                let x2 = int(a * a + sum * a) + rat(sq, 2);
                out.set(s, 2, ea.scale(&x2));
            }
            SectorKind::OneDim(p, q) => {
                // (i,j) runs over (1,2), (2,3), (3,1); the twisted width is Δ_j
                let (i, j) = if (p, q) == (1, 3) { (3, 1) } else { (p, q) };
                let k = 6 - i - j;
                let w = eigen(m, f, dl[j - 1]);
                let onepw = c(Rational::one()).add(&w);
                out.set(s, 0, ea.mul(&onepw));
                let lin = onepw
                    .scale(&int(a))
                    .add(&c(int(dl[i - 1])))
                    .add(&w.scale(&int(dl[j - 1])))
                    .add(&c(int(dl[k - 1])));
                out.set(s, 1, ea.mul(&lin).neg());
            }
            SectorKind::ZeroDim(i) => {
                let next = i % 3;
                let v = eigen(m, f, dl[i - 1]).add(&eigen(m, f, dl[next]));
                out.set(s, 0, ea.mul(&v));
            }
        }
    }
    Ok(out)
}
