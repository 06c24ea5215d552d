//! Window-truncated stacky S-families of rank-1 torsion free sheaves and rank-2
//! bundles on the three charts [C²/μ_î], with the gluing verifier and a
//! dévissage computation of K-classes.
//!
//! Vector spaces are never stored as matrices.  A graded piece is a weight in
//! Z_N, a dimension, and for rank ≤ 2 the line it spans inside the generic
//! fibre when it is one dimensional.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{invalid, Result, WppError};
use crate::exact_arith::{int, rational_to_string, Rational};
use crate::kgroup::{line_bundle_class, structure_sheaf_point, KClass, WppParams};
use crate::partitions::Partition;

/// A point (x:y) of P¹, normalized so that the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    x: Rational,
    y: Rational,
}

impl ProjPoint {
    pub fn new(x: Rational, y: Rational) -> Result<ProjPoint> {
        if x.is_zero() && y.is_zero() {
            return invalid("(0:0) is not a point of P^1");
        }
        if x.is_zero() {
            return Ok(ProjPoint { x, y: Rational::one() });
        }
        Ok(ProjPoint { y: &y / &x, x: Rational::one() })
    }

    pub fn from_ints(x: i64, y: i64) -> Result<ProjPoint> {
        ProjPoint::new(int(x), int(y))
    }

    pub fn coords(&self) -> (&Rational, &Rational) {
        (&self.x, &self.y)
    }

    /// (1:0), (0:1), (1:1).
    pub fn standard_triple() -> [ProjPoint; 3] {
        [ProjPoint::from_ints(1, 0).unwrap(), ProjPoint::from_ints(0, 1).unwrap(), ProjPoint::from_ints(1, 1).unwrap()]
    }

    pub fn to_json(&self) -> Value {
        json!([rational_to_string(&self.x), rational_to_string(&self.y)])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", rational_to_string(&self.x), rational_to_string(&self.y))
    }
}

/// Data (A_i, Δ_i, p_i) of a rank-2 toric vector bundle whose charts carry a
/// single box summand each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIBundle {
    pub a: [i64; 3],
    pub delta: [i64; 3],
    pub points: [ProjPoint; 3],
}

impl TypeIBundle {
    pub fn new(a: [i64; 3], delta: [i64; 3], points: [ProjPoint; 3]) -> TypeIBundle {
        TypeIBundle { a, delta, points }
    }

    /// Δ_i ≥ 0 and b | Δ1, c | Δ2, a | Δ3.
    pub fn check_divisibility(&self, params: &WppParams) -> Result<()> {
        let [d1, d2, d3] = self.delta;
        if self.delta.iter().any(|&x| x < 0) {
            return invalid(format!("widths must be nonnegative, got {:?}", self.delta));
        }
        if d1 % params.b() != 0 || d2 % params.c() != 0 || d3 % params.a() != 0 {
            return invalid(format!("need b | Δ1, c | Δ2, a | Δ3; got Δ = {:?} on {params:?}", self.delta));
        }
        Ok(())
    }

    pub fn points_distinct(&self) -> bool {
        let [p1, p2, p3] = &self.points;
        p1 != p2 && p2 != p3 && p3 != p1
    }
}

/// Reflexive hull L_(A,B,C) with a partition cut out at each chart corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank1Sheaf {
    pub abc: [i64; 3],
    pub lambdas: [Partition; 3],
}

impl Rank1Sheaf {
    pub fn new(abc: [i64; 3], lambdas: [Partition; 3]) -> Rank1Sheaf {
        Rank1Sheaf { abc, lambdas }
    }

    pub fn line_bundle(abc: [i64; 3]) -> Rank1Sheaf {
        Rank1Sheaf { abc, lambdas: std::array::from_fn(|_| Partition::empty()) }
    }
}

/// Box element (i/n1, j/n2) of chart `chart`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxElement {
    pub chart: usize,
    pub i: i64,
    pub j: i64,
    pub n1: i64,
    pub n2: i64,
}

impl BoxElement {
    pub fn q1(&self) -> Rational {
        Rational::new(self.i.into(), self.n1.into())
    }

    pub fn q2(&self) -> Rational {
        Rational::new(self.j.into(), self.n2.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Span {
    Full,
    Line(ProjPoint),
}

impl Span {
    fn contains(&self, o: &Span) -> bool {
        match (self, o) {
            (Span::Full, _) => true,
            (Span::Line(p), Span::Line(q)) => p == q,
            (Span::Line(_), Span::Full) => false,
        }
    }
}

/// Fine-graded piece: `weight` is normalized, i.e. the Z_N weight at lattice
/// point (X, Y) minus X·w1 + Y·w2, so it is constant along the maps x, y.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub weight: i64,
    pub dim: u32,
    pub span: Span,
}

fn canonicalize(mut pieces: Vec<Piece>) -> Vec<Piece> {
    pieces.sort();
    let mut out: Vec<Piece> = Vec::new();
    for p in pieces {
        if let Some(last) = out.last_mut() {
            if last.weight == p.weight {
                last.dim += p.dim;
                last.span = Span::Full;
                continue;
            }
        }
        out.push(p);
    }
    out
}

fn intersect(a: &[Piece], b: &[Piece]) -> Vec<Piece> {
    let mut out = Vec::new();
    for p in a {
        for q in b.iter().filter(|q| q.weight == p.weight) {
            let piece = match (&p.span, &q.span) {
                (Span::Full, _) if q.dim <= p.dim => Some(q.clone()),
                (_, Span::Full) if p.dim <= q.dim => Some(p.clone()),
                (Span::Full, _) => Some(p.clone()),
                (Span::Line(x), Span::Line(y)) if x == y => Some(p.clone()),
                _ => None,
            };
            out.extend(piece);
        }
    }
    canonicalize(out)
}

/// Modulus, color steps, box, corner and generator weight of L_(A,B,C) on a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartLineData {
    pub modulus: i64,
    pub w: (i64, i64),
    pub box_: (i64, i64),
    pub corner: (i64, i64),
    pub weight: i64,
}

pub fn chart_line_data(params: &WppParams, chart: usize, abc: [i64; 3]) -> ChartLineData {
    let (a, b, c) = params.weights();
    let [aa, bb, cc] = abc;
    let (modulus, w, (u, su), (v, sv)) = match chart {
        1 => (a, (b, c), (aa, b), (bb, c)),
        2 => (b, (c, a), (bb, c), (cc, a)),
        3 => (c, (a, b), (cc, a), (aa, b)),
        _ => panic!("chart index {chart} out of range 1..=3"),
    };
    ChartLineData {
        modulus,
        w,
        box_: (u.mod_floor(&su), v.mod_floor(&sv)),
        corner: (Integer::div_floor(&u, &su), Integer::div_floor(&v, &sv)),
        weight: (aa + bb + cc).rem_euclid(modulus),
    }
}

fn chart_shape(params: &WppParams, chart: usize) -> (i64, (i64, i64)) {
    let d = chart_line_data(params, chart, [0, 0, 0]);
    (d.modulus, d.w)
}

type CellKey = ((i64, i64), i64, i64);

/// S-family of one chart on the square window [−W, W]².  Points below the
/// window are zero and points above it equal the window edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSFamily {
    chart: usize,
    modulus: i64,
    w: (i64, i64),
    window: i64,
    cells: BTreeMap<CellKey, Vec<Piece>>,
}

impl TruncatedSFamily {
    fn empty(params: &WppParams, chart: usize, window: i64) -> TruncatedSFamily {
        let (modulus, w) = chart_shape(params, chart);
        TruncatedSFamily { chart, modulus, w, window, cells: BTreeMap::new() }
    }

    fn push(&mut self, key: CellKey, piece: Piece) {
        let slot = self.cells.entry(key).or_default();
        slot.push(piece);
        *slot = canonicalize(std::mem::take(slot));
    }

    fn normalized(&self, corner: (i64, i64), weight: i64) -> i64 {
        (weight - corner.0 * self.w.0 - corner.1 * self.w.1).rem_euclid(self.modulus)
    }

    /// Adds the staircase of a line bundle with `removed` cut out of the corner.
    fn add_staircase(&mut self, data: &ChartLineData, removed: &Partition, span: Span) {
        let nw = self.normalized(data.corner, data.weight);
        let wn = self.window;
        for x in data.corner.0.max(-wn)..=wn {
            for y in data.corner.1.max(-wn)..=wn {
                if removed.contains(x - data.corner.0, y - data.corner.1) {
                    continue;
                }
                self.push((data.box_, x, y), Piece { weight: nw, dim: 1, span: span.clone() });
            }
        }
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn steps(&self) -> (i64, i64) {
        self.w
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Pieces at a lattice point; coordinates above the window are clamped.
    pub fn pieces(&self, bx: (i64, i64), x: i64, y: i64) -> &[Piece] {
        let wn = self.window;
        if x < -wn || y < -wn {
            return &[];
        }
        self.cells.get(&(bx, x.min(wn), y.min(wn))).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, bx: (i64, i64), x: i64, y: i64) -> u32 {
        self.pieces(bx, x, y).iter().map(|p| p.dim).sum()
    }

    /// Box summands that are nonzero somewhere in the window.
    pub fn boxes(&self) -> BTreeSet<(i64, i64)> {
        self.cells.keys().map(|k| k.0).collect()
    }

    pub fn box_element(&self, bx: (i64, i64)) -> BoxElement {
        BoxElement { chart: self.chart, i: bx.0, j: bx.1, n1: self.w.0, n2: self.w.1 }
    }

    /// Total dimension over all boxes at (∞, ∞).
    pub fn rank(&self) -> u32 {
        self.boxes().iter().map(|b| self.dim(*b, self.window, self.window)).sum()
    }

    /// Absolute Z_N weight of a piece sitting at (x, y).
    pub fn absolute_weight(&self, p: &Piece, x: i64, y: i64) -> i64 {
        (p.weight + x * self.w.0 + y * self.w.1).rem_euclid(self.modulus)
    }

    /// Dense dump of the window, one record per nonzero cell.
    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|((bx, x, y), ps)| {
                let el = self.box_element(*bx);
                json!({
                    "box": [rational_to_string(&el.q1()), rational_to_string(&el.q2())],
                    "l": [x, y],
                    "pieces": ps.iter().map(|p| json!({
                        "weight": self.absolute_weight(p, *x, *y),
                        "dim": p.dim,
                        "span": match &p.span { Span::Full => Value::from("full"), Span::Line(q) => q.to_json() },
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "chart": self.chart, "modulus": self.modulus, "window": self.window, "cells": cells })
    }

    /// Every piece maps into both neighbours with the same normalized weight.
    pub fn torsion_free_check(&self) -> bool {
        let wn = self.window;
        self.cells.iter().all(|((bx, x, y), ps)| {
            let nbrs: Vec<&[Piece]> = [(x + 1, *y), (*x, y + 1)]
                .iter()
                .filter(|(u, v)| *u <= wn && *v <= wn)
                .map(|(u, v)| self.pieces(*bx, *u, *v))
                .collect();
            ps.iter().all(|p| {
                nbrs.iter().all(|n| n.iter().any(|q| q.weight == p.weight && q.dim >= p.dim && q.span.contains(&p.span)))
            })
        })
    }

    /// Zero along the lower edges, constant across the upper edges.
    pub fn coherence_check(&self) -> bool {
        let wn = self.window;
        let boxes = self.boxes();
        boxes.iter().all(|&bx| {
            (-wn..=wn).all(|t| {
                self.pieces(bx, -wn, t).is_empty()
                    && self.pieces(bx, t, -wn).is_empty()
                    && self.pieces(bx, wn, t) == self.pieces(bx, wn - 1, t)
                    && self.pieces(bx, t, wn) == self.pieces(bx, t, wn - 1)
            })
        })
    }

    /// F(x,y) = F(x,∞) ∩ F(∞,y).
    pub fn reflexive_check(&self) -> bool {
        let wn = self.window;
        self.boxes().iter().all(|&bx| {
            (-wn..=wn).all(|x| {
                (-wn..=wn).all(|y| self.pieces(bx, x, y) == intersect(self.pieces(bx, x, wn), self.pieces(bx, wn, y)).as_slice())
            })
        })
    }
}

fn check_window(window: i64, needed: i64) -> Result<()> {
    if window < needed {
        return invalid(format!("window {window} is smaller than the stabilizing window {needed}"));
    }
    Ok(())
}

fn max_abs(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// max|A_i| + ΣΔ + partition legs + 2.
pub fn minimal_window(abc: [i64; 3], delta: [i64; 3], lambdas: &[Partition]) -> i64 {
    let legs = lambdas.iter().map(|l| l.max_leg() as i64).max().unwrap_or(0);
    max_abs(&abc) + delta.iter().sum::<i64>() + legs + 2
}

pub fn rank1_window(sheaf: &Rank1Sheaf) -> i64 {
    minimal_window(sheaf.abc, [0; 3], &sheaf.lambdas)
}

pub fn typei_window(datum: &TypeIBundle) -> i64 {
    let top: Vec<i64> = (0..3).map(|i| datum.a[i] + datum.delta[i]).collect();
    minimal_window(datum.a, [0; 3], &[]).max(minimal_window([top[0], top[1], top[2]], datum.delta, &[]))
}

pub fn rank1_sfamily(params: &WppParams, sheaf: &Rank1Sheaf, chart: usize, window: i64) -> Result<TruncatedSFamily> {
    let s = chart_line_data(params, chart, sheaf.abc).weight;
    rank1_sfamily_with_weight(params, sheaf, chart, window, s)
}

/// As [`rank1_sfamily`] but with the generator placed at fine weight `s`
/// instead of A+B+C mod î.
pub fn rank1_sfamily_with_weight(params: &WppParams, sheaf: &Rank1Sheaf, chart: usize, window: i64, s: i64) -> Result<TruncatedSFamily> {
    check_window(window, rank1_window(sheaf))?;
    let mut data = chart_line_data(params, chart, sheaf.abc);
    data.weight = s.rem_euclid(data.modulus);
    let mut f = TruncatedSFamily::empty(params, chart, window);
    f.add_staircase(&data, &sheaf.lambdas[chart - 1], Span::Full);
    Ok(f)
}

/// L_(A) ⊕ L_(A'), summands labelled by the coordinate lines of C².
pub fn line_sum_sfamily(params: &WppParams, first: [i64; 3], second: [i64; 3], chart: usize, window: i64) -> Result<TruncatedSFamily> {
    check_window(window, minimal_window(first, [0; 3], &[]).max(minimal_window(second, [0; 3], &[])))?;
    let [e1, e2, _] = ProjPoint::standard_triple();
    let mut f = TruncatedSFamily::empty(params, chart, window);
    f.add_staircase(&chart_line_data(params, chart, first), &Partition::empty(), Span::Line(e1));
    f.add_staircase(&chart_line_data(params, chart, second), &Partition::empty(), Span::Line(e2));
    Ok(f)
}

/// Widths (in lattice steps) and points of the two filtrations on a chart.
fn typei_chart(params: &WppParams, datum: &TypeIBundle, chart: usize) -> ((i64, i64), (ProjPoint, ProjPoint)) {
    let [d1, d2, d3] = datum.delta;
    let [p1, p2, p3] = datum.points.clone();
    match chart {
        1 => ((d1 / params.b(), d2 / params.c()), (p1, p2)),
        2 => ((d2 / params.c(), d3 / params.a()), (p2, p3)),
        3 => ((d3 / params.a(), d1 / params.b()), (p3, p1)),
        _ => panic!("chart index {chart} out of range 1..=3"),
    }
}

#[derive(Clone, Debug)]
enum Filt {
    Zero,
    Line(ProjPoint),
    Full,
}

fn filt(t: i64, start: i64, width: i64, p: &ProjPoint) -> Filt {
    if t < start {
        Filt::Zero
    } else if t < start + width {
        Filt::Line(p.clone())
    } else {
        Filt::Full
    }
}

fn filt_meet(u: Filt, v: Filt) -> Filt {
    match (u, v) {
        (Filt::Zero, _) | (_, Filt::Zero) => Filt::Zero,
        (Filt::Full, x) | (x, Filt::Full) => x,
        (Filt::Line(p), Filt::Line(q)) => {
            if p == q {
                Filt::Line(p)
            } else {
                Filt::Zero
            }
        }
    }
}

/// F(x,y) = V1(x) ∩ V2(y) for the two filtrations of the type I datum.
pub fn typei_sfamily(params: &WppParams, datum: &TypeIBundle, chart: usize, window: i64) -> Result<TruncatedSFamily> {
    datum.check_divisibility(params)?;
    check_window(window, typei_window(datum))?;
    let data = chart_line_data(params, chart, datum.a);
    let ((w1, w2), (p, q)) = typei_chart(params, datum, chart);
    let mut f = TruncatedSFamily::empty(params, chart, window);
    let nw = f.normalized(data.corner, data.weight);
    for x in -window..=window {
        for y in -window..=window {
            let piece = match filt_meet(filt(x, data.corner.0, w1, &p), filt(y, data.corner.1, w2, &q)) {
                Filt::Zero => continue,
                Filt::Line(r) => Piece { weight: nw, dim: 1, span: Span::Line(r) },
                Filt::Full => Piece { weight: nw, dim: 2, span: Span::Full },
            };
            f.push((data.box_, x, y), piece);
        }
    }
    Ok(f)
}

pub fn rank1_families(params: &WppParams, sheaf: &Rank1Sheaf, window: i64) -> Result<[TruncatedSFamily; 3]> {
    Ok([rank1_sfamily(params, sheaf, 1, window)?, rank1_sfamily(params, sheaf, 2, window)?, rank1_sfamily(params, sheaf, 3, window)?])
}

pub fn typei_families(params: &WppParams, datum: &TypeIBundle, window: i64) -> Result<[TruncatedSFamily; 3]> {
    Ok([typei_sfamily(params, datum, 1, window)?, typei_sfamily(params, datum, 2, window)?, typei_sfamily(params, datum, 3, window)?])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingReport {
    pub ok: bool,
    /// One line per (equation, j, ℓ) whose two sides differ.
    pub mismatches: Vec<String>,
}

type Records = BTreeMap<(i64, i64), (u32, Span)>;

fn add_record(rec: &mut BTreeMap<(i64, i64), Vec<(u32, Span)>>, key: (i64, i64), dim: u32, span: Span) {
    rec.entry(key).or_default().push((dim, span));
}

fn finish(rec: BTreeMap<(i64, i64), Vec<(u32, Span)>>) -> Records {
    rec.into_iter()
        .map(|(k, v)| {
            let dim: u32 = v.iter().map(|x| x.0).sum();
            let span = if v.len() == 1 { v[0].1.clone() } else { Span::Full };
            (k, (dim, span))
        })
        .collect()
}

/// Checks the three graded-dimension equalities between neighbouring charts,
/// comparing the spans of one-dimensional pieces as well.
pub fn check_gluing(families: &[TruncatedSFamily; 3]) -> Result<GluingReport> {
    let wn = families[0].window;
    for (k, f) in families.iter().enumerate() {
        if f.chart != k + 1 {
            return invalid(format!("family {k} is for chart {}", f.chart));
        }
        if f.window != wn {
            return invalid("families must share one window");
        }
        if !f.coherence_check() {
            return Err(WppError::InsufficientWindow(format!("chart {} is not stabilized inside [-{wn},{wn}]", f.chart)));
        }
    }
    let mut mismatches = Vec::new();
    for n in 0..3 {
        let lhs_f = &families[n];
        let rhs_f = &families[(n + 1) % 3];
        let nn = lhs_f.modulus;
        let nn1 = rhs_f.modulus;
        let (w1, w2) = lhs_f.w;
        debug_assert_eq!(w1, nn1);
        debug_assert_eq!(rhs_f.w.0, w2);
        let period = nn.lcm(&nn1);
        for j in 0..w2 {
            for l in -wn..=wn + period {
                let mut lhs = BTreeMap::new();
                for i in 0..w1 {
                    for p in lhs_f.pieces((i, j), wn, l) {
                        let wt = p.weight + l * w2;
                        add_record(&mut lhs, ((wt - i).rem_euclid(nn), i.rem_euclid(nn1)), p.dim, p.span.clone());
                    }
                }
                let mut rhs = BTreeMap::new();
                for i in 0..nn {
                    for p in rhs_f.pieces((j, i), l, wn) {
                        let wt = p.weight + l * rhs_f.w.0;
                        let shift = i + j + l * w2;
                        add_record(&mut rhs, (shift.rem_euclid(nn), (wt - shift).rem_euclid(nn1)), p.dim, p.span.clone());
                    }
                }
                let (lhs, rhs) = (finish(lhs), finish(rhs));
                if lhs != rhs {
                    mismatches.push(format!("equation {} at j={j}, l={l}: {:?} vs {:?}", n + 1, lhs, rhs));
                }
            }
        }
    }
    Ok(GluingReport { ok: mismatches.is_empty(), mismatches })
}

/// Σ over cells of (dim R − dim F)·[O_{P_i}] g^{weight}, R ⊇ F the reference.
fn deficit_class(params: &WppParams, reference: &TruncatedSFamily, f: &TruncatedSFamily) -> Result<KClass> {
    let mut acc = KClass::zero(params);
    for ((bx, x, y), ps) in &reference.cells {
        for p in ps {
            let have: u32 = f.pieces(*bx, *x, *y).iter().filter(|q| q.weight == p.weight).map(|q| q.dim).sum();
            if have > p.dim {
                return invalid("family is not contained in its reference");
            }
            let deficit = p.dim - have;
            if deficit > 0 {
                let wt = reference.absolute_weight(p, *x, *y);
                acc = acc.add(&structure_sheaf_point(params, reference.chart, wt).scale(&int(deficit as i64)));
            }
        }
    }
    for (key, ps) in &f.cells {
        if !reference.cells.contains_key(key) && !ps.is_empty() {
            return invalid("family is not contained in its reference");
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToricSheaf {
    Rank1(Rank1Sheaf),
    TypeI(TypeIBundle),
}

/// K-class from weight-space dimensions: the reflexive reference class minus
/// one point class per missing graded piece.
pub fn kclass_by_devissage(params: &WppParams, sheaf: &ToricSheaf) -> Result<KClass> {
    match sheaf {
        ToricSheaf::Rank1(s) => {
            let w = rank1_window(s);
            let [a, b, c] = s.abc;
            let mut acc = line_bundle_class(params, a, b, c);
            let hull = Rank1Sheaf::line_bundle(s.abc);
            for chart in 1..=3 {
                let r = rank1_sfamily(params, &hull, chart, w)?;
                let f = rank1_sfamily(params, s, chart, w)?;
                acc = acc.sub(&deficit_class(params, &r, &f)?);
            }
            Ok(acc)
        }
        ToricSheaf::TypeI(d) => {
            let w = typei_window(d);
            let [a1, a2, a3] = d.a;
            let [d1, d2, d3] = d.delta;
            let mut acc = line_bundle_class(params, a1, a2, a3).add(&line_bundle_class(params, a1 + d1, a2 + d2, a3 + d3));
            let p = d.points[0].clone();
            let coincident = TypeIBundle::new(d.a, d.delta, [p.clone(), p.clone(), p]);
            for chart in 1..=3 {
                let r = typei_sfamily(params, &coincident, chart, w)?;
                let f = typei_sfamily(params, d, chart, w)?;
                acc = acc.sub(&deficit_class(params, &r, &f)?);
            }
            Ok(acc)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Type {
    I,
    II,
    III,
}

/// Type by the number of charts whose family has a single box summand.
pub fn classify_rank2(families: &[TruncatedSFamily; 3]) -> Result<Rank2Type> {
    if families.iter().any(|f| f.rank() != 2) {
        return invalid("classification applies to rank 2 families");
    }
    let single = families.iter().filter(|f| f.boxes().len() == 1).count();
    match single {
        3 => Ok(Rank2Type::I),
        1 => Ok(Rank2Type::II),
        0 => Ok(Rank2Type::III),
        _ => invalid("two single-box charts force the third; families are inconsistent"),
    }
}
