//! Command-line front end.  Every command writes JSON lines, the first of
//! which echoes the configuration; `--pretty` switches to aligned text.
//!
//! Exit codes: 0 success, 1 usage, 2 oracle mismatch, 3 internal inconsistency.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::WppError;
use crate::exact_arith::{int, rational_to_string, Rational};
use crate::hilbert::{chi_oracle, hilb_fit_oracle, hilb_top, hilb_top_e, hilb_top_e_by_sum, GeneratingSheafSpec};
use crate::inertia::{tch_of_kclass, tch_rank2_closed_form};
use crate::kgroup::{rank1_class, rank2_typei_class, KClass, WppParams};
use crate::partitions::{
    all_to_q, chart_spec, color_count, enumerate_partitions, eta_inv_pow, g_series, g_series_color0, Partition,
    Series,
};
use crate::rank2::{
    enumerate_stable_triples, h_full, h_vb_refined, h_vb_specialized, is_mu_stable, refined_exponents, slope_oracle_stability,
    Rank2Targets,
};
use crate::sheaf_model::{
    check_gluing, kclass_by_devissage, rank1_families, rank1_sfamily_with_weight, rank1_window, typei_families, typei_window,
    ProjPoint, Rank1Sheaf, ToricSheaf, TypeIBundle,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

const DEFAULT_ORDER: i64 = 6;
const DEFAULT_MAX: i64 = 12;

/// Integers that fit in i64 as JSON numbers, larger ones as decimal strings.
pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(name = "wpsheaf", version, about = "Toric sheaves on weighted projective planes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Run the paired oracle and exit 2 on disagreement.
    #[arg(long, global = true)]
    pub check: bool,
    /// Human-readable output instead of JSON lines.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Weights {
    /// Weights a b c of P(a,b,c).
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], required = true)]
    pub abc: Vec<i64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert polynomial of O(r) (and of O(r) ⊗ E) against the monomial-count oracle.
    Hilb {
        #[command(flatten)]
        w: Weights,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long = "E")]
        e: Option<i64>,
    },
    /// Rank-1 generating function G_β.
    Gseries {
        #[command(flatten)]
        w: Weights,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        beta: i64,
        #[arg(long)]
        order: Option<i64>,
        /// none | all | color0
        #[arg(long, default_value = "color0")]
        specialize: String,
    },
    /// Rank-2 vector bundle series, and the full series when --order is given.
    Hseries {
        #[command(flatten)]
        w: Weights,
        #[arg(long = "E")]
        e: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        c1: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(long)]
        max: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        order: Option<i64>,
    },
    /// μ-stable type I data with fixed c1 and λ.
    Stable {
        #[command(flatten)]
        w: Weights,
        #[arg(long = "E")]
        e: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        c1: i64,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lambda: i64,
        #[arg(long)]
        max: Option<i64>,
    },
    /// K-class and orbifold Chern character of a rank-1 sheaf or type I bundle.
    Kclass {
        #[command(flatten)]
        w: Weights,
        /// Twist (A,B,C) of the reflexive hull, or (A1,A2,A3).
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true, default_values_t = [0, 0, 0])]
        twist: Vec<i64>,
        /// Corner partitions of a rank-1 sheaf, e.g. "2,1" "" "1".
        #[arg(long, num_args = 3)]
        partitions: Option<Vec<String>>,
        /// Widths Δ1 Δ2 Δ3 of a type I bundle.
        #[arg(long, num_args = 3)]
        delta: Option<Vec<i64>>,
        /// Make p1 = p2 instead of using three distinct points.
        #[arg(long)]
        coincide: bool,
    },
    /// Gluing verification of chart families.
    Glue {
        #[command(flatten)]
        w: Weights,
        /// rank1 | rank2: glue the datum and a mutated copy.
        #[arg(long)]
        demo: Option<String>,
        #[arg(long, num_args = 3, allow_negative_numbers = true, default_values_t = [0, 0, 0])]
        twist: Vec<i64>,
        #[arg(long, num_args = 3)]
        partitions: Option<Vec<String>>,
        #[arg(long, num_args = 3)]
        delta: Option<Vec<i64>>,
    },
}

struct Out<'a> {
    sink: &'a mut dyn Write,
    pretty: bool,
}

impl Out<'_> {
    fn emit(&mut self, kind: &str, body: Value) {
        let mut rec = Map::new();
        rec.insert("record".into(), json!(kind));
        if let Value::Object(m) = body {
            rec.extend(m);
        }
        let line = if self.pretty {
            let fields: Vec<String> = rec.iter().filter(|(k, _)| k.as_str() != "record").map(|(k, v)| format!("{k}={}", pretty_value(v))).collect();
            format!("{kind:<10} {}", fields.join("  "))
        } else {
            Value::Object(rec).to_string()
        };
        let _ = writeln!(self.sink, "{line}");
    }

    fn series(&mut self, label: &str, s: &Series) {
        for r in s.to_json_records() {
            let mut body = r;
            body["series"] = json!(label);
            self.emit("term", body);
        }
    }
}

fn pretty_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

enum Failure {
    Usage(String),
    Mismatch(String),
    Internal(String),
}

impl From<WppError> for Failure {
    fn from(e: WppError) -> Failure {
        match e {
            WppError::InvalidInput(m) => Failure::Usage(m),
            WppError::InsufficientWindow(m) | WppError::Internal(m) => Failure::Internal(m),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn env_default(var: &str, fallback: i64) -> i64 {
    std::env::var(var).ok().and_then(|v| v.parse().ok()).unwrap_or(fallback)
}

fn params_of(w: &Weights) -> std::result::Result<WppParams, Failure> {
    Ok(WppParams::new(w.abc[0], w.abc[1], w.abc[2])?)
}

fn spec_of(params: &WppParams, e: Option<i64>) -> std::result::Result<GeneratingSheafSpec, Failure> {
    Ok(GeneratingSheafSpec::new(params, e.unwrap_or(params.m()))?)
}

fn rat_json(q: &Rational) -> Value {
    json!(rational_to_string(q))
}

fn parse_partitions(p: &Option<Vec<String>>) -> std::result::Result<[Partition; 3], Failure> {
    let mut out: [Partition; 3] = std::array::from_fn(|_| Partition::empty());
    if let Some(v) = p {
        for (k, s) in v.iter().enumerate() {
            out[k] = Partition::parse(s)?;
        }
    }
    Ok(out)
}

fn verdict(ok: bool, what: &str) -> CmdResult {
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(what.to_string()))
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, sink: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(sink, "{e}");
            return code;
        }
    };
    let mut out = Out { sink, pretty: cli.pretty };
    out.emit("meta", json!({ "tool": "wpsheaf", "version": env!("CARGO_PKG_VERSION"), "config": config_echo(&cli) }));
    let res = match &cli.command {
        Command::Hilb { w, r, e } => cmd_hilb(&mut out, w, *r, *e, cli.check),
        Command::Gseries { w, beta, order, specialize } => cmd_gseries(&mut out, w, *beta, *order, specialize, cli.check),
        Command::Hseries { w, e, c1, lambda, max, order } => cmd_hseries(&mut out, w, *e, *c1, *lambda, *max, *order, cli.check),
        Command::Stable { w, e, c1, lambda, max } => cmd_stable(&mut out, w, *e, *c1, *lambda, *max, cli.check),
        Command::Kclass { w, twist, partitions, delta, coincide } => cmd_kclass(&mut out, w, twist, partitions, delta, *coincide, cli.check),
        Command::Glue { w, demo, twist, partitions, delta } => cmd_glue(&mut out, w, demo.as_deref(), twist, partitions, delta, cli.check),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            out.emit("error", json!({ "kind": "usage", "message": m }));
            EXIT_USAGE
        }
        Err(Failure::Mismatch(m)) => {
            out.emit("error", json!({ "kind": "oracle-mismatch", "message": m }));
            EXIT_MISMATCH
        }
        Err(Failure::Internal(m)) => {
            out.emit("error", json!({ "kind": "internal", "message": m }));
            EXIT_INTERNAL
        }
    }
}

fn config_echo(cli: &Cli) -> Value {
    let mut v = match &cli.command {
        Command::Hilb { w, r, e } => json!({ "command": "hilb", "abc": w.abc, "r": r, "E": e }),
        Command::Gseries { w, beta, order, specialize } => {
            json!({ "command": "gseries", "abc": w.abc, "beta": beta, "order": order.unwrap_or(env_default("WPSHEAF_ORDER", DEFAULT_ORDER)), "specialize": specialize })
        }
        Command::Hseries { w, e, c1, lambda, max, order } => json!({
            "command": "hseries", "abc": w.abc, "E": e, "c1": c1, "lambda": lambda,
            "max": max.unwrap_or(env_default("WPSHEAF_MAX", DEFAULT_MAX)), "order": order,
        }),
        Command::Stable { w, e, c1, lambda, max } => json!({
            "command": "stable", "abc": w.abc, "E": e, "c1": c1, "lambda": lambda,
            "max": max.unwrap_or(env_default("WPSHEAF_MAX", DEFAULT_MAX)),
        }),
        Command::Kclass { w, twist, partitions, delta, coincide } => {
            json!({ "command": "kclass", "abc": w.abc, "twist": twist, "partitions": partitions, "delta": delta, "coincide": coincide })
        }
        Command::Glue { w, demo, twist, partitions, delta } => {
            json!({ "command": "glue", "abc": w.abc, "demo": demo, "twist": twist, "partitions": partitions, "delta": delta })
        }
    };
    v["check"] = json!(cli.check);
    v
}

fn cmd_hilb(out: &mut Out<'_>, w: &Weights, r: i64, e: Option<i64>, check: bool) -> CmdResult {
    let params = params_of(w)?;
    let top = hilb_top(&params, r)?;
    let fit = hilb_fit_oracle(&params, r)?;
    let mut ok = fit.top() == top;
    let vanishing = r.rem_euclid(params.d()) != 0;
    if vanishing {
        ok &= (0..=5).all(|t| chi_oracle(&params, r + params.m() * t) == 0);
    }
    out.emit(
        "hilb",
        json!({
            "r": r, "quad": rat_json(&top.quad), "lin": rat_json(&top.lin),
            "oracle": { "quad": rat_json(&fit.quad), "lin": rat_json(&fit.lin), "const": rat_json(&fit.constant) },
            "vanishing": vanishing, "match": ok,
        }),
    );
    verdict(ok, "TRR coefficients differ from the monomial-count fit")?;
    if let Some(ev) = e {
        let spec = GeneratingSheafSpec::new(&params, ev)?;
        let te = hilb_top_e(&params, &spec, r);
        let mut rec = json!({ "r": r, "E": ev, "quad": rat_json(&te.quad), "lin": rat_json(&te.lin) });
        if check {
            let sum = hilb_top_e_by_sum(&params, &spec, r)?;
            rec["additivity"] = json!(sum == te);
            out.emit("hilb_E", rec);
            return verdict(sum == te, "generating-sheaf coefficients are not the sum over summands");
        }
        out.emit("hilb_E", rec);
    }
    Ok(())
}

/// Per-chart brute force of the color-0 specialization.  A partition with n
/// boxes on a chart of modulus N has at least (n − N²)/(3N) boxes of color 0
/// once every row and column meets color 0, so enumerating up to N² + 3N·order
/// boxes is exhaustive.
fn color0_brute(params: &WppParams, beta: i64, order: i64) -> Series {
    let q = vec!["q".to_string()];
    let mut acc = Series::one(q.clone(), Some(order));
    for chart in 1..=3 {
        let spec = chart_spec(params, chart, -beta);
        let n = spec.modulus as i64;
        let bound = if n == 1 { order } else { n * n + 3 * n * order };
        let mut s = Series::zero(q.clone(), Some(order));
        for lam in enumerate_partitions(bound as u32) {
            let c0 = color_count(&lam, &spec)[0] as i64;
            if c0 <= order {
                s.add_term(vec![c0 as i32], int(1));
            }
        }
        acc = acc.mul(&s);
    }
    acc
}

fn cmd_gseries(out: &mut Out<'_>, w: &Weights, beta: i64, order: Option<i64>, specialize: &str, check: bool) -> CmdResult {
    let params = params_of(w)?;
    let order = order.unwrap_or(env_default("WPSHEAF_ORDER", DEFAULT_ORDER));
    if order < 0 {
        return Err(Failure::Usage("order must be nonnegative".into()));
    }
    let series = match specialize {
        "color0" => g_series_color0(&params, beta, order)?,
        "all" => {
            let free = g_series(&params, beta, order as u32);
            free.specialize(&["q".to_string()], &all_to_q(free.vars().len()), Some(order))?
        }
        "none" => g_series(&params, beta, order as u32),
        other => return Err(Failure::Usage(format!("unknown specialization {other}; use none, all or color0"))),
    };
    out.emit("series", json!({ "name": "G", "vars": series.vars(), "trunc": series.trunc(), "terms": series.len() }));
    out.series("G", &series);
    if check {
        let (got, oracle, what) = match specialize {
            "color0" => (series.clone(), color0_brute(&params, beta, order), "pruned enumeration differs from brute force"),
            "all" => (series.clone(), eta_inv_pow(3, order as u32), "total box count is not the cube of the partition function"),
            _ => (
                series.specialize(&["q".to_string()], &all_to_q(series.vars().len()), Some(order))?,
                eta_inv_pow(3, order as u32),
                "total box count is not the cube of the partition function",
            ),
        };
        let ok = got == oracle;
        out.emit("check", json!({ "ok": ok }));
        return verdict(ok, what);
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_hseries(out: &mut Out<'_>, w: &Weights, e: Option<i64>, c1: i64, lambda: i64, max: Option<i64>, order: Option<i64>, check: bool) -> CmdResult {
    let params = params_of(w)?;
    let spec = spec_of(&params, e)?;
    let max = max.unwrap_or(env_default("WPSHEAF_MAX", DEFAULT_MAX));
    let hvb = h_vb_specialized(&params, &spec, c1, lambda, max)?;
    out.emit("series", json!({ "name": "Hvb", "E": spec.e(), "max": max, "terms": hvb.len() }));
    out.series("Hvb", &hvb);
    if let Some(ord) = order {
        let h = h_full(&params, &spec, c1, lambda, max, ord)?;
        out.emit("series", json!({ "name": "H", "trunc": ord, "terms": h.len() }));
        out.series("H", &h);
    }
    if check {
        let targets = Rank2Targets::from_c1_lambda(&params, c1, lambda);
        let counts = h_vb_refined(&params, &targets, max)?;
        let exps = refined_exponents(&params, &spec, &targets, lambda, max)?;
        let mut rebuilt = Series::univariate(None);
        let mut functional = true;
        for (k, n) in &counts {
            let e = &exps[k];
            functional &= e.len() == 1;
            if let Some(x) = e.iter().next() {
                rebuilt.add_term(vec![*x as i32], int(*n as i64));
            }
        }
        let ok = functional && rebuilt == hvb;
        out.emit("check", json!({ "refined_keys": counts.len(), "ok": ok }));
        return verdict(ok, "refined multiplicities do not sum to the specialized series");
    }
    Ok(())
}

fn cmd_stable(out: &mut Out<'_>, w: &Weights, e: Option<i64>, c1: i64, lambda: i64, max: Option<i64>, check: bool) -> CmdResult {
    let params = params_of(w)?;
    let spec = spec_of(&params, e)?;
    let max = max.unwrap_or(env_default("WPSHEAF_MAX", DEFAULT_MAX));
    let triples = enumerate_stable_triples(&params, c1, lambda, max);
    for t in &triples {
        out.emit("triple", t.to_json());
    }
    out.emit("summary", json!({ "count": triples.len() }));
    if check {
        let mut ok = true;
        for t in &triples {
            ok &= slope_oracle_stability(&params, &spec, &t.bundle())?;
        }
        let (a, b, c) = params.weights();
        for d1 in (0..=max).step_by(b as usize) {
            for d2 in (0..=max - d1).step_by(c as usize) {
                for d3 in (0..=max - d1 - d2).step_by(a as usize) {
                    for pts in [ProjPoint::standard_triple(), [ProjPoint::from_ints(1, 0)?, ProjPoint::from_ints(1, 0)?, ProjPoint::from_ints(1, 1)?]] {
                        let datum = TypeIBundle::new([0, 0, 0], [d1, d2, d3], pts);
                        ok &= is_mu_stable(&datum) == slope_oracle_stability(&params, &spec, &datum)?;
                    }
                }
            }
        }
        out.emit("check", json!({ "ok": ok }));
        return verdict(ok, "classifier and slope oracle disagree");
    }
    Ok(())
}

fn kclass_record(k: &KClass) -> Value {
    json!({ "class": k.to_json(), "display": k.to_string() })
}

#[allow(clippy::too_many_arguments)]
fn cmd_kclass(
    out: &mut Out<'_>,
    w: &Weights,
    twist: &[i64],
    partitions: &Option<Vec<String>>,
    delta: &Option<Vec<i64>>,
    coincide: bool,
    check: bool,
) -> CmdResult {
    let params = params_of(w)?;
    let tw = [twist[0], twist[1], twist[2]];
    match delta {
        None => {
            let lam = parse_partitions(partitions)?;
            let k = rank1_class(&params, tw[0], tw[1], tw[2], &lam);
            out.emit("kclass", kclass_record(&k));
            out.emit("tch", json!({ "sectors": tch_of_kclass(&k).to_json() }));
            if check {
                let dev = kclass_by_devissage(&params, &ToricSheaf::Rank1(Rank1Sheaf::new(tw, lam)))?;
                out.emit("check", json!({ "devissage": kclass_record(&dev), "ok": dev == k }));
                return verdict(dev == k, "dévissage class differs");
            }
        }
        Some(d) => {
            if partitions.is_some() {
                return Err(Failure::Usage("--partitions and --delta are exclusive".into()));
            }
            let mut pts = ProjPoint::standard_triple();
            if coincide {
                pts[1] = pts[0].clone();
            }
            let datum = TypeIBundle::new(tw, [d[0], d[1], d[2]], pts);
            let k = rank2_typei_class(&params, &datum)?;
            let ch = tch_of_kclass(&k);
            out.emit("kclass", kclass_record(&k));
            out.emit("tch", json!({ "sectors": ch.to_json() }));
            if check {
                let dev = kclass_by_devissage(&params, &ToricSheaf::TypeI(datum.clone()))?;
                let mut ok = dev == k;
                let closed = tw[0] == 0 && tw[1] == 0 && is_mu_stable(&datum);
                if closed {
                    ok &= tch_rank2_closed_form(&params, &datum)? == ch;
                }
                out.emit("check", json!({ "devissage": dev == k, "closed_form_compared": closed, "ok": ok }));
                return verdict(ok, "rank-2 class disagrees with an oracle");
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_glue(
    out: &mut Out<'_>,
    w: &Weights,
    demo: Option<&str>,
    twist: &[i64],
    partitions: &Option<Vec<String>>,
    delta: &Option<Vec<i64>>,
    check: bool,
) -> CmdResult {
    let params = params_of(w)?;
    let tw = [twist[0], twist[1], twist[2]];
    let rank2 = match demo {
        Some("rank1") => false,
        Some("rank2") => true,
        Some(other) => return Err(Failure::Usage(format!("unknown demo {other}; use rank1 or rank2"))),
        None => delta.is_some(),
    };
    if rank2 {
        let d = delta.clone().unwrap_or_else(|| vec![params.b(), params.c(), params.a()]);
        let datum = TypeIBundle::new(tw, [d[0], d[1], d[2]], ProjPoint::standard_triple());
        let win = typei_window(&datum) + 1;
        let fs = typei_families(&params, &datum, win)?;
        let rep = check_gluing(&fs)?;
        out.emit("glue", json!({ "datum": "given", "pass": rep.ok, "mismatches": rep.mismatches.len() }));
        let mut ok = rep.ok;
        if demo.is_some() {
            let mut moved = datum.clone();
            moved.points[1] = ProjPoint::from_ints(1, 7)?;
            let f2 = crate::sheaf_model::typei_sfamily(&params, &moved, 2, win)?;
            let mutated = check_gluing(&[fs[0].clone(), f2, fs[2].clone()])?;
            out.emit("glue", json!({ "datum": "p2 moved on chart 2 only", "pass": mutated.ok, "mismatches": mutated.mismatches.len() }));
            ok &= !mutated.ok;
        }
        return verdict(ok, "gluing verdicts are not as expected");
    }
    let sheaf = Rank1Sheaf::new(tw, parse_partitions(partitions)?);
    let mut shifted = sheaf.clone();
    shifted.abc[1] += 1;
    let win = rank1_window(&sheaf).max(rank1_window(&shifted));
    let fs = rank1_families(&params, &sheaf, win)?;
    let rep = check_gluing(&fs)?;
    out.emit("glue", json!({ "datum": "given", "pass": rep.ok, "mismatches": rep.mismatches.len() }));
    let mut ok = rep.ok;
    if demo.is_some() {
        // flip the fine weight on the chart of largest order, or shift B on chart 2 when all orders are 1
        let chart = (1..=3).max_by_key(|&i| (params.hat(i), i)).expect("three charts");
        let mutated = if params.hat(chart) > 1 {
            let s = crate::sheaf_model::chart_line_data(&params, chart, tw).weight + 1;
            let mut m = fs.clone();
            m[chart - 1] = rank1_sfamily_with_weight(&params, &sheaf, chart, win, s)?;
            ("fine weight shifted", m)
        } else {
            let mut m = fs.clone();
            m[1] = crate::sheaf_model::rank1_sfamily(&params, &shifted, 2, win)?;
            ("B shifted on chart 2", m)
        };
        let mrep = check_gluing(&mutated.1)?;
        out.emit("glue", json!({ "datum": mutated.0, "pass": mrep.ok, "mismatches": mrep.mismatches.len() }));
        ok &= !mrep.ok;
    }
    if check {
        let mut passing = Vec::new();
        for s1 in 0..params.a() {
            for s2 in 0..params.b() {
                for s3 in 0..params.c() {
                    let m = [
                        rank1_sfamily_with_weight(&params, &sheaf, 1, win, s1)?,
                        rank1_sfamily_with_weight(&params, &sheaf, 2, win, s2)?,
                        rank1_sfamily_with_weight(&params, &sheaf, 3, win, s3)?,
                    ];
                    if check_gluing(&m)?.ok {
                        passing.push([s1, s2, s3]);
                    }
                }
            }
        }
        let expect: Vec<i64> = (1..=3).map(|i| crate::sheaf_model::chart_line_data(&params, i, tw).weight).collect();
        let unique = passing.len() == 1 && passing[0].to_vec() == expect;
        out.emit("check", json!({ "passing_weights": passing, "unique": unique }));
        ok &= unique;
    }
    verdict(ok, "gluing verdicts are not as expected")
}
