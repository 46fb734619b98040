//! Subcommand implementations. Each returns the full output text.

use std::fmt::Write;

use frobkit_core::fsing::{fsing_report, theorem_a_check, theorem_b_check, DegreeSearch, TheoremCheck};
use frobkit_core::pbody::{closed_form_pbody_membership, pbody_approx, pbody_approx_direct, pbody_membership, ScaledPoint, ScaledStaircase};
use frobkit_core::rational::{format_rational, to_decimal};
use frobkit_core::stabilization::{closed_form_stabilization, exact_stabilization, truncated_stabilization};
use frobkit_core::systems::{verify_f_graded, verify_p_family, Certificate, SystemKind};
use frobkit_core::volume::{das_meng_report, volume_sequence, VolumeReport};
use frobkit_core::{Error, ExponentVector, FGradedSystem, MonomialIdeal, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::eval::evaluate_system;
use crate::expr::parse_program;
use crate::svg::{emit_staircase_svg, SvgStyle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Verify,
    Stab,
    Pbody,
    Fsing,
    Volume,
    Plot,
}

pub fn system(cfg: &RunConfig) -> Result<FGradedSystem, CliError> {
    let program = parse_program(&cfg.expr)?;
    evaluate_system(&program, cfg.ctx)
}

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<String, CliError> {
    let sys = system(cfg)?;
    match cmd {
        Command::Eval => eval(&sys, cfg),
        Command::Verify => verify(&sys, cfg),
        Command::Stab => stab(&sys, cfg),
        Command::Pbody => pbody(&sys, cfg),
        Command::Fsing => fsing(&sys, cfg),
        Command::Volume => volume(&sys, cfg),
        Command::Plot => plot(&sys, cfg),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn gens_json(i: &MonomialIdeal) -> Value {
    json!({
        "text": i.to_string(),
        "generators": i.generators().iter().map(|g| g.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn exact(r: &Rational) -> String {
    format!("{} ≈ {}", format_rational(r), to_decimal(r, 6))
}

fn degree(d: &DegreeSearch) -> String {
    match d {
        DegreeSearch::Found { e, .. } => e.to_string(),
        DegreeSearch::NoneUpTo { depth } => format!("NONE_UP_TO({depth})"),
    }
}

fn certificate(c: &Certificate) -> String {
    match c {
        Certificate::Ok { depth } => format!("OK up to index {depth}"),
        Certificate::Violation { e, f: Some(f), witness } => format!("VIOLATION at e={e}, f={f}, witness {witness}"),
        Certificate::Violation { e, f: None, witness } => format!("VIOLATION at e={e}, witness {witness}"),
    }
}

fn eval(sys: &FGradedSystem, cfg: &RunConfig) -> Result<String, CliError> {
    let terms: Vec<_> = (0..=cfg.depth).map(|e| sys.term(e)).collect();
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "system": sys.describe(),
            "terms": terms.iter().enumerate().map(|(e, t)| json!({"e": e, "ideal": gens_json(t)})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("e,ideal\n");
            for (e, t) in terms.iter().enumerate() {
                writeln!(out, "{e},\"{t}\"").unwrap();
            }
            out
        }
        _ => {
            let mut out = format!("{}\n", sys.describe());
            for (e, t) in terms.iter().enumerate() {
                writeln!(out, "a_{e} = {t}").unwrap();
            }
            out
        }
    })
}

fn verify(sys: &FGradedSystem, cfg: &RunConfig) -> Result<String, CliError> {
    let fg = verify_f_graded(sys, cfg.depth);
    let pf = verify_p_family(sys, cfg.depth);
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "system": sys.describe(),
            "claimed": format!("{:?}", sys.class()),
            "f_graded": fg,
            "p_family": pf,
        })),
        _ => format!(
            "{}\nclaimed class: {:?}\nF-graded: {}\np-family: {}\n",
            sys.describe(),
            sys.class(),
            certificate(&fg),
            certificate(&pf)
        ),
    })
}

/// `None` when the kind has no closed form.
fn unsupported_to_none<T>(r: frobkit_core::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Unsupported { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn stab(sys: &FGradedSystem, cfg: &RunConfig) -> Result<String, CliError> {
    let r = truncated_stabilization(sys, cfg.e, &cfg.window)?;
    let closed = unsupported_to_none(closed_form_stabilization(sys, cfg.e))?;
    let lattice = match sys.kind() {
        SystemKind::Minimal(_) => Some(exact_stabilization(sys, cfg.e)?),
        _ => None,
    };
    let verdict = closed.as_ref().map(|c| if *c == r.ideal { "AGREE" } else { "DISAGREE" });
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "system": sys.describe(),
            "e": cfg.e,
            "oracle": gens_json(&r.ideal),
            "certified": r.certified,
            "window": [r.window.f0, r.window.depth],
            "closed_form": closed.as_ref().map(gens_json),
            "lattice_form": lattice.as_ref().map(gens_json),
            "agreement": verdict,
        })),
        _ => {
            let mut out = format!(
                "oracle: {} ({}, window [{}, {}])\n",
                r.ideal,
                if r.certified { "certified" } else { "not certified" },
                r.window.f0,
                r.window.depth
            );
            match &closed {
                Some(c) => writeln!(out, "closed form: {c}").unwrap(),
                None => writeln!(out, "closed form: not available for {}", sys.kind_name()).unwrap(),
            }
            if let Some(l) = &lattice {
                writeln!(out, "lattice form: {l}").unwrap();
            }
            if let Some(v) = verdict {
                writeln!(out, "{v}").unwrap();
            }
            out
        }
    })
}

/// Converts rational coordinates to a point with denominator `p^k`.
fn scaled_point(coords: &[Rational], p: u64) -> Result<ScaledPoint, CliError> {
    let pb = BigInt::from(p);
    let mut k = 0u32;
    let mut den = BigInt::one();
    let lcm = coords.iter().fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    while !(&den % &lcm).is_zero() {
        den *= &pb;
        k += 1;
        if k > 64 {
            return Err(CliError::Usage(format!("point denominators must be powers of p = {p}")));
        }
    }
    let nums = coords
        .iter()
        .map(|c| {
            let n = c.numer() * (&den / c.denom());
            n.to_biguint().ok_or_else(|| CliError::Usage("point coordinates must be non-negative".into()))
        })
        .collect::<Result<Vec<BigUint>, _>>()?;
    Ok(ScaledPoint::new(ExponentVector::new(nums), k))
}

fn staircase_json(s: &ScaledStaircase) -> Value {
    serde_json::from_str(&s.to_json()).expect("valid json")
}

fn pbody(sys: &FGradedSystem, cfg: &RunConfig) -> Result<String, CliError> {
    let slice = pbody_approx(sys, cfg.k, &cfg.window)?;
    let direct = pbody_approx_direct(sys, cfg.k, &cfg.window)?;
    let agree = slice.ideal == direct.ideal;
    let query = match &cfg.point {
        Some(coords) => {
            let pt = scaled_point(coords, cfg.ctx.p())?;
            let windowed = pbody_membership(&pt, sys, cfg.window.f0, cfg.window.depth)?;
            let closed = unsupported_to_none(closed_form_pbody_membership(&pt, sys))?;
            Some((coords.clone(), windowed, closed))
        }
        None => None,
    };
    Ok(match cfg.format {
        Format::Json => {
            let mut v = staircase_json(&slice);
            v["paths_agree"] = json!(agree);
            if let Some((coords, windowed, closed)) = &query {
                v["query"] = json!({
                    "point": coords.iter().map(format_rational).collect::<Vec<_>>(),
                    "membership": windowed,
                    "closed_form": closed,
                });
            }
            pretty(&v)
        }
        Format::Csv => slice_csv(std::slice::from_ref(&slice)),
        _ => {
            let den = BigUint::from(cfg.ctx.p()).pow(cfg.k);
            let mut out = format!(
                "slice k={} (denominator {den}, window [{}, {}]{}): {}\n",
                cfg.k,
                cfg.window.f0,
                cfg.window.depth,
                if slice.certified { ", certified" } else { "" },
                slice.ideal
            );
            writeln!(out, "direct filtering: {}", if agree { "AGREE" } else { "DISAGREE" }).unwrap();
            if let Some((coords, windowed, closed)) = &query {
                let shown: Vec<String> = coords.iter().map(format_rational).collect();
                write!(out, "point ({}): {}", shown.join(", "), tag(windowed)).unwrap();
                match closed {
                    Some(b) => writeln!(out, ", closed form {}", if *b { "IN" } else { "OUT" }).unwrap(),
                    None => out.push('\n'),
                }
            }
            out
        }
    })
}

/// The serialized (upper-case) name of a unit enum value.
fn tag<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn check_line(name: &str, c: &Result<TheoremCheck, Error>) -> String {
    match c {
        Ok(c) => format!(
            "{name}: {} (lhs {}, rhs {}, depth {}/{})",
            tag(&c.verdict),
            degree(&c.lhs),
            degree(&c.rhs),
            c.depth,
            c.extended_depth
        ),
        Err(e) => format!("{name}: not applicable ({e})"),
    }
}

fn fsing(sys: &FGradedSystem, cfg: &RunConfig) -> Result<String, CliError> {
    let r = fsing_report(sys, cfg.depth)?;
    let a = theorem_a_check(sys, cfg.depth, cfg.slack);
    let b = theorem_b_check(sys, cfg.depth, cfg.slack);
    for c in [&a, &b] {
        if let Err(e) = c {
            if !matches!(e, Error::NotPFamily { .. } | Error::Unsupported { .. }) {
                return Err(e.clone().into());
            }
        }
    }
    Ok(match cfg.format {
        Format::Json => pretty(&json!({
            "system": sys.describe(),
            "report": r,
            "theorem_a": a.as_ref().ok(),
            "theorem_b": b.as_ref().ok(),
        })),
        _ => {
            let mut out = format!("split_degree={}, sfr_degree={}\n", degree(&r.split), degree(&r.sfr));
            for (name, d) in [("split", &r.split), ("sfr", &r.sfr)] {
                if let DegreeSearch::Found { witness, .. } = d {
                    writeln!(out, "{name} witness: {witness}").unwrap();
                }
            }
            writeln!(out, "{}", check_line("theorem A", &a)).unwrap();
            writeln!(out, "{}", check_line("theorem B", &b)).unwrap();
            out
        }
    })
}

fn volume(sys: &FGradedSystem, cfg: &RunConfig) -> Result<String, CliError> {
    let report = if sys.term(1).is_m_primary() {
        das_meng_report(sys, cfg.depth, cfg.k, &cfg.window)?
    } else {
        volume_sequence(sys, cfg.depth)?
    };
    Ok(match cfg.format {
        Format::Json => pretty(&report.to_json()),
        Format::Csv => report.to_csv(),
        _ => volume_text(&report),
    })
}

fn volume_text(r: &VolumeReport) -> String {
    let mut out = String::new();
    for en in &r.entries {
        writeln!(out, "e={} colength={} ratio={}", en.e, en.colength, exact(&en.ratio)).unwrap();
    }
    if let Some(x) = &r.extrapolated {
        writeln!(out, "volume estimate ({}): {}", r.extrapolation, exact(x)).unwrap();
    }
    if let (Some(k), Some(v)) = (r.pbody_k, &r.pbody_volume) {
        writeln!(out, "p-body complement volume at k={k}: {}", exact(v)).unwrap();
    }
    if let Some(d) = &r.discrepancy {
        writeln!(out, "discrepancy: {}", exact(d)).unwrap();
    }
    if let Some(b) = &r.bbl {
        let status = if b.verified {
            format!("verified up to {}", b.depth)
        } else {
            format!("fails at e={}", b.failure.unwrap_or_default())
        };
        writeln!(out, "BBL: m^(c p^e) ⊆ a_e with c = {} (n={}, B={}, N={}), {status}", exact(&b.c), b.n, b.b, b.big_n).unwrap();
    }
    out
}

/// The level-`e` slices `(1/p^e) log a_e` of a system.
pub fn level_slices(sys: &FGradedSystem, levels: &[u32]) -> Vec<ScaledStaircase> {
    levels
        .iter()
        .map(|&e| ScaledStaircase::new(sys.ctx(), e, [e, e], (*sys.term(e)).clone(), true))
        .collect()
}

fn slice_csv(slices: &[ScaledStaircase]) -> String {
    let Some(first) = slices.first() else {
        return String::new();
    };
    let mut out = String::from("k,denominator");
    for i in 1..=first.d {
        write!(out, ",x{i}").unwrap();
    }
    out.push('\n');
    for s in slices {
        let den = BigUint::from(s.p).pow(s.k);
        for g in &s.generators {
            write!(out, "{},{den}", s.k).unwrap();
            for c in g.coords() {
                write!(out, ",{c}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

fn plot(sys: &FGradedSystem, cfg: &RunConfig) -> Result<String, CliError> {
    if cfg.levels.is_empty() {
        return Err(CliError::Usage("--levels needs at least one index".into()));
    }
    let slices = level_slices(sys, &cfg.levels);
    match cfg.format {
        Format::Csv => Ok(slice_csv(&slices)),
        Format::Json => Ok(pretty(&Value::Array(slices.iter().map(staircase_json).collect()))),
        _ if cfg.ctx.d() != 2 => Ok(slice_csv(&slices)),
        _ => emit_staircase_svg(&slices, &format!("{} over p = {}", sys.describe(), cfg.ctx.p()), &SvgStyle::default()),
    }
}
