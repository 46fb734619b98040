//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process exits non-zero when a criterion fails for a reason that is not
//! listed in `KNOWN_GAPS`.

use std::time::{Duration, Instant};

use frobkit_cli::commands::{level_slices, system};
use frobkit_cli::{run, Command, RunConfig, Settings};
use frobkit_core::fsing::{f_split_degree, fsing_report, sfr_degree, theorem_a_check, theorem_b_check, Verdict};
use frobkit_core::monomial::text::parse_ideal;
use frobkit_core::pbody::{pbody_approx, pbody_approx_direct, pbody_membership, Membership, ScaledPoint};
use frobkit_core::rational::rational;
use frobkit_core::stabilization::{
    closed_form_stabilization, compute_j, compute_lattice_j, exact_stabilization, is_p_stable, stabilized_system_with,
    truncated_stabilization, JForm, StabWindow,
};
use frobkit_core::systems::{verify_p_family, PowerMode, SystemKind};
use frobkit_core::volume::{das_meng_report, volume_sequence};
use frobkit_core::{ExponentVector, FGradedSystem, MonomialIdeal, Rational, SystemContext};
use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PLOT_BUDGET: Duration = Duration::from_secs(1);
const STAB_BUDGET: Duration = Duration::from_secs(60);
const SUITE_BUDGET: Duration = Duration::from_secs(300);
const STAB_INSTANCES: usize = 50;
const STAB_SEED: u64 = 0x5eed_0002;
const BATTERY_DEPTH: u32 = 6;
const BATTERY_SLACK: u32 = 4;
const FPT_DEPTH: u32 = 8;
/// |ratio_8 - 25/98| bound for rounding(m, 5/7), p = 3.
const RATIO_TOLERANCE: (i64, i64) = (2, 10_000);
/// Bound on the ratio / p-body volume discrepancy at E = 8, k = 6.
const DISCREPANCY_TOLERANCE: (i64, i64) = (1, 100);

/// Criteria that can fail for a documented mathematical reason.
const KNOWN_GAPS: &[(u32, &str)] = &[(
    2,
    "the convex-hull J over-approximates the stabilization of some minimal systems; \
     every such mismatch is confirmed against the lattice J",
)];

struct Outcome {
    pass: bool,
    detail: String,
    /// Whether a failure is fully explained by a known gap.
    explained: bool,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Self { pass: true, detail: detail.into(), explained: false }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Self { pass: false, detail: detail.into(), explained: false }
    }
}

fn ctx(p: u64, d: usize) -> SystemContext {
    SystemContext::new(p, d).unwrap()
}

fn ideal(text: &str, d: usize) -> MonomialIdeal {
    parse_ideal(text, d).unwrap()
}

fn abs(r: Rational) -> Rational {
    if r < Rational::from_integer(0.into()) {
        -r
    } else {
        r
    }
}

fn staircase_plot() -> Outcome {
    let mut s = Settings::default();
    for (k, v) in [("p", "3"), ("d", "2"), ("expr", "minimal(I(\"x1^3,x2^6\"))"), ("levels", "1,2,3,8")] {
        s.set(k, v).unwrap();
    }
    let cfg = RunConfig::resolve(s).unwrap();
    let start = Instant::now();
    let svg = run(Command::Plot, &cfg).unwrap();
    let elapsed = start.elapsed();
    let panels = svg.matches(r#"class="panel""#).count();
    let slices = level_slices(&system(&cfg).unwrap(), &[2]);
    let at2: Vec<Vec<u64>> = slices[0]
        .generators
        .iter()
        .map(|g| g.coords().iter().map(|c| u64::try_from(c).unwrap()).collect())
        .collect();
    let mut at2_sorted = at2.clone();
    at2_sorted.sort();
    let expected = vec![vec![0, 24], vec![3, 18], vec![9, 6], vec![12, 0]];
    let detail = format!("{panels} panels, level-2 generators {at2_sorted:?}/9, {elapsed:.2?}");
    if panels == 4 && at2_sorted == expected && slices[0].k == 2 && elapsed < PLOT_BUDGET {
        Outcome::pass(detail)
    } else {
        Outcome::fail(detail)
    }
}

fn random_m_primary(rng: &mut ChaCha8Rng, d: usize) -> MonomialIdeal {
    let mut gens: Vec<ExponentVector> = (0..d)
        .map(|i| {
            let mut v = vec![0u64; d];
            v[i] = rng.gen_range(1..=6);
            ExponentVector::from_u64s(&v)
        })
        .collect();
    if d == 2 && rng.gen_bool(0.7) {
        gens.push(ExponentVector::from_u64s(&[rng.gen_range(0..=6), rng.gen_range(0..=6)]));
    }
    MonomialIdeal::minimalize(d, gens).unwrap()
}

fn stabilization_closed_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(STAB_SEED);
    let start = Instant::now();
    let window = StabWindow::default();
    let (mut compared, mut mismatches, mut confirmed, mut uncertified) = (0, 0, 0, 0);
    let mut first_mismatch = None;
    let mut instances: Vec<(u64, MonomialIdeal, Rational)> = vec![(3, ideal("x1^3, x2^6", 2), rational(5, 7))];
    while instances.len() < STAB_INSTANCES {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let d = rng.gen_range(1..=2);
        let t = rational(rng.gen_range(1..=12), rng.gen_range(1..=4));
        instances.push((p, random_m_primary(&mut rng, d), t));
    }
    for (p, j, t) in &instances {
        let c = ctx(*p, j.dim());
        let kinds = [
            FGradedSystem::minimal(c, j.clone()).unwrap(),
            FGradedSystem::colon(c, j.clone()).unwrap(),
            FGradedSystem::rounding(c, MonomialIdeal::maximal(c.d()), t.clone()).unwrap(),
        ];
        for s in &kinds {
            for e in 1..=2 {
                let r = truncated_stabilization(s, e, &window).unwrap();
                compared += 1;
                if !r.certified {
                    uncertified += 1;
                }
                let closed = closed_form_stabilization(s, e).unwrap();
                if closed != r.ideal || !r.certified {
                    mismatches += 1;
                    first_mismatch.get_or_insert_with(|| format!("{} p={p} e={e}", s.describe()));
                    let explained = r.certified
                        && matches!(s.kind(), SystemKind::Minimal(_))
                        && exact_stabilization(s, e).unwrap() == r.ideal
                        && compute_j(j.generators(), *p).unwrap() != compute_lattice_j(j.generators(), *p).unwrap();
                    if explained {
                        confirmed += 1;
                    }
                }
            }
        }
    }
    let worked = compute_j(&[ExponentVector::from_u64s(&[3, 0]), ExponentVector::from_u64s(&[0, 6])], 3).unwrap()
        == ideal("x1^2, x1*x2, x2^3", 2);
    let elapsed = start.elapsed();
    let mut detail = format!(
        "{compared} comparisons over {} instances, {mismatches} mismatches ({uncertified} uncertified), worked J {}, {elapsed:.2?}",
        instances.len(),
        if worked { "ok" } else { "WRONG" }
    );
    if let Some(m) = first_mismatch {
        detail.push_str(&format!("; first mismatch {m}"));
    }
    if mismatches == 0 && worked && elapsed < STAB_BUDGET {
        Outcome::pass(detail)
    } else {
        let explained = worked && elapsed < STAB_BUDGET && confirmed == mismatches;
        Outcome { pass: false, detail, explained }
    }
}

fn battery_ideals(d: usize) -> Vec<MonomialIdeal> {
    match d {
        1 => vec![ideal("x1", 1), ideal("x1^2", 1), ideal("x1^3", 1)],
        _ => vec![ideal("x1, x2", 2), ideal("x1^3, x2^6", 2), ideal("x1^2, x1*x2, x2^3", 2)],
    }
}

const BATTERY_T: [(i64, i64); 5] = [(1, 2), (1, 1), (3, 2), (2, 1), (5, 7)];

fn theorem_battery() -> Outcome {
    let start = Instant::now();
    let (mut a_runs, mut b_runs) = (0, 0);
    let mut failures = Vec::new();
    for p in [2u64, 3, 5] {
        for d in 1..=2usize {
            let c = ctx(p, d);
            let mut families = vec![FGradedSystem::power_family(c, MonomialIdeal::maximal(d), PowerMode::Pe).unwrap()];
            let mut supported = Vec::new();
            for j in battery_ideals(d) {
                families.push(FGradedSystem::bracket_family(c, j.clone()).unwrap());
                supported.push(FGradedSystem::minimal(c, j.clone()).unwrap());
                supported.push(FGradedSystem::colon(c, j).unwrap());
            }
            for (n, m) in BATTERY_T {
                families.push(FGradedSystem::rounding_stab(c, rational(n, m)).unwrap());
                supported.push(FGradedSystem::rounding(c, MonomialIdeal::maximal(d), rational(n, m)).unwrap());
            }
            for s in &supported {
                families.push(stabilized_system_with(s, JForm::Lattice).unwrap());
            }
            for s in &families {
                a_runs += 1;
                match theorem_a_check(s, BATTERY_DEPTH, BATTERY_SLACK) {
                    Ok(chk) if chk.verdict == Verdict::Consistent => {}
                    other => failures.push(format!("A {} p={p}: {other:?}", s.describe())),
                }
            }
            for s in &supported {
                b_runs += 1;
                match theorem_b_check(s, BATTERY_DEPTH, BATTERY_SLACK) {
                    Ok(chk) if chk.verdict == Verdict::Consistent => {}
                    other => failures.push(format!("B {} p={p}: {other:?}", s.describe())),
                }
            }
            // t = d: split, not strongly F-regular, stabilization m^{d p^e} not split.
            let s = FGradedSystem::rounding(c, MonomialIdeal::maximal(d), rational(d as i64, 1)).unwrap();
            let stab = stabilized_system_with(&s, JForm::Lattice).unwrap();
            let split = f_split_degree(&s, BATTERY_DEPTH).unwrap().degree().is_some();
            let sfr = sfr_degree(&s, BATTERY_DEPTH + BATTERY_SLACK).unwrap().degree().is_some();
            let stab_split = f_split_degree(&stab, BATTERY_DEPTH + BATTERY_SLACK).unwrap().degree().is_some();
            let p_family = verify_p_family(&s, BATTERY_DEPTH).is_ok();
            if !(split && !sfr && !stab_split && !p_family) {
                failures.push(format!(
                    "t=d p={p} d={d}: split {split}, sfr {sfr}, stabilization split {stab_split}, p-family {p_family}"
                ));
            }
        }
    }
    let detail = format!(
        "{a_runs} p-families, {b_runs} closed-form systems, {} failures, {:.2?}",
        failures.len(),
        start.elapsed()
    );
    if failures.is_empty() {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}; {}", failures.join("; ")))
    }
}

fn fpt_grid() -> Outcome {
    let start = Instant::now();
    let mut exceptions = Vec::new();
    let mut cases = 0;
    for d in 1..=3usize {
        let di = d as i64;
        for p in [2u64, 3, 5] {
            for (num, den) in [(1, 2), (1, 1), (3, 2), (7 * di - 1, 7), (di, 1), (3 * di + 1, 3)] {
                cases += 1;
                let t = rational(num, den);
                let s = FGradedSystem::rounding(ctx(p, d), MonomialIdeal::maximal(d), t.clone()).unwrap();
                let r = fsing_report(&s, FPT_DEPTH).unwrap();
                let split_expected = num <= di * den;
                let sfr_expected = num < di * den;
                if r.split.degree().is_some() != split_expected || r.sfr.degree().is_some() != sfr_expected {
                    exceptions.push(format!("d={d} p={p} t={t}"));
                }
            }
        }
    }
    let detail = format!("{cases} cases, {} exceptions, {:.2?}", exceptions.len(), start.elapsed());
    if exceptions.is_empty() {
        Outcome::pass(detail)
    } else {
        Outcome::fail(format!("{detail}: {}", exceptions.join(", ")))
    }
}

fn volume_check() -> Outcome {
    let start = Instant::now();
    let c = ctx(3, 2);
    let s = FGradedSystem::rounding(c, MonomialIdeal::maximal(2), rational(5, 7)).unwrap();
    let seq = volume_sequence(&s, 8).unwrap();
    let last = seq.entries.last().unwrap();
    let exact_ok = last.e == 8
        && last.colength == BigUint::from(10_981_641u32)
        && last.ratio == rational(10_981_641, 43_046_721);
    let gap = abs(&last.ratio - rational(25, 98));
    let gap_ok = gap < rational(RATIO_TOLERANCE.0, RATIO_TOLERANCE.1);
    let report = das_meng_report(&s, 8, 6, &StabWindow::default()).unwrap();
    let disc = report.discrepancy.clone().unwrap();
    let disc_ok = disc < rational(DISCREPANCY_TOLERANCE.0, DISCREPANCY_TOLERANCE.1);
    let mut bracket_ok = true;
    for (p, d) in [(2u64, 1usize), (2, 2), (3, 2), (2, 3)] {
        let b = FGradedSystem::bracket_family(ctx(p, d), MonomialIdeal::maximal(d)).unwrap();
        let r = das_meng_report(&b, 6, 3, &StabWindow::default()).unwrap();
        bracket_ok &= r.discrepancy == Some(Rational::from_integer(0.into()));
    }
    let detail = format!(
        "ratio_8 = {} (exact {}), |ratio_8 - 25/98| = {:.2e}, discrepancy {:.2e}, bracket discrepancy {}, {:.2?}",
        last.ratio,
        if exact_ok { "ok" } else { "WRONG" },
        to_f64(&gap),
        to_f64(&disc),
        if bracket_ok { "0" } else { "nonzero" },
        start.elapsed()
    );
    if exact_ok && gap_ok && disc_ok && bracket_ok {
        Outcome::pass(detail)
    } else {
        Outcome::fail(detail)
    }
}

fn to_f64(r: &Rational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap();
    let d: f64 = r.denom().to_string().parse().unwrap();
    n / d
}

/// Fixed-instance versions of the randomized property suites, which run in
/// full under `cargo test --workspace`.
fn property_spot_checks() -> Outcome {
    let start = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let w = StabWindow::new(1, 6).unwrap();
    for (p, text) in [(2u64, "x1^3, x1*x2, x2^2"), (3, "x1^3, x2^6"), (5, "x1^2, x2^5")] {
        let c = ctx(p, 2);
        let j = ideal(text, 2);
        // Box-oracle colength.
        let corner: Vec<u64> = j.max_corner().coords().iter().map(|x| u64::try_from(x).unwrap()).collect();
        let mut count = 0u64;
        for a in 0..corner[0] {
            for b in 0..corner[1] {
                if !j.contains(&ExponentVector::from_u64s(&[a, b])) {
                    count += 1;
                }
            }
        }
        check("colength box oracle", j.colength().finite() == Some(&BigUint::from(count)));
        let minimal = FGradedSystem::minimal(c, j.clone()).unwrap();
        let colon = FGradedSystem::colon(c, j.clone()).unwrap();
        let round = FGradedSystem::rounding(c, MonomialIdeal::maximal(2), rational(5, 3)).unwrap();
        for s in [&minimal, &colon, &round] {
            let stab = stabilized_system_with(s, JForm::Lattice).unwrap();
            for e in 1..=2 {
                let r = truncated_stabilization(s, e, &w).unwrap();
                // a_1 a_e ⊆ pstab_e and idempotence.
                let lower = s.term(1).product(&s.term(e)).unwrap();
                check("a_1 a_e in pstab_e", lower.is_subset_of(&r.ideal).unwrap());
                let again = truncated_stabilization(&stab, e, &w).unwrap();
                check("idempotence", again.ideal == *stab.term(e));
            }
            for k in 0..=2 {
                let a = pbody_approx(s, k, &w).unwrap();
                let b = pbody_approx_direct(s, k, &w).unwrap();
                check("dual-path slices", a.ideal == b.ideal);
            }
            // Upward closure of membership.
            for n in [[4u64, 7], [9, 2], [13, 13]] {
                let alpha = ScaledPoint::new(ExponentVector::from_u64s(&n), 2);
                if pbody_membership(&alpha, s, 1, 6).unwrap() == Membership::In {
                    for i in 0..2 {
                        let mut m = n;
                        m[i] += 1;
                        let beta = ScaledPoint::new(ExponentVector::from_u64s(&m), 2);
                        check("upward closure", pbody_membership(&beta, s, 1, 6).unwrap() == Membership::In);
                    }
                }
            }
        }
        // p-families expand into their stabilization.
        let bracket = FGradedSystem::bracket_family(c, j.clone()).unwrap();
        for e in 1..=2 {
            let r = truncated_stabilization(&bracket, e, &w).unwrap();
            check("expansion", bracket.term(e).is_subset_of(&r.ideal).unwrap());
        }
        // Monotonicity: a smaller ideal stabilizes into a smaller ideal.
        let smaller = j.product(&MonomialIdeal::maximal(2)).unwrap();
        let small = FGradedSystem::minimal(c, smaller).unwrap();
        for e in 1..=2 {
            let (ra, rb) = (
                truncated_stabilization(&small, e, &w).unwrap(),
                truncated_stabilization(&minimal, e, &w).unwrap(),
            );
            check("monotonicity", ra.ideal.is_subset_of(&rb.ideal).unwrap());
        }
    }
    // One-variable p-stable systems: ⌈g_{e+1}/p⌉ = g_e.
    for p in [2u64, 3, 5] {
        let c = ctx(p, 1);
        for s in [
            FGradedSystem::rounding_stab(c, rational(7, 3)).unwrap(),
            FGradedSystem::bracket_family(c, ideal("x1^4", 1)).unwrap(),
            stabilized_system_with(&FGradedSystem::minimal(c, ideal("x1^5", 1)).unwrap(), JForm::Lattice).unwrap(),
        ] {
            check("p-stable", is_p_stable(&s, 4).unwrap().is_ok());
            let g: Vec<BigUint> = (1..=5).map(|e| s.term(e).generators()[0].coords()[0].clone()).collect();
            let pb = BigUint::from(p);
            check("one-variable digits", g.windows(2).all(|w| w[1].div_ceil(&pb) == w[0]));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("{} failures, {elapsed:.2?}", failures.len());
    if failures.is_empty() && elapsed < SUITE_BUDGET {
        Outcome::pass(detail)
    } else {
        failures.dedup();
        Outcome::fail(format!("{detail}: {}", failures.join(", ")))
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 6] = [
        (1, "staircase plot of minimal(<x^3, y^6>) at levels 1, 2, 3, 8", staircase_plot),
        (2, "truncated vs closed-form stabilization", stabilization_closed_forms),
        (3, "Theorem A/B battery", theorem_battery),
        (4, "F-pure threshold grid for rounding(m, t)", fpt_grid),
        (5, "volume of rounding(m, 5/7) and Das-Meng discrepancy", volume_check),
        (6, "property spot checks", property_spot_checks),
    ];
    let mut unexpected = 0;
    for (n, name, f) in criteria {
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("[{n}] {status} {name}: {}", o.detail);
        if !o.pass {
            match KNOWN_GAPS.iter().find(|(k, _)| *k == n) {
                Some((_, why)) if o.explained => println!("    known gap: {why}"),
                _ => unexpected += 1,
            }
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
