//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use geamkit::designs::{conical_check_direct, kappas_closed_form};
use geamkit::fixtures::{trine_pair, unequal_trace_qubit_design, von_neumann_trine_geam};
use geamkit::geam::{
    completeness_rank, constant_r_family, design2_family, extract_parameters, max_conical_r, mub_geam,
    random_geam, uniform_conical_family,
};
use geamkit::gsm::extremal_mixing;
use geamkit::operator::{hs_inner, random_density, trace_distance, DensityOperator, DEFAULT_TOL};
use geamkit::tomography::{
    born_probabilities, geam_dual_frame, index_of_coincidence, ioc_closed_form, purity_from_probabilities,
    reconstruct_state, reconstruction_errors,
};
use geamkit::{gell_mann_basis, partition_basis, Exec, Geam, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn s5() -> f64 {
    5f64.sqrt()
}

/// Largest trace distance between `rho` and its exact-probability
/// reconstruction.
fn duality_gap(g: &Geam, rho: &DensityOperator) -> Result<f64> {
    let t = born_probabilities(rho, g)?;
    let est = reconstruct_state(&t, &geam_dual_frame(g)?, false)?;
    trace_distance(&est, rho.operator())
}

fn conical_families() -> Result<Vec<(&'static str, Geam)>> {
    let b2 = gell_mann_basis(2)?;
    let b3 = gell_mann_basis(3)?;
    let uniform = |d: usize, sizes: &[usize], frac: f64| -> Result<Geam> {
        let basis = gell_mann_basis(d)?;
        let tmax = extremal_mixing(&partition_basis(&basis, sizes)?)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        uniform_conical_family(d, sizes, frac * max_conical_r(d, sizes).min(tmax * tmax), &basis)
    };
    Ok(vec![
        ("constant-R d=2 [2,3]", constant_r_family(2, &[2, 3], 0.5, &b2)?),
        ("constant-R d=3 [3,3,3,3]", constant_r_family(3, &[3, 3, 3, 3], 0.2, &b3)?),
        ("constant-R d=3 [2,3,6]", constant_r_family(3, &[2, 3, 6], 0.1, &b3)?),
        ("eta d=2 [2,3]", design2_family(2, &[2, 3], 0.25, &b2)?),
        ("eta d=3 [3,3,3,3]", design2_family(3, &[3, 3, 3, 3], 0.6, &b3)?),
        ("eta d=3 [4,6]", design2_family(3, &[4, 6], 0.7, &b3)?),
        ("eta d=4 [4,4,4,4,4]", design2_family(4, &[4; 5], 0.8, &gell_mann_basis(4)?)?),
        ("uniform d=2 [2,3]", uniform(2, &[2, 3], 0.8)?),
        ("uniform d=3 [2,2,2,2,2,2,2,2]", uniform(3, &[2; 8], 0.9)?),
        ("uniform d=3 [3,7]", uniform(3, &[3, 7], 0.5)?),
    ])
}

fn c1() -> Result<Outcome> {
    let g = von_neumann_trine_geam()?;
    let mut dev: f64 = 0.0;
    for p in g.elements() {
        dev = dev.max((p.trace() - 0.4).abs());
        dev = dev.max((hs_inner(&p, &p)? - 4.0 / 25.0).abs());
    }
    dev = dev.max(hs_inner(&g.lines[0][0], &g.lines[0][1])?.abs());
    for k in 0..3 {
        for l in 0..3 {
            if k != l {
                dev = dev.max((hs_inner(&g.lines[1][k], &g.lines[1][l])? - 1.0 / 25.0).abs());
            }
        }
    }
    for p in &g.lines[0] {
        for q in &g.lines[1] {
            dev = dev.max((hs_inner(p, q)? - 2.0 / 25.0).abs());
        }
    }
    ok(dev <= 1e-12, format!("max deviation {dev:.3e}"))
}

fn c2() -> Result<Outcome> {
    let big_b = (7.0 - 3.0 * s5()) / 2.0;
    let big_c = (7.0 - 3.0 * s5()) / 8.0;
    let big_f = s5() * (7.0 - 3.0 * s5()) / 8.0;
    let gamma1 = s5() * (3.0 - s5()) / 4.0;
    let a2 = (3.0 - s5()) / 2.0;
    let built = design2_family(2, &[2, 3], 0.25, &gell_mann_basis(2)?)?;
    let printed = unequal_trace_qubit_design()?;
    let mut dev: f64 = 0.0;
    let mut verified = true;
    for g in [&built, &printed] {
        let r = extract_parameters(g, DEFAULT_TOL);
        verified &= r.pass;
        let p = &r.params;
        for a in 0..2 {
            dev = dev.max((p.b[a] * p.a[a] * p.a[a] - big_b).abs());
            dev = dev.max((p.c[a] * p.a[a] * p.a[a] - big_c).abs());
        }
        dev = dev.max((p.f * p.a[0] * p.a[1] - big_f).abs());
        dev = dev.max((g.gammas[0] - gamma1).abs());
        dev = dev.max((p.a[1] - a2).abs());
    }
    ok(dev <= 1e-12 && verified, format!("max deviation {dev:.3e}, printed family verifies: {verified}"))
}

fn c3() -> Result<Outcome> {
    let mut dev: f64 = 0.0;
    let mut resid: f64 = 0.0;
    let mut all_design = true;
    for d in [2usize, 3, 5] {
        let g = mub_geam(d)?;
        let df = d as f64;
        let p = extract_parameters(&g, DEFAULT_TOL).params;
        for a in 0..=d {
            dev = dev.max((p.a[a] - 1.0 / (df + 1.0)).abs());
            dev = dev.max((p.b[a] - 1.0).abs());
            dev = dev.max(p.c[a].abs());
        }
        dev = dev.max((p.f - 1.0 / df).abs());
        let c = conical_check_direct(&g, DEFAULT_TOL);
        let k = 1.0 / (df + 1.0).powi(2);
        dev = dev.max((c.kappa_plus - k).abs()).max((c.kappa_minus - k).abs());
        resid = resid.max(c.residual);
        all_design &= c.is_design;
    }
    ok(
        dev <= 1e-10 && resid <= 1e-10 && all_design,
        format!("max deviation {dev:.3e}, max residual {resid:.3e}"),
    )
}

fn c4() -> Result<Outcome> {
    let mut bad = 0;
    let mut gap: f64 = 0.0;
    for i in 0..200u64 {
        let d = 2 + (i % 3) as usize;
        let g = random_geam(d, 1000 + i)?;
        let c = completeness_rank(&g, DEFAULT_TOL);
        if c.rank != d * d || c.element_count != d * d + g.line_count() - 1 {
            bad += 1;
        }
        gap = gap.max(duality_gap(&g, &random_density(d, 1 + (i as usize) % d, i)?)?);
    }
    let trine = completeness_rank(&trine_pair()?, DEFAULT_TOL).rank;
    let three = design2_family(2, &[2, 2, 2], 0.0, &gell_mann_basis(2)?)?;
    let count = completeness_rank(&three, DEFAULT_TOL).element_count;
    DUALITY.with(|d| d.set(d.get().max(gap)));
    ok(
        bad == 0 && trine == 3 && count == 6,
        format!("{bad}/200 random families off the rank law, trine pair rank {trine}, [2,2,2] count {count}"),
    )
}

fn c5() -> Result<Outcome> {
    let mut dev: f64 = 0.0;
    let mut gap_pm: f64 = f64::INFINITY;
    let mut all_design = true;
    for (_, g) in conical_families()? {
        let direct = conical_check_direct(&g, DEFAULT_TOL);
        let closed = kappas_closed_form(&g, DEFAULT_TOL)?;
        all_design &= direct.is_design && closed.is_design;
        dev = dev.max((direct.kappa_plus - closed.kappa_plus).abs());
        dev = dev.max((direct.kappa_minus - closed.kappa_minus).abs());
        gap_pm = gap_pm.min(direct.kappa_plus - direct.kappa_minus);
    }
    let vt = von_neumann_trine_geam()?;
    let s = vt.line_s();
    let rejected = !conical_check_direct(&vt, DEFAULT_TOL).is_design
        && kappas_closed_form(&vt, DEFAULT_TOL).is_err()
        && (s[0] - 4.0 / 25.0).abs() < 1e-12
        && (s[1] - 3.0 / 25.0).abs() < 1e-12;
    ok(
        dev <= 1e-9 && gap_pm >= -1e-10 && all_design && rejected,
        format!("max kappa gap {dev:.3e}, min k+ - k- {gap_pm:.3e}, non-design rejected: {rejected}"),
    )
}

fn c6() -> Result<Outcome> {
    let mut families = conical_families()?;
    for d in [2usize, 3, 5] {
        families.push(("mub", mub_geam(d)?));
    }
    let mut dev: f64 = 0.0;
    let mut max_dev: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for (fi, (_, g)) in families.iter().enumerate() {
        for s in 0..100u64 {
            let rank = 1 + (s as usize) % g.d;
            let rho = random_density(g.d, rank, 7919 * fi as u64 + s)?;
            let t = born_probabilities(&rho, g)?;
            let cf = ioc_closed_form(g, rho.purity(), DEFAULT_TOL)?;
            let c = index_of_coincidence(&t);
            dev = dev.max((c - cf.c).abs());
            if rank == 1 {
                max_dev = max_dev.max((c - cf.c_max).abs());
            }
            gap = gap.max(duality_gap(g, &rho)?);
        }
    }
    let mub2 = mub_geam(2)?;
    let pure = index_of_coincidence(&born_probabilities(&DensityOperator::basis_state(2, 0), &mub2)?);
    let mixed = index_of_coincidence(&born_probabilities(&DensityOperator::maximally_mixed(2), &mub2)?);
    let cmax = ioc_closed_form(&mub2, 1.0, DEFAULT_TOL)?.c_max;
    let spot = (pure - 2.0 / 9.0).abs().max((cmax - 2.0 / 9.0).abs()).max((mixed - 1.0 / 6.0).abs());
    DUALITY.with(|d| d.set(d.get().max(gap)));
    ok(
        dev <= 1e-10 && max_dev <= 1e-10 && spot <= 1e-10,
        format!("max |C - closed form| {dev:.3e}, pure-state |C - C_max| {max_dev:.3e}, spot values {spot:.3e}"),
    )
}

fn c7() -> Result<Outcome> {
    let g = von_neumann_trine_geam()?;
    let mut dev: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for s in 0..100u64 {
        let rho = random_density(2, 1 + (s as usize) % 2, 31 + s)?;
        let t = born_probabilities(&rho, &g)?;
        dev = dev.max((purity_from_probabilities(&g, &t)? - rho.purity()).abs());
        gap = gap.max(duality_gap(&g, &rho)?);
    }
    DUALITY.with(|d| d.set(d.get().max(gap)));
    ok(dev <= 1e-10, format!("max purity deviation {dev:.3e}"))
}

fn c8() -> Result<Outcome> {
    let gap = DUALITY.with(|d| d.get());
    ok(gap <= 1e-10, format!("max trace distance over criteria 4-7: {gap:.3e}"))
}

fn c9() -> Result<Outcome> {
    let g = mub_geam(2)?;
    let mut good = 0;
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let rho = random_density(2, 1, 5000 + seed)?;
        let e = reconstruction_errors(&rho, &g, 1_000_000, &[seed], Exec::Sequential)?[0];
        worst = worst.max(e);
        if e <= 0.01 {
            good += 1;
        }
    }
    ok(good >= 95, format!("{good}/100 runs within 0.01 (worst {worst:.3e})"))
}

thread_local! {
    static DUALITY: std::cell::Cell<f64> = const { std::cell::Cell::new(0.0) };
}

fn main() -> ExitCode {
    type Check = fn() -> Result<Outcome>;
    let checks: [(&str, Check, u64); 9] = [
        ("von Neumann + trine equal-trace family traces", c1, 1),
        ("eta = 1/4 qubit family constants and printed matrices", c2, 1),
        ("MUB parameters and design constants, d = 2, 3, 5", c3, 5),
        ("rank law over 200 random families", c4, 30),
        ("direct vs closed-form design constants", c5, 10),
        ("index of coincidence closed form", c6, 10),
        ("purity from probabilities on a non-design family", c7, 5),
        ("frame duality", c8, 1),
        ("finite-shot qubit tomography", c9, 60),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (pass, detail) = match outcome {
            Ok(o) => (o.pass && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} [{}] {name}: {detail}; {:.2}s (limit {limit}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
