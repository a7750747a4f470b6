use std::collections::BTreeSet;

use anyhow::Result;
use clap::ValueEnum;
use gl2modp::arith::Elem;
use gl2modp::heckegk::compare_gk;
use gl2modp::lmorphism::{l_map, supersingular_bijection, weights_compatible};
use gl2modp::phigamma::{
    build_irreducible_module, check_semilinearity, exterior_det_check, sample_units, sharp_lattice,
};
use gl2modp::satake::{self, twist_action_s};
use gl2modp::types_weights::{
    digits_to_weight, enumerate_types, is_generic, not_in_w_tau, not_in_w_tau_formal, type_digits, WeightDigits,
};
use gl2modp::xscheme::{self, act_by_twist, iota_canonical, iota_inverse};
use gl2modp::{is_q_primitive, Ctx, InertialType, SemisimpleRep};
use rayon::prelude::*;
use serde_json::json;

use crate::commands::Report;
use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    All,
    Types,
    Xscheme,
    Satake,
    Correspond,
    Weights,
    Gk,
    Phigamma,
    Lattice,
    Serre,
}

const SUITES: [Suite; 9] = [
    Suite::Types,
    Suite::Xscheme,
    Suite::Satake,
    Suite::Correspond,
    Suite::Weights,
    Suite::Gk,
    Suite::Phigamma,
    Suite::Lattice,
    Suite::Serre,
];

struct Check {
    name: &'static str,
    pass: Option<bool>,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name, pass: Some(pass), detail: detail.into() }
}

fn skip(name: &'static str, detail: impl Into<String>) -> Check {
    Check { name, pass: None, detail: detail.into() }
}

/// Points per fiber tested for equivariance; larger fibers are thinned by a fixed stride.
const FIBER_SAMPLE: usize = 256;

/// `F_q^x` together with a generator of the coefficient field.
fn sample_z2(ctx: &Ctx) -> Vec<Elem> {
    let mut zs: BTreeSet<Elem> = ctx.fq_units().into_iter().collect();
    zs.insert(ctx.k_units()[1]);
    zs.into_iter().collect()
}

fn types(ctx: &Ctx) -> Result<Vec<Check>> {
    let q = ctx.q() as u64;
    let mut bad = Vec::new();
    for d in 0..q - 1 {
        let n1 =
            (0..q - 1).flat_map(|a| (a..q - 1).map(move |b| (a, b))).filter(|(a, b)| (a + b) % (q - 1) == d).count();
        let orbits: BTreeSet<u64> = (1..q * q - 1)
            .filter(|e| e * q % (q * q - 1) != *e && e % (q - 1) == d)
            .map(|e| e.min(e * q % (q * q - 1)))
            .collect();
        let got = (enumerate_types(ctx, d as u32, 1)?.len(), enumerate_types(ctx, d as u32, 2)?.len());
        if got != (n1, orbits.len()) {
            bad.push(format!("det {d}: {got:?} vs {:?}", (n1, orbits.len())));
        }
    }
    let detail = if bad.is_empty() { format!("{} determinants", q - 1) } else { bad.join("; ") };
    Ok(vec![check("type counts", bad.is_empty(), detail)])
}

fn xscheme(ctx: &Ctx) -> Result<Vec<Check>> {
    let mut round_trip = true;
    let mut injective = true;
    let mut points = 0;
    for z2 in sample_z2(ctx) {
        for n in 0..ctx.q() - 1 {
            let pts = xscheme::points(ctx, n, z2);
            let mut reps = BTreeSet::new();
            for pt in &pts {
                let rho = iota_canonical(ctx, pt)?;
                round_trip &= iota_inverse(ctx, &rho, false)? == *pt;
                reps.insert(rho);
            }
            injective &= reps.len() == pts.len();
            points += pts.len();
        }
    }
    Ok(vec![
        check("iota round trip", round_trip, format!("{points} points")),
        check("iota injective", injective, format!("{points} points")),
    ])
}

fn satake(ctx: &Ctx) -> Result<Vec<Check>> {
    let q = ctx.q() as i64;
    let zs = [ctx.zeta(), ctx.k_units()[1]];
    let jobs: Vec<_> = sample_z2(ctx).into_iter().flat_map(|z2| (0..ctx.q() - 1).map(move |n| (n, z2))).collect();
    let counts = jobs
        .par_iter()
        .map(|&(n, z2)| {
            let mut bad = 0;
            let mut total = 0;
            let pts = satake::points(ctx, n, z2);
            let stride = pts.len().div_ceil(FIBER_SAMPLE).max(1);
            for s in pts.into_iter().step_by(stride) {
                let x = l_map(ctx, &s)?;
                for a in 0..q - 1 {
                    for &z in &zs {
                        total += 1;
                        if l_map(ctx, &twist_action_s(ctx, a, z, &s)?)? != act_by_twist(ctx, a, z, &x)? {
                            bad += 1;
                        }
                    }
                }
            }
            Ok((bad, total))
        })
        .collect::<Result<Vec<(usize, usize)>>>()?;
    let (bad, total) = counts.iter().fold((0, 0), |acc, c| (acc.0 + c.0, acc.1 + c.1));
    Ok(vec![check("L equivariant", bad == 0, format!("{bad} of {total} cases differ"))])
}

fn correspond(ctx: &Ctx) -> Result<Vec<Check>> {
    let q = ctx.q() as usize;
    let mut bad = Vec::new();
    for z2 in sample_z2(ctx) {
        match supersingular_bijection(ctx, z2) {
            Ok(rows) if rows.len() == (q * q - q) / 2 => {}
            Ok(rows) => bad.push(format!("z2={}: {} rows", ctx.show(z2), rows.len())),
            Err(e) => bad.push(format!("z2={}: {e}", ctx.show(z2))),
        }
    }
    let detail = if bad.is_empty() { format!("{} rows per fiber", (q * q - q) / 2) } else { bad.join("; ") };
    Ok(vec![check("supersingular bijection", bad.is_empty(), detail)])
}

fn weights(ctx: &Ctx) -> Result<Vec<Check>> {
    let mut bad = Vec::new();
    for z2 in sample_z2(ctx) {
        for n in 0..ctx.q() - 1 {
            if !weights_compatible(ctx, n, z2)? {
                bad.push(format!("n={n} z2={}", ctx.show(z2)));
            }
        }
    }
    let detail = if bad.is_empty() { format!("n = 0..{}", ctx.q() - 2) } else { bad.join("; ") };
    Ok(vec![check("component weights", bad.is_empty(), detail)])
}

fn gk(ctx: &Ctx) -> Result<Vec<Check>> {
    let q = ctx.q() as i64;
    let jobs: Vec<_> =
        (1..q).flat_map(|h| (0..q - 1).flat_map(move |s| sample_z2(ctx).into_iter().map(move |l| (h, s, l)))).collect();
    let fails = jobs
        .par_iter()
        .map(|&(h, s, l)| Ok(!compare_gk(ctx, &SemisimpleRep::irred(ctx, h, s, l)?)?))
        .collect::<Result<Vec<bool>>>()?;
    let bad = fails.iter().filter(|&&b| b).count();
    Ok(vec![check("Hecke parameters agree", bad == 0, format!("{bad} of {} differ", jobs.len()))])
}

fn phigamma(ctx: &Ctx) -> Result<Vec<Check>> {
    let q = ctx.q();
    let mut jobs = Vec::new();
    for n in 1..=3u32 {
        let h = if n == 1 { 1 } else { (1..).find(|&h| is_q_primitive(q, h, n).unwrap_or(false)).expect("exists") };
        jobs.push((n, h));
    }
    let results = jobs
        .par_iter()
        .map(|&(n, h)| {
            let d = build_irreducible_module(ctx, h, n, 1, ctx.k_units()[1], 20, None)?;
            let us = sample_units(d.ring(), 4, 0)?;
            let r = check_semilinearity(&d, &us)?;
            let e = exterior_det_check(&d, &us)?;
            Ok((n, h, r.ok(), e.phi_ok && e.gamma_ok))
        })
        .collect::<Result<Vec<_>>>()?;
    let detail = |k: usize| {
        results
            .iter()
            .map(|r| format!("n={} h={}: {}", r.0, r.1, if k == 0 { r.2 } else { r.3 }))
            .collect::<Vec<_>>()
            .join("; ")
    };
    Ok(vec![
        check("phi/Gamma semilinearity", results.iter().all(|r| r.2), detail(0)),
        check("determinant", results.iter().all(|r| r.3), detail(1)),
    ])
}

fn lattice(ctx: &Ctx) -> Result<Vec<Check>> {
    let q = ctx.q();
    let mut bad = Vec::new();
    for h in 1..q {
        let lat = sharp_lattice(ctx, h)?;
        if lat.h2 != h as u64 * (q as u64 - 1) || !lat.check_psi_stable()? {
            bad.push(format!("h={h}"));
        }
    }
    let detail = if bad.is_empty() { format!("h = 1..{}", q - 1) } else { format!("failing: {}", bad.join(" ")) };
    Ok(vec![check("psi-stable lattice", bad.is_empty(), detail)])
}

fn serre(ctx: &Ctx) -> Result<Vec<Check>> {
    if ctx.f() < 2 {
        return Ok(vec![skip("Serre weights", "needs f >= 2")]);
    }
    let pp = ctx.pp();
    let formal = not_in_w_tau_formal(pp, true)? && not_in_w_tau_formal(pp, false)?;
    let q = ctx.q() as i64;
    let mut generic = 0;
    let mut membership = true;
    for e in 1..q * q - 1 {
        let Ok(tau) = InertialType::niveau2(ctx, e) else { continue };
        if tau != (InertialType::Niveau2 { e: e as u32 }) || !is_generic(ctx, &tau)? {
            continue;
        }
        generic += 1;
        for (_, s, d) in type_digits(ctx, &tau)? {
            let digits = d.iter().map(|&x| x as u32).collect();
            let w = digits_to_weight(pp, &WeightDigits { digits, s: ctx.red(s) })?;
            membership &= !not_in_w_tau(ctx, &w, &tau, true)? && !not_in_w_tau(ctx, &w, &tau, false)?;
        }
    }
    Ok(vec![
        check("formal exclusion", formal, "(x0, x1+1) excluded under both readings"),
        check("identity membership", membership, format!("{generic} generic writings")),
    ])
}

pub fn run(ctx: &Ctx, suite: Suite) -> Result<Report> {
    let suites: Vec<Suite> = if suite == Suite::All { SUITES.to_vec() } else { vec![suite] };
    let results = suites
        .par_iter()
        .map(|&s| {
            let checks = match s {
                Suite::All => unreachable!(),
                Suite::Types => types(ctx),
                Suite::Xscheme => xscheme(ctx),
                Suite::Satake => satake(ctx),
                Suite::Correspond => correspond(ctx),
                Suite::Weights => weights(ctx),
                Suite::Gk => gk(ctx),
                Suite::Phigamma => phigamma(ctx),
                Suite::Lattice => lattice(ctx),
                Suite::Serre => serre(ctx),
            };
            let checks = checks.unwrap_or_else(|e| vec![check("error", false, e.to_string())]);
            (s, checks)
        })
        .collect::<Vec<_>>();
    let mut t = Table::new(&["suite", "check", "status", "detail"]);
    let mut ok = true;
    for (s, checks) in results {
        let name = s.to_possible_value().expect("named").get_name().to_string();
        for c in checks {
            ok &= c.pass != Some(false);
            let status = match c.pass {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skip",
            };
            t.push(vec![json!(name), json!(c.name), json!(status), json!(c.detail)]);
        }
    }
    Ok(Report { table: t, ok })
}
