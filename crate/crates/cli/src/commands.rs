use anyhow::Result;
use gl2modp::arith::{Elem, TruncLaurent};
use gl2modp::heckegk::{compare_gk, gk_params, gk_twist, params_from_l};
use gl2modp::lmorphism::{correspondence_table, l_map};
use gl2modp::phigamma::{
    build_irreducible_module, check_semilinearity, exterior_det_check, sample_units, sharp_lattice,
    torsion_dual_relations, PhiGammaModule,
};
use gl2modp::satake;
use gl2modp::types_weights::{
    digits_to_weight, enumerate_types, is_generic, not_in_w_tau, type_digits, Weight, WeightDigits,
};
use gl2modp::xscheme::{self, iota_canonical};
use gl2modp::{Ctx, GaloisCharacter, InertialType, SemisimpleRep};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::show;
use crate::table::Table;

/// Command output: the table and whether every check in it passed.
pub struct Report {
    pub table: Table,
    pub ok: bool,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Report { table, ok: true }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Usage(pub String);

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

pub fn parse_elem(ctx: &Ctx, s: &str) -> Result<Elem> {
    ctx.field().parse(s).map_err(|e| usage(e.to_string()))
}

pub fn parse_unit_in_k(ctx: &Ctx, s: &str, what: &str) -> Result<Elem> {
    let x = parse_elem(ctx, s)?;
    if x.is_zero() || !ctx.in_k(x) {
        return Err(usage(format!("{what} = {s} is not a unit of F_{}", (ctx.q() as u64).pow(ctx.m()))));
    }
    Ok(x)
}

fn fibers(ctx: &Ctx, n: Option<u32>, z2: Option<&str>) -> Result<Vec<(u32, Elem)>> {
    let q = ctx.q();
    let ns: Vec<u32> = match n {
        Some(n) if n >= q - 1 => return Err(usage(format!("n = {n} must be below {}", q - 1))),
        Some(n) => vec![n],
        None => (0..q - 1).collect(),
    };
    let zs = match z2 {
        Some(s) => vec![parse_unit_in_k(ctx, s, "z2")?],
        None => ctx.k_units(),
    };
    Ok(ns.iter().flat_map(|&n| zs.iter().map(move |&z| (n, z))).collect())
}

pub fn types(ctx: &Ctx, det: Option<u32>, niveau: Option<u32>) -> Result<Report> {
    let q = ctx.q();
    let dets: Vec<u32> = match det {
        Some(d) if d >= q - 1 => return Err(usage(format!("det = {d} must be below {}", q - 1))),
        Some(d) => vec![d],
        None => (0..q - 1).collect(),
    };
    let niveaus: Vec<u32> = match niveau {
        Some(v @ (1 | 2)) => vec![v],
        Some(v) => return Err(usage(format!("niveau = {v} must be 1 or 2"))),
        None => vec![1, 2],
    };
    let mut t = Table::new(&["det", "niveau", "exponents", "type", "generic"]);
    for d in dets {
        for &v in &niveaus {
            for ty in enumerate_types(ctx, d, v)? {
                let (exps, generic) = match ty {
                    InertialType::Niveau1 { a, b } => (json!([a, b]), Value::Null),
                    InertialType::Niveau2 { e } if ctx.f() > 1 => (json!([e]), json!(is_generic(ctx, &ty)?)),
                    InertialType::Niveau2 { e } => (json!([e]), Value::Null),
                };
                t.push(vec![json!(d), json!(v), exps, json!(show::inertial_type(ctx, &ty)), generic]);
            }
        }
    }
    Ok(t.into())
}

pub fn xscheme(ctx: &Ctx, n: Option<u32>, z2: Option<&str>) -> Result<Report> {
    let rows = fibers(ctx, n, z2)?
        .par_iter()
        .map(|&(n, z2)| {
            xscheme::points(ctx, n, z2)
                .into_iter()
                .map(|pt| {
                    let rho = iota_canonical(ctx, &pt)?;
                    Ok(vec![
                        json!(n),
                        json!(show::elem(ctx, z2)),
                        json!(show::position_kind(&pt.pos)),
                        json!(pt.pos.component(ctx)),
                        json!(show::position(ctx, &pt.pos)),
                        json!(pt.pos.is_closed_orbit()),
                        json!(show::rep(ctx, &rho)),
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["n", "z2", "kind", "component", "position", "closed", "rep"]);
    rows.into_iter().flatten().for_each(|r| t.push(r));
    Ok(t.into())
}

pub fn satake(ctx: &Ctx, n: Option<u32>, z2: Option<&str>) -> Result<Report> {
    let mut t = Table::new(&["n", "z2", "component", "pair", "weyl", "regular", "coords", "supersingular"]);
    for (n, z2) in fibers(ctx, n, z2)? {
        for s in satake::points(ctx, n, z2) {
            let label = s.label(ctx);
            t.push(vec![
                json!(n),
                json!(show::elem(ctx, z2)),
                json!(s.comp),
                json!(show::pair(label.pair)),
                json!(show::pair(label.weyl())),
                json!(label.regular),
                json!(show::coords(ctx, &s.coords)),
                json!(s.is_supersingular()),
            ]);
        }
    }
    Ok(t.into())
}

pub fn lmap(ctx: &Ctx, n: Option<u32>, z2: Option<&str>) -> Result<Report> {
    let rows = fibers(ctx, n, z2)?
        .par_iter()
        .map(|&(n, z2)| {
            satake::points(ctx, n, z2)
                .into_iter()
                .map(|s| {
                    let x = l_map(ctx, &s)?;
                    Ok(vec![
                        json!(n),
                        json!(show::elem(ctx, z2)),
                        json!(s.comp),
                        json!(show::coords(ctx, &s.coords)),
                        json!(show::position(ctx, &x.pos)),
                        json!(show::rep(ctx, &iota_canonical(ctx, &x)?)),
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["n", "z2", "component", "coords", "image", "rep"]);
    rows.into_iter().flatten().for_each(|r| t.push(r));
    Ok(t.into())
}

pub fn correspond(ctx: &Ctx, z2: Option<&str>, all: bool) -> Result<Report> {
    let zs = match z2 {
        Some(s) => vec![parse_unit_in_k(ctx, s, "z2")?],
        None => ctx.k_units(),
    };
    let tables = zs.par_iter().map(|&z| Ok(correspondence_table(ctx, z, !all)?)).collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["n", "z2", "component", "coords", "gamma", "u2", "image", "rep"]);
    for r in tables.into_iter().flatten() {
        t.push(vec![
            json!(r.s.n),
            json!(show::elem(ctx, r.s.z2)),
            json!(r.s.comp),
            json!(show::coords(ctx, &r.s.coords)),
            json!(show::pair(r.gamma)),
            json!(show::elem(ctx, r.u2)),
            json!(show::position(ctx, &r.x.pos)),
            json!(show::rep(ctx, &r.rho)),
        ]);
    }
    Ok(t.into())
}

pub fn compare(ctx: &Ctx, h: Option<u32>) -> Result<Report> {
    let q = ctx.q();
    let hs: Vec<u32> = match h {
        Some(h) if h == 0 || h >= q => return Err(usage(format!("h = {h} outside [1, {}]", q - 1))),
        Some(h) => vec![h],
        None => (1..q).collect(),
    };
    let mut params = Vec::new();
    for &h in &hs {
        for s in 0..q - 1 {
            for l in ctx.k_units() {
                params.push((h, s, l));
            }
        }
    }
    let rows = params
        .par_iter()
        .map(|&(h, s, l)| {
            let rho = SemisimpleRep::irred(ctx, h as i64, s as i64, l)?;
            let lhs = params_from_l(ctx, &rho)?;
            let rhs = gk_twist(ctx, &gk_params(ctx, h)?, &GaloisCharacter::level1(ctx, s as i64, l));
            let pass = compare_gk(ctx, &rho)?;
            Ok((
                pass,
                vec![
                    json!(h),
                    json!(s),
                    json!(show::elem(ctx, l)),
                    json!(show::pair(lhs.gamma)),
                    json!(show::elem(ctx, lhs.u2)),
                    json!(show::pair(rhs.gamma)),
                    json!(show::elem(ctx, rhs.u2)),
                    json!(pass),
                ],
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new(&["h", "s", "lambda", "gamma_l", "u2_l", "gamma_gk", "u2_gk", "pass"]);
    let ok = rows.iter().all(|(p, _)| *p);
    rows.into_iter().for_each(|(_, r)| t.push(r));
    Ok(Report { table: t, ok })
}

pub fn serre(ctx: &Ctx) -> Result<Report> {
    if ctx.f() < 2 {
        return Err(usage("serre needs f >= 2"));
    }
    let pp = ctx.pp();
    let q = ctx.q() as i64;
    let mut t = Table::new(&["tau", "type", "r", "s", "digits", "test", "weight", "cyclic", "chain"]);
    for e in 1..q * q - 1 {
        let Ok(tau) = InertialType::niveau2(ctx, e) else { continue };
        if tau != (InertialType::Niveau2 { e: e as u32 }) || !is_generic(ctx, &tau)? {
            continue;
        }
        for (r, s, d) in type_digits(ctx, &tau)? {
            let digits = d.iter().map(|&x| x as u32).collect();
            let member = digits_to_weight(pp, &WeightDigits { digits, s: ctx.red(s) })?;
            let tests = [
                ("F(r)", Weight::new(pp, r, s)?),
                ("F(q-1-r)", Weight::new(pp, q - 1 - r, s + r)?),
                ("F(q-1-r)'", Weight::new(pp, q - 1 - r, s + r - 1)?),
                ("identity", member),
            ];
            for (name, w) in tests {
                t.push(vec![
                    json!(e),
                    json!(show::inertial_type(ctx, &tau)),
                    json!(r),
                    json!(s),
                    json!(d),
                    json!(name),
                    json!(format!("F({})det^{}", w.r, w.s)),
                    json!(not_in_w_tau(ctx, &w, &tau, true)?),
                    json!(not_in_w_tau(ctx, &w, &tau, false)?),
                ]);
            }
        }
    }
    Ok(t.into())
}

pub struct ModuleArgs<'a> {
    pub n: u32,
    pub h: u64,
    pub s: i64,
    pub lambda: &'a str,
    pub tprec: i64,
    pub kprec: Option<u32>,
}

fn module(ctx: &Ctx, a: &ModuleArgs) -> Result<PhiGammaModule> {
    let lambda = parse_elem(ctx, a.lambda)?;
    Ok(build_irreducible_module(ctx, a.h, a.n, a.s, lambda, a.tprec, a.kprec)?)
}

fn series(ctx: &Ctx, f: &TruncLaurent) -> Value {
    let coeffs: Vec<String> = f.coeffs().iter().map(|&c| show::elem(ctx, c)).collect();
    let val = if f.is_zero() { Value::Null } else { json!(f.valuation()) };
    let prec = if f.is_exact() { Value::Null } else { json!(f.prec()) };
    json!({ "val": val, "prec": prec, "coeffs": coeffs })
}

pub fn phigamma_build(ctx: &Ctx, a: &ModuleArgs, units: usize, seed: u64) -> Result<Report> {
    let d = module(ctx, a)?;
    let mut t = Table::new(&["matrix", "unit", "row", "col", "val", "prec", "coeffs"]);
    let mut emit = |name: &str, unit: &str, m: &[Vec<TruncLaurent>]| {
        for (i, row) in m.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                let s = series(ctx, f);
                t.push(vec![
                    json!(name),
                    json!(unit),
                    json!(i),
                    json!(j),
                    s["val"].clone(),
                    s["prec"].clone(),
                    s["coeffs"].clone(),
                ]);
            }
        }
    };
    emit("phi", "", &d.a);
    for u in sample_units(d.ring(), units, seed)? {
        let g = d.gamma(&u)?;
        emit("gamma", &d.ring().show(&u), &g.matrix());
    }
    Ok(t.into())
}

pub fn phigamma_check(ctx: &Ctx, a: &ModuleArgs, units: usize, seed: u64) -> Result<Report> {
    let d = module(ctx, a)?;
    let us = sample_units(d.ring(), units, seed)?;
    let r = check_semilinearity(&d, &us)?;
    let e = exterior_det_check(&d, &us)?;
    let mut t = Table::new(&[
        "q",
        "n",
        "h",
        "s",
        "lambda",
        "tprec",
        "units",
        "cocycle",
        "commutation",
        "fbar_in_fq",
        "residual_degree",
        "det_phi",
        "det_gamma",
    ]);
    t.push(vec![
        json!(d.q),
        json!(d.n),
        json!(d.h),
        json!(d.s),
        json!(show::elem(ctx, d.lambda)),
        json!(r.tprec),
        json!(r.units),
        json!(r.cocycle_ok),
        json!(r.commutation_ok),
        json!(r.fbar_in_fq),
        json!(r.residual_degree),
        json!(e.phi_ok),
        json!(e.gamma_ok),
    ]);
    Ok(Report { table: t, ok: r.ok() && e.phi_ok && e.gamma_ok })
}

pub fn phigamma_lattice(ctx: &Ctx, h: Option<u32>) -> Result<Report> {
    let q = ctx.q();
    let hs: Vec<u32> = match h {
        Some(h) if h == 0 || h >= q => return Err(usage(format!("h = {h} outside [1, {}]", q - 1))),
        Some(h) => vec![h],
        None => (1..q).collect(),
    };
    let mut t = Table::new(&["q", "h", "k", "hexp", "h2", "psi_stable", "dual_first", "dual_second"]);
    let mut ok = true;
    for h in hs {
        let lat = sharp_lattice(ctx, h)?;
        let r = torsion_dual_relations(&lat)?;
        ok &= r.psi_stable;
        t.push(vec![
            json!(q),
            json!(h),
            json!([lat.k.0, lat.k.1, lat.k.2]),
            json!([lat.hexp.0, lat.hexp.1]),
            json!(lat.h2),
            json!(r.psi_stable),
            json!(r.first),
            json!(r.second),
        ]);
    }
    Ok(Report { table: t, ok })
}
