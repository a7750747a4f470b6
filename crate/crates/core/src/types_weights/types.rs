use serde::Serialize;

use crate::characters::q_orbit;
use crate::context::Ctx;
use crate::error::{Error, Result};

/// A tame two-dimensional inertial type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "niveau")]
pub enum InertialType {
    /// `omega^a (+) omega^b`, `a <= b` modulo `q-1`.
    Niveau1 { a: u32, b: u32 },
    /// `omega_{2f}^e (+) omega_{2f}^{qe}`, `e` the smaller orbit element.
    Niveau2 { e: u32 },
}

impl InertialType {
    pub fn niveau1(ctx: &Ctx, a: i64, b: i64) -> Self {
        let (a, b) = (ctx.red(a), ctx.red(b));
        InertialType::Niveau1 { a: a.min(b), b: a.max(b) }
    }

    pub fn niveau2(ctx: &Ctx, e: i64) -> Result<Self> {
        let q = ctx.q() as i64;
        let m = q * q - 1;
        let e = e.rem_euclid(m);
        if e % (q + 1) == 0 {
            return Err(Error::InvalidParameter(format!("{e} is not q-primitive")));
        }
        Ok(InertialType::Niveau2 { e: q_orbit(ctx.q(), e as u64, m as u64)[0] as u32 })
    }

    pub fn niveau(&self) -> u32 {
        match self {
            InertialType::Niveau1 { .. } => 1,
            InertialType::Niveau2 { .. } => 2,
        }
    }

    /// Exponent of the determinant as a power of `omega_f`.
    pub fn det_exponent(&self, ctx: &Ctx) -> u32 {
        match *self {
            InertialType::Niveau1 { a, b } => ctx.red(a as i64 + b as i64),
            InertialType::Niveau2 { e } => ctx.red(e as i64),
        }
    }

    /// Twist by `omega_f^a`.
    pub fn twist(&self, ctx: &Ctx, a: i64) -> Self {
        match *self {
            InertialType::Niveau1 { a: x, b: y } => Self::niveau1(ctx, x as i64 + a, y as i64 + a),
            InertialType::Niveau2 { e } => Self::niveau2(ctx, e as i64 + a * (ctx.q() as i64 + 1)).unwrap(),
        }
    }
}

/// One row of the basic even/odd tables, twisted into component `d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeRow {
    pub n: u32,
    pub r: i64,
    pub s: i64,
    pub ty: InertialType,
}

/// Rows for `d_n = 1 + n`: the basic table of the parity of `n`, twisted by
/// `omega_f^e` with `e` the canonical frame exponent.
pub fn type_table(ctx: &Ctx, n: u32) -> Vec<TypeRow> {
    let q = ctx.q() as i64;
    let e = ctx.frame_exponent(n) as i64;
    let mut rows = Vec::new();
    if n % 2 == 0 {
        for r in (0..=q - 3).step_by(2) {
            let s = -r / 2;
            rows.push(TypeRow { n, r, s, ty: InertialType::niveau1(ctx, r + 1 + s + e, s + e) });
        }
        for r in (0..=q - 1).step_by(2) {
            let s = -r / 2;
            let ty = InertialType::niveau2(ctx, r + 1 + (s + e) * (q + 1)).unwrap();
            rows.push(TypeRow { n, r, s, ty });
        }
    } else {
        for r in (-1..=q - 2).step_by(2) {
            let s = -(r + 1) / 2;
            rows.push(TypeRow { n, r, s, ty: InertialType::niveau1(ctx, r + 1 + s + e, s + e) });
        }
        for r in (1..=q - 2).step_by(2) {
            let s = -(r + 1) / 2;
            let ty = InertialType::niveau2(ctx, r + 1 + (s + e) * (q + 1)).unwrap();
            rows.push(TypeRow { n, r, s, ty });
        }
    }
    rows
}

/// Types of the given niveau whose determinant is `omega_f^d`.
pub fn enumerate_types(ctx: &Ctx, d: u32, niveau: u32) -> Result<Vec<InertialType>> {
    if d >= ctx.q() - 1 {
        return Err(Error::InvalidParameter(format!("determinant exponent {d} out of range")));
    }
    if niveau != 1 && niveau != 2 {
        return Err(Error::InvalidParameter(format!("niveau {niveau}")));
    }
    let n = ctx.red(d as i64 - 1);
    let mut out: Vec<InertialType> =
        type_table(ctx, n).into_iter().map(|r| r.ty).filter(|t| t.niveau() == niveau).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
