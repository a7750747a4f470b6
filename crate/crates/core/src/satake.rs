//! The Satake scheme `S(q)`, its components with their ordered labels, and
//! the twisting action of `G_m(F_q) x G_m`.

use serde::Serialize;

use crate::arith::Elem;
use crate::context::Ctx;
use crate::error::{Error, Result};

/// Component `index` of `S_{(zeta^n, z2)}`, labelled by the ordered pair
/// `(t, t^w)` where `t = diag(zeta^a, zeta^b)` and `pair = (a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ComponentLabel {
    pub n: u32,
    pub index: u32,
    pub pair: (u32, u32),
    pub regular: bool,
}

impl ComponentLabel {
    /// `t^w = diag(zeta^b, zeta^a)`.
    pub fn weyl(&self) -> (u32, u32) {
        (self.pair.1, self.pair.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum SCoords {
    /// `(x, y)` with `xy = 0`; `x` is attached to the first label.
    Regular { x: Elem, y: Elem },
    /// Steinberg coordinate.
    NonRegular { z1: Elem },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SPoint {
    pub n: u32,
    pub comp: u32,
    pub coords: SCoords,
    pub z2: Elem,
}

/// The ordered components of `S_{(zeta^n, z2)}`: for even `n = 2s`,
/// `t_i = diag(zeta^i, zeta^-i)`, `i = 0..=(q-1)/2`; for odd `n`,
/// `t_i = diag(zeta^{i-1}, zeta^-i)`, `i = 1..=(q-1)/2`; each multiplied by
/// `zeta^e` for the canonical frame exponent `e`.
pub fn components(ctx: &Ctx, n: u32) -> Vec<ComponentLabel> {
    let l = ctx.half() as i64;
    let e = ctx.frame_exponent(n) as i64;
    let even = n % 2 == 0;
    let range = if even { 0..=l } else { 1..=l };
    range
        .map(|i| {
            let (a, b) = if even { (i, -i) } else { (i - 1, -i) };
            let pair = (ctx.red(a + e), ctx.red(b + e));
            ComponentLabel { n, index: i as u32, pair, regular: pair.0 != pair.1 }
        })
        .collect()
}

pub fn component(ctx: &Ctx, n: u32, index: u32) -> Result<ComponentLabel> {
    components(ctx, n)
        .into_iter()
        .find(|c| c.index == index)
        .ok_or_else(|| Error::InvalidPoint(format!("no component {index} over d_{n}")))
}

impl SPoint {
    pub fn new(ctx: &Ctx, n: u32, comp: u32, coords: SCoords, z2: Elem) -> Result<Self> {
        if n >= ctx.q() - 1 {
            return Err(Error::InvalidPoint(format!("n = {n} outside N_q")));
        }
        let label = component(ctx, n, comp)?;
        if z2.is_zero() || !ctx.in_k(z2) {
            return Err(Error::InvalidPoint("z2 must lie in k^x".into()));
        }
        match coords {
            SCoords::Regular { x, y } => {
                if !label.regular {
                    return Err(Error::InvalidPoint("regular coordinates on a non-regular component".into()));
                }
                if !x.is_zero() && !y.is_zero() {
                    return Err(Error::InvalidPoint("xy must vanish".into()));
                }
                if !ctx.in_k(x) || !ctx.in_k(y) {
                    return Err(Error::InvalidPoint("coordinates must lie in k".into()));
                }
            }
            SCoords::NonRegular { z1 } => {
                if label.regular {
                    return Err(Error::InvalidPoint("Steinberg coordinate on a regular component".into()));
                }
                if !ctx.in_k(z1) {
                    return Err(Error::InvalidPoint("coordinates must lie in k".into()));
                }
            }
        }
        Ok(SPoint { n, comp, coords, z2 })
    }

    pub fn label(&self, ctx: &Ctx) -> ComponentLabel {
        component(ctx, self.n, self.comp).expect("validated point")
    }

    pub fn is_supersingular(&self) -> bool {
        match self.coords {
            SCoords::Regular { x, y } => x.is_zero() && y.is_zero(),
            SCoords::NonRegular { z1 } => z1.is_zero(),
        }
    }
}

/// Every point of `S_{(zeta^n, z2)}` with coordinates in `k`.
pub fn points(ctx: &Ctx, n: u32, z2: Elem) -> Vec<SPoint> {
    let mut out = Vec::new();
    for c in components(ctx, n) {
        if c.regular {
            out.push(SPoint { n, comp: c.index, coords: SCoords::Regular { x: Elem::ZERO, y: Elem::ZERO }, z2 });
            for u in ctx.k_units() {
                out.push(SPoint { n, comp: c.index, coords: SCoords::Regular { x: u, y: Elem::ZERO }, z2 });
                out.push(SPoint { n, comp: c.index, coords: SCoords::Regular { x: Elem::ZERO, y: u }, z2 });
            }
        } else {
            for z1 in ctx.k_elems() {
                out.push(SPoint { n, comp: c.index, coords: SCoords::NonRegular { z1 }, z2 });
            }
        }
    }
    out
}

/// `g = (zeta^a, z)`: labels times `diag(zeta^a, zeta^a)`, coordinates
/// times `z`, `z2` times `z^2`.
pub fn twist_action_s(ctx: &Ctx, a: i64, z: Elem, s: &SPoint) -> Result<SPoint> {
    let k = ctx.field();
    let n = ctx.red(s.n as i64 + 2 * a);
    let (p0, p1) = s.label(ctx).pair;
    let moved = (ctx.red(p0 as i64 + a), ctx.red(p1 as i64 + a));
    let target = components(ctx, n)
        .into_iter()
        .find(|c| c.pair == moved || c.weyl() == moved)
        .ok_or_else(|| Error::Verification(format!("no component labelled {moved:?} over d_{n}")))?;
    let coords = match s.coords {
        SCoords::Regular { x, y } => {
            let (x, y) = (k.mul(x, z), k.mul(y, z));
            if target.pair == moved {
                SCoords::Regular { x, y }
            } else {
                SCoords::Regular { x: y, y: x }
            }
        }
        SCoords::NonRegular { z1 } => SCoords::NonRegular { z1: k.mul(z1, z) },
    };
    Ok(SPoint { n, comp: target.index, coords, z2: k.mul(s.z2, k.mul(z, z)) })
}

/// One point per component, with vanishing coordinates.
pub fn supersingular_points(ctx: &Ctx, n: u32, z2: Elem) -> Vec<SPoint> {
    components(ctx, n)
        .into_iter()
        .map(|c| {
            let coords = if c.regular {
                SCoords::Regular { x: Elem::ZERO, y: Elem::ZERO }
            } else {
                SCoords::NonRegular { z1: Elem::ZERO }
            };
            SPoint { n, comp: c.index, coords, z2 }
        })
        .collect()
}

/// Central-character data: the Weyl orbit of the torus character matching
/// the label (as a sorted exponent pair) and the `U^2` scalar.
pub fn central_character_data(ctx: &Ctx, s: &SPoint) -> ((u32, u32), Elem) {
    let (a, b) = s.label(ctx).pair;
    ((a.min(b), a.max(b)), s.z2)
}
