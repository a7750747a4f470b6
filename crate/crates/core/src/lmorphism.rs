//! The morphism `L: S(q) -> X(q)` and the resulting map from Satake
//! parameters to semisimple Galois representations.

use serde::Serialize;

use crate::arith::Elem;
use crate::characters::{iso_equal, SemisimpleRep};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::satake::{self, central_character_data, SCoords, SPoint};
use crate::types_weights::{hw, Weight};
use crate::xscheme::{self, Frame, Position, Side, XPoint};

/// `L` on the basic fiber: component `i`, coordinates already divided by `w`.
fn l_base(ctx: &Ctx, even: bool, i: u32, coords: SCoords) -> Result<Position> {
    let k = ctx.field();
    let l = ctx.half();
    let pos = match (coords, even) {
        (SCoords::NonRegular { z1 }, true) if i == 0 => {
            if z1.is_zero() {
                Position::OriginEnd
            } else {
                Position::Smooth { i: 0, x: z1 }
            }
        }
        (SCoords::NonRegular { z1 }, true) if i == l => {
            if z1.is_zero() {
                Position::InfinityEnd
            } else {
                Position::Smooth { i: l - 1, x: k.inv(z1)? }
            }
        }
        (SCoords::Regular { x, y }, _) => {
            let (lo, hi) = if even { (1, l - 1) } else { (1, l) };
            if i < lo || i > hi {
                return Err(Error::InvalidPoint(format!("regular coordinates on component {i}")));
            }
            match (x.is_zero(), y.is_zero()) {
                (true, true) => Position::Node { i },
                (false, true) if !even && i == l => Position::OuterOdd { side: Side::Right, t: k.add(x, k.inv(x)?) },
                (false, true) => Position::Smooth { i, x },
                (true, false) if !even && i == 1 => Position::OuterOdd { side: Side::Left, t: k.add(y, k.inv(y)?) },
                (true, false) => Position::Smooth { i: i - 1, x: k.inv(y)? },
                (false, false) => return Err(Error::InvalidPoint("xy must vanish".into())),
            }
        }
        _ => return Err(Error::InvalidPoint(format!("bad coordinates on component {i}"))),
    };
    Ok(pos)
}

/// `L(s) = gamma . L_base(gamma^{-1} . s)` for the canonical frame `gamma`
/// of the fiber of `s`.
pub fn l_map(ctx: &Ctx, s: &SPoint) -> Result<XPoint> {
    let frame = Frame::canonical(ctx, s.n, s.z2)?;
    l_map_with(ctx, s, &frame)
}

/// `L` computed through an arbitrary frame of the fiber of `s`.
pub fn l_map_with(ctx: &Ctx, s: &SPoint, frame: &Frame) -> Result<XPoint> {
    if !frame.is_valid(ctx, s.n, s.z2) {
        return Err(Error::InvalidParameter("frame does not match the point's component".into()));
    }
    let k = ctx.field();
    let winv = k.inv(frame.w)?;
    let coords = match s.coords {
        SCoords::Regular { x, y } => SCoords::Regular { x: k.mul(x, winv), y: k.mul(y, winv) },
        SCoords::NonRegular { z1 } => SCoords::NonRegular { z1: k.mul(z1, winv) },
    };
    // The frame exponent decides which base component the label comes from.
    let even = s.n % 2 == 0;
    let base_n = if even { 0 } else { ctx.q() - 2 };
    let label = s.label(ctx).pair;
    let back = (ctx.red(label.0 as i64 - frame.e as i64), ctx.red(label.1 as i64 - frame.e as i64));
    let base = satake::components(ctx, base_n)
        .into_iter()
        .find(|c| c.pair == back || c.weyl() == back)
        .ok_or_else(|| Error::Verification("frame moves the label off the basic fiber".into()))?;
    let coords = match coords {
        SCoords::Regular { x, y } if base.pair != back => SCoords::Regular { x: y, y: x },
        c => c,
    };
    let pos = l_base(ctx, even, base.index, coords)?;
    Ok(XPoint { n: s.n, z2: s.z2, pos })
}

/// The same map under the identification of `S(q)` with the spectrum of the
/// centre of the pro-p Iwahori Hecke algebra.
pub fn script_l(ctx: &Ctx, s: &SPoint) -> Result<XPoint> {
    l_map(ctx, s)
}

/// `iota(L(s))` with the canonical frame, or its other square root.
pub fn rho_of(ctx: &Ctx, s: &SPoint, negate: bool) -> Result<SemisimpleRep> {
    let x = l_map(ctx, s)?;
    xscheme::iota(ctx, &x, &Frame::with_sign(ctx, s.n, s.z2, negate)?)
}

/// Closed form of `rho_of` read off the ordered label `(a, b)`:
/// a nonzero coordinate `c` attached to `a` gives `omega^{a+1} unr(c) (+)
/// omega^b unr(z2/c)`, and the supersingular point gives
/// `ind(omega_{2f}^{(a-b mod q-1)+1}) (x) omega^b unr(sqrt z2)`.
pub fn rho_direct(ctx: &Ctx, s: &SPoint) -> Result<SemisimpleRep> {
    let k = ctx.field();
    let (a, b) = s.label(ctx).pair;
    let (a, b) = (a as i64, b as i64);
    let attached = match s.coords {
        SCoords::Regular { x, .. } if !x.is_zero() => Some((a, b, x)),
        SCoords::Regular { y, .. } if !y.is_zero() => Some((b, a, y)),
        SCoords::NonRegular { z1 } if !z1.is_zero() => Some((a, b, z1)),
        _ => None,
    };
    match attached {
        Some((a, b, c)) => SemisimpleRep::split_from(ctx, a + 1, c, b, k.div(s.z2, c)?),
        None => {
            let w = k.sqrt(s.z2).ok_or_else(|| Error::InvalidParameter("z2 must be a unit".into()))?;
            SemisimpleRep::irred(ctx, ctx.red(a - b) as i64 + 1, b, w)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrespondenceRow {
    pub s: SPoint,
    pub gamma: (u32, u32),
    pub u2: Elem,
    pub x: XPoint,
    pub rho: SemisimpleRep,
}

pub fn correspondence_row(ctx: &Ctx, s: &SPoint) -> Result<CorrespondenceRow> {
    let (gamma, u2) = central_character_data(ctx, s);
    let x = l_map(ctx, s)?;
    let rho = xscheme::iota_canonical(ctx, &x)?;
    Ok(CorrespondenceRow { s: *s, gamma, u2, x, rho })
}

/// Rows for the given points, or for every supersingular point over `z2`.
pub fn correspondence_table(ctx: &Ctx, z2: Elem, supersingular_only: bool) -> Result<Vec<CorrespondenceRow>> {
    let mut rows = Vec::new();
    for n in 0..ctx.q() - 1 {
        let pts =
            if supersingular_only { satake::supersingular_points(ctx, n, z2) } else { satake::points(ctx, n, z2) };
        for s in pts {
            rows.push(correspondence_row(ctx, &s)?);
        }
    }
    Ok(rows)
}

/// The supersingular points over `z2` with their irreducible images.
/// Fails unless the map is injective onto every irreducible class with
/// determinant scalar `z2`.
pub fn supersingular_bijection(ctx: &Ctx, z2: Elem) -> Result<Vec<(SPoint, SemisimpleRep)>> {
    let mut out = Vec::new();
    for n in 0..ctx.q() - 1 {
        for s in satake::supersingular_points(ctx, n, z2) {
            let rho = rho_of(ctx, &s, false)?;
            if !rho.is_irreducible() {
                return Err(Error::Verification(format!("{s:?} maps to a reducible representation")));
            }
            out.push((s, rho));
        }
    }
    for (i, (_, a)) in out.iter().enumerate() {
        if out[..i].iter().any(|(_, b)| iso_equal(ctx, a, b)) {
            return Err(Error::Verification(format!("{a:?} is hit twice")));
        }
    }
    let targets = irreducible_classes(ctx, z2)?;
    if targets.len() != out.len() || targets.iter().any(|t| !out.iter().any(|(_, r)| iso_equal(ctx, r, t))) {
        return Err(Error::Verification("not every irreducible class is hit".into()));
    }
    Ok(out)
}

/// Irreducible classes `ind(omega_{2f}^h) (x) omega^s mu_lambda` with
/// `lambda^2 = z2`.
pub fn irreducible_classes(ctx: &Ctx, z2: Elem) -> Result<Vec<SemisimpleRep>> {
    let q = ctx.q() as i64;
    let w = ctx.field().sqrt(z2).ok_or_else(|| Error::InvalidParameter("z2 must be a unit".into()))?;
    let mut out = Vec::new();
    for h in 1..q {
        for s in 0..q - 1 {
            out.push(SemisimpleRep::irred(ctx, h, s, w)?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The weight labels `(sigma, sigma')` of chain component `i` of `X_{d_n}`;
/// outer components of odd chains carry a single weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentWeights {
    pub index: u32,
    pub sigma: Weight,
    pub sigma_prime: Option<Weight>,
}

/// `(F(r) (x) det^{s(r)}, F(q-3-r) (x) det^{s(r)+r+1})` with `r = 2i`,
/// `s(r) = -i` (even) or `r = 2i-1`, `s(r) = -i` (odd), twisted by `det^e`.
pub fn component_weights(ctx: &Ctx, n: u32) -> Result<Vec<ComponentWeights>> {
    let pp = ctx.pp();
    let q = ctx.q() as i64;
    let l = ctx.half() as i64;
    let e = ctx.frame_exponent(n) as i64;
    let pair = |i: i64, r: i64| -> Result<ComponentWeights> {
        let s = -i + e;
        Ok(ComponentWeights {
            index: i as u32,
            sigma: Weight::new(pp, r, s)?,
            sigma_prime: Some(Weight::new(pp, q - 3 - r, s + r + 1)?),
        })
    };
    if n % 2 == 0 {
        (0..l).map(|i| pair(i, 2 * i)).collect()
    } else {
        let single = |i: i64, s: i64| -> Result<ComponentWeights> {
            Ok(ComponentWeights { index: i as u32, sigma: Weight::new(pp, q - 2, s + e)?, sigma_prime: None })
        };
        let mut out = vec![single(0, 0)?];
        for i in 1..l {
            out.push(pair(i, 2 * i - 1)?);
        }
        out.push(single(l, l)?);
        Ok(out)
    }
}

/// The points of the branch of `S_{(zeta^n, z2)}` labelled by the torus
/// character `(a, b)`, paired with their nonzero coordinate.
pub fn branch_points(ctx: &Ctx, n: u32, z2: Elem, label: (u32, u32)) -> Vec<(SPoint, Elem)> {
    let mut out = Vec::new();
    for c in satake::components(ctx, n) {
        for u in ctx.k_units() {
            let coords = if !c.regular && c.pair == label {
                SCoords::NonRegular { z1: u }
            } else if c.regular && c.pair == label {
                SCoords::Regular { x: u, y: Elem::ZERO }
            } else if c.regular && c.weyl() == label {
                SCoords::Regular { x: Elem::ZERO, y: u }
            } else {
                continue;
            };
            out.push((SPoint { n, comp: c.index, coords, z2 }, u));
        }
    }
    out
}

/// Whether `L` maps the branch labelled `hw(sigma)` onto the chart of
/// `C^(sigma, sigma')` around `0` and the branch labelled `hw(sigma')` onto
/// the chart around infinity, for every component of `X_{d_n}` over `z2`.
pub fn weights_compatible(ctx: &Ctx, n: u32, z2: Elem) -> Result<bool> {
    let k = ctx.field();
    let w = Frame::canonical(ctx, n, z2)?.w;
    for cw in component_weights(ctx, n)? {
        let charts = [(Some(cw.sigma), false), (cw.sigma_prime, true)];
        for (sigma, at_infinity) in charts {
            let Some(sigma) = sigma else { continue };
            let branch = branch_points(ctx, n, z2, hw(ctx.pp(), &sigma));
            if branch.is_empty() {
                return Ok(false);
            }
            for (s, u) in branch {
                let x = l_map(ctx, &s)?;
                if x.pos.component(ctx) != Some(cw.index) {
                    return Ok(false);
                }
                if let Position::Smooth { x: c, .. } = x.pos {
                    let expect = if at_infinity { k.div(w, u)? } else { k.div(u, w)? };
                    if c != expect {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
