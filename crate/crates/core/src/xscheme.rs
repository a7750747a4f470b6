//! The scheme `X(q)`: over each determinant component `d_n`, a chain of
//! projective lines times `G_m`, with the Galois parametrization `iota`.
//!
//! Positions on the chain are given relative to a frame `(zeta^e, w)` with
//! `w^2 = z2`. The frame identifies the fiber over `(n, z2)` with the basic
//! fiber `n = 0` (even) or `n = q-2` (odd) over `z2 = 1`. The twisting action
//! keeps positions and moves the frame along.

use serde::Serialize;

use crate::arith::Elem;
use crate::characters::{iso_equal, twist, GaloisCharacter, SemisimpleRep};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::types_weights::InertialType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A point of the chain of the basic fiber.
///
/// Even chains have components `C_0, ..., C_{l-1}` with `l = (q-1)/2`;
/// odd chains have the outer component `C_0`, interior components
/// `C_1, ..., C_{l-1}` and the outer component `C_l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum Position {
    /// `[x:1]` on `C_i`, `x != 0`.
    Smooth { i: u32, x: Elem },
    /// `C_{i-1} ∩ C_i`.
    Node { i: u32 },
    /// Origin of `C_0` on an even chain.
    OriginEnd,
    /// Infinity of `C_{l-1}` on an even chain.
    InfinityEnd,
    /// Affine coordinate `t` on an outer component of an odd chain.
    OuterOdd { side: Side, t: Elem },
}

impl Position {
    /// The chain component containing the point, if it is not a node or end.
    pub fn component(&self, ctx: &Ctx) -> Option<u32> {
        match *self {
            Position::Smooth { i, .. } => Some(i),
            Position::OuterOdd { side: Side::Left, .. } => Some(0),
            Position::OuterOdd { side: Side::Right, .. } => Some(ctx.half()),
            _ => None,
        }
    }

    pub fn is_closed_orbit(&self) -> bool {
        matches!(self, Position::Node { .. } | Position::OriginEnd | Position::InfinityEnd)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct XPoint {
    pub n: u32,
    pub z2: Elem,
    pub pos: Position,
}

/// `(zeta^e, w)` with `w^2 = z2` and `2e` matching `d_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Frame {
    pub e: u32,
    pub w: Elem,
}

impl Frame {
    /// The canonical frame: exponent from [`Ctx::frame_exponent`], and the
    /// square root with the smaller logarithm.
    pub fn canonical(ctx: &Ctx, n: u32, z2: Elem) -> Result<Self> {
        let w = ctx
            .field()
            .sqrt(z2)
            .filter(|w| !w.is_zero())
            .ok_or_else(|| Error::InvalidParameter("z2 must be a unit".into()))?;
        Ok(Frame { e: ctx.frame_exponent(n), w })
    }

    /// The canonical frame with the other square root when `negate`.
    pub fn with_sign(ctx: &Ctx, n: u32, z2: Elem, negate: bool) -> Result<Self> {
        let f = Self::canonical(ctx, n, z2)?;
        Ok(if negate { Frame { e: f.e, w: ctx.field().neg(f.w) } } else { f })
    }

    pub fn is_valid(&self, ctx: &Ctx, n: u32, z2: Elem) -> bool {
        ctx.is_frame_exponent(n, self.e) && ctx.field().mul(self.w, self.w) == z2
    }

    /// `g . frame` for `g = (zeta^a, z)`.
    pub fn act(&self, ctx: &Ctx, a: i64, z: Elem) -> Self {
        Frame { e: ctx.red(self.e as i64 + a), w: ctx.field().mul(self.w, z) }
    }

    /// The character `omega_f^e unr(w)`.
    pub fn character(&self, ctx: &Ctx) -> GaloisCharacter {
        GaloisCharacter::level1(ctx, self.e as i64, self.w)
    }
}

/// Number of chain components of `X_{d_n}`.
pub fn chain_length(ctx: &Ctx, n: u32) -> u32 {
    if n % 2 == 0 {
        ctx.half()
    } else {
        ctx.half() + 1
    }
}

/// Checks that `pos` is a position on the chain of `X_{d_n}` with
/// coordinates in `k`.
pub fn validate_position(ctx: &Ctx, n: u32, pos: &Position) -> Result<()> {
    let l = ctx.half();
    let even = n % 2 == 0;
    let bad = |why: &str| Err(Error::InvalidPoint(format!("{why}: {pos:?} on d_{n}")));
    match *pos {
        Position::Smooth { i, x } => {
            if x.is_zero() || !ctx.in_k(x) {
                return bad("coordinate must lie in k^x");
            }
            let ok = if even { i < l } else { i >= 1 && i < l };
            if !ok {
                return bad("component index out of range");
            }
        }
        Position::Node { i } => {
            let ok = if even { i >= 1 && i < l } else { i >= 1 && i <= l };
            if !ok {
                return bad("node index out of range");
            }
        }
        Position::OriginEnd | Position::InfinityEnd => {
            if !even {
                return bad("odd chains have no ends");
            }
        }
        Position::OuterOdd { t, .. } => {
            if even {
                return bad("even chains have no outer components");
            }
            if !ctx.in_k(t) {
                return bad("coordinate must lie in k");
            }
        }
    }
    Ok(())
}

impl XPoint {
    pub fn new(ctx: &Ctx, n: u32, z2: Elem, pos: Position) -> Result<Self> {
        if n >= ctx.q() - 1 {
            return Err(Error::InvalidPoint(format!("n = {n} outside N_q")));
        }
        if z2.is_zero() || !ctx.in_k(z2) {
            return Err(Error::InvalidPoint("z2 must lie in k^x".into()));
        }
        validate_position(ctx, n, &pos)?;
        Ok(XPoint { n, z2, pos })
    }
}

/// Every point of `X_{d_n}` over `z2` with coordinates in `k`.
pub fn points(ctx: &Ctx, n: u32, z2: Elem) -> Vec<XPoint> {
    let l = ctx.half();
    let mut out = Vec::new();
    let mut push = |pos| out.push(XPoint { n, z2, pos });
    if n % 2 == 0 {
        push(Position::OriginEnd);
        for i in 0..l {
            for x in ctx.k_units() {
                push(Position::Smooth { i, x });
            }
            if i > 0 {
                push(Position::Node { i });
            }
        }
        push(Position::InfinityEnd);
    } else {
        for side in [Side::Left, Side::Right] {
            for t in ctx.k_elems() {
                push(Position::OuterOdd { side, t });
            }
        }
        for i in 1..=l {
            push(Position::Node { i });
            if i < l {
                for x in ctx.k_units() {
                    push(Position::Smooth { i, x });
                }
            }
        }
    }
    out
}

/// `ind(omega_{2f}^{2j+1}) (x) omega^{-j}` (even) or
/// `ind(omega_{2f}^{2j}) (x) omega^{-j}` (odd).
fn closed_point_rep(ctx: &Ctx, even: bool, j: u32) -> SemisimpleRep {
    let j = j as i64;
    let h = if even { 2 * j + 1 } else { 2 * j };
    SemisimpleRep::irred(ctx, h, -j, Elem::ONE).expect("primitive exponent")
}

/// The basic parametrization on the fiber `n = 0` or `n = q-2` over `z2 = 1`.
pub fn iota_base(ctx: &Ctx, even: bool, pos: &Position) -> Result<SemisimpleRep> {
    let k = ctx.field();
    let l = ctx.half();
    let sp = |a: i64, x: Elem, b: i64, y: Elem| SemisimpleRep::split_from(ctx, a, x, b, y);
    match (*pos, even) {
        (Position::Smooth { i, x }, true) => sp(i as i64 + 1, x, -(i as i64), k.inv(x)?),
        (Position::Smooth { i, x }, false) => sp(i as i64, x, -(i as i64), k.inv(x)?),
        (Position::Node { i }, _) => Ok(closed_point_rep(ctx, even, i)),
        (Position::OriginEnd, true) => Ok(closed_point_rep(ctx, true, 0)),
        (Position::InfinityEnd, true) => Ok(closed_point_rep(ctx, true, l)),
        (Position::OuterOdd { side, t }, false) => {
            let (a, b) = k
                .reciprocal_roots(t)
                .ok_or_else(|| Error::InvalidPoint("z + 1/z = t has no root in the ambient field".into()))?;
            let e = if side == Side::Left { 0 } else { l as i64 };
            sp(e, a, e, b)
        }
        _ => Err(Error::InvalidPoint(format!("{pos:?} does not lie on this chain"))),
    }
}

/// `iota_frame(pt) = iota_base(pos) (x) omega_f^e unr(w)`.
pub fn iota(ctx: &Ctx, pt: &XPoint, frame: &Frame) -> Result<SemisimpleRep> {
    if !frame.is_valid(ctx, pt.n, pt.z2) {
        return Err(Error::InvalidParameter("frame does not match the point's component".into()));
    }
    let base = iota_base(ctx, pt.n % 2 == 0, &pt.pos)?;
    twist(ctx, &base, &frame.character(ctx))
}

/// `iota` with the canonical frame.
pub fn iota_canonical(ctx: &Ctx, pt: &XPoint) -> Result<SemisimpleRep> {
    iota(ctx, pt, &Frame::canonical(ctx, pt.n, pt.z2)?)
}

/// The component `(n, z2)` carrying a representation with this determinant.
pub fn fiber_of(ctx: &Ctx, rho: &SemisimpleRep) -> (u32, Elem) {
    let d = crate::characters::det_rep(ctx, rho);
    (ctx.red(d.exp as i64 - 1), d.lambda)
}

/// The point `x` in the fiber of `rho` with `iota(x, frame) = rho`, where the
/// frame is canonical (`negate = false`) or uses the other square root.
pub fn iota_inverse(ctx: &Ctx, rho: &SemisimpleRep, negate: bool) -> Result<XPoint> {
    let (n, z2) = fiber_of(ctx, rho);
    let frame = Frame::with_sign(ctx, n, z2, negate)?;
    let k = ctx.field();
    let inv = GaloisCharacter::level1(ctx, -(frame.e as i64), k.inv(frame.w)?);
    let base = twist(ctx, rho, &inv)?;
    let even = n % 2 == 0;
    let l = ctx.half() as i64;
    let pos = match base {
        SemisimpleRep::Irred { .. } => {
            let top = l as u32;
            let range = if even { 0..=top } else { 1..=top };
            let j = range
                .into_iter()
                .find(|&j| iso_equal(ctx, &closed_point_rep(ctx, even, j), &base))
                .ok_or_else(|| Error::Verification("no closed point matches".into()))?;
            if !even {
                Position::Node { i: j }
            } else if j == 0 {
                Position::OriginEnd
            } else if j == top {
                Position::InfinityEnd
            } else {
                Position::Node { i: j }
            }
        }
        SemisimpleRep::Split { chars } => {
            let mut found = None;
            for (c, d) in [(chars[0], chars[1]), (chars[1], chars[0])] {
                let (a, b) = (c.exp as i64, d.exp as i64);
                if even {
                    let i = a - 1;
                    if (0..l).contains(&i) && ctx.red(-i) as i64 == b {
                        found = Some(Position::Smooth { i: i as u32, x: c.lambda });
                    }
                } else if a == b && (a == 0 || a == l) {
                    let side = if a == 0 { Side::Left } else { Side::Right };
                    found = Some(Position::OuterOdd { side, t: k.add(c.lambda, d.lambda) });
                } else if (1..l).contains(&a) && ctx.red(-a) as i64 == b {
                    found = Some(Position::Smooth { i: a as u32, x: c.lambda });
                }
                if found.is_some() {
                    break;
                }
            }
            found.ok_or_else(|| Error::Verification(format!("{base:?} is not a basic split point")))?
        }
    };
    // Over a non-square z2 the coordinates lie in k(w) rather than k.
    Ok(XPoint { n, z2, pos })
}

/// `g = (zeta^a, z)` acting through the parametrization: the point whose
/// representation is `iota(pt) (x) omega_f^a unr(z)`, both read with
/// canonical frames.
pub fn act_by_twist(ctx: &Ctx, a: i64, z: Elem, pt: &XPoint) -> Result<XPoint> {
    let rho = twist(ctx, &iota_canonical(ctx, pt)?, &GaloisCharacter::level1(ctx, a, z))?;
    iota_inverse(ctx, &rho, false)
}

/// `g = (zeta^a, z)`: `d_n -> d_{n+2a}`, `z2 -> z2 z^2`, position kept.
/// This agrees with [`act_by_twist`] only when `g` carries the canonical
/// frame of `pt` to the canonical frame of the target.
pub fn twist_action(ctx: &Ctx, a: i64, z: Elem, pt: &XPoint) -> XPoint {
    let k = ctx.field();
    XPoint { n: ctx.red(pt.n as i64 + 2 * a), z2: k.mul(pt.z2, k.mul(z, z)), pos: pt.pos }
}

/// The inertial type of `iota(pt)`; niveau 2 exactly on closed orbits.
pub fn orbit_to_type(ctx: &Ctx, pt: &XPoint) -> Result<InertialType> {
    Ok(crate::characters::restrict_to_inertia(ctx, &iota_canonical(ctx, pt)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: u32) -> Ctx {
        Ctx::new(p, 1, 2).unwrap()
    }

    #[test]
    fn basic_examples() {
        let c = c(5);
        let k = c.field();
        let two = k.from_int(2);
        let pt = XPoint::new(&c, 0, Elem::ONE, Position::Smooth { i: 0, x: two }).unwrap();
        let rho = iota_canonical(&c, &pt).unwrap();
        assert_eq!(rho, SemisimpleRep::split_from(&c, 1, two, 0, k.from_int(3)).unwrap());
        let origin = XPoint::new(&c, 0, Elem::ONE, Position::OriginEnd).unwrap();
        assert_eq!(iota_canonical(&c, &origin).unwrap(), SemisimpleRep::irred(&c, 1, 0, Elem::ONE).unwrap());
        let outer = XPoint::new(&c, 3, Elem::ONE, Position::OuterOdd { side: Side::Left, t: two }).unwrap();
        let triv = SemisimpleRep::split_from(&c, 0, Elem::ONE, 0, Elem::ONE).unwrap();
        assert_eq!(iota_canonical(&c, &outer).unwrap(), triv);
        assert_eq!(iota_inverse(&c, &triv, false).unwrap(), outer);
        assert_eq!(iota_inverse(&c, &SemisimpleRep::irred(&c, 1, 0, Elem::ONE).unwrap(), false).unwrap(), origin);
    }

    #[test]
    fn inverse_q3_supersingular() {
        let c = c(3);
        let rho = SemisimpleRep::irred(&c, 2, 0, Elem::ONE).unwrap();
        let x = iota_inverse(&c, &rho, false).unwrap();
        let hits: Vec<_> = (0..2)
            .flat_map(|n| points(&c, n, Elem::ONE))
            .filter(|p| iso_equal(&c, &iota_canonical(&c, p).unwrap(), &rho))
            .collect();
        assert_eq!(hits, vec![x]);
        assert!(x.pos.is_closed_orbit());
    }

    #[test]
    fn round_trip_and_types() {
        for p in [3, 5] {
            let c = c(p);
            for n in 0..p - 1 {
                for z2 in c.fq_units() {
                    for pt in points(&c, n, z2) {
                        let rho = iota_canonical(&c, &pt).unwrap();
                        assert_eq!(iota_inverse(&c, &rho, false).unwrap(), pt);
                        let ty = orbit_to_type(&c, &pt).unwrap();
                        assert_eq!(ty.niveau() == 2, pt.pos.is_closed_orbit());
                        // the other square root twists by unr(-1)
                        let other = iota(&c, &pt, &Frame::with_sign(&c, n, z2, true).unwrap()).unwrap();
                        let m1 = GaloisCharacter::level1(&c, 0, c.field().neg(Elem::ONE));
                        assert!(iso_equal(&c, &other, &twist(&c, &rho, &m1).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn twisting() {
        let c = c(5);
        let k = c.field();
        let pt = XPoint::new(&c, 0, Elem::ONE, Position::Smooth { i: 1, x: c.k_units()[3] }).unwrap();
        assert_eq!(twist_action(&c, 0, Elem::ONE, &pt), pt);
        let moved = twist_action(&c, 1, Elem::ONE, &pt);
        assert_eq!((moved.n, moved.z2, moved.pos), (2, Elem::ONE, pt.pos));
        let z = k.gen();
        let moved = twist_action(&c, 0, z, &pt);
        assert_eq!((moved.z2, moved.pos), (k.mul(z, z), pt.pos));
        // transported frames make iota equivariant
        let f = Frame::canonical(&c, 0, Elem::ONE).unwrap();
        for a in 0..4 {
            let g = f.act(&c, a, z);
            let lhs = iota(&c, &twist_action(&c, a, z, &pt), &g).unwrap();
            let rhs = twist(&c, &iota(&c, &pt, &f).unwrap(), &GaloisCharacter::level1(&c, a, z)).unwrap();
            assert!(iso_equal(&c, &lhs, &rhs));
        }
    }

    #[test]
    fn outer_types_constant() {
        let c = c(5);
        let types: std::collections::BTreeSet<_> = c
            .k_elems()
            .into_iter()
            .map(|t| {
                let pt = XPoint::new(&c, 3, Elem::ONE, Position::OuterOdd { side: Side::Left, t }).unwrap();
                orbit_to_type(&c, &pt).unwrap()
            })
            .collect();
        assert_eq!(types.len(), 1);
    }

    #[test]
    fn chain_lengths() {
        let c = c(7);
        assert_eq!(chain_length(&c, 0), 3);
        assert_eq!(chain_length(&c, 1), 4);
        assert!(XPoint::new(&c, 0, Elem::ONE, Position::OuterOdd { side: Side::Left, t: Elem::ONE }).is_err());
        assert!(XPoint::new(&c, 1, Elem::ONE, Position::Smooth { i: 0, x: Elem::ONE }).is_err());
    }
}
