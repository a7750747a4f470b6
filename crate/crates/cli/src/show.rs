//! Plain-text renderings of library objects for table cells.

use gl2modp::arith::Elem;
use gl2modp::satake::SCoords;
use gl2modp::xscheme::{Position, Side};
use gl2modp::{Ctx, GaloisCharacter, InertialType, SemisimpleRep};

pub fn elem(ctx: &Ctx, x: Elem) -> String {
    ctx.show(x)
}

pub fn character(ctx: &Ctx, c: &GaloisCharacter) -> String {
    let w = if c.level == 1 { "w".to_string() } else { format!("w{}", c.level) };
    format!("{w}^{}*ur({})", c.exp, elem(ctx, c.lambda))
}

pub fn rep(ctx: &Ctx, r: &SemisimpleRep) -> String {
    match r {
        SemisimpleRep::Split { chars } => format!("{} + {}", character(ctx, &chars[0]), character(ctx, &chars[1])),
        SemisimpleRep::Irred { h, s, lambda } => format!("ind(w2^{h})*w^{s}*ur({})", elem(ctx, *lambda)),
    }
}

pub fn inertial_type(ctx: &Ctx, t: &InertialType) -> String {
    match *t {
        InertialType::Niveau1 { a, b } => format!("w^{a} + w^{b}"),
        InertialType::Niveau2 { e } => {
            let q = ctx.q() as u64;
            format!("w2^{e} + w2^{}", e as u64 * q % (q * q - 1))
        }
    }
}

pub fn position(ctx: &Ctx, pos: &Position) -> String {
    match *pos {
        Position::Smooth { i, x } => format!("C{i}:[{}:1]", elem(ctx, x)),
        Position::Node { i } => format!("C{}/C{i}", i - 1),
        Position::OriginEnd => "C0:0".into(),
        Position::InfinityEnd => format!("C{}:inf", ctx.half() - 1),
        Position::OuterOdd { side: Side::Left, t } => format!("C0:t={}", elem(ctx, t)),
        Position::OuterOdd { side: Side::Right, t } => format!("C{}:t={}", ctx.half(), elem(ctx, t)),
    }
}

pub fn position_kind(pos: &Position) -> &'static str {
    match pos {
        Position::Smooth { .. } => "smooth",
        Position::Node { .. } => "node",
        Position::OriginEnd => "origin",
        Position::InfinityEnd => "infinity",
        Position::OuterOdd { .. } => "outer",
    }
}

pub fn coords(ctx: &Ctx, c: &SCoords) -> String {
    match *c {
        SCoords::Regular { x, y } => format!("({}, {})", elem(ctx, x), elem(ctx, y)),
        SCoords::NonRegular { z1 } => format!("z1={}", elem(ctx, z1)),
    }
}

pub fn pair(p: (u32, u32)) -> String {
    format!("({}, {})", p.0, p.1)
}
