//! Parameters of supersingular Hecke modules: the central character orbit
//! `gamma`, the `U^2` scalar and the weights `(k_0, k_1)`.

use serde::Serialize;

use crate::arith::Elem;
use crate::characters::{GaloisCharacter, SemisimpleRep};
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::lmorphism::l_map;
use crate::satake::{central_character_data, supersingular_points};
use crate::xscheme::iota_inverse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SupersingularModuleParams {
    /// Sorted exponent pair of the Weyl orbit of the torus character.
    pub gamma: (u32, u32),
    pub u2: Elem,
    pub weights: Option<(u32, u32)>,
}

impl SupersingularModuleParams {
    /// Equality of `(gamma, u2)`, ignoring weights.
    pub fn same_central_data(&self, o: &Self) -> bool {
        self.gamma == o.gamma && self.u2 == o.u2
    }
}

fn orbit(ctx: &Ctx, a: i64, b: i64) -> (u32, u32) {
    let (a, b) = (ctx.red(a), ctx.red(b));
    (a.min(b), a.max(b))
}

/// Parameters of the module attached to `ind(omega_{2f}^h)`: trivial `U^2`,
/// the character `diag(a, b) -> a^{h-1}` and weights `(h-1, q-h)`.
pub fn gk_params(ctx: &Ctx, h: u32) -> Result<SupersingularModuleParams> {
    let q = ctx.q();
    if h == 0 || h >= q {
        return Err(Error::InvalidParameter(format!("h = {h} outside [1, {}]", q - 1)));
    }
    Ok(SupersingularModuleParams { gamma: orbit(ctx, h as i64 - 1, 0), u2: Elem::ONE, weights: Some((h - 1, q - h)) })
}

/// Twist by `eta = omega_f^s mu_lambda`: `gamma (s, s)`, `u2 lambda^2`.
pub fn gk_twist(ctx: &Ctx, m: &SupersingularModuleParams, eta: &GaloisCharacter) -> SupersingularModuleParams {
    let s = eta.exp as i64;
    let k = ctx.field();
    SupersingularModuleParams {
        gamma: orbit(ctx, m.gamma.0 as i64 + s, m.gamma.1 as i64 + s),
        u2: k.mul(m.u2, k.mul(eta.lambda, eta.lambda)),
        weights: m.weights,
    }
}

/// `(gamma, u2)` of the supersingular Satake point whose image under `L`
/// corresponds to `rho`.
pub fn params_from_l(ctx: &Ctx, rho: &SemisimpleRep) -> Result<SupersingularModuleParams> {
    if !rho.is_irreducible() {
        return Err(Error::InvalidParameter("expected an irreducible representation".into()));
    }
    let x = iota_inverse(ctx, rho, false)?;
    let mut hits = Vec::new();
    for s in supersingular_points(ctx, x.n, x.z2) {
        if l_map(ctx, &s)? == x {
            hits.push(s);
        }
    }
    let [s] = hits[..] else {
        return Err(Error::Verification(format!("{} supersingular preimages", hits.len())));
    };
    let (gamma, u2) = central_character_data(ctx, &s);
    Ok(SupersingularModuleParams { gamma, u2, weights: None })
}

/// Whether the parameters read off `L` agree with the twisted parameters of
/// `ind(omega_{2f}^h)` for `rho = Irred{h, s, lambda}`.
pub fn compare_gk(ctx: &Ctx, rho: &SemisimpleRep) -> Result<bool> {
    let SemisimpleRep::Irred { h, s, lambda } = *rho else {
        return Err(Error::InvalidParameter("expected an irreducible representation".into()));
    };
    let lhs = params_from_l(ctx, rho)?;
    let rhs = gk_twist(ctx, &gk_params(ctx, h)?, &GaloisCharacter::level1(ctx, s as i64, lambda));
    Ok(lhs.same_central_data(&rhs))
}
