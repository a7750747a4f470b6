//! Mod-p characters of `Gal(Fbar/F_n)` and two-dimensional semisimple
//! representations of `Gal(Fbar/F)` in normal form.
//!
//! Conventions: `omega_f(pi) = 1` and `mu_lambda` takes the value `lambda` at
//! geometric Frobenius.

use serde::Serialize;

use crate::arith::Elem;
use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::types_weights::InertialType;

/// `omega_{nf}^exp * mu_lambda` on `Gal(Fbar/F_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GaloisCharacter {
    pub level: u32,
    pub exp: u64,
    pub lambda: Elem,
}

impl GaloisCharacter {
    pub fn new(ctx: &Ctx, level: u32, exp: i64, lambda: Elem) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter("level must be positive".into()));
        }
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("unramified scalar must be a unit".into()));
        }
        let modulus = level_modulus(ctx, level)?;
        Ok(GaloisCharacter { level, exp: exp.rem_euclid(modulus as i64) as u64, lambda })
    }

    /// A character of `Gal(Fbar/F)`.
    pub fn level1(ctx: &Ctx, a: i64, lambda: Elem) -> Self {
        GaloisCharacter { level: 1, exp: ctx.red(a) as u64, lambda }
    }

    pub fn trivial() -> Self {
        GaloisCharacter { level: 1, exp: 0, lambda: Elem::ONE }
    }

    /// Restriction to `Gal(Fbar/F_n)` of a character of level dividing `n`.
    pub fn restrict(&self, ctx: &Ctx, n: u32) -> Result<Self> {
        if n % self.level != 0 {
            return Err(Error::InvalidParameter(format!("level {} does not divide {n}", self.level)));
        }
        let from = level_modulus(ctx, self.level)?;
        let to = level_modulus(ctx, n)?;
        let lambda = ctx.field().pow(self.lambda, (n / self.level) as i64)?;
        Ok(GaloisCharacter { level: n, exp: (self.exp * (to / from)) % to, lambda })
    }

    pub fn mul(&self, ctx: &Ctx, o: &Self) -> Result<Self> {
        if self.level != o.level {
            return Err(Error::InvalidParameter("characters of different levels".into()));
        }
        let m = level_modulus(ctx, self.level)?;
        Ok(GaloisCharacter {
            level: self.level,
            exp: (self.exp + o.exp) % m,
            lambda: ctx.field().mul(self.lambda, o.lambda),
        })
    }

    /// Value at `tau^i phi^j` where `tau` generates tame inertia with
    /// `omega_{nf}(tau)` the distinguished generator of `F_{q^n}^x`, and `phi`
    /// is the arithmetic Frobenius of `F_n`.
    pub fn value(&self, ctx: &Ctx, i: i64, j: i64) -> Result<Elem> {
        let k = ctx.field();
        let z = k.subfield_gen(self.level * ctx.f())?;
        let a = k.pow(z, self.exp as i64 * i)?;
        Ok(k.mul(a, k.pow(self.lambda, -j)?))
    }
}

fn level_modulus(ctx: &Ctx, n: u32) -> Result<u64> {
    (ctx.q() as u64)
        .checked_pow(n)
        .map(|v| v - 1)
        .ok_or_else(|| Error::InvalidParameter(format!("level {n} too large")))
}

/// Whether `h` has `n` distinct images under multiplication by powers of `q`
/// modulo `q^n - 1`.
pub fn is_q_primitive(q: u32, h: u64, n: u32) -> Result<bool> {
    let modulus = (q as u64).checked_pow(n).ok_or_else(|| Error::InvalidParameter("q^n overflows".into()))? - 1;
    if h == 0 || h >= modulus {
        return Err(Error::InvalidParameter(format!("h = {h} outside 1..={}", modulus - 1)));
    }
    Ok(q_orbit(q, h, modulus).len() == n as usize)
}

/// Orbit of `h` under multiplication by `q` modulo `modulus`, sorted.
pub fn q_orbit(q: u32, h: u64, modulus: u64) -> Vec<u64> {
    let mut out = vec![h % modulus];
    let mut x = (h * q as u64) % modulus;
    while x != out[0] {
        out.push(x);
        x = (x * q as u64) % modulus;
    }
    out.sort_unstable();
    out
}

/// A semisimple two-dimensional representation of `Gal(Fbar/F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum SemisimpleRep {
    /// Two level-one characters, stored sorted.
    Split { chars: [GaloisCharacter; 2] },
    /// `ind(omega_{2f}^h) (x) omega_f^s mu_lambda`.
    Irred { h: u32, s: u32, lambda: Elem },
}

impl SemisimpleRep {
    pub fn split(a: GaloisCharacter, b: GaloisCharacter) -> Result<Self> {
        if a.level != 1 || b.level != 1 {
            return Err(Error::InvalidParameter("split pieces must be level one".into()));
        }
        Ok(SemisimpleRep::Split { chars: if a <= b { [a, b] } else { [b, a] } })
    }

    /// `ind(omega_{2f}^h) (x) omega_f^s mu_lambda`, normalised.
    pub fn irred(ctx: &Ctx, h: i64, s: i64, lambda: Elem) -> Result<Self> {
        let q = ctx.q() as i64;
        let e = (h + s * (q + 1)).rem_euclid(q * q - 1);
        Self::irred_from_exponent(ctx, e as u64, lambda)
    }

    /// `ind(omega_{2f}^e) (x) mu_lambda` for a level-two exponent `e`.
    pub fn irred_from_exponent(ctx: &Ctx, e: u64, lambda: Elem) -> Result<Self> {
        let q = ctx.q() as u64;
        let modulus = q * q - 1;
        let e = e % modulus;
        if e % (q + 1) == 0 {
            return Err(Error::InvalidParameter(format!("exponent {e} is not q-primitive")));
        }
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("unramified scalar must be a unit".into()));
        }
        let best = q_orbit(q as u32, e, modulus)
            .into_iter()
            .filter(|x| x % (q + 1) != q)
            .min()
            .expect("one representative has h <= q-1");
        let k = ctx.field();
        let neg = k.neg(lambda);
        Ok(SemisimpleRep::Irred { h: (best % (q + 1)) as u32, s: (best / (q + 1)) as u32, lambda: lambda.min(neg) })
    }

    /// `chi (+) chi^{-1} (x) det`-free constructor: `unr(x) omega^a (+) unr(y) omega^b`.
    pub fn split_from(ctx: &Ctx, a: i64, x: Elem, b: i64, y: Elem) -> Result<Self> {
        Self::split(GaloisCharacter::level1(ctx, a, x), GaloisCharacter::level1(ctx, b, y))
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self, SemisimpleRep::Irred { .. })
    }

    /// Level-two exponent `h + s(q+1)` of an irreducible representation.
    pub fn level2_exponent(&self, ctx: &Ctx) -> Option<u64> {
        match *self {
            SemisimpleRep::Irred { h, s, .. } => Some(h as u64 + s as u64 * (ctx.q() as u64 + 1)),
            SemisimpleRep::Split { .. } => None,
        }
    }

    /// Trace at `tau^i phi^j` on the tame quotient (see [`GaloisCharacter::value`]).
    pub fn trace(&self, ctx: &Ctx, i: i64, j: i64) -> Result<Elem> {
        let k = ctx.field();
        match *self {
            SemisimpleRep::Split { chars } => Ok(k.add(chars[0].value(ctx, i, j)?, chars[1].value(ctx, i, j)?)),
            SemisimpleRep::Irred { h, s, lambda } => {
                if j.rem_euclid(2) == 1 {
                    return Ok(Elem::ZERO);
                }
                let q = ctx.q() as i64;
                let z2 = k.subfield_gen(2 * ctx.f())?;
                let ind = k.add(k.pow(z2, h as i64 * i)?, k.pow(z2, h as i64 * q * i)?);
                let twist = GaloisCharacter::level1(ctx, s as i64, lambda).value(ctx, i, j)?;
                Ok(k.mul(ind, twist))
            }
        }
    }
}

pub fn det_rep(ctx: &Ctx, rho: &SemisimpleRep) -> GaloisCharacter {
    let k = ctx.field();
    match *rho {
        SemisimpleRep::Split { chars: [a, b] } => GaloisCharacter {
            level: 1,
            exp: ctx.red(a.exp as i64 + b.exp as i64) as u64,
            lambda: k.mul(a.lambda, b.lambda),
        },
        SemisimpleRep::Irred { h, s, lambda } => {
            GaloisCharacter { level: 1, exp: ctx.red(h as i64 + 2 * s as i64) as u64, lambda: k.mul(lambda, lambda) }
        }
    }
}

pub fn iso_equal(ctx: &Ctx, a: &SemisimpleRep, b: &SemisimpleRep) -> bool {
    match (a, b) {
        (SemisimpleRep::Split { chars: x }, SemisimpleRep::Split { chars: y }) => {
            (x[0] == y[0] && x[1] == y[1]) || (x[0] == y[1] && x[1] == y[0])
        }
        (SemisimpleRep::Irred { lambda: la, .. }, SemisimpleRep::Irred { lambda: lb, .. }) => {
            let q = ctx.q();
            let m = q as u64 * q as u64 - 1;
            let k = ctx.field();
            q_orbit(q, a.level2_exponent(ctx).unwrap(), m) == q_orbit(q, b.level2_exponent(ctx).unwrap(), m)
                && k.mul(*la, *la) == k.mul(*lb, *lb)
        }
        _ => false,
    }
}

pub fn twist(ctx: &Ctx, rho: &SemisimpleRep, eta: &GaloisCharacter) -> Result<SemisimpleRep> {
    if eta.level != 1 {
        return Err(Error::InvalidParameter("twists must be level one".into()));
    }
    match *rho {
        SemisimpleRep::Split { chars: [a, b] } => SemisimpleRep::split(a.mul(ctx, eta)?, b.mul(ctx, eta)?),
        SemisimpleRep::Irred { h, s, lambda } => {
            SemisimpleRep::irred(ctx, h as i64, s as i64 + eta.exp as i64, ctx.field().mul(lambda, eta.lambda))
        }
    }
}

pub fn restrict_to_inertia(ctx: &Ctx, rho: &SemisimpleRep) -> InertialType {
    match *rho {
        SemisimpleRep::Split { chars: [a, b] } => InertialType::niveau1(ctx, a.exp as i64, b.exp as i64),
        SemisimpleRep::Irred { .. } => {
            InertialType::niveau2(ctx, rho.level2_exponent(ctx).unwrap() as i64).expect("primitive exponent")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32) -> Ctx {
        Ctx::new(p, 1, 2).unwrap()
    }

    // independent oracle: traces on tau^i phi^j
    fn traces_equal(c: &Ctx, a: &SemisimpleRep, b: &SemisimpleRep) -> bool {
        let q = c.q() as i64;
        (0..q * q - 1).all(|i| (0..4).all(|j| a.trace(c, i, j).unwrap() == b.trace(c, i, j).unwrap()))
    }

    #[test]
    fn primitivity() {
        assert!(is_q_primitive(5, 1, 2).unwrap());
        assert!(!is_q_primitive(5, 6, 2).unwrap());
        assert!(is_q_primitive(3, 5, 2).unwrap());
        assert_eq!(q_orbit(3, 5, 8), vec![5, 7]);
        assert!(is_q_primitive(3, 0, 2).is_err());
        assert!(is_q_primitive(3, 8, 2).is_err());
    }

    #[test]
    fn determinants() {
        let c = ctx(5);
        let k = c.field();
        let r = SemisimpleRep::irred(&c, 1, 0, Elem::ONE).unwrap();
        assert_eq!(det_rep(&c, &r), GaloisCharacter::level1(&c, 1, Elem::ONE));
        let x = c.zeta();
        let s = SemisimpleRep::split_from(&c, 1, x, 0, k.inv(x).unwrap()).unwrap();
        assert_eq!(det_rep(&c, &s), GaloisCharacter::level1(&c, 1, Elem::ONE));
        let two = k.from_int(2);
        let r = SemisimpleRep::irred(&c, 2, 1, two).unwrap();
        let d = det_rep(&c, &r);
        assert_eq!((d.exp, d.lambda), (0, k.from_int(4)));
        // determinant of diag(z^e, z^{qe}) on inertia, with the twist
        let e = 2 + 6;
        assert_eq!((e + 5 * e) % 24 % 6, 0);
    }

    #[test]
    fn isomorphism_examples() {
        let c = ctx(5);
        let k = c.field();
        let l = k.from_int(3);
        let a = SemisimpleRep::irred(&c, 2, 0, l).unwrap();
        let b = SemisimpleRep::irred(&c, 10, 0, l).unwrap();
        assert!(iso_equal(&c, &a, &b));
        assert_eq!(a, b);
        let n = SemisimpleRep::irred(&c, 2, 0, k.neg(l)).unwrap();
        assert!(iso_equal(&c, &a, &n));
        let c3 = ctx(3);
        let r = SemisimpleRep::irred(&c3, 1, 1, Elem::ONE).unwrap();
        for h in 1..=2 {
            let u = SemisimpleRep::irred(&c3, h, 0, Elem::ONE).unwrap();
            assert!(!iso_equal(&c3, &r, &u));
        }
    }

    #[test]
    fn twist_examples() {
        let c = ctx(5);
        let r = SemisimpleRep::irred(&c, 1, 0, Elem::ONE).unwrap();
        assert_eq!(twist(&c, &r, &GaloisCharacter::trivial()).unwrap(), r);
        let w = GaloisCharacter::level1(&c, 1, Elem::ONE);
        let t = twist(&c, &r, &w).unwrap();
        assert!(iso_equal(&c, &t, &SemisimpleRep::irred(&c, 1, 1, Elem::ONE).unwrap()));
        let r4 = SemisimpleRep::irred(&c, 1, 4, Elem::ONE).unwrap();
        let t4 = twist(&c, &r4, &w).unwrap();
        let expect = SemisimpleRep::irred(&c, 1, 1, Elem::ONE).unwrap();
        assert!(iso_equal(&c, &t4, &expect));
        assert!(traces_equal(&c, &t4, &expect));
    }

    #[test]
    fn inertia_restriction() {
        let c = ctx(5);
        let r = SemisimpleRep::irred(&c, 2, 1, c.zeta()).unwrap();
        match restrict_to_inertia(&c, &r) {
            InertialType::Niveau2 { e } => assert_eq!(q_orbit(5, e as u64, 24), vec![8, 16]),
            t => panic!("{t:?}"),
        }
        let s = SemisimpleRep::split_from(&c, 0, c.zeta(), 0, Elem::ONE).unwrap();
        assert_eq!(restrict_to_inertia(&c, &s), InertialType::niveau1(&c, 0, 0));
    }

    fn universe(c: &Ctx) -> Vec<SemisimpleRep> {
        let q = c.q() as i64;
        let lams = c.k_units();
        let mut out = Vec::new();
        for a in 0..q - 1 {
            for b in a..q - 1 {
                for &x in &lams {
                    for &y in &lams {
                        out.push(SemisimpleRep::split_from(c, a, x, b, y).unwrap());
                    }
                }
            }
        }
        for h in 1..q {
            for s in 0..q - 1 {
                for &l in &lams {
                    out.push(SemisimpleRep::irred(c, h, s, l).unwrap());
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn iso_matches_trace_oracle_q3() {
        let c = ctx(3);
        let u = universe(&c);
        let irr: Vec<_> = u.iter().filter(|r| r.is_irreducible()).collect();
        for a in &irr {
            for b in &irr {
                assert_eq!(iso_equal(&c, a, b), traces_equal(&c, a, b), "{a:?} {b:?}");
                // normal forms are unique
                assert_eq!(iso_equal(&c, a, b), a == b);
            }
        }
    }

    #[test]
    fn twist_and_restriction_invariants() {
        for p in [3, 5] {
            let c = ctx(p);
            let u = universe(&c);
            let k = c.field();
            let etas: Vec<_> = (0..p as i64 - 1)
                .flat_map(|a| [Elem::ONE, c.zeta(), k.gen()].map(|l| GaloisCharacter::level1(&c, a, l)))
                .collect();
            for r in u.iter().step_by(if p == 3 { 1 } else { 7 }) {
                for eta in &etas {
                    let t = twist(&c, r, eta).unwrap();
                    let d = det_rep(&c, r).mul(&c, &eta.mul(&c, eta).unwrap()).unwrap();
                    assert_eq!(det_rep(&c, &t), d);
                }
            }
            for r in u.iter().filter(|r| r.is_irreducible()) {
                if let SemisimpleRep::Irred { h, s, lambda } = *r {
                    let alt = SemisimpleRep::irred(&c, h as i64 * p as i64, s as i64, k.neg(lambda)).unwrap();
                    assert_eq!(restrict_to_inertia(&c, r), restrict_to_inertia(&c, &alt));
                }
            }
        }
    }
}
