use itertools::Itertools;
use serde::Serialize;

use super::types::InertialType;
use crate::arith::PrimePower;
use crate::context::Ctx;
use crate::error::{Error, Result};

/// The weight `F(r) (x) det^s`, `0 <= r <= q-1`, `0 <= s <= q-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub r: u32,
    pub s: u32,
}

impl Weight {
    pub fn new(pp: &PrimePower, r: i64, s: i64) -> Result<Self> {
        let q = pp.q() as i64;
        if !(0..q).contains(&r) {
            return Err(Error::InvalidParameter(format!("r = {r} outside [0, {}]", q - 1)));
        }
        Ok(Weight { r: r as u32, s: pp.red(s) })
    }

    pub fn all(pp: &PrimePower) -> Vec<Weight> {
        let q = pp.q();
        (0..q).cartesian_product(0..q - 1).map(|(r, s)| Weight { r, s }).collect()
    }
}

/// `(r_0, ..., r_{f-1}) (x) det^s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightDigits {
    pub digits: Vec<u32>,
    pub s: u32,
}

/// Highest weight: the torus character `diag(a, b) -> a^{r+s} b^s`, as an
/// exponent pair modulo `q-1`.
pub fn hw(pp: &PrimePower, w: &Weight) -> (u32, u32) {
    (pp.red(w.r as i64 + w.s as i64), w.s)
}

pub fn weight_to_digits(pp: &PrimePower, w: &Weight) -> WeightDigits {
    WeightDigits { digits: pp.digits(w.r), s: w.s }
}

pub fn digits_to_weight(pp: &PrimePower, d: &WeightDigits) -> Result<Weight> {
    if d.digits.len() != pp.f() as usize || d.digits.iter().any(|&x| x >= pp.p()) {
        return Err(Error::InvalidParameter(format!("bad digit vector {:?}", d.digits)));
    }
    let r = d.digits.iter().rev().fold(0u32, |acc, &x| acc * pp.p() + x);
    Weight::new(pp, r as i64, d.s as i64)
}

/// The writings `tau = omega_{2f}^{r+1} (+) omega_{2f}^{q(r+1)} (x) omega_f^s`
/// of a niveau-2 type with `0 <= r+1 <= q-1`, returned as `(r, s)`.
fn writings(ctx: &Ctx, tau: &InertialType) -> Result<Vec<(i64, i64)>> {
    let InertialType::Niveau2 { e } = *tau else {
        return Err(Error::InvalidParameter("expected a niveau-2 type".into()));
    };
    let q = ctx.q() as i64;
    let m = q * q - 1;
    let mut out = Vec::new();
    for x in [e as i64, (e as i64 * q) % m] {
        let h = x % (q + 1);
        if (1..q).contains(&h) {
            out.push((h - 1, x / (q + 1)));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `(r_0, ..., r_{f-1})` with `r + 1 = sum (r_i + 1) p^i`, for each writing
/// of `tau`, together with `(r, s)`.
pub fn type_digits(ctx: &Ctx, tau: &InertialType) -> Result<Vec<(i64, i64, Vec<i64>)>> {
    Ok(writings(ctx, tau)?
        .into_iter()
        .map(|(r, s)| {
            let d = ctx.pp().digits((r + 1) as u32).into_iter().map(|x| x as i64 - 1).collect();
            (r, s, d)
        })
        .collect())
}

fn digits_generic(p: i64, d: &[i64]) -> bool {
    (1..=p - 2).contains(&d[0]) && d[1..].iter().all(|x| (0..=p - 3).contains(x))
}

/// Genericity: `1 <= r_0 <= p-2` and `0 <= r_i <= p-3` for `i > 0`.
pub fn is_generic(ctx: &Ctx, tau: &InertialType) -> Result<bool> {
    let p = ctx.p() as i64;
    let all = type_digits(ctx, tau)?;
    let first = all.first().map(|(_, _, d)| digits_generic(p, d)).unwrap_or(false);
    if all.iter().any(|(_, _, d)| digits_generic(p, d) != first) {
        return Err(Error::Verification("genericity differs between writings".into()));
    }
    Ok(first)
}

/// `sign * x_i + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LambdaEntry {
    pub sign: i8,
    pub c: i64,
}

impl LambdaEntry {
    pub const fn plus(c: i64) -> Self {
        LambdaEntry { sign: 1, c }
    }

    pub const fn minus(c: i64) -> Self {
        LambdaEntry { sign: -1, c }
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.sign as i64 * x + self.c
    }

    pub fn show(&self, i: usize) -> String {
        match (self.sign, self.c) {
            (1, 0) => format!("x{i}"),
            (1, c) if c > 0 => format!("x{i}+{c}"),
            (1, c) => format!("x{i}{c}"),
            (_, c) => format!("{c}-x{i}"),
        }
    }
}

pub type LambdaTuple = Vec<LambdaEntry>;

fn allowed(p: i64, i: usize) -> [LambdaEntry; 4] {
    if i == 0 {
        [LambdaEntry::plus(0), LambdaEntry::plus(-1), LambdaEntry::minus(p - 2), LambdaEntry::minus(p - 1)]
    } else {
        [LambdaEntry::plus(0), LambdaEntry::plus(1), LambdaEntry::minus(p - 2), LambdaEntry::minus(p - 3)]
    }
}

fn triggers(i: usize, l: &LambdaEntry) -> bool {
    let c = if i == 0 { -1 } else { 1 };
    l.sign == 1 && (l.c == 0 || l.c == c)
}

/// All tuples satisfying conditions (i) and (ii). With `cyclic`, condition
/// (ii) also links index `f-1` to index `0`.
pub fn lambda_candidates(pp: &PrimePower, cyclic: bool) -> Vec<LambdaTuple> {
    let p = pp.p() as i64;
    let f = pp.f() as usize;
    let links = if cyclic { f } else { f - 1 };
    (0..f)
        .map(|i| allowed(p, i).to_vec())
        .multi_cartesian_product()
        .filter(|t| {
            (0..links).all(|i| {
                let j = (i + 1) % f;
                !triggers(i, &t[i]) || t[j] == LambdaEntry::plus(0) || t[j] == LambdaEntry::minus(p - 2)
            })
        })
        .collect()
}

/// The tuple `(x_0, ..., x_{f-1})`.
pub fn membership_tuple(f: u32) -> LambdaTuple {
    vec![LambdaEntry::plus(0); f as usize]
}

/// Whether `w` is certified outside `W(tau)` using only conditions (i)-(ii).
///
/// For each writing of `tau` the candidate weights
/// `(lambda_i(r_i)) (x) det^{e(lambda)+s}` are formed, with `e(identity) = 0`
/// and `e(lambda)` unconstrained otherwise. `w` is certified when some writing
/// produces no candidate equal to it.
pub fn not_in_w_tau(ctx: &Ctx, w: &Weight, tau: &InertialType, cyclic: bool) -> Result<bool> {
    let pp = ctx.pp();
    if pp.f() < 2 {
        return Err(Error::InvalidParameter("needs f > 1".into()));
    }
    if !is_generic(ctx, tau)? {
        return Err(Error::InvalidParameter("type is not generic".into()));
    }
    let p = pp.p() as i64;
    let target: Vec<i64> = pp.digits(w.r).into_iter().map(|x| x as i64).collect();
    let cands = lambda_candidates(pp, cyclic);
    let ident = membership_tuple(pp.f());
    let mut certified = false;
    for (_, s, d) in type_digits(ctx, tau)? {
        let hit = cands.iter().any(|lam| {
            let vals: Vec<i64> = lam.iter().zip(&d).map(|(l, &x)| l.eval(x)).collect();
            vals.iter().all(|v| (0..p).contains(v)) && vals == target && (*lam != ident || pp.red(s) == w.s)
        });
        certified |= !hit;
    }
    Ok(certified)
}

/// The formal argument: the tuple `(x_0, x_1 + 1, ..., x_{f-1} + 1)`
/// that `F(r)` would need is excluded by (i) and (ii). Returns `true` when it
/// is not a candidate.
pub fn not_in_w_tau_formal(pp: &PrimePower, cyclic: bool) -> Result<bool> {
    if pp.f() < 2 {
        return Err(Error::InvalidParameter("needs f > 1".into()));
    }
    let mut need = vec![LambdaEntry::plus(1); pp.f() as usize];
    need[0] = LambdaEntry::plus(0);
    Ok(!lambda_candidates(pp, cyclic).contains(&need))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u32, f: u32) -> PrimePower {
        PrimePower::new(p, f).unwrap()
    }

    #[test]
    fn highest_weight() {
        let p5 = pp(5, 1);
        assert_eq!(hw(&p5, &Weight { r: 0, s: 0 }), (0, 0));
        assert_eq!(hw(&p5, &Weight { r: 2, s: 1 }), (3, 1));
        assert_eq!(hw(&p5, &Weight { r: 3, s: 0 }), (3, 0));
    }

    #[test]
    fn hw_injective_except_top() {
        for (p, f) in [(3, 1), (5, 1), (3, 2)] {
            let pp = pp(p, f);
            let q = pp.q();
            for a in Weight::all(&pp) {
                for b in Weight::all(&pp) {
                    if a != b && hw(&pp, &a) == hw(&pp, &b) {
                        let mut rs = [a.r, b.r];
                        rs.sort();
                        assert_eq!(rs, [0, q - 1]);
                        assert_eq!(a.s, b.s);
                    }
                }
            }
        }
    }

    #[test]
    fn digit_dictionary() {
        assert_eq!(weight_to_digits(&pp(3, 2), &Weight { r: 5, s: 0 }).digits, vec![2, 1]);
        assert_eq!(weight_to_digits(&pp(5, 2), &Weight { r: 13, s: 0 }).digits, vec![3, 2]);
        assert_eq!(weight_to_digits(&pp(3, 3), &Weight { r: 0, s: 0 }).digits, vec![0, 0, 0]);
        for (p, f) in [(3, 2), (5, 2), (7, 1)] {
            let pp = pp(p, f);
            let all = Weight::all(&pp);
            assert_eq!(all.len() as u32, pp.q() * (pp.q() - 1));
            for w in all {
                assert_eq!(digits_to_weight(&pp, &weight_to_digits(&pp, &w)).unwrap(), w);
            }
        }
    }

    #[test]
    fn genericity() {
        let c9 = Ctx::new(3, 2, 1).unwrap();
        let t = InertialType::niveau2(&c9, 5).unwrap();
        assert!(is_generic(&c9, &t).unwrap());
        let t = InertialType::niveau2(&c9, 4).unwrap();
        assert!(!is_generic(&c9, &t).unwrap());
        let c3 = Ctx::new(3, 1, 1).unwrap();
        assert!(is_generic(&c3, &InertialType::niveau2(&c3, 2).unwrap()).unwrap());
        // both writings agree on every type
        for (p, f) in [(3, 2), (5, 2), (5, 1), (7, 1)] {
            let c = Ctx::new(p, f, 1).unwrap();
            let q = c.q() as i64;
            for e in 1..q * q - 1 {
                if let Ok(t) = InertialType::niveau2(&c, e) {
                    is_generic(&c, &t).unwrap();
                }
            }
        }
    }

    #[test]
    fn candidate_lists() {
        for (p, f) in [(3, 1), (3, 2), (5, 2), (5, 3)] {
            let pp = pp(p, f);
            for cyclic in [false, true] {
                let c = lambda_candidates(&pp, cyclic);
                assert!(c.contains(&membership_tuple(f)));
                let mut other = vec![LambdaEntry::minus(p as i64 - 3); f as usize];
                other[0] = LambdaEntry::minus(p as i64 - 1);
                assert!(c.contains(&other));
                assert!(c.len() >= 1 << f);
            }
        }
        assert_eq!(lambda_candidates(&pp(3, 1), false).len(), 4);
    }

    #[test]
    fn formal_argument() {
        for (p, f) in [(3, 2), (5, 2), (5, 3)] {
            for cyclic in [false, true] {
                assert!(not_in_w_tau_formal(&pp(p, f), cyclic).unwrap());
            }
        }
        assert!(not_in_w_tau_formal(&pp(5, 1), false).is_err());
    }

    #[test]
    fn value_level_checks() {
        let c = Ctx::new(5, 2, 1).unwrap();
        let q = 25i64;
        let mut seen = 0;
        for e in 1..q * q - 1 {
            let Ok(t) = InertialType::niveau2(&c, e) else { continue };
            if !is_generic(&c, &t).unwrap() {
                assert!(not_in_w_tau(&c, &Weight { r: 0, s: 0 }, &t, true).is_err());
                continue;
            }
            seen += 1;
            for (_, s, d) in type_digits(&c, &t).unwrap() {
                let digits: Vec<u32> = d.iter().map(|&x| x as u32).collect();
                let w = digits_to_weight(c.pp(), &WeightDigits { digits, s: c.red(s) }).unwrap();
                // the membership weight is never certified outside
                assert!(!not_in_w_tau(&c, &w, &t, true).unwrap());
                assert!(!not_in_w_tau(&c, &w, &t, false).unwrap());
            }
        }
        assert!(seen > 0);
    }
}
