//! Truncated Laurent series over a finite field.
//!
//! A [`TruncLaurent`] stores the coefficients of `t^val, t^{val+1}, ...`
//! together with an absolute precision `prec`: the series is known modulo
//! `t^prec`. Coefficients past the stored vector but below `prec` are zero.
//! `prec == INF` marks an exact Laurent polynomial.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::gf::{Elem, Gf};
use crate::error::{Error, Result};

/// Precision of exact objects.
pub const INF: i64 = i64::MAX / 4;

fn padd(a: i64, b: i64) -> i64 {
    if a >= INF || b >= INF {
        INF
    } else {
        (a + b).min(INF)
    }
}

fn pmul(a: i64, w: i64) -> i64 {
    if a >= INF {
        INF
    } else {
        a.saturating_mul(w).min(INF)
    }
}

fn div_ceil(a: i64, q: i64) -> i64 {
    -((-a).div_euclid(q))
}

#[derive(Clone)]
pub struct TruncLaurent {
    field: Gf,
    val: i64,
    coeffs: Vec<Elem>,
    prec: i64,
}

impl fmt::Debug for TruncLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| format!("{}*t^{}", self.field.show(c), self.val + i as i64))
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.prec >= INF {
            write!(f, "{body}")
        } else {
            write!(f, "{body} + O(t^{})", self.prec)
        }
    }
}

impl Serialize for TruncLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TruncLaurent", 3)?;
        st.serialize_field("val", &self.val.min(self.prec))?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|&c| self.field.show(c)).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("prec", &(self.prec < INF).then_some(self.prec))?;
        st.end()
    }
}

impl TruncLaurent {
    pub fn new(field: &Gf, val: i64, coeffs: Vec<Elem>, prec: i64) -> Self {
        let mut s = TruncLaurent { field: field.clone(), val, coeffs, prec: prec.min(INF) };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.prec < INF {
            let keep = (self.prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.val = self.prec;
        } else {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
    }

    /// A power series `c_0 + c_1 t + ...` known modulo `t^prec`.
    pub fn from_coeffs(field: &Gf, coeffs: &[Elem], prec: i64) -> Self {
        Self::new(field, 0, coeffs.to_vec(), prec)
    }

    pub fn zero(field: &Gf) -> Self {
        Self::new(field, 0, vec![], INF)
    }

    /// `O(t^prec)`.
    pub fn zero_to(field: &Gf, prec: i64) -> Self {
        Self::new(field, 0, vec![], prec)
    }

    pub fn one(field: &Gf) -> Self {
        Self::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Gf, c: Elem) -> Self {
        Self::new(field, 0, vec![c], INF)
    }

    /// The exact monomial `c t^e`.
    pub fn monomial(field: &Gf, c: Elem, e: i64) -> Self {
        Self::new(field, e, vec![c], INF)
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= INF
    }

    /// The valuation, or the precision if the series is zero to known precision.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Stored coefficients starting at `t^valuation`.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// The coefficient of `t^i`; an error if `i` is beyond the precision.
    pub fn coeff(&self, i: i64) -> Result<Elem> {
        if i >= self.prec {
            return Err(Error::Precision(format!("coefficient t^{i} requested, known to t^{}", self.prec)));
        }
        Ok(self.coeff_unchecked(i))
    }

    fn coeff_unchecked(&self, i: i64) -> Elem {
        if i < self.val {
            return Elem::ZERO;
        }
        self.coeffs.get((i - self.val) as usize).copied().unwrap_or(Elem::ZERO)
    }

    /// Lowers the precision to at most `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        Self::new(&self.field, self.val, self.coeffs.clone(), self.prec.min(prec))
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        if self.is_zero() {
            return o.truncate(prec);
        }
        if o.is_zero() {
            return self.truncate(prec);
        }
        let lo = self.val.min(o.val);
        let hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64).min(prec);
        let coeffs = (lo..hi).map(|i| self.field.add(self.coeff_unchecked(i), o.coeff_unchecked(i))).collect();
        Self::new(&self.field, lo, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Self::new(&self.field, self.val, coeffs, self.prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        let mut s = Self::new(&self.field, self.val, coeffs, self.prec);
        if c.is_zero() {
            s = Self::zero_to(&self.field, self.prec);
        }
        s
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self::new(&self.field, self.val + e, self.coeffs.clone(), padd(self.prec, e))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = padd(self.val, o.prec).min(padd(o.val, self.prec));
        if self.is_zero() || o.is_zero() {
            return Self::zero_to(&self.field, prec);
        }
        let val = self.val + o.val;
        let full = self.coeffs.len() + o.coeffs.len() - 1;
        let len = if prec >= INF { full } else { ((prec - val).max(0) as usize).min(full) };
        let k = &self.field;
        let mut out = vec![Elem::ZERO; len];
        for (i, &a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Self::new(k, val, out, prec)
    }

    /// Multiplicative inverse. The result has the same relative precision.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = &self.field;
        let u0 = k.inv(self.coeffs[0])?;
        if self.prec >= INF {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(k, u0, -self.val));
            }
            return Err(Error::Precision("inverse of an exact polynomial needs a precision bound".into()));
        }
        let rel = (self.prec - self.val) as usize;
        let mut b = Vec::with_capacity(rel);
        b.push(u0);
        for n in 1..rel {
            let mut acc = Elem::ZERO;
            for i in 1..=n.min(self.coeffs.len() - 1) {
                acc = k.add(acc, k.mul(self.coeffs[i], b[n - i]));
            }
            b.push(k.neg(k.mul(u0, acc)));
        }
        Ok(Self::new(k, -self.val, b, -self.val + rel as i64))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// `self(g)` for `g` of positive valuation.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let w = g.valuation();
        if w < 1 {
            return Err(Error::CompositionValuation);
        }
        if g.is_zero() {
            if self.val < 0 && !self.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let c = self.coeff_unchecked(0);
            let exact_const = self.prec >= INF && self.coeffs.len() <= 1 && self.val >= 0;
            let prec = if exact_const { INF } else { g.prec.min(pmul(self.prec, w)) };
            return Ok(Self::new(&self.field, 0, vec![c], prec));
        }
        let vf = self.val;
        let lowest = if vf == 0 { 1 } else { vf };
        let target = pmul(self.prec, w).min(padd(g.prec, w * (lowest - 1)));
        let (f, gp) = if target >= INF {
            (self.clone(), g.clone())
        } else {
            let pf = div_ceil(target, w);
            (self.truncate(pf), g.truncate(target - w * (lowest - 1)))
        };
        if self.is_zero() {
            return Ok(Self::zero_to(&self.field, target));
        }
        let base = if vf < 0 { gp.inv()?.pow(-vf)? } else { gp.pow(vf)? };
        let mut h = Self::zero(&self.field);
        for &b in f.coeffs.iter().rev() {
            h = h.mul(&gp).add(&Self::constant(&self.field, b));
        }
        let r = base.mul(&h);
        let bound = pmul(f.prec, w);
        Ok(r.truncate(bound))
    }

    /// `t -> t^q`, i.e. the Frobenius `phi` with trivial action on coefficients.
    pub fn phi(&self, q: u32) -> Self {
        let q = q as i64;
        if self.is_zero() {
            return Self::zero_to(&self.field, pmul(self.prec, q));
        }
        let mut coeffs = vec![Elem::ZERO; (self.coeffs.len().max(1) - 1) * q as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * q as usize] = c;
        }
        Self::new(&self.field, self.val * q, coeffs, pmul(self.prec, q))
    }

    /// `sum a_j t^j -> sum a_{qj} t^j`.
    pub fn psi(&self, q: u32) -> Self {
        let q = q as i64;
        let prec = if self.prec >= INF { INF } else { div_ceil(self.prec, q) };
        if self.is_zero() {
            return Self::zero_to(&self.field, prec);
        }
        let lo = div_ceil(self.val, q);
        let hi = div_ceil(self.val + self.coeffs.len() as i64, q);
        let coeffs = (lo..hi).map(|j| self.coeff_unchecked(q * j)).collect();
        Self::new(&self.field, lo, coeffs, prec)
    }

    /// Lowest degree below the common precision where the two series differ.
    pub fn first_difference(&self, o: &Self) -> Option<i64> {
        let prec = self.prec.min(o.prec);
        let lo = self.val.min(o.val);
        let hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64).min(prec);
        (lo..hi).find(|&i| self.coeff_unchecked(i) != o.coeff_unchecked(i))
    }

    /// Equality of all coefficients below the common precision.
    pub fn agrees(&self, o: &Self) -> bool {
        self.first_difference(o).is_none()
    }

    /// Equality modulo `t^n`; an error if either side is not known that far.
    pub fn eq_mod(&self, o: &Self, n: i64) -> Result<bool> {
        let known = self.prec.min(o.prec);
        if known < n {
            return Err(Error::Precision(format!("comparison to t^{n} but known only to t^{known}")));
        }
        Ok(self.first_difference(o).map_or(true, |d| d >= n))
    }

    /// Whether every coefficient lies in the subfield of degree `d`.
    pub fn in_subfield(&self, d: u32) -> Result<bool> {
        for &c in &self.coeffs {
            if !self.field.in_subfield(c, d)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// An element of `Z_p` known modulo `p^digits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PadicExp {
    p: u32,
    digits: u32,
    residue: u64,
}

impl PadicExp {
    fn modulus_of(p: u32, digits: u32) -> Result<u64> {
        (p as u64)
            .checked_pow(digits)
            .filter(|&m| m < 1 << 62)
            .ok_or_else(|| Error::InvalidParameter("p-adic exponent modulus too large".into()))
    }

    pub fn from_int(v: i128, p: u32, digits: u32) -> Result<Self> {
        let m = Self::modulus_of(p, digits)?;
        Ok(PadicExp { p, digits, residue: v.rem_euclid(m as i128) as u64 })
    }

    /// `num / den` in `Z_p`; `den` must be prime to `p`.
    pub fn from_ratio(num: i128, den: i128, p: u32, digits: u32) -> Result<Self> {
        let m = Self::modulus_of(p, digits)? as i128;
        if den.rem_euclid(p as i128) == 0 {
            return Err(Error::InvalidParameter(format!("{den} is not a p-adic unit")));
        }
        let (mut r0, mut r1) = (den.rem_euclid(m), m);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let t = r0 / r1;
            (r0, r1) = (r1, r0 - t * r1);
            (s0, s1) = (s1, s0 - t * s1);
        }
        debug_assert_eq!(r0, 1);
        let inv = s0.rem_euclid(m);
        let v = (num.rem_euclid(m) * inv).rem_euclid(m);
        Ok(PadicExp { p, digits, residue: v as u64 })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn modulus(&self) -> u64 {
        (self.p as u64).pow(self.digits)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.p != o.p {
            return Err(Error::InvalidParameter("mixed primes".into()));
        }
        let digits = self.digits.min(o.digits);
        Self::from_int(self.residue as i128 + o.residue as i128, self.p, digits)
    }
}

/// `w^s` for `w` in `1 + t F[[t]]` and a p-adic exponent `s`.
///
/// Requires the precision of `w` to be at most `p^m`, where `m` is the
/// number of known digits of `s`; then `(1+v)^{p^m} = 1 + v^{p^m}` makes
/// the residue of `s` sufficient.
pub fn binomial_power(w: &TruncLaurent, s: &PadicExp) -> Result<TruncLaurent> {
    if w.valuation() != 0 || w.coeffs()[0] != Elem::ONE {
        return Err(Error::InvalidParameter("binomial power needs a series in 1 + tF[[t]]".into()));
    }
    if w.prec() > s.modulus() as i64 {
        return Err(Error::Precision(format!(
            "precision {} exceeds p^m = {}",
            if w.is_exact() { "infinite".to_string() } else { w.prec().to_string() },
            s.modulus()
        )));
    }
    w.pow(s.residue() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Gf {
        Gf::new(3, 1).unwrap()
    }

    fn poly(k: &Gf, c: &[i64], prec: i64) -> TruncLaurent {
        let c: Vec<Elem> = c.iter().map(|&x| k.from_int(x)).collect();
        TruncLaurent::from_coeffs(k, &c, prec)
    }

    #[test]
    fn seven_th_power_of_one_plus_t() {
        let k = f3();
        let s = PadicExp::from_ratio(2, 8, 3, 2).unwrap();
        assert_eq!(s.residue(), 7);
        let w = poly(&k, &[1, 1], 9);
        let w7 = binomial_power(&w, &s).unwrap();
        // brute force: (1+t)^7 by repeated multiplication of exact polynomials
        let mut direct = TruncLaurent::one(&k);
        for _ in 0..7 {
            direct = direct.mul(&poly(&k, &[1, 1], INF));
        }
        assert!(w7.eq_mod(&direct, 9).unwrap());
        let mut back = TruncLaurent::one(&k);
        for _ in 0..4 {
            back = back.mul(&w7);
        }
        assert!(back.eq_mod(&w, 9).unwrap());
    }

    #[test]
    fn binomial_power_edges() {
        let k = f3();
        let w = poly(&k, &[1, 1], 9);
        let zero = PadicExp::from_int(0, 3, 2).unwrap();
        assert!(binomial_power(&w, &zero).unwrap().eq_mod(&TruncLaurent::one(&k), 9).unwrap());
        let big = poly(&k, &[1, 1], 10);
        assert!(binomial_power(&big, &zero).is_err());
        let frob = poly(&k, &[1, 1], 20).pow(9).unwrap();
        let expect = poly(&k, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1], 20);
        assert!(frob.eq_mod(&expect, 20).unwrap());
    }

    #[test]
    fn psi_examples() {
        let k = Gf::new(3, 2).unwrap();
        let q = 9;
        let tq = TruncLaurent::monomial(&k, k.one(), 9);
        assert!(tq.psi(q).agrees(&TruncLaurent::monomial(&k, k.one(), 1)));
        assert!(TruncLaurent::monomial(&k, k.one(), 1).psi(q).is_zero());
        let one_t = poly(&k, &[1, 1], 60);
        let lhs = one_t.phi(q).mul(&TruncLaurent::monomial(&k, k.one(), 18));
        let rhs = one_t.mul(&TruncLaurent::monomial(&k, k.one(), 2));
        assert!(lhs.psi(q).eq_mod(&rhs, 6).unwrap());
    }

    #[test]
    fn inverse_and_precision() {
        let k = f3();
        let a = poly(&k, &[0, 1, 1], 10);
        let ai = a.inv().unwrap();
        assert_eq!(ai.valuation(), -1);
        assert_eq!(ai.prec(), 8);
        let prod = a.mul(&ai);
        assert!(prod.eq_mod(&TruncLaurent::one(&k), 9).unwrap());
        assert!(prod.eq_mod(&TruncLaurent::one(&k), 10).is_err());
    }

    #[test]
    fn composition_matches_substitution() {
        let k = f3();
        // f = 1 + t + t^2, g = t + t^2: f(g) = 1 + t + 2t^2 + 2t^3 + t^4
        let f = poly(&k, &[1, 1, 1], INF);
        let g = poly(&k, &[0, 1, 1], INF);
        let fg = f.compose(&g).unwrap();
        assert!(fg.agrees(&poly(&k, &[1, 1, 2, 2, 1], INF)));
        assert!(fg.is_exact());
        let gt = g.truncate(6);
        let lhs = f.compose(&gt).unwrap();
        assert!(lhs.eq_mod(&fg, 6).unwrap());
        assert!(f.compose(&poly(&k, &[1, 1], INF)).is_err());
    }
}
