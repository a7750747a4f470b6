//! Finite fields `F_{p^D}` in Zech-logarithm representation.
//!
//! Every nonzero element is stored as its discrete logarithm with respect to
//! a fixed primitive element `g`, so multiplication is addition of exponents
//! and addition goes through the table `zech[i] = log(1 + g^i)`.
//!
//! The defining polynomial is the first primitive polynomial of degree `D`
//! in the enumeration order described on [`Gf::new`]. All subfields
//! `F_{p^d}` (`d | D`) live inside the same table, which makes the
//! distinguished generators `g^{(p^D-1)/(p^d-1)}` compatible by construction.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 24;
const ZERO_LOG: u32 = u32::MAX;

/// An element of a [`Gf`], stored as its discrete logarithm.
///
/// The ordering compares logarithms, with zero sorting after every unit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(ZERO_LOG);
    pub const ONE: Elem = Elem(0);

    pub fn is_zero(self) -> bool {
        self.0 == ZERO_LOG
    }

    /// The logarithm to base `g`, or `None` for zero.
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

struct Inner {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

/// The field with `p^degree` elements.
#[derive(Clone)]
pub struct Gf(Arc<Inner>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.degree)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Gf {}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Walks the powers of `x` modulo the monic polynomial with low coefficients
/// `c`; returns the packed exponent table if `x` has order `p^D - 1`.
fn primitive_table(c: &[u32], p: u32, order: u32) -> Option<Vec<u32>> {
    let d = c.len();
    let mut state = vec![0u32; d];
    state[0] = 1;
    let mut exp = Vec::with_capacity(order as usize - 1);
    for k in 0..order - 1 {
        if k > 0 && state[0] == 1 && state[1..].iter().all(|&v| v == 0) {
            return None;
        }
        exp.push(pack(&state, p));
        let top = state[d - 1];
        for i in (1..d).rev() {
            state[i] = state[i - 1];
        }
        state[0] = 0;
        if top != 0 {
            for i in 0..d {
                state[i] = (state[i] + (p - c[i]) * top) % p;
            }
        }
    }
    (state[0] == 1 && state[1..].iter().all(|&v| v == 0)).then_some(exp)
}

impl Gf {
    /// Builds `F_{p^degree}`.
    ///
    /// Candidate moduli `x^D + c_{D-1} x^{D-1} + ... + c_0` are scanned in
    /// increasing order of the integer `c_0 + c_1 p + ... + c_{D-1} p^{D-1}`,
    /// and the first primitive one is used. The class of `x` is the
    /// generator `g`.
    pub fn new(p: u32, degree: u32) -> Result<Gf> {
        if p < 2 || !is_prime(p as u64) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::InvalidParameter("field degree must be positive".into()));
        }
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidParameter(format!("field {p}^{degree} is too large")))?
            as u32;
        let (modulus, exp) = (1..order)
            .map(|k| {
                let mut c = Vec::with_capacity(degree as usize);
                let mut k = k;
                for _ in 0..degree {
                    c.push(k % p);
                    k /= p;
                }
                c
            })
            .filter(|c| c[0] != 0)
            .find_map(|c| primitive_table(&c, p, order).map(|e| (c, e)))
            .expect("primitive polynomials exist in every degree");
        let mut log = vec![ZERO_LOG; order as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let zech = exp
            .iter()
            .map(|&v| {
                let low = v % p;
                log[(v - low + (low + 1) % p) as usize]
            })
            .collect();
        Ok(Gf(Arc::new(Inner { p, degree, order, modulus, exp, log, zech })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order as u64
    }

    fn units(&self) -> u32 {
        self.0.order - 1
    }

    /// Low coefficients `c_0..c_{D-1}` of the monic defining polynomial.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The distinguished primitive element `g`.
    pub fn gen(&self) -> Elem {
        self.from_log(1)
    }

    pub fn from_log(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.units() as i64) as u32)
    }

    pub fn log(&self, a: Elem) -> Result<u64> {
        a.log().map(u64::from).ok_or(Error::LogOfZero)
    }

    pub fn from_int(&self, k: i64) -> Elem {
        let r = k.rem_euclid(self.0.p as i64) as usize;
        Elem(self.0.log[r])
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.units();
        let d = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + n - a.0 };
        let z = self.0.zech[d as usize];
        if z == ZERO_LOG {
            Elem::ZERO
        } else {
            Elem(((a.0 as u64 + z as u64) % n as u64) as u32)
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.0.p == 2 {
            return a;
        }
        let n = self.units();
        Elem(((a.0 as u64 + (n / 2) as u64) % n as u64) as u32)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(((a.0 as u64 + b.0 as u64) % self.units() as u64) as u32)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.from_log(-(a.0 as i64)))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if a.is_zero() {
            return match e.signum() {
                1 => Ok(Elem::ZERO),
                0 => Ok(Elem::ONE),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = self.units() as i128;
        Ok(Elem(((a.0 as i128 * e as i128).rem_euclid(n)) as u32))
    }

    /// `a^{p^k}`.
    pub fn frobenius(&self, a: Elem, k: u32) -> Elem {
        match a.log() {
            None => a,
            Some(l) => {
                let n = self.units() as u64;
                let mut pk = 1u64;
                for _ in 0..k {
                    pk = pk * self.0.p as u64 % n;
                }
                Elem((l as u64 * pk % n) as u32)
            }
        }
    }

    /// Number of elements of the subfield of degree `d`.
    pub fn subfield_order(&self, d: u32) -> Result<u64> {
        if d == 0 || self.0.degree % d != 0 {
            return Err(Error::InvalidParameter(format!("degree {d} does not divide {}", self.0.degree)));
        }
        Ok((self.0.p as u64).pow(d))
    }

    /// `(p^D - 1) / (p^d - 1)`: logarithms of the subfield of degree `d`
    /// are exactly the multiples of this number.
    pub fn subfield_index(&self, d: u32) -> Result<u64> {
        Ok(self.units() as u64 / (self.subfield_order(d)? - 1))
    }

    /// Distinguished generator of the multiplicative group of `F_{p^d}`.
    pub fn subfield_gen(&self, d: u32) -> Result<Elem> {
        Ok(self.from_log(self.subfield_index(d)? as i64))
    }

    pub fn in_subfield(&self, a: Elem, d: u32) -> Result<bool> {
        let idx = self.subfield_index(d)?;
        Ok(a.log().map_or(true, |l| l as u64 % idx == 0))
    }

    /// All elements of the subfield of degree `d`: zero first, then the
    /// powers of its distinguished generator in increasing order.
    pub fn subfield_elems(&self, d: u32) -> Result<Vec<Elem>> {
        let idx = self.subfield_index(d)?;
        let count = self.subfield_order(d)? - 1;
        let mut v = vec![Elem::ZERO];
        v.extend((0..count).map(|k| Elem((k * idx) as u32)));
        Ok(v)
    }

    /// Logarithm of `a` to the base of the distinguished generator of the
    /// subfield of degree `d`.
    pub fn subfield_log(&self, a: Elem, d: u32) -> Result<u64> {
        let idx = self.subfield_index(d)?;
        let l = self.log(a)?;
        if l % idx != 0 {
            return Err(Error::InvalidParameter("element is not in the subfield".into()));
        }
        Ok(l / idx)
    }

    /// The square root with the smaller logarithm, if one exists in this field.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        match a.log() {
            None => Some(a),
            Some(l) if self.0.p == 2 => {
                let n = self.units();
                Some(Elem(((l as u64 * (n as u64).div_ceil(2)) % n as u64) as u32))
            }
            Some(l) => (l % 2 == 0).then_some(Elem(l / 2)),
        }
    }

    /// Roots of `X^2 - t X + 1`, sorted by logarithm. Both exist in this
    /// field or neither does.
    pub fn reciprocal_roots(&self, t: Elem) -> Option<(Elem, Elem)> {
        let two = self.from_int(2);
        let disc = self.sub(self.mul(t, t), self.from_int(4));
        let r = self.sqrt(disc)?;
        let half = self.inv(two).ok()?;
        let a = self.mul(self.add(t, r), half);
        let b = self.mul(self.sub(t, r), half);
        Some(if a <= b { (a, b) } else { (b, a) })
    }

    /// Coordinates of `a` in the power basis `1, x, ..., x^{D-1}`.
    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let mut v = match a.log() {
            None => 0,
            Some(l) => self.0.exp[l as usize],
        };
        (0..self.0.degree)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<Elem> {
        if c.len() != self.0.degree as usize || c.iter().any(|&d| d >= self.0.p) {
            return Err(Error::InvalidParameter("bad coordinate vector".into()));
        }
        Ok(Elem(self.0.log[pack(c, self.0.p) as usize]))
    }

    /// Every element: zero, then `g^0, g^1, ...`.
    pub fn elems(&self) -> Vec<Elem> {
        self.subfield_elems(self.0.degree).expect("full field")
    }

    /// Human-readable form: `0` or `g^k`.
    pub fn show(&self, a: Elem) -> String {
        match a.log() {
            None => "0".to_string(),
            Some(l) => format!("g^{l}"),
        }
    }

    /// Parses the output of [`Gf::show`] or a plain integer.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("g^") {
            let k: i64 = k.parse().map_err(|_| Error::InvalidParameter(format!("bad exponent in {s:?}")))?;
            return Ok(self.from_log(k));
        }
        s.parse::<i64>()
            .map(|k| self.from_int(k))
            .map_err(|_| Error::InvalidParameter(format!("cannot parse field element {s:?}")))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_products() {
        let f5 = Gf::new(5, 1).unwrap();
        assert_eq!(f5.mul(f5.from_int(2), f5.from_int(3)), f5.one());
        assert_eq!(f5.log(f5.one()).unwrap(), 0);
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f5.add(f5.from_int(a), f5.from_int(b)), f5.from_int(a + b));
                assert_eq!(f5.mul(f5.from_int(a), f5.from_int(b)), f5.from_int(a * b));
            }
        }
    }

    #[test]
    fn f9_log_table() {
        let f9 = Gf::new(3, 2).unwrap();
        let z = f9.gen();
        let z5 = f9.pow(z, 5).unwrap();
        assert_eq!(f9.log(z5).unwrap(), 5);
        // brute force: walk the powers through coordinates
        let mut seen = std::collections::HashSet::new();
        let mut x = f9.one();
        for _ in 0..8 {
            assert!(seen.insert(f9.coords(x)));
            x = f9.mul(x, z);
        }
        assert_eq!(x, f9.one());
    }

    #[test]
    fn addition_matches_coordinates() {
        for (p, d) in [(3, 3), (5, 2), (7, 2)] {
            let k = Gf::new(p, d).unwrap();
            for a in k.elems() {
                for b in k.elems().into_iter().step_by(3) {
                    let ca = k.coords(a);
                    let cb = k.coords(b);
                    let cs: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                    assert_eq!(k.coords(k.add(a, b)), cs);
                }
            }
        }
    }

    #[test]
    fn frobenius_order_and_fixed_field() {
        let k = Gf::new(3, 4).unwrap();
        let z = k.subfield_gen(2).unwrap();
        // Frobenius x -> x^9 on F_81 has order 2 and fixes F_9
        assert_eq!(k.frobenius(z, 2), z);
        let g = k.gen();
        assert_ne!(k.frobenius(g, 2), g);
        assert_eq!(k.frobenius(g, 4), g);
        let fixed = k.elems().into_iter().filter(|&a| k.frobenius(a, 2) == a).count();
        assert_eq!(fixed, 9);
    }

    #[test]
    fn subfield_generators_compatible() {
        let k = Gf::new(5, 4).unwrap();
        let z2 = k.subfield_gen(2).unwrap();
        let z1 = k.subfield_gen(1).unwrap();
        assert_eq!(k.pow(z2, 6).unwrap(), z1);
        assert_eq!(k.pow(k.gen(), 156).unwrap(), z1);
    }

    #[test]
    fn reciprocal_roots_solve() {
        let k = Gf::new(5, 2).unwrap();
        for t in k.subfield_elems(1).unwrap() {
            let (a, b) = k.reciprocal_roots(t).unwrap();
            assert_eq!(k.mul(a, b), k.one());
            assert_eq!(k.add(a, b), t);
        }
    }
}
