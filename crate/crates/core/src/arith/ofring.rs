//! The ring `o_F / p^K` for a monogenic `o_F = Z_p[x]/(g)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gf::{Elem, Gf};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ramification {
    /// `g` lifts an irreducible polynomial mod `p`; `pi = p` and `x` reduces
    /// to the stored root of `g mod p`.
    Unramified { residue_root: Elem },
    /// `g` is Eisenstein; `pi = x` and the residue field is `F_p`.
    Eisenstein,
}

#[derive(Debug)]
struct Inner {
    p: u32,
    k: u32,
    pk: BigInt,
    g: Vec<BigInt>,
    kind: Ramification,
    field: Gf,
    residue_degree: u32,
    // Eisenstein only: Q(x) with x Q(x) = -g_0, and (g_0 / p)^{-1} mod p^K
    x_cofactor: Vec<BigInt>,
    unit_inv: BigInt,
}

/// `o_F / p^K` with coefficients reduced into `[0, p^K)`.
#[derive(Clone, Debug)]
pub struct OfRing(Arc<Inner>);

/// An element of an [`OfRing`]: coefficients of `1, x, ..., x^{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OfElem(Vec<BigInt>);

impl OfElem {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }
}

fn minpoly_over_fp(field: &Gf, root: Elem, d: u32) -> Vec<i64> {
    // prod_{j<d} (X - root^{p^j}), coefficients lie in F_p
    let mut poly = vec![Elem::ONE];
    for j in 0..d {
        let r = field.frobenius(root, j);
        let mut next = vec![Elem::ZERO; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] = field.add(next[i + 1], c);
            next[i] = field.sub(next[i], field.mul(c, r));
        }
        poly = next;
    }
    poly.iter().map(|&c| field.coords(c)[0] as i64).collect()
}

impl OfRing {
    fn build(field: &Gf, g: Vec<i64>, k: u32, kind: Ramification, residue_degree: u32) -> Result<Self> {
        let p = field.p();
        if k == 0 {
            return Err(Error::InvalidParameter("K must be positive".into()));
        }
        if g.last() != Some(&1) || g.len() < 2 {
            return Err(Error::InvalidParameter("g must be monic of positive degree".into()));
        }
        let pk = BigInt::from(p).pow(k);
        let g: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c).mod_floor(&pk)).collect();
        let mut inner = Inner {
            p,
            k,
            pk,
            g,
            kind,
            field: field.clone(),
            residue_degree,
            x_cofactor: vec![],
            unit_inv: BigInt::one(),
        };
        if inner.kind == Ramification::Eisenstein {
            let e = inner.g.len() - 1;
            inner.x_cofactor = inner.g[1..=e].to_vec();
            let h0 = (&inner.g[0] / BigInt::from(p)).mod_floor(&inner.pk);
            inner.unit_inv = modinv(&h0, &inner.pk)?;
        }
        Ok(OfRing(Arc::new(inner)))
    }

    /// The unramified ring of residue degree `f`, presented by the lift of
    /// the minimal polynomial of the distinguished generator of `F_{p^f}`
    /// inside `field`.
    pub fn unramified(field: &Gf, f: u32, k: u32) -> Result<Self> {
        let zeta = field.subfield_gen(f)?;
        let g = minpoly_over_fp(field, zeta, f);
        Self::build(field, g, k, Ramification::Unramified { residue_root: zeta }, f)
    }

    /// The unramified ring given by an explicit monic `g` (low coefficient first)
    /// that is irreducible modulo `p`. The residue root is the root of smallest
    /// logarithm.
    pub fn unramified_with(field: &Gf, g: &[i64], k: u32) -> Result<Self> {
        let d = (g.len() - 1) as u32;
        let roots: Vec<Elem> = field
            .subfield_elems(d)?
            .into_iter()
            .filter(|&x| {
                let v = g.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), field.from_int(c)));
                v.is_zero()
            })
            .collect();
        let root = roots
            .into_iter()
            .filter(|&r| (1..d).all(|j| field.frobenius(r, j) != r))
            .min()
            .ok_or_else(|| Error::InvalidParameter("g is not irreducible modulo p".into()))?;
        Self::build(field, g.to_vec(), k, Ramification::Unramified { residue_root: root }, d)
    }

    /// The totally ramified ring defined by an Eisenstein polynomial.
    pub fn eisenstein(field: &Gf, g: &[i64], k: u32) -> Result<Self> {
        let p = field.p() as i64;
        let e = g.len() - 1;
        let ok = e >= 1 && g[..e].iter().all(|c| c.rem_euclid(p) == 0) && g[0].rem_euclid(p * p) != 0;
        if !ok {
            return Err(Error::InvalidParameter("polynomial is not Eisenstein".into()));
        }
        Self::build(field, g.to_vec(), k, Ramification::Eisenstein, 1)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// `K`: elements are known modulo `p^K`.
    pub fn kprec(&self) -> u32 {
        self.0.k
    }

    pub fn degree(&self) -> usize {
        self.0.g.len() - 1
    }

    pub fn residue_degree(&self) -> u32 {
        self.0.residue_degree
    }

    /// Cardinality of the residue field.
    pub fn q(&self) -> u64 {
        (self.0.p as u64).pow(self.0.residue_degree)
    }

    /// Ramification index.
    pub fn e(&self) -> u32 {
        match self.0.kind {
            Ramification::Eisenstein => self.degree() as u32,
            Ramification::Unramified { .. } => 1,
        }
    }

    pub fn field(&self) -> &Gf {
        &self.0.field
    }

    pub fn kind(&self) -> &Ramification {
        &self.0.kind
    }

    fn reduce_int(&self, v: &BigInt) -> BigInt {
        v.mod_floor(&self.0.pk)
    }

    fn reduce_poly(&self, mut c: Vec<BigInt>) -> OfElem {
        let d = self.degree();
        for i in (d..c.len()).rev() {
            let top = std::mem::take(&mut c[i]);
            if top.is_zero() {
                continue;
            }
            for j in 0..d {
                let t = &top * &self.0.g[j];
                c[i - d + j] -= t;
            }
        }
        c.truncate(d);
        c.resize(d, BigInt::zero());
        OfElem(c.iter().map(|v| self.reduce_int(v)).collect())
    }

    pub fn from_int(&self, v: i64) -> OfElem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> OfElem {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[0] = self.reduce_int(v);
        OfElem(c)
    }

    /// The element `sum c_i x^i`.
    pub fn from_coeffs(&self, c: &[i64]) -> OfElem {
        self.reduce_poly(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(&self) -> OfElem {
        self.from_int(0)
    }

    pub fn one(&self) -> OfElem {
        self.from_int(1)
    }

    pub fn x(&self) -> OfElem {
        if self.degree() == 1 {
            let mut c = vec![BigInt::zero(); 2];
            c[1] = BigInt::one();
            return self.reduce_poly(c);
        }
        self.from_coeffs(&[0, 1])
    }

    pub fn pi(&self) -> OfElem {
        match self.0.kind {
            Ramification::Unramified { .. } => self.from_int(self.0.p as i64),
            Ramification::Eisenstein => self.x(),
        }
    }

    pub fn add(&self, a: &OfElem, b: &OfElem) -> OfElem {
        OfElem(a.0.iter().zip(&b.0).map(|(x, y)| self.reduce_int(&(x + y))).collect())
    }

    pub fn sub(&self, a: &OfElem, b: &OfElem) -> OfElem {
        OfElem(a.0.iter().zip(&b.0).map(|(x, y)| self.reduce_int(&(x - y))).collect())
    }

    pub fn neg(&self, a: &OfElem) -> OfElem {
        OfElem(a.0.iter().map(|x| self.reduce_int(&-x)).collect())
    }

    pub fn mul(&self, a: &OfElem, b: &OfElem) -> OfElem {
        let d = self.degree();
        if d == 1 {
            return OfElem(vec![self.reduce_int(&(&a.0[0] * &b.0[0]))]);
        }
        let mut c = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce_poly(c)
    }

    pub fn mul_int(&self, a: &OfElem, n: &BigInt) -> OfElem {
        OfElem(a.0.iter().map(|x| self.reduce_int(&(x * n))).collect())
    }

    pub fn pow(&self, a: &OfElem, e: u64) -> OfElem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn is_zero(&self, a: &OfElem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    /// The image in the residue field, embedded in the ambient finite field.
    pub fn residue(&self, a: &OfElem) -> Elem {
        let k = &self.0.field;
        let p = BigInt::from(self.0.p);
        let digit = |c: &BigInt| c.mod_floor(&p).to_i64().expect("small");
        match &self.0.kind {
            Ramification::Eisenstein => k.from_int(digit(&a.0[0])),
            Ramification::Unramified { residue_root } => {
                a.0.iter().rev().fold(Elem::ZERO, |acc, c| k.add(k.mul(acc, *residue_root), k.from_int(digit(c))))
            }
        }
    }

    pub fn is_unit(&self, a: &OfElem) -> bool {
        !self.residue(a).is_zero()
    }

    /// Exact division by `pi`; the top `p`-adic digit of the result is lost.
    pub fn div_pi(&self, a: &OfElem) -> Result<OfElem> {
        let p = BigInt::from(self.0.p);
        let divisible = |v: &[BigInt]| v.iter().all(|c| c.mod_floor(&p).is_zero());
        match self.0.kind {
            Ramification::Unramified { .. } => {
                if !divisible(&a.0) {
                    return Err(Error::Precision("element is not divisible by pi".into()));
                }
                Ok(OfElem(a.0.iter().map(|c| c / &p).collect()))
            }
            Ramification::Eisenstein => {
                // x^{-1} = -Q(x) / g_0 with g_0 = p h_0
                let q = OfElem(self.0.x_cofactor.clone());
                let aq = self.mul(a, &q);
                if !divisible(&aq.0) {
                    return Err(Error::Precision("element is not divisible by pi".into()));
                }
                let shifted = OfElem(aq.0.iter().map(|c| c / &p).collect());
                let minus_inv = self.reduce_int(&-&self.0.unit_inv);
                Ok(self.mul_int(&shifted, &minus_inv))
            }
        }
    }

    /// Inverse of a unit by Newton iteration from `a^{q-2}`.
    pub fn inv(&self, a: &OfElem) -> Result<OfElem> {
        if !self.is_unit(a) {
            return Err(Error::DivisionByZero);
        }
        let mut y = self.pow(a, self.q() - 2);
        let two = self.from_int(2);
        let mut correct = 1u32;
        while correct < self.0.k * self.e() {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            correct *= 2;
        }
        debug_assert_eq!(self.mul(a, &y), self.one());
        Ok(y)
    }

    /// `1 / (1 - z)` for topologically nilpotent `z`.
    pub fn inv_one_minus(&self, z: &OfElem) -> Result<OfElem> {
        if self.is_unit(z) {
            return Err(Error::InvalidParameter("argument must lie in the maximal ideal".into()));
        }
        let mut acc = self.one();
        let mut pow = z.clone();
        while !self.is_zero(&pow) {
            acc = self.add(&acc, &pow);
            pow = self.mul(&pow, z);
        }
        Ok(acc)
    }

    /// Teichmüller lift of the residue of `a`.
    pub fn teichmuller(&self, a: &OfElem) -> OfElem {
        let mut y = a.clone();
        let steps = self.0.k * self.e() + 1;
        for _ in 0..steps {
            y = self.pow(&y, self.q());
        }
        y
    }

    /// A lift of a residue-field element given as an element of the ambient field.
    pub fn lift_residue(&self, r: Elem) -> Result<OfElem> {
        let k = &self.0.field;
        if r.is_zero() {
            return Ok(self.zero());
        }
        match &self.0.kind {
            Ramification::Eisenstein => {
                let c = k.coords(r);
                if !k.in_subfield(r, 1)? {
                    return Err(Error::InvalidParameter("not in the residue field".into()));
                }
                Ok(self.from_int(c[0] as i64))
            }
            Ramification::Unramified { residue_root } => {
                let d = self.degree() as u32;
                // solve r = sum c_i root^i by search over F_p^d
                let total = (self.0.p as u64).pow(d);
                for idx in 0..total {
                    let mut v = idx;
                    let mut cs = Vec::with_capacity(d as usize);
                    for _ in 0..d {
                        cs.push((v % self.0.p as u64) as i64);
                        v /= self.0.p as u64;
                    }
                    let val =
                        cs.iter().rev().fold(Elem::ZERO, |acc, &c| k.add(k.mul(acc, *residue_root), k.from_int(c)));
                    if val == r {
                        return Ok(self.from_coeffs(&cs));
                    }
                }
                Err(Error::InvalidParameter("not in the residue field".into()))
            }
        }
    }

    /// `pi`-adic valuation, capped at `K e`.
    pub fn valuation(&self, a: &OfElem) -> u32 {
        let cap = self.0.k * self.e();
        let mut v = 0;
        let mut cur = a.clone();
        while v < cap && !self.is_zero(&cur) && !self.is_unit(&cur) {
            match self.div_pi(&cur) {
                Ok(next) => cur = next,
                Err(_) => break,
            }
            v += 1;
        }
        if self.is_zero(&cur) {
            cap
        } else {
            v
        }
    }

    /// A deterministic pseudo-random element built from a seed.
    pub fn element_from_seed(&self, seed: u64) -> OfElem {
        let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0xD1B5_4A32_D192_ED03;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let c: Vec<BigInt> = (0..self.degree())
            .map(|_| {
                let mut v = BigInt::zero();
                for _ in 0..=(self.0.k as usize * 5 / 64) {
                    v = (v << 64) + BigInt::from(next());
                }
                self.reduce_int(&v)
            })
            .collect();
        OfElem(c)
    }

    pub fn show(&self, a: &OfElem) -> String {
        let terms: Vec<String> =
            a.0.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| match i {
                    0 => c.to_string(),
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{i}"),
                })
                .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn modinv(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.abs().is_one() {
        return Err(Error::InvalidParameter("not invertible".into()));
    }
    Ok(e.x.mod_floor(m))
}
