//! Power series over `o_F / p^K` and the Lubin-Tate endomorphisms `[a](t)`
//! of the formal group with Frobenius series `phi(t) = pi t + t^q`.

use num_bigint::BigInt;
use num_traits::One;

use super::gf::Elem;
use super::laurent::TruncLaurent;
use super::ofring::{OfElem, OfRing};
use crate::error::{Error, Result};

/// A power series `sum_{i<N} c_i t^i` over `o_F`, known modulo `(p^kprec, t^N)`.
#[derive(Clone, Debug)]
pub struct OSeries {
    ring: OfRing,
    coeffs: Vec<OfElem>,
    kprec: u32,
}

impl OSeries {
    pub fn new(ring: &OfRing, coeffs: Vec<OfElem>, kprec: u32) -> Self {
        OSeries { ring: ring.clone(), coeffs, kprec: kprec.min(ring.kprec()) }
    }

    pub fn ring(&self) -> &OfRing {
        &self.ring
    }

    /// The t-precision `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn kprec(&self) -> u32 {
        self.kprec
    }

    pub fn coeffs(&self) -> &[OfElem] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        let c = (0..n).map(|i| self.ring.add(&self.coeffs[i], &o.coeffs[i])).collect();
        Self::new(&self.ring, c, self.kprec.min(o.kprec))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        Self::new(&self.ring, mul_trunc(&self.ring, &self.coeffs, &o.coeffs, n), self.kprec.min(o.kprec))
    }

    /// `self(g)` for `g` without constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if g.coeffs.first().is_some_and(|c| !self.ring.is_zero(c)) {
            return Err(Error::CompositionValuation);
        }
        let n = self.len().min(g.len());
        let mut h: Vec<OfElem> = vec![self.ring.zero(); n];
        for c in self.coeffs[..n].iter().rev() {
            h = mul_trunc(&self.ring, &h, &g.coeffs, n);
            h[0] = self.ring.add(&h[0], c);
        }
        Ok(Self::new(&self.ring, h, self.kprec.min(g.kprec)))
    }

    /// Reduction modulo `pi`, a series over the residue field.
    pub fn reduce_mod_pi(&self) -> Result<TruncLaurent> {
        if self.kprec == 0 {
            return Err(Error::Precision("no p-adic digits left".into()));
        }
        let c: Vec<Elem> = self.coeffs.iter().map(|a| self.ring.residue(a)).collect();
        Ok(TruncLaurent::from_coeffs(self.ring.field(), &c, self.len() as i64))
    }
}

fn mul_trunc(r: &OfRing, a: &[OfElem], b: &[OfElem], n: usize) -> Vec<OfElem> {
    let mut out = vec![r.zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if r.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if r.is_zero(y) {
                continue;
            }
            out[i + j] = r.add(&out[i + j], &r.mul(x, y));
        }
    }
    out
}

fn pow_trunc(r: &OfRing, a: &[OfElem], e: u64, n: usize) -> Vec<OfElem> {
    let mut result = vec![r.zero(); n];
    result[0] = r.one();
    let mut base = a[..n.min(a.len())].to_vec();
    base.resize(n, r.zero());
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_trunc(r, &result, &base, n);
        }
        e >>= 1;
        if e > 0 {
            base = mul_trunc(r, &base, &base, n);
        }
    }
    result
}

/// Runs the degree-by-degree recursion for `n` coefficients and returns the
/// series together with the number of p-adic digits still known.
fn lt_recursion(ring: &OfRing, a: &OfElem, n: usize) -> Result<OSeries> {
    if !(ring.is_unit(a) || *a == ring.pi()) {
        return Err(Error::InvalidParameter("[a] needs a unit or a = pi".into()));
    }
    let q = ring.q();
    let qm1 = (q - 1) as usize;
    let mut c: Vec<OfElem> = vec![ring.zero(); n.max(2)];
    c[1] = a.clone();
    c.truncate(n);
    if n <= 2 {
        return Ok(OSeries::new(ring, c, ring.kprec()));
    }
    let pi = ring.pi();
    let mut pi_pow = vec![ring.one()];
    for i in 1..=n {
        pi_pow.push(ring.mul(&pi_pow[i - 1], &pi));
    }
    let binom = pascal(n);
    let mut kprec = ring.kprec();
    let mut qth: Vec<OfElem> = Vec::new();
    let mut valid_to = 0usize;
    for r in 1..n - 1 {
        let d = r + 1;
        if d > valid_to || qth.is_empty() {
            let upto = (r + qm1).min(n - 1);
            qth = pow_trunc(ring, &c[..=r], q, upto + 1);
            valid_to = upto;
        }
        // coefficient of t^{r+1} in F_r(pi t + t^q)
        let mut e = ring.zero();
        for i in 1..=r {
            let rest = d - i;
            if rest % qm1 != 0 {
                continue;
            }
            let j = rest / qm1;
            if j > i {
                continue;
            }
            let term = ring.mul_int(&ring.mul(&c[i], &pi_pow[i - j]), &binom[i][j]);
            e = ring.add(&e, &term);
        }
        e = ring.sub(&e, &qth[d]);
        if kprec <= 1 {
            return Err(Error::Precision(format!("p-adic headroom exhausted at degree {d}")));
        }
        let e_div = ring.div_pi(&e)?;
        let corr = ring.inv_one_minus(&pi_pow[r])?;
        c[d] = ring.mul(&e_div, &corr);
        kprec -= 1;
    }
    Ok(OSeries::new(ring, c, kprec))
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// The endomorphism `[a](t) = a t + O(t^2)` commuting with `phi`, modulo `t^n`.
///
/// Requires `K >= n + 2`.
pub fn lt_mult_series(ring: &OfRing, a: &OfElem, n: usize) -> Result<OSeries> {
    if (ring.kprec() as usize) < n + 2 {
        return Err(Error::Precision(format!("K = {} but t-precision {n} needs K >= {}", ring.kprec(), n + 2)));
    }
    lt_recursion(ring, a, n)
}

/// `[a](t) mod pi` to precision `t^n`.
pub fn lt_mod_pi(ring: &OfRing, a: &OfElem, n: usize) -> Result<TruncLaurent> {
    lt_mult_series(ring, a, n)?.reduce_mod_pi()
}

/// `fbar_u(t) = omega(u) t / ([u](t) mod pi)`, an element of `1 + t F_q[[t]]`
/// known modulo `t^n`. Requires `K >= n + 2`.
pub fn fbar(ring: &OfRing, u: &OfElem, n: usize) -> Result<TruncLaurent> {
    if (ring.kprec() as usize) < n + 2 {
        return Err(Error::Precision(format!("K = {} but t-precision {n} needs K >= {}", ring.kprec(), n + 2)));
    }
    if !ring.is_unit(u) {
        return Err(Error::InvalidParameter("fbar needs a unit".into()));
    }
    let series = lt_recursion(ring, u, n + 1)?.reduce_mod_pi()?;
    let over_t = series.shift(-1);
    let w = ring.residue(u);
    Ok(over_t.inv()?.scale(w))
}

/// `omega(u)`: the residue of `u` under the fixed embedding into the ambient field.
pub fn omega(ring: &OfRing, u: &OfElem) -> Elem {
    ring.residue(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gf::Gf;
    use crate::arith::laurent::INF;

    fn q3(k: u32) -> OfRing {
        OfRing::unramified(&Gf::new(3, 1).unwrap(), 1, k).unwrap()
    }

    #[test]
    fn identity_and_pi() {
        let r = q3(14);
        let one = lt_mod_pi(&r, &r.one(), 12).unwrap();
        assert!(one.agrees(&TruncLaurent::monomial(r.field(), Elem::ONE, 1)));
        let s = lt_mult_series(&r, &r.one(), 12).unwrap();
        for (i, c) in s.coeffs().iter().enumerate() {
            assert_eq!(*c, if i == 1 { r.one() } else { r.zero() });
        }
        let pi = lt_mod_pi(&r, &r.pi(), 12).unwrap();
        assert!(pi.agrees(&TruncLaurent::monomial(r.field(), Elem::ONE, 3)));
    }

    #[test]
    fn two_times_two_is_four() {
        let r = q3(11);
        let two = lt_mod_pi(&r, &r.from_int(2), 9).unwrap();
        let four = lt_mod_pi(&r, &r.from_int(4), 9).unwrap();
        // brute-force composition of the truncated polynomials
        let k = r.field();
        let mut acc = TruncLaurent::zero_to(k, 9);
        let mut power = TruncLaurent::one(k);
        for i in 0..9 {
            acc = acc.add(&power.scale(two.coeff(i).unwrap()));
            power = power.mul(&two).truncate(9);
        }
        assert!(acc.eq_mod(&four, 9).unwrap());
        assert!(two.compose(&two).unwrap().eq_mod(&four, 9).unwrap());
    }

    #[test]
    fn teichmuller_has_trivial_fbar() {
        let k = Gf::new(3, 2).unwrap();
        let r = OfRing::unramified(&k, 2, 22).unwrap();
        let t = r.teichmuller(&r.x());
        let f = fbar(&r, &t, 20).unwrap();
        assert!(f.eq_mod(&TruncLaurent::one(&k), 20).unwrap());
        let f1 = fbar(&r, &r.one(), 20).unwrap();
        assert!(f1.eq_mod(&TruncLaurent::one(&k), 20).unwrap());
    }

    #[test]
    fn fbar_cocycle() {
        let r = q3(12);
        let n = 10;
        let u = r.from_int(4);
        let v = r.from_int(7);
        let uv = r.mul(&u, &v);
        let fu = fbar(&r, &u, n).unwrap();
        let fv = fbar(&r, &v, n).unwrap();
        let fuv = fbar(&r, &uv, n).unwrap();
        let sub = lt_mod_pi(&r, &u, n).unwrap();
        let rhs = fu.mul(&fv.compose(&sub).unwrap());
        assert!(fuv.eq_mod(&rhs, n as i64).unwrap());
        assert_eq!(fu.coeff(0).unwrap(), Elem::ONE);
        assert!(fu.in_subfield(1).unwrap());
    }

    #[test]
    fn headroom_enforced() {
        let r = q3(10);
        assert!(lt_mult_series(&r, &r.from_int(2), 9).is_err());
        assert!(lt_mult_series(&r, &r.from_int(3 * 2), 5).is_err());
        let ok = lt_mult_series(&r, &r.from_int(2), 8).unwrap();
        assert!(ok.kprec() >= 1);
        assert!(TruncLaurent::zero(r.field()).prec() == INF);
    }
}
