//! Étale Lubin-Tate `(phi, Gamma)`-modules over truncated Laurent series.
//!
//! A module of rank `n` is stored by its `phi`-matrix `A` (column `j` holds
//! the coordinates of `phi(e_j)`) and the parameters needed to evaluate the
//! diagonal `Gamma`-matrices `G(u)` at units `u` of `o_F / p^K`. On
//! coordinate vectors, `phi` acts as `x -> A phi(x)` and `u` acts as
//! `x -> G(u) u(x)`, where `u(f)(t) = f([u](t) mod pi)`.

use itertools::Itertools;
use serde::Serialize;

use crate::arith::{binomial_power, fbar, omega, Elem, Gf, OfElem, OfRing, PadicExp, TruncLaurent};
use crate::characters::is_q_primitive;
use crate::context::Ctx;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<TruncLaurent>>;

/// Default target precision of the checks.
pub const DEFAULT_TPREC: i64 = 40;

#[derive(Clone, Debug, Serialize)]
pub struct PhiGammaModule {
    pub q: u32,
    pub n: u32,
    pub h: u64,
    pub s: i64,
    pub lambda: Elem,
    /// Target precision: identities are checked modulo `t^tprec`.
    pub tprec: i64,
    /// Precision to which the `Gamma`-matrices are computed.
    pub work: i64,
    pub a: Matrix,
    #[serde(skip)]
    ring: OfRing,
    #[serde(skip)]
    field: Gf,
}

/// The evaluation of `Gamma` at one unit.
#[derive(Clone, Debug)]
pub struct GammaEval {
    pub omega: Elem,
    pub fbar: TruncLaurent,
    /// `[u](t) mod pi`.
    pub lt: TruncLaurent,
    pub diag: Vec<TruncLaurent>,
}

impl GammaEval {
    pub fn matrix(&self) -> Matrix {
        let k = self.fbar.field();
        let n = self.diag.len();
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { self.diag[i].clone() } else { TruncLaurent::zero(k) }).collect())
            .collect()
    }
}

fn h_mod(q: u32, h: u64) -> i64 {
    h as i64 * (q as i64 - 1)
}

/// Number of base-`p` digits needed so that `p^digits >= prec`.
pub fn digits_for(p: u32, prec: i64) -> u32 {
    let mut d = 0;
    let mut m = 1i64;
    while m < prec {
        m *= p as i64;
        d += 1;
    }
    d.max(1)
}

/// The `phi`-matrix: `A_{j+1,j} = lambda`, `A_{0,n-1} = (-1)^{n-1} t^{-h(q-1)} lambda`.
pub fn phi_matrix(field: &Gf, q: u32, h: u64, n: u32, lambda: Elem) -> Matrix {
    let n = n as usize;
    let mut a = vec![vec![TruncLaurent::zero(field); n]; n];
    for j in 0..n - 1 {
        a[j + 1][j] = TruncLaurent::constant(field, lambda);
    }
    let sign = if n % 2 == 1 { lambda } else { field.neg(lambda) };
    a[0][n - 1] = TruncLaurent::monomial(field, sign, -h_mod(q, h));
    a
}

fn check_params(ctx: &Ctx, h: u64, n: u32, lambda: Elem) -> Result<()> {
    let q = ctx.q();
    if n == 0 || n > 3 {
        return Err(Error::InvalidParameter(format!("rank n = {n} outside 1..=3")));
    }
    if n == 1 {
        if h >= q as u64 - 1 {
            return Err(Error::InvalidParameter(format!("h = {h} outside 0..{}", q - 1)));
        }
    } else if !is_q_primitive(q, h, n)? {
        return Err(Error::InvalidParameter(format!("h = {h} is not q-primitive at level {n}")));
    }
    let k = ctx.field();
    if lambda.is_zero() || !ctx.in_k(k.pow(lambda, n as i64)?) {
        return Err(Error::InvalidParameter("lambda^n must lie in k^x".into()));
    }
    Ok(())
}

/// The rank-`n` module attached to `omega_{nf}^h`, twisted by `omega_f^s mu_lambda`,
/// with identities tracked to `t^tprec`.
///
/// The ring `o_F / p^K` is the unramified ring of degree `f`; `K` defaults to
/// the smallest value the `Gamma`-matrices need.
pub fn build_irreducible_module(
    ctx: &Ctx,
    h: u64,
    n: u32,
    s: i64,
    lambda: Elem,
    tprec: i64,
    kprec: Option<u32>,
) -> Result<PhiGammaModule> {
    check_params(ctx, h, n, lambda)?;
    if tprec < 1 {
        return Err(Error::Precision(format!("t-precision {tprec} must be positive")));
    }
    let q = ctx.q();
    let work = tprec + h_mod(q, h);
    let need = (work + 2) as u32;
    let k = kprec.unwrap_or(need);
    if k < need {
        return Err(Error::Precision(format!("K = {k} but t-precision {tprec} at h = {h} needs K >= {need}")));
    }
    let ring = OfRing::unramified(ctx.field(), ctx.f(), k)?;
    let field = ctx.field().clone();
    let a = phi_matrix(&field, q, h, n, lambda);
    Ok(PhiGammaModule { q, n, h, s, lambda, tprec, work, a, ring, field })
}

impl PhiGammaModule {
    pub fn ring(&self) -> &OfRing {
        &self.ring
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    /// `h q^j (q-1) / (q^n - 1)` in `Z_p`, to `digits` digits.
    pub fn exponent(&self, j: u32, digits: u32) -> Result<PadicExp> {
        let q = self.q as i128;
        let num = self.h as i128 * q.pow(j) * (q - 1);
        PadicExp::from_ratio(num, q.pow(self.n) - 1, self.ring.p(), digits)
    }

    /// `G(u)` with exponents reduced to `digits` digits and series known to `t^prec`.
    pub fn gamma_with(&self, u: &OfElem, digits: u32, prec: i64) -> Result<GammaEval> {
        if !self.ring.is_unit(u) {
            return Err(Error::InvalidParameter("Gamma is evaluated at units".into()));
        }
        let k = &self.field;
        let fb = fbar(&self.ring, u, prec as usize)?;
        let w = omega(&self.ring, u);
        let lt = fb.inv()?.scale(w).shift(1);
        let ws = k.pow(w, self.s)?;
        let diag = (0..self.n)
            .map(|j| Ok(binomial_power(&fb, &self.exponent(j, digits)?)?.scale(ws)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GammaEval { omega: w, fbar: fb, lt, diag })
    }

    pub fn gamma(&self, u: &OfElem) -> Result<GammaEval> {
        self.gamma_with(u, digits_for(self.ring.p(), self.work), self.work)
    }

    /// Multiplies `A` by `lambda` and `G(u)` by `omega(u)^s`.
    pub fn tensor_with_character(&self, s: i64, lambda: Elem) -> Result<Self> {
        let k = &self.field;
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("lambda must be a unit".into()));
        }
        let mut out = self.clone();
        out.s += s;
        out.lambda = k.mul(self.lambda, lambda);
        out.a = self.a.iter().map(|row| row.iter().map(|x| x.scale(lambda)).collect()).collect();
        Ok(out)
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = a[0][0].field().clone();
    (0..n)
        .map(|i| {
            (0..n).map(|j| (0..n).fold(TruncLaurent::zero(&k), |acc, l| acc.add(&a[i][l].mul(&b[l][j])))).collect()
        })
        .collect()
}

fn mat_map<F: Fn(&TruncLaurent) -> Result<TruncLaurent>>(a: &Matrix, f: F) -> Result<Matrix> {
    a.iter().map(|row| row.iter().map(&f).collect()).collect()
}

fn perm_sign(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

pub fn det(a: &Matrix) -> TruncLaurent {
    let n = a.len();
    let k = a[0][0].field().clone();
    let mut acc = TruncLaurent::zero(&k);
    for p in (0..n).permutations(n) {
        let term = (0..n).fold(TruncLaurent::one(&k), |t, i| t.mul(&a[i][p[i]]));
        acc = if perm_sign(&p) { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Inverse by the adjugate.
pub fn mat_inv(a: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let d = det(a).inv()?;
    if n == 1 {
        return Ok(vec![vec![d]]);
    }
    let minor = |r: usize, c: usize| -> Matrix {
        (0..n).filter(|&i| i != r).map(|i| (0..n).filter(|&j| j != c).map(|j| a[i][j].clone()).collect()).collect()
    };
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = det(&minor(j, i)).mul(&d);
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        c.neg()
                    }
                })
                .collect()
        })
        .collect())
}

/// Lowest degree at which two matrices differ below `t^n`; an error if an
/// entry is not known that far.
fn mat_residual(a: &Matrix, b: &Matrix, n: i64) -> Result<Option<i64>> {
    let mut worst: Option<i64> = None;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            if !x.eq_mod(y, n)? {
                let d = x.first_difference(y).expect("entries differ");
                worst = Some(worst.map_or(d, |w| w.min(d)));
            }
        }
    }
    Ok(worst)
}

/// Sample units: Teichmüller lifts of the residue generator and of `-1`,
/// `1 + pi`, `1 + pi^2`, then seeded pseudo-random units.
pub fn sample_units(ring: &OfRing, count: usize, seed: u64) -> Result<Vec<OfElem>> {
    let k = ring.field();
    let zeta = k.subfield_gen(ring.residue_degree())?;
    let mut out = vec![
        ring.teichmuller(&ring.lift_residue(zeta)?),
        ring.teichmuller(&ring.from_int(-1)),
        ring.add(&ring.one(), &ring.pi()),
        ring.add(&ring.one(), &ring.mul(&ring.pi(), &ring.pi())),
    ];
    let mut s = seed;
    while out.len() < count {
        let u = ring.element_from_seed(s);
        s += 1;
        if ring.is_unit(&u) {
            out.push(u);
        }
    }
    out.truncate(count);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SemilinearityReport {
    pub units: usize,
    pub tprec: i64,
    pub cocycle_ok: bool,
    pub commutation_ok: bool,
    pub fbar_in_fq: bool,
    /// Lowest degree of a nonzero residual, over all failing checks.
    pub residual_degree: Option<i64>,
}

impl SemilinearityReport {
    pub fn ok(&self) -> bool {
        self.cocycle_ok && self.commutation_ok && self.fbar_in_fq
    }
}

/// Cocycle `G(uv) = G(u) u(G(v))` over all ordered pairs and commutation
/// `G(u) u(A) = A phi(G(u))` for every unit, modulo `t^tprec`.
pub fn check_semilinearity(d: &PhiGammaModule, units: &[OfElem]) -> Result<SemilinearityReport> {
    let ring = &d.ring;
    let f = ring.residue_degree();
    let evals = units.iter().map(|u| d.gamma(u)).collect::<Result<Vec<_>>>()?;
    let mut residual: Option<i64> = None;
    let mut note = |r: Option<i64>| {
        if let Some(x) = r {
            residual = Some(residual.map_or(x, |w: i64| w.min(x)));
        }
        r.is_none()
    };
    let mut fbar_in_fq = true;
    let mut commutation_ok = true;
    for g in &evals {
        fbar_in_fq &= g.fbar.in_subfield(f)?;
        let ua = mat_map(&d.a, |x| x.compose(&g.lt))?;
        let lhs = mat_mul(&g.matrix(), &ua);
        let rhs = mat_mul(&d.a, &mat_map(&g.matrix(), |x| Ok(x.phi(d.q)))?);
        commutation_ok &= note(mat_residual(&lhs, &rhs, d.tprec)?);
    }
    let mut cocycle_ok = true;
    for (i, u) in units.iter().enumerate() {
        for (j, v) in units.iter().enumerate() {
            let uv = d.gamma(&ring.mul(u, v))?;
            let gu = &evals[i];
            let ugv = mat_map(&evals[j].matrix(), |x| x.compose(&gu.lt))?;
            let rhs = mat_mul(&gu.matrix(), &ugv);
            cocycle_ok &= note(mat_residual(&uv.matrix(), &rhs, d.tprec)?);
        }
    }
    Ok(SemilinearityReport {
        units: units.len(),
        tprec: d.tprec,
        cocycle_ok,
        commutation_ok,
        fbar_in_fq,
        residual_degree: residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExteriorReport {
    /// `t^{h(q-1)} det A = lambda^n`.
    pub phi_ok: bool,
    /// `([u](t)/t)^h det G(u) = omega(u)^{h+ns}` at every sampled unit.
    pub gamma_ok: bool,
}

/// The actions of `phi` and `Gamma` on `t^h e_0 ^ ... ^ e_{n-1}`.
pub fn exterior_det_check(d: &PhiGammaModule, units: &[OfElem]) -> Result<ExteriorReport> {
    let k = &d.field;
    let lam_n = k.pow(d.lambda, d.n as i64)?;
    let phi_scalar = det(&d.a).shift(h_mod(d.q, d.h));
    let phi_ok = phi_scalar.eq_mod(&TruncLaurent::constant(k, lam_n), d.tprec)?;
    let mut gamma_ok = true;
    for u in units {
        let g = d.gamma(u)?;
        let ratio = g.lt.shift(-1).pow(d.h as i64)?;
        let scalar = g.diag.iter().fold(ratio, |acc, x| acc.mul(x));
        let expect = k.pow(g.omega, d.h as i64 + d.n as i64 * d.s)?;
        gamma_ok &= scalar.eq_mod(&TruncLaurent::constant(k, expect), d.tprec)?;
    }
    Ok(ExteriorReport { phi_ok, gamma_ok })
}

/// `sum a_j t^j -> sum a_{qj} t^j`.
pub fn psi(f: &TruncLaurent, q: u32) -> TruncLaurent {
    f.psi(q)
}

/// `psi_D(x) = psi(A^{-1} x)` on coordinate vectors: the left inverse of
/// `phi_D` with `psi_D(phi(a) x) = a psi_D(x)`.
pub fn psi_module(a: &Matrix, q: u32, x: &[TruncLaurent]) -> Result<Vec<TruncLaurent>> {
    let inv = mat_inv(a)?;
    let k = x[0].field().clone();
    Ok(inv
        .iter()
        .map(|row| row.iter().zip(x).fold(TruncLaurent::zero(&k), |acc, (m, v)| acc.add(&m.mul(v))).psi(q))
        .collect())
}

/// `D^sharp = k[[t]] f_0 + k[[t]] f_1` with `f_j = t^{h_j} g_j` inside the
/// rank-two module of `ind(omega_{2f}^h)` (`s = 0`, `lambda = 1`).
#[derive(Clone, Debug, Serialize)]
pub struct SharpLattice {
    pub q: u32,
    pub h: u32,
    pub k: (u32, u32, u32),
    pub hexp: (u32, u32),
    pub h2: u64,
    pub a: Matrix,
}

pub fn sharp_lattice(ctx: &Ctx, h: u32) -> Result<SharpLattice> {
    let q = ctx.q();
    if h == 0 || h >= q {
        return Err(Error::InvalidParameter(format!("h = {h} outside 1..={}", q - 1)));
    }
    let k = (h - 1, q - h, h - 1);
    let i0 = q - 1 - k.2;
    let i1 = q - 1 - k.1;
    let a = phi_matrix(ctx.field(), q, h as u64, 2, Elem::ONE);
    Ok(SharpLattice { q, h, k, hexp: (0, i1), h2: i0 as u64 + i1 as u64 * q as u64, a })
}

impl SharpLattice {
    fn exps(&self) -> [i64; 2] {
        [self.hexp.0 as i64, self.hexp.1 as i64]
    }

    fn field(&self) -> &Gf {
        self.a[0][0].field()
    }

    /// Coordinates of `t^shift f_j`.
    fn basis_vector(&self, j: usize, shift: i64) -> Vec<TruncLaurent> {
        let k = self.field();
        let e = self.exps();
        (0..2)
            .map(|i| if i == j { TruncLaurent::monomial(k, Elem::ONE, e[j] + shift) } else { TruncLaurent::zero(k) })
            .collect()
    }

    fn contains(&self, x: &[TruncLaurent]) -> bool {
        x.iter().zip(self.exps()).all(|(c, e)| c.valuation() >= e)
    }

    /// `psi_D(t^a f_j)` lies in the lattice for `j = 0, 1` and `0 <= a < 2q`.
    pub fn check_psi_stable(&self) -> Result<bool> {
        for j in 0..2 {
            for shift in 0..2 * self.q as i64 {
                if !self.contains(&psi_module(&self.a, self.q, &self.basis_vector(j, shift))?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `e'_i(x)`: the constant term of the `f_i`-coordinate.
    fn functional(&self, i: usize, x: &[TruncLaurent]) -> Result<Elem> {
        x[i].shift(-self.exps()[i]).coeff(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionDualReport {
    pub q: u32,
    pub h: u32,
    pub psi_stable: bool,
    /// `t^{k_1} phi(e'_0) = e'_1`.
    pub first: bool,
    /// `t^{k_0} phi(e'_1) = -e'_0`.
    pub second: bool,
}

/// Evaluates both relations on `t^a f_j`, `0 <= a < 2q`, with
/// `phi(l)(x) = l(psi_D(x))`.
pub fn torsion_dual_relations(lat: &SharpLattice) -> Result<TorsionDualReport> {
    let k = lat.field().clone();
    let psi_stable = lat.check_psi_stable()?;
    let twisted = |i: usize, kk: u32, x: &[TruncLaurent]| -> Result<Elem> {
        let moved: Vec<_> = x.iter().map(|c| c.shift(kk as i64)).collect();
        lat.functional(i, &psi_module(&lat.a, lat.q, &moved)?)
    };
    let mut first = psi_stable;
    let mut second = psi_stable;
    if psi_stable {
        for j in 0..2 {
            for shift in 0..2 * lat.q as i64 {
                let x = lat.basis_vector(j, shift);
                first &= twisted(0, lat.k.1, &x)? == lat.functional(1, &x)?;
                second &= twisted(1, lat.k.0, &x)? == k.neg(lat.functional(0, &x)?);
            }
        }
    }
    Ok(TorsionDualReport { q: lat.q, h: lat.h, psi_stable, first, second })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, f: u32) -> Ctx {
        Ctx::new(p, f, 2).unwrap()
    }

    fn mono(k: &Gf, c: i64, e: i64) -> TruncLaurent {
        TruncLaurent::monomial(k, k.from_int(c), e)
    }

    #[test]
    fn matrix_example() {
        let c = ctx(3, 1);
        let k = c.field();
        let d = build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 20, None).unwrap();
        let z = TruncLaurent::zero(k);
        let want = vec![vec![z.clone(), mono(k, -1, -2)], vec![mono(k, 1, 0), z]];
        assert_eq!(format!("{:?}", d.a), format!("{want:?}"));
        let l = k.gen();
        let t = d.tensor_with_character(0, l).unwrap();
        assert!(t.a[0][1].agrees(&mono(k, -1, -2).scale(l)));
        assert!(t.a[1][0].agrees(&TruncLaurent::constant(k, l)));
    }

    #[test]
    fn trivial_module() {
        let c = ctx(3, 1);
        let d = build_irreducible_module(&c, 0, 1, 0, Elem::ONE, 20, None).unwrap();
        assert!(d.a[0][0].agrees(&TruncLaurent::one(c.field())));
        let units = sample_units(d.ring(), 6, 1).unwrap();
        for u in &units {
            let g = d.gamma(u).unwrap();
            assert!(g.diag[0].agrees(&TruncLaurent::one(c.field())));
        }
        let r = check_semilinearity(&d, &units).unwrap();
        assert!(r.ok() && r.residual_degree.is_none());
        let e = exterior_det_check(&d, &units).unwrap();
        assert!(e.phi_ok && e.gamma_ok);
    }

    #[test]
    fn teichmuller_acts_trivially() {
        let c = ctx(3, 1);
        let d = build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 20, None).unwrap();
        let u = &sample_units(d.ring(), 4, 0).unwrap()[0];
        let g = d.gamma(u).unwrap();
        for x in &g.diag {
            assert!(x.agrees(&TruncLaurent::one(c.field())));
        }
    }

    #[test]
    fn structure_holds() {
        for (p, f, n, h) in [(3, 1, 2, 1), (3, 1, 3, 1), (5, 1, 2, 3), (3, 2, 2, 1), (5, 1, 1, 2)] {
            let c = ctx(p, f);
            for (s, l) in [(0, Elem::ONE), (1, c.k_units()[2])] {
                let d = build_irreducible_module(&c, h, n, s, l, 40, None).unwrap();
                let units = sample_units(d.ring(), 6, 7).unwrap();
                let r = check_semilinearity(&d, &units).unwrap();
                assert!(r.ok(), "{p} {f} {n} {h}: {r:?}");
                let e = exterior_det_check(&d, &units).unwrap();
                assert!(e.phi_ok && e.gamma_ok, "{p} {f} {n} {h}");
            }
        }
    }

    #[test]
    fn corrupted_matrix_is_caught() {
        let c = ctx(3, 1);
        let k = c.field();
        let mut d = build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 40, None).unwrap();
        d.a[1][0] = d.a[1][0].add(&mono(k, 1, 5));
        let units = sample_units(d.ring(), 6, 3).unwrap();
        let r = check_semilinearity(&d, &units).unwrap();
        assert!(!r.commutation_ok);
        assert!(r.residual_degree.is_some());
        let mut d = build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 40, None).unwrap();
        d.a[0][1] = d.a[0][1].neg();
        assert!(!exterior_det_check(&d, &units).unwrap().phi_ok);
    }

    #[test]
    fn twisting() {
        let c = ctx(5, 1);
        let k = c.field();
        let base = build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 20, None).unwrap();
        let same = base.tensor_with_character(0, Elem::ONE).unwrap();
        assert_eq!(format!("{:?}", same.a), format!("{:?}", base.a));
        let (l1, l2) = (k.from_log(3), k.from_log(10));
        let twice = base.tensor_with_character(1, l1).unwrap().tensor_with_character(2, l2).unwrap();
        let once = base.tensor_with_character(3, k.mul(l1, l2)).unwrap();
        let direct = build_irreducible_module(&c, 1, 2, 3, k.mul(l1, l2), 20, None).unwrap();
        assert_eq!(format!("{:?}", twice.a), format!("{:?}", direct.a));
        assert_eq!(format!("{:?}", once.a), format!("{:?}", direct.a));
        let u = &sample_units(base.ring(), 6, 2).unwrap()[5];
        let (g1, g2) = (twice.gamma(u).unwrap(), direct.gamma(u).unwrap());
        for (x, y) in g1.diag.iter().zip(&g2.diag) {
            assert!(x.agrees(y));
        }
    }

    #[test]
    fn exponent_reduction() {
        let c = ctx(3, 1);
        let d = build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 30, None).unwrap();
        let u = &sample_units(d.ring(), 6, 5).unwrap()[4];
        let a = d.gamma_with(u, 3, 27).unwrap();
        let b = d.gamma_with(u, 4, 27).unwrap();
        for (x, y) in a.diag.iter().zip(&b.diag) {
            assert!(x.eq_mod(y, 27).unwrap());
        }
        assert!(d.gamma_with(u, 2, 27).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        let c = ctx(3, 1);
        assert!(build_irreducible_module(&c, 4, 2, 0, Elem::ONE, 20, None).is_err());
        assert!(build_irreducible_module(&c, 1, 2, 0, Elem::ZERO, 20, None).is_err());
        assert!(build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 20, Some(5)).is_err());
        assert!(build_irreducible_module(&c, 1, 4, 0, Elem::ONE, 20, None).is_err());
    }

    #[test]
    fn psi_examples() {
        let k = Gf::new(3, 1).unwrap();
        assert!(psi(&mono(&k, 1, 3), 3).agrees(&mono(&k, 1, 1)));
        assert!(psi(&mono(&k, 1, 1), 3).is_zero());
        let one_t = TruncLaurent::from_coeffs(&k, &[Elem::ONE, Elem::ONE], 30);
        let lhs = psi(&one_t.pow(3).unwrap().mul(&mono(&k, 1, 6)), 3);
        assert!(lhs.agrees(&one_t.mul(&mono(&k, 1, 2))));
    }

    #[test]
    fn lattice_examples() {
        let c3 = ctx(3, 1);
        let l = sharp_lattice(&c3, 1).unwrap();
        assert_eq!(((l.k.0, l.k.1), l.hexp), ((0, 2), (0, 0)));
        let l = sharp_lattice(&c3, 2).unwrap();
        assert_eq!(((l.k.0, l.k.1), l.hexp, l.h2), ((1, 1), (0, 1), 4));
        for p in [3, 5] {
            let c = ctx(p, 1);
            for h in 1..p {
                let l = sharp_lattice(&c, h).unwrap();
                assert_eq!(l.h2, h as u64 * (p as u64 - 1));
                assert!(l.check_psi_stable().unwrap(), "q={p} h={h}");
            }
        }
    }

    #[test]
    fn displayed_exponent_is_not_stable() {
        let c = ctx(5, 1);
        for h in 1..5 {
            let mut l = sharp_lattice(&c, h).unwrap();
            l.hexp.1 = 2 * 5 - h - 1;
            assert!(!l.check_psi_stable().unwrap());
        }
    }

    #[test]
    fn torsion_report_is_uniform() {
        for p in [3, 5] {
            let c = ctx(p, 1);
            let reports: Vec<_> =
                (1..p).map(|h| torsion_dual_relations(&sharp_lattice(&c, h).unwrap()).unwrap()).collect();
            assert!(reports.iter().all(|r| r.psi_stable));
            assert!(reports.iter().all(|r| (r.first, r.second) == (reports[0].first, reports[0].second)));
        }
        let c = ctx(3, 1);
        let mut l = sharp_lattice(&c, 2).unwrap();
        l.a[0][1] = l.a[0][1].neg();
        let r = torsion_dual_relations(&l).unwrap();
        assert!(!(r.first && r.second));
    }

    #[test]
    fn fbar_lies_over_fq() {
        let c = ctx(3, 2);
        let d = build_irreducible_module(&c, 1, 2, 0, Elem::ONE, 20, None).unwrap();
        for u in sample_units(d.ring(), 6, 9).unwrap() {
            assert!(d.gamma(&u).unwrap().fbar.in_subfield(2).unwrap());
        }
    }
}
