use crate::arith::{Elem, Gf, PrimePower};
use crate::error::Result;

/// Parameters shared by every computation: `q = p^f`, the coefficient field
/// `k = F_{q^m}`, and the ambient field `F_{q^{2m}}` which contains `k`,
/// every square root of an element of `k`, and the roots of `z + 1/z = t`.
#[derive(Clone, Debug)]
pub struct Ctx {
    pp: PrimePower,
    m: u32,
    field: Gf,
}

impl Ctx {
    pub fn new(p: u32, f: u32, m: u32) -> Result<Self> {
        let pp = PrimePower::new(p, f)?;
        if m == 0 {
            return Err(crate::Error::InvalidParameter("m must be positive".into()));
        }
        let field = Gf::new(p, 2 * m * f)?;
        Ok(Ctx { pp, m, field })
    }

    pub fn pp(&self) -> &PrimePower {
        &self.pp
    }

    pub fn p(&self) -> u32 {
        self.pp.p()
    }

    pub fn f(&self) -> u32 {
        self.pp.f()
    }

    pub fn q(&self) -> u32 {
        self.pp.q()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    /// `(q-1)/2`.
    pub fn half(&self) -> u32 {
        self.pp.half()
    }

    /// Reduces a character exponent modulo `q-1`.
    pub fn red(&self, a: i64) -> u32 {
        self.pp.red(a)
    }

    /// The fixed generator `zeta` of `F_q^x`.
    pub fn zeta(&self) -> Elem {
        self.field.subfield_gen(self.f()).expect("F_q is a subfield")
    }

    pub fn zeta_pow(&self, a: i64) -> Elem {
        self.field.pow(self.zeta(), a).expect("zeta is a unit")
    }

    /// Exponent `a` with `zeta^a = x` for `x` in `F_q^x`.
    pub fn zeta_log(&self, x: Elem) -> Result<u32> {
        Ok(self.field.subfield_log(x, self.f())? as u32)
    }

    /// Degree of `k = F_{q^m}` over `F_p`.
    pub fn k_degree(&self) -> u32 {
        self.m * self.f()
    }

    pub fn in_k(&self, x: Elem) -> bool {
        self.field.in_subfield(x, self.k_degree()).expect("k is a subfield")
    }

    pub fn in_fq(&self, x: Elem) -> bool {
        self.field.in_subfield(x, self.f()).expect("F_q is a subfield")
    }

    /// Elements of `F_{q^d}` for `d | 2m`, zero first.
    pub fn elems_of_level(&self, d: u32) -> Result<Vec<Elem>> {
        self.field.subfield_elems(d * self.f())
    }

    pub fn k_elems(&self) -> Vec<Elem> {
        self.field.subfield_elems(self.k_degree()).expect("k is a subfield")
    }

    pub fn k_units(&self) -> Vec<Elem> {
        self.k_elems().into_iter().skip(1).collect()
    }

    pub fn fq_units(&self) -> Vec<Elem> {
        self.field.subfield_elems(self.f()).expect("F_q is a subfield").into_iter().skip(1).collect()
    }

    /// Units of the ambient field `F_{q^{2m}}`.
    pub fn ambient_units(&self) -> Vec<Elem> {
        self.field.elems().into_iter().skip(1).collect()
    }

    /// Exponent `e` of the canonical frame `(zeta^e, sqrt(z2))` of the
    /// component `d_n`: `n/2` for even `n`, and `(n+1)/2 + (q-1)/2` for odd
    /// `n`, so that the odd base fiber `n = q-2` has `e = 0`.
    pub fn frame_exponent(&self, n: u32) -> u32 {
        if n % 2 == 0 {
            n / 2
        } else {
            self.red((n.div_ceil(2) + self.half()) as i64)
        }
    }

    /// Whether `e` is a valid frame exponent for `d_n`.
    pub fn is_frame_exponent(&self, n: u32, e: u32) -> bool {
        let target = if n % 2 == 0 { n } else { n + 1 };
        self.red(2 * e as i64) == self.red(target as i64)
    }

    /// The component index `n` with `d_n = 1 + n`, reduced into `N_q`.
    pub fn norm_n(&self, n: i64) -> u32 {
        self.red(n)
    }

    pub fn show(&self, x: Elem) -> String {
        self.field.show(x)
    }
}
