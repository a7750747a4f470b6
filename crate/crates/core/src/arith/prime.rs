use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `q = p^f` for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    p: u32,
    f: u32,
    q: u32,
}

impl PrimePower {
    pub fn new(p: u32, f: u32) -> Result<Self> {
        let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !prime || p == 2 {
            return Err(Error::InvalidParameter(format!("p = {p} must be an odd prime")));
        }
        if f == 0 {
            return Err(Error::InvalidParameter("f must be positive".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q < 1 << 16)
            .ok_or_else(|| Error::InvalidParameter(format!("q = {p}^{f} is too large")))?;
        Ok(PrimePower { p, f, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `N_q = {0, ..., q-2}`.
    pub fn n_q(&self) -> std::ops::Range<u32> {
        0..self.q - 1
    }

    pub fn is_even(&self, n: u32) -> bool {
        n % 2 == 0
    }

    /// `(q-1)/2`.
    pub fn half(&self) -> u32 {
        (self.q - 1) / 2
    }

    /// Reduces an exponent of a character of `F_q^x`.
    pub fn red(&self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64 - 1) as u32
    }

    /// Base-`p` digits of `r`, least significant first, `f` of them.
    pub fn digits(&self, r: u32) -> Vec<u32> {
        let mut r = r;
        (0..self.f)
            .map(|_| {
                let d = r % self.p;
                r /= self.p;
                d
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_classes_have_equal_size() {
        for (p, f) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
            let pp = PrimePower::new(p, f).unwrap();
            let even = pp.n_q().filter(|&n| pp.is_even(n)).count() as u32;
            assert_eq!(even, pp.half());
            assert_eq!(pp.q() - 1 - even, pp.half());
        }
    }

    #[test]
    fn rejects_even_and_composite() {
        assert!(PrimePower::new(2, 1).is_err());
        assert!(PrimePower::new(9, 1).is_err());
        assert!(PrimePower::new(3, 0).is_err());
    }
}
