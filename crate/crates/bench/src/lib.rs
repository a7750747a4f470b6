//! Fixtures shared by the benchmarks in `benches/`.

use gl2modp::arith::{Elem, Gf, TruncLaurent};

/// A dense series with `len` nonzero coefficients starting at `t^val`.
pub fn dense_series(k: &Gf, val: i64, len: usize) -> TruncLaurent {
    let coeffs: Vec<Elem> = (0..len as i64).map(|i| k.from_log(7 * i + 3)).collect();
    TruncLaurent::new(k, val, coeffs, val + len as i64)
}

/// `t + (higher terms)`, suitable as the inner argument of a composition.
pub fn tangent_series(k: &Gf, len: usize) -> TruncLaurent {
    let mut coeffs: Vec<Elem> = (0..len as i64).map(|i| k.from_log(5 * i + 1)).collect();
    coeffs[0] = Elem::ONE;
    TruncLaurent::new(k, 1, coeffs, 1 + len as i64)
}
