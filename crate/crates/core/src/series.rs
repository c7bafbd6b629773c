//! Truncated power series in `h`, used for derivative provisioning.

use alloc::vec;
use alloc::vec::Vec;

use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Product truncated to `len` terms.
pub(crate) fn mul(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![ZERO; len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a^k` truncated to `len` terms.
pub(crate) fn pow(a: &[C64], k: usize, len: usize) -> Vec<C64> {
    let mut out = vec![ZERO; len];
    if len > 0 {
        out[0] = C64::new(1.0, 0.0);
    }
    for _ in 0..k {
        out = mul(&out, a, len);
    }
    out
}

/// `a / b` truncated to `len` terms; `b[0]` must be nonzero.
pub(crate) fn div(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut q = vec![ZERO; len];
    for k in 0..len {
        let mut s = a.get(k).copied().unwrap_or(ZERO);
        for j in 1..=k {
            if let Some(bj) = b.get(j) {
                s -= bj * q[k - j];
            }
        }
        q[k] = s / b[0];
    }
    q
}
