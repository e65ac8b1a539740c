//! The four Zassenhaus series and the Dynkin elements.
//!
//! The left series solves Id = exp(Z₁) ∗ exp(Z₂) ∗ ⋯, the right series
//! Id = ⋯ ∗ exp(Z̃₂) ∗ exp(Z̃₁); the accelerated variants group degrees into
//! dyadic blocks [2^{m-1}, 2^m - 1], halving the number of factors. Each
//! element is obtained by the stripping recursion
//! Z_n = p_n ∘ log(exp(-Z_{n-1}) ∗ ⋯ ∗ exp(-Z₁) ∗ Id).

use crate::factorization::FactorizationMode;
use crate::rational::rat_int;

use super::element::{DescentElement, antipode_series, d_exp, d_log, identity_series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Factors multiply left-to-right in increasing degree.
    Left,
    /// Factors multiply right-to-left in increasing degree (tilde series).
    Right,
}

/// The Zassenhaus elements up to weight `cap`. Plain mode returns
/// [Z₁, …, Z_cap]; accelerated mode returns one element per dyadic block.
pub fn zassenhaus(cap: u32, side: Side, mode: FactorizationMode) -> Vec<DescentElement> {
    let mut stripped = identity_series(cap);
    let mut out = Vec::new();
    let mut start = 1u32;
    while start <= cap {
        let log = d_log(&stripped, cap);
        let block_end = match mode {
            FactorizationMode::Plain => start,
            FactorizationMode::Accelerated => (2 * start - 1).min(cap),
        };
        let mut block = DescentElement::zero();
        for n in start..=block_end {
            block = block.add(&log.weight_component(n));
        }
        let stripper = d_exp(&block.neg(), cap);
        stripped = match side {
            Side::Left => stripper.convolve_truncated(&stripped, cap),
            Side::Right => stripped.convolve_truncated(&stripper, cap),
        };
        out.push(block);
        start = match mode {
            FactorizationMode::Plain => start + 1,
            FactorizationMode::Accelerated => start * 2,
        };
    }
    out
}

/// Reassembles the product of exponentials, truncated at `cap`. With the
/// factors from [`zassenhaus`] this reproduces the identity series exactly.
pub fn exponential_product(factors: &[DescentElement], side: Side, cap: u32) -> DescentElement {
    let mut acc = DescentElement::unit();
    for f in factors {
        let e = d_exp(f, cap);
        acc = match side {
            Side::Left => acc.convolve_truncated(&e, cap),
            Side::Right => e.convolve_truncated(&acc, cap),
        };
    }
    acc
}

/// The Dynkin elements D_n = Σ_{i+j=n} S_i ∗ j·B_(j) for n = 1..=cap: the
/// convolution of the antipode with the grading operator.
pub fn dynkin(cap: u32) -> Vec<DescentElement> {
    let s = antipode_series(cap);
    let mut out = Vec::new();
    for n in 1..=cap {
        let mut d_n = DescentElement::zero();
        for i in 0..n {
            let j = n - i;
            let graded = DescentElement::projection(j).scale(&rat_int(j as i64));
            d_n = d_n.add(&s.weight_component(i).convolve(&graded));
        }
        out.push(d_n);
    }
    out
}
