//! Integer compositions indexing the basis of the descent algebra.
//!
//! The composition (c1,…,ck) stands for the convolution word
//! B_C = p_{c1} ∗ ⋯ ∗ p_{ck} of graded projections. The empty composition is
//! the unit. Compositions are ordered by (weight, length, parts); refining a
//! composition increases its length, so this order is refinement-compatible.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{CoreError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// Panics on zero parts.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "composition parts must be positive");
        Composition(parts)
    }

    pub fn single(n: u32) -> Self {
        Self::new(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation, the free product of basis words.
    pub fn concat(&self, other: &Self) -> Self {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// Proper partial sums {c1, c1+c2, …}, excluding the total weight: the
    /// descent set associated to the composition.
    pub fn partial_sums(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut acc = 0;
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            out.push(acc);
        }
        out
    }

    /// The composition of `weight` whose proper partial sums are exactly
    /// `set` (ascending).
    pub fn from_partial_sums(set: &[u32], weight: u32) -> Self {
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &s in set {
            parts.push(s - prev);
            prev = s;
        }
        parts.push(weight - prev);
        Composition(parts)
    }

    /// All compositions of `n`, in (length, lex) order within the weight.
    pub fn all_of_weight(n: u32) -> Vec<Composition> {
        if n == 0 {
            return vec![Composition::empty()];
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn rec(remaining: u32, stack: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if remaining == 0 {
                out.push(Composition(stack.clone()));
                return;
            }
            for part in 1..=remaining {
                stack.push(part);
                rec(remaining - part, stack, out);
                stack.pop();
            }
        }
        rec(n, &mut stack, &mut out);
        out.sort();
        out
    }

    /// Comma-joined parts, e.g. `1,2`.
    pub fn key(&self) -> String {
        self.0
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(key: &str) -> Result<Self> {
        let key = key.trim();
        if key.is_empty() {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        for piece in key.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| CoreError::Parse(format!("bad composition {key:?}")))?;
            if p == 0 {
                return Err(CoreError::Parse(format!("zero part in composition {key:?}")));
            }
            parts.push(p);
        }
        Ok(Composition(parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.weight(), self.0.len(), &self.0).cmp(&(other.weight(), other.0.len(), &other.0))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}
