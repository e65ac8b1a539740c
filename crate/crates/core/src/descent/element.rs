//! The descent algebra in the composition basis.
//!
//! Convolution is the free product (concatenation of compositions). The
//! coproduct makes the graded projections a divided-power series:
//! δ(p_n) = Σ_{i≤n} p_i ⊗ p_{n-i}, extended as an algebra morphism.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::rational::{Rational, format_rational, inv_factorial, rat, rat_int};

use super::composition::Composition;

/// A graded rational combination of composition basis words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DescentElement {
    terms: BTreeMap<Composition, Rational>,
}

impl DescentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::basis(Composition::empty())
    }

    pub fn basis(c: Composition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c, rat_int(1));
        DescentElement { terms }
    }

    /// B_(n), the degree-n graded projection.
    pub fn projection(n: u32) -> Self {
        Self::basis(Composition::single(n))
    }

    pub fn from_terms<I: IntoIterator<Item = (Composition, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (c, r) in iter {
            out.add_term(c, r);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, c: &Composition) -> Rational {
        self.terms.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, c: Composition, r: Rational) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(c.clone()).or_insert_with(Rational::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, r) in &other.terms {
            out.add_term(c.clone(), r.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        DescentElement {
            terms: self
                .terms
                .iter()
                .map(|(c, r)| (c.clone(), -r.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        DescentElement {
            terms: self
                .terms
                .iter()
                .map(|(c, v)| (c.clone(), v.clone() * r.clone()))
                .collect(),
        }
    }

    /// Free (convolution) product: bilinear concatenation.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ca, ra) in &self.terms {
            for (cb, rb) in &other.terms {
                out.add_term(ca.concat(cb), ra.clone() * rb.clone());
            }
        }
        out
    }

    /// Convolution with everything above `cap` discarded.
    pub fn convolve_truncated(&self, other: &Self, cap: u32) -> Self {
        let mut out = Self::zero();
        for (ca, ra) in &self.terms {
            if ca.weight() > cap {
                continue;
            }
            for (cb, rb) in &other.terms {
                if ca.weight() + cb.weight() > cap {
                    continue;
                }
                out.add_term(ca.concat(cb), ra.clone() * rb.clone());
            }
        }
        out
    }

    pub fn weight_component(&self, n: u32) -> Self {
        DescentElement {
            terms: self
                .terms
                .iter()
                .filter(|(c, _)| c.weight() == n)
                .map(|(c, r)| (c.clone(), r.clone()))
                .collect(),
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(|c| c.weight()).max().unwrap_or(0)
    }

    /// The common weight of all terms, if the element is homogeneous.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(|c| c.weight());
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Divided-power coproduct, extended multiplicatively to basis words.
    pub fn coproduct(&self) -> DescentTensor {
        let mut out = DescentTensor::zero();
        for (c, r) in &self.terms {
            let mut acc = DescentTensor::one();
            for &part in c.parts() {
                let mut factor = DescentTensor::zero();
                for i in 0..=part {
                    let left = if i == 0 {
                        Composition::empty()
                    } else {
                        Composition::single(i)
                    };
                    let right = if i == part {
                        Composition::empty()
                    } else {
                        Composition::single(part - i)
                    };
                    factor.add_term(left, right, rat_int(1));
                }
                acc = acc.product(&factor);
            }
            out = out.add_scaled(&acc, r);
        }
        out
    }

    /// δ(x) = x ⊗ 1 + 1 ⊗ x.
    pub fn is_primitive(&self) -> bool {
        let mut want = DescentTensor::zero();
        for (c, r) in &self.terms {
            want.add_term(c.clone(), Composition::empty(), r.clone());
            want.add_term(Composition::empty(), c.clone(), r.clone());
        }
        self.coproduct() == want
    }
}

impl fmt::Display for DescentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, r)) in self.terms.iter().enumerate() {
            let (sign, abs) = if r.is_negative() {
                ("-", -r.clone())
            } else {
                ("+", r.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else {
                write!(f, "{}·{}", format_rational(&abs), c)?;
            }
        }
        Ok(())
    }
}

/// An element of the tensor square of the descent algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DescentTensor {
    terms: BTreeMap<(Composition, Composition), Rational>,
}

impl DescentTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(Composition::empty(), Composition::empty(), rat_int(1));
        t
    }

    pub fn add_term(&mut self, left: Composition, right: Composition, r: Rational) {
        if r.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&self, other: &Self, r: &Rational) -> Self {
        let mut out = self.clone();
        for ((l, rr), c) in &other.terms {
            out.add_term(l.clone(), rr.clone(), c.clone() * r.clone());
        }
        out
    }

    /// Componentwise concatenation.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                out.add_term(la.concat(lb), ra.concat(rb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Composition, Composition), &Rational)> {
        self.terms.iter()
    }
}

/// unit + B_(1) + … + B_(N): the identity endomorphism truncated at weight N.
pub fn identity_series(cap: u32) -> DescentElement {
    let mut out = DescentElement::unit();
    for n in 1..=cap {
        out.add_term(Composition::single(n), rat_int(1));
    }
    out
}

/// The convolution inverse of the identity series, computed degreewise from
/// S ∗ Id = unit.
pub fn antipode_series(cap: u32) -> DescentElement {
    let mut components: Vec<DescentElement> = vec![DescentElement::unit()];
    for n in 1..=cap {
        let mut s_n = DescentElement::zero();
        for i in 0..n {
            let term = components[i as usize].convolve(&DescentElement::projection(n - i));
            s_n = s_n.sub(&term);
        }
        components.push(s_n);
    }
    components
        .into_iter()
        .fold(DescentElement::zero(), |acc, c| acc.add(&c))
}

/// Convolution logarithm of `unit + (positive weight)`, truncated at `cap`.
pub fn d_log(x: &DescentElement, cap: u32) -> DescentElement {
    assert!(
        x.coeff(&Composition::empty()) == rat_int(1),
        "d_log needs unit coefficient 1"
    );
    let mut u = x.sub(&DescentElement::unit());
    u = truncate(&u, cap);
    let mut out = DescentElement::zero();
    let mut power = u.clone();
    for k in 1..=cap.max(1) {
        let coeff = if k % 2 == 1 {
            rat(1, k as i64)
        } else {
            rat(-1, k as i64)
        };
        out = out.add(&power.scale(&coeff));
        if k < cap {
            power = power.convolve_truncated(&u, cap);
        }
    }
    out
}

/// Convolution exponential of a positive-weight element, truncated at `cap`.
pub fn d_exp(x: &DescentElement, cap: u32) -> DescentElement {
    assert!(
        x.coeff(&Composition::empty()).is_zero(),
        "d_exp needs vanishing unit coefficient"
    );
    let x = truncate(x, cap);
    let mut out = DescentElement::unit();
    let mut power = DescentElement::unit();
    for k in 1..=cap {
        power = power.convolve_truncated(&x, cap);
        out = out.add(&power.scale(&inv_factorial(k)));
    }
    out
}

fn truncate(x: &DescentElement, cap: u32) -> DescentElement {
    DescentElement::from_terms(
        x.terms()
            .filter(|(c, _)| c.weight() <= cap)
            .map(|(c, r)| (c.clone(), r.clone())),
    )
}
