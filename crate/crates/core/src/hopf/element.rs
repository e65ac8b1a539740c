//! Linear combinations of forests and the Hopf structure maps.
//!
//! The coproduct follows the admissible-cut rule: cutting a set of edges no
//! two of which lie on the same root-to-leaf path sends the pruned forest to
//! the left tensor leg and the rooted remainder to the right. On a tree it is
//! computed by the grafting recursion
//! `Δ(B+(t1…tk)) = B+(t1…tk) ⊗ 1 + (id ⊗ B+)(Δ(t1)…Δ(tk))`,
//! which enumerates exactly the admissible cuts. The antipode uses the
//! connected-graded recursion `S(f) = -f - Σ S(f') f''` over the reduced
//! coproduct.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{LazyLock, Mutex};

use num_traits::Zero;

use crate::rational::{Rational, format_rational, rat_int};

use super::forest::Forest;
use super::tree::RootedTree;

/// A finite rational combination of forests. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HopfElement {
    terms: BTreeMap<Forest, Rational>,
}

impl HopfElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit: the empty forest with coefficient 1.
    pub fn one() -> Self {
        Self::from_forest(Forest::empty())
    }

    pub fn from_forest(f: Forest) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(f, rat_int(1));
        HopfElement { terms }
    }

    pub fn from_tree(t: RootedTree) -> Self {
        Self::from_forest(Forest::single(t))
    }

    pub fn from_terms<I: IntoIterator<Item = (Forest, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (f, c) in iter {
            out.add_term(f, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Forest, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, f: &Forest) -> Rational {
        self.terms.get(f).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, f: Forest, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(f.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&f);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        HopfElement {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.clone(), -c.clone()))
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
        HopfElement {
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.clone(), c.clone() * r.clone()))
                .collect(),
        }
    }

    /// Bilinear extension of the multiset union of forests.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (fa, ca) in &self.terms {
            for (fb, cb) in &other.terms {
                out.add_term(fa.merge(fb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// The part supported in a single degree.
    pub fn graded_component(&self, degree: u32) -> Self {
        HopfElement {
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| f.degree() == degree)
                .map(|(f, c)| (f.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (forest, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}", format_rational(c), forest.code())?;
        }
        Ok(())
    }
}

/// A rational combination of forest pairs: an element of H ⊗ H.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HopfTensor {
    terms: BTreeMap<(Forest, Forest), Rational>,
}

impl HopfTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut t = Self::zero();
        t.add_term(Forest::empty(), Forest::empty(), rat_int(1));
        t
    }

    pub fn add_term(&mut self, left: Forest, right: Forest, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), -c.clone());
        }
        out
    }

    /// Componentwise product in H ⊗ H.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                out.add_term(la.merge(lb), ra.merge(rb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Forest, Forest), &Rational)> {
        self.terms.iter()
    }
}

static COPRODUCT_CACHE: LazyLock<Mutex<HashMap<Forest, HopfTensor>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

static ANTIPODE_CACHE: LazyLock<Mutex<HashMap<Forest, HopfElement>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn coproduct_tree(t: &RootedTree) -> HopfTensor {
    // Δ(t) = t ⊗ 1 + (id ⊗ B+)(Δ(c1)…Δ(ck)) for t = B+(c1…ck)
    let mut inner = HopfTensor::one();
    for child in t.children() {
        inner = inner.product(&coproduct_forest(&Forest::single(child.clone())));
    }
    let mut out = HopfTensor::zero();
    out.add_term(Forest::single(t.clone()), Forest::empty(), rat_int(1));
    for ((left, right), c) in inner.terms() {
        let regrafted = RootedTree::node(right.trees().to_vec());
        out.add_term(left.clone(), Forest::single(regrafted), c.clone());
    }
    out
}

fn coproduct_forest(f: &Forest) -> HopfTensor {
    if f.is_empty() {
        return HopfTensor::one();
    }
    if let Some(cached) = COPRODUCT_CACHE.lock().unwrap().get(f) {
        return cached.clone();
    }
    let out = match f.as_single_tree() {
        Some(t) => coproduct_tree(t),
        None => {
            let mut acc = HopfTensor::one();
            for t in f.trees() {
                acc = acc.product(&coproduct_forest(&Forest::single(t.clone())));
            }
            acc
        }
    };
    COPRODUCT_CACHE
        .lock()
        .unwrap()
        .insert(f.clone(), out.clone());
    out
}

/// The admissible-cut coproduct of a basis forest.
pub fn coproduct(f: &Forest) -> HopfTensor {
    coproduct_forest(f)
}

/// Linear extension of the coproduct.
pub fn coproduct_elem(x: &HopfElement) -> HopfTensor {
    let mut out = HopfTensor::zero();
    for (f, c) in x.terms() {
        for ((l, r), m) in coproduct(f).terms() {
            out.add_term(l.clone(), r.clone(), c.clone() * m.clone());
        }
    }
    out
}

/// The coproduct with the two primitive terms `f ⊗ 1` and `1 ⊗ f` removed.
pub fn reduced_coproduct(f: &Forest) -> HopfTensor {
    let mut out = coproduct(f);
    out.add_term(f.clone(), Forest::empty(), rat_int(-1));
    out.add_term(Forest::empty(), f.clone(), rat_int(-1));
    out
}

/// The antipode on a basis forest.
pub fn antipode(f: &Forest) -> HopfElement {
    if f.is_empty() {
        return HopfElement::one();
    }
    if let Some(cached) = ANTIPODE_CACHE.lock().unwrap().get(f) {
        return cached.clone();
    }
    // S(f) = -f - Σ S(f') · f'' over the reduced coproduct
    let mut out = HopfElement::from_forest(f.clone()).neg();
    for ((left, right), c) in reduced_coproduct(f).terms() {
        let s_left = antipode(left);
        out = out.sub(&s_left.product(&HopfElement::from_forest(right.clone())).scale(c));
    }
    ANTIPODE_CACHE
        .lock()
        .unwrap()
        .insert(f.clone(), out.clone());
    out
}

/// Linear extension of the antipode.
pub fn antipode_elem(x: &HopfElement) -> HopfElement {
    let mut out = HopfElement::zero();
    for (f, c) in x.terms() {
        out = out.add(&antipode(f).scale(c));
    }
    out
}
