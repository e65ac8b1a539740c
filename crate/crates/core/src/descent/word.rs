//! Words, tensor elements, and the action of descent elements on them.
//!
//! Descent elements act on a word through their permutation expansion; the
//! action used here is the one on the tensor algebra side, where the i-th
//! output letter is the σ(i)-th input letter. Under it the Dynkin elements
//! act as left-to-right bracketing and the Zassenhaus images land in the free
//! Lie algebra, which is detected by primitivity for the unshuffle coproduct.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::Result;
use crate::rational::{Rational, rat_int};

use super::element::DescentElement;
use super::permutation::to_permutations;

/// A word over an indexed alphabet; letters are small integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    /// x₁ x₂ … x_n.
    pub fn standard(n: u32) -> Self {
        Word((0..n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// The subword at the given positions (ascending).
    fn subword(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "x{}", l + 1)?;
        }
        Ok(())
    }
}

/// A rational combination of equal-length words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    terms: BTreeMap<Word, Rational>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut t = Self::zero();
        t.add_term(w, rat_int(1));
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, r: Rational) {
        if r.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *entry += r;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, r) in &other.terms {
            out.add_term(w.clone(), r.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, r) in &other.terms {
            out.add_term(w.clone(), -r.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.clone() * r.clone()))
                .collect(),
        }
    }

    /// Concatenation product.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (wa, ra) in &self.terms {
            for (wb, rb) in &other.terms {
                out.add_term(wa.concat(wb), ra.clone() * rb.clone());
            }
        }
        out
    }

    /// True when `other = c · self` for the given scalar.
    pub fn is_scalar_multiple(&self, other: &Self, c: &Rational) -> bool {
        self.scale(c) == *other
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}·{}", crate::rational::format_rational(r), w)?;
        }
        Ok(())
    }
}

/// [a, b] = ab - ba under concatenation.
pub fn lie_bracket(a: &TensorElement, b: &TensorElement) -> TensorElement {
    a.product(b).sub(&b.product(a))
}

/// The left-to-right iterated bracket `[[…[w₁,w₂],…],w_n]` of the letters of a
/// word, expanded into words by direct bracketing.
pub fn left_bracket(w: &Word) -> TensorElement {
    let letters = w.letters();
    assert!(!letters.is_empty());
    let mut acc = TensorElement::from_word(Word::new(vec![letters[0]]));
    for &l in &letters[1..] {
        let next = TensorElement::from_word(Word::new(vec![l]));
        acc = lie_bracket(&acc, &next);
    }
    acc
}

/// Applies a homogeneous descent element to a word of matching length via
/// its permutation expansion: position i receives letter w_{σ(i)}.
pub fn act_on_word(a: &DescentElement, w: &Word) -> Result<TensorElement> {
    let n = w.len() as u32;
    let expansion = to_permutations(a, n)?;
    let mut out = TensorElement::zero();
    for (p, r) in expansion.terms() {
        let permuted = Word::new(
            (0..w.len())
                .map(|i| w.letters()[p.image(i)])
                .collect(),
        );
        out.add_term(permuted, r.clone());
    }
    Ok(out)
}

/// The reduced unshuffle coproduct: all splittings of each word into a
/// nonempty subsequence and its complement.
fn reduced_unshuffle(t: &TensorElement) -> BTreeMap<(Word, Word), Rational> {
    let mut out: BTreeMap<(Word, Word), Rational> = BTreeMap::new();
    for (w, c) in t.terms() {
        let n = w.len();
        for mask in 1..((1u32 << n) - 1) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    left.push(i);
                } else {
                    right.push(i);
                }
            }
            let key = (w.subword(&left), w.subword(&right));
            let entry = out.entry(key.clone()).or_insert_with(Rational::zero);
            *entry += c.clone();
            if entry.is_zero() {
                out.remove(&key);
            }
        }
    }
    out
}

/// Friedrichs' criterion: a homogeneous tensor element lies in the free Lie
/// algebra iff it is primitive for the unshuffle coproduct.
pub fn is_lie_element(t: &TensorElement) -> bool {
    reduced_unshuffle(t).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::composition::Composition;
    use crate::descent::series::{Side, dynkin, zassenhaus};
    use crate::factorization::FactorizationMode;
    use crate::rational::rat;

    fn b(parts: &[u32]) -> DescentElement {
        DescentElement::basis(Composition::new(parts.to_vec()))
    }

    fn word(letters: &[u8]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn dynkin_two_is_the_bracket() {
        let d = dynkin(2);
        let got = act_on_word(&d[1], &Word::standard(2)).unwrap();
        let want = left_bracket(&Word::standard(2));
        assert_eq!(got, want);
        // explicitly: x1x2 - x2x1
        let mut explicit = TensorElement::zero();
        explicit.add_term(word(&[0, 1]), rat_int(1));
        explicit.add_term(word(&[1, 0]), rat_int(-1));
        assert_eq!(got, explicit);
    }

    #[test]
    fn z2_action_is_half_bracket() {
        let z2 = b(&[2]).sub(&b(&[1, 1]).scale(&rat(1, 2)));
        let got = act_on_word(&z2, &Word::standard(2)).unwrap();
        let want = left_bracket(&Word::standard(2)).scale(&rat(1, 2));
        assert_eq!(got, want);
    }

    #[test]
    fn bracketing_oracle_matches_dynkin_action() {
        // exhaustive over all words on n letters, n ≤ 4
        let d = dynkin(4);
        for n in 1..=4usize {
            let words: Vec<Word> = (0..(n as u32).pow(n as u32))
                .map(|mut k| {
                    let mut letters = Vec::with_capacity(n);
                    for _ in 0..n {
                        letters.push((k % n as u32) as u8);
                        k /= n as u32;
                    }
                    Word::new(letters)
                })
                .collect();
            for w in words {
                let got = act_on_word(&d[n - 1], &w).unwrap();
                assert_eq!(got, left_bracket(&w), "degree {n}, word {w}");
            }
        }
    }

    #[test]
    fn lie_detection() {
        assert!(is_lie_element(&left_bracket(&Word::standard(2))));
        assert!(!is_lie_element(&TensorElement::from_word(Word::standard(2))));
        assert!(is_lie_element(&TensorElement::zero()));
        // [[x1,x2],[x3,x4]] is a Lie element too
        let ab = left_bracket(&word(&[0, 1]));
        let cd = left_bracket(&word(&[2, 3]));
        assert!(is_lie_element(&lie_bracket(&ab, &cd)));
    }

    #[test]
    fn zassenhaus_images_are_lie_elements() {
        for side in [Side::Left, Side::Right] {
            let series = zassenhaus(5, side, FactorizationMode::Plain);
            for (i, z) in series.iter().enumerate() {
                let w = Word::standard(i as u32 + 1);
                let image = act_on_word(z, &w).unwrap();
                assert!(is_lie_element(&image), "{side:?} Z_{}", i + 1);
            }
        }
    }

    #[test]
    fn zassenhaus_acts_by_scalar_on_brackets() {
        // a primitive descent element acts on Lie elements by a scalar
        let series = zassenhaus(4, Side::Left, FactorizationMode::Plain);
        for (i, z) in series.iter().enumerate() {
            let n = i as u32 + 1;
            let bracket = left_bracket(&Word::standard(n));
            let image = act_on_word_elem(z, &bracket).unwrap();
            // find the scalar from the bracket's leading word
            let lead = bracket.terms().next().unwrap().0.clone();
            let scalar = image.coeff(&lead) / bracket.coeff(&lead);
            assert!(
                bracket.is_scalar_multiple(&image, &scalar),
                "Z_{n} does not act by a scalar"
            );
        }
    }

    fn act_on_word_elem(a: &DescentElement, t: &TensorElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for (w, c) in t.terms() {
            out = out.add(&act_on_word(a, w)?.scale(c));
        }
        Ok(out)
    }
}
