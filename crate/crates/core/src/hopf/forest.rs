//! Forests: commutative monomials in rooted trees.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{LazyLock, Mutex};

use crate::error::{CoreError, Result};

use super::tree::{EnumerationCache, RootedTree, TreeFamily, multisets, trees_of_degree};

/// A multiset of canonical trees, kept sorted. The empty forest is the unit
/// of the Hopf algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest(Vec<RootedTree>);

impl Forest {
    pub fn empty() -> Self {
        Forest(Vec::new())
    }

    pub fn single(tree: RootedTree) -> Self {
        Forest(vec![tree])
    }

    pub fn from_trees(mut trees: Vec<RootedTree>) -> Self {
        trees.sort();
        Forest(trees)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|t| t.degree()).sum()
    }

    pub fn trees(&self) -> &[RootedTree] {
        &self.0
    }

    /// The single tree, if the forest has exactly one factor.
    pub fn as_single_tree(&self) -> Option<&RootedTree> {
        match self.0.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    /// Multiset union: the product monomial.
    pub fn merge(&self, other: &Forest) -> Forest {
        let mut trees = self.0.clone();
        trees.extend(other.0.iter().cloned());
        Forest::from_trees(trees)
    }

    /// Comma-joined tree codes; the empty forest prints as `1`.
    pub fn code(&self) -> String {
        if self.0.is_empty() {
            "1".to_owned()
        } else {
            self.0
                .iter()
                .map(|t| t.code().to_owned())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse(code: &str) -> Result<Self> {
        let code = code.trim();
        if code.is_empty() || code == "1" {
            return Ok(Forest::empty());
        }
        // split on commas at bracket depth zero
        let mut trees = Vec::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        for (i, b) in code.bytes().enumerate() {
            match b {
                b'[' => depth += 1,
                b']' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| CoreError::Parse(format!("bad forest code {code:?}")))?
                }
                b',' if depth == 0 => {
                    trees.push(RootedTree::parse(&code[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        trees.push(RootedTree::parse(&code[start..])?);
        Ok(Forest::from_trees(trees))
    }
}

impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded order: degree first, then number of factors, then the sorted tree
/// lists lexicographically. Basis enumeration and JSON output follow it.
impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.0.len())
            .cmp(&(other.degree(), other.0.len()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Hash for Forest {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for t in &self.0 {
            t.hash(state);
        }
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

static FOREST_CACHE: EnumerationCache<Forest> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// All basis forests of the given degree, deterministically ordered.
pub fn forests_of_degree(family: TreeFamily, degree: u32) -> Vec<Forest> {
    if degree == 0 {
        return vec![Forest::empty()];
    }
    if let Some(cached) = FOREST_CACHE.lock().unwrap().get(&(family, degree)) {
        return cached.clone();
    }
    let pool: Vec<RootedTree> = (1..=degree)
        .flat_map(|d| trees_of_degree(family, d))
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    multisets(&pool, degree, 0, &mut stack, &mut |trees| {
        out.push(Forest::from_trees(trees.to_vec()));
    });
    out.sort();
    out.dedup();
    FOREST_CACHE
        .lock()
        .unwrap()
        .insert((family, degree), out.clone());
    out
}

/// All basis forests of degree `0..=cap` in graded order.
pub fn forests_up_to(family: TreeFamily, cap: u32) -> Vec<Forest> {
    (0..=cap)
        .flat_map(|d| forests_of_degree(family, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(forests: &[Forest]) -> Vec<String> {
        forests.iter().map(|f| f.code()).collect()
    }

    #[test]
    fn degree_zero_is_unit() {
        let basis = forests_of_degree(TreeFamily::RootedTrees, 0);
        assert_eq!(basis, vec![Forest::empty()]);
        assert_eq!(Forest::empty().degree(), 0);
    }

    #[test]
    fn degree_two_rooted() {
        let basis = forests_of_degree(TreeFamily::RootedTrees, 2);
        assert_eq!(codes(&basis), vec!["[[]]", "[],[]"]);
    }

    #[test]
    fn degree_three_ladders() {
        let basis = forests_of_degree(TreeFamily::Ladders, 3);
        assert_eq!(codes(&basis), vec!["[[[]]]", "[],[[]]", "[],[],[]"]);
    }

    #[test]
    fn forest_counts_match_known_series() {
        // forests of total degree n over all rooted trees: 1, 1, 2, 4, 9, 20, 48
        let expected = [1usize, 1, 2, 4, 9, 20, 48];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(
                forests_of_degree(TreeFamily::RootedTrees, n as u32).len(),
                count,
                "degree {n}"
            );
        }
        // ladder forests of degree n are integer partitions of n
        let partitions = [1usize, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &count) in partitions.iter().enumerate() {
            assert_eq!(
                forests_of_degree(TreeFamily::Ladders, n as u32).len(),
                count,
                "ladder degree {n}"
            );
        }
    }

    #[test]
    fn merge_is_commutative_and_degree_additive() {
        let a = Forest::parse("[],[[]]").unwrap();
        let b = Forest::single(RootedTree::leaf());
        assert_eq!(a.merge(&b), b.merge(&a));
        assert_eq!(a.merge(&b).degree(), 4);
        assert_eq!(a.merge(&Forest::empty()), a);
    }

    #[test]
    fn parse_round_trip() {
        for code in ["1", "[]", "[],[]", "[[]],[[],[]]"] {
            assert_eq!(Forest::parse(code).unwrap().code(), code);
        }
        // factors are re-sorted canonically
        assert_eq!(Forest::parse("[[]],[]").unwrap().code(), "[],[[]]");
        assert!(Forest::parse("[],").is_err());
        assert!(Forest::parse("]").is_err());
    }
}
