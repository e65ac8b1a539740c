//! Canonical rooted trees.
//!
//! A tree is a root with a multiset of canonical subtrees. Children are kept
//! sorted by (degree, code), where the code is the nested-bracket encoding
//! ("[]" is the single vertex, "[[]]" the two-vertex ladder, "[[],[]]" the
//! cherry). Two isomorphic rooted trees therefore have identical encodings.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{LazyLock, Mutex};

use crate::error::{CoreError, Result};

/// Which Hopf algebra the session works in: all rooted trees, or the ladder
/// (linear-tree) subalgebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeFamily {
    RootedTrees,
    Ladders,
}

#[derive(Debug, Clone)]
pub struct RootedTree {
    degree: u32,
    code: String,
    children: Vec<RootedTree>,
}

impl RootedTree {
    /// A root on top of the given subtrees; children are canonicalized.
    pub fn node(mut children: Vec<RootedTree>) -> Self {
        children.sort();
        let degree = 1 + children.iter().map(|c| c.degree).sum::<u32>();
        let mut code = String::from("[");
        for (i, c) in children.iter().enumerate() {
            if i > 0 {
                code.push(',');
            }
            code.push_str(&c.code);
        }
        code.push(']');
        RootedTree {
            degree,
            code,
            children,
        }
    }

    /// The single vertex.
    pub fn leaf() -> Self {
        Self::node(Vec::new())
    }

    /// The ladder with `n >= 1` vertices in a chain.
    pub fn ladder(n: u32) -> Self {
        assert!(n >= 1, "a ladder has at least one vertex");
        let mut t = Self::leaf();
        for _ in 1..n {
            t = Self::node(vec![t]);
        }
        t
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn is_ladder(&self) -> bool {
        match self.children.len() {
            0 => true,
            1 => self.children[0].is_ladder(),
            _ => false,
        }
    }

    /// Parses a nested-bracket code. The result is canonical even when the
    /// input lists children out of order.
    pub fn parse(code: &str) -> Result<Self> {
        let bytes = code.as_bytes();
        let (tree, used) = parse_tree(bytes, 0)
            .ok_or_else(|| CoreError::Parse(format!("bad tree code {code:?}")))?;
        if used != bytes.len() {
            return Err(CoreError::Parse(format!(
                "trailing input in tree code {code:?}"
            )));
        }
        Ok(tree)
    }
}

fn parse_tree(bytes: &[u8], mut pos: usize) -> Option<(RootedTree, usize)> {
    if bytes.get(pos) != Some(&b'[') {
        return None;
    }
    pos += 1;
    let mut children = Vec::new();
    loop {
        match bytes.get(pos)? {
            b']' => return Some((RootedTree::node(children), pos + 1)),
            b',' if !children.is_empty() => pos += 1,
            b'[' if children.is_empty() => {}
            _ if !children.is_empty() => return None,
            _ => {}
        }
        let (child, next) = parse_tree(bytes, pos)?;
        children.push(child);
        pos = next;
    }
}

impl PartialEq for RootedTree {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for RootedTree {}

impl Hash for RootedTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree, &self.code).cmp(&(other.degree, &other.code))
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

pub(crate) type EnumerationCache<T> = LazyLock<Mutex<HashMap<(TreeFamily, u32), Vec<T>>>>;

static TREE_CACHE: EnumerationCache<RootedTree> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// All canonical trees of the family with exactly `degree` vertices, in
/// ascending canonical order.
pub fn trees_of_degree(family: TreeFamily, degree: u32) -> Vec<RootedTree> {
    if degree == 0 {
        return Vec::new();
    }
    if let Some(cached) = TREE_CACHE.lock().unwrap().get(&(family, degree)) {
        return cached.clone();
    }
    let mut out = match family {
        TreeFamily::Ladders => vec![RootedTree::ladder(degree)],
        TreeFamily::RootedTrees => {
            if degree == 1 {
                vec![RootedTree::leaf()]
            } else {
                // pool of possible children, any degree below the target
                let pool: Vec<RootedTree> = (1..degree)
                    .flat_map(|d| trees_of_degree(family, d))
                    .collect();
                let mut trees = Vec::new();
                let mut stack = Vec::new();
                multisets(&pool, degree - 1, 0, &mut stack, &mut |children| {
                    trees.push(RootedTree::node(children.to_vec()));
                });
                trees
            }
        }
    };
    out.sort();
    out.dedup();
    TREE_CACHE
        .lock()
        .unwrap()
        .insert((family, degree), out.clone());
    out
}

/// Enumerates multisets from `pool` (chosen with non-decreasing index) whose
/// degrees sum to `remaining`.
pub(crate) fn multisets(
    pool: &[RootedTree],
    remaining: u32,
    from: usize,
    stack: &mut Vec<RootedTree>,
    emit: &mut impl FnMut(&[RootedTree]),
) {
    if remaining == 0 {
        emit(stack);
        return;
    }
    for (i, t) in pool.iter().enumerate().skip(from) {
        if t.degree() > remaining {
            continue;
        }
        stack.push(t.clone());
        multisets(pool, remaining - t.degree(), i, stack, emit);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_encoding_is_order_independent() {
        let cherry_left = RootedTree::node(vec![RootedTree::ladder(2), RootedTree::leaf()]);
        let cherry_right = RootedTree::node(vec![RootedTree::leaf(), RootedTree::ladder(2)]);
        assert_eq!(cherry_left, cherry_right);
        assert_eq!(cherry_left.code(), "[[],[[]]]");
    }

    #[test]
    fn ladder_codes() {
        assert_eq!(RootedTree::ladder(1).code(), "[]");
        assert_eq!(RootedTree::ladder(2).code(), "[[]]");
        assert_eq!(RootedTree::ladder(3).code(), "[[[]]]");
        assert_eq!(RootedTree::ladder(3).degree(), 3);
        assert!(RootedTree::ladder(4).is_ladder());
        assert!(!RootedTree::parse("[[],[]]").unwrap().is_ladder());
    }

    #[test]
    fn parse_round_trip() {
        for code in ["[]", "[[]]", "[[],[]]", "[[],[],[[]]]"] {
            let t = RootedTree::parse(code).unwrap();
            assert_eq!(t.code(), code);
        }
        // non-canonical child order is normalized
        let t = RootedTree::parse("[[[]],[]]").unwrap();
        assert_eq!(t.code(), "[[],[[]]]");
    }

    #[test]
    fn parse_rejects_malformed() {
        for bad in ["", "[", "]", "[]]", "[],[]", "[,]", "x", "[[]"] {
            assert!(RootedTree::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn tree_counts_match_known_series() {
        // number of rooted trees on n vertices: 1, 1, 2, 4, 9, 20
        let expected = [1usize, 1, 2, 4, 9, 20];
        for (i, &count) in expected.iter().enumerate() {
            let n = (i + 1) as u32;
            assert_eq!(trees_of_degree(TreeFamily::RootedTrees, n).len(), count);
        }
        for n in 1..=8 {
            assert_eq!(trees_of_degree(TreeFamily::Ladders, n).len(), 1);
        }
    }

    #[test]
    fn degree_two_and_three_trees() {
        let deg2 = trees_of_degree(TreeFamily::RootedTrees, 2);
        assert_eq!(deg2, vec![RootedTree::ladder(2)]);
        let deg3: Vec<String> = trees_of_degree(TreeFamily::RootedTrees, 3)
            .iter()
            .map(|t| t.code().to_owned())
            .collect();
        assert_eq!(deg3, vec!["[[[]]]", "[[],[]]"]);
    }
}
