//! Wire formats.
//!
//! - Series: `{"floor": int, "cap": int, "coeffs": {"<exponent>": "p/q"}}`,
//!   rationals in lowest terms with `/q` omitted for integers.
//! - Character / infinitesimal character:
//!   `{"hopf": "rooted_trees"|"ladders", "truncation": N,
//!     "values": {"<tree-code>": <series>}}`. Values are only accepted on
//!   single trees of the stated family; forest values are derived.
//! - Decomposition report: the Birkhoff pair, the exponential factors, and
//!   the agreement verdict.
//! - Descent elements: `{"degree": n, "basis": "composition",
//!   "element": {"1,2": "-1/2", …}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::characters::{Character, InfChar};
use crate::descent::{Composition, DescentElement};
use crate::error::{CoreError, Result};
use crate::factorization::{ExpFactorization, FactorizationMode, TheoremReport};
use crate::hopf::{Forest, RootedTree, TreeFamily};
use crate::laurent::LaurentSeries;
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub floor: i32,
    pub cap: i32,
    pub coeffs: BTreeMap<String, String>,
}

impl SeriesJson {
    pub fn from_series(s: &LaurentSeries) -> Self {
        SeriesJson {
            floor: s.floor(),
            cap: s.cap(),
            coeffs: s
                .terms()
                .map(|(e, c)| (e.to_string(), format_rational(c)))
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<LaurentSeries> {
        let mut coeffs = BTreeMap::new();
        for (k, v) in &self.coeffs {
            let exp: i32 = k
                .parse()
                .map_err(|_| CoreError::Parse(format!("bad exponent {k:?}")))?;
            coeffs.insert(exp, parse_rational(v)?);
        }
        LaurentSeries::from_parts(self.floor, self.cap, coeffs)
    }
}

pub fn family_tag(family: TreeFamily) -> &'static str {
    match family {
        TreeFamily::RootedTrees => "rooted_trees",
        TreeFamily::Ladders => "ladders",
    }
}

pub fn parse_family(tag: &str) -> Result<TreeFamily> {
    match tag {
        "rooted_trees" | "rooted-trees" => Ok(TreeFamily::RootedTrees),
        "ladders" | "ladders-only" => Ok(TreeFamily::Ladders),
        other => Err(CoreError::Parse(format!("unknown hopf family {other:?}"))),
    }
}

/// Shared shape for characters and infinitesimal characters: values on trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub hopf: String,
    pub truncation: u32,
    pub values: BTreeMap<String, SeriesJson>,
}

impl CharacterJson {
    pub fn from_character(c: &Character) -> Self {
        CharacterJson {
            hopf: family_tag(c.family()).to_owned(),
            truncation: c.truncation(),
            values: c
                .tree_values()
                .iter()
                .filter(|(_, v)| !v.is_exact_zero())
                .map(|(t, v)| (t.code().to_owned(), SeriesJson::from_series(v)))
                .collect(),
        }
    }

    pub fn from_inf_char(c: &InfChar) -> Self {
        let mut values = BTreeMap::new();
        for f in c.as_linmap().basis() {
            if let Some(t) = f.as_single_tree() {
                let v = c.value(&f);
                if !v.is_zero_on_window() {
                    values.insert(t.code().to_owned(), SeriesJson::from_series(&v));
                }
            }
        }
        CharacterJson {
            hopf: family_tag(c.family()).to_owned(),
            truncation: c.truncation(),
            values,
        }
    }

    fn tree_values(&self) -> Result<(TreeFamily, BTreeMap<RootedTree, LaurentSeries>)> {
        let family = parse_family(&self.hopf)?;
        let mut tree_values = BTreeMap::new();
        for (code, series) in &self.values {
            let forest = Forest::parse(code)?;
            let tree = forest
                .as_single_tree()
                .ok_or_else(|| {
                    CoreError::Parse(format!(
                        "value on non-tree forest {code:?}: forest values are derived"
                    ))
                })?
                .clone();
            if family == TreeFamily::Ladders && !tree.is_ladder() {
                return Err(CoreError::Parse(format!(
                    "tree {code:?} is not a ladder but the family is \"ladders\""
                )));
            }
            if tree.degree() > self.truncation {
                return Err(CoreError::Parse(format!(
                    "tree {code:?} has degree above the truncation {}",
                    self.truncation
                )));
            }
            tree_values.insert(tree, series.to_series()?);
        }
        Ok((family, tree_values))
    }

    pub fn to_character(&self) -> Result<Character> {
        let (family, tree_values) = self.tree_values()?;
        Character::from_tree_values(family, self.truncation, &tree_values)
    }

    pub fn to_inf_char(&self) -> Result<InfChar> {
        let (family, tree_values) = self.tree_values()?;
        Ok(InfChar::from_tree_values(
            family,
            self.truncation,
            &tree_values,
        ))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorJson {
    pub mode: String,
    pub level: usize,
    pub minus: CharacterJson,
    pub plus: CharacterJson,
}

/// The full output of a decomposition run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub phi_minus: CharacterJson,
    pub phi_plus: CharacterJson,
    pub factors: Vec<FactorJson>,
    pub agreement: bool,
    pub first_mismatch: Option<String>,
}

fn mode_tag(mode: FactorizationMode) -> &'static str {
    match mode {
        FactorizationMode::Plain => "plain",
        FactorizationMode::Accelerated => "accelerated",
    }
}

pub fn factors_json(fact: &ExpFactorization) -> Vec<FactorJson> {
    fact.factors_minus
        .iter()
        .zip(&fact.factors_plus)
        .enumerate()
        .map(|(i, (m, p))| FactorJson {
            mode: mode_tag(fact.mode).to_owned(),
            level: i + 1,
            minus: CharacterJson::from_inf_char(m),
            plus: CharacterJson::from_inf_char(p),
        })
        .collect()
}

impl DecompositionReport {
    pub fn from_theorem(report: &TheoremReport) -> Self {
        let mut factors = factors_json(&report.plain);
        factors.extend(factors_json(&report.accelerated));
        DecompositionReport {
            phi_minus: CharacterJson::from_character(&report.pair.phi_minus),
            phi_plus: CharacterJson::from_character(&report.pair.phi_plus),
            factors,
            agreement: report.agreement,
            first_mismatch: report.first_mismatch.as_ref().map(|f| f.code()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DescentElementJson {
    pub degree: u32,
    pub basis: String,
    pub element: BTreeMap<String, String>,
}

impl DescentElementJson {
    /// Serializes a homogeneous element in the composition basis.
    pub fn from_element(e: &DescentElement, degree: u32) -> Self {
        DescentElementJson {
            degree,
            basis: "composition".to_owned(),
            element: e
                .terms()
                .map(|(c, r)| (c.key(), format_rational(r)))
                .collect(),
        }
    }

    /// A coefficient table over generator words, keyed by composition.
    pub fn from_word_coeffs(coeffs: &BTreeMap<Composition, crate::rational::Rational>, degree: u32, basis: &str) -> Self {
        DescentElementJson {
            degree,
            basis: basis.to_owned(),
            element: coeffs
                .iter()
                .map(|(c, r)| (c.key(), format_rational(r)))
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<DescentElement> {
        let mut out = DescentElement::zero();
        for (k, v) in &self.element {
            out.add_term(Composition::parse(k)?, parse_rational(v)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{ladder_pole, random_polar_character};
    use crate::rational::rat;

    #[test]
    fn series_round_trip() {
        let s = LaurentSeries::from_terms(4, [(-2, rat(1, 2)), (0, rat(-3, 1)), (3, rat(7, 5))]);
        let json = SeriesJson::from_series(&s);
        assert_eq!(json.coeffs["-2"], "1/2");
        assert_eq!(json.coeffs["0"], "-3");
        let back = json.to_series().unwrap();
        assert_eq!(back, s);
        // through actual JSON text
        let text = serde_json::to_string(&json).unwrap();
        let reparsed: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed.to_series().unwrap(), s);
    }

    #[test]
    fn series_rejects_out_of_window_exponents() {
        let json = SeriesJson {
            floor: 0,
            cap: 2,
            coeffs: [("5".to_owned(), "1".to_owned())].into(),
        };
        assert!(json.to_series().is_err());
    }

    #[test]
    fn character_round_trip() {
        let phi = random_polar_character(TreeFamily::RootedTrees, 3, 41).unwrap();
        let json = CharacterJson::from_character(&phi);
        let back = json.to_character().unwrap();
        assert!(back.as_linmap().agrees_with(phi.as_linmap()).unwrap());
        assert_eq!(back.tree_values(), phi.tree_values());
    }

    #[test]
    fn character_rejects_forest_values_and_foreign_trees() {
        let mut json = CharacterJson::from_character(&ladder_pole(2).unwrap());
        json.values.insert(
            "[],[]".to_owned(),
            SeriesJson {
                floor: 0,
                cap: 1,
                coeffs: BTreeMap::new(),
            },
        );
        assert!(json.to_character().is_err());

        let mut json2 = CharacterJson::from_character(&ladder_pole(3).unwrap());
        json2.values.insert(
            "[[],[]]".to_owned(),
            SeriesJson {
                floor: 0,
                cap: 1,
                coeffs: BTreeMap::new(),
            },
        );
        assert!(json2.to_character().is_err());
    }

    #[test]
    fn descent_element_round_trip() {
        let z2 = DescentElement::basis(Composition::single(2)).sub(
            &DescentElement::basis(Composition::new(vec![1, 1])).scale(&rat(1, 2)),
        );
        let json = DescentElementJson::from_element(&z2, 2);
        assert_eq!(json.element["2"], "1");
        assert_eq!(json.element["1,1"], "-1/2");
        assert_eq!(json.to_element().unwrap(), z2);
    }
}
